//! Ring-level verification of [`classify`] against independent oracles.
//!
//! Finite rings are checked against the brute-force [`Oracle`]: the tag and
//! the spectral idempotent must both agree. On `Z_(p)` and its truncated
//! polynomial rings the oracle is the discriminant test on the
//! constant-coefficient quadratic, and certificates are self-checked.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genmat::GenMatrix;
use crate::localring::{Elem, Ring};
use crate::quadratic::{discriminant_roots, solve_brute, QuadraticProblem};

use super::oracle::Oracle;
use super::{characteristic_problem, classify, Tag};

pub const SCHEMA_VERSION: u32 = 1;

/// Witness lists in reports are truncated to this many matrices.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { size: usize, seed: u64 },
    Fixtures(Vec<GenMatrix>),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { .. } => "sample",
            Mode::Fixtures(_) => "fixtures",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub matrix: GenMatrix,
    pub fast: Tag,
    pub oracle: Tag,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub ring: String,
    pub s: Elem,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub oracle: &'static str,
    pub checked: u64,
    pub counts: BTreeMap<Tag, u64>,
    pub mismatches: Vec<Mismatch>,
    pub witnesses: Vec<GenMatrix>,
    pub passed: bool,
    /// Not part of the default JSON, which must be reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Solvability of a split-regime quadratic without going through
/// `solve_split`: enumeration on finite rings, the discriminant over `Z_(p)`,
/// and the constant-coefficient problem on truncated polynomial rings (whose
/// simple roots always lift).
pub fn split_solvable_by_oracle(problem: &QuadraticProblem) -> bool {
    let r = problem.ring();
    if r.is_finite() {
        return !solve_brute(problem).expect("finite").is_empty();
    }
    match problem.constant_part() {
        Some(base) => split_solvable_by_oracle(&base),
        None => {
            let roots = discriminant_roots(problem).expect("Z_(p)");
            roots.iter().any(|t| r.in_jacobson(t)) && roots.iter().any(|t| r.is_unit(t))
        }
    }
}

/// The tag predicted by the determinant/trace split and
/// [`split_solvable_by_oracle`].
pub fn oracle_tag(a: &GenMatrix) -> Tag {
    let r = a.ring();
    if r.is_unit(&a.det_s()) {
        Tag::UnitCase
    } else if r.in_jacobson(&a.tr()) {
        Tag::QuasinilpotentCase
    } else if split_solvable_by_oracle(&characteristic_problem(a)) {
        Tag::SplitCase
    } else {
        Tag::NotQuasipolar
    }
}

fn check_finite(oracle: &Oracle, a: &GenMatrix) -> (Tag, Option<Mismatch>) {
    let c = classify(a);
    let brute = oracle.is_quasipolar_brute(a).expect("matrix from this oracle");
    let expected = oracle.tag_of(brute.as_ref());
    let detail = if c.tag != expected {
        Some("tags differ".to_string())
    } else if c.idempotent() != brute.as_ref() {
        Some(format!(
            "idempotents differ: {} vs {}",
            c.idempotent().map_or("none".into(), |e| e.to_string()),
            brute.as_ref().map_or("none".into(), |e| e.to_string())
        ))
    } else {
        None
    };
    let mismatch = detail.map(|detail| Mismatch {
        matrix: a.clone(),
        fast: c.tag,
        oracle: expected,
        detail,
    });
    (c.tag, mismatch)
}

fn check_infinite(a: &GenMatrix) -> (Tag, Option<Mismatch>) {
    let c = classify(a);
    let expected = oracle_tag(a);
    let mismatch = (c.tag != expected).then(|| Mismatch {
        matrix: a.clone(),
        fast: c.tag,
        oracle: expected,
        detail: "tags differ".to_string(),
    });
    (c.tag, mismatch)
}

fn random_matrix(ring: &Ring, s: &Elem, rng: &mut ChaCha8Rng) -> GenMatrix {
    let mut e = || ring.random(rng);
    let rows = [[e(), e()], [e(), e()]];
    GenMatrix::new(ring, s.clone(), rows).expect("sampled from the ring")
}

/// Classifies every matrix selected by `mode` and compares against the
/// appropriate oracle.
pub fn verify_ring(ring: &Ring, s: &Elem, mode: &Mode) -> Result<VerificationReport> {
    if !ring.contains(s) {
        return Err(Error::ContextMismatch);
    }
    let start = Instant::now();
    let oracle = if ring.is_finite() { Some(Oracle::new(ring, s)?) } else { None };
    let check = |a: &GenMatrix| match &oracle {
        Some(o) => check_finite(o, a),
        None => check_infinite(a),
    };

    let results: Vec<(GenMatrix, Tag, Option<Mismatch>)> = match (mode, &oracle) {
        (Mode::Exhaustive, None) => return Err(Error::NotEnumerable(ring.to_string())),
        (Mode::Exhaustive, Some(o)) => (0..o.matrix_count())
            .into_par_iter()
            .map(|i| {
                let a = o.matrix_at(i);
                let (tag, m) = check(&a);
                (a, tag, m)
            })
            .collect(),
        (Mode::Sample { size, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let sample: Vec<GenMatrix> = (0..*size)
                .map(|_| match &oracle {
                    Some(o) => o.matrix_at(rng.gen_range(0..o.matrix_count())),
                    None => random_matrix(ring, s, &mut rng),
                })
                .collect();
            sample
                .into_par_iter()
                .map(|a| {
                    let (tag, m) = check(&a);
                    (a, tag, m)
                })
                .collect()
        }
        (Mode::Fixtures(list), _) => list
            .iter()
            .map(|a| {
                if a.ring() != ring || a.s() != s {
                    return Err(Error::ContextMismatch);
                }
                let (tag, m) = check(a);
                Ok((a.clone(), tag, m))
            })
            .collect::<Result<_>>()?,
    };

    let mut counts: BTreeMap<Tag, u64> = Tag::ALL.iter().map(|t| (*t, 0)).collect();
    let mut mismatches = Vec::new();
    let mut witnesses = Vec::new();
    for (a, tag, m) in &results {
        *counts.get_mut(tag).expect("all tags present") += 1;
        if let Some(m) = m {
            mismatches.push(m.clone());
        }
        if *tag == Tag::NotQuasipolar && witnesses.len() < MAX_WITNESSES {
            witnesses.push(a.clone());
        }
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        ring: ring.to_string(),
        s: s.clone(),
        mode: mode.name(),
        seed: match mode {
            Mode::Sample { seed, .. } => Some(*seed),
            _ => None,
        },
        oracle: if oracle.is_some() { "brute-force" } else { "discriminant" },
        checked: results.len() as u64,
        counts,
        passed: mismatches.is_empty(),
        mismatches,
        witnesses,
        elapsed_ms: None,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_exhaustive_all_multipliers() {
        let r = Ring::zmod(2, 2).unwrap();
        for s in r.elements().unwrap() {
            let rep = verify_ring(&r, &s, &Mode::Exhaustive).unwrap();
            assert!(rep.passed, "{:?}", rep.mismatches);
            assert_eq!(rep.checked, 256);
            assert_eq!(rep.counts[&Tag::NotQuasipolar], 0);
        }
    }

    #[test]
    fn localized_fixtures_detect_the_witness() {
        let r = Ring::localized(2).unwrap();
        let fixtures = vec![
            GenMatrix::from_ints(&r, 1, [[1, 1], [-2, 0]]),
            GenMatrix::from_ints(&r, 1, [[1, 0], [0, 0]]),
            GenMatrix::from_ints(&r, 1, [[3, 1], [-2, 0]]),
        ];
        let rep = verify_ring(&r, &r.one(), &Mode::Fixtures(fixtures.clone())).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.witnesses, vec![fixtures[0].clone()]);
        assert_eq!(rep.counts[&Tag::SplitCase], 2);
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let r = Ring::zmod(2, 3).unwrap();
        let mode = Mode::Sample { size: 300, seed: 42 };
        let a = verify_ring(&r, &r.from_int(2), &mode).unwrap();
        let b = verify_ring(&r, &r.from_int(2), &mode).unwrap();
        assert!(a.passed);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn exhaustive_needs_a_finite_ring() {
        let r = Ring::localized(3).unwrap();
        assert!(matches!(
            verify_ring(&r, &r.one(), &Mode::Exhaustive),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn sampled_localized_quotient() {
        let r = Ring::localized(2).unwrap().truncated(2).unwrap();
        let rep = verify_ring(&r, &r.from_int(2), &Mode::Sample { size: 400, seed: 7 }).unwrap();
        assert!(rep.passed, "{:?}", rep.mismatches);
        assert!(rep.counts[&Tag::NotQuasipolar] > 0);
    }
}
