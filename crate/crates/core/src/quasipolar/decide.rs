//! Ring-level decisions: is every element of `K_s(R)` quasipolar?
//!
//! Known fast paths (`s` nilpotent, finite `R`, `s` a unit over a ring built
//! on `Z_(p)`) settle most cases. Otherwise the family `[[1,1],[u,w]]` with
//! `u` a unit and `w` in `J` is searched; each member is quasipolar iff
//! `t^2 - (1+w) t + (w - s u)` is solvable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genmat::GenMatrix;
use crate::localring::{Elem, Ring, LOCAL_SAMPLE_BOUND};
use crate::quadratic::QuadraticProblem;

use super::oracle::Oracle;
use super::verify::split_solvable_by_oracle;
use super::{classify, Classification, Tag};

/// Above this many matrices a finite ring is decided by the lifting theorem
/// instead of a full sweep.
pub const EXHAUSTION_LIMIT: u64 = 65_536;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    ByTheorem,
    ByExhaustion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision")]
pub enum RingDecision {
    Quasipolar {
        basis: Basis,
        argument: String,
    },
    NotQuasipolar {
        witness: GenMatrix,
        classification: Classification,
    },
    Unknown {
        search: Teo6Report,
    },
}

impl RingDecision {
    pub fn is_quasipolar(&self) -> Option<bool> {
        match self {
            RingDecision::Quasipolar { .. } => Some(true),
            RingDecision::NotQuasipolar { .. } => Some(false),
            RingDecision::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Teo6Entry {
    pub u: Elem,
    pub w: Elem,
    pub solvable: bool,
    pub tag: Tag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Teo6Report {
    pub ring: String,
    pub s: Elem,
    pub checked: usize,
    pub all_solvable: bool,
    /// Pairs whose quadratic is unsolvable; each gives a non-quasipolar
    /// `[[1,1],[u,w]]`.
    pub witnesses: Vec<Teo6Entry>,
    /// Pairs where solvability and the classification disagree.
    pub disagreements: Vec<Teo6Entry>,
}

pub fn family_matrix(ring: &Ring, s: &Elem, u: &Elem, w: &Elem) -> GenMatrix {
    GenMatrix::from_elems(ring, s, [[ring.one(), ring.one()], [u.clone(), w.clone()]])
}

fn check_pairs(ring: &Ring, s: &Elem, pairs: Vec<(Elem, Elem)>) -> Result<Teo6Report> {
    if !ring.contains(s) {
        return Err(Error::ContextMismatch);
    }
    if !ring.in_jacobson(s) {
        return Err(Error::PreconditionViolated(format!("s = {s} is a unit")));
    }
    for (u, w) in &pairs {
        if !ring.contains(u) || !ring.contains(w) {
            return Err(Error::ContextMismatch);
        }
        if !ring.is_unit(u) || !ring.in_jacobson(w) {
            return Err(Error::PreconditionViolated(format!(
                "need u a unit and w in the radical, got u = {u}, w = {w}"
            )));
        }
    }
    let entries: Vec<Teo6Entry> = pairs
        .into_par_iter()
        .map(|(u, w)| {
            let mu = ring.add(&ring.one(), &w);
            let lambda = ring.sub(&w, &ring.mul(s, &u));
            let problem = QuadraticProblem::new(ring, mu, lambda).expect("same ring");
            let solvable = split_solvable_by_oracle(&problem);
            let tag = classify(&family_matrix(ring, s, &u, &w)).tag;
            Teo6Entry { u, w, solvable, tag }
        })
        .collect();
    let witnesses: Vec<_> = entries.iter().filter(|e| !e.solvable).cloned().collect();
    let disagreements = entries
        .iter()
        .filter(|e| e.solvable != e.tag.is_quasipolar())
        .cloned()
        .collect();
    Ok(Teo6Report {
        ring: ring.to_string(),
        s: s.clone(),
        checked: entries.len(),
        all_solvable: witnesses.is_empty(),
        witnesses,
        disagreements,
    })
}

/// Checks `[[1,1],[u,w]]` for every `u` in `us` and `w` in `ws`.
pub fn check_teo6_family(ring: &Ring, s: &Elem, us: &[Elem], ws: &[Elem]) -> Result<Teo6Report> {
    let pairs = us
        .iter()
        .flat_map(|u| ws.iter().map(move |w| (u.clone(), w.clone())))
        .collect();
    check_pairs(ring, s, pairs)
}

/// Checks `count` seeded random pairs.
pub fn sample_teo6_family(ring: &Ring, s: &Elem, count: usize, seed: u64) -> Result<Teo6Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|_| (ring.random_unit(&mut rng), ring.random_radical(&mut rng)))
        .collect();
    check_pairs(ring, s, pairs)
}

/// Small constants used by the bounded search, split into units and radical
/// elements.
fn search_constants(ring: &Ring) -> (Vec<Elem>, Vec<Elem>) {
    let mut units = Vec::new();
    let mut radical = Vec::new();
    for k in 0..=LOCAL_SAMPLE_BOUND {
        for z in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = ring.from_int(z);
            if ring.is_unit(&e) {
                units.push(e);
            } else {
                radical.push(e);
            }
        }
    }
    (units, radical)
}

fn quasipolar(basis: Basis, argument: &str) -> RingDecision {
    RingDecision::Quasipolar {
        basis,
        argument: argument.to_string(),
    }
}

fn not_quasipolar(witness: GenMatrix) -> Option<RingDecision> {
    let classification = classify(&witness);
    (classification.tag == Tag::NotQuasipolar).then_some(RingDecision::NotQuasipolar {
        witness,
        classification,
    })
}

/// Decides whether `K_s(ring)` is quasipolar, or reports the bounded search
/// that failed to settle it.
pub fn decide_ring(ring: &Ring, s: &Elem) -> Result<RingDecision> {
    if !ring.contains(s) {
        return Err(Error::ContextMismatch);
    }
    if ring.is_zero(s) {
        return Ok(quasipolar(Basis::ByTheorem, "s = 0: every K_0(R) over a commutative local ring is quasipolar"));
    }
    if ring.is_nilpotent(s) {
        return Ok(quasipolar(Basis::ByTheorem, "s is nilpotent"));
    }
    if ring.is_finite() {
        let count = ring.cardinality().map(|n| n.saturating_pow(4));
        if let Some(count) = count.filter(|&c| c <= EXHAUSTION_LIMIT) {
            let oracle = Oracle::new(ring, s)?;
            let bad = (0..count)
                .into_par_iter()
                .map(|i| oracle.matrix_at(i))
                .find_first(|a| classify(a).tag == Tag::NotQuasipolar);
            return Ok(match bad {
                Some(witness) => not_quasipolar(witness).expect("classified as not quasipolar"),
                None => quasipolar(Basis::ByExhaustion, "every matrix classified as quasipolar"),
            });
        }
        return Ok(quasipolar(
            Basis::ByTheorem,
            "finite local ring: split residue roots lift through the nilpotent radical",
        ));
    }
    if let Some(s_inv) = ring.try_inverse(s) {
        // [[1,1],[-p s^{-1},0]] has characteristic polynomial x^2 - x + p,
        // whose discriminant 1 - 4p is negative.
        let u = ring.neg(&ring.mul(&ring.from_int(ring.prime() as i64), &s_inv));
        let witness = GenMatrix::from_elems(ring, s, [[ring.one(), ring.one()], [u, ring.zero()]]);
        if let Some(decision) = not_quasipolar(witness) {
            return Ok(decision);
        }
    }
    if !ring.in_jacobson(s) {
        let (units, _) = search_constants(ring);
        for u in &units {
            let witness = GenMatrix::from_elems(ring, s, [[ring.one(), ring.one()], [u.clone(), ring.zero()]]);
            if let Some(decision) = not_quasipolar(witness) {
                return Ok(decision);
            }
        }
        return Ok(RingDecision::Unknown {
            search: Teo6Report {
                ring: ring.to_string(),
                s: s.clone(),
                checked: units.len(),
                all_solvable: true,
                witnesses: Vec::new(),
                disagreements: Vec::new(),
            },
        });
    }
    let (units, radical) = search_constants(ring);
    let report = check_teo6_family(ring, s, &units, &radical)?;
    if let Some(first) = report.witnesses.first() {
        let witness = family_matrix(ring, s, &first.u, &first.w);
        if let Some(decision) = not_quasipolar(witness) {
            return Ok(decision);
        }
    }
    Ok(RingDecision::Unknown { search: report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_fast_paths() {
        let z8 = Ring::zmod(2, 3).unwrap();
        assert_eq!(
            decide_ring(&z8, &z8.from_int(6)).unwrap(),
            quasipolar(Basis::ByTheorem, "s is nilpotent")
        );
        assert!(matches!(
            decide_ring(&z8, &z8.from_int(3)).unwrap(),
            RingDecision::Quasipolar { basis: Basis::ByExhaustion, .. }
        ));
        let q = Ring::localized(2).unwrap().truncated(2).unwrap();
        let t = q.variable().unwrap();
        assert_eq!(decide_ring(&q, &t).unwrap().is_quasipolar(), Some(true));
    }

    #[test]
    fn localized_unit_multiplier_witness() {
        let r = Ring::localized(3).unwrap();
        let RingDecision::NotQuasipolar { witness, classification } = decide_ring(&r, &r.one()).unwrap() else {
            panic!("expected a witness")
        };
        assert_eq!(witness, GenMatrix::from_ints(&r, 1, [[1, 1], [-3, 0]]));
        assert_eq!(classification.tag, Tag::NotQuasipolar);
    }

    #[test]
    fn radical_multiplier_search() {
        let zl = Ring::localized(2).unwrap();
        let q = zl.truncated(2).unwrap();
        let report = check_teo6_family(&q, &q.from_int(2), &[q.from_int(5)], &[q.zero()]).unwrap();
        assert!(!report.all_solvable);
        assert!(report.disagreements.is_empty());
        assert_eq!(decide_ring(&q, &q.from_int(2)).unwrap().is_quasipolar(), Some(false));
        assert_eq!(decide_ring(&zl, &zl.from_int(6)).unwrap().is_quasipolar(), Some(false));
    }

    #[test]
    fn finite_rings_solve_every_family_member() {
        let z4 = Ring::zmod(2, 2).unwrap();
        let (units, radical): (Vec<Elem>, Vec<Elem>) =
            z4.elements().unwrap().into_iter().partition(|e| z4.is_unit(e));
        let report = check_teo6_family(&z4, &z4.from_int(2), &units, &radical).unwrap();
        assert_eq!(report.checked, 4);
        assert!(report.all_solvable && report.disagreements.is_empty());
    }

    #[test]
    fn family_preconditions() {
        let z4 = Ring::zmod(2, 2).unwrap();
        assert!(matches!(
            check_teo6_family(&z4, &z4.one(), &[z4.one()], &[z4.zero()]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            check_teo6_family(&z4, &z4.zero(), &[z4.zero()], &[z4.zero()]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn nilpotent_multiplier_samples_are_solvable() {
        let q = Ring::localized(2).unwrap().truncated(2).unwrap();
        let t = q.variable().unwrap();
        let report = sample_teo6_family(&q, &t, 200, 3).unwrap();
        assert!(report.all_solvable && report.disagreements.is_empty());
    }
}
