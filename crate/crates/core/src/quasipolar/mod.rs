//! Quasipolarity of elements of `K_s(R)`.
//!
//! For a commutative local `R`, a matrix `A` splits into three regimes:
//!
//! * `det_s(A)` a unit: `A` is a unit, spectral idempotent `0`;
//! * `det_s(A)` and `tr(A)` in the radical: `A` is quasinilpotent,
//!   spectral idempotent `I`;
//! * `det_s(A)` in the radical, `tr(A)` a unit: `A` is quasipolar exactly
//!   when `x^2 - tr(A) x + det_s(A)` has roots `alpha` in `J` and `beta` a
//!   unit, and then `E = (alpha - beta)^{-1} (A - beta I)`.
//!
//! Every [`Certificate`] is checked on construction. Double-commutant
//! membership needs the whole ring and is checked by [`oracle`] instead.

pub mod conjugators;
pub mod decide;
pub mod oracle;
pub mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::genmat::GenMatrix;
use crate::quadratic::{series_lift, solve_split, QuadraticProblem, RootPair, SplitOutcome, Unsolvable};

pub use conjugators::{
    classify_idempotent, diagonalize, diagonalize_triangular, normal_form_sj, triangularize,
    IdempotentClass, NormalForm,
};
pub use decide::{check_teo6_family, decide_ring, sample_teo6_family, RingDecision, Teo6Report};
pub use oracle::{CommutantSet, Oracle};
pub use verify::{verify_ring, Mode, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    UnitCase,
    QuasinilpotentCase,
    SplitCase,
    NotQuasipolar,
}

impl Tag {
    pub const ALL: [Tag; 4] = [
        Tag::UnitCase,
        Tag::QuasinilpotentCase,
        Tag::SplitCase,
        Tag::NotQuasipolar,
    ];

    pub fn is_quasipolar(self) -> bool {
        self != Tag::NotQuasipolar
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::UnitCase => "UnitCase",
            Tag::QuasinilpotentCase => "QuasinilpotentCase",
            Tag::SplitCase => "SplitCase",
            Tag::NotQuasipolar => "NotQuasipolar",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why an element was found not to be quasipolar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    ResidueUnsolvable,
    RationalRootExhausted,
    /// Inferred from the constant-coefficient matrix of a truncated
    /// polynomial ring.
    ByTheorem,
}

impl From<Unsolvable> for Reason {
    fn from(u: Unsolvable) -> Self {
        match u {
            Unsolvable::ResidueUnsolvable => Reason::ResidueUnsolvable,
            Unsolvable::RationalRootExhausted => Reason::RationalRootExhausted,
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::ResidueUnsolvable => "residue-unsolvable",
            Reason::RationalRootExhausted => "rational-root-exhausted",
            Reason::ByTheorem => "by-theorem",
        })
    }
}

/// A spectral idempotent `E` of `A` together with `W = A + E` and `A E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(rename = "E")]
    e: GenMatrix,
    #[serde(rename = "W")]
    w: GenMatrix,
    qnil_part: GenMatrix,
}

impl Certificate {
    /// Checks every element-local certificate condition.
    pub fn new(a: &GenMatrix, e: GenMatrix) -> std::result::Result<Certificate, String> {
        a.check_compatible(&e).map_err(|err| err.to_string())?;
        if !e.is_idempotent() {
            return Err(format!("E = {e} is not idempotent"));
        }
        if !e.commutes_with(a) {
            return Err(format!("E = {e} does not commute with A = {a}"));
        }
        let w = a + &e;
        if !w.is_unit() {
            return Err(format!("A + E = {w} is not a unit"));
        }
        let qnil_part = a * &e;
        if !is_qnil_fast(&qnil_part) {
            return Err(format!("A E = {qnil_part} is not quasinilpotent"));
        }
        Ok(Certificate { e, w, qnil_part })
    }

    pub fn e(&self) -> &GenMatrix {
        &self.e
    }

    pub fn w(&self) -> &GenMatrix {
        &self.w
    }

    pub fn qnil_part(&self) -> &GenMatrix {
        &self.qnil_part
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<RootPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
}

impl Classification {
    fn with_certificate(tag: Tag, a: &GenMatrix, e: GenMatrix, roots: Option<RootPair>) -> Self {
        let certificate = Certificate::new(a, e)
            .unwrap_or_else(|msg| panic!("internal error: invalid certificate for {a}: {msg}"));
        Classification {
            tag,
            certificate: Some(certificate),
            roots,
            reason: None,
        }
    }

    fn not_quasipolar(reason: Reason) -> Self {
        Classification {
            tag: Tag::NotQuasipolar,
            certificate: None,
            roots: None,
            reason: Some(reason),
        }
    }

    pub fn idempotent(&self) -> Option<&GenMatrix> {
        self.certificate.as_ref().map(Certificate::e)
    }
}

/// `A` is quasinilpotent iff `det_s(A)` and `tr(A)` both lie in `J`.
pub fn is_qnil_fast(a: &GenMatrix) -> bool {
    let r = a.ring();
    r.in_jacobson(&a.det_s()) && r.in_jacobson(&a.tr())
}

/// The characteristic problem `x^2 - tr(A) x + det_s(A)`.
pub fn characteristic_problem(a: &GenMatrix) -> QuadraticProblem {
    QuadraticProblem::new(a.ring(), a.tr(), a.det_s()).expect("entries of A lie in its ring")
}

/// `(alpha - beta)^{-1} (A - beta I)`.
fn spectral_idempotent(a: &GenMatrix, roots: &RootPair) -> GenMatrix {
    let r = a.ring();
    let scale = r
        .try_inverse(&r.sub(&roots.root_j, &roots.root_u))
        .expect("difference of a radical and a unit root is a unit");
    let shifted = a - &a.one_like().scalar_mul(&roots.root_u);
    shifted.scalar_mul(&scale)
}

fn from_roots(a: &GenMatrix, roots: RootPair) -> Classification {
    let e = spectral_idempotent(a, &roots);
    Classification::with_certificate(Tag::SplitCase, a, e, Some(roots))
}

/// Decides quasipolarity of `A` and, when it holds, returns the verified
/// spectral idempotent.
pub fn classify(a: &GenMatrix) -> Classification {
    let r = a.ring();
    let det = a.det_s();
    if r.is_unit(&det) {
        return Classification::with_certificate(Tag::UnitCase, a, a.zero_like(), None);
    }
    if r.in_jacobson(&a.tr()) {
        return Classification::with_certificate(Tag::QuasinilpotentCase, a, a.one_like(), None);
    }
    match solve_split(&characteristic_problem(a)).expect("split regime: tr unit, det in J") {
        SplitOutcome::Split(roots) => from_roots(a, roots),
        SplitOutcome::Unsolvable(why) => Classification::not_quasipolar(why.into()),
    }
}

/// Classifies `A` over `base[t]/(t^n)` through its constant-coefficient
/// matrix `A(0)` in `K_{s(0)}(base)`, lifting the roots for the split case.
/// On other rings this is [`classify`].
pub fn reduce_truncated(a: &GenMatrix) -> Classification {
    let Some(a0) = a.constant_part() else {
        return classify(a);
    };
    let base = reduce_truncated(&a0);
    let out = match base.tag {
        Tag::UnitCase => Classification::with_certificate(Tag::UnitCase, a, a.zero_like(), None),
        Tag::QuasinilpotentCase => {
            Classification::with_certificate(Tag::QuasinilpotentCase, a, a.one_like(), None)
        }
        Tag::SplitCase => {
            let base_roots = base.roots.expect("split case carries roots");
            let problem = characteristic_problem(a);
            let roots = RootPair {
                root_j: series_lift(&base_roots.root_j, &problem).expect("simple root"),
                root_u: series_lift(&base_roots.root_u, &problem).expect("simple root"),
            };
            from_roots(a, roots)
        }
        Tag::NotQuasipolar => Classification::not_quasipolar(Reason::ByTheorem),
    };
    assert_eq!(
        out.tag,
        classify(a).tag,
        "internal error: truncation reduction disagrees with direct classification of {a}"
    );
    out
}
