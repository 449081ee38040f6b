//! Explicit similarity transforms: triangular and diagonal forms, the
//! classification of idempotents, and the normal form for `s` in `J`.
//!
//! Conjugation is always `P^{-1} A P`. Every transform is checked by
//! recomputing the conjugate before it is returned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genmat::GenMatrix;
use crate::localring::Elem;
use crate::quadratic::{solve_split, SplitOutcome};

use super::characteristic_problem;

fn upper_unipotent(a: &GenMatrix, x: Elem) -> GenMatrix {
    let r = a.ring();
    GenMatrix::from_elems(r, a.s(), [[r.one(), x], [r.zero(), r.one()]])
}

fn lower_unipotent(a: &GenMatrix, y: Elem) -> GenMatrix {
    let r = a.ring();
    GenMatrix::from_elems(r, a.s(), [[r.one(), r.zero()], [y, r.one()]])
}

fn checked(a: &GenMatrix, p: GenMatrix, expect: impl Fn(&GenMatrix) -> bool) -> (GenMatrix, GenMatrix) {
    let b = a.conjugate_by(&p).expect("conjugator is a unit");
    assert!(expect(&b), "internal error: conjugating {a} by {p} gave {b}");
    assert_eq!(b.det_s(), a.det_s());
    assert_eq!(b.tr(), a.tr());
    (p, b)
}

fn require_split_regime(a: &GenMatrix) -> Result<()> {
    let r = a.ring();
    if !r.is_unit(&a.tr()) || !r.in_jacobson(&a.det_s()) {
        return Err(Error::PreconditionViolated(format!(
            "{a} needs a unit trace and a determinant in the radical"
        )));
    }
    Ok(())
}

/// `(P, B)` with `B = P^{-1} A P` upper triangular, for a quasipolar `A`
/// with unit trace and determinant in `J`.
///
/// `P = [[1,0],[y,1]]` with `y = a21 (r - a22)^{-1}`, where `r` is whichever
/// root of the characteristic quadratic makes `r - a22` a unit; the lower
/// left entry of the conjugate is then `a21 (r-a22)^{-2} f(r) = 0`.
pub fn triangularize(a: &GenMatrix) -> Result<(GenMatrix, GenMatrix)> {
    require_split_regime(a)?;
    let r = a.ring();
    let [_, _, a21, a22] = a.entries();
    if r.is_zero(a21) {
        return Ok((a.one_like(), a.clone()));
    }
    let SplitOutcome::Split(roots) = solve_split(&characteristic_problem(a))? else {
        return Err(Error::PreconditionViolated(format!(
            "{a} is not quasipolar, so it has no triangular form"
        )));
    };
    let root = if r.in_jacobson(a22) { roots.root_u } else { roots.root_j };
    let gap = r.try_inverse(&r.sub(&root, a22)).expect("root and a22 lie in different classes");
    let p = lower_unipotent(a, r.mul(a21, &gap));
    Ok(checked(a, p, GenMatrix::is_upper_triangular))
}

/// For `A = [[a,b],[0,c]]` with unit trace and determinant in `J`, returns
/// `P = [[1, b (c-a)^{-1}],[0,1]]` and `P^{-1} A P = diag(a, c)`.
pub fn diagonalize_triangular(a: &GenMatrix) -> Result<(GenMatrix, GenMatrix)> {
    if !a.is_upper_triangular() {
        return Err(Error::PreconditionViolated(format!("{a} is not upper triangular")));
    }
    require_split_regime(a)?;
    let r = a.ring();
    let [a11, a12, _, a22] = a.entries();
    let inv = r
        .try_inverse(&r.sub(a22, a11))
        .ok_or_else(|| Error::PreconditionViolated(format!("diagonal of {a} has a non-unit gap")))?;
    let p = upper_unipotent(a, r.mul(a12, &inv));
    Ok(checked(a, p, GenMatrix::is_diagonal))
}

/// Triangularizes and then diagonalizes a quasipolar `A` in the split regime.
pub fn diagonalize(a: &GenMatrix) -> Result<(GenMatrix, GenMatrix)> {
    let (p1, t) = triangularize(a)?;
    let (p2, _) = diagonalize_triangular(&t)?;
    let p = &p1 * &p2;
    Ok(checked(a, p, GenMatrix::is_diagonal))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdempotentClass {
    Zero,
    Identity,
    SimilarToDiag10,
    SimilarToDiag01,
}

/// The similarity class of an idempotent and a conjugator `P` taking it to
/// `diag(1,0)` or `diag(0,1)` (identity for the trivial idempotents).
///
/// A non-trivial idempotent has trace `1` and determinant `0`, so it is
/// diagonalizable. If `s` is a unit, `[[0,s^{-1}],[s^{-1},0]]` also moves
/// `diag(0,1)` to `diag(1,0)`; if `s` lies in `J` the two classes differ.
pub fn classify_idempotent(e: &GenMatrix) -> Result<(IdempotentClass, GenMatrix)> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if e.is_zero() {
        return Ok((IdempotentClass::Zero, e.one_like()));
    }
    if e.is_identity() {
        return Ok((IdempotentClass::Identity, e.one_like()));
    }
    let r = e.ring();
    let (p, d) = diagonalize(e)?;
    let diag10 = GenMatrix::diag(r, e.s(), r.one(), r.zero());
    if d == diag10 {
        return Ok((IdempotentClass::SimilarToDiag10, p));
    }
    let Some(s_inv) = r.try_inverse(e.s()) else {
        return Ok((IdempotentClass::SimilarToDiag01, p));
    };
    let flip = GenMatrix::from_elems(r, e.s(), [[r.zero(), s_inv.clone()], [s_inv, r.zero()]]);
    let p = &p * &flip;
    let (p, _) = checked(e, p, |b| *b == diag10);
    Ok((IdempotentClass::SimilarToDiag10, p))
}

/// A conjugate of `A` whose off-diagonal top entry is `1`, with both
/// bottom-row entries and one diagonal entry units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub p: GenMatrix,
    pub b: GenMatrix,
    /// `true` for `[[u,1],[v,w]]`, `false` for `[[w,1],[v,u]]`.
    pub unit_first: bool,
}

/// For `s` in `J` and `A` neither a unit nor quasinilpotent, conjugates `A`
/// to `[[u,1],[v,w]]` or `[[w,1],[v,u]]` with `u, v` units and `w` in `J`.
///
/// Conjugating by `[[1,x],[0,1]]` sends the top right entry `b` to
/// `b + x(a-d) - s c x^2`; since `a - d` is a unit this makes `b` a unit for
/// `x = 1` when needed. `[[1,0],[y,1]]` does the same for `c` without
/// touching `b`, and `diag(1, b^{-1})` then scales `b` to `1`.
pub fn normal_form_sj(a: &GenMatrix) -> Result<NormalForm> {
    let r = a.ring();
    if !r.in_jacobson(a.s()) {
        return Err(Error::PreconditionViolated(format!("s = {} is a unit", a.s())));
    }
    if a.is_unit() || r.in_jacobson(&a.tr()) {
        return Err(Error::PreconditionViolated(format!(
            "{a} is a unit or quasinilpotent"
        )));
    }
    let mut p = a.one_like();
    let mut b = a.clone();
    if r.in_jacobson(b.entry(0, 1)) {
        let step = upper_unipotent(a, r.one());
        b = b.conjugate_by(&step)?;
        p = &p * &step;
    }
    if r.in_jacobson(b.entry(1, 0)) {
        let step = lower_unipotent(a, r.one());
        b = b.conjugate_by(&step)?;
        p = &p * &step;
    }
    let k = r.try_inverse(b.entry(0, 1)).expect("top right entry is a unit");
    let scale = GenMatrix::diag(r, a.s(), r.one(), k);
    p = &p * &scale;
    let unit_first = r.is_unit(a.entry(0, 0));
    let (p, b) = checked(a, p, |b| {
        let [b11, b12, b21, b22] = b.entries();
        r.is_one(b12)
            && r.is_unit(b21)
            && r.is_unit(if unit_first { b11 } else { b22 })
            && r.in_jacobson(if unit_first { b22 } else { b11 })
    });
    Ok(NormalForm { p, b, unit_first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localring::Ring;
    use crate::quasipolar::{classify, Tag};

    fn z(p: u64, k: u32) -> Ring {
        Ring::zmod(p, k).unwrap()
    }

    #[test]
    fn diagonalize_triangular_examples() {
        let r = z(2, 3);
        let a = GenMatrix::from_ints(&r, 1, [[7, 4], [0, 2]]);
        let (p, d) = diagonalize_triangular(&a).unwrap();
        assert_eq!(p, GenMatrix::from_ints(&r, 1, [[1, 4], [0, 1]]));
        assert_eq!(d, GenMatrix::from_ints(&r, 1, [[7, 0], [0, 2]]));

        // Trace 2 is not a unit mod 8.
        let a = GenMatrix::from_ints(&r, 1, [[7, 4], [0, 3]]);
        assert!(matches!(diagonalize_triangular(&a), Err(Error::PreconditionViolated(_))));

        let f3 = z(3, 1);
        let a = GenMatrix::from_ints(&f3, 1, [[1, 1], [0, 0]]);
        let (p, d) = diagonalize_triangular(&a).unwrap();
        assert_eq!(p, GenMatrix::from_ints(&f3, 1, [[1, 2], [0, 1]]));
        assert_eq!(d, GenMatrix::from_ints(&f3, 1, [[1, 0], [0, 0]]));

        let a = GenMatrix::from_ints(&f3, 1, [[1, 0], [0, 0]]);
        assert!(diagonalize_triangular(&a).unwrap().0.is_identity());
    }

    #[test]
    fn idempotent_classes() {
        let r = z(2, 3);
        let s = r.one();
        assert_eq!(
            classify_idempotent(&GenMatrix::identity(&r, &s)).unwrap().0,
            IdempotentClass::Identity
        );
        let e = GenMatrix::from_ints(&r, 1, [[6, 3], [6, 3]]);
        let (class, p) = classify_idempotent(&e).unwrap();
        assert_eq!(class, IdempotentClass::SimilarToDiag10);
        assert_eq!(e.conjugate_by(&p).unwrap(), GenMatrix::from_ints(&r, 1, [[1, 0], [0, 0]]));

        let z4 = z(2, 2);
        let e = GenMatrix::from_ints(&z4, 2, [[0, 0], [0, 1]]);
        assert_eq!(classify_idempotent(&e).unwrap().0, IdempotentClass::SimilarToDiag01);

        let e = GenMatrix::from_ints(&z4, 1, [[0, 0], [0, 1]]);
        let (class, p) = classify_idempotent(&e).unwrap();
        assert_eq!(class, IdempotentClass::SimilarToDiag10);
        assert_eq!(e.conjugate_by(&p).unwrap(), GenMatrix::from_ints(&z4, 1, [[1, 0], [0, 0]]));

        assert_eq!(
            classify_idempotent(&GenMatrix::from_ints(&z4, 1, [[1, 1], [0, 0]]).scalar_mul(&z4.from_int(2))),
            Err(Error::NotIdempotent)
        );
    }

    #[test]
    fn every_idempotent_is_classified_over_small_rings() {
        for ring in [z(2, 2), z(3, 1), z(2, 1).truncated(2).unwrap()] {
            for s in ring.elements().unwrap() {
                let els = ring.elements().unwrap();
                for a in &els {
                    for b in &els {
                        for c in &els {
                            for d in &els {
                                let e = GenMatrix::from_elems(
                                    &ring,
                                    &s,
                                    [[a.clone(), b.clone()], [c.clone(), d.clone()]],
                                );
                                if e.is_idempotent() {
                                    let (class, p) = classify_idempotent(&e).unwrap();
                                    let target = match class {
                                        IdempotentClass::Zero | IdempotentClass::Identity => e.clone(),
                                        IdempotentClass::SimilarToDiag10 => {
                                            GenMatrix::diag(&ring, &s, ring.one(), ring.zero())
                                        }
                                        IdempotentClass::SimilarToDiag01 => {
                                            assert!(ring.in_jacobson(&s));
                                            GenMatrix::diag(&ring, &s, ring.zero(), ring.one())
                                        }
                                    };
                                    assert_eq!(e.conjugate_by(&p).unwrap(), target);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagonalize_split_elements() {
        let r = z(3, 2);
        for s in 0..9 {
            for rows in [[[1, 1], [2, 0]], [[4, 3], [6, 0]], [[1, 5], [7, 3]]] {
                let a = GenMatrix::from_ints(&r, s, rows);
                if classify(&a).tag == Tag::SplitCase {
                    let (p, d) = diagonalize(&a).unwrap();
                    assert_eq!(a.conjugate_by(&p).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let r = z(2, 3);
        let a = GenMatrix::from_ints(&r, 2, [[3, 1], [1, 2]]);
        let nf = normal_form_sj(&a).unwrap();
        assert!(nf.p.is_identity());
        assert!(nf.unit_first);

        let a = GenMatrix::from_ints(&r, 2, [[1, 2], [2, 4]]);
        let nf = normal_form_sj(&a).unwrap();
        assert_eq!(a.conjugate_by(&nf.p).unwrap(), nf.b);
        assert_eq!(nf.b.entry(0, 1), &Elem::Residue(1));

        let a = GenMatrix::from_ints(&r, 2, [[0, 4], [6, 5]]);
        let nf = normal_form_sj(&a).unwrap();
        assert!(!nf.unit_first);

        let qnil = GenMatrix::from_ints(&r, 2, [[2, 1], [1, 0]]);
        assert!(matches!(normal_form_sj(&qnil), Err(Error::PreconditionViolated(_))));
        let unit_s = GenMatrix::from_ints(&r, 1, [[1, 2], [2, 4]]);
        assert!(matches!(normal_form_sj(&unit_s), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn normal_form_exists_for_every_eligible_matrix() {
        for ring in [z(2, 3), z(3, 2)] {
            let p = ring.prime() as i64;
            for s in [0, p] {
                let els = ring.elements().unwrap();
                for a in &els {
                    for b in &els {
                        for c in &els {
                            for d in &els {
                                let m = GenMatrix::from_elems(
                                    &ring,
                                    &ring.from_int(s),
                                    [[a.clone(), b.clone()], [c.clone(), d.clone()]],
                                );
                                if m.is_unit() || ring.in_jacobson(&m.tr()) {
                                    continue;
                                }
                                let nf = normal_form_sj(&m).unwrap();
                                assert_eq!(m.conjugate_by(&nf.p).unwrap(), nf.b);
                            }
                        }
                    }
                }
            }
        }
    }
}
