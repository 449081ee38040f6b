//! Arithmetic in the generalized matrix ring `K_s(R)`.
//!
//! Elements are 2x2 matrices over `R` with the multiplier `s` twisting the
//! corner products:
//!
//! ```text
//! [a b] [a' b']   [aa' + s bc'   ab' + bd'  ]
//! [c d] [c' d'] = [ca' + dc'     s cb' + dd']
//! ```
//!
//! `s` is stored on every matrix; binary operations on matrices with
//! different rings or multipliers are rejected.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localring::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenMatrix {
    ring: Ring,
    s: Elem,
    m: [Elem; 4],
}

impl GenMatrix {
    /// Builds `[[a, b], [c, d]]` in `K_s(ring)`, checking that every entry and
    /// the multiplier belong to `ring`.
    pub fn new(ring: &Ring, s: Elem, rows: [[Elem; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = rows;
        let m = [a, b, c, d];
        if !ring.contains(&s) || !m.iter().all(|e| ring.contains(e)) {
            return Err(Error::ContextMismatch);
        }
        Ok(GenMatrix {
            ring: ring.clone(),
            s,
            m,
        })
    }

    pub fn from_ints(ring: &Ring, s: i64, rows: [[i64; 2]; 2]) -> Self {
        let s = ring.from_int(s);
        Self::from_elems(ring, &s, rows.map(|r| r.map(|z| ring.from_int(z))))
    }

    pub(crate) fn from_elems(ring: &Ring, s: &Elem, rows: [[Elem; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        GenMatrix {
            ring: ring.clone(),
            s: s.clone(),
            m: [a, b, c, d],
        }
    }

    fn with_entries(&self, m: [Elem; 4]) -> Self {
        GenMatrix {
            ring: self.ring.clone(),
            s: self.s.clone(),
            m,
        }
    }

    pub fn identity(ring: &Ring, s: &Elem) -> Self {
        Self::diag(ring, s, ring.one(), ring.one())
    }

    pub fn zero(ring: &Ring, s: &Elem) -> Self {
        Self::diag(ring, s, ring.zero(), ring.zero())
    }

    pub fn diag(ring: &Ring, s: &Elem, a: Elem, d: Elem) -> Self {
        Self::from_elems(ring, s, [[a, ring.zero()], [ring.zero(), d]])
    }

    /// Identity of the same ring and multiplier as `self`.
    pub fn one_like(&self) -> Self {
        Self::identity(&self.ring, &self.s)
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.ring, &self.s)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn s(&self) -> &Elem {
        &self.s
    }

    /// Entries in row-major order `[a11, a12, a21, a22]`.
    pub fn entries(&self) -> &[Elem; 4] {
        &self.m
    }

    /// Entry at zero-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Elem {
        &self.m[2 * row + col]
    }

    pub fn rows(&self) -> [[Elem; 2]; 2] {
        let [a, b, c, d] = self.m.clone();
        [[a, b], [c, d]]
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::ContextMismatch)
        } else if self.s != other.s {
            Err(Error::MultiplierMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(&other.neg_matrix()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let r = &self.ring;
        let m = std::array::from_fn(|i| r.add(&self.m[i], &other.m[i]));
        self.with_entries(m)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let r = &self.ring;
        let [a, b, c, d] = &self.m;
        let [a2, b2, c2, d2] = &other.m;
        let s = &self.s;
        let m = [
            r.add(&r.mul(a, a2), &r.mul(s, &r.mul(b, c2))),
            r.add(&r.mul(a, b2), &r.mul(b, d2)),
            r.add(&r.mul(c, a2), &r.mul(d, c2)),
            r.add(&r.mul(s, &r.mul(c, b2)), &r.mul(d, d2)),
        ];
        self.with_entries(m)
    }

    fn neg_matrix(&self) -> Self {
        let m = std::array::from_fn(|i| self.ring.neg(&self.m[i]));
        self.with_entries(m)
    }

    pub fn scalar_mul(&self, r: &Elem) -> Self {
        let m = std::array::from_fn(|i| self.ring.mul(r, &self.m[i]));
        self.with_entries(m)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = self.one_like();
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        acc
    }

    /// `ad - s bc`.
    pub fn det_s(&self) -> Elem {
        let r = &self.ring;
        let [a, b, c, d] = &self.m;
        r.sub(&r.mul(a, d), &r.mul(&self.s, &r.mul(b, c)))
    }

    /// `a + d`.
    pub fn tr(&self) -> Elem {
        self.ring.add(&self.m[0], &self.m[3])
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.det_s())
    }

    /// `det_s(A)^{-1} [[d, -b], [-c, a]]`, or `None` when `det_s(A)` is not a
    /// unit.
    pub fn try_inverse(&self) -> Option<Self> {
        let r = &self.ring;
        let inv = r.try_inverse(&self.det_s())?;
        let [a, b, c, d] = &self.m;
        let adj = self.with_entries([d.clone(), r.neg(b), r.neg(c), a.clone()]);
        Some(adj.scalar_mul(&inv))
    }

    /// The automorphism `[[a, x], [y, b]] -> [[b, y], [x, a]]`.
    pub fn swap(&self) -> Self {
        let [a, x, y, b] = self.m.clone();
        self.with_entries([b, y, x, a])
    }

    /// `P^{-1} A P`, with `self` as `A`. This orientation is used everywhere
    /// in the crate.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        self.check_compatible(p)?;
        let p_inv = p.try_inverse().ok_or(Error::NotAUnit)?;
        Ok(p_inv.mul_unchecked(&self.mul_unchecked(p)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul_unchecked(self) == *self
    }

    /// `A^2 - tr(A) A + det_s(A) I`, which vanishes identically.
    pub fn cayley_hamilton_residual(&self) -> Self {
        let sq = self.mul_unchecked(self);
        let lin = self.scalar_mul(&self.tr());
        let cst = self.one_like().scalar_mul(&self.det_s());
        sq.add_unchecked(&lin.neg_matrix()).add_unchecked(&cst)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok()
            && self.mul_unchecked(other) == other.mul_unchecked(self)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        *self == self.one_like()
    }

    pub fn is_diagonal(&self) -> bool {
        self.ring.is_zero(&self.m[1]) && self.ring.is_zero(&self.m[2])
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.ring.is_zero(&self.m[2])
    }

    /// For `A(t)` over `base[t]/(t^n)`, the constant-coefficient matrix
    /// `A(0)` in `K_{s(0)}(base)`.
    pub fn constant_part(&self) -> Option<Self> {
        let base = self.ring.base()?;
        let ct = |e: &Elem| self.ring.constant_term(e);
        Some(GenMatrix {
            ring: base.clone(),
            s: ct(&self.s),
            m: std::array::from_fn(|i| ct(&self.m[i])),
        })
    }

    /// Serializable literal `{"s": .., "m": [[..], [..]]}`.
    pub fn to_literal(&self) -> MatrixLiteral {
        let lit = |e: &Elem| ElemLiteral::Text(e.to_string());
        MatrixLiteral {
            s: lit(&self.s),
            m: [[lit(&self.m[0]), lit(&self.m[1])], [lit(&self.m[2]), lit(&self.m[3])]],
        }
    }
}

/// Serialized as rows of element strings; the multiplier is reported
/// separately by whoever owns the context.
impl Serialize for GenMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl fmt::Display for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl Add for &GenMatrix {
    type Output = GenMatrix;

    fn add(self, rhs: &GenMatrix) -> GenMatrix {
        self.try_add(rhs).expect("incompatible matrices")
    }
}

impl Sub for &GenMatrix {
    type Output = GenMatrix;

    fn sub(self, rhs: &GenMatrix) -> GenMatrix {
        self.try_sub(rhs).expect("incompatible matrices")
    }
}

impl Mul for &GenMatrix {
    type Output = GenMatrix;

    fn mul(self, rhs: &GenMatrix) -> GenMatrix {
        self.try_mul(rhs).expect("incompatible matrices")
    }
}

impl Neg for &GenMatrix {
    type Output = GenMatrix;

    fn neg(self) -> GenMatrix {
        self.neg_matrix()
    }
}

/// An element literal as it appears in JSON: a string in the element
/// grammar, a bare integer, or a coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemLiteral {
    Int(i64),
    Text(String),
    List(Vec<ElemLiteral>),
}

impl fmt::Display for ElemLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLiteral::Int(z) => write!(f, "{z}"),
            ElemLiteral::Text(s) => f.write_str(s),
            ElemLiteral::List(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// JSON form of a matrix: `{"s": <elem>, "m": [[e11, e12], [e21, e22]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub s: ElemLiteral,
    pub m: [[ElemLiteral; 2]; 2],
}

impl MatrixLiteral {
    pub fn to_matrix(&self, ring: &Ring) -> Result<GenMatrix> {
        let parse = |l: &ElemLiteral| crate::parse::parse_element(ring, &l.to_string());
        let s = parse(&self.s)?;
        let [[a, b], [c, d]] = &self.m;
        GenMatrix::new(ring, s, [[parse(a)?, parse(b)?], [parse(c)?, parse(d)?]])
    }
}
