//! Brute-force oracles over finite rings.
//!
//! These work directly from the definitions (commutants, double commutants,
//! `1 + A X` invertibility) with no use of the trace/determinant theory, so
//! they serve as an independent check on [`super::classify`].
//!
//! Ring elements are replaced by their enumeration indices and arithmetic by
//! lookup tables; a matrix is four indices.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::genmat::GenMatrix;
use crate::localring::{Elem, Ring};

use super::Tag;

/// Largest ring the tables are built for.
pub const MAX_ORACLE_RING: u64 = 64;

type Mat = [u16; 4];

struct FiniteTable {
    elems: Vec<Elem>,
    add: Vec<u16>,
    mul: Vec<u16>,
    zero: u16,
    one: u16,
}

impl FiniteTable {
    fn new(ring: &Ring) -> Result<FiniteTable> {
        let n = ring.cardinality().ok_or_else(|| Error::NotEnumerable(ring.to_string()))?;
        if n > MAX_ORACLE_RING {
            return Err(Error::PreconditionViolated(format!(
                "{ring} has {n} elements; the oracle handles at most {MAX_ORACLE_RING}"
            )));
        }
        let elems = ring.elements()?;
        let idx = |e: &Elem| ring.index_of(e).expect("closed under ring operations") as u16;
        let mut add = Vec::with_capacity(elems.len() * elems.len());
        let mut mul = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                add.push(idx(&ring.add(a, b)));
                mul.push(idx(&ring.mul(a, b)));
            }
        }
        Ok(FiniteTable {
            zero: idx(&ring.zero()),
            one: idx(&ring.one()),
            elems,
            add,
            mul,
        })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.len() + b as usize]
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.len() + b as usize]
    }
}

/// Brute-force oracle for one `K_s(R)` with `R` finite.
pub struct Oracle {
    ring: Ring,
    s_elem: Elem,
    t: FiniteTable,
    s: u16,
    idempotents: OnceLock<Vec<Mat>>,
    units: OnceLock<Vec<bool>>,
}

/// `comm(base)` or `comm^2(base)`, materialized.
#[derive(Clone, Debug)]
pub struct CommutantSet {
    pub base: GenMatrix,
    pub members: Vec<GenMatrix>,
}

impl CommutantSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &GenMatrix) -> bool {
        self.members.contains(x)
    }
}

impl Oracle {
    pub fn new(ring: &Ring, s: &Elem) -> Result<Oracle> {
        if !ring.contains(s) {
            return Err(Error::ContextMismatch);
        }
        let t = FiniteTable::new(ring)?;
        let s_idx = ring.index_of(s).expect("s lies in the ring") as u16;
        Ok(Oracle {
            ring: ring.clone(),
            s_elem: s.clone(),
            t,
            s: s_idx,
            idempotents: OnceLock::new(),
            units: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn s(&self) -> &Elem {
        &self.s_elem
    }

    /// Number of matrices in `K_s(R)`.
    pub fn matrix_count(&self) -> u64 {
        (self.t.len() as u64).pow(4)
    }

    fn mat_at(&self, index: u64) -> Mat {
        let n = self.t.len() as u64;
        [
            (index / (n * n * n)) as u16,
            (index / (n * n) % n) as u16,
            (index / n % n) as u16,
            (index % n) as u16,
        ]
    }

    fn index(&self, m: &Mat) -> usize {
        let n = self.t.len();
        m.iter().fold(0, |acc, &e| acc * n + e as usize)
    }

    fn all(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.matrix_count()).map(|i| self.mat_at(i))
    }

    /// The matrix with the given index; entries vary in row-major order with
    /// the last entry fastest.
    pub fn matrix_at(&self, index: u64) -> GenMatrix {
        self.to_matrix(&self.mat_at(index))
    }

    fn to_matrix(&self, m: &Mat) -> GenMatrix {
        let e = |i: u16| self.t.elems[i as usize].clone();
        GenMatrix::from_elems(&self.ring, &self.s_elem, [[e(m[0]), e(m[1])], [e(m[2]), e(m[3])]])
    }

    fn encode(&self, a: &GenMatrix) -> Result<Mat> {
        if a.ring() != &self.ring || a.s() != &self.s_elem {
            return Err(Error::ContextMismatch);
        }
        let idx = |e: &Elem| self.ring.index_of(e).expect("entry lies in the ring") as u16;
        let [a11, a12, a21, a22] = a.entries();
        Ok([idx(a11), idx(a12), idx(a21), idx(a22)])
    }

    fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let t = &self.t;
        let [a, b, c, d] = *x;
        let [a2, b2, c2, d2] = *y;
        [
            t.add(t.mul(a, a2), t.mul(self.s, t.mul(b, c2))),
            t.add(t.mul(a, b2), t.mul(b, d2)),
            t.add(t.mul(c, a2), t.mul(d, c2)),
            t.add(t.mul(self.s, t.mul(c, b2)), t.mul(d, d2)),
        ]
    }

    fn add(&self, x: &Mat, y: &Mat) -> Mat {
        [0, 1, 2, 3].map(|i| self.t.add(x[i], y[i]))
    }

    fn identity(&self) -> Mat {
        [self.t.one, self.t.zero, self.t.zero, self.t.one]
    }

    fn commutes(&self, x: &Mat, y: &Mat) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    fn is_unit(&self, x: &Mat) -> bool {
        self.units.get_or_init(|| self.units())[self.index(x)]
    }

    fn commutant_raw(&self, a: &Mat) -> Vec<Mat> {
        self.all().filter(|x| self.commutes(x, a)).collect()
    }

    pub fn commutant(&self, a: &GenMatrix) -> Result<CommutantSet> {
        let m = self.encode(a)?;
        Ok(CommutantSet {
            base: a.clone(),
            members: self.commutant_raw(&m).iter().map(|x| self.to_matrix(x)).collect(),
        })
    }

    pub fn double_commutant(&self, a: &GenMatrix) -> Result<CommutantSet> {
        let m = self.encode(a)?;
        let comm = self.commutant_raw(&m);
        Ok(CommutantSet {
            base: a.clone(),
            members: self
                .all()
                .filter(|x| comm.iter().all(|y| self.commutes(x, y)))
                .map(|x| self.to_matrix(&x))
                .collect(),
        })
    }

    /// Whether `x` commutes with every member of `comm(a)`.
    pub fn in_double_commutant(&self, x: &GenMatrix, a: &GenMatrix) -> Result<bool> {
        let (xm, am) = (self.encode(x)?, self.encode(a)?);
        Ok(self.all().all(|y| !self.commutes(&y, &am) || self.commutes(&y, &xm)))
    }

    /// Invertibility of every matrix by searching for inverses. A one-sided
    /// inverse suffices in a finite ring.
    fn units(&self) -> Vec<bool> {
        let id = self.identity();
        let mut unit = vec![false; self.matrix_count() as usize];
        let n = self.matrix_count();
        for i in 0..n {
            if unit[i as usize] {
                continue;
            }
            let x = self.mat_at(i);
            if let Some(j) = (0..n).find(|&j| self.mul(&x, &self.mat_at(j)) == id) {
                unit[i as usize] = true;
                unit[j as usize] = true;
            }
        }
        unit
    }

    fn qnil_with(&self, a: &Mat, comm: &[Mat]) -> bool {
        let id = self.identity();
        comm.iter().all(|x| self.is_unit(&self.add(&id, &self.mul(a, x))))
    }

    /// `1 + A X` is a unit for every `X` commuting with `A`.
    pub fn is_qnil_brute(&self, a: &GenMatrix) -> Result<bool> {
        let m = self.encode(a)?;
        Ok(self.qnil_with(&m, &self.commutant_raw(&m)))
    }

    fn idempotents_raw(&self) -> &[Mat] {
        self.idempotents
            .get_or_init(|| self.all().filter(|e| self.mul(e, e) == *e).collect())
    }

    /// All idempotents of `K_s(R)` in enumeration order.
    pub fn idempotents(&self) -> Vec<GenMatrix> {
        self.idempotents_raw().iter().map(|e| self.to_matrix(e)).collect()
    }

    /// The first idempotent `E` in `comm^2(A)` with `A + E` a unit and `A E`
    /// quasinilpotent, straight from the definition.
    pub fn is_quasipolar_brute(&self, a: &GenMatrix) -> Result<Option<GenMatrix>> {
        let m = self.encode(a)?;
        let comm = self.commutant_raw(&m);
        for e in self.idempotents_raw() {
            if !self.is_unit(&self.add(&m, e)) {
                continue;
            }
            if !comm.iter().all(|y| self.commutes(e, y)) {
                continue;
            }
            let ae = self.mul(&m, e);
            if self.qnil_with(&ae, &self.commutant_raw(&ae)) {
                return Ok(Some(self.to_matrix(e)));
            }
        }
        Ok(None)
    }

    /// Some idempotent `E` commutes with `A` and leaves `A - E` a unit.
    pub fn is_strongly_clean_brute(&self, a: &GenMatrix) -> Result<bool> {
        let m = self.encode(a)?;
        let neg_one = self.ring.index_of(&self.ring.from_int(-1)).expect("in ring") as u16;
        Ok(self.idempotents_raw().iter().any(|e| {
            let minus_e = e.map(|x| self.t.mul(neg_one, x));
            self.commutes(e, &m) && self.is_unit(&self.add(&m, &minus_e))
        }))
    }

    /// The tag implied by a brute-force spectral idempotent.
    pub fn tag_of(&self, idempotent: Option<&GenMatrix>) -> Tag {
        match idempotent {
            None => Tag::NotQuasipolar,
            Some(e) if e.is_zero() => Tag::UnitCase,
            Some(e) if e.is_identity() => Tag::QuasinilpotentCase,
            Some(_) => Tag::SplitCase,
        }
    }

    /// Unit flags for every matrix in enumeration order, by inverse search.
    pub fn unit_table(&self) -> &[bool] {
        self.units.get_or_init(|| self.units())
    }
}
