//! Concrete commutative local rings with decidable unit, radical and
//! nilpotence predicates.
//!
//! A [`Ring`] is an immutable, cheaply clonable context built from a
//! [`RingDescriptor`]. Elements are plain canonical values ([`Elem`]) and all
//! arithmetic goes through the context, so matrices and solvers can hold one
//! context and many bare values. [`RingElement`] pairs a value with its
//! context for callers that want checked, self-describing operands.
//!
//! Every instantiated ring is local, so the Jacobson radical is exactly the
//! set of non-units. `Z/p^N` stands in for the p-adic integers when a finite
//! precision model is good enough; it is never treated as the exact ring.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest modulus accepted for `Z/p^k`; keeps every intermediate product
/// inside `u128` and every Euclid step inside `i128`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Bound on numerators and denominators drawn by the random samplers for
/// rings built on `Z_(p)`.
pub const LOCAL_SAMPLE_BOUND: i64 = 12;

/// Description of a ring, independent of any precomputed state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    /// Integers modulo `p^k`.
    ZMod { p: u64, k: u32 },
    /// Rationals whose reduced denominator is coprime to `p`.
    LocalizedInt { p: u64 },
    /// `base[t]/(t^n)`.
    Quotient { base: Box<RingDescriptor>, n: usize },
}

impl RingDescriptor {
    pub fn zmod(p: u64, k: u32) -> Self {
        RingDescriptor::ZMod { p, k }
    }

    pub fn prime_field(p: u64) -> Self {
        RingDescriptor::ZMod { p, k: 1 }
    }

    pub fn localized(p: u64) -> Self {
        RingDescriptor::LocalizedInt { p }
    }

    pub fn quotient(base: RingDescriptor, n: usize) -> Self {
        RingDescriptor::Quotient {
            base: Box::new(base),
            n,
        }
    }

    /// The residue characteristic.
    pub fn prime(&self) -> u64 {
        match self {
            RingDescriptor::ZMod { p, .. } | RingDescriptor::LocalizedInt { p } => *p,
            RingDescriptor::Quotient { base, .. } => base.prime(),
        }
    }

    /// Number of `[t]/t^n` layers.
    pub fn depth(&self) -> usize {
        match self {
            RingDescriptor::Quotient { base, .. } => 1 + base.depth(),
            _ => 0,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::ZMod { p, k: 1 } => write!(f, "F{p}"),
            RingDescriptor::ZMod { p, k } => write!(f, "Z/{}", p.pow(*k)),
            RingDescriptor::LocalizedInt { p } => write!(f, "Zloc({p})"),
            RingDescriptor::Quotient { base, n } => write!(f, "{base}[t]/t^{n}"),
        }
    }
}

/// A canonical ring value. Which variant is valid depends on the ring:
/// residues for `Z/p^k`, reduced fractions for `Z_(p)`, and coefficient
/// vectors of exactly `n` base values for `base[t]/(t^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Residue(u64),
    Fraction(BigRational),
    Poly(Vec<Elem>),
}

impl Elem {
    pub fn fraction(numer: i64, denom: i64) -> Elem {
        Elem::Fraction(BigRational::new(numer.into(), denom.into()))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Residue(r) => write!(f, "{r}"),
            Elem::Fraction(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Elem::Fraction(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Elem::Poly(cs) => {
                write!(f, "[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Serialized as its display string, which the element parser reads back.
impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug)]
struct RingInner {
    desc: RingDescriptor,
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    ZMod { p: u64, modulus: u64, k: u32 },
    Localized { p: BigInt },
    Quotient { base: Ring, n: usize },
}

/// An instantiated commutative local ring.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.desc)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.desc.fmt(f)
    }
}

fn check_prime(p: u64) -> Result<()> {
    let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if is_prime {
        Ok(())
    } else {
        Err(Error::InvalidRing(format!("{p} is not prime")))
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
    }
    (old_r == 1).then(|| old_x.rem_euclid(m as i128) as u64)
}

macro_rules! foreign {
    () => {
        panic!("element does not belong to this ring")
    };
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        let kind = match &desc {
            RingDescriptor::ZMod { p, k } => {
                check_prime(*p)?;
                if *k == 0 {
                    return Err(Error::InvalidRing("exponent must be at least 1".into()));
                }
                let modulus = p
                    .checked_pow(*k)
                    .filter(|m| *m <= MAX_MODULUS)
                    .ok_or_else(|| Error::InvalidRing(format!("{p}^{k} is too large")))?;
                Kind::ZMod {
                    p: *p,
                    modulus,
                    k: *k,
                }
            }
            RingDescriptor::LocalizedInt { p } => {
                check_prime(*p)?;
                Kind::Localized { p: BigInt::from(*p) }
            }
            RingDescriptor::Quotient { base, n } => {
                if *n == 0 {
                    return Err(Error::InvalidRing("truncation degree must be at least 1".into()));
                }
                Kind::Quotient {
                    base: Ring::new((**base).clone())?,
                    n: *n,
                }
            }
        };
        Ok(Ring(Arc::new(RingInner { desc, kind })))
    }

    /// `Z/p^k`.
    pub fn zmod(p: u64, k: u32) -> Result<Ring> {
        Ring::new(RingDescriptor::zmod(p, k))
    }

    /// `Z_(p)`.
    pub fn localized(p: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::localized(p))
    }

    /// `self[t]/(t^n)`.
    pub fn truncated(&self, n: usize) -> Result<Ring> {
        Ring::new(RingDescriptor::quotient(self.0.desc.clone(), n))
    }

    /// Parses the ring-spec grammar, e.g. `Z/8`, `F3`, `Zloc(2)[t]/t^2`.
    pub fn parse(spec: &str) -> Result<Ring> {
        Ring::new(crate::parse::parse_ring(spec)?)
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.desc
    }

    pub fn prime(&self) -> u64 {
        self.0.desc.prime()
    }

    /// The coefficient ring of a quotient.
    pub fn base(&self) -> Option<&Ring> {
        match &self.0.kind {
            Kind::Quotient { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Truncation degree `n` of `base[t]/(t^n)`.
    pub fn truncation(&self) -> Option<usize> {
        match &self.0.kind {
            Kind::Quotient { n, .. } => Some(*n),
            _ => None,
        }
    }

    /// Whether the innermost coefficient ring is `Z_(p)`.
    pub fn is_localized_based(&self) -> bool {
        match &self.0.kind {
            Kind::ZMod { .. } => false,
            Kind::Localized { .. } => true,
            Kind::Quotient { base, .. } => base.is_localized_based(),
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            Kind::ZMod { .. } => Elem::Residue(0),
            Kind::Localized { .. } => Elem::Fraction(BigRational::zero()),
            Kind::Quotient { base, n } => Elem::Poly(vec![base.zero(); *n]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, z: i64) -> Elem {
        self.from_bigint(&BigInt::from(z))
    }

    pub fn from_bigint(&self, z: &BigInt) -> Elem {
        match &self.0.kind {
            Kind::ZMod { modulus, .. } => {
                let r = z.mod_floor(&BigInt::from(*modulus));
                Elem::Residue(r.to_u64().expect("reduced residue fits u64"))
            }
            Kind::Localized { .. } => Elem::Fraction(BigRational::from_integer(z.clone())),
            Kind::Quotient { base, .. } => self.constant(base.from_bigint(z)),
        }
    }

    /// Interprets a rational number in this ring; fails when the denominator
    /// is not invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match &self.0.kind {
            Kind::ZMod { .. } => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = self.try_inverse(&den).ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "denominator {} is not invertible in {self}",
                        q.denom()
                    ))
                })?;
                Ok(self.mul(&num, &inv))
            }
            Kind::Localized { p } => {
                if q.denom().is_multiple_of(p) {
                    Err(Error::PreconditionViolated(format!(
                        "denominator {} is divisible by {p}",
                        q.denom()
                    )))
                } else {
                    Ok(Elem::Fraction(q.clone()))
                }
            }
            Kind::Quotient { base, .. } => Ok(self.constant(base.from_rational(q)?)),
        }
    }

    /// Embeds a base value as a constant polynomial. Panics if `self` is not a
    /// quotient ring.
    pub fn constant(&self, c: Elem) -> Elem {
        match &self.0.kind {
            Kind::Quotient { base, n } => {
                let mut cs = vec![base.zero(); *n];
                cs[0] = c;
                Elem::Poly(cs)
            }
            _ => panic!("{self} is not a truncated polynomial ring"),
        }
    }

    /// Builds a polynomial from (at most `n`) base coefficients, padding with
    /// zeros.
    pub fn poly(&self, coeffs: Vec<Elem>) -> Result<Elem> {
        match &self.0.kind {
            Kind::Quotient { base, n } => {
                if coeffs.len() > *n || !coeffs.iter().all(|c| base.contains(c)) {
                    return Err(Error::ContextMismatch);
                }
                let mut cs = coeffs;
                cs.resize(*n, base.zero());
                Ok(Elem::Poly(cs))
            }
            _ => Err(Error::ContextMismatch),
        }
    }

    /// The class of `t`, if this is a quotient ring.
    pub fn variable(&self) -> Option<Elem> {
        match &self.0.kind {
            Kind::Quotient { base, n } => {
                let mut cs = vec![base.zero(); *n];
                if *n > 1 {
                    cs[1] = base.one();
                }
                Some(Elem::Poly(cs))
            }
            _ => None,
        }
    }

    /// Constant coefficient in the base ring (identity on non-quotients).
    pub fn constant_term(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Quotient { .. }, Elem::Poly(cs)) => cs[0].clone(),
            (Kind::Quotient { .. }, _) => foreign!(),
            _ => a.clone(),
        }
    }

    /// Membership test: payload shape and canonical-form check.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(r)) => r < modulus,
            (Kind::Localized { p }, Elem::Fraction(q)) => {
                q.denom().is_positive()
                    && q.numer().gcd(q.denom()).is_one()
                    && !q.denom().is_multiple_of(p)
            }
            (Kind::Quotient { base, n }, Elem::Poly(cs)) => {
                cs.len() == *n && cs.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 + *y as u128) % *modulus as u128) as u64)
            }
            (Kind::Localized { .. }, Elem::Fraction(x), Elem::Fraction(y)) => Elem::Fraction(x + y),
            (Kind::Quotient { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => foreign!(),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(x)) => Elem::Residue((modulus - x) % modulus),
            (Kind::Localized { .. }, Elem::Fraction(x)) => Elem::Fraction(-x),
            (Kind::Quotient { base, .. }, Elem::Poly(x)) => {
                Elem::Poly(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => foreign!(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 * *y as u128) % *modulus as u128) as u64)
            }
            (Kind::Localized { .. }, Elem::Fraction(x), Elem::Fraction(y)) => Elem::Fraction(x * y),
            (Kind::Quotient { base, n }, Elem::Poly(x), Elem::Poly(y)) => {
                let mut out = vec![base.zero(); *n];
                for (i, u) in x.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().take(n - i).enumerate() {
                        out[i + j] = base.add(&out[i + j], &base.mul(u, v));
                    }
                }
                Elem::Poly(out)
            }
            _ => foreign!(),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Residue(r) => *r == 0,
            Elem::Fraction(q) => q.is_zero(),
            Elem::Poly(cs) => match &self.0.kind {
                Kind::Quotient { base, .. } => cs.iter().all(|c| base.is_zero(c)),
                _ => foreign!(),
            },
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (Kind::ZMod { p, .. }, Elem::Residue(r)) => r % p != 0,
            (Kind::Localized { p }, Elem::Fraction(q)) => !q.numer().is_multiple_of(p),
            (Kind::Quotient { base, .. }, Elem::Poly(cs)) => base.is_unit(&cs[0]),
            _ => foreign!(),
        }
    }

    /// Multiplicative inverse; `None` exactly for non-units.
    pub fn try_inverse(&self, a: &Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        match (&self.0.kind, a) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(r)) => {
                inverse_mod(*r, *modulus).map(Elem::Residue)
            }
            (Kind::Localized { .. }, Elem::Fraction(q)) => Some(Elem::Fraction(q.recip())),
            (Kind::Quotient { base, .. }, Elem::Poly(cs)) => {
                // Newton iteration x <- x(2 - ax); t is nilpotent, so the
                // number of correct coefficients doubles every step.
                let mut x = self.constant(base.try_inverse(&cs[0])?);
                let two = self.from_int(2);
                let one = self.one();
                while self.mul(a, &x) != one {
                    x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
                }
                Some(x)
            }
            _ => foreign!(),
        }
    }

    /// Membership in the Jacobson radical, which for a local ring is the set
    /// of non-units.
    pub fn in_jacobson(&self, a: &Elem) -> bool {
        !self.is_unit(a)
    }

    pub fn is_nilpotent(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (Kind::ZMod { p, .. }, Elem::Residue(r)) => r % p == 0,
            (Kind::Localized { .. }, Elem::Fraction(q)) => q.is_zero(),
            (Kind::Quotient { base, .. }, Elem::Poly(cs)) => base.is_nilpotent(&cs[0]),
            _ => foreign!(),
        }
    }

    /// An exponent `m` with `x^m = 0` for every nilpotent `x`. On finite rings
    /// the radical is nil, so this bounds every radical element too.
    pub fn nilpotency_bound(&self) -> u32 {
        match &self.0.kind {
            Kind::ZMod { k, .. } => *k,
            Kind::Localized { .. } => 1,
            Kind::Quotient { base, n } => base.nilpotency_bound() + *n as u32 - 1,
        }
    }

    /// `R / J(R)`, always a prime field.
    pub fn residue_field(&self) -> Ring {
        Ring::new(RingDescriptor::prime_field(self.prime())).expect("prime checked at construction")
    }

    /// Image of `a` in the residue field, as an [`Elem::Residue`] in `[0, p)`.
    pub fn residue(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::ZMod { p, .. }, Elem::Residue(r)) => Elem::Residue(r % p),
            (Kind::Localized { p }, Elem::Fraction(q)) => {
                let pu = p.to_u64().expect("small prime");
                let num = q.numer().mod_floor(p).to_u64().expect("reduced");
                let den = q.denom().mod_floor(p).to_u64().expect("reduced");
                let inv = inverse_mod(den, pu).expect("denominator coprime to p");
                Elem::Residue(((num as u128 * inv as u128) % pu as u128) as u64)
            }
            (Kind::Quotient { base, .. }, Elem::Poly(cs)) => base.residue(&cs[0]),
            _ => foreign!(),
        }
    }

    /// The integer representative of a residue class, seen in this ring.
    pub fn lift_residue(&self, r: &Elem) -> Elem {
        match r {
            Elem::Residue(v) => self.from_int(*v as i64),
            _ => panic!("residues are represented as Elem::Residue"),
        }
    }

    pub fn is_finite(&self) -> bool {
        !self.is_localized_based()
    }

    /// `p^k` for `Z/p^k`, `|base|^n` for finite quotients; `None` for
    /// infinite rings or when the count overflows `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        match &self.0.kind {
            Kind::ZMod { modulus, .. } => Some(*modulus),
            Kind::Localized { .. } => None,
            Kind::Quotient { base, n } => base.cardinality()?.checked_pow(*n as u32),
        }
    }

    /// The `index`-th element in enumeration order: residues ascending, and
    /// for quotients mixed radix with the constant coefficient varying
    /// fastest.
    pub fn element_at(&self, index: u64) -> Elem {
        match &self.0.kind {
            Kind::ZMod { .. } => Elem::Residue(index),
            Kind::Localized { .. } => panic!("{self} is not enumerable"),
            Kind::Quotient { base, n } => {
                let q = base.cardinality().expect("finite base");
                let mut rest = index;
                let cs = (0..*n)
                    .map(|_| {
                        let c = base.element_at(rest % q);
                        rest /= q;
                        c
                    })
                    .collect();
                Elem::Poly(cs)
            }
        }
    }

    /// Inverse of [`Ring::element_at`].
    pub fn index_of(&self, a: &Elem) -> Option<u64> {
        match (&self.0.kind, a) {
            (Kind::ZMod { modulus, .. }, Elem::Residue(r)) if r < modulus => Some(*r),
            (Kind::Quotient { base, n }, Elem::Poly(cs)) if cs.len() == *n => {
                let q = base.cardinality()?;
                cs.iter().rev().try_fold(0u64, |acc, c| Some(acc * q + base.index_of(c)?))
            }
            _ => None,
        }
    }

    /// All elements, each exactly once, in the order of
    /// [`Ring::element_at`].
    pub fn enumerate(&self) -> Result<impl Iterator<Item = Elem> + '_> {
        let total = self
            .cardinality()
            .ok_or_else(|| Error::NotEnumerable(self.to_string()))?;
        Ok((0..total).map(move |i| self.element_at(i)))
    }

    pub fn elements(&self) -> Result<Vec<Elem>> {
        Ok(self.enumerate()?.collect())
    }

    /// A random element: uniform on finite rings, small numerators and
    /// denominators on `Z_(p)`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            Kind::ZMod { modulus, .. } => Elem::Residue(rng.gen_range(0..*modulus)),
            Kind::Localized { p } => {
                let num = rng.gen_range(-LOCAL_SAMPLE_BOUND..=LOCAL_SAMPLE_BOUND);
                let den = loop {
                    let d = rng.gen_range(1..=LOCAL_SAMPLE_BOUND);
                    if !BigInt::from(d).is_multiple_of(p) {
                        break d;
                    }
                };
                Elem::fraction(num, den)
            }
            Kind::Quotient { base, n } => Elem::Poly((0..*n).map(|_| base.random(rng)).collect()),
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            Kind::Quotient { base, n } => {
                let mut cs: Vec<Elem> = (0..*n).map(|_| base.random(rng)).collect();
                cs[0] = base.random_unit(rng);
                Elem::Poly(cs)
            }
            _ => loop {
                let x = self.random(rng);
                if self.is_unit(&x) {
                    break x;
                }
            },
        }
    }

    /// A random element of the Jacobson radical.
    pub fn random_radical<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            Kind::Quotient { base, n } => {
                let mut cs: Vec<Elem> = (0..*n).map(|_| base.random(rng)).collect();
                cs[0] = base.random_radical(rng);
                Elem::Poly(cs)
            }
            _ => {
                let p = self.from_int(self.prime() as i64);
                self.mul(&p, &self.random(rng))
            }
        }
    }
}

/// A value bundled with its ring; binary operations check that both
/// operands live in the same ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Elem,
}

impl RingElement {
    pub fn new(ring: &Ring, value: Elem) -> Result<Self> {
        if ring.contains(&value) {
            Ok(RingElement {
                ring: ring.clone(),
                value,
            })
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn from_int(ring: &Ring, z: i64) -> Self {
        RingElement {
            ring: ring.clone(),
            value: ring.from_int(z),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn binary(&self, other: &Self, op: impl Fn(&Ring, &Elem, &Elem) -> Elem) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(RingElement {
            value: op(&self.ring, &self.value, &other.value),
            ring: self.ring.clone(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, Ring::add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, Ring::sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, Ring::mul)
    }

    pub fn neg(&self) -> Self {
        RingElement {
            value: self.ring.neg(&self.value),
            ring: self.ring.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn in_jacobson(&self) -> bool {
        self.ring.in_jacobson(&self.value)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.ring.is_nilpotent(&self.value)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.ring.try_inverse(&self.value).map(|value| RingElement {
            value,
            ring: self.ring.clone(),
        })
    }

    pub fn residue(&self) -> Self {
        let field = self.ring.residue_field();
        RingElement {
            value: self.ring.residue(&self.value),
            ring: field,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(m: u64) -> Ring {
        let p = (2..=m).find(|d| m.is_multiple_of(*d)).unwrap();
        let k = (1..).find(|k| p.pow(*k) == m).unwrap();
        Ring::zmod(p, k).unwrap()
    }

    fn finite_rings() -> Vec<Ring> {
        vec![
            z(2),
            z(3),
            z(4),
            z(8),
            z(9),
            Ring::zmod(2, 1).unwrap().truncated(2).unwrap(),
            z(4).truncated(2).unwrap(),
            Ring::zmod(3, 1).unwrap().truncated(2).unwrap(),
            z(2).truncated(2).unwrap().truncated(2).unwrap(),
        ]
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Ring::zmod(6, 1).is_err());
        assert!(Ring::zmod(2, 0).is_err());
        assert!(Ring::localized(1).is_err());
        assert!(z(4).truncated(0).is_err());
        assert!(Ring::zmod(2, 63).is_err());
    }

    #[test]
    fn basic_arithmetic() {
        let r = z(8);
        assert_eq!(r.add(&Elem::Residue(6), &Elem::Residue(3)), Elem::Residue(1));

        let zl = Ring::localized(2).unwrap();
        assert_eq!(
            zl.mul(&Elem::fraction(1, 3), &Elem::fraction(3, 5)),
            Elem::fraction(1, 5)
        );

        let q = z(4).truncated(2).unwrap();
        let t = q.variable().unwrap();
        assert_eq!(q.mul(&t, &t), q.zero());
    }

    #[test]
    fn context_mismatch() {
        let a = RingElement::from_int(&z(8), 3);
        let b = RingElement::from_int(&z(9), 3);
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
        assert_eq!(a.try_mul(&a).unwrap().value(), &Elem::Residue(1));
        assert_eq!(RingElement::new(&z(8), Elem::Residue(8)), Err(Error::ContextMismatch));
        assert_eq!(
            RingElement::new(&z(8), Elem::fraction(1, 2)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn unit_predicates() {
        let r = z(8);
        assert!(!r.is_unit(&Elem::Residue(6)));
        assert!(Ring::localized(2).unwrap().is_unit(&Elem::fraction(3, 5)));
        let q = Ring::localized(2).unwrap().truncated(2).unwrap();
        let two_plus_t = q.poly(vec![Elem::fraction(2, 1), Elem::fraction(1, 1)]).unwrap();
        assert!(!q.is_unit(&two_plus_t));

        assert!(z(9).in_jacobson(&Elem::Residue(6)));
        assert!(!Ring::localized(2).unwrap().in_jacobson(&Elem::fraction(3, 5)));
        let q4 = z(4).truncated(2).unwrap();
        assert!(q4.in_jacobson(&q4.variable().unwrap()));
    }

    #[test]
    fn inverses() {
        let r = z(8);
        assert_eq!(r.try_inverse(&Elem::Residue(3)), Some(Elem::Residue(3)));
        assert_eq!(r.try_inverse(&Elem::Residue(6)), None);

        let q = z(8).truncated(2).unwrap();
        let one_plus_t = q.add(&q.one(), &q.variable().unwrap());
        let expected = q.sub(&q.one(), &q.variable().unwrap());
        assert_eq!(q.try_inverse(&one_plus_t), Some(expected));
    }

    #[test]
    fn nilpotence() {
        assert!(z(8).is_nilpotent(&Elem::Residue(2)));
        let zl = Ring::localized(2).unwrap();
        assert!(!zl.is_nilpotent(&zl.from_int(2)));
        let q = zl.truncated(2).unwrap();
        assert!(!q.is_nilpotent(&q.from_int(2)));
        assert!(q.is_nilpotent(&q.variable().unwrap()));
    }

    #[test]
    fn residues() {
        let r = z(8);
        assert_eq!(r.residue(&Elem::Residue(6)), Elem::Residue(0));
        assert_eq!(r.residue_field().descriptor(), &RingDescriptor::prime_field(2));

        let zl = Ring::localized(3).unwrap();
        assert_eq!(zl.residue(&Elem::fraction(1, 2)), Elem::Residue(2));

        let q = z(9).truncated(2).unwrap();
        let e = q.poly(vec![Elem::Residue(4), Elem::Residue(5)]).unwrap();
        assert_eq!(q.residue(&e), Elem::Residue(1));
        assert_eq!(q.residue_field().descriptor(), &RingDescriptor::prime_field(3));
    }

    #[test]
    fn enumeration() {
        let r = z(4);
        assert_eq!(r.cardinality(), Some(4));
        assert_eq!(
            r.elements().unwrap(),
            (0..4).map(Elem::Residue).collect::<Vec<_>>()
        );

        let q = z(2).truncated(2).unwrap();
        let els = q.elements().unwrap();
        let t = q.variable().unwrap();
        assert_eq!(els, vec![q.zero(), q.one(), t.clone(), q.add(&q.one(), &t)]);

        let zl = Ring::localized(2).unwrap();
        assert!(!zl.is_finite());
        assert_eq!(zl.cardinality(), None);
        assert!(matches!(zl.enumerate().err(), Some(Error::NotEnumerable(_))));
    }

    #[test]
    fn enumeration_is_a_bijection() {
        for r in finite_rings() {
            let els = r.elements().unwrap();
            for (i, e) in els.iter().enumerate() {
                assert!(r.contains(e));
                assert_eq!(r.index_of(e), Some(i as u64));
            }
            let mut sorted = els.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), els.len());
        }
    }

    #[test]
    fn exhaustive_ring_laws_on_small_rings() {
        for r in finite_rings().into_iter().filter(|r| r.cardinality().unwrap() <= 9) {
            let els = r.elements().unwrap();
            for a in &els {
                for b in &els {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for c in &els {
                        assert_eq!(r.mul(a, &r.mul(b, c)), r.mul(&r.mul(a, b), c));
                        assert_eq!(r.add(a, &r.add(b, c)), r.add(&r.add(a, b), c));
                        assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
                    }
                }
                assert_eq!(r.add(a, &r.neg(a)), r.zero());
                assert_eq!(r.mul(a, &r.one()), *a);
            }
        }
    }

    #[test]
    fn locality_and_radical_structure() {
        for r in finite_rings() {
            let els = r.elements().unwrap();
            let bound = r.nilpotency_bound() as u64;
            let field = r.residue_field();
            for a in &els {
                assert!(r.is_unit(a) ^ r.in_jacobson(a));
                if r.is_nilpotent(a) {
                    assert!(r.in_jacobson(a));
                }
                if r.in_jacobson(a) {
                    assert!(r.is_zero(&r.pow(a, bound)), "{a} in {r}");
                }
                assert_eq!(field.is_zero(&r.residue(a)), r.in_jacobson(a));
                match r.try_inverse(a) {
                    Some(inv) => {
                        assert!(r.is_unit(a));
                        assert_eq!(r.mul(a, &inv), r.one());
                    }
                    None => assert!(!r.is_unit(a)),
                }
            }
            for a in els.iter().filter(|a| r.in_jacobson(a)) {
                for b in els.iter().filter(|b| r.in_jacobson(b)) {
                    assert!(r.in_jacobson(&r.add(a, b)));
                }
            }
            for a in &els {
                for b in &els {
                    assert_eq!(
                        r.residue(&r.mul(a, b)),
                        field.mul(&r.residue(a), &r.residue(b))
                    );
                    assert_eq!(
                        r.residue(&r.add(a, b)),
                        field.add(&r.residue(a), &r.residue(b))
                    );
                }
            }
        }
    }

    #[test]
    fn randomized_locality_on_infinite_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in [
            Ring::localized(2).unwrap(),
            Ring::localized(3).unwrap(),
            Ring::localized(2).unwrap().truncated(3).unwrap(),
        ] {
            for _ in 0..300 {
                let a = r.random_radical(&mut rng);
                let b = r.random_radical(&mut rng);
                assert!(r.in_jacobson(&a) && r.in_jacobson(&b));
                assert!(r.in_jacobson(&r.add(&a, &b)));
                let u = r.random_unit(&mut rng);
                let inv = r.try_inverse(&u).unwrap();
                assert_eq!(r.mul(&u, &inv), r.one());
                let x = r.random(&mut rng);
                let y = r.random(&mut rng);
                assert_eq!(
                    r.residue(&r.mul(&x, &y)),
                    r.residue_field().mul(&r.residue(&x), &r.residue(&y))
                );
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(RingDescriptor::zmod(2, 3).to_string(), "Z/8");
        assert_eq!(RingDescriptor::prime_field(3).to_string(), "F3");
        let d = RingDescriptor::quotient(RingDescriptor::localized(2), 2);
        assert_eq!(d.to_string(), "Zloc(2)[t]/t^2");
        assert_eq!(Elem::fraction(-2, 4).to_string(), "-1/2");
        assert_eq!(Elem::fraction(6, 3).to_string(), "2");
    }

    #[test]
    fn from_rational_respects_denominators() {
        let r = z(8);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(r.from_rational(&third), Ok(Elem::Residue(3)));
        assert!(r.from_rational(&BigRational::new(1.into(), 2.into())).is_err());
        let zl = Ring::localized(2).unwrap();
        assert!(zl.from_rational(&BigRational::new(1.into(), 4.into())).is_err());
    }
}
