//! Roots of `x^2 - mu x + lambda` over the supported local rings.
//!
//! Four routes are provided and cross-checked against each other:
//!
//! * [`solve_brute`] enumerates a finite ring;
//! * [`newton_lift`] refines a simple residue root, terminating exactly
//!   because the radical of a finite local ring is nilpotent;
//! * [`series_lift`] solves `base[t]/(t^n)` one t-adic coefficient at a time;
//! * [`solve_rational`] decides `Z_(p)` by the rational root theorem, with
//!   [`discriminant_roots`] as an independent exact check.
//!
//! [`solve_split`] is the entry point used by the quasipolarity decision:
//! it covers exactly the regime `mu` unit, `lambda` in the radical, where one
//! root is a unit and the other lies in the radical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::localring::{Elem, Ring};

/// `x^2 - mu x + lambda = 0` over `ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticProblem {
    ring: Ring,
    mu: Elem,
    lambda: Elem,
}

impl QuadraticProblem {
    pub fn new(ring: &Ring, mu: Elem, lambda: Elem) -> Result<Self> {
        if !ring.contains(&mu) || !ring.contains(&lambda) {
            return Err(Error::ContextMismatch);
        }
        Ok(QuadraticProblem {
            ring: ring.clone(),
            mu,
            lambda,
        })
    }

    pub fn from_ints(ring: &Ring, mu: i64, lambda: i64) -> Self {
        QuadraticProblem {
            ring: ring.clone(),
            mu: ring.from_int(mu),
            lambda: ring.from_int(lambda),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn mu(&self) -> &Elem {
        &self.mu
    }

    pub fn lambda(&self) -> &Elem {
        &self.lambda
    }

    /// `t^2 - mu t + lambda`.
    pub fn eval(&self, t: &Elem) -> Elem {
        let r = &self.ring;
        r.add(&r.mul(t, &r.sub(t, &self.mu)), &self.lambda)
    }

    /// `2t - mu`.
    pub fn derivative(&self, t: &Elem) -> Elem {
        let r = &self.ring;
        r.sub(&r.add(t, t), &self.mu)
    }

    pub fn is_root(&self, t: &Elem) -> bool {
        self.ring.is_zero(&self.eval(t))
    }

    /// Whether the problem lies in the regime handled by [`solve_split`].
    pub fn is_split_regime(&self) -> bool {
        self.ring.is_unit(&self.mu) && self.ring.in_jacobson(&self.lambda)
    }

    /// The constant-coefficient problem over the base of a quotient ring.
    pub fn constant_part(&self) -> Option<QuadraticProblem> {
        let base = self.ring.base()?;
        Some(QuadraticProblem {
            ring: base.clone(),
            mu: self.ring.constant_term(&self.mu),
            lambda: self.ring.constant_term(&self.lambda),
        })
    }

    /// The problem reduced to the residue field.
    pub fn residue_problem(&self) -> QuadraticProblem {
        QuadraticProblem {
            ring: self.ring.residue_field(),
            mu: self.ring.residue(&self.mu),
            lambda: self.ring.residue(&self.lambda),
        }
    }
}

/// One root in the radical and one unit root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootPair {
    pub root_j: Elem,
    pub root_u: Elem,
}

/// Why a split-regime problem has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unsolvable {
    /// The reduced equation has no root in the residue field.
    ResidueUnsolvable,
    /// No rational candidate allowed by the rational root theorem is a root.
    RationalRootExhausted,
}

impl Unsolvable {
    pub fn as_str(self) -> &'static str {
        match self {
            Unsolvable::ResidueUnsolvable => "residue-unsolvable",
            Unsolvable::RationalRootExhausted => "rational-root-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(RootPair),
    Unsolvable(Unsolvable),
}

impl SplitOutcome {
    pub fn roots(&self) -> Option<&RootPair> {
        match self {
            SplitOutcome::Split(pair) => Some(pair),
            SplitOutcome::Unsolvable(_) => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, SplitOutcome::Split(_))
    }
}

/// Every root, by enumeration, in the ring's enumeration order.
pub fn solve_brute(problem: &QuadraticProblem) -> Result<Vec<Elem>> {
    Ok(problem
        .ring
        .enumerate()?
        .filter(|t| problem.is_root(t))
        .collect())
}

/// Refines `start` by `t <- t - f(t) / f'(t)` until `f(t) = 0`.
///
/// Succeeds whenever `f(start)` is nilpotent and `f'(start)` is a unit, which
/// on finite rings means: `start` reduces to a simple residue root.
pub fn newton_lift(problem: &QuadraticProblem, start: &Elem) -> Result<Elem> {
    let r = &problem.ring;
    // Correct precision at least doubles each step.
    let max_steps = 2 * (64 - (r.nilpotency_bound() as u64).leading_zeros()) + 4;
    let mut t = start.clone();
    for _ in 0..max_steps {
        let f = problem.eval(&t);
        if r.is_zero(&f) {
            return Ok(t);
        }
        let inv = r
            .try_inverse(&problem.derivative(&t))
            .ok_or_else(|| Error::NotLiftable(t.to_string()))?;
        t = r.sub(&t, &r.mul(&f, &inv));
    }
    Err(Error::NotLiftable(format!(
        "{start} (Newton iteration did not terminate, f(start) is not nilpotent)"
    )))
}

/// Roots of the reduced equation in the residue field `F_p`.
pub fn residue_roots(problem: &QuadraticProblem) -> Vec<Elem> {
    solve_brute(&problem.residue_problem()).expect("residue fields are finite")
}

fn check_pair(problem: &QuadraticProblem, pair: &RootPair) {
    let r = &problem.ring;
    assert!(problem.is_root(&pair.root_j), "root {} fails substitution", pair.root_j);
    assert!(problem.is_root(&pair.root_u), "root {} fails substitution", pair.root_u);
    assert!(r.in_jacobson(&pair.root_j) && r.is_unit(&pair.root_u));
    assert_eq!(r.add(&pair.root_j, &pair.root_u), problem.mu);
    assert_eq!(r.mul(&pair.root_j, &pair.root_u), problem.lambda);
}

/// Solves a problem with `mu` a unit and `lambda` in the radical.
///
/// In that regime the residue equation is `t(t - mu)` with two distinct
/// roots, so any solution comes as one radical root and one unit root.
pub fn solve_split(problem: &QuadraticProblem) -> Result<SplitOutcome> {
    let r = &problem.ring;
    if !r.is_unit(&problem.mu) {
        return Err(Error::PreconditionViolated(format!(
            "mu = {} is not a unit",
            problem.mu
        )));
    }
    if !r.in_jacobson(&problem.lambda) {
        return Err(Error::PreconditionViolated(format!(
            "lambda = {} is a unit",
            problem.lambda
        )));
    }
    let outcome = if let Some(base_problem) = problem.constant_part() {
        match solve_split(&base_problem)? {
            SplitOutcome::Split(base) => SplitOutcome::Split(RootPair {
                root_j: series_lift(&base.root_j, problem)?,
                root_u: series_lift(&base.root_u, problem)?,
            }),
            unsolvable => unsolvable,
        }
    } else if r.is_finite() {
        let residue_mu = r.residue(&problem.mu);
        SplitOutcome::Split(RootPair {
            root_j: newton_lift(problem, &r.zero())?,
            root_u: newton_lift(problem, &r.lift_residue(&residue_mu))?,
        })
    } else {
        let roots = solve_rational(problem)?;
        let root_j = roots.iter().find(|t| r.in_jacobson(t));
        let root_u = roots.iter().find(|t| r.is_unit(t));
        match (root_j, root_u) {
            (Some(j), Some(u)) => SplitOutcome::Split(RootPair {
                root_j: j.clone(),
                root_u: u.clone(),
            }),
            _ => SplitOutcome::Unsolvable(Unsolvable::RationalRootExhausted),
        }
    };
    if let SplitOutcome::Split(pair) = &outcome {
        check_pair(problem, pair);
    }
    Ok(outcome)
}

/// Lifts a root of the constant-coefficient equation to `base[t]/(t^n)`.
///
/// Writing the root as `b = sum b_i t^i`, the coefficient of `t^m` in
/// `b^2 - mu b + lambda` is
/// `b_m (2 b_0 - mu_0) + sum_{0<i<m} b_i b_{m-i} - sum_{0<i<=m} mu_i b_{m-i} + lambda_m`,
/// which determines `b_m` as long as `2 b_0 - mu_0` is a unit.
pub fn series_lift(base_root: &Elem, problem: &QuadraticProblem) -> Result<Elem> {
    let ring = &problem.ring;
    let base = ring.base().ok_or_else(|| {
        Error::PreconditionViolated(format!("{ring} is not a truncated polynomial ring"))
    })?;
    let base_problem = problem.constant_part().expect("quotient ring");
    if !base.contains(base_root) || !base_problem.is_root(base_root) {
        return Err(Error::PreconditionViolated(format!(
            "{base_root} does not solve the constant-coefficient equation"
        )));
    }
    let divisor = base_problem.derivative(base_root);
    let inv = base
        .try_inverse(&divisor)
        .ok_or_else(|| Error::NotLiftable(base_root.to_string()))?;
    let (Elem::Poly(mu), Elem::Poly(lambda)) = (&problem.mu, &problem.lambda) else {
        unreachable!("quotient elements are coefficient vectors")
    };
    let n = mu.len();
    let mut b = Vec::with_capacity(n);
    b.push(base_root.clone());
    for m in 1..n {
        let mut acc = lambda[m].clone();
        for i in 1..=m {
            acc = base.sub(&acc, &base.mul(&mu[i], &b[m - i]));
        }
        for i in 1..m {
            acc = base.add(&acc, &base.mul(&b[i], &b[m - i]));
        }
        b.push(base.neg(&base.mul(&acc, &inv)));
    }
    let root = Elem::Poly(b);
    assert!(problem.is_root(&root), "series lift produced a non-root");
    Ok(root)
}

fn to_fraction<'a>(ring: &Ring, e: &'a Elem) -> Result<&'a BigRational> {
    match e {
        Elem::Fraction(q) if ring.base().is_none() && !ring.is_finite() => Ok(q),
        _ => Err(Error::PreconditionViolated(format!(
            "rational roots are only decided over Z_(p), not {ring}"
        ))),
    }
}

/// Trial division bound for the candidate enumeration; larger constants are
/// handled by the discriminant route.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Integer quadratic `a t^2 + b t + c` with `a > 0`, obtained by clearing the
/// denominators of `mu` and `lambda`.
fn integer_coefficients(mu: &BigRational, lambda: &BigRational) -> (BigInt, BigInt, BigInt) {
    let l = mu.denom().lcm(lambda.denom());
    let scale = BigRational::from_integer(l.clone());
    let b = -(mu * &scale).to_integer();
    let c = (lambda * &scale).to_integer();
    (l, b, c)
}

/// Roots in `Z_(p)` by the rational root theorem: clear denominators to
/// `a t^2 + b t + c` and test every `r/q` with `q | a` and `r | c`.
pub fn solve_rational(problem: &QuadraticProblem) -> Result<Vec<Elem>> {
    let ring = &problem.ring;
    let mu = to_fraction(ring, &problem.mu)?;
    let lambda = to_fraction(ring, &problem.lambda)?;
    let (a, b, c) = integer_coefficients(mu, lambda);
    let mut roots: Vec<BigRational> = if c.is_zero() {
        vec![BigRational::zero(), BigRational::new(-b, a)]
    } else {
        let (a_small, c_small) = (a.to_u64(), c.abs().to_u64());
        match (a_small, c_small) {
            (Some(a_u), Some(c_u)) if a_u <= TRIAL_DIVISION_LIMIT && c_u <= TRIAL_DIVISION_LIMIT => {
                let qs = positive_divisors(a_u);
                let rs = positive_divisors(c_u);
                let mut found = Vec::new();
                for q in &qs {
                    let q = BigInt::from(*q);
                    for r in &rs {
                        for r in [BigInt::from(*r), -BigInt::from(*r)] {
                            if (&a * &r * &r + &b * &r * &q + &c * &q * &q).is_zero() {
                                found.push(BigRational::new(r, q.clone()));
                            }
                        }
                    }
                }
                found
            }
            _ => rational_discriminant_roots(mu, lambda),
        }
    };
    roots.sort();
    roots.dedup();
    Ok(roots
        .into_iter()
        .filter_map(|q| ring.from_rational(&q).ok())
        .collect())
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_discriminant_roots(mu: &BigRational, lambda: &BigRational) -> Vec<BigRational> {
    let four = BigRational::from_integer(4.into());
    let disc = mu * mu - &four * lambda;
    let (Some(num), Some(den)) = (exact_sqrt(disc.numer()), exact_sqrt(disc.denom())) else {
        return Vec::new();
    };
    let root = BigRational::new(num, den);
    let two = BigRational::from_integer(2.into());
    let mut out = vec![(mu - &root) / &two, (mu + &root) / &two];
    out.sort();
    out.dedup();
    out
}

/// Roots in `Z_(p)` from the square root of the discriminant
/// `mu^2 - 4 lambda`; an exact decision independent of
/// [`solve_rational`]'s divisor search.
pub fn discriminant_roots(problem: &QuadraticProblem) -> Result<Vec<Elem>> {
    let ring = &problem.ring;
    let mu = to_fraction(ring, &problem.mu)?;
    let lambda = to_fraction(ring, &problem.lambda)?;
    Ok(rational_discriminant_roots(mu, lambda)
        .into_iter()
        .filter_map(|q| ring.from_rational(&q).ok())
        .collect())
}

/// All roots that can be produced exactly: enumeration on finite rings,
/// rational roots on `Z_(p)`, and series lifts of every base root on
/// `Z_(p)`-based quotients. Base roots that are double roots (and hence not
/// liftable coefficientwise) are reported in the error list.
pub fn solve_exact(problem: &QuadraticProblem) -> Result<(Vec<Elem>, Vec<Error>)> {
    let ring = &problem.ring;
    if ring.is_finite() && ring.cardinality().is_some() {
        return Ok((solve_brute(problem)?, Vec::new()));
    }
    match problem.constant_part() {
        None => Ok((solve_rational(problem)?, Vec::new())),
        Some(base_problem) => {
            let (base_roots, mut errors) = solve_exact(&base_problem)?;
            let mut roots = Vec::new();
            for b0 in &base_roots {
                match series_lift(b0, problem) {
                    Ok(root) => roots.push(root),
                    Err(e) => errors.push(e),
                }
            }
            Ok((roots, errors))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(p: u64, k: u32) -> Ring {
        Ring::zmod(p, k).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let sol = |r: &Ring, mu, lambda| solve_brute(&QuadraticProblem::from_ints(r, mu, lambda)).unwrap();
        assert_eq!(sol(&z(2, 3), 1, 2), vec![Elem::Residue(3), Elem::Residue(6)]);
        assert_eq!(sol(&z(2, 2), 0, 0), vec![Elem::Residue(0), Elem::Residue(2)]);
        // x^2 - x + 1 = (x + 1)^2 over F_3: a double root at 2.
        assert_eq!(sol(&z(3, 1), 1, 1), vec![Elem::Residue(2)]);
        assert_eq!(sol(&z(3, 1), 0, 1), vec![]);
        assert!(matches!(
            solve_brute(&QuadraticProblem::from_ints(&Ring::localized(2).unwrap(), 1, 2)),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn split_over_z8() {
        let p = QuadraticProblem::from_ints(&z(2, 3), 1, 2);
        let pair = solve_split(&p).unwrap();
        assert_eq!(
            pair,
            SplitOutcome::Split(RootPair {
                root_j: Elem::Residue(6),
                root_u: Elem::Residue(3)
            })
        );
    }

    #[test]
    fn split_preconditions() {
        let r = z(2, 3);
        assert!(matches!(
            solve_split(&QuadraticProblem::from_ints(&r, 2, 2)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            solve_split(&QuadraticProblem::from_ints(&r, 1, 3)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn split_over_localized_and_quotients() {
        let zl = Ring::localized(2).unwrap();
        assert_eq!(
            solve_split(&QuadraticProblem::from_ints(&zl, 1, 2)).unwrap(),
            SplitOutcome::Unsolvable(Unsolvable::RationalRootExhausted)
        );

        // t^2 - t - 2 - t*x over Zloc(2)[t]/t^2: base roots 2 and -1.
        let q = zl.truncated(2).unwrap();
        let lambda = q.poly(vec![zl.from_int(-2), zl.from_int(-1)]).unwrap();
        let p = QuadraticProblem::new(&q, q.one(), lambda).unwrap();
        let SplitOutcome::Split(pair) = solve_split(&p).unwrap() else {
            panic!("solvable")
        };
        assert_eq!(pair.root_j, q.poly(vec![zl.from_int(2), Elem::fraction(1, 3)]).unwrap());
        assert!(p.is_root(&pair.root_u));

        // Unsolvable base propagates through the quotient.
        let q_bad = QuadraticProblem::new(&q, q.one(), q.from_int(2)).unwrap();
        assert_eq!(
            solve_split(&q_bad).unwrap(),
            SplitOutcome::Unsolvable(Unsolvable::RationalRootExhausted)
        );
    }

    #[test]
    fn series_lift_examples() {
        let zl = Ring::localized(2).unwrap();
        let q1 = zl.truncated(1).unwrap();
        let p1 = QuadraticProblem::new(&q1, q1.one(), q1.from_int(-2)).unwrap();
        assert_eq!(series_lift(&zl.from_int(2), &p1).unwrap(), q1.from_int(2));

        let base = z(2, 3);
        let q = base.truncated(2).unwrap();
        let lambda = q.poly(vec![Elem::Residue(2), Elem::Residue(4)]).unwrap();
        let p = QuadraticProblem::new(&q, q.one(), lambda).unwrap();
        let root = series_lift(&Elem::Residue(6), &p).unwrap();
        assert_eq!(root, q.poly(vec![Elem::Residue(6), Elem::Residue(4)]).unwrap());

        assert!(matches!(
            series_lift(&Elem::Residue(1), &p),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn series_lift_rejects_double_roots() {
        // x^2 over Z/4[t]/t^2: base root 0 has derivative 0.
        let q = z(2, 2).truncated(2).unwrap();
        let p = QuadraticProblem::new(&q, q.zero(), q.zero()).unwrap();
        assert!(matches!(series_lift(&Elem::Residue(0), &p), Err(Error::NotLiftable(_))));
    }

    #[test]
    fn rational_examples() {
        let zl = Ring::localized(2).unwrap();
        let sol = |mu, lambda| solve_rational(&QuadraticProblem::from_ints(&zl, mu, lambda)).unwrap();
        assert_eq!(sol(1, 2), vec![]);
        assert_eq!(sol(1, 0), vec![zl.from_int(0), zl.from_int(1)]);
        assert_eq!(sol(3, 2), vec![zl.from_int(1), zl.from_int(2)]);
        // 2x^2 - 3x + 1, cleared from x^2 - 3/2 x + 1/2 over Z_(3).
        let z3 = Ring::localized(3).unwrap();
        let p = QuadraticProblem::new(&z3, Elem::fraction(3, 2), Elem::fraction(1, 2)).unwrap();
        assert_eq!(solve_rational(&p).unwrap(), vec![Elem::fraction(1, 2), z3.from_int(1)]);
        assert!(solve_rational(&QuadraticProblem::from_ints(&z(2, 3), 1, 2)).is_err());
    }

    #[test]
    fn rational_roots_with_denominators() {
        let zl = Ring::localized(3).unwrap();
        // (x - 1/2)(x - 2/5) = x^2 - 9/10 x + 1/5
        let p = QuadraticProblem::new(&zl, Elem::fraction(9, 10), Elem::fraction(1, 5)).unwrap();
        assert_eq!(
            solve_rational(&p).unwrap(),
            vec![Elem::fraction(2, 5), Elem::fraction(1, 2)]
        );
    }

    #[test]
    fn large_constants_use_the_discriminant() {
        let zl = Ring::localized(2).unwrap();
        // (x - 1)(x - 2^50 * 3)
        let big = 3i64 << 50;
        let p = QuadraticProblem::from_ints(&zl, big + 1, big);
        assert_eq!(solve_rational(&p).unwrap(), vec![zl.from_int(1), zl.from_int(big)]);
    }

    /// Divisor search and discriminant agree on a grid of small rationals.
    #[test]
    fn rational_routes_agree() {
        let zl = Ring::localized(2).unwrap();
        let vals: Vec<Elem> = (-6..=6)
            .flat_map(|n| [1, 3, 5].map(|d| Elem::fraction(n, d)))
            .collect();
        for mu in &vals {
            for lambda in &vals {
                let p = QuadraticProblem::new(&zl, mu.clone(), lambda.clone()).unwrap();
                let mut a = solve_rational(&p).unwrap();
                let mut b = discriminant_roots(&p).unwrap();
                a.sort();
                b.sort();
                assert_eq!(a, b, "mu={mu} lambda={lambda}");
                for t in &a {
                    assert!(p.is_root(t));
                }
            }
        }
    }

    fn small_finite_rings() -> Vec<Ring> {
        vec![
            z(2, 1),
            z(3, 1),
            z(2, 2),
            z(2, 3),
            z(3, 2),
            z(2, 1).truncated(2).unwrap(),
            z(3, 1).truncated(2).unwrap(),
        ]
    }

    #[test]
    fn split_matches_brute_force_on_small_rings() {
        for r in small_finite_rings() {
            let els = r.elements().unwrap();
            for mu in els.iter().filter(|e| r.is_unit(e)) {
                for lambda in els.iter().filter(|e| r.in_jacobson(e)) {
                    let p = QuadraticProblem::new(&r, mu.clone(), lambda.clone()).unwrap();
                    let brute = solve_brute(&p).unwrap();
                    match solve_split(&p).unwrap() {
                        SplitOutcome::Split(pair) => {
                            assert!(brute.contains(&pair.root_j));
                            assert!(brute.contains(&pair.root_u));
                        }
                        SplitOutcome::Unsolvable(_) => {
                            panic!("split regime over finite {r} must be solvable")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn series_and_newton_agree_over_z4_t2() {
        let q = z(2, 2).truncated(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        let mut checked = 0;
        while checked < 200 {
            let mu = q.random_unit(&mut rng);
            let lambda = q.random_radical(&mut rng);
            let p = QuadraticProblem::new(&q, mu, lambda).unwrap();
            let base = p.constant_part().unwrap();
            let SplitOutcome::Split(base_pair) = solve_split(&base).unwrap() else {
                unreachable!()
            };
            for b0 in [&base_pair.root_j, &base_pair.root_u] {
                let by_series = series_lift(b0, &p).unwrap();
                let start = q.lift_residue(&q.base().unwrap().residue(b0));
                let by_newton = newton_lift(&p, &start).unwrap();
                assert_eq!(by_series, by_newton);
            }
            checked += 1;
        }
    }

    #[test]
    fn solve_exact_on_quotients() {
        let zl = Ring::localized(2).unwrap();
        let q = zl.truncated(2).unwrap();
        let p = QuadraticProblem::new(&q, q.from_int(3), q.from_int(2)).unwrap();
        let (roots, errors) = solve_exact(&p).unwrap();
        assert_eq!(roots, vec![q.from_int(1), q.from_int(2)]);
        assert!(errors.is_empty());

        let p = QuadraticProblem::new(&q, q.zero(), q.zero()).unwrap();
        let (roots, errors) = solve_exact(&p).unwrap();
        assert!(roots.is_empty());
        assert_eq!(errors.len(), 1);
    }
}
