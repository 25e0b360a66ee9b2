//! Sparse multivariate polynomials over exact rationals.
//!
//! The variable universe is `{a[i,j]} ∪ {x1,x2,x3} ∪ {u1,u2,u3}`.  Variables
//! carry a fixed total order (`a[0,0] < a[1,0] < a[0,1] < a[2,0] < ... <
//! x1 < x2 < x3 < u1 < u2 < u3`, the a-block graded by `i+j` with `a[s,0]`
//! first in each grade), monomials are compared lexicographically against
//! that order, and every polynomial is kept normalized (no zero coefficients,
//! no zero exponents), so equality is structural and all renderings are
//! reproducible byte for byte.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar; always reduced, denominator positive.
pub type Rational = BigRational;

/// Renders a rational as `p` or `p/q`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// One of the three variable blocks of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarBlock {
    A,
    X,
    U,
}

impl fmt::Display for VarBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarBlock::A => write!(f, "A"),
            VarBlock::X => write!(f, "X"),
            VarBlock::U => write!(f, "U"),
        }
    }
}

/// A variable of `K[A, X, U]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariableId {
    /// Coefficient variable `a[i,j]` of the ternary form.
    A { i: u32, j: u32 },
    /// Point variable `x1`, `x2` or `x3` (index 1..=3).
    X(u8),
    /// Dual variable `u1`, `u2` or `u3` (index 1..=3).
    U(u8),
}

impl VariableId {
    pub fn a(i: u32, j: u32) -> Self {
        VariableId::A { i, j }
    }

    pub fn x(k: u8) -> Self {
        assert!((1..=3).contains(&k), "x-index must be 1..=3");
        VariableId::X(k)
    }

    pub fn u(k: u8) -> Self {
        assert!((1..=3).contains(&k), "u-index must be 1..=3");
        VariableId::U(k)
    }

    pub fn block(&self) -> VarBlock {
        match self {
            VariableId::A { .. } => VarBlock::A,
            VariableId::X(_) => VarBlock::X,
            VariableId::U(_) => VarBlock::U,
        }
    }

    // Sort key: a-block first, graded by i+j with a[s,0] leading each grade,
    // then x1..x3, then u1..u3.
    fn sort_key(&self) -> (u8, u64, u64) {
        match *self {
            VariableId::A { i, j } => (0, u64::from(i) + u64::from(j), u64::from(j)),
            VariableId::X(k) => (1, u64::from(k), 0),
            VariableId::U(k) => (2, u64::from(k), 0),
        }
    }
}

impl PartialOrd for VariableId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VariableId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VariableId::A { i, j } => write!(f, "a[{i},{j}]"),
            VariableId::X(k) => write!(f, "x{k}"),
            VariableId::U(k) => write!(f, "u{k}"),
        }
    }
}

/// Configuration of the ring: the degree `n ≥ 1` of the ternary form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingConfig {
    n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring degree must be at least 1")]
    ZeroDegree,
    #[error("variable {var} is out of range for degree {n} (requires i+j <= {n})")]
    OutOfRange { var: VariableId, n: u32 },
}

impl RingConfig {
    pub fn new(n: u32) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::ZeroDegree);
        }
        Ok(RingConfig { n })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of a-variables, `(n+1)(n+2)/2`.
    pub fn a_variable_count(&self) -> u64 {
        let n = u64::from(self.n);
        (n + 1) * (n + 2) / 2
    }

    /// All a-variables in the fixed variable order.
    pub fn a_variables(&self) -> Vec<VariableId> {
        let mut vars = Vec::with_capacity(self.a_variable_count() as usize);
        for s in 0..=self.n {
            for j in 0..=s {
                vars.push(VariableId::a(s - j, j));
            }
        }
        vars
    }

    pub fn contains(&self, v: VariableId) -> bool {
        match v {
            VariableId::A { i, j } => i.checked_add(j).is_some_and(|s| s <= self.n),
            VariableId::X(k) | VariableId::U(k) => (1..=3).contains(&k),
        }
    }

    /// Checks that every variable of `p` belongs to this ring.
    pub fn check(&self, p: &Polynomial) -> Result<(), RingError> {
        for (m, _) in p.terms() {
            for (v, _) in m.iter() {
                if !self.contains(v) {
                    return Err(RingError::OutOfRange { var: v, n: self.n });
                }
            }
        }
        Ok(())
    }
}

/// A power product of variables; no zero exponents are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<VariableId, u64>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn variable(v: VariableId) -> Self {
        Monomial::one().with_exponent(v, 1)
    }

    pub fn from_exponents<I: IntoIterator<Item = (VariableId, u64)>>(iter: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in iter {
            let cur = m.exponent(v);
            m = m.with_exponent(v, cur + e);
        }
        m
    }

    /// Returns a copy with the exponent of `v` set to `e` (removing it on 0).
    pub fn with_exponent(&self, v: VariableId, e: u64) -> Self {
        let mut exps = self.exps.clone();
        if e == 0 {
            exps.remove(&v);
        } else {
            exps.insert(v, e);
        }
        Monomial { exps }
    }

    pub fn exponent(&self, v: VariableId) -> u64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Variables with their (positive) exponents, in the fixed variable order.
    pub fn iter(&self) -> impl Iterator<Item = (VariableId, u64)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in other.iter() {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.values().sum()
    }

    pub fn degree_in(&self, block: VarBlock) -> u64 {
        self.iter()
            .filter(|(v, _)| v.block() == block)
            .map(|(_, e)| e)
            .sum()
    }

    /// Splits into the a-part and the x/u-part.
    pub fn split_xu(&self) -> (Monomial, Monomial) {
        let mut a = Monomial::one();
        let mut xu = Monomial::one();
        for (v, e) in self.iter() {
            match v.block() {
                VarBlock::A => a.exps.insert(v, e),
                _ => xu.exps.insert(v, e),
            };
        }
        (a, xu)
    }

    pub fn is_xu_only(&self) -> bool {
        self.iter().all(|(v, _)| v.block() != VarBlock::A)
    }

    pub fn is_a_only(&self) -> bool {
        self.iter().all(|(v, _)| v.block() == VarBlock::A)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Lexicographic against the fixed variable order: at the first variable where
// the exponents differ, the larger exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut lhs = self.exps.iter();
        let mut rhs = other.exps.iter();
        loop {
            match (lhs.next(), rhs.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((v1, e1)), Some((v2, e2))) => match v1.cmp(v2) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match e1.cmp(e2) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// The separate homogeneity degrees of a polynomial in A, X and U.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Degree (in the a-variables).
    pub degree: u64,
    /// Order (in the x-variables).
    pub order: u64,
    /// Class (in the u-variables).
    pub class: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not homogeneous in {block}: found degrees {found} and {expected}")]
pub struct HomogeneityError {
    pub block: VarBlock,
    pub expected: u64,
    pub found: u64,
}

/// A sparse polynomial with exact rational coefficients; no zero
/// coefficients are stored, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_integer(k: i64) -> Self {
        Polynomial::constant(Rational::from(BigInt::from(k)))
    }

    pub fn variable(v: VariableId) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::variable(v), Rational::one());
        p
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Adds `c · m`, keeping the normal form (zero coefficients dropped).
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { terms }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Polynomial { terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: VariableId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(v, e - 1),
                c * Rational::from(BigInt::from(e)),
            );
        }
        out
    }

    /// Largest degree in `block` over all monomials (0 for the zero polynomial).
    pub fn max_degree_in(&self, block: VarBlock) -> u64 {
        self.terms
            .keys()
            .map(|m| m.degree_in(block))
            .max()
            .unwrap_or(0)
    }

    pub fn is_a_only(&self) -> bool {
        self.terms.keys().all(|m| m.is_a_only())
    }

    /// The polynomial in a-variables multiplying exactly the x/u-monomial
    /// `xu`.  `xu` must contain no a-variables.
    pub fn extract_xu_coefficient(&self, xu: &Monomial) -> Polynomial {
        assert!(
            xu.is_xu_only(),
            "coefficient extraction needs an x/u monomial"
        );
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let (a, m_xu) = m.split_xu();
            if m_xu == *xu {
                out.add_term(a, c.clone());
            }
        }
        out
    }

    /// Groups the polynomial by its x/u-monomials; summing
    /// `coefficient · xu` over the entries reproduces the polynomial.
    pub fn xu_decomposition(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in self.terms() {
            let (a, xu) = m.split_xu();
            out.entry(xu).or_default().add_term(a, c.clone());
        }
        out
    }

    /// All distinct x/u-monomials occurring in the polynomial.
    pub fn xu_monomials(&self) -> BTreeSet<Monomial> {
        self.terms.keys().map(|m| m.split_xu().1).collect()
    }

    /// Checks homogeneity separately in A, X and U and returns the triple
    /// (degree, order, class); the first violated grading is reported.
    pub fn degree_profile(&self) -> Result<DegreeProfile, HomogeneityError> {
        let mut degs = [0u64; 3];
        for (idx, block) in [VarBlock::A, VarBlock::X, VarBlock::U]
            .into_iter()
            .enumerate()
        {
            let mut expected: Option<u64> = None;
            for m in self.terms.keys() {
                let d = m.degree_in(block);
                match expected {
                    None => expected = Some(d),
                    Some(e) if e != d => {
                        return Err(HomogeneityError {
                            block,
                            expected: e,
                            found: d,
                        })
                    }
                    Some(_) => {}
                }
            }
            degs[idx] = expected.unwrap_or(0);
        }
        Ok(DegreeProfile {
            degree: degs[0],
            order: degs[1],
            class: degs[2],
        })
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32, j: u32) -> Polynomial {
        Polynomial::variable(VariableId::a(i, j))
    }

    fn x(k: u8) -> Polynomial {
        Polynomial::variable(VariableId::x(k))
    }

    fn u(k: u8) -> Polynomial {
        Polynomial::variable(VariableId::u(k))
    }

    #[test]
    fn variable_order_follows_the_graded_chain() {
        let ring = RingConfig::new(3).unwrap();
        let vars = ring.a_variables();
        assert_eq!(vars.len(), 10);
        assert_eq!(vars[0], VariableId::a(0, 0));
        assert_eq!(vars[1], VariableId::a(1, 0));
        assert_eq!(vars[2], VariableId::a(0, 1));
        assert_eq!(vars[3], VariableId::a(2, 0));
        assert_eq!(vars[4], VariableId::a(1, 1));
        assert_eq!(vars[5], VariableId::a(0, 2));
        assert_eq!(vars[9], VariableId::a(0, 3));
        assert!(VariableId::a(0, 3) < VariableId::x(1));
        assert!(VariableId::x(3) < VariableId::u(1));
    }

    #[test]
    fn ring_config_counts_and_checks() {
        assert!(RingConfig::new(0).is_err());
        let ring = RingConfig::new(4).unwrap();
        assert_eq!(ring.a_variable_count(), 15);
        assert!(ring.contains(VariableId::a(2, 2)));
        assert!(!ring.contains(VariableId::a(2, 3)));
        let p = a(2, 3);
        assert!(matches!(ring.check(&p), Err(RingError::OutOfRange { .. })));
    }

    #[test]
    fn difference_of_squares() {
        let p = (&(&x(1) + &x(2)) * &(&x(1) - &x(2))).clone();
        let expected = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &(&a(0, 0) * &a(2, 0)) - &(&a(1, 0) * &a(1, 0));
        let cancelled = &p + &p.scale(&Rational::from(BigInt::from(-1)));
        assert!(cancelled.is_zero());
    }

    #[test]
    fn universal_covariant_square_has_six_terms() {
        // (x1 u1 + x2 u2 + x3 u3)^2: three squares plus three cross terms.
        let p = &(&x(1) * &u(1)) + &(&(&x(2) * &u(2)) + &(&x(3) * &u(3)));
        assert_eq!(p.pow(2).num_terms(), 6);
    }

    #[test]
    fn extract_xu_coefficient_picks_the_block() {
        // (a00 a20 - a10^2) x1^2 u3^2 + (a30 a00 - a10 a20) x1 x2 u3^2
        let c1 = &(&a(0, 0) * &a(2, 0)) - &(&a(1, 0) * &a(1, 0));
        let c2 = &(&a(3, 0) * &a(0, 0)) - &(&a(1, 0) * &a(2, 0));
        let m1 = Monomial::from_exponents([(VariableId::x(1), 2), (VariableId::u(3), 2)]);
        let m2 = Monomial::from_exponents([
            (VariableId::x(1), 1),
            (VariableId::x(2), 1),
            (VariableId::u(3), 2),
        ]);
        let p = &c1.mul(&Polynomial::term(m1.clone(), Rational::one()))
            + &c2.mul(&Polynomial::term(m2.clone(), Rational::one()));
        assert_eq!(p.extract_xu_coefficient(&m1), c1);
        assert_eq!(p.extract_xu_coefficient(&m2), c2);
        let absent = Monomial::from_exponents([(VariableId::u(1), 2)]);
        assert!(p.extract_xu_coefficient(&absent).is_zero());
    }

    #[test]
    fn extract_at_empty_monomial_returns_pure_a_polynomial() {
        let p = &(&a(0, 0) * &a(2, 0)) - &(&a(1, 0) * &a(1, 0));
        assert_eq!(p.extract_xu_coefficient(&Monomial::one()), p);
    }

    #[test]
    fn degree_profile_reports_first_violated_grading() {
        let p = &x(1) + &a(0, 0);
        let err = p.degree_profile().unwrap_err();
        assert_eq!(err.block, VarBlock::A);

        let univ = &(&x(1) * &u(1)) + &(&(&x(2) * &u(2)) + &(&x(3) * &u(3)));
        let profile = univ.degree_profile().unwrap();
        assert_eq!((profile.degree, profile.order, profile.class), (0, 1, 1));
    }

    #[test]
    fn partial_derivative_basics() {
        let p = x(1).pow(3);
        let d = p.partial_derivative(VariableId::x(1));
        assert_eq!(d, x(1).pow(2).scale(&Rational::from(BigInt::from(3))));
        assert!(p.partial_derivative(VariableId::x(2)).is_zero());
    }

    #[test]
    fn monomial_order_puts_leading_variables_first() {
        let m1 = Monomial::from_exponents([(VariableId::a(0, 0), 1), (VariableId::a(2, 0), 1)]);
        let m2 = Monomial::from_exponents([(VariableId::a(1, 0), 2)]);
        assert!(m1 > m2);
    }
}
