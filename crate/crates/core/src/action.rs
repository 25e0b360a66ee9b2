//! The nine sl3 generator derivations on `K[A, X, U]`.
//!
//! `D1, D2, D3` realize the raising matrix units `E12, E23, E13`, the hatted
//! `Dh1, Dh2, Dh3` realize the lowering units `E21, E32, E31`, and `E1, E2,
//! E3` realize the diagonal elements `E11-E22`, `E22-E33`, `E11-E33`.  On the
//! coefficient variables the action is
//!
//! ```text
//! D1(a[i,j])  = i a[i-1,j]          D2(a[i,j])  = j a[i+1,j-1]
//! D3(a[i,j])  = j a[i,j-1]          Dh1(a[i,j]) = (n-(i+j)) a[i+1,j]
//! Dh2(a[i,j]) = i a[i-1,j+1]        Dh3(a[i,j]) = (n-(i+j)) a[i,j+1]
//! E1(a[i,j])  = (n-(2i+j)) a[i,j]   E2(a[i,j])  = (i-j) a[i,j]
//! E3(a[i,j])  = (n-(i+2j)) a[i,j]
//! ```
//!
//! on the point variables it is `D1 = -x2 d/dx1` and so on, and on the dual
//! variables it is the contragredient of the x-action, fixed by requiring
//! that every generator annihilate `x1 u1 + x2 u2 + x3 u3`.  Each generator
//! extends to the whole ring by linearity and the Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::{Monomial, Polynomial, Rational, RingConfig, VarBlock, VariableId};

/// One of the nine sl3 generator derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    D1,
    D2,
    D3,
    Dh1,
    Dh2,
    Dh3,
    E1,
    E2,
    E3,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::D1,
        Generator::D2,
        Generator::D3,
        Generator::Dh1,
        Generator::Dh2,
        Generator::Dh3,
        Generator::E1,
        Generator::E2,
        Generator::E3,
    ];

    /// The six raising and lowering generators (everything but E1, E2, E3).
    pub const NON_DIAGONAL: [Generator; 6] = [
        Generator::D1,
        Generator::D2,
        Generator::D3,
        Generator::Dh1,
        Generator::Dh2,
        Generator::Dh3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::D1 => "D1",
            Generator::D2 => "D2",
            Generator::D3 => "D3",
            Generator::Dh1 => "Dh1",
            Generator::Dh2 => "Dh2",
            Generator::Dh3 => "Dh3",
            Generator::E1 => "E1",
            Generator::E2 => "E2",
            Generator::E3 => "E3",
        }
    }

    /// The 3x3 matrix realizing this generator in sl3.
    pub fn matrix(&self) -> [[i64; 3]; 3] {
        let mut m = [[0i64; 3]; 3];
        match self {
            Generator::D1 => m[0][1] = 1,
            Generator::D2 => m[1][2] = 1,
            Generator::D3 => m[0][2] = 1,
            Generator::Dh1 => m[1][0] = 1,
            Generator::Dh2 => m[2][1] = 1,
            Generator::Dh3 => m[2][0] = 1,
            Generator::E1 => {
                m[0][0] = 1;
                m[1][1] = -1;
            }
            Generator::E2 => {
                m[1][1] = 1;
                m[2][2] = -1;
            }
            Generator::E3 => {
                m[0][0] = 1;
                m[2][2] = -1;
            }
        }
        m
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator '{s}'"))
    }
}

/// Decomposes the commutator `[a, b]` in the basis
/// `{D1, D2, D3, Dh1, Dh2, Dh3, E1, E2}` via the matrix realization
/// (`E3 = E1 + E2` is dependent and never needed).
pub fn commutator_in_basis(a: Generator, b: Generator) -> Vec<(i64, Generator)> {
    let (ma, mb) = (a.matrix(), b.matrix());
    let mut c = [[0i64; 3]; 3];
    for (r, row) in c.iter_mut().enumerate() {
        for (s, entry) in row.iter_mut().enumerate() {
            for t in 0..3 {
                *entry += ma[r][t] * mb[t][s] - mb[r][t] * ma[t][s];
            }
        }
    }
    let mut out = Vec::new();
    for (coef, g) in [
        (c[0][1], Generator::D1),
        (c[1][2], Generator::D2),
        (c[0][2], Generator::D3),
        (c[1][0], Generator::Dh1),
        (c[2][1], Generator::Dh2),
        (c[2][0], Generator::Dh3),
        (c[0][0], Generator::E1),
        (c[0][0] + c[1][1], Generator::E2),
    ] {
        if coef != 0 {
            out.push((coef, g));
        }
    }
    out
}

/// Image of a single variable under a generator: `Some((scalar, variable))`
/// or `None` for zero.  Every generator sends a variable to an integer
/// multiple of one variable.
pub fn variable_image(g: Generator, v: VariableId, n: u32) -> Option<(i64, VariableId)> {
    use Generator::*;
    use VariableId::{A, U, X};
    let n = i64::from(n);
    let image = match v {
        A { i, j } => {
            let (ii, jj) = (i64::from(i), i64::from(j));
            match g {
                D1 => (
                    ii,
                    A {
                        i: i.wrapping_sub(1),
                        j,
                    },
                ),
                D2 => (
                    jj,
                    A {
                        i: i + 1,
                        j: j.wrapping_sub(1),
                    },
                ),
                D3 => (
                    jj,
                    A {
                        i,
                        j: j.wrapping_sub(1),
                    },
                ),
                Dh1 => (n - (ii + jj), A { i: i + 1, j }),
                Dh2 => (
                    ii,
                    A {
                        i: i.wrapping_sub(1),
                        j: j + 1,
                    },
                ),
                Dh3 => (n - (ii + jj), A { i, j: j + 1 }),
                E1 => (n - (2 * ii + jj), A { i, j }),
                E2 => (ii - jj, A { i, j }),
                E3 => (n - (ii + 2 * jj), A { i, j }),
            }
        }
        X(1) => match g {
            D1 => (-1, X(2)),
            D3 => (-1, X(3)),
            E1 | E3 => (-1, X(1)),
            _ => return None,
        },
        X(2) => match g {
            D2 => (-1, X(3)),
            Dh1 => (-1, X(1)),
            E1 => (1, X(2)),
            E2 => (-1, X(2)),
            _ => return None,
        },
        X(3) => match g {
            Dh2 => (-1, X(2)),
            Dh3 => (-1, X(1)),
            E2 | E3 => (1, X(3)),
            _ => return None,
        },
        U(1) => match g {
            Dh1 => (1, U(2)),
            Dh3 => (1, U(3)),
            E1 | E3 => (1, U(1)),
            _ => return None,
        },
        U(2) => match g {
            D1 => (1, U(1)),
            Dh2 => (1, U(3)),
            E1 => (-1, U(2)),
            E2 => (1, U(2)),
            _ => return None,
        },
        U(3) => match g {
            D2 => (1, U(2)),
            D3 => (1, U(1)),
            E2 => (-1, U(3)),
            E3 => (-1, U(3)),
            _ => return None,
        },
        X(_) | U(_) => unreachable!("x/u indices are 1..=3"),
    };
    // A vanishing scalar also covers every index that would leave the ring
    // (i-1 with i=0, i+j=n under Dh1, ...), so the wrapping subs above are
    // never exposed.
    if image.0 == 0 {
        None
    } else {
        Some(image)
    }
}

/// Per-variable weight: the eigenvalue pair under E1 and E2.
pub fn variable_weight(v: VariableId, n: u32) -> Weight {
    let n = i64::from(n);
    match v {
        VariableId::A { i, j } => {
            let (i, j) = (i64::from(i), i64::from(j));
            Weight {
                l1: n - (2 * i + j),
                l2: i - j,
            }
        }
        VariableId::X(1) => Weight { l1: -1, l2: 0 },
        VariableId::X(2) => Weight { l1: 1, l2: -1 },
        VariableId::X(3) => Weight { l1: 0, l2: 1 },
        VariableId::U(1) => Weight { l1: 1, l2: 0 },
        VariableId::U(2) => Weight { l1: -1, l2: 1 },
        VariableId::U(3) => Weight { l1: 0, l2: -1 },
        _ => unreachable!("x/u indices are 1..=3"),
    }
}

/// The full action map of the nine generators on a ring's variables.
#[derive(Debug, Clone, Copy)]
pub struct ActionTable {
    ring: RingConfig,
}

impl ActionTable {
    pub fn new(ring: RingConfig) -> Self {
        ActionTable { ring }
    }

    pub fn ring(&self) -> RingConfig {
        self.ring
    }

    /// Image of one variable as a polynomial.
    pub fn image(&self, g: Generator, v: VariableId) -> Polynomial {
        match variable_image(g, v, self.ring.degree()) {
            None => Polynomial::zero(),
            Some((c, w)) => {
                Polynomial::term(Monomial::variable(w), Rational::from(BigInt::from(c)))
            }
        }
    }

    /// All variables of the ring (a-block, then x, then u).
    pub fn variables(&self) -> Vec<VariableId> {
        let mut vars = self.ring.a_variables();
        vars.extend((1..=3).map(VariableId::x));
        vars.extend((1..=3).map(VariableId::u));
        vars
    }

    /// Every (generator, variable) image, for exhaustive checks.
    pub fn entries(&self) -> Vec<((Generator, VariableId), Polynomial)> {
        let mut out = Vec::new();
        for g in Generator::ALL {
            for v in self.variables() {
                out.push(((g, v), self.image(g, v)));
            }
        }
        out
    }
}

/// Applies the derivation `g` to `p`, extending the variable action by
/// linearity and the Leibniz rule.
pub fn apply_generator(g: Generator, p: &Polynomial, ring: &RingConfig) -> Polynomial {
    let n = ring.degree();
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        for (v, e) in m.iter() {
            let Some((k, w)) = variable_image(g, v, n) else {
                continue;
            };
            let coef = c * Rational::from(BigInt::from(e) * BigInt::from(k));
            let mono = m.with_exponent(v, e - 1).mul(&Monomial::variable(w));
            out.add_term(mono, coef);
        }
    }
    out
}

/// A word of generator powers, e.g. `Dh1^2 Dh3`; the rightmost factor acts
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    factors: Vec<(Generator, u32)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_factors(factors: Vec<(Generator, u32)>) -> Self {
        Word {
            factors: factors.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// The lowering word `Dh1^alpha Dh2^beta Dh3^gamma`.
    pub fn lowering(alpha: u32, beta: u32, gamma: u32) -> Self {
        Word::from_factors(vec![
            (Generator::Dh1, alpha),
            (Generator::Dh2, beta),
            (Generator::Dh3, gamma),
        ])
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Applies the word to `p`, rightmost factor first.
    pub fn apply(&self, p: &Polynomial, ring: &RingConfig) -> Polynomial {
        let mut acc = p.clone();
        for &(g, e) in self.factors.iter().rev() {
            for _ in 0..e {
                if acc.is_zero() {
                    return acc;
                }
                acc = apply_generator(g, &acc, ring);
            }
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let rendered: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        f.write_str(&rendered.join(" "))
    }
}

impl std::str::FromStr for Word {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for piece in s.split_whitespace() {
            if piece == "1" {
                continue;
            }
            let (name, exp) = match piece.split_once('^') {
                None => (piece, 1u32),
                Some((name, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| format!("bad exponent in word factor '{piece}'"))?;
                    (name, e)
                }
            };
            let g: Generator = name.parse()?;
            factors.push((g, exp));
        }
        Ok(Word::from_factors(factors))
    }
}

/// Applies a word given as explicit (generator, exponent) pairs.
pub fn apply_word(word: &[(Generator, u32)], p: &Polynomial, ring: &RingConfig) -> Polynomial {
    Word::from_factors(word.to_vec()).apply(p, ring)
}

/// Eigenvalue pair `[λ1, λ2]` under E1 and E2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub l1: i64,
    pub l2: i64,
}

impl Weight {
    pub fn new(l1: i64, l2: i64) -> Self {
        Weight { l1, l2 }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            l1: self.l1 + other.l1,
            l2: self.l2 + other.l2,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.l1, self.l2)
    }
}

/// Nilpotency orders `[o1, o2]` under Dh1 and Dh2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order {
    pub o1: u64,
    pub o2: u64,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.o1, self.o2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("not isobaric: monomials of weight {first} and {other}")]
    NotIsobaric { first: Weight, other: Weight },
    #[error("internal error: nilpotency cap {cap} exceeded under {generator}")]
    OrderCapExceeded { generator: Generator, cap: u64 },
}

pub(crate) fn monomial_weight(m: &Monomial, n: u32) -> Weight {
    let mut w = Weight::new(0, 0);
    for (v, e) in m.iter() {
        let vw = variable_weight(v, n);
        let e = e as i64;
        w.l1 += vw.l1 * e;
        w.l2 += vw.l2 * e;
    }
    w
}

/// Weight of an isobaric polynomial: `E1(p) = λ1 p`, `E2(p) = λ2 p`.
pub fn weight_of(p: &Polynomial, ring: &RingConfig) -> Result<Weight, ActionError> {
    let n = ring.degree();
    let mut monomials = p.terms().map(|(m, _)| m);
    let first = monomials.next().ok_or(ActionError::ZeroPolynomial)?;
    let w = monomial_weight(first, n);
    for m in monomials {
        let other = monomial_weight(m, n);
        if other != w {
            return Err(ActionError::NotIsobaric { first: w, other });
        }
    }
    Ok(w)
}

/// Nilpotency order of `p` under Dh1 and Dh2; `p` must be nonzero.  The
/// iteration is capped at `(degA+1)·n + degX + degU`, which bounds the order
/// of every polynomial of the ring.
pub fn order_of(p: &Polynomial, ring: &RingConfig) -> Result<Order, ActionError> {
    if p.is_zero() {
        return Err(ActionError::ZeroPolynomial);
    }
    let cap = (p.max_degree_in(VarBlock::A) + 1) * u64::from(ring.degree())
        + p.max_degree_in(VarBlock::X)
        + p.max_degree_in(VarBlock::U);
    let mut ords = [0u64; 2];
    for (slot, g) in [(0, Generator::Dh1), (1, Generator::Dh2)] {
        let mut q = apply_generator(g, p, ring);
        let mut s = 0u64;
        while !q.is_zero() {
            s += 1;
            if s > cap {
                return Err(ActionError::OrderCapExceeded { generator: g, cap });
            }
            q = apply_generator(g, &q, ring);
        }
        ords[slot] = s;
    }
    Ok(Order {
        o1: ords[0],
        o2: ords[1],
    })
}

/// True iff `p` is nonzero, isobaric, homogeneous in the a-variables, and
/// annihilated by the three raising generators D1, D2, D3.
pub fn is_highest_vector(p: &Polynomial, ring: &RingConfig) -> bool {
    if p.is_zero() || weight_of(p, ring).is_err() {
        return false;
    }
    let mut a_degrees = p.terms().map(|(m, _)| m.degree_in(VarBlock::A));
    let first = a_degrees.next().unwrap();
    if a_degrees.any(|d| d != first) {
        return false;
    }
    [Generator::D1, Generator::D2, Generator::D3]
        .into_iter()
        .all(|g| apply_generator(g, p, ring).is_zero())
}

/// Per-generator zero checks of the invariance criterion: image zero under
/// the six non-diagonal derivations and eigenvalue 0 under E1, E2.
pub fn invariance_table(p: &Polynomial, ring: &RingConfig) -> BTreeMap<Generator, bool> {
    let mut out = BTreeMap::new();
    for g in [
        Generator::D1,
        Generator::D2,
        Generator::D3,
        Generator::Dh1,
        Generator::Dh2,
        Generator::Dh3,
        Generator::E1,
        Generator::E2,
    ] {
        out.insert(g, apply_generator(g, p, ring).is_zero());
    }
    out
}

/// Linear combination of generator actions, used to check commutators.
pub fn apply_combination(
    combo: &[(i64, Generator)],
    p: &Polynomial,
    ring: &RingConfig,
) -> Polynomial {
    let mut out = Polynomial::zero();
    for &(c, g) in combo {
        if c == 0 {
            continue;
        }
        let img = apply_generator(g, p, ring).scale(&Rational::from(BigInt::from(c)));
        out = &out + &img;
    }
    out
}

/// `[a, b](p)` computed from the two derivations directly.
pub fn commutator_action(
    a: Generator,
    b: Generator,
    p: &Polynomial,
    ring: &RingConfig,
) -> Polynomial {
    let ab = apply_generator(a, &apply_generator(b, p, ring), ring);
    let ba = apply_generator(b, &apply_generator(a, p, ring), ring);
    &ab - &ba
}
