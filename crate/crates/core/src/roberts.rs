//! Reconstruction of covariants, contravariants and mixed concomitants of a
//! ternary form from their lead coefficients, plus the classical oracles
//! (generic form, Hessian, dual conic) and the invariance verifier.
//!
//! Every reconstruction is normalized so that the lead coefficient (the
//! coefficient of `x1^order · u3^class`) equals the seed exactly, and every
//! result is run through the invariance verifier before it is returned.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::action::{
    apply_generator, invariance_table, monomial_weight, weight_of, Generator, Weight,
};
use crate::linalg::{solve, RationalMatrix, SolveStatus};
use crate::render::{render_json, render_text};
use crate::rep::factorial;
use crate::ring::{
    HomogeneityError, Monomial, Polynomial, Rational, RingConfig, RingError, VarBlock, VariableId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcomitantKind {
    Invariant,
    Covariant,
    Contravariant,
    Mixed,
}

impl ConcomitantKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConcomitantKind::Invariant => "invariant",
            ConcomitantKind::Covariant => "covariant",
            ConcomitantKind::Contravariant => "contravariant",
            ConcomitantKind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for ConcomitantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reconstructed concomitant with its grading data and the per-generator
/// verification results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcomitantReport {
    pub kind: ConcomitantKind,
    pub polynomial: Polynomial,
    /// Homogeneity degree in the a-variables.
    pub degree: u64,
    /// Homogeneity degree in the x-variables.
    pub order: u64,
    /// Homogeneity degree in the u-variables.
    pub class: u64,
    pub seed: Polynomial,
    pub verified: BTreeMap<Generator, bool>,
}

impl ConcomitantReport {
    pub fn all_verified(&self) -> bool {
        self.verified.values().all(|&ok| ok)
    }

    pub fn to_json(&self) -> Value {
        let verified: serde_json::Map<String, Value> = self
            .verified
            .iter()
            .map(|(g, ok)| (g.to_string(), Value::from(*ok)))
            .collect();
        json!({
            "kind": self.kind.name(),
            "degree": self.degree,
            "order": self.order,
            "class": self.class,
            "seed": render_json(&self.seed),
            "polynomial": render_json(&self.polynomial),
            "verified": verified,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RobertsError {
    #[error("seed must be a nonzero polynomial")]
    ZeroSeed,
    #[error("seed must contain only a[i,j] variables")]
    SeedNotPureA,
    #[error("{0}")]
    Ring(#[from] RingError),
    #[error("seed is not a highest vector: {0}")]
    NotHighestVector(String),
    #[error("seed weight {found} is not of shape {expected}")]
    WrongWeightShape {
        expected: &'static str,
        found: Weight,
    },
    #[error("seed weight {0} is not dominant")]
    NonDominantWeight(Weight),
    #[error("constraint system is inconsistent: the seed does not head a concomitant")]
    Inconsistent,
    #[error("constraint system is underdetermined (rank {rank}); free coefficients: {}", free.join(", "))]
    Underdetermined { rank: usize, free: Vec<String> },
    #[error("internal error: reconstruction failed the invariance verifier at {0}")]
    VerificationFailed(Generator),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{0}")]
    Profile(#[from] HomogeneityError),
    #[error("hessian needs ring degree >= 2, got {0}")]
    HessianDegree(u32),
    #[error("dual conic oracle needs ring degree 2, got {0}")]
    DualConicDegree(u32),
}

/// The universal covariant `x1 u1 + x2 u2 + x3 u3`.
pub fn universal_covariant() -> Polynomial {
    let mut p = Polynomial::zero();
    for k in 1..=3 {
        p.add_term(
            Monomial::from_exponents([(VariableId::x(k), 1), (VariableId::u(k), 1)]),
            Rational::one(),
        );
    }
    p
}

/// The generic ternary form of degree `n` with binomial multipliers:
/// `sum n!/(i!j!(n-(i+j))!) a[i,j] x1^(n-(i+j)) x2^i x3^j`.
pub fn generic_form(ring: &RingConfig) -> Polynomial {
    let n = ring.degree();
    let mut f = Polynomial::zero();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let coef = Rational::new(
                factorial(n),
                factorial(i) * factorial(j) * factorial(n - i - j),
            );
            let mono = Monomial::from_exponents([
                (VariableId::a(i, j), 1),
                (VariableId::x(1), u64::from(n - i - j)),
                (VariableId::x(2), u64::from(i)),
                (VariableId::x(3), u64::from(j)),
            ]);
            f.add_term(mono, coef);
        }
    }
    f
}

/// Per-generator invariance checks: image zero under D1, D2, D3, Dh1, Dh2,
/// Dh3 and eigenvalue 0 under E1, E2.
pub fn verify_concomitant(p: &Polynomial, ring: &RingConfig) -> BTreeMap<Generator, bool> {
    invariance_table(p, ring)
}

fn validate_seed(seed: &Polynomial, ring: &RingConfig) -> Result<Weight, RobertsError> {
    if seed.is_zero() {
        return Err(RobertsError::ZeroSeed);
    }
    if !seed.is_a_only() {
        return Err(RobertsError::SeedNotPureA);
    }
    ring.check(seed)?;
    let weight =
        weight_of(seed, ring).map_err(|e| RobertsError::NotHighestVector(e.to_string()))?;
    let mut a_degrees = seed.terms().map(|(m, _)| m.degree_in(VarBlock::A));
    let first = a_degrees.next().unwrap();
    if a_degrees.any(|d| d != first) {
        return Err(RobertsError::NotHighestVector(
            "not homogeneous in the a-variables".to_string(),
        ));
    }
    for g in [Generator::D1, Generator::D2, Generator::D3] {
        if !apply_generator(g, seed, ring).is_zero() {
            return Err(RobertsError::NotHighestVector(format!(
                "{g} image is nonzero"
            )));
        }
    }
    if weight.l1 < 0 || weight.l2 < 0 {
        return Err(RobertsError::NonDominantWeight(weight));
    }
    Ok(weight)
}

fn finalize(
    kind: ConcomitantKind,
    polynomial: Polynomial,
    seed: Polynomial,
    ring: &RingConfig,
) -> Result<ConcomitantReport, RobertsError> {
    let verified = verify_concomitant(&polynomial, ring);
    if let Some((&g, _)) = verified.iter().find(|(_, ok)| !**ok) {
        return Err(RobertsError::VerificationFailed(g));
    }
    let profile = polynomial
        .degree_profile()
        .map_err(|e| RobertsError::Internal(format!("output not homogeneous: {e}")))?;
    let lead_monomial = Monomial::from_exponents([
        (VariableId::x(1), profile.order),
        (VariableId::u(3), profile.class),
    ]);
    if polynomial.extract_xu_coefficient(&lead_monomial) != seed {
        return Err(RobertsError::Internal(
            "lead coefficient of the output does not equal the seed".to_string(),
        ));
    }
    Ok(ConcomitantReport {
        kind,
        polynomial,
        degree: profile.degree,
        order: profile.order,
        class: profile.class,
        seed,
        verified,
    })
}

/// Reconstructs the covariant headed by a seed of weight `[d, 0]`:
/// `f = sum_{i+j<=d} 1/(i! j!) Dh1^i Dh3^j(seed) x1^(d-(i+j)) x2^i x3^j`.
pub fn reconstruct_covariant(
    seed: &Polynomial,
    ring: &RingConfig,
) -> Result<ConcomitantReport, RobertsError> {
    let weight = validate_seed(seed, ring)?;
    if weight.l2 != 0 {
        return Err(RobertsError::WrongWeightShape {
            expected: "[d, 0]",
            found: weight,
        });
    }
    let d = weight.l1 as u32;
    let mut images: HashMap<(u32, u32), Polynomial> = HashMap::new();
    images.insert((0, 0), seed.clone());
    let mut f = Polynomial::zero();
    for i in 0..=d {
        for j in 0..=(d - i) {
            if (i, j) != (0, 0) {
                let (prev, g) = if i > 0 {
                    ((i - 1, j), Generator::Dh1)
                } else {
                    ((i, j - 1), Generator::Dh3)
                };
                let img = match images.get(&prev) {
                    None => continue,
                    Some(p) => apply_generator(g, p, ring),
                };
                if img.is_zero() {
                    continue;
                }
                images.insert((i, j), img);
            }
            let coef = Rational::new(BigInt::one(), factorial(i) * factorial(j));
            let xu = Monomial::from_exponents([
                (VariableId::x(1), u64::from(d - i - j)),
                (VariableId::x(2), u64::from(i)),
                (VariableId::x(3), u64::from(j)),
            ]);
            let contribution = images[&(i, j)]
                .scale(&coef)
                .mul(&Polynomial::term(xu, Rational::one()));
            f = &f + &contribution;
        }
    }
    let kind = if d == 0 {
        ConcomitantKind::Invariant
    } else {
        ConcomitantKind::Covariant
    };
    finalize(kind, f, seed.clone(), ring)
}

/// Reconstructs the contravariant headed by a seed of weight `[0, d]`:
/// `f = sum_{i+j<=d} (-1)^(i+j)/(i! j!) Dh2^j Dh3^i(seed) u3^(d-(i+j)) u1^i u2^j`.
pub fn reconstruct_contravariant(
    seed: &Polynomial,
    ring: &RingConfig,
) -> Result<ConcomitantReport, RobertsError> {
    let weight = validate_seed(seed, ring)?;
    if weight.l1 != 0 {
        return Err(RobertsError::WrongWeightShape {
            expected: "[0, d]",
            found: weight,
        });
    }
    let d = weight.l2 as u32;
    let mut images: HashMap<(u32, u32), Polynomial> = HashMap::new();
    images.insert((0, 0), seed.clone());
    let mut f = Polynomial::zero();
    for i in 0..=d {
        for j in 0..=(d - i) {
            if (i, j) != (0, 0) {
                let (prev, g) = if j > 0 {
                    ((i, j - 1), Generator::Dh2)
                } else {
                    ((i - 1, 0), Generator::Dh3)
                };
                let img = match images.get(&prev) {
                    None => continue,
                    Some(p) => apply_generator(g, p, ring),
                };
                if img.is_zero() {
                    continue;
                }
                images.insert((i, j), img);
            }
            let sign = if (i + j) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let coef = Rational::new(sign, factorial(i) * factorial(j));
            let xu = Monomial::from_exponents([
                (VariableId::u(3), u64::from(d - i - j)),
                (VariableId::u(1), u64::from(i)),
                (VariableId::u(2), u64::from(j)),
            ]);
            let contribution = images[&(i, j)]
                .scale(&coef)
                .mul(&Polynomial::term(xu, Rational::one()));
            f = &f + &contribution;
        }
    }
    let kind = if d == 0 {
        ConcomitantKind::Invariant
    } else {
        ConcomitantKind::Contravariant
    };
    finalize(kind, f, seed.clone(), ring)
}

/// Block index `B_{i,j}^{k,l}` of the mixed constraint system.
pub type MixedBlock = (u32, u32, u32, u32);

/// All block indices with `i+j <= d1`, `k+l <= d2`, in lexicographic order.
pub fn mixed_block_indices(d1: u32, d2: u32) -> Vec<MixedBlock> {
    let mut out = Vec::new();
    for i in 0..=d1 {
        for j in 0..=(d1 - i) {
            for k in 0..=d2 {
                for l in 0..=(d2 - k) {
                    out.push((i, j, k, l));
                }
            }
        }
    }
    out
}

/// The weight every entry of `B_{i,j}^{k,l}` must carry so that the summand
/// `B x1^(d1-(i+j)) x2^i x3^j u3^(d2-(k+l)) u1^k u2^l` has weight [0, 0].
fn block_weight(d1: u32, d2: u32, (i, j, k, l): MixedBlock) -> Weight {
    let (d1, d2) = (i64::from(d1), i64::from(d2));
    let (i, j, k, l) = (i64::from(i), i64::from(j), i64::from(k), i64::from(l));
    Weight::new(d1 - 2 * i - j - k + l, d2 + i - j - k - 2 * l)
}

// Weight shift of each generator action (+root for raising, -root for
// lowering generators).
fn generator_shift(g: Generator) -> Weight {
    match g {
        Generator::D1 => Weight::new(2, -1),
        Generator::D2 => Weight::new(-1, 2),
        Generator::D3 => Weight::new(1, 1),
        Generator::Dh1 => Weight::new(-2, 1),
        Generator::Dh2 => Weight::new(1, -2),
        Generator::Dh3 => Weight::new(-1, -1),
        Generator::E1 | Generator::E2 | Generator::E3 => Weight::new(0, 0),
    }
}

// Right-hand side of the recurrence for `g(B_{i,j}^{k,l})` as (block,
// integer coefficient) pairs; a vanishing coefficient covers every index
// that would leave the admissible range.
fn recurrence_targets(
    g: Generator,
    d1: u32,
    d2: u32,
    (i, j, k, l): MixedBlock,
) -> Vec<(MixedBlock, i64)> {
    let free1 = i64::from(d1) - i64::from(i) - i64::from(j);
    let free2 = i64::from(d2) - i64::from(k) - i64::from(l);
    let raw: [(i64, Option<MixedBlock>); 2] = match g {
        Generator::Dh1 => [
            (free1, Some((i + 1, j, k, l))),
            (-i64::from(l), l.checked_sub(1).map(|lm| (i, j, k + 1, lm))),
        ],
        Generator::Dh2 => [
            (i64::from(i), i.checked_sub(1).map(|im| (im, j + 1, k, l))),
            (-free2, Some((i, j, k, l + 1))),
        ],
        Generator::Dh3 => [
            (free1, Some((i, j + 1, k, l))),
            (-free2, Some((i, j, k + 1, l))),
        ],
        Generator::D1 => [
            (i64::from(i), i.checked_sub(1).map(|im| (im, j, k, l))),
            (-i64::from(k), k.checked_sub(1).map(|km| (i, j, km, l + 1))),
        ],
        Generator::D2 => [
            (i64::from(j), j.checked_sub(1).map(|jm| (i + 1, jm, k, l))),
            (-i64::from(l), l.checked_sub(1).map(|lm| (i, j, k, lm))),
        ],
        Generator::D3 => [
            (i64::from(j), j.checked_sub(1).map(|jm| (i, jm, k, l))),
            (-i64::from(k), k.checked_sub(1).map(|km| (i, j, km, l))),
        ],
        Generator::E1 | Generator::E2 | Generator::E3 => {
            unreachable!("diagonal generators have no recurrence rows")
        }
    };
    raw.into_iter()
        .filter_map(|(c, b)| match b {
            Some(b) if c != 0 => Some((b, c)),
            _ => None,
        })
        .collect()
}

/// All a-monomials of the ring with the given total degree and weight,
/// in ascending monomial order.
fn a_monomials_of_weight(ring: &RingConfig, degree: u64, weight: Weight) -> Vec<Monomial> {
    fn recurse(
        vars: &[VariableId],
        remaining: u64,
        current: Monomial,
        n: u32,
        weight: Weight,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            if monomial_weight(&current, n) == weight {
                out.push(current);
            }
            return;
        }
        let Some((&v, rest)) = vars.split_first() else {
            return;
        };
        for e in 0..=remaining {
            let next = if e == 0 {
                current.clone()
            } else {
                current.with_exponent(v, e)
            };
            recurse(rest, remaining - e, next, n, weight, out);
        }
    }
    let vars = ring.a_variables();
    let mut out = Vec::new();
    recurse(
        &vars,
        degree,
        Monomial::one(),
        ring.degree(),
        weight,
        &mut out,
    );
    out.sort();
    out
}

/// Solves the mixed-concomitant constraint system for a seed of dominant
/// weight `[d1, d2]`: writes each `B_{i,j}^{k,l}` over the a-monomials of
/// its forced degree and weight, pins `B_{0,0}^{0,0} = seed`, imposes all
/// six generator recurrences, and requires a unique exact solution.
pub fn solve_mixed_blocks(
    seed: &Polynomial,
    ring: &RingConfig,
) -> Result<BTreeMap<MixedBlock, Polynomial>, RobertsError> {
    let weight = validate_seed(seed, ring)?;
    let (d1, d2) = (weight.l1 as u32, weight.l2 as u32);
    let seed_degree = seed.max_degree_in(VarBlock::A);

    let blocks = mixed_block_indices(d1, d2);
    let block_pos: HashMap<MixedBlock, usize> =
        blocks.iter().enumerate().map(|(p, b)| (*b, p)).collect();

    // Monomial bases per weight, shared by every block of that weight and by
    // the images of the recurrence rows.
    let mut bases: HashMap<Weight, Vec<Monomial>> = HashMap::new();
    for &b in &blocks {
        let w = block_weight(d1, d2, b);
        for target in
            std::iter::once(w).chain(Generator::NON_DIAGONAL.map(|g| w.add(&generator_shift(g))))
        {
            bases
                .entry(target)
                .or_insert_with(|| a_monomials_of_weight(ring, seed_degree, target));
        }
    }
    let indexes: HashMap<Weight, HashMap<Monomial, usize>> = bases
        .iter()
        .map(|(w, basis)| {
            let index = basis
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            (*w, index)
        })
        .collect();

    let mut offsets = Vec::with_capacity(blocks.len());
    let mut columns: Vec<(MixedBlock, Monomial)> = Vec::new();
    for &b in &blocks {
        offsets.push(columns.len());
        for m in &bases[&block_weight(d1, d2, b)] {
            columns.push((b, m.clone()));
        }
    }
    let total_cols = columns.len();

    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();

    // B_{0,0}^{0,0} = seed, coordinate by coordinate.
    let seed_basis = &bases[&Weight::new(i64::from(d1), i64::from(d2))];
    for (idx, m) in seed_basis.iter().enumerate() {
        let mut row = BTreeMap::new();
        row.insert(offsets[block_pos[&(0, 0, 0, 0)]] + idx, Rational::one());
        rows.push(row);
        rhs.push(seed.coefficient(m));
    }

    // One row per generator, block and target monomial:
    // g(B_b) - sum of recurrence targets = 0.
    for g in Generator::NON_DIAGONAL {
        let shift = generator_shift(g);
        for &b in &blocks {
            let w = block_weight(d1, d2, b);
            let src_basis = &bases[&w];
            let target_weight = w.add(&shift);
            let tgt_basis = &bases[&target_weight];
            if tgt_basis.is_empty() {
                continue;
            }
            let tgt_index = &indexes[&target_weight];
            let mut eq_rows: Vec<BTreeMap<usize, Rational>> =
                vec![BTreeMap::new(); tgt_basis.len()];
            let src_offset = offsets[block_pos[&b]];
            for (s_idx, m) in src_basis.iter().enumerate() {
                let image = apply_generator(g, &Polynomial::term(m.clone(), Rational::one()), ring);
                for (im, c) in image.terms() {
                    let t_idx = *tgt_index
                        .get(im)
                        .expect("generator image stays in the weight-degree slice");
                    *eq_rows[t_idx]
                        .entry(src_offset + s_idx)
                        .or_insert_with(Rational::zero) += c;
                }
            }
            for (tb, coef) in recurrence_targets(g, d1, d2, b) {
                debug_assert_eq!(block_weight(d1, d2, tb), target_weight);
                let tb_offset = offsets[block_pos[&tb]];
                let coef = Rational::from(BigInt::from(coef));
                for (t_idx, row) in eq_rows.iter_mut().enumerate() {
                    let entry = row.entry(tb_offset + t_idx).or_insert_with(Rational::zero);
                    *entry -= &coef;
                }
            }
            for row in eq_rows {
                let row: BTreeMap<usize, Rational> =
                    row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                    rhs.push(Rational::zero());
                }
            }
        }
    }

    let matrix = RationalMatrix::from_sparse_rows(total_cols, rows);
    let report = solve(&matrix, &rhs).map_err(|e| RobertsError::Internal(e.to_string()))?;
    match report.status {
        SolveStatus::Inconsistent => return Err(RobertsError::Inconsistent),
        SolveStatus::Underdetermined => {
            let free = report
                .free_columns
                .iter()
                .take(8)
                .map(|&c| {
                    let ((i, j, k, l), m) = &columns[c];
                    format!(
                        "B[{i},{j};{k},{l}] at {}",
                        render_text(&Polynomial::term(m.clone(), Rational::one()))
                    )
                })
                .collect();
            return Err(RobertsError::Underdetermined {
                rank: report.rank,
                free,
            });
        }
        SolveStatus::Unique => {}
    }
    let solution = report.solution.expect("unique solve returns a solution");

    let mut out: BTreeMap<MixedBlock, Polynomial> = BTreeMap::new();
    for (col, (b, m)) in columns.iter().enumerate() {
        out.entry(*b)
            .or_insert_with(Polynomial::zero)
            .add_term(m.clone(), solution[col].clone());
    }
    for &b in &blocks {
        out.entry(b).or_insert_with(Polynomial::zero);
    }
    Ok(out)
}

/// Reconstructs the mixed concomitant headed by a seed of weight `[d1, d2]`.
/// Seeds of weight `[d, 0]` and `[0, d]` delegate to the covariant and
/// contravariant reconstructions.
pub fn reconstruct_mixed(
    seed: &Polynomial,
    ring: &RingConfig,
) -> Result<ConcomitantReport, RobertsError> {
    let weight = validate_seed(seed, ring)?;
    if weight.l2 == 0 {
        return reconstruct_covariant(seed, ring);
    }
    if weight.l1 == 0 {
        return reconstruct_contravariant(seed, ring);
    }
    let (d1, d2) = (weight.l1 as u32, weight.l2 as u32);
    let blocks = solve_mixed_blocks(seed, ring)?;
    let mut f = Polynomial::zero();
    for (&(i, j, k, l), coefficient) in &blocks {
        if coefficient.is_zero() {
            continue;
        }
        let mult = Rational::new(
            factorial(d1) * factorial(d2),
            factorial(i)
                * factorial(j)
                * factorial(k)
                * factorial(l)
                * factorial(d1 - i - j)
                * factorial(d2 - k - l),
        );
        let xu = Monomial::from_exponents([
            (VariableId::x(1), u64::from(d1 - i - j)),
            (VariableId::x(2), u64::from(i)),
            (VariableId::x(3), u64::from(j)),
            (VariableId::u(3), u64::from(d2 - k - l)),
            (VariableId::u(1), u64::from(k)),
            (VariableId::u(2), u64::from(l)),
        ]);
        f = &f
            + &coefficient
                .scale(&mult)
                .mul(&Polynomial::term(xu, Rational::one()));
    }
    finalize(ConcomitantKind::Mixed, f, seed.clone(), ring)
}

/// Dispatches on the seed weight: `[d, 0]` covariant, `[0, d]`
/// contravariant, otherwise mixed.
pub fn reconstruct_auto(
    seed: &Polynomial,
    ring: &RingConfig,
) -> Result<ConcomitantReport, RobertsError> {
    let weight = validate_seed(seed, ring)?;
    if weight.l2 == 0 {
        reconstruct_covariant(seed, ring)
    } else if weight.l1 == 0 {
        reconstruct_contravariant(seed, ring)
    } else {
        reconstruct_mixed(seed, ring)
    }
}

/// The coefficient of `x1^order · u3^class` (multiplier 1 by the binomial
/// convention); for a genuine concomitant it is a highest vector.
pub fn lead_coefficient(f: &Polynomial, _ring: &RingConfig) -> Result<Polynomial, RobertsError> {
    let profile = f.degree_profile()?;
    let lead = Monomial::from_exponents([
        (VariableId::x(1), profile.order),
        (VariableId::u(3), profile.class),
    ]);
    Ok(f.extract_xu_coefficient(&lead))
}

/// Determinant of the 3x3 Hessian matrix of the generic form: a covariant
/// of degree 3 and order `3(n-2)`.
pub fn hessian_covariant(ring: &RingConfig) -> Result<Polynomial, RobertsError> {
    let n = ring.degree();
    if n < 2 {
        return Err(RobertsError::HessianDegree(n));
    }
    let form = generic_form(ring);
    let mut h = vec![vec![Polynomial::zero(); 3]; 3];
    for (r, row) in h.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = form
                .partial_derivative(VariableId::x(r as u8 + 1))
                .partial_derivative(VariableId::x(c as u8 + 1));
        }
    }
    Ok(det3(&h))
}

fn det3(m: &[Vec<Polynomial>]) -> Polynomial {
    let minor = |r1: usize, c1: usize, r2: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t1 = &m[0][0] * &minor(1, 1, 2, 2);
    let t2 = &m[0][1] * &minor(1, 0, 2, 2);
    let t3 = &m[0][2] * &minor(1, 0, 2, 1);
    &(&t1 - &t2) + &t3
}

/// The dual conic `u · adj(M) · u` of the generic conic with symmetric
/// coefficient matrix `M` (off-diagonal entries a[1,0], a[0,1], a[1,1]):
/// a contravariant of degree 2 and class 2.  Requires `n = 2`.
pub fn dual_conic_oracle(ring: &RingConfig) -> Result<Polynomial, RobertsError> {
    let n = ring.degree();
    if n != 2 {
        return Err(RobertsError::DualConicDegree(n));
    }
    let a = |i: u32, j: u32| Polynomial::variable(VariableId::a(i, j));
    let m = [
        [a(0, 0), a(1, 0), a(0, 1)],
        [a(1, 0), a(2, 0), a(1, 1)],
        [a(0, 1), a(1, 1), a(0, 2)],
    ];
    let mut f = Polynomial::zero();
    for r in 0..3 {
        for c in 0..3 {
            // adj(M)[r][c] = (-1)^(r+c) * minor of M at (c, r).
            let (r1, r2) = ((c + 1) % 3, (c + 2) % 3);
            let (c1, c2) = ((r + 1) % 3, (r + 2) % 3);
            let minor = &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
            let uu = Monomial::from_exponents([
                (VariableId::u(r as u8 + 1), 1),
                (VariableId::u(c as u8 + 1), 1),
            ]);
            f = &f + &minor.mul(&Polynomial::term(uu, Rational::one()));
        }
    }
    Ok(f)
}
