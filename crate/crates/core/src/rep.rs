//! Highest-weight module machinery: dimension formulas, falling factorials
//! and the weight diagram spanned by lowering words applied to a seed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::action::{apply_generator, is_highest_vector, weight_of, Generator, Weight, Word};
use crate::linalg::{rref, RationalMatrix};
use crate::render::render_text;
use crate::ring::{Monomial, Polynomial, RingConfig};

/// Dimension of the irreducible sl3-module of highest weight `[m1, m2]`:
/// `(m1+1)(m2+1)(m1+m2+2)/2`.
pub fn irrep_dim(m1: u32, m2: u32) -> u128 {
    let (m1, m2) = (u128::from(m1), u128::from(m2));
    (m1 + 1) * (m2 + 1) * (m1 + m2 + 2) / 2
}

/// Falling factorial `d(d-1)···(d-t+1)` with `t` factors; `t = 0` gives 1.
pub fn falling_factorial(d: i64, t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..i64::from(t) {
        acc *= BigInt::from(d - k);
    }
    acc
}

/// `t!` as a big integer.
pub fn factorial(t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=i64::from(t) {
        acc *= BigInt::from(k);
    }
    acc
}

/// One basis entry of a weight space: the lowering word and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanEntry {
    pub word: Word,
    pub polynomial: Polynomial,
}

/// The weight diagram generated by lowering words applied to a seed,
/// reduced to a linearly independent basis inside each weight space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    ring: RingConfig,
    seed: Polynomial,
    seed_weight: Weight,
    spaces: BTreeMap<Weight, Vec<SpanEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("seed is not a highest vector (it must be nonzero, isobaric, homogeneous and annihilated by D1, D2, D3)")]
    SeedNotHighestVector,
    #[error("seed weight {0} is not dominant")]
    NonDominantWeight(Weight),
}

/// Applies all lowering words `Dh1^a Dh2^b Dh3^c` with `a+b+c <= d1+d2` to
/// the seed of weight `[d1, d2]`, discards zero images, groups the survivors
/// by weight and keeps, per weight space, the images of the lexicographically
/// smallest words that are linearly independent over the rationals.
pub fn lowering_span(seed: &Polynomial, ring: &RingConfig) -> Result<WeightDiagram, RepError> {
    if !is_highest_vector(seed, ring) {
        return Err(RepError::SeedNotHighestVector);
    }
    let seed_weight = weight_of(seed, ring).expect("highest vectors are isobaric");
    if seed_weight.l1 < 0 || seed_weight.l2 < 0 {
        return Err(RepError::NonDominantWeight(seed_weight));
    }
    let bound = (seed_weight.l1 + seed_weight.l2) as u32;

    // Images keyed by (alpha, beta, gamma); a missing key means zero.  Each
    // word extends an already-computed one by a single outer application.
    let mut images: HashMap<(u32, u32, u32), Polynomial> = HashMap::new();
    images.insert((0, 0, 0), seed.clone());
    let mut by_weight: BTreeMap<Weight, Vec<(Word, Polynomial)>> = BTreeMap::new();
    for alpha in 0..=bound {
        for beta in 0..=(bound - alpha) {
            for gamma in 0..=(bound - alpha - beta) {
                let key = (alpha, beta, gamma);
                if key != (0, 0, 0) {
                    let (prev, gen) = if alpha > 0 {
                        ((alpha - 1, beta, gamma), Generator::Dh1)
                    } else if beta > 0 {
                        ((alpha, beta - 1, gamma), Generator::Dh2)
                    } else {
                        ((alpha, beta, gamma - 1), Generator::Dh3)
                    };
                    let Some(prev_img) = images.get(&prev) else {
                        continue;
                    };
                    let img = apply_generator(gen, prev_img, ring);
                    if img.is_zero() {
                        continue;
                    }
                    images.insert(key, img);
                }
                let img = images[&key].clone();
                let weight = Weight::new(
                    seed_weight.l1 - 2 * i64::from(alpha) + i64::from(beta) - i64::from(gamma),
                    seed_weight.l2 + i64::from(alpha) - 2 * i64::from(beta) - i64::from(gamma),
                );
                debug_assert_eq!(weight_of(&img, ring).unwrap(), weight);
                by_weight
                    .entry(weight)
                    .or_default()
                    .push((Word::lowering(alpha, beta, gamma), img));
            }
        }
    }

    let mut spaces: BTreeMap<Weight, Vec<SpanEntry>> = BTreeMap::new();
    for (weight, candidates) in by_weight {
        let monomials: BTreeSet<Monomial> = candidates
            .iter()
            .flat_map(|(_, p)| p.terms().map(|(m, _)| m.clone()))
            .collect();
        let index: HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // Candidates become columns; the pivot columns of the RREF are the
        // lexicographically earliest independent subset.
        let mut matrix = RationalMatrix::new(monomials.len(), candidates.len());
        for (col, (_, p)) in candidates.iter().enumerate() {
            for (m, c) in p.terms() {
                matrix.set(index[m], col, c.clone());
            }
        }
        let picked = rref(&matrix).pivot_columns;
        let basis: Vec<SpanEntry> = picked
            .into_iter()
            .map(|col| {
                let (word, polynomial) = candidates[col].clone();
                SpanEntry { word, polynomial }
            })
            .collect();
        spaces.insert(weight, basis);
    }

    Ok(WeightDiagram {
        ring: *ring,
        seed: seed.clone(),
        seed_weight,
        spaces,
    })
}

impl WeightDiagram {
    pub fn ring(&self) -> RingConfig {
        self.ring
    }

    pub fn seed(&self) -> &Polynomial {
        &self.seed
    }

    pub fn seed_weight(&self) -> Weight {
        self.seed_weight
    }

    /// Weight spaces in ascending weight order.
    pub fn spaces(&self) -> impl Iterator<Item = (&Weight, &[SpanEntry])> {
        self.spaces.iter().map(|(w, v)| (w, v.as_slice()))
    }

    pub fn weight_space(&self, w: &Weight) -> &[SpanEntry] {
        self.spaces.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn weight_space_dims(&self) -> BTreeMap<Weight, usize> {
        self.spaces.iter().map(|(w, v)| (*w, v.len())).collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    /// JSON export, highest weights first:
    /// `[{"weight":[i,j],"dim":k,"basis":[{"word":"Dh1^2 Dh3","poly":"..."}]}]`.
    pub fn to_json(&self) -> Value {
        let spaces: Vec<Value> = self
            .spaces
            .iter()
            .rev()
            .map(|(w, entries)| {
                let basis: Vec<Value> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "word": e.word.to_string(),
                            "poly": render_text(&e.polynomial),
                        })
                    })
                    .collect();
                json!({
                    "weight": [w.l1, w.l2],
                    "dim": entries.len(),
                    "basis": basis,
                })
            })
            .collect();
        Value::Array(spaces)
    }
}
