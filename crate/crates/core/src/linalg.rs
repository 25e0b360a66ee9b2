//! Exact rational linear algebra: reduced row echelon form and linear
//! system solving with unique/underdetermined/inconsistent classification.
//!
//! Pivoting is deterministic (first nonzero entry in column order); exact
//! arithmetic makes magnitude-based pivoting unnecessary.  Every unique
//! solution is re-verified by substitution before it is returned.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::Rational;

/// A sparse rows x cols matrix over the rationals; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RationalMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Builds from sparse rows (column -> value maps).
    pub fn from_sparse_rows(cols: usize, rows: Vec<BTreeMap<usize, Rational>>) -> Self {
        let mut m = RationalMatrix::new(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries of one row, in column order.
    pub fn row_sparse(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries
            .range((r, 0)..=(r, self.cols.max(1) - 1))
            .map(|((_, c), v)| (*c, v))
    }

    fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &RationalMatrix) -> RrefResult {
    let mut dense = m.to_dense();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_columns = Vec::new();
    let mut pr = 0usize;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| !dense[r][c].is_zero()) else {
            continue;
        };
        dense.swap(pr, src);
        let pivot = dense[pr][c].clone();
        if !pivot.is_one() {
            for v in &mut dense[pr] {
                if !v.is_zero() {
                    *v /= &pivot;
                }
            }
        }
        let pivot_row = dense[pr].clone();
        for (r, row) in dense.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (dst, src) in row.iter_mut().zip(&pivot_row) {
                if !src.is_zero() {
                    *dst -= src * &factor;
                }
            }
        }
        pivot_columns.push(c);
        pr += 1;
    }
    let rank = pivot_columns.len();
    RrefResult {
        matrix: RationalMatrix::from_rows(&dense),
        rank,
        pivot_columns,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Present exactly when the status is `Unique`, already re-verified.
    pub solution: Option<Vec<Rational>>,
    pub rank: usize,
    pub free_columns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows, vector has {len}")]
    DimensionMismatch { rows: usize, len: usize },
    #[error("internal error: solution failed exact re-verification")]
    VerificationFailed,
}

/// Solves `m · x = b` exactly.  Forward elimination keeps normalized pivot
/// rows keyed by pivot column; unique systems are finished by
/// back-substitution and the result checked against the original matrix.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<SolveReport, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            rows: m.rows,
            len: b.len(),
        });
    }
    let mut pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
    let mut inconsistent = false;
    for (r, b_r) in b.iter().enumerate() {
        let mut row: BTreeMap<usize, Rational> =
            m.row_sparse(r).map(|(c, v)| (c, v.clone())).collect();
        let mut rhs = b_r.clone();
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                if !rhs.is_zero() {
                    inconsistent = true;
                }
                break;
            };
            match pivots.get(&lead) {
                Some((prow, prhs)) => {
                    let factor = row.remove(&lead).unwrap();
                    for (c, v) in prow {
                        if *c == lead {
                            continue;
                        }
                        let delta = v * &factor;
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= delta;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= prhs * &factor;
                }
                None => {
                    let lead_coef = row.get(&lead).unwrap().clone();
                    if !lead_coef.is_one() {
                        for v in row.values_mut() {
                            *v /= &lead_coef;
                        }
                        rhs /= &lead_coef;
                    }
                    pivots.insert(lead, (row, rhs));
                    break;
                }
            }
        }
    }
    let rank = pivots.len();
    let free_columns: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains_key(c)).collect();
    if inconsistent {
        return Ok(SolveReport {
            status: SolveStatus::Inconsistent,
            solution: None,
            rank,
            free_columns,
        });
    }
    if rank < m.cols {
        return Ok(SolveReport {
            status: SolveStatus::Underdetermined,
            solution: None,
            rank,
            free_columns,
        });
    }
    // Every column is a pivot: back-substitute in descending column order.
    let mut x = vec![Rational::zero(); m.cols];
    for (&c, (prow, prhs)) in pivots.iter().rev() {
        let mut value = prhs.clone();
        for (&c2, v) in prow {
            if c2 > c {
                value -= v * &x[c2];
            }
        }
        x[c] = value;
    }
    for (r, b_r) in b.iter().enumerate() {
        let mut acc = Rational::zero();
        for (c, v) in m.row_sparse(r) {
            acc += v * &x[c];
        }
        if acc != *b_r {
            return Err(LinalgError::VerificationFailed);
        }
    }
    Ok(SolveReport {
        status: SolveStatus::Unique,
        solution: Some(x),
        rank,
        free_columns: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        RationalMatrix::from_rows(&rows)
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = RationalMatrix::identity(3);
        let res = rref(&id);
        assert_eq!(res.matrix, id);
        assert_eq!(res.rank, 3);
        assert_eq!(res.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one_matrix() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let res = rref(&m);
        assert_eq!(res.rank, 1);
        assert_eq!(res.matrix, mat(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rank_of_a_constructed_product() {
        // A = L·U with L 5x3 and U 3x5 of full rank, so rank(A) = 3.
        let l = [[1, 0, 0], [2, 1, 0], [3, 4, 1], [1, 1, 1], [0, 2, 5]];
        let u = [[2, 1, 0, 3, 1], [0, 1, 4, 1, 2], [0, 0, 3, 2, 1]];
        let mut a = RationalMatrix::new(5, 5);
        for r in 0..5 {
            for c in 0..5 {
                let mut acc = 0i64;
                for (t, urow) in u.iter().enumerate() {
                    acc += l[r][t] * urow[c];
                }
                a.set(r, c, q(acc));
            }
        }
        assert_eq!(rref(&a).rank, 3);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = mat(&[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]);
        let once = rref(&m);
        let twice = rref(&once.matrix);
        assert_eq!(once.matrix, twice.matrix);
        assert_eq!(once.rank, twice.rank);
    }

    #[test]
    fn solve_identity() {
        let id = RationalMatrix::identity(3);
        let b = vec![q(5), q(-1), q(7)];
        let rep = solve(&id, &b).unwrap();
        assert_eq!(rep.status, SolveStatus::Unique);
        assert_eq!(rep.solution.unwrap(), b);
    }

    #[test]
    fn solve_classifies_inconsistent_and_underdetermined() {
        let m = mat(&[&[1, 1], &[1, 1]]);
        let rep = solve(&m, &[q(1), q(2)]).unwrap();
        assert_eq!(rep.status, SolveStatus::Inconsistent);

        let rep = solve(&m, &[q(1), q(1)]).unwrap();
        assert_eq!(rep.status, SolveStatus::Underdetermined);
        assert_eq!(rep.rank, 1);
        assert_eq!(rep.free_columns, vec![1]);
    }

    #[test]
    fn solve_rejects_dimension_mismatch() {
        let m = RationalMatrix::identity(2);
        assert!(matches!(
            solve(&m, &[q(1)]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unique_solution_with_fractions() {
        let m = mat(&[&[2, 1], &[1, -1], &[3, 0]]);
        let b = vec![q(1), q(0), q(1)];
        let rep = solve(&m, &b).unwrap();
        assert_eq!(rep.status, SolveStatus::Unique);
        let x = rep.solution.unwrap();
        assert_eq!(x[0], Rational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(x[1], Rational::new(BigInt::from(1), BigInt::from(3)));
    }
}
