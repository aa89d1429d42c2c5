// SPDX-License-Identifier: Apache-2.0

//! Dense exact linear algebra over a finite field.
//!
//! Elimination is deterministic: columns are scanned left to right, and the
//! pivot for a column is the first row (top to bottom) at or below the current
//! rank with a nonzero entry.

use crate::error::{Error, Result};
use crate::galois::{Elem, Field, FieldTower};

/// Row-major dense matrix with entries in a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::WrongLength { expected: cols, got: bad.len() });
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(field, self.row(r), v))
            .collect()
    }

    /// `v^T M` for a row vector `v`.
    pub fn vec_mul(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = field.mul_add(*o, coef, x);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] -= factor * row[source]`, starting at column `from`.
    fn eliminate_row(&mut self, field: &Field, target: usize, source: usize, factor: Elem, from: usize) {
        let neg = field.neg(factor);
        let cols = self.cols;
        for c in from..cols {
            let s = self.data[source * cols + c];
            if !s.is_zero() {
                let t = &mut self.data[target * cols + c];
                *t = field.mul_add(*t, neg, s);
            }
        }
    }
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| field.mul_add(acc, x, y))
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns, in order.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    rref_limited(field, m, m.cols)
}

/// Like [`rref`] but only pivots within the first `limit` columns; the
/// remaining columns are carried along (augmented systems).
fn rref_limited(field: &Field, m: &mut Matrix, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..limit {
        if rank == m.rows {
            break;
        }
        let Some(pr) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, pr);
        let inv = field.inv(m.get(rank, c)).expect("pivot is nonzero");
        for cc in c..m.cols {
            let v = m.get(rank, cc);
            m.set(rank, cc, field.mul(v, inv));
        }
        for r in 0..m.rows {
            if r != rank {
                let factor = m.get(r, c);
                if !factor.is_zero() {
                    m.eliminate_row(field, r, rank, factor, c);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Basis of the right nullspace `{v : M v = 0}`, one vector per free column
/// (free entry set to one, other free entries zero).
pub fn nullspace(field: &Field, m: &Matrix) -> Vec<Vec<Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem::ZERO; m.cols];
            v[free] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(work.get(r, free));
            }
            v
        })
        .collect()
}

/// One solution of `M x = b`, with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if b.len() != m.rows {
        return Err(Error::WrongLength { expected: m.rows, got: b.len() });
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, m.cols, b[r]);
    }
    let pivots = rref_limited(field, &mut aug, m.cols);
    let rank = pivots.len();
    if (rank..m.rows).any(|r| !aug.get(r, m.cols).is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Elem::ZERO; m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols);
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: &Field, m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, m.cols, "invert needs a square matrix");
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, Elem::ONE);
    }
    let pivots = rref_limited(field, &mut aug, n);
    if pivots.len() < n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, aug.get(r, n + c));
        }
    }
    Some(inv)
}

/// Dimension over the tower's base field of the span of `vectors`.
///
/// Each element is flattened into its base-field coordinates and the result
/// is eliminated; the coordinates lie in the base field, so the rank over the
/// big field equals the rank over the base field.
pub fn rank_over_base(tower: &FieldTower, vectors: &[Elem]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(tower.field(), &coordinate_matrix(tower, vectors))
}

/// Rows are the base-field coordinates of `vectors`.
pub fn coordinate_matrix(tower: &FieldTower, vectors: &[Elem]) -> Matrix {
    let rows = vectors.iter().map(|&v| tower.coordinates(v)).collect();
    Matrix::from_rows(rows).expect("coordinate rows have equal length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..rows)
            .map(|_| (0..cols).map(|_| Elem(rng.gen_range(0..f.order()))).collect())
            .collect();
        Matrix::from_rows(data).unwrap()
    }

    /// Rank by counting distinct elements of the row space (brute force).
    fn brute_rank(f: &Field, m: &Matrix) -> usize {
        let mut span = std::collections::HashSet::new();
        span.insert(vec![Elem::ZERO; m.cols()]);
        for r in 0..m.rows() {
            let mut next = span.clone();
            for v in &span {
                for c in f.elements() {
                    let w: Vec<Elem> =
                        v.iter().zip(m.row(r)).map(|(&a, &b)| f.mul_add(a, c, b)).collect();
                    next.insert(w);
                }
            }
            span = next;
        }
        let mut k = 0;
        while (f.order() as usize).pow(k as u32) < span.len() {
            k += 1;
        }
        k
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let f = Field::new(2, 2).unwrap();
        assert!(nullspace(&f, &Matrix::identity(4)).is_empty());
    }

    #[test]
    fn all_ones_row_over_gf2() {
        let f = Field::new(2, 1).unwrap();
        let m = Matrix::from_rows(vec![vec![Elem::ONE, Elem::ONE]]).unwrap();
        assert_eq!(nullspace(&f, &m), vec![vec![Elem::ONE, Elem::ONE]]);
    }

    #[test]
    fn rank_nullity_random_gf4() {
        let f = Field::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_matrix(&f, 5, 8, &mut rng);
            let ns = nullspace(&f, &m);
            let r = rank(&f, &m);
            assert_eq!(ns.len(), 8 - r);
            for v in &ns {
                assert!(m.mul_vec(&f, v).iter().all(|x| x.is_zero()));
            }
            assert_eq!(r, brute_rank(&f, &m));
        }
    }

    #[test]
    fn row_permutation_keeps_rank_and_kernel() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&f, 4, 7, &mut rng);
        let permuted = m.select_rows(&[2, 0, 3, 1]);
        assert_eq!(rank(&f, &m), rank(&f, &permuted));
        for v in nullspace(&f, &permuted) {
            assert!(m.mul_vec(&f, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = Field::new(5, 1).unwrap();
        let e = |v| Elem(v);
        let m = Matrix::from_rows(vec![vec![e(1), e(2)], vec![e(2), e(4)]]).unwrap();
        let x = solve(&f, &m, &[e(3), e(1)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&f, &x), vec![e(3), e(1)]);
        assert_eq!(solve(&f, &m, &[e(3), e(2)]).unwrap(), None);
        assert!(solve(&f, &m, &[e(3)]).is_err());
    }

    #[test]
    fn invert_round_trip() {
        let f = Field::new(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_matrix(&f, 5, 5, &mut rng);
        if let Some(inv) = invert(&f, &m) {
            for c in 0..5 {
                let col = inv.column(c);
                let prod = m.mul_vec(&f, &col);
                for (r, v) in prod.into_iter().enumerate() {
                    assert_eq!(v, if r == c { Elem::ONE } else { Elem::ZERO });
                }
            }
        }
    }
}
