//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (boundary ranks, cohomology dimensions, the
//! product-rule solver) reduces to rank and nullspace computations on
//! sparse matrices with small rational entries.  Gaussian elimination with
//! exact `BigInt`-backed rationals is entirely adequate at this scale; the
//! pivot rule favours short rows and lightly populated columns to limit
//! fill-in.  All orderings are deterministic so identical inputs produce
//! identical bases.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small integer-valued rationals.
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience constructor for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// A sparse rational vector of fixed length; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    length: usize,
    entries: BTreeMap<usize, Rational>,
}

impl RationalVector {
    pub fn zero(length: usize) -> RationalVector {
        RationalVector { length, entries: BTreeMap::new() }
    }

    pub fn unit(length: usize, index: usize) -> RationalVector {
        let mut v = RationalVector::zero(length);
        v.set(index, Rational::one());
        v
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Rational {
        assert!(index < self.length, "vector index {index} out of range {}", self.length);
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, index: usize, value: Rational) {
        assert!(index < self.length, "vector index {index} out of range {}", self.length);
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn add_to(&mut self, index: usize, delta: &Rational) {
        let updated = self.get(index) + delta;
        self.set(index, updated);
    }

    /// Nonzero entries in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, v)| (i, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Dense rendering, mostly for reports and tests.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.length];
        for (i, v) in self.iter() {
            out[i] = v.clone();
        }
        out
    }
}

/// A sparse rational matrix in row-major triplet storage.  Zero entries are
/// never stored; accumulating to zero removes the entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalSparseMatrix {
    pub fn new(rows: usize, cols: usize) -> RationalSparseMatrix {
        RationalSparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Accumulate into an entry, dropping it if the sum is zero.
    pub fn add_to(&mut self, row: usize, col: usize, delta: &Rational) {
        let updated = self.get(row, col) + delta;
        self.set(row, col, updated);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> RationalSparseMatrix {
        let mut out = RationalSparseMatrix::new(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn multiply(&self, other: &RationalSparseMatrix) -> RationalSparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        // Row-index `other` once, then accumulate per output row.
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            other_rows[r].push((c, v));
        }
        let mut out = RationalSparseMatrix::new(self.rows, other.cols);
        for (r, k, v) in self.iter() {
            for &(c, w) in &other_rows[k] {
                let delta = v * w;
                out.add_to(r, c, &delta);
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, vector: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, vector.len(), "dimension mismatch in matrix-vector product");
        let mut out = RationalVector::zero(self.rows);
        for (r, c, v) in self.iter() {
            let x = vector.get(c);
            if !x.is_zero() {
                let delta = v * x;
                out.add_to(r, &delta);
            }
        }
        out
    }

    fn row_maps(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        eliminate(self.row_maps()).len()
    }

    /// Dimension of the nullspace (columns minus rank).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right nullspace `{ v : M v = 0 }`, one vector per free
    /// column in ascending column order.  Every returned vector is verified
    /// against the matrix before being handed back.
    pub fn nullspace_basis(&self) -> Vec<RationalVector> {
        let reduced = eliminate(self.row_maps());
        let pivot_cols: Vec<usize> = reduced.iter().map(|(col, _)| *col).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = RationalVector::zero(self.cols);
            v.set(free, Rational::one());
            for (pivot_col, row) in &reduced {
                if let Some(coeff) = row.get(&free) {
                    v.set(*pivot_col, -coeff.clone());
                }
            }
            assert!(
                self.apply(&v).is_zero(),
                "internal error: claimed nullspace vector fails verification"
            );
            basis.push(v);
        }
        basis
    }
}

/// Gaussian elimination to reduced row echelon form.  Returns one
/// `(pivot column, row)` pair per pivot; each returned row is normalized to
/// a unit pivot and fully reduced against the other pivots.
///
/// Pivot selection: among the remaining rows pick the one with the fewest
/// nonzeros (lowest original index on ties), then within that row the entry
/// whose column currently touches the fewest remaining rows (lowest column
/// index on ties).  This keeps fill-in modest on the boundary and
/// product-rule systems, which are extremely sparse.
fn eliminate(
    mut rows: Vec<BTreeMap<usize, Rational>>,
) -> Vec<(usize, BTreeMap<usize, Rational>)> {
    let mut reduced: Vec<(usize, BTreeMap<usize, Rational>)> = Vec::new();
    let mut active: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    while !active.is_empty() {
        // Shortest live row.
        let row_id = *active.iter().min_by_key(|&&r| rows[r].len()).expect("active is nonempty");
        // Within it, the column with the fewest occurrences among live rows.
        let mut column_load: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in &active {
            for &c in rows[r].keys() {
                if rows[row_id].contains_key(&c) {
                    *column_load.entry(c).or_insert(0) += 1;
                }
            }
        }
        let (&pivot_col, _) = rows[row_id]
            .keys()
            .map(|c| (c, column_load.get(c).copied().unwrap_or(0)))
            .min_by_key(|&(c, load)| (load, *c))
            .expect("pivot row is nonempty");

        // Normalize the pivot row.
        let mut pivot_row = std::mem::take(&mut rows[row_id]);
        let pivot_value = pivot_row.get(&pivot_col).expect("pivot present").clone();
        for value in pivot_row.values_mut() {
            *value /= &pivot_value;
        }

        // Eliminate the pivot column from every other live row...
        active.retain(|&r| r != row_id);
        for &r in &active {
            if let Some(coeff) = rows[r].get(&pivot_col).cloned() {
                subtract_scaled(&mut rows[r], &pivot_row, &coeff);
            }
        }
        active.retain(|&r| !rows[r].is_empty());

        // ...and from the rows already reduced, to reach full RREF.
        for (_, done) in reduced.iter_mut() {
            if let Some(coeff) = done.get(&pivot_col).cloned() {
                subtract_scaled(done, &pivot_row, &coeff);
            }
        }
        reduced.push((pivot_col, pivot_row));
    }
    reduced.sort_by_key(|(col, _)| *col);
    reduced
}

/// `target -= coeff * source`, maintaining the no-stored-zeros invariant.
fn subtract_scaled(
    target: &mut BTreeMap<usize, Rational>,
    source: &BTreeMap<usize, Rational>,
    coeff: &Rational,
) {
    for (&col, value) in source {
        let delta = coeff * value;
        match target.get_mut(&col) {
            Some(existing) => {
                *existing -= &delta;
                if existing.is_zero() {
                    target.remove(&col);
                }
            }
            None => {
                if !delta.is_zero() {
                    target.insert(col, -delta);
                }
            }
        }
    }
}

/// First cohomology dimension of a two-step cochain complex
/// `vertices -d0-> edges -d1-> cells`: the nullity of `d1` minus the rank
/// of `d0`.  Validates that the matrices actually compose to zero.
pub fn h1_dimension(d0: &RationalSparseMatrix, d1: &RationalSparseMatrix) -> Result<usize> {
    if d1.cols() != d0.rows() {
        return Err(Error::ComplexMismatch(format!(
            "d1 has {} columns but d0 has {} rows",
            d1.cols(),
            d0.rows()
        )));
    }
    if !d1.multiply(d0).is_zero() {
        return Err(Error::ComplexMismatch("d1 * d0 is not the zero map".into()));
    }
    let kernel = d1.nullity();
    let image = d0.rank();
    assert!(image <= kernel, "internal error: im d0 exceeds ker d1 in a verified complex");
    Ok(kernel - image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_dense(rows: &[&[i64]]) -> RationalSparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = RationalSparseMatrix::new(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, rational(v));
                }
            }
        }
        m
    }

    /// Textbook dense elimination, kept deliberately independent of the
    /// sparse code path: clone to a dense grid, eliminate column by column.
    fn dense_rank(m: &RationalSparseMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> =
            vec![vec![Rational::zero(); m.cols()]; m.rows()];
        for (r, c, v) in m.iter() {
            a[r][c] = v.clone();
        }
        let mut rank = 0;
        for col in 0..m.cols() {
            let pivot = (rank..m.rows()).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else { continue };
            a.swap(rank, p);
            let inv = a[rank][col].clone();
            for j in 0..m.cols() {
                a[rank][j] = &a[rank][j] / &inv;
            }
            for r in 0..m.rows() {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..m.cols() {
                        let sub = &f * &a[rank][j];
                        a[r][j] = &a[r][j] - sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_of_small_examples() {
        assert_eq!(from_dense(&[&[2]]).rank(), 1);
        assert_eq!(from_dense(&[&[0, 0]]).rank(), 0);
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(from_dense(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn nullspace_of_dependent_rows() {
        let m = from_dense(&[&[1, 2], &[2, 4]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].to_dense(), vec![rational(-2), rational(1)]);
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let m = RationalSparseMatrix::new(1, 2);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].to_dense(), vec![rational(1), rational(0)]);
        assert_eq!(basis[1].to_dense(), vec![rational(0), rational(1)]);
    }

    #[test]
    fn nullity_counts_free_columns() {
        let m = from_dense(&[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(m.nullity(), 1);
        assert_eq!(m.nullspace_basis().len(), 1);
    }

    #[test]
    fn rational_pivots_are_exact() {
        let mut m = RationalSparseMatrix::new(2, 2);
        m.set(0, 0, ratio(1, 3));
        m.set(0, 1, ratio(1, 6));
        m.set(1, 0, ratio(2, 3));
        m.set(1, 1, ratio(1, 3));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn multiply_and_transpose() {
        let a = from_dense(&[&[1, 2], &[3, 4]]);
        let b = from_dense(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.multiply(&b), from_dense(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), from_dense(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn apply_matches_dense_product() {
        let a = from_dense(&[&[1, 2, 0], &[0, -1, 5]]);
        let mut v = RationalVector::zero(3);
        v.set(0, rational(3));
        v.set(2, rational(2));
        assert_eq!(a.apply(&v).to_dense(), vec![rational(3), rational(10)]);
    }

    #[test]
    fn h1_dimension_of_zero_boundaries() {
        // one vertex, one loop edge, no cells: a circle
        let d0 = RationalSparseMatrix::new(1, 1);
        let d1 = RationalSparseMatrix::new(0, 1);
        assert_eq!(h1_dimension(&d0, &d1).unwrap(), 1);
    }

    #[test]
    fn h1_dimension_rejects_dimension_clash() {
        let d0 = RationalSparseMatrix::new(2, 1);
        let d1 = RationalSparseMatrix::new(1, 3);
        assert!(matches!(h1_dimension(&d0, &d1), Err(Error::ComplexMismatch(_))));
    }

    #[test]
    fn h1_dimension_rejects_nonzero_composite() {
        let mut d0 = RationalSparseMatrix::new(1, 1);
        d0.set(0, 0, rational(1));
        let mut d1 = RationalSparseMatrix::new(1, 1);
        d1.set(0, 0, rational(1));
        assert!(matches!(h1_dimension(&d0, &d1), Err(Error::ComplexMismatch(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = RationalSparseMatrix> {
        (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
            prop::collection::vec(-4i64..=4, r * c).prop_map(move |values| {
                let mut m = RationalSparseMatrix::new(r, c);
                for (k, v) in values.into_iter().enumerate() {
                    if v != 0 {
                        m.set(k / c, k % c, rational(v));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense_oracle(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), dense_rank(&m));
        }

        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn nullspace_dimension_and_membership(m in arb_matrix()) {
            let basis = m.nullspace_basis();
            prop_assert_eq!(basis.len(), m.cols() - m.rank());
            for v in &basis {
                prop_assert!(m.apply(v).is_zero());
            }
        }
    }
}
