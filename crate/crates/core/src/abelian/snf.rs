//! Smith normal form over the integers.
//!
//! Pivot rule: the nonzero entry of smallest magnitude in the active
//! submatrix, scanning columns left to right and rows top to bottom within a
//! column. The output, including both transforms, is a pure function of the
//! input matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// Result of a Smith normal form computation: `left * m * right = diagonal`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// Nonzero diagonal entries first (positive, each dividing the next),
    /// then zeros up to `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub left_inverse: IntegerMatrix,
    /// `None` when the right transform was not requested.
    pub right: Option<IntegerMatrix>,
    pub rank: usize,
}

impl SmithNormalForm {
    /// Diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Full Smith normal form with both unimodular transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    reduce(m, true)
}

/// Smith normal form tracking only the left transform and its inverse.
/// Enough for cokernels and lattice coordinates.
pub(crate) fn smith_normal_form_left(m: &IntegerMatrix) -> SmithNormalForm {
    reduce(m, false)
}

fn pick_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for j in t..a.cols() {
        for i in t..a.rows() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

struct Work {
    a: IntegerMatrix,
    left: IntegerMatrix,
    left_inv: IntegerMatrix,
    right: Option<IntegerMatrix>,
}

impl Work {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.left.swap_rows(x, y);
        self.left_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(r) = self.right.as_mut() {
            r.swap_cols(x, y);
        }
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        self.left.add_row_multiple(target, source, f);
        let neg = -f;
        self.left_inv.add_col_multiple(source, target, &neg);
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        if let Some(r) = self.right.as_mut() {
            r.add_col_multiple(target, source, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }
}

fn reduce(m: &IntegerMatrix, track_right: bool) -> SmithNormalForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        left: IntegerMatrix::identity(rows),
        left_inv: IntegerMatrix::identity(rows),
        right: track_right.then(|| IntegerMatrix::identity(cols)),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // Clear column t below the pivot and row t right of it; any
            // nonzero remainder becomes a strictly smaller pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = pick_pivot_cross(&w.a, t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let pivot = w.a[(t, t)].clone();
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    let diagonal = (0..rows.min(cols)).map(|i| w.a[(i, i)].clone()).collect();
    SmithNormalForm { diagonal, left: w.left, left_inverse: w.left_inv, right: w.right, rank }
}

/// Smallest-magnitude nonzero entry among row t and column t (active part).
fn pick_pivot_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a[(t, t)].abs();
    for j in t + 1..a.cols() {
        let v = a[(t, j)].abs();
        if !v.is_zero() && (best_abs.is_zero() || v < best_abs) {
            best = (t, j);
            best_abs = v;
        }
    }
    for i in t + 1..a.rows() {
        let v = a[(i, t)].abs();
        if !v.is_zero() && (best_abs.is_zero() || v < best_abs) {
            best = (i, t);
            best_abs = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&IntegerMatrix::from_rows(rows)).diagonal
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 0]]), big(&[2, 0]));
        assert_eq!(diag_of(&[vec![1]]), big(&[1]));
    }

    #[test]
    fn two_by_two_needs_divisibility_fix() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
        assert_eq!(diag_of(&[vec![2, 4], vec![6, 8]]), big(&[2, 4]));
        // diag(2, 3) is not in normal form: 2 and 3 are coprime.
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
    }

    #[test]
    fn empty_matrices() {
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 3));
        assert!(s.diagonal.is_empty());
        assert_eq!(s.right.unwrap().rows(), 3);
        let s = smith_normal_form(&IntegerMatrix::zeros(2, 0));
        assert_eq!(s.left.rows(), 2);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn deterministic() {
        let m = IntegerMatrix::from_rows(&[vec![4, 6, 2], vec![3, 9, 12], vec![0, 5, 7]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
    }

    proptest! {
        #[test]
        fn transforms_are_unimodular_and_diagonalise(
            rows in 0usize..5,
            cols in 0usize..5,
            seed in prop::collection::vec(-9i64..10, 25),
        ) {
            let data: Vec<Vec<i64>> =
                (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = if rows == 0 { IntegerMatrix::zeros(0, cols) } else { IntegerMatrix::from_rows(&data) };
            let s = smith_normal_form(&m);
            let right = s.right.clone().unwrap();
            let d = s.left.mul(&m).mul(&right);
            prop_assert_eq!(&d, &s.diagonal_matrix(rows, cols));
            prop_assert_eq!(s.left.mul(&s.left_inverse), IntegerMatrix::identity(rows));
            prop_assert_eq!(s.left.determinant().abs(), BigInt::from(1));
            prop_assert_eq!(right.determinant().abs(), BigInt::from(1));
            for w in s.diagonal[..s.rank].windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for v in &s.diagonal[..s.rank] {
                prop_assert!(v.is_positive());
            }
            prop_assert!(s.diagonal[s.rank..].iter().all(|v| v.is_zero()));
        }
    }
}
