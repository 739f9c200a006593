//! Smith normal form over the integers with unimodular transforms.

use crate::scalar::Int;

use super::matrix::IntMatrix;

/// `row_ops · A · col_ops = diag(d_1, …, d_r, 0, …)` with `d_i > 0` and
/// `d_i | d_{i+1}`; both transforms are unimodular.
#[derive(Debug, Clone)]
pub struct SmithDecomposition<T> {
    factors: Vec<T>,
    row_ops: IntMatrix<T>,
    col_ops: IntMatrix<T>,
    rows: usize,
    cols: usize,
}

impl<T: Int> SmithDecomposition<T> {
    pub fn new(matrix: &IntMatrix<T>) -> Self {
        let (m, n) = (matrix.rows(), matrix.cols());
        let mut a = matrix.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        let mut factors = Vec::new();

        for t in 0..m.min(n) {
            let Some((pi, pj)) = smallest_nonzero(&a, t, t) else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(a[(i, t)].clone() / a[(t, t)].clone());
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    dirty |= !a[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(a[(t, j)].clone() / a[(t, t)].clone());
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    dirty |= !a[(t, j)].is_zero();
                }
                if dirty {
                    // A remainder smaller than the pivot is left; make it the pivot.
                    let (pi, pj) = smallest_in_cross(&a, t);
                    a.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    a.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let pivot = a[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => {
                        let one = T::one();
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            factors.push(a[(t, t)].clone());
        }

        SmithDecomposition { factors, row_ops: u, col_ops: v, rows: m, cols: n }
    }

    /// Nonzero invariant factors, in divisibility order.
    pub fn factors(&self) -> &[T] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn row_ops(&self) -> &IntMatrix<T> {
        &self.row_ops
    }

    pub fn col_ops(&self) -> &IntMatrix<T> {
        &self.col_ops
    }

    /// The diagonal matrix `row_ops · A · col_ops`.
    pub fn diagonal(&self) -> IntMatrix<T> {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    /// Some integer `z` with `A z = b`, or `None` if there is none.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let c = self.row_ops.mul_vec(b);
        let mut y = vec![T::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            match self.factors.get(i) {
                Some(d) => {
                    let (q, r) = ci.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    y[i] = q;
                }
                None if !ci.is_zero() => return None,
                None => {}
            }
        }
        Some(self.col_ops.mul_vec(&y))
    }

    /// Integer basis of the kernel of `A`: the trailing columns of `col_ops`.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        (self.rank()..self.cols).map(|j| self.col_ops.column(j)).collect()
    }
}

fn smallest_nonzero<T: Int>(a: &IntMatrix<T>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..a.rows() {
        for j in c0..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross<T: Int>(a: &IntMatrix<T>, t: usize) -> (usize, usize) {
    let cells = (t + 1..a.rows())
        .map(|i| (i, t))
        .chain((t + 1..a.cols()).map(|j| (t, j)));
    cells
        .filter(|&c| !a[c].is_zero())
        .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
        .expect("nonzero remainder in pivot row or column")
}
