//! Integer linear algebra over the Laplacian lattice.
//!
//! Firing `v` adds column `v` of the Laplacian to a divisor, so two divisors
//! are linearly equivalent exactly when their difference lies in the column
//! lattice `Im(L)`. Membership is decided with a Smith decomposition computed
//! once per graph and held by [`Lattice`].

mod matrix;
mod smith;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub use matrix::IntMatrix;
pub use smith::SmithDecomposition;

use crate::config::Divisor;
use crate::graph::RibbonDigraph;
use crate::scalar::{div_ceil, gcd_all, Int};

/// `L(u, v) = -d⁺(u)` if `u == v`, else `d(v, u)`: column `v` is the effect
/// of firing `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laplacian<T>(IntMatrix<T>);

impl<T: Int> Laplacian<T> {
    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, z: &[T]) -> Vec<T> {
        self.0.mul_vec(z)
    }
}

pub fn laplacian<T: Int>(graph: &RibbonDigraph) -> Laplacian<T> {
    let n = graph.n();
    let mut m = IntMatrix::zeros(n, n);
    for v in graph.vertices() {
        m[(v, v)] = -T::from_count(graph.out_degree(v));
        for &(u, count) in graph.head_counts(v) {
            m[(u, v)] = T::from_count(count);
        }
    }
    Laplacian(m)
}

/// The primitive period vector: the unique strictly positive, coprime
/// integer vector spanning the kernel of the Laplacian.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodVector<T>(Vec<T>);

impl<T: Int> PeriodVector<T> {
    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn get(&self, v: usize) -> &T {
        &self.0[v]
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(One::is_one)
    }
}

/// Solves for the rational kernel of `L` (rank `n - 1` on strongly connected
/// graphs), clears denominators, fixes the sign and divides by the gcd.
pub fn period_vector<T: Int>(graph: &RibbonDigraph) -> PeriodVector<T> {
    let l = laplacian::<T>(graph);
    let n = l.n();
    let mut a: Vec<Vec<Ratio<T>>> = l
        .matrix()
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(Ratio::from_integer).collect())
        .collect();

    // Reduced row echelon form.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let delta = f.clone() * a[row][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    assert_eq!(pivot_cols.len() + 1, n, "Laplacian of a strongly connected graph has corank 1");
    let free = (0..n).find(|c| !pivot_cols.contains(c)).expect("one free column");

    let mut kernel = vec![Ratio::zero(); n];
    kernel[free] = Ratio::one();
    for (r, &c) in pivot_cols.iter().enumerate() {
        kernel[c] = -a[r][free].clone();
    }
    let denom = kernel
        .iter()
        .fold(T::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<T> = kernel
        .iter()
        .map(|q| q.numer().clone() * (denom.clone() / q.denom().clone()))
        .collect();
    let g = gcd_all(&ints);
    let sign = if ints[0].is_negative() { -T::one() } else { T::one() };
    for x in ints.iter_mut() {
        *x = x.clone() / g.clone() * sign.clone();
    }
    assert!(
        ints.iter().all(|x| x.is_positive()),
        "period vector of a strongly connected graph is strictly positive"
    );
    PeriodVector(ints)
}

/// `z' = z + k·per` with the least `k` making `z' >= 0`. Returns `(z', k)`.
pub fn nonneg_shift<T: Int>(period: &PeriodVector<T>, z: &[T]) -> (Vec<T>, T) {
    assert_eq!(z.len(), period.0.len());
    let k = z
        .iter()
        .zip(&period.0)
        .map(|(zi, pi)| div_ceil(&-zi.clone(), pi))
        .max()
        .expect("nonempty vector");
    let shifted = z
        .iter()
        .zip(&period.0)
        .map(|(zi, pi)| zi.clone() + k.clone() * pi.clone())
        .collect();
    (shifted, k)
}

/// Per-graph lattice data: Laplacian, its Smith decomposition and the
/// period vector.
#[derive(Debug, Clone)]
pub struct Lattice<T> {
    laplacian: Laplacian<T>,
    smith: SmithDecomposition<T>,
    period: PeriodVector<T>,
}

impl<T: Int> Lattice<T> {
    pub fn new(graph: &RibbonDigraph) -> Self {
        let laplacian = laplacian(graph);
        let smith = SmithDecomposition::new(laplacian.matrix());
        let period = period_vector(graph);
        Lattice { laplacian, smith, period }
    }

    pub fn laplacian(&self) -> &Laplacian<T> {
        &self.laplacian
    }

    pub fn period(&self) -> &PeriodVector<T> {
        &self.period
    }

    pub fn smith(&self) -> &SmithDecomposition<T> {
        &self.smith
    }

    /// Some integer `z` with `L z = b`; solutions differ by multiples of the
    /// period vector.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        self.smith.solve(b)
    }

    /// Firing vector `z` with `y = x + L z`, if `x ~ y`.
    pub fn equivalence_witness(&self, x: &Divisor<T>, y: &Divisor<T>) -> Option<Vec<T>> {
        if x.degree() != y.degree() {
            return None;
        }
        self.solve((y - x).chips())
    }

    pub fn divisors_equivalent(&self, x: &Divisor<T>, y: &Divisor<T>) -> bool {
        self.equivalence_witness(x, y).is_some()
    }

    /// Fires `z`: `x + L z`.
    pub fn fire(&self, x: &Divisor<T>, z: &[T]) -> Divisor<T> {
        let delta = self.laplacian.apply(z);
        Divisor::new(
            x.chips()
                .iter()
                .zip(delta)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        )
    }

    /// `|Pic⁰|`, from the invariant factors of `L` with row `deleted_row`
    /// removed. That matrix presents `Div⁰ / Im(L)` in the basis
    /// `1_v - 1_{deleted_row}`.
    pub fn picard_order_deleting(&self, deleted_row: usize) -> T {
        let reduced = self.laplacian.matrix().without_row(deleted_row);
        let smith = SmithDecomposition::new(&reduced);
        assert_eq!(smith.rank(), reduced.rows(), "reduced Laplacian has full row rank");
        smith
            .factors()
            .iter()
            .fold(T::one(), |acc, d| acc * d.clone())
    }

    pub fn picard_order(&self) -> T {
        self.picard_order_deleting(0)
    }
}

pub fn solve_integer<T: Int>(l: &Laplacian<T>, b: &[T]) -> Option<Vec<T>> {
    SmithDecomposition::new(l.matrix()).solve(b)
}

/// Decides `x ~ y`; the witness `z` satisfies `y = x + L z`.
pub fn divisors_equivalent<T: Int>(
    graph: &RibbonDigraph,
    x: &Divisor<T>,
    y: &Divisor<T>,
) -> Option<Vec<T>> {
    if x.degree() != y.degree() {
        return None;
    }
    solve_integer(&laplacian(graph), (y - x).chips())
}

pub fn picard_order<T: Int>(graph: &RibbonDigraph) -> T {
    Lattice::new(graph).picard_order()
}
