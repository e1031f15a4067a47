//! Convex decompositions of stochastic matrices into 0/1 vertices.
//!
//! * [`birkhoff_decompose`]: doubly stochastic matrix as a convex sum of
//!   permutation matrices, found greedily by perfect matchings on the
//!   positive support. Every step zeroes at least one residual entry and
//!   moves the residual to a strictly lower-dimensional face of the
//!   Birkhoff polytope, so at most `(n-1)^2 + 1` terms are produced.
//! * [`row_polytope_decompose`]: row-stochastic matrix as a convex sum of
//!   matrices with exactly one 1 per row, by coupled leftmost-minimum
//!   extraction; at most `n(m-1) + 1` terms.

use crate::matching::perfect_matching;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::stochastic::{classify_stochastic, StochasticError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    Permutation,
    RowVertex,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Permutation => "permutation",
            DecompositionKind::RowVertex => "row-vertex",
        }
    }
}

/// One vertex of the decomposition. `vertex[i]` is the column holding the
/// single 1 of row `i` (for permutations, the image of `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub coeff: T,
    pub vertex: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub kind: DecompositionKind,
    pub rows: usize,
    pub cols: usize,
    pub terms: Vec<Term<T>>,
}

impl<T: Scalar> Decomposition<T> {
    pub fn vertex_matrix(&self, k: usize) -> Matrix<T> {
        Matrix::from_row_selection(&self.terms[k].vertex, self.cols)
    }

    pub fn coefficient_sum(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc + t.coeff.clone())
    }

    /// `Σ coeff_k · vertex_k`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for term in &self.terms {
            for (i, &j) in term.vertex.iter().enumerate() {
                let cell: &mut T = out.get_mut(i, j);
                *cell = cell.clone() + term.coeff.clone();
            }
        }
        out
    }

    /// Every vertex has one 1 per row and, for permutations, one per column.
    pub fn vertices_well_formed(&self) -> bool {
        self.terms.iter().all(|t| {
            t.vertex.len() == self.rows
                && t.vertex.iter().all(|&j| j < self.cols)
                && (self.kind == DecompositionKind::RowVertex || {
                    let mut seen = vec![false; self.cols];
                    t.vertex.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
                })
        })
    }
}

fn clamp_support<T: Scalar>(m: &mut Matrix<T>, threshold: &T) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get_mut(i, j);
            if *x <= *threshold {
                *x = T::zero();
            }
        }
    }
}

fn max_entry<T: Scalar>(m: &Matrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, x| if *x > acc { x.clone() } else { acc })
}

/// Birkhoff–von Neumann decomposition of a doubly stochastic matrix.
///
/// `tol` bounds the admissible row/column-sum defect of the input. An
/// entry counts as support iff it exceeds the scalar's default threshold
/// (1e-12 for `f64`, exactly 0 for rationals).
pub fn birkhoff_decompose<T: Scalar>(m: &Matrix<T>, tol: f64) -> Result<Decomposition<T>, StochasticError> {
    if !m.is_square() {
        return Err(StochasticError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !classify_stochastic(m, tol)?.doubly_stochastic {
        return Err(StochasticError::NotDoublyStochastic);
    }
    let n = m.rows();
    let threshold = T::tolerance(T::DEFAULT_TOL);
    let mut residual = m.clone();
    clamp_support(&mut residual, &threshold);
    let mut terms = Vec::new();
    while max_entry(&residual) > T::zero() {
        let adjacency: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).filter(|&j| *residual.get(i, j) > T::zero()).collect()).collect();
        let Some(perm) = perfect_matching(&adjacency, n) else {
            if max_entry(&residual) <= T::tolerance(tol) {
                break;
            }
            return Err(StochasticError::MatchingFailure { terms: terms.len() });
        };
        let (argmin, coeff) = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, residual.get(i, j).clone()))
            .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
            .expect("n > 0");
        for (i, &j) in perm.iter().enumerate() {
            let cell = residual.get_mut(i, j);
            *cell = if i == argmin { T::zero() } else { cell.clone() - coeff.clone() };
        }
        clamp_support(&mut residual, &threshold);
        terms.push(Term { coeff, vertex: perm });
    }
    Ok(Decomposition { kind: DecompositionKind::Permutation, rows: n, cols: n, terms })
}

/// Row-polytope decomposition with the scalar's default tolerance.
pub fn row_polytope_decompose<T: Scalar>(m: &Matrix<T>) -> Result<Decomposition<T>, StochasticError> {
    row_polytope_decompose_tol(m, T::DEFAULT_TOL)
}

/// Decomposes a row-stochastic matrix: at each step every row selects its
/// leftmost positive residual column, the smallest selected value becomes
/// the coefficient, and it is subtracted along the selection.
pub fn row_polytope_decompose_tol<T: Scalar>(m: &Matrix<T>, tol: f64) -> Result<Decomposition<T>, StochasticError> {
    if !classify_stochastic(m, tol)?.row_stochastic {
        return Err(StochasticError::NotRowStochastic);
    }
    let (rows, cols) = (m.rows(), m.cols());
    let threshold = T::tolerance(T::DEFAULT_TOL);
    let mut residual = m.clone();
    clamp_support(&mut residual, &threshold);
    let mut terms = Vec::new();
    loop {
        let picks: Vec<Option<usize>> =
            (0..rows).map(|i| (0..cols).find(|&j| *residual.get(i, j) > T::zero())).collect();
        if picks.iter().all(Option::is_none) {
            break;
        }
        if picks.iter().any(Option::is_none) {
            // rows ran out unevenly; only roundoff may remain
            if max_entry(&residual) <= T::tolerance(tol) {
                break;
            }
            return Err(StochasticError::NotRowStochastic);
        }
        let vertex: Vec<usize> = picks.into_iter().map(Option::unwrap).collect();
        let (argmin, coeff) = vertex
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, residual.get(i, j).clone()))
            .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
            .expect("rows > 0");
        for (i, &j) in vertex.iter().enumerate() {
            let cell = residual.get_mut(i, j);
            *cell = if i == argmin { T::zero() } else { cell.clone() - coeff.clone() };
        }
        clamp_support(&mut residual, &threshold);
        terms.push(Term { coeff, vertex });
    }
    Ok(Decomposition { kind: DecompositionKind::RowVertex, rows, cols, terms })
}

/// Decomposes a matrix with undefined entries: always refused.
pub fn reject_partial<T>(m: &Matrix<Option<T>>) -> Result<Matrix<T>, StochasticError>
where
    T: Clone,
{
    if m.iter().any(Option::is_none) {
        return Err(StochasticError::Partial);
    }
    Ok(m.map(|x| x.clone().expect("checked")))
}
