//! Row- and doubly-stochastic classification.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StochasticError {
    #[error("entry ({row},{col}) = {value} lies outside [0,1]")]
    EntryOutOfRange { row: usize, col: usize, value: f64 },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("not doubly stochastic")]
    NotDoublyStochastic,
    #[error("not row stochastic")]
    NotRowStochastic,
    #[error("matrix has undefined entries")]
    Partial,
    #[error("no perfect matching in the positive support after {terms} terms; tolerance too tight?")]
    MatchingFailure { terms: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StochasticVerdict<T> {
    pub row_stochastic: bool,
    pub doubly_stochastic: bool,
    /// Some entry is undefined.
    pub partial: bool,
    /// `None` for rows containing undefined entries.
    pub row_sums: Vec<Option<T>>,
    /// Column sums over the fully defined rows.
    pub col_sums: Vec<T>,
    pub violations: Vec<String>,
}

/// Classifies a matrix whose entries may be undefined (`None`).
///
/// Row stochasticity is judged on the fully defined rows only; doubly
/// stochastic additionally needs a square, fully defined matrix whose
/// columns also sum to one.
pub fn classify_partial<T: Scalar>(m: &Matrix<Option<T>>, tol: f64) -> Result<StochasticVerdict<T>, StochasticError> {
    let t = T::tolerance(tol);
    let (zero, one) = (T::zero(), T::one());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(x) = m.get(i, j) {
                if *x < zero.clone() - t.clone() || *x > one.clone() + t.clone() {
                    return Err(StochasticError::EntryOutOfRange { row: i, col: j, value: x.to_f64() });
                }
            }
        }
    }

    let mut violations = Vec::new();
    let mut row_sums = Vec::with_capacity(m.rows());
    let mut col_sums = vec![T::zero(); m.cols()];
    let mut partial = false;
    let mut row_stochastic = true;
    for (i, row) in m.iter_rows().enumerate() {
        let defined = row.iter().filter(|x| x.is_some()).count();
        if defined < row.len() {
            partial = true;
            if defined > 0 {
                row_stochastic = false;
                violations.push(format!("row {i} is only partly defined"));
            }
            row_sums.push(None);
            continue;
        }
        let sum = row.iter().flatten().fold(T::zero(), |acc, x| acc + x.clone());
        for (c, x) in col_sums.iter_mut().zip(row.iter().flatten()) {
            *c = c.clone() + x.clone();
        }
        if !sum.approx_eq(&one, &t) {
            row_stochastic = false;
            violations.push(format!("row {i} sums to {sum}"));
        }
        row_sums.push(Some(sum));
    }

    let mut doubly_stochastic = row_stochastic && !partial;
    if !m.is_square() {
        doubly_stochastic = false;
        violations.push(format!("shape {}x{} is not square", m.rows(), m.cols()));
    }
    if !partial {
        for (j, c) in col_sums.iter().enumerate() {
            if !c.approx_eq(&one, &t) {
                doubly_stochastic = false;
                violations.push(format!("column {j} sums to {c}"));
            }
        }
    }
    Ok(StochasticVerdict { row_stochastic, doubly_stochastic, partial, row_sums, col_sums, violations })
}

pub fn classify_stochastic<T: Scalar>(m: &Matrix<T>, tol: f64) -> Result<StochasticVerdict<T>, StochasticError> {
    classify_partial(&m.map(|x| Some(x.clone())), tol)
}
