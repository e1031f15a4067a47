//! Born-rule probabilities between orthonormal bases.
//!
//! Everything here is generic over the float type; the crate root exposes
//! `f64` aliases.

use num_complex::Complex;
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::Matrix;

pub type ComplexVector<T> = Vec<Complex<T>>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis is not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("basis has {found} vectors in dimension {dimension}")]
    IncompleteBasis { dimension: usize, found: usize },
    #[error("not a projector: {0}")]
    NotProjector(String),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
}

/// `<x, y>` with the conjugate on the left argument.
pub fn inner<T: Float>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter().zip(y).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

pub fn norm<T: Float>(x: &[Complex<T>]) -> T {
    x.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
}

fn tol_of<T: Float>(tol: f64) -> T {
    T::from(tol).unwrap_or_else(T::epsilon)
}

fn to_f64<T: Float>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// An ordered orthonormal family of vectors in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisContext<T> {
    dimension: usize,
    vectors: Vec<ComplexVector<T>>,
}

impl<T: Float> BasisContext<T> {
    /// Checks only that every vector has length `dimension`.
    pub fn new(dimension: usize, vectors: Vec<ComplexVector<T>>) -> Result<Self, QuantumError> {
        for v in &vectors {
            if v.len() != dimension {
                return Err(QuantumError::DimensionMismatch { expected: dimension, found: v.len() });
            }
        }
        Ok(Self { dimension, vectors })
    }

    /// Builds from real components.
    pub fn from_real(vectors: &[Vec<T>]) -> Result<Self, QuantumError> {
        let dimension = vectors.first().map_or(0, Vec::len);
        Self::new(dimension, vectors.iter().map(|v| v.iter().map(|&x| Complex::new(x, T::zero())).collect()).collect())
    }

    pub fn standard(dimension: usize) -> Self {
        let vectors = (0..dimension)
            .map(|i| {
                (0..dimension).map(|j| Complex::new(if i == j { T::one() } else { T::zero() }, T::zero())).collect()
            })
            .collect();
        Self { dimension, vectors }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn check_orthonormal(&self, tol: f64) -> Result<(), QuantumError> {
        let tol = tol_of::<T>(tol);
        for (i, v) in self.vectors.iter().enumerate() {
            let n = norm(v);
            if (n - T::one()).abs() > tol {
                return Err(QuantumError::NotOrthonormal(format!("vector {i} has norm {}", to_f64(n))));
            }
            for (j, w) in self.vectors.iter().enumerate().skip(i + 1) {
                let overlap = inner(v, w).norm();
                if overlap > tol {
                    return Err(QuantumError::NotOrthonormal(format!("|<v{i},v{j}>| = {}", to_f64(overlap))));
                }
            }
        }
        Ok(())
    }

    fn check_full(&self, tol: f64) -> Result<(), QuantumError> {
        if self.vectors.len() != self.dimension {
            return Err(QuantumError::IncompleteBasis { dimension: self.dimension, found: self.vectors.len() });
        }
        self.check_orthonormal(tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    vector: ComplexVector<T>,
}

impl<T: Float> PureState<T> {
    pub fn new(vector: ComplexVector<T>, tol: f64) -> Result<Self, QuantumError> {
        let n = norm(&vector);
        if (n - T::one()).abs() > tol_of(tol) {
            return Err(QuantumError::NotNormalized(to_f64(n)));
        }
        Ok(Self { vector })
    }

    pub fn vector(&self) -> &[Complex<T>] {
        &self.vector
    }
}

/// Orthogonal projector `E` on `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T> {
    matrix: Matrix<Complex<T>>,
}

impl<T: Float> Projector<T> {
    /// Rank-1 projector `|x><x|`.
    pub fn from_vector(x: &[Complex<T>]) -> Self {
        let d = x.len();
        Self { matrix: Matrix::from_fn(d, d, |i, j| x[i] * x[j].conj()) }
    }

    /// Accepts a matrix that is Hermitian and idempotent within `tol`.
    pub fn new(matrix: Matrix<Complex<T>>, tol: f64) -> Result<Self, QuantumError> {
        if !matrix.is_square() {
            return Err(QuantumError::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let t = tol_of::<T>(tol);
        let d = matrix.rows();
        for i in 0..d {
            for j in 0..d {
                if (*matrix.get(i, j) - matrix.get(j, i).conj()).norm() > t {
                    return Err(QuantumError::NotProjector(format!("not Hermitian at ({i},{j})")));
                }
            }
        }
        let square = multiply(&matrix, &matrix);
        for i in 0..d {
            for j in 0..d {
                if (*square.get(i, j) - *matrix.get(i, j)).norm() > t {
                    return Err(QuantumError::NotProjector(format!("not idempotent at ({i},{j})")));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix<Complex<T>> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }
}

fn multiply<T: Float>(a: &Matrix<Complex<T>>, b: &Matrix<Complex<T>>) -> Matrix<Complex<T>> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + *a.get(i, k) * *b.get(k, j))
    })
}

/// `Re Trace(E F)`, summing the diagonal of the product directly.
pub fn projector_trace_prob<T: Float>(e: &Projector<T>, f: &Projector<T>) -> Result<T, QuantumError> {
    if e.dimension() != f.dimension() {
        return Err(QuantumError::DimensionMismatch { expected: e.dimension(), found: f.dimension() });
    }
    let d = e.dimension();
    let mut trace = Complex::new(T::zero(), T::zero());
    for i in 0..d {
        for k in 0..d {
            trace = trace + *e.matrix.get(i, k) * *f.matrix.get(k, i);
        }
    }
    Ok(trace.re)
}

/// Matrix of `|<e_i, f_j>|^2`: row `i` conditions on the `i`-th vector of
/// `first`, column `j` is the outcome of the `j`-th vector of `second`.
pub fn born_cond_prob_matrix<T: Float>(
    first: &BasisContext<T>,
    second: &BasisContext<T>,
    tol: f64,
) -> Result<Matrix<T>, QuantumError> {
    if first.dimension != second.dimension {
        return Err(QuantumError::DimensionMismatch { expected: first.dimension, found: second.dimension });
    }
    first.check_full(tol)?;
    second.check_full(tol)?;
    Ok(Matrix::from_fn(first.len(), second.len(), |i, j| inner(&first.vectors[i], &second.vectors[j]).norm_sqr()))
}

/// Components `|<psi, e_i>|^2` over the basis.
pub fn state_probability_vector<T: Float>(
    state: &PureState<T>,
    basis: &BasisContext<T>,
) -> Result<Vec<T>, QuantumError> {
    if state.vector.len() != basis.dimension {
        return Err(QuantumError::DimensionMismatch { expected: basis.dimension, found: state.vector.len() });
    }
    Ok(basis.vectors.iter().map(|e| inner(&state.vector, e).norm_sqr()).collect())
}

/// Haar-style random orthonormal basis: Gram-Schmidt on a matrix of
/// independent standard complex Gaussian entries.
pub fn random_orthonormal_basis<T, R>(dimension: usize, rng: &mut R) -> BasisContext<T>
where
    T: Float,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    loop {
        let raw: Vec<ComplexVector<T>> = (0..dimension)
            .map(|_| {
                (0..dimension).map(|_| Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect()
            })
            .collect();
        if let Some(vectors) = gram_schmidt(raw) {
            return BasisContext { dimension, vectors };
        }
    }
}

fn gram_schmidt<T: Float>(raw: Vec<ComplexVector<T>>) -> Option<Vec<ComplexVector<T>>> {
    let mut out: Vec<ComplexVector<T>> = Vec::with_capacity(raw.len());
    for mut v in raw {
        // two passes keep the loss of orthogonality at roundoff level
        for _ in 0..2 {
            for u in &out {
                let c = inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi = *vi - *ui * c;
                }
            }
        }
        let n = norm(&v);
        if n <= T::epsilon().sqrt() {
            return None;
        }
        out.push(v.into_iter().map(|x| x / n).collect());
    }
    Some(out)
}
