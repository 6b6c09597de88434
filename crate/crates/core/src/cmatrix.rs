//! Dense complex matrices and the small linear-algebra vocabulary used
//! throughout: Hilbert-Schmidt inner product, Kronecker products, and the
//! column-stacking vec/unvec pair.
//!
//! Vectorization convention (normative repo-wide): column stacking, so
//! `vec(X)[c*d + r] = X[r, c]` and the map `X -> A X B` has superoperator
//! matrix `B^T (x) A`.

use ndarray::{Array1, Array2};
use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::scalar::{cre, Scalar, C};

/// Dense complex matrix over a generic real scalar.
pub type CMatrix<S> = Array2<Complex<S>>;

/// Dense complex vector.
pub type CVector<S> = Array1<Complex<S>>;

/// Identity matrix.
pub fn eye<S: Scalar>(d: usize) -> CMatrix<S> {
    let mut m = CMatrix::<S>::zeros((d, d));
    for i in 0..d {
        m[[i, i]] = cre(S::one());
    }
    m
}

/// Build a matrix from `(re, im)` pairs in row-major order.
pub fn cmat<S: Scalar>(rows: usize, cols: usize, entries: &[(f64, f64)]) -> CMatrix<S> {
    assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
    let data: Vec<C<S>> = entries
        .iter()
        .map(|&(re, im)| Complex::new(S::lit(re), S::lit(im)))
        .collect();
    Array2::from_shape_vec((rows, cols), data).expect("shape")
}

/// Conjugate transpose.
pub fn dagger<S: Scalar>(m: &CMatrix<S>) -> CMatrix<S> {
    let mut out = CMatrix::<S>::zeros((m.ncols(), m.nrows()));
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out[[c, r]] = m[[r, c]].conj();
        }
    }
    out
}

/// Entrywise scaling by a complex factor.
pub fn scale<S: Scalar>(m: &CMatrix<S>, z: C<S>) -> CMatrix<S> {
    m.mapv(|x| x * z)
}

pub fn trace<S: Scalar>(m: &CMatrix<S>) -> C<S> {
    let mut t = C::<S>::new(S::zero(), S::zero());
    for i in 0..m.nrows().min(m.ncols()) {
        t = t + m[[i, i]];
    }
    t
}

/// Frobenius norm.
pub fn frob_norm<S: Scalar>(m: &CMatrix<S>) -> S {
    m.iter()
        .fold(S::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Hilbert-Schmidt inner product Tr(A† B).
pub fn hs_inner<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> C<S> {
    debug_assert_eq!(a.dim(), b.dim());
    let mut acc = C::<S>::new(S::zero(), S::zero());
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc + x.conj() * *y;
    }
    acc
}

pub fn commutator<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> CMatrix<S> {
    a.dot(b) - b.dot(a)
}

pub fn anticommutator<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> CMatrix<S> {
    a.dot(b) + b.dot(a)
}

/// Kronecker product A (x) B.
pub fn kron<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> CMatrix<S> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = CMatrix::<S>::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Column-stacking vectorization: `vec(X)[c*d + r] = X[r, c]`.
pub fn vec_col<S: Scalar>(x: &CMatrix<S>) -> CVector<S> {
    let (d, c) = x.dim();
    let mut v = CVector::<S>::zeros(d * c);
    for col in 0..c {
        for row in 0..d {
            v[col * d + row] = x[[row, col]];
        }
    }
    v
}

/// Inverse of [`vec_col`] for a square `rows x cols` target.
pub fn unvec_col<S: Scalar>(v: &CVector<S>, rows: usize, cols: usize) -> CMatrix<S> {
    assert_eq!(v.len(), rows * cols);
    let mut x = CMatrix::<S>::zeros((rows, cols));
    for col in 0..cols {
        for row in 0..rows {
            x[[row, col]] = v[col * rows + row];
        }
    }
    x
}

/// ||M - M†||_F.
pub fn herm_deviation<S: Scalar>(m: &CMatrix<S>) -> S {
    let mut acc = S::zero();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let d = m[[r, c]] - m[[c, r]].conj();
            acc = acc + d.norm_sqr();
        }
    }
    acc.sqrt()
}

/// Hermitian part (M + M†)/2.
pub fn hermitize<S: Scalar>(m: &CMatrix<S>) -> CMatrix<S> {
    let half = cre(S::lit(0.5));
    let mut out = m.clone();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out[[r, c]] = (m[[r, c]] + m[[c, r]].conj()) * half;
        }
    }
    out
}

pub fn all_finite<S: Scalar>(m: &CMatrix<S>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn max_abs<S: Scalar>(m: &CMatrix<S>) -> S {
    m.iter().fold(S::zero(), |acc, z| acc.max(z.norm()))
}

/// Leading `keep x keep` block, used for interior projections of truncated
/// bases.
pub fn leading_block<S: Scalar>(m: &CMatrix<S>, keep: usize) -> CMatrix<S> {
    assert!(keep <= m.nrows() && keep <= m.ncols());
    let mut out = CMatrix::<S>::zeros((keep, keep));
    for r in 0..keep {
        for c in 0..keep {
            out[[r, c]] = m[[r, c]];
        }
    }
    out
}

/// Require a square matrix, reporting the context on failure.
pub fn require_square<S: Scalar>(m: &CMatrix<S>, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(CoreError::DimensionMismatch(format!(
            "{what}: expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

/// Require all entries finite.
pub fn require_finite<S: Scalar>(m: &CMatrix<S>) -> Result<()> {
    if all_finite(m) {
        Ok(())
    } else {
        Err(CoreError::NonFiniteEntries)
    }
}
