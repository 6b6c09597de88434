//! Hermitian eigendecomposition via the cyclic complex Jacobi method.
//!
//! Jacobi is chosen over tridiagonalization for its simplicity and its very
//! small backward error; the matrices handled here (Choi matrices, truncated
//! observables) stay below dimension ~10^3 where the O(n^3) sweeps are cheap.

use crate::cmatrix::{frob_norm, hermitize, require_finite, require_square, CMatrix};
use crate::error::{CoreError, Result};
use crate::scalar::{Scalar, C};

const MAX_SWEEPS: usize = 50;

/// Eigenvalues (ascending) and eigenvectors (columns of a unitary matrix)
/// of a Hermitian matrix, so that `A = U diag(w) U†`.
pub fn eig_hermitian<S: Scalar>(a: &CMatrix<S>) -> Result<(Vec<S>, CMatrix<S>)> {
    let n = require_square(a, "eig_hermitian")?;
    require_finite(a)?;
    if n == 0 {
        return Ok((Vec::new(), CMatrix::<S>::zeros((0, 0))));
    }

    // Work on the Hermitian part; inputs are Hermitian to tolerance only.
    let h = hermitize(a);
    let anorm = frob_norm(&h);
    let mut b: Vec<C<S>> = h.iter().copied().collect();
    let mut v: Vec<C<S>> = vec![C::new(S::zero(), S::zero()); n * n];
    for i in 0..n {
        v[i * n + i] = C::new(S::one(), S::zero());
    }

    if anorm == S::zero() {
        let evals = vec![S::zero(); n];
        let u = unflatten(&v, n);
        return Ok((evals, u));
    }

    let conv_tol = anorm * S::epsilon() * S::lit(4.0);
    let skip_tol = anorm * S::epsilon() * S::lit(1.0e-3);
    let mut converged = false;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + b[p * n + q].norm_sqr();
            }
        }
        let off = (off + off).sqrt();
        if off <= conv_tol {
            converged = true;
            break;
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let beta = b[p * n + q];
                let babs = beta.norm();
                if babs <= skip_tol {
                    continue;
                }
                let alpha = b[p * n + p].re;
                let gamma = b[q * n + q].re;
                let phase = beta / C::new(babs, S::zero());
                let tau = (gamma - alpha) / (babs + babs);
                let t = if tau >= S::zero() {
                    S::one() / (tau + (S::one() + tau * tau).sqrt())
                } else {
                    -S::one() / (-tau + (S::one() + tau * tau).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = t * c;
                let cs = C::new(c, S::zero());
                let sp = phase * C::new(s, S::zero()); // s e^{i phi}
                let spc = sp.conj(); // s e^{-i phi}

                // B <- B J with J[p,p]=c, J[p,q]=s e^{i phi},
                //               J[q,p]=-s e^{-i phi}, J[q,q]=c
                for i in 0..n {
                    let bip = b[i * n + p];
                    let biq = b[i * n + q];
                    b[i * n + p] = bip * cs - biq * spc;
                    b[i * n + q] = bip * sp + biq * cs;
                }
                // B <- J† B
                for j in 0..n {
                    let bpj = b[p * n + j];
                    let bqj = b[q * n + j];
                    b[p * n + j] = bpj * cs - bqj * sp;
                    b[q * n + j] = bpj * spc + bqj * cs;
                }
                // Rotated pivot is zero by construction; enforce exactly.
                b[p * n + q] = C::new(S::zero(), S::zero());
                b[q * n + p] = C::new(S::zero(), S::zero());
                b[p * n + p] = C::new(b[p * n + p].re, S::zero());
                b[q * n + q] = C::new(b[q * n + q].re, S::zero());

                // V <- V J
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * cs - viq * spc;
                    v[i * n + q] = vip * sp + viq * cs;
                }
            }
        }
    }

    if !converged {
        // One final check: the last sweep may have converged.
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + b[p * n + q].norm_sqr();
            }
        }
        if (off + off).sqrt() > conv_tol {
            return Err(CoreError::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    // Ascending sort with matching column permutation.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        b[i * n + i]
            .re
            .partial_cmp(&b[j * n + j].re)
            .expect("finite eigenvalues")
    });
    let evals: Vec<S> = order.iter().map(|&i| b[i * n + i].re).collect();
    let mut u = CMatrix::<S>::zeros((n, n));
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            u[[r, new_col]] = v[r * n + old_col];
        }
    }
    Ok((evals, u))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig_hermitian<S: Scalar>(a: &CMatrix<S>) -> Result<S> {
    let (evals, _) = eig_hermitian(a)?;
    Ok(evals.first().copied().unwrap_or_else(S::zero))
}

fn unflatten<S: Scalar>(v: &[C<S>], n: usize) -> CMatrix<S> {
    let mut m = CMatrix::<S>::zeros((n, n));
    for r in 0..n {
        for c in 0..n {
            m[[r, c]] = v[r * n + c];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{cmat, dagger, eye, frob_norm};
    use crate::scalar::cre;
    use ndarray::Array2;
    use num_complex::Complex;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn identity_spectrum() {
        let (w, _) = eig_hermitian(&eye::<f64>(3)).unwrap();
        assert_eq!(w, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_input_sorted_ascending() {
        let a = cmat::<f64>(2, 2, &[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]);
        let (w, u) = eig_hermitian(&a).unwrap();
        assert_eq!(w, vec![-1.0, 2.0]);
        // standard-basis eigenvectors, up to phase
        assert!((u[[1, 0]].norm() - 1.0).abs() < 1e-14);
        assert!((u[[0, 1]].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetry_forced_spectrum() {
        let a = cmat::<f64>(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let (w, _) = eig_hermitian(&a).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for trial in 0..100 {
            let d = 2 + (trial % 15);
            let mut g = Array2::<Complex<f64>>::zeros((d, d));
            for r in 0..d {
                for c in 0..d {
                    g[[r, c]] = Complex::new(
                        rng.random::<f64>() - 0.5,
                        rng.random::<f64>() - 0.5,
                    );
                }
            }
            let a = crate::cmatrix::hermitize(&g);
            let (w, u) = eig_hermitian(&a).unwrap();
            // reconstruct U diag(w) U†
            let mut lam = Array2::<Complex<f64>>::zeros((d, d));
            for i in 0..d {
                lam[[i, i]] = cre(w[i]);
            }
            let rec = u.dot(&lam).dot(&dagger(&u));
            let err = frob_norm(&(&rec - &a));
            assert!(
                err <= 1e-10 * frob_norm(&a).max(1e-300),
                "reconstruction error {err}"
            );
            // unitarity
            let uu = dagger(&u).dot(&u);
            let dev = frob_norm(&(&uu - &eye::<f64>(d)));
            assert!(dev <= 1e-10, "unitarity deviation {dev}");
            // ascending
            for i in 1..d {
                assert!(w[i] >= w[i - 1]);
            }
        }
    }

    #[test]
    fn rejects_non_square() {
        let m = Array2::<Complex<f64>>::zeros((2, 3));
        assert!(eig_hermitian(&m).is_err());
    }
}
