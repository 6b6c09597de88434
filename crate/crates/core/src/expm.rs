//! Dense matrix exponential by scaling and squaring with diagonal Pade
//! approximants (orders 3/5/7/9/13), following Higham's 2005 parameterization.
//!
//! Eigendecomposition is deliberately avoided: the exponentiated operators
//! here are Liouvillians, which are non-normal.

use crate::cmatrix::{eye, require_finite, require_square, CMatrix};
use crate::error::{CoreError, Result};
use crate::scalar::{cre, Scalar, C};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// exp(A) for a square complex matrix.
pub fn expm<S: Scalar>(a: &CMatrix<S>) -> Result<CMatrix<S>> {
    let n = require_square(a, "expm")?;
    require_finite(a)?;
    if n == 0 {
        return Ok(a.clone());
    }

    let norm = one_norm(a);
    let (u, v, squarings) = pade_u_v(a, norm);
    let numer = &v + &u;
    let denom = &v - &u;
    let mut r = solve_dense(&denom, &numer)?;
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    Ok(r)
}

fn pade_u_v<S: Scalar>(a: &CMatrix<S>, norm: S) -> (CMatrix<S>, CMatrix<S>, usize) {
    let norm = norm.as_f64();
    if norm <= THETA_3 {
        let a2 = a.dot(a);
        let (u, v) = pade_small(a, &[a2], &B3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let a2 = a.dot(a);
        let a4 = a2.dot(&a2);
        let (u, v) = pade_small(a, &[a2, a4], &B5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let a2 = a.dot(a);
        let a4 = a2.dot(&a2);
        let a6 = a4.dot(&a2);
        let (u, v) = pade_small(a, &[a2, a4, a6], &B7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let a2 = a.dot(a);
        let a4 = a2.dot(&a2);
        let a6 = a4.dot(&a2);
        let a8 = a6.dot(&a2);
        let (u, v) = pade_small(a, &[a2, a4, a6, a8], &B9);
        (u, v, 0)
    } else {
        let squarings = ((norm / THETA_13).log2().ceil().max(0.0)) as usize;
        let factor = S::lit(0.5).powi(squarings as i32);
        let a_scaled = a.mapv(|z| z * C::new(factor, S::zero()));
        let (u, v) = pade13(&a_scaled);
        (u, v, squarings)
    }
}

/// Pade orders 3..9: U = A (sum b[2k+1] A^{2k}), V = sum b[2k] A^{2k}.
fn pade_small<S: Scalar>(
    a: &CMatrix<S>,
    even_powers: &[CMatrix<S>],
    b: &[f64],
) -> (CMatrix<S>, CMatrix<S>) {
    let n = a.nrows();
    let id = eye::<S>(n);
    let mut u_poly = id.mapv(|z| z * cre(S::lit(b[1])));
    let mut v = id.mapv(|z| z * cre(S::lit(b[0])));
    for (k, p) in even_powers.iter().enumerate() {
        u_poly = u_poly + p.mapv(|z| z * cre(S::lit(b[2 * k + 3])));
        v = v + p.mapv(|z| z * cre(S::lit(b[2 * k + 2])));
    }
    (a.dot(&u_poly), v)
}

fn pade13<S: Scalar>(a: &CMatrix<S>) -> (CMatrix<S>, CMatrix<S>) {
    let n = a.nrows();
    let id = eye::<S>(n);
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let c = |k: usize| cre(S::lit(B13[k]));

    let w1 = a6.mapv(|z| z * c(13)) + a4.mapv(|z| z * c(11)) + a2.mapv(|z| z * c(9));
    let w2 = a6.mapv(|z| z * c(7))
        + a4.mapv(|z| z * c(5))
        + a2.mapv(|z| z * c(3))
        + id.mapv(|z| z * c(1));
    let u = a.dot(&(a6.dot(&w1) + w2));

    let z1 = a6.mapv(|z| z * c(12)) + a4.mapv(|z| z * c(10)) + a2.mapv(|z| z * c(8));
    let v = a6.dot(&z1)
        + a6.mapv(|z| z * c(6))
        + a4.mapv(|z| z * c(4))
        + a2.mapv(|z| z * c(2))
        + id.mapv(|z| z * c(0));
    (u, v)
}

/// Max column sum of absolute values.
pub fn one_norm<S: Scalar>(a: &CMatrix<S>) -> S {
    let mut best = S::zero();
    for c in 0..a.ncols() {
        let mut col = S::zero();
        for r in 0..a.nrows() {
            col = col + a[[r, c]].norm();
        }
        best = best.max(col);
    }
    best
}

/// Solve A X = B by LU with partial pivoting.
pub fn solve_dense<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> Result<CMatrix<S>> {
    let n = require_square(a, "solve_dense")?;
    if b.nrows() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "solve_dense: rhs has {} rows, expected {n}",
            b.nrows()
        )));
    }
    let m = b.ncols();
    let mut lu: Vec<C<S>> = a.iter().copied().collect();
    let mut piv: Vec<usize> = (0..n).collect();

    for k in 0..n {
        // pivot
        let mut p = k;
        let mut best = lu[k * n + k].norm();
        for r in (k + 1)..n {
            let mag = lu[r * n + k].norm();
            if mag > best {
                best = mag;
                p = r;
            }
        }
        if best == S::zero() {
            return Err(CoreError::SingularMatrix);
        }
        if p != k {
            for c in 0..n {
                lu.swap(k * n + c, p * n + c);
            }
            piv.swap(k, p);
        }
        let pivot = lu[k * n + k];
        for r in (k + 1)..n {
            let factor = lu[r * n + k] / pivot;
            lu[r * n + k] = factor;
            for c in (k + 1)..n {
                let s = lu[k * n + c];
                lu[r * n + c] = lu[r * n + c] - factor * s;
            }
        }
    }

    // permute rhs
    let mut x: Vec<C<S>> = vec![C::new(S::zero(), S::zero()); n * m];
    for r in 0..n {
        for c in 0..m {
            x[r * m + c] = b[[piv[r], c]];
        }
    }
    // forward substitution (unit lower)
    for r in 1..n {
        for k in 0..r {
            let f = lu[r * n + k];
            for c in 0..m {
                let s = x[k * m + c];
                x[r * m + c] = x[r * m + c] - f * s;
            }
        }
    }
    // back substitution
    for r in (0..n).rev() {
        for k in (r + 1)..n {
            let f = lu[r * n + k];
            for c in 0..m {
                let s = x[k * m + c];
                x[r * m + c] = x[r * m + c] - f * s;
            }
        }
        let d = lu[r * n + r];
        for c in 0..m {
            x[r * m + c] = x[r * m + c] / d;
        }
    }

    let mut out = CMatrix::<S>::zeros((n, m));
    for r in 0..n {
        for c in 0..m {
            out[[r, c]] = x[r * m + c];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{cmat, frob_norm};
    use ndarray::Array2;
    use num_complex::Complex;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn exp_zero_is_identity() {
        let z = Array2::<Complex<f64>>::zeros((4, 4));
        let e = expm(&z).unwrap();
        assert!(frob_norm(&(&e - &eye::<f64>(4))) < 1e-15);
    }

    #[test]
    fn exp_diagonal() {
        let a = cmat::<f64>(2, 2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-2.0, 0.0)]);
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]].re - 1.0f64.exp()).abs() < 1e-14);
        assert!((e[[1, 1]].re - (-2.0f64).exp()).abs() < 1e-15);
        assert!(e[[0, 1]].norm() < 1e-15);
    }

    #[test]
    fn exp_nilpotent_truncates() {
        let a = cmat::<f64>(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let e = expm(&a).unwrap();
        let expected = cmat::<f64>(2, 2, &[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!(frob_norm(&(&e - &expected)) < 1e-15);
    }

    #[test]
    fn group_law_commuting() {
        // exp(sA) exp(tA) = exp((s+t)A) for random A with ||A|| <= 2.
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = 3;
            let mut a = Array2::<Complex<f64>>::zeros((d, d));
            for r in 0..d {
                for c in 0..d {
                    a[[r, c]] = Complex::new(
                        0.6 * (rng.random::<f64>() - 0.5),
                        0.6 * (rng.random::<f64>() - 0.5),
                    );
                }
            }
            let (s, t) = (0.45_f64, 1.3_f64);
            let es = expm(&a.mapv(|z| z * Complex::new(s, 0.0))).unwrap();
            let et = expm(&a.mapv(|z| z * Complex::new(t, 0.0))).unwrap();
            let est = expm(&a.mapv(|z| z * Complex::new(s + t, 0.0))).unwrap();
            let err = frob_norm(&(&es.dot(&et) - &est));
            assert!(err <= 1e-10 * frob_norm(&est), "group law error {err}");
        }
    }

    #[test]
    fn large_norm_uses_squaring_and_stays_accurate() {
        // exp on a normal matrix compared against its spectral form
        let a = cmat::<f64>(
            2,
            2,
            &[(0.0, 0.0), (8.0, 0.0), (8.0, 0.0), (0.0, 0.0)],
        );
        // eigenvalues +-8 with (1,1)/sqrt2, (1,-1)/sqrt2
        let e = expm(&a).unwrap();
        let cosh8 = 8.0_f64.cosh();
        let sinh8 = 8.0_f64.sinh();
        assert!((e[[0, 0]].re - cosh8).abs() / cosh8 < 1e-12);
        assert!((e[[0, 1]].re - sinh8).abs() / sinh8 < 1e-12);
    }

    #[test]
    fn rejects_non_square() {
        let m = Array2::<Complex<f64>>::zeros((2, 3));
        assert!(expm(&m).is_err());
    }

    #[test]
    fn solve_dense_round_trip() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let d = 6;
        let mut a = Array2::<Complex<f64>>::zeros((d, d));
        for r in 0..d {
            for c in 0..d {
                a[[r, c]] = Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
        }
        let x_true = eye::<f64>(d).mapv(|z| z * Complex::new(2.0, -1.0));
        let b = a.dot(&x_true);
        let x = solve_dense(&a, &b).unwrap();
        assert!(frob_norm(&(&x - &x_true)) < 1e-12);
    }
}
