//! Linear maps on operators: superoperator matrices, Choi matrices, complete
//! positivity certification, Kraus extraction, effects, and Heisenberg /
//! Schroedinger duality.
//!
//! Conventions (normative repo-wide):
//! - column-stacking vectorization, `X -> A X B` has matrix `B^T (x) A`;
//! - unnormalized Choi matrix `C = sum_ij E_ij (x) map(E_ij)`, so `Tr C = d`
//!   for trace-preserving maps;
//! - CP is decided by the Choi spectrum; the quadratic-form test over states
//!   and operator blocks is retained as a sampled cross-check and as the
//!   witness generator.

use serde::{Deserialize, Serialize};

use crate::cmatrix::{
    dagger, eye, frob_norm, herm_deviation, hermitize, require_finite, require_square, unvec_col,
    vec_col, CMatrix, CVector,
};
use crate::eigh::{eig_hermitian, min_eig_hermitian};
use crate::error::{CoreError, Result};
use crate::scalar::{cre, Scalar, C};

/// Which side of the state/observable duality a map acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Schroedinger,
    Heisenberg,
}

/// A linear map on d x d operators, stored as a d^2 x d^2 matrix acting on
/// column-stacked vectorizations.
#[derive(Debug, Clone)]
pub struct SuperOperator<S: Scalar> {
    dim: usize,
    matrix: CMatrix<S>,
    picture: Picture,
}

/// Choi representation of a map; the CP certificate lives here.
#[derive(Debug, Clone)]
pub struct ChoiMatrix<S: Scalar> {
    dim: usize,
    matrix: CMatrix<S>,
}

/// Kraus operators {A_k} with cached effect F = sum A_k† A_k.
///
/// Valid Kraus sets describe operations: 0 <= F <= 1 (to 1e-10).
#[derive(Debug, Clone)]
pub struct KrausSet<S: Scalar> {
    dim: usize,
    operators: Vec<CMatrix<S>>,
    effect: CMatrix<S>,
}

/// CP verdict with the minimum Choi eigenvalue for diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct CpVerdict<S> {
    pub is_cp: bool,
    pub min_choi_eig: S,
}

/// Explicit violating instance of the positivity quadratic form
/// `sum_ij <psi_i| map'(B_i† B_j) |psi_j>` for a non-CP map.
#[derive(Debug, Clone)]
pub struct CpWitness<S: Scalar> {
    pub states: Vec<CVector<S>>,
    pub operators: Vec<CMatrix<S>>,
    pub value: S,
}

impl<S: Scalar> SuperOperator<S> {
    pub fn new(dim: usize, matrix: CMatrix<S>, picture: Picture) -> Result<Self> {
        let n = require_square(&matrix, "SuperOperator")?;
        require_finite(&matrix)?;
        if n != dim * dim {
            return Err(CoreError::DimensionMismatch(format!(
                "SuperOperator: matrix is {n}x{n}, expected {0}x{0} for dim {dim}",
                dim * dim
            )));
        }
        Ok(Self {
            dim,
            matrix,
            picture,
        })
    }

    pub fn identity(dim: usize, picture: Picture) -> Self {
        Self {
            dim,
            matrix: eye(dim * dim),
            picture,
        }
    }

    /// Conjugation map X -> U X U†.
    pub fn from_conjugation(u: &CMatrix<S>, picture: Picture) -> Result<Self> {
        let d = require_square(u, "from_conjugation")?;
        let uc = u.mapv(|z| z.conj());
        Self::new(d, crate::cmatrix::kron(&uc, u), picture)
    }

    /// Left multiplication X -> A X.
    pub fn left_multiplication(a: &CMatrix<S>, picture: Picture) -> Result<Self> {
        let d = require_square(a, "left_multiplication")?;
        Self::new(d, crate::cmatrix::kron(&eye(d), a), picture)
    }

    /// The transpose map X -> X^T.
    pub fn transpose_map(dim: usize, picture: Picture) -> Self {
        let n = dim * dim;
        let mut m = CMatrix::<S>::zeros((n, n));
        for r in 0..dim {
            for c in 0..dim {
                m[[c * dim + r, r * dim + c]] = cre(S::one());
            }
        }
        Self {
            dim,
            matrix: m,
            picture,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    pub fn picture(&self) -> Picture {
        self.picture
    }

    /// Apply the map to a d x d matrix.
    pub fn apply(&self, x: &CMatrix<S>) -> Result<CMatrix<S>> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(CoreError::DimensionMismatch(format!(
                "apply: operand is {}x{}, map dim is {}",
                x.nrows(),
                x.ncols(),
                self.dim
            )));
        }
        let v = self.matrix.dot(&vec_col(x));
        Ok(unvec_col(&v, self.dim, self.dim))
    }

    /// Hilbert-Schmidt adjoint; toggles the picture flag.
    pub fn adjoint(&self) -> Self {
        let picture = match self.picture {
            Picture::Schroedinger => Picture::Heisenberg,
            Picture::Heisenberg => Picture::Schroedinger,
        };
        Self {
            dim: self.dim,
            matrix: dagger(&self.matrix),
            picture,
        }
    }

    /// The same map expressed in the requested picture.
    pub fn in_picture(&self, picture: Picture) -> Self {
        if self.picture == picture {
            self.clone()
        } else {
            self.adjoint()
        }
    }

    /// Choi matrix `C = sum_ij E_ij (x) map(E_ij)` (index reshuffle).
    pub fn choi(&self) -> ChoiMatrix<S> {
        let d = self.dim;
        let n = d * d;
        let mut c = CMatrix::<S>::zeros((n, n));
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        c[[i * d + k, j * d + l]] = self.matrix[[l * d + k, j * d + i]];
                    }
                }
            }
        }
        ChoiMatrix { dim: d, matrix: c }
    }

    /// Whether the Choi matrix is Hermitian to 1e-10 (relative).
    pub fn is_hermiticity_preserving(&self) -> bool {
        self.choi().herm_deviation_ok()
    }

    /// Tensor product with another map (same picture required); operand
    /// ordering matches the Hilbert-space ordering `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.picture != other.picture {
            return Err(CoreError::Domain(
                "tensor: pictures must match".to_string(),
            ));
        }
        let (d1, d2) = (self.dim, other.dim);
        let dd = d1 * d2;
        let n = dd * dd;
        let mut m = CMatrix::<S>::zeros((n, n));
        let idx = |r: usize, c: usize, d: usize| c * d + r;
        for r1 in 0..d1 {
            for c1 in 0..d1 {
                for r1p in 0..d1 {
                    for c1p in 0..d1 {
                        let s1 = self.matrix[[idx(r1, c1, d1), idx(r1p, c1p, d1)]];
                        if s1.norm_sqr() == S::zero() {
                            continue;
                        }
                        for r2 in 0..d2 {
                            for c2 in 0..d2 {
                                for r2p in 0..d2 {
                                    for c2p in 0..d2 {
                                        let s2 = other.matrix
                                            [[idx(r2, c2, d2), idx(r2p, c2p, d2)]];
                                        let row = idx(r1 * d2 + r2, c1 * d2 + c2, dd);
                                        let col = idx(r1p * d2 + r2p, c1p * d2 + c2p, dd);
                                        m[[row, col]] = s1 * s2;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Self::new(dd, m, self.picture)
    }

    /// Tensor with the identity map on an n-level ancilla.
    pub fn tensor_with_identity(&self, n: usize) -> Result<Self> {
        self.tensor(&Self::identity(n, self.picture))
    }
}

impl<S: Scalar> ChoiMatrix<S> {
    pub fn new(dim: usize, matrix: CMatrix<S>) -> Result<Self> {
        let n = require_square(&matrix, "ChoiMatrix")?;
        require_finite(&matrix)?;
        if n != dim * dim {
            return Err(CoreError::DimensionMismatch(format!(
                "ChoiMatrix: matrix is {n}x{n}, expected dim^2 = {}",
                dim * dim
            )));
        }
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    fn herm_deviation_ok(&self) -> bool {
        let dev = herm_deviation(&self.matrix);
        dev <= S::lit(1e-10) * S::one().max(frob_norm(&self.matrix))
    }

    /// Reconstruct the superoperator (inverse reshuffle).
    pub fn to_superop(&self, picture: Picture) -> SuperOperator<S> {
        let d = self.dim;
        let n = d * d;
        let mut m = CMatrix::<S>::zeros((n, n));
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        m[[l * d + k, j * d + i]] = self.matrix[[i * d + k, j * d + l]];
                    }
                }
            }
        }
        SuperOperator {
            dim: d,
            matrix: m,
            picture,
        }
    }

    pub fn min_eig(&self) -> Result<S> {
        min_eig_hermitian(&self.matrix)
    }

    /// Partial trace over the output (second) factor: `M[i,j] = sum_k
    /// C[(i,k),(j,k)]`; equals the identity iff the map is trace preserving.
    pub fn partial_trace_output(&self) -> CMatrix<S> {
        let d = self.dim;
        let mut m = CMatrix::<S>::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                let mut acc = C::<S>::new(S::zero(), S::zero());
                for k in 0..d {
                    acc = acc + self.matrix[[i * d + k, j * d + k]];
                }
                m[[i, j]] = acc;
            }
        }
        m
    }

    /// Partial trace over the input (first) factor: `M[k,l] = sum_i
    /// C[(i,k),(i,l)]`; equals the identity iff the dual map is unital.
    pub fn partial_trace_input(&self) -> CMatrix<S> {
        let d = self.dim;
        let mut m = CMatrix::<S>::zeros((d, d));
        for k in 0..d {
            for l in 0..d {
                let mut acc = C::<S>::new(S::zero(), S::zero());
                for i in 0..d {
                    acc = acc + self.matrix[[i * d + k, i * d + l]];
                }
                m[[k, l]] = acc;
            }
        }
        m
    }
}

impl<S: Scalar> KrausSet<S> {
    /// Validates equal square dimensions and the operation condition
    /// `0 <= F <= 1` (to `tol`).
    pub fn new(operators: Vec<CMatrix<S>>, tol: S) -> Result<Self> {
        if operators.is_empty() {
            return Err(CoreError::Domain(
                "KrausSet requires at least one operator".to_string(),
            ));
        }
        let d = require_square(&operators[0], "KrausSet")?;
        for op in &operators {
            require_finite(op)?;
            if op.nrows() != d || op.ncols() != d {
                return Err(CoreError::DimensionMismatch(
                    "KrausSet: operators must share one square dimension".to_string(),
                ));
            }
        }
        let mut effect = CMatrix::<S>::zeros((d, d));
        for op in &operators {
            effect = effect + dagger(op).dot(op);
        }
        let evals = eig_hermitian(&effect)?.0;
        let min = evals.first().copied().unwrap_or_else(S::zero);
        let max = evals.last().copied().unwrap_or_else(S::zero);
        if min < -tol {
            return Err(CoreError::NotPsd {
                min_eig: min.as_f64(),
            });
        }
        if max > S::one() + tol {
            return Err(CoreError::InvalidState(format!(
                "effect exceeds identity: max eigenvalue {:.12}",
                max.as_f64()
            )));
        }
        Ok(Self {
            dim: d,
            operators,
            effect,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[CMatrix<S>] {
        &self.operators
    }

    pub fn effect(&self) -> &CMatrix<S> {
        &self.effect
    }

    /// Schroedinger picture implements `X -> sum A_k X A_k†`; Heisenberg
    /// implements `B -> sum A_k† B A_k`. The two are Hilbert-Schmidt adjoints.
    pub fn to_superop(&self, picture: Picture) -> SuperOperator<S> {
        let d = self.dim;
        let n = d * d;
        let mut m = CMatrix::<S>::zeros((n, n));
        for a in &self.operators {
            let term = match picture {
                // X -> A X A†:  B_right = A†, so B^T (x) A = conj(A) (x) A
                Picture::Schroedinger => {
                    crate::cmatrix::kron(&a.mapv(|z| z.conj()), a)
                }
                // B -> A† B A:  A_left = A†, B_right = A, so A^T (x) A†
                Picture::Heisenberg => {
                    crate::cmatrix::kron(&a.t().to_owned(), &dagger(a))
                }
            };
            m = m + term;
        }
        SuperOperator {
            dim: d,
            matrix: m,
            picture,
        }
    }

    /// Kraus extraction from a PSD Choi matrix: `A_k = sqrt(w_k) unvec(v_k)`
    /// over eigenpairs with `w_k > rank_tol`.
    pub fn from_choi(choi: &ChoiMatrix<S>, rank_tol: S) -> Result<Self> {
        let d = choi.dim;
        let (evals, vecs) = eig_hermitian(&choi.matrix)?;
        if let Some(&min) = evals.first() {
            if min < -rank_tol {
                return Err(CoreError::NotCompletelyPositive {
                    min_eig: min.as_f64(),
                });
            }
        }
        let mut operators = Vec::new();
        for (k, &w) in evals.iter().enumerate() {
            if w > rank_tol {
                let col: CVector<S> = vecs.column(k).to_owned();
                let a = unvec_col(&col, d, d).mapv(|z| z * cre(w.sqrt()));
                operators.push(a);
            }
        }
        if operators.is_empty() {
            // zero map: keep a single zero operator so the set stays well formed
            operators.push(CMatrix::<S>::zeros((d, d)));
        }
        Self::new(operators, S::lit(1e-8))
    }
}

/// CP certification via the Choi spectrum.
///
/// Errors with [`CoreError::NotHermiticityPreserving`] when the Choi matrix is
/// not Hermitian, in which case no CP verdict is meaningful.
pub fn is_completely_positive<S: Scalar>(
    map: &SuperOperator<S>,
    tol: S,
) -> Result<CpVerdict<S>> {
    let choi = map.choi();
    let dev = herm_deviation(&choi.matrix);
    if dev > S::lit(1e-10) * S::one().max(frob_norm(&choi.matrix)) {
        return Err(CoreError::NotHermiticityPreserving {
            deviation: dev.as_f64(),
        });
    }
    let min_choi_eig = min_eig_hermitian(&hermitize(&choi.matrix))?;
    Ok(CpVerdict {
        is_cp: min_choi_eig >= -tol,
        min_choi_eig,
    })
}

/// Trace preservation (Schroedinger) or unitality of the dual (Heisenberg),
/// decided through the Choi partial trace.
pub fn is_trace_preserving<S: Scalar>(map: &SuperOperator<S>, tol: S) -> bool {
    let choi = map.choi();
    let pt = match map.picture {
        Picture::Schroedinger => choi.partial_trace_output(),
        Picture::Heisenberg => choi.partial_trace_input(),
    };
    frob_norm(&(&pt - &eye::<S>(map.dim))) <= tol
}

/// Direct evaluation of the positivity quadratic form
/// `sum_ij <psi_i| map'(B_i† B_j) |psi_j>` with `map'` the Heisenberg-picture
/// version of `map`. Returns the (real) value.
pub fn positivity_form<S: Scalar>(
    map: &SuperOperator<S>,
    states: &[CVector<S>],
    operators: &[CMatrix<S>],
) -> Result<S> {
    if states.len() != operators.len() {
        return Err(CoreError::DimensionMismatch(
            "positivity_form: need as many states as operators".to_string(),
        ));
    }
    let heis = map.in_picture(Picture::Heisenberg);
    let mut value = C::<S>::new(S::zero(), S::zero());
    for (i, (psi_i, b_i)) in states.iter().zip(operators).enumerate() {
        for (j, (psi_j, b_j)) in states.iter().zip(operators).enumerate() {
            let _ = (i, j);
            let block = dagger(b_i).dot(b_j);
            let mapped = heis.apply(&block)?;
            // <psi_i| mapped |psi_j>
            let mut acc = C::<S>::new(S::zero(), S::zero());
            for r in 0..mapped.nrows() {
                for c in 0..mapped.ncols() {
                    acc = acc + psi_i[r].conj() * mapped[[r, c]] * psi_j[c];
                }
            }
            value = value + acc;
        }
    }
    Ok(value.re)
}

/// For a non-CP map, builds `n <= d` states and operator blocks on which the
/// positivity quadratic form is negative, from the most negative Choi
/// eigenvector of the Heisenberg-picture map. Returns `None` for CP maps.
pub fn cp_violation_witness<S: Scalar>(
    map: &SuperOperator<S>,
    tol: S,
) -> Result<Option<CpWitness<S>>> {
    let heis = map.in_picture(Picture::Heisenberg);
    let choi = heis.choi();
    let dev = herm_deviation(&choi.matrix);
    if dev > S::lit(1e-10) * S::one().max(frob_norm(&choi.matrix)) {
        return Err(CoreError::NotHermiticityPreserving {
            deviation: dev.as_f64(),
        });
    }
    let (evals, vecs) = eig_hermitian(&hermitize(&choi.matrix))?;
    let min = evals.first().copied().unwrap_or_else(S::zero);
    if min >= -tol {
        return Ok(None);
    }
    let d = map.dim;
    let w: CVector<S> = vecs.column(0).to_owned();
    // w[(i, k)] -> state psi_i = sum_k w[i*d + k] |k>, block B_i = |e0><i|
    let mut states = Vec::with_capacity(d);
    let mut operators = Vec::with_capacity(d);
    for i in 0..d {
        let mut psi = CVector::<S>::zeros(d);
        for k in 0..d {
            psi[k] = w[i * d + k];
        }
        states.push(psi);
        let mut b = CMatrix::<S>::zeros((d, d));
        b[[0, i]] = cre(S::one());
        operators.push(b);
    }
    let value = positivity_form(map, &states, &operators)?;
    Ok(Some(CpWitness {
        states,
        operators,
        value,
    }))
}

/// Heuristic n = 1 positivity probe: the minimum eigenvalue of
/// `map(|psi><psi|)` over Haar-random pure states. A nonnegative result is
/// evidence, not proof, of positivity.
pub fn positivity_sample<S: Scalar, R: rand::Rng>(
    map: &SuperOperator<S>,
    n_samples: usize,
    rng: &mut R,
) -> Result<S> {
    let d = map.dim;
    let mut min_observed = S::infinity();
    for _ in 0..n_samples {
        let psi = crate::sampling::haar_state::<S, R>(rng, d);
        let mut rho = CMatrix::<S>::zeros((d, d));
        for r in 0..d {
            for c in 0..d {
                rho[[r, c]] = psi[r] * psi[c].conj();
            }
        }
        let out = map.apply(&rho)?;
        let m = min_eig_hermitian(&hermitize(&out))?;
        min_observed = min_observed.min(m);
    }
    Ok(min_observed)
}
