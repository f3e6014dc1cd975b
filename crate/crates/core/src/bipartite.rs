//! Bipartite structure on `C^m ⊗ C^n`.
//!
//! States are mixtures `ρ = Σ λ_i |x_i⊗y_i><x_i⊗y_i|`; their partial transpose
//! (transpose on the first factor) is `Σ λ_i |x̄_i⊗y_i><x̄_i⊗y_i|`. A PPT state
//! `ρ` lies in the face `τ(D, E)` of the PPT set when `R(ρ) ⊂ D` and
//! `R(ρ^Γ) ⊂ E`, and in its interior when both are equalities.

use num_complex::Complex64;

use crate::linalg::{
    hermitian_eigen, kron, norm, rank, scale_vec, CVector, ComplexMatrix, Subspace, Tolerance,
    SUBSPACE_TOL,
};
use crate::{Error, Result};

/// Minimum eigenvalue accepted as "positive semidefinite".
pub const PSD_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-12;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Local dimensions `(m, n)` of `C^m ⊗ C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

impl Dims {
    pub const QUBIT_QUDIT: Dims = Dims { m: 2, n: 4 };

    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn total(&self) -> usize {
        self.m * self.n
    }
}

/// A pair `(x, y)` standing for `|x⊗y>`. Factors are stored as given.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    x: CVector,
    y: CVector,
}

impl ProductVector {
    pub fn new(x: CVector, y: CVector) -> Result<Self> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if !(norm(&x) > 0.0 && norm(&y) > 0.0) {
            return Err(Error::ZeroFactor);
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.x.len(), self.y.len())
    }

    /// `|x⊗y>`, first-factor index major.
    pub fn tensor(&self) -> CVector {
        kron(&self.x, &self.y)
    }

    /// `|x̄⊗y>`.
    pub fn partial_conjugate(&self) -> CVector {
        let xc: CVector = self.x.iter().map(|z| z.conj()).collect();
        kron(&xc, &self.y)
    }

    /// The product vector `(x̄, y)`.
    pub fn conjugated(&self) -> ProductVector {
        Self {
            x: self.x.iter().map(|z| z.conj()).collect(),
            y: self.y.clone(),
        }
    }

    /// Both factors scaled to unit norm.
    pub fn normalized(&self) -> ProductVector {
        Self {
            x: scale_vec(&self.x, Complex64::new(1.0 / norm(&self.x), 0.0)),
            y: scale_vec(&self.y, Complex64::new(1.0 / norm(&self.y), 0.0)),
        }
    }

    /// `|x⊗y><x⊗y|` of the normalized vector.
    pub fn projector(&self) -> ComplexMatrix {
        let t = self.normalized().tensor();
        ComplexMatrix::outer(&t, &t)
    }
}

/// Transpose on the first tensor factor: the `n x n` block `(i, j)` moves
/// to block `(j, i)`.
pub fn partial_transpose(matrix: &ComplexMatrix, dims: Dims) -> Result<ComplexMatrix> {
    let d = dims.total();
    if matrix.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            actual: matrix.rows() * matrix.cols(),
        });
    }
    let n = dims.n;
    Ok(ComplexMatrix::from_fn(d, d, |r, c| {
        let (j, k) = (r / n, r % n);
        let (i, l) = (c / n, c % n);
        matrix[(i * n + k, j * n + l)]
    }))
}

/// Span of the eigenvectors of a Hermitian matrix whose eigenvalues exceed
/// `rank_cut` times the largest eigenvalue.
pub fn hermitian_range(matrix: &ComplexMatrix, tol: &Tolerance) -> Result<Subspace> {
    let eig = hermitian_eigen(matrix)?;
    let top = eig.max();
    let ambient = matrix.rows();
    if top <= 0.0 {
        return Ok(Subspace::zero(ambient));
    }
    let basis = (0..ambient)
        .filter(|&k| eig.values[k] > tol.rank_cut * top)
        .map(|k| eig.vector(k))
        .collect();
    Subspace::from_orthonormal(ambient, basis)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(matrix: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(matrix)?.min())
}

/// A density matrix on `C^m ⊗ C^n`: Hermitian, PSD and of unit trace.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    dims: Dims,
    matrix: ComplexMatrix,
}

impl BipartiteState {
    /// Validates and stores the Hermitian part of `matrix`.
    pub fn new(dims: Dims, matrix: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let d = dims.total();
        if matrix.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                actual: matrix.rows() * matrix.cols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol.match_tol {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotUnit { trace });
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { dims, matrix })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(&self.matrix, self.dims).expect("state shape matches its dims")
    }

    pub fn is_ppt(&self) -> bool {
        min_eigenvalue(&self.partial_transpose()).is_ok_and(|m| m >= -PSD_TOL)
    }
}

/// Convex combination of normalized product states.
#[derive(Debug, Clone)]
pub struct SeparableDecomposition {
    weights: Vec<f64>,
    vectors: Vec<ProductVector>,
}

impl SeparableDecomposition {
    /// Weights must be positive and sum to one; vectors are normalized here.
    pub fn new(weights: Vec<f64>, vectors: Vec<ProductVector>) -> Result<Self> {
        if weights.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: vectors.len(),
                actual: weights.len(),
            });
        }
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidWeights { sum: 0.0 });
        };
        let dims = first.dims();
        if let Some(v) = vectors.iter().find(|v| v.dims() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                actual: v.dims().total(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w.is_nan() || w <= 0.0) || (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights { sum });
        }
        Ok(Self {
            weights,
            vectors: vectors.iter().map(ProductVector::normalized).collect(),
        })
    }

    pub fn uniform(vectors: Vec<ProductVector>) -> Result<Self> {
        let k = vectors.len();
        Self::new(vec![1.0 / k as f64; k], vectors)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vectors(&self) -> &[ProductVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dims(&self) -> Dims {
        self.vectors[0].dims()
    }
}

/// `Σ λ_i |x_i⊗y_i><x_i⊗y_i|`.
pub fn mix(d: &SeparableDecomposition) -> BipartiteState {
    let dims = d.dims();
    let total = dims.total();
    let mut acc = ComplexMatrix::zeros(total, total);
    for (w, v) in d.weights.iter().zip(&d.vectors) {
        acc = &acc + &v.projector().scale(*w);
    }
    BipartiteState {
        dims,
        matrix: acc.hermitian_part(),
    }
}

/// Ranks `(p, q)` of `ρ` and `ρ^Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateType {
    pub p: usize,
    pub q: usize,
}

impl std::fmt::Display for StateType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

pub fn state_type(rho: &BipartiteState, tol: &Tolerance) -> StateType {
    StateType {
        p: rank(rho.matrix(), tol),
        q: rank(&rho.partial_transpose(), tol),
    }
}

pub fn range_space(rho: &BipartiteState, tol: &Tolerance) -> Subspace {
    hermitian_range(rho.matrix(), tol).expect("state matrices are square")
}

pub fn transpose_range_space(rho: &BipartiteState, tol: &Tolerance) -> Subspace {
    hermitian_range(&rho.partial_transpose(), tol).expect("state matrices are square")
}

/// Position of a PPT state relative to the face `τ(D, E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceLocation {
    Outside,
    Boundary,
    Interior,
}

pub fn in_face(
    rho: &BipartiteState,
    d: &Subspace,
    e: &Subspace,
    tol: &Tolerance,
) -> Result<FaceLocation> {
    let state_min = min_eigenvalue(rho.matrix())?;
    let transpose_min = min_eigenvalue(&rho.partial_transpose())?;
    if state_min < -PSD_TOL || transpose_min < -PSD_TOL {
        return Err(Error::NotPpt {
            state_min,
            transpose_min,
        });
    }
    let range = range_space(rho, tol);
    let t_range = transpose_range_space(rho, tol);
    if !(d.contains_subspace(&range, SUBSPACE_TOL) && e.contains_subspace(&t_range, SUBSPACE_TOL)) {
        return Ok(FaceLocation::Outside);
    }
    if range.dim() == d.dim() && t_range.dim() == e.dim() {
        Ok(FaceLocation::Interior)
    } else {
        Ok(FaceLocation::Boundary)
    }
}

/// Whether the candidates lying in `R(ρ)` with partial conjugates in
/// `R(ρ^Γ)` span both ranges.
pub fn range_criterion_check(
    rho: &BipartiteState,
    candidates: &[ProductVector],
    tol: &Tolerance,
) -> bool {
    let range = range_space(rho, tol);
    let t_range = transpose_range_space(rho, tol);
    let ambient = rho.dims().total();
    let (tensors, conjugates): (Vec<CVector>, Vec<CVector>) = candidates
        .iter()
        .filter(|c| c.dims() == rho.dims())
        .map(|c| (c.tensor(), c.partial_conjugate()))
        .filter(|(t, c)| range.contains(t, SUBSPACE_TOL) && t_range.contains(c, SUBSPACE_TOL))
        .unzip();
    let spans = |vs: &[CVector], target: &Subspace| {
        Subspace::span(ambient, vs, tol).is_ok_and(|s| s.approx_eq(target))
    };
    spans(&tensors, &range) && spans(&conjugates, &t_range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_alpha(alpha: Complex64) -> ProductVector {
        ProductVector::new(
            vec![c(1.0, 0.0), alpha],
            vec![c(1.0, 0.0), alpha, alpha * alpha, alpha * alpha * alpha],
        )
        .unwrap()
    }

    #[test]
    fn tensor_examples() {
        let z1 = ProductVector::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let t = z1.tensor();
        assert_eq!(t[7], c(1.0, 0.0));
        assert!(t[..7].iter().all(|z| *z == c(0.0, 0.0)));

        let a = c(0.3, -0.7);
        let t = z_alpha(a).tensor();
        let expected = [c(1.0, 0.0), a, a * a, a * a * a, a, a * a, a * a * a, a * a * a * a];
        for (x, y) in t.iter().zip(expected) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_conjugate_at_i() {
        let got = z_alpha(c(0.0, 1.0)).partial_conjugate();
        let expected = [
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
            c(0.0, -1.0),
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
        ];
        for (x, y) in got.iter().zip(expected) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_conjugate_involution_and_real_case() {
        let pv = z_alpha(c(0.4, 0.9));
        assert_eq!(pv.conjugated().partial_conjugate(), pv.tensor());
        let real = z_alpha(c(1.5, 0.0));
        assert_eq!(real.partial_conjugate(), real.tensor());
    }

    #[test]
    fn partial_transpose_of_product_projector() {
        let pv = z_alpha(c(0.2, 0.5));
        let pt = partial_transpose(&pv.projector(), Dims::QUBIT_QUDIT).unwrap();
        assert!(pt.max_abs_diff(&pv.conjugated().projector()) < 1e-15);
        let id = ComplexMatrix::identity(8).scale(0.125);
        assert_eq!(partial_transpose(&id, Dims::QUBIT_QUDIT).unwrap(), id);
        assert!(partial_transpose(&ComplexMatrix::identity(6), Dims::QUBIT_QUDIT).is_err());
    }

    #[test]
    fn pure_product_state() {
        let tol = Tolerance::default();
        let pv = z_alpha(c(0.7, -0.1));
        let rho = mix(&SeparableDecomposition::uniform(vec![pv.clone()]).unwrap());
        assert_eq!(state_type(&rho, &tol), StateType { p: 1, q: 1 });
        assert!(range_criterion_check(&rho, &[pv], &tol));
    }

    #[test]
    fn weights_must_sum_to_one() {
        let pv = z_alpha(c(0.5, 0.0));
        let err = SeparableDecomposition::new(vec![0.5, 0.4], vec![pv.clone(), pv.clone()]);
        assert!(matches!(err, Err(Error::InvalidWeights { .. })));
        let err = SeparableDecomposition::new(vec![1.5, -0.5], vec![pv.clone(), pv]);
        assert!(matches!(err, Err(Error::InvalidWeights { .. })));
    }

    #[test]
    fn zero_factor_rejected() {
        let err = ProductVector::new(vec![c(0.0, 0.0); 2], vec![c(1.0, 0.0); 4]);
        assert_eq!(err, Err(Error::ZeroFactor));
    }

    #[test]
    fn state_validation() {
        let tol = Tolerance::default();
        let not_unit = ComplexMatrix::identity(8);
        assert!(matches!(
            BipartiteState::new(Dims::QUBIT_QUDIT, not_unit, &tol),
            Err(Error::TraceNotUnit { .. })
        ));
        let mut diag = vec![0.0; 8];
        diag[0] = 1.5;
        diag[1] = -0.5;
        assert!(matches!(
            BipartiteState::new(Dims::QUBIT_QUDIT, ComplexMatrix::diagonal(&diag), &tol),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn in_face_rejects_npt() {
        let tol = Tolerance::default();
        // Bell-like state on 2x4 (in the 2x2 corner): NPT.
        let mut psi = vec![c(0.0, 0.0); 8];
        psi[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        psi[5] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let rho = BipartiteState::new(Dims::QUBIT_QUDIT, ComplexMatrix::outer(&psi, &psi), &tol).unwrap();
        assert!(!rho.is_ppt());
        let full = Subspace::full(8);
        assert!(matches!(in_face(&rho, &full, &full, &tol), Err(Error::NotPpt { .. })));
    }

    #[test]
    fn random_mixture_types_are_bounded() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for k in 1..=4 {
            let vectors: Vec<ProductVector> = (0..k)
                .map(|_| {
                    let mut v = |len: usize| -> CVector {
                        (0..len).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
                    };
                    ProductVector::new(v(2), v(4)).unwrap()
                })
                .collect();
            let rho = mix(&SeparableDecomposition::uniform(vectors).unwrap());
            let t = state_type(&rho, &tol);
            assert!(t.p <= k && t.q <= k);
            assert_eq!(t, StateType { p: k, q: k });
        }
    }
}
