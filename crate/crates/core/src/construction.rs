//! The subspace pair `(D, E)` of `C^2 ⊗ C^4` whose pair equation has exactly
//! ten solutions.
//!
//! `D` is the orthogonal complement of three fixed vectors, so its product
//! vectors are `|z1> = (0,1)⊗(0,0,0,1)` and `|z(α)> = (1,α)⊗(1,α,α²,α³)`.
//! `E = w^⊥` with `w = (b,0,0,1,0,-a,0,0)`. `|z̄(α)> ∈ E` reduces to
//! `b + α³ - a|α|² = 0`, whose nine roots come from the two real cubics
//! `r³ - a r² + b = 0` and `r³ + a r² - b = 0`.

use std::f64::consts::PI;

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bipartite::{
    in_face, mix, BipartiteState, Dims, FaceLocation, ProductVector, SeparableDecomposition,
};
use crate::linalg::{
    hermitian_gram_rank, orthogonal_complement, rref, CVector, ComplexMatrix, Subspace, Tolerance,
};
use crate::{Error, Result};

const MEMBERSHIP_TOL: f64 = 1e-10;
const ROOT_RESIDUAL_TOL: f64 = 1e-12;
const ROOT_GAP: f64 = 1e-9;
const RREF_MATCH_TOL: f64 = 1e-8;
const NEWTON_STEPS: usize = 2;

/// Number of product vectors in the construction.
pub const SOLUTION_COUNT: usize = 10;

/// Positive reals `a`, `b` with `0 < b < 4a³/27`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionParams {
    a: f64,
    b: f64,
}

impl ConstructionParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let bound = 4.0 * a.powi(3) / 27.0;
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 && b < bound) {
            return Err(Error::ParameterDomain { a, b, bound });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `4a³/27`.
    pub fn bound(&self) -> f64 {
        4.0 * self.a.powi(3) / 27.0
    }
}

/// `a ∈ {1, 2, 3, 5}` with `b ∈ {0.25, 0.5, 0.75} · 4a³/27`.
pub fn admissible_grid() -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    for a in [1.0, 2.0, 3.0, 5.0] {
        for f in [0.25, 0.5, 0.75] {
            let b = f * 4.0 * f64::powi(a, 3) / 27.0;
            out.push(ConstructionParams::new(a, b).expect("grid point is admissible"));
        }
    }
    out
}

/// Positive roots: `r1 < r2` of `r³ - a r² + b` and `r3` of `r³ + a r² - b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

fn upper_cubic(p: &ConstructionParams, r: f64) -> f64 {
    r * r * (r - p.a) + p.b
}

fn lower_cubic(p: &ConstructionParams, r: f64) -> f64 {
    r * r * (r + p.a) - p.b
}

fn polish(mut r: f64, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..NEWTON_STEPS {
        let d = df(r);
        if d != 0.0 {
            r -= f(r) / d;
        }
    }
    r
}

pub fn solve_modulus_cubics(p: &ConstructionParams) -> Result<CubicRoots> {
    let (a, b) = (p.a, p.b);
    if !(b > 0.0 && b < p.bound()) {
        return Err(Error::ParameterDomain {
            a,
            b,
            bound: p.bound(),
        });
    }
    // r = y + a/3 turns r³ - a r² + b into y³ + s y + t with three real roots.
    let s = -a * a / 3.0;
    let t = b - 2.0 * a.powi(3) / 27.0;
    let m = 2.0 * (-s / 3.0).sqrt();
    let phi = ((3.0 * t / (s * m)).clamp(-1.0, 1.0)).acos() / 3.0;
    let mut roots: Vec<f64> = (0..3)
        .map(|k| m * (phi - 2.0 * PI * k as f64 / 3.0).cos() + a / 3.0)
        .collect();
    roots.sort_by(f64::total_cmp);

    // The negative root of r³ - a r² + b is minus the positive root of r³ + a r² - b.
    let r3 = polish(-roots[0], |r| lower_cubic(p, r), |r| r * (3.0 * r + 2.0 * a));
    let r1 = polish(roots[1], |r| upper_cubic(p, r), |r| r * (3.0 * r - 2.0 * a));
    let r2 = polish(roots[2], |r| upper_cubic(p, r), |r| r * (3.0 * r - 2.0 * a));
    let out = CubicRoots { r1, r2, r3 };

    let gap = (r1 - r2).abs().min((r1 - r3).abs()).min((r2 - r3).abs());
    if !(r1 > 0.0 && r3 > 0.0) || gap <= ROOT_GAP {
        return Err(Error::RootsNotSeparated { gap });
    }
    Ok(out)
}

impl CubicRoots {
    /// Largest relative residual of the three roots in their cubics.
    pub fn residual(&self, p: &ConstructionParams) -> f64 {
        let rel = |v: f64, r: f64| v.abs() / (r.powi(3) + p.a * r * r + p.b);
        rel(upper_cubic(p, self.r1), self.r1)
            .max(rel(upper_cubic(p, self.r2), self.r2))
            .max(rel(lower_cubic(p, self.r3), self.r3))
    }

    /// The nine roots of `b + α³ - a|α|² = 0`, in the order
    /// `r1, r1ω, r1ω², r2, r2ω, r2ω², -r3, -r3ω, -r3ω²`.
    pub fn alphas(&self) -> [Complex64; 9] {
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let powers = [Complex64::new(1.0, 0.0), omega, omega * omega];
        let mut out = [Complex64::new(0.0, 0.0); 9];
        for (block, base) in [self.r1, self.r2, -self.r3].into_iter().enumerate() {
            for (k, w) in powers.iter().enumerate() {
                out[3 * block + k] = w * base;
            }
        }
        out
    }
}

fn real(v: &[f64]) -> CVector {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// `v1, v2, v3`, spanning a completely entangled subspace.
pub fn entangled_vectors() -> [CVector; 3] {
    [
        real(&[0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0]),
        real(&[0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0]),
        real(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0]),
    ]
}

/// `|w> = (b, 0, 0, 1, 0, -a, 0, 0)`.
pub fn w_vector(p: &ConstructionParams) -> CVector {
    real(&[p.b, 0.0, 0.0, 1.0, 0.0, -p.a, 0.0, 0.0])
}

pub fn subspace_d() -> Subspace {
    orthogonal_complement(&entangled_vectors(), 8, &Tolerance::default())
        .expect("fixed vectors have length 8")
}

pub fn subspace_e(p: &ConstructionParams) -> Subspace {
    orthogonal_complement(&[w_vector(p)], 8, &Tolerance::default())
        .expect("w has length 8")
}

/// `(0,1) ⊗ (0,0,0,1)`.
pub fn z1() -> ProductVector {
    ProductVector::new(real(&[0.0, 1.0]), real(&[0.0, 0.0, 0.0, 1.0])).expect("nonzero factors")
}

/// `(1,α) ⊗ (1,α,α²,α³)`, not normalized.
pub fn z_of(alpha: Complex64) -> ProductVector {
    let one = Complex64::new(1.0, 0.0);
    ProductVector::new(
        vec![one, alpha],
        vec![one, alpha, alpha * alpha, alpha * alpha * alpha],
    )
    .expect("first components are 1")
}

/// `z1` followed by `z(α_i)` in the order of [`CubicRoots::alphas`].
pub fn enumerate_solutions(p: &ConstructionParams) -> Result<Vec<ProductVector>> {
    let roots = solve_modulus_cubics(p)?;
    Ok(solutions_from(&roots))
}

fn solutions_from(roots: &CubicRoots) -> Vec<ProductVector> {
    std::iter::once(z1())
        .chain(roots.alphas().into_iter().map(z_of))
        .collect()
}

/// `|b + α³ - a|α|²|` for one root.
pub fn modulus_equation_residual(p: &ConstructionParams, alpha: Complex64) -> f64 {
    (p.b + alpha * alpha * alpha - p.a * alpha.norm_sqr()).norm()
}

/// Uniform mixture of all ten solutions.
pub fn build_rho0(p: &ConstructionParams) -> Result<BipartiteState> {
    Ok(mix(&SeparableDecomposition::uniform(enumerate_solutions(p)?)?))
}

/// Uniform mixture of the nine `z(α_i)`.
pub fn build_rho1(p: &ConstructionParams) -> Result<BipartiteState> {
    let sols = enumerate_solutions(p)?;
    Ok(mix(&SeparableDecomposition::uniform(sols[1..].to_vec())?))
}

/// Outcome of checking every `k`-subset of the solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetCheck {
    pub subset_size: usize,
    pub checked: usize,
    pub passed: usize,
    /// First failing subset in lexicographic order.
    pub counterexample: Option<Vec<usize>>,
}

impl SubsetCheck {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
            && self.passed == self.checked
            && self.checked as u64 == binomial(SOLUTION_COUNT as u64, self.subset_size as u64)
    }
}

/// One of the five representative 7-subsets whose partial conjugates are
/// row-reduced.
#[derive(Debug, Clone)]
pub struct RrefCase {
    pub label: &'static str,
    pub indices: [usize; 7],
    pub rref: ComplexMatrix,
    /// Max entrywise distance from the expected echelon form.
    pub deviation: f64,
    pub matches: bool,
}

/// Solution indices for the five cases. Index 0 is `z1`, then
/// `r1, r1ω, r1ω², r2, r2ω, r2ω², -r3, -r3ω, -r3ω²`.
pub const RREF_CASES: [(&str, [usize; 7]); 5] = [
    ("i", [0, 1, 2, 3, 4, 5, 6]),
    ("ii", [0, 1, 2, 3, 4, 5, 7]),
    ("iii", [0, 1, 2, 4, 5, 7, 8]),
    ("iv", [1, 2, 3, 4, 5, 6, 7]),
    ("v", [1, 2, 3, 4, 5, 7, 8]),
];

/// Echelon form of any seven vectors spanning `E`: pivots in every column
/// but the sixth, which carries `b/a` in row 1 and `1/a` in row 4.
pub fn expected_rref(p: &ConstructionParams) -> ComplexMatrix {
    let pivots = [0, 1, 2, 3, 4, 6, 7];
    let mut m = ComplexMatrix::zeros(7, 8);
    for (row, &col) in pivots.iter().enumerate() {
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    m[(0, 5)] = Complex64::new(p.b / p.a, 0.0);
    m[(3, 5)] = Complex64::new(1.0 / p.a, 0.0);
    m
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub solution_count: usize,
    /// Largest membership residual of a tensor in `D` or conjugate in `E`.
    pub max_membership_residual: f64,
    /// Largest relative residual of `b + α³ - a|α|² = 0`.
    pub max_equation_residual: f64,
    pub ten_solutions_exact: bool,
    pub gram_rank: usize,
    pub product_states_independent: bool,
    pub five_span_d: SubsetCheck,
    pub seven_span_e: SubsetCheck,
    pub rref_cases: Vec<RrefCase>,
    pub alpha8_identity_residual: f64,
    /// `(k, C(10, k+1))` for `k = 0..=9`.
    pub face_counts: Vec<(usize, u64)>,
}

impl VerificationReport {
    pub fn rref_ok(&self) -> bool {
        self.rref_cases.len() == RREF_CASES.len() && self.rref_cases.iter().all(|c| c.matches)
    }

    pub fn all_passed(&self) -> bool {
        self.ten_solutions_exact
            && self.product_states_independent
            && self.five_span_d.ok()
            && self.seven_span_e.ok()
            && self.rref_ok()
            && self.alpha8_identity_residual <= 1e-9
    }
}

/// Everything the construction produces for one parameter pair.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub params: ConstructionParams,
    pub roots: CubicRoots,
    pub alphas: [Complex64; 9],
    pub solutions: Vec<ProductVector>,
    pub d: Subspace,
    pub e: Subspace,
    pub rho0: BipartiteState,
    pub rho1: BipartiteState,
    pub report: VerificationReport,
}

impl ConstructionResult {
    pub fn build(p: &ConstructionParams) -> Result<Self> {
        let roots = solve_modulus_cubics(p)?;
        let alphas = roots.alphas();
        let solutions = solutions_from(&roots);
        let d = subspace_d();
        let e = subspace_e(p);
        let rho0 = mix(&SeparableDecomposition::uniform(solutions.clone())?);
        let rho1 = mix(&SeparableDecomposition::uniform(solutions[1..].to_vec())?);
        let report = verify_parts(p, &alphas, &solutions, &d, &e)?;
        Ok(Self {
            params: *p,
            roots,
            alphas,
            solutions,
            d,
            e,
            rho0,
            rho1,
            report,
        })
    }

    /// Location of `rho1` in the face `τ(D, E)`.
    pub fn rho1_location(&self, tol: &Tolerance) -> Result<FaceLocation> {
        in_face(&self.rho1, &self.d, &self.e, tol)
    }

    pub fn dims(&self) -> Dims {
        Dims::QUBIT_QUDIT
    }
}

pub fn verify_construction(p: &ConstructionParams) -> Result<VerificationReport> {
    let roots = solve_modulus_cubics(p)?;
    let alphas = roots.alphas();
    verify_parts(p, &alphas, &solutions_from(&roots), &subspace_d(), &subspace_e(p))
}

fn verify_parts(
    p: &ConstructionParams,
    alphas: &[Complex64; 9],
    solutions: &[ProductVector],
    d: &Subspace,
    e: &Subspace,
) -> Result<VerificationReport> {
    let tol = Tolerance::default();
    let tensors: Vec<CVector> = solutions.iter().map(|s| s.normalized().tensor()).collect();
    let conjugates: Vec<CVector> = solutions
        .iter()
        .map(|s| s.normalized().partial_conjugate())
        .collect();

    let max_membership_residual = tensors
        .iter()
        .map(|t| d.residual(t))
        .chain(conjugates.iter().map(|c| e.residual(c)))
        .fold(0.0, f64::max);
    let max_abs = alphas.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
    let max_equation_residual = alphas
        .iter()
        .map(|&a| modulus_equation_residual(p, a) / (p.b + p.a * max_abs))
        .fold(0.0, f64::max);
    let distinct = tensors.iter().tuple_combinations().all(|(s, t)| {
        crate::linalg::inner(s, t).norm() < 1.0 - 1e-9
    });
    let ten_solutions_exact = solutions.len() == SOLUTION_COUNT
        && distinct
        && max_membership_residual <= MEMBERSHIP_TOL
        && max_equation_residual <= ROOT_RESIDUAL_TOL;

    let projectors: Vec<ComplexMatrix> = solutions.iter().map(ProductVector::projector).collect();
    let gram_rank = hermitian_gram_rank(&projectors, &tol)?;

    let five_span_d = check_subsets(&tensors, 5, d, &tol);
    let seven_span_e = check_subsets(&conjugates, 7, e, &tol);

    let expected = expected_rref(p);
    let rref_cases = RREF_CASES
        .iter()
        .map(|&(label, indices)| {
            let rows: Vec<CVector> = indices
                .iter()
                .map(|&i| solutions[i].partial_conjugate())
                .collect();
            let reduced = rref(&ComplexMatrix::from_rows(&rows)?, &tol);
            let deviation = reduced.max_abs_diff(&expected);
            Ok(RrefCase {
                label,
                indices,
                rref: reduced,
                deviation,
                matches: deviation <= RREF_MATCH_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(VerificationReport {
        solution_count: solutions.len(),
        max_membership_residual,
        max_equation_residual,
        ten_solutions_exact,
        gram_rank,
        product_states_independent: gram_rank == SOLUTION_COUNT,
        five_span_d,
        seven_span_e,
        rref_cases,
        alpha8_identity_residual: alpha8_identity_residual(p, alphas),
        face_counts: face_counts(),
    })
}

/// Max over the roots of `| |α|⁸ - (a²|α|⁶ - 2ab|α|⁴ + b²|α|²) |`.
pub fn alpha8_identity_residual(p: &ConstructionParams, alphas: &[Complex64]) -> f64 {
    let (a, b) = (p.a, p.b);
    alphas
        .iter()
        .map(|al| {
            let m2 = al.norm_sqr();
            let m4 = m2 * m2;
            let m6 = m4 * m2;
            (m4 * m4 - (a * a * m6 - 2.0 * a * b * m4 + b * b * m2)).abs()
        })
        .fold(0.0, f64::max)
}

fn check_subsets(vectors: &[CVector], k: usize, target: &Subspace, tol: &Tolerance) -> SubsetCheck {
    let subsets: Vec<Vec<usize>> = (0..vectors.len()).combinations(k).collect();
    let spans: Vec<bool> = subsets
        .par_iter()
        .map(|idx| {
            let chosen: Vec<CVector> = idx.iter().map(|&i| vectors[i].clone()).collect();
            Subspace::span(target.ambient_dim(), &chosen, tol).is_ok_and(|s| s.approx_eq(target))
        })
        .collect();
    SubsetCheck {
        subset_size: k,
        checked: subsets.len(),
        passed: spans.iter().filter(|&&ok| ok).count(),
        counterexample: spans
            .iter()
            .position(|&ok| !ok)
            .map(|i| subsets[i].clone()),
    }
}

pub fn face_counts() -> Vec<(usize, u64)> {
    (0..SOLUTION_COUNT)
        .map(|k| (k, binomial(SOLUTION_COUNT as u64, k as u64 + 1)))
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::state_type;
    use crate::linalg::SUBSPACE_TOL;

    fn reference() -> ConstructionParams {
        ConstructionParams::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn roots_for_a2_b1() {
        let r = solve_modulus_cubics(&reference()).unwrap();
        let sqrt5 = 5f64.sqrt();
        assert!((r.r1 - 1.0).abs() <= 1e-12);
        assert!((r.r2 - (1.0 + sqrt5) / 2.0).abs() <= 1e-12);
        assert!((r.r3 - (sqrt5 - 1.0) / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn roots_for_a3_b2() {
        let p = ConstructionParams::new(3.0, 2.0).unwrap();
        let r = solve_modulus_cubics(&p).unwrap();
        let sqrt3 = 3f64.sqrt();
        assert!((r.r1 - 1.0).abs() <= 1e-12);
        assert!((r.r2 - (1.0 + sqrt3)).abs() <= 1e-12);
        assert!((r.r3 - (sqrt3 - 1.0)).abs() <= 1e-12);
        assert!(r.residual(&p) <= 1e-12);
    }

    #[test]
    fn boundary_parameter_is_rejected() {
        let err = ConstructionParams::new(3.0, 4.0).unwrap_err();
        assert!(matches!(err, Error::ParameterDomain { bound, .. } if (bound - 4.0).abs() < 1e-15));
        assert!(err.to_string().contains("4a^3/27"));
        assert!(ConstructionParams::new(2.0, 0.0).is_err());
        assert!(ConstructionParams::new(-1.0, 0.1).is_err());
    }

    #[test]
    fn roots_on_grid() {
        for p in admissible_grid() {
            let r = solve_modulus_cubics(&p).unwrap();
            assert!(r.residual(&p) <= 1e-12, "{p:?}");
            assert!(r.r1 < r.r2);
        }
    }

    #[test]
    fn subspaces_have_expected_members() {
        let d = subspace_d();
        let e = subspace_e(&reference());
        assert_eq!(d.dim(), 5);
        assert_eq!(e.dim(), 7);
        assert!(d.contains(&z1().tensor(), 1e-14));
        assert!(d.contains(&z_of(Complex64::new(1.0, 0.0)).tensor(), 1e-14));
        assert!(!d.contains(&entangled_vectors()[0], SUBSPACE_TOL));
        assert!(e.contains(&z1().partial_conjugate(), 1e-14));
        assert!(!e.contains(&w_vector(&reference()), SUBSPACE_TOL));
        assert!(e.contains(&z_of(Complex64::new(1.0, 0.0)).partial_conjugate(), 1e-14));
    }

    #[test]
    fn alphas_are_closed_under_omega() {
        let roots = solve_modulus_cubics(&reference()).unwrap();
        let alphas = roots.alphas();
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        for a in alphas {
            let rotated = a * omega;
            assert!(alphas.iter().any(|b| (b - rotated).norm() < 1e-14));
            assert!(modulus_equation_residual(&reference(), a) < 1e-14);
        }
        // real roots are 1, φ and -(φ - 1)
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((alphas[0].re - 1.0).abs() < 1e-15);
        assert!((alphas[3].re - phi).abs() < 1e-14);
        assert!((alphas[6].re + (phi - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn rho_matrices_match_integer_forms() {
        let rho0: [[f64; 8]; 8] = [
            [71., 0., 0., 7., 0., 0., 7., 0.],
            [0., 39., 0., 0., 39., 0., 0., 23.],
            [0., 0., 31., 0., 0., 31., 0., 0.],
            [7., 0., 0., 39., 0., 0., 39., 0.],
            [0., 39., 0., 0., 39., 0., 0., 23.],
            [0., 0., 31., 0., 0., 31., 0., 0.],
            [7., 0., 0., 39., 0., 0., 39., 0.],
            [0., 23., 0., 0., 23., 0., 0., 111.],
        ];
        let got = build_rho0(&reference()).unwrap();
        let expected = ComplexMatrix::from_fn(8, 8, |i, j| Complex64::new(rho0[i][j] / 400.0, 0.0));
        assert!(got.matrix().max_abs_diff(&expected) <= 1e-10);
        assert!((got.matrix().trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn report_for_reference_parameters() {
        let r = verify_construction(&reference()).unwrap();
        assert!(r.all_passed(), "{r:#?}");
        assert_eq!(r.gram_rank, 10);
        assert_eq!(r.five_span_d.checked, 252);
        assert_eq!(r.seven_span_e.checked, 120);
        assert_eq!(r.face_counts[5], (5, 210));
        let (_, total): (Vec<_>, Vec<_>) = r.face_counts.iter().cloned().unzip();
        assert_eq!(total.iter().sum::<u64>(), 1023);
    }

    #[test]
    fn nine_states_are_independent() {
        let sols = enumerate_solutions(&reference()).unwrap();
        let projectors: Vec<_> = sols[1..].iter().map(ProductVector::projector).collect();
        assert_eq!(hermitian_gram_rank(&projectors, &Tolerance::default()).unwrap(), 9);
    }

    #[test]
    fn types_of_rho0_and_rho1() {
        let tol = Tolerance::default();
        let c = ConstructionResult::build(&reference()).unwrap();
        assert_eq!(state_type(&c.rho0, &tol), crate::bipartite::StateType { p: 5, q: 7 });
        assert_eq!(state_type(&c.rho1, &tol), crate::bipartite::StateType { p: 5, q: 7 });
        assert_eq!(in_face(&c.rho0, &c.d, &c.e, &tol).unwrap(), FaceLocation::Interior);
        assert_eq!(c.rho1_location(&tol).unwrap(), FaceLocation::Interior);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(10, 7), 120);
        assert_eq!(binomial(10, 10), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
