//! The segment `rho_t = (1 - t) rho0 + t rho1` extended past `rho1`, and
//! the largest `t` at which it is still PPT.
//!
//! The boundary is located in two stages. A bisection on the absolute
//! predicate `min(λ_min(rho_t), λ_min(rho_t^Γ)) >= -PSD_TOL` brackets it to
//! `COARSE_WIDTH`. The bracket is then narrowed to machine precision with
//! the same bisection on the compressions `Q_D* rho_t Q_D` and
//! `Q_E* rho_t^Γ Q_E`, whose kernels are exactly the eigenvalues that
//! cross zero. The second stage is what makes the rank drop at `ν`
//! clearly visible against `rank_cut`.

use rayon::prelude::*;

use crate::bipartite::{
    in_face, min_eigenvalue, partial_transpose, range_space, state_type, transpose_range_space,
    BipartiteState, Dims, FaceLocation, StateType, PSD_TOL,
};
use crate::construction::{build_rho0, build_rho1, subspace_d, subspace_e, ConstructionParams};
use crate::linalg::{hermitian_eigen, ComplexMatrix, Subspace, Tolerance};
use crate::solver::{solve_pair_equation, PairEquationProblem, PairSolutionSet, SearchOptions};
use crate::{Error, Result};

/// Width of the bracket from the thresholded bisection.
pub const COARSE_WIDTH: f64 = 1e-8;
/// Step past `ν` used to confirm the exit from the PPT set.
pub const EXIT_PROBE: f64 = 1e-4;
const BRACKET_LIMIT: f64 = 1e6;
const DEGENERATE_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct PathProblem {
    pub rho0: BipartiteState,
    pub rho1: BipartiteState,
    pub d: Subspace,
    pub e: Subspace,
    pub tol: Tolerance,
    pub search: SearchOptions,
}

impl PathProblem {
    /// Checks that `rho0` is interior to the face `τ(D, E)` and that `rho1`
    /// lies in it with ranges large enough for the segment to continue
    /// past `t = 1`.
    pub fn new(
        rho0: BipartiteState,
        rho1: BipartiteState,
        d: Subspace,
        e: Subspace,
        tol: Tolerance,
        search: SearchOptions,
    ) -> Result<Self> {
        if rho0.dims() != rho1.dims() {
            return Err(Error::DimensionMismatch {
                expected: rho0.dims().total(),
                actual: rho1.dims().total(),
            });
        }
        if d.ambient_dim() != rho0.dims().total() || e.ambient_dim() != rho0.dims().total() {
            return Err(Error::DimensionMismatch {
                expected: rho0.dims().total(),
                actual: d.ambient_dim(),
            });
        }
        if in_face(&rho0, &d, &e, &tol)? != FaceLocation::Interior {
            return Err(Error::NotInterior(
                "rho0 must have range D and partial-transpose range E".into(),
            ));
        }
        if in_face(&rho1, &d, &e, &tol)? == FaceLocation::Outside {
            return Err(Error::NotInterior("rho1 is not in the face of (D, E)".into()));
        }
        let p1 = range_space(&rho1, &tol).dim();
        if p1 < d.dim() {
            return Err(Error::ProperSubface {
                which: "state",
                dim: p1,
                expected: d.dim(),
            });
        }
        let q1 = transpose_range_space(&rho1, &tol).dim();
        if q1 < e.dim() {
            return Err(Error::ProperSubface {
                which: "partial transpose",
                dim: q1,
                expected: e.dim(),
            });
        }
        search.validate()?;
        Ok(Self {
            rho0,
            rho1,
            d,
            e,
            tol,
            search,
        })
    }

    /// `rho0` the barycenter of the ten solutions, `rho1` the barycenter of
    /// the nine with `x ≠ (0, 1)`.
    pub fn for_params(p: &ConstructionParams) -> Result<Self> {
        Self::new(
            build_rho0(p)?,
            build_rho1(p)?,
            subspace_d(),
            subspace_e(p),
            Tolerance::default(),
            SearchOptions::for_params(p.a(), p.b()),
        )
    }

    pub fn dims(&self) -> Dims {
        self.rho0.dims()
    }
}

/// `(1 - t) rho0 + t rho1`, returned as a raw Hermitian matrix since it
/// need not be positive.
pub fn rho_at(prob: &PathProblem, t: f64) -> ComplexMatrix {
    (&prob.rho0.matrix().scale(1.0 - t) + &prob.rho1.matrix().scale(t)).hermitian_part()
}

/// Ascending spectra of `rho_t` and `rho_t^Γ`.
pub fn eigenvalues_at(prob: &PathProblem, t: f64) -> (Vec<f64>, Vec<f64>) {
    let m = rho_at(prob, t);
    let g = partial_transpose(&m, prob.dims()).expect("dims match");
    (
        hermitian_eigen(&m).expect("square").values,
        hermitian_eigen(&g).expect("square").values,
    )
}

/// `(λ_min(rho_t), λ_min(rho_t^Γ))`.
pub fn ppt_margins(prob: &PathProblem, t: f64) -> (f64, f64) {
    let m = rho_at(prob, t);
    let g = partial_transpose(&m, prob.dims()).expect("dims match");
    (
        min_eigenvalue(&m).expect("square"),
        min_eigenvalue(&g).expect("square"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindingSide {
    State,
    PartialTranspose,
}

impl std::fmt::Display for BindingSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BindingSide::State => "state",
            BindingSide::PartialTranspose => "partial_transpose",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BoundaryResult {
    pub nu: f64,
    /// Final bracket `(nu, hi)`: `rho_hi` has left the face.
    pub bracket: (f64, f64),
    /// Bracket from the thresholded stage.
    pub coarse_bracket: (f64, f64),
    pub state_at_nu: BipartiteState,
    pub type_at_nu: StateType,
    pub binding_side: BindingSide,
    /// `(λ_min(rho_ν), λ_min(rho_ν^Γ))`.
    pub margins_at_nu: (f64, f64),
    pub edge_certified: bool,
    /// Pair-equation search on the ranges of `rho_ν` and `rho_ν^Γ`.
    pub edge_search: PairSolutionSet,
}

struct Compression {
    d: ComplexMatrix,
    e: ComplexMatrix,
}

impl Compression {
    fn new(prob: &PathProblem) -> Self {
        Self {
            d: prob.d.basis_matrix().expect("D is nonzero"),
            e: prob.e.basis_matrix().expect("E is nonzero"),
        }
    }

    fn margins(&self, prob: &PathProblem, t: f64) -> (f64, f64) {
        let m = rho_at(prob, t);
        let g = partial_transpose(&m, prob.dims()).expect("dims match");
        let on = |q: &ComplexMatrix, a: &ComplexMatrix| {
            min_eigenvalue(&(&(&q.adjoint() * a) * q)).expect("square")
        };
        (on(&self.d, &m), on(&self.e, &g))
    }
}

fn bisect(mut lo: f64, mut hi: f64, width: f64, ok: impl Fn(f64) -> bool) -> (f64, f64) {
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn find_boundary_nu(prob: &PathProblem) -> Result<BoundaryResult> {
    if prob.rho1.matrix().max_abs_diff(prob.rho0.matrix()) <= DEGENERATE_TOL {
        return Err(Error::DegenerateDirection);
    }
    let ppt = |t: f64| {
        let (a, b) = ppt_margins(prob, t);
        a.min(b) >= -PSD_TOL
    };
    let mut lo = 1.0;
    let mut hi = 2.0;
    while ppt(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::BracketFailed { t_max: BRACKET_LIMIT });
        }
    }
    let coarse_bracket = bisect(lo, hi, COARSE_WIDTH, ppt);

    let comp = Compression::new(prob);
    let strict = |t: f64| {
        let (a, b) = comp.margins(prob, t);
        a.min(b) >= 0.0
    };
    let (nu, hi) = bisect(1.0, coarse_bracket.1, 0.0, strict);

    let (cd, ce) = comp.margins(prob, nu);
    let binding_side = if cd <= ce {
        BindingSide::State
    } else {
        BindingSide::PartialTranspose
    };
    let state_at_nu = BipartiteState::new(prob.dims(), rho_at(prob, nu), &prob.tol)?;
    let type_at_nu = state_type(&state_at_nu, &prob.tol);
    let edge_problem = PairEquationProblem::new(
        range_space(&state_at_nu, &prob.tol),
        transpose_range_space(&state_at_nu, &prob.tol),
        prob.search,
    )?;
    let edge_search = solve_pair_equation(&edge_problem)?;
    Ok(BoundaryResult {
        nu,
        bracket: (nu, hi),
        coarse_bracket,
        margins_at_nu: ppt_margins(prob, nu),
        state_at_nu,
        type_at_nu,
        binding_side,
        edge_certified: edge_search.is_empty(),
        edge_search,
    })
}

/// Minimum eigenvalue of the binding side at `t`.
pub fn binding_margin(prob: &PathProblem, side: BindingSide, t: f64) -> f64 {
    let (a, b) = ppt_margins(prob, t);
    match side {
        BindingSide::State => a,
        BindingSide::PartialTranspose => b,
    }
}

/// Whether the boundary state has `p = 5` and `q ∈ {5, 6}`.
pub fn certify_boundary_type_bound(result: &BoundaryResult) -> bool {
    result.type_at_nu.p == 5 && matches!(result.type_at_nu.q, 5 | 6)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueCurves {
    pub ts: Vec<f64>,
    /// Ascending eigenvalues of `rho_t`, one row per sample.
    pub lambda: Vec<Vec<f64>>,
    /// Ascending eigenvalues of `rho_t^Γ`, one row per sample.
    pub mu: Vec<Vec<f64>>,
}

impl EigenvalueCurves {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// Largest `|Σλ - 1|` or `|Σμ - 1|` over all samples.
    pub fn max_trace_deviation(&self) -> f64 {
        self.lambda
            .iter()
            .chain(&self.mu)
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues with modulus at most `rank_cut` times the largest modulus.
pub fn zero_count(values: &[f64], tol: &Tolerance) -> usize {
    let top = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    values.iter().filter(|v| v.abs() <= tol.rank_cut * top).count()
}

/// `samples` evenly spaced parameters on `[t_min, t_max]`.
pub fn eigenvalue_curves(
    prob: &PathProblem,
    t_min: f64,
    t_max: f64,
    samples: usize,
) -> Result<EigenvalueCurves> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err(Error::InvalidArgument(format!(
            "need t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let step = (t_max - t_min) / (samples - 1) as f64;
    let ts: Vec<f64> = (0..samples)
        .map(|k| if k + 1 == samples { t_max } else { t_min + step * k as f64 })
        .collect();
    let (lambda, mu) = ts.par_iter().map(|&t| eigenvalues_at(prob, t)).unzip();
    Ok(EigenvalueCurves { ts, lambda, mu })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> PathProblem {
        PathProblem::for_params(&ConstructionParams::new(2.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn endpoints_are_the_states() {
        let prob = reference();
        assert!(rho_at(&prob, 0.0).max_abs_diff(prob.rho0.matrix()) < 1e-15);
        assert!(rho_at(&prob, 1.0).max_abs_diff(prob.rho1.matrix()) < 1e-15);
        assert!((rho_at(&prob, 3.7).trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_of_the_reference_instance() {
        let prob = reference();
        let r = find_boundary_nu(&prob).unwrap();
        assert!((r.nu - 1.48192).abs() < 1e-4, "nu = {}", r.nu);
        assert!(r.coarse_bracket.1 - r.coarse_bracket.0 <= COARSE_WIDTH);
        assert!(r.bracket.0 >= r.coarse_bracket.0 - 1e-8 && r.bracket.1 <= r.coarse_bracket.1);
        assert_eq!(r.type_at_nu, StateType { p: 5, q: 6 });
        assert_eq!(r.binding_side, BindingSide::PartialTranspose);
        assert!(r.edge_certified);
        assert!(r.edge_search.min_rejected() > 1e-6);
        assert!(certify_boundary_type_bound(&r));
        assert!(binding_margin(&prob, r.binding_side, r.nu + EXIT_PROBE) < -PSD_TOL);
        let (l, m) = eigenvalues_at(&prob, r.nu);
        assert_eq!(zero_count(&l, &prob.tol), 3);
        assert_eq!(zero_count(&m, &prob.tol), 2);
    }

    #[test]
    fn interior_of_the_segment_is_type_5_7() {
        let prob = reference();
        for t in [1.1, 1.2, 1.3, 1.4] {
            let s = BipartiteState::new(prob.dims(), rho_at(&prob, t), &prob.tol).unwrap();
            assert!(s.is_ppt());
            assert_eq!(state_type(&s, &prob.tol), StateType { p: 5, q: 7 }, "t = {t}");
        }
    }

    #[test]
    fn degenerate_direction_is_reported() {
        let prob = reference();
        let mut flat = prob.clone();
        flat.rho1 = prob.rho0.clone();
        assert!(matches!(find_boundary_nu(&flat), Err(Error::DegenerateDirection)));
    }

    #[test]
    fn injected_p4_fails_the_bound() {
        let mut r = find_boundary_nu(&reference()).unwrap();
        r.type_at_nu = StateType { p: 4, q: 6 };
        assert!(!certify_boundary_type_bound(&r));
    }

    #[test]
    fn curves_preserve_trace() {
        let c = eigenvalue_curves(&reference(), 0.0, 1.6, 161).unwrap();
        assert_eq!(c.len(), 161);
        assert_eq!(c.ts[160], 1.6);
        assert!(c.max_trace_deviation() < 1e-10);
        assert_eq!(zero_count(&c.mu[0], &Tolerance::default()), 1);
        assert_eq!(zero_count(&c.lambda[0], &Tolerance::default()), 3);
        assert!(eigenvalue_curves(&reference(), 1.0, 1.0, 5).is_err());
        assert!(eigenvalue_curves(&reference(), 0.0, 1.0, 1).is_err());
    }
}
