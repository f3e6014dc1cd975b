//! Numeric solver for the pair equation `|x⊗y> ∈ D`, `|x̄⊗y> ∈ E` on
//! `C^2 ⊗ C^n`.
//!
//! For fixed `x` both memberships are linear in `y`: every vector of `D^⊥`
//! contributes a row contracted against `x`, every vector of `E^⊥` a row
//! contracted against `x̄`. A solution is an `x` where the stacked rows have
//! a nontrivial kernel, i.e. where their smallest singular value vanishes.
//! The rows depend on both `s` and `s̄` for `x = (1, s)`, so the zeros are
//! located by a grid scan of `σ_min` followed by Nelder-Mead refinement,
//! once on the affine chart `x = (1, s)` and once on `x = (t, 1)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bipartite::ProductVector;
use crate::linalg::{svd, CVector, ComplexMatrix, Subspace};
use crate::{Error, Result};

const CHART_MARGIN: f64 = 1.1;
const MAX_SEEDS: usize = 512;
const MAX_NM_ITERATIONS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Radius of the disk scanned on the affine chart; the inverted chart
    /// covers the rest of the projective line.
    pub grid_radius: f64,
    /// Grid intervals per axis.
    pub grid_steps: usize,
    /// Nelder-Mead stops once the simplex is smaller than this.
    pub refine_tol: f64,
    /// Largest `σ_min` accepted as a solution.
    pub residual_accept: f64,
    /// Solutions closer than this (chordal distance) are merged.
    pub dedupe_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid_radius: 5.0,
            grid_steps: 200,
            refine_tol: 1e-12,
            residual_accept: 1e-8,
            dedupe_tol: 1e-6,
        }
    }
}

impl SearchOptions {
    /// Radius `a + b + 2`, which bounds every root of `b + α³ - a|α|² = 0`.
    pub fn for_params(a: f64, b: f64) -> Self {
        Self {
            grid_radius: a + b + 2.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("grid_radius", self.grid_radius),
            ("refine_tol", self.refine_tol),
            ("residual_accept", self.residual_accept),
            ("dedupe_tol", self.dedupe_tol),
        ];
        if let Some((name, v)) = positive.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidOptions(format!("{name} must be positive, got {v}")));
        }
        if self.grid_steps < 16 {
            return Err(Error::InvalidOptions(format!(
                "grid_steps must be at least 16, got {}",
                self.grid_steps
            )));
        }
        Ok(())
    }

    /// Refined minima above this are clearly not solutions.
    pub fn ambiguity_floor(&self) -> f64 {
        100.0 * self.residual_accept
    }
}

#[derive(Debug, Clone)]
pub struct PairEquationProblem {
    pub d: Subspace,
    pub e: Subspace,
    pub search: SearchOptions,
}

impl PairEquationProblem {
    pub fn new(d: Subspace, e: Subspace, search: SearchOptions) -> Result<Self> {
        if d.ambient_dim() != e.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: d.ambient_dim(),
                actual: e.ambient_dim(),
            });
        }
        if !d.ambient_dim().is_multiple_of(2) || d.ambient_dim() == 0 {
            return Err(Error::InvalidArgument(format!(
                "ambient dimension {} is not 2n",
                d.ambient_dim()
            )));
        }
        if d.dim() == 0 || e.dim() == 0 {
            return Err(Error::InvalidArgument("D and E must be nonzero".into()));
        }
        search.validate()?;
        Ok(Self { d, e, search })
    }
}

/// Point of the projective line carrying `x`: `(1, s)` or `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint {
    Finite(Complex64),
    Infinity,
}

impl ChartPoint {
    /// Chordal distance on the Riemann sphere.
    pub fn chordal_distance(&self, other: &ChartPoint) -> f64 {
        match (self, other) {
            (ChartPoint::Infinity, ChartPoint::Infinity) => 0.0,
            (ChartPoint::Finite(s), ChartPoint::Infinity)
            | (ChartPoint::Infinity, ChartPoint::Finite(s)) => 1.0 / (1.0 + s.norm_sqr()).sqrt(),
            (ChartPoint::Finite(s), ChartPoint::Finite(t)) => {
                (s - t).norm() / ((1.0 + s.norm_sqr()) * (1.0 + t.norm_sqr())).sqrt()
            }
        }
    }

    fn canonical_x(&self) -> CVector {
        match *self {
            ChartPoint::Finite(s) => vec![Complex64::new(1.0, 0.0), s],
            ChartPoint::Infinity => vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }
}

#[derive(Debug, Clone)]
pub struct PairSolution {
    pub point: ChartPoint,
    /// `x` with first nonzero component 1; `y` unit norm with first nonzero
    /// component real positive.
    pub vector: ProductVector,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct PairSolutionSet {
    pub solutions: Vec<PairSolution>,
    /// Heuristic: every refined minimum was either accepted or clearly
    /// above zero. Evidence, not proof.
    pub exhaustive_claim: bool,
    /// Refined `σ_min` at grid minima that were not solutions.
    pub rejected_minima: Vec<f64>,
    /// Number of grid local minima that were refined.
    pub seeds: usize,
}

impl PairSolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn vectors(&self) -> Vec<ProductVector> {
        self.solutions.iter().map(|s| s.vector.clone()).collect()
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.residual).collect()
    }

    /// Smallest rejected minimum, `+inf` when there is none.
    pub fn min_rejected(&self) -> f64 {
        self.rejected_minima.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `max(‖(I - P_D)|x⊗y>‖ / ‖x⊗y‖, ‖(I - P_E)|x̄⊗y>‖ / ‖x̄⊗y‖)`.
pub fn membership_residual(pv: &ProductVector, d: &Subspace, e: &Subspace) -> f64 {
    d.residual(&pv.tensor()).max(e.residual(&pv.partial_conjugate()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Chart {
    /// `x = (1, z)`
    Affine,
    /// `x = (z, 1)`
    Inverted,
}

impl Chart {
    fn x(&self, z: Complex64) -> [Complex64; 2] {
        let one = Complex64::new(1.0, 0.0);
        let raw = match self {
            Chart::Affine => [one, z],
            Chart::Inverted => [z, one],
        };
        let n = (1.0 + z.norm_sqr()).sqrt();
        [raw[0] / n, raw[1] / n]
    }
}

/// The `y`-linear constraints for one `(D, E)` pair.
struct Constraints {
    n: usize,
    d_perp: Vec<CVector>,
    e_perp: Vec<CVector>,
}

impl Constraints {
    fn new(d: &Subspace, e: &Subspace) -> Self {
        Self {
            n: d.ambient_dim() / 2,
            d_perp: d.complement().basis().to_vec(),
            e_perp: e.complement().basis().to_vec(),
        }
    }

    fn count(&self) -> usize {
        self.d_perp.len() + self.e_perp.len()
    }

    fn matrix(&self, x: [Complex64; 2]) -> ComplexMatrix {
        let n = self.n;
        let xc = [x[0].conj(), x[1].conj()];
        let mut m = ComplexMatrix::zeros(self.count(), n);
        for (r, f) in self.d_perp.iter().enumerate() {
            for j in 0..n {
                m[(r, j)] = f[j].conj() * x[0] + f[n + j].conj() * x[1];
            }
        }
        let off = self.d_perp.len();
        for (r, g) in self.e_perp.iter().enumerate() {
            for j in 0..n {
                m[(off + r, j)] = g[j].conj() * xc[0] + g[n + j].conj() * xc[1];
            }
        }
        m
    }

    fn sigma_min(&self, x: [Complex64; 2]) -> f64 {
        svd(&self.matrix(x)).smallest()
    }

    /// Right singular vector of the smallest singular value.
    fn kernel_vector(&self, x: [Complex64; 2]) -> CVector {
        let d = svd(&self.matrix(x));
        d.v.column(self.n - 1)
    }
}

struct Candidate {
    point: ChartPoint,
    sigma: f64,
    chart: Chart,
    z: Complex64,
}

pub fn solve_pair_equation(prob: &PairEquationProblem) -> Result<PairSolutionSet> {
    prob.search.validate()?;
    let cons = Constraints::new(&prob.d, &prob.e);
    if cons.count() < cons.n {
        return Err(Error::NonFiniteSolutionSet {
            constraints: cons.count(),
            unknowns: cons.n,
        });
    }
    let opts = &prob.search;
    let mut accepted: Vec<Candidate> = Vec::new();
    let mut rejected = Vec::new();
    let mut seeds_total = 0;
    let mut capped = false;

    for chart in [Chart::Affine, Chart::Inverted] {
        let radius = match chart {
            Chart::Affine => opts.grid_radius,
            Chart::Inverted => 1.0 / opts.grid_radius,
        };
        let (seeds, spacing, was_capped) = grid_minima(&cons, chart, radius * CHART_MARGIN, opts.grid_steps);
        capped |= was_capped;
        seeds_total += seeds.len();

        let refined: Vec<(Complex64, f64)> = seeds
            .par_iter()
            .map(|&z0| nelder_mead(|z| cons.sigma_min(chart.x(z)), z0, spacing, opts.refine_tol))
            .collect();

        for (z, sigma) in refined {
            let inside = match chart {
                Chart::Affine => z.norm() <= radius,
                Chart::Inverted => z.norm() < radius,
            };
            if !inside {
                continue;
            }
            if sigma > opts.residual_accept {
                rejected.push(sigma);
                continue;
            }
            let point = match chart {
                Chart::Affine => ChartPoint::Finite(z),
                Chart::Inverted if z.norm() <= 10.0 * opts.refine_tol => ChartPoint::Infinity,
                Chart::Inverted => ChartPoint::Finite(z.inv()),
            };
            let candidate = Candidate {
                point,
                sigma,
                chart,
                z,
            };
            match accepted
                .iter_mut()
                .find(|c| c.point.chordal_distance(&point) <= opts.dedupe_tol)
            {
                Some(existing) if existing.sigma > sigma => *existing = candidate,
                Some(_) => {}
                None => accepted.push(candidate),
            }
        }
    }

    let mut solutions = Vec::with_capacity(accepted.len());
    for c in accepted {
        let x = match c.point {
            ChartPoint::Infinity => c.chart.x(Complex64::new(0.0, 0.0)),
            _ => c.chart.x(c.z),
        };
        let y = canonical_y(cons.kernel_vector(x));
        let vector = ProductVector::new(c.point.canonical_x(), y)?;
        let residual = membership_residual(&vector, &prob.d, &prob.e);
        if residual <= opts.residual_accept {
            solutions.push(PairSolution {
                point: c.point,
                vector,
                residual,
            });
        } else {
            rejected.push(residual);
        }
    }
    solutions.sort_by(|a, b| match (a.point, b.point) {
        (ChartPoint::Infinity, ChartPoint::Infinity) => std::cmp::Ordering::Equal,
        (ChartPoint::Infinity, _) => std::cmp::Ordering::Less,
        (_, ChartPoint::Infinity) => std::cmp::Ordering::Greater,
        (ChartPoint::Finite(s), ChartPoint::Finite(t)) => {
            s.re.total_cmp(&t.re).then(s.im.total_cmp(&t.im))
        }
    });
    let floor = opts.ambiguity_floor();
    Ok(PairSolutionSet {
        exhaustive_claim: !capped && rejected.iter().all(|&r| r >= floor),
        solutions,
        rejected_minima: rejected,
        seeds: seeds_total,
    })
}

fn canonical_y(mut y: CVector) -> CVector {
    let n = crate::linalg::norm(&y);
    let max = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let phase = y
        .iter()
        .find(|z| z.norm() > 1e-12 * max)
        .map(|z| (z / z.norm()).conj())
        .unwrap_or(Complex64::new(1.0, 0.0));
    for v in y.iter_mut() {
        *v = *v * phase / n;
    }
    y
}

/// Local minima of `σ_min` on a square grid clipped to the disk of the
/// given radius. Returns the seeds, the grid spacing and whether the seed
/// list was truncated.
fn grid_minima(cons: &Constraints, chart: Chart, radius: f64, steps: usize) -> (Vec<Complex64>, f64, bool) {
    let h = 2.0 * radius / steps as f64;
    let coord = |k: usize| -radius + h * k as f64;
    let side = steps + 1;
    let values: Vec<f64> = (0..side)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..side).map(move |j| {
                let z = Complex64::new(coord(i), coord(j));
                if z.norm() > radius * (1.0 + 1e-12) {
                    f64::INFINITY
                } else {
                    cons.sigma_min(chart.x(z))
                }
            })
        })
        .collect();

    let mut minima: Vec<(f64, Complex64)> = Vec::new();
    for i in 0..side {
        for j in 0..side {
            let v = values[i * side + j];
            if !v.is_finite() {
                continue;
            }
            let mut is_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= side as i64 || nj >= side as i64 {
                        continue;
                    }
                    if values[ni as usize * side + nj as usize] < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                minima.push((v, Complex64::new(coord(i), coord(j))));
            }
        }
    }
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    let capped = minima.len() > MAX_SEEDS;
    minima.truncate(MAX_SEEDS);
    (minima.into_iter().map(|(_, z)| z).collect(), h, capped)
}

/// Nelder-Mead on `(Re z, Im z)`. Returns the best vertex and its value.
fn nelder_mead(f: impl Fn(Complex64) -> f64, start: Complex64, step: f64, tol: f64) -> (Complex64, f64) {
    let mut simplex = [
        start,
        start + Complex64::new(step, 0.0),
        start + Complex64::new(0.0, step),
    ];
    let mut values = simplex.map(&f);
    for _ in 0..MAX_NM_ITERATIONS {
        let mut order = [0, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);
        let size = (simplex[1] - simplex[0]).norm().max((simplex[2] - simplex[0]).norm());
        if size < tol {
            break;
        }
        let centroid = (simplex[0] + simplex[1]) * 0.5;
        let reflected = centroid + (centroid - simplex[2]);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = centroid + (centroid - simplex[2]) * 2.0;
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let contracted = if fr < values[2] {
                centroid + (reflected - centroid) * 0.5
            } else {
                centroid + (simplex[2] - centroid) * 0.5
            };
            let fc = f(contracted);
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = simplex[0] + (simplex[k] - simplex[0]) * 0.5;
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    (simplex[best], values[best])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{entangled_vectors, subspace_d, subspace_e, ConstructionParams};
    use crate::linalg::Tolerance;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn options_are_validated() {
        let o = SearchOptions {
            grid_steps: 8,
            ..SearchOptions::default()
        };
        assert!(matches!(o.validate(), Err(Error::InvalidOptions(_))));
        let o = SearchOptions {
            dedupe_tol: 0.0,
            ..SearchOptions::default()
        };
        assert!(o.validate().is_err());
    }

    #[test]
    fn residual_smoke_cases() {
        // 2x2: e1⊗e1 against D = span{e2⊗e2}, E = C^4
        let e1e1 = ProductVector::new(vec![c(1.0), c(0.0)], vec![c(1.0), c(0.0)]).unwrap();
        let mut e2e2 = vec![c(0.0); 4];
        e2e2[3] = c(1.0);
        let d = Subspace::span(4, &[e2e2], &Tolerance::default()).unwrap();
        assert!((membership_residual(&e1e1, &d, &Subspace::full(4)) - 1.0).abs() < 1e-15);
        let full = Subspace::full(4);
        assert_eq!(membership_residual(&e1e1, &full, &full), 0.0);
    }

    #[test]
    fn z1_residual_is_tiny() {
        let p = ConstructionParams::new(2.0, 1.0).unwrap();
        let pv = crate::construction::z_of(c(1.0));
        assert!(membership_residual(&pv, &subspace_d(), &subspace_e(&p)) <= 1e-12);
    }

    #[test]
    fn completely_entangled_space_has_no_solutions() {
        let d = Subspace::span(8, &entangled_vectors(), &Tolerance::default()).unwrap();
        let prob = PairEquationProblem::new(d, Subspace::full(8), SearchOptions::default()).unwrap();
        let sols = solve_pair_equation(&prob).unwrap();
        assert!(sols.is_empty());
        assert!(sols.exhaustive_claim);
    }

    #[test]
    fn full_space_is_not_finite() {
        let prob =
            PairEquationProblem::new(Subspace::full(8), Subspace::full(8), SearchOptions::default())
                .unwrap();
        assert!(matches!(
            solve_pair_equation(&prob),
            Err(Error::NonFiniteSolutionSet { constraints: 0, unknowns: 4 })
        ));
    }

    #[test]
    fn finds_the_ten_solutions() {
        let p = ConstructionParams::new(2.0, 1.0).unwrap();
        let prob = PairEquationProblem::new(
            subspace_d(),
            subspace_e(&p),
            SearchOptions::for_params(p.a(), p.b()),
        )
        .unwrap();
        let sols = solve_pair_equation(&prob).unwrap();
        assert_eq!(sols.len(), 10, "{:?}", sols.solutions.iter().map(|s| s.point).collect::<Vec<_>>());
        assert_eq!(sols.solutions[0].point, ChartPoint::Infinity);
        assert!(sols.exhaustive_claim);
        for s in &sols.solutions {
            assert!(s.residual <= 1e-8);
            let y = s.vector.y();
            assert!(y[0].im.abs() < 1e-15 && y[0].re >= 0.0);
        }
    }

    #[test]
    fn nelder_mead_finds_cone_minimum() {
        let target = Complex64::new(0.3, -0.2);
        let (z, v) = nelder_mead(|z| (z - target).norm(), Complex64::new(0.0, 0.0), 0.05, 1e-13);
        assert!((z - target).norm() < 1e-12);
        assert!(v < 1e-12);
    }
}
