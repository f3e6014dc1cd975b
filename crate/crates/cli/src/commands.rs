//! Subcommand implementations. Each returns the text to print and whether
//! its checks passed; the binary maps that to an exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use sepfaces::bipartite::{range_space, state_type, transpose_range_space, FaceLocation};
use sepfaces::construction::{ConstructionResult, VerificationReport};
use sepfaces::path::{
    certify_boundary_type_bound, eigenvalue_curves, eigenvalues_at, find_boundary_nu, zero_count,
    BoundaryResult, PathProblem,
};
use sepfaces::solver::{solve_pair_equation, ChartPoint, PairEquationProblem, PairSolutionSet, SearchOptions};
use sepfaces::{Complex64, ConstructionParams, Dims, Error, Subspace, Tolerance};

use crate::format::{curves_to_csv, StateFile};

/// Reasons to stop before producing a result; all map to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parameter(String),
    Input(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parameter(m) => write!(f, "parameter error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Parameter(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub tol: Tolerance,
    pub grid_steps: Option<usize>,
    pub json: bool,
}

impl Settings {
    fn search(&self, base: SearchOptions) -> SearchOptions {
        SearchOptions {
            grid_steps: self.grid_steps.unwrap_or(base.grid_steps),
            ..base
        }
    }
}

pub fn params(a: f64, b: f64) -> Result<ConstructionParams, CliError> {
    Ok(ConstructionParams::new(a, b)?)
}

/// Renders tiny magnitudes as zero so listings do not flicker in sign.
fn clean(v: f64) -> f64 {
    if v.abs() < 1e-13 {
        0.0
    } else {
        v
    }
}

fn complex_text(z: Complex64) -> String {
    format!("{:+.10}{:+.10}i", clean(z.re), clean(z.im))
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn report_text(p: &ConstructionParams, c: &ConstructionResult) -> String {
    let r = &c.report;
    let mut s = String::new();
    let _ = writeln!(s, "parameters: a = {}, b = {} (b < 4a^3/27 = {})", p.a(), p.b(), p.bound());
    let _ = writeln!(
        s,
        "roots: r1 = {:.15}, r2 = {:.15}, r3 = {:.15}",
        c.roots.r1, c.roots.r2, c.roots.r3
    );
    let _ = writeln!(s, "solutions: {}", r.solution_count);
    let _ = writeln!(s, "max membership residual: {:.3e}", r.max_membership_residual);
    let _ = writeln!(s, "max equation residual: {:.3e}", r.max_equation_residual);
    let _ = writeln!(s, "gram rank: {}", r.gram_rank);
    let _ = writeln!(s, "product states independent: {}", r.product_states_independent);
    let _ = writeln!(s, "5-subsets spanning D: {}/{}", r.five_span_d.passed, r.five_span_d.checked);
    let _ = writeln!(s, "7-subsets spanning E: {}/{}", r.seven_span_e.passed, r.seven_span_e.checked);
    for case in &r.rref_cases {
        let _ = writeln!(
            s,
            "rref case {}: {} (deviation {:.3e})",
            case.label,
            if case.matches { "match" } else { "MISMATCH" },
            case.deviation
        );
    }
    let _ = writeln!(s, "alpha^8 identity residual: {:.3e}", r.alpha8_identity_residual);
    let faces: Vec<String> = r.face_counts.iter().map(|(k, n)| format!("{k}:{n}")).collect();
    let _ = writeln!(s, "faces by dimension: {}", faces.join(" "));
    s
}

fn report_json(p: &ConstructionParams, c: &ConstructionResult) -> Value {
    let r: &VerificationReport = &c.report;
    json!({
        "a": p.a(),
        "b": p.b(),
        "roots": [c.roots.r1, c.roots.r2, c.roots.r3],
        "solution_count": r.solution_count,
        "max_membership_residual": json_number(r.max_membership_residual),
        "max_equation_residual": json_number(r.max_equation_residual),
        "gram_rank": r.gram_rank,
        "product_states_independent": r.product_states_independent,
        "five_span_d": { "passed": r.five_span_d.passed, "checked": r.five_span_d.checked },
        "seven_span_e": { "passed": r.seven_span_e.passed, "checked": r.seven_span_e.checked },
        "rref_cases": r.rref_cases.iter().map(|c| json!({
            "label": c.label,
            "indices": c.indices,
            "matches": c.matches,
            "deviation": json_number(c.deviation),
        })).collect::<Vec<_>>(),
        "alpha8_identity_residual": json_number(r.alpha8_identity_residual),
        "face_counts": r.face_counts,
        "all_passed": r.all_passed(),
    })
}

/// Builds the construction and optionally writes its artifacts.
pub fn construct(p: &ConstructionParams, settings: &Settings, out: Option<&Path>) -> Result<Output, CliError> {
    let c = ConstructionResult::build(p)?;
    let passed = c.report.all_passed();
    if let Some(dir) = out {
        ensure_dir(dir)?;
        let dims = c.dims();
        let tag = |f: StateFile| f.with_meta("a", p.a()).with_meta("b", p.b());
        let files = [
            ("rho0.state", tag(StateFile::from_state(&c.rho0)).with_meta("object", "rho0")),
            ("rho1.state", tag(StateFile::from_state(&c.rho1)).with_meta("object", "rho1")),
            ("d.basis", tag(StateFile::from_subspace(&c.d, dims).expect("D is nonzero"))),
            ("e.basis", tag(StateFile::from_subspace(&c.e, dims).expect("E is nonzero"))),
            (
                "solutions.vectors",
                tag(StateFile::from_vectors(
                    &c.solutions.iter().map(|s| s.normalized().tensor()).collect::<Vec<_>>(),
                    dims,
                )
                .expect("ten vectors")),
            ),
        ];
        for (name, f) in files {
            f.write(&dir.join(name)).map_err(CliError::Io)?;
        }
        write_text(&dir.join("report.txt"), &report_text(p, &c))?;
        write_text(&dir.join("report.json"), &pretty(&report_json(p, &c)))?;
    }
    let text = if settings.json {
        pretty(&report_json(p, &c))
    } else {
        let mut s = report_text(p, &c);
        let _ = writeln!(s, "status: {}", if passed { "PASS" } else { "FAIL" });
        s
    };
    Ok(Output { text, passed })
}

/// The construction report plus a solver cross-check and the face
/// positions of the two barycenters.
pub fn verify(p: &ConstructionParams, settings: &Settings) -> Result<Output, CliError> {
    let c = ConstructionResult::build(p)?;
    let tol = &settings.tol;
    let prob = PairEquationProblem::new(
        c.d.clone(),
        c.e.clone(),
        settings.search(SearchOptions::for_params(p.a(), p.b())),
    )?;
    let found = solve_pair_equation(&prob)?;
    let matched = found.len() == c.solutions.len()
        && found.solutions.iter().all(|f| {
            c.solutions
                .iter()
                .filter(|s| f.vector.projector().max_abs_diff(&s.projector()) <= 1e-6)
                .count()
                == 1
        });
    let t0 = state_type(&c.rho0, tol);
    let t1 = state_type(&c.rho1, tol);
    let loc0 = sepfaces::bipartite::in_face(&c.rho0, &c.d, &c.e, tol)?;
    let loc1 = c.rho1_location(tol)?;
    let passed = c.report.all_passed()
        && matched
        && loc0 == FaceLocation::Interior
        && loc1 != FaceLocation::Outside;

    let text = if settings.json {
        let mut v = report_json(p, &c);
        let extra = json!({
            "solver_solutions": found.len(),
            "solver_matches_enumeration": matched,
            "solver_exhaustive_claim": found.exhaustive_claim,
            "rho0_type": [t0.p, t0.q],
            "rho1_type": [t1.p, t1.q],
            "rho0_location": format!("{loc0:?}").to_lowercase(),
            "rho1_location": format!("{loc1:?}").to_lowercase(),
            "all_passed": passed,
        });
        if let (Value::Object(base), Value::Object(more)) = (&mut v, extra) {
            base.extend(more);
        }
        pretty(&v)
    } else {
        let mut s = report_text(p, &c);
        let _ = writeln!(
            s,
            "solver: {} solutions, {} enumeration, exhaustive claim {}",
            found.len(),
            if matched { "matching" } else { "NOT matching" },
            found.exhaustive_claim
        );
        let _ = writeln!(s, "rho0: type {t0}, {}", format!("{loc0:?}").to_lowercase());
        let _ = writeln!(s, "rho1: type {t1}, {}", format!("{loc1:?}").to_lowercase());
        let _ = writeln!(s, "status: {}", if passed { "PASS" } else { "FAIL" });
        s
    };
    Ok(Output { text, passed })
}

fn path_problem(p: &ConstructionParams, settings: &Settings) -> Result<PathProblem, CliError> {
    let mut prob = PathProblem::for_params(p)?;
    prob.tol = settings.tol;
    prob.search = settings.search(prob.search);
    Ok(prob)
}

fn summary_text(p: &ConstructionParams, prob: &PathProblem, r: &BoundaryResult) -> String {
    let (l, m) = eigenvalues_at(prob, r.nu);
    let mut s = String::new();
    let _ = writeln!(s, "parameters: a = {}, b = {}", p.a(), p.b());
    let _ = writeln!(s, "nu: {:.12}", r.nu);
    let _ = writeln!(s, "bracket: [{:.17e}, {:.17e}]", r.bracket.0, r.bracket.1);
    let _ = writeln!(s, "type at nu: {}", r.type_at_nu);
    let _ = writeln!(s, "zero eigenvalues at nu: state {}, partial transpose {}", zero_count(&l, &prob.tol), zero_count(&m, &prob.tol));
    let _ = writeln!(s, "binding side: {}", r.binding_side);
    let _ = writeln!(s, "edge certified: {}", r.edge_certified);
    let _ = writeln!(s, "edge search: {} solutions, smallest rejected minimum {:.3e}", r.edge_search.len(), r.edge_search.min_rejected());
    let _ = writeln!(s, "type bound (p = 5, q in {{5, 6}}): {}", certify_boundary_type_bound(r));
    s
}

fn summary_json(p: &ConstructionParams, prob: &PathProblem, r: &BoundaryResult) -> Value {
    let (l, m) = eigenvalues_at(prob, r.nu);
    json!({
        "a": p.a(),
        "b": p.b(),
        "nu": r.nu,
        "bracket": [r.bracket.0, r.bracket.1],
        "type_at_nu": [r.type_at_nu.p, r.type_at_nu.q],
        "zero_counts_at_nu": [zero_count(&l, &prob.tol), zero_count(&m, &prob.tol)],
        "binding_side": r.binding_side.to_string(),
        "edge_certified": r.edge_certified,
        "edge_search_solutions": r.edge_search.len(),
        "edge_search_min_rejected": json_number(r.edge_search.min_rejected()),
        "type_bound_certified": certify_boundary_type_bound(r),
    })
}

fn check_sampling(t_max: f64, samples: usize) -> Result<(), CliError> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(CliError::Parameter(format!("--t-max must be positive, got {t_max}")));
    }
    if samples < 2 {
        return Err(CliError::Parameter(format!("--samples must be at least 2, got {samples}")));
    }
    Ok(())
}

/// Finds `ν`, and with `out` writes the curves, the boundary state and a
/// summary.
pub fn path(
    p: &ConstructionParams,
    settings: &Settings,
    t_max: f64,
    samples: usize,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    check_sampling(t_max, samples)?;
    let prob = path_problem(p, settings)?;
    let r = find_boundary_nu(&prob)?;
    let passed = r.edge_certified && certify_boundary_type_bound(&r);
    if let Some(dir) = out {
        ensure_dir(dir)?;
        let curves = eigenvalue_curves(&prob, 0.0, t_max, samples)?;
        write_text(&dir.join("curves.csv"), &curves_to_csv(&curves))?;
        StateFile::from_state(&r.state_at_nu)
            .with_meta("a", p.a())
            .with_meta("b", p.b())
            .with_meta("object", "rho_nu")
            .with_meta("t", format!("{:.17e}", r.nu))
            .write(&dir.join("rho_nu.state"))
            .map_err(CliError::Io)?;
        write_text(&dir.join("boundary.txt"), &summary_text(p, &prob, &r))?;
        write_text(&dir.join("boundary.json"), &pretty(&summary_json(p, &prob, &r)))?;
    }
    let text = if settings.json {
        pretty(&summary_json(p, &prob, &r))
    } else {
        summary_text(p, &prob, &r)
    };
    Ok(Output { text, passed })
}

/// Eigenvalue curves on `[0, t_max]` as CSV, to `out` or into the output.
pub fn curves(
    p: &ConstructionParams,
    settings: &Settings,
    t_max: f64,
    samples: usize,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    check_sampling(t_max, samples)?;
    let prob = path_problem(p, settings)?;
    let curves = eigenvalue_curves(&prob, 0.0, t_max, samples)?;
    let csv = curves_to_csv(&curves);
    let text = match out {
        Some(file) => {
            if let Some(dir) = file.parent().filter(|d| !d.as_os_str().is_empty()) {
                ensure_dir(dir)?;
            }
            write_text(file, &csv)?;
            format!("wrote {} samples to {}\n", curves.len(), file.display())
        }
        None => csv,
    };
    Ok(Output { text, passed: true })
}

#[derive(Debug, Clone)]
pub enum SolveInput {
    /// Files holding bases of `D` and `E`.
    Subspaces { d: PathBuf, e: PathBuf },
    /// A state whose range and partial-transpose range are used.
    State(PathBuf),
}

fn search_radius(files: &[&StateFile]) -> SearchOptions {
    files
        .iter()
        .find_map(|f| Some(SearchOptions::for_params(f.meta_f64("a")?, f.meta_f64("b")?)))
        .unwrap_or_default()
}

fn load_pair(input: &SolveInput, tol: &Tolerance) -> Result<(Subspace, Subspace, Dims, SearchOptions), CliError> {
    let read = |p: &Path| StateFile::read(p).map_err(CliError::Input);
    match input {
        SolveInput::Subspaces { d, e } => {
            let (fd, fe) = (read(d)?, read(e)?);
            if fd.dims != fe.dims {
                return Err(CliError::Input("D and E files have different dims".into()));
            }
            let sd = fd.to_subspace(tol).map_err(CliError::Input)?;
            let se = fe.to_subspace(tol).map_err(CliError::Input)?;
            Ok((sd, se, fd.dims, search_radius(&[&fd, &fe])))
        }
        SolveInput::State(path) => {
            let f = read(path)?;
            let state = f.to_state(tol).map_err(CliError::Input)?;
            Ok((range_space(&state, tol), transpose_range_space(&state, tol), f.dims, search_radius(&[&f])))
        }
    }
}

fn solutions_text(set: &PairSolutionSet) -> String {
    let mut s = String::new();
    for sol in &set.solutions {
        let x: Vec<String> = sol.vector.x().iter().map(|&z| complex_text(z)).collect();
        let y: Vec<String> = sol.vector.y().iter().map(|&z| complex_text(z)).collect();
        let _ = writeln!(s, "x = ({}) y = ({}) residual = {:.3e}", x.join(", "), y.join(", "), sol.residual);
    }
    let _ = write!(s, "{} solutions, exhaustive claim {}", set.len(), set.exhaustive_claim);
    if set.is_empty() {
        s.push_str("; edge state consistent");
    }
    s.push('\n');
    s
}

fn solutions_json(set: &PairSolutionSet) -> Value {
    let pair = |z: &Complex64| json!([clean(z.re), clean(z.im)]);
    json!({
        "count": set.len(),
        "exhaustive_claim": set.exhaustive_claim,
        "min_rejected": json_number(set.min_rejected()),
        "edge_state_consistent": set.is_empty(),
        "solutions": set.solutions.iter().map(|sol| json!({
            "point": match sol.point {
                ChartPoint::Infinity => Value::String("infinity".into()),
                ChartPoint::Finite(s) => pair(&s),
            },
            "x": sol.vector.x().iter().map(pair).collect::<Vec<_>>(),
            "y": sol.vector.y().iter().map(pair).collect::<Vec<_>>(),
            "residual": json_number(sol.residual),
        })).collect::<Vec<_>>(),
    })
}

/// Lists every `x ⊗ y ∈ D` with `x̄ ⊗ y ∈ E`. The count is data, so any
/// successful search passes.
pub fn solve(input: &SolveInput, settings: &Settings) -> Result<Output, CliError> {
    let (d, e, dims, base) = load_pair(input, &settings.tol)?;
    if dims.m != 2 {
        return Err(CliError::Input(format!("the solver needs a qubit first factor, got dims {} {}", dims.m, dims.n)));
    }
    let prob = PairEquationProblem::new(d, e, settings.search(base))?;
    let set = solve_pair_equation(&prob)?;
    let text = if settings.json {
        pretty(&solutions_json(&set))
    } else {
        solutions_text(&set)
    };
    Ok(Output { text, passed: true })
}
