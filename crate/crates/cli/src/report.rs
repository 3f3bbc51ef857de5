//! One report per subcommand. Reports are plain JSON values; everything
//! except the `timings` field is a function of the input alone.

use std::collections::BTreeMap;
use std::time::Instant;

use multilog_core::algebra::{Polynomial, RingContext};
use multilog_core::curves::{
    betti_theorem_check, conductor, has_embedding_dimension, is_quasi_homogeneous, line_arrangement_check,
    normalization_inclusion_check, rc_generation_check, val_identity_check, BranchParametrization,
};
use multilog_core::gb::{is_zerodivisor, Matrix, PresentedModule};
use multilog_core::logarithmic::{Fraction, LogProblem, ResidueMap};
use multilog_core::resolution::{minimal_resolution, FreeResolution};
use multilog_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// `h Ω^k(log X/C)`.
    Logforms,
    /// `Der^k(-log X/C)`.
    Derk,
    /// `R_X`.
    Residues,
    /// `J_{X/C}` as a module over the ambient ring.
    Jacobian,
    /// `O_X / J_{X/C}`.
    Singular,
    /// `O_X`.
    Ring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    LogForms { q: Option<usize> },
    DerK,
    Jacobian,
    Residues,
    Freeness,
    Resolve { target: Target },
    Curve,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LogForms { .. } => "logforms",
            Command::DerK => "derk",
            Command::Jacobian => "jacobian",
            Command::Residues => "residues",
            Command::Freeness => "freeness",
            Command::Resolve { .. } => "resolve",
            Command::Curve => "curve",
        }
    }
}

/// Command-line overrides of the problem file.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub max_length: Option<usize>,
    pub truncation: Option<u32>,
}

#[derive(Debug)]
pub enum RunError {
    Engine(Error),
    /// The command does not apply to this problem.
    Usage(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Engine(e)
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Engine(e) => write!(f, "engine error ({}): {}", error_code(e), e),
            RunError::Usage(m) => write!(f, "{}", m),
        }
    }
}

/// Stable machine-readable names for engine errors.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::ZeroInput => "zero_input",
        Error::InvalidRing(_) => "invalid_ring",
        Error::Parse(_) => "parse",
        Error::RankMismatch { .. } => "rank_mismatch",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::InconsistentDecomposition => "inconsistent_decomposition",
        Error::NonzerodivisorSearchExhausted { .. } => "nonzerodivisor_search_exhausted",
        Error::NotQuasiHomogeneous => "not_quasi_homogeneous",
        Error::ResolutionTooLong { .. } => "resolution_too_long",
        Error::Undetermined { .. } => "undetermined",
        Error::NotCertified { .. } => "not_certified",
        Error::EmbeddingDimension => "embedding_dimension",
        Error::SingularTransition => "singular_transition",
        Error::Inconsistent(_) => "inconsistent",
        Error::InvalidInput(_) => "invalid_input",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip)]
    pub summary: Vec<String>,
    /// Seconds per phase; excluded from [`Report::canonical_json`].
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.into(),
            inputs,
            results: json!({}),
            checks: BTreeMap::new(),
            summary: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report without timings, for byte-wise comparison.
    pub fn canonical_json(&self) -> String {
        Report { timings: BTreeMap::new(), ..self.clone() }.to_json()
    }

    fn set(&mut self, key: &str, v: Value) {
        self.results.as_object_mut().expect("results are an object").insert(key.into(), v);
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.into(), ok);
        self.summary.push(format!("{:<40} {}", name, if ok { "ok" } else { "FAILED" }));
    }

    fn note(&mut self, line: String) {
        self.summary.push(line);
    }

    fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(phase.into()).or_default() += start.elapsed().as_secs_f64();
        out
    }

    /// Human-readable summary lines.
    pub fn human(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for l in &self.summary {
            out += &format!("  {}\n", l);
        }
        out += &format!("  result: {}\n", if self.pass() { "pass" } else { "FAIL" });
        out
    }
}

fn columns(ctx: &RingContext, m: &Matrix) -> Vec<Vec<String>> {
    m.columns().iter().map(|c| c.0.iter().map(|p| ctx.format(p)).collect()).collect()
}

fn polys(ctx: &RingContext, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| ctx.format(p)).collect()
}

fn fraction(ctx: &RingContext, f: &Fraction) -> Value {
    json!({"numerator": ctx.format(&f.numerator), "denominator": ctx.format(&f.denominator)})
}

fn resolution_json(ctx: &RingContext, r: &FreeResolution) -> Value {
    json!({
        "ranks": r.ranks(),
        "length": r.length(),
        "differentials": r.differentials().iter().map(|d| d.format(ctx)).collect::<Vec<_>>(),
    })
}

fn max_length(problem: &Problem, s: &Settings) -> usize {
    s.max_length.or(problem.options.max_length).unwrap_or(problem.ctx.nvars() + 1)
}

/// The residue map for the first nonzerodivisor among the first `budget`
/// candidates, or the engine default when no budget is set.
pub fn residue_map(p: &LogProblem, budget: Option<usize>) -> Result<(Vec<i64>, ResidueMap), RunError> {
    let Some(budget) = budget else {
        let (c, g) = p.admissible_denominator(0)?;
        return Ok((c, p.residue_map_with(g)));
    };
    for (c, g) in p.weighted_candidates().into_iter().take(budget) {
        if !is_zerodivisor(p.ctx(), &g, p.ideal_c())?.zerodivisor {
            return Ok((c, p.residue_map_with(g)));
        }
    }
    Err(Error::NonzerodivisorSearchExhausted { tried: budget }.into())
}

pub fn run(command: &Command, problem: &Problem, settings: &Settings) -> Result<Report, RunError> {
    let inputs = serde_json::to_value(problem.to_file()).expect("problem files serialize");
    let mut report = Report::new(command.name(), inputs);
    let p = report.timed("setup", || problem.log_problem())?;
    let ctx = p.ctx().clone();
    let max = max_length(problem, settings);
    let k = p.codim();
    report.set("codim", json!(k));
    match command {
        Command::LogForms { q } => {
            let q = q.unwrap_or(k);
            if q > p.nvars() {
                return Err(RunError::Usage(format!("q = {} exceeds the number of variables", q)));
            }
            let forms = report.timed("forms", || p.log_forms_numerator(q))?;
            let res = report.timed("resolution", || minimal_resolution(&ctx, &forms.presented(&ctx), max))?;
            report.set("q", json!(q));
            report.set("generators", json!(columns(&ctx, &forms.gens)));
            report.set("betti", json!(res.ranks()));
            report.note(format!("h Ω^{}(log X/C): {} generators, Betti {:?}", q, forms.gens.ncols(), res.ranks()));
            let ok = report.timed("checks", || forms.satisfies_definition(&p))?;
            report.check("generators_are_logarithmic", ok);
        }
        Command::DerK => {
            let der = report.timed("fields", || p.log_kvector_fields())?;
            let res = report.timed("resolution", || minimal_resolution(&ctx, &der.presented(&ctx), max))?;
            report.set("generators", json!(columns(&ctx, &der.gens)));
            report.set("betti", json!(res.ranks()));
            report.set("projdim", json!(res.length()));
            report.note(format!("Der^{}(-log X/C): Betti {:?}, projdim {:?}", k, res.ranks(), res.length()));
            let ok = report.timed("checks", || der.satisfies_definition(&p))?;
            report.check("generators_are_logarithmic", ok);
        }
        Command::Jacobian => {
            report.set("minors", json!(polys(&ctx, &p.jacobian_minors())));
            report.set("jacobian_ideal", json!(polys(&ctx, p.jacobian_ideal().gens())));
            report.set("restricted_jacobian", json!(polys(&ctx, p.restricted_jacobian().gens())));
            report.set(
                "fundamental_form",
                json!(p.fundamental_form().0.iter().map(|c| ctx.format(c)).collect::<Vec<_>>()),
            );
            report.set("fundamental_unit", json!(ctx.format(p.fundamental_unit())));
            report.note(format!("{} maximal minors", p.jacobian_minors().len()));
            let ok = report.timed("checks", || p.check_fundamental_form())?;
            report.check("fundamental_form", ok);
        }
        Command::Residues => {
            let (coeffs, map) = report.timed("denominator", || residue_map(&p, problem.options.candidate_budget))?;
            let g = map.denominator().clone();
            let rx = report.timed("residues", || p.residue_module_with(&map))?;
            let gens = report.timed("resolution", || rx.minimal_generators(&ctx))?;
            let res =
                report.timed("resolution", || rx.presented(&ctx).and_then(|m| minimal_resolution(&ctx, &m, max)))?;
            let cx = map.residue(p.fundamental_form())?;
            report.set("denominator", json!({"coefficients": coeffs, "g": ctx.format(&g)}));
            report.set("numerators", json!(polys(&ctx, rx.numerators())));
            report.set("minimal_generators", json!(gens));
            report.set("betti", json!(res.ranks()));
            report.set("fundamental_residue", fraction(&ctx, &cx));
            report.note(format!(
                "R_X over g = {}: {} minimal generators, Betti {:?}",
                ctx.format(&g),
                gens,
                res.ranks()
            ));
            let one = Fraction::new(Polynomial::one(), Polynomial::one());
            report.check("fundamental_residue_is_one", cx.equals(&one, &ctx, p.ideal_x())?);
            let dual = report.timed("duality", || -> multilog_core::Result<bool> {
                p.residue_module_on_c_with(&g)?.equals(&ctx, &p.jacobian_dual_with(&g))
            })?;
            report.check("duality", dual);
            let pairing = report.timed("pairing", || p.pairing_check())?;
            report.check("pairing", pairing);
        }
        Command::Freeness => {
            let f = report.timed("freeness", || p.freeness_report())?;
            report.set(
                "report",
                json!({
                    "p1": f.p1, "p2": f.p2, "p3": f.p3, "p4": f.p4, "p5": f.p5,
                    "der_betti": f.der_betti,
                    "log_forms_betti": f.log_forms_betti,
                    "residue_betti": f.residue_betti,
                    "criteria": f.criteria(),
                }),
            );
            report.set("verdict", json!(if f.free { "free" } else { "not free" }));
            report.note(format!(
                "{}: p1..p5 = {:?} {:?} {:?} {:?} {:?}",
                if f.free { "free" } else { "not free" },
                f.p1,
                f.p2,
                f.p3,
                f.p4,
                f.p5
            ));
            report.check("criteria_agree", f.criteria().iter().all(|&c| c == f.free));
        }
        Command::Resolve { target } => {
            let module = report.timed("module", || presented_target(&p, *target))?;
            let res = report.timed("resolution", || minimal_resolution(&ctx, &module, max))?;
            report.set("target", json!(format!("{:?}", target).to_lowercase()));
            report.set("resolution", resolution_json(&ctx, &res));
            report.note(format!("ranks {:?}", res.ranks()));
            report.check("minimal", res.is_minimal());
            let exact = report.timed("checks", || res.is_exact(&ctx))?;
            report.check("exact", exact);
        }
        Command::Curve => {
            let param = problem
                .parametrization_at(settings.truncation)
                .ok_or_else(|| RunError::Usage("the curve command needs a parametrization block".into()))?;
            curve(&mut report, problem, &p, &param)?;
        }
    }
    Ok(report)
}

fn presented_target(p: &LogProblem, target: Target) -> multilog_core::Result<PresentedModule> {
    let ctx = p.ctx();
    Ok(match target {
        Target::Logforms => p.log_forms_numerator(p.codim())?.presented(ctx),
        Target::Derk => p.log_kvector_fields()?.presented(ctx),
        Target::Residues => p.residue_module()?.presented(ctx)?,
        Target::Jacobian => {
            PresentedModule::subquotient(ctx, &p.restricted_jacobian().to_matrix(), &p.ideal_x().to_matrix())?
        }
        Target::Singular => PresentedModule::quotient_ring(&p.restricted_jacobian().sum(p.ideal_x())),
        Target::Ring => PresentedModule::quotient_ring(p.ideal_x()),
    })
}

/// Whether every branch is a line `t ↦ t·v`.
fn is_line_arrangement(param: &BranchParametrization) -> bool {
    param.branches().iter().all(|b| b.coords.iter().all(|c| c.iter().all(|(e, _)| *e == 1)))
}

fn curve(
    report: &mut Report,
    problem: &Problem,
    p: &LogProblem,
    param: &BranchParametrization,
) -> Result<(), RunError> {
    let bound = problem.conductor_bound();
    if !param.annihilates(p.x_generators()) {
        return Err(RunError::Usage("the parametrization does not lie on X".into()));
    }
    let gamma = report.timed("conductor", || conductor(param, bound))?;
    report.set("gamma", json!(gamma.gamma));
    report.set("conductor_bound", json!(bound));
    report.set("branches", json!(param.branch_count()));
    report.note(format!("γ = {:?} (certified on [0, {}])", gamma.gamma, bound));
    let curve_hypotheses = p.x_is_c() && p.codim() + 1 == p.nvars();
    let qh = curve_hypotheses && is_quasi_homogeneous(p)?;
    let singular = !p.jacobian_minors().iter().any(Polynomial::is_local_unit);
    report.set("quasi_homogeneous_curve", json!(qh));
    if qh && singular {
        let v = report.timed("valuations", || val_identity_check(p, param, bound))?;
        report.set(
            "valuations",
            json!({
                "coordinates": v.coordinate_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "minors": v.minor_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "residue_omega0": v.residue_value.to_string(),
            }),
        );
        report.note(format!("val(res ω₀) = {}", v.residue_value));
        report.check("residue_pipelines_agree", v.pipelines_agree);
        report.check("minor_values", v.minors_match);
        report.check("residue_value", v.residue_matches);
        report.check("infimum_attained", v.infimum_attained);
        let g = report.timed("generation", || rc_generation_check(p))?;
        report.set("generating_set_size", json!(g.generating_set_size));
        report.check("residues_generated_by_one_and_omega0", g.generated);
        report.check("generators_minimal", g.one_alone_insufficient && g.omega0_alone_insufficient);
        report.check("forms_generated", g.forms_generated);
        if has_embedding_dimension(p) {
            let b = report.timed("betti", || betti_theorem_check(p))?;
            report.set(
                "betti",
                json!({"residues": b.residue_betti, "forms": b.forms_betti,
                       "expected_residues": b.expected_residue, "expected_forms": b.expected_forms}),
            );
            report.note(format!("Betti R_C {:?}, forms {:?}", b.residue_betti, b.forms_betti));
            report.check("betti_theorems", b.holds());
        }
        let units = p.ctx().weights().iter().all(|&w| w == 1);
        if units && is_line_arrangement(param) {
            let l = report.timed("lines", || line_arrangement_check(p, param))?;
            report.set("plane", json!(l.plane));
            report.check("plane_characterization", l.holds());
        }
    }
    let inclusion = report.timed("normalization", || normalization_inclusion_check(p, param, bound))?;
    report.check("normalization_inclusion", inclusion);
    Ok(())
}
