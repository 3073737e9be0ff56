use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cohomone::curvature::curvature_trace;
use cohomone::diagram::{check_theorem31_conditions, harmonic_rep, theorem31_diagram};
use cohomone::metric::{preset_round, preset_stiefel, random_admissible, Ansatz, MetricProfile};
use cohomone::obstruction::{
    bound_analysis, delta_trace, find_witness, random_block_profile, thm31_certify, BoundVerdict, SearchParams,
    Tolerances, Verdict,
};
use cohomone::verify::{run_all, run_suite, Fault, Suite};
use cohomone::Error;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_WITNESS: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "cohomone", version, about = "Curvature certificates for cohomogeneity-one metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the engine oracle suites.
    VerifyEngine(VerifyArgs),
    /// Search a Brieskorn metric profile for a negative curvature witness.
    Certify(CertifyArgs),
    /// Check the class-one hypotheses for (ℓ, m, N) and run the bound.
    ClassOne(ClassOneArgs),
    /// Write a preset profile as JSON.
    Preset(PresetArgs),
    /// Write a CSV trace along the normal geodesic.
    Trace(TraceArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run a single suite.
    #[arg(long, value_parser = ["bi-invariant", "sphere", "closed-form", "brackets"])]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, hide = true, default_value_t = FaultArg::None)]
    inject_fault: FaultArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FaultArg {
    None,
    ShapeSign,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum PresetName {
    Round,
    Stiefel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum AnsatzArg {
    Reduced,
    General,
}

#[derive(Args, Debug, Clone, Serialize)]
struct ProfileArgs {
    /// Profile JSON file.
    #[arg(long, conflicts_with_all = ["preset", "random"])]
    profile: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "random")]
    preset: Option<PresetName>,
    /// Draw a random admissible profile (needs -n, -d, --seed).
    #[arg(long)]
    random: bool,
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'd')]
    d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AnsatzArg::Reduced)]
    ansatz: AnsatzArg,
}

#[derive(Args, Debug, Clone, Serialize)]
struct TolArgs {
    /// Inequality tolerance.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Curvature confirmation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    confirm: f64,
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Endgame interval (0, ε]; defaults to min(0.1·L, 0.05).
    #[arg(long)]
    eps: Option<f64>,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            inequality: self.tol,
            confirm: self.confirm,
            eps: self.eps,
            grid: self.grid,
        }
    }
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    source: ProfileArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Run every check and keep every certificate.
    #[arg(long)]
    exhaustive: bool,
    /// Report JSON (stdout when absent).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Also write the δ trace as CSV.
    #[arg(long)]
    delta_csv: Option<PathBuf>,
    /// Also write the curvature trace along the plane catalog as CSV.
    #[arg(long)]
    curvature_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassOneArgs {
    #[arg(short = 'l')]
    l: usize,
    #[arg(short = 'm')]
    m: usize,
    /// Rank of the ambient SO(N).
    #[arg(short = 'N')]
    big_n: usize,
    /// Seed of the block profile.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PresetArgs {
    #[arg(value_enum)]
    name: PresetName,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum TraceKind {
    /// `t, delta, delta_prime`.
    Delta,
    /// `t, plane, sectional, residual`.
    Curvature,
    /// Upper and lower envelopes of `(log δ)′` near 0.
    Envelope,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    source: ProfileArgs,
    #[arg(long, value_enum, default_value_t = TraceKind::Delta)]
    kind: TraceKind,
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

/// Everything that determines a run; embedded in each report. The worker
/// count is left out since it does not change the output.
#[derive(Debug, Serialize)]
struct RunConfig {
    subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<ProfileArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_one: Option<ClassOneParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<String>,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
    exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ClassOneParams {
    l: usize,
    m: usize,
    n: usize,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    report: &'a T,
}

#[derive(Debug)]
enum Failure {
    Hypothesis(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisFailure(_) => Failure::Hypothesis(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = thread_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ERROR);
    }
    let result = match cli.command {
        Command::VerifyEngine(a) => verify_engine(a),
        Command::Certify(a) => certify(a),
        Command::ClassOne(a) => class_one(a),
        Command::Preset(a) => preset(a),
        Command::Trace(a) => trace(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_HYPOTHESIS)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

/// Reads `COHOMONE_THREADS` and sizes the global pool.
fn thread_cap() -> Result<(), String> {
    let Ok(raw) = std::env::var("COHOMONE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("COHOMONE_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display()))),
        None => {
            match io::stdout().lock().write_all(text.as_bytes()) {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

fn to_json<T: Serialize>(config: &RunConfig, report: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { config, report }).expect("report serializes");
    s.push('\n');
    s
}

fn verify_engine(a: VerifyArgs) -> Outcome {
    let fault = match a.inject_fault {
        FaultArg::None => Fault::None,
        FaultArg::ShapeSign => Fault::ShapeSign,
    };
    let reports = match &a.suite {
        Some(name) => vec![run_suite(name.parse::<Suite>()?, a.seed, fault)?],
        None => run_all(a.seed, fault)?,
    };
    for r in &reports {
        println!("{r}");
    }
    if let Some(path) = &a.output {
        let config = RunConfig {
            subcommand: "verify-engine",
            source: None,
            class_one: None,
            suite: a.suite.clone(),
            seed: a.seed,
            tolerances: None,
            exhaustive: false,
            output: a.output.clone(),
            };
        #[derive(Serialize)]
        struct Suites<'a> {
            suites: &'a [cohomone::verify::SuiteReport],
        }
        write_out(Some(path), &to_json(&config, &Suites { suites: &reports }))?;
    }
    Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_ERROR })
}

fn load_profile(src: &ProfileArgs) -> Result<MetricProfile, Failure> {
    if let Some(path) = &src.profile {
        let text = fs::read_to_string(path).map_err(|e| Failure::Other(format!("cannot read {}: {e}", path.display())))?;
        return MetricProfile::from_json(&text)
            .map_err(|e| Failure::Other(format!("{}: {e}", path.display())));
    }
    let n = src.n.ok_or_else(|| Failure::Other("missing -n".into()))?;
    if let Some(name) = src.preset {
        return Ok(match name {
            PresetName::Round => preset_round(n)?,
            PresetName::Stiefel => preset_stiefel(n)?,
        });
    }
    if src.random {
        let d = src.d.ok_or_else(|| Failure::Other("--random needs -d".into()))?;
        let ansatz = match src.ansatz {
            AnsatzArg::Reduced => Ansatz::Reduced,
            AnsatzArg::General => Ansatz::General,
        };
        return Ok(random_admissible(n, d, src.seed, ansatz)?);
    }
    Err(Failure::Other("give --profile FILE, --preset NAME or --random".into()))
}

fn certify(a: CertifyArgs) -> Outcome {
    let p = load_profile(&a.source)?;
    let params = SearchParams {
        tol: a.tol.tolerances(),
        exhaustive: a.exhaustive,
    };
    let report = find_witness(&p, &params)?;
    let config = RunConfig {
        subcommand: "certify",
        source: Some(a.source.clone()),
        class_one: None,
        suite: None,
        seed: a.source.seed,
        tolerances: Some(params.tol),
        exhaustive: a.exhaustive,
        output: a.output.clone(),
    };
    write_out(a.output.as_deref(), &to_json(&config, &report))?;
    if let Some(path) = &a.delta_csv {
        write_out(Some(path), &delta_csv(&p, params.tol.grid)?)?;
    }
    if let Some(path) = &a.curvature_csv {
        write_out(Some(path), &curvature_csv(&p, params.tol.grid)?)?;
    }
    match (&report.verdict, &report.certificate) {
        (Verdict::Witness, Some(c)) => {
            eprintln!("WITNESS {:?} at t = {:.6} with value {:.6e}", c.kind, c.t, c.value);
            Ok(EXIT_WITNESS)
        }
        (Verdict::NotApplicable, _) => Err(Failure::Hypothesis(format!(
            "NOT-APPLICABLE: {}",
            report.notes.join("; ")
        ))),
        _ => {
            eprintln!("NONE");
            Ok(EXIT_OK)
        }
    }
}

fn class_one(a: ClassOneArgs) -> Outcome {
    let rep = harmonic_rep(a.l, a.m)?;
    let conditions = check_theorem31_conditions(&rep, a.big_n);
    println!(
        "k = {}: (a) {} fixed dim {}, (b) {} transitive match {}, (c) {} multiplicity {}, (d) {} N = {}, k + 2 = {}",
        rep.k,
        mark(conditions.cond_a.passes),
        conditions.cond_a.fixed_dim,
        mark(conditions.cond_b.passes),
        conditions.cond_b.matched.as_deref().unwrap_or("none"),
        mark(conditions.cond_c.passes),
        conditions.cond_c.multiplicity,
        mark(conditions.cond_d.passes),
        a.big_n,
        rep.k + 2,
    );
    let config = RunConfig {
        subcommand: "class-one",
        source: None,
        class_one: Some(ClassOneParams {
            l: a.l,
            m: a.m,
            n: a.big_n,
        }),
        suite: None,
        seed: a.seed,
        tolerances: Some(a.tol.tolerances()),
        exhaustive: false,
        output: a.output.clone(),
    };
    #[derive(Serialize)]
    struct ClassOneOut<'a> {
        k: usize,
        conditions: &'a cohomone::diagram::ConditionReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        bound: Option<&'a cohomone::obstruction::Thm31Report>,
    }
    if !conditions.all_pass() {
        let out = ClassOneOut {
            k: rep.k,
            conditions: &conditions,
            bound: None,
        };
        write_out(a.output.as_deref(), &to_json(&config, &out))?;
        return Err(Failure::Hypothesis(format!(
            "class-one hypotheses not satisfied: condition(s) {} fail",
            conditions.failures().join(", ")
        )));
    }
    let diagram = theorem31_diagram(&rep, a.big_n)?;
    let block = random_block_profile(a.seed);
    let report = thm31_certify(&diagram, &block, &a.tol.tolerances())?;
    let out = ClassOneOut {
        k: rep.k,
        conditions: &conditions,
        bound: Some(&report),
    };
    write_out(a.output.as_deref(), &to_json(&config, &out))?;
    eprintln!(
        "{:?}: max (log δ)′ = {:.4e}, bound √C = {:.4e}",
        report.verdict,
        report.max_log_delta_prime,
        report.c_bound.sqrt()
    );
    Ok(match report.verdict {
        BoundVerdict::Contradiction => EXIT_OK,
        _ => EXIT_ERROR,
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn preset(a: PresetArgs) -> Outcome {
    let p = match a.name {
        PresetName::Round => preset_round(a.n)?,
        PresetName::Stiefel => preset_stiefel(a.n)?,
    };
    let mut text = p.to_json();
    text.push('\n');
    write_out(a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn trace(a: TraceArgs) -> Outcome {
    let p = load_profile(&a.source)?;
    let text = match a.kind {
        TraceKind::Delta => delta_csv(&p, a.grid)?,
        TraceKind::Curvature => curvature_csv(&p, a.grid)?,
        TraceKind::Envelope => {
            let tol = Tolerances {
                eps: a.eps,
                ..Tolerances::default()
            };
            let b = bound_analysis(&p, tol.eps_for(p.length), tol.inequality);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["t", "delta", "log_delta_prime", "upper", "lower", "implied_f1_slope", "feasible"])
                .map_err(csv_err)?;
            for pt in &b.points {
                w.write_record([
                    pt.t.to_string(),
                    pt.delta.to_string(),
                    pt.log_delta_prime.to_string(),
                    pt.u.to_string(),
                    pt.v.to_string(),
                    pt.implied.to_string(),
                    pt.feasible.to_string(),
                ])
                .map_err(csv_err)?;
            }
            finish_csv(w)?
        }
    };
    write_out(a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Other(e.to_string())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::Other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Other(e.to_string()))
}

/// One row per grid point `t_i = L·i/grid`, `i = 0..=grid`, of the
/// normalized profile.
fn delta_csv(p: &MetricProfile, grid: usize) -> Result<String, Failure> {
    let tr = if p.is_normalized(1e-8) {
        delta_trace(p, grid)?
    } else {
        eprintln!("note: δ trace uses the normalized profile (h1(0) = 1)");
        delta_trace(&p.normalize()?, grid)?
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "delta", "delta_prime"]).map_err(csv_err)?;
    for i in 0..tr.t.len() {
        w.write_record([tr.t[i].to_string(), tr.delta[i].to_string(), tr.delta_prime[i].to_string()])
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

fn curvature_csv(p: &MetricProfile, grid: usize) -> Result<String, Failure> {
    let rows = curvature_trace(p, grid)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "plane", "sectional", "residual"]).map_err(csv_err)?;
    for r in &rows {
        w.write_record([
            r.t.to_string(),
            r.plane.clone(),
            r.sectional.to_string(),
            r.residual.map(|x| x.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}
