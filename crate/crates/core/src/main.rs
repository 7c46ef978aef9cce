//! Command-line front end.
//!
//! Every command writes a JSON report to `--out` (or stdout) and a short
//! human-readable summary to stderr. Wall-clock times only appear under the
//! report's `timing` key.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use octoma::monge_ampere::{default_nodes, diagnostics, FJson, MaConfig, Settings, SolveReport};
use octoma::polycalc::{closed_current_residual, closed_current_residual_scalar, format_herm_poly, hess_oct, parse_herm_poly, COMPONENT_LABELS};
use octoma::poly::parse_poly_file;
use octoma::syzygy::{compare_modules, format_modvecs, parse_modvecs, syzygy_defects, syzygy_kernel, ten_quadrics, ModVec, ModuleOrder};
use octoma::schemas::{schema, SCHEMAS};
use octoma::verify::{run_suite, suite_names, Backend, SuiteResult};
use octoma::Error;

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NOINPUT: u8 = 66;
const EXIT_CANTCREAT: u8 = 73;

#[derive(Parser, Debug)]
#[command(name = "octoma", version, about = "Octonionic Hessians, syzygies and a Monge-Ampere solver on the flat torus")]
struct Cli {
    /// Seed of all random instances (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    seed: u64,
    /// Number of random instances per property suite.
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Arithmetic of the algebraic property suites.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the property suites (all of them unless --suite is given).
    Verify {
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// List the suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Syzygies of the ten quadrics.
    Syzygy {
        #[command(subcommand)]
        action: SyzygyCmd,
    },
    /// Parse a polynomial and print its octonionic Hessian.
    Hessian { file: PathBuf },
    /// Closed-current residuals of a Hermitian polynomial matrix.
    CurrentCheck { file: PathBuf },
    /// Monge-Ampere solver.
    Ma {
        #[command(subcommand)]
        action: MaCmd,
    },
    /// Print the JSON Schema of a report (`verify`, `ma-solve`, `error`, ...).
    Schema {
        /// Omit to list the schema names.
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum SyzygyCmd {
    /// Compute a minimal generating set of the syzygy module.
    Compute {
        /// Also write the generators in the matrix text format.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Compare a generator file with the computed module (exit 0 iff equal).
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum MaCmd {
    /// Solve for the potential given the forcing `f` of the config.
    Solve {
        config: PathBuf,
        /// Number of linear continuation steps in f, as `N` or `steps=N`
        /// (overrides the config).
        #[arg(long, value_parser = parse_steps)]
        continuation: Option<usize>,
    },
    /// Compute f from `phi_star`, solve, and compare with `phi_star`.
    Manufacture { config: PathBuf },
    /// Sup norms and ellipticity margin of the config's `phi`.
    Diagnose { config: PathBuf },
}

fn parse_steps(s: &str) -> Result<usize, String> {
    let n = s.strip_prefix("steps=").unwrap_or(s);
    n.parse().map_err(|_| format!("expected N or steps=N, got '{s}'"))
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed '{s}': {e}"))
}

/// A finished command: exit code, JSON body and summary lines.
struct Outcome {
    code: u8,
    report: Value,
    summary: String,
    timing: Value,
}

impl Outcome {
    fn ok(report: Value, summary: String, timing: Value) -> Self {
        Outcome { code: 0, report, summary, timing }
    }
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::NotPositiveDefinite(_) => 2,
        Error::MaxIterations { .. } => 3,
        Error::SingularNewtonSystem { .. } => 4,
        _ => EXIT_DATA,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Config(_) => "config",
        Error::NotPositiveDefinite(_) => "not_positive_definite",
        Error::MaxIterations { .. } => "max_iterations",
        Error::SingularNewtonSystem { .. } => "singular_newton_system",
        _ => "domain",
    }
}

fn failure(e: &Error) -> Outcome {
    let mut report = json!({ "error": { "kind": error_kind(e), "message": e.to_string() } });
    if let Error::Parse { line, col, .. } = e {
        report["error"]["line"] = json!(line);
        report["error"]["column"] = json!(col);
    }
    Outcome { code: exit_code_of(e), report, summary: format!("error: {e}"), timing: json!({}) }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome {
        code: EXIT_NOINPUT,
        report: json!({ "error": { "kind": "io", "message": format!("{}: {e}", path.display()) } }),
        summary: format!("error: cannot read {}: {e}", path.display()),
        timing: json!({}),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => {
                    let text = e.to_string();
                    let msg = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let doc = json!({
                        "command": "",
                        "exit_code": EXIT_USAGE,
                        "error": { "kind": "usage", "message": msg },
                        "timing": { "total_seconds": 0.0 },
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    if let Command::Schema { name } = &cli.command {
        return print_schema(name.as_deref(), cli.out.as_deref());
    }
    let start = Instant::now();
    let (name, outcome) = run(&cli);
    let mut outcome = match outcome {
        Ok(o) | Err(o) => o,
    };
    if let Value::Object(t) = &mut outcome.timing {
        t.insert("total_seconds".into(), json!(start.elapsed().as_secs_f64()));
    }
    let mut doc = json!({ "command": name, "seed": cli.seed, "exit_code": outcome.code });
    if let (Value::Object(d), Value::Object(r)) = (&mut doc, outcome.report) {
        d.extend(r);
    }
    doc["timing"] = outcome.timing;
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    eprintln!("{}", outcome.summary.trim_end());
    match &cli.out {
        Some(p) => {
            if let Err(e) = fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_CANTCREAT);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.code)
}

fn run(cli: &Cli) -> (&'static str, Result<Outcome, Outcome>) {
    match &cli.command {
        Command::Verify { suites, list } => ("verify", verify(cli, suites, *list)),
        Command::Syzygy { action: SyzygyCmd::Compute { matrix } } => ("syzygy compute", syzygy_compute(matrix.as_deref())),
        Command::Syzygy { action: SyzygyCmd::Check { file } } => ("syzygy check", syzygy_check(file)),
        Command::Hessian { file } => ("hessian", hessian(file)),
        Command::CurrentCheck { file } => ("current-check", current_check(file)),
        Command::Ma { action: MaCmd::Solve { config, continuation } } => ("ma solve", ma_solve(config, *continuation)),
        Command::Ma { action: MaCmd::Manufacture { config } } => ("ma manufacture", ma_manufacture(config)),
        Command::Ma { action: MaCmd::Diagnose { config } } => ("ma diagnose", ma_diagnose(config)),
        Command::Schema { .. } => unreachable!("handled in main"),
    }
}

/// Schemas are printed as they are, not wrapped in a report.
fn print_schema(name: Option<&str>, out: Option<&Path>) -> ExitCode {
    let text = match name {
        None => SCHEMAS.iter().map(|(n, _)| format!("{n}\n")).collect(),
        Some(n) => match schema(n) {
            Some(s) => s.to_string(),
            None => {
                eprintln!("error: no schema '{n}'");
                return ExitCode::from(EXIT_USAGE);
            }
        },
    };
    match out {
        Some(p) => {
            if let Err(e) = fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_CANTCREAT);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn verify(cli: &Cli, suites: &[String], list: bool) -> Result<Outcome, Outcome> {
    let all = suite_names();
    if list {
        return Ok(Outcome::ok(json!({ "suites": all }), all.join("\n"), json!({})));
    }
    let names: Vec<String> = if suites.is_empty() { all.iter().map(|s| s.to_string()).collect() } else { suites.to_vec() };
    if let Some(bad) = names.iter().find(|n| !all.contains(&n.as_str())) {
        return Err(Outcome {
            code: EXIT_USAGE,
            report: json!({ "error": { "kind": "usage", "message": format!("unknown suite '{bad}'") } }),
            summary: format!("error: unknown suite '{bad}'; expected one of {}", all.join(", ")),
            timing: json!({}),
        });
    }
    let backend = match cli.backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    };
    let results: Vec<SuiteResult> = thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| s.spawn(move || run_suite(n, cli.seed, cli.count, backend).expect("suite name checked")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let passed = results.iter().all(SuiteResult::passed);
    let mut summary = String::new();
    for r in &results {
        summary += &format!(
            "{:<20} {} {:>6} cases {:>8} checks {:>4} failures  max error {:.2e}\n",
            r.name,
            if r.passed() { "PASS" } else { "FAIL" },
            r.cases,
            r.checks,
            r.failures,
            r.max_error
        );
        if let Some(f) = &r.first_failure {
            summary += &format!("    first failure: {f}\n");
        }
    }
    let timing: serde_json::Map<String, Value> = results.iter().map(|r| (r.name.clone(), json!(r.seconds))).collect();
    let report = json!({ "count": cli.count, "backend": backend, "passed": passed, "suites": results });
    Ok(Outcome { code: if passed { 0 } else { 1 }, report, summary, timing: json!({ "suites": timing }) })
}

fn modvec_strings(v: &[ModVec]) -> Value {
    json!(v.iter().map(|m| m.0.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn syzygy_compute(matrix: Option<&Path>) -> Result<Outcome, Outcome> {
    let t = Instant::now();
    let row = ten_quadrics();
    let basis = syzygy_kernel(&row);
    let secs = t.elapsed().as_secs_f64();
    if let Some(p) = matrix {
        let header = "# syzygies of the ten quadrics, one generator per line\n";
        fs::write(p, format!("{header}{}", format_modvecs(&basis.generators))).map_err(|e| Outcome {
            code: EXIT_CANTCREAT,
            report: json!({ "error": { "kind": "io", "message": format!("{}: {e}", p.display()) } }),
            summary: format!("error: cannot write {}: {e}", p.display()),
            timing: json!({}),
        })?;
    }
    let degrees: Vec<Option<u32>> = basis.generators.iter().map(ModVec::degree).collect();
    let report = json!({
        "rank": row.len(),
        "generator_count": basis.generators.len(),
        "degrees": degrees,
        "generators": modvec_strings(&basis.generators),
        "stats": {
            "pairs_reduced": basis.stats.pairs_reduced,
            "pairs_skipped": basis.stats.pairs_skipped,
            "zero_reductions": basis.stats.zero_reductions,
        },
    });
    let summary = format!("{} generators of the syzygy module in {secs:.2}s", basis.generators.len());
    Ok(Outcome::ok(report, summary, json!({ "compute_seconds": secs })))
}

fn syzygy_check(file: &Path) -> Result<Outcome, Outcome> {
    let given = parse_modvecs(&read(file)?).map_err(|e| failure(&e))?;
    let row = ten_quadrics();
    if let Some(bad) = given.iter().position(|v| v.rank() != row.len()) {
        let e = Error::Config(format!("generator {} has {} entries, expected {}", bad + 1, given[bad].rank(), row.len()));
        return Err(failure(&e));
    }
    let t = Instant::now();
    let computed = syzygy_kernel(&row).generators;
    let defects = syzygy_defects(&given, &row);
    let cmp = compare_modules(&given, &computed, &ModuleOrder::plain(row.len()));
    let equal = cmp.equal();
    let report = json!({
        "generators_in_file": given.len(),
        "computed_generators": computed.len(),
        "file_columns_are_syzygies": defects.iter().all(|d| d.is_zero()),
        "computed_in_file_module": cmp.b_in_a,
        "file_in_computed_module": cmp.a_in_b,
        "matched_up_to_scalar": cmp.matched,
        "modules_equal": equal,
    });
    let summary = format!(
        "{}: {} generators; modules {}",
        file.display(),
        given.len(),
        if equal { "equal" } else { "differ" }
    );
    Ok(Outcome { code: if equal { 0 } else { 1 }, report, summary, timing: json!({ "check_seconds": t.elapsed().as_secs_f64() }) })
}

fn components_json(h: &octoma::polycalc::HermPolyMatrix) -> Value {
    let m: serde_json::Map<String, Value> =
        h.components().iter().zip(COMPONENT_LABELS).map(|(p, l)| (l.to_string(), json!(p.to_string()))).collect();
    Value::Object(m)
}

fn hessian(file: &Path) -> Result<Outcome, Outcome> {
    let text = read(file)?;
    let u = parse_poly_file(&text).map_err(|e| failure(&e))?;
    let h = hess_oct(&u);
    let report = json!({ "polynomial": u.to_string(), "hessian": components_json(&h) });
    let summary = if h.is_zero() { "Hessian is zero".to_string() } else { format_herm_poly(&h) };
    Ok(Outcome::ok(report, summary, json!({})))
}

fn current_check(file: &Path) -> Result<Outcome, Outcome> {
    let t = parse_herm_poly(&read(file)?).map_err(|e| failure(&e))?;
    let (r1, r2) = closed_current_residual(&t);
    let scalar = closed_current_residual_scalar(&t);
    let oct = |r: &octoma::poly::OctPoly| r.c.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let closed_oct = r1.is_zero() && r2.is_zero();
    let closed_scalar = scalar.iter().all(|p| p.is_zero());
    let report = json!({
        "octonionic_residuals": [oct(&r1), oct(&r2)],
        "scalar_residuals": scalar.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "closed": closed_oct,
        "scalar_closed": closed_scalar,
    });
    let nonzero = scalar.iter().filter(|p| !p.is_zero()).count();
    let summary = format!(
        "octonionic residuals {}; {nonzero} of 16 scalar residuals nonzero",
        if closed_oct { "vanish" } else { "do not vanish" }
    );
    Ok(Outcome { code: if closed_oct && closed_scalar { 0 } else { 1 }, report, summary, timing: json!({}) })
}

/// Reads the config and inlines a `nodal_file`, resolved relative to the config.
fn load_config(path: &Path) -> Result<MaConfig, Outcome> {
    let text = read(path)?;
    let mut cfg: MaConfig = serde_json::from_str(&text).map_err(|e| failure(&Error::parse(e.line(), e.column(), e.to_string())))?;
    if let Some(FJson::NodalFile(rel)) = &cfg.f {
        let p = path.parent().unwrap_or(Path::new(".")).join(rel);
        let data = read(&p)?;
        let mut v = Vec::new();
        for (ln, line) in data.lines().enumerate() {
            for tok in line.split_whitespace() {
                let x: f64 = tok.parse().map_err(|_| failure(&Error::parse(ln + 1, 1, format!("{}: bad number '{tok}'", p.display()))))?;
                v.push(x);
            }
        }
        cfg.f = Some(FJson::Nodal(v));
    }
    Ok(cfg)
}

fn solve_summary(r: &SolveReport) -> String {
    format!(
        "converged in {} iterations: residual {:.2e}, nodal residual {:.2e}, A = {:.12}, sup|phi| {:.3e}, min margin {:.3e}",
        r.iterations, r.residual, r.nodal_residual, r.normalization_constant, r.sup_phi, r.min_margin
    )
}

fn ma_solve(path: &Path, continuation: Option<usize>) -> Result<Outcome, Outcome> {
    let cfg = load_config(path)?;
    let disc = cfg.discretization().map_err(|e| failure(&e))?;
    let f = cfg.f_nodal(&disc).map_err(|e| failure(&e))?;
    let mut settings: Settings = cfg.settings();
    if let Some(c) = continuation {
        settings.continuation = c;
    }
    let r = disc.newton_solve(&f, &settings, cfg.initial_guess.as_ref()).map_err(|e| failure(&e))?;
    let summary = solve_summary(&r);
    let timing = json!({ "solve_seconds": r.wall_time });
    Ok(Outcome::ok(json!({ "report": r }), summary, timing))
}

fn ma_manufacture(path: &Path) -> Result<Outcome, Outcome> {
    let cfg = load_config(path)?;
    let phi_star = cfg.phi_star.clone().ok_or_else(|| failure(&Error::Config("manufacture needs 'phi_star'".into())))?;
    let disc = cfg.discretization().map_err(|e| failure(&e))?;
    let m = disc.manufacture(&phi_star).map_err(|e| failure(&e))?;
    let r = disc.newton_solve(&m.f_nodal, &cfg.settings(), cfg.initial_guess.as_ref()).map_err(|e| failure(&e))?;
    let err = r.solution.max_coeff_diff(&phi_star);
    let summary = format!("{}\nsup coefficient error against phi_star: {err:.3e}", solve_summary(&r));
    let report = json!({
        "sup_error": err,
        "projection_residual": m.projection_residual,
        "f_projected": m.f_projected,
        "report": r,
    });
    let timing = json!({ "solve_seconds": r.wall_time });
    Ok(Outcome::ok(report, summary, timing))
}

fn ma_diagnose(path: &Path) -> Result<Outcome, Outcome> {
    let cfg = load_config(path)?;
    let phi = cfg.phi.clone().ok_or_else(|| failure(&Error::Config("diagnose needs 'phi'".into())))?;
    let g0 = cfg.g0.field();
    let n = cfg.nodes.unwrap_or_else(|| default_nodes(cfg.max_freq, g0.max_freq()));
    let d = diagnostics(&phi, &g0, &g0.constant, n).map_err(|e| failure(&e))?;
    let disc = cfg.discretization().map_err(|e| failure(&e))?;
    let f = cfg.f_nodal(&disc).map_err(|e| failure(&e))?;
    let a = disc.normalization_constant(&f).map_err(|e| failure(&e))?;
    let (_, proj) = disc.project(&f);
    let summary = format!(
        "sup|phi| {:.3e}, sup|tr(G00^-1 Hess phi)| {:.3e}, min margin {:.3e}, A = {a:.12}",
        d.sup_phi, d.sup_laplacian, d.min_margin
    );
    let report = json!({ "diagnostics": d, "grid_points_per_dim": n, "normalization_constant": a, "projection_residual": proj });
    Ok(Outcome { code: if d.min_margin > 0.0 { 0 } else { 2 }, report, summary, timing: json!({}) })
}
