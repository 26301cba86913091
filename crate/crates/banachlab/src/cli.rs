//! Batch command-line surface: single quantities, experiment sweeps, and the
//! acceptance battery, all config-driven with machine-readable output.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! mathematical check computed fine but failed (a stagnated correction, a
//! step outside its sandwich, a failed acceptance criterion).

use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bpb::{bpb_correct_with, BpbOptions, SearchStatus};
use crate::cert::{BoundsCertificate, SearchBudget};
use crate::error::{Error, Result};
use crate::index::numerical_index;
use crate::io::{
    self, cert_to_value, interval_to_value, map_from_value, matrix_from_value, matrix_to_value,
    space_from_value, subspace_from_value, vector_from_value, OutputFormat, Report,
};
use crate::lab::{run_convergence_experiment, FamilyKind, PerturbationFamily};
use crate::operator::{numerical_radius, operator_norm, OperatorRep};
use crate::subspace::{gap_opening, operator_opening, Domain};
use crate::verify::{battery_csv, battery_to_value, run_battery, BatteryOptions};

#[derive(Parser, Debug)]
#[command(name = "banachlab", version, about = "Numerical laboratory for Banach space geometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Numerical radius certificate for an operator
    Radius(RunArgs),
    /// Operator norm certificate
    Opnorm(RunArgs),
    /// Numerical index estimate for a space or subspace
    Index(RunArgs),
    /// Gap opening between two subspaces
    Gap(RunArgs),
    /// Operator opening upper bound between two subspaces
    Opening(RunArgs),
    /// Correct a near-state pair to an exact state pair
    Bpb(RunArgs),
    /// Convergence experiment along a perturbation family
    Converge(RunArgs),
    /// Run the acceptance battery
    VerifyAll(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Radius(_) => "radius",
            Command::Opnorm(_) => "opnorm",
            Command::Index(_) => "index",
            Command::Gap(_) => "gap",
            Command::Opening(_) => "opening",
            Command::Bpb(_) => "bpb",
            Command::Converge(_) => "converge",
            Command::VerifyAll(_) => "verify-all",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Radius(a)
            | Command::Opnorm(a)
            | Command::Index(a)
            | Command::Gap(a)
            | Command::Opening(a)
            | Command::Bpb(a)
            | Command::Converge(a)
            | Command::VerifyAll(a) => a,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Path to a JSON config file
    #[arg(long, conflicts_with = "inline")]
    pub config: Option<std::path::PathBuf>,
    /// Inline JSON config
    #[arg(long)]
    pub inline: Option<String>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Restart budget for the multistart searches
    #[arg(long, default_value_t = 64)]
    pub budget: u32,
    /// Output format: table | json | csv
    #[arg(long, default_value = "table")]
    pub format: String,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Suppress the timestamp so repeated runs are byte-identical
    #[arg(long)]
    pub deterministic: bool,
}

struct CommandOutput {
    result: Value,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    /// false when a mathematical check failed (exit status 2)
    checks_ok: bool,
}

fn load_config(args: &RunArgs) -> Result<Value> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::InvalidParameter(format!("config is not valid JSON: {e}")));
    }
    if let Some(inline) = &args.inline {
        return serde_json::from_str(inline)
            .map_err(|e| Error::InvalidParameter(format!("inline config is not valid JSON: {e}")));
    }
    Ok(Value::Null)
}

/// Optional per-run tolerance overrides: `{"tolerances": {"exactness": ...,
/// "arithmetic": ...}}`.
fn tolerances_from_config(config: &Value) -> Result<crate::cert::Tolerances> {
    let mut tol = crate::cert::Tolerances::default();
    if let Some(t) = config.get("tolerances") {
        if let Some(e) = t.get("exactness") {
            tol.exactness = io::number(e, "tolerances.exactness")?;
        }
        if let Some(a) = t.get("arithmetic") {
            tol.arithmetic = io::number(a, "tolerances.arithmetic")?;
        }
    }
    Ok(tol)
}

fn domain_from_config(config: &Value) -> Result<Domain> {
    if let Some(space) = config.get("space") {
        return Ok(Domain::Space(space_from_value(space)?));
    }
    if let Some(sub) = config.get("subspace") {
        return Ok(subspace_from_value(sub)?.domain());
    }
    Err(Error::InvalidParameter("config needs a \"space\" or \"subspace\"".into()))
}

fn cert_csv_row(quantity: &str, cert: &BoundsCertificate) -> Vec<String> {
    vec![
        quantity.to_string(),
        io::fmt_f64(cert.lower),
        io::fmt_f64(cert.upper),
        cert.method.as_str().to_string(),
        cert.budget_used.to_string(),
    ]
}

const CERT_HEADER: [&str; 5] = ["quantity", "lower", "upper", "method", "budget_used"];

fn run_operator_command(
    config: &Value,
    budget: SearchBudget,
    seed: u64,
    with_radius: bool,
) -> Result<CommandOutput> {
    let domain = domain_from_config(config)?;
    let matrix_val = config
        .get("matrix")
        .ok_or_else(|| Error::InvalidParameter("config needs a \"matrix\"".into()))?;
    let matrix = matrix_from_value(matrix_val, domain.field(), Some(domain.dim()))?;
    let op = OperatorRep::new(domain.clone(), matrix, budget, seed)?;
    let norm = operator_norm(&op, budget, seed)?;
    let mut result = json!({
        "domain": domain.label(),
        "norm": cert_to_value(&norm),
    });
    let mut rows = vec![cert_csv_row("norm", &norm)];
    if with_radius {
        let v = numerical_radius(&op, budget, seed)?;
        result["radius"] = cert_to_value(&v);
        rows.push(cert_csv_row("radius", &v));
    }
    Ok(CommandOutput {
        result,
        csv_header: CERT_HEADER.iter().map(|s| s.to_string()).collect(),
        csv_rows: rows,
        checks_ok: true,
    })
}

fn run_index(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let domain = domain_from_config(config)?;
    let est = numerical_index(&domain, budget, seed)?;
    let result = json!({
        "space": est.space_label,
        "upper": est.upper,
        "heuristic_lower": est.heuristic_lower,
        "restarts": est.restarts,
        "budget_used": est.budget_used,
        "witness_matrix": matrix_to_value(est.witness.matrix(), domain.field()),
        "witness_norm": cert_to_value(est.witness.norm_bounds()),
        "witness_radius": cert_to_value(&est.witness_radius),
    });
    Ok(CommandOutput {
        result,
        csv_header: ["space", "upper", "heuristic_lower", "restarts", "budget_used"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        csv_rows: vec![vec![
            est.space_label.clone(),
            io::fmt_f64(est.upper),
            io::fmt_f64(est.heuristic_lower),
            est.restarts.to_string(),
            est.budget_used.to_string(),
        ]],
        checks_ok: true,
    })
}

fn run_gap(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let y = subspace_from_value(
        config.get("y").ok_or_else(|| Error::InvalidParameter("config needs \"y\"".into()))?,
    )?;
    let z = subspace_from_value(
        config.get("z").ok_or_else(|| Error::InvalidParameter("config needs \"z\"".into()))?,
    )?;
    let cert = gap_opening(&y, &z, budget, seed)?;
    Ok(CommandOutput {
        result: json!({ "y": y.label(), "z": z.label(), "gap": cert_to_value(&cert) }),
        csv_header: CERT_HEADER.iter().map(|s| s.to_string()).collect(),
        csv_rows: vec![cert_csv_row("gap", &cert)],
        checks_ok: true,
    })
}

fn run_opening(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let y = subspace_from_value(
        config.get("y").ok_or_else(|| Error::InvalidParameter("config needs \"y\"".into()))?,
    )?;
    let z = subspace_from_value(
        config.get("z").ok_or_else(|| Error::InvalidParameter("config needs \"z\"".into()))?,
    )?;
    let mut candidates = Vec::new();
    if let Some(list) = config.get("candidates") {
        let arr = list
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("\"candidates\" must be an array".into()))?;
        for c in arr {
            candidates.push(map_from_value(y.ambient(), c, budget, seed)?);
        }
    }
    let bound = operator_opening(&y, &z, &candidates, budget, seed)?;
    Ok(CommandOutput {
        result: json!({
            "y": y.label(),
            "z": z.label(),
            "opening": cert_to_value(&bound.cert),
            "convention": bound.convention,
        }),
        csv_header: ["quantity", "lower", "upper", "convention", "budget_used"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        csv_rows: vec![vec![
            "opening".to_string(),
            io::fmt_f64(bound.cert.lower),
            io::fmt_f64(bound.cert.upper),
            bound.convention.to_string(),
            bound.cert.budget_used.to_string(),
        ]],
        checks_ok: true,
    })
}

fn run_bpb(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let space = space_from_value(
        config.get("space").ok_or_else(|| Error::InvalidParameter("config needs \"space\"".into()))?,
    )?;
    let u = vector_from_value(
        config.get("u").ok_or_else(|| Error::InvalidParameter("config needs \"u\"".into()))?,
        space.field(),
        Some(space.dim()),
    )?;
    let u_star = vector_from_value(
        config.get("u_star").ok_or_else(|| Error::InvalidParameter("config needs \"u_star\"".into()))?,
        space.field(),
        Some(space.dim()),
    )?;
    let epsilon = io::number(
        config.get("epsilon").ok_or_else(|| Error::InvalidParameter("config needs \"epsilon\"".into()))?,
        "epsilon",
    )?;
    let enforce = !config.get("skip_enforcement").and_then(Value::as_bool).unwrap_or(false);
    let tol = tolerances_from_config(config)?;
    let out = bpb_correct_with(&space, &u, &u_star, epsilon, BpbOptions { enforce, budget, seed })?;
    let status = match out.search_status {
        SearchStatus::Converged => "converged",
        SearchStatus::Stagnated => "stagnated",
    };
    let corrected_exact = out.corrected.is_exact(&tol);
    Ok(CommandOutput {
        result: json!({
            "space": space.label(),
            "defect": out.defect,
            "epsilon": out.epsilon,
            "primal_distance": out.primal_distance,
            "dual_distance": out.dual_distance,
            "status": status,
            "corrected_exact": corrected_exact,
            "corrected": {
                "x": io::vector_to_value(&out.corrected.x, space.field()),
                "f": io::vector_to_value(&out.corrected.f, space.field()),
                "defect": out.corrected.defect,
                "primal_residual": out.corrected.primal_residual,
                "dual_residual": out.corrected.dual_residual,
            },
        }),
        csv_header: ["defect", "epsilon", "primal_distance", "dual_distance", "status"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        csv_rows: vec![vec![
            io::fmt_f64(out.defect),
            io::fmt_f64(out.epsilon),
            io::fmt_f64(out.primal_distance),
            io::fmt_f64(out.dual_distance),
            status.to_string(),
        ]],
        checks_ok: out.search_status == SearchStatus::Converged,
    })
}

fn family_from_config(config: &Value) -> Result<PerturbationFamily> {
    let fam = config
        .get("family")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::InvalidParameter("config needs a \"family\" object".into()))?;
    let kind = fam
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidParameter("family needs a \"kind\"".into()))?;
    let get_usize = |key: &str| -> Result<usize> {
        fam.get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("family kind {kind:?} needs \"{key}\"")))
    };
    let kind = match kind {
        "identity" => FamilyKind::Identity,
        "diagonal" => FamilyKind::Diagonal { coord: get_usize("coord")? },
        "shear" => FamilyKind::Shear { from: get_usize("from")?, to: get_usize("to")? },
        "rotation" => {
            let plane = fam
                .get("plane")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidParameter("rotation family needs \"plane\": [i, j]".into()))?;
            FamilyKind::Rotation {
                plane: (
                    plane[0].as_u64().unwrap_or(0) as usize,
                    plane[1].as_u64().unwrap_or(1) as usize,
                ),
            }
        }
        "random_direction" => FamilyKind::RandomDirection,
        other => return Err(Error::InvalidParameter(format!("unknown family kind {other:?}"))),
    };
    // The magnitude schedule is fixed at 1/n; reject anything else.
    if let Some(schedule) = fam.get("schedule").and_then(Value::as_str) {
        if schedule != "1/n" {
            return Err(Error::InvalidParameter(format!(
                "unsupported schedule {schedule:?}; families shrink at 1/n"
            )));
        }
    }
    let seed = fam.get("seed").and_then(Value::as_u64).unwrap_or(0);
    Ok(PerturbationFamily { kind, seed })
}

fn run_converge(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let space = space_from_value(
        config.get("space").ok_or_else(|| Error::InvalidParameter("config needs \"space\"".into()))?,
    )?;
    let sub = match config.get("subspace") {
        Some(sv) => {
            let basis_val = sv
                .get("basis")
                .ok_or_else(|| Error::InvalidParameter("subspace needs \"basis\"".into()))?;
            let cols_raw = basis_val
                .as_array()
                .ok_or_else(|| Error::InvalidParameter("basis must be an array of columns".into()))?;
            let cols: Vec<crate::space::Vector> = cols_raw
                .iter()
                .map(|c| vector_from_value(c, space.field(), Some(space.dim())))
                .collect::<Result<_>>()?;
            crate::subspace::Subspace::from_columns(space.clone(), &cols, "X")?
        }
        None => crate::subspace::Subspace::full(space.clone()),
    };
    let family = family_from_config(config)?;
    let steps: Vec<u32> = config
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidParameter("config needs \"steps\": [n, ...]".into()))?
        .iter()
        .map(|v| v.as_u64().map(|n| n as u32).ok_or_else(|| Error::InvalidParameter("steps must be integers".into())))
        .collect::<Result<_>>()?;
    let seed = config.get("seed").and_then(Value::as_u64).unwrap_or(seed);
    let budget = match config.get("budget").and_then(Value::as_u64) {
        Some(b) => SearchBudget::from_restarts(b as u32),
        None => budget,
    };

    let report = run_convergence_experiment(&sub, &family, &steps, budget, seed)?;
    let steps_json: Vec<Value> = report
        .steps
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "eta": s.eta,
                "index": interval_to_value(&s.index),
                "sandwich": interval_to_value(&s.sandwich),
                "inside": s.inside,
                "gap_lower": s.gap_lower,
                "opening_upper": s.opening_upper,
                "deviation": s.deviation,
                "budget_used": s.budget_used,
            })
        })
        .collect();
    let all_inside = report.steps.iter().all(|s| s.inside);
    let result = json!({
        "family": report.family_label,
        "base_index": interval_to_value(&report.base_index),
        "steps": steps_json,
        "max_violation": report.max_violation,
        "trend_slope": report.trend_slope,
        "envelope_nonincreasing": report.envelope_nonincreasing,
    });
    // Frozen column order for downstream plotting.
    let csv_header = [
        "n",
        "eta",
        "index_lower",
        "index_upper",
        "sandwich_lower",
        "sandwich_upper",
        "inside",
        "gap_lower",
        "opening_upper",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let csv_rows = report
        .steps
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                io::fmt_f64(s.eta),
                io::fmt_f64(s.index.lower),
                io::fmt_f64(s.index.upper),
                io::fmt_f64(s.sandwich.lower),
                io::fmt_f64(s.sandwich.upper),
                s.inside.to_string(),
                io::fmt_f64(s.gap_lower),
                io::fmt_f64(s.opening_upper),
            ]
        })
        .collect();
    Ok(CommandOutput {
        result,
        csv_header,
        csv_rows,
        checks_ok: all_inside && report.envelope_nonincreasing,
    })
}

fn run_verify_all(config: &Value, budget: SearchBudget, seed: u64) -> Result<CommandOutput> {
    let scale = match config.get("scale") {
        Some(v) => io::number(v, "scale")?,
        None => budget.restarts as f64 / 64.0,
    };
    let report = run_battery(&BatteryOptions { seed, scale });
    let (csv_header, csv_rows) = battery_csv(&report);
    Ok(CommandOutput {
        result: battery_to_value(&report),
        csv_header,
        csv_rows,
        checks_ok: report.passed,
    })
}

/// Execute a parsed command line; returns the rendered report and the exit
/// status (0 success, 1 usage error, 2 failed mathematical check).
pub fn dispatch(cli: &Cli) -> (String, i32) {
    let args = cli.command.args();
    let format = match args.format.parse::<OutputFormat>() {
        Ok(f) => f,
        Err(e) => return (format!("error: {e}\n"), 1),
    };
    let config = match load_config(args) {
        Ok(c) => c,
        Err(e) => return (format!("error: {e}\n"), 1),
    };
    let budget = SearchBudget::from_restarts(args.budget);
    let seed = args.seed;

    let execute = || -> Result<CommandOutput> {
        match &cli.command {
            Command::Radius(_) => run_operator_command(&config, budget, seed, true),
            Command::Opnorm(_) => run_operator_command(&config, budget, seed, false),
            Command::Index(_) => run_index(&config, budget, seed),
            Command::Gap(_) => run_gap(&config, budget, seed),
            Command::Opening(_) => run_opening(&config, budget, seed),
            Command::Bpb(_) => run_bpb(&config, budget, seed),
            Command::Converge(_) => run_converge(&config, budget, seed),
            Command::VerifyAll(_) => run_verify_all(&config, budget, seed),
        }
    };
    let outcome = match args.threads {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(p) => p,
                Err(e) => return (format!("error: cannot build thread pool: {e}\n"), 1),
            };
            pool.install(execute)
        }
        None => execute(),
    };

    match outcome {
        Ok(out) => {
            let report = Report {
                command: cli.command.name().to_string(),
                config,
                seed,
                budget: args.budget,
                timestamp: if args.deterministic {
                    None
                } else {
                    Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
                },
                result: out.result,
                csv_header: out.csv_header,
                csv_rows: out.csv_rows,
            };
            let code = if out.checks_ok { 0 } else { 2 };
            (report.render(format), code)
        }
        Err(e) => (format!("error: {e}\n"), 1),
    }
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let (output, code) = dispatch(&cli);
    if code == 1 {
        eprint!("{output}");
    } else {
        print!("{output}");
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args_with(inline: &str) -> RunArgs {
        RunArgs {
            config: None,
            inline: Some(inline.to_string()),
            seed: 7,
            budget: 12,
            format: "json".into(),
            threads: None,
            deterministic: true,
        }
    }

    #[test]
    fn radius_identity_reports_one() {
        let cli = Cli {
            command: Command::Radius(args_with(
                r#"{"space": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
                    "matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#,
            )),
        };
        let (out, code) = dispatch(&cli);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let radius = &v["result"]["radius"];
        assert!((radius["lower"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!((radius["upper"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn opening_dimension_mismatch_reports_convention() {
        let cli = Cli {
            command: Command::Opening(args_with(
                r#"{"y": {"ambient": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
                          "basis": [[1,0,0]]},
                    "z": {"ambient": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
                          "basis": [[1,0,0],[0,1,0]]}}"#,
            )),
        };
        let (out, code) = dispatch(&cli);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["convention"], Value::Bool(true));
        assert_eq!(v["result"]["opening"]["upper"].as_f64().unwrap(), 1.0);
    }

    #[test]
    fn malformed_config_is_usage_error() {
        let cli = Cli { command: Command::Radius(args_with(r#"{"space": {"kind": "lq"}}"#)) };
        let (_, code) = dispatch(&cli);
        assert_eq!(code, 1);
        let cli = Cli { command: Command::Radius(args_with("not json")) };
        let (_, code) = dispatch(&cli);
        assert_eq!(code, 1);
    }

    #[test]
    fn bpb_stagnation_is_status_two() {
        // An inadmissible pair with enforcement skipped cannot meet the
        // bounds: status 2, not an error.
        let cli = Cli {
            command: Command::Bpb(args_with(
                r#"{"space": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"},
                    "u": [0.1, 0.0], "u_star": [0.0, 1.0], "epsilon": 0.05,
                    "skip_enforcement": true}"#,
            )),
        };
        let (out, code) = dispatch(&cli);
        assert_eq!(code, 2, "{out}");
    }

    #[test]
    fn json_output_round_trips() {
        let cli = Cli {
            command: Command::Gap(args_with(
                r#"{"y": {"ambient": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"},
                          "basis": [[1,0]]},
                    "z": {"ambient": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"},
                          "basis": [[0,1]]}}"#,
            )),
        };
        let (out, code) = dispatch(&cli);
        assert_eq!(code, 0);
        assert_eq!(io::json_round_trip(&out).unwrap(), out);
    }

    #[test]
    fn csv_output_round_trips_with_frozen_columns() {
        let mut args = args_with(
            r#"{"space": {"kind": "lp", "p": 1.0, "dim": 3, "field": "real"},
                "subspace": {"basis": [[1,0,0],[0,1,0]]},
                "family": {"kind": "shear", "from": 0, "to": 2},
                "steps": [5, 10]}"#,
        );
        args.format = "csv".into();
        args.budget = 8;
        let cli = Cli { command: Command::Converge(args) };
        let (out, code) = dispatch(&cli);
        assert_eq!(code, 0, "{out}");
        assert_eq!(io::csv_round_trip(&out), out);
        let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(
            header,
            "n,eta,index_lower,index_upper,sandwich_lower,sandwich_upper,inside,gap_lower,opening_upper"
        );
    }

    #[test]
    fn deterministic_runs_are_byte_identical() {
        let make = || Cli {
            command: Command::Index(args_with(
                r#"{"space": {"kind": "lp", "p": 1.0, "dim": 2, "field": "real"}}"#,
            )),
        };
        let (a, _) = dispatch(&make());
        let (b, _) = dispatch(&make());
        assert_eq!(a, b);
    }
}
