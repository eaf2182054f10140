//! `mathopt`: validate, summarize, bridge, and solve MathOptFormat files.
//!
//! Exit codes: 0 success, 1 domain failure (invalid model, unsupported
//! target), 2 I/O or parse failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mathopt::bridges::{bridge_model, model_roots, BridgeRegistry};
use mathopt::model::{Model, ObjectiveSense};
use mathopt::mof::{self, MofError};
use mathopt::targets::{builtin_capabilities, solve_lp, Capabilities, CountReport, SolveStatus, TargetError};

#[derive(Parser)]
#[command(name = "mathopt", version, about = "Work with MathOptFormat (.mof.json) files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print schema and semantic violations, one per line.
    Validate { file: PathBuf },
    /// Print variable count, objective, and constraint counts.
    Summarize { file: PathBuf },
    /// Rewrite a model into the constraint types a target supports.
    Bridge {
        /// Built-in target name or path to a capabilities JSON file.
        #[arg(long)]
        target: String,
        /// Print the bridging plan instead of writing a model.
        #[arg(long)]
        plan_only: bool,
        input: PathBuf,
        /// Output file; standard output when omitted.
        output: Option<PathBuf>,
    },
    /// Solve a continuous linear model with the reference simplex.
    Solve {
        #[arg(long)]
        target: String,
        file: PathBuf,
    },
}

enum Failure {
    Domain(String),
    Environment(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Environment(_) => 2,
        }
    }
}

impl From<MofError> for Failure {
    fn from(e: MofError) -> Self {
        match e {
            MofError::Parse(_) => Failure::Environment(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Environment(format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> Result<Model, Failure> {
    Ok(mof::read_model(&read_text(path)?)?)
}

fn target(name: &str) -> Result<Capabilities, Failure> {
    match builtin_capabilities(name) {
        Ok(caps) => Ok(caps),
        Err(TargetError::UnknownTarget(_)) if Path::new(name).is_file() => {
            Capabilities::from_json(&read_text(Path::new(name))?).map_err(|e| Failure::Environment(e.to_string()))
        }
        Err(e) => Err(Failure::Environment(e.to_string())),
    }
}

/// Fixed-precision rendering so tiny pivoting noise does not reach output.
fn number(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

fn summarize(model: &Model) -> String {
    let mut parts = vec![format!("{} variables", model.num_variables()), model.objective_sense().name().to_string()];
    if let Some(f) = model.objective_function() {
        parts.push(f.function_type().name().to_string());
    }
    for e in CountReport::of(model).entries {
        parts.push(format!("{}: {}", e.label(), e.count));
    }
    parts.join("; ")
}

fn validate(file: &Path) -> Result<String, Failure> {
    let violations = mof::validate(&read_text(file)?)?;
    let mut out = String::new();
    for v in &violations {
        let _ = writeln!(out, "{v}");
    }
    if violations.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Domain(format!("{} violation(s)", violations.len())))
    }
}

fn bridge(target_name: &str, plan_only: bool, input: &Path, output: Option<&Path>) -> Result<String, Failure> {
    let caps = target(target_name)?;
    let model = read_model(input)?;
    let registry = BridgeRegistry::with_builtins();
    let domain = |e: mathopt::bridges::BridgeError| Failure::Domain(e.to_string());
    if plan_only {
        let roots = model_roots(&registry, &model, &caps).map_err(domain)?;
        let mut out = String::new();
        let mut shown = Vec::new();
        for r in &roots {
            if !shown.contains(r) {
                shown.push(*r);
                out.push_str(&registry.plan(*r, &caps).render());
            }
        }
        let total: f64 = roots.iter().map(|r| registry.cost(*r, &caps)).sum();
        let _ = writeln!(out, "total cost {}", if total.is_finite() { number(total) } else { "inf".into() });
        if let Some(bad) = roots.iter().find(|r| registry.cost(**r, &caps).is_infinite()) {
            print!("{out}");
            return Err(domain(registry.unsupported(*bad, &caps)));
        }
        return Ok(out);
    }
    let bridged = bridge_model(&registry, &model, &caps).map_err(domain)?;
    let text = mof::write_model(&bridged.model)?;
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Environment(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn solve(target_name: &str, file: &Path) -> Result<String, Failure> {
    if target_name != "lp-scalar" {
        return Err(Failure::Domain(format!("solve supports only --target lp-scalar, not \"{target_name}\"")));
    }
    let caps = target(target_name)?;
    let model = read_model(file)?;
    let registry = BridgeRegistry::with_builtins();
    let bridged = bridge_model(&registry, &model, &caps).map_err(|e| Failure::Domain(e.to_string()))?;
    let result = solve_lp(&bridged.model).map_err(|e| Failure::Domain(e.to_string()))?;
    if result.status != SolveStatus::Optimal {
        return Ok(format!("{}\n", result.status.name()));
    }
    let x = bridged.map_primal(&result.primal).map_err(|e| Failure::Domain(e.to_string()))?;
    let objective = match model.objective_function() {
        Some(f) if model.objective_sense() != ObjectiveSense::Feasibility => {
            f.evaluate(&x).map_err(|e| Failure::Domain(e.to_string()))?.as_scalar().unwrap_or(f64::NAN)
        }
        _ => 0.0,
    };
    let mut parts = vec![result.status.name().to_string(), format!("objective {}", number(objective))];
    for v in model.variables() {
        let name = model.variable_name(v).map_or_else(|| v.to_string(), str::to_string);
        parts.push(format!("{name} = {}", number(x[&v])));
    }
    Ok(parts.join("; ") + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Summarize { file } => read_model(file).map(|m| summarize(&m) + "\n"),
        Command::Bridge { target, plan_only, input, output } => bridge(target, *plan_only, input, output.as_deref()),
        Command::Solve { target, file } => solve(target, file),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Domain(m) | Failure::Environment(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
