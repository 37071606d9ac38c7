mod args;
mod commands;
mod selftest;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Format};
use commands::{CliError, Outcome};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn render_text(command: &str, outcome: &Result<Outcome, CliError>) -> String {
    let mut out = String::new();
    match outcome {
        Ok(o) => {
            for line in &o.lines {
                out.push_str(line);
                out.push('\n');
            }
            let verdict = if o.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{command}: {verdict} ({} of {} checks failed)\n", o.failed, o.total));
        }
        Err(e) => out.push_str(&format!("{command}: ERROR {e}\n")),
    }
    out
}

fn render_json(command: &str, config: Value, outcome: &Result<Outcome, CliError>, elapsed_ms: u64) -> String {
    let body = match outcome {
        Ok(o) => json!({
            "command": command,
            "config": config,
            "status": if o.passed { "pass" } else { "fail" },
            "summary": { "total": o.total, "failed": o.failed },
            "results": o.results,
            "elapsed_ms": elapsed_ms,
        }),
        Err(e) => json!({
            "command": command,
            "config": config,
            "status": "error",
            "error": e.to_string(),
            "elapsed_ms": elapsed_ms,
        }),
    };
    let mut text = serde_json::to_string_pretty(&body).expect("report serializes");
    text.push('\n');
    text
}

fn config_json(cli: &Cli) -> Value {
    let common = cli.command.common();
    let mut cfg = json!({ "n": common.n });
    let obj = cfg.as_object_mut().expect("object");
    match &cli.command {
        args::Command::VerifyEulerData { degree, .. } | args::Command::DegreeAudit { degree, .. } => {
            obj.insert("max_degree".into(), json!(degree.max_degree));
        }
        args::Command::CheckLink { delta_max, .. } => {
            obj.insert("delta_max".into(), json!(delta_max));
        }
        args::Command::AssembleSeries { degree, input, .. } | args::Command::MirrorTransform { degree, input, .. } => {
            obj.insert("max_degree".into(), json!(degree.max_degree));
            obj.insert("input".into(), json!(input.input.display().to_string()));
        }
        args::Command::EulerSeriesCheck {
            degree,
            input,
            zeta_order,
            perturb,
            ..
        } => {
            obj.insert("max_degree".into(), json!(degree.max_degree));
            obj.insert("input".into(), json!(input.input.display().to_string()));
            obj.insert("zeta_order".into(), json!(zeta_order));
            obj.insert("perturb".into(), json!(perturb));
        }
        args::Command::Selftest { .. } => {}
    }
    cfg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = cli.command.name();
    let common = cli.command.common();

    let outcome = match common.jobs {
        Some(0) => Err(CliError::Config("--jobs must be at least 1".into())),
        jobs => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                builder = builder.num_threads(j);
            }
            match builder.build() {
                Ok(pool) => pool.install(|| commands::run(&cli.command)),
                Err(e) => Err(CliError::Config(format!("cannot start worker pool: {e}"))),
            }
        }
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;

    let rendered = match common.format {
        Format::Json => render_json(command, config_json(&cli), &outcome, elapsed_ms),
        Format::Text => render_text(command, &outcome),
    };
    match &common.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("cannot write report {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
            eprint!("{}", render_text(command, &outcome));
        }
        None => print!("{rendered}"),
    }

    match outcome {
        Ok(o) if o.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(EXIT_FAIL),
        Err(_) => ExitCode::from(EXIT_ERROR),
    }
}
