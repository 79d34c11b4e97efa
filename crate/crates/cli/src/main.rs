mod job;
mod tasks;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use flatquot_core::quotients::{list_gallery, Verdict};
use flatquot_core::AlgError;
use serde_json::{json, Value};

use crate::job::JobFile;

const FORMAT_VERSION: u32 = 1;

/// Certified quotients of affine schemes and faithfully flat descent.
#[derive(Parser, Debug)]
#[command(name = "flatquot", version)]
struct Args {
    /// Job file (JSON).
    #[arg(long, required_unless_present = "list_gallery")]
    job: Option<PathBuf>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed recorded in the report and used by randomized batches.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree bound, overriding the job file.
    #[arg(long)]
    bound: Option<u32>,
    /// Gröbner reduction steps, overriding the job file.
    #[arg(long)]
    budget: Option<u64>,
    /// Print the registered gallery entries and exit.
    #[arg(long)]
    list_gallery: bool,
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 2,
    }
}

fn error_code(e: &AlgError) -> u8 {
    match e {
        AlgError::ResourceExhausted(_) => 2,
        AlgError::Precondition(_) | AlgError::InvariantFailure(_) => 1,
        _ => 3,
    }
}

fn emit(report: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn input_error(msg: String, out: Option<&PathBuf>) -> ExitCode {
    eprintln!("error: {msg}");
    let report = json!({"format_version": FORMAT_VERSION, "tool_version": env!("CARGO_PKG_VERSION"), "verdict": "error", "error": msg});
    let _ = emit(&report, out);
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_gallery {
        let entries: Vec<Value> = list_gallery().into_iter().map(|(n, d)| json!({"name": n, "description": d})).collect();
        let _ = emit(&json!({"format_version": FORMAT_VERSION, "gallery": entries}), args.out.as_ref());
        return ExitCode::SUCCESS;
    }
    let path = args.job.as_ref().expect("clap enforces --job");
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(format!("cannot read {}: {e}", path.display()), args.out.as_ref()),
    };
    let mut job: JobFile = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return input_error(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()), args.out.as_ref()),
    };
    if args.bound.is_some() {
        job.bound = args.bound;
    }
    let mut budget = job.budget();
    if let Some(steps) = args.budget {
        budget.groebner_steps = steps;
    }
    if let Some(b) = job.bound {
        budget.degree_bound = b;
    }
    let seed = args.seed.or(job.seed).unwrap_or(0);

    let start = Instant::now();
    let result = tasks::run(&job, &budget);
    let elapsed = start.elapsed().as_millis() as u64;
    let mut report = json!({
        "format_version": FORMAT_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "task": job.task,
        "seed": seed,
        "budget": budget,
        "timing_ms": elapsed,
    });
    let code = match result {
        Ok(o) => {
            report["verdict"] = json!(o.verdict);
            report["budget_exhausted"] = json!(false);
            report["result"] = o.result;
            exit_code(o.verdict)
        }
        Err(e) => {
            let code = error_code(&e);
            report["verdict"] = json!(match code {
                1 => "fail",
                2 => "inconclusive",
                _ => "error",
            });
            report["budget_exhausted"] = json!(e.is_budget());
            report["error"] = json!(e.to_string());
            if code == 3 {
                eprintln!("error: {e}");
            }
            code
        }
    };
    if let Err(e) = emit(&report, args.out.as_ref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
