//! `cvur` — conditional-variance uncertainty-relation experiments.

use clap::Parser;
use cvur_cli::{emit_plot_script, run_experiment, split_obs_tokens, RunConfig, EXPERIMENTS};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

/// Evaluate conditional-variance uncertainty relations on families of
/// bipartite states and write the results as CSV, plot scripts, and JSON.
#[derive(Parser, Debug)]
#[command(name = "cvur", version, arg_required_else_help = true)]
struct Cli {
    /// Experiment: prop1-verify | sweep-schmidt | scatter-discord |
    /// sweep-werner | isotropic-demo | lur-demo | visibility-demo
    experiment: String,

    /// Base seed; sample i derives its generator from seed XOR i.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Monte-Carlo sample count for random-state experiments.
    #[arg(long, default_value_t = 1000)]
    samples: u64,

    /// Grid steps for sweep experiments (a sweep emits grid + 1 rows,
    /// including both endpoints).
    #[arg(long, default_value_t = 100)]
    grid: usize,

    /// Observable tokens, comma-separated: sx, sy, sz, n=x,y,z (normalized),
    /// spin32x, spin32y. Defaults depend on the experiment.
    #[arg(long)]
    obs: Option<String>,

    /// Bound variant, where the experiment supports one
    /// (e.g. scatter-discord: per_observable | single_d).
    #[arg(long)]
    variant: Option<String>,

    /// Write the CSV here; figure experiments also write `<stem>.gp`.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Print the JSON report array to stdout instead of the text summary.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

/// Print a line, treating a closed pipe (e.g. `cvur ... | head`) as a clean
/// early exit instead of a panic.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let tol_override = match std::env::var("CVUR_TOL") {
        Ok(text) => Some(
            text.parse::<f64>()
                .map_err(|_| format!("CVUR_TOL must be a float, got '{text}'"))?,
        ),
        Err(_) => None,
    };
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        grid: cli.grid,
        obs: cli.obs.map(|s| split_obs_tokens(&s)).unwrap_or_default(),
        variant: cli.variant,
        tol_override,
    };
    if !EXPERIMENTS.contains(&cli.experiment.as_str()) {
        return Err(format!(
            "unknown experiment '{}'; available: {}",
            cli.experiment,
            EXPERIMENTS.join(", ")
        ));
    }

    let output = run_experiment(&cli.experiment, &cfg).map_err(|e| e.to_string())?;

    if let Some(path) = &cli.out {
        let mut text = String::with_capacity(64 * (output.rows.len() + 1));
        text.push_str(output.header);
        text.push('\n');
        for row in &output.rows {
            text.push_str(row);
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        if matches!(output.experiment, "sweep-schmidt" | "scatter-discord") {
            let script = emit_plot_script(path, output.experiment).map_err(|e| e.to_string())?;
            if !cli.json {
                emit(&format!("wrote {} and {}", path.display(), script.display()));
            }
        } else if !cli.json {
            emit(&format!("wrote {}", path.display()));
        }
    }

    if cli.json {
        let mut json = String::from("[");
        for (i, report) in output.reports.iter().enumerate() {
            if i > 0 {
                json.push(',');
            }
            json.push_str(&report.to_json());
        }
        json.push(']');
        emit(&json);
    } else {
        for line in &output.summary {
            emit(line);
        }
    }
    Ok(())
}
