//! Plot-script emission: textual gnuplot-dialect scripts that render the
//! figure analogs from an experiment's CSV. No rendering dependency — the
//! script file is the reproducible artifact.

use crate::experiments::{expected_header, SCATTER_HEADER, SCHMIDT_HEADER};
use cvur::{CvurError, Result};
use std::fs;
use std::path::{Path, PathBuf};

/// Validate `csv_path` against the experiment's schema and write the
/// matching plot script next to it (same stem, `.gp` extension). Returns
/// the script path.
///
/// Errors: unknown experiment for plotting, unreadable CSV, header mismatch,
/// or a CSV with no data rows — all reported as schema mismatches.
pub fn emit_plot_script(csv_path: &Path, experiment: &str) -> Result<PathBuf> {
    let script = render_plot_script(csv_path, experiment)?;
    let out = csv_path.with_extension("gp");
    fs::write(&out, script).map_err(|e| {
        CvurError::InvalidParameter(format!("cannot write plot script {}: {e}", out.display()))
    })?;
    Ok(out)
}

/// The script text for [`emit_plot_script`], separated for tests.
pub fn render_plot_script(csv_path: &Path, experiment: &str) -> Result<String> {
    let expected = match experiment {
        "sweep-schmidt" => SCHMIDT_HEADER,
        "scatter-discord" => SCATTER_HEADER,
        other => {
            let reason = if expected_header(other).is_some() {
                "has no figure analog"
            } else {
                "is not a known experiment"
            };
            return Err(CvurError::InvalidParameter(format!(
                "schema mismatch: experiment '{other}' {reason}; plots exist for \
                 sweep-schmidt and scatter-discord"
            )));
        }
    };
    let text = fs::read_to_string(csv_path).map_err(|e| {
        CvurError::InvalidParameter(format!("cannot read {}: {e}", csv_path.display()))
    })?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != expected {
        return Err(CvurError::InvalidParameter(format!(
            "schema mismatch: {} does not carry the {experiment} header",
            csv_path.display()
        )));
    }
    if lines.next().is_none() {
        return Err(CvurError::InvalidParameter(format!(
            "schema mismatch: {} has no data rows",
            csv_path.display()
        )));
    }
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());

    let script = match experiment {
        "sweep-schmidt" => format!(
            "# Inferred-variance product and its bound over the Schmidt family.\n\
             set datafile separator \",\"\n\
             set xlabel \"theta\"\n\
             set ylabel \"inferred-variance product\"\n\
             set xrange [0:pi/2]\n\
             set key top center\n\
             plot \"{csv_name}\" skip 1 using 1:7 with lines lw 2 title \"product of inferred variances\", \\\n\
             \x20    \"{csv_name}\" skip 1 using 1:8 with lines lw 2 title \"lower bound\"\n"
        ),
        "scatter-discord" => format!(
            "# Inferred-variance sum vs its skew-information bound; the diagonal\n\
             # marks equality, and no point may fall below it.\n\
             set datafile separator \",\"\n\
             set xlabel \"bound (rhs)\"\n\
             set ylabel \"inferred-variance sum (lhs)\"\n\
             set key top left\n\
             plot \"{csv_name}\" skip 1 using 3:2 with points pt 7 ps 0.4 title \"random states\", \\\n\
             \x20    x with lines lc \"black\" title \"y = x\"\n"
        ),
        _ => unreachable!("filtered above"),
    };
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_experiment, RunConfig};

    fn tmp(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("cvur_plot_test_{}_{name}", std::process::id()))
    }

    #[test]
    fn scripts_are_emitted_for_the_figure_experiments() {
        let cfg = RunConfig {
            samples: 10,
            grid: 8,
            ..RunConfig::default()
        };
        for name in ["sweep-schmidt", "scatter-discord"] {
            let out = run_experiment(name, &cfg).unwrap();
            let csv = tmp(&format!("{name}.csv"));
            fs::write(&csv, format!("{}\n{}\n", out.header, out.rows.join("\n"))).unwrap();
            let gp = emit_plot_script(&csv, name).unwrap();
            let text = fs::read_to_string(&gp).unwrap();
            assert!(text.contains("plot"));
            if name == "scatter-discord" {
                assert!(text.contains("y = x"));
            } else {
                assert!(text.contains("using 1:7"));
                assert!(text.contains("using 1:8"));
            }
            fs::remove_file(csv).ok();
            fs::remove_file(gp).ok();
        }
    }

    #[test]
    fn empty_or_mismatched_csv_is_a_schema_error() {
        let csv = tmp("empty.csv");
        fs::write(&csv, format!("{SCHMIDT_HEADER}\n")).unwrap();
        assert!(render_plot_script(&csv, "sweep-schmidt").is_err());
        fs::write(&csv, "a,b,c\n1,2,3\n").unwrap();
        assert!(render_plot_script(&csv, "sweep-schmidt").is_err());
        fs::write(&csv, format!("{SCHMIDT_HEADER}\n0,0,0,0,0,0,0,0,0\n")).unwrap();
        assert!(render_plot_script(&csv, "lur-demo").is_err());
        assert!(render_plot_script(&csv, "unknown").is_err());
        assert!(render_plot_script(&csv, "sweep-schmidt").is_ok());
        fs::remove_file(csv).ok();
    }
}
