mod figures;
mod measure;
mod monogamy;
mod properties;
mod roof;

use std::io::Write;
use std::str::FromStr;

use monotone_core::roof::RoofOptions;
use monotone_core::states::{Cut, DimSignature};
use serde::Serialize;

use crate::args::{Cli, Command};
use crate::error::{LabError, Result};

pub use figures::figure_csv;
pub use properties::{run_suite, SuiteReport};

/// What a command produced. `table` (when present) is what `--out`
/// receives; `report` always goes to stdout in that case.
pub struct Outcome {
    pub report: String,
    pub table: Option<String>,
    pub failure: Option<LabError>,
}

impl Outcome {
    fn report(report: String) -> Self {
        Outcome {
            report,
            table: None,
            failure: None,
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Measure { input, measure, cut } => measure::run(input, measure, cut.as_deref()),
        Command::Monogamy {
            family,
            params,
            measure,
            input,
            expect,
        } => monogamy::run(
            cli,
            *family,
            params.as_deref(),
            measure.as_deref(),
            input.as_deref(),
            expect.as_deref(),
        ),
        Command::Figures { fig, resolution } => figures::run(*fig, *resolution),
        Command::Properties { suite, samples } => properties::run(cli, *suite, *samples),
        Command::Roof {
            input,
            measure,
            cut,
            max_iter,
        } => roof::run(cli, input, measure, cut.as_deref(), *max_iter),
    }
}

/// Runs the parsed command, writing output to `stdout` or `--out`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let outcome = dispatch(cli)?;
    let stdout_err = |e| LabError::io("<stdout>", e);
    match &cli.out {
        Some(path) => {
            let body = outcome.table.as_deref().unwrap_or(&outcome.report);
            std::fs::write(path, body).map_err(|e| LabError::io(path, e))?;
            if outcome.table.is_some() {
                stdout.write_all(outcome.report.as_bytes()).map_err(stdout_err)?;
            }
        }
        None => stdout.write_all(outcome.report.as_bytes()).map_err(stdout_err)?,
    }
    match outcome.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

pub(crate) fn roof_options(cli: &Cli) -> Result<RoofOptions> {
    let mut opts = RoofOptions {
        seed: cli.seed,
        ..RoofOptions::default()
    };
    if let Some(r) = cli.restarts {
        if r == 0 {
            return Err(LabError::validation("restarts", "need at least one restart"));
        }
        opts.restarts = r;
    }
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(LabError::validation("tol", format!("tolerance {t} must be positive")));
        }
        opts.tol = t;
    }
    Ok(opts)
}

/// The requested cut, or `A|B` / `A|BC` by party count.
pub(crate) fn resolve_cut(sig: &DimSignature, cut: Option<&str>) -> Result<Cut> {
    let cut = match (cut, sig.parties()) {
        (_, 1) => return Err(LabError::validation("bipartite", "a single-system state has no cut")),
        (Some(text), _) => Cut::from_str(text)?,
        (None, 2) => Cut::a_b(),
        (None, _) => Cut::a_bc(),
    };
    if cut.parties() != sig.parties() {
        return Err(LabError::validation(
            "cut",
            format!("cut {cut} does not cover a {}-party state", sig.parties()),
        ));
    }
    Ok(cut)
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
