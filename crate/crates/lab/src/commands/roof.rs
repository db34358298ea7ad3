use std::path::Path;
use std::str::FromStr;

use monotone_core::measures::MeasureId;
use monotone_core::roof::{roof_value, schmidt_number};
use serde::Serialize;

use super::{resolve_cut, roof_options, to_json, Outcome};
use crate::args::Cli;
use crate::error::{LabError, Result};
use crate::statefile::read_state;

#[derive(Serialize)]
struct Member {
    probability: f64,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct Settings {
    restarts: usize,
    seed: u64,
    tol: f64,
    max_iterations: usize,
}

#[derive(Serialize)]
struct RoofReport {
    measure: String,
    cut: String,
    rank: usize,
    value: f64,
    converged: bool,
    restarts_used: usize,
    settings: Settings,
    ensemble: Vec<Member>,
}

#[derive(Serialize)]
struct SchmidtReport {
    measure: &'static str,
    cut: String,
    rank: usize,
    lower: usize,
    upper: usize,
    settings: Settings,
}

pub fn run(cli: &Cli, input: &Path, measure: &str, cut: Option<&str>, max_iter: Option<usize>) -> Result<Outcome> {
    let state = read_state(input)?;
    let measure = MeasureId::from_str(measure)?;
    let cut = resolve_cut(state.signature(), cut)?;
    let rho = state.bipartition(&cut)?.density();
    let mut opts = roof_options(cli)?;
    if let Some(m) = max_iter {
        if m == 0 {
            return Err(LabError::validation("max_iter", "need at least one iteration"));
        }
        opts.max_iterations = m;
    }
    let settings = Settings {
        restarts: opts.restarts,
        seed: opts.seed,
        tol: opts.tol,
        max_iterations: opts.max_iterations,
    };
    let text = if measure == MeasureId::SchmidtRank {
        let b = schmidt_number(&rho, &opts)?;
        to_json(&SchmidtReport {
            measure: "SCHMIDT_NUMBER",
            cut: cut.to_string(),
            rank: rho.rank(),
            lower: b.lower,
            upper: b.upper,
            settings,
        })
    } else if measure.is_direct_on_mixed() {
        return Err(LabError::Capability(format!(
            "{measure} has a closed form on mixed states; use the measure command"
        )));
    } else {
        let r = roof_value(&rho, measure, &opts)?;
        let ensemble = r
            .best_ensemble
            .probabilities()
            .iter()
            .zip(r.best_ensemble.states())
            .map(|(p, s)| Member {
                probability: *p,
                amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            })
            .collect();
        to_json(&RoofReport {
            measure: measure.to_string(),
            cut: cut.to_string(),
            rank: rho.rank(),
            value: r.value,
            converged: r.converged,
            restarts_used: r.restarts_used,
            settings,
            ensemble,
        })
    };
    Ok(Outcome::report(text))
}
