use std::path::Path;
use std::str::FromStr;

use monotone_core::measures::{mixed_value, pure_value, MeasureId};
use monotone_core::states::State;
use serde::Serialize;

use super::{resolve_cut, to_json, Outcome};
use crate::error::Result;
use crate::statefile::{read_state, Kind};

#[derive(Serialize)]
struct Entry {
    measure: String,
    value: f64,
    convention: &'static str,
}

#[derive(Serialize)]
struct Report {
    input: String,
    kind: Kind,
    dims: Vec<usize>,
    cut: String,
    results: Vec<Entry>,
}

pub fn run(input: &Path, measures: &[String], cut: Option<&str>) -> Result<Outcome> {
    let state = read_state(input)?;
    let measures = measures
        .iter()
        .map(|m| MeasureId::from_str(m))
        .collect::<monotone_core::Result<Vec<_>>>()?;
    let cut = resolve_cut(state.signature(), cut)?;
    let split = state.bipartition(&cut)?;
    let mut results = Vec::with_capacity(measures.len());
    for m in measures {
        let value = match &split {
            State::Pure(psi) => pure_value(m, psi)?,
            State::Mixed(rho) => mixed_value(m, rho)?,
        };
        results.push(Entry {
            measure: m.to_string(),
            value,
            convention: m.convention(),
        });
    }
    let (kind, dims) = match &state {
        State::Pure(p) => (Kind::Pure, p.dims().to_vec()),
        State::Mixed(m) => (Kind::Mixed, m.dims().to_vec()),
    };
    Ok(Outcome::report(to_json(&Report {
        input: input.display().to_string(),
        kind,
        dims,
        cut: cut.to_string(),
        results,
    })))
}
