//! JSON state files.
//!
//! ```json
//! {"kind": "pure", "dims": [2, 2], "data": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}
//! ```
//!
//! `data` holds `[re, im]` pairs: the amplitudes of a pure state, or the
//! row-major entries of a density matrix for `"kind": "mixed"`. Subsystems
//! are flattened big-endian.

use std::path::Path;

use monotone_core::numkit::ComplexMatrix;
use monotone_core::states::{DensityMatrix, DimSignature, PureState, State};
use monotone_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub kind: Kind,
    pub dims: Vec<usize>,
    pub data: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &State) -> Self {
        let (kind, sig, values): (_, &DimSignature, Vec<Complex64>) = match state {
            State::Pure(p) => (Kind::Pure, p.signature(), p.amplitudes().to_vec()),
            State::Mixed(m) => (Kind::Mixed, m.signature(), m.matrix().as_slice().to_vec()),
        };
        StateFile {
            kind,
            dims: sig.dims().to_vec(),
            data: values.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Validates and builds the state.
    pub fn into_state(self) -> Result<State> {
        let sig = DimSignature::new(&self.dims)?;
        let values: Vec<Complex64> = self.data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        let n = sig.total();
        Ok(match self.kind {
            Kind::Pure => State::Pure(PureState::new(values, sig)?),
            Kind::Mixed => {
                if values.len() != n * n {
                    return Err(LabError::validation(
                        "dimension",
                        format!("{} entries for a {n}x{n} density matrix", values.len()),
                    ));
                }
                State::Mixed(DensityMatrix::new(ComplexMatrix::new(n, n, values)?, sig)?)
            }
        })
    }
}

pub fn parse_state(text: &str) -> Result<State> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| LabError::validation("format", e.to_string()))?;
    file.into_state()
}

pub fn read_state(path: &Path) -> Result<State> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_state(&text)
}

pub fn state_to_json(state: &State) -> String {
    serde_json::to_string(&StateFile::from_state(state)).expect("plain data serializes")
}
