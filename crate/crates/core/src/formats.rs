//! Text formats: ket labels and the circuit JSON document.
//!
//! Circuit JSON:
//!
//! ```json
//! {"qubits": 2, "ops": [{"gate": "H", "targets": [0]},
//!                       {"gate": "CNOT", "targets": [0, 1]},
//!                       {"gate": "Ry", "targets": [1], "angle": 0.5}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{resolve_gate, Circuit};
use crate::quantum::{basis_state, PureState};
use crate::MAX_QUBITS;

/// Parses `01`, `|01⟩` or `|01>` into the matching basis state.
pub fn parse_ket_label(label: &str) -> Result<PureState> {
    let trimmed = label.trim();
    let inner = trimmed.strip_prefix('|').unwrap_or(trimmed);
    let inner = inner
        .strip_suffix('⟩')
        .or_else(|| inner.strip_suffix('>'))
        .unwrap_or(inner);
    if inner.is_empty() {
        return Err(Error::Parse("empty ket label".into()));
    }
    if inner.len() > MAX_QUBITS {
        return Err(Error::TooManyQubits(inner.len()));
    }
    let mut index = 0usize;
    for ch in inner.chars() {
        index = index << 1
            | match ch {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Parse(format!("bad ket label `{label}`"))),
            };
    }
    basis_state(inner.len(), index)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpSpec {
    pub gate: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSpec {
    pub qubits: usize,
    #[serde(default)]
    pub ops: Vec<OpSpec>,
}

impl CircuitSpec {
    pub fn build(&self) -> Result<Circuit> {
        let mut circuit = Circuit::new(self.qubits)?;
        for op in &self.ops {
            circuit.push(resolve_gate(&op.gate, op.angle)?, &op.targets)?;
        }
        Ok(circuit)
    }
}

/// Parses and validates a circuit JSON document.
pub fn parse_circuit_json(text: &str) -> Result<Circuit> {
    let spec: CircuitSpec = serde_json::from_str(text)?;
    spec.build()
}
