use num_complex::Complex64;

use super::gate::Gate;
use crate::error::{Error, Result};
use crate::quantum::{basis_state, PureState};
use crate::MAX_QUBITS;

/// One gate application inside a [`Circuit`].
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

/// Ordered list of gate applications on a fixed-size register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::BadLength(1));
        }
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        Ok(Self {
            n_qubits,
            steps: Vec::new(),
        })
    }

    /// Appends a step after validating its targets.
    pub fn push(&mut self, gate: Gate, targets: &[usize]) -> Result<&mut Self> {
        check_targets(self.n_qubits, &gate, targets)?;
        self.steps.push(Step {
            gate,
            targets: targets.to_vec(),
        });
        Ok(self)
    }

    /// Builder form of [`Circuit::push`].
    pub fn with(mut self, gate: Gate, targets: &[usize]) -> Result<Self> {
        self.push(gate, targets)?;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn check_targets(n_qubits: usize, gate: &Gate, targets: &[usize]) -> Result<()> {
    if targets.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            name: gate.name().to_owned(),
            arity: gate.arity(),
            given: targets.len(),
        });
    }
    let bad =
        targets.iter().any(|&t| t >= n_qubits) || (targets.len() == 2 && targets[0] == targets[1]);
    if bad {
        return Err(Error::BadTargets {
            targets: targets.to_vec(),
            n_qubits,
        });
    }
    Ok(())
}

/// Embeds `gate` into the register at `targets` and applies it.
pub fn apply_gate(state: &PureState, gate: &Gate, targets: &[usize]) -> Result<PureState> {
    let n = state.n_qubits();
    check_targets(n, gate, targets)?;

    // Bit position (from the least significant end) of each target; targets[0]
    // maps to the most significant bit of the gate's local index.
    let shifts: Vec<usize> = targets.iter().map(|&t| n - 1 - t).collect();
    let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
    let local_dim = gate.dim();
    let k = shifts.len();
    let spread = |local: usize| -> usize {
        shifts
            .iter()
            .enumerate()
            .filter(|(j, _)| local >> (k - 1 - j) & 1 == 1)
            .map(|(_, s)| 1usize << s)
            .sum()
    };
    let offsets: Vec<usize> = (0..local_dim).map(spread).collect();

    let amps = state.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut local_in = vec![Complex64::new(0.0, 0.0); local_dim];
    for base in (0..amps.len()).filter(|i| i & mask == 0) {
        for (l, off) in offsets.iter().enumerate() {
            local_in[l] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            out[base | off] = (0..local_dim)
                .map(|col| gate.entry(r, col) * local_in[col])
                .sum();
        }
    }
    Ok(PureState::from_raw(n, out))
}

/// Left fold of [`apply_gate`] over the circuit's steps.
pub fn run_circuit(circuit: &Circuit, input: &PureState) -> Result<PureState> {
    if input.n_qubits() != circuit.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: circuit.n_qubits,
            got: input.n_qubits(),
        });
    }
    circuit.steps.iter().try_fold(input.clone(), |s, step| {
        apply_gate(&s, &step.gate, &step.targets)
    })
}

/// H on qubit 0 followed by CNOT from qubit 0 to qubit 1.
pub fn epr_circuit() -> Circuit {
    Circuit::new(2)
        .and_then(|c| c.with(Gate::h(), &[0]))
        .and_then(|c| c.with(Gate::cnot(), &[0, 1]))
        .expect("static EPR circuit is valid")
}

/// Bell state obtained from a two-qubit computational basis input.
pub fn epr_map(input: &PureState) -> Result<PureState> {
    if input.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: input.n_qubits(),
        });
    }
    let index = input.basis_index().ok_or(Error::NotBasisState)?;
    // Drop any global phase so the output matches the canonical Bell form.
    run_circuit(&epr_circuit(), &basis_state(2, index)?)
}
