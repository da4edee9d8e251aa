//! The three appraisal circuits: good/bad traits, involvement/distance
//! satisfaction and the human-robot valence pair, plus their truth tables
//! regenerated by running the circuits.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{epr_map, labeled_probabilities, run_circuit, Circuit, Gate};
use crate::quantum::{basis_state, PureState};

/// Action tendency attached to each row of the traits table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ActionTendency {
    DoNothing,
    NegativeApproach,
    PositiveApproach,
    Avoid,
}

impl ActionTendency {
    pub fn description(self) -> &'static str {
        match self {
            ActionTendency::DoNothing => "Do nothing, sit still",
            ActionTendency::NegativeApproach => "Negative approach",
            ActionTendency::PositiveApproach => "Positive approach",
            ActionTendency::Avoid => "Avoid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SatisfactionLabel {
    Unsatisfied,
    InDoubt,
    Satisfied,
}

impl SatisfactionLabel {
    pub fn description(self) -> &'static str {
        match self {
            SatisfactionLabel::Unsatisfied => "Unsatisfied",
            SatisfactionLabel::InDoubt => "In doubt",
            SatisfactionLabel::Satisfied => "Satisfied",
        }
    }
}

/// Satisfaction qubit after the involvement/distance circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct SatisfactionVerdict {
    pub label: SatisfactionLabel,
    pub state: PureState,
}

/// Result of the good/bad traits circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraitAppraisal {
    pub interaction: bool,
    pub tendency: ActionTendency,
}

/// Good traits (q0), bad traits (q1), interaction (q2): CNOT(q0→q2), CNOT(q1→q2).
pub fn traits_circuit() -> Circuit {
    Circuit::new(3)
        .and_then(|c| c.with(Gate::cnot(), &[0, 2]))
        .and_then(|c| c.with(Gate::cnot(), &[1, 2]))
        .expect("static traits circuit")
}

/// Involvement (q0), distance (q1), satisfaction (q2): CV(q0→q2), CV(q1→q2).
pub fn satisfaction_circuit() -> Circuit {
    Circuit::new(3)
        .and_then(|c| c.with(Gate::cv(), &[0, 2]))
        .and_then(|c| c.with(Gate::cv(), &[1, 2]))
        .expect("static satisfaction circuit")
}

fn register3(a: bool, b: bool) -> PureState {
    basis_state(3, (usize::from(a) << 2) | (usize::from(b) << 1)).expect("3-qubit basis")
}

/// Third qubit of a state whose first two qubits are the basis pair `(a, b)`.
fn third_qubit(out: &PureState, a: bool, b: bool) -> Result<PureState> {
    let base = (usize::from(a) << 2) | (usize::from(b) << 1);
    PureState::new(vec![out.amplitude(base), out.amplitude(base | 1)])
}

/// Runs the traits circuit on `|good bad 0⟩`.
pub fn trait_appraisal(good: bool, bad: bool) -> Result<TraitAppraisal> {
    let out = run_circuit(&traits_circuit(), &register3(good, bad))?;
    let interaction = third_qubit(&out, good, bad)?
        .basis_index()
        .ok_or(Error::NotBasisState)?
        == 1;
    // Keyed on the input pair: (0,1) and (1,0) share the output bit.
    let tendency = match (good, bad) {
        (false, false) => ActionTendency::DoNothing,
        (false, true) => ActionTendency::NegativeApproach,
        (true, false) => ActionTendency::PositiveApproach,
        (true, true) => ActionTendency::Avoid,
    };
    Ok(TraitAppraisal {
        interaction,
        tendency,
    })
}

/// Runs the satisfaction circuit on `|involvement distance 0⟩`.
pub fn satisfaction(involvement: bool, distance: bool) -> Result<SatisfactionVerdict> {
    let out = run_circuit(&satisfaction_circuit(), &register3(involvement, distance))?;
    let state = third_qubit(&out, involvement, distance)?;
    let label = match state.basis_index() {
        Some(0) => SatisfactionLabel::Unsatisfied,
        Some(_) => SatisfactionLabel::Satisfied,
        None => SatisfactionLabel::InDoubt,
    };
    Ok(SatisfactionVerdict { label, state })
}

/// Entangles the `|human robot⟩` valence register and returns its outcome distribution.
pub fn hri_valence(human: bool, robot: bool) -> Result<(PureState, BTreeMap<String, f64>)> {
    let input = basis_state(2, (usize::from(human) << 1) | usize::from(robot))?;
    let entangled = epr_map(&input)?;
    let outcomes = labeled_probabilities(&entangled);
    Ok((entangled, outcomes))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraitRow {
    pub good: bool,
    pub bad: bool,
    pub interaction: bool,
    pub tendency: ActionTendency,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SatisfactionRow {
    pub involvement: bool,
    pub distance: bool,
    pub verdict: SatisfactionVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HriRow {
    pub human: bool,
    pub robot: bool,
    pub state: PureState,
    pub outcomes: BTreeMap<String, f64>,
}

const INPUTS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

pub fn traits_table() -> Result<Vec<TraitRow>> {
    INPUTS
        .iter()
        .map(|&(good, bad)| {
            let a = trait_appraisal(good, bad)?;
            Ok(TraitRow {
                good,
                bad,
                interaction: a.interaction,
                tendency: a.tendency,
            })
        })
        .collect()
}

pub fn satisfaction_table() -> Result<Vec<SatisfactionRow>> {
    INPUTS
        .iter()
        .map(|&(involvement, distance)| {
            Ok(SatisfactionRow {
                involvement,
                distance,
                verdict: satisfaction(involvement, distance)?,
            })
        })
        .collect()
}

/// Rows in the order the four mappings are usually listed: 00, 11, 10, 01.
pub fn hri_table() -> Result<Vec<HriRow>> {
    [(false, false), (true, true), (true, false), (false, true)]
        .iter()
        .map(|&(human, robot)| {
            let (state, outcomes) = hri_valence(human, robot)?;
            Ok(HriRow {
                human,
                robot,
                state,
                outcomes,
            })
        })
        .collect()
}

fn ket(b: bool) -> &'static str {
    if b {
        "|1⟩"
    } else {
        "|0⟩"
    }
}

/// Tab-separated rendering with a header line.
pub fn render_traits(rows: &[TraitRow]) -> String {
    let mut out =
        String::from("Good traits\tBad traits\tInteraction (initial |0⟩)\tAction tendency\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            ket(r.good),
            ket(r.bad),
            ket(r.interaction),
            r.tendency.description()
        );
    }
    out
}

pub fn render_satisfaction(rows: &[SatisfactionRow]) -> String {
    let mut out = String::from("Involvement\tDistance\tSatisfaction (initial |0⟩)\tRemarks\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            ket(r.involvement),
            ket(r.distance),
            r.verdict.state,
            r.verdict.label.description()
        );
    }
    out
}

pub fn render_hri(rows: &[HriRow]) -> String {
    let mut out = String::from("Human\tRobot\tEntangled |Human Robot⟩\tOutcomes\n");
    for r in rows {
        let outcomes = r
            .outcomes
            .iter()
            .map(|(k, p)| format!("{k}: {p:.3}"))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            ket(r.human),
            ket(r.robot),
            r.state,
            outcomes
        );
    }
    out
}

impl fmt::Display for ActionTendency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}
