//! Bundled networks for the appraisal cube and the two freeze designs.

use super::model::TransitionNetwork;

pub const APPRAISAL_JSON: &str = include_str!("../../fixtures/appraisal_network.json");
pub const FREEZE_JSON: &str = include_str!("../../fixtures/freeze_network.json");
pub const DUPLICATE_JSON: &str = include_str!("../../fixtures/duplicate_network.json");

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["appraisal", "freeze", "duplicate"];

/// Idle ↔ Ethics ↔ Engagement ↔ Use Intentions on a three-qubit register;
/// every arc flips one dimension qubit with X.
pub fn appraisal() -> TransitionNetwork {
    TransitionNetwork::from_json(APPRAISAL_JSON).expect("bundled appraisal network")
}

/// Affective |0⟩ ↔ reflective |1⟩ with an avoid exit and a freeze state.
pub fn freeze() -> TransitionNetwork {
    TransitionNetwork::from_json(FREEZE_JSON).expect("bundled freeze network")
}

/// Duplicated affective/reflective system that can walk out with or without
/// adapting its dissatisfaction.
pub fn duplicate() -> TransitionNetwork {
    TransitionNetwork::from_json(DUPLICATE_JSON).expect("bundled duplicate network")
}

pub fn builtin(name: &str) -> Option<TransitionNetwork> {
    match name {
        "appraisal" => Some(appraisal()),
        "freeze" => Some(freeze()),
        "duplicate" => Some(duplicate()),
        _ => None,
    }
}
