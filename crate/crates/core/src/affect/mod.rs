//! Psychological layer: axis semantics, appraisal circuits and classification.

mod circuits;
mod readout;

pub use circuits::{
    hri_table, hri_valence, render_hri, render_satisfaction, render_traits, satisfaction,
    satisfaction_circuit, satisfaction_table, trait_appraisal, traits_circuit, traits_table,
    ActionTendency, HriRow, SatisfactionLabel, SatisfactionRow, SatisfactionVerdict,
    TraitAppraisal, TraitRow,
};
pub use readout::{
    classify, readout, state_from_relevance, AffectLabel, AxisOperators, PsychReadout,
    DEFAULT_THRESHOLD,
};
