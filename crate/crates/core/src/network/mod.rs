//! State-transition networks with gate-labeled arcs and freeze detection.

mod danger;
pub mod fixtures;
mod model;

pub use danger::{detect_danger, noop_closure, DangerFlag, DangerReport};
pub use model::{
    concurrent_activations, step, ArcOperator, Dimension, NetworkNode, TransitionArc,
    TransitionNetwork, Traversal, GUARDS,
};
