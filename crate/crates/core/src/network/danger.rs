use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::model::TransitionNetwork;
use crate::error::{Error, Result};

/// Metric values closer than this are treated as unchanged.
const STAGNATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DangerFlag {
    pub node: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DangerReport {
    pub flagged: Vec<DangerFlag>,
}

impl DangerReport {
    pub fn is_empty(&self) -> bool {
        self.flagged.is_empty()
    }

    pub fn node_ids(&self) -> BTreeSet<&str> {
        self.flagged.iter().map(|f| f.node.as_str()).collect()
    }
}

/// Nodes reachable from `id` by following only noop arcs, `id` included.
pub fn noop_closure<'a>(network: &'a TransitionNetwork, id: &'a str) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(n) = queue.pop_front() {
        for a in network.arcs_from(n).filter(|a| a.operator.is_noop()) {
            if seen.insert(a.to.as_str()) {
                queue.push_back(a.to.as_str());
            }
        }
    }
    seen
}

/// Flags freeze states: nodes with a noop exit whose `metric` is above
/// `threshold` and cannot move by following noop arcs alone.
pub fn detect_danger(
    network: &TransitionNetwork,
    metric: &str,
    threshold: f64,
) -> Result<DangerReport> {
    if !network
        .nodes()
        .iter()
        .any(|n| n.metrics.contains_key(metric))
    {
        return Err(Error::UnknownMetric(metric.to_owned()));
    }
    if !threshold.is_finite() {
        return Err(Error::NonFinite("threshold"));
    }
    let mut report = DangerReport::default();
    for node in network.nodes() {
        let Some(&level) = node.metrics.get(metric) else {
            continue;
        };
        let has_noop = network.arcs_from(&node.id).any(|a| a.operator.is_noop());
        if !has_noop || level <= threshold {
            continue;
        }
        // Nodes without the metric carry the current level through.
        let stagnant = noop_closure(network, &node.id).into_iter().all(|id| {
            network
                .node(id)
                .and_then(|n| n.metrics.get(metric))
                .is_none_or(|v| (v - level).abs() <= STAGNATION_TOL)
        });
        if stagnant {
            report.flagged.push(DangerFlag {
                node: node.id.clone(),
                reason: format!(
                    "{metric} stays at {level} (> {threshold}) when no action is taken: \
                     every noop path leaves it unchanged"
                ),
            });
        }
    }
    Ok(report)
}
