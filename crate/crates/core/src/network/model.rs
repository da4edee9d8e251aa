use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::parse_ket_label;
use crate::gates::{apply_gate, probabilities, resolve_gate, Gate};
use crate::quantum::PureState;

/// Appraisal or interaction dimension a node activates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    Ethics,
    Engagement,
    UseIntentions,
    AffectiveInteraction,
    ReflectiveIntervention,
    Idle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkNode {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(
        default,
        rename = "dimensions",
        skip_serializing_if = "BTreeSet::is_empty"
    )]
    pub active_dimensions: BTreeSet<Dimension>,
    #[serde(default)]
    pub metrics: BTreeMap<String, f64>,
}

/// What an arc does to the register.
#[derive(Debug, Clone, PartialEq)]
pub enum ArcOperator {
    /// No choice is made; the register is left untouched.
    Noop,
    Gate {
        gate: Gate,
        targets: Vec<usize>,
    },
}

impl ArcOperator {
    pub fn is_noop(&self) -> bool {
        matches!(self, ArcOperator::Noop)
    }

    pub fn name(&self) -> &str {
        match self {
            ArcOperator::Noop => "noop",
            ArcOperator::Gate { gate, .. } => gate.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionArc {
    pub from: String,
    pub to: String,
    pub operator: ArcOperator,
    pub guard: Option<String>,
}

/// Guard predicates arcs may name.
pub const GUARDS: &[&str] = &["always", "affective", "reflective"];

fn guard_holds(name: &str, register: &PureState) -> Result<bool> {
    // Probability that qubit 0 reads |0⟩.
    let p0: f64 = probabilities(register)
        .iter()
        .enumerate()
        .filter(|(i, _)| i >> (register.n_qubits() - 1) & 1 == 0)
        .map(|(_, p)| p)
        .sum();
    match name {
        "always" => Ok(true),
        "affective" => Ok(p0 >= 0.5),
        "reflective" => Ok(p0 <= 0.5),
        _ => Err(Error::UnknownGuard(name.to_owned())),
    }
}

/// Graph of behavioral states whose arcs act on a quantum register.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionNetwork {
    nodes: Vec<NetworkNode>,
    arcs: Vec<TransitionArc>,
    start: String,
    end: Option<String>,
    register: PureState,
    index: HashMap<String, usize>,
}

impl TransitionNetwork {
    pub fn new(
        nodes: Vec<NetworkNode>,
        arcs: Vec<TransitionArc>,
        start: String,
        end: Option<String>,
        register: PureState,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if n.id.is_empty() {
                return Err(Error::InvalidNetwork("empty node id".into()));
            }
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate node id `{}`",
                    n.id
                )));
            }
            if let Some((k, v)) = n.metrics.iter().find(|(_, v)| !v.is_finite()) {
                return Err(Error::InvalidNetwork(format!(
                    "metric `{k}` = {v} on `{}`",
                    n.id
                )));
            }
        }
        let exists = |id: &str| index.contains_key(id);
        if !exists(&start) {
            return Err(Error::InvalidNetwork(format!(
                "start node `{start}` missing"
            )));
        }
        if let Some(e) = &end {
            if !exists(e) {
                return Err(Error::InvalidNetwork(format!("end node `{e}` missing")));
            }
        }
        for a in &arcs {
            for id in [&a.from, &a.to] {
                if !exists(id) {
                    return Err(Error::InvalidNetwork(format!(
                        "arc endpoint `{id}` missing"
                    )));
                }
            }
            if let Some(g) = &a.guard {
                if !GUARDS.contains(&g.as_str()) {
                    return Err(Error::UnknownGuard(g.clone()));
                }
            }
            if let ArcOperator::Gate { gate, targets } = &a.operator {
                // Validates arity and range against the register.
                apply_gate(&register, gate, targets)?;
            }
        }
        Ok(Self {
            nodes,
            arcs,
            start,
            end,
            register,
            index,
        })
    }

    pub fn nodes(&self) -> &[NetworkNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[TransitionArc] {
        &self.arcs
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn end(&self) -> Option<&str> {
        self.end.as_deref()
    }

    /// Initial register snapshot.
    pub fn register(&self) -> &PureState {
        &self.register
    }

    pub fn node(&self, id: &str) -> Option<&NetworkNode> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    /// Arcs leaving `id`.
    pub fn arcs_from<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a TransitionArc> + 'a {
        self.arcs.iter().filter(move |a| a.from == id)
    }

    /// Parses the network JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: NetworkDoc = serde_json::from_str(text)?;
        doc.build()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = NetworkDoc {
            nodes: self.nodes.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| {
                    let (targets, angle) = match &a.operator {
                        ArcOperator::Noop => (None, None),
                        ArcOperator::Gate { gate, targets } => {
                            (Some(targets.clone()), rotation_angle(gate))
                        }
                    };
                    ArcDoc {
                        from: a.from.clone(),
                        to: a.to.clone(),
                        operator: a.operator.name().to_owned(),
                        guard: a.guard.clone(),
                        targets,
                        angle,
                    }
                })
                .collect(),
            start: self.start.clone(),
            end: self.end.clone(),
            register: Some(crate::quantum::ket_label(
                self.register.n_qubits(),
                self.register.basis_index().unwrap_or(0),
            )),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

fn rotation_angle(gate: &Gate) -> Option<f64> {
    // Recover θ from the (0,0) entry cos(θ/2) and the sign of the off-diagonal.
    match gate.name() {
        "Rx" => Some(2.0 * (-gate.entry(0, 1).im).atan2(gate.entry(0, 0).re)),
        "Ry" => Some(2.0 * (-gate.entry(0, 1).re).atan2(gate.entry(0, 0).re)),
        "Rz" => Some(2.0 * (-gate.entry(0, 0).im).atan2(gate.entry(0, 0).re)),
        _ => None,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcDoc {
    from: String,
    to: String,
    operator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    guard: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    nodes: Vec<NetworkNode>,
    #[serde(default)]
    arcs: Vec<ArcDoc>,
    start: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<String>,
    /// Initial register as a ket label; defaults to `0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    register: Option<String>,
}

impl NetworkDoc {
    fn build(self) -> Result<TransitionNetwork> {
        let register = parse_ket_label(self.register.as_deref().unwrap_or("0"))?;
        let arcs = self
            .arcs
            .into_iter()
            .map(|a| {
                let operator = if a.operator == "noop" {
                    ArcOperator::Noop
                } else {
                    let gate = resolve_gate(&a.operator, a.angle)?;
                    let targets = a.targets.unwrap_or_else(|| (0..gate.arity()).collect());
                    ArcOperator::Gate { gate, targets }
                };
                Ok(TransitionArc {
                    from: a.from,
                    to: a.to,
                    operator,
                    guard: a.guard,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TransitionNetwork::new(self.nodes, arcs, self.start, self.end, register)
    }
}

/// Fires `arc` from `current`, returning the next node and register.
pub fn step(
    network: &TransitionNetwork,
    current: &str,
    register: &PureState,
    arc: &TransitionArc,
) -> Result<(String, PureState)> {
    if arc.from != current || network.node(current).is_none() || network.node(&arc.to).is_none() {
        return Err(Error::ArcNotApplicable {
            from: arc.from.clone(),
            to: arc.to.clone(),
            current: current.to_owned(),
        });
    }
    if register.n_qubits() != network.register.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: network.register.n_qubits(),
            got: register.n_qubits(),
        });
    }
    if let Some(g) = &arc.guard {
        if !guard_holds(g, register)? {
            return Err(Error::GuardFailed(g.clone()));
        }
    }
    let next = match &arc.operator {
        ArcOperator::Noop => register.clone(),
        ArcOperator::Gate { gate, targets } => apply_gate(register, gate, targets)?,
    };
    Ok((arc.to.clone(), next))
}

/// Single-owner walk through a network.
#[derive(Debug, Clone, PartialEq)]
pub struct Traversal {
    pub current: String,
    pub register: PureState,
}

impl Traversal {
    pub fn start(network: &TransitionNetwork) -> Self {
        Self {
            current: network.start.clone(),
            register: network.register.clone(),
        }
    }

    /// Fires the first arc from the current node leading to `to`.
    pub fn go(&mut self, network: &TransitionNetwork, to: &str) -> Result<()> {
        let arc = network
            .arcs_from(&self.current)
            .find(|a| a.to == to)
            .ok_or_else(|| Error::ArcNotApplicable {
                from: self.current.clone(),
                to: to.to_owned(),
                current: self.current.clone(),
            })?;
        let (next, register) = step(network, &self.current, &self.register, arc)?;
        self.current = next;
        self.register = register;
        Ok(())
    }
}

/// Every non-empty combination of `dimensions`, by size then in order.
pub fn concurrent_activations(
    dimensions: &BTreeSet<Dimension>,
) -> Result<Vec<BTreeSet<Dimension>>> {
    if dimensions.is_empty() {
        return Err(Error::InvalidNetwork("no dimensions to combine".into()));
    }
    let dims: Vec<Dimension> = dimensions.iter().copied().collect();
    let k = dims.len();
    let mut combos: Vec<BTreeSet<Dimension>> = Vec::with_capacity((1 << k) - 1);
    for size in 1..=k {
        extend_combinations(&dims, size, 0, &mut Vec::new(), &mut combos);
    }
    Ok(combos)
}

fn extend_combinations(
    dims: &[Dimension],
    size: usize,
    from: usize,
    prefix: &mut Vec<Dimension>,
    out: &mut Vec<BTreeSet<Dimension>>,
) {
    if prefix.len() == size {
        out.push(prefix.iter().copied().collect());
        return;
    }
    for i in from..dims.len() {
        prefix.push(dims[i]);
        extend_combinations(dims, size, i + 1, prefix, out);
        prefix.pop();
    }
}
