//! The decomposition value type, the condition validator, and width.
//!
//! A decomposition is a tree whose nodes carry a bag (vertex set) and a
//! cover (edge-name set). It is valid for a hypergraph when
//!   1. every hyperedge is contained in some bag,
//!   2. for every vertex, the nodes whose bags contain it induce a connected
//!      subtree, and
//!   3. every bag is contained in the union of its cover edges.
//!
//! A fourth reference check reports names that do not exist in the
//! hypergraph at all. Construction only enforces tree shape; the validator
//! is the single source of semantic truth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::hypergraph::Hypergraph;

pub type NodeId = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("tree edge references unknown node id {0}")]
    DanglingTreeEdge(NodeId),
    #[error("tree edges do not form a tree")]
    CyclicTree,
}

/// Bag and cover attached to one decomposition node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecompositionNode {
    pub bag: BTreeSet<String>,
    pub cover: BTreeSet<String>,
}

/// A rooted decomposition tree. The root is the smallest node id. Tree edges
/// are undirected and acyclic; a forest is accepted at construction time
/// (per-vertex connectedness is the validator's business).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    nodes: BTreeMap<NodeId, DecompositionNode>,
    tree: BTreeSet<(NodeId, NodeId)>,
}

impl Decomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a decomposition, rejecting dangling tree-edge endpoints and
    /// cycles (duplicate undirected pairs and self-loops count as cycles).
    pub fn new(
        nodes: BTreeMap<NodeId, DecompositionNode>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, DecompositionError> {
        let ids: Vec<NodeId> = nodes.keys().copied().collect();
        let slot = |id: NodeId| ids.binary_search(&id);
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut tree = BTreeSet::new();
        for (a, b) in edges {
            let ia = slot(a).map_err(|_| DecompositionError::DanglingTreeEdge(a))?;
            let ib = slot(b).map_err(|_| DecompositionError::DanglingTreeEdge(b))?;
            if a == b {
                return Err(DecompositionError::CyclicTree);
            }
            if !tree.insert((a.min(b), a.max(b))) {
                return Err(DecompositionError::CyclicTree);
            }
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra == rb {
                return Err(DecompositionError::CyclicTree);
            }
            parent[ra] = rb;
        }
        Ok(Decomposition { nodes, tree })
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The smallest node id, if any.
    pub fn root(&self) -> Option<NodeId> {
        self.nodes.keys().next().copied()
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, DecompositionNode> {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&DecompositionNode> {
        self.nodes.get(&id)
    }

    /// Undirected tree edges, normalized as (smaller id, larger id).
    pub fn tree_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.tree.iter().copied()
    }

    pub fn neighbors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.tree.iter().filter_map(move |&(a, b)| {
            if a == id {
                Some(b)
            } else if b == id {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Maximum cover cardinality over nodes; 0 for the empty decomposition.
    pub fn width(&self) -> usize {
        self.nodes
            .values()
            .map(|n| n.cover.len())
            .max()
            .unwrap_or(0)
    }
}

/// Verdict of one validation condition, with the smallest violating witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub pass: bool,
    pub witness: Option<String>,
}

impl ConditionVerdict {
    fn pass() -> Self {
        ConditionVerdict {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: impl Into<String>) -> Self {
        ConditionVerdict {
            pass: false,
            witness: Some(witness.into()),
        }
    }
}

/// Per-condition outcome of [`validate`]. Valid iff all four pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Every hyperedge is contained in some bag.
    pub edge_coverage: ConditionVerdict,
    /// For every vertex, the nodes whose bags contain it are connected.
    pub connectedness: ConditionVerdict,
    /// Every bag is contained in the union of its cover edges.
    pub bag_cover: ConditionVerdict,
    /// Every bag vertex and cover edge names something in the hypergraph.
    pub references: ConditionVerdict,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.edge_coverage.pass
            && self.connectedness.pass
            && self.bag_cover.pass
            && self.references.pass
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, v: &ConditionVerdict| {
            if v.pass {
                writeln!(f, "{name}: PASS")
            } else {
                writeln!(f, "{name}: FAIL {}", v.witness.as_deref().unwrap_or(""))
            }
        };
        line(f, "edge_coverage", &self.edge_coverage)?;
        line(f, "connectedness", &self.connectedness)?;
        line(f, "bag_cover", &self.bag_cover)?;
        line(f, "references", &self.references)
    }
}

/// Checks the decomposition conditions; total, never fails. Witnesses are
/// the lexicographically (or numerically, for node ids) smallest violators.
pub fn validate(h: &Hypergraph, d: &Decomposition) -> ValidationReport {
    ValidationReport {
        edge_coverage: check_edge_coverage(h, d),
        connectedness: check_connectedness(h, d),
        bag_cover: check_bag_cover(h, d),
        references: check_references(h, d),
    }
}

fn check_edge_coverage(h: &Hypergraph, d: &Decomposition) -> ConditionVerdict {
    for e in 0..h.edge_count() {
        let members: BTreeSet<&str> = h.edge_vertex_names(e).collect();
        let housed = d
            .nodes()
            .values()
            .any(|n| members.iter().all(|v| n.bag.contains(*v)));
        if !housed {
            return ConditionVerdict::fail(h.edge_name(e));
        }
    }
    ConditionVerdict::pass()
}

fn check_connectedness(h: &Hypergraph, d: &Decomposition) -> ConditionVerdict {
    for v in h.vertex_names() {
        let holders: BTreeSet<NodeId> = d
            .nodes()
            .iter()
            .filter(|(_, n)| n.bag.contains(v))
            .map(|(&id, _)| id)
            .collect();
        if holders.len() <= 1 {
            continue;
        }
        let start = *holders.iter().next().expect("non-empty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            for nb in d.neighbors(id) {
                if holders.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        if seen.len() != holders.len() {
            return ConditionVerdict::fail(v.as_str());
        }
    }
    ConditionVerdict::pass()
}

fn check_bag_cover(h: &Hypergraph, d: &Decomposition) -> ConditionVerdict {
    for (&id, node) in d.nodes() {
        let mut union: BTreeSet<&str> = BTreeSet::new();
        for name in &node.cover {
            if let Some(e) = h.edge_index(name) {
                union.extend(h.edge_vertex_names(e));
            }
        }
        if !node.bag.iter().all(|v| union.contains(v.as_str())) {
            return ConditionVerdict::fail(id.to_string());
        }
    }
    ConditionVerdict::pass()
}

fn check_references(h: &Hypergraph, d: &Decomposition) -> ConditionVerdict {
    let mut unknown_vertex: Option<&str> = None;
    let mut unknown_edge: Option<&str> = None;
    for node in d.nodes().values() {
        for v in &node.bag {
            if h.vertex_index(v).is_none() {
                unknown_vertex = match unknown_vertex {
                    Some(cur) if cur <= v.as_str() => Some(cur),
                    _ => Some(v),
                };
            }
        }
        for e in &node.cover {
            if h.edge_index(e).is_none() {
                unknown_edge = match unknown_edge {
                    Some(cur) if cur <= e.as_str() => Some(cur),
                    _ => Some(e),
                };
            }
        }
    }
    match unknown_vertex.or(unknown_edge) {
        Some(name) => ConditionVerdict::fail(name),
        None => ConditionVerdict::pass(),
    }
}

/// Warnings for legal but wasteful decompositions: cover edges whose vertex
/// set is disjoint from the node's bag.
pub fn lint(h: &Hypergraph, d: &Decomposition) -> Vec<String> {
    let mut warnings = Vec::new();
    for (&id, node) in d.nodes() {
        for name in &node.cover {
            if let Some(e) = h.edge_index(name) {
                let touches = h.edge_vertex_names(e).any(|v| node.bag.contains(v));
                if !touches {
                    warnings.push(format!(
                        "node {id}: cover edge {name} is disjoint from its bag"
                    ));
                }
            }
        }
    }
    warnings
}

/// Plain-text summary of a hypergraph: sizes, primal edge count, component
/// count, acyclicity. One `key=value` pair per line.
pub fn stats(h: &Hypergraph) -> String {
    let sizes: Vec<usize> = (0..h.edge_count())
        .map(|e| h.edge_members(e).len())
        .collect();
    let min = sizes.iter().min().copied().unwrap_or(0);
    let max = sizes.iter().max().copied().unwrap_or(0);
    let mean = if sizes.is_empty() {
        0.0
    } else {
        sizes.iter().sum::<usize>() as f64 / sizes.len() as f64
    };
    format!(
        "vertices={}\nedges={}\nedge_size_min={}\nedge_size_max={}\nedge_size_mean={:.2}\nprimal_edges={}\ncomponents={}\nacyclic={}",
        h.vertex_count(),
        h.edge_count(),
        min,
        max,
        mean,
        h.primal_graph().edge_count(),
        h.connected_components().len(),
        h.is_alpha_acyclic()
    )
}
