//! Decomposition construction: elimination-ordering heuristics on the primal
//! graph, bucket elimination into a tree of bags, subsumed-bag pruning, and
//! cover labeling. Acyclic hypergraphs take a width-1 fast path through the
//! absorption forest.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cover::{exact_cover, greedy_cover};
use crate::decomposition::{Decomposition, DecompositionNode, NodeId};
use crate::hypergraph::Hypergraph;

/// Ordering heuristic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    MinDegree,
    MinFill,
    Mcs,
    Random { seed: u64 },
}

impl Heuristic {
    pub fn tag(&self) -> &'static str {
        match self {
            Heuristic::MinDegree => "min-degree",
            Heuristic::MinFill => "min-fill",
            Heuristic::Mcs => "mcs",
            Heuristic::Random { .. } => "random",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A vertex permutation driving bucket elimination, tagged with the
/// heuristic that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<String>,
    pub heuristic: Heuristic,
}

/// How cover labels are computed for bags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Greedy,
    Exact,
    /// Greedy when the largest bag exceeds 12 vertices or the hypergraph has
    /// more than 64 edges, exact otherwise.
    Auto,
}

impl CoverMode {
    pub fn tag(&self) -> &'static str {
        match self {
            CoverMode::Greedy => "greedy",
            CoverMode::Exact => "exact",
            CoverMode::Auto => "auto",
        }
    }
}

impl fmt::Display for CoverMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Bags and tree produced by bucket elimination, before cover labeling.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: BTreeMap<NodeId, BTreeSet<String>>,
    pub tree: BTreeSet<(NodeId, NodeId)>,
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) {
    let neighbors: Vec<usize> = adj[v].iter().copied().collect();
    for &u in &neighbors {
        adj[u].remove(&v);
    }
    for i in 0..neighbors.len() {
        for j in i + 1..neighbors.len() {
            adj[neighbors[i]].insert(neighbors[j]);
            adj[neighbors[j]].insert(neighbors[i]);
        }
    }
    adj[v].clear();
}

fn fill_edges(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let neighbors: Vec<usize> = adj[v].iter().copied().collect();
    let mut count = 0;
    for i in 0..neighbors.len() {
        for j in i + 1..neighbors.len() {
            if !adj[neighbors[i]].contains(&neighbors[j]) {
                count += 1;
            }
        }
    }
    count
}

fn greedy_order(h: &Hypergraph, score: impl Fn(&[BTreeSet<usize>], usize) -> usize) -> Vec<usize> {
    let mut adj = h.primal_graph().adjacency().to_vec();
    let n = h.vertex_count();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // ties fall to the smallest index, which is the smallest name
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (score(&adj, v), v))
            .expect("some vertex is still alive");
        alive[v] = false;
        order.push(v);
        eliminate(&mut adj, v);
    }
    order
}

fn to_names(h: &Hypergraph, ids: Vec<usize>) -> Vec<String> {
    ids.into_iter()
        .map(|v| h.vertex_name(v).to_string())
        .collect()
}

/// Simulated elimination picking the vertex of minimum current degree.
pub fn order_min_degree(h: &Hypergraph) -> EliminationOrder {
    EliminationOrder {
        order: to_names(h, greedy_order(h, |adj, v| adj[v].len())),
        heuristic: Heuristic::MinDegree,
    }
}

/// Simulated elimination picking the vertex whose elimination adds the
/// fewest fill edges.
pub fn order_min_fill(h: &Hypergraph) -> EliminationOrder {
    EliminationOrder {
        order: to_names(h, greedy_order(h, fill_edges)),
        heuristic: Heuristic::MinFill,
    }
}

/// Maximum cardinality search: labels vertices by repeatedly choosing the
/// one with the most already-labeled neighbors; the elimination order is the
/// reverse of the labeling.
pub fn order_mcs(h: &Hypergraph) -> EliminationOrder {
    let pg = h.primal_graph();
    let n = h.vertex_count();
    let mut labeled = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut labeling = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !labeled[v])
            .min_by_key(|&v| (std::cmp::Reverse(weight[v]), v))
            .expect("some vertex is unlabeled");
        labeled[v] = true;
        labeling.push(v);
        for &u in pg.neighbors(v) {
            if !labeled[u] {
                weight[u] += 1;
            }
        }
    }
    labeling.reverse();
    EliminationOrder {
        order: to_names(h, labeling),
        heuristic: Heuristic::Mcs,
    }
}

/// Uniformly random permutation from a fixed, platform-stable generator.
///
/// The generator is pinned forever: ChaCha with 8 rounds seeded via
/// `seed_from_u64`, driving a Fisher-Yates shuffle of the canonical vertex
/// list where the index for position `i` is `next_u64() % (i + 1)`. The same
/// seed yields the same permutation on every platform.
pub fn order_random(h: &Hypergraph, seed: u64) -> EliminationOrder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.vertex_count();
    let mut ids: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        ids.swap(i, j);
    }
    EliminationOrder {
        order: to_names(h, ids),
        heuristic: Heuristic::Random { seed },
    }
}

/// Runs the heuristic selected by `heuristic`.
pub fn elimination_order(h: &Hypergraph, heuristic: Heuristic) -> EliminationOrder {
    match heuristic {
        Heuristic::MinDegree => order_min_degree(h),
        Heuristic::MinFill => order_min_fill(h),
        Heuristic::Mcs => order_mcs(h),
        Heuristic::Random { seed } => order_random(h, seed),
    }
}

/// Eliminates vertices in `order` on the primal graph with fill-in.
///
/// The bag of `v` is `{v}` plus its neighbors at elimination time; each bag
/// is linked to the bag of the earliest-eliminated such neighbor. Node ids
/// are 1-based elimination positions. Component roots (vertices with no
/// later neighbors) are chained root-to-root in component order so the
/// result is a single tree.
///
/// Panics if `order` is not a permutation of the vertex set.
pub fn bucket_elimination(h: &Hypergraph, order: &[String]) -> TreeDecomposition {
    let n = h.vertex_count();
    let ids: Vec<usize> = order
        .iter()
        .map(|name| {
            h.vertex_index(name)
                .unwrap_or_else(|| panic!("order names unknown vertex {name:?}"))
        })
        .collect();
    let mut position = vec![usize::MAX; n];
    for (k, &v) in ids.iter().enumerate() {
        assert!(
            position[v] == usize::MAX,
            "order repeats vertex {:?}",
            order[k]
        );
        position[v] = k;
    }
    assert!(ids.len() == n, "order must cover every vertex");

    let mut adj = h.primal_graph().adjacency().to_vec();
    let mut bags: BTreeMap<NodeId, BTreeSet<String>> = BTreeMap::new();
    let mut tree: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let mut root_of_vertex: BTreeMap<usize, NodeId> = BTreeMap::new();
    for (k, &v) in ids.iter().enumerate() {
        let id = (k + 1) as NodeId;
        let neighbors: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: BTreeSet<String> = neighbors
            .iter()
            .map(|&u| h.vertex_name(u).to_string())
            .collect();
        bag.insert(h.vertex_name(v).to_string());
        bags.insert(id, bag);
        if let Some(&next) = neighbors.iter().min_by_key(|&&u| position[u]) {
            let other = (position[next] + 1) as NodeId;
            tree.insert((id.min(other), id.max(other)));
        } else {
            root_of_vertex.insert(v, id);
        }
        eliminate(&mut adj, v);
    }

    // chain component roots in component order (by smallest member name)
    let mut roots = Vec::new();
    for comp in h.connected_components() {
        let root = comp
            .iter()
            .filter_map(|name| h.vertex_index(name))
            .filter_map(|v| root_of_vertex.get(&v))
            .copied()
            .next()
            .expect("every component elects exactly one root");
        roots.push(root);
    }
    for pair in roots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        tree.insert((a.min(b), a.max(b)));
    }

    TreeDecomposition { bags, tree }
}

/// Repeatedly merges any bag contained in an adjacent bag into that
/// neighbor, rewiring tree edges; the smallest node id merges first, into
/// its smallest-id absorbing neighbor. Surviving nodes are renumbered 1..=k
/// in ascending old-id order.
pub fn prune_subsumed(td: &TreeDecomposition) -> TreeDecomposition {
    let mut bags = td.bags.clone();
    let mut adj: BTreeMap<NodeId, BTreeSet<NodeId>> =
        bags.keys().map(|&id| (id, BTreeSet::new())).collect();
    for &(a, b) in &td.tree {
        adj.get_mut(&a).expect("edge endpoints exist").insert(b);
        adj.get_mut(&b).expect("edge endpoints exist").insert(a);
    }
    loop {
        let mut merge: Option<(NodeId, NodeId)> = None;
        'scan: for (&id, bag) in &bags {
            for &nb in &adj[&id] {
                if bag.is_subset(&bags[&nb]) {
                    merge = Some((id, nb));
                    break 'scan;
                }
            }
        }
        let Some((id, into)) = merge else { break };
        let neighbors = adj.remove(&id).expect("node exists");
        bags.remove(&id);
        for nb in neighbors {
            adj.get_mut(&nb).expect("neighbor exists").remove(&id);
            if nb != into {
                adj.get_mut(&nb).expect("neighbor exists").insert(into);
                adj.get_mut(&into).expect("absorber exists").insert(nb);
            }
        }
    }
    let renumber: BTreeMap<NodeId, NodeId> = bags
        .keys()
        .enumerate()
        .map(|(i, &id)| (id, (i + 1) as NodeId))
        .collect();
    let mut tree = BTreeSet::new();
    for (&id, neighbors) in &adj {
        for &nb in neighbors {
            let (a, b) = (renumber[&id], renumber[&nb]);
            tree.insert((a.min(b), a.max(b)));
        }
    }
    TreeDecomposition {
        bags: bags
            .into_iter()
            .map(|(id, bag)| (renumber[&id], bag))
            .collect(),
        tree,
    }
}

fn resolve_cover_mode(mode: CoverMode, td: &TreeDecomposition, h: &Hypergraph) -> CoverMode {
    match mode {
        CoverMode::Auto => {
            let max_bag = td.bags.values().map(BTreeSet::len).max().unwrap_or(0);
            if max_bag > 12 || h.edge_count() > 64 {
                CoverMode::Greedy
            } else {
                CoverMode::Exact
            }
        }
        other => other,
    }
}

fn join_tree(h: &Hypergraph) -> Decomposition {
    let gyo = h.gyo_reduce();
    debug_assert!(gyo.residual.is_empty());
    let id_of = |name: &str| -> NodeId {
        (h.edge_index(name).expect("forest names real edges") + 1) as NodeId
    };
    let nodes: BTreeMap<NodeId, DecompositionNode> = (0..h.edge_count())
        .map(|e| {
            let node = DecompositionNode {
                bag: h.edge_vertex_names(e).map(str::to_string).collect(),
                cover: BTreeSet::from([h.edge_name(e).to_string()]),
            };
            ((e + 1) as NodeId, node)
        })
        .collect();
    let edges: Vec<(NodeId, NodeId)> = gyo
        .absorptions
        .iter()
        .map(|(child, parent)| (id_of(child), id_of(parent)))
        .collect();
    Decomposition::new(nodes, edges).expect("absorption forest is acyclic")
}

fn label_covers(h: &Hypergraph, td: &TreeDecomposition, mode: CoverMode) -> Decomposition {
    let nodes: BTreeMap<NodeId, DecompositionNode> = td
        .bags
        .iter()
        .map(|(&id, bag)| {
            let cover = match mode {
                CoverMode::Greedy => greedy_cover(h, bag),
                _ => exact_cover(h, bag, None),
            }
            .expect("bags are subsets of the vertex set");
            let node = DecompositionNode {
                bag: bag.clone(),
                cover: cover.chosen.into_iter().collect(),
            };
            (id, node)
        })
        .collect();
    Decomposition::new(nodes, td.tree.clone()).expect("bucket elimination yields a tree")
}

/// Builds a decomposition of `h`.
///
/// Acyclic hypergraphs become their join tree (one node per edge, width 1).
/// Otherwise the chosen heuristic orders the vertices, bucket elimination
/// builds the bags, subsumed bags are pruned, and every bag gets a cover
/// label. The result always validates; the empty hypergraph yields the
/// empty decomposition.
pub fn decompose(h: &Hypergraph, heuristic: Heuristic, cover_mode: CoverMode) -> Decomposition {
    if h.is_empty() {
        return Decomposition::empty();
    }
    if h.is_alpha_acyclic() {
        return join_tree(h);
    }
    let ord = elimination_order(h, heuristic);
    let td = prune_subsumed(&bucket_elimination(h, &ord.order));
    let mode = resolve_cover_mode(cover_mode, &td, h);
    label_covers(h, &td, mode)
}

/// Builds a decomposition from an explicit elimination order: bucket
/// elimination, subsumed-bag pruning, exact cover labels. No acyclic fast
/// path, so the result reflects the given order faithfully.
pub fn decompose_ordering(h: &Hypergraph, order: &[String]) -> Decomposition {
    if h.is_empty() {
        return Decomposition::empty();
    }
    let td = prune_subsumed(&bucket_elimination(h, order));
    label_covers(h, &td, CoverMode::Exact)
}
