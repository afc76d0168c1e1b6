//! Named hypergraphs with canonical ordering, incidence queries, the primal
//! graph, connectivity, and acyclicity testing by ear/subsumption reduction.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Errors from hypergraph construction and lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge {0:?} has an empty vertex set")]
    EmptyEdge(String),
    #[error("duplicate edge name {0:?}")]
    DuplicateEdgeName(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex and edge names must be non-empty")]
    EmptyName,
}

/// An immutable hypergraph: named vertices and named hyperedges.
///
/// Vertices and edges are kept in canonical order (byte-lexicographic by
/// name), which makes every derived result deterministic. The vertex set is
/// exactly the union of the edge vertex sets; a lone vertex is expressed as
/// a unary edge. The empty hypergraph (no edges, no vertices) is legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    name: String,
    members: BTreeSet<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from `(edge name, vertex list)` pairs.
    ///
    /// Duplicate vertices within one edge are silently deduplicated. Edge
    /// names must be unique and every edge must keep at least one vertex.
    pub fn build<I, N, V>(input: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (N, V)>,
        N: Into<String>,
        V: IntoIterator,
        V::Item: Into<String>,
    {
        let mut named: Vec<(String, BTreeSet<String>)> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for (name, verts) in input {
            let name = name.into();
            if name.is_empty() {
                return Err(HypergraphError::EmptyName);
            }
            if !seen.insert(name.clone()) {
                return Err(HypergraphError::DuplicateEdgeName(name));
            }
            let set: BTreeSet<String> = verts.into_iter().map(Into::into).collect();
            if set.is_empty() {
                return Err(HypergraphError::EmptyEdge(name));
            }
            if set.iter().any(|v| v.is_empty()) {
                return Err(HypergraphError::EmptyName);
            }
            named.push((name, set));
        }
        named.sort_by(|a, b| a.0.cmp(&b.0));

        let vertex_set: BTreeSet<&String> = named.iter().flat_map(|(_, s)| s.iter()).collect();
        let vertices: Vec<String> = vertex_set.into_iter().cloned().collect();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let edges = named
            .into_iter()
            .map(|(name, set)| Edge {
                name,
                members: set.iter().map(|v| index[v.as_str()]).collect(),
            })
            .collect();
        Ok(Hypergraph { vertices, edges })
    }

    /// True when the hypergraph has no edges (and therefore no vertices).
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex names in canonical order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    /// Canonical index of a vertex name.
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
    }

    pub fn vertex_name(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    /// Edge names in canonical order.
    pub fn edge_names(&self) -> impl ExactSizeIterator<Item = &str> {
        self.edges.iter().map(|e| e.name.as_str())
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .ok()
    }

    pub fn edge_name(&self, index: usize) -> &str {
        &self.edges[index].name
    }

    /// Vertex indices of the edge at `index` (ascending, which is canonical
    /// name order because the vertex list is sorted).
    pub fn edge_members(&self, index: usize) -> &BTreeSet<usize> {
        &self.edges[index].members
    }

    pub fn edge_vertex_names(&self, index: usize) -> impl Iterator<Item = &str> {
        self.edges[index]
            .members
            .iter()
            .map(|&v| self.vertices[v].as_str())
    }

    /// Names of the edges containing `vertex`, in canonical order.
    pub fn incident_edges(&self, vertex: &str) -> Result<Vec<String>, HypergraphError> {
        let id = self
            .vertex_index(vertex)
            .ok_or_else(|| HypergraphError::UnknownVertex(vertex.to_string()))?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.members.contains(&id))
            .map(|e| e.name.clone())
            .collect())
    }

    /// The primal (Gaifman) graph: u ~ v iff some edge contains both.
    pub fn primal_graph(&self) -> PrimalGraph {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for e in &self.edges {
            let members: Vec<usize> = e.members.iter().copied().collect();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    adj[members[i]].insert(members[j]);
                    adj[members[j]].insert(members[i]);
                }
            }
        }
        PrimalGraph {
            vertices: self.vertices.clone(),
            adj,
        }
    }

    /// Partition of the vertex set by primal-graph connectivity, components
    /// ordered by their smallest member name.
    pub fn connected_components(&self) -> Vec<BTreeSet<String>> {
        let pg = self.primal_graph();
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                comp.insert(self.vertices[v].clone());
                for &u in pg.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Ear/subsumption reduction.
    ///
    /// Repeatedly (i) deletes a vertex occurring in exactly one surviving
    /// edge, (ii) absorbs an edge whose vertex set is contained in another
    /// surviving edge's, until neither rule applies. Ties: rule (i) picks the
    /// smallest vertex name; rule (ii) picks the smallest absorbable edge
    /// name and absorbs it into the smallest valid absorber; among edges with
    /// identical vertex sets the larger name is absorbed into the smaller.
    pub fn gyo_reduce(&self) -> GyoReduction {
        let mut sets: Vec<Option<BTreeSet<usize>>> =
            self.edges.iter().map(|e| Some(e.members.clone())).collect();
        let mut absorptions = Vec::new();
        loop {
            // rule (i): smallest vertex occurring in exactly one live edge
            let mut occ: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            for (i, s) in sets.iter().enumerate() {
                if let Some(s) = s {
                    for &v in s {
                        let entry = occ.entry(v).or_insert((0, i));
                        entry.0 += 1;
                        entry.1 = i;
                    }
                }
            }
            let ear = occ
                .iter()
                .find(|(_, (count, _))| *count == 1)
                .map(|(&v, &(_, idx))| (v, idx));
            if let Some((v, idx)) = ear {
                sets[idx].as_mut().expect("live edge").remove(&v);
                continue;
            }
            // rule (ii): smallest absorbable edge into its smallest absorber
            let mut pick: Option<(usize, usize)> = None;
            'child: for c in 0..sets.len() {
                let Some(cs) = &sets[c] else { continue };
                for (p, slot) in sets.iter().enumerate() {
                    if p == c {
                        continue;
                    }
                    let Some(ps) = slot else { continue };
                    if cs.is_subset(ps) && (cs != ps || c > p) {
                        pick = Some((c, p));
                        break 'child;
                    }
                }
            }
            match pick {
                Some((c, p)) => {
                    absorptions.push((self.edges[c].name.clone(), self.edges[p].name.clone()));
                    sets[c] = None;
                }
                None => break,
            }
        }
        let mut residual = Vec::new();
        let mut roots = Vec::new();
        for (i, s) in sets.iter().enumerate() {
            if let Some(s) = s {
                if s.is_empty() {
                    roots.push(self.edges[i].name.clone());
                } else {
                    residual.push(self.edges[i].name.clone());
                }
            }
        }
        GyoReduction {
            residual,
            absorptions,
            roots,
        }
    }

    /// True iff the reduction eliminates every edge.
    pub fn is_alpha_acyclic(&self) -> bool {
        self.gyo_reduce().residual.is_empty()
    }

    /// A copy of the hypergraph without edges whose vertex set is contained
    /// in another edge's; among identical sets the smaller name survives.
    /// The vertex set is unchanged.
    pub fn remove_subsumed_edges(&self) -> Hypergraph {
        let keep: Vec<&Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(c, ce)| {
                !self.edges.iter().enumerate().any(|(p, pe)| {
                    p != *c
                        && ce.members.is_subset(&pe.members)
                        && (ce.members != pe.members || *c > p)
                })
            })
            .map(|(_, e)| e)
            .collect();
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: keep.into_iter().cloned().collect(),
        }
    }
}

/// Outcome of [`Hypergraph::gyo_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyoReduction {
    /// Edges surviving with a non-empty vertex set, canonical order.
    pub residual: Vec<String>,
    /// Absorptions in application order: `(absorbed edge, absorbing edge)`.
    pub absorptions: Vec<(String, String)>,
    /// Edges reduced to nothing without being absorbed (at most one; the
    /// root of the absorption forest when the reduction consumes everything).
    pub roots: Vec<String>,
}

/// The primal graph of a hypergraph: two vertices are adjacent iff they
/// co-occur in some hyperedge. Adjacency is irreflexive and symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalGraph {
    vertices: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl PrimalGraph {
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Adjacency sets indexed by canonical vertex index.
    pub fn adjacency(&self) -> &[BTreeSet<usize>] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn are_adjacent(&self, u: &str, v: &str) -> bool {
        let iu = self.vertices.binary_search_by(|x| x.as_str().cmp(u));
        let iv = self.vertices.binary_search_by(|x| x.as_str().cmp(v));
        match (iu, iv) {
            (Ok(iu), Ok(iv)) => self.adj[iu].contains(&iv),
            _ => false,
        }
    }

    /// Number of undirected adjacency pairs.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> Hypergraph {
        Hypergraph::build([("e1", vec!["a", "b"]), ("e2", vec!["b", "c"])]).unwrap()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::build([
            ("e1", vec!["a", "b"]),
            ("e2", vec!["b", "c"]),
            ("e3", vec!["a", "c"]),
        ])
        .unwrap()
    }

    #[test]
    fn build_single_edge() {
        let h = Hypergraph::build([("e1", vec!["a", "b"])]).unwrap();
        assert_eq!(h.vertex_names(), ["a", "b"]);
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn build_dedups_vertices_within_edge() {
        let h = Hypergraph::build([("e1", vec!["a", "a", "b"])]).unwrap();
        assert_eq!(h.edge_vertex_names(0).collect::<Vec<_>>(), ["a", "b"]);
    }

    #[test]
    fn build_rejects_empty_edge() {
        let err = Hypergraph::build([("e1", Vec::<String>::new())]).unwrap_err();
        assert_eq!(err, HypergraphError::EmptyEdge("e1".into()));
    }

    #[test]
    fn build_rejects_duplicate_edge_name() {
        let err = Hypergraph::build([("e1", vec!["a"]), ("e1", vec!["b"])]).unwrap_err();
        assert_eq!(err, HypergraphError::DuplicateEdgeName("e1".into()));
    }

    #[test]
    fn build_is_idempotent_on_canonical_output() {
        let h = Hypergraph::build([("z", vec!["q", "a"]), ("b", vec!["a"])]).unwrap();
        let again = Hypergraph::build(
            h.edge_names()
                .enumerate()
                .map(|(i, name)| {
                    (
                        name.to_string(),
                        h.edge_vertex_names(i)
                            .map(str::to_string)
                            .collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn primal_graph_of_one_edge_is_a_clique() {
        let h = Hypergraph::build([("e1", vec!["a", "b", "c"])]).unwrap();
        let pg = h.primal_graph();
        assert!(pg.are_adjacent("a", "b"));
        assert!(pg.are_adjacent("b", "c"));
        assert!(pg.are_adjacent("a", "c"));
        assert_eq!(pg.edge_count(), 3);
    }

    #[test]
    fn primal_graph_of_path() {
        let pg = path().primal_graph();
        assert!(pg.are_adjacent("a", "b"));
        assert!(pg.are_adjacent("b", "c"));
        assert!(!pg.are_adjacent("a", "c"));
    }

    #[test]
    fn primal_graph_of_unary_edge_has_no_adjacency() {
        let h = Hypergraph::build([("e1", vec!["a"])]).unwrap();
        assert_eq!(h.primal_graph().edge_count(), 0);
    }

    #[test]
    fn incident_edges_queries() {
        let h = path();
        assert_eq!(h.incident_edges("b").unwrap(), ["e1", "e2"]);
        assert_eq!(h.incident_edges("a").unwrap(), ["e1"]);
        assert_eq!(
            h.incident_edges("z").unwrap_err(),
            HypergraphError::UnknownVertex("z".into())
        );
    }

    #[test]
    fn components_split_and_merge() {
        let h = Hypergraph::build([("e1", vec!["a", "b"]), ("e2", vec!["c", "d"])]).unwrap();
        let comps = h.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps[0].contains("a") && comps[0].contains("b"));
        assert!(comps[1].contains("c") && comps[1].contains("d"));

        assert_eq!(path().connected_components().len(), 1);
        let empty = Hypergraph::build(Vec::<(String, Vec<String>)>::new()).unwrap();
        assert!(empty.connected_components().is_empty());
    }

    #[test]
    fn gyo_reduces_path_to_nothing() {
        let r = path().gyo_reduce();
        assert!(r.residual.is_empty());
        assert_eq!(r.absorptions, [("e2".to_string(), "e1".to_string())]);
        assert_eq!(r.roots, ["e1"]);
    }

    #[test]
    fn gyo_leaves_triangle_untouched() {
        let r = triangle().gyo_reduce();
        assert_eq!(r.residual, ["e1", "e2", "e3"]);
        assert!(r.absorptions.is_empty());
        assert!(r.roots.is_empty());
    }

    #[test]
    fn gyo_single_unary_edge_is_isolated_root() {
        let h = Hypergraph::build([("e1", vec!["a"])]).unwrap();
        let r = h.gyo_reduce();
        assert!(r.residual.is_empty());
        assert!(r.absorptions.is_empty());
        assert_eq!(r.roots, ["e1"]);
    }

    #[test]
    fn acyclicity_basics() {
        assert!(path().is_alpha_acyclic());
        assert!(!triangle().is_alpha_acyclic());
        let empty = Hypergraph::build(Vec::<(String, Vec<String>)>::new()).unwrap();
        assert!(empty.is_alpha_acyclic());
    }

    #[test]
    fn remove_subsumed_keeps_maximal_edges() {
        let h = Hypergraph::build([
            ("big", vec!["a", "b", "c"]),
            ("sub", vec!["a", "b"]),
            ("dup1", vec!["c", "d"]),
            ("dup2", vec!["c", "d"]),
        ])
        .unwrap();
        let slim = h.remove_subsumed_edges();
        assert_eq!(slim.edge_names().collect::<Vec<_>>(), ["big", "dup1"]);
        assert_eq!(slim.vertex_names(), h.vertex_names());
    }
}
