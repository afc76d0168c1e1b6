//! Edge covers of vertex sets: a greedy approximation for the construction
//! pipeline and an exact branch-and-bound for the oracle and for tight
//! cover labels on small bags.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    /// No edge can cover this vertex; impossible when the target is a subset
    /// of the vertex set, reported defensively.
    #[error("vertex {0:?} cannot be covered by any edge")]
    Uncoverable(String),
    /// No cover of the requested cardinality exists.
    #[error("no cover of size <= {bound} exists")]
    BoundExceeded { bound: usize },
}

/// An edge cover of a target vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    /// Chosen edge names, in pick order.
    pub chosen: Vec<String>,
    /// Target vertices covered by the chosen edges (the whole target on
    /// success).
    pub covered: BTreeSet<String>,
    /// True when produced by the exact search.
    pub exact: bool,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

fn target_ids(h: &Hypergraph, target: &BTreeSet<String>) -> Result<BTreeSet<usize>, CoverError> {
    target
        .iter()
        .map(|v| {
            h.vertex_index(v)
                .ok_or_else(|| CoverError::Uncoverable(v.clone()))
        })
        .collect()
}

/// Greedy set cover: repeatedly picks the edge covering the most uncovered
/// target vertices, ties broken by the lexicographically smallest edge name.
pub fn greedy_cover(h: &Hypergraph, target: &BTreeSet<String>) -> Result<CoverResult, CoverError> {
    let mut uncovered = target_ids(h, target)?;
    let mut chosen = Vec::new();
    let mut covered = BTreeSet::new();
    while !uncovered.is_empty() {
        // edges are stored in name order, so min_by_key lands on the
        // smallest-named edge among ties
        let best = (0..h.edge_count())
            .map(|e| (e, h.edge_members(e).intersection(&uncovered).count()))
            .min_by_key(|&(e, gain)| (std::cmp::Reverse(gain), e))
            .expect("edge set is non-empty when vertices exist");
        let (edge, gain) = best;
        if gain == 0 {
            let v = *uncovered.iter().next().expect("non-empty");
            return Err(CoverError::Uncoverable(h.vertex_name(v).to_string()));
        }
        for &v in h.edge_members(edge) {
            if uncovered.remove(&v) {
                covered.insert(h.vertex_name(v).to_string());
            }
        }
        chosen.push(h.edge_name(edge).to_string());
    }
    Ok(CoverResult {
        chosen,
        covered,
        exact: false,
    })
}

/// Minimum-cardinality edge cover of `target` by depth-first branch and
/// bound: branch on the smallest uncovered vertex, try its incident edges in
/// name order, prune any branch that cannot strictly beat the incumbent.
///
/// The greedy cover runs first as the initial incumbent; when `upper_bound`
/// is `None` the greedy size is the bound, so the search always succeeds.
pub fn exact_cover(
    h: &Hypergraph,
    target: &BTreeSet<String>,
    upper_bound: Option<usize>,
) -> Result<CoverResult, CoverError> {
    let ids = target_ids(h, target)?;
    let greedy = greedy_cover(h, target)?;
    let bound = upper_bound.unwrap_or(greedy.size());

    let mut best: Option<Vec<usize>> = if greedy.size() <= bound {
        Some(
            greedy
                .chosen
                .iter()
                .map(|name| h.edge_index(name).expect("greedy picks real edges"))
                .collect(),
        )
    } else {
        None
    };
    let mut best_size = best.as_ref().map_or(bound + 1, Vec::len);

    let mut chosen: Vec<usize> = Vec::new();
    search(h, &ids, &mut chosen, &mut best, &mut best_size);

    match best {
        Some(edges) => {
            let chosen: Vec<String> = edges.iter().map(|&e| h.edge_name(e).to_string()).collect();
            let covered = target
                .iter()
                .filter(|v| {
                    let id = h.vertex_index(v).expect("checked above");
                    edges.iter().any(|&e| h.edge_members(e).contains(&id))
                })
                .cloned()
                .collect();
            Ok(CoverResult {
                chosen,
                covered,
                exact: true,
            })
        }
        None => Err(CoverError::BoundExceeded { bound }),
    }
}

fn search(
    h: &Hypergraph,
    uncovered: &BTreeSet<usize>,
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
    best_size: &mut usize,
) {
    if uncovered.is_empty() {
        if chosen.len() < *best_size {
            *best_size = chosen.len();
            *best = Some(chosen.clone());
        }
        return;
    }
    if chosen.len() + 1 >= *best_size {
        return;
    }
    let v = *uncovered.iter().next().expect("non-empty");
    for e in 0..h.edge_count() {
        if !h.edge_members(e).contains(&v) {
            continue;
        }
        let remaining: BTreeSet<usize> = uncovered.difference(h.edge_members(e)).copied().collect();
        chosen.push(e);
        search(h, &remaining, chosen, best, best_size);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn sample() -> Hypergraph {
        Hypergraph::build([
            ("e1", vec!["a", "b"]),
            ("e2", vec!["c", "d"]),
            ("e3", vec!["a", "b", "c"]),
        ])
        .unwrap()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::build([
            ("e1", vec!["a", "b"]),
            ("e2", vec!["b", "c"]),
            ("e3", vec!["a", "c"]),
        ])
        .unwrap()
    }

    // test-side oracle: smallest cover by enumerating edge subsets in
    // ascending cardinality
    fn brute_force_size(h: &Hypergraph, target: &BTreeSet<String>) -> Option<usize> {
        let ids: Vec<usize> = target.iter().filter_map(|v| h.vertex_index(v)).collect();
        if ids.len() != target.len() {
            return None;
        }
        let m = h.edge_count();
        for size in 0..=m {
            for mask in 0u32..(1 << m) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let ok = ids
                    .iter()
                    .all(|v| (0..m).any(|e| mask & (1 << e) != 0 && h.edge_members(e).contains(v)));
                if ok {
                    return Some(size);
                }
            }
        }
        None
    }

    #[test]
    fn greedy_prefers_largest_gain() {
        let r = greedy_cover(&sample(), &names(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(r.chosen, ["e3", "e2"]);
        assert_eq!(r.covered, names(&["a", "b", "c", "d"]));
        assert!(!r.exact);
    }

    #[test]
    fn greedy_empty_target() {
        let r = greedy_cover(&sample(), &BTreeSet::new()).unwrap();
        assert!(r.chosen.is_empty());
    }

    #[test]
    fn greedy_single_vertex_picks_smallest_name() {
        let r = greedy_cover(&sample(), &names(&["a"])).unwrap();
        assert_eq!(r.chosen, ["e1"]);
    }

    #[test]
    fn exact_matches_brute_force_on_fixtures() {
        let h = sample();
        let t = names(&["a", "b", "c", "d"]);
        let r = exact_cover(&h, &t, None).unwrap();
        assert_eq!(r.size(), brute_force_size(&h, &t).unwrap());
        assert_eq!(r.size(), 2);
        assert!(r.exact);
    }

    #[test]
    fn exact_on_triangle_needs_two_edges() {
        let h = triangle();
        let t = names(&["a", "b", "c"]);
        let r = exact_cover(&h, &t, None).unwrap();
        assert_eq!(r.size(), 2);
        assert_eq!(brute_force_size(&h, &t), Some(2));
    }

    #[test]
    fn exact_empty_target_is_empty_cover() {
        let r = exact_cover(&triangle(), &BTreeSet::new(), None).unwrap();
        assert_eq!(r.size(), 0);
    }

    #[test]
    fn exact_reports_bound_exceeded() {
        let err = exact_cover(&triangle(), &names(&["a", "b", "c"]), Some(1)).unwrap_err();
        assert_eq!(err, CoverError::BoundExceeded { bound: 1 });
    }

    #[test]
    fn unknown_target_vertex_is_uncoverable() {
        let err = greedy_cover(&triangle(), &names(&["z"])).unwrap_err();
        assert_eq!(err, CoverError::Uncoverable("z".into()));
    }

    #[test]
    fn greedy_never_beats_exact() {
        let h = sample();
        for t in [
            names(&["a"]),
            names(&["a", "c"]),
            names(&["a", "b", "c", "d"]),
        ] {
            let g = greedy_cover(&h, &t).unwrap();
            let e = exact_cover(&h, &t, None).unwrap();
            assert!(g.size() >= e.size());
            assert_eq!(e.covered, t);
        }
    }

    #[test]
    fn exact_size_is_invariant_under_vertex_renaming() {
        let h = Hypergraph::build([
            ("e1", vec!["a", "b"]),
            ("e2", vec!["b", "c"]),
            ("e3", vec!["c", "d"]),
        ])
        .unwrap();
        // reverse the alphabet: a<->z, b<->y, ...
        fn flip(v: &str) -> &str {
            match v {
                "a" => "z",
                "b" => "y",
                "c" => "x",
                "d" => "w",
                other => other,
            }
        }
        let renamed = Hypergraph::build([
            ("e1", vec![flip("a"), flip("b")]),
            ("e2", vec![flip("b"), flip("c")]),
            ("e3", vec![flip("c"), flip("d")]),
        ])
        .unwrap();
        let t1 = names(&["a", "b", "c", "d"]);
        let t2: BTreeSet<String> = t1.iter().map(|v| flip(v).to_string()).collect();
        assert_eq!(
            exact_cover(&h, &t1, None).unwrap().size(),
            exact_cover(&renamed, &t2, None).unwrap().size()
        );
    }
}
