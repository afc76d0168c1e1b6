//! Exact generalized hypertree width on small instances.
//!
//! The oracle sweeps every elimination ordering, bucket-eliminates on
//! bitmask adjacency, and takes the minimum over orderings of the maximum
//! bag edge-cover number. This attains the true minimum because every
//! decomposition's bags form a tree decomposition of the primal graph, every
//! tree decomposition is refined by some elimination ordering whose bags are
//! each contained in a bag of the original, and the edge-cover number is
//! monotone under taking subsets. Deliberately desk-scale: factorial in the
//! vertex count.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::cover::exact_cover;
use crate::decomposition::Decomposition;
use crate::heuristics::decompose_ordering;
use crate::hypergraph::Hypergraph;

/// Default cap on the vertex count for the factorial sweep.
pub const DEFAULT_VERTEX_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("hypergraph has {vertices} vertices, above the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Result of [`ghw_exact`]: the width, a decomposition achieving it, and the
/// number of orderings examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub ghw: usize,
    pub witness: Decomposition,
    pub orderings_searched: u64,
}

struct Sweep<'a> {
    h: &'a Hypergraph,
    adjacency: Vec<u64>,
    // edge-cover number per bag bitmask; dense for small vertex counts
    dense: Option<Vec<u16>>,
    sparse: HashMap<u64, usize>,
}

const UNKNOWN: u16 = u16::MAX;

impl<'a> Sweep<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let pg = h.primal_graph();
        let adjacency = pg
            .adjacency()
            .iter()
            .map(|set| set.iter().fold(0u64, |mask, &u| mask | 1 << u))
            .collect();
        let n = h.vertex_count();
        let dense = (n <= 20).then(|| vec![UNKNOWN; 1 << n]);
        Sweep {
            h,
            adjacency,
            dense,
            sparse: HashMap::new(),
        }
    }

    fn cover_number(&mut self, bag: u64) -> usize {
        if let Some(dense) = &self.dense {
            let hit = dense[bag as usize];
            if hit != UNKNOWN {
                return hit as usize;
            }
        } else if let Some(&hit) = self.sparse.get(&bag) {
            return hit;
        }
        let names: BTreeSet<String> = (0..self.h.vertex_count())
            .filter(|&v| bag & (1 << v) != 0)
            .map(|v| self.h.vertex_name(v).to_string())
            .collect();
        let size = exact_cover(self.h, &names, None)
            .expect("bags are subsets of the vertex set")
            .size();
        if let Some(dense) = &mut self.dense {
            dense[bag as usize] = size as u16;
        } else {
            self.sparse.insert(bag, size);
        }
        size
    }

    /// Max bag cover number along `perm`, giving up early once it reaches
    /// `cutoff` (the returned value is then only a lower bound, which is all
    /// the sweep needs).
    fn ordering_width(&mut self, perm: &[usize], cutoff: usize) -> usize {
        let mut adj = self.adjacency.clone();
        let mut alive: u64 = perm.iter().fold(0, |mask, &v| mask | 1 << v);
        let mut widest = 0;
        for &v in perm {
            alive &= !(1 << v);
            let neighbors = adj[v] & alive;
            let bag = neighbors | 1 << v;
            widest = widest.max(self.cover_number(bag));
            if widest >= cutoff {
                return widest;
            }
            let mut rest = neighbors;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                adj[u] |= neighbors & !(1 << u);
            }
        }
        widest
    }
}

fn guard(h: &Hypergraph, limit: usize) -> Result<(), ExactError> {
    let vertices = h.vertex_count();
    if vertices > limit || vertices > 64 {
        return Err(ExactError::TooLarge {
            vertices,
            limit: limit.min(64),
        });
    }
    Ok(())
}

fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

fn witness_from(h: &Hypergraph, perm: &[usize]) -> Decomposition {
    let order: Vec<String> = perm.iter().map(|&v| h.vertex_name(v).to_string()).collect();
    decompose_ordering(h, &order)
}

/// Exact generalized hypertree width by the full ordering sweep.
///
/// Among orderings achieving the width, the lexicographically smallest one
/// provides the witness, built through the same bucket-elimination and
/// pruning pipeline the heuristics use.
pub fn ghw_exact(h: &Hypergraph, limit: usize) -> Result<ExactResult, ExactError> {
    guard(h, limit)?;
    if h.is_empty() {
        return Ok(ExactResult {
            ghw: 0,
            witness: Decomposition::empty(),
            orderings_searched: 1,
        });
    }
    let mut sweep = Sweep::new(h);
    let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut searched = 0u64;
    loop {
        searched += 1;
        let cutoff = best.as_ref().map_or(usize::MAX, |(w, _)| *w);
        let width = sweep.ordering_width(&perm, cutoff);
        if width < cutoff {
            best = Some((width, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (ghw, ordering) = best.expect("non-empty hypergraph has an ordering");
    Ok(ExactResult {
        ghw,
        witness: witness_from(h, &ordering),
        orderings_searched: searched,
    })
}

/// Early-exit variant: returns a witness for the first ordering (in
/// lexicographic order) whose maximum bag cover number is at most `k`, or
/// `None` when no ordering qualifies.
pub fn decide_ghw_le_k(
    h: &Hypergraph,
    k: usize,
    limit: usize,
) -> Result<Option<Decomposition>, ExactError> {
    guard(h, limit)?;
    if h.is_empty() {
        return Ok(Some(Decomposition::empty()));
    }
    let mut sweep = Sweep::new(h);
    let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
    loop {
        if sweep.ordering_width(&perm, k + 1) <= k {
            return Ok(Some(witness_from(h, &perm)));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}
