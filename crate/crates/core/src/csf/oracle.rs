//! Exact chromatic symmetric function of any small graph via
//! `X_G = Σ_{S ⊆ E} (-1)^{|S|} p_{λ(S)}`, where `λ(S)` is the multiset of
//! component sizes of the spanning subgraph `(V, S)`.
//!
//! Subsets are walked depth-first with a union-find that is rolled back on
//! the way out; the component-size multiset is carried as an additive
//! mixed-radix key so a merge is three integer operations.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::partition::Partition;
use crate::symfunc::{p_to_e, EExpansion, PExpansion};

/// Compiled-in ceiling for forests.
pub const FOREST_HARD_CAP: usize = 28;
/// Compiled-in ceiling for graphs with cycles.
pub const GRAPH_HARD_CAP: usize = 22;

/// Vertex-count limits for the exponential oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub forest: usize,
    pub graph: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        Self { forest: 20, graph: 14 }
    }
}

impl OracleBounds {
    pub fn new(forest: usize, graph: usize) -> Result<Self> {
        if !(4..=FOREST_HARD_CAP).contains(&forest) {
            return Err(Error::Precondition(format!("forest bound must lie in 4..={FOREST_HARD_CAP}")));
        }
        if !(4..=GRAPH_HARD_CAP).contains(&graph) {
            return Err(Error::Precondition(format!("graph bound must lie in 4..={GRAPH_HARD_CAP}")));
        }
        Ok(Self { forest, graph })
    }

    fn check(&self, g: &SimpleGraph) -> Result<()> {
        let n = g.vertex_count();
        let (what, bound) = if g.is_forest() { ("forest", self.forest) } else { ("graph", self.graph) };
        if n > bound {
            return Err(Error::BoundExceeded { what, n, bound });
        }
        Ok(())
    }
}

/// `X_G` in the elementary basis, under the default bounds.
pub fn csf_oracle(g: &SimpleGraph) -> Result<EExpansion> {
    csf_oracle_with(g, OracleBounds::default())
}

pub fn csf_oracle_with(g: &SimpleGraph, bounds: OracleBounds) -> Result<EExpansion> {
    Ok(p_to_e(&power_sum_expansion(g, bounds)?))
}

/// `X_G` in the power-sum basis.
pub fn power_sum_expansion(g: &SimpleGraph, bounds: OracleBounds) -> Result<PExpansion> {
    bounds.check(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(PExpansion::one());
    }
    let codec = SizeCodec::new(n);
    let edges = g.edges();
    // fan the first few edge decisions out over worker threads
    let split = if edges.len() >= 16 { 6.min(edges.len()) } else { 0 };
    let counts: HashMap<u128, i64> = (0u32..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut walk = Walk::new(n, edges, &codec);
            let mut key = n as u128 * codec.weights[1];
            let mut negative = false;
            for (e, &(u, v)) in edges.iter().enumerate().take(split) {
                if prefix >> e & 1 == 1 {
                    negative = !negative;
                    if let Some((k, _)) = walk.union(u, v, key) {
                        key = k;
                    }
                }
            }
            walk.descend(split, key, negative);
            walk.counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
            a
        });
    let terms = counts.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (codec.decode(k), BigInt::from(c)));
    PExpansion::from_terms(terms)
}

struct SizeCodec {
    n: usize,
    weights: Vec<u128>,
}

impl SizeCodec {
    fn new(n: usize) -> Self {
        // weights[k] = Π_{j<k} (⌊n/j⌋ + 1); multiplicity of size k is at most ⌊n/k⌋
        let mut weights = vec![0u128; n + 1];
        let mut w = 1u128;
        for (k, slot) in weights.iter_mut().enumerate().skip(1) {
            *slot = w;
            w = w.checked_mul((n / k) as u128 + 1).expect("size key fits in 128 bits");
        }
        Self { n, weights }
    }

    fn decode(&self, mut key: u128) -> Partition {
        let mut counts = vec![0usize; self.n + 1];
        for k in (1..=self.n).rev() {
            counts[k] = (key / self.weights[k]) as usize;
            key %= self.weights[k];
        }
        let parts: Vec<u64> = (1..=self.n).rev().flat_map(|k| std::iter::repeat_n(k as u64, counts[k])).collect();
        Partition::from_parts_lossy(parts)
    }
}

struct Walk<'a> {
    edges: &'a [(usize, usize)],
    codec: &'a SizeCodec,
    parent: Vec<usize>,
    size: Vec<usize>,
    counts: HashMap<u128, i64>,
}

impl<'a> Walk<'a> {
    fn new(n: usize, edges: &'a [(usize, usize)], codec: &'a SizeCodec) -> Self {
        Self { edges, codec, parent: (0..n).collect(), size: vec![1; n], counts: HashMap::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the components of `u` and `v`; returns the new key and the
    /// absorbed root for rollback, or `None` if already joined.
    fn union(&mut self, u: usize, v: usize, key: u128) -> Option<(u128, usize)> {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            return None;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let w = &self.codec.weights;
        let (sa, sb) = (self.size[a], self.size[b]);
        let key = key - w[sa] - w[sb] + w[sa + sb];
        self.parent[b] = a;
        self.size[a] += sb;
        Some((key, b))
    }

    fn undo(&mut self, absorbed: usize) {
        let root = self.parent[absorbed];
        self.size[root] -= self.size[absorbed];
        self.parent[absorbed] = absorbed;
    }

    fn descend(&mut self, e: usize, key: u128, negative: bool) {
        if e == self.edges.len() {
            *self.counts.entry(key).or_default() += if negative { -1 } else { 1 };
            return;
        }
        self.descend(e + 1, key, negative);
        let (u, v) = self.edges[e];
        match self.union(u, v, key) {
            None => self.descend(e + 1, key, !negative),
            Some((merged, absorbed)) => {
                self.descend(e + 1, merged, !negative);
                self.undo(absorbed);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Spider, Tree};

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn tiny_graphs() {
        let k1 = SimpleGraph::new(1, []).unwrap();
        assert_eq!(csf_oracle(&k1).unwrap(), EExpansion::monomial(p(&[1]), 1.into()));
        let k2 = SimpleGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(csf_oracle(&k2).unwrap(), EExpansion::monomial(p(&[2]), 2.into()));
    }

    #[test]
    fn claw() {
        let claw = Spider::from_legs(&[1, 1, 1]).unwrap().to_tree();
        let x = csf_oracle(claw.as_graph()).unwrap();
        let expected = EExpansion::from_terms([
            (p(&[2, 1, 1]), 1.into()),
            (p(&[2, 2]), (-2).into()),
            (p(&[3, 1]), 5.into()),
            (p(&[4]), 4.into()),
        ])
        .unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn triangle_is_six_e3() {
        let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(csf_oracle(&k3).unwrap(), EExpansion::monomial(p(&[3]), 6.into()));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            csf_oracle(Tree::path(21).as_graph()),
            Err(Error::BoundExceeded { what: "forest", n: 21, bound: 20 })
        ));
        let cycle = SimpleGraph::new(15, (0..15).map(|i| (i, (i + 1) % 15))).unwrap();
        assert!(matches!(csf_oracle(&cycle), Err(Error::BoundExceeded { what: "graph", .. })));
        assert!(OracleBounds::new(3, 10).is_err());
        assert!(OracleBounds::new(FOREST_HARD_CAP + 1, 10).is_err());
    }

    #[test]
    fn split_and_serial_walks_agree() {
        // 17 edges triggers the parallel prefix split
        let t = Tree::path(18);
        let big = power_sum_expansion(t.as_graph(), OracleBounds::default()).unwrap();
        assert_eq!(big.coefficient(&p(&[18])), BigInt::from(-1i64.pow(17)));
        assert_eq!(big.coefficient(&Partition::repeated(1, 18)), BigInt::from(1));
        // Σ_S (-1)^{|S|} over all subsets vanishes, and p_λ ↦ 1 under x_1 = 1
        assert_eq!(big.evaluate_at_ones(1), BigInt::from(0));
    }
}
