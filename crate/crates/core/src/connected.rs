//! Connected partitions.
//!
//! For a tree, a connected partition of type λ is the same thing as an edge
//! subset whose deletion leaves components with sizes λ. The tree search
//! roots the tree and, per vertex, keeps the set of achievable multisets of
//! *closed* component sizes inside its subtree (each a sub-multiset of λ);
//! the size of the open component through the vertex is then determined.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Tree};
use crate::partition::{partitions_of, Partition};

/// Largest graph accepted by [`graph_has_connected_partition`].
pub const GENERAL_GRAPH_CAP: usize = 12;

/// Mixed-radix encoding of sub-multisets of a fixed partition.
struct MultisetCodec {
    values: Vec<u64>,
    mults: Vec<u32>,
    digits: Vec<Vec<u32>>,
    weights: Vec<u64>,
    strides: Vec<u32>,
    full: u32,
}

impl MultisetCodec {
    fn new(target: &Partition) -> Self {
        let form = target.exponential_form();
        let values: Vec<u64> = form.iter().map(|&(v, _)| v).collect();
        let mults: Vec<u32> = form.iter().map(|&(_, m)| m as u32).collect();
        let mut strides = Vec::with_capacity(mults.len());
        let mut size = 1u32;
        for &m in &mults {
            strides.push(size);
            size *= m + 1;
        }
        let mut digits = Vec::with_capacity(size as usize);
        let mut weights = Vec::with_capacity(size as usize);
        for code in 0..size {
            let d: Vec<u32> = mults.iter().zip(&strides).map(|(&m, &s)| (code / s) % (m + 1)).collect();
            weights.push(d.iter().zip(&values).map(|(&k, &v)| k as u64 * v).sum());
            digits.push(d);
        }
        let full = mults.iter().zip(&strides).map(|(&m, &s)| m * s).sum();
        Self { values, mults, digits, weights, strides, full }
    }

    fn size(&self) -> usize {
        self.digits.len()
    }

    fn add(&self, a: u32, b: u32) -> Option<u32> {
        let (da, db) = (&self.digits[a as usize], &self.digits[b as usize]);
        for k in 0..self.mults.len() {
            if da[k] + db[k] > self.mults[k] {
                return None;
            }
        }
        Some(a + b)
    }

    /// `code + {value}` if `value` is a part with spare multiplicity.
    fn add_part(&self, code: u32, value: u64) -> Option<u32> {
        let k = self.values.iter().position(|&v| v == value)?;
        if self.digits[code as usize][k] >= self.mults[k] {
            return None;
        }
        Some(code + self.strides[k])
    }
}

/// Whether deleting some edge subset of `t` leaves components of sizes `ty`.
pub fn has_connected_partition(t: &Tree, ty: &Partition) -> Result<bool> {
    let n = t.vertex_count();
    if ty.weight() != n as u64 {
        return Err(Error::WeightMismatch { partition: ty.to_string(), weight: ty.weight(), expected: n as u64 });
    }
    if n == 0 {
        return Ok(true);
    }
    let codec = MultisetCodec::new(ty);
    let max_part = ty.largest().unwrap_or(0);
    let adj = t.adjacency();

    // iterative post-order from vertex 0
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in &adj[v] {
            if parent[u] == usize::MAX {
                parent[u] = v;
                stack.push(u);
            }
        }
    }

    let mut states: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sizes = vec![1u64; n];
    let mut seen = vec![u32::MAX; codec.size()];
    let mut stamp = 0u32;
    for &v in order.iter().rev() {
        let mut cur: Vec<u32> = vec![0];
        let mut cur_size = 1u64;
        for &c in &adj[v] {
            // vertex 0 is the root and never a child
            if c == 0 || parent[c] != v {
                continue;
            }
            let child = std::mem::take(&mut states[c]);
            let child_size = sizes[c];
            stamp += 1;
            let mut next = Vec::new();
            for &a in &cur {
                let open_v = cur_size - codec.weights[a as usize];
                for &b in &child {
                    let open_c = child_size - codec.weights[b as usize];
                    let Some(ab) = codec.add(a, b) else { continue };
                    if open_v + open_c <= max_part && seen[ab as usize] != stamp {
                        seen[ab as usize] = stamp;
                        next.push(ab);
                    }
                    if let Some(cut) = codec.add_part(ab, open_c) {
                        if seen[cut as usize] != stamp {
                            seen[cut as usize] = stamp;
                            next.push(cut);
                        }
                    }
                }
            }
            cur = next;
            cur_size += child_size;
            if cur.is_empty() {
                return Ok(false);
            }
        }
        states[v] = cur;
        sizes[v] = cur_size;
    }
    let root = &states[0];
    Ok(root.iter().any(|&code| {
        let open = n as u64 - codec.weights[code as usize];
        codec.add_part(code, open) == Some(codec.full)
    }))
}

/// Result of sweeping every type `λ ⊢ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// The reverse-lexicographically first missing type.
    Missing(Partition),
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete)
    }
}

/// Checks every partition of `n`; reports the first missing type.
pub fn has_all_connected_partitions(t: &Tree) -> Completeness {
    let types: Vec<Partition> = partitions_of(t.vertex_count() as u64).collect();
    let missing =
        types.par_iter().find_first(|ty| !has_connected_partition(t, ty).expect("weight matches by construction"));
    match missing {
        None => Completeness::Complete,
        Some(ty) => Completeness::Missing(ty.clone()),
    }
}

/// Connected partition of type `ty` in a general graph (backtracking over
/// vertex blocks; `n ≤ GENERAL_GRAPH_CAP`).
pub fn graph_has_connected_partition(g: &SimpleGraph, ty: &Partition) -> Result<bool> {
    let n = g.vertex_count();
    if n > GENERAL_GRAPH_CAP {
        return Err(Error::BoundExceeded { what: "general connected-partition search", n, bound: GENERAL_GRAPH_CAP });
    }
    if ty.weight() != n as u64 {
        return Err(Error::WeightMismatch { partition: ty.to_string(), weight: ty.weight(), expected: n as u64 });
    }
    let mut nbr = vec![0u32; n];
    for &(u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let form = ty.exponential_form();
    let values: Vec<u64> = form.iter().map(|&(v, _)| v).collect();
    let mut counts: Vec<usize> = form.iter().map(|&(_, m)| m).collect();
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut failed = HashSet::new();
    Ok(search_blocks(&nbr, all, &values, &mut counts, &mut failed))
}

fn is_connected(nbr: &[u32], set: u32) -> bool {
    if set == 0 {
        return true;
    }
    let start = set & set.wrapping_neg();
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nbr[v] & set & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == set
}

fn search_blocks(
    nbr: &[u32],
    remaining: u32,
    values: &[u64],
    counts: &mut Vec<usize>,
    failed: &mut HashSet<(u32, Vec<usize>)>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    if failed.contains(&(remaining, counts.clone())) {
        return false;
    }
    let v = remaining.trailing_zeros();
    let others = remaining & !(1 << v);
    for k in 0..values.len() {
        if counts[k] == 0 {
            continue;
        }
        let need = values[k] as u32 - 1;
        // every subset of `others` with `need` elements, joined with v
        let mut sub = others;
        loop {
            if sub.count_ones() == need {
                let block = sub | (1 << v);
                if is_connected(nbr, block) {
                    counts[k] -= 1;
                    let ok = search_blocks(nbr, remaining & !block, values, counts, failed);
                    counts[k] += 1;
                    if ok {
                        return true;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    failed.insert((remaining, counts.clone()));
    false
}

/// [`has_all_connected_partitions`] for a small general graph.
pub fn graph_has_all_connected_partitions(g: &SimpleGraph) -> Result<Completeness> {
    for ty in partitions_of(g.vertex_count() as u64) {
        if !graph_has_connected_partition(g, &ty)? {
            return Ok(Completeness::Missing(ty));
        }
    }
    Ok(Completeness::Complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Spider;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn spider_tree(legs: &[u64]) -> Tree {
        Spider::from_legs(legs).unwrap().to_tree()
    }

    #[test]
    fn trivial_types_always_exist() {
        let t = spider_tree(&[3, 2, 2, 1]);
        assert!(has_connected_partition(&t, &p(&[9])).unwrap());
        assert!(has_connected_partition(&t, &Partition::repeated(1, 9)).unwrap());
    }

    #[test]
    fn claw_misses_two_two() {
        let claw = spider_tree(&[1, 1, 1]);
        assert!(!has_connected_partition(&claw, &p(&[2, 2])).unwrap());
        assert_eq!(has_all_connected_partitions(&claw), Completeness::Missing(p(&[2, 2])));
    }

    #[test]
    fn two_two_two_spider() {
        assert!(has_connected_partition(&spider_tree(&[2, 2, 2]), &p(&[2, 2, 2, 1])).unwrap());
    }

    #[test]
    fn weight_mismatch_is_rejected() {
        assert!(has_connected_partition(&spider_tree(&[1, 1]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn known_complete_spider() {
        assert!(has_all_connected_partitions(&spider_tree(&[6, 4, 1, 1])).is_complete());
    }

    #[test]
    fn general_graph_search() {
        let claw = spider_tree(&[1, 1, 1]);
        assert!(!graph_has_connected_partition(claw.as_graph(), &p(&[2, 2])).unwrap());
        let c4 = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(graph_has_connected_partition(&c4, &p(&[2, 2])).unwrap());
        assert!(graph_has_all_connected_partitions(&c4).unwrap().is_complete());
        let big = Tree::path(13);
        assert!(graph_has_connected_partition(big.as_graph(), &p(&[13])).is_err());
    }
}
