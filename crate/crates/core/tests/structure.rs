//! Exhaustive structural invariants at small sizes, against naive searches.

use std::collections::BTreeSet;

use csf_core::connected::{graph_has_connected_partition, has_all_connected_partitions, has_connected_partition};
use csf_core::enumerate::enumerate_trees;
use csf_core::graph::{enumerate_spiders, line_graph, reduce_to_spider};
use csf_core::partition::{multinomial, partitions_of, Partition};
use csf_core::Tree;
use num_bigint::BigInt;
use rayon::prelude::*;

/// p(0..=n) by Euler's pentagonal recurrence.
fn pentagonal_counts(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p
}

#[test]
fn partition_counts_follow_pentagonal_recurrence() {
    let expected = pentagonal_counts(30);
    for (n, &count) in expected.iter().enumerate() {
        assert_eq!(partitions_of(n as u64).count() as i64, count, "p({n})");
    }
}

#[test]
fn partitions_stream_in_reverse_lexicographic_order() {
    for n in 1..=12 {
        let all: Vec<Partition> = partitions_of(n).collect();
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()), "n={n}");
    }
}

#[test]
fn multinomial_times_factorials_is_factorial() {
    fn fact(k: u64) -> BigInt {
        (1..=k).map(BigInt::from).product()
    }
    fn go(prefix: &mut Vec<u64>, left: u64) {
        let lhs = multinomial(prefix) * prefix.iter().map(|&a| fact(a)).product::<BigInt>();
        assert_eq!(lhs, fact(prefix.iter().sum()), "{prefix:?}");
        if prefix.len() < 4 {
            for a in 0..=left {
                prefix.push(a);
                go(prefix, left - a);
                prefix.pop();
            }
        }
    }
    go(&mut Vec::new(), 20);
}

/// Every type reached by deleting a subset of edges.
fn types_by_edge_deletion(t: &Tree) -> BTreeSet<Partition> {
    let n = t.vertex_count();
    let edges = t.edges();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << edges.len() {
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                v = parent[v];
            }
            v
        }
        for (k, &(u, v)) in edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                parent[a] = b;
            }
        }
        let mut sizes = vec![0u64; n];
        for v in 0..n {
            sizes[root(&mut parent, v)] += 1;
        }
        out.insert(Partition::new(sizes.into_iter().filter(|&s| s > 0).collect()).unwrap());
    }
    out
}

#[test]
fn connected_partitions_match_edge_deletion() {
    for n in 1..=12 {
        let trees: Vec<Tree> = enumerate_trees(n).unwrap().collect();
        trees.par_iter().for_each(|t| {
            let reachable = types_by_edge_deletion(t);
            for ty in partitions_of(n as u64) {
                assert_eq!(has_connected_partition(t, &ty).unwrap(), reachable.contains(&ty), "{} {ty}", t.label());
            }
        });
    }
}

#[test]
fn types_of_a_tree_survive_reduction_to_a_spider() {
    for n in 4..=10 {
        for t in enumerate_trees(n).unwrap() {
            let degrees = t.degrees();
            let types = types_by_edge_deletion(&t);
            for v in (0..n).filter(|&v| degrees[v] >= 3) {
                let s = reduce_to_spider(&t, v).unwrap().to_tree();
                for ty in &types {
                    assert!(has_connected_partition(&s, ty).unwrap(), "{} at {v}: {ty}", t.label());
                }
            }
        }
    }
}

#[test]
fn types_survive_combining_legs() {
    for n in 3..=12 {
        for s in enumerate_spiders(n).filter(|s| s.leg_count() >= 2) {
            let types = types_by_edge_deletion(&s.to_tree());
            let d = s.leg_count();
            for i in 0..d {
                for j in i + 1..d {
                    let merged = s.combine_legs(i, j).unwrap().to_tree();
                    for ty in &types {
                        assert!(has_connected_partition(&merged, ty).unwrap(), "{s} ({i},{j}) {ty}");
                    }
                }
            }
        }
    }
}

#[test]
fn complete_spiders_have_complete_line_graphs() {
    let mut complete = 0;
    for n in 3..=10 {
        for s in enumerate_spiders(n) {
            if !has_all_connected_partitions(&s.to_tree()).is_complete() {
                continue;
            }
            complete += 1;
            let lg = line_graph(s.to_tree().as_graph());
            for ty in partitions_of(lg.vertex_count() as u64) {
                assert!(graph_has_connected_partition(&lg, &ty).unwrap(), "L({s}) misses {ty}");
            }
        }
    }
    assert!(complete > 0);
}
