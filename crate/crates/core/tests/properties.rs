//! Randomised algebraic and structural properties.

use csf_core::csf::{csf_oracle, tree_csf, CsfCache, OracleBounds};
use csf_core::enumerate::canonical_form;
use csf_core::partition::{partitions_of, Partition};
use csf_core::symfunc::{p_to_e, power_sum_in_e};
use csf_core::{EExpansion, PExpansion, Tree};
use num_bigint::BigInt;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..=7, 0..8).prop_map(|v| Partition::new(v).unwrap())
}

/// A random expansion of degree at most 8, by indices into `partitions_of(d)`.
fn expansion() -> impl Strategy<Value = EExpansion> {
    (0u64..=8, prop::collection::vec((any::<prop::sample::Index>(), -6i64..=6), 0..6)).prop_map(|(d, picks)| {
        let keys: Vec<Partition> = partitions_of(d).collect();
        let terms = picks.into_iter().map(|(i, c)| (i.get(&keys).clone(), BigInt::from(c)));
        EExpansion::from_terms(terms).unwrap()
    })
}

fn tree_from_pruefer(n: usize, seq: &[usize]) -> Tree {
    if n == 1 {
        return Tree::path(1);
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::new();
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, edges).unwrap()
}

fn tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n - 2).prop_map(move |seq| tree_from_pruefer(n, &seq)))
}

fn relabel(t: &Tree, perm: &[usize]) -> Tree {
    Tree::new(t.vertex_count(), t.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #[test]
    fn exponential_form_round_trips(p in partition()) {
        prop_assert_eq!(Partition::from_exponential_form(&p.exponential_form()).unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn combining_parts_keeps_weight(p in partition(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        prop_assume!(p.len() >= 2);
        let (i, j) = (i.index(p.len()), j.index(p.len()));
        prop_assume!(i != j);
        let q = p.combine_parts(i, j).unwrap();
        prop_assert_eq!(q.weight(), p.weight());
        prop_assert_eq!(q.len(), p.len() - 1);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in expansion(), b in expansion(), c in expansion()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn keys_partition_the_degree(a in expansion(), b in expansion()) {
        let x = a.multiply(&b);
        prop_assert!(x.iter().all(|(k, _)| k.weight() == x.degree()));
        if a.degree() == b.degree() {
            let y = a.add(&b).unwrap();
            prop_assert!(y.iter().all(|(k, _)| k.weight() == y.degree()));
        }
    }

    #[test]
    fn canonical_text_round_trips(a in expansion()) {
        prop_assert_eq!(EExpansion::parse_canonical_text(&a.to_canonical_text()).unwrap(), a);
    }

    #[test]
    fn power_sums_convert_multiplicatively(p in partition()) {
        prop_assume!(p.weight() <= 10);
        let whole = p_to_e(&PExpansion::monomial(p.clone(), BigInt::from(1)));
        let product = p.parts().iter().fold(EExpansion::one(), |acc, &k| acc.multiply(&power_sum_in_e(k)));
        prop_assert_eq!(&whole, &product);
        // p_λ(1^m) = m^ℓ(λ)
        for m in 1..=6u64 {
            prop_assert_eq!(whole.evaluate_at_ones(m), BigInt::from(m).pow(p.len() as u32));
        }
    }

    #[test]
    fn expansion_is_label_invariant(t in tree(11), perm in Just((0..11).collect::<Vec<usize>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < t.vertex_count()).collect();
        let u = relabel(&t, &perm);
        prop_assert_eq!(canonical_form(&t), canonical_form(&u));
        prop_assert_eq!(csf_oracle(t.as_graph()).unwrap(), csf_oracle(u.as_graph()).unwrap());
    }

    #[test]
    fn trees_count_colourings(t in tree(9)) {
        let x = tree_csf(&t, &CsfCache::new(), OracleBounds::default()).unwrap();
        let n = t.vertex_count() as u32;
        for k in 1..=5u64 {
            prop_assert_eq!(x.evaluate_chromatic(k), BigInt::from(k) * BigInt::from(k - 1).pow(n - 1));
        }
    }
}

#[test]
fn power_sums_at_ones() {
    for k in 1..=10 {
        for m in 1..=6u64 {
            assert_eq!(power_sum_in_e(k).evaluate_at_ones(m), BigInt::from(m), "p_{k} at 1^{m}");
        }
    }
}
