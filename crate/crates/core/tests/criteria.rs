//! Soundness of the tests against exact expansions and brute-force search.

use csf_core::connected::{has_connected_partition, Completeness};
use csf_core::criteria::{
    mod_test, qm_test, qm_unit, run_battery, tree_battery, BatteryMode, BatteryOptions, Verdict, Witness,
};
use csf_core::csf::{mod_type, tree_csf, CsfCache, OracleBounds};
use csf_core::enumerate::enumerate_trees;
use csf_core::graph::enumerate_spiders;
use rayon::prelude::*;

#[test]
fn no_false_accusations_on_spiders() {
    let cache = CsfCache::new();
    let opts = BatteryOptions::with_mode(BatteryMode::WithExpansion);
    let spiders: Vec<_> = (2..=16).flat_map(enumerate_spiders).collect();
    let bad: Vec<String> = spiders
        .par_iter()
        .filter_map(|s| {
            let r = run_battery(s, &opts, &cache).unwrap();
            let fired = r.first_trigger().is_some();
            (fired && r.e_positive != Verdict::NotPositive || !r.consistent()).then(|| format!("{r:?}"))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn residue_test_matches_search() {
    for n in 2..=12 {
        for s in enumerate_spiders(n) {
            let t = s.to_tree();
            for m in 2..=n {
                let has = has_connected_partition(&t, &mod_type(n, m)).unwrap();
                assert_eq!(!mod_test(&s, m).triggered, has, "{s} m={m}");
            }
        }
    }
}

#[test]
fn quotient_test_subsumes_its_first_slice() {
    let mut fired = 0;
    for n in 4..=30 {
        for s in enumerate_spiders(n).filter(|s| s.leg_count() >= 3) {
            if qm_unit(&s).triggered {
                fired += 1;
                assert!(qm_test(&s).triggered, "{s}");
            }
        }
    }
    assert!(fired > 0);
}

#[test]
fn quotient_witnesses_are_missing() {
    for n in 4..=22 {
        for s in enumerate_spiders(n) {
            let r = qm_test(&s);
            if let Some(Witness::MissingType { partition }) = &r.witness {
                assert!(!has_connected_partition(&s.to_tree(), partition).unwrap(), "{s}");
            }
        }
    }
}

#[test]
fn tree_battery_is_sound() {
    let cache = CsfCache::new();
    let opts = BatteryOptions::default();
    for n in 4..=12 {
        let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
        trees.par_iter().for_each(|t| {
            let r = tree_battery(t, &opts, &cache).unwrap();
            assert!(r.consistent(), "{r:?}");
            if r.first_trigger().is_some() {
                let x = tree_csf(t, &cache, OracleBounds::default()).unwrap();
                assert!(!x.is_e_positive().is_positive(), "{}", t.label());
            }
        });
    }
}

#[test]
fn complete_spiders_have_no_missing_type_witness() {
    // a spider with every type cannot be accused through a missing type
    for s in enumerate_spiders(13) {
        let complete = csf_core::connected::has_all_connected_partitions(&s.to_tree()) == Completeness::Complete;
        if !complete {
            continue;
        }
        let r = run_battery(&s, &BatteryOptions::default(), &CsfCache::new()).unwrap();
        assert!(r.triggered().all(|c| c.witness.as_ref().and_then(Witness::missing_type).is_none()), "{s}");
    }
}
