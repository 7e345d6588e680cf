//! Closed-form coefficients against extraction from exact expansions.

use csf_core::csf::{
    coeff_four_leg, coeff_mq, coeff_three_two, coeff_two_powers, csf_oracle, has_mod_type, three_two_partition,
    CsfCache, FourLegParams,
};
use csf_core::graph::enumerate_spiders;
use csf_core::partition::Partition;
use csf_core::Spider;
use num_bigint::BigInt;

fn s(legs: &[u64]) -> Spider {
    Spider::from_legs(legs).unwrap()
}

#[test]
fn four_leg_reading_matches_oracle() {
    // the coefficient lives at (m+r, m^q), a partition of n
    for legs in [[3u64, 3, 2, 1], [6, 4, 1, 1], [4, 3, 2, 2], [5, 3, 2, 1], [4, 4, 3, 1]] {
        let spider = s(&legs);
        let Ok((key, value)) = coeff_four_leg(&spider) else { continue };
        assert_eq!(key.weight(), spider.vertex_count());
        let x = csf_oracle(spider.to_tree().as_graph()).unwrap();
        assert_eq!(x.coefficient(&key), value, "{spider}");
    }
}

#[test]
fn four_leg_over_all_small_spiders() {
    let cache = CsfCache::new();
    let mut checked = 0;
    for n in 5..=14 {
        for spider in enumerate_spiders(n).filter(|s| s.leg_count() == 4) {
            if let Ok((key, value)) = coeff_four_leg(&spider) {
                assert_eq!(cache.spider(&spider).coefficient(&key), value, "{spider}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 3, "only {checked} qualifying spiders");
}

#[test]
fn four_leg_precondition_is_a_residue_type() {
    // the stated precondition type (m^{q+1}, r) is the one the residue test decides
    let spider = s(&[3, 3, 2, 1]);
    let FourLegParams { m, q, r } = FourLegParams::of(&spider).unwrap();
    assert_eq!((m, q, r), (3, 2, 1));
    assert!(has_mod_type(&spider, m));
    let ty = Partition::new(vec![3, 3, 3, 1]).unwrap();
    assert!(csf_core::connected::has_connected_partition(&spider.to_tree(), &ty).unwrap());
}

#[test]
fn mq_on_small_spiders() {
    let cache = CsfCache::new();
    for n in 2..=14 {
        for spider in enumerate_spiders(n) {
            let x = cache.spider(&spider);
            for m in 2..=n {
                if let Ok(v) = coeff_mq(&spider, m) {
                    let key = Partition::repeated(m, (n / m) as usize);
                    assert_eq!(x.coefficient(&key), v, "{spider} m={m}");
                }
            }
        }
    }
}

#[test]
fn two_powers_on_even_spiders() {
    let cache = CsfCache::new();
    for n in (2..=14).step_by(2) {
        for spider in enumerate_spiders(n) {
            let key = Partition::repeated(2, (n / 2) as usize);
            assert_eq!(cache.spider(&spider).coefficient(&key), coeff_two_powers(&spider).unwrap(), "{spider}");
        }
    }
    assert_eq!(coeff_two_powers(&s(&[1, 1, 1])).unwrap(), BigInt::from(-2));
}

#[test]
fn three_two_on_qualifying_spiders() {
    let cache = CsfCache::new();
    let mut paths = 0;
    for n in (3..=13).step_by(2) {
        let key = three_two_partition(n).unwrap();
        for spider in enumerate_spiders(n) {
            let Ok(v) = coeff_three_two(&spider) else { continue };
            if spider.leg_count() == 2 {
                paths += 1;
            }
            assert_eq!(cache.spider(&spider).coefficient(&key), v, "{spider}");
        }
    }
    assert!(paths > 0);
}
