//! The acceptance suite: fifteen exact checks, each reporting pass or fail
//! with a short detail line and its running time.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{run_census, CensusConfig, CensusKind};
use crate::conjectures::{family_two_m, line_graphs, positive_spiders};
use crate::connected::{has_all_connected_partitions, has_connected_partition, Completeness};
use crate::criteria::{
    four_leg_q, mod_test, qm_instance, run_battery, six_leg, tree_battery, BatteryMode, BatteryOptions, Verdict,
    Witness,
};
use crate::csf::{
    coeff_four_leg, coeff_mq, coeff_three_two, coeff_two_powers, csf_oracle, mod_type, path_e_coefficient, spider_csf,
    three_two_partition, tree_csf, CsfCache, FourLegParams, OracleBounds,
};
use crate::enumerate::enumerate_trees;
use crate::graph::{enumerate_spiders, mn_tree, Spider, Tree};
use crate::partition::{partitions_of, Partition};

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub id: u32,
    pub title: &'static str,
    run: fn(&CsfCache) -> Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckOutcome {
    /// `[PASS]  3 title (1.23 s): detail`
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("[{tag}] {:>2} {} ({:.2} s): {}", self.id, self.title, self.elapsed.as_secs_f64(), self.detail)
    }
}

impl Check {
    pub fn run(&self, cache: &CsfCache) -> CheckOutcome {
        let start = Instant::now();
        let result = (self.run)(cache);
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckOutcome { id: self.id, title: self.title, passed, detail, elapsed }
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, title: "path formula conformance", run: path_formula },
        Check { id: 2, title: "engine equivalence", run: engine_equivalence },
        Check { id: 3, title: "known e-positive spiders", run: known_positive },
        Check { id: 4, title: "non-e-positive with all types", run: complete_but_negative },
        Check { id: 5, title: "(m^q) coefficient", run: mq_coefficient },
        Check { id: 6, title: "(2^{n/2}) coefficient", run: two_power_coefficient },
        Check { id: 7, title: "(3,2^k) coefficient", run: three_two_coefficient },
        Check { id: 8, title: "four-leg coefficient index", run: four_leg_index },
        Check { id: 9, title: "residue test completeness", run: residue_completeness },
        Check { id: 10, title: "battery soundness", run: battery_soundness },
        Check { id: 11, title: "six legs and degree-6 trees", run: six_legs },
        Check { id: 12, title: "quotient test worked example", run: quotient_example },
        Check { id: 13, title: "M_n trees", run: mn_trees },
        Check { id: 14, title: "four-leg sweep", run: four_leg_sweep },
        Check { id: 15, title: "conjecture spot checks", run: conjecture_spots },
    ]
}

/// Runs every check in order, reporting each as it finishes.
pub fn run_all(cache: &CsfCache, mut on_done: impl FnMut(&CheckOutcome)) -> Vec<CheckOutcome> {
    checks()
        .iter()
        .map(|c| {
            let o = c.run(cache);
            on_done(&o);
            o
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spider(legs: &[u64]) -> Spider {
    Spider::from_legs(legs).expect("positive legs")
}

fn all_spiders(max_n: u64) -> Vec<Spider> {
    (2..=max_n).flat_map(enumerate_spiders).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn path_formula(_: &CsfCache) -> Outcome {
    let mut compared = 0;
    for n in 1..=11u64 {
        let x = csf_oracle(Tree::path(n as usize).as_graph()).map_err(err)?;
        for lam in partitions_of(n) {
            let formula = path_e_coefficient(n, &lam).map_err(err)?;
            ensure(formula == x.coefficient(&lam), || format!("P{n} at {lam}: {formula} vs {}", x.coefficient(&lam)))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} coefficients, n <= 11"))
}

fn engine_equivalence(_: &CsfCache) -> Outcome {
    // a fresh cache, so the recursion itself is exercised
    let fresh = CsfCache::new();
    let spiders = all_spiders(12);
    let bad: Vec<String> = spiders
        .par_iter()
        .filter_map(|s| match csf_oracle(s.to_tree().as_graph()) {
            Ok(x) if x == *fresh.spider(s) => None,
            Ok(_) => Some(s.to_string()),
            Err(e) => Some(format!("{s}: {e}")),
        })
        .collect();
    ensure(bad.is_empty(), || format!("mismatch on {}", bad.join(", ")))?;
    let at12 = enumerate_spiders(12).count();
    Ok(format!("{} spiders with n <= 12 ({at12} at n = 12)", spiders.len()))
}

fn known_positive(cache: &CsfCache) -> Outcome {
    let mut list: Vec<Spider> =
        [&[6u64, 2, 1][..], &[5, 3, 2], &[6, 4, 2], &[8, 6, 2], &[9, 7, 2], &[9, 6, 1], &[11, 6, 1], &[15, 6, 1]]
            .iter()
            .map(|l| spider(l))
            .collect();
    list.extend((2..=9).map(|n| spider(&[n, n - 1, 1])));
    let bad: Vec<String> = list
        .par_iter()
        .filter(|s| !spider_csf(s, cache).is_e_positive().is_positive())
        .map(|s| s.to_string())
        .collect();
    ensure(bad.is_empty(), || format!("not e-positive: {}", bad.join(", ")))?;
    Ok(format!("{} spiders e-positive", list.len()))
}

fn complete_but_negative(cache: &CsfCache) -> Outcome {
    let s = spider(&[6, 4, 1, 1]);
    ensure(has_all_connected_partitions(&s.to_tree()).is_complete(), || format!("{s} misses a type"))?;
    ensure(!spider_csf(&s, cache).is_e_positive().is_positive(), || format!("{s} is e-positive"))?;
    let mut details = vec![format!("{s} complete and negative")];
    for legs in [[15u64, 12, 2, 1], [16, 12, 2, 1]] {
        let s = spider(&legs);
        if let Completeness::Missing(p) = has_all_connected_partitions(&s.to_tree()) {
            return Err(format!("{s} misses {p}"));
        }
        let r = four_leg_q(&s);
        let Some(Witness::NegativeCoefficient { partition, coeff }) = &r.witness else {
            return Err(format!("{s}: four-leg test gave {:?}", r.witness));
        };
        let actual = spider_csf(&s, cache).coefficient(partition);
        ensure(&actual == coeff, || format!("{s} at {partition}: formula {coeff}, expansion {actual}"))?;
        details.push(format!("{s} [e{partition}] = {coeff}"));
    }
    Ok(details.join("; "))
}

fn mq_coefficient(cache: &CsfCache) -> Outcome {
    let mut checked = 0;
    for s in all_spiders(14) {
        let n = s.vertex_count();
        let x = cache.spider(&s);
        for m in 2..=n {
            if let Ok(v) = coeff_mq(&s, m) {
                let key = Partition::repeated(m, (n / m) as usize);
                ensure(x.coefficient(&key) == v, || format!("{s} m={m}: {v} vs {}", x.coefficient(&key)))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (spider, m) pairs, n <= 14"))
}

fn two_power_coefficient(cache: &CsfCache) -> Outcome {
    let mut checked = 0;
    for n in (2..=14).step_by(2) {
        let key = Partition::repeated(2, (n / 2) as usize);
        for s in enumerate_spiders(n) {
            let v = coeff_two_powers(&s).map_err(err)?;
            ensure(cache.spider(&s).coefficient(&key) == v, || format!("{s}: {v}"))?;
            checked += 1;
        }
    }
    let claw = spider(&[1, 1, 1]);
    let c = cache.spider(&claw).coefficient(&Partition::repeated(2, 2));
    ensure(c == (-2).into(), || format!("claw gives {c}"))?;
    Ok(format!("{checked} even spiders, n <= 14; claw -2"))
}

fn three_two_coefficient(cache: &CsfCache) -> Outcome {
    let (mut paths, mut spiders) = (0, 0);
    for n in (3..=13).step_by(2) {
        let key = three_two_partition(n).map_err(err)?;
        for s in enumerate_spiders(n) {
            let Ok(v) = coeff_three_two(&s) else { continue };
            ensure(cache.spider(&s).coefficient(&key) == v, || format!("{s}: {v}"))?;
            if s.leg_count() == 2 {
                paths += 1;
            } else {
                spiders += 1;
            }
        }
    }
    ensure(paths > 0 && spiders > 0, || format!("{paths} paths, {spiders} spiders"))?;
    Ok(format!("{paths} with d = 2, {spiders} with d >= 3, n <= 13"))
}

fn four_leg_index(_: &CsfCache) -> Outcome {
    let base = spider(&[3, 3, 2, 1]);
    let (key, value) = coeff_four_leg(&base).map_err(err)?;
    let expected = Partition::new(vec![4, 3, 3]).expect("positive parts");
    ensure(key == expected && value == 4.into(), || format!("{base}: {value} at {key}"))?;
    let mut matched = Vec::new();
    for s in (5..=14).flat_map(enumerate_spiders).filter(|s| s.leg_count() == 4) {
        let Ok((key, value)) = coeff_four_leg(&s) else { continue };
        let FourLegParams { m, q, r } = FourLegParams::of(&s).map_err(err)?;
        let mut parts = vec![m + r];
        parts.extend(std::iter::repeat_n(m, q as usize));
        ensure(key.parts() == parts && key.weight() == s.vertex_count(), || format!("{s}: key {key}"))?;
        let x = csf_oracle(s.to_tree().as_graph()).map_err(err)?;
        ensure(x.coefficient(&key) == value, || format!("{s} at {key}: {value} vs {}", x.coefficient(&key)))?;
        matched.push(s);
    }
    ensure(matched.len() >= 3, || format!("only {} qualifying spiders", matched.len()))?;
    Ok(format!("coefficient sits at (m+r, m^q); {} spiders, n <= 14", matched.len()))
}

fn residue_completeness(_: &CsfCache) -> Outcome {
    let spiders = all_spiders(12);
    let pairs: usize = spiders
        .par_iter()
        .map(|s| {
            let n = s.vertex_count();
            let t = s.to_tree();
            for m in 2..=n {
                let has = has_connected_partition(&t, &mod_type(n, m)).map_err(err)?;
                ensure(mod_test(s, m).triggered != has, || format!("{s} m={m}: search says {has}"))?;
            }
            Ok((n - 1) as usize)
        })
        .sum::<std::result::Result<usize, String>>()?;
    Ok(format!("{pairs} (spider, m) pairs, n <= 12"))
}

fn battery_soundness(cache: &CsfCache) -> Outcome {
    let opts = BatteryOptions::with_mode(BatteryMode::WithExpansion);
    let spiders = all_spiders(16);
    let flagged: usize = spiders
        .par_iter()
        .map(|s| {
            let r = run_battery(s, &opts, cache).map_err(err)?;
            let Some(first) = r.first_trigger() else { return Ok(0) };
            ensure(r.e_positive == Verdict::NotPositive, || {
                format!("{s}: {} fired on an e-positive spider", first.name)
            })?;
            for c in r.triggered() {
                let checkable =
                    matches!(c.witness, Some(Witness::MissingType { .. } | Witness::NegativeCoefficient { .. }));
                ensure(!checkable || c.verified == Some(true), || format!("{s}: {} witness does not hold", c.name))?;
            }
            Ok(1)
        })
        .sum::<std::result::Result<usize, String>>()?;
    Ok(format!("{} spiders, {flagged} flagged, no false positives", spiders.len()))
}

fn six_legs(cache: &CsfCache) -> Outcome {
    let spiders: Vec<Spider> = all_spiders(18).into_iter().filter(|s| s.leg_count() >= 6).collect();
    spiders.par_iter().try_for_each(|s| {
        let r = six_leg(s);
        let Some(p) = r.witness.as_ref().and_then(Witness::missing_type) else {
            return Err(format!("{s}: no missing type"));
        };
        let present = has_connected_partition(&s.to_tree(), p).map_err(err)?;
        ensure(!present, || format!("{s}: {p} is present"))
    })?;
    let opts = BatteryOptions::default();
    let mut trees = 0;
    for n in 7..=12 {
        let wide: Vec<Tree> = enumerate_trees(n).map_err(err)?.filter(|t| t.max_degree() >= 6).collect();
        wide.par_iter().try_for_each(|t| {
            let r = tree_battery(t, &opts, cache).map_err(err)?;
            ensure(r.first_trigger().is_some() && r.consistent(), || format!("{} not flagged", t.label()))?;
            let x = tree_csf(t, cache, OracleBounds::default()).map_err(err)?;
            ensure(!x.is_e_positive().is_positive(), || format!("{} is e-positive", t.label()))
        })?;
        trees += wide.len();
    }
    Ok(format!("{} spiders with d >= 6, {trees} trees with a degree-6 vertex", spiders.len()))
}

fn quotient_example(_: &CsfCache) -> Outcome {
    let s = spider(&[448, 276, 90, 1, 1]);
    let r = qm_instance(&s, 2, 3).ok_or_else(|| format!("{s}: i=2, m=3 does not apply"))?;
    let expected = Partition::from_exponential_form(&[(103, 1), (102, 7)]).map_err(err)?;
    let got = r.witness.as_ref().and_then(Witness::missing_type).cloned();
    ensure(got.as_ref() == Some(&expected), || format!("got {got:?}"))?;
    let present = has_connected_partition(&s.to_tree(), &expected).map_err(err)?;
    ensure(!present, || format!("{expected} is present"))?;
    Ok(format!("{s} misses {}; criteria only", expected.to_exponential_string()))
}

fn mn_trees(cache: &CsfCache) -> Outcome {
    let bounds = OracleBounds::new(25, OracleBounds::default().graph).map_err(err)?;
    let mut seen = Vec::new();
    for (n, positive) in [(1, true), (2, true), (4, true), (5, true), (7, true), (8, true), (10, false), (11, false)] {
        let t = mn_tree(n).map_err(err)?;
        let x = tree_csf(&t, cache, bounds).map_err(err)?;
        let got = x.is_e_positive().is_positive();
        ensure(got == positive, || format!("M_{n} e-positive = {got}"))?;
        seen.push(format!("M_{n}{}", if positive { "+" } else { "-" }));
    }
    for n in [2u64, 4, 5, 8] {
        let s = spider(&[n + 2, n - 1, 1]);
        ensure(!spider_csf(&s, cache).is_e_positive().is_positive(), || format!("{s} is e-positive"))?;
        seen.push(format!("{s}-"));
    }
    Ok(seen.join(" "))
}

fn four_leg_sweep(cache: &CsfCache) -> Outcome {
    let config = CensusConfig {
        kind: CensusKind::Spiders { legs: Some(4) },
        orders: 5..=40,
        battery: BatteryOptions::with_mode(BatteryMode::CriteriaThenExpansion),
    };
    let summary = run_census(&config, cache, |_| Ok(()), || Ok(())).map_err(err)?;
    ensure(summary.e_positive == 0 && summary.unknown == 0, || format!("{summary:?}"))?;
    Ok(format!(
        "{} spiders: {} flagged, {} negative by expansion, 0 e-positive",
        summary.total, summary.criteria_flagged, summary.expansion_negative
    ))
}

fn conjecture_spots(cache: &CsfCache) -> Outcome {
    let family = family_two_m(2, u64::MAX, cache);
    ensure(family.len() == 2 && family.iter().all(|c| c.holds), || format!("{family:?}"))?;
    let positive = positive_spiders(12, cache);
    let lines = line_graphs(&positive, OracleBounds::default()).map_err(err)?;
    let failed: Vec<&str> = lines.iter().filter(|c| !c.holds).map(|c| c.instance.as_str()).collect();
    ensure(failed.is_empty(), || format!("counterexamples: {}", failed.join(", ")))?;
    Ok(format!("S[6,2,1], S[10,4,1] e-positive; {} line graphs e-positive", lines.len()))
}
