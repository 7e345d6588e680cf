//! Running every test on one graph, optionally against its exact expansion.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::connected::has_connected_partition;
use crate::csf::{tree_csf, CsfCache, OracleBounds};
use crate::error::{Error, Result};
use crate::graph::{reduce_to_spider, Spider, Tree};
use crate::symfunc::{EExpansion, Positivity};

use super::spider::*;
use super::{CriterionReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BatteryMode {
    #[default]
    CriteriaOnly,
    WithExpansion,
    /// Expand only when no test fires.
    CriteriaThenExpansion,
}

impl std::str::FromStr for BatteryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "criteria_only" => Ok(BatteryMode::CriteriaOnly),
            "with_expansion" => Ok(BatteryMode::WithExpansion),
            "criteria_then_expansion" => Ok(BatteryMode::CriteriaThenExpansion),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryOptions {
    pub mode: BatteryMode,
    /// Largest spider expanded through the leg recursion.
    pub spider_bound: u64,
    /// Limits for non-spider trees.
    pub oracle: OracleBounds,
    /// Include the weak form of the first leg condition.
    pub weak_variety: bool,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        Self { mode: BatteryMode::CriteriaOnly, spider_bound: 40, oracle: OracleBounds::default(), weak_variety: false }
    }
}

impl BatteryOptions {
    pub fn with_mode(mode: BatteryMode) -> Self {
        Self { mode, ..Self::default() }
    }
}

/// `true`, `false` or `"unknown"` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    NotPositive,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Positive => "true",
            Verdict::NotPositive => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Positive => s.serialize_bool(true),
            Verdict::NotPositive => s.serialize_bool(false),
            Verdict::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(true) => Ok(Verdict::Positive),
            serde_json::Value::Bool(false) => Ok(Verdict::NotPositive),
            serde_json::Value::String(s) if s == "unknown" => Ok(Verdict::Unknown),
            other => Err(serde::de::Error::custom(format!("bad e_positive value {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub graph: String,
    pub criteria: Vec<CriterionReport>,
    pub e_positive: Verdict,
    /// First negative coefficient of the expansion, when one was computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expansion_witness: Option<Witness>,
}

pub type TreeBatteryReport = BatteryReport;

impl BatteryReport {
    pub fn triggered(&self) -> impl Iterator<Item = &CriterionReport> {
        self.criteria.iter().filter(|r| r.triggered)
    }

    pub fn first_trigger(&self) -> Option<&CriterionReport> {
        self.triggered().next()
    }

    /// Every checked witness held up.
    pub fn consistent(&self) -> bool {
        self.criteria.iter().all(|r| r.verified != Some(false))
            && !(self.e_positive == Verdict::Positive && self.first_trigger().is_some())
    }
}

fn spider_criteria(s: &Spider, weak: bool) -> Vec<CriterionReport> {
    let mut out = vec![six_leg(s), two_odd_legs(s), four_leg_q(s), mod_scan(s)];
    out.extend(variety_conditions(s));
    if weak {
        out.push(variety_condition_one_weak(s));
    }
    out.extend([sqrt_bound(s), degree_bound(s), qm_test(s)]);
    out
}

fn verify_missing(reports: &mut [CriterionReport], t: &Tree) {
    for r in reports.iter_mut().filter(|r| r.triggered) {
        if let Some(p) = r.witness.as_ref().and_then(Witness::missing_type) {
            r.verified = Some(!has_connected_partition(t, p).expect("witness has weight n"));
        }
    }
}

fn verify_coefficients(reports: &mut [CriterionReport], x: &EExpansion) {
    for r in reports.iter_mut().filter(|r| r.triggered) {
        if let Some(Witness::NegativeCoefficient { partition, coeff }) = &r.witness {
            r.verified = Some(&x.coefficient(partition) == coeff);
        }
    }
}

fn expansion_verdict(x: &EExpansion) -> (Verdict, Option<Witness>) {
    match x.is_e_positive() {
        Positivity::Positive => (Verdict::Positive, None),
        Positivity::NegativeWitness(partition, coeff) => {
            (Verdict::NotPositive, Some(Witness::NegativeCoefficient { partition, coeff }))
        }
    }
}

fn wants_expansion(mode: BatteryMode, any_fired: bool) -> bool {
    match mode {
        BatteryMode::CriteriaOnly => false,
        BatteryMode::WithExpansion => true,
        BatteryMode::CriteriaThenExpansion => !any_fired,
    }
}

/// All spider tests; missing-type witnesses are always re-checked, and
/// coefficient witnesses too once the expansion is available.
pub fn run_battery(s: &Spider, opts: &BatteryOptions, cache: &CsfCache) -> Result<BatteryReport> {
    let n = s.vertex_count();
    let mut criteria = spider_criteria(s, opts.weak_variety);
    verify_missing(&mut criteria, &s.to_tree());
    let any_fired = criteria.iter().any(|r| r.triggered);
    let mut report = BatteryReport {
        graph: s.to_string(),
        criteria,
        e_positive: if any_fired { Verdict::NotPositive } else { Verdict::Unknown },
        expansion_witness: None,
    };
    if wants_expansion(opts.mode, any_fired) {
        if n > opts.spider_bound {
            return Err(Error::BoundExceeded {
                what: "spider expansion",
                n: n as usize,
                bound: opts.spider_bound as usize,
            });
        }
        let x = cache.spider(s);
        verify_coefficients(&mut report.criteria, &x);
        (report.e_positive, report.expansion_witness) = expansion_verdict(&x);
    }
    Ok(report)
}

/// Missing-type tests on the spider obtained at each vertex of degree ≥ 3.
/// A type missing from the spider is missing from the tree, and is checked
/// on the tree itself.
pub fn tree_battery(t: &Tree, opts: &BatteryOptions, cache: &CsfCache) -> Result<TreeBatteryReport> {
    let degrees = t.degrees();
    let mut criteria = Vec::new();
    for v in (0..t.vertex_count()).filter(|&v| degrees[v] >= 3) {
        let s = reduce_to_spider(t, v)?;
        let mut here = vec![mod_scan(&s)];
        here.extend(variety_conditions(&s));
        here.push(qm_test(&s));
        here.push(six_leg(&s));
        let label = s.to_string();
        criteria.extend(here.into_iter().map(|r| r.with("vertex", v).with("spider", label.clone())));
    }
    verify_missing(&mut criteria, t);
    let any_fired = criteria.iter().any(|r| r.triggered);
    let mut report = BatteryReport {
        graph: t.label(),
        criteria,
        e_positive: if any_fired { Verdict::NotPositive } else { Verdict::Unknown },
        expansion_witness: None,
    };
    if wants_expansion(opts.mode, any_fired) {
        if let Some(s) = t.as_spider() {
            if s.vertex_count() > opts.spider_bound {
                return Err(Error::BoundExceeded {
                    what: "spider expansion",
                    n: t.vertex_count(),
                    bound: opts.spider_bound as usize,
                });
            }
        }
        let x = tree_csf(t, cache, opts.oracle)?;
        (report.e_positive, report.expansion_witness) = expansion_verdict(&x);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::mn_tree;

    fn s(legs: &[u64]) -> Spider {
        Spider::from_legs(legs).unwrap()
    }

    #[test]
    fn six_four_one_one_passes_partition_tests() {
        let cache = CsfCache::new();
        let r = run_battery(&s(&[6, 4, 1, 1]), &BatteryOptions::default(), &cache).unwrap();
        let fired: Vec<&str> = r.triggered().map(|c| c.name.as_str()).collect();
        // both coefficient tests land on [e(3,2^5)] = -13
        assert_eq!(fired, vec!["two_odd_legs", "four_leg_q"]);
        assert_eq!(r.e_positive, Verdict::NotPositive);
    }

    #[test]
    fn five_four_one_is_positive() {
        let cache = CsfCache::new();
        let opts = BatteryOptions::with_mode(BatteryMode::WithExpansion);
        let r = run_battery(&s(&[5, 4, 1]), &opts, &cache).unwrap();
        assert!(r.first_trigger().is_none());
        assert_eq!(r.e_positive, Verdict::Positive);
    }

    #[test]
    fn expansion_confirms_witnesses() {
        let cache = CsfCache::new();
        let opts = BatteryOptions::with_mode(BatteryMode::WithExpansion);
        let r = run_battery(&s(&[6, 3, 3, 2]), &opts, &cache).unwrap();
        assert!(r.consistent());
        assert_eq!(r.e_positive, Verdict::NotPositive);
        assert!(r.triggered().any(|c| c.name == "two_odd_legs" && c.verified == Some(true)));
    }

    #[test]
    fn expansion_bound_is_enforced() {
        let cache = CsfCache::new();
        let opts = BatteryOptions { spider_bound: 10, ..BatteryOptions::with_mode(BatteryMode::WithExpansion) };
        assert!(run_battery(&s(&[6, 4, 1]), &opts, &cache).is_err());
    }

    #[test]
    fn small_m_trees_stay_silent() {
        let cache = CsfCache::new();
        let r = tree_battery(&mn_tree(2).unwrap(), &BatteryOptions::default(), &cache).unwrap();
        assert!(r.first_trigger().is_none());
    }

    #[test]
    fn degree_six_tree_is_flagged() {
        let cache = CsfCache::new();
        let t = s(&[2, 1, 1, 1, 1, 1]).to_tree();
        let r = tree_battery(&t, &BatteryOptions::default(), &cache).unwrap();
        assert!(r.triggered().any(|c| c.name == "six_leg"));
        assert!(r.consistent());
    }

    #[test]
    fn report_json_shape() {
        let cache = CsfCache::new();
        let r = run_battery(&s(&[1, 1, 1]), &BatteryOptions::default(), &cache).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["graph"], "S[1,1,1]");
        assert_eq!(v["e_positive"], false);
        let back: BatteryReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
        let unknown = run_battery(&s(&[5, 4, 1]), &BatteryOptions::default(), &cache).unwrap();
        assert_eq!(serde_json::to_value(&unknown).unwrap()["e_positive"], "unknown");
    }
}
