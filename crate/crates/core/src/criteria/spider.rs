//! The individual tests. Legs are indexed from 1 in reported parameters, in
//! weakly decreasing order of length.

use num_integer::Integer;
use num_traits::Signed;

use crate::connected::{has_all_connected_partitions, has_connected_partition, Completeness};
use crate::csf::{
    coeff_four_leg, coeff_three_two, has_mod_type, mod_type, residue_sum, three_two_partition, FourLegParams,
};
use crate::graph::Spider;
use crate::partition::Partition;

use super::degree::degree_sum_reaches_one;
use super::{CriterionReport, Witness};

/// Largest spider on which [`six_leg`] falls back to a full sweep of types.
const SIX_LEG_SWEEP_BOUND: u64 = 40;

fn legs(s: &Spider) -> &[u64] {
    s.legs().parts()
}

/// Sum of legs `i..=d` (1-indexed).
fn tail_sum(s: &Spider, i: usize) -> u64 {
    legs(s)[i - 1..].iter().sum()
}

/// Residue test for one modulus `m > 1`.
pub fn mod_test(s: &Spider, m: u64) -> CriterionReport {
    assert!(m > 1, "modulus must exceed 1");
    let n = s.vertex_count();
    let (q, r) = (n / m, n % m);
    let sigma = residue_sum(s, m);
    let base = if has_mod_type(s, m) {
        CriterionReport::silent("mod_test")
    } else {
        CriterionReport::fired("mod_test", Witness::MissingType { partition: mod_type(n, m) })
    };
    base.with("m", m).with("q", q).with("r", r).with("sigma", sigma)
}

/// [`mod_test`] over `2 ≤ m ≤ n`; reports the first modulus that fires.
pub fn mod_scan(s: &Spider) -> CriterionReport {
    let n = s.vertex_count();
    (2..=n).map(|m| mod_test(s, m)).find(|r| r.triggered).unwrap_or_else(|| CriterionReport::silent("mod_test"))
}

/// Fires through the residue test at modulus `m`, if it does.
fn via_modulus(name: &str, s: &Spider, m: u64) -> Option<CriterionReport> {
    if m < 2 || has_mod_type(s, m) {
        return None;
    }
    let partition = mod_type(s.vertex_count(), m);
    Some(CriterionReport::fired(name, Witness::MissingType { partition }).with("m", m))
}

/// The six leg-arithmetic conditions, one report each (`variety_1` … `variety_6`).
///
/// Each condition forces the residue sum for a specific modulus past the
/// point where the type `(m^q, r)` can exist, and reports that type.
pub fn variety_conditions(s: &Spider) -> Vec<CriterionReport> {
    vec![variety_one(s), variety_two(s), variety_three(s), variety_four(s), variety_five(s), variety_six(s)]
}

// λ_i < λ_{i+1} + … + λ_d
fn variety_one(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    for i in 1..d {
        let li = s.leg(i - 1);
        if li < tail_sum(s, i + 1) {
            if let Some(r) = via_modulus("variety_1", s, li + 1) {
                return r.with("i", i);
            }
        }
    }
    CriterionReport::silent("variety_1")
}

/// Condition 1 with `≤` in place of `<` for `i ≥ 2` and `λ_i > 1`. Not
/// derivable from the residue test alone, so it is reported separately and
/// only fires when the resulting type is confirmed missing by search.
pub fn variety_condition_one_weak(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    let tree = s.to_tree();
    for i in 2..d {
        let li = s.leg(i - 1);
        if li > 1 && li <= tail_sum(s, i + 1) {
            let m = li + 1;
            if has_mod_type(s, m) {
                continue;
            }
            let partition = mod_type(s.vertex_count(), m);
            if !has_connected_partition(&tree, &partition).expect("weight n") {
                return CriterionReport::fired("variety_1_weak", Witness::MissingType { partition })
                    .with("i", i)
                    .with("m", m);
            }
        }
    }
    CriterionReport::silent("variety_1_weak")
}

fn count_not_divisible(s: &Spider, m: u64) -> u64 {
    legs(s).iter().filter(|&&l| l % m != 0).count() as u64
}

// at least 2m - 1 legs not divisible by m
fn variety_two(s: &Spider) -> CriterionReport {
    let n = s.vertex_count();
    for m in 2..=n {
        let k = count_not_divisible(s, m);
        if k + 1 >= 2 * m {
            if let Some(r) = via_modulus("variety_2", s, m) {
                return r.with("legs_not_divisible", k);
            }
        }
    }
    CriterionReport::silent("variety_2")
}

// m | n and at least m legs not divisible by m
fn variety_three(s: &Spider) -> CriterionReport {
    let n = s.vertex_count();
    for m in (2..=n).filter(|m| n.is_multiple_of(*m)) {
        let k = count_not_divisible(s, m);
        if k >= m {
            if let Some(r) = via_modulus("variety_3", s, m) {
                return r.with("legs_not_divisible", k);
            }
        }
    }
    CriterionReport::silent("variety_3")
}

// m | n and λ_i + 1 ≤ m ≤ λ_i + … + λ_d
fn variety_four(s: &Spider) -> CriterionReport {
    let n = s.vertex_count();
    for i in 1..=s.leg_count() {
        let (lo, hi) = (s.leg(i - 1) + 1, tail_sum(s, i));
        for m in (lo.max(2)..=hi).filter(|m| n.is_multiple_of(*m)) {
            if let Some(r) = via_modulus("variety_4", s, m) {
                return r.with("i", i);
            }
        }
    }
    CriterionReport::silent("variety_4")
}

// g = gcd(λ_i + 1, λ_j + 1) > 1 and g ∤ λ_k for distinct i, j, k
fn variety_five(s: &Spider) -> CriterionReport {
    let l = legs(s);
    let d = l.len();
    for i in 0..d {
        for j in i + 1..d {
            let g = (l[i] + 1).gcd(&(l[j] + 1));
            if g < 2 {
                continue;
            }
            if let Some(k) = (0..d).find(|&k| k != i && k != j && !l[k].is_multiple_of(g)) {
                if let Some(r) = via_modulus("variety_5", s, g) {
                    return r.with("i", i + 1).with("j", j + 1).with("k", k + 1);
                }
            }
        }
    }
    CriterionReport::silent("variety_5")
}

// n mod t > λ_i with t = λ_i + … + λ_d, i < d
fn variety_six(s: &Spider) -> CriterionReport {
    let n = s.vertex_count();
    for i in 1..s.leg_count() {
        let t = tail_sum(s, i);
        if n % t > s.leg(i - 1) {
            if let Some(r) = via_modulus("variety_6", s, t) {
                return r.with("i", i).with("t", t);
            }
        }
    }
    CriterionReport::silent("variety_6")
}

/// One instantiation `(i, m)` of the quotient test. `None` when it does not
/// apply (index out of range, or a gate fails).
pub fn qm_instance(s: &Spider, i: usize, m: u64) -> Option<CriterionReport> {
    let d = s.leg_count();
    if i < 2 || i >= d || m == 0 {
        return None;
    }
    let n = s.vertex_count();
    let li = s.leg(i - 1);
    let t = tail_sum(s, i + 1);
    let a = (li + 1).div_ceil(m);
    let (q, r) = (n / a, n % a);
    if q == 0 || t < 2 * m || a <= s.leg(i) {
        return None;
    }
    // q > m(a-1)/(t-2m+1), with a positive denominator
    if q * (t - 2 * m + 1) <= m * (a - 1) {
        return None;
    }
    let (dp, rp) = (r / q, r % q);
    let mut parts = vec![a + dp + 1; rp as usize];
    parts.extend(std::iter::repeat_n(a + dp, (q - rp) as usize));
    let partition = Partition::new(parts).expect("positive parts");
    Some(
        CriterionReport::fired("qm_test", Witness::MissingType { partition })
            .with("i", i)
            .with("m", m)
            .with("a", a)
            .with("q", q)
            .with("r", r)
            .with("t", t)
            .with("d_prime", dp)
            .with("r_prime", rp),
    )
}

/// Scans `2 ≤ i < d` and `1 ≤ m ≤ ⌈t/2⌉`; first instantiation that fires.
pub fn qm_test(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    for i in 2..d {
        let t = tail_sum(s, i + 1);
        for m in 1..=t.div_ceil(2) {
            if let Some(r) = qm_instance(s, i, m) {
                return r;
            }
        }
    }
    CriterionReport::silent("qm_test")
}

/// The `m = 1` slice of [`qm_test`]: `q ≥ (λ_i+1)/(t-1)` with `q = ⌊n/(λ_i+1)⌋`.
pub fn qm_unit(s: &Spider) -> CriterionReport {
    for i in 2..s.leg_count() {
        if let Some(r) = qm_instance(s, i, 1) {
            return CriterionReport { name: "qm_unit".into(), ..r };
        }
    }
    CriterionReport::silent("qm_unit")
}

/// Necessary growth of legs: `2(λ_i+1)^2 > n(λ_{i+1}+1)` for `2 ≤ i ≤ d-3`,
/// and `2λ_i^2 > nλ_{i+1}` for `2 < i ≤ d-2`.
pub fn sqrt_bound(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    let n = s.vertex_count() as u128;
    let leg = |i: usize| s.leg(i - 1) as u128;
    for i in 2..=d.saturating_sub(3) {
        let (lhs, rhs) = (2 * (leg(i) + 1).pow(2), n * (leg(i + 1) + 1));
        if lhs <= rhs {
            let text = format!("2(λ_{i}+1)^2 = {lhs} <= n(λ_{}+1) = {rhs}", i + 1);
            return CriterionReport::fired("sqrt_bound", Witness::Inequality { text }).with("i", i).with("clause", 1);
        }
    }
    for i in 3..=d.saturating_sub(2) {
        let (lhs, rhs) = (2 * leg(i).pow(2), n * leg(i + 1));
        if lhs <= rhs {
            let text = format!("2λ_{i}^2 = {lhs} <= nλ_{} = {rhs}", i + 1);
            return CriterionReport::fired("sqrt_bound", Witness::Inequality { text }).with("i", i).with("clause", 2);
        }
    }
    CriterionReport::silent("sqrt_bound")
}

/// For `d ≥ 5`: fires when `Σ_{k=1}^{d-3} (n/2)^{-1/2^k} ≥ 1`.
pub fn degree_bound(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    if d < 5 {
        return CriterionReport::silent("degree_bound");
    }
    let n = s.vertex_count();
    let terms = (d - 3) as u32;
    if degree_sum_reaches_one(n, terms) {
        let text = format!("sum_(k=1..{terms}) ({n}/2)^(-1/2^k) >= 1");
        CriterionReport::fired("degree_bound", Witness::Inequality { text }).with("terms", terms)
    } else {
        CriterionReport::silent("degree_bound").with("terms", terms)
    }
}

/// Where a [`six_leg`] witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SixLegSource {
    /// The quotient test at `i = 2`, `m = ⌊(λ_2+1)/(λ_3+1)⌋`.
    Constructive,
    /// Another missing-type test in the battery.
    Battery,
    /// A full sweep over all types.
    Sweep,
    /// No explicit type; the inequality chain only.
    Bound,
}

impl SixLegSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SixLegSource::Constructive => "constructive",
            SixLegSource::Battery => "battery",
            SixLegSource::Sweep => "sweep",
            SixLegSource::Bound => "bound",
        }
    }
}

/// Fires for every spider with at least six legs, with a missing type when
/// one can be produced.
pub fn six_leg(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    if d < 6 {
        return CriterionReport::silent("six_leg");
    }
    let tree = s.to_tree();
    let confirmed = |r: &CriterionReport| {
        r.witness
            .as_ref()
            .and_then(Witness::missing_type)
            .is_some_and(|p| !has_connected_partition(&tree, p).expect("weight n"))
    };
    let finish = |r: CriterionReport, source: SixLegSource| CriterionReport {
        name: "six_leg".into(),
        triggered: true,
        verified: None,
        ..r.with("via", source.as_str())
    };

    let m = (s.leg(1) + 1) / (s.leg(2) + 1);
    if let Some(r) = qm_instance(s, 2, m) {
        if confirmed(&r) {
            return finish(r, SixLegSource::Constructive);
        }
    }
    let mut others = vec![mod_scan(s), qm_test(s)];
    others.extend(variety_conditions(s));
    if let Some(r) = others.into_iter().find(|r| r.triggered && confirmed(r)) {
        let from = r.name.clone();
        return finish(r.with("from", from), SixLegSource::Battery);
    }
    if s.vertex_count() <= SIX_LEG_SWEEP_BOUND {
        if let Completeness::Missing(partition) = has_all_connected_partitions(&tree) {
            return finish(CriterionReport::fired("six_leg", Witness::MissingType { partition }), SixLegSource::Sweep);
        }
    }
    let text = format!("d = {d} >= 6");
    finish(CriterionReport::fired("six_leg", Witness::Inequality { text }), SixLegSource::Bound)
}

/// Four-leg quotient test: with `m = λ_3 + λ_4` and `n = mq + m + r`, fires
/// when `q ≥ m`.
pub fn four_leg_q(s: &Spider) -> CriterionReport {
    let Ok(FourLegParams { m, q, r }) = FourLegParams::of(s) else {
        return CriterionReport::silent("four_leg_q");
    };
    let silent = || CriterionReport::silent("four_leg_q").with("m", m).with("q", q).with("r", r);
    if q < m {
        return silent();
    }
    let n = s.vertex_count();
    let fired = if !has_mod_type(s, m) {
        CriterionReport::fired("four_leg_q", Witness::MissingType { partition: mod_type(n, m) })
    } else {
        match coeff_four_leg(s) {
            Ok((partition, coeff)) if coeff.is_negative() => {
                CriterionReport::fired("four_leg_q", Witness::NegativeCoefficient { partition, coeff })
            }
            _ => return silent(),
        }
    };
    fired.with("m", m).with("q", q).with("r", r)
}

/// Two odd legs, `d ≥ 4`, `λ_1` even: the `(3, 2^k)` coefficient, when negative.
pub fn two_odd_legs(s: &Spider) -> CriterionReport {
    let d = s.leg_count();
    let odd = legs(s).iter().filter(|&&l| l % 2 == 1).count();
    if d < 4 || odd != 2 || s.leg(0) % 2 == 1 {
        return CriterionReport::silent("two_odd_legs");
    }
    let coeff = coeff_three_two(s).expect("two odd legs");
    let partition = three_two_partition(s.vertex_count()).expect("n odd");
    if coeff.is_negative() {
        CriterionReport::fired("two_odd_legs", Witness::NegativeCoefficient { partition, coeff })
    } else {
        CriterionReport::silent("two_odd_legs").with("value", coeff.to_string())
    }
}
