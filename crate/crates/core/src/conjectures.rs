//! Small-scale checks of open e-positivity conjectures for spiders.
//!
//! - leg merging: if `S` is e-positive, so is every spider obtained by
//!   merging two of its legs;
//! - `S(2(2m+1), 2m, 1)` is e-positive;
//! - `S(n(n!m+1), n!m, 1)` is e-positive;
//! - if `S` is e-positive, so is its line graph.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::csf::{csf_oracle_with, CsfCache, OracleBounds};
use crate::error::Result;
use crate::graph::{enumerate_spiders, line_graph, Spider};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub conjecture: &'static str,
    pub instance: String,
    pub holds: bool,
}

pub const LEG_MERGING: &str = "leg_merging";
pub const FAMILY_2M: &str = "family_2(2m+1)_2m_1";
pub const FAMILY_FACTORIAL: &str = "family_n(n!m+1)_n!m_1";
pub const LINE_GRAPH: &str = "line_graph";

fn positive(s: &Spider, cache: &CsfCache) -> bool {
    cache.spider(s).is_e_positive().is_positive()
}

/// `S(2(2m+1), 2m, 1)` for `1 ≤ m ≤ max_m` with at most `max_vertices` vertices.
pub fn family_two_m(max_m: u64, max_vertices: u64, cache: &CsfCache) -> Vec<ConjectureCheck> {
    (1..=max_m)
        .map(|m| Spider::from_legs(&[2 * (2 * m + 1), 2 * m, 1]).expect("positive legs"))
        .take_while(|s| s.vertex_count() <= max_vertices)
        .map(|s| ConjectureCheck { conjecture: FAMILY_2M, instance: s.to_string(), holds: positive(&s, cache) })
        .collect()
}

/// `S(n(n!m+1), n!m, 1)` for `2 ≤ n ≤ max_n`, `1 ≤ m ≤ max_m`, within `max_vertices`.
pub fn family_factorial(max_n: u64, max_m: u64, max_vertices: u64, cache: &CsfCache) -> Vec<ConjectureCheck> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let fact: u64 = (1..=n).product();
        for m in 1..=max_m {
            let s = Spider::from_legs(&[n * (fact * m + 1), fact * m, 1]).expect("positive legs");
            if s.vertex_count() > max_vertices {
                break;
            }
            out.push(ConjectureCheck {
                conjecture: FAMILY_FACTORIAL,
                instance: s.to_string(),
                holds: positive(&s, cache),
            });
        }
    }
    out
}

/// Every e-positive spider on at most `max_vertices` vertices, in census order.
pub fn positive_spiders(max_vertices: u64, cache: &CsfCache) -> Vec<Spider> {
    let all: Vec<Spider> = (2..=max_vertices).flat_map(enumerate_spiders).collect();
    let keep: Vec<bool> = all.par_iter().map(|s| positive(s, cache)).collect();
    all.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect()
}

/// Leg merging over the given e-positive spiders.
pub fn leg_merging(spiders: &[Spider], cache: &CsfCache) -> Vec<ConjectureCheck> {
    spiders
        .par_iter()
        .flat_map_iter(|s| {
            let d = s.leg_count();
            // equal legs give the same merged spider
            let merged: BTreeSet<Spider> = (0..d)
                .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
                .map(|(i, j)| s.combine_legs(i, j).expect("valid indices"))
                .collect();
            merged.into_iter().map(move |m| ConjectureCheck {
                conjecture: LEG_MERGING,
                instance: format!("{s} -> {m}"),
                holds: positive(&m, cache),
            })
        })
        .collect()
}

/// Line graphs of the given e-positive spiders, expanded by the oracle.
pub fn line_graphs(spiders: &[Spider], bounds: OracleBounds) -> Result<Vec<ConjectureCheck>> {
    spiders
        .par_iter()
        .map(|s| {
            let lg = line_graph(s.to_tree().as_graph());
            let x = csf_oracle_with(&lg, bounds)?;
            Ok(ConjectureCheck {
                conjecture: LINE_GRAPH,
                instance: format!("L({s})"),
                holds: x.is_e_positive().is_positive(),
            })
        })
        .collect()
}
