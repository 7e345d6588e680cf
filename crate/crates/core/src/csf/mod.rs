//! Chromatic symmetric functions in the elementary basis.

mod cache;
mod formulas;
mod oracle;
mod path;

pub use cache::{CsfCache, CACHE_HEADER};
pub use formulas::{
    coeff_four_leg, coeff_mq, coeff_three_two, coeff_two_powers, has_mod_type, mod_type, residue_sum,
    three_two_partition, FourLegParams,
};
pub use oracle::{csf_oracle, csf_oracle_with, power_sum_expansion, OracleBounds, FOREST_HARD_CAP, GRAPH_HARD_CAP};
pub use path::{path_csf_uncached, path_e_coefficient};

use std::sync::Arc;

use crate::error::Result;
use crate::graph::{Spider, Tree};
use crate::symfunc::EExpansion;

/// `X_{P_n}` through the cache.
pub fn path_csf(n: u64, cache: &CsfCache) -> Arc<EExpansion> {
    cache.path(n)
}

pub fn spider_csf(s: &Spider, cache: &CsfCache) -> Arc<EExpansion> {
    cache.spider(s)
}

/// Spiders (and paths) go through the leg recursion; any other tree through
/// the oracle under `bounds`.
pub fn tree_csf(t: &Tree, cache: &CsfCache, bounds: OracleBounds) -> Result<Arc<EExpansion>> {
    match t.vertex_count() {
        0 => return Ok(Arc::new(EExpansion::one())),
        1 => return Ok(cache.path(1)),
        _ => {}
    }
    match t.as_spider() {
        Some(s) => Ok(cache.spider(&s)),
        None => Ok(Arc::new(csf_oracle_with(t.as_graph(), bounds)?)),
    }
}
