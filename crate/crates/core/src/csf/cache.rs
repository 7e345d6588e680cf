//! Memoised path and spider expansions, and their on-disk form.
//!
//! Readers share the maps; a miss computes outside any lock and then takes
//! the write lock to insert. Two workers racing on the same key compute the
//! same value, so the loser's insert is a no-op.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Spider;
use crate::partition::Partition;
use crate::symfunc::EExpansion;

use super::path::path_csf_uncached;

pub const CACHE_HEADER: &str = "csf-cache v1";

#[derive(Debug, Default)]
pub struct CsfCache {
    paths: RwLock<HashMap<u64, Arc<EExpansion>>>,
    spiders: RwLock<HashMap<Partition, Arc<EExpansion>>>,
}

impl CsfCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `X_{P_n}` for `n ≥ 1` vertices.
    pub fn path(&self, n: u64) -> Arc<EExpansion> {
        if let Some(x) = self.paths.read().expect("cache poisoned").get(&n) {
            return Arc::clone(x);
        }
        let x = Arc::new(path_csf_uncached(n));
        Arc::clone(self.paths.write().expect("cache poisoned").entry(n).or_insert(x))
    }

    /// `X_S` by repeatedly unhooking the shortest leg against the longest.
    pub fn spider(&self, s: &Spider) -> Arc<EExpansion> {
        self.legs(s.legs())
    }

    /// Spider on the given legs; fewer than three legs is a path (no legs is
    /// a single vertex).
    pub(crate) fn legs(&self, legs: &Partition) -> Arc<EExpansion> {
        if legs.len() <= 2 {
            return self.path(1 + legs.weight());
        }
        if let Some(x) = self.spiders.read().expect("cache poisoned").get(legs) {
            return Arc::clone(x);
        }
        let x = Arc::new(self.decompose(legs));
        Arc::clone(self.spiders.write().expect("cache poisoned").entry(legs.clone()).or_insert(x))
    }

    // X_S = X_{S(λ_{-j}(i:λ_i+λ_j))}
    //     + Σ_{k<λ_j} ( X_{S(λ_{-j}(i:λ_i+k))} X_{P_{λ_j-k}} - X_{S(λ_{-j}(i:k))} X_{P_{λ_i+λ_j-k}} )
    // with i the longest leg and j the shortest; a leg of length 0 is dropped.
    fn decompose(&self, legs: &Partition) -> EExpansion {
        let parts = legs.parts();
        let d = parts.len();
        let (long, short) = (parts[0], parts[d - 1]);
        let others = &parts[1..d - 1];
        let with_leg = |m: u64| Partition::from_parts_lossy(others.iter().copied().chain(std::iter::once(m)));

        let one = BigInt::one();
        let minus_one = -BigInt::one();
        let mut acc = (*self.legs(&with_leg(long + short))).clone();
        for k in 0..short {
            let plus = self.legs(&with_leg(long + k)).multiply(&self.path(short - k));
            acc.add_scaled(&plus, &one).expect("homogeneous");
            let minus = self.legs(&with_leg(k)).multiply(&self.path(long + short - k));
            acc.add_scaled(&minus, &minus_one).expect("homogeneous");
        }
        acc
    }

    pub fn path_count(&self) -> usize {
        self.paths.read().expect("cache poisoned").len()
    }

    pub fn spider_count(&self) -> usize {
        self.spiders.read().expect("cache poisoned").len()
    }

    /// Writes the cache atomically (temporary file, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        out.push_str(CACHE_HEADER);
        out.push('\n');
        let paths = self.paths.read().expect("cache poisoned");
        let mut keys: Vec<&u64> = paths.keys().collect();
        keys.sort_unstable();
        for n in keys {
            out.push_str(&format!("PATH {n}\n{}\n", paths[n].to_canonical_text()));
        }
        drop(paths);
        let spiders = self.spiders.read().expect("cache poisoned");
        let mut keys: Vec<&Partition> = spiders.keys().collect();
        keys.sort_unstable();
        for legs in keys {
            out.push_str(&format!("SPIDER {legs}\n{}\n", spiders[legs].to_canonical_text()));
        }
        drop(spiders);
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(out.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads and validates a cache file. Any malformed or inconsistent record
    /// rejects the whole file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CACHE_HEADER) {
            return Err(Error::Cache("missing or unknown header".into()));
        }
        let cache = CsfCache::new();
        let mut pending: Option<(String, String)> = None;
        let flush = |record: (String, String), cache: &CsfCache| -> Result<()> {
            let (head, body) = record;
            let x = EExpansion::parse_canonical_text(&body).map_err(|e| Error::Cache(format!("{head}: {e}")))?;
            let (kind, key) =
                head.split_once(' ').ok_or_else(|| Error::Cache(format!("bad record header {head:?}")))?;
            match kind {
                "PATH" => {
                    let n: u64 = key.parse().map_err(|_| Error::Cache(format!("bad path length {key:?}")))?;
                    validate_tree_csf(&x, n).map_err(|e| Error::Cache(format!("{head}: {e}")))?;
                    cache.paths.write().expect("cache poisoned").insert(n, Arc::new(x));
                }
                "SPIDER" => {
                    let legs: Partition = key.parse().map_err(|e| Error::Cache(format!("{head}: {e}")))?;
                    if legs.len() < 3 {
                        return Err(Error::Cache(format!("{head}: spiders are cached with three or more legs")));
                    }
                    validate_tree_csf(&x, 1 + legs.weight()).map_err(|e| Error::Cache(format!("{head}: {e}")))?;
                    cache.spiders.write().expect("cache poisoned").insert(legs, Arc::new(x));
                }
                _ => return Err(Error::Cache(format!("unknown record kind {kind:?}"))),
            }
            Ok(())
        };
        for line in lines {
            if line.starts_with("PATH ") || line.starts_with("SPIDER ") {
                if let Some(record) = pending.take() {
                    flush(record, &cache)?;
                }
                pending = Some((line.to_string(), String::new()));
            } else if let Some((_, body)) = pending.as_mut() {
                body.push_str(line);
                body.push('\n');
            } else if !line.trim().is_empty() {
                return Err(Error::Cache(format!("content before first record: {line:?}")));
            }
        }
        if let Some(record) = pending.take() {
            flush(record, &cache)?;
        }
        Ok(cache)
    }
}

/// The checks a stored tree expansion must pass: right degree, and the
/// chromatic polynomial `k(k-1)^{n-1}` at `k = 1, 2, 3`.
fn validate_tree_csf(x: &EExpansion, n: u64) -> Result<()> {
    if x.degree() != n {
        return Err(Error::Cache(format!("degree {} but {n} vertices", x.degree())));
    }
    for k in 1u64..=3 {
        let expected = BigInt::from(k) * BigInt::from(k - 1).pow((n - 1) as u32);
        if x.evaluate_chromatic(k) != expected {
            return Err(Error::Cache(format!("fails the {k}-colouring count")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spider_with_one_leg_is_a_path() {
        let cache = CsfCache::new();
        let s = Spider::from_legs(&[3]).unwrap();
        assert_eq!(*cache.spider(&s), *cache.path(4));
        assert_eq!(cache.spider_count(), 0);
    }

    #[test]
    fn claw_via_recursion() {
        let cache = CsfCache::new();
        let x = cache.spider(&Spider::from_legs(&[1, 1, 1]).unwrap());
        assert_eq!(x.coefficient(&"[2,2]".parse().unwrap()), BigInt::from(-2));
        assert_eq!(x.coefficient(&"[3,1]".parse().unwrap()), BigInt::from(5));
        assert_eq!(cache.spider_count(), 1);
    }

    #[test]
    fn two_one_one_has_three_two_coefficient_one() {
        let cache = CsfCache::new();
        let x = cache.spider(&Spider::from_legs(&[2, 1, 1]).unwrap());
        assert_eq!(x.coefficient(&"[3,2]".parse().unwrap()), BigInt::from(1));
    }

    #[test]
    fn save_load_round_trip() {
        let cache = CsfCache::new();
        cache.spider(&Spider::from_legs(&[3, 2, 1, 1]).unwrap());
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("cache.txt");
        cache.save(&file).unwrap();
        let back = CsfCache::load(&file).unwrap();
        assert_eq!(back.spider_count(), cache.spider_count());
        assert_eq!(back.path_count(), cache.path_count());
        let legs: Partition = "[3,2,1,1]".parse().unwrap();
        assert_eq!(*back.legs(&legs), *cache.legs(&legs));
    }

    #[test]
    fn corrupted_records_are_rejected() {
        let cache = CsfCache::new();
        cache.spider(&Spider::from_legs(&[1, 1, 1]).unwrap());
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("cache.txt");
        cache.save(&file).unwrap();
        let good = fs::read_to_string(&file).unwrap();
        assert!(CsfCache::parse(&good).is_ok());
        assert!(CsfCache::parse(&good.replace("-2 * e[2,2]", "-3 * e[2,2]")).is_err());
        assert!(CsfCache::parse(&good.replace(CACHE_HEADER, "csf-cache v0")).is_err());
        assert!(CsfCache::parse(&good.replace("SPIDER [1,1,1]", "SPIDER [1,1,2]")).is_err());
        assert!(CsfCache::parse(&format!("{good}garbage line\n")).is_err());
        let cut = &good[..good.len() - 8];
        assert!(CsfCache::parse(cut).is_err());
    }
}
