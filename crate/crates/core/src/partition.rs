//! Integer partitions.
//!
//! A [`Partition`] is a value object whose parts are kept weakly decreasing
//! from construction on, so every other module can treat the part vector as
//! canonical (it is the map key of every symmetric-function expansion).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
///
/// The derived ordering is lexicographic on the part vector; for two
/// partitions of the same weight this is the usual lexicographic order, so
/// reverse-lexicographic reporting is plain reverse iteration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} contains a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Builds a partition from parts in any order, silently dropping zeros.
    pub fn from_parts_lossy(parts: impl IntoIterator<Item = u64>) -> Self {
        let mut parts: Vec<u64> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Caller guarantees parts are positive and weakly decreasing.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// `value^count`.
    pub fn repeated(value: u64, count: usize) -> Self {
        if value == 0 {
            return Self::empty();
        }
        Self { parts: vec![value; count] }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> Option<u64> {
        self.parts.first().copied()
    }

    pub fn multiplicity(&self, value: u64) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Run-length form: `(value, multiplicity)` with strictly decreasing values.
    pub fn exponential_form(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn from_exponential_form(pairs: &[(u64, usize)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(value, mult) in pairs {
            parts.extend(std::iter::repeat_n(value, mult));
        }
        Self::new(parts)
    }

    /// Each part reduced modulo `m`, in part order.
    ///
    /// # Panics
    /// If `m <= 1`.
    pub fn residue_vector(&self, m: u64) -> Vec<u64> {
        assert!(m > 1, "residue modulus must exceed 1, got {m}");
        self.parts.iter().map(|&p| p % m).collect()
    }

    /// Replaces parts `i` and `j` by their sum.
    pub fn combine_parts(&self, i: usize, j: usize) -> Result<Self> {
        let len = self.parts.len();
        if i == j || i >= len || j >= len {
            return Err(Error::InvalidIndex { i, j, len });
        }
        let mut parts: Vec<u64> =
            self.parts.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &p)| p).collect();
        parts.push(self.parts[i] + self.parts[j]);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.parts, &other.parts);
        let mut parts = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            if a[x] >= b[y] {
                parts.push(a[x]);
                x += 1;
            } else {
                parts.push(b[y]);
                y += 1;
            }
        }
        parts.extend_from_slice(&a[x..]);
        parts.extend_from_slice(&b[y..]);
        Self { parts }
    }

    /// Renders as `3^2 2 1^4`.
    pub fn to_exponential_string(&self) -> String {
        self.exponential_form()
            .iter()
            .map(|&(v, m)| if m == 1 { v.to_string() } else { format!("{v}^{m}") })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Reverse-lexicographic comparison: `Less` means `self` is reported first.
    pub fn revlex_cmp(&self, other: &Self) -> Ordering {
        other.cmp(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `[4,3,3]`, `4,3,3`, `3^2 2 1^4`, `[]` and the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a partition: {s:?}"));
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(bad()),
        };
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        if inner.contains(',') {
            for tok in inner.split(',') {
                parts.push(tok.trim().parse::<u64>().map_err(|_| bad())?);
            }
        } else {
            for tok in inner.split_whitespace() {
                match tok.split_once('^') {
                    Some((v, m)) => {
                        let v = v.parse::<u64>().map_err(|_| bad())?;
                        let m = m.parse::<usize>().map_err(|_| bad())?;
                        parts.extend(std::iter::repeat_n(v, m));
                    }
                    None => parts.push(tok.parse::<u64>().map_err(|_| bad())?),
                }
            }
        }
        Self::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Every partition of `n`, once each, in reverse-lexicographic order.
pub fn partitions_of(n: u64) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

/// Iterator returned by [`partitions_of`].
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u64>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_sorted_unchecked(current))
    }
}

fn successor(parts: &[u64]) -> Option<Vec<u64>> {
    // rightmost part that can be decreased
    let k = parts.iter().rposition(|&p| p > 1)?;
    let value = parts[k] - 1;
    let mut remaining: u64 = parts[k + 1..].iter().sum::<u64>() + 1;
    let mut out = parts[..k].to_vec();
    out.push(value);
    while remaining > 0 {
        let take = remaining.min(value);
        out.push(take);
        remaining -= take;
    }
    Some(out)
}

/// `(Σ counts)! / Π counts_i!`.
pub fn multinomial(counts: &[u64]) -> BigInt {
    // product of binomials, each computed incrementally so it stays exact
    let mut acc = BigInt::one();
    let mut total: u64 = 0;
    for &c in counts {
        for k in 1..=c {
            total += 1;
            acc *= total;
            acc /= k;
        }
    }
    acc
}

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_small_cases() {
        assert_eq!(partitions_of(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        let four: Vec<_> = partitions_of(4).collect();
        assert_eq!(four, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(partitions_of(10).count(), 42);
    }

    #[test]
    fn exponential_form_examples() {
        assert_eq!(p(&[3, 2, 2, 1]).exponential_form(), vec![(3, 1), (2, 2), (1, 1)]);
        assert!(Partition::empty().exponential_form().is_empty());
        assert_eq!(p(&[2, 2, 2]).exponential_form(), vec![(2, 3)]);
    }

    #[test]
    fn residues() {
        assert_eq!(p(&[5, 3, 1]).residue_vector(2), vec![1, 1, 1]);
        assert_eq!(p(&[6, 4, 2]).residue_vector(3), vec![0, 1, 2]);
        assert_eq!(p(&[2, 2, 2]).residue_vector(2), vec![0, 0, 0]);
    }

    #[test]
    #[should_panic]
    fn residue_modulus_one_panics() {
        p(&[3]).residue_vector(1);
    }

    #[test]
    fn combining_parts() {
        assert_eq!(p(&[3, 2, 1]).combine_parts(1, 2).unwrap(), p(&[3, 3]));
        let n = 7;
        assert_eq!(p(&[n, n - 1, 1]).combine_parts(1, 2).unwrap(), p(&[n, n]));
        for (i, j) in [(0, 1), (0, 2), (2, 1)] {
            assert_eq!(p(&[2, 2, 2]).combine_parts(i, j).unwrap(), p(&[4, 2]));
        }
        assert!(p(&[2, 2]).combine_parts(0, 0).is_err());
        assert!(p(&[2, 2]).combine_parts(0, 2).is_err());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&[1, 1]), BigInt::from(2));
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[3, 3, 3]), BigInt::from(1680));
        assert_eq!(multinomial(&[]), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    #[test]
    fn rendering_and_parsing() {
        let q = p(&[3, 3, 2, 1, 1, 1, 1]);
        assert_eq!(q.to_string(), "[3,3,2,1,1,1,1]");
        assert_eq!(q.to_exponential_string(), "3^2 2 1^4");
        assert_eq!("3^2 2 1^4".parse::<Partition>().unwrap(), q);
        assert_eq!("[3,3,2,1,1,1,1]".parse::<Partition>().unwrap(), q);
        assert_eq!("1,2".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[3,0]".parse::<Partition>().is_err());
        assert!("[3,x]".parse::<Partition>().is_err());
        assert!("[3,1".parse::<Partition>().is_err());
    }

    #[test]
    fn construction_sorts_and_rejects_zero() {
        assert_eq!(p(&[1, 3, 2]).parts(), &[3, 2, 1]);
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_parts_lossy([0, 2, 0, 5]), p(&[5, 2]));
    }
}
