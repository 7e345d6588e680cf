//! Homogeneous symmetric functions in the elementary and power-sum bases.
//!
//! Both bases are multiplicative (`b_λ b_μ = b_{λ∪μ}`), so a single sparse
//! [`Expansion`] type parameterised by a basis marker carries the arithmetic;
//! only specialisation and rendering differ per basis.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{binomial, Partition};

/// Marker trait for a multiplicative basis of the ring of symmetric functions.
pub trait Basis: Copy + Clone + Default + Send + Sync + 'static {
    const SYMBOL: char;
    /// Image of the degree-`j` generator under `x_1 = … = x_k = 1`, `x_{>k} = 0`.
    fn generator_at_ones(j: u64, k: u64) -> BigInt;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Elementary;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PowerSum;

impl Basis for Elementary {
    const SYMBOL: char = 'e';
    fn generator_at_ones(j: u64, k: u64) -> BigInt {
        binomial(k, j)
    }
}

impl Basis for PowerSum {
    const SYMBOL: char = 'p';
    fn generator_at_ones(_j: u64, k: u64) -> BigInt {
        BigInt::from(k)
    }
}

/// Sparse homogeneous symmetric function `Σ c_λ b_λ` with nonzero integer
/// coefficients. The zero function has degree 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Expansion<B: Basis> {
    degree: u64,
    terms: BTreeMap<Partition, BigInt>,
    _basis: PhantomData<B>,
}

pub type EExpansion = Expansion<Elementary>;
pub type PExpansion = Expansion<PowerSum>;

/// Outcome of an e-positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    /// Reverse-lexicographically first key with a negative coefficient.
    NegativeWitness(Partition, BigInt),
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::Positive)
    }
}

impl<B: Basis> Default for Expansion<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Basis> Expansion<B> {
    pub fn zero() -> Self {
        Self { degree: 0, terms: BTreeMap::new(), _basis: PhantomData }
    }

    /// The constant function 1 (keyed by the empty partition).
    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(Partition::empty(), c)
    }

    pub fn monomial(key: Partition, coeff: BigInt) -> Self {
        let degree = key.weight();
        let mut terms = BTreeMap::new();
        if coeff.is_zero() {
            return Self::zero();
        }
        terms.insert(key, coeff);
        Self { degree, terms, _basis: PhantomData }
    }

    /// Collects terms, summing repeated keys; all keys must share a weight.
    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Result<Self> {
        let mut map: BTreeMap<Partition, BigInt> = BTreeMap::new();
        let mut degree: Option<u64> = None;
        for (key, coeff) in terms {
            let w = key.weight();
            match degree {
                Some(d) if d != w => return Err(Error::DegreeMismatch(d, w)),
                _ => degree = Some(w),
            }
            *map.entry(key).or_default() += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self::from_map(degree.unwrap_or(0), map))
    }

    fn from_map(degree: u64, terms: BTreeMap<Partition, BigInt>) -> Self {
        let degree = if terms.is_empty() { 0 } else { degree };
        Self { degree, terms, _basis: PhantomData }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic key order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in reverse-lexicographic key order (the reporting order).
    pub fn iter_revlex(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter().rev()
    }

    /// `[b_key] f`; zero when absent or of the wrong weight.
    pub fn coefficient(&self, key: &Partition) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    fn check_compatible(&self, other: &Self) -> Result<u64> {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => Ok(other.degree),
            (_, true) => Ok(self.degree),
            _ if self.degree == other.degree => Ok(self.degree),
            _ => Err(Error::DegreeMismatch(self.degree, other.degree)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one())?;
        Ok(out)
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &BigInt) -> Result<()> {
        let degree = self.check_compatible(other)?;
        if scale.is_zero() {
            return Ok(());
        }
        for (key, c) in &other.terms {
            let entry = self.terms.entry(key.clone()).or_default();
            *entry += c * scale;
            if entry.is_zero() {
                self.terms.remove(key);
            }
        }
        self.degree = if self.terms.is_empty() { 0 } else { degree };
        Ok(())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        Self::from_map(self.degree, terms)
    }

    /// Product in the basis: coefficients multiply, keys take multiset union.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                *terms.entry(ka.union(kb)).or_default() += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_map(self.degree + other.degree, terms)
    }

    /// Σ c_λ Π_i g(λ_i) where `g` is the basis generator at `x_1..x_k = 1`.
    pub fn evaluate_at_ones(&self, k: u64) -> BigInt {
        let mut cache: BTreeMap<u64, BigInt> = BTreeMap::new();
        let mut total = BigInt::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for &part in key.parts() {
                let g = cache.entry(part).or_insert_with(|| B::generator_at_ones(part, k));
                term *= &*g;
            }
            total += term;
        }
        total
    }

    /// One `<coefficient> * e[<parts>]` line per term, reverse-lexicographic.
    pub fn to_canonical_text(&self) -> String {
        let mut out = String::new();
        for (key, c) in self.iter_revlex() {
            out.push_str(&format!("{c} * {}{key}\n", B::SYMBOL));
        }
        out
    }

    /// Inverse of [`Self::to_canonical_text`]; blank lines are ignored.
    pub fn parse_canonical_text(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || Error::Parse(format!("bad expansion line {line:?}"));
            let (coeff, key) = line.split_once('*').ok_or_else(bad)?;
            let coeff: BigInt = coeff.trim().parse().map_err(|_| bad())?;
            let key = key.trim().strip_prefix(B::SYMBOL).ok_or_else(bad)?;
            if !key.starts_with('[') {
                return Err(bad());
            }
            let key: Partition = key.parse()?;
            if coeff.is_zero() {
                return Err(Error::Parse(format!("zero coefficient stored in {line:?}")));
            }
            terms.push((key, coeff));
        }
        let n = terms.len();
        let out = Self::from_terms(terms)?;
        if out.len() != n {
            return Err(Error::Parse("repeated key in expansion text".into()));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expansion serialises")
    }
}

impl EExpansion {
    /// ∀λ: `[e_λ] ≥ 0`; otherwise the first negative term in report order.
    pub fn is_e_positive(&self) -> Positivity {
        match self.iter_revlex().find(|(_, c)| c.is_negative()) {
            None => Positivity::Positive,
            Some((k, c)) => Positivity::NegativeWitness(k.clone(), c.clone()),
        }
    }

    /// Number of proper `k`-colourings when `self` is a chromatic symmetric function.
    pub fn evaluate_chromatic(&self, k: u64) -> BigInt {
        self.evaluate_at_ones(k)
    }

    /// `e_key · self`, cheaper than a general product.
    fn times_generator(&self, part: u64) -> Self {
        let single = Partition::from_sorted_unchecked(vec![part]);
        let terms = self.terms.iter().map(|(k, c)| (k.union(&single), c.clone())).collect();
        Self::from_map(self.degree + part, terms)
    }
}

impl<B: Basis> fmt::Debug for Expansion<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expansion(deg {}) {{", self.degree)?;
        for (i, (k, c)) in self.iter_revlex().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}·{}{k}", B::SYMBOL)?;
        }
        f.write_str("}")
    }
}

impl<B: Basis> fmt::Display for Expansion<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_text())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: Partition,
    coeff: String,
}

impl<B: Basis> Serialize for Expansion<B> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> =
            self.iter_revlex().map(|(k, c)| JsonTerm { partition: k.clone(), coeff: c.to_string() }).collect();
        terms.serialize(serializer)
    }
}

impl<'de, B: Basis> Deserialize<'de> for Expansion<B> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<JsonTerm>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            terms.push((t.partition, c));
        }
        Expansion::from_terms(terms).map_err(D::Error::custom)
    }
}

/// `p_k` in the elementary basis, by the Newton recurrence
/// `p_k = (-1)^{k-1} k e_k + Σ_{i<k} (-1)^{i-1} e_i p_{k-i}`.
///
/// Results are memoised process-wide; the table only grows.
pub fn power_sum_in_e(k: u64) -> Arc<EExpansion> {
    static TABLE: OnceLock<RwLock<Vec<Arc<EExpansion>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![Arc::new(EExpansion::one())]));
    let idx = k as usize;
    if let Some(found) = table.read().expect("newton table poisoned").get(idx) {
        return Arc::clone(found);
    }
    let mut guard = table.write().expect("newton table poisoned");
    while guard.len() <= idx {
        let k = guard.len() as u64;
        let sign = |j: u64| if j % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let mut pk = EExpansion::monomial(Partition::from_sorted_unchecked(vec![k]), sign(k) * BigInt::from(k));
        for i in 1..k {
            let term = guard[(k - i) as usize].times_generator(i);
            pk.add_scaled(&term, &sign(i)).expect("homogeneous by construction");
        }
        guard.push(Arc::new(pk));
    }
    Arc::clone(&guard[idx])
}

/// Change of basis from power sums to elementary symmetric functions.
pub fn p_to_e(p: &PExpansion) -> EExpansion {
    let terms: Vec<(&[u64], &BigInt)> = p.iter().map(|(k, c)| (k.parts(), c)).collect();
    if terms.is_empty() {
        return EExpansion::zero();
    }
    convert_grouped(&terms, p.degree() >= 14)
}

// Terms arrive sorted lexicographically, so keys sharing a largest part are
// contiguous; each group is converted as p_k · (conversion of the remainders).
fn convert_grouped(terms: &[(&[u64], &BigInt)], parallel: bool) -> EExpansion {
    if terms.len() == 1 && terms[0].0.is_empty() {
        return EExpansion::constant(terms[0].1.clone());
    }
    let mut groups: Vec<&[(&[u64], &BigInt)]> = Vec::new();
    let mut start = 0;
    for i in 1..=terms.len() {
        if i == terms.len() || terms[i].0[0] != terms[start].0[0] {
            groups.push(&terms[start..i]);
            start = i;
        }
    }
    let convert_group = |group: &[(&[u64], &BigInt)]| -> EExpansion {
        let k = group[0].0[0];
        let rest: Vec<(&[u64], &BigInt)> = group.iter().map(|&(s, c)| (&s[1..], c)).collect();
        let inner = convert_grouped(&rest, false);
        power_sum_in_e(k).multiply(&inner)
    };
    let parts: Vec<EExpansion> = if parallel {
        groups.par_iter().map(|g| convert_group(g)).collect()
    } else {
        groups.iter().map(|g| convert_group(g)).collect()
    };
    let mut acc = EExpansion::zero();
    for part in &parts {
        acc.add_scaled(part, &BigInt::one()).expect("homogeneous by construction");
    }
    acc
}
