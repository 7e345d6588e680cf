//! One-sided non-e-positivity tests for spiders and trees.
//!
//! Every test either stays silent or fires with a witness: a type of
//! connected partition the graph lacks, a negative e-coefficient, or the
//! instantiated inequality that fails.

mod battery;
mod degree;
mod spider;

pub use battery::{run_battery, tree_battery, BatteryMode, BatteryOptions, BatteryReport, TreeBatteryReport, Verdict};
pub use degree::degree_sum_reaches_one;
pub use spider::{
    degree_bound, four_leg_q, mod_scan, mod_test, qm_instance, qm_test, qm_unit, six_leg, sqrt_bound, two_odd_legs,
    variety_condition_one_weak, variety_conditions, SixLegSource,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    MissingType {
        partition: Partition,
    },
    NegativeCoefficient {
        partition: Partition,
        #[serde(with = "bigint_string")]
        coeff: BigInt,
    },
    Inequality {
        text: String,
    },
}

impl Witness {
    pub fn missing_type(&self) -> Option<&Partition> {
        match self {
            Witness::MissingType { partition } => Some(partition),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Witness::MissingType { partition } => format!("missing type ({})", partition.to_exponential_string()),
            Witness::NegativeCoefficient { partition, coeff } => {
                format!("[e({})] = {coeff}", partition.to_exponential_string())
            }
            Witness::Inequality { text } => text.clone(),
        }
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of a single test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub name: String,
    pub triggered: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub params: BTreeMap<String, serde_json::Value>,
    /// Set once the witness has been re-checked independently.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verified: Option<bool>,
}

impl CriterionReport {
    pub fn silent(name: &str) -> Self {
        Self { name: name.to_string(), triggered: false, witness: None, params: BTreeMap::new(), verified: None }
    }

    pub fn fired(name: &str, witness: Witness) -> Self {
        Self { triggered: true, witness: Some(witness), ..Self::silent(name) }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}
