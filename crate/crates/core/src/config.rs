use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size caps and numeric knobs shared by the library entry points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest `C(n, k)` any operation will enumerate.
    pub max_subsets: u64,
    /// Largest Eulerian number `A(n-1, k-1)` (number of maximal simplices).
    pub max_collections: u64,
    /// Mantissa bits of the approximate (float) arithmetic mode.
    pub precision_bits: u32,
    /// The witness search halves epsilon from 1/2 down to `2^-epsilon_cap_exp`.
    pub epsilon_cap_exp: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_subsets: 50_000, max_collections: 2_000_000, precision_bits: 256, epsilon_cap_exp: 40 }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.max_subsets == 0 || self.max_collections == 0 {
            return Err(Error::Parameter("size caps must be positive".into()));
        }
        if !(64..=960).contains(&self.precision_bits) {
            return Err(Error::Parameter(format!("precision must be 64..=960 bits, got {}", self.precision_bits)));
        }
        if self.epsilon_cap_exp == 0 {
            return Err(Error::Parameter("epsilon cap exponent must be positive".into()));
        }
        Ok(())
    }
}
