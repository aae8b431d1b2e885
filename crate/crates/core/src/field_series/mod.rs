//! Exact arithmetic over a prime field: scalars, roots of unity, truncated
//! power and Laurent series, and the two rings attached to a node.

mod fp;
mod laurent;
mod nodal;
mod power;
mod ring;

use serde::{Deserialize, Serialize};

pub use fp::{
    check_prime, discrete_log, is_prime, primitive_eth_root, smallest_primitive_root, Fp,
};
pub use laurent::LaurentSeries;
pub use nodal::{NodalQuotientElement, NodalRingElement};
pub use power::PowerSeries;
pub use ring::{Ring, Twist};

use crate::error::Result;

/// Wire form of a series: `{"lowest": int, "coeffs": [int], "precision": int}`.
///
/// Coefficients are residues in `[0, p)`. A missing precision is filled in
/// from the caller's default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(default)]
    pub lowest: i64,
    pub coeffs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

impl SeriesJson {
    pub fn to_laurent(&self, modulus: u64, default_precision: i64) -> LaurentSeries {
        LaurentSeries::from_ints(
            self.lowest,
            &self.coeffs,
            self.precision.unwrap_or(default_precision),
            modulus,
        )
    }

    pub fn to_power(&self, modulus: u64, default_precision: i64) -> Result<PowerSeries> {
        self.to_laurent(modulus, default_precision).to_power_series()
    }
}

impl From<&LaurentSeries> for SeriesJson {
    fn from(s: &LaurentSeries) -> Self {
        SeriesJson {
            lowest: s.lowest(),
            coeffs: s.coeffs().iter().map(|c| c.value() as i64).collect(),
            precision: Some(s.precision()),
        }
    }
}

impl From<&PowerSeries> for SeriesJson {
    fn from(s: &PowerSeries) -> Self {
        SeriesJson {
            lowest: 0,
            coeffs: s.coeffs().iter().map(|c| c.value() as i64).collect(),
            precision: Some(s.precision() as i64),
        }
    }
}

impl Serialize for Fp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value())
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(serializer)
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_json_shape() {
        let s = LaurentSeries::from_ints(-1, &[1, 0, 6], 4, 7);
        let j = SeriesJson::from(&s);
        assert_eq!(j.lowest, -1);
        assert_eq!(j.coeffs, vec![1, 0, 6]);
        assert_eq!(j.precision, Some(4));
        assert!(j.to_laurent(7, 0).eq_exact(&s));
        let p = PowerSeries::from_ints(&[1, 2], 7, 2);
        assert_eq!(SeriesJson::from(&p).coeffs, vec![1, 2, 0]);
    }
}
