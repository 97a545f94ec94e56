//! Machine-readable report documents emitted by the command-line front end.
//! Every numeric field carries the tolerance it was computed under, floats
//! are rounded to 12 significant digits, and documents are schema-versioned
//! and byte-stable across runs for identical inputs and seeds.

use serde::Serialize;

use crate::bounds::GaugeClass;
use crate::rounding::RoundingResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits, the printing precision of all floats.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap()
}

/// A numeric result tagged with the tolerance used to compute or compare it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tagged {
    pub value: f64,
    pub tol: f64,
}

impl Tagged {
    pub fn new(value: f64, tol: f64) -> Tagged {
        Tagged { value: round_sig(value), tol }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeSection {
    pub classes: usize,
    pub degrees: Vec<i64>,
    /// First eigenmatrix rows (degree row first, decreasing second column).
    pub p: Vec<Vec<f64>>,
    pub multiplicities: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureSection {
    pub classes: usize,
    pub fibers: usize,
    pub homogeneous: bool,
    pub commutative: bool,
    pub symmetric: bool,
    /// How the adjacency matrix relates to the closure: "belongs",
    /// "splits", or "neither".
    pub membership: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fcc: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qp: Option<i64>,
    /// Reasons for skipped oracle computations ("skipped (size)").
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped: Vec<String>,
}

/// Full per-graph document for the analyze command.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub closure: ClosureSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_unavailable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_dual: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_dual_lp: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_equals_edges: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    /// fcc / eta_dual when both are present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fcc_ratio: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounding: Option<RoundingResult>,
}

/// Full document for the gamma command.
#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub schema_version: u32,
    pub graph: String,
    pub second: String,
    pub n: usize,
    pub edges_first: usize,
    pub edges_second: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_unavailable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_dual: Option<Tagged>,
    /// "closed-form" when the distance-regular hypothesis applied, else "lp".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_dual_method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<GaugeClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounding: Option<RoundingResult>,
}

/// One batch row; failures are recorded in-row and processing continues.
#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub index: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_dual: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<Tagged>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<GaugeClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BatchRow {
    pub fn csv_header() -> &'static str {
        "index,graph6,n,edges,gamma,gamma_dual,product,pair_edges,classification,error"
    }

    pub fn to_csv(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or(String::new(), T::to_string)
        }
        let class = self.classification.map(|c| match c {
            GaugeClass::Equality => "equality",
            GaugeClass::Strict => "strict",
        });
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.index,
            csv_escape(&self.graph6),
            opt(&self.n),
            opt(&self.edges),
            opt(&self.gamma.map(|t| t.value)),
            opt(&self.gamma_dual.map(|t| t.value)),
            opt(&self.product.map(|t| t.value)),
            opt(&self.pair_edges),
            opt(&class),
            csv_escape(&opt(&self.error)),
        )
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub schema_version: u32,
    pub graphs: usize,
    pub equality: usize,
    pub strict: usize,
    pub failed: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_significant_digits() {
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(12.5), 12.5);
        assert_eq!(round_sig(-49.5), -49.5);
        assert_eq!(round_sig(1.23456789012345e-7), 1.23456789012e-7);
    }

    #[test]
    fn tagged_serializes_value_and_tol() {
        let t = Tagged::new(1.0 / 3.0, 1e-7);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"value":0.333333333333,"tol":1e-7}"#);
    }

    #[test]
    fn csv_rows_escape_fields() {
        let row = BatchRow {
            index: 3,
            graph6: "D?{".into(),
            n: Some(5),
            edges: Some(4),
            gamma: None,
            gamma_dual: None,
            product: None,
            pair_edges: None,
            classification: None,
            error: Some("bad, \"thing\"".into()),
        };
        let csv = row.to_csv();
        assert!(csv.starts_with("3,D?{,5,4,,,,,,"));
        assert!(csv.contains("\"bad, \"\"thing\"\"\""));
    }
}
