use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};
use crate::hydrodyn::SeaState;

/// Allowed excess of the summed probabilities over one.
pub const PROBABILITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClimateState {
    pub sea: SeaState,
    /// Annual probability of occurrence.
    pub probability: f64,
}

/// Occurrence-weighted set of sea states at a site. Row order is
/// significant: entry `k` of the PTO stiffness and damping vectors is the
/// setting for state `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveClimate {
    pub label: String,
    states: Vec<ClimateState>,
}

#[derive(Debug, Deserialize)]
struct Row {
    hs: f64,
    tp: f64,
    probability: f64,
}

impl WaveClimate {
    pub fn new(label: impl Into<String>, states: Vec<ClimateState>) -> Result<Self> {
        if states.is_empty() {
            return Err(WecError::Domain("wave climate has no sea states".into()));
        }
        let mut total = 0.0;
        for (i, s) in states.iter().enumerate() {
            s.sea.validate()?;
            if !(s.probability.is_finite() && s.probability >= 0.0) {
                return Err(WecError::Domain(format!(
                    "sea state {i} has invalid probability {}",
                    s.probability
                )));
            }
            total += s.probability;
        }
        if total > 1.0 + PROBABILITY_SLACK {
            return Err(WecError::Domain(format!("probabilities sum to {total} > 1")));
        }
        Ok(Self {
            label: label.into(),
            states,
        })
    }

    /// Single sea state with probability one.
    pub fn single(sea: SeaState) -> Self {
        Self {
            label: format!("hs{}_tp{}", sea.hs, sea.tp),
            states: vec![ClimateState {
                sea,
                probability: 1.0,
            }],
        }
    }

    pub fn states(&self) -> &[ClimateState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.states.iter().map(|s| s.probability).sum()
    }

    /// Parses the `hs,tp,probability` CSV format; `origin` names the source
    /// in error messages.
    pub fn from_csv(text: &str, origin: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| WecError::parse(origin, 1, e.to_string()))?
            .clone();
        if !headers.iter().eq(["hs", "tp", "probability"]) {
            return Err(WecError::parse(origin, 1, "header must be `hs,tp,probability`"));
        }

        let mut states: Vec<ClimateState> = Vec::new();
        let mut total = 0.0;
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                WecError::parse(origin, line, e.to_string())
            })?;
            let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
            let row: Row = record
                .deserialize(Some(&headers))
                .map_err(|e| WecError::parse(origin, line, e.to_string()))?;
            let sea =
                SeaState::new(row.hs, row.tp).map_err(|e| WecError::parse(origin, line, e.to_string()))?;
            if !(row.probability.is_finite() && row.probability >= 0.0) {
                return Err(WecError::parse(
                    origin,
                    line,
                    format!("invalid probability {}", row.probability),
                ));
            }
            if states.iter().any(|s| s.sea == sea) {
                return Err(WecError::parse(
                    origin,
                    line,
                    format!("duplicate sea state (hs = {}, tp = {})", row.hs, row.tp),
                ));
            }
            total += row.probability;
            if total > 1.0 + PROBABILITY_SLACK {
                return Err(WecError::parse(
                    origin,
                    line,
                    format!("probabilities sum to {total} > 1"),
                ));
            }
            states.push(ClimateState {
                sea,
                probability: row.probability,
            });
        }
        let label = Path::new(origin)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| origin.to_string());
        Self::new(label, states).map_err(|e| WecError::parse(origin, 0, e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("hs,tp,probability\n");
        for s in &self.states {
            out.push_str(&format!("{},{},{}\n", s.sea.hs, s.sea.tp, s.probability));
        }
        out
    }
}

/// Reads a climate CSV from disk.
pub fn load_climate(path: impl AsRef<Path>) -> Result<WaveClimate> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| WecError::io(path, e))?;
    WaveClimate::from_csv(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let c = WaveClimate::from_csv("hs,tp,probability\n3.0,8.0,1.0\n", "one.csv").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.total_probability(), 1.0);
        assert_eq!(c.label, "one");
    }

    #[test]
    fn thirty_four_states_summing_below_one() {
        let mut text = String::from("hs,tp,probability\n");
        for i in 0..34 {
            let hs = 1.0 + 0.25 * (i % 8) as f64;
            let tp = 7.0 + (i / 8) as f64;
            text.push_str(&format!("{hs},{tp},{}\n", 0.99 / 34.0));
        }
        let c = WaveClimate::from_csv(&text, "site.csv").unwrap();
        assert_eq!(c.len(), 34);
        assert!((c.total_probability() - 0.99).abs() < 1e-12);
    }

    #[test]
    fn sum_above_one_names_row() {
        let text = "hs,tp,probability\n1,8,0.5\n2,9,0.4\n3,10,0.3\n";
        match WaveClimate::from_csv(text, "c.csv") {
            Err(WecError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_and_duplicate_rows() {
        let neg = "hs,tp,probability\n1,8,0.5\n2,9,-0.1\n";
        assert!(matches!(
            WaveClimate::from_csv(neg, "c"),
            Err(WecError::Parse { line: 3, .. })
        ));
        let dup = "hs,tp,probability\n1,8,0.2\n2,9,0.2\n1,8,0.1\n";
        assert!(matches!(
            WaveClimate::from_csv(dup, "c"),
            Err(WecError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn bad_header_and_empty() {
        assert!(WaveClimate::from_csv("h,t,p\n1,8,1\n", "c").is_err());
        assert!(WaveClimate::from_csv("hs,tp,probability\n", "c").is_err());
        assert!(WaveClimate::from_csv("hs,tp,probability\n1,x,0.5\n", "c").is_err());
    }

    #[test]
    fn order_preserved_and_round_trips() {
        let text = "hs,tp,probability\n2.5,11,0.3\n1,6,0.2\n";
        let c = WaveClimate::from_csv(text, "c").unwrap();
        assert_eq!(c.states()[0].sea.hs, 2.5);
        assert_eq!(
            WaveClimate::from_csv(&c.to_csv(), "c").unwrap().states(),
            c.states()
        );
    }
}
