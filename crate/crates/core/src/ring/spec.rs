use serde::{Deserialize, Serialize};

/// Declarative description of a finite ring, as read from a ring spec file.
///
/// ```json
/// {"kind": "modular-integers", "n": 4}
/// {"kind": "quotient-polynomial", "p": 2, "modulus": [1, 1, 1]}
/// {"kind": "explicit-tables", "add": [...], "mul": [...], "zero": 0, "one": 1}
/// {"kind": "truncated-power-series", "base": {"kind": "modular-integers", "n": 2}, "precision": 3}
/// ```
///
/// Polynomial moduli list coefficients from the constant term upwards.
/// Explicit tables are row-major, either flat (`n*n` entries) or as rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(flatten)]
    pub kind: RingKind,
    /// Display name for each element, indexed by canonical element index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingKind {
    ModularIntegers {
        n: u64,
    },
    QuotientPolynomial {
        p: u64,
        modulus: Vec<u64>,
    },
    ExplicitTables {
        add: Table,
        mul: Table,
        zero: u64,
        one: u64,
    },
    TruncatedPowerSeries {
        base: Box<RingSpec>,
        precision: usize,
    },
}

/// An operation table in either flat row-major or row-of-rows form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Table {
    Flat(Vec<u64>),
    Rows(Vec<Vec<u64>>),
}

impl Table {
    /// Flattens to row-major order, checking the table is `n x n` for some n.
    pub(crate) fn flatten(&self, which: &str) -> Result<(usize, Vec<u64>), String> {
        match self {
            Table::Flat(v) => {
                let n = (v.len() as f64).sqrt().round() as usize;
                if n * n != v.len() {
                    return Err(format!(
                        "{which} table has {} entries, not a perfect square",
                        v.len()
                    ));
                }
                Ok((n, v.clone()))
            }
            Table::Rows(rows) => {
                let n = rows.len();
                if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                    return Err(format!(
                        "{which} table is ragged: row {i} has {} entries, expected {n}",
                        row.len()
                    ));
                }
                Ok((n, rows.iter().flatten().copied().collect()))
            }
        }
    }
}

impl RingSpec {
    pub fn new(kind: RingKind) -> Self {
        RingSpec {
            kind,
            names: None,
            label: None,
        }
    }

    pub fn modular(n: u64) -> Self {
        Self::new(RingKind::ModularIntegers { n })
    }

    pub fn quotient_polynomial(p: u64, modulus: Vec<u64>) -> Self {
        Self::new(RingKind::QuotientPolynomial { p, modulus })
    }

    pub fn truncated_series(base: RingSpec, precision: usize) -> Self {
        Self::new(RingKind::TruncatedPowerSeries {
            base: Box::new(base),
            precision,
        })
    }

    pub fn explicit(add: Vec<u64>, mul: Vec<u64>, zero: u64, one: u64) -> Self {
        Self::new(RingKind::ExplicitTables {
            add: Table::Flat(add),
            mul: Table::Flat(mul),
            zero,
            one,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let z4: RingSpec = serde_json::from_str(r#"{"kind":"modular-integers","n":4}"#).unwrap();
        assert_eq!(z4, RingSpec::modular(4));

        let f4: RingSpec =
            serde_json::from_str(r#"{"kind":"quotient-polynomial","p":2,"modulus":[1,1,1]}"#)
                .unwrap();
        assert_eq!(f4, RingSpec::quotient_polynomial(2, vec![1, 1, 1]));

        let rows: RingSpec = serde_json::from_str(
            r#"{"kind":"explicit-tables","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"zero":0,"one":1,"names":["0","1"]}"#,
        )
        .unwrap();
        assert_eq!(
            rows.names.as_deref(),
            Some(&["0".to_string(), "1".to_string()][..])
        );

        let series: RingSpec = serde_json::from_str(
            r#"{"kind":"truncated-power-series","base":{"kind":"modular-integers","n":2},"precision":3}"#,
        )
        .unwrap();
        assert_eq!(series, RingSpec::truncated_series(RingSpec::modular(2), 3));
    }

    #[test]
    fn round_trips() {
        let spec = RingSpec::truncated_series(RingSpec::quotient_polynomial(3, vec![0, 0, 1]), 2)
            .with_label("F3[t]/(t^2)[[x]]/(x^2)");
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(RingSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn ragged_rows_rejected() {
        let t = Table::Rows(vec![vec![0, 1], vec![1]]);
        assert!(t.flatten("add").unwrap_err().contains("ragged"));
        assert!(Table::Flat(vec![0, 1, 2]).flatten("mul").is_err());
    }
}
