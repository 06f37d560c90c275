use serde_json::Value;

use super::FMatrix;
use crate::error::{Error, Result};
use crate::ring::{ElementId, FiniteRing};

/// Parses `[[a,b],[c,d]]` or `{"a":..,"b":..,"c":..,"d":..}`; entries are
/// canonical indices or element names.
pub fn parse_matrix(ring: &FiniteRing, text: &str) -> Result<FMatrix> {
    let text = text.trim();
    if text.starts_with('{') {
        return parse_object(ring, text);
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(|| Error::Parse(format!("expected [[a,b],[c,d]], got {text:?}")))?;
    let rows: Vec<&str> = inner.split("],[").collect();
    let entries: Vec<&str> = rows.iter().flat_map(|row| row.split(',')).collect();
    if rows.len() != 2 || entries.len() != 4 || rows.iter().any(|r| r.split(',').count() != 2) {
        return Err(Error::Parse(format!("expected a 2x2 matrix, got {text:?}")));
    }
    let e = entries
        .iter()
        .map(|t| ring.parse_element(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(FMatrix::new(e[0], e[1], e[2], e[3]))
}

fn parse_object(ring: &FiniteRing, text: &str) -> Result<FMatrix> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    let entry = |key: &str| -> Result<ElementId> {
        match value.get(key) {
            Some(Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| {
                    Error::Parse(format!("entry {key:?} must be a non-negative integer"))
                })
                .and_then(|i| ring.element(i)),
            Some(Value::String(s)) => ring.parse_element(s),
            Some(_) => Err(Error::Parse(format!(
                "entry {key:?} must be an index or a name"
            ))),
            None => Err(Error::Parse(format!("matrix JSON lacks entry {key:?}"))),
        }
    };
    Ok(FMatrix::new(
        entry("a")?,
        entry("b")?,
        entry("c")?,
        entry("d")?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    #[test]
    fn literal_and_json_forms() {
        let r = build_ring(&RingSpec::quotient_polynomial(2, vec![0, 0, 1])).unwrap();
        let m = parse_matrix(&r, "[[1+t, 0], [t, 1]]").unwrap();
        assert_eq!(m, FMatrix::from_indices([3, 0, 2, 1]));
        let j = parse_matrix(&r, r#"{"a": "1+t", "b": 0, "c": 2, "d": "1"}"#).unwrap();
        assert_eq!(j, m);
    }

    #[test]
    fn malformed_input_rejected() {
        let r = build_ring(&RingSpec::modular(4)).unwrap();
        for bad in [
            "[[1,2],[3]]",
            "[1,2,3,4]",
            "[[1,2],[3,9]]",
            r#"{"a":1}"#,
            "[[1,2,3],[0,0]]",
        ] {
            assert!(parse_matrix(&r, bad).is_err(), "{bad}");
        }
    }
}
