//! Truncated power series rings R[[x]]/(x^N).
//!
//! A series r0 + r1 x + ... + r_{N-1} x^{N-1} has index
//! `r0 + |R| r1 + |R|^2 r2 + ...`, so constants keep their base index.

use super::{ElementId, FiniteRing, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SeriesRing {
    pub ring: FiniteRing,
    base_size: usize,
    precision: usize,
}

impl SeriesRing {
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// The constant series `r`.
    pub fn embed(&self, r: ElementId) -> ElementId {
        r
    }

    /// The constant term `r0`.
    pub fn eval_at_zero(&self, series: ElementId) -> ElementId {
        ElementId((series.index() % self.base_size) as u16)
    }

    pub fn coefficients(&self, series: ElementId) -> Vec<ElementId> {
        let mut x = series.index();
        (0..self.precision)
            .map(|_| {
                let c = x % self.base_size;
                x /= self.base_size;
                ElementId(c as u16)
            })
            .collect()
    }

    /// Builds a series from its leading coefficients; missing ones are zero.
    pub fn from_coefficients(&self, coeffs: &[ElementId]) -> Result<ElementId> {
        if coeffs.len() > self.precision {
            return Err(Error::InvalidSpec(format!(
                "{} coefficients given for precision {}",
                coeffs.len(),
                self.precision
            )));
        }
        let idx = coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, c| acc * self.base_size + c.index());
        Ok(ElementId(idx as u16))
    }
}

/// Builds R[[x]]/(x^N) over an existing ring.
pub fn truncated_power_series(base: &FiniteRing, precision: usize) -> Result<SeriesRing> {
    if precision < 1 {
        return Err(Error::InvalidSpec(
            "truncated-power-series needs precision >= 1".into(),
        ));
    }
    let spec = RingSpec::truncated_series(base.spec().clone(), precision);
    build_series(base, precision, spec)
}

pub(super) fn build_series(
    base: &FiniteRing,
    precision: usize,
    spec: RingSpec,
) -> Result<SeriesRing> {
    let q = base.size();
    let size = (q as u64).saturating_pow(precision as u32);
    if size > super::MAX_RING_SIZE as u64 {
        return Err(Error::CapExceeded {
            what: "table",
            size,
            cap: super::MAX_RING_SIZE as u64,
        });
    }
    let size = size as usize;

    let digits = |mut x: usize| -> Vec<ElementId> {
        (0..precision)
            .map(|_| {
                let d = x % q;
                x /= q;
                ElementId(d as u16)
            })
            .collect()
    };
    let index = |c: &[ElementId]| c.iter().rev().fold(0usize, |acc, d| acc * q + d.index());
    let all: Vec<Vec<ElementId>> = (0..size).map(digits).collect();

    let add = |x: usize, y: usize| {
        let c: Vec<ElementId> = all[x]
            .iter()
            .zip(&all[y])
            .map(|(&a, &b)| base.add(a, b))
            .collect();
        index(&c)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (&all[x], &all[y]);
        let c: Vec<ElementId> = (0..precision)
            .map(|k| {
                (0..=k).fold(base.zero(), |acc, i| {
                    base.add(acc, base.mul(a[i], b[k - i]))
                })
            })
            .collect();
        index(&c)
    };
    let names = all.iter().map(|c| series_name(base, c)).collect();
    let label = format!("{}[[x]]/(x^{precision})", base.label());

    let mut add_t = Vec::with_capacity(size * size);
    let mut mul_t = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            add_t.push(add(x, y) as u16);
            mul_t.push(mul(x, y) as u16);
        }
    }
    let ring = FiniteRing::from_tables(
        size,
        add_t,
        mul_t,
        base.zero(),
        base.one(),
        names,
        label,
        spec,
    )?;
    Ok(SeriesRing {
        ring,
        base_size: q,
        precision,
    })
}

fn series_name(base: &FiniteRing, coeffs: &[ElementId]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != base.zero())
        .map(|(i, &c)| {
            let name = base.name(c);
            let power = match i {
                0 => return name.to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if c == base.one() {
                power
            } else if name.contains('+') {
                format!("({name}){power}")
            } else {
                format!("{name}{power}")
            }
        })
        .collect();
    if terms.is_empty() {
        base.name(base.zero()).to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{analyze, build_ring};

    #[test]
    fn precision_one_is_the_base_ring() {
        let base = build_ring(&RingSpec::modular(4)).unwrap();
        let s = truncated_power_series(&base, 1).unwrap();
        assert_eq!(s.ring.size(), 4);
        for x in base.elements() {
            assert_eq!(s.eval_at_zero(s.embed(x)), x);
            for y in base.elements() {
                assert_eq!(s.ring.mul(s.embed(x), s.embed(y)), s.embed(base.mul(x, y)));
                assert_eq!(s.ring.add(s.embed(x), s.embed(y)), s.embed(base.add(x, y)));
            }
        }
    }

    #[test]
    fn z2_precision_three() {
        let base = build_ring(&RingSpec::modular(2)).unwrap();
        let s = truncated_power_series(&base, 3).unwrap();
        let r = &s.ring;
        let x = r.parse_element("x").unwrap();
        let x2 = r.parse_element("x^2").unwrap();
        assert_eq!(r.mul(x, x), x2);
        assert_eq!(r.mul(x, x2), r.zero());
        let one_plus_x = r.parse_element("1+x").unwrap();
        let inv = r.parse_element("1+x+x^2").unwrap();
        assert_eq!(r.mul(one_plus_x, inv), r.one());
        assert_eq!(analyze(r).inverse(one_plus_x), Some(inv));
    }

    #[test]
    fn z2_precision_two_radical() {
        let base = build_ring(&RingSpec::modular(2)).unwrap();
        let s = truncated_power_series(&base, 2).unwrap();
        let a = analyze(&s.ring);
        let j: Vec<&str> = a.jacobson().iter().map(|&e| s.ring.name(e)).collect();
        assert_eq!(j, ["0", "x"]);
    }

    #[test]
    fn coefficients_round_trip() {
        let base = build_ring(&RingSpec::modular(3)).unwrap();
        let s = truncated_power_series(&base, 3).unwrap();
        for e in s.ring.elements() {
            assert_eq!(s.from_coefficients(&s.coefficients(e)).unwrap(), e);
        }
    }
}
