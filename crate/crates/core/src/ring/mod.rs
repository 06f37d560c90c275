//! Finite unital rings stored as dense operation tables.
//!
//! Elements are addressed by a canonical index in `0..size`; index 0 is
//! always zero and index 1 is one for the structured constructors.

mod analysis;
mod axioms;
mod series;
mod spec;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

pub use analysis::{analyze, is_weakly_bleached, j_s_set, BleachingFailure, RingAnalysis};
pub use axioms::{commutativity_probe, verify_ring_axioms, AxiomReport, AxiomViolation, Law};
pub use series::{truncated_power_series, SeriesRing};
pub use spec::{RingKind, RingSpec, Table};

/// Largest ring the table representation supports.
pub const MAX_RING_SIZE: usize = u16::MAX as usize + 1;

/// Canonical index of a ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u16);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<ElementId> for usize {
    fn from(e: ElementId) -> usize {
        e.index()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: ElementId,
    one: ElementId,
    names: Vec<String>,
    label: String,
    spec: RingSpec,
}

impl FiniteRing {
    /// Assembles a ring from complete tables. `add` and `mul` are row-major.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_tables(
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: ElementId,
        one: ElementId,
        names: Vec<String>,
        label: String,
        spec: RingSpec,
    ) -> Result<Self> {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        if zero == one {
            return Err(Error::InvalidSpec("zero and one coincide".into()));
        }
        let mut neg = vec![u16::MAX; size];
        for x in 0..size {
            let row = &add[x * size..(x + 1) * size];
            match row.iter().position(|&y| y == zero.0) {
                Some(y) => neg[x] = y as u16,
                None => {
                    return Err(Error::InvalidSpec(format!(
                        "element {x} has no additive inverse"
                    )))
                }
            }
        }
        let names = match spec.names.clone() {
            Some(given) if given.len() == size => given,
            Some(given) => {
                return Err(Error::InvalidSpec(format!(
                    "name map has {} entries for a ring of size {size}",
                    given.len()
                )))
            }
            None => names,
        };
        let label = spec.label.clone().unwrap_or(label);
        Ok(FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            names,
            label,
            spec,
        })
    }

    /// Builds a ring by evaluating `add` and `mul` on every pair of indices.
    pub(crate) fn from_fns(
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        names: Vec<String>,
        label: String,
        spec: RingSpec,
    ) -> Result<Self> {
        let mut add_t = Vec::with_capacity(size * size);
        let mut mul_t = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                add_t.push(add(x, y) as u16);
                mul_t.push(mul(x, y) as u16);
            }
        }
        Self::from_tables(
            size,
            add_t,
            mul_t,
            ElementId(0),
            ElementId(1),
            names,
            label,
            spec,
        )
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    #[inline]
    pub fn add(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.add[x.index() * self.size + y.index()])
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.mul[x.index() * self.size + y.index()])
    }

    #[inline]
    pub fn neg(&self, x: ElementId) -> ElementId {
        ElementId(self.neg[x.index()])
    }

    #[inline]
    pub fn sub(&self, x: ElementId, y: ElementId) -> ElementId {
        self.add(x, self.neg(y))
    }

    /// `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: ElementId, k: u64) -> ElementId {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// `n·1`, the image of an integer in the ring.
    pub fn from_int(&self, n: i64) -> ElementId {
        let unit = if n < 0 { self.neg(self.one) } else { self.one };
        (0..n.unsigned_abs()).fold(self.zero, |acc, _| self.add(acc, unit))
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.size as u32).map(|i| ElementId(i as u16))
    }

    pub fn element(&self, index: u64) -> Result<ElementId> {
        if (index as usize) < self.size && index < MAX_RING_SIZE as u64 {
            Ok(ElementId(index as u16))
        } else {
            Err(Error::ElementOutOfRange(index, self.size))
        }
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    /// Resolves a canonical index or an element name.
    pub fn parse_element(&self, text: &str) -> Result<ElementId> {
        let text = text.trim();
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Ok(ElementId(i as u16));
        }
        match text.parse::<u64>() {
            Ok(i) => self.element(i),
            Err(_) => Err(Error::Parse(format!(
                "{text:?} is neither an element index nor a name in {}",
                self.label
            ))),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }
}

/// Builds the ring described by `spec`, refusing rings larger than the
/// default analysis cap.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing> {
    build_ring_capped(spec, &Caps::default())
}

pub fn build_ring_capped(spec: &RingSpec, caps: &Caps) -> Result<FiniteRing> {
    let limit = caps.analysis.min(MAX_RING_SIZE);
    let check_size = |size: u64| -> Result<usize> {
        if size > limit as u64 {
            Err(Error::CapExceeded {
                what: "analysis",
                size,
                cap: limit as u64,
            })
        } else {
            Ok(size as usize)
        }
    };
    match &spec.kind {
        RingKind::ModularIntegers { n } => {
            if *n < 2 {
                return Err(Error::InvalidSpec(format!(
                    "modular-integers needs n >= 2, got {n}"
                )));
            }
            let n = check_size(*n)?;
            let names = (0..n).map(|i| i.to_string()).collect();
            FiniteRing::from_fns(
                n,
                |x, y| (x + y) % n,
                |x, y| (x * y) % n,
                names,
                format!("Z{n}"),
                spec.clone(),
            )
        }
        RingKind::QuotientPolynomial { p, modulus } => {
            build_quotient_polynomial(spec, *p, modulus, check_size)
        }
        RingKind::ExplicitTables {
            add,
            mul,
            zero,
            one,
        } => {
            let (n_add, add) = add.flatten("add").map_err(Error::InvalidSpec)?;
            let (n_mul, mul) = mul.flatten("mul").map_err(Error::InvalidSpec)?;
            if n_add != n_mul {
                return Err(Error::InvalidSpec(format!(
                    "add table is {n_add}x{n_add} but mul table is {n_mul}x{n_mul}"
                )));
            }
            let n = check_size(n_add as u64)?;
            if n < 2 {
                return Err(Error::InvalidSpec(
                    "explicit tables need at least 2 elements".into(),
                ));
            }
            let convert = |t: Vec<u64>, which: &str| -> Result<Vec<u16>> {
                t.into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if (v as usize) < n {
                            Ok(v as u16)
                        } else {
                            Err(Error::InvalidSpec(format!(
                                "{which} table entry ({}, {}) = {v} is out of range",
                                i / n,
                                i % n
                            )))
                        }
                    })
                    .collect()
            };
            let add = convert(add, "add")?;
            let mul = convert(mul, "mul")?;
            for (what, v) in [("zero", *zero), ("one", *one)] {
                if v as usize >= n {
                    return Err(Error::InvalidSpec(format!("{what} = {v} is out of range")));
                }
            }
            let names = (0..n).map(|i| i.to_string()).collect();
            FiniteRing::from_tables(
                n,
                add,
                mul,
                ElementId(*zero as u16),
                ElementId(*one as u16),
                names,
                format!("tables({n})"),
                spec.clone(),
            )
        }
        RingKind::TruncatedPowerSeries { base, precision } => {
            if *precision < 1 {
                return Err(Error::InvalidSpec(
                    "truncated-power-series needs precision >= 1".into(),
                ));
            }
            let base_ring = build_ring_capped(base, caps)?;
            let size = (base_ring.size() as u64)
                .checked_pow(*precision as u32)
                .unwrap_or(u64::MAX);
            check_size(size)?;
            let series = series::build_series(&base_ring, *precision, spec.clone())?;
            Ok(series.ring)
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn build_quotient_polynomial(
    spec: &RingSpec,
    p: u64,
    modulus: &[u64],
    check_size: impl Fn(u64) -> Result<usize>,
) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!(
            "quotient-polynomial needs p prime, got {p}"
        )));
    }
    if modulus.len() < 2 {
        return Err(Error::InvalidSpec("modulus must have degree >= 1".into()));
    }
    let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
    let deg = m.len() - 1;
    if m[deg] != 1 {
        return Err(Error::InvalidSpec(format!(
            "modulus is not monic: leading coefficient is {} mod {p}",
            m[deg]
        )));
    }
    let size = p.checked_pow(deg as u32).unwrap_or(u64::MAX);
    let n = check_size(size)?;
    let p = p as usize;

    let digits = |mut x: usize| -> Vec<usize> {
        (0..deg)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let index = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let add = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let c: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
        index(&c)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let mut prod = vec![0usize; 2 * deg];
        for (i, u) in a.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        // t^deg = -(m_0 + ... + m_{deg-1} t^{deg-1})
        for k in (deg..2 * deg).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mi) in m[..deg].iter().enumerate() {
                let sub = lead * mi as usize % p;
                prod[k - deg + i] = (prod[k - deg + i] + p - sub) % p;
            }
        }
        index(&prod[..deg])
    };
    let names = (0..n).map(|x| poly_name(&digits(x), "t")).collect();
    let label = format!(
        "F{p}[t]/({})",
        poly_name(&m.iter().map(|&c| c as usize).collect::<Vec<_>>(), "t")
    );
    FiniteRing::from_fns(n, add, mul, names, label, spec.clone())
}

/// Renders coefficients (constant term first) as `1+2t+t^2`.
pub(crate) fn poly_name(coeffs: &[usize], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let power = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => power,
                _ => format!("{c}{power}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_arithmetic() {
        let r = build_ring(&RingSpec::modular(4)).unwrap();
        assert_eq!(r.size(), 4);
        let e = |i| ElementId(i);
        assert_eq!(r.add(e(2), e(3)), e(1));
        assert_eq!(r.mul(e(2), e(2)), e(0));
        assert_eq!(r.neg(e(1)), e(3));
        assert_eq!(r.from_int(-1), e(3));
    }

    #[test]
    fn dual_numbers_over_f2() {
        let r = build_ring(&RingSpec::quotient_polynomial(2, vec![0, 0, 1])).unwrap();
        assert_eq!(r.size(), 4);
        let names: Vec<&str> = r.elements().map(|x| r.name(x)).collect();
        assert_eq!(names, ["0", "1", "t", "1+t"]);
        let t = r.parse_element("t").unwrap();
        assert_eq!(r.mul(t, t), r.zero());
        assert_eq!(r.label(), "F2[t]/(t^2)");
    }

    #[test]
    fn f4_is_a_field() {
        let r = build_ring(&RingSpec::quotient_polynomial(2, vec![1, 1, 1])).unwrap();
        for x in r.elements().skip(1) {
            assert!(r.elements().any(|y| r.mul(x, y) == r.one()));
        }
    }

    #[test]
    fn malformed_specs_name_the_constraint() {
        let err = build_ring(&RingSpec::modular(1)).unwrap_err();
        assert!(err.to_string().contains("n >= 2"), "{err}");
        let err = build_ring(&RingSpec::quotient_polynomial(2, vec![1, 1, 0])).unwrap_err();
        assert!(err.to_string().contains("monic"), "{err}");
        let err = build_ring(&RingSpec::quotient_polynomial(4, vec![0, 1])).unwrap_err();
        assert!(err.to_string().contains("prime"), "{err}");
        let err = build_ring(&RingSpec::quotient_polynomial(3, vec![1])).unwrap_err();
        assert!(err.to_string().contains("degree"), "{err}");
        let err =
            build_ring(&RingSpec::explicit(vec![0, 1, 1, 0], vec![0, 0, 0], 0, 1)).unwrap_err();
        assert!(err.to_string().contains("perfect square"), "{err}");
        let err = build_ring(&RingSpec::explicit(
            vec![0, 1, 1, 0],
            vec![0, 0, 0, 5],
            0,
            1,
        ))
        .unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        let err = build_ring(&RingSpec::modular(5000)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn parse_element_by_name_or_index() {
        let r = build_ring(&RingSpec::quotient_polynomial(3, vec![0, 0, 1])).unwrap();
        assert_eq!(
            r.parse_element("2+t").unwrap(),
            r.parse_element("5").unwrap()
        );
        assert!(r.parse_element("9").is_err());
        assert!(r.parse_element("u").is_err());
    }
}
