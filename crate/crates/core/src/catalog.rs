//! Built-in rings addressable by short name (`z4`, `f2t2`, `twist`, ...).

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::{analyze, build_ring, build_ring_capped, FiniteRing, RingAnalysis, RingSpec};

/// A ring together with its analysis, shared between contexts.
#[derive(Debug, Clone)]
pub struct CatalogRing {
    pub name: String,
    pub ring: Arc<FiniteRing>,
    pub analysis: Arc<RingAnalysis>,
}

impl CatalogRing {
    pub fn new(name: impl Into<String>, ring: FiniteRing) -> Self {
        let analysis = analyze(&ring);
        CatalogRing {
            name: name.into(),
            ring: Arc::new(ring),
            analysis: Arc::new(analysis),
        }
    }

    pub fn from_spec(name: impl Into<String>, spec: &RingSpec, caps: &Caps) -> Result<Self> {
        Ok(Self::new(name, build_ring_capped(spec, caps)?))
    }

    /// Central elements of the ring, the admissible values of `s`.
    pub fn central_elements(&self) -> Vec<crate::ring::ElementId> {
        self.analysis.center()
    }
}

pub const NAMES: &[&str] = &[
    "z2", "z3", "z4", "z6", "z8", "z9", "f2t2", "f3t2", "f4", "twist",
];

/// Rings swept by the default theorem suite (everything but the non-local `z6`).
pub const DEFAULT: &[&str] = &["z2", "z3", "z4", "z8", "z9", "f2t2", "f3t2", "f4", "twist"];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "z2" => "integers mod 2 (field)",
        "z3" => "integers mod 3 (field)",
        "z4" => "integers mod 4 (local, J = {0,2})",
        "z6" => "integers mod 6 (not local)",
        "z8" => "integers mod 8 (local)",
        "z9" => "integers mod 9 (local)",
        "f2t2" => "F2[t]/(t^2), dual numbers over F2",
        "f3t2" => "F3[t]/(t^2), dual numbers over F3",
        "f4" => "F4 = F2[t]/(t^2+t+1)",
        "twist" => "F4 + F4x with xa = a^2 x, x^2 = 0 (noncommutative local, 16 elements)",
        _ => return None,
    })
}

pub fn spec(name: &str) -> Option<RingSpec> {
    let spec = match name {
        "z2" => RingSpec::modular(2),
        "z3" => RingSpec::modular(3),
        "z4" => RingSpec::modular(4),
        "z6" => RingSpec::modular(6),
        "z8" => RingSpec::modular(8),
        "z9" => RingSpec::modular(9),
        "f2t2" => RingSpec::quotient_polynomial(2, vec![0, 0, 1]),
        "f3t2" => RingSpec::quotient_polynomial(3, vec![0, 0, 1]),
        "f4" => RingSpec::quotient_polynomial(2, vec![1, 1, 1]),
        "twist" => twist_spec(),
        _ => return None,
    };
    Some(spec)
}

pub fn get(name: &str) -> Result<CatalogRing> {
    let spec = spec(name).ok_or_else(|| Error::Parse(format!("no catalog ring named {name:?}")))?;
    Ok(CatalogRing::new(name, build_ring(&spec)?))
}

pub fn default_catalog() -> Vec<CatalogRing> {
    DEFAULT
        .iter()
        .map(|n| get(n).expect("catalog rings build"))
        .collect()
}

/// Tables for F4 ⊕ F4·x with `x·a = a²·x` and `x² = 0`.
///
/// `a0 + a1·x` has index `a0 + 4·a1`, with F4 = {0, 1, w, w2 = 1 + w}.
pub fn twist_spec() -> RingSpec {
    let f4 = build_ring(&RingSpec::quotient_polynomial(2, vec![1, 1, 1])).expect("F4 builds");
    let f4_names = ["0", "1", "w", "w2"];
    let e = |i: usize| crate::ring::ElementId(i as u16);
    let split = |x: usize| (e(x % 4), e(x / 4));
    let join = |a0: crate::ring::ElementId, a1: crate::ring::ElementId| {
        (a0.index() + 4 * a1.index()) as u64
    };

    let mut add = Vec::with_capacity(256);
    let mut mul = Vec::with_capacity(256);
    for x in 0..16 {
        for y in 0..16 {
            let ((a0, a1), (b0, b1)) = (split(x), split(y));
            add.push(join(f4.add(a0, b0), f4.add(a1, b1)));
            // (a0 + a1 x)(b0 + b1 x) = a0 b0 + (a0 b1 + a1 b0^2) x
            let b0_sq = f4.mul(b0, b0);
            mul.push(join(
                f4.mul(a0, b0),
                f4.add(f4.mul(a0, b1), f4.mul(a1, b0_sq)),
            ));
        }
    }
    let names = (0..16)
        .map(|x| {
            let (a0, a1) = (x % 4, x / 4);
            let tail = match a1 {
                0 => None,
                1 => Some("x".to_string()),
                _ => Some(format!("{}x", f4_names[a1])),
            };
            match (a0, tail) {
                (_, None) => f4_names[a0].to_string(),
                (0, Some(t)) => t,
                (_, Some(t)) => format!("{}+{t}", f4_names[a0]),
            }
        })
        .collect();
    RingSpec::explicit(add, mul, 0, 1)
        .with_names(names)
        .with_label("F4+F4x (twist)")
}

pub fn twist_ring() -> FiniteRing {
    build_ring(&twist_spec()).expect("twist ring builds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{commutativity_probe, verify_ring_axioms, ElementId, Law};

    #[test]
    fn every_catalog_ring_satisfies_the_axioms() {
        for name in NAMES {
            let r = build_ring(&spec(name).unwrap()).unwrap();
            let report = verify_ring_axioms(&r, 256).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.violation);
        }
    }

    #[test]
    fn twist_ring_is_noncommutative_local() {
        let r = twist_ring();
        let probe = commutativity_probe(&r).expect("noncommutative");
        assert_eq!(probe.law, Law::MulCommutative);
        let (x, y) = (probe.witness[0], probe.witness[1]);
        assert_ne!(r.mul(x, y), r.mul(y, x));

        let a = analyze(&r);
        assert!(a.is_local && !a.is_commutative);
        let j: Vec<&str> = a.jacobson().iter().map(|&e| r.name(e)).collect();
        assert_eq!(j, ["0", "x", "wx", "w2x"]);
        assert_eq!(a.units().len(), 12);
        assert_eq!(a.center(), vec![ElementId(0), ElementId(1)]);
        assert_eq!(a.residue_size, Some(4));
    }

    #[test]
    fn twist_relation_holds() {
        let r = twist_ring();
        let x = r.parse_element("x").unwrap();
        for a in ["0", "1", "w", "w2"] {
            let a = r.parse_element(a).unwrap();
            assert_eq!(r.mul(x, a), r.mul(r.mul(a, a), x));
        }
        assert_eq!(r.mul(x, x), r.zero());
    }

    #[test]
    fn twist_ring_weak_bleaching_fact() {
        // Recorded catalog fact: decided by image enumeration.
        let a = analyze(&twist_ring());
        assert_eq!(a.is_weakly_bleached, Some(true));
    }

    #[test]
    fn commutative_local_catalog_rings_are_weakly_bleached() {
        for ring in default_catalog() {
            if ring.analysis.is_commutative {
                assert_eq!(
                    ring.analysis.is_weakly_bleached,
                    Some(true),
                    "{}",
                    ring.name
                );
            }
        }
    }
}
