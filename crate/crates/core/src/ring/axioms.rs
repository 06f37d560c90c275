use serde::Serialize;

use super::{ElementId, FiniteRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    MulCommutative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub size: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustively checks the unital ring axioms, returning the first failure.
///
/// Identities are checked before the cubic laws so that degenerate tables
/// report the cheapest witness.
pub fn verify_ring_axioms(r: &FiniteRing, cap: usize) -> Result<AxiomReport> {
    if r.size() > cap {
        return Err(Error::CapExceeded {
            what: "axiom",
            size: r.size() as u64,
            cap: cap as u64,
        });
    }
    let fail = |law, witness: Vec<ElementId>| {
        Ok(AxiomReport {
            size: r.size(),
            violation: Some(AxiomViolation { law, witness }),
        })
    };
    let (zero, one) = (r.zero(), r.one());

    for x in r.elements() {
        if r.add(zero, x) != x || r.add(x, zero) != x {
            return fail(Law::AddIdentity, vec![zero, x]);
        }
        if r.mul(one, x) != x || r.mul(x, one) != x {
            return fail(Law::MulIdentity, vec![one, x]);
        }
        if !r.elements().any(|y| r.add(x, y) == zero) {
            return fail(Law::AddInverse, vec![x]);
        }
    }
    for x in r.elements() {
        for y in r.elements() {
            if r.add(x, y) != r.add(y, x) {
                return fail(Law::AddCommutative, vec![x, y]);
            }
        }
    }
    for x in r.elements() {
        for y in r.elements() {
            let xy_sum = r.add(x, y);
            let xy_prod = r.mul(x, y);
            for z in r.elements() {
                if r.add(xy_sum, z) != r.add(x, r.add(y, z)) {
                    return fail(Law::AddAssociative, vec![x, y, z]);
                }
                if r.mul(xy_prod, z) != r.mul(x, r.mul(y, z)) {
                    return fail(Law::MulAssociative, vec![x, y, z]);
                }
                if r.mul(x, r.add(y, z)) != r.add(xy_prod, r.mul(x, z)) {
                    return fail(Law::LeftDistributive, vec![x, y, z]);
                }
                if r.mul(xy_sum, z) != r.add(r.mul(x, z), r.mul(y, z)) {
                    return fail(Law::RightDistributive, vec![x, y, z]);
                }
            }
        }
    }
    Ok(AxiomReport {
        size: r.size(),
        violation: None,
    })
}

/// Returns the first pair `(x, y)` with `xy != yx`, if any.
pub fn commutativity_probe(r: &FiniteRing) -> Option<AxiomViolation> {
    for x in r.elements() {
        for y in r.elements().skip(x.index() + 1) {
            if r.mul(x, y) != r.mul(y, x) {
                return Some(AxiomViolation {
                    law: Law::MulCommutative,
                    witness: vec![x, y],
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    #[test]
    fn z4_passes() {
        let r = build_ring(&RingSpec::modular(4)).unwrap();
        assert!(verify_ring_axioms(&r, 256).unwrap().passed());
        assert!(commutativity_probe(&r).is_none());
    }

    #[test]
    fn zero_multiplication_breaks_identity() {
        let add = vec![0, 1, 1, 0];
        let mul = vec![0, 0, 0, 0];
        let r = build_ring(&RingSpec::explicit(add, mul, 0, 1)).unwrap();
        let report = verify_ring_axioms(&r, 256).unwrap();
        let v = report.violation.unwrap();
        assert_eq!(v.law, Law::MulIdentity);
        assert_eq!(v.witness, vec![ElementId(1), ElementId(1)]);
    }

    #[test]
    fn corrupted_table_detected() {
        let r = build_ring(&RingSpec::modular(3)).unwrap();
        let table = |f: &dyn Fn(ElementId, ElementId) -> ElementId| -> Vec<u64> {
            r.elements()
                .flat_map(|x| r.elements().map(move |y| (x, y)))
                .map(|(x, y)| f(x, y).index() as u64)
                .collect()
        };
        let mut mul = table(&|x, y| r.mul(x, y));
        mul[2 * 3 + 2] = 2; // 2*2 := 2
        let add = table(&|x, y| r.add(x, y));
        let bad = build_ring(&RingSpec::explicit(add, mul, 0, 1)).unwrap();
        assert!(!verify_ring_axioms(&bad, 256).unwrap().passed());
    }

    #[test]
    fn cap_refusal_reports_cap() {
        let r = build_ring(&RingSpec::modular(300)).unwrap();
        let err = verify_ring_axioms(&r, 256).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                what: "axiom",
                size: 300,
                cap: 256
            }
        );
    }
}
