use serde::Serialize;

use super::{ElementId, FiniteRing};
use crate::error::{Error, Result};
use crate::util::first_position;

/// Structural data of a finite ring, computed once by [`analyze`].
#[derive(Debug, Clone)]
pub struct RingAnalysis {
    size: usize,
    inverse: Vec<Option<ElementId>>,
    jacobson: Vec<bool>,
    one_plus_jacobson: Vec<bool>,
    nilpotent: Vec<bool>,
    one_plus_nil: Vec<bool>,
    idempotent: Vec<bool>,
    central: Vec<bool>,
    pub is_local: bool,
    pub is_commutative: bool,
    /// `None` for non-local rings, where weak bleaching is undefined.
    pub is_weakly_bleached: Option<bool>,
    pub bleaching_failure: Option<BleachingFailure>,
    /// `|R| / |J(R)|` for local rings.
    pub residue_size: Option<usize>,
    /// First pair of non-units (canonical order) whose sum is a unit.
    pub locality_witness: Option<(ElementId, ElementId)>,
}

/// A pair `(a, b)` with `a ∈ J(R)`, `b ∈ 1 + J(R)` for which one of the
/// maps `r ↦ br − ra` or `r ↦ ar − rb` misses `missed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BleachingFailure {
    pub a: ElementId,
    pub b: ElementId,
    /// True for `r ↦ br − ra`, false for `r ↦ ar − rb`.
    pub left_b: bool,
    pub missed: ElementId,
}

fn collect(flags: &[bool]) -> Vec<ElementId> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| ElementId(i as u16))
        .collect()
}

impl RingAnalysis {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_unit(&self, x: ElementId) -> bool {
        self.inverse[x.index()].is_some()
    }

    #[inline]
    pub fn inverse(&self, x: ElementId) -> Option<ElementId> {
        self.inverse[x.index()]
    }

    #[inline]
    pub fn in_jacobson(&self, x: ElementId) -> bool {
        self.jacobson[x.index()]
    }

    #[inline]
    pub fn in_one_plus_jacobson(&self, x: ElementId) -> bool {
        self.one_plus_jacobson[x.index()]
    }

    #[inline]
    pub fn is_nilpotent(&self, x: ElementId) -> bool {
        self.nilpotent[x.index()]
    }

    #[inline]
    pub fn in_one_plus_nil(&self, x: ElementId) -> bool {
        self.one_plus_nil[x.index()]
    }

    #[inline]
    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.idempotent[x.index()]
    }

    #[inline]
    pub fn is_central(&self, x: ElementId) -> bool {
        self.central[x.index()]
    }

    pub fn units(&self) -> Vec<ElementId> {
        (0..self.size)
            .filter(|&i| self.inverse[i].is_some())
            .map(|i| ElementId(i as u16))
            .collect()
    }

    pub fn jacobson(&self) -> Vec<ElementId> {
        collect(&self.jacobson)
    }

    pub fn one_plus_jacobson(&self) -> Vec<ElementId> {
        collect(&self.one_plus_jacobson)
    }

    pub fn nilpotents(&self) -> Vec<ElementId> {
        collect(&self.nilpotent)
    }

    pub fn one_plus_nil(&self) -> Vec<ElementId> {
        collect(&self.one_plus_nil)
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        collect(&self.idempotent)
    }

    pub fn center(&self) -> Vec<ElementId> {
        collect(&self.central)
    }

    /// True when every element of J(R) is nilpotent.
    pub fn jacobson_is_nil(&self) -> bool {
        self.jacobson
            .iter()
            .zip(&self.nilpotent)
            .all(|(&j, &n)| !j || n)
    }
}

/// Computes units, radical, idempotents, nilpotents, center, locality and
/// weak bleaching by exhaustive scans.
///
/// The radical is found by two-sided quasi-regularity: `x ∈ J(R)` iff
/// `1 − rx` and `1 − xr` are units for every `r`. Locality is derived
/// afterwards, so the same code is correct for non-local rings.
pub fn analyze(r: &FiniteRing) -> RingAnalysis {
    let n = r.size();
    let one = r.one();

    let mut inverse = vec![None; n];
    for x in r.elements() {
        if inverse[x.index()].is_some() {
            continue;
        }
        if let Some(y) = r
            .elements()
            .find(|&y| r.mul(x, y) == one && r.mul(y, x) == one)
        {
            inverse[x.index()] = Some(y);
            inverse[y.index()] = Some(x);
        }
    }
    let is_unit = |x: ElementId| inverse[x.index()].is_some();

    let jacobson: Vec<bool> = r
        .elements()
        .map(|x| {
            r.elements()
                .all(|t| is_unit(r.sub(one, r.mul(t, x))) && is_unit(r.sub(one, r.mul(x, t))))
        })
        .collect();
    let one_plus_jacobson: Vec<bool> = r
        .elements()
        .map(|x| jacobson[r.sub(x, one).index()])
        .collect();

    let nilpotent: Vec<bool> = r
        .elements()
        .map(|x| first_position(x, |p| r.mul(p, x), |p| p == r.zero(), n as u64 + 1).is_some())
        .collect();
    let one_plus_nil: Vec<bool> = r
        .elements()
        .map(|x| nilpotent[r.sub(x, one).index()])
        .collect();
    let idempotent: Vec<bool> = r.elements().map(|x| r.mul(x, x) == x).collect();
    let central: Vec<bool> = r
        .elements()
        .map(|x| r.elements().all(|y| r.mul(x, y) == r.mul(y, x)))
        .collect();
    let is_commutative = central.iter().all(|&c| c);

    let non_units: Vec<ElementId> = r.elements().filter(|&x| !is_unit(x)).collect();
    let locality_witness = non_units.iter().enumerate().find_map(|(i, &a)| {
        non_units[i..]
            .iter()
            .find(|&&b| is_unit(r.add(a, b)))
            .map(|&b| (a, b))
    });
    let is_local = locality_witness.is_none();
    let j_count = jacobson.iter().filter(|&&j| j).count();

    let mut analysis = RingAnalysis {
        size: n,
        inverse,
        jacobson,
        one_plus_jacobson,
        nilpotent,
        one_plus_nil,
        idempotent,
        central,
        is_local,
        is_commutative,
        is_weakly_bleached: None,
        bleaching_failure: None,
        residue_size: is_local.then(|| n / j_count),
        locality_witness,
    };
    if is_local {
        let (ok, failure) = bleaching_scan(r, &analysis);
        analysis.is_weakly_bleached = Some(ok);
        analysis.bleaching_failure = failure;
    }
    analysis
}

fn bleaching_scan(r: &FiniteRing, a: &RingAnalysis) -> (bool, Option<BleachingFailure>) {
    let n = r.size();
    let mut hit = vec![0u32; n];
    let mut stamp = 0u32;
    let mut surjective = |f: &dyn Fn(ElementId) -> ElementId| -> Option<ElementId> {
        stamp += 1;
        let mut count = 0;
        for x in r.elements() {
            let y = f(x).index();
            if hit[y] != stamp {
                hit[y] = stamp;
                count += 1;
            }
        }
        if count == n {
            None
        } else {
            hit.iter()
                .position(|&h| h != stamp)
                .map(|i| ElementId(i as u16))
        }
    };
    for ja in a.jacobson() {
        for b in a.one_plus_jacobson() {
            if let Some(missed) = surjective(&|x| r.sub(r.mul(b, x), r.mul(x, ja))) {
                let failure = BleachingFailure {
                    a: ja,
                    b,
                    left_b: true,
                    missed,
                };
                return (false, Some(failure));
            }
            if let Some(missed) = surjective(&|x| r.sub(r.mul(ja, x), r.mul(x, b))) {
                let failure = BleachingFailure {
                    a: ja,
                    b,
                    left_b: false,
                    missed,
                };
                return (false, Some(failure));
            }
        }
    }
    (true, None)
}

/// Weak bleaching of a local ring; errors on non-local rings.
pub fn is_weakly_bleached(analysis: &RingAnalysis) -> Result<(bool, Option<BleachingFailure>)> {
    match analysis.is_weakly_bleached {
        Some(ok) => Ok((ok, analysis.bleaching_failure)),
        None => Err(Error::hypothesis(
            "weak bleaching is defined for local rings only",
        )),
    }
}

/// `J_s(R) = {x : sx ∈ J(R)}` for central `s`.
pub fn j_s_set(r: &FiniteRing, analysis: &RingAnalysis, s: ElementId) -> Result<Vec<ElementId>> {
    if !analysis.is_central(s) {
        return Err(Error::NotCentral(s));
    }
    Ok(r.elements()
        .filter(|&x| analysis.in_jacobson(r.mul(s, x)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    fn ids(v: &[u16]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn z4_structure() {
        let r = build_ring(&RingSpec::modular(4)).unwrap();
        let a = analyze(&r);
        assert_eq!(a.units(), ids(&[1, 3]));
        assert_eq!(a.jacobson(), ids(&[0, 2]));
        assert_eq!(a.idempotents(), ids(&[0, 1]));
        assert_eq!(a.nilpotents(), ids(&[0, 2]));
        assert!(a.is_local && a.is_commutative);
        assert_eq!(a.residue_size, Some(2));
        assert_eq!(a.is_weakly_bleached, Some(true));
    }

    #[test]
    fn z2_is_a_field() {
        let r = build_ring(&RingSpec::modular(2)).unwrap();
        let a = analyze(&r);
        assert_eq!(a.jacobson(), ids(&[0]));
        assert!(a.is_local);
        assert_eq!(is_weakly_bleached(&a).unwrap(), (true, None));
    }

    #[test]
    fn z6_is_not_local() {
        let r = build_ring(&RingSpec::modular(6)).unwrap();
        let a = analyze(&r);
        assert!(!a.is_local);
        assert_eq!(a.locality_witness, Some((ElementId(2), ElementId(3))));
        assert_eq!(a.jacobson(), ids(&[0]));
        assert!(is_weakly_bleached(&a).is_err());
    }

    #[test]
    fn j_s_examples() {
        let r = build_ring(&RingSpec::modular(4)).unwrap();
        let a = analyze(&r);
        assert_eq!(j_s_set(&r, &a, ElementId(1)).unwrap(), ids(&[0, 2]));
        assert_eq!(j_s_set(&r, &a, ElementId(2)).unwrap(), ids(&[0, 1, 2, 3]));
        assert_eq!(j_s_set(&r, &a, ElementId(0)).unwrap().len(), 4);
    }

    #[test]
    fn j_s_refuses_non_central() {
        let r = crate::catalog::twist_ring();
        let a = analyze(&r);
        let w = r.parse_element("w").unwrap();
        assert_eq!(j_s_set(&r, &a, w), Err(Error::NotCentral(w)));
    }
}
