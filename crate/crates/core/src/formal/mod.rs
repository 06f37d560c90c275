//! The formal matrix ring M2(R;s): 2x2 matrices over R with
//!
//! ```text
//! [a b][a' b']   [aa' + s²bc'   ab' + bd' ]
//! [c d][c' d'] = [ca' + dc'     s²cb' + dd']
//! ```
//!
//! for a central `s`. `s = 1` gives the ordinary matrix ring; `s² = 0`
//! is allowed and needs no special casing.

mod parse;
mod similarity;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::catalog::CatalogRing;
use crate::error::{Error, Result};
use crate::ring::{ElementId, FiniteRing, RingAnalysis};
use crate::util::first_position;

pub use parse::parse_matrix;
pub use similarity::{
    diagonal_similarity, equivalence_search, idempotent_canonical_form, similarity_search,
    IdempotentForm, IdempotentKind, Similarity,
};

/// A matrix `[[a, b], [c, d]]` of canonical element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FMatrix {
    pub a: ElementId,
    pub b: ElementId,
    pub c: ElementId,
    pub d: ElementId,
}

impl FMatrix {
    pub const fn new(a: ElementId, b: ElementId, c: ElementId, d: ElementId) -> Self {
        FMatrix { a, b, c, d }
    }

    pub fn from_indices(entries: [u16; 4]) -> Self {
        let [a, b, c, d] = entries.map(ElementId);
        FMatrix { a, b, c, d }
    }

    pub fn entries(&self) -> [ElementId; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_diagonal_with(&self, zero: ElementId) -> bool {
        self.b == zero && self.c == zero
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// How unit membership in M2(R;s) is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitStrategy {
    /// `det_s(A) ∈ U(R)`; commutative bases only.
    Determinant,
    /// Both diagonal entries are units; local bases with `s ∈ J(R)` only.
    DiagonalUnits,
    /// Two-sided inverse search.
    Search,
}

/// Which matrices [`FMContext::enumerate`] yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    All,
    Units,
    Idempotents,
    Radical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug)]
struct UnitTable {
    /// Index of the inverse, `u32::MAX` for non-units.
    inverse: Vec<u32>,
}

/// The ring M2(R;s) over a fixed base ring and central `s`.
///
/// Immutable once built; derived tables (unit table, idempotent list,
/// nilpotent flags, oracle verdicts) are computed on first use behind
/// `OnceLock`s, so a context can be shared across threads.
#[derive(Debug)]
pub struct FMContext {
    base: Arc<FiniteRing>,
    analysis: Arc<RingAnalysis>,
    s: ElementId,
    s_squared: ElementId,
    j_s: Vec<bool>,
    caps: Caps,
    units: OnceLock<UnitTable>,
    unit_list: OnceLock<Vec<(FMatrix, FMatrix)>>,
    idempotents: OnceLock<Vec<FMatrix>>,
    nilpotent: OnceLock<Vec<bool>>,
    radical: OnceLock<Vec<bool>>,
    pub(crate) verdicts: [OnceLock<Vec<bool>>; 3],
}

impl FMContext {
    pub fn new(base: Arc<FiniteRing>, analysis: Arc<RingAnalysis>, s: ElementId) -> Result<Self> {
        Self::with_caps(base, analysis, s, Caps::default())
    }

    pub fn with_caps(
        base: Arc<FiniteRing>,
        analysis: Arc<RingAnalysis>,
        s: ElementId,
        caps: Caps,
    ) -> Result<Self> {
        if s.index() >= base.size() {
            return Err(Error::ElementOutOfRange(s.0 as u64, base.size()));
        }
        if !analysis.is_central(s) {
            return Err(Error::NotCentral(s));
        }
        let s_squared = base.mul(s, s);
        let j_s = base
            .elements()
            .map(|x| analysis.in_jacobson(base.mul(s, x)))
            .collect();
        Ok(FMContext {
            base,
            analysis,
            s,
            s_squared,
            j_s,
            caps,
            units: OnceLock::new(),
            unit_list: OnceLock::new(),
            idempotents: OnceLock::new(),
            nilpotent: OnceLock::new(),
            radical: OnceLock::new(),
            verdicts: Default::default(),
        })
    }

    pub fn from_catalog(ring: &CatalogRing, s: ElementId, caps: Caps) -> Result<Self> {
        Self::with_caps(ring.ring.clone(), ring.analysis.clone(), s, caps)
    }

    #[inline]
    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    #[inline]
    pub fn analysis(&self) -> &RingAnalysis {
        &self.analysis
    }

    pub fn base_arc(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn analysis_arc(&self) -> &Arc<RingAnalysis> {
        &self.analysis
    }

    #[inline]
    pub fn s(&self) -> ElementId {
        self.s
    }

    #[inline]
    pub fn s_squared(&self) -> ElementId {
        self.s_squared
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn s_is_unit(&self) -> bool {
        self.analysis.is_unit(self.s)
    }

    pub fn s_in_jacobson(&self) -> bool {
        self.analysis.in_jacobson(self.s)
    }

    #[inline]
    pub fn in_j_s(&self, x: ElementId) -> bool {
        self.j_s[x.index()]
    }

    pub fn j_s(&self) -> Vec<ElementId> {
        self.base.elements().filter(|&x| self.in_j_s(x)).collect()
    }

    /// `|M2(R;s)| = |R|^4`.
    pub fn matrix_count(&self) -> u64 {
        (self.base.size() as u64).pow(4)
    }

    #[inline]
    pub fn index(&self, m: &FMatrix) -> usize {
        let n = self.base.size();
        ((m.a.index() * n + m.b.index()) * n + m.c.index()) * n + m.d.index()
    }

    #[inline]
    pub fn matrix(&self, index: usize) -> FMatrix {
        let n = self.base.size();
        let d = index % n;
        let c = (index / n) % n;
        let b = (index / (n * n)) % n;
        let a = index / (n * n * n);
        FMatrix::from_indices([a as u16, b as u16, c as u16, d as u16])
    }

    pub fn identity(&self) -> FMatrix {
        let (z, o) = (self.base.zero(), self.base.one());
        FMatrix::new(o, z, z, o)
    }

    pub fn zero_matrix(&self) -> FMatrix {
        let z = self.base.zero();
        FMatrix::new(z, z, z, z)
    }

    pub fn diag(&self, x: ElementId, y: ElementId) -> FMatrix {
        let z = self.base.zero();
        FMatrix::new(x, z, z, y)
    }

    pub fn is_diagonal(&self, m: &FMatrix) -> bool {
        m.is_diagonal_with(self.base.zero())
    }

    pub fn is_identity(&self, m: &FMatrix) -> bool {
        *m == self.identity()
    }

    pub fn is_zero(&self, m: &FMatrix) -> bool {
        *m == self.zero_matrix()
    }

    #[inline]
    pub fn mul(&self, x: &FMatrix, y: &FMatrix) -> FMatrix {
        let r = &*self.base;
        let s2 = self.s_squared;
        FMatrix {
            a: r.add(r.mul(x.a, y.a), r.mul(s2, r.mul(x.b, y.c))),
            b: r.add(r.mul(x.a, y.b), r.mul(x.b, y.d)),
            c: r.add(r.mul(x.c, y.a), r.mul(x.d, y.c)),
            d: r.add(r.mul(s2, r.mul(x.c, y.b)), r.mul(x.d, y.d)),
        }
    }

    #[inline]
    pub fn add(&self, x: &FMatrix, y: &FMatrix) -> FMatrix {
        let r = &*self.base;
        FMatrix {
            a: r.add(x.a, y.a),
            b: r.add(x.b, y.b),
            c: r.add(x.c, y.c),
            d: r.add(x.d, y.d),
        }
    }

    #[inline]
    pub fn neg(&self, x: &FMatrix) -> FMatrix {
        let r = &*self.base;
        FMatrix {
            a: r.neg(x.a),
            b: r.neg(x.b),
            c: r.neg(x.c),
            d: r.neg(x.d),
        }
    }

    #[inline]
    pub fn sub(&self, x: &FMatrix, y: &FMatrix) -> FMatrix {
        self.add(x, &self.neg(y))
    }

    /// `I₂ − A`.
    #[inline]
    pub fn complement(&self, x: &FMatrix) -> FMatrix {
        self.sub(&self.identity(), x)
    }

    /// Left scalar multiple `rA`.
    pub fn scale(&self, r: ElementId, x: &FMatrix) -> FMatrix {
        let b = &*self.base;
        FMatrix {
            a: b.mul(r, x.a),
            b: b.mul(r, x.b),
            c: b.mul(r, x.c),
            d: b.mul(r, x.d),
        }
    }

    pub fn pow(&self, x: &FMatrix, k: u64) -> FMatrix {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    /// `P⁻¹·A·P`.
    pub fn conjugate(&self, a: &FMatrix, p: &FMatrix, p_inv: &FMatrix) -> FMatrix {
        self.mul(&self.mul(p_inv, a), p)
    }

    pub fn commutes(&self, x: &FMatrix, y: &FMatrix) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_idempotent(&self, x: &FMatrix) -> bool {
        self.mul(x, x) == *x
    }

    fn require_commutative(&self, what: &str) -> Result<()> {
        if self.analysis.is_commutative {
            Ok(())
        } else {
            Err(Error::hypothesis(format!(
                "{what} needs a commutative base ring"
            )))
        }
    }

    /// `det_s(A) = ad − s²bc`; refused on noncommutative bases.
    pub fn det_s(&self, x: &FMatrix) -> Result<ElementId> {
        self.require_commutative("det_s")?;
        Ok(self.det_unchecked(x))
    }

    #[inline]
    pub(crate) fn det_unchecked(&self, x: &FMatrix) -> ElementId {
        let r = &*self.base;
        r.sub(r.mul(x.a, x.d), r.mul(self.s_squared, r.mul(x.b, x.c)))
    }

    pub fn tr(&self, x: &FMatrix) -> ElementId {
        self.base.add(x.a, x.d)
    }

    /// Membership in J(M2(R;s)) by the entry pattern `[[J, J_s], [J_s, J]]`.
    #[inline]
    pub fn in_jacobson(&self, x: &FMatrix) -> bool {
        let an = &*self.analysis;
        an.in_jacobson(x.a) && an.in_jacobson(x.d) && self.in_j_s(x.b) && self.in_j_s(x.c)
    }

    /// Unit test by a chosen strategy, refusing strategies whose
    /// hypotheses fail.
    pub fn is_unit_with(&self, x: &FMatrix, strategy: UnitStrategy) -> Result<bool> {
        match strategy {
            UnitStrategy::Determinant => {
                self.require_commutative("the determinant unit test")?;
                Ok(self.analysis.is_unit(self.det_unchecked(x)))
            }
            UnitStrategy::DiagonalUnits => {
                if !(self.analysis.is_local && self.s_in_jacobson()) {
                    return Err(Error::hypothesis(
                        "the diagonal unit test needs a local base with s in J(R)",
                    ));
                }
                Ok(self.analysis.is_unit(x.a) && self.analysis.is_unit(x.d))
            }
            UnitStrategy::Search => Ok(self.search_inverse(x).is_some()),
        }
    }

    /// The cheapest strategy whose hypotheses hold.
    pub fn unit_strategy(&self) -> UnitStrategy {
        if self.analysis.is_commutative {
            UnitStrategy::Determinant
        } else if self.analysis.is_local && self.s_in_jacobson() {
            UnitStrategy::DiagonalUnits
        } else {
            UnitStrategy::Search
        }
    }

    pub fn is_unit(&self, x: &FMatrix) -> bool {
        self.is_unit_with(x, self.unit_strategy())
            .expect("auto strategy hypotheses hold")
    }

    /// Inverse by the adjugate formula over commutative bases, otherwise by
    /// search.
    pub fn inverse(&self, x: &FMatrix) -> Option<FMatrix> {
        if self.analysis.is_commutative {
            let r = &*self.base;
            let det_inv = self.analysis.inverse(self.det_unchecked(x))?;
            let adj = FMatrix::new(x.d, r.neg(x.b), r.neg(x.c), x.a);
            Some(self.scale(det_inv, &adj))
        } else {
            self.search_inverse(x)
        }
    }

    /// Inverse of a unit by the cheapest exact route: the adjugate over a
    /// commutative base, the cached table when the ring is enumerable,
    /// otherwise a direct search.
    pub fn unit_inverse(&self, x: &FMatrix) -> Option<FMatrix> {
        if self.analysis.is_commutative {
            self.inverse(x)
        } else if self.matrix_count() <= self.caps.enumeration {
            self.inverse_exhaustive(x).expect("enumerable")
        } else {
            self.search_inverse(x)
        }
    }

    /// Unit test from the cached table when the ring is enumerable,
    /// otherwise via [`unit_inverse`](Self::unit_inverse).
    pub fn is_unit_fast(&self, x: &FMatrix) -> bool {
        if self.matrix_count() <= self.caps.enumeration {
            self.is_unit_exhaustive(x).expect("enumerable")
        } else {
            self.unit_inverse(x).is_some()
        }
    }

    /// Two-sided inverse search. Solves `AB = I` one column at a time
    /// (each column of `B` meets two equations in two unknowns), then keeps
    /// the first candidate that also satisfies `BA = I`.
    pub fn search_inverse(&self, x: &FMatrix) -> Option<FMatrix> {
        let r = &*self.base;
        let (zero, one, s2) = (r.zero(), r.one(), self.s_squared);
        let mut first_col = Vec::new();
        let mut second_col = Vec::new();
        for p in r.elements() {
            let ap = r.mul(x.a, p);
            let cp = r.mul(x.c, p);
            let cs2p = r.mul(s2, cp);
            for q in r.elements() {
                // column (p, q): a p + s² b q = 1, c p + d q = 0
                if r.add(ap, r.mul(s2, r.mul(x.b, q))) == one && r.add(cp, r.mul(x.d, q)) == zero {
                    first_col.push((p, q));
                }
                // column (p, q) as (b', d'): a p + b q = 0, s² c p + d q = 1
                if r.add(ap, r.mul(x.b, q)) == zero && r.add(cs2p, r.mul(x.d, q)) == one {
                    second_col.push((p, q));
                }
            }
        }
        let id = self.identity();
        for &(a2, c2) in &first_col {
            for &(b2, d2) in &second_col {
                let y = FMatrix::new(a2, b2, c2, d2);
                if self.mul(&y, x) == id {
                    return Some(y);
                }
            }
        }
        None
    }

    fn require_enumerable(&self, what: &'static str) -> Result<()> {
        let count = self.matrix_count();
        if count > self.caps.enumeration {
            Err(Error::CapExceeded {
                what,
                size: count,
                cap: self.caps.enumeration,
            })
        } else {
            Ok(())
        }
    }

    fn require_similarity(&self) -> Result<()> {
        self.require_enumerable("enumeration")?;
        let n = self.base.size();
        if n > self.caps.similarity {
            Err(Error::CapExceeded {
                what: "similarity",
                size: n as u64,
                cap: self.caps.similarity as u64,
            })
        } else {
            Ok(())
        }
    }

    fn unit_table(&self) -> Result<&UnitTable> {
        self.require_enumerable("enumeration")?;
        Ok(self.units.get_or_init(|| {
            let count = self.matrix_count() as usize;
            let inverse = (0..count)
                .into_par_iter()
                .map(|i| {
                    self.search_inverse(&self.matrix(i))
                        .map_or(u32::MAX, |y| self.index(&y) as u32)
                })
                .collect();
            UnitTable { inverse }
        }))
    }

    /// Unit membership from the cached exhaustive inverse table.
    pub fn is_unit_exhaustive(&self, x: &FMatrix) -> Result<bool> {
        Ok(self.unit_table()?.inverse[self.index(x)] != u32::MAX)
    }

    pub fn inverse_exhaustive(&self, x: &FMatrix) -> Result<Option<FMatrix>> {
        let inv = self.unit_table()?.inverse[self.index(x)];
        Ok((inv != u32::MAX).then(|| self.matrix(inv as usize)))
    }

    /// All units with their inverses, in canonical order. Cached; refused
    /// above the similarity cap.
    pub fn units_with_inverses(&self) -> Result<&[(FMatrix, FMatrix)]> {
        self.require_similarity()?;
        let table = self.unit_table()?;
        Ok(self.unit_list.get_or_init(|| {
            table
                .inverse
                .iter()
                .enumerate()
                .filter(|(_, &inv)| inv != u32::MAX)
                .map(|(i, &inv)| (self.matrix(i), self.matrix(inv as usize)))
                .collect()
        }))
    }

    /// All idempotents in canonical order. Cached.
    pub fn idempotents(&self) -> Result<&[FMatrix]> {
        self.require_enumerable("enumeration")?;
        Ok(self.idempotents.get_or_init(|| {
            let count = self.matrix_count() as usize;
            (0..count)
                .into_par_iter()
                .map(|i| self.matrix(i))
                .filter(|m| self.is_idempotent(m))
                .collect()
        }))
    }

    /// Nilpotence by iterated powering with cycle detection.
    pub fn is_nilpotent(&self, x: &FMatrix) -> bool {
        let zero = self.zero_matrix();
        first_position(
            *x,
            |p| self.mul(&p, x),
            |p| p == zero,
            self.matrix_count() + 1,
        )
        .is_some()
    }

    pub fn is_nilpotent_cached(&self, x: &FMatrix) -> Result<bool> {
        self.require_enumerable("enumeration")?;
        let flags = self.nilpotent.get_or_init(|| {
            let count = self.matrix_count() as usize;
            (0..count)
                .into_par_iter()
                .map(|i| self.is_nilpotent(&self.matrix(i)))
                .collect()
        });
        Ok(flags[self.index(x)])
    }

    /// J(M2(R;s)) computed directly as the radical of the finite ring
    /// M2(R;s): `X` is a member iff `I − YX` and `I − XY` are units for
    /// every `Y`. Independent of the entry pattern used by
    /// [`in_jacobson`](Self::in_jacobson). Cached.
    pub fn radical_by_quasi_regularity(&self) -> Result<&[bool]> {
        let table = self.unit_table()?;
        Ok(self.radical.get_or_init(|| {
            let count = self.matrix_count() as usize;
            let id = self.identity();
            let unit = |m: &FMatrix| table.inverse[self.index(m)] != u32::MAX;
            (0..count)
                .into_par_iter()
                .map(|i| {
                    let x = self.matrix(i);
                    (0..count).all(|j| {
                        let y = self.matrix(j);
                        unit(&self.sub(&id, &self.mul(&y, &x)))
                            && unit(&self.sub(&id, &self.mul(&x, &y)))
                    })
                })
                .collect()
        }))
    }

    /// Matrices of a class, in canonical order (exhaustive) or as a seeded
    /// uniform sample of the whole ring filtered by the class.
    pub fn enumerate(&self, class: MatrixClass, mode: Enumeration) -> Result<Vec<FMatrix>> {
        let keep = |m: &FMatrix| -> Result<bool> {
            Ok(match class {
                MatrixClass::All => true,
                MatrixClass::Units => self.is_unit(m),
                MatrixClass::Idempotents => self.is_idempotent(m),
                MatrixClass::Radical => self.in_jacobson(m),
            })
        };
        match mode {
            Enumeration::Exhaustive => {
                if class == MatrixClass::Idempotents {
                    return Ok(self.idempotents()?.to_vec());
                }
                self.require_enumerable("enumeration")?;
                let mut out = Vec::new();
                for i in 0..self.matrix_count() as usize {
                    let m = self.matrix(i);
                    if keep(&m)? {
                        out.push(m);
                    }
                }
                Ok(out)
            }
            Enumeration::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    let m = self.random_matrix(&mut rng);
                    if keep(&m)? {
                        out.push(m);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn random_matrix(&self, rng: &mut impl Rng) -> FMatrix {
        let n = self.base.size() as u16;
        FMatrix::from_indices([
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        ])
    }

    /// Renders with element names, e.g. `[[1+t,0],[t,1]]`.
    pub fn render(&self, m: &FMatrix) -> String {
        let r = &*self.base;
        format!(
            "[[{},{}],[{},{}]]",
            r.name(m.a),
            r.name(m.b),
            r.name(m.c),
            r.name(m.d)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    pub(crate) fn ctx(name: &str, s: u16) -> FMContext {
        let ring = catalog::get(name).unwrap();
        FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap()
    }

    fn m(e: [u16; 4]) -> FMatrix {
        FMatrix::from_indices(e)
    }

    #[test]
    fn twisted_product_examples() {
        let c = ctx("z4", 2);
        let e = m([1, 1, 1, 0]);
        assert_eq!(c.mul(&e, &e), e);

        let c = ctx("z2", 1);
        let a = m([1, 1, 1, 0]);
        assert_eq!(c.mul(&a, &a), m([0, 1, 1, 1]));
    }

    #[test]
    fn identity_is_neutral() {
        let c = ctx("z9", 3);
        let id = c.identity();
        for i in (0..c.matrix_count() as usize).step_by(37) {
            let a = c.matrix(i);
            assert_eq!(c.mul(&a, &id), a);
            assert_eq!(c.mul(&id, &a), a);
            assert_eq!(c.add(&a, &c.neg(&a)), c.zero_matrix());
            assert_eq!(c.scale(ElementId(1), &a), a);
        }
    }

    #[test]
    fn scale_example() {
        let c = ctx("z4", 1);
        assert_eq!(c.scale(ElementId(2), &m([1, 3, 2, 1])), m([2, 2, 0, 2]));
    }

    #[test]
    fn det_and_trace_examples() {
        let c = ctx("z4", 2);
        assert_eq!(c.det_s(&c.identity()).unwrap(), ElementId(1));
        assert_eq!(c.tr(&c.identity()), ElementId(2));
        assert_eq!(c.det_s(&m([1, 1, 1, 0])).unwrap(), ElementId(0));

        let c = ctx("z4", 1);
        let a = m([3, 2, 2, 2]);
        assert_eq!(c.tr(&a), ElementId(1));
        assert_eq!(c.det_s(&a).unwrap(), ElementId(2));
    }

    #[test]
    fn det_refused_on_noncommutative_base() {
        let c = ctx("twist", 0);
        assert!(c.det_s(&c.identity()).unwrap_err().is_hypothesis());
    }

    #[test]
    fn unit_examples() {
        let c = ctx("z4", 2);
        assert!(c.is_unit(&m([1, 3, 2, 1])));
        assert!(c
            .is_unit_with(&m([1, 3, 2, 1]), UnitStrategy::DiagonalUnits)
            .unwrap());
        assert_eq!(c.inverse(&c.identity()), Some(c.identity()));

        let c = ctx("z2", 1);
        assert_eq!(c.inverse(&m([1, 1, 1, 0])), Some(m([0, 1, 1, 1])));
        assert_eq!(c.search_inverse(&m([1, 1, 1, 0])), Some(m([0, 1, 1, 1])));
        assert!(c
            .is_unit_with(&m([1, 1, 1, 0]), UnitStrategy::DiagonalUnits)
            .is_err());
    }

    #[test]
    fn radical_pattern_examples() {
        let c = ctx("z4", 2);
        assert!(c.in_jacobson(&m([2, 3, 1, 2])));
        assert!(c.in_jacobson(&c.zero_matrix()));
        let c = ctx("z4", 1);
        assert!(!c.in_jacobson(&m([2, 1, 1, 2])));
    }

    #[test]
    fn enumeration_counts() {
        let c = ctx("z2", 1);
        assert_eq!(
            c.enumerate(MatrixClass::All, Enumeration::Exhaustive)
                .unwrap()
                .len(),
            16
        );
        assert_eq!(
            c.enumerate(MatrixClass::Idempotents, Enumeration::Exhaustive)
                .unwrap()
                .len(),
            8
        );
        let c = ctx("z4", 2);
        assert_eq!(
            c.enumerate(MatrixClass::Units, Enumeration::Exhaustive)
                .unwrap()
                .len(),
            64
        );
        assert_eq!(
            c.enumerate(MatrixClass::Radical, Enumeration::Exhaustive)
                .unwrap()
                .len(),
            64
        );
    }

    #[test]
    fn enumeration_is_canonically_ordered() {
        let c = ctx("z3", 1);
        let all = c
            .enumerate(MatrixClass::Units, Enumeration::Exhaustive)
            .unwrap();
        assert!(all.windows(2).all(|w| c.index(&w[0]) < c.index(&w[1])));
    }

    #[test]
    fn enumeration_cap_refuses() {
        let ring = catalog::get("z9").unwrap();
        let caps = Caps {
            enumeration: 1000,
            ..Caps::default()
        };
        let c = FMContext::from_catalog(&ring, ElementId(1), caps).unwrap();
        assert!(matches!(
            c.enumerate(MatrixClass::All, Enumeration::Exhaustive),
            Err(Error::CapExceeded { .. })
        ));
        let sample = c
            .enumerate(
                MatrixClass::All,
                Enumeration::Sampled { count: 50, seed: 0 },
            )
            .unwrap();
        assert_eq!(sample.len(), 50);
        let again = c
            .enumerate(
                MatrixClass::All,
                Enumeration::Sampled { count: 50, seed: 0 },
            )
            .unwrap();
        assert_eq!(sample, again);
    }

    #[test]
    fn non_central_s_refused() {
        let ring = catalog::get("twist").unwrap();
        let w = ring.ring.parse_element("w").unwrap();
        assert_eq!(
            FMContext::from_catalog(&ring, w, Caps::default()).unwrap_err(),
            Error::NotCentral(w)
        );
    }

    #[test]
    fn index_round_trips() {
        let c = ctx("z3", 0);
        for i in 0..c.matrix_count() as usize {
            assert_eq!(c.index(&c.matrix(i)), i);
        }
    }

    #[test]
    fn nilpotence() {
        let c = ctx("z2", 1);
        assert!(c.is_nilpotent(&m([0, 1, 0, 0])));
        assert!(c.is_nilpotent(&m([1, 1, 1, 1])));
        assert!(!c.is_nilpotent(&m([1, 0, 0, 0])));
        assert!(!c.is_nilpotent(&m([1, 1, 1, 0])));
    }
}
