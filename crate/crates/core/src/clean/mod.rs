//! Strongly clean, strongly J-clean and strongly nil-clean matrices.
//!
//! Every positive decision carries a [`CleanCertificate`] that can be
//! re-checked by direct multiplication with [`CleanCertificate::verify`].

mod decide;
mod oracle;
mod roots;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::{FMContext, FMatrix, Similarity};
use crate::ring::ElementId;

pub use decide::{
    decide, decide_sc, decide_sjc, decide_sjc_commutative, decide_sjc_radical_s, decide_snc,
    det_tr_radical_test, radical_power_check, DecideMethod, DetTrVerdict,
};
pub use oracle::{oracle_decide, oracle_table};
pub(crate) use roots::standard_forms;
pub use roots::{
    char_poly_roots, find_standard_form, right_root_search, CharPolyRoots, StandardForm,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CleanKind {
    #[serde(rename = "strongly-clean")]
    StronglyClean,
    #[serde(rename = "strongly-J-clean")]
    StronglyJClean,
    #[serde(rename = "strongly-nil-clean")]
    StronglyNilClean,
}

impl CleanKind {
    pub const ALL: [CleanKind; 3] = [
        CleanKind::StronglyClean,
        CleanKind::StronglyJClean,
        CleanKind::StronglyNilClean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CleanKind::StronglyClean => "strongly-clean",
            CleanKind::StronglyJClean => "strongly-J-clean",
            CleanKind::StronglyNilClean => "strongly-nil-clean",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            CleanKind::StronglyClean => "sc",
            CleanKind::StronglyJClean => "sjc",
            CleanKind::StronglyNilClean => "snc",
        }
    }

    pub(crate) fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CleanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CleanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CleanKind::ALL
            .into_iter()
            .find(|k| k.short() == s || k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown clean kind {s:?} (sc, sjc, snc)")))
    }
}

/// Which procedure produced a verdict. Serialized as the `decided_by` tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "lemma-2.8")]
    DiagonalCriterion,
    #[serde(rename = "lemma-2.9")]
    NilDiagonalCriterion,
    #[serde(rename = "thm-2.13")]
    UnitOrJClean,
    #[serde(rename = "thm-2.16")]
    RightRootCriterion,
    #[serde(rename = "thm-3.6")]
    CharPolyCriterion,
}

/// Position of the `1 + J` entry: first (`[[u,·],[·,w]]`, `diag(v,w)`) or
/// second (`[[w,·],[·,u]]`, `diag(w,v)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    UnitFirst,
    RadicalFirst,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::UnitFirst, Orientation::RadicalFirst];

    /// `diag(v, w)` or `diag(w, v)`.
    pub fn diag(self, ctx: &FMContext, v: ElementId, w: ElementId) -> FMatrix {
        match self {
            Orientation::UnitFirst => ctx.diag(v, w),
            Orientation::RadicalFirst => ctx.diag(w, v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Evidence {
    /// `A = E + W` given explicitly.
    Decomposition { e: FMatrix, w: FMatrix },
    /// `A` itself is in the target radical (J or Nil): `E = 0`.
    RadicalMember,
    /// `I − A` is in the target radical: `E = I`.
    ComplementRadicalMember,
    /// `A` is a unit: `E = 0`.
    UnitMember { inverse: FMatrix },
    /// `I − A` is a unit: `E = I`.
    ComplementUnitMember { inverse: FMatrix },
    /// `P⁻¹AP` is `diag(v,w)` or `diag(w,v)` with `v ∈ 1+J`, `w ∈ J`.
    DiagonalSimilarity {
        p: FMatrix,
        p_inv: FMatrix,
        v: ElementId,
        w: ElementId,
        orientation: Orientation,
    },
    /// Roots of `t² − tr(A)t + det_s(A)` in `1+J` and in `J`.
    QuadraticRoots {
        root_one_plus_j: ElementId,
        root_j: ElementId,
    },
    /// A standard form `P⁻¹AP` with right roots of its two quadratics.
    StandardFormRoots {
        p: FMatrix,
        p_inv: FMatrix,
        orientation: Orientation,
        u: ElementId,
        v: ElementId,
        w: ElementId,
        root_one_plus_j: ElementId,
        root_j: ElementId,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanCertificate {
    pub kind: CleanKind,
    #[serde(flatten)]
    pub evidence: Evidence,
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// Membership in the "small" part of R used by a kind: Nil(R) for
/// strongly nil-clean, J(R) otherwise.
fn small(ctx: &FMContext, kind: CleanKind, x: ElementId) -> bool {
    match kind {
        CleanKind::StronglyNilClean => ctx.analysis().is_nilpotent(x),
        _ => ctx.analysis().in_jacobson(x),
    }
}

fn one_plus_small(ctx: &FMContext, kind: CleanKind, x: ElementId) -> bool {
    small(ctx, kind, ctx.base().sub(x, ctx.base().one()))
}

/// Whether `W` lies in the target set of `kind` in M2(R;s).
pub(crate) fn in_target(ctx: &FMContext, kind: CleanKind, w: &FMatrix) -> bool {
    match kind {
        CleanKind::StronglyClean => ctx.unit_inverse(w).is_some(),
        CleanKind::StronglyJClean => ctx.in_jacobson(w),
        CleanKind::StronglyNilClean => ctx.is_nilpotent(w),
    }
}

/// `t·t − p·t + q`.
pub(crate) fn quadratic(ctx: &FMContext, p: ElementId, q: ElementId, t: ElementId) -> ElementId {
    let r = ctx.base();
    r.add(r.sub(r.mul(t, t), r.mul(p, t)), q)
}

/// Coefficients `(p, q)` of the two quadratics attached to a standard form,
/// paired with whether each root must lie in `1+J` (true) or `J` (false).
pub(crate) fn standard_form_quadratics(
    ctx: &FMContext,
    orientation: Orientation,
    u: ElementId,
    v: ElementId,
    w: ElementId,
) -> Option<[(ElementId, ElementId, bool); 2]> {
    let r = ctx.base();
    let v_inv = ctx.analysis().inverse(v)?;
    let s2v = r.mul(ctx.s_squared(), v);
    Some(match orientation {
        Orientation::UnitFirst => {
            let vuv = r.mul(r.mul(v, u), v_inv);
            [
                (r.add(vuv, w), r.sub(r.mul(vuv, w), s2v), true),
                (r.add(u, w), r.sub(r.mul(w, u), s2v), false),
            ]
        }
        Orientation::RadicalFirst => {
            let vwv = r.mul(r.mul(v, w), v_inv);
            [
                (r.add(u, vwv), r.sub(r.mul(vwv, u), s2v), false),
                (r.add(u, w), r.sub(r.mul(u, w), s2v), true),
            ]
        }
    })
}

/// The matrix `[[u,1],[v,w]]` or `[[w,1],[v,u]]`.
pub(crate) fn standard_form_matrix(
    ctx: &FMContext,
    orientation: Orientation,
    u: ElementId,
    v: ElementId,
    w: ElementId,
) -> FMatrix {
    let one = ctx.base().one();
    match orientation {
        Orientation::UnitFirst => FMatrix::new(u, one, v, w),
        Orientation::RadicalFirst => FMatrix::new(w, one, v, u),
    }
}

impl CleanCertificate {
    pub fn new(kind: CleanKind, evidence: Evidence) -> Self {
        CleanCertificate { kind, evidence }
    }

    /// The idempotent/remainder pair `(E, W)` implied by the evidence, or
    /// `None` for evidence that certifies existence without exhibiting `E`.
    pub fn decomposition(&self, ctx: &FMContext, a: &FMatrix) -> Option<(FMatrix, FMatrix)> {
        let id = ctx.identity();
        let r = ctx.base();
        let pair = match self.evidence {
            Evidence::Decomposition { e, w } => return Some((e, w)),
            Evidence::UnitMember { .. } => return Some((ctx.zero_matrix(), *a)),
            Evidence::ComplementUnitMember { .. } => return Some((id, ctx.sub(a, &id))),
            Evidence::RadicalMember => (ctx.zero_matrix(), *a),
            Evidence::ComplementRadicalMember => (id, ctx.sub(a, &id)),
            Evidence::DiagonalSimilarity {
                p,
                p_inv,
                orientation,
                ..
            } => {
                let d = orientation.diag(ctx, r.one(), r.zero());
                let e = ctx.mul(&ctx.mul(&p, &d), &p_inv);
                (e, ctx.sub(a, &e))
            }
            Evidence::QuadraticRoots {
                root_one_plus_j: x,
                root_j: y,
            } => {
                let inv = ctx.analysis().inverse(r.sub(x, y))?;
                let e = ctx.scale(inv, &ctx.sub(a, &ctx.scale(y, &id)));
                (e, ctx.sub(a, &e))
            }
            Evidence::StandardFormRoots { .. } => return None,
        };
        if self.kind == CleanKind::StronglyClean {
            // a = e + j  ⇒  a = (1 − e) + (2e − 1 + j), and 2e − 1 + j is a unit
            let e = ctx.sub(&id, &pair.0);
            Some((e, ctx.sub(a, &e)))
        } else {
            Some(pair)
        }
    }

    /// Re-checks the certificate for `A` by direct computation.
    pub fn verify(&self, ctx: &FMContext, a: &FMatrix) -> Result<()> {
        let kind = self.kind;
        let id = ctx.identity();
        // Radical-style evidence refers to J, or to Nil for nil-clean.
        let rad_kind = match kind {
            CleanKind::StronglyClean => CleanKind::StronglyJClean,
            k => k,
        };
        match self.evidence {
            Evidence::Decomposition { .. } => {}
            Evidence::RadicalMember => {
                if !in_target(ctx, rad_kind, a) {
                    return Err(reject("A is not in the radical"));
                }
            }
            Evidence::ComplementRadicalMember => {
                if !in_target(ctx, rad_kind, &ctx.complement(a)) {
                    return Err(reject("I - A is not in the radical"));
                }
            }
            Evidence::UnitMember { inverse } => {
                if kind != CleanKind::StronglyClean
                    || ctx.mul(a, &inverse) != id
                    || ctx.mul(&inverse, a) != id
                {
                    return Err(reject("claimed inverse of A is wrong"));
                }
            }
            Evidence::ComplementUnitMember { inverse } => {
                let c = ctx.complement(a);
                if kind != CleanKind::StronglyClean
                    || ctx.mul(&c, &inverse) != id
                    || ctx.mul(&inverse, &c) != id
                {
                    return Err(reject("claimed inverse of I - A is wrong"));
                }
            }
            Evidence::DiagonalSimilarity {
                p,
                p_inv,
                v,
                w,
                orientation,
            } => {
                let d = orientation.diag(ctx, v, w);
                if !(Similarity { p, p_inv }).verify(ctx, a, &d) {
                    return Err(reject("P does not conjugate A to the diagonal"));
                }
                if !one_plus_small(ctx, rad_kind, v) || !small(ctx, rad_kind, w) {
                    return Err(reject("diagonal entries outside 1+J / J"));
                }
            }
            Evidence::QuadraticRoots {
                root_one_plus_j: x,
                root_j: y,
            } => {
                let tr = ctx.tr(a);
                let det = ctx.det_s(a).map_err(|e| reject(e.to_string()))?;
                let r = ctx.base();
                let vanishes = |t| quadratic(ctx, tr, det, t) == r.zero();
                if !vanishes(x) || !vanishes(y) {
                    return Err(reject(
                        "claimed roots do not satisfy the characteristic polynomial",
                    ));
                }
                if !one_plus_small(ctx, rad_kind, x) || !small(ctx, rad_kind, y) {
                    return Err(reject("roots outside 1+J / J"));
                }
            }
            Evidence::StandardFormRoots {
                p,
                p_inv,
                orientation,
                u,
                v,
                w,
                root_one_plus_j,
                root_j,
            } => {
                let an = ctx.analysis();
                let b = standard_form_matrix(ctx, orientation, u, v, w);
                if !(Similarity { p, p_inv }).verify(ctx, a, &b) {
                    return Err(reject("P does not conjugate A to the standard form"));
                }
                if !an.in_one_plus_jacobson(u) || !an.is_unit(v) || !an.in_jacobson(w) {
                    return Err(reject("standard form entries have the wrong type"));
                }
                let quads = standard_form_quadratics(ctx, orientation, u, v, w)
                    .ok_or_else(|| reject("v is not a unit"))?;
                for (p, q, unit_root) in quads {
                    let t = if unit_root { root_one_plus_j } else { root_j };
                    if quadratic(ctx, p, q, t) != ctx.base().zero() {
                        return Err(reject("claimed right root does not satisfy its quadratic"));
                    }
                }
                if !an.in_one_plus_jacobson(root_one_plus_j) || !an.in_jacobson(root_j) {
                    return Err(reject("right roots outside 1+J / J"));
                }
                return Ok(());
            }
        }
        let (e, w) = self
            .decomposition(ctx, a)
            .ok_or_else(|| reject("evidence yields no decomposition"))?;
        if !ctx.is_idempotent(&e) {
            return Err(reject("E is not idempotent"));
        }
        if ctx.add(&e, &w) != *a {
            return Err(reject("A != E + W"));
        }
        if !ctx.commutes(&e, &w) {
            return Err(reject("E and W do not commute"));
        }
        if !in_target(ctx, kind, &w) {
            return Err(reject(format!("W is not in the target set of {kind}")));
        }
        Ok(())
    }
}

/// Outcome of deciding one matrix, as emitted in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: u32,
    pub kind: CleanKind,
    pub matrix: FMatrix,
    pub clean: bool,
    pub decided_by: Method,
    pub certificate: Option<CleanCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agrees_with_oracle: Option<bool>,
}
