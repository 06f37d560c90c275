use serde::Serialize;

use super::roots::{require_local_radical_s, standard_forms};
use super::{
    char_poly_roots, oracle_decide, standard_form_quadratics, CleanCertificate, CleanKind,
    Evidence, Method, Orientation, Verdict,
};
use crate::error::{Error, Result};
use crate::formal::{diagonal_similarity, FMContext, FMatrix};
use crate::ring::ElementId;
use crate::util::first_position;

fn require_local(ctx: &FMContext) -> Result<()> {
    if ctx.analysis().is_local {
        Ok(())
    } else {
        Err(Error::hypothesis("the base ring must be local"))
    }
}

/// Diagonal criterion shared by the J and Nil variants: radical membership
/// of `A` or `I − A`, then similarity to `diag(v,w)` / `diag(w,v)` with
/// `v` in `1 + small`, `w` in `small`.
fn diagonal_criterion(
    ctx: &FMContext,
    a: &FMatrix,
    kind: CleanKind,
    small: &[ElementId],
    in_radical: impl Fn(&FMatrix) -> bool,
) -> Result<Option<CleanCertificate>> {
    require_local(ctx)?;
    if in_radical(a) {
        return Ok(Some(CleanCertificate::new(kind, Evidence::RadicalMember)));
    }
    if in_radical(&ctx.complement(a)) {
        return Ok(Some(CleanCertificate::new(
            kind,
            Evidence::ComplementRadicalMember,
        )));
    }
    let r = ctx.base();
    // A ∼ diag(x, y) forces A − xI and A − yI to be non-units, as
    // diag(0, y − x) and diag(x − y, 0) are.
    let shift_is_unit =
        |x: ElementId| ctx.is_unit_fast(&ctx.sub(a, &ctx.scale(x, &ctx.identity())));
    let ones: Vec<(ElementId, bool)> = small
        .iter()
        .map(|&j| {
            let v = r.add(r.one(), j);
            (v, shift_is_unit(v))
        })
        .collect();
    let smalls: Vec<(ElementId, bool)> = small.iter().map(|&w| (w, shift_is_unit(w))).collect();
    for orientation in Orientation::BOTH {
        for &(v, v_blocked) in &ones {
            for &(w, w_blocked) in &smalls {
                if v_blocked || w_blocked {
                    continue;
                }
                let (x, y) = match orientation {
                    Orientation::UnitFirst => (v, w),
                    Orientation::RadicalFirst => (w, v),
                };
                if let Some(sim) = diagonal_similarity(ctx, a, x, y)? {
                    let evidence = Evidence::DiagonalSimilarity {
                        p: sim.p,
                        p_inv: sim.p_inv,
                        v,
                        w,
                        orientation,
                    };
                    return Ok(Some(CleanCertificate::new(kind, evidence)));
                }
            }
        }
    }
    Ok(None)
}

/// Strongly J-clean by the diagonal criterion over a local base.
pub fn decide_sjc(ctx: &FMContext, a: &FMatrix) -> Result<Option<CleanCertificate>> {
    let small = ctx.analysis().jacobson();
    diagonal_criterion(ctx, a, CleanKind::StronglyJClean, &small, |m| {
        ctx.in_jacobson(m)
    })
}

/// Strongly nil-clean by the diagonal criterion with Nil(R) in place of J(R).
pub fn decide_snc(ctx: &FMContext, a: &FMatrix) -> Result<Option<CleanCertificate>> {
    let small = ctx.analysis().nilpotents();
    diagonal_criterion(ctx, a, CleanKind::StronglyNilClean, &small, |m| {
        ctx.is_nilpotent(m)
    })
}

/// Strongly clean iff `A` or `I − A` is a unit or `A` is strongly J-clean.
pub fn decide_sc(ctx: &FMContext, a: &FMatrix) -> Result<Option<CleanCertificate>> {
    require_local(ctx)?;
    let kind = CleanKind::StronglyClean;
    if let Some(inverse) = ctx.unit_inverse(a) {
        return Ok(Some(CleanCertificate::new(
            kind,
            Evidence::UnitMember { inverse },
        )));
    }
    if let Some(inverse) = ctx.unit_inverse(&ctx.complement(a)) {
        return Ok(Some(CleanCertificate::new(
            kind,
            Evidence::ComplementUnitMember { inverse },
        )));
    }
    Ok(decide_sjc(ctx, a)?.map(|c| CleanCertificate::new(kind, c.evidence)))
}

/// Strongly J-clean over a commutative local base via the roots of
/// `t² − tr(A)t + det_s(A)`.
pub fn decide_sjc_commutative(ctx: &FMContext, a: &FMatrix) -> Result<Option<CleanCertificate>> {
    require_local(ctx)?;
    let kind = CleanKind::StronglyJClean;
    let roots = char_poly_roots(ctx, a)?;
    if ctx.in_jacobson(a) {
        return Ok(Some(CleanCertificate::new(kind, Evidence::RadicalMember)));
    }
    if ctx.in_jacobson(&ctx.complement(a)) {
        return Ok(Some(CleanCertificate::new(
            kind,
            Evidence::ComplementRadicalMember,
        )));
    }
    Ok(match (roots.in_one_plus_j.first(), roots.in_j.first()) {
        (Some(&x), Some(&y)) => Some(CleanCertificate::new(
            kind,
            Evidence::QuadraticRoots {
                root_one_plus_j: x,
                root_j: y,
            },
        )),
        _ => None,
    })
}

/// Strongly J-clean for `s ∈ J(R)` via standard forms `[[u,1],[v,w]]` /
/// `[[w,1],[v,u]]` and right roots of their attached quadratics. Valid over
/// noncommutative bases.
///
/// Succeeds if some standard form similar to `A` has both roots. When `A`
/// and `I − A` are non-units but no standard form exists at all, returns
/// [`Error::SearchExhausted`].
pub fn decide_sjc_radical_s(ctx: &FMContext, a: &FMatrix) -> Result<Option<CleanCertificate>> {
    require_local_radical_s(ctx)?;
    let kind = CleanKind::StronglyJClean;
    if ctx.in_jacobson(a) {
        return Ok(Some(CleanCertificate::new(kind, Evidence::RadicalMember)));
    }
    if ctx.in_jacobson(&ctx.complement(a)) {
        return Ok(Some(CleanCertificate::new(
            kind,
            Evidence::ComplementRadicalMember,
        )));
    }
    // A unit is never similar to a standard form, which is a non-unit.
    if ctx.unit_inverse(a).is_some() || ctx.unit_inverse(&ctx.complement(a)).is_some() {
        return Ok(None);
    }
    let an = ctx.analysis();
    let jac = an.jacobson();
    let one_plus = an.one_plus_jacobson();
    let r = ctx.base();
    let mut seen_form = false;
    for form in standard_forms(ctx, a)? {
        seen_form = true;
        let Some(quads) = standard_form_quadratics(ctx, form.orientation, form.u, form.v, form.w)
        else {
            continue;
        };
        let mut roots = [None, None];
        for (slot, (p, q, unit_root)) in quads.into_iter().enumerate() {
            let subset = if unit_root { &one_plus } else { &jac };
            roots[slot] = super::right_root_search(r, p, q, subset).map(|t| (t, unit_root));
        }
        if let [Some(first), Some(second)] = roots {
            let (root_one_plus_j, root_j) = if first.1 {
                (first.0, second.0)
            } else {
                (second.0, first.0)
            };
            let evidence = Evidence::StandardFormRoots {
                p: form.similarity.p,
                p_inv: form.similarity.p_inv,
                orientation: form.orientation,
                u: form.u,
                v: form.v,
                w: form.w,
                root_one_plus_j,
                root_j,
            };
            return Ok(Some(CleanCertificate::new(kind, evidence)));
        }
    }
    if seen_form {
        Ok(None)
    } else {
        Err(Error::SearchExhausted(format!(
            "standard form similar to {}",
            ctx.render(a)
        )))
    }
}

/// Least `n ≤ n_max` with `Aⁿ ∈ J(M2(R;s))`; `n_max` defaults to the size
/// of M2(R;s), which covers the whole orbit of powers.
pub fn radical_power_check(ctx: &FMContext, a: &FMatrix, n_max: Option<u64>) -> Option<u64> {
    let bound = n_max.unwrap_or_else(|| ctx.matrix_count());
    first_position(*a, |p| ctx.mul(&p, a), |p| ctx.in_jacobson(&p), bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetTrVerdict {
    /// `det_s(A), tr(A) ∈ J(R)` and `A ∉ J(M2)`.
    NotStronglyJClean,
    /// `det_s(A), tr(A) ∈ J(R)` and `A ∈ J(M2)`.
    RadicalMember,
    /// `det_s(A)` or `tr(A)` is outside J(R): the test says nothing.
    NoVerdict,
}

/// The determinant/trace radical test over a commutative base.
pub fn det_tr_radical_test(ctx: &FMContext, a: &FMatrix) -> Result<DetTrVerdict> {
    let an = ctx.analysis();
    let det = ctx.det_s(a)?;
    Ok(if !(an.in_jacobson(det) && an.in_jacobson(ctx.tr(a))) {
        DetTrVerdict::NoVerdict
    } else if ctx.in_jacobson(a) {
        DetTrVerdict::RadicalMember
    } else {
        DetTrVerdict::NotStronglyJClean
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecideMethod {
    Oracle,
    /// The structural criterion whose hypotheses hold for this context.
    Auto,
}

fn auto_method(ctx: &FMContext, kind: CleanKind) -> Result<Method> {
    require_local(ctx)?;
    Ok(match kind {
        CleanKind::StronglyClean => Method::UnitOrJClean,
        CleanKind::StronglyNilClean => Method::NilDiagonalCriterion,
        CleanKind::StronglyJClean if ctx.analysis().is_commutative => Method::CharPolyCriterion,
        CleanKind::StronglyJClean if ctx.s_in_jacobson() => Method::RightRootCriterion,
        CleanKind::StronglyJClean => Method::DiagonalCriterion,
    })
}

/// Decides one matrix, optionally cross-checking against the oracle.
/// Certificates are re-verified before being returned.
pub fn decide(
    ctx: &FMContext,
    a: &FMatrix,
    kind: CleanKind,
    method: DecideMethod,
    cross_check: bool,
) -> Result<Verdict> {
    let decided_by = match method {
        DecideMethod::Oracle => Method::Oracle,
        DecideMethod::Auto => auto_method(ctx, kind)?,
    };
    let certificate = match decided_by {
        Method::Oracle => oracle_decide(ctx, a, kind)?,
        Method::DiagonalCriterion => decide_sjc(ctx, a)?,
        Method::NilDiagonalCriterion => decide_snc(ctx, a)?,
        Method::UnitOrJClean => decide_sc(ctx, a)?,
        Method::RightRootCriterion => decide_sjc_radical_s(ctx, a)?,
        Method::CharPolyCriterion => decide_sjc_commutative(ctx, a)?,
    };
    if let Some(cert) = &certificate {
        cert.verify(ctx, a)?;
    }
    let agrees_with_oracle = if cross_check && decided_by != Method::Oracle {
        Some(oracle_decide(ctx, a, kind)?.is_some() == certificate.is_some())
    } else {
        None
    };
    Ok(Verdict {
        schema: 1,
        kind,
        matrix: *a,
        clean: certificate.is_some(),
        decided_by,
        certificate,
        agrees_with_oracle,
    })
}
