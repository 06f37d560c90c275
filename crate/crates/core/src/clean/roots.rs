use serde::Serialize;

use super::{quadratic, standard_form_matrix, Orientation};
use crate::error::{Error, Result};
use crate::formal::{FMContext, FMatrix, Similarity};
use crate::ring::{ElementId, FiniteRing};

/// Roots of `t² − tr(A)·t + det_s(A)`, split by location.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharPolyRoots {
    pub in_j: Vec<ElementId>,
    pub in_one_plus_j: Vec<ElementId>,
    pub all: Vec<ElementId>,
}

pub fn char_poly_roots(ctx: &FMContext, a: &FMatrix) -> Result<CharPolyRoots> {
    let det = ctx.det_s(a)?;
    let tr = ctx.tr(a);
    let r = ctx.base();
    let an = ctx.analysis();
    let all: Vec<ElementId> = r
        .elements()
        .filter(|&t| quadratic(ctx, tr, det, t) == r.zero())
        .collect();
    Ok(CharPolyRoots {
        in_j: all.iter().copied().filter(|&t| an.in_jacobson(t)).collect(),
        in_one_plus_j: all
            .iter()
            .copied()
            .filter(|&t| an.in_one_plus_jacobson(t))
            .collect(),
        all,
    })
}

/// First `t` of `subset` with `t·t − p·t + q = 0`.
pub fn right_root_search(
    r: &FiniteRing,
    p: ElementId,
    q: ElementId,
    subset: &[ElementId],
) -> Option<ElementId> {
    subset
        .iter()
        .copied()
        .find(|&t| r.add(r.sub(r.mul(t, t), r.mul(p, t)), q) == r.zero())
}

/// `P⁻¹AP` equal to `[[u,1],[v,w]]` or `[[w,1],[v,u]]` with `u ∈ 1+J`,
/// `v ∈ U`, `w ∈ J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    pub orientation: Orientation,
    pub u: ElementId,
    pub v: ElementId,
    pub w: ElementId,
    pub similarity: Similarity,
}

impl StandardForm {
    pub fn matrix(&self, ctx: &FMContext) -> FMatrix {
        standard_form_matrix(ctx, self.orientation, self.u, self.v, self.w)
    }

    /// Reads a standard form off `B`, if `B` is one.
    pub(crate) fn recognize(ctx: &FMContext, b: &FMatrix, similarity: Similarity) -> Option<Self> {
        let an = ctx.analysis();
        if b.b != ctx.base().one() || !an.is_unit(b.c) {
            return None;
        }
        let orientation = if an.in_one_plus_jacobson(b.a) && an.in_jacobson(b.d) {
            Orientation::UnitFirst
        } else if an.in_jacobson(b.a) && an.in_one_plus_jacobson(b.d) {
            Orientation::RadicalFirst
        } else {
            return None;
        };
        let (u, w) = match orientation {
            Orientation::UnitFirst => (b.a, b.d),
            Orientation::RadicalFirst => (b.d, b.a),
        };
        Some(StandardForm {
            orientation,
            u,
            v: b.c,
            w,
            similarity,
        })
    }
}

pub(crate) fn require_local_radical_s(ctx: &FMContext) -> Result<()> {
    if !ctx.analysis().is_local {
        return Err(Error::hypothesis("the base ring must be local"));
    }
    if !ctx.s_in_jacobson() {
        return Err(Error::hypothesis("s must lie in J(R)"));
    }
    Ok(())
}

/// Scans conjugates `P⁻¹AP` over all units `P` in canonical order.
pub(crate) fn standard_forms<'a>(
    ctx: &'a FMContext,
    a: &'a FMatrix,
) -> Result<impl Iterator<Item = StandardForm> + 'a> {
    let units = ctx.units_with_inverses()?;
    Ok(units.iter().filter_map(move |&(p, p_inv)| {
        let b = ctx.conjugate(a, &p, &p_inv);
        StandardForm::recognize(ctx, &b, Similarity { p, p_inv })
    }))
}

/// The first standard form similar to `A` (canonical order of `P`).
///
/// Requires a local base, `s ∈ J(R)`, and neither `A` nor `I − A` a unit.
/// `Ok(None)` means the exhaustive search came up empty.
pub fn find_standard_form(ctx: &FMContext, a: &FMatrix) -> Result<Option<StandardForm>> {
    require_local_radical_s(ctx)?;
    if ctx.unit_inverse(a).is_some() || ctx.unit_inverse(&ctx.complement(a)).is_some() {
        return Err(Error::hypothesis("A and I - A must both be non-units"));
    }
    Ok(standard_forms(ctx, a)?.next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Caps;

    fn ctx(name: &str, s: u16) -> FMContext {
        let ring = catalog::get(name).unwrap();
        FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap()
    }

    fn ids(v: &[u16]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn char_poly_examples() {
        let c = ctx("z4", 1);
        let roots = char_poly_roots(&c, &FMatrix::from_indices([3, 2, 2, 2])).unwrap();
        assert_eq!(roots.all, ids(&[2, 3]));
        assert_eq!(roots.in_j, ids(&[2]));
        assert_eq!(roots.in_one_plus_j, ids(&[3]));

        let zero = char_poly_roots(&c, &c.zero_matrix()).unwrap();
        assert!(zero.in_j.contains(&ElementId(0)));
        let id = char_poly_roots(&c, &c.identity()).unwrap();
        assert!(id.in_one_plus_j.contains(&ElementId(1)));
    }

    #[test]
    fn right_root_examples() {
        let z4 = catalog::get("z4").unwrap();
        let r = &z4.ring;
        let all: Vec<_> = r.elements().collect();
        assert_eq!(
            right_root_search(r, ElementId(1), ElementId(0), &all),
            Some(ElementId(0))
        );
        assert_eq!(
            right_root_search(r, ElementId(1), ElementId(2), &ids(&[0, 2])),
            Some(ElementId(2))
        );
        assert_eq!(
            right_root_search(r, ElementId(1), ElementId(2), &ids(&[1, 3])),
            Some(ElementId(3))
        );
    }

    #[test]
    fn left_coefficients_matter_in_twist_ring() {
        let t = catalog::get("twist").unwrap();
        let r = &t.ring;
        let (w, x) = (r.parse_element("w").unwrap(), r.parse_element("x").unwrap());
        assert_ne!(r.mul(w, x), r.mul(x, w));
        // t² − w·t at t = x is −w·x, nonzero; with the coefficient on the
        // right it would be −x·w instead.
        let all: Vec<_> = r.elements().collect();
        let root = right_root_search(r, w, r.zero(), &all);
        assert_eq!(root, Some(r.zero()));
        assert_ne!(r.sub(r.mul(x, x), r.mul(w, x)), r.zero());
    }

    #[test]
    fn standard_form_examples() {
        let c = ctx("z4", 2);
        let a = FMatrix::from_indices([1, 1, 1, 0]);
        let form = find_standard_form(&c, &a).unwrap().unwrap();
        assert_eq!(form.similarity.p, c.identity());
        assert_eq!(
            (form.u, form.v, form.w),
            (ElementId(1), ElementId(1), ElementId(0))
        );

        let a = FMatrix::from_indices([3, 1, 1, 2]);
        let form = find_standard_form(&c, &a).unwrap().unwrap();
        assert!(form.similarity.verify(&c, &a, &form.matrix(&c)));
        assert!(find_standard_form(&c, &c.identity())
            .unwrap_err()
            .is_hypothesis());
        assert!(find_standard_form(&ctx("z4", 1), &a)
            .unwrap_err()
            .is_hypothesis());
    }
}
