use serde::Serialize;

use super::{FMContext, FMatrix};
use crate::error::{Error, Result};
use crate::ring::ElementId;

/// A unit `P` (with its inverse) witnessing `B = P⁻¹·A·P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Similarity {
    pub p: FMatrix,
    pub p_inv: FMatrix,
}

impl Similarity {
    /// Re-checks `P·P⁻¹ = P⁻¹·P = I` and `P⁻¹·A·P = B`.
    pub fn verify(&self, ctx: &FMContext, a: &FMatrix, b: &FMatrix) -> bool {
        let id = ctx.identity();
        ctx.mul(&self.p, &self.p_inv) == id
            && ctx.mul(&self.p_inv, &self.p) == id
            && ctx.conjugate(a, &self.p, &self.p_inv) == *b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentKind {
    Zero,
    Identity,
    #[serde(rename = "diag-1-0")]
    Diag10,
    #[serde(rename = "diag-0-1")]
    Diag01,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdempotentForm {
    pub kind: IdempotentKind,
    pub witness: Option<Similarity>,
}

/// First unit `P` in canonical order with `A·P = P·B`, i.e. `B = P⁻¹AP`.
/// Absence is exhaustive over the cached unit list.
pub fn similarity_search(ctx: &FMContext, a: &FMatrix, b: &FMatrix) -> Result<Option<Similarity>> {
    let units = ctx.units_with_inverses()?;
    Ok(units
        .iter()
        .find(|(p, _)| ctx.mul(a, p) == ctx.mul(p, b))
        .map(|&(p, p_inv)| Similarity { p, p_inv }))
}

/// Solutions `(x, y)` of the 2x2 system in which one column of an
/// unknown matrix takes part, in canonical order.
fn column_solutions(
    ctx: &FMContext,
    f: impl Fn(ElementId, ElementId) -> (ElementId, ElementId),
    target: (ElementId, ElementId),
) -> Vec<(ElementId, ElementId)> {
    let r = ctx.base();
    let mut out = Vec::new();
    for x in r.elements() {
        for y in r.elements() {
            if f(x, y) == target {
                out.push((x, y));
            }
        }
    }
    out
}

/// The least unit in canonical order among `[[p,q],[r,t]]` with `(p,r)`
/// from `first` and `(q,t)` from `second`.
fn least_unit(
    ctx: &FMContext,
    first: &[(ElementId, ElementId)],
    second: &[(ElementId, ElementId)],
) -> Option<Similarity> {
    let mut best: Option<Similarity> = None;
    for &(p, r) in first {
        for &(q, t) in second {
            let cand = FMatrix::new(p, q, r, t);
            if best.is_some_and(|b| b.p <= cand) {
                continue;
            }
            if let Some(p_inv) = ctx.unit_inverse(&cand) {
                best = Some(Similarity { p: cand, p_inv });
            }
        }
    }
    best
}

/// Similarity to `diag(x, y)`: the least unit `P` with `P⁻¹AP = diag(x, y)`.
///
/// `AP = P·diag(x, y)` splits into one system on the first column of `P`
/// and one on the second, so the search costs `O(|R|²)` per column.
pub fn diagonal_similarity(
    ctx: &FMContext,
    a: &FMatrix,
    x: ElementId,
    y: ElementId,
) -> Result<Option<Similarity>> {
    let r = ctx.base();
    let s2 = ctx.s_squared();
    let zero = r.zero();
    // (AP - P·D) first column: a p + s² b r - p x, c p + d r - r x
    let first = column_solutions(
        ctx,
        |p, q| {
            (
                r.sub(r.add(r.mul(a.a, p), r.mul(s2, r.mul(a.b, q))), r.mul(p, x)),
                r.sub(r.add(r.mul(a.c, p), r.mul(a.d, q)), r.mul(q, x)),
            )
        },
        (zero, zero),
    );
    if first.is_empty() {
        return Ok(None);
    }
    // second column: a q + b t - q y, s² c q + d t - t y
    let second = column_solutions(
        ctx,
        |q, t| {
            (
                r.sub(r.add(r.mul(a.a, q), r.mul(a.b, t)), r.mul(q, y)),
                r.sub(r.add(r.mul(s2, r.mul(a.c, q)), r.mul(a.d, t)), r.mul(t, y)),
            )
        },
        (zero, zero),
    );
    Ok(least_unit(ctx, &first, &second))
}

/// First pair of units `(U, V)` (canonical order, `U` major) with
/// `B = U·A·V`. For each `U` the equation `(UA)·V = B` is solved column by
/// column.
pub fn equivalence_search(
    ctx: &FMContext,
    a: &FMatrix,
    b: &FMatrix,
) -> Result<Option<(FMatrix, FMatrix)>> {
    let r = ctx.base();
    let s2 = ctx.s_squared();
    for (u, _) in ctx.units_with_inverses()? {
        let x = ctx.mul(u, a);
        let first = column_solutions(
            ctx,
            |p, q| {
                (
                    r.add(r.mul(x.a, p), r.mul(s2, r.mul(x.b, q))),
                    r.add(r.mul(x.c, p), r.mul(x.d, q)),
                )
            },
            (b.a, b.c),
        );
        if first.is_empty() {
            continue;
        }
        let second = column_solutions(
            ctx,
            |q, t| {
                (
                    r.add(r.mul(x.a, q), r.mul(x.b, t)),
                    r.add(r.mul(s2, r.mul(x.c, q)), r.mul(x.d, t)),
                )
            },
            (b.b, b.d),
        );
        if let Some(v) = least_unit(ctx, &first, &second) {
            return Ok(Some((*u, v.p)));
        }
    }
    Ok(None)
}

/// Classifies an idempotent up to similarity over a local base.
///
/// With `s` a unit a non-trivial idempotent is expected to be similar to
/// `diag(1,0)`; with `s ∈ J(R)` to exactly one of `diag(1,0)`, `diag(0,1)`.
/// A failed search is returned as [`Error::SearchExhausted`].
pub fn idempotent_canonical_form(ctx: &FMContext, e: &FMatrix) -> Result<IdempotentForm> {
    if !ctx.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    if !ctx.analysis().is_local {
        return Err(Error::hypothesis("idempotent forms need a local base ring"));
    }
    if ctx.is_zero(e) {
        return Ok(IdempotentForm {
            kind: IdempotentKind::Zero,
            witness: None,
        });
    }
    if ctx.is_identity(e) {
        return Ok(IdempotentForm {
            kind: IdempotentKind::Identity,
            witness: None,
        });
    }
    let r = ctx.base();
    let (zero, one) = (r.zero(), r.one());
    let mut targets = vec![(IdempotentKind::Diag10, one, zero)];
    if !ctx.s_is_unit() {
        targets.push((IdempotentKind::Diag01, zero, one));
    }
    for (kind, x, y) in targets {
        if let Some(w) = diagonal_similarity(ctx, e, x, y)? {
            return Ok(IdempotentForm {
                kind,
                witness: Some(w),
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "diagonal form for idempotent {}",
        ctx.render(e)
    )))
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

    fn m(e: [u16; 4]) -> FMatrix {
        FMatrix::from_indices(e)
    }

    #[test]
    fn reflexive_similarity_uses_identity() {
        let c = ctx("z4", 2);
        let a = m([3, 1, 2, 2]);
        let w = similarity_search(&c, &a, &a).unwrap().unwrap();
        assert_eq!(w.p, c.identity());
    }

    #[test]
    fn idempotent_similar_to_diag_1_0() {
        let c = ctx("z4", 2);
        let e = m([1, 1, 1, 0]);
        let d = c.diag(ElementId(1), ElementId(0));
        let w = similarity_search(&c, &e, &d).unwrap().unwrap();
        assert!(w.verify(&c, &e, &d));
        let fast = diagonal_similarity(&c, &e, ElementId(1), ElementId(0))
            .unwrap()
            .unwrap();
        assert_eq!(fast, w);
    }

    #[test]
    fn diagonal_idempotents_not_similar_when_s_radical() {
        let c = ctx("z4", 2);
        let d10 = c.diag(ElementId(1), ElementId(0));
        let d01 = c.diag(ElementId(0), ElementId(1));
        assert!(similarity_search(&c, &d10, &d01).unwrap().is_none());
        assert!(similarity_search(&c, &d01, &d10).unwrap().is_none());
        assert!(diagonal_similarity(&c, &d10, ElementId(0), ElementId(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn diagonal_solver_matches_unit_scan() {
        for (name, s) in [("z4", 1), ("z4", 2), ("z3", 1), ("f2t2", 2)] {
            let c = ctx(name, s);
            let r = c.base();
            for i in (0..c.matrix_count() as usize).step_by(7) {
                let a = c.matrix(i);
                for x in r.elements() {
                    for y in r.elements() {
                        let slow = similarity_search(&c, &a, &c.diag(x, y)).unwrap();
                        let fast = diagonal_similarity(&c, &a, x, y).unwrap();
                        assert_eq!(slow, fast, "{name} s={s} A={a} ({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let c = ctx("z4", 2);
        let a = m([1, 3, 2, 1]);
        assert_eq!(
            equivalence_search(&c, &a, &a).unwrap(),
            Some((c.identity(), c.identity()))
        );
        let (u, v) = equivalence_search(&c, &a, &c.identity()).unwrap().unwrap();
        assert_eq!(c.mul(&c.mul(&u, &a), &v), c.identity());

        let e = m([1, 1, 1, 0]);
        let found = (0..4u16).find_map(|x| {
            let d = c.diag(ElementId(1), ElementId(x));
            equivalence_search(&c, &e, &d).unwrap().map(|w| (d, w))
        });
        let (d, (u, v)) = found.expect("diagonal equivalent exists");
        assert_eq!(c.mul(&c.mul(&u, &e), &v), d);
    }

    #[test]
    fn idempotent_forms() {
        let c = ctx("z2", 1);
        assert_eq!(
            idempotent_canonical_form(&c, &c.zero_matrix())
                .unwrap()
                .kind,
            IdempotentKind::Zero
        );
        let e = m([1, 1, 0, 0]);
        let form = idempotent_canonical_form(&c, &e).unwrap();
        assert_eq!(form.kind, IdempotentKind::Diag10);
        let d = c.diag(ElementId(1), ElementId(0));
        assert!(form.witness.unwrap().verify(&c, &e, &d));

        let c = ctx("z4", 2);
        let e = m([1, 1, 1, 0]);
        let form = idempotent_canonical_form(&c, &e).unwrap();
        assert_eq!(form.kind, IdempotentKind::Diag10);
        assert!(idempotent_canonical_form(&c, &m([1, 1, 1, 1])).is_err());
    }
}
