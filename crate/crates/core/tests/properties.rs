//! Property tests over the default catalog, every central s.

use std::sync::OnceLock;

use jclean_core::catalog;
use jclean_core::clean::{decide, CleanKind, DecideMethod};
use jclean_core::formal::{FMContext, FMatrix, UnitStrategy};
use jclean_core::ring::{truncated_power_series, ElementId, SeriesRing};
use jclean_core::Caps;
use proptest::prelude::*;

fn contexts() -> &'static [FMContext] {
    static CTXS: OnceLock<Vec<FMContext>> = OnceLock::new();
    CTXS.get_or_init(|| {
        catalog::default_catalog()
            .iter()
            .flat_map(|ring| {
                ring.central_elements()
                    .into_iter()
                    .map(|s| FMContext::from_catalog(ring, s, Caps::default()).unwrap())
            })
            .collect()
    })
}

fn pick(k: usize) -> &'static FMContext {
    let all = contexts();
    &all[k % all.len()]
}

fn matrix(ctx: &FMContext, raw: [u16; 4]) -> FMatrix {
    let n = ctx.base().size() as u16;
    FMatrix::from_indices(raw.map(|x| x % n))
}

fn raw() -> impl Strategy<Value = [u16; 4]> {
    any::<[u16; 4]>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_associative_and_distributive(k in any::<usize>(), x in raw(), y in raw(), z in raw()) {
        let ctx = pick(k);
        let (a, b, c) = (matrix(ctx, x), matrix(ctx, y), matrix(ctx, z));
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        prop_assert_eq!(ctx.mul(&ctx.identity(), &a), a);
    }

    #[test]
    fn determinant_is_multiplicative(k in any::<usize>(), x in raw(), y in raw()) {
        let ctx = pick(k);
        prop_assume!(ctx.analysis().is_commutative);
        let (a, b) = (matrix(ctx, x), matrix(ctx, y));
        let r = ctx.base();
        prop_assert_eq!(ctx.det_s(&ctx.mul(&a, &b)).unwrap(), r.mul(ctx.det_s(&a).unwrap(), ctx.det_s(&b).unwrap()));
    }

    #[test]
    fn determinant_of_complement(k in any::<usize>(), x in raw()) {
        let ctx = pick(k);
        prop_assume!(ctx.analysis().is_commutative);
        let a = matrix(ctx, x);
        let r = ctx.base();
        let expected = r.add(r.sub(r.one(), ctx.tr(&a)), ctx.det_s(&a).unwrap());
        prop_assert_eq!(ctx.det_s(&ctx.complement(&a)).unwrap(), expected);
    }

    #[test]
    fn similarity_preserves_invariants(k in any::<usize>(), x in raw(), y in raw()) {
        let ctx = pick(k);
        let (a, p) = (matrix(ctx, x), matrix(ctx, y));
        let p_inv = ctx.unit_inverse(&p);
        prop_assume!(p_inv.is_some());
        let b = ctx.conjugate(&a, &p, &p_inv.unwrap());
        prop_assert_eq!(ctx.in_jacobson(&a), ctx.in_jacobson(&b));
        prop_assert_eq!(ctx.is_idempotent(&a), ctx.is_idempotent(&b));
        prop_assert_eq!(ctx.is_unit_fast(&a), ctx.is_unit_fast(&b));
        if ctx.analysis().is_commutative {
            prop_assert_eq!(ctx.det_s(&a).unwrap(), ctx.det_s(&b).unwrap());
            prop_assert_eq!(ctx.tr(&a), ctx.tr(&b));
        }
    }

    #[test]
    fn j_s_equals_j_s_squared(k in any::<usize>(), x in any::<u16>()) {
        let ctx = pick(k);
        let r = ctx.base();
        let x = ElementId(x % r.size() as u16);
        prop_assert_eq!(ctx.in_j_s(x), ctx.analysis().in_jacobson(r.mul(ctx.s_squared(), x)));
        prop_assert_eq!(ctx.in_j_s(x), ctx.analysis().in_jacobson(r.mul(ctx.s(), x)));
    }

    #[test]
    fn unit_strategies_agree(k in any::<usize>(), x in raw()) {
        let ctx = pick(k);
        let a = matrix(ctx, x);
        let search = ctx.is_unit_with(&a, UnitStrategy::Search).unwrap();
        for strategy in [UnitStrategy::Determinant, UnitStrategy::DiagonalUnits] {
            if let Ok(verdict) = ctx.is_unit_with(&a, strategy) {
                prop_assert_eq!(verdict, search, "{:?}", strategy);
            }
        }
        prop_assert_eq!(ctx.is_unit_fast(&a), search);
    }

    #[test]
    fn radical_members_are_quasi_regular(k in any::<usize>(), x in raw(), y in raw()) {
        let ctx = pick(k);
        let (j, j_s) = (ctx.analysis().jacobson(), ctx.j_s());
        let from = |set: &[ElementId], i: u16| set[i as usize % set.len()];
        let a = FMatrix::new(from(&j, x[0]), from(&j_s, x[1]), from(&j_s, x[2]), from(&j, x[3]));
        let b = matrix(ctx, y);
        prop_assert!(ctx.in_jacobson(&a));
        prop_assert!(ctx.is_unit_fast(&ctx.complement(&ctx.mul(&b, &a))));
        prop_assert!(ctx.in_jacobson(&ctx.mul(&a, &b)));
        prop_assert!(ctx.in_jacobson(&ctx.mul(&b, &a)));
    }

    #[test]
    fn certificates_verify_and_agree_with_oracle(k in any::<usize>(), x in raw(), kind in 0usize..3) {
        let ctx = pick(k);
        prop_assume!(ctx.base().size() <= 9);
        let kind = [CleanKind::StronglyClean, CleanKind::StronglyJClean, CleanKind::StronglyNilClean][kind];
        let a = matrix(ctx, x);
        if let Ok(v) = decide(ctx, &a, kind, DecideMethod::Auto, true) {
            prop_assert_eq!(v.agrees_with_oracle, Some(true));
            prop_assert_eq!(v.clean, v.certificate.is_some());
            if let Some(cert) = &v.certificate {
                prop_assert!(cert.verify(ctx, &a).is_ok());
            }
        }
    }

    #[test]
    fn evaluation_at_zero_is_a_ring_map(which in 0usize..3, x in any::<u16>(), y in any::<u16>()) {
        let series = series_rings();
        let s = &series[which];
        let r = &s.ring;
        let n = r.size() as u16;
        let (x, y) = (ElementId(x % n), ElementId(y % n));
        prop_assert_eq!(s.eval_at_zero(r.mul(x, y)).index(), base_mul(which, s.eval_at_zero(x), s.eval_at_zero(y)));
        prop_assert_eq!(
            s.eval_at_zero(r.add(x, y)).index(),
            (s.eval_at_zero(x).index() + s.eval_at_zero(y).index()) % base_size(which)
        );
    }
}

const SERIES: [(&str, usize); 3] = [("z2", 3), ("z3", 2), ("z4", 2)];

fn series_rings() -> &'static [SeriesRing] {
    static RINGS: OnceLock<Vec<SeriesRing>> = OnceLock::new();
    RINGS.get_or_init(|| {
        SERIES
            .iter()
            .map(|&(name, n)| truncated_power_series(&catalog::get(name).unwrap().ring, n).unwrap())
            .collect()
    })
}

fn base_size(which: usize) -> usize {
    [2, 3, 4][which]
}

fn base_mul(which: usize, x: ElementId, y: ElementId) -> usize {
    x.index() * y.index() % base_size(which)
}
