//! Lifting along R[[x]] → R, checked on truncations R[[x]]/(x^N).
//!
//! These checks verify a truncated analogue: the statements concern the
//! full power series ring, while only finitely many coefficients are
//! enumerated here.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{report, CheckId, CheckReport, Sampling, Status, Step, Tally};
use crate::caps::Caps;
use crate::catalog::CatalogRing;
use crate::clean::{oracle_decide, oracle_table, standard_forms, CleanKind, Orientation};
use crate::error::{Error, Result};
use crate::formal::{FMContext, FMatrix};
use crate::ring::{
    analyze, truncated_power_series, ElementId, FiniteRing, RingAnalysis, SeriesRing,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Claims {
    forms: bool,
    j_clean: bool,
    clean: bool,
}

impl Claims {
    pub(crate) const FORMS: Claims = Claims {
        forms: true,
        j_clean: false,
        clean: false,
    };
    pub(crate) const J_CLEAN: Claims = Claims {
        forms: false,
        j_clean: true,
        clean: false,
    };
    pub(crate) const CLEAN: Claims = Claims {
        forms: false,
        j_clean: false,
        clean: true,
    };
    const ALL: Claims = Claims {
        forms: true,
        j_clean: true,
        clean: true,
    };
}

/// Largest `N ≤ caps.series_precision` with `|R|^N` within the similarity
/// cap (at least 1).
pub fn lift_precision(base_size: usize, caps: &Caps) -> usize {
    (1..=caps.series_precision.max(1))
        .take_while(|&n| {
            (base_size as u64)
                .checked_pow(n as u32)
                .is_some_and(|size| size <= caps.similarity as u64)
        })
        .last()
        .unwrap_or(1)
}

/// All three lifting claims on `M2(R[[x]]/(x^N); s)` with
/// `s = s₁x + … + s_{N−1}x^{N−1}`, against `M2(R; 0)`.
///
/// Exhaustive when the lifted matrix ring has at most `caps.lift_exhaustive`
/// elements, otherwise a seeded sample of `caps.sample_size` matrices.
pub fn lift_series_check(
    ring: &CatalogRing,
    n: usize,
    s_coeffs: &[ElementId],
    caps: &Caps,
) -> Result<CheckReport> {
    let start = Instant::now();
    let an = &ring.analysis;
    if !an.is_local {
        return Err(Error::hypothesis("the base ring must be local"));
    }
    if an.is_weakly_bleached != Some(true) {
        return Err(Error::hypothesis("the base ring must be weakly bleached"));
    }
    let mut t = Tally::default();
    let ground = FMContext::from_catalog(ring, ring.ring.zero(), *caps)?;
    check(&ground, n, s_coeffs, Claims::ALL, &mut t)?;
    let status = if t.counterexample.is_some() {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(report(
        CheckId::JCleanLifting,
        &ring.name,
        &ground,
        status,
        t,
        start,
    ))
}

/// One claim for the suite context `M2(R;s)`: the lift uses `s·x` at the
/// precision given by [`lift_precision`].
pub(crate) fn in_context(ctx: &FMContext, claims: Claims, t: &mut Tally) -> Result<()> {
    let n = lift_precision(ctx.base().size(), ctx.caps());
    let ground = FMContext::with_caps(
        ctx.base_arc().clone(),
        ctx.analysis_arc().clone(),
        ctx.base().zero(),
        *ctx.caps(),
    )?;
    let coeffs: Vec<ElementId> = if n > 1 { vec![ctx.s()] } else { Vec::new() };
    check(&ground, n, &coeffs, claims, t)
}

struct Lifted {
    series: SeriesRing,
    ctx: FMContext,
}

impl Lifted {
    fn build(base: &FiniteRing, n: usize, s_coeffs: &[ElementId], caps: &Caps) -> Result<Self> {
        if s_coeffs.len() >= n && s_coeffs[n - 1..].iter().any(|&c| c != base.zero()) {
            return Err(Error::InvalidSpec(format!(
                "s has terms beyond x^{} at precision {n}",
                n - 1
            )));
        }
        let size = (base.size() as u64)
            .checked_pow(n as u32)
            .unwrap_or(u64::MAX);
        if size > caps.analysis as u64 || size > u16::MAX as u64 {
            return Err(Error::CapExceeded {
                what: "analysis",
                size,
                cap: caps.analysis as u64,
            });
        }
        let series = truncated_power_series(base, n)?;
        let mut coeffs = vec![base.zero()];
        coeffs.extend(s_coeffs.iter().take(n - 1));
        let s = series.from_coefficients(&coeffs)?;
        let ring = Arc::new(series.ring.clone());
        let analysis: Arc<RingAnalysis> = Arc::new(analyze(&ring));
        let ctx = FMContext::with_caps(ring, analysis, s, *caps)?;
        Ok(Lifted { series, ctx })
    }

    fn at_zero(&self, m: &FMatrix) -> FMatrix {
        let e = |x| self.series.eval_at_zero(x);
        FMatrix::new(e(m.a), e(m.b), e(m.c), e(m.d))
    }
}

/// Orientation rank with `(u, v, w)`.
type FormKey = (u8, ElementId, ElementId, ElementId);

fn orientation_rank(o: Orientation) -> u8 {
    match o {
        Orientation::UnitFirst => 0,
        Orientation::RadicalFirst => 1,
    }
}

fn check(
    ground: &FMContext,
    n: usize,
    s_coeffs: &[ElementId],
    claims: Claims,
    t: &mut Tally,
) -> Result<()> {
    let caps = *ground.caps();
    let lifted = Lifted::build(ground.base(), n, s_coeffs, &caps)?;
    let lctx = &lifted.ctx;
    let s_name = lctx.base().name(lctx.s()).to_string();
    t.note(format!(
        "truncated analogue: R[[x]]/(x^{n}) with s = {s_name}, {} lifted matrices",
        lctx.matrix_count()
    ));
    if n == 1 {
        t.note("precision 1: the lifted ring is R itself with s = 0, so the check is a tautology");
    }

    let count = lctx.matrix_count();
    let exhaustive = count <= caps.lift_exhaustive;
    let items: Vec<FMatrix> = if exhaustive {
        (0..count as usize).map(|i| lctx.matrix(i)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
        t.sampling = Some(Sampling {
            sample_size: caps.sample_size,
            seed: caps.seed,
        });
        (0..caps.sample_size)
            .map(|_| lctx.random_matrix(&mut rng))
            .collect()
    };

    let kinds: Vec<CleanKind> = [
        (claims.j_clean, CleanKind::StronglyJClean),
        (claims.clean, CleanKind::StronglyClean),
    ]
    .into_iter()
    .filter_map(|(on, k)| on.then_some(k))
    .collect();
    let mut ground_tables = Vec::new();
    let mut lifted_tables = Vec::new();
    for &kind in &kinds {
        ground_tables.push(oracle_table(ground, kind)?);
        lifted_tables.push(if exhaustive {
            Some(oracle_table(lctx, kind)?)
        } else {
            None
        });
    }

    // Standard forms of every ground matrix with A and I - A non-units.
    let ground_forms: Vec<Option<BTreeSet<FormKey>>> = if claims.forms {
        ground.units_with_inverses()?;
        let mut out = Vec::with_capacity(ground.matrix_count() as usize);
        for i in 0..ground.matrix_count() as usize {
            let a = ground.matrix(i);
            let trivial = ground.is_unit_exhaustive(&a)?
                || ground.is_unit_exhaustive(&ground.complement(&a))?;
            out.push(if trivial {
                None
            } else {
                Some(
                    standard_forms(ground, &a)?
                        .map(|f| (orientation_rank(f.orientation), f.u, f.v, f.w))
                        .collect(),
                )
            });
        }
        lctx.units_with_inverses()?;
        out
    } else {
        Vec::new()
    };

    t.sweep(items, |a| {
        let a0 = lifted.at_zero(a);
        let i0 = ground.index(&a0);
        let mut hit = false;
        for (k, &kind) in kinds.iter().enumerate() {
            let lifted_verdict = match lifted_tables[k] {
                Some(table) => table[lctx.index(a)],
                None => oracle_decide(lctx, a, kind)?.is_some(),
            };
            let ground_verdict = ground_tables[k][i0];
            if lifted_verdict != ground_verdict {
                return Ok(Step::fail(
                    vec![a0],
                    format!(
                        "{kind}: A(x) = {} gives {lifted_verdict}, A(0) gives {ground_verdict}",
                        lctx.render(a)
                    ),
                ));
            }
            hit |= lifted_verdict;
        }
        if claims.forms {
            if let Some(needed) = &ground_forms[i0] {
                let mut missing = needed.clone();
                for form in standard_forms(lctx, a)? {
                    let key = (
                        orientation_rank(form.orientation),
                        lifted.series.eval_at_zero(form.u),
                        lifted.series.eval_at_zero(form.v),
                        lifted.series.eval_at_zero(form.w),
                    );
                    missing.remove(&key);
                    if missing.is_empty() {
                        break;
                    }
                }
                if let Some(&(o, u, v, w)) = missing.first() {
                    let r = ground.base();
                    return Ok(Step::fail(
                        vec![a0],
                        format!(
                            "A(x) = {}: form {} (u={}, v={}, w={}) of A(0) has no lift",
                            lctx.render(a),
                            if o == 0 {
                                "[[u,1],[v,w]]"
                            } else {
                                "[[w,1],[v,u]]"
                            },
                            r.name(u),
                            r.name(v),
                            r.name(w)
                        ),
                    ));
                }
                return Ok(Step::hit(true).certified(needed.len() as u64));
            }
        }
        Ok(Step::hit(hit))
    })
}
