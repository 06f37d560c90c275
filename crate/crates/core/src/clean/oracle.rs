use rayon::prelude::*;

use super::{CleanCertificate, CleanKind, Evidence};
use crate::error::Result;
use crate::formal::{FMContext, FMatrix};

/// Target-set membership for the oracle, read from exhaustive tables.
fn target(ctx: &FMContext, kind: CleanKind, w: &FMatrix) -> Result<bool> {
    Ok(match kind {
        CleanKind::StronglyClean => ctx.is_unit_exhaustive(w)?,
        CleanKind::StronglyJClean => ctx.in_jacobson(w),
        CleanKind::StronglyNilClean => ctx.is_nilpotent_cached(w)?,
    })
}

/// Decides `kind` from the definition: the first idempotent `E` (canonical
/// order) commuting with `A` such that `A − E` is a unit, in J(M2), or
/// nilpotent. `None` means no idempotent works.
pub fn oracle_decide(
    ctx: &FMContext,
    a: &FMatrix,
    kind: CleanKind,
) -> Result<Option<CleanCertificate>> {
    for e in ctx.idempotents()? {
        if !ctx.commutes(e, a) {
            continue;
        }
        let w = ctx.sub(a, e);
        if target(ctx, kind, &w)? {
            return Ok(Some(CleanCertificate::new(
                kind,
                Evidence::Decomposition { e: *e, w },
            )));
        }
    }
    Ok(None)
}

/// Oracle verdicts for every matrix, indexed canonically. Computed once per
/// context and kind.
pub fn oracle_table(ctx: &FMContext, kind: CleanKind) -> Result<&[bool]> {
    if let Some(t) = ctx.verdicts[kind.slot()].get() {
        return Ok(t);
    }
    let idempotents = ctx.idempotents()?;
    // Build the lookup tables the scan needs before entering the pool.
    let probe = ctx.zero_matrix();
    target(ctx, kind, &probe)?;
    let count = ctx.matrix_count() as usize;
    let table: Vec<bool> = (0..count)
        .into_par_iter()
        .map(|i| {
            let a = ctx.matrix(i);
            idempotents.iter().any(|e| {
                ctx.commutes(e, &a) && target(ctx, kind, &ctx.sub(&a, e)).expect("tables built")
            })
        })
        .collect();
    Ok(ctx.verdicts[kind.slot()].get_or_init(|| table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::ElementId;
    use crate::Caps;

    fn ctx(name: &str, s: u16) -> FMContext {
        let ring = catalog::get(name).unwrap();
        FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap()
    }

    #[test]
    fn classic_non_j_clean_matrix() {
        let c = ctx("z2", 1);
        let a = FMatrix::from_indices([1, 1, 1, 0]);
        assert!(oracle_decide(&c, &a, CleanKind::StronglyJClean)
            .unwrap()
            .is_none());
        assert!(oracle_decide(&c, &a, CleanKind::StronglyClean)
            .unwrap()
            .is_some());
    }

    #[test]
    fn radical_members_use_zero_idempotent() {
        let c = ctx("z4", 2);
        let a = FMatrix::from_indices([2, 3, 1, 2]);
        let cert = oracle_decide(&c, &a, CleanKind::StronglyJClean)
            .unwrap()
            .unwrap();
        assert_eq!(
            cert.evidence,
            Evidence::Decomposition {
                e: c.zero_matrix(),
                w: a
            }
        );
        cert.verify(&c, &a).unwrap();
    }

    #[test]
    fn idempotent_with_s_squared_zero() {
        let c = ctx("z4", 2);
        let a = FMatrix::from_indices([1, 1, 1, 0]);
        let cert = oracle_decide(&c, &a, CleanKind::StronglyJClean)
            .unwrap()
            .unwrap();
        assert_eq!(
            cert.evidence,
            Evidence::Decomposition {
                e: a,
                w: c.zero_matrix()
            }
        );
    }

    #[test]
    fn table_agrees_with_single_decisions() {
        let c = ctx("z3", 1);
        for kind in CleanKind::ALL {
            let table = oracle_table(&c, kind).unwrap();
            for (i, &flag) in table.iter().enumerate().step_by(5) {
                let cert = oracle_decide(&c, &c.matrix(i), kind).unwrap();
                assert_eq!(flag, cert.is_some());
                if let Some(cert) = cert {
                    cert.verify(&c, &c.matrix(i)).unwrap();
                }
            }
        }
    }
}
