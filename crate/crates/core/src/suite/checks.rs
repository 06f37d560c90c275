use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lift, CheckId, Sampling, Step, Tally};
use crate::clean::{
    decide_sc, decide_sjc, decide_sjc_commutative, decide_sjc_radical_s, decide_snc,
    find_standard_form, oracle_table, radical_power_check, CleanCertificate, CleanKind,
    Orientation,
};
use crate::error::{Error, Result};
use crate::formal::{diagonal_similarity, FMContext, FMatrix};
use crate::ring::ElementId;

pub(super) fn run(id: CheckId, ctx: &FMContext, t: &mut Tally) -> Result<()> {
    match id {
        CheckId::RadicalFormula => radical_formula(ctx, t),
        CheckId::LocalRadical => local_radical(ctx, t),
        CheckId::JCleanBasics => j_clean_basics(ctx, t),
        CheckId::UnitJClean => unit_j_clean(ctx, t),
        CheckId::ConjugationInvariance => conjugation_invariance(ctx, t),
        CheckId::PowerInRadical => power_in_radical(ctx, t),
        CheckId::IdempotentForms => idempotent_forms(ctx, t),
        CheckId::DiagonalJClean => diagonal_j_clean(ctx, t),
        CheckId::DiagonalNilClean => diagonal_nil_clean(ctx, t),
        CheckId::NotJCleanWitness => not_j_clean_witness(ctx, t),
        CheckId::DiagonalClean => diagonal_clean(ctx, t),
        CheckId::DiagonalizableClean => diagonalizable_clean(ctx, t),
        CheckId::CleanSplit => clean_split(ctx, t),
        CheckId::NilVersusJ => nil_versus_j(ctx, t),
        CheckId::StandardForm => standard_form(ctx, t),
        CheckId::RightRoots => right_roots(ctx, t),
        CheckId::FormLifting => lift::in_context(ctx, lift::Claims::FORMS, t),
        CheckId::JCleanLifting => lift::in_context(ctx, lift::Claims::J_CLEAN, t),
        CheckId::CleanLifting => lift::in_context(ctx, lift::Claims::CLEAN, t),
        CheckId::Determinant => determinant(ctx, t),
        CheckId::DetTrObstruction => det_tr_obstruction(ctx, t),
        CheckId::DetTrRadical => det_tr_radical(ctx, t),
        CheckId::DetTrRadicalS => det_tr_radical_s(ctx, t),
        CheckId::UpperTriangular => upper_triangular(ctx, t),
        CheckId::CharPoly => char_poly(ctx, t),
    }
}

/// Both directions of `lhs ⇔ rhs` on one matrix.
fn iff(a: &FMatrix, lhs: bool, rhs: bool, lhs_name: &str, rhs_name: &str) -> Step {
    if lhs == rhs {
        Step::hit(lhs)
    } else {
        Step::fail(
            vec![*a],
            format!("{lhs_name} is {lhs} but {rhs_name} is {rhs}"),
        )
    }
}

/// Compares a decider with the oracle and re-verifies its certificate.
fn decider_agrees(
    ctx: &FMContext,
    a: &FMatrix,
    decided: Option<CleanCertificate>,
    oracle: bool,
    name: &str,
) -> Step {
    if decided.is_some() != oracle {
        return Step::fail(
            vec![*a],
            format!(
                "{name} says {} but the oracle says {oracle}",
                decided.is_some()
            ),
        );
    }
    match decided {
        None => Step::hit(false),
        Some(cert) => match cert.verify(ctx, a) {
            Ok(()) => Step::hit(true).certified(1),
            Err(e) => Step::fail(vec![*a], format!("{name} certificate: {e}")),
        },
    }
}

fn table(ctx: &FMContext, kind: CleanKind) -> Result<&[bool]> {
    oracle_table(ctx, kind)
}

fn unit(ctx: &FMContext, a: &FMatrix) -> bool {
    ctx.is_unit_exhaustive(a).expect("enumerable context")
}

fn det_tr_in_radical(ctx: &FMContext, a: &FMatrix) -> Result<bool> {
    let an = ctx.analysis();
    Ok(an.in_jacobson(ctx.det_s(a)?) && an.in_jacobson(ctx.tr(a)))
}

/// Marks every matrix similar to one of `targets`.
fn orbit_marks(ctx: &FMContext, targets: &[FMatrix]) -> Result<Vec<bool>> {
    let units = ctx.units_with_inverses()?;
    let mut marks = vec![false; ctx.matrix_count() as usize];
    for d in targets {
        for (p, p_inv) in units {
            marks[ctx.index(&ctx.conjugate(d, p, p_inv))] = true;
        }
    }
    Ok(marks)
}

fn diagonal_targets(
    ctx: &FMContext,
    small: &[ElementId],
    orientations: &[Orientation],
) -> Vec<FMatrix> {
    let r = ctx.base();
    let mut out = Vec::new();
    for &orientation in orientations {
        for &j in small {
            let v = r.add(r.one(), j);
            for &w in small {
                out.push(orientation.diag(ctx, v, w));
            }
        }
    }
    out
}

fn radical_formula(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let (r, an) = (ctx.base(), ctx.analysis());
    let s2 = ctx.s_squared();
    let mismatch = r
        .elements()
        .find(|&x| ctx.in_j_s(x) != an.in_jacobson(r.mul(s2, x)));
    match mismatch {
        Some(x) => t.absorb(Step::fail(
            vec![],
            format!("J_s and J_(s^2) differ at {}", r.name(x)),
        )),
        None => t.note(format!("J_s = J_(s^2) on all {} elements", r.size())),
    }
    let qr = ctx.radical_by_quasi_regularity()?;
    t.sweep_all(ctx, |i, a| {
        Ok(iff(
            a,
            ctx.in_jacobson(a),
            qr[i],
            "the entry pattern",
            "quasi-regularity",
        ))
    })
}

fn local_radical(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let an = ctx.analysis();
    let qr = ctx.radical_by_quasi_regularity()?;
    t.sweep_all(ctx, |i, a| {
        let pattern = an.in_jacobson(a.a) && an.in_jacobson(a.d);
        let step = iff(
            a,
            pattern,
            qr[i],
            "diagonal entries in J",
            "quasi-regularity",
        );
        if step.failure.is_some() {
            return Ok(step);
        }
        let diag_units = an.is_unit(a.a) && an.is_unit(a.d);
        Ok(iff(
            a,
            unit(ctx, a),
            diag_units,
            "unit",
            "diagonal entries units",
        ))
    })
}

fn j_clean_basics(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let (r, an) = (ctx.base(), ctx.analysis());
    // In the base ring itself.
    let idempotents = an.idempotents();
    let sjc = |x: ElementId| {
        idempotents
            .iter()
            .any(|&e| r.mul(e, x) == r.mul(x, e) && an.in_jacobson(r.sub(x, e)))
    };
    let one = r.one();
    let base_failure = r.elements().find_map(|x| {
        if an.in_jacobson(x) && !sjc(x) {
            Some(format!("{} is in J(R) but not strongly J-clean", r.name(x)))
        } else if an.is_unit(x) && sjc(x) != an.in_jacobson(r.sub(x, one)) {
            Some(format!("unit {}: sJc and u - 1 in J disagree", r.name(x)))
        } else if sjc(x) != sjc(r.sub(one, x)) {
            Some(format!("{} and 1 - {} disagree", r.name(x), r.name(x)))
        } else {
            None
        }
    });
    match base_failure {
        Some(msg) => t.absorb(Step::fail(vec![], msg)),
        None => t.note(format!("all three items hold in R ({} elements)", r.size())),
    }
    // In M2(R;s).
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let id = ctx.identity();
    t.sweep_all(ctx, |i, a| {
        if ctx.in_jacobson(a) && !sjc[i] {
            return Ok(Step::fail(vec![*a], "in J(M2) but not strongly J-clean"));
        }
        if unit(ctx, a) && sjc[i] != ctx.in_jacobson(&ctx.sub(a, &id)) {
            return Ok(Step::fail(
                vec![*a],
                "unit: strongly J-clean and A - I in J(M2) disagree",
            ));
        }
        let c = ctx.complement(a);
        Ok(iff(
            a,
            sjc[i],
            sjc[ctx.index(&c)],
            "A strongly J-clean",
            "I - A strongly J-clean",
        ))
    })
}

fn unit_j_clean(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let id = ctx.identity();
    t.sweep_all(ctx, |i, a| {
        Ok(iff(
            a,
            unit(ctx, a) && sjc[i],
            ctx.in_jacobson(&ctx.sub(a, &id)),
            "unit and strongly J-clean",
            "A - I in J(M2)",
        ))
    })
}

fn conjugation_invariance(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let units = ctx.units_with_inverses()?;
    let count = ctx.matrix_count();
    let pairs = count.saturating_mul(units.len() as u64);
    let probe = |a: &FMatrix, k: usize| {
        let (p, p_inv) = units[k];
        let b = ctx.conjugate(a, &p_inv, &p);
        let (x, y) = (sjc[ctx.index(a)], sjc[ctx.index(&b)]);
        if x == y {
            Step::hit(x)
        } else {
            Step::fail(
                vec![*a, p, b],
                format!("A strongly J-clean is {x}, P A P^-1 is {y}"),
            )
        }
    };
    if pairs <= ctx.caps().pairs {
        t.note(format!("all {pairs} conjugations"));
        t.sweep_grid(count as usize, units.len(), |i, k| {
            Ok(probe(&ctx.matrix(i), k))
        })
    } else {
        let caps = ctx.caps();
        let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
        let items: Vec<(FMatrix, usize)> = (0..caps.sample_size)
            .map(|_| (ctx.random_matrix(&mut rng), rng.gen_range(0..units.len())))
            .collect();
        t.sampling = Some(Sampling {
            sample_size: caps.sample_size,
            seed: caps.seed,
        });
        t.note(format!("{pairs} conjugations exceed the pair cap; sampled"));
        t.sweep(items, |(a, k)| Ok(probe(a, *k)))
    }
}

fn power_in_radical(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    t.sweep_all(ctx, |_, a| {
        Ok(iff(
            a,
            radical_power_check(ctx, a, None).is_some(),
            ctx.in_jacobson(a),
            "some power in J(M2)",
            "A in J(M2)",
        ))
    })
}

fn idempotent_forms(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let r = ctx.base();
    let (zero, one) = (r.zero(), r.one());
    let d10 = ctx.diag(one, zero);
    let d01 = ctx.diag(zero, one);
    let nontrivial: Vec<FMatrix> = ctx
        .idempotents()?
        .iter()
        .copied()
        .filter(|e| !ctx.is_zero(e) && !ctx.is_identity(e))
        .collect();
    let s_unit = ctx.s_is_unit();
    t.note(format!(
        "{} non-trivial idempotents; s is {}",
        nontrivial.len(),
        if s_unit { "a unit" } else { "in J(R)" }
    ));
    t.sweep(nontrivial, |e| {
        let first = diagonal_similarity(ctx, e, one, zero)?;
        let second = diagonal_similarity(ctx, e, zero, one)?;
        let mut verified = 0;
        for (w, d) in [(first, d10), (second, d01)] {
            if let Some(w) = w {
                if !w.verify(ctx, e, &d) {
                    return Ok(Step::fail(
                        vec![*e, w.p],
                        "similarity witness does not verify",
                    ));
                }
                verified += 1;
            }
        }
        let ok = if s_unit {
            first.is_some()
        } else {
            first.is_some() != second.is_some()
        };
        Ok(if ok {
            Step::hit(true).certified(verified)
        } else {
            Step::fail(
                vec![*e],
                format!(
                    "similar to diag(1,0): {}, to diag(0,1): {}",
                    first.is_some(),
                    second.is_some()
                ),
            )
        })
    })
}

/// The orientations a diagonal criterion names: one for `s` a unit, both
/// for `s ∈ J`.
fn orientations(ctx: &FMContext, unit_case: Orientation) -> &'static [Orientation] {
    if ctx.s_is_unit() {
        match unit_case {
            Orientation::UnitFirst => &[Orientation::UnitFirst],
            Orientation::RadicalFirst => &[Orientation::RadicalFirst],
        }
    } else {
        &Orientation::BOTH
    }
}

fn diagonal_j_clean(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let small = ctx.analysis().jacobson();
    let marks = orbit_marks(
        ctx,
        &diagonal_targets(ctx, &small, orientations(ctx, Orientation::UnitFirst)),
    )?;
    t.sweep_all(ctx, |i, a| {
        let stated = ctx.in_jacobson(a) || ctx.in_jacobson(&ctx.complement(a)) || marks[i];
        let step = iff(a, stated, sjc[i], "the diagonal criterion", "the oracle");
        if step.failure.is_some() {
            return Ok(step);
        }
        Ok(decider_agrees(
            ctx,
            a,
            decide_sjc(ctx, a)?,
            sjc[i],
            "decide_sjc",
        ))
    })
}

fn diagonal_nil_clean(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let snc = table(ctx, CleanKind::StronglyNilClean)?;
    let small = ctx.analysis().nilpotents();
    let marks = orbit_marks(
        ctx,
        &diagonal_targets(ctx, &small, orientations(ctx, Orientation::UnitFirst)),
    )?;
    t.sweep_all(ctx, |i, a| {
        let nil = |m: &FMatrix| ctx.is_nilpotent_cached(m).expect("enumerable context");
        let stated = nil(a) || nil(&ctx.complement(a)) || marks[i];
        let step = iff(
            a,
            stated,
            snc[i],
            "the nil diagonal criterion",
            "the oracle",
        );
        if step.failure.is_some() {
            return Ok(step);
        }
        Ok(decider_agrees(
            ctx,
            a,
            decide_snc(ctx, a)?,
            snc[i],
            "decide_snc",
        ))
    })
}

fn not_j_clean_witness(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let r = ctx.base();
    let a = FMatrix::new(r.one(), r.one(), r.one(), r.zero());
    let step = if sjc[ctx.index(&a)] {
        Step::fail(vec![a], "the oracle finds a strongly J-clean decomposition")
    } else if decide_sjc(ctx, &a)?.is_some() {
        Step::fail(vec![a], "decide_sjc reports the witness strongly J-clean")
    } else {
        Step::hit(true)
    };
    t.absorb(step);
    t.note(format!(
        "witness {} is not strongly J-clean",
        ctx.render(&a)
    ));
    let failures = sjc.iter().filter(|&&x| !x).count();
    t.note(format!(
        "{failures} of {} matrices are not strongly J-clean",
        sjc.len()
    ));
    if failures == 0 {
        t.absorb(Step::fail(vec![], "every matrix is strongly J-clean"));
    }
    Ok(())
}

fn diagonal_clean(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sc = table(ctx, CleanKind::StronglyClean)?;
    let small = ctx.analysis().jacobson();
    let marks = orbit_marks(
        ctx,
        &diagonal_targets(ctx, &small, orientations(ctx, Orientation::RadicalFirst)),
    )?;
    t.sweep_all(ctx, |i, a| {
        let stated = unit(ctx, a) || unit(ctx, &ctx.complement(a)) || marks[i];
        Ok(iff(
            a,
            stated,
            sc[i],
            "the diagonal criterion",
            "the oracle",
        ))
    })
}

fn diagonalizable_clean(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sc = table(ctx, CleanKind::StronglyClean)?;
    let r = ctx.base();
    let targets: Vec<FMatrix> = r
        .elements()
        .flat_map(|x| r.elements().map(move |y| (x, y)))
        .map(|(x, y)| ctx.diag(x, y))
        .collect();
    let marks = orbit_marks(ctx, &targets)?;
    t.sweep_all(ctx, |i, a| {
        let stated = unit(ctx, a) || unit(ctx, &ctx.complement(a)) || marks[i];
        Ok(iff(
            a,
            stated,
            sc[i],
            "unit, 1-unit or diagonalizable",
            "the oracle",
        ))
    })
}

fn clean_split(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sc = table(ctx, CleanKind::StronglyClean)?;
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    t.sweep_all(ctx, |i, a| {
        let stated = unit(ctx, a) || unit(ctx, &ctx.complement(a)) || sjc[i];
        let step = iff(
            a,
            stated,
            sc[i],
            "unit, 1-unit or strongly J-clean",
            "the oracle",
        );
        if step.failure.is_some() {
            return Ok(step);
        }
        Ok(decider_agrees(
            ctx,
            a,
            decide_sc(ctx, a)?,
            sc[i],
            "decide_sc",
        ))
    })
}

fn nil_versus_j(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    let snc = table(ctx, CleanKind::StronglyNilClean)?;
    let nil = ctx.analysis().jacobson_is_nil();
    t.note("finite base ring: J(R) is nil, so the nil condition always holds");
    if !nil {
        t.absorb(Step::fail(vec![], "J(R) is not nil in a finite ring"));
    }
    let mut first_non_snc = None;
    let mut first_non_sjc = None;
    // Elementwise the two notions coincide off units and 1-units.
    t.sweep_all(ctx, |i, a| {
        if unit(ctx, a) || unit(ctx, &ctx.complement(a)) {
            return Ok(Step::ok());
        }
        Ok(iff(
            a,
            snc[i],
            sjc[i],
            "strongly nil clean",
            "strongly J-clean",
        ))
    })?;
    for i in 0..ctx.matrix_count() as usize {
        let a = ctx.matrix(i);
        if unit(ctx, &a) || unit(ctx, &ctx.complement(&a)) {
            continue;
        }
        if !snc[i] && first_non_snc.is_none() {
            first_non_snc = Some(a);
        }
        if !sjc[i] && first_non_sjc.is_none() {
            first_non_sjc = Some(a);
        }
    }
    let all_snc = first_non_snc.is_none();
    let all_sjc = first_non_sjc.is_none();
    t.note(format!(
        "all non-trivial matrices strongly nil clean: {all_snc}; strongly J-clean: {all_sjc}"
    ));
    if all_snc != (all_sjc && nil) {
        let witness = first_non_snc.or(first_non_sjc).into_iter().collect();
        t.absorb(Step::fail(witness, "the two global conditions disagree"));
    }
    Ok(())
}

fn standard_form(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    t.sweep_all(ctx, |_, a| {
        if unit(ctx, a) || unit(ctx, &ctx.complement(a)) {
            return Ok(Step::ok());
        }
        Ok(match find_standard_form(ctx, a)? {
            Some(form) if form.similarity.verify(ctx, a, &form.matrix(ctx)) => {
                Step::hit(true).certified(1)
            }
            Some(form) => Step::fail(
                vec![*a, form.similarity.p],
                "standard form witness does not verify",
            ),
            None => Step::fail(vec![*a], "no standard form found over all units"),
        })
    })
}

fn right_roots(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    t.sweep_all(ctx, |i, a| match decide_sjc_radical_s(ctx, a) {
        Ok(decided) => Ok(decider_agrees(
            ctx,
            a,
            decided,
            sjc[i],
            "the right-root criterion",
        )),
        Err(Error::SearchExhausted(what)) => Ok(Step::fail(vec![*a], format!("no {what}"))),
        Err(e) => Err(e),
    })
}

fn determinant(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let (r, an) = (ctx.base(), ctx.analysis());
    let caps = *ctx.caps();
    let count = ctx.matrix_count();
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let mut sampled = false;

    // Multiplicativity over pairs.
    let det = |m: &FMatrix| ctx.det_s(m).expect("commutative base");
    let multiplicative = |a: &FMatrix, b: &FMatrix| {
        if det(&ctx.mul(a, b)) == r.mul(det(a), det(b)) {
            Step::ok()
        } else {
            Step::fail(vec![*a, *b], "det_s(AB) differs from det_s(A) det_s(B)")
        }
    };
    if count.saturating_mul(count) <= caps.pairs {
        t.sweep_grid(count as usize, count as usize, |i, j| {
            Ok(multiplicative(&ctx.matrix(i), &ctx.matrix(j)))
        })?;
    } else {
        sampled = true;
        let pairs: Vec<(FMatrix, FMatrix)> = (0..caps.sample_size)
            .map(|_| (ctx.random_matrix(&mut rng), ctx.random_matrix(&mut rng)))
            .collect();
        t.sweep(pairs, |(a, b)| Ok(multiplicative(a, b)))?;
    }

    // Units, adjugate inverse, det_s(I - A).
    t.sweep_all(ctx, |_, a| {
        let d = det(a);
        let step = iff(a, unit(ctx, a), an.is_unit(d), "unit", "det_s unit");
        if step.failure.is_some() {
            return Ok(step);
        }
        if let Some(d_inv) = an.inverse(d) {
            let adj = FMatrix::new(a.d, r.neg(a.b), r.neg(a.c), a.a);
            if ctx.inverse_exhaustive(a)? != Some(ctx.scale(d_inv, &adj)) {
                return Ok(Step::fail(vec![*a], "inverse differs from det_s^-1 adj(A)"));
            }
        }
        let expected = r.add(r.sub(r.one(), ctx.tr(a)), d);
        Ok(if det(&ctx.complement(a)) == expected {
            Step::hit(an.is_unit(d))
        } else {
            Step::fail(vec![*a], "det_s(I - A) differs from 1 - tr(A) + det_s(A)")
        })
    })?;

    // Similarity invariance.
    let units = ctx.units_with_inverses()?;
    let invariant = |a: &FMatrix, k: usize| {
        let (p, p_inv) = units[k];
        let b = ctx.conjugate(a, &p, &p_inv);
        if det(a) == det(&b) && ctx.tr(a) == ctx.tr(&b) {
            Step::ok()
        } else {
            Step::fail(vec![*a, p], "conjugation changes det_s or tr")
        }
    };
    if count.saturating_mul(units.len() as u64) <= caps.pairs {
        t.sweep_grid(count as usize, units.len(), |i, k| {
            Ok(invariant(&ctx.matrix(i), k))
        })?;
    } else {
        sampled = true;
        let conj: Vec<(FMatrix, usize)> = (0..caps.sample_size)
            .map(|_| (ctx.random_matrix(&mut rng), rng.gen_range(0..units.len())))
            .collect();
        t.sweep(conj, |(a, k)| Ok(invariant(a, *k)))?;
    }
    if sampled {
        t.sampling = Some(Sampling {
            sample_size: caps.sample_size,
            seed: caps.seed,
        });
        t.note("pair sweeps above the pair cap were sampled");
    }
    Ok(())
}

fn det_tr_obstruction(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    t.note("implication only; the contrapositive is probed on every strongly J-clean matrix");
    t.sweep_all(ctx, |i, a| {
        let antecedent = det_tr_in_radical(ctx, a)? && !ctx.in_jacobson(a);
        Ok(if antecedent && sjc[i] {
            Step::fail(
                vec![*a],
                "det_s, tr in J and A outside J(M2), yet strongly J-clean",
            )
        } else {
            Step::hit(antecedent)
        })
    })
}

fn det_tr_radical(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    t.sweep_all(ctx, |i, a| {
        Ok(iff(
            a,
            det_tr_in_radical(ctx, a)? && sjc[i],
            ctx.in_jacobson(a),
            "det_s, tr in J and strongly J-clean",
            "A in J(M2)",
        ))
    })
}

fn det_tr_radical_s(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    t.sweep_all(ctx, |_, a| {
        Ok(iff(
            a,
            det_tr_in_radical(ctx, a)?,
            ctx.in_jacobson(a),
            "det_s, tr in J",
            "A in J(M2)",
        ))
    })
}

fn upper_triangular(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sc = table(ctx, CleanKind::StronglyClean)?;
    let r = ctx.base();
    let zero = r.zero();
    let items: Vec<FMatrix> = r
        .elements()
        .flat_map(|a| {
            r.elements()
                .flat_map(move |b| r.elements().map(move |d| (a, b, d)))
        })
        .map(|(a, b, d)| FMatrix::new(a, b, zero, d))
        .collect();
    t.sweep(items, |a| {
        Ok(if sc[ctx.index(a)] {
            Step::hit(true)
        } else {
            Step::fail(vec![*a], "upper triangular but not strongly clean")
        })
    })
}

fn char_poly(ctx: &FMContext, t: &mut Tally) -> Result<()> {
    let sjc = table(ctx, CleanKind::StronglyJClean)?;
    t.sweep_all(ctx, |i, a| {
        Ok(decider_agrees(
            ctx,
            a,
            decide_sjc_commutative(ctx, a)?,
            sjc[i],
            "the root criterion",
        ))
    })
}
