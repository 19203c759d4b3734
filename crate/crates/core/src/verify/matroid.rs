//! Rank functions, duality, closure and minors.

use super::oracle::rank_axiom_failure;
use super::{CheckFn, Ctx, Tally};
use crate::connectivity::is_connected;
use crate::matroid::{named, remove_loops_coloops_minor, Matroid, MinorSpec};
use crate::subset::{full_mask, GroundSubset};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("rank_axioms", rank_axioms),
    ("dual_rank", dual_rank),
    ("closure_complement", closure_complement),
    ("minor_reproduction", minor_reproduction),
    ("relaxed_rim", relaxed_rim),
    ("loop_coloop_free_minor", loop_coloop_free_minor),
];

fn rank_axioms(ctx: &Ctx, t: &mut Tally) {
    for (_, e) in ctx.subset_entries() {
        let m = &e.matroid;
        let fail = rank_axiom_failure(m.size(), |x| m.rank_mask(x));
        // unit increase is implied by r(X) <= |X| plus submodularity
        t.case(fail.is_none(), || format!("{}: {}", e.name, fail.unwrap_or_default()));
    }
}

/// `M** = M` and `r*(X) = |X| + r(E - X) - r(M)` on every subset.
fn dual_rank(ctx: &Ctx, t: &mut Tally) {
    for (_, e) in ctx.subset_entries() {
        let m = &e.matroid;
        let d = m.dual();
        let dd = d.dual();
        let full = full_mask(m.size());
        let r = m.full_rank();
        let bad = (0..=full).find(|&x| {
            dd.rank_mask(x) != m.rank_mask(x) || d.rank_mask(x) != x.count_ones() as usize + m.rank_mask(full & !x) - r
        });
        t.case(bad.is_none(), || format!("{}: dual rank wrong at {:#b}", e.name, bad.unwrap_or(0)));
    }
}

/// For `e` and a partition `(A, B)` of `E - e`: `e ∈ cl(A)` exactly when
/// `e ∉ cl*(B)`.
fn closure_complement(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let mut bad = None;
        for e in 0..n {
            let rest = full_mask(n) & !(1 << e);
            for a in crate::subset::submasks(rest) {
                let b = rest & !a;
                let in_cl = m.rank_mask(a | 1 << e) == m.rank_mask(a);
                let in_cocl = m.corank_mask(b | 1 << e) == m.corank_mask(b);
                if in_cl == in_cocl && bad.is_none() {
                    bad = Some((e, a));
                }
            }
        }
        t.case(bad.is_none(), || {
            let (e, a) = bad.unwrap();
            format!("{}: e = {e}, A = {a:#b}", en.name)
        });
    }
}

/// Minors with up to two removed elements are found again by `has_minor`,
/// and the spec it returns reproduces the minor on every subset.
fn minor_reproduction(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.entries(9) {
        let m = &en.matroid;
        let n = m.size();
        for c in 0..1u32 << n {
            for d in crate::subset::submasks(full_mask(n) & !c) {
                if (c | d).count_ones() > 2 {
                    continue;
                }
                let spec = MinorSpec::new(GroundSubset::raw(c, n), GroundSubset::raw(d, n)).expect("disjoint");
                let minor = m.minor(&spec).expect("valid spec");
                let Some(found) = t.ok(m.has_minor(&minor), || format!("{}: has_minor", en.name)) else {
                    continue;
                };
                let ok = found.is_some_and(|s| m.minor(&s).is_ok_and(|x| x.same_as(&minor)));
                t.case(ok, || format!("{}: C = {c:#b}, D = {d:#b} not reproduced", en.name));
            }
        }
    }
    // a minor of larger rank is never found
    let u24 = Matroid::uniform(2, 4).expect("valid");
    let u33 = Matroid::uniform(3, 3).expect("valid");
    t.case(u24.has_minor(&u33).is_ok_and(|r| r.is_none()), || "U(3,3) found in U(2,4)".into());
}

/// Relaxing the rim of a wheel raises the rank of the rim alone; the
/// two-spoke whirl is `U(2,4)`.
fn relaxed_rim(ctx: &Ctx, t: &mut Tally) {
    for r in 2..=ctx.cfg.max_n / 2 {
        let w = named::wheel(r).expect("valid");
        let rim = named::wheel_rim(r);
        let Some(x) = t.ok(w.relax(rim), || format!("relax rim of wheel({r})")) else {
            continue;
        };
        let bad = (0..1u32 << (2 * r)).find(|&s| x.rank_mask(s) != w.rank_mask(s) + usize::from(s == rim.bits()));
        t.case(bad.is_none(), || format!("wheel({r}): relaxed rank wrong at {:#b}", bad.unwrap_or(0)));
    }
    if ctx.cfg.max_n >= 4 {
        let x = named::whirl(2).expect("valid");
        t.case(x.same_as(&Matroid::uniform(2, 4).expect("valid")), || "whirl(2) is not U(2,4)".into());
    }
}

/// For a connected `M` and a minor `N` with `l` loops and coloops, the
/// repaired minor has neither, still has `N`, and has at most `|E(N)| + l`
/// elements.
fn loop_coloop_free_minor(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.entries(8) {
        let m = &en.matroid;
        let n = m.size();
        // a single element is a loop or a coloop, so no minor qualifies
        if n < 2 || !is_connected(m) {
            continue;
        }
        for c in 0..1u32 << n {
            for d in crate::subset::submasks(full_mask(n) & !c) {
                if (c | d).count_ones() > 3 || c | d == full_mask(n) {
                    continue;
                }
                let spec = MinorSpec::new(GroundSubset::raw(c, n), GroundSubset::raw(d, n)).expect("disjoint");
                let minor = m.minor(&spec).expect("valid");
                let l = minor.loops().union(minor.coloops()).len();
                if l == 0 {
                    continue;
                }
                let Some(w) = t.ok(remove_loops_coloops_minor(m, &spec), || format!("{}: repair", en.name)) else {
                    continue;
                };
                let repaired = m.minor(&w.spec).expect("valid");
                let ok = repaired.loops().is_empty()
                    && repaired.coloops().is_empty()
                    && repaired.size() <= minor.size() + l
                    && repaired.has_minor(&minor).is_ok_and(|s| s.is_some());
                t.case(ok, || format!("{}: C = {c:#b}, D = {d:#b}", en.name));
            }
        }
    }
}
