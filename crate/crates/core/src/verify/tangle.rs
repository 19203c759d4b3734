//! Tangles, their matroids, inheritance by minors, and branch width.

use std::collections::BTreeSet;

use super::oracle::{inherited_family, rank_axiom_failure, tangle_axiom_failure, tangle_rank_table, three_connected};
use super::{CheckFn, Ctx, Tally};
use crate::matroid::{named, Matroid, Op};
use crate::subset::{extract, full_mask, submasks, GroundSubset};
use crate::tangle::{
    branch_width, branch_width_by_decomposition, decomposition_width, enumerate_tangles, inherit_tangle,
    inherit_tangle_one_shot, Tangle,
};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("tangle_axioms", tangle_axioms),
    ("tangle_enumeration_complete", tangle_enumeration_complete),
    ("tangle_truncation_dual_downward", tangle_truncation_dual_downward),
    ("tangle_union", tangle_union),
    ("tangle_matroid_rank_axioms", tangle_matroid_rank_axioms),
    ("tangle_independent_sets", tangle_independent_sets),
    ("inherited_tangle_valid", inherited_tangle_valid),
    ("inherited_rank_bounds", inherited_rank_bounds),
    ("inherited_independence", inherited_independence),
    ("tangle_closure_elements", tangle_closure_elements),
    ("skew_lines_stay_closed", skew_lines_stay_closed),
    ("branch_width_anchors", branch_width_anchors),
    ("decomposition_matches_tangles", decomposition_matches_tangles),
];

/// Brute-force enumeration is attempted when at most this many partitions
/// need a side chosen.
const CHOICE_CAP: u32 = 14;

fn masks(t: &Tangle) -> Vec<u32> {
    t.members().iter().map(|x| x.bits()).collect()
}

fn lam(m: &Matroid, x: u32) -> usize {
    let full = full_mask(m.size());
    m.rank_mask(x) + m.rank_mask(full & !x) - m.rank_mask(full)
}

/// `cl(X)` in a rank table.
fn table_closure(rho: &[usize], n: usize, x: u32) -> u32 {
    let r = rho[x as usize];
    (0..n).filter(|&e| rho[(x | 1 << e) as usize] == r).fold(x, |acc, e| acc | 1 << e)
}

fn tangle_axioms(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        for tangle in ctx.tangles(i) {
            let fail = tangle_axiom_failure(&en.matroid, &masks(tangle), tangle.order());
            t.case(fail.is_none(), || format!("{}: order {}: {}", en.name, tangle.order(), fail.unwrap_or_default()));
        }
    }
}

/// Where few partitions have low `lambda`, trying every choice of sides
/// finds exactly the enumerated tangles.
fn tangle_enumeration_complete(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        for order in 1..=n {
            // one representative per partition: the side missing the top element
            let top = 1u32 << (n - 1);
            let pairs: Vec<u32> = (0..=full).filter(|&x| x & top == 0 && lam(m, x) < order).collect();
            if pairs.len() as u32 > CHOICE_CAP {
                continue;
            }
            let mut found = BTreeSet::new();
            for choice in 0..1u32 << pairs.len() {
                let mut family: Vec<u32> =
                    pairs.iter().enumerate().map(|(j, &x)| if choice >> j & 1 == 1 { full & !x } else { x }).collect();
                family.sort_unstable();
                if tangle_axiom_failure(m, &family, order).is_none() {
                    found.insert(family);
                }
            }
            let Some(lib) = t.ok(enumerate_tangles(m, order), || format!("{}: enumerate order {order}", en.name))
            else {
                continue;
            };
            let lib: BTreeSet<Vec<u32>> = lib.iter().map(masks).collect();
            t.case(lib == found, || {
                format!("{}: order {order}: {} enumerated, {} by brute force", en.name, lib.len(), found.len())
            });
        }
    }
}

/// Truncations are tangles, the family is a tangle of the dual, and members
/// are closed under taking subsets of low `lambda`.
fn tangle_truncation_dual_downward(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let d = m.dual();
        for tangle in ctx.tangles(i) {
            let order = tangle.order();
            for lower in 0..order {
                let family: Vec<u32> = masks(tangle).into_iter().filter(|&x| lam(m, x) < lower).collect();
                let fail = tangle_axiom_failure(m, &family, lower);
                let lib = tangle.truncate(lower).map(|x| masks(&x)).ok();
                t.case(fail.is_none() && lib.as_ref() == Some(&family), || {
                    format!("{}: truncate {order} to {lower}: {}", en.name, fail.unwrap_or_default())
                });
            }
            let fail = tangle_axiom_failure(&d, &masks(tangle), order);
            t.case(fail.is_none(), || format!("{}: dual, order {order}: {}", en.name, fail.unwrap_or_default()));
            let bad = tangle
                .members()
                .iter()
                .flat_map(|x| submasks(x.bits()))
                .find(|&y| lam(m, y) < order && !tangle.contains_mask(y));
            t.case(bad.is_none(), || format!("{}: order {order}: {:#b} missing", en.name, bad.unwrap_or(0)));
        }
    }
}

/// Two members whose union has `lambda < θ` have their union as a member.
fn tangle_union(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        for tangle in ctx.tangles(i) {
            let ms = masks(tangle);
            for (j, &x) in ms.iter().enumerate() {
                for &y in &ms[j..] {
                    if lam(m, x | y) < tangle.order() {
                        t.case(tangle.contains_mask(x | y), || {
                            format!("{}: order {}: {x:#b} | {y:#b} missing", en.name, tangle.order())
                        });
                    }
                }
            }
        }
    }
}

/// `rho` computed from the members satisfies normalization, `rho(X) <= |X|`,
/// monotonicity, unit increase and submodularity on all pairs, and agrees
/// with the library's tangle matroid.
fn tangle_matroid_rank_axioms(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let n = en.matroid.size();
        for tangle in ctx.tangles(i) {
            let rho = tangle_rank_table(tangle);
            let mut fail = rank_axiom_failure(n, |x| rho[x as usize]);
            if fail.is_none() {
                fail = (0..=full_mask(n))
                    .flat_map(|x| (0..n).map(move |e| (x, e)))
                    .find(|&(x, e)| rho[(x | 1 << e) as usize] > rho[x as usize] + 1)
                    .map(|(x, e)| format!("adding {e} to {x:#b} raises rho by more than one"));
            }
            let lib = tangle.matroid();
            if fail.is_none() {
                fail = (0..=full_mask(n))
                    .find(|&x| lib.rank_mask(x) != rho[x as usize])
                    .map(|x| format!("library rho differs at {x:#b}"));
            }
            if fail.is_none() {
                fail = lib.rank_axiom_violation();
            }
            t.case(fail.is_none(), || format!("{}: order {}: {}", en.name, tangle.order(), fail.unwrap_or_default()));
        }
    }
}

/// T-independent sets are independent and coindependent.
fn tangle_independent_sets(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        for tangle in ctx.tangles(i) {
            let rho = tangle_rank_table(tangle);
            for x in (0..=full_mask(m.size())).filter(|&x| rho[x as usize] == x.count_ones() as usize) {
                let size = x.count_ones() as usize;
                t.case(m.rank_mask(x) == size && m.corank_mask(x) == size, || {
                    format!("{}: order {}: {x:#b}", en.name, tangle.order())
                });
            }
        }
    }
}

/// Every single-element removal inherits a tangle; the library's family is
/// the one from the definition. Two-element removals in either order and in
/// one step give the same tangle.
fn inherited_tangle_valid(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        for tangle in ctx.tangles(i) {
            for e in 0..n {
                for op in [Op::Delete, Op::Contract] {
                    let (child, family) = inherited_family(tangle, e, op);
                    let order = tangle.order() - 1;
                    let bits: Vec<u32> = family.iter().map(|x| x.bits()).collect();
                    let fail = tangle_axiom_failure(&child, &bits, order);
                    let lib = inherit_tangle(tangle, &[(e, op)]).ok();
                    let same = lib.as_ref().is_some_and(|l| l.members() == family.as_slice() && l.order() == order);
                    t.case(fail.is_none() && same, || {
                        format!(
                            "{}: order {}, {} {e}: {}",
                            en.name,
                            tangle.order(),
                            op.name(),
                            fail.unwrap_or_default()
                        )
                    });
                }
            }
            if tangle.order() < 2 {
                continue;
            }
            for e in 0..n {
                for f in e + 1..n {
                    for (oe, of) in [(Op::Delete, Op::Contract), (Op::Contract, Op::Contract)] {
                        let seq = inherit_tangle(tangle, &[(f, of), (e, oe)]);
                        let minor = m.remove_element(oe, e).and_then(|x| x.remove_element(of, f - 1));
                        let shot = minor.and_then(|x| inherit_tangle_one_shot(tangle, &x));
                        let ok = match (&seq, &shot) {
                            (Ok(a), Ok(b)) => {
                                a.members() == b.members()
                                    && tangle_axiom_failure(b.host(), &masks(b), b.order()).is_none()
                            }
                            _ => false,
                        };
                        t.case(ok, || format!("{}: order {}, remove {e} and {f}", en.name, tangle.order()));
                    }
                }
            }
        }
    }
}

/// The tangle matroids before and after removing `e`, as rank tables, with
/// `Z ⊆ E - e` mapped to the minor by `extract`.
fn with_single_removals(ctx: &Ctx, mut visit: impl FnMut(&str, &Tangle, &[usize], usize, Op, &[usize])) {
    for (i, en) in ctx.tangle_entries() {
        let n = en.matroid.size();
        for tangle in ctx.tangles(i) {
            let rho = tangle_rank_table(tangle);
            for e in 0..n {
                for op in [Op::Delete, Op::Contract] {
                    let (child, family) = inherited_family(tangle, e, op);
                    let Ok(inherited) = Tangle::new(&child, tangle.order() - 1, family) else {
                        continue;
                    };
                    visit(&en.name, tangle, &rho, e, op, &tangle_rank_table(&inherited));
                }
            }
        }
    }
}

/// `rho(Z) - 1 <= rho'(Z) <= rho(Z)`, with equality when `e ∉ cl_T(Z)` and
/// `rho(Z) < θ`.
fn inherited_rank_bounds(ctx: &Ctx, t: &mut Tally) {
    with_single_removals(ctx, |name, tangle, rho, e, op, rho2| {
        let n = tangle.host().size();
        let keep = !(1u32 << e);
        let mut bad = None;
        for z in submasks(full_mask(n) & keep) {
            let (r, r2) = (rho[z as usize], rho2[extract(z, keep) as usize]);
            if r2 > r || r2 + 1 < r {
                bad.get_or_insert((z, "bounds"));
            }
            let outside = table_closure(rho, n, z) >> e & 1 == 0;
            if outside && r < tangle.order() && r2 != r {
                bad.get_or_insert((z, "equality"));
            }
        }
        t.case(bad.is_none(), || {
            let (z, what) = bad.unwrap_or_default();
            format!("{name}: order {}, {} {e}: {what} fail at {z:#b}", tangle.order(), op.name())
        });
    });
}

/// A T-independent `X` containing `e` leaves `X - e` independent in the
/// tangle matroid of `M \ e`.
fn inherited_independence(ctx: &Ctx, t: &mut Tally) {
    with_single_removals(ctx, |name, tangle, rho, e, op, rho2| {
        if op != Op::Delete {
            return;
        }
        let n = tangle.host().size();
        let keep = !(1u32 << e);
        for x in (0..=full_mask(n)).filter(|&x| x >> e & 1 == 1 && rho[x as usize] == x.count_ones() as usize) {
            let y = extract(x & keep, keep);
            t.case(rho2[y as usize] == y.count_ones() as usize, || {
                format!("{name}: order {}, delete {e}: {x:#b}", tangle.order())
            });
        }
    });
}

/// For T-independent `X` and `Y = cl_T(X)`, each `e ∈ Y - X` is in the
/// closure or coclosure of `Y - e`.
fn tangle_closure_elements(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        for tangle in ctx.tangles(i) {
            let rho = tangle_rank_table(tangle);
            let lib = tangle.matroid();
            for x in (0..=full_mask(n)).filter(|&x| rho[x as usize] == x.count_ones() as usize) {
                let y = table_closure(&rho, n, x);
                let lib_ok = lib.closure(GroundSubset::raw(x, n)).bits() == y;
                t.case(lib_ok, || format!("{}: order {}: closure of {x:#b}", en.name, tangle.order()));
                for e in (0..n).filter(|&e| (y & !x) >> e & 1 == 1) {
                    let rest = y & !(1 << e);
                    let ok = m.rank_mask(y) == m.rank_mask(rest) || m.corank_mask(y) == m.corank_mask(rest);
                    t.case(ok, || format!("{}: order {}: X = {x:#b}, e = {e}", en.name, tangle.order()));
                }
            }
        }
    }
}

/// Long lines `X, X'` of `M(T)` spanning rank 4 in a 3-connected `M`:
/// removing `e ∈ X` while staying 3-connected leaves `X'` closed.
fn skew_lines_stay_closed(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        if !ctx.is_3_connected(i) {
            continue;
        }
        for tangle in ctx.tangles(i).iter().filter(|x| x.order() >= 4) {
            let rho = tangle_rank_table(tangle);
            let lines: Vec<u32> = (0..=full_mask(n))
                .filter(|&x| x.count_ones() >= 3 && rho[x as usize] == 2 && table_closure(&rho, n, x) == x)
                .collect();
            for &x in &lines {
                for &x2 in &lines {
                    if rho[(x | x2) as usize] != 4 {
                        continue;
                    }
                    for e in (0..n).filter(|&e| x >> e & 1 == 1) {
                        for op in [Op::Delete, Op::Contract] {
                            let (child, family) = inherited_family(tangle, e, op);
                            if !three_connected(&child) {
                                continue;
                            }
                            let Ok(inherited) = Tangle::new(&child, tangle.order() - 1, family) else {
                                t.fail(format!("{}: inherited family invalid", en.name));
                                continue;
                            };
                            let rho2 = tangle_rank_table(&inherited);
                            let keep = !(1u32 << e);
                            let y = extract(x2, keep);
                            t.case(table_closure(&rho2, n - 1, y) == y, || {
                                format!("{}: lines {x:#b}, {x2:#b}, {} {e}", en.name, op.name())
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Branch widths of small named matroids.
pub(crate) fn anchors() -> Vec<(&'static str, Matroid, usize)> {
    vec![
        ("M(K4)", named::complete_graph(4).expect("valid"), 2),
        ("M(W4)", named::wheel(4).expect("valid"), 2),
        ("U(2,4)", Matroid::uniform(2, 4).expect("valid"), 2),
        ("whirl(3)", named::whirl(3).expect("valid"), 2),
        ("U(1,1)", Matroid::uniform(1, 1).expect("valid"), 0),
        ("U(4,4)", Matroid::uniform(4, 4).expect("valid"), 0),
    ]
}

fn branch_width_anchors(_: &Ctx, t: &mut Tally) {
    for (name, m, want) in anchors() {
        let got = branch_width(&m).ok();
        t.case(got == Some(want), || format!("{name}: branch width {got:?}, expected {want}"));
    }
}

/// Largest tangle order equals the least decomposition width, and the
/// witness tree has that width.
fn decomposition_matches_tangles(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let top = ctx.tangles(i).iter().map(Tangle::order).max().unwrap_or(0);
        let bw = branch_width(m).ok();
        let dec = branch_width_by_decomposition(m).ok();
        let tree_width = dec.as_ref().and_then(|(_, tree)| decomposition_width(m, tree).ok());
        let ok = bw == Some(top) && dec.as_ref().map(|d| d.0) == Some(top) && tree_width == Some(top);
        t.case(ok, || {
            format!(
                "{}: tangles {top}, branch_width {bw:?}, decomposition {:?}, tree {tree_width:?}",
                en.name,
                dec.map(|d| d.0)
            )
        });
    }
}
