//! Connectivity function, separations, minor routing and fans.

use std::collections::HashSet;

use super::oracle::{all_fans, mask_of, maximal_fan_sets, three_connected, triad, triangle};
use super::{CheckFn, Ctx, Tally};
use crate::connectivity::{
    bixby_branch, fan_end_removal, find_fans, guts_coguts_conditions, is_connected, is_k_connected, is_wheel_or_whirl,
    route_2sep_minor, route_2sep_one_contact, Route,
};
use crate::corpus::Lcg;
use crate::matroid::{Matroid, MinorSpec};
use crate::subset::{extract, full_mask, submasks, GroundSubset};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("lambda_identities", lambda_identities),
    ("uncrossing", uncrossing),
    ("guts_coguts_equivalence", guts_coguts_equivalence),
    ("contract_outside_closure", contract_outside_closure),
    ("two_element_two_separation", two_element_two_separation),
    ("two_separation_routing", two_separation_routing),
    ("circuit_splice", circuit_splice),
    ("one_contact_routing", one_contact_routing),
    ("bixby_nonempty", bixby_nonempty),
    ("tutte_triangle", tutte_triangle),
    ("fan_enumeration", fan_enumeration),
    ("fan_duality_reversal", fan_duality_reversal),
    ("fan_fully_closed", fan_fully_closed),
    ("fan_interior", fan_interior),
    ("fan_ends_three_connected", fan_ends_three_connected),
    ("fan_end_removal", fan_end_removal_check),
];

/// Largest `B` for which every split of `B` into contract and delete parts
/// is tried.
const ROUTING_SIDE_CAP: usize = 4;

fn lambda_table(m: &Matroid) -> Vec<usize> {
    let full = full_mask(m.size());
    let r = m.rank_mask(full);
    (0..=full).map(|x| m.rank_mask(x) + m.rank_mask(full & !x) - r).collect()
}

/// Positions of `x` in a matroid with element `e` removed.
fn drop_elem(x: u32, e: usize) -> u32 {
    extract(x, !(1u32 << e))
}

fn in_closure(m: &Matroid, x: u32, e: usize) -> bool {
    m.rank_mask(x | 1 << e) == m.rank_mask(x)
}

fn in_coclosure(m: &Matroid, x: u32, e: usize) -> bool {
    m.corank_mask(x | 1 << e) == m.corank_mask(x)
}

/// `U(1,2)` on two labels: a minor of every connected matroid containing
/// both.
fn pair_minor(m: &Matroid, a: usize, b: usize) -> Matroid {
    Matroid::uniform(1, 2).expect("valid").with_labels(vec![m.labels()[a], m.labels()[b]]).expect("distinct")
}

fn keeps(m: &Matroid, n: &Matroid) -> bool {
    m.has_minor(n).is_ok_and(|s| s.is_some())
}

fn lambda_identities(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        let d = m.dual();
        let lt = lambda_table(m);
        let ld = lambda_table(&d);
        let dels: Vec<Vec<usize>> = (0..n).map(|e| lambda_table(&m.delete_element(e).expect("in range"))).collect();
        let mut bad = [None; 5];
        for x in 0..=full {
            let l = lt[x as usize];
            if l + x.count_ones() as usize != m.rank_mask(x) + d.rank_mask(x) {
                bad[0].get_or_insert(x);
            }
            if lt[(full & !x) as usize] != l {
                bad[1].get_or_insert(x);
            }
            if ld[x as usize] != l {
                bad[2].get_or_insert(x);
            }
            for (e, table) in dels.iter().enumerate() {
                if x >> e & 1 == 0 {
                    let l2 = table[drop_elem(x, e) as usize];
                    if l2 > l || l > l2 + 1 {
                        bad[3].get_or_insert(x);
                    }
                }
            }
            for y in x + 1..=full {
                if l + lt[y as usize] < lt[(x & y) as usize] + lt[(x | y) as usize] {
                    bad[4].get_or_insert(x);
                }
            }
        }
        for (i, b) in bad.iter().enumerate() {
            t.case(b.is_none(), || format!("{}: identity {} fails at {:#b}", en.name, i + 1, b.unwrap_or(0)));
        }
    }
}

/// For a `k`-connected `M` and `k`-separating `X1, X2`: a large enough
/// intersection makes the union `k`-separating, and a large enough outside
/// makes the intersection `k`-separating.
fn uncrossing(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        let lt = lambda_table(m);
        for k in 1..=3usize {
            if !is_k_connected(m, k) {
                continue;
            }
            let seps: Vec<u32> = (0..=full).filter(|&x| lt[x as usize] < k).collect();
            for (i, &a) in seps.iter().enumerate() {
                for &b in &seps[i..] {
                    if (a & b).count_ones() as usize >= k - 1 {
                        t.case(lt[(a | b) as usize] < k, || format!("{}: k = {k}, union of {a:#b}, {b:#b}", en.name));
                    }
                    if (full & !(a | b)).count_ones() as usize >= k - 1 {
                        t.case(lt[(a & b) as usize] < k, || {
                            format!("{}: k = {k}, intersection of {a:#b}, {b:#b}", en.name)
                        });
                    }
                }
            }
        }
    }
}

/// For an exact `k`-separation `(X, Y)` of a `k`-connected `M` and a non-loop
/// `e ∈ X`: `(X - e, Y)` is a `(k-1)`-separation of `M / e` exactly when `e`
/// is in both closures, exactly when `e` is in neither coclosure. Also
/// compared with the library's own three-way computation.
fn guts_coguts_equivalence(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        let lt = lambda_table(m);
        let contracted: Vec<Matroid> = (0..n).map(|e| m.contract_element(e).expect("in range")).collect();
        let loops = m.loops();
        for k in 1..=3usize {
            if !is_k_connected(m, k) {
                continue;
            }
            for x in 0..=full {
                let y = full & !x;
                let (sx, sy) = (x.count_ones() as usize, y.count_ones() as usize);
                if lt[x as usize] != k - 1 || sx < k || sy < k {
                    continue;
                }
                for e in (0..n).filter(|&e| x >> e & 1 == 1 && !loops.contains(e)) {
                    let xe = x & !(1 << e);
                    let me = &contracted[e];
                    let lme = {
                        let f = full_mask(n - 1);
                        let a = drop_elem(xe, e);
                        me.rank_mask(a) + me.rank_mask(f & !a) - me.rank_mask(f)
                    };
                    let first = k >= 2 && lme < k - 1 && sx > k - 1 && sy >= k - 1;
                    let second = in_closure(m, y, e) && in_closure(m, xe, e);
                    let third = !in_coclosure(m, y, e) && !in_coclosure(m, xe, e);
                    let lib = guts_coguts_conditions(m, GroundSubset::raw(x, n), e).ok();
                    t.case(first == second && second == third && lib == Some([first, second, third]), || {
                        format!("{}: k = {k}, X = {x:#b}, e = {e}: {:?} vs {lib:?}", en.name, [first, second, third])
                    });
                }
            }
        }
    }
}

/// If `M / e` is still `k`-connected then `e` is outside the closure of the
/// far side of every `k`-separation through `e`.
fn contract_outside_closure(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        let lt = lambda_table(m);
        for k in 2..=3usize {
            if !is_k_connected(m, k) {
                continue;
            }
            for e in 0..n {
                if !is_k_connected(&m.contract_element(e).expect("in range"), k) {
                    continue;
                }
                for x in (0..=full).filter(|x| x >> e & 1 == 1) {
                    let y = full & !x;
                    if lt[x as usize] < k && x.count_ones() as usize >= k && y.count_ones() as usize >= k {
                        t.case(!in_closure(m, y, e), || format!("{}: k = {k}, e = {e}, X = {x:#b}", en.name));
                    }
                }
            }
        }
    }
}

/// In a connected matroid a two-element side of a 2-separation is a
/// parallel or series pair.
fn two_element_two_separation(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        if n < 4 || !is_connected(m) {
            continue;
        }
        let lt = lambda_table(m);
        for b in crate::subset::k_subsets(n, 2) {
            if lt[b as usize] < 2 {
                let set = GroundSubset::raw(b, n);
                let ok = m.is_circuit(set) || m.dual().is_circuit(set);
                t.case(ok, || format!("{}: {b:#b} is neither a parallel nor a series pair", en.name));
            }
        }
    }
}

/// Sides `B` of 2-separations, at most [`ROUTING_SIDE_CAP`] elements, in
/// every orientation.
fn two_separating_sides(m: &Matroid) -> Vec<u32> {
    let n = m.size();
    let full = full_mask(n);
    let lt = lambda_table(m);
    (0..=full)
        .filter(|&b| {
            let (sb, sa) = (b.count_ones() as usize, n - b.count_ones() as usize);
            lt[b as usize] < 2 && sb >= 2 && sa >= 2 && sb <= ROUTING_SIDE_CAP
        })
        .collect()
}

/// For `N` avoiding a 2-separating side `B`: one of `M \ B`, `M / B` keeps
/// `N`; `e ∈ B - cl(A)` has `M / e` keeping `N`; and `e` outside both
/// `cl(A)` and `cl*(A)` has both removals keeping `N`. Each `N` is
/// `M / C \ D` for a split `(C, D)` of `B`.
fn two_separation_routing(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.entries(9) {
        let m = &en.matroid;
        let n = m.size();
        let full = full_mask(n);
        for b in two_separating_sides(m) {
            let a = full & !b;
            let bs = GroundSubset::raw(b, n);
            for c in submasks(b) {
                let spec = MinorSpec::new(GroundSubset::raw(c, n), GroundSubset::raw(b & !c, n)).expect("disjoint");
                let minor = m.minor(&spec).expect("valid");
                match route_2sep_minor(m, &minor, bs) {
                    Ok((route, s)) => {
                        let whole = match route {
                            Route::DeleteB => s.delete.bits() & b == b,
                            Route::ContractB => s.contract.bits() & b == b,
                        };
                        let ok = whole && m.minor(&s).is_ok_and(|x| x.same_as(&minor));
                        t.case(ok, || format!("{}: B = {b:#b}, C = {c:#b}: bad route", en.name));
                    }
                    Err(e) => t.case(false, || format!("{}: B = {b:#b}, C = {c:#b}: {e}", en.name)),
                }
                for e in (0..n).filter(|&e| b >> e & 1 == 1) {
                    if in_closure(m, a, e) {
                        continue;
                    }
                    let con = keeps(&m.contract_element(e).expect("in range"), &minor);
                    t.case(con, || format!("{}: B = {b:#b}, e = {e}: contraction loses N", en.name));
                    if !in_coclosure(m, a, e) {
                        let del = keeps(&m.delete_element(e).expect("in range"), &minor);
                        t.case(del, || format!("{}: B = {b:#b}, e = {e}: deletion loses N", en.name));
                    }
                }
            }
        }
    }
}

/// Circuits `C1, C2` meeting both sides of a 2-separation `(A, B)` give the
/// circuit `(C1 ∩ A) ∪ (C2 ∩ B)`.
fn circuit_splice(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        if n < 4 {
            continue;
        }
        let full = full_mask(n);
        let lt = lambda_table(m);
        let circuits: Vec<u32> = m.circuits(None).into_iter().map(GroundSubset::bits).collect();
        let circuit_set: HashSet<u32> = circuits.iter().copied().collect();
        // one orientation per partition; ordered circuit pairs cover the other
        for a in (1..full).filter(|a| a & 1 == 1) {
            let b = full & !a;
            if lt[a as usize] >= 2 || a.count_ones() < 2 || b.count_ones() < 2 {
                continue;
            }
            let crossing: Vec<u32> = circuits.iter().copied().filter(|c| c & a != 0 && c & b != 0).collect();
            for &c1 in &crossing {
                for &c2 in &crossing {
                    let s = (c1 & a) | (c2 & b);
                    t.case(circuit_set.contains(&s), || format!("{}: A = {a:#b}, circuits {c1:#b}, {c2:#b}", en.name));
                }
            }
        }
    }
}

/// A 2-separating side `B` meeting a loop- and coloop-free `N` in one
/// element `f`, with `f` in no series or parallel pair, has an element of
/// `B - f` whose deletion and contraction both keep `N`.
fn one_contact_routing(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.entries(9) {
        let m = &en.matroid;
        let n = m.size();
        if !is_connected(m) {
            continue;
        }
        let full = full_mask(n);
        let paired: u32 = m.parallel_classes().into_iter().chain(m.series_classes()).fold(0, |acc, c| acc | c.bits());
        for b in two_separating_sides(m) {
            let a = full & !b;
            for f in (0..n).filter(|&f| b >> f & 1 == 1 && paired >> f & 1 == 0) {
                let rest = b & !(1 << f);
                let mut minors: Vec<Matroid> = submasks(rest)
                    .map(|c| {
                        let spec =
                            MinorSpec::new(GroundSubset::raw(c, n), GroundSubset::raw(rest & !c, n)).expect("disjoint");
                        m.minor(&spec).expect("valid")
                    })
                    .filter(|x| x.loops().is_empty() && x.coloops().is_empty())
                    .collect();
                let first_a = a.trailing_zeros() as usize;
                minors.push(pair_minor(m, first_a, f));
                for minor in minors {
                    match route_2sep_one_contact(m, &minor, GroundSubset::raw(b, n)) {
                        Ok(e) => {
                            let ok = rest >> e & 1 == 1
                                && keeps(&m.delete_element(e).expect("in range"), &minor)
                                && keeps(&m.contract_element(e).expect("in range"), &minor);
                            t.case(ok, || format!("{}: B = {b:#b}, f = {f}: element {e} fails", en.name));
                        }
                        Err(e) => t.case(false, || format!("{}: B = {b:#b}, f = {f}: {e}", en.name)),
                    }
                }
            }
        }
    }
}

/// For 3-connected `M` and any `e`, `si(M / e)` or `co(M \ e)` is
/// 3-connected, and the library reports the same pair of answers.
fn bixby_nonempty(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.subset_entries() {
        let m = &en.matroid;
        if !ctx.is_3_connected(i) {
            continue;
        }
        for e in 0..m.size() {
            let si = three_connected(&m.contract_element(e).expect("in range").simplify().0);
            let co = three_connected(&m.delete_element(e).expect("in range").cosimplify().0);
            let lib = bixby_branch(m, e).ok().map(|b| (b.contraction, b.deletion));
            t.case((si || co) && lib == Some((si, co)), || {
                format!("{}: e = {e}: direct ({si}, {co}), library {lib:?}", en.name)
            });
        }
    }
}

/// A triangle `{e, f, g}` of a 3-connected `M` with neither `M \ e` nor
/// `M \ f` 3-connected has a triad through `e` and exactly one of `f, g`.
fn tutte_triangle(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        if n < 4 || !ctx.is_3_connected(i) {
            continue;
        }
        let del_ok: Vec<bool> = (0..n).map(|e| three_connected(&m.delete_element(e).expect("in range"))).collect();
        let triads: Vec<u32> = crate::subset::k_subsets(n, 3).filter(|&x| triad(m, x)).collect();
        for tri in crate::subset::k_subsets(n, 3).filter(|&x| triangle(m, x)) {
            let els = GroundSubset::raw(tri, n).to_vec();
            for &e in &els {
                for &f in &els {
                    if e == f || del_ok[e] || del_ok[f] {
                        continue;
                    }
                    let g = els.iter().copied().find(|&g| g != e && g != f).expect("three elements");
                    let found = triads.iter().any(|&s| s >> e & 1 == 1 && ((s >> f & 1) + (s >> g & 1)) == 1);
                    t.case(found, || format!("{}: triangle {els:?}, e = {e}, f = {f}", en.name));
                }
            }
        }
    }
}

/// Library maximal fans agree with brute-force enumeration.
fn fan_enumeration(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let fans = all_fans(m);
        let all: HashSet<&Vec<usize>> = fans.iter().collect();
        let expected = maximal_fan_sets(&fans);
        let lib = find_fans(m);
        let mut got: Vec<u32> = lib.iter().map(|f| mask_of(&f.elements)).collect();
        got.sort_unstable();
        let valid = lib.iter().all(|f| all.contains(&f.elements));
        t.case(got == expected && valid, || format!("{}: maximal fans differ", en.name));
    }
}

/// Every fan is a fan of the dual with triangles and triads swapped, and
/// its reversal is a fan.
fn fan_duality_reversal(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let fans = all_fans(m);
        let all: HashSet<&Vec<usize>> = fans.iter().collect();
        let dual_fans: HashSet<Vec<usize>> = all_fans(&m.dual()).into_iter().collect();
        let d = m.dual();
        for f in &fans {
            let rev: Vec<usize> = f.iter().rev().copied().collect();
            let head = mask_of(&f[..3]);
            let swapped = triangle(m, head) == triad(&d, head) && triad(m, head) == triangle(&d, head);
            t.case(all.contains(&rev) && dual_fans.contains(f) && swapped, || format!("{}: fan {f:?}", en.name));
        }
    }
}

/// A maximal fan inside a fully closed set is maximal in the whole matroid.
fn fan_fully_closed(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let fans = all_fans(m);
        if fans.is_empty() {
            continue;
        }
        let sets: Vec<u32> = {
            let mut s: Vec<u32> = fans.iter().map(|f| mask_of(f)).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let global = maximal_fan_sets(&fans);
        for x in 0..=full_mask(n) {
            let closed = (0..n).all(|e| x >> e & 1 == 1 || (!in_closure(m, x, e) && !in_coclosure(m, x, e)));
            if !closed {
                continue;
            }
            let inside: Vec<u32> = sets.iter().copied().filter(|&s| s & !x == 0).collect();
            for &s in &inside {
                if inside.iter().any(|&o| o != s && o & s == s) {
                    continue;
                }
                t.case(global.contains(&s), || format!("{}: X = {x:#b}, fan set {s:#b}", en.name));
            }
        }
    }
}

/// Interior elements of a fan with at least four elements have neither a
/// 3-connected deletion nor a 3-connected contraction.
fn fan_interior(ctx: &Ctx, t: &mut Tally) {
    for (_, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        let fans = all_fans(m);
        if !fans.iter().any(|f| f.len() >= 4) {
            continue;
        }
        let good: Vec<(bool, bool)> = (0..n)
            .map(|e| {
                (
                    three_connected(&m.delete_element(e).expect("in range")),
                    three_connected(&m.contract_element(e).expect("in range")),
                )
            })
            .collect();
        for f in fans.iter().filter(|f| f.len() >= 4) {
            for &x in &f[1..f.len() - 1] {
                if good[x] != (false, false) && n == 4 {
                    // the fan is the whole ground set and removals leave three elements
                    t.bump("four_element_violations");
                }
                t.case(good[x] == (false, false), || {
                    format!("{}: fan {f:?}, interior {x}: deletion/contraction 3-connected {:?}", en.name, good[x])
                });
            }
        }
    }
}

/// In a 3-connected matroid other than a wheel or whirl, every maximal fan
/// has an ordering whose two ends each have a 3-connected deletion or
/// contraction.
fn fan_ends_three_connected(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        if !ctx.is_3_connected(i) || is_wheel_or_whirl(m).unwrap_or(true) {
            continue;
        }
        let fans = all_fans(m);
        let good: Vec<bool> = (0..n)
            .map(|e| {
                three_connected(&m.delete_element(e).expect("in range"))
                    || three_connected(&m.contract_element(e).expect("in range"))
            })
            .collect();
        for s in maximal_fan_sets(&fans) {
            let size = s.count_ones() as usize;
            let ok =
                fans.iter().filter(|f| f.len() == size && mask_of(f) == s).any(|f| good[f[0]] && good[f[size - 1]]);
            t.case(ok, || format!("{}: fan set {s:#b}", en.name));
        }
    }
}

/// Pairs chosen with the seeded generator, at most `count`, distinct.
fn sample_pairs(rng: &mut Lcg, n: usize, count: usize, allowed: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| allowed(a, b)).collect();
    let mut out = Vec::new();
    let mut pool = pairs;
    while out.len() < count && !pool.is_empty() {
        let i = rng.below(pool.len() as u64) as usize;
        out.push(pool.swap_remove(i));
    }
    out.sort_unstable();
    out
}

/// A maximal fan of length at least four meeting `N` in at most one element
/// has an end whose deletion or contraction is 3-connected and keeps `N`.
/// `N` ranges over `U(1,2)` minors on sampled pairs.
fn fan_end_removal_check(ctx: &Ctx, t: &mut Tally) {
    let mut rng = Lcg::new(ctx.cfg.seed);
    for (i, en) in ctx.subset_entries() {
        let m = &en.matroid;
        let n = m.size();
        if n < 4 || !ctx.is_3_connected(i) || is_wheel_or_whirl(m).unwrap_or(true) {
            continue;
        }
        for fan in find_fans(m).into_iter().filter(|f| f.len() >= 4) {
            let set = mask_of(&fan.elements);
            let pairs = sample_pairs(&mut rng, n, 4, |a, b| ((set >> a & 1) + (set >> b & 1)) <= 1);
            for (a, b) in pairs {
                let minor = pair_minor(m, a, b);
                match fan_end_removal(m, &minor, &fan) {
                    Ok((x, op)) => {
                        let (first, last) = fan.ends();
                        let child = m.remove_element(op, x).expect("in range");
                        let ok = (x == first || x == last) && three_connected(&child) && keeps(&child, &minor);
                        t.case(ok, || format!("{}: fan {:?}, N on {a},{b}: {x} {op:?}", en.name, fan.elements));
                    }
                    Err(e) => t.case(false, || format!("{}: fan {:?}, N on {a},{b}: {e}", en.name, fan.elements)),
                }
            }
        }
    }
}
