//! Restoration graphs, single-element removal, the exact splitter check and
//! the removal search.

use std::collections::HashSet;

use super::oracle::{all_fans, internal_in_long_fan, tangle_rank_table, three_connected};
use super::{CheckFn, Ctx, Tally};
use crate::corpus::Lcg;
use crate::error::Error;
use crate::matroid::{Matroid, MinorSpec};
use crate::removal::{
    brute_force_oracle, find_removal_set, remove_on_line, restorable, restoration_graph, splitter_check,
    splitter_check_isomorphic, LineStep, RemovalContext, RestorationGraph,
};
use crate::subset::{full_mask, submasks, GroundSubset};
use crate::tangle::{branch_width, enumerate_tangles, Tangle};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("restoration_partner_fan", restoration_partner_fan),
    ("deleted_vertex_partner", deleted_vertex_partner),
    ("no_isolated_non_privileged", no_isolated_non_privileged),
    ("restorable_matches_direct", restorable_matches_direct),
    ("line_removal", line_removal),
    ("splitter", splitter),
    ("removal_soundness", removal_soundness),
];

/// Largest `|C ∪ D|` for restoration instances.
const RESTORE_CAP: usize = 6;
/// Splitter instances skip ground sets above this size.
const SPLITTER_CAP: usize = 10;
/// Line removal enumerates its own tangles up to this size.
const LINE_CAP: usize = 10;
/// `U(1,2)` minors drawn per matroid for the removal search.
const PAIRS_PER_MATROID: usize = 4;

/// `M`, a tangle, and disjoint `C, D` with `C ∪ D` independent in the tangle
/// matroid and `M / C \ D` 3-connected, `M` itself 3-connected.
struct Instance<'a> {
    name: &'a str,
    m: &'a Matroid,
    tangle: &'a Tangle,
    c: u32,
    d: u32,
}

fn minor_of(m: &Matroid, c: u32, d: u32) -> Matroid {
    let n = m.size();
    m.minor(&MinorSpec::new(GroundSubset::raw(c, n), GroundSubset::raw(d, n)).expect("disjoint")).expect("valid")
}

/// `M / (C - Z) \ (D - Z)`, computed without the library's `restore`.
fn restored(m: &Matroid, c: u32, d: u32, z: u32) -> Matroid {
    minor_of(m, c & !z, d & !z)
}

fn instances(ctx: &Ctx) -> Vec<Instance<'_>> {
    let mut out = Vec::new();
    for (i, en) in ctx.tangle_entries() {
        if !ctx.is_3_connected(i) {
            continue;
        }
        let m = &en.matroid;
        let n = m.size();
        let tangles = ctx.tangles(i);
        let tables: Vec<Vec<usize>> = tangles.iter().map(tangle_rank_table).collect();
        for s in 1..=full_mask(n) {
            let size = s.count_ones() as usize;
            if size > RESTORE_CAP {
                continue;
            }
            let Some(j) = tables.iter().position(|r| r[s as usize] == size) else {
                continue;
            };
            for c in submasks(s) {
                if three_connected(&minor_of(m, c, s & !c)) {
                    out.push(Instance { name: &en.name, m, tangle: &tangles[j], c, d: s & !c });
                }
            }
        }
    }
    out
}

fn describe(x: &Instance<'_>) -> String {
    format!("{}: C = {:#b}, D = {:#b}", x.name, x.c, x.d)
}

fn graph(t: &mut Tally, x: &Instance<'_>) -> Option<RestorationGraph> {
    let n = x.m.size();
    t.ok(restoration_graph(x.m, x.tangle, GroundSubset::raw(x.c, n), GroundSubset::raw(x.d, n)), || describe(x))
}

/// For a T-independent pair `{c, d}` with `M / c \ d` 3-connected, `M / c`
/// not, and `d` in no parallel pair: `M` is 3-connected, and `M \ d` is
/// 3-connected or `c, d` sit inside a fan of at least four elements.
fn restoration_partner_fan(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        let tables: Vec<Vec<usize>> = ctx.tangles(i).iter().map(tangle_rank_table).collect();
        let parallel: u32 = m.parallel_classes().into_iter().filter(|p| p.len() >= 2).fold(0, |acc, p| acc | p.bits());
        let fans = all_fans(m);
        for c in 0..n {
            for d in (0..n).filter(|&d| d != c && parallel >> d & 1 == 0) {
                let pair = 1u32 << c | 1 << d;
                if !tables.iter().any(|r| r[pair as usize] == 2) {
                    continue;
                }
                if !three_connected(&minor_of(m, 1 << c, 1 << d)) || three_connected(&minor_of(m, 1 << c, 0)) {
                    continue;
                }
                let whole = ctx.is_3_connected(i);
                let fan = three_connected(&minor_of(m, 0, 1 << d)) || internal_in_long_fan(&fans, c, d);
                t.case(whole && fan, || {
                    format!("{}: c = {c}, d = {d}: 3-connected {whole}, second part {fan}", en.name)
                });
            }
        }
    }
}

/// Each `d ∈ D` is privileged or has some `c ∈ C` with `{c, d}` restorable
/// to a 3-connected matroid; likewise each `c ∈ C` by duality.
fn deleted_vertex_partner(ctx: &Ctx, t: &mut Tally) {
    for x in instances(ctx) {
        let n = x.m.size();
        for (side, other) in [(x.d, x.c), (x.c, x.d)] {
            for v in (0..n).filter(|&v| side >> v & 1 == 1) {
                let ok = three_connected(&restored(x.m, x.c, x.d, 1 << v))
                    || (0..n)
                        .filter(|&u| other >> u & 1 == 1)
                        .any(|u| three_connected(&restored(x.m, x.c, x.d, 1 << u | 1 << v)));
                t.case(ok, || format!("{}: vertex {v}", describe(&x)));
            }
        }
    }
}

/// The library graph has the edges and privileged vertices of the
/// definition, and no isolated non-privileged vertex.
fn no_isolated_non_privileged(ctx: &Ctx, t: &mut Tally) {
    for x in instances(ctx) {
        let Some(g) = graph(t, &x) else {
            continue;
        };
        let n = x.m.size();
        let vertices = x.c | x.d;
        let mut same = true;
        for v in (0..n).filter(|&v| vertices >> v & 1 == 1) {
            same &= g.is_privileged(v) == three_connected(&restored(x.m, x.c, x.d, 1 << v));
            if x.c >> v & 1 == 1 {
                for u in (0..n).filter(|&u| x.d >> u & 1 == 1) {
                    let edge = three_connected(&restored(x.m, x.c, x.d, 1 << u | 1 << v));
                    same &= g.neighbours(v).contains(u) == edge;
                }
            }
        }
        let isolated =
            (0..n).find(|&v| vertices >> v & 1 == 1 && !g.is_privileged(v) && g.neighbours(v).bits() & vertices == 0);
        t.case(same && isolated.is_none(), || {
            format!("{}: graph matches definition {same}, isolated {isolated:?}", describe(&x))
        });
    }
}

/// `restorable(G, S)` agrees with direct 3-connectivity of the restoration
/// for every `S ⊆ C ∪ D`.
fn restorable_matches_direct(ctx: &Ctx, t: &mut Tally) {
    for x in instances(ctx) {
        let Some(g) = graph(t, &x) else {
            continue;
        };
        let n = x.m.size();
        t.bump("instances");
        for s in submasks(x.c | x.d) {
            let predicted = restorable(&g, GroundSubset::raw(s, n));
            let direct = three_connected(&restored(x.m, x.c, x.d, s));
            t.case(predicted == direct, || {
                format!("{}: S = {s:#b}: predicted {predicted}, direct {direct}", describe(&x))
            });
        }
    }
}

fn pair_minor(m: &Matroid, a: usize, b: usize) -> Matroid {
    Matroid::uniform(1, 2).expect("valid").with_labels(vec![m.labels()[a], m.labels()[b]]).expect("distinct")
}

fn keeps(m: &Matroid, n: &Matroid) -> bool {
    n.labels().iter().all(|&l| m.position_of(l).is_some()) && m.has_minor(n).is_ok_and(|s| s.is_some())
}

fn step_name(s: LineStep) -> &'static str {
    match s {
        LineStep::FanEnd => "fan_end",
        LineStep::Bixby => "bixby",
        LineStep::Triangle => "triangle",
        LineStep::Simple => "simple",
        LineStep::Scan => "scan",
    }
}

/// For a long line `X` of `M(T)` with `θ >= 3`, `f ∈ X`, and `N` avoiding
/// `X - f`, some `e ∈ X - f` has `M \ e` or `M / e` 3-connected with `N`.
/// `N` ranges over `U(1,2)` on pairs avoiding `X - f`, and the empty minor.
/// Tangles are enumerated here up to [`LINE_CAP`] elements, since long lines
/// in tangles of order 3 need more than eight.
fn line_removal(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.entries(LINE_CAP) {
        let m = &en.matroid;
        let n = m.size();
        if !ctx.is_3_connected(i) {
            continue;
        }
        let mut tangles = Vec::new();
        for order in 3.. {
            let Some(found) = t.ok(enumerate_tangles(m, order), || format!("{}: tangles", en.name)) else {
                break;
            };
            if found.is_empty() {
                break;
            }
            tangles.extend(found);
        }
        let mut seen = HashSet::new();
        for tangle in &tangles {
            let tm = tangle.matroid();
            for line in tm.long_lines() {
                for f in line.iter() {
                    let open = line.without(f).bits();
                    let mut minors = vec![Matroid::uniform(0, 0).expect("valid")];
                    for a in (0..n).filter(|&a| open >> a & 1 == 0) {
                        for b in (a + 1..n).filter(|&b| open >> b & 1 == 0) {
                            minors.push(pair_minor(m, a, b));
                        }
                    }
                    for minor in minors {
                        let key = (line.bits(), f, minor.labels().to_vec(), tangle.order());
                        if !seen.insert(key) {
                            continue;
                        }
                        match remove_on_line(m, tangle, &minor, line, f) {
                            Ok(r) => {
                                t.bump(step_name(r.step));
                                let child = m.remove_element(r.op, r.element).expect("in range");
                                let ok = open >> r.element & 1 == 1 && three_connected(&child) && keeps(&child, &minor);
                                t.case(ok, || {
                                    format!(
                                        "{}: line {:#b}, f = {f}: {} {} fails",
                                        en.name,
                                        line.bits(),
                                        r.op.name(),
                                        r.element
                                    )
                                });
                            }
                            Err(e) => t.case(false, || format!("{}: line {:#b}, f = {f}: {e}", en.name, line.bits())),
                        }
                    }
                }
            }
        }
    }
}

/// Distinct proper exact minors of `m` that are 3-connected, by retained
/// set and rank table.
fn three_connected_minors(m: &Matroid) -> Vec<Matroid> {
    let n = m.size();
    let full = full_mask(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for removed in 1..=full {
        for c in submasks(removed) {
            let minor = minor_of(m, c, removed & !c);
            if seen.insert((removed, minor.rank_digest())) && three_connected(&minor) {
                out.push(minor);
            }
        }
    }
    out
}

/// For 3-connected `M` of branch width at least 3 and each 3-connected
/// proper exact minor `N`, some single removal is 3-connected and keeps `N`
/// exactly. The isomorphic variant runs when the exact one finds nothing.
fn splitter(ctx: &Ctx, t: &mut Tally) {
    for (i, en) in ctx.entries(SPLITTER_CAP) {
        let m = &en.matroid;
        if !ctx.is_3_connected(i) || branch_width(m).map_or(true, |b| b < 3) {
            continue;
        }
        t.bump("matroids");
        for minor in three_connected_minors(m) {
            match splitter_check(m, &minor) {
                Ok(Some((e, op))) => {
                    let child = m.remove_element(op, e).expect("in range");
                    let ok =
                        minor.position_of(m.labels()[e]).is_none() && three_connected(&child) && keeps(&child, &minor);
                    t.case(ok, || format!("{}: N on {:?}: {} {e} fails", en.name, minor.labels(), op.name()));
                }
                Ok(None) => {
                    let iso = splitter_check_isomorphic(m, &minor).ok().flatten();
                    if iso.is_some() {
                        t.bump("isomorphic_only");
                    }
                    t.case(false, || {
                        format!("{}: N on {:?}: no exact removal; isomorphic variant {iso:?}", en.name, minor.labels())
                    });
                }
                Err(e) => t.case(false, || format!("{}: N on {:?}: {e}", en.name, minor.labels())),
            }
        }
    }
}

/// Removal-search answers pass an independent check, and the exhaustive
/// oracle finds an answer of the same size. Instances: 3-connected `M` with
/// a tangle of its largest order, `N = U(1,2)` on seeded pairs, `k` in 1, 2.
fn removal_soundness(ctx: &Ctx, t: &mut Tally) {
    let mut rng = Lcg::new(ctx.cfg.seed);
    for (i, en) in ctx.tangle_entries() {
        let m = &en.matroid;
        let n = m.size();
        if n < 3 || !ctx.is_3_connected(i) {
            continue;
        }
        let Some(top) = ctx.tangles(i).iter().max_by_key(|x| x.order()) else {
            continue;
        };
        let rho = tangle_rank_table(top);
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut chosen = Vec::new();
        while chosen.len() < PAIRS_PER_MATROID && !pairs.is_empty() {
            chosen.push(pairs.swap_remove(rng.below(pairs.len() as u64) as usize));
        }
        chosen.sort_unstable();
        for (a, b) in chosen {
            let minor = pair_minor(m, a, b);
            let en_mask = 1u32 << a | 1 << b;
            for k in 1..=2usize {
                let Some(rc) = t.ok(RemovalContext::new(m, top, &minor, k), || format!("{}: context", en.name)) else {
                    continue;
                };
                t.bump("instances");
                let oracle = brute_force_oracle(m, &minor, k).ok().flatten();
                match find_removal_set(&rc) {
                    Ok(out) => {
                        t.bump("found");
                        let x = out.set.bits();
                        let child = m.remove_set(out.op, out.set).expect("in range");
                        let sound = out.set.len() == k
                            && x & en_mask == 0
                            && rho[(x | en_mask) as usize] == rho[en_mask as usize] + k
                            && three_connected(&child)
                            && keeps(&child, &minor);
                        t.case(sound, || {
                            format!("{}: N on {a},{b}, k = {k}: {} {x:#b} unsound", en.name, out.op.name())
                        });
                        let dominated = oracle.is_some_and(|(s, _)| s.len() == k);
                        t.case(dominated, || format!("{}: N on {a},{b}, k = {k}: oracle found {oracle:?}", en.name));
                    }
                    Err(Error::BudgetExhausted { .. }) => {
                        t.bump("exhausted");
                        if oracle.is_some() {
                            t.bump("exhausted_oracle_found");
                        }
                    }
                    Err(e) => t.case(false, || format!("{}: N on {a},{b}, k = {k}: {e}", en.name)),
                }
            }
        }
    }
}
