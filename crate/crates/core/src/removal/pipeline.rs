//! The full search for a removal set of a given size: grow a mixed set,
//! rebalance it through the restoration graph, and extract one side.

use super::restoration::balance_extract_side;
use super::{
    check_minor_free, good_minor, grow_removal_set, restorable, restoration_graph, restore, vertex_partition,
    RemovalContext, RestorationGraph,
};
use crate::connectivity::{fan_end_removal, find_fans, is_3_connected, Fan};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MinorSpec, Op};
use crate::subset::GroundSubset;
use crate::tangle::{inherit_tangle, Tangle};

/// Delete the ends `e_i` of maximal fans `F_i` lying in long lines `X_i` of
/// the tangle matroid, with the lines jointly of rank `2r`. Removal goes from
/// the last end to the first; after each step every remaining line must stay
/// closed in the inherited tangle matroid.
pub fn simultaneous_fan_removal(
    m: &Matroid,
    t: &Tangle,
    n: &Matroid,
    lines: &[GroundSubset],
    fans: &[Fan],
    ends: &[usize],
) -> Result<Matroid> {
    let r = lines.len();
    if fans.len() != r || ends.len() != r {
        return Err(Error::InvalidInput("lines, fans and ends must have the same length".into()));
    }
    if !t.host().same_as(m) || !is_3_connected(m) {
        return Err(Error::precondition("M must be 3-connected and carry the tangle"));
    }
    let tm = t.matroid();
    let en = m.subset_from_labels(n.labels())?;
    let union = lines.iter().fold(m.empty_set(), |a, x| a.union(*x));
    if tm.rank(union) != 2 * r {
        return Err(Error::precondition("lines are not skew in the tangle matroid"));
    }
    let all_fans = find_fans(m);
    for i in 0..r {
        let (x, fan, e) = (lines[i], &fans[i], ends[i]);
        let set = fan.set(m.size());
        if x.len() < 3 || tm.rank(x) != 2 || !tm.is_closed(x) || !x.is_disjoint(en) {
            return Err(Error::precondition(format!("line {i} is not a long line avoiding N")));
        }
        if fan.len() < 4 || !set.is_subset(x) || !all_fans.iter().any(|f| f.set(m.size()) == set) {
            return Err(Error::precondition(format!("fan {i} is not a maximal fan of length 4+ in its line")));
        }
        if !set.contains(e) || !good_minor(&m.delete_element(e)?, n)? {
            return Err(Error::precondition(format!("deleting {e} is not 3-connected with N")));
        }
    }
    let mut cur_t = t.clone();
    for i in (0..r).rev() {
        let cur = cur_t.host().clone();
        let e = cur.position_of(m.labels()[ends[i]]).expect("not yet deleted");
        if !good_minor(&cur.delete_element(e)?, n)? {
            return Err(Error::claim(format!("deleting end {} breaks 3-connectivity or N", ends[i])));
        }
        cur_t = inherit_tangle(&cur_t, &[(e, Op::Delete)])?;
        let next = cur_t.host();
        let next_tm = cur_t.matroid();
        for &x in &lines[..i] {
            let local = next.project(m, x)?;
            if !next_tm.is_closed(local) {
                return Err(Error::claim(format!("line {:?} stopped being closed", x.to_vec())));
            }
        }
    }
    let result = cur_t.host().clone();
    if !good_minor(&result, n)? {
        return Err(Error::claim("simultaneous deletion broke 3-connectivity or N"));
    }
    Ok(result)
}

/// A largest induced matching of `g` avoiding privileged vertices, as
/// `(c, d)` edges; the lexicographically first among the largest.
pub fn maximum_induced_matching(g: &RestorationGraph) -> Vec<(usize, usize)> {
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|&(c, d)| !g.is_privileged(c) && !g.is_privileged(d)).collect();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    grow_matching(g, &edges, 0, GroundSubset::empty(g.vertices().ground_size()), &mut cur, &mut best);
    best
}

fn grow_matching(
    g: &RestorationGraph,
    edges: &[(usize, usize)],
    from: usize,
    blocked: GroundSubset,
    cur: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
) {
    if cur.len() > best.len() {
        best.clone_from(cur);
    }
    if cur.len() + (edges.len() - from) <= best.len() {
        return;
    }
    for i in from..edges.len() {
        let (c, d) = edges[i];
        if blocked.contains(c) || blocked.contains(d) {
            continue;
        }
        // the new endpoints may not touch any matched vertex
        let reach = g.neighbours(c).union(g.neighbours(d)).with(c).with(d);
        cur.push((c, d));
        grow_matching(g, edges, i + 1, blocked.union(reach), cur, best);
        cur.pop();
    }
}

fn is_induced(g: &RestorationGraph, matching: &[(usize, usize)]) -> bool {
    let vertices =
        matching.iter().fold(GroundSubset::empty(g.vertices().ground_size()), |a, &(c, d)| a.with(c).with(d));
    matching.iter().all(|&(c, d)| {
        g.neighbours(c).intersection(vertices) == GroundSubset::raw(1 << d, vertices.ground_size())
            && g.neighbours(d).intersection(vertices) == GroundSubset::raw(1 << c, vertices.ground_size())
    })
}

/// Turn an induced matching of `R(M, C, D)` with at least `2k` edges and no
/// privileged vertices into a one-sided removal set of size at least `k`.
pub fn induced_matching_boost(
    m: &Matroid,
    t: &Tangle,
    n: &Matroid,
    c: GroundSubset,
    d: GroundSubset,
    k: usize,
) -> Result<(GroundSubset, Op)> {
    if k == 0 {
        return Ok((m.empty_set(), Op::Delete));
    }
    let g = restoration_graph(m, t, c, d)?;
    let matching = maximum_induced_matching(&g);
    if matching.len() < 2 * k {
        return Err(Error::precondition(format!("no induced matching with {} edges", 2 * k)));
    }
    boost(m, t, n, &g, &matching, k)
}

fn boost(
    m: &Matroid,
    t: &Tangle,
    n: &Matroid,
    g: &RestorationGraph,
    matching: &[(usize, usize)],
    k: usize,
) -> Result<(GroundSubset, Op)> {
    check_minor_free(n)?;
    let (c, d) = (g.contract(), g.delete());
    let tm = t.matroid();
    let en = m.subset_from_labels(n.labels())?;
    if tm.rank(en.union(c).union(d)) != tm.rank(en) + c.len() + d.len() {
        return Err(Error::precondition("E(N) ∪ C ∪ D is not of full tangle rank"));
    }
    if matching.len() < 2 * k
        || !is_induced(g, matching)
        || matching.iter().any(|&(x, y)| g.is_privileged(x) || g.is_privileged(y))
    {
        return Err(Error::precondition("matching is not induced, too small, or touches privileged vertices"));
    }
    if d.len() > c.len() {
        let swapped: Vec<(usize, usize)> = matching.iter().map(|&(x, y)| (y, x)).collect();
        let (set, op) = boost(&m.dual(), &t.on_dual(), &n.dual(), &g.swapped(), &swapped, k)?;
        return Ok((set, op.dual()));
    }
    let r = c.len() - d.len();
    if r >= k {
        return Ok((balance_extract_side(m, t, c, d, k, Op::Contract)?, Op::Contract));
    }
    let v = matching.iter().fold(m.empty_set(), |a, &(x, y)| a.with(x).with(y));
    let restored = restore(m, c, d, v)?;
    let (rc, rd) = (c.difference(v), d.difference(v));
    let removed: Vec<(usize, Op)> =
        rc.iter().map(|e| (e, Op::Contract)).chain(rd.iter().map(|e| (e, Op::Delete))).collect();
    let inherited = inherit_tangle(t, &removed)?;
    let local = |e: usize| restored.position_of(m.labels()[e]).expect("restored element");
    let itm = inherited.matroid();
    let fans = find_fans(&restored);
    let mut lines = Vec::new();
    let mut chosen = Vec::new();
    let mut ends = Vec::new();
    for &(x, y) in matching {
        let (lx, ly) = (local(x), local(y));
        let fan = fans
            .iter()
            .find(|f| f.len() >= 4 && internal(f, lx) && internal(f, ly))
            .ok_or_else(|| Error::claim(format!("{x} and {y} are not internal elements of a common fan")))?;
        let line = itm.closure(GroundSubset::raw(1 << lx | 1 << ly, restored.size()));
        let (end, _) = fan_end_removal(&restored, n, fan)?;
        lines.push(line);
        chosen.push(fan.clone());
        ends.push(end);
    }
    let by_op = |op: Op| -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, &end) in ends.iter().enumerate() {
            if good_minor(&restored.remove_element(op, end)?, n)? {
                out.push(i);
            }
        }
        Ok(out)
    };
    let host_of = |le: usize| m.position_of(restored.labels()[le]).expect("label from M");
    let deletable = by_op(Op::Delete)?;
    if deletable.len() >= k + r {
        let pick = |v: &[usize]| v.iter().map(|&i| ends[i]).collect::<Vec<_>>();
        let sel_lines: Vec<_> = deletable.iter().map(|&i| lines[i]).collect();
        let sel_fans: Vec<_> = deletable.iter().map(|&i| chosen[i].clone()).collect();
        simultaneous_fan_removal(&restored, &inherited, n, &sel_lines, &sel_fans, &pick(&deletable))?;
        let extra = deletable.iter().fold(m.empty_set(), |a, &i| a.with(host_of(ends[i])));
        let (nc, nd) = (rc, rd.union(extra));
        return Ok((balance_extract_side(m, t, nc, nd, k, Op::Delete)?, Op::Delete));
    }
    let contractible = by_op(Op::Contract)?;
    if contractible.len() + r >= k {
        let sel_lines: Vec<_> = contractible.iter().map(|&i| lines[i]).collect();
        let sel_fans: Vec<_> = contractible.iter().map(|&i| chosen[i].clone()).collect();
        let sel_ends: Vec<_> = contractible.iter().map(|&i| ends[i]).collect();
        let dual = restored.dual();
        let dual_fans: Vec<Fan> = sel_fans.iter().map(|f| dual_fan(&dual, f)).collect::<Result<_>>()?;
        simultaneous_fan_removal(&dual, &inherited.on_dual(), &n.dual(), &sel_lines, &dual_fans, &sel_ends)?;
        let extra = contractible.iter().fold(m.empty_set(), |a, &i| a.with(host_of(ends[i])));
        let (nc, nd) = (rc.union(extra), rd);
        return Ok((balance_extract_side(m, t, nc, nd, k, Op::Contract)?, Op::Contract));
    }
    Err(Error::claim(format!(
        "fan ends split {} / {} with balance {r}, below k = {k} on both sides",
        deletable.len(),
        contractible.len()
    )))
}

fn internal(f: &Fan, e: usize) -> bool {
    f.elements[1..f.len() - 1].contains(&e)
}

/// The same fan viewed in the dual (triangles and triads swap).
fn dual_fan(dual: &Matroid, f: &Fan) -> Result<Fan> {
    let set = f.set(dual.size());
    find_fans(dual)
        .into_iter()
        .find(|g| g.set(dual.size()) == set)
        .ok_or_else(|| Error::claim("fan of M is not a fan of M*"))
}

/// Which stage of the search produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// `k = 0`.
    Trivial,
    /// The grown set was already unbalanced by `k`.
    Balance,
    RestoreP1,
    RestoreP2,
    RestoreS1U2,
    RestoreS2U1,
    /// Restoring `U2 ∪ S1' ∪ Q2 ∪ P1 ∪ P2`.
    RestoreWide1,
    /// Restoring `U1 ∪ S2' ∪ Q1 ∪ P1 ∪ P2`.
    RestoreWide2,
    MatchingT1,
    MatchingT2,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Trivial => "trivial",
            Stage::Balance => "balance",
            Stage::RestoreP1 => "restore-p1",
            Stage::RestoreP2 => "restore-p2",
            Stage::RestoreS1U2 => "restore-s1-u2",
            Stage::RestoreS2U1 => "restore-s2-u1",
            Stage::RestoreWide1 => "restore-wide-1",
            Stage::RestoreWide2 => "restore-wide-2",
            Stage::MatchingT1 => "matching-t1",
            Stage::MatchingT2 => "matching-t2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalOutcome {
    pub set: GroundSubset,
    pub op: Op,
    pub stage: Stage,
    /// The mixed set grown before rebalancing.
    pub grown: MinorSpec,
}

/// A set `X` of size `k` with `rank_T(E(N) ∪ X) = t + k` and `M \ X` or
/// `M / X` 3-connected with `N` as a minor. Runs the constructive pipeline
/// whatever the tangle order; when no stage applies the result is
/// [`Error::BudgetExhausted`]. Every answer is verified before return.
pub fn find_removal_set(ctx: &RemovalContext) -> Result<RemovalOutcome> {
    let m = &ctx.matroid;
    let k = ctx.k;
    let outcome = search(ctx)?;
    if !ctx.verify(outcome.set, outcome.op)? {
        return Err(Error::claim(format!(
            "returned {} of {:?} fails verification",
            outcome.op.name(),
            m.labels_of(outcome.set)
        )));
    }
    debug_assert_eq!(outcome.set.len(), k);
    Ok(outcome)
}

fn search(ctx: &RemovalContext) -> Result<RemovalOutcome> {
    let (m, t, n, k) = (&ctx.matroid, &ctx.tangle, &ctx.minor, ctx.k);
    if k == 0 {
        return Ok(RemovalOutcome {
            set: m.empty_set(),
            op: Op::Delete,
            stage: Stage::Trivial,
            grown: MinorSpec::identity(m.size()),
        });
    }
    let growth = grow_removal_set(m, t, n, 10 * k - 7)?;
    let grown = growth.spec;
    let (c, d) = (grown.contract, grown.delete);
    if growth.size() == 0 {
        return Err(Error::BudgetExhausted { achieved: 0 });
    }
    let done = |set: GroundSubset, op: Op, stage: Stage| -> Result<RemovalOutcome> {
        let set = trim(set, k)?;
        Ok(RemovalOutcome { set, op, stage, grown })
    };
    let g = restoration_graph(m, t, c, d)?;
    let r = c.len() as isize - d.len() as isize;
    let ki = k as isize;
    if r >= ki {
        return done(balance_extract_side(m, t, c, d, k, Op::Contract)?, Op::Contract, Stage::Balance);
    }
    if -r >= ki {
        return done(balance_extract_side(m, t, c, d, k, Op::Delete)?, Op::Delete, Stage::Balance);
    }
    let vp = vertex_partition(&g)?;
    let size = |s: GroundSubset| s.len() as isize;
    let (p1, p2, q1, q2) = (size(vp.p1), size(vp.p2), size(vp.q1), size(vp.q2));
    let (u1, u2, s1, s2) = (size(vp.u1), size(vp.u2), size(vp.s1), size(vp.s2));
    // each move restores a set of vertices and rebalances towards one side
    let moves = [
        (p1 >= ki + r, vp.p1, Op::Delete, Stage::RestoreP1),
        (p2 >= ki - r, vp.p2, Op::Contract, Stage::RestoreP2),
        (s1 >= ki - r, vp.s1.union(vp.u2), Op::Contract, Stage::RestoreS1U2),
        (s2 >= ki + r, vp.s2.union(vp.u1), Op::Delete, Stage::RestoreS2U1),
        (
            u2 - s1 + q2 - p1 + p2 >= ki - r,
            vp.u2.union(vp.s1).union(vp.q2).union(vp.p1).union(vp.p2),
            Op::Contract,
            Stage::RestoreWide1,
        ),
        (
            u1 - s2 + q1 - p2 + p1 >= ki + r,
            vp.u1.union(vp.s2).union(vp.q1).union(vp.p1).union(vp.p2),
            Op::Delete,
            Stage::RestoreWide2,
        ),
    ];
    for (fires, z, side, stage) in moves {
        if !fires {
            continue;
        }
        if !restorable(&g, z) {
            return Err(Error::claim(format!("{} restores a set with an isolated vertex", stage.name())));
        }
        let (nc, nd) = (c.difference(z), d.difference(z));
        return done(balance_extract_side(m, t, nc, nd, k, side)?, side, stage);
    }
    for (tset, stage) in [(vp.t1, Stage::MatchingT1), (vp.t2, Stage::MatchingT2)] {
        if tset.len() < 2 * k {
            continue;
        }
        let h: Vec<(usize, usize)> =
            vp.matching.iter().copied().filter(|&(x, y)| tset.contains(x) || tset.contains(y)).collect();
        if !is_induced(&g, &h) {
            return Err(Error::claim(format!("{} matching is not induced", stage.name())));
        }
        let (set, op) = boost(m, t, n, &g, &h, k)?;
        return done(set, op, stage);
    }
    Err(Error::BudgetExhausted { achieved: growth.size() })
}

/// The first `k` elements; any `k` of them work because every vertex left
/// behind still has its restoring neighbour.
fn trim(set: GroundSubset, k: usize) -> Result<GroundSubset> {
    if set.len() < k {
        return Err(Error::claim(format!("extracted {} elements, fewer than {k}", set.len())));
    }
    Ok(set.iter().take(k).fold(set.difference(set), |a, e| a.with(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::enumerate_tangles;

    #[test]
    fn trivial_and_single() {
        let u = Matroid::uniform(4, 8).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let n = Matroid::uniform(1, 2).unwrap();
        let ctx = RemovalContext::new(&u, &t, &n, 0).unwrap();
        assert_eq!(find_removal_set(&ctx).unwrap().stage, Stage::Trivial);
        let ctx = RemovalContext::new(&u, &t, &n, 1).unwrap();
        let out = find_removal_set(&ctx).unwrap();
        assert_eq!(out.set.len(), 1);
        assert!(ctx.verify(out.set, out.op).unwrap());
        assert!(super::super::brute_force_oracle(&u, &n, 1).unwrap().is_some());
    }

    #[test]
    fn empty_matching_on_u37() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let g = restoration_graph(&u, &t, u.subset(&[0]).unwrap(), u.subset(&[1]).unwrap()).unwrap();
        // both vertices are privileged
        assert!(maximum_induced_matching(&g).is_empty());
        let n = Matroid::uniform(1, 2).unwrap().with_labels(vec![5, 6]).unwrap();
        let c = u.subset(&[0]).unwrap();
        let d = u.subset(&[1]).unwrap();
        assert_eq!(induced_matching_boost(&u, &t, &n, c, d, 0).unwrap().0, u.empty_set());
        assert!(matches!(induced_matching_boost(&u, &t, &n, c, d, 1), Err(Error::Precondition(_))));
    }
}
