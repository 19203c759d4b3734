//! Restoration graphs: which removed elements can be put back together.

use crate::connectivity::is_3_connected;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MinorSpec, Op};
use crate::par;
use crate::subset::GroundSubset;
use crate::tangle::Tangle;

/// `M / (C - Z) \ (D - Z)`.
pub fn restore(m: &Matroid, c: GroundSubset, d: GroundSubset, z: GroundSubset) -> Result<Matroid> {
    m.check_subset(z)?;
    let spec = MinorSpec::new(c, d)?;
    if !z.is_subset(spec.removed()) {
        return Err(Error::InvalidInput("restored set must lie inside C and D".into()));
    }
    m.minor(&MinorSpec::new(c.difference(z), d.difference(z))?)
}

/// Bipartite graph on `C ∪ D`: `cd` is an edge when restoring `{c, d}` is
/// 3-connected; a vertex is privileged when restoring it alone is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestorationGraph {
    contract: GroundSubset,
    delete: GroundSubset,
    adjacent: Vec<u32>,
    privileged: GroundSubset,
}

impl RestorationGraph {
    /// Build by direct 3-connectivity tests. Needs `M / C \ D` 3-connected.
    pub fn build(m: &Matroid, c: GroundSubset, d: GroundSubset) -> Result<RestorationGraph> {
        if !is_3_connected(&restore(m, c, d, m.empty_set())?) {
            return Err(Error::precondition("M / C \\ D is not 3-connected"));
        }
        let n = m.size();
        let vertices = c.union(d).to_vec();
        let solo = par::map(&vertices, |&v| {
            is_3_connected(&restore(m, c, d, GroundSubset::raw(1 << v, n)).expect("inside C and D"))
        });
        let pairs: Vec<(usize, usize)> = c.iter().flat_map(|x| d.iter().map(move |y| (x, y))).collect();
        let joined = par::map(&pairs, |&(x, y)| {
            is_3_connected(&restore(m, c, d, GroundSubset::raw(1 << x | 1 << y, n)).expect("inside C and D"))
        });
        let mut adjacent = vec![0u32; n];
        for (&(x, y), &edge) in pairs.iter().zip(&joined) {
            if edge {
                adjacent[x] |= 1 << y;
                adjacent[y] |= 1 << x;
            }
        }
        let privileged = vertices.iter().zip(&solo).filter(|p| *p.1).fold(m.empty_set(), |acc, p| acc.with(*p.0));
        Ok(RestorationGraph { contract: c, delete: d, adjacent, privileged })
    }

    pub fn contract(&self) -> GroundSubset {
        self.contract
    }

    pub fn delete(&self) -> GroundSubset {
        self.delete
    }

    pub fn vertices(&self) -> GroundSubset {
        self.contract.union(self.delete)
    }

    pub fn privileged(&self) -> GroundSubset {
        self.privileged
    }

    pub fn is_privileged(&self, v: usize) -> bool {
        self.privileged.contains(v)
    }

    pub fn neighbours(&self, v: usize) -> GroundSubset {
        GroundSubset::raw(self.adjacent[v], self.contract.ground_size())
    }

    /// Neighbours of any vertex of `s`.
    pub fn neighbourhood(&self, s: GroundSubset) -> GroundSubset {
        s.iter().fold(GroundSubset::empty(self.contract.ground_size()), |acc, v| acc.union(self.neighbours(v)))
    }

    /// Edges `(c, d)` sorted by `c` then `d`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.contract.iter().flat_map(|c| self.neighbours(c).iter().map(move |d| (c, d))).collect()
    }

    /// A non-privileged vertex of `s` with no neighbour in `s`.
    pub fn isolated_non_privileged(&self, s: GroundSubset) -> Option<usize> {
        s.iter().find(|&v| !self.is_privileged(v) && self.neighbours(v).is_disjoint(s))
    }

    /// The same graph seen from the dual, with the sides swapped.
    pub fn swapped(&self) -> RestorationGraph {
        RestorationGraph {
            contract: self.delete,
            delete: self.contract,
            adjacent: self.adjacent.clone(),
            privileged: self.privileged,
        }
    }
}

/// The restoration graph under the hypotheses that make it well behaved:
/// `M` 3-connected, `M / C \ D` 3-connected and `C ∪ D` independent in the
/// tangle matroid. Fails as a violated claim if some non-privileged vertex is
/// isolated.
pub fn restoration_graph(m: &Matroid, t: &Tangle, c: GroundSubset, d: GroundSubset) -> Result<RestorationGraph> {
    if !t.host().same_as(m) {
        return Err(Error::precondition("tangle belongs to a different matroid"));
    }
    if !is_3_connected(m) {
        return Err(Error::precondition("matroid is not 3-connected"));
    }
    if !t.matroid().is_independent(c.union(d)) {
        return Err(Error::precondition("C ∪ D is not independent in the tangle matroid"));
    }
    let g = RestorationGraph::build(m, c, d)?;
    if let Some(v) = g.isolated_non_privileged(g.vertices()) {
        return Err(Error::claim(format!("non-privileged vertex {v} is isolated in the restoration graph")));
    }
    Ok(g)
}

/// Restoring `s` is predicted 3-connected: no vertex of `G[s]` is isolated
/// and non-privileged.
pub fn restorable(g: &RestorationGraph, s: GroundSubset) -> bool {
    s.is_subset(g.vertices()) && g.isolated_non_privileged(s).is_none()
}

/// A subset `C'` of `C` with `|C'| >= k` and `M / C'` 3-connected, given
/// `|C| - |D| >= k`. A minimal set `C''` of contracted vertices covering the
/// non-privileged deleted vertices is restored together with `D`.
pub fn balance_extract(m: &Matroid, t: &Tangle, c: GroundSubset, d: GroundSubset, k: usize) -> Result<GroundSubset> {
    if c.len() < d.len() + k {
        return Err(Error::precondition(format!("|C| - |D| is below {k}")));
    }
    let g = restoration_graph(m, t, c, d)?;
    let hitting = minimal_hitting_set(&g);
    if hitting.len() > d.len() {
        return Err(Error::claim("hitting set is larger than D"));
    }
    let kept = c.difference(hitting);
    if !restorable(&g, hitting.union(d)) {
        return Err(Error::claim("restoring the hitting set and D leaves an isolated vertex"));
    }
    if !is_3_connected(&m.contract(kept)?) {
        return Err(Error::claim(format!("M / {:?} is not 3-connected", kept.to_vec())));
    }
    Ok(kept)
}

/// [`balance_extract`] on either side: for `Op::Delete` the roles of `C` and
/// `D` are exchanged through duality.
pub(crate) fn balance_extract_side(
    m: &Matroid,
    t: &Tangle,
    c: GroundSubset,
    d: GroundSubset,
    k: usize,
    op: Op,
) -> Result<GroundSubset> {
    match op {
        Op::Contract => balance_extract(m, t, c, d, k),
        Op::Delete => balance_extract(&m.dual(), &t.on_dual(), d, c, k),
    }
}

/// For each uncovered non-privileged `d` in order, take its smallest
/// contracted neighbour; then drop members not needed, largest first.
fn minimal_hitting_set(g: &RestorationGraph) -> GroundSubset {
    let targets: Vec<usize> = g.delete().iter().filter(|&v| !g.is_privileged(v)).collect();
    let covers = |s: GroundSubset| targets.iter().all(|&v| !g.neighbours(v).is_disjoint(s));
    let mut chosen = GroundSubset::empty(g.contract().ground_size());
    for &v in &targets {
        if g.neighbours(v).is_disjoint(chosen) {
            if let Some(c) = g.neighbours(v).intersection(g.contract()).first() {
                chosen = chosen.with(c);
            }
        }
    }
    let mut order = chosen.to_vec();
    order.reverse();
    for c in order {
        if covers(chosen.without(c)) {
            chosen = chosen.without(c);
        }
    }
    chosen
}

/// The split of `C ∪ D` used by the main search. `P` are privileged, `Q`
/// have neighbours only among the other side's privileged vertices, and the
/// rest is organized around a maximal matching `R` of what remains: `U1`,
/// `U2` are the neighbourhoods of the expanded sets `S2'`, `S1'`, and `T1`,
/// `T2` the matched vertices outside them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub p1: GroundSubset,
    pub p2: GroundSubset,
    pub q1: GroundSubset,
    pub q2: GroundSubset,
    pub t1: GroundSubset,
    pub t2: GroundSubset,
    pub u1: GroundSubset,
    pub u2: GroundSubset,
    /// Expanded subset of `R ∩ C` whose neighbourhood is `U2`.
    pub s1: GroundSubset,
    /// Expanded subset of `R ∩ D` whose neighbourhood is `U1`.
    pub s2: GroundSubset,
    /// Edges of the maximal matching, as `(c, d)`.
    pub matching: Vec<(usize, usize)>,
    /// `|C| - |D|`.
    pub balance: isize,
}

pub fn vertex_partition(g: &RestorationGraph) -> Result<VertexPartition> {
    let (c, d) = (g.contract(), g.delete());
    let p1 = c.intersection(g.privileged());
    let p2 = d.intersection(g.privileged());
    let q1 =
        c.difference(p1).iter().filter(|&v| g.neighbours(v).is_subset(p2)).fold(p1.difference(p1), |a, v| a.with(v));
    let q2 =
        d.difference(p2).iter().filter(|&v| g.neighbours(v).is_subset(p1)).fold(p2.difference(p2), |a, v| a.with(v));
    let c_rest = c.difference(p1.union(q1));
    let d_rest = d.difference(p2.union(q2));
    let inner = c_rest.union(d_rest);
    let near = |s: GroundSubset| g.neighbourhood(s).intersection(inner);

    let mut matching = Vec::new();
    let mut matched = c.difference(c);
    for (x, y) in g.edges() {
        if inner.contains(x) && inner.contains(y) && !matched.contains(x) && !matched.contains(y) {
            matching.push((x, y));
            matched = matched.with(x).with(y);
        }
    }
    let s1 = expand(near, matched.intersection(c_rest), d_rest.difference(matched))?;
    let s2 = expand(near, matched.intersection(d_rest), c_rest.difference(matched))?;
    let u2 = near(s1);
    let u1 = near(s2);
    let t2 = matched.intersection(d_rest).difference(u2);
    let t1 = matched.intersection(c_rest).difference(u1);
    let vp = VertexPartition {
        p1,
        p2,
        q1,
        q2,
        t1,
        t2,
        u1,
        u2,
        s1,
        s2,
        matching,
        balance: c.len() as isize - d.len() as isize,
    };
    for (side, parts) in [(c, [p1, q1, u1, t1]), (d, [p2, q2, u2, t2])] {
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let union = parts.iter().fold(c.difference(c), |a, p| a.union(*p));
        if union != side || total != side.len() {
            return Err(Error::claim(format!("vertex classes do not partition {:?}", side.to_vec())));
        }
    }
    Ok(vp)
}

/// A minimal subset of `pool` whose neighbourhood covers `target`, grown
/// greedily in label order by any vertex keeping `|N(S)| >= 2|S|`.
fn expand(
    near: impl Fn(GroundSubset) -> GroundSubset,
    pool: GroundSubset,
    target: GroundSubset,
) -> Result<GroundSubset> {
    let mut s = pool.difference(pool);
    for v in target {
        if near(s).contains(v) {
            continue;
        }
        let pick = near(GroundSubset::raw(1 << v, pool.ground_size()))
            .intersection(pool)
            .first()
            .ok_or_else(|| Error::claim(format!("unmatched vertex {v} has no matched neighbour")))?;
        s = s.with(pick);
    }
    let mut order = s.to_vec();
    order.reverse();
    for v in order {
        if target.is_subset(near(s.without(v))) {
            s = s.without(v);
        }
    }
    if near(s).len() < 2 * s.len() {
        return Err(Error::claim("covering set has too few neighbours"));
    }
    'grow: loop {
        for v in pool.difference(s) {
            let bigger = s.with(v);
            if near(bigger).len() >= 2 * bigger.len() {
                s = bigger;
                continue 'grow;
            }
        }
        return Ok(s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::enumerate_tangles;

    #[test]
    fn restore_examples() {
        let u = Matroid::uniform(3, 7).unwrap();
        let c = u.subset(&[0]).unwrap();
        let d = u.subset(&[1]).unwrap();
        assert_eq!(restore(&u, c, d, c.union(d)).unwrap(), u);
        assert_eq!(restore(&u, c, d, u.empty_set()).unwrap(), u.contract(c).unwrap().delete_element(0).unwrap());
        let r = restore(&u, c, d, c).unwrap();
        assert_eq!(r, u.delete(d).unwrap());
        assert!(restore(&u, c, d, u.subset(&[2]).unwrap()).is_err());
    }

    #[test]
    fn u37_single_edge() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let c = u.subset(&[0]).unwrap();
        let d = u.subset(&[1]).unwrap();
        let g = restoration_graph(&u, &t, c, d).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.privileged(), c.union(d));
        assert!(restorable(&g, u.empty_set()));
        assert!(restorable(&g, c));
        let empty = restoration_graph(&u, &t, u.empty_set(), u.empty_set()).unwrap();
        assert!(empty.edges().is_empty());
    }

    #[test]
    fn u48_balance() {
        let u = Matroid::uniform(4, 8).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let c = u.subset(&[0, 1]).unwrap();
        let kept = balance_extract(&u, &t, c, u.empty_set(), 2).unwrap();
        assert_eq!(kept, c);
        assert_eq!(u.contract(kept).unwrap(), Matroid::uniform(2, 6).unwrap().with_labels((2..8).collect()).unwrap());
    }

    #[test]
    fn partition_of_a_small_graph() {
        let u = Matroid::uniform(4, 8).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let c = u.subset(&[0]).unwrap();
        let d = u.subset(&[1]).unwrap();
        let g = restoration_graph(&u, &t, c, d).unwrap();
        let vp = vertex_partition(&g).unwrap();
        assert_eq!(vp.balance, 0);
        assert_eq!(vp.p1, c);
        assert_eq!(vp.p2, d);
    }
}
