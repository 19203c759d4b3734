//! One element at a time: removal on a long line of the tangle matroid, and
//! greedy growth of a mixed delete/contract set.

use super::{check_minor_free, good_minor, keeps_minor};
use crate::connectivity::{bixby_branch, find_fans, is_3_connected};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MinorSpec, Op};
use crate::subset::GroundSubset;
use crate::tangle::{inherit_tangle, Tangle};

/// Which argument produced a line removal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineStep {
    /// An end of a fan of length at least 4 inside the line.
    FanEnd,
    /// An element removable both ways, resolved by the Bixby split.
    Bixby,
    /// An element of a triangle (or triad) through such an element.
    Triangle,
    /// An element whose contraction is simple (or deletion cosimple).
    Simple,
    /// None of the above fired; found by scanning the line.
    Scan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineRemoval {
    pub element: usize,
    pub op: Op,
    pub step: LineStep,
}

/// An element `e` of `X - f`, with `X` a long line of the tangle matroid,
/// such that `M \ e` or `M / e` is 3-connected with `N` as a minor.
pub fn remove_on_line(m: &Matroid, t: &Tangle, n: &Matroid, line: GroundSubset, f: usize) -> Result<LineRemoval> {
    if !t.host().same_as(m) {
        return Err(Error::precondition("tangle belongs to a different matroid"));
    }
    if t.order() < 3 {
        return Err(Error::precondition("tangle order is below 3"));
    }
    if !is_3_connected(m) {
        return Err(Error::precondition("matroid is not 3-connected"));
    }
    check_minor_free(n)?;
    let tm = t.matroid();
    if line.len() < 3 || tm.rank(line) != 2 || !tm.is_closed(line) {
        return Err(Error::precondition("not a long line of the tangle matroid"));
    }
    if !line.contains(f) {
        return Err(Error::precondition(format!("element {f} is not on the line")));
    }
    let en = m.subset_from_labels(n.labels())?;
    let open = line.without(f);
    if !open.is_disjoint(en) {
        return Err(Error::precondition("the line meets N outside f"));
    }
    if !keeps_minor(m, n)? {
        return Err(Error::precondition("N is not a minor of M"));
    }
    let works =
        |e: usize, op: Op| -> Result<bool> { Ok(open.contains(e) && good_minor(&m.remove_element(op, e)?, n)?) };
    let found = |e: usize, op: Op, step: LineStep| LineRemoval { element: e, op, step };

    // a fan of length at least 4 inside the line: one of its ends goes
    for fan in find_fans(m) {
        let set = fan.set(m.size());
        if fan.len() < 4 || !set.is_subset(line) || set.intersection(en).len() > 1 {
            continue;
        }
        let (a, b) = fan.ends();
        for x in [a, b] {
            for op in [Op::Delete, Op::Contract] {
                if works(x, op)? {
                    return Ok(found(x, op, LineStep::FanEnd));
                }
            }
        }
    }

    // an element removable both ways
    let mut both = Vec::new();
    for e in open {
        if keeps_minor(&m.delete_element(e)?, n)? && keeps_minor(&m.contract_element(e)?, n)? {
            both.push(e);
        }
    }
    for &e in &both {
        let split = bixby_branch(m, e)?;
        for (active, op) in [(split.contraction, Op::Contract), (split.deletion, Op::Delete)] {
            if !active {
                continue;
            }
            // work in M or M*, so that op is a contraction there
            let dual = op == Op::Delete;
            let view = if dual { m.dual() } else { m.clone() };
            let child = view.contract_element(e)?;
            if child.simplify().0.size() == child.size() {
                if works(e, op)? {
                    return Ok(found(e, op, LineStep::Bixby));
                }
                continue;
            }
            for tri in view.triangles().into_iter().filter(|s| s.contains(e)) {
                let others: Vec<usize> = tri.without(e).iter().collect();
                let g = if others[0] != f { others[0] } else { others[1] };
                if works(e, op.dual())? {
                    return Ok(found(e, op.dual(), LineStep::Triangle));
                }
                if works(g, op.dual())? {
                    return Ok(found(g, op.dual(), LineStep::Triangle));
                }
            }
        }
    }

    // contraction simple (or deletion cosimple) and keeping N
    for e in open {
        for op in [Op::Contract, Op::Delete] {
            let dual = op == Op::Delete;
            let view = if dual { m.dual() } else { m.clone() };
            let child = view.contract_element(e)?;
            if !keeps_minor(&m.remove_element(op, e)?, n)? {
                continue;
            }
            if child.simplify().0.size() == child.size() {
                if works(e, op)? {
                    return Ok(found(e, op, LineStep::Simple));
                }
            } else {
                for tri in view.triangles().into_iter().filter(|s| s.contains(e)) {
                    let g = tri.without(e).without(f).first().expect("triangle has two other elements");
                    if works(g, op.dual())? {
                        return Ok(found(g, op.dual(), LineStep::Simple));
                    }
                }
            }
        }
    }

    for e in open {
        for op in [Op::Delete, Op::Contract] {
            if works(e, op)? {
                return Ok(found(e, op, LineStep::Scan));
            }
        }
    }
    Err(Error::claim(format!("no element of {:?} can be removed", open.to_vec())))
}

/// Result of [`grow_removal_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Growth {
    /// `(C, D)` in the positions of `M`.
    pub spec: MinorSpec,
    /// Elements in the order they were added.
    pub steps: Vec<(usize, Op)>,
    /// Whether the order bound `θ >= max(6, 2s + t + 1)` held.
    pub hypothesis: bool,
}

impl Growth {
    pub fn size(&self) -> usize {
        self.steps.len()
    }
}

/// Grow disjoint `C, D` avoiding `E(N)`, one element at a time, keeping
/// `M / C \ D` 3-connected with `N` as a minor and `E(N) ∪ C ∪ D` of full
/// rank in the tangle matroid. Stops at `s` elements or when no step is
/// available; running out early is an error only when the order bound held.
pub fn grow_removal_set(m: &Matroid, t: &Tangle, n: &Matroid, s: usize) -> Result<Growth> {
    if !t.host().same_as(m) {
        return Err(Error::precondition("tangle belongs to a different matroid"));
    }
    if !is_3_connected(m) {
        return Err(Error::precondition("matroid is not 3-connected"));
    }
    check_minor_free(n)?;
    if !keeps_minor(m, n)? {
        return Err(Error::precondition("N is not a minor of M"));
    }
    let tm = t.matroid();
    let en = m.subset_from_labels(n.labels())?;
    let base = tm.rank(en);
    let hypothesis = t.order() >= 6.max(2 * s + base + 1);
    let mut spec = MinorSpec::identity(m.size());
    let mut steps = Vec::new();
    let mut cur = m.clone();
    let mut cur_t = t.clone();
    while steps.len() < s {
        let order = cur_t.order();
        let h = tm.closure(en.union(spec.removed()));
        let cur_tm = cur_t.matroid();
        let h_cur = cur_tm.closure(cur.project(m, h)?);
        if order < 3 || order <= cur_tm.rank(h_cur) {
            break;
        }
        let Some((e, op)) = one_step(&cur, &cur_t, n, h_cur)? else {
            break;
        };
        let label = cur.labels()[e];
        let host_e = m.position_of(label).expect("minor labels come from M");
        let grown = en.union(spec.removed()).with(host_e);
        if tm.rank(grown) != base + steps.len() + 1 {
            return Err(Error::claim(format!("element {host_e} does not raise the tangle rank")));
        }
        spec = match op {
            Op::Contract => MinorSpec::new(spec.contract.with(host_e), spec.delete)?,
            Op::Delete => MinorSpec::new(spec.contract, spec.delete.with(host_e))?,
        };
        steps.push((host_e, op));
        cur_t = inherit_tangle(&cur_t, &[(e, op)])?;
        cur = cur_t.host().clone();
    }
    if steps.len() < s && hypothesis {
        return Err(Error::claim(format!("growth stopped at {} of {s} under the order bound", steps.len())));
    }
    if !good_minor(&m.minor(&spec)?, n)? {
        return Err(Error::claim("grown minor lost 3-connectivity or N"));
    }
    Ok(Growth { spec, steps, hypothesis })
}

/// One element outside the closed set `h` whose deletion or contraction is
/// 3-connected and keeps `N`: first an element on no long line, then one
/// found on a long line.
fn one_step(m: &Matroid, t: &Tangle, n: &Matroid, h: GroundSubset) -> Result<Option<(usize, Op)>> {
    let lines = t.matroid().long_lines();
    let outside = h.complement();
    for e in outside {
        if lines.iter().any(|l| l.contains(e)) {
            continue;
        }
        for op in [Op::Delete, Op::Contract] {
            if good_minor(&m.remove_element(op, e)?, n)? {
                return Ok(Some((e, op)));
            }
        }
    }
    for e in outside {
        let Some(&line) = lines.iter().find(|l| l.contains(e)) else {
            continue;
        };
        if line.intersection(h).len() > 1 {
            return Err(Error::claim(format!("long line {:?} meets the closed set twice", line.to_vec())));
        }
        let f = line.intersection(h).first().unwrap_or_else(|| line.without(e).first().expect("long line"));
        let r = remove_on_line(m, t, n, line, f)?;
        return Ok(Some((r.element, r.op)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::enumerate_tangles;

    #[test]
    fn growth_on_u37() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let n = Matroid::uniform(1, 2).unwrap();
        let g = grow_removal_set(&u, &t, &n, 0).unwrap();
        assert_eq!(g.size(), 0);
        let g = grow_removal_set(&u, &t, &n, 1).unwrap();
        assert_eq!(g.size(), 1);
        assert!(!g.hypothesis);
        let tm = t.matroid();
        assert_eq!(tm.rank(g.spec.removed().union(u.subset(&[0, 1]).unwrap())), 3);
    }

    #[test]
    fn line_removal_in_u36_rank_two_tangle_is_refused() {
        let u = Matroid::uniform(3, 6).unwrap();
        let t = enumerate_tangles(&u, 2).unwrap().remove(0);
        let n = Matroid::uniform(1, 2).unwrap();
        assert!(remove_on_line(&u, &t, &n, u.ground(), 0).is_err());
    }
}
