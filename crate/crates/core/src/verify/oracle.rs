//! Brute-force recomputations that share no code with the library routines
//! they are compared against, beyond the rank oracle itself.

use std::collections::HashSet;

use crate::matroid::{Matroid, Op};
use crate::subset::{full_mask, submasks, GroundSubset};
use crate::tangle::Tangle;

fn lam(m: &Matroid, x: u32) -> usize {
    let full = full_mask(m.size());
    m.rank_mask(x) + m.rank_mask(full & !x) - m.rank_mask(full)
}

/// 3-connectivity straight from the definition: no partition with
/// `lambda < j` and both sides of size at least `j`, for `j` in 1, 2.
pub fn three_connected(m: &Matroid) -> bool {
    let n = m.size();
    let full = full_mask(n);
    (0..=full).all(|x| {
        let small = (x.count_ones() as usize).min(n - x.count_ones() as usize);
        let l = lam(m, x);
        !(small >= 1 && l < 1) && !(small >= 2 && l < 2)
    })
}

/// Rank-2 three-element set whose pairs all have rank 2.
pub fn triangle(m: &Matroid, x: u32) -> bool {
    x.count_ones() == 3
        && m.rank_mask(x) == 2
        && (0..m.size()).filter(|&e| x >> e & 1 == 1).all(|e| m.rank_mask(x & !(1 << e)) == 2)
}

pub fn triad(m: &Matroid, x: u32) -> bool {
    x.count_ones() == 3
        && m.corank_mask(x) == 2
        && (0..m.size()).filter(|&e| x >> e & 1 == 1).all(|e| m.corank_mask(x & !(1 << e)) == 2)
}

/// Every fan of `m` as an ordered sequence, all orderings included.
pub fn all_fans(m: &Matroid) -> Vec<Vec<usize>> {
    let n = m.size();
    let mut tri = HashSet::new();
    let mut tad = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let x = 1u32 << a | 1 << b | 1 << c;
                if triangle(m, x) {
                    tri.insert(x);
                }
                if triad(m, x) {
                    tad.insert(x);
                }
            }
        }
    }
    let kind = |a: usize, b: usize, c: usize| {
        let x = 1u32 << a | 1 << b | 1 << c;
        (tri.contains(&x), tad.contains(&x))
    };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != b && b != c && a != c {
                    let k = kind(a, b, c);
                    if k.0 || k.1 {
                        stack.push(vec![a, b, c]);
                    }
                }
            }
        }
    }
    while let Some(seq) = stack.pop() {
        let len = seq.len();
        let prev = kind(seq[len - 3], seq[len - 2], seq[len - 1]);
        for x in 0..n {
            if seq.contains(&x) {
                continue;
            }
            let next = kind(seq[len - 2], seq[len - 1], x);
            // a triangle must be followed by a triad and vice versa
            if (!prev.0 || next.1) && (!prev.1 || next.0) && (next.0 || next.1) {
                let mut longer = seq.clone();
                longer.push(x);
                stack.push(longer);
            }
        }
        out.push(seq);
    }
    out.sort();
    out
}

pub fn mask_of(seq: &[usize]) -> u32 {
    seq.iter().fold(0, |a, &e| a | 1 << e)
}

/// Element sets of fans that no other fan strictly contains.
pub fn maximal_fan_sets(fans: &[Vec<usize>]) -> Vec<u32> {
    let sets: HashSet<u32> = fans.iter().map(|f| mask_of(f)).collect();
    let mut out: Vec<u32> = sets.iter().copied().filter(|&s| !sets.iter().any(|&o| o != s && o & s == s)).collect();
    out.sort_unstable();
    out
}

/// First failed tangle axiom of `family` at `order`, by direct search:
/// members have `lambda < order`, each partition with `lambda < order` has
/// exactly one side in the family, no three members cover `E`, and no
/// member is `E - e`.
pub fn tangle_axiom_failure(m: &Matroid, family: &[u32], order: usize) -> Option<String> {
    let n = m.size();
    let full = full_mask(n);
    let mut member = vec![false; full as usize + 1];
    for &x in family {
        member[x as usize] = true;
        if lam(m, x) >= order {
            return Some(format!("member {x:#b} has lambda >= {order}"));
        }
    }
    for x in 0..=full {
        if lam(m, x) < order && member[x as usize] == member[(full & !x) as usize] {
            return Some(format!("partition at {x:#b} has {} sides chosen", if member[x as usize] { 2 } else { 0 }));
        }
    }
    for (i, &x) in family.iter().enumerate() {
        for &y in &family[i..] {
            let rest = full & !(x | y);
            if let Some(z) = family.iter().find(|&&z| z & rest == rest) {
                return Some(format!("{x:#b}, {y:#b}, {z:#b} cover E"));
            }
        }
    }
    (0..n).find(|&e| member[(full & !(1 << e)) as usize]).map(|e| format!("E - {e} is a member"))
}

/// `rho(X) = min { lambda(Y) : X ⊆ Y ∈ T }`, or the order when no member
/// contains `X`; one entry per subset.
pub fn tangle_rank_table(t: &Tangle) -> Vec<usize> {
    let m = t.host();
    let full = full_mask(m.size());
    let mut rho = vec![t.order(); full as usize + 1];
    for y in t.members() {
        let l = lam(m, y.bits());
        for x in submasks(y.bits()) {
            if l < rho[x as usize] {
                rho[x as usize] = l;
            }
        }
    }
    rho
}

/// First failure of the rank axioms for a table indexed by subset, checked
/// over every pair of subsets.
pub fn rank_axiom_failure(n: usize, r: impl Fn(u32) -> usize) -> Option<String> {
    let full = full_mask(n);
    if r(0) != 0 {
        return Some("r(empty) != 0".into());
    }
    for x in 0..=full {
        let rx = r(x);
        if rx > x.count_ones() as usize {
            return Some(format!("r({x:#b}) = {rx} exceeds its size"));
        }
        for e in 0..n {
            if x >> e & 1 == 0 && r(x | 1 << e) < rx {
                return Some(format!("r not monotone at {x:#b} + {e}"));
            }
        }
        for y in x + 1..=full {
            if rx + r(y) < r(x | y) + r(x & y) {
                return Some(format!("submodularity fails for {x:#b}, {y:#b}"));
            }
        }
    }
    None
}

/// The family inherited by removing `e`, straight from the definition:
/// `{ X - e : X ∈ T, lambda_{M'}(X - e) < θ - 1 }`, as masks of `M'`.
pub fn inherited_family(t: &Tangle, e: usize, op: Op) -> (Matroid, Vec<GroundSubset>) {
    let m = t.host();
    let child = m.remove_element(op, e).expect("element in range");
    let order = t.order().saturating_sub(1);
    let mut out: Vec<GroundSubset> = Vec::new();
    if t.order() >= 1 {
        for x in t.members() {
            let y = child.project(m, x.without(e)).expect("same host");
            if lam(&child, y.bits()) < order {
                out.push(y);
            }
        }
    }
    out.sort();
    out.dedup();
    (child, out)
}

/// Whether `x` and `y` sit at internal positions of a common fan of length
/// at least four.
pub fn internal_in_long_fan(fans: &[Vec<usize>], x: usize, y: usize) -> bool {
    fans.iter().any(|f| {
        f.len() >= 4 && {
            let inner = &f[1..f.len() - 1];
            inner.contains(&x) && inner.contains(&y)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named;

    #[test]
    fn direct_three_connectivity() {
        assert!(three_connected(&Matroid::uniform(2, 4).unwrap()));
        assert!(!three_connected(&Matroid::uniform(1, 4).unwrap()));
        assert!(three_connected(&named::complete_graph(4).unwrap()));
    }

    #[test]
    fn wheel_fans() {
        let w = named::wheel(4).unwrap();
        let fans = all_fans(&w);
        // the whole ground set of a wheel is a fan
        assert!(fans.iter().any(|f| f.len() == 8));
        assert!(fans.iter().all(|f| crate::connectivity::is_fan(&w, f)));
    }

    #[test]
    fn u24_tangle_ranks() {
        let u = Matroid::uniform(2, 4).unwrap();
        let t = crate::tangle::enumerate_tangles(&u, 2).unwrap().remove(0);
        let rho = tangle_rank_table(&t);
        assert_eq!((rho[0], rho[1], rho[3], rho[15]), (0, 1, 2, 2));
        assert!(rank_axiom_failure(4, |x| rho[x as usize]).is_none());
    }
}
