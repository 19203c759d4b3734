//! The matroid of a tangle: `rho(X)` is the least `lambda(Y)` over members
//! `Y` containing `X`, or the order when no member contains `X`.

use super::Tangle;
use crate::connectivity::lambda_mask;
use crate::subset::{full_mask, k_subsets, GroundSubset};

#[derive(Clone, Debug)]
pub struct TangleMatroid {
    n: usize,
    order: usize,
    rho: Vec<u8>,
}

impl TangleMatroid {
    pub fn new(t: &Tangle) -> TangleMatroid {
        let n = t.host().size();
        let full = full_mask(n);
        let mut rho: Vec<u8> = (0..=full)
            .map(|x| if t.contains_mask(x) { lambda_mask(t.host(), x) as u8 } else { t.order() as u8 })
            .collect();
        // minimum over supersets
        for i in 0..n {
            for x in (0..=full).rev() {
                if x >> i & 1 == 0 {
                    let up = rho[(x | 1 << i) as usize];
                    if up < rho[x as usize] {
                        rho[x as usize] = up;
                    }
                }
            }
        }
        TangleMatroid { n, order: t.order(), rho }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn rank(&self, set: GroundSubset) -> usize {
        self.rank_mask(set.bits())
    }

    #[inline]
    pub fn rank_mask(&self, mask: u32) -> usize {
        self.rho[mask as usize] as usize
    }

    pub fn is_independent(&self, set: GroundSubset) -> bool {
        self.rank(set) == set.len()
    }

    pub fn closure(&self, set: GroundSubset) -> GroundSubset {
        let r = self.rank(set);
        set.complement().iter().filter(|&e| self.rank(set.with(e)) == r).fold(set, |acc, e| acc.with(e))
    }

    pub fn is_closed(&self, set: GroundSubset) -> bool {
        self.closure(set) == set
    }

    /// Closed rank-2 sets with at least three elements, found by closing
    /// independent pairs; sorted by mask.
    pub fn long_lines(&self) -> Vec<GroundSubset> {
        let mut lines: Vec<GroundSubset> = k_subsets(self.n, 2)
            .map(|m| GroundSubset::raw(m, self.n))
            .filter(|&p| self.rank(p) == 2)
            .map(|p| self.closure(p))
            .filter(|l| l.len() >= 3)
            .collect();
        lines.sort();
        lines.dedup();
        lines
    }

    /// First failure of the rank axioms, as a description, or `None`.
    pub fn rank_axiom_violation(&self) -> Option<String> {
        let full = full_mask(self.n);
        if self.rho[0] != 0 {
            return Some("rank of the empty set is not 0".into());
        }
        for x in 0..=full {
            let rx = self.rank_mask(x);
            if rx > x.count_ones() as usize {
                return Some(format!("rank of {x:#b} exceeds its size"));
            }
            for e in 0..self.n {
                if x >> e & 1 == 0 {
                    let ry = self.rank_mask(x | 1 << e);
                    if ry < rx || ry > rx + 1 {
                        return Some(format!("adding {e} to {x:#b} changes rank from {rx} to {ry}"));
                    }
                    // local submodularity suffices given unit increase
                    for f in e + 1..self.n {
                        if x >> f & 1 == 0 {
                            let a = self.rank_mask(x | 1 << f);
                            let b = self.rank_mask(x | 1 << e | 1 << f);
                            if ry + a < b + rx {
                                return Some(format!("submodularity fails at {x:#b} with {e}, {f}"));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use crate::matroid::Matroid;
    use crate::tangle::enumerate_tangles;

    #[test]
    fn u24_order_two_ranks() {
        let u = Matroid::uniform(2, 4).unwrap();
        let t = enumerate_tangles(&u, 2).unwrap().remove(0);
        let tm = t.matroid();
        assert_eq!(tm.rank(u.empty_set()), 0);
        assert_eq!(tm.rank(u.subset(&[0]).unwrap()), 1);
        assert_eq!(tm.rank(u.subset(&[0, 1]).unwrap()), 2);
        assert!(tm.rank_axiom_violation().is_none());
        // M(T) is U(2,4) itself: one four-point line
        assert_eq!(tm.long_lines(), vec![u.ground()]);
    }

    #[test]
    fn u37_lines() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let tm = t.matroid();
        assert!(tm.rank_axiom_violation().is_none());
        // rank 3 uniform: every pair is closed
        assert!(tm.long_lines().is_empty());
        assert!(tm.is_independent(u.subset(&[0, 1, 2]).unwrap()));
    }
}
