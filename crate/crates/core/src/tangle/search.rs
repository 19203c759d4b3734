//! Backtracking search for tangles of a given order.
//!
//! Complementary pairs `{X, E - X}` with `lambda < θ` are decided in order of
//! increasing `lambda`, then lexicographically. Each decision is propagated:
//! subsets of a member with small `lambda` join, unions of two members with
//! small `lambda` join, and co-singletons are never members. A member that
//! would make three members cover `E` is a conflict.

use super::{validate_tangle, Tangle};
use crate::connectivity::lambda_mask;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{full_mask, submasks, GroundSubset};

/// Largest ground set accepted by the tangle search.
pub const TANGLE_CAP: usize = 12;

const UNKNOWN: i8 = 0;
const IN: i8 = 1;
const OUT: i8 = -1;

struct Search {
    n: usize,
    full: u32,
    order: usize,
    lam: Vec<u8>,
    state: Vec<i8>,
    /// down[s] = number of members containing s
    down: Vec<u32>,
    members: Vec<u32>,
    trail: Vec<u32>,
    /// canonical sides of the pairs to decide, in decision order
    pairs: Vec<u32>,
}

impl Search {
    fn new(m: &Matroid, order: usize) -> Search {
        let n = m.size();
        let full = full_mask(n);
        let lam: Vec<u8> = (0..=full).map(|x| lambda_mask(m, x) as u8).collect();
        let mut pairs: Vec<u32> = (0..=full).filter(|&x| (lam[x as usize] as usize) < order && x < full & !x).collect();
        pairs.sort_by(|&a, &b| {
            lam[a as usize].cmp(&lam[b as usize]).then_with(|| GroundSubset::raw(a, n).lex_cmp(GroundSubset::raw(b, n)))
        });
        Search {
            n,
            full,
            order,
            lam,
            state: vec![UNKNOWN; 1 << n],
            down: vec![0; 1 << n],
            members: Vec::new(),
            trail: Vec::new(),
            pairs,
        }
    }

    #[inline]
    fn small(&self, x: u32) -> bool {
        (self.lam[x as usize] as usize) < self.order
    }

    /// Add `x` and everything it forces. Returns false on a conflict; the
    /// caller undoes to its trail mark either way.
    fn add(&mut self, x: u32) -> bool {
        let mut work = vec![x];
        while let Some(x) = work.pop() {
            match self.state[x as usize] {
                IN => continue,
                OUT => return false,
                _ => {}
            }
            let co = self.full & !x;
            if self.state[co as usize] == IN || (co.count_ones() == 1 && self.n > 0) {
                return false;
            }
            for s in submasks(x) {
                self.down[s as usize] += 1;
            }
            self.state[x as usize] = IN;
            self.state[co as usize] = OUT;
            self.members.push(x);
            self.trail.push(x);
            // no two members (x counted) leave a remainder inside a third
            if self.members.iter().any(|&y| self.down[(self.full & !(x | y)) as usize] > 0) {
                return false;
            }
            for s in submasks(x) {
                if self.state[s as usize] == UNKNOWN && self.small(s) {
                    work.push(s);
                }
            }
            for i in 0..self.members.len() {
                let u = x | self.members[i];
                if self.state[u as usize] != IN && self.small(u) {
                    work.push(u);
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail entry");
            self.members.pop();
            for s in submasks(x) {
                self.down[s as usize] -= 1;
            }
            self.state[x as usize] = UNKNOWN;
            self.state[(self.full & !x) as usize] = UNKNOWN;
        }
    }

    /// Start state: the forced singletons. False when already contradictory.
    fn seed(&mut self) -> bool {
        for e in 0..self.n {
            // E - e is never a member, so {e} is one whenever it is small
            if self.small(1 << e) && !self.add(1 << e) {
                return false;
            }
        }
        if self.order > 0 && self.small(0) {
            return self.add(0);
        }
        true
    }

    fn run(&mut self, next: usize, limit: usize, out: &mut Vec<Vec<u32>>) {
        if out.len() >= limit {
            return;
        }
        let Some(pos) = (next..self.pairs.len()).find(|&i| self.state[self.pairs[i] as usize] == UNKNOWN) else {
            let mut members = self.members.clone();
            members.sort_unstable();
            out.push(members);
            return;
        };
        let x = self.pairs[pos];
        for side in [x, self.full & !x] {
            let mark = self.trail.len();
            if self.add(side) {
                self.run(pos + 1, limit, out);
            }
            self.undo(mark);
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn search(m: &Matroid, order: usize, limit: usize) -> Result<Vec<Tangle>> {
    let n = m.size();
    if n > TANGLE_CAP {
        return Err(Error::GroundSetTooLarge { size: n, cap: TANGLE_CAP });
    }
    if order == 0 {
        return Ok(vec![Tangle::empty(m)]);
    }
    let mut s = Search::new(m, order);
    let mut found = Vec::new();
    if s.seed() {
        s.run(0, limit, &mut found);
    }
    found.sort();
    found
        .into_iter()
        .map(|members| {
            let members: Vec<GroundSubset> = members.into_iter().map(|x| GroundSubset::raw(x, n)).collect();
            let check = validate_tangle(m, &members, order)?;
            if !check.is_valid() {
                return Err(Error::claim(format!("search produced an invalid tangle: {check:?}")));
            }
            Ok(Tangle::trusted(m, order, members))
        })
        .collect()
}

/// All tangles of order exactly `order`, sorted by member masks.
pub fn enumerate_tangles(m: &Matroid, order: usize) -> Result<Vec<Tangle>> {
    search(m, order, usize::MAX)
}

/// Some tangle of the given order, if one exists.
pub fn has_tangle(m: &Matroid, order: usize) -> Result<Option<Tangle>> {
    Ok(search(m, order, 1)?.into_iter().next())
}

/// The largest order of a tangle.
pub fn branch_width(m: &Matroid) -> Result<usize> {
    let mut order = 0;
    while has_tangle(m, order + 1)?.is_some() {
        order += 1;
    }
    Ok(order)
}
