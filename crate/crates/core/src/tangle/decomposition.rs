//! Branch decompositions by dynamic programming over subsets.
//!
//! `g(S)` is the least possible maximum `lambda` over the sets displayed by a
//! rooted binary tree with leaf set `S` (including `S` itself). Joining two
//! rooted trees at their roots gives every cubic tree, so the width of `M` is
//! the minimum over splits `(A, E - A)` of `max(g(A), g(E - A))`. Width is
//! reported as a maximum of `lambda`, matching the largest tangle order.

use std::fmt;

use crate::connectivity::lambda_mask;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{full_mask, submasks};

use super::TANGLE_CAP;

#[derive(Clone, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf(usize),
    Join(Box<DecompositionTree>, Box<DecompositionTree>),
}

impl DecompositionTree {
    fn join(a: DecompositionTree, b: DecompositionTree) -> DecompositionTree {
        DecompositionTree::Join(Box::new(a), Box::new(b))
    }

    /// Leaves below this node, as a bitmask.
    pub fn leaf_mask(&self) -> u32 {
        match self {
            DecompositionTree::Leaf(e) => 1 << e,
            DecompositionTree::Join(a, b) => a.leaf_mask() | b.leaf_mask(),
        }
    }

    /// Leaf sets of every subtree, the root included.
    pub fn displayed(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<u32>) -> u32 {
        let mask = match self {
            DecompositionTree::Leaf(e) => 1 << e,
            DecompositionTree::Join(a, b) => a.collect(out) | b.collect(out),
        };
        out.push(mask);
        mask
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DecompositionTree::Leaf(e) => serde_json::json!(e),
            DecompositionTree::Join(a, b) => serde_json::json!([a.to_json(), b.to_json()]),
        }
    }
}

impl fmt::Debug for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionTree::Leaf(e) => write!(f, "{e}"),
            DecompositionTree::Join(a, b) => write!(f, "({a:?} {b:?})"),
        }
    }
}

/// Width of a given tree on `m`: the largest `lambda` of a displayed set.
/// The tree's leaves must be exactly the ground set, each once.
pub fn decomposition_width(m: &Matroid, tree: &DecompositionTree) -> Result<usize> {
    let displayed = tree.displayed();
    let leaves: Vec<u32> = displayed.iter().copied().filter(|x| x.count_ones() == 1).collect();
    let all = leaves.iter().fold(0u32, |acc, &x| acc | x);
    if leaves.len() != m.size() || all != full_mask(m.size()) {
        return Err(Error::InvalidInput("tree leaves must be the ground set, each once".into()));
    }
    if m.size() <= 1 {
        return Ok(0);
    }
    Ok(displayed.iter().map(|&x| lambda_mask(m, x)).max().unwrap_or(0))
}

/// Minimum width over all branch decompositions, with a witness tree.
pub fn branch_width_by_decomposition(m: &Matroid) -> Result<(usize, DecompositionTree)> {
    let n = m.size();
    if n > TANGLE_CAP {
        return Err(Error::GroundSetTooLarge { size: n, cap: TANGLE_CAP });
    }
    match n {
        0 => return Err(Error::InvalidInput("empty ground set has no decomposition".into())),
        1 => return Ok((0, DecompositionTree::Leaf(0))),
        _ => {}
    }
    let full = full_mask(n);
    let size = 1usize << n;
    let lam: Vec<u8> = crate::par::map_range(0..full + 1, |x| lambda_mask(m, x) as u8);
    let mut best = vec![u8::MAX; size];
    // split[s] = the part of the best split containing the lowest element
    let mut split = vec![0u32; size];
    let mut by_size: Vec<u32> = (1..=full).collect();
    by_size.sort_by_key(|x| x.count_ones());
    for s in by_size {
        if s.count_ones() == 1 {
            best[s as usize] = lam[s as usize];
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut value = u8::MAX;
        let mut choice = 0;
        // a ranges over proper subsets of s containing the lowest element
        for sub in submasks(rest) {
            let a = sub | low;
            if a == s {
                continue;
            }
            let v = best[a as usize].max(best[(s & !a) as usize]);
            if v < value {
                value = v;
                choice = a;
            }
        }
        best[s as usize] = value.max(lam[s as usize]);
        split[s as usize] = choice;
    }
    let a = split[full as usize];
    let width = best[full as usize] as usize;
    let tree = DecompositionTree::join(build(&split, a), build(&split, full & !a));
    Ok((width, tree))
}

fn build(split: &[u32], s: u32) -> DecompositionTree {
    if s.count_ones() == 1 {
        return DecompositionTree::Leaf(s.trailing_zeros() as usize);
    }
    let a = split[s as usize];
    DecompositionTree::join(build(split, a), build(split, s & !a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named;
    use crate::tangle::branch_width;

    #[test]
    fn small_cases() {
        let (w, t) = branch_width_by_decomposition(&Matroid::uniform(1, 1).unwrap()).unwrap();
        assert_eq!((w, t), (0, DecompositionTree::Leaf(0)));
        assert_eq!(branch_width_by_decomposition(&Matroid::uniform(1, 2).unwrap()).unwrap().0, 1);
        let u24 = Matroid::uniform(2, 4).unwrap();
        let (w, t) = branch_width_by_decomposition(&u24).unwrap();
        assert_eq!(w, 2);
        assert_eq!(decomposition_width(&u24, &t).unwrap(), 2);
    }

    #[test]
    fn agrees_with_tangles() {
        let list = [
            named::complete_graph(4).unwrap(),
            Matroid::uniform(3, 6).unwrap(),
            Matroid::uniform(4, 8).unwrap(),
            Matroid::uniform(4, 4).unwrap(),
            named::prism().unwrap(),
            named::wheel(4).unwrap(),
        ];
        for m in &list {
            let (w, t) = branch_width_by_decomposition(m).unwrap();
            assert_eq!(w, branch_width(m).unwrap(), "{m:?}");
            assert_eq!(decomposition_width(m, &t).unwrap(), w);
        }
    }

    #[test]
    fn bad_trees_rejected() {
        let u = Matroid::uniform(2, 3).unwrap();
        let t = DecompositionTree::join(DecompositionTree::Leaf(0), DecompositionTree::Leaf(1));
        assert!(decomposition_width(&u, &t).is_err());
    }
}
