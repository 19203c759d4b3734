//! Brute-force isomorphism by backtracking over element bijections.

use super::Matroid;
use crate::subset::k_subsets;

/// Largest ground set the permutation search accepts.
pub const ISO_CAP: usize = 12;

/// Per-element invariant: how many subsets of each (size, rank) contain it.
fn signatures(m: &Matroid) -> Vec<Vec<u32>> {
    let n = m.size();
    let width = (n + 1) * (n + 1);
    let mut sig = vec![vec![0u32; width]; n];
    for mask in 1..1u32 << n {
        let slot = mask.count_ones() as usize * (n + 1) + m.rank_mask(mask);
        for e in crate::subset::Elements(mask) {
            sig[e][slot] += 1;
        }
    }
    sig
}

/// A bijection `phi` of positions with `r_a(X) = r_b(phi(X))` for all `X`,
/// or `None`. Ground sets above [`ISO_CAP`] are rejected with `None`.
pub fn find_isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() || n > ISO_CAP || a.full_rank() != b.full_rank() {
        return None;
    }
    // cheap profile check: number of independent sets per size
    for k in 0..=n {
        let count = |m: &Matroid| k_subsets(n, k).filter(|&s| m.rank_mask(s) == k).count();
        if count(a) != count(b) {
            return None;
        }
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // images[s] = phi(s) for subsets s of the assigned prefix
    let mut images = vec![0u32; 1 << n];
    if extend(a, b, &sa, &sb, 0, &mut phi, &mut used, &mut images) {
        Some(phi)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Matroid,
    b: &Matroid,
    sa: &[Vec<u32>],
    sb: &[Vec<u32>],
    i: usize,
    phi: &mut [usize],
    used: &mut [bool],
    images: &mut [u32],
) -> bool {
    let n = a.size();
    if i == n {
        return true;
    }
    for j in 0..n {
        if used[j] || sa[i] != sb[j] {
            continue;
        }
        let lo = 1usize << i;
        let ok = (0..lo).all(|s| {
            let img = images[s] | 1 << j;
            a.rank_mask((s | lo) as u32) == b.rank_mask(img)
        });
        if !ok {
            continue;
        }
        for s in 0..lo {
            images[s | lo] = images[s] | 1 << j;
        }
        phi[i] = j;
        used[j] = true;
        if extend(a, b, sa, sb, i + 1, phi, used, images) {
            return true;
        }
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn k4_is_wheel_three() {
        let k4 = named::complete_graph(4).unwrap();
        let w3 = named::wheel(3).unwrap();
        let phi = find_isomorphism(&k4, &w3).unwrap();
        for x in 0..64u32 {
            let img = crate::subset::Elements(x).fold(0u32, |acc, e| acc | 1 << phi[e]);
            assert_eq!(k4.rank_mask(x), w3.rank_mask(img));
        }
    }

    #[test]
    fn wheel_and_whirl_differ() {
        let w3 = named::wheel(3).unwrap();
        let w3x = named::whirl(3).unwrap();
        assert!(find_isomorphism(&w3, &w3x).is_none());
        assert!(find_isomorphism(&w3x, &w3x).is_some());
    }
}
