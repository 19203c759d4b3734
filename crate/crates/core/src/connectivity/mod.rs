//! Connectivity function, separations and k-connectivity.

mod fan;
mod routing;

pub use fan::{fan_end_removal, find_fans, is_fan, is_wheel_or_whirl, Fan, FanStart};
pub use routing::{
    bixby_branch, guts_coguts_classify, guts_coguts_conditions, route_2sep_minor, route_2sep_one_contact,
    single_element_routes, BixbyOutcome, GutsClass, Route, SingleRoute,
};

use crate::matroid::Matroid;
use crate::par;
use crate::subset::{full_mask, GroundSubset};

/// `lambda(X) = r(X) + r(E - X) - r(M)`.
#[inline]
pub fn lambda(m: &Matroid, set: GroundSubset) -> usize {
    lambda_mask(m, set.bits())
}

#[inline]
pub fn lambda_mask(m: &Matroid, mask: u32) -> usize {
    let full = full_mask(m.size());
    m.rank_mask(mask) + m.rank_mask(full & !mask) - m.rank_mask(full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Separation {
    /// The side containing the smallest element.
    pub side: GroundSubset,
    pub order: usize,
    pub exact: bool,
}

impl Separation {
    pub fn other(&self) -> GroundSubset {
        self.side.complement()
    }
}

/// All `k`-separations (exact ones only when `exact`), one per partition,
/// sorted by the canonical side's mask.
pub fn k_separations(m: &Matroid, k: usize, exact: bool) -> Vec<Separation> {
    let n = m.size();
    if n < 2 * k || n == 0 {
        return Vec::new();
    }
    // masks containing element 0, excluding E itself
    let half = 1u32 << (n - 1);
    let found = par::map_range(0..half - 1, |x| {
        let mask = x << 1 | 1;
        let l = lambda_mask(m, mask);
        let sizes = mask.count_ones() as usize;
        let ok = l < k && (!exact || l + 1 == k) && sizes >= k && n - sizes >= k;
        ok.then(|| Separation { side: GroundSubset::raw(mask, n), order: k, exact: l + 1 == k })
    });
    let mut out: Vec<Separation> = found.into_iter().flatten().collect();
    out.sort_by_key(|s| s.side.bits());
    out
}

/// No `k'`-separation for any `k' < k`.
pub fn is_k_connected(m: &Matroid, k: usize) -> bool {
    let n = m.size();
    if n < 2 || k <= 1 {
        return true;
    }
    let half = 1u32 << (n - 1);
    !par::any_in_range(0..half - 1, |x| {
        let mask = x << 1 | 1;
        let small = (mask.count_ones() as usize).min(n - mask.count_ones() as usize);
        // a k'-separation with lambda < k' <= min(small, k - 1)
        lambda_mask(m, mask) < small.min(k - 1)
    })
}

pub fn is_connected(m: &Matroid) -> bool {
    is_k_connected(m, 2)
}

pub fn is_3_connected(m: &Matroid) -> bool {
    is_k_connected(m, 3)
}

/// The separation witnessing that `m` is not `k`-connected, if any, with the
/// smallest order first.
pub fn smallest_separation(m: &Matroid, k: usize) -> Option<Separation> {
    (1..k).find_map(|j| k_separations(m, j, false).into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named;

    #[test]
    fn lambda_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(lambda(&u24, u24.empty_set()), 0);
        assert_eq!(lambda(&u24, u24.subset(&[0, 1]).unwrap()), 2);
        let u37 = Matroid::uniform(3, 7).unwrap();
        assert_eq!(lambda(&u37, u37.subset(&[0, 1]).unwrap()), 2);
    }

    #[test]
    fn separations_need_large_sides() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(k_separations(&u24, 2, false).is_empty());
        // sides of size 2 are too small for a 3-separation
        assert!(k_separations(&u24, 3, false).is_empty());
        assert!(k_separations(&Matroid::uniform(3, 6).unwrap(), 1, false).is_empty());
        let two = Matroid::graphic(4, vec![(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        let seps = k_separations(&two, 1, false);
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].side.to_vec(), vec![0, 1]);
        assert!(seps[0].exact);
    }

    #[test]
    fn three_connectivity_examples() {
        assert!(is_3_connected(&Matroid::uniform(2, 4).unwrap()));
        assert!(is_3_connected(&Matroid::uniform(1, 2).unwrap()));
        assert!(is_3_connected(&named::complete_graph(4).unwrap()));
        let bowtie = Matroid::graphic(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!is_3_connected(&bowtie));
        assert!(!is_connected(&bowtie));
        assert!(!is_3_connected(&named::fan_graph(4).unwrap().delete_element(0).unwrap()));
    }
}
