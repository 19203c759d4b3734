//! Removing elements while keeping 3-connectivity and a fixed minor.
//!
//! The minor `N` is always an exact minor: its labels are a subset of the
//! host's and its rank function must be reproduced on them. Sets returned by
//! this module are positions in the matroid they were computed for.

mod pipeline;
mod restoration;
mod single;

pub use pipeline::{
    find_removal_set, induced_matching_boost, maximum_induced_matching, simultaneous_fan_removal, RemovalOutcome, Stage,
};
pub use restoration::{
    balance_extract, restorable, restoration_graph, restore, vertex_partition, RestorationGraph, VertexPartition,
};
pub use single::{grow_removal_set, remove_on_line, Growth, LineRemoval, LineStep};

use crate::connectivity::is_3_connected;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MinorSpec, Op};
use crate::par;
use crate::subset::{deposit, k_subsets, GroundSubset};
use crate::tangle::{Tangle, TangleMatroid};

/// Whether `n` is an exact minor of `m`; false when a label of `n` is missing.
pub fn keeps_minor(m: &Matroid, n: &Matroid) -> Result<bool> {
    m.keeps(n)
}

/// 3-connected with `n` as an exact minor.
pub fn good_minor(m: &Matroid, n: &Matroid) -> Result<bool> {
    Ok(is_3_connected(m) && keeps_minor(m, n)?)
}

fn check_minor_free(n: &Matroid) -> Result<()> {
    if !n.loops().is_empty() || !n.coloops().is_empty() {
        return Err(Error::precondition("N has loops or coloops"));
    }
    Ok(())
}

/// Everything the main search needs, checked once.
#[derive(Clone, Debug)]
pub struct RemovalContext {
    pub matroid: Matroid,
    pub tangle: Tangle,
    pub minor: Matroid,
    pub spec: MinorSpec,
    pub k: usize,
    tangle_matroid: TangleMatroid,
}

impl RemovalContext {
    pub fn new(m: &Matroid, tangle: &Tangle, minor: &Matroid, k: usize) -> Result<RemovalContext> {
        if tangle.host().labels() != m.labels() || !tangle.host().same_as(m) {
            return Err(Error::precondition("tangle belongs to a different matroid"));
        }
        if !is_3_connected(m) {
            return Err(Error::precondition("matroid is not 3-connected"));
        }
        check_minor_free(minor)?;
        let spec = m.has_minor(minor)?.ok_or_else(|| Error::precondition("N is not a minor of M"))?;
        Ok(RemovalContext {
            matroid: m.clone(),
            tangle: tangle.clone(),
            minor: minor.clone(),
            spec,
            k,
            tangle_matroid: tangle.matroid(),
        })
    }

    /// `E(N)` as positions of `M`.
    pub fn minor_set(&self) -> GroundSubset {
        self.spec.retained()
    }

    pub fn tangle_matroid(&self) -> &TangleMatroid {
        &self.tangle_matroid
    }

    /// `t`: the tangle rank of `E(N)`.
    pub fn minor_rank(&self) -> usize {
        self.tangle_matroid.rank(self.minor_set())
    }

    /// Independent check of a claimed answer: size `k`, tangle rank grows by
    /// `k`, and the removal is 3-connected with `N` as a minor.
    pub fn verify(&self, set: GroundSubset, op: Op) -> Result<bool> {
        let en = self.minor_set();
        Ok(set.len() == self.k
            && set.is_disjoint(en)
            && self.tangle_matroid.rank(en.union(set)) == self.minor_rank() + self.k
            && good_minor(&self.matroid.remove_set(op, set)?, &self.minor)?)
    }
}

/// Exhaustive search over `k`-subsets `X` avoiding `E(N)`, in lexicographic
/// order, deletion before contraction, for `M \ X` or `M / X` 3-connected
/// with `N` as a minor.
pub fn brute_force_oracle(m: &Matroid, n: &Matroid, k: usize) -> Result<Option<(GroundSubset, Op)>> {
    let size = m.size();
    let rest = m.subset_from_labels(n.labels())?.complement();
    if k > rest.len() {
        return Ok(None);
    }
    let mut candidates: Vec<(u32, Op)> = k_subsets(rest.len(), k)
        .flat_map(|x| {
            let set = deposit(x, rest.bits());
            [(set, Op::Delete), (set, Op::Contract)]
        })
        .collect();
    candidates.sort_by(|a, b| GroundSubset::raw(a.0, size).lex_cmp(GroundSubset::raw(b.0, size)).then(a.1.cmp(&b.1)));
    let hit = par::position_first(&candidates, |&(set, op)| {
        let child = m.remove_set(op, GroundSubset::raw(set, size)).expect("subset in range");
        good_minor(&child, n).unwrap_or(false)
    });
    Ok(hit.map(|i| (GroundSubset::raw(candidates[i].0, size), candidates[i].1)))
}

/// An element outside `N` whose deletion or contraction is 3-connected and
/// keeps `N` exactly. Requires `M` and `N` 3-connected and `N` a proper minor;
/// the branch width condition is left to the caller.
pub fn splitter_check(m: &Matroid, n: &Matroid) -> Result<Option<(usize, Op)>> {
    splitter_preconditions(m, n)?;
    let en = m.subset_from_labels(n.labels())?;
    for e in en.complement() {
        for op in [Op::Delete, Op::Contract] {
            if good_minor(&m.remove_element(op, e)?, n)? {
                return Ok(Some((e, op)));
            }
        }
    }
    Ok(None)
}

/// Same as [`splitter_check`] up to isomorphism: any element may go, and the
/// result needs only a minor isomorphic to `N`. Limited to `n <= 12`.
pub fn splitter_check_isomorphic(m: &Matroid, n: &Matroid) -> Result<Option<(usize, Op)>> {
    if !is_3_connected(m) || !is_3_connected(n) {
        return Err(Error::precondition("M and N must be 3-connected"));
    }
    if n.size() >= m.size() {
        return Err(Error::precondition("N must be a proper minor"));
    }
    for e in 0..m.size() {
        for op in [Op::Delete, Op::Contract] {
            let child = m.remove_element(op, e)?;
            if is_3_connected(&child) && child.has_isomorphic_minor(n)?.is_some() {
                return Ok(Some((e, op)));
            }
        }
    }
    Ok(None)
}

fn splitter_preconditions(m: &Matroid, n: &Matroid) -> Result<()> {
    if !is_3_connected(m) || !is_3_connected(n) {
        return Err(Error::precondition("M and N must be 3-connected"));
    }
    if n.size() >= m.size() || !keeps_minor(m, n)? {
        return Err(Error::precondition("N must be a proper minor of M"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_on_u36() {
        let m = Matroid::uniform(3, 6).unwrap();
        let n = Matroid::uniform(1, 2).unwrap();
        let (x, op) = brute_force_oracle(&m, &n, 1).unwrap().unwrap();
        assert_eq!((x.to_vec(), op), (vec![2], Op::Delete));
        assert!(good_minor(&m.delete_element(2).unwrap(), &n).unwrap());
        // k = 0: M itself qualifies
        let (x, _) = brute_force_oracle(&m, &n, 0).unwrap().unwrap();
        assert!(x.is_empty());
    }

    #[test]
    fn splitter_u25() {
        let m = Matroid::uniform(2, 5).unwrap();
        let n = Matroid::uniform(2, 4).unwrap();
        assert_eq!(brute_force_oracle(&m, &n, 1).unwrap(), Some((m.subset(&[4]).unwrap(), Op::Delete)));
        assert_eq!(splitter_check(&m, &n).unwrap(), Some((4, Op::Delete)));
        assert!(splitter_check_isomorphic(&m, &n).unwrap().is_some());
    }

    #[test]
    fn missing_labels_do_not_keep_the_minor() {
        let m = Matroid::uniform(2, 4).unwrap().delete_element(0).unwrap();
        assert!(!keeps_minor(&m, &Matroid::uniform(1, 2).unwrap()).unwrap());
    }
}
