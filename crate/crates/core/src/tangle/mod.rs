//! Tangles: families of "small sides" of low-order separations.
//!
//! A tangle of order `θ` picks one side of every partition with
//! `lambda < θ`, never picks `E - e`, and never picks three sets covering `E`.
//! Tangles are stored extensionally as sorted member lists.

mod decomposition;
mod inherit;
mod matroid;
mod search;

pub use decomposition::{branch_width_by_decomposition, decomposition_width, DecompositionTree};
pub use inherit::{inherit_tangle, inherit_tangle_one_shot};
pub use matroid::TangleMatroid;
pub use search::{branch_width, enumerate_tangles, has_tangle, TANGLE_CAP};

use std::fmt;

use crate::connectivity::lambda_mask;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, TABLE_CAP};
use crate::subset::{full_mask, GroundSubset};

#[derive(Clone)]
pub struct Tangle {
    host: Matroid,
    order: usize,
    members: Vec<GroundSubset>,
    flags: Vec<bool>,
}

impl Tangle {
    /// Build and validate.
    pub fn new(host: &Matroid, order: usize, mut members: Vec<GroundSubset>) -> Result<Tangle> {
        members.sort();
        members.dedup();
        match validate_tangle(host, &members, order)? {
            Validation::Valid => Ok(Tangle::trusted(host, order, members)),
            Validation::Violated { violations } => {
                let (axiom, witness) = &violations[0];
                Err(Error::claim(format!("not a tangle: axiom {axiom} fails at {witness:?}")))
            }
        }
    }

    /// Members must already be sorted, deduplicated and valid.
    pub(crate) fn trusted(host: &Matroid, order: usize, members: Vec<GroundSubset>) -> Tangle {
        let mut flags = vec![false; 1 << host.size()];
        for x in &members {
            flags[x.bits() as usize] = true;
        }
        Tangle { host: host.clone(), order, members, flags }
    }

    /// The empty tangle of order 0.
    pub fn empty(host: &Matroid) -> Tangle {
        Tangle::trusted(host, 0, Vec::new())
    }

    pub fn host(&self) -> &Matroid {
        &self.host
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[GroundSubset] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, set: GroundSubset) -> bool {
        self.contains_mask(set.bits())
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.flags[mask as usize]
    }

    /// `{X in T : lambda(X) < order}`.
    pub fn truncate(&self, order: usize) -> Result<Tangle> {
        if order > self.order {
            return Err(Error::precondition("truncation cannot raise the order"));
        }
        let members = self.members.iter().copied().filter(|x| lambda_mask(&self.host, x.bits()) < order).collect();
        Ok(Tangle::trusted(&self.host, order, members))
    }

    /// The same family, viewed as a tangle of the dual.
    pub fn on_dual(&self) -> Tangle {
        Tangle::trusted(&self.host.dual(), self.order, self.members.clone())
    }

    pub fn matroid(&self) -> TangleMatroid {
        TangleMatroid::new(self)
    }
}

impl PartialEq for Tangle {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.members == other.members && self.host.labels() == other.host.labels()
    }
}

impl fmt::Debug for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tangle").field("order", &self.order).field("members", &self.members).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// Every failing axiom (1 to 4) in increasing order, each with the sets
    /// witnessing its first failure.
    Violated {
        violations: Vec<(u8, Vec<GroundSubset>)>,
    },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn axioms(&self) -> Vec<u8> {
        match self {
            Validation::Valid => Vec::new(),
            Validation::Violated { violations } => violations.iter().map(|v| v.0).collect(),
        }
    }

    pub fn first_axiom(&self) -> Option<u8> {
        self.axioms().first().copied()
    }
}

/// Check the four tangle axioms exhaustively.
pub fn validate_tangle(m: &Matroid, family: &[GroundSubset], order: usize) -> Result<Validation> {
    let n = m.size();
    if n > TABLE_CAP {
        return Err(Error::GroundSetTooLarge { size: n, cap: TABLE_CAP });
    }
    for x in family {
        m.check_subset(*x)?;
    }
    let full = full_mask(n);
    let lam = |mask: u32| lambda_mask(m, mask);
    let mut violations = Vec::new();
    if let Some(x) = family.iter().find(|x| lam(x.bits()) >= order) {
        violations.push((1, vec![*x]));
    }
    let mut flags = vec![false; 1 << n];
    for x in family {
        flags[x.bits() as usize] = true;
    }
    if let Some(mask) =
        (0..=full).find(|&mask| lam(mask) < order && !flags[mask as usize] && !flags[(full & !mask) as usize])
    {
        violations.push((2, vec![GroundSubset::raw(mask, n)]));
    }
    // down[s]: some member contains s
    let mut down = flags.clone();
    for i in 0..n {
        for mask in 0..=full {
            if mask >> i & 1 == 0 && down[(mask | 1 << i) as usize] {
                down[mask as usize] = true;
            }
        }
    }
    'cover: for x in family {
        for y in family {
            let rest = full & !(x.bits() | y.bits());
            if down[rest as usize] {
                let z = family.iter().find(|z| z.bits() & rest == rest).expect("down flag has a member");
                violations.push((3, vec![*x, *y, *z]));
                break 'cover;
            }
        }
    }
    if let Some(e) = (0..n).find(|&e| flags[(full & !(1 << e)) as usize]) {
        violations.push((4, vec![GroundSubset::raw(full & !(1 << e), n)]));
    }
    Ok(if violations.is_empty() { Validation::Valid } else { Validation::Violated { violations } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(m: &Matroid, list: &[&[usize]]) -> Vec<GroundSubset> {
        list.iter().map(|e| m.subset(e).unwrap()).collect()
    }

    #[test]
    fn empty_family_is_order_zero_tangle() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert!(validate_tangle(&m, &[], 0).unwrap().is_valid());
        assert!(!validate_tangle(&m, &[], 1).unwrap().is_valid());
    }

    #[test]
    fn u24_singletons() {
        let m = Matroid::uniform(2, 4).unwrap();
        let fam = sets(&m, &[&[], &[0], &[1], &[2], &[3]]);
        assert!(validate_tangle(&m, &fam, 2).unwrap().is_valid());
        let mut bigger = fam.clone();
        bigger.push(m.subset(&[0, 1]).unwrap());
        // the pair and two singletons cover E; the other pairs are also undecided
        assert_eq!(validate_tangle(&m, &bigger, 3).unwrap().axioms(), vec![2, 3]);
    }

    #[test]
    fn axioms_one_and_four_detected() {
        let m = Matroid::uniform(1, 2).unwrap();
        let fam = sets(&m, &[&[], &[0]]);
        assert_eq!(validate_tangle(&m, &fam, 1).unwrap().first_axiom(), Some(1));
        // {1} = E - 0
        let fam = sets(&m, &[&[], &[1]]);
        assert_eq!(validate_tangle(&m, &fam, 2).unwrap().axioms(), vec![4]);
    }

    #[test]
    fn truncation_and_dual() {
        let m = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&m, 3).unwrap().remove(0);
        let t2 = t.truncate(2).unwrap();
        assert_eq!(t2.members().len(), 8);
        assert!(validate_tangle(&m, t2.members(), 2).unwrap().is_valid());
        let d = t.on_dual();
        assert!(validate_tangle(d.host(), d.members(), 3).unwrap().is_valid());
    }
}
