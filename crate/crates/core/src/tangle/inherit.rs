//! Tangles inherited by minors.

use super::{validate_tangle, Tangle};
use crate::connectivity::lambda_mask;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, Op};
use crate::subset::{extract, GroundSubset};

/// Remove the tagged elements (positions in the tangle's host) one at a
/// time in label order. Each step keeps `X - e` for members `X` whose
/// remainder has `lambda < θ - 1` in the minor, and is validated.
pub fn inherit_tangle(t: &Tangle, removed: &[(usize, Op)]) -> Result<Tangle> {
    let host = t.host();
    let mut steps: Vec<(u32, Op)> = Vec::with_capacity(removed.len());
    for &(e, op) in removed {
        if e >= host.size() {
            return Err(Error::ElementOutOfRange { element: e, size: host.size() });
        }
        let label = host.labels()[e];
        if steps.iter().any(|&(l, _)| l == label) {
            return Err(Error::InvalidInput(format!("element {e} removed twice")));
        }
        steps.push((label, op));
    }
    if removed.len() > t.order() {
        return Err(Error::precondition("cannot remove more elements than the tangle order"));
    }
    steps.sort();
    let mut cur = t.clone();
    for (label, op) in steps {
        let e = cur.host().position_of(label).expect("label still present");
        cur = inherit_one(&cur, e, op)?;
    }
    Ok(cur)
}

fn inherit_one(t: &Tangle, e: usize, op: Op) -> Result<Tangle> {
    let host = t.host();
    let minor = host.remove_element(op, e)?;
    let order = t.order() - 1;
    let keep = !(1u32 << e);
    let mut members: Vec<GroundSubset> = t
        .members()
        .iter()
        .map(|x| extract(x.bits() & keep, keep & crate::subset::full_mask(host.size())))
        .filter(|&x| lambda_mask(&minor, x) < order)
        .map(|x| GroundSubset::raw(x, minor.size()))
        .collect();
    members.sort();
    members.dedup();
    let check = validate_tangle(&minor, &members, order)?;
    if !check.is_valid() {
        return Err(Error::claim(format!("inherited family is not a tangle: {check:?}")));
    }
    Ok(Tangle::trusted(&minor, order, members))
}

/// The inherited tangle computed in one step on `minor`, whose ground set
/// must be a subset of the host's labels: `{X - S : X in T, lambda(X - S) <
/// θ - |S|}`. Not validated.
pub fn inherit_tangle_one_shot(t: &Tangle, minor: &Matroid) -> Result<Tangle> {
    let host = t.host();
    let keep = host.subset_from_labels(minor.labels())?;
    let removed = host.size() - minor.size();
    if removed > t.order() {
        return Err(Error::precondition("cannot remove more elements than the tangle order"));
    }
    let order = t.order() - removed;
    // positions of the minor's elements in host order
    let mut order_check: Vec<usize> = keep.to_vec();
    let mapped: Vec<usize> = minor.labels().iter().map(|&l| host.position_of(l).expect("checked")).collect();
    order_check.sort_unstable();
    if mapped != order_check {
        return Err(Error::InvalidInput("minor must list its elements in host order".into()));
    }
    let mut members: Vec<GroundSubset> = t
        .members()
        .iter()
        .map(|x| extract(x.bits(), keep.bits()))
        .filter(|&x| lambda_mask(minor, x) < order)
        .map(|x| GroundSubset::raw(x, minor.size()))
        .collect();
    members.sort();
    members.dedup();
    Ok(Tangle::trusted(minor, order, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::enumerate_tangles;

    #[test]
    fn u37_delete_one() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        assert_eq!(t.members().len(), 1 + 7 + 21);
        let t2 = inherit_tangle(&t, &[(6, Op::Delete)]).unwrap();
        assert_eq!(t2.order(), 2);
        assert_eq!(t2.members().len(), 7);
        assert!(t2.members().iter().all(|x| x.len() <= 1));
        assert_eq!(*t2.host(), Matroid::uniform(3, 6).unwrap());
    }

    #[test]
    fn identity_and_exhaustion() {
        let u = Matroid::uniform(3, 7).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        assert_eq!(inherit_tangle(&t, &[]).unwrap(), t);
        let gone = inherit_tangle(&t, &[(0, Op::Delete), (3, Op::Contract), (5, Op::Delete)]).unwrap();
        assert_eq!(gone.order(), 0);
        assert!(gone.members().is_empty());
        assert!(inherit_tangle(&t, &[(0, Op::Delete), (1, Op::Delete), (2, Op::Delete), (3, Op::Delete)]).is_err());
    }

    #[test]
    fn one_shot_matches_stepwise() {
        let u = Matroid::uniform(4, 8).unwrap();
        let t = enumerate_tangles(&u, 3).unwrap().remove(0);
        let steps = [(1, Op::Contract), (6, Op::Delete)];
        let a = inherit_tangle(&t, &steps).unwrap();
        let minor = u.contract_element(1).unwrap().delete_element(5).unwrap();
        let b = inherit_tangle_one_shot(&t, &minor).unwrap();
        assert_eq!(a.members(), b.members());
        assert_eq!(a.order(), b.order());
    }
}
