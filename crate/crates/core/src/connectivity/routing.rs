//! Minor routing across low-order separations, and single-element tests.

use super::{is_3_connected, is_connected, is_k_connected, lambda};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MinorSpec};
use crate::subset::GroundSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GutsClass {
    /// `(X - e, Y)` drops to a `(k-1)`-separation of `M / e`.
    ContractDegenerate,
    Safe,
}

/// The three conditions compared for an element `e` of `X`, with `k` taken
/// as `lambda(X) + 1`:
/// 0. `(X - e, Y)` is a `(k-1)`-separation of `M / e`;
/// 1. `e` is in `cl(Y)` and in `cl(X - e)`;
/// 2. `e` is in neither `cl*(Y)` nor `cl*(X - e)`.
pub fn guts_coguts_conditions(m: &Matroid, side: GroundSubset, e: usize) -> Result<[bool; 3]> {
    m.check_subset(side)?;
    if !side.contains(e) {
        return Err(Error::precondition(format!("element {e} is not on the given side")));
    }
    let k = lambda(m, side) + 1;
    let x_e = side.without(e);
    let y = side.complement();
    let me = m.contract_element(e)?;
    let local = |s: GroundSubset| -> GroundSubset {
        GroundSubset::raw(crate::subset::extract(s.bits(), !(1u32 << e)), me.size())
    };
    let lx = local(x_e);
    let first = k >= 2 && lambda(&me, lx) < k - 1 && x_e.len() >= k - 1 && y.len() >= k - 1;
    let second = m.closure(y).contains(e) && m.closure(x_e).contains(e);
    let third = !m.coclosure(y).contains(e) && !m.coclosure(x_e).contains(e);
    Ok([first, second, third])
}

/// Classify `e` for an exact separation `(X, E - X)` of a `k`-connected
/// matroid, where `k = lambda(X) + 1`. All three equivalent conditions are
/// computed; disagreement is reported as a violated claim.
pub fn guts_coguts_classify(m: &Matroid, side: GroundSubset, e: usize) -> Result<GutsClass> {
    m.check_subset(side)?;
    let k = lambda(m, side) + 1;
    if side.len() < k || side.complement().len() < k {
        return Err(Error::precondition(format!("({side:?}, complement) is not an exact {k}-separation")));
    }
    if !is_k_connected(m, k) {
        return Err(Error::precondition(format!("matroid is not {k}-connected")));
    }
    if m.loops().contains(e) {
        return Err(Error::precondition(format!("element {e} is a loop")));
    }
    let c = guts_coguts_conditions(m, side, e)?;
    if c[0] != c[1] || c[1] != c[2] {
        return Err(Error::claim(format!("guts/coguts conditions disagree for {e}: {c:?}")));
    }
    Ok(if c[0] { GutsClass::ContractDegenerate } else { GutsClass::Safe })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    DeleteB,
    ContractB,
}

/// Check the shape shared by the 2-separation routines and return `N`'s
/// elements as a subset of `M`.
fn two_separation_setup(m: &Matroid, n: &Matroid, b: GroundSubset) -> Result<GroundSubset> {
    m.check_subset(b)?;
    let en = m.subset_from_labels(n.labels())?;
    if lambda(m, b) > 1 || b.len() < 2 || b.complement().len() < 2 {
        return Err(Error::precondition("B is not a side of a 2-separation"));
    }
    Ok(en)
}

/// Which of `M \ B`, `M / B` keeps `N`, with a verified spec on `M`.
pub fn route_2sep_minor(m: &Matroid, n: &Matroid, b: GroundSubset) -> Result<(Route, MinorSpec)> {
    let en = two_separation_setup(m, n, b)?;
    if !en.is_disjoint(b) {
        return Err(Error::precondition("B meets the minor's ground set"));
    }
    if m.has_minor(n)?.is_none() {
        return Err(Error::precondition("N is not a minor of M"));
    }
    for route in [Route::DeleteB, Route::ContractB] {
        let child = match route {
            Route::DeleteB => m.delete(b)?,
            Route::ContractB => m.contract(b)?,
        };
        if let Some(spec) = child.has_minor(n)? {
            let c = m.lift(&child, spec.contract)?;
            let d = m.lift(&child, spec.delete)?;
            let spec = match route {
                Route::DeleteB => MinorSpec::new(c, d.union(b))?,
                Route::ContractB => MinorSpec::new(c.union(b), d)?,
            };
            if m.minor(&spec)? != *n {
                return Err(Error::claim("routed minor does not reproduce N"));
            }
            return Ok((route, spec));
        }
    }
    Err(Error::claim("neither M \\ B nor M / B keeps N"))
}

/// Per-element data for elements of a 2-separating side `B` that avoids `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingleRoute {
    pub element: usize,
    /// `e` is outside `cl(A)`.
    pub outside_closure: bool,
    /// `e` is outside `cl(A)` and `cl*(A)`.
    pub outside_both: bool,
    pub contract_keeps: bool,
    pub delete_keeps: bool,
}

pub fn single_element_routes(m: &Matroid, n: &Matroid, b: GroundSubset) -> Result<Vec<SingleRoute>> {
    let en = two_separation_setup(m, n, b)?;
    if !en.is_disjoint(b) {
        return Err(Error::precondition("B meets the minor's ground set"));
    }
    let a = b.complement();
    let (cl, cocl) = (m.closure(a), m.coclosure(a));
    b.iter()
        .map(|e| {
            Ok(SingleRoute {
                element: e,
                outside_closure: !cl.contains(e),
                outside_both: !cl.contains(e) && !cocl.contains(e),
                contract_keeps: m.contract_element(e)?.keeps(n)?,
                delete_keeps: m.delete_element(e)?.keeps(n)?,
            })
        })
        .collect()
}

/// For a 2-separation `(A, B)` with `B` meeting `N` in one element `f`, an
/// element `e` of `B - f` whose deletion and contraction both keep `N`.
pub fn route_2sep_one_contact(m: &Matroid, n: &Matroid, b: GroundSubset) -> Result<usize> {
    let en = two_separation_setup(m, n, b)?;
    let contact = en.intersection(b);
    if contact.len() != 1 {
        return Err(Error::precondition("B must meet the minor in exactly one element"));
    }
    let f = contact.first().expect("one element");
    if !is_connected(m) {
        return Err(Error::Disconnected);
    }
    if !n.loops().is_empty() || !n.coloops().is_empty() {
        return Err(Error::precondition("N has loops or coloops"));
    }
    let paired = m.parallel_classes().into_iter().chain(m.series_classes()).any(|c| c.contains(f));
    if paired {
        return Err(Error::precondition(format!("element {f} is in a series or parallel pair")));
    }
    if m.has_minor(n)?.is_none() {
        return Err(Error::precondition("N is not a minor of M"));
    }
    for e in b.without(f) {
        if m.delete_element(e)?.keeps(n)? && m.contract_element(e)?.keeps(n)? {
            return Ok(e);
        }
    }
    Err(Error::claim(format!("no element of {:?} keeps N under both deletion and contraction", b.without(f))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BixbyOutcome {
    /// `si(M / e)` is 3-connected.
    pub contraction: bool,
    /// `co(M \ e)` is 3-connected.
    pub deletion: bool,
}

impl BixbyOutcome {
    pub fn is_empty(&self) -> bool {
        !self.contraction && !self.deletion
    }
}

/// Which of `si(M / e)` and `co(M \ e)` are 3-connected.
pub fn bixby_branch(m: &Matroid, e: usize) -> Result<BixbyOutcome> {
    if e >= m.size() {
        return Err(Error::ElementOutOfRange { element: e, size: m.size() });
    }
    if !is_3_connected(m) {
        return Err(Error::precondition("matroid is not 3-connected"));
    }
    Ok(BixbyOutcome {
        contraction: is_3_connected(&m.contract_element(e)?.simplify().0),
        deletion: is_3_connected(&m.delete_element(e)?.cosimplify().0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named;

    #[test]
    fn guts_example_on_u24() {
        let u = Matroid::uniform(2, 4).unwrap();
        let x = u.subset(&[0, 1]).unwrap();
        // sides of size 2 cannot carry an exact 3-separation
        assert!(matches!(guts_coguts_classify(&u, x, 0), Err(Error::Precondition(_))));
        assert_eq!(guts_coguts_conditions(&u, x, 0).unwrap(), [false, false, false]);
    }

    #[test]
    fn guts_on_a_prism_triangle() {
        let p = named::prism().unwrap();
        // a triangle of the prism is an exact 3-separation, and the rest of
        // the graph spans it, so contracting any triangle edge degenerates
        let x = p.subset(&[0, 1, 2]).unwrap();
        assert_eq!(lambda(&p, x), 2);
        for e in x {
            assert_eq!(guts_coguts_classify(&p, x, e).unwrap(), GutsClass::ContractDegenerate);
        }
        // the complement side: a matching edge is not spanned by the triangle
        let y = x.complement();
        assert_eq!(guts_coguts_classify(&p, y, 6).unwrap(), GutsClass::Safe);
    }

    #[test]
    fn series_pair_is_contracted() {
        // a 4-cycle: {2, 3} is a series pair
        let m = Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let spec = MinorSpec::new(m.subset(&[3]).unwrap(), m.empty_set()).unwrap();
        let n = m.minor(&spec).unwrap();
        let b = m.subset(&[2, 3]).unwrap();
        assert!(matches!(route_2sep_minor(&m, &n, b), Err(Error::Precondition(_))));
        let spec = MinorSpec::new(m.subset(&[2, 3]).unwrap(), m.empty_set()).unwrap();
        let n = m.minor(&spec).unwrap();
        let (route, w) = route_2sep_minor(&m, &n, b).unwrap();
        assert_eq!(route, Route::ContractB);
        assert_eq!(m.minor(&w).unwrap(), n);
    }

    #[test]
    fn parallel_pair_is_deleted() {
        let m = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2), (0, 2)]).unwrap();
        let b = m.subset(&[2, 3]).unwrap();
        let spec = MinorSpec::new(m.empty_set(), b).unwrap();
        let n = m.minor(&spec).unwrap();
        let (route, _) = route_2sep_minor(&m, &n, b).unwrap();
        assert_eq!(route, Route::DeleteB);
    }

    #[test]
    fn bixby_on_u24_and_k4() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(bixby_branch(&u, 0).unwrap(), BixbyOutcome { contraction: true, deletion: true });
        let k4 = named::complete_graph(4).unwrap();
        for e in 0..6 {
            assert!(!bixby_branch(&k4, e).unwrap().is_empty());
        }
        let bowtie = Matroid::graphic(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(bixby_branch(&bowtie, 0).is_err());
    }
}
