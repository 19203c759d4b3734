//! Closures, small-structure enumeration, simplification and minor search.

use super::{Backend, Matroid, MinorSpec};
use crate::error::{Error, Result};
use crate::par;
use crate::subset::{full_mask, k_subsets, Elements, GroundSubset};

impl Matroid {
    #[inline]
    pub fn is_independent(&self, set: GroundSubset) -> bool {
        self.rank(set) == set.len()
    }

    #[inline]
    pub fn is_coindependent(&self, set: GroundSubset) -> bool {
        self.rank(set.complement()) == self.full_rank()
    }

    pub fn is_spanning(&self, set: GroundSubset) -> bool {
        self.rank(set) == self.full_rank()
    }

    pub fn is_circuit(&self, set: GroundSubset) -> bool {
        !set.is_empty()
            && self.rank(set) + 1 == set.len()
            && set.iter().all(|e| self.rank(set.without(e)) == set.len() - 1)
    }

    pub fn is_closed(&self, set: GroundSubset) -> bool {
        self.closure(set) == set
    }

    /// A closed set of rank `r(M) - 1`.
    pub fn is_hyperplane(&self, set: GroundSubset) -> bool {
        self.rank(set) + 1 == self.full_rank() && self.is_closed(set)
    }

    pub fn closure(&self, set: GroundSubset) -> GroundSubset {
        let r = self.rank(set);
        let mut out = set;
        for e in set.complement() {
            if self.rank(set.with(e)) == r {
                out = out.with(e);
            }
        }
        out
    }

    /// Closure in the dual.
    pub fn coclosure(&self, set: GroundSubset) -> GroundSubset {
        let r = self.corank_mask(set.bits());
        let mut out = set;
        for e in set.complement() {
            if self.corank_mask(set.with(e).bits()) == r {
                out = out.with(e);
            }
        }
        out
    }

    /// Smallest set containing `set` that is both closed and coclosed.
    pub fn full_closure(&self, set: GroundSubset) -> GroundSubset {
        let mut cur = set;
        loop {
            let next = self.coclosure(self.closure(cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn loops(&self) -> GroundSubset {
        self.closure(self.empty_set())
    }

    pub fn coloops(&self) -> GroundSubset {
        self.coclosure(self.empty_set())
    }

    /// Parallel classes with at least two elements, ordered by smallest member.
    pub fn parallel_classes(&self) -> Vec<GroundSubset> {
        classes(self.size(), self.loops(), |e, f| self.rank_mask(1 << e | 1 << f) == 1)
    }

    pub fn series_classes(&self) -> Vec<GroundSubset> {
        classes(self.size(), self.coloops(), |e, f| self.corank_mask(1 << e | 1 << f) == 1)
    }

    pub fn triangles(&self) -> Vec<GroundSubset> {
        self.three_sets(|m| self.rank_mask(m))
    }

    pub fn triads(&self) -> Vec<GroundSubset> {
        self.three_sets(|m| self.corank_mask(m))
    }

    fn three_sets(&self, r: impl Fn(u32) -> usize) -> Vec<GroundSubset> {
        let mut out: Vec<GroundSubset> = k_subsets(self.size(), 3)
            .filter(|&m| r(m) == 2 && Elements(m).all(|e| r(m & !(1 << e)) == 2 && r(1 << e) == 1))
            .map(|m| GroundSubset::raw(m, self.size()))
            .collect();
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    pub fn is_triangle(&self, set: GroundSubset) -> bool {
        set.len() == 3 && self.is_circuit(set)
    }

    pub fn is_triad(&self, set: GroundSubset) -> bool {
        set.len() == 3 && self.dual().is_circuit(set)
    }

    /// Delete loops and all but the smallest-labeled member of each parallel
    /// class. Returns the simplification and its labels.
    pub fn simplify(&self) -> (Matroid, Vec<u32>) {
        let mut drop = self.loops();
        for class in self.parallel_classes() {
            let keep = class.iter().min_by_key(|&e| self.labels()[e]).expect("nonempty class");
            drop = drop.union(class.without(keep));
        }
        let m = self.delete(drop).expect("subset of own ground set");
        let labels = m.labels().to_vec();
        (m, labels)
    }

    /// Contract coloops and all but the smallest-labeled member of each
    /// series class.
    pub fn cosimplify(&self) -> (Matroid, Vec<u32>) {
        let mut drop = self.coloops();
        for class in self.series_classes() {
            let keep = class.iter().min_by_key(|&e| self.labels()[e]).expect("nonempty class");
            drop = drop.union(class.without(keep));
        }
        let m = self.contract(drop).expect("subset of own ground set");
        let labels = m.labels().to_vec();
        (m, labels)
    }

    /// Circuits in ascending lexicographic order, optionally size-capped.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<GroundSubset> {
        let n = self.size();
        let top = max_size.unwrap_or(n).min(n);
        let mut out = Vec::new();
        for k in 1..=top {
            for m in k_subsets(n, k) {
                let s = GroundSubset::raw(m, n);
                if self.rank_mask(m) + 1 == k && self.is_circuit(s) {
                    out.push(s);
                }
            }
        }
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    /// Relax a circuit-hyperplane.
    pub fn relax(&self, set: GroundSubset) -> Result<Matroid> {
        self.check_subset(set)?;
        if !(self.is_circuit(set) && self.is_hyperplane(set)) {
            return Err(Error::NotCircuitHyperplane);
        }
        Matroid::from_backend(Backend::Relaxed { base: self.clone(), set })
    }

    /// Search for `(C, D)` with `M / C \ D` equal to `other` on `other`'s
    /// labels. `C` is independent and `D` coindependent; candidates for `C`
    /// are tried in lexicographic order.
    pub fn has_minor(&self, other: &Matroid) -> Result<Option<MinorSpec>> {
        let (map, rest) = self.embed(other)?;
        let n = self.size();
        if other.full_rank() > self.full_rank() {
            return Ok(None);
        }
        let c_size = self.full_rank() - other.full_rank();
        let rest_elems = GroundSubset::raw(rest, n).to_vec();
        if c_size > rest_elems.len() {
            return Ok(None);
        }
        let images = image_masks(&map);
        let targets: Vec<usize> = (0..images.len() as u32).map(|s| other.rank_mask(s)).collect();
        let full = full_mask(n);
        let total = self.full_rank();
        let candidates = lex_combinations(&rest_elems, c_size);
        let hit = par::position_first(&candidates, |&c| {
            let d = rest & !c;
            self.rank_mask(c) == c_size
                && self.rank_mask(full & !d) == total
                && images.iter().zip(&targets).all(|(&img, &t)| self.rank_mask(img | c) - c_size == t)
        });
        Ok(hit.map(|i| {
            let c = candidates[i];
            MinorSpec { contract: GroundSubset::raw(c, n), delete: GroundSubset::raw(rest & !c, n) }
        }))
    }

    /// Whether `other` is a minor on its own labels; `false` when a label is
    /// missing rather than an error.
    pub(crate) fn keeps(&self, other: &Matroid) -> Result<bool> {
        if other.labels().iter().any(|&l| self.position_of(l).is_none()) {
            return Ok(false);
        }
        Ok(self.has_minor(other)?.is_some())
    }

    /// Like [`Matroid::has_minor`] but only up to isomorphism; the minor's
    /// ground set may be any subset of the right size. Limited to `n <= 12`.
    pub fn has_isomorphic_minor(&self, other: &Matroid) -> Result<Option<MinorSpec>> {
        let n = self.size();
        if n > 12 {
            return Err(Error::GroundSetTooLarge { size: n, cap: 12 });
        }
        if other.size() > n || other.full_rank() > self.full_rank() {
            return Ok(None);
        }
        let c_size = self.full_rank() - other.full_rank();
        let d_size = n - other.size() - c_size;
        if d_size > n {
            return Ok(None);
        }
        let full = full_mask(n);
        let total = self.full_rank();
        let mut pairs = Vec::new();
        for c in k_subsets(n, c_size) {
            if self.rank_mask(c) != c_size {
                continue;
            }
            for d0 in k_subsets(n - c_size, d_size) {
                let d = crate::subset::deposit(d0, full & !c);
                if self.rank_mask(full & !d) == total {
                    pairs.push((c, d));
                }
            }
        }
        let hit = par::position_first(&pairs, |&(c, d)| {
            let spec = MinorSpec { contract: GroundSubset::raw(c, n), delete: GroundSubset::raw(d, n) };
            let minor = self.minor(&spec).expect("valid spec");
            super::find_isomorphism(&minor, other).is_some()
        });
        Ok(hit.map(|i| {
            let (c, d) = pairs[i];
            MinorSpec { contract: GroundSubset::raw(c, n), delete: GroundSubset::raw(d, n) }
        }))
    }

    /// Positions in `self` of `other`'s labels, and the mask of the rest.
    fn embed(&self, other: &Matroid) -> Result<(Vec<usize>, u32)> {
        let map = other
            .labels()
            .iter()
            .map(|&l| self.position_of(l).ok_or(Error::LabelMismatch(l)))
            .collect::<Result<Vec<_>>>()?;
        let used = map.iter().fold(0u32, |acc, &p| acc | 1 << p);
        Ok((map, full_mask(self.size()) & !used))
    }

    /// Move elements so `C` is independent and `D` coindependent without
    /// changing the minor.
    pub fn normalize_minor(&self, spec: &MinorSpec) -> Result<MinorSpec> {
        self.check_subset(spec.contract)?;
        self.check_subset(spec.delete)?;
        if !spec.contract.is_disjoint(spec.delete) {
            return Err(Error::OverlappingMinor);
        }
        // a dependent element of C is a loop after contracting the rest
        let mut c = GroundSubset::empty(self.size());
        let mut d = spec.delete;
        for e in spec.contract {
            if self.rank(c.with(e)) > self.rank(c) {
                c = c.with(e);
            } else {
                d = d.with(e);
            }
        }
        // with C independent, D is coindependent in M / C iff r(E - D) = r(M);
        // a deletion that would drop the rank is a coloop, so contract it
        let mut kept = GroundSubset::empty(self.size());
        for e in d {
            if self.is_spanning(kept.with(e).complement()) {
                kept = kept.with(e);
            } else {
                c = c.with(e);
            }
        }
        Ok(MinorSpec { contract: c, delete: kept })
    }
}

/// Result of [`remove_loops_coloops_minor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub spec: MinorSpec,
    /// Elements restored, in the order they were brought back.
    pub restored: Vec<usize>,
}

/// Bring back one element per loop or coloop of `N = M / C \ D` so the new
/// minor has neither, still has `N` as a minor, and grows by at most the
/// number of loops and coloops of `N`.
pub fn remove_loops_coloops_minor(m: &Matroid, spec: &MinorSpec) -> Result<MinorWitness> {
    if !crate::connectivity::is_connected(m) {
        return Err(Error::Disconnected);
    }
    let MinorSpec { mut contract, mut delete } = m.normalize_minor(spec)?;
    let mut restored = Vec::new();
    loop {
        let retained = contract.union(delete).complement();
        // loops of M / C \ D on the retained elements
        let rc = m.rank(contract);
        if let Some(e) = retained.iter().find(|&e| m.rank(contract.with(e)) == rc) {
            let f = minimal_support(|x| m.rank(x.with(e)) == m.rank(x), contract)
                .first()
                .ok_or_else(|| Error::precondition("loop of the matroid itself"))?;
            contract = contract.without(f);
            restored.push(f);
            continue;
        }
        let cd = m.corank_mask(delete.bits());
        if let Some(e) = retained.iter().find(|&e| m.corank_mask(delete.with(e).bits()) == cd) {
            let f = minimal_support(|x| m.corank_mask(x.with(e).bits()) == m.corank_mask(x.bits()), delete)
                .first()
                .ok_or_else(|| Error::precondition("coloop of the matroid itself"))?;
            delete = delete.without(f);
            restored.push(f);
            continue;
        }
        break;
    }
    Ok(MinorWitness { spec: MinorSpec { contract, delete }, restored })
}

/// Shrink `set` greedily in element order while `spans` still holds; for a
/// closure test this leaves `X - e` of a circuit `X` through `e`.
fn minimal_support(spans: impl Fn(GroundSubset) -> bool, set: GroundSubset) -> GroundSubset {
    let mut cur = set;
    for g in set {
        if spans(cur.without(g)) {
            cur = cur.without(g);
        }
    }
    cur
}

/// Equivalence classes of the relation `same` among non-excluded elements,
/// keeping only classes with two or more members.
fn classes(n: usize, excluded: GroundSubset, same: impl Fn(usize, usize) -> bool) -> Vec<GroundSubset> {
    let mut seen = excluded;
    let mut out = Vec::new();
    for e in 0..n {
        if seen.contains(e) {
            continue;
        }
        let mut class = GroundSubset::raw(1 << e, n);
        for f in e + 1..n {
            if !seen.contains(f) && same(e, f) {
                class = class.with(f);
            }
        }
        seen = seen.union(class);
        if class.len() >= 2 {
            out.push(class);
        }
    }
    out
}

/// `k`-subsets of `elems` as masks, in lexicographic order of element lists.
pub(crate) fn lex_combinations(elems: &[usize], k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > elems.len() {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u32, |acc, &i| acc | 1 << elems[i]));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + elems.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// For each subset `S` of positions `0..map.len()`, the mask `map(S)`.
pub(crate) fn image_masks(map: &[usize]) -> Vec<u32> {
    let mut images = vec![0u32; 1 << map.len()];
    for s in 1..images.len() {
        let low = s.trailing_zeros() as usize;
        images[s] = images[s & (s - 1)] | 1 << map[low];
    }
    images
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    fn set(m: &Matroid, e: &[usize]) -> GroundSubset {
        m.subset(e).unwrap()
    }

    #[test]
    fn closure_examples() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.closure(set(&u, &[0, 1])), u.ground());
        let k4 = named::complete_graph(4).unwrap();
        assert_eq!(k4.loops(), k4.empty_set());
        let one = set(&k4, &[2]);
        assert_eq!(k4.full_closure(one), one);
        let g = Matroid::graphic(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.loops().to_vec(), vec![0]);
    }

    #[test]
    fn triangles_and_triads() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.triangles(), vec![u23.ground()]);
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.triads().len(), 4);
        assert_eq!(named::complete_graph(4).unwrap().triangles().len(), 4);
    }

    #[test]
    fn classes_and_simplification() {
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(u13.parallel_classes(), vec![u13.ground()]);
        let (s, labels) = u13.simplify();
        assert_eq!(labels, vec![0]);
        assert_eq!(s, Matroid::uniform(1, 1).unwrap());
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.simplify().1, vec![0, 1, 2, 3]);
        let (cs, labels) = u13.dual().cosimplify();
        assert_eq!(labels, vec![0]);
        assert_eq!(cs, Matroid::uniform(1, 1).unwrap().dual());
    }

    #[test]
    fn circuit_lists() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let c = u24.circuits(None);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|x| x.len() == 3));
        assert!(Matroid::uniform(3, 3).unwrap().circuits(None).is_empty());
        let k4 = named::complete_graph(4).unwrap().circuits(None);
        assert_eq!(k4.iter().filter(|x| x.len() == 3).count(), 4);
        assert_eq!(k4.iter().filter(|x| x.len() == 4).count(), 3);
        assert_eq!(k4.len(), 7);
    }

    #[test]
    fn minor_search_examples() {
        let u36 = Matroid::uniform(3, 6).unwrap();
        let u12 = Matroid::uniform(1, 2).unwrap();
        let spec = u36.has_minor(&u12).unwrap().unwrap();
        assert_eq!(spec.contract.to_vec(), vec![2, 3]);
        assert_eq!(spec.delete.to_vec(), vec![4, 5]);
        assert_eq!(u36.minor(&spec).unwrap(), u12);
        assert_eq!(u36.has_minor(&u36).unwrap(), Some(MinorSpec::identity(6)));
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.has_minor(&Matroid::uniform(3, 3).unwrap()).unwrap(), None);
        let stranger = Matroid::uniform(1, 1).unwrap().with_labels(vec![9]).unwrap();
        assert!(matches!(u24.has_minor(&stranger), Err(Error::LabelMismatch(9))));
    }

    #[test]
    fn relax_wheel_rim() {
        let w = named::wheel(2).unwrap();
        let r = w.relax(named::wheel_rim(2)).unwrap();
        assert_eq!(r, Matroid::uniform(2, 4).unwrap());
        let rim = named::wheel_rim(2);
        assert_eq!(r.rank(rim), w.rank(rim) + 1);
        assert!(matches!(w.relax(set(&w, &[0])), Err(Error::NotCircuitHyperplane)));
    }

    #[test]
    fn loop_promotion_example() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let spec = MinorSpec::new(set(&u24, &[1, 2]), set(&u24, &[3])).unwrap();
        assert_eq!(u24.minor(&spec).unwrap().loops().len(), 1);
        let w = remove_loops_coloops_minor(&u24, &spec).unwrap();
        let n2 = u24.minor(&w.spec).unwrap();
        assert_eq!(n2.size(), 2);
        assert_eq!(n2, Matroid::uniform(1, 2).unwrap());
        // the dual instance: contract and delete swap and the loop becomes a coloop
        let w2 = remove_loops_coloops_minor(&u24.dual(), &spec.dual()).unwrap();
        let n3 = u24.dual().minor(&w2.spec).unwrap();
        assert!(n3.loops().is_empty() && n3.coloops().is_empty());
        assert_eq!(n3.size(), 2);
    }

    #[test]
    fn lex_combination_order() {
        let c = lex_combinations(&[0, 1, 2, 3], 2);
        assert_eq!(c, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(lex_combinations(&[1, 2], 0), vec![0]);
        assert!(lex_combinations(&[1], 2).is_empty());
    }

    #[test]
    fn isomorphic_minor_ignores_labels() {
        let w3 = named::wheel(3).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap().with_labels(vec![20, 21, 22]).unwrap();
        assert!(w3.has_isomorphic_minor(&u23).unwrap().is_some());
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(w3.has_isomorphic_minor(&u24).unwrap().is_none());
    }
}
