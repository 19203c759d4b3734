//! Rank-oracle matroids over small labeled ground sets.
//!
//! A [`Matroid`] is an immutable handle: a concrete backend (uniform,
//! graphic, linear over GF(2)/GF(3), or a circuit-hyperplane relaxation)
//! under a stack of dual/contract/delete transforms. Ranks are memoized in a
//! full `2^n` table when `n <= TABLE_CAP`; larger ground sets fall back to a
//! per-query memo.
//!
//! Positions (bit indices) are local to each matroid. Labels are the stable
//! element names that survive minors, so `M / C \ D` keeps the labels of the
//! retained elements in their original order.

mod backend;
pub mod io;
mod iso;
pub mod named;
mod ops;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::par;
use crate::subset::{deposit, full_mask, GroundSubset, MAX_GROUND};

pub use iso::find_isomorphism;
pub use ops::{remove_loops_coloops_minor, MinorWitness};

/// Full rank tables are materialized up to this ground-set size.
pub const TABLE_CAP: usize = 20;

/// Global ground-set cap; `MATROIDLAB_MAX_N` may lower (never raise) it.
pub fn ground_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("MATROIDLAB_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.min(MAX_GROUND))
            .unwrap_or(MAX_GROUND)
    })
}

#[derive(Clone, Debug)]
pub enum Backend {
    Uniform {
        rank: usize,
        size: usize,
    },
    /// Multigraph cycle matroid; edge `i` is element `i`.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Column matroid of a matrix over GF(`field`).
    Linear {
        field: u8,
        matrix: Vec<Vec<u8>>,
    },
    /// `base` with the circuit-hyperplane `set` relaxed to a basis.
    Relaxed {
        base: Matroid,
        set: GroundSubset,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Dual,
    /// Contract a set given in the parent's positions.
    Contract(GroundSubset),
    /// Delete a set given in the parent's positions.
    Delete(GroundSubset),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Delete,
    Contract,
}

impl Op {
    pub fn dual(self) -> Op {
        match self {
            Op::Delete => Op::Contract,
            Op::Contract => Op::Delete,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Delete => "delete",
            Op::Contract => "contract",
        }
    }
}

/// A pair `(C, D)` with `N = M / C \ D`, in the host's positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    pub contract: GroundSubset,
    pub delete: GroundSubset,
}

impl MinorSpec {
    pub fn new(contract: GroundSubset, delete: GroundSubset) -> Result<Self> {
        if contract.ground_size() != delete.ground_size() {
            return Err(Error::GroundMismatch(contract.ground_size(), delete.ground_size()));
        }
        if !contract.is_disjoint(delete) {
            return Err(Error::OverlappingMinor);
        }
        Ok(MinorSpec { contract, delete })
    }

    pub fn identity(n: usize) -> Self {
        MinorSpec { contract: GroundSubset::empty(n), delete: GroundSubset::empty(n) }
    }

    pub fn removed(&self) -> GroundSubset {
        self.contract.union(self.delete)
    }

    pub fn retained(&self) -> GroundSubset {
        self.removed().complement()
    }

    /// Swap roles, giving the matching minor of the dual.
    pub fn dual(&self) -> Self {
        MinorSpec { contract: self.delete, delete: self.contract }
    }
}

enum Source {
    Backend(Backend),
    Derived { parent: Matroid, transform: Transform, keep: u32 },
}

struct Inner {
    labels: Vec<u32>,
    source: Source,
    table: OnceLock<Box<[u8]>>,
    memo: Mutex<HashMap<u32, u8>>,
}

#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

impl Matroid {
    fn build(labels: Vec<u32>, source: Source) -> Matroid {
        Matroid(Arc::new(Inner { labels, source, table: OnceLock::new(), memo: Mutex::new(HashMap::new()) }))
    }

    fn check_size(n: usize) -> Result<()> {
        let cap = ground_cap();
        if n > cap {
            return Err(Error::GroundSetTooLarge { size: n, cap });
        }
        Ok(())
    }

    pub fn from_backend(backend: Backend) -> Result<Matroid> {
        let n = match &backend {
            Backend::Uniform { rank, size } => {
                if rank > size {
                    return Err(Error::InvalidInput(format!("U({rank},{size}) has rank above size")));
                }
                *size
            }
            Backend::Graphic { vertices, edges } => {
                if *vertices > u16::MAX as usize {
                    return Err(Error::InvalidInput("too many vertices".into()));
                }
                if let Some(&(u, v)) = edges.iter().find(|(u, v)| u >= vertices || v >= vertices) {
                    return Err(Error::InvalidInput(format!("edge ({u},{v}) uses a missing vertex")));
                }
                edges.len()
            }
            Backend::Linear { field, matrix } => {
                if *field != 2 && *field != 3 {
                    return Err(Error::InvalidInput(format!("unsupported field GF({field})")));
                }
                let width = matrix.first().map_or(0, Vec::len);
                if matrix.iter().any(|row| row.len() != width) {
                    return Err(Error::InvalidInput("matrix rows have different lengths".into()));
                }
                if matrix.iter().flatten().any(|&x| x >= *field) {
                    return Err(Error::InvalidInput(format!("matrix entry outside GF({field})")));
                }
                width
            }
            Backend::Relaxed { base, set } => {
                if set.ground_size() != base.size() {
                    return Err(Error::GroundMismatch(set.ground_size(), base.size()));
                }
                base.size()
            }
        };
        Self::check_size(n)?;
        let labels = match &backend {
            Backend::Relaxed { base, .. } => base.labels().to_vec(),
            _ => (0..n as u32).collect(),
        };
        Ok(Self::build(labels, Source::Backend(backend)))
    }

    pub fn uniform(rank: usize, size: usize) -> Result<Matroid> {
        Self::from_backend(Backend::Uniform { rank, size })
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Matroid> {
        Self::from_backend(Backend::Graphic { vertices, edges })
    }

    pub fn linear(field: u8, matrix: Vec<Vec<u8>>) -> Result<Matroid> {
        Self::from_backend(Backend::Linear { field, matrix })
    }

    /// Same matroid under new element labels (one per position, distinct).
    pub fn with_labels(&self, labels: Vec<u32>) -> Result<Matroid> {
        if labels.len() != self.size() {
            return Err(Error::InvalidInput(format!("expected {} labels, got {}", self.size(), labels.len())));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate labels".into()));
        }
        let inner = &self.0;
        let source = match &inner.source {
            Source::Backend(b) => Source::Backend(b.clone()),
            Source::Derived { parent, transform, keep } => {
                Source::Derived { parent: parent.clone(), transform: transform.clone(), keep: *keep }
            }
        };
        Ok(Self::build(labels, source))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.0.labels
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.size())
    }

    pub fn empty_set(&self) -> GroundSubset {
        GroundSubset::empty(self.size())
    }

    pub fn position_of(&self, label: u32) -> Option<usize> {
        self.0.labels.iter().position(|&l| l == label)
    }

    pub fn subset_from_labels(&self, labels: &[u32]) -> Result<GroundSubset> {
        let positions =
            labels.iter().map(|&l| self.position_of(l).ok_or(Error::LabelMismatch(l))).collect::<Result<Vec<_>>>()?;
        GroundSubset::from_elements(positions, self.size())
    }

    pub fn labels_of(&self, set: GroundSubset) -> Vec<u32> {
        set.iter().map(|e| self.0.labels[e]).collect()
    }

    pub fn subset(&self, elements: &[usize]) -> Result<GroundSubset> {
        GroundSubset::from_elements(elements.iter().copied(), self.size())
    }

    /// A subset of a minor `child`, expressed in this matroid's positions.
    pub fn lift(&self, child: &Matroid, set: GroundSubset) -> Result<GroundSubset> {
        child.check_subset(set)?;
        self.subset_from_labels(&child.labels_of(set))
    }

    /// The part of a subset of `host` that survives in this minor.
    pub fn project(&self, host: &Matroid, set: GroundSubset) -> Result<GroundSubset> {
        host.check_subset(set)?;
        let labels: Vec<u32> = host.labels_of(set).into_iter().filter(|&l| self.position_of(l).is_some()).collect();
        self.subset_from_labels(&labels)
    }

    /// Delete or contract `set`.
    pub fn remove_set(&self, op: Op, set: GroundSubset) -> Result<Matroid> {
        match op {
            Op::Delete => self.delete(set),
            Op::Contract => self.contract(set),
        }
    }

    pub fn remove_element(&self, op: Op, e: usize) -> Result<Matroid> {
        self.remove_set(op, GroundSubset::singleton(e, self.size())?)
    }

    /// The concrete backend at the bottom of the transform stack.
    pub fn backend(&self) -> &Backend {
        match &self.0.source {
            Source::Backend(b) => b,
            Source::Derived { parent, .. } => parent.backend(),
        }
    }

    /// Transforms applied on top of the backend, outermost last.
    pub fn transforms(&self) -> Vec<Transform> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Source::Derived { parent, transform, .. } = &cur.0.source {
            out.push(transform.clone());
            let next = parent.clone();
            cur = next;
        }
        out.reverse();
        out
    }

    pub(crate) fn parent(&self) -> Option<(&Matroid, &Transform)> {
        match &self.0.source {
            Source::Derived { parent, transform, .. } => Some((parent, transform)),
            Source::Backend(_) => None,
        }
    }

    // ----- rank -------------------------------------------------------------

    pub fn rank(&self, set: GroundSubset) -> usize {
        assert_eq!(set.ground_size(), self.size(), "subset from a different ground set");
        self.rank_mask(set.bits())
    }

    pub fn try_rank(&self, set: GroundSubset) -> Result<usize> {
        if set.ground_size() != self.size() {
            return Err(Error::GroundMismatch(set.ground_size(), self.size()));
        }
        Ok(self.rank_mask(set.bits()))
    }

    /// Rank of the matroid, `r(E)`.
    pub fn full_rank(&self) -> usize {
        self.rank_mask(full_mask(self.size()))
    }

    #[inline]
    pub fn rank_mask(&self, mask: u32) -> usize {
        if let Some(t) = self.table() {
            return t[mask as usize] as usize;
        }
        if let Some(&r) = self.0.memo.lock().unwrap().get(&mask) {
            return r as usize;
        }
        let r = self.compute(mask);
        self.0.memo.lock().unwrap().insert(mask, r);
        r as usize
    }

    /// Corank `r*(X) = |X| + r(E - X) - r(E)`.
    #[inline]
    pub fn corank_mask(&self, mask: u32) -> usize {
        let full = full_mask(self.size());
        mask.count_ones() as usize + self.rank_mask(full & !mask) - self.rank_mask(full)
    }

    /// The full rank table, built on first use when the ground set is small
    /// enough. Concurrent first callers may build it twice; the first
    /// finished copy wins and no caller ever blocks on another.
    pub(crate) fn table(&self) -> Option<&[u8]> {
        if self.size() > TABLE_CAP {
            return None;
        }
        if let Some(t) = self.0.table.get() {
            return Some(t);
        }
        let t = self.build_table();
        let _ = self.0.table.set(t);
        self.0.table.get().map(|t| &t[..])
    }

    fn build_table(&self) -> Box<[u8]> {
        let n = self.size();
        let mut table = vec![0u8; 1usize << n].into_boxed_slice();
        match &self.0.source {
            Source::Backend(Backend::Linear { field, matrix }) => {
                backend::linear_table(*field, &columns(matrix), &mut table);
            }
            Source::Backend(Backend::Relaxed { base, .. }) => {
                base.table();
                par::fill_chunks(&mut table, |off, chunk| self.fill_direct(off, chunk));
            }
            Source::Derived { parent, transform: Transform::Dual, .. } => {
                parent.table();
                let full = full_mask(n);
                let total = parent.rank_mask(full);
                par::fill_chunks(&mut table, |off, chunk| {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        let m = (off + i) as u32;
                        *slot = (m.count_ones() as usize + parent.rank_mask(full & !m) - total) as u8;
                    }
                });
            }
            Source::Derived { parent, transform, keep } => {
                parent.table();
                let keep = *keep;
                let (base_mask, offset) = match transform {
                    Transform::Contract(c) => (c.bits(), parent.rank_mask(c.bits())),
                    _ => (0, 0),
                };
                par::fill_chunks(&mut table, |off, chunk| {
                    // submasks of `keep` in increasing order track child masks
                    let mut s = deposit(off as u32, keep);
                    for slot in chunk.iter_mut() {
                        *slot = (parent.rank_mask(s | base_mask) - offset) as u8;
                        s = ((s | !keep).wrapping_add(1)) & keep;
                    }
                });
            }
            Source::Backend(_) => {
                par::fill_chunks(&mut table, |off, chunk| self.fill_direct(off, chunk));
            }
        }
        table
    }

    fn fill_direct(&self, off: usize, chunk: &mut [u8]) {
        for (i, slot) in chunk.iter_mut().enumerate() {
            *slot = self.compute((off + i) as u32);
        }
    }

    /// Rank without consulting this matroid's own cache.
    fn compute(&self, mask: u32) -> u8 {
        match &self.0.source {
            Source::Backend(Backend::Uniform { rank, .. }) => (mask.count_ones() as usize).min(*rank) as u8,
            Source::Backend(Backend::Graphic { vertices, edges }) => backend::graphic_rank(*vertices, edges, mask),
            Source::Backend(Backend::Linear { field, matrix }) => backend::linear_rank(*field, &columns(matrix), mask),
            Source::Backend(Backend::Relaxed { base, set }) => {
                (base.rank_mask(mask) + usize::from(mask == set.bits())) as u8
            }
            Source::Derived { parent, transform, keep } => {
                let lifted = deposit(mask, *keep);
                match transform {
                    Transform::Dual => {
                        let full = full_mask(self.size());
                        (mask.count_ones() as usize + parent.rank_mask(full & !mask) - parent.rank_mask(full)) as u8
                    }
                    Transform::Contract(c) => (parent.rank_mask(lifted | c.bits()) - parent.rank_mask(c.bits())) as u8,
                    Transform::Delete(_) => parent.rank_mask(lifted) as u8,
                }
            }
        }
    }

    // ----- derived matroids -------------------------------------------------

    pub fn dual(&self) -> Matroid {
        Self::build(
            self.0.labels.clone(),
            Source::Derived { parent: self.clone(), transform: Transform::Dual, keep: full_mask(self.size()) },
        )
    }

    fn remove(&self, set: GroundSubset, transform: Transform) -> Matroid {
        let keep = set.complement().bits();
        let labels = set.complement().iter().map(|e| self.0.labels[e]).collect();
        Self::build(labels, Source::Derived { parent: self.clone(), transform, keep })
    }

    pub fn delete(&self, set: GroundSubset) -> Result<Matroid> {
        self.check_subset(set)?;
        Ok(if set.is_empty() { self.clone() } else { self.remove(set, Transform::Delete(set)) })
    }

    pub fn contract(&self, set: GroundSubset) -> Result<Matroid> {
        self.check_subset(set)?;
        Ok(if set.is_empty() { self.clone() } else { self.remove(set, Transform::Contract(set)) })
    }

    pub fn delete_element(&self, e: usize) -> Result<Matroid> {
        self.delete(GroundSubset::singleton(e, self.size())?)
    }

    pub fn contract_element(&self, e: usize) -> Result<Matroid> {
        self.contract(GroundSubset::singleton(e, self.size())?)
    }

    /// `M / C \ D`, contracting first.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Matroid> {
        self.check_subset(spec.contract)?;
        self.check_subset(spec.delete)?;
        if !spec.contract.is_disjoint(spec.delete) {
            return Err(Error::OverlappingMinor);
        }
        let contracted = self.contract(spec.contract)?;
        if spec.delete.is_empty() {
            return Ok(contracted);
        }
        let keep = spec.contract.complement().bits();
        let d = GroundSubset::raw(crate::subset::extract(spec.delete.bits(), keep), contracted.size());
        contracted.delete(d)
    }

    /// Restriction `M | X`.
    pub fn restrict(&self, set: GroundSubset) -> Result<Matroid> {
        self.delete(set.complement())
    }

    pub(crate) fn check_subset(&self, set: GroundSubset) -> Result<()> {
        if set.ground_size() != self.size() {
            return Err(Error::GroundMismatch(set.ground_size(), self.size()));
        }
        Ok(())
    }

    /// Rank-function equality under a label correspondence.
    pub fn same_as(&self, other: &Matroid) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let Some(map) = self.0.labels.iter().map(|&l| other.position_of(l)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let n = self.size();
        (0..1u32 << n).all(|m| {
            let mapped = crate::subset::Elements(m).fold(0u32, |acc, e| acc | 1 << map[e]);
            self.rank_mask(m) == other.rank_mask(mapped)
        })
    }

    /// Stable fingerprint of the rank function (positional, ignores labels).
    pub fn rank_digest(&self) -> u64 {
        // FNV-1a over the table
        let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ self.size() as u64;
        for m in 0..1u32 << self.size() {
            h ^= self.rank_mask(m) as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.same_as(other)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("labels", &self.0.labels).field("rank", &self.full_rank()).finish()
    }
}

fn columns(matrix: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let width = matrix.first().map_or(0, Vec::len);
    (0..width).map(|j| matrix.iter().map(|row| row[j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: &Matroid, e: &[usize]) -> GroundSubset {
        m.subset(e).unwrap()
    }

    #[test]
    fn uniform_rank_examples() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(m.rank(m.empty_set()), 0);
        assert_eq!(m.rank(set(&m, &[0, 1, 2])), 2);
        assert_eq!(m.rank(set(&m, &[3])), 1);
    }

    #[test]
    fn k4_has_rank_three() {
        let k4 = named::complete_graph(4).unwrap();
        assert_eq!(k4.rank(k4.ground()), 3);
    }

    #[test]
    fn uniform_dual_and_contraction() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(m.dual(), m);
        let u36 = Matroid::uniform(3, 6).unwrap();
        let c = u36.contract(set(&u36, &[0])).unwrap();
        assert_eq!(c.labels(), &[1, 2, 3, 4, 5]);
        assert_eq!(c, Matroid::uniform(2, 5).unwrap().with_labels(vec![1, 2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn minor_of_u36() {
        let m = Matroid::uniform(3, 6).unwrap();
        let spec = MinorSpec::new(set(&m, &[2, 3]), set(&m, &[4, 5])).unwrap();
        let n = m.minor(&spec).unwrap();
        assert_eq!(n.labels(), &[0, 1]);
        assert_eq!(n, Matroid::uniform(1, 2).unwrap());
    }

    #[test]
    fn overlapping_minor_rejected() {
        let m = Matroid::uniform(3, 6).unwrap();
        assert!(matches!(MinorSpec::new(set(&m, &[1, 2]), set(&m, &[2])), Err(Error::OverlappingMinor)));
        let bad = MinorSpec { contract: set(&m, &[1, 2]), delete: set(&m, &[2]) };
        assert!(matches!(m.minor(&bad), Err(Error::OverlappingMinor)));
    }

    #[test]
    fn double_dual_is_identity() {
        let m = named::wheel(3).unwrap();
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.dual().transforms(), vec![Transform::Dual]);
    }

    #[test]
    fn out_of_range_rejected() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert!(m.subset(&[4]).is_err());
        assert!(m.try_rank(GroundSubset::empty(5)).is_err());
    }

    #[test]
    fn dual_rank_formula() {
        let m = named::wheel(3).unwrap();
        let d = m.dual();
        for x in 0..64u32 {
            assert_eq!(d.rank_mask(x), m.corank_mask(x));
        }
    }

    #[test]
    fn large_ground_uses_memo() {
        let m = Matroid::uniform(10, 22).unwrap();
        assert_eq!(m.full_rank(), 10);
        let d = m.dual().contract(GroundSubset::singleton(0, 22).unwrap()).unwrap();
        assert_eq!(d.full_rank(), 11);
        assert_eq!(d.rank_mask(0b111), 3);
    }
}
