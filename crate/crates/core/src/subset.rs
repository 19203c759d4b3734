//! Subsets of a ground set, stored as bitmasks.
//!
//! Element `i` of a ground set of size `n` corresponds to bit `i`. All set
//! operations keep the result inside the declared ground set, so the
//! complement of a subset never picks up stray high bits.

use std::fmt;

use crate::error::{Error, Result};

/// Hard upper bound on ground-set size supported by the bitmask encoding.
pub const MAX_GROUND: usize = 24;

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    bits: u32,
    n: u8,
}

impl GroundSubset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large");
        GroundSubset { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large");
        GroundSubset { bits: full_mask(n), n: n as u8 }
    }

    pub fn from_bits(bits: u32, n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { size: n, cap: MAX_GROUND });
        }
        if bits & !full_mask(n) != 0 {
            let element = 31 - (bits & !full_mask(n)).leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, size: n });
        }
        Ok(GroundSubset { bits, n: n as u8 })
    }

    /// Trusted constructor for masks already known to fit.
    #[inline]
    pub(crate) fn raw(bits: u32, n: usize) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        GroundSubset { bits, n: n as u8 }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I, n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, size: n });
            }
            bits |= 1 << e;
        }
        Self::from_bits(bits, n)
    }

    pub fn singleton(e: usize, n: usize) -> Result<Self> {
        Self::from_elements([e], n)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ground_size(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < self.n as usize && self.bits >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        assert!(e < self.n as usize, "element {e} out of range");
        GroundSubset { bits: self.bits | 1 << e, n: self.n }
    }

    pub fn without(self, e: usize) -> Self {
        GroundSubset { bits: self.bits & !(1u32.checked_shl(e as u32).unwrap_or(0)), n: self.n }
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        self.check(other);
        GroundSubset { bits: self.bits | other.bits, n: self.n }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        self.check(other);
        GroundSubset { bits: self.bits & other.bits, n: self.n }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        self.check(other);
        GroundSubset { bits: self.bits & !other.bits, n: self.n }
    }

    #[inline]
    pub fn complement(self) -> Self {
        GroundSubset { bits: !self.bits & full_mask(self.n as usize), n: self.n }
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.check(other);
        self.bits & other.bits == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.bits)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    #[inline]
    fn check(self, other: Self) {
        debug_assert_eq!(self.n, other.n, "subsets of different ground sets");
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Subsets are ordered by ground size, then numerically by mask.
impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.bits).cmp(&(other.n, other.bits))
    }
}

impl IntoIterator for GroundSubset {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Ascending iterator over the elements of a mask.
#[derive(Clone)]
pub struct Elements(pub(crate) u32);

impl Iterator for Elements {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(e as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// All submasks of `mask`, in increasing numeric order, starting with 0.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

/// All `k`-element masks over `n` elements, in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let mut cur: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let u = c & c.wrapping_neg();
            let v = c + u;
            Some(v + (((v ^ c) / u) >> 2))
        };
        Some(c as u32)
    })
}

/// Scatter the low bits of `x` into the set positions of `mask`.
#[inline]
pub(crate) fn deposit(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x >> i & 1 == 1 {
            out |= low;
        }
        m ^= low;
        i += 1;
    }
    out
}

/// Gather the bits of `x` at the set positions of `mask` into the low bits.
#[inline]
pub(crate) fn extract(x: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << i;
        }
        m ^= low;
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_stays_in_ground() {
        let s = GroundSubset::from_elements([0, 2], 4).unwrap();
        assert_eq!(s.complement().to_vec(), vec![1, 3]);
        assert_eq!(s.complement().complement(), s);
        assert_eq!(s.len() + s.complement().len(), 4);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(GroundSubset::from_elements([5], 4), Err(Error::ElementOutOfRange { element: 5, size: 4 })));
        assert!(GroundSubset::from_bits(1 << 4, 4).is_err());
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u32> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn k_subset_counts() {
        assert_eq!(k_subsets(6, 3).count(), 20);
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert!(k_subsets(5, 2).all(|m| m.count_ones() == 2 && m < 32));
    }

    #[test]
    fn deposit_extract_inverse() {
        let mask = 0b1101_0110;
        for x in 0..16 {
            assert_eq!(extract(deposit(x, mask), mask), x);
        }
    }

    #[test]
    fn lex_order_of_elements() {
        let a = GroundSubset::from_elements([0, 3], 4).unwrap();
        let b = GroundSubset::from_elements([1, 2], 4).unwrap();
        assert_eq!(a.lex_cmp(b), std::cmp::Ordering::Less);
        assert!(a > b);
    }
}
