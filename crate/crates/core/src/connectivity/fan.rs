//! Fans: element sequences whose consecutive triples alternate between
//! triangles and triads.

use std::collections::{HashMap, HashSet};

use super::is_3_connected;
use crate::error::{Error, Result};
use crate::matroid::{find_isomorphism, named, Matroid, Op};
use crate::subset::GroundSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FanStart {
    Triangle,
    Triad,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    pub elements: Vec<usize>,
    pub starts_with: FanStart,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.elements[0], *self.elements.last().expect("fans have 3+ elements"))
    }

    pub fn set(&self, n: usize) -> GroundSubset {
        GroundSubset::from_elements(self.elements.iter().copied(), n).expect("fan inside ground set")
    }

    pub fn reversed(&self) -> Vec<usize> {
        self.elements.iter().rev().copied().collect()
    }
}

struct Triples {
    triangles: HashSet<u32>,
    triads: HashSet<u32>,
}

impl Triples {
    fn new(m: &Matroid) -> Self {
        Triples {
            triangles: m.triangles().into_iter().map(GroundSubset::bits).collect(),
            triads: m.triads().into_iter().map(GroundSubset::bits).collect(),
        }
    }

    fn kind(&self, a: usize, b: usize, c: usize) -> (bool, bool) {
        let mask = 1u32 << a | 1 << b | 1 << c;
        (self.triangles.contains(&mask), self.triads.contains(&mask))
    }

    /// Whether `next` may follow a triple of kind `prev`.
    fn follows(prev: (bool, bool), next: (bool, bool)) -> bool {
        (!prev.0 || next.1) && (!prev.1 || next.0)
    }
}

/// Literal fan test for an ordered sequence.
pub fn is_fan(m: &Matroid, seq: &[usize]) -> bool {
    let n = m.size();
    if seq.len() < 3 || seq.iter().any(|&e| e >= n) {
        return false;
    }
    let distinct: HashSet<_> = seq.iter().collect();
    if distinct.len() != seq.len() {
        return false;
    }
    let t = Triples::new(m);
    let first = t.kind(seq[0], seq[1], seq[2]);
    if !(first.0 || first.1) {
        return false;
    }
    seq.windows(4).all(|w| Triples::follows(t.kind(w[0], w[1], w[2]), t.kind(w[1], w[2], w[3])))
}

/// All inclusionwise-maximal fans, each as its lexicographically smallest
/// valid ordering, sorted by that ordering.
pub fn find_fans(m: &Matroid) -> Vec<Fan> {
    let n = m.size();
    let t = Triples::new(m);
    let mut best: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut seq = Vec::with_capacity(n);
    for tri in t.triangles.iter().chain(t.triads.iter()).copied().collect::<HashSet<_>>() {
        let elems = GroundSubset::raw(tri, n).to_vec();
        for (a, b, c) in orderings(&elems) {
            seq.clear();
            seq.extend([a, b, c]);
            extend(&t, &mut seq, tri, t.kind(a, b, c), &mut best);
        }
    }
    let sets: Vec<u32> = best.keys().copied().collect();
    let mut out: Vec<Fan> = best
        .into_iter()
        .filter(|(mask, _)| !sets.iter().any(|&o| o != *mask && o & mask == *mask))
        .map(|(_, elements)| {
            let kind = t.kind(elements[0], elements[1], elements[2]);
            Fan { starts_with: if kind.0 { FanStart::Triangle } else { FanStart::Triad }, elements }
        })
        .collect();
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out
}

fn orderings(e: &[usize]) -> [(usize, usize, usize); 6] {
    let (a, b, c) = (e[0], e[1], e[2]);
    [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
}

fn extend(t: &Triples, seq: &mut Vec<usize>, used: u32, last: (bool, bool), best: &mut HashMap<u32, Vec<usize>>) {
    best.entry(used)
        .and_modify(|cur| {
            if seq.as_slice() < cur.as_slice() {
                cur.clone_from(seq);
            }
        })
        .or_insert_with(|| seq.clone());
    let (p, q) = (seq[seq.len() - 2], seq[seq.len() - 1]);
    let candidates: Vec<u32> = t
        .triangles
        .iter()
        .chain(t.triads.iter())
        .filter(|&&m| m & (1 << p | 1 << q) == (1 << p | 1 << q) && m & used == (1 << p | 1 << q))
        .map(|&m| m & !(1 << p | 1 << q))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    for bit in candidates {
        let x = bit.trailing_zeros() as usize;
        let next = t.kind(p, q, x);
        if Triples::follows(last, next) {
            seq.push(x);
            extend(t, seq, used | bit, next, best);
            seq.pop();
        }
    }
}

/// True when `m` is isomorphic to the wheel or the whirl of its rank.
/// Limited to ground sets of at most 12 elements.
pub fn is_wheel_or_whirl(m: &Matroid) -> Result<bool> {
    let n = m.size();
    if n > 12 {
        return Err(Error::GroundSetTooLarge { size: n, cap: 12 });
    }
    if n < 4 || n % 2 == 1 || m.full_rank() != n / 2 {
        return Ok(false);
    }
    let r = n / 2;
    Ok(find_isomorphism(m, &named::wheel(r)?).is_some() || find_isomorphism(m, &named::whirl(r)?).is_some())
}

/// For a maximal fan of length at least 4 meeting `N` in at most one
/// element, an end `x` and an operation leaving a 3-connected matroid that
/// keeps `N`. Ends are tried first-end first, deletion before contraction.
pub fn fan_end_removal(m: &Matroid, n: &Matroid, fan: &Fan) -> Result<(usize, Op)> {
    let size = m.size();
    if fan.len() < 4 || !is_fan(m, &fan.elements) {
        return Err(Error::precondition("not a fan of length at least 4"));
    }
    let set = fan.set(size);
    if !find_fans(m).iter().any(|f| f.set(size) == set) {
        return Err(Error::precondition("fan is not maximal"));
    }
    if !is_3_connected(m) {
        return Err(Error::precondition("matroid is not 3-connected"));
    }
    if is_wheel_or_whirl(m)? {
        return Err(Error::precondition("matroid is a wheel or a whirl"));
    }
    if !n.loops().is_empty() || !n.coloops().is_empty() {
        return Err(Error::precondition("N has loops or coloops"));
    }
    let en = m.subset_from_labels(n.labels())?;
    if en.intersection(set).len() > 1 {
        return Err(Error::precondition("fan meets N in more than one element"));
    }
    let (first, last) = fan.ends();
    for x in [first, last] {
        for op in [Op::Delete, Op::Contract] {
            let child = m.remove_element(op, x)?;
            if is_3_connected(&child) && child.keeps(n)? {
                return Ok((x, op));
            }
        }
    }
    Err(Error::claim(format!("no end of fan {:?} can be removed", fan.elements)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u24_has_one_maximal_fan() {
        let u = Matroid::uniform(2, 4).unwrap();
        let fans = find_fans(&u);
        assert_eq!(fans.len(), 1);
        assert_eq!(fans[0].elements, vec![0, 1, 2, 3]);
    }

    #[test]
    fn u25_fans_are_its_triangles() {
        let fans = find_fans(&Matroid::uniform(2, 5).unwrap());
        assert_eq!(fans.len(), 10);
        assert!(fans.iter().all(|f| f.len() == 3 && f.starts_with == FanStart::Triangle));
    }

    #[test]
    fn fan_graph_has_a_long_fan() {
        let g = named::fan_graph(3).unwrap();
        let fans = find_fans(&g);
        assert!(fans.iter().any(|f| f.len() >= 4));
        for f in &fans {
            assert!(is_fan(&g, &f.elements));
            assert!(is_fan(&g, &f.reversed()));
        }
    }

    #[test]
    fn wheel_fans_wrap_around() {
        let w = named::wheel(4).unwrap();
        let fans = find_fans(&w);
        assert!(fans.iter().all(|f| is_fan(&w, &f.elements)));
        assert!(fans.iter().any(|f| f.len() >= 7));
    }

    #[test]
    fn wheel_and_whirl_recognition() {
        assert!(is_wheel_or_whirl(&Matroid::uniform(2, 4).unwrap()).unwrap());
        assert!(is_wheel_or_whirl(&named::complete_graph(4).unwrap()).unwrap());
        assert!(is_wheel_or_whirl(&named::whirl(4).unwrap()).unwrap());
        assert!(!is_wheel_or_whirl(&Matroid::uniform(3, 6).unwrap()).unwrap());
        assert!(!is_wheel_or_whirl(&named::prism().unwrap()).unwrap());
    }

    #[test]
    fn not_a_fan() {
        let u = Matroid::uniform(3, 6).unwrap();
        assert!(!is_fan(&u, &[0, 1, 2]));
        assert!(!is_fan(&Matroid::uniform(2, 4).unwrap(), &[0, 1, 1]));
    }
}
