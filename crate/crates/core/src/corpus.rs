//! Deterministic test corpus.
//!
//! Built in a fixed order: uniform matroids, wheels and whirls, named graphs
//! (K4, K5 minus an edge, the prism, K5), fan graphs, then random `[I | A]`
//! matrices over GF(2) and GF(3) drawn from [`Lcg`]. The dual of every entry is appended, and entries whose rank
//! tables coincide position by position are dropped after the first.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matroid::{named, Matroid};

/// Largest ground set the corpus will generate.
pub const CORPUS_CAP: usize = 12;

/// Random matrices drawn per field.
pub const MATRICES_PER_FIELD: usize = 6;

/// 64-bit linear congruential generator (Knuth's MMIX constants).
///
/// `next` advances `state = state * 6364136223846793005 + 1442695040888963407`
/// (wrapping) and returns `state >> 33`. The initial state is the seed.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        self.state >> 33
    }

    /// `next % bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
}

/// A random `r x (n - r)` block `A` over GF(`p`), giving `[I | A]`.
///
/// Draws `n = 4 + next % (max_n - 3)`, then `r = 2 + next % (n - 3)`, then
/// the entries of `A` row by row, each `next % p`.
pub fn random_matrix(rng: &mut Lcg, p: u8, max_n: usize) -> Vec<Vec<u8>> {
    let n = 4 + rng.below(max_n as u64 - 3) as usize;
    let r = 2 + rng.below(n as u64 - 3) as usize;
    let a: Vec<Vec<u8>> = (0..r).map(|_| (0..n - r).map(|_| rng.below(p as u64) as u8).collect()).collect();
    (0..r)
        .map(|i| {
            let mut row: Vec<u8> = (0..r).map(|j| u8::from(i == j)).collect();
            row.extend_from_slice(&a[i]);
            row
        })
        .collect()
}

/// The corpus for `(seed, max_n)`. Only the random matrices depend on the
/// seed.
pub fn corpus(seed: u64, max_n: usize) -> Result<Vec<CorpusEntry>> {
    if max_n > CORPUS_CAP {
        return Err(Error::GroundSetTooLarge { size: max_n, cap: CORPUS_CAP });
    }
    let mut base: Vec<CorpusEntry> = Vec::new();
    let mut push = |name: String, m: Matroid| base.push(CorpusEntry { name, matroid: m });
    for n in 1..=max_n {
        for r in 0..=n {
            push(format!("U({r},{n})"), Matroid::uniform(r, n)?);
        }
    }
    for r in 2..=max_n / 2 {
        push(format!("wheel({r})"), named::wheel(r)?);
        push(format!("whirl({r})"), named::whirl(r)?);
    }
    if max_n >= 6 {
        push("K4".into(), named::complete_graph(4)?);
    }
    if max_n >= 9 {
        push("K5-e".into(), named::k5_minus_edge()?);
        push("prism".into(), named::prism()?);
    }
    if max_n >= 10 {
        push("K5".into(), named::complete_graph(5)?);
    }
    for p in 2..=max_n.div_ceil(2) {
        push(format!("fan({p})"), named::fan_graph(p)?);
    }
    if max_n >= 4 {
        let mut rng = Lcg::new(seed);
        for field in [2u8, 3] {
            for i in 0..MATRICES_PER_FIELD {
                let matrix = random_matrix(&mut rng, field, max_n);
                push(format!("GF({field})#{i}"), Matroid::linear(field, matrix)?);
            }
        }
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |name: String, m: Matroid, out: &mut Vec<CorpusEntry>| {
        if seen.insert((m.size(), m.rank_digest())) {
            out.push(CorpusEntry { name, matroid: m });
        }
    };
    for e in base {
        let dual = e.matroid.dual();
        let dual_name = format!("dual({})", e.name);
        keep(e.name, e.matroid, &mut out);
        keep(dual_name, dual, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_first_values() {
        // seed 0: the first state is the increment itself
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u64(), 1_442_695_040_888_963_407 >> 33);
        let mut a = Lcg::new(7);
        let mut b = Lcg::new(7);
        assert!((0..20).all(|_| a.next_u64() == b.next_u64()));
    }

    #[test]
    fn contains_u24_and_is_dual_closed() {
        let c = corpus(1, 6).unwrap();
        assert!(c.iter().any(|e| e.name == "U(2,4)"));
        for e in &c {
            let d = e.matroid.dual();
            assert!(
                c.iter().any(|f| f.matroid.size() == d.size() && f.matroid.rank_digest() == d.rank_digest()),
                "dual of {} missing",
                e.name
            );
        }
    }

    #[test]
    fn deterministic() {
        let a = corpus(3, 8).unwrap();
        let b = corpus(3, 8).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.name == y.name && x.matroid.rank_digest() == y.matroid.rank_digest()));
    }

    #[test]
    fn random_matrices_have_identity_prefix() {
        let mut g = Lcg::new(1);
        for _ in 0..20 {
            let m = random_matrix(&mut g, 3, 10);
            let r = m.len();
            let n = m[0].len();
            assert!((2..=n - 2).contains(&r) && (4..=10).contains(&n));
            assert!((0..r).all(|i| (0..r).all(|j| m[i][j] == u8::from(i == j))));
        }
    }
}
