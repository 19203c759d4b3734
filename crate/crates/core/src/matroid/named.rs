//! Named matroids and graphs.
//!
//! Wheel elements alternate spoke, rim, spoke, rim, ... so that the ground
//! order `0, 1, ..., 2r-1` is itself a fan: `{s_i, r_i, s_{i+1}}` is a
//! triangle and `{r_i, s_{i+1}, r_{i+1}}` a triad.

use super::Matroid;
use crate::error::{Error, Result};
use crate::subset::GroundSubset;

pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edges
}

pub fn complete_graph(n: usize) -> Result<Matroid> {
    Matroid::graphic(n, complete_graph_edges(n))
}

/// Wheel graph on a hub (vertex 0) and an `r`-cycle rim (vertices 1..=r).
pub fn wheel_edges(r: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(2 * r);
    for i in 1..=r {
        edges.push((0, i));
        edges.push((i, i % r + 1));
    }
    edges
}

/// The rim of the wheel in the element order of [`wheel`].
pub fn wheel_rim(r: usize) -> GroundSubset {
    GroundSubset::from_elements((0..r).map(|i| 2 * i + 1), 2 * r).expect("rim fits")
}

/// Cycle matroid of the wheel with `r >= 2` spokes.
pub fn wheel(r: usize) -> Result<Matroid> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("wheel needs at least 2 spokes, got {r}")));
    }
    Matroid::graphic(r + 1, wheel_edges(r))
}

/// The whirl: the wheel with its rim relaxed.
pub fn whirl(r: usize) -> Result<Matroid> {
    wheel(r)?.relax(wheel_rim(r))
}

/// A path on `n` vertices plus an apex joined to every path vertex.
///
/// Edges are ordered apex-spoke, path edge, apex-spoke, ... which is a fan.
pub fn fan_graph_edges(n: usize) -> Vec<(usize, usize)> {
    let apex = n;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((apex, i));
        if i + 1 < n {
            edges.push((i, i + 1));
        }
    }
    edges
}

pub fn fan_graph(n: usize) -> Result<Matroid> {
    Matroid::graphic(n + 1, fan_graph_edges(n))
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
}

pub fn prism() -> Result<Matroid> {
    Matroid::graphic(6, prism_edges())
}

/// `K_5` minus the edge `{3, 4}`.
pub fn k5_minus_edge() -> Result<Matroid> {
    let edges = complete_graph_edges(5).into_iter().filter(|&e| e != (3, 4)).collect();
    Matroid::graphic(5, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_sizes_and_rank() {
        for r in 2..=5 {
            let w = wheel(r).unwrap();
            assert_eq!(w.size(), 2 * r);
            assert_eq!(w.full_rank(), r);
        }
    }

    #[test]
    fn rim_is_a_circuit_hyperplane() {
        for r in 2..=5 {
            let w = wheel(r).unwrap();
            let rim = wheel_rim(r);
            assert!(w.is_circuit(rim));
            assert!(w.is_hyperplane(rim));
        }
    }

    #[test]
    fn whirl_two_is_u24() {
        assert_eq!(whirl(2).unwrap(), Matroid::uniform(2, 4).unwrap());
    }

    #[test]
    fn k4_is_wheel_three() {
        assert_eq!(complete_graph(4).unwrap().size(), 6);
        assert_eq!(wheel(3).unwrap().full_rank(), 3);
    }

    #[test]
    fn named_graph_shapes() {
        assert_eq!(prism().unwrap().size(), 9);
        assert_eq!(k5_minus_edge().unwrap().size(), 9);
        assert_eq!(fan_graph(3).unwrap().size(), 5);
    }
}
