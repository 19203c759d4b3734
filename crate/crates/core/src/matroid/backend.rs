//! Rank evaluation for the concrete matroid backends.

use crate::subset::Elements;

/// Rank of an edge set in a multigraph: vertices minus components spanned.
pub(crate) fn graphic_rank(vertices: usize, edges: &[(usize, usize)], mask: u32) -> u8 {
    let mut parent: Vec<u16> = (0..vertices as u16).collect();
    fn find(p: &mut [u16], mut x: u16) -> u16 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    let mut rank = 0u8;
    for e in Elements(mask) {
        let (u, v) = edges[e];
        let (a, b) = (find(&mut parent, u as u16), find(&mut parent, v as u16));
        if a != b {
            parent[a as usize] = b;
            rank += 1;
        }
    }
    rank
}

/// Row-reduced basis over GF(p), p prime and small.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    p: u8,
    vectors: Vec<(usize, Vec<u8>)>,
}

impl Basis {
    pub(crate) fn new(p: u8) -> Self {
        Basis { p, vectors: Vec::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Reduce `v` against the basis; keep it when independent.
    pub(crate) fn insert(&mut self, v: &[u8]) -> bool {
        let p = self.p as u16;
        let mut w: Vec<u8> = v.to_vec();
        for (pivot, b) in &self.vectors {
            let c = w[*pivot];
            if c != 0 {
                // b is normalized: b[pivot] == 1, so subtract c * b.
                for (wi, &bi) in w.iter_mut().zip(b) {
                    *wi = ((*wi as u16 + (p - c as u16) * bi as u16) % p) as u8;
                }
            }
        }
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse(w[pivot], self.p);
        for wi in w.iter_mut() {
            *wi = ((*wi as u16 * inv as u16) % p) as u8;
        }
        // keep the basis fully reduced at the new pivot
        for (_, b) in self.vectors.iter_mut() {
            let c = b[pivot];
            if c != 0 {
                for (bi, &wi) in b.iter_mut().zip(&w) {
                    *bi = ((*bi as u16 + (p - c as u16) * wi as u16) % p) as u8;
                }
            }
        }
        self.vectors.push((pivot, w));
        true
    }
}

fn inverse(x: u8, p: u8) -> u8 {
    (1..p).find(|&y| (x as u16 * y as u16) % p as u16 == 1).expect("nonzero element of a prime field")
}

pub(crate) fn linear_rank(p: u8, columns: &[Vec<u8>], mask: u32) -> u8 {
    let mut basis = Basis::new(p);
    for e in Elements(mask) {
        basis.insert(&columns[e]);
    }
    basis.len() as u8
}

/// Fill a complete rank table for a linear matroid by depth-first extension,
/// so each subset costs one basis insertion.
pub(crate) fn linear_table(p: u8, columns: &[Vec<u8>], table: &mut [u8]) {
    fn visit(mask: u32, next: usize, basis: &Basis, columns: &[Vec<u8>], table: &mut [u8]) {
        table[mask as usize] = basis.len() as u8;
        for e in next..columns.len() {
            let mut b = basis.clone();
            b.insert(&columns[e]);
            visit(mask | 1 << e, e + 1, &b, columns, table);
        }
    }
    visit(0, 0, &Basis::new(p), columns, table);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_graphic_rank() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(graphic_rank(4, &edges, 0b111111), 3);
        // triangle 0-1-2
        assert_eq!(graphic_rank(4, &edges, 0b001011), 2);
        assert_eq!(graphic_rank(4, &edges, 0), 0);
    }

    #[test]
    fn gf3_rank_differs_from_gf2() {
        // columns (1,1), (1,2): independent over GF(3); over GF(2) 2 == 0.
        let cols = vec![vec![1, 1], vec![1, 2]];
        assert_eq!(linear_rank(3, &cols, 0b11), 2);
        let cols2 = vec![vec![1, 1], vec![1, 0]];
        assert_eq!(linear_rank(2, &cols2, 0b11), 2);
        let cols3 = vec![vec![1, 1], vec![1, 1], vec![0, 0]];
        assert_eq!(linear_rank(2, &cols3, 0b111), 1);
    }

    #[test]
    fn table_matches_direct() {
        let cols = vec![vec![1, 0, 2], vec![0, 1, 1], vec![1, 1, 0], vec![2, 2, 0], vec![1, 2, 1]];
        let mut table = vec![0u8; 32];
        linear_table(3, &cols, &mut table);
        for m in 0..32u32 {
            assert_eq!(table[m as usize], linear_rank(3, &cols, m), "mask {m:b}");
        }
    }
}
