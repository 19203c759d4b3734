use proptest::prelude::*;

use matroidlab::connectivity::{is_3_connected, k_separations, lambda_mask};
use matroidlab::corpus::corpus;
use matroidlab::matroid::io;
use matroidlab::tangle::{
    branch_width, branch_width_by_decomposition, decomposition_width, enumerate_tangles, validate_tangle,
};
use matroidlab::{GroundSubset, Matroid, MinorSpec};

/// `[I_r | A]` over GF(2) or GF(3).
fn linear() -> impl Strategy<Value = Matroid> {
    (prop_oneof![Just(2u8), Just(3u8)], 2usize..=4, 2usize..=4).prop_flat_map(|(p, r, extra)| {
        proptest::collection::vec(proptest::collection::vec(0..p, extra), r).prop_map(move |a| {
            let rows = a
                .into_iter()
                .enumerate()
                .map(|(i, tail)| {
                    let mut row: Vec<u8> = (0..r).map(|j| u8::from(i == j)).collect();
                    row.extend(tail);
                    row
                })
                .collect();
            Matroid::linear(p, rows).unwrap()
        })
    })
}

fn small_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![(1usize..=7).prop_flat_map(|n| (0..=n).prop_map(move |r| Matroid::uniform(r, n).unwrap())), linear(),]
}

/// A matroid with a disjoint contract/delete pair.
fn with_minor() -> impl Strategy<Value = (Matroid, MinorSpec)> {
    small_matroid().prop_flat_map(|m| {
        let n = m.size();
        let full = full_mask(n);
        (Just(m), 0..=full, 0..=full).prop_map(move |(m, c, d)| {
            let d = d & !c;
            (m, MinorSpec::new(GroundSubset::from_bits(c, n).unwrap(), GroundSubset::from_bits(d, n).unwrap()).unwrap())
        })
    })
}

fn full_mask(n: usize) -> u32 {
    GroundSubset::full(n).bits()
}

fn lam(m: &Matroid, x: u32) -> usize {
    let full = full_mask(m.size());
    m.rank_mask(x) + m.rank_mask(full & !x) - m.full_rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_is_submodular_and_bounded(m in small_matroid()) {
        let full = full_mask(m.size());
        for x in 0..=full {
            prop_assert!(m.rank_mask(x) <= x.count_ones() as usize);
            for y in 0..=full {
                prop_assert!(m.rank_mask(x) + m.rank_mask(y) >= m.rank_mask(x | y) + m.rank_mask(x & y));
            }
        }
    }

    #[test]
    fn dual_rank_formula(m in small_matroid()) {
        let d = m.dual();
        let full = full_mask(m.size());
        for x in 0..=full {
            prop_assert_eq!(d.rank_mask(x), x.count_ones() as usize + m.rank_mask(full & !x) - m.full_rank());
            prop_assert_eq!(d.dual().rank_mask(x), m.rank_mask(x));
        }
    }

    #[test]
    fn lambda_symmetric_self_dual_submodular(m in small_matroid()) {
        let d = m.dual();
        let full = full_mask(m.size());
        for x in 0..=full {
            prop_assert_eq!(lambda_mask(&m, x), lam(&m, x));
            prop_assert_eq!(lambda_mask(&m, x), lambda_mask(&m, full & !x));
            prop_assert_eq!(lambda_mask(&m, x), lambda_mask(&d, x));
        }
        for x in (0..=full).step_by(3) {
            for y in 0..=full {
                prop_assert!(lam(&m, x) + lam(&m, y) >= lam(&m, x | y) + lam(&m, x & y));
            }
        }
    }

    #[test]
    fn minor_dual_swaps_operations((m, spec) in with_minor()) {
        let a = m.minor(&spec).unwrap().dual();
        let b = m.dual().minor(&spec.dual()).unwrap();
        prop_assert!(a.same_as(&b));
        prop_assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn has_minor_finds_every_minor((m, spec) in with_minor()) {
        let n = m.minor(&spec).unwrap();
        let found = m.has_minor(&n).unwrap();
        prop_assert!(found.is_some());
        prop_assert!(m.minor(&found.unwrap()).unwrap().same_as(&n));
    }

    #[test]
    fn json_round_trip((m, spec) in with_minor()) {
        let n = m.minor(&spec).unwrap();
        let back = io::from_json(&io::to_json(&n)).unwrap();
        prop_assert!(back.same_as(&n));
        prop_assert_eq!(back.labels(), n.labels());
    }

    #[test]
    fn closure_is_idempotent_and_extensive(m in small_matroid(), x in any::<u32>()) {
        let n = m.size();
        let s = GroundSubset::from_bits(x & full_mask(n), n).unwrap();
        let c = m.closure(s);
        prop_assert!(s.is_subset(c));
        prop_assert_eq!(m.closure(c), c);
        prop_assert_eq!(m.rank(c), m.rank(s));
    }

    #[test]
    fn separations_match_definition(m in small_matroid(), k in 1usize..=3) {
        let n = m.size();
        let full = full_mask(n);
        let brute = (0..=full)
            .filter(|&x| {
                let s = x.count_ones() as usize;
                s >= k && n - s >= k && lam(&m, x) < k
            })
            .count();
        // each partition is listed once, by either side
        let listed = k_separations(&m, k, false).len();
        prop_assert_eq!(listed * 2, brute);
        let connected = (1..=2).all(|j| k_separations(&m, j, false).is_empty());
        prop_assert_eq!(is_3_connected(&m), connected);
    }

    #[test]
    fn enumerated_tangles_are_valid(m in small_matroid(), order in 1usize..=3) {
        for t in enumerate_tangles(&m, order).unwrap() {
            prop_assert!(validate_tangle(&m, t.members(), order).unwrap().is_valid());
            let rho = t.matroid();
            prop_assert!(rho.rank_axiom_violation().is_none());
            prop_assert!(rho.rank(m.ground()) <= order);
        }
    }

    #[test]
    fn branch_width_dual_and_decomposition(m in small_matroid()) {
        let bw = branch_width(&m).unwrap();
        prop_assert_eq!(branch_width(&m.dual()).unwrap(), bw);
        let (width, tree) = branch_width_by_decomposition(&m).unwrap();
        prop_assert_eq!(width, bw);
        prop_assert_eq!(decomposition_width(&m, &tree).unwrap(), bw);
    }
}

#[test]
fn corpus_is_deterministic_and_dual_closed() {
    let a = corpus(1, 7).unwrap();
    let b = corpus(1, 7).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.name, y.name);
        assert!(x.matroid.same_as(&y.matroid));
    }
    for e in &a {
        let d = e.matroid.dual();
        assert!(a.iter().any(|o| o.matroid.size() == d.size() && o.matroid.same_as(&d)), "{} lacks its dual", e.name);
    }
    assert!(a.iter().any(|e| e.matroid.same_as(&Matroid::uniform(2, 4).unwrap())));
}
