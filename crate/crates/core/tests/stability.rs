//! Bubble-level div stability and its constructive witnesses.

use fe_complex::bernstein::Geometry;
use fe_complex::decomposition::Smoothness3 as S;
use fe_complex::rational::{frac, q};
use fe_complex::stability::{bubble_div_rank, smallest_nontrivial_k, table1, table1_rows, witnesses};

#[test]
fn table_rows_at_their_smallest_degrees() {
    let g = Geometry::reference(3);
    for (row, v) in table1(None, &g, true).unwrap() {
        assert_eq!(v.stable, row.expected_stable, "{:?} k={}", row, v.k);
        assert!(v.image_contained);
        if v.stable {
            assert!(v.connected);
            assert_eq!(v.rank, v.target_dim);
        }
        if let Some(ws) = &v.witnesses {
            assert!(ws.iter().all(|w| w.verified()));
        }
    }
}

#[test]
fn unstable_row_fails_at_every_degree() {
    let g = Geometry::reference(3);
    for k in 3..=5 {
        let v = bubble_div_rank(k, S::new(0, 0, -1), S::uniform(-1), &g).unwrap();
        assert!(!v.stable, "k={k}");
        assert!(v.rank < v.target_dim);
    }
}

#[test]
fn witnesses_imply_stability() {
    let g = Geometry::new(vec![
        vec![q(0), q(0), q(0)],
        vec![frac(3, 2), q(0), q(0)],
        vec![q(1), q(2), q(0)],
        vec![frac(1, 3), q(1), frac(5, 4)],
    ])
    .unwrap();
    for row in table1_rows().into_iter().take(3) {
        let k0 = smallest_nontrivial_k(row.r2, row.r3);
        for k in k0..=k0 + 1 {
            let ws = witnesses(k, row.r2, row.r3, &g).unwrap();
            if !ws.is_empty() && ws.iter().all(|w| w.verified()) {
                assert!(bubble_div_rank(k, row.r2, row.r3, &g).unwrap().stable, "{:?} k={k}", row);
            }
        }
    }
}

#[test]
fn rank_is_invariant_under_affine_maps() {
    let reference = Geometry::reference(3);
    let moved = Geometry::new(vec![
        vec![q(1), q(-1), q(2)],
        vec![frac(7, 3), q(0), q(1)],
        vec![q(0), frac(5, 2), q(2)],
        vec![q(2), q(1), frac(-1, 2)],
    ])
    .unwrap();
    for (k, r2, r3) in [(3, S::new(0, -1, -1), S::uniform(-1)), (4, S::new(0, 0, -1), S::uniform(-1)), (4, S::new(1, 0, -1), S::new(0, -1, -1))] {
        let a = bubble_div_rank(k, r2, r3, &reference).unwrap();
        let b = bubble_div_rank(k, r2, r3, &moved).unwrap();
        assert_eq!((a.rank, a.target_dim, a.stable), (b.rank, b.target_dim, b.stable));
    }
}
