//! Invariants checked on randomly drawn parameters.

mod common;

use fe_complex::bernstein::{BernsteinPoly, Field, Geometry};
use fe_complex::complex::{alternating_sum_check, polynomial_alternating_sum, Triangulation};
use fe_complex::decomposition::{bubble_nodes, decompose3, face_bubble_nodes, decompose_nd, Smoothness3, SmoothnessN};
use fe_complex::elements::dimension::{enumerated_counts, hdiv_counts, scalar_counts};
use fe_complex::elements::{build_table, verify_unisolvence, ElementSpec, Frames, NormalRule};
use fe_complex::lattice;
use fe_complex::linalg::Matrix;
use fe_complex::rational::{self, binom, frac, q, Q};
use fe_complex::stability::{bubbles_are_mean_free, witnesses};
use num_traits::Zero;
use proptest::prelude::*;

fn smoothness(max_f: i32) -> impl Strategy<Value = Smoothness3> {
    (-1..=max_f)
        .prop_flat_map(|f| {
            let e0 = (2 * f).max(-1);
            (Just(f), e0..=e0 + 2)
        })
        .prop_flat_map(|(f, e)| {
            let v0 = (2 * e).max(-1);
            (Just(f), Just(e), v0..=v0 + 2)
        })
        .prop_map(|(f, e, v)| Smoothness3::new(v, e, f))
}

fn with_degree(r: Smoothness3, extra: u32) -> u32 {
    (2 * r.v + 1).max(1) as u32 + extra
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| frac(a, b))
}

fn poly(n: usize, k: u32) -> impl Strategy<Value = BernsteinPoly> {
    let nodes = lattice::enumerate(n, k);
    proptest::collection::vec(small_rational(), nodes.len()).prop_map(move |cs| {
        let mut p = BernsteinPoly::zero(n, k);
        for (alpha, c) in nodes.iter().zip(cs) {
            p.add_term(alpha.clone(), c);
        }
        p
    })
}

fn simplex3() -> impl Strategy<Value = Geometry> {
    any::<u64>().prop_map(|seed| Geometry::new(common::random_simplex(3, seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_decomposition_is_a_partition(r in smoothness(1), extra in 0u32..3) {
        let k = with_degree(r, extra);
        let d = decompose3(k, r).unwrap();
        prop_assert!(d.is_partition());
        let total: usize = d.pieces.iter().map(|p| p.nodes.len()).sum();
        prop_assert_eq!(total as i64, binom(k as i64 + 3, 3));
    }

    #[test]
    fn closed_form_counts_match_enumeration(r in smoothness(1), extra in 0u32..3) {
        prop_assume!(r.f >= 0);
        let k = with_degree(r, extra);
        let c = scalar_counts(k, r);
        prop_assert_eq!(enumerated_counts(k, r).unwrap(), c);
        prop_assert_eq!(4 * c[0] + 6 * c[1] + 4 * c[2] + c[3], binom(k as i64 + 3, 3));
    }

    #[test]
    fn hdiv_counts_redistribute_the_vector_space(r in smoothness(0), extra in 0u32..3) {
        let r = Smoothness3::new(r.v, r.e, -1);
        let k = with_degree(r.plus(), extra);
        let c = hdiv_counts(k, r);
        prop_assert_eq!(4 * c[0] + 6 * c[1] + 4 * c[2] + c[3], 3 * binom(k as i64 + 3, 3));
        let table = build_table(&ElementSpec::Hdiv { k, r }, &Geometry::reference(3), &Frames::default()).unwrap();
        let by_dim = table.counts_by_dim();
        for dim in 0..4 {
            prop_assert!(by_dim[dim].iter().all(|&n| n as i64 == c[dim]), "dim {} {:?} vs {:?}", dim, by_dim[dim], c);
        }
    }

    #[test]
    fn nd_decomposition_is_a_partition(n in 1usize..=4, m in 0i32..=1, extra in 0u32..3) {
        // r_ℓ = 2^{n-1-ℓ}(m+1) - 1 for ℓ < n and r_n = 0 satisfy the chain conditions.
        let mut r: Vec<i32> = (0..n).map(|l| (m + 1) * (1 << (n - 1 - l)) - 1).collect();
        r.push(0);
        let k = (2 * r[0] + 1).max(1) as u32 + extra;
        let d = decompose_nd(n, k, &SmoothnessN::new(r)).unwrap();
        prop_assert!(d.is_partition());
    }

    #[test]
    fn integral_formula(n in 1usize..=4, k in 0u32..=6, pick in any::<prop::sample::Index>()) {
        let nodes = lattice::enumerate(n, k);
        let alpha = nodes[pick.index(nodes.len())].clone();
        let g = Geometry::reference(n);
        let p = BernsteinPoly::monomial(alpha.clone(), q(1));
        let expected = rational::from_big(rational::multi_factorial(&alpha) * rational::factorial(n as u32))
            / rational::from_big(rational::factorial(k + n as u32))
            * g.volume();
        prop_assert_eq!(p.integrate(&g), expected);
    }

    #[test]
    fn product_and_raising_respect_evaluation(a in poly(3, 2), b in poly(3, 3), x in proptest::collection::vec(small_rational(), 3)) {
        let total = x.iter().fold(Q::zero(), |s, v| s + v);
        let lambda = vec![x[0].clone(), x[1].clone(), x[2].clone(), q(1) - total];
        prop_assert_eq!(a.mul(&b).evaluate(&lambda), a.evaluate(&lambda) * b.evaluate(&lambda));
        prop_assert_eq!(a.raise_to(5).evaluate(&lambda), a.evaluate(&lambda));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(p in poly(3, 3), g in simplex3(),
        w in proptest::collection::vec(poly(3, 2), 3)) {
        prop_assert!(p.gradient(&g).curl(&g).is_zero());
        let field = Field { components: w };
        prop_assert!(field.curl(&g).divergence(&g).is_zero());
    }

    #[test]
    fn dof_count_equals_shape_dimension(r in smoothness(1), extra in 0u32..2, family in 0usize..4) {
        let spec = match family {
            0 => ElementSpec::Scalar { k: with_degree(r, extra), r },
            1 => ElementSpec::div(with_degree(r.plus(), extra), r),
            2 => ElementSpec::CurlPair { k: with_degree(r, extra), r1: r, r2: r.ominus() },
            _ => ElementSpec::GradMod { k: with_degree(r, extra), r0: r },
        };
        prop_assume!(spec.validate().is_ok());
        let table = build_table(&spec, &Geometry::reference(3), &Frames::default()).unwrap();
        prop_assert_eq!(table.len(), spec.shape().dim(), "{}", spec);
    }

    #[test]
    fn div_pair_count_is_independent_of_r3(r2 in smoothness(0), shift in 0i32..=1, extra in 0u32..3) {
        let base = r2.ominus();
        let r3 = Smoothness3::new(base.v + shift, base.e, base.f);
        let k = (2 * r2.v + 1).max(2 * r3.v + 2).max(1) as u32 + extra;
        let lo = ElementSpec::DivPair { k, r2, r3: base };
        let hi = ElementSpec::DivPair { k, r2, r3 };
        prop_assume!(lo.validate().is_ok() && hi.validate().is_ok());
        prop_assume!(!bubble_nodes(k - 1, base).is_empty() && !bubble_nodes(k - 1, r3).is_empty());
        let g = Geometry::reference(3);
        let a = build_table(&lo, &g, &Frames::default()).unwrap();
        let b = build_table(&hi, &g, &Frames::default()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.len(), 3 * binom(k as i64 + 3, 3) as usize);
    }

    #[test]
    fn alternating_sums_hold_under_the_hypotheses(f in 0i32..=1, de in 0i32..=2, dv in 0i32..=2, extra in 0u32..4) {
        let e = 2 * f + 2 + de;
        let r2 = Smoothness3::new(2 * e + 2 + dv, e, f);
        let k = 2 * r2.v as u32 + 3 + extra;
        let s = alternating_sum_check(k, r2);
        prop_assert!(s.hypotheses.is_empty());
        prop_assert!(s.holds, "{:?}", s);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-3i64..=3, 36)) {
        let m = Matrix::from_rows((0..rows).map(|i| (0..cols).map(|j| q(seed[i * 6 + j])).collect()).collect());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.nullspace().len(), cols);
        for v in m.nullspace() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rationals_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        let x = frac(a, b);
        prop_assert_eq!(rational::parse(&rational::to_string(&x)).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn unisolvence_is_frame_independent(seed in any::<u64>(), which in 0usize..4) {
        let spec = [
            ElementSpec::Scalar { k: 3, r: Smoothness3::new(1, 0, 0) },
            ElementSpec::Hdiv { k: 1, r: Smoothness3::uniform(-1) },
            ElementSpec::Hdiv { k: 2, r: Smoothness3::new(0, -1, -1) },
            ElementSpec::CurlPair { k: 1, r1: Smoothness3::new(0, -1, -1), r2: Smoothness3::uniform(-1) },
        ][which].clone();
        let g = Geometry::new(common::random_simplex(3, seed)).unwrap();
        for frames in [Frames::default(), Frames::new(NormalRule::Orthogonal, Some(seed)), Frames::new(NormalRule::Axes, Some(seed ^ 1))] {
            let table = build_table(&spec, &g, &frames).unwrap();
            prop_assert!(verify_unisolvence(&table, &g).unwrap().unisolvent, "{}", spec);
        }
    }

    #[test]
    fn curl_pair_count_is_independent_of_r2(r0 in smoothness(1), bump in 0i32..=2, extra in 0u32..2) {
        prop_assume!(r0.f >= 0 && r0.v <= 3);
        let r1 = r0.shifted(-1);
        let low = r1.ominus();
        let r2 = Smoothness3::new(low.v + bump, low.e, low.f);
        let k = (2 * r1.v + 1).max(2 * r2.v + 1).max(1) as u32 + extra;
        let a = ElementSpec::CurlPair { k, r1, r2: low };
        let b = ElementSpec::CurlPair { k, r1, r2 };
        prop_assume!(a.validate().is_ok() && b.validate().is_ok());
        // The count identity subtracts one per face for the /R quotient.
        prop_assume!(!face_bubble_nodes(k, low.v, low.e).is_empty() && !face_bubble_nodes(k, r2.v, r2.e).is_empty());
        let g = Geometry::reference(3);
        let ta = build_table(&a, &g, &Frames::default()).unwrap();
        let tb = build_table(&b, &g, &Frames::default()).unwrap();
        prop_assert_eq!(ta.len(), tb.len());
        prop_assert_eq!(ta.len(), a.shape().dim());
    }

    #[test]
    fn div_bubbles_are_mean_free(g in simplex3(), row in 0usize..3) {
        let (k, r2) = [(3, Smoothness3::new(0, -1, -1)), (4, Smoothness3::new(1, 0, -1)), (3, Smoothness3::uniform(-1))][row];
        prop_assert!(bubbles_are_mean_free(k, r2, &g).unwrap());
    }

    #[test]
    fn explicit_preimages_validate(extra in 0u32..2, row in 0usize..3) {
        let (k0, r2) = [(3, Smoothness3::new(0, -1, -1)), (4, Smoothness3::new(1, 0, -1)), (6, Smoothness3::new(2, 1, 0))][row];
        let g = Geometry::reference(3);
        let ws = witnesses(k0 + extra, r2, r2.ominus(), &g).unwrap();
        prop_assert!(!ws.is_empty());
        prop_assert!(ws.iter().all(|w| w.verified()));
    }

    #[test]
    fn mesh_text_round_trips(scale in 1i64..5) {
        let text = format!("# two cells\nv 0 0 0\nv {scale} 0 0\nv 0 {scale} 0\nv 0 0 {scale}\nv 1/2 1/2 {scale}\nt 0 1 2 3\nt 1 2 3 4\n");
        let m = Triangulation::parse("pair", &text).unwrap();
        prop_assert_eq!(m.counts(), vec![5, 9, 7, 2]);
        prop_assert_eq!(m.euler_characteristic(), 1);
    }
}

#[test]
fn polynomial_alternating_sum_vanishes() {
    for k in 1..=6 {
        assert_eq!(polynomial_alternating_sum(k), 0);
    }
}
