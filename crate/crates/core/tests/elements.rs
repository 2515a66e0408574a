//! DoF tables: counts, unisolvence and trace determination.

mod common;

use fe_complex::bernstein::Geometry;
use fe_complex::decomposition::Smoothness3 as S;
use fe_complex::elements::families::nd_spec;
use fe_complex::elements::{assemble_dof_matrix, build_table, evaluate_dofs, verify_unisolvence, ElementSpec, Frames};
use fe_complex::lattice::subsimplices;
use fe_complex::Error;

fn unisolvent(spec: &ElementSpec, g: &Geometry) -> bool {
    let table = build_table(spec, g, &Frames::default()).unwrap();
    assert_eq!(table.len(), spec.shape().dim(), "{spec}");
    verify_unisolvence(&table, g).unwrap().unisolvent
}

#[test]
fn smallest_and_larger_parameters_are_unisolvent() {
    let g = Geometry::new(common::random_simplex(3, 4)).unwrap();
    let specs = [
        ElementSpec::Scalar { k: 1, r: S::uniform(0) },
        ElementSpec::Scalar { k: 3, r: S::new(1, 0, 0) },
        ElementSpec::Scalar { k: 4, r: S::new(1, 0, 0) },
        ElementSpec::Scalar { k: 5, r: S::new(2, 1, 0) },
        ElementSpec::Scalar { k: 2, r: S::uniform(-1) },
        ElementSpec::Hdiv { k: 1, r: S::uniform(-1) },
        ElementSpec::Hdiv { k: 3, r: S::uniform(-1) },
        ElementSpec::Hdiv { k: 2, r: S::new(0, -1, -1) },
        ElementSpec::Hdiv { k: 3, r: S::new(1, 0, -1) },
        ElementSpec::VectorScalar { k: 3, r: S::new(1, 0, 0) },
        ElementSpec::DivPair { k: 3, r2: S::new(0, -1, -1), r3: S::uniform(-1) },
        ElementSpec::DivPair { k: 5, r2: S::uniform(-1), r3: S::uniform(0) },
        ElementSpec::CurlPair { k: 1, r1: S::new(0, -1, -1), r2: S::uniform(-1) },
        ElementSpec::CurlPair { k: 2, r1: S::new(0, -1, -1), r2: S::uniform(-1) },
        ElementSpec::CurlPair { k: 3, r1: S::new(1, 0, -1), r2: S::new(0, -1, -1) },
        ElementSpec::GradMod { k: 1, r0: S::new(1, 0, 0) },
        ElementSpec::GradMod { k: 2, r0: S::new(1, 0, 0) },
    ];
    for spec in &specs {
        assert!(unisolvent(spec, &g), "{spec}");
    }
}

#[test]
fn lowest_order_matrices() {
    let g = Geometry::reference(3);
    let p1 = build_table(&ElementSpec::Scalar { k: 1, r: S::uniform(0) }, &g, &Frames::default()).unwrap();
    let m = assemble_dof_matrix(&p1, &g).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m.get(i, j), &common::q((i == j) as i64));
        }
    }
    let bdm = build_table(&ElementSpec::Hdiv { k: 1, r: S::uniform(-1) }, &g, &Frames::default()).unwrap();
    assert_eq!(bdm.len(), 12);
    assert!(verify_unisolvence(&bdm, &g).unwrap().determinant_sign != 0);
}

#[test]
fn non_square_tables_are_rejected() {
    let g = Geometry::reference(3);
    let spec = ElementSpec::DivPair { k: 4, r2: S::uniform(-1), r3: S::uniform(0) };
    let table = build_table(&spec, &g, &Frames::default()).unwrap();
    // The pressure bubble B_3(T; 0) is empty, so the interior quotient keeps a redundant mean.
    assert_eq!((table.len(), spec.shape().dim()), (106, 105));
    assert!(matches!(assemble_dof_matrix(&table, &g), Err(Error::DimensionMismatch(_))));
    let u = verify_unisolvence(&table, &g).unwrap();
    assert!(!u.unisolvent);
    assert_eq!(u.rank, 105);
}

#[test]
fn nd_tables() {
    let tri = Geometry::reference(2);
    let argyris = build_table(&nd_spec(2, 5, vec![2, 1, 0]), &tri, &Frames::default()).unwrap();
    assert_eq!(argyris.len(), 21);
    let by_dim = argyris.counts_by_dim();
    assert!(by_dim[0].iter().all(|&c| c == 6));
    assert!(by_dim[1].iter().all(|&c| c == 1));
    assert_eq!(by_dim[2], vec![0]);
    assert!(verify_unisolvence(&argyris, &tri).unwrap().unisolvent);
    assert!(unisolvent(&nd_spec(2, 6, vec![2, 1, 0]), &tri));

    let interval = Geometry::reference(1);
    let hermite = build_table(&nd_spec(1, 3, vec![1, 0]), &interval, &Frames::default()).unwrap();
    assert_eq!(hermite.counts_by_dim(), vec![vec![2, 2], vec![0]]);
    assert!(verify_unisolvence(&hermite, &interval).unwrap().unisolvent);

    let tet = Geometry::reference(3);
    for (k, r) in [(3, [1, 0, 0]), (5, [2, 1, 0]), (9, [4, 2, 1])] {
        let nd = build_table(&nd_spec(3, k, vec![r[0], r[1], r[2], 0]), &tet, &Frames::default()).unwrap();
        let scalar = build_table(&ElementSpec::Scalar { k, r: S::new(r[0], r[1], r[2]) }, &tet, &Frames::default()).unwrap();
        assert_eq!(nd.per_entity(), scalar.per_entity());
    }
    assert!(unisolvent(&nd_spec(4, 1, vec![0; 5]), &Geometry::reference(4)));
}

/// DoFs on the closure of f determine the trace and r_f normal derivatives on f.
fn closure_determines_trace(spec: &ElementSpec, rf: u32) {
    let g = Geometry::new(common::random_simplex(3, 17)).unwrap();
    let table = build_table(spec, &g, &Frames::default()).unwrap();
    let shape = spec.shape();
    let basis = shape.basis();
    for f in subsimplices(3, 2) {
        let closure: Vec<_> = table.dofs.iter().filter(|d| f.contains(&d.entity)).cloned().collect();
        let rows = evaluate_dofs(&closure, &basis, &g);
        let normal = g.grad_lambda(f.complement()[0]).to_vec();
        let null = rows.nullspace();
        assert!(!null.is_empty());
        for v in null {
            let mut p = shape.combine(&v).as_scalar().unwrap().clone();
            for _ in 0..=rf {
                assert!(p.restrict(&f).is_zero(), "{spec} on {f:?}");
                p = p.derivative_along(&normal, &g);
            }
        }
    }
}

#[test]
fn closure_dofs_determine_face_traces() {
    closure_determines_trace(&ElementSpec::Scalar { k: 3, r: S::new(1, 0, 0) }, 0);
    closure_determines_trace(&ElementSpec::Scalar { k: 5, r: S::new(2, 1, 0) }, 0);
    closure_determines_trace(&ElementSpec::Scalar { k: 9, r: S::new(4, 2, 1) }, 1);
}

#[test]
fn invalid_parameters_are_reported() {
    let g = Geometry::reference(3);
    for spec in [
        ElementSpec::Scalar { k: 2, r: S::new(1, 0, 0) },
        ElementSpec::Scalar { k: 5, r: S::new(1, 1, 0) },
        ElementSpec::CurlPair { k: 1, r1: S::uniform(0), r2: S::uniform(-1) },
        ElementSpec::GradMod { k: 1, r0: S::new(1, 0, -1) },
    ] {
        assert!(spec.validate().is_err(), "{spec}");
        assert!(matches!(build_table(&spec, &g, &Frames::default()), Err(Error::InvalidSmoothness(_))), "{spec}");
    }
}
