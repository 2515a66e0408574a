//! DoF tables of the element families.

use num_traits::Zero;

use crate::bernstein::{mean_free_basis, BernsteinPoly, Field, Geometry};
use crate::decomposition::{
    bubble_nodes, decompose_nd, face_bubble_nodes, hdiv_bubble_basis, Smoothness3, SmoothnessN,
};
use crate::error::Result;
use crate::lattice::{self, Node, SubSimplex};
use crate::linalg::Matrix;
use crate::rational::{self, Q};

use super::frames::{project_tangential, Frames};
use super::{Dof, DofTable, ElementSpec, Quantity};

/// Test functions of one functional, one polynomial per quantity output.
#[derive(Clone, Debug)]
pub struct Test {
    pub polys: Vec<BernsteinPoly>,
    pub label: String,
}

fn node_label(alpha: &[u32]) -> String {
    format!("lambda^({})", alpha.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn monomial_tests(nodes: &[Node]) -> Vec<Test> {
    nodes
        .iter()
        .map(|a| Test { polys: vec![BernsteinPoly::monomial(a.clone(), rational::q(1))], label: node_label(a) })
        .collect()
}

/// Bernstein basis of P_m on a dim-simplex; empty when m < 0.
fn p_tests(dim: usize, m: i64) -> Vec<Test> {
    if m < 0 {
        return Vec::new();
    }
    monomial_tests(&lattice::enumerate(dim, m as u32))
}

fn mean_free_tests(nodes: &[Node]) -> Vec<Test> {
    if nodes.is_empty() {
        return Vec::new();
    }
    mean_free_basis(nodes)
        .into_iter()
        .enumerate()
        .map(|(i, p)| Test { polys: vec![p], label: format!("mean-free[{i}]") })
        .collect()
}

/// P_0 ⊕ span(nodes)/R; empty when the node set is.
fn constant_plus_mean_free(nodes: &[Node], dim: usize) -> Vec<Test> {
    if nodes.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Test { polys: vec![BernsteinPoly::constant(dim, rational::q(1))], label: "1".into() }];
    out.extend(mean_free_tests(nodes));
    out
}

fn point_test() -> Vec<Test> {
    vec![Test { polys: vec![BernsteinPoly::constant(0, rational::q(1))], label: "1".into() }]
}

fn face_bubble(k: i64, rv: i32, re: i32) -> Vec<Node> {
    if k < 0 {
        return Vec::new();
    }
    face_bubble_nodes(k as u32, rv, re)
}

fn interior_bubble(k: i64, r: Smoothness3) -> Vec<Node> {
    if k < 0 {
        return Vec::new();
    }
    bubble_nodes(k as u32, r)
}

/// grad_f b for face bubbles b, as Cartesian component polynomials on f.
fn face_gradient_tests(f: &SubSimplex, nodes: &[Node], g: &Geometry) -> Vec<Test> {
    let idx = f.indices();
    let t1 = g.edge_vector(idx[0], idx[1]);
    let t2 = g.edge_vector(idx[0], idx[2]);
    let n = rational::cross(&t1, &t2);
    let tangential: Vec<Vec<Q>> = idx.iter().map(|&i| project_tangential(g.grad_lambda(i), &n)).collect();
    nodes
        .iter()
        .map(|a| {
            let b = BernsteinPoly::monomial(a.clone(), rational::q(1));
            let partials: Vec<BernsteinPoly> = (0..3).map(|i| b.partial_lambda(i)).collect();
            let polys = (0..3)
                .map(|c| {
                    partials
                        .iter()
                        .zip(&tangential)
                        .fold(BernsteinPoly::zero(2, b.k.saturating_sub(1)), |acc, (p, w)| acc.add(&p.scale(&w[c])))
                })
                .collect();
            Test { polys, label: format!("grad_f {}", node_label(a)) }
        })
        .collect()
}

fn gradient_tests(nodes: &[Node], g: &Geometry) -> Vec<Test> {
    nodes
        .iter()
        .map(|a| Test {
            polys: BernsteinPoly::monomial(a.clone(), rational::q(1)).gradient(g).components,
            label: format!("grad {}", node_label(a)),
        })
        .collect()
}

fn field_tests(fields: Vec<Field>, label: &str) -> Vec<Test> {
    fields
        .into_iter()
        .enumerate()
        .map(|(i, f)| Test { polys: f.components, label: format!("{label}[{i}]") })
        .collect()
}

/// Basis of B_k^div(T; r) ∩ ker(div), from the exact null space of div on the
/// bubble basis.
pub fn div_free_bubbles(k: u32, r: Smoothness3, g: &Geometry) -> Result<Vec<Field>> {
    let basis = hdiv_bubble_basis(k, r, g)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let fields = basis.fields();
    let target = lattice::Lattice::new(3, k.saturating_sub(1));
    let cols = fields.iter().map(|f| f.divergence(g).raise_to(target.k).to_dense(&target)).collect();
    let div = Matrix::from_cols(cols, target.len());
    Ok(div
        .nullspace()
        .into_iter()
        .map(|c| {
            fields
                .iter()
                .zip(&c)
                .filter(|(_, x)| !x.is_zero())
                .fold(Field::zero(3, 3, k), |acc, (f, x)| acc.add(&f.scale(x)))
        })
        .collect())
}

struct Builder<'a> {
    g: &'a Geometry,
    frames: &'a Frames,
    dofs: Vec<Dof>,
}

impl<'a> Builder<'a> {
    fn push(
        &mut self,
        group: &'static str,
        entity: &SubSimplex,
        quantity: Quantity,
        derivative: Vec<u32>,
        frame: Vec<Vec<Q>>,
        tests: Vec<Test>,
    ) {
        for t in tests {
            self.dofs.push(Dof {
                group,
                entity: entity.clone(),
                quantity: quantity.clone(),
                derivative: derivative.clone(),
                frame: frame.clone(),
                test: t.polys,
                test_label: t.label,
            });
        }
    }

    fn axes(&self) -> Vec<Vec<Q>> {
        let n = self.g.dim();
        (0..n).map(|d| rational::unit(n, d)).collect()
    }

    /// Cartesian D^β of the quantity at vertex v for |β| = j.
    fn vertex_jets(&mut self, group: &'static str, v: &SubSimplex, quantity: &Quantity, j: i32) {
        if j < 0 {
            return;
        }
        let n = self.g.dim();
        for beta in lattice::enumerate(n - 1, j as u32) {
            self.push(group, v, quantity.clone(), beta, self.axes(), point_test());
        }
    }

    /// ∂^i_{n1} ∂^{j−i}_{n2} of the quantity on edge e for 0 ≤ i ≤ j, tested on P_m(e).
    fn edge_mixed(&mut self, group: &'static str, e: &SubSimplex, quantity: &Quantity, j: i32, m: i64) {
        let fr = self.frames.edge(e, self.g);
        for i in 0..=j {
            let tests = p_tests(1, m);
            self.push(group, e, quantity.clone(), vec![i as u32, (j - i) as u32], vec![fr.n1.clone(), fr.n2.clone()], tests);
        }
    }

    fn edge_along(&mut self, group: &'static str, e: &SubSimplex, quantity: Quantity, dir: Dir, j: u32, tests: Vec<Test>) {
        let fr = self.frames.edge(e, self.g);
        let (frame, derivative) = match dir {
            Dir::N1 => (vec![fr.n1], vec![j]),
            Dir::N2 => (vec![fr.n2], vec![j]),
            Dir::T => (vec![fr.t], vec![j]),
        };
        self.push(group, e, quantity, derivative, frame, tests);
    }

    fn face_normal(&mut self, group: &'static str, f: &SubSimplex, quantity: Quantity, j: u32, tests: Vec<Test>) {
        let n = self.frames.face(f, self.g).n;
        self.push(group, f, quantity, vec![j], vec![n], tests);
    }

    fn interior(&mut self, group: &'static str, quantity: Quantity, tests: Vec<Test>) {
        let t = SubSimplex::full(self.g.dim());
        self.push(group, &t, quantity, Vec::new(), Vec::new(), tests);
    }
}

#[derive(Clone, Copy)]
enum Dir {
    N1,
    N2,
    T,
}

fn component_quantities(dim: usize) -> Vec<Quantity> {
    (0..dim).map(|c| Quantity::Component(rational::unit(dim, c))).collect()
}

/// Builds the table of a validated element on the simplex `g`.
pub fn build_table(spec: &ElementSpec, g: &Geometry, frames: &Frames) -> Result<DofTable> {
    spec.validate()?;
    let mut b = Builder { g, frames, dofs: Vec::new() };
    match spec {
        ElementSpec::Scalar { k, r } => scalar(&mut b, *k, *r, &[Quantity::Value]),
        ElementSpec::VectorScalar { k, r } => scalar(&mut b, *k, *r, &component_quantities(3)),
        ElementSpec::Hdiv { k, r } => hdiv(&mut b, *k, *r)?,
        ElementSpec::DivPair { k, r2, r3 } => div_pair(&mut b, *k, *r2, *r3)?,
        ElementSpec::CurlPair { k, r1, r2 } => curl_pair(&mut b, *k, *r1, *r2)?,
        ElementSpec::GradMod { k, r0 } => grad_mod(&mut b, *k, *r0),
        ElementSpec::Nd { n, k, r } => nd(&mut b, *n, *k, r)?,
    }
    Ok(DofTable { spec: spec.clone(), dofs: b.dofs })
}

fn vertices() -> Vec<SubSimplex> {
    lattice::subsimplices(3, 0)
}

fn edges() -> Vec<SubSimplex> {
    lattice::subsimplices(3, 1)
}

fn faces() -> Vec<SubSimplex> {
    lattice::subsimplices(3, 2)
}

fn scalar(b: &mut Builder, k: u32, r: Smoothness3, quantities: &[Quantity]) {
    let k = k as i64;
    for v in vertices() {
        for j in 0..=r.v {
            for q in quantities {
                b.vertex_jets("V", &v, q, j);
            }
        }
    }
    for e in edges() {
        for j in 0..=r.e {
            for q in quantities {
                b.edge_mixed("E", &e, q, j, k - 2 * (r.v as i64 + 1) + j as i64);
            }
        }
    }
    for f in faces() {
        for j in 0..=r.f {
            let tests = monomial_tests(&face_bubble(k - j as i64, r.v - j, r.e - j));
            for q in quantities {
                b.face_normal("F", &f, q.clone(), j as u32, tests.clone());
            }
        }
    }
    let tests = monomial_tests(&interior_bubble(k, r));
    for q in quantities {
        b.interior("T", q.clone(), tests.clone());
    }
}

fn hdiv(b: &mut Builder, k: u32, r: Smoothness3) -> Result<()> {
    let quantities = component_quantities(3);
    let ki = k as i64;
    for v in vertices() {
        for j in 0..=r.v {
            for q in &quantities {
                b.vertex_jets("V", &v, q, j);
            }
        }
    }
    for e in edges() {
        for j in 0..=r.e {
            for q in &quantities {
                b.edge_mixed("E", &e, q, j, ki - 2 * (r.v as i64 + 1) + j as i64);
            }
        }
    }
    for f in faces() {
        let n = b.frames.face(&f, b.g).n;
        b.face_normal("F", &f, Quantity::Component(n), 0, monomial_tests(&face_bubble(ki, r.v, r.e)));
    }
    let bubbles = hdiv_bubble_basis(k, r, b.g)?;
    b.interior("T", Quantity::Vector, field_tests(bubbles.fields(), "div-bubble"));
    Ok(())
}

fn div_pair(b: &mut Builder, k: u32, r2: Smoothness3, r3: Smoothness3) -> Result<()> {
    let ki = k as i64;
    for v in vertices() {
        for q in component_quantities(3) {
            for i in 0..=r2.v {
                b.vertex_jets("V1", &v, &q, i);
            }
        }
        for j in r2.v.max(0)..=r3.v {
            b.vertex_jets("V2", &v, &Quantity::Div, j);
        }
    }
    for e in edges() {
        let fr = b.frames.edge(&e, b.g);
        let m2 = |j: i32| ki - 2 * (r2.v as i64 + 1) + j as i64;
        for j in 0..=r2.e {
            b.edge_along("E1", &e, Quantity::Component(fr.n2.clone()), Dir::N1, j as u32, p_tests(1, m2(j)));
        }
        for j in 0..=r2.e {
            b.edge_mixed("E2", &e, &Quantity::Component(fr.t.clone()), j, m2(j));
        }
        for j in 0..=r2.e {
            b.edge_mixed("E3", &e, &Quantity::Component(fr.n1.clone()), j, m2(j));
        }
        for j in 0..=r3.e {
            b.edge_mixed("E4", &e, &Quantity::Div, j, ki - 1 - 2 * (r3.v as i64 + 1) + j as i64);
        }
    }
    for f in faces() {
        let fr = b.frames.face(&f, b.g);
        b.face_normal(
            "F1",
            &f,
            Quantity::Component(fr.n.clone()),
            0,
            constant_plus_mean_free(&face_bubble(ki, r2.v, r2.e), 2),
        );
        for j in 0..=r2.f {
            let tests = monomial_tests(&face_bubble(ki - j as i64, r2.v - j, r2.e - j));
            for t in [&fr.t1, &fr.t2] {
                b.face_normal("F2", &f, Quantity::Component(t.clone()), j as u32, tests.clone());
            }
        }
        for j in 0..=r3.f {
            let tests = monomial_tests(&face_bubble(ki - 1 - j as i64, r3.v - j, r3.e - j));
            b.face_normal("F3", &f, Quantity::Div, j as u32, tests);
        }
    }
    b.interior("T1", Quantity::Div, mean_free_tests(&interior_bubble(ki - 1, r3)));
    b.interior("T2", Quantity::Vector, field_tests(div_free_bubbles(k, r2, b.g)?, "div-free"));
    Ok(())
}

/// Shape space P_{k+1}^3.
fn curl_pair(b: &mut Builder, k: u32, r1: Smoothness3, r2: Smoothness3) -> Result<()> {
    let ki = k as i64;
    for v in vertices() {
        for q in component_quantities(3) {
            for i in 0..=r1.v {
                b.vertex_jets("V1", &v, &q, i);
            }
        }
        // curl v is divergence free: drop ∂_x of its first component.
        for j in r1.v.max(0)..=r2.v {
            for c in 0..3 {
                let q = Quantity::CurlComponent(rational::unit(3, c));
                for beta in lattice::enumerate(2, j as u32) {
                    if c == 0 && beta[0] >= 1 {
                        continue;
                    }
                    let axes = b.axes();
                    b.push("V2", &v, q.clone(), beta, axes, point_test());
                }
            }
        }
    }
    for e in edges() {
        let fr = b.frames.edge(&e, b.g);
        let m1 = |j: i32| ki - 1 - 2 * r1.v as i64 + j as i64;
        let m2 = |j: i32| ki - 2 * (r2.v as i64 + 1) + j as i64;
        b.edge_along("E1", &e, Quantity::Component(fr.t.clone()), Dir::T, 0, p_tests(1, m1(0)));
        for j in 0..=r1.e {
            b.edge_mixed("E2", &e, &Quantity::Component(fr.n1.clone()), j, m1(j));
        }
        for j in 0..=r1.e {
            b.edge_along("E3", &e, Quantity::Component(fr.n2.clone()), Dir::N2, j as u32, p_tests(1, m1(j)));
        }
        for j in 0..=r2.e {
            b.edge_along("E4", &e, Quantity::CurlComponent(fr.n2.clone()), Dir::N1, j as u32, p_tests(1, m2(j)));
        }
        for j in 0..=r2.e {
            b.edge_mixed("E5", &e, &Quantity::CurlComponent(fr.t.clone()), j, m2(j));
        }
        for j in 0..=r2.e {
            b.edge_mixed("E6", &e, &Quantity::CurlComponent(fr.n1.clone()), j, m2(j));
        }
    }
    for f in faces() {
        let fr = b.frames.face(&f, b.g);
        let grads = face_gradient_tests(&f, &face_bubble(ki + 2, r1.v + 1, r1.e + 1), b.g);
        b.face_normal("F1", &f, Quantity::Vector, 0, grads);
        for j in 0..=r1.f {
            let tests = monomial_tests(&face_bubble(ki + 1 - j as i64, r1.v - j, r1.e - j));
            b.face_normal("F2", &f, Quantity::Component(fr.n.clone()), j as u32, tests);
        }
        b.face_normal(
            "F3",
            &f,
            Quantity::CurlComponent(fr.n.clone()),
            0,
            mean_free_tests(&face_bubble(ki, r2.v, r2.e)),
        );
        for j in 0..=r2.f {
            let tests = monomial_tests(&face_bubble(ki - j as i64, r2.v - j, r2.e - j));
            for t in [&fr.t1, &fr.t2] {
                b.face_normal("F4", &f, Quantity::CurlComponent(t.clone()), j as u32, tests.clone());
            }
        }
    }
    b.interior("T1", Quantity::Curl, field_tests(div_free_bubbles(k, r2, b.g)?, "div-free"));
    let grads = gradient_tests(&interior_bubble(ki + 2, r1.shifted(1)), b.g);
    b.interior("T2", Quantity::Vector, grads);
    Ok(())
}

/// Shape space P_{k+2}.
fn grad_mod(b: &mut Builder, k: u32, r0: Smoothness3) {
    let ki = k as i64;
    for v in vertices() {
        for j in 0..=r0.v {
            b.vertex_jets("V1", &v, &Quantity::Value, j);
        }
    }
    for e in edges() {
        let m = ki - 2 * r0.v as i64 + 1;
        let tests = if m < 0 { Vec::new() } else { mean_free_tests(&lattice::enumerate(1, m as u32)) };
        b.edge_along("E1", &e, Quantity::Value, Dir::T, 1, tests);
        for j in 1..=r0.e {
            b.edge_mixed("E2", &e, &Quantity::Value, j, ki - 2 * r0.v as i64 + j as i64);
        }
    }
    for f in faces() {
        let grads = face_gradient_tests(&f, &face_bubble(ki + 2, r0.v, r0.e), b.g);
        b.face_normal("F1", &f, Quantity::Gradient, 0, grads);
        for j in 1..=r0.f {
            let tests = monomial_tests(&face_bubble(ki + 2 - j as i64, r0.v - j, r0.e - j));
            b.face_normal("F2", &f, Quantity::Value, j as u32, tests);
        }
    }
    let grads = gradient_tests(&interior_bubble(ki + 2, r0), b.g);
    b.interior("T1", Quantity::Gradient, grads);
}

fn nd(b: &mut Builder, n: usize, k: u32, r: &SmoothnessN) -> Result<()> {
    let decomposition = decompose_nd(n, k, r)?;
    for v in lattice::subsimplices(n, 0) {
        for j in 0..=r.entries[0] {
            b.vertex_jets("V", &v, &Quantity::Value, j);
        }
    }
    for dim in 1..n {
        for f in lattice::subsimplices(n, dim) {
            let piece = decomposition.piece(&f).expect("every sub-simplex has a piece");
            let normals = b.frames.normals(&f, b.g);
            let comp = f.complement();
            for alpha in &piece.nodes {
                let beta: Vec<u32> = comp.iter().map(|&i| alpha[i]).collect();
                let local = lattice::restrict(alpha, &f);
                let test = Test {
                    polys: vec![BernsteinPoly::monomial(local.clone(), rational::q(1))],
                    label: node_label(&local),
                };
                b.push("F", &f, Quantity::Value, beta, normals.clone(), vec![test]);
            }
        }
    }
    b.interior("T", Quantity::Value, monomial_tests(decomposition.interior()));
    Ok(())
}

/// Scalar n-dimensional spec helper.
pub fn nd_spec(n: usize, k: u32, r: Vec<i32>) -> ElementSpec {
    ElementSpec::Nd { n, k, r: SmoothnessN::new(r) }
}
