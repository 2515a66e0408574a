//! Exact barycentric calculus: Bernstein polynomials λ^α on a rational simplex,
//! integration, directional derivatives, divergence of barycentric fields and
//! explicit divergence preimages.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, adjacency_direction, LatticeGraph, Node, SubSimplex};
use crate::linalg::Matrix;
use crate::rational::{self, factorial, multi_factorial, Q};

/// Rational simplex in R^n with barycentric gradients.
#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    n: usize,
    vertices: Vec<Vec<Q>>,
    volume: Q,
    grads: Vec<Vec<Q>>,
}

impl Geometry {
    pub fn new(vertices: Vec<Vec<Q>>) -> Result<Self> {
        let n = vertices.len().saturating_sub(1);
        if vertices.is_empty() || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DegenerateGeometry(format!(
                "{} vertices do not span a simplex in their ambient space",
                vertices.len()
            )));
        }
        // Columns (1, v_i); row i of the inverse holds (c_i, ∇λ_i).
        let mut homogeneous = Matrix::zeros(n + 1, n + 1);
        for (i, v) in vertices.iter().enumerate() {
            homogeneous.set(0, i, Q::one());
            for (d, x) in v.iter().enumerate() {
                homogeneous.set(d + 1, i, x.clone());
            }
        }
        let det = homogeneous.determinant()?;
        if det.is_zero() {
            return Err(Error::DegenerateGeometry("vertices are affinely dependent".into()));
        }
        let inverse = homogeneous.inverse()?;
        let grads = (0..=n).map(|i| (1..=n).map(|d| inverse.get(i, d).clone()).collect()).collect();
        let volume = det.abs() / rational::from_big(factorial(n as u32));
        Ok(Self { n, vertices, volume, grads })
    }

    /// The simplex (0, e_1, …, e_n).
    pub fn reference(n: usize) -> Self {
        let mut vertices = vec![vec![Q::zero(); n]];
        for d in 0..n {
            vertices.push(rational::unit(n, d));
        }
        Self::new(vertices).expect("reference simplex is non-degenerate")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn volume(&self) -> &Q {
        &self.volume
    }

    pub fn grad_lambda(&self, i: usize) -> &[Q] {
        &self.grads[i]
    }

    pub fn grads(&self) -> &[Vec<Q>] {
        &self.grads
    }

    /// t_{i,j} = v_j − v_i.
    pub fn edge_vector(&self, i: usize, j: usize) -> Vec<Q> {
        rational::sub(&self.vertices[j], &self.vertices[i])
    }

    /// Barycentric coordinates of a Cartesian point.
    pub fn barycentric(&self, x: &[Q]) -> Vec<Q> {
        (0..=self.n)
            .map(|i| {
                let v0 = &self.vertices[0];
                let shift: Vec<Q> = rational::sub(x, v0);
                let base = if i == 0 { Q::one() } else { Q::zero() };
                base + rational::dot(&self.grads[i], &shift)
            })
            .collect()
    }

    pub fn barycentric_f64(&self, x: &[f64]) -> Vec<f64> {
        let v0: Vec<f64> = self.vertices[0].iter().map(rational::to_f64).collect();
        (0..=self.n)
            .map(|i| {
                let g: Vec<f64> = self.grads[i].iter().map(rational::to_f64).collect();
                let base = if i == 0 { 1.0 } else { 0.0 };
                base + g.iter().zip(x.iter().zip(&v0)).map(|(g, (x, v))| g * (x - v)).sum::<f64>()
            })
            .collect()
    }
}

/// Normalized integral of λ^γ over an m-simplex: γ!·m!/(|γ|+m)!.
pub fn mean_of_monomial(gamma: &[u32]) -> Q {
    let m = gamma.len() as u32 - 1;
    let k = lattice::degree(gamma);
    Q::new(multi_factorial(gamma) * factorial(m), factorial(k + m))
}

/// Degree-k polynomial λ^α-expansion on an n-simplex (no multinomial weights).
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPoly {
    pub n: usize,
    pub k: u32,
    pub coeffs: BTreeMap<Node, Q>,
}

impl BernsteinPoly {
    pub fn zero(n: usize, k: u32) -> Self {
        Self { n, k, coeffs: BTreeMap::new() }
    }

    pub fn monomial(alpha: Node, c: Q) -> Self {
        let n = alpha.len() - 1;
        let k = lattice::degree(&alpha);
        let mut p = Self::zero(n, k);
        p.add_term(alpha, c);
        p
    }

    /// λ^α / α!.
    pub fn scaled_monomial(alpha: Node) -> Self {
        let c = Q::new(BigInt::one(), multi_factorial(&alpha));
        Self::monomial(alpha, c)
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::monomial(vec![0; n + 1], c)
    }

    pub fn add_term(&mut self, alpha: Node, c: Q) {
        debug_assert_eq!(alpha.len(), self.n + 1);
        debug_assert_eq!(lattice::degree(&alpha), self.k);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(alpha) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coeff(&self, alpha: &[u32]) -> Q {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of two polynomials; degrees are equalized by degree raising.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = equalize(self, other);
        let mut out = a;
        for (alpha, c) in &b.coeffs {
            out.add_term(alpha.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.n, self.k);
        if s.is_zero() {
            return out;
        }
        for (alpha, c) in &self.coeffs {
            out.coeffs.insert(alpha.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in product");
        let mut out = Self::zero(self.n, self.k + other.k);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let sum: Node = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(sum, ca * cb);
            }
        }
        out
    }

    /// Integral divided by the simplex volume.
    pub fn mean(&self) -> Q {
        self.coeffs.iter().fold(Q::zero(), |acc, (alpha, c)| acc + c * mean_of_monomial(alpha))
    }

    /// Exact integral Σ c_α α!·n!/(k+n)!·|T|.
    pub fn integrate(&self, g: &Geometry) -> Q {
        self.mean() * g.volume()
    }

    /// ∂/∂λ_i treating the λ's as independent variables.
    pub fn partial_lambda(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, self.k.saturating_sub(1));
        if self.k == 0 {
            return out;
        }
        for (alpha, c) in &self.coeffs {
            if alpha[i] > 0 {
                let mut beta = alpha.clone();
                beta[i] -= 1;
                out.add_term(beta, c * Q::from_integer(BigInt::from(alpha[i])));
            }
        }
        out
    }

    /// t_{i,j}·∇p using ∇λ^α·t_{i,j} = α_j λ^{α−ε_j} − α_i λ^{α−ε_i}.
    pub fn directional_derivative(&self, i: usize, j: usize) -> Result<Self> {
        if i == j || i > self.n || j > self.n {
            return Err(Error::InvalidDirection(format!("t_({i},{j})")));
        }
        Ok(self.partial_lambda(j).sub(&self.partial_lambda(i)))
    }

    /// w·∇p for a Cartesian direction w.
    pub fn derivative_along(&self, w: &[Q], g: &Geometry) -> Self {
        let weights: Vec<Q> = g.grads().iter().map(|grad| rational::dot(grad, w)).collect();
        let mut out = Self::zero(self.n, self.k.saturating_sub(1));
        if self.k == 0 {
            return out;
        }
        for (alpha, c) in &self.coeffs {
            for (i, weight) in weights.iter().enumerate() {
                if alpha[i] == 0 || weight.is_zero() {
                    continue;
                }
                let mut beta = alpha.clone();
                beta[i] -= 1;
                out.add_term(beta, c * weight * Q::from_integer(BigInt::from(alpha[i])));
            }
        }
        out
    }

    /// Cartesian gradient as a field.
    pub fn gradient(&self, g: &Geometry) -> Field {
        Field {
            components: (0..g.dim()).map(|d| self.derivative_along(&rational::unit(g.dim(), d), g)).collect(),
        }
    }

    /// Same polynomial written in the degree k+1 basis.
    pub fn raise_degree(&self) -> Self {
        let mut out = Self::zero(self.n, self.k + 1);
        // Σ_i λ_i = 1 gives λ^α = Σ_i λ^{α+ε_i}.
        for (alpha, c) in &self.coeffs {
            for i in 0..=self.n {
                let mut beta = alpha.clone();
                beta[i] += 1;
                out.add_term(beta, c.clone());
            }
        }
        out
    }

    pub fn raise_to(&self, k: u32) -> Self {
        let mut out = self.clone();
        while out.k < k {
            out = out.raise_degree();
        }
        out
    }

    /// λ^α|_f = λ_f^{α_f} when α_{f*} = 0, else 0.
    pub fn restrict(&self, f: &SubSimplex) -> Self {
        let mut out = Self::zero(f.dim(), self.k);
        for (alpha, c) in &self.coeffs {
            if lattice::dist(alpha, f) == 0 {
                out.add_term(lattice::restrict(alpha, f), c.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, lambda: &[Q]) -> Q {
        self.coeffs.iter().fold(Q::zero(), |acc, (alpha, c)| {
            let value = alpha.iter().zip(lambda).fold(Q::one(), |p, (&a, l)| {
                if a == 0 {
                    p
                } else {
                    p * num_traits::pow(l.clone(), a as usize)
                }
            });
            acc + c * value
        })
    }

    pub fn evaluate_f64(&self, lambda: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(alpha, c)| {
                rational::to_f64(c) * alpha.iter().zip(lambda).map(|(&a, l)| l.powi(a as i32)).product::<f64>()
            })
            .sum()
    }

    /// Coefficient vector in the canonical order of T^n_k.
    pub fn to_dense(&self, lattice: &lattice::Lattice) -> Vec<Q> {
        let mut out = vec![Q::zero(); lattice.len()];
        for (alpha, c) in &self.coeffs {
            let idx = lattice.index_of(alpha).expect("coefficient outside lattice");
            out[idx] = c.clone();
        }
        out
    }

    pub fn from_dense(lattice: &lattice::Lattice, values: &[Q]) -> Self {
        let mut out = Self::zero(lattice.n, lattice.k);
        for (alpha, c) in lattice.nodes().iter().zip(values) {
            out.add_term(alpha.clone(), c.clone());
        }
        out
    }
}

fn equalize(a: &BernsteinPoly, b: &BernsteinPoly) -> (BernsteinPoly, BernsteinPoly) {
    let k = a.k.max(b.k);
    (a.raise_to(k), b.raise_to(k))
}

/// Vector field with one Bernstein polynomial per Cartesian component.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub components: Vec<BernsteinPoly>,
}

impl Field {
    pub fn zero(dim: usize, n: usize, k: u32) -> Self {
        Self { components: vec![BernsteinPoly::zero(n, k); dim] }
    }

    /// p·w for a constant vector w.
    pub fn from_direction(p: &BernsteinPoly, w: &[Q]) -> Self {
        Self { components: w.iter().map(|c| p.scale(c)).collect() }
    }

    pub fn add(&self, other: &Field) -> Field {
        Field { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Field {
        Field { components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BernsteinPoly::is_zero)
    }

    pub fn divergence(&self, g: &Geometry) -> BernsteinPoly {
        let dim = g.dim();
        let mut out: Option<BernsteinPoly> = None;
        for (d, comp) in self.components.iter().enumerate() {
            let term = comp.derivative_along(&rational::unit(dim, d), g);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        out.unwrap_or_else(|| BernsteinPoly::zero(g.dim(), 0))
    }

    /// curl in three dimensions.
    pub fn curl(&self, g: &Geometry) -> Field {
        let d = |c: usize, axis: usize| self.components[c].derivative_along(&rational::unit(3, axis), g);
        Field {
            components: vec![d(2, 1).sub(&d(1, 2)), d(0, 2).sub(&d(2, 0)), d(1, 0).sub(&d(0, 1))],
        }
    }

    /// v·w.
    pub fn dot_const(&self, w: &[Q]) -> BernsteinPoly {
        let mut out = BernsteinPoly::zero(self.components[0].n, self.components[0].k);
        for (comp, c) in self.components.iter().zip(w) {
            out = out.add(&comp.scale(c));
        }
        out
    }

    /// v·n on a face, restricted to the face.
    pub fn normal_trace(&self, f: &SubSimplex, normal: &[Q]) -> BernsteinPoly {
        self.dot_const(normal).restrict(f)
    }
}

/// coefficient · λ^node · t_{from,to}.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalTerm {
    pub coeff: Q,
    pub node: Node,
    pub from: usize,
    pub to: usize,
}

impl FormalTerm {
    pub fn new(coeff: Q, node: Node, from: usize, to: usize) -> Self {
        Self { coeff, node, from, to }
    }
}

/// Divergence of Σ c λ^γ t_{i,j} from the barycentric identity alone.
pub fn divergence_formal(terms: &[FormalTerm]) -> BernsteinPoly {
    let n = terms.first().map_or(3, |t| t.node.len() - 1);
    let k = terms.first().map_or(1, |t| lattice::degree(&t.node));
    let mut out = BernsteinPoly::zero(n, k.saturating_sub(1));
    for term in terms {
        let p = BernsteinPoly::monomial(term.node.clone(), term.coeff.clone());
        let d = p.directional_derivative(term.from, term.to).expect("formal terms carry valid directions");
        out = out.add(&d);
    }
    out
}

/// Cartesian components of Σ c λ^γ t_{i,j}.
pub fn formal_to_field(terms: &[FormalTerm], g: &Geometry) -> Field {
    let n = g.dim();
    let k = terms.first().map_or(0, |t| lattice::degree(&t.node));
    let mut out = Field::zero(n, n, k);
    for term in terms {
        let t = g.edge_vector(term.from, term.to);
        for (d, c) in t.iter().enumerate() {
            out.components[d].add_term(term.node.clone(), &term.coeff * c);
        }
    }
    out
}

/// u = λ^{α+ε_i} t_{j,i} / (β!·α_j) with div u = λ^α/α! − λ^β/β!, β = α + ε_i − ε_j.
pub fn preimage_direct(alpha: &[u32], beta: &[u32]) -> Result<Vec<FormalTerm>> {
    let (i, j) = adjacency_direction(alpha, beta)
        .ok_or_else(|| Error::NotAdjacent(format!("{alpha:?} and {beta:?}")))?;
    let mut node = alpha.to_vec();
    node[i] += 1;
    let coeff = Q::new(BigInt::one(), multi_factorial(beta) * BigInt::from(alpha[j]));
    Ok(vec![FormalTerm::new(coeff, node, j, i)])
}

/// Two-term field routed through γ = α + ε_ℓ − ε_j.
pub fn preimage_detour(alpha: &[u32], beta: &[u32], l: usize) -> Result<Vec<FormalTerm>> {
    let (i, j) = adjacency_direction(alpha, beta)
        .ok_or_else(|| Error::NotAdjacent(format!("{alpha:?} and {beta:?}")))?;
    if l == i || l == j || l >= alpha.len() {
        return Err(Error::DetourUnavailable(format!("vertex {l} for direction ({i},{j})")));
    }
    if alpha[j] == 0 {
        return Err(Error::DetourUnavailable(format!("{alpha:?} has no entry at {j}")));
    }
    let mut gamma = alpha.to_vec();
    gamma[l] += 1;
    gamma[j] -= 1;
    let gamma_fact = multi_factorial(&gamma);
    let mut first = alpha.to_vec();
    first[l] += 1;
    let mut second = beta.to_vec();
    second[l] += 1;
    Ok(vec![
        FormalTerm::new(Q::new(BigInt::one(), &gamma_fact * BigInt::from(alpha[j])), first, j, l),
        FormalTerm::new(Q::new(BigInt::one(), &gamma_fact * BigInt::from(beta[i])), second, l, i),
    ])
}

/// Mean-zero basis {λ^α/α! − λ^β/β!} over the spanning forest of G(S).
#[derive(Clone, Debug)]
pub struct L20Basis {
    pub members: Vec<BernsteinPoly>,
    pub pairs: Vec<(Node, Node)>,
    pub components: usize,
}

impl L20Basis {
    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }
}

pub fn l20_basis(nodes: &[Node]) -> L20Basis {
    let graph = LatticeGraph::new(nodes.to_vec());
    let components = graph.components().len();
    let pairs = graph.spanning_tree();
    let members = pairs
        .iter()
        .map(|(a, b)| BernsteinPoly::scaled_monomial(a.clone()).sub(&BernsteinPoly::scaled_monomial(b.clone())))
        .collect();
    L20Basis { members, pairs, components }
}

/// Mean-zero basis of span(S) of size |S| − 1: the spanning-forest members plus,
/// when G(S) is disconnected, differences between component roots.
pub fn mean_free_basis(nodes: &[Node]) -> Vec<BernsteinPoly> {
    let graph = LatticeGraph::new(nodes.to_vec());
    let mut members = l20_basis(nodes).members;
    let roots: Vec<Node> = graph
        .components()
        .iter()
        .map(|c| c.iter().map(|&i| graph.nodes[i].clone()).min().expect("non-empty component"))
        .collect();
    for pair in roots.windows(2) {
        members.push(
            BernsteinPoly::scaled_monomial(pair[0].clone()).sub(&BernsteinPoly::scaled_monomial(pair[1].clone())),
        );
    }
    members
}

/// Exact Bernstein coefficient matrix of the linear map p ↦ D(p).
pub fn operator_matrix<F>(source: &lattice::Lattice, target: &lattice::Lattice, op: F) -> Matrix
where
    F: Fn(&BernsteinPoly) -> BernsteinPoly,
{
    let cols = source
        .nodes()
        .iter()
        .map(|alpha| {
            let image = op(&BernsteinPoly::monomial(alpha.clone(), Q::one()));
            image.raise_to(target.k).to_dense(target)
        })
        .collect();
    Matrix::from_cols(cols, target.len())
}

pub fn is_zero_poly(p: &BernsteinPoly) -> bool {
    p.coeffs.values().all(|c| c.is_zero())
}

pub fn abs_max(p: &BernsteinPoly) -> Q {
    p.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn reference_geometry() {
        let g = Geometry::reference(3);
        assert_eq!(g.volume(), &frac(1, 6));
        let sum: Vec<Q> = (0..3).map(|d| g.grads().iter().map(|gr| gr[d].clone()).sum()).collect();
        assert!(sum.iter().all(Zero::is_zero));
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let t = g.edge_vector(i, j);
                for l in 0..4 {
                    let expected = q((l == j) as i64 - (l == i) as i64);
                    assert_eq!(rational::dot(&t, g.grad_lambda(l)), expected);
                }
            }
        }
    }

    #[test]
    fn integral_of_product() {
        let g = Geometry::reference(3);
        let p = BernsteinPoly::monomial(vec![1, 1, 0, 0], q(1));
        assert_eq!(p.integrate(&g), frac(1, 120));
        assert_eq!(BernsteinPoly::constant(3, q(1)).integrate(&g), frac(1, 6));
    }

    #[test]
    fn directional_derivatives() {
        let p = BernsteinPoly::monomial(vec![0, 1, 0, 0], q(1));
        let d = p.directional_derivative(0, 1).unwrap();
        assert_eq!(d, BernsteinPoly::constant(3, q(1)));
        let p = BernsteinPoly::monomial(vec![2, 0, 0, 0], q(1));
        assert_eq!(p.directional_derivative(1, 0).unwrap(), BernsteinPoly::monomial(vec![1, 0, 0, 0], q(2)));
        let p = BernsteinPoly::monomial(vec![0, 0, 1, 0], q(1));
        assert!(p.directional_derivative(0, 1).unwrap().is_zero());
        assert!(p.directional_derivative(1, 1).is_err());
    }

    #[test]
    fn raising_preserves_values() {
        let p = BernsteinPoly::monomial(vec![1, 0, 1], q(3));
        let raised = p.raise_degree();
        let point = vec![frac(1, 5), frac(3, 10), frac(1, 2)];
        assert_eq!(p.evaluate(&point), raised.evaluate(&point));
    }

    #[test]
    fn direct_preimage_example() {
        let u = preimage_direct(&[0, 1, 0, 0], &[1, 0, 0, 0]).unwrap();
        assert_eq!(u, vec![FormalTerm::new(q(1), vec![1, 1, 0, 0], 1, 0)]);
        let div = divergence_formal(&u);
        let expected = BernsteinPoly::monomial(vec![0, 1, 0, 0], q(1)).sub(&BernsteinPoly::monomial(vec![1, 0, 0, 0], q(1)));
        assert_eq!(div, expected);
        assert!(preimage_direct(&[1, 0], &[1, 0]).is_err());
        assert!(preimage_detour(&[0, 1, 0, 0], &[1, 0, 0, 0], 0).is_err());
    }

    #[test]
    fn l20_members_are_mean_free() {
        let basis = l20_basis(&lattice::enumerate(3, 3));
        assert_eq!(basis.members.len(), 19);
        assert!(basis.is_connected());
        assert!(basis.members.iter().all(|m| m.mean().is_zero()));
    }
}
