//! Independent oracles: Cartesian polynomial algebra, exact simplex integration
//! by the Dirichlet formula, barycentric coordinates by elimination, and a
//! brute-force lattice partition.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn fr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Polynomial in Cartesian monomials x^a.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub dim: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn constant(dim: usize, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; dim], c);
        }
        Self { dim, terms }
    }

    /// c + Σ g_d x_d.
    pub fn affine(c: Q, g: &[Q]) -> Self {
        let mut p = Self::constant(g.len(), c);
        for (d, gd) in g.iter().enumerate() {
            let mut e = vec![0; g.len()];
            e[d] = 1;
            p.add_term(e, gd.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        let v = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut p = Self::constant(self.dim, Q::zero());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::constant(self.dim, Q::zero());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.dim, q(1)), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut p = Self::constant(self.dim, Q::zero());
        for (e, c) in &self.terms {
            if e[axis] > 0 {
                let mut f = e.clone();
                f[axis] -= 1;
                p.add_term(f, c * q(e[axis] as i64));
            }
        }
        p
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// p(x0 + A x̂) as a polynomial in x̂, with columns of A the edge vectors.
    pub fn compose_affine(&self, x0: &[Q], a_cols: &[Vec<Q>]) -> Self {
        let n = a_cols.len();
        let coords: Vec<Poly> = (0..self.dim)
            .map(|d| Poly::affine(x0[d].clone(), &a_cols.iter().map(|c| c[d].clone()).collect::<Vec<_>>()))
            .collect();
        let mut out = Self::constant(n, Q::zero());
        for (e, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (d, &k) in e.iter().enumerate() {
                t = t.mul(&coords[d].pow(k));
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact integral over the reference simplex: ∫ x^a = Π a_i! / (|a| + n)!.
    pub fn integrate_reference(&self) -> Q {
        let n = self.dim as u32;
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let num: BigInt = e.iter().map(|&k| fact(k)).product();
            let total: u32 = e.iter().sum();
            acc += c * Q::new(num, fact(total + n));
        }
        acc
    }
}

pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let v = &m[c][j] * &f;
                m[r][j] -= v;
            }
        }
    }
    d
}

/// Barycentric coordinates of a simplex as affine polynomials, by Cramer's rule.
pub fn barycentric_polys(verts: &[Vec<Q>]) -> Vec<Poly> {
    let n = verts.len() - 1;
    // λ solves [1 ... 1; v_0 ... v_n] λ = [1; x].
    let mat: Vec<Vec<Q>> = (0..=n)
        .map(|row| (0..=n).map(|col| if row == 0 { q(1) } else { verts[col][row - 1].clone() }).collect())
        .collect();
    let d = det(mat.clone());
    (0..=n)
        .map(|i| {
            // Column i replaced by [1; x]; expand linearly in x.
            let with = |rhs: Vec<Q>| {
                let mut m = mat.clone();
                for (r, v) in rhs.into_iter().enumerate() {
                    m[r][i] = v;
                }
                det(m)
            };
            let mut base = vec![Q::zero(); n + 1];
            base[0] = q(1);
            let c = with(base) / &d;
            let g: Vec<Q> = (0..n)
                .map(|axis| {
                    let mut rhs = vec![Q::zero(); n + 1];
                    rhs[axis + 1] = q(1);
                    with(rhs) / &d
                })
                .collect();
            Poly::affine(c, &g)
        })
        .collect()
}

pub fn volume(verts: &[Vec<Q>]) -> Q {
    let n = verts.len() - 1;
    let m: Vec<Vec<Q>> = (0..n).map(|r| (1..=n).map(|c| &verts[c][r] - &verts[0][r]).collect()).collect();
    let d = det(m);
    let d = if d < Q::zero() { -d } else { d };
    d / Q::from_integer(fact(n as u32))
}

/// ∫_T p over an arbitrary simplex via the affine pullback to the reference simplex.
pub fn integrate(p: &Poly, verts: &[Vec<Q>]) -> Q {
    let n = verts.len() - 1;
    let cols: Vec<Vec<Q>> = (1..=n).map(|c| (0..n).map(|d| &verts[c][d] - &verts[0][d]).collect()).collect();
    let jac = volume(verts) * Q::from_integer(fact(n as u32));
    p.compose_affine(&verts[0], &cols).integrate_reference() * jac
}

pub fn reference_vertices(n: usize) -> Vec<Vec<Q>> {
    (0..=n).map(|i| (0..n).map(|d| if i == d + 1 { q(1) } else { q(0) }).collect()).collect()
}

/// Multi-indices of length n + 1 summing to k.
pub fn nodes(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in nodes(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (n + 1))
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..=n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Node sets per sub-simplex: a node goes to the lowest-dimensional f with
/// Σ_{i∉f} α_i ≤ r_dim(f); nodes claimed by no proper face are interior.
/// The flag reports a node claimed by two faces of the same dimension.
pub fn brute_force_partition(n: usize, k: u32, r: &[i32]) -> (BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>>, bool) {
    let mut parts: BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>> = BTreeMap::new();
    for dim in 0..=n {
        for f in subsets(n, dim + 1) {
            parts.insert(f, BTreeSet::new());
        }
    }
    let mut ambiguous = false;
    for a in nodes(n, k) {
        let mut owner: Vec<usize> = (0..=n).collect();
        for dim in 0..n {
            let hits: Vec<Vec<usize>> = subsets(n, dim + 1)
                .into_iter()
                .filter(|f| (0..=n).filter(|i| !f.contains(i)).map(|i| a[i] as i64).sum::<i64>() <= r[dim] as i64)
                .collect();
            if let Some(first) = hits.first() {
                ambiguous |= hits.len() > 1;
                owner = first.clone();
                break;
            }
        }
        parts.get_mut(&owner).expect("every vertex subset is a key").insert(a);
    }
    (parts, ambiguous)
}

/// Per-entity counts (one vertex, one edge, ...) and the interior count.
pub fn brute_force_counts(n: usize, k: u32, r: &[i32]) -> Vec<usize> {
    let (parts, _) = brute_force_partition(n, k, r);
    (0..=n).map(|dim| parts[&(0..=dim).collect::<Vec<_>>()].len()).collect()
}

/// λ^α on the simplex as a Cartesian polynomial.
pub fn lambda_power(lambdas: &[Poly], alpha: &[u32]) -> Poly {
    let dim = lambdas[0].dim;
    alpha
        .iter()
        .zip(lambdas)
        .fold(Poly::constant(dim, q(1)), |acc, (&a, l)| acc.mul(&l.pow(a)))
}

/// Σ c_α λ^α as a Cartesian polynomial.
pub fn bernstein_to_cartesian(p: &fe_complex::bernstein::BernsteinPoly, lambdas: &[Poly]) -> Poly {
    let dim = lambdas[0].dim;
    p.coeffs
        .iter()
        .fold(Poly::constant(dim, Q::zero()), |acc, (alpha, c)| acc.add(&lambda_power(lambdas, alpha).scale(c)))
}

/// Non-degenerate simplex with small rational coordinates, from a seed.
pub fn random_simplex(n: usize, seed: u64) -> Vec<Vec<Q>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let verts: Vec<Vec<Q>> = (0..=n)
            .map(|_| (0..n).map(|_| fr(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
            .collect();
        if !volume(&verts).is_zero() {
            return verts;
        }
    }
}
