//! Polynomials in Cartesian monomials, converted to Bernstein form per cell.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::bernstein::{BernsteinPoly, Field, Geometry};
use crate::lattice;
use crate::rational::{frac, Q};

/// Σ c_a x^a over exponent vectors a.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianPoly {
    pub dim: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl CartesianPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Q) {
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| lattice::degree(a)).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (a, c)| {
            acc + a.iter().zip(x).fold(c.clone(), |m, (&e, xi)| m * num_traits::pow(xi.clone(), e as usize))
        })
    }

    /// Random polynomial of total degree `degree` with coefficients a/b,
    /// a ∈ {−3, …, 3}, b ∈ {1, 2, 3}.
    pub fn random<R: Rng>(dim: usize, degree: u32, rng: &mut R) -> Self {
        let mut p = Self::zero(dim);
        for d in 0..=degree {
            for node in lattice::enumerate(dim, d) {
                let exps = node[..dim].to_vec();
                p.add_term(exps, frac(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
            }
        }
        p
    }

    /// The same polynomial in the degree-`degree()` Bernstein basis of `g`.
    pub fn to_bernstein(&self, g: &Geometry) -> BernsteinPoly {
        let n = g.dim();
        let m = self.degree();
        let coordinate = |d: usize| {
            let mut p = BernsteinPoly::zero(n, 1);
            for (i, v) in g.vertices().iter().enumerate() {
                let mut alpha = vec![0; n + 1];
                alpha[i] = 1;
                p.add_term(alpha, v[d].clone());
            }
            p
        };
        let coords: Vec<BernsteinPoly> = (0..self.dim).map(coordinate).collect();
        let mut out = BernsteinPoly::zero(n, m);
        for (a, c) in &self.terms {
            let mut term = BernsteinPoly::constant(n, c.clone());
            for (d, &e) in a.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&coords[d]);
                }
            }
            out = out.add(&term.raise_to(m));
        }
        out
    }
}

/// Vector of Cartesian polynomials.
pub fn field_to_bernstein(components: &[CartesianPoly], g: &Geometry) -> Field {
    let m = components.iter().map(CartesianPoly::degree).max().unwrap_or(0);
    Field { components: components.iter().map(|p| p.to_bernstein(g).raise_to(m)).collect() }
}

pub fn random_field<R: Rng>(dim: usize, degree: u32, rng: &mut R) -> Vec<CartesianPoly> {
    (0..dim).map(|_| CartesianPoly::random(dim, degree, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bernstein_form_matches_point_values() {
        let g = Geometry::new(vec![
            vec![q(0), q(0), q(0)],
            vec![q(2), q(0), q(1)],
            vec![q(0), q(1), q(0)],
            vec![frac(1, 3), q(0), q(1)],
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = CartesianPoly::random(3, 3, &mut rng);
        let b = p.to_bernstein(&g);
        for x in [[frac(1, 5), frac(1, 7), frac(1, 3)], [q(1), q(0), frac(1, 2)]] {
            assert_eq!(b.evaluate(&g.barycentric(&x)), p.evaluate(&x));
        }
    }
}
