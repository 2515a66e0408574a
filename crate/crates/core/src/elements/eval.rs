//! Exact evaluation of functionals on polynomials. Functionals sharing a
//! sub-simplex, quantity and derivative form a channel whose preprocessing is
//! done once per input.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::bernstein::{mean_of_monomial, BernsteinPoly, Field, Geometry};
use crate::lattice::{Node, SubSimplex};
use crate::linalg::Matrix;
use crate::rational::Q;

use super::{Dof, Quantity};

/// Argument of a functional.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Scalar(BernsteinPoly),
    Vector(Field),
}

impl Input {
    pub fn as_scalar(&self) -> Option<&BernsteinPoly> {
        match self {
            Input::Scalar(p) => Some(p),
            Input::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&Field> {
        match self {
            Input::Vector(v) => Some(v),
            Input::Scalar(_) => None,
        }
    }
}

fn dot(field: &Field, w: &[Q]) -> BernsteinPoly {
    field.dot_const(w)
}

/// The polynomials a quantity extracts from an input.
pub fn quantity_polys(quantity: &Quantity, input: &Input, g: &Geometry) -> Vec<BernsteinPoly> {
    let scalar = || input.as_scalar().expect("scalar functional applied to a vector field");
    let vector = || input.as_vector().expect("vector functional applied to a scalar");
    match quantity {
        Quantity::Value => vec![scalar().clone()],
        Quantity::Gradient => scalar().gradient(g).components,
        Quantity::Component(w) => vec![dot(vector(), w)],
        Quantity::Vector => vector().components.clone(),
        Quantity::Div => vec![vector().divergence(g)],
        Quantity::Curl => vector().curl(g).components,
        Quantity::CurlComponent(w) => vec![dot(&vector().curl(g), w)],
    }
}

/// Normalized moment Σ p_γ q_δ mean(γ + δ) of two polynomials on the same simplex.
pub fn moment(p: &BernsteinPoly, q: &BernsteinPoly) -> Q {
    let mut acc = Q::zero();
    for (gamma, a) in &p.coeffs {
        for (delta, b) in &q.coeffs {
            let sum: Node = gamma.iter().zip(delta).map(|(x, y)| x + y).collect();
            acc += a * b * mean_of_monomial(&sum);
        }
    }
    acc
}

/// Applies one functional to one input.
pub fn apply(dof: &Dof, input: &Input, g: &Geometry) -> Q {
    let polys = processed(dof, input, g);
    polys.iter().zip(&dof.test).fold(Q::zero(), |acc, (p, q)| acc + moment(p, q))
}

fn processed(dof: &Dof, input: &Input, g: &Geometry) -> Vec<BernsteinPoly> {
    let directions = dof.directions();
    quantity_polys(&dof.quantity, input, g)
        .into_iter()
        .map(|p| {
            let d = directions.iter().fold(p, |acc, w| acc.derivative_along(w, g));
            d.restrict(&dof.entity)
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ChannelKey {
    quantity: Quantity,
    entity: SubSimplex,
    directions: Vec<Vec<Q>>,
}

/// Weight of each restricted monomial against a fixed test, memoized.
struct TestWeights<'a> {
    test: &'a [BernsteinPoly],
    memo: HashMap<(usize, Node), Q>,
}

impl<'a> TestWeights<'a> {
    fn weight(&mut self, component: usize, gamma: &Node) -> Q {
        if let Some(w) = self.memo.get(&(component, gamma.clone())) {
            return w.clone();
        }
        let mut acc = Q::zero();
        for (delta, b) in &self.test[component].coeffs {
            let sum: Node = gamma.iter().zip(delta).map(|(x, y)| x + y).collect();
            acc += b * mean_of_monomial(&sum);
        }
        self.memo.insert((component, gamma.clone()), acc.clone());
        acc
    }
}

/// Matrix with entry (i, j) = dofs[i](inputs[j]).
pub fn evaluate_dofs(dofs: &[Dof], inputs: &[Input], g: &Geometry) -> Matrix {
    let mut channels: BTreeMap<ChannelKey, Vec<usize>> = BTreeMap::new();
    for (i, d) in dofs.iter().enumerate() {
        let key = ChannelKey { quantity: d.quantity.clone(), entity: d.entity.clone(), directions: d.directions() };
        channels.entry(key).or_default().push(i);
    }
    let mut by_quantity: BTreeMap<Quantity, Vec<(ChannelKey, Vec<usize>)>> = BTreeMap::new();
    for (key, rows) in channels {
        by_quantity.entry(key.quantity.clone()).or_default().push((key, rows));
    }
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    for (quantity, group) in by_quantity {
        let extracted: Vec<Vec<BernsteinPoly>> =
            inputs.par_iter().map(|input| quantity_polys(&quantity, input, g)).collect();
        let chunk: Vec<(usize, usize, Q)> = group
            .par_iter()
            .flat_map_iter(|(key, rows)| {
                let mut weights: Vec<TestWeights> =
                    rows.iter().map(|&i| TestWeights { test: &dofs[i].test, memo: HashMap::new() }).collect();
                let mut out = Vec::new();
                for (j, polys) in extracted.iter().enumerate() {
                    let restricted: Vec<BernsteinPoly> = polys
                        .iter()
                        .map(|p| {
                            let d = key.directions.iter().fold(p.clone(), |acc, w| acc.derivative_along(w, g));
                            d.restrict(&key.entity)
                        })
                        .collect();
                    if restricted.iter().all(BernsteinPoly::is_zero) {
                        continue;
                    }
                    for (slot, &i) in rows.iter().enumerate() {
                        let mut acc = Q::zero();
                        for (c, p) in restricted.iter().enumerate() {
                            if dofs[i].test[c].is_zero() {
                                continue;
                            }
                            for (gamma, a) in &p.coeffs {
                                acc += a * weights[slot].weight(c, gamma);
                            }
                        }
                        if !acc.is_zero() {
                            out.push((i, j, acc));
                        }
                    }
                }
                out
            })
            .collect();
        entries.extend(chunk);
    }
    let mut m = Matrix::zeros(dofs.len(), inputs.len());
    for (i, j, v) in entries {
        m.set(i, j, v);
    }
    m
}
