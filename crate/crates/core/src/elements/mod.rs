//! Degree-of-freedom tables for every element family, exact DoF matrices and
//! unisolvence checks, and closed-form dimension counts.

pub mod dimension;
pub mod eval;
pub mod families;
pub mod frames;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bernstein::{BernsteinPoly, Field};
use crate::decomposition::{Smoothness3, SmoothnessN};
use crate::error::{Error, Result};
use crate::lattice::{self, SubSimplex};
use crate::rational::{self, Q};

pub use eval::{evaluate_dofs, Input};
pub use families::build_table;
pub use frames::{Frames, NormalRule};

/// What a functional extracts from the field before differentiation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// Scalar u.
    Value,
    /// v·w.
    Component(Vec<Q>),
    /// All Cartesian components of v.
    Vector,
    /// All Cartesian components of ∇u.
    Gradient,
    Div,
    /// All Cartesian components of curl v.
    Curl,
    /// curl v·w.
    CurlComponent(Vec<Q>),
}

impl Quantity {
    pub fn outputs(&self, dim: usize) -> usize {
        match self {
            Quantity::Vector | Quantity::Gradient | Quantity::Curl => dim,
            _ => 1,
        }
    }

    pub fn is_derived(&self) -> bool {
        matches!(self, Quantity::Div | Quantity::Curl | Quantity::CurlComponent(_))
    }

    pub fn label(&self) -> String {
        let vec = |w: &[Q]| w.iter().map(rational::to_string).collect::<Vec<_>>().join(",");
        match self {
            Quantity::Value => "u".into(),
            Quantity::Component(w) => format!("v.({})", vec(w)),
            Quantity::Vector => "v".into(),
            Quantity::Gradient => "grad u".into(),
            Quantity::Div => "div v".into(),
            Quantity::Curl => "curl v".into(),
            Quantity::CurlComponent(w) => format!("curl v.({})", vec(w)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DofKind {
    VertexDerivative,
    EdgeMoment,
    FaceMoment,
    InteriorMoment,
    DerivedQuantityMoment,
}

/// One functional: the normalized moment over `entity` of
/// ∂^derivative (quantity) against `test`, one test polynomial per quantity
/// output. Vertex functionals are moments over a point, i.e. point values.
#[derive(Clone, Debug, PartialEq)]
pub struct Dof {
    pub group: &'static str,
    pub entity: SubSimplex,
    pub quantity: Quantity,
    /// Exponent of each frame direction.
    pub derivative: Vec<u32>,
    pub frame: Vec<Vec<Q>>,
    /// Test polynomials in the entity's own barycentric coordinates.
    pub test: Vec<BernsteinPoly>,
    pub test_label: String,
}

impl Dof {
    pub fn kind(&self) -> DofKind {
        if self.entity.dim() == 0 {
            DofKind::VertexDerivative
        } else if self.quantity.is_derived() {
            DofKind::DerivedQuantityMoment
        } else if self.entity.dim() == self.entity.ambient() {
            DofKind::InteriorMoment
        } else if self.entity.dim() == 1 {
            DofKind::EdgeMoment
        } else {
            DofKind::FaceMoment
        }
    }

    /// Directions of the derivative, each repeated by its exponent.
    pub fn directions(&self) -> Vec<Vec<Q>> {
        self.frame
            .iter()
            .zip(&self.derivative)
            .flat_map(|(w, &m)| std::iter::repeat(w.clone()).take(m as usize))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "kind": self.kind(),
            "subsimplex": self.entity.indices(),
            "quantity": self.quantity.label(),
            "derivative": self.derivative,
            "frame": self.frame.iter().map(|w| w.iter().map(rational::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "test": self.test_label,
        })
    }
}

/// Element family with its parameters. `k` is always the polynomial degree of
/// the shape space except where a field says otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum ElementSpec {
    /// C^r scalar element; r = −1 everywhere gives the discontinuous space.
    Scalar { k: u32, r: Smoothness3 },
    /// Vector field with every component in the scalar element (r_f ≥ 0).
    VectorScalar { k: u32, r: Smoothness3 },
    /// H(div) element with r_f = −1.
    Hdiv { k: u32, r: Smoothness3 },
    DivPair { k: u32, r2: Smoothness3, r3: Smoothness3 },
    /// Shape space P_{k+1}^3.
    CurlPair { k: u32, r1: Smoothness3, r2: Smoothness3 },
    /// Shape space P_{k+2}.
    GradMod { k: u32, r0: Smoothness3 },
    Nd { n: usize, k: u32, r: SmoothnessN },
}

/// Polynomial shape space: `components` copies of P_degree on an n-simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeSpace {
    pub n: usize,
    pub degree: u32,
    pub components: usize,
}

impl ShapeSpace {
    pub fn scalar_dim(&self) -> usize {
        rational::binom(self.n as i64 + self.degree as i64, self.n as i64) as usize
    }

    pub fn dim(&self) -> usize {
        self.components * self.scalar_dim()
    }

    /// Bernstein basis, component-major for vector spaces.
    pub fn basis(&self) -> Vec<Input> {
        let nodes = lattice::enumerate(self.n, self.degree);
        if self.components == 1 {
            return nodes.into_iter().map(|a| Input::Scalar(BernsteinPoly::monomial(a, rational::q(1)))).collect();
        }
        let mut out = Vec::with_capacity(self.dim());
        for c in 0..self.components {
            for a in &nodes {
                let mut field = Field::zero(self.components, self.n, self.degree);
                field.components[c] = BernsteinPoly::monomial(a.clone(), rational::q(1));
                out.push(Input::Vector(field));
            }
        }
        out
    }

    /// Shape function with the given coefficient vector.
    pub fn combine(&self, coeffs: &[Q]) -> Input {
        let lat = lattice::Lattice::new(self.n, self.degree);
        let m = lat.len();
        if self.components == 1 {
            return Input::Scalar(BernsteinPoly::from_dense(&lat, coeffs));
        }
        Input::Vector(Field {
            components: (0..self.components)
                .map(|c| BernsteinPoly::from_dense(&lat, &coeffs[c * m..(c + 1) * m]))
                .collect(),
        })
    }
}

impl ElementSpec {
    pub fn family(&self) -> &'static str {
        match self {
            ElementSpec::Scalar { r, .. } if r.f < 0 && r.e < 0 && r.v < 0 => "l2",
            ElementSpec::Scalar { .. } => "grad",
            ElementSpec::VectorScalar { .. } | ElementSpec::Hdiv { .. } => "div",
            ElementSpec::DivPair { .. } => "div-pair",
            ElementSpec::CurlPair { .. } => "curl-pair",
            ElementSpec::GradMod { .. } => "grad-mod",
            ElementSpec::Nd { .. } => "nd",
        }
    }

    pub fn shape(&self) -> ShapeSpace {
        let s = |n, degree, components| ShapeSpace { n, degree, components };
        match *self {
            ElementSpec::Scalar { k, .. } => s(3, k, 1),
            ElementSpec::VectorScalar { k, .. } | ElementSpec::Hdiv { k, .. } | ElementSpec::DivPair { k, .. } => {
                s(3, k, 3)
            }
            ElementSpec::CurlPair { k, .. } => s(3, k + 1, 3),
            ElementSpec::GradMod { k, .. } => s(3, k + 2, 1),
            ElementSpec::Nd { n, k, .. } => s(n, k, 1),
        }
    }

    /// H(div) family dispatch: r_f ≥ 0 routes to the vector scalar table.
    pub fn div(k: u32, r: Smoothness3) -> Self {
        if r.f >= 0 {
            ElementSpec::VectorScalar { k, r }
        } else {
            ElementSpec::Hdiv { k, r }
        }
    }

    /// Checks the hypotheses of the defining result.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let need_k = |errs: &mut Vec<String>, k: i64, bound: i64, what: &str| {
            if k < bound {
                errs.push(format!("k = {k} must be at least {what} = {bound}"));
            }
        };
        match *self {
            ElementSpec::Scalar { k, r } | ElementSpec::VectorScalar { k, r } => {
                if let ElementSpec::VectorScalar { .. } = self {
                    if r.f < 0 {
                        errs.push(format!("r_f = {} must be non-negative for the vector table", r.f));
                    }
                }
                if let Err(Error::InvalidSmoothness(v)) = r.validate(k) {
                    errs.extend(v);
                }
            }
            ElementSpec::Hdiv { k, r } => {
                if r.f != -1 {
                    errs.push(format!("r_f = {} must be -1", r.f));
                }
                if r.e < -1 {
                    errs.push(format!("r_e = {} must be at least -1", r.e));
                }
                if r.v < (2 * r.e).max(-1) {
                    errs.push(format!("r_v = {} must be at least max(2r_e, -1)", r.v));
                }
                need_k(&mut errs, k as i64, 2 * r.v.max(0) as i64 + 1, "2 max(r_v, 0) + 1");
            }
            ElementSpec::DivPair { k, r2, r3 } => {
                errs.extend(div_pair_bound_violations(r2));
                errs.extend(r3.chain_violations().into_iter().map(|m| format!("r3: {m}")));
                errs.extend(dominates(r3, r2.ominus(), "r3", "r2 (-) 1"));
                let bound = (2 * r2.v as i64 + 1).max(2 * r3.v as i64 + 2).max(1);
                need_k(&mut errs, k as i64, bound, "max(2r2_v + 1, 2r3_v + 2, 1)");
            }
            ElementSpec::CurlPair { k, r1, r2 } => {
                errs.extend(curl_bound_violations(r1));
                errs.extend(r2.chain_violations().into_iter().map(|m| format!("r2: {m}")));
                errs.extend(dominates(r2, r1.ominus(), "r2", "r1 (-) 1"));
                let bound = (2 * r1.v as i64 + 1).max(2 * r2.v as i64 + 1).max(1);
                need_k(&mut errs, k as i64, bound, "max(2r1_v + 1, 2r2_v + 1, 1)");
            }
            ElementSpec::GradMod { k, r0 } => {
                if r0.f < 0 {
                    errs.push(format!("r0 = {r0} must be non-negative"));
                }
                errs.extend(r0.chain_violations().into_iter().map(|m| format!("r0: {m}")));
                need_k(&mut errs, k as i64 + 2, 2 * r0.v as i64 + 1, "2r0_v + 1 for the degree k + 2");
            }
            ElementSpec::Nd { k, ref r, .. } => {
                if let Err(Error::InvalidSmoothness(v)) = r.validate(k) {
                    errs.extend(v);
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSmoothness(errs))
        }
    }
}

impl fmt::Display for ElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementSpec::Scalar { k, r } | ElementSpec::VectorScalar { k, r } | ElementSpec::Hdiv { k, r } => {
                write!(f, "{} k={k} r={r}", self.family())
            }
            ElementSpec::DivPair { k, r2, r3 } => write!(f, "div-pair k={k} r2={r2} r3={r3}"),
            ElementSpec::CurlPair { k, r1, r2 } => write!(f, "curl-pair degree={} r1={r1} r2={r2}", k + 1),
            ElementSpec::GradMod { k, r0 } => write!(f, "grad-mod degree={} r0={r0}", k + 2),
            ElementSpec::Nd { n, k, r } => write!(f, "nd n={n} k={k} r={:?}", r.entries),
        }
    }
}

/// r2 bounds required by the div-stable pair: r_e ≥ 2r_f + 1 and r_v ≥ 2r_e
/// when r_f ≥ 0; r_v ≥ 2r_e when r_f = −1 and r_e ≥ 1; r_v ≥ 2r_e + 1 otherwise.
pub fn div_pair_bound_violations(r2: Smoothness3) -> Vec<String> {
    let mut errs: Vec<String> = r2.chain_violations().into_iter().map(|m| format!("r2: {m}")).collect();
    if r2.f >= 0 {
        if r2.e < 2 * r2.f + 1 {
            errs.push(format!("r2_e = {} must be at least 2r2_f + 1", r2.e));
        }
        if r2.v < 2 * r2.e {
            errs.push(format!("r2_v = {} must be at least 2r2_e", r2.v));
        }
    } else if r2.e >= 1 {
        if r2.v < 2 * r2.e {
            errs.push(format!("r2_v = {} must be at least 2r2_e", r2.v));
        }
    } else if r2.v < 2 * r2.e + 1 {
        errs.push(format!("r2_v = {} must be at least 2r2_e + 1", r2.v));
    }
    errs
}

/// r1 = r0 − 1 for a valid r0 ≥ 0: r_v ≥ 2r_e + 1 and r_e ≥ 2r_f + 1.
pub fn curl_bound_violations(r1: Smoothness3) -> Vec<String> {
    let mut errs: Vec<String> = r1.chain_violations().into_iter().map(|m| format!("r1: {m}")).collect();
    if r1.e < 2 * r1.f + 1 {
        errs.push(format!("r1_e = {} must be at least 2r1_f + 1", r1.e));
    }
    if r1.v < 2 * r1.e + 1 {
        errs.push(format!("r1_v = {} must be at least 2r1_e + 1", r1.v));
    }
    errs
}

fn dominates(a: Smoothness3, b: Smoothness3, an: &str, bn: &str) -> Vec<String> {
    let mut errs = Vec::new();
    for (name, x, y) in [("v", a.v, b.v), ("e", a.e, b.e), ("f", a.f, b.f)] {
        if x < y {
            errs.push(format!("{an}_{name} = {x} must be at least ({bn})_{name} = {y}"));
        }
    }
    errs
}

/// Ordered functionals grouped by sub-simplex.
#[derive(Clone, Debug)]
pub struct DofTable {
    pub spec: ElementSpec,
    pub dofs: Vec<Dof>,
}

impl DofTable {
    pub fn len(&self) -> usize {
        self.dofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dofs.is_empty()
    }

    pub fn shape(&self) -> ShapeSpace {
        self.spec.shape()
    }

    /// DoF count on each sub-simplex, keyed by its local vertex indices.
    pub fn per_entity(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut out = BTreeMap::new();
        for d in &self.dofs {
            *out.entry(d.entity.indices().to_vec()).or_insert(0) += 1;
        }
        out
    }

    /// DoF count of one sub-simplex of each dimension, assuming the counts are
    /// the same on all sub-simplices of that dimension.
    pub fn counts_by_dim(&self) -> Vec<Vec<usize>> {
        let n = self.shape().n;
        (0..=n)
            .map(|dim| {
                lattice::subsimplices(n, dim)
                    .iter()
                    .map(|f| self.dofs.iter().filter(|d| &d.entity == f).count())
                    .collect()
            })
            .collect()
    }

    pub fn group_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for d in &self.dofs {
            *out.entry(d.group).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.spec.family(),
            "element": self.spec.to_string(),
            "shape_dim": self.shape().dim(),
            "count": self.len(),
            "counts_by_dim": self.counts_by_dim(),
            "groups": self.group_counts(),
            "dofs": self.dofs.iter().map(Dof::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of a unisolvence check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unisolvence {
    pub dofs: usize,
    pub shape_dim: usize,
    pub rank: usize,
    /// Sign of the determinant; 0 when singular or non-square.
    pub determinant_sign: i32,
    pub unisolvent: bool,
}

/// Entry (i, j) is DoF i applied to shape basis function j.
pub fn assemble_dof_matrix(table: &DofTable, g: &crate::bernstein::Geometry) -> Result<crate::linalg::Matrix> {
    let shape = table.shape();
    if table.len() != shape.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} has {} DoFs for a shape space of dimension {}",
            table.spec,
            table.len(),
            shape.dim()
        )));
    }
    Ok(evaluate_dofs(&table.dofs, &shape.basis(), g))
}

pub fn verify_unisolvence(table: &DofTable, g: &crate::bernstein::Geometry) -> Result<Unisolvence> {
    let shape = table.shape();
    let base = Unisolvence {
        dofs: table.len(),
        shape_dim: shape.dim(),
        rank: 0,
        determinant_sign: 0,
        unisolvent: false,
    };
    if table.len() != shape.dim() {
        let m = evaluate_dofs(&table.dofs, &shape.basis(), g);
        return Ok(Unisolvence { rank: m.rank(), ..base });
    }
    let m = assemble_dof_matrix(table, g)?;
    let det = m.determinant()?;
    let sign = rational::sign(&det);
    let rank = if sign != 0 { shape.dim() } else { m.rank() };
    Ok(Unisolvence { rank, determinant_sign: sign, unisolvent: sign != 0, ..base })
}
