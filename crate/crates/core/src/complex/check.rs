//! Exactness, commuting-diagram, dimension-identity and trace checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::decomposition::{bubble_nodes, face_bubble_nodes, Smoothness3, SmoothnessN};
use crate::elements::eval::Input;
use crate::elements::frames::Frames;
use crate::elements::{assemble_dof_matrix, div_pair_bound_violations, ElementSpec};
use crate::elements::dimension::scalar_counts;
use crate::error::{Error, Result};
use crate::lattice::SubSimplex;
use crate::linalg::Matrix;
use crate::rational::{binom, q, to_string, Q};

use super::mesh::Triangulation;
use super::poly::{field_to_bernstein, random_field, CartesianPoly};
use super::space::{assemble_global_operator, Differential, GlobalSpace};

/// Smoothness sequence r0 → r1 → r2 → r3 with the div-pair degree k.
/// Spaces: grad-mod of degree k+2, curl-pair of degree k+1, div-pair of
/// degree k, discontinuous-or-smoother scalars of degree k−1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSpec {
    pub k: u32,
    pub r0: Smoothness3,
    pub r1: Smoothness3,
    pub r2: Smoothness3,
    pub r3: Smoothness3,
}

/// Sets of hypotheses under which a smoothness sequence is known to give an exact complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// r_f ≥ 0 in the div slot with every index dropping by one.
    Stokes,
    /// r2_f = −1 with r2 = r1 ⊖ 1 and r3 = r2 ⊖ 1.
    DeRham,
    /// Decoupled sequences joined by a div-stable pair.
    General,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Stokes => "stokes",
            Branch::DeRham => "de-rham",
            Branch::General => "general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchReport {
    pub admitted: Vec<Branch>,
    pub violations: BTreeMap<Branch, Vec<String>>,
}

impl BranchReport {
    pub fn first(&self) -> Option<Branch> {
        self.admitted.first().copied()
    }
}

fn differs(a: Smoothness3, b: Smoothness3, an: &str, bn: &str, errs: &mut Vec<String>) {
    if a != b {
        errs.push(format!("{an} = {a} must equal {bn} = {b}"));
    }
}

fn at_least(a: Smoothness3, b: Smoothness3, an: &str, bn: &str, errs: &mut Vec<String>) {
    for (name, x, y) in [("v", a.v, b.v), ("e", a.e, b.e), ("f", a.f, b.f)] {
        if x < y {
            errs.push(format!("{an}_{name} = {x} must be at least ({bn})_{name} = {y}"));
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String, errs: &mut Vec<String>) {
    if !cond {
        errs.push(msg());
    }
}

impl ComplexSpec {
    pub fn new(k: u32, r0: Smoothness3, r1: Smoothness3, r2: Smoothness3, r3: Smoothness3) -> Self {
        Self { k, r0, r1, r2, r3 }
    }

    /// r1 = r0 − 1, r2 = r1 ⊖ 1, r3 = r2 ⊖ 1.
    pub fn from_r0(k: u32, r0: Smoothness3) -> Self {
        let r1 = r0.shifted(-1);
        let r2 = r1.ominus();
        Self::new(k, r0, r1, r2, r2.ominus())
    }

    pub fn hermite() -> Self {
        Self::from_r0(1, Smoothness3::new(1, 0, 0))
    }

    pub fn argyris() -> Self {
        Self::from_r0(3, Smoothness3::new(2, 1, 0))
    }

    pub fn stokes() -> Self {
        Self::new(
            6,
            Smoothness3::uniform(0),
            Smoothness3::uniform(-1),
            Smoothness3::new(2, 1, 0),
            Smoothness3::new(1, 0, -1),
        )
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "hermite" => Ok(Self::hermite()),
            "argyris" => Ok(Self::argyris()),
            "stokes" => Ok(Self::stokes()),
            other => Err(Error::Parse(format!("unknown complex {other:?}; expected hermite, argyris or stokes"))),
        }
    }

    pub fn spaces(&self) -> [ElementSpec; 4] {
        let k = self.k;
        [
            ElementSpec::GradMod { k, r0: self.r0 },
            ElementSpec::CurlPair { k, r1: self.r1, r2: self.r2 },
            ElementSpec::DivPair { k, r2: self.r2, r3: self.r3 },
            ElementSpec::Scalar { k: k.saturating_sub(1), r: self.r3 },
        ]
    }

    fn stokes_violations(&self) -> Vec<String> {
        let (r0, r1, r2, r3) = (self.r0, self.r1, self.r2, self.r3);
        let mut e = Vec::new();
        check(r2.f >= 0, || format!("r2_f = {} must be non-negative", r2.f), &mut e);
        check(r2.e >= 2 * r2.f + 2, || format!("r2_e = {} must be at least 2r2_f + 2", r2.e), &mut e);
        check(r2.v >= 2 * r2.e + 2, || format!("r2_v = {} must be at least 2r2_e + 2", r2.v), &mut e);
        check(self.k as i32 >= 2 * r2.v + 3, || format!("k = {} must be at least 2r2_v + 3", self.k), &mut e);
        differs(r0, r1.shifted(1), "r0", "r1 + 1", &mut e);
        differs(r1, r2.shifted(1), "r1", "r2 + 1", &mut e);
        differs(r3, r2.shifted(-1), "r3", "r2 - 1", &mut e);
        e
    }

    fn de_rham_violations(&self) -> Vec<String> {
        let (r0, r1, r2, r3) = (self.r0, self.r1, self.r2, self.r3);
        let mut e = div_pair_bound_violations(r2);
        check(r2.f == -1, || format!("r2_f = {} must be -1", r2.f), &mut e);
        let bound = (2 * r1.v + 1).max(1);
        check(self.k as i32 >= bound, || format!("k = {} must be at least max(2r1_v + 1, 1) = {bound}", self.k), &mut e);
        differs(r0, r1.shifted(1), "r0", "r1 + 1", &mut e);
        check(r0.f >= 0, || format!("r0 = {r0} must be non-negative"), &mut e);
        differs(r2, r1.ominus(), "r2", "r1 (-) 1", &mut e);
        differs(r3, r2.ominus(), "r3", "r2 (-) 1", &mut e);
        e.extend(r1.chain_violations().into_iter().map(|m| format!("r1: {m}")));
        e
    }

    fn general_violations(&self) -> Vec<String> {
        let (r0, r1, r2, r3, k) = (self.r0, self.r1, self.r2, self.r3, self.k as i32);
        let mut e = Vec::new();
        check(r0.f >= 0, || format!("r0 = {r0} must be non-negative"), &mut e);
        differs(r1, r0.shifted(-1), "r1", "r0 - 1", &mut e);
        at_least(r2, r1.ominus(), "r2", "r1 (-) 1", &mut e);
        at_least(r3, r2.ominus(), "r3", "r2 (-) 1", &mut e);
        check(r1.v >= 2 * r1.e + 1, || format!("r1_v = {} must be at least 2r1_e + 1", r1.v), &mut e);
        check(r1.e >= 2 * r1.f + 1, || format!("r1_e = {} must be at least 2r1_f + 1", r1.e), &mut e);
        for (name, r) in [("r2", r2), ("r3", r3)] {
            check(r.v >= 2 * r.e, || format!("{name}_v = {} must be at least 2{name}_e", r.v), &mut e);
            check(r.e >= 2 * r.f, || format!("{name}_e = {} must be at least 2{name}_f", r.e), &mut e);
        }
        e.extend(div_pair_bound_violations(r2));
        let bound = (2 * r1.v + 1).max(2 * r2.v + 1).max(2 * r3.v + 2).max(1);
        check(k >= bound, || format!("k = {k} must be at least {bound}"), &mut e);
        let interior = if k >= 1 { bubble_nodes(self.k - 1, r3).len() } else { 0 };
        check(interior >= 1, || format!("B_{}(T; {r3}) is empty", k - 1), &mut e);
        let face = face_bubble_nodes(self.k, r2.v, r2.e).len();
        check(face >= 1, || format!("B_{k}(f; {}, {}) is empty", r2.v, r2.e), &mut e);
        e
    }

    /// Which hypothesis sets admit this sequence, as printed, without reconciling them.
    pub fn branches(&self) -> BranchReport {
        let mut admitted = Vec::new();
        let mut violations = BTreeMap::new();
        for (branch, errs) in [
            (Branch::Stokes, self.stokes_violations()),
            (Branch::DeRham, self.de_rham_violations()),
            (Branch::General, self.general_violations()),
        ] {
            if errs.is_empty() {
                admitted.push(branch);
            }
            violations.insert(branch, errs);
        }
        BranchReport { admitted, violations }
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} r0={} r1={} r2={} r3={}", self.k, self.r0, self.r1, self.r2, self.r3)
    }
}

/// The four global spaces and the three operators between them.
pub struct GlobalComplex {
    pub spec: ComplexSpec,
    pub spaces: [GlobalSpace; 4],
    pub grad: Matrix,
    pub curl: Matrix,
    pub div: Matrix,
}

impl GlobalComplex {
    pub fn assemble(mesh: &Triangulation, spec: ComplexSpec, frames: &Frames) -> Result<Self> {
        let [s0, s1, s2, s3] = spec.spaces();
        let spaces = [
            GlobalSpace::new(&s0, mesh, frames)?,
            GlobalSpace::new(&s1, mesh, frames)?,
            GlobalSpace::new(&s2, mesh, frames)?,
            GlobalSpace::new(&s3, mesh, frames)?,
        ];
        let grad = assemble_global_operator(&spaces[0], &spaces[1], Differential::Grad)?;
        let curl = assemble_global_operator(&spaces[1], &spaces[2], Differential::Curl)?;
        let div = assemble_global_operator(&spaces[2], &spaces[3], Differential::Div)?;
        Ok(Self { spec, spaces, grad, curl, div })
    }

    pub fn dims(&self) -> [usize; 4] {
        [self.spaces[0].dim(), self.spaces[1].dim(), self.spaces[2].dim(), self.spaces[3].dim()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexReport {
    pub mesh: String,
    pub mesh_counts: Vec<usize>,
    pub spec: ComplexSpec,
    pub branches: BranchReport,
    pub dims: [usize; 4],
    /// n0 − n1 + n2 − n3.
    pub alternating_sum: i64,
    /// grad, curl, div.
    pub ranks: [usize; 3],
    pub kernels: [usize; 3],
    pub checks: BTreeMap<&'static str, bool>,
    pub exact: bool,
}

impl ComplexReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Exact rank–nullity verification of the assembled complex.
pub fn exactness_check(mesh: &Triangulation, spec: ComplexSpec, frames: &Frames) -> Result<ComplexReport> {
    let cx = GlobalComplex::assemble(mesh, spec, frames)?;
    Ok(exactness_of(mesh, &cx))
}

pub fn exactness_of(mesh: &Triangulation, cx: &GlobalComplex) -> ComplexReport {
    let dims = cx.dims();
    let ranks = [cx.grad.rank(), cx.curl.rank(), cx.div.rank()];
    let kernels = [dims[0] - ranks[0], dims[1] - ranks[1], dims[2] - ranks[2]];
    let one = cx.spaces[0].interpolate(|g| Input::Scalar(crate::bernstein::BernsteinPoly::constant(g.dim(), q(1))));
    let grad_one = cx.grad.mul_vec(&one);
    let curl_grad = cx.curl.mul(&cx.grad).map(|m| m.is_zero()).unwrap_or(false);
    let div_curl = cx.div.mul(&cx.curl).map(|m| m.is_zero()).unwrap_or(false);
    let alternating_sum = dims[0] as i64 - dims[1] as i64 + dims[2] as i64 - dims[3] as i64;
    let mut checks = BTreeMap::new();
    checks.insert("grad_kernel_is_constants", kernels[0] == 1 && grad_one.iter().all(Q::is_zero));
    checks.insert("curl_kernel_is_grad_image", kernels[1] == ranks[0]);
    checks.insert("div_kernel_is_curl_image", kernels[2] == ranks[1]);
    checks.insert("div_surjective", ranks[2] == dims[3]);
    checks.insert("curl_grad_zero", curl_grad);
    checks.insert("div_curl_zero", div_curl);
    checks.insert("dimension_identity", alternating_sum == 1);
    checks.insert(
        "dims_match_entity_counts",
        cx.spaces.iter().all(|s| s.dim() == s.counted_dim()),
    );
    let exact = checks.values().all(|&b| b);
    ComplexReport {
        mesh: mesh.name.clone(),
        mesh_counts: mesh.counts(),
        spec: cx.spec,
        branches: cx.spec.branches(),
        dims,
        alternating_sum,
        ranks,
        kernels,
        checks,
        exact,
    }
}

/// A I(x) − I(d x) for one operator and one sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub operator: &'static str,
    pub sample: usize,
    pub nonzero: usize,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutingReport {
    pub mesh: String,
    pub spec: ComplexSpec,
    pub seed: u64,
    pub samples: usize,
    /// Degrees of the scalar sample and of the curl and div vector samples.
    pub degrees: [u32; 3],
    pub residuals: Vec<Residual>,
    pub commutes: bool,
}

impl CommutingReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Checks grad I u = I grad u, curl I v = I curl v and div I w = I div w
/// exactly on seeded random polynomials one degree above each space.
pub fn commuting_diagram_check(
    mesh: &Triangulation,
    spec: ComplexSpec,
    frames: &Frames,
    samples: usize,
    seed: u64,
) -> Result<CommutingReport> {
    let cx = GlobalComplex::assemble(mesh, spec, frames)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = [spec.k + 3, spec.k + 2, spec.k + 1];
    let mut residuals = Vec::new();
    for sample in 0..samples {
        let u = CartesianPoly::random(3, degrees[0], &mut rng);
        let v = random_field(3, degrees[1], &mut rng);
        let w = random_field(3, degrees[2], &mut rng);
        let steps: [(Differential, &Matrix, usize, Box<dyn Fn(&crate::bernstein::Geometry) -> Input + Sync>); 3] = [
            (Differential::Grad, &cx.grad, 0, Box::new(|g| Input::Scalar(u.to_bernstein(g)))),
            (Differential::Curl, &cx.curl, 1, Box::new(|g| Input::Vector(field_to_bernstein(&v, g)))),
            (Differential::Div, &cx.div, 2, Box::new(|g| Input::Vector(field_to_bernstein(&w, g)))),
        ];
        for (op, matrix, slot, f) in steps {
            let before = cx.spaces[slot].interpolate(&f);
            let lhs = matrix.mul_vec(&before);
            let rhs = cx.spaces[slot + 1].interpolate(|g| op.apply(&f(g), g).expect("operator matches the slot"));
            let diff: Vec<Q> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            residuals.push(Residual {
                operator: op.name(),
                sample,
                nonzero: diff.iter().filter(|x| !x.is_zero()).count(),
                values: diff.iter().map(to_string).collect(),
            });
        }
    }
    let commutes = residuals.iter().all(|r| r.nonzero == 0);
    Ok(CommutingReport { mesh: mesh.name.clone(), spec, seed, samples, degrees, residuals, commutes })
}

/// Per-entity counts of the four spaces under the decay chain and their
/// alternating column sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlternatingSums {
    pub k: u32,
    pub r: [Smoothness3; 4],
    /// Row i: C_0..C_3 of space i, multiplied by its component count.
    pub table: [[i64; 4]; 4],
    pub sums: [i64; 4],
    pub expected: [i64; 4],
    pub hypotheses: Vec<String>,
    pub holds: bool,
}

/// Σ_i (−1)^i binom(3, i) C_j(k + 2 − i, r_i) = (−1)^j for r_i = r2 + 2 − i.
pub fn alternating_sum_check(k: u32, r2: Smoothness3) -> AlternatingSums {
    let r = [r2.shifted(2), r2.shifted(1), r2, r2.shifted(-1)];
    let mut hypotheses = Vec::new();
    check(r2.f >= 0, || format!("r2_f = {} must be non-negative", r2.f), &mut hypotheses);
    check(r2.e >= 2 * r2.f + 2, || format!("r2_e = {} must be at least 2r2_f + 2", r2.e), &mut hypotheses);
    check(r2.v >= 2 * r2.e + 2, || format!("r2_v = {} must be at least 2r2_e + 2", r2.v), &mut hypotheses);
    let mut table = [[0i64; 4]; 4];
    for (i, ri) in r.iter().enumerate() {
        let c = scalar_counts(k + 2 - i as u32, *ri);
        for j in 0..4 {
            table[i][j] = binom(3, i as i64) * c[j];
        }
    }
    let mut sums = [0i64; 4];
    let mut expected = [0i64; 4];
    for j in 0..4 {
        sums[j] = (0..4).map(|i| if i % 2 == 0 { table[i][j] } else { -table[i][j] }).sum();
        expected[j] = if j % 2 == 0 { 1 } else { -1 };
    }
    AlternatingSums { k, r, table, sums, expected, hypotheses, holds: sums == expected }
}

/// 1 − dim P_{k+2} + 3 dim P_{k+1} − 3 dim P_k + dim P_{k−1} on a tetrahedron.
pub fn polynomial_alternating_sum(k: u32) -> i64 {
    let k = k as i64;
    1 - binom(k + 5, 3) + 3 * binom(k + 4, 3) - 3 * binom(k + 3, 3) + binom(k + 2, 3)
}

/// Global div verdict: rank of div from the div-pair space onto the scalar space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalDivVerdict {
    pub mesh: String,
    pub k: u32,
    pub r2: Smoothness3,
    pub r3: Smoothness3,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub stable: bool,
    pub warnings: Vec<String>,
}

pub fn global_div_rank(mesh: &Triangulation, k: u32, r2: Smoothness3, r3: Smoothness3, frames: &Frames) -> Result<GlobalDivVerdict> {
    let mut warnings = Vec::new();
    if k == 0 || bubble_nodes(k - 1, r3).is_empty() {
        warnings.push(format!("B_{}(T; {r3}) is empty", k as i64 - 1));
    }
    if face_bubble_nodes(k, r2.v, r2.e).is_empty() {
        warnings.push(format!("B_{k}(f; {}, {}) is empty", r2.v, r2.e));
    }
    let source = GlobalSpace::new(&ElementSpec::DivPair { k, r2, r3 }, mesh, frames)?;
    let target = GlobalSpace::new(&ElementSpec::Scalar { k: k - 1, r: r3 }, mesh, frames)?;
    let div = assemble_global_operator(&source, &target, Differential::Div)?;
    let rank = div.rank();
    Ok(GlobalDivVerdict {
        mesh: mesh.name.clone(),
        k,
        r2,
        r3,
        source_dim: source.dim(),
        target_dim: target.dim(),
        rank,
        stable: rank == target.dim(),
        warnings,
    })
}

/// C^m continuity of the n-D element across the facet shared by two cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceReport {
    pub mesh: String,
    pub n: usize,
    pub k: u32,
    pub r: Vec<i32>,
    pub m: i32,
    pub facet: Vec<usize>,
    pub global_dim: usize,
    pub counted_dim: usize,
    pub basis_checked: usize,
    pub trace_mismatches: usize,
    pub closure_dofs: usize,
    pub closure_nullspace_dim: usize,
    pub closure_nullspace_vanishes: bool,
    pub continuous: bool,
}

impl TraceReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Non-decreasing axis sequences of length ≤ m.
fn derivative_orders(n: usize, m: i32) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..m.max(0) {
        let mut next = Vec::new();
        for seq in &frontier {
            let start = seq.last().copied().unwrap_or(0);
            for axis in start..n {
                let mut s: Vec<usize> = seq.clone();
                s.push(axis);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn traces(p: &crate::bernstein::BernsteinPoly, g: &crate::bernstein::Geometry, f: &SubSimplex, orders: &[Vec<usize>]) -> Vec<crate::bernstein::BernsteinPoly> {
    let n = g.dim();
    orders
        .iter()
        .map(|seq| {
            seq.iter().fold(p.clone(), |acc, &axis| acc.derivative_along(&crate::rational::unit(n, axis), g)).restrict(f)
        })
        .collect()
}

/// Builds the global n-D space on two cells sharing a facet, checks that every
/// global basis function has matching derivative traces up to order r_{n−1},
/// and that the DoFs on the facet closure control those traces.
pub fn nd_trace_check(mesh: &Triangulation, k: u32, r: &SmoothnessN, frames: &Frames) -> Result<TraceReport> {
    let n = mesh.dim;
    if mesh.cells.len() != 2 || r.dim() != n {
        return Err(Error::InvalidMesh(format!(
            "trace check needs two {n}-simplices and {} smoothness entries",
            n + 1
        )));
    }
    let facet: Vec<usize> = mesh.cells[0].iter().copied().filter(|v| mesh.cells[1].contains(v)).collect();
    if facet.len() != n {
        return Err(Error::InvalidMesh("the two cells do not share a facet".into()));
    }
    let local_facet = |c: usize| -> Result<SubSimplex> {
        let idx = facet.iter().map(|v| mesh.cells[c].iter().position(|w| w == v).expect("shared vertex")).collect();
        SubSimplex::new(idx, n)
    };
    let facets = [local_facet(0)?, local_facet(1)?];
    let m = r.entries[n - 1];
    let spec = ElementSpec::Nd { n, k, r: r.clone() };
    let space = GlobalSpace::new(&spec, mesh, frames)?;
    let inverses = space.local_inverses()?;
    let orders = derivative_orders(n, m);
    let shape = space.shape();
    let mut mismatches = 0;
    for gi in 0..space.dim() {
        let mut e = vec![Q::zero(); space.dim()];
        e[gi] = q(1);
        let t: Vec<Vec<_>> = (0..2)
            .map(|c| {
                let Input::Scalar(p) = space.local_function(&inverses, c, &e) else { unreachable!("scalar space") };
                traces(&p, &space.locals[c].geometry, &facets[c], &orders)
            })
            .collect();
        if t[0] != t[1] {
            mismatches += 1;
        }
    }
    let local = &space.locals[0];
    let closure: Vec<usize> =
        (0..local.table.len()).filter(|&i| facets[0].contains(&local.table.dofs[i].entity)).collect();
    let full = assemble_dof_matrix(&local.table, &local.geometry)?;
    let rows = Matrix::from_rows(closure.iter().map(|&i| full.row(i).to_vec()).collect());
    let null = rows.nullspace();
    let vanishes = null.iter().all(|v| {
        let Input::Scalar(p) = shape.combine(v) else { unreachable!("scalar space") };
        traces(&p, &local.geometry, &facets[0], &orders).iter().all(|t| t.is_zero())
    });
    let continuous = mismatches == 0 && vanishes;
    Ok(TraceReport {
        mesh: mesh.name.clone(),
        n,
        k,
        r: r.entries.clone(),
        m,
        facet,
        global_dim: space.dim(),
        counted_dim: space.counted_dim(),
        basis_checked: space.dim(),
        trace_mismatches: mismatches,
        closure_dofs: closure.len(),
        closure_nullspace_dim: null.len(),
        closure_nullspace_vanishes: vanishes,
        continuous,
    })
}
