//! Surjectivity of div from H(div) bubbles onto mean-free pressure bubbles:
//! exact rank checks, explicit preimages and the reference table of pairs.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bernstein::{divergence_formal, formal_to_field, l20_basis, preimage_detour, preimage_direct};
use crate::bernstein::{BernsteinPoly, FormalTerm, Geometry};
use crate::decomposition::{bubble_nodes, hdiv_bubble_basis, Smoothness3};
use crate::error::{Error, Result};
use crate::lattice::{self, adjacency_direction, node_set, LatticeGraph, Node};
use crate::linalg::Matrix;
use crate::rational::{self, Q};

/// Which construction produced a preimage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreimageCase {
    /// λ^{α+ε_i} t_{j,i}: extension along the direction of the pair.
    Direct,
    /// Detour through a third vertex when both nodes lie on an edge.
    EdgeDetour,
    /// Detour lifting the node off a face it is too close to.
    FaceLift,
    /// Detour lifting a node on the edge-distance plane s = r_e.
    EdgePlaneLift,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub alpha: Node,
    pub beta: Node,
    pub case: PreimageCase,
    pub terms: Vec<FormalTerm>,
    /// div u equals λ^α/α! − λ^β/β! exactly.
    pub divergence_ok: bool,
    /// u lies in the bubble space.
    pub membership_ok: bool,
}

impl Witness {
    pub fn verified(&self) -> bool {
        self.divergence_ok && self.membership_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "case": self.case,
            "terms": self.terms.iter().map(|t| json!({
                "coeff": rational::to_string(&t.coeff),
                "node": t.node,
                "direction": [t.from, t.to],
            })).collect::<Vec<_>>(),
            "divergence_ok": self.divergence_ok,
            "membership_ok": self.membership_ok,
        })
    }
}

#[derive(Clone, Debug)]
pub struct DivVerdict {
    pub k: u32,
    pub r2: Smoothness3,
    pub r3: Smoothness3,
    pub bubble_dim: usize,
    pub rank: usize,
    pub target_dim: usize,
    /// div of every bubble lies in B_{k−1}(T; r3).
    pub image_contained: bool,
    /// G(S_3(T, r3, k−1)) is connected.
    pub connected: bool,
    pub stable: bool,
    pub witnesses: Option<Vec<Witness>>,
}

impl DivVerdict {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "k": self.k,
            "r2": self.r2.to_array(),
            "r3": self.r3.to_array(),
            "bubble_dim": self.bubble_dim,
            "rank": self.rank,
            "target_dim": self.target_dim,
            "image_contained": self.image_contained,
            "connected": self.connected,
            "verdict": if self.stable { "stable" } else { "unstable" },
        });
        if let Some(w) = &self.witnesses {
            v["witnesses"] = Value::Array(w.iter().map(Witness::to_json).collect());
            v["witnesses_verified"] = json!(w.iter().all(Witness::verified));
        }
        v
    }
}

/// Rank of div on B_k^div(T; r2) against dim B_{k−1}(T; r3)/R. Any r2 accepted
/// by the bubble basis is allowed, so invalid pairs can be examined.
pub fn bubble_div_rank(k: u32, r2: Smoothness3, r3: Smoothness3, g: &Geometry) -> Result<DivVerdict> {
    if k == 0 {
        return Err(Error::InvalidSmoothness(vec!["k must be at least 1".into()]));
    }
    let basis = hdiv_bubble_basis(k, r2, g)?;
    let target = lattice::Lattice::new(3, k - 1);
    let cols: Vec<Vec<Q>> = basis.fields().iter().map(|f| f.divergence(g).raise_to(k - 1).to_dense(&target)).collect();
    let div = Matrix::from_cols(cols, target.len());
    let pressure = bubble_nodes(k - 1, r3);
    let allowed = node_set(&pressure);
    let image_contained = target
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, a)| !allowed.contains(*a))
        .all(|(i, _)| div.row(i).iter().all(Zero::is_zero));
    let rank = div.rank();
    let target_dim = pressure.len().saturating_sub(1);
    let connected = LatticeGraph::new(pressure).is_connected();
    Ok(DivVerdict {
        k,
        r2,
        r3,
        bubble_dim: basis.len(),
        rank,
        target_dim,
        image_contained,
        connected,
        stable: image_contained && rank == target_dim,
        witnesses: None,
    })
}

/// Which constructive argument covers (r2, r3), with r2 as used by the case split.
fn constructive_regime(r2: Smoothness3, r3: Smoothness3) -> Option<(Regime, Smoothness3)> {
    if r3 != r2.ominus() {
        return None;
    }
    match (r2.v, r2.e, r2.f) {
        (v, -1, -1) if v >= -1 => Some((Regime::Tangential, r2)),
        (v, 0, -1) if v >= 1 => Some((Regime::EdgeContinuous, r2)),
        (v, e, f) if f >= 0 && e >= 2 * f + 1 && v >= 2 * e => Some((Regime::Smooth, r2)),
        (v, e, -1) if e >= 1 && v >= 2 * e => Some((Regime::Smooth, Smoothness3::new(v, e, 0))),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Regime {
    Tangential,
    EdgeContinuous,
    Smooth,
}

/// Explicit u ∈ B_k^div(T; r2) with div u = λ^α/α! − λ^β/β! for adjacent α, β in
/// S_3(T, r3, k−1), r3 = r2 ⊖ 1.
pub fn explicit_preimage(alpha: &[u32], beta: &[u32], r2: Smoothness3, r3: Smoothness3) -> Result<(PreimageCase, Vec<FormalTerm>)> {
    let (regime, r) = constructive_regime(r2, r3)
        .ok_or_else(|| Error::Unsupported(format!("no explicit construction for r2 = {r2}, r3 = {r3}")))?;
    let (i, j) = adjacency_direction(alpha, beta)
        .ok_or_else(|| Error::NotAdjacent(format!("{alpha:?} and {beta:?}")))?;
    let others: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
    let (a, b) = (others[0], others[1]);
    let detour = |l: usize, case| preimage_detour(alpha, beta, l).map(|t| (case, t));
    let direct = || preimage_direct(alpha, beta).map(|t| (PreimageCase::Direct, t));
    match regime {
        Regime::Tangential => direct(),
        Regime::EdgeContinuous => {
            if alpha[a] == 0 && alpha[b] == 0 {
                detour(b, PreimageCase::EdgeDetour)
            } else {
                direct()
            }
        }
        Regime::Smooth => {
            let rf = r.f as u32;
            if alpha[b] == rf {
                detour(b, PreimageCase::FaceLift)
            } else if alpha[a] == rf {
                detour(a, PreimageCase::FaceLift)
            } else if (alpha[a] + alpha[b]) as i64 == r.e as i64 {
                detour(b, PreimageCase::EdgePlaneLift)
            } else {
                direct()
            }
        }
    }
}

/// Row-reduced basis of the bubble space for exact membership tests.
struct BubbleSpan {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    lattice: lattice::Lattice,
}

impl BubbleSpan {
    fn new(k: u32, r2: Smoothness3, g: &Geometry) -> Result<Self> {
        let lattice = lattice::Lattice::new(3, k);
        let basis = hdiv_bubble_basis(k, r2, g)?;
        let rows: Vec<Vec<Q>> = basis
            .fields()
            .iter()
            .map(|f| f.components.iter().flat_map(|c| c.to_dense(&lattice)).collect())
            .collect();
        if rows.is_empty() {
            return Ok(Self { rows, pivots: Vec::new(), lattice });
        }
        let width = rows[0].len();
        let (reduced, pivots) = Matrix::from_rows(rows).rref();
        let rows = (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect::<Vec<_>>();
        debug_assert!(rows.iter().all(|r: &Vec<Q>| r.len() == width));
        Ok(Self { rows, pivots, lattice })
    }

    fn contains(&self, terms: &[FormalTerm], g: &Geometry) -> bool {
        let field = formal_to_field(terms, g);
        let mut v: Vec<Q> = field.components.iter().flat_map(|c| c.to_dense(&self.lattice)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

/// Preimages for every spanning-tree pair of G(S_3(T, r3, k−1)), each verified
/// exactly.
pub fn witnesses(k: u32, r2: Smoothness3, r3: Smoothness3, g: &Geometry) -> Result<Vec<Witness>> {
    let pressure = bubble_nodes(k - 1, r3);
    let span = BubbleSpan::new(k, r2, g)?;
    let tree = l20_basis(&pressure);
    tree.pairs
        .iter()
        .map(|(alpha, beta)| {
            let (case, terms) = explicit_preimage(alpha, beta, r2, r3)?;
            let expected = BernsteinPoly::scaled_monomial(alpha.clone())
                .sub(&BernsteinPoly::scaled_monomial(beta.clone()));
            let divergence_ok = divergence_formal(&terms).sub(&expected).is_zero();
            let membership_ok = span.contains(&terms, g);
            Ok(Witness { alpha: alpha.clone(), beta: beta.clone(), case, terms, divergence_ok, membership_ok })
        })
        .collect()
}

/// One row of the reference table of div-stable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairRow {
    pub r2: Smoothness3,
    pub r3: Smoothness3,
    pub expected_stable: bool,
}

/// Rows (r_v,−1,−1) with r_v = 0, (1,0,−1), (2,1,0), (2,1,−1) and the negative
/// row (0,0,−1), each paired with r3 = r2 ⊖ 1.
pub fn table1_rows() -> Vec<PairRow> {
    let row = |v, e, f, expected_stable| {
        let r2 = Smoothness3::new(v, e, f);
        PairRow { r2, r3: r2.ominus(), expected_stable }
    };
    vec![row(0, -1, -1, true), row(1, 0, -1, true), row(2, 1, 0, true), row(2, 1, -1, true), row(0, 0, -1, false)]
}

/// Smallest k ≥ 2 r2_v + 1 with at least two pressure bubble nodes.
pub fn smallest_nontrivial_k(r2: Smoothness3, r3: Smoothness3) -> u32 {
    let mut k = (2 * r2.v.max(0) + 1).max(1) as u32;
    while bubble_nodes(k - 1, r3).len() < 2 {
        k += 1;
    }
    k
}

/// Runs every table row at degree `k`, or at its smallest nontrivial degree.
pub fn table1(k: Option<u32>, g: &Geometry, with_witnesses: bool) -> Result<Vec<(PairRow, DivVerdict)>> {
    table1_rows()
        .into_iter()
        .map(|row| {
            let k = k.unwrap_or_else(|| smallest_nontrivial_k(row.r2, row.r3));
            let mut verdict = bubble_div_rank(k, row.r2, row.r3, g)?;
            if with_witnesses && constructive_regime(row.r2, row.r3).is_some() {
                verdict.witnesses = Some(witnesses(k, row.r2, row.r3, g)?);
            }
            Ok((row, verdict))
        })
        .collect()
}

/// ∫ div u = 0 for every bubble field.
pub fn bubbles_are_mean_free(k: u32, r2: Smoothness3, g: &Geometry) -> Result<bool> {
    let basis = hdiv_bubble_basis(k, r2, g)?;
    Ok(basis.fields().iter().all(|f| f.divergence(g).mean().is_zero()))
}
