//! Smoothness vectors, the direct decomposition of the simplicial lattice into
//! S_ℓ(f) pieces, polynomial bubble node sets and the H(div) bubble basis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bernstein::{Field, Geometry};
use crate::error::{Error, Result};
use crate::lattice::{self, Node, SubSimplex};
use crate::rational::{self, Q};

/// Continuity orders at vertices, edges and faces of a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Smoothness3 {
    pub v: i32,
    pub e: i32,
    pub f: i32,
}

impl Smoothness3 {
    pub const fn new(v: i32, e: i32, f: i32) -> Self {
        Self { v, e, f }
    }

    pub const fn uniform(r: i32) -> Self {
        Self::new(r, r, r)
    }

    pub fn to_array(self) -> [i32; 3] {
        [self.v, self.e, self.f]
    }

    /// Componentwise max(r, 0).
    pub fn plus(self) -> Self {
        Self::new(self.v.max(0), self.e.max(0), self.f.max(0))
    }

    /// Componentwise max(r − 1, −1).
    pub fn ominus(self) -> Self {
        Self::new((self.v - 1).max(-1), (self.e - 1).max(-1), (self.f - 1).max(-1))
    }

    /// Componentwise r + s, no clamping.
    pub fn shifted(self, s: i32) -> Self {
        Self::new(self.v + s, self.e + s, self.f + s)
    }

    /// Chain inequalities only.
    pub fn chain_violations(self) -> Vec<String> {
        let mut out = Vec::new();
        if self.f < -1 {
            out.push(format!("r_f = {} must be at least -1", self.f));
        }
        if self.e < (2 * self.f).max(-1) {
            out.push(format!("r_e = {} must be at least max(2r_f, -1) = {}", self.e, (2 * self.f).max(-1)));
        }
        if self.v < (2 * self.e).max(-1) {
            out.push(format!("r_v = {} must be at least max(2r_e, -1) = {}", self.v, (2 * self.e).max(-1)));
        }
        out
    }

    /// Chain inequalities and k ≥ max(2r_v + 1, 0).
    pub fn validate(self, k: u32) -> Result<()> {
        let mut out = self.chain_violations();
        let min_k = (2 * self.v + 1).max(0);
        if (k as i64) < min_k as i64 {
            out.push(format!("k = {k} must be at least max(2r_v + 1, 0) = {min_k}"));
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSmoothness(out))
        }
    }

    pub fn is_valid(self, k: u32) -> bool {
        self.validate(k).is_ok()
    }
}

impl fmt::Display for Smoothness3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.e, self.f)
    }
}

impl FromStr for Smoothness3 {
    type Err = Error;

    /// "2,1,0", "(2,1,0)" or a single value applied to all three entries.
    fn from_str(text: &str) -> Result<Self> {
        let entries = parse_int_list(text)?;
        match entries.as_slice() {
            [r] => Ok(Self::uniform(*r)),
            [v, e, f] => Ok(Self::new(*v, *e, *f)),
            _ => Err(Error::Parse(format!("expected 1 or 3 smoothness entries, got {text:?}"))),
        }
    }
}

pub fn parse_int_list(text: &str) -> Result<Vec<i32>> {
    let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    trimmed
        .split(',')
        .map(|s| s.trim().parse::<i32>().map_err(|_| Error::Parse(format!("invalid integer {s:?} in {text:?}"))))
        .collect()
}

/// Continuity orders (r_0, …, r_n) on an n-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SmoothnessN {
    pub entries: Vec<i32>,
}

impl SmoothnessN {
    pub fn new(entries: Vec<i32>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// r_n = 0, r_ℓ ≥ 2r_{ℓ+1} ≥ 0, k ≥ 2r_0 + 1.
    pub fn validate(&self, k: u32) -> Result<()> {
        let r = &self.entries;
        let mut out = Vec::new();
        if r.len() < 2 {
            out.push(format!("need at least two entries, got {}", r.len()));
            return Err(Error::InvalidSmoothness(out));
        }
        if r.iter().any(|&x| x < 0) {
            out.push("entries must be non-negative".to_string());
        }
        if r[r.len() - 1] != 0 {
            out.push(format!("r_n = {} must be 0", r[r.len() - 1]));
        }
        for l in 0..r.len() - 1 {
            if r[l] < 2 * r[l + 1] {
                out.push(format!("r_{l} = {} must be at least 2r_{} = {}", r[l], l + 1, 2 * r[l + 1]));
            }
        }
        if (k as i64) < 2 * r[0] as i64 + 1 {
            out.push(format!("k = {k} must be at least 2r_0 + 1 = {}", 2 * r[0] + 1));
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSmoothness(out))
        }
    }
}

/// One piece S_ℓ(f) of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub simplex: SubSimplex,
    pub nodes: Vec<Node>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDecomposition {
    pub n: usize,
    pub k: u32,
    pub r: Vec<i32>,
    pub pieces: Vec<Piece>,
}

impl LatticeDecomposition {
    pub fn piece(&self, f: &SubSimplex) -> Option<&Piece> {
        self.pieces.iter().find(|p| &p.simplex == f)
    }

    pub fn pieces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(move |p| p.dim() == dim)
    }

    pub fn interior(&self) -> &[Node] {
        &self.pieces.last().expect("the full simplex is always a piece").nodes
    }

    /// Pairwise disjoint with union T^n_k.
    pub fn is_partition(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for p in &self.pieces {
            for node in &p.nodes {
                if !seen.insert(node.clone()) {
                    return false;
                }
            }
        }
        let all = lattice::enumerate(self.n, self.k);
        seen.len() == all.len() && all.iter().all(|a| seen.contains(a))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "r": self.r,
            "pieces": self.pieces.iter().map(|p| json!({
                "dim": p.dim(),
                "simplex": p.simplex.indices(),
                "nodes": p.nodes,
            })).collect::<Vec<_>>(),
        })
    }
}

/// S_ℓ(f) = D(f, r_ℓ) minus the tubes D(e, r_i) around every sub-simplex e of f
/// of lower dimension; the interior keeps what lies outside every tube.
/// `r` holds r_0, …, r_{n−1}.
fn decompose_with(n: usize, k: u32, r: &[i32]) -> LatticeDecomposition {
    let nodes = lattice::enumerate(n, k);
    let mut pieces = Vec::new();
    for dim in 0..n {
        for f in lattice::subsimplices(n, dim) {
            let lower: Vec<(SubSimplex, i32)> =
                (0..dim).flat_map(|i| f.faces(i).into_iter().map(move |e| (e, r[i]))).collect();
            let members = nodes
                .iter()
                .filter(|a| within(a, &f, r[dim]) && lower.iter().all(|(e, ri)| !within(a, e, *ri)))
                .cloned()
                .collect();
            pieces.push(Piece { simplex: f, nodes: members });
        }
    }
    pieces.push(Piece { simplex: SubSimplex::full(n), nodes: bubble_nodes_nd(n, k, r) });
    LatticeDecomposition { n, k, r: r.to_vec(), pieces }
}

/// α ∈ D(f, r).
fn within(alpha: &[u32], f: &SubSimplex, r: i32) -> bool {
    r >= 0 && lattice::dist(alpha, f) as i64 <= r as i64
}

/// Direct decomposition of T^3_k into the pieces S_l(f); r_f = −1 leaves every S_2 empty.
pub fn decompose3(k: u32, r: Smoothness3) -> Result<LatticeDecomposition> {
    r.validate(k)?;
    let mut out = decompose_with(3, k, &r.to_array());
    out.r = r.to_array().to_vec();
    Ok(out)
}

/// n-dimensional decomposition for r = (r_0, …, r_n) with r_n = 0.
pub fn decompose_nd(n: usize, k: u32, r: &SmoothnessN) -> Result<LatticeDecomposition> {
    r.validate(k)?;
    if r.dim() != n {
        return Err(Error::DimensionMismatch(format!("{} smoothness entries for dimension {n}", r.entries.len())));
    }
    let mut out = decompose_with(n, k, &r.entries[..n]);
    out.r = r.entries.clone();
    Ok(out)
}

/// Inequality form of membership in S_ℓ(f): |α_{f*}| ≤ r_ℓ and |α_e| ≤ k − r_i − 1
/// for every e ∈ Δ_i(f), i < ℓ.
pub fn in_piece_by_inequalities(alpha: &[u32], f: &SubSimplex, r: &[i32], k: u32) -> bool {
    let l = f.dim();
    let n = f.ambient();
    let size_on = |e: &SubSimplex| e.indices().iter().map(|&i| alpha[i] as i64).sum::<i64>();
    if l < n && lattice::dist(alpha, f) as i64 > r[l] as i64 {
        return false;
    }
    (0..l).all(|i| f.faces(i).iter().all(|e| size_on(e) <= k as i64 - r[i] as i64 - 1))
}

/// Nodes of T^n_k at distance > r_i from every i-dimensional sub-simplex, i < n.
pub fn bubble_nodes_nd(n: usize, k: u32, r: &[i32]) -> Vec<Node> {
    let boundary: Vec<(SubSimplex, i32)> =
        (0..n).flat_map(|i| lattice::subsimplices(n, i).into_iter().map(move |f| (f, r[i]))).collect();
    lattice::enumerate(n, k)
        .into_iter()
        .filter(|a| boundary.iter().all(|(f, ri)| !within(a, f, *ri)))
        .collect()
}

/// S_3(T, r): basis nodes of B_k(T; r).
pub fn bubble_nodes(k: u32, r: Smoothness3) -> Vec<Node> {
    bubble_nodes_nd(3, k, &r.to_array())
}

/// Face-local nodes of B_k(f; (r_v, r_e)).
pub fn face_bubble_nodes(k: u32, rv: i32, re: i32) -> Vec<Node> {
    bubble_nodes_nd(2, k, &[rv, re])
}

/// Edge-local nodes of B_k(e; r_v).
pub fn edge_bubble_nodes(k: u32, rv: i32) -> Vec<Node> {
    bubble_nodes_nd(1, k, &[rv])
}

/// Which direct summand of B_k^div a member belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BubbleGroup {
    Interior,
    FaceTangential,
    EdgeTangential,
}

/// λ^node · direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DivBubbleMember {
    pub group: BubbleGroup,
    pub simplex: SubSimplex,
    pub node: Node,
    pub direction: Vec<Q>,
}

impl DivBubbleMember {
    pub fn to_field(&self) -> Field {
        let p = crate::bernstein::BernsteinPoly::monomial(self.node.clone(), Q::from_integer(1.into()));
        Field::from_direction(&p, &self.direction)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivBubbleBasis {
    pub k: u32,
    pub r: Smoothness3,
    pub members: Vec<DivBubbleMember>,
}

impl DivBubbleBasis {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group(&self, group: BubbleGroup) -> impl Iterator<Item = &DivBubbleMember> {
        self.members.iter().filter(move |m| m.group == group)
    }

    pub fn fields(&self) -> Vec<Field> {
        self.members.iter().map(DivBubbleMember::to_field).collect()
    }
}

/// Tangents of f from its lowest vertex; edge tangent from lower to higher index.
pub fn face_tangents(f: &SubSimplex, g: &Geometry) -> [Vec<Q>; 2] {
    let idx = f.indices();
    [g.edge_vector(idx[0], idx[1]), g.edge_vector(idx[0], idx[2])]
}

pub fn edge_tangent(e: &SubSimplex, g: &Geometry) -> Vec<Q> {
    let idx = e.indices();
    g.edge_vector(idx[0], idx[1])
}

/// Normal trace-free bubble basis for r with r_f = −1: interior B_k^3(T; r₊),
/// face tangential B_k(f; r₊) ⊗ {t_f¹, t_f²} and, when r_e = −1, edge
/// tangential B_k(e; r₊^v) ⊗ {t_e}.
pub fn div_bubble_basis(k: u32, r: Smoothness3, g: &Geometry) -> Result<DivBubbleBasis> {
    if r.f != -1 {
        return Err(Error::Unsupported(format!(
            "r = {r} has r_f >= 0; the H(div) bubble is the vector interior bubble"
        )));
    }
    let mut violations = Vec::new();
    if r.e < -1 {
        violations.push(format!("r_e = {} must be at least -1", r.e));
    }
    if r.v < (2 * r.e).max(-1) {
        violations.push(format!("r_v = {} must be at least max(2r_e, -1)", r.v));
    }
    if (k as i64) < 2 * r.v.max(0) as i64 + 1 {
        violations.push(format!("k = {k} must be at least 2 max(r_v, 0) + 1"));
    }
    if !violations.is_empty() {
        return Err(Error::InvalidSmoothness(violations));
    }
    let rp = r.plus();
    let mut members = interior_vector_bubbles(k, rp);
    for f in lattice::subsimplices(3, 2) {
        let tangents = face_tangents(&f, g);
        for local in face_bubble_nodes(k, rp.v, rp.e) {
            let node = lattice::extend(&local, &f)?;
            for t in &tangents {
                members.push(DivBubbleMember {
                    group: BubbleGroup::FaceTangential,
                    simplex: f.clone(),
                    node: node.clone(),
                    direction: t.clone(),
                });
            }
        }
    }
    if r.e == -1 {
        for e in lattice::subsimplices(3, 1) {
            let t = edge_tangent(&e, g);
            for local in edge_bubble_nodes(k, rp.v) {
                members.push(DivBubbleMember {
                    group: BubbleGroup::EdgeTangential,
                    simplex: e.clone(),
                    node: lattice::extend(&local, &e)?,
                    direction: t.clone(),
                });
            }
        }
    }
    Ok(DivBubbleBasis { k, r, members })
}

fn interior_vector_bubbles(k: u32, r: Smoothness3) -> Vec<DivBubbleMember> {
    let full = SubSimplex::full(3);
    bubble_nodes(k, r)
        .into_iter()
        .flat_map(|node| {
            let full = full.clone();
            (0..3).map(move |c| DivBubbleMember {
                group: BubbleGroup::Interior,
                simplex: full.clone(),
                node: node.clone(),
                direction: rational::unit(3, c),
            })
        })
        .collect()
}

/// Basis of B_k^div(T; r) for any valid r: the vector interior bubble when
/// r_f ≥ 0, the decomposed basis otherwise.
pub fn hdiv_bubble_basis(k: u32, r: Smoothness3, g: &Geometry) -> Result<DivBubbleBasis> {
    if r.f >= 0 {
        r.validate(k)?;
        Ok(DivBubbleBasis { k, r, members: interior_vector_bubbles(k, r) })
    } else {
        div_bubble_basis(k, r, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(d: &LatticeDecomposition, dim: usize) -> Vec<usize> {
        d.pieces_of_dim(dim).map(|p| p.nodes.len()).collect()
    }

    #[test]
    fn validation_messages() {
        assert!(Smoothness3::new(2, 1, 0).validate(5).is_ok());
        assert!(Smoothness3::new(0, 0, 0).validate(0).is_err());
        assert!(Smoothness3::new(1, 1, 0).validate(9).is_err());
        assert!(Smoothness3::uniform(-1).validate(0).is_ok());
        let parsed: Smoothness3 = "-1".parse().unwrap();
        assert_eq!(parsed, Smoothness3::uniform(-1));
        assert_eq!("(2,1,0)".parse::<Smoothness3>().unwrap(), Smoothness3::new(2, 1, 0));
    }

    #[test]
    fn argyris_type_counts() {
        let d = decompose3(5, Smoothness3::new(2, 1, 0)).unwrap();
        assert_eq!(counts(&d, 0), vec![10; 4]);
        assert_eq!(counts(&d, 1), vec![2; 6]);
        assert_eq!(counts(&d, 2), vec![0; 4]);
        assert_eq!(d.interior().len(), 4);
        assert!(d.is_partition());
    }

    #[test]
    fn hermite_counts() {
        let d = decompose3(3, Smoothness3::new(1, 0, 0)).unwrap();
        assert_eq!(counts(&d, 0), vec![4; 4]);
        assert_eq!(counts(&d, 1), vec![0; 6]);
        assert_eq!(counts(&d, 2), vec![1; 4]);
        assert!(d.interior().is_empty());
    }

    #[test]
    fn div_bubble_lowest_order() {
        let g = Geometry::reference(3);
        let b = div_bubble_basis(2, Smoothness3::uniform(-1), &g).unwrap();
        assert_eq!(b.group(BubbleGroup::EdgeTangential).count(), 6);
        assert_eq!(b.group(BubbleGroup::FaceTangential).count(), 0);
        assert!(div_bubble_basis(1, Smoothness3::uniform(-1), &g).unwrap().is_empty());
        assert!(div_bubble_basis(3, Smoothness3::new(0, 0, 0), &g).is_err());
    }
}
