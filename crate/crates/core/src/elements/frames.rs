//! Direction frames attached to sub-simplices. Every frame is a function of the
//! sub-simplex vertex coordinates only, so elements sharing a sub-simplex agree.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bernstein::Geometry;
use crate::lattice::SubSimplex;
use crate::linalg::Matrix;
use crate::rational::{self, Q};

/// How the two edge normals are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormalRule {
    /// The two coordinate axes least aligned with the tangent.
    #[default]
    Axes,
    /// n1 = t × e_c for the least aligned axis c, n2 = t × n1.
    Orthogonal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeFrame {
    pub t: Vec<Q>,
    pub n1: Vec<Q>,
    pub n2: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceFrame {
    pub t1: Vec<Q>,
    pub t2: Vec<Q>,
    pub n: Vec<Q>,
}

/// Frame policy plus optional per-entity overrides of n-dimensional normals.
#[derive(Clone, Debug, Default)]
pub struct Frames {
    pub rule: NormalRule,
    /// Seed for rescaling every frame vector by a nonzero rational.
    pub rescale: Option<u64>,
    normal_overrides: HashMap<Vec<Vec<Q>>, Vec<Vec<Q>>>,
}

impl Frames {
    pub fn new(rule: NormalRule, rescale: Option<u64>) -> Self {
        Self { rule, rescale, normal_overrides: HashMap::new() }
    }

    fn coords(f: &SubSimplex, g: &Geometry) -> Vec<Vec<Q>> {
        f.indices().iter().map(|&i| g.vertices()[i].clone()).collect()
    }

    fn scaled(&self, v: Vec<Q>, coords: &[Vec<Q>], slot: usize) -> Vec<Q> {
        let Some(seed) = self.rescale else { return v };
        let mut hasher = DefaultHasher::new();
        for x in coords.iter().flatten() {
            rational::to_string(x).hash(&mut hasher);
        }
        slot.hash(&mut hasher);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hasher.finish());
        let mut num: i64 = 0;
        while num == 0 {
            num = rng.gen_range(-7..=7);
        }
        let s = rational::frac(num, rng.gen_range(1..=5));
        rational::scale(&v, &s)
    }

    pub fn edge(&self, e: &SubSimplex, g: &Geometry) -> EdgeFrame {
        let coords = Self::coords(e, g);
        let t = rational::sub(&coords[1], &coords[0]);
        let dim = t.len();
        let mut axes: Vec<usize> = (0..dim).collect();
        axes.sort_by(|&a, &b| t[a].abs().cmp(&t[b].abs()).then(a.cmp(&b)));
        let (n1, n2) = match self.rule {
            NormalRule::Axes => (rational::unit(dim, axes[0]), rational::unit(dim, axes[1])),
            NormalRule::Orthogonal => {
                let n1 = rational::cross(&t, &rational::unit(dim, axes[0]));
                let n2 = rational::cross(&t, &n1);
                (n1, n2)
            }
        };
        EdgeFrame {
            n1: self.scaled(n1, &coords, 1),
            n2: self.scaled(n2, &coords, 2),
            t: self.scaled(t, &coords, 0),
        }
    }

    pub fn face(&self, f: &SubSimplex, g: &Geometry) -> FaceFrame {
        let coords = Self::coords(f, g);
        let t1 = rational::sub(&coords[1], &coords[0]);
        let t2 = rational::sub(&coords[2], &coords[0]);
        let n = rational::cross(&t1, &t2);
        FaceFrame {
            t1: self.scaled(t1, &coords, 0),
            t2: self.scaled(t2, &coords, 1),
            n: self.scaled(n, &coords, 2),
        }
    }

    /// Normals of f dual to ∇λ_i, i ∈ f*, inside the normal space of f.
    pub fn normals(&self, f: &SubSimplex, g: &Geometry) -> Vec<Vec<Q>> {
        let coords = Self::coords(f, g);
        if let Some(found) = self.normal_overrides.get(&coords) {
            return found.clone();
        }
        dual_normals(f, g)
            .into_iter()
            .enumerate()
            .map(|(slot, v)| self.scaled(v, &coords, slot))
            .collect()
    }

    /// Pins the normals of f to those computed on `g`, for reuse by neighbours.
    pub fn pin_normals(&mut self, f: &SubSimplex, g: &Geometry) {
        let coords = Self::coords(f, g);
        if !self.normal_overrides.contains_key(&coords) {
            let normals = self.normals(f, g);
            self.normal_overrides.insert(coords, normals);
        }
    }
}

/// n^j = Σ_i (G⁻¹)_{ji} ∇λ_{f*(i)} with G the Gram matrix of those gradients.
pub fn dual_normals(f: &SubSimplex, g: &Geometry) -> Vec<Vec<Q>> {
    let comp = f.complement();
    let grads: Vec<&[Q]> = comp.iter().map(|&i| g.grad_lambda(i)).collect();
    let m = grads.len();
    if m == 0 {
        return Vec::new();
    }
    let mut gram = Matrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            gram.set(a, b, rational::dot(grads[a], grads[b]));
        }
    }
    let inverse = gram.inverse().expect("barycentric gradients of a simplex are independent");
    (0..m)
        .map(|j| {
            let mut v = vec![Q::zero(); g.dim()];
            for (i, grad) in grads.iter().enumerate() {
                let c = inverse.get(j, i);
                for (d, x) in grad.iter().enumerate() {
                    v[d] += c * x;
                }
            }
            v
        })
        .collect()
}

/// Π_f w = w − (w·n) n / (n·n) for a face normal n.
pub fn project_tangential(w: &[Q], n: &[Q]) -> Vec<Q> {
    let nn = rational::dot(n, n);
    let s = rational::dot(w, n) / nn;
    w.iter().zip(n).map(|(a, b)| a - &s * b).collect()
}

/// Is {t, n1, n2} a basis of R^3.
pub fn is_basis(vectors: &[&[Q]]) -> bool {
    let rows = vectors.iter().map(|v| v.to_vec()).collect();
    let m = Matrix::from_rows(rows);
    m.rows() == m.cols() && m.determinant().map(|d| !d.is_zero()).unwrap_or(false)
}
