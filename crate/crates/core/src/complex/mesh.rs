//! Small conforming simplicial meshes with rational coordinates.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::bernstein::Geometry;
use crate::error::{Error, Result};
use crate::lattice::{combinations, SubSimplex};
use crate::rational::{self, q, Q};

/// Cells store sorted vertex ids, so local vertex order follows global ids and
/// every sub-simplex frame is built from globally ordered vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
    pub cells: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn new(name: &str, vertices: Vec<Vec<Q>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidMesh("vertices have different dimensions".into()));
        }
        let mut sorted = Vec::with_capacity(cells.len());
        for cell in cells {
            let mut c = cell.clone();
            c.sort_unstable();
            c.dedup();
            if c.len() != dim + 1 || c.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidMesh(format!("cell {cell:?} is not a {dim}-simplex of the vertex list")));
            }
            sorted.push(c);
        }
        let mesh = Self { name: name.to_string(), dim, vertices, cells: sorted };
        for c in 0..mesh.cells.len() {
            mesh.geometry(c)?;
        }
        Ok(mesh)
    }

    pub fn geometry(&self, cell: usize) -> Result<Geometry> {
        Geometry::new(self.cells[cell].iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// Global sub-simplices of dimension `d` as sorted vertex id lists.
    pub fn subsimplices(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for cell in &self.cells {
            for local in combinations(&(0..=self.dim).collect::<Vec<_>>(), d + 1) {
                out.insert(local.iter().map(|&i| cell[i]).collect::<Vec<_>>());
            }
        }
        out.into_iter().collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim).map(|d| self.subsimplices(d).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Global vertex ids of a local sub-simplex of `cell`.
    pub fn global_ids(&self, cell: usize, f: &SubSimplex) -> Vec<usize> {
        f.indices().iter().map(|&i| self.cells[cell][i]).collect()
    }

    /// Cells containing the global sub-simplex `ids`.
    pub fn cells_containing(&self, ids: &[usize]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| ids.iter().all(|i| self.cells[c].contains(i))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "dim": self.dim,
            "counts": self.counts(),
            "euler": self.euler_characteristic(),
        })
    }

    /// Lines `v x y z` (rationals as p/q) and `t i0 i1 ...` (0-based); `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut cells = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or("");
            let rest: Vec<&str> = parts.collect();
            let err = |m: String| Error::Parse(format!("line {}: {m}", lineno + 1));
            match tag {
                "v" => vertices.push(rest.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?),
                "t" => cells.push(
                    rest.iter()
                        .map(|s| s.parse::<usize>().map_err(|_| err(format!("invalid vertex index {s:?}"))))
                        .collect::<Result<Vec<_>>>()?,
                ),
                other => return Err(err(format!("unknown record {other:?}"))),
            }
        }
        if vertices.is_empty() || cells.is_empty() {
            return Err(Error::Parse("mesh needs at least one vertex and one cell".into()));
        }
        Self::new(name, vertices, cells)
    }
}

fn point(coords: &[i64]) -> Vec<Q> {
    coords.iter().map(|&c| q(c)).collect()
}

/// Single reference tetrahedron.
pub fn tet1() -> Triangulation {
    Triangulation::new(
        "tet1",
        vec![point(&[0, 0, 0]), point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
        vec![vec![0, 1, 2, 3]],
    )
    .expect("valid mesh")
}

/// Two tetrahedra sharing the face {1, 2, 3}.
pub fn tet2() -> Triangulation {
    Triangulation::new(
        "tet2",
        vec![point(&[0, 0, 0]), point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1]), point(&[1, 1, 1])],
        vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]],
    )
    .expect("valid mesh")
}

/// Three tetrahedra around the edge {0, 1}, open on one side.
pub fn fan3() -> Triangulation {
    Triangulation::new(
        "fan3",
        vec![
            point(&[0, 0, 0]),
            point(&[0, 0, 1]),
            point(&[1, 0, 0]),
            point(&[0, 1, 0]),
            point(&[-1, 0, 0]),
            point(&[0, -1, 0]),
        ],
        vec![vec![0, 1, 2, 3], vec![0, 1, 3, 4], vec![0, 1, 4, 5]],
    )
    .expect("valid mesh")
}

/// Two triangles sharing the edge {1, 2}.
pub fn tri2() -> Triangulation {
    Triangulation::new(
        "tri2",
        vec![point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), vec![rational::frac(3, 2), rational::frac(5, 4)]],
        vec![vec![0, 1, 2], vec![1, 2, 3]],
    )
    .expect("valid mesh")
}

/// Two intervals sharing a point.
pub fn seg2() -> Triangulation {
    Triangulation::new("seg2", vec![point(&[0]), point(&[1]), point(&[3])], vec![vec![0, 1], vec![1, 2]])
        .expect("valid mesh")
}

pub fn reference_meshes() -> Vec<Triangulation> {
    vec![tet1(), tet2(), fan3()]
}

/// A reference mesh by name or a mesh file path.
pub fn load(name_or_path: &str) -> Result<Triangulation> {
    match name_or_path {
        "tet1" => Ok(tet1()),
        "tet2" => Ok(tet2()),
        "fan3" => Ok(fan3()),
        "tri2" => Ok(tri2()),
        "seg2" => Ok(seg2()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidMesh(format!("cannot read mesh {path:?}: {e}")))?;
            Triangulation::parse(path, &text)
        }
    }
}
