//! Global spaces assembled by identifying DoFs on shared sub-simplices, and
//! global differential operators built from exact local solves.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::bernstein::Geometry;
use crate::elements::eval::{evaluate_dofs, Input};
use crate::elements::families::build_table;
use crate::elements::frames::Frames;
use crate::elements::{assemble_dof_matrix, DofTable, ElementSpec, ShapeSpace};
use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::Matrix;
use crate::rational::Q;

use super::mesh::Triangulation;

/// Global sub-simplex (sorted vertex ids) and the DoF index within it.
pub type DofKey = (Vec<usize>, usize);

#[derive(Clone, Debug)]
pub struct LocalElement {
    pub geometry: Geometry,
    pub table: DofTable,
    /// Global index of each local DoF.
    pub global: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GlobalSpace {
    pub spec: ElementSpec,
    pub mesh: Triangulation,
    pub frames: Frames,
    pub locals: Vec<LocalElement>,
    pub keys: Vec<DofKey>,
    /// First (cell, local DoF) carrying each global DoF.
    pub owners: Vec<(usize, usize)>,
}

/// Frames with every lower-dimensional normal set pinned from the first cell
/// containing it, so neighbours share them.
pub fn mesh_frames(mesh: &Triangulation, base: &Frames) -> Result<Frames> {
    let mut frames = base.clone();
    for c in 0..mesh.cells.len() {
        let g = mesh.geometry(c)?;
        for d in 1..mesh.dim {
            for f in lattice::subsimplices(mesh.dim, d) {
                frames.pin_normals(&f, &g);
            }
        }
    }
    Ok(frames)
}

impl GlobalSpace {
    pub fn new(spec: &ElementSpec, mesh: &Triangulation, frames: &Frames) -> Result<Self> {
        if spec.shape().n != mesh.dim {
            return Err(Error::DimensionMismatch(format!(
                "{spec} lives on {}-simplices but the mesh has dimension {}",
                spec.shape().n,
                mesh.dim
            )));
        }
        let frames = mesh_frames(mesh, frames)?;
        let tables: Vec<(Geometry, DofTable)> = (0..mesh.cells.len())
            .into_par_iter()
            .map(|c| {
                let g = mesh.geometry(c)?;
                let table = build_table(spec, &g, &frames)?;
                Ok((g, table))
            })
            .collect::<Result<_>>()?;
        let mut index: BTreeMap<DofKey, usize> = BTreeMap::new();
        let mut keys = Vec::new();
        let mut owners = Vec::new();
        let mut locals = Vec::with_capacity(tables.len());
        for (c, (geometry, table)) in tables.into_iter().enumerate() {
            let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut global = Vec::with_capacity(table.len());
            for (i, dof) in table.dofs.iter().enumerate() {
                let ids = mesh.global_ids(c, &dof.entity);
                let slot = seen.entry(ids.clone()).or_insert(0);
                let key = (ids, *slot);
                *slot += 1;
                let gi = match index.get(&key) {
                    Some(&gi) => {
                        let (oc, oi) = owners[gi];
                        let other: &LocalElement = &locals[oc];
                        if !same_functional(&other.table.dofs[oi], dof) {
                            return Err(Error::NonConforming(format!(
                                "DoF {} on {:?} differs between cells {oc} and {c}",
                                key.1, key.0
                            )));
                        }
                        gi
                    }
                    None => {
                        let gi = keys.len();
                        index.insert(key.clone(), gi);
                        keys.push(key);
                        owners.push((c, i));
                        gi
                    }
                };
                global.push(gi);
            }
            locals.push(LocalElement { geometry, table, global });
        }
        Ok(Self { spec: spec.clone(), mesh: mesh.clone(), frames, locals, keys, owners })
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn shape(&self) -> ShapeSpace {
        self.spec.shape()
    }

    /// Σ_ℓ C_ℓ |Δ_ℓ| with C_ℓ read off the first cell's table.
    pub fn counted_dim(&self) -> usize {
        let per_dim = self.locals[0].table.counts_by_dim();
        self.mesh.counts().iter().zip(&per_dim).map(|(n, c)| n * c.first().copied().unwrap_or(0)).sum()
    }

    /// Inverse of each cell's DoF matrix.
    pub fn local_inverses(&self) -> Result<Vec<Matrix>> {
        self.locals
            .par_iter()
            .map(|l| assemble_dof_matrix(&l.table, &l.geometry)?.inverse())
            .collect()
    }

    /// Shape-space coefficients on `cell` of the global function with DoF values `coeffs`.
    pub fn local_coefficients(&self, inverses: &[Matrix], cell: usize, coeffs: &[Q]) -> Vec<Q> {
        let local: Vec<Q> = self.locals[cell].global.iter().map(|&gi| coeffs[gi].clone()).collect();
        inverses[cell].mul_vec(&local)
    }

    /// Restriction to `cell` of the global function with DoF values `coeffs`.
    pub fn local_function(&self, inverses: &[Matrix], cell: usize, coeffs: &[Q]) -> Input {
        self.shape().combine(&self.local_coefficients(inverses, cell, coeffs))
    }

    /// Global DoF values of `f`, each read on the first cell carrying the DoF.
    pub fn interpolate<F>(&self, f: F) -> Vec<Q>
    where
        F: Fn(&Geometry) -> Input + Sync,
    {
        let mut by_cell: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (gi, &(c, i)) in self.owners.iter().enumerate() {
            by_cell.entry(c).or_default().push((gi, i));
        }
        let parts: Vec<Vec<(usize, Q)>> = by_cell
            .par_iter()
            .map(|(&c, owned)| {
                let local = &self.locals[c];
                let dofs: Vec<_> = owned.iter().map(|&(_, i)| local.table.dofs[i].clone()).collect();
                let values = evaluate_dofs(&dofs, &[f(&local.geometry)], &local.geometry);
                owned.iter().enumerate().map(|(row, &(gi, _))| (gi, values.get(row, 0).clone())).collect()
            })
            .collect();
        let mut out = vec![Q::zero(); self.dim()];
        for (gi, v) in parts.into_iter().flatten() {
            out[gi] = v;
        }
        out
    }
}

fn same_functional(a: &crate::elements::Dof, b: &crate::elements::Dof) -> bool {
    a.quantity == b.quantity && a.derivative == b.derivative && a.frame == b.frame && a.test == b.test
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Differential {
    Grad,
    Curl,
    Div,
}

impl Differential {
    pub fn name(self) -> &'static str {
        match self {
            Differential::Grad => "grad",
            Differential::Curl => "curl",
            Differential::Div => "div",
        }
    }

    pub fn apply(self, input: &Input, g: &Geometry) -> Result<Input> {
        match (self, input) {
            (Differential::Grad, Input::Scalar(p)) => Ok(Input::Vector(p.gradient(g))),
            (Differential::Curl, Input::Vector(v)) if v.components.len() == 3 => Ok(Input::Vector(v.curl(g))),
            (Differential::Div, Input::Vector(v)) => Ok(Input::Scalar(v.divergence(g))),
            _ => Err(Error::DimensionMismatch(format!("{} does not apply to this input", self.name()))),
        }
    }
}

/// Matrix of `op` from source DoF values to target DoF values. Each cell
/// contributes N·M⁻¹ with M the source DoF matrix and N the target DoFs applied
/// to the differentiated source basis; rows of shared target DoFs must agree.
pub fn assemble_global_operator(source: &GlobalSpace, target: &GlobalSpace, op: Differential) -> Result<Matrix> {
    if source.mesh != target.mesh {
        return Err(Error::InvalidMesh("source and target live on different meshes".into()));
    }
    let locals: Vec<Matrix> = source
        .locals
        .par_iter()
        .zip(&target.locals)
        .map(|(s, t)| {
            let g = &s.geometry;
            let m = assemble_dof_matrix(&s.table, g)?;
            let images = source.shape().basis().iter().map(|b| op.apply(b, g)).collect::<Result<Vec<_>>>()?;
            let n = evaluate_dofs(&t.table.dofs, &images, g);
            Ok(m.transpose().solve(&n.transpose())?.transpose())
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Option<Vec<Q>>> = vec![None; target.dim()];
    for (c, a) in locals.iter().enumerate() {
        let src = &source.locals[c].global;
        for (i, &gi) in target.locals[c].global.iter().enumerate() {
            let mut row = vec![Q::zero(); source.dim()];
            for (j, &gj) in src.iter().enumerate() {
                row[gj] = a.get(i, j).clone();
            }
            match &rows[gi] {
                Some(existing) if *existing != row => {
                    return Err(Error::NonConforming(format!(
                        "{} of the source leaves the target space at DoF {gi} ({:?})",
                        op.name(),
                        target.keys[gi]
                    )));
                }
                Some(_) => {}
                None => rows[gi] = Some(row),
            }
        }
    }
    let mut out = Matrix::zeros(target.dim(), source.dim());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.expect("every DoF lies on a cell").into_iter().enumerate() {
            if !v.is_zero() {
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}
