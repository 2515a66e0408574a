//! Global spaces on small meshes and exactness of the resulting complexes.

pub mod check;
pub mod mesh;
pub mod poly;
pub mod space;

pub use check::{
    alternating_sum_check, commuting_diagram_check, exactness_check, global_div_rank, nd_trace_check,
    polynomial_alternating_sum, AlternatingSums, Branch, BranchReport, CommutingReport, ComplexReport, ComplexSpec,
    GlobalComplex, GlobalDivVerdict, TraceReport,
};
pub use mesh::Triangulation;
pub use space::{assemble_global_operator, Differential, GlobalSpace};
