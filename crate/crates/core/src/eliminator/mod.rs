//! Numeric eigendecomposition by successive rank-1 edge elimination.

mod consistency;
mod decompose;
mod input;
mod run;
mod svd;

pub use consistency::{
    predictive_consistency, predictive_consistency_decomposition, ConsistencyOptions, ConsistencyReport, StepCheck,
};
pub use decompose::{decompose, Decomposition, GershgorinSide, Term};
pub use input::HermitianInput;
pub use run::{eliminate_all, eliminate_decomposition, EigDiagnostics, EigResult, EliminationOptions};
pub use svd::{svd_embedding, svd_from_embedding, SvdResult};
