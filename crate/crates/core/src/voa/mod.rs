//! Concrete vertex operator algebras with exact mode action.

pub mod axioms;
pub mod basis;
mod instance;
mod ops;
pub mod oracle;

pub use axioms::{weak_module_axiom_check, AdjointModule, AxiomReport, AxiomVerdict, ModeModule, ZeroTest};
pub use basis::{Partition, PbwBasis};
pub use instance::{Voa, VoaKind};
