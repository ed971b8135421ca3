//! PBW deformations of `A(Q,W_{N+1})`: the deformation data `φ`, the
//! conditions PBW1 to PBW4 and PBW2′, reconstruction of the lower-order
//! potential, and a dimension oracle on the associated graded algebra.

mod conditions;
mod deformation;
mod oracle;
mod reconstruct;

pub use conditions::{check_conditions, check_conditions_with, check_pbw2prime, BaseStatus, CheckOptions, ConditionResult, PbwReport};
pub use deformation::{deformation_from_potential, from_relation_basis, Deformation};
pub use oracle::{gr_oracle, OracleVerdict};
pub use reconstruct::{lambda_table, reconstruct_potential, LambdaOutcome, LambdaTable, LambdaWitness};

#[cfg(test)]
mod tests;
