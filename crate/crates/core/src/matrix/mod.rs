//! Square matrices over finite local rings and the elementary-matrix
//! calculus of `SL_n`.

mod chebyshev;
mod decompose;
mod mat;
mod relations;
mod standard;

pub use chebyshev::{chebyshev_poly, eval_int_poly, is_zero_divisor, minus_identity_power_test};
pub use decompose::decompose_transvections;
pub use mat::Mat;
pub use relations::{verify_relations, RelationCheck, RelationReport, Sampling, EXHAUSTIVE_RELATION_LIMIT};
pub use standard::{
    diag, diag_pair, express_as_commutator, scalar_if_centralizes, sigma, transvection, unit_matrix,
    CommutatorStrategy, Transvection, TransvectionWord, WordTriple,
};

#[cfg(test)]
mod tests;
