//! Conjugating a lift of `SL_n(R) -> GL_n(k)` into induced form and reading
//! off the inducing ring homomorphism.

mod defect;
mod family;
mod normal_form;
mod witness;

#[cfg(test)]
mod tests;

pub use defect::{defect_table, solve_conjugator, DefectTable, Strategy};
pub(crate) use family::residue_in;
pub use family::{
    index_pairs, induced_lift, random_congruence_matrix, seeded_rng, torus_inclusion,
    GeneratorLift,
};
pub use normal_form::{normalize_lift, supported_case, Normalization, TARGET_LIMIT};
pub use witness::{exceptional_family, sl3f2_witness, InducedComparison, WitnessReport};
