//! Finite matrix groups, presentations and word evaluation.

mod builtin;
mod finite;
mod presentation;

#[cfg(test)]
mod tests;

pub use builtin::{primitive_residue, teichmueller_torus, BuiltinPresentation, NamedGroup};
pub use finite::{gl_order, sl_order, FiniteGroup, DEFAULT_CAP, TABLE_LIMIT};
pub use presentation::{eval_word, Presentation, PresentationCheck, RelatorCheck, Word};
