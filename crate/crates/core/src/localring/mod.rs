//! Finite local rings `Z/p^a[x]/(g(x), J)`, their elements, ideals and
//! homomorphisms.

mod elt;
mod hom;
mod ideal;
mod spec;

pub use elt::RingElt;
pub use hom::{
    find_homs, hensel_lift, lift_residue, quotient_by_m_power, teichmueller, HomSearch, RingHom,
    EXHAUSTIVE_HOM_LIMIT,
};
pub use ideal::Ideal;
pub use spec::RingSpec;

#[cfg(test)]
mod tests;
