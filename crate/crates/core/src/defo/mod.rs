//! Deformation theory of finite matrix groups over finite local rings:
//! tangent spaces, lift enumeration, strict equivalence, transvection
//! normal forms and the exceptional characteristic-zero lifts.

mod certificate;
mod cohomology;
mod commutant;
mod diamond;
mod enumerate;
mod exceptional;
mod lift;
mod rigidify;


pub use certificate::{
    decode_elt, decode_hom, decode_mat, encode_elt, encode_hom, encode_mat, Certificate, EltJson,
    HomJson, ImageEntry, MatJson, TorusEntry, SCHEMA_VERSION,
};
pub use cohomology::{adjoint_invariants, cocycle_basis, h1_dimension, Cocycle, H1Report};
pub use commutant::{commutant, has_scalar_commutant};
pub use diamond::{
    diamond_check, extract_hom, strictly_equivalent, DiamondWitness, HomExtraction,
    TransvectionTable,
};
pub use enumerate::{
    classify_strict, enumerate_lifts, ClassSummary, DeformationClass, KERNEL_LIMIT, SEARCH_LIMIT,
};
pub use exceptional::{exceptional_lift, verify_exceptional_lift, ExceptionalReport};
pub use lift::{congruence_kernel, lift_matrix, Lift};
pub use rigidify::{rigidify, twist_decompose};
