//! Deformations of representations of finite groups over finite local rings:
//! ring arithmetic, elementary matrices, finite matrix groups, lift
//! enumeration and the normalization of lifts of `SL_n` to induced form.

pub mod acceptance;
pub mod error;
pub mod groups;
pub mod localring;
pub mod defo;
pub mod matrix;
pub mod normalize;
pub mod poly;
pub mod zmod;

pub use error::{Error, Result};
pub use localring::{Ideal, RingElt, RingHom, RingSpec};
pub use matrix::{Mat, TransvectionWord};
pub use poly::IntPoly;
