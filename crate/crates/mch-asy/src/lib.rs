#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod numerics;
pub mod painleve2;
pub mod phase;
pub mod region1;
pub mod region2;
pub mod region3;
pub mod scattering;

pub use error::{Error, Result};
