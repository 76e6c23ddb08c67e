//! Exact computations on affine Weyl groups: atomic lengths, generalised cores and
//! the parametrisation of Pell-type solution sets by affine Grassmannian elements.

pub mod atomic;
pub mod cli;
pub mod cores;
pub mod diophantine;
pub mod dynkin;
pub mod error;
pub mod linalg;
pub mod param;
pub mod tables;
pub mod weyl;

pub use error::{Error, Result};
