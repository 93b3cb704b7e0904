//! Exact construction and verification of realizations of low-dimensional
//! Lie algebras by first-order differential operators.

// Matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod deform;
pub mod error;
pub mod expr;
pub mod jets;
pub mod liealg;
pub mod render;
pub mod shirokov;
pub mod verify;

pub use error::{Error, Result};
