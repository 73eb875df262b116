//! Exact computations with quiver representations over the rationals and
//! prime fields: finite-type classification, positive roots, indecomposables
//! via reflection functors, Hom and Ext¹, and first-order deformations.

pub mod cli;
pub mod deform;
pub mod error;
pub mod format;
pub mod indec;
pub mod par;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod xlinalg;

pub use error::{Error, ParseError, Result};
