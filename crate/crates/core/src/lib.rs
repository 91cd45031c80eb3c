//! Numerical toolkit for diametral l1-pressure on finite point sets in
//! normed spaces, with dual certificates, frame bounds and the dynamics of
//! nonexpansive maps.

pub mod certificates;
pub mod dynamics;
pub mod error;
pub mod lp;
pub mod pressure;
pub mod replication;
pub mod vectorspace;

pub use error::{Error, Result};
pub use vectorspace::{norm, NormSpec, PointSet, Vector};
