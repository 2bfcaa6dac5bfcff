//! Exact computation of Schur and Bogomolov multipliers of finite groups,
//! the restriction / corestriction / conjugation maps between their
//! cohomology, and an executable verifier for local-control statements.

pub mod bogomolov;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod linalg;
pub mod verifier;

pub use error::{Error, Result};
