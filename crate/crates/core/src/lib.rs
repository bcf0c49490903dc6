//! Configuration sets of finitely generated groups.
//!
//! A configuration pair is an ordered generating tuple together with a finite
//! partition of the group; its configuration set records, for every base point,
//! which blocks the base point and its generator-translates land in. This crate
//! computes configuration sets exactly for finite groups and by ball observation
//! for a curated family of infinite groups, implements the representative-pair
//! word calculus, and runs exhaustive desk-scale containment searches that
//! produce re-checkable certificates.

pub mod config;
pub mod docs;
pub mod engine;
pub mod golden;
pub mod localhom;
pub mod partition;
pub mod words;

mod error;

pub use error::{Error, Result};

/// Version string embedded in emitted documents.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
