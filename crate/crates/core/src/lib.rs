//! Exact computation of Frölicher spectral sequence pages for nilpotent Lie
//! algebras with complex structures, together with Hermitian metric checks,
//! a catalog of models, products and bigraded CDGA slices.

pub mod catalog;
pub mod cdga;
pub mod exec;
pub mod exterior;
pub mod fss;
pub mod hermitian;
pub mod linalg;
pub mod model;
pub mod products;
