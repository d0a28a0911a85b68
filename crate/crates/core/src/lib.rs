//! Exact cohomology calculus on symmetric products of curves and abelian
//! varieties.

pub mod aj;
pub mod chern;
pub mod class;
pub mod cycle;
pub mod data;
pub mod degeneration;
pub mod error;
pub mod expr;
pub mod gysin_tables;
pub mod linalg;
pub mod maps;
pub mod monomial;
pub mod oracle;
pub mod product;
pub mod rational;
pub mod ring;
pub mod space;
pub mod verify;

pub use class::CohClass;
pub use error::{Error, Result};
pub use rational::Q;
pub use space::{FactorSpec, MultiDegree, SpaceSpec};
