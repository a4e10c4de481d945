//! Exact verification of Rota-Baxter systems on finite-dimensional Hopf
//! algebras, groups and Lie algebras over the rationals.
//!
//! All arithmetic is done in [`Rational`]; there is no floating point anywhere
//! in the library.

pub mod character;
pub mod error;
pub mod group;
pub mod hopf;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod pipeline;
pub mod rational;
pub mod rbs;
pub mod report;

pub use error::{Error, Result};
pub use rational::{q, Rational};
pub use report::{Check, Report, Status};
