//! Exact algebra for symplectic Monge-Ampère equations viewed as hyperplane
//! sections of the Lagrangian Grassmannian.

pub mod algebra;
pub mod builtins;
pub mod error;
pub mod expr;
pub mod forms;
pub mod grassmann;
pub mod integrability;
pub mod laxpair;
pub mod liesp;

pub use error::{Error, Result};
