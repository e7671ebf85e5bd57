//! Geometry of hyperplane sections of the Lagrangian Grassmannian.

pub mod basis;
pub mod equation;
pub mod hessian;
pub mod legendre;
pub mod singular;

pub use basis::{expected_dimension, minor_basis, MinorBasis};
pub use equation::{
    osculating_containment, plucker_eval, translate, EquationFile, LagrangePoint, MAEquation,
};
pub use hessian::{hessian_vars, num_vars, var_index, var_name, var_pair};
pub use legendre::{legendre_point, partial_legendre};
pub use singular::{meets_all_sublagrangians, singular_locus_quadratic, SingularLocus};
