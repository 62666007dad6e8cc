//! Exact linear algebra over cyclotomic fields.

mod eigen;
mod mat;
mod quadric;
mod subspace;

pub use eigen::{
    eigenspaces_finite_order, eigenspaces_with_cap, operator_order, root_of_unity_order,
    simultaneous_eigenspaces, Character, Eigenspace, OrderInfo, DEFAULT_ORDER_CAP,
};
pub use mat::{is_zero_vector, normalize_point, same_point, Mat};
pub use quadric::{gram_restrict, Quadric};
pub use subspace::Subspace;
