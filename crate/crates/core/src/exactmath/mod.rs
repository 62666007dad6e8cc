//! Exact scalars, binary forms and integer matrices.

pub mod bform;
pub mod cyclotomic;
pub mod intmat;

pub use bform::{bform_root_action, moebius_apply, proj_eq, BinaryForm, ProjPoint, RootSet};
pub use cyclotomic::{lcm, phi, rat, rat_int, CycNum, Rational};
pub use intmat::{smith_normal_form, IntMatrix, SmithForm};
