//! Exact arithmetic for finitely generated abelian groups.

pub mod bigint_json;
mod group;
mod hom;
mod matrix;
mod snf;
mod solve;
mod tensor;

pub use group::{
    canonicalize, direct_sum, direct_sum_many, element_order, quotient_by, quotient_by_many,
    Canonicalized, DirectSum, FgAbGroup, GroupElement, Quotient,
};
pub use hom::{compose, is_injective, is_surjective, GroupHom};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};
pub use solve::{
    constrained_section_exists, integer_kernel, right_inverse_exists, solve_divisibility,
    solve_integer, CongruenceSystem,
};
pub use tensor::{tensor, tensor_elem, tor, TensorProduct};
