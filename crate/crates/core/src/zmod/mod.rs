//! Finite modules over Z/m and their homomorphisms.

pub mod enumerate;
pub mod homspace;
pub(crate) mod linalg;
pub mod map;
pub mod module;

pub use enumerate::{automorphisms, elements, enumerate_elements, enumerate_homs, enumerate_modules_of_order, modules_of_order, modules_up_to, Budget};
pub use homspace::{HomSpace, LinearOp};
pub use linalg::{Mat, Snf};
pub use map::{
    direct_sum, direct_sum2, factor_through_injection, factor_through_surjection, hom_count, pullback, pushout, quotient,
    submodule, DirectSum, ModMap, Preimages,
};
pub use module::{smith_normal_form, Ring, ZModule};
