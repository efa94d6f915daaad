//! Two-term complexes over Z/m, their splittings, and the (2,1)-category of
//! extensions built from them.

pub mod adm;
pub mod cx2;
pub mod error;
pub mod ext;
pub mod mutation;
pub mod simplex;
pub mod spl;
pub mod sweep;
pub mod twocat;
pub mod zmod;

pub use error::{Error, Result};
