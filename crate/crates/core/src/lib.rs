//! Inference of cyclic strings from LCP arrays.

pub mod bcssila;
pub mod ccec;
pub mod cssila;
pub mod cyclic;
pub mod error;
pub mod extnat;
pub mod oracle;
pub mod reductions;
pub mod rmq;
pub mod text;

pub use error::{Error, Result};
pub use extnat::{ExtNat, LcpArray};
