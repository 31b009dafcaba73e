//! Frobenius–Witt differential modules of finitely presented rings over
//! `F_p`, `F_{p^e}` and `Z/p^2`, their fibers at points and primes, and the
//! rank criterion for regularity of the local rings.

pub mod error;
pub mod fwcore;
pub mod linalg;
pub mod localalg;
pub mod modarith;
pub mod mpoly;
pub mod oracle;

pub use error::{Error, Result};
