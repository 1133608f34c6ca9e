//! Explicit splitting fields built from iterated square roots.
//!
//! The core object is a [`Tower`] of number fields with exact arithmetic
//! on nested polynomial representations. On top of it:
//!
//! * [`isotropy`]: a common zero of `r` quadratic forms in at least
//!   `r(r+1)/2 + 1` variables over an extension of degree at most `2^r`;
//! * [`split`]: a zero of the reduced norm of a quaternion algebra over
//!   `K`, `[K:F] ≤ 8`, over a 2-extension of `F` of degree at most
//!   `2^[K:F]`;
//! * [`corestriction`]: the corestriction of an algebra along a cyclic
//!   extension as the Galois-fixed part of a tensor power;
//! * [`verify`]: an independent checker for the JSON certificates.

pub mod algebra;
pub mod corestriction;
pub mod cyclic;
pub mod dynamic;
pub mod error;
pub mod hilbert;
pub mod isotropy;
pub mod job;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod quadform;
pub mod quaternion;
pub mod random;
pub mod rational;
pub mod serial;
pub mod slot;
pub mod split;
pub mod sqrt;
pub mod tower;
pub mod verify;

pub use error::{Error, ReducibilityWitness, Result};
pub use rational::Q;
pub use tower::{Elem, Level, LevelKind, Tower};
