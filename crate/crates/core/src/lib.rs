//! Exact arithmetic and formula verification for height-2 Morava E-theory
//! at p = 2.
//!
//! Everything is computed over truncated rings with explicit, user-chosen
//! precision: `Z_2[w]/2^N` Witt vectors over F_4, the deformation base
//! `W[[u1]]/(u1^M)`, and power series cut at a total-degree cap.  All
//! operations are exact in those quotients; nothing is floating point and
//! nothing rounds.

pub mod cannibal;
pub mod checks;
pub mod curve;
pub mod error;
pub mod fgl;
pub mod pairing;
pub mod qexp;
pub mod quaternion;
pub mod rings;
pub mod series;
pub mod stabilizer;

pub use error::{Error, Result};
