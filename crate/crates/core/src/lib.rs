//! Convolutional polar codes.
//!
//! * [`transform`]: the convolutional polarizing transformation and encoder.
//! * [`distance`]: linear-time subchannel weights and the minimum-distance bound.
//! * [`oracle`]: exhaustive erasure-pattern and coset enumeration at small lengths.
//! * [`decoder`]: exact SC and SCL decoding with dynamic frozen symbols.
//! * [`construction`]: reliability estimation and (sub)code construction.
//! * [`channel`] and [`sim`]: channel models and the frame-error-rate harness.

pub mod channel;
pub mod code;
pub mod construction;
pub mod decoder;
pub mod distance;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod rng;
pub mod sim;
pub mod subspace;
pub mod transform;

pub use code::CodeSpec;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
