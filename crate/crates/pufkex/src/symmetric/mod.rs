//! Symmetric primitives: SHA-256/SHA-512, HMAC, HKDF, and the deterministic
//! byte-stream generator that stands in for all randomness in the simulation.
//!
//! SHA-256 is the single hash used for key derivation, transcript binding
//! and MACs. Everything here is a pure function of its inputs; [`DrbgState`]
//! is a value that is consumed and returned, never shared.

mod drbg;
mod hkdf;
mod hmac;
mod sha256;
mod sha512;

pub use drbg::DrbgState;
pub use hkdf::{expand as hkdf_expand, extract as hkdf_extract, hkdf, LengthExceeded, MAX_OUTPUT};
pub use hmac::{hmac, tags_equal};
pub use sha256::{sha256, Sha256};
pub use sha512::{sha512, Sha512};
