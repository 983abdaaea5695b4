pub mod bits;
pub mod curve25519;
pub mod symmetric;

pub use bits::BitString;
