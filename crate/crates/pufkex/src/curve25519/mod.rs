//! Curve25519 primitives: field arithmetic, X25519 key agreement (the
//! protocol's scalar-multiplication operator) and Ed25519 certificate
//! signatures. Implemented from scratch against the RFC 7748 / RFC 8032
//! test vectors; all operations are pure functions over value types.

pub mod ed25519;
pub mod edwards;
pub mod field;
pub mod montgomery;
pub mod scalar;

pub use ed25519::{ed_sign, ed_verify, Signature, SigningKeyPair, VerifyError};
pub use field::FieldElement;
pub use montgomery::{clamp_scalar, x25519, x25519_base, LowOrderResult, BASE_POINT};

/// X25519 key pair: clamped 32-byte secret scalar and its public
/// u-coordinate.
#[derive(Clone)]
pub struct AgreementKeyPair {
    secret: [u8; 32],
    public: [u8; 32],
}

impl AgreementKeyPair {
    /// Build from raw secret material; the scalar is clamped here so the
    /// stored secret always has the RFC 7748 bit pattern.
    pub fn from_secret(secret: [u8; 32]) -> Self {
        let secret = clamp_scalar(&secret);
        let public = x25519_base(&secret);
        Self { secret, public }
    }

    pub fn secret(&self) -> [u8; 32] {
        self.secret
    }

    pub fn public(&self) -> [u8; 32] {
        self.public
    }

    /// Shared secret with a peer public key.
    pub fn agree(&self, peer_public: &[u8; 32]) -> Result<[u8; 32], LowOrderResult> {
        x25519(&self.secret, peer_public)
    }
}

impl std::fmt::Debug for AgreementKeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AgreementKeyPair(pk={})", hex::encode(self.public))
    }
}
