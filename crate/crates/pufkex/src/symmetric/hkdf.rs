//! HKDF-SHA-256 extract-then-expand (RFC 5869).

use super::hmac::hmac;

/// Maximum output: 255 blocks of 32 bytes.
pub const MAX_OUTPUT: usize = 255 * 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthExceeded;

impl std::fmt::Display for LengthExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "requested HKDF output exceeds {} bytes", MAX_OUTPUT)
    }
}

impl std::error::Error for LengthExceeded {}

/// HKDF-Extract: PRK = HMAC(salt, ikm). An empty salt means 32 zero bytes.
pub fn extract(salt: &[u8], ikm: &[u8]) -> [u8; 32] {
    if salt.is_empty() {
        hmac(&[0u8; 32], ikm)
    } else {
        hmac(salt, ikm)
    }
}

/// HKDF-Expand: OKM of `len` bytes from PRK and info.
pub fn expand(prk: &[u8; 32], info: &[u8], len: usize) -> Result<Vec<u8>, LengthExceeded> {
    if len > MAX_OUTPUT {
        return Err(LengthExceeded);
    }
    let mut okm = Vec::with_capacity(len);
    let mut t: Vec<u8> = Vec::new();
    let mut counter = 1u8;
    while okm.len() < len {
        let mut data = t.clone();
        data.extend_from_slice(info);
        data.push(counter);
        t = hmac(prk, &data).to_vec();
        okm.extend_from_slice(&t);
        counter += 1;
    }
    okm.truncate(len);
    Ok(okm)
}

/// Extract-then-expand in one call.
pub fn hkdf(salt: &[u8], ikm: &[u8], info: &[u8], len: usize) -> Result<Vec<u8>, LengthExceeded> {
    expand(&extract(salt, ikm), info, len)
}
