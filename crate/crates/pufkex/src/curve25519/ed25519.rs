//! Ed25519 signatures (RFC 8032).

use super::edwards::EdwardsPoint;
use super::scalar;
use crate::symmetric::Sha512;

/// 64-byte detached signature.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Signature(pub [u8; 64]);

impl Signature {
    pub fn from_bytes(bytes: [u8; 64]) -> Self {
        Self(bytes)
    }

    pub fn to_bytes(&self) -> [u8; 64] {
        self.0
    }
}

impl std::fmt::Debug for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Signature({})", hex::encode(self.0))
    }
}

/// Deterministic signing key pair; everything derives from the 32-byte seed.
#[derive(Clone)]
pub struct SigningKeyPair {
    seed: [u8; 32],
    expanded_scalar: [u8; 32],
    prefix: [u8; 32],
    public: [u8; 32],
}

impl SigningKeyPair {
    pub fn from_seed(seed: [u8; 32]) -> Self {
        let h = {
            let mut hasher = Sha512::new();
            hasher.update(&seed);
            hasher.finalize()
        };
        let mut expanded_scalar = [0u8; 32];
        expanded_scalar.copy_from_slice(&h[..32]);
        expanded_scalar[0] &= 248;
        expanded_scalar[31] &= 127;
        expanded_scalar[31] |= 64;
        let mut prefix = [0u8; 32];
        prefix.copy_from_slice(&h[32..]);

        let public = EdwardsPoint::base_point()
            .scalar_mul(&expanded_scalar)
            .compress();
        Self { seed, expanded_scalar, prefix, public }
    }

    pub fn seed(&self) -> [u8; 32] {
        self.seed
    }

    pub fn public(&self) -> [u8; 32] {
        self.public
    }

    pub fn sign(&self, msg: &[u8]) -> Signature {
        ed_sign(self, msg)
    }
}

impl std::fmt::Debug for SigningKeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SigningKeyPair(pk={})", hex::encode(self.public))
    }
}

/// Deterministic Ed25519 signature per RFC 8032.
pub fn ed_sign(kp: &SigningKeyPair, msg: &[u8]) -> Signature {
    let r = {
        let mut h = Sha512::new();
        h.update(&kp.prefix);
        h.update(msg);
        scalar::reduce_wide(&h.finalize())
    };
    let r_point = EdwardsPoint::base_point().scalar_mul(&r).compress();

    let k = {
        let mut h = Sha512::new();
        h.update(&r_point);
        h.update(&kp.public);
        h.update(msg);
        scalar::reduce_wide(&h.finalize())
    };

    let s = scalar::mul_add(&k, &kp.expanded_scalar, &r);

    let mut sig = [0u8; 64];
    sig[..32].copy_from_slice(&r_point);
    sig[32..].copy_from_slice(&s);
    Signature(sig)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyError {
    /// Public key or R component does not decode to a curve point, or the
    /// S component is not a canonical scalar.
    MalformedPoint,
    /// Well-formed but the verification equation does not hold.
    BadSignature,
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::MalformedPoint => write!(f, "malformed point or scalar encoding"),
            VerifyError::BadSignature => write!(f, "signature verification failed"),
        }
    }
}

impl std::error::Error for VerifyError {}

/// Verify a signature; `Ok(())` means accept, any error means reject.
pub fn ed_verify(pk: &[u8; 32], msg: &[u8], sig: &Signature) -> Result<(), VerifyError> {
    let mut r_bytes = [0u8; 32];
    r_bytes.copy_from_slice(&sig.0[..32]);
    let mut s_bytes = [0u8; 32];
    s_bytes.copy_from_slice(&sig.0[32..]);

    if !scalar::is_canonical(&s_bytes) {
        return Err(VerifyError::MalformedPoint);
    }
    let a = EdwardsPoint::decompress(pk).ok_or(VerifyError::MalformedPoint)?;
    let r = EdwardsPoint::decompress(&r_bytes).ok_or(VerifyError::MalformedPoint)?;

    let k = {
        let mut h = Sha512::new();
        h.update(&r_bytes);
        h.update(pk);
        h.update(msg);
        scalar::reduce_wide(&h.finalize())
    };

    // [S]B == R + [k]A
    let lhs = EdwardsPoint::base_point().scalar_mul(&s_bytes);
    let rhs = r.add(&a.scalar_mul(&k));
    if lhs == rhs {
        Ok(())
    } else {
        Err(VerifyError::BadSignature)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr32(hex_str: &str) -> [u8; 32] {
        hex::decode(hex_str).unwrap().try_into().unwrap()
    }

    fn arr64(hex_str: &str) -> [u8; 64] {
        hex::decode(hex_str).unwrap().try_into().unwrap()
    }

    #[test]
    fn rfc8032_test_1_empty_message() {
        let kp = SigningKeyPair::from_seed(arr32(
            "9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60",
        ));
        assert_eq!(
            hex::encode(kp.public()),
            "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a"
        );
        let sig = ed_sign(&kp, b"");
        assert_eq!(
            hex::encode(sig.to_bytes()),
            "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e06522490155\
             5fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24655141438e7a100b"
        );
        assert!(ed_verify(&kp.public(), b"", &sig).is_ok());
    }

    #[test]
    fn rfc8032_test_2_single_byte() {
        let kp = SigningKeyPair::from_seed(arr32(
            "4ccd089b28ff96da9db6c346ec114e0f5b8a319f35aba624da8cf6ed4fb8a6fb",
        ));
        assert_eq!(
            hex::encode(kp.public()),
            "3d4017c3e843895a92b70aa74d1b7ebc9c982ccf2ec4968cc0cd55f12af4660c"
        );
        let sig = ed_sign(&kp, &[0x72]);
        assert_eq!(
            hex::encode(sig.to_bytes()),
            "92a009a9f0d4cab8720e820b5f642540a2b27b5416503f8fb3762223ebdb69da\
             085ac1e43e15996e458f3613d0f11d8c387b2eaeb4302aeeb00d291612bb0c00"
        );
        assert!(ed_verify(&kp.public(), &[0x72], &sig).is_ok());
    }

    #[test]
    fn rfc8032_test_3_two_bytes() {
        let kp = SigningKeyPair::from_seed(arr32(
            "c5aa8df43f9f837bedb7442f31dcb7b166d38535076f094b85ce3a2e0b4458f7",
        ));
        assert_eq!(
            hex::encode(kp.public()),
            "fc51cd8e6218a1a38da47ed00230f0580816ed13ba3303ac5deb911548908025"
        );
        let sig = ed_sign(&kp, &[0xaf, 0x82]);
        assert_eq!(
            hex::encode(sig.to_bytes()),
            "6291d657deec24024827e69c3abe01a30ce548a284743a445e3680d7db5ac3ac\
             18ff9b538d16f290ae67f760984dc6594a7c15e9716ed28dc027beceea1ec40a"
        );
        assert!(ed_verify(&kp.public(), &[0xaf, 0x82], &sig).is_ok());
    }

    #[test]
    fn signing_is_deterministic() {
        let kp = SigningKeyPair::from_seed([9u8; 32]);
        assert_eq!(ed_sign(&kp, b"m").to_bytes(), ed_sign(&kp, b"m").to_bytes());
    }

    #[test]
    fn round_trip_random_messages() {
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"ed-rt", 9);
        for _ in 0..100 {
            let kp = SigningKeyPair::from_seed(rng.next_array::<32>());
            let msg = rng.next_bytes(40);
            let sig = ed_sign(&kp, &msg);
            assert!(ed_verify(&kp.public(), &msg, &sig).is_ok());
        }
    }

    #[test]
    fn message_bit_flips_reject() {
        let kp = SigningKeyPair::from_seed([0x11; 32]);
        let msg = [0x5a; 16];
        let sig = ed_sign(&kp, &msg);
        for bit in 0..64 {
            let mut m = msg;
            m[bit / 8] ^= 1 << (bit % 8);
            assert!(ed_verify(&kp.public(), &m, &sig).is_err(), "bit {bit}");
        }
    }

    #[test]
    fn signature_bit_flips_reject() {
        let kp = SigningKeyPair::from_seed([0x22; 32]);
        let msg = b"flip me";
        let sig = ed_sign(&kp, msg).to_bytes();
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"sig-flip", 10);
        for _ in 0..64 {
            let bit = (rng.next_u64() % 512) as usize;
            let mut s = sig;
            s[bit / 8] ^= 1 << (bit % 8);
            assert!(
                ed_verify(&kp.public(), msg, &Signature::from_bytes(s)).is_err(),
                "bit {bit}"
            );
        }
    }

    #[test]
    fn malformed_public_key_is_distinguished() {
        let kp = SigningKeyPair::from_seed([0x33; 32]);
        let sig = ed_sign(&kp, b"x");
        let mut bad_pk = [0xffu8; 32];
        bad_pk[31] = 0x7f;
        assert_eq!(ed_verify(&bad_pk, b"x", &sig), Err(VerifyError::MalformedPoint));
    }

    #[test]
    fn non_canonical_s_rejected() {
        let kp = SigningKeyPair::from_seed([0x44; 32]);
        let mut sig = ed_sign(&kp, b"y").to_bytes();
        sig[63] |= 0xf0; // push S far above L
        assert_eq!(
            ed_verify(&kp.public(), b"y", &Signature::from_bytes(sig)),
            Err(VerifyError::MalformedPoint)
        );
    }
}
