//! Device and server certificates: canonical TLV encoding, signing
//! preimages, issuance and verification.
//!
//! A certificate is the TTP's Ed25519 signature over a fixed-order
//! concatenation of its fields. The TLV container enforces one canonical
//! byte string per certificate (ascending tags, no duplicates, no
//! trailing data) so the signature binds exactly one encoding.

use crate::bits::BitString;
use crate::curve25519::{ed_sign, ed_verify, Signature, SigningKeyPair};
use crate::fuzzy::HelperData;

/// 48-bit device identifier (MAC-address sized).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeviceId(pub [u8; 6]);

impl DeviceId {
    pub fn as_bytes(&self) -> &[u8; 6] {
        &self.0
    }

    pub fn from_slice(s: &[u8]) -> Option<Self> {
        s.try_into().ok().map(DeviceId)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        Self::from_slice(&bytes)
    }
}

impl std::fmt::Debug for DeviceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DeviceId({})", self.to_hex())
    }
}

impl std::fmt::Display for DeviceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

/// Certificate kind discriminant; first byte of every signing preimage so
/// a device signature can never verify as a server one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Device,
    Server,
}

impl CertKind {
    pub fn byte(self) -> u8 {
        match self {
            CertKind::Device => 0x01,
            CertKind::Server => 0x02,
        }
    }

    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(CertKind::Device),
            0x02 => Some(CertKind::Server),
            _ => None,
        }
    }
}

/// `[ID, HD, PK_ID, sigma]`: binds a device identity and its helper data
/// to the PUF-derived public key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceCertificate {
    pub id: DeviceId,
    pub helper_data: HelperData,
    pub public_key: [u8; 32],
    pub signature: Signature,
}

/// `[ID, PK_server, sigma]`: binds the server identity to its static
/// agreement key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerCertificate {
    pub id: DeviceId,
    pub public_key: [u8; 32],
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertError {
    /// TLV structure violated: bad framing, duplicate/unknown/misordered
    /// tags, wrong field sizes or trailing bytes.
    Malformed(&'static str),
    /// Structurally valid but the signature does not verify.
    BadSignature,
}

impl std::fmt::Display for CertError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertError::Malformed(why) => write!(f, "malformed certificate: {why}"),
            CertError::BadSignature => write!(f, "certificate signature invalid"),
        }
    }
}

impl std::error::Error for CertError {}

/// Signing preimage: kind byte, then ID, helper data (device only) and
/// public key, concatenated without padding.
pub fn device_preimage(id: &DeviceId, helper_data: &HelperData, public_key: &[u8; 32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 6 + helper_data.bits().as_bytes().len() + 32);
    out.push(CertKind::Device.byte());
    out.extend_from_slice(id.as_bytes());
    out.extend_from_slice(helper_data.bits().as_bytes());
    out.extend_from_slice(public_key);
    out
}

pub fn server_preimage(id: &DeviceId, public_key: &[u8; 32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + 6 + 32);
    out.push(CertKind::Server.byte());
    out.extend_from_slice(id.as_bytes());
    out.extend_from_slice(public_key);
    out
}

/// Issue a device certificate under the TTP signing key.
pub fn issue_device_cert(
    ttp: &SigningKeyPair,
    id: DeviceId,
    helper_data: HelperData,
    public_key: [u8; 32],
) -> DeviceCertificate {
    let signature = ed_sign(ttp, &device_preimage(&id, &helper_data, &public_key));
    DeviceCertificate { id, helper_data, public_key, signature }
}

pub fn issue_server_cert(
    ttp: &SigningKeyPair,
    id: DeviceId,
    public_key: [u8; 32],
) -> ServerCertificate {
    let signature = ed_sign(ttp, &server_preimage(&id, &public_key));
    ServerCertificate { id, public_key, signature }
}

impl DeviceCertificate {
    pub fn verify(&self, ttp_public: &[u8; 32]) -> Result<(), CertError> {
        ed_verify(
            ttp_public,
            &device_preimage(&self.id, &self.helper_data, &self.public_key),
            &self.signature,
        )
        .map_err(|_| CertError::BadSignature)
    }
}

impl ServerCertificate {
    pub fn verify(&self, ttp_public: &[u8; 32]) -> Result<(), CertError> {
        ed_verify(
            ttp_public,
            &server_preimage(&self.id, &self.public_key),
            &self.signature,
        )
        .map_err(|_| CertError::BadSignature)
    }
}

// TLV tags, in canonical (ascending) record order.
const TAG_ID: u8 = 0x01;
const TAG_HD: u8 = 0x02;
const TAG_PK: u8 = 0x03;
const TAG_SIG: u8 = 0x04;
const TAG_KIND: u8 = 0x05;

fn put_record(out: &mut Vec<u8>, tag: u8, value: &[u8]) {
    out.push(tag);
    out.extend_from_slice(&(value.len() as u32).to_be_bytes());
    out.extend_from_slice(value);
}

/// Read all records, enforcing ascending tag order, known tags, no
/// duplicates and no trailing bytes.
fn read_records(bytes: &[u8]) -> Result<Vec<(u8, &[u8])>, CertError> {
    let mut records = Vec::new();
    let mut pos = 0usize;
    let mut last_tag = 0u8;
    while pos < bytes.len() {
        if bytes.len() - pos < 5 {
            return Err(CertError::Malformed("truncated record header"));
        }
        let tag = bytes[pos];
        if !(TAG_ID..=TAG_KIND).contains(&tag) {
            return Err(CertError::Malformed("unknown tag"));
        }
        if tag <= last_tag {
            return Err(CertError::Malformed("duplicate or misordered tag"));
        }
        let len = u32::from_be_bytes([bytes[pos + 1], bytes[pos + 2], bytes[pos + 3], bytes[pos + 4]])
            as usize;
        pos += 5;
        if bytes.len() - pos < len {
            return Err(CertError::Malformed("truncated record value"));
        }
        records.push((tag, &bytes[pos..pos + len]));
        pos += len;
        last_tag = tag;
    }
    Ok(records)
}

fn find<'a>(records: &[(u8, &'a [u8])], tag: u8) -> Result<&'a [u8], CertError> {
    records
        .iter()
        .find(|(t, _)| *t == tag)
        .map(|(_, v)| *v)
        .ok_or(CertError::Malformed("missing required tag"))
}

impl DeviceCertificate {
    pub fn encode(&self) -> Vec<u8> {
        let hd = self.helper_data.bits().as_bytes();
        let mut out = Vec::with_capacity(5 * 5 + 6 + hd.len() + 32 + 64 + 1);
        put_record(&mut out, TAG_ID, self.id.as_bytes());
        put_record(&mut out, TAG_HD, hd);
        put_record(&mut out, TAG_PK, &self.public_key);
        put_record(&mut out, TAG_SIG, &self.signature.to_bytes());
        put_record(&mut out, TAG_KIND, &[CertKind::Device.byte()]);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, CertError> {
        let records = read_records(bytes)?;
        if records.len() != 5 {
            return Err(CertError::Malformed("wrong record count"));
        }
        let kind = find(&records, TAG_KIND)?;
        if kind.len() != 1 || CertKind::from_byte(kind[0]) != Some(CertKind::Device) {
            return Err(CertError::Malformed("wrong certificate kind"));
        }
        let id = DeviceId::from_slice(find(&records, TAG_ID)?)
            .ok_or(CertError::Malformed("bad id length"))?;
        let hd_bytes = find(&records, TAG_HD)?;
        let pk: [u8; 32] = find(&records, TAG_PK)?
            .try_into()
            .map_err(|_| CertError::Malformed("bad public key length"))?;
        let sig: [u8; 64] = find(&records, TAG_SIG)?
            .try_into()
            .map_err(|_| CertError::Malformed("bad signature length"))?;
        Ok(DeviceCertificate {
            id,
            helper_data: HelperData(BitString::from_bytes(hd_bytes.to_vec())),
            public_key: pk,
            signature: Signature::from_bytes(sig),
        })
    }
}

impl ServerCertificate {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 * 5 + 6 + 32 + 64 + 1);
        put_record(&mut out, TAG_ID, self.id.as_bytes());
        put_record(&mut out, TAG_PK, &self.public_key);
        put_record(&mut out, TAG_SIG, &self.signature.to_bytes());
        put_record(&mut out, TAG_KIND, &[CertKind::Server.byte()]);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, CertError> {
        let records = read_records(bytes)?;
        if records.len() != 4 {
            return Err(CertError::Malformed("wrong record count"));
        }
        let kind = find(&records, TAG_KIND)?;
        if kind.len() != 1 || CertKind::from_byte(kind[0]) != Some(CertKind::Server) {
            return Err(CertError::Malformed("wrong certificate kind"));
        }
        let id = DeviceId::from_slice(find(&records, TAG_ID)?)
            .ok_or(CertError::Malformed("bad id length"))?;
        let pk: [u8; 32] = find(&records, TAG_PK)?
            .try_into()
            .map_err(|_| CertError::Malformed("bad public key length"))?;
        let sig: [u8; 64] = find(&records, TAG_SIG)?
            .try_into()
            .map_err(|_| CertError::Malformed("bad signature length"))?;
        Ok(ServerCertificate { id, public_key: pk, signature: Signature::from_bytes(sig) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::DrbgState;
    use proptest::prelude::*;

    fn ttp() -> SigningKeyPair {
        SigningKeyPair::from_seed([0x07; 32])
    }

    fn sample_device_cert(seed: u64) -> DeviceCertificate {
        let mut rng = DrbgState::from_tagged_seed(b"cert-sample", seed);
        let id = DeviceId(rng.next_array::<6>());
        let hd = HelperData(BitString::from_bytes(rng.next_bytes(1536)));
        let pk = rng.next_array::<32>();
        issue_device_cert(&ttp(), id, hd, pk)
    }

    #[test]
    fn preimage_lengths() {
        let hd = HelperData(BitString::zero(12288));
        let id = DeviceId([1, 2, 3, 4, 5, 6]);
        assert_eq!(device_preimage(&id, &hd, &[0; 32]).len(), 1575);
        assert_eq!(server_preimage(&id, &[0; 32]).len(), 39);
    }

    #[test]
    fn kind_byte_separates_domains() {
        // same fields, different kind byte: preimages must differ
        let id = DeviceId([9; 6]);
        let pk = [0xaa; 32];
        let hd = HelperData(BitString::zero(0));
        let dev = device_preimage(&id, &hd, &pk);
        let srv = server_preimage(&id, &pk);
        assert_eq!(dev.len(), srv.len());
        assert_ne!(dev, srv);
    }

    #[test]
    fn issue_verify_round_trip() {
        let cert = sample_device_cert(1);
        assert!(cert.verify(&ttp().public()).is_ok());
        let srv = issue_server_cert(&ttp(), DeviceId([2; 6]), [0x44; 32]);
        assert!(srv.verify(&ttp().public()).is_ok());
    }

    #[test]
    fn wrong_key_rejects() {
        let cert = sample_device_cert(2);
        let other = SigningKeyPair::from_seed([0x08; 32]);
        assert_eq!(cert.verify(&other.public()), Err(CertError::BadSignature));
    }

    #[test]
    fn issuance_is_deterministic() {
        let a = sample_device_cert(3);
        let b = sample_device_cert(3);
        assert_eq!(a.encode(), b.encode());
    }

    #[test]
    fn field_bit_flips_reject() {
        let cert = sample_device_cert(4);
        let pk_ttp = ttp().public();
        let mut rng = DrbgState::from_tagged_seed(b"cert-flip", 5);

        for _ in 0..20 {
            let mut c = cert.clone();
            match rng.next_u64() % 3 {
                0 => {
                    let i = (rng.next_u64() % 48) as usize;
                    let mut id = c.id.0;
                    id[i / 8] ^= 1 << (i % 8);
                    c.id = DeviceId(id);
                }
                1 => {
                    let i = (rng.next_u64() % c.helper_data.len_bits() as u64) as usize;
                    let mut bits = c.helper_data.0.clone();
                    bits.flip_bit(i);
                    c.helper_data = HelperData(bits);
                }
                _ => {
                    let i = (rng.next_u64() % 256) as usize;
                    c.public_key[i / 8] ^= 1 << (i % 8);
                }
            }
            assert_eq!(c.verify(&pk_ttp), Err(CertError::BadSignature));
        }
    }

    #[test]
    fn decode_rejects_structural_damage() {
        let cert = sample_device_cert(6);
        let enc = cert.encode();

        // truncation
        assert!(matches!(
            DeviceCertificate::decode(&enc[..enc.len() - 3]),
            Err(CertError::Malformed(_))
        ));
        // trailing byte
        let mut trailing = enc.clone();
        trailing.push(0);
        assert!(matches!(
            DeviceCertificate::decode(&trailing),
            Err(CertError::Malformed(_))
        ));
        // unknown tag
        let mut unknown = enc.clone();
        unknown[0] = 0x77;
        assert!(matches!(
            DeviceCertificate::decode(&unknown),
            Err(CertError::Malformed(_))
        ));
        // duplicate tag (rewrite the HD record's tag as another ID)
        let mut dup = enc.clone();
        dup[11] = TAG_ID; // offset of second record's tag: 5 + 6
        assert!(matches!(
            DeviceCertificate::decode(&dup),
            Err(CertError::Malformed(_))
        ));
    }

    #[test]
    fn decode_rejects_permuted_order() {
        // hand-build a server cert with PK before ID
        let cert = issue_server_cert(&ttp(), DeviceId([3; 6]), [0x55; 32]);
        let mut out = Vec::new();
        put_record(&mut out, TAG_PK, &cert.public_key);
        put_record(&mut out, TAG_ID, cert.id.as_bytes());
        put_record(&mut out, TAG_SIG, &cert.signature.to_bytes());
        put_record(&mut out, TAG_KIND, &[CertKind::Server.byte()]);
        assert!(matches!(
            ServerCertificate::decode(&out),
            Err(CertError::Malformed(_))
        ));
    }

    #[test]
    fn kind_confusion_rejected() {
        // a device cert cannot decode as a server cert
        let cert = sample_device_cert(7);
        assert!(ServerCertificate::decode(&cert.encode()).is_err());
        let srv = issue_server_cert(&ttp(), DeviceId([4; 6]), [0x66; 32]);
        assert!(DeviceCertificate::decode(&srv.encode()).is_err());
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(seed in any::<u64>()) {
            let cert = sample_device_cert(seed);
            let back = DeviceCertificate::decode(&cert.encode()).unwrap();
            prop_assert_eq!(back, cert);
        }
    }
}
