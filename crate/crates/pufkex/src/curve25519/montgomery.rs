//! X25519 scalar multiplication (RFC 7748).

use super::field::FieldElement;

/// Encoding of the base point u = 9.
pub const BASE_POINT: [u8; 32] = [
    9, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
];

/// The function output was the all-zero string: the peer value was a
/// low-order point and contributed nothing to the shared secret. Protocol
/// code must abort on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowOrderResult;

impl std::fmt::Display for LowOrderResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "X25519 produced an all-zero shared secret (low-order input)")
    }
}

impl std::error::Error for LowOrderResult {}

/// RFC 7748 scalar clamping.
pub fn clamp_scalar(scalar: &[u8; 32]) -> [u8; 32] {
    let mut k = *scalar;
    k[0] &= 248;
    k[31] &= 127;
    k[31] |= 64;
    k
}

fn cswap(swap: u64, a: &mut FieldElement, b: &mut FieldElement) {
    let mask = 0u64.wrapping_sub(swap);
    for i in 0..5 {
        let t = mask & (a.0[i] ^ b.0[i]);
        a.0[i] ^= t;
        b.0[i] ^= t;
    }
}

/// Raw ladder output, zero included. The scalar is clamped and the
/// u-coordinate masked to 255 bits internally.
pub fn x25519_unchecked(scalar: &[u8; 32], u: &[u8; 32]) -> [u8; 32] {
    let k = clamp_scalar(scalar);
    let x1 = FieldElement::from_bytes(u); // from_bytes masks bit 255

    let mut x2 = FieldElement::ONE;
    let mut z2 = FieldElement::ZERO;
    let mut x3 = x1;
    let mut z3 = FieldElement::ONE;
    let a24 = FieldElement([121665, 0, 0, 0, 0]);

    let mut swap = 0u64;
    for t in (0..255).rev() {
        let k_t = ((k[t / 8] >> (t % 8)) & 1) as u64;
        swap ^= k_t;
        cswap(swap, &mut x2, &mut x3);
        cswap(swap, &mut z2, &mut z3);
        swap = k_t;

        let a = x2.add(&z2);
        let aa = a.square();
        let b = x2.sub(&z2);
        let bb = b.square();
        let e = aa.sub(&bb);
        let c = x3.add(&z3);
        let d = x3.sub(&z3);
        let da = d.mul(&a);
        let cb = c.mul(&b);
        x3 = da.add(&cb).square();
        z3 = x1.mul(&da.sub(&cb).square());
        x2 = aa.mul(&bb);
        z2 = e.mul(&aa.add(&a24.mul(&e)));
    }
    cswap(swap, &mut x2, &mut x3);
    cswap(swap, &mut z2, &mut z3);

    x2.mul(&z2.invert()).to_bytes()
}

/// X25519 with the contributory-behavior check: an all-zero result is an
/// error.
pub fn x25519(scalar: &[u8; 32], u: &[u8; 32]) -> Result<[u8; 32], LowOrderResult> {
    let out = x25519_unchecked(scalar, u);
    if out == [0u8; 32] {
        Err(LowOrderResult)
    } else {
        Ok(out)
    }
}

/// Public key for a scalar: X25519 against the base point. Never low-order.
pub fn x25519_base(scalar: &[u8; 32]) -> [u8; 32] {
    x25519_unchecked(scalar, &BASE_POINT)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(hex_str: &str) -> [u8; 32] {
        hex::decode(hex_str).unwrap().try_into().unwrap()
    }

    #[test]
    fn rfc7748_section_5_2_vector_1() {
        let scalar = arr("a546e36bf0527c9d3b16154b82465edd62144c0ac1fc5a18506a2244ba449ac4");
        let u = arr("e6db6867583030db3594c1a424b15f7c726624ec26b3353b10a903a6d0ab1c4c");
        assert_eq!(
            hex::encode(x25519(&scalar, &u).unwrap()),
            "c3da55379de9c6908e94ea4df28d084f32eccf03491c71f754b4075577a28552"
        );
    }

    #[test]
    fn rfc7748_section_5_2_vector_2() {
        let scalar = arr("4b66e9d4d1b4673c5ad22691957d6af5c11b6421e0ea01d42ca4169e7918ba0d");
        let u = arr("e5210f12786811d3f4b7959d0538ae2c31dbe7106fc03c3efc4cd549c715a493");
        assert_eq!(
            hex::encode(x25519(&scalar, &u).unwrap()),
            "95cbde9476e8907d7aade45cb4b873f88b595a68799fa152e6f8f7647aac7957"
        );
    }

    #[test]
    fn rfc7748_section_6_1_diffie_hellman() {
        let a = arr("77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a");
        let b = arr("5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb");
        let a_pub = x25519_base(&a);
        let b_pub = x25519_base(&b);
        assert_eq!(
            hex::encode(a_pub),
            "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a"
        );
        assert_eq!(
            hex::encode(b_pub),
            "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f"
        );
        let k1 = x25519(&a, &b_pub).unwrap();
        let k2 = x25519(&b, &a_pub).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(
            hex::encode(k1),
            "4a5d9d5ba4ce2de1728e3bf480350f25e07e21c947d19e3376f09b3c1e161742"
        );
    }

    #[test]
    fn iterated_vector_one_round() {
        let mut k = BASE_POINT;
        let mut u = BASE_POINT;
        let out = x25519_unchecked(&k, &u);
        u = k;
        k = out;
        let _ = u;
        assert_eq!(
            hex::encode(k),
            "422c8e7a6227d7bca1350b3e2bb7279f7897b87bb6854b783c60e80311ae3079"
        );
    }

    #[test]
    fn low_order_input_rejected() {
        let scalar = [0x77u8; 32];
        assert_eq!(x25519(&scalar, &[0u8; 32]), Err(LowOrderResult));
        // u = 1 is also a low-order point on the curve
        let mut one = [0u8; 32];
        one[0] = 1;
        assert_eq!(x25519(&scalar, &one), Err(LowOrderResult));
    }

    #[test]
    fn dh_symmetry_random_pairs() {
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"dh-sym", 4);
        for _ in 0..100 {
            let a = rng.next_array::<32>();
            let b = rng.next_array::<32>();
            let shared_ab = x25519(&a, &x25519_base(&b)).unwrap();
            let shared_ba = x25519(&b, &x25519_base(&a)).unwrap();
            assert_eq!(shared_ab, shared_ba);
        }
    }

    #[test]
    fn distinct_scalars_distinct_publics() {
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"pk-collide", 5);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..1000 {
            let pk = x25519_base(&rng.next_array::<32>());
            assert!(seen.insert(pk), "public key collision");
        }
    }

    #[test]
    fn deterministic() {
        let s = [7u8; 32];
        assert_eq!(x25519_base(&s), x25519_base(&s));
    }

    #[test]
    fn clamping_fixes_required_bits() {
        let c = clamp_scalar(&[0xff; 32]);
        assert_eq!(c[0] & 7, 0);
        assert_eq!(c[31] & 0x80, 0);
        assert_eq!(c[31] & 0x40, 0x40);
    }
}
