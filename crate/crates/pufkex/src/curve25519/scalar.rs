//! Scalar arithmetic modulo the Ed25519 group order
//! L = 2^252 + 27742317777372353535851937790883648493.
//!
//! Values are byte-coefficient vectors reduced with the classic
//! schoolbook routine; inputs stay far below i64 range (at most 32
//! products of byte values per coefficient).

/// L in little-endian bytes.
pub const L_BYTES: [u8; 32] = [
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7, 0xa2, 0xde, 0xf9, 0xde,
    0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x10,
];

const L: [i64; 32] = [
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7, 0xa2, 0xde, 0xf9, 0xde,
    0x14, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0x10,
];

fn mod_l(x: &mut [i64; 64]) -> [u8; 32] {
    for i in (32..64).rev() {
        let mut carry: i64 = 0;
        for j in (i - 32)..(i - 12) {
            x[j] += carry - 16 * x[i] * L[j - (i - 32)];
            carry = (x[j] + 128) >> 8;
            x[j] -= carry << 8;
        }
        x[i - 12] += carry;
        x[i] = 0;
    }
    let mut carry: i64 = 0;
    for j in 0..32 {
        x[j] += carry - (x[31] >> 4) * L[j];
        carry = x[j] >> 8;
        x[j] &= 255;
    }
    for j in 0..32 {
        x[j] -= carry * L[j];
    }
    let mut out = [0u8; 32];
    for i in 0..32 {
        x[i + 1] += x[i] >> 8;
        out[i] = (x[i] & 255) as u8;
    }
    out
}

/// Reduce a 512-bit little-endian value modulo L.
pub fn reduce_wide(input: &[u8; 64]) -> [u8; 32] {
    let mut x = [0i64; 64];
    for (xi, &b) in x.iter_mut().zip(input.iter()) {
        *xi = b as i64;
    }
    mod_l(&mut x)
}

/// (a * b + c) mod L for 256-bit little-endian inputs.
pub fn mul_add(a: &[u8; 32], b: &[u8; 32], c: &[u8; 32]) -> [u8; 32] {
    let mut x = [0i64; 64];
    for i in 0..32 {
        x[i] = c[i] as i64;
    }
    for i in 0..32 {
        for j in 0..32 {
            x[i + j] += a[i] as i64 * b[j] as i64;
        }
    }
    mod_l(&mut x)
}

/// True when the 256-bit little-endian value is below L; RFC 8032 requires
/// rejecting signatures whose S component is not.
pub fn is_canonical(s: &[u8; 32]) -> bool {
    for i in (0..32).rev() {
        match s[i].cmp(&L_BYTES[i]) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false // equal to L
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn l_big() -> BigUint {
        BigUint::from_bytes_le(&L_BYTES)
    }

    #[test]
    fn reduce_matches_bigint_oracle() {
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"scalar-red", 6);
        for _ in 0..500 {
            let wide: [u8; 64] = rng.next_array::<64>();
            let got = BigUint::from_bytes_le(&reduce_wide(&wide));
            let expect = BigUint::from_bytes_le(&wide) % l_big();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn mul_add_matches_bigint_oracle() {
        let mut rng = crate::symmetric::DrbgState::from_tagged_seed(b"scalar-muladd", 7);
        for _ in 0..500 {
            let a = rng.next_array::<32>();
            let b = rng.next_array::<32>();
            let c = rng.next_array::<32>();
            let got = BigUint::from_bytes_le(&mul_add(&a, &b, &c));
            let expect = (BigUint::from_bytes_le(&a) * BigUint::from_bytes_le(&b)
                + BigUint::from_bytes_le(&c))
                % l_big();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn canonicity_boundaries() {
        assert!(!is_canonical(&L_BYTES));
        let mut below = L_BYTES;
        below[0] -= 1;
        assert!(is_canonical(&below));
        let mut above = L_BYTES;
        above[0] += 1;
        assert!(!is_canonical(&above));
        assert!(is_canonical(&[0u8; 32]));
        assert!(!is_canonical(&[0xff; 32]));
    }
}
