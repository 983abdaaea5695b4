//! Arithmetic in GF(2^255 - 19).
//!
//! Elements are held in five 51-bit limbs (radix 2^51) so 64-bit products
//! fit in `u128` without intermediate reduction. The canonical external
//! encoding is 32 bytes little-endian with the value fully reduced below
//! p; [`FieldElement::to_bytes`] always emits that form.

const MASK_51: u64 = (1 << 51) - 1;

/// Residue modulo p = 2^255 - 19.
#[derive(Clone, Copy)]
pub struct FieldElement(pub(crate) [u64; 5]);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement([0; 5]);
    pub const ONE: FieldElement = FieldElement([1, 0, 0, 0, 0]);

    /// Decode 32 little-endian bytes. Bit 255 is ignored, matching the
    /// point-encoding convention; values in [p, 2^255) are accepted and
    /// normalize on re-encoding.
    pub fn from_bytes(bytes: &[u8; 32]) -> FieldElement {
        let load8 = |s: &[u8]| -> u64 {
            u64::from_le_bytes([s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7]])
        };
        FieldElement([
            load8(&bytes[0..8]) & MASK_51,
            (load8(&bytes[6..14]) >> 3) & MASK_51,
            (load8(&bytes[12..20]) >> 6) & MASK_51,
            (load8(&bytes[19..27]) >> 1) & MASK_51,
            (load8(&bytes[24..32]) >> 12) & MASK_51,
        ])
    }

    /// Canonical encoding: 32 bytes little-endian, value < p.
    pub fn to_bytes(self) -> [u8; 32] {
        let mut l = self.reduce_weak().0;

        // Subtract p exactly when the value is >= p: q is 1 iff adding 19
        // propagates a carry out of the top limb.
        let mut q = (l[0].wrapping_add(19)) >> 51;
        q = (l[1] + q) >> 51;
        q = (l[2] + q) >> 51;
        q = (l[3] + q) >> 51;
        q = (l[4] + q) >> 51;

        l[0] = l[0].wrapping_add(19 * q);
        l[1] += l[0] >> 51;
        l[0] &= MASK_51;
        l[2] += l[1] >> 51;
        l[1] &= MASK_51;
        l[3] += l[2] >> 51;
        l[2] &= MASK_51;
        l[4] += l[3] >> 51;
        l[3] &= MASK_51;
        l[4] &= MASK_51;

        let mut out = [0u8; 32];
        let mut acc: u128 = 0;
        let mut acc_bits = 0u32;
        let mut idx = 0;
        for limb in l {
            acc |= (limb as u128) << acc_bits;
            acc_bits += 51;
            while acc_bits >= 8 {
                out[idx] = acc as u8;
                acc >>= 8;
                acc_bits -= 8;
                idx += 1;
            }
        }
        debug_assert_eq!(idx, 31);
        out[31] = acc as u8;
        out
    }

    /// One carry pass; brings limbs below 2^52 for any input produced by
    /// the arithmetic here.
    fn reduce_weak(self) -> FieldElement {
        let mut l = self.0;
        let c0 = l[0] >> 51;
        l[0] &= MASK_51;
        let c1 = (l[1] + c0) >> 51;
        l[1] = (l[1] + c0) & MASK_51;
        let c2 = (l[2] + c1) >> 51;
        l[2] = (l[2] + c1) & MASK_51;
        let c3 = (l[3] + c2) >> 51;
        l[3] = (l[3] + c2) & MASK_51;
        let c4 = (l[4] + c3) >> 51;
        l[4] = (l[4] + c3) & MASK_51;
        l[0] += c4 * 19;
        FieldElement(l)
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        let a = self.0;
        let b = rhs.0;
        FieldElement([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]])
            .reduce_weak()
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        // Offset by 16p so limb subtraction cannot underflow.
        const P16: [u64; 5] = [
            36028797018963664, // 16 * (2^51 - 19)
            36028797018963952, // 16 * (2^51 - 1)
            36028797018963952,
            36028797018963952,
            36028797018963952,
        ];
        let a = self.0;
        let b = rhs.0;
        FieldElement([
            a[0] + P16[0] - b[0],
            a[1] + P16[1] - b[1],
            a[2] + P16[2] - b[2],
            a[3] + P16[3] - b[3],
            a[4] + P16[4] - b[4],
        ])
        .reduce_weak()
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::ZERO.sub(self)
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        let a = self.0;
        let b = rhs.0;
        let m = |x: u64, y: u64| x as u128 * y as u128;

        // Schoolbook product with 2^255 = 19 folded in.
        let b1_19 = b[1] * 19;
        let b2_19 = b[2] * 19;
        let b3_19 = b[3] * 19;
        let b4_19 = b[4] * 19;

        let c0 = m(a[0], b[0]) + m(a[4], b1_19) + m(a[3], b2_19) + m(a[2], b3_19) + m(a[1], b4_19);
        let c1 = m(a[1], b[0]) + m(a[0], b[1]) + m(a[4], b2_19) + m(a[3], b3_19) + m(a[2], b4_19);
        let c2 = m(a[2], b[0]) + m(a[1], b[1]) + m(a[0], b[2]) + m(a[4], b3_19) + m(a[3], b4_19);
        let c3 = m(a[3], b[0]) + m(a[2], b[1]) + m(a[1], b[2]) + m(a[0], b[3]) + m(a[4], b4_19);
        let c4 = m(a[4], b[0]) + m(a[3], b[1]) + m(a[2], b[2]) + m(a[1], b[3]) + m(a[0], b[4]);

        FieldElement::carry_wide([c0, c1, c2, c3, c4])
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    fn carry_wide(mut c: [u128; 5]) -> FieldElement {
        let mut out = [0u64; 5];
        c[1] += (c[0] >> 51) as u128;
        out[0] = c[0] as u64 & MASK_51;
        c[2] += (c[1] >> 51) as u128;
        out[1] = c[1] as u64 & MASK_51;
        c[3] += (c[2] >> 51) as u128;
        out[2] = c[2] as u64 & MASK_51;
        c[4] += (c[3] >> 51) as u128;
        out[3] = c[3] as u64 & MASK_51;
        let carry = (c[4] >> 51) as u64;
        out[4] = c[4] as u64 & MASK_51;
        out[0] += carry * 19;
        FieldElement(out).reduce_weak()
    }

    /// Repeated squaring: self^(2^k).
    pub(crate) fn pow2k(&self, k: u32) -> FieldElement {
        let mut z = *self;
        for _ in 0..k {
            z = z.square();
        }
        z
    }

    /// z^(2^250 - 1); shared prefix of the inversion and square-root chains.
    fn pow_2_250_minus_1(&self) -> (FieldElement, FieldElement) {
        let z = *self;
        let z2 = z.square();
        let z9 = z2.pow2k(2).mul(&z); // z^9
        let z11 = z9.mul(&z2);
        let z_2_5 = z11.square().mul(&z9); // z^(2^5 - 1)
        let z_2_10 = z_2_5.pow2k(5).mul(&z_2_5);
        let z_2_20 = z_2_10.pow2k(10).mul(&z_2_10);
        let z_2_40 = z_2_20.pow2k(20).mul(&z_2_20);
        let z_2_50 = z_2_40.pow2k(10).mul(&z_2_10);
        let z_2_100 = z_2_50.pow2k(50).mul(&z_2_50);
        let z_2_200 = z_2_100.pow2k(100).mul(&z_2_100);
        let z_2_250 = z_2_200.pow2k(50).mul(&z_2_50);
        (z_2_250, z11)
    }

    /// Multiplicative inverse via Fermat: z^(p-2). Returns zero for zero.
    pub fn invert(&self) -> FieldElement {
        let (z_2_250, z11) = self.pow_2_250_minus_1();
        // p - 2 = (2^250 - 1) * 2^5 + 11
        z_2_250.pow2k(5).mul(&z11)
    }

    /// z^((p-5)/8) = z^(2^252 - 3); used for square roots.
    pub(crate) fn pow_p58(&self) -> FieldElement {
        let (z_2_250, _) = self.pow_2_250_minus_1();
        // 2^252 - 3 = (2^250 - 1) * 4 + 1
        z_2_250.pow2k(2).mul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.to_bytes() == [0u8; 32]
    }

    /// Low bit of the canonical encoding; the "sign" used by point
    /// compression.
    pub fn is_odd(&self) -> bool {
        self.to_bytes()[0] & 1 == 1
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.to_bytes() == other.to_bytes()
    }
}

impl Eq for FieldElement {}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldElement({})", hex::encode(self.to_bytes()))
    }
}
