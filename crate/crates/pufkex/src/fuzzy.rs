//! Code-offset fuzzy extractor.
//!
//! Enrollment hides an encoded secret under the PUF reference pattern
//! (`HD = R xor Encode(S)`); reconstruction XORs a noisy readout with the
//! helper data and decodes (`S = Decode(R' xor HD)`). The code is an inner
//! bit-repetition code concatenated with a first-order Reed-Muller code
//! RM(1, m), decoded by maximum likelihood over the fast Hadamard
//! transform.
//!
//! With the defaults (repetition 3, RM(1,7), 32 blocks) a 15% raw bit
//! error rate is majority-voted down to about 6% per code bit, and RM(1,7)
//! then corrects up to 31 of 128 bits per block, for a residual failure
//! rate around 1e-10 per reconstruction.

use crate::bits::BitString;
use crate::puf::PufResponse;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzyError {
    /// Input length does not match `blocks * repetition * 2^m`.
    SizeMismatch { expected_bits: usize, got_bits: usize },
    /// The two best Reed-Muller correlations tied; the block is
    /// undecodable.
    DecodeAmbiguous { block: usize },
    /// Parameters violate the code's structural constraints.
    BadParams(&'static str),
}

impl std::fmt::Display for FuzzyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FuzzyError::SizeMismatch { expected_bits, got_bits } => {
                write!(f, "size mismatch: expected {expected_bits} bits, got {got_bits}")
            }
            FuzzyError::DecodeAmbiguous { block } => {
                write!(f, "ambiguous decoding in block {block}")
            }
            FuzzyError::BadParams(why) => write!(f, "bad code parameters: {why}"),
        }
    }
}

impl std::error::Error for FuzzyError {}

/// The 32-byte secret bound to a PUF at enrollment. Clamped copies of it
/// act as the device's X25519 scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct SecretKey(pub [u8; 32]);

impl SecretKey {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl std::fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // deliberately not printing the key material
        write!(f, "SecretKey(..)")
    }
}

/// Public helper data; same length as the PUF it was enrolled against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperData(pub BitString);

impl HelperData {
    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self(BitString::from_bytes(bytes))
    }

    pub fn len_bits(&self) -> usize {
        self.0.len_bits()
    }
}

/// Concatenated-code parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    /// Reed-Muller order parameter m of RM(1, m): message m+1 bits,
    /// codeword 2^m bits.
    pub rm_order: u32,
    /// Bit-repetition factor; odd so majority votes cannot tie.
    pub repetition: usize,
    /// Number of RM blocks; `blocks * (m+1)` must equal 256 secret bits.
    pub blocks: usize,
}

impl CodeParams {
    pub fn new(rm_order: u32, repetition: usize, blocks: usize) -> Result<Self, FuzzyError> {
        if repetition % 2 == 0 || repetition == 0 {
            return Err(FuzzyError::BadParams("repetition must be odd"));
        }
        let msg_bits = rm_order as usize + 1;
        if 256 % msg_bits != 0 {
            return Err(FuzzyError::BadParams("m+1 must divide 256"));
        }
        if blocks * msg_bits != 256 {
            return Err(FuzzyError::BadParams("blocks * (m+1) must equal 256"));
        }
        if rm_order > 15 {
            return Err(FuzzyError::BadParams("rm order too large"));
        }
        Ok(Self { rm_order, repetition, blocks })
    }

    /// Codeword bits per block.
    pub fn block_bits(&self) -> usize {
        self.repetition << self.rm_order
    }

    /// Total code (and PUF) length in bits.
    pub fn total_bits(&self) -> usize {
        self.blocks * self.block_bits()
    }

    pub fn message_bits(&self) -> usize {
        self.rm_order as usize + 1
    }
}

impl Default for CodeParams {
    /// RM(1,7) x repetition-3, 32 blocks: 12288 code bits for a 256-bit
    /// secret.
    fn default() -> Self {
        Self { rm_order: 7, repetition: 3, blocks: 32 }
    }
}

/// Encode an (m+1)-bit message into a 2^m-bit RM(1, m) codeword.
///
/// Message bit 0 is the affine constant; bits 1..=m are the linear
/// coefficients. Codeword bit j equals `m0 xor <(m1..mm), binary(j)>`.
pub fn rm_encode(m: u32, msg: u32) -> BitString {
    debug_assert!(m >= 3 && m <= 15, "codeword must be byte-aligned");
    let n = 1usize << m;
    let constant = msg & 1;
    let coeffs = msg >> 1;
    let mut out = BitString::zero(n);
    for j in 0..n {
        let bit = constant ^ ((coeffs & j as u32).count_ones() & 1);
        if bit == 1 {
            out.set_bit(j, 1);
        }
    }
    out
}

/// Maximum-likelihood RM(1, m) decoding via the fast Hadamard transform.
///
/// Codeword bits map to +1/-1 scores; the transform yields the correlation
/// with every linear function, the peak index gives the coefficients and
/// its sign the constant bit. A tie between the two best magnitudes is
/// reported rather than silently resolved.
pub fn rm_decode(m: u32, word: &BitString) -> Result<u32, FuzzyError> {
    rm_decode_scores(m, word, 0)
}

fn rm_decode_scores(m: u32, word: &BitString, block: usize) -> Result<u32, FuzzyError> {
    let n = 1usize << m;
    debug_assert_eq!(word.len_bits(), n);
    let mut scores: Vec<i32> = (0..n)
        .map(|j| if word.bit(j) == 0 { 1 } else { -1 })
        .collect();
    hadamard_in_place(&mut scores);

    let mut best_idx = 0usize;
    let mut best_mag = -1i32;
    let mut second_mag = -1i32;
    for (i, &v) in scores.iter().enumerate() {
        let mag = v.abs();
        if mag > best_mag {
            second_mag = best_mag;
            best_mag = mag;
            best_idx = i;
        } else if mag > second_mag {
            second_mag = mag;
        }
    }
    if best_mag == second_mag {
        return Err(FuzzyError::DecodeAmbiguous { block });
    }
    let constant = u32::from(scores[best_idx] < 0);
    Ok(((best_idx as u32) << 1) | constant)
}

/// In-place Walsh-Hadamard butterfly; length must be a power of two.
fn hadamard_in_place(v: &mut [i32]) {
    let n = v.len();
    let mut len = 1;
    while len < n {
        let mut i = 0;
        while i < n {
            for j in i..i + len {
                let a = v[j];
                let b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
            i += 2 * len;
        }
        len *= 2;
    }
}

/// Encode a 32-byte secret into the full concatenated code: per block, the
/// RM codeword of the block's message with each bit repeated
/// `params.repetition` times consecutively.
pub fn encode_secret(secret: &SecretKey, params: &CodeParams) -> BitString {
    let mut out = BitString::zero(params.total_bits());
    let msg_bits = params.message_bits();
    let mut pos = 0usize;
    for block in 0..params.blocks {
        let mut msg = 0u32;
        for b in 0..msg_bits {
            let bit_index = block * msg_bits + b;
            let bit = (secret.0[bit_index / 8] >> (bit_index % 8)) & 1;
            msg |= (bit as u32) << b;
        }
        let codeword = rm_encode(params.rm_order, msg);
        for j in 0..codeword.len_bits() {
            let bit = codeword.bit(j);
            for _ in 0..params.repetition {
                out.set_bit(pos, bit);
                pos += 1;
            }
        }
    }
    out
}

/// Enrollment: `HD = R xor Encode(S)`.
pub fn enroll(
    reference: &PufResponse,
    secret: &SecretKey,
    params: &CodeParams,
) -> Result<HelperData, FuzzyError> {
    if reference.len_bits() != params.total_bits() {
        return Err(FuzzyError::SizeMismatch {
            expected_bits: params.total_bits(),
            got_bits: reference.len_bits(),
        });
    }
    let code = encode_secret(secret, params);
    Ok(HelperData(reference.bits().xor(&code)))
}

/// Reconstruction: decode `R' xor HD` back to the secret. Majority-votes
/// the repetitions, then ML-decodes each RM block.
pub fn reconstruct(
    readout: &PufResponse,
    helper: &HelperData,
    params: &CodeParams,
) -> Result<SecretKey, FuzzyError> {
    if readout.len_bits() != params.total_bits() || helper.len_bits() != params.total_bits() {
        return Err(FuzzyError::SizeMismatch {
            expected_bits: params.total_bits(),
            got_bits: readout.len_bits().min(helper.len_bits()),
        });
    }
    let noisy_code = readout.bits().xor(helper.bits());
    let msg_bits = params.message_bits();
    let rm_len = 1usize << params.rm_order;
    let mut secret = [0u8; 32];

    let mut pos = 0usize;
    for block in 0..params.blocks {
        let mut word = BitString::zero(rm_len);
        for j in 0..rm_len {
            let mut ones = 0usize;
            for _ in 0..params.repetition {
                ones += noisy_code.bit(pos) as usize;
                pos += 1;
            }
            if ones * 2 > params.repetition {
                word.set_bit(j, 1);
            }
        }
        let msg = rm_decode_scores(params.rm_order, &word, block)?;
        for b in 0..msg_bits {
            let bit_index = block * msg_bits + b;
            if (msg >> b) & 1 == 1 {
                secret[bit_index / 8] |= 1 << (bit_index % 8);
            }
        }
    }
    Ok(SecretKey(secret))
}
