//! Statistical SRAM-PUF model.
//!
//! A device is a fixed reference start-up pattern `R` derived from its
//! identity seed; every readout returns `R` with i.i.d. symmetric bit-flip
//! noise. Readout noise doubles as the entropy source for secret
//! generation, mirroring how a physical device seeds its PRNG from the
//! same SRAM.

use crate::bits::BitString;
use crate::symmetric::{sha256, DrbgState};

/// Default PUF size: 32 blocks of 384 code bits (see the fuzzy extractor's
/// default parameters).
pub const DEFAULT_SIZE_BITS: usize = 12288;

pub const MIN_SIZE_BITS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PufError {
    /// Size not a byte multiple or below the minimum.
    BadSize { requested: usize },
    /// Noise probability outside [0, 0.5).
    BadProbability,
    /// All readout-pair XOR blocks were zero; there is no noise to harvest
    /// and the caller must supply external randomness.
    InsufficientEntropy,
    /// Entropy extraction needs an even readout count of at least two.
    BadReadoutCount { requested: usize },
}

impl std::fmt::Display for PufError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PufError::BadSize { requested } => write!(
                f,
                "PUF size must be a multiple of 8 and at least {MIN_SIZE_BITS} bits, got {requested}"
            ),
            PufError::BadProbability => write!(f, "flip probability must lie in [0, 0.5)"),
            PufError::InsufficientEntropy => {
                write!(f, "readout noise produced no entropy (flip probability is zero?)")
            }
            PufError::BadReadoutCount { requested } => {
                write!(f, "entropy extraction needs an even readout count >= 2, got {requested}")
            }
        }
    }
}

impl std::error::Error for PufError {}

/// One readout: the reference pattern or a noisy copy of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PufResponse(pub BitString);

impl PufResponse {
    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len_bits(&self) -> usize {
        self.0.len_bits()
    }
}

/// Per-readout noise: each bit flips independently with `flip_probability`.
#[derive(Debug, Clone, Copy)]
pub struct NoiseModel {
    flip_probability: f64,
    noise_seed: u64,
}

impl NoiseModel {
    pub fn new(flip_probability: f64, noise_seed: u64) -> Result<Self, PufError> {
        if !(0.0..0.5).contains(&flip_probability) {
            return Err(PufError::BadProbability);
        }
        Ok(Self { flip_probability, noise_seed })
    }

    pub fn flip_probability(&self) -> f64 {
        self.flip_probability
    }

    pub fn noise_seed(&self) -> u64 {
        self.noise_seed
    }

    /// Same noise level, different stream; used for the fresh readouts of
    /// entropy extraction.
    fn derived(&self, index: u64) -> NoiseModel {
        let mut material = Vec::with_capacity(20);
        material.extend_from_slice(b"puf-noise-sub");
        material.extend_from_slice(&self.noise_seed.to_be_bytes());
        material.extend_from_slice(&index.to_be_bytes());
        let digest = sha256(&material);
        let sub_seed = u64::from_be_bytes(digest[..8].try_into().unwrap());
        NoiseModel { flip_probability: self.flip_probability, noise_seed: sub_seed }
    }
}

/// A simulated SRAM block. The reference pattern is a pure function of
/// `(device_seed, size_bits)` and never changes after construction.
#[derive(Debug, Clone)]
pub struct PufDevice {
    device_seed: u64,
    size_bits: usize,
    reference: BitString,
}

impl PufDevice {
    pub fn new(device_seed: u64, size_bits: usize) -> Result<Self, PufError> {
        if size_bits % 8 != 0 || size_bits < MIN_SIZE_BITS {
            return Err(PufError::BadSize { requested: size_bits });
        }
        let mut stream = DrbgState::from_tagged_seed(b"puf-reference", device_seed);
        let reference = BitString::from_bytes(stream.next_bytes(size_bits / 8));
        Ok(Self { device_seed, size_bits, reference })
    }

    pub fn with_default_size(device_seed: u64) -> Self {
        Self::new(device_seed, DEFAULT_SIZE_BITS).expect("default size is valid")
    }

    pub fn device_seed(&self) -> u64 {
        self.device_seed
    }

    pub fn size_bits(&self) -> usize {
        self.size_bits
    }

    pub fn reference(&self) -> &BitString {
        &self.reference
    }

    /// Noisy readout: R' = R xor e with e ~ Bernoulli(p) per bit, drawn
    /// from the noise model's seed. Never mutates the reference.
    pub fn readout(&self, noise: &NoiseModel) -> PufResponse {
        let mut out = self.reference.clone();
        if noise.flip_probability == 0.0 {
            return PufResponse(out);
        }
        // 16-bit threshold sampling: quantization error below 2^-16.
        let threshold = (noise.flip_probability * 65536.0).round() as u32;
        let mut stream = DrbgState::from_tagged_seed(b"puf-noise", noise.noise_seed);
        let samples = stream.next_bytes(self.size_bits * 2);
        for i in 0..self.size_bits {
            let sample = u16::from_be_bytes([samples[2 * i], samples[2 * i + 1]]) as u32;
            if sample < threshold {
                out.flip_bit(i);
            }
        }
        PufResponse(out)
    }

    /// Harvest a 32-byte seed from readout noise: XOR consecutive pairs of
    /// fresh readouts and hash the concatenation. With zero noise every
    /// pair cancels and there is nothing to harvest.
    pub fn extract_entropy_seed(
        &self,
        noise: &NoiseModel,
        readout_count: usize,
    ) -> Result<[u8; 32], PufError> {
        if readout_count < 2 || readout_count % 2 != 0 {
            return Err(PufError::BadReadoutCount { requested: readout_count });
        }
        let mut material = Vec::with_capacity(self.size_bits / 8 * readout_count / 2);
        let mut any_nonzero = false;
        for pair in 0..readout_count / 2 {
            let first = self.readout(&noise.derived(2 * pair as u64));
            let second = self.readout(&noise.derived(2 * pair as u64 + 1));
            let diff = first.0.xor(&second.0);
            any_nonzero |= !diff.is_zero();
            material.extend_from_slice(diff.as_bytes());
        }
        if !any_nonzero {
            return Err(PufError::InsufficientEntropy);
        }
        Ok(sha256(&material))
    }
}
