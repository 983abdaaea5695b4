//! Fixed-length bit vectors backed by byte buffers.
//!
//! PUF responses, helper data and codewords are all whole-byte bit strings;
//! bit `i` lives at `bytes[i / 8]`, LSB first. The same convention is used
//! everywhere in the crate.

/// A bit string whose length is a multiple of 8.
#[derive(Clone, PartialEq, Eq)]
pub struct BitString {
    bytes: Vec<u8>,
}

impl BitString {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self { bytes }
    }

    /// All-zero string of `bit_len` bits. `bit_len` must be a multiple of 8.
    pub fn zero(bit_len: usize) -> Self {
        assert!(bit_len % 8 == 0, "bit length must be byte-aligned");
        Self { bytes: vec![0; bit_len / 8] }
    }

    pub fn len_bits(&self) -> usize {
        self.bytes.len() * 8
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn bit(&self, i: usize) -> u8 {
        (self.bytes[i / 8] >> (i % 8)) & 1
    }

    pub fn set_bit(&mut self, i: usize, v: u8) {
        let mask = 1u8 << (i % 8);
        if v & 1 == 1 {
            self.bytes[i / 8] |= mask;
        } else {
            self.bytes[i / 8] &= !mask;
        }
    }

    pub fn flip_bit(&mut self, i: usize) {
        self.bytes[i / 8] ^= 1 << (i % 8);
    }

    /// Bitwise XOR. Panics if lengths differ; callers validate sizes first.
    pub fn xor(&self, other: &BitString) -> BitString {
        assert_eq!(self.bytes.len(), other.bytes.len(), "length mismatch");
        let bytes = self
            .bytes
            .iter()
            .zip(&other.bytes)
            .map(|(a, b)| a ^ b)
            .collect();
        BitString { bytes }
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        assert_eq!(self.bytes.len(), other.bytes.len(), "length mismatch");
        self.bytes
            .iter()
            .zip(&other.bytes)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bytes.iter().all(|&b| b == 0)
    }
}

impl std::fmt::Debug for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitString({} bits, {})", self.len_bits(), hex::encode(&self.bytes[..self.bytes.len().min(8)]))
    }
}
