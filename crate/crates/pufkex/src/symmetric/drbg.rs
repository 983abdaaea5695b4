//! Deterministic byte-stream generator.
//!
//! One seeded key selects an unbounded pseudorandom byte stream; the state
//! tracks how far into the stream the caller has read. Blocks are derived
//! HKDF-expand style, one HMAC invocation per 32-byte block with the block
//! counter as the message, so the stream is position-addressable: splitting
//! a read into smaller reads yields the same bytes.

use super::hmac::hmac;
use super::sha256::sha256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrbgState {
    key: [u8; 32],
    /// Byte offset into the keyed stream. Strictly increasing; a state is
    /// never rewound, so no output position repeats.
    counter: u64,
}

const BLOCK: usize = 32;

impl DrbgState {
    pub fn new(key: [u8; 32]) -> Self {
        Self { key, counter: 0 }
    }

    /// Seed from a 64-bit value under a domain tag, so different subsystems
    /// seeded with the same integer get unrelated streams.
    pub fn from_tagged_seed(tag: &[u8], seed: u64) -> Self {
        let mut material = Vec::with_capacity(tag.len() + 8);
        material.extend_from_slice(tag);
        material.extend_from_slice(&seed.to_be_bytes());
        Self::new(sha256(&material))
    }

    pub fn position(&self) -> u64 {
        self.counter
    }

    /// Produce the next `n` stream bytes and the advanced state.
    pub fn bytes(mut self, n: usize) -> (Vec<u8>, DrbgState) {
        let mut out = Vec::with_capacity(n);
        let mut pos = self.counter;
        while out.len() < n {
            let block_index = pos / BLOCK as u64;
            let offset = (pos % BLOCK as u64) as usize;
            let block = hmac(&self.key, &block_index.to_be_bytes());
            let take = (BLOCK - offset).min(n - out.len());
            out.extend_from_slice(&block[offset..offset + take]);
            pos += take as u64;
        }
        self.counter = pos;
        (out, self)
    }

    /// Convenience for in-place use.
    pub fn next_bytes(&mut self, n: usize) -> Vec<u8> {
        let state = self.clone();
        let (out, next) = state.bytes(n);
        *self = next;
        out
    }

    pub fn next_u64(&mut self) -> u64 {
        let b = self.next_bytes(8);
        u64::from_be_bytes(b.try_into().unwrap())
    }

    pub fn next_array<const N: usize>(&mut self) -> [u8; N] {
        self.next_bytes(N).try_into().unwrap()
    }
}
