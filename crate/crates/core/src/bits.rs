use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An explicit-length bit sequence. Bytes pack MSB first; pad bits are zero
/// and never counted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitStream {
    bits: Vec<bool>,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self::from_bytes_with_len(bytes, bytes.len() * 8)
    }

    /// Takes the first `len` bits of `bytes`. `len` must not exceed `8 * bytes.len()`.
    pub fn from_bytes_with_len(bytes: &[u8], len: usize) -> Self {
        assert!(len <= bytes.len() * 8, "{len} bits requested from {} bytes", bytes.len());
        let bits = (0..len).map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0).collect();
        Self { bits }
    }

    /// Seeded pseudorandom payload; the same seed always yields the same prefix.
    pub fn random(len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self {
            bits: (0..len).map(|_| rng.gen::<bool>()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitStream) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, _) in self.bits.iter().enumerate().filter(|(_, &b)| b) {
            out[i / 8] |= 0x80 >> (i % 8);
        }
        out
    }

    /// CRC-32 (IEEE) over the packed bytes.
    pub fn crc32(&self) -> u32 {
        crc32fast::hash(&self.to_bytes())
    }
}

impl FromIterator<bool> for BitStream {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}
