use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of random measurement outcomes.
///
/// Every random outcome consumes exactly one bit; 64 bits are drawn from the
/// underlying ChaCha8 stream at a time. All engines seeded with the same value
/// therefore produce the same outcome for the k-th random measurement.
#[derive(Clone, Debug)]
pub struct OutcomeRng {
    inner: ChaCha8Rng,
    buffer: u64,
    remaining: u32,
}

impl OutcomeRng {
    pub fn new(seed: u64) -> Self {
        OutcomeRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
            buffer: 0,
            remaining: 0,
        }
    }

    pub fn next_bit(&mut self) -> bool {
        if self.remaining == 0 {
            self.buffer = self.inner.next_u64();
            self.remaining = 64;
        }
        let bit = self.buffer & 1 == 1;
        self.buffer >>= 1;
        self.remaining -= 1;
        bit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bits() {
        let mut a = OutcomeRng::new(7);
        let mut b = OutcomeRng::new(7);
        let xs: Vec<bool> = (0..200).map(|_| a.next_bit()).collect();
        let ys: Vec<bool> = (0..200).map(|_| b.next_bit()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().any(|&x| x) && xs.iter().any(|&x| !x));
    }
}
