//! MT19937 Mersenne Twister.
//!
//! A plain 32-bit implementation of the reference generator: the same seed
//! initialization recurrence, twist and output tempering as the published C
//! code (and `std::mt19937`). One stream belongs to one simulation chain.

use crate::error::{Error, Result};

const N: usize = 624;
const M: usize = 397;
const MATRIX_A: u32 = 0x9908_b0df;
const UPPER_MASK: u32 = 0x8000_0000;
const LOWER_MASK: u32 = 0x7fff_ffff;

/// 2^-32, exact in `f64`.
const INV_2_32: f64 = 1.0 / 4_294_967_296.0;

/// Deterministic MT19937 stream.
#[derive(Clone)]
pub struct RandomStream {
    seed: u32,
    state: [u32; N],
    index: usize,
}

impl RandomStream {
    /// Seeds the generator with the standard `init_genrand` recurrence.
    pub fn new(seed: u32) -> Self {
        let mut state = [0u32; N];
        state[0] = seed;
        for i in 1..N {
            let prev = state[i - 1];
            state[i] = 1_812_433_253u32
                .wrapping_mul(prev ^ (prev >> 30))
                .wrapping_add(i as u32);
        }
        RandomStream {
            seed,
            state,
            index: N,
        }
    }

    pub fn seed(&self) -> u32 {
        self.seed
    }

    fn twist(&mut self) {
        #[inline(always)]
        fn mix(upper: u32, lower: u32, far: u32) -> u32 {
            let y = (upper & UPPER_MASK) | (lower & LOWER_MASK);
            far ^ (y >> 1) ^ (0u32.wrapping_sub(y & 1) & MATRIX_A)
        }
        let s = &mut self.state;
        for i in 0..N - M {
            s[i] = mix(s[i], s[i + 1], s[i + M]);
        }
        for i in N - M..N - 1 {
            s[i] = mix(s[i], s[i + 1], s[i + M - N]);
        }
        s[N - 1] = mix(s[N - 1], s[0], s[M - 1]);
        self.index = 0;
    }

    /// Next raw tempered output.
    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        if self.index >= N {
            self.twist();
        }
        let mut y = self.state[self.index];
        self.index += 1;
        y ^= y >> 11;
        y ^= (y << 7) & 0x9d2c_5680;
        y ^= (y << 15) & 0xefc6_0000;
        y ^= y >> 18;
        y
    }

    /// `next_u32 / 2^32`, in `[0, 1)`. Consumes exactly one draw.
    #[inline]
    pub fn next_unit_real(&mut self) -> f64 {
        f64::from(self.next_u32()) * INV_2_32
    }

    /// Uniform index in `[0, n)` computed as `floor(next_unit_real * n)`.
    ///
    /// This mapping is part of the reproducibility contract: a Wolff update
    /// seeds its cluster with exactly one draw through this function.
    #[inline]
    pub fn next_site_index(&mut self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "site index range must be non-empty".into(),
            ));
        }
        let idx = (self.next_unit_real() * n as f64) as usize;
        Ok(idx.min(n - 1))
    }
}

impl std::fmt::Debug for RandomStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RandomStream")
            .field("seed", &self.seed)
            .field("index", &self.index)
            .finish_non_exhaustive()
    }
}
