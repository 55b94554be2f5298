//! Self-contained deterministic pseudorandom generation.
//!
//! Everything seeded in this crate flows through the two fixed algorithms
//! below, so any result is reproducible from a single 64-bit seed with no
//! dependence on external crate versions:
//!
//! * [`mix64`] — the splitmix64 output function, used both to expand seeds
//!   and as the avalanche step when deriving per-instance seeds in sweeps.
//! * [`Rng`] — xoshiro256++ (Blackman/Vigna), state seeded from a single
//!   `u64` via a splitmix64 stream.
//!
//! Neither generator is cryptographic; both are fixed, published algorithms.

/// splitmix64 step constant (golden-ratio increment).
pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 output function: adds the golden-ratio increment and
/// applies the full 64-bit avalanche. A pure function; chaining it over a
/// counter yields the splitmix64 stream.
#[inline]
pub fn mix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256++ generator with splitmix64 state initialization.
#[derive(Clone, Debug)]
pub struct Rng {
    s: [u64; 4],
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        let mut sm = seed;
        let mut s = [0u64; 4];
        for slot in &mut s {
            *slot = mix64(sm);
            sm = sm.wrapping_add(GOLDEN);
        }
        // all-zero state is the one fixed point of xoshiro; splitmix64 of any
        // seed stream cannot realistically produce it, but guard regardless
        if s == [0, 0, 0, 0] {
            s[0] = GOLDEN;
        }
        Rng { s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform draw from `0..n` without modulo bias (rejection sampling).
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    #[inline]
    pub fn gen_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}
