//! The solution set as a bit vector over all 2^N assignment indices.
//!
//! Assignment index bit `v-1` holds the value of variable `x_v` (variable 1
//! is the least-significant bit). A clause is applied as a geometric filter:
//! it clears exactly the 2^(N-3) indices that match its falsifying pattern,
//! never by re-evaluating the formula per assignment. The clear is done at
//! word granularity: pattern positions below 6 become a 64-bit in-word mask,
//! positions 6 and above select which words are touched.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::formula::{Clause, Formula};

/// Index of one truth assignment; bit `v-1` = value of variable `x_v`.
pub type AssignmentIndex = u64;

/// Default refusal threshold for exhaustive enumeration (bit vector 0.5 MiB,
/// cluster flood fill about N*2^N steps).
pub const DEFAULT_ENUM_CAP: u32 = 22;

/// Hard ceiling for the cap override.
pub const MAX_ENUM_CAP: u32 = 26;

/// `LOW_MASK[p][v]`: in-word offsets j (0..64) with bit p of j equal to v.
const LOW_MASK: [[u64; 2]; 6] = [
    [0x5555_5555_5555_5555, 0xAAAA_AAAA_AAAA_AAAA],
    [0x3333_3333_3333_3333, 0xCCCC_CCCC_CCCC_CCCC],
    [0x0F0F_0F0F_0F0F_0F0F, 0xF0F0_F0F0_F0F0_F0F0],
    [0x00FF_00FF_00FF_00FF, 0xFF00_FF00_FF00_FF00],
    [0x0000_FFFF_0000_FFFF, 0xFFFF_0000_FFFF_0000],
    [0x0000_0000_FFFF_FFFF, 0xFFFF_FFFF_0000_0000],
];

/// The set of valid solutions of a formula, one bit per assignment index.
/// Bits above 2^N are invariantly zero.
#[derive(Clone, PartialEq, Eq)]
pub struct SolutionSet {
    n_vars: u32,
    words: Vec<u64>,
}

/// All 2^n assignments valid, under the default cap.
pub fn full_space(n: u32) -> Result<SolutionSet> {
    full_space_with_cap(n, DEFAULT_ENUM_CAP)
}

pub fn full_space_with_cap(n: u32, cap: u32) -> Result<SolutionSet> {
    if n < 3 {
        return Err(Error::InvalidN { n: n as u64 });
    }
    check_cap(n, cap)?;
    let words = if n >= 6 {
        vec![u64::MAX; 1usize << (n - 6)]
    } else {
        vec![(1u64 << (1u32 << n)) - 1]
    };
    Ok(SolutionSet { n_vars: n, words })
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if cap > MAX_ENUM_CAP {
        return Err(Error::CapExceeded {
            n: cap,
            cap: MAX_ENUM_CAP,
        });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Fold every clause of `f` over the full space (default cap).
pub fn enumerate(f: &Formula) -> Result<SolutionSet> {
    enumerate_with_cap(f, DEFAULT_ENUM_CAP)
}

pub fn enumerate_with_cap(f: &Formula, cap: u32) -> Result<SolutionSet> {
    let mut s = full_space_with_cap(f.n_vars(), cap)?;
    for c in f.clauses() {
        s.apply_clause_in_place(c);
    }
    Ok(s)
}

impl SolutionSet {
    #[inline]
    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    /// Total number of assignment indices, 2^N.
    #[inline]
    pub fn space_size(&self) -> u64 {
        1u64 << self.n_vars
    }

    /// |S|.
    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, idx: AssignmentIndex) -> bool {
        debug_assert!(idx < self.space_size());
        self.words[(idx >> 6) as usize] >> (idx & 63) & 1 == 1
    }

    /// Clear the falsified subcube of `c`, in place.
    pub fn apply_clause_in_place(&mut self, c: &Clause) {
        assert!(
            c.max_var() <= self.n_vars,
            "clause variable exceeds solution-set width"
        );
        let (vars, bits) = c.falsifying_pattern();
        let mut low_mask = u64::MAX;
        let mut hi_fixed_mask = 0u64;
        let mut hi_fixed_val = 0u64;
        for j in 0..3 {
            let pos = vars[j] - 1;
            let val = bits[j];
            if pos < 6 {
                low_mask &= LOW_MASK[pos as usize][val as usize];
            } else {
                hi_fixed_mask |= 1 << (pos - 6);
                if val {
                    hi_fixed_val |= 1 << (pos - 6);
                }
            }
        }
        if self.n_vars <= 6 {
            self.words[0] &= !low_mask;
            return;
        }
        // visit exactly the words whose index agrees with the fixed high
        // bits, via submask enumeration of the free high bits
        let free = !hi_fixed_mask & ((1u64 << (self.n_vars - 6)) - 1);
        let clear = !low_mask;
        let mut sub = 0u64;
        loop {
            self.words[(sub | hi_fixed_val) as usize] &= clear;
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
    }

    pub fn apply_clause(&self, c: &Clause) -> SolutionSet {
        let mut out = self.clone();
        out.apply_clause_in_place(c);
        out
    }

    /// Iterate the valid assignment indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = AssignmentIndex> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = (wi as u64) << 6;
            BitIter { word: w, base }
        })
    }

    /// Binary dump: 8-byte little-endian N, then 2^(N-3) bytes, LSB-first.
    pub fn write_binary<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(&(self.n_vars as u64).to_le_bytes())?;
        let n_bytes = 1usize << (self.n_vars - 3);
        let mut written = 0;
        for w in &self.words {
            let bytes = w.to_le_bytes();
            let take = bytes.len().min(n_bytes - written);
            out.write_all(&bytes[..take])?;
            written += take;
            if written == n_bytes {
                break;
            }
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut input: R) -> Result<SolutionSet> {
        let mut header = [0u8; 8];
        input.read_exact(&mut header)?;
        let n = u64::from_le_bytes(header);
        if !(3..=MAX_ENUM_CAP as u64).contains(&n) {
            return Err(Error::Config(format!("bad solution-set width {n}")));
        }
        let n = n as u32;
        let n_bytes = 1usize << (n - 3);
        let mut bytes = vec![0u8; n_bytes];
        input.read_exact(&mut bytes)?;
        let n_words = if n >= 6 { 1usize << (n - 6) } else { 1 };
        let mut words = vec![0u64; n_words];
        for (i, b) in bytes.iter().enumerate() {
            words[i / 8] |= (*b as u64) << (8 * (i % 8));
        }
        Ok(SolutionSet { n_vars: n, words })
    }
}

impl std::fmt::Debug for SolutionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SolutionSet(n={}, |S|={})", self.n_vars, self.count())
    }
}

struct BitIter {
    word: u64,
    base: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// popcount(a XOR b): number of variables on which the assignments differ.
#[inline]
pub fn hamming_distance(a: AssignmentIndex, b: AssignmentIndex) -> u32 {
    (a ^ b).count_ones()
}

/// The n single-bit-flip neighbors of `a` on the hypercube.
pub fn neighbors(a: AssignmentIndex, n: u32) -> Vec<AssignmentIndex> {
    (0..n).map(|i| a ^ (1 << i)).collect()
}
