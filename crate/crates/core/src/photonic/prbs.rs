//! Maximal-length shift-register sequences and cyclic offset recovery.
//!
//! The transmitter steps through message patterns driven by a PRBS; the
//! receiver recovers where in the cycle its record starts by trying every
//! cyclic shift of the reference and keeping the best match.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Shortest and longest supported register.
pub const MIN_ORDER: u32 = 3;
pub const MAX_ORDER: u32 = 23;

/// Agreement fraction below which [`prbs_align`] reports failure.
pub const DEFAULT_ALIGN_THRESHOLD: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrbsSequence {
    order: u32,
    taps: Vec<u32>,
    bits: Vec<bool>,
}

impl PrbsSequence {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Register stages fed back, numbered from 1.
    pub fn taps(&self) -> &[u32] {
        &self.taps
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `2^k − 1`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit `i` of the periodic extension.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i % self.bits.len()]
    }

    /// Sequence shifted left by `offset`, so that bit 0 is old bit `offset`.
    pub fn rotated(&self, offset: usize) -> Vec<bool> {
        let n = self.bits.len();
        (0..n).map(|i| self.bits[(i + offset) % n]).collect()
    }
}

/// Feedback taps giving a maximal period for each register length.
pub fn default_taps(k: u32) -> Result<&'static [u32]> {
    Ok(match k {
        3 => &[3, 2],
        4 => &[4, 3],
        5 => &[5, 3],
        6 => &[6, 5],
        7 => &[7, 6],
        8 => &[8, 6, 5, 4],
        9 => &[9, 5],
        10 => &[10, 7],
        11 => &[11, 9],
        12 => &[12, 6, 4, 1],
        13 => &[13, 4, 3, 1],
        14 => &[14, 5, 3, 1],
        15 => &[15, 14],
        16 => &[16, 15, 13, 4],
        17 => &[17, 14],
        18 => &[18, 11],
        19 => &[19, 6, 2, 1],
        20 => &[20, 17],
        21 => &[21, 19],
        22 => &[22, 21],
        23 => &[23, 18],
        _ => return Err(Error::UnsupportedPrbsOrder(k)),
    })
}

/// Sequence of order `k` started from the all-ones register.
pub fn prbs_generate(k: u32) -> Result<PrbsSequence> {
    prbs_generate_seeded(k, u32::MAX)
}

/// Sequence of order `k` started from register state `seed` (low `k` bits,
/// not all zero). Different seeds give cyclic shifts of one sequence.
pub fn prbs_generate_seeded(k: u32, seed: u32) -> Result<PrbsSequence> {
    let taps = default_taps(k)?;
    let mask = (1u32 << k) - 1;
    let mut state = seed & mask;
    if state == 0 {
        return Err(Error::InvalidParameter {
            name: "prbs_seed",
            value: f64::from(seed),
        });
    }
    let period = mask as usize;
    let mut bits = Vec::with_capacity(period);
    for _ in 0..period {
        bits.push((state >> (k - 1)) & 1 == 1);
        let feedback = taps.iter().fold(0, |acc, &t| acc ^ (state >> (t - 1)));
        state = ((state << 1) | (feedback & 1)) & mask;
    }
    Ok(PrbsSequence {
        order: k,
        taps: taps.to_vec(),
        bits,
    })
}

/// Cyclic offset of `observed` against `reference`.
///
/// `observed[i]` is compared with reference bit `i + offset`; `None` entries
/// are erasures and do not count. Returns the offset with the most agreements,
/// the smallest one on ties, provided its agreement fraction among non-erased
/// samples reaches `threshold`.
pub fn prbs_align(
    observed: &[Option<bool>],
    reference: &PrbsSequence,
    threshold: f64,
) -> Result<usize> {
    let n = reference.len();
    if observed.len() < n {
        return Err(Error::InvalidParameter {
            name: "observed_len",
            value: observed.len() as f64,
        });
    }
    let known = observed.iter().filter(|b| b.is_some()).count();
    if known == 0 {
        return Err(Error::AlignmentFailed {
            best_offset: 0,
            agreement: 0.0,
        });
    }
    let (best_offset, best) = (0..n)
        .map(|offset| {
            let hits = observed
                .iter()
                .enumerate()
                .filter(|(i, b)| **b == Some(reference.bit(i + offset)))
                .count();
            (offset, hits)
        })
        .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let agreement = best as f64 / known as f64;
    if agreement < threshold {
        return Err(Error::AlignmentFailed {
            best_offset,
            agreement,
        });
    }
    Ok(best_offset)
}
