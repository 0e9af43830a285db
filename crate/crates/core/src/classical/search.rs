//! Exhaustive search over all `2^(2N)` one-bit colourings.
//!
//! Colourings are handled as bit masks (bit `i` set = dot `i` white). The
//! symmetry group generated by rotations, the reflection `x -> -x` and the
//! colour flip preserves the uniform-distribution error, so the pruned
//! search evaluates one canonical representative per orbit.

use num_rational::Rational64;
use rayon::prelude::*;

use super::Coloring;
use crate::error::{Error, Result};
use crate::ring::Ring;

pub const DEFAULT_SEARCH_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `N` the search accepts.
    pub max_half: u32,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_half: DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub min_error: Rational64,
    /// Canonical representatives of the minimizing orbits, sorted.
    pub minimizers: Vec<Coloring>,
    /// Number of colourings actually evaluated.
    pub evaluated: u64,
    /// Number of colourings accounted for (always `2^(2N)`).
    pub covered: u64,
    pub used_symmetry: bool,
}

/// Wrong candidates (out of 6) for each pattern of the six dots around `y`:
/// bits 0..3 are the no-jump candidates, bits 3..6 the jump candidates.
const PATTERN_ERROR: [u8; 64] = {
    let mut table = [0u8; 64];
    let mut p = 0;
    while p < 64 {
        let a_white = (p & 7u32).count_ones() as u8;
        let b_white = (p >> 3 & 7u32).count_ones() as u8;
        let white = if a_white < b_white { a_white } else { b_white };
        let black = if 3 - a_white < 3 - b_white { 3 - a_white } else { 3 - b_white };
        table[p as usize] = white + black;
        p += 1;
    }
    table
};

/// `Σ_y` wrong candidates; the error is this over `12N`.
fn error_numerator(mask: u64, n: u32) -> u32 {
    let m = 2 * n;
    let doubled = mask | mask << m;
    (0..m)
        .map(|y| {
            let start = (y + m - 1) % m;
            let no_jump = doubled >> start & 7;
            let jump = doubled >> (start + n) & 7;
            u32::from(PATTERN_ERROR[(no_jump | jump << 3) as usize])
        })
        .sum()
}

fn full(m: u32) -> u64 {
    (1u64 << m) - 1
}

/// Dot `i` of the result takes dot `i - k`.
fn rotate(mask: u64, k: u32, m: u32) -> u64 {
    let k = k % m;
    if k == 0 {
        return mask;
    }
    (mask << k | mask >> (m - k)) & full(m)
}

fn reflect(mask: u64, m: u32) -> u64 {
    (0..m).fold(0, |out, i| out | (mask >> ((m - i) % m) & 1) << i)
}

/// Sort key matching string order with dot 0 first.
fn lex_key(mask: u64, m: u32) -> u64 {
    mask.reverse_bits() >> (64 - m)
}

fn images(mask: u64, m: u32) -> impl Iterator<Item = u64> {
    let reflected = reflect(mask, m);
    [mask, mask ^ full(m), reflected, reflected ^ full(m)]
        .into_iter()
        .flat_map(move |base| (0..m).map(move |k| rotate(base, k, m)))
}

fn canonical_mask(mask: u64, m: u32) -> u64 {
    images(mask, m).min_by_key(|&x| lex_key(x, m)).unwrap()
}

fn orbit_size(mask: u64, m: u32) -> u64 {
    let mut all: Vec<u64> = images(mask, m).collect();
    all.sort_unstable();
    all.dedup();
    all.len() as u64
}

/// Binary necklaces of length `m` (lex-smallest rotation, dot 0 first) via
/// the Fredricksen-Kessler-Maiorana recursion.
fn necklaces(m: u32) -> Vec<u64> {
    fn visit(t: usize, p: usize, a: &mut [u8], m: usize, out: &mut Vec<u64>) {
        if t > m {
            if m.is_multiple_of(p) {
                out.push((1..=m).fold(0u64, |mask, i| mask | u64::from(a[i]) << (i - 1)));
            }
            return;
        }
        a[t] = a[t - p];
        visit(t + 1, p, a, m, out);
        if a[t - p] == 0 {
            a[t] = 1;
            visit(t + 1, t, a, m, out);
        }
    }
    let mut a = vec![0u8; m as usize + 1];
    let mut out = Vec::new();
    visit(1, 1, &mut a, m as usize, &mut out);
    out
}

#[derive(Clone)]
struct Best {
    numerator: u32,
    masks: Vec<u64>,
}

impl Best {
    fn empty() -> Self {
        Self {
            numerator: u32::MAX,
            masks: Vec::new(),
        }
    }

    fn offer(mut self, numerator: u32, mask: u64) -> Self {
        if numerator < self.numerator {
            self.numerator = numerator;
            self.masks.clear();
        }
        if numerator == self.numerator {
            self.masks.push(mask);
        }
        self
    }

    fn merge(mut self, other: Best) -> Self {
        if other.numerator < self.numerator {
            return other;
        }
        if other.numerator == self.numerator {
            self.masks.extend(other.masks);
        }
        self
    }
}

/// Minimizes the uniform-distribution error over every colouring of the
/// ring. Results do not depend on the number of worker threads.
pub fn search_optimal(ring: Ring, use_symmetry: bool, limits: SearchLimits) -> Result<SearchOutcome> {
    let n = ring.half();
    if n > limits.max_half {
        return Err(Error::ResourceCap(format!(
            "exhaustive search at N={n} would visit 2^{} colourings; the cap is N={}",
            2 * n,
            limits.max_half
        )));
    }
    if n > 31 {
        return Err(Error::ResourceCap(format!("N={n} does not fit a 64-bit mask")));
    }
    let m = 2 * n;
    let total = 1u64 << m;

    let (best, evaluated) = if use_symmetry {
        let reps: Vec<u64> = necklaces(m)
            .into_par_iter()
            .filter(|&mask| canonical_mask(mask, m) == mask)
            .collect();
        let covered: u64 = reps.par_iter().map(|&mask| orbit_size(mask, m)).sum();
        debug_assert_eq!(covered, total);
        let best = reps
            .par_iter()
            .fold(Best::empty, |b, &mask| b.offer(error_numerator(mask, n), mask))
            .reduce(Best::empty, Best::merge);
        (best, reps.len() as u64)
    } else {
        let best = (0..total)
            .into_par_iter()
            .fold(Best::empty, |b, mask| b.offer(error_numerator(mask, n), mask))
            .reduce(Best::empty, Best::merge);
        (best, total)
    };

    let mut reps: Vec<u64> = best.masks.iter().map(|&mask| canonical_mask(mask, m)).collect();
    reps.sort_unstable_by_key(|&mask| lex_key(mask, m));
    reps.dedup();

    Ok(SearchOutcome {
        min_error: Rational64::new(i64::from(best.numerator), 12 * i64::from(n)),
        minimizers: reps.into_iter().map(|mask| Coloring::from_mask(ring, mask)).collect(),
        evaluated,
        covered: total,
        used_symmetry: use_symmetry,
    })
}

/// Canonical representatives of every orbit, sorted by string order.
pub fn canonical_colorings(ring: Ring) -> Vec<Coloring> {
    let m = ring.modulus();
    let mut reps: Vec<u64> = necklaces(m)
        .into_iter()
        .filter(|&mask| canonical_mask(mask, m) == mask)
        .collect();
    reps.sort_unstable_by_key(|&mask| lex_key(mask, m));
    reps.into_iter().map(|mask| Coloring::from_mask(ring, mask)).collect()
}
