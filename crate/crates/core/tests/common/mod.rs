//! Independent oracles. Nothing here calls into the library; colourings are
//! plain sign vectors (`+1` black, `-1` white) indexed by dot.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use std::f64::consts::PI;

/// `(x, y, is_jump)` for every pair satisfying the promise, by direct
/// classification of all `(2N)^2` pairs.
pub fn promise_pairs(n: u32) -> Vec<(u32, u32, bool)> {
    let m = 2 * n;
    let mut out = Vec::new();
    for y in 0..m {
        for x in 0..m {
            let d = (x + m - y) % m;
            if d == m - 1 || d == 0 || d == 1 {
                out.push((x, y, false));
            } else if d == n - 1 || d == n || d == n + 1 {
                out.push((x, y, true));
            }
        }
    }
    out
}

/// The six candidate `x` for a given `y`, with their class.
pub fn candidates(n: u32, y: u32) -> Vec<(u32, bool)> {
    promise_pairs(n).into_iter().filter(|p| p.1 == y).map(|p| (p.0, p.2)).collect()
}

/// Error of the entanglement protocol on one pair: outcomes (after Bob's
/// sign flip) agree with probability (1 + cos Δ)/2 and Bob announces
/// "no jump" exactly when they agree.
pub fn quantum_link_error(n: u32, x: u32, y: u32, jump: bool) -> f64 {
    let delta = PI * (f64::from(x) - f64::from(y)) / f64::from(n);
    let agree = 0.5 * (1.0 + delta.cos());
    if jump {
        agree
    } else {
        1.0 - agree
    }
}

/// Wrong guesses at `y` for the best of the four message-to-class tables.
fn best_table_errors(colors: &[i8], n: u32, y: u32) -> i64 {
    let cands = candidates(n, y);
    (0..4)
        .map(|table: u8| {
            cands
                .iter()
                .filter(|&&(x, jump)| {
                    let slot = u8::from(colors[x as usize] < 0);
                    let says_jump = table >> slot & 1 == 1;
                    says_jump != jump
                })
                .count() as i64
        })
        .min()
        .unwrap()
}

/// Error at `y` of the best receiver, `x` uniform over the six candidates.
pub fn bayes_error_at(colors: &[i8], n: u32, y: u32) -> Rational64 {
    Rational64::new(best_table_errors(colors, n, y), 6)
}

/// Uniform-distribution error of the best receiver.
pub fn bayes_error(colors: &[i8], n: u32) -> Rational64 {
    let wrong: i64 = (0..2 * n).map(|y| best_table_errors(colors, n, y)).sum();
    Rational64::new(wrong, 12 * i64::from(n))
}

/// Error at `y` of the better receiver of the form "no jump iff colour·s = +1".
pub fn linear_error_at(colors: &[i8], n: u32, y: u32) -> Rational64 {
    let cands = candidates(n, y);
    let wrong = [1i8, -1]
        .iter()
        .map(|&s| cands.iter().filter(|&&(x, jump)| (colors[x as usize] * s == 1) == jump).count() as i64)
        .min()
        .unwrap();
    Rational64::new(wrong, 6)
}

/// Receiver that follows the majority class among candidates sharing the
/// message, flipping a fair coin on ties. Error on one pair: 0, 1/2 or 1.
pub fn coin_flip_error(colors: &[i8], n: u32, x: u32, y: u32, jump: bool) -> Rational64 {
    let msg = colors[x as usize];
    let (mut nj, mut j) = (0, 0);
    for (c, cj) in candidates(n, y) {
        if colors[c as usize] == msg {
            if cj {
                j += 1;
            } else {
                nj += 1;
            }
        }
    }
    let half = Rational64::new(1, 2);
    match (nj.cmp(&j), jump) {
        (std::cmp::Ordering::Equal, _) => half,
        (std::cmp::Ordering::Greater, false) | (std::cmp::Ordering::Less, true) => Rational64::zero(),
        _ => Rational64::one(),
    }
}

pub fn signs_from_mask(mask: u64, dots: u32) -> Vec<i8> {
    (0..dots).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Error of the best three-message receiver; colours are `0, 1, 2`.
pub fn trit_error(colors: &[u8], n: u32) -> Rational64 {
    let mut wrong = 0i64;
    for y in 0..2 * n {
        let cands = candidates(n, y);
        for msg in 0..3u8 {
            let nj = cands.iter().filter(|&&(x, j)| !j && colors[x as usize] == msg).count() as i64;
            let jj = cands.iter().filter(|&&(x, j)| j && colors[x as usize] == msg).count() as i64;
            wrong += nj.min(jj);
        }
    }
    Rational64::new(wrong, 12 * i64::from(n))
}

/// Probability of an odd number of errors among independent links, by
/// dynamic programming over the running parity.
pub fn odd_error_probability(eps: &[f64]) -> f64 {
    eps.iter().fold(0.0, |odd, e| odd * (1.0 - e) + (1.0 - odd) * e)
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact value of the zero-sum game with loss matrix `a` (rows minimize),
/// by simplex with Bland's rule on
/// `max Σw  s.t.  (A + 1)ᵀ w ≤ 1, w ≥ 0`, whose optimum is `1/(v + 1)`.
pub fn game_value_exact(a: &[Vec<Rational64>]) -> BigRational {
    let rows = a.len();
    let cols = a[0].len();
    let big = |r: Rational64| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    // Tableau: one constraint per column of A; variables w_0..w_rows, then slacks.
    let width = rows + cols + 1;
    let mut t: Vec<Vec<BigRational>> = (0..cols)
        .map(|j| {
            let mut line = vec![BigRational::zero(); width];
            for (i, row) in a.iter().enumerate() {
                line[i] = big(row[j]) + BigRational::one();
            }
            line[rows + j] = BigRational::one();
            line[width - 1] = BigRational::one();
            line
        })
        .collect();
    let mut objective = vec![BigRational::zero(); width];
    for cell in objective.iter_mut().take(rows) {
        *cell = -BigRational::one();
    }
    let mut basis: Vec<usize> = (rows..rows + cols).collect();
    while let Some(enter) = (0..width - 1).find(|&k| objective[k].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, line) in t.iter().enumerate() {
            if line[enter].is_positive() {
                let ratio = &line[width - 1] / &line[enter];
                let better = match &leave {
                    None => true,
                    Some((best_r, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*best_r]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("bounded: every column of A + 1 is positive");
        let pivot = t[pivot_row][enter].clone();
        for cell in t[pivot_row].iter_mut() {
            *cell = &*cell / &pivot;
        }
        let pivot_line = t[pivot_row].clone();
        for (r, line) in t.iter_mut().enumerate() {
            if r != pivot_row && !line[enter].is_zero() {
                let f = line[enter].clone();
                for (cell, p) in line.iter_mut().zip(&pivot_line) {
                    *cell = &*cell - &f * p;
                }
            }
        }
        let f = objective[enter].clone();
        for (cell, p) in objective.iter_mut().zip(&pivot_line) {
            *cell = &*cell - &f * p;
        }
        basis[pivot_row] = enter;
    }
    let best = objective[width - 1].clone();
    BigRational::one() / best - BigRational::one()
}

/// `(64 × 36)` loss matrix at `N = 3` for the coin-flip receiver.
pub fn full_matrix_n3() -> Vec<Vec<Rational64>> {
    let pairs = promise_pairs(3);
    (0..64u64)
        .map(|mask| {
            let colors = signs_from_mask(mask, 6);
            pairs.iter().map(|&(x, y, j)| coin_flip_error(&colors, 3, x, y, j)).collect()
        })
        .collect()
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}
