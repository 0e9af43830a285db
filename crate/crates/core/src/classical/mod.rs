//! One-bit classical strategies.
//!
//! Alice colours the dots and sends the colour of `x`. Bob, knowing `y` and
//! the colouring, announces the class with more candidate dots of the
//! received colour. Under the uniform input distribution each of the six
//! candidates for `x` has probability 1/6, so the error of this rule for a
//! given `y` is `Σ_m min(a_m, b_m) / 6` where `a_m` (`b_m`) counts the
//! no-jump (jump) candidates of colour `m`. All classical quantities are
//! exact rationals.

mod coloring;
mod search;
mod trit;

pub use coloring::{Colour, Coloring};
pub use search::{canonical_colorings, search_optimal, SearchLimits, SearchOutcome, DEFAULT_SEARCH_CAP};
pub use trit::{
    best_code_assignment, evaluate_trit, expected_code_length, trit_coloring, CodeAssignment,
    Codeword, TritColoring, TritColour,
};

use num_rational::Rational64;

use crate::ring::{PromiseClass, PromisePair, Ring, RingPoint};

/// The three no-jump candidates `{y-1, y, y+1}` and the three jump
/// candidates `{y+N-1, y+N, y+N+1}` for `x`.
pub fn neighborhood(y: RingPoint) -> ([RingPoint; 3], [RingPoint; 3]) {
    let n = i64::from(y.ring().half());
    (
        [y.shifted(-1), y, y.shifted(1)],
        [y.shifted(n - 1), y.shifted(n), y.shifted(n + 1)],
    )
}

/// Per-message candidate counts `(no_jump, jump)` around `y`, for a message
/// function with `K` symbols.
pub(crate) fn message_counts<const K: usize>(
    y: RingPoint,
    message: impl Fn(RingPoint) -> usize,
) -> [(i64, i64); K] {
    let (no_jump, jump) = neighborhood(y);
    let mut counts = [(0i64, 0i64); K];
    for dot in no_jump {
        counts[message(dot)].0 += 1;
    }
    for dot in jump {
        counts[message(dot)].1 += 1;
    }
    counts
}

pub(crate) fn min_count_error<const K: usize>(counts: &[(i64, i64); K]) -> Rational64 {
    let wrong: i64 = counts.iter().map(|&(a, b)| a.min(b)).sum();
    Rational64::new(wrong, 6)
}

/// Error of the min-count receiver for a fixed `y` under uniform `x`.
pub fn per_y_error(coloring: &Coloring, y: RingPoint) -> Rational64 {
    min_count_error(&message_counts::<2>(y, |d| coloring.colour(d).index()))
}

/// Bob's announcement for a received colour: jump iff strictly more jump
/// candidates carry that colour; ties go to no jump.
pub fn decide(coloring: &Coloring, message: Colour, y: RingPoint) -> PromiseClass {
    let (a, b) = message_counts::<2>(y, |d| coloring.colour(d).index())[message.index()];
    if b > a {
        PromiseClass::Jump
    } else {
        PromiseClass::NoJump
    }
}

/// Whether the min-count receiver errs on a specific pair.
pub fn errs_on(coloring: &Coloring, pair: &PromisePair) -> bool {
    decide(coloring, coloring.colour(pair.x()), pair.y()) != pair.class()
}

/// Exact uniform-distribution error of a colouring with its per-`y` parts.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyEvaluation {
    pub total_error: Rational64,
    pub per_y_error: Vec<Rational64>,
    pub coloring: Coloring,
}

pub fn evaluate_coloring(coloring: &Coloring) -> StrategyEvaluation {
    let ring = coloring.ring();
    let per_y: Vec<Rational64> = ring.points().map(|y| per_y_error(coloring, y)).collect();
    let total = per_y.iter().sum::<Rational64>() / Rational64::from(i64::from(ring.modulus()));
    StrategyEvaluation {
        total_error: total,
        per_y_error: per_y,
        coloring: coloring.clone(),
    }
}

/// `1/(3N)`, the lower bound on any non-trivial colouring's error.
pub fn classical_lower_bound(ring: Ring) -> Rational64 {
    Rational64::new(1, 3 * i64::from(ring.half()))
}

/// A receiver of the form "announce no jump iff `message · sign(y) = +1`".
///
/// A party in the middle of a chain receives its neighbour's colour already
/// multiplied by the running parity, so only receivers that commute with a
/// sign change can be applied there. For every `y` the better of the two
/// such rules is chosen; ties go to `+1`.
pub fn sign_rule(coloring: &Coloring, y: RingPoint) -> (i8, Rational64) {
    let [(a_black, b_black), (a_white, b_white)] =
        message_counts::<2>(y, |d| coloring.colour(d).index());
    // +1: black means no jump, white means jump.
    let plus = Rational64::new(b_black + a_white, 6);
    let minus = Rational64::new(a_black + b_white, 6);
    if plus <= minus {
        (1, plus)
    } else {
        (-1, minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{classify, Offset};

    fn ring(n: u32) -> Ring {
        Ring::new(n).unwrap()
    }

    fn values(dots: [RingPoint; 3]) -> Vec<u32> {
        dots.iter().map(|d| d.value()).collect()
    }

    #[test]
    fn neighborhood_examples() {
        let (nj, j) = neighborhood(ring(3).wrap(0));
        assert_eq!(values(nj), [5, 0, 1]);
        assert_eq!(values(j), [2, 3, 4]);
        let (nj, j) = neighborhood(ring(4).wrap(7));
        assert_eq!(values(nj), [6, 7, 0]);
        assert_eq!(values(j), [2, 3, 4]);
        for n in 3..20 {
            for y in ring(n).points() {
                let (nj, j) = neighborhood(y);
                let mut all: Vec<u32> = values(nj).into_iter().chain(values(j)).collect();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), 6);
            }
        }
    }

    /// The configuration behind the worked example: on the no-jump side two
    /// black dots and one white, the three jump candidates all white.
    #[test]
    fn two_black_one_white_against_three_white() {
        for n in 3..=12 {
            let r = ring(n);
            let y = r.wrap(1);
            let (nj, j) = neighborhood(y);
            let mut colors = vec![Colour::Black; r.modulus() as usize];
            colors[nj[2].value() as usize] = Colour::White;
            for d in j {
                colors[d.value() as usize] = Colour::White;
            }
            let c = Coloring::new(r, colors).unwrap();
            let e = per_y_error(&c, y);
            assert_eq!(e, Rational64::new(1, 6));
            // (4/6)(1/4) + (2/6)(0/2)
            let bookkeeping = Rational64::new(4, 6) * Rational64::new(1, 4);
            assert_eq!(e, bookkeeping);
            assert_eq!(
                e / Rational64::from(i64::from(r.modulus())),
                Rational64::new(1, 12 * i64::from(n))
            );
        }
    }

    #[test]
    fn per_y_extremes() {
        let r = ring(4);
        let y = r.wrap(2);
        assert_eq!(per_y_error(&Coloring::monochrome(r, Colour::Black), y), Rational64::new(1, 2));
        let (_, j) = neighborhood(y);
        let mut colors = vec![Colour::Black; 8];
        for d in j {
            colors[d.value() as usize] = Colour::White;
        }
        assert_eq!(per_y_error(&Coloring::new(r, colors).unwrap(), y), Rational64::from(0));
    }

    #[test]
    fn monochrome_is_one_half() {
        for n in 3..10 {
            for colour in [Colour::Black, Colour::White] {
                let e = evaluate_coloring(&Coloring::monochrome(ring(n), colour));
                assert_eq!(e.total_error, Rational64::new(1, 2));
            }
        }
    }

    /// Independent oracle: enumerate all 12N valid pairs and every one of the
    /// four deterministic decision functions per (message, y) cell, keeping
    /// the best one per cell.
    fn brute_force_error(c: &Coloring) -> Rational64 {
        let r = c.ring();
        let mut wrong = 0i64;
        for y in r.points() {
            for message in [Colour::Black, Colour::White] {
                let cell: Vec<PromiseClass> = r
                    .points()
                    .filter(|&x| c.colour(x) == message)
                    .filter_map(|x| classify(x, y).unwrap().class())
                    .collect();
                let best = [PromiseClass::NoJump, PromiseClass::Jump]
                    .iter()
                    .map(|&guess| cell.iter().filter(|&&k| k != guess).count())
                    .min()
                    .unwrap();
                wrong += best as i64;
            }
        }
        Rational64::new(wrong, 12 * i64::from(r.half()))
    }

    #[test]
    fn evaluation_matches_brute_force_oracle() {
        for n in 3..=5 {
            let r = ring(n);
            for mask in 0..(1u64 << r.modulus()) {
                let c = Coloring::from_mask(r, mask);
                assert_eq!(evaluate_coloring(&c).total_error, brute_force_error(&c), "{c}");
            }
        }
    }

    #[test]
    fn alternating_colouring_at_three() {
        let c = Coloring::parse(ring(3), "BWBWBW").unwrap();
        let e = evaluate_coloring(&c);
        assert_eq!(e.total_error, brute_force_error(&c));
        // Each y sees {B,W,B}/{W,B,W} or the reverse: min counts 1 + 1.
        assert_eq!(e.total_error, Rational64::new(1, 3));
    }

    #[test]
    fn one_black_dot_error() {
        // Six y's see the lone black dot (error 1/3 each), the rest see six
        // whites (error 1/2): total (N - 1) / (2N).
        for n in 3..=9 {
            let r = ring(n);
            let mut colors = vec![Colour::White; r.modulus() as usize];
            colors[0] = Colour::Black;
            let e = evaluate_coloring(&Coloring::new(r, colors).unwrap());
            assert_eq!(e.total_error, Rational64::new(i64::from(n) - 1, 2 * i64::from(n)));
        }
    }

    #[test]
    fn total_is_mean_of_per_y() {
        let c = Coloring::parse(ring(4), "BBWBWWWB").unwrap();
        let e = evaluate_coloring(&c);
        let mean = e.per_y_error.iter().sum::<Rational64>() / Rational64::from(8);
        assert_eq!(e.total_error, mean);
        assert!(e.total_error >= Rational64::from(0) && e.total_error <= Rational64::new(1, 2));
    }

    #[test]
    fn symmetries_preserve_error() {
        let r = ring(5);
        for mask in (0..1024u64).step_by(37) {
            let c = Coloring::from_mask(r, mask);
            let base = evaluate_coloring(&c).total_error;
            for image in c.symmetry_images() {
                assert_eq!(evaluate_coloring(&image).total_error, base);
            }
        }
    }

    #[test]
    fn min_count_rule_is_bayes_optimal_at_three() {
        // Enumerate every receiver table h(y, message) at N = 3 for every
        // colouring; none beats the min-count rule.
        let r = ring(3);
        let pairs = r.valid_pairs();
        for mask in 0..64u64 {
            let c = Coloring::from_mask(r, mask);
            let ours = evaluate_coloring(&c).total_error;
            let mut best = i64::MAX;
            for table in 0..(1u32 << 12) {
                let wrong = pairs
                    .iter()
                    .filter(|p| {
                        let cell = 2 * p.y().value() + c.colour(p.x()).index() as u32;
                        let guess = if table >> cell & 1 == 1 {
                            PromiseClass::Jump
                        } else {
                            PromiseClass::NoJump
                        };
                        guess != p.class()
                    })
                    .count() as i64;
                best = best.min(wrong);
            }
            assert_eq!(ours, Rational64::new(best, 36), "{c}");
        }
    }

    #[test]
    fn decide_agrees_with_per_y_error() {
        let r = ring(4);
        for mask in 0..256u64 {
            let c = Coloring::from_mask(r, mask);
            for y in r.points() {
                let wrong = Offset::ALL
                    .iter()
                    .filter(|&&o| errs_on(&c, &PromisePair::from_offset(y, o)))
                    .count() as i64;
                assert_eq!(Rational64::new(wrong, 6), per_y_error(&c, y));
            }
        }
    }

    #[test]
    fn sign_rule_never_beats_bayes_and_matches_on_two_arc() {
        for n in 3..=8 {
            let r = ring(n);
            let arc = Coloring::two_arc(r);
            for y in r.points() {
                assert_eq!(sign_rule(&arc, y).1, per_y_error(&arc, y));
            }
            if n <= 4 {
                for mask in 0..(1u64 << r.modulus()) {
                    let c = Coloring::from_mask(r, mask);
                    for y in r.points() {
                        assert!(sign_rule(&c, y).1 >= per_y_error(&c, y));
                    }
                }
            }
        }
    }
}
