//! The two-party entanglement-assisted protocol: Alice and Bob measure a
//! shared singlet at the angles of their dots, Alice sends her outcome, and
//! Bob announces "no jump" iff it matches his sign-flipped outcome.

use std::f64::consts::PI;
use std::ops::Mul;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{angle_of, prob_opposite, prob_same, Offset, PromiseClass, PromisePair, Ring};
use crate::rng::count_trials;

/// A `±1` measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn sign(self) -> i8 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }
}

impl Mul for Spin {
    type Output = Spin;

    fn mul(self, rhs: Spin) -> Spin {
        if self == rhs {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }
}

/// Alice's outcome and Bob's outcome after his sign flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutcomePair {
    pub alice: Spin,
    pub bob_flipped: Spin,
}

/// An empirical error frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub errors: u64,
    pub trials: u64,
    pub std_error: f64,
    pub seed: u64,
}

impl McEstimate {
    pub fn from_counts(errors: u64, trials: u64, seed: u64) -> Self {
        assert!(trials > 0 && errors <= trials);
        let mean = errors as f64 / trials as f64;
        Self {
            mean,
            errors,
            trials,
            std_error: (mean * (1.0 - mean) / trials as f64).sqrt(),
            seed,
        }
    }

    /// `|mean - exact| <= k * std_error`.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        (self.mean - exact).abs() <= k * self.std_error
    }
}

/// Exact probability that Bob's announcement is wrong for `pair`.
pub fn link_error_probability(pair: &PromisePair) -> f64 {
    let (theta, phi) = (angle_of(pair.x()), angle_of(pair.y()));
    match pair.class() {
        PromiseClass::NoJump => prob_opposite(theta, phi),
        PromiseClass::Jump => prob_same(theta, phi),
    }
}

/// `sin²(π/2N)`: the error at the largest angular deviation `π/N` from
/// perfect (anti-)alignment.
pub fn worst_case_error(ring: Ring) -> f64 {
    let s = (PI / (2.0 * f64::from(ring.half()))).sin();
    s * s
}

/// `(π/2N)²`, the small-angle upper bound on [`worst_case_error`].
pub fn worst_case_bound(ring: Ring) -> f64 {
    let a = PI / (2.0 * f64::from(ring.half()));
    a * a
}

/// Mean link error when the 12N valid pairs are equally likely.
pub fn average_error_uniform(ring: Ring) -> f64 {
    let y = ring.wrap(0);
    Offset::ALL
        .iter()
        .map(|&o| link_error_probability(&PromisePair::from_offset(y, o)))
        .sum::<f64>()
        / 6.0
}

/// Samples one singlet measurement pair: Alice is unbiased, Bob's flipped
/// outcome agrees with hers with probability `prob_same`.
pub fn sample_outcomes<R: Rng + ?Sized>(pair: &PromisePair, rng: &mut R) -> OutcomePair {
    let p_same = prob_same(angle_of(pair.x()), angle_of(pair.y()));
    sample_correlated(p_same, rng)
}

pub(crate) fn sample_correlated<R: Rng + ?Sized>(p_same: f64, rng: &mut R) -> OutcomePair {
    let alice = if rng.gen::<bool>() { Spin::Plus } else { Spin::Minus };
    let same = rng.gen::<f64>() < p_same;
    OutcomePair {
        alice,
        bob_flipped: if same { alice } else { alice.flip() },
    }
}

/// Bob's announcement from the received bit and his own flipped outcome.
pub fn announce(received: Spin, bob_flipped: Spin) -> PromiseClass {
    match received * bob_flipped {
        Spin::Plus => PromiseClass::NoJump,
        Spin::Minus => PromiseClass::Jump,
    }
}

/// Simulates the full protocol `trials` times and reports the error rate.
pub fn run_two_party_mc(pair: &PromisePair, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let p_same = prob_same(angle_of(pair.x()), angle_of(pair.y()));
    let class = pair.class();
    let errors = count_trials(trials, seed, |rng| {
        let outcomes = sample_correlated(p_same, rng);
        let message = outcomes.alice;
        announce(message, outcomes.bob_flipped) != class
    });
    Ok(McEstimate::from_counts(errors, trials, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn pair(n: u32, x: u32, y: u32) -> PromisePair {
        let ring = Ring::new(n).unwrap();
        PromisePair::new(ring.point(x).unwrap(), ring.point(y).unwrap()).unwrap()
    }

    #[test]
    fn link_error_examples() {
        assert!(link_error_probability(&pair(3, 2, 2)).abs() < 1e-15);
        assert!((link_error_probability(&pair(3, 3, 2)) - 0.25).abs() < 1e-15);
        // x - y = N + 1 at N = 6: (1 - cos(π/6)) / 2.
        let expected = (1.0 - (PI / 6.0).cos()) / 2.0;
        assert!((link_error_probability(&pair(6, 7, 0)) - expected).abs() < 1e-15);
        assert!((expected - 0.0669873).abs() < 1e-7);
    }

    #[test]
    fn worst_case_examples() {
        let r3 = Ring::new(3).unwrap();
        assert!((worst_case_error(r3) - 0.25).abs() < 1e-15);
        assert!((worst_case_bound(r3) - 0.274156).abs() < 1e-6);
        let r8 = Ring::new(8).unwrap();
        assert!((worst_case_error(r8) - 0.0380602).abs() < 1e-7);
        assert!((worst_case_bound(r8) - 0.0385531).abs() < 1e-7);
        let mut last = 1.0;
        for n in 3..500 {
            let w = worst_case_error(Ring::new(n).unwrap());
            assert!(w < last);
            last = w;
        }
    }

    #[test]
    fn worst_case_matches_scan() {
        for n in 3..=40 {
            let ring = Ring::new(n).unwrap();
            let scanned = ring
                .valid_pairs()
                .iter()
                .map(link_error_probability)
                .fold(0.0f64, f64::max);
            assert!((scanned - worst_case_error(ring)).abs() < 1e-12, "N={n}");
            assert!(scanned <= worst_case_bound(ring));
        }
    }

    #[test]
    fn average_error_examples() {
        let r3 = Ring::new(3).unwrap();
        assert!((average_error_uniform(r3) - 1.0 / 6.0).abs() < 1e-15);
        // Six closed-form offset errors at N = 8: two zero, four at sin²(π/16).
        let r8 = Ring::new(8).unwrap();
        let s = (PI / 16.0).sin();
        assert!((average_error_uniform(r8) - 4.0 * s * s / 6.0).abs() < 1e-15);
        for n in 3..100 {
            let ring = Ring::new(n).unwrap();
            assert!(average_error_uniform(ring) <= worst_case_error(ring));
        }
    }

    #[test]
    fn average_error_scales_as_inverse_square() {
        let scaled = |n: u32| average_error_uniform(Ring::new(n).unwrap()) * f64::from(n * n);
        // Limit is (2/3)(π/2)² = π²/6.
        let limit = PI * PI / 6.0;
        assert!((scaled(1000) - limit).abs() < 1e-4);
        assert!((scaled(2000) - scaled(1000)).abs() < 1e-5);
    }

    #[test]
    fn sampling_extremes() {
        let mut rng = trial_rng(1, 0);
        let aligned = pair(3, 4, 4);
        let opposite = pair(3, 1, 4);
        for _ in 0..1000 {
            let o = sample_outcomes(&aligned, &mut rng);
            assert_eq!(o.alice, o.bob_flipped);
            let o = sample_outcomes(&opposite, &mut rng);
            assert_eq!(o.alice, o.bob_flipped.flip());
        }
    }

    #[test]
    fn sampled_agreement_matches_singlet_statistics() {
        let p = pair(6, 1, 0);
        let trials = 1_000_000u64;
        let agree = count_trials(trials, 11, |rng| {
            let o = sample_outcomes(&p, rng);
            o.alice == o.bob_flipped
        });
        let est = McEstimate::from_counts(agree, trials, 11);
        let exact = (1.0 + (PI / 6.0).cos()) / 2.0;
        assert!((exact - 0.9330127).abs() < 1e-7);
        assert!(est.agrees_with(exact, 3.0), "{est:?}");
        let plus = count_trials(trials, 12, |rng| sample_outcomes(&p, rng).alice == Spin::Plus);
        assert!(McEstimate::from_counts(plus, trials, 12).agrees_with(0.5, 4.0));
    }

    #[test]
    fn two_party_mc() {
        let est = run_two_party_mc(&pair(3, 0, 0), 1000, 5).unwrap();
        assert_eq!(est.mean, 0.0);
        let p = pair(3, 1, 0);
        let est = run_two_party_mc(&p, 1_000_000, 5).unwrap();
        assert!(est.agrees_with(0.25, 3.0), "{est:?}");
        assert_eq!(est, run_two_party_mc(&p, 1_000_000, 5).unwrap());
        assert!(run_two_party_mc(&p, 0, 5).is_err());
    }
}
