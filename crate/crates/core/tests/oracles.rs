//! Sanity checks of the test oracles themselves.

mod common;

use common::*;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn twelve_n_promise_pairs() {
    for n in 3..10 {
        assert_eq!(promise_pairs(n).len(), 12 * n as usize);
    }
}

#[test]
fn game_oracle_on_small_matrices() {
    // Matching pennies in loss form.
    let pennies = vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]];
    assert_eq!(game_value_exact(&pennies), big(1, 2));
    // Saddle point.
    let saddle = vec![vec![r(1, 4), r(1, 2)], vec![r(3, 4), r(1, 1)]];
    assert_eq!(game_value_exact(&saddle), big(1, 2));
    let zero = vec![vec![r(0, 1); 3]; 2];
    assert!(game_value_exact(&zero).is_zero());
    let one = vec![vec![r(1, 1); 3]; 2];
    assert!(game_value_exact(&one).is_one());
}

#[test]
fn odd_error_dp() {
    assert_eq!(odd_error_probability(&[0.0, 0.0]), 0.0);
    assert!((odd_error_probability(&[0.1, 0.2]) - (0.1 * 0.8 + 0.9 * 0.2)).abs() < 1e-15);
}
