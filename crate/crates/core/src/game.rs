//! The zero-sum game between the protocol designers, who mix over
//! colourings using a shared secret, and a malicious input provider, who
//! picks a distribution over the pairs allowed by the promise.
//!
//! In the game each colouring is played together with its min-count
//! receiver, which does not depend on the adversary's distribution; a cell
//! where both classes have equally many candidates is answered by a fair
//! coin, so it costs 1/2 on either class. For a distribution fixed in
//! advance, [`payoff`] instead lets Bob use the Bayes-optimal receiver for
//! that distribution.

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{canonical_colorings, message_counts, Coloring};
use crate::error::{Error, Result};
use crate::ring::{Offset, PromiseClass, PromisePair, Ring};

const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Position of a pair in [`Ring::valid_pairs`].
pub fn pair_index(pair: &PromisePair) -> usize {
    let offset = pair.offset();
    let slot = Offset::ALL.iter().position(|&o| o == offset).expect("valid offset");
    pair.y().value() as usize * 6 + slot
}

/// A probability distribution over the `12N` valid pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution {
    ring: Ring,
    weights: Vec<f64>,
}

impl InputDistribution {
    /// `weights[i]` belongs to `ring.valid_pairs()[i]`.
    pub fn new(ring: Ring, weights: Vec<f64>) -> Result<Self> {
        let expected = 12 * ring.half() as usize;
        if weights.len() != expected {
            return Err(Error::Invalid(format!(
                "distribution has {} weights, ring has {expected} valid pairs",
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::Invalid("distribution weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Invalid(format!("distribution sums to {total}, not 1")));
        }
        Ok(Self { ring, weights })
    }

    pub fn uniform(ring: Ring) -> Self {
        let count = 12 * ring.half() as usize;
        Self {
            ring,
            weights: vec![1.0 / count as f64; count],
        }
    }

    pub fn point_mass(pair: &PromisePair) -> Self {
        Self::uniform_over(pair.ring(), std::slice::from_ref(pair))
    }

    pub fn uniform_over(ring: Ring, pairs: &[PromisePair]) -> Self {
        let mut weights = vec![0.0; 12 * ring.half() as usize];
        for p in pairs {
            weights[pair_index(p)] += 1.0 / pairs.len() as f64;
        }
        Self { ring, weights }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, pair: &PromisePair) -> f64 {
        self.weights[pair_index(pair)]
    }

    /// Average over rotations and the reflection applied to both `x` and `y`.
    pub fn symmetrized(&self) -> Self {
        let pairs = self.ring.valid_pairs();
        let mut weights = vec![0.0; pairs.len()];
        let group = 2 * self.ring.modulus() as usize;
        for (pair, &w) in pairs.iter().zip(&self.weights) {
            for image in pair_images(pair) {
                weights[pair_index(&image)] += w / group as f64;
            }
        }
        Self {
            ring: self.ring,
            weights,
        }
    }
}

fn pair_images(pair: &PromisePair) -> Vec<PromisePair> {
    let ring = pair.ring();
    let (x, y) = (i64::from(pair.x().value()), i64::from(pair.y().value()));
    let mut out = Vec::with_capacity(2 * ring.modulus() as usize);
    for (x0, y0) in [(x, y), (-x, -y)] {
        for k in 0..i64::from(ring.modulus()) {
            out.push(PromisePair::new(ring.wrap(x0 + k), ring.wrap(y0 + k)).expect("symmetry keeps the promise"));
        }
    }
    out
}

/// Expected error when Bob uses the Bayes-optimal receiver for `dist`:
/// for every `y` and received colour he announces the class with the larger
/// weight.
pub fn payoff(coloring: &Coloring, dist: &InputDistribution) -> Result<f64> {
    if coloring.ring() != dist.ring() {
        return Err(Error::ModulusMismatch {
            left: coloring.ring().modulus(),
            right: dist.ring().modulus(),
        });
    }
    let ring = dist.ring();
    let mut cells = vec![[0.0f64; 2]; 2 * ring.modulus() as usize];
    for (pair, &w) in ring.valid_pairs().iter().zip(dist.weights()) {
        let cell = 2 * pair.y().value() as usize + coloring.colour(pair.x()).index();
        let class = match pair.class() {
            PromiseClass::NoJump => 0,
            PromiseClass::Jump => 1,
        };
        cells[cell][class] += w;
    }
    Ok(cells.iter().map(|[a, b]| a.min(*b)).sum())
}

/// Error probability of the min-count receiver with coin-flip ties on one
/// pair: 0, 1/2 or 1.
pub fn receiver_error(coloring: &Coloring, pair: &PromisePair) -> f64 {
    let message = coloring.colour(pair.x()).index();
    let (a, b) = message_counts::<2>(pair.y(), |d| coloring.colour(d).index())[message];
    match (a.cmp(&b), pair.class()) {
        (std::cmp::Ordering::Equal, _) => 0.5,
        (std::cmp::Ordering::Greater, PromiseClass::NoJump) | (std::cmp::Ordering::Less, PromiseClass::Jump) => 0.0,
        _ => 1.0,
    }
}

/// A shared-randomness protocol: a distribution over colourings.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy {
    support: Vec<(Coloring, f64)>,
}

impl MixedStrategy {
    pub fn new(support: Vec<(Coloring, f64)>) -> Result<Self> {
        let first = support
            .first()
            .ok_or_else(|| Error::Invalid("mixed strategy needs a non-empty support".into()))?;
        let ring = first.0.ring();
        if support.iter().any(|(c, _)| c.ring() != ring) {
            return Err(Error::Invalid("support colourings live on different rings".into()));
        }
        if support.iter().any(|&(_, p)| !(p >= 0.0)) {
            return Err(Error::Invalid("probabilities must be non-negative".into()));
        }
        let total: f64 = support.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Invalid(format!("probabilities sum to {total}, not 1")));
        }
        let mut seen: Vec<&Coloring> = support.iter().map(|(c, _)| c).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("support colourings must be distinct".into()));
        }
        Ok(Self { support })
    }

    pub fn pure(coloring: Coloring) -> Self {
        Self {
            support: vec![(coloring, 1.0)],
        }
    }

    /// Uniform mixture over the given (distinct) colourings.
    pub fn uniform(colorings: Vec<Coloring>) -> Result<Self> {
        let p = 1.0 / colorings.len() as f64;
        Self::new(colorings.into_iter().map(|c| (c, p)).collect())
    }

    pub fn support(&self) -> &[(Coloring, f64)] {
        &self.support
    }

    pub fn ring(&self) -> Ring {
        self.support[0].0.ring()
    }

    /// Replaces each colouring by the uniform mixture over its symmetry
    /// orbit.
    pub fn expand_orbits(&self) -> Self {
        let mut weights: Vec<(Coloring, f64)> = Vec::new();
        for (c, p) in &self.support {
            let orbit = c.orbit();
            let share = p / orbit.len() as f64;
            for member in orbit {
                match weights.iter_mut().find(|(existing, _)| *existing == member) {
                    Some((_, w)) => *w += share,
                    None => weights.push((member, share)),
                }
            }
        }
        weights.sort_by(|a, b| a.0.cmp(&b.0));
        Self { support: weights }
    }

    /// Probability that the mixture errs on `pair`, see [`receiver_error`].
    pub fn error_on(&self, pair: &PromisePair) -> f64 {
        self.support.iter().map(|(c, p)| p * receiver_error(c, pair)).sum()
    }
}

/// The adversary's best reply to a mixed strategy: the uniform distribution
/// over all pairs attaining the largest error, and that error.
pub fn best_response_distribution(strategy: &MixedStrategy) -> (InputDistribution, f64) {
    let ring = strategy.ring();
    let pairs = ring.valid_pairs();
    let errors: Vec<f64> = pairs.iter().map(|p| strategy.error_on(p)).collect();
    let worst = errors.iter().copied().fold(0.0f64, f64::max);
    let argmax: Vec<PromisePair> = pairs
        .iter()
        .zip(&errors)
        .filter(|(_, &e)| worst - e <= NORMALIZATION_TOLERANCE)
        .map(|(p, _)| *p)
        .collect();
    (InputDistribution::uniform_over(ring, &argmax), worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerandomizationReport {
    /// `Σ p_c · payoff(c, dist)`.
    pub mixture_error: f64,
    /// `min_c payoff(c, dist)` over the support.
    pub best_error: f64,
    /// A support colouring attaining `best_error`.
    pub witness: Coloring,
}

impl DerandomizationReport {
    pub fn holds(&self) -> bool {
        self.best_error <= self.mixture_error + NORMALIZATION_TOLERANCE
    }
}

/// For a fixed distribution some colouring in the support does at least as
/// well as the whole mixture.
pub fn derandomization_check(mix: &MixedStrategy, dist: &InputDistribution) -> Result<DerandomizationReport> {
    let mut mixture_error = 0.0;
    let mut best: Option<(f64, &Coloring)> = None;
    for (c, p) in mix.support() {
        let e = payoff(c, dist)?;
        mixture_error += p * e;
        if best.is_none_or(|(b, _)| e < b) {
            best = Some((e, c));
        }
    }
    let (best_error, witness) = best.expect("non-empty support");
    Ok(DerandomizationReport {
        mixture_error,
        best_error,
        witness: witness.clone(),
    })
}

/// A dense payoff matrix; the row player minimizes.
#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl GameMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "payoff matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// `max_j min_i A[i][j]`: what the column player secures with a pure strategy.
    pub fn pure_lower_bound(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.entry(i, j)).fold(f64::INFINITY, f64::min))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min_i max_j A[i][j]`.
    pub fn pure_upper_bound(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().copied().fold(f64::NEG_INFINITY, f64::max))
            .fold(f64::INFINITY, f64::min)
    }

    /// Alternating fictitious play: each player best-responds to the
    /// other's empirical mixture, the column player seeing the row player's
    /// latest move. Stops once the best bounds seen are within `tolerance`.
    /// Bounds are sampled at powers of two, every `max_iterations / 200`
    /// iterations and at the last iteration.
    pub fn fictitious_play(&self, max_iterations: u64, tolerance: f64) -> PlaySolution {
        let mut row_totals = vec![0.0; self.rows];
        let mut col_totals = vec![0.0; self.cols];
        let mut row_counts = vec![0u64; self.rows];
        let mut col_counts = vec![0u64; self.cols];
        let mut best_upper = (f64::INFINITY, Vec::new());
        let mut best_lower = (f64::NEG_INFINITY, Vec::new());
        let mut history = Vec::new();
        let report_every = (max_iterations / 200).max(1);
        let mut row = 0usize;
        let mut iterations = 0;

        for t in 1..=max_iterations {
            iterations = t;
            row_counts[row] += 1;
            for (total, &a) in col_totals.iter_mut().zip(self.row(row)) {
                *total += a;
            }
            let col = argmax(&col_totals);
            col_counts[col] += 1;
            for (i, total) in row_totals.iter_mut().enumerate() {
                *total += self.entry(i, col);
            }

            let upper = col_totals[col] / t as f64;
            let lower = row_totals[argmin(&row_totals)] / t as f64;
            if upper < best_upper.0 {
                best_upper = (upper, normalize(&row_counts, t));
            }
            if lower > best_lower.0 {
                best_lower = (lower, normalize(&col_counts, t));
            }
            let gap = best_upper.0 - best_lower.0;
            let done = gap <= tolerance;
            if t.is_power_of_two() || t % report_every == 0 || done || t == max_iterations {
                history.push(BoundSample {
                    iteration: t,
                    lower: best_lower.0,
                    upper: best_upper.0,
                });
            }
            if done {
                break;
            }
            row = argmin(&row_totals);
        }

        PlaySolution {
            lower: best_lower.0,
            upper: best_upper.0,
            row_mix: best_upper.1,
            col_mix: best_lower.1,
            iterations,
            converged: best_upper.0 - best_lower.0 <= tolerance,
            history,
        }
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}

fn normalize(counts: &[u64], t: u64) -> Vec<f64> {
    counts.iter().map(|&c| c as f64 / t as f64).collect()
}

/// Running bounds on the game value at one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSample {
    pub iteration: u64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaySolution {
    pub lower: f64,
    pub upper: f64,
    /// Row mixture certifying `upper`.
    pub row_mix: Vec<f64>,
    /// Column mixture certifying `lower`.
    pub col_mix: Vec<f64>,
    pub iterations: u64,
    pub converged: bool,
    pub history: Vec<BoundSample>,
}

/// Every colouring against every valid pair, entries from [`receiver_error`].
pub fn full_game_matrix(ring: Ring) -> Result<(Vec<Coloring>, Vec<PromisePair>, GameMatrix)> {
    if ring.modulus() > 24 {
        return Err(Error::ResourceCap(format!("full game matrix at N={} is too large", ring.half())));
    }
    let pairs = ring.valid_pairs();
    let colorings: Vec<Coloring> = (0..1u64 << ring.modulus()).map(|m| Coloring::from_mask(ring, m)).collect();
    let entries = colorings
        .par_iter()
        .flat_map_iter(|c| pairs.iter().map(move |p| receiver_error(c, p)))
        .collect();
    let matrix = GameMatrix::new(colorings.len(), pairs.len(), entries)?;
    Ok((colorings, pairs, matrix))
}

/// One row per colouring orbit: the error of the uniform mixture over the
/// orbit. An optimal protocol may be taken symmetric, so this matrix has
/// the same value as the full one.
pub fn orbit_game_matrix(ring: Ring) -> (Vec<Coloring>, Vec<PromisePair>, GameMatrix) {
    let pairs = ring.valid_pairs();
    let reps = canonical_colorings(ring);
    let entries = reps
        .par_iter()
        .flat_map_iter(|c| {
            let orbit = c.orbit();
            let size = orbit.len() as f64;
            pairs
                .iter()
                .map(|p| orbit.iter().map(|g| receiver_error(g, p)).sum::<f64>() / size)
                .collect::<Vec<_>>()
        })
        .collect();
    let matrix = GameMatrix::new(reps.len(), pairs.len(), entries).expect("shape matches");
    (reps, pairs, matrix)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimaxOptions {
    pub max_iterations: u64,
    pub tolerance: f64,
    /// Largest `N` accepted.
    pub max_half: u32,
}

impl Default for MinimaxOptions {
    fn default() -> Self {
        Self {
            max_iterations: 2_000_000,
            tolerance: 1e-3,
            max_half: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    /// Midpoint of the certified bounds.
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub gap: f64,
    /// Canonical colourings, each standing for the uniform mixture over its
    /// orbit; see [`MixedStrategy::expand_orbits`].
    pub protocol_mix: MixedStrategy,
    /// Symmetrized adversary distribution certifying `lower`.
    pub adversary_dist: InputDistribution,
    pub iterations: u64,
    pub converged: bool,
    pub history: Vec<BoundSample>,
}

/// Solves the protocol-versus-adversary game by fictitious play over
/// colouring orbits. An unconverged run is returned with `converged = false`.
pub fn solve_minimax(ring: Ring, options: MinimaxOptions) -> Result<GameSolution> {
    if ring.half() > options.max_half {
        return Err(Error::ResourceCap(format!(
            "minimax at N={} exceeds the strategy-space cap N={}",
            ring.half(),
            options.max_half
        )));
    }
    if options.max_iterations == 0 || !(options.tolerance >= 0.0) {
        return Err(Error::Invalid("need max_iterations >= 1 and tolerance >= 0".into()));
    }
    let (reps, _, matrix) = orbit_game_matrix(ring);
    let play = matrix.fictitious_play(options.max_iterations, options.tolerance);

    let support: Vec<(Coloring, f64)> = reps
        .into_iter()
        .zip(play.row_mix.iter().copied())
        .filter(|&(_, p)| p > 0.0)
        .collect();
    let protocol_mix = MixedStrategy::new(support)?;
    let adversary_dist = InputDistribution::new(ring, play.col_mix.clone())?.symmetrized();

    Ok(GameSolution {
        value: 0.5 * (play.lower + play.upper),
        lower: play.lower,
        upper: play.upper,
        gap: play.upper - play.lower,
        protocol_mix,
        adversary_dist,
        iterations: play.iterations,
        converged: play.converged,
        history: play.history,
    })
}

/// Bounds on the game in which Bob's receiver is an arbitrary table
/// `(y, colour) -> class` chosen jointly with the colouring.
///
/// Rows are never enumerated: the protocol's best reply to the adversary's
/// empirical mixture is a colouring with the Bayes-optimal receiver for that
/// mixture, which [`payoff`] already computes. Fictitious play runs with
/// these best-response oracles.
pub fn explicit_receiver_bounds(ring: Ring, max_iterations: u64, tolerance: f64) -> Result<(f64, f64)> {
    if ring.modulus() > 24 {
        return Err(Error::ResourceCap(format!("explicit receivers at N={}", ring.half())));
    }
    let pairs = ring.valid_pairs();
    let colorings: Vec<Coloring> = (0..1u64 << ring.modulus()).map(|m| Coloring::from_mask(ring, m)).collect();
    let classes: Vec<usize> = pairs.iter().map(|p| (p.class() == PromiseClass::Jump) as usize).collect();
    let cells: Vec<Vec<usize>> = colorings
        .iter()
        .map(|c| pairs.iter().map(|p| 2 * p.y().value() as usize + c.colour(p.x()).index()).collect())
        .collect();

    let mut col_counts = vec![0.0f64; pairs.len()];
    let mut col_totals = vec![0.0f64; pairs.len()];
    let (mut lower, mut upper) = (f64::NEG_INFINITY, f64::INFINITY);
    // The adversary opens with the uniform distribution.
    let mut col_weights = vec![1.0; pairs.len()];
    for t in 1..=max_iterations {
        // Protocol best reply: colouring plus Bayes receiver for `col_weights`.
        let mut best = (f64::INFINITY, 0usize, Vec::new());
        for (ci, cell_of) in cells.iter().enumerate() {
            let mut mass = vec![[0.0f64; 2]; 2 * ring.modulus() as usize];
            for (j, &w) in col_weights.iter().enumerate() {
                mass[cell_of[j]][classes[j]] += w;
            }
            let err: f64 = mass.iter().map(|[a, b]| a.min(*b)).sum();
            if err < best.0 {
                let guess = mass.iter().map(|[a, b]| usize::from(b > a)).collect();
                best = (err, ci, guess);
            }
        }
        let total_weight: f64 = col_weights.iter().sum();
        lower = lower.max(best.0 / total_weight);
        let (_, ci, guess) = best;
        for (j, total) in col_totals.iter_mut().enumerate() {
            *total += f64::from(u8::from(guess[cells[ci][j]] != classes[j]));
        }
        let col = argmax(&col_totals);
        upper = upper.min(col_totals[col] / t as f64);
        col_counts[col] += 1.0;
        col_weights.clone_from(&col_counts);
        if upper - lower <= tolerance {
            break;
        }
    }
    Ok((lower, upper))
}
