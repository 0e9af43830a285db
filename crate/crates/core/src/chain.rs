//! The whispers chain: `M` parties in a row, party `i` holding `x_i` and
//! party `i+1` holding `y_{i+1}` with each pair satisfying the promise. One
//! bit travels down the row and the last party announces the parity of the
//! number of jumps.
//!
//! Link errors are independent, so the chain errs exactly when an odd
//! number of links err: `(1 - Π(1 - 2ε_i)) / 2`.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classical::{decide, neighborhood, per_y_error, search_optimal, sign_rule, Colour, Coloring, SearchLimits};
use crate::error::{Error, Result};
use crate::quantum::{link_error_probability, sample_correlated, worst_case_bound, worst_case_error, McEstimate, Spin};
use crate::ring::{angle_of, prob_same, Offset, PromiseClass, PromisePair, Ring};
use crate::rng::count_trials;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_sign(sign: i8) -> Self {
        if sign >= 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn of_classes(classes: impl IntoIterator<Item = PromiseClass>) -> Self {
        Self::from_sign(classes.into_iter().map(PromiseClass::sign).product())
    }
}

/// One link as stored in chain files: where `x_i` sits relative to `y_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkRecord {
    pub offset_class: Offset,
    pub y: u32,
}

/// Serialized form of a [`ChainSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainRecord {
    #[serde(rename = "M")]
    pub parties: usize,
    #[serde(rename = "N")]
    pub half: u32,
    pub links: Vec<LinkRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    parties: usize,
    ring: Ring,
    links: Vec<PromisePair>,
    true_parity: Parity,
    seed: Option<u64>,
}

/// How the links of a new chain are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainInput {
    /// One class per link, with `x` exactly at `y` or opposite `y`, `y = 0`.
    Classes(Vec<PromiseClass>),
    Links(Vec<LinkRecord>),
    /// Class, shift and `y` uniform and independent per link.
    Seeded(u64),
}

impl ChainSpec {
    pub fn new(parties: usize, ring: Ring, links: Vec<PromisePair>) -> Result<Self> {
        if parties < 2 {
            return Err(Error::Invalid(format!("a chain needs at least 2 parties, got {parties}")));
        }
        if links.len() != parties - 1 {
            return Err(Error::Invalid(format!(
                "{parties} parties need {} links, got {}",
                parties - 1,
                links.len()
            )));
        }
        if let Some(bad) = links.iter().find(|l| l.ring() != ring) {
            return Err(Error::ModulusMismatch {
                left: bad.ring().modulus(),
                right: ring.modulus(),
            });
        }
        let true_parity = Parity::of_classes(links.iter().map(|l| l.class()));
        Ok(Self {
            parties,
            ring,
            links,
            true_parity,
            seed: None,
        })
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn links(&self) -> &[PromisePair] {
        &self.links
    }

    pub fn true_parity(&self) -> Parity {
        self.true_parity
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `c = M / N`.
    pub fn density(&self) -> f64 {
        self.parties as f64 / f64::from(self.ring.half())
    }

    pub fn to_record(&self) -> ChainRecord {
        ChainRecord {
            parties: self.parties,
            half: self.ring.half(),
            links: self
                .links
                .iter()
                .map(|l| LinkRecord {
                    offset_class: l.offset(),
                    y: l.y().value(),
                })
                .collect(),
            seed: self.seed,
        }
    }

    pub fn from_record(record: &ChainRecord) -> Result<Self> {
        let ring = Ring::new(record.half)?;
        let mut spec = make_chain(record.parties, ring, ChainInput::Links(record.links.clone()))?;
        spec.seed = record.seed;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("chain records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: ChainRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("chain file: {e}")))?;
        Self::from_record(&record)
    }
}

pub fn make_chain(parties: usize, ring: Ring, input: ChainInput) -> Result<ChainSpec> {
    let links_needed = parties.saturating_sub(1);
    let (links, seed) = match input {
        ChainInput::Classes(classes) => {
            let y = ring.wrap(0);
            let links = classes
                .into_iter()
                .map(|class| PromisePair::from_offset(y, Offset::new(class, 0)))
                .collect();
            (links, None)
        }
        ChainInput::Links(records) => {
            let links = records
                .iter()
                .map(|r| Ok(PromisePair::from_offset(ring.point(r.y)?, r.offset_class)))
                .collect::<Result<Vec<_>>>()?;
            (links, None)
        }
        ChainInput::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let links = (0..links_needed)
                .map(|_| {
                    let offset = Offset::ALL[rng.gen_range(0..6)];
                    let y = ring.wrap(i64::from(rng.gen_range(0..ring.modulus())));
                    PromisePair::from_offset(y, offset)
                })
                .collect();
            (links, Some(seed))
        }
    };
    let mut spec = ChainSpec::new(parties, ring, links)?;
    spec.seed = seed;
    Ok(spec)
}

/// Independent per-link error probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkErrorProfile {
    per_link: Vec<f64>,
}

impl LinkErrorProfile {
    pub fn new(per_link: Vec<f64>) -> Result<Self> {
        if let Some(bad) = per_link.iter().find(|e| !(0.0..=0.5).contains(*e)) {
            return Err(Error::Invalid(format!("link error {bad} is outside [0, 1/2]")));
        }
        Ok(Self { per_link })
    }

    pub fn per_link(&self) -> &[f64] {
        &self.per_link
    }

    pub fn sum(&self) -> f64 {
        self.per_link.iter().sum()
    }
}

/// Probability that an odd number of links err.
pub fn parity_error_exact(profile: &LinkErrorProfile) -> f64 {
    let survive: f64 = profile.per_link.iter().map(|e| 1.0 - 2.0 * e).product();
    0.5 * (1.0 - survive)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumChainError {
    pub exact: f64,
    /// `Σ ε_i`.
    pub union_bound: f64,
    /// `(M-1) sin²(π/2N)`.
    pub worst_links: f64,
    /// `M (π/2N)²`, which is `cπ²/(4N)` with `M = cN`.
    pub density_bound: f64,
}

pub fn quantum_link_profile(spec: &ChainSpec) -> LinkErrorProfile {
    // Clamp rounding noise: a link error is a probability in [0, 1/2].
    LinkErrorProfile::new(spec.links.iter().map(|l| link_error_probability(l).clamp(0.0, 0.5)).collect())
        .expect("quantum link errors are at most sin²(π/2N)")
}

pub fn quantum_chain_error(spec: &ChainSpec) -> QuantumChainError {
    let profile = quantum_link_profile(spec);
    QuantumChainError {
        exact: parity_error_exact(&profile),
        union_bound: profile.sum(),
        worst_links: (spec.parties - 1) as f64 * worst_case_error(spec.ring),
        density_bound: spec.parties as f64 * worst_case_bound(spec.ring),
    }
}

/// `cπ²/(4N)`.
pub fn quantum_density_bound(c: f64, ring: Ring) -> f64 {
    c * PI * PI / (4.0 * f64::from(ring.half()))
}

/// Per-link error of the classical chain protocol for the realized `y`s.
///
/// The first receiver sees the raw colour and uses the min-count rule.
/// Every later receiver sees the colour multiplied by the running parity and
/// must use a [`sign_rule`].
pub fn classical_link_profile(spec: &ChainSpec, coloring: &Coloring) -> Result<LinkErrorProfile> {
    if coloring.ring() != spec.ring {
        return Err(Error::ModulusMismatch {
            left: coloring.ring().modulus(),
            right: spec.ring.modulus(),
        });
    }
    let per_link = spec
        .links
        .iter()
        .enumerate()
        .map(|(i, link)| {
            let e = if i == 0 {
                per_y_error(coloring, link.y())
            } else {
                sign_rule(coloring, link.y()).1
            };
            *e.numer() as f64 / *e.denom() as f64
        })
        .collect();
    LinkErrorProfile::new(per_link)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalChainError {
    pub exact: f64,
    pub union_sum: f64,
    /// `(M-1)/(3N)`.
    pub small_c_bound: f64,
    /// `1/2 - e^(-4c/3)/2` with `c = M/N`.
    pub big_n_formula: f64,
}

pub fn classical_chain_error(spec: &ChainSpec, coloring: &Coloring) -> Result<ClassicalChainError> {
    let profile = classical_link_profile(spec, coloring)?;
    Ok(ClassicalChainError {
        exact: parity_error_exact(&profile),
        union_sum: profile.sum(),
        small_c_bound: (spec.parties - 1) as f64 / (3.0 * f64::from(spec.ring.half())),
        big_n_formula: classical_chain_big_n_formula(spec.density())?,
    })
}

/// The searched optimum when the ring is within the search cap, otherwise
/// the two-arc colouring (the optimum for every searchable ring).
pub fn default_chain_coloring(ring: Ring, limits: SearchLimits) -> Coloring {
    match search_optimal(ring, true, limits) {
        Ok(found) => found.minimizers[0].clone(),
        Err(_) => Coloring::two_arc(ring),
    }
}

/// `1/2 - e^(-4c/3)/2`.
pub fn classical_chain_big_n_formula(c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Invalid(format!("density c must be positive, got {c}")));
    }
    Ok(0.5 - 0.5 * (-4.0 * c / 3.0).exp())
}

/// `1/2 (1 - (1 - 2ε)^(cN - 1))`: the composition law for `cN - 1` links of
/// error `ε`.
pub fn composition_law_value(c: f64, link_error: f64, ring: Ring) -> f64 {
    let links = c * f64::from(ring.half()) - 1.0;
    0.5 * (1.0 - (1.0 - 2.0 * link_error).powf(links))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainMode<'a> {
    Quantum,
    /// Every link uses this colouring.
    Classical(&'a Coloring),
}

/// What happened in one simulated run of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainTranscript {
    pub announced: Parity,
    pub truth: Parity,
    /// Links whose own jump / no-jump verdict was wrong.
    pub link_errors: usize,
}

impl ChainTranscript {
    pub fn is_error(&self) -> bool {
        self.announced != self.truth
    }
}

fn spin(sign: i8) -> Spin {
    if sign >= 0 {
        Spin::Plus
    } else {
        Spin::Minus
    }
}

fn colour_spin(c: Colour) -> Spin {
    spin(c.sign())
}

/// Runs the chain once.
///
/// Quantum: every party multiplies the incoming bit by its two sign-flipped
/// and unflipped outcomes; the last party multiplies by its own outcome.
/// Classical: `x_i` is redrawn uniformly from the six candidates around the
/// realized `y_{i+1}`, and each party forwards its parity estimate times the
/// colour of its own `x`.
pub fn chain_trial<R: Rng + ?Sized>(spec: &ChainSpec, mode: ChainMode<'_>, rng: &mut R) -> ChainTranscript {
    match mode {
        ChainMode::Quantum => {
            let mut message = Spin::Plus;
            let mut link_errors = 0;
            for (i, link) in spec.links.iter().enumerate() {
                let p_same = prob_same(angle_of(link.x()), angle_of(link.y()));
                let outcomes = sample_correlated(p_same, rng);
                if i == 0 {
                    message = outcomes.alice;
                } else {
                    message = message * outcomes.alice;
                }
                message = message * outcomes.bob_flipped;
                let verdict = PromiseClass::from_sign((outcomes.alice * outcomes.bob_flipped).sign());
                link_errors += usize::from(verdict != link.class());
            }
            ChainTranscript {
                announced: Parity::from_sign(message.sign()),
                truth: spec.true_parity,
                link_errors,
            }
        }
        ChainMode::Classical(coloring) => {
            let mut classes = Vec::with_capacity(spec.links.len());
            let mut link_errors = 0;
            let mut outgoing = Spin::Plus;
            for (i, link) in spec.links.iter().enumerate() {
                let y = link.y();
                let (no_jump, jump) = neighborhood(y);
                let pick = rng.gen_range(0..6);
                let (x, class) = if pick < 3 {
                    (no_jump[pick], PromiseClass::NoJump)
                } else {
                    (jump[pick - 3], PromiseClass::Jump)
                };
                classes.push(class);
                let colour = coloring.colour(x);
                let sent = if i == 0 { colour_spin(colour) } else { outgoing * colour_spin(colour) };
                // `estimate` is the receiver's running parity including this link.
                let (estimate, verdict) = if i == 0 {
                    let d = decide(coloring, colour, y);
                    (spin(d.sign()), d)
                } else {
                    let s = spin(sign_rule(coloring, y).0);
                    (sent * s, PromiseClass::from_sign((colour_spin(colour) * s).sign()))
                };
                link_errors += usize::from(verdict != class);
                outgoing = estimate;
            }
            ChainTranscript {
                announced: Parity::from_sign(outgoing.sign()),
                truth: Parity::of_classes(classes),
                link_errors,
            }
        }
    }
}

/// Monte Carlo error rate of the chain; reproducible for a given seed and
/// independent of the thread count.
pub fn simulate_chain(spec: &ChainSpec, mode: ChainMode<'_>, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    if let ChainMode::Classical(c) = mode {
        if c.ring() != spec.ring {
            return Err(Error::ModulusMismatch {
                left: c.ring().modulus(),
                right: spec.ring.modulus(),
            });
        }
    }
    let errors = count_trials(trials, seed, |rng| chain_trial(spec, mode, rng).is_error());
    Ok(McEstimate::from_counts(errors, trials, seed))
}

/// Exact error for a mode, matching what [`simulate_chain`] estimates.
pub fn exact_chain_error(spec: &ChainSpec, mode: ChainMode<'_>) -> Result<f64> {
    match mode {
        ChainMode::Quantum => Ok(quantum_chain_error(spec).exact),
        ChainMode::Classical(c) => Ok(parity_error_exact(&classical_link_profile(spec, c)?)),
    }
}
