//! Exact analysis and simulation toolkit for the one-bit "jump / no jump"
//! promise problem on a ring of `2N` dots and its multiparty chain variant.
//!
//! * [`ring`]: ring arithmetic, the promise predicate and singlet correlations.
//! * [`quantum`]: the entanglement-assisted two-party protocol.
//! * [`classical`]: one-bit colourings, their exact error and exhaustive search,
//!   plus the three-colour (trit) protocol.
//! * [`game`]: the protocol-versus-adversary zero-sum game.
//! * [`chain`]: the multiparty whispers chain.
//! * [`report`]: experiment reports and sweeps used by the `whispers` binary.

pub mod chain;
pub mod classical;
pub mod error;
pub mod game;
pub mod quantum;
pub mod report;
pub mod ring;
pub mod rng;

pub use error::{Error, Result};
