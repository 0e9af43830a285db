//! Three-symbol messages. With `N >= 6` one trit removes the classical
//! error entirely; for `N <= 5` no three-colouring reaches zero.

use std::fmt;

use num_rational::Rational64;

use super::{message_counts, min_count_error, Colour, Coloring};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TritColour {
    Blue,
    White,
    Black,
}

impl TritColour {
    pub const ALL: [TritColour; 3] = [TritColour::Blue, TritColour::White, TritColour::Black];

    pub fn index(self) -> usize {
        match self {
            TritColour::Blue => 0,
            TritColour::White => 1,
            TritColour::Black => 2,
        }
    }

    /// `L` (bLue), `W`, `B`.
    pub fn symbol(self) -> char {
        match self {
            TritColour::Blue => 'L',
            TritColour::White => 'W',
            TritColour::Black => 'B',
        }
    }
}

impl From<Colour> for TritColour {
    fn from(c: Colour) -> Self {
        match c {
            Colour::Black => TritColour::Black,
            Colour::White => TritColour::White,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TritColoring {
    ring: Ring,
    colors: Vec<TritColour>,
}

impl TritColoring {
    pub fn new(ring: Ring, colors: Vec<TritColour>) -> Result<Self> {
        if colors.len() != ring.modulus() as usize {
            return Err(Error::Invalid(format!(
                "trit colouring has {} dots, ring has {}",
                colors.len(),
                ring.modulus()
            )));
        }
        Ok(Self { ring, colors })
    }

    pub fn parse(ring: Ring, s: &str) -> Result<Self> {
        let colors = s
            .chars()
            .map(|ch| match ch {
                'L' => Ok(TritColour::Blue),
                'W' => Ok(TritColour::White),
                'B' => Ok(TritColour::Black),
                other => Err(Error::Parse(format!("unknown trit symbol `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, colors)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn colors(&self) -> &[TritColour] {
        &self.colors
    }

    pub fn colour(&self, dot: RingPoint) -> TritColour {
        self.colors[dot.value() as usize]
    }

    pub fn count(&self, colour: TritColour) -> usize {
        self.colors.iter().filter(|&&c| c == colour).count()
    }
}

impl From<&Coloring> for TritColoring {
    fn from(c: &Coloring) -> Self {
        Self {
            ring: c.ring(),
            colors: c.colors().iter().map(|&x| x.into()).collect(),
        }
    }
}

impl fmt::Display for TritColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.colors.iter().try_for_each(|c| write!(f, "{}", c.symbol()))
    }
}

/// Blue on `{2N-1, 0, 1, 2}`, white on `{3..=N}`, black on `{N+1..=2N-2}`.
pub fn trit_coloring(ring: Ring) -> TritColoring {
    let n = ring.half();
    let colors = (0..ring.modulus())
        .map(|x| {
            if x <= 2 || x == 2 * n - 1 {
                TritColour::Blue
            } else if x <= n {
                TritColour::White
            } else {
                TritColour::Black
            }
        })
        .collect();
    TritColoring { ring, colors }
}

/// Uniform-distribution error of the min-count receiver with three messages.
pub fn evaluate_trit(coloring: &TritColoring) -> Rational64 {
    let ring = coloring.ring();
    ring.points()
        .map(|y| min_count_error(&message_counts::<3>(y, |d| coloring.colour(d).index())))
        .sum::<Rational64>()
        / Rational64::from(i64::from(ring.modulus()))
}

/// A prefix-free codeword from `{0, 10, 11}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codeword {
    Zero,
    OneZero,
    OneOne,
}

impl Codeword {
    pub fn bits(self) -> &'static str {
        match self {
            Codeword::Zero => "0",
            Codeword::OneZero => "10",
            Codeword::OneOne => "11",
        }
    }

    pub fn len(self) -> i64 {
        self.bits().len() as i64
    }
}

/// A bijection from the three colours onto `{0, 10, 11}`, indexed by
/// [`TritColour::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeAssignment([Codeword; 3]);

impl CodeAssignment {
    pub fn new(blue: Codeword, white: Codeword, black: Codeword) -> Result<Self> {
        let words = [blue, white, black];
        let distinct = words[0] != words[1] && words[1] != words[2] && words[0] != words[2];
        if !distinct {
            return Err(Error::Invalid("codeword assignment must be a bijection".into()));
        }
        Ok(Self(words))
    }

    pub fn codeword(&self, colour: TritColour) -> Codeword {
        self.0[colour.index()]
    }
}

/// Mean codeword length in bits with `x` uniform over the dots.
pub fn expected_code_length(coloring: &TritColoring, assignment: &CodeAssignment) -> Rational64 {
    let total: i64 = TritColour::ALL
        .iter()
        .map(|&c| coloring.count(c) as i64 * assignment.codeword(c).len())
        .sum();
    Rational64::new(total, i64::from(coloring.ring().modulus()))
}

/// Gives the one-bit codeword to the most frequent colour (ties to the
/// earlier colour in [`TritColour::ALL`]).
pub fn best_code_assignment(coloring: &TritColoring) -> (CodeAssignment, Rational64) {
    let mut order = TritColour::ALL;
    order.sort_by_key(|&c| std::cmp::Reverse(coloring.count(c)));
    let mut words = [Codeword::Zero; 3];
    for (colour, word) in order.iter().zip([Codeword::Zero, Codeword::OneZero, Codeword::OneOne]) {
        words[colour.index()] = word;
    }
    let assignment = CodeAssignment(words);
    (assignment, expected_code_length(coloring, &assignment))
}
