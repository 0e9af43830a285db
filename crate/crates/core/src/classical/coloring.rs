use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingPoint};

/// The bit Alice sends for a dot: black is `+1`, white is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Black,
    White,
}

impl Colour {
    pub fn sign(self) -> i8 {
        match self {
            Colour::Black => 1,
            Colour::White => -1,
        }
    }

    pub fn flip(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Colour::Black => 0,
            Colour::White => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Colour::Black => 'B',
            Colour::White => 'W',
        }
    }
}

/// A deterministic one-bit strategy for Alice: one colour per dot.
///
/// Serialized as a string over `B`/`W` with dot 0 first. `U` marks an
/// uncoloured dot in partial patterns and is rejected here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    ring: Ring,
    colors: Vec<Colour>,
}

impl Coloring {
    pub fn new(ring: Ring, colors: Vec<Colour>) -> Result<Self> {
        if colors.len() != ring.modulus() as usize {
            return Err(Error::Invalid(format!(
                "colouring has {} dots, ring has {}",
                colors.len(),
                ring.modulus()
            )));
        }
        Ok(Self { ring, colors })
    }

    pub fn monochrome(ring: Ring, colour: Colour) -> Self {
        Self {
            ring,
            colors: vec![colour; ring.modulus() as usize],
        }
    }

    /// Dots `0..N` black, `N..2N` white.
    pub fn two_arc(ring: Ring) -> Self {
        let n = ring.half() as usize;
        let colors = (0..2 * n)
            .map(|i| if i < n { Colour::Black } else { Colour::White })
            .collect();
        Self { ring, colors }
    }

    /// Bit `i` of `mask` set means dot `i` is white. Needs `2N <= 64`.
    pub fn from_mask(ring: Ring, mask: u64) -> Self {
        let m = ring.modulus();
        assert!(m <= 64, "mask colourings need at most 64 dots");
        let colors = (0..m)
            .map(|i| if mask >> i & 1 == 1 { Colour::White } else { Colour::Black })
            .collect();
        Self { ring, colors }
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.colors.len() > 64 {
            return None;
        }
        Some(
            self.colors
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == Colour::White)
                .fold(0u64, |m, (i, _)| m | 1 << i),
        )
    }

    pub fn parse(ring: Ring, s: &str) -> Result<Self> {
        let colors = s
            .chars()
            .map(|ch| match ch {
                'B' => Ok(Colour::Black),
                'W' => Ok(Colour::White),
                'U' => Err(Error::Parse("uncoloured dot `U` in a full colouring".into())),
                other => Err(Error::Parse(format!("unknown colour symbol `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, colors)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn colors(&self) -> &[Colour] {
        &self.colors
    }

    pub fn colour(&self, dot: RingPoint) -> Colour {
        self.colors[dot.value() as usize]
    }

    pub fn count(&self, colour: Colour) -> usize {
        self.colors.iter().filter(|&&c| c == colour).count()
    }

    /// Dot `i` of the result has the colour of dot `i - k`.
    pub fn rotate(&self, k: i64) -> Self {
        let m = self.colors.len() as i64;
        let colors = (0..m)
            .map(|i| self.colors[(i - k).rem_euclid(m) as usize])
            .collect();
        Self {
            ring: self.ring,
            colors,
        }
    }

    /// Dot `i` of the result has the colour of dot `-i`.
    pub fn reflect(&self) -> Self {
        let m = self.colors.len();
        let colors = (0..m).map(|i| self.colors[(m - i) % m]).collect();
        Self {
            ring: self.ring,
            colors,
        }
    }

    pub fn flip(&self) -> Self {
        Self {
            ring: self.ring,
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    /// Every image under rotations, reflection and colour flip, with
    /// repetitions (one per group element).
    pub fn symmetry_images(&self) -> Vec<Coloring> {
        let m = self.colors.len() as i64;
        let mut out = Vec::with_capacity(4 * m as usize);
        for base in [self.clone(), self.reflect()] {
            for flipped in [base.clone(), base.flip()] {
                out.extend((0..m).map(|k| flipped.rotate(k)));
            }
        }
        out
    }

    /// Lexicographically smallest string in the symmetry orbit (`B < W`).
    pub fn canonical(&self) -> Self {
        self.symmetry_images()
            .into_iter()
            .min_by(|a, b| a.colors.cmp(&b.colors))
            .expect("orbit is non-empty")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Distinct colourings in the symmetry orbit, sorted.
    pub fn orbit(&self) -> Vec<Coloring> {
        let mut images = self.symmetry_images();
        images.sort();
        images.dedup();
        images
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.colors.iter().try_for_each(|c| write!(f, "{}", c.symbol()))
    }
}

impl FromStr for Coloring {
    type Err = Error;

    /// Infers the ring from the string length.
    fn from_str(s: &str) -> Result<Self> {
        let len = s.chars().count();
        if !len.is_multiple_of(2) {
            return Err(Error::Parse(format!("colouring length {len} is odd")));
        }
        let ring = Ring::new((len / 2) as u32)?;
        Self::parse(ring, s)
    }
}
