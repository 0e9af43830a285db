//! Dots on a ring of `2N` positions, the jump / no-jump promise, and the
//! singlet-state correlation formulas built on the dot angles.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ring of `2N` dots with `N >= 3`, the smallest size for which the
/// two promise classes are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    half: u32,
}

impl Ring {
    pub fn new(half: u32) -> Result<Self> {
        if half < 3 {
            return Err(Error::HalfSizeTooSmall(half));
        }
        Ok(Self { half })
    }

    /// `N`.
    pub fn half(self) -> u32 {
        self.half
    }

    /// `2N`, the number of dots.
    pub fn modulus(self) -> u32 {
        2 * self.half
    }

    pub fn point(self, value: u32) -> Result<RingPoint> {
        RingPoint::new(value, self.modulus())
    }

    /// Reduces an arbitrary integer onto the ring.
    pub fn wrap(self, value: i64) -> RingPoint {
        let m = i64::from(self.modulus());
        RingPoint {
            value: value.rem_euclid(m) as u32,
            modulus: self.modulus(),
        }
    }

    pub fn points(self) -> impl Iterator<Item = RingPoint> {
        let modulus = self.modulus();
        (0..modulus).map(move |value| RingPoint { value, modulus })
    }

    /// All `12N` pairs allowed by the promise, ordered by `y` and then by
    /// [`Offset::ALL`].
    pub fn valid_pairs(self) -> Vec<PromisePair> {
        self.points()
            .flat_map(|y| Offset::ALL.into_iter().map(move |o| PromisePair::from_offset(y, o)))
            .collect()
    }
}

/// A dot index `0 <= value < modulus` on a ring of `modulus = 2N` dots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingPoint {
    value: u32,
    modulus: u32,
}

impl RingPoint {
    pub fn new(value: u32, modulus: u32) -> Result<Self> {
        if !modulus.is_multiple_of(2) || modulus < 6 {
            return Err(Error::Invalid(format!(
                "ring modulus must be even and at least 6, got {modulus}"
            )));
        }
        if value >= modulus {
            return Err(Error::DotOutOfRange { value, modulus });
        }
        Ok(Self { value, modulus })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn ring(self) -> Ring {
        Ring {
            half: self.modulus / 2,
        }
    }

    pub fn shifted(self, by: i64) -> RingPoint {
        self.ring().wrap(i64::from(self.value) + by)
    }

    /// `(self - other) mod 2N`.
    pub fn difference(self, other: RingPoint) -> u32 {
        (self.value + self.modulus - other.value) % self.modulus
    }
}

impl fmt::Display for RingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromiseClass {
    NoJump,
    Jump,
}

impl PromiseClass {
    /// `+1` for no jump, `-1` for jump; the product over a chain is the
    /// parity of the jump count.
    pub fn sign(self) -> i8 {
        match self {
            PromiseClass::NoJump => 1,
            PromiseClass::Jump => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Self {
        if sign >= 0 {
            PromiseClass::NoJump
        } else {
            PromiseClass::Jump
        }
    }
}

impl fmt::Display for PromiseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PromiseClass::NoJump => "no_jump",
            PromiseClass::Jump => "jump",
        })
    }
}

/// Outcome of checking a pair against the promise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Valid(PromiseClass),
    Invalid,
}

impl Classification {
    pub fn class(self) -> Option<PromiseClass> {
        match self {
            Classification::Valid(c) => Some(c),
            Classification::Invalid => None,
        }
    }
}

/// No jump iff `x - y` is in `{-1, 0, 1}`, jump iff it is in
/// `{N-1, N, N+1}` (mod `2N`).
pub fn classify(x: RingPoint, y: RingPoint) -> Result<Classification> {
    if x.modulus != y.modulus {
        return Err(Error::ModulusMismatch {
            left: x.modulus,
            right: y.modulus,
        });
    }
    let n = x.modulus / 2;
    let d = x.difference(y);
    Ok(if d == x.modulus - 1 || d <= 1 {
        Classification::Valid(PromiseClass::NoJump)
    } else if d + 1 >= n && d <= n + 1 {
        Classification::Valid(PromiseClass::Jump)
    } else {
        Classification::Invalid
    })
}

/// Position of `x` relative to `y` for a pair satisfying the promise:
/// `x = y + shift` (no jump) or `x = y + N + shift` (jump), `shift ∈ {-1,0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset {
    pub class: PromiseClass,
    pub shift: i8,
}

impl Offset {
    pub const ALL: [Offset; 6] = [
        Offset::new(PromiseClass::NoJump, -1),
        Offset::new(PromiseClass::NoJump, 0),
        Offset::new(PromiseClass::NoJump, 1),
        Offset::new(PromiseClass::Jump, -1),
        Offset::new(PromiseClass::Jump, 0),
        Offset::new(PromiseClass::Jump, 1),
    ];

    pub const fn new(class: PromiseClass, shift: i8) -> Self {
        Self { class, shift }
    }

    /// `x - y` as a signed integer (not reduced).
    pub fn displacement(self, ring: Ring) -> i64 {
        let base = match self.class {
            PromiseClass::NoJump => 0,
            PromiseClass::Jump => i64::from(ring.half()),
        };
        base + i64::from(self.shift)
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:+}", self.class, self.shift)
    }
}

impl std::str::FromStr for Offset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (class, shift) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("offset `{s}` is not of the form class:shift")))?;
        let class = match class {
            "no_jump" => PromiseClass::NoJump,
            "jump" => PromiseClass::Jump,
            other => return Err(Error::Parse(format!("unknown promise class `{other}`"))),
        };
        let shift: i8 = shift
            .parse()
            .map_err(|_| Error::Parse(format!("bad shift `{shift}` in offset `{s}`")))?;
        if !(-1..=1).contains(&shift) {
            return Err(Error::Parse(format!("shift must be -1, 0 or +1 in `{s}`")));
        }
        Ok(Offset::new(class, shift))
    }
}

impl Serialize for Offset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Offset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An input pair that has been checked against the promise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PromisePair {
    x: RingPoint,
    y: RingPoint,
    class: PromiseClass,
}

impl PromisePair {
    pub fn new(x: RingPoint, y: RingPoint) -> Result<Self> {
        match classify(x, y)? {
            Classification::Valid(class) => Ok(Self { x, y, class }),
            Classification::Invalid => Err(Error::PromiseViolated {
                x: x.value,
                y: y.value,
            }),
        }
    }

    pub fn from_offset(y: RingPoint, offset: Offset) -> Self {
        let x = y.shifted(offset.displacement(y.ring()));
        Self {
            x,
            y,
            class: offset.class,
        }
    }

    pub fn x(&self) -> RingPoint {
        self.x
    }

    pub fn y(&self) -> RingPoint {
        self.y
    }

    pub fn class(&self) -> PromiseClass {
        self.class
    }

    pub fn ring(&self) -> Ring {
        self.x.ring()
    }

    pub fn offset(&self) -> Offset {
        let n = self.x.modulus / 2;
        let d = self.x.difference(self.y);
        let centre = match self.class {
            PromiseClass::NoJump => 0,
            PromiseClass::Jump => n,
        };
        let shift = if d == (centre + self.x.modulus - 1) % self.x.modulus {
            -1
        } else if d == centre {
            0
        } else {
            1
        };
        Offset::new(self.class, shift)
    }
}

/// Measurement angle `π·v/N` of a dot.
pub fn angle_of(v: RingPoint) -> f64 {
    PI * f64::from(v.value) / f64::from(v.modulus / 2)
}

/// Probability that Alice's outcome and Bob's sign-flipped outcome agree
/// when measuring a singlet along `theta` and `phi`.
pub fn prob_same(theta: f64, phi: f64) -> f64 {
    0.5 * (1.0 + (theta - phi).cos())
}

pub fn prob_opposite(theta: f64, phi: f64) -> f64 {
    0.5 * (1.0 - (theta - phi).cos())
}
