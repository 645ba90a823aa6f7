//! The seven lantern twists acting on `π1` of the four-holed sphere.
//!
//! The basepoint sits on the outer boundary `d`, and `x1, x2, x3` are loops
//! around the inner holes `a, b, c`. Twists about the inner boundaries act
//! trivially; the outer boundary twist is conjugation by `x1 x2 x3`. `z` and
//! `x` are pair twists; `y` is `z` conjugated by a half twist.

use std::fmt;
use std::str::FromStr;

use super::free::{boundary_word, FreeAut, FreeWord};
use crate::error::{param, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistName {
    A,
    B,
    C,
    D,
    X,
    Y,
    Z,
}

impl TwistName {
    pub const ALL: [TwistName; 7] = [Self::A, Self::B, Self::C, Self::D, Self::X, Self::Y, Self::Z];
    pub const BOUNDARY: [TwistName; 4] = [Self::A, Self::B, Self::C, Self::D];
    pub const INTERIOR: [TwistName; 3] = [Self::X, Self::Y, Self::Z];

    pub fn letter(self) -> char {
        match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
            Self::X => 'x',
            Self::Y => 'y',
            Self::Z => 'z',
        }
    }

    pub fn from_letter(ch: char) -> Option<Self> {
        Self::ALL.into_iter().find(|n| n.letter() == ch.to_ascii_lowercase())
    }

    /// Boundary curves are disjoint from all seven curves, so their twists are central.
    pub fn is_boundary(self) -> bool {
        Self::BOUNDARY.contains(&self)
    }

    pub(crate) fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for TwistName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}", self.letter())
    }
}

impl FromStr for TwistName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().and_then(Self::from_letter), chars.next()) {
            (Some(n), None) => Ok(n),
            _ => param(format!("unknown twist name {s:?}")),
        }
    }
}

fn w(letters: &[i8]) -> FreeWord {
    FreeWord::new(letters).expect("static word")
}

/// Twist about the curve enclosing holes `i` and `i + 1`: both loops are
/// conjugated by their product.
fn pair_twist(i: i8) -> FreeAut {
    let u = w(&[i, i + 1]);
    let mut fwd = [1, 2, 3].map(FreeWord::generator);
    let mut inv = fwd.clone();
    for k in [i, i + 1] {
        let slot = k as usize - 1;
        fwd[slot] = fwd[slot].conjugate_by(&u);
        inv[slot] = inv[slot].conjugate_by(&u.inverse());
    }
    FreeAut::new(fwd, inv).expect("pair twist is invertible")
}

/// Half twist exchanging holes `b` and `c`: `x2 ↦ x2 x3 x2^-1`, `x3 ↦ x2`.
fn half_twist_bc() -> FreeAut {
    FreeAut::new([w(&[1]), w(&[2, 3, -2]), w(&[2])], [w(&[1]), w(&[3]), w(&[-3, 2, 3])])
        .expect("half twist is invertible")
}

/// Orientation convention for the seven twists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Handedness {
    /// Pair twists conjugate by `x_i x_{i+1}` and `T_d` conjugates by `x1 x2 x3`.
    #[default]
    Standard,
    /// The reflected lantern: every twist is inverted and `y` is the reflected curve.
    Mirror,
}

impl Handedness {
    pub fn from_mirror_flag(mirror: bool) -> Self {
        if mirror {
            Self::Mirror
        } else {
            Self::Standard
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Mirror => "mirror",
        }
    }
}

/// The seven twists as automorphisms of `F3`, indexed by [`TwistName`].
#[derive(Clone, Debug)]
pub struct LanternTwists {
    auts: [FreeAut; 7],
    pub handedness: Handedness,
}

impl LanternTwists {
    pub fn new(handedness: Handedness) -> Self {
        let s = half_twist_bc();
        let si = s.inverse();
        let z = pair_twist(1);
        let x = pair_twist(2);
        let (x, y, z, d) = match handedness {
            Handedness::Standard => {
                let y = si.compose(&z).compose(&s);
                (x, y, z, FreeAut::conj_all(&boundary_word()))
            }
            Handedness::Mirror => {
                let y = s.compose(&z.inverse()).compose(&si);
                (x.inverse(), y, z.inverse(), FreeAut::conj_all(&boundary_word().inverse()))
            }
        };
        let id = FreeAut::identity();
        Self { auts: [id.clone(), id.clone(), id, d, x, y, z], handedness }
    }

    pub fn get(&self, name: TwistName) -> &FreeAut {
        &self.auts[name.slot()]
    }

    pub fn set(&mut self, name: TwistName, aut: FreeAut) {
        self.auts[name.slot()] = aut;
    }

    /// Evaluates a product of twist powers, leftmost factor applied last.
    pub fn evaluate(&self, letters: &[(TwistName, i64)]) -> FreeAut {
        letters.iter().fold(FreeAut::identity(), |acc, &(n, e)| acc.compose(&self.get(n).pow(e)))
    }
}
