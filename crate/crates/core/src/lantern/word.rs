//! Twist words and the central-collection normal form.
//!
//! Twists about the four boundary curves commute with all seven twists, so a
//! word is determined by its boundary exponents together with the freely
//! reduced word in the interior letters `x, y, z`.

use std::fmt;
use std::str::FromStr;

use super::free::is_rotation;
use super::twists::TwistName;
use crate::error::{param, Error, Result};

/// A product of twists, leftmost factor applied last. Lowercase letters are
/// positive twists and uppercase letters inverse twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord(Vec<(TwistName, i64)>);

impl TwistWord {
    pub fn new(letters: Vec<(TwistName, i64)>) -> Self {
        Self(letters.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn letters(&self) -> &[(TwistName, i64)] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(n, e)| (n, -e)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Collects the central boundary letters and freely reduces what remains; `trivial` letters are dropped.
    pub fn normal_form(&self, trivial: &[TwistName]) -> NormalForm {
        let mut central = [0i64; 4];
        let mut core: Vec<(TwistName, i64)> = Vec::new();
        for &(n, e) in &self.0 {
            if trivial.contains(&n) {
                continue;
            }
            if n.is_boundary() {
                central[n.slot()] += e;
                continue;
            }
            match core.last_mut() {
                Some((last, le)) if *last == n => {
                    *le += e;
                    if *le == 0 {
                        core.pop();
                    }
                }
                _ => core.push((n, e)),
            }
        }
        NormalForm { central, core }
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            let Some(n) = TwistName::from_letter(ch) else {
                return param(format!("unknown twist letter {ch:?}"));
            };
            out.push((n, if ch.is_ascii_uppercase() { -1 } else { 1 }));
        }
        Ok(Self(out))
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(n, e) in &self.0 {
            let ch = if e < 0 { n.letter().to_ascii_uppercase() } else { n.letter() };
            for _ in 0..e.unsigned_abs() {
                write!(f, "{ch}")?;
            }
        }
        Ok(())
    }
}

/// Boundary exponents for `a, b, c, d` and the reduced interior word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub central: [i64; 4],
    pub core: Vec<(TwistName, i64)>,
}

impl NormalForm {
    /// The core with cancelling first and last letters stripped.
    pub fn cyclic_core(&self) -> Vec<(TwistName, i64)> {
        let mut core = self.core.clone();
        loop {
            match (core.first().copied(), core.last().copied()) {
                (Some((n, e)), Some((m, f))) if core.len() >= 2 && n == m => {
                    core.pop();
                    core.remove(0);
                    if e + f != 0 {
                        core.push((n, e + f));
                    }
                }
                _ => return core,
            }
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "central(a,b,c,d)={:?} core={}", self.central, TwistWord(self.core.clone()))
    }
}

/// True iff `lhs = rhs` follows from the lantern relation `abcd = xyz` by
/// commuting boundary twists and conjugating.
///
/// `lhs · rhs^-1` must collect to `abcd · (xyz)^-1` or its inverse, with
/// interior core a cyclic rotation. Rotating is allowed because the relation
/// makes `xyz` central. Letters in `trivial` are dropped from both the
/// identity and the relation.
pub fn follows_from_lantern(lhs: &TwistWord, rhs: &TwistWord, trivial: &[TwistName]) -> bool {
    let nf = lhs.concat(&rhs.inverse()).normal_form(trivial);
    let core = nf.cyclic_core();
    let relator = |sign: i64| {
        let mut central = [sign; 4];
        for n in trivial.iter().filter(|n| n.is_boundary()) {
            central[n.slot()] = 0;
        }
        let interior: Vec<(TwistName, i64)> = if sign > 0 {
            vec![(TwistName::Z, -1), (TwistName::Y, -1), (TwistName::X, -1)]
        } else {
            vec![(TwistName::X, 1), (TwistName::Y, 1), (TwistName::Z, 1)]
        };
        (central, interior)
    };
    [1, -1].into_iter().any(|sign| {
        let (central, interior) = relator(sign);
        nf.central == central && is_rotation(&core, &interior)
    })
}
