//! Words and automorphisms of the free group `F3 = <x1, x2, x3>`.

use std::fmt;

use crate::error::{param, Result};

pub const RANK: usize = 3;

/// A freely reduced word; letter `i` is `x_i` and `-i` is its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i8>);

impl FreeWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        assert!((1..=RANK).contains(&i), "generator index out of range");
        Self(vec![i as i8])
    }

    /// Reduces `letters`, rejecting letters outside `±1..=±3`.
    pub fn new(letters: &[i8]) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > RANK) {
            return param(format!("letter {l} is not a generator of F{RANK}"));
        }
        Ok(Self::reduced(letters.iter().copied()))
    }

    fn reduced(letters: impl IntoIterator<Item = i8>) -> Self {
        let mut out: Vec<i8> = Vec::new();
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.0.iter().chain(&other.0).copied())
    }

    /// `u self u^{-1}`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.inverse())
    }

    /// The cyclically reduced core of the word.
    pub fn cyclic_core(&self) -> &[i8] {
        let w = &self.0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == -w[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        &w[lo..hi]
    }

    /// True iff the two words are conjugate in the free group.
    pub fn is_conjugate(&self, other: &Self) -> bool {
        is_rotation(self.cyclic_core(), other.cyclic_core())
    }
}

pub(crate) fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|l| if *l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An automorphism of `F3`, stored with the images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAut {
    fwd: [FreeWord; RANK],
    inv: [FreeWord; RANK],
}

impl FreeAut {
    pub fn identity() -> Self {
        let gens = [1, 2, 3].map(FreeWord::generator);
        Self { fwd: gens.clone(), inv: gens }
    }

    /// Builds an automorphism from generator images and the images of its
    /// inverse, checking that they compose to the identity both ways.
    pub fn new(fwd: [FreeWord; RANK], inv: [FreeWord; RANK]) -> Result<Self> {
        let f = Self { fwd, inv };
        let id = Self::identity();
        if f.compose(&f.inverse()).fwd != id.fwd || f.inverse().compose(&f).fwd != id.fwd {
            return param("the given inverse images do not invert the map");
        }
        Ok(f)
    }

    /// The inner automorphism `x ↦ u x u^{-1}`.
    pub fn conj_all(u: &FreeWord) -> Self {
        let ui = u.inverse();
        Self {
            fwd: [1, 2, 3].map(|i| FreeWord::generator(i).conjugate_by(u)),
            inv: [1, 2, 3].map(|i| FreeWord::generator(i).conjugate_by(&ui)),
        }
    }

    pub fn images(&self) -> &[FreeWord; RANK] {
        &self.fwd
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        FreeWord::reduced(w.0.iter().flat_map(|&l| {
            let img = &self.fwd[l.unsigned_abs() as usize - 1];
            if l > 0 {
                img.0.clone()
            } else {
                img.inverse().0
            }
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let other_inv = other.inverse();
        Self { fwd: other.fwd.clone().map(|w| self.apply(&w)), inv: self.inv.clone().map(|w| other_inv.apply(&w)) }
    }

    pub fn inverse(&self) -> Self {
        Self { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    /// `self^n`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    /// Each `x_i` goes to a conjugate of `x_i` and `x1 x2 x3` to a conjugate of itself.
    pub fn is_peripheral(&self) -> bool {
        let w = boundary_word();
        (1..=RANK).all(|i| self.fwd[i - 1].is_conjugate(&FreeWord::generator(i))) && self.apply(&w).is_conjugate(&w)
    }
}

/// Equality as automorphisms: equal images of every generator.
pub fn aut_equal(f: &FreeAut, h: &FreeAut) -> bool {
    f.fwd == h.fwd
}

/// `x1 x2 x3`, the outer boundary loop.
pub fn boundary_word() -> FreeWord {
    FreeWord(vec![1, 2, 3])
}
