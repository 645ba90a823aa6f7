//! Exact arithmetic on `H = Z^{2g}` with its symplectic intersection form.
//!
//! Coordinates follow the fixed basis order `(a1, b1, a2, b2, ..., ag, bg)`, so
//! `a_i` sits at index `2(i-1)` and `b_i` at `2(i-1)+1`. All arithmetic is
//! checked; overflow surfaces as [`Error::Overflow`].

use std::fmt;

use crate::error::{param, Error, Result};
use crate::params::check_genus;

pub(crate) fn add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(Error::Overflow("homology addition"))
}

pub(crate) fn mul(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y).ok_or(Error::Overflow("homology multiplication"))
}

/// Basis index of `a_i` (handles are numbered from 1).
pub fn a_index(i: usize) -> usize {
    2 * (i - 1)
}

/// Basis index of `b_i` (handles are numbered from 1).
pub fn b_index(i: usize) -> usize {
    2 * (i - 1) + 1
}

/// Human-readable name of basis vector `idx`, e.g. `a1` or `b3`.
pub fn basis_name(idx: usize) -> String {
    let handle = idx / 2 + 1;
    if idx.is_multiple_of(2) {
        format!("a{handle}")
    } else {
        format!("b{handle}")
    }
}

/// Comma-separated basis order for genus `g`, recorded in certificates.
pub fn basis_order(genus: usize) -> String {
    (0..2 * genus).map(basis_name).collect::<Vec<_>>().join(",")
}

/// Intersection number of two basis vectors.
pub fn basis_pairing(p: usize, q: usize) -> i64 {
    if p / 2 != q / 2 {
        0
    } else {
        match (p % 2, q % 2) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }
}

/// A class in `H_1` of a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HClass {
    genus: usize,
    coeffs: Vec<i64>,
}

impl HClass {
    pub fn zero(genus: usize) -> Self {
        Self { genus, coeffs: vec![0; 2 * genus] }
    }

    pub fn basis(genus: usize, idx: usize) -> Self {
        let mut out = Self::zero(genus);
        out.coeffs[idx] = 1;
        out
    }

    pub fn a(genus: usize, i: usize) -> Self {
        Self::basis(genus, a_index(i))
    }

    pub fn b(genus: usize, i: usize) -> Self {
        Self::basis(genus, b_index(i))
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(2) {
            return param(format!("homology vector of odd or zero length {}", coeffs.len()));
        }
        Ok(Self { genus: coeffs.len() / 2, coeffs })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_genus(self.genus, other.genus)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| add(x, y)).collect::<Result<_>>()?;
        Ok(Self { genus: self.genus, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    pub fn checked_scale(&self, s: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&x| mul(x, s)).collect::<Result<_>>()?;
        Ok(Self { genus: self.genus, coeffs })
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{}", basis_name(idx))?;
            } else {
                write!(f, "{sign}{mag}{}", basis_name(idx))?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn same_genus(g: usize, h: usize) -> Result<()> {
    if g != h {
        return param(format!("dimension mismatch: genus {g} against genus {h}"));
    }
    Ok(())
}

/// The algebraic intersection number `i(x, y)`.
pub fn pairing(x: &HClass, y: &HClass) -> Result<i64> {
    same_genus(x.genus, y.genus)?;
    let mut acc = 0i64;
    for j in 0..x.genus {
        let (a, b) = (2 * j, 2 * j + 1);
        acc = add(acc, mul(x.coeffs[a], y.coeffs[b])?)?;
        acc = add(acc, -mul(x.coeffs[b], y.coeffs[a])?)?;
    }
    Ok(acc)
}

/// An integer endomorphism of `H`, stored as a row-major `2g x 2g` matrix
/// acting on column vectors. Column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HEndo {
    genus: usize,
    matrix: Vec<i64>,
}

impl HEndo {
    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1;
        }
        Self { genus, matrix }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || !n.is_multiple_of(2) || rows.iter().any(|r| r.len() != n) {
            return param("endomorphism matrix must be square of even size");
        }
        Ok(Self { genus: n / 2, matrix: rows.into_iter().flatten().collect() })
    }

    /// Builds the map sending basis vector `j` to `images[j]`.
    pub fn from_images(images: &[HClass]) -> Result<Self> {
        let n = images.len();
        if n == 0 || !n.is_multiple_of(2) || images.iter().any(|c| c.coeffs.len() != n) {
            return param("need one image of matching genus per basis vector");
        }
        let mut matrix = vec![0; n * n];
        for (j, img) in images.iter().enumerate() {
            for i in 0..n {
                matrix[i * n + j] = img.coeffs[i];
            }
        }
        Ok(Self { genus: n / 2, matrix })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.matrix[row * self.dim() + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.dim()).map(<[i64]>::to_vec).collect()
    }

    /// Image of basis vector `j`.
    pub fn column(&self, j: usize) -> HClass {
        let n = self.dim();
        HClass { genus: self.genus, coeffs: (0..n).map(|i| self.matrix[i * n + j]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }

    pub fn apply(&self, x: &HClass) -> Result<HClass> {
        same_genus(self.genus, x.genus)?;
        let n = self.dim();
        let mut coeffs = vec![0i64; n];
        for (i, out) in coeffs.iter_mut().enumerate() {
            for j in 0..n {
                let m = self.matrix[i * n + j];
                if m != 0 && x.coeffs[j] != 0 {
                    *out = add(*out, mul(m, x.coeffs[j])?)?;
                }
            }
        }
        Ok(HClass { genus: self.genus, coeffs })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_genus(self.genus, other.genus)?;
        let n = self.dim();
        let mut matrix = vec![0i64; n * n];
        for i in 0..n {
            for l in 0..n {
                let m = self.matrix[i * n + l];
                if m == 0 {
                    continue;
                }
                for j in 0..n {
                    let o = other.matrix[l * n + j];
                    if o != 0 {
                        let cell = &mut matrix[i * n + j];
                        *cell = add(*cell, mul(m, o)?)?;
                    }
                }
            }
        }
        Ok(Self { genus: self.genus, matrix })
    }

    /// Inverse of a symplectic map.
    pub fn symplectic_inverse(&self) -> Result<Self> {
        if !is_symplectic(self) {
            return param("symplectic_inverse called on a non-symplectic map");
        }
        // For symplectic M: M^{-1} = -J M^T J, i.e. entry (p, q) = -sum J[p][r] M[s][r] J[s][q].
        let n = self.dim();
        let mut matrix = vec![0i64; n * n];
        for p in 0..n {
            for q in 0..n {
                let r = p ^ 1;
                let s = q ^ 1;
                let jp = basis_pairing(p, r);
                let jq = basis_pairing(s, q);
                matrix[p * n + q] = -mul(mul(jp, self.matrix[s * n + r])?, jq)?;
            }
        }
        Ok(Self { genus: self.genus, matrix })
    }
}

/// The symplectic transvection `x ↦ x + i(x, v) v` (homology action of a twist about a curve of class `v`).
pub fn transvection(v: &HClass) -> Result<HEndo> {
    signed_transvection(v, 1)
}

/// `x ↦ x - i(x, v) v`, the inverse of [`transvection`].
pub fn inverse_transvection(v: &HClass) -> Result<HEndo> {
    signed_transvection(v, -1)
}

pub(crate) fn signed_transvection(v: &HClass, sign: i64) -> Result<HEndo> {
    if v.is_zero() {
        return param("transvection along the zero class");
    }
    let g = v.genus;
    let images = (0..2 * g)
        .map(|j| {
            let e = HClass::basis(g, j);
            let t = mul(sign, pairing(&e, v)?)?;
            e.checked_add(&v.checked_scale(t)?)
        })
        .collect::<Result<Vec<_>>>()?;
    HEndo::from_images(&images)
}

/// Transvection power used for twist words: the identity when `v` is zero.
pub(crate) fn twist_action(v: &HClass, exponent: i64) -> Result<HEndo> {
    if v.is_zero() || exponent == 0 {
        return Ok(HEndo::identity(v.genus));
    }
    let step = signed_transvection(v, exponent.signum())?;
    let mut out = HEndo::identity(v.genus);
    for _ in 0..exponent.unsigned_abs() {
        out = out.compose(&step)?;
    }
    Ok(out)
}

/// The factor-mix map `a_r ↦ a_r - b_s`, `a_s ↦ a_s - b_r`, fixing every other basis vector.
pub fn factor_mix(genus: usize, r: usize, s: usize) -> Result<HEndo> {
    if r == s || r == 0 || s == 0 || r > genus || s > genus {
        return param(format!("factor_mix({r}, {s}) needs distinct handles in 1..={genus}"));
    }
    let mut images: Vec<HClass> = (0..2 * genus).map(|j| HClass::basis(genus, j)).collect();
    images[a_index(r)] = HClass::a(genus, r).checked_sub(&HClass::b(genus, s))?;
    images[a_index(s)] = HClass::a(genus, s).checked_sub(&HClass::b(genus, r))?;
    HEndo::from_images(&images)
}

/// True iff `f` preserves the intersection pairing on every pair of basis vectors.
pub fn is_symplectic(f: &HEndo) -> bool {
    let n = f.dim();
    let cols: Vec<HClass> = (0..n).map(|j| f.column(j)).collect();
    for p in 0..n {
        for q in p + 1..n {
            match pairing(&cols[p], &cols[q]) {
                Ok(v) if v == basis_pairing(p, q) => {}
                _ => return false,
            }
        }
    }
    true
}

/// A named generator of the symplectic group used by orbit-span checks.
#[derive(Clone, Debug)]
pub struct SpGenerator {
    pub name: String,
    pub map: HEndo,
}

/// Transvections along `a_i`, `b_i`, `a_i+b_i`, `a_i+a_{i+1}`, `b_i+b_{i+1}`,
/// `a_i+b_j` for `|i-j| = 1`, their inverses, and every `factor_mix(r, s)`.
pub fn sp_generators(genus: usize) -> Result<Vec<SpGenerator>> {
    check_genus(genus)?;
    let g = genus;
    let mut axes: Vec<(String, HClass)> = Vec::new();
    for i in 1..=g {
        axes.push((format!("a{i}"), HClass::a(g, i)));
        axes.push((format!("b{i}"), HClass::b(g, i)));
    }
    for i in 1..=g {
        axes.push((format!("a{i}+b{i}"), HClass::a(g, i).checked_add(&HClass::b(g, i))?));
    }
    for i in 1..g {
        let j = i + 1;
        axes.push((format!("a{i}+a{j}"), HClass::a(g, i).checked_add(&HClass::a(g, j))?));
        axes.push((format!("b{i}+b{j}"), HClass::b(g, i).checked_add(&HClass::b(g, j))?));
        axes.push((format!("a{i}+b{j}"), HClass::a(g, i).checked_add(&HClass::b(g, j))?));
        axes.push((format!("a{j}+b{i}"), HClass::a(g, j).checked_add(&HClass::b(g, i))?));
    }

    let mut out = Vec::with_capacity(4 * axes.len() + g * g);
    for (name, v) in &axes {
        out.push(SpGenerator { name: format!("T[{name}]"), map: transvection(v)? });
        out.push(SpGenerator { name: format!("T[{name}]^-1"), map: inverse_transvection(v)? });
    }
    for r in 1..=g {
        for s in r + 1..=g {
            out.push(SpGenerator { name: format!("mix({r},{s})"), map: factor_mix(g, r, s)? });
        }
    }
    Ok(out)
}
