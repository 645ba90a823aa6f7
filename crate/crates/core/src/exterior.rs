//! The lattice `∧³H`, the induced action of endomorphisms of `H`, the
//! embedding `H → ∧³H` given by wedging with `ω = Σ a_i∧b_i`, and saturation
//! verdicts via Smith normal form.
//!
//! Monomials `e_p∧e_q∧e_r` (with `p < q < r` indexing the basis order of
//! [`crate::homology`]) are ordered colexicographically: by `r`, then `q`,
//! then `p`. The dense index of a monomial is `C(p,1) + C(q,2) + C(r,3)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{param, Error, Result};
use crate::homology::{add, basis_name, basis_pairing, mul, HClass, HEndo};
use crate::lattice::IntLattice;

/// `C(n, k)` for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of `∧³H` at genus `g`.
pub fn cube_dim(genus: usize) -> usize {
    binomial(2 * genus, 3)
}

/// A strictly increasing triple of basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple(pub usize, pub usize, pub usize);

impl Triple {
    /// Sorts three indices; returns the canonical triple and the permutation
    /// sign, or `None` when an index repeats.
    pub fn canonical(p: usize, q: usize, r: usize) -> Option<(Triple, i64)> {
        if p == q || q == r || p == r {
            return None;
        }
        let mut idx = [p, q, r];
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        Some((Triple(idx[0], idx[1], idx[2]), sign))
    }

    pub fn colex_index(self) -> usize {
        binomial(self.0, 1) + binomial(self.1, 2) + binomial(self.2, 3)
    }

    /// Inverse of [`Triple::colex_index`].
    pub fn from_colex_index(mut idx: usize) -> Triple {
        let mut r = 2;
        while binomial(r + 1, 3) <= idx {
            r += 1;
        }
        idx -= binomial(r, 3);
        let mut q = 1;
        while binomial(q + 1, 2) <= idx {
            q += 1;
        }
        idx -= binomial(q, 2);
        Triple(idx, q, r)
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.2, self.1, self.0).cmp(&(other.2, other.1, other.0))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}^{}", basis_name(self.0), basis_name(self.1), basis_name(self.2))
    }
}

/// An element of `∧³H`, stored sparsely without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wedge3 {
    genus: usize,
    terms: BTreeMap<Triple, i64>,
}

impl Wedge3 {
    pub fn zero(genus: usize) -> Self {
        Self { genus, terms: BTreeMap::new() }
    }

    /// `coeff · e_p∧e_q∧e_r` with the indices in any order.
    pub fn monomial(genus: usize, p: usize, q: usize, r: usize, coeff: i64) -> Result<Self> {
        let n = 2 * genus;
        if p >= n || q >= n || r >= n {
            return param(format!("basis index out of range for genus {genus}"));
        }
        let mut out = Self::zero(genus);
        if let Some((t, sign)) = Triple::canonical(p, q, r) {
            out.add_term(t, mul(sign, coeff)?)?;
        }
        Ok(out)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Triple, i64)> + '_ {
        self.terms.iter().map(|(&t, &c)| (t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: Triple) -> i64 {
        self.terms.get(&t).copied().unwrap_or(0)
    }

    fn add_term(&mut self, t: Triple, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(t).or_insert(0);
        *entry = add(*entry, c)?;
        if *entry == 0 {
            self.terms.remove(&t);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return param("adding wedges of different genus");
        }
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t, c)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, s: i64) -> Result<Self> {
        let mut out = Self::zero(self.genus);
        for (t, c) in self.terms() {
            out.add_term(t, mul(c, s)?)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    /// Dense coefficient vector in colex order.
    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; cube_dim(self.genus)];
        for (t, c) in self.terms() {
            out[t.colex_index()] = c;
        }
        out
    }

    pub fn from_dense(genus: usize, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != cube_dim(genus) {
            return param("dense wedge vector has the wrong length");
        }
        let mut out = Self::zero(genus);
        for (i, &c) in coeffs.iter().enumerate() {
            out.add_term(Triple::from_colex_index(i), c)?;
        }
        Ok(out)
    }

    /// Coefficients reduced mod 2, in colex order.
    pub fn to_f2(&self) -> Vec<bool> {
        let mut out = vec![false; cube_dim(self.genus)];
        for (t, c) in self.terms() {
            out[t.colex_index()] = c.rem_euclid(2) == 1;
        }
        out
    }
}

impl fmt::Display for Wedge3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i == 0 {
                ""
            } else {
                "+"
            };
            match c.unsigned_abs() {
                1 => write!(f, "{sign}{t}")?,
                m => write!(f, "{sign}{m}*{t}")?,
            }
        }
        Ok(())
    }
}

/// `x ∧ y ∧ z`, expanded trilinearly.
pub fn wedge(x: &HClass, y: &HClass, z: &HClass) -> Result<Wedge3> {
    let g = x.genus();
    if y.genus() != g || z.genus() != g {
        return param("wedge of classes with different genus");
    }
    let mut out = Wedge3::zero(g);
    let support = |c: &HClass| -> Vec<(usize, i64)> {
        c.coeffs().iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect()
    };
    let (sx, sy, sz) = (support(x), support(y), support(z));
    for &(p, cp) in &sx {
        for &(q, cq) in &sy {
            for &(r, cr) in &sz {
                if let Some((t, sign)) = Triple::canonical(p, q, r) {
                    out.add_term(t, mul(mul(mul(cp, cq)?, cr)?, sign)?)?;
                }
            }
        }
    }
    Ok(out)
}

/// The action on `∧³H` induced by an endomorphism of `H`.
#[derive(Clone, Debug)]
pub struct CubeMap {
    genus: usize,
    columns: Vec<HClass>,
}

impl CubeMap {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn apply(&self, w: &Wedge3) -> Result<Wedge3> {
        if w.genus != self.genus {
            return param("wedge genus does not match the induced map");
        }
        let mut out = Wedge3::zero(self.genus);
        for (Triple(p, q, r), c) in w.terms() {
            let img = wedge(&self.columns[p], &self.columns[q], &self.columns[r])?;
            for (t, d) in img.terms() {
                out.add_term(t, mul(c, d)?)?;
            }
        }
        Ok(out)
    }
}

/// `f(e_p)∧f(e_q)∧f(e_r)` on monomials, extended linearly.
pub fn induced_cube(f: &HEndo) -> CubeMap {
    CubeMap { genus: f.genus(), columns: (0..f.dim()).map(|j| f.column(j)).collect() }
}

/// `c ∧ ω` with `ω = Σ a_i∧b_i`.
pub fn wedge_omega(c: &HClass) -> Result<Wedge3> {
    let g = c.genus();
    let mut out = Wedge3::zero(g);
    for i in 1..=g {
        out = out.checked_add(&wedge(c, &HClass::a(g, i), &HClass::b(g, i))?)?;
    }
    Ok(out)
}

/// The contraction `x∧y∧z ↦ i(x,y)z + i(y,z)x + i(z,x)y`, a symplectic-equivariant
/// surjection `∧³H → H` sending `c ∧ ω` to `(g-1)c`.
pub fn contraction(w: &Wedge3) -> Result<HClass> {
    let mut coeffs = vec![0i64; 2 * w.genus];
    for (Triple(p, q, r), c) in w.terms() {
        for (x, y, z) in [(p, q, r), (q, r, p), (r, p, q)] {
            let t = mul(c, basis_pairing(x, y))?;
            coeffs[z] = add(coeffs[z], t)?;
        }
    }
    HClass::from_coeffs(coeffs)
}

/// `e ∧ ω` for every basis vector `e`: generators of the image of `H` in `∧³H`.
pub fn omega_rows(genus: usize) -> Result<Vec<Wedge3>> {
    (0..2 * genus).map(|j| wedge_omega(&HClass::basis(genus, j))).collect()
}

/// Rank and Smith invariants of an integer row lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVerdict {
    pub rank: usize,
    pub elementary_divisors: Vec<i64>,
    pub saturated: bool,
}

impl LatticeVerdict {
    pub(crate) fn from_divisors(divisors: Vec<i128>) -> Result<Self> {
        let elementary_divisors = divisors
            .into_iter()
            .map(|d| i64::try_from(d).map_err(|_| Error::Overflow("elementary divisor")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rank: elementary_divisors.len(),
            saturated: elementary_divisors.iter().all(|&d| d == 1),
            elementary_divisors,
        })
    }

    /// The verdict inside `∧³H / (H∧ω)` given the divisors of `L + H∧ω`.
    pub(crate) fn quotient_from_divisors(divisors: Vec<i128>, omega_rank: usize) -> Result<Self> {
        // H∧ω is a saturated summand, so it contributes exactly omega_rank unit divisors.
        debug_assert!(divisors.iter().take(omega_rank).all(|&d| d == 1));
        Self::from_divisors(divisors.into_iter().skip(omega_rank).collect())
    }
}

/// Feeds wedges into an [`IntLattice`] over the colex basis.
pub(crate) fn lattice_of(genus: usize, vectors: &[Wedge3]) -> Result<IntLattice> {
    let mut lattice = IntLattice::new(cube_dim(genus));
    for v in vectors {
        if v.genus != genus {
            return param("wedges of mixed genus");
        }
        lattice.insert(&v.to_dense())?;
    }
    Ok(lattice)
}

/// Smith-normal-form verdict for the lattice spanned by `vectors` in `Z^ambient_dim`.
pub fn lattice_saturation(vectors: &[Wedge3], ambient_dim: usize) -> Result<LatticeVerdict> {
    let Some(first) = vectors.first() else {
        return param("lattice_saturation needs at least one vector");
    };
    if cube_dim(first.genus) != ambient_dim {
        return param(format!(
            "ambient dimension {ambient_dim} does not match C(2g,3) = {} at genus {}",
            cube_dim(first.genus),
            first.genus
        ));
    }
    let lattice = lattice_of(first.genus, vectors)?;
    LatticeVerdict::from_divisors(lattice.elementary_divisors()?)
}

/// Verdict of the image of `vectors` in the quotient `∧³H / (H∧ω)`.
///
/// The quotient rank is `rank(vectors ∪ ω-rows) - rank(ω-rows)`.
pub fn quotient_mod_h(genus: usize, vectors: &[Wedge3]) -> Result<LatticeVerdict> {
    let omega = omega_rows(genus)?;
    let mut lattice = lattice_of(genus, &omega)?;
    let omega_rank = lattice.rank();
    for v in vectors {
        if v.genus != genus {
            return param("wedges of mixed genus");
        }
        lattice.insert(&v.to_dense())?;
    }
    LatticeVerdict::quotient_from_divisors(lattice.elementary_divisors()?, omega_rank)
}
