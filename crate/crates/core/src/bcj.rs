//! The Boolean algebra `B³` over `F2` generated by bar classes of the mod-2
//! homology basis, together with the `Sp` action, the values of `σ` on
//! separating twists and the surjectivity checks for `σ`.
//!
//! A monomial is a bitmask over the `2g` generators in the basis order
//! `a1,b1,...`; the empty mask is the constant `1`. Since every generator is
//! idempotent, multiplying monomials is a union of masks.

use std::collections::BTreeSet;
use std::fmt;

use crate::certificate::{Certificate, ParamsEcho, Verdict};
use crate::error::{param, Result};
use crate::exterior::{binomial, cube_dim, Triple, Wedge3};
use crate::homology::{basis_name, sp_generators, HClass, HEndo};
use crate::lattice::F2Span;
use crate::orbit::{expand, Accumulator, Budget, OrbitStatus};
use crate::params::{check_genus, SurfaceKind, SurfaceParams};
use crate::tau::{record_conventions, tau_orbit};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

fn genus_mask(genus: usize) -> u64 {
    if 2 * genus >= 64 {
        u64::MAX
    } else {
        (1u64 << (2 * genus)) - 1
    }
}

/// Mod-2 intersection pairing of two bitmask classes.
fn pairing_bits(x: u64, y: u64) -> u32 {
    let swapped = ((y & EVEN_BITS) << 1) | ((y >> 1) & EVEN_BITS);
    (x & swapped).count_ones() & 1
}

/// A mod-2 homology class as a bitmask over the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F2Class {
    genus: usize,
    bits: u64,
}

impl F2Class {
    pub fn new(genus: usize, bits: u64) -> Result<Self> {
        check_genus(genus)?;
        if bits & !genus_mask(genus) != 0 {
            return param(format!("class bits {bits:#x} exceed 2g = {}", 2 * genus));
        }
        Ok(Self { genus, bits })
    }

    pub fn zero(genus: usize) -> Self {
        Self { genus, bits: 0 }
    }

    pub fn basis(genus: usize, idx: usize) -> Self {
        assert!(idx < 2 * genus, "basis index out of range");
        Self { genus, bits: 1 << idx }
    }

    pub fn a(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * (i - 1))
    }

    pub fn b(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * (i - 1) + 1)
    }

    /// Reduction mod 2 of an integral class.
    pub fn reduce(c: &HClass) -> Self {
        let bits = c.coeffs().iter().enumerate().filter(|(_, v)| *v % 2 != 0).fold(0u64, |m, (j, _)| m | 1 << j);
        Self { genus: c.genus(), bits }
    }

    pub fn genus(self) -> usize {
        self.genus
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn pairing(self, other: Self) -> u32 {
        pairing_bits(self.bits, other.bits)
    }
}

/// Addition in `F2^{2g}`.
impl std::ops::Add for F2Class {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: Self) -> Self {
        Self { genus: self.genus, bits: self.bits ^ other.bits }
    }
}

/// A linear map of `F2^{2g}`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Map {
    genus: usize,
    columns: Vec<u64>,
}

impl F2Map {
    pub fn identity(genus: usize) -> Self {
        Self { genus, columns: (0..2 * genus).map(|j| 1u64 << j).collect() }
    }

    pub fn from_columns(genus: usize, columns: Vec<u64>) -> Result<Self> {
        check_genus(genus)?;
        if columns.len() != 2 * genus || columns.iter().any(|c| c & !genus_mask(genus) != 0) {
            return param("F2 map needs 2g columns of 2g bits");
        }
        Ok(Self { genus, columns })
    }

    /// Reduction mod 2 of an integral map.
    pub fn reduce(f: &HEndo) -> Self {
        let columns = (0..f.dim()).map(|j| F2Class::reduce(&f.column(j)).bits).collect();
        Self { genus: f.genus(), columns }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn apply(&self, c: F2Class) -> F2Class {
        let mut bits = 0;
        let mut rest = c.bits;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            bits ^= self.columns[j];
            rest &= rest - 1;
        }
        F2Class { genus: self.genus, bits }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let columns = other.columns.iter().map(|&c| self.apply(F2Class { genus: self.genus, bits: c }).bits).collect();
        Self { genus: self.genus, columns }
    }

    pub fn is_symplectic(&self) -> bool {
        let n = self.columns.len();
        (0..n).all(|p| {
            (p + 1..n).all(|q| {
                let expected = u32::from(p / 2 == q / 2);
                pairing_bits(self.columns[p], self.columns[q]) == expected
            })
        })
    }
}

fn degree(mask: u64) -> u32 {
    mask.count_ones()
}

/// An element of `B³`: the set of monomials with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPoly {
    genus: usize,
    monomials: BTreeSet<u64>,
}

/// What [`bpoly_mul`] does with products of degree above 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Drop monomials of degree above 3 (work in `B³`).
    Drop,
    /// Report a parameter error instead.
    Reject,
}

impl BPoly {
    pub fn zero(genus: usize) -> Self {
        Self { genus, monomials: BTreeSet::new() }
    }

    pub fn one(genus: usize) -> Self {
        Self::monomial(genus, 0).expect("constant monomial")
    }

    /// A single monomial given by its variable mask.
    pub fn monomial(genus: usize, mask: u64) -> Result<Self> {
        check_genus(genus)?;
        if mask & !genus_mask(genus) != 0 {
            return param("monomial uses a variable outside the basis");
        }
        if degree(mask) > 3 {
            return param(format!("monomial of degree {} exceeds 3", degree(mask)));
        }
        Ok(Self { genus, monomials: BTreeSet::from([mask]) })
    }

    /// Product of generators given by basis indices, e.g. `[0, 1]` for `ā1 b̄1`.
    pub fn from_vars(genus: usize, vars: &[usize]) -> Result<Self> {
        if let Some(&v) = vars.iter().find(|&&v| v >= 2 * genus) {
            return param(format!("variable index {v} out of range"));
        }
        Self::monomial(genus, vars.iter().fold(0u64, |m, &v| m | 1 << v))
    }

    pub fn from_monomials(genus: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut p = Self::zero(genus);
        for m in masks {
            p = bpoly_add(&p, &Self::monomial(genus, m)?);
        }
        Ok(p)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Largest monomial degree, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.monomials.iter().map(|&m| degree(m)).max()
    }

    /// The homogeneous part of degree `d`.
    pub fn part(&self, d: u32) -> Self {
        Self { genus: self.genus, monomials: self.monomials.iter().copied().filter(|&m| degree(m) == d).collect() }
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<u64> = self.monomials.iter().copied().collect();
        sorted.sort_by_key(|&m| (degree(m), m.reverse_bits()));
        let terms: Vec<String> = sorted
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_owned()
                } else {
                    (0..64).filter(|j| m >> j & 1 == 1).map(|j| format!("~{}", basis_name(j))).collect()
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn bpoly_add(p: &BPoly, q: &BPoly) -> BPoly {
    let monomials = p.monomials.symmetric_difference(&q.monomials).copied().collect();
    BPoly { genus: p.genus, monomials }
}

pub fn bpoly_mul(p: &BPoly, q: &BPoly, policy: Truncation) -> Result<BPoly> {
    let mut out = BTreeSet::new();
    for &x in &p.monomials {
        for &y in &q.monomials {
            let m = x | y;
            if degree(m) > 3 {
                match policy {
                    Truncation::Drop => continue,
                    Truncation::Reject => return param(format!("product has degree {} > 3", degree(m))),
                }
            }
            if !out.remove(&m) {
                out.insert(m);
            }
        }
    }
    Ok(BPoly { genus: p.genus, monomials: out })
}

/// The bar class of `c`: the sum of the generators in its support plus the
/// mod-2 count of pairwise intersections among them.
pub fn bar(c: F2Class) -> BPoly {
    let mut monomials: BTreeSet<u64> = (0..2 * c.genus).filter(|j| c.bits >> j & 1 == 1).map(|j| 1u64 << j).collect();
    let constant = (c.bits & (c.bits >> 1) & EVEN_BITS).count_ones() & 1;
    if constant == 1 {
        monomials.insert(0);
    }
    BPoly { genus: c.genus, monomials }
}

/// The bar class built up one basis vector at a time in the given order with
/// `bar(x + y) = bar(x) + bar(y) + i(x, y)`.
pub fn bar_in_order(c: F2Class, order: &[usize]) -> Result<BPoly> {
    let mut seen = 0u64;
    for &j in order {
        if j >= 2 * c.genus || seen >> j & 1 == 1 {
            return param("order must list distinct basis indices");
        }
        seen |= 1 << j;
    }
    if c.bits & !seen != 0 {
        return param("order does not cover the support of the class");
    }
    let g = c.genus;
    let mut acc = F2Class::zero(g);
    let mut value = BPoly::zero(g);
    for &j in order.iter().filter(|&&j| c.bits >> j & 1 == 1) {
        let e = F2Class::basis(g, j);
        value = bpoly_add(&value, &BPoly::from_vars(g, &[j])?);
        if acc.pairing(e) == 1 {
            value = bpoly_add(&value, &BPoly::one(g));
        }
        acc = acc + e;
    }
    Ok(value)
}

/// `σ` of a twist about a separating curve cutting off the subsurface with
/// the given mod-2 symplectic basis: `Σ bar(x_i) bar(y_i)`.
pub fn sigma_septwist(pairs: &[(F2Class, F2Class)]) -> Result<BPoly> {
    let Some(&(first, _)) = pairs.first() else {
        return param("empty subsurface basis");
    };
    let g = first.genus;
    for (i, &(x, y)) in pairs.iter().enumerate() {
        if x.genus != g || y.genus != g {
            return param("subsurface basis mixes genera");
        }
        if x.pairing(y) != 1 {
            return param(format!("pair {} has i(x, y) = 0 mod 2", i + 1));
        }
        for &(u, v) in &pairs[i + 1..] {
            if x.pairing(u) | x.pairing(v) | y.pairing(u) | y.pairing(v) != 0 {
                return param("distinct pairs must be orthogonal mod 2");
            }
        }
    }
    let mut out = BPoly::zero(g);
    for &(x, y) in pairs {
        out = bpoly_add(&out, &bpoly_mul(&bar(x), &bar(y), Truncation::Reject)?);
    }
    Ok(out)
}

/// The standard separating-twist basis `(a_i, b_i)` for `i` in `handles`.
pub fn standard_pairs(genus: usize, handles: impl IntoIterator<Item = usize>) -> Vec<(F2Class, F2Class)> {
    handles.into_iter().map(|i| (F2Class::a(genus, i), F2Class::b(genus, i))).collect()
}

/// The action of a mod-2 symplectic map on `B³`, with generator images precomputed.
#[derive(Clone, Debug)]
pub struct Sp2Action {
    genus: usize,
    images: Vec<BPoly>,
}

impl Sp2Action {
    pub fn new(f: &F2Map) -> Result<Self> {
        if !f.is_symplectic() {
            return param("map does not preserve the mod-2 pairing");
        }
        let images = f.columns.iter().map(|&c| bar(F2Class { genus: f.genus, bits: c })).collect();
        Ok(Self { genus: f.genus, images })
    }

    pub fn apply(&self, p: &BPoly) -> Result<BPoly> {
        if p.genus != self.genus {
            return param("polynomial and map have different genera");
        }
        let mut out = BPoly::zero(self.genus);
        for m in p.monomials() {
            let mut term = BPoly::one(self.genus);
            for j in (0..2 * self.genus).filter(|j| m >> j & 1 == 1) {
                term = bpoly_mul(&term, &self.images[j], Truncation::Reject)?;
            }
            out = bpoly_add(&out, &term);
        }
        Ok(out)
    }
}

pub fn sp2_action(f: &F2Map, p: &BPoly) -> Result<BPoly> {
    Sp2Action::new(f)?.apply(p)
}

/// `dim B^d` for `d <= 3`: the number of monomials of degree at most `d`.
pub fn filtration_dim(genus: usize, d: usize) -> usize {
    (0..=d.min(3)).map(|i| binomial(2 * genus, i)).sum()
}

/// Position of a monomial in the basis of `B³`: the constant, then degree 1,
/// 2 and 3 monomials, each degree in colex order.
pub fn monomial_index(genus: usize, mask: u64) -> usize {
    let n = 2 * genus;
    let vars: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
    match vars.as_slice() {
        [] => 0,
        [p] => 1 + p,
        [p, q] => 1 + n + binomial(*q, 2) + p,
        [p, q, r] => filtration_dim(genus, 2) + Triple(*p, *q, *r).colex_index(),
        _ => unreachable!("monomials in B3 have degree at most 3"),
    }
}

fn to_bits(p: &BPoly) -> Vec<bool> {
    let mut bits = vec![false; filtration_dim(p.genus, 3)];
    for m in p.monomials() {
        bits[monomial_index(p.genus, m)] = true;
    }
    bits
}

/// The degree-3 part of `p` as a mod-2 vector over the colex triple basis of
/// `∧³`, matching the monomial `x̄ȳz̄` with `x∧y∧z` basis vector to basis vector.
pub fn mod2_bridge(p: &BPoly) -> Vec<bool> {
    let mut out = vec![false; cube_dim(p.genus)];
    for m in p.monomials().filter(|&m| degree(m) == 3) {
        let v: Vec<usize> = (0..2 * p.genus).filter(|j| m >> j & 1 == 1).collect();
        out[Triple(v[0], v[1], v[2]).colex_index()] = true;
    }
    out
}

/// The degree-3 polynomial with the odd-coefficient triples of `w` as monomials.
pub fn lift_wedge_mod2(w: &Wedge3) -> BPoly {
    let monomials =
        w.terms().filter(|(_, c)| c % 2 != 0).map(|(t, _)| 1u64 << t.0 | 1u64 << t.1 | 1u64 << t.2).collect();
    BPoly { genus: w.genus(), monomials }
}

/// The action of `f` on `∧³F2^{2g}`: each basis triple goes to the wedge of
/// three image columns, expanded with mod-2 permanents.
pub fn mod2_cube(f: &F2Map, v: &[bool]) -> Result<Vec<bool>> {
    let n = cube_dim(f.genus);
    if v.len() != n {
        return param("vector length does not match C(2g,3)");
    }
    let mut out = vec![false; n];
    let bits_of = |c: u64| (0..2 * f.genus).filter(move |j| c >> j & 1 == 1);
    for (idx, _) in v.iter().enumerate().filter(|(_, &b)| b) {
        let t = Triple::from_colex_index(idx);
        let (x, y, z) = (f.columns[t.0], f.columns[t.1], f.columns[t.2]);
        for i in bits_of(x) {
            for j in bits_of(y).filter(|&j| j != i) {
                for l in bits_of(z).filter(|&l| l != i && l != j) {
                    let mut s = [i, j, l];
                    s.sort_unstable();
                    let k = Triple(s[0], s[1], s[2]).colex_index();
                    out[k] = !out[k];
                }
            }
        }
    }
    Ok(out)
}

struct BSpan(F2Span);

impl Accumulator<BPoly> for BSpan {
    fn insert(&mut self, p: &BPoly) -> Result<bool> {
        self.0.insert(&to_bits(p))
    }
}

/// Mod-2 reductions of the symplectic generators, as actions on `B³`.
pub fn sp2_generators(genus: usize) -> Result<Vec<Sp2Action>> {
    sp_generators(genus)?.iter().map(|g| Sp2Action::new(&F2Map::reduce(&g.map))).collect()
}

/// Orbit-span data for `B²`.
pub struct B2Span {
    pub dimension: usize,
    pub target: usize,
    pub status: OrbitStatus,
    pub generated: usize,
    pub accepted: Vec<BPoly>,
    pub within_b2: bool,
}

impl B2Span {
    pub fn verdict(&self) -> Verdict {
        if self.within_b2 && self.dimension == self.target {
            Verdict::Pass
        } else if !self.within_b2 || self.status.is_conclusive() {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Spans the `Sp`-orbit of `seed` in `B³` and compares it with `B²`.
pub fn b2_span(seed: &BPoly, budget: &Budget) -> Result<B2Span> {
    let g = seed.genus;
    let generators = sp2_generators(g)?;
    let target = filtration_dim(g, 2);
    let mut acc = BSpan(F2Span::new(filtration_dim(g, 3)));
    let run = expand(
        std::slice::from_ref(seed),
        generators.len(),
        budget,
        |i, p| generators[i].apply(p),
        &mut acc,
        |acc| acc.0.rank() >= target,
    )?;
    let within_b2 = run.accepted.iter().all(|p| p.degree().unwrap_or(0) <= 2);
    Ok(B2Span {
        dimension: acc.0.rank(),
        target,
        status: run.status,
        generated: run.generated,
        accepted: run.accepted,
        within_b2,
    })
}

/// `ā1 b̄1`, the value of `σ` on a genus-1 separating twist.
pub fn genus_one_sigma(genus: usize) -> Result<BPoly> {
    sigma_septwist(&standard_pairs(genus, [1]))
}

/// Checks that `ā1 b̄1` generates `B²` under the symplectic group.
pub fn verify_b2_generation(genus: usize, budget: &Budget) -> Result<Certificate> {
    check_genus(genus)?;
    verify_b2_generation_from(&genus_one_sigma(genus)?, budget)
}

/// [`verify_b2_generation`] from an arbitrary seed.
pub fn verify_b2_generation_from(seed: &BPoly, budget: &Budget) -> Result<Certificate> {
    let g = seed.genus;
    let span = b2_span(seed, budget)?;
    let mut cert =
        Certificate::new("bcj-b2", ParamsEcho { genus: Some(g), k: None, surface: Some(SurfaceKind::Bordered) });
    record_conventions(&mut cert, g);
    cert.convention("monomial_order", "degree, then colex")
        .metric("dimension", span.dimension)
        .metric("target_dimension", span.target)
        .metric("orbit_size", span.generated)
        .metric("accepted_vectors", span.accepted.len())
        .check("spans_b2", span.verdict())
        .note(format!("seed = {seed}"))
        .note(format!("orbit status: {:?}", span.status))
        .seal();
    Ok(cert)
}

/// Checks that `σ` restricted to the normal closure of a genus-`k` bounding
/// pair map is onto `B³`: the orbit of `ā1 b̄1` fills `B²`, and the mod-2
/// reduction of the `τ` orbit fills `B³/B² = ∧³F2^{2g}`.
pub fn verify_sigma_surjectivity(params: &SurfaceParams, budget: &Budget) -> Result<Certificate> {
    if params.surface() != SurfaceKind::Bordered {
        return param("sigma surjectivity is stated for bordered surfaces");
    }
    let g = params.genus();
    let b2 = b2_span(&genus_one_sigma(g)?, budget)?;
    let orbit = tau_orbit(params, budget)?;

    let mut cube = F2Span::new(cube_dim(g));
    let mut total = F2Span::new(filtration_dim(g, 3));
    for p in &b2.accepted {
        total.insert(&to_bits(p))?;
    }
    for w in &orbit.run.accepted {
        let lifted = lift_wedge_mod2(w);
        cube.insert(&mod2_bridge(&lifted))?;
        total.insert(&to_bits(&lifted))?;
    }

    let cube_target = cube_dim(g);
    let cube_verdict = if cube.rank() == cube_target {
        Verdict::Pass
    } else if orbit.run.status.is_conclusive() {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };

    let mut cert = Certificate::new("sigma-surjectivity", ParamsEcho::from(params));
    record_conventions(&mut cert, g);
    cert.convention("bridge", "monomial x~y~z~ <-> basis vector x^y^z of wedge3(F2^2g)")
        .convention("monomial_order", "degree, then colex")
        .metric("b2_dimension", b2.dimension)
        .metric("b2_target", b2.target)
        .metric("cube_mod2_rank", cube.rank())
        .metric("cube_target", cube_target)
        .metric("total_dimension", total.rank())
        .metric("b3_dimension", filtration_dim(g, 3))
        .metric("tau_orbit_size", orbit.run.generated)
        .metric("b2_orbit_size", b2.generated)
        .check("b2_generation", b2.verdict())
        .check("cube_mod2_span", cube_verdict)
        .note(format!("b2 orbit status: {:?}", b2.status))
        .note(format!("tau orbit status: {:?}", orbit.run.status))
        .seal();
    Ok(cert)
}

/// Spot checks for the boundary twist of a genus-`g` surface with one
/// boundary component: `τ(T_b) = 0` while `σ(T_b) = Σ ā_i b̄_i ≠ 0`.
pub fn boundary_twist_checks(genus: usize) -> Result<Certificate> {
    check_genus(genus)?;
    let tau = crate::tau::septwist_tau(genus, SurfaceKind::Bordered);
    let sigma = sigma_septwist(&standard_pairs(genus, 1..=genus))?;
    let expected = BPoly::from_monomials(genus, (0..genus).map(|i| 0b11u64 << (2 * i)))?;

    let mut cert = Certificate::new(
        "boundary-twist-checks",
        ParamsEcho { genus: Some(genus), k: None, surface: Some(SurfaceKind::Bordered) },
    );
    record_conventions(&mut cert, genus);
    cert.metric("sigma_terms", sigma.monomials.len())
        .check("tau_vanishes", Verdict::from_bool(tau.is_zero()?))
        .check("sigma_formula", Verdict::from_bool(sigma == expected))
        .check("sigma_nonzero", Verdict::from_bool(!sigma.is_zero()))
        .note(format!("sigma(T_b) = {sigma}"))
        .seal();
    Ok(cert)
}
