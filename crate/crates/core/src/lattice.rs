//! Exact span accumulators. Integer spans are kept in Hermite normal form and
//! read off through their Smith invariants; mod-2 spans are kept in row-echelon form.

use crate::error::{param, Error, Result};

fn ck_add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow("lattice reduction"))
}

fn ck_mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow("lattice reduction"))
}

/// `dst += factor * src`, checked.
fn axpy(dst: &mut [i128], factor: i128, src: &[i128]) -> Result<()> {
    if factor == 0 {
        return Ok(());
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ck_add(*d, ck_mul(factor, s)?)?;
        }
    }
    Ok(())
}

/// Extended gcd: returns `(g, s, t)` with `s*x + t*y = g > 0`.
fn xgcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (x, y);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Integer row lattice maintained in (partially reduced) Hermite normal form.
///
/// Rows are stored by increasing pivot column with positive pivots; entries of
/// a row above another row's pivot are kept in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<i128>>,
}

impl IntLattice {
    pub fn new(dim: usize) -> Self {
        Self { dim, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Product of the pivots: the index of the lattice in its saturation
    /// when the lattice has full rank.
    pub fn pivot_product(&self) -> Result<i128> {
        self.rows.iter().zip(&self.pivots).try_fold(1i128, |acc, (row, &p)| ck_mul(acc, row[p]))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        let mut probe = self.clone();
        Ok(!probe.insert(v)?)
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return param(format!("row of length {} in a lattice of dimension {}", v.len(), self.dim));
        }
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut changed = false;
        let mut r = 0;
        for col in 0..self.dim {
            while r < self.pivots.len() && self.pivots[r] < col {
                r += 1;
            }
            if v[col] == 0 {
                continue;
            }
            if r < self.pivots.len() && self.pivots[r] == col {
                let p = self.rows[r][col];
                let a = v[col];
                if a % p == 0 {
                    let row = &self.rows[r];
                    axpy(&mut v, -(a / p), row)?;
                } else {
                    let (g, s, t) = xgcd(p, a);
                    let row = std::mem::take(&mut self.rows[r]);
                    let mut new_row = vec![0i128; self.dim];
                    axpy(&mut new_row, s, &row)?;
                    axpy(&mut new_row, t, &v)?;
                    let mut rest = vec![0i128; self.dim];
                    axpy(&mut rest, a / g, &row)?;
                    axpy(&mut rest, -(p / g), &v)?;
                    debug_assert_eq!(rest[col], 0);
                    self.rows[r] = new_row;
                    v = rest;
                    self.reduce_around(r)?;
                    changed = true;
                }
            } else {
                if v[col] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.pivots.insert(r, col);
                self.rows.insert(r, v);
                self.reduce_around(r)?;
                return Ok(true);
            }
        }
        Ok(changed)
    }

    /// Re-reduces row `r` against later pivots and earlier rows against row `r`.
    fn reduce_around(&mut self, r: usize) -> Result<()> {
        for later in r + 1..self.rows.len() {
            let c = self.pivots[later];
            let p = self.rows[later][c];
            let q = self.rows[r][c].div_euclid(p);
            if q != 0 {
                let (head, tail) = self.rows.split_at_mut(later);
                axpy(&mut head[r], -q, &tail[0])?;
            }
        }
        let c = self.pivots[r];
        let p = self.rows[r][c];
        for earlier in 0..r {
            let q = self.rows[earlier][c].div_euclid(p);
            if q != 0 {
                let (head, tail) = self.rows.split_at_mut(r);
                axpy(&mut head[earlier], -q, &tail[0])?;
            }
        }
        Ok(())
    }

    /// Elementary divisors of the lattice (nonzero Smith invariants), ascending.
    pub fn elementary_divisors(&self) -> Result<Vec<i128>> {
        smith_invariants(self.rows.clone(), self.dim)
    }
}

/// Nonzero Smith normal form invariants of the integer matrix with the given rows.
pub fn smith_invariants(mut m: Vec<Vec<i128>>, ncols: usize) -> Result<Vec<i128>> {
    let nrows = m.len();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(p);
                    let (head, tail) = m.split_at_mut(i);
                    axpy(&mut tail[0], -q, &head[t])?;
                    if m[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..ncols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(p);
                    for row in m.iter_mut() {
                        row[j] = ck_add(row[j], ck_mul(-q, row[t])?)?;
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // Move the smallest remainder in row/column t into the pivot slot.
                let mut best = (t, t, m[t][t].abs());
                for (i, row) in m.iter().enumerate().skip(t + 1) {
                    if row[t] != 0 && row[t].abs() < best.2 {
                        best = (i, t, row[t].abs());
                    }
                }
                for (j, &v) in m[t].iter().enumerate().take(ncols).skip(t + 1) {
                    if v != 0 && v.abs() < best.2 {
                        best = (t, j, v.abs());
                    }
                }
                m.swap(t, best.0);
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // Divisibility condition: the pivot must divide the trailing block.
            let p = m[t][t];
            let offender = (t + 1..nrows).find_map(|i| (t + 1..ncols).find(|&j| m[i][j] % p != 0).map(|_| i));
            match offender {
                Some(i) => {
                    let (head, tail) = m.split_at_mut(i);
                    axpy(&mut head[t], 1, &tail[0])?;
                }
                None => break,
            }
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors.sort_unstable();
    Ok(divisors)
}

/// Row-echelon span over `F2`, rows packed into `u64` words.
#[derive(Clone, Debug)]
pub struct F2Span {
    dim: usize,
    words: usize,
    basis: Vec<(usize, Vec<u64>)>,
}

impl F2Span {
    pub fn new(dim: usize) -> Self {
        Self { dim, words: dim.div_ceil(64).max(1), basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pack(&self, bits: &[bool]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            out[i / 64] |= 1 << (i % 64);
        }
        out
    }

    /// Adds a packed row; returns whether the span grew.
    pub fn insert_packed(&mut self, mut v: Vec<u64>) -> Result<bool> {
        if v.len() != self.words {
            return param("packed F2 row has the wrong length");
        }
        for (pivot, row) in &self.basis {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                v.iter_mut().zip(row).for_each(|(x, y)| *x ^= y);
            }
        }
        let lead = v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize);
        match lead {
            None => Ok(false),
            Some(pivot) => {
                // Keep the basis fully reduced at every pivot.
                for (_, row) in self.basis.iter_mut() {
                    if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                        row.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                    }
                }
                self.basis.push((pivot, v));
                Ok(true)
            }
        }
    }

    pub fn insert(&mut self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.dim {
            return param(format!("F2 row of length {} in a span of dimension {}", bits.len(), self.dim));
        }
        let packed = self.pack(bits);
        self.insert_packed(packed)
    }
}
