//! Test-only oracle sharing no arithmetic with the library. The cube action
//! comes from 3x3 minors; ranks and lattice indices come from modular
//! elimination and big-integer determinants.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torelli_core::HEndo;

/// Mersenne prime 2^61 - 1.
pub const P: u64 = (1 << 61) - 1;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Triples `p<q<r` of `0..n` in colex order.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for r in 0..n {
        for q in 0..r {
            for p in 0..q {
                out.push([p, q, r]);
            }
        }
    }
    out
}

/// `i(e_p, e_q)` for the basis `a1, b1, a2, b2, ...`.
pub fn omega(p: usize, q: usize) -> i64 {
    if p / 2 != q / 2 || p == q {
        0
    } else if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Matrix of the induced map on the cube: entry `(I, J)` is the minor of `f`
/// on rows `I` and columns `J`.
pub fn cube_matrix(f: &HEndo) -> Vec<Vec<i64>> {
    let ts = triples(f.dim());
    ts.iter()
        .map(|rows| {
            ts.iter()
                .map(|cols| {
                    let mut m = [[0; 3]; 3];
                    for (i, &r) in rows.iter().enumerate() {
                        for (j, &c) in cols.iter().enumerate() {
                            m[i][j] = f.entry(r, c);
                        }
                    }
                    det3(m)
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Dense vector of `Σ c·e_p∧e_q∧e_r` for arbitrary (unsorted) index triples.
pub fn dense_wedge(n: usize, terms: &[(i64, [usize; 3])]) -> Vec<i64> {
    let ts = triples(n);
    let mut v = vec![0; ts.len()];
    for &(c, t) in terms {
        let mut s = t;
        if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
            continue;
        }
        let mut sign = c;
        for i in 0..3 {
            for j in 0..2 - i {
                if s[j] > s[j + 1] {
                    s.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let idx = ts.iter().position(|x| *x == s).unwrap();
        v[idx] += sign;
    }
    v
}

/// `e_c ∧ ω` for each basis vector.
pub fn omega_vectors(genus: usize) -> Vec<Vec<i64>> {
    let n = 2 * genus;
    (0..n).map(|c| dense_wedge(n, &(0..genus).map(|i| (1, [c, 2 * i, 2 * i + 1])).collect::<Vec<_>>())).collect()
}

/// Contraction computed term by term from the intersection form.
pub fn contract(genus: usize, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; 2 * genus];
    for (&[p, q, r], &c) in triples(2 * genus).iter().zip(v) {
        out[r] += c * omega(p, q);
        out[p] += c * omega(q, r);
        out[q] += c * omega(r, p);
    }
    out
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_fp(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

/// Rank over `F_p`.
pub fn rank_mod_p(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|&x| to_fp(x)).collect()).collect();
    let Some(n) = rows.first().map(Vec::len) else { return 0 };
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = powmod(rows[rank][col], P - 2);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = mulmod(row[col], inv);
                for (x, &p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = (*x + P - mulmod(f, p)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_2`.
pub fn rank_mod_2(vectors: &[Vec<bool>]) -> usize {
    let mut rows: Vec<Vec<bool>> = vectors.to_vec();
    let Some(n) = rows.first().map(Vec::len) else { return 0 };
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free Bareiss determinant.
pub fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let zero = BigInt::from(0);
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != zero) else { return zero };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    let zero = BigInt::from(0);
    while b != zero {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a < zero {
        -a
    } else {
        a
    }
}

/// `count` random elements of the span, each a signed sum of `terms`
/// randomly chosen vectors.
pub fn random_combinations(vectors: &[Vec<i64>], count: usize, terms: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let n = vectors[0].len();
    (0..count)
        .map(|_| {
            let mut row = vec![0i64; n];
            for _ in 0..terms {
                let v = &vectors[rng.gen_range(0..vectors.len())];
                let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                for (r, x) in row.iter_mut().zip(v) {
                    *r += c * x;
                }
            }
            row
        })
        .collect()
}

/// Index of the span of `vectors` in `Z^n`, or `None` when the span has
/// rank below `n`. The index divides the determinant of any `n` elements of
/// the span; the gcd over `samples` random `n`-tuples equals it with high
/// probability and is exact when it reaches 1.
pub fn lattice_index(vectors: &[Vec<i64>], samples: usize, seed: u64) -> Option<BigInt> {
    let n = vectors.first()?.len();
    let mut rng = rng(seed);
    let terms = vectors.len().min(4 * n);
    if rank_mod_p(&random_combinations(vectors, 2 * n, terms, &mut rng)) < n {
        return None;
    }
    let mut acc = BigInt::from(0);
    for _ in 0..samples {
        let m = random_combinations(vectors, n, terms, &mut rng);
        acc = gcd(acc, det(m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()));
        if acc == BigInt::from(1) {
            break;
        }
    }
    Some(acc)
}

/// Points along `walks` random walks of length `len` starting from the seeds,
/// seeds included.
pub fn orbit_walks(
    seeds: &[Vec<i64>],
    gens: &[Vec<Vec<i64>>],
    walks: usize,
    len: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<i64>> {
    let mut out = seeds.to_vec();
    for w in 0..walks {
        let mut v = seeds[w % seeds.len()].clone();
        for _ in 0..len {
            v = mat_vec(&gens[rng.gen_range(0..gens.len())], &v);
            out.push(v.clone());
        }
    }
    out
}
