//! Lattice facts recomputed by the independent oracle in `common` and
//! compared against the library.

mod common;

use common::*;
use num_bigint::BigInt;
use rand::Rng;
use torelli_core::exterior::{contraction, cube_dim, induced_cube, wedge_omega};
use torelli_core::homology::sp_generators;
use torelli_core::tau::{bp_tau_standard, factor_mix_difference, tau_orbit, tau_orbit_with};
use torelli_core::{Budget, HClass, SurfaceKind, SurfaceParams, Triple, Wedge3};

fn gens(genus: usize) -> Vec<Vec<Vec<i64>>> {
    sp_generators(genus).unwrap().iter().map(|g| cube_matrix(&g.map)).collect()
}

/// `Σ_{i≤k} a_i∧b_i∧b_{k+1}`, built by hand.
fn bp_seed(genus: usize, k: usize) -> Vec<i64> {
    let b = |i: usize| 2 * (i - 1) + 1;
    let a = |i: usize| 2 * (i - 1);
    dense_wedge(2 * genus, &(1..=k).map(|i| (1, [a(i), b(i), b(k + 1)])).collect::<Vec<_>>())
}

fn seeds(genus: usize, k: usize) -> Vec<Vec<i64>> {
    let x = bp_seed(genus, k);
    let b = |i: usize| 2 * (i - 1) + 1;
    let diff = dense_wedge(2 * genus, &[(-1, [b(k + 2), b(1), b(k + 1)])]);
    vec![x, diff]
}

fn params(g: usize, k: usize, kind: SurfaceKind) -> SurfaceParams {
    SurfaceParams::new(g, k, kind).unwrap()
}

#[test]
fn colex_order_matches() {
    for (i, t) in triples(10).into_iter().enumerate() {
        assert_eq!(Triple::from_colex_index(i), Triple(t[0], t[1], t[2]));
    }
}

#[test]
fn cube_action_matches_minors() {
    let mut rng = rng(7);
    for g in 3..=4 {
        let n = cube_dim(g);
        for gen in sp_generators(g).unwrap() {
            let m = cube_matrix(&gen.map);
            let lib = induced_cube(&gen.map);
            for _ in 0..4 {
                let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let w = Wedge3::from_dense(g, &v).unwrap();
                assert_eq!(lib.apply(&w).unwrap().to_dense(), mat_vec(&m, &v), "{}", gen.name);
            }
        }
    }
}

#[test]
fn omega_and_contraction_match() {
    for g in 3..=5 {
        let rows = omega_vectors(g);
        for (c, row) in rows.iter().enumerate() {
            assert_eq!(&wedge_omega(&HClass::basis(g, c)).unwrap().to_dense(), row);
        }
        let mut rng = rng(g as u64);
        for _ in 0..20 {
            let v: Vec<i64> = (0..cube_dim(g)).map(|_| rng.gen_range(-5..=5)).collect();
            let lib = contraction(&Wedge3::from_dense(g, &v).unwrap()).unwrap();
            assert_eq!(lib.coeffs(), contract(g, &v).as_slice());
        }
    }
}

#[test]
fn seeds_match_library() {
    for g in 3..=6 {
        for k in 1..g - 1 {
            let p = params(g, k, SurfaceKind::Bordered);
            let s = seeds(g, k);
            assert_eq!(bp_tau_standard(&p).unwrap().value.to_dense(), s[0]);
            assert_eq!(factor_mix_difference(&p).unwrap().to_dense(), s[1]);
        }
    }
}

/// Index of the orbit span (plus `H∧ω` when closed) in `∧³H`.
fn oracle_index(g: usize, k: usize, closed: bool) -> BigInt {
    let mut vs = orbit_walks(&seeds(g, k), &gens(g), 400, 16, &mut rng(g as u64 * 10 + k as u64));
    if closed {
        vs.extend(omega_vectors(g));
    }
    lattice_index(&vs, 40, 11).expect("full rank")
}

#[test]
fn genus_three_spans() {
    // Full cube has rank C(6,3) = 20; modulo H∧ω the rank is 20 - 6 = 14.
    assert_eq!(oracle_index(3, 1, false), BigInt::from(1));
    assert_eq!(oracle_index(3, 1, true), BigInt::from(1));
    assert_eq!(rank_mod_p(&omega_vectors(3)), 6);

    let bordered = tau_orbit(&params(3, 1, SurfaceKind::Bordered), &Budget::default()).unwrap();
    let v = bordered.verdict().unwrap();
    assert_eq!((v.rank, v.saturated), (20, true));
    let closed = tau_orbit(&params(3, 1, SurfaceKind::Closed), &Budget::default()).unwrap();
    let v = closed.verdict().unwrap();
    assert_eq!((v.rank, v.saturated), (14, true));
}

#[test]
fn genus_four_spans() {
    assert_eq!(oracle_index(4, 1, false), BigInt::from(1));
    // k = 2: every orbit vector contracts into 2H, index 2^8.
    assert_eq!(oracle_index(4, 2, false), BigInt::from(256));
    // closed: gcd(2, g-1) = 1 and the quotient is saturated.
    assert_eq!(oracle_index(4, 2, true), BigInt::from(1));

    let lib = tau_orbit(&params(4, 2, SurfaceKind::Bordered), &Budget::default()).unwrap();
    let mut divisors = lib.verdict().unwrap().elementary_divisors;
    divisors.sort();
    assert_eq!(divisors.len(), 56);
    assert_eq!(divisors.iter().filter(|&&d| d == 1).count(), 48);
    assert_eq!(divisors.iter().filter(|&&d| d == 2).count(), 8);
    assert_eq!(lib.contraction_gcd().unwrap(), 2);

    let closed = tau_orbit(&params(4, 2, SurfaceKind::Closed), &Budget::default()).unwrap();
    let v = closed.verdict().unwrap();
    assert_eq!((v.rank, v.saturated), (48, true));
}

#[test]
fn contraction_obstruction() {
    for g in 3..=5 {
        for k in 1..g - 1 {
            let s = seeds(g, k);
            let mut expect = vec![0; 2 * g];
            expect[2 * k + 1] = k as i64;
            assert_eq!(contract(g, &s[0]), expect);
            assert!(contract(g, &s[1]).iter().all(|&c| c == 0));
        }
    }
    for (c, row) in omega_vectors(4).iter().enumerate() {
        let mut expect = vec![0; 8];
        expect[c] = 3;
        assert_eq!(contract(4, row), expect);
    }
}

#[test]
fn isotropic_seed_spans_kernel_of_contraction() {
    // -b3∧b1∧b2 alone: its orbit lies in the kernel of the contraction, rank 20 - 6.
    let g = 3;
    let seed = seeds(g, 1).remove(1);
    let ball = orbit_walks(std::slice::from_ref(&seed), &gens(g), 200, 16, &mut rng(5));
    assert_eq!(rank_mod_p(&ball), 14);
    assert!(ball.iter().all(|v| contract(g, v).iter().all(|&c| c == 0)));

    let p = params(g, 1, SurfaceKind::Bordered);
    let generators: Vec<_> = sp_generators(g).unwrap().iter().map(|s| induced_cube(&s.map)).collect();
    let w = Wedge3::from_dense(g, &seed).unwrap();
    let orbit = tau_orbit_with(&p, &Budget::default(), &generators, &[w]).unwrap();
    let v = orbit.verdict().unwrap();
    assert_eq!(v.rank, 14);
    assert!(v.saturated);
}
