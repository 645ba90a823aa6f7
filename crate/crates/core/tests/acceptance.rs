//! Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torelli_core::bcj::{
    bar, boundary_twist_checks, bpoly_add, lift_wedge_mod2, mod2_bridge, mod2_cube, sp2_action, verify_b2_generation,
    verify_sigma_surjectivity, BPoly, F2Class, F2Map,
};
use torelli_core::exterior::{binomial, cube_dim, induced_cube, wedge_omega};
use torelli_core::homology::{b_index, is_symplectic, sp_generators, transvection};
use torelli_core::lantern::{
    build_config, transvection_product, verify_factorization, verify_lantern_relation, Factorization, Figure,
    Handedness,
};
use torelli_core::tau::{factor_mix_difference, verify_tau_surjectivity};
use torelli_core::verify::{plan_sweep, SweepSpec};
use torelli_core::{run, Budget, Certificate, HClass, HEndo, RunOptions, SurfaceKind, SurfaceParams, Verdict, Wedge3};

/// Every comparison below is exact: integers and bits, no floating point.
const TOLERANCE: &str = "exact";
const TAU_LIMIT_SMALL: Duration = Duration::from_secs(60);
const TAU_LIMIT_G5: Duration = Duration::from_secs(300);
const LANTERN_LIMIT: Duration = Duration::from_secs(1);
const B2_LIMIT: Duration = Duration::from_secs(60);
const BAR_PAIRS: usize = 1000;
const SEED: u64 = 0x7e11;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), summary: String::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn params(g: usize, k: usize, kind: SurfaceKind) -> SurfaceParams {
    SurfaceParams::new(g, k, kind).expect("valid parameters")
}

fn all_params(gmin: usize, gmax: usize) -> Vec<SurfaceParams> {
    let mut out = Vec::new();
    for g in gmin..=gmax {
        for k in SurfaceParams::valid_k(g) {
            for kind in SurfaceKind::ALL {
                out.push(params(g, k, kind));
            }
        }
    }
    out
}

fn int(cert: &Certificate, key: &str) -> String {
    cert.int_metric(key).map_or_else(|| "missing".into(), |v| v.to_string())
}

fn divisor_summary(cert: &Certificate) -> String {
    let Some(serde_json::Value::Array(list)) = serde_json::to_value(&cert.metrics["elementary_divisors"]).ok() else {
        return "?".into();
    };
    let mut counts = std::collections::BTreeMap::new();
    for d in list.iter().filter_map(serde_json::Value::as_i64) {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts.iter().map(|(d, n)| format!("{d}^{n}")).collect::<Vec<_>>().join(" ")
}

fn tau_surjectivity() -> Outcome {
    let mut o = Outcome::new();
    let mut passed = 0;
    let all = all_params(3, 5);
    for p in &all {
        let g = p.genus();
        let start = Instant::now();
        let cert = verify_tau_surjectivity(p, &Budget::default()).expect("tau certificate");
        let elapsed = start.elapsed();
        let (expect_rank, label) = match p.surface() {
            SurfaceKind::Closed => (cube_dim(g) - 2 * g, "quotient"),
            _ => (cube_dim(g), "full"),
        };
        let limit = if g <= 4 { TAU_LIMIT_SMALL } else { TAU_LIMIT_G5 };
        let ok = cert.verdict == Verdict::Pass
            && cert.int_metric("rank") == Some(expect_rank as i64)
            && cert.check_value("saturated_target") == Some(Verdict::Pass)
            && elapsed <= limit;
        if ok {
            passed += 1;
        }
        o.require(ok, || {
            format!(
                "g={g} k={} {}: {label} rank {} of {expect_rank}, divisors {}, contraction gcd {}, {} ms",
                p.k(),
                p.surface(),
                int(&cert, "rank"),
                divisor_summary(&cert),
                int(&cert, "contraction_gcd"),
                elapsed.as_millis()
            )
        });
    }
    o.summary = format!("{passed}/{} certificates saturated", all.len());
    o
}

fn factor_mix_display() -> Outcome {
    let mut o = Outcome::new();
    let mut n = 0;
    for g in 3..=6 {
        for k in SurfaceParams::valid_k(g) {
            let p = params(g, k, SurfaceKind::Bordered);
            let expected = Wedge3::monomial(g, b_index(k + 2), b_index(1), b_index(k + 1), -1).unwrap();
            let got = factor_mix_difference(&p).unwrap();
            o.require(got == expected, || format!("g={g} k={k}: {got} != {expected}"));
            n += 1;
        }
    }
    o.summary = format!("{n} (g,k) pairs");
    o
}

fn lantern() -> Outcome {
    let mut o = Outcome::new();
    for h in [Handedness::Standard, Handedness::Mirror] {
        let start = Instant::now();
        let cert = verify_lantern_relation(h);
        let elapsed = start.elapsed();
        o.require(cert.check_value("relation") == Some(Verdict::Pass), || format!("{h:?}: relation fails"));
        o.require(cert.check_value("mutation_detected") == Some(Verdict::Pass), || {
            format!("{h:?}: mutated relation still holds")
        });
        o.require(elapsed < LANTERN_LIMIT, || format!("{h:?}: {} ms", elapsed.as_millis()));
    }
    o.summary = "both handedness conventions, mutation detected".into();
    o
}

fn factorizations() -> Outcome {
    let mut o = Outcome::new();
    let mut n = 0;
    let mut punctured_33 = 0;
    for p in all_params(3, 6) {
        for f in Factorization::ALL.into_iter().filter(|f| f.supports(&p)) {
            let cert = verify_factorization(f, &p, Handedness::Standard).unwrap();
            let mut checks = vec!["rewriting", "automorphism"];
            if f == Factorization::GenusTwo {
                checks.extend(["rewriting_b_trivial", "automorphism_b_trivial"]);
                if p.surface() == SurfaceKind::Punctured {
                    punctured_33 += 1;
                }
            }
            for c in checks {
                o.require(cert.check_value(c) == Some(Verdict::Pass), || format!("{f} {p:?}: {c}"));
            }
            n += 1;
        }
    }
    o.require(punctured_33 > 0, || "no punctured 3.3 case ran".into());
    o.summary = format!("{n} certificates, {punctured_33} punctured 3.3");
    o
}

fn configurations() -> Outcome {
    let mut o = Outcome::new();
    let mut n = 0;
    for p in all_params(3, 6) {
        for figure in Figure::ALL.into_iter().filter(|f| f.supports(&p)) {
            let config = build_config(figure, &p).unwrap();
            for (name, ok) in config.invariants().unwrap() {
                o.require(ok, || format!("{} {p:?}: {name}", figure.as_str()));
            }
            n += 1;
        }
        for f in Factorization::ALL.into_iter().filter(|f| f.supports(&p)) {
            let config = build_config(f.figure(), &p).unwrap();
            let (lhs, rhs) = f.sides();
            let shadow = transvection_product(&lhs.concat(&rhs.inverse()), &config).unwrap();
            o.require(shadow.is_identity(), || format!("{f} {p:?}: homology shadow is not the identity"));
        }
    }
    o.summary = format!("{n} configurations");
    o
}

fn b2_generation() -> Outcome {
    let mut o = Outcome::new();
    let mut dims = Vec::new();
    for (g, expected) in [(3, 22), (4, 37)] {
        let start = Instant::now();
        let cert = verify_b2_generation(g, &Budget::default()).unwrap();
        let elapsed = start.elapsed();
        let dim = cert.int_metric("dimension");
        let formula = 1 + 2 * g + binomial(2 * g, 2);
        o.require(formula == expected, || format!("g={g}: 1 + 2g + C(2g,2) = {formula}"));
        o.require(dim == Some(expected as i64) && cert.verdict == Verdict::Pass, || {
            format!("g={g}: dimension {dim:?}, expected {expected}")
        });
        o.require(elapsed <= B2_LIMIT, || format!("g={g}: {} ms", elapsed.as_millis()));
        dims.push(format!("g={g}: {}", int(&cert, "dimension")));
    }
    o.summary = dims.join(", ");
    o
}

fn sigma_surjectivity() -> Outcome {
    let mut o = Outcome::new();
    let mut parts = Vec::new();
    for (g, k) in [(3, 1), (4, 1), (4, 2)] {
        let cert = verify_sigma_surjectivity(&params(g, k, SurfaceKind::Bordered), &Budget::default()).unwrap();
        let cube_ok = cert.int_metric("cube_mod2_rank") == Some(cube_dim(g) as i64);
        o.require(cert.verdict == Verdict::Pass && cube_ok, || {
            format!(
                "g={g} k={k}: cube mod 2 rank {} of {}, total {} of {}",
                int(&cert, "cube_mod2_rank"),
                cube_dim(g),
                int(&cert, "total_dimension"),
                int(&cert, "b3_dimension")
            )
        });
        parts.push(format!("({g},{k}): {}", int(&cert, "total_dimension")));
    }
    o.summary = format!("total dimensions {}", parts.join(", "));
    o
}

fn boundary_twist() -> Outcome {
    let mut o = Outcome::new();
    for g in 3..=6 {
        let cert = boundary_twist_checks(g).unwrap();
        for c in ["tau_vanishes", "sigma_formula", "sigma_nonzero"] {
            o.require(cert.check_value(c) == Some(Verdict::Pass), || format!("g={g}: {c}"));
        }
    }
    o.summary = "g = 3..6".into();
    o
}

fn random_symplectic(g: usize, rng: &mut ChaCha8Rng) -> HEndo {
    let gens = sp_generators(g).unwrap();
    let len = rng.gen_range(0..8);
    (0..len).fold(HEndo::identity(g), |acc, _| acc.compose(&gens[rng.gen_range(0..gens.len())].map).unwrap())
}

fn random_wedge(g: usize, rng: &mut ChaCha8Rng) -> Wedge3 {
    let v: Vec<i64> = (0..cube_dim(g)).map(|_| rng.gen_range(-3..=3)).collect();
    Wedge3::from_dense(g, &v).unwrap()
}

fn property_suites() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counts = [0usize; 5];

    for _ in 0..500 {
        let g = rng.gen_range(3..=6);
        let v = HClass::from_coeffs((0..2 * g).map(|_| rng.gen_range(-5..=5)).collect()).unwrap();
        if v.is_zero() {
            continue;
        }
        o.require(is_symplectic(&transvection(&v).unwrap()), || format!("transvection along {v} not symplectic"));
        counts[0] += 1;
    }

    for _ in 0..100 {
        let g = rng.gen_range(3..=4);
        let (f, h) = (random_symplectic(g, &mut rng), random_symplectic(g, &mut rng));
        let w = random_wedge(g, &mut rng);
        let lhs = induced_cube(&f.compose(&h).unwrap()).apply(&w).unwrap();
        let rhs = induced_cube(&f).apply(&induced_cube(&h).apply(&w).unwrap()).unwrap();
        o.require(lhs == rhs, || format!("functoriality fails at g={g}"));
        let c = HClass::from_coeffs((0..2 * g).map(|_| rng.gen_range(-5..=5)).collect()).unwrap();
        let moved = induced_cube(&f).apply(&wedge_omega(&c).unwrap()).unwrap();
        o.require(moved == wedge_omega(&f.apply(&c).unwrap()).unwrap(), || {
            format!("omega equivariance fails at g={g}")
        });
        counts[1] += 1;
    }

    for _ in 0..BAR_PAIRS {
        let g = rng.gen_range(3..=10);
        let mask = (1u64 << (2 * g)) - 1;
        let a = F2Class::new(g, rng.gen::<u64>() & mask).unwrap();
        let b = F2Class::new(g, rng.gen::<u64>() & mask).unwrap();
        let mut rhs = bpoly_add(&bar(a), &bar(b));
        if a.pairing(b) == 1 {
            rhs = bpoly_add(&rhs, &BPoly::one(g));
        }
        o.require(bar(a + b) == rhs, || format!("bar relation fails for {a:?}, {b:?}"));
        counts[2] += 1;
    }

    for _ in 0..100 {
        let g = rng.gen_range(3..=4);
        let f = random_symplectic(g, &mut rng);
        let fbar = F2Map::reduce(&f);
        let w = random_wedge(g, &mut rng);
        let p = lift_wedge_mod2(&w);
        let around = mod2_bridge(&sp2_action(&fbar, &p).unwrap());
        let across = mod2_cube(&fbar, &mod2_bridge(&p)).unwrap();
        let integral = induced_cube(&f).apply(&w).unwrap().to_f2();
        o.require(around == across && across == integral, || format!("bridge square fails at g={g}"));
        counts[3] += 1;
    }

    let mut spec = SweepSpec::new(3, 4);
    spec.kinds = SurfaceKind::ALL.to_vec();
    let opts = RunOptions::default();
    for (id, req) in plan_sweep(&spec).unwrap() {
        let a = run(id, &req, &opts).unwrap().to_canonical_json();
        let b = run(id, &req, &opts).unwrap().to_canonical_json();
        o.require(a == b, || format!("{} differs between runs", req.file_stem(id)));
        counts[4] += 1;
    }

    o.summary = format!(
        "transvections {}, cube maps {}, bar pairs {}, bridge squares {}, certificates {}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    );
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("tau orbit spans fill the target", tau_surjectivity),
        ("factor-mix difference is a single monomial", factor_mix_display),
        ("lantern relation with mutation control", lantern),
        ("factorizations rewrite and act correctly", factorizations),
        ("lantern configurations are consistent", configurations),
        ("B2 is generated by one product", b2_generation),
        ("sigma orbit fills B3", sigma_surjectivity),
        ("boundary twist spot checks", boundary_twist),
        ("property suites and determinism", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {}: {name} [{}; tolerance {TOLERANCE}; {} ms]",
            i + 1,
            outcome.summary,
            start.elapsed().as_millis()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
