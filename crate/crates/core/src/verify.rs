//! Dispatch from proposition ids to verifiers, and sweep planning.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::bcj::{boundary_twist_checks, verify_b2_generation, verify_sigma_surjectivity};
use crate::certificate::{Certificate, ParamsEcho, Verdict};
use crate::error::{param, Error, Result};
use crate::lantern::{verify_factorization, verify_lantern_relation, Factorization, Handedness};
use crate::orbit::Budget;
use crate::params::{check_genus, SurfaceKind, SurfaceParams, MAX_GENUS};
use crate::tau::verify_tau_surjectivity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropositionId {
    TauSurjectivity,
    Lantern,
    Factorization(Factorization),
    BcjB2,
    SigmaSurjectivity,
    BoundaryTwistChecks,
}

/// What a proposition needs from the parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Nothing: the statement lives on the four-holed sphere.
    None,
    /// The genus only.
    Genus,
    /// The full surface parameters.
    Full,
}

impl PropositionId {
    pub const ALL: [PropositionId; 9] = [
        Self::TauSurjectivity,
        Self::Lantern,
        Self::Factorization(Factorization::SepGenusK),
        Self::Factorization(Factorization::SepGenusKPlus1),
        Self::Factorization(Factorization::GenusOne),
        Self::Factorization(Factorization::GenusTwo),
        Self::BcjB2,
        Self::SigmaSurjectivity,
        Self::BoundaryTwistChecks,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::TauSurjectivity => "tau-surjectivity",
            Self::Lantern => "lantern",
            Self::Factorization(f) => match f {
                Factorization::SepGenusK => "factorization-3.1a",
                Factorization::SepGenusKPlus1 => "factorization-3.1b",
                Factorization::GenusOne => "factorization-3.2",
                Factorization::GenusTwo => "factorization-3.3",
            },
            Self::BcjB2 => "bcj-b2",
            Self::SigmaSurjectivity => "sigma-surjectivity",
            Self::BoundaryTwistChecks => "boundary-twist-checks",
        }
    }

    pub fn scope(self) -> Scope {
        match self {
            Self::Lantern => Scope::None,
            Self::BcjB2 | Self::BoundaryTwistChecks => Scope::Genus,
            _ => Scope::Full,
        }
    }

    /// Whether the proposition applies to these parameters at all.
    pub fn applies_to(self, params: &SurfaceParams) -> bool {
        match self {
            Self::SigmaSurjectivity => params.surface() == SurfaceKind::Bordered,
            Self::Factorization(f) => f.supports(params),
            _ => true,
        }
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == s).map_or_else(
            || {
                let known: Vec<&str> = Self::ALL.iter().map(|p| p.as_str()).collect();
                param(format!("unknown proposition {s:?} (expected one of {})", known.join(", ")))
            },
            Ok,
        )
    }
}

/// Parameters as given by the caller; which ones are required depends on the proposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunRequest {
    pub genus: Option<usize>,
    pub k: Option<usize>,
    pub surface: Option<SurfaceKind>,
}

impl RunRequest {
    pub fn full(params: &SurfaceParams) -> Self {
        Self { genus: Some(params.genus()), k: Some(params.k()), surface: Some(params.surface()) }
    }

    fn params(&self, id: PropositionId) -> Result<SurfaceParams> {
        match (self.genus, self.k, self.surface) {
            (Some(g), Some(k), Some(s)) => SurfaceParams::new(g, k, s),
            _ => param(format!("{id} needs --genus, --k and --surface")),
        }
    }

    fn genus(&self, id: PropositionId) -> Result<usize> {
        let g = self.genus.map_or_else(|| param(format!("{id} needs --genus")), Ok)?;
        check_genus(g)?;
        Ok(g)
    }

    /// File stem for this request, e.g. `tau-surjectivity_g3_k1_closed`.
    pub fn file_stem(&self, id: PropositionId) -> String {
        let mut s = id.as_str().to_owned();
        if let Some(g) = self.genus {
            s += &format!("_g{g}");
        }
        if let Some(k) = self.k {
            s += &format!("_k{k}");
        }
        if let Some(kind) = self.surface {
            s += &format!("_{kind}");
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub budget: Budget,
    pub handedness: Handedness,
    /// Record wall-clock time in `elapsed_ms`; off by default so that
    /// certificates are byte-reproducible.
    pub timings: bool,
}

/// Runs one verifier. Integer overflow in the exact arithmetic yields an
/// inconclusive certificate rather than an error.
pub fn run(id: PropositionId, req: &RunRequest, opts: &RunOptions) -> Result<Certificate> {
    let start = Instant::now();
    let echo = match id.scope() {
        Scope::None => ParamsEcho::default(),
        Scope::Genus => ParamsEcho { genus: req.genus, k: None, surface: Some(SurfaceKind::Bordered) },
        Scope::Full => ParamsEcho { genus: req.genus, k: req.k, surface: req.surface },
    };
    let result = match id {
        PropositionId::Lantern => Ok(verify_lantern_relation(opts.handedness)),
        PropositionId::TauSurjectivity => verify_tau_surjectivity(&req.params(id)?, &opts.budget),
        PropositionId::Factorization(f) => verify_factorization(f, &req.params(id)?, opts.handedness),
        PropositionId::BcjB2 => verify_b2_generation(req.genus(id)?, &opts.budget),
        PropositionId::SigmaSurjectivity => verify_sigma_surjectivity(&req.params(id)?, &opts.budget),
        PropositionId::BoundaryTwistChecks => boundary_twist_checks(req.genus(id)?),
    };
    let mut cert = match result {
        Err(Error::Overflow(what)) => {
            let mut c = Certificate::new(id.as_str(), echo);
            c.check("exact_arithmetic", Verdict::Inconclusive).note(format!("integer overflow in {what}"));
            c.seal();
            c
        }
        other => other?,
    };
    if opts.timings {
        cert.elapsed_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    }
    Ok(cert)
}

/// Which bounding pair genera a sweep covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KPolicy {
    #[default]
    AllValid,
    Fixed(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub gmin: usize,
    pub gmax: usize,
    pub k: KPolicy,
    pub kinds: Vec<SurfaceKind>,
    pub props: Vec<PropositionId>,
}

impl SweepSpec {
    pub fn new(gmin: usize, gmax: usize) -> Self {
        Self { gmin, gmax, k: KPolicy::AllValid, kinds: SurfaceKind::ALL.to_vec(), props: PropositionId::ALL.to_vec() }
    }
}

/// Expands a sweep into runs, in a fixed order and without duplicates: a
/// proposition that ignores `k` or the surface kind runs once per genus.
pub fn plan_sweep(spec: &SweepSpec) -> Result<Vec<(PropositionId, RunRequest)>> {
    if spec.kinds.is_empty() {
        return param("a sweep needs at least one surface kind");
    }
    if spec.props.is_empty() {
        return param("a sweep needs at least one proposition");
    }
    if spec.gmin < 3 || spec.gmax > MAX_GENUS || spec.gmin > spec.gmax {
        return param(format!("genus range {}..={} must lie within 3..={MAX_GENUS}", spec.gmin, spec.gmax));
    }
    let mut kinds = spec.kinds.clone();
    kinds.sort();
    kinds.dedup();
    let mut props = spec.props.clone();
    props.sort();
    props.dedup();

    let mut out = Vec::new();
    for id in props {
        match id.scope() {
            Scope::None => out.push((id, RunRequest::default())),
            Scope::Genus => out
                .extend((spec.gmin..=spec.gmax).map(|g| (id, RunRequest { genus: Some(g), ..RunRequest::default() }))),
            Scope::Full => {
                for g in spec.gmin..=spec.gmax {
                    let ks: Vec<usize> = match spec.k {
                        KPolicy::AllValid => SurfaceParams::valid_k(g).collect(),
                        KPolicy::Fixed(k) => SurfaceParams::valid_k(g).filter(|&v| v == k).collect(),
                    };
                    for k in ks {
                        for &kind in &kinds {
                            let p = SurfaceParams::new(g, k, kind)?;
                            if id.applies_to(&p) {
                                out.push((id, RunRequest::full(&p)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for id in PropositionId::ALL {
            assert_eq!(id.as_str().parse::<PropositionId>().unwrap(), id);
        }
        assert!("tau".parse::<PropositionId>().is_err());
    }

    #[test]
    fn run_examples() {
        let opts = RunOptions::default();
        let req = RunRequest { genus: Some(3), k: Some(1), surface: Some(SurfaceKind::Closed) };
        let cert = run(PropositionId::TauSurjectivity, &req, &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.int_metric("rank"), Some(14));
        assert_eq!(cert.elapsed_ms, 0);

        let cert = run(PropositionId::Lantern, &RunRequest::default(), &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert!(!cert.transcript.is_empty());

        let bad = RunRequest { k: Some(2), ..req };
        assert!(matches!(run(PropositionId::TauSurjectivity, &bad, &opts), Err(Error::Parameter(_))));
        let missing = RunRequest { genus: Some(3), ..RunRequest::default() };
        assert!(run(PropositionId::TauSurjectivity, &missing, &opts).is_err());
    }

    #[test]
    fn sweep_plan() {
        let mut spec = SweepSpec::new(3, 4);
        spec.props = vec![PropositionId::TauSurjectivity];
        let plan = plan_sweep(&spec).unwrap();
        assert_eq!(plan.len(), 9);
        for kind in SurfaceKind::ALL {
            assert_eq!(plan.iter().filter(|(_, r)| r.surface == Some(kind)).count(), 3);
        }

        spec.props = PropositionId::ALL.to_vec();
        let plan = plan_sweep(&spec).unwrap();
        let count = |id: &str| plan.iter().filter(|(p, _)| p.as_str() == id).count();
        assert_eq!(count("lantern"), 1);
        assert_eq!(count("bcj-b2"), 2);
        assert_eq!(count("sigma-surjectivity"), 3);
        assert_eq!(count("factorization-3.3"), 2);
        assert_eq!(plan, plan_sweep(&spec).unwrap());

        spec.kinds.clear();
        assert!(plan_sweep(&spec).is_err());
        assert!(plan_sweep(&SweepSpec::new(2, 4)).is_err());
    }

    #[test]
    fn file_stems() {
        let req = RunRequest { genus: Some(4), k: Some(2), surface: Some(SurfaceKind::Bordered) };
        assert_eq!(req.file_stem(PropositionId::TauSurjectivity), "tau-surjectivity_g4_k2_bordered");
        assert_eq!(RunRequest::default().file_stem(PropositionId::Lantern), "lantern");
    }
}
