//! Fixtures shared by the benchmarks.

use torelli_core::{SurfaceKind, SurfaceParams};

/// Parameter sets benchmarked for the orbit-span verifiers.
pub fn tau_cases() -> Vec<SurfaceParams> {
    [(3, 1, SurfaceKind::Closed), (4, 1, SurfaceKind::Bordered), (4, 2, SurfaceKind::Closed)]
        .into_iter()
        .map(|(g, k, kind)| SurfaceParams::new(g, k, kind).expect("valid fixture"))
        .collect()
}

pub fn label(p: &SurfaceParams) -> String {
    format!("g{}_k{}_{}", p.genus(), p.k(), p.surface())
}
