use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Largest genus accepted anywhere; mod-2 monomials are packed into a `u64`.
pub const MAX_GENUS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Closed,
    Punctured,
    Bordered,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 3] = [Self::Closed, Self::Punctured, Self::Bordered];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Closed => "closed",
            Self::Punctured => "punctured",
            Self::Bordered => "bordered",
        }
    }

    /// Punctured and bordered surfaces carry one distinguished end.
    pub fn has_end(self) -> bool {
        !matches!(self, Self::Closed)
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Self::Closed),
            "punctured" => Ok(Self::Punctured),
            "bordered" => Ok(Self::Bordered),
            other => param(format!("unknown surface kind {other:?} (expected closed, punctured or bordered)")),
        }
    }
}

/// Genus `g`, bounding-pair genus `k` and surface kind, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceParams {
    genus: usize,
    k: usize,
    surface: SurfaceKind,
}

impl SurfaceParams {
    pub fn new(genus: usize, k: usize, surface: SurfaceKind) -> Result<Self> {
        check_genus(genus)?;
        if k < 1 || k + 1 >= genus {
            return param(format!(
                "bounding-pair genus k={k} outside the range 1 <= k < g-1 for g={genus} \
                 (the generation theorem requires g >= 3 and 1 <= k < g-1)"
            ));
        }
        Ok(Self { genus, k, surface })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    /// Every valid `k` for the given genus.
    pub fn valid_k(genus: usize) -> std::ops::Range<usize> {
        1..genus.saturating_sub(1).max(1)
    }
}

pub(crate) fn check_genus(genus: usize) -> Result<()> {
    if genus < 3 {
        return param(format!("genus g={genus} is below 3 (g >= 3 is required)"));
    }
    if genus > MAX_GENUS {
        return param(format!("genus g={genus} exceeds the supported maximum {MAX_GENUS}"));
    }
    Ok(())
}
