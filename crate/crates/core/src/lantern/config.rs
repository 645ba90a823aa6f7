//! Lantern embeddings used in the factorization identities.
//!
//! A configuration records a homology class and a topological role for each
//! of the seven curves, plus the complementary pieces glued to the boundary
//! curves `a, b, c, d`. Genus labels are recomputed from the gluing graph
//! rather than trusted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::twists::TwistName;
use super::word::TwistWord;
use crate::error::{param, Error, Result};
use crate::homology::{twist_action, HClass, HEndo};
use crate::params::{SurfaceKind, SurfaceParams};

use TwistName::{A, B, C, D, X, Y, Z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Figure {
    /// `d` cuts off genus `k`; the end lies beyond `a, b, c`.
    Fig1Left,
    /// `d` cuts off the end and genus `g-k-1`.
    Fig1Right,
    /// `d` cuts off genus `k` and `b` cuts off the end with genus `g-k-1`; `a` and `c` cobound an annulus.
    Fig2Left,
    /// `d` cuts off genus `g-2` and `b` bounds a disk around the end; `a` and `c` cobound a twice-holed torus.
    Fig2Right,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Self::Fig1Left, Self::Fig1Right, Self::Fig2Left, Self::Fig2Right];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fig1Left => "fig1_left",
            Self::Fig1Right => "fig1_right",
            Self::Fig2Left => "fig2_left",
            Self::Fig2Right => "fig2_right",
        }
    }

    /// Whether the figure can be drawn for these parameters.
    pub fn supports(self, params: &SurfaceParams) -> bool {
        match self {
            Self::Fig2Right => {
                params.surface() != SurfaceKind::Closed && params.genus() >= 4 && params.k() == params.genus() - 2
            }
            _ => true,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.as_str() == s).map_or_else(|| param(format!("unknown figure {s:?}")), Ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveRole {
    /// Separating curve cutting off genus `genus` (on the side away from the end).
    Separating { genus: usize },
    /// Half of a bounding pair of genus `genus`.
    BpPartner { partner: TwistName, genus: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub homology: HClass,
    pub role: CurveRole,
    /// Boundary curves whose classes sum to this curve's class.
    pub enclosure: Vec<TwistName>,
}

/// A connected subsurface glued to some of the lantern's boundary curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub genus: usize,
    pub boundary: Vec<TwistName>,
    pub has_end: bool,
}

/// The boundary curves on the side of each interior curve that contains `d`.
fn enclosure_of(name: TwistName) -> Vec<TwistName> {
    match name {
        X => vec![A, D],
        Y => vec![B, D],
        Z => vec![C, D],
        other => vec![other],
    }
}

#[derive(Clone, Debug)]
pub struct LanternConfig {
    pub figure: Figure,
    pub params: SurfaceParams,
    pub curves: BTreeMap<TwistName, CurveRecord>,
    pub pieces: Vec<Piece>,
}

/// Builds the configuration of `figure` inside the surface described by `params`.
pub fn build_config(figure: Figure, params: &SurfaceParams) -> Result<LanternConfig> {
    if !figure.supports(params) {
        return param(format!("{figure} needs a punctured or bordered surface with g >= 4 and k = g-2"));
    }
    let (g, k) = (params.genus(), params.k());
    let end = params.surface().has_end();
    let bk = |i: usize| HClass::b(g, i);
    let zero = HClass::zero(g);
    let neg = |c: HClass| c.checked_scale(-1);
    let sum = |x: &HClass, y: &HClass| x.checked_add(y);
    let piece = |genus, boundary: &[TwistName], has_end| Piece { genus, boundary: boundary.to_vec(), has_end };
    let bp = |partner, genus| CurveRole::BpPartner { partner, genus };
    let sep = |genus| CurveRole::Separating { genus };

    let (classes, pieces, roles): ([HClass; 4], Vec<Piece>, [(TwistName, CurveRole); 7]) = match figure {
        Figure::Fig1Left => (
            [bk(k + 1), bk(k + 2), neg(sum(&bk(k + 1), &bk(k + 2))?)?, zero],
            vec![piece(k, &[D], false), piece(g - k - 2, &[A, B, C], end)],
            [(A, bp(X, k)), (B, bp(Y, k)), (C, bp(Z, k)), (D, sep(k)), (X, bp(A, k)), (Y, bp(B, k)), (Z, bp(C, k))],
        ),
        Figure::Fig1Right => (
            [bk(k + 1), bk(k), neg(sum(&bk(k), &bk(k + 1))?)?, zero],
            vec![piece(g - k - 1, &[D], end), piece(k - 1, &[A, B, C], false)],
            [(A, bp(X, k)), (B, bp(Y, k)), (C, bp(Z, k)), (D, sep(k + 1)), (X, bp(A, k)), (Y, bp(B, k)), (Z, bp(C, k))],
        ),
        Figure::Fig2Left => (
            [bk(k + 1), zero.clone(), neg(bk(k + 1))?, zero],
            vec![piece(k, &[D], false), piece(g - k - 1, &[B], end), piece(0, &[A, C], false)],
            [(A, bp(X, k)), (B, sep(k + 1)), (C, bp(Z, k)), (D, sep(k)), (X, bp(A, k)), (Y, sep(1)), (Z, bp(C, k))],
        ),
        Figure::Fig2Right => (
            [bk(g - 1), zero.clone(), neg(bk(g - 1))?, zero],
            vec![piece(g - 2, &[D], false), piece(0, &[B], true), piece(1, &[A, C], false)],
            [
                (A, bp(X, g - 2)),
                (B, sep(g)),
                (C, bp(Z, g - 2)),
                (D, sep(g - 2)),
                (X, bp(A, g - 2)),
                (Y, sep(2)),
                (Z, bp(C, g - 2)),
            ],
        ),
    };

    let mut curves = BTreeMap::new();
    for (name, role) in roles {
        let mut homology = HClass::zero(g);
        for n in enclosure_of(name) {
            homology = homology.checked_add(&classes[n.slot()])?;
        }
        curves.insert(name, CurveRecord { homology, role, enclosure: enclosure_of(name) });
    }
    Ok(LanternConfig { figure, params: *params, curves, pieces })
}

/// A connected component left after cutting the gluing graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Component {
    genus: usize,
    has_end: bool,
}

impl LanternConfig {
    pub fn class(&self, name: TwistName) -> &HClass {
        &self.curves[&name].homology
    }

    /// Cuts the surface along `cut` and returns the components.
    ///
    /// Nodes are the pieces plus the lantern, which is split into two pairs
    /// of pants when an interior curve is cut.
    fn cut(&self, cut: &[TwistName]) -> Vec<Component> {
        let split = cut.iter().copied().find(|n| !n.is_boundary());
        // Node 0 is the lantern (or the pants containing d), node 1 the other pants.
        let lantern_node = |n: TwistName| match split {
            Some(s) if !enclosure_of(s).contains(&n) => 1,
            _ => 0,
        };
        let offset = 2;
        let node_count = offset + self.pieces.len();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            for &n in &p.boundary {
                if !cut.contains(&n) {
                    edges.push((lantern_node(n), offset + i));
                }
            }
        }
        let active: Vec<bool> = (0..node_count).map(|v| v != 1 || split.is_some()).collect();

        let mut parent: Vec<usize> = (0..node_count).collect();
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while parent[r] != r {
                r = parent[r];
            }
            parent[v] = r;
            r
        }
        for &(u, v) in &edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let mut comps: BTreeMap<usize, (usize, usize, usize, bool)> = BTreeMap::new();
        for v in (0..node_count).filter(|&v| active[v]) {
            let r = find(&mut parent, v);
            let entry = comps.entry(r).or_default();
            entry.1 += 1;
            if v >= offset {
                entry.0 += self.pieces[v - offset].genus;
                entry.3 |= self.pieces[v - offset].has_end;
            }
        }
        for &(u, _) in &edges {
            let r = find(&mut parent, u);
            comps.get_mut(&r).expect("edge endpoints are active").2 += 1;
        }
        comps
            .into_values()
            .map(|(genus, nodes, edge_count, has_end)| Component { genus: genus + edge_count + 1 - nodes, has_end })
            .collect()
    }

    /// Genus label of the curves in `cut` if they separate into exactly two pieces.
    fn label_matches(&self, cut: &[TwistName], label: usize) -> bool {
        let comps = self.cut(cut);
        if comps.len() != 2 {
            return false;
        }
        if self.params.surface().has_end() {
            comps.iter().any(|c| !c.has_end && c.genus == label)
        } else {
            comps.iter().any(|c| c.genus == label)
        }
    }

    /// Named invariant checks of the configuration.
    pub fn invariants(&self) -> Result<Vec<(&'static str, bool)>> {
        let g = self.params.genus();
        let end = usize::from(self.params.surface().has_end());

        let mut boundary_sum = HClass::zero(g);
        for n in TwistName::BOUNDARY {
            boundary_sum = boundary_sum.checked_add(self.class(n))?;
        }

        let mut enclosure_ok = true;
        for rec in self.curves.values() {
            let mut s = HClass::zero(g);
            for n in &rec.enclosure {
                s = s.checked_add(self.class(*n))?;
            }
            enclosure_ok &= s == rec.homology;
        }

        let mut pieces_ok = true;
        for p in &self.pieces {
            let mut s = HClass::zero(g);
            for n in &p.boundary {
                s = s.checked_add(self.class(*n))?;
            }
            pieces_ok &= s.is_zero();
        }
        let glued_once =
            TwistName::BOUNDARY.iter().all(|n| self.pieces.iter().filter(|p| p.boundary.contains(n)).count() == 1);

        let (mut sep_zero, mut bp_equal, mut labels) = (true, true, true);
        for (&name, rec) in &self.curves {
            match rec.role {
                CurveRole::Separating { genus } => {
                    sep_zero &= rec.homology.is_zero();
                    labels &= self.label_matches(&[name], genus) && self.genus_sum_ok(&[name]);
                }
                CurveRole::BpPartner { partner, genus } => {
                    bp_equal &= !rec.homology.is_zero() && rec.homology == *self.class(partner);
                    labels &= self.cut(&[name]).len() == 1
                        && self.label_matches(&[name, partner], genus)
                        && self.genus_sum_ok(&[name, partner]);
                }
            }
        }

        // Lantern (-2) plus each piece, glued along circles.
        let chi: i64 = -2
            + self
                .pieces
                .iter()
                .map(|p| 2 - 2 * p.genus as i64 - p.boundary.len() as i64 - i64::from(p.has_end))
                .sum::<i64>();
        let euler = chi == 2 - 2 * g as i64 - end as i64;
        let total_genus = matches!(self.cut(&[]).as_slice(), [c] if c.genus == g);
        let ends = self.pieces.iter().filter(|p| p.has_end).count() == end;

        Ok(vec![
            ("boundary_sum_zero", boundary_sum.is_zero()),
            ("enclosure_sums", enclosure_ok),
            ("piece_boundaries_null", pieces_ok && glued_once),
            ("separating_classes_zero", sep_zero),
            ("bp_classes_equal", bp_equal),
            ("genus_labels", labels),
            ("euler_characteristic", euler),
            ("total_genus", total_genus && ends),
        ])
    }

    /// Cutting a separating curve leaves genus `g` in total, cutting a bounding pair `g - 1`.
    fn genus_sum_ok(&self, cut: &[TwistName]) -> bool {
        let total: usize = self.cut(cut).iter().map(|c| c.genus).sum();
        total + usize::from(cut.len() == 2) == self.params.genus()
    }
}

/// Homology action of a twist word: the composite of transvection powers
/// along the curves' classes, leftmost factor applied last.
pub fn transvection_product(word: &TwistWord, config: &LanternConfig) -> Result<HEndo> {
    let mut out = HEndo::identity(config.params.genus());
    for &(name, e) in word.letters() {
        let Some(rec) = config.curves.get(&name) else {
            return param(format!("{name} is not a curve of the configuration"));
        };
        out = out.compose(&twist_action(&rec.homology, e)?)?;
    }
    Ok(out)
}
