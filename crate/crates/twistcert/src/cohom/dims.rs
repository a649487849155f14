//! Hom-space dimensions `(h0, h1, h2)` between atoms.
//!
//! Reduced pairs are exact: `h0` from the closed form, `h2` by Serre duality
//! `h2(A, B) = h0(B, A (x) omega)`, and `h1` from the Euler form. A
//! thickened atom `T` is handled through its defining extensions
//!
//! ```text
//! 0 -> O_C(a+2)                -> O_{2C}(a)            -> O_C(a)         -> 0
//! 0 -> O_{C1uC2}(d1-1, d2+2)   -> O_{C1u2C2}(d1,d2)    -> O_{C2}(d2)     -> 0
//! 0 -> O_{C1uC2}(d1-1, d2+1)   -> O_{C1u2C2uC3}(d...)  -> O_{C2uC3}(d2,d3) -> 0
//! 0 -> O_{C2uC3}(d2+1, d3-1)   -> O_{C1u2C2uC3}(d...)  -> O_{C1uC2}(d1,d2) -> 0
//! 0 -> O_{C1uC2uC3}(d1-1,d2+2,d3-1) -> O_{C1u2C2uC3}(d...) -> O_{C2}(d2) -> 0
//! ```
//!
//! (plus mirror images). Each extension's long exact sequence turns the two
//! exact outer columns into the set of `(h0, h1, h2)` triples consistent
//! with some rank of the two connecting maps; intersecting the sets over all
//! presentations, and with the Serre-dual computation, usually pins a single
//! triple. When it does not, the result is reported as ranges with
//! `determinate = false`; nothing is ever guessed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::{Component, CurveConfig};
use crate::error::{Error, Result};
use crate::lattice::chi as class_chi;
use crate::sheaf::AtomicSheaf;

use super::closed::closed_form_h0;

/// An integer range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRange {
    pub lo: i64,
    pub hi: i64,
}

impl DimRange {
    fn of(values: impl Iterator<Item = i64> + Clone) -> DimRange {
        DimRange {
            lo: values.clone().min().expect("nonempty"),
            hi: values.max().expect("nonempty"),
        }
    }

    /// True when the range is the single point `v`.
    pub fn is_exactly(self, v: i64) -> bool {
        self.lo == v && self.hi == v
    }

    /// The point value, if pinned.
    pub fn point(self) -> Option<i64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl std::fmt::Display for DimRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.point() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{},{}]", self.lo, self.hi),
        }
    }
}

/// Hom dimensions between two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDims {
    pub h0: DimRange,
    pub h1: DimRange,
    pub h2: DimRange,
    /// Euler characteristic `h0 - h1 + h2`, always exact.
    pub chi: i64,
    /// True when a single triple is consistent with every route.
    pub determinate: bool,
}

impl HomDims {
    fn from_triples(triples: &BTreeSet<(i64, i64, i64)>, chi: i64) -> HomDims {
        HomDims {
            h0: DimRange::of(triples.iter().map(|t| t.0)),
            h1: DimRange::of(triples.iter().map(|t| t.1)),
            h2: DimRange::of(triples.iter().map(|t| t.2)),
            chi,
            determinate: triples.len() == 1,
        }
    }
}

/// The defining extensions `0 -> sub -> T -> quot -> 0` of a thickened atom.
pub fn presentations(cfg: &CurveConfig, t: &AtomicSheaf) -> Result<Vec<(AtomicSheaf, AtomicSheaf)>> {
    let thick: Vec<Component> = t.thick_components().iter().copied().collect();
    let [m] = thick[..] else {
        return Err(Error::UnknownThickening(format!(
            "{t}: exactly one thickened component is supported"
        )));
    };
    let neighbors: Vec<Component> = cfg
        .neighbors(m)
        .into_iter()
        .filter(|n| t.support().contains(n))
        .collect();
    let expected: BTreeSet<Component> =
        neighbors.iter().copied().chain([m]).collect();
    if *t.support() != expected || neighbors.iter().any(|n| n.is_d()) || neighbors.len() > 2 {
        return Err(Error::UnknownThickening(format!(
            "{t}: support must be the thickened component plus at most two chain neighbors"
        )));
    }
    let dm = t.degree(m).clone();
    let atom = |comps: &[Component], degs: &[crate::sheaf::LinExpr]| {
        AtomicSheaf::line_sym(cfg, comps, degs)
    };
    let mut out = Vec::new();
    match neighbors[..] {
        [] => {
            out.push((atom(&[m], &[dm.plus(2)])?, atom(&[m], &[dm.clone()])?));
        }
        [x] => {
            let dx = t.degree(x).clone();
            out.push((atom(&[x, m], &[dx.plus(-1), dm.plus(2)])?, atom(&[m], &[dm.clone()])?));
        }
        [x, y] => {
            // orient x below m below y along the chain
            let (x, y) = if x < m { (x, y) } else { (y, x) };
            debug_assert!(x < m && m < y);
            let dx = t.degree(x).clone();
            let dy = t.degree(y).clone();
            out.push((
                atom(&[x, m], &[dx.plus(-1), dm.plus(1)])?,
                atom(&[m, y], &[dm.clone(), dy.clone()])?,
            ));
            out.push((
                atom(&[m, y], &[dm.plus(1), dy.plus(-1)])?,
                atom(&[x, m], &[dx.clone(), dm.clone()])?,
            ));
            out.push((
                atom(&[x, m, y], &[dx.plus(-1), dm.plus(2), dy.plus(-1)])?,
                atom(&[m], &[dm.clone()])?,
            ));
        }
        _ => unreachable!("at most two neighbors checked above"),
    }
    Ok(out)
}

/// Euler characteristic between atom classes.
fn chi_atoms(cfg: &CurveConfig, a: &AtomicSheaf, b: &AtomicSheaf) -> Result<i64> {
    class_chi(cfg, &a.class(cfg), &b.class(cfg))
}

/// Exact triple for a reduced pair.
fn reduced_triple(cfg: &CurveConfig, a: &AtomicSheaf, b: &AtomicSheaf) -> Result<(i64, i64, i64)> {
    let h0 = closed_form_h0(cfg, a, b)?;
    let h2 = closed_form_h0(cfg, b, &a.tensor_omega())?;
    let chi = chi_atoms(cfg, a, b)?;
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(Error::Internal(format!(
            "negative h1 = {h1} for Hom({a}, {b}): h0 = {h0}, h2 = {h2}, chi = {chi}"
        )));
    }
    Ok((h0, h1, h2))
}

/// All triples compatible with a long exact sequence whose outer columns run
/// over `first` and `second` (in sequence order: `first` appears before
/// `second` in each cohomological degree).
fn les_triples(
    first: &BTreeSet<(i64, i64, i64)>,
    second: &BTreeSet<(i64, i64, i64)>,
) -> BTreeSet<(i64, i64, i64)> {
    let mut out = BTreeSet::new();
    for f in first {
        for s in second {
            for rho0 in 0..=s.0.min(f.1) {
                for rho1 in 0..=s.1.min(f.2) {
                    out.insert((
                        f.0 + s.0 - rho0,
                        f.1 + s.1 - rho0 - rho1,
                        f.2 + s.2 - rho1,
                    ));
                }
            }
        }
    }
    out
}

/// The set of `(h0, h1, h2)` triples consistent with every available route.
fn possible_triples(
    cfg: &CurveConfig,
    a: &AtomicSheaf,
    b: &AtomicSheaf,
    use_serre: bool,
) -> Result<BTreeSet<(i64, i64, i64)>> {
    if a.is_reduced() && b.is_reduced() {
        return Ok(BTreeSet::from([reduced_triple(cfg, a, b)?]));
    }
    let mut routes: Vec<BTreeSet<(i64, i64, i64)>> = Vec::new();
    if !b.is_reduced() {
        // covariant in the second argument: 0 -> Hom(A,S) -> Hom(A,T) ->
        // Hom(A,Q) -> Ext1(A,S) -> ...
        for (sub, quot) in presentations(cfg, b)? {
            let s = possible_triples(cfg, a, &sub, false)?;
            let q = possible_triples(cfg, a, &quot, false)?;
            routes.push(les_triples(&s, &q));
        }
    }
    if !a.is_reduced() {
        // contravariant in the first argument: 0 -> Hom(Q,B) -> Hom(T,B) ->
        // Hom(S,B) -> Ext1(Q,B) -> ...
        for (sub, quot) in presentations(cfg, a)? {
            let q = possible_triples(cfg, &quot, b, false)?;
            let s = possible_triples(cfg, &sub, b, false)?;
            routes.push(les_triples(&q, &s));
        }
    }
    if use_serre {
        let dual = possible_triples(cfg, b, &a.tensor_omega(), false)?;
        routes.push(dual.into_iter().map(|(h0, h1, h2)| (h2, h1, h0)).collect());
    }
    let mut iter = routes.into_iter();
    let mut acc = iter.next().ok_or_else(|| {
        Error::UnknownThickening(format!("no route to compute Hom({a}, {b})"))
    })?;
    for set in iter {
        acc = acc.intersection(&set).copied().collect();
    }
    if acc.is_empty() {
        return Err(Error::Internal(format!(
            "inconsistent presentation routes for Hom({a}, {b})"
        )));
    }
    Ok(acc)
}

/// Hom dimensions between two concrete atoms. Exact for reduced pairs;
/// intersected presentation bounds when a side is thickened.
pub fn hom_dims(cfg: &CurveConfig, a: &AtomicSheaf, b: &AtomicSheaf) -> Result<HomDims> {
    let chi = chi_atoms(cfg, a, b)?;
    let triples = possible_triples(cfg, a, b, true)?;
    for &(h0, h1, h2) in &triples {
        if h0 - h1 + h2 != chi {
            return Err(Error::Internal(format!(
                "triple ({h0},{h1},{h2}) violates chi = {chi} for Hom({a}, {b})"
            )));
        }
    }
    Ok(HomDims::from_triples(&triples, chi))
}
