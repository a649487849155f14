//! Linear-system evaluation of Hom spaces between reduced atoms.
//!
//! A morphism `A -> B` of line bundles on subcurves is, on each component `c`
//! of the overlap, multiplication by a section of `O(d_c)` with
//! `d_c = deg_B(c) - deg_A(c)`. Sections are modeled as polynomials of degree
//! at most `d_c` in a fixed affine coordinate; the value at the coordinate's
//! infinity is the leading coefficient. The constraints are:
//!
//! - at a node interior to the overlap the two local values agree (up to the
//!   node's gluing scalar, 1 unless overridden), and
//! - at a node where the target's support leaves the overlap the value
//!   vanishes (the generator there lies in the annihilator of the node),
//!
//! while nodes where only the source's support extends impose nothing: the
//! morphism simply kills the extra source components. `h0` is the dimension
//! of the solution space, computed by exact Gaussian elimination.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::{Component, CurveConfig};
use crate::error::{Error, Result};
use crate::sheaf::AtomicSheaf;

use super::frac::{rank, Frac};

/// Gluing scalars by node, keyed by the ordered component pair (small, large).
/// Missing nodes use 1. Values must be nonzero.
pub type GluingScalars = BTreeMap<(Component, Component), i64>;

/// Node parameter of an intersection point on one of its two components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeParam {
    Finite(i64),
    Infinity,
}

/// The parameter on `on` of the node joining `on` to `toward`.
fn node_param(cfg: &CurveConfig, on: Component, toward: Component) -> NodeParam {
    debug_assert!(cfg.neighbors(on).contains(&toward));
    match (on, toward) {
        (Component::Chain { position: i, .. }, Component::Chain { position: j, .. }) => {
            // Node with the next component sits at infinity, with the
            // previous at 0; both are distinct from the D node at 1.
            if i < j {
                NodeParam::Infinity
            } else {
                NodeParam::Finite(0)
            }
        }
        (Component::Chain { .. }, Component::D) => NodeParam::Finite(1),
        (Component::D, _) => {
            let idx = cfg
                .neighbors(Component::D)
                .iter()
                .position(|&n| n == toward)
                .expect("toward is a neighbor");
            NodeParam::Finite(idx as i64 + 1)
        }
    }
}

/// Evaluation row of a degree-`d` polynomial at a node parameter, written in
/// the coefficient basis; empty when there are no sections (`d < 0`).
fn eval_row(d: i64, at: NodeParam) -> Vec<Frac> {
    if d < 0 {
        return Vec::new();
    }
    let n = (d + 1) as usize;
    match at {
        NodeParam::Infinity => {
            let mut row = vec![Frac::ZERO; n];
            row[n - 1] = Frac::ONE;
            row
        }
        NodeParam::Finite(t) => (0..n as u32).map(|i| Frac::from_int(t).pow(i)).collect(),
    }
}

/// Degree difference on an overlap component.
fn degree_diff(a: &AtomicSheaf, b: &AtomicSheaf, c: Component) -> Result<i64> {
    Ok(b.concrete_degree(c)? - a.concrete_degree(c)?)
}

/// Split the overlap of two supports into connected pieces.
pub(super) fn overlap_pieces(
    cfg: &CurveConfig,
    a: &AtomicSheaf,
    b: &AtomicSheaf,
) -> Vec<BTreeSet<Component>> {
    let overlap: BTreeSet<Component> =
        a.support().intersection(b.support()).copied().collect();
    let mut remaining = overlap;
    let mut pieces = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut piece = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if !remaining.remove(&c) {
                continue;
            }
            piece.insert(c);
            for n in cfg.neighbors(c) {
                if remaining.contains(&n) {
                    stack.push(n);
                }
            }
        }
        pieces.push(piece);
    }
    pieces
}

/// Target-extension nodes on `c`: neighbors supporting `B` but not `A`.
pub(super) fn vanish_neighbors(
    cfg: &CurveConfig,
    a: &AtomicSheaf,
    b: &AtomicSheaf,
    c: Component,
) -> Vec<Component> {
    cfg.neighbors(c)
        .into_iter()
        .filter(|n| b.support().contains(n) && !a.support().contains(n))
        .collect()
}

/// Build the constraint system of one overlap piece: returns the unknown
/// count and the constraint rows.
pub(super) fn piece_system(
    cfg: &CurveConfig,
    a: &AtomicSheaf,
    b: &AtomicSheaf,
    piece: &BTreeSet<Component>,
    scalars: &GluingScalars,
) -> Result<(usize, Vec<Vec<Frac>>)> {
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    let mut diffs = BTreeMap::new();
    for &c in piece {
        let d = degree_diff(a, b, c)?;
        offsets.insert(c, total);
        total += (d + 1).max(0) as usize;
        diffs.insert(c, d);
    }

    let mut rows = Vec::new();
    let write = |row: &mut Vec<Frac>, c: Component, vals: &[Frac], scale: Frac| {
        let off = offsets[&c];
        for (i, &v) in vals.iter().enumerate() {
            row[off + i] = v.mul(scale);
        }
    };

    for &c in piece {
        // interior nodes: handle each unordered pair once
        for n in cfg.neighbors(c) {
            if piece.contains(&n) && c < n {
                let scalar = Frac::from_int(*scalars.get(&(c, n)).unwrap_or(&1));
                assert!(!scalar.is_zero(), "gluing scalars must be nonzero");
                let mut row = vec![Frac::ZERO; total];
                write(&mut row, c, &eval_row(diffs[&c], node_param(cfg, c, n)), Frac::ONE);
                write(&mut row, n, &eval_row(diffs[&n], node_param(cfg, n, c)), scalar.neg());
                rows.push(row);
            }
        }
        // vanishing at target-extension nodes
        for n in vanish_neighbors(cfg, a, b, c) {
            let mut row = vec![Frac::ZERO; total];
            write(&mut row, c, &eval_row(diffs[&c], node_param(cfg, c, n)), Frac::ONE);
            rows.push(row);
        }
    }
    Ok((total, rows))
}

fn require_reduced(a: &AtomicSheaf, b: &AtomicSheaf) -> Result<()> {
    if a.is_reduced() && b.is_reduced() {
        Ok(())
    } else {
        Err(Error::ThickenedInput)
    }
}

/// Dimension of `Hom(A, B)` for reduced concrete atoms with explicit gluing
/// scalars.
pub fn oracle_h0_with_scalars(
    cfg: &CurveConfig,
    a: &AtomicSheaf,
    b: &AtomicSheaf,
    scalars: &GluingScalars,
) -> Result<i64> {
    require_reduced(a, b)?;
    let mut h0 = 0i64;
    for piece in overlap_pieces(cfg, a, b) {
        let (unknowns, rows) = piece_system(cfg, a, b, &piece, scalars)?;
        h0 += unknowns as i64 - rank(rows) as i64;
    }
    Ok(h0)
}

/// Dimension of `Hom(A, B)` for reduced concrete atoms (gluing scalars 1).
pub fn oracle_h0(cfg: &CurveConfig, a: &AtomicSheaf, b: &AtomicSheaf) -> Result<i64> {
    oracle_h0_with_scalars(cfg, a, b, &GluingScalars::new())
}
