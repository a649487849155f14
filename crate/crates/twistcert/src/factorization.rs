//! Ordered factorizations of pure sheaves and rewrite moves on them.
//!
//! A factorization is an ordered list of slots, each slot a direct sum of
//! atoms with multiplicities; the sheaf it describes is filtered with these
//! slots as subquotients, first slot on top. The module provides:
//!
//! - `perfectness_check`: no degree-0 maps forward and no degree-2 maps
//!   backward between distinct slots, so the filtration is canonical;
//! - `swap`: exchange adjacent slots when the gluing space between them
//!   vanishes;
//! - `extension_atom`: the middle term of a short exact sequence of atoms
//!   with a one-dimensional extension space, for the support shapes where a
//!   closed-form answer exists;
//! - `absorb`: fold one copy of a spherical slot into an adjacent slot
//!   through such an extension;
//! - `hn_factorization`: the degree-decreasing filtration of a sheaf
//!   supported on one component;
//! - `catalog`: symbolic factorization shapes for the small multiplicity
//!   patterns, with the parameter inequalities under which they apply.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohom::hom_dims;
use crate::config::{Component, CurveConfig};
use crate::error::{Error, Result};
use crate::lattice::{chi, is_numerically_spherical, DivisorClass};
use crate::sheaf::{AtomicSheaf, LinExpr};

/// One slot of a factorization: a direct sum of atoms with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSlot {
    summands: Vec<(AtomicSheaf, u32)>,
}

impl FactorSlot {
    /// A single atom with multiplicity 1.
    pub fn atom(a: AtomicSheaf) -> Self {
        FactorSlot { summands: vec![(a, 1)] }
    }

    /// A single atom with the given multiplicity.
    pub fn with_multiplicity(a: AtomicSheaf, mult: u32) -> Result<Self> {
        FactorSlot::direct_sum(vec![(a, mult)])
    }

    /// A direct sum of atoms. Multiplicities must be positive.
    pub fn direct_sum(summands: Vec<(AtomicSheaf, u32)>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidDocument("empty factor slot".into()));
        }
        for (a, m) in &summands {
            if *m == 0 {
                return Err(Error::InvalidDocument(format!("multiplicity 0 on {a}")));
            }
        }
        Ok(FactorSlot { summands })
    }

    pub fn summands(&self) -> &[(AtomicSheaf, u32)] {
        &self.summands
    }

    /// The unique summand, if the slot is a single atom power.
    pub fn single(&self) -> Option<(&AtomicSheaf, u32)> {
        match self.summands.as_slice() {
            [(a, m)] => Some((a, *m)),
            _ => None,
        }
    }

    pub fn class(&self, cfg: &CurveConfig) -> DivisorClass {
        let mut out = DivisorClass::zero(cfg);
        for (a, m) in &self.summands {
            out = out.plus(&a.class(cfg).scaled(i64::from(*m)));
        }
        out
    }

    fn is_symbolic(&self) -> bool {
        self.summands.iter().any(|(a, _)| a.is_symbolic())
    }

    fn instantiate(&self, bindings: &BTreeMap<String, i64>) -> Result<Self> {
        let mut summands = Vec::with_capacity(self.summands.len());
        for (a, m) in &self.summands {
            summands.push((a.instantiate(bindings)?, *m));
        }
        Ok(FactorSlot { summands })
    }
}

impl fmt::Display for FactorSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, m)) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{a}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// An ordered factorization, first slot on top of the filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    slots: Vec<FactorSlot>,
}

/// JSON form of one summand: an atom document plus a multiplicity.
#[derive(Serialize, Deserialize)]
struct SummandDoc {
    support: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    thick: BTreeMap<String, u8>,
    deg: BTreeMap<String, LinExpr>,
    #[serde(default = "mult_one", skip_serializing_if = "mult_is_one")]
    mult: u32,
}

fn mult_one() -> u32 {
    1
}

fn mult_is_one(m: &u32) -> bool {
    *m == 1
}

impl Factorization {
    pub fn new(slots: Vec<FactorSlot>) -> Self {
        Factorization { slots }
    }

    pub fn slots(&self) -> &[FactorSlot] {
        &self.slots
    }

    pub fn class(&self, cfg: &CurveConfig) -> DivisorClass {
        let mut out = DivisorClass::zero(cfg);
        for s in &self.slots {
            out = out.plus(&s.class(cfg));
        }
        out
    }

    pub fn is_symbolic(&self) -> bool {
        self.slots.iter().any(FactorSlot::is_symbolic)
    }

    /// Substitute parameter values in every degree expression.
    pub fn instantiate(&self, bindings: &BTreeMap<String, i64>) -> Result<Self> {
        let mut slots = Vec::with_capacity(self.slots.len());
        for s in &self.slots {
            slots.push(s.instantiate(bindings)?);
        }
        Ok(Factorization { slots })
    }

    /// Parse the JSON document form: an array of slots, each an array of
    /// summands `{"support": [...], "thick": {...}, "deg": {...}, "mult": n}`.
    pub fn from_json(cfg: &CurveConfig, text: &str) -> Result<Self> {
        let raw: Vec<Vec<SummandDoc>> = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        let mut slots = Vec::with_capacity(raw.len());
        for docs in raw {
            let mut summands = Vec::with_capacity(docs.len());
            for doc in docs {
                let atom =
                    AtomicSheaf::from_named_parts(cfg, &doc.support, &doc.thick, doc.deg)?;
                summands.push((atom, doc.mult));
            }
            slots.push(FactorSlot::direct_sum(summands)?);
        }
        Ok(Factorization { slots })
    }

    /// Serialize to the JSON document form.
    pub fn to_json(&self) -> String {
        let raw: Vec<Vec<SummandDoc>> = self
            .slots
            .iter()
            .map(|s| {
                s.summands
                    .iter()
                    .map(|(a, m)| {
                        let (support, thick, deg) = a.to_named_parts();
                        SummandDoc { support, thick, deg, mult: *m }
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string(&raw).expect("factorization serialization cannot fail")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Outcome of a perfectness check, with one line per violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectnessReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

fn require_concrete(f: &Factorization) -> Result<()> {
    if f.is_symbolic() {
        return Err(Error::SymbolicDegree(
            "perfectness and rewrites need concrete degrees; instantiate the parameters first"
                .into(),
        ));
    }
    Ok(())
}

/// Check that the filtration is canonical: for slots `i < j`, every atom
/// pair has no degree-0 map forward and no degree-2 map backward, and atoms
/// sharing a slot have no mutual degree-1 obstruction. Dimensions that the
/// bounding routes leave undetermined count as failures.
pub fn perfectness_check(cfg: &CurveConfig, f: &Factorization) -> Result<PerfectnessReport> {
    require_concrete(f)?;
    let mut failures = Vec::new();
    let check = |level: u8,
                     src: &AtomicSheaf,
                     dst: &AtomicSheaf,
                     failures: &mut Vec<String>|
     -> Result<()> {
        let dims = hom_dims(cfg, src, dst)?;
        let range = match level {
            0 => dims.h0,
            1 => dims.h1,
            _ => dims.h2,
        };
        match range.point() {
            Some(0) => {}
            Some(v) => failures.push(format!("h{level}({src} -> {dst}) = {v}, want 0")),
            None => failures.push(format!(
                "h{level}({src} -> {dst}) only bounded to {range}, want 0"
            )),
        }
        Ok(())
    };
    for i in 0..f.slots.len() {
        for (u, _) in &f.slots[i].summands {
            for (v, _) in &f.slots[i].summands {
                if u != v {
                    check(1, u, v, &mut failures)?;
                }
            }
            for later in &f.slots[i + 1..] {
                for (w, _) in &later.summands {
                    check(0, u, w, &mut failures)?;
                    check(2, w, u, &mut failures)?;
                }
            }
        }
    }
    Ok(PerfectnessReport { pass: failures.is_empty(), failures })
}

/// Exchange slots `position` and `position + 1` (1-based). Allowed when no
/// atom of the later slot has a degree-1 obstruction against the earlier.
pub fn swap(cfg: &CurveConfig, f: &Factorization, position: usize) -> Result<Factorization> {
    let len = f.slots.len();
    if position == 0 || position + 1 > len {
        return Err(Error::PositionOutOfRange { position, len });
    }
    require_concrete(f)?;
    let (earlier, later) = (&f.slots[position - 1], &f.slots[position]);
    for (g, _) in &earlier.summands {
        for (h, _) in &later.summands {
            let dims = hom_dims(cfg, h, g)?;
            match dims.h1.point() {
                Some(0) => {}
                Some(v) => {
                    return Err(Error::RewriteObstructed(format!(
                        "h1({h} -> {g}) = {v}; adjacent slots only commute when it is 0"
                    )))
                }
                None => {
                    return Err(Error::Indeterminate(format!(
                        "h1({h} -> {g}) only bounded to {}",
                        dims.h1
                    )))
                }
            }
        }
    }
    let mut slots = f.slots.clone();
    slots.swap(position - 1, position);
    Ok(Factorization { slots })
}

/// The middle term of a short exact sequence `0 -> sub -> E -> quot -> 0`
/// with a one-dimensional extension space, as a single atom.
///
/// Three support shapes have a closed-form answer:
/// - disjoint supports meeting along one node: the union, with the degree on
///   the sub component at the node raised by 1;
/// - reduced supports overlapping in exactly one interior component whose
///   quotient degree is one below the sub degree: that component thickens,
///   keeps the quotient degree, and the sub-side neighbor is raised by 1;
/// - a single-component quotient inside the sub support with degree two
///   below: that component thickens, keeps the quotient degree, and every
///   neighbor in the support is raised by 1.
///
/// Anything else reports that no rewrite rule applies.
pub fn extension_atom(
    cfg: &CurveConfig,
    sub: &AtomicSheaf,
    quot: &AtomicSheaf,
) -> Result<AtomicSheaf> {
    let dims = hom_dims(cfg, quot, sub)?;
    match dims.h1.point() {
        Some(1) => {}
        Some(v) => {
            return Err(Error::RewriteObstructed(format!(
                "h1({quot} -> {sub}) = {v}; a unique middle term needs exactly 1"
            )))
        }
        None => {
            return Err(Error::Indeterminate(format!(
                "h1({quot} -> {sub}) only bounded to {}",
                dims.h1
            )))
        }
    }
    if !sub.is_reduced() || !quot.is_reduced() {
        return Err(Error::NoExtensionRule(format!(
            "no rule covers thickened terms in 0 -> {sub} -> E -> {quot} -> 0"
        )));
    }
    let overlap: BTreeSet<Component> =
        sub.support().intersection(quot.support()).copied().collect();
    if overlap.is_empty() {
        // Disjoint supports: glue along the unique connecting node.
        let mut junctions = Vec::new();
        for &a in sub.support() {
            for &b in quot.support() {
                if cfg.pair_components(a, b) > 0 {
                    junctions.push((a, b));
                }
            }
        }
        let [(junction, _)] = junctions.as_slice() else {
            return Err(Error::NoExtensionRule(format!(
                "supports of {sub} and {quot} meet along {} nodes, need exactly 1",
                junctions.len()
            )));
        };
        let mut support = sub.support().clone();
        support.extend(quot.support().iter().copied());
        let mut deg = BTreeMap::new();
        for &c in sub.support() {
            let e = sub.degree(c).clone();
            deg.insert(c, if c == *junction { e.plus(1) } else { e });
        }
        for &c in quot.support() {
            deg.insert(c, quot.degree(c).clone());
        }
        return AtomicSheaf::new(cfg, support, BTreeSet::new(), deg);
    }
    let [c] = Vec::from_iter(overlap).try_into().map_err(|_| {
        Error::NoExtensionRule(format!(
            "supports of {sub} and {quot} overlap in more than one component"
        ))
    })?;
    if c == Component::D {
        return Err(Error::NoExtensionRule(
            "the (-1)-curve cannot carry multiplicity 2".into(),
        ));
    }
    if quot.support().len() == 1 {
        // Quotient sits inside the sub support; its component thickens.
        if quot.degree(c) != &sub.degree(c).plus(-2) {
            return Err(Error::NoExtensionRule(format!(
                "deg {c} of {quot} must be two below its degree in {sub}"
            )));
        }
        let mut deg = BTreeMap::new();
        for &x in sub.support() {
            let e = if x == c {
                quot.degree(c).clone()
            } else if cfg.pair_components(x, c) > 0 {
                sub.degree(x).plus(1)
            } else {
                sub.degree(x).clone()
            };
            deg.insert(x, e);
        }
        return AtomicSheaf::new(cfg, sub.support().clone(), BTreeSet::from([c]), deg);
    }
    // End overlap: both sides continue past `c` in exactly one direction.
    let side_neighbor = |s: &AtomicSheaf| -> Vec<Component> {
        s.support()
            .iter()
            .copied()
            .filter(|&x| x != c && cfg.pair_components(x, c) > 0)
            .collect()
    };
    let sub_side = side_neighbor(sub);
    let quot_side = side_neighbor(quot);
    let (&[sub_next], &[_]) = (sub_side.as_slice(), quot_side.as_slice()) else {
        return Err(Error::NoExtensionRule(format!(
            "each of {sub} and {quot} must continue past {c} in exactly one direction"
        )));
    };
    if quot.degree(c) != &sub.degree(c).plus(-1) {
        return Err(Error::NoExtensionRule(format!(
            "deg {c} of {quot} must be one below its degree in {sub}"
        )));
    }
    let mut support = sub.support().clone();
    support.extend(quot.support().iter().copied());
    let mut deg = BTreeMap::new();
    for &x in sub.support() {
        if x != c {
            let e = sub.degree(x).clone();
            deg.insert(x, if x == sub_next { e.plus(1) } else { e });
        }
    }
    for &x in quot.support() {
        deg.insert(x, quot.degree(x).clone());
    }
    AtomicSheaf::new(cfg, support, BTreeSet::from([c]), deg)
}

/// Which neighbor a spherical slot is folded into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsorbDirection {
    /// Into the slot before it: `..., G, S^r, ...` becomes
    /// `..., S^(r-1), G', ...` with `0 -> G -> G' -> S -> 0`.
    Left,
    /// Into the slot after it: `..., S^r, H, ...` becomes
    /// `..., H', S^(r-1), ...` with `0 -> S -> H' -> H -> 0`.
    Right,
}

/// Fold one copy of the spherical slot at `position` (1-based) into its
/// neighbor through a one-dimensional extension.
pub fn absorb(
    cfg: &CurveConfig,
    f: &Factorization,
    position: usize,
    direction: AbsorbDirection,
) -> Result<Factorization> {
    let len = f.slots.len();
    if position == 0 || position > len {
        return Err(Error::PositionOutOfRange { position, len });
    }
    require_concrete(f)?;
    let idx = position - 1;
    let Some((s, r)) = f.slots[idx].single() else {
        return Err(Error::RewriteObstructed(format!(
            "slot {position} is a direct sum; only a single atom power can be absorbed"
        )));
    };
    if !is_numerically_spherical(cfg, &s.class(cfg)) {
        return Err(Error::NotSpherical(format!(
            "slot {position} carries {s}, whose class is not numerically spherical"
        )));
    }
    let neighbor_idx = match direction {
        AbsorbDirection::Left => idx.checked_sub(1).ok_or_else(|| {
            Error::RewriteObstructed(format!("slot {position} has no earlier neighbor"))
        })?,
        AbsorbDirection::Right => {
            if idx + 1 >= len {
                return Err(Error::RewriteObstructed(format!(
                    "slot {position} has no later neighbor"
                )));
            }
            idx + 1
        }
    };
    let Some((n, 1)) = f.slots[neighbor_idx].single() else {
        return Err(Error::RewriteObstructed(format!(
            "slot {} must be a single atom with multiplicity 1",
            neighbor_idx + 1
        )));
    };
    // The earlier of the two atoms must have no degree-0 map to the later
    // and pairing characteristic -1 against it.
    let (first, second) = match direction {
        AbsorbDirection::Left => (s, n),
        AbsorbDirection::Right => (n, s),
    };
    let dims = hom_dims(cfg, first, second)?;
    match dims.h0.point() {
        Some(0) => {}
        Some(v) => {
            return Err(Error::RewriteObstructed(format!(
                "h0({first} -> {second}) = {v}; absorbing needs 0"
            )))
        }
        None => {
            return Err(Error::Indeterminate(format!(
                "h0({first} -> {second}) only bounded to {}",
                dims.h0
            )))
        }
    }
    let pairing = chi(cfg, &first.class(cfg), &second.class(cfg))?;
    if pairing != -1 {
        return Err(Error::RewriteObstructed(format!(
            "chi({first}, {second}) = {pairing}; absorbing needs -1"
        )));
    }
    let (sub, quot) = match direction {
        AbsorbDirection::Left => (n, s),
        AbsorbDirection::Right => (s, n),
    };
    let merged = extension_atom(cfg, sub, quot)?;
    let mut slots = Vec::with_capacity(len);
    for (i, slot) in f.slots.iter().enumerate() {
        if i == idx {
            match direction {
                AbsorbDirection::Left => {
                    if r > 1 {
                        slots.push(FactorSlot::with_multiplicity(s.clone(), r - 1)?);
                    }
                    slots.push(FactorSlot::atom(merged.clone()));
                }
                AbsorbDirection::Right => {
                    slots.push(FactorSlot::atom(merged.clone()));
                    if r > 1 {
                        slots.push(FactorSlot::with_multiplicity(s.clone(), r - 1)?);
                    }
                }
            }
        } else if i != neighbor_idx {
            slots.push(slot.clone());
        }
    }
    Ok(Factorization { slots })
}

/// The degree-decreasing filtration of a direct sum of line bundles on one
/// component: equal degrees merge into one slot, zero multiplicities drop,
/// and slots are ordered by strictly decreasing degree.
pub fn hn_factorization(cfg: &CurveConfig, comp: Component, data: &[(i64, u32)]) -> Factorization {
    assert!(cfg.contains(comp), "component {comp} is not in the configuration");
    let mut by_degree: BTreeMap<i64, u32> = BTreeMap::new();
    for &(d, m) in data {
        if m > 0 {
            *by_degree.entry(d).or_insert(0) += m;
        }
    }
    let slots = by_degree
        .into_iter()
        .rev()
        .map(|(d, m)| {
            let atom = AtomicSheaf::line(cfg, &[comp], &[d]).expect("single-component atom");
            FactorSlot::with_multiplicity(atom, m).expect("positive multiplicity")
        })
        .collect();
    Factorization { slots }
}

/// One entry of a factorization catalog.
#[derive(Debug, Clone)]
pub enum CatalogEntry {
    /// A factorization shape, valid whenever each listed parameter pair is
    /// strictly decreasing.
    Perfect {
        label: String,
        factorization: Factorization,
        /// Pairs `(x, y)` meaning the parameter `x` must exceed `y`.
        conditions: Vec<(String, String)>,
    },
    /// A peel move splitting off a line bundle on the listed support.
    PeelSplit { label: String, line_support: Vec<Component> },
}

fn chain_comps(cfg: &CurveConfig, pattern: &str, n: usize) -> Result<Vec<Component>> {
    let Some(chain) = cfg.chains().first() else {
        return Err(Error::ShapeMismatch(format!(
            "pattern {pattern} needs a chain with at least {n} components"
        )));
    };
    if chain.length < n {
        return Err(Error::ShapeMismatch(format!(
            "pattern {pattern} needs a chain with at least {n} components"
        )));
    }
    Ok((0..n).map(|i| Component::Chain { chain: 0, position: i }).collect())
}

fn p(name: &str) -> LinExpr {
    LinExpr::param(name)
}

/// Catalog of factorization shapes for a multiplicity pattern on the first
/// chain. Patterns `12` and `123` list the canonical filtrations with
/// symbolic degrees; patterns `12321` and `123321` list the supports of the
/// line bundles that peel moves can split off.
pub fn catalog(cfg: &CurveConfig, pattern: &str) -> Result<Vec<CatalogEntry>> {
    match pattern {
        "12" => {
            let cc = chain_comps(cfg, pattern, 2)?;
            let (c1, c2) = (cc[0], cc[1]);
            let pair = |degs: [LinExpr; 2]| {
                AtomicSheaf::line_sym(cfg, &[c1, c2], &degs).expect("catalog atom")
            };
            let end = |d: LinExpr| AtomicSheaf::line_sym(cfg, &[c2], &[d]).expect("catalog atom");
            let shapes = [
                ("1", vec![end(p("a2")), pair([p("a1"), p("a2")])]),
                ("2", vec![pair([p("a1"), p("a2")]), end(p("a2").plus(-1))]),
                ("3", vec![pair([p("a1"), p("a2")]), end(p("a2").plus(-2))]),
            ];
            Ok(shapes
                .into_iter()
                .map(|(label, atoms)| CatalogEntry::Perfect {
                    label: label.into(),
                    factorization: Factorization::new(
                        atoms.into_iter().map(FactorSlot::atom).collect(),
                    ),
                    conditions: Vec::new(),
                })
                .collect())
        }
        "123" => catalog_123(cfg, pattern),
        "12321" => {
            let cc = chain_comps(cfg, pattern, 5)?;
            let windows: [(usize, usize); 6] = [(1, 3), (2, 3), (3, 3), (3, 4), (3, 5), (1, 5)];
            Ok(windows
                .into_iter()
                .enumerate()
                .map(|(i, (s, t))| CatalogEntry::PeelSplit {
                    label: format!("{}", i + 1),
                    line_support: cc[s - 1..t].to_vec(),
                })
                .collect())
        }
        "123321" => {
            let cc = chain_comps(cfg, pattern, 6)?;
            let windows: [(usize, usize); 7] =
                [(1, 3), (2, 3), (3, 3), (2, 4), (2, 5), (2, 6), (3, 4)];
            Ok(windows
                .into_iter()
                .enumerate()
                .map(|(i, (s, t))| CatalogEntry::PeelSplit {
                    label: format!("{}", i + 1),
                    line_support: cc[s - 1..t].to_vec(),
                })
                .collect())
        }
        other => Err(Error::UnknownPattern(other.into())),
    }
}

fn catalog_123(cfg: &CurveConfig, pattern: &str) -> Result<Vec<CatalogEntry>> {
    let cc = chain_comps(cfg, pattern, 3)?;
    let (c1, c2, c3) = (cc[0], cc[1], cc[2]);
    let full =
        |d: [LinExpr; 3]| AtomicSheaf::line_sym(cfg, &[c1, c2, c3], &d).expect("catalog atom");
    let tail = |d: [LinExpr; 2]| AtomicSheaf::line_sym(cfg, &[c2, c3], &d).expect("catalog atom");
    let end = |d: LinExpr| AtomicSheaf::line_sym(cfg, &[c3], &[d]).expect("catalog atom");
    let thick_full = |d: [LinExpr; 3]| {
        AtomicSheaf::new(
            cfg,
            BTreeSet::from([c1, c2, c3]),
            BTreeSet::from([c2]),
            BTreeMap::from([(c1, d[0].clone()), (c2, d[1].clone()), (c3, d[2].clone())]),
        )
        .expect("catalog atom")
    };
    let (a1, a2, a3, b3, c3d) = (p("a1"), p("a2"), p("a3"), p("b3"), p("c3"));
    let ab = vec![("a3".to_string(), "b3".to_string())];
    let bc = vec![("b3".to_string(), "c3".to_string())];
    let abc = vec![("a3".to_string(), "b3".to_string()), ("b3".to_string(), "c3".to_string())];
    let atom_slots = |atoms: Vec<AtomicSheaf>| {
        Factorization::new(atoms.into_iter().map(FactorSlot::atom).collect())
    };
    let mut out = Vec::new();
    let mut push = |label: &str, f: Factorization, conditions: Vec<(String, String)>| {
        out.push(CatalogEntry::Perfect { label: label.into(), factorization: f, conditions });
    };
    push(
        "1-1",
        atom_slots(vec![
            end(a3.clone()),
            tail([a2.clone(), a3.clone()]),
            full([a1.clone(), a2.clone(), a3.clone()]),
        ]),
        Vec::new(),
    );
    push(
        "1-2",
        atom_slots(vec![
            end(a3.clone()),
            full([a1.clone(), a2.clone(), a3.clone()]),
            tail([a2.plus(-1), a3.clone()]),
        ]),
        Vec::new(),
    );
    push(
        "1-3",
        atom_slots(vec![
            end(a3.clone()),
            full([a1.clone(), a2.clone(), a3.clone()]),
            tail([a2.plus(-2), a3.clone()]),
        ]),
        Vec::new(),
    );
    push(
        "2-1",
        atom_slots(vec![
            tail([a2.clone(), a3.clone()]),
            full([a1.clone(), a2.clone(), a3.clone()]),
            end(b3.clone()),
        ]),
        ab.clone(),
    );
    push(
        "2-2",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), a3.clone()]),
            tail([a2.plus(-1), a3.clone()]),
            end(b3.clone()),
        ]),
        ab.clone(),
    );
    push(
        "2-3",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), a3.clone()]),
            tail([a2.plus(-2), a3.clone()]),
            end(b3.clone()),
        ]),
        ab.clone(),
    );
    push(
        "3-1",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), a3.clone()]),
            end(b3.clone()),
            tail([a2.clone(), b3.clone()]),
        ]),
        ab.clone(),
    );
    push(
        "3-2",
        atom_slots(vec![
            tail([a2.clone(), a3.clone()]),
            end(b3.clone()),
            full([a1.clone(), a2.plus(1), b3.clone()]),
        ]),
        ab.clone(),
    );
    push(
        "3-3",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), a3.clone()]),
            end(b3.clone()),
            tail([a2.plus(-1), b3.clone()]),
        ]),
        ab.clone(),
    );
    push(
        "3-4",
        Factorization::new(vec![FactorSlot::direct_sum(vec![
            (thick_full([a1.clone(), a2.clone(), a3.clone()]), 1),
            (end(a3.plus(-1)), 2),
        ])
        .expect("catalog slot")]),
        Vec::new(),
    );
    push(
        "4-1",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), a3.clone()]),
            tail([a2.clone(), b3.clone()]),
            end(c3d.clone()),
        ]),
        abc.clone(),
    );
    push(
        "4-2",
        atom_slots(vec![
            tail([a2.clone(), a3.clone()]),
            full([a1.clone(), a2.plus(1), b3.clone()]),
            end(c3d.clone()),
        ]),
        abc.clone(),
    );
    push(
        "4-3",
        atom_slots(vec![
            full([a1.clone(), a2.clone(), b3.plus(1)]),
            tail([a2.plus(-1), b3.clone()]),
            end(c3d.clone()),
        ]),
        bc.clone(),
    );
    push(
        "4-4",
        Factorization::new(vec![
            FactorSlot::direct_sum(vec![
                (thick_full([a1.clone(), a2.clone(), b3.plus(1)]), 1),
                (end(b3.clone()), 1),
            ])
            .expect("catalog slot"),
            FactorSlot::atom(end(c3d.clone())),
        ]),
        bc,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Mode;

    fn chain3() -> CurveConfig {
        CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap()
    }

    fn c(i: usize) -> Component {
        Component::Chain { chain: 0, position: i }
    }

    #[test]
    fn nested_pair_is_perfect_one_way_only() {
        let cfg = chain3();
        let sub = AtomicSheaf::line(&cfg, &[c(1)], &[0]).unwrap();
        let whole = AtomicSheaf::line(&cfg, &[c(0), c(1)], &[0, 0]).unwrap();
        let good = Factorization::new(vec![
            FactorSlot::atom(sub.clone()),
            FactorSlot::atom(whole.clone()),
        ]);
        let report = perfectness_check(&cfg, &good).unwrap();
        assert!(report.pass, "{:?}", report.failures);

        // The restriction map in the other order is a nonzero degree-0 map.
        let bad = Factorization::new(vec![FactorSlot::atom(whole), FactorSlot::atom(sub)]);
        let report = perfectness_check(&cfg, &bad).unwrap();
        assert!(!report.pass);
        assert!(report.failures[0].contains("= 1, want 0"), "{:?}", report.failures);
    }

    #[test]
    fn extension_of_disjoint_supports_glues_at_the_node() {
        let cfg = chain3();
        let sub = AtomicSheaf::line(&cfg, &[Component::D], &[-2]).unwrap();
        let quot = AtomicSheaf::line(&cfg, &[c(0), c(1), c(2)], &[-1, 2, -1]).unwrap();
        let e = extension_atom(&cfg, &sub, &quot).unwrap();
        let want = AtomicSheaf::line(
            &cfg,
            &[Component::D, c(0), c(1), c(2)],
            &[-1, -1, 2, -1],
        )
        .unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn interior_extension_thickens_the_component() {
        let cfg = chain3();
        let sub = AtomicSheaf::line(
            &cfg,
            &[Component::D, c(0), c(1), c(2)],
            &[-1, -1, 2, -1],
        )
        .unwrap();
        let quot = AtomicSheaf::line(&cfg, &[c(1)], &[0]).unwrap();
        let e = extension_atom(&cfg, &sub, &quot).unwrap();
        assert_eq!(e.thick_components(), &BTreeSet::from([c(1)]));
        for comp in [Component::D, c(0), c(1), c(2)] {
            assert_eq!(e.concrete_degree(comp).unwrap(), 0);
        }
    }

    #[test]
    fn end_overlap_extension_thickens_the_shared_component() {
        let cfg = chain3();
        // Degrees (a1, a2, a3) = (0, 0, -1) with the quotient one step down.
        let sub = AtomicSheaf::line(&cfg, &[c(0), c(1)], &[0, 0]).unwrap();
        let quot = AtomicSheaf::line(&cfg, &[c(1), c(2)], &[-1, -1]).unwrap();
        let e = extension_atom(&cfg, &sub, &quot).unwrap();
        assert_eq!(e.thick_components(), &BTreeSet::from([c(1)]));
        assert_eq!(e.concrete_degree(c(0)).unwrap(), 1);
        assert_eq!(e.concrete_degree(c(1)).unwrap(), -1);
        assert_eq!(e.concrete_degree(c(2)).unwrap(), -1);
    }

    #[test]
    fn absorbing_a_spherical_slot_merges_the_neighbor() {
        let cfg = chain3();
        let f = Factorization::new(vec![
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(0), c(1)], &[0, 0]).unwrap()),
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(1)], &[-1]).unwrap()),
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(2)], &[-2]).unwrap()),
        ]);
        let out = absorb(&cfg, &f, 2, AbsorbDirection::Right).unwrap();
        let want = Factorization::new(vec![
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(0), c(1)], &[0, 0]).unwrap()),
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(1), c(2)], &[0, -2]).unwrap()),
        ]);
        assert_eq!(out, want);
    }

    #[test]
    fn absorbing_preserves_sections_from_the_spherical_slot() {
        // For 0 -> G -> G' -> S -> 0 classified by a generator of the
        // degree-1 space, maps S -> G and S -> G' agree in dimension.
        let cfg = chain3();
        let s = AtomicSheaf::line(&cfg, &[c(1)], &[-1]).unwrap();
        let g = AtomicSheaf::line(&cfg, &[c(2)], &[-2]).unwrap();
        let merged = extension_atom(&cfg, &g, &s).unwrap();
        let before = hom_dims(&cfg, &s, &g).unwrap();
        let after = hom_dims(&cfg, &s, &merged).unwrap();
        assert_eq!(before.h0.point(), Some(0));
        assert_eq!(before.h0.point(), after.h0.point());
    }

    #[test]
    fn hn_filtration_sorts_and_merges_degrees() {
        let cfg = chain3();
        let f = hn_factorization(&cfg, c(1), &[(0, 1), (2, 1), (0, 2), (-1, 0)]);
        let slots = f.slots();
        assert_eq!(slots.len(), 2);
        assert_eq!(slots[0].single().unwrap().0.concrete_degree(c(1)).unwrap(), 2);
        let (atom, mult) = slots[1].single().unwrap();
        assert_eq!(atom.concrete_degree(c(1)).unwrap(), 0);
        assert_eq!(mult, 3);
    }

    #[test]
    fn catalogs_have_the_expected_shapes() {
        let cfg = chain3();
        let two = catalog(&cfg, "12").unwrap();
        assert_eq!(two.len(), 3);
        let three = catalog(&cfg, "123").unwrap();
        assert_eq!(three.len(), 14);
        let perfect_labels: Vec<&str> = three
            .iter()
            .map(|e| match e {
                CatalogEntry::Perfect { label, .. } => label.as_str(),
                CatalogEntry::PeelSplit { .. } => panic!("unexpected peel entry"),
            })
            .collect();
        assert!(perfect_labels.contains(&"3-4") && perfect_labels.contains(&"4-4"));
        assert!(matches!(catalog(&cfg, "1232"), Err(Error::UnknownPattern(_))));

        let cfg5 = CurveConfig::build(Mode::Strict, &[(5, vec![3])], None).unwrap();
        let peel = catalog(&cfg5, "12321").unwrap();
        assert_eq!(peel.len(), 6);
        let cfg6 = CurveConfig::build(Mode::Strict, &[(6, vec![3])], None).unwrap();
        assert_eq!(catalog(&cfg6, "123321").unwrap().len(), 7);
    }

    #[test]
    fn factorization_json_round_trips() {
        let cfg = chain3();
        let entries = catalog(&cfg, "123").unwrap();
        for entry in entries {
            let CatalogEntry::Perfect { factorization, .. } = entry else { continue };
            let text = factorization.to_json();
            let back = Factorization::from_json(&cfg, &text).unwrap();
            assert_eq!(back, factorization);
        }
    }

    #[test]
    fn swap_needs_a_vanishing_obstruction() {
        let cfg = chain3();
        // Disjoint supports: both obstructions vanish, swap goes through.
        let f = Factorization::new(vec![
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(0)], &[5]).unwrap()),
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(2)], &[0]).unwrap()),
        ]);
        let swapped = swap(&cfg, &f, 1).unwrap();
        assert_eq!(swapped.slots()[0], f.slots()[1]);

        // An adjacent pair with a one-dimensional gluing space does not.
        let g = Factorization::new(vec![
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(1)], &[-1]).unwrap()),
            FactorSlot::atom(AtomicSheaf::line(&cfg, &[c(2)], &[-2]).unwrap()),
        ]);
        assert!(matches!(swap(&cfg, &g, 1), Err(Error::RewriteObstructed(_))));
    }
}
