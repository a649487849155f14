//! Reduction of exceptional classes to the bare (-1)-curve, and twist
//! certificates recording the reducing sequence.
//!
//! A numerically exceptional class is reduced by repeatedly subtracting the
//! class of a spherical line bundle that pairs to -1 against it; the module
//! provides:
//!
//! - `peel_options`: the candidate supports for one such subtraction, read
//!   off the case classification of each chain window;
//! - `peel`: one subtraction step, with its pairing precondition asserted;
//! - `reduce_class`: the full reduction, either every branch as a tree or
//!   the canonical first branch;
//! - `TwistCertificate`: the reducing sequence as data, twists stored
//!   outermost-first over a seed line bundle on the (-1)-curve;
//! - `verify_certificate`: total re-checking of a certificate, class
//!   arithmetic always, sheaf cohomology when degree data is present.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohom::hom_dims;
use crate::config::{Component, CurveConfig, Mode};
use crate::error::{Error, Result};
use crate::factorization::extension_atom;
use crate::lattice::{
    is_numerically_exceptional, is_numerically_spherical, pair, twist_class, DivisorClass,
};
use crate::rigidity::{class_windows, match_forward};
use crate::sheaf::AtomicSheaf;

/// One candidate subtraction: a contiguous run on one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeelOption {
    /// Chain index (0-based).
    pub chain: usize,
    /// First component position (0-based).
    pub start: usize,
    /// Last component position (0-based, inclusive).
    pub end: usize,
}

impl PeelOption {
    /// The components of the run, in chain order.
    pub fn components(&self) -> Vec<Component> {
        (self.start..=self.end)
            .map(|position| Component::Chain { chain: self.chain, position })
            .collect()
    }

    /// The divisor class of the run's reduced line bundle.
    pub fn class(&self, cfg: &CurveConfig) -> DivisorClass {
        let mut out = DivisorClass::zero(cfg);
        for c in self.components() {
            out.add_component(c, 1);
        }
        out
    }
}

impl fmt::Display for PeelOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.components().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Relative windows (1-based, inclusive) that each case allows peeling, in
/// the orientation where the case head matched.
fn case_windows(case: u8) -> &'static [(usize, usize)] {
    match case {
        1 | 2 => &[(1, 1)],
        3 | 4 => &[(2, 2), (1, 2)],
        5 => &[(1, 3), (2, 3), (3, 3), (3, 4), (3, 5), (1, 5)],
        6 => &[(1, 3), (2, 3), (3, 3), (2, 4), (2, 5), (2, 6), (3, 4)],
        _ => unreachable!("cases run 1 through 6"),
    }
}

/// All candidate peels for a numerically exceptional class, in canonical
/// order (chain, then start, then end). Both window orientations contribute;
/// an all-ones window additionally offers the whole run. Every returned
/// option pairs to -1 against the class.
pub fn peel_options(cfg: &CurveConfig, e: &DivisorClass) -> Result<Vec<PeelOption>> {
    if cfg.mode() == Mode::Relaxed {
        return Err(Error::RelaxedConfigRejected(
            "peeling is defined for strict configurations".into(),
        ));
    }
    if !is_numerically_exceptional(cfg, e)? {
        return Err(Error::NotExceptional(format!(
            "pair(e, e) = {}",
            pair(cfg, e, e)?
        )));
    }
    let windows = class_windows(cfg, e)?;
    if windows.iter().all(Option::is_none) {
        return Err(Error::NothingToPeel);
    }
    let mut found: BTreeSet<PeelOption> = BTreeSet::new();
    for w in windows.iter().flatten() {
        let n = w.vec.len();
        let k1 = w.rel_k + 1;
        if n > 6 {
            return Err(Error::WindowTooLong { n });
        }
        let mut add = |s: usize, t: usize| {
            found.insert(PeelOption {
                chain: w.chain,
                start: w.start + s - 1,
                end: w.start + t - 1,
            });
        };
        if let Some(case) = match_forward(&w.vec, k1) {
            for &(s, t) in case_windows(case) {
                add(s, t);
            }
        }
        let rev: Vec<i64> = w.vec.iter().rev().copied().collect();
        if let Some(case) = match_forward(&rev, n + 1 - k1) {
            for &(s, t) in case_windows(case) {
                add(n + 1 - t, n + 1 - s);
            }
        }
        if w.vec.iter().all(|&x| x == 1) {
            add(1, n);
        }
    }
    let options: Vec<PeelOption> = found.into_iter().collect();
    if options.is_empty() {
        return Err(Error::Internal(format!(
            "no peel option for the nonzero exceptional class {}",
            e.to_json()
        )));
    }
    for opt in &options {
        let p = pair(cfg, e, &opt.class(cfg))?;
        if p != -1 {
            return Err(Error::Internal(format!(
                "peel option {opt} pairs to {p}, not -1"
            )));
        }
    }
    Ok(options)
}

/// Subtract the option's line bundle class. Requires pairing -1, so the
/// twist by that bundle moves the result back to `e`.
pub fn peel(cfg: &CurveConfig, e: &DivisorClass, opt: &PeelOption) -> Result<DivisorClass> {
    let l = opt.class(cfg);
    let p = pair(cfg, e, &l)?;
    if p != -1 {
        return Err(Error::RewriteObstructed(format!(
            "pair(e, {opt}) = {p}; peeling needs -1"
        )));
    }
    let out = e.minus(&l);
    debug_assert_eq!(pair(cfg, &out, &out), Ok(-1));
    Ok(out)
}

/// Whether to follow every peel option or only the canonical first one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    First,
    All,
}

/// A node of the reduction tree: the class at this point and the subtrees
/// reached by each peel taken. Leaves carry the bare (-1)-curve class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionNode {
    pub class: DivisorClass,
    pub children: Vec<(PeelOption, ReductionNode)>,
}

impl ReductionNode {
    /// Every root-to-leaf peel sequence.
    pub fn branches(&self) -> Vec<Vec<PeelOption>> {
        if self.children.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (opt, child) in &self.children {
            for mut tail in child.branches() {
                tail.insert(0, *opt);
                out.push(tail);
            }
        }
        out
    }

    /// JSON value of the tree, peels named by their supports.
    pub fn to_value(&self) -> serde_json::Value {
        let children: Vec<serde_json::Value> = self
            .children
            .iter()
            .map(|(opt, child)| {
                serde_json::json!({
                    "peel": opt.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "tree": child.to_value(),
                })
            })
            .collect();
        serde_json::json!({
            "class": serde_json::to_value(&self.class).expect("class serializes"),
            "children": children,
        })
    }
}

fn is_bare_d(e: &DivisorClass) -> bool {
    e.d == 1 && e.chains.iter().all(|v| v.iter().all(|&x| x == 0))
}

/// Reduce a numerically exceptional class to the bare (-1)-curve. Each step
/// subtracts one option from `peel_options`; the sum of multiplicities
/// strictly decreases, so the tree is finite.
pub fn reduce_class(cfg: &CurveConfig, e: &DivisorClass, strategy: Strategy) -> Result<ReductionNode> {
    if cfg.mode() == Mode::Relaxed {
        return Err(Error::RelaxedConfigRejected(
            "reduction is defined for strict configurations".into(),
        ));
    }
    if !is_numerically_exceptional(cfg, e)? {
        return Err(Error::NotExceptional(format!(
            "pair(e, e) = {}",
            pair(cfg, e, e)?
        )));
    }
    fn rec(cfg: &CurveConfig, e: &DivisorClass, strategy: Strategy) -> Result<ReductionNode> {
        if is_bare_d(e) {
            return Ok(ReductionNode { class: e.clone(), children: Vec::new() });
        }
        let mut options = peel_options(cfg, e)?;
        if strategy == Strategy::First {
            options.truncate(1);
        }
        let mut children = Vec::with_capacity(options.len());
        for opt in options {
            let next = peel(cfg, e, &opt)?;
            children.push((opt, rec(cfg, &next, strategy)?));
        }
        Ok(ReductionNode { class: e.clone(), children })
    }
    rec(cfg, e, strategy)
}

/// One twist of a certificate: the support of a spherical line bundle and,
/// optionally, its degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistStep {
    /// Support components, sorted, no duplicates.
    pub support: Vec<Component>,
    /// Degree per support component, when sheaf-level data is carried.
    pub deg: Option<BTreeMap<Component, i64>>,
}

impl TwistStep {
    pub fn components(&self) -> &[Component] {
        &self.support
    }

    /// The divisor class of the twist's line bundle.
    pub fn class(&self, cfg: &CurveConfig) -> DivisorClass {
        let mut out = DivisorClass::zero(cfg);
        for &c in &self.support {
            out.add_component(c, 1);
        }
        out
    }
}

impl fmt::Display for TwistStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A reducing sequence for a class: twists stored outermost-first, applied
/// to a seed line bundle on the (-1)-curve. The seed degree is data for
/// sheaf-level checks; class arithmetic never depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCertificate {
    pub seed_degree: Option<i64>,
    pub twists: Vec<TwistStep>,
}

#[derive(Serialize, Deserialize)]
struct SeedDoc {
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    support: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deg: Option<BTreeMap<String, i64>>,
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<SeedDoc>,
    twists: Vec<StepDoc>,
}

impl TwistCertificate {
    /// The class-level certificate of one reduction branch: the peels in
    /// order, no degree data.
    pub fn from_branch(branch: &[PeelOption]) -> Self {
        TwistCertificate {
            seed_degree: None,
            twists: branch
                .iter()
                .map(|opt| TwistStep { support: opt.components(), deg: None })
                .collect(),
        }
    }

    /// True when the seed and every twist carry concrete degrees.
    pub fn has_sheaf_data(&self) -> bool {
        self.seed_degree.is_some() && self.twists.iter().all(|t| t.deg.is_some())
    }

    pub fn from_json(cfg: &CurveConfig, text: &str) -> Result<Self> {
        let doc: CertDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
        let mut twists = Vec::with_capacity(doc.twists.len());
        for step in doc.twists {
            let mut support = Vec::with_capacity(step.support.len());
            for name in &step.support {
                let c = cfg.resolve(name)?;
                if support.contains(&c) {
                    return Err(Error::BadSupport(format!("duplicate component {c}")));
                }
                support.push(c);
            }
            support.sort();
            let deg = match step.deg {
                None => None,
                Some(map) => {
                    let mut out = BTreeMap::new();
                    for (name, d) in map {
                        out.insert(cfg.resolve(&name)?, d);
                    }
                    Some(out)
                }
            };
            twists.push(TwistStep { support, deg });
        }
        Ok(TwistCertificate { seed_degree: doc.seed.map(|s| s.degree), twists })
    }

    pub fn to_json(&self) -> String {
        let doc = CertDoc {
            seed: self.seed_degree.map(|degree| SeedDoc { degree }),
            twists: self
                .twists
                .iter()
                .map(|t| StepDoc {
                    support: t.support.iter().map(|c| c.to_string()).collect(),
                    deg: t
                        .deg
                        .as_ref()
                        .map(|m| m.iter().map(|(c, d)| (c.to_string(), *d)).collect()),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("certificate serialization cannot fail")
    }
}

/// Status of one verification check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Unchecked(String),
}

/// One named verification check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub status: CheckStatus,
}

/// Verification outcome: `pass` is true iff no check failed; unchecked
/// items do not fail a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<CheckItem>,
}

impl VerifyReport {
    fn push(&mut self, name: impl Into<String>, status: CheckStatus) {
        if matches!(status, CheckStatus::Fail(_)) {
            self.pass = false;
        }
        self.checks.push(CheckItem { name: name.into(), status });
    }
}

/// Verify a certificate handed in from outside. See `verify_generated` for
/// the one difference when checking the reducer's own output.
pub fn verify_certificate(
    cfg: &CurveConfig,
    e: &DivisorClass,
    cert: &TwistCertificate,
) -> VerifyReport {
    verify_with_provenance(cfg, e, cert, false)
}

/// Verify a certificate produced by `reduce_class` in this process. The
/// section-vanishing hypothesis that class data cannot determine is labeled
/// as guaranteed by the peel construction instead of merely unchecked.
pub fn verify_generated(
    cfg: &CurveConfig,
    e: &DivisorClass,
    cert: &TwistCertificate,
) -> VerifyReport {
    verify_with_provenance(cfg, e, cert, true)
}

/// Turn a dimension bound into a check status against an expected value.
fn expect_dim(range: crate::cohom::DimRange, want: i64) -> CheckStatus {
    match range.point() {
        Some(v) if v == want => CheckStatus::Pass,
        Some(v) => CheckStatus::Fail(format!("computed {v}, want {want}")),
        None => CheckStatus::Unchecked(format!("only bounded to {range}, want {want}")),
    }
}

fn verify_with_provenance(
    cfg: &CurveConfig,
    e: &DivisorClass,
    cert: &TwistCertificate,
    generated: bool,
) -> VerifyReport {
    let mut report = VerifyReport { pass: true, checks: Vec::new() };
    if let Err(err) = e.check_shape(cfg) {
        report.push("class matches the configuration", CheckStatus::Fail(err.to_string()));
        return report;
    }
    let sheaf_level = cert.has_sheaf_data();
    // State built up innermost-out, starting from the bare (-1)-curve.
    let mut class_state = DivisorClass::d_curve(cfg);
    let mut atom_state: Option<AtomicSheaf> = if sheaf_level {
        cert.seed_degree.map(|d| {
            AtomicSheaf::line(cfg, &[Component::D], &[d]).expect("seed atom is well-formed")
        })
    } else {
        None
    };
    let mut tracking_stopped: Option<String> = None;
    for (idx, step) in cert.twists.iter().enumerate().rev() {
        let label = |what: &str| format!("step {}: {}", idx + 1, what);
        let l_class = step.class(cfg);
        report.push(
            label(&format!("twist class of {step} is numerically spherical")),
            if is_numerically_spherical(cfg, &l_class) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail(format!("{step} is not a reduced connected chain run", ))
            },
        );
        let grown = class_state.plus(&l_class);
        match pair(cfg, &grown, &l_class) {
            Ok(-1) => report.push(label("enlarged class pairs to -1 with the twist"), CheckStatus::Pass),
            Ok(p) => report.push(
                label("enlarged class pairs to -1 with the twist"),
                CheckStatus::Fail(format!("pair = {p}")),
            ),
            Err(err) => report.push(
                label("enlarged class pairs to -1 with the twist"),
                CheckStatus::Fail(err.to_string()),
            ),
        }
        match twist_class(cfg, &l_class, &class_state) {
            Ok(twisted) if twisted == grown => {
                report.push(label("twist adds exactly its class"), CheckStatus::Pass)
            }
            Ok(twisted) => report.push(
                label("twist adds exactly its class"),
                CheckStatus::Fail(format!(
                    "twist sends the state to {}, not {}",
                    twisted.to_json(),
                    grown.to_json()
                )),
            ),
            Err(err) => report.push(
                label("twist adds exactly its class"),
                CheckStatus::Fail(err.to_string()),
            ),
        }
        if sheaf_level {
            let deg_map = step.deg.as_ref().expect("sheaf data present");
            let atom = if deg_map.keys().ne(step.support.iter()) {
                report.push(
                    label("twist atom is well-formed"),
                    CheckStatus::Fail("degree map does not cover exactly the support".into()),
                );
                None
            } else {
                let degs: Vec<i64> = step.support.iter().map(|c| deg_map[c]).collect();
                match AtomicSheaf::line(cfg, &step.support, &degs) {
                    Ok(a) => {
                        report.push(label("twist atom is well-formed"), CheckStatus::Pass);
                        Some(a)
                    }
                    Err(err) => {
                        report.push(
                            label("twist atom is well-formed"),
                            CheckStatus::Fail(err.to_string()),
                        );
                        None
                    }
                }
            };
            match (&atom, &atom_state) {
                (Some(l_atom), Some(state)) => {
                    match hom_dims(cfg, l_atom, state) {
                        Ok(dims) => {
                            report.push(
                                label("chi(L, E) = -1"),
                                if dims.chi == -1 {
                                    CheckStatus::Pass
                                } else {
                                    CheckStatus::Fail(format!("chi = {}", dims.chi))
                                },
                            );
                            report.push(label("h0(L, E) = 0"), expect_dim(dims.h0, 0));
                            report.push(label("h1(L, E) = 1"), expect_dim(dims.h1, 1));
                        }
                        Err(err) => report.push(
                            label("cohomology of (L, E)"),
                            fold_hom_error(err),
                        ),
                    }
                    match hom_dims(cfg, state, l_atom) {
                        Ok(dims) => report.push(label("h0(E, L) = 0"), expect_dim(dims.h0, 0)),
                        Err(err) => report.push(label("h0(E, L) = 0"), fold_hom_error(err)),
                    }
                    match extension_atom(cfg, state, l_atom) {
                        Ok(next) => {
                            report.push(label("middle term constructed"), CheckStatus::Pass);
                            atom_state = Some(next);
                        }
                        Err(err @ Error::Internal(_)) => {
                            report.push(
                                label("middle term constructed"),
                                CheckStatus::Fail(err.to_string()),
                            );
                            tracking_stopped = Some(format!("step {}", idx + 1));
                            atom_state = None;
                        }
                        Err(err) => {
                            report.push(
                                label("middle term constructed"),
                                CheckStatus::Unchecked(err.to_string()),
                            );
                            tracking_stopped = Some(format!("step {}", idx + 1));
                            atom_state = None;
                        }
                    }
                }
                _ => {
                    let reason = match &tracking_stopped {
                        Some(at) => format!("sheaf tracking stopped at {at}"),
                        None => "twist atom could not be built".to_string(),
                    };
                    for what in
                        ["chi(L, E) = -1", "h0(L, E) = 0", "h1(L, E) = 1", "h0(E, L) = 0"]
                    {
                        report.push(label(what), CheckStatus::Unchecked(reason.clone()));
                    }
                    if tracking_stopped.is_none() {
                        tracking_stopped = Some(format!("step {}", idx + 1));
                    }
                    atom_state = None;
                }
            }
        } else {
            // Class data cannot decide the section-vanishing hypothesis.
            let reason = if generated {
                "guaranteed by the peel construction".to_string()
            } else {
                "not determined by class data; supply degree data".to_string()
            };
            report.push(label("h0(E, L) = 0"), CheckStatus::Unchecked(reason));
        }
        class_state = grown;
    }
    report.push(
        "telescoping: class equals the (-1)-curve plus all twist classes",
        if &class_state == e {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail(format!(
                "twists telescope to {}, certificate is for {}",
                class_state.to_json(),
                e.to_json()
            ))
        },
    );
    if sheaf_level {
        match &atom_state {
            Some(built) => report.push(
                "constructed sheaf realizes the class",
                if built.class(cfg) == *e {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail(format!(
                        "built {} with class {}",
                        built,
                        built.class(cfg).to_json()
                    ))
                },
            ),
            None => {
                let reason = match &tracking_stopped {
                    Some(at) => format!("sheaf tracking stopped at {at}"),
                    None => "no seed degree supplied".to_string(),
                };
                report.push("constructed sheaf realizes the class", CheckStatus::Unchecked(reason));
            }
        }
    }
    report
}

/// Hom-dimension machinery errors surface as unchecked, except internal
/// contract violations which fail the report.
fn fold_hom_error(err: Error) -> CheckStatus {
    match err {
        Error::Internal(_) => CheckStatus::Fail(err.to_string()),
        _ => CheckStatus::Unchecked(err.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> CurveConfig {
        CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap()
    }

    fn class(cfg: &CurveConfig, chains: Vec<Vec<i64>>) -> DivisorClass {
        let e = DivisorClass { d: 1, chains };
        e.check_shape(cfg).unwrap();
        e
    }

    fn supports(options: &[PeelOption]) -> Vec<(usize, usize, usize)> {
        options.iter().map(|o| (o.chain, o.start, o.end)).collect()
    }

    #[test]
    fn options_for_the_three_small_cases() {
        let cfg = chain3();
        // Case 3 head (1,2,1): the middle curve, the left pair, and the
        // mirrored right pair.
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let opts = peel_options(&cfg, &e).unwrap();
        assert_eq!(supports(&opts), vec![(0, 0, 1), (0, 1, 1), (0, 1, 2)]);

        // All-ones window: both end components and the full run.
        let ones = class(&cfg, vec![vec![1, 1, 1]]);
        let opts = peel_options(&cfg, &ones).unwrap();
        assert_eq!(supports(&opts), vec![(0, 0, 0), (0, 0, 2), (0, 2, 2)]);

        let single = class(&cfg, vec![vec![0, 1, 0]]);
        let opts = peel_options(&cfg, &single).unwrap();
        assert_eq!(supports(&opts), vec![(0, 1, 1)]);
    }

    #[test]
    fn options_obey_the_pairing_contract() {
        let cfg = CurveConfig::build(Mode::Strict, &[(5, vec![3])], None).unwrap();
        let e = class(&cfg, vec![vec![1, 2, 3, 2, 1]]);
        let opts = peel_options(&cfg, &e).unwrap();
        assert_eq!(opts.len(), 6);
        for opt in &opts {
            assert_eq!(pair(&cfg, &e, &opt.class(&cfg)), Ok(-1));
        }
    }

    #[test]
    fn peeling_requires_the_pairing() {
        let cfg = chain3();
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let outside = PeelOption { chain: 0, start: 0, end: 0 };
        assert!(matches!(peel(&cfg, &e, &outside), Err(Error::RewriteObstructed(_))));
        let ok = PeelOption { chain: 0, start: 1, end: 1 };
        assert_eq!(peel(&cfg, &e, &ok).unwrap(), class(&cfg, vec![vec![1, 1, 1]]));
    }

    #[test]
    fn reduction_tree_contains_the_expected_branches() {
        let cfg = chain3();
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let tree = reduce_class(&cfg, &e, Strategy::All).unwrap();
        let branches: Vec<Vec<(usize, usize, usize)>> =
            tree.branches().iter().map(|b| supports(b)).collect();
        // The branch peeling the middle curve and then the whole run.
        assert!(branches.contains(&vec![(0, 1, 1), (0, 0, 2)]));
        for branch in tree.branches() {
            let mut state = e.clone();
            for opt in &branch {
                state = peel(&cfg, &state, opt).unwrap();
            }
            assert!(is_bare_d(&state));
        }
    }

    #[test]
    fn first_strategy_gives_one_branch() {
        let cfg = CurveConfig::build(Mode::Strict, &[(2, vec![1])], None).unwrap();
        let e = class(&cfg, vec![vec![1, 1]]);
        let tree = reduce_class(&cfg, &e, Strategy::First).unwrap();
        let branches = tree.branches();
        assert_eq!(branches.len(), 1);
        // Canonical first option is the lexicographically smallest support.
        assert_eq!(supports(&branches[0]), vec![(0, 0, 1)]);

        let all = reduce_class(&cfg, &e, Strategy::All).unwrap();
        let all_branches: Vec<Vec<(usize, usize, usize)>> =
            all.branches().iter().map(|b| supports(b)).collect();
        assert!(all_branches.contains(&vec![(0, 1, 1), (0, 0, 0)]));
    }

    #[test]
    fn reduction_rejects_bad_inputs() {
        let relaxed = CurveConfig::build(Mode::Relaxed, &[(3, vec![1, 3])], None).unwrap();
        let e = DivisorClass { d: 1, chains: vec![vec![0, 0, 0]] };
        assert!(matches!(
            reduce_class(&relaxed, &e, Strategy::All),
            Err(Error::RelaxedConfigRejected(_))
        ));
        let cfg = chain3();
        let fat = class(&cfg, vec![vec![0, 2, 0]]);
        assert!(matches!(
            reduce_class(&cfg, &fat, Strategy::All),
            Err(Error::NotExceptional(_))
        ));
        let bare = class(&cfg, vec![vec![0, 0, 0]]);
        assert!(matches!(peel_options(&cfg, &bare), Err(Error::NothingToPeel)));
        assert!(reduce_class(&cfg, &bare, Strategy::All).unwrap().children.is_empty());
    }

    #[test]
    fn certificate_json_round_trips() {
        let cfg = chain3();
        let text = r#"{"seed":{"degree":-2},"twists":[{"support":["C2"],"deg":{"C2":0}},{"support":["C1","C2","C3"],"deg":{"C1":-1,"C2":2,"C3":-1}}]}"#;
        let cert = TwistCertificate::from_json(&cfg, text).unwrap();
        assert_eq!(cert.seed_degree, Some(-2));
        assert!(cert.has_sheaf_data());
        let back = TwistCertificate::from_json(&cfg, &cert.to_json()).unwrap();
        assert_eq!(back, cert);

        let class_level = TwistCertificate::from_json(
            &cfg,
            r#"{"twists":[{"support":["C2"]}]}"#,
        )
        .unwrap();
        assert!(!class_level.has_sheaf_data());
        assert_eq!(
            TwistCertificate::from_json(&cfg, &class_level.to_json()).unwrap(),
            class_level
        );
    }

    #[test]
    fn full_certificate_passes_every_check() {
        let cfg = chain3();
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let text = r#"{"seed":{"degree":-2},"twists":[{"support":["C2"],"deg":{"C2":0}},{"support":["C1","C2","C3"],"deg":{"C1":-1,"C2":2,"C3":-1}}]}"#;
        let cert = TwistCertificate::from_json(&cfg, text).unwrap();
        let report = verify_certificate(&cfg, &e, &cert);
        assert!(report.pass);
        for item in &report.checks {
            assert_eq!(item.status, CheckStatus::Pass, "{}", item.name);
        }
    }

    #[test]
    fn class_level_verification_labels_the_section_hypothesis() {
        let cfg = chain3();
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let tree = reduce_class(&cfg, &e, Strategy::All).unwrap();
        let branch = tree
            .branches()
            .into_iter()
            .find(|b| supports(b) == vec![(0, 1, 1), (0, 0, 2)])
            .unwrap();
        let cert = TwistCertificate::from_branch(&branch);
        let own = verify_generated(&cfg, &e, &cert);
        assert!(own.pass);
        let guaranteed: Vec<&CheckItem> = own
            .checks
            .iter()
            .filter(|c| {
                matches!(&c.status, CheckStatus::Unchecked(r) if r.contains("guaranteed"))
            })
            .collect();
        assert_eq!(guaranteed.len(), 2);

        let external = verify_certificate(&cfg, &e, &cert);
        assert!(external.pass);
        assert!(external.checks.iter().any(
            |c| matches!(&c.status, CheckStatus::Unchecked(r) if r.contains("degree data"))
        ));
    }

    #[test]
    fn loop_certificate_verifies_with_a_graceful_stop() {
        let cfg = CurveConfig::build(Mode::Relaxed, &[(3, vec![1, 3])], None).unwrap();
        let e = class(&cfg, vec![vec![1, 2, 1]]);
        let text = r#"{"seed":{"degree":-1},"twists":[{"support":["C2","C3"],"deg":{"C2":0,"C3":0}},{"support":["C1","C2"],"deg":{"C1":0,"C2":0}}]}"#;
        let cert = TwistCertificate::from_json(&cfg, text).unwrap();
        let report = verify_certificate(&cfg, &e, &cert);
        assert!(report.pass, "{:?}", report.checks);
        let unchecked: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Unchecked(_)))
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(
            unchecked,
            vec!["step 1: middle term constructed", "constructed sheaf realizes the class"]
        );
    }

    #[test]
    fn non_spherical_twist_fails() {
        let cfg = chain3();
        let e = class(&cfg, vec![vec![1, 1, 1]]);
        let cert = TwistCertificate {
            seed_degree: None,
            twists: vec![TwistStep {
                support: vec![
                    Component::Chain { chain: 0, position: 0 },
                    Component::Chain { chain: 0, position: 2 },
                ],
                deg: None,
            }],
        };
        let report = verify_certificate(&cfg, &e, &cert);
        assert!(!report.pass);
        assert!(report.checks.iter().any(|c| {
            c.name.contains("numerically spherical") && matches!(c.status, CheckStatus::Fail(_))
        }));
    }
}
