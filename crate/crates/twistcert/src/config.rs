//! Curve configurations.
//!
//! A configuration consists of:
//! - a single (-1)-curve `D` (self-intersection -1), and
//! - a finite set of chains of (-2)-curves (self-intersection -2, consecutive
//!   components meeting transversally in one point),
//! - attachment data: for each chain, the positions whose component meets `D`
//!   in one point.
//!
//! Two modes are supported. `strict` is the geometric regime in which every
//! downstream theorem applies: at most (equivalently, exactly) one attachment
//! per chain, component graph a tree, and at most `9 - d` (-2)-curves in
//! total for a surface of degree `d >= 3` (6 when no degree is given).
//! `relaxed` drops those rules and permits several attachments on one chain,
//! so the component graph may contain cycles; only class arithmetic and
//! certificate verification accept relaxed configurations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One irreducible component of a configuration.
///
/// Ordering: chain components sort by (chain, position), and `D` sorts last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    /// Component `position` (0-based) of chain `chain` (0-based); a (-2)-curve.
    Chain { chain: usize, position: usize },
    /// The (-1)-curve.
    D,
}

impl Component {
    /// Chain component from 0-based indices.
    pub fn chain_curve(chain: usize, position: usize) -> Self {
        Component::Chain { chain, position }
    }

    /// True for the (-1)-curve.
    pub fn is_d(self) -> bool {
        matches!(self, Component::D)
    }

    /// Parse a component name: `D`, `C3` (chain 1, position 3), or `C2.3`
    /// (chain 2, position 3). Positions and chain numbers are 1-based in
    /// names.
    pub fn parse(name: &str) -> Result<Self> {
        if name == "D" {
            return Ok(Component::D);
        }
        let bad = || Error::UnknownComponent(name.to_string());
        let rest = name.strip_prefix('C').ok_or_else(bad)?;
        let (chain_1b, pos_1b) = match rest.split_once('.') {
            Some((c, p)) => (
                c.parse::<usize>().map_err(|_| bad())?,
                p.parse::<usize>().map_err(|_| bad())?,
            ),
            None => (1, rest.parse::<usize>().map_err(|_| bad())?),
        };
        if chain_1b == 0 || pos_1b == 0 {
            return Err(bad());
        }
        Ok(Component::Chain { chain: chain_1b - 1, position: pos_1b - 1 })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::D => write!(f, "D"),
            Component::Chain { chain: 0, position } => write!(f, "C{}", position + 1),
            Component::Chain { chain, position } => {
                write!(f, "C{}.{}", chain + 1, position + 1)
            }
        }
    }
}

/// Validation mode of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Relaxed,
}

/// One chain of (-2)-curves with its attachment positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    /// Number of components (>= 1).
    pub length: usize,
    /// 0-based positions meeting `D`, strictly increasing.
    pub attach: Vec<usize>,
}

/// A validated curve configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    mode: Mode,
    chains: Vec<ChainSpec>,
    surface_degree: Option<i64>,
}

/// JSON form of a chain.
#[derive(Serialize, Deserialize)]
struct ChainDoc {
    length: usize,
    /// 1-based attachment positions.
    attach: Vec<usize>,
}

/// JSON form of a configuration.
#[derive(Serialize, Deserialize)]
struct ConfigDoc {
    #[serde(default = "default_mode")]
    mode: Mode,
    chains: Vec<ChainDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surface_degree: Option<i64>,
}

fn default_mode() -> Mode {
    Mode::Strict
}

impl CurveConfig {
    /// Build a configuration from chain data.
    ///
    /// `chains` holds `(length, attachment positions)` pairs with 1-based
    /// attachment positions. Errors: an attachment position outside
    /// `1..=length`, or the same position listed twice for one chain.
    /// Mode rules are not checked here; see [`CurveConfig::violations`].
    pub fn build(
        mode: Mode,
        chains: &[(usize, Vec<usize>)],
        surface_degree: Option<i64>,
    ) -> Result<Self> {
        let mut specs = Vec::with_capacity(chains.len());
        for (length, attach_1b) in chains {
            let mut attach = Vec::with_capacity(attach_1b.len());
            for &pos_1b in attach_1b {
                if pos_1b == 0 || pos_1b > *length {
                    return Err(Error::AttachmentOutOfRange {
                        position: pos_1b,
                        length: *length,
                    });
                }
                attach.push(pos_1b - 1);
            }
            attach.sort_unstable();
            if let Some(w) = attach.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateAttachment {
                    chain: specs.len() + 1,
                    position: w[0] + 1,
                });
            }
            specs.push(ChainSpec { length: *length, attach });
        }
        Ok(CurveConfig { mode, chains: specs, surface_degree })
    }

    /// The configuration's mode.
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Chain data.
    pub fn chains(&self) -> &[ChainSpec] {
        &self.chains
    }

    /// Optional degree of the underlying surface.
    pub fn surface_degree(&self) -> Option<i64> {
        self.surface_degree
    }

    /// Number of (-2)-curves over all chains.
    pub fn total_length(&self) -> usize {
        self.chains.iter().map(|c| c.length).sum()
    }

    /// All components: chain curves in (chain, position) order, then `D`.
    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::with_capacity(self.total_length() + 1);
        for (j, spec) in self.chains.iter().enumerate() {
            for i in 0..spec.length {
                out.push(Component::chain_curve(j, i));
            }
        }
        out.push(Component::D);
        out
    }

    /// True when `c` exists in this configuration.
    pub fn contains(&self, c: Component) -> bool {
        match c {
            Component::D => true,
            Component::Chain { chain, position } => {
                self.chains.get(chain).is_some_and(|s| position < s.length)
            }
        }
    }

    /// Resolve a component name against this configuration.
    pub fn resolve(&self, name: &str) -> Result<Component> {
        let c = Component::parse(name)?;
        if self.contains(c) {
            Ok(c)
        } else {
            Err(Error::UnknownComponent(name.to_string()))
        }
    }

    /// Components adjacent to `c` (intersection number 1).
    pub fn neighbors(&self, c: Component) -> Vec<Component> {
        match c {
            Component::D => self
                .chains
                .iter()
                .enumerate()
                .flat_map(|(j, spec)| {
                    spec.attach.iter().map(move |&p| Component::chain_curve(j, p))
                })
                .collect(),
            Component::Chain { chain, position } => {
                let spec = &self.chains[chain];
                let mut out = Vec::new();
                if position > 0 {
                    out.push(Component::chain_curve(chain, position - 1));
                }
                if position + 1 < spec.length {
                    out.push(Component::chain_curve(chain, position + 1));
                }
                if spec.attach.contains(&position) {
                    out.push(Component::D);
                }
                out
            }
        }
    }

    /// Intersection number of two components.
    pub fn pair_components(&self, a: Component, b: Component) -> i64 {
        debug_assert!(self.contains(a) && self.contains(b));
        if a == b {
            return if a.is_d() { -1 } else { -2 };
        }
        i64::from(self.neighbors(a).contains(&b))
    }

    /// Number of intersection points among distinct components.
    pub fn edge_count(&self) -> usize {
        let chain_edges: usize = self.chains.iter().map(|c| c.length - 1).sum();
        let attach_edges: usize = self.chains.iter().map(|c| c.attach.len()).sum();
        chain_edges + attach_edges
    }

    /// Strict-mode rule violations, independent of the configuration's mode.
    /// Empty means the configuration satisfies every strict rule.
    pub fn strict_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, spec) in self.chains.iter().enumerate() {
            if spec.attach.len() > 1 {
                out.push(format!(
                    "at most one attachment per chain (chain {} has {})",
                    j + 1,
                    spec.attach.len()
                ));
            }
            if spec.attach.is_empty() {
                out.push(format!(
                    "every chain must meet the (-1)-curve (chain {} has no attachment)",
                    j + 1
                ));
            }
            if spec.length > 6 {
                out.push(format!(
                    "chain length at most 6 (chain {} has length {})",
                    j + 1,
                    spec.length
                ));
            }
        }
        let bound = match self.surface_degree {
            Some(d) if d < 3 => {
                out.push(format!("surface degree must be at least 3 (got {d})"));
                6
            }
            Some(d) => 9 - d,
            None => 6,
        };
        let total = self.total_length() as i64;
        if total > bound {
            out.push(format!(
                "at most {bound} (-2)-curves in total (got {total})"
            ));
        }
        // With one attachment per chain the graph is automatically a tree;
        // the explicit count catches any remaining inconsistency.
        let v = self.total_length() + 1;
        if out.is_empty() && self.edge_count() != v - 1 {
            out.push(format!(
                "component graph must be a tree ({} vertices, {} edges)",
                v,
                self.edge_count()
            ));
        }
        out
    }

    /// Rule violations under the configuration's own mode. Relaxed
    /// configurations have no mode rules beyond the build invariants.
    pub fn violations(&self) -> Vec<String> {
        match self.mode {
            Mode::Strict => self.strict_violations(),
            Mode::Relaxed => Vec::new(),
        }
    }

    /// Error on the first violation under the configuration's own mode.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::StrictRuleViolated(v)),
        }
    }

    /// True when the component graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        // Every chain is connected and D is a vertex; the graph is connected
        // iff every chain has at least one attachment. It is acyclic iff the
        // edge count is V - 1.
        self.chains.iter().all(|c| !c.attach.is_empty())
            && self.edge_count() == self.total_length()
    }

    /// True when `set` is nonempty and connected in the component graph.
    pub fn is_connected(&self, set: &BTreeSet<Component>) -> bool {
        let Some(&start) = set.iter().next() else { return false };
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if !seen.insert(c) {
                continue;
            }
            for n in self.neighbors(c) {
                if set.contains(&n) && !seen.contains(&n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Parse a configuration from its JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ConfigDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
        let chains: Vec<(usize, Vec<usize>)> =
            doc.chains.into_iter().map(|c| (c.length, c.attach)).collect();
        CurveConfig::build(doc.mode, &chains, doc.surface_degree)
    }

    /// Serialize to the JSON document form.
    pub fn to_json(&self) -> String {
        let doc = ConfigDoc {
            mode: self.mode,
            chains: self
                .chains
                .iter()
                .map(|c| ChainDoc {
                    length: c.length,
                    attach: c.attach.iter().map(|p| p + 1).collect(),
                })
                .collect(),
            surface_degree: self.surface_degree,
        };
        serde_json::to_string(&doc).expect("config serialization cannot fail")
    }
}
