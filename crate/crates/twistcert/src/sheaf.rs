//! Pure one-dimensional sheaves in atomic form.
//!
//! An atom records a line bundle on a connected subcurve of the
//! configuration: its support set, which components carry multiplicity 2
//! (a ribbon structure on that component), and one degree per component.
//! Degrees are affine expressions in named integer parameters so that shape
//! catalogs can carry symbolic families; most operations require them
//! concrete.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{Component, CurveConfig};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

/// An affine integer expression `base + sum coeff * param`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinExpr {
    pub base: i64,
    /// Parameter name to coefficient; no zero coefficients are stored.
    pub terms: BTreeMap<String, i64>,
}

impl LinExpr {
    /// A parameter with coefficient 1.
    pub fn param(name: &str) -> Self {
        LinExpr { base: 0, terms: BTreeMap::from([(name.to_string(), 1)]) }
    }

    /// Constant value when the expression has no parameters.
    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.base)
    }

    /// Constant value or a symbolic-degree error.
    pub fn constant(&self) -> Result<i64> {
        self.as_constant().ok_or_else(|| Error::SymbolicDegree(self.to_string()))
    }

    /// Shift by an integer.
    pub fn plus(&self, n: i64) -> Self {
        LinExpr { base: self.base + n, terms: self.terms.clone() }
    }

    /// Substitute parameter values. Errors on an unbound parameter.
    pub fn instantiate(&self, bindings: &BTreeMap<String, i64>) -> Result<i64> {
        let mut value = self.base;
        for (name, coeff) in &self.terms {
            let v = bindings
                .get(name)
                .ok_or_else(|| Error::SymbolicDegree(format!("unbound parameter {name}")))?;
            value += coeff * v;
        }
        Ok(value)
    }

    /// Parse expressions like `3`, `a2`, `a2-1`, `-b3+2`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidDocument(format!("bad degree expression `{text}`"));
        let mut expr = LinExpr::default();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        let mut sign = 1i64;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('+') {
                sign = 1;
                rest = r.trim_start();
            }
            if rest.is_empty() {
                return Err(bad());
            }
            let term_len = rest
                .find(['+', '-'])
                .unwrap_or(rest.len());
            let term = rest[..term_len].trim();
            if term.is_empty() {
                return Err(bad());
            }
            if let Ok(n) = term.parse::<i64>() {
                expr.base += sign * n;
            } else {
                if !term.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    || !term.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(bad());
                }
                let coeff = expr.terms.entry(term.to_string()).or_insert(0);
                *coeff += sign;
                if *coeff == 0 {
                    expr.terms.remove(term);
                }
            }
            rest = &rest[term_len..];
            if rest.is_empty() {
                return Ok(expr);
            }
            sign = 1;
        }
    }
}

impl From<i64> for LinExpr {
    fn from(base: i64) -> Self {
        LinExpr { base, terms: BTreeMap::new() }
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (name, &coeff) in &self.terms {
            if coeff == 0 {
                continue;
            }
            if wrote {
                write!(f, "{}", if coeff > 0 { "+" } else { "-" })?;
            } else if coeff < 0 {
                write!(f, "-")?;
            }
            let mag = coeff.abs();
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{name}")?;
            wrote = true;
        }
        if self.base != 0 || !wrote {
            if wrote {
                write!(f, "{}{}", if self.base >= 0 { "+" } else { "-" }, self.base.abs())?;
            } else {
                write!(f, "{}", self.base)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LinExpr {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_constant() {
            Some(n) => ser.serialize_i64(n),
            None => ser.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for LinExpr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(n) => Ok(LinExpr::from(n)),
            Raw::Text(t) => LinExpr::parse(&t).map_err(|e| D::Error::custom(e.to_string())),
        }
    }
}

/// A line bundle on a connected subcurve, with optional multiplicity-2
/// components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AtomicSheaf {
    support: BTreeSet<Component>,
    /// Components of multiplicity 2 (subset of the support, never `D`).
    thick: BTreeSet<Component>,
    /// One degree per support component.
    deg: BTreeMap<Component, LinExpr>,
}

/// JSON form of an atom.
#[derive(Serialize, Deserialize)]
struct AtomDoc {
    support: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    thick: BTreeMap<String, u8>,
    deg: BTreeMap<String, LinExpr>,
}

impl AtomicSheaf {
    /// Build an atom, validating support connectivity, thickening shape, and
    /// the degree map.
    pub fn new(
        cfg: &CurveConfig,
        support: BTreeSet<Component>,
        thick: BTreeSet<Component>,
        deg: BTreeMap<Component, LinExpr>,
    ) -> Result<Self> {
        for &c in &support {
            if !cfg.contains(c) {
                return Err(Error::unknown_component(c));
            }
        }
        if support.is_empty() {
            return Err(Error::BadSupport("empty support".to_string()));
        }
        if !cfg.is_connected(&support) {
            return Err(Error::BadSupport(format!(
                "support {{{}}} is not connected",
                join(&support)
            )));
        }
        for &c in &thick {
            if c.is_d() {
                return Err(Error::BadThickening(
                    "the (-1)-curve cannot be thickened".to_string(),
                ));
            }
            if !support.contains(&c) {
                return Err(Error::BadThickening(format!("{c} is not in the support")));
            }
        }
        if support.len() != deg.len() || !support.iter().all(|c| deg.contains_key(c)) {
            return Err(Error::BadDegreeMap(format!(
                "support {{{}}} vs degree keys {{{}}}",
                join(&support),
                deg.keys().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(AtomicSheaf { support, thick, deg })
    }

    /// Reduced line bundle from parallel component and degree lists.
    pub fn line(cfg: &CurveConfig, comps: &[Component], degs: &[i64]) -> Result<Self> {
        assert_eq!(comps.len(), degs.len());
        AtomicSheaf::new(
            cfg,
            comps.iter().copied().collect(),
            BTreeSet::new(),
            comps.iter().zip(degs).map(|(&c, &d)| (c, LinExpr::from(d))).collect(),
        )
    }

    /// Reduced structure-sheaf-style atom with symbolic degrees.
    pub fn line_sym(cfg: &CurveConfig, comps: &[Component], degs: &[LinExpr]) -> Result<Self> {
        assert_eq!(comps.len(), degs.len());
        AtomicSheaf::new(
            cfg,
            comps.iter().copied().collect(),
            BTreeSet::new(),
            comps.iter().zip(degs).map(|(&c, d)| (c, d.clone())).collect(),
        )
    }

    pub fn support(&self) -> &BTreeSet<Component> {
        &self.support
    }

    pub fn thick_components(&self) -> &BTreeSet<Component> {
        &self.thick
    }

    /// Multiplicity of a component in the atom's class (0, 1, or 2).
    pub fn multiplicity(&self, c: Component) -> i64 {
        if self.thick.contains(&c) {
            2
        } else {
            i64::from(self.support.contains(&c))
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.thick.is_empty()
    }

    pub fn is_symbolic(&self) -> bool {
        self.deg.values().any(|e| e.as_constant().is_none())
    }

    /// Degree expression on a support component.
    pub fn degree(&self, c: Component) -> &LinExpr {
        &self.deg[&c]
    }

    /// Concrete degree on a support component.
    pub fn concrete_degree(&self, c: Component) -> Result<i64> {
        self.deg[&c].constant()
    }

    /// The atom's divisor class (degree-independent).
    pub fn class(&self, cfg: &CurveConfig) -> DivisorClass {
        let mut out = DivisorClass::zero(cfg);
        for &c in &self.support {
            out.add_component(c, self.multiplicity(c));
        }
        out
    }

    /// Tensor with the dualizing sheaf: shifts the degree on `D` by -1 and
    /// leaves (-2)-components unchanged.
    pub fn tensor_omega(&self) -> Self {
        let mut out = self.clone();
        if let Some(e) = out.deg.get_mut(&Component::D) {
            *e = e.plus(-1);
        }
        out
    }

    /// Substitute parameter values in all degrees.
    pub fn instantiate(&self, bindings: &BTreeMap<String, i64>) -> Result<Self> {
        let mut out = self.clone();
        for e in out.deg.values_mut() {
            *e = LinExpr::from(e.instantiate(bindings)?);
        }
        Ok(out)
    }

    /// Parse from the JSON document form, resolving names against `cfg`.
    pub fn from_json(cfg: &CurveConfig, text: &str) -> Result<Self> {
        let doc: AtomDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
        AtomicSheaf::from_doc(cfg, doc)
    }

    fn from_doc(cfg: &CurveConfig, doc: AtomDoc) -> Result<Self> {
        AtomicSheaf::from_named_parts(cfg, &doc.support, &doc.thick, doc.deg)
    }

    /// Build from name-keyed parts, as they appear in JSON documents.
    pub fn from_named_parts(
        cfg: &CurveConfig,
        support: &[String],
        thick: &BTreeMap<String, u8>,
        deg: BTreeMap<String, LinExpr>,
    ) -> Result<Self> {
        let mut support_set = BTreeSet::new();
        for name in support {
            support_set.insert(cfg.resolve(name)?);
        }
        let mut thick_set = BTreeSet::new();
        for (name, mult) in thick {
            if *mult != 2 {
                return Err(Error::BadThickening(format!(
                    "multiplicity {mult} on {name}; only 2 is supported"
                )));
            }
            thick_set.insert(cfg.resolve(name)?);
        }
        let mut deg_map = BTreeMap::new();
        for (name, e) in deg {
            deg_map.insert(cfg.resolve(&name)?, e);
        }
        AtomicSheaf::new(cfg, support_set, thick_set, deg_map)
    }

    /// Name-keyed parts for JSON documents: (support, thick, deg).
    pub fn to_named_parts(
        &self,
    ) -> (Vec<String>, BTreeMap<String, u8>, BTreeMap<String, LinExpr>) {
        (
            self.support.iter().map(|c| c.to_string()).collect(),
            self.thick.iter().map(|c| (c.to_string(), 2)).collect(),
            self.deg.iter().map(|(c, e)| (c.to_string(), e.clone())).collect(),
        )
    }

    /// Serialize to the JSON document form.
    pub fn to_json(&self) -> String {
        let doc = AtomDoc {
            support: self.support.iter().map(|c| c.to_string()).collect(),
            thick: self.thick.iter().map(|c| (c.to_string(), 2)).collect(),
            deg: self.deg.iter().map(|(c, e)| (c.to_string(), e.clone())).collect(),
        };
        serde_json::to_string(&doc).expect("atom serialization cannot fail")
    }
}

impl fmt::Display for AtomicSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{{")?;
        for (i, c) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if self.thick.contains(c) {
                write!(f, "2")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}(")?;
        for (i, c) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.deg[c])?;
        }
        write!(f, ")")
    }
}

fn join(set: &BTreeSet<Component>) -> String {
    set.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}
