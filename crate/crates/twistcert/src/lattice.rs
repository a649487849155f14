//! Numerical divisor classes and the intersection pairing.
//!
//! A class is an integer combination `d*[D] + sum r[j][i]*[C_{j,i}]` recorded
//! as the coefficient on the (-1)-curve plus one multiplicity vector per
//! chain. The pairing is the intersection form of the configuration:
//! `D^2 = -1`, `C^2 = -2`, meeting components pair to 1. For classes of
//! torsion sheaves the Euler form is `chi(A, B) = -c1(A).c1(B)`.

use serde::{Deserialize, Serialize};

use crate::config::{Component, CurveConfig};
use crate::error::{Error, Result};

/// An integer divisor class supported on the configuration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    /// Coefficient on the (-1)-curve.
    pub d: i64,
    /// Multiplicity vector of each chain, indexed like the configuration.
    pub chains: Vec<Vec<i64>>,
}

impl DivisorClass {
    /// The zero class on `cfg`.
    pub fn zero(cfg: &CurveConfig) -> Self {
        DivisorClass {
            d: 0,
            chains: cfg.chains().iter().map(|c| vec![0; c.length]).collect(),
        }
    }

    /// The class of the (-1)-curve.
    pub fn d_curve(cfg: &CurveConfig) -> Self {
        DivisorClass { d: 1, ..DivisorClass::zero(cfg) }
    }

    /// The class of a single component.
    pub fn component(cfg: &CurveConfig, c: Component) -> Self {
        let mut out = DivisorClass::zero(cfg);
        out.add_component(c, 1);
        out
    }

    /// Add `mult` to the coefficient of `c`.
    pub fn add_component(&mut self, c: Component, mult: i64) {
        match c {
            Component::D => self.d += mult,
            Component::Chain { chain, position } => self.chains[chain][position] += mult,
        }
    }

    /// Coefficient of a single component.
    pub fn coeff(&self, c: Component) -> i64 {
        match c {
            Component::D => self.d,
            Component::Chain { chain, position } => self.chains[chain][position],
        }
    }

    /// Verify the class's chain vectors match the configuration.
    pub fn check_shape(&self, cfg: &CurveConfig) -> Result<()> {
        if self.chains.len() != cfg.chains().len() {
            return Err(Error::ShapeMismatch(format!(
                "class has {} chains, configuration has {}",
                self.chains.len(),
                cfg.chains().len()
            )));
        }
        for (j, (vec, spec)) in self.chains.iter().zip(cfg.chains()).enumerate() {
            if vec.len() != spec.length {
                return Err(Error::ShapeMismatch(format!(
                    "chain {}: class vector has length {}, chain has length {}",
                    j + 1,
                    vec.len(),
                    spec.length
                )));
            }
        }
        Ok(())
    }

    /// True when every coefficient is nonnegative (a torsion sheaf class).
    pub fn is_effective(&self) -> bool {
        self.d >= 0 && self.chains.iter().flatten().all(|&r| r >= 0)
    }

    /// Component-wise sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.d += other.d;
        for (a, b) in out.chains.iter_mut().zip(&other.chains) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        out
    }

    /// Component-wise difference.
    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    /// Scalar multiple.
    pub fn scaled(&self, by: i64) -> Self {
        DivisorClass {
            d: self.d * by,
            chains: self
                .chains
                .iter()
                .map(|v| v.iter().map(|x| x * by).collect())
                .collect(),
        }
    }

    /// Parse from the JSON document `{"d":1,"chains":[[1,2,1]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    /// Serialize to the JSON document form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class serialization cannot fail")
    }
}

/// Intersection pairing of two classes. Errors when either class's shape
/// does not match the configuration.
pub fn pair(cfg: &CurveConfig, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    a.check_shape(cfg)?;
    b.check_shape(cfg)?;
    let mut total = -a.d * b.d;
    for (j, spec) in cfg.chains().iter().enumerate() {
        let (ra, rb) = (&a.chains[j], &b.chains[j]);
        for i in 0..spec.length {
            total -= 2 * ra[i] * rb[i];
            if i + 1 < spec.length {
                total += ra[i] * rb[i + 1] + ra[i + 1] * rb[i];
            }
        }
        for &k in &spec.attach {
            total += a.d * rb[k] + b.d * ra[k];
        }
    }
    Ok(total)
}

/// Euler form `chi(A, B) = -c1(A).c1(B)` for torsion sheaf classes. Errors
/// when either class has a negative coefficient: the formula is stated for
/// classes of sheaves.
pub fn chi(cfg: &CurveConfig, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    for (side, c) in [("first", a), ("second", b)] {
        if !c.is_effective() {
            return Err(Error::NotSheafClass(format!(
                "{side} argument has a negative coefficient"
            )));
        }
    }
    Ok(-pair(cfg, a, b)?)
}

/// Is `e` the class of a numerically exceptional torsion sheaf carrying the
/// (-1)-curve once? Errors when the coefficient on `D` is not 1 (the notion
/// is defined on that stratum); otherwise tests `chi(e, e) = 1`.
pub fn is_numerically_exceptional(cfg: &CurveConfig, e: &DivisorClass) -> Result<bool> {
    e.check_shape(cfg)?;
    if e.d != 1 {
        return Err(Error::DCoefficientNotOne { d: e.d });
    }
    Ok(pair(cfg, e, e)? == -1)
}

/// Is `s` the class of a line bundle on a reduced connected subchain of
/// (-2)-curves (so `chi(S, S) = 2`)? Plain predicate, never errors: any
/// shape mismatch or other failure simply makes the class non-spherical.
pub fn is_numerically_spherical(cfg: &CurveConfig, s: &DivisorClass) -> bool {
    if s.check_shape(cfg).is_err() || s.d != 0 {
        return false;
    }
    let mut support_chain = None;
    for (j, vec) in s.chains.iter().enumerate() {
        if vec.iter().any(|&r| r != 0) {
            if support_chain.is_some() {
                return false;
            }
            support_chain = Some(j);
        }
    }
    let Some(j) = support_chain else { return false };
    let vec = &s.chains[j];
    let support: Vec<usize> = (0..vec.len()).filter(|&i| vec[i] != 0).collect();
    let contiguous = support.windows(2).all(|w| w[1] == w[0] + 1);
    let reduced = support.iter().all(|&i| vec[i] == 1);
    contiguous && reduced && pair(cfg, s, s) == Ok(-2)
}

/// Class action of the spherical twist at `s`: `v - chi(s, v) * s`, with the
/// Euler form read off the pairing. Errors when `s` is not numerically
/// spherical.
pub fn twist_class(
    cfg: &CurveConfig,
    s: &DivisorClass,
    v: &DivisorClass,
) -> Result<DivisorClass> {
    if !is_numerically_spherical(cfg, s) {
        return Err(Error::NotSpherical(s.to_json()));
    }
    v.check_shape(cfg)?;
    let chi_sv = -pair(cfg, s, v)?;
    Ok(v.minus(&s.scaled(chi_sv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Mode;

    fn chain3_attach2() -> CurveConfig {
        CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap()
    }

    fn loop_config() -> CurveConfig {
        CurveConfig::build(Mode::Relaxed, &[(3, vec![1, 3])], None).unwrap()
    }

    fn cls(d: i64, r: &[i64]) -> DivisorClass {
        DivisorClass { d, chains: vec![r.to_vec()] }
    }

    #[test]
    fn pairing_values() {
        let cfg = chain3_attach2();
        let c2 = cls(0, &[0, 1, 0]);
        assert_eq!(pair(&cfg, &c2, &c2), Ok(-2));
        let e = cls(1, &[1, 2, 1]);
        assert_eq!(pair(&cfg, &e, &e), Ok(-1));

        let cfg = loop_config();
        let a = cls(0, &[0, 1, 1]);
        let b = cls(1, &[1, 1, 0]);
        assert_eq!(pair(&cfg, &a, &b), Ok(1));
        assert_eq!(chi(&cfg, &a, &b), Ok(-1));
    }

    #[test]
    fn pairing_rejects_shape_mismatch() {
        let cfg = chain3_attach2();
        let bad = DivisorClass { d: 0, chains: vec![vec![1, 0]] };
        assert!(matches!(
            pair(&cfg, &bad, &bad),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn chi_requires_sheaf_classes() {
        let cfg = chain3_attach2();
        let neg = cls(0, &[-1, 0, 0]);
        let ok = cls(0, &[1, 0, 0]);
        assert!(matches!(chi(&cfg, &neg, &ok), Err(Error::NotSheafClass(_))));
        // spherical self-chi
        let l = cls(0, &[1, 1, 0]);
        assert_eq!(chi(&cfg, &l, &l), Ok(2));
    }

    #[test]
    fn exceptionality() {
        let cfg = CurveConfig::build(Mode::Strict, &[(1, vec![1])], None).unwrap();
        let e = cls(1, &[2]);
        assert_eq!(pair(&cfg, &e, &e), Ok(-5));
        assert_eq!(is_numerically_exceptional(&cfg, &e), Ok(false));
        let e = cls(1, &[1]);
        assert_eq!(is_numerically_exceptional(&cfg, &e), Ok(true));
        let bad = cls(0, &[1]);
        assert!(matches!(
            is_numerically_exceptional(&cfg, &bad),
            Err(Error::DCoefficientNotOne { d: 0 })
        ));
    }

    #[test]
    fn sphericality_shapes() {
        let cfg = chain3_attach2();
        assert!(is_numerically_spherical(&cfg, &cls(0, &[0, 1, 0])));
        assert!(is_numerically_spherical(&cfg, &cls(0, &[1, 1, 1])));
        assert!(!is_numerically_spherical(&cfg, &cls(0, &[1, 0, 1])));
        assert!(!is_numerically_spherical(&cfg, &cls(0, &[1, 2, 0])));
        assert!(!is_numerically_spherical(&cfg, &cls(1, &[1, 1, 0])));
        assert!(!is_numerically_spherical(&cfg, &cls(0, &[0, 0, 0])));
    }

    #[test]
    fn twist_action() {
        let cfg = chain3_attach2();
        let s = cls(0, &[0, 1, 0]);
        // T_S(S) = -S
        assert_eq!(twist_class(&cfg, &s, &s), Ok(s.scaled(-1)));
        // peeling identity: e' = e - L when pair(e, L) = -1
        let e = cls(1, &[1, 2, 1]);
        assert_eq!(pair(&cfg, &e, &s), Ok(-1));
        let e2 = twist_class(&cfg, &s, &e).unwrap();
        assert_eq!(e2, e.minus(&s));
        assert_eq!(pair(&cfg, &e2, &e2), Ok(-1));
        // non-spherical twist rejected
        assert!(matches!(
            twist_class(&cfg, &cls(0, &[1, 0, 1]), &e),
            Err(Error::NotSpherical(_))
        ));
    }

    #[test]
    fn class_json_round_trip() {
        let e = cls(1, &[1, 2, 1]);
        let text = e.to_json();
        assert_eq!(text, r#"{"d":1,"chains":[[1,2,1]]}"#);
        assert_eq!(DivisorClass::from_json(&text).unwrap(), e);
    }
}
