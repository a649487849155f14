//! Consistency identities for an extension of rigid sheaves.
//!
//! For an extension `0 -> G2 -> R -> G1 -> 0` with `h1(R, R) = 0`,
//! `h0(G2, G1) = 0`, and `h2(G1, G2) = 0`, the following hold:
//!
//! 1. `h1(G1, G1) = h1(G2, G2) = 0`;
//! 2. `h0(R, R) = h0(G1, G1) + h0(G2, G2) + chi(G1, G2)`;
//! 3. `h2(R, R) = h2(G1, G1) + h2(G2, G2) + chi(G2, G1)`;
//! 4. `h1(G1, G2) <= h0(G1, G1) + h0(G2, G2) - 1`.
//!
//! `mukai_check` validates a dimension bundle against these conclusions; it
//! takes the dimensions as data (rather than computing them) so that claimed
//! tables can be audited independently.

use crate::config::CurveConfig;
use crate::error::{Error, Result};
use crate::sheaf::AtomicSheaf;

use super::dims::{hom_dims, HomDims};

/// Hom-dimension data for an extension `0 -> G2 -> R -> G1 -> 0`.
#[derive(Debug, Clone, Copy)]
pub struct MukaiData {
    pub g1_g1: HomDims,
    pub g2_g2: HomDims,
    pub g1_g2: HomDims,
    pub g2_g1: HomDims,
    pub r_r: HomDims,
}

/// Compute the dimension bundle for `0 -> G2 -> R -> G1 -> 0` from atoms.
pub fn mukai_data(
    cfg: &CurveConfig,
    g1: &AtomicSheaf,
    g2: &AtomicSheaf,
    r: &AtomicSheaf,
) -> Result<MukaiData> {
    Ok(MukaiData {
        g1_g1: hom_dims(cfg, g1, g1)?,
        g2_g2: hom_dims(cfg, g2, g2)?,
        g1_g2: hom_dims(cfg, g1, g2)?,
        g2_g1: hom_dims(cfg, g2, g1)?,
        r_r: hom_dims(cfg, r, r)?,
    })
}

fn exact(d: HomDims, what: &str) -> Result<()> {
    if d.determinate {
        Ok(())
    } else {
        Err(Error::HypothesesUnmet(format!("{what} is not determinate")))
    }
}

/// Check identities (1)-(4) against the data. Errors when the hypotheses
/// (`h1(R,R) = 0`, `h0(G2,G1) = 0`, `h2(G1,G2) = 0`) fail or any needed
/// dimension is indeterminate; returns whether all four identities hold.
pub fn mukai_check(data: &MukaiData) -> Result<bool> {
    for (d, what) in [
        (data.g1_g1, "h(G1,G1)"),
        (data.g2_g2, "h(G2,G2)"),
        (data.g1_g2, "h(G1,G2)"),
        (data.g2_g1, "h(G2,G1)"),
        (data.r_r, "h(R,R)"),
    ] {
        exact(d, what)?;
    }
    if !data.r_r.h1.is_exactly(0) {
        return Err(Error::HypothesesUnmet(format!(
            "h1(R,R) = {} (rigidity of the middle object is required)",
            data.r_r.h1
        )));
    }
    if !data.g2_g1.h0.is_exactly(0) {
        return Err(Error::HypothesesUnmet(format!("h0(G2,G1) = {}", data.g2_g1.h0)));
    }
    if !data.g1_g2.h2.is_exactly(0) {
        return Err(Error::HypothesesUnmet(format!("h2(G1,G2) = {}", data.g1_g2.h2)));
    }
    let ok1 = data.g1_g1.h1.is_exactly(0) && data.g2_g2.h1.is_exactly(0);
    let ok2 = data.r_r.h0.lo == data.g1_g1.h0.lo + data.g2_g2.h0.lo + data.g1_g2.chi;
    let ok3 = data.r_r.h2.lo == data.g1_g1.h2.lo + data.g2_g2.h2.lo + data.g2_g1.chi;
    let ok4 = data.g1_g2.h1.lo <= data.g1_g1.h0.lo + data.g2_g2.h0.lo - 1;
    Ok(ok1 && ok2 && ok3 && ok4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CurveConfig, Mode};

    fn line(cfg: &CurveConfig, names: &[&str], degs: &[i64]) -> AtomicSheaf {
        let comps: Vec<_> = names.iter().map(|n| cfg.resolve(n).unwrap()).collect();
        AtomicSheaf::line(cfg, &comps, degs).unwrap()
    }

    #[test]
    fn extension_of_disjoint_line_bundles_passes() {
        // 0 -> O_{C1uC2}(a1, a2) -> O_{C1uC2uC3}(a1, a2+1, a3) -> O_{C3}(a3) -> 0
        let cfg = CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap();
        let (a1, a2, a3) = (0, -1, 2);
        let g1 = line(&cfg, &["C3"], &[a3]);
        let g2 = line(&cfg, &["C1", "C2"], &[a1, a2]);
        let r = line(&cfg, &["C1", "C2", "C3"], &[a1, a2 + 1, a3]);
        let data = mukai_data(&cfg, &g1, &g2, &r).unwrap();
        // h0(R,R) = 1 = 1 + 1 + chi(G1, G2) with chi = -1
        assert_eq!(data.g1_g2.chi, -1);
        assert_eq!(mukai_check(&data), Ok(true));
    }

    #[test]
    fn fabricated_dims_fail_identity_two() {
        let cfg = CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap();
        let g1 = line(&cfg, &["C3"], &[0]);
        let g2 = line(&cfg, &["C1", "C2"], &[0, 0]);
        let r = line(&cfg, &["C1", "C2", "C3"], &[0, 1, 0]);
        let mut data = mukai_data(&cfg, &g1, &g2, &r).unwrap();
        // inflate h0(R,R) while keeping it determinate
        data.r_r.h0.lo += 1;
        data.r_r.h0.hi += 1;
        assert_eq!(mukai_check(&data), Ok(false));
    }

    #[test]
    fn unmet_hypotheses_are_an_error() {
        let cfg = CurveConfig::build(Mode::Strict, &[(3, vec![2])], None).unwrap();
        // G2 -> G1 with a nonzero hom: h0(G2, G1) = 1
        let g1 = line(&cfg, &["C2"], &[0]);
        let g2 = line(&cfg, &["C1", "C2"], &[0, 0]);
        let r = line(&cfg, &["C1", "C2"], &[0, 1]);
        let data = mukai_data(&cfg, &g1, &g2, &r).unwrap();
        assert!(matches!(mukai_check(&data), Err(Error::HypothesesUnmet(_))));
    }
}
