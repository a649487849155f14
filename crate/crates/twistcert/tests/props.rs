//! Property tests for the structural invariants of the library.
//!
//! - the intersection pairing is symmetric and bilinear;
//! - twisting by a spherical class is an involution that moves a class by
//!   a multiple of the twist;
//! - the f-polynomial is nonnegative and vanishes exactly on the unit
//!   ascent-descent profiles;
//! - the linear-algebra section count agrees with the combinatorial closed
//!   form and does not depend on the gluing scalars of a tree;
//! - hom dimensions satisfy the Euler identity and extensions add classes;
//! - enumerated classes are exceptional and tight, and every reduction
//!   telescopes back to the class it came from.

use proptest::prelude::*;

use twistcert::cohom::{
    closed_form_h0, hom_dims, mukai_check, mukai_data, oracle_h0, oracle_h0_with_scalars,
    GluingScalars,
};
use twistcert::factorization::extension_atom;
use twistcert::lattice::{chi, is_numerically_exceptional, pair, twist_class};
use twistcert::reducer::{peel, peel_options, reduce_class, Strategy as ReduceStrategy, TwistCertificate};
use twistcert::rigidity::{
    class_windows, enumerate_exceptional_classes, equality_conditions, f_value,
};
use twistcert::{AtomicSheaf, Component, CurveConfig, DivisorClass, Error, Mode};

/// A strict configuration: 1 to 3 chains, total length at most `max_total`,
/// one attachment per chain.
fn arb_config(max_total: usize) -> impl Strategy<Value = CurveConfig> {
    prop::collection::vec((1usize..=4, 0usize..=3), 1..=3).prop_map(move |raw| {
        let mut chains: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut total = 0usize;
        for (length, attach_sel) in raw {
            if total + length > max_total {
                continue;
            }
            total += length;
            chains.push((length, vec![attach_sel % length + 1]));
        }
        if chains.is_empty() {
            chains.push((1, vec![1]));
        }
        let cfg = CurveConfig::build(Mode::Strict, &chains, None).expect("valid recipe");
        assert!(cfg.violations().is_empty());
        cfg
    })
}

/// An arbitrary (not necessarily effective) class on the configuration.
fn arb_class(cfg: &CurveConfig) -> impl Strategy<Value = DivisorClass> {
    let shapes: Vec<_> = cfg
        .chains()
        .iter()
        .map(|spec| prop::collection::vec(-3i64..=3, spec.length..=spec.length))
        .collect();
    (-2i64..=2, shapes).prop_map(|(d, chains)| DivisorClass { d, chains })
}

/// A contiguous window on one chain, as (chain, start, end) inclusive.
fn arb_window(cfg: &CurveConfig) -> impl Strategy<Value = (usize, usize, usize)> {
    let lengths: Vec<usize> = cfg.chains().iter().map(|s| s.length).collect();
    (0usize..lengths.len(), any::<usize>(), any::<usize>()).prop_map(move |(c, lo, hi)| {
        let n = lengths[c];
        let start = lo % n;
        let end = start + hi % (n - start);
        (c, start, end)
    })
}

fn window_comps(chain: usize, start: usize, end: usize) -> Vec<Component> {
    (start..=end).map(|position| Component::Chain { chain, position }).collect()
}

/// The class of the structure sheaf of a window, all multiplicities 1.
fn window_class(cfg: &CurveConfig, chain: usize, start: usize, end: usize) -> DivisorClass {
    let mut out = DivisorClass::zero(cfg);
    for c in window_comps(chain, start, end) {
        out.add_component(c, 1);
    }
    out
}

/// A reduced line-bundle atom: either a chain window or a star around the
/// exceptional curve reaching into each selected chain through its
/// attachment point.
fn arb_atom(cfg: &CurveConfig) -> impl Strategy<Value = AtomicSheaf> {
    let cfg = cfg.clone();
    let star = {
        let cfg = cfg.clone();
        (
            prop::collection::vec((any::<bool>(), any::<usize>(), any::<usize>()), 3),
            prop::collection::vec(-3i64..=3, 8),
        )
            .prop_map(move |(picks, degs)| {
                let mut comps = vec![Component::D];
                for (i, spec) in cfg.chains().iter().enumerate() {
                    let (on, lo, hi) = picks[i % picks.len()];
                    if !on {
                        continue;
                    }
                    let a = spec.attach[0];
                    let start = a - lo % (a + 1);
                    let end = a + hi % (spec.length - a);
                    comps.extend(window_comps(i, start, end));
                }
                comps.sort();
                let degrees: Vec<i64> =
                    (0..comps.len()).map(|i| degs[i % degs.len()]).collect();
                AtomicSheaf::line(&cfg, &comps, &degrees).expect("star support is connected")
            })
    };
    let window = (arb_window(&cfg), prop::collection::vec(-3i64..=3, 8)).prop_map(
        move |((c, s, e), degs)| {
            let comps = window_comps(c, s, e);
            let degrees: Vec<i64> = (0..comps.len()).map(|i| degs[i % degs.len()]).collect();
            AtomicSheaf::line(&cfg, &comps, &degrees).expect("window support is connected")
        },
    );
    prop_oneof![3 => window, 1 => star]
}

/// Configuration and a pair of atoms on it.
fn arb_atom_pair() -> impl Strategy<Value = (CurveConfig, AtomicSheaf, AtomicSheaf)> {
    arb_config(6).prop_flat_map(|cfg| {
        let a = arb_atom(&cfg);
        let b = arb_atom(&cfg);
        (Just(cfg), a, b)
    })
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(
        (cfg, u, v, w, k) in arb_config(6).prop_flat_map(|cfg| {
            let u = arb_class(&cfg);
            let v = arb_class(&cfg);
            let w = arb_class(&cfg);
            (Just(cfg), u, v, w, -2i64..=2)
        })
    ) {
        prop_assert_eq!(pair(&cfg, &u, &v)?, pair(&cfg, &v, &u)?);
        let lhs = pair(&cfg, &u.plus(&v.scaled(k)), &w)?;
        prop_assert_eq!(lhs, pair(&cfg, &u, &w)? + k * pair(&cfg, &v, &w)?);
        // the Euler pairing is determined by the intersection pairing; it is
        // only defined for effective classes
        let abs = |c: &DivisorClass| DivisorClass {
            d: c.d.abs(),
            chains: c.chains.iter().map(|v| v.iter().map(|x| x.abs()).collect()).collect(),
        };
        let (ue, ve) = (abs(&u), abs(&v));
        prop_assert_eq!(chi(&cfg, &ue, &ve)?, -pair(&cfg, &ue, &ve)?);
    }

    #[test]
    fn twisting_by_a_window_is_an_involution(
        (cfg, win, v) in arb_config(6).prop_flat_map(|cfg| {
            let win = arb_window(&cfg);
            let v = arb_class(&cfg);
            (Just(cfg), win, v)
        })
    ) {
        // every chain window is numerically spherical
        let (c, s, e) = win;
        let l = window_class(&cfg, c, s, e);
        prop_assert_eq!(pair(&cfg, &l, &l)?, -2);
        let once = twist_class(&cfg, &l, &v)?;
        // the twist moves v by a multiple of the window class
        prop_assert_eq!(once.minus(&v), l.scaled(pair(&cfg, &l, &v)?));
        prop_assert_eq!(twist_class(&cfg, &l, &once)?, v);
    }

    #[test]
    fn f_vanishes_exactly_on_unit_profiles(
        r in prop::collection::vec(1i64..=4, 1..=7),
        k_sel in any::<usize>(),
    ) {
        let k = k_sel % r.len() + 1;
        let f = f_value(&r, k)?;
        prop_assert!(f >= 0);
        prop_assert_eq!(equality_conditions(&r, k)?, f == 0);
    }

    #[test]
    fn enumerated_classes_are_exceptional_and_tight(cfg in arb_config(6)) {
        let classes = enumerate_exceptional_classes(&cfg)?;
        for e in &classes {
            prop_assert_eq!(e.d, 1);
            prop_assert!(is_numerically_exceptional(&cfg, e)?);
            for w in class_windows(&cfg, e)?.iter().flatten() {
                prop_assert_eq!(f_value(&w.vec, w.rel_k + 1)?, 0);
            }
        }
        // the bare exceptional curve always appears
        prop_assert!(classes.iter().any(|e| e.chains.iter().flatten().all(|&m| m == 0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_agrees_with_the_closed_form((cfg, a, b) in arb_atom_pair()) {
        prop_assert_eq!(oracle_h0(&cfg, &a, &b)?, closed_form_h0(&cfg, &a, &b)?);
    }

    #[test]
    fn oracle_ignores_gluing_scalars_on_trees(
        ((cfg, a, b), raw) in (arb_atom_pair(), prop::collection::vec(1i64..=5, 16))
    ) {
        let mut scalars = GluingScalars::new();
        let mut i = 0;
        for c in cfg.components() {
            for n in cfg.neighbors(c) {
                if c < n {
                    let v = raw[i % raw.len()];
                    scalars.insert((c, n), if v > 3 { 3 - v } else { v });
                    i += 1;
                }
            }
        }
        prop_assert_eq!(
            oracle_h0_with_scalars(&cfg, &a, &b, &scalars)?,
            oracle_h0(&cfg, &a, &b)?
        );
    }

    #[test]
    fn hom_dimensions_satisfy_the_euler_identity((cfg, a, b) in arb_atom_pair()) {
        let dims = hom_dims(&cfg, &a, &b)?;
        prop_assert!(dims.determinate);
        let (h0, h1, h2) = (
            dims.h0.point().unwrap(),
            dims.h1.point().unwrap(),
            dims.h2.point().unwrap(),
        );
        prop_assert!(h0 >= 0 && h1 >= 0 && h2 >= 0);
        prop_assert_eq!(h0 - h1 + h2, dims.chi);
        prop_assert_eq!(dims.chi, chi(&cfg, &a.class(&cfg), &b.class(&cfg))?);
        prop_assert_eq!(h0, oracle_h0(&cfg, &a, &b)?);
    }

    #[test]
    fn extensions_add_classes(
        (cfg, chain, cut, end, degs) in arb_config(6).prop_flat_map(|cfg| {
            let lengths: Vec<usize> = cfg.chains().iter().map(|s| s.length).collect();
            (
                Just(cfg),
                0usize..lengths.len(),
                any::<usize>(),
                any::<usize>(),
                prop::collection::vec(-2i64..=2, 8),
            )
        })
    ) {
        // split one chain window at a cut: disjoint supports, one shared edge
        let n = cfg.chains()[chain].length;
        prop_assume!(n >= 2);
        let cut = cut % (n - 1);
        let end = cut + 1 + end % (n - cut - 1);
        let sub_comps = window_comps(chain, 0, cut);
        let quot_comps = window_comps(chain, cut + 1, end);
        let deg_at = |i: usize| degs[i % degs.len()];
        let sub = AtomicSheaf::line(
            &cfg,
            &sub_comps,
            &(0..sub_comps.len()).map(deg_at).collect::<Vec<_>>(),
        )?;
        let quot = AtomicSheaf::line(
            &cfg,
            &quot_comps,
            &(0..quot_comps.len()).map(|i| deg_at(i + 4)).collect::<Vec<_>>(),
        )?;
        match extension_atom(&cfg, &sub, &quot) {
            Ok(ext) => {
                let want = sub.class(&cfg).plus(&quot.class(&cfg));
                prop_assert_eq!(ext.class(&cfg), want);
                let mut union: Vec<Component> = sub_comps.clone();
                union.extend(quot_comps.iter().copied());
                union.sort();
                let got: Vec<Component> = ext.support().iter().copied().collect();
                prop_assert_eq!(got, union);
                // when the rigidity hypotheses hold, the dimension identities do too
                let data = mukai_data(&cfg, &quot, &sub, &ext)?;
                match mukai_check(&data) {
                    Ok(holds) => prop_assert!(holds),
                    Err(Error::HypothesesUnmet(_)) => {}
                    Err(other) => return Err(TestCaseError::fail(other.to_string())),
                }
            }
            Err(Error::RewriteObstructed(_)) | Err(Error::Indeterminate(_)) => {}
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn peeling_shrinks_and_stays_exceptional(
        (cfg, sel) in (arb_config(5), any::<usize>())
    ) {
        let classes = enumerate_exceptional_classes(&cfg)?;
        prop_assume!(!classes.is_empty());
        let e = &classes[sel % classes.len()];
        let total = |v: &DivisorClass| v.chains.iter().flatten().sum::<i64>();
        if total(e) == 0 {
            // the bare curve has nothing to peel
            prop_assert!(matches!(peel_options(&cfg, e), Err(Error::NothingToPeel)));
            return Ok(());
        }
        for opt in peel_options(&cfg, e)? {
            let next = peel(&cfg, e, &opt)?;
            prop_assert!(total(&next) < total(e));
            prop_assert!(is_numerically_exceptional(&cfg, &next)?);
        }
    }

    #[test]
    fn reductions_telescope_back_to_the_class(
        (cfg, sel) in (arb_config(5), any::<usize>())
    ) {
        let classes = enumerate_exceptional_classes(&cfg)?;
        prop_assume!(!classes.is_empty());
        let e = &classes[sel % classes.len()];
        let tree = reduce_class(&cfg, e, ReduceStrategy::First)?;
        for branch in tree.branches() {
            let cert = TwistCertificate::from_branch(&branch);
            let mut sum = DivisorClass::d_curve(&cfg);
            for step in &cert.twists {
                sum = sum.plus(&step.class(&cfg));
            }
            prop_assert_eq!(&sum, e);
            let report = twistcert::reducer::verify_generated(&cfg, e, &cert);
            prop_assert!(report.pass, "checks failed: {:?}", report.checks);
        }
    }

    #[test]
    fn documents_round_trip(
        (cfg, sel) in (arb_config(5), any::<usize>())
    ) {
        let text = cfg.to_json();
        prop_assert_eq!(&CurveConfig::from_json(&text)?, &cfg);
        let classes = enumerate_exceptional_classes(&cfg)?;
        prop_assume!(!classes.is_empty());
        let e = &classes[sel % classes.len()];
        prop_assert_eq!(&DivisorClass::from_json(&e.to_json())?, e);
        let tree = reduce_class(&cfg, e, ReduceStrategy::First)?;
        for branch in tree.branches() {
            let cert = TwistCertificate::from_branch(&branch);
            let back = TwistCertificate::from_json(&cfg, &cert.to_json())?;
            prop_assert_eq!(back, cert);
        }
    }
}
