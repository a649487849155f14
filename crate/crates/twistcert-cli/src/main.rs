//! Command-line frontend for the twistcert library.
//!
//! One binary, subcommand per operation:
//!
//! - `validate`: check a configuration against its mode's rules;
//! - `chi`: intersection pairing and Euler pairing of two classes;
//! - `hom`: hom-space dimensions between two atoms;
//! - `classify`: window shape and case number of a class, per chain;
//! - `enumerate`: all numerically exceptional classes of a configuration;
//! - `catalog`: factorization shapes for a multiplicity pattern;
//! - `rewrite`: perfectness check, swap, or absorb on a factorization;
//! - `reduce`: reduction tree and certificates for a class;
//! - `verify`: re-check a certificate, class level and sheaf level;
//! - `examples`: replay the three embedded fixtures.
//!
//! JSON arguments are inline or `@path`; `--config` takes a path or inline
//! JSON. Exit codes: 0 success, 1 domain violation or failed verification,
//! 2 usage or malformed input.

use std::fmt;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twistcert::cohom::hom_dims;
use twistcert::factorization::{
    absorb, catalog, perfectness_check, swap, AbsorbDirection, CatalogEntry, Factorization,
};
use twistcert::lattice::{chi, is_numerically_exceptional, pair};
use twistcert::reducer::{
    reduce_class, verify_certificate, verify_generated, CheckStatus, PeelOption, Strategy,
    TwistCertificate, VerifyReport,
};
use twistcert::rigidity::{class_windows, classify_case, enumerate_exceptional_classes, f_value};
use twistcert::{AtomicSheaf, Component, CurveConfig, DivisorClass, Error, Mode};

#[derive(Parser)]
#[command(name = "twistcert", version, about = "exceptional classes and twist certificates on negative curve configurations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a configuration against its mode's rules.
    Validate {
        #[arg(long)]
        config: String,
        #[arg(long)]
        json: bool,
    },
    /// Intersection pairing and Euler pairing of two divisor classes.
    Chi {
        #[arg(long)]
        config: String,
        /// First class, JSON inline or @path.
        a: String,
        /// Second class, JSON inline or @path.
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Hom-space dimensions h0, h1, h2 between two atoms.
    Hom {
        #[arg(long)]
        config: String,
        /// Source atom, JSON inline or @path.
        a: String,
        /// Target atom, JSON inline or @path.
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Window shape and case number of a class, chain by chain.
    Classify {
        #[arg(long)]
        config: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Every numerically exceptional class of the configuration.
    Enumerate {
        #[arg(long)]
        config: String,
        #[arg(long)]
        json: bool,
    },
    /// Factorization shapes for a multiplicity pattern on the first chain.
    Catalog {
        #[arg(long)]
        config: String,
        /// One of 12, 123, 12321, 123321.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply a rewrite move to a factorization, or check perfectness.
    Rewrite {
        #[arg(long)]
        config: String,
        /// Factorization, JSON inline or @path.
        #[arg(long)]
        factorization: String,
        #[arg(long = "move")]
        mv: MoveArg,
        /// 1-based slot position (swap and absorb).
        #[arg(long)]
        position: Option<usize>,
        /// Neighbor to absorb into (absorb only).
        #[arg(long)]
        direction: Option<DirectionArg>,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a class to the bare (-1)-curve and emit certificates.
    Reduce {
        #[arg(long)]
        config: String,
        #[arg(long)]
        class: String,
        /// Follow every peel option instead of the canonical first one.
        #[arg(long)]
        all_branches: bool,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a twist certificate against a class.
    Verify {
        #[arg(long)]
        config: String,
        #[arg(long)]
        class: String,
        /// Certificate, JSON inline or @path.
        #[arg(long)]
        cert: String,
        /// Certificate file whose seed and degree data replace the
        /// certificate's own; supports must match.
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Replay the three embedded fixtures.
    Examples {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MoveArg {
    Check,
    Swap,
    Absorb,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Left,
    Right,
}

/// Errors that should exit with the usage code.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::InvalidDocument(_) => 2,
            _ => 1,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    1
}

/// A JSON argument: inline text, or `@path` to read a file.
fn load_arg(arg: &str) -> anyhow::Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
        }
        None => Ok(arg.to_string()),
    }
}

fn load_config(arg: &str) -> anyhow::Result<CurveConfig> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    Ok(CurveConfig::from_json(&text)?)
}

fn load_class(cfg: &CurveConfig, arg: &str) -> anyhow::Result<DivisorClass> {
    let e = DivisorClass::from_json(&load_arg(arg)?)?;
    e.check_shape(cfg)?;
    Ok(e)
}

fn names(components: &[Component]) -> Vec<String> {
    components.iter().map(|c| c.to_string()).collect()
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn run(cmd: Cmd) -> anyhow::Result<u8> {
    match cmd {
        Cmd::Validate { config, json } => {
            let cfg = load_config(&config)?;
            let violations = cfg.violations();
            let valid = violations.is_empty();
            if json {
                emit(&json!({
                    "mode": if cfg.mode() == Mode::Strict { "strict" } else { "relaxed" },
                    "components": cfg.components().len(),
                    "valid": valid,
                    "violations": violations,
                }));
            } else {
                let mode = if cfg.mode() == Mode::Strict { "strict" } else { "relaxed" };
                println!("mode:       {mode}");
                println!("components: {}", cfg.components().len());
                if valid {
                    println!("valid:      yes");
                } else {
                    println!("valid:      no");
                    for v in &violations {
                        println!("  - {v}");
                    }
                }
            }
            Ok(if valid { 0 } else { 1 })
        }
        Cmd::Chi { config, a, b, json } => {
            let cfg = load_config(&config)?;
            let a = load_class(&cfg, &a)?;
            let b = load_class(&cfg, &b)?;
            let p = pair(&cfg, &a, &b)?;
            let x = chi(&cfg, &a, &b)?;
            if json {
                emit(&json!({ "pair": p, "chi": x }));
            } else {
                println!("pair = {p}");
                println!("chi  = {x}");
            }
            Ok(0)
        }
        Cmd::Hom { config, a, b, json } => {
            let cfg = load_config(&config)?;
            let a = AtomicSheaf::from_json(&cfg, &load_arg(&a)?)?;
            let b = AtomicSheaf::from_json(&cfg, &load_arg(&b)?)?;
            let dims = hom_dims(&cfg, &a, &b)?;
            if json {
                emit(&serde_json::to_value(&dims)?);
            } else {
                println!("h0          = {}", dims.h0);
                println!("h1          = {}", dims.h1);
                println!("h2          = {}", dims.h2);
                println!("chi         = {}", dims.chi);
                println!("determinate = {}", dims.determinate);
            }
            Ok(0)
        }
        Cmd::Classify { config, class, json } => {
            let cfg = load_config(&config)?;
            let e = load_class(&cfg, &class)?;
            let windows = class_windows(&cfg, &e)?;
            let mut rows = Vec::new();
            for w in windows.iter().flatten() {
                let window: Vec<Component> = (0..w.vec.len())
                    .map(|i| Component::Chain { chain: w.chain, position: w.start + i })
                    .collect();
                let f = f_value(&w.vec, w.rel_k + 1)?;
                let case = if f == 0 { classify_case(&w.vec, w.rel_k + 1).ok() } else { None };
                rows.push((w.chain, window, w.vec.clone(), f, case));
            }
            if json {
                let value: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(chain, window, vec, f, case)| {
                        json!({
                            "chain": chain + 1,
                            "window": names(window),
                            "multiplicities": vec,
                            "f": f,
                            "case": case.map(|c| c.case),
                            "reversed": case.map(|c| c.reversed),
                        })
                    })
                    .collect();
                emit(&serde_json::Value::Array(value));
            } else if rows.is_empty() {
                println!("no chain support: the class is the bare (-1)-curve");
            } else {
                for (chain, window, vec, f, case) in &rows {
                    let window = names(window).join(",");
                    let vec = vec
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    match case {
                        Some(c) => println!(
                            "chain {}: window [{window}] mult ({vec}) f = {f} case = {}{}",
                            chain + 1,
                            c.case,
                            if c.reversed { " (reversed)" } else { "" },
                        ),
                        None => println!(
                            "chain {}: window [{window}] mult ({vec}) f = {f} (no case: not tight)",
                            chain + 1,
                        ),
                    }
                }
            }
            Ok(0)
        }
        Cmd::Enumerate { config, json } => {
            let cfg = load_config(&config)?;
            let classes = enumerate_exceptional_classes(&cfg)?;
            if json {
                let values: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|e| serde_json::to_value(e).expect("class serializes"))
                    .collect();
                emit(&json!({ "count": classes.len(), "classes": values }));
            } else {
                for e in &classes {
                    println!("{}", e.to_json());
                }
                println!("count: {}", classes.len());
            }
            Ok(0)
        }
        Cmd::Catalog { config, pattern, json } => {
            let cfg = load_config(&config)?;
            let entries = catalog(&cfg, &pattern)?;
            if json {
                let values: Vec<serde_json::Value> = entries
                    .iter()
                    .map(|entry| match entry {
                        CatalogEntry::Perfect { label, factorization, conditions } => json!({
                            "label": label,
                            "kind": "perfect",
                            "factorization": serde_json::from_str::<serde_json::Value>(
                                &factorization.to_json()
                            )
                            .expect("factorization JSON"),
                            "conditions": conditions,
                        }),
                        CatalogEntry::PeelSplit { label, line_support } => json!({
                            "label": label,
                            "kind": "peel",
                            "support": names(line_support),
                        }),
                    })
                    .collect();
                emit(&json!({ "pattern": pattern, "entries": values }));
            } else {
                for entry in &entries {
                    match entry {
                        CatalogEntry::Perfect { label, factorization, conditions } => {
                            let conds = if conditions.is_empty() {
                                String::new()
                            } else {
                                let parts: Vec<String> = conditions
                                    .iter()
                                    .map(|(x, y)| format!("{x} > {y}"))
                                    .collect();
                                format!("  [{}]", parts.join(", "))
                            };
                            println!("{label:>5}: {factorization}{conds}");
                        }
                        CatalogEntry::PeelSplit { label, line_support } => {
                            println!("{label:>5}: peel {{{}}}", names(line_support).join(","));
                        }
                    }
                }
            }
            Ok(0)
        }
        Cmd::Rewrite { config, factorization, mv, position, direction, json } => {
            let cfg = load_config(&config)?;
            let f = Factorization::from_json(&cfg, &load_arg(&factorization)?)?;
            match mv {
                MoveArg::Check => {
                    let report = perfectness_check(&cfg, &f)?;
                    if json {
                        emit(&serde_json::to_value(&report)?);
                    } else if report.pass {
                        println!("perfect: yes");
                    } else {
                        println!("perfect: no");
                        for line in &report.failures {
                            println!("  - {line}");
                        }
                    }
                    Ok(if report.pass { 0 } else { 1 })
                }
                MoveArg::Swap | MoveArg::Absorb => {
                    let position = position.ok_or_else(|| {
                        UsageError("--position is required for swap and absorb".into())
                    })?;
                    let out = if mv == MoveArg::Swap {
                        swap(&cfg, &f, position)?
                    } else {
                        let direction = match direction.ok_or_else(|| {
                            UsageError("--direction is required for absorb".into())
                        })? {
                            DirectionArg::Left => AbsorbDirection::Left,
                            DirectionArg::Right => AbsorbDirection::Right,
                        };
                        absorb(&cfg, &f, position, direction)?
                    };
                    if json {
                        emit(&serde_json::from_str(&out.to_json())?);
                    } else {
                        println!("{out}");
                        println!("{}", out.to_json());
                    }
                    Ok(0)
                }
            }
        }
        Cmd::Reduce { config, class, all_branches, json } => {
            let cfg = load_config(&config)?;
            let e = load_class(&cfg, &class)?;
            let strategy = if all_branches { Strategy::All } else { Strategy::First };
            let tree = reduce_class(&cfg, &e, strategy)?;
            let branches = tree.branches();
            let mut rows = Vec::new();
            let mut all_pass = true;
            for branch in &branches {
                let cert = TwistCertificate::from_branch(branch);
                let report = verify_generated(&cfg, &e, &cert);
                all_pass &= report.pass;
                rows.push((branch.clone(), cert, report));
            }
            if json {
                let branch_values: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(branch, cert, report)| {
                        json!({
                            "peels": branch
                                .iter()
                                .map(|opt| names(&opt.components()))
                                .collect::<Vec<_>>(),
                            "certificate": serde_json::from_str::<serde_json::Value>(
                                &cert.to_json()
                            )
                            .expect("certificate JSON"),
                            "class_checks_pass": report.pass,
                        })
                    })
                    .collect();
                emit(&json!({
                    "class": serde_json::to_value(&e)?,
                    "strategy": if all_branches { "all" } else { "first" },
                    "tree": tree.to_value(),
                    "branches": branch_values,
                }));
            } else {
                println!("class: {}", e.to_json());
                println!("branches: {}", branches.len());
                for (i, (branch, cert, report)) in rows.iter().enumerate() {
                    let path: Vec<String> = branch
                        .iter()
                        .map(|opt| format!("{{{}}}", names(&opt.components()).join(",")))
                        .collect();
                    let path =
                        if path.is_empty() { "(already bare)".to_string() } else { path.join(" -> ") };
                    let ok = if report.pass { "pass" } else { "FAIL" };
                    println!("branch {}: {path}  [class checks: {ok}]", i + 1);
                    println!("  certificate: {}", cert.to_json());
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Cmd::Verify { config, class, cert, degrees, json } => {
            let cfg = load_config(&config)?;
            let e = load_class(&cfg, &class)?;
            let mut cert = TwistCertificate::from_json(&cfg, &load_arg(&cert)?)?;
            if let Some(path) = degrees {
                let data = TwistCertificate::from_json(&cfg, &load_arg(&path)?)?;
                cert = merge_degrees(cert, data)?;
            }
            let report = verify_certificate(&cfg, &e, &cert);
            if json {
                emit(&serde_json::to_value(&report)?);
            } else {
                print_report(&report);
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Cmd::Examples { json } => run_examples(json),
    }
}

/// Replace a certificate's seed and degree data with another's; the twist
/// supports of the two documents must agree step by step.
fn merge_degrees(
    cert: TwistCertificate,
    data: TwistCertificate,
) -> anyhow::Result<TwistCertificate> {
    if data.twists.len() != cert.twists.len() {
        return Err(Error::BadDegreeMap(format!(
            "degree data has {} twists, certificate has {}",
            data.twists.len(),
            cert.twists.len()
        ))
        .into());
    }
    let mut merged = cert;
    merged.seed_degree = data.seed_degree.or(merged.seed_degree);
    for (step, with) in merged.twists.iter_mut().zip(data.twists) {
        if with.support != step.support {
            return Err(Error::BadDegreeMap(format!(
                "degree data step supports {:?} do not match the certificate",
                names(&with.support)
            ))
            .into());
        }
        if with.deg.is_some() {
            step.deg = with.deg;
        }
    }
    Ok(merged)
}

fn print_report(report: &VerifyReport) {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        match &c.status {
            CheckStatus::Pass => println!("{:<width$}  pass", c.name),
            CheckStatus::Fail(detail) => println!("{:<width$}  FAIL: {detail}", c.name),
            CheckStatus::Unchecked(reason) => {
                println!("{:<width$}  unchecked: {reason}", c.name)
            }
        }
    }
    println!("result: {}", if report.pass { "pass" } else { "FAIL" });
}

// Embedded fixtures: two disjoint single-curve chains, the A_3 chain with a
// doubled middle curve, and the loop configuration.
const EX1_CONFIG: &str =
    r#"{"mode":"strict","chains":[{"length":1,"attach":[1]},{"length":1,"attach":[1]}]}"#;
const EX2_CONFIG: &str = r#"{"mode":"strict","chains":[{"length":3,"attach":[2]}]}"#;
const EX2_CLASS: &str = r#"{"d":1,"chains":[[1,2,1]]}"#;
const EX2_CERT: &str = r#"{"seed":{"degree":-2},"twists":[{"support":["C2"],"deg":{"C2":0}},{"support":["C1","C2","C3"],"deg":{"C1":-1,"C2":2,"C3":-1}}]}"#;
const EX3_CONFIG: &str = r#"{"mode":"relaxed","chains":[{"length":3,"attach":[1,3]}]}"#;
const EX3_CLASS: &str = r#"{"d":1,"chains":[[1,2,1]]}"#;
const EX3_CERT: &str = r#"{"seed":{"degree":-1},"twists":[{"support":["C2","C3"],"deg":{"C2":0,"C3":0}},{"support":["C1","C2"],"deg":{"C1":0,"C2":0}}]}"#;

fn run_examples(json: bool) -> anyhow::Result<u8> {
    let results = vec![
        ("two disjoint single-curve chains", example_one()),
        ("doubled middle curve on a chain of three", example_two()),
        ("loop configuration with two overlapping twists", example_three()),
    ];
    let mut all = true;
    for (name, outcome) in &results {
        let pass = outcome.is_ok();
        all &= pass;
        if !json {
            match outcome {
                Ok(()) => println!("{name}: pass"),
                Err(err) => println!("{name}: FAIL: {err:#}"),
            }
        }
    }
    if json {
        let rows: Vec<serde_json::Value> = results
            .iter()
            .map(|(name, outcome)| {
                json!({
                    "name": name,
                    "pass": outcome.is_ok(),
                    "detail": outcome.as_ref().err().map(|e| format!("{e:#}")),
                })
            })
            .collect();
        emit(&json!({ "pass": all, "examples": rows }));
    }
    Ok(if all { 0 } else { 1 })
}

fn ensure(cond: bool, what: &str) -> anyhow::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(anyhow!("{what}"))
    }
}

/// Two disjoint single-curve chains: exactly four exceptional classes, all
/// multiplicity-free, and every reduction branch checks out.
fn example_one() -> anyhow::Result<()> {
    let cfg = CurveConfig::from_json(EX1_CONFIG)?;
    ensure(cfg.violations().is_empty(), "configuration should be valid")?;
    let classes = enumerate_exceptional_classes(&cfg)?;
    let chains: Vec<Vec<Vec<i64>>> = classes.iter().map(|e| e.chains.clone()).collect();
    let want = vec![
        vec![vec![0], vec![0]],
        vec![vec![0], vec![1]],
        vec![vec![1], vec![0]],
        vec![vec![1], vec![1]],
    ];
    ensure(chains == want, "expected exactly the four multiplicity-free classes")?;
    for e in &classes {
        ensure(
            e.chains.iter().flatten().all(|&m| m <= 1),
            "no multiplicity above 1 can occur here",
        )?;
        ensure(is_numerically_exceptional(&cfg, e)?, "enumerated class must be exceptional")?;
        let tree = reduce_class(&cfg, e, Strategy::All)?;
        for branch in tree.branches() {
            let cert = TwistCertificate::from_branch(&branch);
            let report = verify_generated(&cfg, e, &cert);
            ensure(report.pass, "class-level certificate checks must pass")?;
        }
    }
    Ok(())
}

/// The chain of three with the middle curve doubled: the reduction tree
/// contains the two-step branch, and the full-degree certificate passes
/// every check.
fn example_two() -> anyhow::Result<()> {
    let cfg = CurveConfig::from_json(EX2_CONFIG)?;
    let e = DivisorClass::from_json(EX2_CLASS)?;
    let tree = reduce_class(&cfg, &e, Strategy::All)?;
    let middle_then_all: Vec<PeelOption> = vec![
        PeelOption { chain: 0, start: 1, end: 1 },
        PeelOption { chain: 0, start: 0, end: 2 },
    ];
    ensure(
        tree.branches().contains(&middle_then_all),
        "tree must contain the middle-curve-then-whole-chain branch",
    )?;
    let cert = TwistCertificate::from_json(&cfg, EX2_CERT)?;
    let report = verify_certificate(&cfg, &e, &cert);
    let all_pass = report.checks.iter().all(|c| c.status == CheckStatus::Pass);
    ensure(report.pass && all_pass, "every certificate check must pass")?;
    Ok(())
}

/// The loop configuration: the certificate with two overlapping twists
/// verifies, and the same curve data is rejected in strict mode.
fn example_three() -> anyhow::Result<()> {
    let cfg = CurveConfig::from_json(EX3_CONFIG)?;
    let e = DivisorClass::from_json(EX3_CLASS)?;
    let cert = TwistCertificate::from_json(&cfg, EX3_CERT)?;
    let report = verify_certificate(&cfg, &e, &cert);
    ensure(report.pass, "loop certificate must verify")?;
    // The two quoted section counts and the pairing behind chi = -1.
    let e1 = AtomicSheaf::line(
        &cfg,
        &[
            Component::D,
            Component::Chain { chain: 0, position: 0 },
            Component::Chain { chain: 0, position: 1 },
        ],
        &[0, 0, 0],
    )?;
    let l2 = AtomicSheaf::line(
        &cfg,
        &[
            Component::Chain { chain: 0, position: 1 },
            Component::Chain { chain: 0, position: 2 },
        ],
        &[0, 0],
    )?;
    let forward = hom_dims(&cfg, &l2, &e1)?;
    let backward = hom_dims(&cfg, &e1, &l2)?;
    ensure(forward.chi == -1, "chi(L2, E1) must be -1")?;
    ensure(forward.h0.is_exactly(0), "h0(L2, E1) must vanish")?;
    ensure(backward.h0.is_exactly(0), "h0(E1, L2) must vanish")?;
    // Strict mode rejects the doubly attached chain.
    let strict = CurveConfig::build(Mode::Strict, &[(3, vec![1, 3])], None)?;
    ensure(!strict.violations().is_empty(), "strict mode must reject the loop")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_examples_pass() {
        assert!(example_one().is_ok());
        assert!(example_two().is_ok());
        assert!(example_three().is_ok());
    }

    #[test]
    fn degree_merge_replaces_sheaf_data() {
        let cfg = CurveConfig::from_json(EX2_CONFIG).unwrap();
        let bare = TwistCertificate::from_json(
            &cfg,
            r#"{"twists":[{"support":["C2"]},{"support":["C1","C2","C3"]}]}"#,
        )
        .unwrap();
        let with = TwistCertificate::from_json(&cfg, EX2_CERT).unwrap();
        let merged = merge_degrees(bare.clone(), with.clone()).unwrap();
        assert_eq!(merged, with);

        let wrong = TwistCertificate::from_json(
            &cfg,
            r#"{"twists":[{"support":["C2"]}]}"#,
        )
        .unwrap();
        assert!(merge_degrees(bare, wrong).is_err());
    }

    #[test]
    fn argument_loading_accepts_inline_and_file() {
        let dir = std::env::temp_dir().join("twistcert-cli-args");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("class.json");
        std::fs::write(&path, EX2_CLASS).unwrap();
        let inline = load_arg(EX2_CLASS).unwrap();
        let from_file = load_arg(&format!("@{}", path.display())).unwrap();
        assert_eq!(inline, from_file);
        let cfg = load_config(EX2_CONFIG).unwrap();
        assert_eq!(cfg.components().len(), 4);
    }
}
