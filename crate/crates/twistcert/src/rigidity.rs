//! Multiplicity-vector rigidity combinatorics.
//!
//! For a multiplicity vector `r = (r_1, ..., r_n)` on a chain whose component
//! `C_k` meets the (-1)-curve, the quadratic form
//!
//! ```text
//! f(r; k) = sum r_i^2 - sum r_i r_{i+1} - r_k
//! ```
//!
//! is nonnegative, and `2 f(r; k)` measures the defect of the class
//! `D + sum r_i C_i` from self-intersection -1. Vectors with `f = 0` are
//! called tight here. Tight vectors are exactly those that rise from 1 in
//! unit steps to the marked position and fall back to 1 in unit steps, and
//! for `n <= 6` each tight vector matches one of six head shapes, possibly
//! after reversal; the match determines which line bundles can be peeled off
//! an exceptional class (see the reducer).

use serde::{Deserialize, Serialize};

use crate::config::CurveConfig;
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

/// Validate a window vector and marked position (1-based `k`).
fn check_vector(r: &[i64], k: usize) -> Result<()> {
    if let Some(index) = r.iter().position(|&x| x <= 0) {
        return Err(Error::NonPositiveEntry { index, value: r[index] });
    }
    if k == 0 || k > r.len() {
        return Err(Error::MarkedPositionOutOfRange { k, n: r.len() });
    }
    Ok(())
}

/// Evaluate `f(r; k)` for a positive vector `r` and 1-based marked position.
pub fn f_value(r: &[i64], k: usize) -> Result<i64> {
    check_vector(r, k)?;
    let squares: i64 = r.iter().map(|x| x * x).sum();
    let products: i64 = r.windows(2).map(|w| w[0] * w[1]).sum();
    Ok(squares - products - r[k - 1])
}

/// The explicit description of the `f = 0` locus: ends equal to 1, unit
/// ascent up to the marked position, unit descent after it.
pub fn equality_conditions(r: &[i64], k: usize) -> Result<bool> {
    check_vector(r, k)?;
    let n = r.len();
    if r[0] != 1 || r[n - 1] != 1 {
        return Ok(false);
    }
    for i in 1..n {
        let step = r[i] - r[i - 1];
        let ok = if i + 1 <= k { (0..=1).contains(&step) } else { (-1..=0).contains(&step) };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which of the six head shapes a tight window vector matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseMatch {
    /// Case number, 1 through 6.
    pub case: u8,
    /// True when the shape matches only after reversing the window (which
    /// replaces `k` by `n + 1 - k`).
    pub reversed: bool,
}

/// Match a vector head against the six shapes in the given orientation.
/// `r` must be tight. Returns the case number if one matches.
pub(crate) fn match_forward(r: &[i64], k: usize) -> Option<u8> {
    let n = r.len();
    if n == 1 {
        return Some(1);
    }
    if k >= 2 && r[0] == 1 && r[1] == 1 {
        return Some(2);
    }
    if k == 2 && n >= 3 && r[0] == 1 && r[1] == 2 && r[2] == 1 {
        return Some(3);
    }
    if k >= 3 && r[0] == 1 && r[1] == 2 && r[2] == 2 {
        return Some(4);
    }
    if k == 3 && r == [1, 2, 3, 2, 1] {
        return Some(5);
    }
    if k == 4 && r == [1, 2, 3, 3, 2, 1] {
        return Some(6);
    }
    None
}

/// Classify a tight window vector (1-based `k`). Errors: invalid vector,
/// `f != 0`, or window longer than 6. The forward orientation is preferred
/// when both directions match.
pub fn classify_case(r: &[i64], k: usize) -> Result<CaseMatch> {
    let f = f_value(r, k)?;
    if f != 0 {
        return Err(Error::NotTight { f });
    }
    if r.len() > 6 {
        return Err(Error::WindowTooLong { n: r.len() });
    }
    if let Some(case) = match_forward(r, k) {
        return Ok(CaseMatch { case, reversed: false });
    }
    let rev: Vec<i64> = r.iter().rev().copied().collect();
    let rk = r.len() + 1 - k;
    if let Some(case) = match_forward(&rev, rk) {
        return Ok(CaseMatch { case, reversed: true });
    }
    Err(Error::Internal(format!(
        "tight vector {r:?} with k = {k} matches no case in either orientation"
    )))
}

/// The support window of a class on one chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWindow {
    /// Chain index (0-based).
    pub chain: usize,
    /// First support position on the chain (0-based).
    pub start: usize,
    /// Multiplicities over the window, all positive.
    pub vec: Vec<i64>,
    /// Position of the attachment inside the window (0-based).
    pub rel_k: usize,
}

/// Split a class into per-chain support windows. Each chain must either be
/// unused or carry positive multiplicities on a contiguous window containing
/// the chain's single attachment. Requires one attachment per chain.
pub fn class_windows(cfg: &CurveConfig, e: &DivisorClass) -> Result<Vec<Option<ChainWindow>>> {
    e.check_shape(cfg)?;
    let mut out = Vec::with_capacity(cfg.chains().len());
    for (j, spec) in cfg.chains().iter().enumerate() {
        let vec = &e.chains[j];
        if vec.iter().all(|&x| x == 0) {
            out.push(None);
            continue;
        }
        let [k0] = spec.attach[..] else {
            return Err(Error::RelaxedConfigRejected(format!(
                "chain {} has {} attachments",
                j + 1,
                spec.attach.len()
            )));
        };
        let support: Vec<usize> = (0..spec.length).filter(|&i| vec[i] != 0).collect();
        let start = support[0];
        let end = *support.last().expect("nonempty");
        if support.len() != end - start + 1 {
            return Err(Error::BadSupportWindow {
                chain: j + 1,
                detail: "support has a gap".to_string(),
            });
        }
        if !(start..=end).contains(&k0) {
            return Err(Error::BadSupportWindow {
                chain: j + 1,
                detail: "attachment lies outside the support".to_string(),
            });
        }
        if let Some(&neg) = vec.iter().find(|&&x| x < 0) {
            return Err(Error::BadSupportWindow {
                chain: j + 1,
                detail: format!("negative multiplicity {neg}"),
            });
        }
        out.push(Some(ChainWindow {
            chain: j,
            start,
            vec: vec[start..=end].to_vec(),
            rel_k: k0 - start,
        }));
    }
    Ok(out)
}

/// All tight window vectors of length `w` with the marked position at
/// 0-based `rel_k`, in lexicographic order.
fn tight_vectors(w: usize, rel_k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; w];
    cur[0] = 1;
    fn rec(cur: &mut Vec<i64>, pos: usize, w: usize, rel_k: usize, out: &mut Vec<Vec<i64>>) {
        if pos == w {
            if cur[w - 1] == 1 {
                out.push(cur.clone());
            }
            return;
        }
        // transition from pos-1 to pos: ascent while pos <= rel_k
        let steps: [i64; 2] = if pos <= rel_k { [0, 1] } else { [-1, 0] };
        for step in steps {
            let v = cur[pos - 1] + step;
            if v >= 1 {
                cur[pos] = v;
                rec(cur, pos + 1, w, rel_k, out);
            }
        }
    }
    if w == 1 {
        return vec![vec![1]];
    }
    rec(&mut cur, 1, w, rel_k, &mut out);
    out.sort();
    out
}

/// Enumerate every numerically exceptional class of the form
/// `D + sum r_{j,i} C_{j,i}` whose support on each chain is empty or a
/// contiguous window containing the attachment. Output is sorted
/// lexicographically by the concatenated chain vectors, so the bare
/// (-1)-curve class comes first. Requires one attachment per chain.
pub fn enumerate_exceptional_classes(cfg: &CurveConfig) -> Result<Vec<DivisorClass>> {
    let mut per_chain: Vec<Vec<Vec<i64>>> = Vec::with_capacity(cfg.chains().len());
    for (j, spec) in cfg.chains().iter().enumerate() {
        let [k0] = spec.attach[..] else {
            return Err(Error::RelaxedConfigRejected(format!(
                "chain {} has {} attachments",
                j + 1,
                spec.attach.len()
            )));
        };
        let mut options = vec![vec![0i64; spec.length]];
        for start in 0..=k0 {
            for end in k0..spec.length {
                for v in tight_vectors(end - start + 1, k0 - start) {
                    let mut padded = vec![0i64; spec.length];
                    padded[start..=end].copy_from_slice(&v);
                    options.push(padded);
                }
            }
        }
        per_chain.push(options);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_chain.len()];
    loop {
        let chains: Vec<Vec<i64>> =
            choice.iter().enumerate().map(|(j, &c)| per_chain[j][c].clone()).collect();
        out.push(DivisorClass { d: 1, chains });
        // advance the mixed-radix counter
        let mut j = 0;
        loop {
            if j == per_chain.len() {
                out.sort_by(|a, b| a.chains.cmp(&b.chains));
                debug_assert!(out
                    .iter()
                    .all(|e| crate::lattice::pair(cfg, e, e) == Ok(-1)));
                return Ok(out);
            }
            choice[j] += 1;
            if choice[j] < per_chain[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}
