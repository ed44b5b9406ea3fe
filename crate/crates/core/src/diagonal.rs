//! Limits of Cauchy sequences in the upper-density pseudometric.
//!
//! Given `B_1, …, B_K` with gaps `ε_k = ν⁺(B_k △ B_{k+1})`, pick cut points
//! `n_1 < n_2 < …` and splice `B = ⋃_k B_k ∩ (n_{k−1}, n_k]` with `n_0 = −1`.
//! Each `n_k` is the least positive integer with
//!
//! 1. `ν_n(B_j △ B_{k+1}) < ν⁺(B_j △ B_{k+1}) + ε_k` for all `n ≥ n_k`, `j ≤ k`;
//! 2. `n_{k−1} / n_k < ε_k`.
//!
//! Only the first `K` blocks exist here, so the last block continues with
//! `B_K` past `n_{K−1}`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::density::{log_spaced, modulus_upper, nu_n, upper_density};
use crate::rational::{abs_diff, format_rational, ratio, Rational};
use crate::sets::DensitySet;

/// Samples per interval in the sampled replays.
pub const REPLAY_SAMPLES: usize = 16;
/// The last interval `[n_{K−1}, ∞)` is sampled up to this multiple of `n_{K−1}`.
pub const TAIL_SPAN: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("no sets given")]
    Empty,
    #[error("the gap after B_{0} is not exact")]
    NotExact(usize),
    #[error("ε_{0} is zero; consecutive sets must be at positive distance")]
    ZeroEpsilon(usize),
    #[error("no modulus for B_{0} △ B_{1}")]
    ModulusUnavailable(usize, usize),
    #[error("expected {expected} cut indices, got {got}")]
    IndexCount { expected: usize, got: usize },
}

fn gap(a: &DensitySet, b: &DensitySet, window: u64) -> Option<Rational> {
    upper_density(&a.symdiff(b), window).exact()
}

/// `ε_k = ν⁺(B_k △ B_{k+1})` for `k = 1, …, K−1`, all required positive.
pub fn epsilon_seq(sets: &[DensitySet], window: u64) -> Result<Vec<Rational>, DiagonalError> {
    sets.windows(2)
        .enumerate()
        .map(|(i, w)| {
            let e = gap(&w[0], &w[1], window).ok_or(DiagonalError::NotExact(i + 1))?;
            if e.is_zero() {
                Err(DiagonalError::ZeroEpsilon(i + 1))
            } else {
                Ok(e)
            }
        })
        .collect()
}

/// A finite stretch of a Cauchy sequence with exact, positive gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchySeq {
    sets: Vec<DensitySet>,
    epsilons: Vec<Rational>,
    /// Position of each kept set in the original input (0-based).
    source: Vec<usize>,
    window: u64,
}

impl CauchySeq {
    pub fn new(sets: Vec<DensitySet>, window: u64) -> Result<Self, DiagonalError> {
        if sets.is_empty() {
            return Err(DiagonalError::Empty);
        }
        let epsilons = epsilon_seq(&sets, window)?;
        let source = (0..sets.len()).collect();
        Ok(Self {
            sets,
            epsilons,
            source,
            window,
        })
    }

    /// Drops every set at distance zero from the previously kept one.
    pub fn deduplicated(sets: Vec<DensitySet>, window: u64) -> Result<Self, DiagonalError> {
        let mut kept: Vec<DensitySet> = Vec::new();
        let mut source = Vec::new();
        let mut epsilons = Vec::new();
        for (i, s) in sets.into_iter().enumerate() {
            if let Some(last) = kept.last() {
                let e = gap(last, &s, window).ok_or(DiagonalError::NotExact(i))?;
                if e.is_zero() {
                    continue;
                }
                epsilons.push(e);
            }
            kept.push(s);
            source.push(i);
        }
        if kept.is_empty() {
            return Err(DiagonalError::Empty);
        }
        Ok(Self {
            sets: kept,
            epsilons,
            source,
            window,
        })
    }

    pub fn sets(&self) -> &[DensitySet] {
        &self.sets
    }

    /// `ε_1, …, ε_{K−1}`, stored 0-based.
    pub fn epsilons(&self) -> &[Rational] {
        &self.epsilons
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `B_k`, 1-based.
    pub fn set(&self, k: usize) -> &DensitySet {
        &self.sets[k - 1]
    }

    /// `ε_k`, 1-based.
    pub fn epsilon(&self, k: usize) -> Rational {
        self.epsilons[k - 1]
    }
}

/// `n_1, …, n_{K−1}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutIndices {
    pub n: Vec<u64>,
    /// True when every index is the least admissible value.
    pub minimal: bool,
}

impl CutIndices {
    /// `n_k` with the convention `n_0 = −1`.
    pub fn get(&self, k: usize) -> i128 {
        if k == 0 {
            -1
        } else {
            i128::from(self.n[k - 1])
        }
    }
}

fn criterion_one_bound(cs: &CauchySeq, k: usize) -> Result<(u64, bool), DiagonalError> {
    let mut n = 1;
    let mut minimal = true;
    for j in 1..=k {
        let m = modulus_upper(&cs.set(j).symdiff(cs.set(k + 1)), cs.epsilon(k))
            .map_err(|_| DiagonalError::ModulusUnavailable(j, k + 1))?;
        n = n.max(m.n0);
        minimal &= m.minimal;
    }
    Ok((n, minimal))
}

/// Least integer `n` with `prev / n < eps`.
fn criterion_two_bound(prev: u64, eps: Rational) -> u64 {
    let q = (Rational::from_integer(i128::from(prev)) / eps).floor().to_integer() + 1;
    u64::try_from(q).unwrap_or(u64::MAX)
}

/// Both criteria are upward closed in `n_k`, so the least admissible value is
/// the larger of the two separate minima.
pub fn select_indices(cs: &CauchySeq) -> Result<CutIndices, DiagonalError> {
    let mut n: Vec<u64> = Vec::with_capacity(cs.len().saturating_sub(1));
    let mut minimal = true;
    for k in 1..cs.len() {
        let (c1, exact) = criterion_one_bound(cs, k)?;
        minimal &= exact;
        let c2 = match n.last() {
            Some(&prev) => criterion_two_bound(prev, cs.epsilon(k)),
            None => 1,
        };
        n.push(c1.max(c2));
    }
    Ok(CutIndices { n, minimal })
}

/// `⋃_k B_k ∩ (n_{k−1}, n_k]`, with `B_K` continuing past `n_{K−1}`.
pub fn construct_limit(cs: &CauchySeq, idx: &CutIndices) -> Result<DensitySet, DiagonalError> {
    if idx.n.len() + 1 != cs.len() {
        return Err(DiagonalError::IndexCount {
            expected: cs.len() - 1,
            got: idx.n.len(),
        });
    }
    let mut cuts = idx.n.clone();
    cuts.dedup();
    if cuts.len() != idx.n.len() || cuts.windows(2).any(|w| w[0] > w[1]) {
        // Degenerate cut lists still define a set pointwise.
        return Ok(spliced_pointwise(cs, &idx.n));
    }
    Ok(DensitySet::spliced(cuts, cs.sets().to_vec()).expect("strictly increasing cuts"))
}

/// Pointwise splice for non-increasing index lists: block `k` covers
/// `(max_{i<k} n_i, n_k]`, so empty blocks are skipped.
fn spliced_pointwise(cs: &CauchySeq, n: &[u64]) -> DensitySet {
    let mut cuts = Vec::new();
    let mut pieces = Vec::new();
    let mut reach: Option<u64> = None;
    for (k, &nk) in n.iter().enumerate() {
        if reach.is_none_or(|r| nk > r) {
            cuts.push(nk);
            pieces.push(cs.sets()[k].clone());
            reach = Some(nk);
        }
    }
    pieces.push(cs.sets().last().expect("non-empty").clone());
    DensitySet::spliced(cuts, pieces).expect("strictly increasing cuts")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `n_{k−1}/n_k < ε_k`.
    IndexRatio,
    /// Least valid start of `ν_n(B_j △ B_{k+1}) < ν⁺ + ε_k` is at most `n_k`.
    ModulusBound,
    /// `ν_n(B_j △ B_{k+1}) < ν⁺(B_j △ B_{k+1}) + ε_k` at a sampled `n ≥ n_k`.
    SampledModulus,
    /// `|ν_{n_k}(B_j △ B) − ν_{n_k}(B_j △ B_k)| < ε_k`.
    CutAgreement,
    /// `ν_n(B_j △ B) ≤ ν⁺(B_j △ B_{k+1}) + 4ε_k` for sampled `n ∈ [n_k, n_{k+1}]`.
    FourEpsilon,
    /// `ν_{n_k}(B_j △ B_k) ≤ ν_{n_k}(B_j △ B_{k+1}) + ν_{n_k}(B_k △ B_{k+1})`.
    Triangle,
    /// `d(B_j, B) ≤ min_{k ≥ j} ν⁺(B_j △ B_{k+1}) + 4ε_k`.
    LimitDistance,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::IndexRatio => "index-ratio",
            CheckKind::ModulusBound => "modulus-bound",
            CheckKind::SampledModulus => "sampled-modulus",
            CheckKind::CutAgreement => "cut-agreement",
            CheckKind::FourEpsilon => "four-epsilon",
            CheckKind::Triangle => "triangle",
            CheckKind::LimitDistance => "limit-distance",
        }
    }
}

/// One replayed inequality `lhs < rhs` (or `≤`, per kind).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub kind: CheckKind,
    pub k: usize,
    pub j: usize,
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl CheckLine {
    pub fn slack(&self) -> Rational {
        self.rhs - self.lhs
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} k={} j={} n={} lhs={} rhs={} {}",
            self.kind.name(),
            self.k,
            self.j,
            self.n,
            format_rational(&self.lhs),
            format_rational(&self.rhs),
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub lines: Vec<CheckLine>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn min_slack(&self) -> Option<Rational> {
        self.lines.iter().map(CheckLine::slack).min()
    }

    pub fn count(&self, kind: CheckKind) -> usize {
        self.lines.iter().filter(|l| l.kind == kind).count()
    }
}

struct Recorder {
    lines: Vec<CheckLine>,
}

impl Recorder {
    fn strict(&mut self, kind: CheckKind, k: usize, j: usize, n: u64, lhs: Rational, rhs: Rational) {
        self.lines.push(CheckLine {
            kind,
            k,
            j,
            n,
            lhs,
            rhs,
            pass: lhs < rhs,
        });
    }

    fn weak(&mut self, kind: CheckKind, k: usize, j: usize, n: u64, lhs: Rational, rhs: Rational) {
        self.lines.push(CheckLine {
            kind,
            k,
            j,
            n,
            lhs,
            rhs,
            pass: lhs <= rhs,
        });
    }
}

fn nu(s: &DensitySet, n: u64) -> Rational {
    nu_n(s, n).expect("positive prefix")
}

/// Replays both selection criteria and the convergence estimates for a
/// spliced limit `b`. Failures are reported, never raised.
pub fn verify_convergence(
    cs: &CauchySeq,
    idx: &CutIndices,
    b: &DensitySet,
) -> Result<ConvergenceReport, DiagonalError> {
    let big_k = cs.len();
    if idx.n.len() + 1 != big_k {
        return Err(DiagonalError::IndexCount {
            expected: big_k - 1,
            got: idx.n.len(),
        });
    }
    let window = cs.window();
    let four = Rational::from_integer(4);
    let mut rec = Recorder { lines: Vec::new() };
    let nk = |k: usize| idx.n[k - 1];
    let upper_gap = |j: usize, k: usize| gap(cs.set(j), cs.set(k), window).ok_or(DiagonalError::NotExact(j));

    for k in 1..big_k {
        let eps = cs.epsilon(k);
        let n = nk(k);
        if k >= 2 {
            let prev = nk(k - 1);
            rec.strict(CheckKind::IndexRatio, k, k - 1, n, ratio(prev, n.max(1)), eps);
        }
        let span_end = if k + 1 < big_k {
            nk(k + 1)
        } else {
            n.saturating_mul(TAIL_SPAN)
        };
        let samples = log_spaced(n.max(1), span_end.max(n.max(1)), REPLAY_SAMPLES);
        for j in 1..=k {
            let sd_next = cs.set(j).symdiff(cs.set(k + 1));
            let upper = upper_gap(j, k + 1)?;
            let modulus = modulus_upper(&sd_next, eps).map_err(|_| DiagonalError::ModulusUnavailable(j, k + 1))?;
            rec.weak(
                CheckKind::ModulusBound,
                k,
                j,
                n,
                Rational::from_integer(i128::from(modulus.n0)),
                Rational::from_integer(i128::from(n)),
            );
            let sd_limit = cs.set(j).symdiff(b);
            for &m in &samples {
                rec.strict(CheckKind::SampledModulus, k, j, m, nu(&sd_next, m), upper + eps);
                rec.weak(CheckKind::FourEpsilon, k, j, m, nu(&sd_limit, m), upper + four * eps);
            }
            if n >= 1 {
                let sd_here = cs.set(j).symdiff(cs.set(k));
                let here = nu(&sd_here, n);
                rec.strict(CheckKind::CutAgreement, k, j, n, abs_diff(nu(&sd_limit, n), here), eps);
                let step = nu(&cs.set(k).symdiff(cs.set(k + 1)), n);
                rec.weak(CheckKind::Triangle, k, j, n, here, nu(&sd_next, n) + step);
            }
        }
    }

    for j in 1..big_k {
        let d = gap(cs.set(j), b, window).ok_or(DiagonalError::NotExact(j))?;
        let mut bound = Rational::one() + four;
        for k in j..big_k {
            bound = bound.min(upper_gap(j, k + 1)? + four * cs.epsilon(k));
        }
        rec.weak(CheckKind::LimitDistance, big_k - 1, j, window, d, bound);
    }

    Ok(ConvergenceReport { lines: rec.lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DEFAULT_WINDOW as W;
    use crate::rational::{int, pow2_inv};

    fn shrinking(k_max: u32) -> Vec<DensitySet> {
        (1..=k_max)
            .map(|k| DensitySet::evens().union(&DensitySet::residue_class(1, 1 << k).unwrap()))
            .collect()
    }

    #[test]
    fn epsilons_of_shrinking_family() {
        let eps = epsilon_seq(&shrinking(4), W).unwrap();
        assert_eq!(eps, vec![pow2_inv(2), pow2_inv(3), pow2_inv(4)]);
    }

    #[test]
    fn epsilons_alternating_and_constant() {
        let alt = vec![DensitySet::evens(), DensitySet::odds(), DensitySet::evens()];
        assert_eq!(epsilon_seq(&alt, W).unwrap(), vec![int(1), int(1)]);
        let constant = vec![DensitySet::evens(), DensitySet::evens().union(&DensitySet::finite([3]))];
        assert_eq!(epsilon_seq(&constant, W), Err(DiagonalError::ZeroEpsilon(1)));
    }

    #[test]
    fn dedup_records_sources() {
        let sets = vec![
            DensitySet::evens(),
            DensitySet::evens().union(&DensitySet::finite([3])),
            DensitySet::odds(),
            DensitySet::odds(),
        ];
        let cs = CauchySeq::deduplicated(sets, W).unwrap();
        assert_eq!(cs.source(), &[0, 2]);
        assert_eq!(cs.epsilons(), &[int(1)]);
    }

    #[test]
    fn shrinking_family_indices() {
        let cs = CauchySeq::new(shrinking(6), W).unwrap();
        let idx = select_indices(&cs).unwrap();
        assert!(idx.minimal);
        for k in 2..cs.len() {
            let (prev, cur) = (idx.n[k - 2], idx.n[k - 1]);
            assert!(ratio(prev, cur) < cs.epsilon(k));
            // Criterion (2) alone forces n_k > n_{k−1}·2^{k+1}.
            assert!(cur > prev << (k + 1));
        }
        let b = construct_limit(&cs, &idx).unwrap();
        let report = verify_convergence(&cs, &idx, &b).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.min_slack().unwrap() >= int(0));
        for j in 1..cs.len() {
            let d = gap(cs.set(j), &b, W).unwrap();
            assert!(d <= pow2_inv(j as u32));
        }
    }

    #[test]
    fn indices_are_least_admissible() {
        let cs = CauchySeq::new(shrinking(5), W).unwrap();
        let idx = select_indices(&cs).unwrap();
        for k in 1..cs.len() {
            let mut lowered = idx.clone();
            lowered.n[k - 1] -= 1;
            if lowered.n[k - 1] == 0 {
                continue;
            }
            let b = construct_limit(&cs, &lowered).unwrap();
            let report = verify_convergence(&cs, &lowered, &b).unwrap();
            let broken = report
                .failures()
                .any(|l| matches!(l.kind, CheckKind::IndexRatio | CheckKind::ModulusBound) && l.k == k);
            assert!(broken, "n_{k} could be lowered");
        }
    }

    #[test]
    fn alternating_indices_increase() {
        let sets: Vec<DensitySet> = (0..5)
            .map(|i| {
                if i % 2 == 0 {
                    DensitySet::evens()
                } else {
                    DensitySet::odds()
                }
            })
            .collect();
        let cs = CauchySeq::new(sets, W).unwrap();
        let idx = select_indices(&cs).unwrap();
        assert!(idx.n.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_set() {
        let cs = CauchySeq::new(vec![DensitySet::evens()], W).unwrap();
        let idx = select_indices(&cs).unwrap();
        assert!(idx.n.is_empty());
        assert_eq!(construct_limit(&cs, &idx).unwrap(), DensitySet::evens());
    }

    #[test]
    fn two_sets_split_at_cut() {
        let a = DensitySet::residue_class(0, 3).unwrap();
        let b = DensitySet::residue_class(1, 3).unwrap();
        let cs = CauchySeq::new(vec![a.clone(), b.clone()], W).unwrap();
        let idx = CutIndices {
            n: vec![10],
            minimal: false,
        };
        let limit = construct_limit(&cs, &idx).unwrap();
        for m in 0..100 {
            let expected = if m <= 10 { a.member(m) } else { b.member(m) };
            assert_eq!(limit.member(m), expected, "m={m}");
        }
    }

    #[test]
    fn first_cut_agreement_is_trivial() {
        let cs = CauchySeq::new(shrinking(3), W).unwrap();
        let idx = select_indices(&cs).unwrap();
        let b = construct_limit(&cs, &idx).unwrap();
        let report = verify_convergence(&cs, &idx, &b).unwrap();
        let line = report
            .lines
            .iter()
            .find(|l| l.kind == CheckKind::CutAgreement && l.k == 1 && l.j == 1)
            .unwrap();
        assert_eq!(line.lhs, int(0));
    }

    #[test]
    fn corrupted_indices_fail() {
        let cs = CauchySeq::new(shrinking(5), W).unwrap();
        let mut idx = select_indices(&cs).unwrap();
        idx.n[2] = idx.n[1] + 1;
        let b = construct_limit(&cs, &idx).unwrap();
        let report = verify_convergence(&cs, &idx, &b).unwrap();
        assert!(!report.passed());
        assert!(report.failures().any(|l| l.kind == CheckKind::IndexRatio));
    }
}
