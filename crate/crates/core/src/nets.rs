//! Nets indexed by `{(i, j) : 1 ≤ i ≤ j}` under the product order
//! `(i, j) ≤ (k, l) ⟺ i ≤ k ∧ j ≤ l`, and the finite-window checks built on
//! them.
//!
//! Every verdict is relative to a window `J`: a finite trace can show that a
//! net settles inside the window, never that it converges.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::density::{lower_density, upper_density};
use crate::metric::{in_d, leq, Ternary};
use crate::rational::{abs_diff, format_rational, Rational};
use crate::setfun::{limsup_limit_periodic, mirrored_limit_periodic, Side};
use crate::sets::DensitySet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("window must satisfy 1 <= J <= {0}")]
    BadWindow(usize),
    #[error("term {0} is not in the periodic tier")]
    NotExact(usize),
    #[error("term {0} is not contained in term {next} up to a null set", next = .0 + 1)]
    NotIncreasing(usize),
    #[error("term {0} has no asymptotic density")]
    NotInD(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetKind {
    Union,
    Intersection,
}

/// `B_{ij}` for `1 ≤ i ≤ j ≤ J`, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SetNet {
    kind: NetKind,
    rows: Vec<Vec<DensitySet>>,
}

impl SetNet {
    pub fn window(&self) -> usize {
        self.rows.len()
    }

    pub fn kind(&self) -> NetKind {
        self.kind
    }

    /// `B_{ij}`, 1-based with `i ≤ j`.
    pub fn get(&self, i: usize, j: usize) -> &DensitySet {
        &self.rows[i - 1][j - i]
    }
}

fn normalized_terms(seq: &[DensitySet], window: usize) -> Result<Vec<DensitySet>, NetError> {
    if window == 0 || window > seq.len() {
        return Err(NetError::BadWindow(seq.len()));
    }
    seq[..window]
        .iter()
        .enumerate()
        .map(|(k, s)| s.normalize().map_err(|_| NetError::NotExact(k + 1)))
        .collect()
}

pub fn set_net(seq: &[DensitySet], window: usize, kind: NetKind) -> Result<SetNet, NetError> {
    let terms = normalized_terms(seq, window)?;
    let rows = (0..window)
        .map(|i| {
            let mut acc = terms[i].clone();
            let mut row = vec![acc.clone()];
            for term in &terms[i + 1..] {
                acc = match kind {
                    NetKind::Union => acc.union(term),
                    NetKind::Intersection => acc.intersect(term),
                };
                row.push(acc.clone());
            }
            row
        })
        .collect();
    Ok(SetNet { kind, rows })
}

/// `B_{ij} = ⋃_{k=i}^{j} A_k`.
pub fn union_net(seq: &[DensitySet], window: usize) -> Result<SetNet, NetError> {
    set_net(seq, window, NetKind::Union)
}

/// Evidence that the net repeats beyond the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilization {
    /// `A_{k+p} = A_k` for every `k` in the window, so
    /// `B_{i+p, j+p} = B_{ij}` and every value recurs arbitrarily late.
    ShiftPeriodic(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetTrace {
    rows: Vec<Vec<Rational>>,
    stabilization: Option<Stabilization>,
}

impl NetTrace {
    /// Rows `i = 1..=J`, row `i` holding `j = i..=J`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, stabilization: Option<Stabilization>) -> Option<Self> {
        let window = rows.len();
        let shaped = rows.iter().enumerate().all(|(i, r)| r.len() == window - i);
        (window > 0 && shaped).then_some(Self { rows, stabilization })
    }

    pub fn window(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i - 1][j - i]
    }

    pub fn stabilization(&self) -> Option<Stabilization> {
        self.stabilization
    }

    /// `(i, j, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(d, &v)| (i + 1, i + 1 + d, v)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,value\n");
        for (i, j, v) in self.entries() {
            out.push_str(&format!("{i},{j},{}\n", format_rational(&v)));
        }
        out
    }
}

fn shift_period(terms: &[DensitySet]) -> Option<usize> {
    let n = terms.len();
    (1..=n / 2).find(|&p| (0..n - p).all(|k| terms[k] == terms[k + p]))
}

/// Upper or lower density of each `B_{ij}`.
pub fn net_values(seq: &[DensitySet], which: Side, window: usize, kind: NetKind) -> Result<NetTrace, NetError> {
    let terms = normalized_terms(seq, window)?;
    let net = set_net(seq, window, kind)?;
    Ok(trace_of(
        &net,
        which,
        shift_period(&terms).map(Stabilization::ShiftPeriodic),
    ))
}

fn trace_of(net: &SetNet, which: Side, stabilization: Option<Stabilization>) -> NetTrace {
    let rows = net
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    let e = match which {
                        Side::Plus => upper_density(s, 1),
                        Side::Minus => lower_density(s, 1),
                    };
                    e.exact().expect("periodic tier is exact")
                })
                .collect()
        })
        .collect();
    NetTrace { rows, stabilization }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetVerdict {
    /// Every `(i, j) ≥ (i0, j0)` in the window is within `eps` of `L`; the
    /// reported corner has the least `j0`, then the least `i0`. A corner at
    /// `(J, J)` alone proves nothing, so for `J ≥ 2` it must have `j0 < J`.
    HoldsAtWindow {
        i0: usize,
        j0: usize,
        window: usize,
    },
    /// A point `(i, j)` of the last corner is off by at least `eps`, and the
    /// witness makes it recur past any index.
    Fails {
        i: usize,
        j: usize,
        window: usize,
        witness: Stabilization,
    },
    Inconclusive {
        window: usize,
    },
}

impl NetVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, NetVerdict::HoldsAtWindow { .. })
    }
}

impl fmt::Display for NetVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetVerdict::HoldsAtWindow { i0, j0, window } => {
                write!(f, "holds-at-window from ({i0},{j0}) with J={window}")
            }
            NetVerdict::Fails { i, j, window, witness } => {
                let Stabilization::ShiftPeriodic(p) = witness;
                write!(
                    f,
                    "fails at ({i},{j}) with J={window}; sequence repeats with period {p}"
                )
            }
            NetVerdict::Inconclusive { window } => write!(f, "inconclusive with J={window}"),
        }
    }
}

/// Finite-window convergence of a trace towards `limit`.
pub fn net_converged(trace: &NetTrace, limit: Rational, eps: Rational) -> NetVerdict {
    let window = trace.window();
    let close = |i: usize, j: usize| abs_diff(trace.get(i, j), limit) < eps;
    let last_corner = if window == 1 { 1 } else { window - 1 };
    for j0 in 1..=last_corner {
        for i0 in 1..=j0 {
            let all_close = (i0..=window).all(|i| (j0.max(i)..=window).all(|j| close(i, j)));
            if all_close {
                return NetVerdict::HoldsAtWindow { i0, j0, window };
            }
        }
    }
    let start = last_corner;
    let violation = (start..=window)
        .flat_map(|i| (i..=window).map(move |j| (i, j)))
        .find(|&(i, j)| !close(i, j));
    match (trace.stabilization, violation) {
        (Some(witness), Some((i, j))) => NetVerdict::Fails { i, j, window, witness },
        _ => NetVerdict::Inconclusive { window },
    }
}

/// Where the candidate limit set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    /// `B_{1J}`.
    Terminal,
    /// Points in all but finitely many terms.
    EventuallyAlways,
    /// Points in infinitely many terms.
    InfinitelyOften,
}

impl CandidateSource {
    pub fn name(self) -> &'static str {
        match self {
            CandidateSource::Terminal => "terminal",
            CandidateSource::EventuallyAlways => "eventually-always",
            CandidateSource::InfinitelyOften => "infinitely-often",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub set: DensitySet,
    pub source: CandidateSource,
    pub upper: Rational,
    /// `d(B_{JJ}, A)`.
    pub terminal_residual: Rational,
    /// Largest `d(B_{ij}, A)` over `N ≤ i ≤ j ≤ J`.
    pub max_residual: Rational,
}

/// One replay of `ν⁺(B_{ij} △ B_{kl}) < 4·δ` where `δ` is the largest
/// deviation from `L` over `N ≤ i ≤ j ≤ J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyReplay {
    pub start: usize,
    pub max_deviation: Rational,
    pub max_symdiff: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub window: usize,
    pub eps: Rational,
    pub plus: NetVerdict,
    pub minus: NetVerdict,
    pub limit: Option<Rational>,
    pub candidate: Option<Candidate>,
    pub cauchy: Option<CauchyReplay>,
}

impl ConditionReport {
    /// A common limit was found and a member candidate attains it within
    /// `eps` plus the in-window residual.
    pub fn passed(&self) -> bool {
        match (&self.limit, &self.candidate, &self.cauchy) {
            (Some(l), Some(c), Some(r)) => abs_diff(c.upper, *l) <= self.eps + c.max_residual && r.pass,
            _ => false,
        }
    }
}

fn corner(v: &NetVerdict) -> Option<usize> {
    match v {
        NetVerdict::HoldsAtWindow { i0, j0, .. } => Some((*i0).max(*j0)),
        _ => None,
    }
}

/// Looks for a common limit `L` of the upper- and lower-density nets of
/// `B_{ij}`, then for a set `A` with `membership(A)` whose class the net
/// approaches.
pub fn theorem_condition_check(
    seq: &[DensitySet],
    membership: &dyn Fn(&DensitySet) -> bool,
    window: usize,
    eps: Rational,
    kind: NetKind,
) -> Result<ConditionReport, NetError> {
    let terms = normalized_terms(seq, window)?;
    let net = set_net(seq, window, kind)?;
    let witness = shift_period(&terms).map(Stabilization::ShiftPeriodic);
    let plus = trace_of(&net, Side::Plus, witness);
    let minus = trace_of(&net, Side::Minus, witness);
    let horizon = (window / 2).max(1);

    let mut pool: Vec<(DensitySet, CandidateSource)> = vec![(net.get(1, window).clone(), CandidateSource::Terminal)];
    if let Ok(l) = limsup_limit_periodic(&terms, horizon) {
        pool.push((l.set, CandidateSource::EventuallyAlways));
    }
    if let Ok(l) = mirrored_limit_periodic(&terms, horizon) {
        pool.push((l.set, CandidateSource::InfinitelyOften));
    }
    let density = |s: &DensitySet| upper_density(s, 1).exact().expect("periodic tier is exact");

    let mut limits: Vec<Rational> = Vec::new();
    for (s, _) in pool.iter().rev() {
        limits.push(density(s));
    }
    limits.push(plus.get(window, window));
    limits.push(minus.get(window, window));

    let mut found = None;
    for l in limits {
        let (vp, vm) = (net_converged(&plus, l, eps), net_converged(&minus, l, eps));
        if vp.holds() && vm.holds() {
            found = Some((l, vp, vm));
            break;
        }
    }
    let Some((limit, vp, vm)) = found else {
        let l = plus.get(window, window);
        return Ok(ConditionReport {
            window,
            eps,
            plus: net_converged(&plus, l, eps),
            minus: net_converged(&minus, l, eps),
            limit: None,
            candidate: None,
            cauchy: None,
        });
    };

    let start = corner(&vp).max(corner(&vm)).expect("both hold");
    let region: Vec<(usize, usize)> = (start..=window)
        .flat_map(|i| (i..=window).map(move |j| (i, j)))
        .collect();

    let mut candidates: Vec<Candidate> = pool
        .into_iter()
        .filter(|(s, _)| membership(s))
        .map(|(set, source)| {
            let residual = |i: usize, j: usize| density(&net.get(i, j).symdiff(&set));
            Candidate {
                upper: density(&set),
                terminal_residual: residual(window, window),
                max_residual: region
                    .iter()
                    .map(|&(i, j)| residual(i, j))
                    .max()
                    .unwrap_or_else(Rational::zero),
                set,
                source,
            }
        })
        .collect();
    // Prefer a candidate attaining L exactly, then the smallest residual.
    candidates.sort_by(|a, b| {
        (a.upper != limit)
            .cmp(&(b.upper != limit))
            .then(a.max_residual.cmp(&b.max_residual))
    });

    let max_deviation = region
        .iter()
        .flat_map(|&(i, j)| [abs_diff(plus.get(i, j), limit), abs_diff(minus.get(i, j), limit)])
        .max()
        .unwrap_or_else(Rational::zero);
    let mut max_symdiff = Rational::zero();
    for &(i, j) in &region {
        for &(k, l) in &region {
            max_symdiff = max_symdiff.max(density(&net.get(i, j).symdiff(net.get(k, l))));
        }
    }
    let four = Rational::from_integer(4);
    let pass = max_symdiff < four * max_deviation || (max_symdiff.is_zero() && max_deviation.is_zero());

    Ok(ConditionReport {
        window,
        eps,
        plus: vp,
        minus: vm,
        limit: Some(limit),
        candidate: candidates.into_iter().next(),
        cauchy: Some(CauchyReplay {
            start,
            max_deviation,
            max_symdiff,
            pass,
        }),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ap0Report {
    pub condition: ConditionReport,
    pub set: DensitySet,
    pub density: Rational,
    /// `ν⁺(A_i ∖ A)` for `i = 1..=J`.
    pub leftovers: Vec<Rational>,
    /// `|ν(A) − ν(A_J)|`.
    pub density_gap: Rational,
}

impl Ap0Report {
    pub fn passed(&self) -> bool {
        self.leftovers.iter().all(Zero::is_zero) && self.density_gap < self.condition.eps
    }
}

/// For an increasing sequence in `𝒟`, finds `A ∈ 𝒟` with `ν(A_i ∖ A) = 0`
/// and `ν(A)` equal to the limit of `ν(A_i)` within `eps`.
pub fn ap0_check(seq: &[DensitySet], window: usize, eps: Rational) -> Result<Ap0Report, NetError> {
    let terms = normalized_terms(seq, window)?;
    for (k, t) in terms.iter().enumerate() {
        if in_d(t, 1) != Ternary::Yes {
            return Err(NetError::NotInD(k + 1));
        }
    }
    for k in 1..terms.len() {
        if leq(&terms[k - 1], &terms[k], 1) != Ternary::Yes {
            return Err(NetError::NotIncreasing(k));
        }
    }
    let in_family = |s: &DensitySet| s.is_periodic_tier();
    let condition = theorem_condition_check(&terms, &in_family, window, eps, NetKind::Union)?;
    let set = match &condition.candidate {
        Some(c) => c.set.clone(),
        None => terms.iter().fold(DensitySet::empty(), |acc, t| acc.union(t)),
    };
    let density = upper_density(&set, 1).exact().expect("periodic tier is exact");
    let leftovers = terms
        .iter()
        .map(|t| {
            upper_density(&t.difference(&set), 1)
                .exact()
                .expect("periodic tier is exact")
        })
        .collect();
    let last = upper_density(&terms[window - 1], 1)
        .exact()
        .expect("periodic tier is exact");
    Ok(Ap0Report {
        condition,
        density_gap: abs_diff(density, last),
        set,
        density,
        leftovers,
    })
}
