//! Prefix densities `ν_n`, upper/lower asymptotic densities with a
//! certification level, and convergence moduli.

use std::fmt;
use std::io::{self, Write};

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{format_float, format_rational, int, ratio, Rational};
use crate::sets::{BoolOp, DensitySet, PeriodicSet};

pub const DEFAULT_WINDOW: u64 = 1_000_000;

/// Number of points in a sampled trace.
const SAMPLE_POINTS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("ν_n is undefined for n = 0")]
    ZeroPrefix,
    #[error("set is not in the periodic tier; no exact density")]
    NotPeriodicTier,
    #[error("no convergence modulus is available for this set")]
    ModulusUnavailable,
    #[error("modulus tolerance must be positive")]
    NonPositiveDelta,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DensityEstimate {
    Exact(Rational),
    /// The value lies in `[lo, hi]` provided the extremes of `ν_n` over the
    /// last two oscillation cycles below `window` have settled.
    Bounded {
        lo: Rational,
        hi: Rational,
        window: u64,
    },
    /// No certificate; raw `(n, ν_n)` samples.
    Sampled(Vec<(u64, Rational)>),
}

impl DensityEstimate {
    pub fn exact(&self) -> Option<Rational> {
        match self {
            DensityEstimate::Exact(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DensityEstimate::Exact(_))
    }

    pub fn level(&self) -> &'static str {
        match self {
            DensityEstimate::Exact(_) => "exact",
            DensityEstimate::Bounded { .. } => "bounded",
            DensityEstimate::Sampled(_) => "sampled",
        }
    }

    /// Same rendering with decimal values instead of fractions.
    pub fn display_float(&self) -> String {
        match self {
            DensityEstimate::Exact(v) => format!("{} (exact)", format_float(v)),
            DensityEstimate::Bounded { lo, hi, window } => format!(
                "[{}, {}] (bounded, window {window})",
                format_float(lo),
                format_float(hi)
            ),
            DensityEstimate::Sampled(values) => match values.last() {
                Some((n, v)) => format!("~{} at n={n} (sampled)", format_float(v)),
                None => "unknown (sampled)".to_string(),
            },
        }
    }
}

impl fmt::Display for DensityEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityEstimate::Exact(v) => write!(f, "{} (exact)", format_rational(v)),
            DensityEstimate::Bounded { lo, hi, window } => write!(
                f,
                "[{}, {}] (bounded, window {window})",
                format_rational(lo),
                format_rational(hi)
            ),
            DensityEstimate::Sampled(values) => match values.last() {
                Some((n, v)) => write!(f, "~{} at n={n} (sampled)", format_rational(v)),
                None => write!(f, "unknown (sampled)"),
            },
        }
    }
}

/// `ν_n(S) = |S ∩ {0, …, n−1}| / n`.
pub fn nu_n(s: &DensitySet, n: u64) -> Result<Rational, DensityError> {
    if n == 0 {
        return Err(DensityError::ZeroPrefix);
    }
    Ok(ratio(s.prefix_count(n), n))
}

/// `lim ν_n(S)` for sets that agree with a periodic set up to finitely many points.
pub fn exact_density(s: &DensitySet) -> Result<Rational, DensityError> {
    s.tail_form().map(|p| p.density()).ok_or(DensityError::NotPeriodicTier)
}

/// Eventual shape of a set built from blocks of a single base together with
/// periodic-tier sets. Beyond `settled_from`, a point `n` in the band
/// `[ρ^e, ρ^{e+1})` is a member iff `n` lies in the purely periodic set
/// `parts[e % 2]`.
#[derive(Debug, Clone, PartialEq)]
struct BlockTail {
    base: Option<u64>,
    parts: [PeriodicSet; 2],
    settled_from: u64,
}

impl BlockTail {
    /// Constant membership per band parity, if the parts are ∅ or ℕ.
    fn pattern(&self) -> Option<[bool; 2]> {
        let flag = |p: &PeriodicSet| match p.residue_count() {
            0 => Some(false),
            r if r == p.period() => Some(true),
            _ => None,
        };
        Some([flag(&self.parts[0])?, flag(&self.parts[1])?])
    }

    /// With band densities `α_0, α_1`, the prefix ratio at `ρ^m` tends to
    /// `(α_1 ρ + α_0)/(ρ + 1)` for even `m` and `(α_0 ρ + α_1)/(ρ + 1)` for
    /// odd `m`; inside a band it moves monotonically up to `o(1)`, so these
    /// two values are the upper and lower densities.
    fn densities(&self) -> (Rational, Rational) {
        let (a0, a1) = (self.parts[0].density(), self.parts[1].density());
        let Some(rho) = self.base else {
            return (a0, a0);
        };
        let rho = Rational::from_integer(i128::from(rho));
        let even = (a1 * rho + a0) / (rho + int(1));
        let odd = (a0 * rho + a1) / (rho + int(1));
        (even.max(odd), even.min(odd))
    }
}

fn pure_tail(p: &PeriodicSet) -> PeriodicSet {
    PeriodicSet::new(0, p.period(), &p.residues(), Vec::new()).expect("residues below period")
}

fn block_tail(s: &DensitySet) -> Option<BlockTail> {
    match s {
        DensitySet::Block(b) => {
            let mut parts = [PeriodicSet::empty(), PeriodicSet::empty()];
            parts[usize::from(b.phase())] = PeriodicSet::naturals();
            Some(BlockTail {
                base: Some(b.base()),
                parts,
                settled_from: 1,
            })
        }
        DensitySet::Spliced(sp) => {
            let tail = block_tail(sp.tail())?;
            let last_cut = sp.cuts().last().copied().unwrap_or(0);
            Some(BlockTail {
                settled_from: tail.settled_from.max(last_cut + 1),
                ..tail
            })
        }
        DensitySet::Expr(e) => {
            let mut kids: Vec<BlockTail> = e.children().iter().map(block_tail).collect::<Option<_>>()?;
            if e.op() == BoolOp::Complement {
                let k = kids.pop().expect("one child");
                return Some(BlockTail {
                    parts: [k.parts[0].complement(), k.parts[1].complement()],
                    ..k
                });
            }
            let (y, x) = (kids.pop().expect("two children"), kids.pop().expect("two children"));
            let base = match (x.base, y.base) {
                (Some(a), Some(b)) if a != b => return None,
                (a, b) => a.or(b),
            };
            let op = e.op();
            let part = |i: usize| pure_tail(&x.parts[i].combine(&y.parts[i], |u, v| op.eval(u, v)));
            Some(BlockTail {
                base,
                parts: [part(0), part(1)],
                settled_from: x.settled_from.max(y.settled_from),
            })
        }
        DensitySet::Oracle(_) => None,
        other => {
            let p = other.as_periodic()?;
            let tail = pure_tail(&p);
            Some(BlockTail {
                base: None,
                parts: [tail.clone(), tail],
                settled_from: p.threshold().max(1),
            })
        }
    }
}

#[derive(Clone, Copy)]
enum Extreme {
    Upper,
    Lower,
}

pub fn upper_density(s: &DensitySet, window: u64) -> DensityEstimate {
    estimate(s, window, Extreme::Upper)
}

pub fn lower_density(s: &DensitySet, window: u64) -> DensityEstimate {
    estimate(s, window, Extreme::Lower)
}

fn estimate(s: &DensitySet, window: u64, which: Extreme) -> DensityEstimate {
    if let Some(p) = s.tail_form() {
        return DensityEstimate::Exact(p.density());
    }
    if let Some(t) = block_tail(s) {
        let (upper, lower) = t.densities();
        return DensityEstimate::Exact(match which {
            Extreme::Upper => upper,
            Extreme::Lower => lower,
        });
    }
    if s.contains_oracle() {
        return DensityEstimate::Sampled(sampled_trace(s, window));
    }
    bounded(s, window, which)
}

/// Geometric sample of `count` points in `[lo, hi]`, both ends included.
pub fn log_spaced(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    let lo = lo.max(1);
    if hi <= lo || count < 2 {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).powf(1.0 / (count - 1) as f64);
    let mut out: Vec<u64> = (0..count)
        .map(|i| ((lo as f64) * ratio.powi(i as i32)).round() as u64)
        .map(|n| n.clamp(lo, hi))
        .collect();
    out[0] = lo;
    out[count - 1] = hi;
    out.dedup();
    out
}

/// `(n, ν_n)` at the requested points.
pub fn prefix_trace(s: &DensitySet, points: &[u64]) -> Vec<(u64, Rational)> {
    points
        .iter()
        .filter(|&&n| n > 0)
        .map(|&n| (n, ratio(s.prefix_count(n), n)))
        .collect()
}

fn sampled_trace(s: &DensitySet, window: u64) -> Vec<(u64, Rational)> {
    let window = window.max(1);
    let bits = s.bits(window);
    let points = log_spaced(1, window, SAMPLE_POINTS);
    let mut out = Vec::with_capacity(points.len());
    let mut count = 0u64;
    let mut next = points.iter().peekable();
    for n in 1..=window {
        count += u64::from(bits[(n - 1) as usize]);
        if next.peek() == Some(&&n) {
            out.push((n, ratio(count, n)));
            next.next();
        }
    }
    out
}

/// Extremes of `ν_n` over the last two oscillation cycles `[W/R², W/R)` and
/// `[W/R, W]`, where `R` is the squared largest block base. The estimate is
/// the spread of the two cycle extremes, widened by `1/(W/R²)`.
fn bounded(s: &DensitySet, window: u64, which: Extreme) -> DensityEstimate {
    let rho = s.block_bases().into_iter().max().unwrap_or(2);
    let cycle = rho.saturating_mul(rho).max(4);
    let c2 = window / cycle;
    let c1 = c2 / cycle;
    if c1 == 0 {
        return DensityEstimate::Bounded {
            lo: Rational::zero(),
            hi: int(1),
            window,
        };
    }
    let bits = s.bits(window);
    let better = |count: u64, n: u64, best: (u64, u64)| -> bool {
        let lhs = u128::from(count) * u128::from(best.1);
        let rhs = u128::from(best.0) * u128::from(n);
        match which {
            Extreme::Upper => lhs > rhs,
            Extreme::Lower => lhs < rhs,
        }
    };
    let mut count = 0u64;
    let mut first: Option<(u64, u64)> = None;
    let mut second: Option<(u64, u64)> = None;
    for n in 1..=window {
        count += u64::from(bits[(n - 1) as usize]);
        if n < c1 {
            continue;
        }
        let slot = if n < c2 { &mut first } else { &mut second };
        match slot {
            Some(best) if !better(count, n, *best) => {}
            _ => *slot = Some((count, n)),
        }
    }
    let m1 = first.map_or_else(Rational::zero, |(c, n)| ratio(c, n));
    let m2 = second.map_or_else(Rational::zero, |(c, n)| ratio(c, n));
    let slack = ratio(1, c1);
    let lo = (m1.min(m2) - slack).max(Rational::zero());
    let hi = (m1.max(m2) + slack).min(int(1));
    DensityEstimate::Bounded { lo, hi, window }
}

/// A point past which `ν_n` stays strictly below `ν⁺ + delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct Modulus {
    pub target: DensitySet,
    pub delta: Rational,
    pub n0: u64,
    pub upper: Rational,
    /// Whether `n0` is the least valid value.
    pub minimal: bool,
}

impl Modulus {
    pub fn holds_at(&self, n: u64) -> bool {
        n > 0 && ratio(self.target.prefix_count(n), n) < self.upper + self.delta
    }
}

/// Least `n0 >= 1` with `ν_n(s) < ν⁺(s) + delta` for all `n >= n0`.
///
/// Periodic-tier sets (after normalization) get the minimal value by a linear
/// scan down from an overshoot bound. Block sets and their complements get a
/// valid value from the boundary structure.
pub fn modulus_upper(s: &DensitySet, delta: Rational) -> Result<Modulus, DensityError> {
    if delta <= Rational::zero() {
        return Err(DensityError::NonPositiveDelta);
    }
    if let Some(p) = s.normalize().ok().and_then(|n| n.as_periodic()) {
        let (n0, upper) = periodic_modulus(&p, delta);
        return Ok(Modulus {
            target: s.clone(),
            delta,
            n0,
            upper,
            minimal: true,
        });
    }
    // The boundary argument needs membership constant on each band.
    if let Some(t) = block_tail(s).filter(|t| t.base.is_some() && t.pattern().is_some()) {
        let upper = t.densities().0;
        let n0 = block_modulus(s, &t, upper + delta);
        return Ok(Modulus {
            target: s.clone(),
            delta,
            n0,
            upper,
            minimal: true,
        });
    }
    Err(DensityError::ModulusUnavailable)
}

fn periodic_modulus(p: &PeriodicSet, delta: Rational) -> (u64, Rational) {
    let upper = p.density();
    let target = upper + delta;
    let passes = |n: u64| Rational::from_integer(i128::from(p.prefix_count(n))) < target * i128::from(n);
    // For n >= threshold, count(n) − ν·n <= overshoot, so n > overshoot/delta suffices.
    let overshoot = p.overshoot_bound();
    let mut bound = p.threshold().max(1);
    if overshoot > Rational::zero() {
        let q = (overshoot / delta).floor().to_integer() + 1;
        bound = bound.max(u64::try_from(q).unwrap_or(u64::MAX));
    }
    let mut n0 = bound;
    while n0 > 1 && passes(n0 - 1) {
        n0 -= 1;
    }
    (n0, upper)
}

/// Beyond `settled_from`, membership is constant between consecutive powers
/// of the base, so `ν_n` is monotone there and its extremes sit on the powers.
/// On each parity of exponent the boundary values have the form `c + a/ρ^m`
/// and approach their limit monotonically, so two consecutive passing
/// boundaries mean every later point passes. Points below `settled_from` are
/// checked one by one.
fn block_modulus(s: &DensitySet, t: &BlockTail, target: Rational) -> u64 {
    let passes = |n: u64| Rational::from_integer(i128::from(s.prefix_count(n))) < target * i128::from(n);
    let rho = t.base.expect("block tail has a base");
    let start = t.settled_from.max(1);
    let mut n0 = (1..start).rev().find(|&n| !passes(n)).map_or(1, |n| n + 1);
    let mut last_fail: Option<(u64, u64)> = None;
    let mut streak = 0;
    let mut power = 1u64;
    while power <= start {
        power = power.saturating_mul(rho);
    }
    let mut point = start;
    loop {
        let next = if point == start {
            power
        } else {
            point.saturating_mul(rho)
        };
        if passes(point) {
            if point != start {
                streak += 1;
                if streak >= 2 {
                    break;
                }
            }
        } else {
            streak = 0;
            last_fail = Some((point, next));
        }
        if next == u64::MAX {
            break;
        }
        point = next;
    }
    if let Some((fail, next)) = last_fail {
        let (mut lo, mut hi) = (fail + 1, next);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if passes(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        n0 = lo;
    }
    n0
}

/// CSV with columns `n,nu_n,nu_n_float`.
pub fn write_trace_csv<W: Write>(mut w: W, trace: &[(u64, Rational)]) -> io::Result<()> {
    writeln!(w, "n,nu_n,nu_n_float")?;
    for (n, v) in trace {
        writeln!(w, "{n},{},{}", format_rational(v), format_float(v))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(a: u64, m: u64) -> DensitySet {
        DensitySet::residue_class(a, m).unwrap()
    }

    #[test]
    fn nu_n_examples() {
        assert_eq!(nu_n(&DensitySet::evens(), 10).unwrap(), ratio(1, 2));
        assert_eq!(nu_n(&DensitySet::naturals(), 7).unwrap(), int(1));
        assert_eq!(nu_n(&DensitySet::block(2, 0).unwrap(), 8).unwrap(), ratio(5, 8));
        assert_eq!(nu_n(&DensitySet::evens(), 0), Err(DensityError::ZeroPrefix));
    }

    #[test]
    fn exact_density_examples() {
        assert_eq!(exact_density(&ap(0, 3)).unwrap(), ratio(1, 3));
        assert_eq!(exact_density(&DensitySet::finite([1, 5, 9])).unwrap(), int(0));
        assert_eq!(exact_density(&ap(0, 2).symdiff(&ap(0, 4))).unwrap(), ratio(1, 4));
        assert_eq!(
            exact_density(&DensitySet::block(2, 0).unwrap()),
            Err(DensityError::NotPeriodicTier)
        );
    }

    #[test]
    fn upper_lower_examples() {
        let b = DensitySet::block(2, 0).unwrap();
        assert_eq!(upper_density(&b, DEFAULT_WINDOW), DensityEstimate::Exact(ratio(2, 3)));
        assert_eq!(lower_density(&b, DEFAULT_WINDOW), DensityEstimate::Exact(ratio(1, 3)));
        assert_eq!(
            upper_density(&DensitySet::evens(), DEFAULT_WINDOW),
            DensityEstimate::Exact(ratio(1, 2))
        );
        assert_eq!(
            upper_density(&DensitySet::empty(), DEFAULT_WINDOW),
            DensityEstimate::Exact(int(0))
        );
    }

    #[test]
    fn block_with_periodic_is_exact() {
        // block(2,0) ∪ evens: odd members come only from the blocks, so the
        // upper density is 1/2 + (1/2)(2/3) = 5/6 and the lower is 1/2 + 1/6 = 2/3.
        let s = DensitySet::block(2, 0).unwrap().union(&DensitySet::evens());
        assert_eq!(upper_density(&s, 1), DensityEstimate::Exact(ratio(5, 6)));
        assert_eq!(lower_density(&s, 1), DensityEstimate::Exact(ratio(2, 3)));
        // The cycle estimator agrees with the closed form.
        for (which, value) in [(Extreme::Upper, ratio(5, 6)), (Extreme::Lower, ratio(2, 3))] {
            match bounded(&s, 1 << 20, which) {
                DensityEstimate::Bounded { lo, hi, .. } => {
                    assert!(lo <= value && value <= hi, "[{lo}, {hi}]");
                    assert!(hi - lo < ratio(1, 1000));
                }
                other => panic!("expected bounded, got {other:?}"),
            }
        }
        let t = DensitySet::block(3, 1)
            .unwrap()
            .intersect(&DensitySet::residue_class(1, 3).unwrap());
        assert_eq!(upper_density(&t, 1), DensityEstimate::Exact(ratio(1, 4)));
        assert_eq!(lower_density(&t, 1), DensityEstimate::Exact(ratio(1, 12)));
    }

    #[test]
    fn mixed_bases_are_bounded() {
        let s = DensitySet::block(2, 0)
            .unwrap()
            .union(&DensitySet::block(3, 0).unwrap());
        let (up, lo) = (upper_density(&s, 1 << 20), lower_density(&s, 1 << 20));
        match (&up, &lo) {
            (DensityEstimate::Bounded { lo: a, hi: b, .. }, DensityEstimate::Bounded { lo: c, hi: d, .. }) => {
                assert!(a <= b && c <= d);
                assert!(*c <= *b);
                assert!(*a >= ratio(2, 3) - ratio(1, 100));
            }
            other => panic!("expected bounded, got {other:?}"),
        }
        assert!(modulus_upper(&s, ratio(1, 10)).is_err());
    }

    #[test]
    fn oracle_is_sampled() {
        let squares = DensitySet::oracle("squares", |n| {
            let r = (n as f64).sqrt() as u64;
            r * r == n || (r + 1) * (r + 1) == n
        });
        match upper_density(&squares, 10_000) {
            DensityEstimate::Sampled(values) => {
                assert_eq!(values.last().unwrap().0, 10_000);
                assert_eq!(values.last().unwrap().1, ratio(100, 10_000));
            }
            other => panic!("expected sampled, got {other:?}"),
        }
    }

    #[test]
    fn modulus_examples() {
        let m = modulus_upper(&DensitySet::evens(), ratio(1, 10)).unwrap();
        assert!(m.n0 <= 10);
        assert_eq!(m.n0, 6);
        for n in m.n0..=100 {
            assert!(nu_n(&DensitySet::evens(), n).unwrap() < ratio(1, 2) + ratio(1, 10));
        }
        assert!(nu_n(&DensitySet::evens(), 5).unwrap() >= ratio(3, 5));

        // ν_n = 10/n < 1/100 exactly when n > 1000.
        let m = modulus_upper(&DensitySet::finite(0..10), ratio(1, 100)).unwrap();
        assert_eq!(m.n0, 1001);

        let m = modulus_upper(&DensitySet::naturals(), ratio(1, 1000)).unwrap();
        assert_eq!(m.n0, 1);
    }

    #[test]
    fn modulus_errors() {
        let o = DensitySet::oracle("x", |n| n % 3 == 0);
        assert_eq!(modulus_upper(&o, ratio(1, 2)), Err(DensityError::ModulusUnavailable));
        assert_eq!(
            modulus_upper(&DensitySet::evens(), int(0)),
            Err(DensityError::NonPositiveDelta)
        );
    }

    #[test]
    fn block_modulus_is_minimal_by_scan() {
        for base in [2, 3] {
            for phase in [0, 1] {
                let b = DensitySet::block(base, phase).unwrap();
                for set in [
                    b.clone(),
                    b.complement(),
                    b.union(&DensitySet::finite([3, 40, 41, 42])),
                    b.difference(&DensitySet::finite([1, 2, 3, 9, 10])),
                    b.union(
                        &DensitySet::block(base, 1 - phase)
                            .unwrap()
                            .intersect(&DensitySet::finite([5, 6, 7])),
                    ),
                ] {
                    let m = modulus_upper(&set, ratio(1, 50)).unwrap();
                    let limit = 200 * m.n0.max(50);
                    let target = m.upper + m.delta;
                    let mut count = 0u64;
                    for (i, bit) in set.bits(limit).into_iter().enumerate() {
                        count += u64::from(bit);
                        let n = i as u64 + 1;
                        let ok = ratio(count, n) < target;
                        assert!(ok || n < m.n0, "{set} n={n}");
                        if n + 1 == m.n0 {
                            assert!(!ok, "{set} not minimal");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn perturbed_block_densities() {
        let b = DensitySet::block(2, 0).unwrap();
        let c = DensitySet::block(2, 1).unwrap();
        let s = b.union(&DensitySet::finite([0, 2]));
        assert_eq!(upper_density(&s, 100), DensityEstimate::Exact(ratio(2, 3)));
        assert_eq!(lower_density(&s, 100), DensityEstimate::Exact(ratio(1, 3)));
        assert_eq!(upper_density(&b.union(&c), 100), DensityEstimate::Exact(int(1)));
        assert_eq!(upper_density(&b.intersect(&c), 100), DensityEstimate::Exact(int(0)));
        let other_base = b.union(&DensitySet::block(3, 0).unwrap());
        assert!(!upper_density(&other_base, 1 << 12).is_exact());
    }

    #[test]
    fn log_spacing() {
        let pts = log_spaced(10, 1000, 3);
        assert_eq!(pts, vec![10, 100, 1000]);
        assert_eq!(log_spaced(5, 5, 10), vec![5]);
    }

    #[test]
    fn csv_trace() {
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &[(2, ratio(1, 2)), (3, ratio(2, 3))]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,nu_n,nu_n_float\n2,1/2,0.500000\n3,2/3,0.666667\n");
    }
}
