use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SetError;
use crate::rational::{ratio, Rational};

/// An eventually periodic subset of ℕ.
///
/// Membership of `n < threshold` is read from `prefix`; for `n >= threshold`
/// it is `residues[n % period]`. Residues are aligned to 0, not to the
/// threshold.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PeriodicWire", into = "PeriodicWire")]
pub struct PeriodicSet {
    threshold: u64,
    period: u64,
    residues: Vec<bool>,
    prefix: Vec<bool>,
    prefix_cum: Vec<u64>,
    residue_cum: Vec<u64>,
}

/// Canonical serialized form: `{threshold, period, residues, prefix_bits}`
/// with `prefix_bits` a string of `0`/`1` of length `threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicWire {
    pub threshold: u64,
    pub period: u64,
    pub residues: Vec<u64>,
    pub prefix_bits: String,
}

fn cumulative(bits: &[bool]) -> Vec<u64> {
    let mut out = Vec::with_capacity(bits.len() + 1);
    let mut acc = 0u64;
    out.push(0);
    for &b in bits {
        acc += u64::from(b);
        out.push(acc);
    }
    out
}

impl PeriodicSet {
    pub fn new(threshold: u64, period: u64, residues: &[u64], prefix_bits: Vec<bool>) -> Result<Self, SetError> {
        if period == 0 {
            return Err(SetError::InvalidPeriodic("period must be positive".into()));
        }
        if prefix_bits.len() as u64 != threshold {
            return Err(SetError::InvalidPeriodic(format!(
                "expected {threshold} prefix bits, got {}",
                prefix_bits.len()
            )));
        }
        let mut bits = vec![false; period as usize];
        for &r in residues {
            if r >= period {
                return Err(SetError::InvalidPeriodic(format!(
                    "residue {r} is not below period {period}"
                )));
            }
            bits[r as usize] = true;
        }
        Ok(Self::from_bits(threshold, bits, prefix_bits))
    }

    pub(crate) fn from_bits(threshold: u64, residues: Vec<bool>, prefix: Vec<bool>) -> Self {
        debug_assert_eq!(prefix.len() as u64, threshold);
        debug_assert!(!residues.is_empty());
        Self {
            threshold,
            period: residues.len() as u64,
            prefix_cum: cumulative(&prefix),
            residue_cum: cumulative(&residues),
            residues,
            prefix,
        }
    }

    /// `{n : n ≡ a (mod m)}`.
    pub fn residue_class(a: u64, m: u64) -> Result<Self, SetError> {
        if m == 0 {
            return Err(SetError::InvalidPeriodic("modulus must be positive".into()));
        }
        Self::new(0, m, &[a % m], Vec::new())
    }

    pub fn empty() -> Self {
        Self::from_bits(0, vec![false], Vec::new())
    }

    pub fn naturals() -> Self {
        Self::from_bits(0, vec![true], Vec::new())
    }

    pub fn from_finite(elements: &[u64]) -> Self {
        Self::from_listed(elements, false)
    }

    pub fn from_cofinite(excluded: &[u64]) -> Self {
        Self::from_listed(excluded, true)
    }

    fn from_listed(listed: &[u64], tail: bool) -> Self {
        let threshold = listed.iter().max().map_or(0, |m| m + 1);
        let mut prefix = vec![tail; threshold as usize];
        for &x in listed {
            prefix[x as usize] = !tail;
        }
        Self::from_bits(threshold, vec![tail], prefix)
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> Vec<u64> {
        self.residues
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(r, _)| r as u64)
            .collect()
    }

    pub fn residue_count(&self) -> u64 {
        self.residue_cum[self.period as usize]
    }

    pub fn prefix_bits(&self) -> &[bool] {
        &self.prefix
    }

    pub(crate) fn tail_member(&self, n: u64) -> bool {
        self.residues[(n % self.period) as usize]
    }

    pub fn member(&self, n: u64) -> bool {
        if n < self.threshold {
            self.prefix[n as usize]
        } else {
            self.tail_member(n)
        }
    }

    /// Residue hits in `[0, x)` ignoring the prefix.
    fn tail_count(&self, x: u64) -> u64 {
        (x / self.period) * self.residue_count() + self.residue_cum[(x % self.period) as usize]
    }

    /// `|S ∩ {0, …, n−1}|` in constant time.
    pub fn prefix_count(&self, n: u64) -> u64 {
        if n <= self.threshold {
            self.prefix_cum[n as usize]
        } else {
            self.prefix_cum[self.threshold as usize] + self.tail_count(n) - self.tail_count(self.threshold)
        }
    }

    pub fn density(&self) -> Rational {
        ratio(self.residue_count(), self.period)
    }

    /// The largest value of `count(n) − density·n` over `n ≥ threshold`,
    /// used to bound how far prefix ratios can overshoot the density.
    pub(crate) fn overshoot_bound(&self) -> Rational {
        let r = self.density();
        let t = self.threshold;
        let base = Rational::from_integer(i128::from(self.prefix_count(t)))
            - Rational::from_integer(i128::from(self.tail_count(t)));
        let worst = (0..self.period as usize)
            .map(|j| Rational::from_integer(i128::from(self.residue_cum[j])) - r * j as i128)
            .max()
            .unwrap_or_default();
        base + worst
    }

    pub fn is_empty_set(&self) -> bool {
        self.residue_count() == 0 && self.prefix_cum[self.threshold as usize] == 0
    }

    pub fn is_naturals(&self) -> bool {
        self.residue_count() == self.period && self.prefix_cum[self.threshold as usize] == self.threshold
    }

    /// Pointwise combination over the lcm of periods and the max of thresholds,
    /// returned in canonical form.
    pub fn combine(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let threshold = self.threshold.max(other.threshold);
        let period = self.period.lcm(&other.period);
        let prefix = (0..threshold).map(|n| f(self.member(n), other.member(n))).collect();
        let residues = (0..period)
            .map(|r| f(self.tail_member(r), other.tail_member(r)))
            .collect();
        Self::from_bits(threshold, residues, prefix).canonical()
    }

    pub fn complement(&self) -> Self {
        Self::from_bits(
            self.threshold,
            self.residues.iter().map(|b| !b).collect(),
            self.prefix.iter().map(|b| !b).collect(),
        )
        .canonical()
    }

    /// Minimal eventual period first, then minimal threshold. Both are
    /// invariants of the set, so equal sets have identical canonical forms.
    pub fn canonical(self) -> Self {
        let p = self.period;
        let mut period = p;
        for d in 1..=p {
            if p.is_multiple_of(d) && (0..p as usize).all(|r| self.residues[r] == self.residues[r % d as usize]) {
                period = d;
                break;
            }
        }
        let residues: Vec<bool> = self.residues[..period as usize].to_vec();
        let mut threshold = self.threshold as usize;
        while threshold > 0 && self.prefix[threshold - 1] == residues[(threshold - 1) % period as usize] {
            threshold -= 1;
        }
        if threshold as u64 == self.threshold && period == p {
            return self;
        }
        let mut prefix = self.prefix;
        prefix.truncate(threshold);
        Self::from_bits(threshold as u64, residues, prefix)
    }

    /// Members below the threshold, when every residue is empty.
    pub fn finite_members(&self) -> Vec<u64> {
        (0..self.threshold).filter(|&n| self.prefix[n as usize]).collect()
    }

    pub(crate) fn prefix_non_members(&self) -> Vec<u64> {
        (0..self.threshold).filter(|&n| !self.prefix[n as usize]).collect()
    }
}

impl From<PeriodicSet> for PeriodicWire {
    fn from(s: PeriodicSet) -> Self {
        PeriodicWire {
            threshold: s.threshold,
            period: s.period,
            residues: s.residues(),
            prefix_bits: s.prefix.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        }
    }
}

impl TryFrom<PeriodicWire> for PeriodicSet {
    type Error = SetError;

    fn try_from(w: PeriodicWire) -> Result<Self, SetError> {
        let bits = w
            .prefix_bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(SetError::InvalidPeriodic(format!("bad prefix bit `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        PeriodicSet::new(w.threshold, w.period, &w.residues, bits)
    }
}

impl fmt::Debug for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicSet")
            .field("threshold", &self.threshold)
            .field("period", &self.period)
            .field("residues", &self.residues())
            .field("prefix_members", &self.finite_members())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_minimizes_period_and_threshold() {
        let s = PeriodicSet::new(3, 4, &[0, 2], vec![true, false, true]).unwrap();
        let c = s.canonical();
        assert_eq!(c.period(), 2);
        assert_eq!(c.threshold(), 0);
        assert_eq!(c.residues(), vec![0]);
    }

    #[test]
    fn prefix_count_matches_loop() {
        let s = PeriodicSet::new(5, 6, &[1, 4], vec![true, true, false, false, true]).unwrap();
        for n in 0..100 {
            let brute = (0..n).filter(|&m| s.member(m)).count() as u64;
            assert_eq!(s.prefix_count(n), brute, "n = {n}");
        }
    }

    #[test]
    fn wire_round_trip() {
        let s = PeriodicSet::new(2, 4, &[2], vec![false, true]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"threshold":2,"period":4,"residues":[2],"prefix_bits":"01"}"#);
        let back: PeriodicSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(PeriodicSet::new(0, 0, &[], vec![]).is_err());
        assert!(PeriodicSet::new(0, 3, &[3], vec![]).is_err());
        assert!(PeriodicSet::new(2, 3, &[1], vec![true]).is_err());
    }

    #[test]
    fn overshoot_bounds_excess() {
        let s = PeriodicSet::new(4, 5, &[0, 3], vec![true, true, true, false]).unwrap();
        let c = s.overshoot_bound();
        let r = s.density();
        for n in s.threshold()..500 {
            let excess = Rational::from_integer(s.prefix_count(n) as i128) - r * n as i128;
            assert!(excess <= c, "n = {n}");
        }
    }
}
