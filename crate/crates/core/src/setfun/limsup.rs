//! The limit set `⋃_i ⋂_{k≥i} A_k` of a sequence (points lying in all but
//! finitely many terms), read off a finite horizon.
//!
//! Only the last `horizon` terms are inspected. A point counts as settled when
//! its membership bits over that window repeat with some period
//! `c ≤ max(1, horizon/2)`; a settled point belongs to the limit set iff it
//! lies in every term of the window. Unsettled points make the answer
//! undecidable at that horizon.

use num_integer::Integer;

use super::{Mask, SetFunError};
use crate::sets::{DensitySet, PeriodicSet};

/// Largest number of points scanned for a periodic-tier sequence.
pub const SCAN_LIMIT: u64 = 1 << 20;

fn settled(bits: &[bool]) -> bool {
    let h = bits.len();
    let max_c = (h / 2).max(1);
    (1..=max_c).any(|c| (0..h.saturating_sub(c)).all(|i| bits[i] == bits[i + c]))
}

fn window<T>(seq: &[T], horizon: usize) -> Result<&[T], SetFunError> {
    if horizon == 0 || horizon > seq.len() {
        return Err(SetFunError::BadHorizon(horizon));
    }
    Ok(&seq[seq.len() - horizon..])
}

/// Limit set of a sequence of subsets of a finite ground set.
pub fn limsup_limit_set(seq: &[Mask], horizon: usize) -> Result<Mask, SetFunError> {
    let tail = window(seq, horizon)?;
    let mut out = 0;
    for x in 0..64 {
        let bits: Vec<bool> = tail.iter().map(|m| m >> x & 1 == 1).collect();
        if !settled(&bits) {
            return Err(SetFunError::HorizonExceeded(x));
        }
        if bits.iter().all(|&b| b) {
            out |= 1 << x;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimsupLimit {
    pub set: DensitySet,
    /// True when every point was settled and the answer needs no extrapolation.
    pub exact: bool,
    /// Points below this bound were all settled.
    pub settled_below: u64,
}

/// Limit set of a sequence of periodic-tier sets.
///
/// Past `T + P` (largest threshold plus the lcm of the periods in the window)
/// every term repeats, so settling all points below that bound decides the
/// whole limit exactly. Otherwise the settled prefix is fitted with the
/// shortest eventually periodic pattern that repeats at least three times in
/// it, and that pattern is extended.
pub fn limsup_limit_periodic(seq: &[DensitySet], horizon: usize) -> Result<LimsupLimit, SetFunError> {
    let tail: Vec<PeriodicSet> = window(seq, horizon)?
        .iter()
        .map(|s| {
            s.normalize()
                .ok()
                .and_then(|n| n.as_periodic())
                .ok_or(SetFunError::NotPeriodic)
        })
        .collect::<Result<_, _>>()?;
    let threshold = tail.iter().map(PeriodicSet::threshold).max().unwrap_or(0);
    let period = tail.iter().fold(1u64, |acc, p| acc.lcm(&p.period()));
    let bound = threshold.checked_add(period).filter(|&b| b <= SCAN_LIMIT);
    let scan = bound.unwrap_or(SCAN_LIMIT);

    let mut inside = Vec::with_capacity(scan as usize);
    let mut first_unsettled = None;
    for n in 0..scan {
        let bits: Vec<bool> = tail.iter().map(|p| p.member(n)).collect();
        if !settled(&bits) {
            first_unsettled = Some(n);
            break;
        }
        inside.push(bits.iter().all(|&b| b));
    }

    if let (Some(bound), None) = (bound, first_unsettled) {
        let t = threshold as usize;
        let residues: Vec<bool> = (0..period)
            .map(|r| {
                let n = threshold + (r + period - threshold % period) % period;
                inside[n as usize]
            })
            .collect();
        let p = PeriodicSet::from_bits(threshold, residues, inside[..t].to_vec());
        return Ok(LimsupLimit {
            set: DensitySet::from_periodic(p),
            exact: true,
            settled_below: bound,
        });
    }

    let w = inside.len() as u64;
    match fit_eventually_periodic(&inside) {
        Some(p) => Ok(LimsupLimit {
            set: DensitySet::from_periodic(p),
            exact: false,
            settled_below: w,
        }),
        None => Err(SetFunError::HorizonExceeded(first_unsettled.unwrap_or(w))),
    }
}

/// The dual limit `⋂_i ⋃_{k≥i} A_k` (points lying in infinitely many terms),
/// via complements.
pub fn mirrored_limit_periodic(seq: &[DensitySet], horizon: usize) -> Result<LimsupLimit, SetFunError> {
    let complements: Vec<DensitySet> = seq.iter().map(DensitySet::complement).collect();
    let mut out = limsup_limit_periodic(&complements, horizon)?;
    out.set = out.set.complement();
    Ok(out)
}

/// Smallest period, then smallest threshold, such that the pattern repeats at
/// least three full periods inside `bits`.
fn fit_eventually_periodic(bits: &[bool]) -> Option<PeriodicSet> {
    let w = bits.len();
    for p in 1..=w / 3 {
        // Last index where the p-shift disagrees; the threshold starts after it.
        let t = (0..w - p).rev().find(|&i| bits[i] != bits[i + p]).map_or(0, |i| i + 1);
        if t + 3 * p <= w {
            let residues: Vec<bool> = (0..p).map(|r| bits[t + (r + p - t % p) % p]).collect();
            return Some(PeriodicSet::from_bits(t as u64, residues, bits[..t].to_vec()));
        }
    }
    None
}
