//! Set functions on a finite field of sets.
//!
//! A [`SetFunctionTable`] holds a field `𝓕 ⊆ 𝒫(X)` over a ground set
//! `X = {0, …, |X|−1}` (subsets are bitmasks) together with an upper set
//! function `μ⁺` and optionally a lower one `μ⁻`. Everything here is exact and
//! exhaustive, so the table size is capped.
//!
//! Indicator premises translate to set relations:
//! `I_A ≤ I_B + I_C` is `A ⊆ B ∪ C`, and `I_A ≥ I_B + I_C` is
//! `B ∩ C = ∅ ∧ B ∪ C ⊆ A`.

mod limsup;
mod text;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::density::{lower_density, upper_density};
use crate::rational::Rational;
use crate::sets::DensitySet;

pub use limsup::{limsup_limit_periodic, limsup_limit_set, mirrored_limit_periodic, LimsupLimit};
pub use text::{read_table, write_table};

pub type Mask = u64;

/// Largest ground set for exhaustive operations (so `|𝓕| ≤ 2¹²`).
pub const MAX_EXHAUSTIVE_GROUND: u32 = 12;
/// Largest field for the cubic triangle-inequality sweep.
pub const MAX_TRIANGLE_FIELD: usize = 256;
pub const MAX_GROUND: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetFunError {
    #[error("ground set of size {0} exceeds the limit of {1}")]
    TooLarge(u64, u64),
    #[error("mask {0:#b} has bits outside the ground set")]
    OutsideGround(Mask),
    #[error("mask {0:#b} appears twice")]
    Duplicate(Mask),
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("value for {0:#b} is outside [0, 1]")]
    OutOfRange(Mask),
    #[error("set functions must vanish on ∅ and equal 1 on X")]
    Normalization,
    #[error("{0:#b} is not a member of the field")]
    NotInField(Mask),
    #[error("μ⁻ is required for this predicate")]
    MissingLower,
    #[error("{0} values supplied for {1} field members")]
    LengthMismatch(usize, usize),
    #[error("set density is not exact: {0}")]
    NotExact(String),
    #[error("sequence is empty or horizon {0} is out of range")]
    BadHorizon(usize),
    #[error("membership of point {0} has not stabilized within the horizon")]
    HorizonExceeded(u64),
    #[error("set is not in the periodic tier")]
    NotPeriodic,
    #[error("table format error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Which of the two set functions to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub a: Mask,
    pub b: Mask,
    pub c: Mask,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={}, B={}, C={}",
            show_mask(self.a),
            show_mask(self.b),
            show_mask(self.c)
        )
    }
}

/// `{0,2,3}`-style rendering of a mask.
pub fn show_mask(m: Mask) -> String {
    let items: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn mask_of(elements: &[u32]) -> Mask {
    elements.iter().fold(0, |m, &e| m | 1 << e)
}

/// Outcome of an exhaustive predicate check; the counterexample is the
/// lexicographically first violating triple in field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub counterexample: Option<Triple>,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A field member whose `μ⁺` exceeds the total of a cheaper cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverViolation {
    pub set: Mask,
    pub cover: Vec<Mask>,
    pub value: Rational,
    pub cover_total: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctionTable {
    ground_size: u32,
    field: Vec<Mask>,
    index: HashMap<Mask, usize>,
    mu_plus: Vec<Rational>,
    mu_minus: Option<Vec<Rational>>,
}

pub fn full_mask(ground_size: u32) -> Mask {
    if ground_size >= 64 {
        Mask::MAX
    } else {
        (1 << ground_size) - 1
    }
}

/// Every subset of `{0, …, n−1}`.
pub fn power_set(ground_size: u32) -> Vec<Mask> {
    (0..=full_mask(ground_size)).collect()
}

/// The field whose atoms are the given pairwise-disjoint masks.
pub fn field_from_atoms(atoms: &[Mask]) -> Vec<Mask> {
    (0u64..1 << atoms.len())
        .map(|sel| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .fold(0, |m, (_, a)| m | a)
        })
        .collect()
}

impl SetFunctionTable {
    /// Values are given in the same order as `field`.
    pub fn new(
        ground_size: u32,
        field: Vec<Mask>,
        mu_plus: Vec<Rational>,
        mu_minus: Option<Vec<Rational>>,
    ) -> Result<Self, SetFunError> {
        if ground_size > MAX_GROUND {
            return Err(SetFunError::TooLarge(u64::from(ground_size), u64::from(MAX_GROUND)));
        }
        if mu_plus.len() != field.len() {
            return Err(SetFunError::LengthMismatch(mu_plus.len(), field.len()));
        }
        if let Some(m) = &mu_minus {
            if m.len() != field.len() {
                return Err(SetFunError::LengthMismatch(m.len(), field.len()));
            }
        }
        let full = full_mask(ground_size);
        let mut rows: Vec<(Mask, Rational, Option<Rational>)> = field
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, mu_plus[i], mu_minus.as_ref().map(|v| v[i])))
            .collect();
        rows.sort_by_key(|r| r.0);
        let mut index = HashMap::with_capacity(rows.len());
        for (i, (m, plus, minus)) in rows.iter().enumerate() {
            if m & !full != 0 {
                return Err(SetFunError::OutsideGround(*m));
            }
            if index.insert(*m, i).is_some() {
                return Err(SetFunError::Duplicate(*m));
            }
            let in_range = |v: &Rational| *v >= Rational::zero() && *v <= Rational::one();
            if !in_range(plus) || minus.as_ref().is_some_and(|v| !in_range(v)) {
                return Err(SetFunError::OutOfRange(*m));
            }
        }
        if !index.contains_key(&0) {
            return Err(SetFunError::NotAField("missing the empty set".into()));
        }
        for &(m, ..) in &rows {
            if !index.contains_key(&(full & !m)) {
                return Err(SetFunError::NotAField(format!(
                    "complement of {} missing",
                    show_mask(m)
                )));
            }
        }
        for &(a, ..) in &rows {
            for &(b, ..) in &rows {
                if !index.contains_key(&(a | b)) {
                    return Err(SetFunError::NotAField(format!(
                        "union of {} and {} missing",
                        show_mask(a),
                        show_mask(b)
                    )));
                }
            }
        }
        let table = Self {
            ground_size,
            field: rows.iter().map(|r| r.0).collect(),
            index,
            mu_plus: rows.iter().map(|r| r.1).collect(),
            mu_minus: mu_minus.map(|_| rows.iter().map(|r| r.2.expect("lower value")).collect()),
        };
        let ends_ok = |v: &[Rational]| v[table.idx(0)].is_zero() && v[table.idx(full)].is_one();
        if !ends_ok(&table.mu_plus) || table.mu_minus.as_deref().is_some_and(|v| !ends_ok(v)) {
            return Err(SetFunError::Normalization);
        }
        Ok(table)
    }

    pub fn from_fn(
        ground_size: u32,
        field: Vec<Mask>,
        plus: impl Fn(Mask) -> Rational,
        minus: Option<&dyn Fn(Mask) -> Rational>,
    ) -> Result<Self, SetFunError> {
        let p = field.iter().map(|&m| plus(m)).collect();
        let q = minus.map(|f| field.iter().map(|&m| f(m)).collect());
        Self::new(ground_size, field, p, q)
    }

    /// `μ(A) = |A|/|X|` on the full power set, paired with itself.
    pub fn counting(ground_size: u32) -> Result<Self, SetFunError> {
        let n = i128::from(ground_size);
        let f = move |m: Mask| Rational::new(i128::from(m.count_ones()), n);
        Self::from_fn(ground_size, power_set(ground_size), f, Some(&f))
    }

    /// Finite model of densities: ground point `i` stands for `atoms[i]`,
    /// which should partition ℕ. Values are the exact upper and lower
    /// densities of the corresponding unions.
    pub fn from_density_atoms(atoms: &[DensitySet], window: u64) -> Result<Self, SetFunError> {
        let n = atoms.len() as u32;
        if n > MAX_EXHAUSTIVE_GROUND {
            return Err(SetFunError::TooLarge(u64::from(n), u64::from(MAX_EXHAUSTIVE_GROUND)));
        }
        let field = power_set(n);
        let mut plus = Vec::with_capacity(field.len());
        let mut minus = Vec::with_capacity(field.len());
        for &m in &field {
            let set = (0..n)
                .filter(|i| m >> i & 1 == 1)
                .fold(DensitySet::empty(), |acc, i| acc.union(&atoms[i as usize]));
            let up = upper_density(&set, window);
            let lo = lower_density(&set, window);
            match (up.exact(), lo.exact()) {
                (Some(u), Some(l)) => {
                    plus.push(u);
                    minus.push(l);
                }
                _ => return Err(SetFunError::NotExact(set.to_string())),
            }
        }
        Self::new(n, field, plus, Some(minus))
    }

    /// Atoms `{r mod m}` for `r < m`.
    pub fn residue_model(modulus: u64, window: u64) -> Result<Self, SetFunError> {
        let atoms: Vec<DensitySet> = (0..modulus)
            .map(|r| DensitySet::residue_class(r, modulus).expect("positive modulus"))
            .collect();
        Self::from_density_atoms(&atoms, window)
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    pub fn full(&self) -> Mask {
        full_mask(self.ground_size)
    }

    /// Field members in increasing mask order.
    pub fn field(&self) -> &[Mask] {
        &self.field
    }

    pub fn has_lower(&self) -> bool {
        self.mu_minus.is_some()
    }

    fn idx(&self, m: Mask) -> usize {
        self.index[&m]
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.index.contains_key(&m)
    }

    pub fn plus(&self, m: Mask) -> Result<Rational, SetFunError> {
        self.index
            .get(&m)
            .map(|&i| self.mu_plus[i])
            .ok_or(SetFunError::NotInField(m))
    }

    pub fn minus(&self, m: Mask) -> Result<Rational, SetFunError> {
        let v = self.mu_minus.as_ref().ok_or(SetFunError::MissingLower)?;
        self.index.get(&m).map(|&i| v[i]).ok_or(SetFunError::NotInField(m))
    }

    fn values(&self, side: Side) -> Result<&[Rational], SetFunError> {
        match side {
            Side::Plus => Ok(&self.mu_plus),
            Side::Minus => self.mu_minus.as_deref().ok_or(SetFunError::MissingLower),
        }
    }

    /// Replaces one `μ⁺` value without revalidating; used to build mutants.
    pub fn with_plus_value(&self, m: Mask, v: Rational) -> Result<Self, SetFunError> {
        let mut out = self.clone();
        let i = *self.index.get(&m).ok_or(SetFunError::NotInField(m))?;
        out.mu_plus[i] = v;
        Ok(out)
    }

    fn require_exhaustive(&self) -> Result<(), SetFunError> {
        if self.ground_size > MAX_EXHAUSTIVE_GROUND {
            return Err(SetFunError::TooLarge(
                u64::from(self.ground_size),
                u64::from(MAX_EXHAUSTIVE_GROUND),
            ));
        }
        Ok(())
    }

    /// Per member `U`, the least value over members `C ⊇ U`.
    fn min_over_supersets(&self, v: &[Rational]) -> Vec<Rational> {
        self.field
            .iter()
            .map(|&u| {
                self.field
                    .iter()
                    .zip(v)
                    .filter(|(&c, _)| c & u == u)
                    .map(|(_, &x)| x)
                    .min()
                    .expect("X contains U")
            })
            .collect()
    }

    /// Per member `U`, the greatest value over members `C ⊆ U`.
    fn max_over_subsets(&self, v: &[Rational]) -> Vec<Rational> {
        self.field
            .iter()
            .map(|&u| {
                self.field
                    .iter()
                    .zip(v)
                    .filter(|(&c, _)| c & !u == 0)
                    .map(|(_, &x)| x)
                    .max()
                    .expect("∅ ⊆ U")
            })
            .collect()
    }

    /// `A ⊆ B ∪ C ⟹ f(A) ≤ g(B) + h(C)`. For fixed `(A, B)` the binding `C`
    /// is the cheapest member containing `A ∖ B`.
    fn check_cover(&self, f: Side, g: Side, h: Side) -> Result<Check, SetFunError> {
        self.require_exhaustive()?;
        let (vf, vg, vh) = (self.values(f)?, self.values(g)?, self.values(h)?);
        let cheapest = self.min_over_supersets(vh);
        for (ia, &a) in self.field.iter().enumerate() {
            for (ib, &b) in self.field.iter().enumerate() {
                let rest = a & !b;
                if vf[ia] > vg[ib] + cheapest[self.idx(rest)] {
                    let ic = (0..self.field.len())
                        .find(|&ic| self.field[ic] & rest == rest && vf[ia] > vg[ib] + vh[ic])
                        .expect("binding member exists");
                    return Ok(Check {
                        counterexample: Some(Triple {
                            a,
                            b,
                            c: self.field[ic],
                        }),
                    });
                }
            }
        }
        Ok(Check { counterexample: None })
    }

    /// `B ∩ C = ∅, B ∪ C ⊆ A ⟹ f(A) ≥ g(B) + h(C)`. For fixed `(A, B ⊆ A)`
    /// the binding `C` is the largest-valued member inside `A ∖ B`.
    fn check_packing(&self, f: Side, g: Side, h: Side) -> Result<Check, SetFunError> {
        self.require_exhaustive()?;
        let (vf, vg, vh) = (self.values(f)?, self.values(g)?, self.values(h)?);
        let largest = self.max_over_subsets(vh);
        for (ia, &a) in self.field.iter().enumerate() {
            for (ib, &b) in self.field.iter().enumerate() {
                if b & !a != 0 {
                    continue;
                }
                let rest = a & !b;
                if vf[ia] < vg[ib] + largest[self.idx(rest)] {
                    let ic = (0..self.field.len())
                        .find(|&ic| self.field[ic] & !rest == 0 && vf[ia] < vg[ib] + vh[ic])
                        .expect("binding member exists");
                    return Ok(Check {
                        counterexample: Some(Triple {
                            a,
                            b,
                            c: self.field[ic],
                        }),
                    });
                }
            }
        }
        Ok(Check { counterexample: None })
    }

    /// `I_A ≤ I_B + I_C ⟹ μ⁺(A) ≤ μ⁺(B) + μ⁺(C)`.
    pub fn is_subadditive(&self) -> Result<Check, SetFunError> {
        self.check_cover(Side::Plus, Side::Plus, Side::Plus)
    }

    /// `I_A ≥ I_B + I_C ⟹ μ⁻(A) ≥ μ⁻(B) + μ⁻(C)`. Tables without `μ⁻` are
    /// checked with `μ⁺` in its place.
    pub fn is_superadditive(&self) -> Result<Check, SetFunError> {
        let s = if self.has_lower() { Side::Minus } else { Side::Plus };
        self.check_packing(s, s, s)
    }

    /// `I_A ≤ I_B + I_C ⟹ μ⁻(A) ≤ μ⁻(B) + μ⁺(C)`.
    pub fn is_co_subadditive(&self) -> Result<Check, SetFunError> {
        self.check_cover(Side::Minus, Side::Minus, Side::Plus)
    }

    /// `I_A ≥ I_B + I_C ⟹ μ⁺(A) ≥ μ⁺(B) + μ⁻(C)`.
    pub fn is_co_superadditive(&self) -> Result<Check, SetFunError> {
        self.check_packing(Side::Plus, Side::Plus, Side::Minus)
    }

    pub fn is_conjugate(&self) -> Result<bool, SetFunError> {
        Ok(self.is_subadditive()?.holds()
            && self.is_superadditive()?.holds()
            && self.is_co_subadditive()?.holds()
            && self.is_co_superadditive()?.holds())
    }

    /// `d_μ(A, B) = μ⁺(A △ B)`.
    pub fn d_mu(&self, a: Mask, b: Mask) -> Result<Rational, SetFunError> {
        if !self.contains(a) {
            return Err(SetFunError::NotInField(a));
        }
        if !self.contains(b) {
            return Err(SetFunError::NotInField(b));
        }
        self.plus(a ^ b)
    }

    /// First `(A, B, C)` with `d_μ(A, C) > d_μ(A, B) + d_μ(B, C)`.
    pub fn triangle_violation(&self) -> Result<Option<Triple>, SetFunError> {
        if self.field.len() > MAX_TRIANGLE_FIELD {
            return Err(SetFunError::TooLarge(
                self.field.len() as u64,
                MAX_TRIANGLE_FIELD as u64,
            ));
        }
        for &a in &self.field {
            for &b in &self.field {
                let ab = self.plus(a ^ b)?;
                for &c in &self.field {
                    if self.plus(a ^ c)? > ab + self.plus(b ^ c)? {
                        return Ok(Some(Triple { a, b, c }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// First `(A, B)` with `A ⊆ B` but `μ(A) > μ(B)`.
    pub fn monotonicity_violation(&self, side: Side) -> Result<Option<(Mask, Mask)>, SetFunError> {
        let v = self.values(side)?;
        for (ia, &a) in self.field.iter().enumerate() {
            for (ib, &b) in self.field.iter().enumerate() {
                if a & !b == 0 && v[ia] > v[ib] {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    /// First `(A, B)` breaking `|μ(A) − μ(B)| ≤ μ⁺(A △ B)` for the chosen side.
    pub fn continuity_violation(&self, side: Side) -> Result<Option<(Mask, Mask)>, SetFunError> {
        let v = self.values(side)?;
        for (ia, &a) in self.field.iter().enumerate() {
            for (ib, &b) in self.field.iter().enumerate() {
                let gap = if v[ia] >= v[ib] { v[ia] - v[ib] } else { v[ib] - v[ia] };
                if gap > self.plus(a ^ b)? {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    /// Cheapest cover of every subset of `X` by field members, as
    /// `(total, chosen member)`; the chosen member covers the lowest point.
    fn cover_table(&self) -> Result<Vec<(Rational, usize)>, SetFunError> {
        self.require_exhaustive()?;
        let n = self.ground_size as usize;
        let containing: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..self.field.len()).filter(|&i| self.field[i] >> x & 1 == 1).collect())
            .collect();
        let size = 1usize << n;
        let mut table: Vec<(Rational, usize)> = Vec::with_capacity(size);
        table.push((Rational::zero(), usize::MAX));
        for u in 1..size {
            let x = u.trailing_zeros() as usize;
            let best = containing[x]
                .iter()
                .map(|&i| (self.mu_plus[i] + table[u & !(self.field[i] as usize)].0, i))
                .min_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)))
                .expect("X covers every point");
            table.push(best);
        }
        Ok(table)
    }

    fn cover_members(table: &[(Rational, usize)], field: &[Mask], mut u: usize) -> Vec<Mask> {
        let mut out = Vec::new();
        while u != 0 {
            let m = field[table[u].1];
            out.push(m);
            u &= !(m as usize);
        }
        out
    }

    /// `inf Σ μ⁺(A_i)` over covers of `b` by field members. On a finite ground
    /// set a cheapest cover needs at most `|b|` members, so the infimum is a
    /// minimum.
    pub fn outer_measure(&self, b: Mask) -> Result<Rational, SetFunError> {
        if b & !self.full() != 0 {
            return Err(SetFunError::OutsideGround(b));
        }
        Ok(self.cover_table()?[b as usize].0)
    }

    /// The cheapest cover realizing [`Self::outer_measure`].
    pub fn cheapest_cover(&self, b: Mask) -> Result<Vec<Mask>, SetFunError> {
        if b & !self.full() != 0 {
            return Err(SetFunError::OutsideGround(b));
        }
        let table = self.cover_table()?;
        Ok(Self::cover_members(&table, &self.field, b as usize))
    }

    /// `I_A ≤ Σ I_{A_k} ⟹ μ⁺(A) ≤ Σ μ⁺(A_k)`. Countable covers of a finite set
    /// reduce to finite ones without repetition, so this holds iff no member
    /// is worth more than its cheapest cover.
    pub fn countable_subadditivity_violation(&self) -> Result<Option<CoverViolation>, SetFunError> {
        let table = self.cover_table()?;
        for (i, &a) in self.field.iter().enumerate() {
            let total = table[a as usize].0;
            if self.mu_plus[i] > total {
                return Ok(Some(CoverViolation {
                    set: a,
                    cover: Self::cover_members(&table, &self.field, a as usize),
                    value: self.mu_plus[i],
                    cover_total: total,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_countably_subadditive(&self) -> Result<bool, SetFunError> {
        Ok(self.countable_subadditivity_violation()?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn nonempty_indicator(ground: u32) -> SetFunctionTable {
        let f = |m: Mask| if m == 0 { int(0) } else { int(1) };
        SetFunctionTable::from_fn(ground, power_set(ground), f, None).unwrap()
    }

    fn null_singletons() -> SetFunctionTable {
        let f = |m: Mask| if m == 0b11 { int(1) } else { int(0) };
        SetFunctionTable::from_fn(2, power_set(2), f, None).unwrap()
    }

    /// Independent triple-loop oracle for the four predicates.
    fn brute(t: &SetFunctionTable, cover: bool, f: Side, g: Side, h: Side) -> Option<Triple> {
        let val = |s: Side, m: Mask| match s {
            Side::Plus => t.plus(m).unwrap(),
            Side::Minus => t.minus(m).unwrap(),
        };
        for &a in t.field() {
            for &b in t.field() {
                for &c in t.field() {
                    let bad = if cover {
                        a & !(b | c) == 0 && val(f, a) > val(g, b) + val(h, c)
                    } else {
                        b & c == 0 && (b | c) & !a == 0 && val(f, a) < val(g, b) + val(h, c)
                    };
                    if bad {
                        return Some(Triple { a, b, c });
                    }
                }
            }
        }
        None
    }

    #[test]
    fn counting_measure_is_conjugate() {
        let t = SetFunctionTable::counting(4).unwrap();
        assert!(t.is_subadditive().unwrap().holds());
        assert!(t.is_superadditive().unwrap().holds());
        assert!(t.is_conjugate().unwrap());
    }

    #[test]
    fn residue_model_is_conjugate() {
        let t = SetFunctionTable::residue_model(4, 1000).unwrap();
        assert_eq!(t.plus(0b0101).unwrap(), ratio(1, 2));
        assert!(t.is_subadditive().unwrap().holds());
        assert!(t.is_superadditive().unwrap().holds());
        assert!(t.is_co_subadditive().unwrap().holds());
        assert!(t.is_co_superadditive().unwrap().holds());
    }

    #[test]
    fn block_model_is_conjugate_but_not_additive() {
        let atoms = [
            DensitySet::block(2, 0).unwrap(),
            DensitySet::block(2, 1).unwrap().union(&DensitySet::finite([0])),
        ];
        let t = SetFunctionTable::from_density_atoms(&atoms, 1000).unwrap();
        assert_eq!(t.plus(0b01).unwrap(), ratio(2, 3));
        assert_eq!(t.minus(0b01).unwrap(), ratio(1, 3));
        assert!(t.is_conjugate().unwrap());
    }

    #[test]
    fn nonempty_indicator_fails_superadditivity() {
        let t = nonempty_indicator(2);
        let check = t.is_superadditive().unwrap();
        assert_eq!(
            check.counterexample,
            Some(Triple {
                a: 0b11,
                b: 0b01,
                c: 0b10
            })
        );
        assert!(t.is_subadditive().unwrap().holds());
        assert!(!t.is_conjugate().unwrap());
    }

    #[test]
    fn fast_checks_match_brute_force() {
        let tables = [
            nonempty_indicator(3),
            null_singletons(),
            SetFunctionTable::counting(3).unwrap(),
            SetFunctionTable::residue_model(3, 100).unwrap(),
        ];
        for t in &tables {
            let lower = if t.has_lower() { Side::Minus } else { Side::Plus };
            assert_eq!(
                t.is_subadditive().unwrap().counterexample,
                brute(t, true, Side::Plus, Side::Plus, Side::Plus)
            );
            assert_eq!(
                t.is_superadditive().unwrap().counterexample,
                brute(t, false, lower, lower, lower)
            );
            if t.has_lower() {
                assert_eq!(
                    t.is_co_subadditive().unwrap().counterexample,
                    brute(t, true, Side::Minus, Side::Minus, Side::Plus)
                );
                assert_eq!(
                    t.is_co_superadditive().unwrap().counterexample,
                    brute(t, false, Side::Plus, Side::Plus, Side::Minus)
                );
            }
        }
    }

    #[test]
    fn d_mu_examples() {
        let t = SetFunctionTable::counting(4).unwrap();
        assert_eq!(t.d_mu(0b0001, 0b0010).unwrap(), ratio(1, 2));
        assert_eq!(t.d_mu(0b0110, 0b0110).unwrap(), int(0));
        assert_eq!(t.d_mu(0, 0b1111).unwrap(), int(1));
        assert_eq!(t.triangle_violation().unwrap(), None);
        assert_eq!(t.d_mu(0b10000, 0), Err(SetFunError::NotInField(0b10000)));
    }

    #[test]
    fn countable_subadditivity_examples() {
        assert!(SetFunctionTable::counting(4)
            .unwrap()
            .is_countably_subadditive()
            .unwrap());
        assert!(nonempty_indicator(3).is_countably_subadditive().unwrap());
        let v = null_singletons().countable_subadditivity_violation().unwrap().unwrap();
        assert_eq!(v.set, 0b11);
        let mut cover = v.cover.clone();
        cover.sort_unstable();
        assert_eq!(cover, vec![0b01, 0b10]);
        assert_eq!(v.cover_total, int(0));
    }

    #[test]
    fn outer_measure_examples() {
        let t = SetFunctionTable::counting(4).unwrap();
        for b in 0..16u64 {
            assert_eq!(t.outer_measure(b).unwrap(), ratio(u64::from(b.count_ones()), 4));
        }
        assert_eq!(null_singletons().outer_measure(0).unwrap(), int(0));
        assert_eq!(null_singletons().outer_measure(0b11).unwrap(), int(0));
    }

    #[test]
    fn outer_measure_on_coarse_field() {
        // Field with atoms {0,1} and {2}: covering {0} costs μ⁺({0,1}).
        let field = field_from_atoms(&[0b011, 0b100]);
        let f = |m: Mask| match m {
            0 => int(0),
            0b011 => ratio(1, 3),
            0b100 => ratio(1, 2),
            _ => int(1),
        };
        let t = SetFunctionTable::from_fn(3, field, f, None).unwrap();
        assert_eq!(t.outer_measure(0b001).unwrap(), ratio(1, 3));
        assert_eq!(t.outer_measure(0b101).unwrap(), ratio(5, 6));
        assert_eq!(t.outer_measure(0b111).unwrap(), int(1).min(ratio(5, 6)));
    }

    #[test]
    fn validation_errors() {
        let f = |_: Mask| int(0);
        assert!(matches!(
            SetFunctionTable::from_fn(2, vec![0, 1, 3], f, None),
            Err(SetFunError::NotAField(_))
        ));
        let g = |m: Mask| if m == 3 { int(1) } else { int(0) };
        assert!(matches!(
            SetFunctionTable::from_fn(2, vec![0, 1, 1, 2, 3], g, None),
            Err(SetFunError::Duplicate(1))
        ));
        assert_eq!(
            SetFunctionTable::from_fn(2, power_set(2), f, None),
            Err(SetFunError::Normalization)
        );
        let h = |m: Mask| if m == 3 { int(1) } else { int(2) };
        assert!(matches!(
            SetFunctionTable::from_fn(2, power_set(2), h, None),
            Err(SetFunError::OutOfRange(_))
        ));
        assert_eq!(
            SetFunctionTable::counting(13).unwrap().is_subadditive(),
            Err(SetFunError::TooLarge(13, 12))
        );
    }

    #[test]
    fn lower_required_for_co_predicates() {
        let t = null_singletons();
        assert_eq!(t.is_co_subadditive(), Err(SetFunError::MissingLower));
    }
}
