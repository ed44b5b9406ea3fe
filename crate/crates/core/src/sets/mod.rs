//! Subsets of ℕ (starting at 0) with exact membership and prefix counts.
//!
//! Sets come in tiers:
//!
//! * the **periodic tier** ([`DensitySet::Finite`], [`DensitySet::Cofinite`]
//!   and [`DensitySet::Periodic`]) is closed under every Boolean operation
//!   and always carried in a canonical normal form, so set equality there is
//!   structural equality;
//! * [`DensitySet::Block`] sets, unions of geometric intervals, which have
//!   distinct upper and lower densities;
//! * [`DensitySet::Spliced`] sets, which take their membership from different
//!   pieces on consecutive intervals (the output of the diagonal construction);
//! * [`DensitySet::Oracle`] sets, given by an arbitrary membership predicate;
//! * [`DensitySet::Expr`], a Boolean expression over sets that could not be
//!   folded into one of the above.

mod block;
mod periodic;
mod spliced;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use block::BlockSet;
pub use periodic::{PeriodicSet, PeriodicWire};
pub use spliced::SplicedSet;

/// Cap on the prefix materialized when flattening a spliced set.
pub const MAX_FLAT_PREFIX: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("cannot normalize a set containing a {0} node")]
    NormalizeUnsupported(&'static str),
    #[error("invalid periodic set: {0}")]
    InvalidPeriodic(String),
    #[error("block growth base must be at least 2, got {0}")]
    InvalidBlockBase(u64),
    #[error("block phase must be 0 or 1, got {0}")]
    InvalidBlockPhase(u8),
    #[error("spliced set needs strictly increasing cuts and one more piece than cuts")]
    InvalidSplice,
    #[error("flattening would need a prefix of {0} bits")]
    PrefixTooLong(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    Union,
    Intersection,
    Complement,
    Difference,
    SymDiff,
}

impl BoolOp {
    pub fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersection => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymDiff => a != b,
            BoolOp::Complement => !a,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BoolOp::Union => "|",
            BoolOp::Intersection => "&",
            BoolOp::Complement => "~",
            BoolOp::Difference => "\\",
            BoolOp::SymDiff => "^",
        }
    }
}

pub type Predicate = Arc<dyn Fn(u64) -> bool + Send + Sync>;
pub type Sieve = Arc<dyn Fn(u64) -> Vec<bool> + Send + Sync>;

/// A set known only through a membership predicate. Equality of oracle sets
/// is never decided; two oracles compare equal only if they share the same
/// predicate allocation.
#[derive(Clone)]
pub struct OracleSet {
    label: String,
    predicate: Predicate,
    sieve: Option<Sieve>,
}

impl OracleSet {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn member(&self, n: u64) -> bool {
        (self.predicate)(n)
    }

    /// Membership of `0..limit`, using the bulk sieve when one was supplied.
    pub fn bits(&self, limit: u64) -> Vec<bool> {
        match &self.sieve {
            Some(sieve) => sieve(limit),
            None => (0..limit).map(|n| self.member(n)).collect(),
        }
    }
}

impl PartialEq for OracleSet {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && Arc::ptr_eq(&self.predicate, &other.predicate)
    }
}

impl fmt::Debug for OracleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({:?})", self.label)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoolExpr {
    op: BoolOp,
    children: Vec<DensitySet>,
}

impl BoolExpr {
    pub fn op(&self) -> BoolOp {
        self.op
    }

    pub fn children(&self) -> &[DensitySet] {
        &self.children
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DensitySet {
    /// Strictly increasing element list.
    Finite(Vec<u64>),
    /// Strictly increasing list of excluded points.
    Cofinite(Vec<u64>),
    /// Canonical eventually periodic set with at least one residue present
    /// and at least one absent.
    Periodic(PeriodicSet),
    Block(BlockSet),
    Spliced(SplicedSet),
    Oracle(OracleSet),
    Expr(BoolExpr),
}

impl DensitySet {
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        DensitySet::Finite(v)
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = excluded.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        DensitySet::Cofinite(v)
    }

    pub fn empty() -> Self {
        DensitySet::Finite(Vec::new())
    }

    pub fn naturals() -> Self {
        DensitySet::Cofinite(Vec::new())
    }

    /// `{n : n ≡ a (mod m)}`, normalized.
    pub fn residue_class(a: u64, m: u64) -> Result<Self, SetError> {
        PeriodicSet::residue_class(a, m).map(Self::from_periodic)
    }

    /// Multiples of `m`.
    pub fn multiples(m: u64) -> Result<Self, SetError> {
        Self::residue_class(0, m)
    }

    pub fn evens() -> Self {
        Self::from_periodic(PeriodicSet::residue_class(0, 2).expect("modulus 2"))
    }

    pub fn odds() -> Self {
        Self::from_periodic(PeriodicSet::residue_class(1, 2).expect("modulus 2"))
    }

    pub fn block(base: u64, phase: u8) -> Result<Self, SetError> {
        BlockSet::new(base, phase).map(DensitySet::Block)
    }

    pub fn oracle(label: impl Into<String>, predicate: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        DensitySet::Oracle(OracleSet {
            label: label.into(),
            predicate: Arc::new(predicate),
            sieve: None,
        })
    }

    /// An oracle that also knows how to produce its membership on `0..limit`
    /// in bulk.
    pub fn oracle_with_sieve(
        label: impl Into<String>,
        predicate: impl Fn(u64) -> bool + Send + Sync + 'static,
        sieve: impl Fn(u64) -> Vec<bool> + Send + Sync + 'static,
    ) -> Self {
        DensitySet::Oracle(OracleSet {
            label: label.into(),
            predicate: Arc::new(predicate),
            sieve: Some(Arc::new(sieve)),
        })
    }

    pub fn spliced(cuts: Vec<u64>, pieces: Vec<DensitySet>) -> Result<Self, SetError> {
        SplicedSet::new(cuts, pieces).map(|s| SplicedSet::assemble(s.cuts, s.pieces))
    }

    /// An unevaluated Boolean node. Prefer the operation methods, which fold
    /// periodic-tier operands eagerly.
    pub fn expr(op: BoolOp, children: Vec<DensitySet>) -> Self {
        DensitySet::Expr(BoolExpr { op, children })
    }

    /// Canonical Finite / Cofinite / Periodic form of a periodic set.
    pub fn from_periodic(p: PeriodicSet) -> Self {
        let p = p.canonical();
        if p.residue_count() == 0 {
            DensitySet::Finite(p.finite_members())
        } else if p.residue_count() == p.period() {
            DensitySet::Cofinite(p.prefix_non_members())
        } else {
            DensitySet::Periodic(p)
        }
    }

    /// The set as an eventually periodic set, for the three periodic-tier variants.
    pub fn as_periodic(&self) -> Option<PeriodicSet> {
        match self {
            DensitySet::Finite(v) => Some(PeriodicSet::from_finite(v)),
            DensitySet::Cofinite(v) => Some(PeriodicSet::from_cofinite(v)),
            DensitySet::Periodic(p) => Some(p.clone()),
            _ => None,
        }
    }

    pub fn is_periodic_tier(&self) -> bool {
        match self {
            DensitySet::Finite(_) | DensitySet::Cofinite(_) | DensitySet::Periodic(_) => true,
            DensitySet::Expr(e) => e.children.iter().all(Self::is_periodic_tier),
            _ => false,
        }
    }

    pub fn contains_oracle(&self) -> bool {
        match self {
            DensitySet::Oracle(_) => true,
            DensitySet::Expr(e) => e.children.iter().any(Self::contains_oracle),
            DensitySet::Spliced(s) => s.pieces().iter().any(Self::contains_oracle),
            _ => false,
        }
    }

    /// Growth bases of every block node in the set.
    pub fn block_bases(&self) -> Vec<u64> {
        match self {
            DensitySet::Block(b) => vec![b.base()],
            DensitySet::Expr(e) => e.children.iter().flat_map(Self::block_bases).collect(),
            DensitySet::Spliced(s) => s.pieces().iter().flat_map(Self::block_bases).collect(),
            _ => Vec::new(),
        }
    }

    pub fn member(&self, n: u64) -> bool {
        match self {
            DensitySet::Finite(v) => v.binary_search(&n).is_ok(),
            DensitySet::Cofinite(v) => v.binary_search(&n).is_err(),
            DensitySet::Periodic(p) => p.member(n),
            DensitySet::Block(b) => b.member(n),
            DensitySet::Spliced(s) => s.member(n),
            DensitySet::Oracle(o) => o.member(n),
            DensitySet::Expr(e) => match e.op {
                BoolOp::Complement => !e.children[0].member(n),
                op => {
                    let mut it = e.children.iter();
                    let first = it.next().is_some_and(|c| c.member(n));
                    it.fold(first, |acc, c| op.eval(acc, c.member(n)))
                }
            },
        }
    }

    /// `|S ∩ {0, …, n−1}|`.
    pub fn prefix_count(&self, n: u64) -> u64 {
        match self {
            DensitySet::Finite(v) => v.partition_point(|&x| x < n) as u64,
            DensitySet::Cofinite(v) => n - v.partition_point(|&x| x < n) as u64,
            DensitySet::Periodic(p) => p.prefix_count(n),
            DensitySet::Block(b) => b.prefix_count(n),
            DensitySet::Spliced(s) => s.prefix_count(n),
            DensitySet::Expr(e) if e.op == BoolOp::Complement => n - e.children[0].prefix_count(n),
            DensitySet::Oracle(_) | DensitySet::Expr(_) => self.bits(n).into_iter().filter(|&b| b).count() as u64,
        }
    }

    /// Membership of every point in `0..limit`.
    pub fn bits(&self, limit: u64) -> Vec<bool> {
        match self {
            DensitySet::Oracle(o) => o.bits(limit),
            DensitySet::Expr(e) => match e.op {
                BoolOp::Complement => e.children[0].bits(limit).into_iter().map(|b| !b).collect(),
                op => {
                    let mut it = e.children.iter();
                    let mut acc = it.next().map_or_else(|| vec![false; limit as usize], |c| c.bits(limit));
                    for c in it {
                        for (a, b) in acc.iter_mut().zip(c.bits(limit)) {
                            *a = op.eval(*a, b);
                        }
                    }
                    acc
                }
            },
            _ => (0..limit).map(|n| self.member(n)).collect(),
        }
    }

    pub(crate) fn binary(&self, op: BoolOp, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_periodic(), other.as_periodic()) {
            return Self::from_periodic(a.combine(&b, |x, y| op.eval(x, y)));
        }
        if matches!(self, DensitySet::Spliced(_)) || matches!(other, DensitySet::Spliced(_)) {
            return SplicedSet::combine(self, other, op);
        }
        if let Some(folded) = Self::fold_constant(op, self, other) {
            return folded;
        }
        if self == other {
            return match op {
                BoolOp::Union | BoolOp::Intersection => self.clone(),
                BoolOp::Difference | BoolOp::SymDiff => Self::empty(),
                BoolOp::Complement => self.complement(),
            };
        }
        Self::expr(op, vec![self.clone(), other.clone()])
    }

    fn constant_value(&self) -> Option<bool> {
        match self {
            DensitySet::Finite(v) if v.is_empty() => Some(false),
            DensitySet::Cofinite(v) if v.is_empty() => Some(true),
            _ => None,
        }
    }

    /// Folds an operation with ∅ or ℕ on either side.
    fn fold_constant(op: BoolOp, a: &Self, b: &Self) -> Option<Self> {
        let pick = |v: bool, other: &Self, negate: bool| -> Self {
            match (v, negate) {
                (true, false) => other.clone(),
                (true, true) => other.complement(),
                (false, _) => Self::empty(),
            }
        };
        let constant = |v: bool| if v { Self::naturals() } else { Self::empty() };
        match (a.constant_value(), b.constant_value(), op) {
            (_, _, BoolOp::Complement) => None,
            (Some(x), _, BoolOp::Union) | (_, Some(x), BoolOp::Union) if x => Some(constant(true)),
            (Some(false), _, BoolOp::Union) => Some(b.clone()),
            (_, Some(false), BoolOp::Union) => Some(a.clone()),
            (Some(x), _, BoolOp::Intersection) => Some(pick(x, b, false)),
            (_, Some(x), BoolOp::Intersection) => Some(pick(x, a, false)),
            (Some(x), _, BoolOp::Difference) => Some(pick(x, b, true)),
            (_, Some(x), BoolOp::Difference) => Some(pick(!x, a, false)),
            (Some(x), _, BoolOp::SymDiff) => Some(if x { b.complement() } else { b.clone() }),
            (_, Some(x), BoolOp::SymDiff) => Some(if x { a.complement() } else { a.clone() }),
            _ => None,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.binary(BoolOp::Union, other)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.binary(BoolOp::Intersection, other)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.binary(BoolOp::Difference, other)
    }

    pub fn symdiff(&self, other: &Self) -> Self {
        self.binary(BoolOp::SymDiff, other)
    }

    pub fn complement(&self) -> Self {
        match self {
            DensitySet::Finite(v) => DensitySet::Cofinite(v.clone()),
            DensitySet::Cofinite(v) => DensitySet::Finite(v.clone()),
            DensitySet::Periodic(p) => Self::from_periodic(p.complement()),
            DensitySet::Spliced(s) => s.map_pieces(Self::complement),
            DensitySet::Expr(e) if e.op == BoolOp::Complement => e.children[0].clone(),
            other => Self::expr(BoolOp::Complement, vec![other.clone()]),
        }
    }

    /// Canonical periodic-tier form. Two periodic-tier sets are equal as sets
    /// iff their normal forms are identical.
    pub fn normalize(&self) -> Result<Self, SetError> {
        self.normalize_periodic().map(Self::from_periodic)
    }

    fn normalize_periodic(&self) -> Result<PeriodicSet, SetError> {
        match self {
            DensitySet::Finite(_) | DensitySet::Cofinite(_) | DensitySet::Periodic(_) => {
                Ok(self.as_periodic().expect("periodic tier").canonical())
            }
            DensitySet::Block(_) => Err(SetError::NormalizeUnsupported("block")),
            DensitySet::Oracle(_) => Err(SetError::NormalizeUnsupported("oracle")),
            DensitySet::Spliced(s) => {
                let tail = s.tail().normalize_periodic()?;
                for piece in s.pieces() {
                    piece.normalize_periodic()?;
                }
                let last_cut = s.cuts().last().map_or(0, |c| c + 1);
                let threshold = last_cut.max(tail.threshold());
                if threshold > MAX_FLAT_PREFIX {
                    return Err(SetError::PrefixTooLong(threshold));
                }
                let prefix = (0..threshold).map(|n| s.member(n)).collect();
                let residues = (0..tail.period()).map(|r| tail.tail_member(r)).collect();
                Ok(PeriodicSet::from_bits(threshold, residues, prefix).canonical())
            }
            DensitySet::Expr(e) => {
                let mut it = e.children.iter();
                let first = match it.next() {
                    Some(c) => c.normalize_periodic()?,
                    None => PeriodicSet::empty(),
                };
                if e.op == BoolOp::Complement {
                    return Ok(first.complement());
                }
                it.try_fold(first, |acc, c| {
                    Ok(acc.combine(&c.normalize_periodic()?, |x, y| e.op.eval(x, y)))
                })
            }
        }
    }

    /// A periodic set differing from this one in only finitely many points,
    /// when one can be computed. Asymptotic densities depend only on it.
    pub fn tail_form(&self) -> Option<PeriodicSet> {
        match self {
            DensitySet::Finite(_) => Some(PeriodicSet::empty()),
            DensitySet::Cofinite(_) => Some(PeriodicSet::naturals()),
            DensitySet::Periodic(p) => {
                let residues = (0..p.period()).map(|r| p.tail_member(r)).collect();
                Some(PeriodicSet::from_bits(0, residues, Vec::new()))
            }
            DensitySet::Spliced(s) => s.tail().tail_form(),
            DensitySet::Block(_) | DensitySet::Oracle(_) => None,
            DensitySet::Expr(e) => {
                let mut it = e.children.iter();
                let first = it.next()?.tail_form()?;
                if e.op == BoolOp::Complement {
                    return Some(first.complement());
                }
                it.try_fold(first, |acc, c| {
                    Some(acc.combine(&c.tail_form()?, |x, y| e.op.eval(x, y)))
                })
            }
        }
    }
}

impl From<PeriodicSet> for DensitySet {
    fn from(p: PeriodicSet) -> Self {
        Self::from_periodic(p)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, v: &[u64]) -> fmt::Result {
    write!(f, "{name}{{")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for DensitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensitySet::Finite(v) => write_list(f, "finite", v),
            DensitySet::Cofinite(v) => write_list(f, "cofinite", v),
            DensitySet::Periodic(p) => {
                write!(f, "periodic(t={}, p={}, ", p.threshold(), p.period())?;
                write_list(f, "r=", &p.residues())?;
                if p.threshold() > 0 {
                    write!(f, ", ")?;
                    write_list(f, "prefix=", &p.finite_members())?;
                }
                write!(f, ")")
            }
            DensitySet::Block(b) => write!(f, "block({},{})", b.base(), b.phase()),
            DensitySet::Spliced(s) => {
                write!(f, "spliced[")?;
                for (k, piece) in s.pieces().iter().enumerate() {
                    if k > 0 {
                        write!(f, " ; ")?;
                    }
                    match s.cuts().get(k) {
                        Some(c) => write!(f, "..={c}: {piece}")?,
                        None => write!(f, "rest: {piece}")?,
                    }
                }
                write!(f, "]")
            }
            DensitySet::Oracle(o) => write!(f, "oracle:{}", o.label()),
            DensitySet::Expr(e) => {
                if e.op == BoolOp::Complement {
                    return write!(f, "~({})", e.children[0]);
                }
                write!(f, "(")?;
                for (i, c) in e.children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " {} ", e.op.symbol())?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(a: u64, m: u64) -> DensitySet {
        DensitySet::residue_class(a, m).unwrap()
    }

    #[test]
    fn member_examples() {
        assert!(DensitySet::evens().member(4));
        assert!(!DensitySet::finite([3]).member(4));
        assert!(DensitySet::block(2, 0).unwrap().member(5));
    }

    #[test]
    fn prefix_count_examples() {
        assert_eq!(DensitySet::evens().prefix_count(10), 5);
        assert_eq!(DensitySet::finite([1, 2, 3]).prefix_count(2), 1);
        assert_eq!(DensitySet::block(2, 0).unwrap().prefix_count(8), 5);
        assert_eq!(DensitySet::evens().prefix_count(0), 0);
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(DensitySet::evens().union(&DensitySet::odds()), DensitySet::naturals());
        let s = ap(0, 2).symdiff(&ap(0, 4));
        assert_eq!(s, ap(2, 4));
        match &s {
            DensitySet::Periodic(p) => {
                assert_eq!(p.period(), 4);
                assert_eq!(p.residues(), vec![2]);
            }
            other => panic!("expected periodic, got {other:?}"),
        }
        assert_eq!(DensitySet::finite([0]).complement(), DensitySet::cofinite([0]));
    }

    #[test]
    fn normalize_examples() {
        let u = DensitySet::expr(BoolOp::Union, vec![ap(0, 4), ap(2, 4)]);
        assert_eq!(u.normalize().unwrap(), DensitySet::evens());
        let i = DensitySet::expr(BoolOp::Intersection, vec![DensitySet::evens(), DensitySet::odds()]);
        assert_eq!(i.normalize().unwrap(), DensitySet::empty());
        let a = ap(1, 3).union(&DensitySet::finite([0, 5]));
        let sd = DensitySet::expr(BoolOp::SymDiff, vec![a.clone(), a]);
        assert_eq!(sd.normalize().unwrap(), DensitySet::empty());
    }

    #[test]
    fn normalize_rejects_block_and_oracle() {
        let b = DensitySet::block(2, 0).unwrap();
        assert_eq!(
            b.union(&DensitySet::evens()).normalize(),
            Err(SetError::NormalizeUnsupported("block"))
        );
        let o = DensitySet::oracle("primes", |n| n == 2);
        assert_eq!(o.normalize(), Err(SetError::NormalizeUnsupported("oracle")));
    }

    #[test]
    fn finite_cofinite_normal_forms() {
        let p = PeriodicSet::new(3, 2, &[], vec![true, false, true]).unwrap();
        assert_eq!(DensitySet::from_periodic(p), DensitySet::finite([0, 2]));
        let p = PeriodicSet::new(2, 3, &[0, 1, 2], vec![false, true]).unwrap();
        assert_eq!(DensitySet::from_periodic(p), DensitySet::cofinite([0]));
    }

    #[test]
    fn block_ops_stay_symbolic() {
        let b = DensitySet::block(2, 0).unwrap();
        let u = b.union(&DensitySet::evens());
        assert!(matches!(u, DensitySet::Expr(_)));
        for n in 0..200 {
            assert_eq!(u.member(n), b.member(n) || n % 2 == 0);
        }
        assert_eq!(b.complement().complement(), b);
    }

    #[test]
    fn spliced_membership_and_counts() {
        let s = DensitySet::spliced(vec![10], vec![DensitySet::evens(), DensitySet::odds()]).unwrap();
        for m in 0..=10 {
            assert_eq!(s.member(m), m % 2 == 0);
        }
        for m in 11..40 {
            assert_eq!(s.member(m), m % 2 == 1);
        }
        let mut count = 0;
        for n in 0..60 {
            assert_eq!(s.prefix_count(n), count);
            count += u64::from(s.member(n));
        }
    }

    #[test]
    fn spliced_ops_push_into_pieces() {
        let s = DensitySet::spliced(vec![5, 20], vec![ap(0, 3), ap(1, 3), ap(2, 3)]).unwrap();
        let t = DensitySet::spliced(vec![12], vec![DensitySet::evens(), DensitySet::odds()]).unwrap();
        let u = s.symdiff(&t);
        let DensitySet::Spliced(sp) = &u else {
            panic!("expected spliced, got {u:?}")
        };
        assert_eq!(sp.cuts(), &[5, 12, 20]);
        for n in 0..100 {
            assert_eq!(u.member(n), s.member(n) != t.member(n), "n = {n}");
        }
        let flat = u.normalize().unwrap();
        for n in 0..100 {
            assert_eq!(flat.member(n), u.member(n));
        }
    }

    #[test]
    fn spliced_of_equal_pieces_collapses() {
        let s = DensitySet::spliced(vec![4], vec![DensitySet::evens(), DensitySet::evens()]).unwrap();
        let t = s.union(&DensitySet::empty());
        assert_eq!(t, DensitySet::evens());
    }

    #[test]
    fn tail_form_ignores_finite_changes() {
        let a = ap(1, 3).symdiff(&DensitySet::finite([0, 1, 2, 50]));
        assert_eq!(a.tail_form().unwrap(), PeriodicSet::residue_class(1, 3).unwrap());
        let s = DensitySet::spliced(vec![1000], vec![DensitySet::naturals(), ap(0, 5)]).unwrap();
        assert_eq!(s.tail_form().unwrap(), PeriodicSet::residue_class(0, 5).unwrap());
    }
}
