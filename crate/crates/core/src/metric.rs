//! The upper-density pseudometric `d(A, B) = ν⁺(A △ B)`, the quotient by
//! null differences, and its order and lattice operations.
//!
//! Order and equivalence are decided only from exact densities; anything
//! weaker answers [`Ternary::Unknown`].

use std::fmt;

use num_traits::Zero;

use crate::density::{lower_density, upper_density, DensityEstimate};
use crate::rational::Rational;
use crate::sets::DensitySet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

impl Ternary {
    pub fn is_yes(self) -> bool {
        self == Ternary::Yes
    }

    pub fn and(self, other: Ternary) -> Ternary {
        match (self, other) {
            (Ternary::No, _) | (_, Ternary::No) => Ternary::No,
            (Ternary::Yes, Ternary::Yes) => Ternary::Yes,
            _ => Ternary::Unknown,
        }
    }
}

impl From<bool> for Ternary {
    fn from(b: bool) -> Self {
        if b {
            Ternary::Yes
        } else {
            Ternary::No
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Unknown => "unknown",
        })
    }
}

fn is_null(e: &DensityEstimate) -> Ternary {
    match e.exact() {
        Some(v) => Ternary::from(v.is_zero()),
        None => Ternary::Unknown,
    }
}

pub fn dist(a: &DensitySet, b: &DensitySet, window: u64) -> DensityEstimate {
    upper_density(&a.symdiff(b), window)
}

/// Exact distance, when one is available.
pub fn exact_dist(a: &DensitySet, b: &DensitySet, window: u64) -> Option<Rational> {
    dist(a, b, window).exact()
}

pub fn equivalent(a: &DensitySet, b: &DensitySet, window: u64) -> Ternary {
    is_null(&dist(a, b, window))
}

/// `[a] ≤ [b]` iff `ν⁺(a ∖ b) = 0`.
pub fn leq(a: &DensitySet, b: &DensitySet, window: u64) -> Ternary {
    is_null(&upper_density(&a.difference(b), window))
}

/// Membership in the family of sets that have an asymptotic density.
pub fn in_d(s: &DensitySet, window: u64) -> Ternary {
    match (upper_density(s, window), lower_density(s, window)) {
        (DensityEstimate::Exact(u), DensityEstimate::Exact(l)) => Ternary::from(u == l),
        _ => Ternary::Unknown,
    }
}

/// A class of sets at pseudodistance 0 from the representative. The
/// representative is kept as given; class identity is tested through `dist`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientClass {
    representative: DensitySet,
}

impl QuotientClass {
    pub fn new(representative: DensitySet) -> Self {
        Self { representative }
    }

    pub fn representative(&self) -> &DensitySet {
        &self.representative
    }

    pub fn upper_density(&self, window: u64) -> DensityEstimate {
        upper_density(&self.representative, window)
    }

    pub fn lower_density(&self, window: u64) -> DensityEstimate {
        lower_density(&self.representative, window)
    }

    pub fn same_class(&self, other: &QuotientClass, window: u64) -> Ternary {
        equivalent(&self.representative, &other.representative, window)
    }

    pub fn leq(&self, other: &QuotientClass, window: u64) -> Ternary {
        leq(&self.representative, &other.representative, window)
    }
}

pub fn join(a: &DensitySet, b: &DensitySet) -> QuotientClass {
    QuotientClass::new(a.union(b))
}

pub fn meet(a: &DensitySet, b: &DensitySet) -> QuotientClass {
    QuotientClass::new(a.intersect(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{exact_density, DEFAULT_WINDOW as W};
    use crate::rational::{int, ratio};

    fn ap(a: u64, m: u64) -> DensitySet {
        DensitySet::residue_class(a, m).unwrap()
    }

    #[test]
    fn dist_examples() {
        assert_eq!(
            dist(&DensitySet::evens(), &DensitySet::odds(), W),
            DensityEstimate::Exact(int(1))
        );
        assert_eq!(dist(&ap(0, 2), &ap(0, 4), W), DensityEstimate::Exact(ratio(1, 4)));
        let a = ap(1, 3);
        let b = a.union(&DensitySet::finite([2, 5, 11]));
        assert_eq!(dist(&a, &b, W), DensityEstimate::Exact(int(0)));
    }

    #[test]
    fn order_examples() {
        assert_eq!(leq(&ap(0, 4), &ap(0, 2), W), Ternary::Yes);
        assert_eq!(leq(&DensitySet::evens(), &DensitySet::odds(), W), Ternary::No);
        let a = ap(2, 5);
        assert_eq!(equivalent(&a, &a.symdiff(&DensitySet::finite([7])), W), Ternary::Yes);
    }

    #[test]
    fn lattice_examples() {
        let j = join(&ap(0, 2), &ap(0, 3));
        match j.representative() {
            DensitySet::Periodic(p) => {
                assert_eq!(p.period(), 6);
                assert_eq!(p.residues(), vec![0, 2, 3, 4]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(exact_density(j.representative()).unwrap(), ratio(2, 3));
        let a = ap(1, 7);
        assert_eq!(
            join(&a, &DensitySet::empty()).same_class(&QuotientClass::new(a.clone()), W),
            Ternary::Yes
        );
        assert_eq!(
            meet(&DensitySet::evens(), &DensitySet::odds()).same_class(&QuotientClass::new(DensitySet::empty()), W),
            Ternary::Yes
        );
    }

    #[test]
    fn in_d_examples() {
        assert_eq!(in_d(&ap(0, 5), W), Ternary::Yes);
        assert_eq!(in_d(&DensitySet::block(2, 0).unwrap(), W), Ternary::No);
        let primes = DensitySet::oracle("primes", |n| {
            n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
        });
        assert_eq!(in_d(&primes, 10_000), Ternary::Unknown);
    }

    #[test]
    fn block_order_is_unknown_when_inexact() {
        let b = DensitySet::block(2, 0).unwrap();
        assert_eq!(leq(&b, &DensitySet::evens(), 1 << 16), Ternary::No);
        let mixed = DensitySet::block(3, 0).unwrap();
        assert_eq!(leq(&b, &mixed, 1 << 16), Ternary::Unknown);
        assert_eq!(leq(&b, &b, W), Ternary::Yes);
        assert_eq!(dist(&b, &b, W), DensityEstimate::Exact(int(0)));
    }

    #[test]
    fn ternary_logic() {
        assert_eq!(Ternary::Yes.and(Ternary::Unknown), Ternary::Unknown);
        assert_eq!(Ternary::No.and(Ternary::Unknown), Ternary::No);
        assert_eq!(Ternary::Yes.and(Ternary::Yes), Ternary::Yes);
    }
}
