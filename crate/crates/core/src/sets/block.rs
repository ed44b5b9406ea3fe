use super::SetError;
use crate::rational::Rational;

/// Union of the geometric intervals `[ρ^{2k+phase}, ρ^{2k+1+phase})`, `k ≥ 0`.
///
/// The canonical example of a set without asymptotic density: the upper
/// density is `ρ/(ρ+1)` and the lower density is `1/(ρ+1)` for either phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSet {
    base: u64,
    phase: u8,
}

impl BlockSet {
    pub fn new(base: u64, phase: u8) -> Result<Self, SetError> {
        if base < 2 {
            return Err(SetError::InvalidBlockBase(base));
        }
        if phase > 1 {
            return Err(SetError::InvalidBlockPhase(phase));
        }
        Ok(Self { base, phase })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Largest `e` with `ρ^e <= n`; `n >= 1`.
    fn exponent(&self, n: u64) -> u32 {
        let mut e = 0;
        let mut p = u128::from(self.base);
        while p <= u128::from(n) {
            p *= u128::from(self.base);
            e += 1;
        }
        e
    }

    pub fn member(&self, n: u64) -> bool {
        n >= 1 && self.exponent(n) % 2 == u32::from(self.phase)
    }

    pub fn prefix_count(&self, n: u64) -> u64 {
        let n = u128::from(n);
        let rho = u128::from(self.base);
        let mut start = if self.phase == 0 { 1u128 } else { rho };
        let mut total = 0u128;
        while start < n {
            let end = start * rho;
            total += end.min(n) - start;
            start = end * rho;
        }
        total as u64
    }

    /// Points `ρ^m` (plus 1 for `m = 0`) up to `limit`: membership is constant
    /// between consecutive boundaries.
    pub fn boundaries(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p = 1u128;
        while p <= u128::from(limit) {
            out.push(p as u64);
            p *= u128::from(self.base);
        }
        out
    }

    pub fn upper_density(&self) -> Rational {
        let rho = i128::from(self.base);
        Rational::new(rho, rho + 1)
    }

    pub fn lower_density(&self) -> Rational {
        let rho = i128::from(self.base);
        Rational::new(1, rho + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_by_interval() {
        let b = BlockSet::new(2, 0).unwrap();
        let members: Vec<u64> = (0..20).filter(|&n| b.member(n)).collect();
        assert_eq!(members, vec![1, 4, 5, 6, 7, 16, 17, 18, 19]);
        let b1 = BlockSet::new(2, 1).unwrap();
        let members: Vec<u64> = (0..20).filter(|&n| b1.member(n)).collect();
        assert_eq!(members, vec![2, 3, 8, 9, 10, 11, 12, 13, 14, 15]);
    }

    #[test]
    fn prefix_count_agrees_with_member() {
        for base in [2, 3, 5] {
            for phase in [0, 1] {
                let b = BlockSet::new(base, phase).unwrap();
                let mut count = 0;
                for n in 0..3000 {
                    assert_eq!(b.prefix_count(n), count, "ρ={base} phase={phase} n={n}");
                    count += u64::from(b.member(n));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BlockSet::new(1, 0).is_err());
        assert!(BlockSet::new(2, 2).is_err());
    }
}
