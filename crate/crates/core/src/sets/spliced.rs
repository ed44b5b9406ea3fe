use super::{BoolOp, DensitySet, SetError};

/// A set stitched together from pieces: piece `k` governs the points `m`
/// with `cuts[k−1] < m <= cuts[k]` (with `cuts[−1] = −1`), and the last
/// piece governs everything above the final cut.
#[derive(Debug, Clone, PartialEq)]
pub struct SplicedSet {
    pub(crate) cuts: Vec<u64>,
    pub(crate) pieces: Vec<DensitySet>,
}

impl SplicedSet {
    pub fn new(cuts: Vec<u64>, pieces: Vec<DensitySet>) -> Result<Self, SetError> {
        if pieces.len() != cuts.len() + 1 || cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SetError::InvalidSplice);
        }
        Ok(Self { cuts, pieces })
    }

    pub fn cuts(&self) -> &[u64] {
        &self.cuts
    }

    pub fn pieces(&self) -> &[DensitySet] {
        &self.pieces
    }

    pub fn tail(&self) -> &DensitySet {
        self.pieces.last().expect("at least one piece")
    }

    pub fn piece_index(&self, m: u64) -> usize {
        self.cuts.partition_point(|&c| c < m)
    }

    pub fn member(&self, m: u64) -> bool {
        self.pieces[self.piece_index(m)].member(m)
    }

    pub fn prefix_count(&self, n: u64) -> u64 {
        let mut total = 0;
        let mut lo = 0u64;
        for (k, piece) in self.pieces.iter().enumerate() {
            if n <= lo {
                break;
            }
            let hi = self.cuts.get(k).map_or(u64::MAX, |c| c + 1);
            total += piece.prefix_count(n.min(hi)) - piece.prefix_count(lo);
            lo = hi;
        }
        total
    }

    fn piece_for_segment(set: &DensitySet, first_point: u64) -> &DensitySet {
        match set {
            DensitySet::Spliced(s) => &s.pieces[s.piece_index(first_point)],
            other => other,
        }
    }

    /// Pointwise Boolean combination where at least one side is spliced.
    /// The result is cut at the union of both cut lists.
    pub(crate) fn combine(a: &DensitySet, b: &DensitySet, op: BoolOp) -> DensitySet {
        let mut cuts: Vec<u64> = [a, b]
            .iter()
            .filter_map(|s| match s {
                DensitySet::Spliced(sp) => Some(sp.cuts.iter().copied()),
                _ => None,
            })
            .flatten()
            .collect();
        cuts.sort_unstable();
        cuts.dedup();
        let pieces = (0..=cuts.len())
            .map(|k| {
                let first = if k == 0 { 0 } else { cuts[k - 1] + 1 };
                let pa = Self::piece_for_segment(a, first);
                let pb = Self::piece_for_segment(b, first);
                pa.binary(op, pb)
            })
            .collect();
        Self::assemble(cuts, pieces)
    }

    pub(crate) fn map_pieces(&self, f: impl Fn(&DensitySet) -> DensitySet) -> DensitySet {
        Self::assemble(self.cuts.clone(), self.pieces.iter().map(f).collect())
    }

    /// Merges adjacent identical pieces; a single remaining piece is returned bare.
    pub(crate) fn assemble(cuts: Vec<u64>, pieces: Vec<DensitySet>) -> DensitySet {
        let mut out_cuts = Vec::with_capacity(cuts.len());
        let mut out_pieces: Vec<DensitySet> = Vec::with_capacity(pieces.len());
        for (k, piece) in pieces.into_iter().enumerate() {
            if out_pieces.last() == Some(&piece) {
                if let Some(last) = out_cuts.last_mut() {
                    *last = cuts.get(k).copied().unwrap_or(*last);
                }
                if k == cuts.len() {
                    out_cuts.pop();
                }
                continue;
            }
            out_pieces.push(piece);
            if k < cuts.len() {
                out_cuts.push(cuts[k]);
            }
        }
        if out_pieces.len() == 1 {
            return out_pieces.pop().expect("one piece");
        }
        DensitySet::Spliced(SplicedSet {
            cuts: out_cuts,
            pieces: out_pieces,
        })
    }
}
