use super::{FieldCtx, FieldElem, FieldError};
use std::ops::Range;

/// The set of n-tuples whose coordinates in `J` range over the whole field
/// and whose other coordinates are nonzero, indexed in mixed radix.
#[derive(Clone, Debug)]
pub struct PointDomain {
    size: u64,
    affine: Vec<bool>,
    len: u64,
}

/// Enumerates `{x in F^n : x_i != 0 for i not in J}`; `j` holds 1-based indices.
pub fn enumerate_points(ctx: &FieldCtx, n: usize, j: &[usize]) -> Result<PointDomain, FieldError> {
    PointDomain::new(ctx.size(), n, j)
}

impl PointDomain {
    pub fn new(field_size: u64, n: usize, j: &[usize]) -> Result<Self, FieldError> {
        if j.iter().any(|&i| i == 0 || i > n) {
            return Err(FieldError::InvalidSubset(j.to_vec(), n));
        }
        let affine: Vec<bool> = (1..=n).map(|i| j.contains(&i)).collect();
        let len = affine
            .iter()
            .map(|&a| if a { field_size } else { field_size - 1 })
            .try_fold(1u64, |acc, r| acc.checked_mul(r))
            .unwrap_or(u64::MAX);
        Ok(PointDomain { size: field_size, affine, len })
    }

    /// (q^k)^{|J|} · (q^k − 1)^{n−|J|}.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.affine.len()
    }

    /// Writes the point with the given index into `out`.
    #[inline]
    pub fn point_into(&self, mut index: u64, out: &mut [FieldElem]) {
        for (slot, &affine) in out.iter_mut().zip(&self.affine) {
            if affine {
                *slot = FieldElem((index % self.size) as u32);
                index /= self.size;
            } else {
                let radix = self.size - 1;
                *slot = FieldElem((index % radix) as u32 + 1);
                index /= radix;
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        self.iter_range(0..self.len)
    }

    pub fn iter_range(&self, range: Range<u64>) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        range.map(move |i| {
            let mut v = vec![FieldElem::ZERO; self.affine.len()];
            self.point_into(i, &mut v);
            v
        })
    }

    /// Splits the index range into at most `parts` disjoint contiguous chunks.
    pub fn chunks(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let step = self.len.div_ceil(parts).max(1);
        (0..parts)
            .map(|i| (i * step).min(self.len)..((i + 1) * step).min(self.len))
            .filter(|r| !r.is_empty())
            .collect()
    }
}
