use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A sorted subset `I` of variable indices (0-based), naming the basis
/// element `dx_I` of forms or `∂x_I` of multivector fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExteriorIndex(u32);

impl ExteriorIndex {
    pub const EMPTY: ExteriorIndex = ExteriorIndex(0);

    pub fn from_indices(idx: &[usize]) -> Option<ExteriorIndex> {
        let mut bits = 0u32;
        for &i in idx {
            if i >= 32 || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(ExteriorIndex(bits))
    }

    pub fn single(i: usize) -> ExteriorIndex {
        ExteriorIndex(1 << i)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// `{0..m} \ I`.
    pub fn complement(self, m: usize) -> ExteriorIndex {
        let full = if m >= 32 { u32::MAX } else { (1u32 << m) - 1 };
        ExteriorIndex(full & !self.0)
    }

    /// `dx_a ∧ dx_b = sign · dx_{a ∪ b}`, or `None` when the indices overlap.
    pub fn wedge(self, other: ExteriorIndex) -> Option<(i8, ExteriorIndex)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each element of `self` passes over the elements of `other` that are smaller.
        let mut inversions = 0u32;
        for i in self.indices() {
            inversions += (other.0 & ((1u32 << i) - 1)).count_ones();
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, ExteriorIndex(self.0 | other.0)))
    }

    /// Sign of `dx_i ∧ dx_{I \ i} = sign · dx_I` for `i ∈ I`.
    pub fn extraction_sign(self, i: usize) -> i8 {
        debug_assert!(self.contains(i));
        let before = (self.0 & ((1u32 << i) - 1)).count_ones();
        if before.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn without(self, i: usize) -> ExteriorIndex {
        ExteriorIndex(self.0 & !(1 << i))
    }
}

/// Evaluation `dx_I(∂x_J)` on sorted bases.
pub fn contract(form: ExteriorIndex, field: ExteriorIndex) -> Result<i8> {
    if form.len() != field.len() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "cannot evaluate a {}-form on a {}-vector field",
            form.len(),
            field.len()
        )));
    }
    Ok(if form == field { 1 } else { 0 })
}

/// All `q`-subsets of `{0..m}` in lexicographic order of their sorted lists.
pub fn basis(m: usize, q: usize) -> Vec<ExteriorIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(start: usize, m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<ExteriorIndex>) {
        if cur.len() == q {
            out.push(ExteriorIndex::from_indices(cur).unwrap());
            return;
        }
        for i in start..m {
            if m - i < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, q, cur, out);
            cur.pop();
        }
    }
    if q <= m {
        rec(0, m, q, &mut cur, &mut out);
    }
    out
}

/// Position of `idx` in [`basis(m, idx.len())`](basis).
pub fn basis_position(m: usize, idx: ExteriorIndex) -> usize {
    basis(m, idx.len()).iter().position(|&b| b == idx).expect("index outside the ambient range")
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl fmt::Debug for ExteriorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}
