use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::ModuleOrder;
use crate::algebra::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Term {
    pub comp: u32,
    pub mon: Monomial,
    pub deg: i64,
    pub coef: Rational,
}

/// Module element stored as terms sorted descending in a [`ModuleOrder`].
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn from_components(comps: &[Polynomial], offset: usize, ord: &ModuleOrder) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            let comp = (i + offset) as u32;
            for (m, c) in p.terms() {
                terms.push(Term { comp, mon: *m, deg: ord.term_degree(comp, m), coef: c.clone() });
            }
        }
        let mut v = Vector { terms };
        v.sort(ord);
        v
    }

    pub fn sort(&mut self, ord: &ModuleOrder) {
        self.terms.sort_by(|a, b| ord.cmp(b.comp, &b.mon, b.deg, a.comp, &a.mon, a.deg));
    }

    /// Components `lo..hi`, reindexed from 0.
    pub fn components(&self, lo: usize, hi: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = (lo..hi).map(|_| Vec::new()).collect();
        for t in &self.terms {
            let c = t.comp as usize;
            if c >= lo && c < hi {
                buckets[c - lo].push((t.mon, t.coef.clone()));
            }
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn ecart(&self) -> i64 {
        let top = self.terms.iter().map(|t| t.deg).max().unwrap_or(0);
        top - self.terms.first().map_or(0, |t| t.deg)
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coef.is_one() {
                let inv = t.coef.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
    }

    /// `self - c · x^m · g`.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, mdeg: i64, g: &Vector, ord: &ModuleOrder) -> Vector {
        let (a, b) = (&self.terms, &g.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| (t.mon.mul(m), t.deg + mdeg);
        let mut next_b = if j < b.len() { Some(shifted(&b[j])) } else { None };
        while i < a.len() {
            let Some((bm, bd)) = next_b else { break };
            let bt = &b[j];
            match ord.cmp(a[i].comp, &a[i].mon, a[i].deg, bt.comp, &bm, bd) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { comp: bt.comp, mon: bm, deg: bd, coef: -(c * &bt.coef) });
                    j += 1;
                    next_b = if j < b.len() { Some(shifted(&b[j])) } else { None };
                }
                Ordering::Equal => {
                    let coef = &a[i].coef - c * &bt.coef;
                    if !coef.is_zero() {
                        out.push(Term { comp: a[i].comp, mon: a[i].mon, deg: a[i].deg, coef });
                    }
                    i += 1;
                    j += 1;
                    next_b = if j < b.len() { Some(shifted(&b[j])) } else { None };
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            let (bm, bd) = shifted(&b[j]);
            out.push(Term { comp: b[j].comp, mon: bm, deg: bd, coef: -(c * &b[j].coef) });
            j += 1;
        }
        Vector { terms: out }
    }

    pub fn any_in_range(&self, lo: u32, hi: u32) -> bool {
        self.terms.iter().any(|t| t.comp >= lo && t.comp < hi)
    }
}
