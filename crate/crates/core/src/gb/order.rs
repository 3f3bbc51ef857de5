use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::{Monomial, RingContext, TermOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Global,
    Local,
    /// Order on `K[x, t]^r` used to compute local standard bases by
    /// homogenization: total degree first, then the local order on the
    /// `x`-part. The variable `t` sits at index `nvars`.
    Homogenized,
}

/// Monomial order on a free module `R^rank`.
///
/// Components `< split` form a block that dominates the rest (elimination
/// order); within a block terms are compared by shifted weighted degree in the
/// ring's sense, then reverse lexicographically, then by component with lower
/// indices larger.
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub kind: Kind,
    pub nvars: usize,
    pub weights: Vec<i64>,
    pub shifts: Vec<i64>,
    pub split: u32,
}

impl ModuleOrder {
    pub fn new(ctx: &RingContext, rank: usize) -> ModuleOrder {
        ModuleOrder {
            kind: match ctx.order() {
                TermOrder::Global => Kind::Global,
                TermOrder::Local => Kind::Local,
            },
            nvars: ctx.nvars(),
            weights: ctx.weights().to_vec(),
            shifts: alloc::vec![0; rank],
            split: 0,
        }
    }

    pub fn with_block(mut self, split: usize, shifts: Vec<i64>) -> ModuleOrder {
        debug_assert_eq!(shifts.len(), self.shifts.len());
        self.split = split as u32;
        self.shifts = shifts;
        self
    }

    /// The homogenized companion of a local order.
    pub fn homogenized(&self) -> ModuleOrder {
        debug_assert_eq!(self.kind, Kind::Local);
        let mut weights = self.weights.clone();
        weights.push(1);
        ModuleOrder { kind: Kind::Homogenized, weights, ..self.clone() }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Well-founded orders, where plain division terminates.
    pub fn is_global(&self) -> bool {
        self.kind != Kind::Local
    }

    #[inline]
    pub fn mon_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    #[inline]
    pub fn term_degree(&self, comp: u32, m: &Monomial) -> i64 {
        self.mon_degree(m) + self.shifts[comp as usize]
    }

    /// Compares `(comp, mon)` pairs given their shifted degrees.
    #[inline]
    pub fn cmp(&self, ca: u32, ma: &Monomial, da: i64, cb: u32, mb: &Monomial, db: i64) -> Ordering {
        let (mut da, mut db) = (da, db);
        if self.kind == Kind::Homogenized {
            if da != db {
                return da.cmp(&db);
            }
            let t = self.nvars;
            da -= ma.exponent(t) as i64;
            db -= mb.exponent(t) as i64;
        }
        if self.split > 0 {
            let (ta, tb) = (ca < self.split, cb < self.split);
            if ta != tb {
                return if ta { Ordering::Greater } else { Ordering::Less };
            }
        }
        let by_deg = match self.kind {
            Kind::Global => da.cmp(&db),
            Kind::Local | Kind::Homogenized => db.cmp(&da),
        };
        if by_deg != Ordering::Equal {
            return by_deg;
        }
        for i in (0..self.nvars).rev() {
            let (x, y) = (ma.exponent(i), mb.exponent(i));
            if x != y {
                return y.cmp(&x);
            }
        }
        cb.cmp(&ca)
    }
}
