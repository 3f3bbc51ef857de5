//! Value sets of `O_C`-modules along the branches, by linear algebra on
//! truncated series.

use alloc::vec::Vec;

use num_traits::Zero;

use super::branch::{BranchParametrization, Series, Value};
use crate::algebra::{rank, Monomial, Polynomial, Rational, MAX_VARS};
use crate::error::{Error, Result};

/// Monomials whose value on some branch is below `bound`.
fn low_monomials(orders: &[Vec<Option<u32>>], nvars: usize, bound: u32) -> Vec<Monomial> {
    fn go(
        j: usize,
        exps: &mut [u16; MAX_VARS],
        vals: Vec<Option<u32>>,
        orders: &[Vec<Option<u32>>],
        nvars: usize,
        bound: u32,
        out: &mut Vec<Monomial>,
    ) {
        if j == nvars {
            out.push(Monomial::from_exponents(&exps[..nvars]));
            return;
        }
        let mut vals = vals;
        loop {
            go(j + 1, exps, vals.clone(), orders, nvars, bound, out);
            let next: Vec<Option<u32>> = vals.iter().zip(&orders[j]).map(|(v, o)| Some((*v)? + (*o)?)).collect();
            if !next.iter().any(|v| matches!(v, Some(v) if *v < bound)) {
                break;
            }
            exps[j] += 1;
            vals = next;
        }
        exps[j] = 0;
    }
    let mut out = Vec::new();
    let start = alloc::vec![Some(0); orders.first().map_or(0, Vec::len)];
    go(0, &mut [0u16; MAX_VARS], start, orders, nvars, bound, &mut out);
    out
}

/// Decides `v ∈ val(M)` for `M = Σ b_j O_C` and `v` in `[0, bound)^p`.
///
/// The span of `{b_j · x^a}` is projected onto the coefficients of
/// `t_i^e`, `e < bound`; `v` is a value iff each single coefficient
/// `t_i^{v_i}` is independent of the constraints `e < v_i` on all branches.
#[derive(Clone, Debug)]
pub struct ValueSet {
    p: usize,
    bound: u32,
    /// Basis of the projected span, one coefficient vector per element.
    basis: Vec<Vec<Rational>>,
}

impl ValueSet {
    pub fn new(param: &BranchParametrization, gens: &[Polynomial], bound: u32) -> Result<ValueSet> {
        let (p, m) = (param.branch_count(), param.nvars());
        if !param.is_exact() && param.truncation() < bound {
            return Err(Error::Undetermined { truncation: param.truncation() });
        }
        let orders: Vec<Vec<Option<u32>>> = (0..m)
            .map(|j| {
                (0..p)
                    .map(|i| match param.substitute(i, &Polynomial::var(j)).order() {
                        Value::Finite(v) => Some(v as u32),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        let width = p * bound as usize;
        let project = |s: &[Series]| -> Vec<Rational> {
            let mut v = Vec::with_capacity(width);
            for series in s {
                v.extend((0..bound).map(|e| series.coefficient(e)));
            }
            v
        };
        let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut basis = Vec::new();
        for g in gens {
            for mon in low_monomials(&orders, m, bound) {
                let term = Polynomial::term(mon, Rational::from_integer(1.into()));
                let prod = g * &term;
                let series: Vec<Series> = (0..p).map(|i| param.substitute(i, &prod)).collect();
                let mut v = project(&series);
                for (piv, row) in &echelon {
                    if !v[*piv].is_zero() {
                        let f = &v[*piv] / &row[*piv];
                        for (a, b) in v.iter_mut().zip(row) {
                            *a -= &f * b;
                        }
                    }
                }
                if let Some(piv) = v.iter().position(|c| !c.is_zero()) {
                    echelon.push((piv, v.clone()));
                    basis.push(v);
                }
                if basis.len() == width {
                    return Ok(ValueSet { p, bound, basis });
                }
            }
        }
        Ok(ValueSet { p, bound, basis })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn rank_on(&self, rows: &[usize]) -> usize {
        rank(self.basis.iter().map(|b| rows.iter().map(|&r| b[r].clone()).collect()).collect())
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.p {
            return Err(Error::ShapeMismatch("value vector length differs from the branch count".into()));
        }
        if v.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        if v.iter().any(|&x| x >= self.bound as i64) {
            return Err(Error::NotCertified { bound: self.bound });
        }
        let n = self.bound as usize;
        let below: Vec<usize> = (0..self.p).flat_map(|i| (0..v[i] as usize).map(move |e| i * n + e)).collect();
        let base = self.rank_on(&below);
        for i in 0..self.p {
            let mut rows = below.clone();
            rows.push(i * n + v[i] as usize);
            if self.rank_on(&rows) == base {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All values in the box `[0, bound)^p`, in lexicographic order.
    pub fn members(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        for v in box_points(self.p, 0, self.bound as i64 - 1) {
            if self.contains(&v)? {
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Integer points of `[lo, hi]^p`.
pub(crate) fn box_points(p: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    let mut v = alloc::vec![lo; p];
    loop {
        out.push(v.clone());
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
        }
    }
}

/// The conductor exponent `γ` with the box it was certified on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorData {
    pub gamma: Vec<i64>,
    /// `[γ, γ + B·1]` lies in `val(O_C)` and each `γ - e_i` has a gap in
    /// `[γ - e_i, γ - e_i + B·1]`.
    pub bound: u32,
}

fn box_inside(set: &ValueSet, corner: &[i64], side: i64) -> Result<bool> {
    for d in box_points(corner.len(), 0, side) {
        let v: Vec<i64> = corner.iter().zip(&d).map(|(a, b)| a + b).collect();
        if !set.contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ = min{α : α + ℕ^p ⊆ val(O_C)}`, searched over `α ∈ [0, B]^p`.
///
/// For one branch the box test is exact as soon as `B + 1` reaches the
/// multiplicity: a run of that many consecutive values never ends.
pub fn conductor(param: &BranchParametrization, bound: u32) -> Result<ConductorData> {
    let p = param.branch_count();
    let set = ValueSet::new(param, &[Polynomial::one()], 2 * bound + 1)?;
    let b = bound as i64;
    let mut good = Vec::new();
    for alpha in box_points(p, 0, b) {
        if box_inside(&set, &alpha, b)? {
            good.push(alpha);
        }
    }
    if good.is_empty() {
        return Err(Error::NotCertified { bound });
    }
    let gamma: Vec<i64> = (0..p).map(|i| good.iter().map(|a| a[i]).min().unwrap()).collect();
    if !good.contains(&gamma) {
        return Err(Error::NotCertified { bound });
    }
    for i in 0..p {
        if gamma[i] > 0 {
            let mut lower = gamma.clone();
            lower[i] -= 1;
            if box_inside(&set, &lower, b)? {
                return Err(Error::Inconsistent("conductor is not minimal".into()));
            }
        }
    }
    Ok(ConductorData { gamma, bound })
}
