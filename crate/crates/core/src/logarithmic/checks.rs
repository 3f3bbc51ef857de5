//! Structural identities between log modules for different equations.

use alloc::vec::Vec;

use super::forms::differential;
use super::problem::{wedge_columns, LogProblem};
use super::residue::FractionalIdeal;
use crate::algebra::{binomial, Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::gb::{determinant, module_contains, module_equal, FreeModuleElement, Matrix};

fn product(ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::one(), |a, p| &a * p)
}

/// The hypersurface `D = {h_1 ⋯ h_k = 0}` as a problem with one equation.
pub fn divisor_problem(ctx: &RingContext, h_seq: &[Polynomial]) -> Result<LogProblem> {
    LogProblem::new(ctx, alloc::vec![product(h_seq)], None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCheck {
    /// `h Ω¹(log D) = Σ_j ĥ_j · h_j Ω¹(log D_j)`.
    pub sum_equal: bool,
    /// `h Ω^q(log D) ⊆ h Ω^q(log C)` for every `q`.
    pub divisor_inside: bool,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.sum_equal && self.divisor_inside
    }
}

pub fn decomposition_check(ctx: &RingContext, h_seq: &[Polynomial]) -> Result<DecompositionCheck> {
    let m = ctx.nvars();
    let d = divisor_problem(ctx, h_seq)?;
    let full = d.log_forms_numerator(1)?.gens;
    let mut parts = Matrix::new(m);
    for (j, hj) in h_seq.iter().enumerate() {
        let others: Vec<Polynomial> =
            h_seq.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, p)| p.clone()).collect();
        let cofactor = product(&others);
        let dj = LogProblem::new(ctx, alloc::vec![hj.clone()], None)?.log_forms_numerator(1)?;
        for c in dj.gens.columns() {
            parts.push(c.scale(&cofactor));
        }
    }
    let sum_equal = module_equal(ctx, &full, &parts)?;
    let c = LogProblem::new(ctx, h_seq.to_vec(), None)?;
    let mut divisor_inside = true;
    for q in 0..=m {
        let dq = d.log_forms_numerator(q)?.gens;
        let cq = c.log_forms_numerator(q)?.gens;
        if !module_contains(ctx, &cq, &dq)? {
            divisor_inside = false;
            break;
        }
    }
    Ok(DecompositionCheck { sum_equal, divisor_inside })
}

/// `f' = A f` for a square matrix `A`.
pub fn transform_equations(a: &Matrix, f: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(a.apply(&FreeModuleElement(f.to_vec()))?.0)
}

#[derive(Clone, Debug)]
pub struct ResidueComparison {
    /// `res_C(Ω^k(log D_f))`, over the residue denominator of `C`.
    pub divisor_residues: FractionalIdeal,
    pub residue_module: FractionalIdeal,
    pub contained: bool,
    pub equal: bool,
}

/// Compares `res_C(Ω^k(log D_f))` with `R_C` for the equations `f = A h` of
/// `P`, where `D_f` is the hypersurface `f_1 ⋯ f_k = 0`.
pub fn divisor_residue_comparison(p: &LogProblem, a: &Matrix) -> Result<ResidueComparison> {
    let ctx = p.ctx();
    let f = transform_equations(a, p.equations())?;
    let pf = LogProblem::new(ctx, f.clone(), None)?;
    let map = pf.residue_map()?;
    let residue_module = pf.residue_module_with(&map)?;
    let divisor = divisor_problem(ctx, &f)?.log_forms_numerator(pf.codim())?;
    let mut nums = Vec::new();
    for c in divisor.gens.columns() {
        nums.push(map.residue(c)?.numerator);
    }
    let divisor_residues = FractionalIdeal::new(nums, map.denominator().clone(), pf.ideal_c().clone());
    let contained = residue_module.contains(ctx, &divisor_residues)?;
    let equal = contained && divisor_residues.contains(ctx, &residue_module)?;
    Ok(ResidueComparison { divisor_residues, residue_module, contained, equal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationIndependence {
    pub determinant: Polynomial,
    /// `h Ω^q(log C, h) = f Ω^q(log C, f)` for `k ≤ q ≤ m`.
    pub modules_equal: bool,
    /// `res_h(α/h) = det(A) res_f(α/f)` on every generator.
    pub residues_scale: bool,
}

impl EquationIndependence {
    pub fn holds(&self) -> bool {
        self.modules_equal && self.residues_scale
    }
}

/// Compares the problem for `h = P.equations()` with the one for `f = A h`.
pub fn equation_independence_check(p: &LogProblem, a: &Matrix) -> Result<EquationIndependence> {
    let ctx = p.ctx();
    let det = determinant(a)?;
    if !det.is_local_unit() {
        return Err(Error::SingularTransition);
    }
    let f = transform_equations(a, p.equations())?;
    let pf = LogProblem::new(ctx, f, Some(p.x_generators().to_vec()))?;
    let mut modules_equal = true;
    for q in p.codim()..=p.nvars() {
        let a = p.log_forms_numerator(q)?.gens;
        let b = pf.log_forms_numerator(q)?.gens;
        if !module_equal(ctx, &a, &b)? {
            modules_equal = false;
            break;
        }
    }
    let (rh, rf) = (p.residue_map()?, pf.residue_map()?);
    let mut residues_scale = true;
    for alpha in pf.log_forms_numerator(p.codim())?.gens.columns() {
        let lhs = rh.residue(alpha)?;
        let rhs = rf.residue(alpha)?.scaled(&det);
        if !lhs.equals(&rhs, ctx, p.ideal_of_x())? {
            residues_scale = false;
            break;
        }
    }
    Ok(EquationIndependence { determinant: det, modules_equal, residues_scale })
}

/// For `C = (x_1, h_2, …, h_k)` with `h_i` free of `x_1`:
/// `h Ω^q(log C) = h' Ω^{q-1}(log C') ∧ dx_1 + I_C Ω^q` for `q ≥ 1`, where
/// `C' = (h_2, …, h_k)` and `h' = h_2 ⋯ h_k`.
pub fn smooth_splitting_check(ctx: &RingContext, rest: &[Polynomial], q: usize) -> Result<bool> {
    let m = ctx.nvars();
    if q == 0 || q > m || rest.iter().any(|h| h.terms().iter().any(|(mon, _)| mon.exponent(0) > 0)) {
        return Err(Error::InvalidInput("splitting needs q ≥ 1 and equations free of the first variable".into()));
    }
    let mut eqs = alloc::vec![ctx.var(0)];
    eqs.extend(rest.iter().cloned());
    let c = LogProblem::new(ctx, eqs, None)?;
    let lhs = c.log_forms_numerator(q)?.gens;
    let dx1 = differential(&ctx.var(0), m);
    let split = if rest.is_empty() {
        // C' is the whole space: its log (q-1)-forms are all holomorphic forms.
        wedge_columns(&Matrix::identity(binomial(m, q - 1)), q - 1, &dx1, 1, m)
    } else {
        let cp = LogProblem::new(ctx, rest.to_vec(), None)?;
        wedge_columns(&cp.log_forms_numerator(q - 1)?.gens, q - 1, &dx1, 1, m)
    };
    let rhs = split.hconcat(&c.ideal_c().times_free(binomial(m, q)))?;
    module_equal(ctx, &lhs, &rhs)
}
