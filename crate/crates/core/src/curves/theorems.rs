//! The ω₀ generator of a quasi-homogeneous complete intersection curve and
//! the statements about it, each as a computable check.

use alloc::vec::Vec;

use super::branch::{BranchParametrization, Value, ValueVector};
use super::values::{box_points, conductor, ValueSet};
use crate::algebra::{basis_position, binomial, rat, ExteriorIndex, Polynomial};
use crate::error::{Error, Result};
use crate::gb::{module_equal, FreeModuleElement, Matrix, PresentedModule};
use crate::logarithmic::{hat_form, wedge_of_differentials, Fraction, FractionalIdeal, LogProblem};
use crate::resolution::betti;

/// Every equation is weighted homogeneous for the ring weights.
pub fn is_quasi_homogeneous(p: &LogProblem) -> Result<bool> {
    for f in p.equations() {
        if f.weighted_degree(p.ctx())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No equation has a linear term, so `m` is the embedding dimension.
pub fn has_embedding_dimension(p: &LogProblem) -> bool {
    p.equations().iter().all(|f| f.terms().iter().all(|(m, _)| m.total_degree() >= 2))
}

fn require_curve(p: &LogProblem) -> Result<()> {
    if p.codim() + 1 != p.nvars() || !p.x_is_c() {
        return Err(Error::InvalidInput("expected a complete intersection curve".into()));
    }
    Ok(())
}

/// Position of `dx̂_i` in the basis of `(m-1)`-forms.
fn hat_position(m: usize, i: usize) -> usize {
    let full = ExteriorIndex::from_indices(&(0..m).collect::<Vec<_>>()).unwrap();
    basis_position(m, full.without(i))
}

/// `Σ (-1)^{i-1} w_i x_i dx̂_i`, the numerator of `ω₀`, after checking that
/// it is multi-logarithmic.
pub fn omega0(p: &LogProblem) -> Result<FreeModuleElement> {
    if !is_quasi_homogeneous(p)? {
        return Err(Error::NotQuasiHomogeneous);
    }
    let ctx = p.ctx();
    let coeffs: Vec<Polynomial> = (0..p.nvars())
        .map(|i| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            ctx.var(i).scale(&rat(s * ctx.weights()[i]))
        })
        .collect();
    let w = hat_form(&coeffs);
    if !p.log_forms_numerator(p.nvars() - 1)?.contains(ctx, &w)? {
        return Err(Error::Inconsistent("ω₀ is not multi-logarithmic".into()));
    }
    Ok(w)
}

/// `res_C(ω₀) = y / g` with `g = Σ c_i J_i` and `y = Σ (-1)^{i-1} c_i w_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega0Residue {
    /// `c_i`, indexed by the removed column `i`.
    pub coefficients: Vec<i64>,
    pub y: Polynomial,
    pub g: Polynomial,
}

impl Omega0Residue {
    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.y.clone(), self.g.clone())
    }
}

/// `J_i`, the minor without column `i`, for `i = 1, …, m`.
pub fn hat_minors(p: &LogProblem) -> Vec<Polynomial> {
    let m = p.nvars();
    let minors = p.jacobian_minors();
    (0..m).map(|i| minors[hat_position(m, i)].clone()).collect()
}

pub fn residue_omega0(p: &LogProblem) -> Result<Omega0Residue> {
    require_curve(p)?;
    if !is_quasi_homogeneous(p)? {
        return Err(Error::NotQuasiHomogeneous);
    }
    let (m, ctx) = (p.nvars(), p.ctx());
    let (full, g) = p.admissible_denominator(0)?;
    let coefficients: Vec<i64> = (0..m).map(|i| full[hat_position(m, i)]).collect();
    let y = (0..m).fold(Polynomial::zero(), |acc, i| {
        let s = if i % 2 == 0 { 1 } else { -1 };
        &acc + &ctx.var(i).scale(&rat(s * coefficients[i] * ctx.weights()[i]))
    });
    Ok(Omega0Residue { coefficients, y, g })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub gamma: Vec<i64>,
    pub conductor_bound: u32,
    pub coordinate_values: Vec<ValueVector>,
    pub minor_values: Vec<ValueVector>,
    pub residue_value: ValueVector,
    /// The closed formula agrees with the generic residue solve.
    pub pipelines_agree: bool,
    /// `val(J_i) = γ + val(x_i) - 1` for every `i`.
    pub minors_match: bool,
    /// `val(res ω₀) = 1 - γ`.
    pub residue_matches: bool,
    /// Every generator of `R_C` has value at least `1 - γ`.
    pub infimum_attained: bool,
}

impl ValuationReport {
    pub fn holds(&self) -> bool {
        self.pipelines_agree && self.minors_match && self.residue_matches && self.infimum_attained
    }
}

fn shifted(v: &ValueVector, by: &[i64]) -> ValueVector {
    v.add(&ValueVector(by.iter().map(|&b| Value::Finite(b)).collect()))
}

fn check_parametrization(p: &LogProblem, param: &BranchParametrization) -> Result<()> {
    if param.nvars() != p.nvars() {
        return Err(Error::ShapeMismatch("parametrization and ring have different numbers of variables".into()));
    }
    if !param.annihilates(p.equations()) {
        return Err(Error::InvalidInput("the parametrization does not lie on the curve".into()));
    }
    Ok(())
}

pub fn val_identity_check(p: &LogProblem, param: &BranchParametrization, bound: u32) -> Result<ValuationReport> {
    check_parametrization(p, param)?;
    let ctx = p.ctx();
    let res = residue_omega0(p)?;
    let w = omega0(p)?;
    let generic = p.residue_map_with(res.g.clone()).residue(&w)?;
    let pipelines_agree = generic.equals(&res.fraction(), ctx, p.ideal_c())?;
    let cond = conductor(param, bound)?;
    let gamma_minus_one: Vec<i64> = cond.gamma.iter().map(|g| g - 1).collect();
    let coordinate_values =
        (0..p.nvars()).map(|i| param.determined_valuation(&ctx.var(i))).collect::<Result<Vec<_>>>()?;
    let minor_values = hat_minors(p).iter().map(|j| param.determined_valuation(j)).collect::<Result<Vec<_>>>()?;
    let minors_match = coordinate_values.iter().zip(&minor_values).all(|(x, j)| shifted(x, &gamma_minus_one) == *j);
    let residue_value = param.fraction_valuation(&res.fraction())?;
    let floor: Vec<i64> = cond.gamma.iter().map(|g| 1 - g).collect();
    let floor_vec = ValueVector(floor.iter().map(|&v| Value::Finite(v)).collect());
    let residue_matches = residue_value == floor_vec;
    let rc = p.residue_module_with(&p.residue_map_with(res.g.clone()))?;
    let mut infimum_attained = true;
    for b in rc.numerators() {
        let v = param.fraction_valuation(&Fraction::new(b.clone(), rc.denominator().clone()))?;
        infimum_attained &= floor_vec.le(&v).unwrap_or(false);
    }
    Ok(ValuationReport {
        gamma: cond.gamma,
        conductor_bound: cond.bound,
        coordinate_values,
        minor_values,
        residue_value,
        pipelines_agree,
        minors_match,
        residue_matches,
        infimum_attained,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    /// `R_C = O_C + O_C res(ω₀)`.
    pub generated: bool,
    pub one_alone_insufficient: bool,
    pub omega0_alone_insufficient: bool,
    /// `ω₀`, `dh_1 ∧ … ∧ dh_{m-1}` and `h_i dx̂_j` generate `h Ω^{m-1}(log C)`.
    pub forms_generated: bool,
    pub generating_set_size: usize,
}

impl GenerationReport {
    pub fn holds(&self) -> bool {
        self.generated && self.one_alone_insufficient && self.omega0_alone_insufficient && self.forms_generated
    }
}

fn is_smooth(p: &LogProblem) -> bool {
    p.jacobian_minors().iter().any(Polynomial::is_local_unit)
}

/// The generating family `ω₀, dh, h_i dx̂_j` of `h Ω^{m-1}(log C)`.
pub fn generating_family(p: &LogProblem) -> Result<Matrix> {
    let m = p.nvars();
    let rank = binomial(m, m - 1);
    let mut gens = Matrix::new(rank);
    gens.push(omega0(p)?);
    gens.push(wedge_of_differentials(p.equations(), m));
    for h in p.equations() {
        for j in 0..m {
            let mut v = FreeModuleElement::zero(rank);
            v.0[hat_position(m, j)] = h.clone();
            gens.push(v);
        }
    }
    Ok(gens)
}

pub fn rc_generation_check(p: &LogProblem) -> Result<GenerationReport> {
    require_curve(p)?;
    if is_smooth(p) {
        return Err(Error::InvalidInput("the curve is smooth".into()));
    }
    let ctx = p.ctx();
    let res = residue_omega0(p)?;
    let rc = p.residue_module_with(&p.residue_map_with(res.g.clone()))?;
    let ic = p.ideal_c().clone();
    let pair = FractionalIdeal::new(alloc::vec![res.g.clone(), res.y.clone()], res.g.clone(), ic.clone());
    let one = FractionalIdeal::new(alloc::vec![res.g.clone()], res.g.clone(), ic.clone());
    let w0 = FractionalIdeal::new(alloc::vec![res.y.clone()], res.g.clone(), ic);
    let family = generating_family(p)?;
    let forms = p.log_forms_numerator(p.nvars() - 1)?.gens;
    Ok(GenerationReport {
        generated: rc.equals(ctx, &pair)?,
        one_alone_insufficient: !one.contains(ctx, &rc)?,
        omega0_alone_insufficient: !w0.contains(ctx, &rc)?,
        forms_generated: module_equal(ctx, &family, &forms)?,
        generating_set_size: family.ncols(),
    })
}

/// `b_p(R_C) = C(m-1,p) + C(m,p)` for `p ≤ m-2` and `b_{m-1} = m`.
pub fn expected_residue_betti(m: usize) -> Vec<usize> {
    let mut b: Vec<usize> = (0..=m - 2).map(|p| binomial(m - 1, p) + binomial(m, p)).collect();
    b.push(m);
    b
}

/// `b_j = m C(m-1,j+1) + C(m-1,j) + C(m,j)` for `j ≤ m-3` and
/// `b_{m-2} = m - 1 + C(m,m-2)`.
pub fn expected_forms_betti(m: usize) -> Vec<usize> {
    let mut b: Vec<usize> =
        (0..m.saturating_sub(2)).map(|j| m * binomial(m - 1, j + 1) + binomial(m - 1, j) + binomial(m, j)).collect();
    b.push(m - 1 + binomial(m, m - 2));
    b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTheoremReport {
    /// Quasi-homogeneous with `m` the embedding dimension.
    pub hypotheses_hold: bool,
    pub residue_betti: Vec<usize>,
    pub forms_betti: Vec<usize>,
    pub expected_residue: Vec<usize>,
    pub expected_forms: Vec<usize>,
}

impl BettiTheoremReport {
    pub fn residue_matches(&self) -> bool {
        self.residue_betti == self.expected_residue
    }

    pub fn forms_match(&self) -> bool {
        self.forms_betti == self.expected_forms
    }

    /// The formulas hold whenever the hypotheses do.
    pub fn holds(&self) -> bool {
        !self.hypotheses_hold || (self.residue_matches() && self.forms_match())
    }
}

pub fn betti_theorem_check(p: &LogProblem) -> Result<BettiTheoremReport> {
    require_curve(p)?;
    let (ctx, m) = (p.ctx(), p.nvars());
    let hypotheses_hold = is_quasi_homogeneous(p)? && has_embedding_dimension(p);
    let residue_betti = if hypotheses_hold {
        // R_C ≅ y O_C + g O_C.
        let res = residue_omega0(p)?;
        let module =
            PresentedModule::subquotient(ctx, &Matrix::row(alloc::vec![res.y, res.g]), &p.ideal_c().to_matrix())?;
        betti(ctx, &module)?
    } else {
        p.residue_module()?.betti(ctx)?
    };
    let forms_betti = betti(ctx, &p.log_forms_numerator(m - 1)?.presented(ctx))?;
    Ok(BettiTheoremReport {
        hypotheses_hold,
        residue_betti,
        forms_betti,
        expected_residue: expected_residue_betti(m),
        expected_forms: expected_forms_betti(m),
    })
}

/// `Π d_i = Σ d_i - m + 2`, the numerical condition for a homogeneous
/// complete intersection curve of degrees `d_i` to be plane.
pub fn plane_characterization(degrees: &[u32], m: usize) -> Result<bool> {
    if m < 2 || degrees.len() + 1 != m {
        return Err(Error::ShapeMismatch("expected m - 1 degrees".into()));
    }
    if degrees.iter().any(|&d| d < 2) {
        return Err(Error::EmbeddingDimension);
    }
    let prod: i64 = degrees.iter().map(|&d| d as i64).product();
    let sum: i64 = degrees.iter().map(|&d| d as i64).sum();
    Ok(prod == sum - m as i64 + 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangementReport {
    pub degrees: Vec<u32>,
    pub plane: bool,
    pub infimum: ValueVector,
    /// `inf val(R_C) = (2 - p)·1` with `p = Π d_i` lines.
    pub infimum_is_plane_value: bool,
}

impl LineArrangementReport {
    pub fn holds(&self) -> bool {
        self.plane == self.infimum_is_plane_value
    }
}

/// A homogeneous curve (unit weights) through its lines.
pub fn line_arrangement_check(p: &LogProblem, param: &BranchParametrization) -> Result<LineArrangementReport> {
    require_curve(p)?;
    check_parametrization(p, param)?;
    if p.ctx().weights().iter().any(|&w| w != 1) {
        return Err(Error::InvalidInput("expected unit weights".into()));
    }
    let degrees = p
        .equations()
        .iter()
        .map(|f| f.weighted_degree(p.ctx())?.map(|d| d as u32).ok_or(Error::NotQuasiHomogeneous))
        .collect::<Result<Vec<_>>>()?;
    let lines: i64 = degrees.iter().map(|&d| d as i64).product();
    if param.branch_count() as i64 != lines {
        return Err(Error::InvalidInput("expected one branch per line".into()));
    }
    let plane = plane_characterization(&degrees, p.nvars())?;
    let infimum = param.fraction_valuation(&residue_omega0(p)?.fraction())?;
    let infimum_is_plane_value = infimum.0.iter().all(|&v| v == Value::Finite(2 - lines));
    Ok(LineArrangementReport { degrees, plane, infimum, infimum_is_plane_value })
}

/// `ℕ^p ∩ [0, B]^p ⊆ val(R_C)`, a valuative form of `O_{C̃} ⊆ R_C`.
pub fn normalization_inclusion_check(p: &LogProblem, param: &BranchParametrization, bound: u32) -> Result<bool> {
    check_parametrization(p, param)?;
    let rc = p.residue_module()?;
    let shift = param
        .determined_valuation(rc.denominator())?
        .finite()
        .ok_or_else(|| Error::InvalidInput("denominator vanishes on a branch".into()))?;
    let top = bound as i64 + shift.iter().max().copied().unwrap_or(0) + 1;
    let mut nums = rc.numerators().to_vec();
    nums.extend(p.ideal_c().gens().iter().cloned());
    let set = ValueSet::new(param, &nums, top as u32)?;
    for v in box_points(param.branch_count(), 0, bound as i64) {
        let w: Vec<i64> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        if !set.contains(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}
