use alloc::vec::Vec;

use super::problem::LogProblem;
use crate::algebra::{binomial, Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::gb::{
    ideal_intersection, ideal_quotient, is_zerodivisor, FreeModuleElement, Ideal, Lifter, Matrix, PresentedModule,
    Submodule,
};
use crate::resolution::betti;

/// Denominator candidates tried before giving up.
pub const NONZERODIVISOR_BUDGET: usize = 64;

/// Largest ladder depth for integer combinations of minors.
const LADDER_DEPTH: usize = 4;

/// `a / g` in the total quotient ring of `R / M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl Fraction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Fraction {
        Fraction { numerator, denominator }
    }

    /// `a/g = b/g'` modulo `M`: `a g' - b g ∈ M`.
    pub fn equals(&self, other: &Fraction, ctx: &RingContext, modulus: &Ideal) -> Result<bool> {
        let d = &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator);
        Submodule::new(ctx, &modulus.to_matrix()).contains(&FreeModuleElement(alloc::vec![d]))
    }

    pub fn scaled(&self, c: &Polynomial) -> Fraction {
        Fraction { numerator: &self.numerator * c, denominator: self.denominator.clone() }
    }
}

/// The `R/M`-submodule of the total quotient ring generated by `b_i / g`,
/// with `g` a nonzerodivisor modulo `M`.
#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
    modulus: Ideal,
}

impl FractionalIdeal {
    pub fn new(numerators: Vec<Polynomial>, denominator: Polynomial, modulus: Ideal) -> FractionalIdeal {
        FractionalIdeal { numerators, denominator, modulus }
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    /// `g B + M`, the numerators brought to the common denominator `g g'`
    /// against another ideal with denominator `g'` (here `scale = g'`).
    fn cleared(&self, scale: &Polynomial) -> Matrix {
        let mut gens: Vec<Polynomial> = self.numerators.iter().map(|b| b * scale).collect();
        gens.extend(self.modulus.gens().iter().cloned());
        Matrix::row(gens)
    }

    /// `a/g' ∈ B/g` iff `g a ∈ g' B + M`.
    pub fn contains_fraction(&self, ctx: &RingContext, f: &Fraction) -> Result<bool> {
        let sb = Submodule::new(ctx, &self.cleared(&f.denominator));
        sb.contains(&FreeModuleElement(alloc::vec![&f.numerator * &self.denominator]))
    }

    pub fn contains(&self, ctx: &RingContext, other: &FractionalIdeal) -> Result<bool> {
        let sb = Submodule::new(ctx, &self.cleared(&other.denominator));
        for b in &other.numerators {
            if !sb.contains(&FreeModuleElement(alloc::vec![b * &self.denominator]))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, ctx: &RingContext, other: &FractionalIdeal) -> Result<bool> {
        Ok(self.contains(ctx, other)? && other.contains(ctx, self)?)
    }

    /// As a module over the ambient ring, isomorphic to `(B + M) / M`.
    pub fn presented(&self, ctx: &RingContext) -> Result<PresentedModule> {
        PresentedModule::subquotient(ctx, &Matrix::row(self.numerators.clone()), &self.modulus.to_matrix())
    }

    pub fn betti(&self, ctx: &RingContext) -> Result<Vec<usize>> {
        betti(ctx, &self.presented(ctx)?)
    }

    pub fn minimal_generators(&self, ctx: &RingContext) -> Result<usize> {
        Ok(self.betti(ctx)?.first().copied().unwrap_or(0))
    }
}

/// `res_{X/C}` for a fixed denominator `g`: solves
/// `u g α = ξ c_X + η` with `η ∈ I_C Ω^k` and `u` a unit.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    g: Polynomial,
    unit: Polynomial,
    lifter: Lifter,
}

impl ResidueMap {
    pub fn denominator(&self) -> &Polynomial {
        &self.g
    }

    pub fn residue(&self, alpha: &FreeModuleElement) -> Result<Fraction> {
        let lift = self
            .lifter
            .lift(&alpha.scale(&self.g))?
            .ok_or_else(|| Error::InvalidInput("form is not multi-logarithmic".into()))?;
        Ok(Fraction::new(&lift.coefficients[0] * &self.unit, &lift.unit * &self.g))
    }
}

/// `1, -1, 2, -2, …`.
fn ladder(i: usize) -> i64 {
    let v = (i / 2 + 1) as i64;
    if i.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

impl LogProblem {
    /// Nonzero minors in index order, then combinations `Σ c_I Δ_I` with
    /// coefficients drawn from the ladder `1, -1, 2, -2, …`, by depth.
    pub fn denominator_candidates(&self) -> Vec<Polynomial> {
        self.weighted_candidates().into_iter().map(|(_, g)| g).collect()
    }

    /// The candidates with their coefficient vectors over all maximal minors
    /// in basis order.
    pub fn weighted_candidates(&self) -> Vec<(Vec<i64>, Polynomial)> {
        let all = self.jacobian_minors();
        let support: Vec<usize> = (0..all.len()).filter(|&i| !all[i].is_zero()).collect();
        let n = support.len();
        let spread = |c: &[i64]| {
            let mut full = alloc::vec![0i64; all.len()];
            for (&i, &ci) in support.iter().zip(c) {
                full[i] = ci;
            }
            full
        };
        let mut out: Vec<(Vec<i64>, Polynomial)> = Vec::new();
        for j in 0..n {
            let mut c = alloc::vec![0i64; n];
            c[j] = 1;
            out.push((spread(&c), all[support[j]].clone()));
        }
        if n > 1 {
            'ladder: for depth in 1..=LADDER_DEPTH {
                let mut idx = alloc::vec![0usize; n];
                loop {
                    if idx.iter().any(|&i| i == depth - 1) {
                        let c: Vec<i64> = idx.iter().map(|&i| ladder(i)).collect();
                        let g = support
                            .iter()
                            .zip(&c)
                            .fold(Polynomial::zero(), |acc, (&i, &ci)| &acc + &all[i].scale(&crate::algebra::rat(ci)));
                        if !g.is_zero() {
                            out.push((spread(&c), g));
                        }
                    }
                    if out.len() >= NONZERODIVISOR_BUDGET {
                        break 'ladder;
                    }
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < depth {
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
        }
        out.truncate(NONZERODIVISOR_BUDGET);
        out
    }

    /// The residue map for the first candidate that is a nonzerodivisor on `O_C`.
    pub fn residue_map(&self) -> Result<ResidueMap> {
        self.residue_map_skipping(0)
    }

    /// As [`residue_map`](Self::residue_map), skipping the first `skip`
    /// admissible candidates.
    pub fn residue_map_skipping(&self, skip: usize) -> Result<ResidueMap> {
        Ok(self.residue_map_with(self.admissible_denominator(skip)?.1))
    }

    /// The `skip`-th candidate (from zero) that is a nonzerodivisor on `O_C`,
    /// with its coefficients over the maximal minors.
    pub fn admissible_denominator(&self, mut skip: usize) -> Result<(Vec<i64>, Polynomial)> {
        let cands = self.weighted_candidates();
        let tried = cands.len();
        for (c, g) in cands {
            if is_zerodivisor(self.ctx(), &g, self.ideal_c())?.zerodivisor {
                continue;
            }
            if skip == 0 {
                return Ok((c, g));
            }
            skip -= 1;
        }
        Err(Error::NonzerodivisorSearchExhausted { tried })
    }

    /// The residue map for a caller-chosen nonzerodivisor `g` of `O_C` with
    /// `g R_X ⊆ O_X`, such as any element of the Jacobian ideal.
    pub fn residue_map_with(&self, g: Polynomial) -> ResidueMap {
        let rank = binomial(self.nvars(), self.codim());
        let mut gens = Matrix::new(rank);
        gens.push(self.fundamental_form().clone());
        for c in self.ideal_c().times_free(rank).into_columns() {
            gens.push(c);
        }
        ResidueMap { g, unit: self.fundamental_unit().clone(), lifter: Lifter::new(self.ctx(), &gens) }
    }

    pub fn residue_of_form(&self, alpha: &FreeModuleElement) -> Result<Fraction> {
        self.residue_map()?.residue(alpha)
    }

    /// `R_X`, generated by the residues of the generators of `h Ω^k(log X/C)`
    /// over the common denominator `g`.
    pub fn residue_module(&self) -> Result<FractionalIdeal> {
        let map = self.residue_map()?;
        self.residue_module_with(&map)
    }

    pub fn residue_module_with(&self, map: &ResidueMap) -> Result<FractionalIdeal> {
        let forms = self.log_forms_numerator(self.codim())?;
        let mut nums = Vec::new();
        for a in forms.gens.columns() {
            // The lifting unit only rescales a generator.
            let r = map.residue(a)?;
            nums.push(r.numerator);
        }
        let sb = Submodule::new(self.ctx(), &self.ideal_of_x().to_matrix());
        let nums = nums
            .into_iter()
            .map(|p| sb.reduce(&FreeModuleElement(alloc::vec![p])).map(|mut v| v.0.remove(0)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        Ok(FractionalIdeal::new(nums, map.denominator().clone(), self.ideal_of_x().clone()))
    }

    /// `res_C(Ω^k(log X/C))`: the residues along `C` itself, which vanish on
    /// `Y` and restrict to `R_X` on `X`. Equal to `R_X` when `X = C`.
    pub fn residue_module_on_c(&self) -> Result<FractionalIdeal> {
        let map = self.residue_map()?;
        self.residue_module_on_c_with(map.denominator())
    }

    pub fn residue_module_on_c_with(&self, g: &Polynomial) -> Result<FractionalIdeal> {
        let c =
            if self.x_is_c() { self.clone() } else { LogProblem::new(self.ctx(), self.equations().to_vec(), None)? };
        let map = c.residue_map_with(g.clone());
        let forms = self.log_forms_numerator(self.codim())?;
        let sb = Submodule::new(self.ctx(), &self.ideal_c().to_matrix());
        let mut nums = Vec::new();
        for a in forms.gens.columns() {
            let r = map.residue(a)?.numerator;
            let r = sb.reduce(&FreeModuleElement(alloc::vec![r]))?.0.remove(0);
            if !r.is_zero() {
                nums.push(r);
            }
        }
        Ok(FractionalIdeal::new(nums, g.clone(), self.ideal_c().clone()))
    }

    /// `J_{X/C}^∨ = Hom_{O_C}(J_{X/C}, O_C)`, realized inside the total
    /// quotient ring of `O_C` as `A / g` with
    /// `A = ((g I_Y + I_C) : J_C) ∩ I_Y`.
    pub fn jacobian_dual(&self) -> Result<FractionalIdeal> {
        let map = self.residue_map()?;
        Ok(self.jacobian_dual_with(map.denominator()))
    }

    pub fn jacobian_dual_with(&self, g: &Polynomial) -> FractionalIdeal {
        let ctx = self.ctx();
        let ic = self.ideal_c().clone();
        let jac = Ideal::new(self.jacobian_minors()).sum(&ic);
        let a = if self.x_is_c() {
            ideal_quotient(ctx, &Ideal::new(alloc::vec![g.clone()]).sum(&ic), &jac)
        } else {
            let gy = self.ideal_y().product(&Ideal::new(alloc::vec![g.clone()])).sum(&ic);
            ideal_intersection(ctx, &ideal_quotient(ctx, &gy, &jac), self.ideal_y())
        };
        FractionalIdeal::new(a.gens().to_vec(), g.clone(), ic)
    }

    /// `R_X ≅ J_{X/C}^∨`, compared as fractional ideals of `O_C` for one
    /// common denominator.
    pub fn duality_check(&self) -> Result<bool> {
        let g = self.residue_map()?.denominator().clone();
        self.residue_module_on_c_with(&g)?.equals(self.ctx(), &self.jacobian_dual_with(&g))
    }
}
