use alloc::vec::Vec;

use super::forms::{differential, evaluate, stack, wedge, wedge_matrix, wedge_of_differentials};
use crate::algebra::{binomial, Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::gb::{
    ideal_contains, ideal_equal, ideal_quotient, kernel_mod, minors, module_equal, module_kernel, FreeModuleElement,
    Ideal, Lifter, Matrix, PresentedModule, Submodule,
};

/// A reduced space `X` inside a reduced complete intersection `C` of the same
/// dimension, with `I_C` generated by the regular sequence `f_1, …, f_k`.
///
/// All forms are stored by their numerators over `h = f_1 ⋯ f_k`.
#[derive(Clone, Debug)]
pub struct LogProblem {
    ctx: RingContext,
    f_seq: Vec<Polynomial>,
    x_gens: Vec<Polynomial>,
    ideal_c: Ideal,
    ideal_x: Ideal,
    ideal_y: Ideal,
    h: Polynomial,
    c_x: FreeModuleElement,
    c_unit: Polynomial,
    x_is_c: bool,
}

/// Numerators `h · Ω^q(log X/C)` as a submodule of `Ω^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogFormModule {
    pub q: usize,
    pub gens: Matrix,
    pub denominator: Polynomial,
}

/// `Der^k(-log X/C)` as a submodule of `Θ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVectorFieldModule {
    pub k: usize,
    pub gens: Matrix,
}

/// The columns `f_j e_i - f_i e_j` generate the syzygies of `(f_1, …, f_k)`.
pub fn koszul_certified(ctx: &RingContext, f: &[Polynomial]) -> Result<bool> {
    let k = f.len();
    let mut koszul = Matrix::new(k);
    for i in 0..k {
        for j in i + 1..k {
            let mut v = FreeModuleElement::zero(k);
            v.0[i] = f[j].clone();
            v.0[j] = -&f[i];
            koszul.push(v);
        }
    }
    let syz = module_kernel(ctx, &Matrix::row(f.to_vec()))?;
    module_equal(ctx, &syz, &koszul)
}

impl LogProblem {
    /// `x_gens = None` means `X = C`.
    pub fn new(ctx: &RingContext, f_seq: Vec<Polynomial>, x_gens: Option<Vec<Polynomial>>) -> Result<LogProblem> {
        let (m, k) = (ctx.nvars(), f_seq.len());
        if k == 0 || k > m {
            return Err(Error::InvalidInput(alloc::format!("{} equations in {} variables", k, m)));
        }
        if f_seq.iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroInput);
        }
        let ideal_c = Ideal::new(f_seq.clone());
        if f_seq.iter().any(|f| f.is_local_unit()) || ideal_contains(ctx, &ideal_c, &Polynomial::one()) {
            return Err(Error::InvalidInput("C does not pass through the origin".into()));
        }
        if !koszul_certified(ctx, &f_seq)? {
            return Err(Error::InvalidInput("the equations of C are not a regular sequence".into()));
        }
        let x_gens = x_gens.unwrap_or_else(|| f_seq.clone());
        if x_gens.iter().all(Polynomial::is_zero) {
            return Err(Error::ZeroInput);
        }
        let ideal_x = Ideal::new(x_gens.clone());
        if f_seq.iter().any(|f| !ideal_contains(ctx, &ideal_x, f)) {
            return Err(Error::InvalidInput("the equations of C do not vanish on X".into()));
        }
        if x_gens.iter().any(|f| f.is_local_unit()) || ideal_contains(ctx, &ideal_x, &Polynomial::one()) {
            return Err(Error::InvalidInput("X does not pass through the origin".into()));
        }
        let x_is_c = ideal_equal(ctx, &ideal_x, &ideal_c);
        let df = wedge_of_differentials(&f_seq, m);
        let (ideal_y, c_x, c_unit) = if x_is_c {
            (Ideal::unit(), df, Polynomial::one())
        } else {
            let ideal_y = ideal_quotient(ctx, &ideal_c, &ideal_x);
            let (c, u) = fundamental_lift(ctx, &df, &ideal_x, &ideal_y, k)?;
            let c = Submodule::new(ctx, &ideal_c.times_free(binomial(m, k))).reduce(&c)?;
            (ideal_y, c, u)
        };
        let h = f_seq.iter().fold(Polynomial::one(), |a, f| &a * f);
        Ok(LogProblem { ctx: ctx.clone(), f_seq, x_gens, ideal_c, ideal_x, ideal_y, h, c_x, c_unit, x_is_c })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn codim(&self) -> usize {
        self.f_seq.len()
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.f_seq
    }

    pub fn x_generators(&self) -> &[Polynomial] {
        &self.x_gens
    }

    pub fn ideal_c(&self) -> &Ideal {
        &self.ideal_c
    }

    pub fn ideal_x(&self) -> &Ideal {
        &self.ideal_x
    }

    /// `I_Y = I_C : I_X` (the unit ideal when `X = C`).
    pub fn ideal_y(&self) -> &Ideal {
        &self.ideal_y
    }

    /// `h = f_1 ⋯ f_k`.
    pub fn denominator(&self) -> &Polynomial {
        &self.h
    }

    pub fn x_is_c(&self) -> bool {
        self.x_is_c
    }

    /// `I_X` when computing on `X`, which is `I_C` when `X = C`.
    pub(crate) fn ideal_of_x(&self) -> &Ideal {
        if self.x_is_c {
            &self.ideal_c
        } else {
            &self.ideal_x
        }
    }

    /// `c_X`, up to the unit [`fundamental_unit`](Self::fundamental_unit):
    /// `c_X ∈ I_Y Ω^k` and `c_X ≡ u · df_1 ∧ … ∧ df_k` modulo `I_X Ω^k`.
    pub fn fundamental_form(&self) -> &FreeModuleElement {
        &self.c_x
    }

    /// The unit `u`; always `1` for global orders and for `X = C`.
    pub fn fundamental_unit(&self) -> &Polynomial {
        &self.c_unit
    }

    /// Both defining properties of `c_X`.
    pub fn check_fundamental_form(&self) -> Result<bool> {
        let m = self.nvars();
        let rank = binomial(m, self.codim());
        let df = wedge_of_differentials(&self.f_seq, m);
        let diff = df.scale(&self.c_unit).sub(&self.c_x);
        let in_x = Submodule::new(&self.ctx, &self.ideal_of_x().times_free(rank)).contains(&diff)?;
        let in_y = self.x_is_c || Submodule::new(&self.ctx, &self.ideal_y.times_free(rank)).contains(&self.c_x)?;
        Ok(in_x && in_y)
    }

    /// `(∂f_i/∂x_j)`, a `k × m` matrix.
    pub fn jacobian_matrix(&self) -> Matrix {
        let m = self.nvars();
        Matrix::from_rows(self.f_seq.iter().map(|f| (0..m).map(|j| f.derivative(j)).collect()).collect()).unwrap()
    }

    /// The maximal minors in basis order of `dx_I`, `|I| = k`.
    pub fn jacobian_minors(&self) -> Vec<Polynomial> {
        minors(&self.jacobian_matrix(), self.codim()).unwrap()
    }

    /// `J_C`: the maximal minors reduced modulo `I_C`, zeros dropped.
    pub fn jacobian_ideal(&self) -> Ideal {
        reduce_gens(&self.ctx, &self.jacobian_minors(), &self.ideal_c)
    }

    /// `J_{X/C}`: the maximal minors reduced modulo `I_X`, zeros dropped.
    pub fn restricted_jacobian(&self) -> Ideal {
        reduce_gens(&self.ctx, &self.jacobian_minors(), self.ideal_of_x())
    }

    /// Constraint matrix whose kernel modulo `I_C` is `h · Ω^q(log X/C)`:
    /// `α ↦ (g α, dg ∧ α)_g` over the generators `g` of `I_X`, or only the
    /// wedge part over the `f_i` when `X = C`.
    fn constraint_matrix(&self, q: usize) -> Matrix {
        let m = self.nvars();
        let nq = binomial(m, q);
        let mut blocks = Vec::new();
        if !self.x_is_c {
            for g in &self.x_gens {
                blocks.push(Matrix::identity(nq).map(|p| p * g));
            }
        }
        let eqs = if self.x_is_c { &self.f_seq } else { &self.x_gens };
        if q < m {
            for g in eqs {
                blocks.push(wedge_matrix(&differential(g, m), 1, q, m));
            }
        }
        stack(&blocks, nq)
    }

    pub fn log_forms_numerator(&self, q: usize) -> Result<LogFormModule> {
        let m = self.nvars();
        if q > m {
            return Err(Error::ShapeMismatch(alloc::format!("no {}-forms in {} variables", q, m)));
        }
        let nq = binomial(m, q);
        let constraints = self.constraint_matrix(q);
        let gens = if constraints.nrows() == 0 {
            Matrix::identity(nq)
        } else {
            let modulo = self.ideal_c.times_free(constraints.nrows());
            kernel_mod(&self.ctx, &constraints, &modulo)?
        };
        Ok(LogFormModule { q, gens: gens.without_zero_columns(), denominator: self.h.clone() })
    }

    /// `{δ : c_X(δ) ∈ I_X}`.
    pub fn log_kvector_fields(&self) -> Result<KVectorFieldModule> {
        let row = Matrix::row(self.c_x.0.clone());
        let gens = kernel_mod(&self.ctx, &row, &self.ideal_of_x().to_matrix())?;
        Ok(KVectorFieldModule { k: self.codim(), gens: gens.without_zero_columns() })
    }

    /// `ω(δ) ∈ (1/h) I_C` for every generator `ω` of `Ω^k(log X/C)` and `δ` of
    /// `Der^k(-log X/C)`.
    pub fn pairing_check(&self) -> Result<bool> {
        let forms = self.log_forms_numerator(self.codim())?;
        let fields = self.log_kvector_fields()?;
        let sb = Submodule::new(&self.ctx, &self.ideal_c.to_matrix());
        for a in forms.gens.columns() {
            for d in fields.gens.columns() {
                if !sb.contains(&FreeModuleElement(alloc::vec![evaluate(a, d)]))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Splits `df` along `I_X Ω^k + I_Y Ω^k` and keeps the `I_Y` part.
fn fundamental_lift(
    ctx: &RingContext,
    df: &FreeModuleElement,
    ideal_x: &Ideal,
    ideal_y: &Ideal,
    k: usize,
) -> Result<(FreeModuleElement, Polynomial)> {
    let rank = binomial(ctx.nvars(), k);
    let x_part = ideal_x.times_free(rank);
    let y_part = ideal_y.times_free(rank);
    let gens = x_part.hconcat(&y_part)?;
    let lift = Lifter::new(ctx, &gens).lift(df)?.ok_or(Error::InconsistentDecomposition)?;
    let mut c = FreeModuleElement::zero(rank);
    for (col, coef) in y_part.columns().iter().zip(&lift.coefficients[x_part.ncols()..]) {
        c = c.add(&col.scale(coef));
    }
    Ok((c, lift.unit))
}

fn reduce_gens(ctx: &RingContext, gens: &[Polynomial], modulo: &Ideal) -> Ideal {
    let sb = Submodule::new(ctx, &modulo.to_matrix());
    Ideal::new(
        gens.iter()
            .map(|g| sb.reduce(&FreeModuleElement(alloc::vec![g.clone()])).unwrap().0.remove(0))
            .filter(|g| !g.is_zero())
            .collect(),
    )
}

impl LogFormModule {
    /// The module itself, presented by the syzygies of its generators.
    pub fn presented(&self, ctx: &RingContext) -> PresentedModule {
        PresentedModule::image(ctx, &self.gens)
    }

    /// Every generator satisfies the defining conditions of `P`.
    pub fn satisfies_definition(&self, p: &LogProblem) -> Result<bool> {
        let constraints = p.constraint_matrix(self.q);
        if constraints.nrows() == 0 {
            return Ok(true);
        }
        let sb = Submodule::new(p.ctx(), &p.ideal_c.times_free(constraints.nrows()));
        for a in self.gens.columns() {
            if !sb.contains(&constraints.apply(a)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `I_C Ω^q` lies in the module.
    pub fn contains_trivial_forms(&self, p: &LogProblem) -> Result<bool> {
        let nq = binomial(p.nvars(), self.q);
        Submodule::new(p.ctx(), &self.gens).contains_all(&p.ideal_c.times_free(nq))
    }

    pub fn contains(&self, ctx: &RingContext, alpha: &FreeModuleElement) -> Result<bool> {
        Submodule::new(ctx, &self.gens).contains(alpha)
    }
}

impl KVectorFieldModule {
    pub fn presented(&self, ctx: &RingContext) -> PresentedModule {
        PresentedModule::image(ctx, &self.gens)
    }

    pub fn satisfies_definition(&self, p: &LogProblem) -> Result<bool> {
        let sb = Submodule::new(p.ctx(), &p.ideal_of_x().to_matrix());
        for d in self.gens.columns() {
            if !sb.contains(&FreeModuleElement(alloc::vec![evaluate(p.fundamental_form(), d)]))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ω ∧ dx_1 ∧ … ∧ dx_ℓ`-style products used by the splitting check.
pub(crate) fn wedge_columns(gens: &Matrix, q: usize, right: &FreeModuleElement, p: usize, m: usize) -> Matrix {
    let cols = gens.columns().iter().map(|c| wedge(c, q, right, p, m)).collect();
    Matrix::from_columns(binomial(m, q + p), cols).unwrap()
}
