use alloc::vec::Vec;

use super::engine::{nf_global, normal_form, standard_basis};
use super::order::ModuleOrder;
use super::types::{FreeModuleElement, Ideal, Matrix, PresentedModule};
use super::vector::Vector;
use crate::algebra::{basis, Polynomial, RingContext, TermOrder};
use crate::error::{Error, Result};

/// Work budget (terms touched) for one Mora normal form before falling back
/// to the colon test.
const MORA_BUDGET: usize = 5_000;

/// Localization at the origin is exact, so kernels, quotients and syzygies
/// of polynomial data are computed with global Gröbner bases even when the
/// ring is local; only unit tests (nonzero constant term) are local.
fn global(ctx: &RingContext) -> RingContext {
    ctx.with_order(TermOrder::Global)
}

fn is_local(ctx: &RingContext) -> bool {
    ctx.order() == TermOrder::Local
}

/// A standard basis of a submodule of `R^rank` for the ring's own order.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ctx: RingContext,
    ord: ModuleOrder,
    basis: Vec<Vector>,
}

impl StandardBasis {
    pub fn new(ctx: &RingContext, gens: &Matrix) -> StandardBasis {
        let ord = ModuleOrder::new(ctx, gens.nrows());
        let vs: Vec<Vector> = gens.columns().iter().map(|c| Vector::from_components(&c.0, 0, &ord)).collect();
        let basis = standard_basis(&vs, &ord);
        StandardBasis { ctx: ctx.clone(), ord, basis }
    }

    pub fn rank(&self) -> usize {
        self.ord.rank()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The basis elements as columns.
    pub fn to_matrix(&self) -> Matrix {
        let r = self.rank();
        let cols = self.basis.iter().map(|v| FreeModuleElement(v.components(0, r))).collect();
        Matrix::from_columns(r, cols).unwrap()
    }

    /// Normal form: fully reduced under a global order, Mora's weak normal
    /// form under a local one (`None` if that exceeds its work budget).
    pub fn reduce(&self, f: &FreeModuleElement) -> Result<Option<FreeModuleElement>> {
        self.check(f)?;
        let v = Vector::from_components(&f.0, 0, &self.ord);
        let refs: Vec<&Vector> = self.basis.iter().collect();
        Ok(normal_form(&v, &refs, &self.ord, MORA_BUDGET).map(|r| FreeModuleElement(r.components(0, self.rank()))))
    }

    pub fn contains(&self, f: &FreeModuleElement) -> Result<bool> {
        match self.reduce(f)? {
            Some(r) => Ok(r.is_zero()),
            None => Submodule::new(&self.ctx, &self.to_matrix()).contains(f),
        }
    }

    /// Leading terms as `(component, exponents)`.
    pub fn leading_terms(&self) -> Vec<(usize, crate::algebra::Monomial)> {
        self.basis.iter().map(|v| (v.lead().comp as usize, v.lead().mon)).collect()
    }

    /// All S-polynomials reduce to zero (checked with an unbounded normal form).
    pub fn is_certified(&self) -> bool {
        super::engine::is_standard_basis(&self.basis, &self.ord)
    }

    fn check(&self, f: &FreeModuleElement) -> Result<()> {
        if f.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: f.rank() });
        }
        Ok(())
    }
}

/// Reduced Gröbner basis (global order) or standard basis (local order) of
/// the submodule generated by the columns of `gens`.
pub fn groebner_basis(ctx: &RingContext, gens: &Matrix) -> Matrix {
    StandardBasis::new(ctx, gens).to_matrix()
}

/// Membership oracle for a submodule `N ⊆ R^rank`, over the polynomial ring
/// or its localization at the origin depending on the ring order.
///
/// Locally, `f ∈ N` iff `(N : f)` contains an element with nonzero constant
/// term, and `(N : f)` is generated by polynomials with a global computation.
#[derive(Clone, Debug)]
pub struct Submodule {
    ctx: RingContext,
    gens: Matrix,
    ord: ModuleOrder,
    gb: Vec<Vector>,
}

impl Submodule {
    pub fn new(ctx: &RingContext, gens: &Matrix) -> Submodule {
        let g = global(ctx);
        let ord = ModuleOrder::new(&g, gens.nrows());
        let vs: Vec<Vector> = gens.columns().iter().map(|c| Vector::from_components(&c.0, 0, &ord)).collect();
        let gb = standard_basis(&vs, &ord);
        Submodule { ctx: ctx.clone(), gens: gens.clone(), ord, gb }
    }

    pub fn rank(&self) -> usize {
        self.gens.nrows()
    }

    pub fn generators(&self) -> &Matrix {
        &self.gens
    }

    pub fn contains(&self, f: &FreeModuleElement) -> Result<bool> {
        if f.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: f.rank() });
        }
        let v = Vector::from_components(&f.0, 0, &self.ord);
        let refs: Vec<&Vector> = self.gb.iter().collect();
        if nf_global(&v, &refs, &self.ord, false).is_zero() {
            return Ok(true);
        }
        if !is_local(&self.ctx) {
            return Ok(false);
        }
        let col = Matrix::from_columns(self.rank(), alloc::vec![f.clone()])?;
        let colon = kernel_mod(&self.ctx, &col, &self.gens)?;
        Ok(colon.columns().iter().any(|c| c.0[0].is_local_unit()))
    }

    /// Fully reduced global normal form; `f - reduce(f)` lies in the
    /// submodule already over the polynomial ring.
    pub fn reduce(&self, f: &FreeModuleElement) -> Result<FreeModuleElement> {
        if f.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: f.rank() });
        }
        let v = Vector::from_components(&f.0, 0, &self.ord);
        let refs: Vec<&Vector> = self.gb.iter().collect();
        Ok(FreeModuleElement(nf_global(&v, &refs, &self.ord, true).components(0, self.rank())))
    }

    pub fn contains_all(&self, m: &Matrix) -> Result<bool> {
        for c in m.columns() {
            if !self.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn column_degree(p: &FreeModuleElement, ctx: &RingContext) -> i64 {
    p.0.iter().filter_map(|q| q.max_degree(ctx)).max().unwrap_or(0)
}

/// Generators of `ker(R^a → R^b / U)`, `v ↦ M v mod U`, where `U` is spanned
/// by the columns of `modulo`. Computed from a Gröbner basis of the graph
/// `{(Mv + u, v)}` under an order eliminating the first `b` coordinates.
pub fn kernel_mod(ctx: &RingContext, m: &Matrix, modulo: &Matrix) -> Result<Matrix> {
    let (b, a) = (m.nrows(), m.ncols());
    if modulo.nrows() != b {
        return Err(Error::RankMismatch { expected: b, found: modulo.nrows() });
    }
    let g = global(ctx);
    let mut shifts = alloc::vec![0i64; b + a];
    for (i, c) in m.columns().iter().enumerate() {
        shifts[b + i] = column_degree(c, &g);
    }
    let ord = ModuleOrder::new(&g, b + a).with_block(b, shifts);
    let mut gens = Vec::with_capacity(a + modulo.ncols());
    for (i, c) in m.columns().iter().enumerate() {
        let mut v = Vector::from_components(&c.0, 0, &ord);
        let e = Vector::from_components(&[Polynomial::one()], b + i, &ord);
        v.terms.extend(e.terms);
        v.sort(&ord);
        gens.push(v);
    }
    for u in modulo.columns() {
        gens.push(Vector::from_components(&u.0, 0, &ord));
    }
    let sb = standard_basis(&gens, &ord);
    let mut out = Matrix::new(a);
    for v in sb {
        if v.lead().comp as usize >= b {
            debug_assert!(!v.any_in_range(0, b as u32));
            out.push(FreeModuleElement(v.components(b, b + a)));
        }
    }
    Ok(out)
}

/// Generators of `ker(R^a → R^b)`.
pub fn module_kernel(ctx: &RingContext, m: &Matrix) -> Result<Matrix> {
    kernel_mod(ctx, m, &Matrix::new(m.nrows()))
}

/// Expresses elements of a submodule in terms of its generators, up to a
/// unit: `u · f = Σ c_i g_i` with `u(0) ≠ 0` (and `u = 1` for global orders).
#[derive(Clone, Debug)]
pub struct Lifter {
    ctx: RingContext,
    gens: Matrix,
    ord: ModuleOrder,
    basis: Vec<Vector>,
    rank: usize,
    ngens: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub unit: Polynomial,
    pub coefficients: Vec<Polynomial>,
}

impl Lifter {
    pub fn new(ctx: &RingContext, gens: &Matrix) -> Lifter {
        let (r, s) = (gens.nrows(), gens.ncols());
        let g = global(ctx);
        let mut shifts = alloc::vec![0i64; r + s];
        for (i, c) in gens.columns().iter().enumerate() {
            shifts[r + i] = column_degree(c, &g);
        }
        let ord = ModuleOrder::new(&g, r + s).with_block(r, shifts);
        let mut vs = Vec::with_capacity(s);
        for (i, c) in gens.columns().iter().enumerate() {
            let mut v = Vector::from_components(&c.0, 0, &ord);
            v.terms.extend(Vector::from_components(&[Polynomial::one()], r + i, &ord).terms);
            v.sort(&ord);
            vs.push(v);
        }
        let basis = standard_basis(&vs, &ord);
        Lifter { ctx: ctx.clone(), gens: gens.clone(), ord, basis, rank: r, ngens: s }
    }

    /// `None` when `f` is not in the submodule.
    pub fn lift(&self, f: &FreeModuleElement) -> Result<Option<Lift>> {
        if f.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: f.rank() });
        }
        let v = Vector::from_components(&f.0, 0, &self.ord);
        let refs: Vec<&Vector> = self.basis.iter().collect();
        let r = nf_global(&v, &refs, &self.ord, false);
        if !r.is_zero() && (r.lead().comp as usize) < self.rank {
            return if is_local(&self.ctx) { self.lift_by_syzygy(f) } else { Ok(None) };
        }
        // (f, 0) - r lies in the graph module, so f = Σ (-r_i) g_i.
        let coefficients = r.components(self.rank, self.rank + self.ngens).into_iter().map(|p| -p).collect();
        Ok(Some(Lift { unit: Polynomial::one(), coefficients }))
    }

    /// `f ∈ N` locally iff some syzygy of `(g_1, …, g_s, f)` has a unit as its
    /// last coordinate.
    fn lift_by_syzygy(&self, f: &FreeModuleElement) -> Result<Option<Lift>> {
        let mut m = self.gens.clone();
        m.push(f.clone());
        let k = module_kernel(&self.ctx, &m)?;
        for c in k.columns() {
            let last = &c.0[self.ngens];
            if last.is_local_unit() {
                return Ok(Some(Lift { unit: -last, coefficients: c.0[..self.ngens].to_vec() }));
            }
        }
        Ok(None)
    }
}

/// `Σ c_i g_i` for a generating matrix.
pub fn combine(gens: &Matrix, coefficients: &[Polynomial]) -> FreeModuleElement {
    gens.apply(&FreeModuleElement(coefficients.to_vec())).unwrap()
}

/// Every column of `b` lies in the submodule spanned by `a`.
pub fn module_contains(ctx: &RingContext, a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.nrows() != b.nrows() {
        return Err(Error::RankMismatch { expected: a.nrows(), found: b.nrows() });
    }
    Submodule::new(ctx, a).contains_all(b)
}

pub fn module_equal(ctx: &RingContext, a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(module_contains(ctx, a, b)? && module_contains(ctx, b, a)?)
}

pub fn ideal_contains(ctx: &RingContext, i: &Ideal, f: &Polynomial) -> bool {
    Submodule::new(ctx, &i.to_matrix()).contains(&FreeModuleElement(alloc::vec![f.clone()])).unwrap()
}

pub fn ideal_equal(ctx: &RingContext, i: &Ideal, j: &Ideal) -> bool {
    module_equal(ctx, &i.to_matrix(), &j.to_matrix()).unwrap()
}

/// `I : J = {g : g J ⊆ I}`, the kernel of `1 ↦ (j_1, …, j_s)` into `(R/I)^s`.
pub fn ideal_quotient(ctx: &RingContext, i: &Ideal, j: &Ideal) -> Ideal {
    if j.is_empty() {
        return Ideal::unit();
    }
    let col = Matrix::column(j.gens().to_vec());
    let modulo = i.times_free(j.len());
    let k = kernel_mod(ctx, &col, &modulo).unwrap();
    Ideal::new(k.columns().iter().map(|c| c.0[0].clone()).collect())
}

/// `I ∩ J` as the kernel of `R → R/I ⊕ R/J`.
pub fn ideal_intersection(ctx: &RingContext, i: &Ideal, j: &Ideal) -> Ideal {
    let col = Matrix::column(alloc::vec![Polynomial::one(), Polynomial::one()]);
    let modulo = i.times_free(1).direct_sum(&j.times_free(1));
    let k = kernel_mod(ctx, &col, &modulo).unwrap();
    Ideal::new(k.columns().iter().map(|c| c.0[0].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroDivisorTest {
    /// `g` annihilates some nonzero class of `R/I`.
    pub zerodivisor: bool,
    /// `g ∈ I`, so `g` is itself zero in the quotient.
    pub vanishes: bool,
}

/// Whether `g` is a zerodivisor on `R/I`, i.e. `(I : g) ≠ I`.
pub fn is_zerodivisor(ctx: &RingContext, g: &Polynomial, i: &Ideal) -> Result<ZeroDivisorTest> {
    let sb = Submodule::new(ctx, &i.to_matrix());
    if sb.contains(&FreeModuleElement(alloc::vec![Polynomial::one()]))? {
        return Err(Error::InvalidInput("the ideal is the unit ideal".into()));
    }
    if sb.contains(&FreeModuleElement(alloc::vec![g.clone()]))? {
        return Ok(ZeroDivisorTest { zerodivisor: true, vanishes: true });
    }
    let q = ideal_quotient(ctx, i, &Ideal::new(alloc::vec![g.clone()]));
    for h in q.gens() {
        if !sb.contains(&FreeModuleElement(alloc::vec![h.clone()]))? {
            return Ok(ZeroDivisorTest { zerodivisor: true, vanishes: false });
        }
    }
    Ok(ZeroDivisorTest { zerodivisor: false, vanishes: false })
}

/// The cokernel vanishes: every unit vector lies in the relation span.
pub fn is_zero_module(ctx: &RingContext, m: &PresentedModule) -> bool {
    let n = m.ngens();
    if n == 0 {
        return true;
    }
    let sb = Submodule::new(ctx, m.relations());
    (0..n).all(|i| sb.contains(&FreeModuleElement::unit(n, i)).unwrap())
}

impl PresentedModule {
    /// The submodule spanned by the columns of `gens`, presented by its syzygies.
    pub fn image(ctx: &RingContext, gens: &Matrix) -> PresentedModule {
        PresentedModule::new(module_kernel(ctx, gens).unwrap())
    }

    /// `(A + B) / B` for submodules of a common free module, presented on the
    /// columns of `a`.
    pub fn subquotient(ctx: &RingContext, a: &Matrix, b: &Matrix) -> Result<PresentedModule> {
        Ok(PresentedModule::new(kernel_mod(ctx, a, b)?))
    }

    pub fn is_zero(&self, ctx: &RingContext) -> bool {
        is_zero_module(ctx, self)
    }
}

pub fn determinant(m: &Matrix) -> Result<Polynomial> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch(alloc::format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..m.ncols()).collect();
    Ok(laplace(m, &rows, &cols))
}

/// Laplace expansion along the first selected row.
fn laplace(m: &Matrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    match rows.len() {
        0 => Polynomial::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = Polynomial::zero();
            let rest_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let t = e * &laplace(m, rest_rows, &sub);
                acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// All `k × k` minors, row subsets outermost, both in lexicographic order.
pub fn minors(m: &Matrix, k: usize) -> Result<Vec<Polynomial>> {
    if k > m.nrows().min(m.ncols()) {
        return Err(Error::ShapeMismatch(alloc::format!(
            "no {}x{} minors in a {}x{} matrix",
            k,
            k,
            m.nrows(),
            m.ncols()
        )));
    }
    let mut out = Vec::new();
    for r in basis(m.nrows(), k) {
        let rows = r.indices();
        for c in basis(m.ncols(), k) {
            out.push(laplace(m, &rows, &c.indices()));
        }
    }
    Ok(out)
}
