//! Free resolutions, minimized over the ring localized at the origin.
//!
//! A unit entry is an entry with nonzero constant term, whatever monomial
//! order the ring carries, so Betti numbers are always those of the local
//! ring.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::gb::{module_equal, module_kernel, Matrix, PresentedModule};

/// `0 → F_t → … → F_1 → F_0`, stored as the differentials `d_j: F_j → F_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    rank0: usize,
    differentials: Vec<Matrix>,
    minimal: bool,
}

impl FreeResolution {
    /// A complex from its differentials `d_1, d_2, …`; adjacent shapes must
    /// match and consecutive compositions vanish.
    pub fn new(differentials: Vec<Matrix>) -> Result<FreeResolution> {
        let rank0 = differentials.first().map_or(0, Matrix::nrows);
        for w in differentials.windows(2) {
            if w[0].ncols() != w[1].nrows() {
                return Err(Error::ShapeMismatch(format!(
                    "differential with {} columns followed by one with {} rows",
                    w[0].ncols(),
                    w[1].nrows()
                )));
            }
            if !w[0].mul(&w[1])?.is_zero() {
                return Err(Error::Inconsistent("consecutive differentials do not compose to zero".into()));
            }
        }
        let minimal = differentials.iter().all(no_unit_entries);
        Ok(FreeResolution { rank0, differentials, minimal }.trimmed())
    }

    /// `ℓ_0, …, ℓ_t` with `ℓ_t > 0`; empty for the zero module.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.differentials.len() + 1);
        out.push(self.rank0);
        out.extend(self.differentials.iter().map(Matrix::ncols));
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// `t`, or `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.ranks().len().checked_sub(1)
    }

    /// `d_j` for `j ≥ 1`.
    pub fn differential(&self, j: usize) -> Option<&Matrix> {
        j.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// `d_{j-1} d_j = 0`, `ker d_j = im d_{j+1}` for `j ≥ 1`, and `d_t` injective.
    pub fn is_exact(&self, ctx: &RingContext) -> Result<bool> {
        for (j, d) in self.differentials.iter().enumerate() {
            let kernel = module_kernel(ctx, d)?;
            let ok = match self.differentials.get(j + 1) {
                Some(next) => d.mul(next)?.is_zero() && module_equal(ctx, &kernel, next)?,
                None => kernel.ncols() == 0,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `0 → O^ℓ_t → … → O^ℓ_0 → M → 0` followed by the matrices.
    pub fn format(&self, ctx: &RingContext) -> String {
        let ranks = self.ranks();
        let mut out = String::from("0");
        for r in ranks.iter().rev() {
            out += &format!(" → O^{}", r);
        }
        out += " → M → 0";
        for (j, d) in self.differentials.iter().enumerate() {
            if d.ncols() == 0 {
                continue;
            }
            out += &format!("\nd{} =", j + 1);
            for row in d.format(ctx) {
                out += &format!("\n  [{}]", row.join(", "));
            }
        }
        out
    }

    fn trimmed(mut self) -> FreeResolution {
        while self.differentials.last().is_some_and(|d| d.ncols() == 0) {
            self.differentials.pop();
        }
        self
    }
}

fn no_unit_entries(d: &Matrix) -> bool {
    d.columns().iter().all(|c| c.0.iter().all(|p| !p.is_local_unit()))
}

/// Iterated syzygies of a presentation, without minimization.
pub fn free_resolution(ctx: &RingContext, m: &PresentedModule, max_length: usize) -> Result<FreeResolution> {
    let mut ds = alloc::vec![m.relations().without_zero_columns()];
    loop {
        let last = ds.last().unwrap();
        if last.ncols() == 0 {
            break;
        }
        let k = module_kernel(ctx, last)?;
        if k.ncols() == 0 {
            break;
        }
        if ds.len() >= max_length {
            return Err(Error::ResolutionTooLong { max_length });
        }
        ds.push(k);
    }
    let rank0 = m.ngens();
    let minimal = ds.iter().all(no_unit_entries);
    Ok(FreeResolution { rank0, differentials: ds, minimal }.trimmed())
}

/// A minimal resolution, minimizing after each syzygy step so that later
/// kernels are taken of already minimized maps.
pub fn minimal_resolution(ctx: &RingContext, m: &PresentedModule, max_length: usize) -> Result<FreeResolution> {
    let mut rank0 = m.ngens();
    let mut ds = alloc::vec![m.relations().without_zero_columns()];
    eliminate_units(&mut rank0, &mut ds);
    loop {
        let last = ds.last().unwrap();
        if last.ncols() == 0 {
            break;
        }
        let k = module_kernel(ctx, last)?;
        if k.ncols() == 0 {
            break;
        }
        if ds.len() >= max_length {
            return Err(Error::ResolutionTooLong { max_length });
        }
        ds.push(k);
        eliminate_units(&mut rank0, &mut ds);
    }
    Ok(FreeResolution { rank0, differentials: ds, minimal: true }.trimmed())
}

/// Ranks of a minimal resolution; `b_0` is the minimal number of generators.
pub fn betti(ctx: &RingContext, m: &PresentedModule) -> Result<Vec<usize>> {
    Ok(minimal_resolution(ctx, m, ctx.nvars() + 1)?.ranks())
}

/// Projective dimension over the local ring; `None` for the zero module.
pub fn projdim(ctx: &RingContext, m: &PresentedModule) -> Result<Option<usize>> {
    Ok(minimal_resolution(ctx, m, ctx.nvars() + 1)?.length())
}

/// `Ext^q(M, O)` as the cohomology of the dual of a minimal resolution,
/// presented on generators of `ker d_{q+1}ᵀ` modulo `im d_qᵀ`.
pub fn ext_against_ring(ctx: &RingContext, m: &PresentedModule, q: usize) -> Result<PresentedModule> {
    let res = minimal_resolution(ctx, m, ctx.nvars() + 1)?;
    let ranks = res.ranks();
    let Some(&lq) = ranks.get(q) else { return Ok(PresentedModule::free(0)) };
    let cycles = match res.differential(q + 1) {
        Some(d) => module_kernel(ctx, &d.transpose())?,
        None => Matrix::identity(lq),
    };
    let boundaries = match q.checked_sub(1).and_then(|_| res.differential(q)) {
        Some(d) => d.transpose(),
        None => Matrix::new(lq),
    };
    PresentedModule::subquotient(ctx, &cycles, &boundaries)
}

/// Removes unit entries one pivot at a time.
pub fn minimize(r: &FreeResolution) -> FreeResolution {
    let mut rank0 = r.rank0;
    let mut ds = r.differentials.clone();
    eliminate_units(&mut rank0, &mut ds);
    FreeResolution { rank0, differentials: ds, minimal: true }.trimmed()
}

/// Pivots on the first unit entry in a column-major scan of `d_1, d_2, …`
/// until none is left.
fn eliminate_units(rank0: &mut usize, ds: &mut [Matrix]) {
    while let Some((j, r, c)) = first_unit(ds) {
        pivot(ds, j, r, c);
        if j == 0 {
            *rank0 -= 1;
        }
    }
}

fn first_unit(ds: &[Matrix]) -> Option<(usize, usize, usize)> {
    for (j, d) in ds.iter().enumerate() {
        for (c, col) in d.columns().iter().enumerate() {
            if let Some(r) = col.0.iter().position(Polynomial::is_local_unit) {
                return Some((j, r, c));
            }
        }
    }
    None
}

/// Splits off `O --u--> O` at entry `(r, c)` of `ds[j]`.
///
/// The other columns are cleared in row `r` by `col' ← u·col' − a·col_c`
/// (or `col' − (a/u)·col_c` for constant `u`), a change of basis over the
/// local ring. The next differential loses row `c`; its columns are thereby
/// scaled by the unit `u`, which changes neither kernels nor images.
fn pivot(ds: &mut [Matrix], j: usize, r: usize, c: usize) {
    let d = &mut ds[j];
    let u = d.get(r, c).clone();
    let pc = d.col(c).clone();
    let unit_inv = u.is_constant().then(|| u.constant_term().recip());
    for c2 in 0..d.ncols() {
        let a = d.get(r, c2).clone();
        if c2 == c || a.is_zero() {
            continue;
        }
        let col = match &unit_inv {
            Some(inv) => d.col(c2).sub(&pc.scale(&a.scale(inv))),
            None => d.col(c2).scale(&u).sub(&pc.scale(&a)),
        };
        d.set_col(c2, col);
    }
    d.remove_row(r);
    d.remove_col(c);
    if let Some(next) = ds.get_mut(j + 1) {
        next.remove_row(c);
    }
    if j > 0 {
        ds[j - 1].remove_col(r);
    }
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use proptest::prelude::*;

    use super::*;
    use crate::algebra::rank;
    use crate::algebra::{poly::tests::arb_poly, Rational, TermOrder};
    use crate::gb::tests::arb_homogeneous;
    use crate::gb::{FreeModuleElement, Ideal};

    fn ring(order: TermOrder) -> RingContext {
        RingContext::unweighted(&["x", "y", "z"], order).unwrap()
    }

    fn quotient(r: &RingContext, gens: &[&str]) -> PresentedModule {
        PresentedModule::quotient_ring(&Ideal::new(gens.iter().map(|s| r.poly(s)).collect()))
    }

    fn matrix(r: &RingContext, rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|s| r.poly(s)).collect()).collect()).unwrap()
    }

    /// `dim_K Tor_i(M, K)` from any resolution: evaluate at the origin and take
    /// homology of the resulting complex of vector spaces.
    fn tor_dims(res: &FreeResolution) -> Vec<usize> {
        let ranks: Vec<usize> =
            core::iter::once(res.rank0).chain(res.differentials.iter().map(Matrix::ncols)).collect();
        let at_origin = |d: &Matrix| -> usize {
            let rows: Vec<Vec<Rational>> =
                (0..d.nrows()).map(|i| (0..d.ncols()).map(|j| d.get(i, j).constant_term()).collect()).collect();
            if d.ncols() == 0 {
                0
            } else {
                rank(rows)
            }
        };
        let rk: Vec<usize> = res.differentials.iter().map(at_origin).collect();
        let mut out: Vec<usize> = (0..ranks.len())
            .map(|i| {
                let into = if i >= 1 { rk[i - 1] } else { 0 };
                let out = rk.get(i).copied().unwrap_or(0);
                ranks[i] - into - out
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    #[test]
    fn koszul_complexes() {
        for order in [TermOrder::Global, TermOrder::Local] {
            let r = ring(order);
            let m = quotient(&r, &["x", "y"]);
            assert_eq!(betti(&r, &m).unwrap(), vec![1, 2, 1]);
            assert_eq!(projdim(&r, &m).unwrap(), Some(2));
            let c = quotient(&r, &["x*z - y^2", "x^3 - y*z"]);
            assert_eq!(betti(&r, &c).unwrap(), vec![1, 2, 1]);
            let maximal = PresentedModule::image(&r, &matrix(&r, &[&["x", "y", "z"]]));
            assert_eq!(betti(&r, &maximal).unwrap(), vec![3, 3, 1]);
        }
    }

    #[test]
    fn minimal_complexes_are_unchanged() {
        let r = ring(TermOrder::Global);
        let res = free_resolution(&r, &quotient(&r, &["x", "y", "z"]), 4).unwrap();
        assert!(res.is_minimal());
        assert_eq!(minimize(&res), res);
        assert!(res.is_exact(&r).unwrap());
        assert_eq!(res.format(&r).lines().next().unwrap(), "0 → O^1 → O^3 → O^3 → O^1 → M → 0");
    }

    #[test]
    fn unit_entry_is_split_off() {
        let r = ring(TermOrder::Local);
        let res = FreeResolution::new(vec![matrix(&r, &[&["x", "0"], &["0", "1 + x"]])]).unwrap();
        assert!(!res.is_minimal());
        let m = minimize(&res);
        assert_eq!(res.ranks(), vec![2, 2]);
        assert_eq!(m.ranks(), vec![1, 1]);
        assert!(m.is_minimal());
        assert_eq!(m.differential(1).unwrap(), &matrix(&r, &[&["x"]]));
        // A unit quotient is the zero module.
        let zero = quotient(&r, &["1 + x"]);
        assert_eq!(betti(&r, &zero).unwrap(), Vec::<usize>::new());
        assert_eq!(projdim(&r, &zero).unwrap(), None);
    }

    #[test]
    fn ext_of_simple_modules() {
        let r = ring(TermOrder::Global);
        let free = PresentedModule::free(2);
        assert_eq!(projdim(&r, &free).unwrap(), Some(0));
        assert!(ext_against_ring(&r, &free, 0).unwrap().ngens() == 2);
        for q in 1..=3 {
            assert!(ext_against_ring(&r, &free, q).unwrap().is_zero(&r));
        }
        // Ext^q(O/(x, y), O) vanishes except in degree 2, where it is O/(x, y).
        let m = quotient(&r, &["x", "y"]);
        assert!(ext_against_ring(&r, &m, 0).unwrap().is_zero(&r));
        assert!(ext_against_ring(&r, &m, 1).unwrap().is_zero(&r));
        let e2 = ext_against_ring(&r, &m, 2).unwrap();
        assert_eq!(betti(&r, &e2).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn rejects_non_complexes() {
        let r = ring(TermOrder::Global);
        let d1 = matrix(&r, &[&["x", "y"]]);
        let d2 = Matrix::column(vec![r.poly("1"), r.poly("0")]);
        assert!(FreeResolution::new(vec![d1.clone(), d2]).is_err());
        assert!(FreeResolution::new(vec![d1, Matrix::identity(3)]).is_err());
    }

    fn arb_entry(local: bool) -> BoxedStrategy<Polynomial> {
        if local {
            arb_poly(3, 2, 3).boxed()
        } else {
            prop_oneof![Just(Polynomial::zero()), (1i64..=2).prop_flat_map(|d| arb_homogeneous(d, 2))].boxed()
        }
    }

    fn arb_presentation() -> impl Strategy<Value = (bool, PresentedModule)> {
        any::<bool>().prop_flat_map(|local| {
            (1usize..=2, 1usize..=3).prop_flat_map(move |(rows, cols)| {
                proptest::collection::vec(proptest::collection::vec(arb_entry(local), rows), cols).prop_map(move |cs| {
                    let cols = cs.into_iter().map(FreeModuleElement).collect();
                    (local, PresentedModule::new(Matrix::from_columns(rows, cols).unwrap()))
                })
            })
        })
    }

    fn ring_for(local: bool) -> RingContext {
        ring(if local { TermOrder::Local } else { TermOrder::Global })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn betti_numbers_match_tor_at_origin((local, m) in arb_presentation()) {
            let r = ring_for(local);
            let plain = free_resolution(&r, &m, 8).unwrap();
            let min = minimal_resolution(&r, &m, 4).unwrap();
            prop_assert_eq!(min.ranks(), tor_dims(&plain));
            prop_assert_eq!(minimize(&plain).ranks(), min.ranks());
            prop_assert!(min.ranks().len() <= 4);
            prop_assert!(min.differentials().iter().all(no_unit_entries));
            prop_assert!(min.is_exact(&r).unwrap());
        }

        #[test]
        fn minimization_is_idempotent((local, m) in arb_presentation()) {
            let r = ring_for(local);
            let once = minimize(&free_resolution(&r, &m, 8).unwrap());
            let twice = minimize(&once);
            prop_assert_eq!(twice.ranks(), once.ranks());
        }

        #[test]
        fn betti_numbers_ignore_redundant_generators(
            (local, m) in arb_presentation(),
            coeffs in proptest::collection::vec(arb_poly(3, 1, 2), 2),
        ) {
            // Adjoin a generator e equal to Σ c_i e_i.
            let r = ring_for(local);
            let n = m.ngens();
            let mut cols: Vec<FreeModuleElement> =
                m.relations().columns().iter().map(|c| c.concat(&FreeModuleElement::zero(1))).collect();
            let mut link: Vec<Polynomial> = coeffs.iter().take(n).map(|c| -c).collect();
            link.resize(n, Polynomial::zero());
            link.push(Polynomial::one());
            cols.push(FreeModuleElement(link));
            let bigger = PresentedModule::new(Matrix::from_columns(n + 1, cols).unwrap());
            prop_assert_eq!(betti(&r, &bigger).unwrap(), betti(&r, &m).unwrap());
        }
    }
}
