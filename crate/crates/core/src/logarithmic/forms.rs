//! Differential forms and multivector fields with polynomial coefficients,
//! stored as coordinate vectors in the lexicographic basis `dx_I`.

use alloc::vec::Vec;

use crate::algebra::{basis, basis_position, binomial, Polynomial};
use crate::gb::{FreeModuleElement, Matrix};

/// `dp = Σ ∂p/∂x_i dx_i`.
pub fn differential(p: &Polynomial, m: usize) -> FreeModuleElement {
    FreeModuleElement((0..m).map(|i| p.derivative(i)).collect())
}

/// `a ∧ b` for a `p`-form `a` and a `q`-form `b` in `m` variables.
pub fn wedge(a: &FreeModuleElement, p: usize, b: &FreeModuleElement, q: usize, m: usize) -> FreeModuleElement {
    let mut out = FreeModuleElement::zero(binomial(m, p + q));
    let (ba, bb) = (basis(m, p), basis(m, q));
    for (i, &ia) in ba.iter().enumerate() {
        if a.0[i].is_zero() {
            continue;
        }
        for (j, &jb) in bb.iter().enumerate() {
            if b.0[j].is_zero() {
                continue;
            }
            if let Some((sign, u)) = ia.wedge(jb) {
                let t = &a.0[i] * &b.0[j];
                let slot = &mut out.0[basis_position(m, u)];
                *slot = if sign > 0 { &*slot + &t } else { &*slot - &t };
            }
        }
    }
    out
}

/// Matrix of `ω ↦ a ∧ ω` from `q`-forms to `(p+q)`-forms.
pub fn wedge_matrix(a: &FreeModuleElement, p: usize, q: usize, m: usize) -> Matrix {
    let rows = binomial(m, p + q);
    let cols = (0..binomial(m, q)).map(|j| wedge(a, p, &FreeModuleElement::unit(binomial(m, q), j), q, m)).collect();
    Matrix::from_columns(rows, cols).unwrap()
}

/// `dp_1 ∧ … ∧ dp_k`; its coordinates are the `k × k` minors of the Jacobian
/// matrix on the column sets `I`, in basis order.
pub fn wedge_of_differentials(ps: &[Polynomial], m: usize) -> FreeModuleElement {
    let mut acc = FreeModuleElement(alloc::vec![Polynomial::one()]);
    for (q, p) in ps.iter().enumerate() {
        acc = wedge(&acc, q, &differential(p, m), 1, m);
    }
    acc
}

/// `ω(δ)` for a `k`-form and a `k`-vector field on dual bases.
pub fn evaluate(form: &FreeModuleElement, field: &FreeModuleElement) -> Polynomial {
    form.0.iter().zip(&field.0).fold(Polynomial::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// `Σ_i c_i dx̂_i`, where `dx̂_i` omits `dx_i` from `dx_1 ∧ … ∧ dx_m`.
pub fn hat_form(coefficients: &[Polynomial]) -> FreeModuleElement {
    let m = coefficients.len();
    let full = crate::algebra::ExteriorIndex::from_indices(&(0..m).collect::<Vec<_>>()).unwrap();
    let mut out = FreeModuleElement::zero(m);
    for (i, c) in coefficients.iter().enumerate() {
        out.0[basis_position(m, full.without(i))] = c.clone();
    }
    out
}

/// Vertical concatenation of matrices with equal column counts.
pub(crate) fn stack(blocks: &[Matrix], ncols: usize) -> Matrix {
    let rows: usize = blocks.iter().map(Matrix::nrows).sum();
    let cols = (0..ncols)
        .map(|j| {
            let mut c = Vec::with_capacity(rows);
            for b in blocks {
                c.extend(b.col(j).0.iter().cloned());
            }
            FreeModuleElement(c)
        })
        .collect();
    Matrix::from_columns(rows, cols).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RingContext, TermOrder};
    use crate::gb::minors;

    fn ring() -> RingContext {
        RingContext::unweighted(&["x", "y", "z"], TermOrder::Global).unwrap()
    }

    #[test]
    fn wedge_of_differentials_are_jacobian_minors() {
        let r = ring();
        let f = [r.poly("x*z - y^2"), r.poly("x^3 - y*z")];
        let jac = Matrix::from_rows(f.iter().map(|p| (0..3).map(|i| p.derivative(i)).collect()).collect()).unwrap();
        let df = wedge_of_differentials(&f, 3);
        assert_eq!(df.0, minors(&jac, 2).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let r = ring();
        let a = differential(&r.poly("x*y"), 3);
        let b = differential(&r.poly("z^2 + x"), 3);
        let ab = wedge(&a, 1, &b, 1, 3);
        let ba = wedge(&b, 1, &a, 1, 3);
        assert_eq!(ab, ba.scale(&Polynomial::from_int(-1)));
        assert!(wedge(&a, 1, &a, 1, 3).is_zero());
    }

    #[test]
    fn euler_form_of_the_plane() {
        let r = RingContext::unweighted(&["x", "y"], TermOrder::Global).unwrap();
        // x dy - y dx: dx̂_1 = dy, dx̂_2 = dx.
        let w = hat_form(&[r.poly("x"), r.poly("-y")]);
        assert_eq!(w.0, [r.poly("-y"), r.poly("x")]);
    }

    #[test]
    fn wedge_matrix_matches_wedge() {
        let r = ring();
        let a = differential(&r.poly("x*y*z"), 3);
        let m = wedge_matrix(&a, 1, 1, 3);
        let w = FreeModuleElement(alloc::vec![r.poly("y"), r.poly("1"), r.poly("x^2")]);
        assert_eq!(m.apply(&w).unwrap(), wedge(&a, 1, &w, 1, 3));
    }
}
