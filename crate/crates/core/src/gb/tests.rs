use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::algebra::{monomials_of_degree, rank, Monomial, Polynomial, Rational, RingContext, TermOrder};

fn ring(order: TermOrder) -> RingContext {
    RingContext::unweighted(&["x", "y", "z"], order).unwrap()
}

fn ideal(r: &RingContext, gens: &[&str]) -> Ideal {
    Ideal::new(gens.iter().map(|s| r.poly(s)).collect())
}

fn col(r: &RingContext, entries: &[&str]) -> FreeModuleElement {
    FreeModuleElement(entries.iter().map(|s| r.poly(s)).collect())
}

fn mat(rows: usize, cols: Vec<FreeModuleElement>) -> Matrix {
    Matrix::from_columns(rows, cols).unwrap()
}

#[test]
fn reduced_basis_of_variables() {
    let r = ring(TermOrder::Global);
    let g = groebner_basis(&r, &ideal(&r, &["x", "y"]).to_matrix());
    assert!(module_equal(&r, &g, &ideal(&r, &["y", "x"]).to_matrix()).unwrap());
    let mut entries: Vec<_> = g.columns().iter().map(|c| c.0[0].clone()).collect();
    entries.sort_by(|a, b| a.terms().cmp(b.terms()));
    assert_eq!(entries, vec![r.poly("y"), r.poly("x")]);
}

#[test]
fn spolys_reduce_to_zero() {
    for order in [TermOrder::Global, TermOrder::Local] {
        let r = ring(order);
        let sb = StandardBasis::new(&r, &ideal(&r, &["x^2 - y", "y^2"]).to_matrix());
        assert!(sb.is_certified());
        assert!(sb.contains(&col(&r, &["x^4"])).unwrap());
    }
}

#[test]
fn local_unit_factor_is_dropped() {
    let r = ring(TermOrder::Local);
    let sb = StandardBasis::new(&r, &ideal(&r, &["x - x^2"]).to_matrix());
    assert_eq!(sb.leading_terms(), vec![(0, Monomial::var(0))]);
    let x = ideal(&r, &["x"]);
    assert!(ideal_equal(&r, &x, &ideal(&r, &["x - x^2"])));
    // The colon contains the unit 1 - x.
    let q = ideal_quotient(&r, &ideal(&r, &["x - x^2"]), &x);
    assert!(ideal_contains(&r, &q, &Polynomial::one()));
    // Globally the two ideals differ.
    let g = ring(TermOrder::Global);
    assert!(!ideal_equal(&g, &ideal(&g, &["x"]), &ideal(&g, &["x - x^2"])));
}

#[test]
fn kernel_examples() {
    for order in [TermOrder::Global, TermOrder::Local] {
        let r = ring(order);
        let k = module_kernel(&r, &Matrix::row(vec![r.poly("x"), r.poly("y")])).unwrap();
        assert!(module_equal(&r, &k, &mat(2, vec![col(&r, &["y", "-x"])])).unwrap());
        assert!(module_kernel(&r, &Matrix::identity(2)).unwrap().is_zero());
        assert!(module_kernel(&r, &Matrix::column(vec![r.poly("x"), r.poly("y")])).unwrap().is_zero());
    }
}

#[test]
fn quotient_examples() {
    let r = ring(TermOrder::Global);
    let q = ideal_quotient(&r, &ideal(&r, &["x*y"]), &ideal(&r, &["x"]));
    assert!(ideal_equal(&r, &q, &ideal(&r, &["y"])));
    let i = ideal(&r, &["x^2 - y", "y*z"]);
    assert!(ideal_equal(&r, &ideal_quotient(&r, &i, &Ideal::unit()), &i));
}

#[test]
fn residual_line_of_twisted_pair() {
    for order in [TermOrder::Global, TermOrder::Local] {
        let r = ring(order);
        let c = ideal(&r, &["x*z - y^2", "x^3 - y*z"]);
        let x = ideal(&r, &["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"]);
        let y = ideal_quotient(&r, &c, &x);
        // Vanishes on the residual line x = y = 0 ...
        for g in y.gens() {
            for (m, _) in g.terms() {
                assert!(m.exponent(0) > 0 || m.exponent(1) > 0);
            }
        }
        assert!(ideal_equal(&r, &y, &ideal(&r, &["x", "y"])));
        // ... and quotienting back recovers X.
        assert!(ideal_equal(&r, &ideal_quotient(&r, &c, &y), &x));
    }
}

#[test]
fn zerodivisor_examples() {
    let r = ring(TermOrder::Global);
    let xy = ideal(&r, &["x*y"]);
    assert_eq!(is_zerodivisor(&r, &r.poly("x"), &xy).unwrap(), ZeroDivisorTest { zerodivisor: true, vanishes: false });
    assert!(!is_zerodivisor(&r, &r.poly("x + y"), &xy).unwrap().zerodivisor);
    assert!(!is_zerodivisor(&r, &r.poly("x"), &ideal(&r, &["y"])).unwrap().zerodivisor);
    let z = is_zerodivisor(&r, &r.poly("x^2*y"), &xy).unwrap();
    assert!(z.zerodivisor && z.vanishes);
    assert!(is_zerodivisor(&r, &r.poly("x"), &Ideal::unit()).is_err());
}

#[test]
fn module_equality_examples() {
    let r = ring(TermOrder::Global);
    let a = ideal(&r, &["x", "y"]).to_matrix();
    assert!(module_equal(&r, &a, &ideal(&r, &["x + y", "y"]).to_matrix()).unwrap());
    assert!(!module_equal(&r, &ideal(&r, &["x"]).to_matrix(), &ideal(&r, &["x^2"]).to_matrix()).unwrap());
    let s = mat(2, vec![col(&r, &["y", "-x"])]);
    let t = mat(2, vec![col(&r, &["2*y", "-2*x"])]);
    assert!(module_equal(&r, &s, &t).unwrap());
    assert!(matches!(module_equal(&r, &s, &a), Err(crate::Error::RankMismatch { .. })));
}

fn leibniz(m: &Matrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    // Sum over permutations with explicit inversion-count signs.
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut acc = Polynomial::zero();
    for p in perms(rows.len()) {
        let inv =
            (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut t = Polynomial::one();
        for (i, &pi) in p.iter().enumerate() {
            t = &t * m.get(rows[i], cols[pi]);
        }
        acc = if inv % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[test]
fn jacobian_minors_of_twisted_pair() {
    let r = ring(TermOrder::Global);
    let f = [r.poly("x*z - y^2"), r.poly("x^3 - y*z")];
    let jac = Matrix::from_rows(f.iter().map(|p| (0..3).map(|i| p.derivative(i)).collect()).collect()).unwrap();
    let ms = minors(&jac, 2).unwrap();
    assert_eq!(ms.len(), 3);
    // Columns {x,y}, {x,z}, {y,z}.
    assert_eq!(ms[0], r.poly("z*(-z) - (-2*y)*3*x^2"));
    assert_eq!(ms[1], r.poly("z*(-y) - x*3*x^2"));
    assert_eq!(ms[2], r.poly("(-2*y)*(-y) - x*(-z)"));
    let subsets = [[0, 1], [0, 2], [1, 2]];
    for (k, s) in subsets.iter().enumerate() {
        assert_eq!(ms[k], leibniz(&jac, &[0, 1], s));
    }
    assert_eq!(minors(&Matrix::identity(2), 2).unwrap(), vec![Polynomial::one()]);
    let row = Matrix::row(vec![r.poly("x"), r.poly("y")]);
    assert_eq!(minors(&row, 1).unwrap(), vec![r.poly("x"), r.poly("y")]);
    assert!(minors(&row, 2).is_err());
}

#[test]
fn lift_with_unit() {
    let r = ring(TermOrder::Local);
    let gens = ideal(&r, &["x - x^2", "y"]).to_matrix();
    let l = Lifter::new(&r, &gens);
    let f = col(&r, &["x + y*z"]);
    let lift = l.lift(&f).unwrap().unwrap();
    assert!(lift.unit.is_local_unit());
    assert_eq!(f.scale(&lift.unit), combine(&gens, &lift.coefficients));
    assert!(l.lift(&col(&r, &["z"])).unwrap().is_none());
}

// ---- linear algebra oracle ----

/// `dim_K K[x,y,z] / (I + m^k)` by linear algebra on monomials of degree `< k`.
fn colength_mod_power(gens: &[Polynomial], k: i64) -> usize {
    let mons: Vec<Monomial> = (0..k).flat_map(|d| monomials_of_degree(3, d)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &mons {
            let p = g.mul_term(m, &Rational::from_integer(1.into()));
            let row: Vec<Rational> = mons.iter().map(|b| p.coefficient(b)).collect();
            rows.push(row);
        }
    }
    mons.len() - rank(rows)
}

/// Monomials of degree `< k` outside the monomial ideal generated by `leads`.
fn standard_monomials_below(leads: &[Monomial], k: i64) -> usize {
    (0..k).flat_map(|d| monomials_of_degree(3, d)).filter(|m| !leads.iter().any(|l| l.divides(m))).count()
}

#[test]
fn local_standard_bases_are_certified() {
    let l = ring(TermOrder::Local);
    for gens in
        [&["x - x^2"][..], &["x^2 + y^3 + x*y*z", "y*z - z^4"], &["x^3 - y^2 + x*y^2", "2*z^2 + x*z^3", "3*x^3*z"]]
    {
        let sb = StandardBasis::new(&l, &ideal(&l, gens).to_matrix());
        assert!(sb.is_certified(), "{gens:?}");
    }
}

/// Coordinates of homogeneous vectors of degree `d` in the monomial basis of `R^rank`.
fn coords(v: &FreeModuleElement, d: i64, shifts: &[i64], n: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for (i, p) in v.0.iter().enumerate() {
        for m in monomials_of_degree(n, d - shifts[i]) {
            out.push(p.coefficient(&m));
        }
    }
    out
}

/// Dimension of the degree-`d` part of the span of homogeneous `gens`.
fn span_dim(gens: &[(FreeModuleElement, i64)], d: i64, shifts: &[i64], n: usize) -> usize {
    let mut rows = Vec::new();
    for (g, dg) in gens {
        for m in monomials_of_degree(n, d - dg) {
            let t = Polynomial::term(m, Rational::from_integer(1.into()));
            rows.push(coords(&g.scale(&t), d, shifts, n));
        }
    }
    if rows.is_empty() {
        return 0;
    }
    rank(rows)
}

fn homogeneous_degree(v: &FreeModuleElement, r: &RingContext) -> Option<i64> {
    let mut d = None;
    for p in &v.0 {
        if p.is_zero() {
            continue;
        }
        let e = p.weighted_degree(r).unwrap()?;
        if d.is_some_and(|d| d != e) {
            return None;
        }
        d = Some(e);
    }
    d
}

pub(crate) fn arb_homogeneous(deg: i64, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let mons = monomials_of_degree(3, deg);
    let n = mons.len();
    proptest::collection::vec((0..n, -3i64..=3), 1..=max_terms)
        .prop_map(move |ts| {
            Polynomial::from_terms(ts.into_iter().map(|(i, c)| (mons[i], Rational::from_integer(c.into()))).collect())
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_row() -> impl Strategy<Value = Vec<Polynomial>> {
    proptest::collection::vec((1i64..=3).prop_flat_map(|d| arb_homogeneous(d, 3)), 2..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_matches_linear_algebra(row in arb_row()) {
        let r = ring(TermOrder::Global);
        let m = Matrix::row(row.clone());
        let k = module_kernel(&r, &m).unwrap();
        for c in k.columns() {
            prop_assert!(m.apply(c).unwrap().is_zero());
        }
        // Column j of the kernel lives in degree shift_j = deg(row_j) below.
        let shifts: Vec<i64> = row.iter().map(|p| p.weighted_degree(&r).unwrap().unwrap_or(0)).collect();
        let kg: Vec<(FreeModuleElement, i64)> = k
            .columns()
            .iter()
            .map(|c| {
                let (i, p) = c.0.iter().enumerate().find(|(_, p)| !p.is_zero()).unwrap();
                let d = p.weighted_degree(&r).unwrap().unwrap() + shifts[i];
                (c.clone(), d)
            })
            .collect();
        for d in 0..=8 {
            // Kernel in total degree d: coordinates v_i of degree d - shift_i.
            let dom: usize = shifts.iter().map(|&s| monomials_of_degree(3, d - s).len()).sum();
            let mut images = Vec::new();
            for (i, &s) in shifts.iter().enumerate() {
                for mo in monomials_of_degree(3, d - s) {
                    let mut v = FreeModuleElement::zero(row.len());
                    v.0[i] = Polynomial::term(mo, Rational::from_integer(1.into()));
                    images.push(coords(&m.apply(&v).unwrap(), d, &[0], 3));
                }
            }
            let rk = if images.is_empty() || images[0].is_empty() { 0 } else { rank(images) };
            let kernel_dim = dom - rk;
            prop_assert_eq!(span_dim(&kg, d, &shifts, 3), kernel_dim, "degree {}", d);
        }
    }

    #[test]
    fn membership_matches_linear_algebra(
        gens in proptest::collection::vec((1i64..=3).prop_flat_map(|d| arb_homogeneous(d, 3)), 1..=3),
        cands in proptest::collection::vec((2i64..=5).prop_flat_map(|d| arb_homogeneous(d, 4)), 1..=3),
        mults in proptest::collection::vec(0usize..3, 1..=3),
    ) {
        let r = ring(TermOrder::Global);
        let i = Ideal::new(gens.clone());
        let sb = StandardBasis::new(&r, &i.to_matrix());
        prop_assert!(sb.is_certified());
        let local = StandardBasis::new(&r.with_order(TermOrder::Local), &i.to_matrix());
        prop_assert!(local.is_certified());
        let hg: Vec<(FreeModuleElement, i64)> = gens
            .iter()
            .map(|g| (FreeModuleElement(vec![g.clone()]), g.weighted_degree(&r).unwrap().unwrap()))
            .collect();
        // Candidates: random homogeneous forms, and homogeneous members built from the generators.
        let mut tests: Vec<Polynomial> = cands.clone();
        for (k, &j) in mults.iter().enumerate() {
            let g = &gens[j % gens.len()];
            let c = &cands[k % cands.len()];
            tests.push(g * c);
        }
        for f in tests {
            let d = f.weighted_degree(&r).unwrap().unwrap();
            prop_assume!(d <= 8);
            let fv = FreeModuleElement(vec![f.clone()]);
            let base = span_dim(&hg, d, &[0], 3);
            let mut with = hg.clone();
            with.push((fv.clone(), d));
            let member = span_dim(&with, d, &[0], 3) == base;
            prop_assert_eq!(sb.contains(&fv).unwrap(), member);
            prop_assert_eq!(local.contains(&fv).unwrap(), member);
        }
    }

    #[test]
    fn local_kernel_agrees_with_global_on_graded_input(row in arb_row()) {
        let g = ring(TermOrder::Global);
        let l = ring(TermOrder::Local);
        let m = Matrix::row(row);
        let kg = module_kernel(&g, &m).unwrap();
        let kl = module_kernel(&l, &m).unwrap();
        for c in kl.columns() {
            prop_assert!(m.apply(c).unwrap().is_zero());
        }
        prop_assert!(module_equal(&l, &kg, &kl).unwrap());
    }

    #[test]
    fn local_standard_basis_matches_hilbert_samuel(
        gens in proptest::collection::vec(crate::algebra::poly::tests::arb_poly(3, 2, 4), 1..=3)
    ) {
        let l = ring(TermOrder::Local);
        let i = Ideal::new(gens.clone());
        let sb = StandardBasis::new(&l, &i.to_matrix());
        let leads: Vec<Monomial> = sb.leading_terms().into_iter().map(|(_, m)| m).collect();
        for k in 1..=5 {
            prop_assert_eq!(standard_monomials_below(&leads, k), colength_mod_power(i.gens(), k));
        }
        for g in i.gens() {
            prop_assert!(sb.contains(&FreeModuleElement(vec![g.clone()])).unwrap());
            // Multiplying by a unit and adding a multiple stays inside.
            let u = l.poly("1 + x - 2*y*z");
            let h = &(g * &u) + &(g * &l.poly("z^2"));
            prop_assert!(sb.contains(&FreeModuleElement(vec![h])).unwrap());
        }
        for c in sb.to_matrix().columns() {
            prop_assert!(ideal_contains(&l, &i, &c.0[0]));
        }
    }

    #[test]
    fn quotient_is_sound(
        a in proptest::collection::vec((1i64..=3).prop_flat_map(|d| arb_homogeneous(d, 3)), 1..=2),
        b in proptest::collection::vec((1i64..=2).prop_flat_map(|d| arb_homogeneous(d, 2)), 1..=2),
        local in any::<bool>(),
    ) {
        let r = ring(if local { TermOrder::Local } else { TermOrder::Global });
        let (i, j) = (Ideal::new(a), Ideal::new(b));
        let q = ideal_quotient(&r, &i, &j);
        let sb = StandardBasis::new(&r, &i.to_matrix());
        for g in q.gens() {
            for h in j.gens() {
                prop_assert!(sb.contains(&FreeModuleElement(vec![g * h])).unwrap());
            }
        }
        for g in i.gens() {
            prop_assert!(ideal_contains(&r, &q, g));
        }
    }
}

#[test]
fn homogeneous_degree_helper() {
    let r = ring(TermOrder::Global);
    assert_eq!(homogeneous_degree(&col(&r, &["x", "y"]), &r), Some(1));
    assert_eq!(homogeneous_degree(&col(&r, &["x", "y^2"]), &r), None);
}
