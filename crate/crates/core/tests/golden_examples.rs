//! Worked examples with independently known answers, through the public API.

use multilog_core::algebra::{binomial, Polynomial, RingContext, TermOrder};
use multilog_core::curves::{conductor, hat_minors, BranchParametrization, Value};
use multilog_core::gb::{ideal_equal, ideal_quotient, module_equal, FreeModuleElement, Ideal, Matrix};
use multilog_core::logarithmic::{evaluate, hat_form, Fraction, FractionalIdeal, LogProblem};
use multilog_core::resolution::{betti, projdim};

fn polys(r: &RingContext, src: &[&str]) -> Vec<Polynomial> {
    src.iter().map(|s| r.poly(s)).collect()
}

fn twisted_cubic_pair(order: TermOrder) -> LogProblem {
    let r = RingContext::new(&["x", "y", "z"], &[3, 4, 5], order).unwrap();
    let x = polys(&r, &["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"]);
    LogProblem::new(&r, x[..2].to_vec(), Some(x)).unwrap()
}

#[test]
fn residual_line_of_the_monomial_curve() {
    let p = twisted_cubic_pair(TermOrder::Global);
    let r = p.ctx().clone();
    // The residual component is the z-axis, parametrized by (0, 0, s).
    let line = BranchParametrization::monomial(&[&[0, 0, 1]]).unwrap();
    assert!(line.annihilates(p.ideal_y().gens()));
    assert!(ideal_equal(&r, p.ideal_y(), &Ideal::new(polys(&r, &["x", "y"]))));
    assert!(ideal_equal(&r, &ideal_quotient(&r, p.ideal_c(), p.ideal_y()), p.ideal_x()));
}

#[test]
fn monomial_curve_pair_golden_values() {
    for order in [TermOrder::Global, TermOrder::Local] {
        let p = twisted_cubic_pair(order);
        let r = p.ctx().clone();
        assert!(p.check_fundamental_form().unwrap());
        let forms = p.log_forms_numerator(2).unwrap();
        assert_eq!(betti(&r, &forms.presented(&r)).unwrap(), [9, 6]);
        let rx = p.residue_module().unwrap();
        assert_eq!(rx.minimal_generators(&r).unwrap(), 3);
        let one = Fraction::new(Polynomial::one(), Polynomial::one());
        assert!(p.residue_of_form(p.fundamental_form()).unwrap().equals(&one, &r, p.ideal_x()).unwrap());
        assert!(p.duality_check().unwrap());
        let report = p.freeness_report().unwrap();
        assert!(report.free);
        assert_eq!((report.p1, report.p2), (Some(1), Some(1)));
    }
}

#[test]
fn restricted_jacobian_values_on_the_monomial_curve() {
    let p = twisted_cubic_pair(TermOrder::Global);
    let r = p.ctx().clone();
    let param = BranchParametrization::monomial(&[&[3, 4, 5]]).unwrap();
    assert!(param.annihilates(p.ideal_x().gens()));
    let gamma = conductor(&param, 6).unwrap().gamma[0];
    assert_eq!(gamma, 3);
    // Hand substitution: the minors of (y² − xz, x³ − yz) restrict to
    // −3t⁸, 4t⁹, −5t¹⁰ (up to sign convention), so val(J_i) − val(x_i) = 5 for
    // the pair, while the Gorenstein identity val(J_i) = γ + val(x_i) − 1
    // would give 5, 6, 7.
    let values: Vec<Value> = hat_minors(&p).iter().map(|j| param.valuation(j).0[0]).collect();
    assert_eq!(values, [Value::Finite(8), Value::Finite(9), Value::Finite(10)]);
    for (i, v) in values.iter().enumerate() {
        let xi = param.valuation(&r.var(i)).0[0].finite().unwrap();
        assert_eq!(v.finite().unwrap() - xi, 5);
    }
    assert_eq!(p.restricted_jacobian().gens().len(), 3);
}

#[test]
fn jacobian_ideals_of_simple_germs() {
    let r = RingContext::unweighted(&["x", "y"], TermOrder::Local).unwrap();
    let smooth = LogProblem::new(&r, polys(&r, &["x"]), None).unwrap();
    assert!(ideal_equal(&r, &smooth.jacobian_ideal(), &Ideal::unit()));
    let rc = smooth.residue_module().unwrap();
    let oc = FractionalIdeal::new(vec![Polynomial::one()], Polynomial::one(), smooth.ideal_c().clone());
    assert!(rc.equals(&r, &oc).unwrap());
    assert!(smooth.jacobian_dual().unwrap().equals(&r, &oc).unwrap());
    let node = LogProblem::new(&r, polys(&r, &["x*y"]), None).unwrap();
    assert!(ideal_equal(&r, &node.jacobian_ideal().sum(node.ideal_c()), &Ideal::new(polys(&r, &["x", "y"]))));
}

#[test]
fn logarithmic_vector_fields_of_divisors() {
    let r = RingContext::unweighted(&["x", "y"], TermOrder::Global).unwrap();
    let cols = |src: &[[&str; 2]]| {
        Matrix::from_columns(2, src.iter().map(|c| FreeModuleElement(polys(&r, c))).collect()).unwrap()
    };
    let smooth = LogProblem::new(&r, polys(&r, &["x"]), None).unwrap();
    let der = smooth.log_kvector_fields().unwrap();
    assert!(module_equal(&r, &der.gens, &cols(&[["x", "0"], ["0", "1"]])).unwrap());
    let node = LogProblem::new(&r, polys(&r, &["x*y"]), None).unwrap();
    let der = node.log_kvector_fields().unwrap();
    assert!(module_equal(&r, &der.gens, &cols(&[["x", "0"], ["0", "y"]])).unwrap());
    // ω₀(x∂x) = -xy lies in (xy).
    let w0 = hat_form(&polys(&r, &["x", "-y"]));
    assert_eq!(evaluate(&w0, &FreeModuleElement(polys(&r, &["x", "0"]))), r.poly("-x*y"));
    let basis = node.log_forms_numerator(1).unwrap().gens;
    let saito = Matrix::from_columns(2, vec![w0, FreeModuleElement(polys(&r, &["y", "x"]))]).unwrap();
    assert!(module_equal(&r, &basis, &saito).unwrap());
}

#[test]
fn vector_fields_of_a_space_curve_have_projdim_one() {
    let r = RingContext::new(&["x", "y", "z"], &[4, 5, 6], TermOrder::Local).unwrap();
    let p = LogProblem::new(&r, polys(&r, &["x*z - y^2", "x^3 - z^2"]), None).unwrap();
    let der = p.log_kvector_fields().unwrap();
    assert!(der.satisfies_definition(&p).unwrap());
    assert_eq!(projdim(&r, &der.presented(&r)).unwrap(), Some(1));
    // Θ² / Der² is the Jacobian ideal: three minors, no more.
    assert_eq!(der.gens.nrows(), binomial(3, 2));
    assert_eq!(p.jacobian_ideal().gens().len(), 3);
}

#[test]
fn cone_over_two_quadrics_is_not_free() {
    let r = RingContext::unweighted(&["x", "y", "z", "w"], TermOrder::Global).unwrap();
    let f = polys(&r, &["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"]);
    let p = LogProblem::new(&r, f, None).unwrap();
    let report = p.freeness_report().unwrap();
    assert!(!report.free);
    assert_eq!(report.criteria(), [false; 5]);
    // An isolated singularity: O_C / J_C has depth zero.
    assert_eq!(report.p4, Some(4));
    // A normal surface has R_C = O_C, resolved by the Koszul complex.
    assert_eq!(report.residue_betti, [1, 2, 1]);
    assert!(p.duality_check().unwrap());
}
