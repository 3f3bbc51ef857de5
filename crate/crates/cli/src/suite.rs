//! The acceptance criteria, each checked at its exact tolerance.
//!
//! Random cases come from a ChaCha stream with fixed seeds, so the suite is
//! deterministic.

use std::time::Instant;

use multilog_core::algebra::{
    binomial, monomials_of_degree, rank, rat, Monomial, Polynomial, Rational, RingContext, TermOrder,
};
use multilog_core::curves::{betti_theorem_check, conductor, rc_generation_check, val_identity_check, Value};
use multilog_core::gb::{combine, determinant, ideal_contains, module_kernel, FreeModuleElement, Matrix, Submodule};
use multilog_core::logarithmic::{
    decomposition_check, divisor_residue_comparison, equation_independence_check, evaluate, koszul_certified,
    smooth_splitting_check, Fraction, LogProblem,
};
use multilog_core::resolution::betti;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{self, CorpusItem};

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "golden resolution of the monomial curve pair"),
    (2, "golden resolution of the non-quasi-homogeneous curve"),
    (3, "Betti formulas for quasi-homogeneous curves"),
    (4, "freeness diagnostics agree on the corpus"),
    (5, "duality on the corpus"),
    (6, "transformation law on the corpus"),
    (7, "valuation identities on (t^4, t^5, t^6)"),
    (8, "structural property suites"),
    (9, "mixed equations lose residues"),
];

pub const CASES: usize = 200;

type Check = Result<(bool, String), String>;

fn engine<T>(r: multilog_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn problem(name: &str) -> Result<LogProblem, String> {
    engine(corpus::get(name).problem.log_problem())
}

pub fn run(id: u8) -> Outcome {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
    let start = Instant::now();
    let result = match id {
        1 => golden_pair(),
        2 => golden_non_qh(),
        3 => betti_formulas(),
        4 => freeness_suite(),
        5 => duality_suite(),
        6 => transformation_suite(),
        7 => valuations(),
        8 => property_suites(),
        9 => mixed_equations(),
        _ => Err(format!("no criterion {}", id)),
    };
    let (pass, detail) = result.unwrap_or_else(|e| (false, format!("error: {}", e)));
    Outcome { id, title, pass, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs the given criteria concurrently; outcomes come back sorted by id.
pub fn run_all(ids: &[u8]) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = std::thread::scope(|s| {
        ids.iter()
            .map(|&id| s.spawn(move || run(id)))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });
    out.sort_by_key(|o| o.id);
    out
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("{} criterion {}: {} ({})", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

fn golden_pair() -> Check {
    let p = problem("monomial-curve-pair")?;
    let r = p.ctx().clone();
    let b = engine(betti(&r, &engine(p.log_forms_numerator(2))?.presented(&r)))?;
    let gens = engine(engine(p.residue_module())?.minimal_generators(&r))?;
    Ok((b == [9, 6] && gens == 3, format!("Betti {:?}, R_X minimally generated by {}", b, gens)))
}

fn golden_non_qh() -> Check {
    let p = problem("non-qh-space-curve")?;
    let r = p.ctx().clone();
    if r.order() != TermOrder::Local {
        return Err("expected the local order".into());
    }
    let b = engine(betti(&r, &engine(p.log_forms_numerator(2))?.presented(&r)))?;
    Ok((b == [9, 6], format!("Betti {:?}", b)))
}

fn betti_formulas() -> Check {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, residues, forms) in
        [("qh-space-curve", &[2, 5, 3][..], &[8, 5][..]), ("glued-curve", &[2, 7, 9, 4], &[14, 19, 9])]
    {
        let p = problem(name)?;
        let ci = engine(koszul_certified(p.ctx(), p.equations()))?;
        let b = engine(betti_theorem_check(&p))?;
        let ok = ci && b.hypotheses_hold && b.holds() && b.residue_betti == residues && b.forms_betti == forms;
        pass &= ok;
        detail.push(format!("{}: R_C {:?}, forms {:?}", name, b.residue_betti, b.forms_betti));
    }
    Ok((pass, detail.join("; ")))
}

fn freeness_suite() -> Check {
    let mut disagreements = 0;
    let mut non_free = Vec::new();
    let items = corpus::items();
    for item in &items {
        let p = engine(item.problem.log_problem())?;
        match p.freeness_report() {
            Ok(f) => {
                if f.criteria().iter().any(|&c| c != f.free) {
                    disagreements += 1;
                }
                if !f.free {
                    non_free.push(item.name);
                }
            }
            Err(multilog_core::Error::Inconsistent(_)) => disagreements += 1,
            Err(e) => return Err(format!("{}: {}", item.name, e)),
        }
    }
    let controls = if non_free.is_empty() {
        "no non-free example in corpus".to_string()
    } else {
        format!("non-free: {}", non_free.join(", "))
    };
    Ok((disagreements == 0, format!("{} items, {} disagreements, {}", items.len(), disagreements, controls)))
}

fn duality_suite() -> Check {
    let mut failed = Vec::new();
    let items = corpus::items();
    for item in &items {
        let p = engine(item.problem.log_problem())?;
        if !engine(p.duality_check())? {
            failed.push(item.name);
        }
    }
    Ok((failed.is_empty(), format!("{} items, failures: {:?}", items.len(), failed)))
}

/// An integer matrix with entries in `[-3, 3]` and nonzero determinant.
pub fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Polynomial>> =
            (0..k).map(|_| (0..k).map(|_| Polynomial::from_int(rng.gen_range(-3..=3))).collect()).collect();
        let a = Matrix::from_rows(rows).expect("square");
        if determinant(&a).is_ok_and(|d| !d.is_zero()) {
            return a;
        }
    }
}

fn complete_intersections() -> Vec<CorpusItem> {
    corpus::items().into_iter().filter(|i| i.problem.x.is_none()).collect()
}

fn transformation_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut failed = Vec::new();
    for item in complete_intersections() {
        let p = engine(item.problem.log_problem())?;
        for _ in 0..3 {
            let a = random_invertible(&mut rng, p.codim());
            let c = engine(equation_independence_check(&p, &a))?;
            checked += 1;
            if !c.holds() {
                failed.push(item.name);
            }
        }
    }
    Ok((failed.is_empty(), format!("{} transitions, failures: {:?}", checked, failed)))
}

fn valuations() -> Check {
    let item = corpus::get("qh-space-curve");
    let p = engine(item.problem.log_problem())?;
    let param = item.problem.parametrization_at(None).ok_or("missing parametrization")?;
    let gamma = engine(conductor(&param, item.problem.conductor_bound()))?.gamma;
    let v = engine(val_identity_check(&p, &param, item.problem.conductor_bound()))?;
    let minors: Vec<Value> = v.minor_values.iter().map(|x| x.0[0]).collect();
    let expected: Vec<Value> = [4, 5, 6].iter().map(|&w| Value::Finite(8 + w - 1)).collect();
    let g = engine(rc_generation_check(&p))?;
    let pass = gamma == [8]
        && v.gamma == [8]
        && minors == expected
        && v.residue_value.0 == [Value::Finite(-7)]
        && v.holds()
        && g.holds();
    Ok((
        pass,
        format!(
            "γ = {:?}, val(J) = {:?}, val(res ω₀) = {}, generation {}",
            gamma,
            minors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            v.residue_value,
            g.holds()
        ),
    ))
}

fn mixed_equations() -> Check {
    let p = problem("qh-space-curve")?;
    let a = Matrix::from_rows(vec![
        vec![Polynomial::one(), Polynomial::one()],
        vec![Polynomial::zero(), Polynomial::one()],
    ])
    .expect("square");
    let c = engine(divisor_residue_comparison(&p, &a))?;
    Ok((c.contained && !c.equal, format!("contained {}, equal {}", c.contained, c.equal)))
}

// ---- property suites ----

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u16, max_terms: usize) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n)
        .map(|_| {
            let e: Vec<u16> = (0..nvars).map(|_| rng.gen_range(0..=max_degree)).collect();
            (Monomial::from_exponents(&e), rat(rng.gen_range(-3..=3)))
        })
        .collect();
    Polynomial::from_terms(terms)
}

fn random_homogeneous(rng: &mut ChaCha8Rng, degree: i64, max_terms: usize) -> Polynomial {
    let mons = monomials_of_degree(3, degree);
    loop {
        let n = rng.gen_range(1..=max_terms);
        let p = Polynomial::from_terms(
            (0..n).map(|_| (mons[rng.gen_range(0..mons.len())], rat(rng.gen_range(-3..=3)))).collect(),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn property_problems() -> Result<Vec<LogProblem>, String> {
    ["normal-crossing-plane", "qh-space-curve", "monomial-curve-pair"].iter().map(|n| problem(n)).collect()
}

/// `res` is linear, takes `I_C Ω^k` into `I_X`, and so maps the span of the
/// generators onto `R_X`.
fn residue_sequence(rng: &mut ChaCha8Rng, problems: &[LogProblem]) -> Result<bool, String> {
    let p = &problems[rng.gen_range(0..problems.len())];
    let r = p.ctx();
    let m = r.nvars();
    let map = engine(p.residue_map())?;
    let gens = engine(p.log_forms_numerator(p.codim()))?.gens;
    let a: Vec<Polynomial> = (0..gens.ncols()).map(|_| random_poly(rng, m, 2, 2)).collect();
    let tf = p.ideal_c().times_free(binomial(m, p.codim()));
    let t: Vec<Polynomial> = (0..tf.ncols()).map(|_| random_poly(rng, m, 1, 2)).collect();
    let eta = combine(&tf, &t);
    let zero = engine(map.residue(&eta))?.numerator;
    if !engine(Submodule::new(r, &p.ideal_x().to_matrix()).contains(&FreeModuleElement(vec![zero])))? {
        return Ok(false);
    }
    let lhs = engine(map.residue(&combine(&gens, &a).add(&eta)))?;
    let mut num = Polynomial::zero();
    let mut den = Polynomial::one();
    for (c, g) in a.iter().zip(gens.columns()) {
        let s = engine(map.residue(g))?;
        num = &(&num * &s.denominator) + &(&(c * &s.numerator) * &den);
        den = &den * &s.denominator;
    }
    engine(lhs.equals(&Fraction::new(num, den), r, p.ideal_x()))
}

fn pairing(rng: &mut ChaCha8Rng, problems: &[LogProblem]) -> Result<bool, String> {
    let p = &problems[rng.gen_range(0..problems.len())];
    let m = p.nvars();
    let forms = engine(p.log_forms_numerator(p.codim()))?.gens;
    let fields = engine(p.log_kvector_fields())?.gens;
    let a: Vec<Polynomial> = (0..forms.ncols()).map(|_| random_poly(rng, m, 2, 2)).collect();
    let b: Vec<Polynomial> = (0..fields.ncols()).map(|_| random_poly(rng, m, 2, 2)).collect();
    let v = evaluate(&combine(&forms, &a), &combine(&fields, &b));
    Ok(ideal_contains(p.ctx(), p.ideal_c(), &v))
}

fn decomposition(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let (weights, src) = if rng.gen_bool(0.5) {
        ([4, 5, 6], ["x*z", "y^2", "x^3", "z^2"])
    } else {
        ([2, 2, 2], ["x*y", "z^2", "x^2", "y^2"])
    };
    let r = engine(RingContext::new(&["x", "y", "z"], &weights, TermOrder::Global))?;
    let t: Vec<Polynomial> = src.iter().map(|m| r.poly(m).scale(&rat(rng.gen_range(1..=5)))).collect();
    let h = [&t[0] - &t[1], &t[2] - &t[3]];
    Ok(engine(decomposition_check(&r, &h))?.holds())
}

fn splitting(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let r = engine(RingContext::unweighted(&["x", "y", "z"], TermOrder::Global))?;
    let (p, q, c, e) = loop {
        let p = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=4);
        let c = if rng.gen_bool(0.5) { rng.gen_range(1..=4) } else { -rng.gen_range(1..=4) };
        let e: i64 = rng.gen_range(-3..=3);
        // y^2 + c z^2 + e yz must stay reduced.
        if !(p == 2 && q == 2 && e * e == 4 * c) {
            break (p, q, c, e);
        }
    };
    let h =
        &(&r.poly(&format!("y^{}", p)) + &r.poly(&format!("z^{}", q)).scale(&rat(c))) + &r.poly("y*z").scale(&rat(e));
    engine(smooth_splitting_check(&r, &[h], rng.gen_range(1..=3)))
}

fn coords(v: &FreeModuleElement, d: i64, shifts: &[i64]) -> Vec<Rational> {
    let mut out = Vec::new();
    for (i, p) in v.0.iter().enumerate() {
        for m in monomials_of_degree(3, d - shifts[i]) {
            out.push(p.coefficient(&m));
        }
    }
    out
}

/// `module_kernel` of a graded row agrees, degree by degree up to 8, with the
/// kernel dimension from exact linear algebra.
fn kernel_oracle(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let r = engine(RingContext::unweighted(&["x", "y", "z"], TermOrder::Global))?;
    let n = rng.gen_range(2..=3);
    let row: Vec<Polynomial> = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_homogeneous(rng, d, 3)
        })
        .collect();
    let m = Matrix::row(row.clone());
    let k = engine(module_kernel(&r, &m))?;
    if k.columns().iter().any(|c| !m.apply(c).is_ok_and(|v| v.is_zero())) {
        return Ok(false);
    }
    let shifts: Vec<i64> = row.iter().map(|p| p.max_degree(&r).unwrap_or(0)).collect();
    let mut graded = Vec::new();
    for c in k.columns() {
        let Some((i, p)) = c.0.iter().enumerate().find(|(_, p)| !p.is_zero()) else { continue };
        let d = p.max_degree(&r).unwrap_or(0) + shifts[i];
        if c.0.iter().enumerate().any(|(j, q)| {
            !q.is_zero() && (q.min_degree(&r) != q.max_degree(&r) || q.max_degree(&r) != Some(d - shifts[j]))
        }) {
            return Err("kernel generator is not homogeneous".into());
        }
        graded.push((c.clone(), d));
    }
    for d in 0..=8i64 {
        let mut images = Vec::new();
        let mut domain = 0;
        for (i, &s) in shifts.iter().enumerate() {
            for mo in monomials_of_degree(3, d - s) {
                let mut v = FreeModuleElement::zero(n);
                v.0[i] = Polynomial::term(mo, rat(1));
                images.push(coords(&engine(m.apply(&v))?, d, &[0]));
                domain += 1;
            }
        }
        let image_rank = if images.first().is_some_and(|r| !r.is_empty()) { rank(images) } else { 0 };
        let mut span = Vec::new();
        for (g, dg) in &graded {
            for mo in monomials_of_degree(3, d - dg) {
                span.push(coords(&g.scale(&Polynomial::term(mo, rat(1))), d, &shifts));
            }
        }
        let span_rank = if span.is_empty() { 0 } else { rank(span) };
        if span_rank != domain - image_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

fn property_suites() -> Check {
    let problems = property_problems()?;
    type Suite<'a> = (&'static str, Box<dyn Fn(&mut ChaCha8Rng) -> Result<bool, String> + Sync + 'a>);
    let suites: Vec<Suite> = vec![
        ("residue sequence", Box::new(|rng| residue_sequence(rng, &problems))),
        ("pairing", Box::new(|rng| pairing(rng, &problems))),
        ("decomposition", Box::new(decomposition)),
        ("smooth splitting", Box::new(splitting)),
        ("kernel oracle", Box::new(kernel_oracle)),
    ];
    let results: Vec<(usize, usize)> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .enumerate()
            .map(|(i, (_, f))| {
                s.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(800 + i as u64);
                    let mut failures = 0;
                    let mut errors = 0;
                    for _ in 0..CASES {
                        match f(&mut rng) {
                            Ok(true) => {}
                            Ok(false) => failures += 1,
                            Err(_) => errors += 1,
                        }
                    }
                    (failures, errors)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let pass = results.iter().all(|&(f, e)| f == 0 && e == 0);
    let detail = suites
        .iter()
        .zip(&results)
        .map(|((name, _), (f, e))| format!("{}: {}/{} ok", name, CASES - f - e, CASES))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((pass, detail))
}
