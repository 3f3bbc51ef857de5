use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::ring::RingContext;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted by the lexicographic exponent order and never carry a
/// zero coefficient, so equal polynomials are structurally equal. The ring
/// order only matters for leading terms and printing.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Polynomial {
        Polynomial::constant(Rational::from_integer(c.into()))
    }

    pub fn term(m: Monomial, c: Rational) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: alloc::vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Polynomial {
        Polynomial::term(Monomial::var(i), Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Rational)>) -> Polynomial {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// A unit of the local ring: nonzero constant term.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Leading term for the ring order.
    pub fn leading_term(&self, ctx: &RingContext) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| ctx.cmp_monomials(&a.0, &b.0))
    }

    /// Terms sorted descending in the ring order.
    pub fn sorted_terms(&self, ctx: &RingContext) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ctx.cmp_monomials(&b.0, &a.0));
        v
    }

    /// The common weighted degree of all terms, or `None` if the terms disagree.
    pub fn weighted_degree(&self, ctx: &RingContext) -> Result<Option<i64>> {
        let mut it = self.terms.iter().map(|(m, _)| ctx.degree(m));
        let first = it.next().ok_or(Error::ZeroInput)?;
        Ok(if it.all(|d| d == first) { Some(first) } else { None })
    }

    /// Smallest weighted degree of a term (the order at the origin).
    pub fn min_degree(&self, ctx: &RingContext) -> Option<i64> {
        self.terms.iter().map(|(m, _)| ctx.degree(m)).min()
    }

    pub fn max_degree(&self, ctx: &RingContext) -> Option<i64> {
        self.terms.iter().map(|(m, _)| ctx.degree(m)).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// `c · x^m · self`; multiplication by a monomial keeps lex order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.derive(i).map(|(e, d)| (d, c * Rational::from_integer((e as i64).into()))))
            .collect();
        // Derivation does not preserve lex order in general.
        Polynomial::from_terms(terms)
    }

    /// Ring-order-independent content normalization: divide by the coefficient
    /// of the lex-largest term.
    pub fn monic_lex(&self) -> Polynomial {
        match self.terms.last() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Substitutes `x_i ↦ vals[i]` in a commutative ring given by closures.
    pub fn eval_with<T: Clone>(
        &self,
        one: T,
        from_coef: impl Fn(&Rational) -> T,
        var_pow: impl Fn(usize, u16) -> T,
        add: impl Fn(T, T) -> T,
        mul: impl Fn(T, T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = mul(t, var_pow(i, e));
                }
            }
            acc = add(acc, mul(from_coef(c), t));
        }
        acc
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { terms: out }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                terms.push((m.mul(n), c * d));
            }
        }
        Polynomial::from_terms(terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::TermOrder;
    use proptest::prelude::*;

    fn ctx(w: &[i64]) -> RingContext {
        RingContext::new(&["x", "y", "z"][..w.len()], w, TermOrder::Global).unwrap()
    }

    #[test]
    fn weighted_degree_examples() {
        let r = ctx(&[4, 5, 6]);
        assert_eq!(r.poly("x*z - y^2").weighted_degree(&r), Ok(Some(10)));
        let r = ctx(&[1, 1]);
        assert_eq!(r.poly("x").weighted_degree(&r), Ok(Some(1)));
        assert_eq!(r.poly("x^2 + y^3").weighted_degree(&r), Ok(None));
        assert_eq!(Polynomial::zero().weighted_degree(&r), Err(Error::ZeroInput));
    }

    #[test]
    fn leading_terms() {
        let g = ctx(&[1, 1]);
        let l = g.with_order(TermOrder::Local);
        let p = g.poly("x - x^2");
        assert_eq!(p.leading_term(&g).unwrap().0, Monomial::var_pow(0, 2));
        assert_eq!(p.leading_term(&l).unwrap().0, Monomial::var(0));
    }

    #[test]
    fn derivative_and_pow() {
        let r = ctx(&[1, 1, 1]);
        let p = r.poly("x^3 - y*z + 2");
        assert_eq!(p.derivative(0), r.poly("3*x^2"));
        assert_eq!(p.derivative(1), r.poly("-z"));
        assert_eq!(r.poly("x+y").pow(3), r.poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
        assert_eq!(r.poly("x+y").pow(0), Polynomial::one());
    }

    #[test]
    fn cancellation_is_canonical() {
        let r = ctx(&[1, 1]);
        let p = r.poly("x + y");
        assert!((&p - &p).is_zero());
        assert_eq!(
            Polynomial::from_terms(alloc::vec![
                (Monomial::var(0), Rational::one()),
                (Monomial::var(0), -Rational::one()),
            ]),
            Polynomial::zero()
        );
    }

    pub(crate) fn arb_poly(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0..=max_exp, nvars), -5i64..=5), 0..=max_terms).prop_map(
            |ts| {
                Polynomial::from_terms(
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_integer(c.into())))
                        .collect(),
                )
            },
        )
    }

    fn arb_mono(nvars: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..6, nvars).prop_map(|e| Monomial::from_exponents(&e))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in arb_poly(3, 3, 5), b in arb_poly(3, 3, 5), c in arb_poly(3, 3, 5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn order_total_and_multiplicative(a in arb_mono(3), b in arb_mono(3), c in arb_mono(3), local in any::<bool>()) {
            let order = if local { TermOrder::Local } else { TermOrder::Global };
            let r = RingContext::new(&["x", "y", "z"], &[2, 3, 1], order).unwrap();
            let ab = r.cmp_monomials(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ab.reverse(), r.cmp_monomials(&b, &a));
            prop_assert_eq!(r.cmp_monomials(&a.mul(&c), &b.mul(&c)), ab);
        }

        #[test]
        fn degree_additive(a in arb_mono(3), b in arb_mono(3), ca in 1i64..4, cb in 1i64..4) {
            let r = ctx(&[4, 5, 6]);
            let p = Polynomial::term(a, Rational::from_integer(ca.into()));
            let q = Polynomial::term(b, Rational::from_integer(cb.into()));
            let dp = p.weighted_degree(&r).unwrap().unwrap();
            let dq = q.weighted_degree(&r).unwrap().unwrap();
            prop_assert_eq!((&p * &q).weighted_degree(&r).unwrap(), Some(dp + dq));
        }

        #[test]
        fn qh_degree_additive(p in arb_poly(3, 4, 6), q in arb_poly(3, 4, 6)) {
            // Keep only the top-degree part to make the inputs quasi-homogeneous.
            let r = ctx(&[4, 5, 6]);
            let top = |f: &Polynomial| -> Polynomial {
                match f.max_degree(&r) {
                    None => Polynomial::zero(),
                    Some(d) => Polynomial::from_terms(
                        f.terms().iter().filter(|(m, _)| r.degree(m) == d).cloned().collect(),
                    ),
                }
            };
            let (p, q) = (top(&p), top(&q));
            prop_assume!(!p.is_zero() && !q.is_zero());
            let dp = p.weighted_degree(&r).unwrap().unwrap();
            let dq = q.weighted_degree(&r).unwrap().unwrap();
            prop_assert_eq!((&p * &q).weighted_degree(&r).unwrap(), Some(dp + dq));
        }
    }
}
