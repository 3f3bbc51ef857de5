use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};
use super::parse::{self, ParseError};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Monomial order of the ambient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Weighted degree, then reverse lexicographic. `1 < x_i`.
    Global,
    /// Negative weighted degree, then reverse lexicographic. `x_i < 1`;
    /// computations take place in the localization at the origin.
    Local,
}

impl TermOrder {
    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Global => "global",
            TermOrder::Local => "local",
        }
    }
}

/// Variables, weights and monomial order of a polynomial ring over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    weights: Vec<i64>,
    order: TermOrder,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[i64], order: TermOrder) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(alloc::format!(
                "{} variables requested, at most {} supported",
                names.len(),
                MAX_VARS
            )));
        }
        if weights.len() != names.len() {
            return Err(Error::InvalidRing("one weight per variable is required".into()));
        }
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !parse::is_identifier(n) {
                return Err(Error::InvalidRing(alloc::format!("'{}' is not an identifier", n)));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(alloc::format!("duplicate variable '{}'", n)));
            }
        }
        Ok(RingContext { names, weights: weights.to_vec(), order })
    }

    pub fn unweighted<S: AsRef<str>>(names: &[S], order: TermOrder) -> Result<Self> {
        let w: Vec<i64> = names.iter().map(|_| 1).collect();
        Self::new(names, &w, order)
    }

    pub fn with_order(&self, order: TermOrder) -> RingContext {
        RingContext { order, ..self.clone() }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    #[inline]
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars());
        Polynomial::var(i)
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// Compares two monomials in the ring order.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_with_degrees(a, self.degree(a), b, self.degree(b))
    }

    /// Same as [`cmp_monomials`](Self::cmp_monomials) with precomputed degrees.
    #[inline]
    pub fn cmp_with_degrees(&self, a: &Monomial, da: i64, b: &Monomial, db: i64) -> Ordering {
        let by_degree = match self.order {
            TermOrder::Global => da.cmp(&db),
            TermOrder::Local => db.cmp(&da),
        };
        by_degree.then_with(|| revlex(a, b, self.nvars()))
    }

    pub fn parse(&self, src: &str) -> core::result::Result<Polynomial, ParseError> {
        parse::parse_polynomial(self, src)
    }

    /// Parses a polynomial, or panics. Handy for fixed literals.
    pub fn poly(&self, src: &str) -> Polynomial {
        match self.parse(src) {
            Ok(p) => p,
            Err(e) => panic!("invalid polynomial literal {:?}: {}", src, e),
        }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        parse::format_polynomial(self, p)
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is larger.
#[inline]
fn revlex(a: &Monomial, b: &Monomial, n: usize) -> Ordering {
    for i in (0..n).rev() {
        let (x, y) = (a.exponent(i), b.exponent(i));
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}
