//! Branch parametrizations of a curve germ and the valuations they induce.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::logarithmic::Fraction;

/// A power series in `t`, known modulo `t^precision` (`None`: exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<u32, Rational>,
    precision: Option<u32>,
}

impl Series {
    pub fn exact(terms: impl IntoIterator<Item = (u32, Rational)>) -> Series {
        Series::with_precision(terms, None)
    }

    pub fn with_precision(terms: impl IntoIterator<Item = (u32, Rational)>, precision: Option<u32>) -> Series {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if precision.is_none_or(|p| e < p) {
                let slot = map.entry(e).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Series { terms: map, precision }
    }

    fn constant(c: Rational) -> Series {
        Series::exact([(0, c)])
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn coefficient(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient, or the precision when the
    /// known part vanishes.
    fn lower_bound(&self) -> Option<u32> {
        self.terms.keys().next().copied().or(self.precision)
    }

    pub fn order(&self) -> Value {
        match (self.terms.keys().next(), self.precision) {
            (Some(&e), _) => Value::Finite(e as i64),
            (None, None) => Value::Infinite,
            (None, Some(p)) => Value::AtLeast(p),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Series::with_precision(self.terms.iter().chain(&other.terms).map(|(&e, c)| (e, c.clone())), precision)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let bound = |p: Option<u32>, lb: Option<u32>| p.map(|p| p + lb.unwrap_or(0));
        let precision = match (bound(self.precision, other.lower_bound()), bound(other.precision, self.lower_bound())) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.push((ea + eb, ca * cb));
            }
        }
        Series::with_precision(out, precision)
    }

    pub fn pow(&self, e: u16) -> Series {
        (0..e).fold(Series::constant(Rational::from_integer(1.into())), |acc, _| acc.mul(self))
    }
}

/// Order of a function along one branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(i64),
    /// The function vanishes on the branch.
    Infinite,
    /// The known part of the series vanishes; the order is at least this.
    AtLeast(u32),
}

impl Value {
    pub fn finite(self) -> Option<i64> {
        match self {
            Value::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{}", v),
            Value::Infinite => write!(f, "inf"),
            Value::AtLeast(t) => write!(f, ">={}", t),
        }
    }
}

/// One value per branch, ordered componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueVector(pub Vec<Value>);

impl ValueVector {
    pub fn is_determined(&self) -> bool {
        self.0.iter().all(|v| !matches!(v, Value::AtLeast(_)))
    }

    /// The finite entries, or `None` if some entry is infinite or undetermined.
    pub fn finite(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|v| v.finite()).collect()
    }

    /// Componentwise `self ≤ other`, with `∞` as the top element.
    pub fn le(&self, other: &ValueVector) -> Option<bool> {
        let mut all = true;
        for (a, b) in self.0.iter().zip(&other.0) {
            all &= match (a, b) {
                (_, Value::Infinite) => true,
                (Value::Infinite, _) => false,
                (Value::Finite(x), Value::Finite(y)) => x <= y,
                _ => return None,
            };
        }
        Some(all)
    }

    pub fn add(&self, other: &ValueVector) -> ValueVector {
        ValueVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| match (a, b) {
                    (Value::Finite(x), Value::Finite(y)) => Value::Finite(x + y),
                    (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                    (Value::AtLeast(x), Value::Finite(y)) | (Value::Finite(y), Value::AtLeast(x)) => {
                        Value::AtLeast((*x as i64 + y).max(0) as u32)
                    }
                    (Value::AtLeast(x), Value::AtLeast(y)) => Value::AtLeast(x + y),
                })
                .collect(),
        )
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// `x_j ↦ Σ c t^e` for each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub coords: Vec<Vec<(u32, Rational)>>,
}

impl Branch {
    pub fn new(coords: Vec<Vec<(u32, Rational)>>) -> Branch {
        Branch { coords }
    }

    /// `x_j ↦ t^{e_j}`; an exponent of zero stands for the zero coordinate.
    pub fn monomial(exponents: &[u32]) -> Branch {
        let one = Rational::from_integer(1.into());
        Branch {
            coords: exponents
                .iter()
                .map(|&e| if e == 0 { Vec::new() } else { alloc::vec![(e, one.clone())] })
                .collect(),
        }
    }

    fn is_monomial(&self) -> bool {
        self.coords.iter().all(|c| c.len() <= 1)
    }
}

/// Parametrizations `t_i ↦ x(t_i)` of the branches of a curve, truncated at
/// order `T` unless every coordinate is a single term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParametrization {
    branches: Vec<Branch>,
    truncation: u32,
    exact: bool,
}

impl BranchParametrization {
    pub fn new(branches: Vec<Branch>, truncation: u32) -> Result<BranchParametrization> {
        if branches.is_empty() {
            return Err(Error::InvalidInput("no branches".into()));
        }
        let m = branches[0].coords.len();
        for b in &branches {
            if b.coords.len() != m {
                return Err(Error::ShapeMismatch("branches with different numbers of coordinates".into()));
            }
            if b.coords.iter().flatten().any(|(e, c)| *e == 0 && !c.is_zero()) {
                return Err(Error::InvalidInput("a branch does not pass through the origin".into()));
            }
            if b.coords.iter().all(|c| c.iter().all(|(_, c)| c.is_zero())) {
                return Err(Error::InvalidInput("a branch is constant".into()));
            }
        }
        let exact = branches.iter().all(Branch::is_monomial);
        Ok(BranchParametrization { branches, truncation, exact })
    }

    /// Monomial branches, for which every substitution is exact.
    pub fn monomial(exponents: &[&[u32]]) -> Result<BranchParametrization> {
        BranchParametrization::new(exponents.iter().map(|e| Branch::monomial(e)).collect(), u32::MAX)
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn nvars(&self) -> usize {
        self.branches[0].coords.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn with_truncation(&self, truncation: u32) -> BranchParametrization {
        BranchParametrization { truncation, ..self.clone() }
    }

    fn precision(&self) -> Option<u32> {
        if self.exact {
            None
        } else {
            Some(self.truncation)
        }
    }

    /// `g(x(t_i))` on branch `i`.
    pub fn substitute(&self, i: usize, g: &Polynomial) -> Series {
        let prec = self.precision();
        let coords: Vec<Series> =
            self.branches[i].coords.iter().map(|c| Series::with_precision(c.iter().cloned(), prec)).collect();
        g.eval_with(
            Series::constant(Rational::from_integer(1.into())),
            |c| Series::constant(c.clone()),
            |j, e| coords[j].pow(e),
            |a, b| a.add(&b),
            |a, b| a.mul(&b),
            Series::exact([]),
        )
    }

    pub fn valuation(&self, g: &Polynomial) -> ValueVector {
        ValueVector((0..self.branch_count()).map(|i| self.substitute(i, g).order()).collect())
    }

    /// `val(g)`, failing when some entry is undetermined at this truncation.
    pub fn determined_valuation(&self, g: &Polynomial) -> Result<ValueVector> {
        let v = self.valuation(g);
        if v.is_determined() {
            Ok(v)
        } else {
            Err(Error::Undetermined { truncation: self.truncation })
        }
    }

    /// `val(a) - val(g)` for a fraction whose denominator is a nonzerodivisor.
    pub fn fraction_valuation(&self, f: &Fraction) -> Result<ValueVector> {
        let (a, g) = (self.determined_valuation(&f.numerator)?, self.determined_valuation(&f.denominator)?);
        let entries =
            a.0.iter()
                .zip(&g.0)
                .map(|(a, g)| match (a, g) {
                    (_, Value::Infinite) => Err(Error::InvalidInput("denominator vanishes on a branch".into())),
                    (Value::Infinite, _) => Ok(Value::Infinite),
                    (Value::Finite(x), Value::Finite(y)) => Ok(Value::Finite(x - y)),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
        Ok(ValueVector(entries))
    }

    /// Every generator substitutes to zero, to the available precision.
    pub fn annihilates(&self, gens: &[Polynomial]) -> bool {
        gens.iter().all(|g| (0..self.branch_count()).all(|i| self.substitute(i, g).order().finite().is_none()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RingContext, TermOrder};

    fn ring() -> RingContext {
        RingContext::new(&["x", "y", "z"], &[4, 5, 6], TermOrder::Global).unwrap()
    }

    #[test]
    fn monomial_branch_values() {
        let r = ring();
        let b = BranchParametrization::monomial(&[&[4, 5, 6]]).unwrap();
        assert!(b.is_exact());
        assert_eq!(b.valuation(&r.poly("x")).0, [Value::Finite(4)]);
        assert_eq!(b.valuation(&r.poly("x*z - y^2")).0, [Value::Infinite]);
        assert_eq!(b.valuation(&r.poly("y^2 + x*z")).0, [Value::Finite(10)]);
        assert!(b.annihilates(&[r.poly("x*z - y^2"), r.poly("x^3 - z^2")]));
    }

    #[test]
    fn truncated_series_report_undetermined_orders() {
        let r = RingContext::unweighted(&["x", "y"], TermOrder::Local).unwrap();
        // y = t^2 + t^3 on a branch of y - x^2 - x^3 = 0.
        let br = Branch::new(alloc::vec![alloc::vec![(1, rat(1))], alloc::vec![(2, rat(1)), (3, rat(1))]]);
        let p = BranchParametrization::new(alloc::vec![br], 6).unwrap();
        assert!(!p.is_exact());
        assert_eq!(p.valuation(&r.poly("y - x^2")).0, [Value::Finite(3)]);
        assert_eq!(p.valuation(&r.poly("y - x^2 - x^3")).0, [Value::AtLeast(6)]);
        assert!(matches!(p.determined_valuation(&r.poly("y - x^2 - x^3")), Err(Error::Undetermined { truncation: 6 })));
        // x^5 * (y - x^2 - x^3) is known to vanish to order 11.
        assert_eq!(p.valuation(&r.poly("x^5*y - x^7 - x^8")).0, [Value::AtLeast(11)]);
    }

    #[test]
    fn value_vectors_order_componentwise() {
        let a = ValueVector(alloc::vec![Value::Finite(1), Value::Infinite]);
        let b = ValueVector(alloc::vec![Value::Finite(2), Value::Finite(0)]);
        let c = ValueVector(alloc::vec![Value::Finite(2), Value::Infinite]);
        assert_eq!(a.le(&b), Some(false));
        assert_eq!(b.le(&a), Some(false));
        assert_eq!(a.le(&c), Some(true));
        assert_eq!(b.le(&c), Some(true));
        assert_eq!(a.add(&b).0, [Value::Finite(3), Value::Infinite]);
    }

    #[test]
    fn rejects_branches_off_the_origin() {
        let br = Branch::new(alloc::vec![alloc::vec![(0, rat(1))], alloc::vec![(1, rat(1))]]);
        assert!(BranchParametrization::new(alloc::vec![br], 4).is_err());
    }
}
