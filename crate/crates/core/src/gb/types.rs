use alloc::vec::Vec;
use core::ops::{Add, Sub};

use crate::algebra::{Polynomial, Rational, RingContext};
use crate::error::{Error, Result};

/// An element of a free module `R^r`, one polynomial per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleElement(pub Vec<Polynomial>);

impl FreeModuleElement {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        FreeModuleElement(comps)
    }

    pub fn zero(rank: usize) -> Self {
        FreeModuleElement((0..rank).map(|_| Polynomial::zero()).collect())
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Polynomial::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn scale(&self, p: &Polynomial) -> Self {
        FreeModuleElement(self.0.iter().map(|c| c * p).collect())
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        FreeModuleElement(self.0.iter().map(|p| p.scale(c)).collect())
    }

    /// Coordinatewise sum; panics on rank mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeModuleElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeModuleElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        FreeModuleElement(v)
    }
}

impl Add for &FreeModuleElement {
    type Output = FreeModuleElement;
    fn add(self, rhs: &FreeModuleElement) -> FreeModuleElement {
        FreeModuleElement::add(self, rhs)
    }
}

impl Sub for &FreeModuleElement {
    type Output = FreeModuleElement;
    fn sub(self, rhs: &FreeModuleElement) -> FreeModuleElement {
        FreeModuleElement::sub(self, rhs)
    }
}

/// Matrix over the ring, stored by columns. Its columns generate a
/// submodule of `R^rows`; it is also read as the map `R^cols → R^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: Vec<FreeModuleElement>,
}

impl Matrix {
    pub fn new(rows: usize) -> Matrix {
        Matrix { rows, cols: Vec::new() }
    }

    pub fn from_columns(rows: usize, cols: Vec<FreeModuleElement>) -> Result<Matrix> {
        for c in &cols {
            if c.rank() != rows {
                return Err(Error::RankMismatch { expected: rows, found: c.rank() });
            }
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Matrix> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let cols = (0..nc).map(|j| FreeModuleElement(rows.iter().map(|r| r[j].clone()).collect())).collect();
        Ok(Matrix { rows: nr, cols })
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix { rows: n, cols: (0..n).map(|i| FreeModuleElement::unit(n, i)).collect() }
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols: (0..cols).map(|_| FreeModuleElement::zero(rows)).collect() }
    }

    /// The `1 × n` matrix with the given entries.
    pub fn row(entries: Vec<Polynomial>) -> Matrix {
        Matrix { rows: 1, cols: entries.into_iter().map(|p| FreeModuleElement(alloc::vec![p])).collect() }
    }

    /// The `n × 1` matrix with the given entries.
    pub fn column(entries: Vec<Polynomial>) -> Matrix {
        let rows = entries.len();
        Matrix { rows, cols: alloc::vec![FreeModuleElement(entries)] }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[FreeModuleElement] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<FreeModuleElement> {
        self.cols
    }

    pub fn col(&self, j: usize) -> &FreeModuleElement {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.cols[c].0[r]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.cols[c].0[r] = p;
    }

    pub fn push(&mut self, col: FreeModuleElement) {
        assert_eq!(col.rank(), self.rows, "rank mismatch");
        self.cols.push(col);
    }

    pub fn set_col(&mut self, c: usize, col: FreeModuleElement) {
        assert_eq!(col.rank(), self.rows, "rank mismatch");
        self.cols[c] = col;
    }

    pub fn remove_col(&mut self, c: usize) {
        self.cols.remove(c);
    }

    pub fn remove_row(&mut self, r: usize) {
        for c in &mut self.cols {
            c.0.remove(r);
        }
        self.rows -= 1;
    }

    pub fn row_entries(&self, r: usize) -> Vec<Polynomial> {
        self.cols.iter().map(|c| c.0[r].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let cols = (0..self.rows).map(|r| FreeModuleElement(self.row_entries(r))).collect();
        Matrix { rows: self.ncols(), cols }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::RankMismatch { expected: self.rows, found: other.rows });
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(Matrix { rows: self.rows, cols })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let rows = self.rows + other.rows;
        let mut cols = Vec::with_capacity(self.ncols() + other.ncols());
        for c in &self.cols {
            cols.push(c.concat(&FreeModuleElement::zero(other.rows)));
        }
        for c in &other.cols {
            cols.push(FreeModuleElement::zero(self.rows).concat(c));
        }
        Matrix { rows, cols }
    }

    pub fn apply(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        if v.rank() != self.ncols() {
            return Err(Error::RankMismatch { expected: self.ncols(), found: v.rank() });
        }
        let mut out = FreeModuleElement::zero(self.rows);
        for (c, a) in self.cols.iter().zip(&v.0) {
            if a.is_zero() {
                continue;
            }
            for (o, e) in out.0.iter_mut().zip(&c.0) {
                if !e.is_zero() {
                    *o = &*o + &(e * a);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        let cols = other.cols.iter().map(|c| self.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(FreeModuleElement::is_zero)
    }

    /// Drops zero columns.
    pub fn without_zero_columns(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().filter(|c| !c.is_zero()).cloned().collect() }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| FreeModuleElement(c.0.iter().map(&f).collect())).collect(),
        }
    }

    pub fn format(&self, ctx: &RingContext) -> Vec<Vec<alloc::string::String>> {
        (0..self.rows).map(|r| self.cols.iter().map(|c| ctx.format(&c.0[r])).collect()).collect()
    }
}

/// An ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ideal {
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(gens: Vec<Polynomial>) -> Ideal {
        Ideal { gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn unit() -> Ideal {
        Ideal::new(alloc::vec![Polynomial::one()])
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators as a `1 × n` matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::row(self.gens.clone())
    }

    /// `I · R^rank` as a generating matrix.
    pub fn times_free(&self, rank: usize) -> Matrix {
        let mut m = Matrix::new(rank);
        for i in 0..rank {
            for g in &self.gens {
                let mut v = FreeModuleElement::zero(rank);
                v.0[i] = g.clone();
                m.push(v);
            }
        }
        m
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(g)
    }
}

/// The cokernel of a relation matrix: `R^ngens / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    relations: Matrix,
}

impl PresentedModule {
    pub fn new(relations: Matrix) -> PresentedModule {
        PresentedModule { relations }
    }

    pub fn free(rank: usize) -> PresentedModule {
        PresentedModule { relations: Matrix::new(rank) }
    }

    /// `R / I`.
    pub fn quotient_ring(ideal: &Ideal) -> PresentedModule {
        PresentedModule { relations: ideal.to_matrix() }
    }

    pub fn ngens(&self) -> usize {
        self.relations.nrows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }
}
