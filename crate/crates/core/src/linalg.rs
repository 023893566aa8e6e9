//! Dense exact linear algebra over the rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Coordinates of an element of a finite-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| crate::rational::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += c * y;
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn check_dim(&self, expected: usize, context: &'static str) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                context,
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

/// A `rows x cols` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Rational>>) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::DimensionMismatch {
                context: "matrix rows",
                expected: rows,
                found: entries.len(),
            });
        }
        for row in &entries {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix columns",
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Ok(LinearMap {
            rows,
            cols,
            entries,
        })
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            c.check_dim(rows, "matrix column")?;
            for i in 0..rows {
                m.entries[i][j] = c[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector(self.entries.iter().map(|r| r[j].clone()).collect())
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        v.check_dim(self.cols, "linear map argument")?;
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &Vector) -> Vector {
        Vector(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix composition",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i][j] += a * &rhs.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LinearMap {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vector> = self.entries.iter().cloned().map(Vector).collect();
        Echelon::new(self.cols, &rows).pivots.len()
    }
}

/// Reduced row echelon form of a list of vectors, remembering how each
/// echelon row is built from the inputs.
#[derive(Clone, Debug)]
struct Echelon {
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    /// `combos[k]` expresses `rows[k]` in terms of the input vectors.
    combos: Vec<Vector>,
}

impl Echelon {
    fn new(dim: usize, vectors: &[Vector]) -> Self {
        let n = vectors.len();
        let mut work: Vec<(Vector, Vector)> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), Vector::unit(n, i)))
            .collect();
        let mut rows = Vec::new();
        let mut combos = Vec::new();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..dim {
            let Some(p) = (next..work.len()).find(|&r| !work[r].0[col].is_zero()) else {
                continue;
            };
            work.swap(next, p);
            let inv = work[next].0[col].recip();
            let (row, combo) = &mut work[next];
            *row = row.scale(&inv);
            *combo = combo.scale(&inv);
            let (pr, pc) = work[next].clone();
            for (r, (row, combo)) in work.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let f = -row[col].clone();
                row.add_scaled(&f, &pr);
                combo.add_scaled(&f, &pc);
            }
            pivots.push(col);
            next += 1;
        }
        for (row, combo) in work.into_iter().take(next) {
            rows.push(row);
            combos.push(combo);
        }
        Echelon {
            rows,
            pivots,
            combos,
        }
    }

    /// Subtracts the echelon rows from `v`; returns (residual, pivot weights).
    fn reduce(&self, v: &Vector) -> (Vector, Vec<Rational>) {
        let mut r = v.clone();
        let mut weights = Vec::with_capacity(self.pivots.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let w = r[p].clone();
            if !w.is_zero() {
                r.add_scaled(&-w.clone(), row);
            }
            weights.push(w);
        }
        (r, weights)
    }
}

/// A subspace given by an independent spanning list.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    echelon: Echelon,
}

impl Subspace {
    /// Fails with [`Error::NotIndependent`] if the vectors are dependent.
    pub fn new(ambient: usize, basis: Vec<Vector>) -> Result<Self> {
        for v in &basis {
            v.check_dim(ambient, "subspace basis vector")?;
        }
        let echelon = Echelon::new(ambient, &basis);
        if echelon.pivots.len() != basis.len() {
            return Err(Error::NotIndependent);
        }
        Ok(Subspace {
            ambient,
            basis,
            echelon,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Pivot columns of the reduced echelon form, ascending.
    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    /// Coordinate positions not used as pivots, ascending.
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.echelon.pivots.contains(c))
            .collect()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.echelon.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` in the given basis, or `None` when `v` is outside.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        let (residual, weights) = self.echelon.reduce(v);
        if !residual.is_zero() {
            return None;
        }
        let mut out = Vector::zeros(self.dim());
        for (w, combo) in weights.iter().zip(&self.echelon.combos) {
            out.add_scaled(w, combo);
        }
        Some(out)
    }

    /// Part of `v` left after removing the pivot coordinates; zero exactly on the subspace.
    pub fn residual(&self, v: &Vector) -> Vector {
        self.echelon.reduce(v).0
    }
}
