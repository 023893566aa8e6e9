//! Finite-dimensional Lie algebras over ℚ given by structure constants.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Subspace, Vector};

/// A Lie algebra on a named basis with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<Vector>>,
}

/// One failed structural identity, indexed by basis positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `[e_i, e_j] != -[e_j, e_i]` (or `[e_i, e_i] != 0` when `i == j`).
    Antisymmetry { i: usize, j: usize },
    /// Cyclic sum `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` is nonzero.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human-readable lines naming basis labels.
    pub fn describe(&self, alg: &LieAlgebra) -> Vec<String> {
        let l = |i: usize| alg.labels[i].as_str();
        self.violations
            .iter()
            .map(|v| match v {
                Violation::Antisymmetry { i, j } => {
                    format!("antisymmetry violated at ({}, {})", l(*i), l(*j))
                }
                Violation::Jacobi { i, j, k, residual } => format!(
                    "Jacobi identity violated at ({}, {}, {}): cyclic sum = {}",
                    l(*i),
                    l(*j),
                    l(*k),
                    alg.format_vector(residual)
                ),
            })
            .collect()
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra from its full bracket table.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let alg = Self::from_table_unchecked(name, labels, table)?;
        let report = alg.check();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(report.describe(&alg).join("; ")));
        }
        Ok(alg)
    }

    /// Builds from `i < j` bracket entries; antisymmetry fills in the rest.
    pub fn from_brackets(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![vec![Vector::zeros(dim); dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim {
                return Err(Error::Precondition(format!(
                    "bracket index ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            v.check_dim(dim, "bracket value")?;
            table[*i][*j] = v.clone();
            table[*j][*i] = -v;
        }
        Self::new(name, labels, table)
    }

    /// Skips the Lie identities; only shapes are checked. For building
    /// counterexamples to feed to [`LieAlgebra::check`].
    pub fn from_table_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let dim = labels.len();
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != dim {
            return Err(Error::InvalidAlgebra(
                "basis labels are not distinct".into(),
            ));
        }
        if table.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "structure table",
                expected: dim,
                found: table.len(),
            });
        }
        for row in &table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "structure table row",
                    expected: dim,
                    found: row.len(),
                });
            }
            for v in row {
                v.check_dim(dim, "structure constant vector")?;
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            labels,
            table,
        })
    }

    pub fn abelian(name: impl Into<String>, labels: &[&str]) -> Self {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let d = labels.len();
        Self::new(name, labels, vec![vec![Vector::zeros(d); d]; d]).expect("abelian table is valid")
    }

    /// `[e1, e2] = e3`
    pub fn heisenberg() -> Self {
        Self::from_brackets(
            "heisenberg",
            labels(&["e1", "e2", "e3"]),
            &[(0, 1, Vector::from_ints(&[0, 0, 1]))],
        )
        .expect("heisenberg table is valid")
    }

    /// Basis (h, e, f) with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        Self::from_brackets(
            "sl2",
            labels(&["h", "e", "f"]),
            &[
                (0, 1, Vector::from_ints(&[0, 2, 0])),
                (0, 2, Vector::from_ints(&[0, 0, -2])),
                (1, 2, Vector::from_ints(&[1, 0, 0])),
            ],
        )
        .expect("sl2 table is valid")
    }

    /// The 2-dimensional nonabelian algebra `[x, y] = y`.
    pub fn affine_line() -> Self {
        Self::from_brackets(
            "solvable2",
            labels(&["x", "y"]),
            &[(0, 1, Vector::from_ints(&[0, 1]))],
        )
        .expect("affine table is valid")
    }

    /// `[x, y] = y`, `[x, z] = z`, `[y, z] = 0`.
    pub fn solvable3() -> Self {
        Self::from_brackets(
            "solvable3",
            labels(&["x", "y", "z"]),
            &[
                (0, 1, Vector::from_ints(&[0, 1, 0])),
                (0, 2, Vector::from_ints(&[0, 0, 1])),
            ],
        )
        .expect("solvable3 table is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[e_i, e_j]`
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Vector::is_zero)
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim())
            .map(|i| Vector::unit(self.dim(), i))
            .collect()
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.dim(), "bracket left argument")?;
        y.check_dim(self.dim(), "bracket right argument")?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                out.add_scaled(&(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of `b ↦ [y, b]`.
    pub fn ad(&self, y: &Vector) -> Result<LinearMap> {
        y.check_dim(self.dim(), "ad argument")?;
        let columns: Vec<Vector> = self
            .basis()
            .iter()
            .map(|e| self.bracket_unchecked(y, e))
            .collect();
        LinearMap::from_columns(self.dim(), &columns)
    }

    /// Lists every antisymmetry and Jacobi failure of the structure table.
    pub fn check(&self) -> CheckReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                if &self.table[i][j] + &self.table[j][i] != Vector::zeros(n) {
                    violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        let e = self.basis();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let b = |x: &Vector, y: &Vector| self.bracket_unchecked(x, y);
                    let t1 = b(&b(&e[i], &e[j]), &e[k]);
                    let t2 = b(&b(&e[j], &e[k]), &e[i]);
                    let t3 = b(&b(&e[k], &e[i]), &e[j]);
                    let residual = &(&t1 + &t2) + &t3;
                    if !residual.is_zero() {
                        violations.push(Violation::Jacobi { i, j, k, residual });
                    }
                }
            }
        }
        CheckReport { violations }
    }

    /// `2*e - 1/2*h` style rendering on the basis labels.
    pub fn format_vector(&self, v: &Vector) -> String {
        crate::display::linear_combination(v, &self.labels)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Result of factoring an algebra by an ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// `C → B`, kernel exactly the ideal.
    pub projection: LinearMap,
    /// Coordinates of `C` kept as the quotient basis.
    pub positions: Vec<usize>,
    pub ideal: Subspace,
}

/// Fails unless `[e_i, a]` stays in the span for every basis `e_i` and ideal vector `a`.
pub fn check_ideal(alg: &LieAlgebra, ideal: &Subspace) -> Result<()> {
    for (i, e) in alg.basis().iter().enumerate() {
        for (j, a) in ideal.basis().iter().enumerate() {
            let v = alg.bracket_unchecked(e, a);
            if !ideal.contains(&v) {
                return Err(Error::NotAnIdeal(format!(
                    "[{}, ideal vector {}] = {} is outside the span",
                    alg.labels[i],
                    j + 1,
                    alg.format_vector(&v)
                )));
            }
        }
    }
    Ok(())
}

/// Factors `alg` by the span of `ideal_basis`.
///
/// The quotient basis is the set of coordinate positions left free by the
/// reduced echelon form of the ideal; `p(v)` reads those positions after
/// clearing the pivot coordinates of `v`.
pub fn quotient(alg: &LieAlgebra, ideal_basis: &[Vector]) -> Result<Quotient> {
    let ideal = Subspace::new(alg.dim(), ideal_basis.to_vec())?;
    check_ideal(alg, &ideal)?;
    let positions = ideal.complement_positions();
    let q = positions.len();
    let mut projection = LinearMap::zero(q, alg.dim());
    let mut columns = Vec::with_capacity(alg.dim());
    for e in alg.basis() {
        let r = ideal.residual(&e);
        columns.push(Vector(positions.iter().map(|&c| r[c].clone()).collect()));
    }
    if !columns.is_empty() {
        projection = LinearMap::from_columns(q, &columns)?;
    }
    let quotient_labels: Vec<String> = positions.iter().map(|&c| alg.labels[c].clone()).collect();
    let mut table = vec![vec![Vector::zeros(q); q]; q];
    for (a, &ca) in positions.iter().enumerate() {
        for (b, &cb) in positions.iter().enumerate() {
            let v =
                alg.bracket_unchecked(&Vector::unit(alg.dim(), ca), &Vector::unit(alg.dim(), cb));
            table[a][b] = projection.apply_unchecked(&v);
        }
    }
    let algebra = LieAlgebra::new(format!("{}/ideal", alg.name), quotient_labels, table)
        .map_err(|e| Error::InvalidAlgebra(format!("induced quotient table: {e}")))?;
    Ok(Quotient {
        algebra,
        projection,
        positions,
        ideal,
    })
}

/// `ad y` raised to `n`, applied to `b`, by repeated bracketing.
pub fn ad_power(alg: &LieAlgebra, y: &Vector, n: usize, b: &Vector) -> Vector {
    let mut v = b.clone();
    for _ in 0..n {
        v = alg.bracket_unchecked(y, &v);
    }
    v
}
