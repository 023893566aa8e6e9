//! Brackets on formal vector fields `S(X)` and on algebra-valued series
//! `A[[Y]]`, and the identifications of `S(Y)` and `S(X)[[Y]]` inside
//! `S(Z)` for `Z = X × Y`.
//!
//! Coordinates on `Z` put the `X` block first: indices `0..dim X`, then the
//! `Y` block.

use std::collections::BTreeMap;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::poly::{FormalSeries, HomogeneousMap, MultiIndex};

fn check_vector_field(s: &FormalSeries, what: &str) -> Result<()> {
    if s.src_dim() != s.tgt_dim() {
        return Err(Error::ShapeMismatch(format!(
            "{what} must map a space to itself, got {}→{}",
            s.src_dim(),
            s.tgt_dim()
        )));
    }
    Ok(())
}

/// `[ξ, η] = ξη − ηξ`, where `ξη` is the derivative of `η` along `ξ`.
/// Certified through `min(valid ξ, valid η) − 1`.
pub fn bracket_s(xi: &FormalSeries, eta: &FormalSeries) -> Result<FormalSeries> {
    check_vector_field(xi, "left bracket argument")?;
    check_vector_field(eta, "right bracket argument")?;
    if xi.src_dim() != eta.src_dim() {
        return Err(Error::ShapeMismatch(format!(
            "vector fields on {}- and {}-dimensional spaces",
            xi.src_dim(),
            eta.src_dim()
        )));
    }
    FormalSeries::derive(xi, eta)?.sub(&FormalSeries::derive(eta, xi)?)
}

/// `[f, g](y) = [f(y), g(y)]` in `A[[Y]]`, certified through the smaller validity.
pub fn bracket_pointwise(
    f: &FormalSeries,
    g: &FormalSeries,
    alg: &LieAlgebra,
) -> Result<FormalSeries> {
    f.pointwise_bracket(g, alg)
}

/// Views a vector field on `Y` as the field `(x, y) ↦ (0, η(y))` on `X × Y`.
pub fn embed_sy_into_sz(eta: &FormalSeries, x_dim: usize) -> Result<FormalSeries> {
    check_vector_field(eta, "embedded field")?;
    let z = x_dim + eta.src_dim();
    let components = eta
        .components()
        .iter()
        .map(|f| f.embed_source(x_dim, z).embed_target(x_dim, z))
        .collect();
    FormalSeries::new(z, z, components)
}

/// A series in `Y` whose coefficients are vector fields on `X`:
/// `Σ_β y^β ξ_β` with each `ξ_β ∈ S(X)`.
///
/// Monomials `β` with `|β| ≤ y_valid_through` are certified; absent ones are
/// zero. Each `ξ_β` carries its own `X`-validity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldValuedSeries {
    x_dim: usize,
    y_dim: usize,
    y_valid_through: usize,
    terms: BTreeMap<MultiIndex, FormalSeries>,
}

impl FieldValuedSeries {
    pub fn new(x_dim: usize, y_dim: usize, y_valid_through: usize) -> Self {
        FieldValuedSeries {
            x_dim,
            y_dim,
            y_valid_through,
            terms: BTreeMap::new(),
        }
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn y_dim(&self) -> usize {
        self.y_dim
    }

    pub fn y_valid_through(&self) -> usize {
        self.y_valid_through
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FormalSeries)> {
        self.terms.iter()
    }

    /// Adds `y^beta · xi`. Terms above the `Y`-validity are ignored.
    pub fn add_term(&mut self, beta: MultiIndex, xi: FormalSeries) -> Result<()> {
        if beta.len() != self.y_dim {
            return Err(Error::DimensionMismatch {
                context: "Y monomial",
                expected: self.y_dim,
                found: beta.len(),
            });
        }
        check_vector_field(&xi, "field coefficient")?;
        if xi.src_dim() != self.x_dim {
            return Err(Error::DimensionMismatch {
                context: "field coefficient space",
                expected: self.x_dim,
                found: xi.src_dim(),
            });
        }
        if beta.degree() > self.y_valid_through {
            return Ok(());
        }
        let merged = match self.terms.remove(&beta) {
            Some(old) => old.add(&xi)?,
            None => xi,
        };
        self.terms.insert(beta, merged);
        Ok(())
    }

    /// Highest total degree on `Z` that every contributing cell certifies:
    /// `min(N_y, min_β (|β| + N_x(β)))`.
    pub fn z_valid_through(&self) -> isize {
        self.terms
            .iter()
            .map(|(beta, xi)| beta.degree() as isize + xi.valid_through())
            .fold(self.y_valid_through as isize, isize::min)
    }

    /// `Σ_{|β| ≤ through} y^β ξ_β(x)` with each `ξ_β` summed through `through − |β|`.
    pub fn eval_through(&self, x: &Vector, y: &Vector, through: usize) -> Result<Vector> {
        let mut out = Vector::zeros(self.x_dim);
        for (beta, xi) in &self.terms {
            if beta.degree() > through {
                continue;
            }
            let part = xi
                .truncate((through - beta.degree()) as isize)
                .eval_truncated(x)?;
            out.add_scaled(&beta.pow_eval(y), &part);
        }
        Ok(out)
    }
}

/// Flattens `Σ_β y^β ξ_β` into a single vector field on `Z = X × Y` with
/// values in the `X` block. The bidegree `(r, |β|)` cell lands in total
/// degree `r + |β|`.
pub fn embed_ty_into_sz(t: &FieldValuedSeries) -> Result<FormalSeries> {
    let z = t.x_dim + t.y_dim;
    let valid = t.z_valid_through();
    let mut components = Vec::new();
    for s in 0..(valid + 1).max(0) as usize {
        let mut acc = HomogeneousMap::zero(z, z, s);
        for (beta, xi) in &t.terms {
            let n = beta.degree();
            if n > s {
                continue;
            }
            let cell = &xi.components()[s - n];
            let lifted = HomogeneousMap::from_terms(
                z,
                z,
                s,
                cell.terms().map(|(alpha, v)| {
                    let mut w = Vector::zeros(z);
                    for (i, c) in v.iter().enumerate() {
                        w[i] = c.clone();
                    }
                    (alpha.concat(beta), w)
                }),
            )?;
            acc = acc.add(&lifted)?;
        }
        components.push(acc);
    }
    FormalSeries::new(z, z, components)
}
