//! Homogeneous polynomial maps between coordinatized spaces and truncated
//! formal series built from them.
//!
//! A [`HomogeneousMap`] of degree `m` from a `src_dim`-space to a
//! `tgt_dim`-space is stored as sparse monomial coefficients
//! `f(x) = Σ_α c_α x^α` with vector coefficients `c_α`. A [`FormalSeries`]
//! is the list of its homogeneous components for degrees `0..=N`; degrees
//! above `N` are unknown, never implicitly zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::rational::{int, Rational};

/// Largest arity accepted by the slot-enumeration oracle.
pub const MAX_ORACLE_ARITY: usize = 5;

/// Exponent vector of a monomial `x_1^{p_1} ... x_n^{p_n}`.
///
/// Ordered graded-lexicographically: lower total degree first, then the
/// monomial with the larger leading exponent first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponents of `self` followed by those of `other`.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }

    /// Places the exponents at `offset` inside `n` variables.
    pub fn embed(&self, offset: usize, n: usize) -> MultiIndex {
        let mut e = vec![0; n];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        MultiIndex(e)
    }

    pub fn split_at(&self, k: usize) -> (MultiIndex, MultiIndex) {
        (
            MultiIndex(self.0[..k].to_vec()),
            MultiIndex(self.0[k..].to_vec()),
        )
    }

    pub fn pow_eval(&self, x: &Vector) -> Rational {
        let mut acc = Rational::one();
        for (&e, xi) in self.0.iter().zip(x.iter()) {
            if e > 0 {
                acc *= num_traits::pow(xi.clone(), e as usize);
            }
        }
        acc
    }

    /// All exponent vectors of total degree `degree` in `n` variables, in canonical order.
    pub fn all_of_degree(n: usize, degree: usize) -> Vec<MultiIndex> {
        fn rec(n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if cur.len() + 1 == n {
                cur.push(left as u32);
                out.push(MultiIndex(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e as u32);
                rec(n, left - e, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            return if degree == 0 {
                vec![MultiIndex(Vec::new())]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        rec(n, degree, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Exponent content of an index tuple `(i_1, ..., i_m)`.
    pub fn content(n: usize, tuple: &[usize]) -> MultiIndex {
        let mut e = vec![0; n];
        for &i in tuple {
            e[i] += 1;
        }
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Scalar polynomial in a handful of auxiliary variables.
type ScalarPoly = BTreeMap<MultiIndex, Rational>;

/// Product of two scalar polynomials, dropping every monomial not dividing `cap`.
fn mul_capped(a: &ScalarPoly, b: &ScalarPoly, cap: &[u32]) -> ScalarPoly {
    let mut out = ScalarPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            if m.0.iter().zip(cap).any(|(e, c)| e > c) {
                continue;
            }
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A degree-`m` homogeneous polynomial map `E → F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMap {
    src_dim: usize,
    tgt_dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Vector>,
}

impl HomogeneousMap {
    pub fn zero(src_dim: usize, tgt_dim: usize, degree: usize) -> Self {
        HomogeneousMap {
            src_dim,
            tgt_dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(src_dim: usize, value: Vector) -> Self {
        let mut f = Self::zero(src_dim, value.dim(), 0);
        f.add_term(MultiIndex::zero(src_dim), &value, &Rational::one());
        f
    }

    /// The degree-1 map `x ↦ L x`.
    pub fn linear(l: &LinearMap) -> Self {
        let mut f = Self::zero(l.cols(), l.rows(), 1);
        for j in 0..l.cols() {
            f.add_term(
                MultiIndex::unit(l.cols(), j),
                &l.column(j),
                &Rational::one(),
            );
        }
        f
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(&LinearMap::identity(n))
    }

    pub fn from_terms(
        src_dim: usize,
        tgt_dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Vector)>,
    ) -> Result<Self> {
        let mut f = Self::zero(src_dim, tgt_dim, degree);
        for (alpha, v) in terms {
            if alpha.len() != src_dim {
                return Err(Error::DimensionMismatch {
                    context: "monomial exponent vector",
                    expected: src_dim,
                    found: alpha.len(),
                });
            }
            if alpha.degree() != degree {
                return Err(Error::ShapeMismatch(format!(
                    "monomial of degree {} in a degree-{degree} map",
                    alpha.degree()
                )));
            }
            v.check_dim(tgt_dim, "monomial coefficient")?;
            f.add_term(alpha, &v, &Rational::one());
        }
        Ok(f)
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Vector)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<&Vector> {
        self.coeffs.get(alpha)
    }

    /// `coeffs[alpha] += c * v`, keeping the table free of zeros.
    pub(crate) fn add_term(&mut self, alpha: MultiIndex, v: &Vector, c: &Rational) {
        if c.is_zero() || v.is_zero() {
            return;
        }
        debug_assert_eq!(alpha.degree(), self.degree);
        match self.coeffs.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v.scale(c));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(c, v);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_shape(&self, other: &HomogeneousMap) -> Result<()> {
        if (self.src_dim, self.tgt_dim, self.degree) != (other.src_dim, other.tgt_dim, other.degree)
        {
            return Err(Error::ShapeMismatch(format!(
                "homogeneous maps of shape ({}→{}, deg {}) and ({}→{}, deg {})",
                self.src_dim, self.tgt_dim, self.degree, other.src_dim, other.tgt_dim, other.degree
            )));
        }
        Ok(())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (alpha, v) in &other.coeffs {
            out.add_term(alpha.clone(), v, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.add_scaled(&-Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> HomogeneousMap {
        let mut out = Self::zero(self.src_dim, self.tgt_dim, self.degree);
        for (alpha, v) in &self.coeffs {
            out.add_term(alpha.clone(), v, c);
        }
        out
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.src_dim, "evaluation point")?;
        let mut out = Vector::zeros(self.tgt_dim);
        for (alpha, v) in &self.coeffs {
            out.add_scaled(&alpha.pow_eval(x), v);
        }
        Ok(out)
    }

    /// Post-composes with a linear map on the target.
    pub fn map_target(&self, l: &LinearMap) -> Result<HomogeneousMap> {
        if l.cols() != self.tgt_dim {
            return Err(Error::DimensionMismatch {
                context: "target linear map",
                expected: self.tgt_dim,
                found: l.cols(),
            });
        }
        let mut out = Self::zero(self.src_dim, l.rows(), self.degree);
        for (alpha, v) in &self.coeffs {
            out.add_term(alpha.clone(), &l.apply_unchecked(v), &Rational::one());
        }
        Ok(out)
    }

    /// Maps each coefficient through `f`, e.g. a change of coordinates.
    pub fn try_map_coeffs(
        &self,
        tgt_dim: usize,
        mut f: impl FnMut(&Vector) -> Result<Vector>,
    ) -> Result<HomogeneousMap> {
        let mut out = Self::zero(self.src_dim, tgt_dim, self.degree);
        for (alpha, v) in &self.coeffs {
            let w = f(v)?;
            w.check_dim(tgt_dim, "mapped coefficient")?;
            out.add_term(alpha.clone(), &w, &Rational::one());
        }
        Ok(out)
    }

    /// Pointwise bracket `y ↦ [f(y), g(y)]` of two maps valued in `alg`.
    pub fn pointwise_bracket(
        &self,
        other: &HomogeneousMap,
        alg: &LieAlgebra,
    ) -> Result<HomogeneousMap> {
        if self.src_dim != other.src_dim {
            return Err(Error::ShapeMismatch(format!(
                "pointwise bracket of maps on {}- and {}-dimensional sources",
                self.src_dim, other.src_dim
            )));
        }
        self.check_valued_in(alg)?;
        other.check_valued_in(alg)?;
        let mut out = Self::zero(self.src_dim, alg.dim(), self.degree + other.degree);
        for (a, u) in &self.coeffs {
            for (b, v) in &other.coeffs {
                out.add_term(a.mul(b), &alg.bracket_unchecked(u, v), &Rational::one());
            }
        }
        Ok(out)
    }

    fn check_valued_in(&self, alg: &LieAlgebra) -> Result<()> {
        if self.tgt_dim != alg.dim() {
            return Err(Error::DimensionMismatch {
                context: "algebra-valued map target",
                expected: alg.dim(),
                found: self.tgt_dim,
            });
        }
        Ok(())
    }

    /// Derivative of `f` along the vector field `xi`: `x ↦ Σ_i xi_i(x) ∂_i f(x)`.
    ///
    /// The result has degree `deg xi + deg f - 1`; when `f` is constant the
    /// derivative is the zero map (reported with degree `deg xi - 1`, or 0).
    pub fn derive(xi: &HomogeneousMap, f: &HomogeneousMap) -> Result<HomogeneousMap> {
        if xi.src_dim != xi.tgt_dim {
            return Err(Error::ShapeMismatch(format!(
                "derivation field must map a space to itself, got {}→{}",
                xi.src_dim, xi.tgt_dim
            )));
        }
        if xi.src_dim != f.src_dim {
            return Err(Error::DimensionMismatch {
                context: "derivation field source",
                expected: f.src_dim,
                found: xi.src_dim,
            });
        }
        let degree = (xi.degree + f.degree).saturating_sub(1);
        let mut out = Self::zero(f.src_dim, f.tgt_dim, degree);
        if f.degree == 0 {
            return Ok(out);
        }
        for (beta, v) in &f.coeffs {
            for (i, &bi) in beta.0.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                let mut lowered = beta.clone();
                lowered.0[i] -= 1;
                let bi = int(bi as i64);
                for (alpha, w) in &xi.coeffs {
                    let wi = &w[i];
                    if wi.is_zero() {
                        continue;
                    }
                    out.add_term(alpha.mul(&lowered), v, &(&bi * wi));
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `t^p` in `f(t_1 z_1 + ... + t_r z_r)`.
    ///
    /// Equals the symmetric multilinear sum over all slot arrangements with
    /// exactly `p_j` copies of `z_j`. Negative entries in `p`, or a total
    /// other than the degree, give zero.
    pub fn polarize(&self, z: &[Vector], p: &[i64]) -> Result<Vector> {
        if z.len() != p.len() {
            return Err(Error::DimensionMismatch {
                context: "polarization multiplicities",
                expected: z.len(),
                found: p.len(),
            });
        }
        for zj in z {
            zj.check_dim(self.src_dim, "polarization point")?;
        }
        let zero = Vector::zeros(self.tgt_dim);
        if p.iter().any(|&pj| pj < 0) || p.iter().sum::<i64>() != self.degree as i64 {
            return Ok(zero);
        }
        let r = z.len();
        let cap: Vec<u32> = p.iter().map(|&x| x as u32).collect();
        let target = MultiIndex(cap.clone());
        // L_k(t) = Σ_j t_j z_j[k]
        let linear_forms: Vec<ScalarPoly> = (0..self.src_dim)
            .map(|k| {
                let mut poly = ScalarPoly::new();
                for (j, zj) in z.iter().enumerate() {
                    if !zj[k].is_zero() {
                        poly.insert(MultiIndex::unit(r, j), zj[k].clone());
                    }
                }
                poly
            })
            .collect();
        let mut out = zero;
        for (alpha, v) in &self.coeffs {
            let mut acc = ScalarPoly::from([(MultiIndex::zero(r), Rational::one())]);
            for (k, &e) in alpha.0.iter().enumerate() {
                for _ in 0..e {
                    acc = mul_capped(&acc, &linear_forms[k], &cap);
                }
            }
            if let Some(c) = acc.get(&target) {
                out.add_scaled(c, v);
            }
        }
        Ok(out)
    }

    /// Reindexes source variables into `n` variables starting at `offset`.
    pub fn embed_source(&self, offset: usize, n: usize) -> HomogeneousMap {
        let mut out = Self::zero(n, self.tgt_dim, self.degree);
        for (alpha, v) in &self.coeffs {
            out.add_term(alpha.embed(offset, n), v, &Rational::one());
        }
        out
    }

    /// Places target values at `offset` inside an `n`-dimensional target.
    pub fn embed_target(&self, offset: usize, n: usize) -> HomogeneousMap {
        let mut out = Self::zero(self.src_dim, n, self.degree);
        for (alpha, v) in &self.coeffs {
            let mut w = Vector::zeros(n);
            for (i, x) in v.iter().enumerate() {
                w[offset + i] = x.clone();
            }
            out.add_term(alpha.clone(), &w, &Rational::one());
        }
        out
    }
}

/// A truncated formal series `Σ_m f_m` with components certified for `m ≤ valid_through`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    src_dim: usize,
    tgt_dim: usize,
    components: Vec<HomogeneousMap>,
}

impl FormalSeries {
    pub fn new(src_dim: usize, tgt_dim: usize, components: Vec<HomogeneousMap>) -> Result<Self> {
        for (m, c) in components.iter().enumerate() {
            if c.degree != m || c.src_dim != src_dim || c.tgt_dim != tgt_dim {
                return Err(Error::ShapeMismatch(format!(
                    "component {m} has shape ({}→{}, deg {}) in a {src_dim}→{tgt_dim} series",
                    c.src_dim, c.tgt_dim, c.degree
                )));
            }
        }
        Ok(FormalSeries {
            src_dim,
            tgt_dim,
            components,
        })
    }

    /// The series with no certified component (`valid_through = -1`).
    pub fn unknown(src_dim: usize, tgt_dim: usize) -> Self {
        FormalSeries {
            src_dim,
            tgt_dim,
            components: Vec::new(),
        }
    }

    pub fn zero(src_dim: usize, tgt_dim: usize, valid_through: usize) -> Self {
        FormalSeries {
            src_dim,
            tgt_dim,
            components: (0..=valid_through)
                .map(|m| HomogeneousMap::zero(src_dim, tgt_dim, m))
                .collect(),
        }
    }

    pub fn constant(src_dim: usize, value: Vector, valid_through: usize) -> Self {
        Self::from_homogeneous(HomogeneousMap::constant(src_dim, value), valid_through)
    }

    /// The series whose only nonzero component is `f`; `f` is dropped when
    /// its degree exceeds `valid_through`.
    pub fn from_homogeneous(f: HomogeneousMap, valid_through: usize) -> Self {
        let mut s = Self::zero(f.src_dim, f.tgt_dim, valid_through);
        if f.degree <= valid_through {
            let d = f.degree;
            s.components[d] = f;
        }
        s
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    /// Highest certified degree, `-1` when nothing is certified.
    pub fn valid_through(&self) -> isize {
        self.components.len() as isize - 1
    }

    pub fn components(&self) -> &[HomogeneousMap] {
        &self.components
    }

    pub fn component(&self, m: usize) -> Option<&HomogeneousMap> {
        self.components.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(HomogeneousMap::is_zero)
    }

    /// Forgets every component above `valid_through`.
    pub fn truncate(&self, valid_through: isize) -> FormalSeries {
        let keep = (valid_through + 1).max(0) as usize;
        FormalSeries {
            src_dim: self.src_dim,
            tgt_dim: self.tgt_dim,
            components: self.components.iter().take(keep).cloned().collect(),
        }
    }

    fn same_shape(&self, other: &FormalSeries) -> Result<()> {
        if (self.src_dim, self.tgt_dim) != (other.src_dim, other.tgt_dim) {
            return Err(Error::ShapeMismatch(format!(
                "series {}→{} and {}→{}",
                self.src_dim, self.tgt_dim, other.src_dim, other.tgt_dim
            )));
        }
        Ok(())
    }

    /// `self + c * other`, certified through the smaller validity.
    pub fn add_scaled(&self, c: &Rational, other: &FormalSeries) -> Result<FormalSeries> {
        self.same_shape(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add_scaled(c, b))
            .collect::<Result<Vec<_>>>()?;
        FormalSeries::new(self.src_dim, self.tgt_dim, components)
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.add_scaled(&-Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> FormalSeries {
        FormalSeries {
            src_dim: self.src_dim,
            tgt_dim: self.tgt_dim,
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn map_target(&self, l: &LinearMap) -> Result<FormalSeries> {
        let components = self
            .components
            .iter()
            .map(|f| f.map_target(l))
            .collect::<Result<Vec<_>>>()?;
        FormalSeries::new(self.src_dim, l.rows(), components)
    }

    /// Sum of the certified components at `x`.
    pub fn eval_truncated(&self, x: &Vector) -> Result<Vector> {
        let mut out = Vector::zeros(self.tgt_dim);
        for f in &self.components {
            out = &out + &f.eval(x)?;
        }
        Ok(out)
    }

    /// Degrees `≤ through` where the two series differ; both must certify them.
    pub fn differing_degrees(&self, other: &FormalSeries, through: usize) -> Result<Vec<usize>> {
        self.same_shape(other)?;
        let avail = self.valid_through().min(other.valid_through());
        if (through as isize) > avail {
            return Err(Error::DegreeTooHigh {
                requested: through,
                attainable: avail,
            });
        }
        Ok((0..=through)
            .filter(|&m| self.components[m] != other.components[m])
            .collect())
    }

    /// Derivative of `f` along the endomorphism-shaped series `xi`:
    /// `g_s = Σ_{r+m-1=s} xi_r f_m`, certified through
    /// `min(valid(xi), valid(f)) - 1`.
    pub fn derive(xi: &FormalSeries, f: &FormalSeries) -> Result<FormalSeries> {
        if xi.src_dim != xi.tgt_dim {
            return Err(Error::ShapeMismatch(format!(
                "derivation series must map a space to itself, got {}→{}",
                xi.src_dim, xi.tgt_dim
            )));
        }
        if xi.src_dim != f.src_dim {
            return Err(Error::DimensionMismatch {
                context: "derivation series source",
                expected: f.src_dim,
                found: xi.src_dim,
            });
        }
        let valid = xi.valid_through().min(f.valid_through()) - 1;
        let mut components = Vec::new();
        for s in 0..(valid + 1).max(0) as usize {
            let mut g = HomogeneousMap::zero(f.src_dim, f.tgt_dim, s);
            for r in 0..=s {
                let m = s + 1 - r;
                let term = HomogeneousMap::derive(&xi.components[r], &f.components[m])?;
                g = g.add(&term)?;
            }
            components.push(g);
        }
        FormalSeries::new(f.src_dim, f.tgt_dim, components)
    }

    /// Pointwise bracket `[f,g]_s = Σ_{n+r=s} [f_n, g_r]`, certified through the smaller validity.
    pub fn pointwise_bracket(
        &self,
        other: &FormalSeries,
        alg: &LieAlgebra,
    ) -> Result<FormalSeries> {
        self.same_shape(other)?;
        if self.tgt_dim != alg.dim() {
            return Err(Error::DimensionMismatch {
                context: "algebra-valued series target",
                expected: alg.dim(),
                found: self.tgt_dim,
            });
        }
        let valid = self.valid_through().min(other.valid_through());
        let mut components = Vec::new();
        for s in 0..(valid + 1).max(0) as usize {
            let mut acc = HomogeneousMap::zero(self.src_dim, self.tgt_dim, s);
            for n in 0..=s {
                let term = self.components[n].pointwise_bracket(&other.components[s - n], alg)?;
                acc = acc.add(&term)?;
            }
            components.push(acc);
        }
        FormalSeries::new(self.src_dim, self.tgt_dim, components)
    }
}

/// Dense multilinear map `E^m → F`, used as an independent oracle for
/// polynomial identities on small examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearTensor {
    src_dim: usize,
    tgt_dim: usize,
    arity: usize,
    entries: Vec<Vector>,
}

impl MultilinearTensor {
    pub fn zero(src_dim: usize, tgt_dim: usize, arity: usize) -> Self {
        MultilinearTensor {
            src_dim,
            tgt_dim,
            arity,
            entries: vec![Vector::zeros(tgt_dim); src_dim.pow(arity as u32)],
        }
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.src_dim + i)
    }

    fn unflat(&self, mut k: usize) -> Vec<usize> {
        let mut idx = vec![0; self.arity];
        for slot in idx.iter_mut().rev() {
            *slot = k % self.src_dim;
            k /= self.src_dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Vector {
        &self.entries[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Vector) {
        assert_eq!(idx.len(), self.arity);
        assert_eq!(v.dim(), self.tgt_dim);
        let k = self.flat(idx);
        self.entries[k] = v;
    }

    /// Every index tuple with its entry.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Vector)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, v)| (self.unflat(k), v))
    }

    pub fn add(&self, other: &MultilinearTensor) -> MultilinearTensor {
        assert_eq!(
            (self.src_dim, self.tgt_dim, self.arity),
            (other.src_dim, other.tgt_dim, other.arity)
        );
        MultilinearTensor {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }

    /// `u(x_1, ..., x_m)` by full multilinear expansion.
    pub fn eval(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity);
        let mut out = Vector::zeros(self.tgt_dim);
        for (idx, v) in self.entries() {
            if v.is_zero() {
                continue;
            }
            let mut c = Rational::one();
            for (slot, &i) in idx.iter().enumerate() {
                c *= &args[slot][i];
                if c.is_zero() {
                    break;
                }
            }
            out.add_scaled(&c, v);
        }
        out
    }

    /// Average over all permutations of the slots.
    pub fn symmetrize(&self) -> MultilinearTensor {
        let perms = permutations(self.arity);
        let weight = Rational::one() / crate::rational::factorial(self.arity);
        let mut out = Self::zero(self.src_dim, self.tgt_dim, self.arity);
        for (idx, v) in self.entries() {
            for perm in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&s| idx[s]).collect();
                let k = out.flat(&permuted);
                out.entries[k].add_scaled(&weight, v);
            }
        }
        out
    }

    /// The homogeneous polynomial `x ↦ u(x, ..., x)`.
    pub fn to_homogeneous(&self) -> HomogeneousMap {
        let mut f = HomogeneousMap::zero(self.src_dim, self.tgt_dim, self.arity);
        for (idx, v) in self.entries() {
            f.add_term(MultiIndex::content(self.src_dim, &idx), v, &Rational::one());
        }
        f
    }

    /// Sum of `u(x_1, ..., x_m)` over every arrangement of the slots with
    /// exactly `p_j` of them equal to `z_j`. Literal enumeration.
    pub fn polarize_oracle(&self, z: &[Vector], p: &[i64]) -> Result<Vector> {
        if self.arity > MAX_ORACLE_ARITY {
            return Err(Error::ArityTooLarge(self.arity));
        }
        if z.len() != p.len() {
            return Err(Error::DimensionMismatch {
                context: "polarization multiplicities",
                expected: z.len(),
                found: p.len(),
            });
        }
        for zj in z {
            zj.check_dim(self.src_dim, "polarization point")?;
        }
        let mut out = Vector::zeros(self.tgt_dim);
        if p.iter().any(|&x| x < 0) || p.iter().sum::<i64>() != self.arity as i64 {
            return Ok(out);
        }
        let mut counts: Vec<usize> = p.iter().map(|&x| x as usize).collect();
        let mut slots = Vec::with_capacity(self.arity);
        self.arrangements(z, &mut counts, &mut slots, &mut out);
        Ok(out)
    }

    fn arrangements(
        &self,
        z: &[Vector],
        counts: &mut [usize],
        slots: &mut Vec<Vector>,
        out: &mut Vector,
    ) {
        if slots.len() == self.arity {
            *out = &*out + &self.eval(slots);
            return;
        }
        for j in 0..z.len() {
            if counts[j] == 0 {
                continue;
            }
            counts[j] -= 1;
            slots.push(z[j].clone());
            self.arrangements(z, counts, slots, out);
            slots.pop();
            counts[j] += 1;
        }
    }
}

/// Same as [`MultilinearTensor::to_homogeneous`].
pub fn from_multilinear(u: &MultilinearTensor) -> HomogeneousMap {
    u.to_homogeneous()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
