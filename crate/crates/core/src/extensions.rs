//! Extensions `A → C → B`, linear sections, and the Kaloujnine-Krasner
//! representation `f_s(c) = (h_c, p(c))` of `C` in the wreath product `W(A,B)`.

use num_traits::One;

use crate::actions::{bernoulli_t, BernoulliCoeffs};
use crate::algebra::{quotient, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Subspace, Vector};
use crate::poly::{FormalSeries, HomogeneousMap};
use crate::random::Sampler;
use crate::rational::factorial;
use crate::wreath::{WreathElement, WreathProduct};

/// An extension of `B` by `A`: `C` with an ideal `A` and the projection `p: C → B = C/A`.
#[derive(Clone, Debug)]
pub struct Extension {
    c: LieAlgebra,
    ideal: Subspace,
    a: LieAlgebra,
    b: LieAlgebra,
    p: LinearMap,
    incl: LinearMap,
    positions: Vec<usize>,
}

impl Extension {
    pub fn c(&self) -> &LieAlgebra {
        &self.c
    }

    pub fn a(&self) -> &LieAlgebra {
        &self.a
    }

    pub fn b(&self) -> &LieAlgebra {
        &self.b
    }

    pub fn projection(&self) -> &LinearMap {
        &self.p
    }

    /// `A → C`, columns are the ideal basis vectors.
    pub fn inclusion(&self) -> &LinearMap {
        &self.incl
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Coordinates of an ideal element in the ideal basis; `None` outside the ideal.
    pub fn ideal_coords(&self, v: &Vector) -> Option<Vector> {
        self.ideal.coords(v)
    }
}

/// Builds the extension of `C/A` by `A = span(ideal_basis)`.
///
/// The bracket of `A` is induced from `C` in the given ideal basis. Basis
/// labels of `A` reuse `C`'s label when an ideal vector is a coordinate
/// vector, and are `a1, a2, ...` otherwise.
pub fn make_extension(c: &LieAlgebra, ideal_basis: &[Vector]) -> Result<Extension> {
    let q = quotient(c, ideal_basis)?;
    let ideal = q.ideal;
    let table = ideal
        .basis()
        .iter()
        .map(|u| {
            ideal
                .basis()
                .iter()
                .map(|v| {
                    ideal
                        .coords(&c.bracket_unchecked(u, v))
                        .ok_or_else(|| Error::NotAnIdeal("induced bracket leaves the ideal".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = ideal
        .basis()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let ones: Vec<usize> = (0..v.dim())
                .filter(|&t| !num_traits::Zero::is_zero(&v[t]))
                .collect();
            match ones.as_slice() {
                [t] if v[*t].is_one() => c.labels()[*t].clone(),
                _ => format!("a{}", i + 1),
            }
        })
        .collect();
    let a = LieAlgebra::new(format!("{}-ideal", c.name()), labels, table)?;
    let incl = LinearMap::from_columns(c.dim(), ideal.basis())?;
    Ok(Extension {
        c: c.clone(),
        ideal,
        a,
        b: q.algebra,
        p: q.projection,
        incl,
        positions: q.positions,
    })
}

/// A linear map `s: B → C` with `p ∘ s = id_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    s: LinearMap,
}

impl Section {
    /// Accepts `s` only when `p ∘ s` is exactly the identity.
    pub fn new(ext: &Extension, s: LinearMap) -> Result<Self> {
        if s.rows() != ext.c.dim() || s.cols() != ext.b.dim() {
            return Err(Error::InvalidSection(format!(
                "expected a {}x{} matrix, got {}x{}",
                ext.c.dim(),
                ext.b.dim(),
                s.rows(),
                s.cols()
            )));
        }
        if ext.p.compose(&s)? != LinearMap::identity(ext.b.dim()) {
            return Err(Error::InvalidSection("p ∘ s is not the identity".into()));
        }
        Ok(Section { s })
    }

    /// `s(b_i)` given as `C`-vectors.
    pub fn from_images(ext: &Extension, images: &[Vector]) -> Result<Self> {
        if images.len() != ext.b.dim() {
            return Err(Error::InvalidSection(format!(
                "expected {} section images, got {}",
                ext.b.dim(),
                images.len()
            )));
        }
        Self::new(ext, LinearMap::from_columns(ext.c.dim(), images)?)
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.s
    }
}

/// The coordinate section sending each quotient basis vector back to the
/// coordinate vector of `C` it came from.
pub fn default_section(ext: &Extension) -> Section {
    let images: Vec<Vector> = ext
        .positions
        .iter()
        .map(|&q| Vector::unit(ext.c.dim(), q))
        .collect();
    Section::from_images(ext, &images).expect("coordinate complement is a section")
}

/// Precomputed data for evaluating `h_{c,m}` with a fixed section.
pub struct KkEmbedding<'a> {
    ext: &'a Extension,
    /// `y ↦ z = s(y)`, degree 1, `B → C`.
    z: HomogeneousMap,
    s_p: LinearMap,
    t: BernoulliCoeffs,
}

impl<'a> KkEmbedding<'a> {
    pub fn new(ext: &'a Extension, s: &Section, max_degree: usize) -> Result<Self> {
        Ok(KkEmbedding {
            ext,
            z: HomogeneousMap::linear(&s.s),
            s_p: s.s.compose(&ext.p)?,
            t: bernoulli_t(max_degree),
        })
    }

    fn ad_z(&self, v: &HomogeneousMap) -> Result<HomogeneousMap> {
        self.z.pointwise_bracket(v, &self.ext.c)
    }

    fn ad_z_pow(&self, v: &HomogeneousMap, n: usize) -> Result<HomogeneousMap> {
        let mut out = v.clone();
        for _ in 0..n {
            out = self.ad_z(&out)?;
        }
        Ok(out)
    }

    /// `h_{c,m}` in `C`-coordinates, before the ideal check:
    /// `(ad z)^m(c)/m! − Σ_{n+r=m} t_r/(n+1)! · (ad z)^n (s∘p) (ad z)^r(c)`.
    pub fn component_in_c(&self, c: &Vector, m: usize) -> Result<HomogeneousMap> {
        c.check_dim(self.ext.c.dim(), "embedded element")?;
        if m > self.t.n_max() {
            return Err(Error::Precondition(format!(
                "coefficients prepared up to degree {}, asked for {m}",
                self.t.n_max()
            )));
        }
        let b_dim = self.ext.b.dim();
        let mut powers = vec![HomogeneousMap::constant(b_dim, c.clone())];
        for r in 1..=m {
            powers.push(self.ad_z(&powers[r - 1])?);
        }
        let mut h = powers[m].scale(&(factorial(m).recip()));
        for (r, power) in powers.iter().enumerate() {
            let t_r = self.t.get(r);
            if num_traits::Zero::is_zero(t_r) {
                continue;
            }
            let n = m - r;
            let inner = power.map_target(&self.s_p)?;
            let term = self.ad_z_pow(&inner, n)?;
            h = h.add_scaled(&-(t_r / factorial(n + 1)), &term)?;
        }
        Ok(h)
    }

    /// `h_{c,m}` as a degree-`m` map `B → A` in the ideal basis. Every
    /// coefficient must lie in the ideal; a value outside it is a hard error.
    pub fn component(&self, c: &Vector, m: usize) -> Result<HomogeneousMap> {
        let in_c = self.component_in_c(c, m)?;
        in_c.try_map_coeffs(self.ext.a.dim(), |v| {
            self.ext
                .ideal_coords(v)
                .ok_or(Error::IdealEscape { degree: m })
        })
    }

    /// `f_s(c) = (h_c, p(c))` with `h_c` certified through `n`.
    pub fn embed(&self, c: &Vector, n: usize) -> Result<WreathElement> {
        let components = (0..=n)
            .map(|m| self.component(c, m))
            .collect::<Result<Vec<_>>>()?;
        let series = FormalSeries::new(self.ext.b.dim(), self.ext.a.dim(), components)?;
        Ok(WreathElement::new(series, self.ext.p.apply(c)?))
    }
}

/// `h_{c,m}`: the degree-`m` component of the embedding, in `A`-coordinates.
pub fn kk_component(ext: &Extension, s: &Section, c: &Vector, m: usize) -> Result<HomogeneousMap> {
    KkEmbedding::new(ext, s, m)?.component(c, m)
}

/// `f_s(c) = (h_c, p(c))` certified through degree `n`.
pub fn kk_embed(ext: &Extension, s: &Section, c: &Vector, n: usize) -> Result<WreathElement> {
    KkEmbedding::new(ext, s, n)?.embed(c, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkPairCheck {
    pub left: Vector,
    pub right: Vector,
    /// Degrees where `[f(c), f(c')]` and `f([c,c'])` differ.
    pub mismatched_degrees: Vec<usize>,
    pub point_matches: bool,
}

impl KkPairCheck {
    pub fn passed(&self) -> bool {
        self.mismatched_degrees.is_empty() && self.point_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkReport {
    pub order: usize,
    pub checked_through: usize,
    pub pairs: Vec<KkPairCheck>,
    /// Rank of `c ↦ (h_{c,0}, p(c))`.
    pub injectivity_rank: usize,
    pub dim_c: usize,
}

impl KkReport {
    pub fn homomorphism_passed(&self) -> bool {
        self.pairs.iter().all(KkPairCheck::passed)
    }

    pub fn injectivity_passed(&self) -> bool {
        self.injectivity_rank == self.dim_c
    }

    pub fn passed(&self) -> bool {
        self.homomorphism_passed() && self.injectivity_passed()
    }
}

/// Checks that `f_s` is an injective homomorphism `C → W(A,B)`.
///
/// Homomorphism: on every basis pair and `trials` seeded random pairs,
/// `[f(c), f(c')] = f([c,c'])` on degrees `≤ n − 1` (the bracket spends one
/// degree). Injectivity: `c ↦ (h_{c,0}, p(c))` has rank `dim C`, which
/// suffices because `h_{c,0} = c − s(p(c))`.
pub fn verify_kk(
    ext: &Extension,
    s: &Section,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<KkReport> {
    if n < 2 {
        return Err(Error::Precondition(
            "N must be ≥ 2 for bracket verification".into(),
        ));
    }
    let w = WreathProduct::fundamental(ext.a.clone(), ext.b.clone(), n)?;
    let kk = KkEmbedding::new(ext, s, n)?;
    let dim = ext.c.dim();
    let mut inputs: Vec<(Vector, Vector)> = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            inputs.push((Vector::unit(dim, i), Vector::unit(dim, j)));
        }
    }
    let mut rng = Sampler::new(seed);
    for _ in 0..trials {
        inputs.push((rng.vector(dim), rng.vector(dim)));
    }
    let through = n - 1;
    let mut pairs = Vec::with_capacity(inputs.len());
    for (c1, c2) in inputs {
        let lhs = w.bracket(&kk.embed(&c1, n)?, &kk.embed(&c2, n)?)?;
        let rhs = kk.embed(&ext.c.bracket(&c1, &c2)?, n)?;
        pairs.push(KkPairCheck {
            mismatched_degrees: lhs.differing_degrees(&rhs, through)?,
            point_matches: lhs.point == rhs.point,
            left: c1,
            right: c2,
        });
    }
    let columns = ext
        .c
        .basis()
        .iter()
        .map(|e| {
            let h0 = kk.component(e, 0)?;
            let mut col = h0.eval(&Vector::zeros(ext.b.dim()))?.0;
            col.extend(ext.p.apply(e)?.0);
            Ok(Vector(col))
        })
        .collect::<Result<Vec<_>>>()?;
    let stacked = LinearMap::from_columns(ext.a.dim() + ext.b.dim(), &columns)?;
    Ok(KkReport {
        order: n,
        checked_through: through,
        pairs,
        injectivity_rank: stacked.rank(),
        dim_c: dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    fn heisenberg_center() -> Extension {
        make_extension(&LieAlgebra::heisenberg(), &[v(&[0, 0, 1])]).unwrap()
    }

    #[test]
    fn heisenberg_center_extension() {
        let ext = heisenberg_center();
        assert_eq!(ext.a().dim(), 1);
        assert!(ext.a().is_abelian());
        assert_eq!(ext.a().labels(), &["e3".to_string()]);
        assert_eq!(ext.b().dim(), 2);
        assert!(ext.b().is_abelian());
        let s = default_section(&ext);
        assert_eq!(s.matrix().column(0), v(&[1, 0, 0]));
        assert_eq!(s.matrix().column(1), v(&[0, 1, 0]));
    }

    #[test]
    fn full_ideal_gives_trivial_quotient() {
        let g = LieAlgebra::sl2();
        let ext = make_extension(&g, &g.basis()).unwrap();
        assert_eq!(ext.b().dim(), 0);
        assert_eq!(ext.a().dim(), 3);
        assert_eq!(ext.a().structure(1, 2), &v(&[1, 0, 0]));
        assert_eq!(default_section(&ext).matrix().cols(), 0);
    }

    #[test]
    fn affine_line_extension() {
        let ext = make_extension(&LieAlgebra::affine_line(), &[v(&[0, 1])]).unwrap();
        assert_eq!(ext.a().dim(), 1);
        assert_eq!(ext.b().dim(), 1);
        assert_eq!(ext.b().labels(), &["x".to_string()]);
    }

    #[test]
    fn section_validation() {
        let ext = heisenberg_center();
        assert!(Section::from_images(&ext, &[v(&[1, 0, 1]), v(&[0, 1, 0])]).is_ok());
        let bad = Section::from_images(&ext, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        assert!(matches!(bad, Err(Error::InvalidSection(_))));
        assert!(Section::from_images(&ext, &[v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn degree_zero_is_c_minus_sp() {
        let ext =
            make_extension(&LieAlgebra::solvable3(), &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let s = default_section(&ext);
        let c = Vector(vec![rat(2, 3), int(-1), rat(5, 4)]);
        let h0 = kk_component(&ext, &s, &c, 0).unwrap();
        let sp = s.matrix().compose(ext.projection()).unwrap();
        let expected = ext.ideal_coords(&(&c - &sp.apply(&c).unwrap())).unwrap();
        assert_eq!(h0, HomogeneousMap::constant(1, expected));
    }

    #[test]
    fn heisenberg_closed_form() {
        let ext = heisenberg_center();
        let s = default_section(&ext);
        let (c1, c2, c3) = (int(3), rat(-2, 5), rat(7, 2));
        let c = Vector(vec![c1.clone(), c2.clone(), c3.clone()]);
        let el = kk_embed(&ext, &s, &c, 4).unwrap();
        assert_eq!(
            el.series.components()[0],
            HomogeneousMap::constant(2, Vector(vec![c3]))
        );
        let h1 = HomogeneousMap::from_terms(
            2,
            1,
            1,
            [
                (MultiIndex::new(vec![1, 0]), Vector(vec![&c2 / int(2)])),
                (MultiIndex::new(vec![0, 1]), Vector(vec![-&c1 / int(2)])),
            ],
        )
        .unwrap();
        assert_eq!(el.series.components()[1], h1);
        assert!(el.series.components()[2..]
            .iter()
            .all(HomogeneousMap::is_zero));
        assert_eq!(el.point, Vector(vec![c1, c2]));
    }

    #[test]
    fn embed_examples() {
        let ext = heisenberg_center();
        let s = default_section(&ext);
        let zero = kk_embed(&ext, &s, &v(&[0, 0, 0]), 3).unwrap();
        assert!(zero.series.is_zero() && zero.point.is_zero());
        let e3 = kk_embed(&ext, &s, &v(&[0, 0, 1]), 3).unwrap();
        assert_eq!(e3.series, FormalSeries::constant(2, v(&[1]), 3));
        assert!(e3.point.is_zero());
    }

    #[test]
    fn verify_requires_two_degrees() {
        let ext = heisenberg_center();
        let r = verify_kk(&ext, &default_section(&ext), 1, 0, 0);
        assert_eq!(
            r.unwrap_err(),
            Error::Precondition("N must be ≥ 2 for bracket verification".into())
        );
    }

    #[test]
    fn builtin_extensions_verify() {
        let ext = heisenberg_center();
        let report = verify_kk(&ext, &default_section(&ext), 4, 3, 1).unwrap();
        assert!(report.passed(), "{report:?}");
        let ext = make_extension(&LieAlgebra::affine_line(), &[v(&[0, 1])]).unwrap();
        let report = verify_kk(&ext, &default_section(&ext), 5, 3, 1).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
