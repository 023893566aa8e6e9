//! Bernoulli coefficients of `T e^T / (e^T − 1)`, the fundamental action
//! `d: B → S(B)`, formal actions and their homomorphism check, and the
//! derivation `σ(b) = d_b · (−)` on `A[[Y]]`.

use num_traits::{One, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::lie_series::bracket_s;
use crate::linalg::Vector;
use crate::poly::{FormalSeries, HomogeneousMap};
use crate::rational::{factorial, Rational};

/// Coefficients `t_0..=t_{n_max}` of `G(T) = T e^T / (e^T − 1) = Σ t_n T^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliCoeffs {
    t: Vec<Rational>,
}

impl BernoulliCoeffs {
    /// An arbitrary coefficient list `t_0, t_1, ...`, e.g. to build deliberately wrong actions.
    pub fn from_coefficients(t: Vec<Rational>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::Precondition("at least t_0 is required".into()));
        }
        Ok(BernoulliCoeffs { t })
    }

    pub fn n_max(&self) -> usize {
        self.t.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.t[n]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.t
    }

    /// Checks `G(T)·(e^T − 1) = T·e^T` coefficient-wise through `T^{n_max+1}`.
    pub fn satisfies_generating_identity(&self) -> bool {
        (0..=self.n_max() + 1).all(|d| {
            let lhs = (0..d).fold(Rational::zero(), |acc, k| {
                acc + &self.t[k] / factorial(d - k)
            });
            let rhs = if d == 0 {
                Rational::zero()
            } else {
                Rational::one() / factorial(d - 1)
            };
            lhs == rhs
        })
    }
}

/// `t_0..=t_{n_max}` by series division: `e^T − 1 = T·H(T)` with
/// `H = Σ T^k/(k+1)!`, so `G = e^T / H`.
pub fn bernoulli_t(n_max: usize) -> BernoulliCoeffs {
    let h: Vec<Rational> = (0..=n_max)
        .map(|k| Rational::one() / factorial(k + 1))
        .collect();
    let mut inv = vec![Rational::one()];
    for n in 1..=n_max {
        let s = (1..=n).fold(Rational::zero(), |acc, k| acc + &h[k] * &inv[n - k]);
        inv.push(-s);
    }
    let t = (0..=n_max)
        .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + &inv[k] / factorial(n - k)))
        .collect();
    BernoulliCoeffs { t }
}

/// `y ↦ (ad y)^n(b)` as a homogeneous map of degree `n`, expanded symbolically.
pub fn ad_power_symbolic(alg: &LieAlgebra, b: &Vector, n: usize) -> Result<HomogeneousMap> {
    b.check_dim(alg.dim(), "fundamental action element")?;
    let y = HomogeneousMap::identity(alg.dim());
    let mut v = HomogeneousMap::constant(alg.dim(), b.clone());
    for _ in 0..n {
        v = y.pointwise_bracket(&v, alg)?;
    }
    Ok(v)
}

/// `d_b` with component `n` equal to `y ↦ t_n (ad y)^n(b)`, certified through `n_max`.
pub fn fundamental_action(alg: &LieAlgebra, b: &Vector, n_max: usize) -> Result<FormalSeries> {
    fundamental_action_with(alg, b, &bernoulli_t(n_max))
}

/// Same construction with caller-supplied coefficients, e.g. to build
/// deliberately wrong actions.
pub fn fundamental_action_with(
    alg: &LieAlgebra,
    b: &Vector,
    t: &BernoulliCoeffs,
) -> Result<FormalSeries> {
    let components = (0..=t.n_max())
        .map(|n| Ok(ad_power_symbolic(alg, b, n)?.scale(t.get(n))))
        .collect::<Result<Vec<_>>>()?;
    FormalSeries::new(alg.dim(), alg.dim(), components)
}

/// A linear assignment `a ↦ D_a ∈ S(X)`, stored on the basis of the source algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAction {
    source: LieAlgebra,
    space_dim: usize,
    images: Vec<FormalSeries>,
    valid_through: usize,
}

impl FormalAction {
    /// Images are truncated to `valid_through`; each must certify at least that far.
    pub fn new(
        source: LieAlgebra,
        space_dim: usize,
        images: Vec<FormalSeries>,
        valid_through: usize,
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: "formal action basis images",
                expected: source.dim(),
                found: images.len(),
            });
        }
        let mut truncated = Vec::with_capacity(images.len());
        for s in images {
            if s.src_dim() != space_dim || s.tgt_dim() != space_dim {
                return Err(Error::ShapeMismatch(format!(
                    "action image {}→{} on a {space_dim}-dimensional space",
                    s.src_dim(),
                    s.tgt_dim()
                )));
            }
            if s.valid_through() < valid_through as isize {
                return Err(Error::InsufficientValidity {
                    required: valid_through,
                    available: s.valid_through(),
                });
            }
            truncated.push(s.truncate(valid_through as isize));
        }
        Ok(FormalAction {
            source,
            space_dim,
            images: truncated,
            valid_through,
        })
    }

    /// The fundamental action of `alg` on itself, certified through `n_max`.
    pub fn fundamental(alg: &LieAlgebra, n_max: usize) -> Result<Self> {
        Self::fundamental_with(alg, &bernoulli_t(n_max))
    }

    pub fn fundamental_with(alg: &LieAlgebra, t: &BernoulliCoeffs) -> Result<Self> {
        let images = alg
            .basis()
            .iter()
            .map(|e| fundamental_action_with(alg, e, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg.clone(), alg.dim(), images, t.n_max())
    }

    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn images(&self) -> &[FormalSeries] {
        &self.images
    }

    pub fn valid_through(&self) -> usize {
        self.valid_through
    }

    /// `D_a = Σ_i a_i D_{e_i}`.
    pub fn apply(&self, a: &Vector) -> Result<FormalSeries> {
        a.check_dim(self.source.dim(), "action argument")?;
        let mut out = FormalSeries::zero(self.space_dim, self.space_dim, self.valid_through);
        for (c, img) in a.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add_scaled(c, img)?;
            }
        }
        Ok(out)
    }
}

/// Per-pair outcome of a homomorphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    /// Degrees where `D_{[e_i,e_j]}` and `[D_{e_i}, D_{e_j}]` differ.
    pub mismatched_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub check_degree: usize,
    pub pairs: Vec<PairCheck>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.mismatched_degrees.is_empty())
    }

    /// Lowest degree with any discrepancy.
    pub fn first_failing_degree(&self) -> Option<usize> {
        self.pairs
            .iter()
            .filter_map(|p| p.mismatched_degrees.first().copied())
            .min()
    }
}

/// Compares `D_{[e_i,e_j]}` with `[D_{e_i}, D_{e_j}]` for every basis pair
/// `i < j` on degrees `0..=check_degree`. Bilinearity of both sides makes
/// basis pairs sufficient.
pub fn verify_formal_action(action: &FormalAction, check_degree: usize) -> Result<ActionReport> {
    let attainable = action.valid_through as isize - 1;
    if check_degree as isize > attainable {
        return Err(Error::DegreeTooHigh {
            requested: check_degree,
            attainable,
        });
    }
    let alg = &action.source;
    let basis = alg.basis();
    let mut pairs = Vec::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let lhs = action.apply(&alg.bracket_unchecked(&basis[i], &basis[j]))?;
            let rhs = bracket_s(&action.images[i], &action.images[j])?;
            pairs.push(PairCheck {
                i,
                j,
                mismatched_degrees: lhs.differing_degrees(&rhs, check_degree)?,
            });
        }
    }
    Ok(ActionReport {
        check_degree,
        pairs,
    })
}

/// `σ(b)(a) = d_b a`, the derivative of `a ∈ A[[Y]]` along `d_b ∈ S(Y)`.
pub fn sigma_apply(d_b: &FormalSeries, a: &FormalSeries) -> Result<FormalSeries> {
    if d_b.src_dim() != d_b.tgt_dim() {
        return Err(Error::ShapeMismatch(format!(
            "d_b must be a vector field, got {}→{}",
            d_b.src_dim(),
            d_b.tgt_dim()
        )));
    }
    FormalSeries::derive(d_b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    #[test]
    fn first_coefficients() {
        let t = bernoulli_t(6);
        assert_eq!(t.get(0), &int(1));
        assert_eq!(t.get(1), &rat(1, 2));
        assert_eq!(t.get(2), &rat(1, 12));
        assert!(t.get(3).is_zero());
        assert_eq!(t.get(4), &rat(-1, 720));
        assert!(t.get(5).is_zero());
        assert_eq!(t.get(6), &rat(1, 30240));
        assert!(t.satisfies_generating_identity());
        assert_eq!(bernoulli_t(0).as_slice(), &[int(1)]);
    }

    #[test]
    fn abelian_action_is_constant() {
        let g = LieAlgebra::abelian("ab2", &["a", "b"]);
        let d = fundamental_action(&g, &v(&[3, -2]), 4).unwrap();
        assert_eq!(d, FormalSeries::constant(2, v(&[3, -2]), 4));
    }

    #[test]
    fn heisenberg_action_of_e1() {
        let g = LieAlgebra::heisenberg();
        let d = fundamental_action(&g, &v(&[1, 0, 0]), 4).unwrap();
        assert_eq!(
            d.components()[0],
            HomogeneousMap::constant(3, v(&[1, 0, 0]))
        );
        let expected = HomogeneousMap::from_terms(
            3,
            3,
            1,
            [(
                MultiIndex::new(vec![0, 1, 0]),
                Vector(vec![int(0), int(0), rat(-1, 2)]),
            )],
        )
        .unwrap();
        assert_eq!(d.components()[1], expected);
        assert!(d.components()[2..].iter().all(HomogeneousMap::is_zero));
    }

    #[test]
    fn sl2_linear_component_matches_ad_matrix() {
        let g = LieAlgebra::sl2();
        let e = v(&[0, 1, 0]);
        let d = fundamental_action(&g, &e, 2).unwrap();
        // ½[y,e] = ½(2 y_h e − y_f h) = y_h e − ½ y_f h
        let expected = HomogeneousMap::from_terms(
            3,
            3,
            1,
            [
                (MultiIndex::new(vec![1, 0, 0]), v(&[0, 1, 0])),
                (
                    MultiIndex::new(vec![0, 0, 1]),
                    Vector(vec![rat(-1, 2), int(0), int(0)]),
                ),
            ],
        )
        .unwrap();
        assert_eq!(d.components()[1], expected);
        let y = Vector(vec![rat(2, 3), int(-1), rat(5, 7)]);
        let by_matrix = g.ad(&y).unwrap().apply(&e).unwrap().scale(&rat(1, 2));
        assert_eq!(d.components()[1].eval(&y).unwrap(), by_matrix);
    }

    #[test]
    fn verify_rejects_uncertified_degree() {
        let act = FormalAction::fundamental(&LieAlgebra::heisenberg(), 3).unwrap();
        assert!(verify_formal_action(&act, 2).unwrap().passed());
        assert!(matches!(
            verify_formal_action(&act, 3),
            Err(Error::DegreeTooHigh {
                requested: 3,
                attainable: 2
            })
        ));
    }

    #[test]
    fn sigma_examples() {
        let a = FormalSeries::constant(2, v(&[1, 1, 1]), 3);
        let db = FormalSeries::constant(2, v(&[1, 4]), 3);
        assert!(sigma_apply(&db, &a).unwrap().is_zero());
        let l = HomogeneousMap::from_terms(
            2,
            1,
            1,
            [
                (MultiIndex::new(vec![1, 0]), v(&[2])),
                (MultiIndex::new(vec![0, 1]), v(&[-1])),
            ],
        )
        .unwrap();
        let out = sigma_apply(&db, &FormalSeries::from_homogeneous(l, 3)).unwrap();
        assert_eq!(out, FormalSeries::constant(2, v(&[-2]), 2));
    }

    #[test]
    fn fundamental_actions_are_homomorphisms() {
        for g in [
            LieAlgebra::heisenberg(),
            LieAlgebra::sl2(),
            LieAlgebra::affine_line(),
            LieAlgebra::solvable3(),
        ] {
            let act = FormalAction::fundamental(&g, 5).unwrap();
            let report = verify_formal_action(&act, 4).unwrap();
            assert!(report.passed(), "{g}: {report:?}");
        }
    }

    #[test]
    fn corrupted_coefficient_detected() {
        let mut t = bernoulli_t(5);
        t.t[1] = int(1);
        let act = FormalAction::fundamental_with(&LieAlgebra::heisenberg(), &t).unwrap();
        let report = verify_formal_action(&act, 1).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failing_degree(), Some(0));
    }
}
