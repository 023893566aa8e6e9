//! The wreath product `W(A,B;d) = A[[Y]] ⋊ B` and its triangular action on
//! `Z = X × Y`.

use crate::actions::{sigma_apply, FormalAction};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::lie_series::{bracket_pointwise, embed_sy_into_sz, embed_ty_into_sz, FieldValuedSeries};
use crate::linalg::Vector;
use crate::poly::FormalSeries;

/// An element `(a, b)` with `a ∈ A[[Y]]` and `b ∈ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub series: FormalSeries,
    pub point: Vector,
}

impl WreathElement {
    pub fn new(series: FormalSeries, point: Vector) -> Self {
        WreathElement { series, point }
    }

    pub fn valid_through(&self) -> isize {
        self.series.valid_through()
    }

    /// Degrees `≤ through` where the series parts differ; points are compared separately.
    pub fn differing_degrees(&self, other: &WreathElement, through: usize) -> Result<Vec<usize>> {
        self.series.differing_degrees(&other.series, through)
    }
}

#[derive(Clone, Debug)]
pub struct WreathProduct {
    a: LieAlgebra,
    b: LieAlgebra,
    action: FormalAction,
    order: usize,
}

impl WreathProduct {
    /// `W(A,B;d)` for an arbitrary formal action `d` of `B` on some space `Y`.
    pub fn new(a: LieAlgebra, b: LieAlgebra, action: FormalAction, order: usize) -> Result<Self> {
        if action.source() != &b {
            return Err(Error::ShapeMismatch(format!(
                "action source {} is not the acting algebra {}",
                action.source(),
                b
            )));
        }
        if action.valid_through() < order {
            return Err(Error::InsufficientValidity {
                required: order,
                available: action.valid_through() as isize,
            });
        }
        Ok(WreathProduct {
            a,
            b,
            action,
            order,
        })
    }

    /// `W(A,B)`: `B` acting on itself through the fundamental action.
    pub fn fundamental(a: LieAlgebra, b: LieAlgebra, order: usize) -> Result<Self> {
        let action = FormalAction::fundamental(&b, order)?;
        Self::new(a, b, action, order)
    }

    pub fn a(&self) -> &LieAlgebra {
        &self.a
    }

    pub fn b(&self) -> &LieAlgebra {
        &self.b
    }

    pub fn action(&self) -> &FormalAction {
        &self.action
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn y_dim(&self) -> usize {
        self.action.space_dim()
    }

    /// Checks dimensions and caps the series validity at the product's order.
    pub fn element(&self, series: FormalSeries, point: Vector) -> Result<WreathElement> {
        let w = WreathElement::new(series.truncate(self.order as isize), point);
        self.check(&w)?;
        Ok(w)
    }

    pub fn zero(&self) -> WreathElement {
        WreathElement::new(
            FormalSeries::zero(self.y_dim(), self.a.dim(), self.order),
            Vector::zeros(self.b.dim()),
        )
    }

    fn check(&self, w: &WreathElement) -> Result<()> {
        if w.series.src_dim() != self.y_dim() {
            return Err(Error::DimensionMismatch {
                context: "wreath element series source",
                expected: self.y_dim(),
                found: w.series.src_dim(),
            });
        }
        if w.series.tgt_dim() != self.a.dim() {
            return Err(Error::DimensionMismatch {
                context: "wreath element series target",
                expected: self.a.dim(),
                found: w.series.tgt_dim(),
            });
        }
        w.point.check_dim(self.b.dim(), "wreath element point")
    }

    /// `d_b` for `b ∈ B`.
    pub fn d(&self, b: &Vector) -> Result<FormalSeries> {
        self.action.apply(b)
    }

    /// `[(a,b),(a',b')] = ([a,a'] + d_b a' − d_{b'} a, [b,b'])`.
    ///
    /// The series part is certified through `min(valid a, valid a') − 1`
    /// (one degree is spent by the derivative terms).
    pub fn bracket(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
        self.check(x)?;
        self.check(y)?;
        for w in [x, y] {
            if w.valid_through() < 1 {
                return Err(Error::InsufficientValidity {
                    required: 1,
                    available: w.valid_through(),
                });
            }
        }
        let pointwise = bracket_pointwise(&x.series, &y.series, &self.a)?;
        let along_b = sigma_apply(&self.d(&x.point)?, &y.series)?;
        let along_b_prime = sigma_apply(&self.d(&y.point)?, &x.series)?;
        let series = pointwise.add(&along_b)?.sub(&along_b_prime)?;
        let point = self.b.bracket(&x.point, &y.point)?;
        Ok(WreathElement::new(series, point))
    }

    /// `Δ_{(a,b)} = D_a + d_b ∈ S(X × Y)`, with `D` a formal action of `A` on `X`.
    ///
    /// `D_a` is the `Y`-series of fields `Σ_β y^β D_{a_β}`; its validity on `Z`
    /// is that of the flattening, and the result is capped by `d_b`.
    pub fn triangular_action(&self, d_a: &FormalAction, w: &WreathElement) -> Result<FormalSeries> {
        if d_a.source() != &self.a {
            return Err(Error::ShapeMismatch(format!(
                "action source {} is not the coefficient algebra {}",
                d_a.source(),
                self.a
            )));
        }
        self.check(w)?;
        let x_dim = d_a.space_dim();
        if w.valid_through() < 0 {
            return Ok(FormalSeries::unknown(
                x_dim + self.y_dim(),
                x_dim + self.y_dim(),
            ));
        }
        let mut fields = FieldValuedSeries::new(x_dim, self.y_dim(), w.valid_through() as usize);
        for comp in w.series.components() {
            for (beta, c) in comp.terms() {
                fields.add_term(beta.clone(), d_a.apply(c)?)?;
            }
        }
        let x_part = embed_ty_into_sz(&fields)?;
        let y_part = embed_sy_into_sz(&self.d(&w.point)?, x_dim)?;
        let valid = x_part.valid_through().min(y_part.valid_through());
        x_part.truncate(valid).add(&y_part.truncate(valid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{HomogeneousMap, MultiIndex};

    fn v(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    fn center_setup() -> WreathProduct {
        let a = LieAlgebra::abelian("center", &["e3"]);
        let b = LieAlgebra::abelian("ab2", &["e1", "e2"]);
        WreathProduct::fundamental(a, b, 4).unwrap()
    }

    #[test]
    fn ideal_and_subalgebra_parts() {
        let w = WreathProduct::fundamental(LieAlgebra::heisenberg(), LieAlgebra::sl2(), 3).unwrap();
        let a = w
            .element(FormalSeries::constant(3, v(&[1, 0, 0]), 3), v(&[0, 0, 0]))
            .unwrap();
        let a2 = w
            .element(FormalSeries::constant(3, v(&[0, 1, 0]), 3), v(&[0, 0, 0]))
            .unwrap();
        let br = w.bracket(&a, &a2).unwrap();
        assert_eq!(br.series, FormalSeries::constant(3, v(&[0, 0, 1]), 2));
        assert!(br.point.is_zero());

        let b = w
            .element(FormalSeries::zero(3, 3, 3), v(&[0, 1, 0]))
            .unwrap();
        let b2 = w
            .element(FormalSeries::zero(3, 3, 3), v(&[0, 0, 1]))
            .unwrap();
        let br = w.bracket(&b, &b2).unwrap();
        assert!(br.series.is_zero());
        assert_eq!(br.point, v(&[1, 0, 0]));
    }

    #[test]
    fn single_derivative_term() {
        let w = center_setup();
        let a = w
            .element(FormalSeries::constant(2, v(&[1]), 4), v(&[1, 0]))
            .unwrap();
        let lin =
            HomogeneousMap::from_terms(2, 1, 1, [(MultiIndex::new(vec![1, 0]), v(&[1]))]).unwrap();
        let a2 = w
            .element(FormalSeries::from_homogeneous(lin, 4), v(&[0, 0]))
            .unwrap();
        let br = w.bracket(&a, &a2).unwrap();
        assert_eq!(br.series, FormalSeries::constant(2, v(&[1]), 3));
        assert!(br.point.is_zero());
    }

    #[test]
    fn rejects_bad_elements() {
        let w = center_setup();
        assert!(w.element(FormalSeries::zero(3, 1, 4), v(&[0, 0])).is_err());
        assert!(w.element(FormalSeries::zero(2, 1, 4), v(&[0])).is_err());
        let thin = w.element(FormalSeries::zero(2, 1, 0), v(&[0, 0])).unwrap();
        assert!(matches!(
            w.bracket(&thin, &w.zero()),
            Err(Error::InsufficientValidity { .. })
        ));
    }

    #[test]
    fn triangular_action_blocks() {
        let w = center_setup();
        let d_a = FormalAction::fundamental(w.a(), 4).unwrap();
        // a = 0: pure Y-block field
        let el = w.element(FormalSeries::zero(2, 1, 4), v(&[2, 3])).unwrap();
        let delta = w.triangular_action(&d_a, &el).unwrap();
        assert_eq!(delta, FormalSeries::constant(3, v(&[0, 2, 3]), 4));
        // b = 0, a = constant: pure X-block field
        let el = w
            .element(FormalSeries::constant(2, v(&[5]), 4), v(&[0, 0]))
            .unwrap();
        let delta = w.triangular_action(&d_a, &el).unwrap();
        assert_eq!(delta, FormalSeries::constant(3, v(&[5, 0, 0]), 4));
    }
}
