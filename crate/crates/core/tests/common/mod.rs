//! Reference computations shared by the integration suites. They avoid the
//! library's own algorithms wherever a simpler route exists.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use wreath_core::algebra::LieAlgebra;
use wreath_core::lie_series::bracket_s;
use wreath_core::poly::{FormalSeries, HomogeneousMap, MultiIndex, MultilinearTensor};
use wreath_core::random::Sampler;
use wreath_core::rational::Rational;
use wreath_core::wreath::{WreathElement, WreathProduct};

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `t_0..t_n` from the Bernoulli recurrence `Σ_{k≤n} C(n+1,k) B_k = 0`
/// (so `B_1 = -1/2`), flipped to `B_1 = +1/2` and divided by `n!`.
pub fn bernoulli_oracle(n_max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![r(1)];
    for n in 1..=n_max {
        // Pascal row n+1
        let mut row = vec![BigInt::one()];
        for k in 1..=n + 1 {
            let prev = row[k - 1].clone();
            row.push(prev * BigInt::from(n + 2 - k) / BigInt::from(k));
        }
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(row[k].clone()) * bk;
        }
        b.push(-s / Rational::from_integer(row[n].clone()));
    }
    if n_max >= 1 {
        b[1] = -b[1].clone();
    }
    let mut fact = BigInt::one();
    b.into_iter()
        .enumerate()
        .map(|(n, bn)| {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            bn / Rational::from_integer(fact.clone())
        })
        .collect()
}

/// `∂f/∂x_i`.
pub fn partial(f: &HomogeneousMap, i: usize) -> HomogeneousMap {
    let deg = f.degree().saturating_sub(1);
    let terms = f.terms().filter_map(|(alpha, v)| {
        let e = alpha.exponents()[i];
        if e == 0 {
            return None;
        }
        let mut beta = alpha.exponents().to_vec();
        beta[i] -= 1;
        Some((MultiIndex::new(beta), v.scale(&r(e as i64))))
    });
    HomogeneousMap::from_terms(f.src_dim(), f.tgt_dim(), deg, terms).unwrap()
}

/// `Σ_i ξ_i ∂_i f` by multiplying monomials directly.
pub fn coordinate_derive(xi: &HomogeneousMap, f: &HomogeneousMap) -> HomogeneousMap {
    let n = f.src_dim();
    let deg = (xi.degree() + f.degree()).saturating_sub(1);
    let mut out = HomogeneousMap::zero(n, f.tgt_dim(), deg);
    if f.degree() == 0 {
        return out;
    }
    for i in 0..n {
        let df = partial(f, i);
        let mut terms = Vec::new();
        for (alpha, c) in xi.terms() {
            if c[i].is_zero() {
                continue;
            }
            for (beta, v) in df.terms() {
                terms.push((alpha.mul(beta), v.scale(&c[i])));
            }
        }
        out = out
            .add(&HomogeneousMap::from_terms(n, f.tgt_dim(), deg, terms).unwrap())
            .unwrap();
    }
    out
}

/// Series version of [`coordinate_derive`], certified through `min − 1`.
pub fn coordinate_derive_series(xi: &FormalSeries, f: &FormalSeries) -> FormalSeries {
    let valid = xi.valid_through().min(f.valid_through()) - 1;
    if valid < 0 {
        return FormalSeries::unknown(f.src_dim(), f.tgt_dim());
    }
    let components = (0..=valid as usize)
        .map(|s| {
            let mut acc = HomogeneousMap::zero(f.src_dim(), f.tgt_dim(), s);
            for r in 0..=s {
                let m = s + 1 - r;
                acc = acc
                    .add(&coordinate_derive(&xi.components()[r], &f.components()[m]))
                    .unwrap();
            }
            acc
        })
        .collect();
    FormalSeries::new(f.src_dim(), f.tgt_dim(), components).unwrap()
}

/// `u` with its first two slots exchanged.
pub fn swap_first_slots(u: &MultilinearTensor) -> MultilinearTensor {
    let mut w = MultilinearTensor::zero(u.src_dim(), u.tgt_dim(), u.arity());
    for (idx, v) in u.entries() {
        let mut j = idx.clone();
        j.swap(0, 1);
        w.set(&j, v.clone());
    }
    w
}

/// `u(x_σ)` minus itself with slots 0, 1 swapped: vanishes on the diagonal.
pub fn antisymmetric_perturbation(k: &MultilinearTensor) -> MultilinearTensor {
    let swapped = swap_first_slots(k);
    let mut w = MultilinearTensor::zero(k.src_dim(), k.tgt_dim(), k.arity());
    for (idx, v) in k.entries() {
        w.set(&idx, v - swapped.get(&idx));
    }
    w
}

/// Every certified component of degree `≤ through` is zero, and the series certifies that far.
pub fn vanishes_through(s: &FormalSeries, through: usize) -> bool {
    s.valid_through() >= through as isize
        && s.components()[..=through]
            .iter()
            .all(HomogeneousMap::is_zero)
}

pub fn jacobi_s(x: &FormalSeries, y: &FormalSeries, z: &FormalSeries) -> FormalSeries {
    let a = bracket_s(&bracket_s(x, y).unwrap(), z).unwrap();
    let b = bracket_s(&bracket_s(y, z).unwrap(), x).unwrap();
    let c = bracket_s(&bracket_s(z, x).unwrap(), y).unwrap();
    a.add(&b).unwrap().add(&c).unwrap()
}

pub fn jacobi_pointwise(
    x: &FormalSeries,
    y: &FormalSeries,
    z: &FormalSeries,
    g: &LieAlgebra,
) -> FormalSeries {
    let br = |p: &FormalSeries, q: &FormalSeries| p.pointwise_bracket(q, g).unwrap();
    br(&br(x, y), z)
        .add(&br(&br(y, z), x))
        .unwrap()
        .add(&br(&br(z, x), y))
        .unwrap()
}

pub fn wreath_sum(xs: &[WreathElement]) -> WreathElement {
    let mut series = xs[0].series.clone();
    let mut point = xs[0].point.clone();
    for x in &xs[1..] {
        series = series.add(&x.series).unwrap();
        point = &point + &x.point;
    }
    WreathElement::new(series, point)
}

pub fn wreath_jacobi(
    w: &WreathProduct,
    x: &WreathElement,
    y: &WreathElement,
    z: &WreathElement,
) -> WreathElement {
    let br = |p: &WreathElement, q: &WreathElement| w.bracket(p, q).unwrap();
    wreath_sum(&[br(&br(x, y), z), br(&br(y, z), x), br(&br(z, x), y)])
}

pub fn random_element(w: &WreathProduct, rng: &mut Sampler, density: f64) -> WreathElement {
    let series = rng.series(w.y_dim(), w.a().dim(), w.order(), density);
    let point = rng.sparse_vector(w.b().dim());
    w.element(series, point).unwrap()
}

/// Built-in algebras of dimension at most `max_dim`.
pub fn small_algebras(max_dim: usize) -> Vec<LieAlgebra> {
    [
        LieAlgebra::abelian("abelian1", &["u"]),
        LieAlgebra::abelian("abelian2", &["u", "v"]),
        LieAlgebra::affine_line(),
        LieAlgebra::heisenberg(),
        LieAlgebra::sl2(),
        LieAlgebra::solvable3(),
    ]
    .into_iter()
    .filter(|g| g.dim() <= max_dim)
    .collect()
}
