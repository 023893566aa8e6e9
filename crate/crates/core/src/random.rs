//! Seeded generators of small exact test data.
//!
//! Every rational has numerator and denominator bounded by 9 in absolute
//! value so that long bracket chains stay cheap to compute exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Vector;
use crate::poly::{FormalSeries, HomogeneousMap, MultiIndex, MultilinearTensor};
use crate::rational::{int, rat, Rational};

pub const MAX_ENTRY: i64 = 9;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-MAX_ENTRY..=MAX_ENTRY);
        let den = self.rng.gen_range(1..=MAX_ENTRY);
        rat(num, den)
    }

    /// A rational that is zero about half the time.
    pub fn sparse_rational(&mut self) -> Rational {
        if self.chance(0.5) {
            int(0)
        } else {
            self.rational()
        }
    }

    pub fn vector(&mut self, dim: usize) -> Vector {
        Vector((0..dim).map(|_| self.rational()).collect())
    }

    pub fn sparse_vector(&mut self, dim: usize) -> Vector {
        Vector((0..dim).map(|_| self.sparse_rational()).collect())
    }

    /// Keeps each monomial with probability `density`.
    pub fn homogeneous(
        &mut self,
        src: usize,
        tgt: usize,
        degree: usize,
        density: f64,
    ) -> HomogeneousMap {
        let mut terms: Vec<(MultiIndex, Vector)> = Vec::new();
        for alpha in MultiIndex::all_of_degree(src, degree) {
            if self.chance(density) {
                terms.push((alpha, self.sparse_vector(tgt)));
            }
        }
        HomogeneousMap::from_terms(src, tgt, degree, terms).expect("generated shapes agree")
    }

    pub fn series(
        &mut self,
        src: usize,
        tgt: usize,
        valid_through: usize,
        density: f64,
    ) -> FormalSeries {
        let components = (0..=valid_through)
            .map(|m| self.homogeneous(src, tgt, m, density))
            .collect();
        FormalSeries::new(src, tgt, components).expect("generated shapes agree")
    }

    pub fn tensor(&mut self, src: usize, tgt: usize, arity: usize) -> MultilinearTensor {
        let mut u = MultilinearTensor::zero(src, tgt, arity);
        let idx: Vec<Vec<usize>> = u.entries().map(|(i, _)| i).collect();
        for i in idx {
            let v = self.sparse_vector(tgt);
            u.set(&i, v);
        }
        u
    }
}
