//! Seeded random generators for polynomials, operators and fields, used by the
//! self-test suite and the property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hkr::MultiVectorField;
use crate::multiop::{MultiDiffOp, SlotTuple};
use crate::poly::{ratio, MultiIndex, Polynomial, Rational};
use crate::sder::{CompositionWord, VectorField};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Small nonzero rational; mostly integers in `−3..=3`, sometimes halves or thirds.
    pub fn scalar(&mut self) -> Rational {
        let mut n = 0;
        while n == 0 {
            n = self.rng.gen_range(-3i64..=3);
        }
        let d = if self.rng.gen_bool(0.25) {
            self.rng.gen_range(2i64..=3)
        } else {
            1
        };
        ratio(n, d)
    }

    /// Uniform multi-index with total degree in `lo..=hi`.
    pub fn multi_index(&mut self, vars: usize, lo: u32, hi: u32) -> MultiIndex {
        let total = self.rng.gen_range(lo..=hi);
        let mut e = vec![0u32; vars];
        for _ in 0..total {
            let i = self.rng.gen_range(0..vars);
            e[i] += 1;
        }
        MultiIndex::new(e)
    }

    /// Nonzero polynomial of degree `≤ max_deg` with at most `max_terms` terms.
    pub fn polynomial(&mut self, vars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
        loop {
            let k = self.rng.gen_range(1..=max_terms);
            let mut p = Polynomial::zero(vars);
            for _ in 0..k {
                let e = self.multi_index(vars, 0, max_deg);
                let c = self.scalar();
                p = &p + &Polynomial::monomial(vars, c, e);
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Nonzero element of `D_poly^{arity, order}`: every slot order in `1..=order`,
    /// coefficient degree `≤ deg`, at most `max_terms` slot tuples.
    pub fn dpoly(
        &mut self,
        vars: usize,
        arity: usize,
        order: u32,
        deg: u32,
        max_terms: usize,
    ) -> MultiDiffOp {
        loop {
            let k = self.rng.gen_range(1..=max_terms);
            let mut terms = Vec::with_capacity(k);
            for _ in 0..k {
                let slots: SlotTuple = (0..arity)
                    .map(|_| self.multi_index(vars, 1, order))
                    .collect();
                let coeff = self.polynomial(vars, deg, 2);
                terms.push((slots, coeff));
            }
            let d = MultiDiffOp::from_terms(vars, arity, terms).unwrap();
            if !d.is_zero() {
                return d;
            }
        }
    }

    /// Arbitrary cochain: slots may carry `∂^0`, so it need not be constant-free.
    pub fn cochain(
        &mut self,
        vars: usize,
        arity: usize,
        order: u32,
        deg: u32,
        max_terms: usize,
    ) -> MultiDiffOp {
        loop {
            let k = self.rng.gen_range(1..=max_terms);
            let mut terms = Vec::with_capacity(k);
            for _ in 0..k {
                let slots: SlotTuple = (0..arity)
                    .map(|_| self.multi_index(vars, 0, order))
                    .collect();
                terms.push((slots, self.polynomial(vars, deg, 2)));
            }
            let d = MultiDiffOp::from_terms(vars, arity, terms).unwrap();
            if !d.is_zero() {
                return d;
            }
        }
    }

    pub fn vector_field(&mut self, vars: usize, deg: u32) -> VectorField {
        loop {
            let comps: Vec<Polynomial> = (0..vars)
                .map(|_| {
                    if self.rng.gen_bool(0.7) {
                        self.polynomial(vars, deg, 2)
                    } else {
                        Polynomial::zero(vars)
                    }
                })
                .collect();
            if comps.iter().any(|c| !c.is_zero()) {
                return VectorField::new(comps).unwrap();
            }
        }
    }

    pub fn word(&mut self, vars: usize, len: usize, deg: u32) -> CompositionWord {
        CompositionWord::new((0..len).map(|_| self.vector_field(vars, deg)).collect()).unwrap()
    }

    /// Nonzero multivector field of degree `1..=vars`.
    pub fn multivector(&mut self, vars: usize, degree: usize, deg: u32) -> MultiVectorField {
        assert!(degree >= 1 && degree <= vars);
        loop {
            let mut acc = MultiVectorField::zero(vars, degree);
            for _ in 0..self.rng.gen_range(1..=3) {
                let mut idx: Vec<usize> = (0..vars).collect();
                // partial Fisher-Yates for a random `degree`-subset in random order
                for i in 0..degree {
                    let j = self.rng.gen_range(i..vars);
                    idx.swap(i, j);
                }
                idx.truncate(degree);
                let c = self.polynomial(vars, deg, 2);
                acc = acc
                    .try_add(&MultiVectorField::wedge_of(c, &idx).unwrap())
                    .unwrap();
            }
            if !acc.is_zero() {
                return acc;
            }
        }
    }
}
