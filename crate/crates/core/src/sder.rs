//! Iterated derivations: composites of vector fields and the order filtration.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::partial_compose;
use crate::multiop::MultiDiffOp;
use crate::poly::{
    format_rational, parse_rational, MultiIndex, PolyTermJson, Polynomial, Rational,
};

/// `Σ_i c_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let vars = components.len();
        if let Some(c) = components.iter().find(|c| c.vars() != vars) {
            return Err(Error::VarMismatch {
                left: vars,
                right: c.vars(),
            });
        }
        Ok(VectorField { components })
    }

    /// `c · ∂_{i+1}`.
    pub fn coordinate(c: Polynomial, i: usize) -> Result<Self> {
        let vars = c.vars();
        if i >= vars {
            return Err(Error::VarIndexOutOfRange { index: i, vars });
        }
        let mut components = vec![Polynomial::zero(vars); vars];
        components[i] = c;
        Ok(VectorField { components })
    }

    pub fn vars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn to_op(&self) -> MultiDiffOp {
        let vars = self.vars();
        MultiDiffOp::from_terms(
            vars,
            1,
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![MultiIndex::unit(vars, i)], c.clone())),
        )
        .expect("components share the variable count")
    }

    /// Inverse of [`VectorField::to_op`] on order-1 constant-free operators.
    pub fn from_op(d: &MultiDiffOp) -> Option<Self> {
        if d.arity() != 1 {
            return None;
        }
        let vars = d.vars();
        let mut components = vec![Polynomial::zero(vars); vars];
        for (slots, c) in d.terms() {
            components[slots[0].as_unit()?] = c.clone();
        }
        Some(VectorField { components })
    }
}

/// `X_1 ∘ X_2 ∘ … ∘ X_k`; the first factor is applied last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionWord {
    factors: Vec<VectorField>,
}

impl CompositionWord {
    pub fn new(factors: Vec<VectorField>) -> Result<Self> {
        let first = factors.first().ok_or_else(|| {
            Error::Malformed("a composition word needs at least one factor".into())
        })?;
        let vars = first.vars();
        if let Some(f) = factors.iter().find(|f| f.vars() != vars) {
            return Err(Error::VarMismatch {
                left: vars,
                right: f.vars(),
            });
        }
        Ok(CompositionWord { factors })
    }

    pub fn factors(&self) -> &[VectorField] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDerDecomposition {
    pub order: u32,
    pub words: Vec<(Rational, CompositionWord)>,
}

impl SDerDecomposition {
    /// `Σ scalar · expand_word(word)`.
    pub fn expand(&self, vars: usize) -> MultiDiffOp {
        self.words
            .iter()
            .fold(MultiDiffOp::zero(vars, 1), |acc, (s, w)| {
                &acc + &expand_word(w).scale(s)
            })
    }
}

/// The functional composite of a word, by repeated partial composition.
pub fn expand_word(w: &CompositionWord) -> MultiDiffOp {
    let mut iter = w.factors.iter().rev();
    let mut acc = iter.next().expect("non-empty word").to_op();
    for f in iter {
        acc = partial_compose(&f.to_op(), 0, &acc).expect("same variable count");
    }
    acc
}

/// A length-`n` word is a derivation of order `≤ n`: constant-free and passing the
/// recursive commutator test.
pub fn word_order_check(w: &CompositionWord) -> bool {
    let d = expand_word(w);
    d.vanishes_on_constants() && d.is_diff_op_of_order_at_most(w.len() as u32).unwrap()
}

/// Rewrites a constant-free arity-1 operator of order `≤ r` as a sum of composition
/// words of length `≤ r`.
///
/// Each canonical term `c·∂^α` becomes `[c∂_{i_1}, ∂_{i_2}, …, ∂_{i_k}]` with
/// `i_1 ≤ … ≤ i_k`. The coefficient rides on the outermost factor so the inner,
/// constant-coefficient factors compose without Leibniz cross terms.
pub fn sder_decompose(d: &MultiDiffOp, r: u32) -> Result<SDerDecomposition> {
    if d.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: d.arity(),
        });
    }
    if !d.vanishes_on_constants() {
        return Err(Error::NotConstantFree);
    }
    if let Ok(order) = d.syntactic_order() {
        if order > r {
            return Err(Error::OrderExceeded {
                order: order as usize,
                bound: r as usize,
            });
        }
    }
    let vars = d.vars();
    let mut words = Vec::with_capacity(d.len());
    for (slots, c) in d.terms() {
        let indices: Vec<usize> = slots[0]
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let mut factors = Vec::with_capacity(indices.len());
        factors.push(VectorField::coordinate(c.clone(), indices[0])?);
        for &i in &indices[1..] {
            factors.push(VectorField::coordinate(Polynomial::one(vars), i)?);
        }
        words.push((Rational::one(), CompositionWord::new(factors)?));
    }
    Ok(SDerDecomposition { order: r, words })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub scalar: String,
    /// One entry per factor, each the list of its `m` component polynomials.
    pub factors: Vec<Vec<Vec<PolyTermJson>>>,
}

/// Decomposition wire form `{order, words: [{scalar, factors}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub order: u32,
    pub words: Vec<WordJson>,
}

impl SDerDecomposition {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            order: self.order,
            words: self
                .words
                .iter()
                .map(|(s, w)| WordJson {
                    scalar: format_rational(s),
                    factors: w
                        .factors
                        .iter()
                        .map(|f| f.components.iter().map(Polynomial::to_json).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(vars: usize, j: &DecompositionJson) -> Result<Self> {
        let mut words = Vec::with_capacity(j.words.len());
        for w in &j.words {
            let factors = w
                .factors
                .iter()
                .map(|f| {
                    let comps = f
                        .iter()
                        .map(|c| Polynomial::from_json(vars, c))
                        .collect::<Result<Vec<_>>>()?;
                    if comps.len() != vars {
                        return Err(Error::LengthMismatch {
                            expected: vars,
                            found: comps.len(),
                        });
                    }
                    VectorField::new(comps)
                })
                .collect::<Result<Vec<_>>>()?;
            words.push((parse_rational(&w.scalar)?, CompositionWord::new(factors)?));
        }
        Ok(SDerDecomposition {
            order: j.order,
            words,
        })
    }
}
