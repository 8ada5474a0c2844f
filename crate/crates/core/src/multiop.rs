//! Sparse multidifferential operators `Σ c(x) ∂^{α_1} ⊗ … ⊗ ∂^{α_n}`: the cochains.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::partial_compose;
use crate::poly::{write_signed_term, MultiIndex, PolyTermJson, Polynomial, Rational};

/// One multi-index per tensor slot.
pub type SlotTuple = Vec<MultiIndex>;

/// A single summand `coeff · ∂^{α_1} ⊗ … ⊗ ∂^{α_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub coeff: Polynomial,
    pub slots: SlotTuple,
}

/// An arity-`n` multidifferential operator on `Q[x1..xm]`.
///
/// Terms are keyed by slot tuple (lexicographic in the graded-lex order of each slot);
/// no zero coefficient is ever stored, so `==` is operator equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiDiffOp {
    vars: usize,
    arity: usize,
    terms: BTreeMap<SlotTuple, Polynomial>,
}

/// A degree-0 Hochschild cochain: an element of `A` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCochain {
    pub value: Polynomial,
}

/// Either piece of the complex `A ⊕ D_poly(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain {
    Scalar(ZeroCochain),
    Op(MultiDiffOp),
}

impl Cochain {
    pub fn arity(&self) -> usize {
        match self {
            Cochain::Scalar(_) => 0,
            Cochain::Op(d) => d.arity(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Cochain::Scalar(z) => z.value.is_zero(),
            Cochain::Op(d) => d.is_zero(),
        }
    }
}

impl MultiDiffOp {
    pub fn zero(vars: usize, arity: usize) -> Self {
        assert!(arity >= 1, "operators have arity >= 1");
        MultiDiffOp {
            vars,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// A single term; zero coefficients give the zero operator.
    pub fn from_term(coeff: Polynomial, slots: SlotTuple) -> Result<Self> {
        let vars = coeff.vars();
        if slots.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut d = MultiDiffOp::zero(vars, slots.len());
        d.check_slots(&slots)?;
        d.add_term(slots, &coeff);
        Ok(d)
    }

    pub fn from_terms<I>(vars: usize, arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SlotTuple, Polynomial)>,
    {
        let mut d = MultiDiffOp::zero(vars, arity);
        for (slots, c) in terms {
            d.check_slots(&slots)?;
            if c.vars() != vars {
                return Err(Error::VarMismatch {
                    left: vars,
                    right: c.vars(),
                });
            }
            d.add_term(slots, &c);
        }
        Ok(d)
    }

    /// The algebra product `μ(a ⊗ b) = ab`.
    pub fn mu(vars: usize) -> Self {
        let z = MultiIndex::zero(vars);
        Self::from_term(Polynomial::one(vars), vec![z.clone(), z]).unwrap()
    }

    /// `id_A`.
    pub fn identity(vars: usize) -> Self {
        Self::multiplication(Polynomial::one(vars))
    }

    /// Multiplication by a fixed polynomial, `b ↦ p b`.
    pub fn multiplication(p: Polynomial) -> Self {
        let z = MultiIndex::zero(p.vars());
        Self::from_term(p, vec![z]).unwrap()
    }

    /// `∂/∂x_{i+1}` as an arity-1 operator.
    pub fn partial(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::VarIndexOutOfRange { index: i, vars });
        }
        Self::from_term(Polynomial::one(vars), vec![MultiIndex::unit(vars, i)])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored slot tuples.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order of slot tuples.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SlotTuple, &Polynomial)> {
        self.terms.iter()
    }

    pub fn op_terms(&self) -> Vec<OpTerm> {
        self.terms
            .iter()
            .map(|(s, c)| OpTerm {
                coeff: c.clone(),
                slots: s.clone(),
            })
            .collect()
    }

    pub fn coefficient(&self, slots: &SlotTuple) -> Polynomial {
        self.terms
            .get(slots)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.vars))
    }

    fn check_slots(&self, slots: &SlotTuple) -> Result<()> {
        if slots.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: slots.len(),
            });
        }
        if let Some(bad) = slots.iter().find(|s| s.vars() != self.vars) {
            return Err(Error::LengthMismatch {
                expected: self.vars,
                found: bad.vars(),
            });
        }
        Ok(())
    }

    /// Adds `coeff` to the coefficient of `slots`, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, slots: SlotTuple, coeff: &Polynomial) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(slots.len(), self.arity);
        match self.terms.entry(slots) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiDiffOp) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    /// `Σ_terms coeff · Π_j ∂^{α_j}(args_j)`.
    pub fn apply(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.vars() != self.vars) {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: a.vars(),
            });
        }
        let mut acc = Polynomial::zero(self.vars);
        for (slots, c) in &self.terms {
            let mut t = c.clone();
            for (alpha, a) in slots.iter().zip(args) {
                t = &t * &a.partial_multi(alpha)?;
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn try_add(&self, other: &MultiDiffOp) -> Result<MultiDiffOp> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiDiffOp {
        let mut out = MultiDiffOp::zero(self.vars, self.arity);
        if c.is_zero() {
            return out;
        }
        for (s, p) in &self.terms {
            out.terms.insert(s.clone(), p.scale(c));
        }
        out
    }

    /// Left multiplication of every coefficient by `p`.
    pub fn mul_coeff(&self, p: &Polynomial) -> Result<MultiDiffOp> {
        if p.vars() != self.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: p.vars(),
            });
        }
        let mut out = MultiDiffOp::zero(self.vars, self.arity);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &(c * p));
        }
        Ok(out)
    }

    /// Per-slot order: the largest `|α_j|` over all terms and slots.
    pub fn syntactic_order(&self) -> Result<u32> {
        self.terms
            .keys()
            .flat_map(|s| s.iter().map(MultiIndex::total))
            .max()
            .ok_or(Error::ZeroOperator)
    }

    /// Smallest `|α_j|` over all terms and slots; `None` for the zero operator.
    pub fn min_slot_order(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|s| s.iter().map(MultiIndex::total))
            .min()
    }

    /// Largest total degree of any coefficient; `None` for the zero operator.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::degree).max()
    }

    /// Recursive commutator test for arity-1 operators.
    ///
    /// Order 0 means multiplication by a polynomial; order `≤ r` means every commutator
    /// `b ↦ D(x_i b) − x_i D(b)` has order `≤ r − 1`. Commutators with the generators
    /// suffice since `[D, L_{ab}] = L_a [D, L_b] + [D, L_a] L_b`.
    pub fn is_diff_op_of_order_at_most(&self, r: u32) -> Result<bool> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: self.arity,
            });
        }
        Ok(self.order_test(r))
    }

    fn order_test(&self, r: u32) -> bool {
        if self.is_zero() {
            return true;
        }
        if r == 0 {
            return self.terms.keys().all(|s| s[0].is_zero());
        }
        (0..self.vars).all(|i| {
            let xi = Polynomial::variable(self.vars, i).unwrap();
            let after = partial_compose(self, 0, &MultiDiffOp::multiplication(xi.clone()))
                .expect("arity-1 composition");
            let before = self.mul_coeff(&xi).unwrap();
            (&after - &before).order_test(r - 1)
        })
    }

    /// True iff every slot of every term carries at least one derivative, i.e. the
    /// operator vanishes as soon as any argument is a constant.
    pub fn vanishes_on_constants(&self) -> bool {
        self.terms.keys().all(|s| s.iter().all(|a| !a.is_zero()))
    }

    /// Slot permutation: result slot `k` carries the input's slot `perm[k]`.
    pub fn permute_slots(&self, perm: &[usize]) -> MultiDiffOp {
        assert_eq!(perm.len(), self.arity);
        let mut out = MultiDiffOp::zero(self.vars, self.arity);
        for (s, c) in &self.terms {
            let t: SlotTuple = perm.iter().map(|&k| s[k].clone()).collect();
            out.add_term(t, c);
        }
        out
    }
}

impl Add for &MultiDiffOp {
    type Output = MultiDiffOp;
    /// Panics on mismatched arity or variable count; see [`MultiDiffOp::try_add`].
    fn add(self, rhs: &MultiDiffOp) -> MultiDiffOp {
        self.try_add(rhs).expect("operator arity/variable mismatch")
    }
}

impl Sub for &MultiDiffOp {
    type Output = MultiDiffOp;
    fn sub(self, rhs: &MultiDiffOp) -> MultiDiffOp {
        self + &(-rhs)
    }
}

impl Neg for &MultiDiffOp {
    type Output = MultiDiffOp;
    fn neg(self) -> MultiDiffOp {
        self.scale(&-Rational::one())
    }
}

pub(crate) fn format_slots(slots: &[MultiIndex]) -> String {
    let groups: Vec<String> = slots
        .iter()
        .map(|a| {
            a.exponents()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("D[{}]", groups.join("|"))
}

impl fmt::Display for MultiDiffOp {
    /// Expanded canonical text: one `c*x^γ*D[...]` summand per (slot tuple, monomial),
    /// slot tuples and monomials both in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (slots, coeff) in self.terms.iter().rev() {
            let d = format_slots(slots);
            for (e, c) in coeff.terms().rev() {
                write_signed_term(f, first, c, e, &d)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTermJson {
    pub coeff: Vec<PolyTermJson>,
    pub slots: Vec<Vec<u32>>,
}

/// Operator wire form `{vars, arity, terms: [{coeff, slots}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpJson {
    pub vars: usize,
    pub arity: usize,
    pub terms: Vec<OpTermJson>,
}

impl MultiDiffOp {
    pub fn to_json(&self) -> OpJson {
        OpJson {
            vars: self.vars,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(s, c)| OpTermJson {
                    coeff: c.to_json(),
                    slots: s.iter().map(|a| a.exponents().to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &OpJson) -> Result<MultiDiffOp> {
        if j.arity == 0 {
            return Err(Error::Malformed("operator arity must be at least 1".into()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let slots = t.slots.iter().map(|s| MultiIndex::new(s.clone())).collect();
            terms.push((slots, Polynomial::from_json(j.vars, &t.coeff)?));
        }
        MultiDiffOp::from_terms(j.vars, j.arity, terms)
    }
}
