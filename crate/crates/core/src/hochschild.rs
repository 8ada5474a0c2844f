//! Gerstenhaber operations and the Hochschild differential, in closed form on the
//! sparse operator representation.
//!
//! Sign exponents use reduced degree (`arity − 1`) throughout, and slot indices are
//! 0-based: `partial_compose(f, 0, g)` is `f ∘₁ g`.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::multiop::{Cochain, MultiDiffOp, SlotTuple};
use crate::poly::{multi_index_split_coeff, splittings, MultiIndex, Polynomial, Rational};

/// Sign prefactor of the cup product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignConvention {
    /// `f ⌣ g = (−1)^{arity(f)·arity(g)} μ ∘ (f ⊗ g)`.
    PaperSigned,
    /// `f ⌣ g = μ ∘ (f ⊗ g)`.
    #[default]
    Unsigned,
}

fn sign(exp: usize) -> Rational {
    if exp.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn same_vars(f: &MultiDiffOp, g: &MultiDiffOp) -> Result<()> {
    if f.vars() != g.vars() {
        return Err(Error::VarMismatch {
            left: f.vars(),
            right: g.vars(),
        });
    }
    Ok(())
}

/// `f ∘_{i+1} g = f(id^{⊗i} ⊗ g ⊗ id^{⊗…})`.
///
/// The derivative `∂^α` sitting in slot `i` of `f` is distributed over the coefficient
/// of `g` and each of `g`'s outputs by the generalized Leibniz rule.
pub fn partial_compose(f: &MultiDiffOp, i: usize, g: &MultiDiffOp) -> Result<MultiDiffOp> {
    same_vars(f, g)?;
    if i >= f.arity() {
        return Err(Error::SlotOutOfRange {
            slot: i,
            arity: f.arity(),
        });
    }
    let k = g.arity();
    let mut out = MultiDiffOp::zero(f.vars(), f.arity() + k - 1);
    // ∂^β(coeff of g), memoized per (g term, β)
    let mut derived: HashMap<(usize, MultiIndex), Polynomial> = HashMap::new();
    let g_terms: Vec<(&SlotTuple, &Polynomial)> = g.terms().collect();
    for (fs, fc) in f.terms() {
        let alpha = &fs[i];
        let splits = splittings(alpha, k + 1);
        for (gi, (gs, gc)) in g_terms.iter().enumerate() {
            for parts in &splits {
                let dc = derived
                    .entry((gi, parts[0].clone()))
                    .or_insert_with(|| gc.partial_multi(&parts[0]).unwrap());
                if dc.is_zero() {
                    continue;
                }
                let mult = multi_index_split_coeff(alpha, parts)?;
                let coeff = (fc * &*dc).scale(&mult);
                let mut slots: SlotTuple = Vec::with_capacity(out.arity());
                slots.extend(fs[..i].iter().cloned());
                slots.extend(gs.iter().zip(&parts[1..]).map(|(b, p)| b.add(p)));
                slots.extend(fs[i + 1..].iter().cloned());
                out.add_term(slots, &coeff);
            }
        }
    }
    Ok(out)
}

/// `f ∘ g = Σ_i (−1)^{n(i+1)} f ∘_i g` with `n = arity(g) − 1` and `i` 1-based.
pub fn total_compose(f: &MultiDiffOp, g: &MultiDiffOp) -> Result<MultiDiffOp> {
    same_vars(f, g)?;
    let n = g.arity() - 1;
    let mut out = MultiDiffOp::zero(f.vars(), f.arity() + g.arity() - 1);
    for i in 0..f.arity() {
        let term = partial_compose(f, i, g)?;
        out = &out + &term.scale(&sign(n * i));
    }
    Ok(out)
}

/// Cup product: slot tuples concatenate, coefficients multiply.
pub fn cup(f: &MultiDiffOp, g: &MultiDiffOp, conv: SignConvention) -> Result<MultiDiffOp> {
    same_vars(f, g)?;
    let mut out = MultiDiffOp::zero(f.vars(), f.arity() + g.arity());
    for (fs, fc) in f.terms() {
        for (gs, gc) in g.terms() {
            let slots: SlotTuple = fs.iter().chain(gs.iter()).cloned().collect();
            out.add_term(slots, &(fc * gc));
        }
    }
    Ok(match conv {
        SignConvention::Unsigned => out,
        SignConvention::PaperSigned => out.scale(&sign(f.arity() * g.arity())),
    })
}

/// `⟦f, g⟧ = f ∘ g − (−1)^{mn} g ∘ f` with reduced degrees `m`, `n`.
pub fn gerstenhaber(f: &MultiDiffOp, g: &MultiDiffOp) -> Result<MultiDiffOp> {
    let m = f.arity() - 1;
    let n = g.arity() - 1;
    let fg = total_compose(f, g)?;
    let gf = total_compose(g, f)?;
    Ok(&fg - &gf.scale(&sign(m * n)))
}

/// The Hochschild differential, expanded term by term:
///
/// `(δf)(a_0,…,a_n) = a_0 f(a_1,…) + Σ_j (−1)^{j+1} f(…, a_j a_{j+1}, …) + (−1)^{n+1} f(a_0,…,a_{n−1}) a_n`.
///
/// A merged slot `∂^α(a_j a_{j+1})` becomes `Σ_{β+γ=α} C · ∂^β ⊗ ∂^γ`. Boundary terms
/// are emitted unconditionally and cancel exactly on constant-free inputs.
pub fn hochschild_delta(f: &MultiDiffOp) -> MultiDiffOp {
    let vars = f.vars();
    let n = f.arity();
    let zero = MultiIndex::zero(vars);
    let mut out = MultiDiffOp::zero(vars, n + 1);
    for (slots, c) in f.terms() {
        let mut left: SlotTuple = Vec::with_capacity(n + 1);
        left.push(zero.clone());
        left.extend(slots.iter().cloned());
        out.add_term(left, c);

        for j in 0..n {
            let s = sign(j + 1);
            for parts in splittings(&slots[j], 2) {
                let mult = multi_index_split_coeff(&slots[j], &parts).unwrap();
                let mut merged: SlotTuple = Vec::with_capacity(n + 1);
                merged.extend(slots[..j].iter().cloned());
                merged.extend(parts);
                merged.extend(slots[j + 1..].iter().cloned());
                out.add_term(merged, &c.scale(&(&s * &mult)));
            }
        }

        let mut right = slots.clone();
        right.push(zero.clone());
        out.add_term(right, &c.scale(&sign(n + 1)));
    }
    out
}

/// `δ_H` on either piece of `A ⊕ D_poly(A)`. On `A` it is zero since `A` is commutative.
pub fn hochschild_delta_cochain(c: &Cochain) -> MultiDiffOp {
    match c {
        Cochain::Scalar(z) => MultiDiffOp::zero(z.value.vars(), 1),
        Cochain::Op(d) => hochschild_delta(d),
    }
}

/// `δ_H(f) = (−1)^m ⟦μ, f⟧` with `m = arity(f) − 1`; must agree with [`hochschild_delta`].
pub fn hochschild_delta_via_bracket(f: &MultiDiffOp) -> MultiDiffOp {
    let mu = MultiDiffOp::mu(f.vars());
    gerstenhaber(&mu, f)
        .expect("same variable count")
        .scale(&sign(f.arity() - 1))
}

/// `(½⟦ν,ν⟧, ν∘₁ν − ν∘₂ν)`; both vanish exactly when `ν` is associative.
pub fn associativity_defect(nu: &MultiDiffOp) -> Result<(MultiDiffOp, MultiDiffOp)> {
    if nu.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: nu.arity(),
        });
    }
    let half = Rational::new(1.into(), 2.into());
    let bracket = gerstenhaber(nu, nu)?.scale(&half);
    let direct = &partial_compose(nu, 0, nu)? - &partial_compose(nu, 1, nu)?;
    Ok((bracket, direct))
}
