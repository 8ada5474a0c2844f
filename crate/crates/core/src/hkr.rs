//! Alternator, multivector fields, the HKR map, cocycle splitting and exact
//! cohomology of truncated polydifferential complexes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::hochschild_delta;
use crate::linalg::{ExactMatrix, SparseVec};
use crate::multiop::{Cochain, MultiDiffOp, SlotTuple, ZeroCochain};
use crate::poly::{write_signed_term, MultiIndex, PolyTermJson, Polynomial, Rational};

/// All permutations of `0..n` with their parity (true = odd).
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let odd = inversions(&p) % 2 == 1;
            (p, odd)
        })
        .collect()
}

fn inversions(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k)))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `(1/n!) Σ_σ ε(σ) D∘σ`, permuting the slots of every term.
pub fn alt(d: &MultiDiffOp) -> MultiDiffOp {
    let n = d.arity();
    let mut out = MultiDiffOp::zero(d.vars(), n);
    for (perm, odd) in permutations(n) {
        let p = d.permute_slots(&perm);
        out = if odd { &out - &p } else { &out + &p };
    }
    out.scale(&(Rational::one() / factorial(n)))
}

/// `Σ_I c_I ∂_{i_1} ∧ … ∧ ∂_{i_n}` over strictly increasing 0-based index tuples `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVectorField {
    vars: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, Polynomial>,
}

impl MultiVectorField {
    pub fn zero(vars: usize, degree: usize) -> Self {
        MultiVectorField {
            vars,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// `c · ∂_{i_1} ∧ … ∧ ∂_{i_n}` for arbitrary (not necessarily sorted) indices.
    pub fn wedge_of(c: Polynomial, indices: &[usize]) -> Result<Self> {
        let vars = c.vars();
        if let Some(&i) = indices.iter().find(|&&i| i >= vars) {
            return Err(Error::VarIndexOutOfRange { index: i, vars });
        }
        let mut out = MultiVectorField::zero(vars, indices.len());
        out.add_component(indices.to_vec(), &c);
        Ok(out)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, indices: &[usize]) -> Polynomial {
        self.components
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.vars))
    }

    /// Adds `c` at `indices`, sorting them with the permutation sign; repeated
    /// indices contribute nothing.
    fn add_component(&mut self, mut indices: Vec<usize>, c: &Polynomial) {
        debug_assert_eq!(indices.len(), self.degree);
        let mut odd = false;
        for i in 0..indices.len() {
            for j in 0..indices.len() - 1 - i {
                if indices[j] > indices[j + 1] {
                    indices.swap(j, j + 1);
                    odd = !odd;
                }
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) || c.is_zero() {
            return;
        }
        let c = if odd { -c } else { c.clone() };
        let sum = &self.component(&indices) + &c;
        if sum.is_zero() {
            self.components.remove(&indices);
        } else {
            self.components.insert(indices, sum);
        }
    }

    pub fn try_add(&self, other: &MultiVectorField) -> Result<MultiVectorField> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        if self.degree != other.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (i, c) in &other.components {
            out.add_component(i.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiVectorField {
        let mut out = MultiVectorField::zero(self.vars, self.degree);
        if !c.is_zero() {
            for (i, p) in &self.components {
                out.components.insert(i.clone(), p.scale(c));
            }
        }
        out
    }

    pub fn coefficient_degree(&self) -> Option<u32> {
        self.components
            .values()
            .filter_map(Polynomial::degree)
            .max()
    }
}

impl fmt::Display for MultiVectorField {
    /// `c*x^γ*W[i1,…,in]` summands with 1-based indices; `W[]` marks degree 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (idx, c) in self.components.iter().rev() {
            let tag = format!(
                "W[{}]",
                idx.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for (e, v) in c.terms().rev() {
                write_signed_term(f, first, v, e, &tag)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Exterior product with shuffle signs.
pub fn wedge(eta: &MultiVectorField, theta: &MultiVectorField) -> Result<MultiVectorField> {
    if eta.vars != theta.vars {
        return Err(Error::VarMismatch {
            left: eta.vars,
            right: theta.vars,
        });
    }
    let mut out = MultiVectorField::zero(eta.vars, eta.degree + theta.degree);
    for (i, a) in &eta.components {
        for (k, b) in &theta.components {
            let idx: Vec<usize> = i.iter().chain(k).copied().collect();
            out.add_component(idx, &(a * b));
        }
    }
    Ok(out)
}

/// `ψ(X_1 ∧ … ∧ X_n) = Alt(X_1 ⌣ … ⌣ X_n)` with the unsigned cup.
pub fn mvf_to_op(eta: &MultiVectorField) -> Result<MultiDiffOp> {
    if eta.degree == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    let vars = eta.vars;
    let tensor = MultiDiffOp::from_terms(
        vars,
        eta.degree,
        eta.components.iter().map(|(idx, c)| {
            let slots: SlotTuple = idx.iter().map(|&i| MultiIndex::unit(vars, i)).collect();
            (slots, c.clone())
        }),
    )?;
    Ok(alt(&tensor))
}

/// `J_n(D)`: alternate, then read off the part with every slot of order one.
///
/// The alternated coefficient of `∂_{i_1} ⊗ … ⊗ ∂_{i_n}` (increasing) is `1/n!` times
/// the wedge component, so components are scaled back by `n!`.
pub fn op_to_mvf(d: &MultiDiffOp) -> MultiVectorField {
    let n = d.arity();
    let a = alt(d);
    let nf = factorial(n);
    let mut out = MultiVectorField::zero(d.vars(), n);
    for (slots, c) in a.terms() {
        let Some(idx) = slots
            .iter()
            .map(MultiIndex::as_unit)
            .collect::<Option<Vec<usize>>>()
        else {
            continue;
        };
        if idx.windows(2).all(|w| w[0] < w[1]) {
            out.components.insert(idx, c.scale(&nf));
        }
    }
    out
}

/// Multivector wire form `{vars, degree, components: [{indices (1-based), coeff}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvfJson {
    pub vars: usize,
    pub degree: usize,
    pub components: Vec<MvfComponentWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvfComponentWire {
    pub indices: Vec<usize>,
    pub coeff: Vec<PolyTermJson>,
}

impl MultiVectorField {
    pub fn to_json(&self) -> MvfJson {
        MvfJson {
            vars: self.vars,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(i, c)| MvfComponentWire {
                    indices: i.iter().map(|k| k + 1).collect(),
                    coeff: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MvfJson) -> Result<Self> {
        let mut out = MultiVectorField::zero(j.vars, j.degree);
        for c in &j.components {
            if c.indices.len() != j.degree || c.indices.iter().any(|&i| i == 0 || i > j.vars) {
                return Err(Error::Malformed("bad multivector index tuple".into()));
            }
            let p = Polynomial::from_json(j.vars, &c.coeff)?;
            out.add_component(c.indices.iter().map(|i| i - 1).collect(), &p);
        }
        Ok(out)
    }
}

/// Finite window onto `D_poly^{n,r}`: arity `n`, per-slot order in `1..=r`, coefficient
/// degree `≤ d`. Arity 0 is the window of polynomials of degree `≤ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub vars: usize,
    pub arity: usize,
    pub max_slot_order: u32,
    pub max_coeff_degree: u32,
}

impl Truncation {
    pub fn new(vars: usize, arity: usize, max_slot_order: u32, max_coeff_degree: u32) -> Self {
        Truncation {
            vars,
            arity,
            max_slot_order,
            max_coeff_degree,
        }
    }

    /// Closed-form basis size, used as an independent count.
    pub fn dimension(&self) -> usize {
        let m = self.vars as u64;
        let monomials = binomial(m + self.max_coeff_degree as u64, m);
        let per_slot = binomial(m + self.max_slot_order as u64, m) - 1;
        (monomials * per_slot.pow(self.arity as u32)) as usize
    }

    pub fn contains(&self, d: &MultiDiffOp) -> bool {
        d.vars() == self.vars
            && d.arity() == self.arity
            && d.terms().all(|(slots, c)| {
                slots
                    .iter()
                    .all(|a| (1..=self.max_slot_order).contains(&a.total()))
                    && c.degree().unwrap_or(0) <= self.max_coeff_degree
            })
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={}, n={}, r={}, d={})",
            self.vars, self.arity, self.max_slot_order, self.max_coeff_degree
        )
    }
}

/// Basis keys `(slot tuple, monomial exponent)` in canonical order, with a reverse index.
struct WindowIndex {
    keys: Vec<(SlotTuple, MultiIndex)>,
    index: HashMap<(SlotTuple, MultiIndex), usize>,
}

impl WindowIndex {
    fn new(t: &Truncation) -> Self {
        let monomials = MultiIndex::all_with_total(t.vars, 0, t.max_coeff_degree);
        let slot_choices = MultiIndex::all_with_total(t.vars, 1, t.max_slot_order);
        let mut tuples: Vec<SlotTuple> = vec![Vec::new()];
        for _ in 0..t.arity {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    slot_choices.iter().map(move |a| {
                        let mut p = prefix.clone();
                        p.push(a.clone());
                        p
                    })
                })
                .collect();
        }
        let mut keys: Vec<(SlotTuple, MultiIndex)> = tuples
            .into_iter()
            .flat_map(|s| monomials.iter().map(move |g| (s.clone(), g.clone())))
            .collect();
        keys.sort();
        let index = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        WindowIndex { keys, index }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn element(&self, i: usize, vars: usize) -> MultiDiffOp {
        let (slots, g) = &self.keys[i];
        MultiDiffOp::from_term(
            Polynomial::monomial(vars, Rational::one(), g.clone()),
            slots.clone(),
        )
        .unwrap()
    }

    fn coordinates(&self, d: &MultiDiffOp) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (slots, c) in d.terms() {
            for (g, x) in c.terms() {
                let &i = self.index.get(&(slots.clone(), g.clone()))?;
                v.insert(i, x.clone());
            }
        }
        Some(v)
    }

    fn combine(&self, x: &[Rational], vars: usize, arity: usize) -> MultiDiffOp {
        let mut out = MultiDiffOp::zero(vars, arity);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let (slots, g) = &self.keys[i];
                out.add_term(
                    slots.clone(),
                    &Polynomial::monomial(vars, c.clone(), g.clone()),
                );
            }
        }
        out
    }
}

/// Every `x^γ ∂^{α_1} ⊗ … ⊗ ∂^{α_n}` of the window in canonical order; for arity 0 the
/// monomials `x^γ` with `|γ| ≤ d`.
pub fn enumerate_basis(t: &Truncation) -> Vec<Cochain> {
    if t.arity == 0 {
        return MultiIndex::all_with_total(t.vars, 0, t.max_coeff_degree)
            .into_iter()
            .map(|g| {
                Cochain::Scalar(ZeroCochain {
                    value: Polynomial::monomial(t.vars, Rational::one(), g),
                })
            })
            .collect();
    }
    let w = WindowIndex::new(t);
    (0..w.len())
        .map(|i| Cochain::Op(w.element(i, t.vars)))
        .collect()
}

fn basis_len(t: &Truncation) -> usize {
    if t.arity == 0 {
        binomial(t.vars as u64 + t.max_coeff_degree as u64, t.vars as u64) as usize
    } else {
        WindowIndex::new(t).len()
    }
}

/// Matrix of `δ_H` from the `src` window into the `dst` window (arity `src.arity + 1`).
pub fn delta_matrix_between(src: &Truncation, dst: &Truncation) -> Result<ExactMatrix> {
    assert_eq!(dst.arity, src.arity + 1, "δ raises arity by one");
    let out_index = WindowIndex::new(dst);
    if src.arity == 0 {
        return Ok(ExactMatrix::zeros(out_index.len(), basis_len(src)));
    }
    let in_index = WindowIndex::new(src);
    let columns = (0..in_index.len())
        .into_par_iter()
        .map(|i| {
            let image = hochschild_delta(&in_index.element(i, src.vars));
            out_index
                .coordinates(&image)
                .ok_or_else(|| Error::OutsideWindow {
                    window: dst.to_string(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_columns(out_index.len(), columns))
}

/// Matrix of `δ_H` from window `t` to the window with arity `n + 1` and the same bounds.
pub fn delta_matrix(t: &Truncation) -> Result<ExactMatrix> {
    let dst = Truncation {
        arity: t.arity + 1,
        ..*t
    };
    delta_matrix_between(t, &dst)
}

/// `dim Z^n − dim B^n` for `n = 0..=n_max` on the window `(n, r, d)`.
///
/// `B^n` is the image of `δ` from the larger window `(n−1, r+1, d+slack)`, intersected
/// with the span of `(n, r, d)`.
pub fn cohomology_dims(
    vars: usize,
    r: u32,
    d: u32,
    n_max: usize,
    slack: u32,
) -> Result<Vec<usize>> {
    (0..=n_max)
        .map(|n| cohomology_dim(vars, r, d, n, slack))
        .collect()
}

fn cohomology_dim(vars: usize, r: u32, d: u32, n: usize, slack: u32) -> Result<usize> {
    let t = Truncation::new(vars, n, r, d);
    let size = basis_len(&t);
    let cocycles = size - delta_matrix(&t)?.rank();
    if n <= 1 {
        // δ out of A vanishes, so there are no coboundaries in degrees 0 and 1
        return Ok(cocycles);
    }
    let src = Truncation::new(vars, n - 1, r + 1, d + slack);
    let dst = Truncation::new(vars, n, r + 1, d + slack);
    let image = delta_matrix_between(&src, &dst)?;
    let dst_index = WindowIndex::new(&dst);
    let small = WindowIndex::new(&t);
    let inside: Vec<bool> = dst_index
        .keys
        .iter()
        .map(|k| small.index.contains_key(k))
        .collect();
    // dim(U ∩ W) for a coordinate subspace W: rank(U) − rank(U projected off W)
    let boundaries = image.rank() - image.select_rows(|row| !inside[row]).rank();
    Ok(cocycles - boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub m: usize,
    pub n: usize,
    pub r: u32,
    pub d: u32,
    pub slack: u32,
}

/// `{window, dims, basis_sizes, hkr_prediction, match}` with
/// `hkr_prediction[n] = C(m,n)·C(m+d,d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub window: WindowJson,
    pub dims: Vec<usize>,
    pub basis_sizes: Vec<usize>,
    pub hkr_prediction: Vec<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn hkr_prediction(vars: usize, d: u32, n_max: usize) -> Vec<usize> {
    let m = vars as u64;
    (0..=n_max)
        .map(|n| (binomial(m, n as u64) * binomial(m + d as u64, d as u64)) as usize)
        .collect()
}

pub fn cohomology_report(
    vars: usize,
    r: u32,
    d: u32,
    n_max: usize,
    slack: u32,
) -> Result<CohomologyReport> {
    let dims = cohomology_dims(vars, r, d, n_max, slack)?;
    let basis_sizes = (0..=n_max)
        .map(|n| basis_len(&Truncation::new(vars, n, r, d)))
        .collect();
    let hkr_prediction = hkr_prediction(vars, d, n_max);
    Ok(CohomologyReport {
        window: WindowJson {
            m: vars,
            n: n_max,
            r,
            d,
            slack,
        },
        matches: dims == hkr_prediction,
        dims,
        basis_sizes,
        hkr_prediction,
    })
}

/// Raises the slack from `slack` to `max_slack` until the prediction is met. Returns
/// every report computed; the last one is the first match, or the `max_slack` miss.
pub fn cohomology_until_stable(
    vars: usize,
    r: u32,
    d: u32,
    n_max: usize,
    slack: u32,
    max_slack: u32,
) -> Result<Vec<CohomologyReport>> {
    let mut reports = Vec::new();
    for s in slack..=max_slack.max(slack) {
        let rep = cohomology_report(vars, r, d, n_max, s)?;
        let done = rep.matches;
        reports.push(rep);
        if done {
            break;
        }
    }
    Ok(reports)
}

/// `D = δ_H(E) + ψ(η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSplit {
    pub primitive: Cochain,
    pub field: MultiVectorField,
}

/// Splits a cocycle `D` in window `t` as `δ_H(E) + ψ(η)`.
///
/// `η = J(D)` is forced because `Alt` kills coboundaries and fixes `ψ(η)`; `E` is an
/// exact solution of `δ_H(E) = D − ψ(η)` over the window `(n−1, r+1, d+slack)`.
pub fn split_cocycle(d: &MultiDiffOp, t: &Truncation, slack: u32) -> Result<CocycleSplit> {
    if d.arity() != t.arity {
        return Err(Error::ArityMismatch {
            expected: t.arity,
            found: d.arity(),
        });
    }
    if !t.contains(d) {
        return Err(Error::OutsideWindow {
            window: t.to_string(),
        });
    }
    if !hochschild_delta(d).is_zero() {
        return Err(Error::NotCocycle);
    }
    let field = op_to_mvf(d);
    let rest = d - &mvf_to_op(&field)?;
    let n = d.arity();
    let src = Truncation::new(
        t.vars,
        n - 1,
        t.max_slot_order + 1,
        t.max_coeff_degree + slack,
    );
    if n == 1 {
        // only δ(A) = 0 is available
        if !rest.is_zero() {
            return Err(Error::NoSolution {
                window: src.to_string(),
            });
        }
        return Ok(CocycleSplit {
            primitive: Cochain::Scalar(ZeroCochain {
                value: Polynomial::zero(t.vars),
            }),
            field,
        });
    }
    let dst = Truncation { arity: n, ..src };
    let matrix = delta_matrix_between(&src, &dst)?;
    let rhs = WindowIndex::new(&dst)
        .coordinates(&rest)
        .expect("the input window lies inside the target window");
    let x = matrix.solve(&rhs).ok_or_else(|| Error::NoSolution {
        window: src.to_string(),
    })?;
    let primitive = WindowIndex::new(&src).combine(&x, t.vars, n - 1);
    debug_assert_eq!(&hochschild_delta(&primitive) + &mvf_to_op(&field)?, *d);
    Ok(CocycleSplit {
        primitive: Cochain::Op(primitive),
        field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_operator, parse_polynomial};
    use crate::poly::ratio;

    fn op(src: &str, m: usize) -> MultiDiffOp {
        parse_operator(src, m).unwrap()
    }
    fn p(src: &str, m: usize) -> Polynomial {
        parse_polynomial(src, m).unwrap()
    }

    #[test]
    fn permutations_and_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|(_, odd)| *odd).count(), 3);
    }

    #[test]
    fn alt_examples() {
        assert_eq!(
            alt(&op("D[1,0|0,1]", 2)),
            op("1/2*D[1,0|0,1] - 1/2*D[0,1|1,0]", 2)
        );
        assert!(alt(&op("D[1,0|1,0]", 2)).is_zero());
        let d = op("x1*D[2,0|0,1|1,1] + D[1,0|0,1|0,1] - x2*D[0,1|1,0|1,0]", 2);
        assert_eq!(alt(&alt(&d)), alt(&d));
    }

    #[test]
    fn psi_examples() {
        let e12 = MultiVectorField::wedge_of(Polynomial::one(2), &[0, 1]).unwrap();
        assert_eq!(
            mvf_to_op(&e12).unwrap(),
            op("1/2*D[1,0|0,1] - 1/2*D[0,1|1,0]", 2)
        );
        let v = MultiVectorField::wedge_of(p("x1 + x2^2", 2), &[1]).unwrap();
        assert_eq!(mvf_to_op(&v).unwrap(), op("(x1 + x2^2)*D[0,1]", 2));
        let x = MultiVectorField::wedge_of(p("x1", 2), &[0, 1]).unwrap();
        assert_eq!(
            mvf_to_op(&x).unwrap(),
            op("1/2*x1*D[1,0|0,1] - 1/2*x1*D[0,1|1,0]", 2)
        );
        assert!(mvf_to_op(&MultiVectorField::zero(2, 0)).is_err());
    }

    #[test]
    fn j_examples() {
        let e12 = MultiVectorField::wedge_of(Polynomial::one(2), &[0, 1]).unwrap();
        assert_eq!(op_to_mvf(&op("D[1,0|0,1]", 2)), e12);
        assert_eq!(op_to_mvf(&mvf_to_op(&e12).unwrap()), e12);

        let j = op_to_mvf(&op("D[2] + 3*D[1]", 1));
        assert_eq!(j, MultiVectorField::wedge_of(p("3", 1), &[0]).unwrap());
        assert!(op_to_mvf(&op("D[2]", 1)).is_zero());

        let e = op("x1*D[1,1] + D[0,2]", 2);
        assert!(op_to_mvf(&hochschild_delta(&e)).is_zero());
    }

    #[test]
    fn wedge_examples() {
        let d1 = MultiVectorField::wedge_of(Polynomial::one(2), &[0]).unwrap();
        let d2 = MultiVectorField::wedge_of(Polynomial::one(2), &[1]).unwrap();
        let w = wedge(&d1, &d2).unwrap();
        assert_eq!(w.component(&[0, 1]), Polynomial::one(2));
        assert!(wedge(&d1, &d1).unwrap().is_zero());
        assert_eq!(wedge(&d2, &d1).unwrap(), w.scale(&ratio(-1, 1)));
        let a = MultiVectorField::wedge_of(p("x1", 2), &[0]).unwrap();
        let b = MultiVectorField::wedge_of(p("x2", 2), &[1]).unwrap();
        assert_eq!(
            wedge(&a, &b).unwrap(),
            MultiVectorField::wedge_of(p("x1*x2", 2), &[0, 1]).unwrap()
        );
    }

    #[test]
    fn basis_examples() {
        let b = enumerate_basis(&Truncation::new(1, 1, 1, 0));
        assert_eq!(b, vec![Cochain::Op(op("D[1]", 1))]);

        let b = enumerate_basis(&Truncation::new(1, 1, 2, 1));
        assert_eq!(b.len(), 4);
        for s in ["D[1]", "x1*D[1]", "D[2]", "x1*D[2]"] {
            assert!(b.contains(&Cochain::Op(op(s, 1))), "{s}");
        }
        assert_eq!(enumerate_basis(&Truncation::new(2, 1, 1, 1)).len(), 6);
        assert_eq!(enumerate_basis(&Truncation::new(2, 0, 3, 2)).len(), 6);
        for t in [Truncation::new(2, 2, 2, 1), Truncation::new(3, 1, 3, 2)] {
            assert_eq!(enumerate_basis(&t).len(), t.dimension());
        }
    }

    #[test]
    fn delta_matrix_examples() {
        for d in 0..3 {
            assert!(delta_matrix(&Truncation::new(1, 1, 1, d))
                .unwrap()
                .is_zero());
        }
        // column of ∂² is −2 at ∂⊗∂
        let t = Truncation::new(1, 1, 2, 0);
        let m = delta_matrix(&t).unwrap();
        let col = enumerate_basis(&t)
            .iter()
            .position(|b| *b == Cochain::Op(op("D[2]", 1)))
            .unwrap();
        let row = enumerate_basis(&Truncation::new(1, 2, 2, 0))
            .iter()
            .position(|b| *b == Cochain::Op(op("D[1|1]", 1)))
            .unwrap();
        assert_eq!(m.get(row, col), ratio(-2, 1));
        assert_eq!(m.column(col).len(), 1);

        let t = Truncation::new(2, 1, 2, 1);
        let next = Truncation { arity: 2, ..t };
        assert!(delta_matrix(&next)
            .unwrap()
            .mul(&delta_matrix(&t).unwrap())
            .is_zero());
    }

    #[test]
    fn cohomology_small_windows() {
        assert_eq!(cohomology_dims(1, 2, 2, 3, 2).unwrap(), vec![3, 3, 0, 0]);
        assert_eq!(cohomology_dims(2, 1, 1, 1, 0).unwrap(), vec![3, 6]);
    }

    #[test]
    fn split_examples() {
        let eta = MultiVectorField::wedge_of(p("x1 - 2*x2", 2), &[0, 1]).unwrap();
        let d = mvf_to_op(&eta).unwrap();
        let t = Truncation::new(2, 2, 1, 1);
        let s = split_cocycle(&d, &t, 0).unwrap();
        assert_eq!(s.field, eta);
        assert!(s.primitive.is_zero());

        let e0 = op("x1*D[2,0] + D[1,1]", 2);
        let d = &hochschild_delta(&e0) + &mvf_to_op(&eta).unwrap();
        let t = Truncation::new(2, 2, 1, 1);
        let s = split_cocycle(&d, &t, 0).unwrap();
        assert_eq!(s.field, eta);
        let Cochain::Op(e) = &s.primitive else {
            panic!()
        };
        assert_eq!(hochschild_delta(e), hochschild_delta(&e0));
    }

    #[test]
    fn split_errors() {
        let t = Truncation::new(1, 1, 2, 1);
        assert_eq!(split_cocycle(&op("D[2]", 1), &t, 2), Err(Error::NotCocycle));
        assert!(matches!(
            split_cocycle(&op("x1^3*D[1]", 1), &t, 2),
            Err(Error::OutsideWindow { .. })
        ));
        let t2 = Truncation::new(1, 2, 1, 0);
        // ∂⊗∂ is a cocycle and a coboundary of −½∂², which needs order 2 = r + 1
        let s = split_cocycle(&op("D[1|1]", 1), &t2, 0).unwrap();
        assert!(s.field.is_zero());
        assert_eq!(s.primitive, Cochain::Op(op("-1/2*D[2]", 1)));
    }

    #[test]
    fn mvf_json_round_trip() {
        let eta = &MultiVectorField::wedge_of(p("x1 - 2*x2", 3), &[2, 0]).unwrap();
        assert_eq!(MultiVectorField::from_json(&eta.to_json()).unwrap(), *eta);
    }
}
