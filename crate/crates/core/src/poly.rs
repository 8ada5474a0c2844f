//! Exact multivariate polynomials over the rationals and multi-index combinatorics.
//!
//! Variables and multi-index components are indexed from 0 in the API; the text form
//! uses `x1..xm`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exponent vector `α ∈ N^m`, used both for `∂^α` and for monomials `x^α`.
///
/// Ordered graded-lexicographically: total degree first, then exponents compared
/// from `x1` onward.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(vars: usize) -> Self {
        MultiIndex(vec![0; vars])
    }

    /// The unit vector `e_i`.
    pub fn unit(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|α|`
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self - other`, or `None` if some component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// The only nonzero component, if `|α| = 1`.
    pub fn as_unit(&self) -> Option<usize> {
        if self.total() == 1 {
            self.0.iter().position(|&e| e == 1)
        } else {
            None
        }
    }

    /// Every multi-index of length `vars` with total degree in `lo..=hi`, ascending.
    pub fn all_with_total(vars: usize, lo: u32, hi: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for total in lo..=hi {
            let mut acc = Vec::with_capacity(vars);
            compositions(vars, total, &mut acc, &mut |e| {
                out.push(MultiIndex(e.to_vec()))
            });
        }
        out.sort();
        out
    }
}

/// Calls `emit` with every vector of `len` non-negative integers summing to `total`.
fn compositions(len: usize, total: u32, acc: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if len == 0 {
        if total == 0 {
            emit(acc);
        }
        return;
    }
    if len == 1 {
        acc.push(total);
        emit(acc);
        acc.pop();
        return;
    }
    for first in 0..=total {
        acc.push(first);
        compositions(len - 1, total - first, acc, emit);
        acc.pop();
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All ways of writing `alpha` as an ordered sum of `parts` multi-indices.
pub fn splittings(alpha: &MultiIndex, parts: usize) -> Vec<Vec<MultiIndex>> {
    let vars = alpha.vars();
    // per-variable compositions, then their cartesian product
    let per_var: Vec<Vec<Vec<u32>>> = alpha
        .exponents()
        .iter()
        .map(|&a| {
            let mut v = Vec::new();
            let mut acc = Vec::with_capacity(parts);
            compositions(parts, a, &mut acc, &mut |c| v.push(c.to_vec()));
            v
        })
        .collect();
    let mut out = vec![vec![vec![0u32; vars]; parts]];
    for (j, choices) in per_var.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for partial in &out {
            for c in choices {
                let mut p = partial.clone();
                for (l, &e) in c.iter().enumerate() {
                    p[l][j] = e;
                }
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|p| p.into_iter().map(MultiIndex).collect())
        .collect()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Multiplicity of the term `∂^{β_1}(a_1)⋯∂^{β_k}(a_k)` in `∂^α(a_1⋯a_k)`:
/// the product over variables of multinomial coefficients.
pub fn multi_index_split_coeff(alpha: &MultiIndex, parts: &[MultiIndex]) -> Result<Rational> {
    let vars = alpha.vars();
    if let Some(bad) = parts.iter().find(|p| p.vars() != vars) {
        return Err(Error::LengthMismatch {
            expected: vars,
            found: bad.vars(),
        });
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..vars {
        let sum: u32 = parts.iter().map(|p| p.0[j]).sum();
        if sum != alpha.0[j] {
            return Err(Error::SplitMismatch);
        }
        num *= factorial(alpha.0[j]);
        for p in parts {
            den *= factorial(p.0[j]);
        }
    }
    Ok(Rational::new(num, den))
}

/// Falling factorial `e (e-1) ⋯ (e-k+1)`.
fn falling(e: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(e - j))
}

/// Sparse polynomial in `vars` variables with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        Self::monomial(vars, c, MultiIndex::zero(vars))
    }

    pub fn monomial(vars: usize, c: Rational, exps: MultiIndex) -> Self {
        assert_eq!(exps.vars(), vars, "monomial exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { vars, terms }
    }

    /// The coordinate function `x_{i+1}`.
    pub fn variable(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::VarIndexOutOfRange { index: i, vars });
        }
        Ok(Self::monomial(
            vars,
            Rational::one(),
            MultiIndex::unit(vars, i),
        ))
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing duplicates.
    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            if e.vars() != vars {
                return Err(Error::LengthMismatch {
                    expected: vars,
                    found: e.vars(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &MultiIndex) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    /// The constant value, if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, exps: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.vars {
            return Err(Error::VarIndexOutOfRange {
                index: i,
                vars: self.vars,
            });
        }
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k > 0 {
                let mut d = e.clone();
                d.0[i] -= 1;
                out.add_term(d, c * Rational::from_integer(BigInt::from(k)));
            }
        }
        Ok(out)
    }

    /// `∂^α`, computed termwise with falling factorials.
    pub fn partial_multi(&self, alpha: &MultiIndex) -> Result<Polynomial> {
        if alpha.vars() != self.vars {
            return Err(Error::LengthMismatch {
                expected: self.vars,
                found: alpha.vars(),
            });
        }
        if alpha.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in &self.terms {
            if let Some(rest) = e.checked_sub(alpha) {
                let f =
                    e.0.iter()
                        .zip(&alpha.0)
                        .fold(BigInt::one(), |acc, (&ej, &aj)| acc * falling(ej, aj));
                out.add_term(rest, c * Rational::from_integer(f));
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars {
            return Err(Error::LengthMismatch {
                expected: self.vars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; use [`Polynomial::try_add`] for checked input.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial variable count")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial variable count")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Writes `x1^2*x2`; nothing for the unit monomial.
pub(crate) fn write_monomial(f: &mut impl fmt::Write, e: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Writes one signed summand `c * x^e * suffix`. The leading term gets a bare `-`,
/// later ones ` + ` / ` - `. `suffix` may be empty (plain polynomial term).
pub(crate) fn write_signed_term(
    f: &mut impl fmt::Write,
    first: bool,
    c: &Rational,
    e: &MultiIndex,
    suffix: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => f.write_char('-')?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let abs = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !abs.is_one() || (e.is_zero() && suffix.is_empty()) {
        parts.push(format_rational(&abs));
    }
    if !e.is_zero() {
        let mut m = String::new();
        write_monomial(&mut m, e)?;
        parts.push(m);
    }
    if !suffix.is_empty() {
        parts.push(suffix.to_string());
    }
    f.write_str(&parts.join("*"))
}

impl fmt::Display for Polynomial {
    /// Descending graded-lexicographic order, e.g. `3/2*x1^2*x2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            write_signed_term(f, k == 0, c, e, "")?;
        }
        Ok(())
    }
}

/// One polynomial term on the wire: `{exps: [int], num: string, den: string}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl Polynomial {
    /// JSON wire form: a list of terms in descending canonical order.
    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| PolyTermJson {
                exps: e.0.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_json(vars: usize, terms: &[PolyTermJson]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(vars);
        for t in terms {
            if t.exps.len() != vars {
                return Err(Error::LengthMismatch {
                    expected: vars,
                    found: t.exps.len(),
                });
            }
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::Malformed(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::Malformed(format!("bad denominator {:?}", t.den)))?;
            if !den.is_positive() {
                return Err(Error::Malformed("denominator must be positive".into()));
            }
            if !num.gcd(&den).is_one() && !num.is_zero() {
                return Err(Error::Malformed("coefficient not in lowest terms".into()));
            }
            out.add_term(MultiIndex(t.exps.clone()), Rational::new(num, den));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_polynomial;

    fn p(src: &str, m: usize) -> Polynomial {
        parse_polynomial(src, m).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("x1 + 1", 1) + &p("x1 - 1", 1), p("2*x1", 1));
        let q = p("3*x1^2 - x1", 1);
        assert_eq!(&q + &Polynomial::zero(1), q);
        assert_eq!(
            &p("1/2*x1^2", 1) + &p("1/3*x1^2", 1),
            Polynomial::monomial(1, ratio(5, 6), MultiIndex::new(vec![2]))
        );
    }

    #[test]
    fn mismatched_vars_is_error() {
        let a = Polynomial::one(1);
        let b = Polynomial::one(2);
        assert_eq!(a.try_add(&b), Err(Error::VarMismatch { left: 1, right: 2 }));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x1", 2) * &p("x2", 2), p("x1*x2", 2));
        assert_eq!(&p("x1 + 1", 1) * &p("x1 - 1", 1), p("x1^2 - 1", 1));
        let q = p("x1*x2 + 3/4", 2);
        assert_eq!(&q * &Polynomial::one(2), q);
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("x1^2*x2", 2).partial(0).unwrap(), p("2*x1*x2", 2));
        assert_eq!(p("x1^2", 2).partial(1).unwrap(), Polynomial::zero(2));
        assert_eq!(p("x1^3/3", 1).partial(0).unwrap(), p("x1^2", 1));
        assert_eq!(
            p("x1", 2).partial(2),
            Err(Error::VarIndexOutOfRange { index: 2, vars: 2 })
        );
    }

    #[test]
    fn partial_multi_examples() {
        let mi = |v: &[u32]| MultiIndex::new(v.to_vec());
        assert_eq!(
            p("x1*x2", 2).partial_multi(&mi(&[1, 1])).unwrap(),
            Polynomial::one(2)
        );
        let q = p("x1^3 - 2*x2", 2);
        assert_eq!(q.partial_multi(&mi(&[0, 0])).unwrap(), q);
        assert_eq!(
            p("x1^2*x2", 2).partial_multi(&mi(&[2, 0])).unwrap(),
            p("2*x2", 2)
        );
        assert!(q.partial_multi(&mi(&[1])).is_err());
    }

    #[test]
    fn split_coeff_examples() {
        let mi = |v: &[u32]| MultiIndex::new(v.to_vec());
        assert_eq!(
            multi_index_split_coeff(&mi(&[2, 0]), &[mi(&[1, 0]), mi(&[1, 0])]).unwrap(),
            rat(2)
        );
        assert_eq!(
            multi_index_split_coeff(&mi(&[3, 1]), &[mi(&[3, 1]), mi(&[0, 0])]).unwrap(),
            rat(1)
        );
        assert_eq!(
            multi_index_split_coeff(&mi(&[2, 1]), &[mi(&[1, 0]), mi(&[1, 1])]).unwrap(),
            rat(2)
        );
        assert_eq!(
            multi_index_split_coeff(&mi(&[2, 1]), &[mi(&[1, 0]), mi(&[0, 1])]),
            Err(Error::SplitMismatch)
        );
    }

    #[test]
    fn splittings_count() {
        // (2,1) into 3 parts: C(4,2) * C(3,2) = 6 * 3
        let s = splittings(&MultiIndex::new(vec![2, 1]), 3);
        assert_eq!(s.len(), 18);
        assert!(s.iter().all(|parts| {
            parts.iter().fold(MultiIndex::zero(2), |a, b| a.add(b)) == MultiIndex::new(vec![2, 1])
        }));
    }

    #[test]
    fn graded_lex_order() {
        let mi = |v: &[u32]| MultiIndex::new(v.to_vec());
        assert!(mi(&[0, 0]) < mi(&[0, 1]));
        assert!(mi(&[0, 1]) < mi(&[1, 0]));
        assert!(mi(&[1, 0]) < mi(&[0, 2]));
        assert_eq!(MultiIndex::all_with_total(2, 0, 2).len(), 6);
    }

    #[test]
    fn display_form() {
        assert_eq!(p("-1 + 3/2*x2*x1^2", 2).to_string(), "3/2*x1^2*x2 - 1");
        assert_eq!(p("-x1", 1).to_string(), "-x1");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn json_rejects_unreduced() {
        let t = PolyTermJson {
            exps: vec![1],
            num: "2".into(),
            den: "4".into(),
        };
        assert!(Polynomial::from_json(1, &[t]).is_err());
    }
}
