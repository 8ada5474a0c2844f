//! Embedded randomized property suite behind `hochkit selftest`.

use serde::{Deserialize, Serialize};

use crate::dsl::parse_operator;
use crate::hkr::{alt, mvf_to_op, op_to_mvf, split_cocycle, wedge, Truncation};
use crate::hochschild::{
    associativity_defect, cup, gerstenhaber, hochschild_delta, hochschild_delta_via_bracket,
    SignConvention,
};
use crate::multiop::Cochain;
use crate::random::Sampler;
use crate::sder::{sder_decompose, word_order_check};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed == c.total)
    }
}

type Check = fn(&mut Sampler) -> bool;

const CHECKS: &[(&str, Check)] = &[
    ("delta_squared_zero", delta_squared_zero),
    ("delta_route_equivalence", delta_route_equivalence),
    ("cup_derivation_law", cup_derivation_law),
    ("bracket_antisymmetry", bracket_antisymmetry),
    ("bracket_jacobi", bracket_jacobi),
    ("associativity_defect", associativity_defect_agrees),
    ("multiderivation_cocycle", multiderivation_cocycle),
    ("word_order_filtration", word_order_filtration),
    ("sder_round_trip", sder_round_trip),
    ("alt_kills_coboundaries", alt_kills_coboundaries),
    ("j_inverts_psi", j_inverts_psi),
    ("cup_to_wedge", cup_to_wedge),
    ("split_cocycle", split_round_trip),
    ("print_parse_round_trip", print_parse_round_trip),
];

/// Runs every check `cases` times from one seed.
pub fn run_selftest(seed: u64, cases: usize) -> SelfTestReport {
    let mut sampler = Sampler::new(seed);
    let checks = CHECKS
        .iter()
        .map(|(name, check)| {
            let passed = (0..cases).filter(|_| check(&mut sampler)).count();
            CheckResult {
                name: name.to_string(),
                passed,
                total: cases,
            }
        })
        .collect();
    SelfTestReport { seed, checks }
}

fn delta_squared_zero(s: &mut Sampler) -> bool {
    let (m, n) = (s.range(1, 2), s.range(1, 3));
    let f_k = s.range(1, 3) as u32;
    let f = s.dpoly(m, n, f_k, 2, 3);
    hochschild_delta(&hochschild_delta(&f)).is_zero()
}

fn delta_route_equivalence(s: &mut Sampler) -> bool {
    let (m, n) = (s.range(1, 2), s.range(1, 3));
    let f_k = s.range(1, 3) as u32;
    let f = s.cochain(m, n, f_k, 2, 3);
    hochschild_delta(&f) == hochschild_delta_via_bracket(&f)
}

fn cup_derivation_law(s: &mut Sampler) -> bool {
    let m = s.range(1, 2);
    let f_k = s.range(1, 2);
    let f = s.dpoly(m, f_k, 2, 1, 2);
    let g_k = s.range(1, 2);
    let g = s.dpoly(m, g_k, 2, 1, 2);
    let u = SignConvention::Unsigned;
    let lhs = hochschild_delta(&cup(&f, &g, u).unwrap());
    let sign = if f.arity().is_multiple_of(2) { 1 } else { -1 };
    let rhs = &cup(&hochschild_delta(&f), &g, u).unwrap()
        + &cup(&f, &hochschild_delta(&g), u)
            .unwrap()
            .scale(&crate::poly::rat(sign));
    lhs == rhs
}

fn bracket_antisymmetry(s: &mut Sampler) -> bool {
    let m = s.range(1, 2);
    let f_k = s.range(1, 3);
    let f = s.cochain(m, f_k, 2, 2, 2);
    let g_k = s.range(1, 3);
    let g = s.cochain(m, g_k, 2, 2, 2);
    let (a, b) = (f.arity() - 1, g.arity() - 1);
    let fg = gerstenhaber(&f, &g).unwrap();
    let gf = gerstenhaber(&g, &f).unwrap();
    let sign = if (a * b) % 2 == 0 { -1 } else { 1 };
    fg == gf.scale(&crate::poly::rat(sign))
}

fn bracket_jacobi(s: &mut Sampler) -> bool {
    let m = s.range(1, 2);
    let f_k = s.range(1, 2);
    let f = s.cochain(m, f_k, 2, 1, 2);
    let g_k = s.range(1, 2);
    let g = s.cochain(m, g_k, 2, 1, 2);
    let h_k = s.range(1, 2);
    let h = s.cochain(m, h_k, 2, 1, 2);
    let (a, b) = (f.arity() - 1, g.arity() - 1);
    let lhs = gerstenhaber(&f, &gerstenhaber(&g, &h).unwrap()).unwrap();
    let sign = if (a * b) % 2 == 0 { 1 } else { -1 };
    let rhs = &gerstenhaber(&gerstenhaber(&f, &g).unwrap(), &h).unwrap()
        + &gerstenhaber(&g, &gerstenhaber(&f, &h).unwrap())
            .unwrap()
            .scale(&crate::poly::rat(sign));
    lhs == rhs
}

fn associativity_defect_agrees(s: &mut Sampler) -> bool {
    let m = s.range(1, 2);
    let nu = s.cochain(m, 2, 2, 2, 3);
    let (a, b) = associativity_defect(&nu).unwrap();
    a == b
}

fn multiderivation_cocycle(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let n = s.range(1, 3);
    let mut acc = s.vector_field(m, 2).to_op();
    for _ in 1..n {
        acc = cup(
            &acc,
            &s.vector_field(m, 2).to_op(),
            SignConvention::Unsigned,
        )
        .unwrap();
    }
    hochschild_delta(&acc).is_zero()
}

fn word_order_filtration(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let w_k = s.range(1, 3);
    let w = s.word(m, w_k, 2);
    word_order_check(&w)
}

fn sder_round_trip(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let r = s.range(1, 4) as u32;
    let d = s.dpoly(m, 1, r, 3, 4);
    match sder_decompose(&d, r) {
        Ok(dec) => {
            dec.expand(m) == d
                && dec
                    .words
                    .iter()
                    .all(|(_, w)| w.len() <= r as usize && word_order_check(w))
        }
        Err(_) => false,
    }
}

fn alt_kills_coboundaries(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let e_k = s.range(1, 2);
    let e = s.dpoly(m, e_k, 3, 2, 3);
    alt(&hochschild_delta(&e)).is_zero()
}

fn j_inverts_psi(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let eta_k = s.range(1, m);
    let eta = s.multivector(m, eta_k, 2);
    op_to_mvf(&mvf_to_op(&eta).unwrap()) == eta
}

fn cup_to_wedge(s: &mut Sampler) -> bool {
    let m = s.range(2, 3);
    let p = s.range(1, 2);
    let q = s.range(1, 3 - p);
    let eta = s.multivector(m, p.min(m), 2);
    let theta = s.multivector(m, q.min(m), 2);
    let lhs = op_to_mvf(
        &cup(
            &mvf_to_op(&eta).unwrap(),
            &mvf_to_op(&theta).unwrap(),
            SignConvention::Unsigned,
        )
        .unwrap(),
    );
    lhs == wedge(&eta, &theta).unwrap()
}

fn split_round_trip(s: &mut Sampler) -> bool {
    let m = s.range(1, 2);
    let n = s.range(2, 2.max(m));
    let e0 = s.dpoly(m, n - 1, 2, 1, 2);
    let eta = s.multivector(m, n.min(m), 1);
    let (d, eta) = if n <= m {
        (&hochschild_delta(&e0) + &mvf_to_op(&eta).unwrap(), eta)
    } else {
        (
            hochschild_delta(&e0),
            crate::hkr::MultiVectorField::zero(m, n),
        )
    };
    let t = Truncation::new(m, n, 2, 1);
    match split_cocycle(&d, &t, 2) {
        Ok(split) => {
            let Cochain::Op(e) = &split.primitive else {
                return false;
            };
            split.field == eta && hochschild_delta(e) == hochschild_delta(&e0)
        }
        Err(_) => false,
    }
}

fn print_parse_round_trip(s: &mut Sampler) -> bool {
    let m = s.range(1, 3);
    let d_k = s.range(1, 3);
    let d = s.cochain(m, d_k, 3, 3, 4);
    parse_operator(&d.to_string(), m).is_ok_and(|back| back == d)
}
