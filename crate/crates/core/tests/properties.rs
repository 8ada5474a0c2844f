//! Property tests that check operator algebra against pointwise evaluation on
//! polynomial arguments, which does not share code with the symbolic routines.

use hochkit_core::hkr::{permutations, MultiVectorField};
use hochkit_core::poly::rat;
use hochkit_core::random::Sampler;
use hochkit_core::{
    alt, cup, hochschild_delta, partial_compose, total_compose, MultiDiffOp, MultiIndex,
    Polynomial, SignConvention,
};
use proptest::prelude::*;

fn args(s: &mut Sampler, m: usize, n: usize) -> Vec<Polynomial> {
    (0..n).map(|_| s.polynomial(m, 3, 3)).collect()
}

/// `Σ c · Π ∂^{α_k} a_k`, term by term.
fn apply_naive(d: &MultiDiffOp, a: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(d.vars());
    for (slots, c) in d.terms() {
        let mut t = c.clone();
        for (alpha, ak) in slots.iter().zip(a) {
            t = &t * &ak.partial_multi(alpha).unwrap();
        }
        acc = &acc + &t;
    }
    acc
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_and_commuting_partials(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 3);
        let (p, q) = (s.polynomial(m, 3, 4), s.polynomial(m, 3, 4));
        let (i, j) = (s.range(0, m - 1), s.range(0, m - 1));
        let lhs = (&p * &q).partial(i).unwrap();
        let rhs = &(&p.partial(i).unwrap() * &q) + &(&p * &q.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            p.partial(i).unwrap().partial(j).unwrap(),
            p.partial(j).unwrap().partial(i).unwrap()
        );
    }

    #[test]
    fn partial_multi_is_iterated_partial(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 3);
        let p = s.polynomial(m, 4, 5);
        let alpha = s.multi_index(m, 0, 3);
        let mut q = p.clone();
        for (i, &k) in alpha.exponents().iter().enumerate() {
            for _ in 0..k {
                q = q.partial(i).unwrap();
            }
        }
        prop_assert_eq!(p.partial_multi(&alpha).unwrap(), q);
    }

    #[test]
    fn apply_matches_termwise_and_is_multilinear(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = (s.range(1, 3), s.range(1, 3));
        let d = s.cochain(m, n, 2, 2, 3);
        let a = args(&mut s, m, n);
        prop_assert_eq!(d.apply(&a).unwrap(), apply_naive(&d, &a));
        let k = s.range(0, n - 1);
        let extra = s.polynomial(m, 2, 2);
        let mut b = a.clone();
        b[k] = &a[k] + &extra;
        let mut e = a.clone();
        e[k] = extra;
        prop_assert_eq!(d.apply(&b).unwrap(), &d.apply(&a).unwrap() + &d.apply(&e).unwrap());
    }

    #[test]
    fn partial_composition_agrees_pointwise(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 2);
        let (p, q) = (s.range(1, 3), s.range(1, 2));
        let f = s.cochain(m, p, 2, 2, 2);
        let g = s.cochain(m, q, 2, 2, 2);
        let i = s.range(0, p - 1);
        let a = args(&mut s, m, p + q - 1);
        let inner = g.apply(&a[i..i + q]).unwrap();
        let mut outer: Vec<Polynomial> = a[..i].to_vec();
        outer.push(inner);
        outer.extend_from_slice(&a[i + q..]);
        let fg = partial_compose(&f, i, &g).unwrap();
        prop_assert_eq!(fg.apply(&a).unwrap(), f.apply(&outer).unwrap());
    }

    #[test]
    fn total_composition_is_signed_sum(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 2);
        let (p, q) = (s.range(1, 3), s.range(1, 3));
        let f = s.cochain(m, p, 2, 1, 2);
        let g = s.cochain(m, q, 2, 1, 2);
        let mut want = MultiDiffOp::zero(m, p + q - 1);
        for k in 0..p {
            let odd = (q - 1) * k % 2 == 1;
            let term = partial_compose(&f, k, &g).unwrap().scale(&rat(if odd { -1 } else { 1 }));
            want = &want + &term;
        }
        prop_assert_eq!(total_compose(&f, &g).unwrap(), want);
    }

    #[test]
    fn delta_is_the_bar_coboundary(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = (s.range(1, 2), s.range(1, 3));
        let f = s.cochain(m, n, 2, 2, 2);
        let a = args(&mut s, m, n + 1);
        let mut want = &a[0] * &f.apply(&a[1..]).unwrap();
        for i in 0..n {
            let mut merged: Vec<Polynomial> = a[..i].to_vec();
            merged.push(&a[i] * &a[i + 1]);
            merged.extend_from_slice(&a[i + 2..]);
            let t = f.apply(&merged).unwrap();
            want = if i % 2 == 0 { &want - &t } else { &want + &t };
        }
        let last = &f.apply(&a[..n]).unwrap() * &a[n];
        want = if n % 2 == 0 { &want - &last } else { &want + &last };
        prop_assert_eq!(hochschild_delta(&f).apply(&a).unwrap(), want);
    }

    #[test]
    fn cup_multiplies_values(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 2);
        let (p, q) = (s.range(1, 2), s.range(1, 2));
        let f = s.cochain(m, p, 2, 2, 2);
        let g = s.cochain(m, q, 2, 2, 2);
        let a = args(&mut s, m, p + q);
        let want = &f.apply(&a[..p]).unwrap() * &g.apply(&a[p..]).unwrap();
        let got = cup(&f, &g, SignConvention::Unsigned).unwrap().apply(&a).unwrap();
        prop_assert_eq!(got, want.clone());
        let signed = cup(&f, &g, SignConvention::PaperSigned).unwrap().apply(&a).unwrap();
        let expect = if p * q % 2 == 1 { -&want } else { want };
        prop_assert_eq!(signed, expect);
    }

    #[test]
    fn alt_is_signed_average(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = (s.range(1, 2), s.range(1, 3));
        let d = s.cochain(m, n, 2, 1, 3);
        let a = args(&mut s, m, n);
        let mut sum = Polynomial::zero(m);
        let mut count = 0i64;
        for (perm, _) in permutations(n) {
            let permuted: Vec<Polynomial> = perm.iter().map(|&k| a[k].clone()).collect();
            let v = d.apply(&permuted).unwrap();
            sum = if inversions(&perm) % 2 == 1 { &sum - &v } else { &sum + &v };
            count += 1;
        }
        let want = sum.scale(&hochkit_core::poly::ratio(1, count));
        prop_assert_eq!(alt(&d).apply(&a).unwrap(), want);
        prop_assert_eq!(alt(&alt(&d)), alt(&d));
    }

    #[test]
    fn syntactic_order_matches_commutator_test(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = s.range(1, 3);
        let r = s.range(1, 3) as u32;
        let d = s.dpoly(m, 1, r, 2, 3);
        let k = d.syntactic_order().unwrap();
        prop_assert!(d.is_diff_op_of_order_at_most(k).unwrap());
        prop_assert!(!d.is_diff_op_of_order_at_most(k - 1).unwrap());
    }

    #[test]
    fn text_and_json_round_trips(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m, n) = (s.range(1, 3), s.range(1, 3));
        let d = s.cochain(m, n, 3, 3, 4);
        let json = serde_json::to_string(&d.to_json()).unwrap();
        let back = MultiDiffOp::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(&back, &d);
        let p = s.polynomial(m, 3, 4);
        prop_assert_eq!(hochkit_core::parse_polynomial(&p.to_string(), m).unwrap(), p.clone());
        let pj = serde_json::to_string(&p.to_json()).unwrap();
        prop_assert_eq!(Polynomial::from_json(m, &serde_json::from_str::<Vec<_>>(&pj).unwrap()).unwrap(), p);
        let k = s.range(1, m);
        let eta = s.multivector(m, k, 2);
        let ej = serde_json::to_string(&eta.to_json()).unwrap();
        prop_assert_eq!(MultiVectorField::from_json(&serde_json::from_str(&ej).unwrap()).unwrap(), eta);
    }
}

#[test]
fn canonical_forms_are_stable() {
    let mut s = Sampler::new(11);
    for _ in 0..50 {
        let d = s.cochain(2, 2, 2, 2, 4);
        let rebuilt =
            MultiDiffOp::from_terms(2, 2, d.terms().map(|(k, v)| (k.clone(), v.clone()))).unwrap();
        assert_eq!(rebuilt, d);
        assert_eq!(rebuilt.to_string(), d.to_string());
    }
    assert_eq!(MultiIndex::zero(2).total(), 0);
}
