mod common;

use std::collections::BTreeMap;

use common::*;
use fwdiff_core::mpoly::{frobenius_twist, witt_pair_correction, witt_q, witt_r};
use fwdiff_core::mpoly::{Monomial, Poly};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

type Dense = BTreeMap<Vec<u32>, BigInt>;

fn lift(f: &Poly) -> Dense {
    f.terms().iter().map(|t| (t.mono.0.clone(), BigInt::from(t.coeff))).collect()
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out
}

/// `(f̃^p − f̃^{(p)})/p mod p^2` by schoolbook arithmetic over `Z`.
fn q_oracle(f: &Poly, p: u64) -> Poly {
    let l = lift(f);
    let mut pw: Dense = [(vec![0; f.nvars()], BigInt::from(1))].into_iter().collect();
    for _ in 0..p {
        pw = mul(&pw, &l);
    }
    for (e, c) in &l {
        let e: Vec<u32> = e.iter().map(|x| x * p as u32).collect();
        *pw.entry(e).or_insert_with(BigInt::zero) -= c.pow(p as u32);
    }
    let m = BigInt::from(p * p);
    let terms: Vec<(Monomial, u64)> = pw
        .into_iter()
        .map(|(e, c)| {
            assert!((&c % BigInt::from(p)).is_zero(), "f^p - f^(p) not divisible by p");
            let q = ((c / BigInt::from(p)) % &m + &m) % &m;
            (Monomial(e), q.to_u64().unwrap())
        })
        .collect();
    Poly::from_terms(f.ring(), terms)
}

fn params() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3]), 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_power_identity(
        (p, n) in params(),
        raw in raw_terms(3, 4, 4),
    ) {
        let ring = zp2(p, n);
        let raw: Vec<_> = raw.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
        let f = build(&ring, &raw);
        let q = witt_q(&f).unwrap();
        prop_assert_eq!(&q, &q_oracle(&f, p));
        prop_assert_eq!(f.pow(p), &frobenius_twist(&f) + &q.scale(p));
    }

    #[test]
    fn q_of_sum(
        (p, n) in params(),
        rf in raw_terms(3, 4, 4),
        rg in raw_terms(3, 4, 4),
    ) {
        let ring = zp2(p, n);
        let cut = |r: Vec<(Vec<u32>, u64)>| r.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect::<Vec<_>>();
        let (f, g) = (build(&ring, &cut(rf)), build(&ring, &cut(rg)));
        let lhs = witt_q(&(&f + &g)).unwrap();
        let rhs = &(&(&witt_q(&f).unwrap() + &witt_q(&g).unwrap()) + &witt_pair_correction(&f, &g)) - &witt_r(&f, &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_additive_modulo_r(
        (p, n) in params(),
        rf in raw_terms(3, 4, 4),
        rg in raw_terms(3, 4, 4),
    ) {
        let ring = zp2(p, n);
        let cut = |r: Vec<(Vec<u32>, u64)>| r.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect::<Vec<_>>();
        let (f, g) = (build(&ring, &cut(rf)), build(&ring, &cut(rg)));
        let lhs = frobenius_twist(&(&f + &g));
        let rhs = &(&frobenius_twist(&f) + &frobenius_twist(&g)) + &witt_r(&f, &g).scale(p);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_is_multiplicative_on_monomials(
        (p, n) in params(),
        rf in raw_terms(3, 4, 4),
        e in prop::collection::vec(0u32..4, 3),
        c in any::<u64>(),
    ) {
        let ring = zp2(p, n);
        let f = build(&ring, &rf.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect::<Vec<_>>());
        let t = build(&ring, &[(e[..n].to_vec(), c)]);
        prop_assert_eq!(frobenius_twist(&(&f * &t)), &frobenius_twist(&f) * &frobenius_twist(&t));
    }

    #[test]
    fn twist_is_frobenius_in_char_p(
        p in prop::sample::select(vec![2u64, 3, 5]),
        rf in raw_terms(2, 4, 4),
    ) {
        let ring = fp(p, 2);
        let f = build(&ring, &rf);
        prop_assert_eq!(frobenius_twist(&f), f.pow(p));
    }
}
