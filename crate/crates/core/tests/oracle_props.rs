mod common;

use std::time::Instant;

use common::*;
use fwdiff_core::error::Error;
use fwdiff_core::fwcore::RingPresentation;
use fwdiff_core::modarith::{CoeffRing, FqField};
use fwdiff_core::mpoly::{Monomial, Poly};
use fwdiff_core::oracle::{brute_fw, brute_fw_integral, cross_check, FiniteRing, DEFAULT_MAX_SIZE};
use proptest::prelude::*;

/// Random finite quotient: pure powers `x_i^{k_i}` plus optional lower-order noise and extra relations.
fn finite_ring() -> impl Strategy<Value = RingPresentation> {
    (
        prop::sample::select(vec![(2u64, false), (3, false), (2, true), (3, true)]),
        1usize..=2,
        prop::collection::vec(1u32..=3, 2),
        prop::collection::vec(raw_terms(2, 2, 2), 2),
        prop::collection::vec(raw_terms(2, 3, 3), 0..=1),
    )
        .prop_map(|((p, mixed), n, degs, noise, extra)| {
            let ring = if mixed { zp2(p, n) } else { fp(p, n) };
            let mut rels = Vec::new();
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = degs[i];
                let lead = Poly::term(&ring, Monomial(e), 1);
                let low: Vec<_> = noise[i]
                    .iter()
                    .map(|(e, c)| (e[..n].to_vec(), *c))
                    .filter(|(e, _)| e.iter().sum::<u32>() < degs[i])
                    .collect();
                rels.push(&lead + &build(&ring, &low));
            }
            for r in extra {
                rels.push(build(&ring, &r.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect::<Vec<_>>()));
            }
            RingPresentation::from_ring(&ring, fwdiff_core::mpoly::default_names(n), rels).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_agrees_with_presentation(a in finite_ring()) {
        match cross_check(&a, DEFAULT_MAX_SIZE) {
            Ok(c) => prop_assert!(c.matches, "{:?} brute {} presented {}", a.relations(), c.brute_dim, c.presented_dim),
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn relabeling_invariance(a in finite_ring(), seed in any::<u64>()) {
        let Ok(r) = FiniteRing::from_presentation(&a, 27) else { return Ok(()) };
        let n = r.size();
        // Fisher–Yates driven by a simple LCG keyed by the seed
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = r.relabeled(&perm).unwrap();
        prop_assert_eq!(brute_fw(&r, 81).unwrap().dim, brute_fw(&q, 81).unwrap().dim);
    }

    #[test]
    fn quotient_is_killed_by_p(a in finite_ring()) {
        let Ok(r) = FiniteRing::from_presentation(&a, 32) else { return Ok(()) };
        let exps = brute_fw_integral(&r).unwrap();
        prop_assert!(exps.iter().all(|&e| e <= 1), "exponents {:?}", exps);
        prop_assert_eq!(exps.len(), brute_fw(&r, 81).unwrap().dim);
    }
}

#[test]
fn finite_fields_have_zero_module() {
    let start = Instant::now();
    let mut seen = 0;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79] {
        let mut e = 1;
        while p.pow(e as u32) <= 81 {
            let base = if e == 1 {
                CoeffRing::Fp(prime(p))
            } else {
                CoeffRing::fq(FqField::new(prime(p), e).unwrap())
            };
            let a = RingPresentation::new(base, vec![], vec![]).unwrap();
            let r = FiniteRing::from_presentation(&a, 81).unwrap();
            assert_eq!(brute_fw(&r, 81).unwrap().dim, 0, "F_{}", p.pow(e as u32));
            seen += 1;
            e += 1;
        }
    }
    assert_eq!(seen, 32);
    eprintln!("finite fields up to 81 checked in {:?}", start.elapsed());
}

#[test]
fn spec_rings_cross_check() {
    let z = |p| RingPresentation::new(CoeffRing::Zp2(prime(p)), vec![], vec![]).unwrap();
    let c = cross_check(&z(2), 81).unwrap();
    assert_eq!((c.brute_dim, c.presented_dim, c.order), (1, 1, 4));
    let c = cross_check(&z(3), 81).unwrap();
    assert_eq!((c.brute_dim, c.presented_dim, c.order), (1, 1, 9));

    let ring = zp2(2, 1);
    let x = Poly::var(&ring, 0);
    let a = RingPresentation::from_ring(&ring, names(&["x"]), vec![x.pow(2), x.scale(2)]).unwrap();
    let c = cross_check(&a, 81).unwrap();
    assert!(c.matches);
    assert_eq!(c.order, 8);
}

#[test]
fn oracle_refuses_large_rings() {
    let ring = fp(3, 2);
    let (x, y) = (Poly::var(&ring, 0), Poly::var(&ring, 1));
    let a = RingPresentation::from_ring(&ring, names(&["x", "y"]), vec![x.pow(3), y.pow(3)]).unwrap();
    assert!(matches!(cross_check(&a, 81), Err(Error::TooLarge { size: 19683, bound: 81 })));
}
