mod common;

use common::*;
use fwdiff_core::modarith::{CoeffRing, FqField};
use fwdiff_core::mpoly::{GroebnerBasis, MonomialOrder, Poly, PolyRing};
use proptest::prelude::*;

fn gens_strategy(n: usize) -> impl Strategy<Value = (u64, Vec<Vec<(Vec<u32>, u64)>>)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::collection::vec(raw_terms(n, 3, 3), 1..=3),
    )
}

/// `dim k[X]/I` as the largest `S` with `I ∩ k[S] = 0`, read off an elimination basis.
fn elimination_dim(gens: &[Poly]) -> i64 {
    let ring = gens[0].ring();
    let n = ring.nvars();
    let unit = GroebnerBasis::new(ring, gens).unwrap().is_unit();
    if unit {
        return -1;
    }
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
        let drop: Vec<usize> = (0..n).filter(|i| s & (1 << i) == 0).collect();
        // eliminated variables come first
        let mut perm = vec![0; n];
        for (pos, &v) in drop.iter().chain(&keep).enumerate() {
            perm[v] = pos;
        }
        let target = PolyRing::new(ring.coeffs().clone(), n, MonomialOrder::Elim(drop.len()));
        let moved: Vec<Poly> = gens.iter().map(|g| g.permute_vars(&target, &perm)).collect();
        let gb = GroebnerBasis::new(&target, &moved).unwrap();
        let kept: Vec<usize> = (drop.len()..n).collect();
        if !gb.basis().iter().any(|g| g.involves_only(&kept)) {
            best = best.max(keep.len() as i64);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn normal_form_is_canonical(
        (p, raw) in gens_strategy(2),
        rf in raw_terms(2, 5, 5),
        rg in raw_terms(2, 5, 5),
    ) {
        let ring = fp(p, 2);
        let gens: Vec<Poly> = raw.iter().map(|r| build(&ring, r)).collect();
        let gb = GroebnerBasis::new(&ring, &gens).unwrap();
        prop_assert!(gb.satisfies_buchberger());
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
        let (f, g) = (build(&ring, &rf), build(&ring, &rg));
        let nf = gb.normal_form(&f);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        prop_assert!(gb.contains(&(&f - &nf)));
        prop_assert_eq!(gb.normal_form(&(&f + &g)), &nf + &gb.normal_form(&g));
        // multiples of ideal elements reduce to zero
        prop_assert!(gb.normal_form(&(&f * &gens[0])).is_zero());
    }

    #[test]
    fn basis_is_reduced(
        (p, raw) in gens_strategy(3),
    ) {
        let ring = fp(p, 3);
        let gens: Vec<Poly> = raw.iter().map(|r| build(&ring, r)).collect();
        let gb = GroebnerBasis::new(&ring, &gens).unwrap();
        let b = gb.basis();
        for (i, g) in b.iter().enumerate() {
            prop_assert_eq!(g.leading_coeff(), 1);
            for (j, h) in b.iter().enumerate() {
                let lm = h.leading_monomial().unwrap();
                if i != j {
                    prop_assert!(!g.terms().iter().any(|t| lm.divides(&t.mono)));
                }
            }
        }
    }

    #[test]
    fn krull_dim_matches_elimination(
        (p, raw) in gens_strategy(3),
    ) {
        let ring = fp(p, 3);
        let gens: Vec<Poly> = raw.iter().map(|r| build(&ring, r)).collect();
        let gb = GroebnerBasis::new(&ring, &gens).unwrap();
        prop_assert_eq!(gb.krull_dim(), elimination_dim(&gens));
    }

    #[test]
    fn grevlex_and_lex_agree_on_dimension(
        (p, raw) in gens_strategy(2),
    ) {
        let ring = fp(p, 2);
        let lex = PolyRing::new(CoeffRing::Fp(prime(p)), 2, MonomialOrder::Lex);
        let gens: Vec<Poly> = raw.iter().map(|r| build(&ring, r)).collect();
        let moved: Vec<Poly> = gens.iter().map(|g| g.permute_vars(&lex, &[0, 1])).collect();
        let a = GroebnerBasis::new(&ring, &gens).unwrap();
        let b = GroebnerBasis::new(&lex, &moved).unwrap();
        prop_assert_eq!(a.krull_dim(), b.krull_dim());
        prop_assert_eq!(
            a.standard_monomials().map(|s| s.len()),
            b.standard_monomials().map(|s| s.len())
        );
    }
}

#[test]
fn groebner_over_extension_field() {
    let f4 = CoeffRing::fq(FqField::new(prime(2), 2).unwrap());
    let ring = PolyRing::grevlex(f4.clone(), 2);
    let (x, y) = (Poly::var(&ring, 0), Poly::var(&ring, 1));
    let a = Poly::constant(&ring, 2);
    // (x^2 + a, y - x) has dimension zero and 2 standard monomials
    let gb = GroebnerBasis::new(&ring, &[&x.pow(2) + &a, &y - &x]).unwrap();
    assert_eq!(gb.krull_dim(), 0);
    assert_eq!(gb.standard_monomials().unwrap().len(), 2);
    assert!(gb.satisfies_buchberger());
}
