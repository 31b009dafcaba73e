#![allow(dead_code)]

use std::sync::Arc;

use fwdiff_core::modarith::{CoeffRing, Prime};
use fwdiff_core::mpoly::{Monomial, Poly, PolyRing};
use proptest::prelude::*;

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Raw terms: exponent vectors of length `n` with entries `< max_exp`, and coefficients.
pub fn raw_terms(n: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec((prop::collection::vec(0..max_exp, n), any::<u64>()), 0..=max_terms)
}

pub fn build(ring: &Arc<PolyRing>, raw: &[(Vec<u32>, u64)]) -> Poly {
    let q = ring.coeffs().size();
    Poly::from_terms(ring, raw.iter().map(|(e, c)| (Monomial(e.clone()), c % q)).collect::<Vec<_>>())
}

pub fn zp2(p: u64, n: usize) -> Arc<PolyRing> {
    PolyRing::grevlex(CoeffRing::Zp2(prime(p)), n)
}

pub fn fp(p: u64, n: usize) -> Arc<PolyRing> {
    PolyRing::grevlex(CoeffRing::Fp(prime(p)), n)
}
