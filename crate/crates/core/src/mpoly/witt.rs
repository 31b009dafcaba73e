//! Frobenius dilation `f^{(p)}` and the Witt corrections `Q(f)`, `R(f,g)`, `P(f,g)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::modarith::{witt_p, CoeffRing};

/// `Σ a_m^p X^{p·m}`: every exponent multiplied by `p`, every coefficient raised to `p`.
pub fn frobenius_twist(f: &Poly) -> Poly {
    let c = f.coeff_ring();
    let p = c.p() as u32;
    Poly::from_terms(
        f.ring(),
        f.terms()
            .iter()
            .map(|t| (t.mono.scaled(p), c.frobenius(t.coeff))),
    )
}

/// `R(f, g) = Σ_m P(a_m, b_m) X^{p·m}` where `a_m`, `b_m` are the coefficients of `X^m`.
pub fn witt_r(f: &Poly, g: &Poly) -> Poly {
    assert!(f.ring() == g.ring(), "polynomial ring mismatch");
    let c = f.coeff_ring();
    let p = c.p() as u32;
    let wp = witt_p(c.prime());
    let mut coeffs: BTreeMap<Monomial, (u64, u64)> = BTreeMap::new();
    for t in f.terms() {
        coeffs.entry(t.mono.clone()).or_default().0 = t.coeff;
    }
    for t in g.terms() {
        coeffs.entry(t.mono.clone()).or_default().1 = t.coeff;
    }
    Poly::from_terms(
        f.ring(),
        coeffs
            .into_iter()
            .map(|(m, (a, b))| (m.scaled(p), wp.eval(c, a, b))),
    )
}

/// `P(f, g) = Σ_{i=1}^{p−1} binom(p,i)/p · f^i g^{p−i}` computed in the ring of `f`.
pub fn witt_pair_correction(f: &Poly, g: &Poly) -> Poly {
    let c = f.coeff_ring();
    let wp = witt_p(c.prime());
    let p = c.p();
    let coeffs = wp.reduced_coeffs(c);
    let mut fpow = vec![Poly::one(f.ring())];
    let mut gpow = vec![Poly::one(g.ring())];
    for k in 1..p as usize {
        fpow.push(&fpow[k - 1] * f);
        gpow.push(&gpow[k - 1] * g);
    }
    let mut acc = Poly::zero(f.ring());
    for (k, &coef) in coeffs.iter().enumerate() {
        let i = k + 1;
        let term = (&fpow[i] * &gpow[p as usize - i]).scale(c.from_u128(coef as u128));
        acc = &acc + &term;
    }
    acc
}

/// An exact polynomial over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Lifts each coefficient to its canonical representative in `[0, m)`.
    pub fn lift(f: &Poly) -> Self {
        IntPoly {
            nvars: f.nvars(),
            terms: f
                .terms()
                .iter()
                .map(|t| (t.mono.clone(), BigInt::from(t.coeff)))
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                *out.entry(a.mul(b)).or_default() += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        IntPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly {
            nvars: self.nvars,
            terms: BTreeMap::from([(Monomial::one(self.nvars), BigInt::one())]),
        };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.terms.clone();
        for (m, v) in &other.terms {
            *out.entry(m.clone()).or_default() -= v;
        }
        out.retain(|_, v| !v.is_zero());
        IntPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Coefficient-wise `p`-th power with exponents multiplied by `p`.
    pub fn dilate(&self, p: u32) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.scaled(p), v.pow(p)))
                .collect(),
        }
    }

    /// Exact division by `d`; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: u64) -> Option<IntPoly> {
        let d = BigInt::from(d);
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            if !(v % &d).is_zero() {
                return None;
            }
            terms.insert(m.clone(), v / &d);
        }
        Some(IntPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Reduction into a polynomial ring over `Z/m`.
    pub fn reduce(&self, ring: &Arc<PolyRing>) -> Poly {
        let m = BigInt::from(ring.coeffs().size());
        Poly::from_terms(
            ring,
            self.terms.iter().map(|(mono, v)| {
                let r = ((v % &m) + &m) % &m;
                (mono.clone(), r.to_u64().unwrap())
            }),
        )
    }
}

/// `Q(f) = (f̃^p − f̃^{(p)})/p mod p^2` for the canonical integer lift `f̃` of `f ∈ Z/p^2[X]`,
/// so that `f^p = f^{(p)} + p·Q(f)`.
pub fn witt_q(f: &Poly) -> Result<Poly> {
    let ring = f.ring();
    let p = match ring.coeffs() {
        CoeffRing::Zp2(p) => p.get(),
        other => {
            return Err(Error::RingMismatch(format!(
                "witt_q expects coefficients in Z/p^2, got {other}"
            )))
        }
    };
    let pu = p as u32;
    let sum: f64 = f.terms().iter().map(|t| t.coeff as f64).sum();
    // i128 is exact as long as every partial sum stays below 2^126
    if sum <= 1.0 || (pu as f64) * sum.log2() < 120.0 {
        let terms: Vec<(Monomial, i128)> = f
            .terms()
            .iter()
            .map(|t| (t.mono.clone(), t.coeff as i128))
            .collect();
        Ok(q_from_lift_i128(terms, ring, pu))
    } else {
        let lift = IntPoly::lift(f);
        let q = lift
            .pow(pu)
            .sub(&lift.dilate(pu))
            .div_exact(p)
            .expect("f^p - f^(p) is divisible by p");
        Ok(q.reduce(ring))
    }
}

fn q_from_lift_i128(terms: Vec<(Monomial, i128)>, ring: &Arc<PolyRing>, p: u32) -> Poly {
    let n = ring.nvars();
    let mut full: HashMap<Monomial, i128> = HashMap::from([(Monomial::one(n), 1)]);
    for _ in 0..p {
        let mut next: HashMap<Monomial, i128> = HashMap::with_capacity(full.len() * terms.len());
        for (m, v) in &full {
            for (t, w) in &terms {
                *next.entry(m.mul(t)).or_insert(0) += v * w;
            }
        }
        full = next;
    }
    for (m, v) in &terms {
        *full.entry(m.scaled(p)).or_insert(0) -= v.pow(p);
    }
    let modulus = ring.coeffs().size() as i128;
    Poly::from_terms(
        ring,
        full.into_iter().map(|(m, v)| {
            debug_assert_eq!(v % p as i128, 0);
            (m, (v / p as i128).rem_euclid(modulus) as u64)
        }),
    )
}
