//! Sparse multivariate polynomials over [`CoeffRing`]s.

mod groebner;
mod witt;

pub use groebner::GroebnerBasis;
pub use witt::{frobenius_twist, witt_pair_correction, witt_q, witt_r, IntPoly};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modarith::CoeffRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex
    /// on the rest. Eliminates the first block.
    Elim(usize),
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u64, u64) = (
        a.iter().map(|&e| e as u64).sum(),
        b.iter().map(|&e| e as u64).sum(),
    );
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Elim(k) => {
                let k = k.min(a.0.len());
                grevlex_cmp(&a.0[..k], &b.0[..k]).then_with(|| grevlex_cmp(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// Exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scaled(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// The ambient ring `R[X_1, …, X_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    coeffs: CoeffRing,
    nvars: usize,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(coeffs: CoeffRing, nvars: usize, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            coeffs,
            nvars,
            order,
        })
    }

    pub fn grevlex(coeffs: CoeffRing, nvars: usize) -> Arc<Self> {
        Self::new(coeffs, nvars, MonomialOrder::Grevlex)
    }

    pub fn coeffs(&self) -> &CoeffRing {
        &self.coeffs
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: u64,
}

/// A polynomial: nonzero terms sorted by decreasing monomial order.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.ring.nvars);
        write!(f, "Poly[{}]({})", self.ring.coeffs, self.display(&names))
    }
}

/// `x1, …, xn`, used when no variable names are at hand.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u64) -> Self {
        Self::term(ring, Monomial::one(ring.nvars), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.coeffs.from_i64(n))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars, i), 1)
    }

    pub fn term(ring: &Arc<PolyRing>, mono: Monomial, coeff: u64) -> Self {
        debug_assert_eq!(mono.0.len(), ring.nvars);
        let terms = if coeff == 0 {
            Vec::new()
        } else {
            vec![Term { mono, coeff }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let c = &ring.coeffs;
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, v) in terms {
            debug_assert_eq!(m.0.len(), ring.nvars);
            let e = acc.entry(m).or_insert(0);
            *e = c.add(*e, v);
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|(mono, coeff)| Term { mono, coeff })
            .collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }
    pub fn coeff_ring(&self) -> &CoeffRing {
        &self.ring.coeffs
    }
    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// Constant coefficient.
    pub fn constant_coeff(&self) -> u64 {
        self.terms
            .last()
            .filter(|t| t.mono.is_one())
            .map_or(0, |t| t.coeff)
    }

    pub fn coeff_of(&self, m: &Monomial) -> u64 {
        self.terms
            .iter()
            .find(|t| &t.mono == m)
            .map_or(0, |t| t.coeff)
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Lowest total degree among terms.
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).min()
    }

    pub fn check_same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{}[{} vars] vs {}[{} vars]",
                self.ring.coeffs, self.ring.nvars, other.ring.coeffs, other.ring.nvars
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        assert!(
            self.ring == other.ring,
            "polynomial ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
        let c = &self.ring.coeffs;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let b = |v: u64| if negate_other { c.neg(v) } else { v };
        while i < self.terms.len() && j < other.terms.len() {
            let (s, o) = (&self.terms[i], &other.terms[j]);
            match order.cmp(&s.mono, &o.mono) {
                Ordering::Greater => {
                    out.push(s.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: o.mono.clone(),
                        coeff: b(o.coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = c.add(s.coeff, b(o.coeff));
                    if v != 0 {
                        out.push(Term {
                            mono: s.mono.clone(),
                            coeff: v,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|o| Term {
            mono: o.mono.clone(),
            coeff: b(o.coeff),
        }));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, k: u64) -> Poly {
        let c = &self.ring.coeffs;
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = c.mul(t.coeff, k);
                (v != 0).then(|| Term {
                    mono: t.mono.clone(),
                    coeff: v,
                })
            })
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `k · m · self` for a term `k·m`.
    pub fn mul_term(&self, m: &Monomial, k: u64) -> Poly {
        let c = &self.ring.coeffs;
        // Multiplying by a monomial preserves the order; zero divisors in Z/p^2 may drop terms.
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = c.mul(t.coeff, k);
                (v != 0).then(|| Term {
                    mono: t.mono.mul(m),
                    coeff: v,
                })
            })
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in variable `j`.
    pub fn derivative(&self, j: usize) -> Poly {
        let c = &self.ring.coeffs;
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mono.0[j];
            if e == 0 {
                return None;
            }
            let mut m = t.mono.clone();
            m.0[j] -= 1;
            let v = c.mul(t.coeff, c.from_i64(e as i64));
            Some((m, v))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Applies `f` to every coefficient, landing in `target` (same variable count).
    pub fn map_coeffs(&self, target: &Arc<PolyRing>, f: impl Fn(u64) -> u64) -> Poly {
        assert_eq!(target.nvars, self.ring.nvars);
        Poly::from_terms(
            target,
            self.terms.iter().map(|t| (t.mono.clone(), f(t.coeff))),
        )
    }

    /// Reinterprets the polynomial in `target`, which may differ in coefficient
    /// ring (`Z/p^2 → F_p` reduction, `F_p → Z/p^2` canonical lift,
    /// `F_p → F_{p^e}` embedding) and monomial order.
    pub fn change_ring(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if target.nvars != self.ring.nvars {
            return Err(Error::RingMismatch(format!(
                "{} vs {} variables",
                self.ring.nvars, target.nvars
            )));
        }
        let src = &self.ring.coeffs;
        let dst = &target.coeffs;
        let f: Box<dyn Fn(u64) -> u64> = match (src, dst) {
            (CoeffRing::Zp2(p), CoeffRing::Fp(q)) if p == q => Box::new(move |a| a % q.get()),
            (CoeffRing::Zp2(p), CoeffRing::Fq(k)) if *p == k.prime() => {
                let q = p.get();
                Box::new(move |a| a % q)
            }
            (CoeffRing::Fp(p), CoeffRing::Zp2(q)) if p == q => Box::new(|a| a),
            (s, d) if s.embeds_into(d) => Box::new(|a| a),
            _ => {
                return Err(Error::RingMismatch(format!(
                    "no coefficient map {src} -> {dst}"
                )))
            }
        };
        Ok(self.map_coeffs(target, f))
    }

    /// Reduction modulo `p` into `target` (coefficients of `target` must be `R/pR`).
    pub fn reduce_mod_p(&self, target: &Arc<PolyRing>) -> Poly {
        let c = self.ring.coeffs.clone();
        self.map_coeffs(target, move |a| c.reduce_mod_p(a))
    }

    /// Embeds into a ring with more variables: variable `i` goes to `positions[i]`.
    pub fn extend_vars(&self, target: &Arc<PolyRing>, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.ring.nvars);
        let n = target.nvars;
        Poly::from_terms(
            target,
            self.terms.iter().map(|t| {
                let mut e = vec![0u32; n];
                for (i, &x) in t.mono.0.iter().enumerate() {
                    e[positions[i]] += x;
                }
                (Monomial(e), t.coeff)
            }),
        )
    }

    /// Substitutes `images[i]` for variable `i`; all images live in one ring
    /// with the same coefficient ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars);
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return self.clone();
            }
        };
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(&target);
        for t in &self.terms {
            let mut prod = Poly::constant(&target, t.coeff);
            for (i, &e) in t.mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u64))
                    .clone();
                prod = &prod * &pw;
            }
            acc = &acc + &prod;
        }
        acc
    }

    /// Evaluates at a point whose coordinates lie in `field`; coefficients of
    /// `self` must embed into `field`.
    pub fn eval(&self, field: &CoeffRing, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.ring.nvars);
        let src = &self.ring.coeffs;
        let mut powers: Vec<Vec<u64>> = point.iter().map(|&x| vec![1, x]).collect();
        let mut acc = 0u64;
        for t in &self.terms {
            let mut v = src.embed(t.coeff, field);
            for (i, &e) in t.mono.0.iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = field.mul(*pw.last().unwrap(), point[i]);
                    pw.push(next);
                }
                v = field.mul(v, pw[e as usize]);
            }
            acc = field.add(acc, v);
        }
        acc
    }

    /// Makes the leading coefficient 1 (field coefficients only).
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => {
                let inv = self
                    .ring
                    .coeffs
                    .inv(t.coeff)
                    .expect("leading coefficient must be a unit");
                self.scale(inv)
            }
        }
    }

    /// Polynomial with variables permuted: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, target: &Arc<PolyRing>, perm: &[usize]) -> Poly {
        self.extend_vars(target, perm)
    }

    /// Uses only the variables with indices in `vars`.
    pub fn involves_only(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|t| t.mono.support().all(|i| vars.contains(&i)))
    }

    /// Renders in the input grammar: `3*x^2*y + y + 4`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let c = &self.ring.coeffs;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mono: Vec<String> = t
                    .mono
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].clone()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect();
                let coeff = c.format(t.coeff);
                let coeff = if coeff.contains('+') || coeff.contains('*') {
                    format!("({coeff})")
                } else {
                    coeff
                };
                if mono.is_empty() {
                    coeff
                } else if t.coeff == 1 {
                    mono.join("*")
                } else {
                    format!("{}*{}", coeff, mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let c = &self.ring.coeffs;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: c.neg(t.coeff),
                })
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.ring == rhs.ring, "polynomial ring mismatch");
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Poly::zero(&self.ring);
        }
        let c = &self.ring.coeffs;
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let v = c.mul(a.coeff, b.coeff);
                if v == 0 {
                    continue;
                }
                let e = acc.entry(a.mono.mul(&b.mono)).or_insert(0);
                *e = c.add(*e, v);
            }
        }
        Poly::from_terms(&self.ring, acc)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}
impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
