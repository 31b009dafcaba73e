//! Exact arithmetic in `Z/p`, `Z/p^2` and `F_{p^e}`.
//!
//! Elements are plain `u64` canonical representatives interpreted by a
//! [`CoeffRing`]. For `F_{p^e}` the representative packs the coefficient
//! vector of the element in the power basis as base-`p` digits, so
//! equality and hashing are structural.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational prime `2 <= p <= 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub const MAX: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..=Self::MAX).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The finite field `F_p[t]/(μ)` for a monic irreducible `μ` of degree `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqField {
    p: Prime,
    degree: usize,
    /// Non-leading coefficients `μ_0, …, μ_{e-1}` of the monic minimal polynomial.
    minpoly: Vec<u64>,
    order: u64,
    symbol: String,
}

impl FqField {
    pub const MAX_DEGREE: usize = 8;
    pub const DEFAULT_SYMBOL: &'static str = "a";

    /// Builds `F_{p^e}` from the first irreducible monic polynomial of degree
    /// `e`, ordering candidates by the integer `μ_0 + μ_1 p + … + μ_{e-1} p^{e-1}`.
    pub fn new(p: Prime, degree: usize) -> Result<Self> {
        let order = Self::check_degree(p, degree)?;
        let pp = p.get();
        let count = order;
        for idx in 0..count {
            let mut digits = Vec::with_capacity(degree);
            let mut r = idx;
            for _ in 0..degree {
                digits.push(r % pp);
                r /= pp;
            }
            if is_irreducible(&digits, pp) {
                return Ok(FqField {
                    p,
                    degree,
                    minpoly: digits,
                    order,
                    symbol: Self::DEFAULT_SYMBOL.to_string(),
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Builds `F_{p^e}` from an explicit monic minimal polynomial, given by its
    /// full coefficient list `[μ_0, …, μ_{e-1}, 1]` (low degree first).
    pub fn with_minpoly(p: Prime, coeffs: &[u64]) -> Result<Self> {
        let pp = p.get();
        let coeffs: Vec<u64> = coeffs.iter().map(|c| c % pp).collect();
        let degree = coeffs.len().saturating_sub(1);
        let shown = format_dense(&coeffs);
        if degree == 0 || coeffs[degree] != 1 {
            return Err(Error::NotIrreducible(shown, pp));
        }
        let order = Self::check_degree(p, degree)?;
        let lower = coeffs[..degree].to_vec();
        if !is_irreducible(&lower, pp) {
            return Err(Error::NotIrreducible(shown, pp));
        }
        Ok(FqField {
            p,
            degree,
            minpoly: lower,
            order,
            symbol: Self::DEFAULT_SYMBOL.to_string(),
        })
    }

    /// Renames the printed generator of the power basis.
    pub fn with_symbol(mut self, symbol: &str) -> Self {
        self.symbol = symbol.to_string();
        self
    }

    fn check_degree(p: Prime, degree: usize) -> Result<u64> {
        if degree == 0 || degree > Self::MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let mut order: u64 = 1;
        for _ in 0..degree {
            order = order
                .checked_mul(p.get())
                .filter(|&o| o < (1u64 << 63))
                .ok_or(Error::DegreeOutOfRange(degree))?;
        }
        Ok(order)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// Full coefficient list of the minimal polynomial, low degree first.
    pub fn minpoly(&self) -> Vec<u64> {
        let mut v = self.minpoly.clone();
        v.push(1);
        v
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let p = self.p.get();
        let mut r = a;
        (0..self.degree)
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect()
    }

    pub fn pack(&self, digits: &[u64]) -> u64 {
        let p = self.p.get();
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + (d % p))
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.p.get();
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.pack(&s)
    }

    fn neg(&self, a: u64) -> u64 {
        let p = self.p.get();
        let d: Vec<u64> = self.digits(a).iter().map(|&x| (p - x) % p).collect();
        self.pack(&d)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p.get();
        let e = self.degree;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        // t^e = -(μ_0 + … + μ_{e-1} t^{e-1})
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.minpoly.iter().enumerate() {
                let idx = k - e + i;
                prod[idx] = (prod[idx] + p - mul_mod(c, m, p)) % p;
            }
        }
        prod.truncate(e);
        self.pack(&prod)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn format(&self, a: u64) -> String {
        let d = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.symbol.clone(),
                _ => format!("{}^{}", self.symbol, i),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

fn format_dense(coeffs: &[u64]) -> String {
    let v: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Remainder of `num` modulo a monic polynomial given by all its coefficients.
fn dense_rem(num: &[u64], monic: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let d = monic.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if c != 0 {
            for (i, &m) in monic.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(c, m, p)) % p;
            }
        }
        r.pop();
    }
    r
}

/// Brute-force factor search: is `t^e + Σ lower_i t^i` irreducible over `F_p`?
fn is_irreducible(lower: &[u64], p: u64) -> bool {
    let e = lower.len();
    if e == 1 {
        return true;
    }
    let mut full = lower.to_vec();
    full.push(1);
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                cand.push(r % p);
                r /= p;
            }
            cand.push(1);
            if dense_rem(&full, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Coefficient ring of a polynomial: `F_p`, `Z/p^2`, or `F_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Fp(Prime),
    Zp2(Prime),
    Fq(Arc<FqField>),
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Fp(p) => write!(f, "Fp({p})"),
            CoeffRing::Zp2(p) => write!(f, "Zp2({p})"),
            CoeffRing::Fq(k) => write!(f, "Fq({},{})", k.prime(), k.degree()),
        }
    }
}

impl CoeffRing {
    pub fn fq(field: FqField) -> Self {
        CoeffRing::Fq(Arc::new(field))
    }

    pub fn prime(&self) -> Prime {
        match self {
            CoeffRing::Fp(p) | CoeffRing::Zp2(p) => *p,
            CoeffRing::Fq(k) => k.prime(),
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.prime().get()
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::Zp2(_))
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        match self {
            CoeffRing::Fp(p) => p.get(),
            CoeffRing::Zp2(p) => p.get() * p.get(),
            CoeffRing::Fq(k) => k.order(),
        }
    }

    /// Dimension over `F_p` of the ring reduced modulo `p`.
    pub fn degree_over_fp(&self) -> usize {
        match self {
            CoeffRing::Fp(_) | CoeffRing::Zp2(_) => 1,
            CoeffRing::Fq(k) => k.degree(),
        }
    }

    /// `R/pR`: `F_p` for `Z/p^2`, the ring itself otherwise.
    pub fn residue_field(&self) -> CoeffRing {
        match self {
            CoeffRing::Zp2(p) => CoeffRing::Fp(*p),
            other => other.clone(),
        }
    }

    pub fn zero(&self) -> u64 {
        0
    }
    pub fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn modulus(&self) -> u64 {
        match self {
            CoeffRing::Fp(p) => p.get(),
            CoeffRing::Zp2(p) => p.get() * p.get(),
            CoeffRing::Fq(k) => k.order(),
        }
    }

    pub fn is_valid(&self, a: u64) -> bool {
        a < self.modulus()
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        let m = match self {
            CoeffRing::Fq(k) => k.prime().get(),
            _ => self.modulus(),
        };
        (n.rem_euclid(m as i64)) as u64
    }

    pub fn from_u128(&self, n: u128) -> u64 {
        let m = match self {
            CoeffRing::Fq(k) => k.prime().get(),
            _ => self.modulus(),
        };
        (n % m as u128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            CoeffRing::Fq(k) => k.add(a, b),
            _ => {
                let m = self.modulus();
                let s = a + b;
                if s >= m {
                    s - m
                } else {
                    s
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match self {
            CoeffRing::Fq(k) => k.neg(a),
            _ => {
                if a == 0 {
                    0
                } else {
                    self.modulus() - a
                }
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            CoeffRing::Fq(k) => k.mul(a, b),
            _ => mul_mod(a, b, self.modulus()),
        }
    }

    pub fn pow(&self, a: u64, exp: u64) -> u64 {
        match self {
            CoeffRing::Fq(k) => k.pow(a, exp),
            _ => pow_mod(a, exp, self.modulus()),
        }
    }

    /// Absolute Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p())
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: u64) -> Option<u64> {
        match self {
            CoeffRing::Fp(p) => (a != 0).then(|| pow_mod(a, p.get() - 2, p.get())),
            CoeffRing::Zp2(p) => (a % p.get() != 0).then(|| {
                let m = self.modulus();
                // φ(p^2) = p(p-1)
                pow_mod(a, p.get() * (p.get() - 1) - 1, m)
            }),
            CoeffRing::Fq(k) => (a != 0).then(|| k.pow(a, k.order() - 2)),
        }
    }

    pub fn is_unit(&self, a: u64) -> bool {
        match self {
            CoeffRing::Zp2(p) => a % p.get() != 0,
            _ => a != 0,
        }
    }

    /// The reduction map `R → R/pR`.
    pub fn reduce_mod_p(&self, a: u64) -> u64 {
        match self {
            CoeffRing::Zp2(p) => a % p.get(),
            _ => a,
        }
    }

    /// Coordinates over `F_p` after reduction mod `p` (length `degree_over_fp`).
    pub fn fp_coords(&self, a: u64) -> Vec<u64> {
        match self {
            CoeffRing::Fq(k) => k.digits(a),
            _ => vec![self.reduce_mod_p(a)],
        }
    }

    pub fn from_fp_coords(&self, coords: &[u64]) -> u64 {
        match self {
            CoeffRing::Fq(k) => k.pack(coords),
            _ => coords.first().copied().unwrap_or(0) % self.p(),
        }
    }

    /// All elements in canonical order (only sensible for small rings).
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.size()
    }

    /// Can an element of `self` be read as an element of `target`?
    /// `F_p ⊂ F_{p^e}` via constants; `F_q` only into the same field.
    pub fn embeds_into(&self, target: &CoeffRing) -> bool {
        match (self, target) {
            (CoeffRing::Fp(p), CoeffRing::Fp(q)) => p == q,
            (CoeffRing::Fp(p), CoeffRing::Fq(k)) => *p == k.prime(),
            (CoeffRing::Fq(a), CoeffRing::Fq(b)) => a == b,
            (CoeffRing::Zp2(p), CoeffRing::Zp2(q)) => p == q,
            _ => false,
        }
    }

    /// Reads `a ∈ self` in `target`; caller checks [`embeds_into`](Self::embeds_into).
    pub fn embed(&self, a: u64, _target: &CoeffRing) -> u64 {
        // F_p constants keep their representative in the packed power basis.
        a
    }

    pub fn format(&self, a: u64) -> String {
        match self {
            CoeffRing::Fq(k) => k.format(a),
            _ => a.to_string(),
        }
    }

    pub fn fq_field(&self) -> Option<&Arc<FqField>> {
        match self {
            CoeffRing::Fq(k) => Some(k),
            _ => None,
        }
    }
}

/// A coefficient-ring element carrying its ring tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    ring: CoeffRing,
    value: u64,
}

impl Residue {
    pub fn new(ring: CoeffRing, value: u64) -> Result<Self> {
        if !ring.is_valid(value) {
            return Err(Error::RingMismatch(format!(
                "{value} is not a canonical representative in {ring}"
            )));
        }
        Ok(Residue { ring, value })
    }

    pub fn from_i64(ring: CoeffRing, n: i64) -> Self {
        let value = ring.from_i64(n);
        Residue { ring, value }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same(&self, other: &Residue) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.same(other)?;
        Ok(Residue {
            ring: self.ring.clone(),
            value: self.ring.add(self.value, other.value),
        })
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.same(other)?;
        Ok(Residue {
            ring: self.ring.clone(),
            value: self.ring.mul(self.value, other.value),
        })
    }

    pub fn pow(&self, exp: u64) -> Residue {
        Residue {
            ring: self.ring.clone(),
            value: self.ring.pow(self.value, exp),
        }
    }

    pub fn reduce_mod_p(&self) -> Residue {
        Residue {
            ring: self.ring.residue_field(),
            value: self.ring.reduce_mod_p(self.value),
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(self.value))
    }
}

/// The Witt addition polynomial `P = ((X+Y)^p − X^p − Y^p)/p` over `Z`,
/// stored as the coefficients of `X^i Y^{p−i}` for `i = 1, …, p−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittP {
    p: Prime,
    coeffs: Vec<BigUint>,
}

/// Builds `P = Σ_{i=1}^{p−1} (p−1)!/(i!(p−i)!) X^i Y^{p−i}`.
pub fn witt_p(p: Prime) -> WittP {
    let pp = p.get();
    let mut coeffs = Vec::with_capacity(pp as usize - 1);
    // binom(p, i)/p computed from binom(p, i) = binom(p, i-1) (p-i+1)/i
    let mut binom = BigUint::one();
    let big_p = BigUint::from(pp);
    for i in 1..pp {
        binom = binom * BigUint::from(pp - i + 1) / BigUint::from(i);
        coeffs.push(&binom / &big_p);
    }
    WittP { p, coeffs }
}

impl WittP {
    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Coefficient of `X^i Y^{p−i}`; zero outside `1..p`.
    pub fn coefficient(&self, i: u64) -> BigUint {
        if i == 0 || i >= self.p.get() {
            BigUint::zero()
        } else {
            self.coeffs[(i - 1) as usize].clone()
        }
    }

    /// Terms `(i, coefficient)` of `X^i Y^{p−i}`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.coeffs.iter().enumerate().map(|(k, c)| (k as u64 + 1, c))
    }

    /// Coefficients reduced into `ring` (its additive group has exponent dividing `p^2`).
    pub fn reduced_coeffs(&self, ring: &CoeffRing) -> Vec<u64> {
        let m = match ring {
            CoeffRing::Zp2(p) => p.get() * p.get(),
            other => other.p(),
        };
        let bm = BigUint::from(m);
        self.coeffs
            .iter()
            .map(|c| (c % &bm).to_u64().unwrap())
            .collect()
    }

    /// `P(a, b)` evaluated in `ring`.
    pub fn eval(&self, ring: &CoeffRing, a: u64, b: u64) -> u64 {
        let p = self.p.get();
        self.reduced_coeffs(ring)
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &c)| {
                let i = k as u64 + 1;
                let c = ring.from_u128(c as u128);
                let t = ring.mul(c, ring.mul(ring.pow(a, i), ring.pow(b, p - i)));
                ring.add(acc, t)
            })
    }
}

/// Canonical FW-derivation `Z/p^2 → F_p`, `a ↦ (ã − ã^p)/p mod p` for a lift `ã`.
pub fn w_base(a: &Residue) -> Result<Residue> {
    match a.ring() {
        CoeffRing::Zp2(p) => {
            let v = w_base_value(p.get(), a.value());
            Ok(Residue {
                ring: CoeffRing::Fp(*p),
                value: v,
            })
        }
        other => Err(Error::RingMismatch(format!(
            "w_base expects an element of Z/p^2, got {other}"
        ))),
    }
}

/// `(ã − ã^p)/p mod p` for an arbitrary integer lift `ã` of a residue mod `p^2`.
pub fn w_base_value(p: u64, lift: u64) -> u64 {
    let m = p * p;
    let a = lift % m;
    let ap = pow_mod(a, p, m);
    let diff = (a + m - ap) % m;
    debug_assert_eq!(diff % p, 0);
    (diff / p) % p
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    /// ((X+Y)^p − X^p − Y^p)/p by expanding binomials one factor at a time.
    fn expand_oracle(p: u64) -> BTreeMap<u64, BigInt> {
        let mut poly: BTreeMap<u64, BigInt> = BTreeMap::new(); // exponent of X
        poly.insert(0, BigInt::one());
        for _ in 0..p {
            let mut next: BTreeMap<u64, BigInt> = BTreeMap::new();
            for (&i, c) in &poly {
                *next.entry(i + 1).or_default() += c;
                *next.entry(i).or_default() += c;
            }
            poly = next;
        }
        *poly.get_mut(&0).unwrap() -= 1;
        *poly.get_mut(&p).unwrap() -= 1;
        poly.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                assert!((&c % BigInt::from(p)).is_zero());
                (i, c / BigInt::from(p))
            })
            .collect()
    }

    #[test]
    fn witt_p_small_primes() {
        let w2 = witt_p(prime(2));
        assert_eq!(w2.terms().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>(), vec![(1, BigUint::one())]);
        let w3 = witt_p(prime(3));
        let t: Vec<_> = w3.terms().map(|(i, c)| (i, c.to_u64().unwrap())).collect();
        assert_eq!(t, vec![(1, 1), (2, 1)]);
        assert_eq!(witt_p(prime(5)).coefficient(1), BigUint::one());
    }

    #[test]
    fn witt_p_matches_binomial_expansion() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let got: BTreeMap<u64, BigInt> = witt_p(prime(p))
                .terms()
                .map(|(i, c)| (i, BigInt::from(c.clone())))
                .collect();
            assert_eq!(got, expand_oracle(p), "p = {p}");
            assert!(got.values().all(|c| c > &BigInt::zero()));
        }
    }

    #[test]
    fn w_base_values() {
        for p in [2u64, 3, 5, 7] {
            let r = CoeffRing::Zp2(prime(p));
            let wb = |a: u64| w_base(&Residue::new(r.clone(), a).unwrap()).unwrap().value();
            assert_eq!(wb(p), 1);
            assert_eq!(wb(1), 0);
            assert_eq!(wb(0), 0);
        }
    }

    #[test]
    fn w_base_independent_of_lift() {
        for p in [2u64, 3, 5, 7] {
            for a in 0..p * p {
                let base = w_base_value(p, a);
                for k in 1..4 {
                    let lift = a + k * p * p;
                    let big = BigInt::from(lift);
                    let v = (&big - big.pow(p as u32)) / BigInt::from(p);
                    let v = v.mod_floor_u(p);
                    assert_eq!(base, v);
                }
            }
        }
    }

    trait ModFloor {
        fn mod_floor_u(&self, m: u64) -> u64;
    }
    impl ModFloor for BigInt {
        fn mod_floor_u(&self, m: u64) -> u64 {
            let m = BigInt::from(m);
            let r = ((self % &m) + &m) % &m;
            r.to_u64().unwrap()
        }
    }

    #[test]
    fn w_base_is_fw_derivation_exhaustive() {
        for p in [2u64, 3, 5, 7] {
            let r = CoeffRing::Zp2(prime(p));
            let wp = witt_p(prime(p));
            let fp = CoeffRing::Fp(prime(p));
            let w_p = w_base_value(p, p);
            for a in 0..p * p {
                for b in 0..p * p {
                    let lhs = w_base_value(p, r.add(a, b));
                    let pab = wp.eval(&r, a, b) % p;
                    let rhs = fp.sub(
                        fp.add(w_base_value(p, a), w_base_value(p, b)),
                        fp.mul(pab, w_p),
                    );
                    assert_eq!(lhs, rhs, "additivity p={p} a={a} b={b}");
                    let lhs = w_base_value(p, r.mul(a, b));
                    let rhs = fp.add(
                        fp.mul(r.pow(b, p) % p, w_base_value(p, a)),
                        fp.mul(r.pow(a, p) % p, w_base_value(p, b)),
                    );
                    assert_eq!(lhs, rhs, "leibniz p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn primality_checks() {
        assert!(Prime::new(1).is_err());
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert!(Prime::new(2_147_483_647).is_ok());
        assert!(matches!(Prime::new(1 << 32), Err(Error::PrimeOutOfRange(_))));
    }

    #[test]
    fn default_minimal_polynomials() {
        let f4 = FqField::new(prime(2), 2).unwrap();
        assert_eq!(f4.minpoly(), vec![1, 1, 1]);
        let f9 = FqField::new(prime(3), 2).unwrap();
        assert_eq!(f9.minpoly(), vec![1, 0, 1]);
        let f8 = FqField::new(prime(2), 3).unwrap();
        assert_eq!(f8.minpoly(), vec![1, 1, 0, 1]);
        assert!(FqField::with_minpoly(prime(3), &[2, 0, 1]).is_err()); // t^2 - 1
        assert!(FqField::with_minpoly(prime(3), &[2, 1, 1]).is_ok());
        assert!(FqField::new(prime(2), 9).is_err());
    }

    fn check_field_axioms(k: &CoeffRing) {
        let q = k.size();
        let p = k.p();
        let mut frob_image = vec![false; q as usize];
        for a in 0..q {
            assert_eq!(k.add(a, k.neg(a)), 0);
            assert_eq!(k.mul(a, 1), a);
            if a != 0 {
                let inv = k.inv(a).unwrap();
                assert_eq!(k.mul(a, inv), 1, "inverse of {a} in F_{q}");
            }
            frob_image[k.frobenius(a) as usize] = true;
            for b in 0..q {
                assert_eq!(k.add(a, b), k.add(b, a));
                assert_eq!(k.mul(a, b), k.mul(b, a));
                if q <= 27 {
                    for c in 0..q {
                        assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
                // Frobenius is additive in characteristic p
                assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
            }
        }
        assert!(frob_image.iter().all(|&x| x), "Frobenius not bijective on F_{q}");
        for a in 0..q {
            assert_eq!(k.pow(a, q), a);
        }
        assert_eq!(k.p(), p);
    }

    #[test]
    fn finite_field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let k = CoeffRing::fq(FqField::new(prime(p), e).unwrap());
            check_field_axioms(&k);
        }
        check_field_axioms(&CoeffRing::Fp(prime(7)));
    }

    #[test]
    fn zp2_units() {
        let r = CoeffRing::Zp2(prime(3));
        for a in 0..9 {
            match r.inv(a) {
                Some(b) => assert_eq!(r.mul(a, b), 1),
                None => assert_eq!(a % 3, 0),
            }
        }
    }

    #[test]
    fn fq_formatting() {
        let k = FqField::new(prime(3), 2).unwrap().with_symbol("g");
        assert_eq!(k.format(k.pack(&[1, 2])), "2*g+1");
        assert_eq!(k.format(0), "0");
        assert_eq!(k.format(k.pack(&[0, 1])), "g");
    }
}
