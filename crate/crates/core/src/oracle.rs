//! Brute-force construction of `FΩ¹_A` for small finite rings, straight from
//! generators `[a]` (one per element) and the two defining relation families.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fwcore::{present_fw, RingPresentation};
use crate::linalg::FpEchelon;
use crate::modarith::{witt_p, CoeffRing, Prime};
use crate::mpoly::{Monomial, Poly, PolyRing};

/// Default bound on `|A|` for the oracle.
pub const DEFAULT_MAX_SIZE: u64 = 81;

/// Bound for the integral (non-reduced) construction.
pub const INTEGRAL_MAX_SIZE: u64 = 32;

/// The additive group `⊕ Z/p^{k_i}·g_i` with element coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Additive {
    /// Exponents `k_i`.
    pub orders: Vec<u32>,
    /// Element index of each `g_i`.
    pub gens: Vec<u32>,
    /// Coordinates of every element.
    pub coords: Vec<Vec<u64>>,
}

/// A finite commutative ring of `p`-power order, stored by its tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    p: u64,
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: u32,
    one: u32,
    names: Vec<String>,
    additive: Option<Additive>,
}

impl FiniteRing {
    /// Builds a ring from its tables and verifies every ring axiom exhaustively.
    pub fn from_tables(
        p: Prime,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: u32,
        one: u32,
        names: Vec<String>,
    ) -> Result<Self> {
        let n = names.len();
        let ring = FiniteRing {
            p: p.get(),
            n,
            add,
            mul,
            zero,
            one,
            names,
            additive: None,
        };
        ring.verify()?;
        Ok(ring)
    }

    fn verify(&self) -> Result<()> {
        let n = self.n;
        let bad = |s: String| Err(Error::RingAxiom(s));
        if self.add.len() != n * n || self.mul.len() != n * n {
            return bad("tables must be |A| x |A|".into());
        }
        if self.add.iter().chain(&self.mul).any(|&x| x as usize >= n) {
            return bad("table entry out of range".into());
        }
        let mut m = n as u64;
        while m % self.p == 0 {
            m /= self.p;
        }
        if m != 1 {
            return bad(format!("order {n} is not a power of {}", self.p));
        }
        let (z, o) = (self.zero, self.one);
        for a in 0..n as u32 {
            if self.plus(a, z) != a || self.times(a, o) != a {
                return bad(format!("identity fails at {}", self.name(a)));
            }
            if !(0..n as u32).any(|b| self.plus(a, b) == z) {
                return bad(format!("{} has no additive inverse", self.name(a)));
            }
            for b in 0..n as u32 {
                if self.plus(a, b) != self.plus(b, a) || self.times(a, b) != self.times(b, a) {
                    return bad(format!("commutativity fails at ({}, {})", self.name(a), self.name(b)));
                }
                for c in 0..n as u32 {
                    let assoc_add = self.plus(self.plus(a, b), c) == self.plus(a, self.plus(b, c));
                    let assoc_mul = self.times(self.times(a, b), c) == self.times(a, self.times(b, c));
                    let distrib =
                        self.times(a, self.plus(b, c)) == self.plus(self.times(a, b), self.times(a, c));
                    if !(assoc_add && assoc_mul && distrib) {
                        return bad(format!(
                            "associativity or distributivity fails at ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ring `⊕ Z/p^{k_i} g_i` with `g_i g_j = Σ_l c_{ijl} g_l`.
    pub fn from_structure(
        p: Prime,
        orders: Vec<u32>,
        one: Vec<u64>,
        structure: Vec<Vec<Vec<u64>>>,
        element_name: impl Fn(&[u64]) -> String,
        max_size: u64,
    ) -> Result<Self> {
        let pv = p.get();
        let moduli: Vec<u64> = orders.iter().map(|&k| pv.pow(k)).collect();
        let total_exp: u32 = orders.iter().sum();
        let size = pv
            .checked_pow(total_exp)
            .filter(|&s| s <= max_size)
            .ok_or(Error::TooLarge {
                size: pv.saturating_pow(total_exp),
                bound: max_size,
            })?;
        let s = orders.len();
        // p^{k_i}·g_i·g_j must vanish for products to be well defined
        for i in 0..s {
            for j in 0..s {
                for l in 0..s {
                    if (moduli[i] % moduli[l]) * structure[i][j][l] % moduli[l] != 0
                        && moduli[i] < moduli[l]
                    {
                        return Err(Error::RingAxiom(format!(
                            "structure constant c[{i}][{j}][{l}] is not killed by the order of g_{i}"
                        )));
                    }
                }
            }
        }
        let n = size as usize;
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|mut idx| {
                moduli
                    .iter()
                    .map(|&m| {
                        let c = idx as u64 % m;
                        idx /= m as usize;
                        c
                    })
                    .collect()
            })
            .collect();
        let index = |c: &[u64]| -> u32 {
            let mut idx = 0u64;
            for (k, &m) in moduli.iter().enumerate().rev() {
                idx = idx * m + c[k] % m;
            }
            idx as u32
        };
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u64> = (0..s).map(|k| (coords[a][k] + coords[b][k]) % moduli[k]).collect();
                add[a * n + b] = index(&sum);
                let mut prod = vec![0u64; s];
                for i in 0..s {
                    if coords[a][i] == 0 {
                        continue;
                    }
                    for j in 0..s {
                        let ab = coords[a][i] * coords[b][j];
                        if ab == 0 {
                            continue;
                        }
                        for l in 0..s {
                            prod[l] = (prod[l] + ab % moduli[l] * structure[i][j][l]) % moduli[l];
                        }
                    }
                }
                mul[a * n + b] = index(&prod);
            }
        }
        let names = coords.iter().map(|c| element_name(c)).collect();
        let gens = (0..s)
            .map(|i| {
                let mut e = vec![0u64; s];
                e[i] = 1;
                index(&e)
            })
            .collect();
        let ring = FiniteRing {
            p: pv,
            n,
            add,
            mul,
            zero: 0,
            one: index(&one),
            names,
            additive: Some(Additive {
                orders,
                gens,
                coords,
            }),
        };
        ring.verify()?;
        Ok(ring)
    }

    /// Enumerates `A = R[X]/(f_1, …, f_m)` for the finite rings of this class.
    pub fn from_presentation(a: &RingPresentation, max_size: u64) -> Result<Self> {
        let (gens, orders, nf): (Vec<Poly>, Vec<u32>, Box<dyn Fn(&Poly) -> Vec<u64>>) =
            if a.is_mixed() {
                let gb = StrongBasis::new(a.ring(), a.relations())?;
                let (monos, orders) = gb.additive_basis()?;
                let ring = a.ring().clone();
                let gens = monos.iter().map(|m| Poly::term(&ring, m.clone(), 1)).collect();
                let nf = Box::new(move |f: &Poly| {
                    let r = gb.normal_form(f);
                    monos.iter().map(|m| r.coeff_of(m)).collect()
                });
                (gens, orders, nf)
            } else {
                let carrier = a.carrier()?;
                let ring = carrier.ring().clone();
                let coeffs = ring.coeffs().clone();
                let stair = if carrier.is_unit() {
                    Vec::new()
                } else {
                    carrier
                        .standard_monomials()
                        .ok_or_else(|| Error::Infinite("the ring has positive dimension".into()))?
                };
                let e = coeffs.degree_over_fp();
                let mut gens = Vec::new();
                for m in &stair {
                    for l in 0..e {
                        let mut v = vec![0; e];
                        v[l] = 1;
                        gens.push(Poly::term(&ring, m.clone(), coeffs.from_fp_coords(&v)));
                    }
                }
                let orders = vec![1; gens.len()];
                let nf = Box::new(move |f: &Poly| {
                    let r = carrier.normal_form(f);
                    stair
                        .iter()
                        .flat_map(|m| coeffs.fp_coords(r.coeff_of(m)))
                        .collect()
                });
                (gens, orders, nf)
            };
        let s = gens.len();
        let exp: u32 = orders.iter().sum();
        let p = a.prime().get();
        let size = p.saturating_pow(exp);
        if size > max_size {
            return Err(Error::TooLarge {
                size,
                bound: max_size,
            });
        }
        let ring = gens.first().map(|g| g.ring().clone());
        let one = match &ring {
            Some(r) => nf(&Poly::one(r)),
            None => Vec::new(),
        };
        let structure: Vec<Vec<Vec<u64>>> = (0..s)
            .map(|i| (0..s).map(|j| nf(&(&gens[i] * &gens[j]))).collect())
            .collect();
        let vars = a.vars().to_vec();
        let name = move |c: &[u64]| -> String {
            match &ring {
                None => "0".to_string(),
                Some(r) => {
                    let mut f = Poly::zero(r);
                    for (g, &k) in gens.iter().zip(c) {
                        f = &f + &g.scale(r.coeffs().from_u128(k as u128));
                    }
                    f.display(&vars)
                }
            }
        };
        Self::from_structure(a.prime(), orders, one, structure, name, max_size)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn additive(&self) -> Option<&Additive> {
        self.additive.as_ref()
    }

    #[inline]
    pub fn plus(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn times(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    /// `k·a` for a nonnegative integer `k`.
    pub fn smul(&self, k: u64, a: u32) -> u32 {
        let mut acc = self.zero;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.plus(acc, base);
            }
            base = self.plus(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(self.one, |acc, _| self.times(acc, a))
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        let mut k = 1;
        let mut x = self.one;
        while x != self.zero {
            x = self.plus(x, self.one);
            k += 1;
        }
        k
    }

    /// The same ring with element `a` renamed `perm[a]`.
    pub fn relabeled(&self, perm: &[u32]) -> Result<Self> {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (pa, pb) = (perm[a] as usize, perm[b] as usize);
                add[pa * n + pb] = perm[self.add[a * n + b] as usize];
                mul[pa * n + pb] = perm[self.mul[a * n + b] as usize];
            }
        }
        let mut names = vec![String::new(); n];
        for a in 0..n {
            names[perm[a] as usize] = self.names[a].clone();
        }
        let additive = self.additive.as_ref().map(|ad| {
            let mut coords = vec![Vec::new(); n];
            for a in 0..n {
                coords[perm[a] as usize] = ad.coords[a].clone();
            }
            Additive {
                orders: ad.orders.clone(),
                gens: ad.gens.iter().map(|&g| perm[g as usize]).collect(),
                coords,
            }
        });
        let ring = FiniteRing {
            p: self.p,
            n,
            add,
            mul,
            zero: perm[self.zero as usize],
            one: perm[self.one as usize],
            names,
            additive,
        };
        ring.verify()?;
        Ok(ring)
    }

    /// `P(a, b) = Σ binom(p,i)/p · a^i b^{p−i}` inside the ring.
    fn witt_pair(&self, coeffs: &[u64], pows: &[Vec<u32>], a: u32, b: u32) -> u32 {
        let p = self.p as usize;
        let mut acc = self.zero;
        for (k, &c) in coeffs.iter().enumerate() {
            let i = k + 1;
            let t = self.times(pows[a as usize][i], pows[b as usize][p - i]);
            acc = self.plus(acc, self.smul(c, t));
        }
        acc
    }

    fn witt_coeffs(&self) -> Vec<u64> {
        let ch = self.characteristic();
        witt_p(Prime::new(self.p).unwrap())
            .terms()
            .map(|(_, c)| (c % ch).to_u64().unwrap())
            .collect()
    }

    fn power_table(&self) -> Vec<Vec<u32>> {
        (0..self.n as u32)
            .map(|a| {
                let mut v = vec![self.one];
                for _ in 0..self.p {
                    v.push(self.times(*v.last().unwrap(), a));
                }
                v
            })
            .collect()
    }
}

/// `A/pA` as an `F_p`-space: a basis (as ring elements) and coordinates of every element.
#[derive(Debug, Clone)]
struct Residue {
    basis: Vec<u32>,
    coords: Vec<Vec<u32>>,
}

fn residue_space(a: &FiniteRing) -> Residue {
    let n = a.n;
    let p = a.p;
    let mut in_pa = vec![false; n];
    for x in 0..n as u32 {
        in_pa[a.smul(p, x) as usize] = true;
    }
    let pa: Vec<u32> = (0..n as u32).filter(|&x| in_pa[x as usize]).collect();
    // canonical coset representative: smallest element of x + pA
    let rep: Vec<u32> = (0..n as u32)
        .map(|x| pa.iter().map(|&y| a.plus(x, y)).min().unwrap())
        .collect();
    let mut coords: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    coords.insert(rep[a.zero as usize], Vec::new());
    let mut basis = Vec::new();
    for x in 0..n as u32 {
        let r = rep[x as usize];
        if coords.contains_key(&r) {
            continue;
        }
        basis.push(x);
        let old: Vec<(u32, Vec<u32>)> = coords.iter().map(|(k, v)| (*k, v.clone())).collect();
        coords.clear();
        for (y, c) in old {
            let mut shifted = y;
            for lambda in 0..p as u32 {
                let mut cc = c.clone();
                cc.push(lambda);
                coords.insert(rep[shifted as usize], cc);
                shifted = rep[a.plus(shifted, x) as usize];
            }
        }
    }
    let s = basis.len();
    let coords = (0..n)
        .map(|x| {
            let mut c = coords[&rep[x]].clone();
            c.resize(s, 0);
            c
        })
        .collect();
    Residue { basis, coords }
}

/// `FΩ¹_A` computed by brute force, as an `F_p`-space with its `A/pA`-action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalModule {
    pub dim: usize,
    /// `dim_{F_p} A/pA`.
    pub residue_dim: usize,
    /// Rank of the relation matrix.
    pub rank: usize,
    /// Number of free generators `ε_l·[a]` before relations.
    pub ncols: usize,
    /// Quotient basis, as classes `ε·[a]`.
    pub basis: Vec<String>,
    /// Representatives of the `F_p`-basis `ε_k` of `A/pA`.
    pub residue_basis: Vec<String>,
    /// `action[k][i][j]`: coordinate `i` of `ε_k` times basis vector `j`.
    pub action: Vec<Vec<Vec<u32>>>,
}

/// Largest quotient for which the action table is produced.
const ACTION_TABLE_LIMIT: usize = 64;

/// Builds `(A/pA)^{(A)}` over `F_p` and divides out, for all `a ≤ b` and every
/// basis element `ε` of `A/pA`, the rows `ε([a+b] − [a] − [b] + P(a,b)[p])`
/// and `ε([ab] − a^p[b] − b^p[a])`.
pub fn brute_fw(a: &FiniteRing, max_size: u64) -> Result<UniversalModule> {
    if a.n as u64 > max_size {
        return Err(Error::TooLarge {
            size: a.n as u64,
            bound: max_size,
        });
    }
    let n = a.n;
    let res = residue_space(a);
    let s = res.basis.len();
    let ncols = n * s;
    let pows = a.power_table();
    let wc = a.witt_coeffs();
    let p_elem = a.smul(a.p, a.one);
    let frob: Vec<u32> = (0..n).map(|x| pows[x][a.p as usize]).collect();

    // x·[c] with x ∈ A, written into columns (c, ·)
    let put = |row: &mut [u32], x: u32, c: u32, sign: u32| {
        let base = c as usize * s;
        for (l, &v) in res.coords[x as usize].iter().enumerate() {
            if v != 0 {
                row[base + l] = (row[base + l] + sign * v) % a.p as u32;
            }
        }
    };
    let neg = a.p as u32 - 1;
    let rows_for = |x: u32, y: u32| -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(2 * s);
        let pxy = a.witt_pair(&wc, &pows, x, y);
        for &e in &res.basis {
            let mut r = vec![0u32; ncols];
            put(&mut r, e, a.plus(x, y), 1);
            put(&mut r, e, x, neg);
            put(&mut r, e, y, neg);
            put(&mut r, a.times(e, pxy), p_elem, 1);
            out.push(r);
            let mut r = vec![0u32; ncols];
            put(&mut r, e, a.times(x, y), 1);
            put(&mut r, a.times(e, frob[x as usize]), y, neg);
            put(&mut r, a.times(e, frob[y as usize]), x, neg);
            out.push(r);
        }
        out
    };

    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|x| (x..n as u32).map(move |y| (x, y)))
        .collect();
    let mut echelon = FpEchelon::new(a.p, ncols);
    'outer: for chunk in pairs.chunks(256) {
        let rows: Vec<Vec<Vec<u32>>> = chunk.par_iter().map(|&(x, y)| rows_for(x, y)).collect();
        for r in rows.into_iter().flatten() {
            echelon.insert(r);
            if echelon.is_full() {
                break 'outer;
            }
        }
    }
    let free = echelon.free_columns();
    let dim = free.len();
    let label = |col: usize| -> String {
        let (c, l) = (col / s, col % s);
        format!("{}*[{}]", a.name(res.basis[l]), a.name(c as u32))
    };
    let mut action = Vec::new();
    if dim <= ACTION_TABLE_LIMIT {
        for &e in &res.basis {
            let mut m = vec![vec![0u32; dim]; dim];
            for (j, &col) in free.iter().enumerate() {
                let (c, l) = (col / s, col % s);
                let mut v = vec![0u32; ncols];
                put(&mut v, a.times(e, res.basis[l]), c as u32, 1);
                echelon.reduce(&mut v);
                for (i, &fc) in free.iter().enumerate() {
                    m[i][j] = v[fc];
                }
            }
            action.push(m);
        }
    }
    Ok(UniversalModule {
        dim,
        residue_dim: s,
        rank: echelon.rank(),
        ncols,
        basis: free.iter().map(|&c| label(c)).collect(),
        residue_basis: res.basis.iter().map(|&e| a.name(e).to_string()).collect(),
        action,
    })
}

/// `FΩ¹_A` as an abelian group, built without first dividing by `p`:
/// the free `A`-module on `[a]` over `Z/p^K` modulo both families and the
/// additive torsion. Returns the exponents `e_i` with quotient `⊕ Z/p^{e_i}`.
pub fn brute_fw_integral(a: &FiniteRing) -> Result<Vec<u32>> {
    let ad = a
        .additive
        .as_ref()
        .ok_or_else(|| Error::Unsupported("integral construction needs an additive decomposition".into()))?;
    if a.n as u64 > INTEGRAL_MAX_SIZE {
        return Err(Error::TooLarge {
            size: a.n as u64,
            bound: INTEGRAL_MAX_SIZE,
        });
    }
    let n = a.n;
    let s = ad.orders.len();
    let kmax = ad.orders.iter().copied().max().unwrap_or(1);
    let modulus = a.p.pow(kmax);
    let ncols = n * s;
    let pows = a.power_table();
    let wc = a.witt_coeffs();
    let p_elem = a.smul(a.p, a.one);
    let frob: Vec<u32> = (0..n).map(|x| pows[x][a.p as usize]).collect();
    // coordinate l of g_l lives in Z/p^{k_l} ⊂ Z/p^K via multiplication by p^{K−k_l}
    let put = |row: &mut [u64], x: u32, c: u32, sign: u64| {
        for (l, &v) in ad.coords[x as usize].iter().enumerate() {
            let idx = c as usize * s + l;
            row[idx] = (row[idx] + sign * v % modulus) % modulus;
        }
    };
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for c in 0..n {
        for l in 0..s {
            let mut r = vec![0u64; ncols];
            r[c * s + l] = a.p.pow(ad.orders[l]) % modulus;
            rows.push(r);
        }
    }
    let neg = modulus - 1;
    for x in 0..n as u32 {
        for y in x..n as u32 {
            let pxy = a.witt_pair(&wc, &pows, x, y);
            for &g in &ad.gens {
                let mut r = vec![0u64; ncols];
                put(&mut r, g, a.plus(x, y), 1);
                put(&mut r, g, x, neg);
                put(&mut r, g, y, neg);
                put(&mut r, a.times(g, pxy), p_elem, 1);
                rows.push(r);
                let mut r = vec![0u64; ncols];
                put(&mut r, g, a.times(x, y), 1);
                put(&mut r, a.times(g, frob[x as usize]), y, neg);
                put(&mut r, a.times(g, frob[y as usize]), x, neg);
                rows.push(r);
            }
        }
    }
    Ok(smith_exponents(a.p, kmax, rows, ncols))
}

fn valuation(x: u64, p: u64, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    let mut y = x;
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid; a is a unit mod m
    let (mut t, mut new_t, mut r, mut new_r) = (0i128, 1i128, m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(m as i128) as u64
}

/// Invariant factors of `(Z/p^K)^{ncols} / rowspan`, as exponents `e` with a
/// summand `Z/p^e` each (zero summands are dropped).
fn smith_exponents(p: u64, k: u32, mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<u32> {
    let m = p.pow(k);
    let mut out = Vec::new();
    let mut active_cols: Vec<usize> = (0..ncols).collect();
    let mut r0 = 0;
    loop {
        // entry of smallest valuation in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(r0) {
            for (ci, &c) in active_cols.iter().enumerate() {
                let v = valuation(row[c], p, k);
                if v < k && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, ci));
                }
            }
        }
        let Some((v, i, ci)) = best else { break };
        let c = active_cols.remove(ci);
        rows.swap(r0, i);
        let piv = rows[r0][c];
        let unit = inv_mod(piv / p.pow(v), m);
        let prow: Vec<u64> = rows[r0].iter().map(|&x| x * unit % m).collect(); // pivot now p^v
        for row in rows.iter_mut().skip(r0 + 1) {
            let f = row[c] / p.pow(v);
            if row[c] == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = (*x + m - f % m * y % m) % m;
            }
        }
        // column operations clear the rest of the pivot row without changing the quotient
        out.push(v);
        r0 += 1;
    }
    let mut exps: Vec<u32> = out.into_iter().filter(|&v| v > 0).collect();
    exps.extend(std::iter::repeat_n(k, active_cols.len()));
    exps.sort_unstable();
    exps
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub order: usize,
    pub brute_dim: usize,
    pub presented_dim: u64,
    pub matches: bool,
    pub module: UniversalModule,
}

/// Compares the brute-force module with the presentation pipeline on a finite ring.
pub fn cross_check(a: &RingPresentation, max_size: u64) -> Result<CrossCheck> {
    let ring = FiniteRing::from_presentation(a, max_size)?;
    let brute = brute_fw(&ring, max_size)?;
    let presented = present_fw(a)?.fp_dimension()?;
    Ok(CrossCheck {
        order: ring.size(),
        brute_dim: brute.dim,
        presented_dim: presented,
        matches: brute.dim as u64 == presented,
        module: brute,
    })
}

/// Strong Gröbner basis over the chain ring `Z/p^2`.
#[derive(Debug, Clone)]
struct StrongBasis {
    ring: Arc<PolyRing>,
    p: u64,
    basis: Vec<Poly>,
}

impl StrongBasis {
    fn val(&self, c: u64) -> u32 {
        u32::from(c % self.p == 0)
    }

    fn lead_val(&self, f: &Poly) -> u32 {
        self.val(f.leading_coeff())
    }

    /// `x` with `x·d = c` in `Z/p^2`, if it exists.
    fn divide(&self, c: u64, d: u64) -> Option<u64> {
        let m = self.p * self.p;
        let (vc, vd) = (valuation(c, self.p, 2), valuation(d, self.p, 2));
        if vd > vc || vd >= 2 {
            return None;
        }
        let pv = self.p.pow(vd);
        Some(c / pv * inv_mod(d / pv % m, m) % m)
    }

    /// Scales so that the leading coefficient is `1` or `p`.
    fn normalize(&self, f: &Poly) -> Poly {
        let lc = f.leading_coeff();
        let v = self.val(lc);
        let m = self.p * self.p;
        let u = lc / self.p.pow(v);
        f.scale(inv_mod(u, m))
    }

    fn reducer(&self, t: &crate::mpoly::Term) -> Option<&Poly> {
        let vc = self.val(t.coeff);
        self.basis.iter().find(|g| {
            g.leading_monomial().unwrap().divides(&t.mono) && self.lead_val(g) <= vc
        })
    }

    /// Removes every term that is divisible by a leading term.
    fn reduce(&self, f: &Poly) -> Poly {
        let mut work = f.clone();
        let mut rest: Vec<(Monomial, u64)> = Vec::new();
        while let Some(t) = work.leading_term().cloned() {
            match self.reducer(&t) {
                Some(g) => {
                    let lt = g.leading_term().unwrap();
                    let x = self.divide(t.coeff, lt.coeff).unwrap();
                    work = &work - &g.mul_term(&lt.mono.quotient(&t.mono), x);
                }
                None => {
                    work = &work - &Poly::term(&self.ring, t.mono.clone(), t.coeff);
                    rest.push((t.mono, t.coeff));
                }
            }
        }
        Poly::from_terms(&self.ring, rest)
    }

    fn spoly(&self, f: &Poly, g: &Poly) -> Poly {
        let (lf, lg) = (f.leading_term().unwrap(), g.leading_term().unwrap());
        let l = lf.mono.lcm(&lg.mono);
        let c = self.p.pow(self.val(lf.coeff).max(self.val(lg.coeff)));
        let a = f.mul_term(&lf.mono.quotient(&l), self.divide(c, lf.coeff).unwrap());
        let b = g.mul_term(&lg.mono.quotient(&l), self.divide(c, lg.coeff).unwrap());
        &a - &b
    }

    fn new(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Self> {
        let p = match ring.coeffs() {
            CoeffRing::Zp2(p) => p.get(),
            other => return Err(Error::RingMismatch(format!("strong basis over Z/p^2, got {other}"))),
        };
        let mut sb = StrongBasis {
            ring: ring.clone(),
            p,
            basis: Vec::new(),
        };
        let mut pending: Vec<Poly> = gens.to_vec();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        loop {
            if let Some(f) = pending.pop() {
                let r = sb.reduce(&f);
                if r.is_zero() {
                    continue;
                }
                let r = sb.normalize(&r);
                if sb.lead_val(&r) == 1 {
                    pending.push(r.scale(p));
                }
                let k = sb.basis.len();
                pairs.extend((0..k).map(|i| (i, k)));
                sb.basis.push(r);
                continue;
            }
            let Some((i, j)) = pairs.pop() else { break };
            let s = sb.spoly(&sb.basis[i], &sb.basis[j]);
            pending.push(s);
        }
        // minimal strong basis
        let all = std::mem::take(&mut sb.basis);
        let mut kept: Vec<Poly> = Vec::new();
        for (i, g) in all.iter().enumerate() {
            let (lm, v) = (g.leading_monomial().unwrap(), sb.lead_val(g));
            let dominated = all.iter().enumerate().any(|(j, h)| {
                let (hm, hv) = (h.leading_monomial().unwrap(), sb.lead_val(h));
                j != i && hm.divides(lm) && hv <= v && (hm != lm || hv != v || j < i)
            });
            if !dominated {
                kept.push(g.clone());
            }
        }
        sb.basis = kept;
        Ok(sb)
    }

    /// Canonical representative: coefficients in `[0, p)` on monomials divisible
    /// only by leading terms with coefficient `p`, zero on monomials divisible by
    /// a unit leading term.
    fn normal_form(&self, f: &Poly) -> Poly {
        let mut work = f.clone();
        let mut out: Vec<(Monomial, u64)> = Vec::new();
        while let Some(t) = work.leading_term().cloned() {
            let unit = self
                .basis
                .iter()
                .find(|g| self.lead_val(g) == 0 && g.leading_monomial().unwrap().divides(&t.mono));
            if let Some(g) = unit {
                let lt = g.leading_term().unwrap();
                let x = self.divide(t.coeff, lt.coeff).unwrap();
                work = &work - &g.mul_term(&lt.mono.quotient(&t.mono), x);
                continue;
            }
            let torsion = self
                .basis
                .iter()
                .find(|g| g.leading_monomial().unwrap().divides(&t.mono));
            if let Some(g) = torsion {
                let hi = t.coeff / self.p * self.p;
                if hi != 0 {
                    let lt = g.leading_term().unwrap();
                    let x = self.divide(hi, lt.coeff).unwrap();
                    work = &work - &g.mul_term(&lt.mono.quotient(&t.mono), x);
                }
            }
            let c = work.coeff_of(&t.mono);
            if c != 0 {
                work = &work - &Poly::term(&self.ring, t.mono.clone(), c);
                out.push((t.mono, c));
            }
        }
        Poly::from_terms(&self.ring, out)
    }

    /// Monomials spanning `A` additively, with exponent 2 (free over `Z/p^2`)
    /// or 1 (killed by `p`).
    fn additive_basis(&self) -> Result<(Vec<Monomial>, Vec<u32>)> {
        let n = self.ring.nvars();
        let units: Vec<&Monomial> = self
            .basis
            .iter()
            .filter(|g| self.lead_val(g) == 0)
            .map(|g| g.leading_monomial().unwrap())
            .collect();
        if units.iter().any(|m| m.is_one()) {
            return Ok((Vec::new(), Vec::new()));
        }
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                units
                    .iter()
                    .filter(|m| m.support().all(|j| j == i))
                    .map(|m| m.0[i])
                    .min()
                    .ok_or_else(|| Error::Infinite("the ring is not finite over Z/p^2".into()))
            })
            .collect::<Result<_>>()?;
        let torsion: Vec<&Monomial> = self
            .basis
            .iter()
            .filter(|g| self.lead_val(g) == 1)
            .map(|g| g.leading_monomial().unwrap())
            .collect();
        let mut monos = Vec::new();
        let mut orders = Vec::new();
        let mut cur = vec![0u32; n];
        'walk: loop {
            let m = Monomial(cur.clone());
            if !units.iter().any(|u| u.divides(&m)) {
                orders.push(if torsion.iter().any(|t| t.divides(&m)) { 1 } else { 2 });
                monos.push(m);
            }
            for k in 0..n {
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    continue 'walk;
                }
                cur[k] = 0;
            }
            break;
        }
        Ok((monos, orders))
    }
}
