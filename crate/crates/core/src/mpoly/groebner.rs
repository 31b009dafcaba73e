//! Reduced Gröbner bases over `F_p` and `F_{p^e}` (Buchberger, sugar strategy).

use std::collections::HashSet;
use std::sync::Arc;

use super::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};

/// A reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    basis: Vec<Poly>,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Full reduction of `f` by a list of monic polynomials.
pub(crate) fn reduce_by(f: &Poly, basis: &[Poly]) -> Poly {
    let c = f.coeff_ring().clone();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some(lt) = p.terms.first().cloned() {
        match basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|m| m.divides(&lt.mono)))
        {
            Some(g) => {
                let lg = g.leading_term().unwrap();
                let k = c.mul(lt.coeff, c.inv(lg.coeff).expect("field coefficients"));
                let q = lg.mono.quotient(&lt.mono);
                p = &p - &g.mul_term(&q, k);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    Poly {
        ring: f.ring.clone(),
        terms: rem,
    }
}

fn s_polynomial(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let (lf, lg) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let c = f.coeff_ring();
    let a = f.mul_term(&lf.mono.quotient(lcm), c.inv(lf.coeff).unwrap());
    let b = g.mul_term(&lg.mono.quotient(lcm), c.inv(lg.coeff).unwrap());
    &a - &b
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens` (an empty list
    /// gives the zero ideal).
    pub fn new(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Self> {
        if !ring.coeffs().is_field() {
            return Err(Error::RingMismatch(format!(
                "Gröbner bases need field coefficients, got {}",
                ring.coeffs()
            )));
        }
        for g in gens {
            g.check_same_ring(&Poly::zero(ring))?;
        }
        let basis = buchberger(ring, gens);
        let gb = GroebnerBasis {
            ring: ring.clone(),
            basis,
        };
        debug_assert!(gb.satisfies_buchberger());
        Ok(gb)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.leading_monomial().unwrap().is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Remainder of `f` modulo the basis; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert!(f.ring() == &self.ring, "normal_form: ring mismatch");
        reduce_by(f, &self.basis)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Gröbner basis of this ideal plus `extra`.
    pub fn extend(&self, extra: &[Poly]) -> Result<Self> {
        let mut gens = self.basis.clone();
        gens.extend(extra.iter().cloned());
        GroebnerBasis::new(&self.ring, &gens)
    }

    /// Krull dimension of `k[X]/I`: the largest variable set `S` such that no
    /// leading monomial involves only variables from `S`. The unit ideal gives −1.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let supports: Vec<u64> = lms
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones() as i64;
            if size > best && supports.iter().all(|&sup| sup & !s != 0) {
                best = size;
            }
        }
        best
    }

    /// Standard monomials when `k[X]/I` is finite dimensional, sorted increasingly.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        if self.is_unit() {
            return Some(Vec::new());
        }
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let b = lms
                .iter()
                .filter(|m| m.support().all(|j| j == i) && !m.is_one())
                .map(|m| m.0[i])
                .min()?;
            bounds.push(b);
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let m = Monomial(cur.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    let order = self.ring.order();
                    out.sort_by(|a, b| order.cmp(a, b));
                    return Some(out);
                }
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (f, g) = (&self.basis[i], &self.basis[j]);
                let lcm = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
                if !reduce_by(&s_polynomial(f, g, &lcm), &self.basis).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn buchberger(ring: &Arc<PolyRing>, gens: &[Poly]) -> Vec<Poly> {
    let order = ring.order();
    let mut g: Vec<(Poly, u64)> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let insert = |g: &mut Vec<(Poly, u64)>, pending: &mut Vec<Pair>, pending_set: &mut HashSet<(usize, usize)>, h: Poly, sugar: u64| {
        let h = h.monic();
        let k = g.len();
        let lh = h.leading_monomial().unwrap().clone();
        for (i, (gi, si)) in g.iter().enumerate() {
            let li = gi.leading_monomial().unwrap();
            let lcm = li.lcm(&lh);
            let s = (si + lcm.degree() - li.degree()).max(sugar + lcm.degree() - lh.degree());
            pending.push(Pair {
                i,
                j: k,
                lcm,
                sugar: s,
            });
            pending_set.insert((i, k));
        }
        g.push((h, sugar));
    };

    for f in gens {
        if f.is_zero() {
            continue;
        }
        let basis: Vec<Poly> = g.iter().map(|(p, _)| p.clone()).collect();
        let h = reduce_by(f, &basis);
        if !h.is_zero() {
            let s = f.total_degree().unwrap();
            insert(&mut g, &mut pending, &mut pending_set, h, s);
        }
    }

    while !pending.is_empty() {
        // lowest sugar, then smallest lcm, then first-listed pair
        let idx = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                pa.sugar
                    .cmp(&pb.sugar)
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pending.swap_remove(idx);
        pending_set.remove(&(pair.i, pair.j));
        let (fi, fj) = (&g[pair.i].0, &g[pair.j].0);
        let (li, lj) = (fi.leading_monomial().unwrap(), fj.leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && g[k].0.leading_monomial().unwrap().divides(&pair.lcm)
                && !pending_set.contains(&key(pair.i, k))
                && !pending_set.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj, &pair.lcm);
        let basis: Vec<Poly> = g.iter().map(|(p, _)| p.clone()).collect();
        let h = reduce_by(&s, &basis);
        if !h.is_zero() {
            insert(&mut g, &mut pending, &mut pending_set, h, pair.sugar);
        }
    }

    // minimalise: drop elements whose leading monomial is divisible by another's;
    // on equal leading monomials the first-listed element wins
    let lms: Vec<Monomial> = g.iter().map(|(p, _)| p.leading_monomial().unwrap().clone()).collect();
    let mut keep: Vec<Poly> = Vec::new();
    for (i, (p, _)) in g.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, lj)| {
            j != i && lj.divides(&lms[i]) && (lj != &lms[i] || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lt = keep[i].leading_term().unwrap().clone();
        let tail = Poly {
            ring: ring.clone(),
            terms: keep[i].terms[1..].to_vec(),
        };
        let head = Poly::term(ring, lt.mono, lt.coeff);
        reduced.push((&head + &reduce_by(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}
