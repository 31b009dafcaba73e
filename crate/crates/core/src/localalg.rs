//! Fibers of `FΩ¹_A` at closed points and primes, local dimension, the
//! p-rank of residue fields, and the rank criterion for regularity.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fwcore::{present_fw, FwPresentation, RingPresentation};
use crate::linalg::rank;
use crate::modarith::CoeffRing;
use crate::mpoly::{GroebnerBasis, MonomialOrder, Poly, PolyRing};

/// A closed point with coordinates in a finite field `k = F_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpec {
    field: CoeffRing,
    coords: Vec<u64>,
}

impl PointSpec {
    pub fn new(field: CoeffRing, coords: Vec<u64>) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::RingMismatch(format!(
                "point coordinates must lie in a finite field, got {field}"
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| !field.is_valid(c)) {
            return Err(Error::Presentation(format!("coordinate {c} is not an element of {field}")));
        }
        Ok(PointSpec { field, coords })
    }

    pub fn field(&self) -> &CoeffRing {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| self.field.format(c)).collect();
        format!("({})", parts.join(", "))
    }

    /// Carrier polynomials evaluated at this point.
    fn eval(&self, f: &Poly) -> u64 {
        f.eval(&self.field, &self.coords)
    }

    fn check_compatible(&self, a: &RingPresentation) -> Result<()> {
        if self.coords.len() != a.nvars() {
            return Err(Error::Presentation(format!(
                "point has {} coordinates, ring has {} variables",
                self.coords.len(),
                a.nvars()
            )));
        }
        let k0 = a.base().residue_field();
        if !k0.embeds_into(&self.field) {
            return Err(Error::RingMismatch(format!(
                "residue field {k0} does not embed into the point field {}",
                self.field
            )));
        }
        Ok(())
    }

    /// Errors unless every relation of `A` vanishes mod `p` at the point.
    pub fn check_on(&self, a: &RingPresentation) -> Result<()> {
        self.check_compatible(a)?;
        for f in a.carrier_relations() {
            if self.eval(&f) != 0 {
                return Err(Error::PointOffScheme(self.format()));
            }
        }
        Ok(())
    }
}

/// A prime of the carrier `A/pA`, given by generators in the carrier ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpec {
    generators: Vec<Poly>,
    assume_prime: bool,
}

impl PrimeSpec {
    pub fn new(generators: Vec<Poly>) -> Self {
        PrimeSpec {
            generators,
            assume_prime: false,
        }
    }

    /// Accepts the ideal as prime when it falls outside the certified class.
    pub fn assuming_prime(mut self) -> Self {
        self.assume_prime = true;
        self
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_assumed(&self) -> bool {
        self.assume_prime
    }

    /// Gröbner basis of the carrier ideal plus the generators.
    pub fn locus_ideal(&self, a: &RingPresentation) -> Result<GroebnerBasis> {
        let cr = a.carrier_ring();
        for g in &self.generators {
            if g.ring() != &cr {
                return Err(Error::RingMismatch(
                    "prime generators must lie in the carrier polynomial ring".into(),
                ));
            }
        }
        let j = a.carrier()?.extend(&self.generators)?;
        if j.is_unit() {
            return Err(Error::EmptyLocus);
        }
        Ok(j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locus {
    Point(PointSpec),
    Prime(PrimeSpec),
}

/// Why a locus ideal was accepted as prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalityCertificate {
    /// Generated by linear forms: the quotient is a polynomial ring.
    Linear,
    /// Linear forms plus one polynomial without linear factors, of degree at most 3.
    Irreducible(Poly),
    /// Outside the certified class; accepted on the user's word.
    Asserted,
}

/// Largest search space for the linear-factor test.
const FACTOR_SEARCH_LIMIT: u64 = 2_000_000;

/// Does `h` have a factor of degree 1 over the coefficient field?
fn has_linear_factor(h: &Poly) -> Option<bool> {
    let ring = h.ring();
    let field = ring.coeffs();
    let n = ring.nvars();
    let vars: Vec<usize> = (0..n)
        .filter(|&i| h.terms().iter().any(|t| t.mono.0[i] > 0))
        .collect();
    let q = field.size();
    let space = q.checked_pow(vars.len() as u32)?;
    if space > FACTOR_SEARCH_LIMIT {
        return None;
    }
    // l = x_v + Σ_{u after v} c_u x_u + c_0; h(x_v = −rest) = 0 iff l | h
    for (pos, &v) in vars.iter().enumerate() {
        let rest = &vars[pos + 1..];
        let count = q.pow(rest.len() as u32 + 1);
        for idx in 0..count {
            let mut k = idx;
            let mut sub = Poly::constant(ring, field.neg(k % q));
            k /= q;
            for &u in rest {
                let c = k % q;
                k /= q;
                sub = &sub - &Poly::var(ring, u).scale(c);
            }
            let images: Vec<Poly> = (0..n)
                .map(|i| if i == v { sub.clone() } else { Poly::var(ring, i) })
                .collect();
            if h.substitute(&images).is_zero() {
                return Some(true);
            }
        }
    }
    Some(false)
}

/// Certifies that `j` is prime for the supported class: reduced basis made of
/// linear forms plus at most one further polynomial of degree ≤ 3 with no
/// linear factor.
pub fn certify_prime(j: &GroebnerBasis, assume: bool) -> Result<PrimalityCertificate> {
    if j.is_unit() {
        return Err(Error::EmptyLocus);
    }
    let nonlinear: Vec<&Poly> = j
        .basis()
        .iter()
        .filter(|g| g.total_degree() != Some(1))
        .collect();
    let verdict = match nonlinear.as_slice() {
        [] => Some(PrimalityCertificate::Linear),
        [h] if h.total_degree().unwrap() <= 3 => match has_linear_factor(h) {
            Some(false) => Some(PrimalityCertificate::Irreducible((*h).clone())),
            Some(true) => {
                return Err(Error::ZeroDivisor(format!(
                    "a linear factor of {}",
                    h.display(&crate::mpoly::default_names(h.nvars()))
                )))
            }
            None => None,
        },
        _ => None,
    };
    match verdict {
        Some(c) => Ok(c),
        None if assume => Ok(PrimalityCertificate::Asserted),
        None => Err(Error::PrimalityUnknown(format!(
            "ideal with {} basis elements is outside the certified class",
            j.basis().len()
        ))),
    }
}

/// A point whose locus ideal is `(x_1 − a_1, …, x_n − a_n)` with rational `a_i`.
fn rational_point(j: &GroebnerBasis) -> Option<PointSpec> {
    let ring = j.ring();
    let n = ring.nvars();
    if j.basis().len() != n {
        return None;
    }
    let mut coords = vec![0; n];
    let mut seen = vec![false; n];
    for g in j.basis() {
        if g.total_degree() != Some(1) || g.len() > 2 {
            return None;
        }
        let lead = g.leading_monomial().unwrap();
        let v = lead.support().next().unwrap();
        if seen[v] || (g.len() == 2 && !g.terms()[1].mono.is_one()) {
            return None;
        }
        seen[v] = true;
        coords[v] = ring.coeffs().neg(g.constant_coeff());
    }
    PointSpec::new(ring.coeffs().clone(), coords).ok()
}

/// Result of evaluating a presentation at a locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub dim: usize,
    pub rank: usize,
    /// One row per relation column, entries formatted in the locus field.
    pub matrix: Vec<Vec<String>>,
}

/// The relation columns of `m` evaluated at `x`, as rows over `k`.
pub fn evaluated_matrix(m: &FwPresentation, x: &PointSpec) -> Vec<Vec<u64>> {
    m.columns()
        .iter()
        .map(|c| c.iter().map(|e| x.eval(e)).collect())
        .collect()
}

/// `dim_k FΩ¹_A ⊗ k(x)`: generators minus the rank of the evaluated relations.
pub fn fiber_dim_point(a: &RingPresentation, m: &FwPresentation, x: &PointSpec) -> Result<FiberReport> {
    x.check_on(a)?;
    let rows = evaluated_matrix(m, x);
    let r = rank(x.field(), &rows);
    Ok(FiberReport {
        dim: m.ngens() - r,
        rank: r,
        matrix: rows
            .iter()
            .map(|row| row.iter().map(|&v| x.field().format(v)).collect())
            .collect(),
    })
}

/// Rank of the relation matrix over `Frac(carrier/P)`, by fraction-free
/// elimination with zero tests by normal form. A pivot that kills a nonzero
/// entry exposes a zero divisor and is reported as an error.
fn domain_rank(j: &GroebnerBasis, rows: Vec<Vec<Poly>>) -> Result<usize> {
    let names = crate::mpoly::default_names(j.ring().nvars());
    let mut rows: Vec<Vec<Poly>> = rows
        .into_iter()
        .map(|r| r.iter().map(|e| j.normal_form(e)).collect())
        .collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..ncols {
        let Some(k) = (rk..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rk, k);
        let pivot_row = rows[rk].clone();
        let piv = pivot_row[c].clone();
        for row in &rows[rk..] {
            for e in row {
                if !e.is_zero() && j.normal_form(&(&piv * e)).is_zero() {
                    return Err(Error::ZeroDivisor(piv.display(&names)));
                }
            }
        }
        for i in rk + 1..rows.len() {
            let f = rows[i][c].clone();
            if f.is_zero() {
                rows[i] = rows[i].iter().map(|e| j.normal_form(&(&piv * e))).collect();
                continue;
            }
            rows[i] = rows[i]
                .iter()
                .zip(&pivot_row)
                .map(|(e, pe)| j.normal_form(&(&(&piv * e) - &(&f * pe))))
                .collect();
        }
        rk += 1;
    }
    Ok(rk)
}

/// Rank of `FΩ¹_A` at the generic point of `V(P)`.
pub fn fiber_dim_prime(a: &RingPresentation, m: &FwPresentation, prime: &PrimeSpec) -> Result<FiberReport> {
    let j = prime.locus_ideal(a)?;
    let names = a.vars().to_vec();
    let rows: Vec<Vec<Poly>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|e| j.normal_form(e)).collect())
        .collect();
    let matrix = rows
        .iter()
        .map(|r| r.iter().map(|e| e.display(&names)).collect())
        .collect();
    let r = domain_rank(&j, rows)?;
    Ok(FiberReport {
        dim: m.ngens() - r,
        rank: r,
        matrix,
    })
}

pub fn fiber_dim(a: &RingPresentation, m: &FwPresentation, locus: &Locus) -> Result<FiberReport> {
    match locus {
        Locus::Point(x) => fiber_dim_point(a, m, x),
        Locus::Prime(p) => fiber_dim_prime(a, m, p),
    }
}

/// `r` with `[k : k^p] = p^r` for the residue field `k` of the locus:
/// 0 at closed points, the transcendence degree of `k` over `F_p` at primes.
pub fn residue_p_rank(a: &RingPresentation, locus: &Locus) -> Result<i64> {
    match locus {
        Locus::Point(x) => {
            x.check_on(a)?;
            Ok(0)
        }
        Locus::Prime(p) => Ok(p.locus_ideal(a)?.krull_dim()),
    }
}

/// Krull dimension of `k[X]/I` localized at the point `x`, computed as the
/// dimension of the tangent cone.
pub fn tangent_cone_dim(carrier: &GroebnerBasis, x: &PointSpec) -> Result<i64> {
    let src = carrier.ring();
    let n = src.nvars();
    let field = x.field().clone();
    // variables (s, t, X_1, …, X_n), s eliminated against t·s − 1
    let big = PolyRing::new(field.clone(), n + 2, MonomialOrder::Elim(1));
    let over_k = PolyRing::new(field.clone(), n, src.order());
    let t = Poly::var(&big, 1);
    let images: Vec<Poly> = (0..n)
        .map(|i| &(&t * &Poly::var(&big, i + 2)) + &Poly::constant(&big, x.coords()[i]))
        .collect();
    let mut gens: Vec<Poly> = Vec::with_capacity(carrier.basis().len() + 1);
    for g in carrier.basis() {
        let g = g.change_ring(&over_k)?;
        gens.push(g.substitute(&images));
    }
    gens.push(&(&Poly::var(&big, 0) * &t) - &Poly::one(&big));
    let sat = GroebnerBasis::new(&big, &gens)?;
    let cone_ring = PolyRing::grevlex(field, n);
    let zero_t: Vec<Poly> = (0..n + 2)
        .map(|i| match i {
            0 | 1 => Poly::zero(&cone_ring),
            _ => Poly::var(&cone_ring, i - 2),
        })
        .collect();
    let cone: Vec<Poly> = sat
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|term| term.mono.0[0] == 0))
        .map(|g| g.substitute(&zero_t))
        .collect();
    Ok(GroebnerBasis::new(&cone_ring, &cone)?.krull_dim())
}

/// `d = dim A_locus`.
///
/// In characteristic `p` this is the tangent-cone dimension at closed points
/// and `dim A − dim A/P` at primes of a complete intersection. With base
/// `Z/p^2` the answer is for the flat lift and needs `flat = true`; it is the
/// characteristic-`p` value plus one.
pub fn local_dim(a: &RingPresentation, locus: &Locus, flat: bool) -> Result<i64> {
    if a.is_mixed() && !flat {
        return Err(Error::FlatnessRequired);
    }
    let carrier = a.carrier()?;
    let d = match locus {
        Locus::Point(x) => {
            x.check_on(a)?;
            tangent_cone_dim(&carrier, x)?
        }
        Locus::Prime(p) => {
            let j = p.locus_ideal(a)?;
            if let Some(x) = rational_point(&j) {
                tangent_cone_dim(&carrier, &x)?
            } else {
                let c = a.carrier_relations().iter().filter(|f| !f.is_zero()).count() as i64;
                let dim = carrier.krull_dim();
                if dim != a.nvars() as i64 - c {
                    return Err(Error::Unsupported(
                        "local dimension at a non-closed point needs a complete intersection".into(),
                    ));
                }
                dim - j.krull_dim()
            }
        }
    };
    Ok(if a.is_mixed() { d + 1 } else { d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    NotRegular,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Regular => "Regular",
            Verdict::NotRegular => "NotRegular",
            Verdict::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatnessMode {
    CharP,
    FlatAsserted,
    FlatUnasserted,
}

impl FlatnessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FlatnessMode::CharP => "charP",
            FlatnessMode::FlatAsserted => "flatness-asserted",
            FlatnessMode::FlatUnasserted => "flatness-not-asserted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub verdict: Verdict,
    pub fiber_dim: usize,
    pub d: Option<i64>,
    pub r: i64,
    pub mode: FlatnessMode,
    pub fiber: FiberReport,
    pub primality: Option<PrimalityCertificate>,
    pub explanation: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RegularityOptions {
    pub flat: bool,
}

/// Decides regularity of `A` at the locus by comparing the fiber dimension of
/// `FΩ¹_A` with `d + r`.
pub fn regularity(a: &RingPresentation, locus: &Locus, opts: RegularityOptions) -> Result<RegularityVerdict> {
    let primality = match locus {
        Locus::Point(_) => None,
        Locus::Prime(p) => Some(certify_prime(&p.locus_ideal(a)?, p.is_assumed())?),
    };
    let m = present_fw(a)?;
    let fiber = fiber_dim(a, &m, locus)?;
    let r = residue_p_rank(a, locus)?;
    let mode = match (a.is_mixed(), opts.flat) {
        (false, _) => FlatnessMode::CharP,
        (true, true) => FlatnessMode::FlatAsserted,
        (true, false) => FlatnessMode::FlatUnasserted,
    };
    let (d, gap) = match local_dim(a, locus, opts.flat) {
        Ok(d) => (Some(d), None),
        Err(e @ (Error::FlatnessRequired | Error::Unsupported(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let fdim = fiber.dim as i64;
    let (verdict, explanation) = match d {
        None => (Verdict::Unknown, gap.unwrap()),
        Some(d) if fdim == d + r => (Verdict::Regular, format!("fiber dimension {fdim} equals d + r = {}", d + r)),
        Some(d) if fdim > d + r => (
            Verdict::NotRegular,
            format!("fiber dimension {fdim} exceeds d + r = {}", d + r),
        ),
        Some(d) => (
            Verdict::Unknown,
            format!("fiber dimension {fdim} is below d + r = {}; hypotheses not met", d + r),
        ),
    };
    Ok(RegularityVerdict {
        verdict,
        fiber_dim: fiber.dim,
        d,
        r,
        mode,
        fiber,
        primality,
        explanation,
    })
}

/// Arithmetic in `W_2(F_q) = Z/p^2[t]/(μ̃)` for the digit lift `μ̃` of the
/// minimal polynomial of `F_q`.
#[derive(Debug, Clone)]
struct GaloisRing2 {
    p: u64,
    /// Non-leading coefficients of the lifted modulus, low to high.
    modulus: Vec<u64>,
}

impl GaloisRing2 {
    fn over(field: &CoeffRing) -> Self {
        let p = field.p();
        let modulus = match field.fq_field() {
            Some(k) => {
                let mut m = k.minpoly();
                m.pop();
                m
            }
            None => vec![0],
        };
        GaloisRing2 { p, modulus }
    }

    fn e(&self) -> usize {
        self.modulus.len()
    }

    fn m(&self) -> u64 {
        self.p * self.p
    }

    fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.e()];
        v[0] = c % self.m();
        v
    }

    /// Teichmüller-free lift: the base-`p` digits of a packed field element.
    fn lift(&self, field: &CoeffRing, a: u64) -> Vec<u64> {
        let mut v = field.fp_coords(a);
        v.resize(self.e(), 0);
        v
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.m()).collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.e();
        let m = self.m();
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % m;
            }
        }
        // t^e = −Σ μ_i t^i
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mu) in self.modulus.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + m - c * mu % m) % m;
            }
        }
        prod.truncate(e);
        prod
    }

    fn eval(&self, f: &Poly, point: &[Vec<u64>]) -> Vec<u64> {
        let mut acc = self.constant(0);
        for t in f.terms() {
            let mut v = self.constant(t.coeff);
            for (i, &ex) in t.mono.0.iter().enumerate() {
                for _ in 0..ex {
                    v = self.mul(&v, &point[i]);
                }
            }
            acc = self.add(&acc, &v);
        }
        acc
    }
}

/// Rows spanning the image of relations in `m/m^2 ⊗ k`, in the coordinates
/// `(X_1 − x_1, …, X_n − x_n)` and, over `Z/p^2`, `p` last.
pub fn cotangent_rows(a: &RingPresentation, fs: &[Poly], x: &PointSpec) -> Vec<Vec<u64>> {
    let field = x.field();
    let cr = a.carrier_ring();
    let gr = GaloisRing2::over(field);
    let lifted: Vec<Vec<u64>> = x.coords().iter().map(|&c| gr.lift(field, c)).collect();
    fs.iter()
        .map(|f| {
            let fb = f.reduce_mod_p(&cr);
            let mut row: Vec<u64> = (0..a.nvars()).map(|j| x.eval(&fb.derivative(j))).collect();
            if a.is_mixed() {
                let v = gr.eval(f, &lifted);
                let digits: Vec<u64> = v.iter().map(|&d| d / gr.p).collect();
                row.push(field.from_fp_coords(&digits));
            }
            row
        })
        .collect()
}

/// `dim_k m/m^2` at `x`.
pub fn cotangent_dim(a: &RingPresentation, x: &PointSpec) -> Result<usize> {
    x.check_on(a)?;
    let rows = cotangent_rows(a, a.relations(), x);
    let n = a.nvars() + usize::from(a.is_mixed());
    Ok(n - rank(x.field(), &rows))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrdxReport {
    pub fiber_dim: usize,
    pub cotangent_dim: usize,
    pub consistent: bool,
}

/// Dimension check of `0 → m/m^2 → FΩ¹_A ⊗ k → F*Ω¹_k → 0` at a closed point,
/// where the last term vanishes because `k` is perfect.
pub fn check_prdx(a: &RingPresentation, x: &PointSpec) -> Result<PrdxReport> {
    let m = present_fw(a)?;
    let fiber = fiber_dim_point(a, &m, x)?;
    let cot = cotangent_dim(a, x)?;
    Ok(PrdxReport {
        fiber_dim: fiber.dim,
        cotangent_dim: cot,
        consistent: fiber.dim == cot,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub fiber_a: usize,
    pub fiber_b: usize,
    /// `dim_k` of the span of the `g_i` in `I/(I^2 + pI) ⊗ k`.
    pub s_prime: usize,
    pub consistent: bool,
}

/// Rank additivity for `B = A/(g_1, …, g_s)` at a point of `B`:
/// `dim FΩ¹_A ⊗ k = s′ + dim FΩ¹_B ⊗ k`.
pub fn check_split_sequence(a: &RingPresentation, gs: &[Poly], x: &PointSpec) -> Result<SplitReport> {
    let b = a.with_relations(gs)?;
    x.check_on(&b)?;
    let fa = fiber_dim_point(a, &present_fw(a)?, x)?.dim;
    let fb = fiber_dim_point(&b, &present_fw(&b)?, x)?.dim;
    let base_rows = cotangent_rows(a, a.relations(), x);
    let all_rows = cotangent_rows(a, b.relations(), x);
    let s_prime = rank(x.field(), &all_rows) - rank(x.field(), &base_rows);
    Ok(SplitReport {
        fiber_a: fa,
        fiber_b: fb,
        s_prime,
        consistent: fa == s_prime + fb,
    })
}

/// All points of `A/pA` with coordinates in `field` (exhaustive; small cases only).
pub fn rational_points(a: &RingPresentation, field: &CoeffRing) -> Result<Vec<PointSpec>> {
    let n = a.nvars();
    let q = field.size();
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::Unsupported("too many candidate points".into()))?;
    let rels = a.carrier_relations();
    let mut out = Vec::new();
    for idx in 0..total {
        let mut k = idx;
        let coords: Vec<u64> = (0..n)
            .map(|_| {
                let c = k % q;
                k /= q;
                c
            })
            .collect();
        let x = PointSpec::new(field.clone(), coords)?;
        x.check_compatible(a)?;
        if rels.iter().all(|f| x.eval(f) == 0) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Generators `X_i − x_i` of the maximal ideal of a rational point.
pub fn point_ideal(ring: &Arc<PolyRing>, x: &PointSpec) -> Vec<Poly> {
    (0..ring.nvars())
        .map(|i| &Poly::var(ring, i) - &Poly::constant(ring, x.coords()[i]))
        .collect()
}
