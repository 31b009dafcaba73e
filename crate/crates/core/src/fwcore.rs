//! Universal FW-derivations on polynomial rings and finite presentations of
//! the FW-differential module `FΩ¹_A` for `A = R[X_1, …, X_n]/(f_1, …, f_m)`,
//! `R ∈ {F_p, F_q, Z/p^2}`.
//!
//! The module is presented over the carrier `B_1 = A/pA` on the generators
//! `w(X_1), …, w(X_n)` (and `w(p)` when `R = Z/p^2`), with one relation column
//! `w(f_i)` per listed relation.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::FpEchelon;
use crate::modarith::{w_base_value, CoeffRing, Prime};
use crate::mpoly::{witt_pair_correction, witt_q, GroebnerBasis, Monomial, Poly, PolyRing};

/// A finitely presented algebra `R[X_1, …, X_n]/(f_1, …, f_m)`.
///
/// With `R = Z/p^2` the presentation stands for the `Z_(p)`-algebra obtained by
/// lifting the relations; its FW-differentials only depend on the reduction mod `p^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    vars: Vec<String>,
    relations: Vec<Poly>,
}

impl RingPresentation {
    pub fn new(base: CoeffRing, vars: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        let ring = PolyRing::grevlex(base, vars.len());
        Self::from_ring(&ring, vars, relations)
    }

    pub fn from_ring(ring: &Arc<PolyRing>, vars: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        if vars.len() != ring.nvars() {
            return Err(Error::Presentation(format!(
                "{} variable names for a ring in {} variables",
                vars.len(),
                ring.nvars()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::Presentation(format!("duplicate or empty variable name {v:?}")));
            }
        }
        for f in &relations {
            if f.coeff_ring() != ring.coeffs() || f.nvars() != ring.nvars() {
                return Err(Error::Presentation(format!(
                    "relation over {} in {} variables does not belong to {} in {} variables",
                    f.coeff_ring(),
                    f.nvars(),
                    ring.coeffs(),
                    ring.nvars()
                )));
            }
        }
        let relations = relations
            .into_iter()
            .map(|f| if f.ring() == ring { f } else { f.change_ring(ring).unwrap() })
            .collect();
        Ok(RingPresentation {
            ring: ring.clone(),
            vars,
            relations,
        })
    }

    pub fn base(&self) -> &CoeffRing {
        self.ring.coeffs()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn prime(&self) -> Prime {
        self.base().prime()
    }

    /// Base ring `Z/p^2` (mixed characteristic).
    pub fn is_mixed(&self) -> bool {
        matches!(self.base(), CoeffRing::Zp2(_))
    }

    /// `(R/pR)[X_1, …, X_n]`.
    pub fn carrier_ring(&self) -> Arc<PolyRing> {
        PolyRing::new(self.base().residue_field(), self.nvars(), self.ring.order())
    }

    /// The relations reduced mod `p`.
    pub fn carrier_relations(&self) -> Vec<Poly> {
        let target = self.carrier_ring();
        self.relations.iter().map(|f| f.reduce_mod_p(&target)).collect()
    }

    /// Gröbner basis of the carrier ideal, presenting `B_1 = A/pA`.
    pub fn carrier(&self) -> Result<GroebnerBasis> {
        GroebnerBasis::new(&self.carrier_ring(), &self.carrier_relations())
    }

    /// `A/(extra)`.
    pub fn with_relations(&self, extra: &[Poly]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        Self::from_ring(&self.ring, self.vars.clone(), rels)
    }

    pub fn format_poly(&self, f: &Poly) -> String {
        f.display(&self.vars)
    }
}

/// `FΩ¹_A` as the cokernel of the relation columns in `B_1^{gens}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FwPresentation {
    carrier: GroebnerBasis,
    labels: Vec<String>,
    columns: Vec<Vec<Poly>>,
    has_wp: bool,
}

impl FwPresentation {
    /// Builds a presentation, normal-forming every entry over the carrier.
    pub fn new(carrier: GroebnerBasis, labels: Vec<String>, has_wp: bool, columns: Vec<Vec<Poly>>) -> Self {
        let mut out = FwPresentation {
            carrier,
            labels,
            columns: Vec::new(),
            has_wp,
        };
        out.push_columns(columns);
        out
    }

    fn push_columns(&mut self, columns: impl IntoIterator<Item = Vec<Poly>>) {
        for col in columns {
            assert_eq!(col.len(), self.labels.len(), "column length must match generator count");
            let col = col.iter().map(|e| self.carrier.normal_form(e)).collect();
            self.columns.push(col);
        }
    }

    /// The same module with further relation columns.
    pub fn with_columns(&self, extra: impl IntoIterator<Item = Vec<Poly>>) -> Self {
        let mut out = self.clone();
        out.push_columns(extra);
        out
    }

    /// Re-reads the presentation over a quotient carrier.
    pub fn over_carrier(&self, carrier: GroebnerBasis) -> Self {
        FwPresentation::new(carrier, self.labels.clone(), self.has_wp, self.columns.clone())
    }

    pub fn carrier(&self) -> &GroebnerBasis {
        &self.carrier
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.columns
    }

    pub fn has_wp(&self) -> bool {
        self.has_wp
    }

    pub fn wp_index(&self) -> Option<usize> {
        self.has_wp.then(|| self.labels.len() - 1)
    }

    /// All relation columns vanish in the carrier.
    pub fn is_free(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(Poly::is_zero))
    }

    /// Dimension over `F_p` when the carrier is a finite ring.
    pub fn fp_dimension(&self) -> Result<u64> {
        let ring = self.carrier.ring().clone();
        if self.carrier.is_unit() {
            return Ok(0);
        }
        let staircase = self
            .carrier
            .standard_monomials()
            .ok_or_else(|| Error::Infinite("carrier ring has positive dimension".into()))?;
        let coeffs = ring.coeffs().clone();
        let e = coeffs.degree_over_fp();
        let s = staircase.len();
        let g = self.ngens();
        let ncols = g * s * e;
        let mut echelon = FpEchelon::new(coeffs.p(), ncols);
        let scalars: Vec<u64> = (0..e)
            .map(|l| {
                let mut v = vec![0; e];
                v[l] = 1;
                coeffs.from_fp_coords(&v)
            })
            .collect();
        for col in &self.columns {
            for m in &staircase {
                for &alpha in &scalars {
                    let mut row = vec![0u32; ncols];
                    for (gi, entry) in col.iter().enumerate() {
                        let prod = self.carrier.normal_form(&entry.mul_term(m, alpha));
                        for t in prod.terms() {
                            let k = staircase.iter().position(|sm| sm == &t.mono).unwrap();
                            for (l, d) in coeffs.fp_coords(t.coeff).into_iter().enumerate() {
                                row[(gi * s + k) * e + l] = d as u32;
                            }
                        }
                    }
                    echelon.insert(row);
                    if echelon.is_full() {
                        return Ok(0);
                    }
                }
            }
        }
        Ok((ncols - echelon.rank()) as u64)
    }

    /// Relation columns as strings in the given variable names.
    pub fn display_columns(&self, names: &[String]) -> Vec<Vec<String>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|e| e.display(names)).collect())
            .collect()
    }
}

/// The universal FW-derivation `w: Z/p^2[X] → FΩ¹ = ⊕ F_p[X]·w(X_j) ⊕ F_p[X]·w(p)`.
///
/// Returns the coordinates `((∂f/∂X_j)^p)_j` followed by the `w(p)`-coordinate
/// `Σ_m X^{pm}·w(a_m) − Q(f)`, all mod `p`.
pub fn w_poly(f: &Poly) -> Result<Vec<Poly>> {
    let CoeffRing::Zp2(p) = f.coeff_ring() else {
        return Err(Error::RingMismatch(format!(
            "w_poly expects coefficients in Z/p^2, got {}",
            f.coeff_ring()
        )));
    };
    let pv = p.get();
    let n = f.nvars();
    let target = PolyRing::new(CoeffRing::Fp(*p), n, f.ring().order());
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..n {
        out.push(f.derivative(j).reduce_mod_p(&target).pow(pv));
    }
    let coeff_part = Poly::from_terms(
        &target,
        f.terms()
            .iter()
            .map(|t| (t.mono.scaled(pv as u32), w_base_value(pv, t.coeff))),
    );
    let q = witt_q(f)?.reduce_mod_p(&target);
    out.push(&coeff_part - &q);
    Ok(out)
}

/// The universal FW-derivation in characteristic `p`: the Frobenius-twisted
/// gradient `((∂f/∂X_j)^p)_j`.
pub fn w_poly_charp(f: &Poly) -> Result<Vec<Poly>> {
    if !f.coeff_ring().is_field() {
        return Err(Error::RingMismatch(format!(
            "w_poly_charp expects a field of characteristic p, got {}",
            f.coeff_ring()
        )));
    }
    let p = f.coeff_ring().p();
    Ok((0..f.nvars()).map(|j| f.derivative(j).pow(p)).collect())
}

/// `w(f)` for a polynomial of `A`'s ambient ring, in the carrier polynomial ring.
pub fn w_vector(a: &RingPresentation, f: &Poly) -> Result<Vec<Poly>> {
    let target = a.carrier_ring();
    let v = if a.is_mixed() { w_poly(f)? } else { w_poly_charp(f)? };
    v.iter().map(|e| e.change_ring(&target)).collect()
}

fn generator_labels(a: &RingPresentation) -> Vec<String> {
    let mut labels: Vec<String> = a.vars().iter().map(|v| format!("w({v})")).collect();
    if a.is_mixed() {
        labels.push("w(p)".to_string());
    }
    labels
}

/// Presentation of `FΩ¹_A` over `A/pA`.
pub fn present_fw(a: &RingPresentation) -> Result<FwPresentation> {
    let carrier = a.carrier()?;
    let columns = a
        .relations()
        .iter()
        .map(|f| w_vector(a, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(FwPresentation::new(carrier, generator_labels(a), a.is_mixed(), columns))
}

/// A violated FW-derivation law found by [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub trial: usize,
    pub law: &'static str,
    pub f: String,
    pub g: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub p: u64,
    pub nvars: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.trials
    }
}

/// Random polynomial over `ring` with at most `max_terms` terms of total degree
/// at most `max_deg`.
pub fn random_poly(ring: &Arc<PolyRing>, rng: &mut impl Rng, max_terms: usize, max_deg: u32) -> Poly {
    let n = ring.nvars();
    let size = ring.coeffs().size();
    let nterms = rng.gen_range(0..=max_terms);
    let terms = (0..nterms).map(|_| {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && n > 0 {
            e[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        (Monomial(e), rng.gen_range(0..size))
    });
    Poly::from_terms(ring, terms.collect::<Vec<_>>())
}

/// The `w(p)` unit vector in `F_p[X]^{n+1}`.
fn wp_vector(target: &Arc<PolyRing>) -> Vec<Poly> {
    let n = target.nvars();
    (0..=n)
        .map(|j| if j == n { Poly::one(target) } else { Poly::zero(target) })
        .collect()
}

fn add_vec(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_vec(k: &Poly, v: &[Poly]) -> Vec<Poly> {
    v.iter().map(|x| k * x).collect()
}

/// Checks `w(f+g) = w(f) + w(g) − P(f,g)·w(p)` and `w(fg) = g^p·w(f) + f^p·w(g)`
/// for one pair over `Z/p^2[X]`. Returns the name of the first violated law.
pub fn check_pair(f: &Poly, g: &Poly) -> Result<Option<&'static str>> {
    let ring = f.ring();
    let p = ring.coeffs().p();
    let target = PolyRing::new(CoeffRing::Fp(ring.coeffs().prime()), ring.nvars(), ring.order());
    let (wf, wg) = (w_poly(f)?, w_poly(g)?);
    let pfg = witt_pair_correction(f, g).reduce_mod_p(&target);
    let rhs = add_vec(&add_vec(&wf, &wg), &scale_vec(&(-&pfg), &wp_vector(&target)));
    if w_poly(&(f + g))? != rhs {
        return Ok(Some("additivity"));
    }
    let (fb, gb) = (f.reduce_mod_p(&target).pow(p), g.reduce_mod_p(&target).pow(p));
    let rhs = add_vec(&scale_vec(&gb, &wf), &scale_vec(&fb, &wg));
    if w_poly(&(f * g))? != rhs {
        return Ok(Some("leibniz"));
    }
    Ok(None)
}

/// Randomized verification of the FW-derivation laws for [`w_poly`] on
/// `Z/p^2[X_1, …, X_n]`. Trial `i` draws from a ChaCha stream keyed by
/// `(seed, i)`, so the report does not depend on thread scheduling.
pub fn check_axioms(p: Prime, nvars: usize, trials: usize, seed: u64) -> Result<AxiomReport> {
    let ring = PolyRing::grevlex(CoeffRing::Zp2(p), nvars);
    let names = crate::mpoly::default_names(nvars);
    let outcomes: Vec<Option<AxiomFailure>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let f = random_poly(&ring, &mut rng, 4, 3);
            let g = random_poly(&ring, &mut rng, 4, 3);
            check_pair(&f, &g).map(|law| {
                law.map(|law| AxiomFailure {
                    trial,
                    law,
                    f: f.display(&names),
                    g: g.display(&names),
                })
            })
        })
        .collect::<Result<_>>()?;
    let failures: Vec<AxiomFailure> = outcomes.into_iter().flatten().collect();
    Ok(AxiomReport {
        p: p.get(),
        nvars,
        trials,
        seed,
        passed: trials - failures.len(),
        failures,
    })
}

/// A ring map `A → B` given by the images of `A`'s variables in `B`'s ambient ring.
#[derive(Debug, Clone)]
pub struct Morphism<'a> {
    pub source: &'a RingPresentation,
    pub target: &'a RingPresentation,
    pub images: Vec<Poly>,
}

impl<'a> Morphism<'a> {
    pub fn new(source: &'a RingPresentation, target: &'a RingPresentation, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Presentation(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        for im in &images {
            if im.ring() != target.ring() {
                return Err(Error::Presentation(
                    "variable images must be polynomials of the target ring".into(),
                ));
            }
        }
        let compatible = match (source.base(), target.base()) {
            (CoeffRing::Zp2(p), CoeffRing::Zp2(q)) => p == q,
            (CoeffRing::Zp2(p), t) if t.is_field() => *p == t.prime(),
            (s, t) if s.is_field() => s.embeds_into(t),
            _ => false,
        };
        if !compatible {
            return Err(Error::RingMismatch(format!(
                "no ring map from {} to {}",
                source.base(),
                target.base()
            )));
        }
        let m = Morphism {
            source,
            target,
            images,
        };
        m.check_relations()?;
        Ok(m)
    }

    /// The identity of `A`.
    pub fn identity(a: &'a RingPresentation) -> Self {
        let images = (0..a.nvars()).map(|i| Poly::var(a.ring(), i)).collect();
        Morphism {
            source: a,
            target: a,
            images,
        }
    }

    /// The inclusion of `A` into a ring whose first variables are `A`'s.
    pub fn inclusion(source: &'a RingPresentation, target: &'a RingPresentation) -> Result<Self> {
        let images = (0..source.nvars()).map(|i| Poly::var(target.ring(), i)).collect();
        Morphism::new(source, target, images)
    }

    /// Image of a source polynomial in the target ambient ring.
    pub fn apply(&self, f: &Poly) -> Poly {
        let tb = self.target.base().clone();
        let sb = self.source.base().clone();
        let mid = PolyRing::new(tb.clone(), self.source.nvars(), self.source.ring().order());
        let lifted = f.map_coeffs(&mid, |c| match (&sb, &tb) {
            (CoeffRing::Zp2(_), t) if t.is_field() => sb.reduce_mod_p(c),
            _ => sb.embed(c, &tb),
        });
        if self.images.is_empty() {
            return Poly::constant(self.target.ring(), lifted.constant_coeff());
        }
        lifted.substitute(&self.images)
    }

    /// Relations of `A` must map into the ideal of `B`. Over `Z/p^2` this is
    /// only verified modulo `p`.
    fn check_relations(&self) -> Result<()> {
        let carrier = self.target.carrier()?;
        let cr = self.target.carrier_ring();
        for f in self.source.relations() {
            let img = self.apply(f).reduce_mod_p(&cr);
            if !carrier.contains(&img) {
                return Err(Error::Presentation(format!(
                    "relation {} does not map into the target ideal",
                    self.source.format_poly(f)
                )));
            }
        }
        Ok(())
    }
}

/// Matrix of `FΩ¹_A ⊗_A B → FΩ¹_B` in the standard generators; one column per
/// generator of `FΩ¹_A`, entries normal-formed in `B`'s carrier.
pub fn base_change_map(m: &Morphism) -> Result<Vec<Vec<Poly>>> {
    let carrier = m.target.carrier()?;
    let cr = m.target.carrier_ring();
    let mut cols = Vec::with_capacity(m.source.nvars() + 1);
    for im in &m.images {
        let col = w_vector(m.target, im)?;
        cols.push(col.iter().map(|e| carrier.normal_form(e)).collect());
    }
    if m.source.is_mixed() {
        let ng = generator_labels(m.target).len();
        let col = (0..ng)
            .map(|i| {
                if m.target.is_mixed() && i == ng - 1 {
                    Poly::one(&cr)
                } else {
                    Poly::zero(&cr)
                }
            })
            .collect();
        cols.push(col);
    }
    Ok(cols)
}

/// `Coker(FΩ¹_A ⊗_A B → FΩ¹_B)`, presented over `B`'s carrier.
pub fn relative_cokernel(m: &Morphism) -> Result<FwPresentation> {
    Ok(present_fw(m.target)?.with_columns(base_change_map(m)?))
}

/// Frobenius twist of the relative Kähler differentials `Ω¹_{B_1/A_1}` of the
/// reductions mod `p`, presented directly by twisted partial derivatives of
/// `B`'s relations and of the images of `A`'s variables.
pub fn twisted_relative_kahler(m: &Morphism) -> Result<FwPresentation> {
    let carrier = m.target.carrier()?;
    let cr = m.target.carrier_ring();
    let twisted = |f: &Poly| -> Vec<Poly> {
        let fb = f.reduce_mod_p(&cr);
        (0..cr.nvars()).map(|j| fb.derivative(j).pow(cr.coeffs().p())).collect()
    };
    let mut cols: Vec<Vec<Poly>> = m.target.relations().iter().map(twisted).collect();
    cols.extend(m.images.iter().map(twisted));
    let labels = m.target.vars().iter().map(|v| format!("w({v})")).collect();
    Ok(FwPresentation::new(carrier, labels, false, cols))
}

/// `A[t]/(t·u − 1)`; the new variable is appended last.
pub fn localize(a: &RingPresentation, u: &Poly) -> Result<RingPresentation> {
    if u.ring() != a.ring() {
        return Err(Error::Presentation("element to invert must lie in the ring".into()));
    }
    let n = a.nvars();
    let mut name = "t".to_string();
    let mut k = 0;
    while a.vars().contains(&name) {
        k += 1;
        name = format!("t{k}");
    }
    let ring = PolyRing::new(a.base().clone(), n + 1, a.ring().order());
    let positions: Vec<usize> = (0..n).collect();
    let mut rels: Vec<Poly> = a
        .relations()
        .iter()
        .map(|f| f.extend_vars(&ring, &positions))
        .collect();
    let t = Poly::var(&ring, n);
    rels.push(&(&t * &u.extend_vars(&ring, &positions)) - &Poly::one(&ring));
    let mut vars = a.vars().to_vec();
    vars.push(name);
    RingPresentation::from_ring(&ring, vars, rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn cusp() -> RingPresentation {
        let ring = PolyRing::grevlex(CoeffRing::Fp(prime(5)), 2);
        let x = Poly::var(&ring, 0);
        let y = Poly::var(&ring, 1);
        RingPresentation::from_ring(&ring, names(&["x", "y"]), vec![&y.pow(2) - &x.pow(3)]).unwrap()
    }

    #[test]
    fn w_of_variable_is_unit_vector() {
        let ring = PolyRing::grevlex(CoeffRing::Zp2(prime(3)), 2);
        let w = w_poly(&Poly::var(&ring, 1)).unwrap();
        assert!(w[0].is_zero() && w[2].is_zero());
        assert!(w[1].is_constant() && w[1].constant_coeff() == 1);
    }

    #[test]
    fn w_of_square_two_routes() {
        // w(X^2) = 2 X^p w(X) for p = 3
        let ring = PolyRing::grevlex(CoeffRing::Zp2(prime(3)), 1);
        let x = Poly::var(&ring, 0);
        let w = w_poly(&x.pow(2)).unwrap();
        assert_eq!(w[0].display(&names(&["x"])), "2*x^3");
        assert!(w[1].is_zero());
    }

    #[test]
    fn w_of_p_times_variable() {
        for p in [2, 3, 5, 7] {
            let ring = PolyRing::grevlex(CoeffRing::Zp2(prime(p)), 2);
            let f = Poly::var(&ring, 1).scale(p);
            let w = w_poly(&f).unwrap();
            assert!(w[0].is_zero() && w[1].is_zero());
            assert_eq!(w[2].display(&names(&["x", "y"])), format!("y^{p}"));
        }
    }

    #[test]
    fn w_of_p_squared_vanishes() {
        for p in [2, 3, 5] {
            let ring = PolyRing::grevlex(CoeffRing::Zp2(prime(p)), 1);
            let c = Poly::constant(&ring, 0); // p^2 = 0 in Z/p^2
            assert!(w_poly(&c).unwrap().iter().all(Poly::is_zero));
            let wp = w_poly(&Poly::constant(&ring, p)).unwrap();
            assert!(wp[1].is_constant() && wp[1].constant_coeff() == 1);
        }
    }

    #[test]
    fn charp_gradient_of_cusp() {
        let a = cusp();
        let w = w_poly_charp(&a.relations()[0]).unwrap();
        let n = names(&["x", "y"]);
        assert_eq!(w[0].display(&n), "2*x^10");
        assert_eq!(w[1].display(&n), "2*y^5");
        let c = Poly::constant(a.ring(), 3);
        assert!(w_poly_charp(&c).unwrap().iter().all(Poly::is_zero));
        let xp = Poly::var(a.ring(), 0).pow(5);
        assert!(w_poly_charp(&xp).unwrap().iter().all(Poly::is_zero));
    }

    #[test]
    fn present_base_ring_zp2() {
        let a = RingPresentation::new(CoeffRing::Zp2(prime(3)), vec![], vec![]).unwrap();
        let m = present_fw(&a).unwrap();
        assert_eq!(m.labels(), ["w(p)"]);
        assert!(m.is_free());
        assert_eq!(m.fp_dimension().unwrap(), 1);
    }

    #[test]
    fn present_dual_numbers_f3() {
        let ring = PolyRing::grevlex(CoeffRing::Fp(prime(3)), 1);
        let x = Poly::var(&ring, 0);
        let a = RingPresentation::from_ring(&ring, names(&["x"]), vec![x.pow(2)]).unwrap();
        let m = present_fw(&a).unwrap();
        // 2x^3 = 0 in F_3[x]/(x^2)
        assert!(m.is_free());
        assert_eq!(m.ngens(), 1);
        assert_eq!(m.fp_dimension().unwrap(), 2);
    }

    #[test]
    fn present_free_zp2_line() {
        let a = RingPresentation::new(CoeffRing::Zp2(prime(5)), names(&["x"]), vec![]).unwrap();
        let m = present_fw(&a).unwrap();
        assert_eq!(m.labels(), ["w(x)", "w(p)"]);
        assert!(m.is_free());
        assert!(matches!(m.fp_dimension(), Err(Error::Infinite(_))));
    }

    #[test]
    fn finite_field_has_zero_module() {
        let a = RingPresentation::new(CoeffRing::Fp(prime(7)), vec![], vec![]).unwrap();
        assert_eq!(present_fw(&a).unwrap().fp_dimension().unwrap(), 0);
    }

    #[test]
    fn axioms_small_run() {
        let r = check_axioms(prime(2), 1, 100, 42).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures);
        let again = check_axioms(prime(2), 1, 100, 42).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn axioms_degenerate_pairs() {
        let ring = PolyRing::grevlex(CoeffRing::Zp2(prime(3)), 2);
        let one = Poly::one(&ring);
        assert_eq!(check_pair(&one, &one).unwrap(), None);
        assert!(w_poly(&one).unwrap().iter().all(Poly::is_zero));
        let f = &Poly::var(&ring, 0).scale(4) + &Poly::constant(&ring, 7);
        assert_eq!(check_pair(&f, &Poly::zero(&ring)).unwrap(), None);
    }

    #[test]
    fn base_change_identity_and_quotient() {
        let ring = PolyRing::grevlex(CoeffRing::Fp(prime(5)), 2);
        let a = RingPresentation::from_ring(&ring, names(&["x", "y"]), vec![]).unwrap();
        let b = cusp();
        let id = base_change_map(&Morphism::identity(&a)).unwrap();
        let q = base_change_map(&Morphism::inclusion(&a, &b).unwrap()).unwrap();
        for cols in [id, q] {
            for (i, c) in cols.iter().enumerate() {
                for (j, e) in c.iter().enumerate() {
                    assert_eq!(e.is_constant() && e.constant_coeff() == 1, i == j);
                    assert_eq!(e.is_zero(), i != j);
                }
            }
        }
    }

    #[test]
    fn base_change_zp2_into_line() {
        let a = RingPresentation::new(CoeffRing::Zp2(prime(3)), vec![], vec![]).unwrap();
        let b = RingPresentation::new(CoeffRing::Zp2(prime(3)), names(&["x"]), vec![]).unwrap();
        let m = Morphism::inclusion(&a, &b).unwrap();
        let cols = base_change_map(&m).unwrap();
        assert_eq!(cols.len(), 1);
        assert!(cols[0][0].is_zero());
        assert_eq!(cols[0][1].constant_coeff(), 1);
        let coker = relative_cokernel(&m).unwrap();
        assert_eq!(coker.ngens(), 2);
        assert_eq!(coker.columns().len(), 1);
    }

    #[test]
    fn morphism_rejects_bad_images() {
        let ring = PolyRing::grevlex(CoeffRing::Fp(prime(5)), 2);
        let a = cusp();
        let b = RingPresentation::from_ring(&ring, names(&["x", "y"]), vec![]).unwrap();
        // the cusp does not map to the plane by the identity
        assert!(Morphism::inclusion(&a, &b).is_err());
        let fp = RingPresentation::new(CoeffRing::Fp(prime(3)), vec![], vec![]).unwrap();
        let zp = RingPresentation::new(CoeffRing::Zp2(prime(3)), vec![], vec![]).unwrap();
        assert!(Morphism::new(&fp, &zp, vec![]).is_err());
        assert!(Morphism::new(&zp, &fp, vec![]).is_ok());
    }

    #[test]
    fn localize_adds_inverse() {
        let a = cusp();
        let u = Poly::var(a.ring(), 0);
        let l = localize(&a, &u).unwrap();
        assert_eq!(l.vars(), ["x", "y", "t"]);
        assert_eq!(l.format_poly(&l.relations()[1]), "x*t + 4");
    }
}
