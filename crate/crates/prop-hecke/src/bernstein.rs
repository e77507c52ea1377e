//! Integral Bernstein maps, central elements, the Bernstein basis and Levi
//! subalgebras.

use std::sync::Arc;

use parking_lot::Mutex;
use rustc_hash::FxHashMap;

use crate::affine_weyl::{AffineSystem, WElem};
use crate::error::{precondition, Error, Result};
use crate::extended_group::{ExtendedGroup, TElem, Torus};
use crate::hecke::{Hecke, HeckeElement};
use crate::laurent::Laurent;
use crate::ring::{CharP, Ring};
use crate::root_datum::{cw_add, cw_scale, cw_sub, Cw, Facet, RootDatum, Sign, MAX_RANK};

type Key = (Facet, Sign, Cw);

#[derive(Debug)]
pub struct Bernstein {
    pub h: Arc<Hecke>,
    hilbert: Vec<Cw>,
    lineality: Vec<Cw>,
    cache: Mutex<FxHashMap<Key, HeckeElement<Laurent>>>,
}

impl Bernstein {
    pub fn new(h: Arc<Hecke>) -> Bernstein {
        let sys = &h.g.sys;
        let simples: Vec<usize> = sys.facet.simples(sys.datum.rank);
        let (hilbert, lineality) = sys.datum.dominant_generators(&simples);
        Bernstein {
            h,
            hilbert,
            lineality,
            cache: Mutex::new(FxHashMap::default()),
        }
    }

    /// Builds the full algebra of a datum.
    pub fn for_datum(rd: Arc<RootDatum>) -> Bernstein {
        let sys = Arc::new(AffineSystem::full(rd));
        Bernstein::new(Arc::new(Hecke::new(Arc::new(ExtendedGroup::new(sys)))))
    }

    pub fn sys(&self) -> &AffineSystem {
        &self.h.g.sys
    }

    pub fn rd(&self) -> &RootDatum {
        &self.h.g.sys.datum
    }

    pub fn g(&self) -> &ExtendedGroup {
        &self.h.g
    }

    /// Hilbert basis lifts of the dominant semigroup of this system.
    pub fn hilbert_basis(&self) -> &[Cw] {
        &self.hilbert
    }

    pub fn lineality(&self) -> &[Cw] {
        &self.lineality
    }

    pub fn length_translation(&self, lam: &Cw) -> usize {
        self.sys().length(&WElem::translation(*lam))
    }

    /// `λ ∈ 𝒞^σ(F)` for the roots of this system.
    pub fn in_chamber(&self, lam: &Cw, f: Facet, sigma: Sign) -> bool {
        let rd = self.rd();
        let s = sigma.value();
        self.sys().pos_roots.iter().all(|&a| {
            let v = s * rd.pairing(lam, a);
            if rd.in_facet(a, f) {
                v <= 0
            } else {
                v >= 0
            }
        })
    }

    fn is_sys_dominant(&self, lam: &Cw) -> bool {
        let rd = self.rd();
        self.sys()
            .facet
            .simples(rd.rank)
            .iter()
            .all(|&i| rd.pairing(lam, i) >= 0)
    }

    /// `w_F` of this system, acting on coweights.
    fn w_f(&self, f: Facet) -> u16 {
        self.rd().longest(f)
    }

    fn check_facet(&self, f: Facet) -> Result<()> {
        if !f.is_subset(&self.sys().facet) {
            return precondition(format!("facet {f} is not contained in {}", self.sys().facet));
        }
        Ok(())
    }

    /// Canonical `(μ, ν)` with `λ = μ − ν` and `μ, ν ∈ 𝒞^σ(F)`.
    pub fn decomposition(&self, f: Facet, sigma: Sign, lam: &Cw) -> (Cw, Cw) {
        let rd = self.rd();
        let weyl = &rd.weyl;
        let wf = self.w_f(f);
        let s = sigma.value();
        let lp = weyl.apply(wf, &cw_scale(lam, s));
        let simples = self.sys().facet.simples(rd.rank);
        let need: Vec<i32> = simples.iter().map(|&i| (-rd.pairing(&lp, i)).max(0)).collect();
        let ok = |nu: &Cw| simples.iter().zip(&need).all(|(&i, &c)| rd.pairing(nu, i) >= c);
        let mut nu = [0i32; MAX_RANK];
        for (k, &i) in simples.iter().enumerate() {
            if need[k] == 0 {
                continue;
            }
            let h = self
                .hilbert
                .iter()
                .filter(|h| rd.pairing(h, i) >= 1)
                .min_by_key(|h| simples.iter().map(|&j| rd.pairing(h, j)).sum::<i32>())
                .expect("Hilbert basis meets every simple root");
            nu = cw_add(&nu, &cw_scale(h, need[k]));
        }
        let mut progress = true;
        while progress {
            progress = false;
            for h in &self.hilbert {
                let cand = cw_sub(&nu, h);
                if ok(&cand) {
                    nu = cand;
                    progress = true;
                }
            }
        }
        let nu_real = weyl.apply(wf, &cw_scale(&nu, s));
        let mu = cw_add(lam, &nu_real);
        debug_assert!(self.in_chamber(&mu, f, sigma) && self.in_chamber(&nu_real, f, sigma));
        (mu, nu_real)
    }

    /// `q^e τ_{e^ν}⁻¹ τ_{e^μ}` for a given decomposition.
    pub fn bernstein_with(&self, lam: &Cw, mu: &Cw, nu: &Cw) -> Result<HeckeElement<Laurent>> {
        let h = &*self.h;
        let r = &h.generic;
        let num = self.length_translation(lam) + self.length_translation(nu);
        let den = self.length_translation(mu);
        if num < den || (num - den) % 2 != 0 {
            return Err(Error::Precondition(format!(
                "odd or negative exponent for λ = {}",
                self.rd().fmt_cw(lam)
            )));
        }
        let e = ((num - den) / 2) as i32;
        let start = h.basis(r, TElem::splitting(*mu));
        let prod = h.mul_basis_inv(r, &start, &TElem::splitting(*nu))?;
        Ok(h.scale(r, &prod, &Laurent::q_pow(1, e)))
    }

    /// `B_F^σ(λ)` in generic mode.
    pub fn bernstein_lam(&self, f: Facet, sigma: Sign, lam: &Cw) -> Result<HeckeElement<Laurent>> {
        self.check_facet(f)?;
        let key = (f, sigma, *lam);
        if let Some(e) = self.cache.lock().get(&key) {
            return Ok(e.clone());
        }
        let e = if self.in_chamber(lam, f, sigma) {
            self.h.basis(&self.h.generic, TElem::splitting(*lam))
        } else {
            let (mu, nu) = self.decomposition(f, sigma, lam);
            self.bernstein_with(lam, &mu, &nu)?
        };
        self.cache.lock().insert(key, e.clone());
        Ok(e)
    }

    /// `B_F^σ(λ + t) = B_F^σ(λ) τ_t`.
    pub fn bernstein(&self, f: Facet, sigma: Sign, lam: &Cw, t: &Torus) -> Result<HeckeElement<Laurent>> {
        let b = self.bernstein_lam(f, sigma, lam)?;
        Ok(self.h.mul_length_zero(&self.h.generic, &b, &TElem::torus(*t)))
    }

    pub fn bernstein_charp(&self, r: &CharP, f: Facet, sigma: Sign, lam: &Cw, t: &Torus) -> Result<HeckeElement<u32>> {
        self.h.specialize(r, &self.bernstein(f, sigma, lam, t)?)
    }

    /// An alternative decomposition: shift `ν` by a chamber generator.
    pub fn bernstein_alt(&self, f: Facet, sigma: Sign, lam: &Cw, k: usize) -> Result<HeckeElement<Laurent>> {
        self.check_facet(f)?;
        let (mu, nu) = self.decomposition(f, sigma, lam);
        let rd = self.rd();
        let gen = self.hilbert[k % self.hilbert.len().max(1)];
        let extra = rd.weyl.apply(self.w_f(f), &cw_scale(&gen, sigma.value()));
        self.bernstein_with(lam, &cw_add(&mu, &extra), &cw_add(&nu, &extra))
    }

    /// `B_{x₀}⁺(w̃)` for `w̃ = e^λ w̃₀`.
    pub fn bernstein_basis(&self, w: &TElem) -> Result<HeckeElement<Laurent>> {
        let h = &*self.h;
        let r = &h.generic;
        let lam = self.rd().weyl.apply(w.u, &w.lam);
        let w0 = TElem {
            t: w.t,
            u: w.u,
            lam: [0; MAX_RANK],
        };
        let lw = h.length(w) as i64;
        let l0 = h.length(&w0) as i64;
        let ll = self.length_translation(&lam) as i64;
        let e = lw - l0 - ll;
        if e % 2 != 0 {
            return precondition("odd exponent in the Bernstein basis");
        }
        let x0 = self.sys().facet;
        let b = self.bernstein_lam(x0, Sign::Plus, &lam)?;
        let prod = h.mul_basis(r, &b, &w0);
        Ok(h.scale(r, &prod, &Laurent::q_pow(1, (e / 2) as i32)))
    }

    pub fn bernstein_basis_in<R: Ring>(&self, r: &R, w: &TElem) -> Result<HeckeElement<R::E>> {
        let b = self.bernstein_basis(w)?;
        self.h
            .from_generic_constants(r, &b)
            .ok_or_else(|| Error::Mode("Bernstein basis element has a non-integral coefficient".into()))
    }

    /// Expands `a` in the Bernstein basis `{B_{x₀}⁺(w)}`.
    pub fn to_bernstein_basis<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>) -> Result<Vec<(TElem, R::E)>> {
        let h = &*self.h;
        let mut rest = a.clone();
        let mut out = Vec::new();
        while !rest.is_zero() {
            let (w, c) = rest
                .iter()
                .map(|(w, c)| (*w, c.clone()))
                .max_by_key(|(w, _)| (h.length(w), *w))
                .unwrap();
            let b = self.bernstein_basis_in(r, &w)?;
            rest = h.sub(r, &rest, &h.scale(r, &b, &c));
            out.push((w, c));
        }
        out.sort_by_key(|(w, _)| (h.length(w), *w));
        Ok(out)
    }

    pub fn from_bernstein_basis<R: Ring>(&self, r: &R, coords: &[(TElem, R::E)]) -> Result<HeckeElement<R::E>> {
        let h = &*self.h;
        let mut out = HeckeElement::zero();
        for (w, c) in coords {
            out = h.add(r, &out, &h.scale(r, &self.bernstein_basis_in(r, w)?, c));
        }
        Ok(out)
    }

    /// The `𝔚`-orbit of `(λ, t)` in `X̃_*(T)`.
    pub fn orbit(&self, lam: &Cw, t: &Torus) -> Vec<(Cw, Torus)> {
        let g = self.g();
        let weyl = &self.rd().weyl;
        let mut out: Vec<(Cw, Torus)> = self
            .sys()
            .finite_elements()
            .into_iter()
            .map(|w| (weyl.apply(w, lam), g.t_act(w, t)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn orbit_sum(&self, f: Facet, sigma: Sign, lam: &Cw, t: &Torus) -> Result<HeckeElement<Laurent>> {
        let h = &*self.h;
        let mut out = HeckeElement::zero();
        for (l, s) in self.orbit(lam, t) {
            out = h.add(&h.generic, &out, &self.bernstein(f, sigma, &l, &s)?);
        }
        Ok(out)
    }

    /// `z_𝒪` for the orbit of `(λ, t)`.
    pub fn central(&self, lam: &Cw, t: &Torus) -> Result<HeckeElement<Laurent>> {
        self.orbit_sum(Facet::C, Sign::Plus, lam, t)
    }

    pub fn central_charp(&self, r: &CharP, lam: &Cw) -> Result<HeckeElement<u32>> {
        self.h.specialize(r, &self.central(lam, &[0; MAX_RANK])?)
    }

    /// `ℓ_𝒪`: the common length of `e^λ` on the orbit.
    pub fn orbit_length(&self, lam: &Cw) -> usize {
        self.length_translation(lam)
    }

    /// Generators of `𝔍`: `z_h` for Hilbert basis lifts `h` with `ℓ(e^h) > 0`.
    pub fn ideal_generators(&self) -> Vec<Cw> {
        self.hilbert
            .iter()
            .copied()
            .filter(|h| self.length_translation(h) > 0)
            .collect()
    }

    /// Dominant coweights (for this system) with `ℓ(e^λ) <= max_len` and
    /// lineality part bounded by `lin_bound`.
    pub fn dominant_up_to(&self, max_len: usize, lin_bound: i32) -> Vec<Cw> {
        let mut out: Vec<Cw> = Vec::new();
        let gens = &self.hilbert;
        let mut frontier = vec![[0i32; MAX_RANK]];
        let mut seen = std::collections::HashSet::new();
        seen.insert([0i32; MAX_RANK]);
        while let Some(x) = frontier.pop() {
            out.push(x);
            for h in gens {
                let y = cw_add(&x, h);
                if self.length_translation(&y) <= max_len && seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut shifted = Vec::new();
        for x in &out {
            for lin in lineality_box(&self.lineality, lin_bound) {
                let y = cw_add(x, &lin);
                debug_assert!(self.is_sys_dominant(&y));
                shifted.push(y);
            }
        }
        shifted.sort_by_key(|x| (self.length_translation(x), *x));
        shifted.dedup();
        shifted
    }

    /// All coweights with `ℓ(e^λ) <= max_len`, grouped as dominant orbit representatives.
    pub fn coweights_up_to(&self, max_len: usize, lin_bound: i32) -> Vec<Cw> {
        let rd = self.rd();
        let mut out: Vec<Cw> = Vec::new();
        for d in self.dominant_up_to(max_len, lin_bound) {
            for w in self.sys().finite_elements() {
                out.push(rd.weyl.apply(w, &d));
            }
        }
        out.sort_by_key(|x| (self.length_translation(x), *x));
        out.dedup();
        out
    }
}

fn lineality_box(lin: &[Cw], bound: i32) -> Vec<Cw> {
    let mut out = vec![[0i32; MAX_RANK]];
    for v in lin {
        let mut next = Vec::new();
        for x in &out {
            for k in -bound..=bound {
                next.push(cw_add(x, &cw_scale(v, k)));
            }
        }
        out = next;
    }
    out
}

/// The algebra of the Levi subsystem `Φ_F`, with the embeddings `j_F^±`.
#[derive(Debug)]
pub struct LeviAlgebra {
    pub facet: Facet,
    pub bern: Bernstein,
    full: Arc<AffineSystem>,
}

impl LeviAlgebra {
    pub fn new(full: Arc<AffineSystem>, f: Facet) -> LeviAlgebra {
        let sys = Arc::new(AffineSystem::levi(full.datum.clone(), f));
        let h = Arc::new(Hecke::new(Arc::new(ExtendedGroup::new(sys))));
        LeviAlgebra {
            facet: f,
            bern: Bernstein::new(h),
            full,
        }
    }

    pub fn hecke(&self) -> &Hecke {
        &self.bern.h
    }

    pub fn length(&self, w: &TElem) -> usize {
        self.hecke().length(w)
    }

    /// `j_F⁺`: `τ_w^F ↦ τ_w` on F-positive support.
    pub fn j_plus<E: Clone + PartialEq>(&self, a: &HeckeElement<E>) -> Result<HeckeElement<E>> {
        for w in a.support() {
            if !self.full.is_f_positive(&w.proj(), self.facet)? {
                return precondition(format!("support element {:?} is not F-positive", w));
            }
        }
        Ok(a.clone())
    }

    /// `j_F⁻`: `τ_w^F ↦ τ_w` on F-negative support.
    pub fn j_minus<E: Clone + PartialEq>(&self, a: &HeckeElement<E>) -> Result<HeckeElement<E>> {
        for w in a.support() {
            if !self.full.is_f_negative(&w.proj(), self.facet)? {
                return precondition(format!("support element {:?} is not F-negative", w));
            }
        }
        Ok(a.clone())
    }

    /// `_F B_{F'}⁺(λ)`.
    pub fn levi_bernstein(&self, f_prime: Facet, lam: &Cw) -> Result<HeckeElement<Laurent>> {
        self.bern.bernstein_lam(f_prime, Sign::Plus, lam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern(label: &str, q: u32) -> Bernstein {
        Bernstein::for_datum(Arc::new(RootDatum::build(label, None, q).unwrap()))
    }

    #[test]
    fn dominant_is_tau() {
        let b = bern("SL2", 3);
        let a = b.rd().roots[0].coroot;
        let e = b.bernstein_lam(Facet::C, Sign::Plus, &a).unwrap();
        assert_eq!(e, b.h.basis(&b.h.generic, TElem::splitting(a)));
        let z = b.bernstein_lam(Facet::x0(1), Sign::Minus, &[0; 4]).unwrap();
        assert_eq!(z, b.h.one(&b.h.generic));
    }

    #[test]
    fn sl2_negative_coroot_is_integral_with_unit_leading_term() {
        let b = bern("SL2", 3);
        let a = b.rd().roots[0].coroot;
        let neg = cw_scale(&a, -1);
        let e = b.bernstein_lam(Facet::C, Sign::Plus, &neg).unwrap();
        assert_eq!(e.get(&TElem::splitting(neg)), Some(&Laurent::one()));
        for (w, c) in e.iter() {
            assert!(c.is_q_polynomial());
            if *w != TElem::splitting(neg) {
                assert!(b.h.length(w) < 2);
            }
        }
        let alt = b.bernstein_alt(Facet::C, Sign::Plus, &neg, 0).unwrap();
        assert_eq!(alt, e);
    }

    #[test]
    fn central_element_sl2() {
        let b = bern("SL2", 3);
        let a = b.rd().roots[0].coroot;
        let z = b.central(&a, &[0; 4]).unwrap();
        let h = &b.h;
        let r = &h.generic;
        for l in h.g.lifts.iter() {
            let t = h.basis(r, *l);
            assert_eq!(h.mul(r, &z, &t), h.mul(r, &t, &z));
        }
        assert_eq!(h.iota_c(&z), z);
    }
}
