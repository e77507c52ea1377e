//! Sparse elements of the pro-p Iwahori-Hecke ring in the `τ`-basis.
//!
//! Products are computed by factoring the right-hand basis element as
//! `ω̃ · ñ_{A_1} ⋯ ñ_{A_k}` with `ℓ(ω̃) = 0` and applying, letter by letter,
//! either `τ_x τ_ñ = τ_{xñ}` or the quadratic relation
//! `τ_ñ² = q τ_{ñ²} + c_A τ_ñ`.

use std::sync::Arc;

use parking_lot::Mutex;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended_group::{Character, ExtendedGroup, TElem, TElemJson};
use crate::laurent::Laurent;
use crate::ring::{CharP, Generic, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement<E> {
    terms: FxHashMap<TElem, E>,
}

impl<E: Clone + PartialEq> HeckeElement<E> {
    pub fn zero() -> Self {
        HeckeElement {
            terms: FxHashMap::default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &TElem) -> Option<&E> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TElem, &E)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &TElem> {
        self.terms.keys()
    }
}

#[derive(Serialize)]
pub struct TermJson {
    pub w: TElemJson,
    pub c: String,
}

#[derive(Serialize)]
pub struct ElementJson {
    pub mode: String,
    pub terms: Vec<TermJson>,
}

/// `w̃ = ω̃ · ñ_{A_1} ⋯ ñ_{A_k}`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub omega: TElem,
    pub letters: Vec<usize>,
}

#[derive(Debug)]
pub struct Hecke {
    pub g: Arc<ExtendedGroup>,
    pub generic: Generic,
    pub charp: CharP,
    corrupt_quadratic: bool,
    factors: Mutex<FxHashMap<TElem, Arc<Factorization>>>,
    iota_cache: Mutex<FxHashMap<TElem, HeckeElement<Laurent>>>,
}

impl Hecke {
    pub fn new(g: Arc<ExtendedGroup>) -> Hecke {
        let charp = CharP::for_q(g.q).expect("q is a prime power");
        Hecke {
            g,
            generic: Generic,
            charp,
            corrupt_quadratic: false,
            factors: Mutex::new(FxHashMap::default()),
            iota_cache: Mutex::new(FxHashMap::default()),
        }
    }

    /// Test hook: drops one torus term from every quadratic relation.
    pub fn with_corrupted_quadratic(g: Arc<ExtendedGroup>) -> Hecke {
        let mut h = Hecke::new(g);
        h.corrupt_quadratic = true;
        h
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupt_quadratic
    }

    pub fn length(&self, w: &TElem) -> usize {
        self.g.length(w)
    }

    pub fn basis<R: Ring>(&self, r: &R, w: TElem) -> HeckeElement<R::E> {
        let mut e = HeckeElement::zero();
        e.terms.insert(w, r.one());
        e
    }

    pub fn one<R: Ring>(&self, r: &R) -> HeckeElement<R::E> {
        self.basis(r, TElem::ID)
    }

    pub fn scalar<R: Ring>(&self, r: &R, c: R::E) -> HeckeElement<R::E> {
        let mut e = HeckeElement::zero();
        if !r.is_zero(&c) {
            e.terms.insert(TElem::ID, c);
        }
        e
    }

    pub fn add_term<R: Ring>(&self, r: &R, a: &mut HeckeElement<R::E>, w: TElem, c: &R::E) {
        if r.is_zero(c) {
            return;
        }
        match a.terms.get_mut(&w) {
            Some(old) => {
                let s = r.add(old, c);
                if r.is_zero(&s) {
                    a.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                a.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, b: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        let mut out = a.clone();
        for (w, c) in b.iter() {
            self.add_term(r, &mut out, *w, c);
        }
        out
    }

    pub fn neg<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        HeckeElement {
            terms: a.terms.iter().map(|(w, c)| (*w, r.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, b: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        self.add(r, a, &self.neg(r, b))
    }

    pub fn scale<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, c: &R::E) -> HeckeElement<R::E> {
        let mut out = HeckeElement::zero();
        for (w, x) in a.iter() {
            self.add_term(r, &mut out, *w, &r.mul(x, c));
        }
        out
    }

    pub fn factor(&self, w: &TElem) -> Arc<Factorization> {
        if let Some(f) = self.factors.lock().get(w) {
            return f.clone();
        }
        let (_, word) = self.g.sys.decompose(&w.proj());
        let mut prod = TElem::ID;
        for &a in &word {
            prod = self.g.mul(&prod, &self.g.lifts[a]);
        }
        let omega = self.g.mul(w, &self.g.inv(&prod));
        debug_assert_eq!(self.length(&omega), 0);
        let f = Arc::new(Factorization { omega, letters: word });
        self.factors.lock().insert(*w, f.clone());
        f
    }

    /// Right multiplication by a length-zero basis element (or a torus element).
    pub fn mul_length_zero<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, w: &TElem) -> HeckeElement<R::E> {
        let _ = r;
        HeckeElement {
            terms: a.terms.iter().map(|(x, c)| (self.g.mul(x, w), c.clone())).collect(),
        }
    }

    /// Left multiplication by a length-zero basis element.
    pub fn lmul_length_zero<R: Ring>(&self, r: &R, w: &TElem, a: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        let _ = r;
        HeckeElement {
            terms: a.terms.iter().map(|(x, c)| (self.g.mul(w, x), c.clone())).collect(),
        }
    }

    pub fn c_a_terms(&self, letter: usize) -> Vec<crate::extended_group::Torus> {
        let mut c = self.g.c_a(letter);
        if self.corrupt_quadratic {
            c.pop();
        }
        c
    }

    /// `a · τ_{ñ_A}`.
    pub fn mul_letter<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, letter: usize) -> HeckeElement<R::E> {
        let n = self.g.lifts[letter];
        let q = r.q();
        let ca = self.c_a_terms(letter);
        let mut out = HeckeElement::zero();
        for (x, c) in a.iter() {
            let xn = self.g.mul(x, &n);
            if self.g.sys.descent(&x.proj(), letter) > 0 {
                self.add_term(r, &mut out, xn, c);
            } else {
                self.add_term(r, &mut out, xn, &r.mul(c, &q));
                for t in &ca {
                    self.add_term(r, &mut out, self.g.mul(x, &TElem::torus(*t)), c);
                }
            }
        }
        out
    }

    /// `a · τ_{ñ_A}⁻¹`; needs `q` invertible.
    pub fn mul_letter_inv<R: Ring>(
        &self,
        r: &R,
        a: &HeckeElement<R::E>,
        letter: usize,
    ) -> Result<HeckeElement<R::E>> {
        let n = self.g.lifts[letter];
        let ninv = self.g.inv(&n);
        let n2inv = self.g.mul(&ninv, &ninv);
        let ca = self.c_a_terms(letter);
        let mut out = HeckeElement::zero();
        let mut qinv = None;
        for (x, c) in a.iter() {
            let xni = self.g.mul(x, &ninv);
            if self.g.sys.descent(&x.proj(), letter) < 0 {
                self.add_term(r, &mut out, xni, c);
            } else {
                if qinv.is_none() {
                    qinv = Some(r.q_pow(-1).ok_or_else(|| Error::Mode("q is not invertible in this mode".into()))?);
                }
                let cq = r.mul(c, qinv.as_ref().unwrap());
                self.add_term(r, &mut out, xni, &cq);
                let base = self.g.mul(x, &n2inv);
                let neg = r.neg(&cq);
                for t in &ca {
                    self.add_term(r, &mut out, self.g.mul(&base, &TElem::torus(*t)), &neg);
                }
            }
        }
        Ok(out)
    }

    /// `a · τ_w`.
    pub fn mul_basis<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, w: &TElem) -> HeckeElement<R::E> {
        let f = self.factor(w);
        let mut cur = self.mul_length_zero(r, a, &f.omega);
        for &l in &f.letters {
            cur = self.mul_letter(r, &cur, l);
        }
        cur
    }

    /// `a · τ_w⁻¹`.
    pub fn mul_basis_inv<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, w: &TElem) -> Result<HeckeElement<R::E>> {
        let f = self.factor(w);
        let mut cur = a.clone();
        for &l in f.letters.iter().rev() {
            cur = self.mul_letter_inv(r, &cur, l)?;
        }
        Ok(self.mul_length_zero(r, &cur, &self.g.inv(&f.omega)))
    }

    pub fn mul<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, b: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        let mut out = HeckeElement::zero();
        if a.is_zero() {
            return out;
        }
        for (w, c) in sorted(b) {
            let part = self.mul_basis(r, a, &w);
            for (x, y) in part.iter() {
                self.add_term(r, &mut out, *x, &r.mul(y, &c));
            }
        }
        out
    }

    pub fn pow<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>, k: u32) -> HeckeElement<R::E> {
        (0..k).fold(self.one(r), |acc, _| self.mul(r, &acc, a))
    }

    /// `τ_w⁻¹` in generic mode.
    pub fn invert_basis(&self, w: &TElem) -> HeckeElement<Laurent> {
        self.mul_basis_inv(&self.generic, &self.one(&self.generic), w)
            .expect("generic mode inverts q")
    }

    /// `ι(τ_w) = (−q)^{ℓ(w)} (τ_{w⁻¹})⁻¹`, cached.
    pub fn iota_basis(&self, w: &TElem) -> HeckeElement<Laurent> {
        if let Some(e) = self.iota_cache.lock().get(w) {
            return e.clone();
        }
        let l = self.length(w) as i32;
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let inv = self.invert_basis(&self.g.inv(w));
        let e = self.scale(&self.generic, &inv, &Laurent::q_pow(sign, l));
        self.iota_cache.lock().insert(*w, e.clone());
        e
    }

    pub fn iota(&self, a: &HeckeElement<Laurent>) -> HeckeElement<Laurent> {
        let r = &self.generic;
        let mut out = HeckeElement::zero();
        for (w, c) in sorted(a) {
            for (x, y) in self.iota_basis(&w).iter() {
                self.add_term(r, &mut out, *x, &r.mul(y, &c));
            }
        }
        out
    }

    pub fn v_c<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>) -> HeckeElement<R::E> {
        HeckeElement {
            terms: a
                .iter()
                .map(|(w, c)| {
                    let e = self.g.sys.epsilon_c(&w.proj());
                    (*w, if e > 0 { c.clone() } else { r.neg(c) })
                })
                .collect(),
        }
    }

    pub fn iota_c(&self, a: &HeckeElement<Laurent>) -> HeckeElement<Laurent> {
        self.iota(&self.v_c(&self.generic, a))
    }

    /// `ι` in characteristic `p`, through the specialized images of the basis.
    pub fn iota_charp(&self, r: &CharP, a: &HeckeElement<u32>) -> Result<HeckeElement<u32>> {
        let mut out = HeckeElement::zero();
        for (w, c) in sorted(a) {
            let img = self.specialize(r, &self.iota_basis(&w))?;
            for (x, y) in img.iter() {
                self.add_term(r, &mut out, *x, &r.mul(y, &c));
            }
        }
        Ok(out)
    }

    pub fn iota_c_charp(&self, r: &CharP, a: &HeckeElement<u32>) -> Result<HeckeElement<u32>> {
        self.iota_charp(r, &self.v_c(r, a))
    }

    /// `v ↦ 0`, after checking that every coefficient lies in `Z[q]`.
    pub fn specialize(&self, r: &CharP, a: &HeckeElement<Laurent>) -> Result<HeckeElement<u32>> {
        let mut out = HeckeElement::zero();
        for (w, c) in a.iter() {
            if !c.is_q_polynomial() {
                return Err(Error::Integrality {
                    coeff: c.to_string(),
                    at: self.g.format(w),
                });
            }
            self.add_term(r, &mut out, *w, &r.from_int(c.coeff(0)));
        }
        Ok(out)
    }

    /// Embeds an integer-coefficient element into another ring.
    pub fn from_generic_constants<R: Ring>(&self, r: &R, a: &HeckeElement<Laurent>) -> Option<HeckeElement<R::E>> {
        let mut out = HeckeElement::zero();
        for (w, c) in a.iter() {
            let mut val = r.zero();
            for (e, k) in c.terms() {
                if e % 2 != 0 {
                    return None;
                }
                let qp = r.q_pow(e / 2)?;
                val = r.add(&val, &r.mul(&qp, &r.from_int(k)));
            }
            self.add_term(r, &mut out, *w, &val);
        }
        Some(out)
    }

    /// `ε_ξ = (−1)^{dim} Σ_t ξ(t⁻¹) τ_t`.
    pub fn idempotent(&self, r: &CharP, xi: &Character) -> HeckeElement<u32> {
        let sign = if self.g.rd().dim % 2 == 0 { 1 } else { -1 };
        let mut out = HeckeElement::zero();
        for t in self.g.all_tori() {
            let val = r.unit_root_pow(-self.g.char_exp(xi, &t));
            self.add_term(r, &mut out, TElem::torus(t), &r.mul(&r.from_int(sign), &val));
        }
        out
    }

    pub fn format<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .sorted_terms(a)
            .into_iter()
            .map(|(w, c)| format!("({})·τ[{}]", r.format(&c), self.g.format(&w)))
            .collect();
        parts.join(" + ")
    }

    /// Terms ordered by length, then `Ω`-class, then `(λ, u, t)`.
    pub fn sorted_terms<E: Clone + PartialEq>(&self, a: &HeckeElement<E>) -> Vec<(TElem, E)> {
        let mut v: Vec<(TElem, E)> = a.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_by_cached_key(|(w, _)| (self.length(w), self.g.sys.omega_class(&w.proj()), w.lam, w.u, w.t));
        v
    }

    pub fn to_json<R: Ring>(&self, r: &R, a: &HeckeElement<R::E>) -> ElementJson {
        ElementJson {
            mode: r.mode_name().to_string(),
            terms: self
                .sorted_terms(a)
                .into_iter()
                .map(|(w, c)| TermJson {
                    w: self.g.to_json(&w),
                    c: r.format(&c),
                })
                .collect(),
        }
    }
}

/// Terms in a fixed order, for deterministic accumulation.
fn sorted<E: Clone + PartialEq>(a: &HeckeElement<E>) -> Vec<(TElem, E)> {
    let mut v: Vec<(TElem, E)> = a.iter().map(|(w, c)| (*w, c.clone())).collect();
    v.sort_by_key(|(w, _)| *w);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::AffineSystem;
    use crate::root_datum::RootDatum;

    fn algebra(label: &str, q: u32) -> Hecke {
        let rd = Arc::new(RootDatum::build(label, None, q).unwrap());
        Hecke::new(Arc::new(ExtendedGroup::new(Arc::new(AffineSystem::full(rd)))))
    }

    #[test]
    fn quadratic_relation_sl2() {
        let h = algebra("SL2", 3);
        let r = &h.generic;
        let n = h.g.lifts[0];
        let tn = h.basis(r, n);
        let sq = h.mul(r, &tn, &tn);
        let mut expect = h.basis(r, h.g.mul(&n, &n));
        expect = h.scale(r, &expect, &Laurent::q_pow(1, 1));
        expect = h.add(r, &expect, &tn);
        expect = h.add(r, &expect, &h.basis(r, h.g.mul(&TElem::torus([1, 0, 0, 0]), &n)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn inverse_letters() {
        let h = algebra("SL3", 3);
        let r = &h.generic;
        for a in 0..h.g.lifts.len() {
            let n = h.g.lifts[a];
            let prod = h.mul(r, &h.basis(r, n), &h.invert_basis(&n));
            assert_eq!(prod, h.one(r));
        }
        let w = h.g.mul(&h.g.lifts[0], &h.g.lifts[2]);
        let w = h.g.mul(&w, &h.g.lifts[1]);
        let prod = h.mul(r, &h.invert_basis(&w), &h.basis(r, w));
        assert_eq!(prod, h.one(r));
    }

    #[test]
    fn iota_is_involution_and_fixes_length_zero() {
        let h = algebra("GL2", 3);
        let r = &h.generic;
        let omega = h.g.sys.omega_generators()[0];
        let w = TElem::lift(&omega);
        assert_eq!(h.iota(&h.basis(r, w)), h.basis(r, w));
        let x = h.g.mul(&h.g.lifts[0], &h.g.lifts[1]);
        let b = h.basis(r, x);
        assert_eq!(h.iota(&h.iota(&b)), b);
        assert_eq!(h.iota_c(&h.iota_c(&b)), b);
    }

    #[test]
    fn idempotents_sl2() {
        let h = algebra("SL2", 3);
        let r = h.charp.clone();
        let xs = h.g.characters();
        let mut total = HeckeElement::zero();
        for x in &xs {
            let e = h.idempotent(&r, x);
            assert_eq!(h.mul(&r, &e, &e), e);
            total = h.add(&r, &total, &e);
        }
        assert_eq!(total, h.one(&r));
        let e0 = h.idempotent(&r, &xs[0]);
        let e1 = h.idempotent(&r, &xs[1]);
        assert!(h.mul(&r, &e0, &e1).is_zero());
    }

    #[test]
    fn associativity_on_short_elements() {
        for (label, q) in [("PGL2", 5), ("B2", 4), ("GL2", 3), ("SL3", 3)] {
            let h = algebra(label, q);
            let om = h.g.sys.small_omegas(1);
            let elems = h.g.sys.elements_up_to(3, &om);
            let pick: Vec<TElem> = elems
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let mut t = TElem::lift(w);
                    t.t[0] = (i % (q as usize - 1)) as u16;
                    t
                })
                .step_by(3)
                .take(12)
                .collect();
            let r = &h.generic;
            let c = h.charp.clone();
            for a in &pick {
                for b in &pick {
                    for d in pick.iter().step_by(4) {
                        let (ba, bb, bd) = (h.basis(r, *a), h.basis(r, *b), h.basis(r, *d));
                        let lhs = h.mul(r, &h.mul(r, &ba, &bb), &bd);
                        let rhs = h.mul(r, &ba, &h.mul(r, &bb, &bd));
                        assert_eq!(lhs, rhs, "{label}");
                        let (ba, bb, bd) = (h.basis(&c, *a), h.basis(&c, *b), h.basis(&c, *d));
                        let lhs = h.mul(&c, &h.mul(&c, &ba, &bb), &bd);
                        let rhs = h.mul(&c, &ba, &h.mul(&c, &bb, &bd));
                        assert_eq!(lhs, rhs, "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn specialize_rejects_negative_powers() {
        let h = algebra("SL2", 3);
        let inv = h.invert_basis(&h.g.lifts[0]);
        assert!(matches!(h.specialize(&h.charp, &inv), Err(Error::Integrality { .. })));
    }
}
