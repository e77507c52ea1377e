//! Extended affine Weyl groups `W = 𝔚 ⋉ X_*(T)` of a root subsystem.
//!
//! An element is stored as `u·e^λ`. The same code serves the full datum and
//! the Levi subsystems `Φ_F`, which share the lattice `X_*(T)`.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::lattice::LatticeQuotient;
use crate::root_datum::{cw_add, cw_from, cw_neg, cw_scale, Cw, Facet, RootDatum, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: usize,
    pub r: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WElem {
    pub u: u16,
    pub lam: Cw,
}

impl WElem {
    pub const ID: WElem = WElem { u: 0, lam: [0; MAX_RANK] };

    pub fn translation(lam: Cw) -> WElem {
        WElem { u: 0, lam }
    }

    pub fn finite(u: u16) -> WElem {
        WElem { u, lam: [0; MAX_RANK] }
    }
}

#[derive(Clone, Debug)]
pub struct AffineSimple {
    pub root: AffineRoot,
    /// The reflection `s_A`.
    pub refl: WElem,
    /// Finite simple index, or `None` for an `s0`.
    pub finite_index: Option<usize>,
    pub name: String,
}

#[derive(Serialize)]
pub struct WElemJson {
    pub lambda: Vec<i32>,
    pub u: String,
}

#[derive(Debug)]
pub struct AffineSystem {
    pub datum: Arc<RootDatum>,
    /// `Π_S` as a facet of the ambient datum.
    pub facet: Facet,
    pub pos_roots: Vec<usize>,
    pub roots: Vec<usize>,
    pub simples: Vec<AffineSimple>,
    pub highest: Vec<usize>,
    pub omega: LatticeQuotient,
}

impl AffineSystem {
    pub fn full(datum: Arc<RootDatum>) -> AffineSystem {
        let f = Facet::x0(datum.rank);
        Self::levi(datum, f)
    }

    /// The affine system of the root subdatum `(Φ_F, X_*(T), Φ̌_F, X_*(T))`.
    pub fn levi(datum: Arc<RootDatum>, facet: Facet) -> AffineSystem {
        let rd = &*datum;
        let pos_roots: Vec<usize> = (0..rd.npos).filter(|&a| rd.in_facet(a, facet)).collect();
        let roots: Vec<usize> = pos_roots.iter().copied().chain(pos_roots.iter().map(|&a| rd.neg_root(a))).collect();
        let mut highest = Vec::new();
        for comp in &rd.components {
            let sub: Vec<usize> = comp.iter().copied().filter(|&i| facet.contains(i)).collect();
            // connected pieces of `sub` inside the Dynkin diagram
            let mut seen = vec![false; sub.len()];
            for s in 0..sub.len() {
                if seen[s] {
                    continue;
                }
                let mut piece = vec![sub[s]];
                seen[s] = true;
                let mut k = 0;
                while k < piece.len() {
                    let i = piece[k];
                    for (t, &j) in sub.iter().enumerate() {
                        if !seen[t] && rd.cartan[i][j] != 0 {
                            seen[t] = true;
                            piece.push(j);
                        }
                    }
                    k += 1;
                }
                let h = pos_roots
                    .iter()
                    .copied()
                    .filter(|&a| rd.roots[a].coeffs.iter().enumerate().all(|(j, &c)| c == 0 || piece.contains(&j)))
                    .max_by_key(|&a| rd.roots[a].height)
                    .unwrap();
                highest.push(h);
            }
        }
        let mut simples = Vec::new();
        for i in facet.simples(rd.rank) {
            simples.push(AffineSimple {
                root: AffineRoot { root: i, r: 0 },
                refl: WElem::finite(rd.weyl.simple(i)),
                finite_index: Some(i),
                name: format!("s{}", i + 1),
            });
        }
        let multi = highest.len() > 1;
        for (k, &h) in highest.iter().enumerate() {
            let beta = &rd.roots[h];
            let u = reflection_of(rd, h);
            simples.push(AffineSimple {
                root: AffineRoot { root: rd.neg_root(h), r: 1 },
                refl: WElem { u, lam: cw_neg(&beta.coroot) },
                finite_index: None,
                name: if multi { format!("s0_{}", k + 1) } else { "s0".to_string() },
            });
        }
        let gens: Vec<Vec<i64>> = facet
            .simples(rd.rank)
            .iter()
            .map(|&i| rd.roots[i].coroot[..rd.dim].iter().map(|&x| i64::from(x)).collect())
            .collect();
        let omega = LatticeQuotient::new(rd.dim, &gens);
        AffineSystem {
            datum,
            facet,
            pos_roots,
            roots,
            simples,
            highest,
            omega,
        }
    }

    pub fn rd(&self) -> &RootDatum {
        &self.datum
    }

    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        let w = &self.datum.weyl;
        WElem {
            u: w.mul(a.u, b.u),
            lam: cw_add(&w.apply(w.inv(b.u), &a.lam), &b.lam),
        }
    }

    pub fn inv(&self, a: &WElem) -> WElem {
        let w = &self.datum.weyl;
        WElem {
            u: w.inv(a.u),
            lam: cw_neg(&w.apply(a.u, &a.lam)),
        }
    }

    pub fn act(&self, w: &WElem, a: &AffineRoot) -> AffineRoot {
        let rd = &self.datum;
        AffineRoot {
            root: rd.weyl.root_image(w.u, a.root),
            r: a.r - rd.pairing(&w.lam, a.root),
        }
    }

    pub fn is_positive(&self, a: &AffineRoot) -> bool {
        a.r > 0 || (a.r == 0 && self.datum.roots[a.root].positive)
    }

    /// Length through per-root inversion counts.
    pub fn length(&self, w: &WElem) -> usize {
        let rd = &*self.datum;
        let mut total = 0i32;
        for &a in &self.roots {
            let img_pos = i32::from(rd.roots[rd.weyl.root_image(w.u, a)].positive);
            let neg = i32::from(!rd.roots[a].positive);
            total += (rd.pairing(&w.lam, a) - img_pos - neg + 1).max(0);
        }
        total as usize
    }

    /// Length by enumerating affine roots directly.
    pub fn length_by_enumeration(&self, w: &WElem) -> usize {
        let bound = w.lam.iter().map(|x| x.abs()).sum::<i32>() * 4 + 2;
        let mut n = 0;
        for &a in &self.roots {
            for r in -bound..=bound {
                let ar = AffineRoot { root: a, r };
                if self.is_positive(&ar) && !self.is_positive(&self.act(w, &ar)) {
                    n += 1;
                }
            }
        }
        n
    }

    /// `+1` if `ℓ(w s_A) = ℓ(w) + 1`, else `-1`.
    pub fn descent(&self, w: &WElem, a: usize) -> i32 {
        if self.is_positive(&self.act(w, &self.simples[a].root)) {
            1
        } else {
            -1
        }
    }

    /// `w = ω · s_{A_1} ⋯ s_{A_k}` with `ℓ(ω) = 0` and a reduced word.
    pub fn decompose(&self, w: &WElem) -> (WElem, Vec<usize>) {
        let mut cur = *w;
        let mut rev = Vec::new();
        'outer: loop {
            for (i, s) in self.simples.iter().enumerate() {
                if !self.is_positive(&self.act(&cur, &s.root)) {
                    cur = self.mul(&cur, &s.refl);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        (cur, rev)
    }

    pub fn from_word(&self, omega: &WElem, word: &[usize]) -> WElem {
        word.iter().fold(*omega, |acc, &i| self.mul(&acc, &self.simples[i].refl))
    }

    pub fn omega_class(&self, w: &WElem) -> Vec<i64> {
        let lam: Vec<i64> = w.lam[..self.datum.dim].iter().map(|&x| i64::from(x)).collect();
        self.omega.class(&lam)
    }

    /// Length-zero lifts of the generators of `Ω = X_*(T)/ZΦ̌_S`.
    pub fn omega_generators(&self) -> Vec<WElem> {
        (0..self.omega.moduli.len())
            .map(|k| {
                let lam = cw_from(&self.omega.generator_lift(k));
                self.decompose(&WElem::translation(lam)).0
            })
            .collect()
    }

    /// The unique length-zero element in the `Ω`-class of the translation `e^λ`.
    pub fn omega_rep(&self, lam: &Cw) -> WElem {
        self.decompose(&WElem::translation(*lam)).0
    }

    pub fn bruhat_leq(&self, u: &WElem, v: &WElem) -> bool {
        let (lu, lv) = (self.length(u), self.length(v));
        if lu > lv {
            return false;
        }
        if lv == 0 {
            return u == v;
        }
        let s = (0..self.simples.len()).find(|&i| self.descent(v, i) < 0).unwrap();
        let vs = self.mul(v, &self.simples[s].refl);
        if self.descent(u, s) < 0 {
            self.bruhat_leq(&self.mul(u, &self.simples[s].refl), &vs)
        } else {
            self.bruhat_leq(u, &vs)
        }
    }

    pub fn det(&self, w: &WElem) -> i32 {
        self.datum.weyl.det(w.u)
    }

    pub fn epsilon_c(&self, w: &WElem) -> i32 {
        let sign = if self.length(w) % 2 == 0 { 1 } else { -1 };
        self.det(w) * sign
    }

    pub fn is_distinguished(&self, d: &WElem) -> bool {
        let inv = self.inv(d);
        self.pos_roots
            .iter()
            .all(|&a| self.is_positive(&self.act(&inv, &AffineRoot { root: a, r: 0 })))
    }

    /// `d = e^λ w` with `λ` dominant.
    pub fn distinguished_decompose(&self, d: &WElem) -> Result<(Cw, u16)> {
        if !self.is_distinguished(d) {
            return precondition("element is not distinguished");
        }
        let lam = self.datum.weyl.apply(d.u, &d.lam);
        Ok((lam, d.u))
    }

    /// The element `u` of `𝔚_S` and the distinguished `d` with `w = u d`.
    pub fn split_distinguished(&self, w: &WElem) -> (u16, WElem) {
        let weyl = &self.datum.weyl;
        for u in self.finite_elements() {
            let d = self.mul(&WElem::finite(weyl.inv(u)), w);
            if self.is_distinguished(&d) {
                return (u, d);
            }
        }
        unreachable!("every coset meets the distinguished set")
    }

    /// Elements of the finite Weyl group `𝔚_S`.
    pub fn finite_elements(&self) -> Vec<u16> {
        self.datum.weyl_facet_elements(self.facet)
    }

    fn check_levi(&self, w: &WElem, f: Facet) -> Result<()> {
        if !self.datum.weyl.word(w.u).iter().all(|&i| f.contains(i as usize)) {
            return precondition("finite part is outside 𝔚_F");
        }
        Ok(())
    }

    /// `w⁻¹(Φ⁺ − Φ_F⁺) ⊂ Φ_aff⁺`, for `w` with finite part in `𝔚_F`.
    pub fn is_f_positive(&self, w: &WElem, f: Facet) -> Result<bool> {
        self.check_levi(w, f)?;
        let inv = self.inv(w);
        let rd = &*self.datum;
        Ok((0..rd.npos)
            .filter(|&a| !rd.in_facet(a, f))
            .all(|a| self.is_positive(&self.act(&inv, &AffineRoot { root: a, r: 0 }))))
    }

    pub fn is_f_negative(&self, w: &WElem, f: Facet) -> Result<bool> {
        self.check_levi(w, f)?;
        let rd = &*self.datum;
        // w(Φ⁺ − Φ_F⁺) ⊂ Φ_aff⁺
        Ok((0..rd.npos)
            .filter(|&a| !rd.in_facet(a, f))
            .all(|a| self.is_positive(&self.act(w, &AffineRoot { root: a, r: 0 }))))
    }

    pub fn is_strongly_f_positive(&self, lam: &Cw, f: Facet) -> bool {
        let rd = &*self.datum;
        (0..rd.npos).all(|a| {
            let v = rd.pairing(lam, a);
            if rd.in_facet(a, f) {
                v == 0
            } else {
                v > 0
            }
        })
    }

    /// All elements of length `<= max_len` in the `Ω`-cosets of the given length-zero elements.
    pub fn elements_up_to(&self, max_len: usize, omegas: &[WElem]) -> Vec<WElem> {
        let mut seen: HashSet<WElem> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for w in omegas {
            if seen.insert(*w) {
                queue.push_back((*w, 0usize));
            }
        }
        while let Some((w, l)) = queue.pop_front() {
            out.push(w);
            if l == max_len {
                continue;
            }
            for s in &self.simples {
                let ws = self.mul(&w, &s.refl);
                if self.length(&ws) == l + 1 && seen.insert(ws) {
                    queue.push_back((ws, l + 1));
                }
            }
        }
        out.sort_by_key(|w| (self.length(w), *w));
        out
    }

    /// Length-zero elements `ω` with `‖λ_ω‖∞ <= bound`.
    pub fn small_omegas(&self, bound: i32) -> Vec<WElem> {
        let dim = self.datum.dim;
        let mut out: Vec<WElem> = Vec::new();
        let mut lam = [0i32; MAX_RANK];
        let mut idx = vec![-bound; dim];
        loop {
            for k in 0..dim {
                lam[k] = idx[k];
            }
            let w = self.omega_rep(&lam);
            if w.lam[..dim].iter().all(|x| x.abs() <= bound) && !out.contains(&w) {
                out.push(w);
            }
            let mut k = 0;
            while k < dim {
                idx[k] += 1;
                if idx[k] <= bound {
                    break;
                }
                idx[k] = -bound;
                k += 1;
            }
            if k == dim {
                break;
            }
        }
        out.sort();
        out
    }

    pub fn format_finite(&self, u: u16) -> String {
        let word = self.datum.weyl.word(u);
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self, w: &WElem) -> WElemJson {
        WElemJson {
            lambda: w.lam[..self.datum.dim].to_vec(),
            u: self.format_finite(w.u),
        }
    }

    pub fn format(&self, w: &WElem) -> String {
        let u = self.format_finite(w.u);
        let lam = self.datum.fmt_cw(&w.lam);
        if u.is_empty() {
            format!("e^{lam}")
        } else {
            format!("{u}·e^{lam}")
        }
    }

    pub fn coroot_of(&self, a: usize) -> Cw {
        self.datum.roots[a].coroot
    }

    pub fn scaled_coroot(&self, a: usize, k: i32) -> Cw {
        cw_scale(&self.datum.roots[a].coroot, k)
    }
}

/// The finite Weyl element `s_α` for a root index.
pub fn reflection_of(rd: &RootDatum, a: usize) -> u16 {
    let w = &rd.weyl;
    w.elements()
        .find(|&x| {
            w.length(x) % 2 == 1 && w.root_image(x, a) == rd.neg_root(a) && {
                // s_α fixes every root orthogonal to α̌
                let co = rd.roots[a].coroot;
                (0..rd.roots.len()).all(|b| rd.pairing(&co, b) != 0 || w.root_image(x, b) == b)
            } && w.mul(x, x) == 0
        })
        .expect("reflection exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> AffineSystem {
        AffineSystem::full(Arc::new(RootDatum::build(label, None, 3).unwrap()))
    }

    #[test]
    fn sl2_examples() {
        let s = sys("SL2");
        let a = s.coroot_of(0);
        let t = WElem::translation(a);
        assert_eq!(s.act(&t, &AffineRoot { root: 0, r: 0 }), AffineRoot { root: 0, r: -2 });
        assert_eq!(s.length(&t), 2);
        assert_eq!(s.descent(&t, 0), -1);
        let (om, word) = s.decompose(&t);
        assert_eq!(om, WElem::ID);
        assert_eq!(word.len(), 2);
        let s0 = s.simples[1].refl;
        assert!(s.bruhat_leq(&s0, &t));
        assert!(s.is_distinguished(&t));
        assert!(!s.is_distinguished(&s.simples[0].refl));
        assert_eq!(s.simples[1].name, "s0");
    }

    #[test]
    fn gl2_omega() {
        let s = sys("GL2");
        let z = WElem::translation([1, 1, 0, 0]);
        assert_eq!(s.length(&z), 0);
        assert_eq!(s.decompose(&z), (z, vec![]));
        let gens = s.omega_generators();
        assert_eq!(gens.len(), 1);
        let g = gens[0];
        assert_eq!(s.length(&g), 0);
        assert_ne!(g.u, 0);
        assert_eq!(s.epsilon_c(&g), -1);
    }

    #[test]
    fn simple_reflections_have_length_one() {
        for label in ["SL3", "B2", "G2", "GL2", "SL2xSL2", "PGL3"] {
            let s = sys(label);
            for a in &s.simples {
                assert_eq!(s.length(&a.refl), 1, "{label} {}", a.name);
            }
        }
    }

    #[test]
    fn fast_length_matches_enumeration() {
        let s = sys("B2");
        for u in s.datum.weyl.elements() {
            for x in -2..=2 {
                for y in -2..=2 {
                    let w = WElem { u, lam: [x, y, 0, 0] };
                    assert_eq!(s.length(&w), s.length_by_enumeration(&w));
                }
            }
        }
    }

    #[test]
    fn levi_system() {
        let rd = Arc::new(RootDatum::build("SL3", None, 3).unwrap());
        let l = AffineSystem::levi(rd.clone(), Facet(1));
        assert_eq!(l.pos_roots, vec![0]);
        assert_eq!(l.simples.len(), 2);
        let c = AffineSystem::levi(rd, Facet::C);
        assert!(c.simples.is_empty());
        assert_eq!(c.length(&WElem::translation([3, -1, 0, 0])), 0);
    }
}
