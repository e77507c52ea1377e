//! Characters of the finite Hecke algebra and the cyclic modules
//! `χ ⊗ H̃_k` with basis `1 ⊗ τ_d̃` over distinguished `d`.

use rustc_hash::FxHashMap;

use crate::affine_weyl::WElem;
use crate::bernstein::Bernstein;
use crate::error::{precondition, Error, Result};
use crate::extended_group::{Character, TElem};
use crate::hecke::HeckeElement;
use crate::ring::{CharP, Ring};
use crate::root_datum::{Cw, Facet, Sign, MAX_RANK};

/// `τ_t ↦ χ̄(t)`, `τ_{ñ_α} ↦ -1` for `α ∈ Π_χ̄ - Π_χ` and `0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightCharacter {
    pub chi_bar: Character,
    /// `Π_χ` as a facet.
    pub pi_chi: Facet,
}

impl WeightCharacter {
    /// `F_χ`: the facet with `Π_F = Π_χ`.
    pub fn facet(&self) -> Facet {
        self.pi_chi
    }

    /// Textual form `"a,b/1,2"`: the exponents of `χ̄` on the coordinate
    /// cocharacters, then `Π_χ` as 1-based simple indices.
    pub fn parse(b: &Bernstein, s: &str) -> Result<WeightCharacter> {
        let (xi, pi) = s.split_once('/').unwrap_or((s, ""));
        let g = b.g();
        let dim = g.rd().dim;
        let mut chi_bar = [0u16; MAX_RANK];
        let parts: Vec<&str> = xi.split(',').filter(|x| !x.trim().is_empty()).collect();
        if parts.len() != dim {
            return Err(Error::Parse(format!("χ̄ needs {dim} exponents")));
        }
        for (i, part) in parts.iter().enumerate() {
            let v: i64 = part.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {part:?}")))?;
            chi_bar[i] = v.rem_euclid(i64::from(g.m)) as u16;
        }
        let pi_chi = Facet::parse(pi, g.rd().rank)?;
        let w = WeightCharacter { chi_bar, pi_chi };
        if !pi_chi.is_subset(&pi_bar(b, &w.chi_bar)) {
            return precondition("Π_χ must lie in Π_χ̄");
        }
        Ok(w)
    }

    pub fn format(&self, b: &Bernstein) -> String {
        let g = b.g();
        let xs: Vec<String> = self.chi_bar[..g.rd().dim].iter().map(|x| x.to_string()).collect();
        let pis: Vec<String> = (0..g.rd().rank).filter(|&i| self.pi_chi.contains(i)).map(|i| (i + 1).to_string()).collect();
        format!("{}/{}", xs.join(","), pis.join(","))
    }
}

/// `Π_χ̄`: simple roots `α` with `χ̄` trivial on `T_α`.
pub fn pi_bar(b: &Bernstein, chi_bar: &Character) -> Facet {
    let g = b.g();
    let rd = g.rd();
    let mut bits = 0u32;
    for i in 0..rd.rank {
        if g.is_trivial_on(chi_bar, &g.t_from_cw(&rd.roots[i].coroot, 1)) {
            bits |= 1 << i;
        }
    }
    Facet(bits)
}

pub fn weight_characters(b: &Bernstein) -> Vec<WeightCharacter> {
    let rank = b.rd().rank;
    let mut out = Vec::new();
    for chi_bar in b.g().characters() {
        let pb = pi_bar(b, &chi_bar);
        for f in Facet::all(rank) {
            if f.is_subset(&pb) {
                out.push(WeightCharacter { chi_bar, pi_chi: f });
            }
        }
    }
    out.sort();
    out
}

/// `χ(τ_{t ũ})` for `ũ` the standard lift of a finite Weyl element.
pub fn chi_value(b: &Bernstein, r: &CharP, chi: &WeightCharacter, t: &crate::extended_group::Torus, u: u16) -> u32 {
    let g = b.g();
    let rd = g.rd();
    let pb = pi_bar(b, &chi.chi_bar);
    let mut v = r.unit_root_pow(g.char_exp(&chi.chi_bar, t));
    for &i in rd.weyl.word(u) {
        let i = i as usize;
        let x = if pb.contains(i) && !chi.pi_chi.contains(i) { r.neg(&1) } else { 0 };
        v = r.field.mul(v, x);
    }
    v
}

/// A vector in `𝔐(χ)` in the basis `1 ⊗ τ_d̃`.
pub type MVec = FxHashMap<WElem, u32>;

/// `(1 ⊗ 1) · a`, reduced by `1 ⊗ τ_{w̃_0 d̃} = χ(τ_{w̃_0}) (1 ⊗ τ_d̃)`.
pub fn image(b: &Bernstein, r: &CharP, chi: &WeightCharacter, a: &HeckeElement<u32>) -> MVec {
    let g = b.g();
    let sys = g.sys.clone();
    let mut out = MVec::default();
    for (w, c) in a.iter() {
        let (_, d) = sys.split_distinguished(&w.proj());
        let dt = TElem::lift(&d);
        let w0 = g.mul(w, &g.inv(&dt));
        debug_assert_eq!(w0.lam, [0; MAX_RANK]);
        let v = r.mul(c, &chi_value(b, r, chi, &w0.t, w0.u));
        if v == 0 {
            continue;
        }
        let e = out.entry(d).or_insert(0);
        *e = r.add(e, &v);
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `v · a` for `v ∈ 𝔐(χ)`.
pub fn act(b: &Bernstein, r: &CharP, chi: &WeightCharacter, v: &MVec, a: &HeckeElement<u32>) -> MVec {
    let h = &b.h;
    let mut out = MVec::default();
    for (d, c) in v {
        let prod = h.mul(r, &h.basis(r, TElem::lift(d)), a);
        for (x, y) in image(b, r, chi, &prod) {
            let e = out.entry(x).or_insert(0);
            *e = r.add(e, &r.mul(&y, c));
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn unit_vector() -> MVec {
    let mut v = MVec::default();
    v.insert(WElem::ID, 1);
    v
}

pub fn format_vec(b: &Bernstein, r: &CharP, v: &MVec) -> String {
    let mut terms: Vec<(&WElem, &u32)> = v.iter().collect();
    terms.sort_by_key(|(d, _)| (b.sys().length(d), d.lam, d.u));
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(d, c)| format!("{}·(1⊗τ[{}])", r.format(c), b.sys().format(d)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub struct SatakeResult {
    pub lhs: MVec,
    pub rhs: MVec,
    pub equal: bool,
}

/// `(1⊗1) z_λ` against `(1⊗1) B_{F_χ}⁺(λ)`.
pub fn satake_check(b: &Bernstein, chi: &WeightCharacter, lam: &Cw) -> Result<SatakeResult> {
    let r = &b.h.charp;
    if !b.rd().is_dominant(lam) {
        return precondition("λ must be dominant");
    }
    let z = b.h.specialize(r, &b.central(lam, &[0; MAX_RANK])?)?;
    let bf = b.h.specialize(r, &b.bernstein_lam(chi.facet(), Sign::Plus, lam)?)?;
    let lhs = image(b, r, chi, &z);
    let rhs = image(b, r, chi, &bf);
    let equal = lhs == rhs;
    Ok(SatakeResult { lhs, rhs, equal })
}

/// `((1⊗1) z_λ) z_μ = (1⊗1) z_{λ+μ}`.
pub fn multiplicativity_check(b: &Bernstein, chi: &WeightCharacter, lam: &Cw, mu: &Cw) -> Result<bool> {
    let r = &b.h.charp;
    let zl = b.h.specialize(r, &b.central(lam, &[0; MAX_RANK])?)?;
    let zm = b.h.specialize(r, &b.central(mu, &[0; MAX_RANK])?)?;
    let sum = crate::root_datum::cw_add(lam, mu);
    let zs = b.h.specialize(r, &b.central(&sum, &[0; MAX_RANK])?)?;
    let left = act(b, r, chi, &image(b, r, chi, &zl), &zm);
    Ok(left == image(b, r, chi, &zs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;
    use std::sync::Arc;

    #[test]
    fn sl2_satake_small() {
        let b = Bernstein::for_datum(Arc::new(RootDatum::build("SL2", None, 3).unwrap()));
        let chars = weight_characters(&b);
        // χ̄ ∈ {1, sgn}; the trivial χ̄ allows Π_χ ∈ {∅, Π}
        assert_eq!(chars.len(), 3);
        for chi in &chars {
            for k in 0..=3 {
                let res = satake_check(&b, chi, &[k, 0, 0, 0]).unwrap();
                assert!(res.equal, "{}", chi.format(&b));
                assert!(!res.lhs.is_empty());
            }
        }
    }
}
