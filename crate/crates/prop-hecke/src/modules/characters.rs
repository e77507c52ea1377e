//! Characters of the affine subalgebra and their `Ω`-conjugates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended_group::{Character, TElem};
use crate::hecke::HeckeElement;
use crate::laurent::Laurent;
use crate::ring::CharP;

use super::linalg::{self, Mat};
use super::{Module, Presentation};

/// `τ_t ↦ ξ(t)`, `τ_{ñ_A} ↦ values[A] ∈ {0, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineCharacter {
    pub xi: Character,
    pub values: Vec<i8>,
}

impl AffineCharacter {
    pub fn format(&self, p: &Presentation) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("ξ={} values=({})", p.g().format_torus(&self.xi), vals.join(","))
    }
}

/// All characters, ordered by `ξ` then by values.
pub fn enumerate_affine_characters(p: &Presentation) -> Vec<AffineCharacter> {
    let g = p.g();
    let mut out = Vec::new();
    for xi in g.characters() {
        let free: Vec<usize> = (0..p.nsimples).filter(|&a| g.restrict_trivial(&xi, a)).collect();
        for mask in 0..(1u32 << free.len()) {
            let mut values = vec![0i8; p.nsimples];
            for (k, &a) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    values[a] = -1;
                }
            }
            out.push(AffineCharacter { xi, values });
        }
    }
    out.sort();
    out
}

/// Agrees with a twist of the trivial or the sign character by a `ξ_0`
/// trivial on every `T_α`, `α ∈ Π`.
pub fn is_trivial_or_sign_twist(p: &Presentation, x: &AffineCharacter) -> bool {
    let g = p.g();
    let constant = x.values.iter().all(|&v| v == 0) || x.values.iter().all(|&v| v == -1);
    let rank = g.rd().rank;
    constant && (0..rank).all(|i| g.is_trivial_on(&x.xi, &g.t_from_cw(&g.rd().roots[i].coroot, 1)))
}

/// `ω.𝒳 = 𝒳(τ_ω̃⁻¹ · τ_ω̃)` for the generator `ω̃`.
pub fn omega_action(p: &Presentation, x: &AffineCharacter) -> Result<AffineCharacter> {
    let Some(om) = &p.omega else { return Ok(x.clone()) };
    conjugate_by(p, x, &p.g().inv(&om.lift))
}

/// `h ↦ 𝒳(τ_y τ_h τ_y⁻¹)` for a length-zero `y`.
pub fn conjugate_by(p: &Presentation, x: &AffineCharacter, y: &TElem) -> Result<AffineCharacter> {
    let g = p.g();
    let yi = g.inv(y);
    let xi = g.char_act(yi.u, &x.xi);
    let mut values = Vec::with_capacity(p.nsimples);
    for a in 0..p.nsimples {
        let c = g.mul(&g.mul(y, &g.lifts[a]), &yi);
        let (t, b) = p
            .split_letter(&c)
            .ok_or_else(|| Error::Module("conjugation does not permute the affine simples".into()))?;
        let v = x.values[b];
        if v != 0 && !g.is_trivial_on(&x.xi, &t) {
            return Err(Error::Module("conjugated value leaves {0, -1}".into()));
        }
        values.push(v);
    }
    Ok(AffineCharacter { xi, values })
}

/// `𝒳, ω.𝒳, ω².𝒳, …` up to the first repetition.
pub fn omega_orbit(p: &Presentation, x: &AffineCharacter) -> Result<Vec<AffineCharacter>> {
    let mut out = vec![x.clone()];
    loop {
        let next = omega_action(p, out.last().unwrap())?;
        if next == *x {
            return Ok(out);
        }
        if out.len() > 64 {
            return Err(Error::Module("Ω-orbit does not close".into()));
        }
        out.push(next);
    }
}

/// `𝒳(a)` for `a` in the affine subalgebra, at `q = 0`.
pub fn evaluate(p: &Presentation, r: &CharP, x: &AffineCharacter, a: &HeckeElement<Laurent>) -> Result<u32> {
    let g = p.g();
    let f = &r.field;
    let mut acc = 0;
    for (w, c) in a.iter() {
        if !c.is_q_polynomial() {
            return Err(Error::Integrality {
                coeff: c.to_string(),
                at: g.format(w),
            });
        }
        let c0 = f.from_int(c.coeff(0));
        if c0 == 0 {
            continue;
        }
        let fac = p.h.factor(w);
        if fac.omega.u != 0 || fac.omega.lam != [0; crate::root_datum::MAX_RANK] {
            return Err(Error::Precondition("element leaves the affine subalgebra".into()));
        }
        let mut v = r.unit_root_pow(g.char_exp(&x.xi, &fac.omega.t));
        for &l in &fac.letters {
            v = f.mul(v, f.from_int(i64::from(x.values[l])));
        }
        acc = f.add(acc, f.mul(c0, v));
    }
    Ok(acc)
}

/// Affine characters occurring as lines in `m`, with the dimension of the
/// common eigenspace.
pub fn contained_characters(p: &Presentation, m: &Module, candidates: &[AffineCharacter]) -> Vec<(AffineCharacter, usize)> {
    let f = m.field();
    let mut out = Vec::new();
    for x in candidates {
        let mut shifted: Vec<Mat> = Vec::new();
        for i in 0..p.dim {
            let c = m.r.unit_root_pow(i64::from(x.xi[i]));
            shifted.push(linalg::sub(f, &m.t[i], &linalg::scalar(m.dim, c)));
        }
        for a in 0..p.nsimples {
            let c = f.from_int(i64::from(x.values[a]));
            shifted.push(linalg::sub(f, &m.n[a], &linalg::scalar(m.dim, c)));
        }
        let k = linalg::common_left_kernel(f, &shifted, m.dim).len();
        if k > 0 {
            out.push((x.clone(), k));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::AffineSystem;
    use crate::extended_group::ExtendedGroup;
    use crate::hecke::Hecke;
    use crate::root_datum::RootDatum;
    use std::sync::Arc;

    fn pres(label: &str, q: u32) -> Presentation {
        let rd = Arc::new(RootDatum::build(label, None, q).unwrap());
        let g = Arc::new(ExtendedGroup::new(Arc::new(AffineSystem::full(rd))));
        Presentation::new(Arc::new(Hecke::new(g))).unwrap()
    }

    #[test]
    fn sl2_q3_has_five_characters() {
        let p = pres("SL2", 3);
        let all = enumerate_affine_characters(&p);
        assert_eq!(all.len(), 5);
        assert_eq!(all.iter().filter(|x| !is_trivial_or_sign_twist(&p, x)).count(), 3);
    }

    #[test]
    fn gl2_omega_swaps_values() {
        let p = pres("GL2", 3);
        let x = AffineCharacter { xi: [0; 4], values: vec![0, -1] };
        let y = omega_action(&p, &x).unwrap();
        assert_eq!(y.values, vec![-1, 0]);
        assert_eq!(omega_orbit(&p, &x).unwrap().len(), 2);
    }

    #[test]
    fn pgl2_twist_of_sign() {
        let p = pres("PGL2", 3);
        let twists: Vec<_> = enumerate_affine_characters(&p)
            .into_iter()
            .filter(|x| is_trivial_or_sign_twist(&p, x))
            .collect();
        // both characters of T are trivial on the coroot image, each with two constant value patterns
        assert_eq!(twists.len(), 4);
    }
}
