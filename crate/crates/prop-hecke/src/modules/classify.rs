//! Induced modules `𝔪(𝒳, s)`, the supersingularity test and the
//! classification of simple supersingular modules for cyclic `Ω`.

use serde::Serialize;

use crate::bernstein::Bernstein;
use crate::error::{precondition, Error, Result};
use crate::extended_group::TElem;
use crate::ring::CharP;
use crate::root_datum::{Cw, MAX_RANK};

use super::characters::{self, AffineCharacter};
use super::linalg::{self, Mat};
use super::{extension, Module, Presentation};

/// Index of the fixator of `𝒳` and the element `ω̃^k` generating it modulo the torus.
pub fn fixator(p: &Presentation, x: &AffineCharacter) -> Result<usize> {
    Ok(characters::omega_orbit(p, x)?.len())
}

fn omega_pow(p: &Presentation, j: usize) -> TElem {
    let g = p.g();
    let lift = p.omega.as_ref().map_or(TElem::ID, |o| o.lift);
    (0..j).fold(TElem::ID, |acc, _| g.mul(&acc, &lift))
}

/// The scalar constraint `s^(n/k) = ξ(t_0) c^e` on `σ(ω̃^k)`.
pub fn sigma_constraint(p: &Presentation, r: &CharP, x: &AffineCharacter, k: usize, pi: Option<u32>) -> Option<(u64, u32)> {
    let om = p.omega.as_ref()?;
    let g = p.g();
    let f = &r.field;
    let mut rhs = r.unit_root_pow(g.char_exp(&x.xi, &om.power_torus));
    if om.pi_exp != 0 {
        let c = pi.unwrap_or(1);
        let c = if om.pi_exp > 0 { f.pow(c, om.pi_exp as u64) } else { f.pow(f.inv(c)?, (-om.pi_exp) as u64) };
        rhs = f.mul(rhs, c);
    }
    Some((u64::from(om.order) / k as u64, rhs))
}

/// `𝔪(𝒳, s)`: basis `e_j = e_0 τ_{ω̃^j}` for `j < k`, with `e_{k-1} τ_ω̃ = s e_0`.
pub fn induce(p: &Presentation, r: &CharP, x: &AffineCharacter, s: Option<u32>, pi: Option<u32>) -> Result<Module> {
    let g = p.g();
    let f = r.field.clone();
    let k = if p.omega.is_some() { fixator(p, x)? } else { 1 };
    let mut t = vec![linalg::zeros(k, k); p.dim];
    let mut n = vec![linalg::zeros(k, k); p.nsimples];
    for j in 0..k {
        let wj = omega_pow(p, j);
        let wji = g.inv(&wj);
        for (i, ti) in t.iter_mut().enumerate() {
            let mut e = [0u16; MAX_RANK];
            e[i] = 1;
            let c = g.mul(&g.mul(&wj, &TElem::torus(e)), &wji);
            ti[j][j] = r.unit_root_pow(g.char_exp(&x.xi, &c.t));
        }
        for (a, na) in n.iter_mut().enumerate() {
            let c = g.mul(&g.mul(&wj, &g.lifts[a]), &wji);
            let (tt, b) = p
                .split_letter(&c)
                .ok_or_else(|| Error::Module("conjugate of ñ_A is not over a simple reflection".into()))?;
            let v = f.from_int(i64::from(x.values[b]));
            na[j][j] = f.mul(v, r.unit_root_pow(g.char_exp(&x.xi, &tt)));
        }
    }
    let (w, winv) = if p.omega.is_some() {
        let s = s.ok_or_else(|| Error::Module("σ(ω̃^k) is required".into()))?;
        let mut w = linalg::zeros(k, k);
        for j in 0..k - 1 {
            w[j][j + 1] = 1;
        }
        w[k - 1][0] = s;
        let winv = linalg::inverse(&f, &w).ok_or_else(|| Error::Module("σ(ω̃^k) must be a unit".into()))?;
        (Some(w), Some(winv))
    } else {
        (None, None)
    };
    let m = Module {
        r: r.clone(),
        dim: k,
        t,
        n,
        w,
        winv,
        pi,
        tag: format!("m({}, s={})", x.format(p), s.map_or("-".into(), |v| f.format(v))),
    };
    p.check(&m).map_err(|rel| Error::Module(format!("{} violates {rel}", m.tag)))?;
    Ok(m)
}

/// All `s` with `s^d = c` together with the smallest extension of `F_q` containing
/// as many of them as any extension does.
pub fn sigma_values(p: &Presentation, x: &AffineCharacter, k: usize, pi: Option<i64>) -> Result<(CharP, Vec<Option<u32>>)> {
    let q = p.g().q;
    if p.omega.is_none() {
        return Ok((extension(q, 1), vec![None]));
    }
    let (pch, _) = crate::field::prime_power(q).unwrap();
    let mut best: Option<(CharP, Vec<Option<u32>>)> = None;
    for e in 1..=6 {
        let r = extension(q, e);
        let piv = pi.map(|c| r.field.from_int(c));
        let (d, rhs) = sigma_constraint(p, &r, x, k, piv).unwrap();
        let mut dd = d;
        while dd % u64::from(pch) == 0 {
            dd /= u64::from(pch);
        }
        let roots = r.field.roots(d, rhs);
        let full = roots.len() as u64 == dd;
        if best.as_ref().is_none_or(|(_, b)| roots.len() > b.len()) {
            best = Some((r, roots.into_iter().map(Some).collect()));
        }
        if full {
            break;
        }
    }
    let best = best.unwrap();
    if best.1.is_empty() {
        return Err(Error::Module("no admissible σ in small extensions".into()));
    }
    Ok(best)
}

/// Scalars of the `𝒵°` generators on a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZCharacter {
    /// `"0"` when every generator of `𝔍` acts by zero.
    pub z_gen: String,
    /// Scalars of `z_λ` on the central directions (`λ` and `-λ`).
    pub omega: Vec<String>,
    /// The character is `z_λ ↦ ω(λ(ϖ))` for some `ω`.
    pub zeta_omega: bool,
}

#[derive(Clone, Debug)]
pub struct SupersingularReport {
    pub nilpotent: bool,
    pub all_zero: bool,
    /// Some generator of `𝔍` acts invertibly.
    pub some_invertible: bool,
    pub zchar: ZCharacter,
    /// Matrices of the generators of `𝔍`.
    pub actions: Vec<(Cw, Mat)>,
}

pub fn supersingular_report(p: &Presentation, b: &Bernstein, m: &Module) -> Result<SupersingularReport> {
    let f = m.field();
    let mut actions = Vec::new();
    let (mut nilpotent, mut all_zero, mut some_inv) = (true, true, false);
    let mut gen_scalars = Vec::new();
    for lam in b.ideal_generators() {
        let z = b.central(&lam, &[0; MAX_RANK])?;
        let a = p.act(m, &z)?;
        if !linalg::is_zero(&linalg::pow(f, &a, m.dim as u64)) {
            nilpotent = false;
        }
        if !linalg::is_zero(&a) {
            all_zero = false;
        }
        if linalg::inverse(f, &a).is_some() {
            some_inv = true;
        }
        gen_scalars.push(m.is_scalar(&a).map_or("non-scalar".to_string(), |c| f.format(c)));
        actions.push((lam, a));
    }
    let mut omega = Vec::new();
    let mut lin_scalar = true;
    for lam in b.lineality() {
        for sign in [1, -1] {
            let l: Cw = std::array::from_fn(|i| sign * lam[i]);
            let a = p.act(m, &b.central(&l, &[0; MAX_RANK])?)?;
            match m.is_scalar(&a) {
                Some(c) if c != 0 => omega.push(f.format(c)),
                _ => {
                    lin_scalar = false;
                    omega.push("non-scalar".into());
                }
            }
        }
    }
    let z_gen = if all_zero { "0".to_string() } else { gen_scalars.join(",") };
    Ok(SupersingularReport {
        nilpotent,
        all_zero,
        some_invertible: some_inv,
        zchar: ZCharacter {
            zeta_omega: all_zero && lin_scalar,
            z_gen,
            omega,
        },
        actions,
    })
}

/// Commutant dimension and, for dimension at most 2, the absence of stable lines.
pub fn is_simple(m: &Module) -> (bool, usize) {
    let f = m.field();
    let gens = m.gens();
    let comm = linalg::intertwiners(f, &gens, &gens, m.dim, m.dim).len();
    let mut simple = comm == 1;
    if m.dim == 2 && simple {
        simple = !has_stable_line(m);
    }
    (simple, comm)
}

pub fn has_stable_line(m: &Module) -> bool {
    let f = m.field();
    let gens = m.gens();
    let mut lines: Vec<Vec<u32>> = vec![vec![0, 1]];
    for a in 0..f.size {
        lines.push(vec![1, a]);
    }
    lines.iter().any(|v| {
        gens.iter().all(|g| {
            let img: Vec<u32> = (0..2).map(|j| f.add(f.mul(v[0], g[0][j]), f.mul(v[1], g[1][j]))).collect();
            // img ∥ v
            f.sub(f.mul(img[0], v[1]), f.mul(img[1], v[0])) == 0
        })
    })
}

#[derive(Clone, Debug)]
pub struct Classified {
    pub rep: AffineCharacter,
    pub orbit: Vec<AffineCharacter>,
    pub s: Option<u32>,
    pub field_degree: u32,
    pub module: Module,
    pub report: SupersingularReport,
    pub simple: bool,
    pub content: Vec<(AffineCharacter, usize)>,
}

#[derive(Serialize)]
pub struct OrbitJson {
    pub representative: String,
    pub orbit: Vec<String>,
    pub sigma: Option<String>,
    pub field: String,
}

#[derive(Serialize)]
pub struct ClassifiedJson {
    pub orbit: OrbitJson,
    pub dim: usize,
    pub zcharacter: ZCharacter,
    pub supersingular: bool,
    pub simple: bool,
}

impl Classified {
    pub fn to_json(&self, p: &Presentation) -> ClassifiedJson {
        let f = self.module.field();
        ClassifiedJson {
            orbit: OrbitJson {
                representative: self.rep.format(p),
                orbit: self.orbit.iter().map(|x| x.format(p)).collect(),
                sigma: self.s.map(|v| f.format(v)),
                field: format!("F_{}", f.size),
            },
            dim: self.module.dim,
            zcharacter: self.report.zchar.clone(),
            supersingular: self.report.nilpotent,
            simple: self.simple,
        }
    }
}

fn canonical_orbits(p: &Presentation, chars: Vec<AffineCharacter>) -> Result<Vec<Vec<AffineCharacter>>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in chars {
        if seen.contains(&x) {
            continue;
        }
        let orbit = characters::omega_orbit(p, &x)?;
        let rep = orbit.iter().min().unwrap().clone();
        // induce from the smallest member so the output does not depend on input order
        let orbit = characters::omega_orbit(p, &rep)?;
        seen.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    Ok(out)
}

fn check_pi(p: &Presentation, pi: Option<i64>) -> Result<Option<i64>> {
    let needs = p.omega.as_ref().is_some_and(|o| o.pi_exp != 0);
    if !needs {
        return Ok(None);
    }
    let Some(c) = pi else {
        return precondition("this datum has a central direction: pass a ϖ-scalar");
    };
    let (pch, _) = crate::field::prime_power(p.g().q).unwrap();
    if c.rem_euclid(i64::from(pch)) == 0 {
        return precondition("the ϖ-scalar must be nonzero in the residue field");
    }
    Ok(Some(c))
}

fn build_orbit_modules(p: &Presentation, b: &Bernstein, orbit: Vec<AffineCharacter>, pi: Option<i64>) -> Result<Vec<Classified>> {
    let rep = orbit[0].clone();
    let (r, sigmas) = sigma_values(p, &rep, orbit.len(), pi)?;
    let all = characters::enumerate_affine_characters(p);
    let mut out = Vec::new();
    for s in sigmas {
        let piv = pi.map(|c| r.field.from_int(c));
        let m = induce(p, &r, &rep, s, piv)?;
        p.check_homomorphism(&m, 2)
            .map_err(|e| Error::Module(format!("{}: {e}", m.tag)))?;
        let report = supersingular_report(p, b, &m)?;
        let (simple, _) = is_simple(&m);
        let content = characters::contained_characters(p, &m, &all);
        out.push(Classified {
            rep: rep.clone(),
            orbit: orbit.clone(),
            s,
            field_degree: r.field.degree,
            module: m,
            report,
            simple,
            content,
        });
    }
    Ok(out)
}

/// Simple supersingular modules, one per `Ω`-orbit of pairs `(𝒳, s)` with `𝒳` not a twist.
pub fn classify(p: &Presentation, b: &Bernstein, pi: Option<i64>) -> Result<Vec<Classified>> {
    if !p.g().rd().is_irreducible() {
        return precondition("classification needs an irreducible root system");
    }
    let pi = check_pi(p, pi)?;
    let chars: Vec<_> = characters::enumerate_affine_characters(p)
        .into_iter()
        .filter(|x| !characters::is_trivial_or_sign_twist(p, x))
        .collect();
    let mut out = Vec::new();
    for orbit in canonical_orbits(p, chars)? {
        out.extend(build_orbit_modules(p, b, orbit, pi)?);
    }
    Ok(out)
}

/// Simple modules induced from twists of the trivial and sign characters.
pub fn twist_modules(p: &Presentation, b: &Bernstein, pi: Option<i64>) -> Result<Vec<Classified>> {
    let pi = check_pi(p, pi)?;
    let chars: Vec<_> = characters::enumerate_affine_characters(p)
        .into_iter()
        .filter(|x| characters::is_trivial_or_sign_twist(p, x))
        .collect();
    let mut out = Vec::new();
    for orbit in canonical_orbits(p, chars)? {
        out.extend(build_orbit_modules(p, b, orbit, pi)?);
    }
    Ok(out)
}

/// For affine characters vanishing at the non-finite simple, `B_F⁺(λ)` kills
/// the character line when `F ≠ x_0`, `λ` is dominant and `ℓ(e^λ) > 0`.
/// Evaluated on the line `e_0` of `𝔪(𝒳, s)`, which supports `𝒳`.
pub fn vanishing_on_affine_zero(p: &Presentation, b: &Bernstein, max_len: usize, pi: Option<i64>) -> Result<(usize, Option<String>)> {
    let g = p.g();
    let rd = g.rd();
    let pi = check_pi(p, pi)?;
    let affine: Vec<usize> = (0..p.nsimples).filter(|&a| g.sys.simples[a].finite_index.is_none()).collect();
    let chars: Vec<_> = characters::enumerate_affine_characters(p)
        .into_iter()
        .filter(|x| affine.iter().all(|&a| x.values[a] == 0))
        .collect();
    let mut modules = Vec::new();
    for x in &chars {
        let k = characters::omega_orbit(p, x)?.len();
        let (r, sigmas) = sigma_values(p, x, k, pi)?;
        let s = sigmas[0];
        modules.push((x, induce(p, &r, x, s, pi.map(|c| r.field.from_int(c)))?));
    }
    let mut count = 0;
    for lam in b.dominant_up_to(max_len, 1) {
        if b.length_translation(&lam) == 0 {
            continue;
        }
        for f in crate::root_datum::Facet::all(rd.rank) {
            if f == crate::root_datum::Facet::x0(rd.rank) {
                continue;
            }
            let bf = b.bernstein_lam(f, crate::root_datum::Sign::Plus, &lam)?;
            for (x, m) in &modules {
                count += 1;
                let a = p.act(m, &bf)?;
                if a[0].iter().any(|&v| v != 0) {
                    return Ok((count, Some(format!("{} on B_{}^+({})", x.format(p), f, rd.fmt_cw(&lam)))));
                }
            }
        }
    }
    Ok((count, None))
}

/// Nonsplit extension search between two modules over the same field, then the
/// affine characters found in the glued module.
pub struct ExtensionReport {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub nonsplit: bool,
    pub characters_found: usize,
}

pub fn extension_report(p: &Presentation, m1: &Module, m2: &Module) -> Result<ExtensionReport> {
    let (z1, b1) = p.extension_space(m1, m2);
    let f = m1.field();
    // a cocycle outside the coboundary span, if any
    let gens = p.gen_list();
    let cob: Vec<Vec<u32>> = (0..m1.dim * m2.dim)
        .map(|e| {
            let mut y = linalg::zeros(m1.dim, m2.dim);
            y[e / m2.dim][e % m2.dim] = 1;
            gens.iter()
                .flat_map(|&g| linalg::flat(&linalg::sub(f, &linalg::mul(f, m1.gen(g), &y), &linalg::mul(f, &y, m2.gen(g)))))
                .collect()
        })
        .collect();
    let chosen = z1.iter().find(|xs| {
        let v: Vec<u32> = xs.iter().flat_map(linalg::flat).collect();
        let mut rows = cob.clone();
        rows.push(v);
        linalg::rank(f, &rows) > b1
    });
    let zero = vec![linalg::zeros(m1.dim, m2.dim); gens.len()];
    let xs = chosen.cloned().unwrap_or(zero);
    let e = p.glue(m1, m2, &xs);
    p.check(&e).map_err(|rel| Error::Module(format!("glued module violates {rel}")))?;
    let all = characters::enumerate_affine_characters(p);
    let found = characters::contained_characters(p, &e, &all);
    Ok(ExtensionReport {
        cocycles: z1.len(),
        coboundaries: b1,
        nonsplit: chosen.is_some(),
        characters_found: found.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::AffineSystem;
    use crate::extended_group::ExtendedGroup;
    use crate::hecke::Hecke;
    use crate::root_datum::RootDatum;
    use std::sync::Arc;

    fn setup(label: &str, q: u32) -> (Presentation, Bernstein) {
        let rd = Arc::new(RootDatum::build(label, None, q).unwrap());
        let g = Arc::new(ExtendedGroup::new(Arc::new(AffineSystem::full(rd))));
        let h = Arc::new(Hecke::new(g));
        (Presentation::new(h.clone()).unwrap(), Bernstein::new(h))
    }

    #[test]
    fn sl2_classification_is_one_dimensional() {
        let (p, b) = setup("SL2", 3);
        let c = classify(&p, &b, None).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|x| x.module.dim == 1 && x.report.all_zero && x.simple));
    }

    #[test]
    fn gl2_classification_is_two_dimensional() {
        let (p, b) = setup("GL2", 3);
        let c = classify(&p, &b, Some(1)).unwrap();
        assert!(!c.is_empty());
        assert!(c.iter().all(|x| x.module.dim == 2 && x.report.all_zero && x.simple));
    }

    #[test]
    fn twists_are_not_supersingular() {
        for (label, q, pi) in [("SL2", 3, None), ("GL2", 3, Some(2)), ("PGL2", 5, None)] {
            let (p, b) = setup(label, q);
            for m in twist_modules(&p, &b, pi).unwrap() {
                assert!(m.report.some_invertible, "{label} {}", m.module.tag);
            }
        }
    }
}
