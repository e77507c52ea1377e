//! Exhaustive enumeration of small simple modules over `F_q`, independent of
//! the induced-module construction.
//!
//! The torus acts semisimply, so it is diagonal in a suitable basis; the
//! remaining generators are searched inside the linear spaces cut out by the
//! torus normalization relations.

use crate::bernstein::Bernstein;
use crate::error::{precondition, Result};
use crate::extended_group::{TElem, Torus};
use crate::ring::CharP;
use crate::root_datum::MAX_RANK;

use super::characters;
use super::classify::{self, is_simple, supersingular_report, SupersingularReport};
use super::linalg::{self, Mat};
use super::{extension, Module, Presentation};

fn unit(i: usize) -> Torus {
    let mut e = [0u16; MAX_RANK];
    e[i] = 1;
    e
}

fn torus_diag(p: &Presentation, r: &CharP, entries: &[Vec<u16>], t: &Torus) -> Mat {
    let g = p.g();
    let d = entries.len();
    let mut out = linalg::zeros(d, d);
    for (j, e) in entries.iter().enumerate() {
        let mut xi = [0u16; MAX_RANK];
        xi[..e.len()].copy_from_slice(e);
        out[j][j] = r.unit_root_pow(g.char_exp(&xi, t));
    }
    out
}

fn conj(p: &Presentation, x: &TElem, t: &Torus) -> Torus {
    let g = p.g();
    g.mul(&g.mul(x, &TElem::torus(*t)), &g.inv(x)).t
}

/// Matrices `X` with `X τ_{e_i} = τ_{x e_i x⁻¹} X` for all coordinates.
fn normalizing_space(p: &Presentation, r: &CharP, entries: &[Vec<u16>], x: &TElem) -> Vec<Mat> {
    let d = entries.len();
    let a: Vec<Mat> = (0..p.dim).map(|i| torus_diag(p, r, entries, &conj(p, x, &unit(i)))).collect();
    let b: Vec<Mat> = (0..p.dim).map(|i| torus_diag(p, r, entries, &unit(i))).collect();
    let basis = linalg::intertwiners(&r.field, &a, &b, d, d);
    let flat: Vec<Vec<u32>> = basis.iter().map(linalg::flat).collect();
    linalg::span_elements(&r.field, &flat, d * d)
        .into_iter()
        .map(|v| linalg::from_flat(&v, d))
        .collect()
}

fn torus_candidates(p: &Presentation, d: usize) -> Vec<Vec<Vec<u16>>> {
    let m = p.g().m;
    let dim = p.dim;
    let count = (m as usize).pow(dim as u32);
    let entries: Vec<Vec<u16>> = (0..count)
        .map(|mut c| {
            let mut e = vec![0u16; dim];
            for slot in e.iter_mut() {
                *slot = (c % m as usize) as u16;
                c /= m as usize;
            }
            e
        })
        .collect();
    // nondecreasing tuples: a basis permutation sorts the diagonal
    let mut out: Vec<Vec<Vec<u16>>> = Vec::new();
    fn rec(entries: &[Vec<u16>], start: usize, d: usize, cur: &mut Vec<Vec<u16>>, out: &mut Vec<Vec<Vec<u16>>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in start..entries.len() {
            cur.push(entries[k].clone());
            rec(entries, k, d, cur, out);
            cur.pop();
        }
    }
    rec(&entries, 0, d, &mut Vec::new(), &mut out);
    out
}

fn base_module(p: &Presentation, r: &CharP, entries: &[Vec<u16>], pi: Option<u32>) -> Module {
    let d = entries.len();
    Module {
        r: r.clone(),
        dim: d,
        t: (0..p.dim).map(|i| torus_diag(p, r, entries, &unit(i))).collect(),
        n: vec![linalg::zeros(d, d); p.nsimples],
        w: p.omega.as_ref().map(|_| linalg::identity(d)),
        winv: p.omega.as_ref().map(|_| linalg::identity(d)),
        pi,
        tag: "brute force".into(),
    }
}

fn relation_ok(p: &Presentation, m: &Module, pred: impl Fn(&str) -> bool) -> bool {
    p.relations()
        .iter()
        .filter(|rel| pred(&rel.name))
        .all(|rel| linalg::is_zero(&m.eval_relation(rel)))
}

/// Simple modules of dimension at most `max_dim` over `F_q`, up to isomorphism.
pub fn simple_modules(p: &Presentation, pi: Option<i64>, max_dim: usize) -> Result<Vec<Module>> {
    let g = p.g();
    if g.rd().rank != 1 {
        return precondition("the exhaustive search is limited to rank one");
    }
    let r = extension(g.q, 1);
    let f = r.field.clone();
    let piv = pi.map(|c| f.from_int(c));
    let mut found: Vec<Module> = Vec::new();
    for d in 1..=max_dim {
        for entries in torus_candidates(p, d) {
            let base = base_module(p, &r, &entries, piv);
            // candidates for each ñ_A, filtered by its quadratic relation
            let mut n_cands: Vec<Vec<Mat>> = Vec::new();
            for a in 0..p.nsimples {
                let name = format!("quadratic relation at ñ{a}");
                let cands = normalizing_space(p, &r, &entries, &g.lifts[a])
                    .into_iter()
                    .filter(|n| {
                        let mut m = base.clone();
                        m.n[a] = n.clone();
                        relation_ok(p, &m, |x| x == name)
                    })
                    .collect();
                n_cands.push(cands);
            }
            let mut combos: Vec<Module> = Vec::new();
            match &p.omega {
                None => {
                    let mut stack = vec![base.clone()];
                    for (a, cands) in n_cands.iter().enumerate() {
                        let mut next = Vec::new();
                        for m in &stack {
                            for n in cands {
                                let mut m2 = m.clone();
                                m2.n[a] = n.clone();
                                next.push(m2);
                            }
                        }
                        stack = next;
                    }
                    combos = stack;
                }
                Some(om) => {
                    let w_cands: Vec<(Mat, Mat)> = normalizing_space(p, &r, &entries, &om.lift)
                        .into_iter()
                        .filter_map(|w| linalg::inverse(&f, &w).map(|wi| (w, wi)))
                        .filter(|(w, wi)| {
                            let mut m = base.clone();
                            m.w = Some(w.clone());
                            m.winv = Some(wi.clone());
                            relation_ok(p, &m, |x| x.starts_with("ω̃ to the power"))
                        })
                        .collect();
                    // ñ_A on a perm-orbit is determined by its representative and ω̃
                    let mut reps = Vec::new();
                    let mut covered = vec![false; p.nsimples];
                    for a in 0..p.nsimples {
                        if covered[a] {
                            continue;
                        }
                        reps.push(a);
                        let mut b = a;
                        while !covered[b] {
                            covered[b] = true;
                            b = om.perm[b];
                        }
                    }
                    for (w, wi) in &w_cands {
                        let mut stack = vec![base.clone()];
                        for &a in &reps {
                            let mut next = Vec::new();
                            for m in &stack {
                                for n in &n_cands[a] {
                                    let mut m2 = m.clone();
                                    m2.w = Some(w.clone());
                                    m2.winv = Some(wi.clone());
                                    m2.n[a] = n.clone();
                                    let mut b = a;
                                    loop {
                                        let nb = om.perm[b];
                                        if nb == a {
                                            break;
                                        }
                                        // W N_b W⁻¹ = T(t_b) N_{perm b}
                                        let tinv = linalg::inverse(&f, &p.torus_mat(&m2, &om.conj_t[b])).unwrap();
                                        let x = linalg::mul(&f, &linalg::mul(&f, &linalg::mul(&f, &tinv, w), &m2.n[b]), wi);
                                        m2.n[nb] = x;
                                        b = nb;
                                    }
                                    next.push(m2);
                                }
                            }
                            stack = next;
                        }
                        combos.extend(stack);
                    }
                }
            }
            for m in combos {
                if p.check(&m).is_err() {
                    continue;
                }
                if !is_simple(&m).0 {
                    continue;
                }
                if found.iter().any(|x| x.dim == m.dim && p.hom_dim(x, &m) > 0) {
                    continue;
                }
                found.push(m);
            }
        }
    }
    Ok(found)
}

pub struct CrossCheck {
    pub brute_simples: usize,
    pub brute_supersingular: usize,
    pub classified: usize,
    pub matched: bool,
    pub detail: Option<String>,
    /// Simples containing a twist have an invertible `z_λ`; supersingular
    /// simples contain an affine character and no twist.
    pub converse_ok: bool,
}

/// Compare the classification with the exhaustive search.
pub fn cross_check(p: &Presentation, b: &Bernstein, pi: Option<i64>, max_dim: usize) -> Result<CrossCheck> {
    let simples = simple_modules(p, pi, max_dim)?;
    let classified = classify::classify(p, b, pi)?;
    let all_chars = characters::enumerate_affine_characters(p);
    let mut ss: Vec<(Module, SupersingularReport)> = Vec::new();
    let mut converse_ok = true;
    let mut detail = None;
    for m in &simples {
        let rep = supersingular_report(p, b, m)?;
        let content = characters::contained_characters(p, m, &all_chars);
        let has_twist = content.iter().any(|(x, _)| characters::is_trivial_or_sign_twist(p, x));
        if has_twist && !rep.some_invertible {
            converse_ok = false;
            detail.get_or_insert(format!("simple containing a twist with no invertible z: {}", m.tag));
        }
        if rep.nilpotent {
            if has_twist || content.is_empty() {
                converse_ok = false;
                detail.get_or_insert("supersingular simple with a twist or without any affine character".to_string());
            }
            ss.push((m.clone(), rep));
        }
    }
    let mut matched = classified.iter().all(|c| c.module.field().size == p.g().q) && ss.len() == classified.len();
    if matched {
        let mut used = vec![false; classified.len()];
        for (m, _) in &ss {
            let hit = classified
                .iter()
                .enumerate()
                .find(|(i, c)| !used[*i] && c.module.dim == m.dim && p.hom_dim(&c.module, m) > 0);
            match hit {
                Some((i, _)) => used[i] = true,
                None => {
                    matched = false;
                    detail.get_or_insert(format!("brute-force supersingular module of dim {} not classified", m.dim));
                }
            }
        }
    } else {
        detail.get_or_insert(format!(
            "{} supersingular simples by search, {} by classification",
            ss.len(),
            classified.len()
        ));
    }
    Ok(CrossCheck {
        brute_simples: simples.len(),
        brute_supersingular: ss.len(),
        classified: classified.len(),
        matched,
        detail,
        converse_ok,
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

    #[test]
    fn sl2_q3_search_agrees() {
        let rd = Arc::new(RootDatum::build("SL2", None, 3).unwrap());
        let g = Arc::new(ExtendedGroup::new(Arc::new(AffineSystem::full(rd))));
        let h = Arc::new(Hecke::new(g));
        let p = Presentation::new(h.clone()).unwrap();
        let b = Bernstein::new(h);
        let c = cross_check(&p, &b, None, 2).unwrap();
        assert!(c.matched, "{:?}", c.detail);
        assert!(c.converse_ok, "{:?}", c.detail);
        assert_eq!(c.brute_supersingular, 3);
    }
}
