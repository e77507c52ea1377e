//! Finite-dimensional modules over the characteristic-`p` pro-p Iwahori-Hecke
//! algebra, given by matrices for a fixed generating set.
//!
//! Modules are right modules on row vectors, so `ρ(τ_x τ_y) = ρ(τ_x) ρ(τ_y)`.
//! Generators: `τ_t` for the coordinate cocharacters of the torus, `τ_{ñ_A}`
//! for the affine simples and, when `Ω` is nontrivial and cyclic, `τ_ω̃` for
//! a length-zero lift of its generator.

pub mod brute;
pub mod characters;
pub mod classify;
pub mod linalg;
pub mod weight;

use std::sync::Arc;

use crate::error::{precondition, Error, Result};
use crate::extended_group::{ExtendedGroup, TElem, Torus};
use crate::hecke::{Hecke, HeckeElement};
use crate::laurent::Laurent;
use crate::ring::{CharP, Generic};
use crate::root_datum::{Cw, MAX_RANK};

use linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    T(usize),
    N(usize),
    W,
    Winv,
}

/// `coef · c^pi_exp · word`, where `c` is the scalar of `τ_{s(λ_0)}` for the
/// central direction `λ_0`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coef: i64,
    pub pi_exp: i64,
    pub word: Vec<Gen>,
}

/// `Σ terms = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<Term>,
}

/// Data of the length-zero generator `ω̃`.
#[derive(Clone, Debug)]
pub struct OmegaData {
    pub lift: TElem,
    /// Smallest `n >= 1` with `ω^n` a central translation.
    pub order: u32,
    /// `ω̃^n = s(k λ_0) · t_0`.
    pub power_torus: Torus,
    pub pi_exp: i64,
    /// `Ω` is finite.
    pub finite: bool,
    /// `ω̃ ñ_A ω̃⁻¹ = t_A · ñ_{perm[A]}`.
    pub perm: Vec<usize>,
    pub conj_t: Vec<Torus>,
}

#[derive(Debug)]
pub struct Presentation {
    pub h: Arc<Hecke>,
    pub dim: usize,
    pub nsimples: usize,
    pub omega: Option<OmegaData>,
    /// Central direction `λ_0` when the datum is not semisimple.
    pub central: Option<Cw>,
    relations: Vec<Relation>,
}

/// Matrices for the generators over the field of `r`.
#[derive(Clone, Debug)]
pub struct Module {
    pub r: CharP,
    pub dim: usize,
    pub t: Vec<Mat>,
    pub n: Vec<Mat>,
    pub w: Option<Mat>,
    pub winv: Option<Mat>,
    /// Scalar by which `τ_{s(λ_0)}` acts.
    pub pi: Option<u32>,
    pub tag: String,
}

impl Module {
    pub fn field(&self) -> &crate::field::FiniteField {
        &self.r.field
    }

    pub fn gen(&self, g: Gen) -> &Mat {
        match g {
            Gen::T(i) => &self.t[i],
            Gen::N(a) => &self.n[a],
            Gen::W => self.w.as_ref().expect("module has no ω generator"),
            Gen::Winv => self.winv.as_ref().expect("module has no ω generator"),
        }
    }

    /// Generators in a fixed order (with `τ_ω̃⁻¹` when present).
    pub fn gens(&self) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.t.iter().chain(&self.n).cloned().collect();
        if let (Some(w), Some(wi)) = (&self.w, &self.winv) {
            out.push(w.clone());
            out.push(wi.clone());
        }
        out
    }

    pub fn eval_word(&self, word: &[Gen]) -> Mat {
        let f = self.field();
        word.iter().fold(linalg::identity(self.dim), |acc, &g| linalg::mul(f, &acc, self.gen(g)))
    }

    fn pi_pow(&self, e: i64) -> u32 {
        let f = self.field();
        let c = self.pi.unwrap_or(1);
        if e >= 0 {
            f.pow(c, e as u64)
        } else {
            f.pow(f.inv(c).expect("ϖ-scalar is a unit"), (-e) as u64)
        }
    }

    pub fn eval_relation(&self, rel: &Relation) -> Mat {
        let f = self.field();
        let mut acc = linalg::zeros(self.dim, self.dim);
        for term in &rel.terms {
            let c = f.mul(f.from_int(term.coef), self.pi_pow(term.pi_exp));
            acc = linalg::add(f, &acc, &linalg::scale(f, &self.eval_word(&term.word), c));
        }
        acc
    }

    pub fn is_scalar(&self, m: &Mat) -> Option<u32> {
        let c = m.first().and_then(|r| r.first()).copied().unwrap_or(0);
        (*m == linalg::scalar(self.dim, c)).then_some(c)
    }
}

fn word_pow(g: Gen, k: usize) -> Vec<Gen> {
    vec![g; k]
}

impl Presentation {
    pub fn new(h: Arc<Hecke>) -> Result<Presentation> {
        let g = h.g.clone();
        let sys = &g.sys;
        let rd = sys.rd();
        if sys.omega.moduli.len() > 1 {
            return precondition("Ω is not cyclic; modules need a user-supplied presentation");
        }
        let lineality = rd.dominant_generators(&sys.facet.simples(rd.rank)).1;
        if lineality.len() > 1 {
            return precondition("more than one central direction is not supported");
        }
        let central = lineality.first().copied();
        let nsimples = sys.simples.len();
        let omega = if sys.omega.is_trivial() {
            None
        } else {
            Some(omega_data(&g, central)?)
        };
        let mut p = Presentation {
            dim: rd.dim,
            nsimples,
            omega,
            central,
            relations: Vec::new(),
            h,
        };
        p.relations = p.build_relations();
        Ok(p)
    }

    pub fn g(&self) -> &ExtendedGroup {
        &self.h.g
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn gen_list(&self) -> Vec<Gen> {
        let mut out: Vec<Gen> = (0..self.dim).map(Gen::T).chain((0..self.nsimples).map(Gen::N)).collect();
        if self.omega.is_some() {
            out.push(Gen::W);
            out.push(Gen::Winv);
        }
        out
    }

    pub fn torus_word(&self, t: &Torus) -> Vec<Gen> {
        (0..self.dim).flat_map(|i| word_pow(Gen::T(i), t[i] as usize)).collect()
    }

    fn unit(&self, i: usize) -> Torus {
        let mut e = [0u16; MAX_RANK];
        e[i] = 1;
        e
    }

    /// `x t x⁻¹` for a torus element `t`.
    fn conj_torus(&self, x: &TElem, t: &Torus) -> Torus {
        let g = self.g();
        let c = g.mul(&g.mul(x, &TElem::torus(*t)), &g.inv(x));
        debug_assert!(c.u == 0 && c.lam == [0; MAX_RANK]);
        c.t
    }

    /// The torus part `t'` and simple `B` with `x = t' ñ_B`, if `x` lies over an affine simple reflection.
    pub fn split_letter(&self, x: &TElem) -> Option<(Torus, usize)> {
        let g = self.g();
        let w = x.proj();
        let b = g.sys.simples.iter().position(|s| s.refl == w)?;
        let t = g.mul(x, &g.inv(&g.lifts[b]));
        Some((t.t, b))
    }

    fn build_relations(&self) -> Vec<Relation> {
        let g = self.g();
        let mut rels = Vec::new();
        let term = |coef: i64, word: Vec<Gen>| Term { coef, pi_exp: 0, word };
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                rels.push(Relation {
                    name: format!("torus commutation {i},{j}"),
                    terms: vec![term(1, vec![Gen::T(i), Gen::T(j)]), term(-1, vec![Gen::T(j), Gen::T(i)])],
                });
            }
            rels.push(Relation {
                name: format!("torus order {i}"),
                terms: vec![term(1, word_pow(Gen::T(i), g.m as usize)), term(-1, vec![])],
            });
        }
        for a in 0..self.nsimples {
            let n = g.lifts[a];
            for i in 0..self.dim {
                let t2 = self.conj_torus(&n, &self.unit(i));
                let mut rhs = self.torus_word(&t2);
                rhs.push(Gen::N(a));
                rels.push(Relation {
                    name: format!("torus normalization by ñ{a}, coordinate {i}"),
                    terms: vec![term(1, vec![Gen::N(a), Gen::T(i)]), term(-1, rhs)],
                });
            }
            let mut terms = vec![term(1, vec![Gen::N(a), Gen::N(a)])];
            for t in self.h.c_a_terms(a) {
                let mut w = self.torus_word(&self.conj_torus(&n, &t));
                w.push(Gen::N(a));
                terms.push(term(-1, w));
            }
            rels.push(Relation {
                name: format!("quadratic relation at ñ{a}"),
                terms,
            });
        }
        for a in 0..self.nsimples {
            for b in a + 1..self.nsimples {
                let Some(m) = self.braid_order(a, b) else { continue };
                let alt = |x: usize, y: usize| -> Vec<usize> { (0..m).map(|k| if k % 2 == 0 { x } else { y }).collect() };
                let (w1, w2) = (alt(a, b), alt(b, a));
                let p1 = w1.iter().fold(TElem::ID, |acc, &l| g.mul(&acc, &g.lifts[l]));
                let p2 = w2.iter().fold(TElem::ID, |acc, &l| g.mul(&acc, &g.lifts[l]));
                let t = g.mul(&p1, &g.inv(&p2));
                debug_assert!(t.u == 0 && t.lam == [0; MAX_RANK]);
                let mut rhs = self.torus_word(&t.t);
                rhs.extend(w2.iter().map(|&l| Gen::N(l)));
                rels.push(Relation {
                    name: format!("braid relation ñ{a},ñ{b}"),
                    terms: vec![term(1, w1.iter().map(|&l| Gen::N(l)).collect()), term(-1, rhs)],
                });
            }
        }
        if let Some(om) = &self.omega {
            rels.push(Relation {
                name: "ω̃ inverse (right)".into(),
                terms: vec![term(1, vec![Gen::W, Gen::Winv]), term(-1, vec![])],
            });
            rels.push(Relation {
                name: "ω̃ inverse (left)".into(),
                terms: vec![term(1, vec![Gen::Winv, Gen::W]), term(-1, vec![])],
            });
            for i in 0..self.dim {
                let t2 = self.conj_torus(&om.lift, &self.unit(i));
                let mut rhs = self.torus_word(&t2);
                rhs.push(Gen::W);
                rels.push(Relation {
                    name: format!("torus normalization by ω̃, coordinate {i}"),
                    terms: vec![term(1, vec![Gen::W, Gen::T(i)]), term(-1, rhs)],
                });
            }
            for a in 0..self.nsimples {
                let mut rhs = self.torus_word(&om.conj_t[a]);
                rhs.push(Gen::N(om.perm[a]));
                rhs.push(Gen::W);
                rels.push(Relation {
                    name: format!("ω̃ permutes ñ{a}"),
                    terms: vec![term(1, vec![Gen::W, Gen::N(a)]), term(-1, rhs)],
                });
            }
            let mut rhs = Term {
                coef: -1,
                pi_exp: om.pi_exp,
                word: self.torus_word(&om.power_torus),
            };
            if om.pi_exp == 0 {
                rhs.pi_exp = 0;
            }
            rels.push(Relation {
                name: format!("ω̃ to the power {}", om.order),
                terms: vec![term(1, word_pow(Gen::W, om.order as usize)), rhs],
            });
        }
        rels
    }

    /// Order of `s_A s_B`, or `None` if infinite.
    fn braid_order(&self, a: usize, b: usize) -> Option<usize> {
        let sys = &self.g().sys;
        let st = sys.mul(&sys.simples[a].refl, &sys.simples[b].refl);
        let mut cur = st;
        for m in 1..=12 {
            if cur == crate::affine_weyl::WElem::ID {
                return Some(m);
            }
            cur = sys.mul(&cur, &st);
        }
        None
    }

    /// First violated defining relation, if any.
    pub fn check(&self, m: &Module) -> std::result::Result<(), String> {
        if m.t.len() != self.dim || m.n.len() != self.nsimples || m.w.is_some() != self.omega.is_some() {
            return Err("generator count does not match the presentation".into());
        }
        if self.central.is_some() && self.omega.as_ref().is_some_and(|o| o.pi_exp != 0) && m.pi.is_none() {
            return Err("ϖ-scalar missing".into());
        }
        for rel in &self.relations {
            if !linalg::is_zero(&m.eval_relation(rel)) {
                return Err(rel.name.clone());
            }
        }
        Ok(())
    }

    pub fn torus_mat(&self, m: &Module, t: &Torus) -> Mat {
        m.eval_word(&self.torus_word(t))
    }

    fn omega_power(&self, j: i64) -> TElem {
        let g = self.g();
        let om = self.omega.as_ref().unwrap();
        let base = if j >= 0 { om.lift } else { g.inv(&om.lift) };
        (0..j.unsigned_abs()).fold(TElem::ID, |acc, _| g.mul(&acc, &base))
    }

    /// `ρ(τ_x)`.
    pub fn act_basis(&self, m: &Module, x: &TElem) -> Mat {
        let f = m.field();
        let g = self.g();
        let fac = self.h.factor(x);
        let (t, j) = match &self.omega {
            None => {
                debug_assert!(fac.omega.u == 0 && fac.omega.lam == [0; MAX_RANK]);
                (fac.omega.t, 0)
            }
            Some(om) => {
                let class = g.sys.omega_class(&fac.omega.proj());
                let mut j = class[0];
                if om.finite {
                    j = j.rem_euclid(i64::from(om.order));
                }
                let rest = g.mul(&fac.omega, &g.inv(&self.omega_power(j)));
                debug_assert!(rest.u == 0 && rest.lam == [0; MAX_RANK]);
                (rest.t, j)
            }
        };
        let mut out = self.torus_mat(m, &t);
        let wg = if j >= 0 { Gen::W } else { Gen::Winv };
        for _ in 0..j.unsigned_abs() {
            out = linalg::mul(f, &out, m.gen(wg));
        }
        for &l in &fac.letters {
            out = linalg::mul(f, &out, &m.n[l]);
        }
        out
    }

    /// `ρ(a)` for an element with coefficients in `Z[q]`, evaluated at `q = 0`.
    pub fn act(&self, m: &Module, a: &HeckeElement<Laurent>) -> Result<Mat> {
        let f = m.field();
        let mut out = linalg::zeros(m.dim, m.dim);
        for (x, c) in a.iter() {
            if !c.is_q_polynomial() {
                return Err(Error::Integrality {
                    coeff: c.to_string(),
                    at: self.g().format(x),
                });
            }
            let c0 = f.from_int(c.coeff(0));
            if c0 == 0 {
                continue;
            }
            out = linalg::add(f, &out, &linalg::scale(f, &self.act_basis(m, x), c0));
        }
        Ok(out)
    }

    /// Test elements for the homomorphism check: all `τ_x` with `ℓ(x) <= max_len`
    /// and torus part zero, times each coordinate torus generator.
    fn sample_elements(&self, max_len: usize) -> Vec<TElem> {
        let g = self.g();
        let sys = &g.sys;
        let omegas = sys.small_omegas(1);
        let mut out: Vec<TElem> = sys
            .elements_up_to(max_len, &omegas)
            .iter()
            .map(TElem::lift)
            .collect();
        for i in 0..self.dim {
            out.push(TElem::torus(self.unit(i)));
        }
        out
    }

    /// `ρ(τ_x) ρ(τ_y) = ρ(τ_x τ_y)` for `x` in a sample and `y` a generator.
    pub fn check_homomorphism(&self, m: &Module, max_len: usize) -> std::result::Result<(), String> {
        let g = self.g();
        let f = m.field();
        let mut gens: Vec<TElem> = (0..self.dim).map(|i| TElem::torus(self.unit(i))).collect();
        gens.extend(g.lifts.iter().copied());
        if let Some(om) = &self.omega {
            gens.push(om.lift);
        }
        for x in self.sample_elements(max_len) {
            let rx = self.act_basis(m, &x);
            for y in &gens {
                let prod = self.h.mul_basis(&Generic, &self.h.basis(&Generic, x), y);
                let lhs = linalg::mul(f, &rx, &self.act_basis(m, y));
                let rhs = self.act(m, &prod).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("ρ({}) ρ({}) differs from ρ of the product", g.format(&x), g.format(y)));
                }
            }
        }
        Ok(())
    }

    /// Block upper triangular extension data: the space of off-diagonal
    /// generator blocks `X` making `[[M1, X], [0, M2]]` a module, and the
    /// subspace of split ones `M1(g) Y - Y M2(g)`.
    pub fn extension_space(&self, m1: &Module, m2: &Module) -> (Vec<Vec<Mat>>, usize) {
        let f = m1.field();
        let gens = self.gen_list();
        let (n1, n2) = (m1.dim, m2.dim);
        let block = n1 * n2;
        let unknowns = gens.len() * block;
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
        for (gi, _) in gens.iter().enumerate() {
            for e in 0..block {
                let mut xs = vec![linalg::zeros(n1, n2); gens.len()];
                xs[gi][e / n2][e % n2] = 1;
                let mut col = Vec::new();
                for rel in &self.relations {
                    col.extend(linalg::flat(&self.off_diagonal(m1, m2, &gens, &xs, rel)));
                }
                columns.push(col);
            }
        }
        let rows = columns.first().map_or(0, |c| c.len());
        for r in 0..rows {
            eqs.push(columns.iter().map(|c| c[r]).collect());
        }
        let z1: Vec<Vec<Mat>> = linalg::kernel(f, &eqs, unknowns)
            .into_iter()
            .map(|v| v.chunks(block).map(|c| linalg::from_flat(c, n2)).collect())
            .collect();
        // coboundaries
        let mut cob: Vec<Vec<u32>> = Vec::new();
        for e in 0..block {
            let mut y = linalg::zeros(n1, n2);
            y[e / n2][e % n2] = 1;
            let mut v = Vec::new();
            for &g in &gens {
                v.extend(linalg::flat(&linalg::sub(f, &linalg::mul(f, m1.gen(g), &y), &linalg::mul(f, &y, m2.gen(g)))));
            }
            cob.push(v);
        }
        (z1, linalg::rank(f, &cob))
    }

    fn off_diagonal(&self, m1: &Module, m2: &Module, gens: &[Gen], xs: &[Mat], rel: &Relation) -> Mat {
        let f = m1.field();
        let idx = |g: Gen| gens.iter().position(|&x| x == g).unwrap();
        let mut acc = linalg::zeros(m1.dim, m2.dim);
        for term in &rel.terms {
            let c = f.mul(f.from_int(term.coef), m1.pi_pow(term.pi_exp));
            let w = &term.word;
            for k in 0..w.len() {
                let left = m1.eval_word(&w[..k]);
                let right = m2.eval_word(&w[k + 1..]);
                let mid = linalg::mul(f, &linalg::mul(f, &left, &xs[idx(w[k])]), &right);
                acc = linalg::add(f, &acc, &linalg::scale(f, &mid, c));
            }
        }
        acc
    }

    /// The module `[[M1, X], [0, M2]]`.
    pub fn glue(&self, m1: &Module, m2: &Module, xs: &[Mat]) -> Module {
        let gens = self.gen_list();
        let n = m1.dim + m2.dim;
        let build = |g: Gen| -> Mat {
            let mut out = linalg::zeros(n, n);
            let (a, b) = (m1.gen(g), m2.gen(g));
            let x = &xs[gens.iter().position(|&y| y == g).unwrap()];
            for i in 0..m1.dim {
                out[i][..m1.dim].copy_from_slice(&a[i]);
                out[i][m1.dim..].copy_from_slice(&x[i]);
            }
            for i in 0..m2.dim {
                out[m1.dim + i][m1.dim..].copy_from_slice(&b[i]);
            }
            out
        };
        Module {
            r: m1.r.clone(),
            dim: n,
            t: (0..self.dim).map(|i| build(Gen::T(i))).collect(),
            n: (0..self.nsimples).map(|a| build(Gen::N(a))).collect(),
            w: self.omega.as_ref().map(|_| build(Gen::W)),
            winv: self.omega.as_ref().map(|_| build(Gen::Winv)),
            pi: m1.pi,
            tag: format!("extension of {} by {}", m2.tag, m1.tag),
        }
    }

    /// `dim Hom(M1, M2)`: matrices `X` with `M1(g) X = X M2(g)`.
    pub fn hom_dim(&self, m1: &Module, m2: &Module) -> usize {
        let a = m1.gens();
        let b = m2.gens();
        linalg::intertwiners(m1.field(), &a, &b, m1.dim, m2.dim).len()
    }
}

fn omega_data(g: &ExtendedGroup, central: Option<Cw>) -> Result<OmegaData> {
    let sys = &g.sys;
    let gen = sys.omega_generators()[0];
    let lift = TElem::lift(&gen);
    let rd = sys.rd();
    let mut p = lift;
    let mut found = None;
    for n in 1..=64u32 {
        let central_lam = (0..rd.roots.len()).all(|a| rd.pairing(&p.lam, a) == 0);
        if p.u == 0 && central_lam {
            found = Some((n, p));
            break;
        }
        p = g.mul(&p, &lift);
    }
    let Some((order, pw)) = found else {
        return Err(Error::Module("no power of ω̃ is a central translation".into()));
    };
    let pi_exp = if pw.lam == [0; MAX_RANK] {
        0
    } else {
        let c = central.ok_or_else(|| Error::Module("central translation without a central direction".into()))?;
        let i = (0..MAX_RANK).find(|&i| c[i] != 0).unwrap();
        let k = pw.lam[i] / c[i];
        if (0..MAX_RANK).any(|j| pw.lam[j] != k * c[j]) {
            return Err(Error::Module("power of ω̃ is not a multiple of the central direction".into()));
        }
        i64::from(k)
    };
    // ω̃^n = t_0 · s(kλ_0) with u = 1
    let rest = g.mul(&pw, &g.inv(&TElem::splitting(pw.lam)));
    debug_assert!(rest.u == 0 && rest.lam == [0; MAX_RANK]);
    let mut perm = Vec::new();
    let mut conj_t = Vec::new();
    for a in 0..sys.simples.len() {
        let c = g.mul(&g.mul(&lift, &g.lifts[a]), &g.inv(&lift));
        let w = c.proj();
        let b = sys
            .simples
            .iter()
            .position(|s| s.refl == w)
            .ok_or_else(|| Error::Module("ω̃ does not normalize the affine simples".into()))?;
        let t = g.mul(&c, &g.inv(&g.lifts[b]));
        perm.push(b);
        conj_t.push(t.t);
    }
    Ok(OmegaData {
        lift,
        order,
        power_torus: rest.t,
        pi_exp,
        finite: central.is_none(),
        perm,
        conj_t,
    })
}

/// A field containing `F_q` of degree `e` over it.
pub fn extension(q: u32, e: u32) -> CharP {
    let (p, s) = crate::field::prime_power(q).expect("q is a prime power");
    CharP::new(Arc::new(crate::field::FiniteField::new(p, s * e)), q)
}

impl Module {
    /// Scalar matrices from explicit values, mostly for tests.
    pub fn one_dimensional(r: CharP, t: Vec<u32>, n: Vec<u32>, w: Option<u32>, pi: Option<u32>, tag: &str) -> Module {
        let f = r.field.clone();
        Module {
            dim: 1,
            t: t.into_iter().map(|x| vec![vec![x]]).collect(),
            n: n.into_iter().map(|x| vec![vec![x]]).collect(),
            w: w.map(|x| vec![vec![x]]),
            winv: w.map(|x| vec![vec![f.inv(x).expect("unit")]]),
            pi,
            tag: tag.to_string(),
            r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::AffineSystem;
    use crate::root_datum::RootDatum;

    fn pres(label: &str, q: u32) -> Presentation {
        let rd = Arc::new(RootDatum::build(label, None, q).unwrap());
        let g = Arc::new(ExtendedGroup::new(Arc::new(AffineSystem::full(rd))));
        Presentation::new(Arc::new(Hecke::new(g))).unwrap()
    }

    #[test]
    fn trivial_character_satisfies_relations() {
        for (label, q) in [("SL2", 3), ("GL2", 3), ("PGL2", 5), ("SL3", 3)] {
            let p = pres(label, q);
            let r = extension(q, 1);
            let w = p.omega.as_ref().map(|_| 1);
            let pi = p.central.map(|_| 1);
            let m = Module::one_dimensional(r, vec![1; p.dim], vec![0; p.nsimples], w, pi, "triv");
            assert_eq!(p.check(&m), Ok(()), "{label}");
            assert_eq!(p.check_homomorphism(&m, 2), Ok(()), "{label}");
        }
    }

    #[test]
    fn gl2_omega_swaps_simples() {
        let p = pres("GL2", 3);
        let om = p.omega.as_ref().unwrap();
        assert_eq!(om.perm, vec![1, 0]);
        assert_eq!(om.order, 2);
        assert_eq!(om.pi_exp, 1);
    }
}
