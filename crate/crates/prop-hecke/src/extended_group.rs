//! The pro-p extension `W̃` of `W` by `T⁰/T¹ ≅ (F_q^×)^dim`.
//!
//! An element `(t, u, λ)` stands for `t · ũ · s(λ)` where `ũ` is the Tits lift
//! of `u` (a product of `ñ_i` along any reduced word) and `s` is the splitting
//! of `X_*(T)`. Torus parts are discrete logs mod `q - 1`.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;

use crate::affine_weyl::{AffineSystem, WElem};
use crate::root_datum::{cw_add, cw_neg, Cw, RootDatum, MAX_RANK};

pub type Torus = [u16; MAX_RANK];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TElem {
    pub t: Torus,
    pub u: u16,
    pub lam: Cw,
}

impl TElem {
    pub const ID: TElem = TElem {
        t: [0; MAX_RANK],
        u: 0,
        lam: [0; MAX_RANK],
    };

    pub fn torus(t: Torus) -> TElem {
        TElem { t, ..TElem::ID }
    }

    pub fn splitting(lam: Cw) -> TElem {
        TElem { lam, ..TElem::ID }
    }

    pub fn lift(w: &WElem) -> TElem {
        TElem {
            t: [0; MAX_RANK],
            u: w.u,
            lam: w.lam,
        }
    }

    pub fn proj(&self) -> WElem {
        WElem { u: self.u, lam: self.lam }
    }
}

#[derive(Serialize)]
pub struct TElemJson {
    pub t: Vec<u16>,
    pub lambda: Vec<i32>,
    pub u: String,
}

/// A character `ξ` of `T⁰/T¹`, as an exponent vector: `ξ(t) = h^{ξ·t}`.
pub type Character = Torus;

#[derive(Debug)]
pub struct ExtendedGroup {
    pub sys: Arc<AffineSystem>,
    pub q: u32,
    /// `q - 1`.
    pub m: u16,
    cocycle: Vec<Torus>,
    /// `ñ_A` for each affine simple of `sys`.
    pub lifts: Vec<TElem>,
}

fn cache_path(rd: &RootDatum) -> Option<PathBuf> {
    let dir = std::env::var_os("PROP_HECKE_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("cocycle_{}_q{}.json", rd.label, rd.q)))
}

fn minus_one(q: u32) -> u16 {
    if q % 2 == 1 {
        ((q - 1) / 2) as u16
    } else {
        0
    }
}

fn torus_add(a: &Torus, b: &Torus, m: u16) -> Torus {
    std::array::from_fn(|i| ((u32::from(a[i]) + u32::from(b[i])) % u32::from(m)) as u16)
}

fn compute_cocycle(rd: &RootDatum) -> Vec<Torus> {
    let w = &rd.weyl;
    let n = w.len();
    let m = (rd.q - 1) as u16;
    let mone = i32::from(minus_one(rd.q));
    // c(x, s_i) for every x and simple i
    let cs = |x: u16, i: usize| -> Torus {
        let xs = w.mul(x, w.simple(i));
        if w.length(xs) > w.length(x) {
            return [0; MAX_RANK];
        }
        let co = rd.roots[i].coroot;
        let val: Cw = std::array::from_fn(|k| co[k] * mone);
        let img = w.apply(xs, &val);
        std::array::from_fn(|k| img[k].rem_euclid(i32::from(m)) as u16)
    };
    let mut table = vec![[0u16; MAX_RANK]; n * n];
    // elements are in breadth-first order, so the prefix v' of v's word is already done
    for v in 1..n as u16 {
        let word = w.word(v);
        let (&last, prefix) = word.split_last().unwrap();
        let vp = w.from_word(prefix);
        for u in 0..n as u16 {
            let a = table[u as usize * n + vp as usize];
            let b = cs(w.mul(u, vp), last as usize);
            table[u as usize * n + v as usize] = torus_add(&a, &b, m);
        }
    }
    table
}

fn load_or_compute(rd: &RootDatum) -> Vec<Torus> {
    let n = rd.weyl.len();
    if let Some(path) = cache_path(rd) {
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(t) = serde_json::from_str::<Vec<Torus>>(&text) {
                if t.len() == n * n {
                    return t;
                }
            }
        }
        let t = compute_cocycle(rd);
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(&path, serde_json::to_string(&t).unwrap_or_default());
        return t;
    }
    compute_cocycle(rd)
}

impl ExtendedGroup {
    pub fn new(sys: Arc<AffineSystem>) -> ExtendedGroup {
        let rd = sys.datum.clone();
        let q = rd.q;
        let cocycle = load_or_compute(&rd);
        let mut g = ExtendedGroup {
            sys,
            q,
            m: (q - 1) as u16,
            cocycle,
            lifts: Vec::new(),
        };
        let lifts = (0..g.sys.simples.len()).map(|a| g.compute_lift(a)).collect();
        g.lifts = lifts;
        g
    }

    pub fn rd(&self) -> &RootDatum {
        &self.sys.datum
    }

    pub fn cocycle(&self, u: u16, v: u16) -> Torus {
        self.cocycle[u as usize * self.rd().weyl.len() + v as usize]
    }

    pub fn t_add(&self, a: &Torus, b: &Torus) -> Torus {
        torus_add(a, b, self.m)
    }

    pub fn t_neg(&self, a: &Torus) -> Torus {
        let m = u32::from(self.m);
        std::array::from_fn(|i| ((m - u32::from(a[i]) % m) % m) as u16)
    }

    pub fn t_act(&self, u: u16, t: &Torus) -> Torus {
        self.rd().weyl.apply_mod(u, t, self.m)
    }

    /// Image of `λ ⊗ x` for `x = h^k`.
    pub fn t_from_cw(&self, lam: &Cw, k: i64) -> Torus {
        let m = i64::from(self.m);
        std::array::from_fn(|i| (i64::from(lam[i]) * k).rem_euclid(m) as u16)
    }

    pub fn mul(&self, a: &TElem, b: &TElem) -> TElem {
        let w = &self.rd().weyl;
        let t = self.t_add(&self.t_add(&a.t, &self.t_act(a.u, &b.t)), &self.cocycle(a.u, b.u));
        TElem {
            t,
            u: w.mul(a.u, b.u),
            lam: cw_add(&w.apply(w.inv(b.u), &a.lam), &b.lam),
        }
    }

    pub fn inv(&self, a: &TElem) -> TElem {
        let w = &self.rd().weyl;
        let ui = w.inv(a.u);
        let inner = self.t_add(&a.t, &self.cocycle(a.u, ui));
        TElem {
            t: self.t_neg(&self.t_act(ui, &inner)),
            u: ui,
            lam: cw_neg(&w.apply(a.u, &a.lam)),
        }
    }

    pub fn tits_lift(&self, u: u16) -> TElem {
        TElem { u, ..TElem::ID }
    }

    pub fn length(&self, a: &TElem) -> usize {
        self.sys.length(&a.proj())
    }

    fn compute_lift(&self, a: usize) -> TElem {
        let s = &self.sys.simples[a];
        if let Some(i) = s.finite_index {
            return self.tits_lift(self.rd().weyl.simple(i));
        }
        let rd = self.rd();
        let beta = rd.neg_root(s.root.root);
        // conjugate a finite simple of the same piece onto the highest root
        for w in self.sys.finite_elements() {
            for other in &self.sys.simples {
                let Some(i) = other.finite_index else { continue };
                if rd.weyl.root_image(w, i) == beta {
                    let nw = self.tits_lift(w);
                    let ni = self.tits_lift(rd.weyl.simple(i));
                    let conj = self.mul(&self.mul(&nw, &ni), &self.inv(&nw));
                    let shift = TElem::splitting(cw_neg(&rd.roots[beta].coroot));
                    let out = self.mul(&conj, &shift);
                    debug_assert_eq!(out.proj(), s.refl);
                    return out;
                }
            }
        }
        unreachable!("highest root is conjugate to a simple root")
    }

    /// The coroot image `T_A` generator for the affine simple `a`.
    pub fn t_a_generator(&self, a: usize) -> Torus {
        let root = self.sys.simples[a].root.root;
        self.t_from_cw(&self.rd().roots[root].coroot, 1)
    }

    /// `c_A` as a multiset: `α̌(h^j)` for `j = 0..q-2`.
    pub fn c_a(&self, a: usize) -> Vec<Torus> {
        let root = self.sys.simples[a].root.root;
        let co = self.rd().roots[root].coroot;
        (0..i64::from(self.m)).map(|j| self.t_from_cw(&co, j)).collect()
    }

    /// `α̌(-1)` for the root of the affine simple `a`.
    pub fn t_minus_one(&self, a: usize) -> Torus {
        let root = self.sys.simples[a].root.root;
        self.t_from_cw(&self.rd().roots[root].coroot, i64::from(minus_one(self.q)))
    }

    pub fn all_tori(&self) -> Vec<Torus> {
        let dim = self.rd().dim;
        let m = self.m;
        let count = (m as usize).pow(dim as u32);
        (0..count)
            .map(|mut code| {
                let mut t = [0u16; MAX_RANK];
                for slot in t.iter_mut().take(dim).rev() {
                    *slot = (code % m as usize) as u16;
                    code /= m as usize;
                }
                t
            })
            .collect()
    }

    /// All characters of `T⁰/T¹`, in lexicographic order.
    pub fn characters(&self) -> Vec<Character> {
        self.all_tori()
    }

    /// Exponent of `ξ(t)` in the fixed generator of `μ_{q-1}`.
    pub fn char_exp(&self, xi: &Character, t: &Torus) -> i64 {
        let m = i64::from(self.m);
        (0..MAX_RANK).map(|i| i64::from(xi[i]) * i64::from(t[i])).sum::<i64>() % m
    }

    pub fn is_trivial_on(&self, xi: &Character, t: &Torus) -> bool {
        self.char_exp(xi, t) == 0
    }

    /// `ξ` trivial on `T_A`.
    pub fn restrict_trivial(&self, xi: &Character, a: usize) -> bool {
        self.is_trivial_on(xi, &self.t_a_generator(a))
    }

    /// `(u·ξ)(t) = ξ(u⁻¹ t)`.
    pub fn char_act(&self, u: u16, xi: &Character) -> Character {
        let w = &self.rd().weyl;
        let ui = w.inv(u);
        let dim = self.rd().dim;
        let m = i64::from(self.m);
        let mut out = [0u16; MAX_RANK];
        for (j, slot) in out.iter_mut().enumerate().take(dim) {
            let mut e = [0u16; MAX_RANK];
            e[j] = 1;
            *slot = self.char_exp(xi, &self.t_act(ui, &e)).rem_euclid(m) as u16;
        }
        out
    }

    pub fn format_torus(&self, t: &Torus) -> String {
        let parts: Vec<String> = t[..self.rd().dim].iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn format(&self, a: &TElem) -> String {
        let mut parts = Vec::new();
        if a.t.iter().any(|&x| x != 0) {
            parts.push(format!("t{}", self.format_torus(&a.t)));
        }
        let u = self.sys.format_finite(a.u);
        if !u.is_empty() {
            parts.push(format!("ñ({u})"));
        }
        if a.lam.iter().any(|&x| x != 0) {
            parts.push(format!("e^{}", self.rd().fmt_cw(&a.lam)));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }

    pub fn to_json(&self, a: &TElem) -> TElemJson {
        let dim = self.rd().dim;
        TElemJson {
            t: a.t[..dim].to_vec(),
            lambda: a.lam[..dim].to_vec(),
            u: self.sys.format_finite(a.u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(label: &str, q: u32) -> ExtendedGroup {
        let rd = Arc::new(RootDatum::build(label, None, q).unwrap());
        ExtendedGroup::new(Arc::new(AffineSystem::full(rd)))
    }

    #[test]
    fn sl2_square_of_lift() {
        let g = group("SL2", 3);
        let n = g.lifts[0];
        let n2 = g.mul(&n, &n);
        assert_eq!(n2, TElem::torus([1, 0, 0, 0]));
        let g4 = group("SL2", 4);
        let n = g4.lifts[0];
        assert_eq!(g4.mul(&n, &n), TElem::ID);
    }

    #[test]
    fn affine_lift_projects_and_squares_into_t_a() {
        for (label, q) in [("SL2", 3), ("SL3", 5), ("B2", 3), ("GL2", 5), ("G2", 3)] {
            let g = group(label, q);
            for a in 0..g.lifts.len() {
                let n = g.lifts[a];
                assert_eq!(n.proj(), g.sys.simples[a].refl, "{label}");
                let sq = g.mul(&n, &n);
                assert_eq!(sq, TElem::torus(g.t_minus_one(a)), "{label}");
            }
        }
    }

    #[test]
    fn inverse_and_associativity() {
        let g = group("B2", 5);
        let w = g.rd().weyl.len() as u16;
        let sample: Vec<TElem> = (0..w)
            .map(|u| TElem {
                t: [u % 4, (u * 3) % 4, 0, 0],
                u,
                lam: [i32::from(u) % 3 - 1, 1 - i32::from(u) % 2, 0, 0],
            })
            .collect();
        for a in &sample {
            assert_eq!(g.mul(a, &g.inv(a)), TElem::ID);
            for b in &sample {
                for c in sample.iter().step_by(3) {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn characters_on_t_a() {
        let g = group("GL2", 5);
        assert_eq!(g.characters().len(), 16);
        for xi in g.characters() {
            let expect = (i32::from(xi[0]) - i32::from(xi[1])).rem_euclid(4) == 0;
            assert_eq!(g.restrict_trivial(&xi, 0), expect);
        }
    }
}
