//! Based root data for the supported group catalog, finite Weyl groups,
//! standard facets and Weyl chambers.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{config, precondition, Result};
use crate::field::prime_power;
use crate::lattice::{cone_generators, IMat};

pub const MAX_RANK: usize = 4;

/// Coweight coordinates; slots past `RootDatum::dim` stay zero.
pub type Cw = [i32; MAX_RANK];

pub fn cw_add(a: &Cw, b: &Cw) -> Cw {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn cw_sub(a: &Cw, b: &Cw) -> Cw {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn cw_neg(a: &Cw) -> Cw {
    std::array::from_fn(|i| -a[i])
}

pub fn cw_scale(a: &Cw, k: i32) -> Cw {
    std::array::from_fn(|i| a[i] * k)
}

pub fn cw_from(v: &[i64]) -> Cw {
    let mut c = [0; MAX_RANK];
    for (slot, x) in c.iter_mut().zip(v) {
        *slot = *x as i32;
    }
    c
}

type Mat = [[i32; MAX_RANK]; MAX_RANK];

fn mat_identity() -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| i32::from(i == j)))
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..MAX_RANK).map(|k| a[i][k] * b[k][j]).sum()))
}

fn mat_apply(m: &Mat, x: &Cw) -> Cw {
    std::array::from_fn(|i| (0..MAX_RANK).map(|k| m[i][k] * x[k]).sum())
}

#[derive(Clone, Debug)]
pub struct Root {
    /// Coordinates in the basis of `X^*(T)` dual to the coweight basis.
    pub vec: Cw,
    pub coroot: Cw,
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i32>,
    pub height: i32,
    pub positive: bool,
}

/// Standard facet, encoded by the bitmask of `Pi_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet(pub u32);

impl Facet {
    pub const C: Facet = Facet(0);

    pub fn x0(rank: usize) -> Facet {
        Facet((1u32 << rank) - 1)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn all(rank: usize) -> Vec<Facet> {
        (0..1u32 << rank).map(Facet).collect()
    }

    pub fn simples(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_subset(&self, other: &Facet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Parses a comma-separated list of 1-based simple root indices.
    pub fn parse(s: &str, rank: usize) -> Result<Facet> {
        let mut mask = 0u32;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad facet index {part:?}")))?;
            if i == 0 || i > rank {
                return config(format!("facet index {i} out of range 1..={rank}"));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Facet(mask))
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = (0..32).filter(|&i| self.contains(i)).map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "plus" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(crate::Error::Parse(format!("bad sign {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    /// `lambda` is below `mu`.
    Less,
    Greater,
    Incomparable,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    mats: Vec<Mat>,
    words: Vec<Vec<u8>>,
    mult: Vec<u16>,
    inv: Vec<u16>,
    /// `root_perm[w][a]` is the index of `w(alpha_a)`.
    root_perm: Vec<Vec<u16>>,
    simple_elems: Vec<u16>,
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.len() + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn length(&self, a: u16) -> usize {
        self.words[a as usize].len()
    }

    pub fn word(&self, a: u16) -> &[u8] {
        &self.words[a as usize]
    }

    pub fn det(&self, a: u16) -> i32 {
        if self.length(a) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn simple(&self, i: usize) -> u16 {
        self.simple_elems[i]
    }

    pub fn apply(&self, a: u16, x: &Cw) -> Cw {
        mat_apply(&self.mats[a as usize], x)
    }

    /// Action on a torus part, coordinates taken mod `m`.
    pub fn apply_mod(&self, a: u16, t: &[u16; MAX_RANK], m: u16) -> [u16; MAX_RANK] {
        let m32 = i32::from(m);
        let x: Cw = std::array::from_fn(|i| i32::from(t[i]));
        let y = self.apply(a, &x);
        std::array::from_fn(|i| y[i].rem_euclid(m32) as u16)
    }

    pub fn root_image(&self, a: u16, root: usize) -> usize {
        self.root_perm[a as usize][root] as usize
    }

    pub fn from_word(&self, word: &[u8]) -> u16 {
        word.iter().fold(0u16, |w, &i| self.mul(w, self.simple(i as usize)))
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.len() as u16
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lattice {
    SimplyConnected,
    Adjoint,
    General,
}

#[derive(Clone, Debug)]
struct Block {
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    coroots: Vec<Vec<i32>>,
    dim: usize,
    center: Option<Vec<i32>>,
}

fn cartan_of(kind: char, r: usize) -> Vec<Vec<i32>> {
    let mut a = vec![vec![0; r]; r];
    for i in 0..r {
        a[i][i] = 2;
        if i + 1 < r {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match kind {
        'A' => {}
        'B' => {
            a[r - 1][r - 2] = -2;
        }
        'C' => {
            a[r - 2][r - 1] = -2;
        }
        'G' => {
            a[0][1] = -3;
        }
        _ => unreachable!(),
    }
    a
}

fn block(kind: char, r: usize, lattice: Lattice) -> Block {
    if lattice == Lattice::General {
        // GL_{r+1}
        let n = r + 1;
        let mut roots = Vec::new();
        for i in 0..r {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v);
        }
        return Block {
            cartan: cartan_of('A', r),
            coroots: roots.clone(),
            roots,
            dim: n,
            center: Some(vec![1; n]),
        };
    }
    let a = cartan_of(kind, r);
    let (roots, coroots) = match lattice {
        Lattice::SimplyConnected => (
            (0..r).map(|j| (0..r).map(|i| a[i][j]).collect()).collect(),
            (0..r).map(|i| (0..r).map(|k| i32::from(i == k)).collect()).collect(),
        ),
        _ => (
            (0..r).map(|j| (0..r).map(|k| i32::from(j == k)).collect()).collect(),
            a.clone(),
        ),
    };
    Block {
        cartan: a,
        roots,
        coroots,
        dim: r,
        center: None,
    }
}

fn parse_component(s: &str, rank: Option<usize>) -> Result<(char, usize, Lattice)> {
    let s = s.trim();
    let digits_at = s.find(|c: char| c.is_ascii_digit());
    let (head, num, tail) = match digits_at {
        Some(i) => {
            let end = s[i..].find(|c: char| !c.is_ascii_digit()).map_or(s.len(), |e| i + e);
            (&s[..i], s[i..end].parse::<usize>().ok(), &s[end..])
        }
        None => (s, None, ""),
    };
    let head_up = head.to_ascii_uppercase();
    let adj = tail.eq_ignore_ascii_case("ad");
    if !tail.is_empty() && !adj {
        return config(format!("unsupported group label {s:?}"));
    }
    // `num` is the matrix size for SL/GL/PGL/SO/Sp and the rank for A/B/C/G
    let pick = |n: Option<usize>, from_rank: fn(usize) -> usize| -> Result<usize> {
        match (n, rank) {
            (Some(n), _) => Ok(n),
            (None, Some(r)) => Ok(from_rank(r)),
            (None, None) => config(format!("group label {s:?} needs a rank")),
        }
    };
    let out = match head_up.as_str() {
        "SL" => ('A', pick(num, |r| r + 1)? - 1, Lattice::SimplyConnected),
        "PGL" => ('A', pick(num, |r| r + 1)? - 1, Lattice::Adjoint),
        "GL" => ('A', pick(num, |r| r + 1)? - 1, Lattice::General),
        "A" => ('A', pick(num, |r| r)?, Lattice::SimplyConnected),
        "B" => ('B', pick(num, |r| r)?, if adj { Lattice::Adjoint } else { Lattice::SimplyConnected }),
        "C" => ('C', pick(num, |r| r)?, if adj { Lattice::Adjoint } else { Lattice::SimplyConnected }),
        "SP" => {
            let n = pick(num, |r| 2 * r)?;
            if n % 2 != 0 {
                return config("Sp needs an even size");
            }
            ('C', n / 2, Lattice::SimplyConnected)
        }
        "SO" => {
            let n = pick(num, |r| 2 * r + 1)?;
            if n % 2 != 1 {
                return config("only odd SO is supported");
            }
            ('B', n / 2, Lattice::Adjoint)
        }
        "G" => ('G', pick(num, |_| 2)?, Lattice::SimplyConnected),
        _ => return config(format!("unsupported group label {s:?}")),
    };
    let (kind, r, _) = out;
    let ok = match kind {
        'A' => (1..=3).contains(&r),
        'B' | 'C' => (2..=3).contains(&r),
        'G' => r == 2,
        _ => false,
    };
    if !ok {
        return config(format!("unsupported rank {r} for {s:?}"));
    }
    if let (Some(n), Some(want)) = (num, rank) {
        if r != want {
            return config(format!("label {s:?} has rank {r}, but rank {want} was requested (from {n})"));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: String,
    /// Rank of `X_*(T)`.
    pub dim: usize,
    /// Semisimple rank `|Pi|`.
    pub rank: usize,
    pub q: u32,
    pub p: u32,
    pub cartan: Vec<Vec<i32>>,
    /// Positive roots first (height, then lexicographic), then their negatives in the same order.
    pub roots: Vec<Root>,
    pub npos: usize,
    root_index: HashMap<Cw, usize>,
    /// Simple root indices per irreducible component.
    pub components: Vec<Vec<usize>>,
    /// Highest root per component.
    pub highest: Vec<usize>,
    pub weyl: WeylGroup,
    /// The central cocharacter `(1, ..., 1)` of a `GL_n` factor, if any.
    pub center_cochar: Option<Cw>,
}

impl RootDatum {
    /// Builds a datum from a label such as `SL2`, `GL3`, `PGL2`, `A2`, `B2`,
    /// `Sp4`, `SO5`, `G2` or a product `SL2xSL2`.
    pub fn build(label: &str, rank: Option<usize>, q: u32) -> Result<RootDatum> {
        let (p, _) = match prime_power(q) {
            Some(x) => x,
            None => return config(format!("q = {q} is not a prime power")),
        };
        if q < 2 {
            return config("q must be at least 2");
        }
        let parts: Vec<&str> = label.split(['x', 'X', '*']).filter(|s| !s.is_empty()).collect();
        if parts.is_empty() {
            return config("empty group label");
        }
        let single_rank = if parts.len() == 1 { rank } else { None };
        let mut blocks = Vec::new();
        for part in &parts {
            let (kind, r, lat) = parse_component(part, single_rank)?;
            blocks.push(block(kind, r, lat));
        }
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let n: usize = blocks.iter().map(|b| b.cartan.len()).sum();
        if dim > MAX_RANK {
            return config(format!("rank of X_*(T) is {dim}, the maximum is {MAX_RANK}"));
        }
        if parts.len() > 1 {
            if let Some(r) = rank {
                if r != n {
                    return config(format!("product {label:?} has semisimple rank {n}, not {r}"));
                }
            }
        }
        let mut cartan = vec![vec![0; n]; n];
        let mut simple_roots: Vec<Cw> = Vec::new();
        let mut simple_coroots: Vec<Cw> = Vec::new();
        let mut center = None;
        let (mut ro, mut co) = (0, 0);
        for b in &blocks {
            let r = b.cartan.len();
            for i in 0..r {
                for j in 0..r {
                    cartan[ro + i][ro + j] = b.cartan[i][j];
                }
                let mut v = [0; MAX_RANK];
                let mut c = [0; MAX_RANK];
                for k in 0..b.dim {
                    v[co + k] = b.roots[i][k];
                    c[co + k] = b.coroots[i][k];
                }
                simple_roots.push(v);
                simple_coroots.push(c);
            }
            if let Some(z) = &b.center {
                if center.is_none() {
                    let mut c = [0; MAX_RANK];
                    for k in 0..b.dim {
                        c[co + k] = z[k];
                    }
                    center = Some(c);
                }
            }
            ro += r;
            co += b.dim;
        }
        for i in 0..n {
            for j in 0..n {
                let pair: i32 = (0..MAX_RANK).map(|k| simple_coroots[i][k] * simple_roots[j][k]).sum();
                debug_assert_eq!(pair, cartan[i][j]);
            }
        }
        let canonical = parts.join("x");
        Ok(Self::from_simple(canonical, dim, q, p, cartan, simple_roots, simple_coroots, center))
    }

    #[allow(clippy::too_many_arguments)]
    fn from_simple(
        label: String,
        dim: usize,
        q: u32,
        p: u32,
        cartan: Vec<Vec<i32>>,
        simple_roots: Vec<Cw>,
        simple_coroots: Vec<Cw>,
        center_cochar: Option<Cw>,
    ) -> RootDatum {
        let n = cartan.len();
        // reflection closure on (root coefficients, coroot coefficients)
        let mut seen: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
        let mut queue = VecDeque::new();
        for j in 0..n {
            let e: Vec<i32> = (0..n).map(|k| i32::from(k == j)).collect();
            seen.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            let d = seen[&c].clone();
            for i in 0..n {
                let pc: i32 = (0..n).map(|j| cartan[i][j] * c[j]).sum();
                let pd: i32 = (0..n).map(|j| d[j] * cartan[j][i]).sum();
                let mut c2 = c.clone();
                c2[i] -= pc;
                let mut d2 = d.clone();
                d2[i] -= pd;
                if !seen.contains_key(&c2) {
                    seen.insert(c2.clone(), d2);
                    queue.push_back(c2);
                }
            }
        }
        let mut pos: Vec<(Vec<i32>, Vec<i32>)> = seen
            .into_iter()
            .filter(|(c, _)| c.iter().all(|&x| x >= 0))
            .collect();
        pos.sort_by_key(|(c, _)| (c.iter().sum::<i32>(), c.iter().map(|x| -x).collect::<Vec<_>>()));
        let make = |c: &[i32], d: &[i32], sign: i32| -> Root {
            let mut vec = [0; MAX_RANK];
            let mut coroot = [0; MAX_RANK];
            for j in 0..n {
                for k in 0..MAX_RANK {
                    vec[k] += sign * c[j] * simple_roots[j][k];
                    coroot[k] += sign * d[j] * simple_coroots[j][k];
                }
            }
            Root {
                vec,
                coroot,
                coeffs: c.iter().map(|x| sign * x).collect(),
                height: sign * c.iter().sum::<i32>(),
                positive: sign > 0,
            }
        };
        let mut roots: Vec<Root> = pos.iter().map(|(c, d)| make(c, d, 1)).collect();
        let npos = roots.len();
        roots.extend(pos.iter().map(|(c, d)| make(c, d, -1)));
        let root_index: HashMap<Cw, usize> = roots.iter().enumerate().map(|(i, r)| (r.vec, i)).collect();

        // irreducible components of the Dynkin diagram
        let mut comp_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp_of[s] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..n {
                    if cartan[i][j] != 0 && comp_of[j] == usize::MAX {
                        comp_of[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        let highest = components
            .iter()
            .map(|comp| {
                (0..npos)
                    .filter(|&a| roots[a].coeffs.iter().enumerate().all(|(j, &c)| c == 0 || comp.contains(&j)))
                    .max_by_key(|&a| roots[a].height)
                    .expect("component has roots")
            })
            .collect();

        // Weyl group by breadth-first search on reduced words
        let refl: Vec<Mat> = (0..n)
            .map(|i| {
                let mut m = mat_identity();
                for r in 0..MAX_RANK {
                    for c in 0..MAX_RANK {
                        m[r][c] -= simple_coroots[i][r] * simple_roots[i][c];
                    }
                }
                m
            })
            .collect();
        let mut mats = vec![mat_identity()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index: HashMap<Mat, u16> = HashMap::new();
        index.insert(mat_identity(), 0);
        let mut head = 0;
        while head < mats.len() {
            for (i, s) in refl.iter().enumerate() {
                let m = mat_mul(&mats[head], s);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(m) {
                    e.insert(mats.len() as u16);
                    let mut w = words[head].clone();
                    w.push(i as u8);
                    mats.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        let size = mats.len();
        let mut mult = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                mult[a * size + b] = index[&mat_mul(&mats[a], &mats[b])];
            }
        }
        let inv: Vec<u16> = (0..size)
            .map(|a| (0..size).find(|&b| mult[a * size + b] == 0).unwrap() as u16)
            .collect();
        let root_perm: Vec<Vec<u16>> = (0..size)
            .map(|w| {
                let mi = &mats[inv[w] as usize];
                roots
                    .iter()
                    .map(|r| {
                        let img: Cw = std::array::from_fn(|c| (0..MAX_RANK).map(|k| r.vec[k] * mi[k][c]).sum());
                        root_index[&img] as u16
                    })
                    .collect()
            })
            .collect();
        let simple_elems = (0..n).map(|i| index[&refl[i]]).collect();
        let weyl = WeylGroup {
            mats,
            words,
            mult,
            inv,
            root_perm,
            simple_elems,
        };
        RootDatum {
            label,
            dim,
            rank: n,
            q,
            p,
            cartan,
            roots,
            npos,
            root_index,
            components,
            highest,
            weyl,
            center_cochar,
        }
    }

    pub fn pairing(&self, lam: &Cw, root: usize) -> i32 {
        let v = &self.roots[root].vec;
        (0..MAX_RANK).map(|k| lam[k] * v[k]).sum()
    }

    pub fn simple_root(&self, i: usize) -> usize {
        i
    }

    pub fn neg_root(&self, a: usize) -> usize {
        if a < self.npos {
            a + self.npos
        } else {
            a - self.npos
        }
    }

    pub fn root_of_vec(&self, v: &Cw) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// `Pi_m`: the negated highest roots, one per component.
    pub fn minimal_roots(&self) -> Vec<usize> {
        self.highest.iter().map(|&h| self.neg_root(h)).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn is_semisimple(&self) -> bool {
        self.center_cochar.is_none() && self.rank == self.dim
    }

    /// Root `a` lies in `Phi_F`.
    pub fn in_facet(&self, a: usize, f: Facet) -> bool {
        self.roots[a].coeffs.iter().enumerate().all(|(j, &c)| c == 0 || f.contains(j))
    }

    /// `lambda` lies in the Weyl chamber `C^sigma(F)`.
    pub fn weyl_chamber_test(&self, lam: &Cw, f: Facet, sigma: Sign) -> bool {
        let s = sigma.value();
        (0..self.npos).all(|a| {
            let v = s * self.pairing(lam, a);
            if self.in_facet(a, f) {
                v <= 0
            } else {
                v >= 0
            }
        })
    }

    pub fn is_dominant(&self, lam: &Cw) -> bool {
        (0..self.rank).all(|i| self.pairing(lam, i) >= 0)
    }

    /// Elements of the parabolic subgroup `W_F`.
    pub fn weyl_facet_elements(&self, f: Facet) -> Vec<u16> {
        self.weyl
            .elements()
            .filter(|&w| self.weyl.word(w).iter().all(|&i| f.contains(i as usize)))
            .collect()
    }

    /// Longest element `w_F` of `W_F`.
    pub fn longest(&self, f: Facet) -> u16 {
        self.weyl_facet_elements(f)
            .into_iter()
            .max_by_key(|&w| self.weyl.length(w))
            .unwrap()
    }

    pub fn weyl_orbit(&self, lam: &Cw) -> Vec<Cw> {
        let mut out: Vec<Cw> = self.weyl.elements().map(|w| self.weyl.apply(w, lam)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The dominant member of the orbit of `lambda`.
    pub fn dominant_rep(&self, lam: &Cw) -> Cw {
        self.weyl
            .elements()
            .map(|w| self.weyl.apply(w, lam))
            .find(|x| self.is_dominant(x))
            .expect("every orbit meets the dominant chamber")
    }

    /// Coefficients of `x` in the simple coroots, if `x` lies in their integer span.
    pub fn coroot_coords(&self, x: &Cw) -> Option<Vec<i64>> {
        let a: IMat = (0..self.dim)
            .map(|k| (0..self.rank).map(|i| i64::from(self.roots_simple_coroot(i)[k])).collect())
            .collect();
        let s = crate::lattice::smith(&a, self.dim, self.rank);
        let b: Vec<i64> = (0..self.dim).map(|k| i64::from(x[k])).collect();
        s.solve(&b)
    }

    pub fn roots_simple_coroot(&self, i: usize) -> Cw {
        self.roots[i].coroot
    }

    /// Compares two coweights in the coroot-cone order, without a dominance requirement.
    pub fn cone_compare(&self, lam: &Cw, mu: &Cw) -> Dominance {
        let d = cw_sub(mu, lam);
        if d.iter().all(|&x| x == 0) {
            return Dominance::Equal;
        }
        match self.coroot_coords(&d) {
            None => Dominance::Incomparable,
            Some(c) if c.iter().all(|&x| x >= 0) => Dominance::Less,
            Some(c) if c.iter().all(|&x| x <= 0) => Dominance::Greater,
            Some(_) => Dominance::Incomparable,
        }
    }

    /// The order on dominant coweights: `lambda <= mu` iff `mu - lambda` is a
    /// non-negative integer combination of simple coroots.
    pub fn dominance_order(&self, lam: &Cw, mu: &Cw) -> Result<Dominance> {
        if !self.is_dominant(lam) || !self.is_dominant(mu) {
            return precondition("dominance order is defined on dominant coweights");
        }
        Ok(self.cone_compare(lam, mu))
    }

    /// The same order on roots, expressed in simple-root coefficients.
    pub fn root_leq(&self, a: usize, b: usize) -> bool {
        self.roots[a]
            .coeffs
            .iter()
            .zip(&self.roots[b].coeffs)
            .all(|(x, y)| x <= y)
    }

    /// Pairing matrix rows `<., alpha_i>` for the given simple roots.
    pub fn pairing_rows(&self, simples: &[usize]) -> IMat {
        simples
            .iter()
            .map(|&i| (0..self.dim).map(|k| i64::from(self.roots[i].vec[k])).collect())
            .collect()
    }

    /// Hilbert basis lifts and lineality basis of the dominant semigroup for `simples`.
    pub fn dominant_generators(&self, simples: &[usize]) -> (Vec<Cw>, Vec<Cw>) {
        let (h, lin) = cone_generators(&self.pairing_rows(simples), self.dim);
        (h.iter().map(|v| cw_from(v)).collect(), lin.iter().map(|v| cw_from(v)).collect())
    }

    pub fn fmt_cw(&self, lam: &Cw) -> String {
        let parts: Vec<String> = lam[..self.dim].iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_cw(&self, s: &str) -> Result<Cw> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let vals: std::result::Result<Vec<i64>, _> = body
            .split([',', ' '])
            .filter(|x| !x.is_empty())
            .map(|x| x.trim().parse::<i64>())
            .collect();
        let vals = vals.map_err(|_| crate::Error::Parse(format!("bad coweight {s:?}")))?;
        if vals.len() != self.dim {
            return config(format!("coweight {s:?} needs {} coordinates", self.dim));
        }
        Ok(cw_from(&vals))
    }

    pub fn to_json(&self) -> DatumJson {
        DatumJson {
            label: self.label.clone(),
            rank: self.rank,
            dim: self.dim,
            q: self.q,
            cartan: self.cartan.clone(),
            roots: self.roots.iter().map(|r| r.vec[..self.dim].to_vec()).collect(),
            coroots: self.roots.iter().map(|r| r.coroot[..self.dim].to_vec()).collect(),
            weyl_order: self.weyl.len(),
        }
    }
}

#[derive(Serialize)]
pub struct DatumJson {
    pub label: String,
    pub rank: usize,
    pub dim: usize,
    pub q: u32,
    pub cartan: Vec<Vec<i32>>,
    pub roots: Vec<Vec<i32>>,
    pub coroots: Vec<Vec<i32>>,
    pub weyl_order: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(label: &str) -> RootDatum {
        RootDatum::build(label, None, 3).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        for (label, npos, w) in [
            ("SL2", 1, 2),
            ("GL2", 1, 2),
            ("PGL2", 1, 2),
            ("SL3", 3, 6),
            ("GL3", 3, 6),
            ("SL4", 6, 24),
            ("B2", 4, 8),
            ("C2", 4, 8),
            ("SO5", 4, 8),
            ("G2", 6, 12),
            ("B3", 9, 48),
            ("C3ad", 9, 48),
            ("SL2xSL2", 2, 4),
        ] {
            let rd = d(label);
            assert_eq!(rd.npos, npos, "{label}");
            assert_eq!(rd.weyl.len(), w, "{label}");
        }
    }

    #[test]
    fn cartan_entries_and_pairings() {
        let a2 = d("A2");
        assert_eq!(a2.pairing(&a2.roots[0].coroot, 1), -1);
        for rd in [d("G2"), d("B2"), d("GL3")] {
            for i in 0..rd.rank {
                assert_eq!(rd.pairing(&rd.roots[i].coroot, i), 2);
                for j in 0..rd.rank {
                    if i != j {
                        assert!(rd.cartan[i][j] <= 0);
                    }
                }
            }
        }
        let gl2 = d("GL2");
        assert_eq!(gl2.roots[0].coroot[..2], [1, -1]);
        assert_eq!(gl2.pairing(&[1, 0, 0, 0], 0), 1);
    }

    #[test]
    fn highest_root_dominates() {
        for label in ["SL3", "B2", "G2", "C3", "SL4"] {
            let rd = d(label);
            let h = rd.highest[0];
            for a in 0..rd.roots.len() {
                assert!(rd.root_leq(a, h), "{label}");
            }
        }
    }

    #[test]
    fn weyl_length_is_inversion_count() {
        for label in ["SL3", "B2", "G2"] {
            let rd = d(label);
            for w in rd.weyl.elements() {
                let inv = (0..rd.npos).filter(|&a| !rd.roots[rd.weyl.root_image(w, a)].positive).count();
                assert_eq!(inv, rd.weyl.length(w));
            }
        }
    }

    #[test]
    fn chambers() {
        let sl2 = d("SL2");
        let a = sl2.roots[0].coroot;
        assert!(sl2.weyl_chamber_test(&a, Facet::C, Sign::Plus));
        assert!(!sl2.weyl_chamber_test(&a, Facet::x0(1), Sign::Plus));
        assert!(sl2.weyl_chamber_test(&[0; 4], Facet::x0(1), Sign::Minus));
    }

    #[test]
    fn dominance_examples() {
        let sl2 = d("SL2");
        let a = sl2.roots[0].coroot;
        assert_eq!(sl2.dominance_order(&[0; 4], &a).unwrap(), Dominance::Less);
        assert_eq!(sl2.dominance_order(&a, &a).unwrap(), Dominance::Equal);
        assert!(sl2.dominance_order(&cw_neg(&a), &a).is_err());
        let gl2 = d("GL2");
        assert_eq!(gl2.cone_compare(&[0, 1, 0, 0], &[1, 0, 0, 0]), Dominance::Less);
        assert_eq!(gl2.cone_compare(&[0, 0, 0, 0], &[1, 0, 0, 0]), Dominance::Incomparable);
    }

    #[test]
    fn orbits() {
        let a2 = d("A2");
        let rho = cw_add(&a2.roots[0].coroot, &a2.roots[1].coroot);
        assert_eq!(a2.weyl_orbit(&rho).len(), 6);
        let gl2 = d("GL2");
        assert_eq!(gl2.weyl_orbit(&[1, 1, 0, 0]).len(), 1);
    }

    #[test]
    fn bad_labels() {
        assert!(RootDatum::build("E8", None, 3).is_err());
        assert!(RootDatum::build("SL2", None, 6).is_err());
        assert!(RootDatum::build("SL", Some(2), 3).unwrap().label == "SL");
        assert!(RootDatum::build("SL3", Some(1), 3).is_err());
    }
}
