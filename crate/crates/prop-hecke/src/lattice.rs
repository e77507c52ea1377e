//! Integer linear algebra on small lattices: Smith normal form, integral
//! solving, lattice quotients and Hilbert bases of simplicial cones.

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IMat, x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// `u * a * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i64>,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
}

pub fn smith(a: &IMat, rows: usize, cols: usize) -> Smith {
    let mut m: IMat = if rows == 0 {
        Vec::new()
    } else {
        a.clone()
    };
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);

    let add_row = |m: &mut IMat, u: &mut IMat, u_inv: &mut IMat, dst: usize, src: usize, c: i64| {
        // row_dst += c * row_src
        for j in 0..cols {
            m[dst][j] += c * m[src][j];
        }
        for j in 0..rows {
            u[dst][j] += c * u[src][j];
        }
        for r in u_inv.iter_mut() {
            r[src] -= c * r[dst];
        }
    };
    let add_col = |m: &mut IMat, v: &mut IMat, dst: usize, src: usize, c: i64| {
        for row in m.iter_mut() {
            row[dst] += c * row[src];
        }
        for row in v.iter_mut() {
            row[dst] += c * row[src];
        }
    };

    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            if pi != t {
                m.swap(pi, t);
                u.swap(pi, t);
                for r in u_inv.iter_mut() {
                    r.swap(pi, t);
                }
            }
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                let qt = m[i][t] / m[t][t];
                if qt != 0 {
                    add_row(&mut m, &mut u, &mut u_inv, i, t, -qt);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let qt = m[t][j] / m[t][t];
                if qt != 0 {
                    add_col(&mut m, &mut v, j, t, -qt);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                let piv = m[t][t];
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % piv != 0));
                match bad {
                    Some(i) => add_row(&mut m, &mut u, &mut u_inv, t, i, 1),
                    None => break,
                }
            }
        }
        if m[t][t] < 0 {
            for j in 0..cols {
                m[t][j] = -m[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
            for r in u_inv.iter_mut() {
                r[t] = -r[t];
            }
        }
        diag.push(m[t][t]);
    }
    Smith {
        rows,
        cols,
        diag,
        u,
        u_inv,
        v,
    }
}

impl Smith {
    /// Some integer solution of `a x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let ub = mat_vec(&self.u, b);
        let mut y = vec![0i64; self.cols];
        for (i, &val) in ub.iter().enumerate() {
            let d = self.diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                if val != 0 {
                    return None;
                }
            } else {
                if val % d != 0 {
                    return None;
                }
                y[i] = val / d;
            }
        }
        Some(mat_vec(&self.v, &y))
    }

    /// Basis of the integer kernel of `a`.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        (0..self.cols)
            .filter(|&j| self.diag.get(j).copied().unwrap_or(0) == 0)
            .map(|j| self.v.iter().map(|row| row[j]).collect())
            .collect()
    }
}

/// `Z^n / L` where `L` is spanned by the given generators.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    snf: Smith,
    kept: Vec<usize>,
    /// Modulus per kept coordinate; 0 means a free factor.
    pub moduli: Vec<i64>,
}

impl LatticeQuotient {
    pub fn new(n: usize, gens: &[Vec<i64>]) -> Self {
        let k = gens.len();
        let b: IMat = (0..n).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
        let snf = smith(&b, n, k);
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n {
            let d = snf.diag.get(i).copied().unwrap_or(0);
            if d != 1 {
                kept.push(i);
                moduli.push(d);
            }
        }
        LatticeQuotient { snf, kept, moduli }
    }

    pub fn class(&self, x: &[i64]) -> Vec<i64> {
        let ux = mat_vec(&self.snf.u, x);
        self.kept
            .iter()
            .zip(&self.moduli)
            .map(|(&i, &d)| if d == 0 { ux[i] } else { ux[i].rem_euclid(d) })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.kept.is_empty()
    }

    /// Lattice vector mapping to the class with a single 1 in slot `k`.
    pub fn generator_lift(&self, k: usize) -> Vec<i64> {
        let i = self.kept[k];
        self.snf.u_inv.iter().map(|row| row[i]).collect()
    }

    pub fn order(&self) -> Option<i64> {
        self.moduli
            .iter()
            .try_fold(1i64, |acc, &d| if d == 0 { None } else { Some(acc * d) })
    }
}

/// Generators of the semigroup `{x in Z^n : p x >= 0}` for an `r x n`
/// matrix `p` of full row rank: the Hilbert basis of the pointed part
/// (lifted to `Z^n`) and a basis of the lineality lattice `ker p`.
pub fn cone_generators(p: &IMat, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let r = p.len();
    let snf = smith(p, r, n);
    let lineality = snf.kernel();
    if r == 0 {
        return (Vec::new(), lineality);
    }
    let mut ray = vec![0i64; r];
    for i in 0..r {
        let mut e = vec![0i64; r];
        for c in 1..=720 {
            e[i] = c;
            if snf.solve(&e).is_some() {
                ray[i] = c;
                break;
            }
        }
        assert!(ray[i] > 0, "cone ray not found");
    }
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; r];
    loop {
        if cur.iter().any(|&c| c != 0) && snf.solve(&cur).is_some() {
            points.push(cur.clone());
        }
        let mut i = 0;
        while i < r {
            cur[i] += 1;
            if cur[i] <= ray[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    points.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for v in points {
        let reducible = basis.iter().any(|h| {
            let d: Vec<i64> = v.iter().zip(h).map(|(a, b)| a - b).collect();
            d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x != 0) && snf.solve(&d).is_some()
        });
        if !reducible {
            basis.push(v);
        }
    }
    let lifts = basis
        .iter()
        .map(|h| snf.solve(h).expect("Hilbert basis element lies in the image"))
        .collect();
    (lifts, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &IMat, b: &IMat) -> IMat {
        let inner = b.len();
        let cols = if inner == 0 { 0 } else { b[0].len() };
        a.iter()
            .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn smith_of_a2_cartan() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        let s = smith(&a, 2, 2);
        assert_eq!(s.diag, vec![1, 3]);
        let d = mul(&mul(&s.u, &a), &s.v);
        assert_eq!(d, vec![vec![1, 0], vec![0, 3]]);
        assert_eq!(mul(&s.u, &s.u_inv), identity(2));
    }

    #[test]
    fn quotient_of_gl2_by_coroots() {
        let q = LatticeQuotient::new(2, &[vec![1, -1]]);
        assert_eq!(q.moduli, vec![0]);
        assert_eq!(q.class(&[1, -1]), vec![0]);
        let g = q.generator_lift(0);
        assert_eq!(q.class(&g).len(), 1);
        assert_eq!(q.class(&g)[0].abs(), 1);
        assert_eq!(q.class(&[1, 1]).iter().map(|c| c.abs()).sum::<i64>(), 2);
    }

    #[test]
    fn hilbert_basis_sl3_dominant_cone() {
        // coroot lattice of A2, pairings with the simple roots given by the Cartan matrix
        let p = vec![vec![2, -1], vec![-1, 2]];
        let (h, lin) = cone_generators(&p, 2);
        assert!(lin.is_empty());
        let mut imgs: Vec<Vec<i64>> = h.iter().map(|x| mat_vec(&p, x)).collect();
        imgs.sort();
        assert_eq!(imgs, vec![vec![0, 3], vec![1, 1], vec![3, 0]]);
    }

    #[test]
    fn hilbert_basis_gl2() {
        let p = vec![vec![1, -1]];
        let (h, lin) = cone_generators(&p, 2);
        assert_eq!(h.len(), 1);
        assert_eq!(mat_vec(&p, &h[0]), vec![1]);
        assert_eq!(lin.len(), 1);
        assert_eq!(mat_vec(&p, &lin[0]), vec![0]);
    }
}
