//! Dense matrices over a finite field.

use crate::field::FiniteField;

pub type Mat = Vec<Vec<u32>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn scalar(n: usize, c: u32) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect()).collect()
}

pub fn mul(f: &FiniteField, a: &Mat, b: &Mat) -> Mat {
    let (r, inner) = (a.len(), b.len());
    let c = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zeros(r, c);
    for i in 0..r {
        for k in 0..inner {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..c {
                out[i][j] = f.add(out[i][j], f.mul(x, b[k][j]));
            }
        }
    }
    out
}

pub fn add(f: &FiniteField, a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| f.add(u, v)).collect())
        .collect()
}

pub fn sub(f: &FiniteField, a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| f.sub(u, v)).collect())
        .collect()
}

pub fn scale(f: &FiniteField, a: &Mat, c: u32) -> Mat {
    a.iter().map(|row| row.iter().map(|&x| f.mul(x, c)).collect()).collect()
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|row| row.iter().all(|&x| x == 0))
}

pub fn pow(f: &FiniteField, a: &Mat, k: u64) -> Mat {
    let mut out = identity(a.len());
    for _ in 0..k {
        out = mul(f, &out, a);
    }
    out
}

/// Row echelon form in place; returns the pivot columns.
pub fn echelon(f: &FiniteField, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let v = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(f: &FiniteField, m: &Mat) -> usize {
    let mut c = m.clone();
    echelon(f, &mut c).len()
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns.
pub fn kernel(f: &FiniteField, a: &Mat, cols: usize) -> Vec<Vec<u32>> {
    let mut m = a.clone();
    let pivots = echelon(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; cols];
            x[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(m[r][fc]);
            }
            x
        })
        .collect()
}

pub fn inverse(f: &FiniteField, a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let piv = echelon(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Left null space `{v : v M = 0}`.
pub fn left_kernel(f: &FiniteField, m: &Mat) -> Vec<Vec<u32>> {
    let n = m.len();
    let t: Mat = if n == 0 {
        Vec::new()
    } else {
        (0..m[0].len()).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
    };
    kernel(f, &t, n)
}

/// Intersection of left null spaces of several matrices.
pub fn common_left_kernel(f: &FiniteField, ms: &[Mat], n: usize) -> Vec<Vec<u32>> {
    // v M_k = 0 for all k: stack the transposed systems
    let mut rows: Mat = Vec::new();
    for m in ms {
        for j in 0..m.first().map_or(0, |r| r.len()) {
            rows.push((0..n).map(|i| m[i][j]).collect());
        }
    }
    kernel(f, &rows, n)
}

/// Linear span elements of a basis, enumerated exhaustively.
pub fn span_elements(f: &FiniteField, basis: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; len]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * f.size as usize);
        for x in &out {
            for c in 0..f.size {
                next.push(x.iter().zip(b).map(|(&u, &v)| f.add(u, f.mul(c, v))).collect());
            }
        }
        out = next;
    }
    out
}

pub fn from_flat(v: &[u32], n: usize) -> Mat {
    v.chunks(n).map(|c| c.to_vec()).collect()
}

pub fn flat(m: &Mat) -> Vec<u32> {
    m.iter().flatten().copied().collect()
}

/// Basis of `{X (n×m) : A_k X = X B_k for all k}`.
pub fn intertwiners(f: &FiniteField, a: &[Mat], b: &[Mat], n: usize, m: usize) -> Vec<Mat> {
    let unknowns = n * m;
    let mut eqs: Mat = Vec::new();
    for (ak, bk) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![0u32; unknowns];
                // (A X)_{ij} = sum_l A_il X_lj
                for l in 0..n {
                    let idx = l * m + j;
                    row[idx] = f.add(row[idx], ak[i][l]);
                }
                // (X B)_{ij} = sum_l X_il B_lj
                for l in 0..m {
                    let idx = i * m + l;
                    row[idx] = f.sub(row[idx], bk[l][j]);
                }
                eqs.push(row);
            }
        }
    }
    kernel(f, &eqs, unknowns).into_iter().map(|v| from_flat(&v, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_kernel() {
        let f = FiniteField::new(5, 1);
        let a = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv), identity(2));
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert!(inverse(&f, &sing).is_none());
        let k = kernel(&f, &sing, 2);
        assert_eq!(k.len(), 1);
        let col: Mat = k[0].iter().map(|&x| vec![x]).collect();
        assert!(is_zero(&mul(&f, &sing, &col)));
    }

    #[test]
    fn commutant_of_scalar_is_everything() {
        let f = FiniteField::new(3, 1);
        let s = scalar(2, 2);
        assert_eq!(intertwiners(&f, &[s.clone()], &[s], 2, 2).len(), 4);
        let d = vec![vec![1, 0], vec![0, 2]];
        assert_eq!(intertwiners(&f, &[d.clone()], &[d], 2, 2).len(), 2);
    }
}
