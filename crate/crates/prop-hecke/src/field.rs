//! Finite fields `F_{p^n}` with log/antilog tables.
//!
//! Elements are `u32` codes: the base-`p` digits of the code are the
//! coefficients of the polynomial representative, so `0..p` is the prime
//! field. The chosen modulus makes the class of `x` primitive.

use std::fmt;

#[derive(Clone)]
pub struct FiniteField {
    pub p: u32,
    pub degree: u32,
    pub size: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.size)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Splits `q = p^s`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let mut s = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    (r == 1).then_some((p, s))
}

fn digits(mut x: u32, p: u32, n: usize) -> Vec<u32> {
    let mut d = vec![0; n];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply by `x` modulo the monic polynomial with lower coefficients `modulus`.
fn times_x(d: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = d.len();
    let top = d[n - 1];
    let mut out = vec![0; n];
    for i in (1..n).rev() {
        out[i] = d[i - 1];
    }
    for i in 0..n {
        out[i] = (out[i] + (p - top) * modulus[i] % p) % p;
    }
    out
}

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Self {
        assert!(is_prime(p) && degree >= 1);
        let n = degree as usize;
        let size = p.pow(degree);
        let order = size - 1;
        // search monic moduli until x has multiplicative order size - 1
        let mut found = None;
        for code in 0..size {
            let modulus = digits(code, p, n);
            if modulus[0] == 0 {
                continue;
            }
            let mut cur = digits(1, p, n);
            let mut exp = Vec::with_capacity(order as usize);
            let mut ok = true;
            for k in 0..order {
                let c = undigits(&cur, p);
                if k > 0 && c == 1 {
                    ok = false;
                    break;
                }
                exp.push(c);
                cur = if n == 1 {
                    // in degree one the class of x is the root -modulus[0]
                    vec![cur[0] * ((p - modulus[0]) % p) % p]
                } else {
                    times_x(&cur, &modulus, p)
                };
            }
            if ok && undigits(&cur, p) == 1 {
                found = Some((modulus, exp));
                break;
            }
        }
        let (modulus, exp) = found.expect("primitive polynomial exists");
        let mut log = vec![0u32; size as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let mut add = vec![0u32; (size * size) as usize];
        let mut neg = vec![0u32; size as usize];
        for a in 0..size {
            let da = digits(a, p, n);
            let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = undigits(&dn, p);
            for b in 0..size {
                let db = digits(b, p, n);
                let ds: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * size + b) as usize] = undigits(&ds, p);
            }
        }
        FiniteField {
            p,
            degree,
            size,
            modulus,
            add,
            neg,
            exp,
            log,
        }
    }

    pub fn for_q(q: u32) -> Option<Self> {
        prime_power(q).map(|(p, s)| Self::new(p, s))
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.size - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let o = self.size - 1;
        Some(self.exp[((o - self.log[a as usize]) % o) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let o = u64::from(self.size - 1);
        let k = (u64::from(self.log[a as usize]) * (e % o)) % o;
        self.exp[k as usize]
    }

    /// `g^k` for the fixed primitive element `g`.
    pub fn gen_pow(&self, k: i64) -> u32 {
        let o = i64::from(self.size - 1);
        self.exp[k.rem_euclid(o) as usize]
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    /// All `x` with `x^d = c`.
    pub fn roots(&self, d: u64, c: u32) -> Vec<u32> {
        (0..self.size).filter(|&x| self.pow(x, d) == c).collect()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn format(&self, a: u32) -> String {
        if self.degree == 1 {
            a.to_string()
        } else if a == 0 {
            "0".to_string()
        } else {
            format!("g^{}", self.log[a as usize])
        }
    }

    pub fn parse(&self, s: &str) -> Option<u32> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("g^") {
            return k.parse::<i64>().ok().map(|k| self.gen_pow(k));
        }
        s.parse::<i64>().ok().map(|n| self.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, n) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)] {
            let f = FiniteField::new(p, n);
            for a in 0..f.size {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..f.size {
                    for c in [0, 1, f.size - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // characteristic p
            let mut s = 0;
            for _ in 0..p {
                s = f.add(s, 1);
            }
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn generator_is_primitive() {
        let f = FiniteField::new(2, 2);
        let mut seen: Vec<u32> = (0..3).map(|k| f.gen_pow(k)).collect();
        seen.sort();
        assert_eq!(seen, vec![1, 2, 3]);
    }
}
