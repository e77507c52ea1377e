//! Integer Laurent polynomials in `v`, printed in `q = v^2` when possible.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c * v^e`
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut l = Laurent {
            low: e,
            coeffs: vec![c],
        };
        l.normalize();
        l
    }

    /// `c * q^k`
    pub fn q_pow(c: i64, k: i32) -> Self {
        Self::monomial(c, 2 * k)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(exponent of v, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i32).max(other.low + other.coeffs.len() as i32);
        let mut coeffs = vec![0i64; (high - low) as usize];
        for (e, c) in self.terms().chain(other.terms()) {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.checked_add(c).expect("Laurent coefficient overflow");
        }
        let mut l = Laurent { low, coeffs };
        l.normalize();
        l
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).expect("Laurent coefficient overflow");
                coeffs[i + j] = coeffs[i + j].checked_add(prod).expect("Laurent coefficient overflow");
            }
        }
        let mut l = Laurent {
            low: self.low + other.low,
            coeffs,
        };
        l.normalize();
        l
    }

    pub fn scale(&self, c: i64) -> Laurent {
        let mut l = Laurent {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| x.checked_mul(c).expect("Laurent coefficient overflow"))
                .collect(),
        };
        l.normalize();
        l
    }

    /// Multiply by `v^e`.
    pub fn shift(&self, e: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// True when the element lies in `Z[q]`.
    pub fn is_q_polynomial(&self) -> bool {
        self.terms().all(|(e, _)| e >= 0 && e % 2 == 0)
    }

    /// True when every exponent of `v` is even.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Value at a concrete integer `q` (requires even exponents and `q^e` integral).
    pub fn eval_q(&self, q: i64) -> Option<i128> {
        let mut acc: i128 = 0;
        for (e, c) in self.terms() {
            if e < 0 || e % 2 != 0 {
                return None;
            }
            acc += i128::from(c) * i128::from(q).pow((e / 2) as u32);
        }
        Some(acc)
    }

    pub fn parse(s: &str) -> Result<Laurent> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(Laurent::zero());
        }
        let bad = || Error::Parse(format!("bad Laurent polynomial {s:?}"));
        let mut out = Laurent::zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            // a '-' right after '^' belongs to the exponent
            let mut end = end;
            while end < body.len() && body.as_bytes()[end - 1] == b'^' {
                end = body[end + 1..]
                    .find(['+', '-'])
                    .map(|i| i + end + 1)
                    .unwrap_or(body.len());
            }
            let term = &body[..end];
            rest = &body[end..];
            let (coef_str, var) = match term.find(['q', 'v']) {
                Some(i) => (&term[..i], Some(&term[i..])),
                None => (term, None),
            };
            let coef_str = coef_str.trim_end_matches('*');
            let c: i64 = if coef_str.is_empty() {
                1
            } else {
                coef_str.parse().map_err(|_| bad())?
            };
            let e = match var {
                None => 0,
                Some(v) => {
                    let mult = if v.starts_with('q') { 2 } else { 1 };
                    let k: i32 = match v[1..].strip_prefix('^') {
                        Some(k) => k.parse().map_err(|_| bad())?,
                        None if v.len() == 1 => 1,
                        None => return Err(bad()),
                    };
                    mult * k
                }
            };
            out = out.add(&Laurent::monomial(sign * c, e));
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let even = self.is_even();
        let mut first = true;
        for (e, c) in self.terms() {
            let (var, k) = if even { ("q", e / 2) } else { ("v", e) };
            let mag = c.abs();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_roundtrip() {
        let l = Laurent::q_pow(-1, 0).add(&Laurent::q_pow(2, 1)).add(&Laurent::q_pow(-1, 2));
        assert_eq!(l.to_string(), "-1 + 2*q - q^2");
        assert_eq!(Laurent::parse("-1 + 2*q - q^2").unwrap(), l);
        let odd = Laurent::monomial(3, -3).add(&Laurent::monomial(1, 1));
        assert_eq!(Laurent::parse(&odd.to_string()).unwrap(), odd);
        let neg = Laurent::q_pow(1, -1);
        assert_eq!(neg.to_string(), "q^-1");
        assert_eq!(Laurent::parse("q^-1").unwrap(), neg);
    }

    #[test]
    fn ring_ops() {
        let a = Laurent::parse("1 + q").unwrap();
        let b = Laurent::parse("1 - q").unwrap();
        assert_eq!(a.mul(&b), Laurent::parse("1 - q^2").unwrap());
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.eval_q(3), Some(4));
        assert!(Laurent::q_pow(1, -1).eval_q(3).is_none());
    }
}
