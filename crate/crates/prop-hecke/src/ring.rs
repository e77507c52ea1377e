//! Coefficient rings: generic Laurent polynomials in `v` (`q = v^2`) and a
//! finite field of characteristic `p` where `q = 0`.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::field::FiniteField;
use crate::laurent::Laurent;

pub trait Ring: Clone + Send + Sync + Debug {
    type E: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn from_int(&self, n: i64) -> Self::E;
    /// The image of `q`.
    fn q(&self) -> Self::E;
    /// `q^k` for `k >= 0`, and for `k < 0` when `q` is invertible.
    fn q_pow(&self, k: i32) -> Option<Self::E>;
    fn format(&self, a: &Self::E) -> String;
    fn mode_name(&self) -> &'static str;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

/// `Z[v, v^-1]`.
#[derive(Clone, Debug, Default)]
pub struct Generic;

impl Ring for Generic {
    type E = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::zero()
    }
    fn one(&self) -> Laurent {
        Laurent::one()
    }
    fn is_zero(&self, a: &Laurent) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        a.add(b)
    }
    fn neg(&self, a: &Laurent) -> Laurent {
        a.neg()
    }
    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        a.mul(b)
    }
    fn from_int(&self, n: i64) -> Laurent {
        Laurent::constant(n)
    }
    fn q(&self) -> Laurent {
        Laurent::q_pow(1, 1)
    }
    fn q_pow(&self, k: i32) -> Option<Laurent> {
        Some(Laurent::q_pow(1, k))
    }
    fn format(&self, a: &Laurent) -> String {
        a.to_string()
    }
    fn mode_name(&self) -> &'static str {
        "generic"
    }
}

/// A finite field `k` of characteristic `p | q`, with a fixed element of
/// order `q - 1` used to evaluate torus characters.
#[derive(Clone, Debug)]
pub struct CharP {
    pub field: Arc<FiniteField>,
    pub q: u32,
    unit_root: u32,
}

impl CharP {
    /// `field` must contain `F_q`.
    pub fn new(field: Arc<FiniteField>, q: u32) -> Self {
        let big = field.size - 1;
        assert!(big % (q - 1) == 0, "field does not contain F_q");
        let unit_root = field.gen_pow(i64::from(big / (q - 1)));
        CharP { field, q, unit_root }
    }

    pub fn for_q(q: u32) -> Option<Self> {
        FiniteField::for_q(q).map(|f| CharP::new(Arc::new(f), q))
    }

    /// `h^k` for the fixed generator `h` of the `(q-1)`-th roots of unity.
    pub fn unit_root_pow(&self, k: i64) -> u32 {
        let o = i64::from(self.q - 1);
        self.field.pow(self.unit_root, k.rem_euclid(o) as u64)
    }
}

impl Ring for CharP {
    type E = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.field.add(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.field.neg(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.field.mul(*a, *b)
    }
    fn from_int(&self, n: i64) -> u32 {
        self.field.from_int(n)
    }
    fn q(&self) -> u32 {
        0
    }
    fn q_pow(&self, k: i32) -> Option<u32> {
        match k {
            0 => Some(1),
            k if k > 0 => Some(0),
            _ => None,
        }
    }
    fn format(&self, a: &u32) -> String {
        self.field.format(*a)
    }
    fn mode_name(&self) -> &'static str {
        "charp"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charp_unit_root_has_order_q_minus_1() {
        let k = CharP::for_q(5).unwrap();
        let h = k.unit_root_pow(1);
        assert_eq!(k.field.pow(h, 4), 1);
        assert_ne!(k.field.pow(h, 2), 1);
        assert_eq!(k.q(), 0);
    }

    #[test]
    fn unit_root_in_extension() {
        let f = Arc::new(FiniteField::new(3, 2));
        let k = CharP::new(f, 3);
        let h = k.unit_root_pow(1);
        assert_eq!(k.field.mul(h, h), 1);
        assert_ne!(h, 1);
    }
}
