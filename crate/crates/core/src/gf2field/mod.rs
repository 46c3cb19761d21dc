//! Binary finite fields GF(2^m) for 1 <= m <= 64.
//!
//! Elements are bit-packed residues modulo an explicit irreducible binary
//! modulus (bit `i` is the coefficient of `x^i`). Multiplication is a
//! carry-less product followed by reduction; fields of degree at most 16
//! additionally carry exp/log tables over a primitive element.

mod binpoly;
mod tower;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

pub use binpoly::{format_binary_poly, parse_binary_poly};
pub use tower::{make_tower, Tower};

/// Largest supported extension degree over GF(2).
pub const MAX_DEGREE: u32 = 64;

/// Fields up to this degree get exp/log tables.
const TABLE_DEGREE: u32 = 16;

/// An element of some GF(2^m); the owning [`FieldCtx`] is supplied to every
/// arithmetic call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        FieldElem(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

struct Tables {
    /// exp[i] = g^i for 0 <= i < 2 * order.
    exp: Vec<u64>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
}

/// GF(2^m) defined by an explicit monic irreducible binary modulus.
pub struct FieldCtx {
    degree: u32,
    /// Full modulus including the x^m bit.
    modulus: u128,
    /// Multiplicative group order 2^m - 1.
    order: u64,
    primitive: FieldElem,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("degree", &self.degree)
            .field("modulus", &format_binary_poly(self.modulus))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// GF(2^m) with the smallest irreducible modulus of degree `m`, where
/// moduli are ordered by their integer encoding.
pub fn make_field(m: u32) -> Result<Arc<FieldCtx>> {
    FieldCtx::smallest(m).map(Arc::new)
}

impl FieldCtx {
    pub fn smallest(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        let top = 1u128 << m;
        // An irreducible of degree >= 2 has constant term 1; degree 1 admits x itself.
        let (start, step) = if m == 1 { (0, 1) } else { (1, 2) };
        let mut low = start;
        while low < top {
            let candidate = top | low;
            if binpoly::is_irreducible(candidate) {
                return Self::build(candidate);
            }
            low += step;
        }
        Err(Error::Internal(format!("no irreducible binary polynomial of degree {m}")))
    }

    /// Field defined by a caller-supplied modulus (bit `i` = coefficient of x^i).
    pub fn with_modulus(modulus: u128) -> Result<Self> {
        let degree = binpoly::degree(modulus).ok_or_else(|| Error::ReducibleModulus("0".into()))?;
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        if !binpoly::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(format_binary_poly(modulus)));
        }
        Self::build(modulus)
    }

    fn build(modulus: u128) -> Result<Self> {
        let degree = binpoly::degree(modulus).expect("nonzero modulus");
        let order = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
        let mut ctx = FieldCtx {
            degree,
            modulus,
            order,
            primitive: FieldElem::ONE,
            tables: None,
        };
        ctx.primitive = ctx.find_primitive();
        if degree <= TABLE_DEGREE {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn find_primitive(&self) -> FieldElem {
        let primes: Vec<u64> = arith::factorize(self.order).into_iter().map(|(p, _)| p).collect();
        let mut g = 1u64;
        loop {
            let cand = FieldElem(g);
            if primes
                .iter()
                .all(|&p| self.pow_slow(cand, self.order / p) != FieldElem::ONE)
            {
                return cand;
            }
            g += 1;
        }
    }

    fn build_tables(&self) -> Tables {
        let order = self.order as usize;
        let mut exp = vec![0u64; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut acc = FieldElem::ONE;
        for i in 0..order {
            exp[i] = acc.0;
            exp[i + order] = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(acc, self.primitive);
        }
        Tables { exp, log }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus bits including the leading x^m term.
    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> u128 {
        1u128 << self.degree
    }

    /// Multiplicative group order 2^m - 1.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Smallest primitive element (by integer encoding); base of [`FieldCtx::log`].
    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    /// The residue class of `x`.
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.reduce(0b10))
    }

    /// Iterates every element in increasing integer encoding. Only sensible
    /// for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        let size = self.size();
        (0..size).map(|b| FieldElem(b as u64))
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem> {
        if self.degree < 64 && bits >> self.degree != 0 {
            return Err(Error::Precondition(format!(
                "{bits:#x} is not a residue of degree < {}",
                self.degree
            )));
        }
        Ok(FieldElem(bits))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElem::ZERO
                } else {
                    let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                    FieldElem(t.exp[i])
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.reduce(binpoly::clmul(a.0, b.0)))
    }

    #[inline]
    fn reduce(&self, mut p: u128) -> u64 {
        let m = self.degree;
        while p >> m != 0 {
            let top = 127 - p.leading_zeros();
            p ^= self.modulus << (top - m);
        }
        p as u64
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldElem(t.exp[((self.order - l) % self.order) as usize])
            }
            None => self.pow_slow(a, self.order - 1),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128;
                let idx = (l * (e % self.order) as u128) % self.order as u128;
                FieldElem(t.exp[idx as usize])
            }
            None => self.pow_slow(a, e),
        }
    }

    fn pow_slow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for an arbitrary-precision exponent, reduced modulo 2^m - 1 for
    /// nonzero bases.
    pub fn pow_big(&self, a: FieldElem, e: &BigUint) -> FieldElem {
        if e.is_zero() {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let reduced = (e % BigUint::from(self.order)).to_u64().expect("reduced below 2^64");
        // a^(k*order) = 1, so a zero residue of a positive exponent still yields 1.
        self.pow(a, reduced)
    }

    /// `a^(2^k)`, the k-fold Frobenius image.
    pub fn frobenius(&self, a: FieldElem, k: u64) -> FieldElem {
        let k = k % self.degree as u64;
        if a.is_zero() || k == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            let idx = (l << k) % self.order as u128;
            return FieldElem(t.exp[idx as usize]);
        }
        let mut x = a;
        for _ in 0..k {
            x = self.mul_slow(x, x);
        }
        x
    }

    /// Absolute trace to GF(2): `a + a^2 + ... + a^(2^(m-1))`.
    pub fn trace(&self, a: FieldElem) -> u8 {
        let mut acc = FieldElem::ZERO;
        let mut x = a;
        for _ in 0..self.degree {
            acc = self.add(acc, x);
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1, "trace left GF(2)");
        acc.0 as u8
    }

    /// The set {a^(2^k) + a : a in GF(2^m)}, sorted. For gcd(k, m) = 1 it is
    /// the trace-zero hyperplane, the same set as for k = 1.
    pub fn frobenius_difference_image(&self, k: u64) -> Vec<FieldElem> {
        let mut out: Vec<FieldElem> = self
            .elements()
            .map(|a| self.add(self.frobenius(a, k), a))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Discrete log base [`FieldCtx::primitive`]; available for tabled fields only.
    pub fn log(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.0 as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut ord = self.order;
        for (p, _) in arith::factorize(self.order) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == FieldElem::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Modulus as a polynomial string, e.g. `x^3+x+1`.
    pub fn modulus_string(&self) -> String {
        format_binary_poly(self.modulus)
    }

    /// Modulus as an LSB-first coefficient bit-string, e.g. `1101`.
    pub fn modulus_bits(&self) -> String {
        (0..=self.degree)
            .map(|i| if (self.modulus >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}
