//! Dense polynomials over a binary field GF(q), irreducibility, I_r
//! enumeration, polynomial order, the divisors of x^(2^r) + x and the
//! counting formulas built on the Möbius and Euler functions.

mod counting;
mod divisors;
mod irreducible;
mod params;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::gf2field::{FieldCtx, FieldElem};

pub use crate::arith::{euler_phi, mobius};
pub use counting::{count_divisor_polys_mobius, count_irreducibles, e_set, e_set_count};
pub use divisors::{divides_x_pow_2r_plus_x, divisor_polynomials, poly_order};
pub use irreducible::{enumerate_irreducibles, is_irreducible, random_irreducible, ENUMERATION_CEILING};
pub use params::Parameters;

/// A polynomial over the field of `field`, lowest-degree coefficient first,
/// without trailing zeros.
#[derive(Clone)]
pub struct PolyQ {
    field: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl PolyQ {
    pub fn new(field: &Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<FieldCtx>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<FieldCtx>) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &Arc<FieldCtx>, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &Arc<FieldCtx>) -> Self {
        Self::new(field, vec![FieldElem::ZERO, FieldElem::ONE])
    }

    /// `c * x^k`.
    pub fn monomial(field: &Arc<FieldCtx>, c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// Builds from raw coefficient bits, lowest degree first.
    pub fn from_bits(field: &Arc<FieldCtx>, bits: &[u64]) -> Result<Self> {
        let coeffs = bits.iter().map(|&b| field.elem(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    fn same_field(&self, other: &PolyQ) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Result<PolyQ> {
        let lead = self.leading();
        let inv = self.field.inv(lead).map_err(|_| Error::DivisionByZero)?;
        Ok(self.scale(inv))
    }

    pub fn scale(&self, c: FieldElem) -> PolyQ {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &PolyQ) -> Result<PolyQ> {
        self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::new(&self.field, coeffs))
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, other: &PolyQ) -> Result<PolyQ> {
        self.add(other)
    }

    pub fn mul(&self, other: &PolyQ) -> Result<PolyQ> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::new(f, out))
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - dd] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.add(rem[k], f.mul(t, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, divisor: &PolyQ) -> Result<PolyQ> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &PolyQ) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQ) -> Result<PolyQ> {
        self.same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g monic.
    pub fn ext_gcd(&self, other: &PolyQ) -> Result<(PolyQ, PolyQ, PolyQ)> {
        self.same_field(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            let t = t0.sub(&q.mul(&t1)?)?;
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(r0.leading())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Inverse of `self` modulo `modulus`, if coprime.
    pub fn inv_mod(&self, modulus: &PolyQ) -> Result<PolyQ> {
        let (g, s, _) = self.ext_gcd(modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::Precondition("polynomial not invertible modulo the given modulus".into()));
        }
        s.rem(modulus)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn mul_mod(&self, other: &PolyQ, modulus: &PolyQ) -> Result<PolyQ> {
        self.mul(other)?.rem(modulus)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &PolyQ) -> Result<PolyQ> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(&self.field).rem(modulus)?;
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            base = base.mul_mod(&base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Square in characteristic 2: the coefficientwise square spread to even degrees.
    pub fn square(&self) -> PolyQ {
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(c);
        }
        Self::new(f, out)
    }

    /// `self^(2^k) mod modulus` by k squarings.
    pub fn pow_2k_mod(&self, k: u64, modulus: &PolyQ) -> Result<PolyQ> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..k {
            acc = acc.square().rem(modulus)?;
        }
        Ok(acc)
    }

    /// Coefficientwise Frobenius: each coefficient raised to 2^k.
    pub fn frobenius(&self, k: u64) -> PolyQ {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, k)).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> PolyQ {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { FieldElem::ZERO })
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// Coefficients as LSB-first bit-strings of the field's width, lowest
    /// degree first.
    pub fn to_bit_strings(&self) -> Vec<String> {
        let m = self.field.degree();
        self.coeffs.iter().map(|c| elem_bit_string(*c, m)).collect()
    }

    pub fn from_bit_strings<S: AsRef<str>>(field: &Arc<FieldCtx>, items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| parse_elem_bit_string(s.as_ref(), field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    /// Packs the coefficients into one integer, coefficient i occupying bits
    /// [i*m, (i+1)*m). Ordering of keys matches [`Ord`] for equal degrees.
    pub fn pack(&self) -> Option<u128> {
        let m = self.field.degree() as usize;
        if self.coeffs.len() * m > 128 {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, c)| acc | ((c.bits() as u128) << (i * m))),
        )
    }
}

pub(crate) fn elem_bit_string(c: FieldElem, m: u32) -> String {
    (0..m).map(|i| if (c.bits() >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

pub(crate) fn parse_elem_bit_string(s: &str, field: &FieldCtx) -> Result<FieldElem> {
    if s.is_empty() || s.len() > field.degree() as usize || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!(
            "`{s}` is not an LSB-first bit-string of width <= {}",
            field.degree()
        )));
    }
    let bits = s
        .chars()
        .enumerate()
        .filter(|&(_, c)| c == '1')
        .fold(0u64, |acc, (i, _)| acc | (1 << i));
    Ok(FieldElem::from_bits(bits))
}

impl PartialEq for PolyQ {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl Eq for PolyQ {}

impl Hash for PolyQ {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for PolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

/// Display form `x^5 + g3*x + g`, where `gk` is the k-th power of the
/// field's primitive element. Fields without log tables print hex
/// coefficients instead.
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = match self.field.log(c) {
                Some(0) => String::new(),
                Some(1) => "g".to_string(),
                Some(k) => format!("g{k}"),
                None if c == FieldElem::ONE => String::new(),
                None => format!("{:#x}", c.bits()),
            };
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (coeff.is_empty(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let items = self.to_bit_strings();
        let mut seq = serializer.serialize_seq(Some(items.len()))?;
        for s in &items {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::make_field;

    fn p(field: &Arc<FieldCtx>, bits: &[u64]) -> PolyQ {
        PolyQ::from_bits(field, bits).unwrap()
    }

    #[test]
    fn ring_basics() {
        let f = make_field(3).unwrap();
        let x1 = p(&f, &[1, 1]);
        assert_eq!(x1.mul(&x1).unwrap(), p(&f, &[1, 0, 1]));
        let zero = PolyQ::zero(&f);
        let g = p(&f, &[3, 5, 2]);
        assert_eq!(g.gcd(&zero).unwrap(), g.monic().unwrap());
        let a = FieldElem::from_bits(6);
        let sq1 = p(&f, &[1, 0, 1]);
        assert_eq!(sq1.eval(a), f.add(f.mul(a, a), FieldElem::ONE));
        assert_eq!(g.div_rem(&zero).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn division_identity() {
        let f = make_field(5).unwrap();
        let a = p(&f, &[7, 0, 19, 3, 1, 30, 2]);
        let b = p(&f, &[4, 11, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let f8 = make_field(3).unwrap();
        let f32 = make_field(5).unwrap();
        assert_eq!(
            PolyQ::x(&f8).mul(&PolyQ::x(&f32)).unwrap_err(),
            Error::ContextMismatch
        );
    }

    #[test]
    fn display_and_bit_strings() {
        let f = make_field(5).unwrap();
        // primitive element of GF(32) is x, so g3 = x^3 = 0b01000
        let g = f.primitive();
        let g3 = f.pow(g, 3);
        let poly = PolyQ::new(&f, vec![g, g3, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE]);
        assert_eq!(poly.to_string(), "x^5 + g3*x + g");
        let bits = poly.to_bit_strings();
        assert_eq!(bits[0], "01000");
        assert_eq!(PolyQ::from_bit_strings(&f, &bits).unwrap(), poly);
        assert_eq!(serde_json::to_string(&PolyQ::one(&f)).unwrap(), r#"["10000"]"#);
    }

    #[test]
    fn inverse_modulo() {
        let f = make_field(3).unwrap();
        let m = p(&f, &[1, 1, 0, 1]);
        let a = p(&f, &[5, 2]);
        let inv = a.inv_mod(&m).unwrap();
        assert_eq!(a.mul_mod(&inv, &m).unwrap(), PolyQ::one(&f));
    }
}
