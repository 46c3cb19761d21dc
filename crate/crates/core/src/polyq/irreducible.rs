use std::sync::Arc;

use rand::Rng;

use super::PolyQ;
use crate::arith;
use crate::error::{Error, Result};
use crate::gf2field::{FieldCtx, FieldElem};

/// Full enumeration of monic degree-r candidates is refused above q^r = 2^30.
pub const ENUMERATION_CEILING: u32 = 30;

const ROOT_SCAN_DEGREE: u32 = 6;

/// Rabin's test over GF(q): with d = deg f, f is irreducible iff
/// x^(q^d) = x mod f and gcd(x^(q^(d/p)) - x, f) = 1 for each prime p | d.
pub fn is_irreducible(f: &PolyQ) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d as u64,
    };
    if d == 1 {
        return Ok(true);
    }
    let field = f.field();
    // Cheap rejection: a root in GF(q) means a linear factor.
    if field.degree() <= ROOT_SCAN_DEGREE && field.elements().any(|a| f.eval(a).is_zero()) {
        return Ok(false);
    }
    let m = field.degree() as u64;
    let x = PolyQ::x(field);
    // x^(q^k) mod f is k*m squarings of x.
    let frob = |k: u64| x.pow_2k_mod(k * m, f);
    if frob(d)? != x.rem(f)? {
        return Ok(false);
    }
    for (p, _) in arith::factorize(d) {
        let h = frob(d / p)?.sub(&x)?;
        if f.gcd(&h)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic irreducible polynomials of degree `r` over `field`, in increasing
/// [`PolyQ`] order. Refused when q^r exceeds 2^30.
pub fn enumerate_irreducibles(
    field: &Arc<FieldCtx>,
    r: usize,
) -> Result<impl Iterator<Item = PolyQ>> {
    if r == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let m = field.degree() as u64;
    let bits = m * r as u64;
    if bits > ENUMERATION_CEILING as u64 {
        return Err(Error::guard("log2(q^r)", bits, ENUMERATION_CEILING));
    }
    let field = Arc::clone(field);
    let mask = (1u64 << m) - 1;
    Ok((0..1u64 << bits).filter_map(move |i| {
        let mut coeffs: Vec<FieldElem> = (0..r)
            .map(|j| FieldElem::from_bits((i >> (j as u64 * m)) & mask))
            .collect();
        coeffs.push(FieldElem::ONE);
        let f = PolyQ::new(&field, coeffs);
        is_irreducible(&f).expect("degree >= 1").then_some(f)
    }))
}

/// Uniform random member of I_r by rejection sampling.
pub fn random_irreducible<R: Rng + ?Sized>(field: &Arc<FieldCtx>, r: usize, rng: &mut R) -> PolyQ {
    assert!(r >= 1);
    let m = field.degree();
    let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    loop {
        let mut coeffs: Vec<FieldElem> = (0..r)
            .map(|_| FieldElem::from_bits(rng.gen::<u64>() & mask))
            .collect();
        coeffs.push(FieldElem::ONE);
        let f = PolyQ::new(field, coeffs);
        if is_irreducible(&f).expect("degree >= 1") {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::make_field;
    use crate::polyq::count_irreducibles;
    use num_bigint::BigUint;

    /// Independent oracle: no monic divisor of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: &PolyQ, max_div_degree: usize) -> bool {
        let field = f.field();
        let q = field.size() as u64;
        for k in 1..=max_div_degree.min(f.degree().unwrap() / 2) {
            for i in 0..q.pow(k as u32) {
                let mut coeffs: Vec<FieldElem> = (0..k)
                    .map(|j| FieldElem::from_bits((i / q.pow(j as u32)) % q))
                    .collect();
                coeffs.push(FieldElem::ONE);
                let g = PolyQ::new(field, coeffs);
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn degree_one_and_products() {
        let f = make_field(3).unwrap();
        for a in f.elements() {
            let lin = PolyQ::new(&f, vec![a, FieldElem::ONE]);
            assert!(is_irreducible(&lin).unwrap());
        }
        let g = PolyQ::from_bits(&f, &[3, 1]).unwrap();
        let h = PolyQ::from_bits(&f, &[1, 5, 1]).unwrap();
        assert!(!is_irreducible(&g.mul(&h).unwrap()).unwrap());
        assert_eq!(is_irreducible(&PolyQ::one(&f)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn binary_quadratic_is_unique() {
        let f = make_field(1).unwrap();
        let all: Vec<_> = enumerate_irreducibles(&f, 2).unwrap().collect();
        assert_eq!(all, vec![PolyQ::from_bits(&f, &[1, 1, 1]).unwrap()]);
    }

    #[test]
    fn quadratics_over_gf8() {
        let f = make_field(3).unwrap();
        assert_eq!(enumerate_irreducibles(&f, 2).unwrap().count(), 28);
    }

    #[test]
    fn quintics_over_gf8_match_trial_division() {
        let f = make_field(3).unwrap();
        let mut by_rabin = 0;
        let mut by_trial = 0;
        for i in 0..8u64.pow(5) {
            let mut bits: Vec<u64> = (0..5).map(|j| (i >> (3 * j)) & 7).collect();
            bits.push(1);
            let p = PolyQ::from_bits(&f, &bits).unwrap();
            let rabin = is_irreducible(&p).unwrap();
            // A quintic is reducible iff it has a factor of degree <= 2.
            let trial = irreducible_by_trial_division(&p, 2);
            assert_eq!(rabin, trial, "{p}");
            by_rabin += rabin as u32;
            by_trial += trial as u32;
        }
        assert_eq!(by_rabin, 6552);
        assert_eq!(by_trial, 6552);
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let f = make_field(3).unwrap();
        let all: Vec<_> = enumerate_irreducibles(&f, 5).unwrap().collect();
        assert_eq!(all.len(), 6552);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_matches_count_up_to_2_pow_20() {
        for m in 1..=5u32 {
            for r in 1..=(20 / m) as usize {
                let f = make_field(m).unwrap();
                let n = enumerate_irreducibles(&f, r).unwrap().count();
                let want = count_irreducibles(&BigUint::from(1u64 << m), r as u64).unwrap();
                assert_eq!(BigUint::from(n), want, "q = 2^{m}, r = {r}");
            }
        }
    }

    #[test]
    fn guard_refuses_huge_enumerations() {
        let f = make_field(5).unwrap();
        assert!(matches!(
            enumerate_irreducibles(&f, 7),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
