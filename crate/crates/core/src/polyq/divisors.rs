use num_bigint::BigUint;

use super::{is_irreducible, Parameters, PolyQ};
use crate::arith;
use crate::error::{Error, Result};
use crate::gf2field::Tower;

/// Largest r for which the 2^r elements of the subfield GF(2^r) are listed.
pub const DIVISOR_ENUMERATION_MAX_R: u32 = 30;

/// Whether `f` divides x^(2^r) + x, i.e. x^(2^r) = x mod f.
pub fn divides_x_pow_2r_plus_x(f: &PolyQ, r: u32) -> Result<bool> {
    let x = PolyQ::x(f.field());
    Ok(x.pow_2k_mod(r as u64, f)? == x.rem(f)?)
}

/// The members of I_r dividing x^(2^r) + x, sorted.
///
/// Computed as the degree-r minimal polynomials over GF(q) of the 2^r
/// elements of the subfield GF(2^r) inside GF(2^(nr)).
pub fn divisor_polynomials(params: &Parameters) -> Result<Vec<PolyQ>> {
    let tower = Tower::new(params.n(), params.r())?;
    divisor_polynomials_in(&tower)
}

pub(crate) fn divisor_polynomials_in(tower: &Tower) -> Result<Vec<PolyQ>> {
    let r = tower.r();
    if r > DIVISOR_ENUMERATION_MAX_R {
        return Err(Error::guard("r for subfield enumeration", r, DIVISOR_ENUMERATION_MAX_R));
    }
    let mut out = Vec::new();
    for beta in tower.fixed_subfield(r)? {
        if tower.degree_over(beta) == r {
            out.push(tower.minimal_polynomial(beta)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Least e >= 1 with f | x^e - 1, for irreducible f with f(0) != 0.
/// Requires q^deg(f) < 2^64.
pub fn poly_order(f: &PolyQ) -> Result<BigUint> {
    let d = f.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Precondition("poly_order needs a nonzero constant term".into()));
    }
    if !is_irreducible(f)? {
        return Err(Error::Precondition("poly_order needs an irreducible polynomial".into()));
    }
    let bits = f.field().degree() as u64 * d as u64;
    if bits >= 64 {
        return Err(Error::guard("log2(q^deg f)", bits, 63));
    }
    let group = (1u64 << bits) - 1;
    let x = PolyQ::x(f.field());
    let one = PolyQ::one(f.field()).rem(f)?;
    let mut ord = group;
    for (p, _) in arith::factorize(group) {
        while ord.is_multiple_of(p) && x.pow_mod(ord / p, f)? == one {
            ord /= p;
        }
    }
    Ok(BigUint::from(ord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::make_field;
    use crate::polyq::{count_divisor_polys_mobius, enumerate_irreducibles};

    #[test]
    fn binary_orders() {
        let f2 = make_field(1).unwrap();
        let x1 = PolyQ::from_bits(&f2, &[1, 1]).unwrap();
        assert_eq!(poly_order(&x1).unwrap(), BigUint::from(1u32));
        let q = PolyQ::from_bits(&f2, &[1, 1, 1]).unwrap();
        assert_eq!(poly_order(&q).unwrap(), BigUint::from(3u32));
        let xonly = PolyQ::x(&f2);
        assert!(poly_order(&xonly).is_err());
    }

    #[test]
    fn divisor_polynomials_n5_r7() {
        let p = Parameters::strict(5, 7).unwrap();
        let divs = divisor_polynomials(&p).unwrap();
        assert_eq!(divs.len(), 18);
        for f in &divs {
            assert!(f.is_monic());
            assert_eq!(f.degree(), Some(7));
            assert!(is_irreducible(f).unwrap());
            assert!(divides_x_pow_2r_plus_x(f, 7).unwrap());
            let ord = poly_order(f).unwrap();
            assert_eq!(BigUint::from(127u32) % ord, BigUint::from(0u32));
        }
    }

    #[test]
    fn divisor_polynomials_n3_r5_match_exhaustive_scan() {
        let p = Parameters::relaxed(3, 5).unwrap();
        let divs = divisor_polynomials(&p).unwrap();
        assert_eq!(divs.len(), 6);
        assert_eq!(
            count_divisor_polys_mobius(5).unwrap(),
            BigUint::from(divs.len())
        );
        let field = make_field(3).unwrap();
        let scanned: Vec<_> = enumerate_irreducibles(&field, 5)
            .unwrap()
            .filter(|f| divides_x_pow_2r_plus_x(f, 5).unwrap())
            .collect();
        assert_eq!(scanned, divs);
    }

    #[test]
    fn order_criterion_on_all_of_i5_over_gf8() {
        let field = make_field(3).unwrap();
        for f in enumerate_irreducibles(&field, 5).unwrap() {
            let divides = divides_x_pow_2r_plus_x(&f, 5).unwrap();
            let ord = poly_order(&f).unwrap();
            let ord_divides = BigUint::from(31u32) % ord == BigUint::from(0u32);
            assert_eq!(divides, ord_divides, "{f}");
        }
    }

    #[test]
    fn order_of_q_modulo_mersenne_is_r() {
        for r in 1..=20u32 {
            for n in 1..=12u32 {
                if arith::gcd(r as u64, n as u64) != 1 {
                    continue;
                }
                let q_mod = arith::mod_pow(2, n as u64, (1 << r) - 1);
                let ord = arith::multiplicative_order(q_mod, (1 << r) - 1).unwrap();
                assert_eq!(ord, r as u64, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn embedding_choice_does_not_change_divisor_set() {
        let a = divisor_polynomials_in(&Tower::with_root_choice(5, 7, 0).unwrap()).unwrap();
        let b = divisor_polynomials_in(&Tower::with_root_choice(5, 7, 3).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
