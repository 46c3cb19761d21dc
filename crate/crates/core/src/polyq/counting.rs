use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::Parameters;
use crate::arith::{divisors, euler_phi, mobius, mod_pow};
use crate::error::{Error, Result};

/// Largest r for which 2^r - 1 is factored by trial division in [`e_set`].
pub const E_SET_MAX_R: u32 = 40;

fn exact_div(num: BigInt, den: u64, what: &str) -> Result<BigUint> {
    let (quot, rem) = num.div_rem(&BigInt::from(den));
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::Internal(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(quot.to_biguint().expect("non-negative"))
}

/// |I_r| = (1/r) Σ_{d|r} μ(d) q^(r/d).
pub fn count_irreducibles(q: &BigUint, r: u64) -> Result<BigUint> {
    if r == 0 || *q < BigUint::from(2u32) {
        return Err(Error::Precondition("count_irreducibles needs q >= 2 and r >= 1".into()));
    }
    let q = BigInt::from(q.clone());
    let sum: BigInt = divisors(r)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * Pow::pow(&q, (r / d) as u32))
        .sum();
    exact_div(sum, r, "count_irreducibles")
}

/// Number of members of I_r dividing x^(2^r) + x:
/// (1/r) Σ_{d|r} μ(d) (2^(r/d) - 1).
pub fn count_divisor_polys_mobius(r: u64) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let sum: BigInt = divisors(r)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * ((BigInt::one() << (r / d) as usize) - 1))
        .sum();
    exact_div(sum, r, "count_divisor_polys_mobius")
}

/// E(r, q) = { e > 1 : e | 2^r - 1, e does not divide q^d - 1 for 1 <= d < r }.
pub fn e_set(params: &Parameters) -> Result<Vec<u64>> {
    let r = params.r();
    if r > E_SET_MAX_R {
        return Err(Error::guard("r for factoring 2^r - 1", r, E_SET_MAX_R));
    }
    let n = params.n() as u64;
    let mersenne = (1u64 << r) - 1;
    Ok(divisors(mersenne)
        .into_iter()
        .filter(|&e| e > 1)
        .filter(|&e| {
            let q_mod = mod_pow(2, n, e);
            (1..r as u64).all(|d| mod_pow(q_mod, d, e) != 1 % e)
        })
        .collect())
}

/// Σ_{e ∈ E(r,q)} φ(e) / r.
pub fn e_set_count(params: &Parameters) -> Result<BigUint> {
    let sum: BigInt = e_set(params)?.into_iter().map(|e| BigInt::from(euler_phi(e))).sum();
    exact_div(sum, params.r() as u64, "e_set_count")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_irreducibles(&BigUint::from(2u32), 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_irreducibles(&BigUint::from(8u32), 5).unwrap(), BigUint::from(6552u32));
        assert_eq!(count_irreducibles(&BigUint::from(32u32), 7).unwrap(), big("4908534048"));
        // Second summation order: (32^7 - 32) / 7 directly.
        let direct = (Pow::pow(BigUint::from(32u32), 7u32) - 32u32) / 7u32;
        assert_eq!(direct, big("4908534048"));
        assert!(count_irreducibles(&BigUint::from(1u32), 3).is_err());
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(count_divisor_polys_mobius(7).unwrap(), BigUint::from(18u32));
        assert_eq!(count_divisor_polys_mobius(5).unwrap(), BigUint::from(6u32));
        assert_eq!(count_divisor_polys_mobius(1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_divisor_polys_mobius(11).unwrap(), BigUint::from(186u32));
    }

    #[test]
    fn e_set_single_mersenne_prime() {
        let p = Parameters::relaxed(7, 5).unwrap();
        assert_eq!(e_set(&p).unwrap(), vec![31]);
        assert_eq!(e_set_count(&p).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn e_set_count_agrees_with_mobius_count() {
        for (n, r) in [(5, 7), (3, 5), (7, 5), (7, 11), (7, 13), (11, 9), (5, 12)] {
            let p = Parameters::relaxed(n, r).unwrap();
            assert_eq!(
                e_set_count(&p).unwrap(),
                count_divisor_polys_mobius(r as u64).unwrap(),
                "(n, r) = ({n}, {r})"
            );
        }
    }
}
