use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{gcd, is_prime, mod_pow};
use crate::error::{Error, Result};

/// The pair (n, r) with q = 2^n.
///
/// Strict parameters satisfy the hypotheses of the bound: n > 3 an odd
/// prime, r >= 3, gcd(r, n) = 1 and gcd(r, q(q^2 - 1)) = 1. Relaxed
/// parameters only require n, r >= 1 and let the group-action machinery
/// run on small fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Parameters {
    n: u32,
    r: u32,
    strict: bool,
}

impl Parameters {
    pub fn strict(n: u32, r: u32) -> Result<Self> {
        let p = Parameters { n, r, strict: true };
        p.check_hypotheses()?;
        Ok(p)
    }

    pub fn relaxed(n: u32, r: u32) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::Hypothesis("n and r must be positive".into()));
        }
        Ok(Parameters { n, r, strict: false })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// q = 2^n.
    pub fn q(&self) -> BigUint {
        BigUint::from(1u32) << self.n as usize
    }

    /// gcd(r, q(q^2 - 1)) computed from residues modulo r.
    pub fn gcd_r_group_order(&self) -> u64 {
        let r = self.r as u64;
        if r == 1 {
            return 1;
        }
        let q = mod_pow(2, self.n as u64, r) as u128;
        let r128 = r as u128;
        let q2m1 = (q * q % r128 + r128 - 1) % r128;
        gcd(r, (q * q2m1 % r128) as u64)
    }

    /// The condition gcd(r, q(q^2-1)) = 1 under which PGL acts
    /// freely on I_r.
    pub fn acts_freely(&self) -> bool {
        self.gcd_r_group_order() == 1
    }

    /// Checks the bound's hypotheses, naming the first one that fails.
    pub fn check_hypotheses(&self) -> Result<()> {
        let (n, r) = (self.n, self.r);
        if n <= 3 || n % 2 == 0 || !is_prime(n as u64) {
            return Err(Error::Hypothesis(format!("n must be an odd prime > 3 (got n = {n})")));
        }
        if r < 3 {
            return Err(Error::Hypothesis(format!("r must be at least 3 (got r = {r})")));
        }
        let g = gcd(r as u64, n as u64);
        if g != 1 {
            return Err(Error::Hypothesis(format!("gcd(r, n) must be 1 (got {g})")));
        }
        let g = self.gcd_r_group_order();
        if g != 1 {
            return Err(Error::Hypothesis(format!(
                "gcd(r, q(q^2-1)) must be 1 (got {g} for q = 2^{n})"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_table_parameters() {
        assert!(Parameters::strict(5, 7).is_ok());
        for r in [5, 11, 13, 17, 19] {
            assert!(Parameters::strict(7, r).is_ok(), "r = {r}");
        }
    }

    #[test]
    fn names_the_failed_condition() {
        let msg = |n, r| Parameters::strict(n, r).unwrap_err().to_string();
        assert!(msg(4, 7).contains("n must be an odd prime > 3"));
        assert!(msg(3, 7).contains("n must be an odd prime > 3"));
        assert!(msg(9, 7).contains("n must be an odd prime > 3"));
        assert!(msg(5, 2).contains("r must be at least 3"));
        assert!(msg(5, 10).contains("gcd(r, n)"));
        // 3 | 128^2 - 1
        assert!(msg(7, 3).contains("gcd(r, q(q^2-1)) must be 1 (got 3"));
        // 31 | 32 - 1
        assert!(msg(5, 31).contains("gcd(r, q(q^2-1))"));
    }

    #[test]
    fn residue_gcd_matches_big_integers() {
        use num_integer::Integer;
        for n in 1..12u32 {
            for r in 1..60u32 {
                let p = Parameters::relaxed(n, r).unwrap();
                let q = p.q();
                let big = (&q * (&q * &q - 1u32)).gcd(&BigUint::from(r));
                assert_eq!(BigUint::from(p.gcd_r_group_order()), big, "n={n} r={r}");
            }
        }
    }
}
