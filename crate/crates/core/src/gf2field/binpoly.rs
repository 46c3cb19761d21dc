//! Polynomials over GF(2) packed into a `u128` (bit i = coefficient of x^i).

use crate::arith;
use crate::error::{Error, Result};

#[inline]
pub(crate) fn degree(f: u128) -> Option<u32> {
    (f != 0).then(|| 127 - f.leading_zeros())
}

#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut b = b;
    let mut acc = 0u128;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

pub(crate) fn rem(mut f: u128, g: u128) -> u128 {
    let dg = degree(g).expect("division by zero polynomial");
    while let Some(df) = degree(f) {
        if df < dg {
            break;
        }
        f ^= g << (df - dg);
    }
    f
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = rem(a, b);
        a = b;
        b = t;
    }
    a
}

fn mulmod(a: u128, b: u128, f: u128) -> u128 {
    // Residues have degree < 64 since deg f <= 64.
    rem(clmul(a as u64, b as u64), f)
}

/// Rabin's test: x^(2^m) = x mod f and gcd(x^(2^(m/p)) - x, f) = 1 for
/// every prime p | m.
pub(crate) fn is_irreducible(f: u128) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = 0b10u128;
    let frob = |k: u32| {
        let mut y = x;
        for _ in 0..k {
            y = mulmod(y, y, f);
        }
        y
    };
    if frob(m) != x {
        return false;
    }
    arith::factorize(m as u64)
        .into_iter()
        .all(|(p, _)| gcd(f, frob(m / p as u32) ^ x) == 1)
}

/// Human-readable form, e.g. `x^5+x^2+1`.
pub fn format_binary_poly(f: u128) -> String {
    if f == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for i in (0..128).rev() {
        if (f >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}

/// Accepts either an LSB-first coefficient bit-string (`1101`) or a
/// polynomial expression (`x^3+x+1`).
pub fn parse_binary_poly(s: &str) -> Result<u128> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s.len() > 1 && s.chars().all(|c| c == '0' || c == '1') {
        if s.len() > 128 {
            return Err(Error::Parse("bit-string longer than 128".into()));
        }
        return Ok(s
            .chars()
            .enumerate()
            .filter(|&(_, c)| c == '1')
            .fold(0u128, |acc, (i, _)| acc | (1u128 << i)));
    }
    let mut f = 0u128;
    for term in s.split('+') {
        let exp = match term {
            "1" => 0,
            "0" => continue,
            "x" => 1,
            t if t.starts_with("x^") => t[2..]
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in term `{t}`")))?,
            t => return Err(Error::Parse(format!("unrecognised term `{t}`"))),
        };
        if exp >= 128 {
            return Err(Error::Parse(format!("exponent {exp} too large")));
        }
        f ^= 1u128 << exp;
    }
    Ok(f)
}
