//! The exact upper bound on inequivalent extended Goppa codes, the orbit
//! counts it decomposes into, brute-force orbit counters and tables.

mod brute;
pub mod verify;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::polyq::{count_divisor_polys_mobius, Parameters};

pub use brute::{
    brute_force_orbit_count, orbit_census, representative_poly, Domain, Group, OrbitCensus, OrbitSummary,
    ELEMENT_DOMAIN_CEILING, POLYNOMIAL_DOMAIN_CEILING,
};

/// An exact rational, serialized as decimal numerator/denominator strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction(pub BigRational);

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fraction", 2)?;
        st.serialize_field("numerator", &self.0.numer().to_string())?;
        st.serialize_field("denominator", &self.0.denom().to_string())?;
        st.end()
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two summands of the bound: the fixed-orbit term
/// (n-1)/(6rn) Σ μ(d)(2^(r/d) - 1) and the free term
/// Σ μ(d) q^(r/d) / (rn q(q^2-1)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermBreakdown {
    pub fixed_term: Fraction,
    pub free_term: Fraction,
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub r: u32,
    #[serde(serialize_with = "as_decimal")]
    pub q: BigUint,
    /// Number of PGL-orbits on I_r fixed by σ^r.
    #[serde(serialize_with = "as_decimal")]
    pub fixed_orbit_count: BigUint,
    /// |PGL \ I_r|.
    #[serde(serialize_with = "as_decimal")]
    pub pgl_orbit_count: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
    pub term_breakdown: TermBreakdown,
}

/// Σ_{d|r} μ(d) b^(r/d) as a signed integer.
fn mobius_sum(r: u64, term: impl Fn(u64) -> BigInt) -> BigInt {
    divisors(r)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * term(r / d))
        .sum()
}

fn q_big(params: &Parameters) -> BigInt {
    BigInt::one() << params.n() as usize
}

/// q(q^2 - 1) = |PGL2(F_q)|.
fn pgl_order(params: &Parameters) -> BigInt {
    let q = q_big(params);
    &q * (&q * &q - 1)
}

/// Σ μ(d) q^(r/d) = r |I_r|.
fn necklace_sum(params: &Parameters) -> BigInt {
    let q = q_big(params);
    mobius_sum(params.r() as u64, |e| Pow::pow(&q, e as u32))
}

/// Σ μ(d)(2^(r/d) - 1) = r times the number of divisor polynomials.
fn divisor_sum(params: &Parameters) -> BigInt {
    mobius_sum(params.r() as u64, |e| (BigInt::one() << e as usize) - 1)
}

fn to_biguint(v: BigInt) -> BigUint {
    v.to_biguint().expect("non-negative count")
}

/// |PGL \ I_r| = Σ μ(d) q^(r/d) / (r q(q^2-1)).
///
/// Runs on relaxed parameters too; the division is exact exactly when PGL
/// acts freely enough, and a remainder is reported as an error.
pub fn pgl_orbit_count_formula(params: &Parameters) -> Result<BigUint> {
    let den = pgl_order(params) * params.r();
    let (quot, rem) = necklace_sum(params).div_rem(&den);
    if !rem.is_zero() {
        let msg = format!(
            "|I_r| is not divisible by q(q^2-1) for n = {}, r = {}: hypotheses for a free PGL action violated or arithmetic bug",
            params.n(),
            params.r()
        );
        return Err(if params.is_strict() { Error::Internal(msg) } else { Error::Hypothesis(msg) });
    }
    Ok(to_biguint(quot))
}

/// Number of σ^r-fixed PGL-orbits: (number of divisor polynomials) / 6.
pub fn fixed_orbit_count_formula(params: &Parameters) -> Result<BigUint> {
    let divisors = count_divisor_polys_mobius(params.r() as u64)?;
    let (quot, rem) = divisors.div_rem(&BigUint::from(6u32));
    if !rem.is_zero() {
        let msg = format!(
            "{divisors} divisor polynomials do not split into orbits of 6 for r = {}",
            params.r()
        );
        return Err(if params.is_strict() { Error::Internal(msg) } else { Error::Hypothesis(msg) });
    }
    Ok(quot)
}

/// The upper bound on inequivalent extended irreducible binary Goppa codes
/// of length 2^n + 1 and degree r. Refuses parameters outside the strict
/// hypotheses, whatever mode `params` was built in.
pub fn bound(params: &Parameters) -> Result<BoundReport> {
    params.check_hypotheses()?;
    let (n, r) = (params.n(), params.r());
    let order = pgl_order(params);
    let a = divisor_sum(params);
    let b = necklace_sum(params);

    // One fraction over 6 r n q(q^2-1).
    let den = BigInt::from(6u32) * r * n * &order;
    let num = BigInt::from(n - 1) * &order * &a + BigInt::from(6u32) * &b;
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "bound numerator {num} is not divisible by {den}"
        )));
    }
    let bound = to_biguint(quot);

    let fixed_term = BigRational::new(BigInt::from(n - 1) * &a, BigInt::from(6u32) * r * n);
    let free_term = BigRational::new(b, BigInt::from(r) * n * &order);
    if (&fixed_term + &free_term) != BigRational::from_integer(BigInt::from(bound.clone())) {
        return Err(Error::Internal("summands do not add up to the bound".into()));
    }

    let fixed = fixed_orbit_count_formula(params)?;
    let pgl = pgl_orbit_count_formula(params)?;
    // bound = fixed + (pgl - fixed)/n
    if &bound * n != &pgl + &fixed * (n - 1) {
        return Err(Error::Internal(format!(
            "orbit counts do not reassemble: bound {bound}, fixed {fixed}, pgl {pgl}"
        )));
    }
    Ok(BoundReport {
        n,
        r,
        q: params.q(),
        fixed_orbit_count: fixed,
        pgl_orbit_count: pgl,
        bound,
        term_breakdown: TermBreakdown {
            fixed_term: Fraction(fixed_term),
            free_term: Fraction(free_term),
        },
    })
}

/// One row of a bound table: the report, or why r was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub r: u32,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Report(BoundReport),
    Rejected(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub n: u32,
    pub rows: Vec<TableRow>,
}

pub const CSV_HEADER: &str = "n,r,q,fixed_orbits,pgl_orbits,bound";

impl Table {
    pub fn reports(&self) -> impl Iterator<Item = &BoundReport> {
        self.rows.iter().filter_map(|row| match &row.outcome {
            RowOutcome::Report(rep) => Some(rep),
            RowOutcome::Rejected(_) => None,
        })
    }

    pub fn rejected(&self) -> impl Iterator<Item = (u32, &str)> {
        self.rows.iter().filter_map(|row| match &row.outcome {
            RowOutcome::Rejected(msg) => Some((row.r, msg.as_str())),
            RowOutcome::Report(_) => None,
        })
    }

    /// Header plus one line per accepted row; rejected rows are omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for rep in self.reports() {
            out.push_str(&csv_line(rep));
            out.push('\n');
        }
        out
    }
}

pub fn csv_line(rep: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        rep.n, rep.r, rep.q, rep.fixed_orbit_count, rep.pgl_orbit_count, rep.bound
    )
}

/// Bounds for each r in `r_list` at fixed n. Invalid rows are recorded,
/// not fatal; internal errors still abort.
pub fn make_table(n: u32, r_list: &[u32]) -> Result<Table> {
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let outcome = match Parameters::strict(n, r).and_then(|p| bound(&p)) {
            Ok(rep) => RowOutcome::Report(rep),
            Err(e) if e.is_internal() => return Err(e),
            Err(e) => RowOutcome::Rejected(e.to_string()),
        };
        rows.push(TableRow { r, outcome });
    }
    Ok(Table { n, rows })
}
