use std::collections::BTreeSet;

use super::{check_action_input, transform_coeffs, PglElem, PglGroup};
use crate::error::{Error, Result};
use crate::polyq::{divides_x_pow_2r_plus_x, Parameters, PolyQ};

/// The six matrices over F_2 that carry a divisor of x^(2^r) + x to the
/// six divisors in its orbit, as raw (a, b, c, d) bits.
pub const SIX_WITNESSES: [[u64; 4]; 6] = [
    [1, 0, 0, 1],
    [1, 1, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 1, 1],
    [1, 0, 1, 1],
    [1, 1, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedOrbitMethod {
    /// Some member of PGL(f) divides x^(2^r) + x.
    Divisibility,
    /// σ^r f, taken coefficientwise, lies in PGL(f).
    Direct,
}

fn check_params(f: &PolyQ, params: &Parameters) -> Result<()> {
    check_action_input(f)?;
    if f.field().degree() != params.n() || f.degree() != Some(params.r() as usize) {
        return Err(Error::Precondition(format!(
            "{f} is not a degree-{} polynomial over GF(2^{})",
            params.r(),
            params.n()
        )));
    }
    Ok(())
}

/// Whether PGL(σ^r f) = PGL(f), decided by `method`.
pub fn is_orbit_sigma_r_fixed(f: &PolyQ, params: &Parameters, method: FixedOrbitMethod) -> Result<bool> {
    check_params(f, params)?;
    let group = PglGroup::new(f.field())?;
    fixed_in(&group, f, params.r(), method)
}

pub(crate) fn fixed_in(group: &PglGroup, f: &PolyQ, r: u32, method: FixedOrbitMethod) -> Result<bool> {
    match method {
        FixedOrbitMethod::Divisibility => {
            let members = group.orbit(f, true)?.members.expect("materialized");
            Ok(crate::par::any(&members, |h| {
                divides_x_pow_2r_plus_x(h, r).expect("nonzero modulus")
            }))
        }
        FixedOrbitMethod::Direct => {
            let keys = group.orbit_keys(f, &[0])?;
            let shifted = f.frobenius(r as u64).pack().expect("width checked by orbit_keys");
            Ok(keys.binary_search(&shifted).is_ok())
        }
    }
}

/// Least k >= 1 with σ^(rk) f in PGL(f): the length of the ⟨σ^r⟩-orbit of
/// PGL(f) among PGL-orbits. Always divides n.
pub fn sigma_r_orbit_length(f: &PolyQ, r: u32) -> Result<u32> {
    let group = PglGroup::new(f.field())?;
    sigma_r_orbit_length_in(&group, f, r)
}

pub(crate) fn sigma_r_orbit_length_in(group: &PglGroup, f: &PolyQ, r: u32) -> Result<u32> {
    let keys = group.orbit_keys(f, &[0])?;
    let n = f.field().degree();
    for k in 1..=n {
        let shifted = f.frobenius(r as u64 * k as u64).pack().expect("width checked");
        if keys.binary_search(&shifted).is_ok() {
            return Ok(k);
        }
    }
    Err(Error::Internal(format!("σ^(rn) does not return {f} to its orbit")))
}

/// Images of f under the six witness matrices, in witness order. Raises if
/// two coincide, which would contradict trivial stabilizers.
pub fn divisor_witnesses(f: &PolyQ) -> Result<Vec<PolyQ>> {
    check_action_input(f)?;
    let field = f.field();
    let mut out = Vec::with_capacity(6);
    let mut img = Vec::new();
    let mut scratch = Vec::new();
    for bits in SIX_WITNESSES {
        let g = PglElem::from_bits(field, bits)?;
        if !transform_coeffs(field, &g, 0, f.coeffs(), &mut img, &mut scratch) {
            return Err(Error::Internal(format!("degree dropped applying {g} to {f}")));
        }
        out.push(PolyQ::new(field, img.clone()));
    }
    let distinct: BTreeSet<&PolyQ> = out.iter().collect();
    if distinct.len() != out.len() {
        return Err(Error::Internal(format!(
            "witness images of {f} coincide; its stabilizer is nontrivial"
        )));
    }
    Ok(out)
}

/// |{h in PGL(f) : h divides x^(2^r) + x}| for a divisor polynomial f.
///
/// The members found are cross-checked against the six witness images:
/// every witness image must be among them, and when six are found they
/// must be exactly the witness images.
pub fn count_divisors_in_orbit(f: &PolyQ, params: &Parameters) -> Result<u64> {
    check_params(f, params)?;
    let r = params.r();
    if !divides_x_pow_2r_plus_x(f, r)? {
        return Err(Error::Precondition(format!("{f} does not divide x^(2^{r}) + x")));
    }
    let group = PglGroup::new(f.field())?;
    count_divisors_in(&group, f, r)
}

pub(crate) fn count_divisors_in(group: &PglGroup, f: &PolyQ, r: u32) -> Result<u64> {
    let orbit = group.orbit(f, true)?;
    let members = orbit.members.expect("materialized");
    let hits = crate::par::map(&members, |h| divides_x_pow_2r_plus_x(h, r).expect("nonzero modulus"));
    let found: BTreeSet<PolyQ> = members
        .into_iter()
        .zip(hits)
        .filter_map(|(h, hit)| hit.then_some(h))
        .collect();
    let witnesses: BTreeSet<PolyQ> = divisor_witnesses(f)?.into_iter().collect();
    if !witnesses.is_subset(&found) {
        return Err(Error::Internal(format!(
            "a witness image of {f} does not divide x^(2^{r}) + x"
        )));
    }
    if found.len() == 6 && found != witnesses {
        return Err(Error::Internal(format!("divisors in the orbit of {f} differ from the witness images")));
    }
    Ok(found.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::make_field;
    use crate::polyq::{divisor_polynomials, enumerate_irreducibles};

    #[test]
    fn six_divisors_per_orbit_at_n3_r5() {
        let params = Parameters::relaxed(3, 5).unwrap();
        let divisors = divisor_polynomials(&params).unwrap();
        assert_eq!(divisors.len(), 6);
        for f in &divisors {
            assert_eq!(count_divisors_in_orbit(f, &params).unwrap(), 6);
            for m in [FixedOrbitMethod::Divisibility, FixedOrbitMethod::Direct] {
                assert!(is_orbit_sigma_r_fixed(f, &params, m).unwrap());
            }
            let mut w = divisor_witnesses(f).unwrap();
            w.sort();
            assert_eq!(w, divisors, "a single orbit holds all six");
        }
    }

    #[test]
    fn methods_agree_on_every_orbit_at_q8_r5() {
        let field = make_field(3).unwrap();
        let group = PglGroup::new(&field).unwrap();
        let mut seen = BTreeSet::new();
        let mut fixed = 0;
        for f in enumerate_irreducibles(&field, 5).unwrap() {
            if seen.contains(&f) {
                continue;
            }
            let a = fixed_in(&group, &f, 5, FixedOrbitMethod::Divisibility).unwrap();
            let b = fixed_in(&group, &f, 5, FixedOrbitMethod::Direct).unwrap();
            assert_eq!(a, b, "{f}");
            let len = sigma_r_orbit_length_in(&group, &f, 5).unwrap();
            assert_eq!(len == 1, a);
            assert!(len == 1 || len == 3);
            fixed += a as u32;
            seen.extend(group.orbit(&f, true).unwrap().members.unwrap());
        }
        assert_eq!(fixed, 1);
    }

    #[test]
    fn rejects_non_divisors() {
        let params = Parameters::relaxed(3, 5).unwrap();
        let field = make_field(3).unwrap();
        let f = enumerate_irreducibles(&field, 5)
            .unwrap()
            .find(|f| !divides_x_pow_2r_plus_x(f, 5).unwrap())
            .unwrap();
        assert!(matches!(count_divisors_in_orbit(&f, &params), Err(Error::Precondition(_))));
    }
}
