use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::action::PglGroup;
use crate::error::{Error, Result};
use crate::gf2field::{FieldCtx, Tower};
use crate::polyq::{elem_bit_string, enumerate_irreducibles, PolyQ};

/// Polynomial domains are enumerated up to q^r = 2^20.
pub const POLYNOMIAL_DOMAIN_CEILING: u32 = 20;
/// Element domains are enumerated up to q^r = 2^16.
pub const ELEMENT_DOMAIN_CEILING: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Pgl,
    #[serde(rename = "pgammal")]
    PGammaL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// I_r, the monic irreducibles of degree r.
    Polynomials,
    /// S, the elements of GF(q^r) of degree exactly r over GF(q).
    Elements,
}

/// One orbit found by the brute-force partition; the representative is the
/// least member, which is also the seed that opened it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    /// LSB-first bit-strings: polynomial coefficients lowest degree first,
    /// or the single element.
    pub representative: Vec<String>,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub group: Group,
    pub domain: Domain,
    pub domain_size: u64,
    pub orbits: Vec<OrbitSummary>,
}

impl OrbitCensus {
    pub fn count(&self) -> u64 {
        self.orbits.len() as u64
    }
}

/// Number of orbits of `group` on `domain` over GF(q) = `field`, degree r.
pub fn brute_force_orbit_count(field: &Arc<FieldCtx>, r: u32, group: Group, domain: Domain) -> Result<u64> {
    Ok(orbit_census(field, r, group, domain)?.count())
}

/// Partitions the domain into orbits, taking unvisited seeds in increasing
/// order. Orbits are computed in parallel internally but the seed frontier
/// is sequential, so the result does not depend on the worker count.
pub fn orbit_census(field: &Arc<FieldCtx>, r: u32, group: Group, domain: Domain) -> Result<OrbitCensus> {
    if r < 2 {
        return Err(Error::Precondition("orbit counting needs r >= 2".into()));
    }
    let bits = field.degree() * r;
    let ceiling = match domain {
        Domain::Polynomials => POLYNOMIAL_DOMAIN_CEILING,
        Domain::Elements => ELEMENT_DOMAIN_CEILING,
    };
    if bits > ceiling {
        return Err(Error::guard("log2(q^r) for brute-force orbit counting", bits, ceiling));
    }
    let pgl = PglGroup::new(field)?;
    let frobs: Vec<u64> = match group {
        Group::Pgl => vec![0],
        Group::PGammaL => (0..bits as u64).collect(),
    };
    let (domain_size, orbits) = match domain {
        Domain::Polynomials => polynomial_orbits(&pgl, r, &frobs)?,
        Domain::Elements => element_orbits(&pgl, r, &frobs)?,
    };
    Ok(OrbitCensus {
        group,
        domain,
        domain_size,
        orbits,
    })
}

fn polynomial_orbits(pgl: &PglGroup, r: u32, frobs: &[u64]) -> Result<(u64, Vec<OrbitSummary>)> {
    let mut visited: HashSet<u128> = HashSet::new();
    let mut orbits = Vec::new();
    let mut domain_size = 0u64;
    for f in enumerate_irreducibles(pgl.field(), r as usize)? {
        domain_size += 1;
        let key = f.pack().expect("within the guard");
        if visited.contains(&key) {
            continue;
        }
        let keys = pgl.orbit_keys(&f, frobs)?;
        if keys[0] != key {
            return Err(Error::Internal(format!("seed {f} is not least in its orbit")));
        }
        orbits.push(OrbitSummary {
            representative: f.to_bit_strings(),
            size: keys.len() as u64,
        });
        visited.extend(keys);
    }
    check_partition(domain_size, visited.len() as u64, &orbits)?;
    Ok((domain_size, orbits))
}

fn element_orbits(pgl: &PglGroup, r: u32, frobs: &[u64]) -> Result<(u64, Vec<OrbitSummary>)> {
    let tower = Tower::new(pgl.field().degree(), r)?;
    let ext = tower.ext();
    let mut visited = vec![false; ext.size() as usize];
    let mut orbits = Vec::new();
    let mut domain_size = 0u64;
    let mut covered = 0u64;
    for alpha in ext.elements() {
        if tower.degree_over(alpha) != r {
            continue;
        }
        domain_size += 1;
        if visited[alpha.bits() as usize] {
            continue;
        }
        let members = pgl.element_orbit(&tower, alpha, frobs)?;
        for &b in &members {
            if tower.degree_over(b) != r || std::mem::replace(&mut visited[b.bits() as usize], true) {
                return Err(Error::Internal(format!("orbit of {alpha} leaves S or overlaps another")));
            }
        }
        covered += members.len() as u64;
        orbits.push(OrbitSummary {
            representative: vec![elem_bit_string(alpha, ext.degree())],
            size: members.len() as u64,
        });
    }
    check_partition(domain_size, covered, &orbits)?;
    Ok((domain_size, orbits))
}

fn check_partition(domain_size: u64, covered: u64, orbits: &[OrbitSummary]) -> Result<()> {
    let total: u64 = orbits.iter().map(|o| o.size).sum();
    if total != domain_size || covered != domain_size {
        return Err(Error::Internal(format!(
            "orbits cover {covered} of {domain_size} points (sizes sum to {total})"
        )));
    }
    Ok(())
}

/// Rebuilds a polynomial representative from an [`OrbitSummary`].
pub fn representative_poly(field: &Arc<FieldCtx>, summary: &OrbitSummary) -> Result<PolyQ> {
    PolyQ::from_bit_strings(field, &summary.representative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::make_field;

    #[test]
    fn pgl_on_quintics_over_gf8() {
        let field = make_field(3).unwrap();
        let census = orbit_census(&field, 5, Group::Pgl, Domain::Polynomials).unwrap();
        assert_eq!(census.domain_size, 6552);
        assert_eq!(census.count(), 13);
        assert!(census.orbits.iter().all(|o| o.size == 504));
        let reps: Vec<PolyQ> = census
            .orbits
            .iter()
            .map(|o| representative_poly(&field, o).unwrap())
            .collect();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn semilinear_counts_agree_on_both_domains() {
        let field = make_field(3).unwrap();
        let polys = brute_force_orbit_count(&field, 5, Group::PGammaL, Domain::Polynomials).unwrap();
        let elems = orbit_census(&field, 5, Group::PGammaL, Domain::Elements).unwrap();
        assert_eq!(elems.domain_size, 32760);
        assert_eq!(polys, elems.count());
    }

    #[test]
    fn pgl_orbits_partition_s() {
        let field = make_field(2).unwrap();
        let census = orbit_census(&field, 3, Group::Pgl, Domain::Elements).unwrap();
        assert_eq!(census.domain_size, 64 - 4);
        assert_eq!(census.orbits.iter().map(|o| o.size).sum::<u64>(), 60);
    }

    #[test]
    fn binary_cubics() {
        let field = make_field(1).unwrap();
        let n = brute_force_orbit_count(&field, 3, Group::Pgl, Domain::Polynomials).unwrap();
        // x^3+x+1 and x^3+x^2+1 are swapped by x -> 1/x.
        assert_eq!(n, 1);
    }

    #[test]
    fn guards() {
        let field = make_field(5).unwrap();
        assert!(matches!(
            orbit_census(&field, 5, Group::Pgl, Domain::Polynomials),
            Err(Error::GuardExceeded { .. })
        ));
        let field = make_field(3).unwrap();
        assert!(matches!(
            orbit_census(&field, 6, Group::Pgl, Domain::Elements),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
