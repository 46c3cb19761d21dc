use std::sync::Arc;

use serde::Serialize;

use super::{check_action_input, pgl_enumerate, transform_coeffs, PglElem, PGL_FIELD_CEILING};
use crate::error::{Error, Result};
use crate::gf2field::{FieldCtx, FieldElem, Tower};
use crate::polyq::PolyQ;

/// Groups up to this many elements are kept in memory; larger ones are
/// re-enumerated on every pass.
const CACHE_LIMIT: u64 = 1 << 20;

/// A PGL-orbit (or PΓL-orbit) of monic irreducible polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Least member in [`PolyQ`] order.
    pub canonical: PolyQ,
    pub size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<PolyQ>>,
}

impl Orbit {
    pub fn contains(&self, f: &PolyQ) -> Option<bool> {
        self.members.as_ref().map(|m| m.binary_search(f).is_ok())
    }
}

/// PGL2(F_q) as an explicit list of canonical matrices, with orbit
/// computations by applying every element.
#[derive(Clone, Debug)]
pub struct PglGroup {
    field: Arc<FieldCtx>,
    cached: Option<Arc<Vec<PglElem>>>,
}

impl PglGroup {
    pub fn new(field: &Arc<FieldCtx>) -> Result<Self> {
        if field.degree() > PGL_FIELD_CEILING {
            return Err(Error::guard("log2(q) for PGL enumeration", field.degree(), PGL_FIELD_CEILING));
        }
        let q = field.size() as u64;
        let order = q * q * q - q;
        let cached = (order <= CACHE_LIMIT).then(|| Arc::new(pgl_enumerate(field).unwrap().collect()));
        Ok(PglGroup {
            field: Arc::clone(field),
            cached,
        })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// q^3 - q.
    pub fn order(&self) -> u64 {
        let q = self.field.size() as u64;
        q * q * q - q
    }

    pub fn elements(&self) -> Vec<PglElem> {
        match &self.cached {
            Some(v) => v.as_ref().clone(),
            None => pgl_enumerate(&self.field).unwrap().collect(),
        }
    }

    /// Applies `op` to every group element (in parallel when enabled) and
    /// concatenates the results; the order is unspecified.
    fn flat_map<T, F>(&self, op: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&PglElem, &mut Vec<T>) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let fold = |mut acc: Vec<T>, g: &PglElem| {
                op(g, &mut acc);
                acc
            };
            let merge = |mut a: Vec<T>, mut b: Vec<T>| {
                a.append(&mut b);
                a
            };
            match &self.cached {
                Some(v) => v.par_iter().fold(Vec::new, fold).reduce(Vec::new, merge),
                None => pgl_enumerate(&self.field)
                    .unwrap()
                    .par_bridge()
                    .fold(Vec::new, |acc, g| fold(acc, &g))
                    .reduce(Vec::new, merge),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut out = Vec::new();
            match &self.cached {
                Some(v) => v.iter().for_each(|g| op(g, &mut out)),
                None => pgl_enumerate(&self.field).unwrap().for_each(|g| op(&g, &mut out)),
            }
            out
        }
    }

    /// Sorted, deduplicated packed images of `f` under A σ^i for every A and
    /// every i in `frobs`. `f` must be monic of degree >= 2.
    pub(crate) fn orbit_keys(&self, f: &PolyQ, frobs: &[u64]) -> Result<Vec<u128>> {
        let field = &*self.field;
        if f.field() != &self.field {
            return Err(Error::ContextMismatch);
        }
        let width = field.degree() as usize * f.coeffs().len();
        if width > 128 {
            return Err(Error::guard("packed polynomial width in bits", width, 128));
        }
        let m = field.degree() as usize;
        let coeffs = f.coeffs();
        let failed = std::sync::atomic::AtomicBool::new(false);
        let mut keys = self.flat_map(|g, acc| {
            let mut out = Vec::with_capacity(coeffs.len());
            let mut scratch = Vec::with_capacity(coeffs.len());
            for &i in frobs {
                if !transform_coeffs(field, g, i, coeffs, &mut out, &mut scratch) {
                    failed.store(true, std::sync::atomic::Ordering::Relaxed);
                    return;
                }
                acc.push(pack(&out, m));
            }
        });
        if failed.into_inner() {
            return Err(Error::Internal(format!("degree dropped in the orbit of {f}")));
        }
        keys.sort_unstable();
        keys.dedup();
        Ok(keys)
    }

    fn orbit_from_keys(&self, keys: &[u128], r: usize, materialize: bool) -> Orbit {
        let canonical = unpack(&self.field, keys[0], r);
        let members = materialize.then(|| keys.iter().map(|&k| unpack(&self.field, k, r)).collect());
        Orbit {
            canonical,
            size: keys.len() as u64,
            members,
        }
    }

    /// PGL(f), for f monic irreducible of degree >= 2.
    pub fn orbit(&self, f: &PolyQ, materialize: bool) -> Result<Orbit> {
        check_action_input(f)?;
        let keys = self.orbit_keys(f, &[0])?;
        Ok(self.orbit_from_keys(&keys, f.coeffs().len() - 1, materialize))
    }

    /// PΓL(f) where the Frobenius part runs over 0 <= i < rn.
    pub fn semilinear_orbit(&self, f: &PolyQ, materialize: bool) -> Result<Orbit> {
        check_action_input(f)?;
        let r = f.coeffs().len() - 1;
        let period = r as u64 * self.field.degree() as u64;
        let frobs: Vec<u64> = (0..period).collect();
        let keys = self.orbit_keys(f, &frobs)?;
        Ok(self.orbit_from_keys(&keys, r, materialize))
    }

    /// Least member of PGL(f).
    pub fn canonical(&self, f: &PolyQ) -> Result<PolyQ> {
        Ok(self.orbit(f, false)?.canonical)
    }

    /// All A with A f = f, sorted.
    pub fn stabilizer(&self, f: &PolyQ) -> Result<Vec<PglElem>> {
        check_action_input(f)?;
        let field = &*self.field;
        let coeffs = f.coeffs();
        let mut out = self.flat_map(|g, acc| {
            let mut img = Vec::with_capacity(coeffs.len());
            let mut scratch = Vec::with_capacity(coeffs.len());
            if transform_coeffs(field, g, 0, coeffs, &mut img, &mut scratch) && img == coeffs {
                acc.push(*g);
            }
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Sorted orbit of α in GF(q^r) under A σ^i, i ranging over `frobs`.
    pub fn element_orbit(&self, tower: &Tower, alpha: FieldElem, frobs: &[u64]) -> Result<Vec<FieldElem>> {
        if tower.base() != &self.field {
            return Err(Error::ContextMismatch);
        }
        if tower.degree_over(alpha) < 2 {
            return Err(Error::Precondition(format!(
                "{alpha} lies in GF(q); the Möbius action needs degree >= 2"
            )));
        }
        let ext = tower.ext();
        let betas: Vec<FieldElem> = frobs.iter().map(|&i| ext.frobenius(alpha, i)).collect();
        let mut out = self.flat_map(|g, acc| {
            for &b in &betas {
                acc.push(g.apply_element(tower, b).expect("degree >= 2 keeps the denominator nonzero"));
            }
        });
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

fn pack(coeffs: &[FieldElem], m: usize) -> u128 {
    coeffs
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, c)| acc | ((c.bits() as u128) << (i * m)))
}

fn unpack(field: &Arc<FieldCtx>, key: u128, r: usize) -> PolyQ {
    let m = field.degree() as usize;
    let mask = (1u128 << m) - 1;
    let coeffs = (0..=r)
        .map(|i| FieldElem::from_bits(((key >> (i * m)) & mask) as u64))
        .collect();
    PolyQ::new(field, coeffs)
}

/// Materialized PGL(f).
pub fn pgl_orbit(f: &PolyQ) -> Result<Orbit> {
    PglGroup::new(f.field())?.orbit(f, true)
}

/// Stab_PGL(f).
pub fn stabilizer(f: &PolyQ) -> Result<Vec<PglElem>> {
    PglGroup::new(f.field())?.stabilizer(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{act_poly, Semilinear};
    use crate::gf2field::make_field;
    use crate::polyq::{enumerate_irreducibles, random_irreducible};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pack_roundtrip_matches_polyq() {
        let field = make_field(3).unwrap();
        let f = PolyQ::from_bits(&field, &[3, 0, 7, 1, 2, 1]).unwrap();
        let key = pack(f.coeffs(), 3);
        assert_eq!(Some(key), f.pack());
        assert_eq!(unpack(&field, key, 5), f);
    }

    #[test]
    fn every_orbit_at_q8_r5_is_regular() {
        let field = make_field(3).unwrap();
        let group = PglGroup::new(&field).unwrap();
        let all: Vec<PolyQ> = enumerate_irreducibles(&field, 5).unwrap().collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = 0;
        for f in &all {
            if seen.contains(f) {
                continue;
            }
            let orbit = group.orbit(f, true).unwrap();
            assert_eq!(orbit.size, 504);
            assert_eq!(&orbit.canonical, orbit.members.as_ref().unwrap().first().unwrap());
            assert!(orbit.canonical <= *f);
            seen.extend(orbit.members.unwrap());
            orbits += 1;
        }
        assert_eq!(orbits, 13);
        assert_eq!(seen.len(), 6552);
    }

    #[test]
    fn trivial_stabilizers_at_q8_r5() {
        let field = make_field(3).unwrap();
        let group = PglGroup::new(&field).unwrap();
        for f in enumerate_irreducibles(&field, 5).unwrap() {
            assert_eq!(group.stabilizer(&f).unwrap(), vec![PglElem::IDENTITY]);
        }
    }

    #[test]
    fn nontrivial_stabilizer_when_r_divides_group_order() {
        // 3 divides q^3 - q for q = 2, 4, so orbits need not be regular.
        let field = make_field(1).unwrap();
        let group = PglGroup::new(&field).unwrap();
        for f in enumerate_irreducibles(&field, 3).unwrap() {
            let orbit = group.orbit(&f, false).unwrap();
            let stab = group.stabilizer(&f).unwrap();
            assert_eq!(orbit.size * stab.len() as u64, 6);
        }
        let field = make_field(2).unwrap();
        let group = PglGroup::new(&field).unwrap();
        for f in enumerate_irreducibles(&field, 3).unwrap() {
            let orbit = group.orbit(&f, false).unwrap();
            let stab = group.stabilizer(&f).unwrap();
            assert_eq!(orbit.size * stab.len() as u64, 60);
            assert!(stab.contains(&PglElem::IDENTITY));
        }
    }

    #[test]
    fn orbit_is_closed_and_well_defined() {
        let field = make_field(3).unwrap();
        let group = PglGroup::new(&field).unwrap();
        let semi = Semilinear::new(&field, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_irreducible(&field, 5, &mut rng);
        let orbit = group.orbit(&f, true).unwrap();
        let members = orbit.members.as_ref().unwrap();
        for g in group.elements().iter().step_by(7) {
            let img = act_poly(&semi.element(*g, 0), &f).unwrap();
            assert!(members.binary_search(&img).is_ok());
            assert_eq!(group.canonical(&img).unwrap(), orbit.canonical);
        }
        assert_eq!(orbit.contains(&f), Some(true));
    }

    #[test]
    fn q32_r7_orbit_has_full_size() {
        let field = make_field(5).unwrap();
        let group = PglGroup::new(&field).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_irreducible(&field, 7, &mut rng);
        assert_eq!(group.orbit(&f, false).unwrap().size, 32736);
    }

    #[test]
    fn element_orbit_sizes() {
        let tower = Tower::new(3, 5).unwrap();
        let group = PglGroup::new(tower.base()).unwrap();
        let alpha = tower.ext().primitive();
        assert_eq!(group.element_orbit(&tower, alpha, &[0]).unwrap().len(), 504);
        let all: Vec<u64> = (0..15).collect();
        let semi = group.element_orbit(&tower, alpha, &all).unwrap();
        assert_eq!(semi.len() % 504, 0);
        assert!(group.element_orbit(&tower, FieldElem::ONE, &[0]).is_err());
    }

    #[test]
    fn orbit_serializes_to_json() {
        let field = make_field(1).unwrap();
        let f = PolyQ::from_bits(&field, &[1, 1, 1]).unwrap();
        let orbit = pgl_orbit(&f).unwrap();
        let json = serde_json::to_value(&orbit).unwrap();
        assert_eq!(json["size"], 1);
        assert_eq!(json["canonical"], serde_json::json!(["1", "1", "1"]));
    }
}
