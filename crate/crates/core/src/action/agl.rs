use std::collections::BTreeSet;

use serde::Serialize;

use super::{agl_enumerate, PglGroup};
use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, Tower};

/// Element orbits are only materialized for q <= 2^10.
pub const ELEMENT_ORBIT_CEILING: u32 = 10;

/// One AGL-orbit inside PGL(α).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AglPart {
    pub representative: FieldElem,
    pub size: usize,
    #[serde(skip)]
    pub members: Vec<FieldElem>,
}

/// Splits PGL(α) into the AGL-orbits of α and of 1/(α + γ), γ in GF(q),
/// in that order. Checks that the q + 1 parts are disjoint and cover
/// PGL(α).
pub fn agl_decompose(alpha: FieldElem, tower: &Tower) -> Result<Vec<AglPart>> {
    let base = tower.base();
    if base.degree() > ELEMENT_ORBIT_CEILING {
        return Err(Error::guard("log2(q) for element orbits", base.degree(), ELEMENT_ORBIT_CEILING));
    }
    if tower.degree_over(alpha) != tower.r() {
        return Err(Error::Precondition(format!(
            "{alpha} does not have degree {} over GF(q)",
            tower.r()
        )));
    }
    let ext = tower.ext();
    let agl: Vec<_> = agl_enumerate(base)?.collect();
    let orbit_of = |beta: FieldElem| -> Result<Vec<FieldElem>> {
        let mut v = agl
            .iter()
            .map(|g| g.apply_element(tower, beta))
            .collect::<Result<Vec<_>>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    };
    let mut reps = vec![alpha];
    for gamma in base.elements() {
        reps.push(ext.inv(ext.add(alpha, tower.embed(gamma)))?);
    }
    let mut parts = Vec::with_capacity(reps.len());
    for rep in reps {
        let members = orbit_of(rep)?;
        parts.push(AglPart {
            representative: rep,
            size: members.len(),
            members,
        });
    }

    let whole = PglGroup::new(base)?.element_orbit(tower, alpha, &[0])?;
    let mut union = BTreeSet::new();
    for p in &parts {
        for &x in &p.members {
            if !union.insert(x) {
                return Err(Error::Internal(format!("AGL-orbits inside PGL({alpha}) overlap at {x}")));
            }
        }
    }
    if !union.iter().copied().eq(whole.iter().copied()) {
        return Err(Error::Internal(format!("AGL-orbits do not cover PGL({alpha})")));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::agl_enumerate;

    #[test]
    fn decomposition_at_q8_r5() {
        let tower = Tower::new(3, 5).unwrap();
        let base = tower.base();
        let agl: Vec<_> = agl_enumerate(base).unwrap().collect();
        let alpha = tower.ext().primitive();
        let parts = agl_decompose(alpha, &tower).unwrap();
        assert_eq!(parts.len(), 9);
        assert_eq!(parts.iter().map(|p| p.size).sum::<usize>(), 504);
        for p in &parts {
            for &x in &p.members {
                for g in &agl {
                    let y = g.apply_element(&tower, x).unwrap();
                    assert!(p.members.binary_search(&y).is_ok());
                }
            }
        }
    }

    #[test]
    fn rejects_subfield_elements() {
        let tower = Tower::new(3, 5).unwrap();
        assert!(agl_decompose(FieldElem::ONE, &tower).is_err());
    }
}
