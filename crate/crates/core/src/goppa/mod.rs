//! Irreducible binary Goppa codes Γ(L, g) with L = GF(q), their
//! extensions by a parity coordinate, and weight enumerators.

mod code;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, Tower};
use crate::gf2linalg::BitMatrix;
use crate::polyq::{is_irreducible, PolyQ};

pub use code::{BinaryCode, WEIGHT_ENUMERATOR_MAX_DIM};

/// Codes are built for q <= 2^10 only.
pub const CODE_FIELD_CEILING: u32 = 10;

/// Goppa polynomial g, support L = GF(q) in increasing order, and a root
/// α of g in GF(q^r).
#[derive(Clone, Debug, Serialize)]
pub struct GoppaSpec {
    pub n: u32,
    pub r: u32,
    pub g: PolyQ,
    #[serde(skip)]
    pub support: Vec<FieldElem>,
    pub alpha: FieldElem,
}

impl GoppaSpec {
    pub fn new(tower: &Tower, g: PolyQ, alpha: FieldElem) -> Result<Self> {
        let r = tower.r();
        if g.field() != tower.base() {
            return Err(Error::ContextMismatch);
        }
        if g.degree() != Some(r as usize) || !g.is_monic() || !is_irreducible(&g)? {
            return Err(Error::Precondition(format!("{g} is not monic irreducible of degree {r}")));
        }
        if !tower.eval_embedded(&g, alpha).is_zero() {
            return Err(Error::Precondition(format!("{alpha} is not a root of {g}")));
        }
        Ok(GoppaSpec {
            n: tower.n(),
            r,
            g,
            support: tower.base().elements().collect(),
            alpha,
        })
    }

    /// Uses the minimal polynomial of α as g.
    pub fn from_root(tower: &Tower, alpha: FieldElem) -> Result<Self> {
        let d = tower.degree_over(alpha);
        if d != tower.r() {
            return Err(Error::Precondition(format!(
                "{alpha} has degree {d} over GF(q), expected {}",
                tower.r()
            )));
        }
        let g = tower.minimal_polynomial(alpha)?;
        Self::new(tower, g, alpha)
    }
}

/// Γ(L, g) as the binary kernel of H(α) = (1/(α - α_i))_i, each entry
/// written in the power basis of GF(q^r) over GF(2).
///
/// Every basis codeword is re-checked against the defining congruence
/// Σ c_i/(x - α_i) = 0 mod g by polynomial arithmetic.
pub fn build_goppa(spec: &GoppaSpec, tower: &Tower) -> Result<BinaryCode> {
    let base = tower.base();
    if base.degree() > CODE_FIELD_CEILING {
        return Err(Error::guard("log2(q) for code construction", base.degree(), CODE_FIELD_CEILING));
    }
    if spec.n != tower.n() || spec.r != tower.r() {
        return Err(Error::ContextMismatch);
    }
    let ext = tower.ext();
    let q = spec.support.len();
    let bits = ext.degree() as usize;
    let mut h = BitMatrix::zeros(bits, q);
    for (i, &a) in spec.support.iter().enumerate() {
        let entry = ext.inv(ext.add(spec.alpha, tower.embed(a)))?;
        for b in 0..bits {
            h.set(b, i, (entry.bits() >> b) & 1 == 1);
        }
    }
    let code = BinaryCode::from_parity_check(h);
    for row in code.generator().rows() {
        if !satisfies_congruence(spec, row)? {
            return Err(Error::Internal(format!(
                "kernel word fails the Goppa congruence for g = {}",
                spec.g
            )));
        }
    }
    Ok(code)
}

/// Whether Σ c_i/(x - α_i) = 0 mod g, with 1/(x - α_i) the inverse of
/// x - α_i modulo g.
pub fn satisfies_congruence(spec: &GoppaSpec, word: &[u64]) -> Result<bool> {
    let field = spec.g.field();
    let mut acc = PolyQ::zero(field);
    for (i, &a) in spec.support.iter().enumerate() {
        if (word[i / 64] >> (i % 64)) & 1 == 1 {
            let lin = PolyQ::new(field, vec![a, FieldElem::ONE]);
            acc = acc.add(&lin.inv_mod(&spec.g)?)?;
        }
    }
    Ok(acc.rem(&spec.g)?.is_zero())
}

/// The extended code of length q + 1 determined by α.
pub fn code_from_orbit_element(alpha: FieldElem, tower: &Tower) -> Result<BinaryCode> {
    let spec = GoppaSpec::from_root(tower, alpha)?;
    Ok(build_goppa(&spec, tower)?.extend())
}
