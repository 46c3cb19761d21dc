//! PGL2(F_q), its affine subgroup AGL and the semi-linear group
//! PΓL = PGL ⋊ Gal(F_(2^(rn)) / F_2), acting on elements of GF(q^r) by
//! Möbius maps and on monic irreducible polynomials by substitution.

mod agl;
mod fixed;
mod orbit;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2field::{FieldCtx, FieldElem, Tower};
use crate::polyq::{elem_bit_string, is_irreducible, PolyQ};

pub use agl::{agl_decompose, AglPart, ELEMENT_ORBIT_CEILING};
pub use fixed::{
    count_divisors_in_orbit, divisor_witnesses, is_orbit_sigma_r_fixed, sigma_r_orbit_length,
    FixedOrbitMethod, SIX_WITNESSES,
};
pub use orbit::{pgl_orbit, stabilizer, Orbit, PglGroup};
pub(crate) use fixed::{count_divisors_in, fixed_in, sigma_r_orbit_length_in};

/// Enumeration of PGL over GF(q) is refused above q = 2^16.
pub const PGL_FIELD_CEILING: u32 = 16;

/// A projective 2x2 matrix (a b; c d) over GF(q) in canonical form: the
/// first nonzero entry in the order a, b, c, d equals one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PglElem {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl PglElem {
    pub const IDENTITY: PglElem = PglElem {
        a: FieldElem::ONE,
        b: FieldElem::ZERO,
        c: FieldElem::ZERO,
        d: FieldElem::ONE,
    };

    /// Canonical representative of the class of (a b; c d); rejects
    /// singular matrices.
    pub fn new(field: &FieldCtx, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        let det = field.add(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(Error::Precondition("matrix is singular (ad - bc = 0)".into()));
        }
        let lead = [a, b, c, d].into_iter().find(|e| !e.is_zero()).expect("nonsingular");
        let s = field.inv(lead)?;
        Ok(PglElem {
            a: field.mul(a, s),
            b: field.mul(b, s),
            c: field.mul(c, s),
            d: field.mul(d, s),
        })
    }

    /// Builds from raw bits; convenient for the small literal matrices used
    /// in tests and witnesses.
    pub fn from_bits(field: &FieldCtx, [a, b, c, d]: [u64; 4]) -> Result<Self> {
        Self::new(field, field.elem(a)?, field.elem(b)?, field.elem(c)?, field.elem(d)?)
    }

    pub fn entries(&self) -> [FieldElem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Whether the class is affine, i.e. has a representative (a b; 0 1).
    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn compose(&self, other: &PglElem, field: &FieldCtx) -> PglElem {
        let f = field;
        let m = |x, y, z, w| f.add(f.mul(x, y), f.mul(z, w));
        PglElem::new(
            f,
            m(self.a, other.a, self.b, other.c),
            m(self.a, other.b, self.b, other.d),
            m(self.c, other.a, self.d, other.c),
            m(self.c, other.b, self.d, other.d),
        )
        .expect("product of invertible matrices is invertible")
    }

    /// The adjugate (d -b; -c a), which is projectively the inverse.
    pub fn inverse(&self, field: &FieldCtx) -> PglElem {
        PglElem::new(field, self.d, self.b, self.c, self.a).expect("invertible")
    }

    /// Entrywise k-fold Frobenius. The canonical form is preserved.
    pub fn frobenius(&self, field: &FieldCtx, k: u64) -> PglElem {
        let s = |x| field.frobenius(x, k);
        PglElem {
            a: s(self.a),
            b: s(self.b),
            c: s(self.c),
            d: s(self.d),
        }
    }

    /// The Möbius map beta -> (a beta + b)/(c beta + d) on GF(q^r).
    pub fn apply_element(&self, tower: &Tower, beta: FieldElem) -> Result<FieldElem> {
        let ext = tower.ext();
        let e = |x| tower.embed(x);
        let num = ext.add(ext.mul(e(self.a), beta), e(self.b));
        let den = ext.add(ext.mul(e(self.c), beta), e(self.d));
        if den.is_zero() {
            return Err(Error::Precondition(format!(
                "denominator vanishes at {beta}; the element lies in GF(q) or at infinity"
            )));
        }
        Ok(ext.mul(num, ext.inv(den)?))
    }
}

impl fmt::Display for PglElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Serialized as four LSB-first bit-strings of the given width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixRecord(pub [String; 4]);

impl PglElem {
    pub fn record(&self, field: &FieldCtx) -> MatrixRecord {
        let m = field.degree();
        MatrixRecord(self.entries().map(|e| elem_bit_string(e, m)))
    }
}

/// Lazily enumerates every canonical PGL element over `field`, in
/// increasing (a, b, c, d) order; q^3 - q elements in total.
pub fn pgl_enumerate(field: &FieldCtx) -> Result<impl Iterator<Item = PglElem> + '_> {
    if field.degree() > PGL_FIELD_CEILING {
        return Err(Error::guard("log2(q) for PGL enumeration", field.degree(), PGL_FIELD_CEILING));
    }
    let q = field.size() as u64;
    let el = FieldElem::from_bits;
    // a = 0, b = 1: det = c, so c != 0.
    let leading_zero = (1..q).flat_map(move |c| {
        (0..q).map(move |d| PglElem {
            a: FieldElem::ZERO,
            b: FieldElem::ONE,
            c: el(c),
            d: el(d),
        })
    });
    // a = 1: det = d - bc, so d != bc.
    let leading_one = (0..q).flat_map(move |b| {
        (0..q).flat_map(move |c| {
            let bc = field.mul(el(b), el(c));
            (0..q).filter(move |&d| el(d) != bc).map(move |d| PglElem {
                a: FieldElem::ONE,
                b: el(b),
                c: el(c),
                d: el(d),
            })
        })
    });
    Ok(leading_zero.chain(leading_one))
}

/// Lazily enumerates AGL inside PGL: the q(q - 1) classes of (a b; 0 1)
/// with a != 0, yielded in canonical form (1 b/a; 0 1/a).
pub fn agl_enumerate(field: &FieldCtx) -> Result<impl Iterator<Item = PglElem> + '_> {
    if field.degree() > PGL_FIELD_CEILING {
        return Err(Error::guard("log2(q) for AGL enumeration", field.degree(), PGL_FIELD_CEILING));
    }
    let q = field.size() as u64;
    let el = FieldElem::from_bits;
    Ok((1..q).flat_map(move |a| {
        (0..q).map(move |b| {
            PglElem::new(field, el(a), el(b), FieldElem::ZERO, FieldElem::ONE)
                .expect("a != 0 gives an invertible matrix")
        })
    }))
}

/// An element A σ^i of PΓL, with 0 <= i < rn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgammalElem {
    pub mat: PglElem,
    pub frob: u32,
}

impl Serialize for PgammalElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}·σ^{}", self.mat, self.frob))
    }
}

/// The group law of PΓL for fixed (q, r): A σ^i · B σ^j = A σ^i(B) σ^(i+j).
#[derive(Clone, Debug)]
pub struct Semilinear<'a> {
    field: &'a FieldCtx,
    period: u32,
}

impl<'a> Semilinear<'a> {
    /// PΓL acting on GF(q^r), where q is the size of `field`; the Frobenius
    /// exponent lives modulo rn.
    pub fn new(field: &'a FieldCtx, r: u32) -> Self {
        Semilinear {
            field,
            period: field.degree() * r,
        }
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn identity(&self) -> PgammalElem {
        PgammalElem {
            mat: PglElem::IDENTITY,
            frob: 0,
        }
    }

    pub fn element(&self, mat: PglElem, frob: u32) -> PgammalElem {
        PgammalElem {
            mat,
            frob: frob % self.period,
        }
    }

    pub fn compose(&self, g: &PgammalElem, h: &PgammalElem) -> PgammalElem {
        let twisted = h.mat.frobenius(self.field, g.frob as u64);
        PgammalElem {
            mat: g.mat.compose(&twisted, self.field),
            frob: (g.frob + h.frob) % self.period,
        }
    }

    pub fn inverse(&self, g: &PgammalElem) -> PgammalElem {
        let back = (self.period - g.frob) % self.period;
        PgammalElem {
            mat: g.mat.inverse(self.field).frobenius(self.field, back as u64),
            frob: back,
        }
    }

    /// Every element (A, i), A in PGL and 0 <= i < rn.
    pub fn elements(&self) -> Result<Vec<PgammalElem>> {
        let pgl: Vec<PglElem> = pgl_enumerate(self.field)?.collect();
        Ok((0..self.period)
            .flat_map(|i| pgl.iter().map(move |&mat| PgammalElem { mat, frob: i }))
            .collect())
    }
}

/// A σ^i α = (a α^(2^i) + b) / (c α^(2^i) + d).
pub fn act_element(g: &PgammalElem, alpha: FieldElem, tower: &Tower) -> Result<FieldElem> {
    if tower.degree_over(alpha) < 2 {
        return Err(Error::Precondition(format!(
            "{alpha} lies in GF(q); the Möbius action needs degree >= 2"
        )));
    }
    let beta = tower.ext().frobenius(alpha, g.frob as u64);
    g.mat.apply_element(tower, beta)
}

/// Core of the polynomial action on coefficient slices: writes the monic
/// normalisation of Σ_j (σ^i f)_j (dx - b)^j (-cx + a)^(r-j) into `out`.
///
/// `f` holds r + 1 coefficients. Returns false if the x^r coefficient
/// vanishes, which cannot happen for irreducible f of degree >= 2.
pub(crate) fn transform_coeffs(
    field: &FieldCtx,
    mat: &PglElem,
    frob: u64,
    f: &[FieldElem],
    out: &mut Vec<FieldElem>,
    ypow: &mut Vec<FieldElem>,
) -> bool {
    let r = f.len() - 1;
    let coef = |j: usize| field.frobenius(f[j], frob);
    // Signs vanish in characteristic 2: dx - b = dx + b, -cx + a = cx + a.
    let (xu, xv) = (mat.d, mat.b);
    let (yu, yv) = (mat.c, mat.a);
    out.clear();
    out.resize(r + 1, FieldElem::ZERO);
    ypow.clear();
    ypow.resize(r + 1, FieldElem::ZERO);
    out[0] = coef(r);
    ypow[0] = FieldElem::ONE;
    // Homogeneous Horner: R <- R*(dx+b) + f_j (cx+a)^(r-j).
    for (step, j) in (0..r).rev().enumerate() {
        let deg = step + 1;
        for k in (1..=deg).rev() {
            ypow[k] = field.add(field.mul(ypow[k], yv), field.mul(ypow[k - 1], yu));
            out[k] = field.add(field.mul(out[k], xv), field.mul(out[k - 1], xu));
        }
        ypow[0] = field.mul(ypow[0], yv);
        out[0] = field.mul(out[0], xv);
        let fj = coef(j);
        if !fj.is_zero() {
            for k in 0..=deg {
                out[k] = field.add(out[k], field.mul(fj, ypow[k]));
            }
        }
    }
    let lead = out[r];
    if lead.is_zero() {
        return false;
    }
    if lead != FieldElem::ONE {
        let s = field.inv(lead).expect("nonzero");
        for c in out.iter_mut() {
            *c = field.mul(*c, s);
        }
    }
    true
}

/// (A σ^i)(f) = (A(σ^i f))*, for f monic irreducible of degree >= 2.
///
/// Output is re-checked to be monic irreducible of the same degree; a
/// failure there is an internal error.
pub fn act_poly(g: &PgammalElem, f: &PolyQ) -> Result<PolyQ> {
    check_action_input(f)?;
    let out = act_poly_unchecked(g, f)?;
    if !is_irreducible(&out)? {
        return Err(Error::Internal(format!("image {out} of {f} under {} is reducible", g.mat)));
    }
    Ok(out)
}

pub(crate) fn check_action_input(f: &PolyQ) -> Result<()> {
    let r = f.degree().unwrap_or(0);
    if r < 2 || !f.is_monic() || !is_irreducible(f)? {
        return Err(Error::Precondition(format!(
            "{f} is not monic irreducible of degree >= 2"
        )));
    }
    Ok(())
}

/// [`act_poly`] without input validation or the output irreducibility test.
pub(crate) fn act_poly_unchecked(g: &PgammalElem, f: &PolyQ) -> Result<PolyQ> {
    let field = f.field();
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    if !transform_coeffs(field, &g.mat, g.frob as u64, f.coeffs(), &mut out, &mut scratch) {
        return Err(Error::Internal(format!("degree dropped applying {} to {f}", g.mat)));
    }
    Ok(PolyQ::new(field, out))
}
