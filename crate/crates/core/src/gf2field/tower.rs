use std::sync::Arc;

use super::{make_field, FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::gf2linalg::XorBasis;
use crate::polyq::PolyQ;

/// The tower GF(2) ⊂ GF(q) ⊂ GF(q^r) with q = 2^n.
///
/// Both fields use their smallest moduli. GF(q) is embedded by sending its
/// generator `x` to a root of the base modulus inside GF(2^(nr)); by default
/// the smallest such root by integer encoding.
#[derive(Clone, Debug)]
pub struct Tower {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    r: u32,
    root: FieldElem,
    /// images[i] = embed(x^i).
    images: Vec<u64>,
    image_basis: XorBasis,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ext == other.ext && self.root == other.root
    }
}

impl Tower {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        Self::with_root_choice(n, r, 0)
    }

    /// Uses the `k`-th smallest root of the base modulus (0-based) as the
    /// image of the base generator.
    pub fn with_root_choice(n: u32, r: u32, k: usize) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::Precondition("tower degrees must be positive".into()));
        }
        let total = n as u64 * r as u64;
        if total > 64 {
            return Err(Error::TowerTooLarge(total));
        }
        let base = make_field(n)?;
        let ext = make_field(total as u32)?;
        let roots = roots_of_base_modulus(&base, &ext)?;
        let root = *roots.get(k).ok_or_else(|| {
            Error::Precondition(format!("root choice {k} out of range ({} roots)", roots.len()))
        })?;
        let mut images = Vec::with_capacity(n as usize);
        let mut acc = FieldElem::ONE;
        let mut image_basis = XorBasis::new();
        for i in 0..n {
            images.push(acc.bits());
            if image_basis.insert(acc.bits(), 1 << i).is_some() {
                return Err(Error::Internal("embedding images are linearly dependent".into()));
            }
            acc = ext.mul(acc, root);
        }
        Ok(Tower {
            base,
            ext,
            r,
            root,
            images,
            image_basis,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }

    pub fn n(&self) -> u32 {
        self.base.degree()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Image of the base generator.
    pub fn root(&self) -> FieldElem {
        self.root
    }

    /// The field embedding GF(q) -> GF(q^r); GF(2)-linear on bits.
    pub fn embed(&self, a: FieldElem) -> FieldElem {
        let mut bits = a.bits();
        let mut out = 0u64;
        while bits != 0 {
            out ^= self.images[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        FieldElem::from_bits(out)
    }

    /// Inverse of [`Tower::embed`] on its image.
    pub fn restrict(&self, b: FieldElem) -> Option<FieldElem> {
        let (rem, combo) = self.image_basis.reduce(b.bits());
        (rem == 0).then(|| FieldElem::from_bits(combo))
    }

    /// Least d >= 1 with alpha^(q^d) = alpha.
    pub fn degree_over(&self, alpha: FieldElem) -> u32 {
        let n = self.n() as u64;
        let mut beta = alpha;
        for d in 1..=self.r {
            beta = self.ext.frobenius(beta, n);
            if beta == alpha {
                return d;
            }
        }
        unreachable!("alpha^(q^r) = alpha in GF(q^r)")
    }

    /// The conjugates alpha, alpha^q, ..., alpha^(q^(d-1)).
    pub fn conjugates(&self, alpha: FieldElem) -> Vec<FieldElem> {
        let n = self.n() as u64;
        let d = self.degree_over(alpha);
        std::iter::successors(Some(alpha), |&b| Some(self.ext.frobenius(b, n)))
            .take(d as usize)
            .collect()
    }

    /// Minimal polynomial of `alpha` over GF(q): the product of x - beta
    /// over the distinct conjugates, pulled back to GF(q).
    pub fn minimal_polynomial(&self, alpha: FieldElem) -> Result<PolyQ> {
        let ext = &self.ext;
        let mut prod = vec![FieldElem::ONE];
        for beta in self.conjugates(alpha) {
            // prod *= (x + beta)
            let mut next = vec![FieldElem::ZERO; prod.len() + 1];
            for (i, &c) in prod.iter().enumerate() {
                next[i + 1] = ext.add(next[i + 1], c);
                next[i] = ext.add(next[i], ext.mul(c, beta));
            }
            prod = next;
        }
        let coeffs = prod
            .into_iter()
            .map(|c| {
                self.restrict(c).ok_or_else(|| {
                    Error::Internal(format!("minimal polynomial coefficient {c} not in GF(q)"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyQ::new(&self.base, coeffs))
    }

    /// Image under embedding of a polynomial's coefficients, evaluated at
    /// an extension element.
    pub fn eval_embedded(&self, f: &PolyQ, alpha: FieldElem) -> FieldElem {
        let ext = &self.ext;
        f.coeffs()
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| ext.add(ext.mul(acc, alpha), self.embed(c)))
    }

    /// The subfield {beta : beta^(2^k) = beta} of GF(2^(nr)), listed in
    /// increasing encoding. Requires k | nr and k <= 30.
    pub fn fixed_subfield(&self, k: u32) -> Result<Vec<FieldElem>> {
        let m = self.ext.degree();
        if k == 0 || !m.is_multiple_of(k) {
            return Err(Error::Precondition(format!("{k} does not divide {m}")));
        }
        if k > 30 {
            return Err(Error::guard("subfield degree", k, 30));
        }
        // Kernel of the GF(2)-linear map beta -> beta^(2^k) + beta.
        let mut basis = XorBasis::new();
        let mut kernel = Vec::new();
        for j in 0..m {
            let e = FieldElem::from_bits(1 << j);
            let image = self.ext.add(self.ext.frobenius(e, k as u64), e);
            if let Some(combo) = basis.insert(image.bits(), 1 << j) {
                kernel.push(combo);
            }
        }
        if kernel.len() != k as usize {
            return Err(Error::Internal(format!(
                "subfield of degree {k} has dimension {}",
                kernel.len()
            )));
        }
        let mut elems: Vec<FieldElem> = (0u64..1 << k)
            .map(|mask| {
                let bits = kernel
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| (mask >> i) & 1 == 1)
                    .fold(0u64, |acc, (_, &v)| acc ^ v);
                FieldElem::from_bits(bits)
            })
            .collect();
        elems.sort_unstable();
        Ok(elems)
    }
}

pub fn make_tower(n: u32, r: u32) -> Result<Tower> {
    Tower::new(n, r)
}

/// All roots in `ext` of the base field's modulus, ascending.
fn roots_of_base_modulus(base: &FieldCtx, ext: &Arc<FieldCtx>) -> Result<Vec<FieldElem>> {
    let modulus = base.modulus();
    let coeffs = (0..=base.degree())
        .map(|i| FieldElem::from_bits(((modulus >> i) & 1) as u64))
        .collect();
    let f = PolyQ::new(ext, coeffs);
    let mut roots = split_roots(&f)?;
    roots.sort_unstable();
    if roots.len() != base.degree() as usize {
        return Err(Error::Internal(format!(
            "base modulus has {} roots in the extension, expected {}",
            roots.len(),
            base.degree()
        )));
    }
    Ok(roots)
}

/// Roots of a monic squarefree polynomial splitting into linear factors
/// over its own field, by trace splitting gcd(Tr(delta*x) mod f, f).
pub(crate) fn split_roots(f: &PolyQ) -> Result<Vec<FieldElem>> {
    let field = f.field();
    match f.degree() {
        None => return Err(Error::Precondition("zero polynomial has every root".into())),
        Some(0) => return Ok(Vec::new()),
        Some(1) => {
            let m = f.monic()?;
            return Ok(vec![m.coeff(0)]);
        }
        Some(_) => {}
    }
    let m = field.degree();
    let mut delta = FieldElem::ONE;
    for _ in 0..256 {
        let mut y = PolyQ::monomial(field, delta, 1).rem(f)?;
        let mut tr = y.clone();
        for _ in 1..m {
            y = y.mul_mod(&y, f)?;
            tr = tr.add(&y)?;
        }
        let g = f.gcd(&tr)?;
        if let Some(dg) = g.degree() {
            if dg > 0 && Some(dg) != f.degree() {
                let h = f.div_rem(&g)?.0;
                let mut roots = split_roots(&g)?;
                roots.extend(split_roots(&h)?);
                return Ok(roots);
            }
        }
        delta = field.mul(delta, field.primitive());
    }
    Err(Error::Internal("trace splitting failed to separate roots".into()))
}
