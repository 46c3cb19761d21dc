//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON string;
//! errors surface in JavaScript as thrown strings. The `*_json` functions
//! hold the logic and are what the native tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use goppa_core::enumeration::{self, orbit_census, representative_poly, Domain, Group};
use goppa_core::gf2field::{make_field, FieldElem, Tower};
use goppa_core::goppa::{build_goppa, GoppaSpec};
use goppa_core::polyq::Parameters;

/// The page runs on the main thread; keep exhaustive work to q^r <= 2^15.
pub const DEMO_DOMAIN_BITS: u32 = 15;
/// Goppa codes up to q = 2^6 (length 65).
pub const DEMO_CODE_FIELD_BITS: u32 = 6;

type Out = Result<String, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Parses "5, 11,13" into degrees.
pub fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("`{t}` is not a degree")))
        .collect()
}

pub fn bound_table_json(n: u32, r_list: &str) -> Out {
    let rs = parse_list(r_list)?;
    if rs.is_empty() {
        return Err("give at least one r".into());
    }
    let table = enumeration::make_table(n, &rs).map_err(err)?;
    serde_json::to_string(&table).map_err(err)
}

pub fn orbits_json(n: u32, r: u32, pgammal: bool, elements: bool) -> Out {
    if n * r > DEMO_DOMAIN_BITS {
        return Err(format!("q^r = 2^{} is too large for the browser (limit 2^{DEMO_DOMAIN_BITS})", n * r));
    }
    Parameters::relaxed(n, r).map_err(err)?;
    let field = make_field(n).map_err(err)?;
    let group = if pgammal { Group::PGammaL } else { Group::Pgl };
    let domain = if elements { Domain::Elements } else { Domain::Polynomials };
    let census = orbit_census(&field, r, group, domain).map_err(err)?;
    let orbits = census
        .orbits
        .iter()
        .map(|o| {
            let label = match domain {
                Domain::Polynomials => representative_poly(&field, o).map_err(err)?.to_string(),
                Domain::Elements => {
                    let bits = o.representative[0].chars().rev().fold(0u64, |a, c| a << 1 | (c == '1') as u64);
                    FieldElem::from_bits(bits).to_string()
                }
            };
            Ok(json!({ "representative": label, "size": o.size }))
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok(json!({
        "n": n,
        "r": r,
        "modulus": field.modulus_string(),
        "group": census.group,
        "domain": census.domain,
        "domain_size": census.domain_size,
        "count": census.count(),
        "orbits": orbits,
    })
    .to_string())
}

/// The Goppa code of the root `alpha` (hex); an empty string picks the
/// least element of degree r.
pub fn goppa_json(n: u32, r: u32, alpha: &str) -> Out {
    if n > DEMO_CODE_FIELD_BITS {
        return Err(format!("q = 2^{n} is too large for the browser (limit 2^{DEMO_CODE_FIELD_BITS})"));
    }
    Parameters::relaxed(n, r).map_err(err)?;
    let tower = Tower::new(n, r).map_err(err)?;
    let ext = tower.ext();
    let alpha = match alpha.trim().trim_start_matches("0x") {
        "" => ext
            .elements()
            .find(|&a| tower.degree_over(a) == r)
            .ok_or("no element of degree r")?,
        hex => {
            let bits = u64::from_str_radix(hex, 16).map_err(|_| format!("`{hex}` is not hexadecimal"))?;
            ext.elem(bits).map_err(err)?
        }
    };
    let spec = GoppaSpec::from_root(&tower, alpha).map_err(err)?;
    let code = build_goppa(&spec, &tower).map_err(err)?;
    let extended = code.extend();
    let weights = extended.weight_enumerator().map_err(err)?;
    Ok(json!({
        "n": n,
        "r": r,
        "alpha": alpha.to_string(),
        "goppa_polynomial": spec.g.to_string(),
        "length": extended.length(),
        "dimension": extended.dimension(),
        "minimum_distance": extended.minimum_distance().map_err(err)?,
        "weights": weights,
    })
    .to_string())
}

fn js(out: Out) -> Result<String, JsValue> {
    out.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound_table(n: u32, r_list: &str) -> Result<String, JsValue> {
    js(bound_table_json(n, r_list))
}

#[wasm_bindgen]
pub fn orbits(n: u32, r: u32, pgammal: bool, elements: bool) -> Result<String, JsValue> {
    js(orbits_json(n, r, pgammal, elements))
}

#[wasm_bindgen]
pub fn goppa_code(n: u32, r: u32, alpha: &str) -> Result<String, JsValue> {
    js(goppa_json(n, r, alpha))
}
