use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use goppa_core::enumeration::verify::SuiteReport;
use goppa_core::enumeration::{csv_line, representative_poly, BoundReport, Domain, OrbitCensus, RowOutcome, Table, CSV_HEADER};
use goppa_core::gf2field::FieldCtx;
use goppa_core::goppa::{BinaryCode, GoppaSpec};
use std::sync::Arc;

use crate::{Failure, Format};

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn bound(rep: &BoundReport, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(rep),
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_line(rep)),
        Format::Plain => {
            let t = &rep.term_breakdown;
            let mut s = String::new();
            writeln!(s, "n = {}, r = {}, q = {}", rep.n, rep.r, rep.q).unwrap();
            writeln!(s, "fixed orbits      {}", rep.fixed_orbit_count).unwrap();
            writeln!(s, "PGL orbits        {}", rep.pgl_orbit_count).unwrap();
            writeln!(s, "fixed term        {}", t.fixed_term).unwrap();
            writeln!(s, "free term         {}", t.free_term).unwrap();
            writeln!(s, "bound             {}", rep.bound).unwrap();
            s
        }
    }
}

pub fn table(table: &Table, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(table),
        Format::Csv => table.to_csv(),
        Format::Plain => {
            let width = table
                .reports()
                .map(|r| r.bound.to_string().len())
                .max()
                .unwrap_or(5)
                .max(5);
            let mut s = String::new();
            writeln!(s, "n = {}", table.n).unwrap();
            writeln!(s, "{:>4}  {:>width$}", "r", "bound").unwrap();
            for row in &table.rows {
                match &row.outcome {
                    RowOutcome::Report(rep) => writeln!(s, "{:>4}  {:>width$}", row.r, rep.bound).unwrap(),
                    RowOutcome::Rejected(why) => writeln!(s, "{:>4}  rejected: {why}", row.r).unwrap(),
                }
            }
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn suite(rep: &SuiteReport, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(rep),
        Format::Csv => {
            let mut s = String::from("check,expected,observed,passed\n");
            for c in &rep.checks {
                writeln!(s, "{},{},{},{}", csv_field(&c.name), csv_field(&c.expected), csv_field(&c.observed), c.passed)
                    .unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            writeln!(s, "suite {}, n = {}, r = {}", rep.suite, rep.n, rep.r).unwrap();
            for c in &rep.checks {
                if c.passed {
                    writeln!(s, "PASS  {}: {}", c.name, c.observed).unwrap();
                } else {
                    writeln!(s, "FAIL  {}: {} (expected {})", c.name, c.observed, c.expected).unwrap();
                }
            }
            let ok = rep.checks.iter().filter(|c| c.passed).count();
            writeln!(s, "{ok} of {} checks passed", rep.checks.len()).unwrap();
            s
        }
    }
}

fn bits_to_hex(bits: &str) -> String {
    let v = bits
        .chars()
        .enumerate()
        .fold(0u64, |acc, (i, c)| acc | (((c == '1') as u64) << i));
    format!("{v:#x}")
}

pub fn census(census: &OrbitCensus, field: &Arc<FieldCtx>, n: u32, r: u32, fmt: Format) -> Result<String, Failure> {
    let label = |o: &goppa_core::enumeration::OrbitSummary| -> Result<String, Failure> {
        Ok(match census.domain {
            Domain::Polynomials => representative_poly(field, o)?.to_string(),
            Domain::Elements => bits_to_hex(&o.representative[0]),
        })
    };
    Ok(match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(census).expect("serializable");
            v["n"] = json!(n);
            v["r"] = json!(r);
            v["count"] = json!(census.count());
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("index,size,representative\n");
            for (i, o) in census.orbits.iter().enumerate() {
                writeln!(s, "{},{},{}", i + 1, o.size, o.representative.join(" ")).unwrap();
            }
            s
        }
        Format::Plain => {
            let group = match census.group {
                goppa_core::enumeration::Group::Pgl => "PGL",
                goppa_core::enumeration::Group::PGammaL => "PΓL",
            };
            let domain = match census.domain {
                Domain::Polynomials => format!("I_{r}"),
                Domain::Elements => format!("S_{r}"),
            };
            let mut s = String::new();
            writeln!(
                s,
                "{group}-orbits on {domain} over GF(2^{n}): {} orbits covering {} points",
                census.count(),
                census.domain_size
            )
            .unwrap();
            writeln!(s, "field modulus {}", field.modulus_string()).unwrap();
            for (i, o) in census.orbits.iter().enumerate() {
                writeln!(s, "{:>5}  size {:>6}  {}", i + 1, o.size, label(o)?).unwrap();
            }
            s
        }
    })
}

pub fn goppa(spec: &GoppaSpec, code: &BinaryCode, with_generator: bool, fmt: Format) -> Result<String, Failure> {
    let ext = code.extend();
    let hist = ext.weight_enumerator()?;
    let dmin = code.minimum_distance()?;
    let ext_dmin = ext.minimum_distance()?;
    Ok(match fmt {
        Format::Json => to_json(&json!({
            "n": spec.n,
            "r": spec.r,
            "alpha": spec.alpha.to_string(),
            "goppa_polynomial": spec.g.to_string(),
            "g": spec.g,
            "code": code,
            "minimum_distance": dmin,
            "extended": ext,
            "extended_minimum_distance": ext_dmin,
            "weight_enumerator": hist,
        })),
        Format::Csv => {
            let mut s = String::from("weight,count\n");
            for (w, c) in hist.iter().enumerate() {
                writeln!(s, "{w},{c}").unwrap();
            }
            s
        }
        Format::Plain => {
            let d = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let mut s = String::new();
            writeln!(s, "GF(2^{}) in GF(2^{}), alpha = {}", spec.n, spec.n * spec.r, spec.alpha).unwrap();
            writeln!(s, "g = {}", spec.g).unwrap();
            writeln!(s, "code      length {:>4}  dimension {:>3}  distance {}", code.length(), code.dimension(), d(dmin))
                .unwrap();
            writeln!(s, "extended  length {:>4}  dimension {:>3}  distance {}", ext.length(), ext.dimension(), d(ext_dmin))
                .unwrap();
            let terms: Vec<String> = hist
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, c)| format!("{w}:{c}"))
                .collect();
            writeln!(s, "weights   {}", terms.join(" ")).unwrap();
            if with_generator {
                writeln!(s, "generator of the extended code:").unwrap();
                s.push_str(&ext.generator_text());
            }
            s
        }
    })
}

pub fn field_info(field: &FieldCtx, fmt: Format) -> String {
    let prim = field.primitive();
    let info = json!({
        "degree": field.degree(),
        "modulus": field.modulus_string(),
        "modulus_bits": field.modulus_bits(),
        "size": field.size().to_string(),
        "primitive": prim.to_string(),
        "x_order": field.element_order(field.generator()).ok(),
    });
    match fmt {
        Format::Json => to_json(&info),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in info.as_object().expect("object") {
                writeln!(s, "{k},{}", v.as_str().map_or(v.to_string(), str::to_owned)).unwrap();
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            writeln!(s, "degree        {}", field.degree()).unwrap();
            writeln!(s, "modulus       {}", field.modulus_string()).unwrap();
            writeln!(s, "bits          {}", field.modulus_bits()).unwrap();
            writeln!(s, "size          {}", field.size()).unwrap();
            writeln!(s, "primitive     {prim}").unwrap();
            if let Some(o) = info["x_order"].as_u64() {
                writeln!(s, "order of x    {o}").unwrap();
            }
            s
        }
    }
}
