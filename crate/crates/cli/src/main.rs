//! `goppa`: bounds on inequivalent extended binary Goppa codes, bound
//! tables, brute-force verification suites, orbit listings and codes.
//!
//! Exit status: 0 on success, 1 on invalid input (including hypothesis
//! violations and guard refusals), 2 when an internal invariant or a
//! verification check fails.

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use goppa_core::enumeration::verify::{run_suite, Suite, SuiteOptions};
use goppa_core::enumeration::{self, Domain, Group, POLYNOMIAL_DOMAIN_CEILING};
use goppa_core::action::PGL_FIELD_CEILING;
use goppa_core::gf2field::{make_field, parse_binary_poly, FieldCtx, FieldElem, Tower};
use goppa_core::goppa::{build_goppa, GoppaSpec};
use goppa_core::polyq::Parameters;
use goppa_core::Error;

#[derive(Parser, Debug)]
#[command(name = "goppa", version, about = "Orbit counting and bounds for extended binary Goppa codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Lower the ceiling on log2(q) for group enumeration (max 16).
    #[arg(long, value_name = "BITS", global = true)]
    max_field_bits: Option<u32>,

    /// Lower the ceiling on log2(q^r) for exhaustive domains (max 20).
    #[arg(long, value_name = "BITS", global = true)]
    max_domain_bits: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on inequivalent extended codes of length 2^n + 1, degree r.
    Bound(NR),
    /// Bounds for several r at fixed n.
    Table {
        #[arg(long)]
        n: u32,
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
    },
    /// Run a brute-force verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        nr: NR,
        /// Random polynomials drawn by sampling suites.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Refuse parameters outside the bound's hypotheses.
        #[arg(long)]
        strict: bool,
    },
    /// List orbit representatives over GF(q).
    Orbits {
        /// Field size, a power of two.
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        q: Option<u64>,
        /// log2 of the field size.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = GroupArg::Pgl)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = DomainArg::Polynomials)]
        domain: DomainArg,
        #[arg(long)]
        strict: bool,
    },
    /// Build the Goppa code defined by a root alpha in GF(2^(nr)).
    Goppa {
        #[command(flatten)]
        nr: NR,
        /// alpha as a hexadecimal bit pattern in the polynomial basis.
        #[arg(long)]
        alpha: String,
        /// Include the generator matrix in plain output.
        #[arg(long)]
        generator: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Describe GF(2^m) for a modulus, or for the default modulus of degree n.
    FieldInfo {
        /// e.g. "x^3+x+1" or the LSB-first bit-string "1101".
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        modulus: Option<String>,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct NR {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    Pgl,
    Pgammal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Polynomials,
    Elements,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Why a run stopped.
enum Failure {
    Usage(String),
    Core(Error),
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Guards {
    field_bits: u32,
    domain_bits: u32,
}

impl Guards {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let pick = |given: Option<u32>, ceiling: u32, flag: &str| match given {
            Some(v) if v > ceiling => Err(Failure::Usage(format!(
                "--{flag} {v} would raise the built-in ceiling {ceiling}"
            ))),
            Some(v) => Ok(v),
            None => Ok(ceiling),
        };
        Ok(Guards {
            field_bits: pick(cli.max_field_bits, PGL_FIELD_CEILING, "max-field-bits")?,
            domain_bits: pick(cli.max_domain_bits, POLYNOMIAL_DOMAIN_CEILING, "max-domain-bits")?,
        })
    }

    fn field(&self, n: u32) -> Result<(), Failure> {
        if n > self.field_bits {
            return Err(Failure::Core(Error::GuardExceeded {
                what: "log2(q)",
                value: n.to_string(),
                ceiling: self.field_bits.to_string(),
            }));
        }
        Ok(())
    }

    fn domain(&self, n: u32, r: u32) -> Result<(), Failure> {
        self.field(n)?;
        let bits = n as u64 * r as u64;
        if bits > self.domain_bits as u64 {
            return Err(Failure::Core(Error::GuardExceeded {
                what: "log2(q^r)",
                value: bits.to_string(),
                ceiling: self.domain_bits.to_string(),
            }));
        }
        Ok(())
    }
}

fn params(n: u32, r: u32, strict: bool) -> Result<Parameters, Failure> {
    Ok(if strict { Parameters::strict(n, r)? } else { Parameters::relaxed(n, r)? })
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(v) = std::env::var("GOPPA_WORKERS") else {
        return Ok(());
    };
    let workers: usize = v
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| Failure::Usage(format!("GOPPA_WORKERS must be a positive integer (got `{v}`)")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start {workers} workers: {e}")))
}

fn parse_alpha(s: &str, ext: &FieldCtx) -> Result<FieldElem, Failure> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    let bits = u64::from_str_radix(digits, 16)
        .map_err(|_| Failure::Usage(format!("--alpha `{s}` is not a hexadecimal number")))?;
    Ok(ext.elem(bits)?)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let guards = Guards::new(cli)?;
    configure_workers()?;
    let fmt = cli.format;
    match &cli.command {
        Command::Bound(NR { n, r }) => {
            let rep = enumeration::bound(&Parameters::strict(*n, *r)?)?;
            Ok(render::bound(&rep, fmt))
        }
        Command::Table { n, r } => {
            let table = enumeration::make_table(*n, r)?;
            if fmt == Format::Csv {
                for (r, why) in table.rejected() {
                    eprintln!("r = {r} rejected: {why}");
                }
            }
            Ok(render::table(&table, fmt))
        }
        Command::Verify {
            suite,
            nr: NR { n, r },
            samples,
            seed,
            strict,
        } => {
            let p = params(*n, *r, *strict)?;
            match suite {
                Suite::Bijection | Suite::OrbitCount => guards.domain(*n, *r)?,
                Suite::FixedOrbits | Suite::Stabilizer => guards.field(*n)?,
            }
            let opts = SuiteOptions {
                samples: *samples,
                seed: *seed,
            };
            let rep = run_suite(*suite, &p, opts)?;
            let out = render::suite(&rep, fmt);
            if rep.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::ChecksFailed(format!("suite {suite} had failing checks")))
            }
        }
        Command::Orbits {
            q,
            n,
            r,
            group,
            domain,
            strict,
        } => {
            let n = match (q, n) {
                (_, Some(n)) => *n,
                (Some(q), None) if q.is_power_of_two() && *q >= 2 => q.trailing_zeros(),
                (Some(q), None) => return Err(Failure::Usage(format!("--q {q} is not a power of two >= 2"))),
                (None, None) => unreachable!("clap requires --q or --n"),
            };
            params(n, *r, *strict)?;
            guards.domain(n, *r)?;
            let field = make_field(n)?;
            let group = match group {
                GroupArg::Pgl => Group::Pgl,
                GroupArg::Pgammal => Group::PGammaL,
            };
            let domain = match domain {
                DomainArg::Polynomials => Domain::Polynomials,
                DomainArg::Elements => Domain::Elements,
            };
            let census = enumeration::orbit_census(&field, *r, group, domain)?;
            render::census(&census, &field, n, *r, fmt)
        }
        Command::Goppa {
            nr: NR { n, r },
            alpha,
            generator,
            strict,
        } => {
            params(*n, *r, *strict)?;
            guards.field(*n)?;
            let tower = Tower::new(*n, *r)?;
            let alpha = parse_alpha(alpha, tower.ext())?;
            let spec = GoppaSpec::from_root(&tower, alpha)?;
            let code = build_goppa(&spec, &tower)?;
            render::goppa(&spec, &code, *generator, fmt)
        }
        Command::FieldInfo { modulus, n } => {
            let field = match (modulus, n) {
                (Some(m), _) => FieldCtx::with_modulus(parse_binary_poly(m)?)?,
                (None, Some(n)) => FieldCtx::smallest(*n)?,
                (None, None) => unreachable!("clap requires --modulus or --n"),
            };
            Ok(render::field_info(&field, fmt))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
        Err(Failure::ChecksFailed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
