use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use qdiamond::congruence::{
    gen_family, named_identity, scan_congruences, verify_all, verify_identity, ExpansionCache, Family,
    GeneratingFunction, ScanRequest, Status,
};
use qdiamond::diamond::count_range;
use qdiamond::operators::{eigen_check, Character, EigenOutcome, HeckeContext};
use qdiamond::series::write_csv;
use qdiamond::{broken_diamond_gf, expand_spec, CoefficientRing, ProductSpec, Result, TruncatedSeries};

#[derive(Parser)]
#[command(name = "qdiamond", version, about = "q-series expansions and congruence checks for broken k-diamond partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product such as "1 * q^0 * M(1)^1 * P(1)^-2 * M(5)^-1".
    Expand {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: usize,
        /// 0 for exact integers.
        #[arg(long = "mod", default_value_t = 0)]
        modulus: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand the broken k-diamond generating function.
    Delta {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        order: usize,
        #[arg(long = "mod", default_value_t = 0)]
        modulus: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a congruence family. Exit status 0 iff every progression passes.
    Verify {
        /// main_theorem, chan, radu_sellers, paule_radu, fifteen, hs_mod2, ap_delta1
        #[arg(long)]
        family: String,
        /// e.g. "l=2" or "p=13"
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        order: u64,
    },
    /// Check one of the built-in mod 3 identities.
    VerifyIdentity {
        /// lemma31, radu-base, nine-generate, eightyone-generate, final:<l>, cube
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: usize,
    },
    /// Hecke eigenform check; prints the eigenvalue.
    HeckeCheck {
        /// Product in the expand grammar; `psi(d)^e` is accepted, e.g. "q*psi^8".
        #[arg(long)]
        series: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        weight: u32,
        #[arg(long)]
        order: usize,
        /// Use the principal character mod this level instead of the trivial one.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long = "mod", default_value_t = 0)]
        modulus: u64,
    },
    /// Brute-force Delta_k(n) for n <= max-n, as CSV.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Search for vanishing progressions; prints JSON lines.
    Scan {
        #[arg(long)]
        k: u32,
        #[arg(long = "mod")]
        modulus: u32,
        #[arg(long = "a-max")]
        a_max: u64,
        #[arg(long)]
        order: u64,
        #[arg(long = "min-samples", default_value_t = 50)]
        min_samples: u64,
        #[arg(long = "n-min", default_value_t = 0)]
        n_min: u64,
    },
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn dump(series: &TruncatedSeries, path: Option<&PathBuf>) -> Result<()> {
    let mut out = output(path)?;
    write_csv(series, &mut out)?;
    out.flush()?;
    Ok(())
}

fn json_line<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    let line = serde_json::to_string(value).map_err(|e| qdiamond::Error::Parse(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Expand { spec, order, modulus, out } => {
            let spec: ProductSpec = spec.parse()?;
            let series = expand_spec(&spec, order, CoefficientRing::new(modulus)?)?;
            dump(&series, out.as_ref())?;
        }
        Command::Delta { k, order, modulus, out } => {
            let series = broken_diamond_gf(k, order, CoefficientRing::new(modulus)?)?;
            dump(&series, out.as_ref())?;
        }
        Command::Verify { family, params, order } => {
            let family = Family::parse(&family, &params)?;
            let congruences = gen_family(family)?;
            let cache = ExpansionCache::new();
            let reports = verify_all(&congruences, order, &cache)?;
            let mut out = io::stdout().lock();
            for r in &reports {
                json_line(&mut out, r)?;
            }
            writeln!(out, "# {:<40} {:>10} {:>6}  counterexample", "congruence", "samples", "status")?;
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                let ce = r
                    .counterexample
                    .as_ref()
                    .map(|s| format!("n={} (exponent {}) residue {}", s.n, s.exponent, s.value))
                    .unwrap_or_default();
                writeln!(out, "# {:<40} {:>10} {:>6}  {ce}", r.congruence.to_string(), r.samples, status)?;
            }
            return Ok(reports.iter().all(|r| r.status == Status::Pass));
        }
        Command::VerifyIdentity { name, order } => {
            let check = named_identity(&name, order)?;
            let report = verify_identity(&check, &ExpansionCache::new())?;
            let mut out = io::stdout().lock();
            json_line(&mut out, &report)?;
            return Ok(report.equal);
        }
        Command::HeckeCheck { series, p, weight, order, level, modulus } => {
            let spec: ProductSpec = series.parse()?;
            let f = expand_spec(&spec, order, CoefficientRing::new(modulus)?)?;
            let character = match level {
                Some(n) => Character::principal(n)?,
                None => Character::trivial(),
            };
            let ctx = HeckeContext::new(weight, character)?;
            match eigen_check(&f, p, &ctx, order / p as usize)? {
                EigenOutcome::Eigenvalue(lambda) => println!("{lambda}"),
                EigenOutcome::Failure { index } => {
                    eprintln!("not an eigenform of T({p}): proportionality fails at q^{index}");
                    return Ok(false);
                }
            }
        }
        Command::Oracle { k, max_n } => {
            let counts = count_range(k, max_n)?;
            let mut out = io::stdout().lock();
            writeln!(out, "n,delta")?;
            for (n, c) in counts.iter().enumerate() {
                writeln!(out, "{n},{}", BigInt::from(c.clone()))?;
            }
        }
        Command::Scan { k, modulus, a_max, order, min_samples, n_min } => {
            let mut req = ScanRequest::new(GeneratingFunction::BrokenDiamond(k), modulus, a_max, order);
            req.min_samples = min_samples;
            req.n_min = n_min;
            let hits = scan_congruences(&req, &ExpansionCache::new())?;
            let mut out = io::stdout().lock();
            for h in &hits {
                json_line(&mut out, h)?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
