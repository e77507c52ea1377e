use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use prop_hecke::bernstein::Bernstein;
use prop_hecke::modules::{classify, weight, Presentation};
use prop_hecke::root_datum::{Facet, RootDatum, Sign};
use prop_hecke::verify::{self, Format, ModeSel, SuiteConfig, TABLE_KINDS};

/// Exact computations in pro-p Iwahori Hecke algebras of split groups.
///
/// The cocycle cache lives in $PROP_HECKE_CACHE_DIR when that variable is set.
#[derive(Parser)]
#[command(name = "prop-hecke", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Group label: SL2, GL2, PGL2, SL3, GL3, A2, B2, Sp4, SO5, G2, or a product such as SL2xSL2.
    #[arg(long, default_value = "SL2")]
    group: String,
    /// Semisimple rank, for labels without a size such as "A" or "SL".
    #[arg(long)]
    rank: Option<usize>,
    /// Size of the residue field.
    #[arg(long, default_value_t = 3)]
    q: u32,
    /// Coefficient mode: generic, charp or both.
    #[arg(long, default_value = "both")]
    mode: String,
    /// Scalar by which the uniformizer direction of Ω acts, for data with a central torus.
    #[arg(long, allow_hyphen_values = true)]
    pi_scalar: Option<i64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the root datum as JSON.
    Datum {
        #[command(flatten)]
        common: Common,
    },
    /// Print a Bernstein element B_F^σ(λ) as JSON.
    Bernstein {
        #[command(flatten)]
        common: Common,
        /// Facet as 1-based simple root indices, e.g. "1,2"; empty for the chamber.
        #[arg(long, default_value = "")]
        facet: String,
        /// Sign: + or -.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        /// Cocharacter coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Run the verification suite. Exit status 0 iff every selected check passes.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check ids; same as --checks.
        #[arg(value_name = "CHECK")]
        positional: Vec<String>,
        /// Comma-separated check ids, or "all".
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Length bound L (at least 2).
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format: json, tsv or pretty.
        #[arg(long, default_value = "pretty")]
        format: String,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Random triples for the relation check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall times per check (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
        /// Drop one term from the quadratic relation; for testing the suite itself.
        #[arg(long, hide = true)]
        corrupt_quadratic: bool,
    },
    /// Classify simple supersingular modules and print them as JSON.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare (1⊗1)z_λ with (1⊗1)B_{F_χ}^+(λ) in the weight module of χ.
    Satake {
        #[command(flatten)]
        common: Common,
        /// Weight character "a,b/1,2": exponents of χ̄ on the coordinate
        /// cocharacters, then the simple roots (1-based) in Π_χ.
        #[arg(long)]
        chi: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Write JSON tables <group>_q<q>_<kind>.json.
    EmitTables {
        #[command(flatten)]
        common: Common,
        /// Comma-separated kinds (z, bernstein-basis, classification); all when omitted.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

fn datum(c: &Common) -> Result<Arc<RootDatum>> {
    Ok(Arc::new(RootDatum::build(&c.group, c.rank, c.q)?))
}

fn suite_config(c: &Common) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::new(&c.group, c.q);
    cfg.rank = c.rank;
    cfg.mode = ModeSel::parse(&c.mode)?;
    cfg.pi_scalar = c.pi_scalar;
    Ok(cfg)
}

/// Write to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Datum { common } => {
            print_json(&datum(&common)?.to_json())?;
        }
        Cmd::Bernstein { common, facet, sign, lambda } => {
            let rd = datum(&common)?;
            let mode = ModeSel::parse(&common.mode)?;
            let f = Facet::parse(&facet, rd.rank)?;
            let s = Sign::parse(&sign)?;
            let lam = rd.parse_cw(&lambda)?;
            let b = Bernstein::for_datum(rd);
            let h = &b.h;
            let e = b.bernstein_lam(f, s, &lam)?;
            let generic = h.to_json(&h.generic, &e);
            let charp = || -> Result<_> { Ok(h.to_json(&h.charp, &h.specialize(&h.charp, &e)?)) };
            match mode {
                ModeSel::Generic => print_json(&generic)?,
                ModeSel::Charp => print_json(&charp()?)?,
                ModeSel::Both => print_json(&vec![generic, charp()?])?,
            }
        }
        Cmd::Verify {
            common,
            positional,
            checks,
            max_len,
            seed,
            format,
            jobs,
            samples,
            out,
            timing,
            corrupt_quadratic,
        } => {
            let mut cfg = suite_config(&common)?;
            cfg.checks = positional.into_iter().chain(checks).filter(|s| !s.is_empty()).collect();
            cfg.max_len = max_len;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.samples = samples;
            cfg.timing = timing;
            cfg.corrupt_quadratic = corrupt_quadratic;
            cfg.pi_scalar.get_or_insert(1);
            let fmt = Format::parse(&format)?;
            let report = verify::run_suite(&cfg)?;
            let text = report.render(fmt);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => emit(&text)?,
            }
            return Ok(report.exit_code());
        }
        Cmd::Classify { common } => {
            let b = Bernstein::for_datum(datum(&common)?);
            let p = Presentation::new(b.h.clone())?;
            let cs = classify::classify(&p, &b, common.pi_scalar)?;
            let rows: Vec<_> = cs.iter().map(|c| c.to_json(&p)).collect();
            print_json(&rows)?;
        }
        Cmd::Satake { common, chi, lambda } => {
            let rd = datum(&common)?;
            let lam = rd.parse_cw(&lambda)?;
            let b = Bernstein::for_datum(rd);
            let chi = weight::WeightCharacter::parse(&b, &chi)?;
            let res = weight::satake_check(&b, &chi, &lam)?;
            let r = &b.h.charp;
            println!("χ = {}, λ = {}", chi.format(&b), b.rd().fmt_cw(&lam));
            println!("(1⊗1) z_λ        = {}", weight::format_vec(&b, r, &res.lhs));
            println!("(1⊗1) B_F_χ^+(λ) = {}", weight::format_vec(&b, r, &res.rhs));
            println!("{}", if res.equal { "PASS" } else { "FAIL" });
            return Ok(if res.equal { 0 } else { 1 });
        }
        Cmd::EmitTables { common, checks, out, max_len } => {
            let mut cfg = suite_config(&common)?;
            cfg.max_len = max_len;
            cfg.pi_scalar.get_or_insert(1);
            let kinds: Vec<String> = match checks {
                None => TABLE_KINDS.iter().map(|s| s.to_string()).collect(),
                Some(s) => s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect(),
            };
            if kinds.iter().any(|k| k == "all") {
                bail!("name the table kinds explicitly or omit --checks");
            }
            for path in verify::emit_tables(&cfg, &out, &kinds)? {
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
