//! The verification suite: named checks over a chosen root datum, run in a
//! fixed order with per-check seeded randomness.

mod checks;
mod tables;

use std::fmt::Write as _;
use std::hash::{BuildHasher, Hash, Hasher};
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;

pub use checks::Ctx;
pub use tables::{emit_tables, TABLE_KINDS};

/// Check identifiers in execution and report order.
pub const CHECK_IDS: &[&str] = &[
    "relations",
    "lemma-1.2",
    "prop-1.3",
    "lemma-2.3",
    "eq-2.1",
    "eq-2.4",
    "prop-2.10",
    "thm-2.14-partial",
    "lemma-3.1",
    "prop-3.2",
    "lemma-3.4",
    "lemma-3.8",
    "eq-3.1",
    "eq-5.1",
    "lemma-5.3",
    "fact-iii",
    "remark-4.2",
    "lemma-5.12",
    "thm-5.14",
    "cor-5.16-enumeration",
];

pub fn anchor(id: &str) -> &'static str {
    match id {
        "relations" => "associativity, braid and quadratic relations of the pro-p Iwahori Hecke algebra",
        "lemma-1.2" => "length of u·e^λ, and ε_C as the Ω-part determinant",
        "prop-1.3" => "distinguished coset representatives and their length properties",
        "lemma-2.3" => "integral, unitriangular Bernstein elements independent of the decomposition",
        "eq-2.1" => "ι_C exchanges the + and − Bernstein elements",
        "eq-2.4" => "product of Bernstein elements: q-power defect vanishing on common chambers",
        "prop-2.10" => "central elements z_λ: centrality and multiplicativity mod p",
        "thm-2.14-partial" => "ε_1 z_λ central and multiplicative in ε_1 H ε_1",
        "lemma-3.1" => "orbit sums have unit coefficients on the orbit and shorter support elsewhere",
        "prop-3.2" => "ι_C fixes the central orbit sums",
        "lemma-3.4" => "orbit sums independent of the facet and sign",
        "lemma-3.8" => "Levi Bernstein elements transported by j_F^+",
        "eq-3.1" => "length defect of F-positive translations computed in the Levi",
        "eq-5.1" => "Bernstein basis of distinguished elements and the τ round trip",
        "lemma-5.3" => "central generators raise the Bernstein filtration degree",
        "fact-iii" => "B_x0^+((m+1)λ) = z_λ^m B_x0^+(λ) mod p",
        "remark-4.2" => "z_λ acts on 1⊗1 of a weight module through B_{F_χ}^+(λ)",
        "lemma-5.12" => "twisted trivial and sign characters induce non-supersingular modules",
        "thm-5.14" => "supersingular modules are those with the central ideal acting by zero",
        "cor-5.16-enumeration" => "enumeration of simple supersingular modules",
        _ => "",
    }
}

fn canonical(id: &str) -> Option<&'static str> {
    let id = if id == "associativity" { "relations" } else { id };
    CHECK_IDS.iter().copied().find(|x| *x == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSel {
    Generic,
    Charp,
    Both,
}

impl ModeSel {
    pub fn parse(s: &str) -> Result<ModeSel> {
        match s {
            "generic" => Ok(ModeSel::Generic),
            "charp" | "char-p" => Ok(ModeSel::Charp),
            "both" => Ok(ModeSel::Both),
            _ => Err(Error::Parse(format!("unknown mode {s:?}; expected generic, charp or both"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json, tsv or pretty"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub group: String,
    pub rank: Option<usize>,
    pub q: u32,
    pub mode: ModeSel,
    pub max_len: usize,
    pub seed: u64,
    /// Empty or `["all"]` selects every check.
    pub checks: Vec<String>,
    pub jobs: usize,
    /// Scalar by which the central `ω̃` acts; only consulted when the
    /// presentation needs one.
    pub pi_scalar: Option<i64>,
    pub samples: usize,
    /// Largest `ℓ(e^{(m+1)λ})` evaluated by `fact-iii`; pairs beyond it make
    /// the check inconclusive.
    pub fact_iii_cap: usize,
    pub corrupt_quadratic: bool,
    /// Record wall-clock times. Off by default so reports are reproducible.
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(group: &str, q: u32) -> SuiteConfig {
        SuiteConfig {
            group: group.to_string(),
            rank: None,
            q,
            mode: ModeSel::Both,
            max_len: 6,
            seed: 0,
            checks: Vec::new(),
            jobs: 1,
            pi_scalar: None,
            samples: 1000,
            fact_iii_cap: usize::MAX,
            corrupt_quadratic: false,
            timing: false,
        }
    }

    pub fn selected(&self) -> Result<Vec<&'static str>> {
        if self.checks.is_empty() || self.checks.iter().any(|c| c == "all") {
            return Ok(CHECK_IDS.to_vec());
        }
        let mut want = Vec::new();
        for c in &self.checks {
            match canonical(c.trim()) {
                Some(id) => want.push(id),
                None => return Err(Error::Config(format!("unknown check {c:?}"))),
            }
        }
        Ok(CHECK_IDS.iter().copied().filter(|id| want.contains(id)).collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub instances: usize,
    pub counterexample: Option<String>,
    pub note: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub rank: usize,
    pub q: u32,
    pub mode: ModeSel,
    pub max_len: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        let name = canonical(name)?;
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Tsv => {
                let mut s = String::from("check\tstatus\tinstances\tcounterexample\tnote\n");
                for c in &self.checks {
                    let clean = |x: &Option<String>| x.clone().unwrap_or_default().replace(['\t', '\n'], " ");
                    let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", c.name, c.status, c.instances, clean(&c.counterexample), clean(&c.note));
                }
                s
            }
            Format::Pretty => {
                let mut s = format!(
                    "{} (rank {}), q = {}, mode {:?}, max length {}, seed {}\n",
                    self.group, self.rank, self.q, self.mode, self.max_len, self.seed
                );
                for c in &self.checks {
                    let _ = writeln!(s, "{:<22} {:<12} {:>7}  {}", c.name, c.status.to_string(), c.instances, c.anchor);
                    if let Some(x) = &c.counterexample {
                        let _ = writeln!(s, "    counterexample: {x}");
                    }
                    if let Some(n) = &c.note {
                        let _ = writeln!(s, "    note: {n}");
                    }
                    if let Some(ms) = c.wall_ms {
                        let _ = writeln!(s, "    {ms} ms");
                    }
                }
                let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
                let _ = writeln!(s, "{pass}/{} passed", self.checks.len());
                s
            }
        }
    }
}

fn check_seed(seed: u64, name: &str) -> u64 {
    let mut h = rustc_hash::FxBuildHasher.build_hasher();
    name.hash(&mut h);
    seed ^ h.finish()
}

pub fn build_context(cfg: &SuiteConfig) -> Result<Ctx> {
    if cfg.max_len < 2 {
        return Err(Error::Config("max length must be at least 2".into()));
    }
    let rd = Arc::new(RootDatum::build(&cfg.group, cfg.rank, cfg.q)?);
    Ok(Ctx::new(rd, cfg.corrupt_quadratic, cfg.pi_scalar))
}

fn run_one(ctx: &Ctx, cfg: &SuiteConfig, id: &str) -> checks::Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(cfg.seed, id));
    let l = cfg.max_len;
    match id {
        "relations" => checks::relations(ctx, &mut rng, cfg.samples, l.min(5), cfg.mode),
        "lemma-1.2" => checks::lemma_1_2(ctx, l.clamp(1, 4) as i32, l),
        "prop-1.3" => checks::prop_1_3(ctx, l, l.min(6)),
        "lemma-2.3" => checks::lemma_2_3(ctx, l),
        "eq-2.1" => checks::eq_2_1(ctx, l),
        "eq-2.4" => checks::eq_2_4(ctx, l.min(4)),
        "prop-2.10" => checks::prop_2_10(ctx, &mut rng, l, 20),
        "thm-2.14-partial" => checks::thm_2_14(ctx, &mut rng, l, 10),
        "lemma-3.1" => checks::lemma_3_1(ctx, &mut rng, l),
        "prop-3.2" => checks::prop_3_2(ctx, &mut rng, l),
        "lemma-3.4" => checks::lemma_3_4(ctx, &mut rng, l),
        "lemma-3.8" => checks::lemma_3_8(ctx, &mut rng, l, 20),
        "eq-3.1" => checks::eq_3_1(ctx, l),
        "eq-5.1" => checks::eq_5_1(ctx, &mut rng, l.min(6)),
        "lemma-5.3" => checks::lemma_5_3(ctx, &mut rng, l.min(6)),
        "fact-iii" => checks::fact_iii(ctx, 3, cfg.fact_iii_cap),
        "remark-4.2" => checks::remark_4_2(ctx, l),
        "lemma-5.12" => checks::lemma_5_12(ctx),
        "thm-5.14" => checks::thm_5_14(ctx, l),
        "cor-5.16-enumeration" => checks::cor_5_16(ctx),
        _ => unreachable!("unknown check id {id}"),
    }
}

/// Run the selected checks. Reports appear in [`CHECK_IDS`] order whatever
/// the thread count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let ids = cfg.selected()?;
    let ctx = build_context(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let checks = pool.install(|| {
        ids.iter()
            .map(|id| {
                let start = Instant::now();
                let out = run_one(&ctx, cfg, id);
                CheckReport {
                    name: id.to_string(),
                    anchor: anchor(id).to_string(),
                    status: out.status,
                    instances: out.instances,
                    counterexample: out.counterexample,
                    note: out.note,
                    seed: cfg.seed,
                    wall_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
                }
            })
            .collect()
    });
    Ok(VerificationReport {
        group: ctx.b.rd().label.clone(),
        rank: ctx.b.rd().rank,
        q: cfg.q,
        mode: cfg.mode,
        max_len: cfg.max_len,
        seed: cfg.seed,
        checks,
    })
}
