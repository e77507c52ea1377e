//! Acceptance criteria 1 to 10. Each prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::sync::Arc;
use std::time::Instant;

use prop_hecke::bernstein::Bernstein;
use prop_hecke::modules::{classify, Presentation};
use prop_hecke::root_datum::RootDatum;
use prop_hecke::verify::{run_suite, ModeSel, Status, SuiteConfig, VerificationReport};

struct Outcome {
    ok: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { ok: true, detail: Vec::new() }
    }

    fn run(&mut self, group: &str, q: u32, max_len: usize, checks: &[&str], tweak: impl FnOnce(&mut SuiteConfig)) -> Option<VerificationReport> {
        let mut cfg = SuiteConfig::new(group, q);
        cfg.max_len = max_len;
        cfg.checks = checks.iter().map(|s| s.to_string()).collect();
        cfg.pi_scalar = Some(1);
        cfg.jobs = 4;
        tweak(&mut cfg);
        let report = match run_suite(&cfg) {
            Ok(r) => r,
            Err(e) => {
                self.ok = false;
                self.detail.push(format!("{group} q={q}: {e}"));
                return None;
            }
        };
        for c in &report.checks {
            if c.status != Status::Pass {
                self.ok = false;
                self.detail.push(format!(
                    "{group} q={q} {}: {} {}",
                    c.name,
                    c.status,
                    c.counterexample.clone().or(c.note.clone()).unwrap_or_default()
                ));
            }
        }
        Some(report)
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.ok = false;
            self.detail.push(msg());
        }
    }
}

const RANK_LE_2: &[&str] = &["SL2", "GL2", "PGL2", "A2", "B2"];

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        for q in [3, 4, 5] {
            let start = Instant::now();
            if let Some(r) = o.run(g, q, 5, &["relations"], |c| {
                c.mode = ModeSel::Both;
                c.samples = 1000;
            }) {
                let inst = r.checks[0].instances;
                o.require(inst >= 2000, || format!("{g} q={q}: only {inst} instances"));
            }
            let secs = start.elapsed().as_secs();
            o.require(secs <= 120, || format!("{g} q={q}: {secs} s"));
        }
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        o.run(g, 3, 8, &["lemma-2.3"], |_| {});
    }
    o.run("SL2", 5, 8, &["lemma-2.3"], |_| {});
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        o.run(g, 3, 8, &["eq-2.1", "prop-3.2"], |_| {});
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for (g, l, variants) in [("SL2", 8, 4), ("GL2", 8, 4), ("A2", 8, 8), ("B2", 6, 8)] {
        if let Some(r) = o.run(g, 3, l, &["lemma-3.4"], |_| {}) {
            let note = r.checks[0].note.clone().unwrap_or_default();
            o.require(note.starts_with(&format!("{variants} variants per orbit")), || format!("{g}: {note}"));
        }
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        o.run(g, 3, 6, &["prop-2.10", "thm-2.14-partial"], |_| {});
    }
    o.run("SL2", 5, 6, &["prop-2.10", "thm-2.14-partial"], |_| {});
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        o.run(g, 3, 6, &["eq-5.1", "lemma-5.3", "fact-iii"], |_| {});
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for g in ["SL2", "GL2"] {
        for q in [3, 5] {
            o.run(g, q, 6, &["remark-4.2"], |_| {});
        }
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for g in ["SL2", "PGL2", "GL2", "SL3"] {
        for q in [3, 5] {
            if let Some(r) = o.run(g, q, 6, &["lemma-5.12", "thm-5.14"], |_| {}) {
                if g != "SL3" {
                    let note = r.get("thm-5.14").and_then(|c| c.note.clone()).unwrap_or_default();
                    o.require(note.contains("brute force"), || format!("{g} q={q}: no brute-force comparison"));
                }
            }
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    for g in ["SL2", "SL3"] {
        for q in [3, 5] {
            o.run(g, q, 4, &["cor-5.16-enumeration"], |_| {});
            let b = Bernstein::for_datum(Arc::new(RootDatum::build(g, None, q).unwrap()));
            let p = Presentation::new(b.h.clone()).unwrap();
            match classify::classify(&p, &b, None) {
                Ok(cs) => {
                    o.require(!cs.is_empty(), || format!("{g} q={q}: empty classification"));
                    for c in &cs {
                        o.require(c.module.dim == 1, || format!("{g} q={q}: module of dimension {}", c.module.dim));
                    }
                }
                Err(e) => o.require(false, || format!("{g} q={q}: {e}")),
            }
        }
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    for g in RANK_LE_2 {
        o.run(g, 3, 6, &["lemma-1.2", "prop-1.3"], |_| {});
    }
    o
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation soundness", criterion_1),
        ("Bernstein integrality and support", criterion_2),
        ("ι_C on Bernstein and central elements", criterion_3),
        ("orbit sums across facets and signs", criterion_4),
        ("central elements mod p", criterion_5),
        ("Bernstein basis and filtration", criterion_6),
        ("weight modules", criterion_7),
        ("supersingular classification", criterion_8),
        ("dimension one for simply connected data", criterion_9),
        ("combinatorial layer", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2} {}: {} ({secs:.1} s)", i + 1, name, if o.ok { "PASS" } else { "FAIL" });
        for d in &o.detail {
            println!("    {d}");
        }
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
