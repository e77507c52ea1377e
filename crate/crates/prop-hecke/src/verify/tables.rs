//! JSON tables of central elements, Bernstein basis expansions and the
//! supersingular classification.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::ElementJson;
use crate::modules::classify;
use crate::root_datum::MAX_RANK;

use super::{build_context, SuiteConfig};

pub const TABLE_KINDS: &[&str] = &["z", "bernstein-basis", "classification"];

#[derive(Serialize)]
struct ZRow {
    lambda: Vec<i32>,
    generic: ElementJson,
    charp: ElementJson,
}

#[derive(Serialize)]
struct BRow {
    w: crate::extended_group::TElemJson,
    expansion: ElementJson,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("table serializes") + "\n";
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Write `<label>_q<q>_<kind>.json` into `out_dir` for each selected kind and
/// return the paths written. An empty selection writes nothing.
pub fn emit_tables(cfg: &SuiteConfig, out_dir: &Path, kinds: &[String]) -> Result<Vec<PathBuf>> {
    for k in kinds {
        if !TABLE_KINDS.contains(&k.as_str()) {
            return Err(Error::Config(format!("unknown table {k:?}; expected one of {}", TABLE_KINDS.join(", "))));
        }
    }
    if kinds.is_empty() {
        return Ok(Vec::new());
    }
    let ctx = build_context(cfg)?;
    let b = &ctx.b;
    let h = &*b.h;
    let rd = b.rd();
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let stem = format!("{}_q{}", rd.label, cfg.q);
    let mut written = Vec::new();
    for kind in TABLE_KINDS.iter().filter(|k| kinds.iter().any(|x| x == *k)) {
        let path = out_dir.join(format!("{stem}_{kind}.json"));
        match *kind {
            "z" => {
                let mut rows = Vec::new();
                for lam in b.dominant_up_to(cfg.max_len, 1) {
                    let z = b.central(&lam, &[0; MAX_RANK])?;
                    let zp = h.specialize(&h.charp, &z)?;
                    rows.push(ZRow {
                        lambda: lam[..rd.dim].to_vec(),
                        generic: h.to_json(&h.generic, &z),
                        charp: h.to_json(&h.charp, &zp),
                    });
                }
                write_json(&path, &rows)?;
            }
            "bernstein-basis" => {
                let sys = b.sys();
                let mut rows = Vec::new();
                for w in sys.elements_up_to(cfg.max_len.min(4), &sys.small_omegas(1)) {
                    let w = crate::extended_group::TElem::lift(&w);
                    let e = b.bernstein_basis(&w)?;
                    rows.push(BRow {
                        w: b.g().to_json(&w),
                        expansion: h.to_json(&h.generic, &e),
                    });
                }
                write_json(&path, &rows)?;
            }
            "classification" => {
                let p = ctx.pres.as_ref().map_err(|e| Error::Module(e.clone()))?;
                let cs = classify::classify(p, b, ctx.pi)?;
                let rows: Vec<_> = cs.iter().map(|c| c.to_json(p)).collect();
                write_json(&path, &rows)?;
            }
            _ => unreachable!(),
        }
        written.push(path);
    }
    Ok(written)
}
