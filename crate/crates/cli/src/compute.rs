//! `orthoforms compute`: emit one artifact.

use std::fs;
use std::path::PathBuf;

use orthoforms_core::arith::Polynomial;
use orthoforms_core::graded::{hilbert_from_rational, WeightedPresentation};
use orthoforms_core::pipeline::{
    build_g2, build_g3, compute_delta60, compute_h, compute_r20, WeierstrassData,
};
use serde_json::json;

use crate::cache::Cache;
use crate::suites::load_or_compute_k120;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    G2,
    G3,
    H,
    R20,
    K120,
    Delta60,
    Hilbert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Binary,
}

#[derive(Debug, Clone)]
pub struct ComputeOptions {
    pub target: Target,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub truncate: usize,
    pub cache: Cache,
}

pub fn target_polynomial(target: Target, cache: &Cache) -> Result<Polynomial, CliError> {
    let u = WeierstrassData::Generic;
    Ok(match target {
        Target::G2 => build_g2(&u),
        Target::G3 => build_g3(&u),
        Target::H => compute_h(&u)?,
        Target::R20 => compute_r20(&u)?,
        Target::K120 => load_or_compute_k120(cache)?,
        Target::Delta60 => {
            let k = load_or_compute_k120(cache)?;
            compute_delta60(&k, &compute_r20(&u)?)?.normalized
        }
        Target::Hilbert => return Err(CliError::Usage("hilbert is not a polynomial".into())),
    })
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::G2 => "g2",
        Target::G3 => "g3",
        Target::H => "h",
        Target::R20 => "r20",
        Target::K120 => "k120",
        Target::Delta60 => "delta60",
        Target::Hilbert => "hilbert",
    }
}

/// Render the artifact. Binary output goes to `out`; everything else is
/// returned for printing (and also written to `out` when given).
pub fn run(opts: &ComputeOptions) -> Result<Option<String>, CliError> {
    let name = target_name(opts.target);
    if opts.format == Format::Binary && opts.out.is_none() {
        return Err(CliError::Usage("--format binary requires --out".into()));
    }
    let rendered = if opts.target == Target::Hilbert {
        if opts.format == Format::Binary {
            return Err(CliError::Usage("hilbert has no binary format".into()));
        }
        let series: Vec<_> = [
            WeightedPresentation::characters_ring(),
            WeightedPresentation::trivial_character_ring(),
            WeightedPresentation::free_ring(),
        ]
        .into_iter()
        .map(|p| hilbert_from_rational(&p, opts.truncate).map(|s| (p.name, s.coeffs)))
        .collect::<Result<_, _>>()?;
        match opts.format {
            Format::Json => {
                let obj: serde_json::Map<_, _> = series
                    .into_iter()
                    .map(|(n, c)| (n, json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
                    .collect();
                let v = json!({ "target": name, "truncate": opts.truncate, "series": obj });
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
            _ => series
                .into_iter()
                .map(|(n, c)| {
                    let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("{n}: {}\n", cs.join(" "))
                })
                .collect(),
        }
    } else {
        let p = target_polynomial(opts.target, &opts.cache)?;
        match opts.format {
            Format::Binary => {
                write(opts.out.as_ref().unwrap(), &p.to_binary())?;
                return Ok(None);
            }
            Format::Text => p.to_canonical_string() + "\n",
            Format::Json => {
                let v = json!({
                    "target": name,
                    "variables": p.space().names(),
                    "weights": p.space().weights(),
                    "weighted_degree": p.weighted_degree(),
                    "terms": p.len(),
                    "sha256": p.content_hash(),
                    "polynomial": p.to_canonical_string(),
                });
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
        }
    };
    if let Some(out) = &opts.out {
        write(out, rendered.as_bytes())?;
        return Ok(None);
    }
    Ok(Some(rendered))
}

fn write(path: &PathBuf, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}
