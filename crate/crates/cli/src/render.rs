use anyhow::{anyhow, Result};
use jclean_core::catalog::{self, CatalogRing};
use jclean_core::clean::Verdict;
use jclean_core::formal::FMContext;
use jclean_core::ring::{j_s_set, ElementId, FiniteRing};
use jclean_core::suite::{CensusRow, CheckReport, CENSUS_HEADER};
use serde::Serialize;

use crate::{Failure, Format};

/// `println!` that exits quietly once the reader has closed stdout.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Serialize)]
struct JsSet {
    s: String,
    members: Vec<String>,
}

#[derive(Serialize)]
struct AnalysisOut {
    schema: u32,
    ring: String,
    label: String,
    size: usize,
    commutative: bool,
    local: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    locality_witness: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residue_size: Option<usize>,
    units: Vec<String>,
    jacobson: Vec<String>,
    nilpotents: Vec<String>,
    idempotents: Vec<String>,
    center: Vec<String>,
    jacobson_is_nil: bool,
    weakly_bleached: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bleaching_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j_s: Option<JsSet>,
}

fn names(r: &FiniteRing, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| r.name(x).to_string()).collect()
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(","))
}

fn no_csv(what: &str) -> Failure {
    Failure::input(anyhow!("csv output is not available for {what}"))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(anyhow::Error::from)?;
    outln!("{text}");
    Ok(())
}

pub fn analysis(ring: &CatalogRing, s: Option<ElementId>, format: Format) -> Result<(), Failure> {
    let (r, an) = (&*ring.ring, &*ring.analysis);
    let j_s = match s {
        Some(s) => Some(JsSet {
            s: r.name(s).to_string(),
            members: names(r, &j_s_set(r, an, s)?),
        }),
        None => None,
    };
    let out = AnalysisOut {
        schema: 1,
        ring: ring.name.clone(),
        label: r.label().to_string(),
        size: r.size(),
        commutative: an.is_commutative,
        local: an.is_local,
        locality_witness: an
            .locality_witness
            .map(|(x, y)| [r.name(x).to_string(), r.name(y).to_string()]),
        residue_size: an.residue_size,
        units: names(r, &an.units()),
        jacobson: names(r, &an.jacobson()),
        nilpotents: names(r, &an.nilpotents()),
        idempotents: names(r, &an.idempotents()),
        center: names(r, &an.center()),
        jacobson_is_nil: an.jacobson_is_nil(),
        weakly_bleached: an.is_weakly_bleached,
        bleaching_failure: an.bleaching_failure.map(|f| {
            let map = if f.left_b {
                "r -> br - ra"
            } else {
                "r -> ar - rb"
            };
            format!(
                "a={}, b={}: {map} misses {}",
                r.name(f.a),
                r.name(f.b),
                r.name(f.missed)
            )
        }),
        j_s,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Csv => Err(no_csv("ring analysis")),
        Format::Table => {
            outln!("ring: {} ({})", out.ring, out.label);
            outln!("size: {}", out.size);
            outln!("commutative: {}", out.commutative);
            match &out.locality_witness {
                Some([x, y]) => outln!("local: false (non-units {x}, {y} sum to a unit)"),
                None => outln!("local: {}", out.local),
            }
            if let Some(k) = out.residue_size {
                outln!("residue field size: {k}");
            }
            outln!("units: {}", set(&out.units));
            outln!("J: {}", set(&out.jacobson));
            outln!("nilpotents: {}", set(&out.nilpotents));
            outln!("idempotents: {}", set(&out.idempotents));
            outln!("center: {}", set(&out.center));
            outln!("J nil: {}", out.jacobson_is_nil);
            match out.weakly_bleached {
                Some(b) => outln!("weakly bleached: {b}"),
                None => outln!("weakly bleached: n/a (not local)"),
            }
            if let Some(f) = &out.bleaching_failure {
                outln!("bleaching failure: {f}");
            }
            if let Some(js) = &out.j_s {
                outln!("J_s for s={}: {}", js.s, set(&js.members));
            }
            Ok(())
        }
    }
}

pub fn verdict(ctx: &FMContext, v: &Verdict, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => print_json(v),
        Format::Csv => Err(no_csv("matrix decisions")),
        Format::Table => {
            outln!("matrix: {}", ctx.render(&v.matrix));
            outln!("kind: {}", v.kind);
            outln!("clean: {}", v.clean);
            outln!(
                "decided by: {}",
                serde_json::to_value(v.decided_by)
                    .map_err(anyhow::Error::from)?
                    .as_str()
                    .unwrap_or("?")
            );
            if let Some(cert) = &v.certificate {
                let evidence =
                    serde_json::to_string(&cert.evidence).map_err(anyhow::Error::from)?;
                outln!("certificate: {evidence}");
                if let Some((e, w)) = cert.decomposition(ctx, &v.matrix) {
                    outln!("E = {}, W = {}", ctx.render(&e), ctx.render(&w));
                }
            }
            if let Some(agree) = v.agrees_with_oracle {
                outln!("agrees with oracle: {agree}");
            }
            Ok(())
        }
    }
}

pub fn reports(reports: &[CheckReport], format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for r in reports {
                outln!("{}", serde_json::to_string(r).map_err(anyhow::Error::from)?);
            }
        }
        Format::Csv => {
            outln!("check,ring,s,status,examined,hits,violations,certificates_verified,sampled,elapsed_ms");
            for r in reports {
                outln!(
                    "{},{},{},{},{},{},{},{},{},{:.1}",
                    r.check,
                    r.ring,
                    r.s_name,
                    r.status,
                    r.counts.examined,
                    r.counts.hits,
                    r.counts.violations,
                    r.counts.certificates_verified,
                    r.sampling.is_some(),
                    r.elapsed_ms
                );
            }
        }
        Format::Table => {
            outln!(
                "{:<6} {:<6} {:<5} {:<19} {:>9} {:>9} {:>10}",
                "check",
                "ring",
                "s",
                "status",
                "examined",
                "hits",
                "ms"
            );
            for r in reports {
                outln!(
                    "{:<6} {:<6} {:<5} {:<19} {:>9} {:>9} {:>10.1}",
                    r.check.as_str(),
                    r.ring,
                    r.s_name,
                    r.status.to_string(),
                    r.counts.examined,
                    r.counts.hits,
                    r.elapsed_ms
                );
                if let Some(c) = &r.counterexample {
                    outln!(
                        "       counterexample {}: {}",
                        c.rendered.join(" "),
                        c.explanation
                    );
                }
                if !r.passed() {
                    for n in &r.notes {
                        outln!("       {n}");
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn census(rows: &[CensusRow], format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => print_json(&rows),
        Format::Csv | Format::Table => {
            outln!("{CENSUS_HEADER}");
            for row in rows {
                outln!("{}", row.csv());
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    size: usize,
    commutative: bool,
    local: bool,
    description: &'static str,
}

pub fn catalog(format: Format) -> Result<(), Failure> {
    let entries: Vec<CatalogEntry> = catalog::NAMES
        .iter()
        .map(|&name| {
            let ring = catalog::get(name)?;
            Ok(CatalogEntry {
                name,
                size: ring.ring.size(),
                commutative: ring.analysis.is_commutative,
                local: ring.analysis.is_local,
                description: catalog::describe(name).unwrap_or(""),
            })
        })
        .collect::<Result<_, jclean_core::Error>>()?;
    match format {
        Format::Json => print_json(&entries),
        Format::Csv => {
            outln!("name,size,commutative,local,description");
            for e in &entries {
                outln!(
                    "{},{},{},{},\"{}\"",
                    e.name,
                    e.size,
                    e.commutative,
                    e.local,
                    e.description
                );
            }
            Ok(())
        }
        Format::Table => {
            for e in &entries {
                let tags = match (e.commutative, e.local) {
                    (true, true) => "commutative, local",
                    (true, false) => "commutative",
                    (false, true) => "local",
                    (false, false) => "",
                };
                outln!(
                    "{:<6} {:>3}  {:<20} {}",
                    e.name,
                    e.size,
                    tags,
                    e.description
                );
            }
            Ok(())
        }
    }
}
