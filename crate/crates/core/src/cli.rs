//! The `mdeg` command line front end.
//!
//! Exit codes: 0 realizable or verified, 10 not tame, 20 unknown,
//! 1 usage or input error, 2 internal verification failure.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::classify::{self, verify_factorization, verify_not_tame, Certificate, Verdict};
use crate::obstruction::NotTameCertificate;
use crate::polymap::{realize_factors, PolyMap};
use crate::realizer::{realize, DegreeTuple};
use crate::search::{self, SearchParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_TAME: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

pub const SCHEMA: &str = "mdeg.verdict.v1";

#[derive(Debug, Parser)]
#[command(name = "mdeg", version, about = "Multidegrees of tame polynomial automorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a degree tuple (dimension 2 or 3)
    Classify {
        #[arg(required = true, value_parser = clap::value_parser!(u32).range(1..))]
        degrees: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Build a tame automorphism with the given multidegree (any dimension)
    Construct {
        #[arg(required = true, value_parser = clap::value_parser!(u32).range(1..))]
        degrees: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a JSON verdict document ("-" reads stdin)
    Verify { file: PathBuf },
    /// Census of random tame automorphisms
    Search {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 30)]
        cap: u32,
        #[arg(long, default_value_t = 5)]
        factors: u32,
        #[arg(long, default_value_t = 3)]
        shear_degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verdicts for the (2,d2,d3), (3,4,d3), (3,5,d3), (4,5,d3) families
    Table {
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(5..))]
        max: u32,
        #[arg(long)]
        json: bool,
    },
}

/// A verdict together with the degrees it refers to; the file format read
/// by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub schema: String,
    pub degrees: Vec<u32>,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<PolyMap>,
}

#[derive(Debug, Serialize)]
struct TableRow {
    degrees: [u32; 3],
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
}

#[derive(Debug, Serialize)]
struct SearchReport {
    census: search::Census,
    not_tame_hits: Vec<Vec<u32>>,
}

fn exit_for(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Realizable { .. } => EXIT_OK,
        Verdict::NotTame { .. } => EXIT_NOT_TAME,
        Verdict::Unknown { .. } => EXIT_UNKNOWN,
    }
}

fn fmt_tuple(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn write_factors(out: &mut dyn Write, factors: &crate::FactorList) -> io::Result<()> {
    if factors.is_empty() {
        return writeln!(out, "  factors: identity");
    }
    writeln!(out, "  factors (applied in order):")?;
    for (i, f) in factors.factors().iter().enumerate() {
        writeln!(out, "    {}. {}", i + 1, f)?;
    }
    Ok(())
}

fn write_certificate(out: &mut dyn Write, cert: &NotTameCertificate) -> io::Result<()> {
    for line in cert.explain() {
        writeln!(out, "  {line}")?;
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn run_classify(out: &mut dyn Write, err: &mut dyn Write, degrees: &[u32], json: bool) -> io::Result<i32> {
    if !(2..=3).contains(&degrees.len()) {
        writeln!(
            err,
            "classify supports 2 or 3 degrees (got {}); use `construct` in higher dimensions",
            degrees.len()
        )?;
        return Ok(EXIT_USAGE);
    }
    let verdict = match classify::classify(degrees) {
        Ok(v) => v,
        Err(e) => {
            writeln!(err, "{e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    if let Err(e) = verdict.verify(&sorted) {
        writeln!(err, "internal verification failed: {e}")?;
        return Ok(EXIT_INTERNAL);
    }
    if json {
        let map = match &verdict {
            Verdict::Realizable { factors } => realize_factors(factors).ok(),
            _ => None,
        };
        write_json(
            out,
            &VerdictDocument {
                schema: SCHEMA.into(),
                degrees: sorted,
                verdict: verdict.clone(),
                map,
            },
        )?;
        return Ok(exit_for(&verdict));
    }
    writeln!(out, "multidegree {}", fmt_tuple(&sorted))?;
    match &verdict {
        Verdict::Realizable { factors } => {
            writeln!(out, "verdict: REALIZABLE by a tame automorphism")?;
            write_factors(out, factors)?;
        }
        Verdict::NotTame { certificate } => {
            writeln!(out, "verdict: NOT TAME")?;
            match certificate {
                Certificate::Planar(p) => writeln!(
                    out,
                    "  {} and {}: neither divides the other, so no automorphism of the plane exists",
                    p.degrees[0], p.degrees[1]
                )?,
                Certificate::Spatial(c) => write_certificate(out, c)?,
            }
        }
        Verdict::Unknown { reason } => {
            writeln!(out, "verdict: UNKNOWN ({})", reason.as_str())?;
        }
    }
    Ok(exit_for(&verdict))
}

fn run_construct(out: &mut dyn Write, err: &mut dyn Write, degrees: &[u32], json: bool) -> io::Result<i32> {
    let tuple = match DegreeTuple::new(degrees) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "{e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let Some(sorted_factors) = realize(&tuple) else {
        writeln!(err, "no construction found for {}", fmt_tuple(degrees))?;
        return Ok(EXIT_UNKNOWN);
    };
    let built = tuple
        .restore_order(&sorted_factors)
        .map_err(|e| e.to_string())
        .and_then(|factors| {
            verify_factorization(&factors, degrees).map_err(|e| e.to_string())?;
            let map = realize_factors(&factors).map_err(|e| e.to_string())?;
            Ok((factors, map))
        });
    let (factors, map) = match built {
        Ok(x) => x,
        Err(e) => {
            writeln!(err, "internal verification failed: {e}")?;
            return Ok(EXIT_INTERNAL);
        }
    };
    if json {
        write_json(
            out,
            &VerdictDocument {
                schema: SCHEMA.into(),
                degrees: degrees.to_vec(),
                verdict: Verdict::Realizable { factors },
                map: Some(map),
            },
        )?;
    } else {
        writeln!(out, "multidegree {}", fmt_tuple(degrees))?;
        write_factors(out, &factors)?;
        writeln!(out, "  map:")?;
        for (i, c) in map.components().iter().enumerate() {
            writeln!(out, "    F{} = {}", i + 1, c)?;
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(out: &mut dyn Write, err: &mut dyn Write, file: &PathBuf) -> io::Result<i32> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        match std::fs::read_to_string(file) {
            Ok(s) => s,
            Err(e) => {
                writeln!(err, "cannot read {}: {e}", file.display())?;
                return Ok(EXIT_USAGE);
            }
        }
    };
    let doc: VerdictDocument = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => {
            writeln!(err, "malformed document: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let checked = match &doc.verdict {
        Verdict::Realizable { factors } => {
            verify_factorization(factors, &doc.degrees).map_err(|e| e.to_string()).and_then(|_| {
                match (&doc.map, realize_factors(factors)) {
                    (Some(m), Ok(r)) if *m != r => Err("stored map differs from the factorization".into()),
                    (_, Err(e)) => Err(e.to_string()),
                    _ => Ok(()),
                }
            })
        }
        Verdict::NotTame { certificate } => {
            verify_not_tame(certificate, &doc.degrees).map_err(|e| e.to_string())
        }
        Verdict::Unknown { reason } => {
            writeln!(out, "{}: unknown ({}), nothing to verify", fmt_tuple(&doc.degrees), reason.as_str())?;
            return Ok(EXIT_UNKNOWN);
        }
    };
    match checked {
        Ok(()) => {
            writeln!(out, "{}: {} verified", fmt_tuple(&doc.degrees), doc.verdict.kind())?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(err, "verification failed: {e}")?;
            Ok(EXIT_INTERNAL)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    out: &mut dyn Write,
    err: &mut dyn Write,
    seed: u64,
    samples: u64,
    dim: usize,
    cap: u32,
    factors: u32,
    shear_degree: u32,
    json: bool,
) -> io::Result<i32> {
    let mut params = SearchParams::new(seed, samples);
    params.dimension = dim;
    params.degree_cap = cap;
    params.factor_count_max = factors;
    params.shear_degree_max = shear_degree;
    let census = match search::census(&params) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "{e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let not_tame_hits: Vec<Vec<u32>> = if dim == 3 {
        census
            .entries
            .iter()
            .filter(|e| matches!(classify::classify(&e.multidegree), Ok(v) if v.is_not_tame()))
            .map(|e| e.multidegree.clone())
            .collect()
    } else {
        Vec::new()
    };
    if json {
        write_json(
            out,
            &SearchReport {
                census,
                not_tame_hits: not_tame_hits.clone(),
            },
        )?;
    } else {
        writeln!(out, "{:<20} {:>8} {:>8}", "multidegree", "count", "example")?;
        for e in &census.entries {
            writeln!(
                out,
                "{:<20} {:>8} {:>8}",
                fmt_tuple(&e.multidegree),
                e.count,
                e.example_index
            )?;
        }
        writeln!(out, "{} samples, {} distinct multidegrees", census.total(), census.entries.len())?;
    }
    if !not_tame_hits.is_empty() {
        writeln!(err, "census contains multidegrees certified not tame: {not_tame_hits:?}")?;
        return Ok(EXIT_INTERNAL);
    }
    Ok(EXIT_OK)
}

fn run_table(out: &mut dyn Write, max: u32, json: bool) -> io::Result<i32> {
    let rows: Vec<TableRow> = classify::summary_table(max)
        .into_iter()
        .map(|(degrees, v)| TableRow {
            degrees,
            verdict: v.kind(),
            reason: match v {
                Verdict::Unknown { reason } => Some(reason.as_str()),
                _ => None,
            },
        })
        .collect();
    if json {
        write_json(out, &rows)?;
        return Ok(EXIT_OK);
    }
    for family in [[3, 4], [3, 5], [4, 5]] {
        let mut realizable = Vec::new();
        for r in rows.iter().filter(|r| r.degrees[..2] == family) {
            match r.verdict {
                "realizable" => realizable.push(r.degrees[2]),
                other => writeln!(
                    out,
                    "{}: {}{}",
                    fmt_tuple(&r.degrees),
                    other,
                    r.reason.map(|s| format!(" ({s})")).unwrap_or_default()
                )?,
            }
        }
        writeln!(
            out,
            "({}, {}, d3) realizable for d3 in {:?}",
            family[0], family[1], realizable
        )?;
    }
    let twos: Vec<&TableRow> = rows.iter().filter(|r| r.degrees[0] == 2).collect();
    let all = twos.iter().all(|r| r.verdict == "realizable");
    writeln!(
        out,
        "(2, d2, d3), 2 <= d2 <= d3 <= {max}: {} of {} realizable{}",
        twos.iter().filter(|r| r.verdict == "realizable").count(),
        twos.len(),
        if all { "" } else { " (MISMATCH)" }
    )?;
    Ok(EXIT_OK)
}

/// Executes a parsed command, writing reports to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Classify { degrees, json } => run_classify(out, err, &degrees, json),
        Command::Construct { degrees, json } => run_construct(out, err, &degrees, json),
        Command::Verify { file } => run_verify(out, err, &file),
        Command::Search {
            seed,
            samples,
            dim,
            cap,
            factors,
            shear_degree,
            json,
        } => run_search(out, err, seed, samples, dim, cap, factors, shear_degree, json),
        Command::Table { max, json } => run_table(out, max, json),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "i/o error: {e}");
        EXIT_USAGE
    })
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
