//! Command-line front end. Output is CSV or JSON on the given writer; the exit code
//! is 0 when every requested check passes, 1 on a failed check and 2 on bad input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atomic::{self, DominantWeight};
use crate::diophantine::{self, DiagonalForm, GroupActionId};
use crate::dynkin::{self, AffineTypeId, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{self, q};
use crate::param::{self, fmt_point, CaseId, Report};
use crate::tables::{self, Figure};

#[derive(Parser, Debug)]
#[command(name = "corelat", version, about = "Atomic lengths, generalised cores and Pell-type parametrisations")]
pub struct Cli {
    /// Accepted for harness uniformity; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_weight(s: &str) -> std::result::Result<usize, String> {
    s.strip_prefix('L')
        .and_then(|i| i.parse().ok())
        .ok_or_else(|| format!("expected L<i>, e.g. L0 or L1, got {s}"))
}

fn parse_type(s: &str) -> std::result::Result<AffineTypeId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> std::result::Result<CaseId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_lattice(s: &str) -> std::result::Result<Lattice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_figure(s: &str) -> std::result::Result<Figure, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_form(s: &str) -> std::result::Result<DiagonalForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> std::result::Result<GroupActionId, String> {
    match s {
        "D8" => Ok(GroupActionId::D8),
        "C4" => Ok(GroupActionId::C4),
        "V4" => Ok(GroupActionId::V4),
        "C6" => Ok(GroupActionId::C6),
        "G" | "GA3" => Ok(GroupActionId::GA3),
        _ => s
            .strip_prefix('H')
            .and_then(|n| n.parse().ok())
            .map(GroupActionId::H)
            .ok_or_else(|| format!("unknown group {s}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Atomic length of one vector given in stored coordinates.
    AtomicLength {
        #[arg(long = "type", value_parser = parse_type)]
        type_id: AffineTypeId,
        #[arg(long, value_parser = parse_weight, default_value = "L0")]
        weight: usize,
        /// e.g. "(1/2,1/2)"
        #[arg(long)]
        vector: String,
    },
    /// Lattice points of a given atomic length, optionally with their images.
    Enumerate {
        #[arg(long = "type", value_parser = parse_type, required_unless_present = "case")]
        type_id: Option<AffineTypeId>,
        /// Take type, weight and lattice from a case and print images too.
        #[arg(long, value_parser = parse_case, conflicts_with_all = ["type_id", "weight", "lattice"])]
        case: Option<CaseId>,
        #[arg(long, value_parser = parse_weight)]
        weight: Option<usize>,
        #[arg(long, value_parser = parse_lattice)]
        lattice: Option<Lattice>,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Integer solutions of a diagonal form, optionally split into orbits.
    Solve {
        /// Coefficients, e.g. "1,3".
        #[arg(long, value_parser = parse_form, required_unless_present = "case")]
        form: Option<DiagonalForm>,
        #[arg(long, required_unless_present = "case")]
        k: Option<u64>,
        /// Use the form, value and group of a case at `--N`.
        #[arg(long, value_parser = parse_case, conflicts_with_all = ["form", "k"], requires = "n")]
        case: Option<CaseId>,
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupActionId>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// One of the comparison tables as CSV.
    Table {
        #[arg(long, value_parser = parse_figure)]
        figure: Figure,
        #[arg(long = "max-N")]
        max_n: u64,
    },
    /// Runs the verifier of a case for one `N` or for `0..=max-N`.
    Verify {
        #[arg(long, value_parser = parse_case)]
        case: CaseId,
        #[arg(long = "N", conflicts_with = "max_n", required_unless_present = "max_n")]
        n: Option<u64>,
        #[arg(long = "max-N")]
        max_n: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Strata, their consistency and the orbit conjecture in rank 3.
    ConjectureA3 {
        #[arg(long = "N", conflicts_with = "max_n", required_unless_present = "max_n")]
        n: Option<u64>,
        #[arg(long = "max-N")]
        max_n: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Caps the global worker pool from `CORELAT_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var("CORELAT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail(w)) => {
            let _ = writeln!(err, "FAIL: {w}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum Outcome {
    Pass,
    Fail(String),
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn range(n: Option<u64>, max: Option<u64>) -> (u64, u64) {
    match (n, max) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (0, m),
        (None, None) => (0, 0),
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::AtomicLength { type_id, weight, vector } => {
            let t = dynkin::lookup_type(*type_id)?;
            let x = linalg::parse_vec(vector)?;
            if x.len() != t.ambient_dim {
                return Err(Error::Parse(format!("{type_id} vectors have {} coordinates", t.ambient_dim)));
            }
            let w = DominantWeight::fundamental(&t, *weight)?;
            let len = atomic::extended_atomic_length(&t, &w, &x)?;
            writeln!(out, "{}", linalg::fmt_q(&len)).map_err(io_err)?;
            Ok(Outcome::Pass)
        }
        Command::Enumerate { type_id, case, weight, lattice, n, format } => {
            let (t, w, lat, pc) = match case {
                Some(c) => {
                    let pc = param::case(*c)?;
                    (pc.type_data.clone(), pc.weight, pc.lattice, Some(pc))
                }
                None => {
                    let id = type_id.ok_or_else(|| Error::Parse("--type or --case is required".into()))?;
                    (dynkin::lookup_type(id)?, weight.unwrap_or(0), lattice.unwrap_or(Lattice::M), None)
                }
            };
            let dw = DominantWeight::fundamental(&t, w)?;
            let xs = atomic::enumerate_atomic(&t, &dw, &q(*n as i64), lat)?;
            let rows: Vec<(String, Option<String>)> = xs
                .iter()
                .map(|x| {
                    let img = pc.as_ref().map(|c| param::phi(c, x).map(|p| fmt_point(&p))).transpose()?;
                    Ok((linalg::fmt_vec(x), img))
                })
                .collect::<Result<_>>()?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        vector: String,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        phi: Option<String>,
                    }
                    #[derive(Serialize)]
                    struct Doc {
                        #[serde(rename = "type")]
                        type_id: String,
                        #[serde(rename = "N")]
                        n: u64,
                        elements: Vec<Row>,
                    }
                    let doc = Doc {
                        type_id: t.id.to_string(),
                        n: *n,
                        elements: rows.into_iter().map(|(vector, phi)| Row { vector, phi }).collect(),
                    };
                    emit_json(out, &doc)?;
                }
                Format::Csv => {
                    let mut wr = csv_writer(out);
                    let header: &[&str] = if pc.is_some() { &["N", "vector", "phi"] } else { &["N", "vector"] };
                    wr.write_record(header).map_err(io_err)?;
                    for (v, img) in rows {
                        let mut rec = vec![n.to_string(), v];
                        rec.extend(img);
                        wr.write_record(&rec).map_err(io_err)?;
                    }
                    wr.flush().map_err(io_err)?;
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Solve { form, k, case, n, group, format } => {
            let (form, k, group) = match case {
                Some(c) => {
                    let pc = param::case(*c)?;
                    let n = n.ok_or_else(|| Error::Parse("--N is required with --case".into()))?;
                    (pc.form.clone(), param::level_value(&pc, n), group.or(Some(pc.group)))
                }
                None => (
                    form.clone().ok_or_else(|| Error::Parse("--form is required".into()))?,
                    k.ok_or_else(|| Error::Parse("--k is required".into()))?,
                    *group,
                ),
            };
            let sols = diophantine::solve_diagonal(&form, k).points;
            let groups: Vec<Vec<String>> = match group {
                Some(g) => {
                    if g.dimension() != form.0.len() {
                        return Err(Error::Parse(format!("group {g:?} does not act in dimension {}", form.0.len())));
                    }
                    diophantine::orbit_partition(g, &sols)?
                        .iter()
                        .map(|o| o.iter().map(|p| fmt_point(p)).collect())
                        .collect()
                }
                None => sols.iter().map(|p| vec![fmt_point(p)]).collect(),
            };
            match format {
                Format::Json => emit_json(out, &groups)?,
                Format::Csv => {
                    let mut wr = csv_writer(out);
                    wr.write_record([if group.is_some() { "orbit" } else { "solution" }]).map_err(io_err)?;
                    for g in groups {
                        wr.write_record([g.join(";")]).map_err(io_err)?;
                    }
                    wr.flush().map_err(io_err)?;
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Table { figure, max_n } => {
            tables::write_csv(*figure, *max_n, out)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { case, n, max_n, format } => {
            let pc = param::case(*case)?;
            let (lo, hi) = range(*n, *max_n);
            let reports: Vec<Report> = param::verify_range(&pc, hi)?.into_iter().filter(|r| r.n >= lo).collect();
            write_reports(out, &reports, *format)?;
            Ok(summarise(&reports))
        }
        Command::ConjectureA3 { n, max_n, format } => {
            let (lo, hi) = range(*n, *max_n);
            let pc = param::case(CaseId::A3)?;
            let reports: Vec<Report> = param::verify_range(&pc, hi)?.into_iter().filter(|r| r.n >= lo).collect();
            #[derive(Serialize)]
            struct Entry<'a> {
                #[serde(flatten)]
                report: &'a Report,
                gamma: Vec<i64>,
                strata_consistent: bool,
            }
            let strata: Vec<param::A3Strata> = (lo..=hi).map(param::a3_strata).collect::<Result<_>>()?;
            let mut fail = None;
            for (r, s) in reports.iter().zip(&strata) {
                if !s.consistent && fail.is_none() {
                    fail = Some(format!("N={}: strata disagree with the Omega sets", s.n));
                }
                if !r.passed() && fail.is_none() {
                    fail = Some(format!("N={}: {}", r.n, r.witness.clone().unwrap_or_default()));
                }
            }
            match format {
                Format::Json => {
                    let entries: Vec<Entry> = reports
                        .iter()
                        .zip(&strata)
                        .map(|(report, s)| Entry { report, gamma: s.gamma.clone(), strata_consistent: s.consistent })
                        .collect();
                    emit_json(out, &entries)?;
                }
                Format::Csv => {
                    let mut wr = csv_writer(out);
                    wr.write_record(["N", "status", "solutions", "orbits", "phi_images", "gamma", "strata_consistent"])
                        .map_err(io_err)?;
                    for (r, s) in reports.iter().zip(&strata) {
                        wr.write_record([
                            r.n.to_string(),
                            format!("{:?}", r.status),
                            r.counts.solutions.to_string(),
                            r.counts.orbits.to_string(),
                            r.counts.phi_images.to_string(),
                            s.gamma.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(";"),
                            s.consistent.to_string(),
                        ])
                        .map_err(io_err)?;
                    }
                    wr.flush().map_err(io_err)?;
                }
            }
            Ok(fail.map_or(Outcome::Pass, Outcome::Fail))
        }
    }
}

fn write_reports(out: &mut dyn Write, reports: &[Report], format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(out, &reports),
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["case", "N", "status", "solutions", "orbits", "phi_images", "witness", "uncovered"])
                .map_err(io_err)?;
            for r in reports {
                wr.write_record([
                    r.case.to_string(),
                    r.n.to_string(),
                    format!("{:?}", r.status),
                    r.counts.solutions.to_string(),
                    r.counts.orbits.to_string(),
                    r.counts.phi_images.to_string(),
                    r.witness.clone().unwrap_or_default(),
                    r.uncovered.join(" | "),
                ])
                .map_err(io_err)?;
            }
            wr.flush().map_err(io_err)
        }
    }
}

fn summarise(reports: &[Report]) -> Outcome {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Outcome::Fail(format!("{} N={}: {}", r.case, r.n, r.witness.clone().unwrap_or_default())),
        None => Outcome::Pass,
    }
}
