//! The `ziegler` command line.
//!
//! Inputs are a built-in name (`AZ`, `AZp`, `AD`, `ADp`, `BZ`, `BZp`,
//! `TRIANGLE`), a JSON file holding `{"lines": ...}` or `{"vertices": ...}`,
//! a text file with a product of linear forms, or such a product inline.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 unreadable input, 3 degenerate
//! configuration, 4 internal invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{lattice_isomorphic, Arrangement};
use crate::builtins::Builtin;
use crate::geometry::LinearForm;
use crate::hexagon::{Hexagon, HexagonError, PascalOutcome};
use crate::linalg::format_rational;
use crate::poly::{parse_linear_factors, ParseError};
use crate::report::{self, AnalysisError, LatticeSummary, Subject};
use crate::search::{self, SearchMode};
use crate::singular::{self, SingularError};
use crate::svg::SvgScene;

#[derive(Parser, Debug)]
#[command(
    name = "ziegler",
    version,
    about = "Exact analysis of projective line arrangements"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Highest degree searched for syzygy generators (default max(2d-3, d-1)).
    #[arg(long, global = true)]
    pub cap: Option<u32>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice, syzygies, defects, the degree d-1 gap and the hexagon reading.
    Analyze { input: String },
    /// Lattice isomorphism and mdr of two arrangements.
    Compare { first: String, second: String },
    /// defect_k = tau - dim S_k/I_k for k = 0..2d.
    Defects { input: String },
    /// The Pascal octic of a hexagon and its certificate in I_8 \ J_8.
    Octic { input: String },
    /// Conic through the vertices, Pascal line and the tangency system.
    Pascal { input: String },
    /// Random hexagons: conic position against mdr, as CSV.
    Search {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, value_enum, default_value_t = SearchMode::Mixed)]
        mode: SearchMode,
    },
    /// SVG figure in the chart z = 1.
    Render { input: String },
    /// Multiple points; with a second input, a lattice isomorphism.
    Lattice {
        input: String,
        other: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Read(String, std::io::Error),
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("cannot parse {0}: {1}")]
    Parse(String, String),
    #[error("{0}")]
    Degenerate(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read(..) | CliError::Write(_) => 1,
            CliError::Parse(..) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<HexagonError> for CliError {
    fn from(e: HexagonError) -> Self {
        CliError::Degenerate(e.to_string())
    }
}

impl From<SingularError> for CliError {
    fn from(e: SingularError) -> Self {
        CliError::Degenerate(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Invariant(m) => CliError::Invariant(m),
            other => CliError::Degenerate(other.to_string()),
        }
    }
}

fn parse_err(what: &str, e: impl ToString) -> CliError {
    CliError::Parse(what.to_string(), e.to_string())
}

fn from_factors(what: &str, text: &str) -> Result<Arrangement, CliError> {
    let lines = parse_linear_factors(text.trim()).map_err(|e: ParseError| parse_err(what, e))?;
    Arrangement::new(lines).map_err(|e| parse_err(what, e))
}

/// Resolves a command-line input to an arrangement or a hexagon.
pub fn resolve(input: &str) -> Result<Subject, CliError> {
    if let Some(b) = Builtin::from_name(input) {
        return Ok(Subject::Arrangement {
            label: b.name().to_string(),
            arrangement: b.arrangement(),
            diagonals: b.diagonals(),
        });
    }
    let path = Path::new(input);
    if !path.exists() {
        return Ok(Subject::Arrangement {
            label: input.to_string(),
            arrangement: from_factors(input, input)?,
            diagonals: None,
        });
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read(input.to_string(), e))?;
    if path.extension().is_some_and(|e| e == "json") {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| parse_err(input, e))?;
        if v.get("vertices").is_some() {
            let hexagon: Hexagon = serde_json::from_value(v).map_err(|e| parse_err(input, e))?;
            return Ok(Subject::Hexagon {
                label: input.to_string(),
                hexagon: Box::new(hexagon),
            });
        }
        let diagonals = match v.get("diagonals") {
            Some(d) => Some(
                serde_json::from_value::<Vec<LinearForm>>(d.clone())
                    .map_err(|e| parse_err(input, e))?,
            ),
            None => None,
        };
        let arrangement: Arrangement =
            serde_json::from_value(v).map_err(|e| parse_err(input, e))?;
        return Ok(Subject::Arrangement {
            label: input.to_string(),
            arrangement,
            diagonals,
        });
    }
    Ok(Subject::Arrangement {
        label: input.to_string(),
        arrangement: from_factors(input, &text)?,
        diagonals: None,
    })
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string_pretty(value).expect("serializable") + "\n"
    } else {
        text()
    }
}

#[derive(Serialize)]
struct LatticeOutput {
    lattice: LatticeSummary,
    other: Option<LatticeSummary>,
    witness: Option<Vec<usize>>,
}

fn summary(a: &Arrangement) -> LatticeSummary {
    let l = a.lattice();
    LatticeSummary {
        line_count: l.line_count,
        multiplicities: l.multiplicity_counts(),
        tau: l.total_tjurina(),
        points: l.points,
    }
}

fn lattice_text(a: &Arrangement, s: &LatticeSummary) -> String {
    let mut out = String::new();
    for p in &s.points {
        let lines: Vec<String> = p.lines.iter().map(|&i| a.lines()[i].to_string()).collect();
        let _ = writeln!(
            out,
            "{} m={} [{}]",
            p.point,
            p.multiplicity,
            lines.join(", ")
        );
    }
    let counts: Vec<String> = s
        .multiplicities
        .iter()
        .map(|(m, c)| format!("{c}×m{m}"))
        .collect();
    let _ = writeln!(
        out,
        "{} lines; {}; tau = {}",
        s.line_count,
        counts.join(", "),
        s.tau
    );
    out
}

#[derive(Serialize)]
struct PascalReport {
    vertices: Vec<String>,
    conic: Option<String>,
    opposite_points: Vec<Option<String>>,
    pascal_line: Option<String>,
    tangent: crate::hexagon::TangentSystem,
    notes: Vec<String>,
}

fn pascal_report(h: &Hexagon) -> Result<PascalReport, HexagonError> {
    let mut notes = Vec::new();
    let pascal_line = match h.pascal_line()? {
        PascalOutcome::Line(l) => Some(l.to_string()),
        PascalOutcome::NonCollinear => {
            notes.push("opposite-side points are not collinear".to_string());
            None
        }
    };
    Ok(PascalReport {
        vertices: h.vertices().iter().map(ToString::to_string).collect(),
        conic: h
            .on_conic()
            .map(|c| format!("{} ({:?})", c.form.normalized(), c.kind)),
        opposite_points: (0..3)
            .map(|k| h.opposite_point(k).map(|p| p.to_string()))
            .collect(),
        pascal_line,
        tangent: h.tangent_system()?,
        notes,
    })
}

fn pascal_text(r: &PascalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", r.vertices.join(", "));
    let _ = writeln!(out, "conic: {}", r.conic.as_deref().unwrap_or("none"));
    let b: Vec<&str> = r
        .opposite_points
        .iter()
        .map(|p| p.as_deref().unwrap_or("-"))
        .collect();
    let _ = writeln!(out, "opposite-side points: {}", b.join(", "));
    let _ = writeln!(
        out,
        "Pascal line: {}",
        r.pascal_line.as_deref().unwrap_or("none")
    );
    let t = &r.tangent;
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    let _ = writeln!(out, "tangent system rank {}", t.rank);
    if t.has_solution() {
        let s: Vec<String> = t.solution.iter().map(format_rational).collect();
        let _ = writeln!(
            out,
            "quartic coefficients (c1, c2, c3) = ({})",
            s.join(", ")
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

#[derive(Serialize)]
struct OcticReport {
    octic: crate::hexagon::PascalOctic,
    /// Whether the octic agrees modulo `J_8`, up to scale, with the gap
    /// element found by linear algebra alone.
    matches_gap_certificate: Option<bool>,
}

fn run_command(cli: &Cli) -> Result<String, CliError> {
    let json = cli.json;
    Ok(match &cli.command {
        Command::Analyze { input } => {
            let r = report::analyze(&resolve(input)?, cli.cap)?;
            emit(json, &r, || r.to_string())
        }
        Command::Compare { first, second } => {
            let c = report::compare(&resolve(first)?, &resolve(second)?)?;
            emit(json, &c, || c.to_string())
        }
        Command::Defects { input } => {
            let a = resolve(input)?.arrangement()?;
            let r = singular::defect_sequence(&a)?;
            emit(json, &r, || {
                let mut out = String::from("k  dim I_k  dim J_k  dim S_k/I_k  defect\n");
                for e in &r.entries {
                    let _ = writeln!(
                        out,
                        "{:<2} {:>7}  {:>7}  {:>11}  {:>6}",
                        e.k, e.dim_i, e.dim_j, e.codim_i, e.defect
                    );
                }
                let _ = writeln!(
                    out,
                    "tau = {}, mdr = {}, 2d-5-mdr = {}, vanishing exactly above it: {}",
                    r.tau,
                    r.mdr,
                    r.threshold,
                    r.matches_threshold()
                );
                out
            })
        }
        Command::Octic { input } => {
            let subject = resolve(input)?;
            let h = subject.hexagon()?;
            let o = h.pascal_octic()?;
            if !o.certified {
                return Err(CliError::Invariant(
                    "Pascal octic not certified in I_8 \\ J_8".into(),
                ));
            }
            let a = h.build_arrangement()?;
            let gap = singular::gap_certificate(&a, 8)?;
            let matches =
                gap.map(|g| singular::congruent_mod_jacobian(&a, &o.polynomial(), &g.polynomial()));
            let r = OcticReport {
                octic: o,
                matches_gap_certificate: matches,
            };
            emit(json, &r, || {
                let o = &r.octic;
                let mut out = String::new();
                let _ = writeln!(out, "Pascal line: {}", o.pascal_line);
                let d: Vec<String> = o.diagonals.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "diagonals: {}", d.join(", "));
                let _ = writeln!(out, "quartic: {}", o.quartic);
                let _ = writeln!(out, "octic: {}", o.octic_text);
                for t in &o.transcript {
                    let _ = writeln!(out, "  {t}");
                }
                let _ = writeln!(out, "in I_8 \\ J_8: {}", o.certified);
                if let Some(m) = r.matches_gap_certificate {
                    let _ = writeln!(out, "agrees with the I_8 \\ J_8 gap element mod J_8: {m}");
                }
                out
            })
        }
        Command::Pascal { input } => {
            let h = resolve(input)?.hexagon()?;
            let r = pascal_report(&h)?;
            emit(json, &r, || pascal_text(&r))
        }
        Command::Search { count, mode } => {
            let samples = search::run(*count, *mode, cli.seed);
            let s = search::summarize(&samples);
            eprintln!(
                "{} samples, {} rejected; on conic: {} with mdr 5, {} other; off conic: {} with mdr 6, {} with mdr 5 {:?}, {} other",
                s.samples,
                s.rejected,
                s.on_conic_mdr5,
                s.on_conic_other,
                s.off_conic_mdr6,
                s.off_conic_mdr5.len(),
                s.off_conic_mdr5,
                s.off_conic_other
            );
            if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    summary: &'a search::Summary,
                    samples: &'a [search::Sample],
                }
                emit(
                    true,
                    &Out {
                        summary: &s,
                        samples: &samples,
                    },
                    String::new,
                )
            } else {
                let mut buf = Vec::new();
                search::write_csv(&samples, &mut buf).map_err(|e| CliError::Write(e.into()))?;
                String::from_utf8(buf).expect("utf-8 csv")
            }
        }
        Command::Render { input } => {
            let subject = resolve(input)?;
            let a = subject.arrangement()?;
            let mut scene = SvgScene::for_arrangement(&a);
            if let Ok(h) = subject.hexagon() {
                scene = scene.with_hexagon(&h);
            }
            scene.render()
        }
        Command::Lattice { input, other } => {
            let a = resolve(input)?.arrangement()?;
            let s = summary(&a);
            let b = other
                .as_deref()
                .map(resolve)
                .transpose()?
                .map(|s| s.arrangement())
                .transpose()?;
            let witness = b
                .as_ref()
                .and_then(|b| lattice_isomorphic(&a.lattice(), &b.lattice()));
            let out = LatticeOutput {
                other: b.as_ref().map(summary),
                lattice: s,
                witness,
            };
            emit(json, &out, || {
                let mut text = lattice_text(&a, &out.lattice);
                if let (Some(b), Some(sb)) = (&b, &out.other) {
                    text += &lattice_text(b, sb);
                    text += &match &out.witness {
                        Some(w) => format!("isomorphic, line map {w:?}\n"),
                        None => "not isomorphic\n".to_string(),
                    };
                }
                text
            })
        }
    })
}

/// Parses `args`, runs the command, writes its output, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let result = run_command(&cli).and_then(|text| {
        match &cli.out {
            Some(p) => std::fs::write(p, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
