//! Aggregated analyses: what `analyze` and `compare` print.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{lattice_isomorphic, Arrangement, MultPoint};
use crate::geometry::{LinearForm, ProjPoint};
use crate::hexagon::{ConicKind, Hexagon, HexagonError, PascalOctic, PascalOutcome};
use crate::singular::{self, DefectReport, GapCertificate, SingularError};
use crate::syzygy::{default_cap, minimal_generator_degrees, SyzygyProfile};

/// What a command operates on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Arrangement {
        label: String,
        arrangement: Arrangement,
        /// Preferred diagonals when the arrangement is read as a hexagon.
        diagonals: Option<Vec<LinearForm>>,
    },
    Hexagon {
        label: String,
        hexagon: Box<Hexagon>,
    },
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Hexagon(#[from] HexagonError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Subject {
    pub fn label(&self) -> &str {
        match self {
            Subject::Arrangement { label, .. } | Subject::Hexagon { label, .. } => label,
        }
    }

    pub fn arrangement(&self) -> Result<Arrangement, HexagonError> {
        match self {
            Subject::Arrangement { arrangement, .. } => Ok(arrangement.clone()),
            Subject::Hexagon { hexagon, .. } => hexagon.arrangement(),
        }
    }

    /// The hexagon behind the subject: given directly, or recovered from a
    /// nine-line arrangement with six triple points.
    pub fn hexagon(&self) -> Result<Hexagon, HexagonError> {
        match self {
            Subject::Hexagon { hexagon, .. } => Ok((**hexagon).clone()),
            Subject::Arrangement {
                arrangement,
                diagonals: Some(d),
                ..
            } => Hexagon::with_diagonals(arrangement, d),
            Subject::Arrangement { arrangement, .. } => Hexagon::decompositions(arrangement)?
                .into_iter()
                .next()
                .ok_or_else(|| HexagonError::NotHexagonal("no hexagon decomposition".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub line_count: usize,
    /// `(multiplicity, count)`, increasing.
    pub multiplicities: Vec<(usize, usize)>,
    pub tau: usize,
    pub points: Vec<MultPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonSection {
    pub vertices: [ProjPoint; 6],
    pub diagonals: [LinearForm; 3],
    pub generic: bool,
    pub conic: Option<String>,
    pub conic_kind: Option<ConicKind>,
    pub pascal_line: Option<LinearForm>,
    pub tangent_rank: Option<usize>,
    pub octic: Option<PascalOctic>,
    pub notes: Vec<String>,
}

impl HexagonSection {
    pub fn new(h: &Hexagon) -> HexagonSection {
        let mut notes = Vec::new();
        let generic = match h.genericity() {
            Ok(g) => {
                notes.extend(g.extra);
                g.generic
            }
            Err(e) => {
                notes.push(e.to_string());
                false
            }
        };
        let conic = h.on_conic();
        let pascal_line = match h.pascal_line() {
            Ok(PascalOutcome::Line(l)) => Some(l),
            Ok(PascalOutcome::NonCollinear) => {
                notes.push("opposite-side points are not collinear".into());
                None
            }
            Err(e) => {
                notes.push(e.to_string());
                None
            }
        };
        let tangent_rank = if generic {
            h.tangent_system().ok().map(|s| s.rank)
        } else {
            None
        };
        let octic = match tangent_rank {
            Some(2) => match h.pascal_octic() {
                Ok(o) => Some(o),
                Err(e) => {
                    notes.push(e.to_string());
                    None
                }
            },
            Some(r) => {
                notes.push(format!("tangent system has rank {r}: no quartic"));
                None
            }
            None => None,
        };
        HexagonSection {
            vertices: h.vertices().clone(),
            diagonals: h.diagonals(),
            generic,
            conic: conic.as_ref().map(|c| c.form.normalized().to_string()),
            conic_kind: conic.map(|c| c.kind),
            pascal_line,
            tangent_rank,
            octic,
            notes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub arrangement: Arrangement,
    pub degree: u32,
    pub polynomial: String,
    pub lattice: LatticeSummary,
    pub syzygies: SyzygyProfile,
    pub defects: DefectReport,
    /// An element of `I_{d-1}` outside `J_{d-1}`, when there is one.
    pub certificate: Option<GapCertificate>,
    pub hexagon: Option<HexagonSection>,
}

pub fn analyze(subject: &Subject, cap: Option<u32>) -> Result<AnalysisReport, AnalysisError> {
    let a = subject.arrangement()?;
    let f = a.polynomial();
    let d = f.degree();
    let lat = a.lattice();
    let syzygies = minimal_generator_degrees(&f, cap.unwrap_or_else(|| default_cap(d)));
    let defects = singular::defect_sequence_with_mdr(&a, syzygies.mdr)?;
    let certificate = if d >= 2 {
        singular::gap_certificate(&a, d - 1)?
    } else {
        None
    };
    let hexagon = match subject {
        Subject::Hexagon { hexagon, .. } => Some(HexagonSection::new(hexagon)),
        Subject::Arrangement { .. } => subject.hexagon().ok().map(|h| HexagonSection::new(&h)),
    };
    let report = AnalysisReport {
        input: subject.label().to_string(),
        degree: d,
        polynomial: f.to_string(),
        lattice: LatticeSummary {
            line_count: a.len(),
            multiplicities: lat.multiplicity_counts(),
            tau: lat.total_tjurina(),
            points: lat.points,
        },
        arrangement: a,
        syzygies,
        defects,
        certificate,
        hexagon,
    };
    report.check().map_err(AnalysisError::Invariant)?;
    Ok(report)
}

impl AnalysisReport {
    /// Cross-checks between independently computed sections.
    pub fn check(&self) -> Result<(), String> {
        if self.lattice.tau != self.defects.tau {
            return Err(format!("tau {} vs {}", self.lattice.tau, self.defects.tau));
        }
        if self.defects.stabilized_codim != self.lattice.tau {
            return Err(format!(
                "dim S/I stabilizes at {} instead of tau = {}",
                self.defects.stabilized_codim, self.lattice.tau
            ));
        }
        if self.syzygies.mdr < self.degree.saturating_sub(1) && !self.defects.matches_threshold() {
            return Err(format!(
                "defects do not vanish exactly above 2d-5-mdr = {}",
                self.defects.threshold
            ));
        }
        if let Some(c) = &self.certificate {
            let dk = self.defects.entries.iter().find(|e| e.k == c.degree);
            if dk.is_some_and(|e| e.dim_i != c.dim_i) {
                return Err(format!("dim I_{} disagrees between sections", c.degree));
            }
        }
        if let Some(o) = self.hexagon.as_ref().and_then(|h| h.octic.as_ref()) {
            if !o.certified {
                return Err("the Pascal octic is not in I_8 \\ J_8".into());
            }
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input: {}", self.input)?;
        writeln!(
            f,
            "lines ({}): {}",
            self.lattice.line_count,
            join(self.arrangement.lines())
        )?;
        writeln!(
            f,
            "lattice: {}; tau = {}",
            join(
                self.lattice
                    .multiplicities
                    .iter()
                    .map(|(m, c)| format!("{c} points of multiplicity {m}"))
            ),
            self.lattice.tau
        )?;
        let s = &self.syzygies;
        writeln!(f, "mdr = {}", s.mdr)?;
        writeln!(
            f,
            "generator degrees up to {}: [{}]{}",
            s.cap(),
            join(&s.generators),
            if s.free { " (free)" } else { "" }
        )?;
        let nonzero: Vec<String> = self
            .defects
            .entries
            .iter()
            .filter(|e| e.defect != 0)
            .map(|e| format!("{}:{}", e.k, e.defect))
            .collect();
        writeln!(
            f,
            "defects (k:defect, nonzero only): {}; 2d-5-mdr = {}",
            if nonzero.is_empty() {
                "none".to_string()
            } else {
                nonzero.join(" ")
            },
            self.defects.threshold
        )?;
        match &self.certificate {
            Some(c) => writeln!(
                f,
                "I_{k} != J_{k} (dim {} vs {}): h = {}",
                c.dim_i,
                c.dim_j,
                c.h_text,
                k = c.degree
            )?,
            None => writeln!(f, "I_{k} = J_{k}", k = self.degree.saturating_sub(1))?,
        }
        if let Some(h) = &self.hexagon {
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl fmt::Display for HexagonSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hexagon: {}", join(&self.vertices))?;
        writeln!(f, "  diagonals: {}", join(&self.diagonals))?;
        match (&self.conic, self.conic_kind) {
            (Some(c), Some(k)) => writeln!(f, "  conic: {c} ({k:?})")?,
            _ => writeln!(f, "  conic: none")?,
        }
        match &self.pascal_line {
            Some(l) => writeln!(f, "  Pascal line: {l}")?,
            None => writeln!(f, "  Pascal line: none")?,
        }
        if let Some(r) = self.tangent_rank {
            writeln!(f, "  tangent system rank: {r}")?;
        }
        if let Some(o) = &self.octic {
            writeln!(f, "  quartic: {}", o.quartic)?;
            writeln!(f, "  octic certified in I_8 \\ J_8: {}", o.certified)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub first: String,
    pub second: String,
    pub degrees: (u32, u32),
    pub isomorphic: bool,
    /// Line `i` of the first arrangement corresponds to line `witness[i]` of the second.
    pub witness: Option<Vec<usize>>,
    pub mdr: (u32, u32),
    pub ziegler_pair: bool,
    pub verdict: String,
    pub notes: Vec<String>,
}

pub fn compare(a: &Subject, b: &Subject) -> Result<Comparison, AnalysisError> {
    let (aa, ab) = (a.arrangement()?, b.arrangement()?);
    let witness = lattice_isomorphic(&aa.lattice(), &ab.lattice());
    let (fa, fb) = (aa.polynomial(), ab.polynomial());
    let mdr = (crate::syzygy::mdr(&fa), crate::syzygy::mdr(&fb));
    let isomorphic = witness.is_some();
    let ziegler_pair = isomorphic && mdr.0 != mdr.1;
    let mut notes = Vec::new();
    for (name, f, m) in [(a.label(), &fa, mdr.0), (b.label(), &fb, mdr.1)] {
        if 2 * m == f.degree() {
            notes.push(format!("mdr({name}) = {m} = d/2"));
        }
    }
    let verdict = if ziegler_pair {
        "ZIEGLER PAIR"
    } else if isomorphic {
        "same lattice, same mdr"
    } else {
        "different lattices"
    };
    Ok(Comparison {
        first: a.label().to_string(),
        second: b.label().to_string(),
        degrees: (fa.degree(), fb.degree()),
        isomorphic,
        witness,
        mdr,
        ziegler_pair,
        verdict: verdict.to_string(),
        notes,
    })
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (d = {}) vs {} (d = {})",
            self.first, self.degrees.0, self.second, self.degrees.1
        )?;
        match &self.witness {
            Some(w) => writeln!(f, "lattices isomorphic, line map [{}]", join(w))?,
            None => writeln!(f, "lattices not isomorphic")?,
        }
        writeln!(f, "mdr: {} vs {}", self.mdr.0, self.mdr.1)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(f, "{}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;

    fn subject(b: Builtin) -> Subject {
        Subject::Arrangement {
            label: b.name().into(),
            arrangement: b.arrangement(),
            diagonals: b.diagonals(),
        }
    }

    #[test]
    fn triangle_report_round_trips_through_json() {
        let r = analyze(&subject(Builtin::Triangle), None).unwrap();
        assert_eq!(r.syzygies.mdr, 1);
        assert!(r.syzygies.free);
        assert_eq!(r.syzygies.generators, vec![1, 1]);
        assert!(r.hexagon.is_none());
        let json = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn az_against_itself_is_not_a_pair() {
        let c = compare(&subject(Builtin::Az), &subject(Builtin::Az)).unwrap();
        assert!(c.isomorphic);
        assert!(!c.ziegler_pair);
        assert_eq!(c.mdr, (5, 5));
    }

    #[test]
    fn az_and_its_move_form_a_pair() {
        let c = compare(&subject(Builtin::Az), &subject(Builtin::AzPrime)).unwrap();
        assert_eq!(c.verdict, "ZIEGLER PAIR");
        assert_eq!(c.mdr, (5, 6));
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Comparison>(&json).unwrap(), c);
    }
}
