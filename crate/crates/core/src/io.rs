//! File formats: code bundles (JSON or plain-text matrices), hypergraph and
//! schedule JSON, and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::f2la::{BitMatrix, BitVector};
use crate::hypergraph::{Edge, Hypergraph3, Schedule};
use crate::triples::MagicFriendlyTriple;

/// `{"n": 7, "s_x": [[0,0,0,1,1,1,1], ...], "s_z": [...], "name": "steane"}`
///
/// An optional `triples` list (`[["0111","1011","1101"], ...]`) pins the
/// triples used by the pipeline instead of a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBundle {
    pub n: usize,
    pub s_x: Vec<Vec<u8>>,
    pub s_z: Vec<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<MagicFriendlyTriple>,
}

fn matrix_from_lists(n: usize, rows: &[Vec<u8>]) -> Result<BitMatrix> {
    let rows = rows
        .iter()
        .map(|r| BitVector::from_u8s(r))
        .collect::<Result<Vec<_>>>()?;
    BitMatrix::from_rows(n, rows)
}

fn matrix_to_lists(m: &BitMatrix) -> Vec<Vec<u8>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(u8::from).collect())
        .collect()
}

impl CodeBundle {
    pub fn from_code(code: &CssCode, name: Option<String>) -> Self {
        Self {
            n: code.n(),
            s_x: matrix_to_lists(code.s_x()),
            s_z: matrix_to_lists(code.s_z()),
            name,
            triples: Vec::new(),
        }
    }

    pub fn to_code(&self) -> Result<CssCode> {
        CssCode::new(
            matrix_from_lists(self.n, &self.s_x)?,
            matrix_from_lists(self.n, &self.s_z)?,
        )
    }

    /// The pinned triples, each re-verified against the code.
    pub fn verified_triples(&self, code: &CssCode) -> Result<Vec<MagicFriendlyTriple>> {
        self.triples
            .iter()
            .map(|t| MagicFriendlyTriple::new(code, t.x().clone(), t.y().clone(), t.z().clone()))
            .collect()
    }
}

/// Parses a matrix in plain text: a `rows cols` header followed by one row
/// per line. Rows are 0/1 digits, optionally separated by spaces or commas.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_text(text: &str) -> Result<BitMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `rows cols` header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: hline,
            message: format!("bad header: {e}"),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            message: "header must be `rows cols`".into(),
        });
    };
    let mut m = BitMatrix::empty(cols);
    for (line, body) in lines {
        let v: BitVector = body.parse().map_err(|e: Error| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        if v.len() != cols {
            return Err(Error::Parse {
                line,
                message: format!("row has {} entries, expected {cols}", v.len()),
            });
        }
        m.push_row(v)?;
    }
    if m.num_rows() != rows {
        return Err(Error::Parse {
            line: hline,
            message: format!("header promises {rows} rows, found {}", m.num_rows()),
        });
    }
    Ok(m)
}

pub fn format_matrix_text(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.num_rows(), m.num_cols());
    for r in m.rows() {
        let _ = writeln!(out, "{r}");
    }
    out
}

/// `{"vertex_count": 6, "edges": [[1,2,3], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl HypergraphFile {
    pub fn from_hypergraph(h: &Hypergraph3) -> Self {
        Self {
            vertex_count: h.vertex_count(),
            edges: h.edges().to_vec(),
        }
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph3> {
        Hypergraph3::new(self.vertex_count, self.edges.clone())
    }
}

/// `{"register_count": 6, "qubits_per_register": 1, "num_layers": 1, "layers": [[[1,2,3],[4,5,6]]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub register_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits_per_register: Option<usize>,
    pub num_layers: usize,
    pub layers: Vec<Vec<Edge>>,
}

impl ScheduleFile {
    pub fn new(
        schedule: &Schedule,
        register_count: usize,
        qubits_per_register: Option<usize>,
    ) -> Self {
        Self {
            register_count,
            qubits_per_register,
            num_layers: schedule.depth(),
            layers: schedule.layers.clone(),
        }
    }

    pub fn schedule(&self) -> Schedule {
        Schedule {
            layers: self.layers.clone(),
        }
    }
}

const DOT_STYLES: [&str; 3] = ["solid", "dashed", "dotted"];

/// Each hyperedge is drawn as a triangle labelled with its layer.
pub fn schedule_to_dot(schedule: &Schedule, vertex_count: usize) -> String {
    let mut out = String::from("graph schedule {\n  node [shape=circle];\n");
    for v in 1..=vertex_count {
        let _ = writeln!(out, "  q{v};");
    }
    for (l, layer) in schedule.layers.iter().enumerate() {
        let style = DOT_STYLES[l % DOT_STYLES.len()];
        for [a, b, c] in layer {
            for (u, w) in [(a, b), (b, c), (a, c)] {
                let _ = writeln!(out, "  q{u} -- q{w} [label=\"L{}\", style={style}];", l + 1);
            }
        }
    }
    out.push_str("}\n");
    out
}
