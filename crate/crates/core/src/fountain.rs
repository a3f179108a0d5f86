//! End-to-end fountain pipeline: pack triples, expand each selected triple
//! into physical CCZ gates, color the resulting hypergraph, and report the
//! throughput and distance bounds of the layered circuit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::hypergraph::{
    greedy_color_traced, schedule_from_coloring, verify_coloring, Edge, Hypergraph3, Schedule,
};
use crate::packing::greedy_pack;
use crate::rational::Rational;
use crate::triples::{CollectionStats, MagicFriendlyTriple};

/// Gate arity used for the light-cone bound (every gate is a CCZ).
pub const GATE_ARITY: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// CCZ on `(i, n+i, 2n+i)` for every coordinate `i`.
    WirewiseFull,
    /// Wirewise CCZ only where x, y and z are all 1.
    WirewiseIntersection,
    /// One hyperedge standing for a whole logical block.
    AbstractEdge,
    /// User-supplied edge list, repeated in every block.
    Explicit,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::WirewiseFull => "wirewise-full",
            Strategy::WirewiseIntersection => "wirewise-intersection",
            Strategy::AbstractEdge => "abstract-edge",
            Strategy::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "wirewise-full" => Ok(Strategy::WirewiseFull),
            "wirewise-intersection" => Ok(Strategy::WirewiseIntersection),
            "abstract-edge" => Ok(Strategy::AbstractEdge),
            "explicit" => Ok(Strategy::Explicit),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// Per-triple register block. Vertices of a block are numbered
/// `register * qubits_per_register + qubit` (qubit 1-based), and block `j`
/// is shifted by `j * block_size()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub registers: usize,
    pub qubits_per_register: usize,
}

impl RegisterLayout {
    pub fn block_size(&self) -> usize {
        self.registers * self.qubits_per_register
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatePattern {
    pub strategy: Strategy,
    pub layout: RegisterLayout,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub explicit_edges: Vec<Edge>,
}

impl GatePattern {
    pub fn wirewise_full(n: usize) -> Self {
        Self::wirewise(Strategy::WirewiseFull, n)
    }

    pub fn wirewise_intersection(n: usize) -> Self {
        Self::wirewise(Strategy::WirewiseIntersection, n)
    }

    fn wirewise(strategy: Strategy, n: usize) -> Self {
        Self {
            strategy,
            layout: RegisterLayout {
                registers: 3,
                qubits_per_register: n,
            },
            explicit_edges: Vec::new(),
        }
    }

    /// One abstract vertex per register, three registers per block.
    pub fn abstract_edge() -> Self {
        Self::abstract_with(RegisterLayout {
            registers: 3,
            qubits_per_register: 1,
        })
    }

    pub fn abstract_with(layout: RegisterLayout) -> Self {
        Self {
            strategy: Strategy::AbstractEdge,
            layout,
            explicit_edges: Vec::new(),
        }
    }

    /// Block-local edges (1-based within the block).
    pub fn explicit(layout: RegisterLayout, edges: Vec<Edge>) -> Self {
        Self {
            strategy: Strategy::Explicit,
            layout,
            explicit_edges: edges,
        }
    }

    /// Default pattern for `strategy` on an `n`-qubit code.
    pub fn for_strategy(strategy: Strategy, n: usize) -> Result<Self> {
        match strategy {
            Strategy::WirewiseFull => Ok(Self::wirewise_full(n)),
            Strategy::WirewiseIntersection => Ok(Self::wirewise_intersection(n)),
            Strategy::AbstractEdge => Ok(Self::abstract_edge()),
            Strategy::Explicit => Err(Error::LayoutMismatch(
                "the explicit strategy needs a user-supplied edge list".into(),
            )),
        }
    }

    /// d₀: the largest number of gates on one vertex in the expansion of
    /// `triple`.
    pub fn per_qubit_gate_bound(&self, triple: &MagicFriendlyTriple) -> Result<usize> {
        Ok(max_vertex_load(&gates_for_triple(triple, self, 0)?))
    }
}

fn max_vertex_load(edges: &[Edge]) -> usize {
    let mut counts = std::collections::HashMap::new();
    for &v in edges.iter().flatten() {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// Physical CCZ gates for one triple, shifted by `block_offset`.
pub fn gates_for_triple(
    triple: &MagicFriendlyTriple,
    pattern: &GatePattern,
    block_offset: usize,
) -> Result<Vec<Edge>> {
    let layout = pattern.layout;
    match pattern.strategy {
        Strategy::WirewiseFull | Strategy::WirewiseIntersection => {
            let n = triple.len();
            if layout.registers != 3 || layout.qubits_per_register != n {
                return Err(Error::LayoutMismatch(format!(
                    "{} needs 3 registers of {n} qubits, layout has {} of {}",
                    pattern.strategy, layout.registers, layout.qubits_per_register
                )));
            }
            let coords: Vec<usize> = if pattern.strategy == Strategy::WirewiseFull {
                (1..=n).collect()
            } else {
                triple.common_support()
            };
            Ok(coords
                .into_iter()
                .map(|i| {
                    [
                        block_offset + i,
                        block_offset + n + i,
                        block_offset + 2 * n + i,
                    ]
                })
                .collect())
        }
        Strategy::AbstractEdge => {
            if layout.block_size() < 3 {
                return Err(Error::LayoutMismatch(
                    "abstract edge needs at least 3 vertices per block".into(),
                ));
            }
            let q = layout.qubits_per_register;
            let local = if layout.registers >= 3 {
                [1, q + 1, 2 * q + 1]
            } else {
                [1, 2, 3]
            };
            Ok(vec![local.map(|v| block_offset + v)])
        }
        Strategy::Explicit => {
            let block = layout.block_size();
            if let Some(e) = pattern
                .explicit_edges
                .iter()
                .find(|e| e.iter().any(|&v| v == 0 || v > block))
            {
                return Err(Error::LayoutMismatch(format!(
                    "explicit edge {e:?} leaves the block of {block} vertices"
                )));
            }
            Ok(pattern
                .explicit_edges
                .iter()
                .map(|e| e.map(|v| block_offset + v))
                .collect())
        }
    }
}

/// |S| / (M·b·n).
pub fn throughput_bound(
    count: usize,
    participation: usize,
    b: &Rational,
    n: usize,
) -> Result<Rational> {
    let denom = &b.0 * BigInt::from(participation) * BigInt::from(n);
    if participation == 0 || n == 0 || b.is_zero() {
        return Err(Error::ZeroDivisor("throughput bound"));
    }
    Ok(Rational(
        num_rational::BigRational::from_integer(count.into()) / denom,
    ))
}

/// The light-cone bound d / q^L, exact, with its integer floor clamped to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub exact: Rational,
    pub floor: u64,
}

pub fn lightcone_distance_bound(d: u64, q: u32, depth: u32) -> Result<DistanceBound> {
    if q == 0 {
        return Err(Error::ZeroDivisor("light-cone bound (q = 0)"));
    }
    let denom = num_traits::pow(BigInt::from(q), depth as usize);
    let exact = Rational::new(d, denom)?;
    let floor = exact.floor().to_u64().unwrap_or(0).max(1);
    Ok(DistanceBound { exact, floor })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub distance_cutoff: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            distance_cutoff: crate::code::DEFAULT_DISTANCE_CUTOFF,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FountainReport {
    pub strategy: Strategy,
    pub n: usize,
    pub input_count: usize,
    pub selected_count: usize,
    pub selected: Vec<usize>,
    pub stats: CollectionStats,
    /// Largest per-qubit gate count within one triple's expansion.
    pub d0: usize,
    pub delta: usize,
    pub depth: usize,
    pub palette_bound: usize,
    pub throughput_lower_bound: Rational,
    pub q: u32,
    pub input_distance: Option<usize>,
    pub distance_lower_bound: Option<Rational>,
    pub distance_floor: Option<u64>,
    pub vertex_count: usize,
    pub register_count: usize,
    pub qubits_per_register: usize,
    pub gate_count: usize,
    pub schedule: Schedule,
}

/// Runs packing, gate expansion, coloring and scheduling for `triples`.
pub fn run_pipeline(
    code: &CssCode,
    triples: &[MagicFriendlyTriple],
    pattern: &GatePattern,
    options: &PipelineOptions,
) -> Result<FountainReport> {
    if triples.is_empty() {
        return Err(Error::NoTriples);
    }
    let n = code.n();
    if let Some(t) = triples.iter().find(|t| t.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: t.len(),
        });
    }
    let packing = greedy_pack(triples, n)?;
    debug_assert!(!packing.selected.is_empty());

    let block = pattern.layout.block_size();
    let mut edges = Vec::new();
    let mut d0 = 0;
    for (j, &t) in packing.selected.iter().enumerate() {
        let gates = gates_for_triple(&triples[t], pattern, j * block)?;
        d0 = d0.max(max_vertex_load(&gates));
        edges.extend(gates);
    }
    let vertex_count = block * packing.selected.len();
    let h = Hypergraph3::new(vertex_count, edges)?;
    let delta = h.max_degree();
    if delta > d0 {
        return Err(Error::LayoutMismatch(format!(
            "hypergraph degree {delta} exceeds per-triple bound {d0}"
        )));
    }
    let (coloring, _) = greedy_color_traced(&h);
    let verdict = verify_coloring(&h, &coloring);
    debug_assert!(verdict.ok);
    let schedule = schedule_from_coloring(&h, &coloring)?;
    let depth = schedule.depth();

    let input_distance = code.distance_exact(options.distance_cutoff).d;
    let bound = input_distance
        .map(|d| lightcone_distance_bound(d as u64, GATE_ARITY, depth as u32))
        .transpose()?;

    Ok(FountainReport {
        strategy: pattern.strategy,
        n,
        input_count: triples.len(),
        selected_count: packing.selected.len(),
        selected: packing.selected,
        stats: packing.stats_used,
        d0,
        delta,
        depth,
        palette_bound: 3 * delta + 1,
        throughput_lower_bound: packing.guaranteed_lower_bound,
        q: GATE_ARITY,
        input_distance,
        distance_lower_bound: bound.as_ref().map(|b| b.exact.clone()),
        distance_floor: bound.map(|b| b.floor),
        vertex_count,
        register_count: pattern.layout.registers * h.vertex_count().checked_div(block).unwrap_or(0),
        qubits_per_register: pattern.layout.qubits_per_register,
        gate_count: h.edge_count(),
        schedule,
    })
}

/// Log-log least-squares fit of candidate counts, count ≈ c₁·n^(1+γ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    /// Fitted exponent minus one; the throughput exponent β is taken equal to
    /// it.
    pub gamma_estimate: f64,
    pub c1_estimate: f64,
    /// log(count) minus the fitted value, per point.
    pub residuals: Vec<f64>,
    pub gamma_positive: bool,
}

pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if let Some(p) = points
        .iter()
        .find(|(n, c)| !(*n > 0.0 && *c > 0.0 && n.is_finite() && c.is_finite()))
    {
        return Err(Error::DegenerateFit(format!(
            "point {p:?} is not strictly positive"
        )));
    }
    let mut distinct: Vec<f64> = points.iter().map(|p| p.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 distinct n values, got {}",
            distinct.len()
        )));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (intercept + slope * x))
        .collect();
    let gamma = slope - 1.0;
    Ok(ScalingFit {
        points: points.to_vec(),
        slope,
        gamma_estimate: gamma,
        c1_estimate: intercept.exp(),
        residuals,
        gamma_positive: gamma > 0.0,
    })
}
