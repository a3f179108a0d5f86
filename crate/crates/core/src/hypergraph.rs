//! 3-uniform hypergraphs of CCZ gates, greedy edge coloring and layered
//! schedules.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Edge = [usize; 3];

/// A 3-uniform hypergraph on vertices `1..=vertex_count`. Edges keep their
/// input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph3 {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut seen: HashMap<Edge, usize> = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                if v == 0 || v > vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge: i + 1,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            let mut key = *e;
            key.sort_unstable();
            if key[0] == key[1] || key[1] == key[2] {
                return Err(Error::RepeatedVertex {
                    edge: i + 1,
                    vertex: key[1],
                });
            }
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicateEdge {
                    edge: i + 1,
                    first: first + 1,
                });
            }
            seen.insert(key, i);
            for &v in e {
                incidence[v - 1].push(i);
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges containing the 1-based vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v - 1].len()
    }

    /// Δ(H), the maximum vertex degree (0 for an edgeless hypergraph).
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Indices of edges sharing at least one vertex with edge `e`.
    pub fn neighbors(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges[e]
            .iter()
            .flat_map(move |&v| self.incidence[v - 1].iter().copied())
            .filter(move |&f| f != e)
    }

    /// 3Δ + 1.
    pub fn palette_bound(&self) -> usize {
        3 * self.max_degree() + 1
    }
}

pub fn max_degree(h: &Hypergraph3) -> usize {
    h.max_degree()
}

/// Colors in `1..=palette`, one per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub color_of: Vec<usize>,
    pub palette: usize,
}

/// Record of one greedy assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringStep {
    pub edge: usize,
    /// Distinct colors already used by adjacent edges.
    pub forbidden: usize,
    /// Colors of the 3Δ+1 palette still free for this edge.
    pub available: usize,
    pub color: usize,
}

/// Greedy coloring in stored edge order with the smallest free color.
pub fn greedy_color(h: &Hypergraph3) -> EdgeColoring {
    greedy_color_traced(h).0
}

/// [`greedy_color`] plus the per-edge trace.
pub fn greedy_color_traced(h: &Hypergraph3) -> (EdgeColoring, Vec<ColoringStep>) {
    let bound = h.palette_bound();
    let mut color_of = vec![0usize; h.edge_count()];
    let mut trace = Vec::with_capacity(h.edge_count());
    let mut taken = vec![false; bound + 2];
    for e in 0..h.edge_count() {
        let mut marked = Vec::new();
        for f in h.neighbors(e) {
            let c = color_of[f];
            if c != 0 && !taken[c] {
                taken[c] = true;
                marked.push(c);
            }
        }
        let color = (1..)
            .find(|&c| !taken[c])
            .expect("palette has a free color");
        let forbidden = marked.len();
        let available = (1..=bound).filter(|&c| !taken[c]).count();
        for c in marked {
            taken[c] = false;
        }
        color_of[e] = color;
        trace.push(ColoringStep {
            edge: e,
            forbidden,
            available,
            color,
        });
    }
    let palette = color_of.iter().copied().max().unwrap_or(0);
    (EdgeColoring { color_of, palette }, trace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringViolation {
    pub first: usize,
    pub second: usize,
    pub vertex: usize,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringVerdict {
    pub ok: bool,
    pub proper: bool,
    pub within_palette_bound: bool,
    pub palette: usize,
    pub palette_bound: usize,
    /// First pair of same-colored edges sharing a vertex (0-based edge
    /// indices, 1-based vertex).
    pub violation: Option<ColoringViolation>,
}

fn find_violation(h: &Hypergraph3, coloring: &EdgeColoring) -> Option<ColoringViolation> {
    for (v, edges) in h.incidence.iter().enumerate() {
        let mut by_color: HashMap<usize, usize> = HashMap::new();
        for &e in edges {
            let c = coloring.color_of[e];
            if let Some(&first) = by_color.get(&c) {
                return Some(ColoringViolation {
                    first,
                    second: e,
                    vertex: v + 1,
                    color: c,
                });
            }
            by_color.insert(c, e);
        }
    }
    None
}

/// Independent re-check of properness and the 3Δ+1 palette bound.
pub fn verify_coloring(h: &Hypergraph3, coloring: &EdgeColoring) -> ColoringVerdict {
    let palette_bound = h.palette_bound();
    let sized = coloring.color_of.len() == h.edge_count()
        && coloring
            .color_of
            .iter()
            .all(|&c| (1..=coloring.palette).contains(&c));
    let violation = if sized {
        find_violation(h, coloring)
    } else {
        None
    };
    let proper = sized && violation.is_none();
    let within_palette_bound = coloring.palette <= palette_bound;
    ColoringVerdict {
        ok: proper && within_palette_bound,
        proper,
        within_palette_bound,
        palette: coloring.palette,
        palette_bound,
        violation,
    }
}

/// Layered circuit: each layer is a list of pairwise vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub layers: Vec<Vec<Edge>>,
}

impl Schedule {
    /// Number of nonempty layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

/// Color class c becomes a layer; empty classes are dropped.
pub fn schedule_from_coloring(h: &Hypergraph3, coloring: &EdgeColoring) -> Result<Schedule> {
    if coloring.color_of.len() != h.edge_count() {
        return Err(Error::ColoringSize {
            expected: h.edge_count(),
            found: coloring.color_of.len(),
        });
    }
    if let Some(v) = find_violation(h, coloring) {
        return Err(Error::ImproperColoring {
            first: v.first + 1,
            second: v.second + 1,
            vertex: v.vertex,
            color: v.color,
        });
    }
    let max_color = coloring.color_of.iter().copied().max().unwrap_or(0);
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); max_color + 1];
    for (e, &c) in h.edges().iter().zip(&coloring.color_of) {
        classes[c].push(*e);
    }
    Ok(Schedule {
        layers: classes.into_iter().filter(|l| !l.is_empty()).collect(),
    })
}
