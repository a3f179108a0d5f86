//! Brute-force oracles for diagonal {Z, CZ, CCZ} circuits.
//!
//! Every gate in scope is ±1-diagonal in the computational basis, so a
//! circuit's action on a basis label is a single GF(2) phase exponent: the sum
//! over gates of the product of the targeted bits. Phases are handled as
//! exponents (or as cubic polynomials over the label bits), never as
//! floating-point amplitudes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::f2la::{triple_overlap, BitVector, Echelon};
use crate::triples::MagicFriendlyTriple;

/// Default number of label evaluations per constancy or extraction call.
pub const DEFAULT_PHASE_CUTOFF: u64 = 1 << 20;

/// Largest register handled by [`lightcone_support_check`].
pub const MAX_LIGHTCONE_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Z,
    CZ,
    CCZ,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Z => 1,
            GateKind::CZ => 2,
            GateKind::CCZ => 3,
        }
    }
}

/// A diagonal gate on 1-based qubits, optionally pinned to a 1-based layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Self {
        Self {
            kind,
            targets,
            layer: None,
        }
    }

    pub fn in_layer(mut self, layer: usize) -> Self {
        self.layer = Some(layer);
        self
    }

    pub fn ccz(a: usize, b: usize, c: usize) -> Self {
        Self::new(GateKind::CCZ, vec![a, b, c])
    }

    fn fires(&self, label: &BitVector) -> bool {
        self.targets.iter().all(|&q| label.get(q - 1))
    }
}

/// An ordered list of diagonal gates on `qubit_count` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit", into = "RawCircuit")]
pub struct DiagonalCircuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

impl TryFrom<RawCircuit> for DiagonalCircuit {
    type Error = Error;

    fn try_from(raw: RawCircuit) -> Result<Self> {
        Self::new(raw.qubit_count, raw.gates)
    }
}

impl From<DiagonalCircuit> for RawCircuit {
    fn from(c: DiagonalCircuit) -> Self {
        Self {
            qubit_count: c.qubit_count,
            gates: c.gates,
        }
    }
}

impl DiagonalCircuit {
    pub fn new(qubit_count: usize, gates: Vec<Gate>) -> Result<Self> {
        if qubit_count == 0 {
            return Err(Error::CircuitSize {
                expected: 1,
                found: 0,
            });
        }
        for (i, g) in gates.iter().enumerate() {
            let invalid = |reason: String| Error::InvalidGate {
                gate: i + 1,
                reason,
            };
            if g.targets.len() != g.kind.arity() {
                return Err(invalid(format!(
                    "{:?} needs {} targets, got {}",
                    g.kind,
                    g.kind.arity(),
                    g.targets.len()
                )));
            }
            if let Some(&q) = g.targets.iter().find(|&&q| q == 0 || q > qubit_count) {
                return Err(invalid(format!("target {q} outside 1..={qubit_count}")));
            }
            let distinct: BTreeSet<_> = g.targets.iter().collect();
            if distinct.len() != g.targets.len() {
                return Err(invalid("repeated target".into()));
            }
            if g.layer == Some(0) {
                return Err(invalid("layers are 1-based".into()));
            }
        }
        let layered = gates.iter().filter(|g| g.layer.is_some()).count();
        if layered != 0 && layered != gates.len() {
            return Err(Error::MalformedLayer {
                layer: 0,
                reason: "either every gate or no gate carries a layer".into(),
            });
        }
        Ok(Self { qubit_count, gates })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn has_layers(&self) -> bool {
        !self.gates.is_empty() && self.gates.iter().all(|g| g.layer.is_some())
    }

    /// Gates grouped by layer in ascending layer order; empty layer numbers
    /// are skipped.
    pub fn layers(&self) -> Result<Vec<Vec<&Gate>>> {
        if self.gates.is_empty() {
            return Ok(Vec::new());
        }
        if !self.has_layers() {
            return Err(Error::MissingLayers);
        }
        let max = self.gates.iter().filter_map(|g| g.layer).max().unwrap_or(0);
        let mut layers: Vec<Vec<&Gate>> = vec![Vec::new(); max];
        for g in &self.gates {
            layers[g.layer.expect("checked") - 1].push(g);
        }
        let layers: Vec<Vec<&Gate>> = layers.into_iter().filter(|l| !l.is_empty()).collect();
        for (i, layer) in layers.iter().enumerate() {
            let mut used = BTreeSet::new();
            for g in layer {
                for &q in &g.targets {
                    if !used.insert(q) {
                        return Err(Error::MalformedLayer {
                            layer: i + 1,
                            reason: format!("qubit {q} is acted on twice"),
                        });
                    }
                }
            }
        }
        Ok(layers)
    }

    /// CCZ on `(i, n+i, 2n+i)` for every `i` in `1..=n`, all in layer 1.
    pub fn wirewise(n: usize) -> Self {
        let gates = (1..=n)
            .map(|i| Gate::ccz(i, n + i, 2 * n + i).in_layer(1))
            .collect();
        Self::new(3 * n, gates).expect("wirewise circuit is valid")
    }

    /// Wirewise CCZ restricted to coordinates in `coordinates` (1-based).
    pub fn wirewise_on(n: usize, coordinates: &[usize]) -> Result<Self> {
        let gates = coordinates
            .iter()
            .map(|&i| Gate::ccz(i, n + i, 2 * n + i).in_layer(1))
            .collect();
        Self::new(3 * n, gates)
    }
}

/// Phase exponent of `circuit` on a computational basis label, evaluated gate
/// by gate.
pub fn diagonal_phase(circuit: &DiagonalCircuit, label: &BitVector) -> Result<bool> {
    if label.len() != circuit.qubit_count {
        return Err(Error::LengthMismatch {
            expected: circuit.qubit_count,
            found: label.len(),
        });
    }
    Ok(circuit
        .gates
        .iter()
        .fold(false, |acc, g| acc ^ g.fires(label)))
}

/// A monomial is a sorted list of distinct 0-based variable indices; the
/// empty monomial is the constant 1.
pub type Monomial = Vec<usize>;

/// Polynomial over GF(2) in multilinear (algebraic normal) form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePolynomial {
    pub num_vars: usize,
    pub monomials: BTreeSet<Monomial>,
}

impl PhasePolynomial {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            monomials: BTreeSet::new(),
        }
    }

    /// Adds (XORs) a monomial.
    pub fn toggle(&mut self, mut monomial: Monomial) {
        monomial.sort_unstable();
        monomial.dedup();
        if !self.monomials.remove(&monomial) {
            self.monomials.insert(monomial);
        }
    }

    /// Symbolic phase of a circuit over its qubit variables.
    pub fn from_circuit(circuit: &DiagonalCircuit) -> Self {
        let mut p = Self::new(circuit.qubit_count);
        for g in &circuit.gates {
            p.toggle(g.targets.iter().map(|q| q - 1).collect());
        }
        p
    }

    /// Algebraic normal form of a truth table indexed by `mask`, where bit `v`
    /// of `mask` is variable `v`.
    pub fn from_truth_table(num_vars: usize, table: &[bool]) -> Self {
        assert_eq!(table.len(), 1 << num_vars, "truth table size");
        let mut anf = table.to_vec();
        for v in 0..num_vars {
            let bit = 1 << v;
            for mask in 0..anf.len() {
                if mask & bit != 0 {
                    anf[mask] ^= anf[mask ^ bit];
                }
            }
        }
        let monomials = anf
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(mask, _)| (0..num_vars).filter(|v| (mask >> v) & 1 == 1).collect())
            .collect();
        Self {
            num_vars,
            monomials,
        }
    }

    pub fn evaluate(&self, assignment: &BitVector) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.iter().all(|&v| assignment.get(v)))
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Monomials using only variables in `vars`.
    pub fn restrict_to(&self, vars: &[usize]) -> BTreeSet<Monomial> {
        self.monomials
            .iter()
            .filter(|m| m.iter().all(|v| vars.contains(v)))
            .cloned()
            .collect()
    }
}

/// Materialized phase exponents over all 2^qubit_count labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTable {
    pub qubit_count: usize,
    /// Entry `m` is the exponent of the label whose qubit `q` is bit `q-1` of `m`.
    pub exponents: Vec<bool>,
}

impl PhaseTable {
    pub fn materialize(circuit: &DiagonalCircuit, cutoff: u64) -> Result<Self> {
        let n = circuit.qubit_count;
        if n >= 64 || (1u64 << n) > cutoff {
            return Err(Error::CutoffExceeded {
                required: 1u128 << n.min(127),
                cutoff: cutoff.into(),
            });
        }
        let exponents = (0u64..(1 << n))
            .map(|m| {
                let label = BitVector::from_bits((0..n).map(|q| (m >> q) & 1 == 1));
                diagonal_phase(circuit, &label).expect("label length matches")
            })
            .collect();
        Ok(Self {
            qubit_count: n,
            exponents,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirewiseCheck {
    pub matches: bool,
    /// Phase exponent of the wirewise circuit on x‖y‖z.
    pub exponent: u8,
    pub tau: u8,
}

/// Compares the gate-by-gate phase of the wirewise CCZ layer on x‖y‖z with
/// the triple overlap τ(x, y, z).
pub fn check_wirewise_phase(x: &BitVector, y: &BitVector, z: &BitVector) -> Result<WirewiseCheck> {
    let tau = triple_overlap(x, y, z)?;
    let circuit = DiagonalCircuit::wirewise(x.len());
    let label = x.concat(y).concat(z);
    let exponent = diagonal_phase(&circuit, &label)?;
    Ok(WirewiseCheck {
        matches: exponent == tau,
        exponent: exponent.into(),
        tau: tau.into(),
    })
}

fn subset_sum(basis: &[BitVector], mask: u64, n: usize) -> BitVector {
    let mut v = BitVector::zeros(n);
    for (i, b) in basis.iter().enumerate() {
        if (mask >> i) & 1 == 1 {
            v ^= b;
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Constancy {
    Constant {
        exponent: u8,
        evaluated: u64,
    },
    Counterexample {
        base: [BitVector; 3],
        base_exponent: u8,
        other: [BitVector; 3],
        other_exponent: u8,
    },
    Unknown {
        required: u128,
        cutoff: u64,
    },
}

impl Constancy {
    pub fn is_constant(&self) -> bool {
        matches!(self, Constancy::Constant { .. })
    }
}

fn check_three_registers(code: &CssCode, circuit: &DiagonalCircuit) -> Result<()> {
    if circuit.qubit_count != 3 * code.n() {
        return Err(Error::CircuitSize {
            expected: 3 * code.n(),
            found: circuit.qubit_count,
        });
    }
    Ok(())
}

/// Evaluates the phase on every representative of (x+C_X, y+C_X, z+C_X) and
/// reports whether it is constant. Shifts are enumerated in increasing
/// combination index; the first disagreeing combination is returned.
pub fn check_coset_constancy(
    code: &CssCode,
    triple: &MagicFriendlyTriple,
    circuit: &DiagonalCircuit,
    cutoff: u64,
) -> Result<Constancy> {
    check_three_registers(code, circuit)?;
    if triple.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: triple.len(),
        });
    }
    let dim = code.cx_basis().len();
    let bits = 3 * dim;
    if bits >= 64 || (1u64 << bits) > cutoff {
        return Ok(Constancy::Unknown {
            required: 1u128 << bits.min(127),
            cutoff,
        });
    }
    let n = code.n();
    let shifts: Vec<BitVector> = (0u64..(1 << dim))
        .map(|m| subset_sum(code.cx_basis(), m, n))
        .collect();
    let reps = |combo: u64| -> [BitVector; 3] {
        let mask = (1u64 << dim) - 1;
        let [x, y, z] = triple.vectors();
        [
            x ^ &shifts[(combo & mask) as usize],
            y ^ &shifts[((combo >> dim) & mask) as usize],
            z ^ &shifts[((combo >> (2 * dim)) & mask) as usize],
        ]
    };
    let phase = |r: &[BitVector; 3]| -> Result<bool> {
        diagonal_phase(circuit, &r[0].concat(&r[1]).concat(&r[2]))
    };

    let base = reps(0);
    let base_exponent = phase(&base)?;
    for combo in 1u64..(1 << bits) {
        let other = reps(combo);
        let e = phase(&other)?;
        if e != base_exponent {
            return Ok(Constancy::Counterexample {
                base,
                base_exponent: base_exponent.into(),
                other,
                other_exponent: e.into(),
            });
        }
    }
    Ok(Constancy::Constant {
        exponent: base_exponent.into(),
        evaluated: 1 << bits,
    })
}

/// Logical phase polynomial of a circuit in a logical basis adapted to a
/// triple.
///
/// The basis starts with the triple's own representatives `x, y, z` and is
/// completed from the code's logical basis. Register `r ∈ {a, b, c}` carries
/// logical label bits `r1..rk`; the target monomial is `a1·b2·c3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalAction {
    pub k: usize,
    pub basis: Vec<BitVector>,
    pub polynomial: PhasePolynomial,
    pub target: Monomial,
    /// Monomials over the three target variables only.
    pub restriction: Vec<Monomial>,
    pub restriction_is_ccz: bool,
    /// All monomials other than the target.
    pub spectators: Vec<Monomial>,
    pub degree: usize,
}

impl LogicalAction {
    /// Human-readable name of a variable, e.g. `b2`.
    pub fn variable_name(&self, var: usize) -> String {
        let register = ["a", "b", "c"][var / self.k];
        format!("{register}{}", var % self.k + 1)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&v| self.variable_name(v))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for LogicalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .polynomial
            .monomials
            .iter()
            .map(|m| self.format_monomial(m))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Logical basis starting with the triple's representatives.
pub fn adapted_logical_basis(
    code: &CssCode,
    triple: &MagicFriendlyTriple,
) -> Result<Vec<BitVector>> {
    for v in triple.vectors() {
        if !code.in_dual_z(v)? {
            return Err(Error::NotMagicFriendly(
                "not all vectors lie in C_Z^perp".into(),
            ));
        }
    }
    let mut ech = Echelon::from_vectors(code.n(), code.cx_basis())?;
    let mut basis = Vec::with_capacity(code.num_logicals());
    for v in triple.vectors() {
        if !ech.insert(v)? {
            return Err(Error::NotIndependent);
        }
        basis.push(v.clone());
    }
    for l in code.logical_x_basis() {
        if ech.insert(l)? {
            basis.push(l.clone());
        }
    }
    debug_assert_eq!(basis.len(), code.num_logicals());
    Ok(basis)
}

/// Exhaustively tabulates the logical phase over all 2^(3k) logical labels
/// (fixed representatives from the adapted basis) and returns its algebraic
/// normal form with the CCZ verdict and spectator terms.
pub fn extract_logical_action(
    code: &CssCode,
    triple: &MagicFriendlyTriple,
    circuit: &DiagonalCircuit,
    cutoff: u64,
) -> Result<LogicalAction> {
    match check_coset_constancy(code, triple, circuit, cutoff)? {
        Constancy::Constant { .. } => {}
        Constancy::Counterexample { .. } => return Err(Error::NonConstantCosets),
        Constancy::Unknown { required, cutoff } => {
            return Err(Error::CutoffExceeded {
                required,
                cutoff: cutoff.into(),
            })
        }
    }
    let basis = adapted_logical_basis(code, triple)?;
    let k = basis.len();
    let vars = 3 * k;
    if vars >= 64 || (1u64 << vars) > cutoff {
        return Err(Error::CutoffExceeded {
            required: 1u128 << vars.min(127),
            cutoff: cutoff.into(),
        });
    }
    let n = code.n();
    let reps: Vec<BitVector> = (0u64..(1 << k)).map(|m| subset_sum(&basis, m, n)).collect();
    let symbolic = PhasePolynomial::from_circuit(circuit);
    let low = (1usize << k) - 1;
    let table: Vec<bool> = (0usize..(1 << vars))
        .map(|mask| {
            let label = reps[mask & low]
                .concat(&reps[(mask >> k) & low])
                .concat(&reps[(mask >> (2 * k)) & low]);
            symbolic.evaluate(&label)
        })
        .collect();
    let polynomial = PhasePolynomial::from_truth_table(vars, &table);

    let target: Monomial = vec![0, k + 1, 2 * k + 2];
    let restriction: Vec<Monomial> = polynomial.restrict_to(&target).into_iter().collect();
    let restriction_is_ccz = restriction == [target.clone()];
    let spectators = polynomial
        .monomials
        .iter()
        .filter(|m| **m != target)
        .cloned()
        .collect();
    let degree = polynomial.degree();
    Ok(LogicalAction {
        k,
        basis,
        polynomial,
        target,
        restriction,
        restriction_is_ccz,
        spectators,
        degree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    XType,
    ZType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LightconeReport {
    pub error_support: Vec<usize>,
    pub kind: ErrorKind,
    pub depth: usize,
    /// Qubits on which U†EU acts non-trivially, from the dense matrix.
    pub conjugated_support: Vec<usize>,
    /// Qubits reachable from the error through the layered gates.
    pub light_cone: Vec<usize>,
    pub within_cone: bool,
    /// 3^L · |error_support|.
    pub size_bound: u64,
    pub within_size_bound: bool,
    pub ok: bool,
}

/// Dense real matrix with ±1/0 entries.
struct DenseOp {
    dim: usize,
    data: Vec<i8>,
}

impl DenseOp {
    fn at(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.dim + j]
    }

    /// Single-qubit Pauli error on every qubit of `support`.
    fn pauli(qubits: usize, support: &[usize], kind: ErrorKind) -> Self {
        let dim = 1usize << qubits;
        let mask: usize = support.iter().map(|q| 1 << (q - 1)).sum();
        let mut data = vec![0i8; dim * dim];
        for j in 0..dim {
            match kind {
                ErrorKind::XType => data[(j ^ mask) * dim + j] = 1,
                ErrorKind::ZType => {
                    data[j * dim + j] = if (j & mask).count_ones() % 2 == 1 {
                        -1
                    } else {
                        1
                    }
                }
            }
        }
        Self { dim, data }
    }

    /// U† E U for a real diagonal U given by its diagonal.
    fn conjugate_by_diagonal(&self, diag: &[i8]) -> Self {
        let mut data = self.data.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                data[i * self.dim + j] *= diag[i] * diag[j];
            }
        }
        Self {
            dim: self.dim,
            data,
        }
    }

    /// Whether the operator is the identity on qubit `q` (commutes with X_q
    /// and Z_q).
    fn trivial_on(&self, q: usize) -> bool {
        let bit = 1 << q;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let o = self.at(i, j);
                if o != self.at(i ^ bit, j ^ bit) {
                    return false;
                }
                let zi = (i & bit != 0) as u8;
                let zj = (j & bit != 0) as u8;
                if o != 0 && zi != zj {
                    return false;
                }
            }
        }
        true
    }
}

/// Computes U†EU densely and checks its support against the combinatorial
/// light cone and the 3^L size bound.
pub fn lightcone_support_check(
    circuit: &DiagonalCircuit,
    error_support: &[usize],
    kind: ErrorKind,
) -> Result<LightconeReport> {
    let n = circuit.qubit_count;
    if n > MAX_LIGHTCONE_QUBITS {
        return Err(Error::CutoffExceeded {
            required: n as u128,
            cutoff: MAX_LIGHTCONE_QUBITS as u128,
        });
    }
    let layers = circuit.layers()?;
    let mut support: Vec<usize> = error_support.to_vec();
    support.sort_unstable();
    support.dedup();
    if let Some(&q) = support.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: q,
        });
    }

    let dim = 1usize << n;
    let diag: Vec<i8> = (0..dim)
        .map(|m| {
            let label = BitVector::from_bits((0..n).map(|q| (m >> q) & 1 == 1));
            if diagonal_phase(circuit, &label).expect("label length matches") {
                -1
            } else {
                1
            }
        })
        .collect();
    let conjugated = DenseOp::pauli(n, &support, kind).conjugate_by_diagonal(&diag);
    let conjugated_support: Vec<usize> = (0..n)
        .filter(|&q| !conjugated.trivial_on(q))
        .map(|q| q + 1)
        .collect();

    let mut cone: BTreeSet<usize> = support.iter().copied().collect();
    for layer in layers.iter().rev() {
        for g in layer {
            if g.targets.iter().any(|q| cone.contains(q)) {
                cone.extend(g.targets.iter().copied());
            }
        }
    }
    let light_cone: Vec<usize> = cone.into_iter().collect();
    let depth = layers.len();
    let size_bound = 3u64.pow(depth as u32) * support.len() as u64;
    let within_cone = conjugated_support.iter().all(|q| light_cone.contains(q));
    let within_size_bound = conjugated_support.len() as u64 <= size_bound;
    Ok(LightconeReport {
        error_support: support,
        kind,
        depth,
        conjugated_support,
        light_cone,
        within_cone,
        size_bound,
        within_size_bound,
        ok: within_cone && within_size_bound,
    })
}
