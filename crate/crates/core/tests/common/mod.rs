//! Naive reference implementations on u64 bitmasks, written without the
//! library's linear algebra. Bit `i` of a mask is coordinate `i + 1`.

#![allow(dead_code)]

use ccz_fountain::phaseverify::{DiagonalCircuit, GateKind};
use ccz_fountain::{BitMatrix, BitVector};
use rand::Rng;

pub fn to_mask(v: &BitVector) -> u64 {
    v.iter()
        .enumerate()
        .filter(|(_, b)| *b)
        .map(|(i, _)| 1u64 << i)
        .sum()
}

pub fn from_mask(mask: u64, n: usize) -> BitVector {
    BitVector::from_bits((0..n).map(|i| (mask >> i) & 1 == 1))
}

pub fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// Rank by textbook elimination on masks.
pub fn rank(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut r = 0;
    for bit in 0..64 {
        let Some(p) = (r..rows.len()).find(|&i| (rows[i] >> bit) & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && (rows[i] >> bit) & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        r += 1;
    }
    r
}

pub fn in_span(rows: &[u64], v: u64) -> bool {
    let mut with = rows.to_vec();
    with.push(v);
    rank(&with) == rank(rows)
}

pub struct NaiveDistance {
    pub d_x: Option<usize>,
    pub d_z: Option<usize>,
}

/// Minimum weight of C_Z^⊥ \ C_X and C_X^⊥ \ C_Z over all 2^n vectors.
pub fn naive_distance(n: usize, sx: &[u64], sz: &[u64]) -> NaiveDistance {
    let min_outside = |checks: &[u64], sub: &[u64]| {
        (1u64..(1 << n))
            .filter(|&v| checks.iter().all(|&c| !parity(c & v)) && !in_span(sub, v))
            .map(|v| v.count_ones() as usize)
            .min()
    };
    NaiveDistance {
        d_x: min_outside(sz, sx),
        d_z: min_outside(sx, sz),
    }
}

/// Random commuting pair: s_x rows are random, s_z rows are random vectors
/// orthogonal to every s_x row (rejection sampling).
pub fn random_commuting<R: Rng>(
    rng: &mut R,
    n: usize,
    rx: usize,
    rz: usize,
) -> (Vec<u64>, Vec<u64>) {
    let full = (1u64 << n) - 1;
    let sx: Vec<u64> = (0..rx).map(|_| rng.gen::<u64>() & full).collect();
    let mut sz = Vec::new();
    while sz.len() < rz {
        let v = rng.gen::<u64>() & full;
        if sx.iter().all(|&r| !parity(r & v)) {
            sz.push(v);
        }
    }
    (sx, sz)
}

pub fn matrix(n: usize, rows: &[u64]) -> BitMatrix {
    BitMatrix::from_rows(n, rows.iter().map(|&r| from_mask(r, n)).collect()).unwrap()
}

/// Phase exponent of a diagonal circuit on an integer label, one gate at a
/// time.
pub fn gate_phase(circuit: &DiagonalCircuit, label: u64) -> bool {
    let mut e = false;
    for g in circuit.gates() {
        debug_assert_eq!(
            g.targets.len(),
            match g.kind {
                GateKind::Z => 1,
                GateKind::CZ => 2,
                GateKind::CCZ => 3,
            }
        );
        e ^= g.targets.iter().all(|&q| (label >> (q - 1)) & 1 == 1);
    }
    e
}

/// ANF coefficients by the subset formula: coeff(m) = XOR of f(s) over s ⊆ m.
pub fn naive_anf(num_vars: usize, table: &[bool]) -> Vec<u64> {
    let mut out = Vec::new();
    for m in 0u64..(1 << num_vars) {
        let mut c = false;
        let mut s = m;
        loop {
            c ^= table[s as usize];
            if s == 0 {
                break;
            }
            s = (s - 1) & m;
        }
        if c {
            out.push(m);
        }
    }
    out
}
