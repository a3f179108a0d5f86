//! CSS code model.
//!
//! Convention: `s_x` generates C_X (supports of X stabilizers) and `s_z`
//! generates C_Z (supports of Z stabilizers). Then
//! `k = n - rank(s_x) - rank(s_z)` and the X-type logical operators are the
//! cosets of C_Z^⊥ / C_X. Some texts phrase the stabilizers in terms of
//! parity-check matrices of the opposite code; here both formulas hold as
//! written.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2la::{nullspace_basis, BitMatrix, BitVector, Echelon};

/// Default enumeration budget for [`CssCode::distance_exact`]: 2^24 codewords
/// per enumerated space.
pub const DEFAULT_DISTANCE_CUTOFF: u64 = 1 << 24;

/// A validated CSS code with cached logical X basis.
#[derive(Clone, Debug)]
pub struct CssCode {
    n: usize,
    s_x: BitMatrix,
    s_z: BitMatrix,
    cx_basis: Vec<BitVector>,
    cz_basis: Vec<BitVector>,
    dual_z_basis: Vec<BitVector>,
    logical_x: Vec<BitVector>,
    coset_solver: Echelon,
    cx_echelon: Echelon,
}

/// Maximum row and column weights of the two stabilizer matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSummary {
    pub x_row: usize,
    pub x_col: usize,
    pub z_row: usize,
    pub z_col: usize,
}

/// How a [`DistanceReport`] was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationMethod {
    pub cutoff: u64,
    /// Dimension of C_Z^⊥; 2^dim vectors are enumerated for `d_x`.
    pub x_space_dim: usize,
    /// Dimension of C_X^⊥; 2^dim vectors are enumerated for `d_z`.
    pub z_space_dim: usize,
}

/// Exact code distance or "unknown" (`None`) when the enumeration did not fit
/// the cutoff or there are no logical operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub d_x: Option<usize>,
    pub d_z: Option<usize>,
    pub d: Option<usize>,
    pub method: EnumerationMethod,
}

impl CssCode {
    /// Validates the pair of stabilizer matrices and caches `k` and a logical
    /// X basis.
    pub fn new(s_x: BitMatrix, s_z: BitMatrix) -> Result<Self> {
        if s_x.num_cols() != s_z.num_cols() {
            return Err(Error::ColumnMismatch {
                x_cols: s_x.num_cols(),
                z_cols: s_z.num_cols(),
            });
        }
        let n = s_x.num_cols();
        if n == 0 {
            return Err(Error::EmptyCode);
        }
        for (i, xr) in s_x.rows().iter().enumerate() {
            for (j, zr) in s_z.rows().iter().enumerate() {
                if xr.dot_unchecked(zr) {
                    return Err(Error::Anticommuting {
                        x_row: i + 1,
                        z_row: j + 1,
                    });
                }
            }
        }

        let cx_basis = s_x.rref().0;
        let cz_basis = s_z.rref().0;
        let dual_z_basis = nullspace_basis(&s_z);

        // Extend a basis of C_X to one of C_Z^⊥; the extension vectors are the
        // logical representatives.
        let mut cx_echelon = Echelon::new(n);
        for b in &cx_basis {
            cx_echelon.insert(b)?;
        }
        let mut extension = cx_echelon.clone();
        let logical_x: Vec<BitVector> = dual_z_basis
            .iter()
            .filter(|v| extension.insert(v).expect("lengths checked"))
            .cloned()
            .collect();

        let coset_solver = Echelon::from_vectors(n, cx_basis.iter().chain(&logical_x))?;

        debug_assert_eq!(logical_x.len(), n - cx_basis.len() - cz_basis.len());
        Ok(Self {
            n,
            s_x,
            s_z,
            cx_basis,
            cz_basis,
            dual_z_basis,
            logical_x,
            coset_solver,
            cx_echelon,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of logical qubits, `n - rank(s_x) - rank(s_z)`.
    pub fn num_logicals(&self) -> usize {
        self.logical_x.len()
    }

    pub fn s_x(&self) -> &BitMatrix {
        &self.s_x
    }

    pub fn s_z(&self) -> &BitMatrix {
        &self.s_z
    }

    pub fn rank_x(&self) -> usize {
        self.cx_basis.len()
    }

    pub fn rank_z(&self) -> usize {
        self.cz_basis.len()
    }

    /// Reduced basis of C_X (row space of `s_x`).
    pub fn cx_basis(&self) -> &[BitVector] {
        &self.cx_basis
    }

    /// Basis of C_Z^⊥ (kernel of `s_z`).
    pub fn dual_z_basis(&self) -> &[BitVector] {
        &self.dual_z_basis
    }

    /// Coset representatives spanning C_Z^⊥ / C_X.
    pub fn logical_x_basis(&self) -> &[BitVector] {
        &self.logical_x
    }

    pub fn weights(&self) -> WeightSummary {
        WeightSummary {
            x_row: self.s_x.max_row_weight(),
            x_col: self.s_x.max_col_weight(),
            z_row: self.s_z.max_row_weight(),
            z_col: self.s_z.max_col_weight(),
        }
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Whether `v` lies in C_Z^⊥, i.e. commutes with every Z stabilizer.
    pub fn in_dual_z(&self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        self.s_z.annihilates(v)
    }

    /// Whether `v` lies in C_X (is an X stabilizer).
    pub fn in_cx(&self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        self.cx_echelon.contains(v)
    }

    /// Coordinates of the coset `v + C_X` in the logical basis, or `None` when
    /// `v` is not in C_Z^⊥.
    pub fn logical_coordinates(&self, v: &BitVector) -> Result<Option<BitVector>> {
        self.check_len(v)?;
        let r = self.cx_basis.len();
        Ok(self.coset_solver.decompose(v)?.map(|idx| {
            let mut c = BitVector::zeros(self.num_logicals());
            for i in idx.into_iter().filter(|&i| i >= r) {
                c.set(i - r, true);
            }
            c
        }))
    }

    /// Fixed representative Σ cⱼ Lⱼ for logical coordinates `c`.
    pub fn representative(&self, coords: &BitVector) -> Result<BitVector> {
        if coords.len() != self.num_logicals() {
            return Err(Error::LengthMismatch {
                expected: self.num_logicals(),
                found: coords.len(),
            });
        }
        let mut v = BitVector::zeros(self.n);
        for j in coords.iter_ones() {
            v ^= &self.logical_x[j];
        }
        Ok(v)
    }

    /// Exact X and Z distances by exhaustive enumeration of C_Z^⊥ and C_X^⊥.
    /// A side whose space has more than `cutoff` vectors is reported unknown.
    pub fn distance_exact(&self, cutoff: u64) -> DistanceReport {
        let dual_x_basis = nullspace_basis(&self.s_x);
        let cz_echelon = Echelon::from_vectors(self.n, &self.cz_basis).expect("lengths checked");
        let method = EnumerationMethod {
            cutoff,
            x_space_dim: self.dual_z_basis.len(),
            z_space_dim: dual_x_basis.len(),
        };
        if self.num_logicals() == 0 {
            return DistanceReport {
                d_x: None,
                d_z: None,
                d: None,
                method,
            };
        }
        let d_x = min_weight_outside(&self.dual_z_basis, &self.cx_echelon, cutoff);
        let d_z = min_weight_outside(&dual_x_basis, &cz_echelon, cutoff);
        let d = d_x.zip(d_z).map(|(a, b)| a.min(b));
        DistanceReport {
            d_x,
            d_z,
            d,
            method,
        }
    }
}

fn fits(dim: usize, cutoff: u64) -> bool {
    dim < 64 && (1u64 << dim) <= cutoff
}

/// Minimum weight over span(basis) \ span(excluded), by Gray-code enumeration.
fn min_weight_outside(basis: &[BitVector], excluded: &Echelon, cutoff: u64) -> Option<usize> {
    let dim = basis.len();
    if !fits(dim, cutoff) {
        return None;
    }
    let n = basis.first()?.len();
    let total: u64 = 1 << dim;
    let chunk_bits = dim.saturating_sub(12).min(10);
    let chunks: u64 = 1 << chunk_bits;
    let chunk_len = total / chunks;

    (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = c * chunk_len;
            let end = start + chunk_len;
            let mut v = BitVector::zeros(n);
            let g = start ^ (start >> 1);
            for (i, b) in basis.iter().enumerate() {
                if (g >> i) & 1 == 1 {
                    v ^= b;
                }
            }
            let mut best: Option<usize> = None;
            let mut consider = |v: &BitVector| {
                let w = v.weight();
                if w > 0
                    && best.is_none_or(|b| w < b)
                    && !excluded.contains(v).expect("lengths checked")
                {
                    best = Some(w);
                }
            };
            consider(&v);
            for i in (start + 1)..end {
                v ^= &basis[i.trailing_zeros() as usize];
                consider(&v);
            }
            best
        })
        .min()
}
