//! Small reference codes and instances used by tests, the CLI and the
//! Python bindings.

use crate::code::CssCode;
use crate::f2la::{BitMatrix, BitVector};

const HAMMING_7: [&str; 3] = ["0001111", "0110011", "1010101"];

/// The [[7,1,3]] Steane code (both stabilizer matrices are the Hamming
/// parity-check matrix).
pub fn steane() -> CssCode {
    let h = BitMatrix::from_strs(7, &HAMMING_7).expect("static matrix");
    CssCode::new(h.clone(), h).expect("Steane code is valid")
}

/// The code on `n` qubits with no stabilizers (C_X = C_Z = {0}).
pub fn trivial(n: usize) -> CssCode {
    CssCode::new(BitMatrix::empty(n), BitMatrix::empty(n)).expect("trivial code is valid")
}

/// The [[4,2,2]] code with a single X and a single Z stabilizer `1111`.
pub fn code_422() -> CssCode {
    let row = BitMatrix::from_strs(4, &["1111"]).expect("static matrix");
    CssCode::new(row.clone(), row).expect("[[4,2,2]] code is valid")
}

/// The 4-qubit magic-friendly triple x=0111, y=1011, z=1101.
pub fn four_qubit_triple() -> [BitVector; 3] {
    ["0111", "1011", "1101"].map(|s| s.parse().expect("static vector"))
}

/// Two copies of [`four_qubit_triple`] on qubits 1..4 and 5..8 of an
/// 8-qubit trivial code.
pub fn two_block_triples() -> [[BitVector; 3]; 2] {
    let base = four_qubit_triple();
    let zeros = BitVector::zeros(4);
    [
        base.clone().map(|v| v.concat(&zeros)),
        base.map(|v| zeros.concat(&v)),
    ]
}

/// Three-edge hypergraph on six vertices: {1,2,3}, {2,3,4}, {4,5,6}.
pub fn three_triangles() -> (usize, Vec<[usize; 3]>) {
    (6, vec![[1, 2, 3], [2, 3, 4], [4, 5, 6]])
}
