//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into 64-bit words. Coordinates exposed through
//! [`BitVector::support`] and [`BitVector::from_support`] are 1-based; the
//! `get`/`set` accessors use 0-based positions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector in GF(2)^n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Standard basis vector with a single 1 at the 1-based `coordinate`.
    pub fn unit(len: usize, coordinate: usize) -> Self {
        assert!(
            (1..=len).contains(&coordinate),
            "coordinate {coordinate} out of range 1..={len}"
        );
        let mut v = Self::zeros(len);
        v.set(coordinate - 1, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut len = 0;
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
            len = i + 1;
        }
        Self { len, words }
    }

    /// Builds a vector from 0/1 integers, rejecting any other value.
    pub fn from_u8s(values: &[u8]) -> Result<Self> {
        values
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvalidBit(char::from(b'0'.saturating_add(other)))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    /// Builds a vector of length `len` whose 1-based support is `coordinates`.
    pub fn from_support(len: usize, coordinates: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &c in coordinates {
            if c == 0 || c > len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    found: c,
                });
            }
            v.set(c - 1, true);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] ^= 1 << (index % WORD_BITS);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Position (0-based) of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// 1-based coordinates of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().map(|i| i + 1).collect()
    }

    /// 0-based positions of the nonzero entries, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Self) -> Self {
        Self::from_bits(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

/// Lexicographic order on the bit string (coordinate 1 most significant);
/// vectors of different lengths order by length first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            self.words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a.reverse_bits().cmp(&b.reverse_bits()))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd for &BitVector {
    type Output = BitVector;

    fn bitand(self, rhs: &BitVector) -> BitVector {
        assert_eq!(self.len, rhs.len, "length mismatch in and");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&rhs.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Standard inner product Σ xᵢyᵢ mod 2.
pub fn inner(x: &BitVector, y: &BitVector) -> Result<bool> {
    x.check_len(y)?;
    Ok(x.dot_unchecked(y))
}

/// Triple overlap τ(x, y, z) = Σ xᵢyᵢzᵢ mod 2.
pub fn triple_overlap(x: &BitVector, y: &BitVector, z: &BitVector) -> Result<bool> {
    x.check_len(y)?;
    x.check_len(z)?;
    let ones: u32 = x
        .words
        .iter()
        .zip(&y.words)
        .zip(&z.words)
        .map(|((a, b), c)| (a & b & c).count_ones())
        .sum();
    Ok(ones & 1 == 1)
}

/// 1-based support of `v`.
pub fn support(v: &BitVector) -> Vec<usize> {
    v.support()
}

/// A dense GF(2) matrix stored as a list of row vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    /// A matrix with no rows and `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (1..=n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows written as 0/1 strings. All rows must have equal length.
    pub fn from_strs(cols: usize, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        Self::from_rows(cols, parsed)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    /// Matrix-vector product `self · v`; one output bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bits(
            self.rows.iter().map(|r| r.dot_unchecked(v)),
        ))
    }

    pub fn annihilates(&self, v: &BitVector) -> Result<bool> {
        Ok(self.mul_vec(v)?.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(BitVector::weight).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        let mut counts = vec![0usize; self.cols];
        for row in &self.rows {
            for j in row.iter_ones() {
                counts[j] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Reduced row echelon form with lowest-index pivots. Returns the nonzero
    /// reduced rows and their pivot columns.
    pub fn rref(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// GF(2) rank.
pub fn rank(m: &BitMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of the kernel {v : m·v = 0}, one vector per free column in
/// ascending column order.
pub fn nullspace_basis(m: &BitMatrix) -> Vec<BitVector> {
    let (rows, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.cols);
            v.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// True iff no nontrivial combination of `vs` lies in the span of
/// `subspace_basis`.
pub fn quotient_independent(vs: &[BitVector], subspace_basis: &[BitVector]) -> Result<bool> {
    let Some(len) = vs.first().or(subspace_basis.first()).map(BitVector::len) else {
        return Ok(true);
    };
    let mut ech = Echelon::new(len);
    for s in subspace_basis {
        ech.insert(s)?;
    }
    for v in vs {
        if !ech.insert(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Incrementally built basis kept in fully reduced echelon form.
///
/// Each stored row remembers which inserted vectors it combines, so
/// [`Echelon::decompose`] can express a span member in terms of the
/// inserted generators.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
    tags: Vec<Vec<usize>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            tags: Vec::new(),
            inserted: 0,
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a BitVector>>(
        len: usize,
        vs: I,
    ) -> Result<Self> {
        let mut e = Self::new(len);
        for v in vs {
            e.insert(v)?;
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn reduce_tagged(&self, v: &BitVector) -> (BitVector, Vec<usize>) {
        let mut r = v.clone();
        let mut tag: Vec<usize> = Vec::new();
        for ((row, &p), t) in self.rows.iter().zip(&self.pivots).zip(&self.tags) {
            if r.get(p) {
                r ^= row;
                tag = symmetric_difference(&tag, t);
            }
        }
        (r, tag)
    }

    /// Residue of `v` modulo the current span.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector> {
        self.check(v)?;
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r ^= row;
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Inserts `v` as the next generator. Returns false if it was already in
    /// the span (the generator index is still consumed).
    pub fn insert(&mut self, v: &BitVector) -> Result<bool> {
        self.check(v)?;
        let index = self.inserted;
        self.inserted += 1;
        let (r, mut tag) = self.reduce_tagged(v);
        let Some(p) = r.first_one() else {
            return Ok(false);
        };
        tag = symmetric_difference(&tag, &[index]);
        for (row, t) in self.rows.iter_mut().zip(self.tags.iter_mut()) {
            if row.get(p) {
                *row ^= &r;
                *t = symmetric_difference(t, &tag);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.tags.push(tag);
        Ok(true)
    }

    /// Indices of inserted generators summing to `v`, or `None` if `v` is
    /// outside the span.
    pub fn decompose(&self, v: &BitVector) -> Result<Option<Vec<usize>>> {
        self.check(v)?;
        let (r, tag) = self.reduce_tagged(v);
        Ok(r.is_zero().then_some(tag))
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn hamming() -> BitMatrix {
        BitMatrix::from_strs(7, &["0001111", "0110011", "1010101"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::identity(3)), 3);
        assert_eq!(rank(&BitMatrix::zeros(2, 4)), 0);
        assert_eq!(rank(&hamming()), 3);
    }

    #[test]
    fn nullspace_examples() {
        let basis = nullspace_basis(&BitMatrix::empty(4));
        assert_eq!(
            basis,
            (1..=4).map(|i| BitVector::unit(4, i)).collect::<Vec<_>>()
        );
        assert!(nullspace_basis(&BitMatrix::identity(4)).is_empty());

        let h = hamming();
        let basis = nullspace_basis(&h);
        assert_eq!(basis.len(), 4);
        for b in &basis {
            assert!(h.annihilates(b).unwrap());
        }
        assert_eq!(rank(&BitMatrix::from_rows(7, basis).unwrap()), 4);
    }

    #[test]
    fn inner_examples() {
        assert!(!inner(&v("0111"), &v("1011")).unwrap());
        assert!(!inner(&v("11"), &v("11")).unwrap());
        assert!(inner(&v("10"), &v("11")).unwrap());
        assert_eq!(
            inner(&v("10"), &v("110")),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn triple_overlap_examples() {
        assert!(triple_overlap(&v("0111"), &v("1011"), &v("1101")).unwrap());
        assert!(!triple_overlap(&v("0000"), &v("1111"), &v("1011")).unwrap());
        assert!(triple_overlap(&v("111"), &v("111"), &v("111")).unwrap());
        assert!(triple_overlap(&v("11"), &v("11"), &v("1")).is_err());
    }

    #[test]
    fn quotient_independence_examples() {
        let e = |i| BitVector::unit(4, i);
        assert!(quotient_independent(&[e(1), e(2), e(3)], &[]).unwrap());
        let x = v("0111");
        let y = v("1011");
        assert!(!quotient_independent(&[x.clone(), y.clone(), &x ^ &y], &[]).unwrap());
        let s = v("1111");
        assert!(!quotient_independent(&[x.clone(), &x ^ &s], std::slice::from_ref(&s)).unwrap());
        assert!(quotient_independent(&[x, y], &[s]).unwrap());
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&v("0111")), vec![2, 3, 4]);
        assert!(support(&v("0000")).is_empty());
        assert_eq!(support(&BitVector::ones(4)), vec![1, 2, 3, 4]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(v("0110").to_string(), "0110");
        assert_eq!("01x".parse::<BitVector>(), Err(Error::InvalidBit('x')));
        let long = BitVector::from_support(130, &[1, 64, 65, 130]).unwrap();
        assert_eq!(long.support(), vec![1, 64, 65, 130]);
        assert_eq!(long.to_string().parse::<BitVector>().unwrap(), long);
    }

    #[test]
    fn lexicographic_order_matches_strings() {
        let mut vs: Vec<BitVector> = (0u32..16)
            .map(|i| BitVector::from_bits((0..4).map(|b| (i >> b) & 1 == 1)))
            .collect();
        vs.sort();
        let strings: Vec<String> = vs.iter().map(ToString::to_string).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
    }

    #[test]
    fn decompose_recovers_generators() {
        let gens = [v("1100"), v("0110"), v("1010"), v("0001")];
        let e = Echelon::from_vectors(4, &gens).unwrap();
        assert_eq!(e.rank(), 3);
        let target = v("1011");
        let idx = e.decompose(&target).unwrap().unwrap();
        let mut acc = BitVector::zeros(4);
        for i in idx {
            acc ^= &gens[i];
        }
        assert_eq!(acc, target);
        let e2 = Echelon::from_vectors(4, &gens[..2]).unwrap();
        assert_eq!(e2.decompose(&v("0001")).unwrap(), None);
    }

    #[test]
    fn triple_overlap_exhaustive_symmetry_and_linearity() {
        for n in 1..=4usize {
            let all: Vec<BitVector> = (0u32..(1 << n))
                .map(|i| BitVector::from_bits((0..n).map(|b| (i >> b) & 1 == 1)))
                .collect();
            let ones = BitVector::ones(n);
            for x in &all {
                for y in &all {
                    assert_eq!(inner(x, y).unwrap(), triple_overlap(x, y, &ones).unwrap());
                    for z in &all {
                        let t = triple_overlap(x, y, z).unwrap();
                        for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                            assert_eq!(triple_overlap(a, b, c).unwrap(), t);
                        }
                    }
                }
            }
            for x in &all {
                for x2 in &all {
                    let sum = x ^ x2;
                    for y in &all {
                        for z in &all {
                            assert_eq!(
                                triple_overlap(&sum, y, z).unwrap(),
                                triple_overlap(x, y, z).unwrap()
                                    ^ triple_overlap(x2, y, z).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.into_iter().map(BitVector::from_bits).collect())
                        .unwrap()
                },
            )
        })
    }

    /// Independence of a set by checking every nonzero combination.
    fn brute_quotient_independent(vs: &[BitVector], sub: &[BitVector]) -> bool {
        let n = vs[0].len();
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << sub.len()) {
            let mut acc = BitVector::zeros(n);
            for (i, s) in sub.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc ^= s;
                }
            }
            span.insert(acc);
        }
        (1u32..(1 << vs.len())).all(|mask| {
            let mut acc = BitVector::zeros(n);
            for (i, x) in vs.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc ^= x;
                }
            }
            !span.contains(&acc)
        })
    }

    proptest! {
        #[test]
        fn rank_bounds_and_row_operation_invariance(
            m in arb_matrix(12, 70),
            ops in proptest::collection::vec((any::<usize>(), any::<usize>(), any::<bool>()), 0..30),
        ) {
            let r = rank(&m);
            prop_assert!(r <= m.num_rows().min(m.num_cols()));
            let mut rows = m.rows().to_vec();
            for (a, b, swap) in ops {
                if rows.len() < 2 { break; }
                let (a, b) = (a % rows.len(), b % rows.len());
                if a == b { continue; }
                if swap {
                    rows.swap(a, b);
                } else {
                    let add = rows[b].clone();
                    rows[a] ^= &add;
                }
            }
            let m2 = BitMatrix::from_rows(m.num_cols(), rows).unwrap();
            prop_assert_eq!(rank(&m2), r);
        }

        #[test]
        fn nullspace_dimension_and_annihilation(m in arb_matrix(12, 70)) {
            let basis = nullspace_basis(&m);
            prop_assert_eq!(basis.len() + rank(&m), m.num_cols());
            for b in &basis {
                prop_assert!(m.annihilates(b).unwrap());
            }
            let bm = BitMatrix::from_rows(m.num_cols(), basis.clone()).unwrap();
            prop_assert_eq!(rank(&bm), basis.len());
        }

        #[test]
        fn quotient_independent_matches_brute_force(
            n in 1usize..7,
            seed_vs in proptest::collection::vec(any::<u8>(), 1..=6),
            seed_sub in proptest::collection::vec(any::<u8>(), 0..=3),
        ) {
            let mk = |s: &u8| BitVector::from_bits((0..n).map(|b| (s >> b) & 1 == 1));
            let vs: Vec<BitVector> = seed_vs.iter().map(mk).collect();
            let sub: Vec<BitVector> = seed_sub.iter().map(mk).collect();
            prop_assert_eq!(
                quotient_independent(&vs, &sub).unwrap(),
                brute_quotient_independent(&vs, &sub)
            );
        }
    }
}
