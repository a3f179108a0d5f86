//! Magic-friendly triples of logical X operators.
//!
//! A triple `(x, y, z)` of vectors in C_Z^⊥ is magic-friendly when the three
//! cosets are independent in C_Z^⊥ / C_X, the vectors are pairwise
//! orthogonal, and their triple overlap is odd. Conditions 2 and 3 depend on
//! the representatives, so every check here is applied to the literal vectors
//! passed in.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::f2la::{inner, quotient_independent, triple_overlap, BitVector};
use crate::rational::Rational;

/// A triple of representatives with its cached support union S_t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagicFriendlyTriple {
    x: BitVector,
    y: BitVector,
    z: BitVector,
    support_union: Vec<usize>,
}

impl MagicFriendlyTriple {
    /// Verifies the triple against `code` and wraps it.
    pub fn new(code: &CssCode, x: BitVector, y: BitVector, z: BitVector) -> Result<Self> {
        let report = verify_magic_friendly(code, &x, &y, &z)?;
        if let Some(failed) = report.first_failure {
            return Err(Error::NotMagicFriendly(failed.to_string()));
        }
        Ok(Self::unchecked(x, y, z))
    }

    /// Wraps three equal-length vectors without checking Definition 1.
    pub fn unchecked(x: BitVector, y: BitVector, z: BitVector) -> Self {
        assert!(
            x.len() == y.len() && y.len() == z.len(),
            "triple vectors differ in length"
        );
        let mut union_bits = x.clone();
        for v in [&y, &z] {
            for i in v.iter_ones() {
                union_bits.set(i, true);
            }
        }
        Self {
            support_union: union_bits.support(),
            x,
            y,
            z,
        }
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn y(&self) -> &BitVector {
        &self.y
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn vectors(&self) -> [&BitVector; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// S_t = supp(x) ∪ supp(y) ∪ supp(z), 1-based and ascending.
    pub fn support_union(&self) -> &[usize] {
        &self.support_union
    }

    /// 1-based coordinates where all three vectors are 1.
    pub fn common_support(&self) -> Vec<usize> {
        (&(&self.x & &self.y) & &self.z).support()
    }
}

impl Serialize for MagicFriendlyTriple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.x, &self.y, &self.z].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MagicFriendlyTriple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[BitVector; 3]>::deserialize(deserializer)?;
        if x.len() != y.len() || y.len() != z.len() {
            return Err(serde::de::Error::custom("triple vectors differ in length"));
        }
        Ok(Self::unchecked(x, y, z))
    }
}

/// The conditions checked by [`verify_magic_friendly`], in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    InDualZ,
    Independent,
    Orthogonal,
    OddOverlap,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::InDualZ => "not all vectors lie in C_Z^perp",
            Condition::Independent => "logical images are not independent",
            Condition::Orthogonal => "vectors are not pairwise orthogonal",
            Condition::OddOverlap => "triple overlap is even",
        })
    }
}

/// Outcome of checking one literal triple of representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleVerification {
    pub x: BitVector,
    pub y: BitVector,
    pub z: BitVector,
    pub in_dual_z: bool,
    pub independent: bool,
    pub orthogonal: bool,
    pub odd_overlap: bool,
    pub overall: bool,
    /// Inner products ⟨x,y⟩, ⟨x,z⟩, ⟨y,z⟩.
    pub inner_products: [u8; 3],
    pub tau: u8,
    pub first_failure: Option<Condition>,
}

pub fn verify_magic_friendly(
    code: &CssCode,
    x: &BitVector,
    y: &BitVector,
    z: &BitVector,
) -> Result<TripleVerification> {
    let in_dual_z = code.in_dual_z(x)? && code.in_dual_z(y)? && code.in_dual_z(z)?;
    let independent = quotient_independent(&[x.clone(), y.clone(), z.clone()], code.cx_basis())?;
    let inner_products = [inner(x, y)?, inner(x, z)?, inner(y, z)?].map(u8::from);
    let orthogonal = inner_products == [0, 0, 0];
    let tau = u8::from(triple_overlap(x, y, z)?);
    let odd_overlap = tau == 1;
    let first_failure = [
        (in_dual_z, Condition::InDualZ),
        (independent, Condition::Independent),
        (orthogonal, Condition::Orthogonal),
        (odd_overlap, Condition::OddOverlap),
    ]
    .into_iter()
    .find(|(ok, _)| !ok)
    .map(|(_, c)| c);
    Ok(TripleVerification {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        in_dual_z,
        independent,
        orthogonal,
        odd_overlap,
        overall: first_failure.is_none(),
        inner_products,
        tau,
        first_failure,
    })
}

/// Limits for [`enumerate_triples`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of candidate triples whose conditions are evaluated.
    pub max_examined: u64,
    pub max_results: usize,
    /// Shift each logical representative by sums of up to this many
    /// stabilizer basis vectors (0 = logical basis combinations only).
    pub stabilizer_shift: usize,
    /// Largest `k` for which all 2^k - 1 logical images are listed.
    pub max_logicals: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_examined: 50_000_000,
            max_results: 1_000_000,
            stabilizer_shift: 0,
            max_logicals: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSearch {
    pub triples: Vec<MagicFriendlyTriple>,
    pub truncated: bool,
    pub examined: u64,
    pub candidates: usize,
}

struct Candidate {
    rep: BitVector,
    image: BitVector,
}

fn combinations(count: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().map_or(0, |&l| l + 1);
            for i in start..count {
                let mut d = c.clone();
                d.push(i);
                next.push(d);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn candidates(code: &CssCode, budget: &SearchBudget) -> (Vec<Candidate>, bool) {
    let k = code.num_logicals();
    let k_eff = k.min(budget.max_logicals).min(63);
    let truncated = k > k_eff;
    let shifts: Vec<BitVector> = combinations(code.cx_basis().len(), budget.stabilizer_shift)
        .into_iter()
        .map(|idx| {
            let mut s = BitVector::zeros(code.n());
            for i in idx {
                s ^= &code.cx_basis()[i];
            }
            s
        })
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << k_eff) {
        let image = BitVector::from_bits((0..k).map(|j| j < k_eff && (mask >> j) & 1 == 1));
        let base = code.representative(&image).expect("image length is k");
        for s in &shifts {
            out.push(Candidate {
                rep: &base ^ s,
                image: image.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    out.dedup_by(|a, b| a.rep == b.rep);
    (out, truncated)
}

/// Exhaustive search over canonical candidate representatives.
///
/// Candidates are all nonzero combinations of the logical basis, optionally
/// shifted by stabilizers. Each output triple is strictly increasing in
/// lexicographic order and no two outputs share the same unordered set of
/// logical images.
pub fn enumerate_triples(code: &CssCode, budget: &SearchBudget) -> TripleSearch {
    let mut search = TripleSearch {
        triples: Vec::new(),
        truncated: false,
        examined: 0,
        candidates: 0,
    };
    if code.num_logicals() < 3 {
        return search;
    }
    let (cands, truncated) = candidates(code, budget);
    search.truncated = truncated;
    search.candidates = cands.len();
    let mut seen_images: HashSet<[BitVector; 3]> = HashSet::new();

    'outer: for i in 0..cands.len() {
        for j in (i + 1)..cands.len() {
            let (a, b) = (&cands[i], &cands[j]);
            if a.image == b.image || a.rep.dot_unchecked(&b.rep) {
                continue;
            }
            let ab = &a.image ^ &b.image;
            for c in &cands[(j + 1)..] {
                if search.examined >= budget.max_examined
                    || search.triples.len() >= budget.max_results
                {
                    search.truncated = true;
                    break 'outer;
                }
                search.examined += 1;
                if c.image == a.image || c.image == b.image || c.image == ab {
                    continue;
                }
                if a.rep.dot_unchecked(&c.rep) || b.rep.dot_unchecked(&c.rep) {
                    continue;
                }
                if !triple_overlap(&a.rep, &b.rep, &c.rep).expect("equal lengths") {
                    continue;
                }
                let report =
                    verify_magic_friendly(code, &a.rep, &b.rep, &c.rep).expect("equal lengths");
                if !report.overall {
                    continue;
                }
                let mut key = [a.image.clone(), b.image.clone(), c.image.clone()];
                key.sort();
                if seen_images.insert(key) {
                    search.triples.push(MagicFriendlyTriple::unchecked(
                        a.rep.clone(),
                        b.rep.clone(),
                        c.rep.clone(),
                    ));
                }
            }
        }
    }
    search
}

/// Randomized search: each attempt draws three uniformly random elements of
/// C_Z^⊥ \ C_X (random nonzero logical coordinates plus a random stabilizer
/// shift). Verified triples are canonicalized and deduplicated; the output is
/// sorted and reproducible for a fixed seed.
pub fn sample_triples(code: &CssCode, seed: u64, attempts: u64) -> Vec<MagicFriendlyTriple> {
    let k = code.num_logicals();
    if k < 3 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let draw = |rng: &mut ChaCha8Rng| -> BitVector {
        let coords = loop {
            let c = BitVector::from_bits((0..k).map(|_| rng.gen::<bool>()));
            if !c.is_zero() {
                break c;
            }
        };
        let mut v = code.representative(&coords).expect("length k");
        for s in code.cx_basis() {
            if rng.gen::<bool>() {
                v ^= s;
            }
        }
        v
    };
    for _ in 0..attempts {
        let mut t = [draw(&mut rng), draw(&mut rng), draw(&mut rng)];
        t.sort();
        if t[0] == t[1] || t[1] == t[2] {
            continue;
        }
        let [x, y, z] = t;
        if verify_magic_friendly(code, &x, &y, &z)
            .expect("equal lengths")
            .overall
        {
            found.insert(MagicFriendlyTriple::unchecked(x, y, z));
        }
    }
    found.into_iter().collect()
}

/// Support statistics of a collection: a = min |S_t| / n, b = max |S_t| / n,
/// and M = the largest number of supports sharing one coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionStats {
    pub count: usize,
    pub n: usize,
    pub a: Rational,
    pub b: Rational,
    #[serde(rename = "M")]
    pub participation: usize,
    pub min_support: usize,
    pub max_support: usize,
}

impl CollectionStats {
    /// Value returned for an empty collection: all statistics zero.
    pub fn empty(n: usize) -> Self {
        Self {
            count: 0,
            n,
            a: Rational::zero(),
            b: Rational::zero(),
            participation: 0,
            min_support: 0,
            max_support: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Computes the statistics from 1-based support sets.
    pub fn from_supports<S: AsRef<[usize]>>(supports: &[S], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDivisor("collection statistics (n = 0)"));
        }
        if supports.is_empty() {
            return Ok(Self::empty(n));
        }
        let mut counts = vec![0usize; n];
        let mut min_support = usize::MAX;
        let mut max_support = 0;
        for (index, s) in supports.iter().enumerate() {
            let s = s.as_ref();
            for &c in s {
                if c == 0 || c > n {
                    return Err(Error::SupportOutOfRange {
                        index,
                        coordinate: c,
                        n,
                    });
                }
                counts[c - 1] += 1;
            }
            min_support = min_support.min(s.len());
            max_support = max_support.max(s.len());
        }
        Ok(Self {
            count: supports.len(),
            n,
            a: Rational::new(min_support, n)?,
            b: Rational::new(max_support, n)?,
            participation: counts.into_iter().max().unwrap_or(0),
            min_support,
            max_support,
        })
    }
}

pub fn collection_stats(triples: &[MagicFriendlyTriple], n: usize) -> Result<CollectionStats> {
    let supports: Vec<&[usize]> = triples
        .iter()
        .map(MagicFriendlyTriple::support_union)
        .collect();
    CollectionStats::from_supports(&supports, n)
}
