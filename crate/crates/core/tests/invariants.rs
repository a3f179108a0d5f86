mod common;

use std::collections::BTreeSet;

use ccz_fountain::fountain::{lightcone_distance_bound, throughput_bound};
use ccz_fountain::phaseverify::{check_coset_constancy, DiagonalCircuit, DEFAULT_PHASE_CUTOFF};
use ccz_fountain::{
    collection_stats, enumerate_triples, fixtures, greedy_color, pack_supports, run_pipeline,
    schedule_from_coloring, verify_coloring, verify_magic_friendly, verify_packing, BitVector,
    CssCode, GatePattern, Hypergraph3, MagicFriendlyTriple, PipelineOptions, Rational,
    SearchBudget,
};
use common::*;
use proptest::prelude::*;

/// All unordered magic-friendly triples of the trivial n-qubit code, by
/// brute force over masks.
fn brute_force_trivial(n: usize) -> BTreeSet<[u64; 3]> {
    let mut out = BTreeSet::new();
    let all = 1u64 << n;
    for x in 1..all {
        for y in (x + 1)..all {
            for z in (y + 1)..all {
                let independent = rank(&[x, y, z]) == 3;
                let orthogonal = !parity(x & y) && !parity(y & z) && !parity(x & z);
                if independent && orthogonal && parity(x & y & z) {
                    out.insert([x, y, z]);
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_on_trivial_codes() {
    for n in [3usize, 4] {
        let code = fixtures::trivial(n);
        let search = enumerate_triples(&code, &SearchBudget::default());
        assert!(!search.truncated);
        let found: BTreeSet<[u64; 3]> = search
            .triples
            .iter()
            .map(|t| {
                let mut m = [to_mask(t.x()), to_mask(t.y()), to_mask(t.z())];
                m.sort_unstable();
                m
            })
            .collect();
        assert_eq!(
            found.len(),
            search.triples.len(),
            "n = {n}: duplicate outputs"
        );
        assert_eq!(found, brute_force_trivial(n), "n = {n}");
    }
}

#[test]
fn enumerated_triples_verify_on_small_codes() {
    let code = fixtures::trivial(5);
    let search = enumerate_triples(&code, &SearchBudget::default());
    assert!(!search.triples.is_empty());
    for t in &search.triples {
        assert!(
            verify_magic_friendly(&code, t.x(), t.y(), t.z())
                .unwrap()
                .overall
        );
    }
}

#[test]
fn wirewise_phase_is_constant_on_cosets() {
    // A code with nontrivial C_X and k = 4: stabilizer 110000 on 6 qubits,
    // Z-checks orthogonal to it.
    let code = CssCode::new(matrix(6, &[0b000011]), matrix(6, &[0b000011])).unwrap();
    assert_eq!(code.num_logicals(), 4);
    let search = enumerate_triples(
        &code,
        &SearchBudget {
            stabilizer_shift: 1,
            ..Default::default()
        },
    );
    assert!(!search.triples.is_empty());
    for t in &search.triples {
        let c = check_coset_constancy(
            &code,
            t,
            &DiagonalCircuit::wirewise(6),
            DEFAULT_PHASE_CUTOFF,
        )
        .unwrap();
        assert!(c.is_constant(), "{t:?}");
    }
}

#[test]
fn pipeline_two_block_wirewise() {
    let code = fixtures::trivial(8);
    let triples: Vec<MagicFriendlyTriple> = fixtures::two_block_triples()
        .into_iter()
        .map(|[x, y, z]| MagicFriendlyTriple::new(&code, x, y, z).unwrap())
        .collect();
    let r = run_pipeline(
        &code,
        &triples,
        &GatePattern::wirewise_full(8),
        &PipelineOptions::default(),
    )
    .unwrap();
    assert_eq!((r.selected_count, r.delta, r.depth), (2, 1, 1));
    assert_eq!(r.vertex_count, 48);
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(
        serde_json::from_str::<ccz_fountain::FountainReport>(&json).unwrap(),
        r
    );
}

fn code_strategy() -> impl Strategy<Value = (usize, Vec<u64>, Vec<u64>)> {
    (1usize..=9, 0usize..=4, 0usize..=4, any::<u64>()).prop_map(|(n, rx, rz, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (sx, sz) = random_commuting(&mut rng, n, rx, rz);
        (n, sx, sz)
    })
}

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph3> {
    (
        3usize..=20,
        prop::collection::vec((1usize..=20, 1usize..=20, 1usize..=20), 0..30),
    )
        .prop_map(|(v, raw)| {
            let mut seen = BTreeSet::new();
            let edges: Vec<[usize; 3]> = raw
                .into_iter()
                .map(|(a, b, c)| [(a - 1) % v + 1, (b - 1) % v + 1, (c - 1) % v + 1])
                .filter(|e| e[0] != e[1] && e[1] != e[2] && e[0] != e[2])
                .filter(|e| {
                    let mut k = *e;
                    k.sort_unstable();
                    seen.insert(k)
                })
                .collect();
            Hypergraph3::new(v, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_dimension_splits((n, sx, sz) in code_strategy()) {
        let code = CssCode::new(matrix(n, &sx), matrix(n, &sz)).unwrap();
        prop_assert_eq!(code.rank_x(), rank(&sx));
        prop_assert_eq!(code.rank_z(), rank(&sz));
        prop_assert_eq!(code.num_logicals(), n - rank(&sx) - rank(&sz));
        prop_assert_eq!(code.dual_z_basis().len(), code.rank_x() + code.num_logicals());
        for l in code.logical_x_basis() {
            let m = to_mask(l);
            prop_assert!(sz.iter().all(|&r| !parity(r & m)));
        }
        let mut with_logicals: Vec<u64> = sx.clone();
        with_logicals.extend(code.logical_x_basis().iter().map(to_mask));
        prop_assert_eq!(rank(&with_logicals), rank(&sx) + code.num_logicals());
    }

    #[test]
    fn coloring_proper_and_bounded(h in hypergraph_strategy()) {
        let c = greedy_color(&h);
        let v = verify_coloring(&h, &c);
        prop_assert!(v.ok);
        prop_assert!(c.palette <= 3 * h.max_degree() + 1);
        let s = schedule_from_coloring(&h, &c).unwrap();
        prop_assert_eq!(s.gate_count(), h.edge_count());
        prop_assert!(s.depth() <= c.palette);
        for layer in &s.layers {
            let mut used = BTreeSet::new();
            for e in layer {
                for &v in e {
                    prop_assert!(used.insert(v));
                }
            }
        }
    }

    #[test]
    fn packing_disjoint_and_meets_bound(
        n in 2usize..=30,
        raw in prop::collection::vec(prop::collection::btree_set(1usize..=30, 1..6), 1..40),
    ) {
        let supports: Vec<Vec<usize>> = raw
            .into_iter()
            .map(|s| s.into_iter().map(|c| (c - 1) % n + 1).collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let r = pack_supports(&supports, n).unwrap();
        let v = verify_packing(&supports, &r.selected, n).unwrap();
        prop_assert!(v.ok);
        let stats = &r.stats_used;
        let bound = throughput_bound(stats.count, stats.participation, &stats.b, n).unwrap();
        prop_assert_eq!(bound, r.guaranteed_lower_bound);
    }

    #[test]
    fn triple_stats_and_verification_symmetric(x in 1u64..16, y in 1u64..16, z in 1u64..16) {
        let code = fixtures::trivial(4);
        let [a, b, c] = [x, y, z].map(|m| from_mask(m, 4));
        let base = verify_magic_friendly(&code, &a, &b, &c).unwrap().overall;
        prop_assert_eq!(verify_magic_friendly(&code, &c, &a, &b).unwrap().overall, base);
        prop_assert_eq!(verify_magic_friendly(&code, &b, &a, &c).unwrap().overall, base);
        let expected = rank(&[x, y, z]) == 3
            && !parity(x & y) && !parity(y & z) && !parity(x & z) && parity(x & y & z);
        prop_assert_eq!(base, expected);
        if base {
            let t = MagicFriendlyTriple::new(&code, a, b, c).unwrap();
            let s = collection_stats(std::slice::from_ref(&t), 4).unwrap();
            prop_assert_eq!(s.max_support, (x | y | z).count_ones() as usize);
            let json = serde_json::to_string(&t).unwrap();
            prop_assert_eq!(serde_json::from_str::<MagicFriendlyTriple>(&json).unwrap(), t);
        }
    }

    #[test]
    fn distance_bound_exact(d in 1u64..1000, depth in 0u32..8) {
        let b = lightcone_distance_bound(d, 3, depth).unwrap();
        let back = &b.exact.0 * num_rational::BigRational::from_integer(3u64.pow(depth).into());
        prop_assert_eq!(Rational(back), Rational::integer(d));
        prop_assert!(b.floor >= 1);
        prop_assert!(b.floor == 1 || b.floor == d / 3u64.pow(depth));
    }

    #[test]
    fn bitvector_text_roundtrip(bits in prop::collection::vec(any::<bool>(), 0..150)) {
        let v = BitVector::from_bits(bits.iter().copied());
        let s = v.to_string();
        prop_assert_eq!(s.parse::<BitVector>().unwrap(), v.clone());
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<BitVector>(&json).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pipeline_invariants(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12), strategy in 0usize..4) {
        use ccz_fountain::fountain::RegisterLayout;
        let code = fixtures::trivial(5);
        let all = enumerate_triples(&code, &SearchBudget::default()).triples;
        let mut triples: Vec<MagicFriendlyTriple> = picks.iter().map(|i| all[i.index(all.len())].clone()).collect();
        triples.dedup();
        let pattern = match strategy {
            0 => GatePattern::wirewise_full(5),
            1 => GatePattern::wirewise_intersection(5),
            2 => GatePattern::abstract_edge(),
            _ => GatePattern::explicit(
                RegisterLayout { registers: 1, qubits_per_register: 5 },
                vec![[1, 2, 3], [3, 4, 5], [1, 4, 5]],
            ),
        };
        let r = run_pipeline(&code, &triples, &pattern, &PipelineOptions::default()).unwrap();

        let mut load = vec![0usize; r.vertex_count + 1];
        for &v in r.schedule.layers.iter().flatten().flatten() {
            load[v] += 1;
        }
        prop_assert_eq!(r.delta, *load.iter().max().unwrap());
        prop_assert!(r.delta <= r.d0);
        prop_assert!(r.depth <= 3 * r.delta + 1);
        prop_assert_eq!(r.palette_bound, 3 * r.delta + 1);
        prop_assert!(Rational::integer(r.selected_count) >= r.throughput_lower_bound);

        // Different selected triples never share a vertex.
        let block = pattern.layout.block_size();
        for layer in &r.schedule.layers {
            for e in layer {
                let blocks: BTreeSet<usize> = e.iter().map(|v| (v - 1) / block).collect();
                prop_assert_eq!(blocks.len(), 1);
            }
        }
        let d = r.input_distance.unwrap() as u64;
        let back = &r.distance_lower_bound.unwrap().0
            * num_rational::BigRational::from_integer(3u64.pow(r.depth as u32).into());
        prop_assert_eq!(Rational(back), Rational::integer(d));
    }
}
