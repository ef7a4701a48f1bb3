//! Property-style tests: seeded randomized checks and exhaustive
//! small-case sweeps that back the unit suites.

mod common;

use std::collections::HashMap;

use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};

use linkquandle::coloring::{
    count_homs_bruteforce, count_homs_tc_fixedpoint, count_homs_tc_propagate, xn, FiniteQuandle,
};
use linkquandle::diagram::{LinkDiagram, PairOrder};
use linkquandle::lattice::{hnf, int_vec, LatticeIndex};
use linkquandle::linking::{linking_matrix, LinkingMatrix};
use linkquandle::tcquandle::{family_from_linking, qs_isomorphic_pm, tc_isomorphic_classical};
use linkquandle::groups::{nilpotent3, saktra_condition, SaktraMode};

use common::*;

/// Frozen regression values for the deterministic mutator: the exact
/// passage count is pinned so any drift in the random walk is caught.
#[test]
fn fuzz_is_deterministic_and_pinned() {
    let hopf = parse(HOPF);
    assert_eq!(hopf.fuzz(7, 0), hopf);
    let mutated = hopf.fuzz(7, 50);
    assert_eq!(mutated.passage_count(), 164);
    assert_eq!(mutated, hopf.fuzz(7, 50));
    assert_ne!(mutated, hopf.fuzz(8, 50));
    // Mutated output is still a well-formed diagram.
    let reparsed = LinkDiagram::parse(&mutated.serialize()).unwrap();
    assert_eq!(reparsed.serialize(), mutated.serialize());
}

/// Serialization is a left inverse of parsing on label-normalized
/// diagrams, and is idempotent through a parse for arbitrary ones.
#[test]
fn serialize_and_parse_are_inverse_on_normalized_diagrams() {
    for d in full_corpus() {
        let text = d.serialize();
        assert_eq!(LinkDiagram::parse(&text).unwrap(), d, "{text}");
    }
    for seed in 0..40u64 {
        let base = parse(full_corpus()[seed as usize % 22].serialize().as_str());
        let d = base.fuzz(seed, (seed % 17) as usize);
        let text = d.serialize();
        assert_eq!(LinkDiagram::parse(&text).unwrap(), d.normalized(), "{text}");
        assert_eq!(d.normalized().serialize(), text, "{text}");
        assert_eq!(
            LinkDiagram::parse(&text).unwrap().serialize(),
            text,
            "reserialization must be stable: {text}"
        );
    }
}

fn count_into(d: &LinkDiagram, targets: &[FiniteQuandle]) -> Vec<u64> {
    targets
        .iter()
        .map(|t| count_homs_tc_propagate(d, t).unwrap())
        .collect()
}

/// Every legal single kink insertion preserves the linking matrix, the
/// coloring counts, the rendered quotient presentation, and the
/// presented quandle.
#[test]
fn every_single_kink_site_preserves_invariants() {
    let caps = caps();
    let targets = [xn(2), fixed_target_a()];
    for text in [
        HOPF, HOPF_MIRROR, TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL, VIRTUAL_HOPF, UNKNOT, UNLINK2,
    ] {
        let d = parse(text);
        let matrix = linking_matrix(&d);
        let counts = count_into(&d, &targets);
        let rendering = nilpotent3(&matrix).render();
        let (_, rows) = family_from_linking(&matrix);
        for c in 1..=d.mu() {
            let len = d.components()[c - 1].len();
            for position in 0..=len {
                for sign in [1i8, -1] {
                    for order in [PairOrder::OverUnder, PairOrder::UnderOver] {
                        let moved = d.r1_insert(c, position, sign, order).unwrap();
                        let m2 = linking_matrix(&moved);
                        assert_eq!(m2, matrix, "{text} kink at {c}:{position}");
                        assert_eq!(count_into(&moved, &targets), counts);
                        assert_eq!(nilpotent3(&m2).render(), rendering);
                        let (_, rows2) = family_from_linking(&m2);
                        assert!(qs_isomorphic_pm(&rows, &rows2, &caps).unwrap().is_some());
                        if moved.crossing_count() <= 5 {
                            assert_eq!(
                                count_homs_bruteforce(&moved, &targets[0], &caps).unwrap(),
                                counts[0],
                                "brute force disagrees after kink on {text}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Every legal single clasp insertion preserves the same invariants.
#[test]
fn every_single_clasp_site_preserves_invariants() {
    let targets = [xn(2), fixed_target_a()];
    for text in [HOPF, TREFOIL, VIRTUAL_HOPF, UNLINK2] {
        let d = parse(text);
        let matrix = linking_matrix(&d);
        let counts = count_into(&d, &targets);
        let rendering = nilpotent3(&matrix).render();
        let mut sites = Vec::new();
        for c in 1..=d.mu() {
            for position in 0..=d.components()[c - 1].len() {
                sites.push((c, position));
            }
        }
        for &s1 in &sites {
            for &s2 in &sites {
                if s1 == s2 {
                    continue;
                }
                for sign in [1i8, -1] {
                    let moved = d.r2_insert(s1, s2, sign).unwrap();
                    let m2 = linking_matrix(&moved);
                    assert_eq!(m2, matrix, "{text} clasp at {s1:?}/{s2:?}");
                    assert_eq!(count_into(&moved, &targets), counts);
                    assert_eq!(nilpotent3(&m2).render(), rendering);
                }
            }
        }
    }
}

/// Isomorphic presented quandles color every finite target identically.
#[test]
fn isomorphic_quandles_have_equal_coloring_counts() {
    let caps = caps();
    let corpus = full_corpus();
    let targets = [xn(2), xn(3), xn(4), xn(5), fixed_target_a(), fixed_target_b()];
    let matrices: Vec<LinkingMatrix> = corpus.iter().map(linking_matrix).collect();
    let rows: Vec<_> = matrices
        .iter()
        .map(|m| family_from_linking(m).1)
        .collect();
    let counts: Vec<Vec<u64>> = matrices
        .iter()
        .map(|m| {
            targets
                .iter()
                .map(|t| count_homs_tc_fixedpoint(m, t).unwrap())
                .collect()
        })
        .collect();
    let mut isomorphic_pairs = 0usize;
    for i in 0..corpus.len() {
        for j in 0..corpus.len() {
            if matrices[i].mu() != matrices[j].mu() {
                continue;
            }
            if qs_isomorphic_pm(&rows[i], &rows[j], &caps).unwrap().is_some() {
                isomorphic_pairs += 1;
                assert_eq!(
                    counts[i], counts[j],
                    "counts differ for isomorphic pair {i}/{j}"
                );
            }
        }
    }
    // Sanity: the corpus contains nontrivial isomorphic pairs (mirrors),
    // not just the diagonal.
    assert!(isomorphic_pairs > corpus.len());
}

/// A classical-link isomorphism forces the per-sublink sign condition,
/// searching over component bijections.
#[test]
fn classical_isomorphism_implies_sublink_sign_condition() {
    let caps = caps();
    let corpus = full_corpus();
    let matrices: Vec<LinkingMatrix> = corpus.iter().map(linking_matrix).collect();
    let mut checked = 0usize;
    for a in &matrices {
        for b in &matrices {
            if a.mu() != b.mu() || !a.is_classical_consistent() || !b.is_classical_consistent() {
                continue;
            }
            if tc_isomorphic_classical(a, b, &caps).unwrap().is_some() {
                let cert = saktra_condition(a, b, SaktraMode::Search, &caps).unwrap();
                assert!(cert.is_some(), "{:?} vs {:?}", a.rows(), b.rows());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

/// Normal-form bases: idempotent, contain their generators, and report
/// indexes consistent with their diagonal.
#[test]
fn lattice_normal_forms_behave() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let m = 1 + (rng.next_u64() % 4) as usize;
        let g = 1 + (rng.next_u64() % 5) as usize;
        let gens: Vec<_> = (0..g)
            .map(|_| int_vec(&(0..m).map(|_| (rng.next_u64() % 19) as i64 - 9).collect::<Vec<_>>()))
            .collect();
        let basis = hnf(m, &gens);
        assert_eq!(hnf(m, basis.rows()), basis, "normal form must be idempotent");
        for v in &gens {
            assert!(basis.contains(v), "basis must contain generator {v:?}");
        }
        match (basis.diagonal(), basis.index()) {
            (Some(diag), LatticeIndex::Finite(n)) => {
                assert_eq!(diag.iter().product::<BigInt>(), n);
            }
            (None, LatticeIndex::Infinite) => {}
            (d, i) => panic!("diagonal {d:?} inconsistent with index {i:?}"),
        }
        // Reduction lands on a representative the basis recognizes.
        if let Some(reps) = basis.coset_reps() {
            let v = int_vec(&(0..m).map(|_| (rng.next_u64() % 41) as i64 - 20).collect::<Vec<_>>());
            let r = basis.reduce(&v);
            assert!(reps.contains(&r));
            let diff: Vec<BigInt> =
                v.iter().zip(&r).map(|(a, b)| a - b).collect();
            assert!(basis.contains(&diff), "v - reduce(v) must lie in the lattice");
        }
    }
}

/// Coordinate permutation of a basis is an action: applying a
/// permutation then its inverse restores the basis.
#[test]
fn coordinate_permutation_round_trips() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..100 {
        let m = 2 + (rng.next_u64() % 3) as usize;
        let gens: Vec<_> = (0..3)
            .map(|_| int_vec(&(0..m).map(|_| (rng.next_u64() % 11) as i64 - 5).collect::<Vec<_>>()))
            .collect();
        let basis = hnf(m, &gens);
        let mut perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            perm.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let mut inverse = vec![0usize; m];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        assert_eq!(
            basis.permute_coordinates(&perm).permute_coordinates(&inverse),
            basis
        );
    }
}

/// The closed-form two-component count degrades gracefully: targets that
/// are not of the parameterized shape still agree between the two
/// structural counters on the whole corpus.
#[test]
fn structural_counters_agree_on_arbitrary_targets() {
    let targets = [fixed_target_a(), fixed_target_b()];
    let mut by_matrix: HashMap<Vec<Vec<i64>>, Vec<u64>> = HashMap::new();
    for d in full_corpus() {
        let m = linking_matrix(&d);
        let counts: Vec<u64> = targets
            .iter()
            .map(|t| {
                let via_diagram = count_homs_tc_propagate(&d, t).unwrap();
                let via_matrix = count_homs_tc_fixedpoint(&m, t).unwrap();
                assert_eq!(via_diagram, via_matrix, "{}", d.serialize());
                via_diagram
            })
            .collect();
        // Counts are a function of the matrix alone.
        if let Some(prev) = by_matrix.insert(m.rows().to_vec(), counts.clone()) {
            assert_eq!(prev, counts);
        }
    }
}
