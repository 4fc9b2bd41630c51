#![allow(dead_code)]

use std::collections::BTreeSet;

use evidence::{Dist, EvidenceSpace, Factorization, GeneralizedEvidenceSpace, LikelihoodMapping, Rational};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn hyp(i: usize) -> String {
    format!("h{i}")
}

pub fn obs(i: usize) -> String {
    format!("o{i}")
}

/// Normalizes nonnegative integer weights (not all zero) into a distribution.
pub fn dist_from_weights(labels: &[String], weights: &[u32]) -> Dist {
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    assert!(total > 0);
    Dist::new(
        labels.iter().map(String::as_str),
        weights.iter().map(|&w| Rational::new(w as i64, total)),
    )
    .unwrap()
}

fn labels(n: usize, f: fn(usize) -> String) -> Vec<String> {
    (0..n).map(f).collect()
}

/// Integer likelihood weights for `n_h` hypotheses over `n_o` observations,
/// bumped so each row is nonzero and each column has a positive entry.
fn likelihood_matrix(n_h: usize, n_o: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..5, n_o), n_h).prop_map(move |mut m| {
        for row in m.iter_mut() {
            if row.iter().all(|&w| w == 0) {
                row[0] = 1;
            }
        }
        for o in 0..n_o {
            if m.iter().all(|row| row[o] == 0) {
                m[o % n_h][o] = 1;
            }
        }
        m
    })
}

pub fn space_from_matrix(m: &[Vec<u32>]) -> EvidenceSpace {
    let os = labels(m[0].len(), obs);
    let mapping = LikelihoodMapping::new(
        m.iter()
            .enumerate()
            .map(|(i, row)| (hyp(i), dist_from_weights(&os, row))),
    )
    .unwrap();
    EvidenceSpace::new(mapping).unwrap()
}

pub fn evidence_space(max_h: usize, max_o: usize) -> impl Strategy<Value = EvidenceSpace> {
    (1..=max_h, 1..=max_o)
        .prop_flat_map(|(n_h, n_o)| likelihood_matrix(n_h, n_o))
        .prop_map(|m| space_from_matrix(&m))
}

/// Prior over `n` hypotheses; zero masses allowed but not all zero.
pub fn prior(n: usize, allow_zero: bool) -> impl Strategy<Value = Dist> {
    let lo = if allow_zero { 0 } else { 1 };
    prop::collection::vec(lo..10u32, n).prop_map(move |mut w| {
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        dist_from_weights(&labels(n, hyp), &w)
    })
}

pub fn space_with_prior(max_h: usize, max_o: usize, allow_zero: bool) -> impl Strategy<Value = (EvidenceSpace, Dist)> {
    evidence_space(max_h, max_o).prop_flat_map(move |e| {
        let n = e.hypotheses().count();
        (Just(e), prior(n, allow_zero))
    })
}

/// Per-hypothesis likelihood sets with every observation possible under
/// every combination: observation o is always possible for hypothesis
/// o mod |H|.
pub fn likelihood_sets(max_h: usize, max_o: usize, max_set: usize) -> impl Strategy<Value = Vec<Vec<Dist>>> {
    (1..=max_h, 1..=max_o)
        .prop_flat_map(move |(n_h, n_o)| {
            prop::collection::vec(
                prop::collection::vec(prop::collection::vec(0u32..5, n_o), 1..=max_set),
                n_h,
            )
        })
        .prop_map(|mut sets| {
            let n_h = sets.len();
            let n_o = sets[0][0].len();
            let os = labels(n_o, obs);
            for o in 0..n_o {
                for w in sets[o % n_h].iter_mut() {
                    w[o] = w[o].max(1);
                }
            }
            sets.into_iter()
                .map(|set| {
                    let distinct: BTreeSet<Dist> = set
                        .into_iter()
                        .map(|mut w| {
                            if w.iter().all(|&x| x == 0) {
                                w[0] = 1;
                            }
                            dist_from_weights(&os, &w)
                        })
                        .collect();
                    distinct.into_iter().collect()
                })
                .collect()
        })
}

pub fn uncorrelated_from_sets(sets: &[Vec<Dist>]) -> GeneralizedEvidenceSpace {
    let f = Factorization::from_sets(sets.iter().enumerate().map(|(i, s)| (hyp(i), s.clone()))).unwrap();
    GeneralizedEvidenceSpace::new(f.product()).unwrap()
}

pub fn uncorrelated_space(max_h: usize, max_o: usize, max_set: usize) -> impl Strategy<Value = GeneralizedEvidenceSpace> {
    likelihood_sets(max_h, max_o, max_set).prop_map(|sets| uncorrelated_from_sets(&sets))
}

pub fn uncorrelated_with_prior(
    max_h: usize,
    max_o: usize,
    max_set: usize,
) -> impl Strategy<Value = (GeneralizedEvidenceSpace, Dist)> {
    uncorrelated_space(max_h, max_o, max_set).prop_flat_map(|g| {
        let n = g.hypotheses().count();
        (Just(g), prior(n, false))
    })
}
