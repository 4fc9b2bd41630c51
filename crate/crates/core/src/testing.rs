//! Spaces shared by the unit tests.

use crate::dist::Dist;
use crate::evidence::{EvidenceSpace, LikelihoodMapping};
use crate::generalized::GeneralizedEvidenceSpace;
use crate::rational::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn coin(heads: Rational) -> Dist {
    let tails = Rational::one() - &heads;
    Dist::new(["heads", "tails"], [heads, tails]).unwrap()
}

pub fn ab(a: Rational, b: Rational) -> Dist {
    Dist::new(["A", "B"], [a, b]).unwrap()
}

pub fn mapping(functions: &[(&str, Dist)]) -> LikelihoodMapping {
    LikelihoodMapping::new(functions.iter().cloned()).unwrap()
}

pub fn alice_bob() -> EvidenceSpace {
    EvidenceSpace::new(mapping(&[("A", coin(q(1, 1))), ("B", coin(q(1, 2)))])).unwrap()
}

pub fn three_hyp() -> EvidenceSpace {
    EvidenceSpace::new(mapping(&[
        ("A1", coin(q(1, 1))),
        ("A2", coin(q(3, 4))),
        ("B", coin(q(1, 2))),
    ]))
    .unwrap()
}

pub fn alice_two_coins() -> GeneralizedEvidenceSpace {
    GeneralizedEvidenceSpace::new(vec![
        mapping(&[("A", coin(q(1, 1))), ("B", coin(q(1, 2)))]),
        mapping(&[("A", coin(q(3, 4))), ("B", coin(q(1, 2)))]),
    ])
    .unwrap()
}

/// H = {D, E, F}, O = {X, Y}, every hypothesis independently X-biased 1/3 or 2/3.
pub fn three_hypotheses() -> GeneralizedEvidenceSpace {
    let low = Dist::new(["X", "Y"], [q(1, 3), q(2, 3)]).unwrap();
    let high = Dist::new(["X", "Y"], [q(2, 3), q(1, 3)]).unwrap();
    let mut mappings = Vec::new();
    for d in [&low, &high] {
        for e in [&low, &high] {
            for f in [&low, &high] {
                mappings.push(mapping(&[("D", d.clone()), ("E", e.clone()), ("F", f.clone())]));
            }
        }
    }
    GeneralizedEvidenceSpace::new(mappings).unwrap()
}

pub fn two_sided_choice() -> GeneralizedEvidenceSpace {
    let (m1, m2, m3, m4) = (coin(q(1, 1)), coin(q(3, 4)), coin(q(1, 2)), coin(q(1, 3)));
    GeneralizedEvidenceSpace::new(vec![
        mapping(&[("A", m1.clone()), ("B", m3.clone())]),
        mapping(&[("A", m1), ("B", m4.clone())]),
        mapping(&[("A", m2.clone()), ("B", m3)]),
        mapping(&[("A", m2), ("B", m4)]),
    ])
    .unwrap()
}

pub fn two_sided_choice_correlated() -> GeneralizedEvidenceSpace {
    GeneralizedEvidenceSpace::new(vec![
        mapping(&[("A", coin(q(1, 1))), ("B", coin(q(1, 2)))]),
        mapping(&[("A", coin(q(3, 4))), ("B", coin(q(1, 3)))]),
    ])
    .unwrap()
}
