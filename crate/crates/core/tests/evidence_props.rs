mod common;

use common::*;
use evidence::{dempster_combine, Dist, Error, EvidenceSpace, JointDistribution, Rational};
use proptest::prelude::*;

/// Bayes' rule on the joint P(h, ob) = μ₀(h)·μ_h(ob), computed directly.
fn bayes_oracle(e: &EvidenceSpace, prior: &Dist, ob: &str) -> Option<Vec<(String, Rational)>> {
    let joint: Vec<(String, Rational)> = e
        .hypotheses()
        .map(|h| (h.to_string(), prior.mass(h) * e.likelihood(h).unwrap().mass(ob)))
        .collect();
    let evidence: Rational = joint.iter().map(|(_, p)| p.clone()).sum();
    if evidence.is_zero() {
        return None;
    }
    Some(joint.into_iter().map(|(h, p)| (h, p / &evidence)).collect())
}

fn small_dist(n: usize) -> impl Strategy<Value = Dist> {
    prior(n, true)
}

proptest! {
    #[test]
    fn weights_sum_to_one(e in evidence_space(5, 5)) {
        for ob in e.observations() {
            let w = e.weight_of_evidence(ob).unwrap();
            let total: Rational = w.masses().cloned().sum();
            prop_assert!(total.is_one());
        }
    }

    #[test]
    fn dempster_update_equals_bayes_conditioning((e, mu0) in space_with_prior(5, 5, true)) {
        let joint = JointDistribution::from_prior_and_likelihoods(&mu0, &e).unwrap();
        for ob in e.observations() {
            match bayes_oracle(&e, &mu0, ob) {
                Some(expected) => {
                    let post = e.posterior(&mu0, ob).unwrap();
                    for (h, p) in &expected {
                        prop_assert_eq!(post.mass(h), p);
                    }
                    prop_assert_eq!(joint.bayes_conditional(ob).unwrap(), post);
                }
                None => {
                    prop_assert_eq!(e.posterior(&mu0, ob), Err(Error::TotalConflict));
                    prop_assert_eq!(joint.bayes_conditional(ob), Err(Error::ZeroProbabilityObservation(ob.clone())));
                }
            }
        }
    }

    #[test]
    fn two_hypothesis_closed_form((e, mu0) in space_with_prior(2, 4, false).prop_filter("two hypotheses", |(e, _)| e.hypotheses().count() == 2)) {
        let h = hyp(0);
        for ob in e.observations() {
            let alpha = e.weight_of_evidence(ob).unwrap().mass(&h).clone();
            let beta = mu0.mass(&h).clone();
            let num = &alpha * &beta;
            let den = &num + (Rational::one() - &alpha) * (Rational::one() - &beta);
            let post = e.posterior(&mu0, ob).unwrap();
            prop_assert_eq!(post.mass(&h), &(num / den));
        }
    }

    #[test]
    fn three_hypothesis_closed_form((e, mu0) in space_with_prior(3, 4, false).prop_filter("three hypotheses", |(e, _)| e.hypotheses().count() == 3)) {
        let (a1, a2) = (hyp(0), hyp(1));
        for ob in e.observations() {
            let w = e.weight_of_evidence(ob).unwrap();
            let (al1, al2) = (w.mass(&a1), w.mass(&a2));
            let (b1, b2) = (mu0.mass(&a1), mu0.mass(&a2));
            let num = al1 * b1 + al2 * b2;
            let den = &num + (Rational::one() - al1 - al2) * (Rational::one() - b1 - b2);
            let post = e.posterior(&mu0, ob).unwrap();
            prop_assert_eq!(post.mass_of([&a1, &a2]), num / den);
        }
    }

    /// Splitting a hypothesis A of prior α into A1, A2 (any split) leaves the
    /// posterior of {A1, A2} between the two-hypothesis posteriors of A1
    /// and A2 against B.
    #[test]
    fn split_posterior_lies_between_component_posteriors(
        (e, alpha) in (evidence_space(3, 4).prop_filter("three hypotheses", |e| e.hypotheses().count() == 3), 1u32..10),
        split in 0u32..=10,
    ) {
        let (a1, a2, b) = (hyp(0), hyp(1), hyp(2));
        let alpha = Rational::new(alpha as i64, 10);
        let t = Rational::new(split as i64, 10);
        let mu0 = Dist::new(
            [a1.as_str(), a2.as_str(), b.as_str()],
            [&t * &alpha, (Rational::one() - &t) * &alpha, Rational::one() - &alpha],
        ).unwrap();
        let f = |beta: &Rational| {
            let num = &alpha * beta;
            num.checked_div(&(&num + (Rational::one() - &alpha) * (Rational::one() - beta)))
        };
        for ob in e.observations() {
            let like = |h: &str| e.likelihood(h).unwrap().mass(ob).clone();
            let pair_weight = |h: &str| like(h).checked_div(&(like(h) + like(&b)));
            let (Some(beta1), Some(beta2)) = (pair_weight(&a1), pair_weight(&a2)) else { continue };
            let (Some(x), Some(y)) = (f(&beta1), f(&beta2)) else { continue };
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let post = e.posterior(&mu0, ob).unwrap().mass_of([&a1, &a2]);
            prop_assert!(lo <= post && post <= hi, "{} not in [{}, {}]", post, lo, hi);
        }
    }

    #[test]
    fn combine_is_commutative(d1 in small_dist(4), d2 in small_dist(4)) {
        prop_assert_eq!(dempster_combine(&d1, &d2), dempster_combine(&d2, &d1));
    }

    #[test]
    fn combine_is_associative(d1 in small_dist(4), d2 in small_dist(4), d3 in small_dist(4)) {
        let left = d1.combine(&d2).and_then(|d| d.combine(&d3));
        let right = d2.combine(&d3).and_then(|d| d1.combine(&d));
        if let (Ok(l), Ok(r)) = (&left, &right) {
            prop_assert_eq!(l, r);
        }
        // Either side fails exactly when the triple product vanishes everywhere.
        prop_assert_eq!(left.is_ok(), right.is_ok());
    }

    #[test]
    fn uniform_is_identity(d in small_dist(5)) {
        let u = Dist::uniform(d.labels().cloned()).unwrap();
        prop_assert_eq!(&u.combine(&d).unwrap(), &d);
        prop_assert_eq!(&d.combine(&u).unwrap(), &d);
    }

    #[test]
    fn combination_is_normalized(d1 in small_dist(5), d2 in small_dist(5)) {
        if let Ok(d) = d1.combine(&d2) {
            let total: Rational = d.masses().cloned().sum();
            prop_assert!(total.is_one());
        }
    }
}

#[test]
fn split_bound_fails_when_priors_are_taken_per_component() {
    // Reading α₁, α₂ as each component's own prior does not bound the
    // posterior of {A1, A2}: here the posterior exceeds both endpoints.
    let (a1, a2, b) = (q(1, 4), q(1, 4), q(1, 2));
    let (w1, w2) = (q(2, 5), q(3, 10));
    let wb = Rational::one() - &w1 - &w2;
    let post = (&a1 * &w1 + &a2 * &w2) / (&a1 * &w1 + &a2 * &w2 + &b * &wb);
    let f = |a: &Rational, w: &Rational| {
        a * w / (a * w + (Rational::one() - a) * (Rational::one() - w))
    };
    assert!(post > f(&a1, &w1) && post > f(&a2, &w2));
}
