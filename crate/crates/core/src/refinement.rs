//! Uncorrelated factorizations and refinements.
//!
//! Δ is uncorrelated when it is the full product ∏_h P_h of its
//! per-hypothesis likelihood sets. Exactly then can the generalized space be
//! replaced by a classical space over refined hypotheses H′ with a surjection
//! g: H′ → H whose fibers carry the alternative likelihood functions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::evidence::{EvidenceSpace, LikelihoodMapping};
use crate::generalized::{Bounds, GeneralizedEvidenceSpace};
use crate::label::Label;
use crate::rational::Rational;

/// Per-hypothesis likelihood sets P_h with Δ = ∏_h P_h. Each P_h is
/// deduplicated and sorted by mass vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct Factorization {
    sets: BTreeMap<Label, Vec<Dist>>,
}

/// A member of ∏_h P_h missing from Δ. `sources[h]` is the index of a mapping
/// in Δ that contributes the likelihood function used for `h`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub mapping: LikelihoodMapping,
    pub sources: BTreeMap<Label, usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Correlation {
    Uncorrelated(Factorization),
    Correlated(Witness),
}

impl Correlation {
    pub fn is_uncorrelated(&self) -> bool {
        matches!(self, Correlation::Uncorrelated(_))
    }
}

/// Odometer over index tuples, last position varying fastest.
pub(crate) fn index_tuples(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = sizes.iter().product();
    (0..total).map(move |mut n| {
        let mut tuple = vec![0; sizes.len()];
        for (slot, &size) in tuple.iter_mut().zip(sizes).rev() {
            *slot = n % size;
            n /= size;
        }
        tuple
    })
}

/// Computes P_h = {μ(h) | μ ∈ Δ} for every h and checks Δ = ∏_h P_h by
/// testing every product combination for membership.
pub fn factor_uncorrelated(g: &GeneralizedEvidenceSpace) -> Correlation {
    let hypotheses: Vec<Label> = g.hypotheses().cloned().collect();
    // P_h in order of first appearance in Δ, with the index of that mapping.
    let mut firsts: Vec<Vec<(&Dist, usize)>> = vec![Vec::new(); hypotheses.len()];
    for (index, mapping) in g.mappings().enumerate() {
        for (slot, h) in firsts.iter_mut().zip(&hypotheses) {
            let mu = mapping.likelihood(h).expect("mappings share hypotheses");
            if !slot.iter().any(|(seen, _)| *seen == mu) {
                slot.push((mu, index));
            }
        }
    }
    let members: BTreeSet<&LikelihoodMapping> = g.mappings().collect();
    let sizes: Vec<usize> = firsts.iter().map(Vec::len).collect();
    for tuple in index_tuples(&sizes) {
        let functions: Vec<(Label, Dist)> = hypotheses
            .iter()
            .zip(&firsts)
            .zip(&tuple)
            .map(|((h, set), &i)| (h.clone(), set[i].0.clone()))
            .collect();
        let candidate = LikelihoodMapping::new(functions).expect("combination of valid functions");
        if !members.contains(&candidate) {
            let sources = hypotheses
                .iter()
                .zip(&firsts)
                .zip(&tuple)
                .map(|((h, set), &i)| (h.clone(), set[i].1))
                .collect();
            return Correlation::Correlated(Witness {
                mapping: candidate,
                sources,
            });
        }
    }
    let sets = hypotheses
        .into_iter()
        .zip(firsts)
        .map(|(h, set)| {
            let mut set: Vec<Dist> = set.into_iter().map(|(mu, _)| mu.clone()).collect();
            set.sort();
            (h, set)
        })
        .collect();
    Correlation::Uncorrelated(Factorization { sets })
}

impl Factorization {
    /// Factorization of an arbitrary family of per-hypothesis sets. Duplicate
    /// functions are removed. All functions must share one observation set.
    pub fn from_sets<I, L>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, Vec<Dist>)>,
        L: Into<Label>,
    {
        let mut out = BTreeMap::new();
        let mut support: Option<Dist> = None;
        for (h, set) in sets {
            let h = h.into();
            let set: BTreeSet<Dist> = set.into_iter().collect();
            if set.is_empty() {
                return Err(Error::EmptyMappings);
            }
            for mu in &set {
                match &support {
                    Some(s) if !s.same_support(mu) => {
                        return Err(Error::ObservationMismatch { hypothesis: h })
                    }
                    None => support = Some(mu.clone()),
                    _ => {}
                }
            }
            if out.insert(h.clone(), set.into_iter().collect()).is_some() {
                return Err(Error::DuplicateLabel(h));
            }
        }
        if out.is_empty() {
            return Err(Error::NoHypotheses);
        }
        Ok(Factorization { sets: out })
    }

    pub fn likelihood_set(&self, h: &str) -> Option<&[Dist]> {
        self.sets.get(h).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &[Dist])> {
        self.sets.iter().map(|(h, s)| (h, s.as_slice()))
    }

    pub fn product_size(&self) -> usize {
        self.sets.values().map(Vec::len).product()
    }

    /// ∏_h P_h as likelihood mappings.
    pub fn product(&self) -> Vec<LikelihoodMapping> {
        let sizes: Vec<usize> = self.sets.values().map(Vec::len).collect();
        index_tuples(&sizes)
            .map(|tuple| {
                LikelihoodMapping::new(
                    self.sets
                        .iter()
                        .zip(&tuple)
                        .map(|((h, set), &i)| (h.clone(), set[i].clone())),
                )
                .expect("functions share one observation set")
            })
            .collect()
    }

    /// Upper probability (P_h)*(ob).
    pub fn upper_probability(&self, h: &str, ob: &str) -> Rational {
        self.extreme(h, ob, |a, b| a > b)
    }

    /// Lower probability (P_h)_*(ob).
    pub fn lower_probability(&self, h: &str, ob: &str) -> Rational {
        self.extreme(h, ob, |a, b| a < b)
    }

    fn extreme(&self, h: &str, ob: &str, better: impl Fn(&Rational, &Rational) -> bool) -> Rational {
        let set = &self.sets[h];
        let mut best = set[0].mass(ob);
        for mu in &set[1..] {
            if better(mu.mass(ob), best) {
                best = mu.mass(ob);
            }
        }
        best.clone()
    }
}

/// Classical space over refined hypotheses plus the surjection onto the
/// coarse hypotheses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Refinement {
    refined: EvidenceSpace,
    surjection: BTreeMap<Label, Label>,
}

/// A prior on H′ whose pushforward along g is a given prior on H.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionPrior {
    prior: Dist,
}

impl ExtensionPrior {
    pub fn new(refinement: &Refinement, coarse: &Dist, refined: Dist) -> Result<Self> {
        if !refined.labels().eq(refinement.refined.hypotheses()) {
            return Err(Error::SupportMismatch);
        }
        refinement.check_coarse_prior(coarse)?;
        let pushed = refinement.pushforward(&refined);
        for (h, p) in coarse.iter() {
            if pushed.mass(h) != p {
                return Err(Error::NotAnExtension(h.clone()));
            }
        }
        Ok(ExtensionPrior { prior: refined })
    }

    pub fn dist(&self) -> &Dist {
        &self.prior
    }
}

impl Refinement {
    pub fn new(refined: EvidenceSpace, surjection: BTreeMap<Label, Label>) -> Result<Self> {
        for h in refined.hypotheses() {
            if !surjection.contains_key(h) {
                return Err(Error::UnmappedHypothesis(h.clone()));
            }
        }
        for h in surjection.keys() {
            if refined.likelihood(h).is_none() {
                return Err(Error::UnknownHypothesis(h.clone()));
            }
        }
        let r = Refinement {
            refined,
            surjection,
        };
        for h in r.coarse_hypotheses() {
            let fiber = r.fiber(h);
            for (i, a) in fiber.iter().enumerate() {
                for b in &fiber[i + 1..] {
                    if r.refined.likelihood(a) == r.refined.likelihood(b) {
                        return Err(Error::DuplicateInFiber((*a).clone(), (*b).clone()));
                    }
                }
            }
        }
        Ok(r)
    }

    /// H′ = {(h, k)}, one refined hypothesis per member of P_h, with
    /// μ′((h, k)) the k-th member and g((h, k)) = h.
    pub fn build(f: &Factorization) -> Refinement {
        let mut functions = Vec::new();
        let mut surjection = BTreeMap::new();
        for (h, set) in f.iter() {
            for (k, mu) in set.iter().enumerate() {
                let refined = Label::new(format!("({h}, {})", k + 1));
                surjection.insert(refined.clone(), h.clone());
                functions.push((refined, mu.clone()));
            }
        }
        let mapping = LikelihoodMapping::new(functions).expect("functions share one observation set");
        // Every observation is possible under some mapping of Δ, hence under
        // some refined hypothesis.
        let refined = EvidenceSpace::new(mapping).expect("observations stay possible");
        Refinement {
            refined,
            surjection,
        }
    }

    pub fn refined(&self) -> &EvidenceSpace {
        &self.refined
    }

    pub fn surjection(&self) -> &BTreeMap<Label, Label> {
        &self.surjection
    }

    pub fn coarse_hypotheses(&self) -> BTreeSet<&Label> {
        self.surjection.values().collect()
    }

    /// g⁻¹(h), in refined-label order.
    pub fn fiber(&self, h: &str) -> Vec<&Label> {
        self.surjection
            .iter()
            .filter(|(_, coarse)| coarse.as_str() == h)
            .map(|(fine, _)| fine)
            .collect()
    }

    /// P_h = {μ′(h′) | h′ ∈ g⁻¹(h)} for every coarse h.
    pub fn likelihood_sets(&self) -> BTreeMap<Label, BTreeSet<Dist>> {
        let mut sets: BTreeMap<Label, BTreeSet<Dist>> = BTreeMap::new();
        for (fine, coarse) in &self.surjection {
            let mu = self.refined.likelihood(fine).expect("surjection keys are hypotheses");
            sets.entry(coarse.clone()).or_default().insert(mu.clone());
        }
        sets
    }

    /// The Δ this refinement corresponds to: ∏_h P_h.
    pub fn reconstruct_mappings(&self) -> BTreeSet<LikelihoodMapping> {
        let f = Factorization::from_sets(
            self.likelihood_sets()
                .into_iter()
                .map(|(h, s)| (h, s.into_iter().collect())),
        )
        .expect("refined likelihoods share one observation set");
        f.product().into_iter().collect()
    }

    /// Whether this refines `g`: g is onto H and Δ = ∏_h P_h.
    pub fn refines(&self, g: &GeneralizedEvidenceSpace) -> bool {
        let coarse: BTreeSet<&Label> = g.hypotheses().collect();
        if coarse != self.coarse_hypotheses() {
            return false;
        }
        if !self.refined.observations().eq(g.observations()) {
            return false;
        }
        let delta: BTreeSet<LikelihoodMapping> = g.mappings().cloned().collect();
        delta == self.reconstruct_mappings()
    }

    fn check_coarse_prior(&self, prior: &Dist) -> Result<()> {
        let coarse = self.coarse_hypotheses();
        if prior.len() == coarse.len() && prior.labels().zip(coarse).all(|(a, b)| a == b) {
            Ok(())
        } else {
            Err(Error::SupportMismatch)
        }
    }

    /// μ₀(h) = μ′₀(g⁻¹(h)).
    pub fn pushforward(&self, refined_prior: &Dist) -> Dist {
        let mut masses: BTreeMap<Label, Rational> = BTreeMap::new();
        for (fine, p) in refined_prior.iter() {
            let coarse = &self.surjection[fine];
            let entry = masses.entry(coarse.clone()).or_insert_with(Rational::zero);
            *entry = &*entry + p;
        }
        Dist::from_pairs(masses).expect("pushforward of a distribution")
    }

    /// Refined posterior mass on g⁻¹(h) after observing `ob` under `prior`.
    pub fn fiber_posterior(&self, prior: &ExtensionPrior, ob: &str, h: &str) -> Result<Rational> {
        let post = self.refined.posterior(prior.dist(), ob)?;
        Ok(post.mass_of(self.fiber(h)))
    }

    /// Extreme points of Ext(μ₀): each μ₀(h) placed entirely on one h′ ∈
    /// g⁻¹(h). Tags index the chosen member of each fiber, in coarse order.
    pub fn extension_vertices(&self, prior: &Dist) -> Result<Vec<(Vec<usize>, ExtensionPrior)>> {
        self.check_coarse_prior(prior)?;
        let fibers: Vec<(&Label, Vec<&Label>)> = self
            .coarse_hypotheses()
            .into_iter()
            .map(|h| (h, self.fiber(h)))
            .collect();
        let sizes: Vec<usize> = fibers.iter().map(|(_, f)| f.len()).collect();
        let vertices = index_tuples(&sizes)
            .map(|tuple| {
                let mut masses: BTreeMap<Label, Rational> = self
                    .surjection
                    .keys()
                    .map(|fine| (fine.clone(), Rational::zero()))
                    .collect();
                for ((h, fiber), &i) in fibers.iter().zip(&tuple) {
                    masses.insert(fiber[i].clone(), prior.mass(h).clone());
                }
                let dist = Dist::from_pairs(masses).expect("vertex is a distribution");
                (tuple, ExtensionPrior { prior: dist })
            })
            .collect();
        Ok(vertices)
    }

    /// Exact (inf, sup) over Ext(μ₀) of the refined posterior mass on
    /// g⁻¹(h). The objective is a ratio of linear functions of μ′₀ with a
    /// positive denominator, so its extrema over the polytope Ext(μ₀) are
    /// attained at vertices.
    pub fn extension_posterior_bounds(&self, prior: &Dist, ob: &str, h: &str) -> Result<Bounds> {
        self.refined.check_observation(ob)?;
        if self.fiber(h).is_empty() {
            return Err(Error::UnknownHypothesis(Label::new(h)));
        }
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (tag, vertex) in self.extension_vertices(prior)? {
            let mass = match self.fiber_posterior(&vertex, ob, h) {
                Ok(m) => m,
                Err(Error::TotalConflict) => return Err(Error::ConflictAt { tag }),
                Err(e) => return Err(e),
            };
            if lower.as_ref().is_none_or(|l| &mass < l) {
                lower = Some(mass.clone());
            }
            if upper.as_ref().is_none_or(|u| &mass > u) {
                upper = Some(mass);
            }
        }
        Ok(Bounds {
            lower: lower.expect("at least one vertex"),
            upper: upper.expect("at least one vertex"),
        })
    }
}
