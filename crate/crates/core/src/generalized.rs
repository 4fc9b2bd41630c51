//! Generalized evidence spaces (H, O, Δ): a set of candidate likelihood
//! mappings instead of a single one.
//!
//! The generalized weight of an observation is the set of classical weights,
//! one per mapping in Δ, and a prior updates to a set of posteriors. Upper and
//! lower weights are the extrema of that set; since Δ is finite they are
//! attained, so they are computed as max/min.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result, Tag};
use crate::evidence::{EvidenceSpace, LikelihoodMapping};
use crate::label::Label;
use crate::rational::Rational;
use crate::refinement::{factor_uncorrelated, Correlation, Factorization};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralizedEvidenceSpace {
    spaces: Vec<EvidenceSpace>,
}

/// A distribution over hypotheses tagged with the Δ-indices that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Tagged {
    pub tag: Tag,
    #[serde(rename = "masses")]
    pub dist: Dist,
}

/// Set-valued result keeping provenance. Duplicate distributions reached by
/// different paths are kept as separate entries; [`DistSet::distinct`] gives
/// the set view.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct DistSet {
    entries: Vec<Tagged>,
}

/// Generalized weight of evidence w_G(ob, ·).
pub type WeightSet = DistSet;
/// Posterior set {μ₀ ⊕ w(ob, ·) | w ∈ w_G}.
pub type PosteriorSet = DistSet;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Bounds {
    pub lower: Rational,
    pub upper: Rational,
}

impl Bounds {
    pub fn point(value: Rational) -> Self {
        Bounds {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

impl DistSet {
    pub(crate) fn from_entries(entries: Vec<Tagged>) -> Self {
        DistSet { entries }
    }

    pub fn entries(&self) -> &[Tagged] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct(&self) -> BTreeSet<&Dist> {
        self.entries.iter().map(|t| &t.dist).collect()
    }

    /// Distinct masses assigned to `h` across the set.
    pub fn masses_of(&self, h: &str) -> BTreeSet<Rational> {
        self.entries
            .iter()
            .filter_map(|t| t.dist.get(h).cloned())
            .collect()
    }

    /// Exact min and max of the mass on `h`.
    pub fn bounds(&self, h: &str) -> Result<Bounds> {
        let masses = self.masses_of(h);
        match (masses.first(), masses.last()) {
            (Some(lo), Some(hi)) => Ok(Bounds {
                lower: lo.clone(),
                upper: hi.clone(),
            }),
            _ => Err(Error::UnknownHypothesis(Label::new(h))),
        }
    }

    /// Min and max of the total mass on a set of hypotheses.
    pub fn bounds_of_set<'a, I>(&self, hs: I) -> Option<Bounds>
    where
        I: IntoIterator<Item = &'a Label> + Clone,
    {
        let masses: BTreeSet<Rational> = self
            .entries
            .iter()
            .map(|t| t.dist.mass_of(hs.clone()))
            .collect();
        Some(Bounds {
            lower: masses.first()?.clone(),
            upper: masses.last()?.clone(),
        })
    }
}

impl GeneralizedEvidenceSpace {
    /// Validates that every mapping covers the same hypotheses and
    /// observations, that each induced evidence space has no impossible
    /// observation, and that Δ has no repeated mapping.
    pub fn new(mappings: Vec<LikelihoodMapping>) -> Result<Self> {
        let first = mappings.first().ok_or(Error::EmptyMappings)?;
        let hypotheses: Vec<Label> = first.hypotheses().cloned().collect();
        let observations: Vec<Label> = first.observations().cloned().collect();
        let mut seen: BTreeMap<&LikelihoodMapping, usize> = BTreeMap::new();
        for (index, mapping) in mappings.iter().enumerate() {
            if !mapping.hypotheses().eq(hypotheses.iter()) {
                return Err(Error::HypothesisMismatch { index });
            }
            if !mapping.observations().eq(observations.iter()) {
                let h = mapping.hypotheses().next().expect("nonempty").clone();
                return Err(Error::InMapping {
                    index,
                    source: Box::new(Error::ObservationMismatch { hypothesis: h }),
                });
            }
            if let Some(&first) = seen.get(mapping) {
                return Err(Error::DuplicateMapping {
                    first,
                    second: index,
                });
            }
            seen.insert(mapping, index);
        }
        let spaces = mappings
            .into_iter()
            .enumerate()
            .map(|(index, m)| {
                EvidenceSpace::new(m).map_err(|e| Error::InMapping {
                    index,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneralizedEvidenceSpace { spaces })
    }

    pub fn from_space(space: EvidenceSpace) -> Self {
        GeneralizedEvidenceSpace {
            spaces: vec![space],
        }
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Label> {
        self.spaces[0].hypotheses()
    }

    pub fn observations(&self) -> impl Iterator<Item = &Label> {
        self.spaces[0].observations()
    }

    pub fn mappings(&self) -> impl Iterator<Item = &LikelihoodMapping> {
        self.spaces.iter().map(EvidenceSpace::mapping)
    }

    /// The induced classical spaces S(G), in Δ order.
    pub fn spaces(&self) -> &[EvidenceSpace] {
        &self.spaces
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn has_hypothesis(&self, h: &str) -> bool {
        self.spaces[0].likelihood(h).is_some()
    }

    fn check_hypothesis(&self, h: &str) -> Result<()> {
        if self.has_hypothesis(h) {
            Ok(())
        } else {
            Err(Error::UnknownHypothesis(Label::new(h)))
        }
    }

    pub fn factorization(&self) -> Correlation {
        factor_uncorrelated(self)
    }

    fn require_uncorrelated(&self) -> Result<Factorization> {
        match factor_uncorrelated(self) {
            Correlation::Uncorrelated(f) => Ok(f),
            Correlation::Correlated(_) => Err(Error::CorrelatedSpace),
        }
    }

    pub fn generalized_weights(&self, ob: &str) -> Result<WeightSet> {
        let entries = self
            .spaces
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Ok(Tagged {
                    tag: vec![i],
                    dist: e.weight_of_evidence(ob)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DistSet { entries })
    }

    pub fn posterior_set(&self, prior: &Dist, ob: &str) -> Result<PosteriorSet> {
        let weights = self.generalized_weights(ob)?;
        self.spaces[0].check_prior(prior)?;
        combine_each(prior, &weights)
    }

    /// (inf, sup) of w(ob, h) over w_G.
    pub fn upper_lower_weight(&self, ob: &str, h: &str) -> Result<Bounds> {
        self.check_hypothesis(h)?;
        self.generalized_weights(ob)?.bounds(h)
    }

    /// Right-hand sides of the upper/lower posterior bounds built from upper
    /// and lower weights. Only valid for uncorrelated Δ.
    pub fn posterior_bounds_formula(&self, prior: &Dist, ob: &str, h: &str) -> Result<Bounds> {
        self.check_hypothesis(h)?;
        self.spaces[0].check_prior(prior)?;
        self.require_uncorrelated()?;
        let weights = self.generalized_weights(ob)?;
        let mut hi_num = Rational::zero();
        let mut lo_num = Rational::zero();
        let mut hi_rest = Rational::zero();
        let mut lo_rest = Rational::zero();
        for (other, p) in prior.iter() {
            let b = weights.bounds(other)?;
            if other.as_str() == h {
                hi_num = &b.upper * p;
                lo_num = &b.lower * p;
            } else {
                hi_rest = hi_rest + &b.lower * p;
                lo_rest = lo_rest + &b.upper * p;
            }
        }
        let upper = hi_num
            .checked_div(&(&hi_num + &hi_rest))
            .ok_or(Error::ZeroDenominator)?;
        let lower = lo_num
            .checked_div(&(&lo_num + &lo_rest))
            .ok_or(Error::ZeroDenominator)?;
        Ok(Bounds { lower, upper })
    }

    /// Upper and lower weights computed from the upper and lower
    /// probabilities of the per-hypothesis likelihood sets P_h. The upper
    /// weight pairs the upper probability of P_h with the lower
    /// probabilities of the other hypotheses, and dually for the lower weight.
    pub fn upper_lower_weight_product_form(&self, ob: &str, h: &str) -> Result<Bounds> {
        self.check_hypothesis(h)?;
        self.spaces[0].check_observation(ob)?;
        let f = self.require_uncorrelated()?;
        let mut up = Rational::zero();
        let mut low = Rational::zero();
        let mut rest_low = Rational::zero();
        let mut rest_up = Rational::zero();
        for other in self.hypotheses() {
            let upper_p = f.upper_probability(other, ob);
            let lower_p = f.lower_probability(other, ob);
            if other.as_str() == h {
                up = upper_p;
                low = lower_p;
            } else {
                rest_low = rest_low + lower_p;
                rest_up = rest_up + upper_p;
            }
        }
        let upper = up
            .checked_div(&(&up + &rest_low))
            .ok_or(Error::ZeroDenominator)?;
        let lower = low
            .checked_div(&(&low + &rest_up))
            .ok_or(Error::ZeroDenominator)?;
        Ok(Bounds { lower, upper })
    }
}

/// μ₀ ⊕ w for every tagged w, failing with the tag of the first conflict.
pub(crate) fn combine_each(prior: &Dist, weights: &DistSet) -> Result<DistSet> {
    let entries = weights
        .entries
        .iter()
        .map(|t| match prior.combine(&t.dist) {
            Ok(dist) => Ok(Tagged {
                tag: t.tag.clone(),
                dist,
            }),
            Err(Error::TotalConflict) => Err(Error::ConflictAt { tag: t.tag.clone() }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistSet { entries })
}
