//! Classical evidence spaces: one likelihood function per hypothesis.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::rational::Rational;

/// Assignment of a likelihood function (a distribution over observations)
/// to every hypothesis. All likelihood functions share one observation set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct LikelihoodMapping {
    functions: BTreeMap<Label, Dist>,
}

impl LikelihoodMapping {
    pub fn new<I, L>(functions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, Dist)>,
        L: Into<Label>,
    {
        let mut map: BTreeMap<Label, Dist> = BTreeMap::new();
        for (h, mu) in functions {
            let h = h.into();
            if let Some(first) = map.values().next() {
                if !first.same_support(&mu) {
                    return Err(Error::ObservationMismatch { hypothesis: h });
                }
            }
            if map.contains_key(&h) {
                return Err(Error::DuplicateLabel(h));
            }
            map.insert(h, mu);
        }
        if map.is_empty() {
            return Err(Error::NoHypotheses);
        }
        Ok(LikelihoodMapping { functions: map })
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Label> {
        self.functions.keys()
    }

    pub fn observations(&self) -> impl Iterator<Item = &Label> {
        self.functions
            .values()
            .next()
            .expect("mapping is nonempty")
            .labels()
    }

    pub fn likelihood(&self, h: &str) -> Option<&Dist> {
        self.functions.get(h)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Dist)> {
        self.functions.iter()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn has_observation(&self, ob: &str) -> bool {
        self.functions
            .values()
            .next()
            .is_some_and(|mu| mu.get(ob).is_some())
    }

    /// μ_h(ob) for every h, in hypothesis order.
    pub(crate) fn column(&self, ob: &str) -> BTreeMap<Label, Rational> {
        self.functions
            .iter()
            .map(|(h, mu)| (h.clone(), mu.mass(ob).clone()))
            .collect()
    }
}

/// An evidence space (H, O, μ) in which every observation is possible under
/// at least one hypothesis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvidenceSpace {
    mapping: LikelihoodMapping,
}

impl EvidenceSpace {
    pub fn new(mapping: LikelihoodMapping) -> Result<Self> {
        for ob in mapping.observations() {
            if mapping.iter().all(|(_, mu)| mu.mass(ob).is_zero()) {
                return Err(Error::ImpossibleObservation(ob.clone()));
            }
        }
        Ok(EvidenceSpace { mapping })
    }

    pub fn mapping(&self) -> &LikelihoodMapping {
        &self.mapping
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Label> {
        self.mapping.hypotheses()
    }

    pub fn observations(&self) -> impl Iterator<Item = &Label> {
        self.mapping.observations()
    }

    pub fn likelihood(&self, h: &str) -> Option<&Dist> {
        self.mapping.likelihood(h)
    }

    pub(crate) fn check_observation(&self, ob: &str) -> Result<()> {
        if self.mapping.has_observation(ob) {
            Ok(())
        } else {
            Err(Error::UnknownObservation(Label::new(ob)))
        }
    }

    pub(crate) fn check_prior(&self, prior: &Dist) -> Result<()> {
        if prior.len() == self.mapping.len()
            && prior.labels().zip(self.mapping.hypotheses()).all(|(a, b)| a == b)
        {
            Ok(())
        } else {
            Err(Error::SupportMismatch)
        }
    }

    /// Normalized likelihoods w(ob, h) = μ_h(ob) / Σ_h' μ_h'(ob).
    pub fn weight_of_evidence(&self, ob: &str) -> Result<Dist> {
        self.check_observation(ob)?;
        Ok(Dist::normalize(self.mapping.column(ob))
            .expect("every observation is possible in an evidence space"))
    }

    /// Posterior μ₀ ⊕ w(ob, ·).
    pub fn posterior(&self, prior: &Dist, ob: &str) -> Result<Dist> {
        self.check_prior(prior)?;
        prior.combine(&self.weight_of_evidence(ob)?)
    }
}

/// A probability on H × O, kept separate from [`EvidenceSpace`] so that Bayes
/// conditioning can be checked against Dempster updating.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JointDistribution {
    hypotheses: BTreeSet<Label>,
    observations: BTreeSet<Label>,
    mass: BTreeMap<(Label, Label), Rational>,
}

impl JointDistribution {
    /// Cells not listed have mass zero.
    pub fn new<I, H, O>(cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((H, O), Rational)>,
        H: Into<Label>,
        O: Into<Label>,
    {
        let mut mass = BTreeMap::new();
        let mut hypotheses = BTreeSet::new();
        let mut observations = BTreeSet::new();
        for ((h, ob), p) in cells {
            let (h, ob) = (h.into(), ob.into());
            if p.is_negative() {
                return Err(Error::NegativeMass {
                    label: Label::new(format!("({h}, {ob})")),
                    mass: p,
                });
            }
            hypotheses.insert(h.clone());
            observations.insert(ob.clone());
            if mass.insert((h.clone(), ob.clone()), p).is_some() {
                return Err(Error::DuplicateLabel(Label::new(format!("({h}, {ob})"))));
            }
        }
        let total: Rational = mass.values().sum();
        if !total.is_one() {
            return Err(Error::NonNormalized { sum: total });
        }
        Ok(JointDistribution {
            hypotheses,
            observations,
            mass,
        })
    }

    /// P(h, ob) = μ₀(h) · μ_h(ob).
    pub fn from_prior_and_likelihoods(prior: &Dist, space: &EvidenceSpace) -> Result<Self> {
        space.check_prior(prior)?;
        let mut cells = Vec::new();
        for (h, p) in prior.iter() {
            let mu = space.likelihood(h).expect("prior support checked");
            for (ob, l) in mu.iter() {
                cells.push(((h.clone(), ob.clone()), p * l));
            }
        }
        JointDistribution::new(cells)
    }

    pub fn probability(&self, h: &str, ob: &str) -> Rational {
        self.cell(&Label::new(h), &Label::new(ob))
    }

    fn cell(&self, h: &Label, ob: &Label) -> Rational {
        self.mass
            .get(&(h.clone(), ob.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// μ₀(h) = P({h} × O).
    pub fn hypothesis_marginal(&self) -> Dist {
        let pairs = self.hypotheses.iter().map(|h| {
            let m: Rational = self
                .observations
                .iter()
                .map(|ob| self.cell(h, ob))
                .sum();
            (h.clone(), m)
        });
        Dist::from_pairs(pairs).expect("marginal of a joint distribution is normalized")
    }

    /// P(H × {ob} | {h} × O), or `None` when P({h} × O) = 0.
    pub fn conditional_likelihood(&self, h: &str, ob: &str) -> Option<Rational> {
        let (h, ob) = (Label::new(h), Label::new(ob));
        let row: Rational = self
            .observations
            .iter()
            .map(|o| self.cell(&h, o))
            .sum();
        self.cell(&h, &ob).checked_div(&row)
    }

    /// Bayes conditioning on the observation: P({h} × O | H × {ob}).
    pub fn bayes_conditional(&self, ob: &str) -> Result<Dist> {
        let ob = Label::new(ob);
        if !self.observations.contains(&ob) {
            return Err(Error::UnknownObservation(ob));
        }
        let evidence: Rational = self
            .hypotheses
            .iter()
            .map(|h| self.cell(h, &ob))
            .sum();
        if evidence.is_zero() {
            return Err(Error::ZeroProbabilityObservation(ob));
        }
        let pairs = self
            .hypotheses
            .iter()
            .map(|h| (h.clone(), self.cell(h, &ob) / &evidence));
        Dist::from_pairs(pairs)
    }
}
