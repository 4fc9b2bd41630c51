//! Evidence from sequences of observations.
//!
//! Observations in a sequence are treated as independent given the
//! hypothesis, so the likelihood of a sequence is the product of the
//! per-observation likelihoods and its weight is the ⊕-fold of the
//! per-observation weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::evidence::EvidenceSpace;
use crate::generalized::{combine_each, DistSet, GeneralizedEvidenceSpace, Tagged, WeightSet};
use crate::label::Label;
use crate::refinement::index_tuples;

/// A nonempty ordered list of observations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObservationSequence {
    items: Vec<Label>,
}

impl ObservationSequence {
    pub fn new<I>(items: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Label>,
    {
        let items: Vec<Label> = items.into_iter().map(Into::into).collect();
        if items.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(ObservationSequence { items })
    }

    pub fn single(ob: impl Into<Label>) -> Self {
        ObservationSequence {
            items: vec![ob.into()],
        }
    }

    pub fn items(&self) -> &[Label] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl fmt::Display for ObservationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [single] = self.items.as_slice() {
            return write!(f, "{single}");
        }
        f.write_str("<")?;
        for (i, ob) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{ob}")?;
        }
        f.write_str(">")
    }
}

/// Whether one likelihood mapping governs the whole sequence, or each
/// observation may be governed by a different mapping of Δ.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombinationMode {
    FixedMapping,
    PerObservation,
}

impl FromStr for CombinationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fixed" | "fixed-mapping" => Ok(CombinationMode::FixedMapping),
            "per-observation" => Ok(CombinationMode::PerObservation),
            other => Err(format!("unknown combination mode {other:?}")),
        }
    }
}

impl fmt::Display for CombinationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombinationMode::FixedMapping => "fixed",
            CombinationMode::PerObservation => "per-observation",
        })
    }
}

fn fold_weights<'a>(mut weights: impl Iterator<Item = &'a Dist>) -> Result<Dist> {
    let first = weights.next().ok_or(Error::EmptySequence)?.clone();
    weights.try_fold(first, |acc, w| acc.combine(w))
}

impl EvidenceSpace {
    /// w(⟨ob₁, …, obₙ⟩, ·) = w(ob₁, ·) ⊕ … ⊕ w(obₙ, ·).
    pub fn sequence_weight(&self, seq: &ObservationSequence) -> Result<Dist> {
        let weights = seq
            .items
            .iter()
            .map(|ob| self.weight_of_evidence(ob))
            .collect::<Result<Vec<_>>>()?;
        fold_weights(weights.iter())
    }

    pub fn sequence_posterior(&self, prior: &Dist, seq: &ObservationSequence) -> Result<Dist> {
        self.check_prior(prior)?;
        prior.combine(&self.sequence_weight(seq)?)
    }
}

impl GeneralizedEvidenceSpace {
    /// Generalized weight of a sequence. Under [`CombinationMode::FixedMapping`]
    /// each entry folds the weights of a single mapping and is tagged `[i]`;
    /// under [`CombinationMode::PerObservation`] every index tuple in Δⁿ is
    /// folded and the tag is the tuple.
    pub fn generalized_sequence_weights(
        &self,
        seq: &ObservationSequence,
        mode: CombinationMode,
    ) -> Result<WeightSet> {
        // per_ob[t][i] = w_i(ob_t, ·)
        let per_ob: Vec<Vec<Dist>> = seq
            .items
            .iter()
            .map(|ob| {
                self.spaces()
                    .iter()
                    .map(|e| e.weight_of_evidence(ob))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        // `path[t]` selects the mapping used for observation t.
        let fold = |tag: Vec<usize>, path: &[usize]| -> Result<Tagged> {
            let dist = fold_weights(per_ob.iter().zip(path).map(|(ws, &i)| &ws[i]))
                .map_err(|e| match e {
                    Error::TotalConflict => Error::ConflictAt { tag: tag.clone() },
                    other => other,
                })?;
            Ok(Tagged { tag, dist })
        };
        let entries = match mode {
            CombinationMode::FixedMapping => (0..self.len())
                .map(|i| fold(vec![i], &vec![i; seq.len()]))
                .collect::<Result<Vec<_>>>()?,
            CombinationMode::PerObservation => {
                let sizes = vec![self.len(); seq.len()];
                index_tuples(&sizes)
                    .map(|path| fold(path.clone(), &path))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(DistSet::from_entries(entries))
    }

    pub fn sequence_posterior_set(
        &self,
        prior: &Dist,
        seq: &ObservationSequence,
        mode: CombinationMode,
    ) -> Result<DistSet> {
        let weights = self.generalized_sequence_weights(seq, mode)?;
        self.spaces()[0].check_prior(prior)?;
        combine_each(prior, &weights)
    }
}
