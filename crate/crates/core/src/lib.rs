//! Weights of evidence for hypotheses whose likelihood functions are only
//! known to lie in a set.
//!
//! A classical [`EvidenceSpace`] assigns one likelihood function to each
//! hypothesis; the weight of an observation is the normalized likelihood and
//! a prior is updated with Dempster's rule ([`Dist::combine`]). A
//! [`GeneralizedEvidenceSpace`] carries a set Δ of likelihood mappings and
//! yields sets of weights and posteriors, with exact upper and lower bounds.
//! Uncorrelated Δ can be [refined](Refinement) into a classical space over
//! finer hypotheses.
//!
//! All arithmetic is exact ([`Rational`]).

pub mod dist;
pub mod error;
pub mod evidence;
pub mod generalized;
pub mod label;
pub mod model;
pub mod rational;
pub mod refinement;
pub mod sequence;

#[cfg(test)]
mod testing;

pub use dist::{dempster_combine, Dist};
pub use error::{format_tag, Error, Result, Tag};
pub use evidence::{EvidenceSpace, JointDistribution, LikelihoodMapping};
pub use generalized::{Bounds, DistSet, GeneralizedEvidenceSpace, PosteriorSet, Tagged, WeightSet};
pub use label::Label;
pub use model::{Model, ModelError, ModelFile};
pub use rational::{ParseRationalError, Rational};
pub use refinement::{factor_uncorrelated, Correlation, ExtensionPrior, Factorization, Refinement, Witness};
pub use sequence::{CombinationMode, ObservationSequence};
