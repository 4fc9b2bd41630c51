//! Finite probability distributions and Dempster's rule of combination.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::rational::Rational;

/// A probability distribution over a finite, lexicographically ordered set
/// of labels. Masses are nonnegative and sum to exactly one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Dist {
    masses: BTreeMap<Label, Rational>,
}

impl Dist {
    /// Builds a distribution from parallel label and mass lists.
    pub fn new<L, M>(labels: L, masses: M) -> Result<Dist>
    where
        L: IntoIterator,
        L::Item: Into<Label>,
        M: IntoIterator<Item = Rational>,
    {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let masses: Vec<Rational> = masses.into_iter().collect();
        if labels.len() != masses.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                masses: masses.len(),
            });
        }
        Dist::from_pairs(labels.into_iter().zip(masses))
    }

    pub fn from_pairs<I, L>(pairs: I) -> Result<Dist>
    where
        I: IntoIterator<Item = (L, Rational)>,
        L: Into<Label>,
    {
        let mut masses = BTreeMap::new();
        for (label, mass) in pairs {
            let label = label.into();
            if mass.is_negative() {
                return Err(Error::NegativeMass { label, mass });
            }
            if masses.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            masses.insert(label, mass);
        }
        let sum: Rational = masses.values().sum();
        if !sum.is_one() {
            return Err(Error::NonNormalized { sum });
        }
        Ok(Dist { masses })
    }

    pub fn uniform<I>(labels: I) -> Result<Dist>
    where
        I: IntoIterator,
        I::Item: Into<Label>,
    {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let each = Rational::new(1, labels.len().max(1) as i64);
        Dist::from_pairs(labels.into_iter().map(|l| (l, each.clone())))
    }

    /// Rescales nonnegative weights to sum to one. Returns `None` when every
    /// weight is zero.
    pub(crate) fn normalize(weights: BTreeMap<Label, Rational>) -> Option<Dist> {
        let total: Rational = weights.values().sum();
        if total.is_zero() {
            return None;
        }
        let masses = weights
            .into_iter()
            .map(|(label, w)| (label, w / &total))
            .collect();
        Some(Dist { masses })
    }

    pub fn get(&self, label: &str) -> Option<&Rational> {
        self.masses.get(label)
    }

    /// Mass of `label`; panics if the label is outside the support.
    pub fn mass(&self, label: &str) -> &Rational {
        self.masses
            .get(label)
            .unwrap_or_else(|| panic!("label {label:?} not in support"))
    }

    /// Total mass of a set of labels. Labels outside the support count as zero.
    pub fn mass_of<I>(&self, labels: I) -> Rational
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        labels
            .into_iter()
            .filter_map(|l| self.masses.get(l.as_ref()))
            .sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.masses.keys()
    }

    pub fn masses(&self) -> impl Iterator<Item = &Rational> {
        self.masses.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Rational)> {
        self.masses.iter()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn same_support(&self, other: &Dist) -> bool {
        self.masses.len() == other.masses.len()
            && self.masses.keys().zip(other.masses.keys()).all(|(a, b)| a == b)
    }

    pub fn as_map(&self) -> &BTreeMap<Label, Rational> {
        &self.masses
    }

    /// Dempster's rule restricted to singletons: pointwise product,
    /// renormalized.
    pub fn combine(&self, other: &Dist) -> Result<Dist> {
        dempster_combine(self, other)
    }
}

pub fn dempster_combine(d1: &Dist, d2: &Dist) -> Result<Dist> {
    if !d1.same_support(d2) {
        return Err(Error::SupportMismatch);
    }
    let products = d1
        .masses
        .iter()
        .zip(d2.masses.values())
        .map(|((label, a), b)| (label.clone(), a * b))
        .collect();
    Dist::normalize(products).ok_or(Error::TotalConflict)
}
