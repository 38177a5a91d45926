//! Exhaustive enumeration of all models within fixed bounds.
//!
//! The models of a [`ModelSpace`] are numbered `0..len()` in mixed radix.
//! The most significant digit is the individual set, followed by one digit
//! per `(concept, parameter)` extent in name-then-parameter order. Each digit
//! is the bitmask of the corresponding set, so index order coincides with
//! byte order of [`Model::canonical_key`]. Contiguous index ranges are
//! prefix-closed blocks of the enumeration and can be searched independently.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{all_tuples, ConceptName, Extent, Individual, Model, MAX_WORLD_SIZE};

/// Default cap on the number of models a single enumeration may produce.
pub const DEFAULT_MAX_MODELS: u64 = 100_000_000;

/// Which individual concepts populate an enumerated model.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndividualPolicy {
    /// Exactly the full set of functions `T → W`.
    AllFunctions,
    /// Every subset of the full set of functions, including the empty one.
    #[default]
    AllSubsetsOfFunctions,
}

impl fmt::Display for IndividualPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndividualPolicy::AllFunctions => "functions",
            IndividualPolicy::AllSubsetsOfFunctions => "subsets",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub t_count: usize,
    pub world_sizes: Vec<usize>,
    pub concept_names: Vec<ConceptName>,
    pub individual_policy: IndividualPolicy,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("t_count is {t_count} but {found} world sizes were given")]
    WorldCount { t_count: usize, found: usize },
    #[error("at least one parameter is required")]
    NoParameters,
    #[error("world sizes must lie in 1..={MAX_WORLD_SIZE}, got {0}")]
    WorldSize(usize),
    #[error("concept {0} is listed twice")]
    DuplicateConcept(ConceptName),
    #[error("bounds describe {count} models, above the limit of {limit}")]
    TooManyModels { count: String, limit: u64 },
}

impl EnumerationBounds {
    pub fn new(world_sizes: Vec<usize>, concept_names: Vec<ConceptName>, individual_policy: IndividualPolicy) -> Self {
        Self { t_count: world_sizes.len(), world_sizes, concept_names, individual_policy }
    }

    /// Concepts A, B, C with every subset of individuals.
    pub fn abc(world_sizes: &[usize]) -> Self {
        Self::new(
            world_sizes.to_vec(),
            ['A', 'B', 'C'].map(crate::model::concept).to_vec(),
            IndividualPolicy::AllSubsetsOfFunctions,
        )
    }

    pub fn with_policy(mut self, policy: IndividualPolicy) -> Self {
        self.individual_policy = policy;
        self
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.t_count == 0 {
            return Err(EnumerationError::NoParameters);
        }
        if self.world_sizes.len() != self.t_count {
            return Err(EnumerationError::WorldCount { t_count: self.t_count, found: self.world_sizes.len() });
        }
        if let Some(&bad) = self.world_sizes.iter().find(|&&s| s == 0 || s > MAX_WORLD_SIZE) {
            return Err(EnumerationError::WorldSize(bad));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(&dup) = self.concept_names.iter().find(|&&n| !seen.insert(n)) {
            return Err(EnumerationError::DuplicateConcept(dup));
        }
        Ok(())
    }

    /// Number of models, or `None` if it does not fit in 128 bits.
    pub fn model_count(&self) -> Option<u128> {
        let tuples: u32 = self.world_sizes.iter().try_fold(1u32, |acc, &s| acc.checked_mul(u32::try_from(s).ok()?))?;
        let mut count: u128 = match self.individual_policy {
            IndividualPolicy::AllFunctions => 1,
            IndividualPolicy::AllSubsetsOfFunctions => 1u128.checked_shl(tuples).filter(|&c| c != 0)?,
        };
        let bits_per_concept: u32 = self.world_sizes.iter().map(|&s| s as u32).sum();
        for _ in &self.concept_names {
            count = count.checked_mul(1u128.checked_shl(bits_per_concept).filter(|&c| c != 0)?)?;
        }
        Some(count)
    }
}

impl fmt::Display for EnumerationBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes = self.world_sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let names: String = self.concept_names.iter().map(|n| n.as_char()).collect();
        write!(f, "[{sizes}] {} over {names}", self.individual_policy)
    }
}

/// The indexed set of all models within some bounds.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    bounds: EnumerationBounds,
    tuples: Vec<Individual>,
    len: u64,
}

impl ModelSpace {
    pub fn new(bounds: &EnumerationBounds) -> Result<Self, EnumerationError> {
        Self::with_limit(bounds, DEFAULT_MAX_MODELS)
    }

    pub fn with_limit(bounds: &EnumerationBounds, limit: u64) -> Result<Self, EnumerationError> {
        bounds.validate()?;
        let count = bounds.model_count();
        let len = match count {
            Some(c) if c <= limit as u128 => c as u64,
            _ => {
                return Err(EnumerationError::TooManyModels {
                    count: count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                    limit,
                })
            }
        };
        let mut bounds = bounds.clone();
        bounds.concept_names.sort();
        Ok(Self { tuples: all_tuples(&bounds.world_sizes), bounds, len })
    }

    pub fn bounds(&self) -> &EnumerationBounds {
        &self.bounds
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The model at position `index`. Panics if `index >= len()`.
    pub fn model_at(&self, index: u64) -> Model {
        assert!(index < self.len, "model index {index} out of range");
        let mut rest = index;
        let sizes = &self.bounds.world_sizes;
        let mut concepts = BTreeMap::new();
        // least significant digits first: last concept, last parameter
        for &name in self.bounds.concept_names.iter().rev() {
            let mut extents = vec![Extent::EMPTY; sizes.len()];
            for (t, &size) in sizes.iter().enumerate().rev() {
                let radix = 1u64 << size;
                extents[t] = Extent::from_bits(rest % radix);
                rest /= radix;
            }
            concepts.insert(name, extents);
        }
        let individuals = match self.bounds.individual_policy {
            IndividualPolicy::AllFunctions => self.tuples.clone(),
            IndividualPolicy::AllSubsetsOfFunctions => {
                self.tuples.iter().enumerate().filter(|&(k, _)| rest >> k & 1 == 1).map(|(_, x)| x.clone()).collect()
            }
        };
        Model::from_parts(sizes.len(), sizes.clone(), individuals, concepts)
    }

    /// Position of `model` in this space, if it belongs to it.
    pub fn index_of(&self, model: &Model) -> Option<u64> {
        if model.world_sizes() != self.bounds.world_sizes.as_slice()
            || !model.concepts().keys().eq(self.bounds.concept_names.iter())
        {
            return None;
        }
        let mut index: u64 = match self.bounds.individual_policy {
            IndividualPolicy::AllFunctions => {
                if model.individuals() != self.tuples.as_slice() {
                    return None;
                }
                0
            }
            IndividualPolicy::AllSubsetsOfFunctions => {
                let mut mask = 0u64;
                for x in model.individuals() {
                    let k = self.tuples.binary_search(x).ok()?;
                    mask |= 1 << k;
                }
                mask
            }
        };
        for name in &self.bounds.concept_names {
            for (t, extent) in model.extents(*name)?.iter().enumerate() {
                index = (index << self.bounds.world_sizes[t]) | extent.bits();
            }
        }
        Some(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = Model> + '_ {
        self.range(0..self.len)
    }

    pub fn range(&self, indices: Range<u64>) -> impl Iterator<Item = Model> + '_ {
        indices.map(move |i| self.model_at(i))
    }

    /// Splits `0..len()` into at most `parts` contiguous, ordered blocks.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let step = self.len.div_ceil(parts).max(1);
        (0..self.len).step_by(step as usize).map(|start| start..(start + step).min(self.len)).collect()
    }
}

/// Owning iterator over a [`ModelSpace`].
pub struct ModelStream {
    space: ModelSpace,
    next: u64,
}

impl Iterator for ModelStream {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        (self.next < self.space.len).then(|| {
            self.next += 1;
            self.space.model_at(self.next - 1)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.space.len - self.next) as usize;
        (rest, Some(rest))
    }
}

/// All models within `bounds`, in canonical order, under [`DEFAULT_MAX_MODELS`].
pub fn enumerate(bounds: &EnumerationBounds) -> Result<ModelStream, EnumerationError> {
    Ok(ModelStream { space: ModelSpace::new(bounds)?, next: 0 })
}
