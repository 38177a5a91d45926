//! Finite Leibniz-Kripke models.
//!
//! A model fixes a parameter set `T = {0, .., t_count-1}` (parameter 0 is the
//! designated "real" index), one finite world `W_t = {0, .., world_sizes[t]-1}`
//! per parameter, a set of individual concepts (one world element per
//! parameter) and named concepts, each a family of extents `A_t ⊆ W_t`.
//!
//! Quantifiers of the object language range over [`Model::individuals`],
//! never over the world elements themselves.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest world a single parameter may carry. Extents are stored as `u64`
/// bitmasks.
pub const MAX_WORLD_SIZE: usize = 64;

/// Name of a concept: a single ASCII uppercase letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ConceptName(char);

impl ConceptName {
    pub fn new(letter: char) -> Option<Self> {
        letter.is_ascii_uppercase().then_some(Self(letter))
    }

    pub fn as_char(self) -> char {
        self.0
    }

    pub(crate) fn as_byte(self) -> u8 {
        self.0 as u8
    }
}

impl fmt::Display for ConceptName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<String> for ConceptName {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        let mut chars = value.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                ConceptName::new(c).ok_or_else(|| format!("concept name `{value}` is not an uppercase ASCII letter"))
            }
            _ => Err(format!("concept name `{value}` must be a single letter")),
        }
    }
}

impl From<ConceptName> for String {
    fn from(name: ConceptName) -> Self {
        name.0.to_string()
    }
}

/// Shorthand used throughout tests and the catalog.
pub(crate) fn concept(letter: char) -> ConceptName {
    ConceptName::new(letter).expect("concept letters are uppercase ASCII")
}

/// Subset of one world `W_t`, as a bitmask over its elements.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extent(u64);

impl Extent {
    pub const EMPTY: Extent = Extent(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, element: u8) -> bool {
        element < 64 && self.0 >> element & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        (0..64u8).filter(move |&e| self.contains(e))
    }

    /// Largest element plus one, or 0 for the empty extent.
    pub(crate) fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl FromIterator<u8> for Extent {
    /// Elements at or above [`MAX_WORLD_SIZE`] are not representable; callers
    /// range-check before collecting.
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Extent(iter.into_iter().fold(0, |acc, e| {
            debug_assert!((e as usize) < MAX_WORLD_SIZE);
            acc | 1u64 << e
        }))
    }
}

/// An individual concept: the world element it occupies at every parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Individual(Vec<u8>);

impl Individual {
    pub fn new(components: Vec<u8>) -> Self {
        Self(components)
    }

    /// `x_t`.
    pub fn at(&self, t: usize) -> u8 {
        self.0[t]
    }

    pub fn components(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Individual {
    fn from(components: Vec<u8>) -> Self {
        Self(components)
    }
}

impl fmt::Display for Individual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One broken model invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoParameters,
    WorldCount { t_count: usize, found: usize },
    EmptyWorld { t: usize },
    WorldTooLarge { t: usize, size: usize },
    IndividualArity { individual: Individual, expected: usize },
    IndividualOutOfRange { individual: Individual, t: usize },
    DuplicateIndividual { individual: Individual },
    ConceptArity { concept: ConceptName, expected: usize, found: usize },
    ExtentOutOfRange { concept: ConceptName, t: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoParameters => write!(f, "t_count must be at least 1"),
            Violation::WorldCount { t_count, found } => {
                write!(f, "expected {t_count} world sizes, found {found}")
            }
            Violation::EmptyWorld { t } => write!(f, "world {t} is empty"),
            Violation::WorldTooLarge { t, size } => {
                write!(f, "world {t} has {size} elements, more than {MAX_WORLD_SIZE}")
            }
            Violation::IndividualArity { individual, expected } => {
                write!(f, "individual {individual} has {} components, expected {expected}", individual.0.len())
            }
            Violation::IndividualOutOfRange { individual, t } => {
                write!(f, "individual {individual} leaves world {t}")
            }
            Violation::DuplicateIndividual { individual } => {
                write!(f, "individual {individual} occurs more than once")
            }
            Violation::ConceptArity { concept, expected, found } => {
                write!(f, "concept {concept} has {found} extents, expected {expected}")
            }
            Violation::ExtentOutOfRange { concept, t } => {
                write!(f, "extent {concept}_{t} is not a subset of world {t}")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidModel(pub Vec<Violation>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KeyError {
    #[error("canonical key truncated at byte {0}")]
    Truncated(usize),
    #[error("canonical key has {0} trailing bytes")]
    Trailing(usize),
    #[error("canonical key names an invalid concept byte {0:#04x}")]
    BadConceptName(u8),
    #[error("canonical key describes an invalid model: {0}")]
    Invalid(#[from] InvalidModel),
}

/// A finite modal model. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    t_count: usize,
    world_sizes: Vec<usize>,
    individuals: Vec<Individual>,
    concepts: BTreeMap<ConceptName, Vec<Extent>>,
}

impl Model {
    /// Builds a model and rejects it if any invariant fails.
    pub fn new(
        world_sizes: Vec<usize>,
        individuals: Vec<Individual>,
        concepts: BTreeMap<ConceptName, Vec<Extent>>,
    ) -> Result<Self, InvalidModel> {
        let model = Self::from_parts(world_sizes.len(), world_sizes, individuals, concepts);
        let violations = model.validate();
        if violations.is_empty() {
            Ok(model)
        } else {
            Err(InvalidModel(violations))
        }
    }

    /// Builds a model without checking it. Individuals are put in lexicographic order.
    pub fn from_parts(
        t_count: usize,
        world_sizes: Vec<usize>,
        mut individuals: Vec<Individual>,
        concepts: BTreeMap<ConceptName, Vec<Extent>>,
    ) -> Self {
        individuals.sort();
        Self { t_count, world_sizes, individuals, concepts }
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn world_sizes(&self) -> &[usize] {
        &self.world_sizes
    }

    pub fn individuals(&self) -> &[Individual] {
        &self.individuals
    }

    pub fn concepts(&self) -> &BTreeMap<ConceptName, Vec<Extent>> {
        &self.concepts
    }

    pub fn extents(&self, name: ConceptName) -> Option<&[Extent]> {
        self.concepts.get(&name).map(Vec::as_slice)
    }

    /// Every violated invariant, in a fixed order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.t_count == 0 {
            out.push(Violation::NoParameters);
        }
        if self.world_sizes.len() != self.t_count {
            out.push(Violation::WorldCount { t_count: self.t_count, found: self.world_sizes.len() });
        }
        for (t, &size) in self.world_sizes.iter().enumerate() {
            if size == 0 {
                out.push(Violation::EmptyWorld { t });
            } else if size > MAX_WORLD_SIZE {
                out.push(Violation::WorldTooLarge { t, size });
            }
        }
        for (i, x) in self.individuals.iter().enumerate() {
            if x.0.len() != self.t_count {
                out.push(Violation::IndividualArity { individual: x.clone(), expected: self.t_count });
            } else if let Some(t) =
                (0..self.t_count).find(|&t| self.world_sizes.get(t).is_none_or(|&size| x.0[t] as usize >= size))
            {
                out.push(Violation::IndividualOutOfRange { individual: x.clone(), t });
            }
            // sorted, so duplicates are adjacent
            if i > 0 && self.individuals[i - 1] == *x {
                out.push(Violation::DuplicateIndividual { individual: x.clone() });
            }
        }
        for (&name, extents) in &self.concepts {
            if extents.len() != self.t_count {
                out.push(Violation::ConceptArity { concept: name, expected: self.t_count, found: extents.len() });
            }
            for (t, extent) in extents.iter().enumerate() {
                if self.world_sizes.get(t).is_none_or(|&size| extent.span() > size) {
                    out.push(Violation::ExtentOutOfRange { concept: name, t });
                }
            }
        }
        out
    }

    /// Returns a copy with concepts renamed: concept `to` of the result carries
    /// the extents of concept `from` of `self`, for each `(to, from)` pair.
    /// Concepts not mentioned are dropped.
    pub fn relabel(&self, map: &[(ConceptName, ConceptName)]) -> Option<Model> {
        let concepts = map
            .iter()
            .map(|&(to, from)| Some((to, self.concepts.get(&from)?.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(Model { concepts, ..self.clone() })
    }

    /// Injective byte encoding; byte-lexicographic order of keys is the
    /// enumeration order used by [`crate::enumerate`].
    ///
    /// Layout, all integers big-endian:
    /// - `t_count: u32`, then `world_sizes[t]: u32` for each parameter;
    /// - concept count `u32`, then one ASCII byte per concept name, ascending;
    /// - the individuals as a bit vector over all `∏ world_sizes` tuples
    ///   (tuple `k` in lexicographic order is bit `k`), written as an unsigned
    ///   integer of `ceil(∏ world_sizes / 8)` bytes;
    /// - for each concept in name order and each parameter `t`, the extent
    ///   bitmask as an unsigned integer of `ceil(world_sizes[t] / 8)` bytes.
    ///
    /// The model must be valid.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend_from_slice(&(self.t_count as u32).to_be_bytes());
        for &size in &self.world_sizes {
            key.extend_from_slice(&(size as u32).to_be_bytes());
        }
        key.extend_from_slice(&(self.concepts.len() as u32).to_be_bytes());
        key.extend(self.concepts.keys().map(|name| name.as_byte()));

        let tuple_count = tuple_count(&self.world_sizes);
        let mut mask = vec![0u8; tuple_count.div_ceil(8)];
        let last = mask.len().saturating_sub(1);
        for x in &self.individuals {
            let k = tuple_index(&self.world_sizes, x);
            mask[last - k / 8] |= 1 << (k % 8);
        }
        key.extend_from_slice(&mask);

        for extents in self.concepts.values() {
            for (t, extent) in extents.iter().enumerate() {
                let width = self.world_sizes[t].div_ceil(8);
                key.extend_from_slice(&extent.bits().to_be_bytes()[8 - width..]);
            }
        }
        key
    }

    /// Inverse of [`Model::canonical_key`].
    pub fn from_canonical_key(key: &[u8]) -> Result<Model, KeyError> {
        let mut reader = KeyReader { key, pos: 0 };
        let t_count = reader.u32()? as usize;
        let world_sizes = (0..t_count).map(|_| reader.u32().map(|s| s as usize)).collect::<Result<Vec<_>, _>>()?;
        if let Some(t) = world_sizes.iter().position(|&s| s == 0 || s > MAX_WORLD_SIZE) {
            return Err(InvalidModel(vec![if world_sizes[t] == 0 {
                Violation::EmptyWorld { t }
            } else {
                Violation::WorldTooLarge { t, size: world_sizes[t] }
            }])
            .into());
        }
        let concept_count = reader.u32()? as usize;
        let names = reader
            .take(concept_count)?
            .iter()
            .map(|&b| ConceptName::new(b as char).ok_or(KeyError::BadConceptName(b)))
            .collect::<Result<Vec<_>, _>>()?;

        let tuples = all_tuples(&world_sizes);
        let mask = reader.take(tuples.len().div_ceil(8))?;
        let last = mask.len().saturating_sub(1);
        let individuals = tuples
            .into_iter()
            .enumerate()
            .filter(|(k, _)| mask[last - k / 8] >> (k % 8) & 1 == 1)
            .map(|(_, x)| x)
            .collect();

        let mut concepts = BTreeMap::new();
        for name in names {
            let mut extents = Vec::with_capacity(t_count);
            for &size in &world_sizes {
                let bytes = reader.take(size.div_ceil(8))?;
                let bits = bytes.iter().fold(0u64, |acc, &b| acc << 8 | b as u64);
                extents.push(Extent::from_bits(bits));
            }
            concepts.insert(name, extents);
        }
        if reader.pos != key.len() {
            return Err(KeyError::Trailing(key.len() - reader.pos));
        }
        Ok(Model::new(world_sizes, individuals, concepts)?)
    }
}

struct KeyReader<'a> {
    key: &'a [u8],
    pos: usize,
}

impl<'a> KeyReader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], KeyError> {
        let end =
            self.pos.checked_add(n).filter(|&e| e <= self.key.len()).ok_or(KeyError::Truncated(self.key.len()))?;
        let slice = &self.key[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32, KeyError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }
}

pub(crate) fn tuple_count(world_sizes: &[usize]) -> usize {
    world_sizes.iter().product()
}

/// Position of `x` among all tuples in lexicographic order (parameter 0 most significant).
pub(crate) fn tuple_index(world_sizes: &[usize], x: &Individual) -> usize {
    world_sizes.iter().zip(x.components()).fold(0, |acc, (&size, &c)| acc * size + c as usize)
}

/// Every individual concept over the given worlds, in lexicographic order.
pub(crate) fn all_tuples(world_sizes: &[usize]) -> Vec<Individual> {
    let mut tuples = vec![Vec::with_capacity(world_sizes.len())];
    for &size in world_sizes {
        tuples = tuples
            .into_iter()
            .flat_map(|prefix| {
                (0..size as u8).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    tuples.into_iter().map(Individual).collect()
}
