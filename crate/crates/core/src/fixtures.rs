//! The five hand-built countermodels for the mixed necessity syllogisms, with
//! label maps naming world elements and individuals.
//!
//! Every fixture uses two parameters. `x` is the individual `(0,0)`; where
//! there is a second individual `y = (1,0)` it shares its position at the
//! second parameter with `x`, so `M(x=y)` holds while `x ≠ y`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{concept, Extent, Individual, Model};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureName {
    BarbaraXn,
    CelarentXn,
    BarocoNx,
    BarocoXn,
    BocardoNx,
}

impl FixtureName {
    pub const ALL: [FixtureName; 5] = [
        FixtureName::BarbaraXn,
        FixtureName::CelarentXn,
        FixtureName::BarocoNx,
        FixtureName::BarocoXn,
        FixtureName::BocardoNx,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::BarbaraXn => "barbara_xn",
            FixtureName::CelarentXn => "celarent_xn",
            FixtureName::BarocoNx => "baroco_nx",
            FixtureName::BarocoXn => "baroco_xn",
            FixtureName::BocardoNx => "bocardo_nx",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown fixture `{0}` (expected one of barbara_xn, celarent_xn, baroco_nx, baroco_xn, bocardo_nx)")]
pub struct UnknownFixture(pub String);

impl FromStr for FixtureName {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| UnknownFixture(s.to_string()))
    }
}

/// Presentation names for the anonymous integers of a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelMap {
    /// `worlds[t][e]` names world element `e` of `W_t`.
    pub worlds: Vec<Vec<&'static str>>,
    pub individuals: Vec<(&'static str, Vec<u8>)>,
}

impl fmt::Display for LabelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, names) in self.worlds.iter().enumerate() {
            let pairs: Vec<_> = names.iter().enumerate().map(|(e, n)| format!("{e}↦{n}")).collect();
            write!(f, "W{t}: {}; ", pairs.join(" "))?;
        }
        let xs: Vec<_> = self.individuals.iter().map(|(n, c)| format!("{n}={}", Individual::new(c.clone()))).collect();
        write!(f, "individuals: {}", xs.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: FixtureName,
    pub model: Model,
    pub labels: LabelMap,
}

fn ext(elements: &[u8]) -> Extent {
    elements.iter().copied().collect()
}

fn build(world_sizes: Vec<usize>, individuals: &[&[u8]], abc: [[&[u8]; 2]; 3]) -> Model {
    let concepts = ['A', 'B', 'C']
        .into_iter()
        .zip(abc)
        .map(|(c, [e0, e1])| (concept(c), vec![ext(e0), ext(e1)]))
        .collect::<BTreeMap<_, _>>();
    let individuals = individuals.iter().map(|c| Individual::new(c.to_vec())).collect();
    Model::new(world_sizes, individuals, concepts).expect("fixtures are valid models")
}

pub fn fixture(name: FixtureName) -> Fixture {
    let single = LabelMap { worlds: vec![vec!["x₀"], vec!["x₁"]], individuals: vec![("x", vec![0, 0])] };
    let pair = LabelMap {
        worlds: vec![vec!["x₀", "y₀"], vec!["x₁"]],
        individuals: vec![("x", vec![0, 0]), ("y", vec![1, 0])],
    };
    let xy: &[&[u8]] = &[&[0, 0], &[1, 0]];
    let (model, labels) = match name {
        // A₀=B₀=C₀={x₀}; A₁=C₁=∅, B₁={x₁}
        FixtureName::BarbaraXn => (build(vec![1, 1], &[&[0, 0]], [[&[0], &[]], [&[0], &[0]], [&[0], &[]]]), single),
        // A₀={y₀}, B₀=C₀={x₀}; A₁=B₁=C₁={x₁}
        FixtureName::CelarentXn => (build(vec![2, 1], xy, [[&[1], &[0]], [&[0], &[0]], [&[0], &[0]]]), pair),
        // A₀=B₀={x₀}, C₀={y₀}; A₁=B₁=C₁={x₁}
        FixtureName::BarocoNx => (build(vec![2, 1], xy, [[&[0], &[0]], [&[0], &[0]], [&[1], &[0]]]), pair),
        // A₀=B₀={x₀}, C₀={y₀}; A₁=∅, B₁=C₁={x₁}
        FixtureName::BarocoXn => (build(vec![2, 1], xy, [[&[0], &[]], [&[0], &[0]], [&[1], &[0]]]), pair),
        // A₀={y₀}, B₀=C₀={x₀}; C₁={x₁}, A₁=B₁=∅
        FixtureName::BocardoNx => (build(vec![2, 1], xy, [[&[1], &[]], [&[0], &[]], [&[0], &[0]]]), pair),
    };
    Fixture { name, model, labels }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in FixtureName::ALL {
            assert_eq!(n.as_str().parse::<FixtureName>().unwrap(), n);
        }
        assert!("barbara".parse::<FixtureName>().is_err());
    }

    #[test]
    fn barbara_xn_data() {
        let m = fixture(FixtureName::BarbaraXn).model;
        assert_eq!(m.world_sizes(), &[1, 1]);
        assert_eq!(m.individuals().len(), 1);
        assert_eq!(m.extents(concept('A')).unwrap(), &[ext(&[0]), ext(&[])]);
        assert_eq!(m.extents(concept('B')).unwrap(), &[ext(&[0]), ext(&[0])]);
        assert_eq!(m.extents(concept('C')).unwrap(), &[ext(&[0]), ext(&[])]);
    }

    #[test]
    fn bocardo_nx_data() {
        let m = fixture(FixtureName::BocardoNx).model;
        assert_eq!(m.extents(concept('A')).unwrap(), &[ext(&[1]), ext(&[])]);
        assert_eq!(m.extents(concept('B')).unwrap(), &[ext(&[0]), ext(&[])]);
        assert_eq!(m.extents(concept('C')).unwrap(), &[ext(&[0]), ext(&[0])]);
    }

    #[test]
    fn all_fixtures_validate_and_baroco_pair_differs() {
        for n in FixtureName::ALL {
            assert!(fixture(n).model.validate().is_empty(), "{n}");
        }
        let nx = fixture(FixtureName::BarocoNx).model.canonical_key();
        let xn = fixture(FixtureName::BarocoXn).model.canonical_key();
        assert_ne!(nx, xn);
    }

    #[test]
    fn label_map_display() {
        let l = fixture(FixtureName::CelarentXn).labels.to_string();
        assert_eq!(l, "W0: 0↦x₀ 1↦y₀; W1: 0↦x₁; individuals: x=(0,0) y=(1,0)");
    }
}
