//! Categorical statements: relation letter, modality, subject and predicate.
//!
//! The `Display` impls produce the surface syntax accepted by
//! [`crate::dsl::parse_statement`], e.g. `N(Ba~A)`, `K(CeA)`, `BoA`.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::model::ConceptName;

/// A concept or its per-parameter complement `W_t \ A_t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub base: ConceptName,
    pub complemented: bool,
}

impl Term {
    pub fn plain(base: ConceptName) -> Self {
        Self { base, complemented: false }
    }

    pub fn complement(base: ConceptName) -> Self {
        Self { base, complemented: true }
    }

    pub fn negated(self) -> Self {
        Self { complemented: !self.complemented, ..self }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complemented {
            write!(f, "~")?;
        }
        write!(f, "{}", self.base)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// universal affirmative
    A,
    /// universal negative
    E,
    /// particular affirmative
    I,
    /// particular negative
    O,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::A, Relation::E, Relation::I, Relation::O];

    pub fn letter(self) -> char {
        match self {
            Relation::A => 'a',
            Relation::E => 'e',
            Relation::I => 'i',
            Relation::O => 'o',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'a' => Relation::A,
            'e' => Relation::E,
            'i' => Relation::I,
            'o' => Relation::O,
            _ => return None,
        })
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Relation::E | Relation::O)
    }
}

/// How a statement is modalized.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    /// Plain statement, written without a modal prefix.
    Assertoric,
    /// `N(..)`.
    Necessary,
    /// `K(..)`: `∀x(Sx ⟹ KPx)` with the two-sided contingency
    /// `KPx :⟺ ∃y(Py ∧ M(x=y)) ∧ ∃z(M(¬Pz) ∧ M(x=z))`.
    Contingent,
    /// `Kamp(..)`: `∀x(KSx ⟹ KPx)`, the subject read as "whatever can be S".
    AmpliatedContingent,
    /// `Ma2(SaP)`: `∀x(Sx ⟹ ∃y(Py ∧ M(x=y)))`.
    PossiblyIs,
    /// `Mo2(SaP)`: `∀x(Sx ⟹ ∃y(¬Py ∧ M(x=y)))`.
    PossiblyIsNot,
    /// `Mo3(SaP)`: `∀x(Sx ⟹ ∃y(M(¬Py) ∧ M(x=y)))`.
    PossiblyIsNotWeak,
}

impl Modality {
    pub const ALL: [Modality; 7] = [
        Modality::Assertoric,
        Modality::Necessary,
        Modality::Contingent,
        Modality::AmpliatedContingent,
        Modality::PossiblyIs,
        Modality::PossiblyIsNot,
        Modality::PossiblyIsNotWeak,
    ];

    /// Surface prefix; empty for assertoric statements.
    pub fn prefix(self) -> &'static str {
        match self {
            Modality::Assertoric => "",
            Modality::Necessary => "N",
            Modality::Contingent => "K",
            Modality::AmpliatedContingent => "Kamp",
            Modality::PossiblyIs => "Ma2",
            Modality::PossiblyIsNot => "Mo2",
            Modality::PossiblyIsNotWeak => "Mo3",
        }
    }

    pub fn supports(self, relation: Relation) -> bool {
        match self {
            Modality::Assertoric | Modality::Necessary => true,
            Modality::Contingent | Modality::AmpliatedContingent => matches!(relation, Relation::A | Relation::E),
            Modality::PossiblyIs | Modality::PossiblyIsNot | Modality::PossiblyIsNotWeak => relation == Relation::A,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("modality {} cannot be combined with relation `{}`", .modality.prefix(), .relation.letter())]
pub struct UnsupportedForm {
    pub modality: Modality,
    pub relation: Relation,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Statement {
    relation: Relation,
    modality: Modality,
    subject: Term,
    predicate: Term,
}

impl Statement {
    pub fn new(
        modality: Modality,
        subject: Term,
        relation: Relation,
        predicate: Term,
    ) -> Result<Self, UnsupportedForm> {
        if modality.supports(relation) {
            Ok(Self { relation, modality, subject, predicate })
        } else {
            Err(UnsupportedForm { modality, relation })
        }
    }

    pub fn assertoric(subject: Term, relation: Relation, predicate: Term) -> Self {
        Self { relation, modality: Modality::Assertoric, subject, predicate }
    }

    pub fn necessary(subject: Term, relation: Relation, predicate: Term) -> Self {
        Self { relation, modality: Modality::Necessary, subject, predicate }
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn modality(&self) -> Modality {
        self.modality
    }

    pub fn subject(&self) -> Term {
        self.subject
    }

    pub fn predicate(&self) -> Term {
        self.predicate
    }

    /// Same statement with concept names rewritten by `f`.
    pub fn map_concepts(&self, f: impl Fn(ConceptName) -> ConceptName) -> Self {
        let rename = |t: Term| Term { base: f(t.base), ..t };
        Self { subject: rename(self.subject), predicate: rename(self.predicate), ..*self }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = format!("{}{}{}", self.subject, self.relation.letter(), self.predicate);
        match self.modality {
            Modality::Assertoric => f.write_str(&body),
            m => write!(f, "{}({body})", m.prefix()),
        }
    }
}

impl Serialize for Statement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::concept;

    #[test]
    fn printing() {
        let a = Term::plain(concept('A'));
        let b = Term::plain(concept('B'));
        assert_eq!(Statement::necessary(b, Relation::E, a).to_string(), "N(BeA)");
        assert_eq!(Statement::assertoric(b, Relation::A, a).to_string(), "BaA");
        assert_eq!(Statement::necessary(b, Relation::A, a.negated()).to_string(), "N(Ba~A)");
        let k = Statement::new(Modality::AmpliatedContingent, b, Relation::E, a).unwrap();
        assert_eq!(k.to_string(), "Kamp(BeA)");
    }

    #[test]
    fn unsupported_combinations() {
        let a = Term::plain(concept('A'));
        assert!(Statement::new(Modality::Contingent, a, Relation::I, a).is_err());
        assert!(Statement::new(Modality::AmpliatedContingent, a, Relation::O, a).is_err());
        for m in [Modality::PossiblyIs, Modality::PossiblyIsNot, Modality::PossiblyIsNotWeak] {
            assert!(Statement::new(m, a, Relation::A, a).is_ok());
            assert!(Statement::new(m, a, Relation::E, a).is_err());
        }
        for r in Relation::ALL {
            assert!(Statement::new(Modality::Necessary, a, r, a).is_ok());
        }
    }
}
