//! Finite Leibniz-Kripke models for the necessity and contingency syllogistic.
//!
//! A [`Model`] has parameters `t = 0..t_count` with finite worlds `W_t`;
//! individuals are tuples `(x_0, .., x_{n-1})` with `x_t ∈ W_t` and concepts
//! assign an extent `A_t ⊆ W_t` to every parameter. Parameter 0 is the real
//! one. [`holds`] evaluates categorical statements, [`enumerate`] walks all
//! models within bounds and [`search`] looks for countermodels.

pub mod catalog;
pub mod codec;
pub mod dsl;
pub mod enumerate;
pub mod fixtures;
pub mod model;
pub mod properties;
pub mod search;
pub mod semantics;
pub mod statement;

pub use catalog::{
    instantiate, verdict_table, CatalogEntry, Inference, ModalLetter, ModalPattern, Mood, ReferenceVerdict,
};
pub use codec::{decode_model, encode_model, CodecError};
pub use dsl::{parse_mood, parse_statement, ParseError, SourceSpan};
pub use enumerate::{enumerate, EnumerationBounds, EnumerationError, IndividualPolicy, ModelSpace};
pub use fixtures::{fixture, Fixture, FixtureName};
pub use model::{ConceptName, Extent, Individual, InvalidModel, Model};
pub use semantics::{holds, DiagramExpr, Polarity, SemanticsError};
pub use statement::{Modality, Relation, Statement, Term};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
