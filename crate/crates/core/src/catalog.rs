//! The fourteen moods, their modal patterns and the reference verdict table.
//!
//! Term layout per figure (major premise, minor premise, conclusion):
//!
//! | figure | major | minor | conclusion |
//! |--------|-------|-------|------------|
//! | 1      | `B?A` | `C?B` | `C?A`      |
//! | 2      | `B?A` | `C?A` | `C?B`      |
//! | 3      | `C?A` | `C?B` | `B?A`      |

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fixtures::FixtureName;
use crate::model::{concept, ConceptName};
use crate::semantics::DiagramExpr;
use crate::statement::{Modality, Relation, Statement, Term, UnsupportedForm};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mood {
    Barbara,
    Celarent,
    Darii,
    Ferio,
    Cesare,
    Camestres,
    Festino,
    Baroco,
    Darapti,
    Felapton,
    Datisi,
    Disamis,
    Ferison,
    Bocardo,
}

impl Mood {
    pub const ALL: [Mood; 14] = [
        Mood::Barbara,
        Mood::Celarent,
        Mood::Darii,
        Mood::Ferio,
        Mood::Cesare,
        Mood::Camestres,
        Mood::Festino,
        Mood::Baroco,
        Mood::Darapti,
        Mood::Felapton,
        Mood::Datisi,
        Mood::Disamis,
        Mood::Ferison,
        Mood::Bocardo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mood::Barbara => "Barbara",
            Mood::Celarent => "Celarent",
            Mood::Darii => "Darii",
            Mood::Ferio => "Ferio",
            Mood::Cesare => "Cesare",
            Mood::Camestres => "Camestres",
            Mood::Festino => "Festino",
            Mood::Baroco => "Baroco",
            Mood::Darapti => "Darapti",
            Mood::Felapton => "Felapton",
            Mood::Datisi => "Datisi",
            Mood::Disamis => "Disamis",
            Mood::Ferison => "Ferison",
            Mood::Bocardo => "Bocardo",
        }
    }

    /// Case-insensitive lookup.
    pub fn from_name(name: &str) -> Option<Mood> {
        Mood::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(name))
    }

    pub fn figure(self) -> u8 {
        match self {
            Mood::Barbara | Mood::Celarent | Mood::Darii | Mood::Ferio => 1,
            Mood::Cesare | Mood::Camestres | Mood::Festino | Mood::Baroco => 2,
            _ => 3,
        }
    }

    /// Relation letters of major premise, minor premise and conclusion; the
    /// vowels of the mood's name.
    pub fn relations(self) -> [Relation; 3] {
        let vowels: Vec<Relation> = self.name().chars().filter_map(Relation::from_letter).collect();
        [vowels[0], vowels[1], vowels[2]]
    }

    /// (subject, predicate) letters of major premise, minor premise, conclusion.
    pub fn layout(self) -> [(char, char); 3] {
        match self.figure() {
            1 => [('B', 'A'), ('C', 'B'), ('C', 'A')],
            2 => [('B', 'A'), ('C', 'A'), ('C', 'B')],
            _ => [('C', 'A'), ('C', 'B'), ('B', 'A')],
        }
    }

    /// Concepts the mood assumes non-empty, in every modal pattern.
    pub fn side_conditions(self) -> Vec<SideCondition> {
        match self {
            Mood::Darapti | Mood::Felapton => vec![SideCondition::NonEmpty(concept('C'))],
            _ => vec![],
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One slot of a modal pattern.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalLetter {
    /// assertoric
    X,
    /// necessary
    N,
    /// contingent
    K,
    /// one-sided possibility, conclusions only
    M,
}

impl ModalLetter {
    pub fn as_char(self) -> char {
        match self {
            ModalLetter::X => 'X',
            ModalLetter::N => 'N',
            ModalLetter::K => 'K',
            ModalLetter::M => 'M',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'X' => ModalLetter::X,
            'N' => ModalLetter::N,
            'K' => ModalLetter::K,
            'M' => ModalLetter::M,
            _ => return None,
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConclusionSlot {
    /// The conclusion is claimed with this modality.
    Claim(ModalLetter),
    /// The strongest conclusion under discussion is to be refuted; see
    /// [`ModalPattern::refutation_target`].
    Refute,
}

/// Modalities of major premise, minor premise and conclusion, e.g. `NXN`,
/// `XN?`, `KXK`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalPattern {
    pub major: ModalLetter,
    pub minor: ModalLetter,
    pub conclusion: ConclusionSlot,
}

impl ModalPattern {
    pub fn new(major: ModalLetter, minor: ModalLetter, conclusion: ConclusionSlot) -> Result<Self, CatalogError> {
        let pattern = Self { major, minor, conclusion };
        if major == ModalLetter::M || minor == ModalLetter::M {
            return Err(CatalogError::MalformedPattern(pattern.to_string()));
        }
        Ok(pattern)
    }

    pub fn claim(major: ModalLetter, minor: ModalLetter, conclusion: ModalLetter) -> Self {
        Self { major, minor, conclusion: ConclusionSlot::Claim(conclusion) }
    }

    pub fn refute(major: ModalLetter, minor: ModalLetter) -> Self {
        Self { major, minor, conclusion: ConclusionSlot::Refute }
    }

    fn has(self, letter: ModalLetter) -> bool {
        self.major == letter || self.minor == letter
    }

    /// Pure contingency patterns (`KKK`) use the ampliated reading throughout.
    pub fn is_pure_contingency(self) -> bool {
        self.major == ModalLetter::K && self.minor == ModalLetter::K
    }

    /// Conclusion letter claimed by a `?` pattern:
    /// - only `N`/`X` premises: the necessary conclusion;
    /// - `K` with `N`: the plain assertoric conclusion;
    /// - `K` with `X`: the weakest one-sided possibility;
    /// - `K` with `K`: the contingent conclusion.
    pub fn refutation_target(self) -> RefutationTarget {
        if self.is_pure_contingency() {
            RefutationTarget::Letter(ModalLetter::K)
        } else if self.has(ModalLetter::K) && self.has(ModalLetter::N) {
            RefutationTarget::Letter(ModalLetter::X)
        } else if self.has(ModalLetter::K) {
            RefutationTarget::WeakPossibility
        } else {
            RefutationTarget::Letter(ModalLetter::N)
        }
    }

    pub fn contingency_reading(self) -> Option<ContingencyReading> {
        if self.is_pure_contingency() {
            Some(ContingencyReading::Ampliated)
        } else if self.has(ModalLetter::K) || self.conclusion == ConclusionSlot::Claim(ModalLetter::K) {
            Some(ContingencyReading::TwoSided)
        } else {
            None
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RefutationTarget {
    Letter(ModalLetter),
    /// `Mo3` for negative moods, `Ma2` for affirmative ones.
    WeakPossibility,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ContingencyReading {
    /// `∀x(KSx ⟹ KPx)`
    Ampliated,
    /// `∀x(Sx ⟹ KPx)`
    TwoSided,
}

impl fmt::Display for ModalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.conclusion {
            ConclusionSlot::Claim(l) => l.as_char(),
            ConclusionSlot::Refute => '?',
        };
        write!(f, "{}{}{c}", self.major.as_char(), self.minor.as_char())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SideCondition {
    /// Some individual falls under the concept at the real parameter.
    NonEmpty(ConceptName),
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideCondition::NonEmpty(c) => write!(f, "{c}≠∅"),
        }
    }
}

impl Serialize for SideCondition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inference {
    pub id: String,
    pub premises: Vec<Statement>,
    pub side_conditions: Vec<SideCondition>,
    pub conclusion: Statement,
}

impl fmt::Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<_> = self.premises.iter().map(ToString::to_string).collect();
        write!(f, "{}: {}", self.id, premises.join(", "))?;
        for c in &self.side_conditions {
            write!(f, ", {c}")?;
        }
        write!(f, " ⊢ {}", self.conclusion)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown mood `{0}`")]
    UnknownMood(String),
    #[error("malformed modal pattern `{0}`")]
    MalformedPattern(String),
    #[error("{mood} {pattern}: {source}")]
    Unsupported { mood: Mood, pattern: ModalPattern, source: UnsupportedForm },
}

/// Premises, side conditions and conclusion of `mood` under `pattern`.
pub fn instantiate(mood: Mood, pattern: ModalPattern) -> Result<Inference, CatalogError> {
    let ampliated = pattern.is_pure_contingency();
    let [r1, r2, r3] = mood.relations();
    let [l1, l2, l3] = mood.layout();
    let plain = |c| Term::plain(concept(c));
    let unsupported = |source| CatalogError::Unsupported { mood, pattern, source };

    let premise = |letter: ModalLetter, r: Relation, (s, p): (char, char)| {
        let modality = match letter {
            ModalLetter::X => Modality::Assertoric,
            ModalLetter::N => Modality::Necessary,
            ModalLetter::K if ampliated => Modality::AmpliatedContingent,
            ModalLetter::K => Modality::Contingent,
            ModalLetter::M => return Err(CatalogError::MalformedPattern(pattern.to_string())),
        };
        Statement::new(modality, plain(s), r, plain(p)).map_err(unsupported)
    };

    let (s, p) = (plain(l3.0), plain(l3.1));
    let possibility = |weak: bool| {
        let modality = match (r3.is_negative(), weak) {
            (false, _) => Modality::PossiblyIs,
            (true, false) => Modality::PossiblyIsNot,
            (true, true) => Modality::PossiblyIsNotWeak,
        };
        if matches!(r3, Relation::A | Relation::E) {
            Statement::new(modality, s, Relation::A, p).map_err(unsupported)
        } else {
            Err(unsupported(UnsupportedForm { modality, relation: r3 }))
        }
    };
    let conclusion = match pattern.conclusion {
        ConclusionSlot::Claim(ModalLetter::M) => possibility(false)?,
        ConclusionSlot::Claim(letter) => premise(letter, r3, l3)?,
        ConclusionSlot::Refute => match pattern.refutation_target() {
            RefutationTarget::Letter(letter) => premise(letter, r3, l3)?,
            RefutationTarget::WeakPossibility => possibility(true)?,
        },
    };

    Ok(Inference {
        id: format!("{mood} {pattern}"),
        premises: vec![premise(pattern.major, r1, l1)?, premise(pattern.minor, r2, l2)?],
        side_conditions: mood.side_conditions(),
        conclusion,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReferenceVerdict {
    /// The necessity (or stated modal) conclusion follows.
    Valid,
    /// No such conclusion follows; a countermodel exists.
    Invalid,
    /// Neither drawn nor rejected in the source text.
    Unasserted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    /// both premises necessary
    Nnn,
    /// one premise necessary, the other assertoric
    MixedNx,
    Contingency,
}

/// A fixture evaluated with renamed concepts: concept `to` of the instance
/// reads the extents of fixture concept `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureUse {
    pub name: FixtureName,
    pub letter_map: Vec<(ConceptName, ConceptName)>,
}

impl FixtureUse {
    fn identity(name: FixtureName) -> Self {
        Self::permuted(name, "ABC")
    }

    /// `sources[i]` is the fixture concept read as instance concept `"ABC"[i]`.
    fn permuted(name: FixtureName, sources: &str) -> Self {
        let letter_map = "ABC".chars().zip(sources.chars()).map(|(to, from)| (concept(to), concept(from))).collect();
        Self { name, letter_map }
    }

    pub fn is_identity(&self) -> bool {
        self.letter_map.iter().all(|(to, from)| to == from)
    }
}

impl fmt::Display for FixtureUse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.is_identity() {
            let map: Vec<_> = self.letter_map.iter().map(|(to, from)| format!("{to}:={from}")).collect();
            write!(f, " [{}]", map.join(" "))?;
        }
        Ok(())
    }
}

/// A weaker conclusion that does follow where the claimed one fails.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PartialConclusion(pub DiagramExpr);

impl fmt::Display for PartialConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diagram ({}) for {} o {}", self.0.index(), self.0.subject, self.0.predicate)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub mood: Mood,
    pub pattern: ModalPattern,
    pub group: Group,
    pub verdict: ReferenceVerdict,
    pub fixture: Option<FixtureUse>,
    pub partial_conclusion: Option<PartialConclusion>,
    /// Chapter of the Prior Analytics discussing the case.
    pub locator: &'static str,
}

impl CatalogEntry {
    pub fn id(&self) -> String {
        format!("{} {}", self.mood, self.pattern)
    }

    pub fn inference(&self) -> Inference {
        instantiate(self.mood, self.pattern).expect("catalog entries instantiate")
    }
}

use ModalLetter::{K, M, N, X};

/// Mixed NX/XN cases whose necessity conclusion is accepted.
const MIXED_VALID: [(Mood, ModalLetter, ModalLetter); 13] = [
    (Mood::Barbara, N, X),
    (Mood::Celarent, N, X),
    (Mood::Darii, N, X),
    (Mood::Ferio, N, X),
    (Mood::Cesare, N, X),
    (Mood::Camestres, X, N),
    (Mood::Festino, N, X),
    (Mood::Darapti, N, X),
    (Mood::Darapti, X, N),
    (Mood::Felapton, N, X),
    (Mood::Datisi, N, X),
    (Mood::Disamis, X, N),
    (Mood::Ferison, N, X),
];

fn mixed_fixture(mood: Mood, major: ModalLetter) -> FixtureUse {
    use FixtureName::*;
    match (mood, major) {
        (Mood::Barbara, X) | (Mood::Darii, X) => FixtureUse::identity(BarbaraXn),
        (Mood::Celarent, X) | (Mood::Ferio, X) => FixtureUse::identity(CelarentXn),
        // A and B exchange roles
        (Mood::Cesare, X) | (Mood::Festino, X) => FixtureUse::permuted(CelarentXn, "BAC"),
        (Mood::Camestres, N) => FixtureUse::permuted(CelarentXn, "BCA"),
        (Mood::Baroco, N) => FixtureUse::identity(BarocoNx),
        (Mood::Baroco, X) => FixtureUse::identity(BarocoXn),
        (Mood::Felapton, X) | (Mood::Ferison, X) | (Mood::Bocardo, X) => FixtureUse::identity(CelarentXn),
        // B and C exchange roles
        (Mood::Datisi, X) | (Mood::Disamis, N) => FixtureUse::permuted(BarbaraXn, "ACB"),
        (Mood::Bocardo, N) => FixtureUse::identity(BocardoNx),
        _ => unreachable!("{mood} with major {major:?} is not an invalid mixed case"),
    }
}

fn mixed_partial(mood: Mood, major: ModalLetter) -> Option<PartialConclusion> {
    let d =
        |i, s, p| Some(PartialConclusion(DiagramExpr::new(i, Term::plain(concept(s)), Term::plain(concept(p))).ok()?));
    match (mood, major) {
        (Mood::Baroco, X) => d(5, 'C', 'B'),
        (Mood::Felapton, X) | (Mood::Ferison, X) | (Mood::Bocardo, X) => d(5, 'B', 'A'),
        (Mood::Bocardo, N) => d(4, 'B', 'A'),
        _ => None,
    }
}

fn mixed_locator(mood: Mood) -> &'static str {
    match mood.figure() {
        1 => "Prior Analytics I.9",
        2 => "Prior Analytics I.10",
        _ => "Prior Analytics I.11",
    }
}

/// The complete reference table: 14 NNN, 28 mixed and 9 contingency entries.
pub fn verdict_table() -> Vec<CatalogEntry> {
    let mut table = Vec::new();
    for mood in Mood::ALL {
        table.push(CatalogEntry {
            mood,
            pattern: ModalPattern::claim(N, N, N),
            group: Group::Nnn,
            verdict: ReferenceVerdict::Valid,
            fixture: None,
            partial_conclusion: None,
            locator: "Prior Analytics I.8",
        });
    }
    for mood in Mood::ALL {
        for (major, minor) in [(N, X), (X, N)] {
            let valid = MIXED_VALID.contains(&(mood, major, minor));
            table.push(CatalogEntry {
                mood,
                pattern: if valid { ModalPattern::claim(major, minor, N) } else { ModalPattern::refute(major, minor) },
                group: Group::MixedNx,
                verdict: if valid { ReferenceVerdict::Valid } else { ReferenceVerdict::Invalid },
                fixture: (!valid).then(|| mixed_fixture(mood, major)),
                partial_conclusion: if valid { None } else { mixed_partial(mood, major) },
                locator: mixed_locator(mood),
            });
        }
    }
    let contingency = [
        (Mood::Barbara, ModalPattern::claim(K, K, K), ReferenceVerdict::Valid, "Prior Analytics I.14"),
        (Mood::Barbara, ModalPattern::claim(K, X, K), ReferenceVerdict::Valid, "Prior Analytics I.15"),
        (Mood::Celarent, ModalPattern::claim(K, X, K), ReferenceVerdict::Valid, "Prior Analytics I.15"),
        (Mood::Barbara, ModalPattern::claim(X, K, M), ReferenceVerdict::Valid, "Prior Analytics I.15"),
        (Mood::Celarent, ModalPattern::claim(X, K, M), ReferenceVerdict::Valid, "Prior Analytics I.15"),
        (Mood::Celarent, ModalPattern::claim(N, K, X), ReferenceVerdict::Valid, "Prior Analytics I.16"),
        (Mood::Camestres, ModalPattern::refute(X, K), ReferenceVerdict::Invalid, "Prior Analytics I.18"),
        (Mood::Cesare, ModalPattern::refute(K, N), ReferenceVerdict::Invalid, "Prior Analytics I.19"),
        (Mood::Camestres, ModalPattern::claim(N, K, M), ReferenceVerdict::Unasserted, "Prior Analytics I.19"),
    ];
    for (mood, pattern, verdict, locator) in contingency {
        table.push(CatalogEntry {
            mood,
            pattern,
            group: Group::Contingency,
            verdict,
            fixture: None,
            partial_conclusion: None,
            locator,
        });
    }
    table
}

/// The catalog entry whose instantiation coincides with `mood` under `pattern`,
/// so `Bocardo NXN` finds the `Bocardo NX?` entry.
pub fn lookup(mood: Mood, pattern: ModalPattern) -> Option<CatalogEntry> {
    let wanted = instantiate(mood, pattern).ok()?;
    verdict_table().into_iter().find(|e| {
        let have = e.inference();
        e.mood == mood && have.premises == wanted.premises && have.conclusion == wanted.conclusion
    })
}
