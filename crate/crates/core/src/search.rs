//! Bounded countermodel search and the catalog runner.
//!
//! Searches walk a [`ModelSpace`] in index order, which is canonical-key
//! order, and always return the least satisfying model. Workers claim
//! contiguous chunks of the index range and record the least hit in a shared
//! minimum; chunks that start above the current minimum are skipped. The
//! result does not depend on the number of workers.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{verdict_table, CatalogEntry, FixtureUse, Group, Inference, ReferenceVerdict, SideCondition};
use crate::enumerate::{EnumerationBounds, EnumerationError, ModelSpace, DEFAULT_MAX_MODELS};
use crate::fixtures::{fixture, FixtureName};
use crate::model::{concept, ConceptName, Model};
use crate::semantics::{diagram_expr, holds, non_empty, some_apart_from_necessary, DiagramExpr, SemanticsError};
use crate::statement::Term;
use crate::ENGINE_VERSION;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("concept {0} is used by the inference but not enumerated by the bounds")]
    ConceptOutOfBounds(ConceptName),
    #[error("fixture defect in {entry}: {reason}")]
    FixtureDefect { entry: String, reason: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
    pub max_models: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { threads: 0, max_models: DEFAULT_MAX_MODELS }
    }
}

impl SearchOptions {
    pub fn threads(threads: usize) -> Self {
        Self { threads, ..Self::default() }
    }

    fn workers(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }
}

/// Outcome of a predicate search over a model space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    /// The least satisfying model and its index.
    pub hit: Option<(u64, Model)>,
    /// Number of models in the space.
    pub space: u64,
}

impl Found {
    /// Models up to and including the hit, or the whole space.
    pub fn models_checked(&self) -> u64 {
        self.hit.as_ref().map_or(self.space, |(i, _)| i + 1)
    }
}

const CHUNK: u64 = 1 << 12;

/// Least model of the space satisfying `pred`.
pub fn find_model<F>(bounds: &EnumerationBounds, options: SearchOptions, pred: F) -> Result<Found, SearchError>
where
    F: Fn(&Model) -> Result<bool, SemanticsError> + Sync,
{
    let space = ModelSpace::with_limit(bounds, options.max_models)?;
    let len = space.len();
    let best = AtomicU64::new(u64::MAX);
    let next_chunk = AtomicU64::new(0);
    let failure: std::sync::Mutex<Option<(u64, SemanticsError)>> = std::sync::Mutex::new(None);
    let chunks = len.div_ceil(CHUNK);
    let workers = options.workers().clamp(1, chunks.max(1) as usize);

    let work = || loop {
        let c = next_chunk.fetch_add(1, Ordering::Relaxed);
        if c >= chunks {
            return;
        }
        let start = c * CHUNK;
        if start >= best.load(Ordering::Relaxed) {
            return;
        }
        let end = (start + CHUNK).min(len);
        for (index, model) in (start..end).zip(space.range(start..end)) {
            match pred(&model) {
                Ok(true) => {
                    best.fetch_min(index, Ordering::Relaxed);
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    let mut slot = failure.lock().expect("no worker panics while holding the lock");
                    if slot.as_ref().is_none_or(|(i, _)| index < *i) {
                        *slot = Some((index, e));
                    }
                    best.fetch_min(index, Ordering::Relaxed);
                    break;
                }
            }
        }
    };
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let best = best.into_inner();
    if let Some((i, e)) = failure.into_inner().expect("workers finished") {
        if i == best {
            return Err(e.into());
        }
    }
    let hit = (best != u64::MAX).then(|| (best, space.model_at(best)));
    Ok(Found { hit, space: len })
}

fn side_condition_holds(model: &Model, c: &SideCondition) -> Result<bool, SemanticsError> {
    match *c {
        SideCondition::NonEmpty(name) => non_empty(model, name),
    }
}

/// Premises and side conditions true, conclusion false.
pub fn is_countermodel(model: &Model, inference: &Inference) -> Result<bool, SemanticsError> {
    for p in &inference.premises {
        if !holds(model, p)? {
            return Ok(false);
        }
    }
    for c in &inference.side_conditions {
        if !side_condition_holds(model, c)? {
            return Ok(false);
        }
    }
    Ok(!holds(model, &inference.conclusion)?)
}

fn check_concepts(inference: &Inference, bounds: &EnumerationBounds) -> Result<(), SearchError> {
    let statements = inference.premises.iter().chain([&inference.conclusion]);
    let mut used: Vec<ConceptName> = statements.flat_map(|s| [s.subject().base, s.predicate().base]).collect();
    used.extend(inference.side_conditions.iter().map(|SideCondition::NonEmpty(c)| *c));
    match used.into_iter().find(|c| !bounds.concept_names.contains(c)) {
        Some(c) => Err(SearchError::ConceptOutOfBounds(c)),
        None => Ok(()),
    }
}

fn search(inference: &Inference, bounds: &EnumerationBounds, options: SearchOptions) -> Result<Found, SearchError> {
    check_concepts(inference, bounds)?;
    let found = find_model(bounds, options, |m| is_countermodel(m, inference))?;
    if let Some((_, m)) = &found.hit {
        // independent re-evaluation of every formula
        let premises_hold = inference.premises.iter().all(|p| holds(m, p) == Ok(true));
        let conditions_hold = inference.side_conditions.iter().all(|c| side_condition_holds(m, c) == Ok(true));
        assert!(
            premises_hold && conditions_hold && holds(m, &inference.conclusion) == Ok(false),
            "search returned a model that is not a countermodel to {inference}"
        );
    }
    Ok(found)
}

/// The canonical-least countermodel within `bounds`, if any.
pub fn find_countermodel(inference: &Inference, bounds: &EnumerationBounds) -> Result<Option<Model>, SearchError> {
    Ok(search(inference, bounds, SearchOptions::default())?.hit.map(|(_, m)| m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    NoCountermodelUpToBound,
    CountermodelFound(Model),
    FixtureConfirmed(FixtureName),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::NoCountermodelUpToBound => "NoCountermodelUpToBound",
            Outcome::CountermodelFound(_) => "CountermodelFound",
            Outcome::FixtureConfirmed(_) => "FixtureConfirmed",
        }
    }

    pub fn engine_result(&self) -> EngineResult {
        match self {
            Outcome::NoCountermodelUpToBound => EngineResult::NoCountermodelUpToBound,
            _ => EngineResult::CountermodelFound,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::NoCountermodelUpToBound => f.write_str("no countermodel up to bound"),
            Outcome::CountermodelFound(_) => f.write_str("countermodel found"),
            Outcome::FixtureConfirmed(name) => write!(f, "fixture {name} confirmed"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub inference: String,
    pub bounds: EnumerationBounds,
    pub models_checked: u64,
    #[serde(serialize_with = "outcome_label")]
    pub outcome: Outcome,
    pub countermodel: Option<Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub engine_version: &'static str,
    /// Wall time; never serialized so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn outcome_label<S: Serializer>(outcome: &Outcome, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(outcome.label())
}

/// Exhaustive check of `inference` over all models within `bounds`. A missing
/// countermodel is evidence up to the bound only.
pub fn verify_up_to(
    inference: &Inference,
    bounds: &EnumerationBounds,
    options: SearchOptions,
) -> Result<CheckReport, SearchError> {
    let started = Instant::now();
    let found = search(inference, bounds, options)?;
    let models_checked = found.models_checked();
    let (outcome, countermodel) = match found.hit {
        Some((_, m)) => (Outcome::CountermodelFound(m.clone()), Some(m)),
        None => (Outcome::NoCountermodelUpToBound, None),
    };
    Ok(CheckReport {
        inference: inference.id.clone(),
        bounds: bounds.clone(),
        models_checked,
        outcome,
        countermodel,
        fixture: None,
        engine_version: ENGINE_VERSION,
        elapsed: started.elapsed(),
    })
}

/// The fixture model as seen by the entry's instantiation.
pub fn fixture_instance(usage: &FixtureUse) -> Model {
    fixture(usage.name).model.relabel(&usage.letter_map).expect("fixtures define A, B and C")
}

fn t(c: char) -> Term {
    Term::plain(concept(c))
}

/// Evaluates the entry's premises, side conditions and conclusion on its
/// fixture, plus the stronger remarks attached to the two Baroco fixtures:
/// on `baroco_xn` diagram node (4) for `CoB` fails, and on `baroco_nx` no C
/// is necessarily apart from every necessary B.
pub fn confirm_fixture(entry: &CatalogEntry) -> Result<CheckReport, SearchError> {
    let started = Instant::now();
    let defect = |reason: String| SearchError::FixtureDefect { entry: entry.id(), reason };
    let usage = entry.fixture.as_ref().ok_or_else(|| defect("entry has no fixture".into()))?;
    let model = fixture_instance(usage);
    let inference = entry.inference();

    for p in &inference.premises {
        if !holds(&model, p)? {
            return Err(defect(format!("premise {p} is false on {usage}")));
        }
    }
    for c in &inference.side_conditions {
        if !side_condition_holds(&model, c)? {
            return Err(defect(format!("side condition {c} is false on {usage}")));
        }
    }
    if holds(&model, &inference.conclusion)? {
        return Err(defect(format!("conclusion {} is true on {usage}", inference.conclusion)));
    }
    if usage.is_identity() {
        match usage.name {
            FixtureName::BarocoXn => {
                let expr = DiagramExpr::new(4, t('C'), t('B'))?;
                if diagram_expr(&model, &expr)? {
                    return Err(defect("diagram node (4) for CoB holds".into()));
                }
            }
            FixtureName::BarocoNx if some_apart_from_necessary(&model, &t('C'), &t('B'))? => {
                return Err(defect("some C is necessarily apart from every necessary B".into()));
            }
            _ => {}
        }
    }

    Ok(CheckReport {
        inference: inference.id.clone(),
        bounds: EnumerationBounds::new(
            model.world_sizes().to_vec(),
            model.concepts().keys().copied().collect(),
            Default::default(),
        ),
        models_checked: 1,
        outcome: Outcome::FixtureConfirmed(usage.name),
        countermodel: Some(model),
        fixture: Some(usage.to_string()),
        engine_version: ENGINE_VERSION,
        elapsed: started.elapsed(),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EngineResult {
    NoCountermodelUpToBound,
    CountermodelFound,
}

impl fmt::Display for EngineResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineResult::NoCountermodelUpToBound => "NoCountermodelUpToBound",
            EngineResult::CountermodelFound => "CountermodelFound",
        })
    }
}

/// Whether the engine result is the one the reference verdict predicts.
pub fn agrees(verdict: ReferenceVerdict, result: EngineResult) -> bool {
    match verdict {
        ReferenceVerdict::Valid => result == EngineResult::NoCountermodelUpToBound,
        ReferenceVerdict::Invalid => result == EngineResult::CountermodelFound,
        ReferenceVerdict::Unasserted => true,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    Nnn,
    MixedNx,
    Contingency,
    All,
}

impl Scope {
    pub fn includes(self, group: Group) -> bool {
        match self {
            Scope::Nnn => group == Group::Nnn,
            Scope::MixedNx => group == Group::MixedNx,
            Scope::Contingency => group == Group::Contingency,
            Scope::All => true,
        }
    }
}

/// Result of a bounded check of a weaker conclusion that should follow from
/// premises whose full conclusion fails.
#[derive(Clone, Debug, Serialize)]
pub struct PartialCheck {
    pub conclusion: String,
    pub engine_result: EngineResult,
    pub models_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub mood: String,
    pub pattern: String,
    pub verdict: ReferenceVerdict,
    pub engine_result: EngineResult,
    pub agrees: bool,
    pub fixture: Option<String>,
    pub locator: &'static str,
    pub report: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture_report: Option<CheckReport>,
    /// For NNN entries: the valid mixed entry that yields this one by
    /// weakening a premise, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakening: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_conclusion: Option<PartialCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRun {
    pub bounds: EnumerationBounds,
    pub engine_version: &'static str,
    pub entries: Vec<EntryReport>,
    pub divergences: Vec<String>,
}

impl CatalogRun {
    pub fn count(&self, group: Group, result: EngineResult) -> usize {
        let table = verdict_table();
        self.entries
            .iter()
            .filter(|e| e.engine_result == result)
            .filter(|e| table.iter().any(|t| t.id() == e.report.inference && t.group == group))
            .count()
    }
}

fn weakening_source(entry: &CatalogEntry, table: &[CatalogEntry]) -> Option<String> {
    if entry.group != Group::Nnn {
        return None;
    }
    table
        .iter()
        .find(|m| m.group == Group::MixedNx && m.mood == entry.mood && m.verdict == ReferenceVerdict::Valid)
        .map(CatalogEntry::id)
}

fn partial_check(
    entry: &CatalogEntry,
    bounds: &EnumerationBounds,
    options: SearchOptions,
) -> Result<Option<PartialCheck>, SearchError> {
    let Some(partial) = entry.partial_conclusion else { return Ok(None) };
    let inference = entry.inference();
    let found = find_model(bounds, options, |m| {
        for p in &inference.premises {
            if !holds(m, p)? {
                return Ok(false);
            }
        }
        for c in &inference.side_conditions {
            if !side_condition_holds(m, c)? {
                return Ok(false);
            }
        }
        Ok(!diagram_expr(m, &partial.0)?)
    })?;
    Ok(Some(PartialCheck {
        conclusion: partial.to_string(),
        engine_result: if found.hit.is_some() {
            EngineResult::CountermodelFound
        } else {
            EngineResult::NoCountermodelUpToBound
        },
        models_checked: found.models_checked(),
    }))
}

/// Checks every catalog entry in `scope` at `bounds`. Invalid entries also
/// have their fixture confirmed; a fixture that fails its role aborts the run.
pub fn run_catalog(
    bounds: &EnumerationBounds,
    scope: Scope,
    options: SearchOptions,
) -> Result<CatalogRun, SearchError> {
    let table = verdict_table();
    let mut entries = Vec::new();
    let mut divergences = Vec::new();
    for entry in table.iter().filter(|e| scope.includes(e.group)) {
        let report = verify_up_to(&entry.inference(), bounds, options)?;
        let engine_result = report.outcome.engine_result();
        let agrees = agrees(entry.verdict, engine_result);
        if !agrees {
            divergences.push(format!("{}: expected {:?}, engine {engine_result}", entry.id(), entry.verdict));
        }
        let fixture_report = match entry.fixture {
            Some(_) => Some(confirm_fixture(entry)?),
            None => None,
        };
        entries.push(EntryReport {
            mood: entry.mood.to_string(),
            pattern: entry.pattern.to_string(),
            verdict: entry.verdict,
            engine_result,
            agrees,
            fixture: entry.fixture.as_ref().map(ToString::to_string),
            locator: entry.locator,
            report,
            fixture_report,
            weakening: weakening_source(entry, &table),
            partial_conclusion: partial_check(entry, bounds, options)?,
        });
    }
    Ok(CatalogRun { bounds: bounds.clone(), engine_version: ENGINE_VERSION, entries, divergences })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, ModalLetter::*, ModalPattern, Mood};
    use crate::enumerate::IndividualPolicy;

    fn inference(mood: Mood, pattern: ModalPattern) -> Inference {
        instantiate(mood, pattern).unwrap()
    }

    #[test]
    fn barbara_xn_countermodel_at_one_one() {
        let inf = inference(Mood::Barbara, ModalPattern::refute(X, N));
        let bounds = EnumerationBounds::abc(&[1, 1]);
        let m = find_countermodel(&inf, &bounds).unwrap().expect("countermodel");
        assert!(is_countermodel(&m, &inf).unwrap());
        let fx = fixture(FixtureName::BarbaraXn).model;
        assert!(is_countermodel(&fx, &inf).unwrap());
        let space = ModelSpace::new(&bounds).unwrap();
        assert!(space.index_of(&m).unwrap() <= space.index_of(&fx).unwrap());
    }

    #[test]
    fn least_countermodel_matches_sequential_scan() {
        let inf = inference(Mood::Celarent, ModalPattern::refute(X, N));
        let bounds = EnumerationBounds::abc(&[2, 1]);
        let scan = ModelSpace::new(&bounds).unwrap().iter().position(|m| is_countermodel(&m, &inf).unwrap());
        for threads in [1, 2, 3, 8] {
            let found = search(&inf, &bounds, SearchOptions::threads(threads)).unwrap();
            assert_eq!(found.hit.as_ref().map(|(i, _)| *i as usize), scan, "threads={threads}");
            assert_eq!(found.models_checked(), scan.unwrap() as u64 + 1);
        }
    }

    #[test]
    fn valid_entry_checks_whole_space() {
        let inf = inference(Mood::Barbara, ModalPattern::claim(N, X, N));
        let bounds = EnumerationBounds::abc(&[2, 1]);
        let r = verify_up_to(&inf, &bounds, SearchOptions::threads(2)).unwrap();
        assert_eq!(r.outcome, Outcome::NoCountermodelUpToBound);
        assert_eq!(r.models_checked, 2048);
        assert!(r.countermodel.is_none());
    }

    #[test]
    fn out_of_bounds_concept_is_an_error() {
        let inf = inference(Mood::Barbara, ModalPattern::claim(N, X, N));
        let bounds =
            EnumerationBounds::new(vec![1, 1], vec![concept('A'), concept('B')], IndividualPolicy::AllFunctions);
        assert!(
            matches!(find_countermodel(&inf, &bounds), Err(SearchError::ConceptOutOfBounds(c)) if c == concept('C'))
        );
    }

    #[test]
    fn guard_applies() {
        let inf = inference(Mood::Barbara, ModalPattern::claim(N, X, N));
        let options = SearchOptions { threads: 1, max_models: 100 };
        assert!(matches!(
            verify_up_to(&inf, &EnumerationBounds::abc(&[2, 2]), options),
            Err(SearchError::Enumeration(EnumerationError::TooManyModels { .. }))
        ));
    }

    #[test]
    fn every_invalid_mixed_fixture_confirms() {
        for entry in verdict_table().iter().filter(|e| e.fixture.is_some()) {
            let r = confirm_fixture(entry).unwrap_or_else(|e| panic!("{e}"));
            assert!(matches!(r.outcome, Outcome::FixtureConfirmed(_)));
        }
    }

    #[test]
    fn broken_fixture_link_is_reported() {
        let mut entry = verdict_table().into_iter().find(|e| e.id() == "Baroco NX?").unwrap();
        entry.fixture = Some(FixtureUse { name: FixtureName::BarbaraXn, ..entry.fixture.clone().unwrap() });
        assert!(matches!(confirm_fixture(&entry), Err(SearchError::FixtureDefect { .. })));
    }
}
