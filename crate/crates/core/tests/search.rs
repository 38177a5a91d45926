use apodeixis::catalog::{instantiate, verdict_table, Group, ReferenceVerdict};
use apodeixis::properties::neg3_not_monotone;
use apodeixis::search::{find_countermodel, find_model, is_countermodel, verify_up_to, EngineResult, SearchOptions};
use apodeixis::semantics::{atom, diagram_expr, Atom};
use apodeixis::{holds, parse_mood, parse_statement, ConceptName, DiagramExpr, EnumerationBounds, Model, Term};

fn abc(sizes: &[usize]) -> EnumerationBounds {
    EnumerationBounds::abc(sizes)
}

fn term(c: char) -> Term {
    Term::plain(ConceptName::new(c).unwrap())
}

fn inference(id: &str) -> apodeixis::Inference {
    let (mood, pattern) = parse_mood(id).unwrap();
    instantiate(mood, pattern).unwrap()
}

fn all_hold(m: &Model, statements: &[&str]) -> bool {
    statements.iter().all(|s| holds(m, &parse_statement(s).unwrap()).unwrap())
}

/// Countermodels survive enlarging the bounds, and the least one found in the
/// smaller space still refutes the inference.
#[test]
fn evidence_is_monotone_in_the_bounds() {
    for entry in verdict_table().into_iter().filter(|e| e.group == Group::MixedNx) {
        let inf = entry.inference();
        let small = verify_up_to(&inf, &abc(&[2, 1]), SearchOptions::default()).unwrap();
        let large = verify_up_to(&inf, &abc(&[2, 2]), SearchOptions::default()).unwrap();
        if small.outcome.engine_result() == EngineResult::CountermodelFound {
            assert_eq!(large.outcome.engine_result(), EngineResult::CountermodelFound, "{}", entry.id());
            assert!(is_countermodel(small.countermodel.as_ref().unwrap(), &inf).unwrap());
        }
        let expected = match entry.verdict {
            ReferenceVerdict::Valid => EngineResult::NoCountermodelUpToBound,
            _ => EngineResult::CountermodelFound,
        };
        assert_eq!(large.outcome.engine_result(), expected, "{}", entry.id());
    }
}

#[test]
fn search_is_independent_of_thread_count() {
    for id in ["Barbara XNN", "Celarent XNN", "Baroco NXN", "Bocardo XNN"] {
        let inf = inference(id);
        let one = verify_up_to(&inf, &abc(&[2, 2]), SearchOptions::threads(1)).unwrap();
        for n in [2, 3, 8] {
            let many = verify_up_to(&inf, &abc(&[2, 2]), SearchOptions::threads(n)).unwrap();
            assert_eq!((one.models_checked, &one.countermodel), (many.models_checked, &many.countermodel), "{id}");
        }
        assert_eq!(one.countermodel, find_countermodel(&inf, &abc(&[2, 2])).unwrap());
    }
}

/// Ferio XN stays invalid even when some individual is necessarily both C
/// and B, so the failure is not an artefact of empty necessity.
#[test]
fn ferio_xn_fails_with_a_necessary_middle_instance() {
    let inf = inference("Ferio XNN");
    let (b, c) = (term('B'), term('C'));
    let found = find_model(&abc(&[2, 1]), SearchOptions::default(), |m| {
        let both = (0..m.individuals().len())
            .any(|i| atom(m, &Atom::NecessarilyIs(i, c)).unwrap() && atom(m, &Atom::NecessarilyIs(i, b)).unwrap());
        Ok(both && is_countermodel(m, &inf)?)
    })
    .unwrap();
    let (_, m) = found.hit.expect("countermodel at [2,1]");
    assert!(all_hold(&m, &["BeA", "N(CiB)"]));
    assert!(!all_hold(&m, &["N(CoA)"]));
}

fn diagram(i: u8, s: char, p: char) -> DiagramExpr {
    DiagramExpr::new(i, term(s), term(p)).unwrap()
}

/// With the necessary premise narrowed to its (3) disjunct, Baroco XN yields
/// (5) for C o B. With the full disjunction it does not.
#[test]
fn baroco_xn_partial_conclusion_needs_the_narrow_premise() {
    let narrow = find_model(&abc(&[2, 2]), SearchOptions::default(), |m| {
        Ok(all_hold(m, &["BaA"]) && diagram_expr(m, &diagram(3, 'C', 'A'))? && !diagram_expr(m, &diagram(5, 'C', 'B'))?)
    })
    .unwrap();
    assert!(narrow.hit.is_none());

    let full = find_model(&abc(&[2, 2]), SearchOptions::default(), |m| {
        Ok(all_hold(m, &["BaA", "N(CoA)"]) && !diagram_expr(m, &diagram(5, 'C', 'B'))?)
    })
    .unwrap();
    let (_, m) = full.hit.expect("full premise admits a countermodel");
    assert!(diagram_expr(&m, &diagram(2, 'C', 'A')).unwrap());
    assert!(!diagram_expr(&m, &diagram(3, 'C', 'A')).unwrap());
}

#[test]
fn catalog_partial_conclusions() {
    let run =
        apodeixis::search::run_catalog(&abc(&[2, 2]), apodeixis::search::Scope::MixedNx, SearchOptions::default())
            .unwrap();
    let partial = |id: &str| {
        let e = run.entries.iter().find(|e| e.report.inference == id).unwrap();
        e.partial_conclusion.as_ref().unwrap().engine_result
    };
    assert_eq!(partial("Felapton XN?"), EngineResult::NoCountermodelUpToBound);
    assert_eq!(partial("Bocardo XN?"), EngineResult::NoCountermodelUpToBound);
    assert_eq!(partial("Bocardo NX?"), EngineResult::NoCountermodelUpToBound);
    assert_eq!(partial("Baroco XN?"), EngineResult::CountermodelFound);
    assert_eq!(partial("Ferison XN?"), EngineResult::CountermodelFound);
}

/// The least countermodel to Camestres XK? is exactly the kind of model where
/// the weak negative candidate fails to transfer down an inclusion.
#[test]
fn camestres_xk_countermodel_breaks_neg3_monotonicity() {
    let inf = inference("Camestres XK?");
    let m = find_countermodel(&inf, &abc(&[2, 2])).unwrap().expect("countermodel");
    assert!(neg3_not_monotone(&m).unwrap());
}
