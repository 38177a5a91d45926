//! End-to-end acceptance run. Prints one line per criterion and fails if any
//! criterion does not hold.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use apodeixis::catalog::verdict_table;
use apodeixis::properties::{run_suite, Suite};
use apodeixis::search::{confirm_fixture, SearchOptions};
use apodeixis::semantics::{diagram_expr, some_apart_from_necessary};
use apodeixis::{decode_model, encode_model, fixture, ConceptName, DiagramExpr, EnumerationBounds, FixtureName, Term};
use common::{apodeixis, code, json_stdout, stderr};
use serde_json::Value;

const LIMIT: Duration = Duration::from_secs(300);

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, message: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn catalog(scope: &str) -> Result<(Value, Duration), String> {
    let started = Instant::now();
    let (c, run) = json_stdout(&["verify-catalog", "--scope", scope, "--bounds", "2,2", "--json", "-"]);
    ensure(c == 0, format!("exit code {c}"))?;
    Ok((run, started.elapsed()))
}

fn count(run: &Value, result: &str) -> usize {
    run["entries"].as_array().unwrap().iter().filter(|e| e["engine_result"] == result).count()
}

fn entry<'a>(run: &'a Value, id: &str) -> Result<&'a Value, String> {
    run["entries"].as_array().unwrap().iter().find(|e| e["report"]["inference"] == id).ok_or(format!("{id} missing"))
}

fn mixed_table() -> Verdict {
    let (run, took) = catalog("mixed")?;
    let (none, found) = (count(&run, "NoCountermodelUpToBound"), count(&run, "CountermodelFound"));
    ensure((none, found) == (13, 15), format!("{none} without / {found} with countermodel"))?;
    ensure(run["divergences"].as_array().unwrap().is_empty(), "divergences reported")?;
    ensure(took < LIMIT, format!("took {took:?}"))?;
    Ok(format!("13 NoCountermodelUpToBound, 15 CountermodelFound, 0 divergences in {:.1}s", took.as_secs_f64()))
}

fn nnn_table() -> Verdict {
    let (run, took) = catalog("nnn")?;
    let none = count(&run, "NoCountermodelUpToBound");
    ensure(none == 14 && run["entries"].as_array().unwrap().len() == 14, format!("{none} of 14 confirmed"))?;
    for id in ["Baroco NNN", "Bocardo NNN"] {
        let checked = entry(&run, id)?["report"]["models_checked"].as_u64().unwrap();
        ensure(checked == 65_536, format!("{id} searched {checked} models"))?;
    }
    ensure(took < LIMIT, format!("took {took:?}"))?;
    Ok(format!("14/14 moods, Baroco and Bocardo NNN by full search of 65536 models, {:.1}s", took.as_secs_f64()))
}

fn fixture_fidelity() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    for name in FixtureName::ALL {
        let bytes = std::fs::read(dir.join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        let model = decode_model(&bytes).map_err(|e| format!("{name}: {e}"))?;
        ensure(model == fixture(name).model, format!("{name} differs from the built-in model"))?;
        ensure(encode_model(&model) == bytes, format!("{name} does not re-encode byte-identically"))?;
    }
    let mut confirmed = 0;
    for e in verdict_table().into_iter().filter(|e| e.fixture.is_some()) {
        confirm_fixture(&e).map_err(|err| format!("{}: {err}", e.id()))?;
        confirmed += 1;
    }
    let t = |c| Term::plain(ConceptName::new(c).unwrap());
    let baroco_xn = fixture(FixtureName::BarocoXn).model;
    let d4 = DiagramExpr::new(4, t('C'), t('B')).unwrap();
    ensure(!diagram_expr(&baroco_xn, &d4).unwrap(), "baroco_xn satisfies (4) for C o B")?;
    let baroco_nx = fixture(FixtureName::BarocoNx).model;
    ensure(
        !some_apart_from_necessary(&baroco_nx, &t('C'), &t('B')).unwrap(),
        "baroco_nx satisfies ∃y(Cy ∧ ∀x(NBx ⟹ N(x≠y)))",
    )?;
    Ok(format!("5 files decode bit-exactly; {confirmed} invalid entries confirmed by fixtures; both remarks hold"))
}

fn property_suites() -> Verdict {
    let bounds = EnumerationBounds::abc(&[2, 2]);
    let mut checks = 0;
    let mut witnesses = 0;
    for suite in Suite::ALL {
        let r = run_suite(suite, &bounds, SearchOptions::default()).map_err(|e| e.to_string())?;
        for law in &r.laws {
            ensure(law.counterexample.is_none(), format!("{} fails", law.name))?;
        }
        for w in &r.witnesses {
            ensure(w.witness.is_some(), format!("no witness for {}", w.name))?;
            witnesses += 1;
        }
        checks += r.checks;
    }
    ensure(checks >= 2_000_000, format!("only {checks} checks"))?;
    Ok(format!("{checks} checks without a counterexample; {witnesses} witnesses found"))
}

fn contingency() -> Verdict {
    let (run, _) = catalog("contingency")?;
    let expect = [
        ("Celarent NKX", "NoCountermodelUpToBound"),
        ("Camestres NKM", "NoCountermodelUpToBound"),
        ("Camestres XK?", "CountermodelFound"),
        ("Cesare KN?", "CountermodelFound"),
        ("Barbara XKM", "NoCountermodelUpToBound"),
        ("Celarent XKM", "NoCountermodelUpToBound"),
    ];
    for (id, result) in expect {
        let got = &entry(&run, id)?["engine_result"];
        ensure(got == result, format!("{id}: {got}"))?;
    }
    Ok("Celarent NKX, Camestres NKM, Barbara XKM, Celarent XKM hold; Camestres XK, Cesare KN refuted".into())
}

fn determinism() -> Verdict {
    let run = |threads: &str| {
        let out = apodeixis(&["verify-catalog", "--scope", "all", "--threads", threads, "--json", "-"]);
        ensure(code(&out) == 0, format!("--threads {threads}: {}", stderr(&out))).map(|_| out.stdout)
    };
    let (one, eight) = (run("1")?, run("8")?);
    ensure(one == eight, "reports differ")?;
    Ok(format!("--threads 1 and --threads 8 reports identical ({} bytes)", one.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("mixed table", mixed_table),
        ("NNN table", nnn_table),
        ("fixture fidelity", fixture_fidelity),
        ("property suites", property_suites),
        ("contingency", contingency),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
