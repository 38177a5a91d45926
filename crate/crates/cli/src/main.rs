use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apodeixis::catalog::{lookup, verdict_table, CatalogEntry, Group, ReferenceVerdict};
use apodeixis::enumerate::DEFAULT_MAX_MODELS;
use apodeixis::properties::{run_suite, Suite, SuiteReport};
use apodeixis::search::{
    agrees, confirm_fixture, run_catalog, verify_up_to, CheckReport, EngineResult, Outcome, Scope, SearchError,
    SearchOptions,
};
use apodeixis::{
    decode_model, encode_model, fixture, holds, instantiate, parse_mood, parse_statement, EnumerationBounds,
    EnumerationError, FixtureName, IndividualPolicy,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const OK: u8 = 0;
const REFUTED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

/// Model checker for the necessity and contingency syllogistic over finite
/// Leibniz-Kripke models.
#[derive(Parser)]
#[command(name = "apodeixis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SearchArgs {
    /// World sizes and individual policy, e.g. `2,2` or `2,1,functions`.
    #[arg(long, default_value = "2,2", value_parser = parse_bounds)]
    bounds: EnumerationBounds,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "APODEIXIS_THREADS", default_value_t = 0)]
    threads: usize,
    /// Refuse to enumerate more models than this.
    #[arg(long, default_value_t = DEFAULT_MAX_MODELS)]
    max_models: u64,
    /// Also write the report as JSON to this path (`-` for stdout only).
    #[arg(long)]
    json: Option<PathBuf>,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { threads: self.threads, max_models: self.max_models }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ScopeArg {
    Nnn,
    Mixed,
    Contingency,
    All,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Req,
    Diagram,
    Remarks,
    Contingency,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate statements in a model file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(required = true)]
        statements: Vec<String>,
    },
    /// Search for a countermodel to a mood under a modal pattern, e.g. "Barbara NXN".
    Check {
        mood_pattern: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check every catalog entry in scope against its reference verdict.
    VerifyCatalog {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Write the countermodel fixtures and their confirmation reports.
    Fixtures {
        #[arg(long, value_parser = parse_fixture_name, required_unless_present = "all", conflicts_with = "all")]
        name: Option<FixtureName>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the exhaustive property suites.
    Properties {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn parse_bounds(text: &str) -> Result<EnumerationBounds, String> {
    let mut sizes = Vec::new();
    let mut policy = IndividualPolicy::AllSubsetsOfFunctions;
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    for (i, part) in parts.iter().enumerate() {
        match *part {
            "functions" if i + 1 == parts.len() => policy = IndividualPolicy::AllFunctions,
            "subsets" if i + 1 == parts.len() => policy = IndividualPolicy::AllSubsetsOfFunctions,
            _ => sizes.push(part.parse::<usize>().map_err(|_| format!("`{part}` is not a world size"))?),
        }
    }
    let bounds = EnumerationBounds::abc(&sizes).with_policy(policy);
    bounds.validate().map_err(|e| e.to_string())?;
    Ok(bounds)
}

fn parse_fixture_name(text: &str) -> Result<FixtureName, String> {
    text.parse().map_err(|e: apodeixis::fixtures::UnknownFixture| e.to_string())
}

/// A failure with its exit status.
struct Failure(u8, String);

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::Enumeration(EnumerationError::TooManyModels { .. }) => USAGE,
            SearchError::Enumeration(_) | SearchError::ConceptOutOfBounds(_) => USAGE,
            SearchError::Semantics(_) | SearchError::FixtureDefect { .. } => INTERNAL,
        };
        Failure(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure(INTERNAL, format!("{}: {e}", path.display()))
}

/// Writes `value` to the `--json` destination. Returns whether the human
/// report should still be printed.
fn emit_json<T: Serialize>(value: &T, dest: Option<&Path>) -> Result<bool, Failure> {
    let Some(dest) = dest else { return Ok(true) };
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure(INTERNAL, e.to_string()))?;
    text.push('\n');
    if dest == Path::new("-") {
        print!("{text}");
        Ok(false)
    } else {
        std::fs::write(dest, text).map_err(|e| io_failure(dest, e))?;
        Ok(true)
    }
}

fn model_text(model: &apodeixis::Model) -> String {
    String::from_utf8(encode_model(model)).expect("JSON is UTF-8").trim_end().to_string()
}

fn eval(model: &Path, statements: &[String]) -> Result<u8, Failure> {
    let bytes = std::fs::read(model).map_err(|e| Failure(USAGE, format!("{}: {e}", model.display())))?;
    let model = decode_model(&bytes).map_err(|e| Failure(USAGE, format!("{}: {e}", model.display())))?;
    let mut out = String::new();
    for text in statements {
        let st = parse_statement(text).map_err(|e| Failure(USAGE, format!("`{text}`: {e}")))?;
        let value = holds(&model, &st).map_err(|e| Failure(USAGE, format!("`{text}`: {e}")))?;
        writeln!(out, "{st}\t{value}").expect("writing to a String");
    }
    print!("{out}");
    Ok(OK)
}

fn describe_check(report: &CheckReport, out: &mut String) {
    writeln!(out, "inference      {}", report.inference).unwrap();
    writeln!(out, "bounds         {}", report.bounds).unwrap();
    writeln!(out, "models checked {}", report.models_checked).unwrap();
    writeln!(out, "outcome        {} ({})", report.outcome, report.outcome.label()).unwrap();
    if let Some(m) = &report.countermodel {
        writeln!(out, "countermodel   {}", model_text(m)).unwrap();
    }
}

fn describe_fixture(entry: &CatalogEntry, report: &CheckReport, out: &mut String) {
    if let (Some(usage), Outcome::FixtureConfirmed(name)) = (&entry.fixture, &report.outcome) {
        writeln!(out, "fixture        {usage} confirmed").unwrap();
        writeln!(out, "labels         {}", fixture(*name).labels).unwrap();
    }
}

fn check(mood_pattern: &str, args: &SearchArgs) -> Result<u8, Failure> {
    let (mood, pattern) = parse_mood(mood_pattern).map_err(|e| Failure(USAGE, format!("`{mood_pattern}`: {e}")))?;
    let inference = instantiate(mood, pattern).map_err(|e| Failure(USAGE, e.to_string()))?;
    let report = verify_up_to(&inference, &args.bounds, args.options())?;
    let human = emit_json(&report, args.json.as_deref())?;

    let mut out = String::new();
    writeln!(out, "statement      {inference}").unwrap();
    describe_check(&report, &mut out);
    let mut code = OK;
    if let Some(entry) = lookup(mood, pattern) {
        let result = report.outcome.engine_result();
        let agree = agrees(entry.verdict, result);
        writeln!(
            out,
            "reference      {:?} as {} ({}); engine {}",
            entry.verdict,
            entry.id(),
            entry.locator,
            if agree { "agrees" } else { "DIVERGES" }
        )
        .unwrap();
        if !agree {
            code = REFUTED;
        }
        if entry.fixture.is_some() {
            let fixture_report = confirm_fixture(&entry)?;
            describe_fixture(&entry, &fixture_report, &mut out);
        }
    }
    if human {
        print!("{out}");
    }
    Ok(code)
}

fn verify_catalog(scope: ScopeArg, args: &SearchArgs) -> Result<u8, Failure> {
    let scope = match scope {
        ScopeArg::Nnn => Scope::Nnn,
        ScopeArg::Mixed => Scope::MixedNx,
        ScopeArg::Contingency => Scope::Contingency,
        ScopeArg::All => Scope::All,
    };
    let run = run_catalog(&args.bounds, scope, args.options())?;
    let human = emit_json(&run, args.json.as_deref())?;
    if human {
        let mut out = String::new();
        writeln!(out, "bounds {}", run.bounds).unwrap();
        writeln!(out, "{:<10} {:<4} {:<10} {:<24} {:<6} witness", "mood", "pat", "reference", "engine", "agree")
            .unwrap();
        for e in &run.entries {
            let witness = match (&e.fixture, &e.weakening) {
                (Some(f), _) => f.clone(),
                (None, Some(w)) => format!("weakening of {w}; direct search"),
                (None, None) => "direct search".into(),
            };
            writeln!(
                out,
                "{:<10} {:<4} {:<10} {:<24} {:<6} {witness}",
                e.mood,
                e.pattern,
                format!("{:?}", e.verdict),
                e.engine_result.to_string(),
                if e.agrees { "yes" } else { "NO" },
            )
            .unwrap();
            if let Some(p) = &e.partial_conclusion {
                writeln!(out, "{:<16}partial: {} -> {}", "", p.conclusion, p.engine_result).unwrap();
            }
        }
        let table = verdict_table();
        for group in [Group::Nnn, Group::MixedNx, Group::Contingency] {
            let in_scope =
                run.entries.iter().any(|e| table.iter().any(|t| t.id() == e.report.inference && t.group == group));
            if in_scope {
                writeln!(
                    out,
                    "{group:?}: {} NoCountermodelUpToBound, {} CountermodelFound",
                    run.count(group, EngineResult::NoCountermodelUpToBound),
                    run.count(group, EngineResult::CountermodelFound)
                )
                .unwrap();
            }
        }
        for e in run.entries.iter().filter(|e| e.verdict == ReferenceVerdict::Unasserted) {
            writeln!(out, "unasserted: {} {}, engine {}", e.mood, e.pattern, e.engine_result).unwrap();
        }
        writeln!(out, "divergences: {}", run.divergences.len()).unwrap();
        for d in &run.divergences {
            writeln!(out, "  {d}").unwrap();
        }
        print!("{out}");
    }
    Ok(if run.divergences.is_empty() { OK } else { REFUTED })
}

/// The catalog entry each fixture was built for.
fn home_entry(name: FixtureName) -> CatalogEntry {
    verdict_table()
        .into_iter()
        .find(|e| e.fixture.as_ref().is_some_and(|f| f.name == name && f.is_identity()))
        .expect("every fixture has an identity use in the catalog")
}

fn fixtures(name: Option<FixtureName>, out_dir: &Path) -> Result<u8, Failure> {
    let names = match name {
        Some(n) => vec![n],
        None => FixtureName::ALL.to_vec(),
    };
    std::fs::create_dir_all(out_dir).map_err(|e| io_failure(out_dir, e))?;
    let mut out = String::new();
    for name in names {
        let entry = home_entry(name);
        let report = confirm_fixture(&entry)?;
        let model_path = out_dir.join(format!("{name}.json"));
        std::fs::write(&model_path, encode_model(&fixture(name).model)).map_err(|e| io_failure(&model_path, e))?;
        let report_path = out_dir.join(format!("{name}.report.json"));
        let mut text = serde_json::to_string_pretty(&report).map_err(|e| Failure(INTERNAL, e.to_string()))?;
        text.push('\n');
        std::fs::write(&report_path, text).map_err(|e| io_failure(&report_path, e))?;
        writeln!(out, "{name}: {} for {}", report.outcome.label(), entry.id()).unwrap();
        writeln!(out, "  {}", fixture(name).labels).unwrap();
        writeln!(out, "  wrote {} and {}", model_path.display(), report_path.display()).unwrap();
    }
    print!("{out}");
    Ok(OK)
}

fn properties(suite: SuiteArg, args: &SearchArgs) -> Result<u8, Failure> {
    let suites = match suite {
        SuiteArg::Req => vec![Suite::Req],
        SuiteArg::Diagram => vec![Suite::Diagram],
        SuiteArg::Remarks => vec![Suite::Remarks],
        SuiteArg::Contingency => vec![Suite::Contingency],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> =
        suites.into_iter().map(|s| run_suite(s, &args.bounds, args.options())).collect::<Result<_, _>>()?;
    let human = emit_json(&reports, args.json.as_deref())?;
    if human {
        let mut out = String::new();
        for r in &reports {
            writeln!(out, "suite {} over {} ({} models, {} checks)", r.suite, r.bounds, r.models, r.checks).unwrap();
            for l in &r.laws {
                match &l.counterexample {
                    None => writeln!(out, "  pass  {:<18} {:>10} checks  {}", l.name, l.checks, l.formula).unwrap(),
                    Some(c) => writeln!(
                        out,
                        "  FAIL  {:<18} {}  at model #{} with {}: {}",
                        l.name,
                        l.formula,
                        c.model_index,
                        c.instance,
                        model_text(&c.model)
                    )
                    .unwrap(),
                }
            }
            for w in &r.witnesses {
                match &w.witness {
                    Some(m) => writeln!(out, "  wit   {:<18} {}  {}", w.name, w.formula, model_text(m)).unwrap(),
                    None => writeln!(out, "  NONE  {:<18} {}  no witness within bounds", w.name, w.formula).unwrap(),
                }
            }
        }
        let total: u64 = reports.iter().map(|r| r.checks).sum();
        writeln!(out, "total checks {total}").unwrap();
        print!("{out}");
    }
    Ok(if reports.iter().all(SuiteReport::passed) { OK } else { REFUTED })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval { model, statements } => eval(&model, &statements),
        Command::Check { mood_pattern, search } => check(&mood_pattern, &search),
        Command::VerifyCatalog { scope, search } => verify_catalog(scope, &search),
        Command::Fixtures { name, all: _, out } => fixtures(name, &out),
        Command::Properties { suite, search } => properties(suite, &search),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("apodeixis: {message}");
            ExitCode::from(code)
        }
    }
}
