//! Exhaustive law checks and witness searches over enumerated models.
//!
//! A suite is a list of laws, each quantified over every model of the bounds
//! and every ordered pair of terms (plain and complemented) built from the
//! bound concepts, and a list of witnesses, each the least model satisfying
//! some property. One check is one evaluation of one law instance: for
//! pointwise laws one individual counts as one instance.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::enumerate::{EnumerationBounds, ModelSpace};
use crate::model::{concept, Model};
use crate::search::{find_model, SearchError, SearchOptions};
use crate::semantics::Polarity::{Negative, Positive};
use crate::semantics::{
    analytic_a, atom, contingent, diagram_expr, holds, micro_candidate, Atom, DiagramExpr, Polarity, SemanticsError,
};
use crate::statement::{Modality, Relation, Statement, Term};

type Eval = Result<bool, SemanticsError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Req,
    Diagram,
    Remarks,
    Contingency,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Req, Suite::Diagram, Suite::Remarks, Suite::Contingency];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Req => "req",
            Suite::Diagram => "diagram",
            Suite::Remarks => "remarks",
            Suite::Contingency => "contingency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Copy, Clone)]
enum Shape {
    /// `∀S ∀P`
    Pair(fn(&Model, Term, Term) -> Eval),
    /// `∀x ∀S ∀P`
    PointPair(fn(&Model, usize, Term, Term) -> Eval),
    /// `∀x ∀P`
    Point(fn(&Model, usize, Term) -> Eval),
    /// `∀P`
    Single(fn(&Model, Term) -> Eval),
}

#[derive(Copy, Clone)]
pub struct Law {
    pub name: &'static str,
    /// The law written out for `S = B`, `P = A`.
    pub formula: &'static str,
    shape: Shape,
}

#[derive(Copy, Clone)]
pub struct Witness {
    pub name: &'static str,
    pub formula: &'static str,
    property: fn(&Model) -> Eval,
}

fn st(m: Modality, s: Term, r: Relation, p: Term) -> Statement {
    Statement::new(m, s, r, p).expect("suite statements are well-formed")
}

fn n(m: &Model, s: Term, r: Relation, p: Term) -> Eval {
    holds(m, &st(Modality::Necessary, s, r, p))
}

fn x(m: &Model, s: Term, r: Relation, p: Term) -> Eval {
    holds(m, &st(Modality::Assertoric, s, r, p))
}

fn d(m: &Model, i: u8, s: Term, p: Term) -> Eval {
    diagram_expr(m, &DiagramExpr::new(i, s, p)?)
}

fn implies(a: Eval, b: impl FnOnce() -> Eval) -> Eval {
    Ok(!a? || b()?)
}

fn iff(a: Eval, b: Eval) -> Eval {
    Ok(a? == b?)
}

/// `∃x Sx`
fn exists(m: &Model, s: Term) -> Eval {
    some_x(m, |i| is(m, i, s))
}

fn cand(m: &Model, pol: Polarity, i: u8, x: usize, p: Term) -> Eval {
    micro_candidate(m, pol, i, x, &p)
}

fn is(m: &Model, x: usize, p: Term) -> Eval {
    atom(m, &Atom::Is(x, p))
}

use Relation::{A, E, I, O};

const REQ_LAWS: [Law; 8] = [
    Law {
        name: "REQ1-a",
        formula: "N(BaA) ⟹ BaA",
        shape: Shape::Pair(|m, s, p| implies(n(m, s, A, p), || x(m, s, A, p))),
    },
    Law {
        name: "REQ1-e",
        formula: "N(BeA) ⟹ BeA",
        shape: Shape::Pair(|m, s, p| implies(n(m, s, E, p), || x(m, s, E, p))),
    },
    Law {
        name: "REQ1-i",
        formula: "N(BiA) ⟹ BiA",
        shape: Shape::Pair(|m, s, p| implies(n(m, s, I, p), || x(m, s, I, p))),
    },
    Law {
        name: "REQ1-o",
        formula: "N(BoA) ⟹ BoA",
        shape: Shape::Pair(|m, s, p| implies(n(m, s, O, p), || x(m, s, O, p))),
    },
    Law {
        name: "REQ2-e", formula: "N(BeA) ⟺ N(AeB)", shape: Shape::Pair(|m, s, p| iff(n(m, s, E, p), n(m, p, E, s)))
    },
    Law {
        name: "REQ2-i", formula: "N(BiA) ⟺ N(AiB)", shape: Shape::Pair(|m, s, p| iff(n(m, s, I, p), n(m, p, I, s)))
    },
    Law {
        name: "REQ3-a",
        formula: "∃x Bx ∧ N(BaA) ⟹ N(BiA)",
        shape: Shape::Pair(|m, s, p| implies(Ok(exists(m, s)? && n(m, s, A, p)?), || n(m, s, I, p))),
    },
    Law {
        name: "REQ3-e",
        formula: "∃x Bx ∧ N(BeA) ⟹ N(BoA)",
        shape: Shape::Pair(|m, s, p| implies(Ok(exists(m, s)? && n(m, s, E, p)?), || n(m, s, O, p))),
    },
];

const DIAG_LAWS: [Law; 8] = [
    Law {
        name: "DIAG (1)⟹(2)",
        formula: "(1) ⟹ (2)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 1, s, p), || d(m, 2, s, p))),
    },
    Law {
        name: "DIAG (1)⟹(3)",
        formula: "(1) ⟹ (3)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 1, s, p), || d(m, 3, s, p))),
    },
    Law {
        name: "DIAG (3)⟹(4)",
        formula: "(3) ⟹ (4)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 3, s, p), || d(m, 4, s, p))),
    },
    Law {
        name: "DIAG (2)⟹(4)",
        formula: "(2) ⟹ (4)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 2, s, p), || d(m, 4, s, p))),
    },
    Law {
        name: "DIAG (5)⟹(6)",
        formula: "(5) ⟹ (6)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 5, s, p), || d(m, 6, s, p))),
    },
    Law {
        name: "DIAG (4)⟹(6)",
        formula: "(4) ⟹ (6)",
        shape: Shape::Pair(|m, s, p| implies(d(m, 4, s, p), || d(m, 6, s, p))),
    },
    Law {
        name: "DIAG N(o)",
        formula: "N(BoA) ⟺ (2) ∨ (3)",
        shape: Shape::Pair(|m, s, p| iff(n(m, s, O, p), Ok(d(m, 2, s, p)? || d(m, 3, s, p)?))),
    },
    Law { name: "DIAG o", formula: "BoA ⟺ (6)", shape: Shape::Pair(|m, s, p| iff(x(m, s, O, p), d(m, 6, s, p))) },
];

const REMARK_LAWS: [Law; 1] =
    [Law { name: "REM tautology", formula: "AaA", shape: Shape::Single(|m, p| x(m, p, A, p)) }];

fn k(m: &Model, modality: Modality, s: Term, r: Relation, p: Term) -> Eval {
    holds(m, &st(modality, s, r, p))
}

const CONTINGENCY_LAWS: [Law; 11] = [
    Law {
        name: "K-EQ",
        formula: "K(BaA) ⟺ K(BeA)",
        shape: Shape::Pair(|m, s, p| iff(k(m, Modality::Contingent, s, A, p), k(m, Modality::Contingent, s, E, p))),
    },
    Law {
        name: "K-EQ amp",
        formula: "Kamp(BaA) ⟺ Kamp(BeA)",
        shape: Shape::Pair(|m, s, p| {
            iff(k(m, Modality::AmpliatedContingent, s, A, p), k(m, Modality::AmpliatedContingent, s, E, p))
        }),
    },
    Law {
        name: "K-EQ pointwise",
        formula: "KAx ⟺ K(¬A)x",
        shape: Shape::Point(|m, x, p| iff(contingent(m, x, &p), contingent(m, x, &p.negated()))),
    },
    Law {
        name: "MONO pos(2)",
        formula: "BaA ∧ pos2(x,B) ⟹ pos2(x,A)",
        shape: Shape::PointPair(|m, x, s, p| {
            implies(Ok(super_x(m, s, p)? && cand(m, Positive, 2, x, s)?), || cand(m, Positive, 2, x, p))
        }),
    },
    Law {
        name: "MONO neg(2)",
        formula: "BaA ∧ neg2(x,A) ⟹ neg2(x,B)",
        shape: Shape::PointPair(|m, x, s, p| {
            implies(Ok(super_x(m, s, p)? && cand(m, Negative, 2, x, p)?), || cand(m, Negative, 2, x, s))
        }),
    },
    Law {
        name: "pos(1)⟹pos(3)",
        formula: "MAx ⟹ ∃y(MAy ∧ M(x=y))",
        shape: Shape::Point(|m, x, p| implies(cand(m, Positive, 1, x, p), || cand(m, Positive, 3, x, p))),
    },
    Law {
        name: "pos(2)⟹pos(3)",
        formula: "∃y(Ay ∧ M(x=y)) ⟹ ∃y(MAy ∧ M(x=y))",
        shape: Shape::Point(|m, x, p| implies(cand(m, Positive, 2, x, p), || cand(m, Positive, 3, x, p))),
    },
    Law {
        name: "neg(1)⟹neg(3)",
        formula: "M(¬Ax) ⟹ ∃y(M(¬Ay) ∧ M(x=y))",
        shape: Shape::Point(|m, x, p| implies(cand(m, Negative, 1, x, p), || cand(m, Negative, 3, x, p))),
    },
    Law {
        name: "neg(2)⟹neg(3)",
        formula: "∃y(¬Ay ∧ M(x=y)) ⟹ ∃y(M(¬Ay) ∧ M(x=y))",
        shape: Shape::Point(|m, x, p| implies(cand(m, Negative, 2, x, p), || cand(m, Negative, 3, x, p))),
    },
    Law {
        name: "is ⟹ pos",
        formula: "Ax ⟹ pos1 ∧ pos2 ∧ pos3",
        shape: Shape::Point(|m, x, p| {
            implies(is(m, x, p), || {
                Ok(cand(m, Positive, 1, x, p)? && cand(m, Positive, 2, x, p)? && cand(m, Positive, 3, x, p)?)
            })
        }),
    },
    Law {
        name: "is not ⟹ neg",
        formula: "¬Ax ⟹ neg1 ∧ neg2 ∧ neg3",
        shape: Shape::Point(|m, x, p| {
            implies(Ok(!is(m, x, p)?), || {
                Ok(cand(m, Negative, 1, x, p)? && cand(m, Negative, 2, x, p)? && cand(m, Negative, 3, x, p)?)
            })
        }),
    },
];

/// `∀y(By ⟹ Ay)`
fn super_x(m: &Model, s: Term, p: Term) -> Eval {
    x(m, s, A, p)
}

fn b() -> Term {
    Term::plain(concept('B'))
}

fn a() -> Term {
    Term::plain(concept('A'))
}

fn some_x(m: &Model, f: impl Fn(usize) -> Eval) -> Eval {
    for i in 0..m.individuals().len() {
        if f(i)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn xor(p: Eval, q: Eval) -> Eval {
    Ok(p? != q?)
}

fn only(p: Eval, q: Eval) -> Eval {
    Ok(p? && !q?)
}

const DIAG_WITNESSES: [Witness; 9] = [
    Witness { name: "DIAG-NEG", formula: "(5) ∧ ¬N(BoA)", property: |m| only(d(m, 5, b(), a()), n(m, b(), O, a())) },
    Witness { name: "(2) ⇏ (1)", formula: "(2) ∧ ¬(1)", property: |m| only(d(m, 2, b(), a()), d(m, 1, b(), a())) },
    Witness { name: "(3) ⇏ (1)", formula: "(3) ∧ ¬(1)", property: |m| only(d(m, 3, b(), a()), d(m, 1, b(), a())) },
    Witness { name: "(2) ⇏ (3)", formula: "(2) ∧ ¬(3)", property: |m| only(d(m, 2, b(), a()), d(m, 3, b(), a())) },
    Witness { name: "(3) ⇏ (2)", formula: "(3) ∧ ¬(2)", property: |m| only(d(m, 3, b(), a()), d(m, 2, b(), a())) },
    Witness {
        name: "(4) ⇏ (2) ∨ (3)",
        formula: "(4) ∧ ¬N(BoA)",
        property: |m| only(d(m, 4, b(), a()), n(m, b(), O, a())),
    },
    Witness { name: "(6) ⇏ (4)", formula: "(6) ∧ ¬(4)", property: |m| only(d(m, 6, b(), a()), d(m, 4, b(), a())) },
    Witness { name: "(6) ⇏ (5)", formula: "(6) ∧ ¬(5)", property: |m| only(d(m, 6, b(), a()), d(m, 5, b(), a())) },
    Witness { name: "(4) ⇏ (5)", formula: "(4) ∧ ¬(5)", property: |m| only(d(m, 4, b(), a()), d(m, 5, b(), a())) },
];

const REMARK_WITNESSES: [Witness; 6] = [
    Witness {
        name: "REM N(e) vs N(a~)",
        formula: "N(BeA) ⇎ N(Ba¬A)",
        property: |m| xor(n(m, b(), E, a()), n(m, b(), A, a().negated())),
    },
    Witness {
        name: "REM N(o) vs N(i~)",
        formula: "N(BoA) ⇎ N(Bi¬A)",
        property: |m| xor(n(m, b(), O, a()), n(m, b(), I, a().negated())),
    },
    Witness {
        name: "REM contraposition",
        formula: "N(BaA) ⇎ N(¬Aa¬B)",
        property: |m| xor(n(m, b(), A, a()), n(m, a().negated(), A, b().negated())),
    },
    Witness { name: "REM N(AaA) fails", formula: "¬N(AaA)", property: |m| Ok(!n(m, a(), A, a())?) },
    Witness {
        name: "analytic without N",
        formula: "∀t B_t ⊆ A_t ∧ ¬N(BaA)",
        property: |m| only(analytic_a(m, &b(), &a()), n(m, b(), A, a())),
    },
    Witness {
        name: "N without analytic",
        formula: "N(BaA) ∧ ¬∀t B_t ⊆ A_t",
        property: |m| only(n(m, b(), A, a()), analytic_a(m, &b(), &a())),
    },
];

const REQ_WITNESSES: [Witness; 1] = [Witness {
    name: "REQ3 needs non-emptiness",
    formula: "N(BaA) ∧ ¬N(BiA)",
    property: |m| only(n(m, b(), A, a()), n(m, b(), I, a())),
}];

/// `BaA ∧ ∃x(neg3(x,A) ∧ ¬neg3(x,B))`: the shape of every Camestres XK
/// countermodel.
pub fn neg3_not_monotone(m: &Model) -> Eval {
    Ok(x(m, b(), A, a())? && some_x(m, |i| only(cand(m, Negative, 3, i, a()), cand(m, Negative, 3, i, b())))?)
}

const CONTINGENCY_WITNESSES: [Witness; 6] = [
    Witness {
        name: "pos(1) ⇏ pos(2)",
        formula: "∃x(MAx ∧ ¬∃y(Ay ∧ M(x=y)))",
        property: |m| some_x(m, |i| only(cand(m, Positive, 1, i, a()), cand(m, Positive, 2, i, a()))),
    },
    Witness {
        name: "pos(2) ⇏ pos(1)",
        formula: "∃x(∃y(Ay ∧ M(x=y)) ∧ ¬MAx)",
        property: |m| some_x(m, |i| only(cand(m, Positive, 2, i, a()), cand(m, Positive, 1, i, a()))),
    },
    Witness {
        name: "neg(1) ⇏ neg(2)",
        formula: "∃x(M(¬Ax) ∧ ¬∃y(¬Ay ∧ M(x=y)))",
        property: |m| some_x(m, |i| only(cand(m, Negative, 1, i, a()), cand(m, Negative, 2, i, a()))),
    },
    Witness {
        name: "neg(2) ⇏ neg(1)",
        formula: "∃x(∃y(¬Ay ∧ M(x=y)) ∧ ¬M(¬Ax))",
        property: |m| some_x(m, |i| only(cand(m, Negative, 2, i, a()), cand(m, Negative, 1, i, a()))),
    },
    Witness {
        name: "neg(3) not monotone", formula: "BaA ∧ ∃x(neg3(x,A) ∧ ¬neg3(x,B))", property: neg3_not_monotone
    },
    Witness {
        name: "K vs Kamp",
        formula: "K(BaA) ⇎ Kamp(BaA)",
        property: |m| xor(k(m, Modality::Contingent, b(), A, a()), k(m, Modality::AmpliatedContingent, b(), A, a())),
    },
];

pub fn laws(suite: Suite) -> &'static [Law] {
    match suite {
        Suite::Req => &REQ_LAWS,
        Suite::Diagram => &DIAG_LAWS,
        Suite::Remarks => &REMARK_LAWS,
        Suite::Contingency => &CONTINGENCY_LAWS,
    }
}

pub fn witnesses(suite: Suite) -> &'static [Witness] {
    match suite {
        Suite::Req => &REQ_WITNESSES,
        Suite::Diagram => &DIAG_WITNESSES,
        Suite::Remarks => &REMARK_WITNESSES,
        Suite::Contingency => &CONTINGENCY_WITNESSES,
    }
}

/// Every plain and complemented term over the bound concepts.
pub fn terms(bounds: &EnumerationBounds) -> Vec<Term> {
    let mut names = bounds.concept_names.clone();
    names.sort();
    names.into_iter().flat_map(|c| [Term::plain(c), Term::complement(c)]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub model_index: u64,
    /// Term and individual instantiation that fails.
    pub instance: String,
    pub model: Model,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub name: &'static str,
    pub formula: &'static str,
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub name: &'static str,
    pub formula: &'static str,
    pub models_checked: u64,
    pub witness: Option<Model>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bounds: EnumerationBounds,
    pub models: u64,
    pub checks: u64,
    pub laws: Vec<LawReport>,
    pub witnesses: Vec<WitnessReport>,
}

impl SuiteReport {
    /// All laws hold and every witness was found.
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.counterexample.is_none()) && self.witnesses.iter().all(|w| w.witness.is_some())
    }
}

#[derive(Default, Clone)]
struct Tally {
    checks: u64,
    first_failure: Option<(u64, String)>,
}

fn check_law(law: &Law, m: &Model, terms: &[Term], tally: &mut Tally, index: u64) -> Result<(), SemanticsError> {
    let fail = |instance: String, tally: &mut Tally| {
        if tally.first_failure.as_ref().is_none_or(|(i, _)| index < *i) {
            tally.first_failure = Some((index, instance));
        }
    };
    match law.shape {
        Shape::Pair(f) => {
            for &s in terms {
                for &p in terms {
                    tally.checks += 1;
                    if !f(m, s, p)? {
                        fail(format!("S={s} P={p}"), tally);
                        return Ok(());
                    }
                }
            }
        }
        Shape::PointPair(f) => {
            for &s in terms {
                for &p in terms {
                    for (i, xi) in m.individuals().iter().enumerate() {
                        tally.checks += 1;
                        if !f(m, i, s, p)? {
                            fail(format!("S={s} P={p} x={xi}"), tally);
                            return Ok(());
                        }
                    }
                }
            }
        }
        Shape::Single(f) => {
            for &p in terms {
                tally.checks += 1;
                if !f(m, p)? {
                    fail(format!("P={p}"), tally);
                    return Ok(());
                }
            }
        }
        Shape::Point(f) => {
            for &p in terms {
                for (i, xi) in m.individuals().iter().enumerate() {
                    tally.checks += 1;
                    if !f(m, i, p)? {
                        fail(format!("P={p} x={xi}"), tally);
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

const CHUNK: u64 = 1 << 10;

/// Checks every law of `suite` on every model of `bounds` and searches each
/// witness. Law results are independent of the thread count.
pub fn run_suite(suite: Suite, bounds: &EnumerationBounds, options: SearchOptions) -> Result<SuiteReport, SearchError> {
    let space = ModelSpace::with_limit(bounds, options.max_models)?;
    let terms = terms(bounds);
    let laws = laws(suite);
    let len = space.len();
    let chunks = len.div_ceil(CHUNK);
    let next = AtomicU64::new(0);
    let merged: Mutex<(Vec<Tally>, Option<SemanticsError>)> = Mutex::new((vec![Tally::default(); laws.len()], None));

    let work = || {
        let mut local = vec![Tally::default(); laws.len()];
        let mut error = None;
        'chunks: loop {
            let c = next.fetch_add(1, Ordering::Relaxed);
            if c >= chunks {
                break;
            }
            let start = c * CHUNK;
            let end = (start + CHUNK).min(len);
            for (index, model) in (start..end).zip(space.range(start..end)) {
                for (law, tally) in laws.iter().zip(local.iter_mut()) {
                    if let Err(e) = check_law(law, &model, &terms, tally, index) {
                        error = Some(e);
                        break 'chunks;
                    }
                }
            }
        }
        let mut guard = merged.lock().expect("no worker panics while holding the lock");
        for (total, part) in guard.0.iter_mut().zip(local) {
            total.checks += part.checks;
            if let Some((i, s)) = part.first_failure {
                if total.first_failure.as_ref().is_none_or(|(j, _)| i < *j) {
                    total.first_failure = Some((i, s));
                }
            }
        }
        if guard.1.is_none() {
            guard.1 = error;
        }
    };
    let workers = match options.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
    .clamp(1, chunks.max(1) as usize);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let (tallies, error) = merged.into_inner().expect("workers finished");
    if let Some(e) = error {
        return Err(e.into());
    }
    let law_reports: Vec<LawReport> = laws
        .iter()
        .zip(tallies)
        .map(|(law, t)| LawReport {
            name: law.name,
            formula: law.formula,
            checks: t.checks,
            counterexample: t.first_failure.map(|(i, instance)| Counterexample {
                model_index: i,
                instance,
                model: space.model_at(i),
            }),
        })
        .collect();

    let mut witness_reports = Vec::new();
    for w in witnesses(suite) {
        let found = find_model(bounds, options, w.property)?;
        witness_reports.push(WitnessReport {
            name: w.name,
            formula: w.formula,
            models_checked: found.models_checked(),
            witness: found.hit.map(|(_, m)| m),
        });
    }

    Ok(SuiteReport {
        suite,
        bounds: bounds.clone(),
        models: len,
        checks: law_reports.iter().map(|l| l.checks).sum(),
        laws: law_reports,
        witnesses: witness_reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_bounds() {
        let bounds = EnumerationBounds::abc(&[1, 2]);
        for suite in Suite::ALL {
            let r = run_suite(suite, &bounds, SearchOptions::threads(2)).unwrap();
            for l in &r.laws {
                assert!(l.counterexample.is_none(), "{suite} {}: {:?}", l.name, l.counterexample);
            }
        }
    }

    #[test]
    fn check_count_independent_of_threads() {
        let bounds = EnumerationBounds::abc(&[2, 1]);
        let one = run_suite(Suite::Contingency, &bounds, SearchOptions::threads(1)).unwrap();
        let many = run_suite(Suite::Contingency, &bounds, SearchOptions::threads(5)).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&many).unwrap());
    }

    #[test]
    fn broken_law_is_reported_at_least_index() {
        let law = Law { name: "false", formula: "⊥", shape: Shape::Pair(|m, _, _| Ok(m.individuals().is_empty())) };
        let bounds = EnumerationBounds::abc(&[1, 1]);
        let space = ModelSpace::new(&bounds).unwrap();
        let mut tally = Tally::default();
        for (i, m) in space.iter().enumerate() {
            check_law(&law, &m, &terms(&bounds), &mut tally, i as u64).unwrap();
        }
        let (index, _) = tally.first_failure.unwrap();
        assert!(!space.model_at(index).individuals().is_empty());
        assert!((0..index).all(|i| space.model_at(i).individuals().is_empty()));
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }
}
