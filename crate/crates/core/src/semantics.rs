//! Truth in a model.
//!
//! Atoms, with `x, y` individuals and `t` ranging over parameters:
//!
//! | atom       | meaning                 |
//! |------------|-------------------------|
//! | `Ax`       | `x_0 ∈ A_0`             |
//! | `N(Ax)`    | `x_t ∈ A_t` for all `t` |
//! | `M(Ax)`    | `x_t ∈ A_t` for some `t`|
//! | `N(x≠y)`   | `x_t ≠ y_t` for all `t` |
//! | `M(x=y)`   | `x_t = y_t` for some `t`|
//!
//! Everything else is quantifier expansion over the model's individuals,
//! following the relation schemata documented on [`holds`].

use thiserror::Error;

use crate::model::{ConceptName, Extent, Individual, Model};
use crate::statement::{Modality, Relation, Statement, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("concept {0} does not occur in the model")]
    UnknownConcept(ConceptName),
    #[error("individual #{0} does not exist in the model")]
    UnknownIndividual(usize),
    #[error("diagram expressions are numbered 1 to 6, got {0}")]
    DiagramIndex(u8),
    #[error("micro-structure candidates are numbered 1 to 3, got {0}")]
    CandidateIndex(u8),
}

/// An elementary formula about individuals, referenced by their position in
/// [`Model::individuals`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Is(usize, Term),
    IsNot(usize, Term),
    NecessarilyIs(usize, Term),
    PossiblyIs(usize, Term),
    PossiblyIsNot(usize, Term),
    NecessarilyDistinct(usize, usize),
    PossiblyEqual(usize, usize),
}

/// One node of the implication diagram around `N(SoP)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DiagramExpr {
    index: u8,
    pub subject: Term,
    pub predicate: Term,
}

impl DiagramExpr {
    pub fn new(index: u8, subject: Term, predicate: Term) -> Result<Self, SemanticsError> {
        if (1..=6).contains(&index) {
            Ok(Self { index, subject, predicate })
        } else {
            Err(SemanticsError::DiagramIndex(index))
        }
    }

    pub fn index(&self) -> u8 {
        self.index
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A term resolved against a model's extents.
#[derive(Copy, Clone)]
struct Ext<'m> {
    extents: &'m [Extent],
    complemented: bool,
}

impl Ext<'_> {
    fn contains(self, t: usize, element: u8) -> bool {
        self.extents.get(t).copied().unwrap_or_default().contains(element) != self.complemented
    }

    /// `Px`
    fn is(self, x: &Individual) -> bool {
        self.contains(0, x.at(0))
    }

    /// `N(Px)`
    fn nec(self, x: &Individual) -> bool {
        x.components().iter().enumerate().all(|(t, &e)| self.contains(t, e))
    }

    /// `M(Px)`
    fn poss(self, x: &Individual) -> bool {
        x.components().iter().enumerate().any(|(t, &e)| self.contains(t, e))
    }

    /// `M(¬Px)`
    fn poss_not(self, x: &Individual) -> bool {
        !self.nec(x)
    }
}

/// `N(x≠y)`
fn nec_distinct(x: &Individual, y: &Individual) -> bool {
    x.components().iter().zip(y.components()).all(|(a, b)| a != b)
}

/// `M(x=y)`
fn poss_equal(x: &Individual, y: &Individual) -> bool {
    !nec_distinct(x, y)
}

/// Evaluation context for one model.
struct Scope<'m> {
    model: &'m Model,
}

impl<'m> Scope<'m> {
    fn term(&self, term: Term) -> Result<Ext<'m>, SemanticsError> {
        let extents = self.model.extents(term.base).ok_or(SemanticsError::UnknownConcept(term.base))?;
        Ok(Ext { extents, complemented: term.complemented })
    }

    fn individual(&self, i: usize) -> Result<&'m Individual, SemanticsError> {
        self.model.individuals().get(i).ok_or(SemanticsError::UnknownIndividual(i))
    }

    fn all(&self, f: impl FnMut(&Individual) -> bool) -> bool {
        self.model.individuals().iter().all(f)
    }

    fn any(&self, f: impl FnMut(&Individual) -> bool) -> bool {
        self.model.individuals().iter().any(f)
    }

    /// `∀y(Py ⟹ N(x≠y))`: x is necessarily apart from every P.
    fn apart_from_all(&self, x: &Individual, p: Ext) -> bool {
        self.all(|y| !p.is(y) || nec_distinct(x, y))
    }

    /// `∀y(N(Py) ⟹ N(x≠y))`
    fn apart_from_necessary(&self, x: &Individual, p: Ext) -> bool {
        self.all(|y| !p.nec(y) || nec_distinct(x, y))
    }

    /// Positive micro-structure candidates for `x` and `P`.
    fn pos(&self, index: u8, x: &Individual, p: Ext) -> bool {
        match index {
            1 => p.poss(x),
            2 => self.any(|y| p.is(y) && poss_equal(x, y)),
            _ => self.any(|y| p.poss(y) && poss_equal(x, y)),
        }
    }

    /// Negative micro-structure candidates for `x` and `P`.
    fn neg(&self, index: u8, x: &Individual, p: Ext) -> bool {
        match index {
            1 => p.poss_not(x),
            2 => self.any(|y| !p.is(y) && poss_equal(x, y)),
            _ => self.any(|y| p.poss_not(y) && poss_equal(x, y)),
        }
    }

    /// `KPx :⟺ ∃y(Py ∧ M(x=y)) ∧ ∃z(M(¬Pz) ∧ M(x=z))`, insensitive to
    /// complementing `P` since `KPx ⟺ K(¬P)x`.
    fn contingent(&self, x: &Individual, p: Ext) -> bool {
        let p = Ext { complemented: false, ..p };
        self.pos(2, x, p) && self.neg(3, x, p)
    }

    fn diagram(&self, index: u8, s: Ext, p: Ext) -> bool {
        match index {
            1 => self.any(|x| s.nec(x) && self.apart_from_all(x, p)),
            2 => self.any(|x| s.is(x) && self.apart_from_all(x, p)),
            3 => self.any(|x| s.nec(x) && !p.is(x) && self.apart_from_necessary(x, p)),
            4 => self.any(|x| s.is(x) && !p.is(x) && self.apart_from_necessary(x, p)),
            5 => self.any(|x| s.nec(x) && !p.is(x)),
            _ => self.any(|x| s.is(x) && !p.is(x)),
        }
    }

    fn holds(&self, st: &Statement) -> Result<bool, SemanticsError> {
        let s = self.term(st.subject())?;
        let p = self.term(st.predicate())?;
        Ok(match (st.modality(), st.relation()) {
            (Modality::Assertoric, Relation::A) => self.all(|x| !s.is(x) || p.is(x)),
            (Modality::Assertoric, Relation::E) => self.all(|x| !s.is(x) || !p.is(x)),
            (Modality::Assertoric, Relation::I) => self.any(|x| s.is(x) && p.is(x)),
            (Modality::Assertoric, Relation::O) => self.any(|x| s.is(x) && !p.is(x)),
            (Modality::Necessary, Relation::A) => self.all(|x| !s.is(x) || p.nec(x)),
            (Modality::Necessary, Relation::E) => self.all(|x| !s.is(x) || self.apart_from_all(x, p)),
            (Modality::Necessary, Relation::I) => {
                self.any(|x| s.is(x) && p.nec(x)) || self.any(|x| s.nec(x) && p.is(x))
            }
            (Modality::Necessary, Relation::O) => self.diagram(2, s, p) || self.diagram(3, s, p),
            // K(SeP) ⟺ ∀x(Sx ⟹ K(¬P)x) and K(¬P)x ⟺ KPx
            (Modality::Contingent, _) => self.all(|x| !s.is(x) || self.contingent(x, p)),
            (Modality::AmpliatedContingent, _) => self.all(|x| !self.contingent(x, s) || self.contingent(x, p)),
            (Modality::PossiblyIs, _) => self.all(|x| !s.is(x) || self.pos(2, x, p)),
            (Modality::PossiblyIsNot, _) => self.all(|x| !s.is(x) || self.neg(2, x, p)),
            (Modality::PossiblyIsNotWeak, _) => self.all(|x| !s.is(x) || self.neg(3, x, p)),
        })
    }
}

/// Truth value of an elementary formula.
pub fn atom(model: &Model, atom: &Atom) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    Ok(match *atom {
        Atom::Is(x, p) => sc.term(p)?.is(sc.individual(x)?),
        Atom::IsNot(x, p) => !sc.term(p)?.is(sc.individual(x)?),
        Atom::NecessarilyIs(x, p) => sc.term(p)?.nec(sc.individual(x)?),
        Atom::PossiblyIs(x, p) => sc.term(p)?.poss(sc.individual(x)?),
        Atom::PossiblyIsNot(x, p) => sc.term(p)?.poss_not(sc.individual(x)?),
        Atom::NecessarilyDistinct(x, y) => nec_distinct(sc.individual(x)?, sc.individual(y)?),
        Atom::PossiblyEqual(x, y) => poss_equal(sc.individual(x)?, sc.individual(y)?),
    })
}

/// Truth value of a categorical statement `S r P`.
///
/// | form       | definition                                                          |
/// |------------|---------------------------------------------------------------------|
/// | `SaP`      | `∀x(Sx ⟹ Px)`                                                        |
/// | `SeP`      | `∀x(Sx ⟹ ¬Px)`                                                       |
/// | `SiP`      | `∃x(Sx ∧ Px)`                                                        |
/// | `SoP`      | `∃x(Sx ∧ ¬Px)`                                                       |
/// | `N(SaP)`   | `∀x(Sx ⟹ N(Px))`                                                     |
/// | `N(SeP)`   | `∀x[Sx ⟹ ∀y(Py ⟹ N(x≠y))]`                                           |
/// | `N(SiP)`   | `∃x(Sx ∧ N(Px)) ∨ ∃x(N(Sx) ∧ Px)`                                    |
/// | `N(SoP)`   | diagram (2) ∨ diagram (3), see [`diagram_expr`]                      |
/// | `K(SaP)`, `K(SeP)` | `∀x(Sx ⟹ KPx)`                                              |
/// | `Kamp(SaP)`, `Kamp(SeP)` | `∀x(KSx ⟹ KPx)`                                       |
/// | `Ma2(SaP)` | `∀x(Sx ⟹ ∃y(Py ∧ M(x=y)))`                                           |
/// | `Mo2(SaP)` | `∀x(Sx ⟹ ∃y(¬Py ∧ M(x=y)))`                                          |
/// | `Mo3(SaP)` | `∀x(Sx ⟹ ∃y(M(¬Py) ∧ M(x=y)))`                                       |
///
/// with `KPx :⟺ ∃y(Py ∧ M(x=y)) ∧ ∃z(M(¬Pz) ∧ M(x=z))`.
pub fn holds(model: &Model, statement: &Statement) -> Result<bool, SemanticsError> {
    Scope { model }.holds(statement)
}

/// Diagram nodes for subject `S` and predicate `P`:
///
/// 1. `∃x[N(Sx) ∧ ∀y(Py ⟹ N(x≠y))]`
/// 2. `∃x[Sx ∧ ∀y(Py ⟹ N(x≠y))]`
/// 3. `∃x[N(Sx) ∧ ¬Px ∧ ∀y(N(Py) ⟹ N(x≠y))]`
/// 4. `∃x[Sx ∧ ¬Px ∧ ∀y(N(Py) ⟹ N(x≠y))]`
/// 5. `∃x[N(Sx) ∧ ¬Px]`
/// 6. `∃x[Sx ∧ ¬Px]`
pub fn diagram_expr(model: &Model, expr: &DiagramExpr) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    Ok(sc.diagram(expr.index, sc.term(expr.subject)?, sc.term(expr.predicate)?))
}

/// Candidates for "possibly is" (positive) and "possibly is not" (negative):
///
/// | index | positive                | negative                   |
/// |-------|-------------------------|----------------------------|
/// | 1     | `M(Px)`                 | `M(¬Px)`                   |
/// | 2     | `∃y(Py ∧ M(x=y))`       | `∃y(¬Py ∧ M(x=y))`         |
/// | 3     | `∃y(M(Py) ∧ M(x=y))`    | `∃y(M(¬Py) ∧ M(x=y))`      |
pub fn micro_candidate(
    model: &Model,
    polarity: Polarity,
    index: u8,
    x: usize,
    predicate: &Term,
) -> Result<bool, SemanticsError> {
    if !(1..=3).contains(&index) {
        return Err(SemanticsError::CandidateIndex(index));
    }
    let sc = Scope { model };
    let (x, p) = (sc.individual(x)?, sc.term(*predicate)?);
    Ok(match polarity {
        Polarity::Positive => sc.pos(index, x, p),
        Polarity::Negative => sc.neg(index, x, p),
    })
}

/// `KPx`, the two-sided contingency of `P` for individual `x`.
pub fn contingent(model: &Model, x: usize, predicate: &Term) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    Ok(sc.contingent(sc.individual(x)?, sc.term(*predicate)?))
}

/// Inclusion of `S_t` in `P_t` at every parameter `t`, checked over all world
/// elements rather than over individuals.
pub fn analytic_a(model: &Model, subject: &Term, predicate: &Term) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    let (s, p) = (sc.term(*subject)?, sc.term(*predicate)?);
    Ok(model
        .world_sizes()
        .iter()
        .enumerate()
        .all(|(t, &size)| (0..size as u8).all(|e| !s.contains(t, e) || p.contains(t, e))))
}

/// `∃x(Cx)`: some individual falls under the concept at the real parameter.
pub fn non_empty(model: &Model, concept: ConceptName) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    let c = sc.term(Term::plain(concept))?;
    Ok(sc.any(|x| c.is(x)))
}

/// `∃x[Sx ∧ ∀y(N(Py) ⟹ N(x≠y))]`: some S is necessarily apart from every
/// necessary P. Diagram node (4) without its `¬Px` conjunct.
pub fn some_apart_from_necessary(model: &Model, subject: &Term, predicate: &Term) -> Result<bool, SemanticsError> {
    let sc = Scope { model };
    let (s, p) = (sc.term(*subject)?, sc.term(*predicate)?);
    Ok(sc.any(|x| s.is(x) && sc.apart_from_necessary(x, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::concept;
    use std::collections::BTreeMap;

    fn t(c: char) -> Term {
        Term::plain(concept(c))
    }

    fn ext(e: &[u8]) -> Extent {
        e.iter().copied().collect()
    }

    /// One individual, W = [1,1]; A₀=B₀=C₀={x₀}, A₁=C₁=∅, B₁={x₁}.
    fn single() -> Model {
        let concepts = BTreeMap::from([
            (concept('A'), vec![ext(&[0]), ext(&[])]),
            (concept('B'), vec![ext(&[0]), ext(&[0])]),
            (concept('C'), vec![ext(&[0]), ext(&[])]),
        ]);
        Model::new(vec![1, 1], vec![Individual::new(vec![0, 0])], concepts).unwrap()
    }

    /// x=(0,0), y=(1,0); A₀={y₀}, B₀=C₀={x₀}, everything full at t=1.
    fn pair() -> Model {
        let concepts = BTreeMap::from([
            (concept('A'), vec![ext(&[1]), ext(&[0])]),
            (concept('B'), vec![ext(&[0]), ext(&[0])]),
            (concept('C'), vec![ext(&[0]), ext(&[0])]),
        ]);
        Model::new(vec![2, 1], vec![Individual::new(vec![0, 0]), Individual::new(vec![1, 0])], concepts).unwrap()
    }

    #[test]
    fn atoms_on_single_individual() {
        let m = single();
        assert!(atom(&m, &Atom::NecessarilyIs(0, t('B'))).unwrap());
        assert!(!atom(&m, &Atom::NecessarilyIs(0, t('A'))).unwrap());
        assert!(atom(&m, &Atom::PossiblyIsNot(0, t('A'))).unwrap());
        assert!(atom(&m, &Atom::NecessarilyIs(0, t('A').negated())).is_ok_and(|v| !v));
        assert!(!atom(&m, &Atom::NecessarilyDistinct(0, 0)).unwrap());
        assert!(atom(&m, &Atom::PossiblyEqual(0, 0)).unwrap());
    }

    #[test]
    fn atoms_on_pair() {
        let m = pair();
        assert!(atom(&m, &Atom::PossiblyEqual(0, 1)).unwrap());
        assert!(!atom(&m, &Atom::NecessarilyDistinct(0, 1)).unwrap());
        assert!(atom(&m, &Atom::IsNot(0, t('A'))).unwrap());
        assert!(atom(&m, &Atom::PossiblyIs(0, t('A'))).unwrap());
    }

    #[test]
    fn atom_errors() {
        let m = single();
        assert_eq!(atom(&m, &Atom::Is(3, t('A'))), Err(SemanticsError::UnknownIndividual(3)));
        assert_eq!(atom(&m, &Atom::Is(0, t('Q'))), Err(SemanticsError::UnknownConcept(concept('Q'))));
        assert_eq!(micro_candidate(&m, Polarity::Positive, 4, 0, &t('A')), Err(SemanticsError::CandidateIndex(4)));
        assert_eq!(DiagramExpr::new(0, t('A'), t('B')), Err(SemanticsError::DiagramIndex(0)));
        assert_eq!(DiagramExpr::new(7, t('A'), t('B')), Err(SemanticsError::DiagramIndex(7)));
    }

    #[test]
    fn statements_on_single_individual() {
        let m = single();
        let (a, b, c) = (t('A'), t('B'), t('C'));
        assert!(holds(&m, &Statement::assertoric(b, Relation::A, a)).unwrap());
        assert!(holds(&m, &Statement::necessary(c, Relation::A, b)).unwrap());
        assert!(!holds(&m, &Statement::necessary(c, Relation::A, a)).unwrap());
        // x witnesses both halves itself: Ax, and x₁ ∉ A₁ gives M(¬Ax)
        assert!(contingent(&m, 0, &a).unwrap());
        assert!(!contingent(&m, 0, &b).unwrap());
    }

    #[test]
    fn vacuous_universal_over_empty_subject() {
        let concepts = BTreeMap::from([(concept('A'), vec![ext(&[]), ext(&[])])]);
        let m = Model::new(vec![2, 2], vec![Individual::new(vec![0, 1])], concepts).unwrap();
        let a = t('A');
        assert!(holds(&m, &Statement::necessary(a, Relation::E, a)).unwrap());
        assert!(holds(&m, &Statement::necessary(a, Relation::A, a)).unwrap());
        assert!(!holds(&m, &Statement::necessary(a, Relation::I, a)).unwrap());
    }

    #[test]
    fn necessary_o_is_union_of_diagram_nodes() {
        let m = pair();
        let (a, b) = (t('A'), t('B'));
        let d = |i| diagram_expr(&m, &DiagramExpr::new(i, b, a).unwrap()).unwrap();
        assert_eq!(holds(&m, &Statement::necessary(b, Relation::O, a)).unwrap(), d(2) || d(3));
        assert_eq!(holds(&m, &Statement::assertoric(b, Relation::O, a)).unwrap(), d(6));
        // N(BeA) fails because M(x=y) with x∈B, y∈A
        assert!(!holds(&m, &Statement::necessary(b, Relation::E, a)).unwrap());
        assert!(holds(&m, &Statement::assertoric(b, Relation::E, a)).unwrap());
    }

    #[test]
    fn contingency_is_complement_insensitive() {
        let m = pair();
        for x in 0..2 {
            for c in ['A', 'B', 'C'] {
                assert_eq!(contingent(&m, x, &t(c)).unwrap(), contingent(&m, x, &t(c).negated()).unwrap());
            }
        }
        // x=(0,0): A at x? no. pos2 via y (y∈A₀, M(x=y)) and M(¬Ax) → contingent
        assert!(contingent(&m, 0, &t('A')).unwrap());
    }

    #[test]
    fn analytic_inclusion() {
        let m = single();
        assert!(analytic_a(&m, &t('C'), &t('B')).unwrap());
        assert!(analytic_a(&m, &t('A'), &t('A')).unwrap());
        assert!(!analytic_a(&m, &t('B'), &t('A')).unwrap());
    }

    #[test]
    fn non_empty_counts_individuals_not_world_elements() {
        let concepts = BTreeMap::from([(concept('B'), vec![ext(&[1]), ext(&[0])])]);
        let m = Model::new(vec![2, 1], vec![Individual::new(vec![0, 0])], concepts).unwrap();
        assert!(!non_empty(&m, concept('B')).unwrap());
    }
}
