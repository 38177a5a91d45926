use apodeixis::catalog::{verdict_table, Mood};
use apodeixis::{parse_mood, parse_statement, ConceptName, Modality, Relation, Statement, Term};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    (prop::char::range('A', 'Z'), any::<bool>()).prop_map(|(c, neg)| {
        let name = ConceptName::new(c).unwrap();
        if neg {
            Term::complement(name)
        } else {
            Term::plain(name)
        }
    })
}

fn statement() -> impl Strategy<Value = Statement> {
    (prop::sample::select(Modality::ALL.to_vec()), prop::sample::select(Relation::ALL.to_vec()), term(), term())
        .prop_filter("supported form", |(m, r, _, _)| m.supports(*r))
        .prop_map(|(m, r, s, p)| Statement::new(m, s, r, p).unwrap())
}

proptest! {
    #[test]
    fn print_then_parse(st in statement()) {
        prop_assert_eq!(parse_statement(&st.to_string()).unwrap(), st);
    }

    #[test]
    fn spaced_text_parses_to_the_same_statement(st in statement()) {
        let body = format!(" {} {} {} ", st.subject(), st.relation().letter(), st.predicate()).replace('~', "~ ");
        let spaced = match st.modality() {
            Modality::Assertoric => body,
            m => format!("  {} ( {body} )\t", m.prefix()),
        };
        prop_assert_eq!(parse_statement(&spaced).unwrap(), st);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,24}") {
        if let Ok(st) = parse_statement(&text) {
            prop_assert_eq!(parse_statement(&st.to_string()).unwrap(), st);
        }
    }

    #[test]
    fn errors_point_inside_the_input(text in "[NKMamp2o3()~ ¬ABaeio]{0,16}") {
        if let Err(e) = parse_statement(&text) {
            prop_assert!(e.span.begin <= e.span.end && e.span.end <= text.len());
        }
    }
}

#[test]
fn catalog_ids_parse_back() {
    for entry in verdict_table() {
        let (mood, pattern) = parse_mood(&entry.id()).unwrap();
        assert_eq!((mood, pattern), (entry.mood, entry.pattern));
        let (mood, _) = parse_mood(&entry.id().to_lowercase()).unwrap();
        assert_eq!(mood, entry.mood);
    }
    assert_eq!(Mood::ALL.len(), 14);
}
