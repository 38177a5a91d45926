//! Model files.
//!
//! ```json
//! {"t_count":2,"world_sizes":[2,1],"individuals":[[0,0],[1,0]],"concepts":{"A":[[1],[0]],"B":[[0],[0]]}}
//! ```
//!
//! The encoder writes exactly this compact form plus a trailing newline. The
//! decoder insists on sorted extents and individuals and rejects unknown
//! fields, so a decoded file re-encodes byte-identically.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::model::{ConceptName, Extent, Individual, Model, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct CodecError {
    /// JSON path of the offending value, e.g. `$.individuals[1]`.
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> CodecError {
    CodecError { path: path.into(), message: message.into() }
}

struct Extents<'a>(&'a [Extent]);

impl Serialize for Extents<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<Vec<u8>> = self.0.iter().map(|e| e.elements().collect()).collect();
        lists.serialize(serializer)
    }
}

struct Concepts<'a>(&'a BTreeMap<ConceptName, Vec<Extent>>);

impl Serialize for Concepts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, extents) in self.0 {
            map.serialize_entry(name, &Extents(extents))?;
        }
        map.end()
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Model", 4)?;
        s.serialize_field("t_count", &self.t_count())?;
        s.serialize_field("world_sizes", self.world_sizes())?;
        let individuals: Vec<&[u8]> = self.individuals().iter().map(Individual::components).collect();
        s.serialize_field("individuals", &individuals)?;
        s.serialize_field("concepts", &Concepts(self.concepts()))?;
        s.end()
    }
}

pub fn encode_model(model: &Model) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(model).expect("models serialize");
    bytes.push(b'\n');
    bytes
}

fn uint(value: &Value, path: &str, max: u64) -> Result<u64, CodecError> {
    match value.as_u64() {
        Some(n) if n <= max => Ok(n),
        Some(n) => Err(err(path, format!("{n} exceeds {max}"))),
        None => Err(err(path, format!("expected a non-negative integer, found {value}"))),
    }
}

fn array<'v>(value: &'v Value, path: &str) -> Result<&'v [Value], CodecError> {
    value.as_array().map(Vec::as_slice).ok_or_else(|| err(path, format!("expected an array, found {value}")))
}

/// Strictly increasing list of small integers.
fn sorted_elements(value: &Value, path: &str) -> Result<Vec<u8>, CodecError> {
    let mut out: Vec<u8> = Vec::new();
    for (i, v) in array(value, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let e = uint(v, &p, u8::MAX as u64)? as u8;
        if out.last().is_some_and(|&last| last >= e) {
            return Err(err(p, "elements must be strictly ascending"));
        }
        out.push(e);
    }
    Ok(out)
}

/// Parses and checks a model file. Errors name the JSON path at fault.
pub fn decode_model(bytes: &[u8]) -> Result<Model, CodecError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| err("$", format!("not valid JSON: {e}")))?;
    let object: &Map<String, Value> = value.as_object().ok_or_else(|| err("$", "expected an object"))?;
    for key in object.keys() {
        if !["t_count", "world_sizes", "individuals", "concepts"].contains(&key.as_str()) {
            return Err(err(format!("$.{key}"), "unknown field"));
        }
    }
    let field = |name: &str| object.get(name).ok_or_else(|| err(format!("$.{name}"), "missing field"));

    let t_count = uint(field("t_count")?, "$.t_count", 64)? as usize;
    let world_sizes = array(field("world_sizes")?, "$.world_sizes")?
        .iter()
        .enumerate()
        .map(|(t, v)| uint(v, &format!("$.world_sizes[{t}]"), 64).map(|n| n as usize))
        .collect::<Result<Vec<_>, _>>()?;

    let mut individuals: Vec<Individual> = Vec::new();
    for (i, v) in array(field("individuals")?, "$.individuals")?.iter().enumerate() {
        let p = format!("$.individuals[{i}]");
        let components = array(v, &p)?
            .iter()
            .enumerate()
            .map(|(t, c)| uint(c, &format!("{p}[{t}]"), u8::MAX as u64).map(|n| n as u8))
            .collect::<Result<Vec<_>, _>>()?;
        let x = Individual::new(components);
        match individuals.last() {
            Some(last) if *last == x => return Err(err(p, format!("duplicate individual {x}"))),
            Some(last) if *last > x => return Err(err(p, "individuals must be sorted lexicographically")),
            _ => individuals.push(x),
        }
    }

    let concept_values = field("concepts")?.as_object().ok_or_else(|| err("$.concepts", "expected an object"))?;
    let mut concepts = BTreeMap::new();
    for (name, v) in concept_values {
        let p = format!("$.concepts.{name}");
        let concept = ConceptName::try_from(name.clone()).map_err(|m| err(&p, m))?;
        let extents = array(v, &p)?
            .iter()
            .enumerate()
            .map(|(t, e)| {
                let ep = format!("{p}[{t}]");
                let elements = sorted_elements(e, &ep)?;
                if elements.iter().any(|&x| x >= 64) {
                    return Err(err(ep, "world elements must be below 64"));
                }
                Ok(elements.into_iter().collect::<Extent>())
            })
            .collect::<Result<Vec<_>, _>>()?;
        concepts.insert(concept, extents);
    }

    let model = Model::from_parts(t_count, world_sizes, individuals, concepts);
    match model.validate().first() {
        None => Ok(model),
        Some(v) => Err(err(violation_path(&model, v), v.to_string())),
    }
}

fn violation_path(model: &Model, v: &Violation) -> String {
    let position = |x: &Individual| model.individuals().iter().position(|y| y == x).unwrap_or_default();
    match v {
        Violation::NoParameters | Violation::WorldCount { .. } => "$.t_count".into(),
        Violation::EmptyWorld { t } | Violation::WorldTooLarge { t, .. } => format!("$.world_sizes[{t}]"),
        Violation::IndividualArity { individual, .. }
        | Violation::IndividualOutOfRange { individual, .. }
        | Violation::DuplicateIndividual { individual } => format!("$.individuals[{}]", position(individual)),
        Violation::ConceptArity { concept, .. } => format!("$.concepts.{concept}"),
        Violation::ExtentOutOfRange { concept, t } => format!("$.concepts.{concept}[{t}]"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture, FixtureName};

    #[test]
    fn celarent_xn_text() {
        let m = fixture(FixtureName::CelarentXn).model;
        let text = String::from_utf8(encode_model(&m)).unwrap();
        assert_eq!(
            text,
            "{\"t_count\":2,\"world_sizes\":[2,1],\"individuals\":[[0,0],[1,0]],\
             \"concepts\":{\"A\":[[1],[0]],\"B\":[[0],[0]],\"C\":[[0],[0]]}}\n"
        );
        assert_eq!(decode_model(text.as_bytes()).unwrap(), m);
    }

    #[test]
    fn fixtures_round_trip() {
        for n in FixtureName::ALL {
            let bytes = encode_model(&fixture(n).model);
            assert_eq!(encode_model(&decode_model(&bytes).unwrap()), bytes, "{n}");
        }
    }

    fn decode_err(text: &str) -> CodecError {
        decode_model(text.as_bytes()).unwrap_err()
    }

    #[test]
    fn rejections() {
        let e = decode_err(r#"{"t_count":2,"world_sizes":[1,1],"individuals":[[0,0],[0,0]],"concepts":{}}"#);
        assert_eq!(e.path, "$.individuals[1]");
        assert!(e.message.contains("duplicate"));

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[1,0],[0,0]],"concepts":{}}"#);
        assert_eq!(e.path, "$.individuals[1]");

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[0,0]],"concepts":{},"x":1}"#);
        assert_eq!(e.path, "$.x");

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[0,0]],"concepts":{"A":[[1,0],[]]}}"#);
        assert_eq!(e.path, "$.concepts.A[0][1]");

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[0,0]],"concepts":{"A":[[2],[]]}}"#);
        assert_eq!(e.path, "$.concepts.A[0]");

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[0,3]],"concepts":{}}"#);
        assert_eq!(e.path, "$.individuals[0]");

        let e = decode_err(r#"{"t_count":2,"world_sizes":[2,1],"individuals":[[0,0]],"concepts":{"ab":[[],[]]}}"#);
        assert_eq!(e.path, "$.concepts.ab");

        let e = decode_err(r#"{"t_count":3,"world_sizes":[2,1],"individuals":[],"concepts":{}}"#);
        assert_eq!(e.path, "$.t_count");

        let e = decode_err(r#"{"world_sizes":[2,1],"individuals":[],"concepts":{}}"#);
        assert_eq!(e.path, "$.t_count");

        assert_eq!(decode_err("[").path, "$");
    }
}
