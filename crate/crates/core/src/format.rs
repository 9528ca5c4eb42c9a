//! Presentation files and word syntax.
//!
//! A presentation file is JSON:
//!
//! ```json
//! {
//!   "vertices": [{"name": "a", "order": 2}, {"name": "b", "order": "inf"}],
//!   "edges": [["a", "b"]],
//!   "words": {"g": "a b^-1"}
//! }
//! ```
//!
//! Words are whitespace-separated syllables `name` or `name^k`; the identity
//! is written `1`. Words are also accepted as JSON arrays of
//! `[vertex, exponent]` pairs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::tree::Side;
use crate::word::{NormalForm, Order, PresentationGraph, Syllable, Word};

/// Vertex order as written in a file: a nonnegative integer or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderSpec(pub Order);

impl Serialize for OrderSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Order::Finite(n) => s.serialize_u64(n),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OrderSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct OrderVisitor;

        impl Visitor<'_> for OrderVisitor {
            type Value = OrderSpec;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<OrderSpec, E> {
                Ok(OrderSpec(Order::Finite(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<OrderSpec, E> {
                u64::try_from(v)
                    .map(|v| OrderSpec(Order::Finite(v)))
                    .map_err(|_| E::custom(format!("vertex order {v} is negative")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<OrderSpec, E> {
                match v {
                    "inf" | "infinite" | "Z" => Ok(OrderSpec(Order::Infinite)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(OrderVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub name: String,
    pub order: OrderSpec,
}

/// On-disk form of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub words: BTreeMap<String, String>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation files always serialize")
    }

    pub fn presentation(&self) -> Result<PresentationGraph> {
        let names: Vec<&str> = self.vertices.iter().map(|v| v.name.as_str()).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        let graph = SimpleGraph::new(&names, &edges)?;
        let orders = self.vertices.iter().map(|v| v.order.0).collect();
        PresentationGraph::new(graph, orders)
    }

    pub fn from_presentation(pres: &PresentationGraph) -> Self {
        let g = pres.graph();
        PresentationFile {
            vertices: (0..g.len())
                .map(|v| VertexEntry {
                    name: g.name(v).to_string(),
                    order: OrderSpec(pres.order(v)),
                })
                .collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()])
                .collect(),
            words: BTreeMap::new(),
        }
    }
}

/// Parses a presentation file straight into a presentation.
pub fn parse_presentation(text: &str) -> Result<PresentationGraph> {
    PresentationFile::parse(text)?.presentation()
}

/// Parses the compact syntax `a^2 b c^-1`.
pub fn parse_word(graph: &SimpleGraph, text: &str) -> Result<Word> {
    let mut syllables = Vec::new();
    let mut column = 1;
    for raw in text.split(char::is_whitespace) {
        let token_column = column;
        column += raw.chars().count() + 1;
        if raw.is_empty() {
            continue;
        }
        if raw == "1" && graph.index_of("1").is_err() {
            continue;
        }
        let (name, exponent) = match raw.split_once('^') {
            Some((name, exp)) => {
                let exp: BigInt = exp.parse().map_err(|_| Error::Parse {
                    line: 1,
                    column: token_column + name.chars().count() + 1,
                    message: format!("bad exponent `{exp}`"),
                })?;
                (name, exp)
            }
            None => (raw, BigInt::from(1)),
        };
        let vertex = graph.index_of(name)?;
        syllables.push(Syllable::new(vertex, exponent)?);
    }
    Ok(Word::new(syllables))
}

/// Parses a JSON array of `[vertex, exponent]` pairs. Exponents may be JSON
/// integers or decimal strings.
pub fn parse_word_json(graph: &SimpleGraph, text: &str) -> Result<Word> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Exp {
        Int(i64),
        Text(String),
    }
    let pairs: Vec<(String, Exp)> = serde_json::from_str(text).map_err(json_error)?;
    let mut syllables = Vec::with_capacity(pairs.len());
    for (name, exp) in pairs {
        let exp = match exp {
            Exp::Int(e) => BigInt::from(e),
            Exp::Text(s) => s
                .parse()
                .map_err(|_| Error::input(format!("bad exponent `{s}`")))?,
        };
        syllables.push(Syllable::new(graph.index_of(&name)?, exp)?);
    }
    Ok(Word::new(syllables))
}

/// Renders syllables in the compact syntax; the empty word is `1`.
pub fn format_syllables(graph: &SimpleGraph, syllables: &[Syllable]) -> String {
    if syllables.is_empty() {
        return "1".into();
    }
    syllables
        .iter()
        .map(|s| {
            let name = graph.name(s.vertex());
            if *s.exponent() == BigInt::from(1) {
                name.to_string()
            } else {
                format!("{name}^{}", s.exponent())
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_normal_form(graph: &SimpleGraph, g: &NormalForm) -> String {
    format_syllables(graph, g.syllables())
}

/// JSON array form of an element.
pub fn normal_form_json(graph: &SimpleGraph, g: &NormalForm) -> serde_json::Value {
    serde_json::Value::Array(
        g.syllables()
            .iter()
            .map(|s| {
                let exp = match i64::try_from(s.exponent().clone()) {
                    Ok(e) => serde_json::Value::from(e),
                    Err(_) => serde_json::Value::from(s.exponent().to_string()),
                };
                serde_json::json!([graph.name(s.vertex()), exp])
            })
            .collect(),
    )
}

/// Parses a tree vertex written `A:word` or `B:word`.
pub fn parse_tree_vertex(graph: &SimpleGraph, text: &str) -> Result<(Side, Word)> {
    let (side, word) = text
        .split_once(':')
        .ok_or_else(|| Error::input(format!("tree vertex `{text}` must look like `A:word`")))?;
    let side = match side.trim() {
        "A" | "a" => Side::A,
        "B" | "b" => Side::B,
        other => return Err(Error::input(format!("unknown side `{other}`"))),
    };
    Ok((side, parse_word(graph, word)?))
}
