use std::collections::HashMap;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::export::{EDGE_KEYS, NODE_KEYS};
use super::{LayoutRow, LayoutTable};
use crate::bits::Bits;
use crate::error::{parse_err, LonError, Result};
use crate::lon::{EdgeAnnotation, Lon, LonEdge, LonNode};

enum Element {
    Node(String),
    Edge(String, String),
}

fn attr(e: &BytesStart, name: &str) -> Result<Option<String>> {
    for a in e.attributes() {
        let a = a.map_err(|err| parse_err(0, err.to_string()))?;
        if a.key.as_ref() == name.as_bytes() {
            let v = a.unescape_value().map_err(|err| parse_err(0, err.to_string()))?;
            return Ok(Some(v.into_owned()));
        }
    }
    Ok(None)
}

fn required(e: &BytesStart, name: &str) -> Result<String> {
    attr(e, name)?.ok_or_else(|| parse_err(0, format!("missing attribute {name:?}")))
}

fn field<T: std::str::FromStr>(data: &HashMap<String, String>, key: &str) -> Result<T> {
    let raw = data
        .get(key)
        .ok_or_else(|| parse_err(0, format!("missing data key {key:?}")))?;
    raw.parse()
        .map_err(|_| parse_err(0, format!("bad value {raw:?} for {key:?}")))
}

/// Reads back a GraphML file written by [`super::to_graphml`]. Data keys
/// must be declared in the header with the expected types.
pub fn parse_graphml(text: &str) -> Result<(Lon, LayoutTable)> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    let mut declared: HashMap<String, String> = HashMap::new();
    let mut n: Option<usize> = None;
    let mut current: Option<(Element, HashMap<String, String>)> = None;
    let mut data_key: Option<String> = None;
    let mut nodes = Vec::new();
    let mut rows = Vec::new();
    let mut edges = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();

    loop {
        let event = reader
            .read_event()
            .map_err(|e| parse_err(0, format!("XML error at byte {}: {e}", reader.buffer_position())))?;
        match event {
            Event::Eof => break,
            Event::Start(e) | Event::Empty(e) => match e.name().as_ref() {
                b"key" => {
                    declared.insert(required(&e, "id")?, required(&e, "attr.type")?);
                }
                b"graph" => {
                    n = Some(
                        required(&e, "n")?
                            .parse()
                            .map_err(|_| parse_err(0, "bad graph attribute n"))?,
                    );
                }
                b"node" => current = Some((Element::Node(required(&e, "id")?), HashMap::new())),
                b"edge" => {
                    current = Some((
                        Element::Edge(required(&e, "source")?, required(&e, "target")?),
                        HashMap::new(),
                    ))
                }
                b"data" => {
                    let key = required(&e, "key")?;
                    if !declared.contains_key(&key) {
                        return Err(parse_err(0, format!("data key {key:?} not declared")));
                    }
                    data_key = Some(key);
                }
                _ => {}
            },
            Event::Text(t) => {
                if let (Some(key), Some((_, data))) = (&data_key, current.as_mut()) {
                    let v = t.unescape().map_err(|e| parse_err(0, e.to_string()))?;
                    data.insert(key.clone(), v.into_owned());
                }
            }
            Event::End(e) => match e.name().as_ref() {
                b"data" => data_key = None,
                b"node" | b"edge" => {
                    let (element, data) = current.take().ok_or_else(|| parse_err(0, "unbalanced element"))?;
                    match element {
                        Element::Node(name) => {
                            let id = nodes.len();
                            let bits: Bits = field(&data, "bits")?;
                            let fitness: f64 = field(&data, "fitness")?;
                            ids.insert(name, id);
                            nodes.push(LonNode {
                                id,
                                bits,
                                fitness,
                                sub_values: vec![],
                                is_global: field(&data, "is_global")?,
                            });
                            rows.push(LayoutRow {
                                id,
                                x: field(&data, "x")?,
                                fitness,
                            });
                        }
                        Element::Edge(src, dst) => {
                            let lookup = |s: &str| {
                                ids.get(s)
                                    .copied()
                                    .ok_or_else(|| parse_err(0, format!("edge refers to unknown node {s:?}")))
                            };
                            edges.push(LonEdge {
                                src: lookup(&src)?,
                                dst: lookup(&dst)?,
                                weight: field(&data, "weight")?,
                                annotation: EdgeAnnotation {
                                    changed: field(&data, "changed")?,
                                    positive: field(&data, "positive")?,
                                    negative: field(&data, "negative")?,
                                },
                            });
                        }
                    }
                }
                _ => {}
            },
            _ => {}
        }
    }
    for (name, ty) in NODE_KEYS.iter().chain(&EDGE_KEYS) {
        if declared.get(*name).map(String::as_str) != Some(*ty) {
            return Err(parse_err(0, format!("key {name:?} must be declared with type {ty}")));
        }
    }
    let n = n.ok_or_else(|| LonError::Parse {
        line: 0,
        msg: "graph element missing".into(),
    })?;
    Ok((Lon::from_parts(n, nodes, edges)?, LayoutTable { rows }))
}
