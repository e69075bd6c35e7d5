//! Tab-separated LON container.
//!
//! ```text
//! #lon n=9
//! #nodes
//! id	bits	fitness	is_global
//! 0	000000000	6	0
//! #edges
//! src	dst	weight	changed	positive	negative	src_fitness	dst_fitness
//! 0	1	1	1	1	0	6	7
//! ```
//!
//! Fitness values use the shortest decimal that round-trips exactly.

use std::fmt::Write as _;

use super::{EdgeAnnotation, Lon, LonEdge, LonNode};
use crate::bits::Bits;
use crate::error::{parse_err, Result};

pub const NODE_COLUMNS: &str = "id\tbits\tfitness\tis_global";
pub const EDGE_COLUMNS: &str =
    "src\tdst\tweight\tchanged\tpositive\tnegative\tsrc_fitness\tdst_fitness";

pub fn write_lon(lon: &Lon) -> String {
    let mut out = String::new();
    writeln!(out, "#lon n={}", lon.n()).unwrap();
    writeln!(out, "#nodes\n{NODE_COLUMNS}").unwrap();
    for node in lon.nodes() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            node.id,
            node.bits,
            node.fitness,
            u8::from(node.is_global)
        )
        .unwrap();
    }
    writeln!(out, "#edges\n{EDGE_COLUMNS}").unwrap();
    for e in lon.edges() {
        let a = e.annotation;
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            e.src,
            e.dst,
            e.weight,
            a.changed,
            a.positive,
            a.negative,
            lon.node(e.src).fitness,
            lon.node(e.dst).fitness
        )
        .unwrap();
    }
    out
}

#[derive(PartialEq)]
enum Section {
    Preamble,
    Nodes,
    Edges,
}

pub fn parse_lon(text: &str) -> Result<Lon> {
    let mut n: Option<usize> = None;
    let mut section = Section::Preamble;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#lon n=") {
            n = Some(rest.parse().map_err(|_| parse_err(no, "bad `#lon n=` header"))?);
            continue;
        }
        match line {
            "#nodes" => {
                section = Section::Nodes;
                continue;
            }
            "#edges" => {
                section = Section::Edges;
                continue;
            }
            NODE_COLUMNS | EDGE_COLUMNS => continue,
            _ => {}
        }
        let cols: Vec<&str> = line.split('\t').collect();
        match section {
            Section::Preamble => return Err(parse_err(no, "data before `#nodes`")),
            Section::Nodes => {
                if cols.len() != 4 {
                    return Err(parse_err(no, "node row needs 4 columns"));
                }
                let bits: Bits = cols[1].parse().map_err(|e| parse_err(no, format!("{e}")))?;
                nodes.push(LonNode {
                    id: num(cols[0], no)?,
                    fitness: cols[2]
                        .parse()
                        .map_err(|_| parse_err(no, "bad fitness"))?,
                    is_global: match cols[3] {
                        "1" => true,
                        "0" => false,
                        _ => return Err(parse_err(no, "is_global must be 0 or 1")),
                    },
                    sub_values: Vec::new(),
                    bits,
                });
            }
            Section::Edges => {
                if cols.len() != 8 {
                    return Err(parse_err(no, "edge row needs 8 columns"));
                }
                let annotation = EdgeAnnotation {
                    changed: num(cols[3], no)?,
                    positive: num(cols[4], no)?,
                    negative: num(cols[5], no)?,
                };
                edges.push(LonEdge {
                    src: num(cols[0], no)?,
                    dst: num(cols[1], no)?,
                    weight: num(cols[2], no)? as u64,
                    annotation,
                });
            }
        }
    }
    let n = match n {
        Some(n) => n,
        None => nodes
            .first()
            .map(|nd: &LonNode| nd.bits.len())
            .ok_or_else(|| parse_err(0, "cannot infer n from an empty LON without header"))?,
    };
    Lon::from_parts(n, nodes, edges)
}

fn num(s: &str, no: usize) -> Result<usize> {
    s.parse().map_err(|_| parse_err(no, format!("bad integer {s:?}")))
}
