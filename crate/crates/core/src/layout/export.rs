use std::fmt::Write as _;

use super::LayoutTable;
use crate::error::{invalid, LonError, Result};
use crate::lon::{write_lon, Lon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Tsv,
    Dot,
    GraphMl,
}

impl std::str::FromStr for ExportFormat {
    type Err = LonError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(ExportFormat::Tsv),
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::GraphMl),
            _ => invalid(format!("unknown export format {s:?} (tsv, dot or graphml)")),
        }
    }
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Tsv => "tsv",
            ExportFormat::Dot => "dot",
            ExportFormat::GraphMl => "graphml",
        }
    }
}

fn check_layout(lon: &Lon, layout: &LayoutTable) -> Result<()> {
    let ok = layout.rows.len() == lon.nodes().len()
        && layout.rows.iter().zip(lon.nodes()).all(|(r, v)| r.id == v.id);
    if !ok {
        return Err(LonError::Mismatch("layout rows do not match LON nodes".into()));
    }
    Ok(())
}

pub fn export_lon(lon: &Lon, layout: &LayoutTable, format: ExportFormat) -> Result<String> {
    check_layout(lon, layout)?;
    Ok(match format {
        ExportFormat::Tsv => write_lon(lon),
        ExportFormat::Dot => to_dot(lon, layout),
        ExportFormat::GraphMl => to_graphml(lon, layout),
    })
}

/// Graphviz digraph; edges are labelled with their changed-subfunction count.
pub fn to_dot(lon: &Lon, layout: &LayoutTable) -> String {
    let mut out = String::from("digraph lon {\n");
    for (v, r) in lon.nodes().iter().zip(&layout.rows) {
        writeln!(
            out,
            "  n{} [bits=\"{}\", fitness={}, is_global={}, x={:.9}];",
            v.id, v.bits, v.fitness, v.is_global, r.x
        )
        .unwrap();
    }
    for e in lon.edges() {
        let a = e.annotation;
        writeln!(
            out,
            "  n{} -> n{} [label=\"{}\", weight={}, changed={}, positive={}, negative={}];",
            e.src, e.dst, a.changed, e.weight, a.changed, a.positive, a.negative
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub(super) const NODE_KEYS: [(&str, &str); 4] =
    [("bits", "string"), ("fitness", "double"), ("is_global", "boolean"), ("x", "double")];
pub(super) const EDGE_KEYS: [(&str, &str); 4] =
    [("weight", "long"), ("changed", "int"), ("positive", "int"), ("negative", "int")];

/// GraphML with typed keys; `x` keeps full precision so the file parses back
/// to the same layout.
pub fn to_graphml(lon: &Lon, layout: &LayoutTable) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
    );
    for (name, ty) in NODE_KEYS {
        writeln!(out, "  <key id=\"{name}\" for=\"node\" attr.name=\"{name}\" attr.type=\"{ty}\"/>").unwrap();
    }
    for (name, ty) in EDGE_KEYS {
        writeln!(out, "  <key id=\"{name}\" for=\"edge\" attr.name=\"{name}\" attr.type=\"{ty}\"/>").unwrap();
    }
    writeln!(out, "  <graph id=\"lon\" edgedefault=\"directed\" n=\"{}\">", lon.n()).unwrap();
    for (v, r) in lon.nodes().iter().zip(&layout.rows) {
        writeln!(out, "    <node id=\"n{}\">", v.id).unwrap();
        writeln!(out, "      <data key=\"bits\">{}</data>", v.bits).unwrap();
        writeln!(out, "      <data key=\"fitness\">{}</data>", v.fitness).unwrap();
        writeln!(out, "      <data key=\"is_global\">{}</data>", v.is_global).unwrap();
        writeln!(out, "      <data key=\"x\">{}</data>", r.x).unwrap();
        out.push_str("    </node>\n");
    }
    for e in lon.edges() {
        let a = e.annotation;
        writeln!(out, "    <edge source=\"n{}\" target=\"n{}\">", e.src, e.dst).unwrap();
        writeln!(out, "      <data key=\"weight\">{}</data>", e.weight).unwrap();
        writeln!(out, "      <data key=\"changed\">{}</data>", a.changed).unwrap();
        writeln!(out, "      <data key=\"positive\">{}</data>", a.positive).unwrap();
        writeln!(out, "      <data key=\"negative\">{}</data>", a.negative).unwrap();
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
