//! Lattice files: a JSON object with `name`, `elements` and `covers`, where `["a", "b"]` means b covers a.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::{CoverDiagram, FiniteLattice};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDiagram {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

fn position_of(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub fn parse_diagram(text: &str) -> Result<CoverDiagram> {
    let d: FileDiagram = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        Error::parse_at(text, position_of(text, e.line(), e.column()), msg)
    })?;
    Ok(CoverDiagram {
        name: d.name,
        elements: d.elements,
        covers: d.covers,
    })
}

/// Parses a lattice file and builds the lattice.
pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    FiniteLattice::build(&parse_diagram(text)?)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// The canonical text of a diagram: elements in index order, covers sorted.
pub fn write_diagram(d: &CoverDiagram) -> String {
    let mut covers = d.covers.clone();
    covers.sort();
    let elements: Vec<String> = d.elements.iter().map(|e| quote(e)).collect();
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"name\": {},\n", quote(d.name.as_deref().unwrap_or(""))));
    out.push_str(&format!("  \"elements\": [{}],\n", elements.join(", ")));
    if covers.is_empty() {
        out.push_str("  \"covers\": []\n");
    } else {
        out.push_str("  \"covers\": [\n");
        for (i, (a, b)) in covers.iter().enumerate() {
            let sep = if i + 1 < covers.len() { "," } else { "" };
            out.push_str(&format!("    [{}, {}]{sep}\n", quote(a), quote(b)));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

pub fn write_lattice(l: &FiniteLattice) -> String {
    write_diagram(&l.to_diagram())
}

pub fn read_lattice_file(path: &Path) -> Result<FiniteLattice> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_lattice(&text)
}

pub fn write_lattice_file(path: &Path, l: &FiniteLattice) -> Result<()> {
    fs::write(path, write_lattice(l)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Graphviz text of the cover diagram.
pub fn to_dot(l: &FiniteLattice) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(&l.display_name()));
    for (a, b) in l.cover_pairs() {
        out.push_str(&format!("  {} -> {};\n", quote(l.label(a)), quote(l.label(b))));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;

    #[test]
    fn round_trip_is_byte_identical() {
        for name in ["N5", "L15", "shape_2x5_plus", "chain(1)"] {
            let text = write_lattice(&get(name).unwrap());
            let back = parse_lattice(&text).unwrap();
            assert_eq!(write_lattice(&back), text, "{name}");
        }
    }

    #[test]
    fn writer_layout() {
        let text = write_lattice(&get("chain(2)").unwrap());
        assert_eq!(
            text,
            "{\n  \"name\": \"chain(2)\",\n  \"elements\": [\"c0\", \"c1\"],\n  \"covers\": [\n    [\"c0\", \"c1\"]\n  ]\n}\n"
        );
    }

    #[test]
    fn errors() {
        let cyc = r#"{"name": "c", "elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}"#;
        assert!(matches!(parse_lattice(cyc), Err(Error::CyclicCovers(_))));
        let two_max = r#"{"name": "v", "elements": ["0", "p", "q"], "covers": [["0", "p"], ["0", "q"]]}"#;
        assert_eq!(
            parse_lattice(two_max).unwrap_err(),
            Error::NotALattice("p".into(), "q".into(), "join")
        );
        let bad = "{\n  \"name\": \"x\",\n  \"elements\": [\"a\" \"b\"]\n}";
        match parse_lattice(bad).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (3, 20)),
            e => panic!("{e:?}"),
        }
        let extra = r#"{"elements": ["a"], "covers": [], "colour": 1}"#;
        assert!(matches!(parse_lattice(extra), Err(Error::Parse { .. })));
    }

    #[test]
    fn dot_lists_covers() {
        let dot = to_dot(&get("chain(2)").unwrap());
        assert!(dot.contains("\"c0\" -> \"c1\";"));
    }
}
