//! Canonical representation documents and the other textual interchange
//! formats (graph edge lists, solutions, decompositions).
//!
//! A representation document is a single JSON object with fields `grid_step`
//! (string rational such as "1" or "1/2"), `flavor` ("VPG" or "CPG") and
//! `paths` (array of `{id, points}` with points as `[x, y]` integer pairs),
//! paths sorted by id. The canonical serializer uses two-space indentation,
//! keys in that order, points inline, and a trailing newline; parsing accepts
//! any JSON whitespace, so `serialize(parse(text)) == text` exactly on
//! canonical input.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rep::{Flavor, GridPath, GridPoint, GridRep};

pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let bad = || Error::Malformed(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num.trim().parse().map_err(|_| bad())?;
    let den: i64 = den.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

pub fn format_rational(r: Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn expect_object<'a>(
    v: &'a Value,
    what: &str,
    keys: &[&str],
) -> Result<&'a serde_json::Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an object")))?;
    for key in obj.keys() {
        if !keys.contains(&key.as_str()) {
            return Err(Error::Malformed(format!("{what}: unknown field {key:?}")));
        }
    }
    for key in keys {
        if !obj.contains_key(*key) {
            return Err(Error::Malformed(format!("{what}: missing field {key:?}")));
        }
    }
    Ok(obj)
}

/// Parses a canonical representation document.
pub fn parse_representation(text: &str) -> Result<GridRep> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    let obj = expect_object(&value, "document", &["grid_step", "flavor", "paths"])?;
    let step = obj["grid_step"]
        .as_str()
        .ok_or_else(|| Error::Malformed("grid_step must be a string".into()))?;
    let grid_step = parse_rational(step)?;
    let flavor = match obj["flavor"].as_str() {
        Some("VPG") => Flavor::Vpg,
        Some("CPG") => Flavor::Cpg,
        _ => return Err(Error::Malformed("flavor must be \"VPG\" or \"CPG\"".into())),
    };
    let paths_value = obj["paths"]
        .as_array()
        .ok_or_else(|| Error::Malformed("paths must be an array".into()))?;
    let mut paths = Vec::with_capacity(paths_value.len());
    for entry in paths_value {
        let entry = expect_object(entry, "path", &["id", "points"])?;
        let id = entry["id"]
            .as_str()
            .ok_or_else(|| Error::Malformed("path id must be a string".into()))?;
        let pts = entry["points"]
            .as_array()
            .ok_or_else(|| Error::Malformed("points must be an array".into()))?;
        let mut points = Vec::with_capacity(pts.len());
        for p in pts {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Malformed("point must be an [x, y] pair".into()))?;
            let x = pair[0]
                .as_i64()
                .ok_or_else(|| Error::Malformed("coordinates must be integers".into()))?;
            let y = pair[1]
                .as_i64()
                .ok_or_else(|| Error::Malformed("coordinates must be integers".into()))?;
            points.push(GridPoint::new(x, y));
        }
        paths.push(GridPath::new(id, points)?);
    }
    GridRep::new(grid_step, flavor, paths)
}

/// Serializes a representation in the canonical byte-exact form.
pub fn serialize_representation(r: &GridRep) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(
        out,
        "  \"grid_step\": {},",
        Value::String(format_rational(r.grid_step()))
    );
    let _ = writeln!(out, "  \"flavor\": \"{}\",", r.flavor());
    if r.is_empty() {
        out.push_str("  \"paths\": []\n");
    } else {
        out.push_str("  \"paths\": [\n");
        let n = r.len();
        for (i, p) in r.paths().enumerate() {
            out.push_str("    {\n");
            let _ = writeln!(out, "      \"id\": {},", Value::String(p.id().to_string()));
            let pts: Vec<String> = p
                .points()
                .iter()
                .map(|q| format!("[{}, {}]", q.x, q.y))
                .collect();
            let _ = writeln!(out, "      \"points\": [{}]", pts.join(", "));
            out.push_str(if i + 1 == n { "    }\n" } else { "    },\n" });
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

/// Plain edge-list export: header `n m`, then one `u v` line per edge with
/// vertex indices in vertex order, u < v, lines sorted.
pub fn serialize_edge_list(g: &crate::graph::Graph) -> String {
    let mut out = String::new();
    let edges = g.edges();
    let _ = writeln!(out, "{} {}", g.len(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Solution export: `kind value` header then one vertex id per line, sorted.
pub fn serialize_solution(s: &crate::solve::Solution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", s.kind, s.value);
    for id in &s.vertices {
        let _ = writeln!(out, "{id}");
    }
    out
}

/// Decomposition export: `leaf <tree-node-id> <vertex-id>` lines followed by
/// `edge <a> <b>` lines, with the deterministic node numbering of the tree.
pub fn serialize_decomposition(bd: &crate::decomp::BranchDecomposition) -> String {
    let mut out = String::new();
    for (node, id) in bd.leaves() {
        let _ = writeln!(out, "leaf {node} {id}");
    }
    for (a, b) in bd.tree_edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let text = "{\"grid_step\": \"1\", \"flavor\": \"VPG\", \"paths\": [{\"id\": \"a\", \"points\": [[0, 0], [3, 0]]}]}";
        let rep = parse_representation(text).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep.path("a").unwrap().length(), 3);
    }

    #[test]
    fn canonical_roundtrip_is_byte_identical() {
        let text = "{\n  \"grid_step\": \"1/2\",\n  \"flavor\": \"CPG\",\n  \"paths\": [\n    {\n      \"id\": \"a\",\n      \"points\": [[0, 0], [3, 0]]\n    },\n    {\n      \"id\": \"b\",\n      \"points\": [[3, 0], [3, 4], [5, 4]]\n    }\n  ]\n}\n";
        let rep = parse_representation(text).unwrap();
        assert_eq!(serialize_representation(&rep), text);
    }

    #[test]
    fn empty_paths_roundtrip() {
        let text = "{\n  \"grid_step\": \"1\",\n  \"flavor\": \"VPG\",\n  \"paths\": []\n}\n";
        let rep = parse_representation(text).unwrap();
        assert!(rep.is_empty());
        assert_eq!(serialize_representation(&rep), text);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(parse_representation("not json").is_err());
        assert!(parse_representation("{\"grid_step\": \"1\", \"flavor\": \"VPG\"}").is_err());
        assert!(parse_representation(
            "{\"grid_step\": \"1\", \"flavor\": \"EPG\", \"paths\": []}"
        )
        .is_err());
        assert!(parse_representation(
            "{\"grid_step\": \"0\", \"flavor\": \"VPG\", \"paths\": []}"
        )
        .is_err());
        assert!(parse_representation(
            "{\"grid_step\": \"1\", \"flavor\": \"VPG\", \"paths\": [], \"extra\": 1}"
        )
        .is_err());
        // duplicate id
        let dup = "{\"grid_step\": \"1\", \"flavor\": \"VPG\", \"paths\": [{\"id\": \"a\", \"points\": [[0,0],[1,0]]}, {\"id\": \"a\", \"points\": [[0,2],[1,2]]}]}";
        assert!(parse_representation(dup).is_err());
        // shared grid-edge under CPG
        let cpg = "{\"grid_step\": \"1\", \"flavor\": \"CPG\", \"paths\": [{\"id\": \"a\", \"points\": [[0,0],[1,0]]}, {\"id\": \"b\", \"points\": [[0,0],[1,0]]}]}";
        assert!(matches!(
            parse_representation(cpg),
            Err(Error::SharedGridEdge { .. })
        ));
    }

    #[test]
    fn rational_formats() {
        assert_eq!(format_rational(parse_rational("1").unwrap()), "1");
        assert_eq!(format_rational(parse_rational("1/2").unwrap()), "1/2");
        assert_eq!(format_rational(parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
