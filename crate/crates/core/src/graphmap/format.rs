//! Line-oriented graph file format:
//!
//! ```text
//! # comment
//! vertex <vid> <d1> <d2> <d3>   # darts counterclockwise
//! edge <d> <d'>
//! ```

use std::fmt::Write;

use super::CombinatorialMap;
use crate::error::GraphError;

fn parse_id(tok: &str, line: usize, what: &str) -> Result<u64, GraphError> {
    tok.parse::<u64>().map_err(|_| GraphError::Syntax {
        line,
        message: format!("invalid {} id {:?}", what, tok),
    })
}

pub fn parse_map(text: &str) -> Result<CombinatorialMap, GraphError> {
    let mut vertices: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.split_first() {
            None => continue,
            Some((&"vertex", rest)) => {
                if rest.is_empty() {
                    return Err(GraphError::Syntax {
                        line,
                        message: "vertex line needs an id and darts".into(),
                    });
                }
                let vid = parse_id(rest[0], line, "vertex")?;
                let darts = rest[1..]
                    .iter()
                    .map(|t| parse_id(t, line, "dart"))
                    .collect::<Result<Vec<_>, _>>()?;
                vertices.push((vid, darts));
            }
            Some((&"edge", rest)) => {
                if rest.len() != 2 {
                    return Err(GraphError::Syntax {
                        line,
                        message: format!("edge line needs exactly two darts, found {}", rest.len()),
                    });
                }
                edges.push((parse_id(rest[0], line, "dart")?, parse_id(rest[1], line, "dart")?));
            }
            Some((kw, _)) => {
                return Err(GraphError::Syntax {
                    line,
                    message: format!("unknown keyword {:?}", kw),
                })
            }
        }
    }
    CombinatorialMap::new(&vertices, &edges)
}

pub fn render_map(map: &CombinatorialMap) -> String {
    let (verts, edges) = map.raw_parts();
    let mut out = String::new();
    for (v, darts) in verts {
        let ds: Vec<String> = darts.iter().map(|d| d.to_string()).collect();
        writeln!(out, "vertex {} {}", v, ds.join(" ")).unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "edge {} {}", a, b).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmap::{prism, tetrahedron, theta};

    const THETA: &str = "# theta\nvertex 0 0 1 2\nvertex 1 3 5 4\nedge 0 3\nedge 1 4\nedge 2 5\n";

    #[test]
    fn parses_theta() {
        let m = parse_map(THETA).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (2, 3, 3));
        assert_eq!(m, theta());
    }

    #[test]
    fn roundtrip() {
        for m in [theta(), tetrahedron(), prism(4), prism(5)] {
            assert_eq!(parse_map(&render_map(&m)).unwrap(), m);
        }
    }

    #[test]
    fn reversed_rotation_breaks_euler() {
        let text = render_map(&tetrahedron());
        // reverse the rotation of the first vertex line
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let toks: Vec<&str> = lines[0].split_whitespace().collect();
        lines[0] = format!("vertex {} {} {} {}", toks[1], toks[4], toks[3], toks[2]);
        let err = parse_map(&lines.join("\n")).unwrap_err();
        // face-trace oracle: the modified map has 2 faces, so chi = 4 - 6 + 2 = 0
        assert_eq!(err, GraphError::EulerFailure { v: 4, e: 6, f: 2, chi: 0 });
        assert!(err.to_string().contains("Euler-formula failure"));
    }

    #[test]
    fn reports_errors_with_ids() {
        assert!(matches!(
            parse_map("vertex 0 0 1 2\nvertex 1 3 4 2\nedge 0 3\nedge 1 4\n"),
            Err(GraphError::DuplicateDart { dart: 2, .. })
        ));
        assert!(matches!(
            parse_map("vertex 0 0 1\nedge 0 1\n"),
            Err(GraphError::NotTrivalent { vertex: 0, degree: 2 })
        ));
        assert!(matches!(
            parse_map("vertex 0 0 1 2\nbogus\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_map("vertex 0 0 1 x\n"),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        // two disjoint theta graphs
        let two = "vertex 0 0 1 2\nvertex 1 3 5 4\nedge 0 3\nedge 1 4\nedge 2 5\n\
                   vertex 2 10 11 12\nvertex 3 13 15 14\nedge 10 13\nedge 11 14\nedge 12 15\n";
        assert!(matches!(parse_map(two), Err(GraphError::Disconnected { dart: 10, .. })));
        assert!(matches!(
            parse_map("vertex 0 0 1 2\nvertex 1 3 5 4\nedge 0 3\nedge 1 4\n"),
            Err(GraphError::DartWithoutEdge { .. })
        ));
    }
}
