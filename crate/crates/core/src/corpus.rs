//! Example graphs shipped with the crate.

use crate::error::GraphError;
use crate::graphmap::{parse_map, CombinatorialMap};

pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "theta",
        description: "two vertices, three parallel edges (genus 0)",
        text: include_str!("../corpus/theta.graph"),
    },
    CorpusEntry {
        name: "tetrahedron",
        description: "complete graph on four vertices (genus 1)",
        text: include_str!("../corpus/tetrahedron.graph"),
    },
    CorpusEntry {
        name: "prism3",
        description: "triangular prism (genus 2)",
        text: include_str!("../corpus/prism3.graph"),
    },
    CorpusEntry {
        name: "cube",
        description: "cube (genus 3)",
        text: include_str!("../corpus/cube.graph"),
    },
    CorpusEntry {
        name: "prism5",
        description: "pentagonal prism (genus 4)",
        text: include_str!("../corpus/prism5.graph"),
    },
];

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|e| e.name)
}

/// Parses a bundled graph; `None` for an unknown name.
pub fn load(name: &str) -> Option<Result<CombinatorialMap, GraphError>> {
    entry(name).map(|e| parse_map(e.text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmap::{prism, tetrahedron, theta};

    #[test]
    fn files_match_builders() {
        let expected = [theta(), tetrahedron(), prism(3), prism(4), prism(5)];
        for (e, m) in CORPUS.iter().zip(expected) {
            assert_eq!(load(e.name).unwrap().unwrap(), m, "{}", e.name);
        }
        assert!(load("dodecahedron").is_none());
    }
}
