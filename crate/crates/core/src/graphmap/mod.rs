//! Cubic graphs embedded in the oriented sphere, encoded as combinatorial maps.
//!
//! A map is a set of darts (half-edges), a counterclockwise cyclic order of the
//! three darts at each vertex, and the edge involution pairing darts into
//! edges. Faces are the orbits of `d -> prev_ccw(opposite(d))`: arriving at a
//! vertex along `opposite(d)`, the walk leaves along the dart immediately
//! clockwise of it, which keeps the face on the left. Every face is therefore
//! read counterclockwise with respect to the sphere orientation.

mod build;
mod format;

use std::collections::BTreeMap;

use crate::error::GraphError;

pub use build::{dumbbell, prism, random_cubic_map, tetrahedron, theta, MapBuilder};
pub use format::{parse_map, render_map};

/// Dense dart index.
pub type Dart = usize;
/// Dense vertex index.
pub type Vertex = usize;
/// Dense edge index.
pub type Edge = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    dart_ids: Vec<u64>,
    vertex_ids: Vec<u64>,
    vertex_of: Vec<Vertex>,
    rotations: Vec<[Dart; 3]>,
    slot: Vec<usize>,
    opposite: Vec<Dart>,
    edges: Vec<[Dart; 2]>,
    edge_of: Vec<Edge>,
    faces: Vec<Face>,
}

/// A face read counterclockwise: `darts[i]` leaves `vertices[i]` along
/// `edges[i]`, which ends at `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub index: usize,
    pub darts: Vec<Dart>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Cyclic rotation so that position `start` comes first.
    pub fn rotated(&self, start: usize) -> Face {
        let rot = |v: &Vec<usize>| -> Vec<usize> {
            v[start..].iter().chain(v[..start].iter()).copied().collect()
        };
        Face {
            index: self.index,
            darts: rot(&self.darts),
            vertices: rot(&self.vertices),
            edges: rot(&self.edges),
        }
    }
}

/// Base vertex for loop vectors and face operators, with an optional dart
/// to pick one occurrence when the face visits the vertex more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseChoice {
    pub vertex: u64,
    pub dart: Option<u64>,
}

impl BaseChoice {
    pub fn vertex(vertex: u64) -> Self {
        Self { vertex, dart: None }
    }

    pub fn with_dart(vertex: u64, dart: u64) -> Self {
        Self {
            vertex,
            dart: Some(dart),
        }
    }
}

impl CombinatorialMap {
    /// Validates and builds a map from vertex rotations (external dart ids,
    /// counterclockwise) and edge pairs.
    pub fn new(vertices: &[(u64, Vec<u64>)], edge_pairs: &[(u64, u64)]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vertex_seen = BTreeMap::new();
        let mut dart_index: BTreeMap<u64, Dart> = BTreeMap::new();
        let mut dart_ids = Vec::new();
        let mut vertex_of = Vec::new();
        let mut rotations = Vec::new();
        let mut slot = Vec::new();
        for (vi, (vid, darts)) in vertices.iter().enumerate() {
            if vertex_seen.insert(*vid, vi).is_some() {
                return Err(GraphError::DuplicateVertex { vertex: *vid });
            }
            if darts.len() != 3 {
                return Err(GraphError::NotTrivalent {
                    vertex: *vid,
                    degree: darts.len(),
                });
            }
            let mut rot = [0; 3];
            for (k, &d) in darts.iter().enumerate() {
                let idx = dart_ids.len();
                if dart_index.insert(d, idx).is_some() {
                    return Err(GraphError::DuplicateDart {
                        dart: d,
                        section: "vertex",
                    });
                }
                dart_ids.push(d);
                vertex_of.push(vi);
                slot.push(k);
                rot[k] = idx;
            }
            rotations.push(rot);
        }

        let n = dart_ids.len();
        let mut opposite = vec![usize::MAX; n];
        let mut edges = Vec::with_capacity(edge_pairs.len());
        let mut edge_of = vec![usize::MAX; n];
        let mut in_edge = BTreeMap::new();
        for &(x, y) in edge_pairs {
            for d in [x, y] {
                if in_edge.insert(d, ()).is_some() {
                    return Err(GraphError::DuplicateDart {
                        dart: d,
                        section: "edge",
                    });
                }
            }
            if x == y {
                return Err(GraphError::SelfPairedDart { dart: x });
            }
            let ix = *dart_index
                .get(&x)
                .ok_or(GraphError::DartWithoutVertex { dart: x })?;
            let iy = *dart_index
                .get(&y)
                .ok_or(GraphError::DartWithoutVertex { dart: y })?;
            opposite[ix] = iy;
            opposite[iy] = ix;
            edge_of[ix] = edges.len();
            edge_of[iy] = edges.len();
            edges.push([ix, iy]);
        }
        if let Some(d) = opposite.iter().position(|&o| o == usize::MAX) {
            return Err(GraphError::DartWithoutEdge { dart: dart_ids[d] });
        }

        let mut map = CombinatorialMap {
            dart_ids,
            vertex_ids: vertices.iter().map(|(v, _)| *v).collect(),
            vertex_of,
            rotations,
            slot,
            opposite,
            edges,
            edge_of,
            faces: Vec::new(),
        };
        map.check_connected()?;
        map.faces = map.trace_faces();
        let (v, e, f) = (map.num_vertices(), map.num_edges(), map.faces.len());
        let chi = v as i64 - e as i64 + f as i64;
        if chi != 2 {
            return Err(GraphError::EulerFailure { v, e, f, chi });
        }
        Ok(map)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let n = self.dart_ids.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(d) = stack.pop() {
            for nb in [self.next_ccw(d), self.opposite[d]] {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(d) => Err(GraphError::Disconnected {
                dart: self.dart_ids[d],
                root: self.dart_ids[0],
            }),
            None => Ok(()),
        }
    }

    fn trace_faces(&self) -> Vec<Face> {
        let n = self.dart_ids.len();
        let mut visited = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut face = Face {
                index: faces.len(),
                darts: Vec::new(),
                vertices: Vec::new(),
                edges: Vec::new(),
            };
            let mut d = start;
            while !visited[d] {
                visited[d] = true;
                face.darts.push(d);
                face.vertices.push(self.vertex_of[d]);
                face.edges.push(self.edge_of[d]);
                d = self.face_step(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Successor of `d` along its face.
    pub fn face_step(&self, d: Dart) -> Dart {
        self.prev_ccw(self.opposite[d])
    }

    pub fn num_darts(&self) -> usize {
        self.dart_ids.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, index: usize) -> Result<&Face, GraphError> {
        self.faces
            .get(index)
            .ok_or(GraphError::NoSuchFace { face: index })
    }

    pub fn dart_id(&self, d: Dart) -> u64 {
        self.dart_ids[d]
    }

    pub fn vertex_id(&self, v: Vertex) -> u64 {
        self.vertex_ids[v]
    }

    pub fn vertex_index(&self, id: u64) -> Option<Vertex> {
        self.vertex_ids.iter().position(|&v| v == id)
    }

    pub fn dart_index(&self, id: u64) -> Option<Dart> {
        self.dart_ids.iter().position(|&d| d == id)
    }

    pub fn vertex_of(&self, d: Dart) -> Vertex {
        self.vertex_of[d]
    }

    pub fn edge_of(&self, d: Dart) -> Edge {
        self.edge_of[d]
    }

    pub fn opposite(&self, d: Dart) -> Dart {
        self.opposite[d]
    }

    pub fn rotation(&self, v: Vertex) -> [Dart; 3] {
        self.rotations[v]
    }

    pub fn edge_darts(&self, e: Edge) -> [Dart; 2] {
        self.edges[e]
    }

    pub fn next_ccw(&self, d: Dart) -> Dart {
        let v = self.vertex_of[d];
        self.rotations[v][(self.slot[d] + 1) % 3]
    }

    pub fn prev_ccw(&self, d: Dart) -> Dart {
        let v = self.vertex_of[d];
        self.rotations[v][(self.slot[d] + 2) % 3]
    }

    /// The face rotated so that it starts at `base`; a dart qualifier picks
    /// the occurrence when the face passes the vertex more than once.
    pub fn face_sequence(&self, face: usize, base: BaseChoice) -> Result<Face, GraphError> {
        let f = self.face(face)?;
        let positions: Vec<usize> = f
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.vertex_ids[v] == base.vertex)
            .map(|(i, _)| i)
            .collect();
        if positions.is_empty() {
            return Err(GraphError::VertexNotOnFace {
                vertex: base.vertex,
                face,
            });
        }
        let start = match base.dart {
            Some(dart) => *positions
                .iter()
                .find(|&&i| self.dart_ids[f.darts[i]] == dart)
                .ok_or(GraphError::BadDartQualifier {
                    dart,
                    vertex: base.vertex,
                    face,
                })?,
            None if positions.len() > 1 => {
                return Err(GraphError::AmbiguousBaseVertex {
                    vertex: base.vertex,
                    face,
                    count: positions.len(),
                })
            }
            None => positions[0],
        };
        Ok(f.rotated(start))
    }

    /// All base choices on a face, one per face slot, dart-qualified.
    pub fn base_choices(&self, face: usize) -> Result<Vec<BaseChoice>, GraphError> {
        let f = self.face(face)?;
        Ok(f.darts
            .iter()
            .map(|&d| BaseChoice::with_dart(self.vertex_ids[self.vertex_of[d]], self.dart_ids[d]))
            .collect())
    }

    /// The first slot of a face as base choice.
    pub fn default_base(&self, face: usize) -> Result<BaseChoice, GraphError> {
        Ok(self.base_choices(face)?[0])
    }

    /// Vertex rotations and edge pairs in external ids, in file order.
    pub fn raw_parts(&self) -> (Vec<(u64, Vec<u64>)>, Vec<(u64, u64)>) {
        let verts = self
            .rotations
            .iter()
            .enumerate()
            .map(|(v, rot)| (self.vertex_ids[v], rot.iter().map(|&d| self.dart_ids[d]).collect()))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| (self.dart_ids[*a], self.dart_ids[*b]))
            .collect();
        (verts, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit count of an arbitrary permutation, used as an independent oracle.
    fn orbit_count(perm: &[usize]) -> usize {
        let mut seen = vec![false; perm.len()];
        let mut count = 0;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = perm[d];
            }
        }
        count
    }

    #[test]
    fn theta_faces_are_bigons() {
        let m = theta();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (2, 3, 3));
        for f in m.faces() {
            assert_eq!(f.len(), 2);
            assert_eq!(f.vertices.len(), 2);
        }
    }

    #[test]
    fn tetrahedron_faces_are_triangles() {
        let m = tetrahedron();
        assert_eq!(m.num_faces(), 4);
        assert!(m.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cube_faces_match_orbit_oracle() {
        let m = prism(4);
        let perm: Vec<usize> = (0..m.num_darts()).map(|d| m.face_step(d)).collect();
        assert_eq!(orbit_count(&perm), 6);
        assert_eq!(m.num_faces(), 6);
        assert!(m.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn consecutive_face_edges_share_vertex() {
        for m in [theta(), tetrahedron(), prism(3), prism(5)] {
            for f in m.faces() {
                let n = f.len();
                for i in 0..n {
                    let [a, b] = m.edge_darts(f.edges[i]);
                    let ends = [m.vertex_of(a), m.vertex_of(b)];
                    assert!(ends.contains(&f.vertices[i]));
                    assert!(ends.contains(&f.vertices[(i + 1) % n]));
                }
            }
        }
    }

    #[test]
    fn faces_are_counterclockwise_in_a_straight_line_drawing() {
        // Center vertex 0 at the origin, 1 north, 2 south-west, 3 south-east.
        let pos = |v: u64| -> (f64, f64) {
            match v {
                0 => (0.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-0.866, -0.5),
                _ => (0.866, -0.5),
            }
        };
        let m = tetrahedron();
        let mut bounded_ccw = 0;
        for f in m.faces() {
            let pts: Vec<_> = f.vertices.iter().map(|&v| pos(m.vertex_id(v))).collect();
            let area: f64 = (0..pts.len())
                .map(|i| {
                    let (x1, y1) = pts[i];
                    let (x2, y2) = pts[(i + 1) % pts.len()];
                    x1 * y2 - x2 * y1
                })
                .sum();
            if area > 0.0 {
                bounded_ccw += 1;
            }
        }
        // three bounded faces run counterclockwise; the outer face appears
        // clockwise in the plane, which is counterclockwise on the sphere.
        assert_eq!(bounded_ccw, 3);
    }

    #[test]
    fn face_sequence_rotates() {
        let m = tetrahedron();
        let f = &m.faces()[0];
        let b = m.vertex_id(f.vertices[1]);
        let r = m.face_sequence(0, BaseChoice::vertex(b)).unwrap();
        assert_eq!(r.vertices, vec![f.vertices[1], f.vertices[2], f.vertices[0]]);
    }

    #[test]
    fn theta_face_sequence_either_vertex() {
        let m = theta();
        for v in [0, 1] {
            let r = m.face_sequence(0, BaseChoice::vertex(v)).unwrap();
            assert_eq!(r.len(), 2);
            assert_eq!(m.vertex_id(r.vertices[0]), v);
        }
    }

    #[test]
    fn repeated_vertex_needs_dart() {
        let m = build::dumbbell();
        let outer = m.faces().iter().find(|f| f.len() > 1).unwrap();
        let v = m.vertex_id(outer.vertices[0]);
        let err = m.face_sequence(outer.index, BaseChoice::vertex(v)).unwrap_err();
        assert!(matches!(err, GraphError::AmbiguousBaseVertex { count: 2, .. }));
        let d = m.dart_id(outer.darts[0]);
        let r = m.face_sequence(outer.index, BaseChoice::with_dart(v, d)).unwrap();
        assert_eq!(r.darts[0], outer.darts[0]);
    }

    #[test]
    fn vertex_not_on_face() {
        let m = tetrahedron();
        let f = &m.faces()[0];
        let missing = (0..4u64)
            .find(|&v| !f.vertices.iter().any(|&x| m.vertex_id(x) == v))
            .unwrap();
        assert!(matches!(
            m.face_sequence(0, BaseChoice::vertex(missing)),
            Err(GraphError::VertexNotOnFace { .. })
        ));
    }
}
