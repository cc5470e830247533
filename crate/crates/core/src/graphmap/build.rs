use std::collections::BTreeMap;

use rand::Rng;

use super::CombinatorialMap;
use crate::error::GraphError;

/// Builds simple cubic maps from counterclockwise neighbour lists.
/// Dart ids are assigned per edge in insertion order: `2k` at the first
/// endpoint, `2k + 1` at the second.
#[derive(Debug, Default)]
pub struct MapBuilder {
    rotations: Vec<(u64, [u64; 3])>,
}

impl MapBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: u64, ccw_neighbours: [u64; 3]) -> Self {
        self.rotations.push((id, ccw_neighbours));
        self
    }

    pub fn build(self) -> Result<CombinatorialMap, GraphError> {
        let mut dart_of: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        let mut edges = Vec::new();
        for (v, nbrs) in &self.rotations {
            for &w in nbrs {
                let key = ((*v).min(w), (*v).max(w));
                if !dart_of.contains_key(&(*v, w)) && !dart_of.contains_key(&(w, *v)) {
                    let k = edges.len() as u64;
                    dart_of.insert((key.0, key.1), 2 * k);
                    dart_of.insert((key.1, key.0), 2 * k + 1);
                    edges.push((2 * k, 2 * k + 1));
                }
            }
        }
        let verts: Vec<(u64, Vec<u64>)> = self
            .rotations
            .iter()
            .map(|(v, nbrs)| (*v, nbrs.iter().map(|w| dart_of[&(*v, *w)]).collect()))
            .collect();
        CombinatorialMap::new(&verts, &edges)
    }
}

/// Two vertices joined by three edges, with opposite rotations.
pub fn theta() -> CombinatorialMap {
    CombinatorialMap::new(
        &[(0, vec![0, 1, 2]), (1, vec![3, 5, 4])],
        &[(0, 3), (1, 4), (2, 5)],
    )
    .expect("theta graph is valid")
}

/// Tetrahedron drawn with vertex 0 at the centre and 1, 2, 3 on the outer
/// triangle (north, south-west, south-east).
pub fn tetrahedron() -> CombinatorialMap {
    MapBuilder::new()
        .vertex(0, [3, 1, 2])
        .vertex(1, [2, 0, 3])
        .vertex(2, [3, 0, 1])
        .vertex(3, [1, 0, 2])
        .build()
        .expect("tetrahedron is valid")
}

/// The `n`-gonal prism: inner cycle `0..n`, outer cycle `n..2n`, spokes
/// `i -- n + i`. `prism(4)` is the cube.
pub fn prism(n: u64) -> CombinatorialMap {
    assert!(n >= 3, "prism needs n >= 3");
    let mut b = MapBuilder::new();
    for i in 0..n {
        let next = (i + 1) % n;
        let prev = (i + n - 1) % n;
        b = b.vertex(i, [n + i, next, prev]);
    }
    for i in 0..n {
        let next = (i + 1) % n;
        let prev = (i + n - 1) % n;
        b = b.vertex(n + i, [n + next, i, n + prev]);
    }
    b.build().expect("prism is valid")
}

/// Two vertices each carrying a loop, joined by a bridge. The outer face
/// passes each vertex twice.
pub fn dumbbell() -> CombinatorialMap {
    CombinatorialMap::new(
        &[(0, vec![0, 1, 2]), (1, vec![3, 4, 5])],
        &[(0, 1), (2, 5), (3, 4)],
    )
    .expect("dumbbell is valid")
}

/// Random cubic planar map obtained from the theta graph by `insertions`
/// random chord insertions: pick a face and two distinct edge slots on it,
/// subdivide both edges and join the new vertices inside the face.
pub fn random_cubic_map<R: Rng + ?Sized>(rng: &mut R, insertions: usize) -> CombinatorialMap {
    let mut map = theta();
    for _ in 0..insertions {
        let candidates: Vec<usize> = map
            .faces()
            .iter()
            .filter(|f| f.len() >= 2)
            .map(|f| f.index)
            .collect();
        let face = &map.faces()[candidates[rng.gen_range(0..candidates.len())]];
        let i = rng.gen_range(0..face.len());
        let mut j = rng.gen_range(0..face.len() - 1);
        if j >= i {
            j += 1;
        }
        map = insert_chord(&map, map.dart_id(face.darts[i]), map.dart_id(face.darts[j]))
            .expect("chord insertion preserves validity");
    }
    map
}

/// Subdivides the edges of the face darts `d1` and `d2` and joins the two
/// new vertices through the face to the left of both darts.
fn insert_chord(map: &CombinatorialMap, d1: u64, d2: u64) -> Result<CombinatorialMap, GraphError> {
    let (mut verts, edges) = map.raw_parts();
    let mut next_dart = verts.iter().flat_map(|(_, d)| d.iter()).max().unwrap() + 1;
    let mut next_vertex = verts.iter().map(|(v, _)| *v).max().unwrap() + 1;
    let mut pairs: BTreeMap<u64, u64> = BTreeMap::new();
    for (a, b) in &edges {
        pairs.insert(*a, *b);
        pairs.insert(*b, *a);
    }
    let mut chord_ends = Vec::new();
    for d in [d1, d2] {
        // d runs from its vertex to opposite(d); the face lies on its left.
        let back = next_dart;
        let fwd = next_dart + 1;
        let chord = next_dart + 2;
        next_dart += 3;
        let far = pairs[&d];
        pairs.insert(d, back);
        pairs.insert(back, d);
        pairs.insert(far, fwd);
        pairs.insert(fwd, far);
        // counterclockwise: forward, chord (left side), back
        verts.push((next_vertex, vec![fwd, chord, back]));
        next_vertex += 1;
        chord_ends.push(chord);
    }
    pairs.insert(chord_ends[0], chord_ends[1]);
    pairs.insert(chord_ends[1], chord_ends[0]);
    let edge_list: Vec<(u64, u64)> = pairs
        .iter()
        .filter(|(a, b)| a < b)
        .map(|(a, b)| (*a, *b))
        .collect();
    CombinatorialMap::new(&verts, &edge_list)
}
