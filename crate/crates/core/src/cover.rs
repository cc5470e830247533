//! Homology of the branched double cover of the sphere over a cubic graph,
//! seen through the lattice `Z^E` of lifted edge cycles.
//!
//! The intersection pairing of two lifted edges is a sum of local
//! contributions at the vertices they share: at a vertex with counterclockwise
//! rotation `(d1, d2, d3)` the pair `(d_i, d_j)` contributes `+1` when `d_j`
//! immediately follows `d_i`, and `-1` when it immediately precedes it.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graphmap::{BaseChoice, CombinatorialMap, Face};
use crate::error::GraphError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn mod2(&self) -> Vec<bool> {
        self.0.iter().map(|a| a.rem_euclid(2) == 1).collect()
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer antisymmetric form on a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    matrix: Vec<Vec<i64>>,
}

impl SkewForm {
    /// Panics unless the matrix is square, antisymmetric and zero on the diagonal.
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            assert_eq!(row.len(), n, "skew form must be square");
            assert_eq!(row[i], 0, "skew form has nonzero diagonal at {}", i);
            for j in 0..n {
                assert_eq!(row[j], -matrix[j][i], "skew form not antisymmetric at ({}, {})", i, j);
            }
        }
        Self { matrix }
    }

    /// `diag(J, ..., J)` on `Z^{2g}` in the interleaved order `a_1, b_1, a_2, ...`.
    pub fn standard(genus: usize) -> Self {
        let n = 2 * genus;
        let mut m = vec![vec![0; n]; n];
        for i in 0..genus {
            m[2 * i][2 * i + 1] = 1;
            m[2 * i + 1][2 * i] = -1;
        }
        Self { matrix: m }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: vec![vec![0; dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn pair(&self, x: &LatticeVector, y: &LatticeVector) -> i64 {
        let mut acc = 0;
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                acc += xi * self.matrix[i][j] * yj;
            }
        }
        acc
    }

    /// `M v`, whose entries are the pairings of the generators with `v`.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn is_radical(&self, v: &LatticeVector) -> bool {
        self.apply(v).is_zero()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.matrix.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Rank over the rationals by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rational_rank(&self.matrix)
    }

    pub fn mod2(&self) -> Vec<Vec<bool>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect())
            .collect()
    }
}

pub(crate) fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &piv;
                for c in col..ncols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Genus of the branched double cover: `chi = 2 * 2 - V`, so `g = (V - 2) / 2`.
pub fn genus(map: &CombinatorialMap) -> usize {
    (map.num_vertices() - 2) / 2
}

/// Pairing of the lifted edge cycles.
pub fn edge_pairing(map: &CombinatorialMap) -> SkewForm {
    let e = map.num_edges();
    let mut m = vec![vec![0i64; e]; e];
    for d in 0..map.num_darts() {
        let i = map.edge_of(d);
        m[i][map.edge_of(map.next_ccw(d))] += 1;
        m[i][map.edge_of(map.prev_ccw(d))] -= 1;
    }
    let form = SkewForm::new(m);
    if let Err(msg) = check_radical(map, &form) {
        panic!("edge pairing violates the radical invariant: {}", msg);
    }
    form
}

/// Sum of the edges around a face, with multiplicity.
pub fn face_radical_vector(map: &CombinatorialMap, face: &Face) -> LatticeVector {
    let mut v = vec![0; map.num_edges()];
    for &e in &face.edges {
        v[e] += 1;
    }
    LatticeVector(v)
}

/// The all-edges vector.
pub fn total_radical_vector(map: &CombinatorialMap) -> LatticeVector {
    LatticeVector(vec![1; map.num_edges()])
}

/// Every face vector and the all-edges vector pair to zero with everything.
pub fn check_radical(map: &CombinatorialMap, form: &SkewForm) -> Result<(), String> {
    for f in map.faces() {
        let rho = face_radical_vector(map, f);
        if !form.is_radical(&rho) {
            return Err(format!("face {} boundary vector {} is not in the radical", f.index, rho));
        }
    }
    let total = total_radical_vector(map);
    if !form.is_radical(&total) {
        return Err("all-edges vector is not in the radical".into());
    }
    Ok(())
}

/// Loop vectors `l_2, ..., l_n` of a face read from a base vertex, where
/// `l_k` is the sum of the first `k - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLoops {
    pub face: Face,
    pub loops: Vec<LatticeVector>,
    pub warning: Option<String>,
}

pub fn loop_vectors(map: &CombinatorialMap, face: usize, base: BaseChoice) -> Result<FaceLoops, GraphError> {
    let seq = map.face_sequence(face, base)?;
    let n = seq.len();
    let mut loops = Vec::with_capacity(n.saturating_sub(1));
    let mut acc = LatticeVector::zero(map.num_edges());
    for &e in seq.edges.iter().take(n.saturating_sub(1)) {
        acc.0[e] += 1;
        loops.push(acc.clone());
    }
    let warning = (n == 1).then(|| format!("face {} has a single vertex slot; no loop vectors", face));
    Ok(FaceLoops {
        face: seq,
        loops,
        warning,
    })
}

/// Integral basis adapted to a skew form: `<a_i, b_i> = d_i > 0`, all other
/// pairings among `a`, `b`, `radical` zero, and together they form a basis of
/// the whole lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub a: Vec<LatticeVector>,
    pub b: Vec<LatticeVector>,
    pub radical: Vec<LatticeVector>,
    pub divisors: Vec<i64>,
}

impl SymplecticBasis {
    pub fn genus(&self) -> usize {
        self.a.len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.divisors.iter().all(|&d| d == 1)
    }

    /// Checks the pairing table directly.
    pub fn verify(&self, form: &SkewForm) -> Result<(), String> {
        let g = self.genus();
        for i in 0..g {
            for j in 0..g {
                let ab = form.pair(&self.a[i], &self.b[j]);
                let want = if i == j { self.divisors[i] } else { 0 };
                if ab != want {
                    return Err(format!("<a_{}, b_{}> = {}, expected {}", i, j, ab, want));
                }
                if form.pair(&self.a[i], &self.a[j]) != 0 || form.pair(&self.b[i], &self.b[j]) != 0 {
                    return Err(format!("a/b block not isotropic at ({}, {})", i, j));
                }
            }
        }
        for (k, r) in self.radical.iter().enumerate() {
            if !form.is_radical(r) {
                return Err(format!("radical vector {} pairs nontrivially", k));
            }
        }
        Ok(())
    }
}

struct Reducer {
    basis: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
}

impl Reducer {
    fn add_multiple(&mut self, k: usize, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        let n = self.basis.len();
        for t in 0..self.basis[k].len() {
            self.basis[k][t] += c * self.basis[i][t];
        }
        for t in 0..n {
            self.gram[k][t] += c * self.gram[i][t];
        }
        for t in 0..n {
            self.gram[t][k] += c * self.gram[t][i];
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.basis.swap(i, j);
        self.gram.swap(i, j);
        for row in &mut self.gram {
            row.swap(i, j);
        }
    }

    fn min_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let n = self.basis.len();
        let mut best: Option<(i64, usize, usize)> = None;
        for i in from..n {
            for j in from..n {
                let v = self.gram[i][j].abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Integer skew normal form: a unimodular change of basis bringing the form
/// to `diag(d_1 J, ..., d_g J, 0)` with `d_1 | d_2 | ...`.
pub fn radical_and_symplectic(form: &SkewForm) -> SymplecticBasis {
    let n = form.dim();
    let mut r = Reducer {
        basis: (0..n).map(|i| LatticeVector::basis(n, i).0).collect(),
        gram: form.matrix().to_vec(),
    };
    let mut pos = 0;
    let mut divisors = Vec::new();
    'outer: while let Some((i, j)) = r.min_pivot(pos) {
        r.swap(pos, i);
        let j = if j == pos { i } else { j };
        r.swap(pos + 1, j);
        if r.gram[pos][pos + 1] < 0 {
            for t in 0..n {
                r.basis[pos + 1][t] = -r.basis[pos + 1][t];
                r.gram[pos + 1][t] = -r.gram[pos + 1][t];
                r.gram[t][pos + 1] = -r.gram[t][pos + 1];
            }
        }
        let d = r.gram[pos][pos + 1];
        for k in pos + 2..n {
            let y = r.gram[pos][k].div_euclid(d);
            r.add_multiple(k, pos + 1, -y);
            let x = r.gram[pos + 1][k].div_euclid(d);
            r.add_multiple(k, pos, x);
            if r.gram[pos][k] != 0 || r.gram[pos + 1][k] != 0 {
                continue 'outer;
            }
        }
        for k in pos + 2..n {
            for l in pos + 2..n {
                if r.gram[k][l] % d != 0 {
                    r.add_multiple(pos, k, 1);
                    continue 'outer;
                }
            }
        }
        divisors.push(d);
        pos += 2;
    }
    let g = divisors.len();
    SymplecticBasis {
        a: (0..g).map(|i| LatticeVector(r.basis[2 * i].clone())).collect(),
        b: (0..g).map(|i| LatticeVector(r.basis[2 * i + 1].clone())).collect(),
        radical: (2 * g..n).map(|i| LatticeVector(r.basis[i].clone())).collect(),
        divisors,
    }
}

/// Integer determinant by fraction-free elimination; used to confirm that a
/// change of basis is unimodular.
pub fn determinant(rows: &[Vec<i64>]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &piv;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    det
}

/// Edges plus face symbols `F+`, `F-`, with the mod-2 pairing of the lifted
/// edges and face symbols pairing trivially. Layout: edges `0..E`, `F+` at
/// `E + f`, `F-` at `E + F + f`.
#[derive(Debug, Clone)]
pub struct ExtendedLattice {
    pub num_edges: usize,
    pub num_faces: usize,
    pub gram_mod2: Vec<Vec<bool>>,
    /// `rho_F - F+ - F-` for every face.
    pub face_relations: Vec<LatticeVector>,
    /// `rho_Gamma - sum_F F+`.
    pub total_relation: LatticeVector,
}

impl ExtendedLattice {
    pub fn new(map: &CombinatorialMap, form: &SkewForm) -> Self {
        let e = map.num_edges();
        let f = map.num_faces();
        let dim = e + 2 * f;
        let edge_gram = form.mod2();
        let mut gram = vec![vec![false; dim]; dim];
        for i in 0..e {
            gram[i][..e].copy_from_slice(&edge_gram[i]);
        }
        let extend = |v: &LatticeVector| {
            let mut out = v.0.clone();
            out.resize(dim, 0);
            LatticeVector(out)
        };
        let face_relations = map
            .faces()
            .iter()
            .map(|face| {
                let mut v = extend(&face_radical_vector(map, face));
                v.0[e + face.index] -= 1;
                v.0[e + f + face.index] -= 1;
                v
            })
            .collect();
        let mut total_relation = extend(&total_radical_vector(map));
        for k in 0..f {
            total_relation.0[e + k] -= 1;
        }
        Self {
            num_edges: e,
            num_faces: f,
            gram_mod2: gram,
            face_relations,
            total_relation,
        }
    }

    pub fn dim(&self) -> usize {
        self.num_edges + 2 * self.num_faces
    }

    pub fn plus_face(&self, f: usize) -> usize {
        self.num_edges + f
    }

    pub fn minus_face(&self, f: usize) -> usize {
        self.num_edges + self.num_faces + f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmap::{dumbbell, prism, tetrahedron, theta};

    #[test]
    fn genus_by_riemann_hurwitz() {
        // chi(cover) = 2 chi(S^2) - V, g = (2 - chi) / 2
        for (m, g) in [(theta(), 0), (tetrahedron(), 1), (prism(4), 3)] {
            let chi = 4 - m.num_vertices() as i64;
            assert_eq!((2 - chi) / 2, g as i64);
            assert_eq!(genus(&m), g);
        }
    }

    #[test]
    fn theta_pairing_vanishes() {
        let form = edge_pairing(&theta());
        assert_eq!(form, SkewForm::zero(3));
    }

    #[test]
    fn tetrahedron_pairing_rank_two() {
        let form = edge_pairing(&tetrahedron());
        assert_eq!(form.dim(), 6);
        assert_eq!(form.rank(), 2);
        assert!(form.matrix().iter().flatten().all(|x| x.abs() <= 1));
    }

    #[test]
    fn faces_and_total_in_radical() {
        for m in [theta(), tetrahedron(), prism(3), prism(4), prism(5), dumbbell()] {
            let form = edge_pairing(&m);
            check_radical(&m, &form).unwrap();
            for e in 0..m.num_edges() {
                for f in m.faces() {
                    let rho = face_radical_vector(&m, f);
                    assert_eq!(form.pair(&rho, &LatticeVector::basis(m.num_edges(), e)), 0);
                }
            }
        }
    }

    #[test]
    fn face_vectors_sum_to_twice_total() {
        for m in [theta(), tetrahedron(), prism(5)] {
            let mut acc = LatticeVector::zero(m.num_edges());
            for f in m.faces() {
                acc = acc.add(&face_radical_vector(&m, f));
            }
            assert_eq!(acc, total_radical_vector(&m).scale(2));
        }
    }

    #[test]
    fn tetrahedron_loops() {
        let m = tetrahedron();
        let fl = loop_vectors(&m, 0, m.default_base(0).unwrap()).unwrap();
        let e = &fl.face.edges;
        let e1 = LatticeVector::basis(6, e[0]);
        let e2 = LatticeVector::basis(6, e[1]);
        assert_eq!(fl.loops, vec![e1.clone(), e1.add(&e2)]);
    }

    #[test]
    fn theta_and_pentagon_loops() {
        let m = theta();
        let fl = loop_vectors(&m, 0, m.default_base(0).unwrap()).unwrap();
        assert_eq!(fl.loops, vec![LatticeVector::basis(3, fl.face.edges[0])]);

        let p = prism(5);
        let pent = p.faces().iter().find(|f| f.len() == 5).unwrap();
        let fl = loop_vectors(&p, pent.index, p.default_base(pent.index).unwrap()).unwrap();
        assert_eq!(fl.loops.len(), 4);
        for (i, l) in fl.loops.iter().enumerate() {
            assert_eq!(l.coordinate_sum(), i as i64 + 1);
        }
    }

    #[test]
    fn loop_face_warns() {
        let m = dumbbell();
        let lp = m.faces().iter().find(|f| f.len() == 1).unwrap();
        let fl = loop_vectors(&m, lp.index, m.default_base(lp.index).unwrap()).unwrap();
        assert!(fl.loops.is_empty());
        assert!(fl.warning.is_some());
    }

    #[test]
    fn symplectic_basis_of_standard_form() {
        let form = SkewForm::new(vec![vec![0, 1], vec![-1, 0]]);
        let sb = radical_and_symplectic(&form);
        assert_eq!(sb.a, vec![LatticeVector(vec![1, 0])]);
        assert_eq!(sb.b, vec![LatticeVector(vec![0, 1])]);
        assert!(sb.radical.is_empty());
    }

    #[test]
    fn zero_form_is_all_radical() {
        let sb = radical_and_symplectic(&SkewForm::zero(3));
        assert_eq!(sb.genus(), 0);
        assert_eq!(sb.radical.len(), 3);
    }

    #[test]
    fn tetrahedron_symplectic_basis() {
        let form = edge_pairing(&tetrahedron());
        let sb = radical_and_symplectic(&form);
        assert_eq!(sb.genus(), 1);
        assert_eq!(sb.radical.len(), 4);
        assert!(sb.is_unimodular());
        sb.verify(&form).unwrap();
    }

    #[test]
    fn non_unit_divisors_reported() {
        // 2J (+) 3J has elementary divisors 1 and 6
        let mut m = vec![vec![0; 4]; 4];
        m[0][1] = 2;
        m[1][0] = -2;
        m[2][3] = 3;
        m[3][2] = -3;
        let form = SkewForm::new(m);
        let sb = radical_and_symplectic(&form);
        assert_eq!(sb.divisors, vec![1, 6]);
        sb.verify(&form).unwrap();
        let rows: Vec<Vec<i64>> = sb.a.iter().chain(&sb.b).map(|v| v.0.clone()).collect();
        assert_eq!(determinant(&rows).abs(), BigRational::one());
    }
}
