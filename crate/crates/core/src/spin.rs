//! Spin structures on the branched cover, represented as quadratic
//! refinements `σ(C + D) = σ(C) + σ(D) + C·D` of the mod-2 pairing.

use crate::cover::{
    edge_pairing, face_radical_vector, genus, radical_and_symplectic, total_radical_vector, ExtendedLattice,
    LatticeVector, SkewForm, SymplecticBasis,
};
use crate::error::SpinError;
use crate::graphmap::CombinatorialMap;

/// Values on a chosen basis of a `Z/2` space, plus the mod-2 pairing of
/// that basis. Evaluation on a sum of basis vectors expands the quadratic
/// law: `σ(Σ b_i) = Σ σ(b_i) + Σ_{i<j} b_i·b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRefinement {
    basis_values: Vec<bool>,
    pairing: Vec<Vec<bool>>,
}

impl QuadraticRefinement {
    pub fn new(basis_values: Vec<bool>, pairing: Vec<Vec<bool>>) -> Result<Self, SpinError> {
        let n = basis_values.len();
        if pairing.len() != n {
            return Err(SpinError::DimensionMismatch {
                expected: n,
                found: pairing.len(),
            });
        }
        for row in &pairing {
            if row.len() != n {
                return Err(SpinError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(Self { basis_values, pairing })
    }

    /// The constant refinement on the edge lattice of a skew form.
    pub fn on_edges(form: &SkewForm, value: bool) -> Self {
        Self {
            basis_values: vec![value; form.dim()],
            pairing: form.mod2(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_values.len()
    }

    pub fn basis_values(&self) -> &[bool] {
        &self.basis_values
    }

    pub fn pairing(&self) -> &[Vec<bool>] {
        &self.pairing
    }

    pub fn value(&self, i: usize) -> bool {
        self.basis_values[i]
    }

    pub fn with_flipped(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.basis_values[i] = !out.basis_values[i];
        out
    }

    pub fn dot(&self, x: &[bool], y: &[bool]) -> bool {
        let mut acc = false;
        for (i, &xi) in x.iter().enumerate() {
            if !xi {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj && self.pairing[i][j] {
                    acc = !acc;
                }
            }
        }
        acc
    }

    pub fn eval(&self, class: &[bool]) -> Result<bool, SpinError> {
        if class.len() != self.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                found: class.len(),
            });
        }
        let support: Vec<usize> = (0..class.len()).filter(|&i| class[i]).collect();
        let mut acc = false;
        for (k, &i) in support.iter().enumerate() {
            acc ^= self.basis_values[i];
            for &j in &support[k + 1..] {
                acc ^= self.pairing[i][j];
            }
        }
        Ok(acc)
    }

    /// Evaluates an integer vector, padding with zeros up to the ambient
    /// dimension (edge vectors inside the extended lattice).
    pub fn eval_vector(&self, v: &LatticeVector) -> Result<bool, SpinError> {
        let mut class = v.mod2();
        if class.len() > self.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                found: class.len(),
            });
        }
        class.resize(self.dim(), false);
        self.eval(&class)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Face(usize),
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistedReport {
    pub genus: usize,
    pub exists: bool,
    pub face_values: Vec<bool>,
    pub total_value: bool,
    /// `1 + genus` mod 2, for comparison with `total_value`.
    pub predicted_total: bool,
    pub obstruction: Option<Obstruction>,
    /// Descended refinement on the symplectic quotient, basis `a_1..a_g, b_1..b_g`.
    pub witness: Option<QuadraticRefinement>,
    /// The edge classes span the mod-2 quotient, so a witness is unique.
    pub unique: bool,
}

fn standard_mod2_pairing(g: usize) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; 2 * g]; 2 * g];
    for i in 0..g {
        m[i][g + i] = true;
        m[g + i][i] = true;
    }
    m
}

/// Mod-2 coordinates `(α, β)` of an edge vector in the quotient, using
/// `α_i = <e, b_i>` and `β_i = -<e, a_i>`.
fn quotient_coords(form: &SkewForm, sb: &SymplecticBasis, v: &LatticeVector) -> Vec<bool> {
    let mut out: Vec<bool> = sb.b.iter().map(|b| form.pair(v, b).rem_euclid(2) == 1).collect();
    out.extend(sb.a.iter().map(|a| form.pair(v, a).rem_euclid(2) == 1));
    out
}

fn mod2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn all_lie_untwisted_exists(map: &CombinatorialMap) -> UntwistedReport {
    let form = edge_pairing(map);
    let sigma = QuadraticRefinement::on_edges(&form, true);
    let eval = |v: &LatticeVector| sigma.eval_vector(v).expect("edge vector in edge lattice");
    let face_values: Vec<bool> = map.faces().iter().map(|f| eval(&face_radical_vector(map, f))).collect();
    let total_value = eval(&total_radical_vector(map));
    let g = genus(map);
    let obstruction = face_values
        .iter()
        .position(|&v| v)
        .map(Obstruction::Face)
        .or(total_value.then_some(Obstruction::Total));
    let sb = radical_and_symplectic(&form);
    let e = form.dim();
    let edge_coords: Vec<Vec<bool>> = (0..e)
        .map(|i| quotient_coords(&form, &sb, &LatticeVector::basis(e, i)))
        .collect();
    let unique = sb.is_unimodular() && mod2_rank(edge_coords) == 2 * sb.genus();
    let witness = obstruction.is_none().then(|| {
        let values = sb.a.iter().chain(&sb.b).map(eval).collect();
        QuadraticRefinement::new(values, standard_mod2_pairing(sb.genus())).expect("square pairing")
    });
    UntwistedReport {
        genus: g,
        exists: obstruction.is_none(),
        face_values,
        total_value,
        predicted_total: (1 + g) % 2 == 1,
        obstruction,
        witness,
        unique,
    }
}

/// Counts refinements of the standard form on the quotient that take the
/// value 1 on every edge class, by trying all `2^{2g}` of them.
pub fn count_untwisted_by_enumeration(map: &CombinatorialMap) -> Result<usize, SpinError> {
    let form = edge_pairing(map);
    let sb = radical_and_symplectic(&form);
    if !sb.is_unimodular() {
        return Err(SpinError::NotUnimodular { divisors: sb.divisors });
    }
    let g = sb.genus();
    let pairing = standard_mod2_pairing(g);
    let e = form.dim();
    let edges: Vec<Vec<bool>> = (0..e)
        .map(|i| quotient_coords(&form, &sb, &LatticeVector::basis(e, i)))
        .collect();
    let mut count = 0;
    for bits in 0u64..(1u64 << (2 * g)) {
        let values = (0..2 * g).map(|i| bits >> i & 1 == 1).collect();
        let q = QuadraticRefinement::new(values, pairing.clone())?;
        if edges.iter().all(|c| q.eval(c).unwrap_or(false)) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug)]
pub struct TwistedRefinement {
    pub lattice: ExtendedLattice,
    pub refinement: QuadraticRefinement,
    pub edges: usize,
    pub vertices: usize,
    pub faces: usize,
    /// Values on `∂F⁻ = ρ_F - ∂F⁺`, one per face.
    pub minus_face_values: Vec<bool>,
}

impl TwistedRefinement {
    pub fn euler_congruence_holds(&self) -> bool {
        (self.edges + 3 * self.vertices) % 2 == self.faces % 2
    }
}

/// The refinement with value 1 on every edge and face class of the
/// extended lattice, checked to descend through the face and total relations.
pub fn best_twisted_refinement(map: &CombinatorialMap) -> Result<TwistedRefinement, SpinError> {
    let form = edge_pairing(map);
    let lattice = ExtendedLattice::new(map, &form);
    let refinement = QuadraticRefinement::new(vec![true; lattice.dim()], lattice.gram_mod2.clone())?;
    for (f, rel) in lattice.face_relations.iter().enumerate() {
        if refinement.eval_vector(rel)? {
            return Err(SpinError::DescentFailure {
                detail: format!("nonzero on the relation of face {}", f),
            });
        }
    }
    if refinement.eval_vector(&lattice.total_relation)? {
        return Err(SpinError::DescentFailure {
            detail: format!(
                "nonzero on the total relation (E={}, V={}, F={})",
                map.num_edges(),
                map.num_vertices(),
                map.num_faces()
            ),
        });
    }
    let mut minus_face_values = Vec::with_capacity(map.num_faces());
    for f in map.faces() {
        let mut v = face_radical_vector(map, f).0;
        v.resize(lattice.dim(), 0);
        v[lattice.plus_face(f.index)] -= 1;
        let val = refinement.eval_vector(&LatticeVector(v))?;
        if !val {
            return Err(SpinError::DescentFailure {
                detail: format!("boundary of the minus side of face {} evaluates to 0", f.index),
            });
        }
        minus_face_values.push(val);
    }
    let out = TwistedRefinement {
        lattice,
        refinement,
        edges: map.num_edges(),
        vertices: map.num_vertices(),
        faces: map.num_faces(),
        minus_face_values,
    };
    if !out.euler_congruence_holds() {
        return Err(SpinError::DescentFailure {
            detail: "edge/vertex/face parity congruence fails".into(),
        });
    }
    Ok(out)
}

/// Signs `(-1)^{1+σ(ℓ_k)}` for `ℓ_2..ℓ_n`, computed by the recursion
/// `σ(ℓ_2) = σ(E_1)`, `σ(ℓ_{k+1}) = σ(ℓ_k) + σ(E_k) + 1`, and checked
/// against direct evaluation.
pub fn loop_signs(
    sigma: &QuadraticRefinement,
    loops: &[LatticeVector],
    edge_values: &[bool],
    face: usize,
) -> Result<Vec<i8>, SpinError> {
    let mut out = Vec::with_capacity(loops.len());
    let mut current = match edge_values.first() {
        Some(&v) => v,
        None => return Ok(out),
    };
    for (i, l) in loops.iter().enumerate() {
        if i > 0 {
            current = current ^ edge_values[i] ^ true;
        }
        if sigma.eval_vector(l)? != current {
            return Err(SpinError::LoopSignMismatch { face, k: i + 2 });
        }
        out.push(if current { 1 } else { -1 });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::loop_vectors;
    use crate::graphmap::{prism, tetrahedron, theta};

    fn small() -> QuadraticRefinement {
        let p = vec![
            vec![false, true, false],
            vec![true, false, true],
            vec![false, true, false],
        ];
        QuadraticRefinement::new(vec![true, false, true], p).unwrap()
    }

    #[test]
    fn zero_class() {
        assert!(!small().eval(&[false; 3]).unwrap());
    }

    #[test]
    fn pair_law() {
        let q = small();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let mut c = vec![false; 3];
                c[i] = true;
                c[j] = true;
                let want = q.value(i) ^ q.value(j) ^ q.pairing()[i][j];
                assert_eq!(q.eval(&c).unwrap(), want);
            }
        }
    }

    #[test]
    fn tetrahedron_untwisted() {
        let r = all_lie_untwisted_exists(&tetrahedron());
        assert!(r.exists && r.unique);
        assert_eq!(r.witness.as_ref().unwrap().basis_values(), &[true, true]);
        assert_eq!(count_untwisted_by_enumeration(&tetrahedron()).unwrap(), 1);
    }

    #[test]
    fn theta_obstructed_at_total() {
        let r = all_lie_untwisted_exists(&theta());
        assert!(!r.exists);
        assert_eq!(r.obstruction, Some(Obstruction::Total));
        assert!(r.total_value && r.predicted_total);
        assert_eq!(count_untwisted_by_enumeration(&theta()).unwrap(), 0);
    }

    #[test]
    fn cube_and_prisms() {
        let cube = all_lie_untwisted_exists(&prism(4));
        assert!(cube.exists);
        assert!(cube.face_values.iter().all(|v| !v));
        assert!(!all_lie_untwisted_exists(&prism(3)).exists);
        assert_eq!(count_untwisted_by_enumeration(&prism(3)).unwrap(), 0);
    }

    #[test]
    fn twisted_descends() {
        for m in [theta(), tetrahedron(), prism(3), prism(4), prism(5)] {
            let t = best_twisted_refinement(&m).unwrap();
            assert!(t.euler_congruence_holds());
            assert!(t.minus_face_values.iter().all(|&v| v));
        }
        let t = best_twisted_refinement(&tetrahedron()).unwrap();
        assert_eq!((t.edges + 3 * t.vertices, t.faces), (18, 4));
    }

    #[test]
    fn best_signs_are_positive() {
        let m = prism(5);
        let t = best_twisted_refinement(&m).unwrap();
        for f in m.faces() {
            let fl = loop_vectors(&m, f.index, m.default_base(f.index).unwrap()).unwrap();
            let vals = vec![true; fl.face.len()];
            let signs = loop_signs(&t.refinement, &fl.loops, &vals, f.index).unwrap();
            assert!(signs.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn bounding_signs_alternate() {
        let m = prism(5);
        let form = edge_pairing(&m);
        let sigma = QuadraticRefinement::on_edges(&form, false);
        for f in m.faces() {
            let fl = loop_vectors(&m, f.index, m.default_base(f.index).unwrap()).unwrap();
            let vals = vec![false; fl.face.len()];
            let signs = loop_signs(&sigma, &fl.loops, &vals, f.index).unwrap();
            let want: Vec<i8> = (2..=fl.face.len()).map(|k| if k % 2 == 1 { 1 } else { -1 }).collect();
            assert_eq!(signs, want);
        }
    }

    #[test]
    fn recursion_mismatch_detected() {
        let m = tetrahedron();
        let form = edge_pairing(&m);
        let sigma = QuadraticRefinement::on_edges(&form, true);
        let fl = loop_vectors(&m, 0, m.default_base(0).unwrap()).unwrap();
        // claim the wrong value for the second edge
        let err = loop_signs(&sigma, &fl.loops, &[true, false, true], 0).unwrap_err();
        assert_eq!(err, SpinError::LoopSignMismatch { face: 0, k: 3 });
    }
}
