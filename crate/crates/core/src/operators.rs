//! Face relations `R = q^{-1/2}[0] + [ℓ_2] + ... + [ℓ_n]` and their signed
//! two-variable forms `A = a^{-1}[0] + Σ sign_k [ℓ_k]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coeffring::{HalfLaurent, TwoVarLaurent};
use crate::cover::{loop_vectors, LatticeVector, SkewForm};
use crate::error::OperatorError;
use crate::graphmap::{BaseChoice, CombinatorialMap};
use crate::qtorus::{central_reduce, torus_mul, QuotientSpec, TorusElement};
use crate::spin::{loop_signs, QuadraticRefinement};

#[derive(Clone, Debug, PartialEq)]
pub struct FaceOperator<C> {
    pub face: usize,
    /// Dart-qualified base, resolved to the first slot of the face sequence.
    pub base: BaseChoice,
    pub loops: Vec<LatticeVector>,
    /// One sign per loop term; all `+1` for the relation form.
    pub signs: Vec<i8>,
    pub element: TorusElement<C>,
    pub warning: Option<String>,
}

impl<C> FaceOperator<C> {
    pub fn face_len(&self) -> usize {
        self.loops.len() + 1
    }
}

struct Resolved {
    base: BaseChoice,
    edges: Vec<usize>,
    loops: Vec<LatticeVector>,
    warning: Option<String>,
}

fn resolve(map: &CombinatorialMap, face: usize, base: BaseChoice) -> Result<Resolved, OperatorError> {
    let fl = loop_vectors(map, face, base)?;
    let d = fl.face.darts[0];
    Ok(Resolved {
        base: BaseChoice::with_dart(map.vertex_id(map.vertex_of(d)), map.dart_id(d)),
        edges: fl.face.edges,
        loops: fl.loops,
        warning: fl.warning,
    })
}

pub fn face_relation_r(map: &CombinatorialMap, face: usize, base: BaseChoice) -> Result<FaceOperator<HalfLaurent>, OperatorError> {
    let r = resolve(map, face, base)?;
    let e = map.num_edges();
    let mut element = TorusElement::monomial(LatticeVector::zero(e), HalfLaurent::s_pow(-1));
    for l in &r.loops {
        element.add_term(l.clone(), HalfLaurent::one());
    }
    Ok(FaceOperator {
        face,
        base: r.base,
        signs: vec![1; r.loops.len()],
        loops: r.loops,
        element,
        warning: r.warning,
    })
}

pub fn face_operator_a(
    map: &CombinatorialMap,
    face: usize,
    base: BaseChoice,
    sigma: &QuadraticRefinement,
) -> Result<FaceOperator<TwoVarLaurent>, OperatorError> {
    let r = resolve(map, face, base)?;
    let e = map.num_edges();
    let edge_values = r
        .edges
        .iter()
        .map(|&i| sigma.eval_vector(&LatticeVector::basis(e, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let signs = loop_signs(sigma, &r.loops, &edge_values, face)?;
    let mut element = TorusElement::monomial(LatticeVector::zero(e), TwoVarLaurent::monomial(1, -1, 0));
    for (l, &sg) in r.loops.iter().zip(&signs) {
        element.add_term(l.clone(), TwoVarLaurent::monomial(sg, 0, 0));
    }
    Ok(FaceOperator {
        face,
        base: r.base,
        loops: r.loops,
        signs,
        element,
        warning: r.warning,
    })
}

/// Substitutes `a -> q^{1/2}` and compares with the relation form at the
/// same face and base.
pub fn specialize_to_r(map: &CombinatorialMap, op: &FaceOperator<TwoVarLaurent>) -> Result<FaceOperator<HalfLaurent>, OperatorError> {
    let element = op.element.map_coeffs(|c| c.specialize_a());
    let expected = face_relation_r(map, op.face, op.base)?;
    let keys: BTreeSet<&LatticeVector> = element.terms().chain(expected.element.terms()).map(|(n, _)| n).collect();
    let diffs: Vec<String> = keys
        .into_iter()
        .filter_map(|n| {
            let got = element.coeff(n);
            let want = expected.element.coeff(n);
            (got != want).then(|| format!("{}: got {}, expected {}", n, got, want))
        })
        .collect();
    if !diffs.is_empty() {
        return Err(OperatorError::SpecializationMismatch { face: op.face, terms: diffs });
    }
    Ok(FaceOperator {
        face: op.face,
        base: op.base,
        loops: op.loops.clone(),
        signs: op.signs.clone(),
        element,
        warning: op.warning.clone(),
    })
}

/// A unit `sign * a^{a_exp} s^{s_exp} [vector]`; `a_exp` is zero for the
/// relation form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMonomial {
    pub sign: i8,
    pub a_exp: i64,
    pub s_exp: i64,
    pub vector: LatticeVector,
}

impl UnitMonomial {
    pub fn coefficient(&self) -> TwoVarLaurent {
        TwoVarLaurent::monomial(self.sign, self.a_exp, self.s_exp)
    }

    pub fn element(&self) -> TorusElement<TwoVarLaurent> {
        TorusElement::monomial(self.vector.clone(), self.coefficient())
    }
}

/// Returns `c` with `p = c * t` when `c` is a signed monomial; `c = 1` when
/// both sides vanish.
fn monomial_ratio(p: &TorusElement<TwoVarLaurent>, t: &TorusElement<TwoVarLaurent>) -> Option<TwoVarLaurent> {
    if t.is_zero() {
        return p.is_zero().then(TwoVarLaurent::one);
    }
    let (n, tc) = t.terms().next()?;
    let pc = p.coeff(n);
    let (tk, tv) = tc.terms().last()?;
    let (pk, pv) = pc.terms().last()?;
    if pv.abs() != tv.abs() {
        return None;
    }
    let sign: BigInt = if pv == tv { BigInt::one() } else { -BigInt::one() };
    let c = TwoVarLaurent::monomial(sign, pk.0 - tk.0, pk.1 - tk.1);
    (&t.scale(&c) == p).then_some(c)
}

fn candidate_vectors(from: &[LatticeVector], to: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    let zero = LatticeVector::zero(dim);
    let mut out = vec![zero.clone()];
    let mut seen: BTreeSet<LatticeVector> = out.iter().cloned().collect();
    let mut push = |v: LatticeVector, out: &mut Vec<LatticeVector>| {
        if seen.insert(v.clone()) {
            out.push(v);
        }
    };
    let with_zero = |ls: &[LatticeVector]| std::iter::once(zero.clone()).chain(ls.iter().cloned()).collect::<Vec<_>>();
    let (src, dst) = (with_zero(from), with_zero(to));
    for d in &dst {
        for s in &src {
            let m = d.sub(s);
            push(m.neg(), &mut out);
            push(m, &mut out);
        }
    }
    for i in 0..dim {
        let e = LatticeVector::basis(dim, i);
        push(e.neg(), &mut out);
        push(e, &mut out);
    }
    out
}

fn find_unit(
    from: &FaceOperator<TwoVarLaurent>,
    to: &FaceOperator<TwoVarLaurent>,
    form: &SkewForm,
    quotient: &QuotientSpec,
) -> Result<Option<UnitMonomial>, OperatorError> {
    let target = central_reduce(&to.element, quotient)?;
    for m in candidate_vectors(&from.loops, &to.loops, form.dim()) {
        let moved = torus_mul(&TorusElement::generator(m.clone()), &from.element, form)?;
        let reduced = central_reduce(&moved, quotient)?;
        if let Some(c) = monomial_ratio(&reduced, &target) {
            // reduce([m] R_v) = c reduce(R_v'), so the unit is c^{-1} [m]
            let ((a, s), coeff) = c.terms().next().expect("monomial");
            return Ok(Some(UnitMonomial {
                sign: if coeff.is_positive() { 1 } else { -1 },
                a_exp: -a,
                s_exp: -s,
                vector: m,
            }));
        }
    }
    Ok(None)
}

/// Searches for `u = ±s^k [m]` with `reduce(u R_v) = reduce(R_v')`.
pub fn vertex_change_unit(
    map: &CombinatorialMap,
    face: usize,
    v: BaseChoice,
    v_prime: BaseChoice,
    form: &SkewForm,
    quotient: &QuotientSpec,
) -> Result<Option<UnitMonomial>, OperatorError> {
    let lift = |op: FaceOperator<HalfLaurent>| FaceOperator {
        face: op.face,
        base: op.base,
        loops: op.loops,
        signs: op.signs,
        element: op.element.map_coeffs(|c| TwoVarLaurent::from(c)),
        warning: op.warning,
    };
    let from = lift(face_relation_r(map, face, v)?);
    let to = lift(face_relation_r(map, face, v_prime)?);
    find_unit(&from, &to, form, quotient)
}

/// The same search for the signed two-variable operators.
pub fn vertex_change_unit_a(
    map: &CombinatorialMap,
    face: usize,
    v: BaseChoice,
    v_prime: BaseChoice,
    sigma: &QuadraticRefinement,
    form: &SkewForm,
    quotient: &QuotientSpec,
) -> Result<Option<UnitMonomial>, OperatorError> {
    let from = face_operator_a(map, face, v, sigma)?;
    let to = face_operator_a(map, face, v_prime, sigma)?;
    find_unit(&from, &to, form, quotient)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexChangeEntry {
    pub from: BaseChoice,
    pub to: BaseChoice,
    pub unit: Option<UnitMonomial>,
}

/// All ordered base pairs on a face.
pub fn vertex_change_table(
    map: &CombinatorialMap,
    face: usize,
    form: &SkewForm,
    quotient: &QuotientSpec,
) -> Result<Vec<VertexChangeEntry>, OperatorError> {
    let bases = map.base_choices(face)?;
    let mut out = Vec::new();
    for &from in &bases {
        for &to in &bases {
            out.push(VertexChangeEntry {
                from,
                to,
                unit: vertex_change_unit(map, face, from, to, form, quotient)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::edge_pairing;
    use crate::graphmap::{prism, tetrahedron, theta};
    use crate::qtorus::ChargeSign;
    use crate::spin::best_twisted_refinement;

    #[test]
    fn tetrahedron_relation() {
        let m = tetrahedron();
        let op = face_relation_r(&m, 0, m.default_base(0).unwrap()).unwrap();
        let f = m.face(0).unwrap();
        let e1 = LatticeVector::basis(6, f.edges[0]);
        let e12 = e1.add(&LatticeVector::basis(6, f.edges[1]));
        let want = TorusElement::from_terms(
            6,
            [
                (LatticeVector::zero(6), HalfLaurent::s_pow(-1)),
                (e1, HalfLaurent::one()),
                (e12, HalfLaurent::one()),
            ],
        );
        assert_eq!(op.element, want);
    }

    #[test]
    fn term_counts_match_face_lengths() {
        for m in [theta(), tetrahedron(), prism(5)] {
            let t = best_twisted_refinement(&m).unwrap();
            for f in m.faces() {
                let b = m.default_base(f.index).unwrap();
                assert_eq!(face_relation_r(&m, f.index, b).unwrap().element.num_terms(), f.len());
                assert_eq!(face_operator_a(&m, f.index, b, &t.refinement).unwrap().element.num_terms(), f.len());
            }
        }
    }

    #[test]
    fn bounding_triangle_signs() {
        let m = tetrahedron();
        let sigma = QuadraticRefinement::on_edges(&edge_pairing(&m), false);
        let op = face_operator_a(&m, 0, m.default_base(0).unwrap(), &sigma).unwrap();
        assert_eq!(op.signs, vec![-1, 1]);
        assert_eq!(op.element.coeff(&op.loops[0]), TwoVarLaurent::monomial(-1, 0, 0));
    }

    #[test]
    fn specialization_recovers_relation() {
        for m in [theta(), tetrahedron()] {
            let t = best_twisted_refinement(&m).unwrap();
            for f in m.faces() {
                for b in m.base_choices(f.index).unwrap() {
                    let a = face_operator_a(&m, f.index, b, &t.refinement).unwrap();
                    let r = specialize_to_r(&m, &a).unwrap();
                    assert_eq!(r.element, face_relation_r(&m, f.index, b).unwrap().element);
                }
            }
        }
    }

    #[test]
    fn flipped_edge_is_reported() {
        let m = tetrahedron();
        let t = best_twisted_refinement(&m).unwrap();
        let f = m.face(0).unwrap();
        let sigma = t.refinement.with_flipped(f.edges[1]);
        let a = face_operator_a(&m, 0, m.default_base(0).unwrap(), &sigma).unwrap();
        match specialize_to_r(&m, &a) {
            Err(OperatorError::SpecializationMismatch { face: 0, terms }) => assert_eq!(terms.len(), 1),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn same_base_gives_identity_unit() {
        let m = tetrahedron();
        let form = edge_pairing(&m);
        let q = QuotientSpec::standard(&m, &form, ChargeSign::Plus).unwrap();
        let b = m.default_base(1).unwrap();
        let u = vertex_change_unit(&m, 1, b, b, &form, &q).unwrap().unwrap();
        assert_eq!(u, UnitMonomial { sign: 1, a_exp: 0, s_exp: 0, vector: LatticeVector::zero(6) });
    }

    #[test]
    fn theta_and_tetrahedron_units_exist() {
        for m in [theta(), tetrahedron()] {
            let form = edge_pairing(&m);
            let q = QuotientSpec::standard(&m, &form, ChargeSign::Plus).unwrap();
            for f in m.faces() {
                for entry in vertex_change_table(&m, f.index, &form, &q).unwrap() {
                    assert!(entry.unit.is_some(), "face {} {:?} -> {:?}", f.index, entry.from, entry.to);
                }
            }
        }
    }
}
