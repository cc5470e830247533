//! Quantum torus on an integer lattice with a skew form.
//!
//! Generators `[n]` multiply by `[n][m] = s^{<n,m>} [n+m]`; the map from
//! lattice vectors to coefficients is already the normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffring::{Coefficient, HalfLaurent};
use crate::cover::{face_radical_vector, radical_and_symplectic, total_radical_vector, LatticeVector, SkewForm};
use crate::error::AlgebraError;
use crate::graphmap::CombinatorialMap;

#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<C> {
    dim: usize,
    terms: BTreeMap<LatticeVector, C>,
}

impl<C: Coefficient> TorusElement<C> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The identity `[0]`.
    pub fn one(dim: usize) -> Self {
        Self::monomial(LatticeVector::zero(dim), C::one())
    }

    pub fn monomial(n: LatticeVector, coeff: C) -> Self {
        let mut out = Self::zero(n.dim());
        out.add_term(n, coeff);
        out
    }

    pub fn generator(n: LatticeVector) -> Self {
        Self::monomial(n, C::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (LatticeVector, C)>) -> Self {
        let mut out = Self::zero(dim);
        for (n, c) in terms {
            out.add_term(n, c);
        }
        out
    }

    pub fn add_term(&mut self, n: LatticeVector, coeff: C) {
        assert_eq!(n.dim(), self.dim, "lattice dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&n);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(n, coeff);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, n: &LatticeVector) -> C {
        self.terms.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(n.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(n, c)| (n.clone(), c.mul(k))))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TorusElement<D> {
        TorusElement::from_terms(self.dim, self.terms.iter().map(|(n, c)| (n.clone(), f(c))))
    }

    pub fn display_with(&self, symbol: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                let gen = render_generator(n, &symbol);
                let cs = c.to_string();
                if cs == "1" {
                    gen
                } else if cs == "-1" {
                    format!("-{}", gen)
                } else {
                    format!("({}){}", cs, gen)
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn render_generator(n: &LatticeVector, symbol: &impl Fn(usize) -> String) -> String {
    if n.is_zero() {
        return "[0]".into();
    }
    let factors: Vec<String> = n
        .support()
        .map(|(i, c)| if c == 1 { symbol(i) } else { format!("{}^{}", symbol(i), c) })
        .collect();
    format!("[{}]", factors.join(" "))
}

impl<C: Coefficient> fmt::Display for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| format!("E{}", i)))
    }
}

fn s_unit<C: Coefficient>(k: i64) -> C {
    C::from_half(&HalfLaurent::s_pow(k))
}

fn check_dim(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { expected, found })
    }
}

pub fn torus_mul<C: Coefficient>(
    x: &TorusElement<C>,
    y: &TorusElement<C>,
    form: &SkewForm,
) -> Result<TorusElement<C>, AlgebraError> {
    check_dim(form.dim(), x.dim)?;
    check_dim(form.dim(), y.dim)?;
    let mut out = TorusElement::zero(x.dim);
    for (n, a) in &x.terms {
        for (m, b) in &y.terms {
            let k = form.pair(n, m);
            out.add_term(n.add(m), a.mul(b).mul(&s_unit(k)));
        }
    }
    Ok(out)
}

/// `[n] -> (-s)^{f(n)} [n]` for an integer functional `f`.
pub fn framing_transform<C: Coefficient>(x: &TorusElement<C>, functional: &[i64]) -> TorusElement<C> {
    assert_eq!(functional.len(), x.dim, "functional dimension mismatch");
    x.map_terms(|n, c| {
        let k: i64 = n.coords().iter().zip(functional).map(|(a, b)| a * b).sum();
        c.mul(&C::from_half(&HalfLaurent::neg_s_pow(k)))
    })
}

impl<C: Coefficient> TorusElement<C> {
    fn map_terms(&self, f: impl Fn(&LatticeVector, &C) -> C) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(n, c)| (n.clone(), f(n, c))))
    }
}

/// Value of the central character on the all-edges vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChargeSign {
    Plus,
    Minus,
}

impl ChargeSign {
    pub fn sign(self) -> i64 {
        match self {
            ChargeSign::Plus => 1,
            ChargeSign::Minus => -1,
        }
    }
}

impl fmt::Display for ChargeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChargeSign::Plus => "+",
            ChargeSign::Minus => "-",
        })
    }
}

impl FromStr for ChargeSign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(ChargeSign::Plus),
            "-" | "minus" => Ok(ChargeSign::Minus),
            other => Err(format!("charge sign must be + or -, got {:?}", other)),
        }
    }
}

/// Character on a face vector: `[rho_F] -> q^{-1}`.
pub fn face_character() -> HalfLaurent {
    HalfLaurent::s_pow(-2)
}

/// Character on the all-edges vector: `sign * (-s^{-1})^F`. Its square is
/// `q^{-F}`, matching `sum_F rho_F = 2 rho_Gamma`.
pub fn total_character(num_faces: usize, sign: ChargeSign) -> HalfLaurent {
    let f = num_faces as i64;
    let parity = if f % 2 == 0 { 1 } else { -1 };
    HalfLaurent::monomial(sign.sign() * parity, -f)
}

/// Central characters on a relation lattice together with a complement,
/// forming a basis of the whole lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSpec {
    pub relations: Vec<(LatticeVector, HalfLaurent)>,
    pub complement: Vec<LatticeVector>,
    units: Vec<(i8, i64)>,
    inverse: Vec<Vec<BigRational>>,
}

impl QuotientSpec {
    pub fn new(
        form: &SkewForm,
        relations: Vec<(LatticeVector, HalfLaurent)>,
        complement: Vec<LatticeVector>,
    ) -> Result<Self, AlgebraError> {
        let dim = form.dim();
        let mut units = Vec::with_capacity(relations.len());
        for (idx, (v, chi)) in relations.iter().enumerate() {
            check_dim(dim, v.dim())?;
            let image = form.apply(v);
            if let Some((g, &val)) = image.coords().iter().enumerate().find(|(_, x)| **x != 0) {
                return Err(AlgebraError::NotCentral {
                    index: idx,
                    generator: g,
                    value: -val,
                });
            }
            units.push(chi.as_unit_monomial().ok_or_else(|| AlgebraError::NotUnit {
                index: idx,
                value: chi.to_string(),
            })?);
        }
        for c in &complement {
            check_dim(dim, c.dim())?;
        }
        let columns: Vec<&LatticeVector> = relations.iter().map(|(v, _)| v).chain(&complement).collect();
        let inverse = invert_columns(&columns, dim)?;
        Ok(Self {
            relations,
            complement,
            units,
            inverse,
        })
    }

    /// Face vectors (all but the last face) and the all-edges vector, with
    /// the given complement.
    pub fn for_map(
        map: &CombinatorialMap,
        form: &SkewForm,
        complement: Vec<LatticeVector>,
        sign: ChargeSign,
    ) -> Result<Self, AlgebraError> {
        let mut rels = vec![(total_radical_vector(map), total_character(map.num_faces(), sign))];
        let faces = map.faces();
        for f in &faces[..faces.len() - 1] {
            rels.push((face_radical_vector(map, f), face_character()));
        }
        Self::new(form, rels, complement)
    }

    /// Face and total characters with the symplectic part of the skew
    /// normal form as complement, in the order `a_1..a_g, b_1..b_g`.
    pub fn standard(map: &CombinatorialMap, form: &SkewForm, sign: ChargeSign) -> Result<Self, AlgebraError> {
        let sb = radical_and_symplectic(form);
        Self::for_map(map, form, sb.a.into_iter().chain(sb.b).collect(), sign)
    }

    pub fn dim(&self) -> usize {
        self.inverse.len()
    }

    /// Integer coordinates over relations followed by complement.
    pub fn decompose(&self, n: &LatticeVector) -> Result<Vec<i64>, AlgebraError> {
        check_dim(self.dim(), n.dim())?;
        let mut out = Vec::with_capacity(self.dim());
        for row in &self.inverse {
            let mut acc = BigRational::zero();
            for (r, &x) in row.iter().zip(n.coords()) {
                if x != 0 {
                    acc += r * BigRational::from_integer(BigInt::from(x));
                }
            }
            if !acc.is_integer() {
                return Err(AlgebraError::NotDecomposable { vector: n.0.clone() });
            }
            out.push(i64::try_from(acc.to_integer()).map_err(|_| AlgebraError::NotDecomposable {
                vector: n.0.clone(),
            })?);
        }
        Ok(out)
    }

    /// Coordinates of `n` along the complement vectors.
    pub fn complement_coordinates(&self, n: &LatticeVector) -> Result<Vec<i64>, AlgebraError> {
        Ok(self.decompose(n)?.split_off(self.relations.len()))
    }

    /// `n = r + n'` with `r` in the relation span; returns the character
    /// value of `[r]` and `n'`.
    pub fn reduce_vector(&self, n: &LatticeVector) -> Result<(HalfLaurent, LatticeVector), AlgebraError> {
        let coords = self.decompose(n)?;
        let (rel, comp) = coords.split_at(self.relations.len());
        let mut sign = 1i64;
        let mut exp = 0i64;
        for (&(u, k), &r) in self.units.iter().zip(rel) {
            if u < 0 && r.rem_euclid(2) == 1 {
                sign = -sign;
            }
            exp += k * r;
        }
        let mut rest = LatticeVector::zero(self.dim());
        for (v, &t) in self.complement.iter().zip(comp) {
            if t != 0 {
                rest = rest.add(&v.scale(t));
            }
        }
        Ok((HalfLaurent::monomial(sign, exp), rest))
    }
}

fn invert_columns(columns: &[&LatticeVector], dim: usize) -> Result<Vec<Vec<BigRational>>, AlgebraError> {
    let not_basis = |rank| AlgebraError::NotABasis { rank, dim };
    if columns.len() != dim {
        let rows: Vec<Vec<i64>> = columns.iter().map(|c| c.0.clone()).collect();
        return Err(not_basis(crate::cover::rational_rank(&rows)));
    }
    // augmented [B | I] with B's columns the given vectors
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| BigRational::from_integer(c.0[i].into())).collect();
            row.extend((0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..dim {
        let Some(p) = (col..dim).find(|&r| !m[r][col].is_zero()) else {
            return Err(not_basis(col));
        };
        m.swap(col, p);
        let piv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &piv;
        }
        for r in 0..dim {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * dim {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[dim..].to_vec()).collect())
}

/// Rewrites every `[n]` as its character value times `[n']`, `n'` in the
/// complement span.
pub fn central_reduce<C: Coefficient>(x: &TorusElement<C>, spec: &QuotientSpec) -> Result<TorusElement<C>, AlgebraError> {
    check_dim(spec.dim(), x.dim)?;
    let mut out = TorusElement::zero(x.dim);
    for (n, c) in &x.terms {
        let (chi, rest) = spec.reduce_vector(n)?;
        out.add_term(rest, c.mul(&C::from_half(&chi)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::edge_pairing;
    use crate::graphmap::{tetrahedron, theta};

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn std_form() -> SkewForm {
        SkewForm::new(vec![vec![0, 1], vec![-1, 0]])
    }

    type T = TorusElement<HalfLaurent>;

    #[test]
    fn both_orderings() {
        let f = std_form();
        let n = T::generator(lv(&[1, 0]));
        let m = T::generator(lv(&[0, 1]));
        let nm = torus_mul(&n, &m, &f).unwrap();
        let mn = torus_mul(&m, &n, &f).unwrap();
        assert_eq!(nm, T::monomial(lv(&[1, 1]), HalfLaurent::s_pow(1)));
        assert_eq!(mn, T::monomial(lv(&[1, 1]), HalfLaurent::s_pow(-1)));
    }

    #[test]
    fn identity_and_inverse() {
        let f = std_form();
        let n = T::generator(lv(&[2, -3]));
        assert_eq!(torus_mul(&n, &T::one(2), &f).unwrap(), n);
        let inv = T::generator(lv(&[-2, 3]));
        assert_eq!(torus_mul(&n, &inv, &f).unwrap(), T::one(2));
    }

    #[test]
    fn dimension_mismatch() {
        let err = torus_mul(&T::one(3), &T::one(3), &std_form()).unwrap_err();
        assert_eq!(err, AlgebraError::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn framing_examples() {
        let x = T::generator(lv(&[1, 0])).add(&T::generator(lv(&[0, 1])));
        assert_eq!(framing_transform(&x, &[0, 0]), x);
        let y = framing_transform(&T::generator(lv(&[1, 0])), &[1, 0]);
        assert_eq!(y, T::monomial(lv(&[1, 0]), HalfLaurent::monomial(-1, 1)));
    }

    #[test]
    fn total_character_squares_to_face_product() {
        for f in 1..7 {
            for sign in [ChargeSign::Plus, ChargeSign::Minus] {
                let c = total_character(f, sign);
                assert_eq!(&c * &c, face_character().pow(f as u32));
            }
        }
        assert_eq!(total_character(4, ChargeSign::Plus), HalfLaurent::s_pow(-4));
        assert_eq!(total_character(3, ChargeSign::Plus), HalfLaurent::monomial(-1, -3));
    }

    fn tetra_spec(sign: ChargeSign) -> (SkewForm, QuotientSpec) {
        let m = tetrahedron();
        let form = edge_pairing(&m);
        let sb = radical_and_symplectic(&form);
        let comp = sb.a.iter().chain(&sb.b).cloned().collect();
        let spec = QuotientSpec::for_map(&m, &form, comp, sign).unwrap();
        (form, spec)
    }

    #[test]
    fn every_face_vector_reduces_to_its_character() {
        let m = tetrahedron();
        let (_, spec) = tetra_spec(ChargeSign::Plus);
        for f in m.faces() {
            let x = T::generator(face_radical_vector(&m, f));
            assert_eq!(central_reduce(&x, &spec).unwrap(), T::monomial(LatticeVector::zero(6), face_character()));
        }
    }

    #[test]
    fn complement_is_fixed() {
        let (_, spec) = tetra_spec(ChargeSign::Minus);
        for c in spec.complement.clone() {
            let x = T::generator(c.clone());
            assert_eq!(central_reduce(&x, &spec).unwrap(), x);
        }
    }

    #[test]
    fn reduction_is_idempotent_on_edges() {
        let (_, spec) = tetra_spec(ChargeSign::Plus);
        for e in 0..6 {
            let x = T::generator(LatticeVector::basis(6, e));
            let once = central_reduce(&x, &spec).unwrap();
            assert_eq!(central_reduce(&once, &spec).unwrap(), once);
        }
    }

    #[test]
    fn non_central_relation_rejected() {
        let form = std_form();
        let err = QuotientSpec::new(&form, vec![(lv(&[1, 0]), HalfLaurent::one())], vec![lv(&[0, 1])]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotCentral { index: 0, .. }));
    }

    #[test]
    fn non_unit_character_rejected() {
        let form = SkewForm::zero(1);
        let chi = HalfLaurent::from_terms([(0, 1), (1, 1)]);
        let err = QuotientSpec::new(&form, vec![(lv(&[1]), chi)], vec![]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotUnit { .. }));
    }

    #[test]
    fn integrality_failure_names_vector() {
        let form = SkewForm::zero(1);
        let spec = QuotientSpec::new(&form, vec![(lv(&[2]), HalfLaurent::one())], vec![]).unwrap();
        let err = central_reduce(&T::generator(lv(&[1])), &spec).unwrap_err();
        assert_eq!(err, AlgebraError::NotDecomposable { vector: vec![1] });
    }

    #[test]
    fn theta_reduces_to_scalars() {
        let m = theta();
        let form = edge_pairing(&m);
        let spec = QuotientSpec::for_map(&m, &form, vec![], ChargeSign::Plus).unwrap();
        for e in 0..3 {
            let r = central_reduce(&T::generator(LatticeVector::basis(3, e)), &spec).unwrap();
            assert_eq!(r.num_terms(), 1);
            assert!(r.coeff(&LatticeVector::zero(3)).as_unit_monomial().is_some());
        }
    }

    #[test]
    fn rendering() {
        let x = T::monomial(lv(&[1, -2]), HalfLaurent::s_pow(-1)).add(&T::one(2));
        assert_eq!(x.to_string(), "[0] + (q^{-1/2})[E0 E1^-2]");
    }
}
