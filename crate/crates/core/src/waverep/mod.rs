//! Polynomial representation of the quotient torus and the order-by-order
//! wave-function solver.
//!
//! With complement basis `a_1..a_g, b_1..b_g` and `<a_i, b_j> = δ_ij`, the
//! generator `[αa + βb]` is written as `s^{-α·β} [αa][βb]`: first the shift
//! `[b_i] x^m = q^{-m_i} x^m`, then multiplication by `x^α`. Together:
//!
//! ```text
//! [αa + βb] x^m = s^{-α·β - 2 β·m} x^{m + α}
//! ```
//!
//! A framing functional `(f_a, f_b)` multiplies `[αa + βb]` by
//! `(-s)^{f_a·α + f_b·β}` before acting.

mod linsolve;
mod solve;

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::coeffring::HalfLaurent;
use crate::cover::{edge_pairing, radical_and_symplectic, LatticeVector, SkewForm};
use crate::error::{AlgebraError, WaveError};
use crate::graphmap::CombinatorialMap;
use crate::operators::{face_relation_r, FaceOperator};
use crate::qtorus::{central_reduce, framing_transform, ChargeSign, QuotientSpec, TorusElement};

pub use solve::{
    monomials_up_to, solve_wavefunction, verify_annihilation, DegreeReport, Residual, ResidualReport, SolveStatus,
    WaveFunction,
};

/// Exponent vector of a monomial `x^m`; entries may be negative for
/// outputs that leave the power-series ring.
pub type Exponent = Vec<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationChoice {
    pub a: Vec<LatticeVector>,
    pub b: Vec<LatticeVector>,
    /// Pairs whose roles were exchanged relative to the normal-form basis,
    /// via `(a, b) -> (b, -a)`.
    pub swaps: Vec<bool>,
    pub framing_a: Vec<i64>,
    pub framing_b: Vec<i64>,
    pub charge_sign: ChargeSign,
    pub form: SkewForm,
    pub quotient: QuotientSpec,
}

/// Basis file contents: `{"a": [[..]], "b": [[..]], "framing_a": [..], "framing_b": [..]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct BasisFile {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    #[serde(default)]
    pub framing_a: Option<Vec<i64>>,
    #[serde(default)]
    pub framing_b: Option<Vec<i64>>,
}

impl RepresentationChoice {
    pub fn new(
        map: &CombinatorialMap,
        a: Vec<LatticeVector>,
        b: Vec<LatticeVector>,
        framing_a: Vec<i64>,
        framing_b: Vec<i64>,
        charge_sign: ChargeSign,
    ) -> Result<Self, WaveError> {
        let form = edge_pairing(map);
        let g = a.len();
        if b.len() != g || framing_a.len() != g || framing_b.len() != g {
            return Err(WaveError::BadChoice(format!(
                "expected matching lengths, got {} a, {} b, {} + {} framing entries",
                g,
                b.len(),
                framing_a.len(),
                framing_b.len()
            )));
        }
        if 2 * g != form.rank() {
            return Err(WaveError::BadChoice(format!(
                "{} symplectic pairs given, the pairing has rank {}",
                g,
                form.rank()
            )));
        }
        for v in a.iter().chain(&b) {
            if v.dim() != form.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: form.dim(),
                    found: v.dim(),
                }
                .into());
            }
        }
        for i in 0..g {
            for j in 0..g {
                let checks = [
                    (i, g + j, form.pair(&a[i], &b[j]), i64::from(i == j)),
                    (i, j, form.pair(&a[i], &a[j]), 0),
                    (g + i, g + j, form.pair(&b[i], &b[j]), 0),
                ];
                for (x, y, value, want) in checks {
                    if value != want {
                        return Err(AlgebraError::NotSymplectic { i: x, j: y, value }.into());
                    }
                }
            }
        }
        let complement = a.iter().chain(&b).cloned().collect();
        let quotient = QuotientSpec::for_map(map, &form, complement, charge_sign)?;
        Ok(Self {
            a,
            b,
            swaps: vec![false; g],
            framing_a,
            framing_b,
            charge_sign,
            form,
            quotient,
        })
    }

    /// The skew-normal-form split with zero framing.
    pub fn standard(map: &CombinatorialMap, charge_sign: ChargeSign) -> Result<Self, WaveError> {
        let form = edge_pairing(map);
        let sb = radical_and_symplectic(&form);
        if !sb.is_unimodular() {
            return Err(WaveError::BadChoice(format!(
                "pairing has elementary divisors {:?}; no integral symplectic split",
                sb.divisors
            )));
        }
        let g = sb.genus();
        Self::new(map, sb.a, sb.b, vec![0; g], vec![0; g], charge_sign)
    }

    pub fn from_file(map: &CombinatorialMap, file: &BasisFile, charge_sign: ChargeSign) -> Result<Self, WaveError> {
        let g = file.a.len();
        Self::new(
            map,
            file.a.iter().cloned().map(LatticeVector).collect(),
            file.b.iter().cloned().map(LatticeVector).collect(),
            file.framing_a.clone().unwrap_or_else(|| vec![0; g]),
            file.framing_b.clone().unwrap_or_else(|| vec![0; g]),
            charge_sign,
        )
    }

    /// Exchanges the roles of pair `i`: `(a_i, b_i) -> (b_i, -a_i)`.
    pub fn with_swaps(&self, swaps: &[bool]) -> Result<Self, WaveError> {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut flags = self.swaps.clone();
        for (i, &sw) in swaps.iter().enumerate() {
            if sw {
                let old_a = a[i].clone();
                a[i] = b[i].clone();
                b[i] = old_a.neg();
                flags[i] = !flags[i];
            }
        }
        let complement = a.iter().chain(&b).cloned().collect();
        let quotient = QuotientSpec::new(&self.form, self.quotient.relations.clone(), complement)?;
        Ok(Self {
            a,
            b,
            swaps: flags,
            quotient,
            ..self.clone()
        })
    }

    pub fn with_framing(&self, framing_a: Vec<i64>, framing_b: Vec<i64>) -> Self {
        Self {
            framing_a,
            framing_b,
            ..self.clone()
        }
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// `(α, β)` with `n ≡ Σ α_i a_i + Σ β_i b_i` modulo relations.
    pub fn coordinates(&self, n: &LatticeVector) -> Result<(Vec<i64>, Vec<i64>), WaveError> {
        let mut c = self.quotient.complement_coordinates(n)?;
        let beta = c.split_off(self.genus());
        Ok((c, beta))
    }

    /// The framing as a functional on the edge lattice:
    /// `f(n) = Σ f_a,i <n, b_i> - f_b,i <n, a_i>`.
    pub fn framing_functional(&self) -> Vec<i64> {
        let e = self.form.dim();
        (0..e)
            .map(|j| {
                let ej = LatticeVector::basis(e, j);
                let mut w = 0;
                for i in 0..self.genus() {
                    w += self.framing_a[i] * self.form.pair(&ej, &self.b[i]);
                    w -= self.framing_b[i] * self.form.pair(&ej, &self.a[i]);
                }
                w
            })
            .collect()
    }

    /// Central reduction followed by the framing transform.
    pub fn reduce(&self, x: &TorusElement<HalfLaurent>) -> Result<TorusElement<HalfLaurent>, WaveError> {
        let reduced = central_reduce(x, &self.quotient)?;
        Ok(framing_transform(&reduced, &self.framing_functional()))
    }

    /// Reduced terms as `(coefficient, α, β)`.
    pub fn reduced_terms(&self, x: &TorusElement<HalfLaurent>) -> Result<Vec<ReducedTerm>, WaveError> {
        self.reduce(x)?
            .terms()
            .map(|(n, c)| {
                let (alpha, beta) = self.coordinates(n)?;
                Ok(ReducedTerm {
                    coeff: c.clone(),
                    alpha,
                    beta,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTerm {
    pub coeff: HalfLaurent,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl ReducedTerm {
    /// Image of `x^m`: coefficient and output exponent.
    pub fn act(&self, m: &[i64]) -> (HalfLaurent, Exponent) {
        let ab: i64 = self.alpha.iter().zip(&self.beta).map(|(x, y)| x * y).sum();
        let bm: i64 = self.beta.iter().zip(m).map(|(x, y)| x * y).sum();
        let out = m.iter().zip(&self.alpha).map(|(x, y)| x + y).collect();
        (self.coeff.shift(-ab - 2 * bm), out)
    }
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `element · x^m`, computed from the generator formula term by term. Output
/// exponents with a negative entry are kept and can be detected with
/// [`leaves_series_ring`].
pub fn monomial_action(
    element: &TorusElement<HalfLaurent>,
    choice: &RepresentationChoice,
    m: &[i64],
) -> Result<BTreeMap<Exponent, HalfLaurent>, WaveError> {
    let g = choice.genus();
    if m.len() != g {
        return Err(AlgebraError::DimensionMismatch {
            expected: g,
            found: m.len(),
        }
        .into());
    }
    let reduced = central_reduce(element, &choice.quotient)?;
    let mut out: BTreeMap<Exponent, HalfLaurent> = BTreeMap::new();
    for (n, c) in reduced.terms() {
        let (alpha, beta) = choice.coordinates(n)?;
        let frame = dot(&choice.framing_a, &alpha) + dot(&choice.framing_b, &beta);
        let exp = -dot(&alpha, &beta) - 2 * dot(&beta, m);
        let coeff = &(c * &HalfLaurent::neg_s_pow(frame)) * &HalfLaurent::s_pow(exp);
        let k: Exponent = m.iter().zip(&alpha).map(|(x, y)| x + y).collect();
        let slot = out.entry(k).or_insert_with(HalfLaurent::zero);
        *slot = &*slot + &coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Linear extension of [`monomial_action`] to a finite Laurent series.
pub fn series_action(
    element: &TorusElement<HalfLaurent>,
    choice: &RepresentationChoice,
    series: &BTreeMap<Exponent, HalfLaurent>,
) -> Result<BTreeMap<Exponent, HalfLaurent>, WaveError> {
    let mut out: BTreeMap<Exponent, HalfLaurent> = BTreeMap::new();
    for (m, c) in series {
        for (k, d) in monomial_action(element, choice, m)? {
            let slot = out.entry(k).or_insert_with(HalfLaurent::zero);
            *slot = &*slot + &(c * &d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn leaves_series_ring(k: &[i64]) -> bool {
    k.iter().any(|&x| x < 0)
}

/// Relation-form operators at the default base of every face.
pub fn default_operators(map: &CombinatorialMap) -> Result<Vec<FaceOperator<HalfLaurent>>, WaveError> {
    map.faces()
        .iter()
        .map(|f| {
            let base = map.default_base(f.index).map_err(crate::error::OperatorError::from)?;
            Ok(face_relation_r(map, f.index, base)?)
        })
        .collect()
}

/// Degree used to test candidate choices during the automatic search.
pub const AUTO_PROBE_DEGREE: usize = 2;
/// Upper bound on the number of candidates tried by the automatic search.
pub const AUTO_SEARCH_LIMIT: usize = 512;

/// Outcome of the automatic representation search.
#[derive(Clone, Debug, PartialEq)]
pub struct AutoChoice {
    pub choice: RepresentationChoice,
    /// Number of candidates examined.
    pub examined: usize,
    /// Whether a candidate gave a unique solution at the probe degree.
    pub found: bool,
}

fn framing_values(index: usize, len: usize) -> Vec<i64> {
    const ORDER: [i64; 3] = [0, -1, 1];
    let mut out = Vec::with_capacity(len);
    let mut k = index;
    for _ in 0..len {
        out.push(ORDER[k % 3]);
        k /= 3;
    }
    out
}

/// Tries role swaps and framings in `{0, -1, 1}` on each coordinate, in a
/// fixed order, and returns the first choice for which the solver finds a
/// unique solution through [`AUTO_PROBE_DEGREE`]. Falls back to the
/// standard choice when none does.
pub fn auto_choice(map: &CombinatorialMap, charge_sign: ChargeSign) -> Result<AutoChoice, WaveError> {
    let base = RepresentationChoice::standard(map, charge_sign)?;
    let g = base.genus();
    let ops = default_operators(map)?;
    let framings = 3usize.checked_pow(2 * g as u32).unwrap_or(usize::MAX);
    let mut examined = 0;
    for swap_bits in 0..(1usize << g) {
        let swaps: Vec<bool> = (0..g).map(|i| swap_bits >> i & 1 == 1).collect();
        let swapped = base.with_swaps(&swaps)?;
        for idx in 0..framings {
            if examined >= AUTO_SEARCH_LIMIT {
                return Ok(AutoChoice {
                    choice: base,
                    examined,
                    found: false,
                });
            }
            examined += 1;
            let mut f = framing_values(idx, 2 * g);
            let fb = f.split_off(g);
            let candidate = swapped.with_framing(f, fb);
            let wf = solve_wavefunction(&ops, &candidate, AUTO_PROBE_DEGREE)?;
            if wf.status == SolveStatus::Unique {
                return Ok(AutoChoice {
                    choice: candidate,
                    examined,
                    found: true,
                });
            }
        }
    }
    Ok(AutoChoice {
        choice: base,
        examined,
        found: false,
    })
}
