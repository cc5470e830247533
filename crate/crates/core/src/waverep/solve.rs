use std::collections::{BTreeMap, BTreeSet};

use super::linsolve;
use super::{leaves_series_ring, monomial_action, Exponent, ReducedTerm, RepresentationChoice};
use crate::coeffring::{HalfLaurent, RationalS};
use crate::error::WaveError;
use crate::operators::FaceOperator;
use crate::qtorus::central_reduce;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    /// First degree with free coefficients; they are set to zero.
    Underdetermined { degree: usize, kernel_dim: usize },
    Inconsistent { degree: usize, equations: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    pub max_degree: usize,
    pub genus: usize,
    pub coefficients: BTreeMap<Exponent, RationalS>,
    pub status: SolveStatus,
    pub degrees: Vec<DegreeReport>,
    /// Every coefficient is a Laurent polynomial in `s`.
    pub denominators_clear: bool,
}

impl WaveFunction {
    pub fn coeff(&self, m: &[i64]) -> RationalS {
        self.coefficients.get(m).cloned().unwrap_or_else(RationalS::zero)
    }
}

/// Exponents in `Z_{>=0}^g` of total degree at most `d`, by degree and then
/// lexicographically.
pub fn monomials_up_to(g: usize, d: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    for deg in 0..=d {
        out.extend(monomials_of_degree(g, deg));
    }
    out
}

fn monomials_of_degree(g: usize, d: usize) -> Vec<Exponent> {
    if g == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(g - 1, d - first) {
            rest.insert(0, first as i64);
            out.push(rest);
        }
    }
    out
}

fn degree(m: &[i64]) -> usize {
    m.iter().sum::<i64>() as usize
}

struct Equation {
    face: usize,
    output: Exponent,
    degree: usize,
    terms: BTreeMap<Exponent, HalfLaurent>,
}

impl Equation {
    fn render(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) c{:?}", c, m)).collect();
        format!("face {} at x^{:?}: {} = 0", self.face, self.output, parts.join(" + "))
    }
}

/// Equations from `op · Ψ = 0` at every output exponent whose non-negative
/// preimages all have degree at most `max_degree`.
fn equations(face: usize, terms: &[ReducedTerm], g: usize, max_degree: usize) -> Vec<Equation> {
    let mut outputs = BTreeSet::new();
    for m in monomials_up_to(g, max_degree) {
        for t in terms {
            outputs.insert(t.act(&m).1);
        }
    }
    let mut out = Vec::new();
    'outputs: for k in outputs {
        let mut eq: BTreeMap<Exponent, HalfLaurent> = BTreeMap::new();
        for t in terms {
            let pre: Exponent = k.iter().zip(&t.alpha).map(|(x, y)| x - y).collect();
            if leaves_series_ring(&pre) {
                continue;
            }
            if degree(&pre) > max_degree {
                continue 'outputs;
            }
            let (c, _) = t.act(&pre);
            let slot = eq.entry(pre).or_insert_with(HalfLaurent::zero);
            *slot = &*slot + &c;
        }
        eq.retain(|_, c| !c.is_zero());
        if let Some(deg) = eq.keys().map(|m| degree(m)).max() {
            out.push(Equation {
                face,
                output: k,
                degree: deg,
                terms: eq,
            });
        }
    }
    out
}

/// Solves `R_F Ψ = 0` for all given operators, degree by degree in the
/// total `x`-degree, with `c_0 = 1`.
pub fn solve_wavefunction(
    operators: &[FaceOperator<HalfLaurent>],
    choice: &RepresentationChoice,
    max_degree: usize,
) -> Result<WaveFunction, WaveError> {
    let g = choice.genus();
    let mut eqs: Vec<Equation> = Vec::new();
    for op in operators {
        let terms = choice.reduced_terms(&op.element)?;
        eqs.extend(equations(op.face, &terms, g, max_degree));
    }
    let mut by_degree: BTreeMap<usize, Vec<&Equation>> = BTreeMap::new();
    for e in &eqs {
        by_degree.entry(e.degree).or_default().push(e);
    }

    let mut coefficients: BTreeMap<Exponent, RationalS> = BTreeMap::new();
    coefficients.insert(vec![0; g], RationalS::one());
    let mut status = SolveStatus::Unique;
    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        let unknowns: Vec<Exponent> = if d == 0 { Vec::new() } else { monomials_of_degree(g, d) };
        let index: BTreeMap<&Exponent, usize> = unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let level = by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[]);
        let mut rows = Vec::with_capacity(level.len());
        let mut rhs = Vec::with_capacity(level.len());
        for e in level {
            let mut row = vec![RationalS::zero(); unknowns.len()];
            let mut r = RationalS::zero();
            for (m, c) in &e.terms {
                let c = RationalS::from(c);
                match index.get(m) {
                    Some(&i) => row[i] = &row[i] + &c,
                    None => {
                        let known = coefficients.get(m).cloned().unwrap_or_else(RationalS::zero);
                        r = &r - &(&c * &known);
                    }
                }
            }
            rows.push(row);
            rhs.push(r);
        }
        let sol = linsolve::solve(rows, rhs, unknowns.len());
        let kernel_dim = unknowns.len() - sol.rank;
        degrees.push(DegreeReport {
            degree: d,
            unknowns: unknowns.len(),
            equations: level.len(),
            rank: sol.rank,
            kernel_dim,
            consistent: sol.inconsistent.is_empty(),
        });
        if !sol.inconsistent.is_empty() {
            status = SolveStatus::Inconsistent {
                degree: d,
                equations: sol.inconsistent.iter().map(|&i| level[i].render()).collect(),
            };
            break;
        }
        if kernel_dim > 0 && status == SolveStatus::Unique {
            status = SolveStatus::Underdetermined { degree: d, kernel_dim };
        }
        for (m, x) in unknowns.into_iter().zip(sol.x) {
            if !x.is_zero() {
                coefficients.insert(m, x);
            }
        }
    }
    let denominators_clear = coefficients.values().all(|c| c.as_half_laurent().is_some());
    Ok(WaveFunction {
        max_degree,
        genus: g,
        coefficients,
        status,
        degrees,
        denominators_clear,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub face: usize,
    pub output: Exponent,
    /// Largest degree among the contributing coefficients.
    pub degree: usize,
    pub value: RationalS,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub degree: usize,
    /// Number of (operator, output) pairs checked.
    pub checked: usize,
    /// Nonzero residuals only.
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Applies every operator to the truncation of `Ψ` at `degree` through
/// [`monomial_action`] and reports the outputs that are fully determined by
/// the truncation and do not vanish.
pub fn verify_annihilation(
    operators: &[FaceOperator<HalfLaurent>],
    choice: &RepresentationChoice,
    psi: &WaveFunction,
    degree: usize,
) -> Result<ResidualReport, WaveError> {
    let g = choice.genus();
    let support: Vec<(&Exponent, &RationalS)> = psi.coefficients.iter().filter(|(m, _)| self::degree(m) <= degree).collect();
    let mut checked = 0;
    let mut residuals = Vec::new();
    for op in operators {
        let mut shifts: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (n, _) in central_reduce(&op.element, &choice.quotient)?.terms() {
            shifts.insert(choice.coordinates(n)?.0);
        }
        let mut image: BTreeMap<Exponent, RationalS> = BTreeMap::new();
        for (m, c) in &support {
            for (k, v) in monomial_action(&op.element, choice, m)? {
                let slot = image.entry(k).or_insert_with(RationalS::zero);
                *slot = &*slot + &(*c * &RationalS::from(v));
            }
        }
        let mut outputs = BTreeSet::new();
        for m in monomials_up_to(g, degree) {
            for s in &shifts {
                outputs.insert(m.iter().zip(s).map(|(x, y)| x + y).collect::<Exponent>());
            }
        }
        for k in outputs {
            let pre_degrees: Vec<usize> = shifts
                .iter()
                .map(|s| k.iter().zip(s).map(|(x, y)| x - y).collect::<Exponent>())
                .filter(|p| !leaves_series_ring(p))
                .map(|p| self::degree(&p))
                .collect();
            let Some(&top) = pre_degrees.iter().max() else {
                continue;
            };
            if top > degree {
                continue;
            }
            checked += 1;
            if let Some(v) = image.get(&k).filter(|v| !v.is_zero()) {
                residuals.push(Residual {
                    face: op.face,
                    output: k,
                    degree: top,
                    value: v.clone(),
                });
            }
        }
    }
    Ok(ResidualReport {
        degree,
        checked,
        residuals,
    })
}
