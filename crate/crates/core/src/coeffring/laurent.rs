use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in `s = q^{1/2}` with integer coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by the exponent of `s`; zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * s^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, coeff.into());
        out
    }

    /// `s^exp`.
    pub fn s_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// `(-s)^exp`, i.e. `(-1)^exp s^exp`.
    pub fn neg_s_pow(exp: i64) -> Self {
        let sign = if exp.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(sign, k)` when `self = sign * s^k` with `sign = ±1`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Dense ascending coefficients of `self / s^min_exp`, with `min_exp`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    pub(crate) fn from_dense(shift: i64, dense: &[BigInt]) -> Self {
        let mut out = Self::zero();
        for (i, c) in dense.iter().enumerate() {
            out.add_term(shift + i as i64, c.clone());
        }
        out
    }

    /// Exponent-string to coefficient-string map, for JSON output.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// Renders `s^k` as a power of `q`.
pub(crate) fn q_power(k: i64) -> String {
    match k {
        0 => String::new(),
        2 => "q".to_string(),
        k if k % 2 == 0 && k < 0 => format!("q^{{{}}}", k / 2),
        k if k % 2 == 0 => format!("q^{}", k / 2),
        k => format!("q^{{{}/2}}", k),
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = q_power(*e);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{}", mag)?,
                (true, false) => write!(f, "{}", mono)?,
                (false, false) => write!(f, "{} {}", mag, mono)?,
            }
        }
        Ok(())
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(HalfLaurent);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let a = HalfLaurent::from_terms([(1, 1), (-1, 1)]);
        let b = HalfLaurent::from_terms([(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, HalfLaurent::from_terms([(2, 1), (-2, -1)]));
    }

    #[test]
    fn identity_and_cancellation() {
        let x = HalfLaurent::from_terms([(-3, 2), (0, -1), (5, 7)]);
        assert_eq!(&x * &HalfLaurent::one(), x);
        assert!((&x - &x).is_zero());
        assert_eq!(x.num_terms(), 3);
    }

    #[test]
    fn unit_monomials() {
        assert_eq!(HalfLaurent::neg_s_pow(3).as_unit_monomial(), Some((-1, 3)));
        assert_eq!(HalfLaurent::neg_s_pow(-2).as_unit_monomial(), Some((1, -2)));
        assert_eq!(HalfLaurent::monomial(2, 0).as_unit_monomial(), None);
    }

    #[test]
    fn renders_half_powers() {
        let x = HalfLaurent::from_terms([(-1, 1), (0, -2), (2, 1), (3, 3)]);
        assert_eq!(x.to_string(), "q^{-1/2} - 2 + q + 3 q^{3/2}");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
        assert_eq!(HalfLaurent::monomial(-1, -4).to_string(), "-q^{-2}");
    }
}
