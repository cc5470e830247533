use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::{forward_owned, q_power, HalfLaurent};

/// Laurent polynomial in `(a, s)`, keyed by `(a-exponent, s-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoVarLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl TwoVarLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `coeff * a^a_exp * s^s_exp`.
    pub fn monomial(coeff: impl Into<BigInt>, a_exp: i64, s_exp: i64) -> Self {
        let mut out = Self::zero();
        out.add_term((a_exp, s_exp), coeff.into());
        out
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c.into());
        }
        out
    }

    fn add_term(&mut self, key: (i64, i64), coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Substitute `a := s`, landing in the linking-skein coefficient ring.
    pub fn specialize_a(&self) -> HalfLaurent {
        HalfLaurent::from_terms(self.terms.iter().map(|((a, s), c)| (a + s, c.clone())))
    }

    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|((a, s), c)| (format!("{},{}", a, s), c.to_string()))
            .collect()
    }
}

impl From<&HalfLaurent> for TwoVarLaurent {
    fn from(h: &HalfLaurent) -> Self {
        Self::from_terms(h.terms().map(|(e, c)| ((0, e), c.clone())))
    }
}

impl fmt::Display for TwoVarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, s), c)) in self.terms.iter().enumerate() {
            let mut mono = match a {
                0 => String::new(),
                1 => "a".to_string(),
                a => format!("a^{{{}}}", a),
            };
            let q = q_power(*s);
            if !q.is_empty() {
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str(&q);
            }
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

impl Add<&TwoVarLaurent> for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn add(self, rhs: &TwoVarLaurent) -> TwoVarLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&TwoVarLaurent> for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn sub(self, rhs: &TwoVarLaurent) -> TwoVarLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul<&TwoVarLaurent> for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn mul(self, rhs: &TwoVarLaurent) -> TwoVarLaurent {
        let mut out = TwoVarLaurent::zero();
        for ((a1, s1), c1) in &self.terms {
            for ((a2, s2), c2) in &rhs.terms {
                out.add_term((a1 + a2, s1 + s2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn neg(self) -> TwoVarLaurent {
        TwoVarLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

forward_owned!(TwoVarLaurent);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialize_inverse_a() {
        let x = TwoVarLaurent::monomial(1, -1, 0);
        assert_eq!(x.specialize_a(), HalfLaurent::s_pow(-1));
    }

    #[test]
    fn specialize_a_times_s() {
        assert_eq!(TwoVarLaurent::monomial(1, 1, 1).specialize_a(), HalfLaurent::s_pow(2));
    }

    #[test]
    fn specialize_cancels() {
        let x = TwoVarLaurent::from_terms([((2, 0), 3), ((0, 2), -3)]);
        assert!(x.specialize_a().is_zero());
    }

    #[test]
    fn one_is_neutral() {
        let x = TwoVarLaurent::from_terms([((-1, 0), 1), ((0, 3), -2)]);
        assert_eq!(&x * &TwoVarLaurent::one(), x);
        assert_eq!(x.to_string(), "a^{-1} - 2 q^{3/2}");
    }
}
