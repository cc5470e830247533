use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::HalfLaurent;
use super::upoly;
use crate::error::CoeffError;

/// Rational function in `s` over the integers, kept in a canonical reduced form:
/// the numerator is `s^k * P(s)`, the denominator a polynomial `Q(s)` with
/// `Q(0) != 0`, `gcd(P, Q) = 1` over `Q[s]`, joint integer content 1 and
/// positive leading coefficient of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalS {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl RationalS {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (a, p) = num.to_dense();
        let (b, q) = den.to_dense();
        let g = upoly::gcd(&p, &q);
        let mut p = upoly::div_exact(&p, &g).expect("gcd divides numerator");
        let mut q = upoly::div_exact(&q, &g).expect("gcd divides denominator");
        let c = upoly::content(&p).gcd(&upoly::content(&q));
        if !c.is_one() {
            p.iter_mut().for_each(|x| *x = &*x / &c);
            q.iter_mut().for_each(|x| *x = &*x / &c);
        }
        if q.last().is_some_and(|l| l.is_negative()) {
            p.iter_mut().for_each(|x| *x = -&*x);
            q.iter_mut().for_each(|x| *x = -&*x);
        }
        Ok(Self {
            num: HalfLaurent::from_dense(a - b, &p),
            den: HalfLaurent::from_dense(0, &q),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: HalfLaurent::zero(),
            den: HalfLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(HalfLaurent::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    /// `Some` when the denominator is 1, i.e. the value lies in `Z[s^{±1}]`.
    pub fn as_half_laurent(&self) -> Option<&HalfLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let d = eval_laurent(&self.den, s)?;
        if d.is_zero() {
            return None;
        }
        Some(eval_laurent(&self.num, s)? / d)
    }
}

/// Value of a Laurent polynomial at a rational point; `None` for `s = 0`
/// when negative exponents occur.
pub fn eval_laurent(p: &HalfLaurent, s: &BigRational) -> Option<BigRational> {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        if s.is_zero() && e < 0 {
            return None;
        }
        let pow = if e >= 0 {
            num_traits::pow(s.clone(), e as usize)
        } else {
            num_traits::pow(s.recip(), (-e) as usize)
        };
        acc += pow * BigRational::from_integer(c.clone());
    }
    Some(acc)
}

impl From<HalfLaurent> for RationalS {
    fn from(h: HalfLaurent) -> Self {
        Self {
            num: h,
            den: HalfLaurent::one(),
        }
    }
}

impl From<&HalfLaurent> for RationalS {
    fn from(h: &HalfLaurent) -> Self {
        Self::from(h.clone())
    }
}

impl From<i64> for RationalS {
    fn from(c: i64) -> Self {
        Self::from(HalfLaurent::monomial(BigInt::from(c), 0))
    }
}

impl fmt::Display for RationalS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&RationalS> for &RationalS {
    type Output = RationalS;
    fn add(self, rhs: &RationalS) -> RationalS {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalS::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalS::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub<&RationalS> for &RationalS {
    type Output = RationalS;
    fn sub(self, rhs: &RationalS) -> RationalS {
        self + &(-rhs)
    }
}

impl Mul<&RationalS> for &RationalS {
    type Output = RationalS;
    fn mul(self, rhs: &RationalS) -> RationalS {
        if self.is_zero() || rhs.is_zero() {
            return RationalS::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalS::from(&self.num * &rhs.num);
        }
        RationalS::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalS {
    type Output = RationalS;
    fn neg(self) -> RationalS {
        RationalS {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

super::laurent::forward_owned!(RationalS);

#[cfg(test)]
mod tests {
    use super::*;

    fn hl(t: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_terms(t.iter().copied())
    }

    #[test]
    fn reduces_common_factor() {
        // (s^2 - 1) / (s - 1) = s + 1
        let r = RationalS::new(hl(&[(2, 1), (0, -1)]), hl(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(r, RationalS::from(hl(&[(1, 1), (0, 1)])));
        assert!(r.as_half_laurent().is_some());
    }

    #[test]
    fn canonical_under_rescaling() {
        // (2s^3 - 2s) / (-4s^2 + 4s) = -(s + 1) / 2
        let r = RationalS::new(hl(&[(3, 2), (1, -2)]), hl(&[(2, -4), (1, 4)])).unwrap();
        let expected = RationalS::new(hl(&[(1, -1), (0, -1)]), hl(&[(0, 2)])).unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.denominator(), &hl(&[(0, 2)]));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            RationalS::new(HalfLaurent::one(), HalfLaurent::zero()),
            Err(CoeffError::DivisionByZero)
        );
        assert!(RationalS::zero().inv().is_err());
    }

    #[test]
    fn field_identities() {
        let x = RationalS::new(hl(&[(0, 1), (3, -2)]), hl(&[(0, 1), (2, 1)])).unwrap();
        assert_eq!(&x * &RationalS::one(), x);
        assert!((&x - &x).is_zero());
        assert_eq!(&x * &x.inv().unwrap(), RationalS::one());
    }
}
