//! Exact coefficient rings: Laurent polynomials in `s = q^{1/2}`, in `(a, s)`,
//! and the fraction field of the former used by the wave-function solver.
//!
//! Half-integer powers of `q` are stored as integer powers of `s`.

mod laurent;
mod rational;
mod twovar;
mod upoly;

pub use laurent::HalfLaurent;
pub use rational::{eval_laurent, RationalS};
pub use twovar::TwoVarLaurent;

/// Coefficient ring for torus elements.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_half(h: &HalfLaurent) -> Self;
}

impl Coefficient for HalfLaurent {
    fn zero() -> Self {
        HalfLaurent::zero()
    }
    fn one() -> Self {
        HalfLaurent::one()
    }
    fn is_zero(&self) -> bool {
        HalfLaurent::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_half(h: &HalfLaurent) -> Self {
        h.clone()
    }
}

impl Coefficient for TwoVarLaurent {
    fn zero() -> Self {
        TwoVarLaurent::zero()
    }
    fn one() -> Self {
        TwoVarLaurent::one()
    }
    fn is_zero(&self) -> bool {
        TwoVarLaurent::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_half(h: &HalfLaurent) -> Self {
        TwoVarLaurent::from(h)
    }
}

impl Coefficient for RationalS {
    fn zero() -> Self {
        RationalS::zero()
    }
    fn one() -> Self {
        RationalS::one()
    }
    fn is_zero(&self) -> bool {
        RationalS::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_half(h: &HalfLaurent) -> Self {
        RationalS::from(h)
    }
}
