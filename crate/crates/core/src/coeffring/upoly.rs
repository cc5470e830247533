//! Dense univariate integer polynomials, ascending coefficient order.
//! Only what the fraction-field normalization needs: content, primitive
//! part, pseudo-remainder, gcd and exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn content(p: &Dense) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive_part(p: &Dense) -> Dense {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Dense = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^k a mod b` with integer arithmetic.
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lc;
        }
        let off = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + off] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    primitive_part(&x)
}

/// Exact division `a / b`; `None` if `b` does not divide `a` over the integers.
pub(crate) fn div_exact(a: &Dense, b: &Dense) -> Option<Dense> {
    let db = degree(b)?;
    let mut r = a.clone();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lc = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (quot, rem) = r[dr].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        let off = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + off] -= &quot * bc;
        }
        q[off] = quot;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
pub(crate) fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}
