//! Dense univariate polynomials over `Rational`, ascending coefficient order.
//! Only the handful of routines the cyclotomic field needs.

use super::rational::Rational;

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let mut out: Poly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for (k, bk) in b[..=db].iter().enumerate() {
            if !bk.is_zero() {
                rem[shift + k] = &rem[shift + k] - &(&c * bk);
            }
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}
