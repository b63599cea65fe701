//! q-integers, q-factorials and Gaussian binomial coefficients.

use super::field::Scalar;
use crate::error::{Error, Result};

/// A nonzero deformation parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValue(Scalar);

impl QValue {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(QValue(q))
    }

    pub fn get(&self) -> &Scalar {
        &self.0
    }
}

/// `(n)_q = 1 + q + ... + q^{n-1}`, with `(0)_q = 0`.
pub fn q_int(n: u64, q: &Scalar) -> Scalar {
    let f = q.field();
    let mut acc = f.zero();
    let mut p = f.one();
    for _ in 0..n {
        acc = &acc + &p;
        p = &p * q;
    }
    acc
}

/// `(n)!_q = (1)_q (2)_q ... (n)_q`.
pub fn q_factorial(n: u64, q: &Scalar) -> Scalar {
    (1..=n).fold(q.field().one(), |acc, k| &acc * &q_int(k, q))
}

/// Row `n` of the q-Pascal triangle: `[C(n,0)_q, ..., C(n,n)_q]`.
pub fn q_binom_row(n: u64, q: &Scalar) -> Vec<Scalar> {
    let f = q.field();
    let mut row = vec![f.one()];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m + 1);
        next.push(f.one());
        let mut qi = q.clone();
        for i in 1..m {
            // C(m,i) = q^i C(m-1,i) + C(m-1,i-1)
            next.push(&(&qi * &row[i]) + &row[i - 1]);
            qi = &qi * q;
        }
        next.push(f.one());
        row = next;
    }
    row
}

/// `C(n,i)_q` by the Pascal recurrence; valid at roots of unity.
pub fn q_binom(n: u64, i: u64, q: &Scalar) -> Result<Scalar> {
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            bound: n as usize,
        });
    }
    Ok(q_binom_row(n, q).swap_remove(i as usize))
}

/// `(n)!_q / ((i)!_q (n-i)!_q)`, or `None` when the denominator vanishes.
pub fn q_binom_by_factorials(n: u64, i: u64, q: &Scalar) -> Option<Scalar> {
    if i > n {
        return None;
    }
    let den = &q_factorial(i, q) * &q_factorial(n - i, q);
    q_factorial(n, q).try_div(&den).ok()
}
