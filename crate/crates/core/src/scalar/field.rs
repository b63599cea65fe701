//! The cyclotomic field Q(zeta_m) and its elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use smallvec::SmallVec;

use super::poly::{self, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Euler totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn x_pow_minus_one(m: usize) -> Poly {
    let mut p = vec![Rational::zero(); m + 1];
    p[0] = Rational::from_integer(-1);
    p[m] = Rational::one();
    p
}

/// The m-th cyclotomic polynomial, ascending coefficients, obtained by
/// dividing `x^m - 1` by `Phi_d` for every proper divisor `d | m`.
pub fn cyclotomic_poly(m: u64) -> Vec<Rational> {
    assert!(m >= 1, "cyclotomic_poly requires m >= 1");
    let mut num = x_pow_minus_one(m as usize);
    for d in (1..m).filter(|d| m % d == 0) {
        let (q, r) = poly::divrem(&num, &cyclotomic_poly(d));
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

/// Concrete model of Q(zeta_m): the basis `1, z, ..., z^{phi(m)-1}` with
/// `z` a root of `Phi_m`.
#[derive(Debug)]
pub struct FieldSpec {
    conductor: u64,
    minimal_poly: Vec<Rational>,
    /// `reduction[k]` expresses `z^{degree + k}` in the power basis.
    reduction: Vec<Vec<Rational>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(conductor: u64) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let minimal_poly = cyclotomic_poly(conductor);
        let d = minimal_poly.len() - 1;
        // z^d = -(c_0 + ... + c_{d-1} z^{d-1}); extend up to z^{2d-2}.
        let mut reduction: Vec<Vec<Rational>> = Vec::with_capacity(d.max(1));
        let mut cur: Vec<Rational> = minimal_poly[..d].iter().map(|c| -c).collect();
        for _ in 0..d.max(1) {
            reduction.push(cur.clone());
            // multiply by z
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            for k in (1..d).rev() {
                next[k] = cur[k - 1].clone();
            }
            for (k, slot) in next.iter_mut().enumerate() {
                if !top.is_zero() {
                    *slot = &*slot + &(&top * &reduction[0][k]);
                }
            }
            cur = next;
        }
        Arc::new(FieldSpec {
            conductor,
            minimal_poly,
            reduction,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minimal_poly.len() - 1
    }

    pub fn minimal_poly(&self) -> &[Rational] {
        &self.minimal_poly
    }

    pub fn zero(self: &Arc<Self>) -> Scalar {
        Scalar {
            field: Arc::clone(self),
            coeffs: SmallVec::from_elem(Rational::zero(), self.degree()),
        }
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Scalar {
        self.from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> Scalar {
        let mut s = self.zero();
        s.coeffs[0] = r;
        s
    }

    /// The generator `zeta_m`.
    pub fn zeta(self: &Arc<Self>) -> Scalar {
        self.from_poly(&[Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary polynomial in `z` modulo `Phi_m`.
    pub fn from_poly(self: &Arc<Self>, p: &[Rational]) -> Scalar {
        let (_, r) = poly::divrem(p, &self.minimal_poly);
        let mut s = self.zero();
        for (k, c) in r.into_iter().enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// A primitive n-th root of unity, if the field contains one.
    pub fn root_of_unity(self: &Arc<Self>, n: u64) -> Result<Scalar> {
        let m = self.conductor;
        if n == 0 {
            return Err(Error::FieldTooSmall {
                conductor: m,
                what: "a root of unity of order 0".into(),
            });
        }
        if m % n == 0 {
            return Ok(self.zeta().pow((m / n) as i64));
        }
        // For odd m the field also contains zeta_{2m} = -zeta_m^{(m+1)/2}.
        if m % 2 == 1 && (2 * m) % n == 0 {
            let z2m = -&self.zeta().pow(((m + 1) / 2) as i64);
            return Ok(z2m.pow((2 * m / n) as i64));
        }
        Err(Error::FieldTooSmall {
            conductor: m,
            what: format!("a primitive {n}-th root of unity"),
        })
    }

    /// Largest order a root of unity in this field can have.
    pub fn unit_exponent(&self) -> u64 {
        self.conductor.lcm(&2)
    }
}

/// An element of Q(zeta_m) in the power basis.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<FieldSpec>,
    coeffs: SmallVec<[Rational; 4]>,
}

/// Multiplicative order of a unit: finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.conductor,
                right: other.field.conductor,
            })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub_unchecked(&self, other: &Scalar) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let d = self.coeffs.len();
        if d == 1 {
            return Scalar {
                field: Arc::clone(&self.field),
                coeffs: smallvec::smallvec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        let mut full: SmallVec<[Rational; 8]> = SmallVec::from_elem(Rational::zero(), 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] = &full[i + j] + &(a * b);
                }
            }
        }
        let mut coeffs: SmallVec<[Rational; 4]> = full[..d].iter().cloned().collect();
        for (k, c) in full[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in coeffs.iter_mut().zip(self.field.reduction[k].iter()) {
                if !r.is_zero() {
                    *slot = &*slot + &(c * r);
                }
            }
        }
        Scalar {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_m`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.inv().expect("nonzero")));
        }
        // Invariant: s_i * a == r_i  (mod Phi_m).
        let mut r0: Poly = self.field.minimal_poly.clone();
        let mut r1: Poly = self.coeffs.to_vec();
        poly::trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![Rational::one()];
        while poly::degree(&r1).is_some_and(|d| d > 0) {
            let (q, r) = poly::divrem(&r0, &r1);
            let s = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Phi_m is irreducible, so the last nonzero remainder is a constant.
        let c = r1[0].inv().expect("gcd with Phi_m is a unit");
        let scaled: Poly = s1.iter().map(|x| x * &c).collect();
        Ok(self.field.from_poly(&scaled))
    }

    /// Integer power; negative exponents invert. Panics on `0^{-k}`.
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        acc
    }

    /// Multiplicative order. A unit of Q(zeta_m) is a root of unity iff
    /// `u^L = 1` for `L = lcm(2, m)`.
    pub fn order(&self) -> Result<Order> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let l = self.field.unit_exponent();
        if !self.pow(l as i64).is_one() {
            return Ok(Order::Infinite);
        }
        let d = (1..=l)
            .filter(|d| l % d == 0)
            .find(|d| self.pow(*d as i64).is_one())
            .expect("u^L = 1");
        Ok(Order::Finite(d))
    }
}

/// Multiplicative order of a unit; see [`Scalar::order`].
pub fn order_of_unit(u: &Scalar) -> Result<Order> {
    u.order()
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

/// Magnitude first, then positive before negative, so `1 < -1`.
fn coeff_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.abs()
        .cmp(&b.abs())
        .then_with(|| (a.signum() < 0).cmp(&(b.signum() < 0)))
}

impl Ord for Scalar {
    /// Lexicographic on the coefficient tuple, coefficients compared by
    /// magnitude and then sign.
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.conductor.cmp(&other.field.conductor).then_with(|| {
            self.coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| coeff_cmp(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            /// Panics if the operands live in different fields.
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                if let Err(e) = self.check(rhs) {
                    panic!("{e}");
                }
                self.$imp(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
scalar_op!(Add, add, add_unchecked);
scalar_op!(Sub, sub, sub_unchecked);
scalar_op!(Mul, mul, mul_unchecked);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Scalar literal syntax: descending powers of `z`, e.g. `1/2*z^3 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [Q(z_{})]", self.field.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_of_cyclotomics_is_x_m_minus_1() {
        for m in 1..=30u64 {
            let prod = (1..=m)
                .filter(|d| m % d == 0)
                .fold(vec![Rational::one()], |acc, d| poly::mul(&acc, &cyclotomic_poly(d)));
            assert_eq!(prod, x_pow_minus_one(m as usize), "m = {m}");
            assert_eq!(cyclotomic_poly(m).len() as u64 - 1, totient(m));
        }
    }

    #[test]
    fn gaussian_integer_examples() {
        let f = FieldSpec::new(4);
        let z = f.zeta();
        let one = f.one();
        let a = &one + &z;
        let b = &one - &z;
        assert_eq!(&a * &b, f.from_int(2));
        let expected = b.scale(&Rational::new(1, 2));
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(&a + &f.zero(), a);
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = FieldSpec::new(3).one();
        let b = FieldSpec::new(4).one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn orders() {
        let f4 = FieldSpec::new(4);
        assert_eq!(f4.zeta().order().unwrap(), Order::Finite(4));
        assert_eq!(f4.from_int(-1).order().unwrap(), Order::Finite(2));
        assert_eq!(f4.from_int(2).order().unwrap(), Order::Infinite);
        assert_eq!(f4.zero().order(), Err(Error::ZeroElement));
        let f3 = FieldSpec::new(3);
        // -zeta_3 is a primitive 6th root of unity.
        assert_eq!((-f3.zeta()).order().unwrap(), Order::Finite(6));
        assert_eq!(f3.root_of_unity(6).unwrap().order().unwrap(), Order::Finite(6));
        assert!(f3.root_of_unity(4).is_err());
        let f1 = FieldSpec::new(1);
        assert_eq!(f1.from_int(-1).order().unwrap(), Order::Finite(2));
    }

    #[test]
    fn total_order() {
        let f = FieldSpec::new(4);
        let (one, z) = (f.one(), f.zeta());
        assert!(f.zero() < one);
        assert!(one < -&one);
        assert!(z < one);
        assert!(-&z > z);
    }

    #[test]
    fn display() {
        let f = FieldSpec::new(8);
        let s = f.from_poly(&[Rational::from_integer(2), Rational::zero(), Rational::zero(), Rational::new(1, 2)]);
        assert_eq!(s.to_string(), "1/2*z^3 + 2");
        assert_eq!((-f.zeta()).to_string(), "-z");
        assert_eq!(f.zero().to_string(), "0");
    }

    fn arb_scalar(f: Arc<FieldSpec>) -> impl Strategy<Value = Scalar> {
        let d = f.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |cs| {
            let coeffs: Vec<Rational> = cs.into_iter().map(|(n, dd)| Rational::new(n, dd)).collect();
            f.from_poly(&coeffs)
        })
    }

    fn arb_field_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop_oneof![Just(3u64), Just(4), Just(8), Just(9)].prop_flat_map(|m| {
            let f = FieldSpec::new(m);
            (arb_scalar(f.clone()), arb_scalar(f.clone()), arb_scalar(f))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn field_axioms((a, b, c) in arb_field_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
