//! Exact scalars: rationals, cyclotomic fields and q-calculus.

mod field;
mod literal;
pub(crate) mod poly;
mod qcalc;
mod rational;

pub use field::{cyclotomic_poly, order_of_unit, totient, FieldSpec, Order, Scalar};
pub use literal::{parse_scalar, parse_scalar_at};
pub use qcalc::{q_binom, q_binom_by_factorials, q_binom_row, q_factorial, q_int, QValue};
pub use rational::{ParseRationalError, Rational};
