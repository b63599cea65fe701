//! Explicit matrix models of the indecomposable weight modules and of their
//! tensor products.
//!
//! Matrices act on column vectors; `x * m_i = m_{i+1}` puts a one at row
//! `i + 1`, column `i`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::characters::{Character, Context, Regime};
use crate::error::{Error, Result};
use crate::labels::ModuleLabel;
use crate::linalg::Matrix;
use crate::scalar::{q_binom_row, q_int, Rational, Scalar};

/// A module on which `G` acts diagonally in the chosen basis.
#[derive(Debug, Clone)]
pub struct WeightModule {
    weights: Vec<Character>,
    x: Matrix,
    ctx: Arc<Context>,
}

impl WeightModule {
    /// Checks that `x` raises weights by `chi`.
    pub fn new(weights: Vec<Character>, x: Matrix, ctx: &Arc<Context>) -> Result<Self> {
        if x.rows() != weights.len() || x.cols() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights but x is {}x{}",
                weights.len(),
                x.rows(),
                x.cols()
            )));
        }
        let m = WeightModule {
            weights,
            x,
            ctx: Arc::clone(ctx),
        };
        if !m.is_weight_graded() {
            return Err(Error::Semantic("x does not shift weights by chi".into()));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn weight_of(&self, i: usize) -> &Character {
        &self.weights[i]
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Diagonal action of `a`, derived from the weights.
    pub fn a_action(&self) -> Matrix {
        Matrix::diagonal(
            self.weights.iter().map(|w| self.ctx.at_a(w)).collect(),
            self.ctx.field(),
        )
    }

    /// Every nonzero `x` entry maps weight `mu` to weight `chi * mu`.
    pub fn is_weight_graded(&self) -> bool {
        let chi = self.ctx.chi();
        (0..self.dim()).all(|r| {
            (0..self.dim()).all(|c| {
                self.x.get(r, c).is_zero() || self.weights[r] == chi.mul(&self.weights[c])
            })
        })
    }

    pub fn x_to_json(&self) -> Value {
        matrix_to_json(&self.x)
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| json!(m.row(r).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .collect(),
    )
}

/// Coefficients `alpha_j` of `x * m_{ts-1} = sum_j alpha_j m_{js}`, chosen so
/// that `x^s` acts on `span{m_{js}}` with minimal polynomial `(y - beta)^t`.
pub fn non_nil_alphas(t: u64, beta: &Scalar) -> Vec<Scalar> {
    (0..t)
        .map(|j| {
            let c = binomial(t, j);
            let sign = if (t + 1 - j) % 2 == 0 { 1 } else { -1 };
            beta.pow((t - j) as i64)
                .scale(&Rational::from_integer(sign))
                .scale(&c)
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = &(&acc * &Rational::from_integer((n - i) as i64)) * &Rational::new(1, (i + 1) as i64);
    }
    acc
}

pub fn realize(label: &ModuleLabel, ctx: &Arc<Context>) -> Result<WeightModule> {
    let f = ctx.field();
    match label {
        ModuleLabel::Nil { t, lam } => {
            let n = *t as usize;
            let weights = (0..n).map(|i| ctx.twist(i as i64, lam)).collect();
            let mut x = Matrix::zeros(n, n, f);
            for i in 0..n.saturating_sub(1) {
                x.set(i + 1, i, f.one());
            }
            WeightModule::new(weights, x, ctx)
        }
        ModuleLabel::NonNil { t, sig, beta } => {
            let s = match ctx.regime() {
                Regime::Fin(s) => s as usize,
                Regime::Inf => {
                    return Err(Error::RegimeMismatch(
                        "non-nilpotent modules need a finite regime".into(),
                    ))
                }
            };
            let n = *t as usize * s;
            let weights = (0..n).map(|i| ctx.twist(i as i64, sig)).collect();
            let mut x = Matrix::zeros(n, n, f);
            for i in 0..n - 1 {
                x.set(i + 1, i, f.one());
            }
            for (j, alpha) in non_nil_alphas(*t, beta).into_iter().enumerate() {
                x.set(j * s, n - 1, alpha);
            }
            WeightModule::new(weights, x, ctx)
        }
    }
}

/// `M (x) N` with basis `m_i (x) v_j` at index `i * dim N + j` and
/// `x = X_M (x) A_N + I (x) X_N`.
pub fn tensor_realize(m: &WeightModule, n: &WeightModule) -> Result<WeightModule> {
    if *m.ctx != *n.ctx {
        return Err(Error::ContextMismatch);
    }
    let f = m.ctx.field();
    let weights = m
        .weights
        .iter()
        .flat_map(|wm| n.weights.iter().map(move |wn| wm.mul(wn)))
        .collect();
    let x = m
        .x
        .kron(&n.a_action())
        .add(&Matrix::identity(m.dim(), f).kron(&n.x))?;
    WeightModule::new(weights, x, &m.ctx)
}

/// Checks `(X_M (x) A_N + I (x) X_N)^m = sum_i C(m,i)_q X_M^i (x) A_N^i X_N^{m-i}`.
pub fn delta_power_check(m: u32, left: &WeightModule, right: &WeightModule) -> Result<bool> {
    let t = tensor_realize(left, right)?;
    let lhs = t.x.pow(m)?;
    let q = t.ctx.q();
    let binoms = q_binom_row(m as u64, q);
    let a = right.a_action();
    let f = t.ctx.field();
    let mut rhs = Matrix::zeros(t.dim(), t.dim(), f);
    for (i, c) in binoms.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let l = left.x.pow(i as u32)?;
        let r = a.pow(i as u32)?.mul(&right.x.pow(m - i as u32)?)?;
        rhs = rhs.add(&l.kron(&r).scale(c))?;
    }
    Ok(lhs == rhs)
}

/// A module homomorphism candidate between two realized modules.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub source: WeightModule,
    pub target: WeightModule,
    pub matrix: Matrix,
}

impl LinearMap {
    /// `f x = x f` and `f` preserves weights.
    pub fn intertwines(&self) -> Result<bool> {
        let lhs = self.matrix.mul(self.source.x())?;
        let rhs = self.target.x().mul(&self.matrix)?;
        if lhs != rhs {
            return Ok(false);
        }
        for c in 0..self.matrix.cols() {
            for r in 0..self.matrix.rows() {
                if !self.matrix.get(r, c).is_zero()
                    && self.source.weight_of(c) != self.target.weight_of(r)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }
}

/// The map `V_{s-1}(chi lambda) (x) V_{t-1}(sigma) -> V_s(lambda) (x) V_t(sigma)`,
/// `y_i (x) z_j -> (s-i-1)_q m_i (x) v_{j+1} - q^{1-t} sigma(a) (t-j-1)_q m_{i+1} (x) v_j`.
pub fn embedding_map(
    s: u64,
    t: u64,
    lambda: &Character,
    sigma: &Character,
    ctx: &Arc<Context>,
) -> Result<LinearMap> {
    if ctx.regime() != Regime::Inf {
        return Err(Error::RegimeMismatch("the embedding is defined for the infinite regime".into()));
    }
    if s < 2 || t < 2 {
        return Err(Error::Semantic("the embedding needs s, t >= 2".into()));
    }
    let chi_lambda = ctx.twist(1, lambda);
    let source = tensor_realize(
        &realize(&ModuleLabel::nil(s - 1, chi_lambda)?, ctx)?,
        &realize(&ModuleLabel::nil(t - 1, sigma.clone())?, ctx)?,
    )?;
    let target = tensor_realize(
        &realize(&ModuleLabel::nil(s, lambda.clone())?, ctx)?,
        &realize(&ModuleLabel::nil(t, sigma.clone())?, ctx)?,
    )?;
    let q = ctx.q();
    let coeff = &q.pow(1 - t as i64) * &ctx.at_a(sigma);
    let (s, t) = (s as usize, t as usize);
    let mut f = Matrix::zeros(s * t, (s - 1) * (t - 1), ctx.field());
    for i in 0..s - 1 {
        for j in 0..t - 1 {
            let col = i * (t - 1) + j;
            f.set(i * t + j + 1, col, q_int((s - i - 1) as u64, q));
            f.set((i + 1) * t + j, col, -&(&coeff * &q_int((t - j - 1) as u64, q)));
        }
    }
    Ok(LinearMap {
        source,
        target,
        matrix: f,
    })
}
