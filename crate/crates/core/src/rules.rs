//! Closed-form tensor product decompositions.
//!
//! Conventions: a direct sum over an empty index range is zero, `0*M = 0`,
//! and a summand of length 0 is dropped. A negative length is a bug and
//! trips an assertion.

use crate::characters::{Character, Context, Regime};
use crate::error::{Error, Result};
use crate::labels::{canonicalize, dim_of, Decomposition, ModuleLabel};
use crate::scalar::Scalar;

/// `n = quotient * s + remainder` with `0 <= remainder < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EuclideanSplit {
    pub quotient: u64,
    pub remainder: u64,
}

impl EuclideanSplit {
    pub fn new(n: u64, s: u64) -> Self {
        EuclideanSplit {
            quotient: n / s,
            remainder: n % s,
        }
    }
}

/// Which factor of a mixed product carries the nilpotent module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `V_p(lambda) (x) V_t(sigma, beta)`
    Left,
    /// `V_t(sigma, beta) (x) V_p(lambda)`
    Right,
}

/// Collects nilpotent summands `V_len(chi^j * base)`.
struct NilSum<'a> {
    ctx: &'a Context,
    base: Character,
    out: Decomposition,
}

impl<'a> NilSum<'a> {
    fn new(ctx: &'a Context, base: Character) -> Self {
        NilSum {
            ctx,
            base,
            out: Decomposition::new(),
        }
    }

    fn add(&mut self, len: i64, j: i64) {
        assert!(len >= 0, "negative module length {len}");
        if len > 0 {
            let lam = self.ctx.twist(j, &self.base);
            self.out
                .push(ModuleLabel::Nil { t: len as u64, lam }, 1, self.ctx)
                .expect("nilpotent labels are valid in every regime");
        }
    }

    /// `sum_{i in is} sum_{j in js} V_{len(i, j)}(chi^j * base)`.
    fn block(
        &mut self,
        is: impl Iterator<Item = i64> + Clone,
        js: impl Iterator<Item = i64> + Clone,
        len: impl Fn(i64, i64) -> i64,
    ) {
        for i in is {
            for j in js.clone() {
                self.add(len(i, j), j);
            }
        }
    }

    fn finish(self) -> Decomposition {
        self.out
    }
}

fn check_dim(d: &Decomposition, expected: u64) -> Result<()> {
    if d.total_dim() == expected {
        Ok(())
    } else {
        Err(Error::InternalDimensionMismatch {
            expected: expected as usize,
            got: d.total_dim() as usize,
        })
    }
}

fn fin_s(ctx: &Context) -> Result<u64> {
    match ctx.regime() {
        Regime::Fin(s) => Ok(s),
        Regime::Inf => Err(Error::RegimeMismatch("formula needs a finite regime".into())),
    }
}

/// Decomposition of `a (x) b`, `a` being the left factor.
pub fn tensor_decompose(a: &ModuleLabel, b: &ModuleLabel, ctx: &Context) -> Result<Decomposition> {
    use ModuleLabel::{Nil, NonNil};
    let expected = dim_of(a, ctx)? * dim_of(b, ctx)?;
    let d = match (ctx.regime(), a, b) {
        (Regime::Inf, Nil { t: s, lam }, Nil { t, lam: sig }) => {
            decompose_inf_nil_nil(*s, *t, lam, sig, ctx)?
        }
        (Regime::Inf, _, _) => {
            return Err(Error::RegimeMismatch(
                "non-nilpotent modules need a finite regime".into(),
            ))
        }
        (Regime::Fin(_), Nil { t: n, lam }, Nil { t, lam: sig }) => {
            decompose_fin_nil_nil(*n, lam, *t, sig, ctx)?
        }
        (Regime::Fin(_), Nil { t: p, lam }, NonNil { t, sig, beta }) => {
            decompose_fin_nil_nonnil(*p, lam, *t, sig, beta, Side::Left, ctx)?
        }
        (Regime::Fin(_), NonNil { t, sig, beta }, Nil { t: p, lam }) => {
            decompose_fin_nil_nonnil(*p, lam, *t, sig, beta, Side::Right, ctx)?
        }
        (Regime::Fin(_), NonNil { t: p, sig, beta: alpha }, NonNil { t, sig: lam, beta }) => {
            decompose_fin_nonnil_nonnil(*p, sig, alpha, *t, lam, beta, ctx)?
        }
    };
    check_dim(&d, expected)?;
    Ok(d)
}

/// `V_s(lambda) (x) V_t(sigma) = sum_{k=1}^{min(s,t)} V_{s+t+1-2k}(chi^{k-1} lambda sigma)`.
pub fn decompose_inf_nil_nil(
    s: u64,
    t: u64,
    lambda: &Character,
    sigma: &Character,
    ctx: &Context,
) -> Result<Decomposition> {
    if ctx.regime() != Regime::Inf {
        return Err(Error::RegimeMismatch("formula needs the infinite regime".into()));
    }
    let (s, t) = (s as i64, t as i64);
    let mut acc = NilSum::new(ctx, lambda.mul(sigma));
    for k in 1..=s.min(t) {
        acc.add(s + t + 1 - 2 * k, k - 1);
    }
    let d = acc.finish();
    check_dim(&d, (s * t) as u64)?;
    Ok(d)
}

/// Mixed products of `V_p(lambda)` with `V_t(sigma, beta)`, in either order.
/// With `p = us + r` the summands are `(s-r) V_{2i-1+|t-u|}` for
/// `1 <= i <= min(t,u)` and `r V_{2i-1+|t-u-1|}` for `1 <= i <= min(t,u+1)`,
/// all with character `[sigma lambda]`; the right-hand order replaces `beta`
/// by `lambda(a^s) beta`.
pub fn decompose_fin_nil_nonnil(
    p: u64,
    lambda: &Character,
    t: u64,
    sigma: &Character,
    beta: &Scalar,
    side: Side,
    ctx: &Context,
) -> Result<Decomposition> {
    let s = fin_s(ctx)?;
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    let EuclideanSplit { quotient: u, remainder: r } = EuclideanSplit::new(p, s);
    let chr = sigma.mul(lambda);
    let beta = match side {
        Side::Left => beta.clone(),
        Side::Right => &ctx.at_a_s(lambda)? * beta,
    };
    let (t, u) = (t as i64, u as i64);
    let mut d = Decomposition::new();
    for i in 1..=t.min(u) {
        let len = 2 * i - 1 + (t - u).abs();
        d.push(ModuleLabel::non_nil(len as u64, &chr, beta.clone(), ctx)?, s - r, ctx)?;
    }
    for i in 1..=t.min(u + 1) {
        let len = 2 * i - 1 + (t - u - 1).abs();
        d.push(ModuleLabel::non_nil(len as u64, &chr, beta.clone(), ctx)?, r, ctx)?;
    }
    check_dim(&d, p * t as u64 * s)?;
    Ok(d)
}

/// `V_p(sigma, alpha) (x) V_t(lambda, beta)`: the summands
/// `V_{2j-1+|p-t|}(chi^i sigma lambda, u)` for `0 <= i < s`, `1 <= j <= min(p,t)`,
/// with `u = alpha lambda(a^s) + beta`. When `u = 0` each becomes the
/// nilpotent module of length `(2j-1+|p-t|) s`.
pub fn decompose_fin_nonnil_nonnil(
    p: u64,
    sigma: &Character,
    alpha: &Scalar,
    t: u64,
    lambda: &Character,
    beta: &Scalar,
    ctx: &Context,
) -> Result<Decomposition> {
    let s = fin_s(ctx)?;
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    let u = &(alpha * &ctx.at_a_s(lambda)?) + beta;
    let base = sigma.mul(lambda);
    let (pi, ti) = (p as i64, t as i64);
    let mut d = Decomposition::new();
    for i in 0..s as i64 {
        let chr = ctx.twist(i, &base);
        for j in 1..=pi.min(ti) {
            let len = (2 * j - 1 + (pi - ti).abs()) as u64;
            d.push(canonicalize(len, &chr, &u, ctx)?, 1, ctx)?;
        }
    }
    check_dim(&d, p * t * s * s)?;
    Ok(d)
}

/// `V_n(lambda) (x) V_t(sigma)` in the finite regime; symmetric in the factors.
pub fn decompose_fin_nil_nil(
    n: u64,
    lambda: &Character,
    t: u64,
    sigma: &Character,
    ctx: &Context,
) -> Result<Decomposition> {
    let s = fin_s(ctx)?;
    let (n, t) = if n >= t { (n, t) } else { (t, n) };
    let EuclideanSplit { quotient: rp, remainder: lp } = EuclideanSplit::new(n, s);
    let EuclideanSplit { quotient: r, remainder: l } = EuclideanSplit::new(t, s);
    let (n, t, s) = (n as i64, t as i64, s as i64);
    let (rp, lp, r, l) = (rp as i64, lp as i64, r as i64, l as i64);
    let mut acc = NilSum::new(ctx, lambda.mul(sigma));
    let top = move |i: i64, j: i64| n + t - 1 - 2 * i * s - 2 * j;
    let flat = move |c: i64| move |i: i64, _j: i64| (r + rp + c - 2 * i) * s;
    if l + lp <= s {
        if l <= lp {
            acc.block(0..=r, 0..l, top);
            acc.block(0..r, l..lp, flat(0));
            acc.block(0..r, lp..l + lp, top);
            acc.block(0..r, l + lp..s, flat(-1));
        } else {
            acc.block(0..=r, 0..lp, top);
            acc.block(0..=r, lp..l, flat(0));
            acc.block(0..r, l..l + lp, top);
            acc.block(0..r, l + lp..s, flat(-1));
        }
    } else {
        let m = l + lp - s - 1;
        let (mn, mx) = (l.min(lp), l.max(lp));
        acc.block(0..=r, 0..=m, flat(1));
        acc.block(0..=r, m + 1..mn, top);
        let last_i = if l <= lp { r - 1 } else { r };
        acc.block(0..=last_i, mn..mx, flat(0));
        acc.block(0..r, mx..s, top);
    }
    let d = acc.finish();
    check_dim(&d, (n * t) as u64)?;
    Ok(d)
}

/// A closed form valid only under extra hypotheses, used to cross-check the
/// general formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    /// `V_t(sigma, beta) (x) V_{2s}(eps) = s V_{t-1}(sigma, beta) + s V_{t+1}(sigma, beta)`
    NonNilByTrivialTwoS,
    /// `V_1(lambda) (x) V_t(sigma) = V_t(lambda sigma)`
    OneDimensional,
    /// `V_2(lambda) (x) V_t(sigma)`
    LengthTwo,
    /// `V_n(lambda) (x) V_t(sigma)` with `n <= s`
    ShortFactor,
    /// `V_{s+1}(lambda) (x) V_t(sigma)`
    LengthSPlusOne,
    /// `V_n(lambda) (x) V_{rs}(sigma)`
    MultipleOfS,
    /// `V_n(lambda) (x) V_{rs+1}(sigma)` with `s` not dividing `n`
    LengthRsPlusOne,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::NonNilByTrivialTwoS => "nonnil-by-trivial-2s",
            SpecialCase::OneDimensional => "one-dimensional",
            SpecialCase::LengthTwo => "length-two",
            SpecialCase::ShortFactor => "short-factor",
            SpecialCase::LengthSPlusOne => "length-s-plus-one",
            SpecialCase::MultipleOfS => "multiple-of-s",
            SpecialCase::LengthRsPlusOne => "length-rs-plus-one",
        }
    }
}

/// The first special closed form that applies to `a (x) b`, if any.
pub fn decompose_special(a: &ModuleLabel, b: &ModuleLabel, ctx: &Context) -> Result<Option<Decomposition>> {
    Ok(decompose_special_all(a, b, ctx)?.into_iter().next().map(|(_, d)| d))
}

/// Every special closed form that applies to `a (x) b`. Nilpotent-by-nilpotent
/// forms are symmetric, so both factors are tried in the distinguished slot.
pub fn decompose_special_all(
    a: &ModuleLabel,
    b: &ModuleLabel,
    ctx: &Context,
) -> Result<Vec<(SpecialCase, Decomposition)>> {
    use ModuleLabel::{Nil, NonNil};
    let s = fin_s(ctx)?;
    let mut out = Vec::new();
    match (a, b) {
        (NonNil { t, sig, beta }, Nil { t: len, lam }) if *len == 2 * s && lam.is_trivial() => {
            let mut d = Decomposition::new();
            if *t > 1 {
                d.push(ModuleLabel::non_nil(t - 1, sig, beta.clone(), ctx)?, s, ctx)?;
            }
            d.push(ModuleLabel::non_nil(t + 1, sig, beta.clone(), ctx)?, s, ctx)?;
            out.push((SpecialCase::NonNilByTrivialTwoS, d));
        }
        (Nil { t: n1, lam: c1 }, Nil { t: n2, lam: c2 }) => {
            for (n, t) in [(*n1, *n2), (*n2, *n1)] {
                let base = c1.mul(c2);
                for (case, d) in nil_special(n, t, s, &base, ctx) {
                    if !out.iter().any(|(c, e)| *c == case && *e == d) {
                        out.push((case, d));
                    }
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Special forms for `V_n (x) V_t` with `V_n` in the distinguished slot.
fn nil_special(n: u64, t: u64, s: u64, base: &Character, ctx: &Context) -> Vec<(SpecialCase, Decomposition)> {
    let mut out = Vec::new();
    let (ni, ti, si) = (n as i64, t as i64, s as i64);
    let EuclideanSplit { quotient: r, remainder: l } = EuclideanSplit::new(t, s);
    let (r, l) = (r as i64, l as i64);
    let new = || NilSum::new(ctx, base.clone());

    if n == 1 {
        let mut acc = new();
        acc.add(ti, 0);
        out.push((SpecialCase::OneDimensional, acc.finish()));
    }

    if n == 2 {
        let mut acc = new();
        if t % s != 0 {
            acc.add(ti + 1, 0);
            acc.add(ti - 1, 1);
        } else {
            acc.add(ti, 0);
            acc.add(ti, 1);
        }
        out.push((SpecialCase::LengthTwo, acc.finish()));
    }

    if (1..=s).contains(&n) {
        let mut acc = new();
        if l == 0 {
            acc.block(0..1, 0..ni, |_, _| ti);
        } else if ni + l <= si + 1 {
            acc.block(0..1, 0..ni.min(l), |_, i| ni + ti - 1 - 2 * i);
            acc.block(0..1, l..ni, |_, _| r * si);
        } else {
            let m = ni + l - si - 1;
            acc.block(0..1, 0..=m, |_, _| r * si + si);
            acc.block(0..1, m + 1..ni.min(l), |_, i| ni + ti - 1 - 2 * i);
            acc.block(0..1, l..ni, |_, _| r * si);
        }
        out.push((SpecialCase::ShortFactor, acc.finish()));
    }

    if n == s + 1 {
        let mut acc = new();
        if l == 0 {
            acc.add(ti - si, 0);
            acc.add(ti + si, 0);
            acc.block(0..1, 1..si, |_, _| ti);
        } else if r == 0 {
            acc.add(si + l, 0);
            acc.block(0..1, 1..l, |_, _| si);
        } else {
            acc.add(ti + si, 0);
            acc.block(0..1, 1..l, |_, _| (r + 1) * si);
            acc.add(ti + si - 2 * l, l);
            acc.block(0..1, l + 1..si, |_, _| r * si);
            acc.add(ti - si, 0);
        }
        out.push((SpecialCase::LengthSPlusOne, acc.finish()));
    }

    // The remaining forms put the length-rs or length-(rs+1) factor second.
    let EuclideanSplit { quotient: rp, remainder: lp } = EuclideanSplit::new(n, s);
    let (rp, lp) = (rp as i64, lp as i64);
    if l == 0 {
        let mut acc = new();
        acc.block(0..=rp.min(r - 1), 0..lp, |i, _| (r + rp - 2 * i) * si);
        acc.block(0..r.min(rp), lp..si, |i, _| (r + rp - 1 - 2 * i) * si);
        out.push((SpecialCase::MultipleOfS, acc.finish()));
    }

    if l == 1 && lp != 0 {
        let mut acc = new();
        acc.block(0..=rp.min(r), 0..1, |i, _| (r + rp - 2 * i) * si + lp);
        acc.block(0..=rp.min(r - 1), 1..lp, |i, _| (r + rp - 2 * i) * si);
        acc.block(0..rp.min(r), lp..lp + 1, |i, _| (r + rp - 2 * i) * si - lp);
        acc.block(0..rp.min(r), lp + 1..si, |i, _| (r + rp - 1 - 2 * i) * si);
        out.push((SpecialCase::LengthRsPlusOne, acc.finish()));
    }

    out
}
