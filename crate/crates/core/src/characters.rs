//! Finitely generated abelian groups, their characters, and the context
//! `(G, a, chi)` that fixes a Hopf-Ore extension.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, FieldSpec, Order, Rational, Scalar};

/// `Z/n_1 x ... x Z/n_k`, where `n_i = 0` stands for an infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factor_orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(factor_orders: Vec<u64>) -> Result<Self> {
        if factor_orders.is_empty() {
            return Err(Error::InvalidContext {
                field: "group".into(),
                msg: "at least one factor is required".into(),
            });
        }
        if let Some(bad) = factor_orders.iter().find(|&&n| n == 1) {
            return Err(Error::InvalidContext {
                field: "group".into(),
                msg: format!("factor order {bad} is not allowed; use 0 or >= 2"),
            });
        }
        Ok(GroupSpec { factor_orders })
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factor_orders
    }

    pub fn rank(&self) -> usize {
        self.factor_orders.len()
    }

    /// Lcm of the finite factor orders (1 if there are none).
    pub fn exponent(&self) -> u64 {
        self.factor_orders
            .iter()
            .filter(|&&n| n > 0)
            .fold(1, |acc, n| acc.lcm(n))
    }

    pub fn element(&self, exps: Vec<i64>) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "element has {} coordinates, group has {} factors",
                exps.len(),
                self.rank()
            )));
        }
        let exps = exps
            .into_iter()
            .zip(&self.factor_orders)
            .map(|(e, &n)| if n > 0 { e.rem_euclid(n as i64) } else { e })
            .collect();
        Ok(GroupElement { exps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    exps: Vec<i64>,
}

impl GroupElement {
    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    /// `g^k`, with finite coordinates reduced.
    pub fn pow(&self, k: i64, group: &GroupSpec) -> GroupElement {
        group
            .element(self.exps.iter().map(|e| e * k).collect())
            .expect("same group")
    }
}

/// A character of `G`, stored by its values on the generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<Scalar>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl Character {
    /// Validates the values against the group: nonzero, and of order dividing
    /// `n_i` on finite factors.
    pub fn new(values: Vec<Scalar>, group: &GroupSpec) -> Result<Self> {
        if values.len() != group.rank() {
            return Err(Error::GroupMismatch(format!(
                "character has {} values, group has {} factors",
                values.len(),
                group.rank()
            )));
        }
        for (i, (v, &n)) in values.iter().zip(group.factor_orders()).enumerate() {
            if v.is_zero() {
                return Err(Error::InvalidContext {
                    field: format!("chi[{i}]"),
                    msg: "character values must be nonzero".into(),
                });
            }
            if n > 0 && !v.pow(n as i64).is_one() {
                return Err(Error::InvalidContext {
                    field: format!("chi[{i}]"),
                    msg: format!("value {v} is not an {n}-th root of unity"),
                });
            }
        }
        Ok(Character { values })
    }

    pub fn trivial(group: &GroupSpec, field: &Arc<FieldSpec>) -> Self {
        Character {
            values: vec![field.one(); group.rank()],
        }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    fn check(&self, other: &Character) -> Result<()> {
        if self.values.len() == other.values.len() {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "characters of rank {} and {}",
                self.values.len(),
                other.values.len()
            )))
        }
    }

    pub fn try_mul(&self, other: &Character) -> Result<Character> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// Pointwise product; panics on a rank mismatch.
    pub fn mul(&self, other: &Character) -> Character {
        assert_eq!(self.values.len(), other.values.len(), "group mismatch");
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Character {
        Character {
            values: self.values.iter().map(|v| v.pow(k)).collect(),
        }
    }

    pub fn inv(&self) -> Character {
        self.pow(-1)
    }

    /// `lambda(g) = prod values[i]^{g_i}`.
    pub fn eval(&self, g: &GroupElement) -> Result<Scalar> {
        if g.exps.len() != self.values.len() {
            return Err(Error::GroupMismatch(format!(
                "element of rank {} for a character of rank {}",
                g.exps.len(),
                self.values.len()
            )));
        }
        let field = self.values[0].field();
        Ok(self
            .values
            .iter()
            .zip(&g.exps)
            .fold(field.one(), |acc, (v, &e)| &acc * &v.pow(e)))
    }

    /// Lcm of the orders of the values.
    pub fn order(&self) -> Order {
        let mut acc = 1u64;
        for v in &self.values {
            match v.order().expect("character values are nonzero") {
                Order::Finite(n) => acc = acc.lcm(&n),
                Order::Infinite => return Order::Infinite,
            }
        }
        Order::Finite(acc)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }
}

/// The dichotomy `|chi| = |chi(a)| = s < inf` versus `= inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Fin(u64),
    Inf,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Fin(s) => write!(f, "FIN({s})"),
            Regime::Inf => f.write_str("INF"),
        }
    }
}

/// The data `(G, a, chi)` together with the derived `q = chi(a)^{-1}` and regime.
#[derive(Debug)]
pub struct Context {
    group: GroupSpec,
    a: GroupElement,
    chi: Character,
    field: Arc<FieldSpec>,
    q: Scalar,
    regime: Regime,
    /// `zeta_{n_i}` for each finite factor.
    gen_roots: Vec<Option<Scalar>>,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.a == other.a
            && self.chi == other.chi
            && self.field.conductor() == other.field.conductor()
    }
}

impl Eq for Context {}

pub fn build_context(
    group: GroupSpec,
    a: GroupElement,
    chi: Character,
    field: Arc<FieldSpec>,
) -> Result<Arc<Context>> {
    if a.exps.len() != group.rank() {
        return Err(Error::GroupMismatch("`a` does not match the group".into()));
    }
    if chi.values.len() != group.rank() {
        return Err(Error::GroupMismatch("`chi` does not match the group".into()));
    }
    if chi.values.iter().any(|v| v.field().conductor() != field.conductor()) {
        return Err(Error::FieldMismatch {
            left: field.conductor(),
            right: chi.values[0].field().conductor(),
        });
    }
    let gen_roots = group
        .factor_orders()
        .iter()
        .map(|&n| if n > 0 { field.root_of_unity(n).map(Some) } else { Ok(None) })
        .collect::<Result<Vec<_>>>()?;
    let chi_a = chi.eval(&a)?;
    if chi_a.is_one() {
        return Err(Error::ChiAEqualsOne);
    }
    let regime = match (chi.order(), chi_a.order()?) {
        (Order::Infinite, Order::Infinite) => Regime::Inf,
        (Order::Finite(s), Order::Finite(t)) if s == t => Regime::Fin(s),
        (x, y) => {
            return Err(Error::UnsupportedRegime {
                chi_order: x.to_string(),
                chi_a_order: y.to_string(),
            })
        }
    };
    let q = chi_a.inv()?;
    Ok(Arc::new(Context {
        group,
        a,
        chi,
        field,
        q,
        regime,
        gen_roots,
    }))
}

impl Context {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `s` in the finite regime.
    pub fn s(&self) -> Result<u64> {
        match self.regime {
            Regime::Fin(s) => Ok(s),
            Regime::Inf => Err(Error::InfiniteRegime),
        }
    }

    pub fn trivial(&self) -> Character {
        Character::trivial(&self.group, &self.field)
    }

    pub fn chi_pow(&self, k: i64) -> Character {
        self.chi.pow(k)
    }

    /// `chi^k * sigma`.
    pub fn twist(&self, k: i64, sigma: &Character) -> Character {
        if k == 0 {
            sigma.clone()
        } else {
            self.chi.pow(k).mul(sigma)
        }
    }

    /// `lambda(a)`.
    pub fn at_a(&self, lambda: &Character) -> Scalar {
        lambda.eval(&self.a).expect("validated character")
    }

    /// `lambda(a^s)`; this is constant on `<chi>`-cosets.
    pub fn at_a_s(&self, lambda: &Character) -> Result<Scalar> {
        Ok(self.at_a(lambda).pow(self.s()? as i64))
    }

    /// Minimum of `{chi^i sigma : 0 <= i < s}` in the lexicographic order.
    pub fn coset_canonical(&self, sigma: &Character) -> Result<Character> {
        let s = self.s()?;
        let mut best = sigma.clone();
        let mut cur = sigma.clone();
        for _ in 1..s {
            cur = self.chi.mul(&cur);
            if cur < best {
                best = cur.clone();
            }
        }
        Ok(best)
    }

    /// The character from integer exponents on finite factors and values on
    /// infinite ones.
    pub fn character_from_entries(&self, entries: &[CharEntry]) -> Result<Character> {
        if entries.len() != self.group.rank() {
            return Err(Error::Semantic(format!(
                "character has {} entries, group has {} factors",
                entries.len(),
                self.group.rank()
            )));
        }
        let values = entries
            .iter()
            .zip(&self.gen_roots)
            .map(|(e, root)| match (e, root) {
                (CharEntry::Exp(k), Some(z)) => Ok(z.pow(*k)),
                (CharEntry::Value(v), None) => Ok(v.clone()),
                (CharEntry::Exp(k), None) => Ok(self.field.from_int(*k)),
                (CharEntry::Value(v), Some(_)) => Err(Error::Semantic(format!(
                    "finite factor needs an integer exponent, got {v}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        for v in &values {
            if v.is_zero() {
                return Err(Error::Semantic("character value 0 is not a unit".into()));
            }
        }
        Character::new(values, &self.group).map_err(|e| Error::Semantic(e.to_string()))
    }

    /// Inverse of [`Context::character_from_entries`].
    pub fn character_entries(&self, lambda: &Character) -> Vec<CharEntry> {
        lambda
            .values
            .iter()
            .zip(&self.gen_roots)
            .zip(&self.group.factor_orders)
            .map(|((v, root), &n)| match root {
                Some(z) => {
                    let mut p = self.field.one();
                    for k in 0..n as i64 {
                        if &p == v {
                            return CharEntry::Exp(k);
                        }
                        p = &p * z;
                    }
                    unreachable!("validated character value is a power of zeta_n")
                }
                None => CharEntry::Value(v.clone()),
            })
            .collect()
    }

    /// Text form `[e1,e2,...]` used by the label grammar.
    pub fn format_character(&self, lambda: &Character) -> String {
        let parts: Vec<String> = self
            .character_entries(lambda)
            .into_iter()
            .map(|e| match e {
                CharEntry::Exp(k) => k.to_string(),
                CharEntry::Value(v) => v.to_string(),
            })
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// A random character. Infinite factors draw from small nonzero rationals
    /// and signed powers of `zeta`.
    pub fn random_character<R: Rng + ?Sized>(&self, rng: &mut R) -> Character {
        let values = self
            .gen_roots
            .iter()
            .zip(&self.group.factor_orders)
            .map(|(root, &n)| match root {
                Some(z) => z.pow(rng.gen_range(0..n as i64)),
                None => {
                    let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    let den = rng.gen_range(1..=4i64);
                    self.field.from_rational(Rational::new(num, den))
                        * self.field.zeta().pow(rng.gen_range(0..self.field.conductor() as i64))
                }
            })
            .collect();
        Character { values }
    }

    /// Every character of a finite group, in exponent order.
    pub fn all_characters(&self) -> Option<Vec<Character>> {
        let mut out = vec![Vec::<Scalar>::new()];
        for (root, &n) in self.gen_roots.iter().zip(&self.group.factor_orders) {
            let z = root.as_ref()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n as i64).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(z.pow(k));
                        p
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(|values| Character { values }).collect())
    }
}

/// One coordinate of a character in the label grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharEntry {
    Exp(i64),
    Value(Scalar),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextFile {
    #[serde(default)]
    conductor: Option<Conductor>,
    group: Vec<u64>,
    a: Vec<i64>,
    chi: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Conductor {
    Fixed(u64),
    Named(String),
}

/// Parses the JSON context format
/// `{"conductor": m | "auto", "group": [...], "a": [...], "chi": [...]}`.
pub fn context_from_json(text: &str) -> Result<Arc<Context>> {
    let file: ContextFile = serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::Syntax {
                pos: e.column(),
                msg: e.to_string(),
            }
        } else {
            Error::InvalidContext {
                field: "json".into(),
                msg: e.to_string(),
            }
        }
    })?;
    let group = GroupSpec::new(file.group)?;
    let conductor = match file.conductor {
        None => group.exponent(),
        Some(Conductor::Fixed(0)) => {
            return Err(Error::InvalidContext {
                field: "conductor".into(),
                msg: "must be positive".into(),
            })
        }
        Some(Conductor::Fixed(m)) => m,
        Some(Conductor::Named(s)) if s == "auto" => group.exponent(),
        Some(Conductor::Named(s)) => {
            return Err(Error::InvalidContext {
                field: "conductor".into(),
                msg: format!("expected a positive integer or \"auto\", got {s:?}"),
            })
        }
    };
    let field = FieldSpec::new(conductor);
    if file.a.len() != group.rank() {
        return Err(Error::InvalidContext {
            field: "a".into(),
            msg: format!("expected {} entries, got {}", group.rank(), file.a.len()),
        });
    }
    let a = group.element(file.a)?;
    if file.chi.len() != group.rank() {
        return Err(Error::InvalidContext {
            field: "chi".into(),
            msg: format!("expected {} entries, got {}", group.rank(), file.chi.len()),
        });
    }
    let values = file
        .chi
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_scalar(s, &field).map_err(|e| Error::InvalidContext {
                field: format!("chi[{i}]"),
                msg: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = Character::new(values, &group)?;
    build_context(group, a, chi, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(json: &str) -> Arc<Context> {
        context_from_json(json).unwrap()
    }

    #[test]
    fn evaluation() {
        let c = ctx(r#"{"conductor": 4, "group": [4], "a": [1], "chi": ["z"]}"#);
        let g = c.group().element(vec![2]).unwrap();
        assert_eq!(c.chi().eval(&g).unwrap(), c.field().from_int(-1));
        assert!(c.trivial().eval(&g).unwrap().is_one());
        assert_eq!(c.regime(), Regime::Fin(4));
    }

    #[test]
    fn orders() {
        let c = ctx(r#"{"conductor": 4, "group": [4], "a": [1], "chi": ["z"]}"#);
        assert_eq!(c.trivial().order(), Order::Finite(1));
        assert_eq!(c.chi().pow(2).order(), Order::Finite(2));
        let inf = ctx(r#"{"group": [0], "a": [1], "chi": ["2"]}"#);
        assert_eq!(inf.chi().order(), Order::Infinite);
    }

    #[test]
    fn build_examples() {
        let c = ctx(r#"{"conductor": "auto", "group": [2], "a": [1], "chi": ["-1"]}"#);
        assert_eq!(c.regime(), Regime::Fin(2));
        assert_eq!(c.q(), &c.field().from_int(-1));
        let c = ctx(r#"{"group": [0], "a": [1], "chi": ["1/2"]}"#);
        assert_eq!(c.regime(), Regime::Inf);
        assert_eq!(c.q(), &c.field().from_int(2));
        assert_eq!(
            context_from_json(r#"{"group": [2], "a": [0], "chi": ["-1"]}"#).unwrap_err(),
            Error::ChiAEqualsOne
        );
    }

    #[test]
    fn rejected_contexts() {
        // |chi| = inf but chi(a) = -1.
        let e = context_from_json(r#"{"conductor": 2, "group": [0, 2], "a": [0, 1], "chi": ["2", "-1"]}"#);
        assert!(matches!(e, Err(Error::UnsupportedRegime { .. })));
        let e = context_from_json(r#"{"conductor": 2, "group": [4], "a": [1], "chi": ["-1"]}"#);
        assert!(matches!(e, Err(Error::FieldTooSmall { .. })));
        let e = context_from_json(r#"{"group": [3], "a": [1], "chi": ["-1"]}"#);
        assert!(matches!(e, Err(Error::InvalidContext { field, .. }) if field == "chi[0]"));
        let e = context_from_json(r#"{"group": [3], "a": [1, 2], "chi": ["z"]}"#);
        assert!(matches!(e, Err(Error::InvalidContext { field, .. }) if field == "a"));
        let e = context_from_json(r#"{"group": [3], "a": [1], "chi": ["z +"]}"#);
        assert!(matches!(e, Err(Error::InvalidContext { field, .. }) if field == "chi[0]"));
        let e = context_from_json(r#"{"conductor": "big", "group": [3], "a": [1], "chi": ["z"]}"#);
        assert!(matches!(e, Err(Error::InvalidContext { field, .. }) if field == "conductor"));
        assert!(matches!(context_from_json("{"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn coset_representatives() {
        let c = ctx(r#"{"group": [2], "a": [1], "chi": ["-1"]}"#);
        let sigma = c.chi().clone();
        assert_eq!(c.coset_canonical(&sigma).unwrap(), c.trivial());
        let c = ctx(r#"{"group": [9], "a": [1], "chi": ["z^3"]}"#);
        for sigma in c.all_characters().unwrap() {
            let r = c.coset_canonical(&sigma).unwrap();
            assert_eq!(c.coset_canonical(&r).unwrap(), r);
            assert_eq!(c.coset_canonical(&c.chi().mul(&sigma)).unwrap(), r);
        }
        let reps: std::collections::BTreeSet<_> = c
            .all_characters()
            .unwrap()
            .iter()
            .map(|s| c.coset_canonical(s).unwrap())
            .collect();
        assert_eq!(reps.len(), 3);
        let inf = ctx(r#"{"group": [0], "a": [1], "chi": ["2"]}"#);
        assert_eq!(inf.coset_canonical(&inf.trivial()), Err(Error::InfiniteRegime));
    }

    #[test]
    fn group_laws_and_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for json in [
            r#"{"group": [2], "a": [1], "chi": ["-1"]}"#,
            r#"{"group": [3, 0], "a": [1, 0], "chi": ["z", "1"]}"#,
            r#"{"conductor": 4, "group": [0], "a": [1], "chi": ["1/2"]}"#,
        ] {
            let c = ctx(json);
            for _ in 0..200 {
                let (l, s, t) = (
                    c.random_character(&mut rng),
                    c.random_character(&mut rng),
                    c.random_character(&mut rng),
                );
                assert_eq!(l.mul(&s).mul(&t), l.mul(&s.mul(&t)));
                assert_eq!(l.mul(&c.trivial()), l);
                assert!(l.mul(&l.inv()).is_trivial());
                let g = c
                    .group()
                    .element(
                        c.group()
                            .factor_orders()
                            .iter()
                            .map(|_| rng.gen_range(-5..5))
                            .collect(),
                    )
                    .unwrap();
                assert_eq!(l.mul(&s).eval(&g).unwrap(), &l.eval(&g).unwrap() * &s.eval(&g).unwrap());
            }
            if let Regime::Fin(s) = c.regime() {
                assert!(c.q().pow(s as i64).is_one());
                assert!((1..s).all(|d| !c.q().pow(d as i64).is_one()));
            }
        }
    }

    #[test]
    fn entries_round_trip() {
        let c = ctx(r#"{"group": [3, 0], "a": [1, 0], "chi": ["z", "1"]}"#);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let l = c.random_character(&mut rng);
            let back = c.character_from_entries(&c.character_entries(&l)).unwrap();
            assert_eq!(back, l);
        }
    }
}
