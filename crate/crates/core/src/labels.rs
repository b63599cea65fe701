//! Names of the indecomposable weight modules and of their direct sums.
//!
//! Text syntax:
//!
//! ```text
//! label  := "N(" t ";" char ")" | "P(" t ";" char ";" scalar ")"
//! char   := "[" entry ("," entry)* "]"
//! entry  := integer | scalar
//! ```
//!
//! `N(t;[..])` is the nilpotent module `V_t(lambda)`; `P(t;[..];b)` is the
//! non-nilpotent module `V_t(sigma, b)` of dimension `t*s`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde_json::{json, Value};

use crate::characters::{CharEntry, Character, Context, Regime};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar_at, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleLabel {
    Nil { t: u64, lam: Character },
    NonNil { t: u64, sig: Character, beta: Scalar },
}

impl ModuleLabel {
    pub fn nil(t: u64, lam: Character) -> Result<Self> {
        if t == 0 {
            return Err(Error::Semantic("module length must be at least 1".into()));
        }
        Ok(ModuleLabel::Nil { t, lam })
    }

    /// Canonical non-nilpotent label; `sig` is replaced by its coset representative.
    pub fn non_nil(t: u64, sig: &Character, beta: Scalar, ctx: &Context) -> Result<Self> {
        if t == 0 {
            return Err(Error::Semantic("module length must be at least 1".into()));
        }
        if beta.is_zero() {
            return Err(Error::ZeroBeta);
        }
        let sig = ctx.coset_canonical(sig).map_err(|_| {
            Error::RegimeMismatch("non-nilpotent modules need a finite regime".into())
        })?;
        Ok(ModuleLabel::NonNil { t, sig, beta })
    }

    pub fn t(&self) -> u64 {
        match self {
            ModuleLabel::Nil { t, .. } | ModuleLabel::NonNil { t, .. } => *t,
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, ModuleLabel::Nil { .. })
    }

    /// The character carried by the label (the top weight, or the coset representative).
    pub fn character(&self) -> &Character {
        match self {
            ModuleLabel::Nil { lam, .. } => lam,
            ModuleLabel::NonNil { sig, .. } => sig,
        }
    }

    /// Whether the stored fields are canonical and valid in `ctx`.
    pub fn validate(&self, ctx: &Context) -> Result<()> {
        match self {
            ModuleLabel::Nil { t, .. } if *t >= 1 => Ok(()),
            ModuleLabel::Nil { .. } => Err(Error::Semantic("module length must be at least 1".into())),
            ModuleLabel::NonNil { t, sig, beta } => {
                let again = ModuleLabel::non_nil(*t, sig, beta.clone(), ctx)?;
                if &again == self {
                    Ok(())
                } else {
                    Err(Error::Semantic("non-nilpotent label is not coset-canonical".into()))
                }
            }
        }
    }
}

/// `t` for `V_t(lambda)`, `t*s` for `V_t(sigma, beta)`.
pub fn dim_of(label: &ModuleLabel, ctx: &Context) -> Result<u64> {
    match label {
        ModuleLabel::Nil { t, .. } => Ok(*t),
        ModuleLabel::NonNil { t, .. } => match ctx.regime() {
            Regime::Fin(s) => Ok(t * s),
            Regime::Inf => Err(Error::RegimeMismatch(
                "non-nilpotent modules need a finite regime".into(),
            )),
        },
    }
}

/// Canonical label for `V_t(chr, beta)`, using `V_t(lambda, 0) = V_{ts}(lambda)`.
pub fn canonicalize(t: u64, chr: &Character, beta: &Scalar, ctx: &Context) -> Result<ModuleLabel> {
    if beta.is_zero() {
        ModuleLabel::nil(t * ctx.s()?, chr.clone())
    } else {
        ModuleLabel::non_nil(t, chr, beta.clone(), ctx)
    }
}

/// A finite direct sum of indecomposables, kept in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    summands: BTreeMap<ModuleLabel, u64>,
    total_dim: u64,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `label`; zero multiplicities are ignored.
    pub fn push(&mut self, label: ModuleLabel, mult: u64, ctx: &Context) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        self.total_dim += mult * dim_of(&label, ctx)?;
        *self.summands.entry(label).or_insert(0) += mult;
        Ok(())
    }

    pub fn from_labels<I>(labels: I, ctx: &Context) -> Result<Self>
    where
        I: IntoIterator<Item = (ModuleLabel, u64)>,
    {
        let mut d = Decomposition::new();
        for (l, m) in labels {
            d.push(l, m, ctx)?;
        }
        Ok(d)
    }

    pub fn summands(&self) -> impl Iterator<Item = (&ModuleLabel, u64)> {
        self.summands.iter().map(|(l, &m)| (l, m))
    }

    pub fn multiplicity(&self, label: &ModuleLabel) -> u64 {
        self.summands.get(label).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.total_dim
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.summands.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn to_json(&self, ctx: &Context) -> Value {
        let summands: Vec<Value> = self
            .summands
            .iter()
            .map(|(l, &m)| {
                json!({
                    "label": print_label(l, ctx),
                    "mult": m,
                    "dim": dim_of(l, ctx).expect("stored labels are valid"),
                })
            })
            .collect();
        json!({ "summands": summands, "total_dim": self.total_dim })
    }

    /// `N(4;[0]) + 2*P(1;[0];2)`; the empty sum prints as `0`.
    pub fn to_text(&self, ctx: &Context) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (l, &m)) in self.summands.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if m != 1 {
                let _ = write!(out, "{m}*");
            }
            out.push_str(&print_label(l, ctx));
        }
        out
    }
}

pub fn print_label(label: &ModuleLabel, ctx: &Context) -> String {
    match label {
        ModuleLabel::Nil { t, lam } => format!("N({t};{})", ctx.format_character(lam)),
        ModuleLabel::NonNil { t, sig, beta } => {
            format!("P({t};{};{beta})", ctx.format_character(sig))
        }
    }
}

/// Parses a complete label.
pub fn parse_label(text: &str, ctx: &Context) -> Result<ModuleLabel> {
    let (label, end) = parse_label_at(text, 0, ctx)?;
    let rest = &text[end..];
    if let Some(off) = rest.find(|c: char| !c.is_whitespace()) {
        return Err(Error::Syntax {
            pos: end + off,
            msg: "trailing input after label".into(),
        });
    }
    Ok(label)
}

/// Parses one label starting at byte `start`; returns it and the end offset.
pub fn parse_label_at(text: &str, start: usize, ctx: &Context) -> Result<(ModuleLabel, usize)> {
    let mut p = LabelParser {
        text,
        pos: start,
        ctx,
    };
    let label = p.label()?;
    Ok((label, p.pos))
}

struct LabelParser<'a> {
    text: &'a str,
    pos: usize,
    ctx: &'a Context,
}

impl LabelParser<'_> {
    fn bytes(&self) -> &[u8] {
        self.text.as_bytes()
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.bytes().get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes().get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes().get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.bytes().get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| {
            let pos = start;
            Error::Syntax {
                pos,
                msg: "expected an integer".into(),
            }
        })
    }

    /// The text up to the first `,`, `;`, `]` or unmatched `)`.
    fn scalar_span(&mut self) -> (usize, usize) {
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(&c) = self.bytes().get(self.pos) {
            match c {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' | b';' | b']' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        (start, self.pos)
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let (a, b) = self.scalar_span();
        parse_scalar_at(&self.text[a..b], a, self.ctx.field())
    }

    fn character(&mut self) -> Result<Character> {
        self.expect(b'[')?;
        let at = self.pos;
        let mut entries = Vec::new();
        for (i, &n) in self.ctx.group().factor_orders().iter().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            if n > 0 {
                entries.push(CharEntry::Exp(self.integer()?));
            } else {
                entries.push(CharEntry::Value(self.scalar()?));
            }
        }
        self.skip_ws();
        if self.bytes().get(self.pos) == Some(&b',') {
            return Err(self.syntax(format!(
                "too many character entries; the group has {} factors",
                self.ctx.group().rank()
            )));
        }
        self.expect(b']')?;
        self.ctx.character_from_entries(&entries).map_err(|e| match e {
            Error::Semantic(m) => Error::Semantic(format!("character at position {at}: {m}")),
            other => other,
        })
    }

    fn label(&mut self) -> Result<ModuleLabel> {
        self.skip_ws();
        let kind = match self.bytes().get(self.pos) {
            Some(b'N') => b'N',
            Some(b'P') => b'P',
            _ => return Err(self.syntax("expected `N(` or `P(`")),
        };
        self.pos += 1;
        self.expect(b'(')?;
        let t_at = {
            self.skip_ws();
            self.pos
        };
        let t = self.integer()?;
        if t < 1 {
            return Err(Error::Semantic(format!(
                "module length at position {t_at} must be at least 1, got {t}"
            )));
        }
        self.expect(b';')?;
        let chr = self.character()?;
        let label = if kind == b'N' {
            ModuleLabel::nil(t as u64, chr)?
        } else {
            self.expect(b';')?;
            let beta = self.scalar()?;
            if self.ctx.regime() == Regime::Inf {
                return Err(Error::Semantic(
                    "P(...) labels need a finite-order context".into(),
                ));
            }
            if beta.is_zero() {
                return Err(Error::Semantic("beta must be nonzero".into()));
            }
            ModuleLabel::non_nil(t as u64, &chr, beta, self.ctx)?
        };
        self.expect(b')')?;
        Ok(label)
    }
}

/// A random canonical label with `t <= max_t`. Non-nilpotent labels appear
/// only in a finite regime; `betas` supplies their parameters.
pub fn random_label<R: Rng + ?Sized>(
    ctx: &Context,
    rng: &mut R,
    max_t: u64,
    betas: &[Scalar],
) -> ModuleLabel {
    let t = rng.gen_range(1..=max_t);
    let chr = ctx.random_character(rng);
    if ctx.regime() != Regime::Inf && !betas.is_empty() && rng.gen_bool(0.5) {
        let beta = betas[rng.gen_range(0..betas.len())].clone();
        ModuleLabel::non_nil(t, &chr, beta, ctx).expect("finite regime, nonzero beta")
    } else {
        ModuleLabel::nil(t, chr).expect("t >= 1")
    }
}
