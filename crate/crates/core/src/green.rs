//! The Green ring: integer combinations of indecomposables, multiplied by
//! tensor product.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::characters::Context;
use crate::error::{Error, Result};
use crate::labels::{parse_label_at, print_label, Decomposition, ModuleLabel};
use crate::rules::tensor_decompose;

#[derive(Debug, Clone)]
pub struct RingElement {
    terms: BTreeMap<ModuleLabel, i64>,
    ctx: Arc<Context>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ctx == other.ctx
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Self { terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    /// The class of `Nil(1, eps)`.
    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::from_label(ModuleLabel::nil(1, ctx.trivial()).expect("t = 1 is valid"), ctx)
    }

    pub fn from_label(label: ModuleLabel, ctx: &Arc<Context>) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(label, 1);
        e
    }

    pub fn from_decomposition(d: &Decomposition, ctx: &Arc<Context>) -> Self {
        let mut e = Self::zero(ctx);
        for (l, m) in d.summands() {
            e.add_term(l.clone(), m as i64);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModuleLabel, i64)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    pub fn coefficient(&self, label: &ModuleLabel) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    fn add_term(&mut self, label: ModuleLabel, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(label.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&label);
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (l, &c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(l, &c)| (l.clone(), -c)).collect(), ctx: self.ctx.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(&self.ctx);
        }
        Self { terms: self.terms.iter().map(|(l, &c)| (l.clone(), k * c)).collect(), ctx: self.ctx.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                for (l, m) in tensor_decompose(a, b, &self.ctx)?.summands() {
                    out.add_term(l.clone(), ca * cb * m as i64);
                }
            }
        }
        Ok(out)
    }

    /// `2*N(2;[0]) - P(1;[0];3)`; zero prints as `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (l, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => out.push('-'),
                _ => {
                    let _ = write!(out, " {sign} ");
                }
            }
            if c.abs() != 1 {
                let _ = write!(out, "{}*", c.abs());
            }
            out.push_str(&print_label(l, &self.ctx));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(l, &c)| json!({"label": print_label(l, &self.ctx), "coeff": c}))
            .collect();
        json!({ "terms": terms })
    }
}

/// All ordered products of `generators`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub generators: Vec<ModuleLabel>,
    pub cells: Vec<Vec<Decomposition>>,
}

pub fn structure_table(generators: &[ModuleLabel], ctx: &Context) -> Result<StructureTable> {
    if generators.is_empty() {
        return Err(Error::Semantic("structure table needs at least one generator".into()));
    }
    let cells = generators
        .par_iter()
        .map(|a| generators.iter().map(|b| tensor_decompose(a, b, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureTable { generators: generators.to_vec(), cells })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl StructureTable {
    /// One row per ordered pair, after a `left,right,product` header.
    pub fn to_csv(&self, ctx: &Context) -> String {
        let mut out = String::from("left,right,product\n");
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&print_label(a, ctx)),
                    csv_field(&print_label(b, ctx)),
                    csv_field(&self.cells[i][j].to_text(ctx))
                );
            }
        }
        out
    }

    pub fn to_markdown(&self, ctx: &Context) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| print_label(g, ctx)).collect();
        let mut out = String::from("| ⊗ |");
        for n in &names {
            let _ = write!(out, " {n} |");
        }
        out.push('\n');
        out.push_str(&"|---".repeat(names.len() + 1));
        out.push_str("|\n");
        for (i, n) in names.iter().enumerate() {
            let _ = write!(out, "| {n} |");
            for cell in &self.cells[i] {
                let _ = write!(out, " {} |", cell.to_text(ctx));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, ctx: &Context) -> Value {
        let gens: Vec<String> = self.generators.iter().map(|g| print_label(g, ctx)).collect();
        let mut cells = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                cells.push(json!({"left": a, "right": b, "product": self.cells[i][j].to_json(ctx)}));
            }
        }
        json!({"generators": gens, "cells": cells})
    }
}

/// Evaluates `expr := term (('+'|'-') term)*`, `term := int? label ('*' label)*`.
///
/// Products are evaluated left to right.
pub fn eval_green_expr(text: &str, ctx: &Arc<Context>) -> Result<RingElement> {
    let mut p = ExprParser { text, pos: 0, ctx };
    p.skip_ws();
    let mut total = RingElement::zero(ctx);
    let mut sign = 1;
    if p.eat(b'-') {
        sign = -1;
    } else {
        p.eat(b'+');
    }
    loop {
        let term = p.term()?;
        total = total.add(&term.scale(sign))?;
        if p.eat(b'+') {
            sign = 1;
        } else if p.eat(b'-') {
            sign = -1;
        } else if p.pos == text.len() {
            return Ok(total);
        } else {
            return Err(p.syntax("expected '+', '-' or '*'"));
        }
    }
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
    ctx: &'a Arc<Context>,
}

impl ExprParser<'_> {
    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let coeff = if self.pos > start {
            let k: i64 = self.text[start..self.pos]
                .parse()
                .map_err(|_| Error::Syntax { pos: start, msg: "coefficient out of range".into() })?;
            self.skip_ws();
            self.eat(b'*');
            k
        } else {
            1
        };
        let mut value = RingElement::from_label(self.label()?, self.ctx);
        while self.eat(b'*') {
            let rhs = RingElement::from_label(self.label()?, self.ctx);
            value = value.mul(&rhs)?;
        }
        Ok(value.scale(coeff))
    }

    fn label(&mut self) -> Result<ModuleLabel> {
        if !matches!(self.peek(), Some(b'N' | b'P')) {
            return Err(self.syntax("expected a label"));
        }
        let (label, end) = parse_label_at(self.text, self.pos, self.ctx)?;
        self.pos = end;
        self.skip_ws();
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::context_from_json;

    fn fin2() -> Arc<Context> {
        context_from_json(r#"{"group": [2], "a": [1], "chi": ["-1"]}"#).unwrap()
    }

    #[test]
    fn unit_and_one_dimensional_products() {
        let ctx = fin2();
        let chi = ctx.chi().clone();
        let x = eval_green_expr("2*N(3;[1]) - P(2;[0];5)", &ctx).unwrap();
        let one = RingElement::one(&ctx);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
        let l = RingElement::from_label(ModuleLabel::nil(1, chi.clone()).unwrap(), &ctx);
        assert_eq!(l.mul(&l).unwrap(), one);
    }

    #[test]
    fn expression_examples() {
        let ctx = fin2();
        let a = eval_green_expr("N(2;[1]) * N(2;[0]) * N(2;[0])", &ctx).unwrap();
        let b = eval_green_expr("N(2;[1]) * N(2;[0])", &ctx)
            .unwrap()
            .mul(&eval_green_expr("N(2;[0])", &ctx).unwrap())
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), "2*N(2;[0]) + 2*N(2;[1])");
        let z = eval_green_expr("N(2;[0]) - N(2;[0])", &ctx).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_text(), "0");
        assert_eq!(eval_green_expr("-3 N(1;[0])", &ctx).unwrap().to_text(), "-3*N(1;[0])");
    }

    #[test]
    fn expression_errors_carry_positions() {
        let ctx = fin2();
        match eval_green_expr("N(2;[0]) + + N(1;[0])", &ctx) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(matches!(eval_green_expr("N(2;[0]) N(1;[0])", &ctx), Err(Error::Syntax { pos: 9, .. })));
    }

    #[test]
    fn table_examples() {
        let ctx = fin2();
        let gens = vec![ModuleLabel::nil(1, ctx.chi().clone()).unwrap(), ModuleLabel::nil(2, ctx.trivial()).unwrap()];
        let t = structure_table(&gens, &ctx).unwrap();
        assert_eq!(t.cells[1][1].to_text(&ctx), "N(2;[0]) + N(2;[1])");
        let csv = t.to_csv(&ctx);
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(csv, structure_table(&gens, &ctx).unwrap().to_csv(&ctx));
        assert!(t.to_markdown(&ctx).starts_with("| ⊗ | N(1;[1]) | N(2;[0]) |"));
        let one = structure_table(&[ModuleLabel::nil(1, ctx.trivial()).unwrap()], &ctx).unwrap();
        assert_eq!(one.cells[0][0].to_text(&ctx), "N(1;[0])");
    }
}
