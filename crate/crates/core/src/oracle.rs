//! Brute-force decomposition of an explicit weight module.
//!
//! The module is split into the connected components of the support graph
//! of `x`. A component that admits a `Z`-grading with `x` of degree one is
//! analysed level by level. Any other component is bucketed by weight; in
//! the finite regime `x^s` preserves each weight space and its Fitting
//! decomposition separates the nilpotent strings from the `NonNil` blocks.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::characters::{Character, Context, Regime};
use crate::error::{Error, Result};
use crate::labels::{print_label, Decomposition, ModuleLabel};
use crate::linalg::{fitting_split, generalized_eigen_profile, jordan_blocks_from_profile, Matrix, SubspaceBasis};
use crate::realization::{realize, tensor_realize, WeightModule};
use crate::rules::tensor_decompose;
use crate::scalar::Scalar;

/// Per-component record of what the oracle saw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDiagnostics {
    pub dim: usize,
    pub graded: bool,
    /// Dimension of each bucket (a grading level or a weight space), keyed by weight.
    pub buckets: Vec<(String, usize)>,
    pub nil_dim: usize,
    pub inv_dim: usize,
    /// Jordan blocks of `x^s` on a representative weight space, per eigenvalue.
    pub eigenvalues: Vec<(String, Vec<usize>)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub dim: usize,
    pub components: Vec<ComponentDiagnostics>,
}

impl Diagnostics {
    pub fn nil_dim(&self) -> usize {
        self.components.iter().map(|c| c.nil_dim).sum()
    }

    pub fn inv_dim(&self) -> usize {
        self.components.iter().map(|c| c.inv_dim).sum()
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "dim": c.dim,
                    "graded": c.graded,
                    "buckets": c.buckets.iter().map(|(w, d)| json!([w, d])).collect::<Vec<_>>(),
                    "fitting": {"nil": c.nil_dim, "inv": c.inv_dim},
                    "eigenvalues": c.eigenvalues.iter()
                        .map(|(u, b)| json!({"u": u, "blocks": b}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "dim": self.dim,
            "fitting": {"nil": self.nil_dim(), "inv": self.inv_dim()},
            "components": comps,
        })
    }
}

/// Decomposes `m` into indecomposable labels.
///
/// In the finite regime `candidates` must contain every eigenvalue of `x^s`
/// on `m`; otherwise the call fails with `EigenvalueOutsideCandidates`.
pub fn oracle_decompose(m: &WeightModule, candidates: &[Scalar]) -> Result<Decomposition> {
    Ok(oracle_decompose_with_diagnostics(m, candidates)?.0)
}

pub fn oracle_decompose_with_diagnostics(
    m: &WeightModule,
    candidates: &[Scalar],
) -> Result<(Decomposition, Diagnostics)> {
    let mut dec = Decomposition::new();
    let mut diag = Diagnostics { dim: m.dim(), components: Vec::new() };
    let cands: BTreeSet<Scalar> = candidates.iter().filter(|u| !u.is_zero()).cloned().collect();
    for comp in components(m.x()) {
        let cd = match grading_levels(m.x(), &comp) {
            Some(levels) => decompose_graded(m, &levels, &mut dec)?,
            None => decompose_by_weight(m, &comp, &cands, &mut dec)?,
        };
        diag.components.push(cd);
    }
    if dec.total_dim() != m.dim() as u64 {
        return Err(Error::InternalDimensionMismatch { expected: m.dim(), got: dec.total_dim() as usize });
    }
    Ok((dec, diag))
}

/// Connected components of the undirected support graph of `x`, each sorted.
fn components(x: &Matrix) -> Vec<Vec<usize>> {
    let n = x.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for r in 0..n {
        for c in 0..n {
            if !x.get(r, c).is_zero() {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Levels `L_0, L_1, ...` with every nonzero entry of `x` mapping `L_k` into
/// `L_{k+1}`, if such a grading of the component exists.
fn grading_levels(x: &Matrix, comp: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut level: HashMap<usize, i64> = HashMap::new();
    let mut queue = VecDeque::new();
    level.insert(comp[0], 0);
    queue.push_back(comp[0]);
    while let Some(i) = queue.pop_front() {
        let li = level[&i];
        for &j in comp {
            let mut want = Vec::new();
            if !x.get(j, i).is_zero() {
                want.push(li + 1);
            }
            if !x.get(i, j).is_zero() {
                want.push(li - 1);
            }
            for w in want {
                match level.get(&j) {
                    Some(&lj) if lj != w => return None,
                    Some(_) => {}
                    None => {
                        level.insert(j, w);
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let lo = *level.values().min()?;
    let hi = *level.values().max()?;
    let mut out = vec![Vec::new(); (hi - lo + 1) as usize];
    for &i in comp {
        out[(level[&i] - lo) as usize].push(i);
    }
    Some(out)
}

/// Buckets joined into chains by `x`: `succ[b]` receives the image of bucket `b`.
struct Chain {
    indices: Vec<Vec<usize>>,
    weights: Vec<Character>,
    succ: Vec<Option<usize>>,
    pred: Vec<Option<usize>>,
}

impl Chain {
    fn step(&self, x: &Matrix, b: usize) -> Option<Matrix> {
        self.succ[b].map(|c| x.submatrix(&self.indices[c], &self.indices[b]))
    }
}

/// String multiplicities of the nilpotent part whose bucket pieces are `start`.
///
/// With `r_k(b) = dim x^k(start_b)` and `e_k = r_k - r_{k+1}`, the number of
/// strings of length `t` headed in bucket `b` is `e_{t-1}(b) - e_t(pred b)`.
fn count_strings(
    m: &WeightModule,
    chain: &Chain,
    start: &[SubspaceBasis],
    dec: &mut Decomposition,
) -> Result<()> {
    let x = m.x();
    let bound: usize = start.iter().map(SubspaceBasis::dim).sum();
    let mut ranks: Vec<Vec<usize>> = Vec::with_capacity(start.len());
    for (b, w0) in start.iter().enumerate() {
        let mut r = vec![w0.dim()];
        let mut cur = w0.clone();
        let mut at = b;
        while cur.dim() > 0 {
            if r.len() > bound + 1 {
                return Err(Error::NotNilpotent);
            }
            match chain.step(x, at) {
                Some(step) => {
                    cur = cur.image_under(&step);
                    at = chain.succ[at].unwrap();
                }
                None => cur = SubspaceBasis::zero(0, x.field()),
            }
            r.push(cur.dim());
        }
        ranks.push(r);
    }
    let rk = |b: usize, k: usize| ranks[b].get(k).copied().unwrap_or(0);
    let e = |b: usize, k: usize| rk(b, k) - rk(b, k + 1);
    let ctx = m.ctx();
    for b in 0..start.len() {
        for t in 1..ranks[b].len() {
            let heads = e(b, t - 1);
            let through = chain.pred[b].map_or(0, |p| e(p, t));
            if heads < through {
                return Err(Error::OracleInconsistency(format!(
                    "negative multiplicity for strings of length {t}"
                )));
            }
            if heads > through {
                dec.push(ModuleLabel::nil(t as u64, chain.weights[b].clone())?, (heads - through) as u64, ctx)?;
            }
        }
    }
    Ok(())
}

fn decompose_graded(
    m: &WeightModule,
    levels: &[Vec<usize>],
    dec: &mut Decomposition,
) -> Result<ComponentDiagnostics> {
    let ctx = m.ctx();
    let mut weights = Vec::with_capacity(levels.len());
    for lv in levels {
        let w = m.weight_of(lv[0]);
        if lv.iter().any(|&i| m.weight_of(i) != w) {
            return Err(Error::OracleInconsistency("grading level with mixed weights".into()));
        }
        weights.push(w.clone());
    }
    let n = levels.len();
    let chain = Chain {
        indices: levels.to_vec(),
        weights,
        succ: (0..n).map(|k| (k + 1 < n).then_some(k + 1)).collect(),
        pred: (0..n).map(|k| k.checked_sub(1)).collect(),
    };
    let start: Vec<SubspaceBasis> = levels.iter().map(|lv| SubspaceBasis::full(lv.len(), m.x().field())).collect();
    count_strings(m, &chain, &start, dec)?;
    let dim = levels.iter().map(Vec::len).sum();
    Ok(ComponentDiagnostics {
        dim,
        graded: true,
        buckets: chain.indices.iter().zip(&chain.weights).map(|(i, w)| (ctx.format_character(w), i.len())).collect(),
        nil_dim: dim,
        inv_dim: 0,
        eigenvalues: Vec::new(),
    })
}

fn decompose_by_weight(
    m: &WeightModule,
    comp: &[usize],
    cands: &BTreeSet<Scalar>,
    dec: &mut Decomposition,
) -> Result<ComponentDiagnostics> {
    let ctx = m.ctx();
    let x = m.x();
    let field = x.field();
    let mut by_weight: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
    for &i in comp {
        by_weight.entry(m.weight_of(i).clone()).or_default().push(i);
    }
    let weights: Vec<Character> = by_weight.keys().cloned().collect();
    let pos: HashMap<Character, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let chi = ctx.chi();
    let chain = Chain {
        indices: by_weight.into_values().collect(),
        succ: weights.iter().map(|w| pos.get(&w.mul(chi)).copied()).collect(),
        pred: weights.iter().map(|w| pos.get(&w.mul(&chi.inv())).copied()).collect(),
        weights,
    };
    let nb = chain.weights.len();
    let dims: Vec<usize> = chain.indices.iter().map(Vec::len).collect();
    let mut cd = ComponentDiagnostics {
        dim: comp.len(),
        graded: false,
        buckets: chain.weights.iter().zip(&dims).map(|(w, &d)| (ctx.format_character(w), d)).collect(),
        nil_dim: comp.len(),
        inv_dim: 0,
        eigenvalues: Vec::new(),
    };

    let s = match ctx.regime() {
        Regime::Inf => {
            let start: Vec<SubspaceBasis> = dims.iter().map(|&d| SubspaceBasis::full(d, field)).collect();
            count_strings(m, &chain, &start, dec)?;
            return Ok(cd);
        }
        Regime::Fin(s) => s as usize,
    };

    // x^s restricted to each weight space.
    let steps: Vec<Option<Matrix>> = (0..nb).map(|b| chain.step(x, b)).collect();
    let mut phi = Vec::with_capacity(nb);
    for b in 0..nb {
        let mut p = Matrix::identity(dims[b], field);
        let mut at = Some(b);
        for _ in 0..s {
            match at.and_then(|a| steps[a].as_ref().map(|st| (a, st))) {
                Some((a, st)) => {
                    p = st.mul(&p)?;
                    at = chain.succ[a];
                }
                None => {
                    p = Matrix::zeros(dims[b], dims[b], field);
                    break;
                }
            }
        }
        phi.push(p);
    }
    let mut nil = Vec::with_capacity(nb);
    let mut inv = Vec::with_capacity(nb);
    for p in &phi {
        let (kn, im) = fitting_split(p)?;
        nil.push(kn);
        inv.push(im);
    }
    for b in 0..nb {
        let Some(c) = chain.succ[b] else { continue };
        let st = steps[b].as_ref().unwrap();
        let closed = |from: &SubspaceBasis, into: &SubspaceBasis| {
            from.vectors().iter().all(|v| into.contains(&st.apply(v)))
        };
        if !closed(&nil[b], &nil[c]) || !closed(&inv[b], &inv[c]) {
            return Err(Error::OracleInconsistency("Fitting part not stable under x".into()));
        }
    }
    cd.nil_dim = nil.iter().map(SubspaceBasis::dim).sum();
    cd.inv_dim = inv.iter().map(SubspaceBasis::dim).sum();
    count_strings(m, &chain, &nil, dec)?;

    let mut seen = vec![false; nb];
    for b in 0..nb {
        if seen[b] {
            continue;
        }
        let mut orbit = vec![b];
        seen[b] = true;
        let mut at = chain.succ[b];
        while let Some(c) = at {
            if seen[c] {
                break;
            }
            seen[c] = true;
            orbit.push(c);
            at = chain.succ[c];
        }
        let mut reference: Option<Vec<(Scalar, Vec<usize>)>> = None;
        for &w in &orbit {
            let table = jordan_table(&phi[w], &inv[w], cands, &chain.weights[w], ctx)?;
            match &reference {
                None => reference = Some(table),
                Some(r) if *r != table => {
                    return Err(Error::OracleInconsistency(
                        "Jordan type of x^s differs across an orbit".into(),
                    ))
                }
                Some(_) => {}
            }
        }
        let rep = &chain.weights[b];
        for (u, blocks) in reference.unwrap_or_default() {
            for &k in &blocks {
                dec.push(ModuleLabel::non_nil(k as u64, rep, u.clone(), ctx)?, 1, ctx)?;
            }
            cd.eigenvalues.push((u.to_string(), blocks));
        }
    }
    Ok(cd)
}

/// Jordan blocks of `phi` on the invariant subspace `inv`, per candidate.
fn jordan_table(
    phi: &Matrix,
    inv: &SubspaceBasis,
    cands: &BTreeSet<Scalar>,
    weight: &Character,
    ctx: &Context,
) -> Result<Vec<(Scalar, Vec<usize>)>> {
    if inv.dim() == 0 {
        return Ok(Vec::new());
    }
    let b = phi.restrict(inv)?;
    let mut covered = 0;
    let mut out = Vec::new();
    for u in cands {
        let profile = generalized_eigen_profile(&b, u)?;
        let d = profile.last().copied().unwrap_or(0);
        if d > 0 {
            covered += d;
            out.push((u.clone(), jordan_blocks_from_profile(&profile)));
        }
    }
    if covered != inv.dim() {
        return Err(Error::EigenvalueOutsideCandidates {
            weight: ctx.format_character(weight),
            missing: inv.dim() - covered,
        });
    }
    Ok(out)
}

/// Candidate set for a single label: `{0}` plus its `beta`.
pub fn label_candidates(l: &ModuleLabel) -> Vec<Scalar> {
    let f = l.character().values().first().map(|v| v.field().clone());
    let mut out = Vec::new();
    if let Some(f) = f {
        out.push(f.zero());
    }
    if let ModuleLabel::NonNil { beta, .. } = l {
        out.push(beta.clone());
    }
    out
}

/// Closure of candidate sets under tensoring: eigenvalues of
/// `x^s (x) a^s + 1 (x) x^s` lie in `{u * g + v}` where `g` runs over the values
/// `mu(a^s)` of the right factor's weights.
pub fn tensor_candidates(left: &[Scalar], right: &[Scalar], right_gammas: &[Scalar]) -> Vec<Scalar> {
    let mut out = BTreeSet::new();
    for u in left {
        for g in right_gammas {
            let ug = u * g;
            for v in right {
                out.insert(&ug + v);
            }
        }
    }
    out.extend(left.iter().cloned());
    out.extend(right.iter().cloned());
    out.into_iter().collect()
}

/// Distinct values `mu(a^s)` over the weights of `m` (empty in the infinite regime).
pub fn module_gammas(m: &WeightModule) -> Vec<Scalar> {
    let ctx = m.ctx();
    let set: BTreeSet<Scalar> = m.weights().iter().filter_map(|w| ctx.at_a_s(w).ok()).collect();
    set.into_iter().collect()
}

/// Candidate eigenvalues of `x^s` on `A (x) B`.
pub fn candidate_eigenvalues(a: &ModuleLabel, b: &ModuleLabel, ctx: &Context) -> Vec<Scalar> {
    let mut out: BTreeSet<Scalar> = BTreeSet::new();
    out.insert(ctx.field().zero());
    if ctx.regime() == Regime::Inf {
        return out.into_iter().collect();
    }
    let gamma = |l: &ModuleLabel| ctx.at_a_s(l.character()).ok();
    let param = |l: &ModuleLabel| match l {
        ModuleLabel::NonNil { beta, .. } => Some(beta.clone()),
        ModuleLabel::Nil { .. } => None,
    };
    let (ga, gb) = (gamma(a), gamma(b));
    let (pa, pb) = (param(a), param(b));
    for (p, g_other) in [(&pa, &gb), (&pb, &ga)] {
        if let Some(p) = p {
            out.insert(p.clone());
            if let Some(g) = g_other {
                out.insert(p * g);
            }
        }
    }
    if let (Some(al), Some(be), Some(ga), Some(gb)) = (&pa, &pb, &ga, &gb) {
        out.insert(&(al * gb) + be);
        out.insert(&(be * ga) + al);
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub pair: (ModuleLabel, ModuleLabel),
    pub rule: Option<Decomposition>,
    pub oracle: Option<Decomposition>,
    pub agree: bool,
    pub diagnostics: Diagnostics,
    /// Set when either side failed; the message is reported verbatim.
    pub error: Option<String>,
}

impl OracleReport {
    pub fn to_json(&self, ctx: &Context) -> Value {
        let mut v = json!({
            "pair": [print_label(&self.pair.0, ctx), print_label(&self.pair.1, ctx)],
            "rule": self.rule.as_ref().map_or(Value::Null, |d| d.to_json(ctx)),
            "oracle": self.oracle.as_ref().map_or(Value::Null, |d| d.to_json(ctx)),
            "agree": self.agree,
            "diagnostics": self.diagnostics.to_json(),
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

/// Runs the rules engine and the oracle on `A (x) B` and compares.
///
/// Failures inside either path (for example `EigenvalueOutsideCandidates`)
/// are captured in the report as a disagreement.
pub fn verify_pair(a: &ModuleLabel, b: &ModuleLabel, ctx: &Arc<Context>) -> Result<OracleReport> {
    a.validate(ctx)?;
    b.validate(ctx)?;
    let rule = tensor_decompose(a, b, ctx);
    let module = tensor_realize(&realize(a, ctx)?, &realize(b, ctx)?)?;
    let oracle = oracle_decompose_with_diagnostics(&module, &candidate_eigenvalues(a, b, ctx));
    let (rule, oracle, diagnostics, error) = match (rule, oracle) {
        (Ok(r), Ok((o, d))) => (Some(r), Some(o), d, None),
        (r, o) => {
            let mut msgs = Vec::new();
            if let Err(e) = &r {
                msgs.push(format!("rule: {e}"));
            }
            if let Err(e) = &o {
                msgs.push(format!("oracle: {e}"));
            }
            let (o, d) = match o {
                Ok((o, d)) => (Some(o), d),
                Err(_) => (None, Diagnostics { dim: module.dim(), components: Vec::new() }),
            };
            (r.ok(), o, d, Some(msgs.join("; ")))
        }
    };
    let agree = error.is_none() && rule == oracle;
    Ok(OracleReport { pair: (a.clone(), b.clone()), rule, oracle, agree, diagnostics, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::context_from_json;

    fn fin2() -> Arc<Context> {
        context_from_json(r#"{"group": [2], "a": [1], "chi": ["-1"]}"#).unwrap()
    }

    fn inf() -> Arc<Context> {
        context_from_json(r#"{"group": [0], "a": [1], "chi": ["1/2"]}"#).unwrap()
    }

    fn dec(ls: Vec<ModuleLabel>, ctx: &Context) -> Decomposition {
        Decomposition::from_labels(ls.into_iter().map(|l| (l, 1)), ctx).unwrap()
    }

    fn single(l: &ModuleLabel, ctx: &Arc<Context>) -> Decomposition {
        dec(vec![l.clone()], ctx)
    }

    #[test]
    fn indecomposables_decompose_as_themselves() {
        let ctx = fin2();
        let eps = ctx.trivial();
        let f = ctx.field().clone();
        for l in [
            ModuleLabel::nil(3, eps.clone()).unwrap(),
            ModuleLabel::nil(1, ctx.chi().clone()).unwrap(),
            ModuleLabel::non_nil(2, &eps, f.from_int(-1), &ctx).unwrap(),
            ModuleLabel::non_nil(3, &eps, f.from_int(5), &ctx).unwrap(),
        ] {
            let m = realize(&l, &ctx).unwrap();
            let d = oracle_decompose(&m, &label_candidates(&l)).unwrap();
            assert_eq!(d, single(&l, &ctx), "{}", print_label(&l, &ctx));
        }
    }

    #[test]
    fn nil_two_squared_in_fin2() {
        let ctx = fin2();
        let eps = ctx.trivial();
        let chi = ctx.chi().clone();
        let a = ModuleLabel::nil(2, eps.clone()).unwrap();
        let b = ModuleLabel::nil(2, chi.clone()).unwrap();
        let m = tensor_realize(&realize(&a, &ctx).unwrap(), &realize(&b, &ctx).unwrap()).unwrap();
        let d = oracle_decompose(&m, &[]).unwrap();
        let want = dec(vec![ModuleLabel::nil(2, chi.clone()).unwrap(), ModuleLabel::nil(2, eps).unwrap()], &ctx);
        assert_eq!(d, want);
    }

    #[test]
    fn degenerate_nonnil_product_is_nilpotent() {
        let ctx = fin2();
        let eps = ctx.trivial();
        let f = ctx.field().clone();
        let a = ModuleLabel::non_nil(1, &eps, f.one(), &ctx).unwrap();
        let b = ModuleLabel::non_nil(1, &eps, f.from_int(-1), &ctx).unwrap();
        let m = tensor_realize(&realize(&a, &ctx).unwrap(), &realize(&b, &ctx).unwrap()).unwrap();
        let (d, diag) = oracle_decompose_with_diagnostics(&m, &candidate_eigenvalues(&a, &b, &ctx)).unwrap();
        assert_eq!(diag.inv_dim(), 0);
        let want = dec(vec![ModuleLabel::nil(2, eps).unwrap(), ModuleLabel::nil(2, ctx.chi().clone()).unwrap()], &ctx);
        assert_eq!(d, want);
    }

    #[test]
    fn missing_candidate_is_reported() {
        let ctx = fin2();
        let l = ModuleLabel::non_nil(2, &ctx.trivial(), ctx.field().from_int(3), &ctx).unwrap();
        let m = realize(&l, &ctx).unwrap();
        let err = oracle_decompose(&m, &[ctx.field().one()]).unwrap_err();
        assert!(matches!(err, Error::EigenvalueOutsideCandidates { missing: 2, .. }));
    }

    #[test]
    fn verify_examples() {
        let ctx = fin2();
        let eps = ctx.trivial();
        let chi = ctx.chi().clone();
        let f = ctx.field().clone();
        let r = verify_pair(&ModuleLabel::nil(2, eps.clone()).unwrap(), &ModuleLabel::nil(2, chi).unwrap(), &ctx).unwrap();
        assert!(r.agree);
        let a = ModuleLabel::nil(3, eps.clone()).unwrap();
        let b = ModuleLabel::non_nil(1, &eps, f.from_int(2), &ctx).unwrap();
        let r = verify_pair(&a, &b, &ctx).unwrap();
        assert!(r.agree, "{}", r.to_json(&ctx));
        let want = dec(vec![
                ModuleLabel::non_nil(1, &eps, f.from_int(2), &ctx).unwrap(),
                ModuleLabel::non_nil(2, &eps, f.from_int(2), &ctx).unwrap(),
            ], &ctx);
        assert_eq!(r.oracle.unwrap(), want);
    }

    #[test]
    fn inf_clebsch_gordan_example() {
        let ctx = inf();
        let eps = ctx.trivial();
        let a = ModuleLabel::nil(3, eps.clone()).unwrap();
        let b = ModuleLabel::nil(4, eps.clone()).unwrap();
        let r = verify_pair(&a, &b, &ctx).unwrap();
        assert!(r.agree);
        let want = dec(vec![
                ModuleLabel::nil(6, eps.clone()).unwrap(),
                ModuleLabel::nil(4, ctx.chi_pow(1)).unwrap(),
                ModuleLabel::nil(2, ctx.chi_pow(2)).unwrap(),
            ], &ctx);
        assert_eq!(r.oracle.unwrap(), want);
    }

    #[test]
    fn candidates_for_nil_pair_is_zero_only() {
        let ctx = fin2();
        let l = ModuleLabel::nil(2, ctx.trivial()).unwrap();
        assert_eq!(candidate_eigenvalues(&l, &l, &ctx), vec![ctx.field().zero()]);
    }
}
