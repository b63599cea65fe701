use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use hopfore::characters::{context_from_json, Character, Context};
use hopfore::green::RingElement;
use hopfore::labels::{dim_of, print_label, random_label, Decomposition, ModuleLabel};
use hopfore::oracle::{
    label_candidates, oracle_decompose, oracle_decompose_with_diagnostics, candidate_eigenvalues, verify_pair,
};
use hopfore::realization::{delta_power_check, embedding_map, realize, tensor_realize};
use hopfore::rules::{decompose_special_all, tensor_decompose};
use hopfore::scalar::{q_binom, q_int, FieldSpec, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ctx(json: &str) -> Arc<Context> {
    context_from_json(json).expect("test context")
}

fn inf() -> Arc<Context> {
    ctx(r#"{"group": [0], "a": [1], "chi": ["1/2"]}"#)
}

fn fin2() -> Arc<Context> {
    ctx(r#"{"group": [2], "a": [1], "chi": ["-1"]}"#)
}

fn fin3() -> Arc<Context> {
    ctx(r#"{"group": [3], "a": [1], "chi": ["z"]}"#)
}

/// `G = Z/s^2`, `chi(a)` a primitive `s`-th root of unity.
fn cyclic_square(s: u64) -> Arc<Context> {
    let chi = format!("z^{s}");
    ctx(&format!(r#"{{"group": [{}], "a": [1], "chi": ["{chi}"]}}"#, s * s))
}

/// The character sending the generator to `zeta^k` in the group's root field.
fn char_exp(c: &Context, k: i64) -> Character {
    c.character_from_entries(&[hopfore::characters::CharEntry::Exp(k)]).unwrap()
}

fn nil(t: u64, l: &Character) -> ModuleLabel {
    ModuleLabel::nil(t, l.clone()).unwrap()
}

fn pp(l: &ModuleLabel, c: &Context) -> String {
    print_label(l, c)
}

fn dec(items: Vec<(ModuleLabel, u64)>, c: &Context) -> Decomposition {
    Decomposition::from_labels(items, c).unwrap()
}

fn oracle_of(a: &ModuleLabel, b: &ModuleLabel, c: &Arc<Context>) -> Decomposition {
    let m = tensor_realize(&realize(a, c).unwrap(), &realize(b, c).unwrap()).unwrap();
    oracle_decompose(&m, &candidate_eigenvalues(a, b, c)).unwrap()
}

fn agree(a: &ModuleLabel, b: &ModuleLabel, c: &Arc<Context>) -> std::result::Result<(), String> {
    let r = verify_pair(a, b, c).map_err(|e| e.to_string())?;
    if r.agree {
        Ok(())
    } else {
        Err(r.to_json(c).to_string())
    }
}

fn a1_infinite_regime() -> Check {
    let c = inf();
    if c.q() != &c.field().from_int(2) {
        return Err(format!("q = {}", c.q()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    for s in 1..=8 {
        for t in 1..=8 {
            for _ in 0..3 {
                let (l, m) = (c.random_character(&mut rng), c.random_character(&mut rng));
                agree(&nil(s, &l), &nil(t, &m), &c)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn a2_finite_nil_nil() -> Check {
    let mut n = 0;
    let mut special = 0;
    for (c, max) in [(fin2(), 12u64), (fin3(), 9)] {
        let panel = [c.trivial(), c.chi().clone()];
        for nn in 1..=max {
            for t in 1..=max {
                for l in &panel {
                    for m in &panel {
                        let (a, b) = (nil(nn, l), nil(t, m));
                        agree(&a, &b, &c)?;
                        let rule = tensor_decompose(&a, &b, &c).map_err(|e| e.to_string())?;
                        for (case, d) in decompose_special_all(&a, &b, &c).map_err(|e| e.to_string())? {
                            if d != rule {
                                return Err(format!("{} disagrees on {} x {}", case.name(), pp(&a, &c), pp(&b, &c)));
                            }
                            special += 1;
                        }
                        if nn >= 2 && t >= 2 && rule.count() != nn.min(t) {
                            return Err(format!("{} summands for n={nn}, t={t}", rule.count()));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} pairs, {special} special-form checks"))
}

fn beta_panel(c: &Context) -> Vec<Scalar> {
    let f = c.field();
    vec![f.one(), f.from_int(-1), f.zeta()]
}

fn map_beta(d: &Decomposition, gamma: &Scalar, c: &Context) -> Decomposition {
    let mut out = Decomposition::new();
    for (l, m) in d.summands() {
        let l2 = match l {
            ModuleLabel::NonNil { t, sig, beta } => ModuleLabel::non_nil(*t, sig, beta * gamma, c).unwrap(),
            other => other.clone(),
        };
        out.push(l2, m, c).unwrap();
    }
    out
}

fn a3_mixed_products() -> Check {
    let mut n = 0;
    let mut witnesses = 0;
    for s in [2u64, 3] {
        let c = cyclic_square(s);
        let chars = [c.trivial(), char_exp(&c, 1), c.chi().clone()];
        for p in 1..=3 * s {
            for t in 1..=3 {
                for l in &chars {
                    for sg in &chars {
                        for b in beta_panel(&c) {
                            let a = nil(p, l);
                            let v = ModuleLabel::non_nil(t, sg, b.clone(), &c).unwrap();
                            agree(&a, &v, &c)?;
                            agree(&v, &a, &c)?;
                            let left = oracle_of(&a, &v, &c);
                            let right = oracle_of(&v, &a, &c);
                            let gamma = c.at_a_s(l).unwrap();
                            if right != map_beta(&left, &gamma, &c) {
                                return Err(format!("orders not related by beta -> lambda(a^s) beta for {} and {}", pp(&a, &c), pp(&v, &c)));
                            }
                            if &b * &gamma != b {
                                if left == right {
                                    return Err(format!("expected distinct orders for {} and {}", pp(&a, &c), pp(&v, &c)));
                                }
                                witnesses += 1;
                            }
                            n += 2;
                        }
                    }
                }
            }
        }
    }
    if witnesses == 0 {
        return Err("no non-commutativity witness".into());
    }
    Ok(format!("{n} ordered pairs, {witnesses} non-commuting"))
}

fn a4_nonnil_products() -> Check {
    let mut n = 0;
    let mut degenerate = 0;
    for s in [2u64, 3] {
        let c = cyclic_square(s);
        let chars = [c.trivial(), char_exp(&c, 1)];
        for p in 1..=3 {
            for t in 1..=3 {
                for sg in &chars {
                    for l in &chars {
                        for al in beta_panel(&c) {
                            let mut betas = beta_panel(&c);
                            betas.push(-(&al * &c.at_a_s(l).unwrap()));
                            for be in betas {
                                let a = ModuleLabel::non_nil(p, sg, al.clone(), &c).unwrap();
                                let b = ModuleLabel::non_nil(t, l, be.clone(), &c).unwrap();
                                agree(&a, &b, &c)?;
                                n += 1;
                                let u = &(&al * &c.at_a_s(l).unwrap()) + &be;
                                if !u.is_zero() {
                                    continue;
                                }
                                degenerate += 1;
                                let m = tensor_realize(&realize(&a, &c).unwrap(), &realize(&b, &c).unwrap()).unwrap();
                                let (d, diag) = oracle_decompose_with_diagnostics(&m, &candidate_eigenvalues(&a, &b, &c))
                                    .map_err(|e| e.to_string())?;
                                if diag.inv_dim() != 0 {
                                    return Err("degenerate product has an invertible part".into());
                                }
                                let base = sg.mul(l);
                                for (lab, mult) in d.summands() {
                                    let ModuleLabel::Nil { t: len, lam } = lab else {
                                        return Err("non-nilpotent summand in degenerate product".into());
                                    };
                                    if len % s != 0 {
                                        return Err(format!("length {len} not a multiple of s"));
                                    }
                                    for i in 0..s as i64 {
                                        if d.multiplicity(&nil(*len, &c.twist(i, lam))) != mult {
                                            return Err("twists by chi^i do not appear uniformly".into());
                                        }
                                    }
                                    if !(0..s as i64).any(|i| &c.twist(i, &base) == lam) {
                                        return Err("summand weight outside chi^i sigma lambda".into());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} pairs, {degenerate} degenerate"))
}

fn expect_eq(got: &Decomposition, want: &Decomposition, what: &str, c: &Context) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {}, want {}", got.to_text(c), want.to_text(c)))
    }
}

fn a5_specific_instances() -> Check {
    let mut n = 0;
    // NonNil(t) (x) Nil(2s, eps) = s NonNil(t-1) + s NonNil(t+1), s = 2.
    for c in [fin2(), cyclic_square(2)] {
        let s = c.s().unwrap();
        for t in 1..=3u64 {
            for b in beta_panel(&c) {
                for sg in [c.trivial(), c.chi().clone()] {
                    let v = ModuleLabel::non_nil(t, &sg, b.clone(), &c).unwrap();
                    let e = nil(2 * s, &c.trivial());
                    let mut items = vec![(ModuleLabel::non_nil(t + 1, &sg, b.clone(), &c).unwrap(), s)];
                    if t > 1 {
                        items.push((ModuleLabel::non_nil(t - 1, &sg, b.clone(), &c).unwrap(), s));
                    }
                    let want = dec(items, &c);
                    expect_eq(&oracle_of(&v, &e, &c), &want, "oracle", &c)?;
                    expect_eq(&tensor_decompose(&v, &e, &c).unwrap(), &want, "rules", &c)?;
                    if want.multiplicity(&ModuleLabel::non_nil(t + 1, &sg, b.clone(), &c).unwrap()) != s {
                        return Err("multiplicity differs from s".into());
                    }
                    n += 1;
                }
            }
        }
    }
    for c in [fin2(), fin3()] {
        let s = c.s().unwrap();
        let chars = [c.trivial(), c.chi().clone()];
        for t in 1..=4 * s {
            for l in &chars {
                for sg in &chars {
                    let ls = l.mul(sg);
                    // Length-two factor, both orders.
                    let want = if t % s != 0 {
                        let mut items = vec![(nil(t + 1, &ls), 1)];
                        if t > 1 {
                            items.push((nil(t - 1, &c.twist(1, &ls)), 1));
                        }
                        dec(items, &c)
                    } else {
                        dec(vec![(nil(t, &ls), 1), (nil(t, &c.twist(1, &ls)), 1)], &c)
                    };
                    for (a, b) in [(nil(2, l), nil(t, sg)), (nil(t, sg), nil(2, l))] {
                        expect_eq(&oracle_of(&a, &b, &c), &want, "length two, oracle", &c)?;
                        expect_eq(&tensor_decompose(&a, &b, &c).unwrap(), &want, "length two, rules", &c)?;
                        n += 1;
                    }
                    // Length s+1 against a multiple of s, both orders.
                    if t % s == 0 {
                        let mut items = vec![(nil(t + s, &ls), 1)];
                        if t > s {
                            items.push((nil(t - s, &ls), 1));
                        }
                        for i in 1..s as i64 {
                            items.push((nil(t, &c.twist(i, &ls)), 1));
                        }
                        let want = dec(items, &c);
                        for (a, b) in [(nil(s + 1, l), nil(t, sg)), (nil(t, sg), nil(s + 1, l))] {
                            expect_eq(&oracle_of(&a, &b, &c), &want, "length s+1, oracle", &c)?;
                            expect_eq(&tensor_decompose(&a, &b, &c).unwrap(), &want, "length s+1, rules", &c)?;
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} instances"))
}

fn a6_structural() -> Check {
    let contexts = [inf(), fin2(), fin3(), cyclic_square(2), cyclic_square(3)];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // Dimension conservation.
    for i in 0..1000 {
        let c = &contexts[i % contexts.len()];
        let betas = beta_panel(c);
        let a = random_label(c, &mut rng, 8, &betas);
        let b = random_label(c, &mut rng, 8, &betas);
        let d = tensor_decompose(&a, &b, c).map_err(|e| e.to_string())?;
        let want = dim_of(&a, c).unwrap() * dim_of(&b, c).unwrap();
        let m = tensor_realize(&realize(&a, c).unwrap(), &realize(&b, c).unwrap()).unwrap();
        if d.total_dim() != want || m.dim() as u64 != want {
            return Err(format!("dimension of {} x {}", pp(&a, c), pp(&b, c)));
        }
    }
    // Green ring associativity.
    for c in &contexts[..3] {
        let betas = beta_panel(c);
        for _ in 0..100 {
            let mut el = || {
                let x = RingElement::from_label(random_label(c, &mut rng, 5, &betas), c);
                let y = RingElement::from_label(random_label(c, &mut rng, 5, &betas), c);
                x.sub(&y.scale(2)).unwrap()
            };
            let (x, y, z) = (el(), el(), el());
            let left = x.mul(&y).unwrap().mul(&z).unwrap();
            let right = x.mul(&y.mul(&z).unwrap()).unwrap();
            if left != right {
                return Err(format!("associativity fails for {}, {}, {}", x.to_text(), y.to_text(), z.to_text()));
            }
        }
    }
    // Coproduct of x^m.
    for i in 0..10 {
        let c = &contexts[i % contexts.len()];
        let betas = beta_panel(c);
        let l = realize(&random_label(c, &mut rng, 4, &betas), c).unwrap();
        let r = realize(&random_label(c, &mut rng, 4, &betas), c).unwrap();
        for m in 0..=6 {
            if !delta_power_check(m, &l, &r).map_err(|e| e.to_string())? {
                return Err(format!("x^{m} expansion fails"));
            }
        }
    }
    // q-integer identity.
    let f = FieldSpec::new(12);
    for _ in 0..200 {
        let q = if rng.gen_bool(0.5) {
            f.from_rational(Rational::new(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=7)))
        } else {
            f.zeta().pow(rng.gen_range(0..12)).scale(&Rational::new(rng.gen_range(1..=5), rng.gen_range(1..=5)))
        };
        let l = rng.gen_range(2..=12i64);
        let m = rng.gen_range(2..=12i64);
        let i = rng.gen_range(0..=l - 2);
        let j = rng.gen_range(0..=m - 2);
        let qi = |n: i64| q_int(n as u64, &q);
        let lhs = &(&q.pow(-j - 1) * &qi(l - i - 1)) - &(&q.pow(1 - m) * &qi(m - j - 1));
        let rhs = &(&q.pow(-j) * &qi(l - i - 2)) - &(&q.pow(1 - m) * &qi(m - j - 2));
        if lhs != rhs {
            return Err(format!("q-integer identity fails at q={q}, l={l}, m={m}, i={i}, j={j}"));
        }
    }
    // Embedding into a tensor of strings.
    let c = &contexts[0];
    for s in 2..=6 {
        for t in 2..=6 {
            let (l, m) = (c.random_character(&mut rng), c.random_character(&mut rng));
            let map = embedding_map(s, t, &l, &m, c).map_err(|e| e.to_string())?;
            if !map.is_injective() || !map.intertwines().map_err(|e| e.to_string())? {
                return Err(format!("embedding fails for s={s}, t={t}"));
            }
        }
    }
    // Gaussian binomials at primitive roots.
    for s in 2..=8u64 {
        let f = FieldSpec::new(s);
        let z = f.root_of_unity(s).map_err(|e| e.to_string())?;
        for k in (1..s as i64).filter(|k| num_integer::gcd(*k, s as i64) == 1) {
            let q = z.pow(k);
            for i in 1..s {
                if !q_binom(s, i, &q).unwrap().is_zero() {
                    return Err(format!("q_binom({s},{i}) nonzero"));
                }
            }
        }
    }
    Ok("all structural suites".into())
}

fn a7_self_consistency() -> Check {
    let mut n = 0;
    for c in [inf(), fin2(), fin3(), cyclic_square(2), cyclic_square(3)] {
        let mut chars = vec![c.trivial(), c.chi().clone()];
        if let Some(all) = c.all_characters() {
            chars = all;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            chars.push(c.random_character(&mut rng));
        }
        let mut labels = Vec::new();
        for l in &chars {
            for t in 1..=20 {
                labels.push(nil(t, l));
            }
            if let Ok(s) = c.s() {
                for t in 1..=20 / s {
                    for b in beta_panel(&c) {
                        labels.push(ModuleLabel::non_nil(t, l, b, &c).unwrap());
                    }
                }
            }
        }
        labels.sort();
        labels.dedup();
        for l in &labels {
            let d = oracle_decompose(&realize(l, &c).unwrap(), &label_candidates(l)).map_err(|e| e.to_string())?;
            if d != dec(vec![(l.clone(), 1)], &c) {
                return Err(format!("{} decomposes as {}", pp(l, &c), d.to_text(&c)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} labels"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check); 7] = [
        ("A1", "infinite regime Clebsch-Gordan", a1_infinite_regime),
        ("A2", "finite regime Nil x Nil", a2_finite_nil_nil),
        ("A3", "mixed products, both orders", a3_mixed_products),
        ("A4", "NonNil x NonNil incl. degenerate", a4_nonnil_products),
        ("A5", "specific instances", a5_specific_instances),
        ("A6", "structural suites", a6_structural),
        ("A7", "oracle self-consistency", a7_self_consistency),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("{id} PASS {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
