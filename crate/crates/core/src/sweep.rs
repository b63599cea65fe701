//! Enumeration of label pairs for verification sweeps.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{Character, Context, Regime};
use crate::error::{Error, Result};
use crate::labels::ModuleLabel;
use crate::oracle::{verify_pair, OracleReport};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_nil_t: u64,
    pub max_nonnil_t: u64,
    pub beta_panel: Vec<Scalar>,
    /// Adds pairs whose `x^s` eigenvalue `alpha * lambda(a^s) + beta` vanishes.
    pub include_degenerate: bool,
    pub seed: u64,
    pub parallelism: usize,
    /// Number of characters drawn when the group has too many to list.
    pub character_panel: usize,
}

impl SweepConfig {
    pub fn new(max_nil_t: u64, max_nonnil_t: u64, beta_panel: Vec<Scalar>) -> Self {
        Self {
            max_nil_t,
            max_nonnil_t,
            beta_panel,
            include_degenerate: true,
            seed: 0,
            parallelism: 1,
            character_panel: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nil_t == 0 || self.max_nonnil_t == 0 || self.parallelism == 0 || self.character_panel == 0 {
            return Err(Error::Semantic("sweep bounds must be at least 1".into()));
        }
        if self.beta_panel.iter().any(Scalar::is_zero) {
            return Err(Error::ZeroBeta);
        }
        Ok(())
    }
}

/// Characters used for the sweep: every character when there are at most
/// `character_panel + 1` of them, otherwise `eps`, `chi` and seeded draws.
pub fn character_panel(ctx: &Context, cfg: &SweepConfig) -> Vec<Character> {
    if let Some(all) = ctx.all_characters() {
        if all.len() <= cfg.character_panel + 1 {
            return all;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in [ctx.trivial(), ctx.chi().clone()] {
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    let mut tries = 0;
    while out.len() < cfg.character_panel.max(2) && tries < 100 {
        let c = ctx.random_character(&mut rng);
        if seen.insert(c.clone()) {
            out.push(c);
        }
        tries += 1;
    }
    out
}

/// All ordered pairs within the configured bounds, in a fixed order.
pub fn enumerate_pairs(ctx: &Context, cfg: &SweepConfig) -> Result<Vec<(ModuleLabel, ModuleLabel)>> {
    cfg.validate()?;
    let panel = character_panel(ctx, cfg);
    let mut labels = Vec::new();
    for t in 1..=cfg.max_nil_t {
        for c in &panel {
            labels.push(ModuleLabel::nil(t, c.clone())?);
        }
    }
    let mut non_nil: BTreeSet<ModuleLabel> = BTreeSet::new();
    if ctx.regime() != Regime::Inf {
        for t in 1..=cfg.max_nonnil_t {
            for c in &panel {
                for b in &cfg.beta_panel {
                    non_nil.insert(ModuleLabel::non_nil(t, c, b.clone(), ctx)?);
                }
            }
        }
    }
    labels.extend(non_nil.iter().cloned());
    let mut pairs = Vec::new();
    for a in &labels {
        for b in &labels {
            pairs.push((a.clone(), b.clone()));
        }
    }
    if cfg.include_degenerate {
        let mut extra = BTreeSet::new();
        for a in &non_nil {
            let ModuleLabel::NonNil { beta: alpha, .. } = a else { continue };
            for c in &panel {
                let beta = -(alpha * &ctx.at_a_s(c)?);
                for t in 1..=cfg.max_nonnil_t {
                    let b = ModuleLabel::non_nil(t, c, beta.clone(), ctx)?;
                    if !non_nil.contains(&b) {
                        extra.insert((a.clone(), b));
                    }
                }
            }
        }
        pairs.extend(extra);
    }
    Ok(pairs)
}

/// Verifies every pair; reports come back in enumeration order.
pub fn run_sweep(ctx: &Arc<Context>, cfg: &SweepConfig) -> Result<Vec<OracleReport>> {
    let pairs = enumerate_pairs(ctx, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Semantic(format!("thread pool: {e}")))?;
    pool.install(|| pairs.par_iter().map(|(a, b)| verify_pair(a, b, ctx)).collect())
}
