//! The SL2 comparison suite: pipeline output against the brute-force oracles.

use std::fmt;

use num_bigint::BigInt;

use crate::charring::Character;
use crate::error::Result;
use crate::oracle::{sl2_baby_verma_decomposition, sl2_simple_character};
use crate::pipeline::{
    build_table, check_tmc, composition_factors, composition_multiplicity, simple_characters,
    PipelineConfig,
};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::tiltingdata::generate_sl2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: String, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Runs the pipeline on generated SL2 tilting data and compares simple
/// characters, composition multiplicities (for `|mu| <= 3p`), the
/// decomposition identity and the tilting-module test against the oracles.
pub fn verify_sl2(p: u64) -> Result<Vec<Check>> {
    let rs = RootSystem::build(CartanType::A, 1)?;
    let cfg = PipelineConfig::new(rs, p)?;
    let pi = p as i64;
    let data = generate_sl2(p, 2 * pi - 2)?;
    let table = build_table(&cfg, &data)?;
    let simples = simple_characters(&table, &cfg)?;
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for l in 0..pi {
        let lambda = Weight::new(vec![l]);
        if simples.character(&lambda)? != sl2_simple_character(p, &lambda)? {
            bad.push(l);
        }
    }
    out.push(check(
        format!("p={p}: simple characters match oracle"),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("mismatch at {bad:?}") },
    ));

    let mut bad = Vec::new();
    for m in -3 * pi..=3 * pi {
        let mu = Weight::new(vec![m]);
        let oracle = sl2_baby_verma_decomposition(p, &mu)?;
        // Every composition factor lies in [mu - 2(p-1), mu].
        for x in (m - 2 * (pi - 1))..=m {
            let xi = Weight::new(vec![x]);
            let expect = oracle.get(&xi).cloned().unwrap_or_default();
            if composition_multiplicity(&table, &cfg, &mu, &xi) != expect {
                bad.push((m, x));
            }
        }
        let pipeline_total: BigInt = composition_factors(&table, &cfg, &mu).iter().map(|f| &f.1).sum();
        let oracle_total: BigInt = oracle.values().sum();
        if pipeline_total != oracle_total {
            bad.push((m, i64::MIN));
        }
    }
    out.push(check(
        format!("p={p}: composition multiplicities match oracle for |mu| <= {}", 3 * pi),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("mismatch at {bad:?}") },
    ));

    let mut bad = Vec::new();
    for l in 0..pi {
        let lambda = Weight::new(vec![l]);
        let mut rebuilt = Character::zero();
        for (xi, c) in composition_factors(&table, &cfg, &lambda) {
            rebuilt.add_scaled_translate(&simples.character(&xi)?, &Weight::zero(1), &c);
        }
        if rebuilt != cfg.cache().baby_verma(p, 1, &lambda)? {
            bad.push(l);
        }
    }
    out.push(check(
        format!("p={p}: baby Verma characters reassemble from simple characters"),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("mismatch at {bad:?}") },
    ));

    let mut bad = Vec::new();
    for l in 0..pi {
        if !check_tmc(&table, &cfg, &data, &Weight::new(vec![l]))? {
            bad.push(l);
        }
    }
    out.push(check(
        format!("p={p}: tilting characters restrict to projective covers"),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("fails at {bad:?}") },
    ));

    Ok(out)
}
