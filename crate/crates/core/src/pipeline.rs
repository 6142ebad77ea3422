//! From tilting characters to simple `G_1T`-characters.
//!
//! The steps:
//!
//! 1. Pick the stability exponent `N` (`compute_n`).
//! 2. For each restricted `lambda`, split the character of the tilting module
//!    with highest weight `stable_tilting_weight(lambda)` into baby Verma
//!    characters `ch Z_{N+1}(mu)` (`extract_b`).
//! 3. Shift by `p (p^N - 1) rho` to get the baby Verma multiplicities
//!    `a(mu, lambda)` of the `G_1T` projective cover `Q_1(lambda)`, which by
//!    reciprocity are the composition multiplicities `[Z_1(mu) : L_1(lambda)]`.
//! 4. Recover `ch L_1(lambda)` weight space by weight space, by induction on
//!    the height of `lambda - nu` (`simple_characters`).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charring::{Character, Coeff, TermRecord};
use crate::error::{Error, Result};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::tiltingdata::TiltingDataset;
use crate::weylchar::{prime_power, WeylCharacterCache};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The least `N >= 0` with `p^N + ... + p + 1 >= h - 1`.
pub fn compute_n(rs: &RootSystem, p: u64) -> u32 {
    compute_n_for_coxeter(rs.coxeter_number(), p)
}

pub fn compute_n_for_coxeter(h: u64, p: u64) -> u32 {
    assert!(p >= 2, "p must be >= 2");
    let target = h.saturating_sub(1);
    let mut n = 0;
    let mut sum: u64 = 1;
    let mut power: u64 = 1;
    while sum < target {
        n += 1;
        power = power.saturating_mul(p);
        sum = sum.saturating_add(power);
    }
    n
}

/// Root system, characteristic and stability exponent.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    p: u64,
    big_n: u32,
    cache: Arc<WeylCharacterCache>,
}

impl PipelineConfig {
    /// Uses the least admissible `N`.
    pub fn new(rs: RootSystem, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = compute_n(&rs, p);
        Self::with_n(rs, p, n)
    }

    /// Uses a caller-chosen `N`, which must not be below `compute_n`.
    pub fn with_n(rs: RootSystem, p: u64, big_n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let minimum = compute_n(&rs, p);
        if big_n < minimum {
            return Err(Error::BoundTooSmall {
                requested: big_n,
                minimum,
            });
        }
        prime_power(p, big_n + 1)?;
        Ok(PipelineConfig {
            p,
            big_n,
            cache: Arc::new(WeylCharacterCache::new(rs)),
        })
    }

    pub fn rs(&self) -> &RootSystem {
        self.cache.root_system()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The stability exponent `N`.
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    /// `n = N + 1`, the Frobenius kernel level of the extraction.
    pub fn n(&self) -> u32 {
        self.big_n + 1
    }

    pub fn cache(&self) -> &WeylCharacterCache {
        &self.cache
    }

    /// `p (p^N - 1) rho`.
    pub fn stable_shift(&self) -> Weight {
        let p = self.p as i64;
        Weight::constant(self.rs().rank(), p * (p.pow(self.big_n) - 1))
    }

    /// All p-restricted weights, in canonical order.
    pub fn restricted_weights(&self) -> Vec<Weight> {
        let rank = self.rs().rank();
        let p = self.p as i64;
        let mut out = vec![Weight::zero(rank)];
        for i in 0..rank {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..p).map(move |c| {
                        let mut v = w.clone().into_coords();
                        v[i] = c;
                        Weight::new(v)
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| self.rs().canonical_cmp(a, b));
        out
    }

    fn check_restricted(&self, lambda: &Weight) -> Result<()> {
        self.rs().check_rank(lambda)?;
        if !lambda.is_restricted(self.p) {
            return Err(Error::NotRestricted {
                weight: lambda.clone(),
                p: self.p,
            });
        }
        Ok(())
    }
}

/// `2(p-1) rho + w0 lambda`, the highest weight of the tilting module whose
/// restriction to `G_1T` would be `Q_1(lambda)` if `N = 0` were stable.
pub fn tmc_tilting_weight(cfg: &PipelineConfig, lambda: &Weight) -> Result<Weight> {
    cfg.check_restricted(lambda)?;
    let rs = cfg.rs();
    let two_p_rho = Weight::constant(rs.rank(), 2 * (cfg.p as i64 - 1));
    Ok(&two_p_rho + &rs.apply_w0(lambda))
}

/// `(2(p-1) rho + w0 lambda) + p (p^N - 1) rho`.
pub fn stable_tilting_weight(cfg: &PipelineConfig, lambda: &Weight) -> Result<Weight> {
    Ok(&tmc_tilting_weight(cfg, lambda)? + &cfg.stable_shift())
}

/// The coefficients `b_mu > 0` with `ch = sum b_mu ch Z_r(mu)`.
///
/// Greedy at the top: every `ch Z_r(mu)` has unique maximal term `e(mu)` with
/// coefficient 1. Every baby Verma character has nonnegative coefficients, so
/// in a valid decomposition each `mu` is already a support weight of `ch`;
/// that bounds the number of steps.
pub fn extract_baby_verma_multiplicities(
    cache: &WeylCharacterCache,
    p: u64,
    r: u32,
    ch: &Character,
) -> Result<BTreeMap<Weight, BigInt>> {
    let rs = cache.root_system();
    let block = BigInt::from(prime_power(p, r)?).pow(rs.positive_roots().len() as u32);
    let mass = ch.total_mass();
    if !mass.is_multiple_of(&block) {
        return Err(Error::NotBabyVermaCombination(format!(
            "total mass {mass} is not divisible by {block}"
        )));
    }
    let steinberg = cache.steinberg(p, r)?;
    let top = Weight::constant(rs.rank(), prime_power(p, r)? - 1);

    let mut rem = ch.clone();
    let mut out = BTreeMap::new();
    while let Some(m) = rem.max_weight(rs).cloned() {
        let c = rem.coeff(&m);
        if c.is_negative() {
            return Err(Error::NotBabyVermaCombination(format!(
                "coefficient {c} at {m} after peeling off higher baby Vermas"
            )));
        }
        if !ch.contains(&m) {
            return Err(Error::NotBabyVermaCombination(format!(
                "remainder weight {m} is not in the input support"
            )));
        }
        rem.add_scaled_translate(&steinberg, &(&m - &top), &-&c);
        out.insert(m, c);
    }
    Ok(out)
}

/// `b` for one tilting character at level `n = N + 1`.
pub fn extract_b(cfg: &PipelineConfig, tilting_char: &Character) -> Result<BTreeMap<Weight, BigInt>> {
    extract_baby_verma_multiplicities(cfg.cache(), cfg.p, cfg.n(), tilting_char)
}

/// The multiplicities `b(mu, lambda)` and `a(mu, lambda)`, keyed by restricted `lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionTable {
    b: BTreeMap<Weight, BTreeMap<Weight, BigInt>>,
    a: BTreeMap<Weight, BTreeMap<Weight, BigInt>>,
}

impl DecompositionTable {
    pub fn b(&self, mu: &Weight, lambda: &Weight) -> BigInt {
        self.b
            .get(lambda)
            .and_then(|col| col.get(mu))
            .cloned()
            .unwrap_or_default()
    }

    /// `a(mu, lambda) = [Z_1(mu) : L_1(lambda)]` for restricted `lambda`.
    pub fn a(&self, mu: &Weight, lambda: &Weight) -> BigInt {
        self.a
            .get(lambda)
            .and_then(|col| col.get(mu))
            .cloned()
            .unwrap_or_default()
    }

    pub fn b_column(&self, lambda: &Weight) -> Option<&BTreeMap<Weight, BigInt>> {
        self.b.get(lambda)
    }

    pub fn a_column(&self, lambda: &Weight) -> Option<&BTreeMap<Weight, BigInt>> {
        self.a.get(lambda)
    }

    pub fn lambdas(&self) -> impl Iterator<Item = &Weight> {
        self.a.keys()
    }

    pub fn a_entries(&self) -> impl Iterator<Item = (&Weight, &Weight, &BigInt)> {
        self.a
            .iter()
            .flat_map(|(l, col)| col.iter().map(move |(m, c)| (m, l, c)))
    }

    fn require(&self, lambda: &Weight) -> Result<&BTreeMap<Weight, BigInt>> {
        self.a
            .get(lambda)
            .ok_or_else(|| Error::IncompleteTable(lambda.clone()))
    }

    pub fn to_json(&self, cfg: &PipelineConfig) -> TableJson {
        let rs = cfg.rs();
        let rows = |m: &BTreeMap<Weight, BTreeMap<Weight, BigInt>>| {
            let mut out = Vec::new();
            for lambda in cfg.restricted_weights() {
                if let Some(col) = m.get(&lambda) {
                    let mut mus: Vec<_> = col.iter().collect();
                    mus.sort_by(|x, y| rs.canonical_cmp(x.0, y.0));
                    out.extend(mus.into_iter().map(|(mu, c)| TableEntry {
                        mu: mu.clone(),
                        lambda: lambda.clone(),
                        value: Coeff(c.clone()),
                    }));
                }
            }
            out
        };
        TableJson {
            meta: Meta::of(cfg),
            b: rows(&self.b),
            a: rows(&self.a),
        }
    }
}

/// Metadata wrapped around every table on output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(rename = "type")]
    pub type_letter: CartanType,
    pub rank: usize,
    pub p: u64,
    #[serde(rename = "N")]
    pub big_n: u32,
}

impl Meta {
    pub fn of(cfg: &PipelineConfig) -> Self {
        Meta {
            type_letter: cfg.rs().type_letter(),
            rank: cfg.rs().rank(),
            p: cfg.p,
            big_n: cfg.big_n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub mu: Weight,
    pub lambda: Weight,
    pub value: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(flatten)]
    pub meta: Meta,
    pub b: Vec<TableEntry>,
    pub a: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub highest: Weight,
    pub character: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleTableJson {
    #[serde(flatten)]
    pub meta: Meta,
    pub simple: Vec<CharacterEntry>,
}

fn check_dataset_meta(cfg: &PipelineConfig, dataset: &TiltingDataset) -> Result<()> {
    let rs = cfg.rs();
    if dataset.type_letter() != rs.type_letter() || dataset.rank() != rs.rank() || dataset.p() != cfg.p {
        return Err(Error::MetadataMismatch(format!(
            "dataset is for {}{} p={}, pipeline is for {} p={}",
            dataset.type_letter(),
            dataset.rank(),
            dataset.p(),
            rs,
            cfg.p
        )));
    }
    Ok(())
}

/// Runs `extract_b` on the stable tilting character of every restricted weight.
pub fn build_table(cfg: &PipelineConfig, dataset: &TiltingDataset) -> Result<DecompositionTable> {
    check_dataset_meta(cfg, dataset)?;
    let shift = cfg.stable_shift();
    let mut table = DecompositionTable::default();
    for lambda in cfg.restricted_weights() {
        let key = stable_tilting_weight(cfg, &lambda)?;
        let tilting = dataset
            .get(&key)
            .ok_or_else(|| Error::MissingTilting(key.clone()))?;
        let b = extract_b(cfg, tilting).map_err(|e| match e {
            Error::NotBabyVermaCombination(msg) => {
                Error::NotBabyVermaCombination(format!("T({key}): {msg}"))
            }
            other => other,
        })?;
        let a: BTreeMap<Weight, BigInt> = b.iter().map(|(mu, c)| (mu - &shift, c.clone())).collect();
        if a.get(&lambda).map_or(true, |c| !c.is_one()) {
            return Err(Error::Inconsistent(format!(
                "a({lambda}, {lambda}) = {} from T({key}), expected 1",
                a.get(&lambda).cloned().unwrap_or_default()
            )));
        }
        table.b.insert(lambda.clone(), b);
        table.a.insert(lambda, a);
    }
    Ok(table)
}

/// `[Z_1(mu) : L_1(xi)] = a(mu - p xi1, xi0)` where `xi = xi0 + p xi1`.
pub fn composition_multiplicity(
    table: &DecompositionTable,
    cfg: &PipelineConfig,
    mu: &Weight,
    xi: &Weight,
) -> BigInt {
    let p = cfg.p as i64;
    let (low, high) = xi.split_restricted(p);
    table.a(&(mu - &high.scale(p)), &low)
}

/// All composition factors of `Z_1(lambda)` as `(xi, multiplicity)`.
pub fn composition_factors(
    table: &DecompositionTable,
    cfg: &PipelineConfig,
    lambda: &Weight,
) -> Vec<(Weight, BigInt)> {
    let p = cfg.p as i64;
    let mut out = Vec::new();
    for (kappa, low, c) in table.a_entries() {
        // Need lambda - p xi1 = kappa, i.e. xi = low + lambda - kappa.
        let diff = lambda - kappa;
        if diff.coords().iter().all(|x| x % p == 0) {
            out.push((&diff + low, c.clone()));
        }
    }
    out.sort_by(|x, y| cfg.rs().canonical_cmp(&x.0, &y.0));
    out
}

/// Characters `ch L_1(lambda)` for restricted `lambda`; other weights follow
/// from `ch L_1(lambda + p mu) = ch L_1(lambda) e(p mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCharacterTable {
    p: u64,
    store: BTreeMap<Weight, Character>,
}

impl SimpleCharacterTable {
    /// `ch L_1(lambda)` for any weight.
    pub fn character(&self, lambda: &Weight) -> Result<Character> {
        let p = self.p as i64;
        let (low, high) = lambda.split_restricted(p);
        let base = self
            .store
            .get(&low)
            .ok_or_else(|| Error::IncompleteTable(low.clone()))?;
        Ok(base.translate(&high.scale(p)))
    }

    pub fn restricted(&self) -> impl Iterator<Item = (&Weight, &Character)> {
        self.store.iter()
    }

    pub fn to_json(&self, cfg: &PipelineConfig) -> SimpleTableJson {
        let rs = cfg.rs();
        let mut keys: Vec<&Weight> = self.store.keys().collect();
        keys.sort_by(|a, b| rs.canonical_cmp(a, b));
        SimpleTableJson {
            meta: Meta::of(cfg),
            simple: keys
                .into_iter()
                .map(|k| CharacterEntry {
                    highest: k.clone(),
                    character: self.store[k].to_records(rs),
                })
                .collect(),
        }
    }
}

/// Recovers `ch L_1(lambda)` for every restricted `lambda` from the composition
/// multiplicities, using
///
/// `dim L_1(lambda)_nu = dim Z_1(lambda)_nu - sum_{mu < lambda} [Z_1(lambda) : L_1(mu)] dim L_1(mu)_nu`.
///
/// The right side only involves `L_1(mu)_nu` with `ht(mu - nu) < ht(lambda - nu)`,
/// so all restricted weights are advanced together one height level at a time.
/// Only weights of `Z_1(lambda)` can carry weight of `L_1(lambda)`.
pub fn simple_characters(table: &DecompositionTable, cfg: &PipelineConfig) -> Result<SimpleCharacterTable> {
    let rs = cfg.rs();
    let restricted = cfg.restricted_weights();
    for lambda in &restricted {
        table.require(lambda)?;
    }
    let den = rs.scale_denominator();
    let p = cfg.p as i64;

    struct Work {
        baby_verma: Character,
        /// Composition factors `(restricted part, p-shift, multiplicity)`, excluding the top.
        lower: Vec<(Weight, Weight, BigInt)>,
        /// Weights of `Z_1(lambda)` grouped by `ht(lambda - nu)`.
        levels: Vec<Vec<Weight>>,
    }

    let mut work: Vec<Work> = Vec::with_capacity(restricted.len());
    for lambda in &restricted {
        let baby_verma = cfg.cache().baby_verma(cfg.p, 1, lambda)?;
        let top_height = rs.scaled_height(lambda);
        let mut levels: Vec<Vec<Weight>> = Vec::new();
        for nu in baby_verma.support() {
            let d = ((top_height - rs.scaled_height(nu)) / den) as usize;
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d].push(nu.clone());
        }
        let mut lower = Vec::new();
        for (xi, c) in composition_factors(table, cfg, lambda) {
            if &xi == lambda {
                if !c.is_one() {
                    return Err(Error::Inconsistent(format!(
                        "[Z_1({lambda}) : L_1({lambda})] = {c}, expected 1"
                    )));
                }
                continue;
            }
            let below = lambda - &xi;
            if !rs.in_positive_root_cone(&below) {
                return Err(Error::Inconsistent(format!(
                    "composition factor L_1({xi}) of Z_1({lambda}) is not below it"
                )));
            }
            let (low, high) = xi.split_restricted(p);
            lower.push((low, high.scale(p), c));
        }
        work.push(Work {
            baby_verma,
            lower,
            levels,
        });
    }

    let index: HashMap<&Weight, usize> = restricted.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut dims: Vec<HashMap<Weight, BigInt>> = vec![HashMap::new(); restricted.len()];
    let depth = work.iter().map(|w| w.levels.len()).max().unwrap_or(0);
    for d in 0..depth {
        for (i, lambda) in restricted.iter().enumerate() {
            let Some(level) = work[i].levels.get(d) else {
                continue;
            };
            let mut found = Vec::new();
            for nu in level {
                let mut dim = work[i].baby_verma.coeff(nu);
                if d > 0 {
                    for (low, shift, c) in &work[i].lower {
                        let j = index[low];
                        if let Some(x) = dims[j].get(&(nu - shift)) {
                            dim -= c * x;
                        }
                    }
                }
                if dim.is_negative() {
                    return Err(Error::Inconsistent(format!(
                        "negative weight multiplicity {dim} of {nu} in L_1({lambda})"
                    )));
                }
                if !dim.is_zero() {
                    found.push((nu.clone(), dim));
                }
            }
            dims[i].extend(found);
        }
    }

    let store = restricted
        .into_iter()
        .zip(dims)
        .map(|(lambda, d)| (lambda, Character::from_terms(d)))
        .collect();
    Ok(SimpleCharacterTable { p: cfg.p, store })
}

/// `ch L(lambda)` for dominant `lambda`, by Steinberg's tensor product theorem
/// over the base-p digits of `lambda`.
pub fn simple_g_character(
    simple_table: &SimpleCharacterTable,
    cfg: &PipelineConfig,
    lambda: &Weight,
) -> Result<Character> {
    let rs = cfg.rs();
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let p = cfg.p as i64;
    let mut rest = lambda.clone();
    let mut out = Character::monomial(Weight::zero(rs.rank()));
    let mut r = 0;
    while !rest.is_zero() {
        let (digit, high) = rest.split_restricted(p);
        let factor = simple_table.character(&digit)?.frobenius_twist(cfg.p, r);
        out = out.multiply(&factor);
        rest = high;
        r += 1;
    }
    Ok(out)
}

/// `ch Q_1(lambda) = sum_mu a(mu, lambda) ch Z_1(mu)`.
pub fn pim_character(table: &DecompositionTable, cfg: &PipelineConfig, lambda: &Weight) -> Result<Character> {
    cfg.check_restricted(lambda)?;
    let col = table.require(lambda)?;
    let steinberg = cfg.cache().steinberg(cfg.p, 1)?;
    let top = Weight::constant(cfg.rs().rank(), cfg.p as i64 - 1);
    let mut out = Character::zero();
    for (mu, c) in col {
        out.add_scaled_translate(&steinberg, &(mu - &top), c);
    }
    Ok(out)
}

/// Does `ch T(2(p-1) rho + w0 lambda)` equal `ch Q_1(lambda)`?
pub fn check_tmc(
    table: &DecompositionTable,
    cfg: &PipelineConfig,
    dataset: &TiltingDataset,
    lambda: &Weight,
) -> Result<bool> {
    check_dataset_meta(cfg, dataset)?;
    let key = tmc_tilting_weight(cfg, lambda)?;
    let tilting = dataset
        .get(&key)
        .ok_or_else(|| Error::MissingTilting(key.clone()))?;
    Ok(*tilting == pim_character(table, cfg, lambda)?)
}

/// `dim = sum b(mu, lambda) * p^{(N+1)|Phi+|}`, compared against the tilting mass.
pub fn mass_rule_holds(cfg: &PipelineConfig, b: &BTreeMap<Weight, BigInt>, tilting: &Character) -> bool {
    let Ok(q) = prime_power(cfg.p, cfg.n()) else {
        return false;
    };
    let block = BigInt::from(q).pow(cfg.rs().positive_roots().len() as u32);
    let total: BigInt = b.values().sum();
    total * block == tilting.total_mass()
}

/// Integer height of a root-lattice element, for reporting.
pub fn integer_height(rs: &RootSystem, w: &Weight) -> Option<i64> {
    let h = rs.height(w);
    h.is_integer().then(|| h.to_integer()).and_then(|x| x.to_i64())
}
