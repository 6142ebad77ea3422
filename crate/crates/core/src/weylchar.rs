//! Weyl characters, Steinberg characters and baby Verma characters.
//!
//! The production path for `chi(lambda)` is Freudenthal's recursion over the
//! dominant weights below `lambda`, followed by expansion along Weyl orbits.
//! `weyl_character_altsum` divides alternating orbit sums instead and is kept
//! as an independent cross-check for small ranks.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charring::Character;
use crate::error::{Error, Result};
use crate::rootsystem::{RootSystem, Weight};

/// Largest rank accepted by `weyl_character_altsum`.
pub const ALTSUM_RANK_LIMIT: usize = 3;

fn check_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    Ok(())
}

/// `p^r`, checked.
pub fn prime_power(p: u64, r: u32) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be >= 2, got {p}")));
    }
    i64::try_from(p)
        .ok()
        .and_then(|p| p.checked_pow(r))
        .ok_or_else(|| Error::InvalidParameter(format!("{p}^{r} overflows")))
}

/// Dominant weight multiplicities of `chi(lambda)` by Freudenthal's formula.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<HashMap<Weight, BigInt>> {
    check_dominant(rs, lambda)?;
    let rho = rs.rho();
    let lr = lambda + rho;
    let top = rs.scaled_inner(&lr, &lr);

    let mut mult: HashMap<Weight, BigInt> = HashMap::new();
    for mu in rs.dominant_weights_below(lambda) {
        if &mu == lambda {
            mult.insert(mu, BigInt::one());
            continue;
        }
        let mr = &mu + rho;
        let den = top - rs.scaled_inner(&mr, &mr);
        let mut num = BigInt::zero();
        for beta in rs.positive_roots() {
            let mut nu = &mu + beta;
            loop {
                let Some(m) = mult.get(&rs.dominant_conjugate(&nu)) else {
                    break;
                };
                num += m * rs.scaled_inner(&nu, beta);
                nu += beta;
            }
        }
        num *= 2;
        debug_assert!(den > 0);
        debug_assert!((&num % den).is_zero());
        mult.insert(mu, num / den);
    }
    Ok(mult)
}

/// `chi(lambda)`, the character of the Weyl module of highest weight `lambda`.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    let mult = dominant_multiplicities(rs, lambda)?;
    let mut out = Character::zero();
    for (mu, m) in mult {
        for nu in rs.weyl_orbit(&mu) {
            out.add_term(nu, m.clone());
        }
    }
    Ok(out)
}

/// Weyl's dimension formula: the product of `<lambda + rho, beta^vee> / <rho, beta^vee>`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigInt> {
    check_dominant(rs, lambda)?;
    let lr = lambda + rs.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in rs.positive_roots() {
        num *= rs.coroot_pairing(&lr, beta);
        den *= rs.coroot_pairing(rs.rho(), beta);
    }
    Ok(num / den)
}

/// `sum_w sign(w) e(w(v))` for regular dominant `v`.
fn alternating_orbit_sum(rs: &RootSystem, v: &Weight) -> Character {
    let mut signs: HashMap<Weight, i64> = HashMap::new();
    let mut stack = vec![(v.clone(), 1i64)];
    signs.insert(v.clone(), 1);
    while let Some((u, s)) = stack.pop() {
        for i in 0..rs.rank() {
            let t = rs.reflect(&u, i);
            if !signs.contains_key(&t) {
                signs.insert(t.clone(), -s);
                stack.push((t, -s));
            }
        }
    }
    Character::from_terms(signs)
}

/// `chi(lambda)` as the quotient `A(lambda + rho) / A(rho)` of alternating sums.
///
/// Division uses the translation-invariant total order of
/// `Character::max_weight`, in which `A(rho)` has leading term `e(rho)`.
pub fn weyl_character_altsum(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    if rs.rank() > ALTSUM_RANK_LIMIT {
        return Err(Error::RankGuard {
            rank: rs.rank(),
            limit: ALTSUM_RANK_LIMIT,
        });
    }
    check_dominant(rs, lambda)?;
    let rho = rs.rho();
    let divisor = alternating_orbit_sum(rs, rho);
    let mut rem = alternating_orbit_sum(rs, &(lambda + rho));
    let mut quotient = Character::zero();
    while let Some(m) = rem.max_weight(rs).cloned() {
        let c = rem.coeff(&m);
        let shift = &m - rho;
        rem.add_scaled_translate(&divisor, &shift, &-&c);
        quotient.add_term(shift, c);
    }
    Ok(quotient)
}

/// `chi((p^r - 1) rho)`, the character of the r-th Steinberg module.
pub fn steinberg_character(rs: &RootSystem, p: u64, r: u32) -> Result<Character> {
    let top = steinberg_weight(rs, p, r)?;
    weyl_character(rs, &top)
}

/// `(p^r - 1) rho`.
pub fn steinberg_weight(rs: &RootSystem, p: u64, r: u32) -> Result<Weight> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    Ok(Weight::constant(rs.rank(), prime_power(p, r)? - 1))
}

/// Character of the baby Verma module `Z_r(lambda)`: the Steinberg character
/// translated so that its highest weight is `lambda`.
pub fn baby_verma_character(rs: &RootSystem, p: u64, r: u32, lambda: &Weight) -> Result<Character> {
    rs.check_rank(lambda)?;
    let top = steinberg_weight(rs, p, r)?;
    Ok(steinberg_character(rs, p, r)?.translate(&(lambda - &top)))
}

/// Memoized Weyl and Steinberg characters for one root system.
///
/// Reads are concurrent; insertions take the write lock. Two threads racing on
/// the same key may both compute it, and the first insertion wins.
#[derive(Debug)]
pub struct WeylCharacterCache {
    rs: RootSystem,
    weyl: RwLock<HashMap<Weight, Arc<Character>>>,
    steinberg: RwLock<HashMap<(u64, u32), Arc<Character>>>,
}

impl WeylCharacterCache {
    pub fn new(rs: RootSystem) -> Self {
        WeylCharacterCache {
            rs,
            weyl: RwLock::new(HashMap::new()),
            steinberg: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weyl(&self, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(c) = self.weyl.read().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(weyl_character(&self.rs, lambda)?);
        let mut store = self.weyl.write().unwrap();
        Ok(store.entry(lambda.clone()).or_insert(c).clone())
    }

    pub fn steinberg(&self, p: u64, r: u32) -> Result<Arc<Character>> {
        if let Some(c) = self.steinberg.read().unwrap().get(&(p, r)) {
            return Ok(c.clone());
        }
        let top = steinberg_weight(&self.rs, p, r)?;
        let c = self.weyl(&top)?;
        let mut store = self.steinberg.write().unwrap();
        Ok(store.entry((p, r)).or_insert(c).clone())
    }

    pub fn baby_verma(&self, p: u64, r: u32, lambda: &Weight) -> Result<Character> {
        self.rs.check_rank(lambda)?;
        let top = steinberg_weight(&self.rs, p, r)?;
        Ok(self.steinberg(p, r)?.translate(&(lambda - &top)))
    }

    pub fn cached_weyl_len(&self) -> usize {
        self.weyl.read().unwrap().len()
    }
}
