//! Brute-force ground truth for small cases.
//!
//! Nothing here calls into `pipeline`. The SL2 oracles rest on the classical
//! facts that restricted simple SL2-modules have Weyl characters and that
//! simple modules factor over base-p digits of the highest weight.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::charring::Character;
use crate::error::{Error, Result};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::weylchar::{baby_verma_character, weyl_character};

/// What an oracle computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleValue {
    Character(Character),
    Multiplicities(BTreeMap<Weight, BigInt>),
}

/// An oracle value together with a tag naming how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub computed: OracleValue,
    pub method: String,
}

impl OracleResult {
    pub fn new(computed: OracleValue, method: impl Into<String>) -> Self {
        let method = method.into();
        assert!(!method.is_empty(), "oracle method tag must be nonempty");
        OracleResult { computed, method }
    }
}

impl fmt::Display for OracleResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.computed {
            OracleValue::Character(c) => write!(f, "{} ({})", c, self.method),
            OracleValue::Multiplicities(m) => {
                write!(f, "{{")?;
                for (i, (w, c)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{w}: {c}")?;
                }
                write!(f, "}} ({})", self.method)
            }
        }
    }
}

fn sl2() -> RootSystem {
    RootSystem::build(CartanType::A, 1).expect("A1 is valid")
}

fn sl2_weight(lambda: &Weight) -> Result<i64> {
    match lambda.coords() {
        [c] => Ok(*c),
        _ => Err(Error::RankMismatch {
            weight: lambda.clone(),
            found: lambda.rank(),
            expected: 1,
        }),
    }
}

/// `ch L(lambda)` for SL2: the product over base-p digits `l_r` of the
/// Frobenius twists `chi(l_r)^{(r)}`.
pub fn sl2_simple_character(p: u64, lambda: &Weight) -> Result<Character> {
    let rs = sl2();
    let mut rest = sl2_weight(lambda)?;
    if rest < 0 {
        return Err(Error::NotDominant(lambda.clone()));
    }
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be >= 2, got {p}")));
    }
    let p_i = p as i64;
    let mut out = Character::monomial(Weight::zero(1));
    let mut r = 0;
    while rest > 0 {
        let digit = rest % p_i;
        rest /= p_i;
        let factor = weyl_character(&rs, &Weight::new(vec![digit]))?.frobenius_twist(p, r);
        out = out.multiply(&factor);
        r += 1;
    }
    Ok(out)
}

/// `ch L_1(xi)` for the SL2 Frobenius kernel times the torus: `ch L(xi0) e(p xi1)`
/// where `xi = xi0 + p xi1` with `xi0` restricted.
pub fn sl2_simple_g1t_character(p: u64, xi: &Weight) -> Result<Character> {
    sl2_weight(xi)?;
    let (low, high) = xi.split_restricted(p as i64);
    Ok(sl2_simple_character(p, &low)?.translate(&high.scale(p as i64)))
}

/// Composition multiplicities of `Z_1(mu)` for SL2, by peeling off simple
/// characters from the top.
pub fn sl2_baby_verma_decomposition(p: u64, mu: &Weight) -> Result<BTreeMap<Weight, BigInt>> {
    let rs = sl2();
    sl2_weight(mu)?;
    let mut rem = baby_verma_character(&rs, p, 1, mu)?;
    let floor = rs.scaled_height(rem.min_weight(&rs).expect("nonzero"));
    let mut out = BTreeMap::new();
    while let Some(top) = rem.max_weight(&rs).cloned() {
        let c = rem.coeff(&top);
        if c.is_negative() || rs.scaled_height(&top) < floor {
            return Err(Error::Inconsistent(format!(
                "SL2 oracle left remainder {rem} decomposing Z_1({mu})"
            )));
        }
        let simple = sl2_simple_g1t_character(p, &top)?;
        rem.add_scaled_translate(&simple, &Weight::zero(1), &-&c);
        out.insert(top, c);
    }
    Ok(out)
}

/// The unique integers `c_mu` with `x = sum c_mu chi(mu)`.
///
/// Greedy at the top: a height-maximal weight of a W-invariant character is
/// dominant. Negative `c_mu` are returned as-is.
pub fn decompose_into_weyl_characters(
    rs: &RootSystem,
    x: &Character,
) -> Result<BTreeMap<Weight, BigInt>> {
    if let Some(w) = x.weyl_asymmetry(rs) {
        return Err(Error::NotWeylInvariant(w.clone()));
    }
    let mut rem = x.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rem.max_weight(rs).cloned() {
        let c = rem.coeff(&top);
        debug_assert!(top.is_dominant());
        let chi = weyl_character(rs, &top)?;
        rem.add_scaled_translate(&chi, &Weight::zero(rs.rank()), &-&c);
        if !c.is_zero() {
            out.insert(top, c);
        }
    }
    Ok(out)
}

/// `sum c_mu chi(mu)`.
pub fn weyl_combination(rs: &RootSystem, coeffs: &BTreeMap<Weight, BigInt>) -> Result<Character> {
    let mut out = Character::zero();
    for (mu, c) in coeffs {
        out.add_scaled_translate(&weyl_character(rs, mu)?, &Weight::zero(rs.rank()), c);
    }
    Ok(out)
}

/// Tagged variant of `sl2_simple_character`.
pub fn sl2_simple_character_result(p: u64, lambda: &Weight) -> Result<OracleResult> {
    Ok(OracleResult::new(
        OracleValue::Character(sl2_simple_character(p, lambda)?),
        "SL2 Steinberg tensor product of Weyl characters of base-p digits",
    ))
}

/// Tagged variant of `sl2_baby_verma_decomposition`.
pub fn sl2_baby_verma_decomposition_result(p: u64, mu: &Weight) -> Result<OracleResult> {
    Ok(OracleResult::new(
        OracleValue::Multiplicities(sl2_baby_verma_decomposition(p, mu)?),
        "SL2 greedy peeling of simple G1T-characters from a baby Verma character",
    ))
}
