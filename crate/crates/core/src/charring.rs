//! The group ring `Z[X(T)]`: finite formal sums of weights with big-integer
//! coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rootsystem::{RootSystem, Weight};

/// An element of `Z[X(T)]`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    terms: HashMap<Weight, BigInt>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    /// The basis element `e(w)`.
    pub fn monomial(w: Weight) -> Self {
        let mut terms = HashMap::with_capacity(1);
        terms.insert(w, BigInt::one());
        Character { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut ch = Character::zero();
        for (w, c) in terms {
            ch.add_term(w, c.into());
        }
        ch
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of support weights.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: &Weight) -> Option<&BigInt> {
        self.terms.get(w)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.terms.contains_key(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += k * x * e(shift)`, without materializing the translate.
    pub fn add_scaled_translate(&mut self, x: &Character, shift: &Weight, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &x.terms {
            self.add_term(w + shift, c * k);
        }
    }

    pub fn add(&self, y: &Character) -> Character {
        let mut out = self.clone();
        for (w, c) in &y.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, y: &Character) -> Character {
        let mut out = self.clone();
        for (w, c) in &y.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Character {
        if k.is_zero() {
            return Character::zero();
        }
        Character {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Convolution product.
    pub fn multiply(&self, y: &Character) -> Character {
        let (small, large) = if self.len() <= y.len() {
            (self, y)
        } else {
            (y, self)
        };
        let mut out = Character::zero();
        for (a, ca) in &small.terms {
            out.add_scaled_translate(large, a, ca);
        }
        out
    }

    /// `self * e(mu)`.
    pub fn translate(&self, mu: &Weight) -> Character {
        Character {
            terms: self.terms.iter().map(|(w, c)| (w + mu, c.clone())).collect(),
        }
    }

    /// Replaces every weight `w` by `p^r * w`.
    pub fn frobenius_twist(&self, p: u64, r: u32) -> Character {
        let q = (p as i64).pow(r);
        Character {
            terms: self.terms.iter().map(|(w, c)| (w.scale(q), c.clone())).collect(),
        }
    }

    /// Sum of coefficients; the dimension, for a module character.
    pub fn total_mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The first support weight whose coefficient differs from that at some
    /// simple reflection of it, if any.
    pub fn weyl_asymmetry(&self, rs: &RootSystem) -> Option<&Weight> {
        self.terms.iter().find_map(|(w, c)| {
            let broken = (0..rs.rank())
                .any(|i| w.coords()[i] != 0 && self.terms.get(&rs.reflect(w, i)) != Some(c));
            broken.then_some(w)
        })
    }

    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.weyl_asymmetry(rs).is_none()
    }

    /// Support weight of maximal height, ties broken by the lexicographically
    /// largest coordinates. Dominance-maximal in the support.
    pub fn max_weight(&self, rs: &RootSystem) -> Option<&Weight> {
        self.terms
            .keys()
            .map(|w| (rs.scaled_height(w), w))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, w)| w)
    }

    pub fn min_weight(&self, rs: &RootSystem) -> Option<&Weight> {
        self.terms
            .keys()
            .map(|w| (rs.scaled_height(w), w))
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, w)| w)
    }

    /// Terms in canonical order: height descending, then coordinates descending.
    pub fn sorted_terms(&self, rs: &RootSystem) -> Vec<(&Weight, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| rs.canonical_cmp(a.0, b.0));
        v
    }

    pub fn to_records(&self, rs: &RootSystem) -> Vec<TermRecord> {
        self.sorted_terms(rs)
            .into_iter()
            .map(|(w, c)| TermRecord {
                weight: w.clone(),
                coeff: Coeff(c.clone()),
            })
            .collect()
    }

    pub fn from_records(records: impl IntoIterator<Item = TermRecord>) -> Character {
        Character::from_terms(records.into_iter().map(|r| (r.weight, r.coeff.0)))
    }

    /// Human-readable form, e.g. `e[3] + 2e[1] - e[-1]`.
    pub fn pretty(&self, rs: &RootSystem) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.sorted_terms(rs).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push('e');
            s.push_str(&w.to_string());
        }
        s
    }
}

impl FromIterator<(Weight, BigInt)> for Character {
    fn from_iter<T: IntoIterator<Item = (Weight, BigInt)>>(iter: T) -> Self {
        Character::from_terms(iter)
    }
}

impl<'a> Add<&'a Character> for &'a Character {
    type Output = Character;
    fn add(self, rhs: &'a Character) -> Character {
        Character::add(self, rhs)
    }
}

impl<'a> Sub<&'a Character> for &'a Character {
    type Output = Character;
    fn sub(self, rhs: &'a Character) -> Character {
        Character::sub(self, rhs)
    }
}

impl<'a> Mul<&'a Character> for &'a Character {
    type Output = Character;
    fn mul(self, rhs: &'a Character) -> Character {
        self.multiply(rhs)
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        if v.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in v.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}e{w}")?;
        }
        Ok(())
    }
}

/// One `{weight, coeff}` record of the JSON character format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub weight: Weight,
    pub coeff: Coeff,
}

/// Arbitrary-precision integer in JSON: a number when it fits in 64 bits,
/// a decimal string otherwise. Both forms are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff(pub BigInt);

impl From<BigInt> for Coeff {
    fn from(v: BigInt) -> Self {
        Coeff(v)
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl Visitor<'_> for CoeffVisitor {
            type Value = Coeff;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coeff, E> {
                Err(E::custom(format!("non-integer coefficient {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coeff, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(Coeff)
                    .map_err(|e| E::custom(format!("bad integer {v:?}: {e}")))
            }
        }

        d.deserialize_any(CoeffVisitor)
    }
}
