//! Tilting character datasets: the JSON file format, validation on load, and
//! a generator for SL2.
//!
//! File format:
//!
//! ```json
//! {"type":"A","rank":1,"p":3,
//!  "tilting":[{"highest":[3],"character":[{"weight":[3],"coeff":1}, ...]}, ...]}
//! ```
//!
//! Coefficients may be JSON integers or decimal strings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::charring::{Character, TermRecord};
use crate::error::{Error, Result};
use crate::oracle::decompose_into_weyl_characters;
use crate::pipeline::{extract_b, mass_rule_holds, stable_tilting_weight, PipelineConfig};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::weylchar::weyl_character;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct DatasetFile {
    #[serde(rename = "type")]
    type_letter: CartanType,
    rank: usize,
    p: u64,
    tilting: Vec<TiltingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TiltingRecord {
    highest: Weight,
    character: Vec<TermRecord>,
}

/// Validated characters of indecomposable tilting modules, keyed by highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingDataset {
    rs: RootSystem,
    p: u64,
    entries: BTreeMap<Weight, Character>,
}

impl TiltingDataset {
    pub fn new(rs: RootSystem, p: u64) -> Self {
        TiltingDataset {
            rs,
            p,
            entries: BTreeMap::new(),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn type_letter(&self) -> CartanType {
        self.rs.type_letter()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, highest: &Weight) -> Option<&Character> {
        self.entries.get(highest)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &Character)> {
        self.entries.iter()
    }

    /// Validates and inserts `ch T(highest)`.
    pub fn insert(&mut self, highest: Weight, ch: Character) -> Result<()> {
        validate_entry(&self.rs, &highest, &ch)?;
        if self.entries.contains_key(&highest) {
            return Err(Error::InvalidTilting {
                weight: highest,
                reason: "duplicate entry".into(),
            });
        }
        self.entries.insert(highest, ch);
        Ok(())
    }

    /// Parses and validates a dataset. With `expected`, the metadata must match
    /// that `(type, rank, p)`.
    pub fn load<R: Read>(reader: R, expected: Option<(CartanType, usize, u64)>) -> Result<Self> {
        let file: DatasetFile = serde_json::from_reader(reader)?;
        Self::from_file(file, expected)
    }

    pub fn from_json_str(s: &str, expected: Option<(CartanType, usize, u64)>) -> Result<Self> {
        let file: DatasetFile = serde_json::from_str(s)?;
        Self::from_file(file, expected)
    }

    fn from_file(file: DatasetFile, expected: Option<(CartanType, usize, u64)>) -> Result<Self> {
        if let Some((t, r, p)) = expected {
            if (t, r, p) != (file.type_letter, file.rank, file.p) {
                return Err(Error::MetadataMismatch(format!(
                    "file is for {}{} p={}, requested {t}{r} p={p}",
                    file.type_letter, file.rank, file.p
                )));
            }
        }
        if file.p < 2 {
            return Err(Error::InvalidParameter(format!("p must be >= 2, got {}", file.p)));
        }
        let rs = RootSystem::build(file.type_letter, file.rank)?;
        let mut out = TiltingDataset::new(rs, file.p);
        for rec in file.tilting {
            let ch = Character::from_records(rec.character);
            out.insert(rec.highest, ch)?;
        }
        Ok(out)
    }

    fn to_file(&self) -> DatasetFile {
        let mut keys: Vec<&Weight> = self.entries.keys().collect();
        keys.sort_by(|a, b| self.rs.canonical_cmp(b, a));
        DatasetFile {
            type_letter: self.rs.type_letter(),
            rank: self.rs.rank(),
            p: self.p,
            tilting: keys
                .into_iter()
                .map(|k| TiltingRecord {
                    highest: k.clone(),
                    character: self.entries[k].to_records(&self.rs),
                })
                .collect(),
        }
    }

    /// Canonical JSON: entries by increasing highest weight, terms in canonical order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("dataset serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("dataset serializes")
    }
}

/// Checks the invariants of one tilting character.
pub fn validate_entry(rs: &RootSystem, highest: &Weight, ch: &Character) -> Result<()> {
    let fail = |reason: String| Error::InvalidTilting {
        weight: highest.clone(),
        reason,
    };
    rs.check_rank(highest)?;
    if !highest.is_dominant() {
        return Err(fail("highest weight is not dominant".into()));
    }
    for w in ch.support() {
        if w.rank() != rs.rank() {
            return Err(fail(format!("weight {w} has the wrong rank")));
        }
    }
    let top = ch.coeff(highest);
    if !top.is_one() {
        return Err(fail(format!("highest coefficient must be 1, found {top}")));
    }
    if let Some((w, c)) = ch.terms().find(|(_, c)| c.is_negative()) {
        return Err(fail(format!("negative coefficient {c} at weight {w}")));
    }
    if let Some(w) = ch.weyl_asymmetry(rs) {
        return Err(fail(format!("not Weyl-invariant at weight {w}")));
    }
    if let Some(w) = ch
        .support()
        .find(|w| *w != highest && rs.dominance_leq(highest, w))
    {
        return Err(fail(format!("weight {w} lies above the highest weight")));
    }
    let weyl = decompose_into_weyl_characters(rs, ch)?;
    if let Some((mu, c)) = weyl.iter().find(|(_, c)| c.is_negative()) {
        return Err(fail(format!("Weyl character chi({mu}) occurs with negative multiplicity {c}")));
    }
    if let Some(mu) = weyl.keys().find(|mu| !rs.dominance_leq(mu, highest)) {
        return Err(fail(format!("Weyl character chi({mu}) is not below the highest weight")));
    }
    Ok(())
}

/// Tilting characters for SL2 in characteristic `p`, for highest weights
/// `0..=max_highest_weight`.
///
/// `ch T(l) = chi(l)` for `l <= p - 1` and `ch T(a) = chi(a) + chi(2p - 2 - a)`
/// for `p <= a <= 2p - 2`. Larger `l` is written `l = a + p b` with
/// `a` the unique element of `[p - 1, 2p - 2]` congruent to `l` mod p
/// (the interval has exactly p elements), and then
/// `ch T(l) = ch T(a) * ch T(b)^{(1)}`.
pub fn generate_sl2(p: u64, max_highest_weight: i64) -> Result<TiltingDataset> {
    if !crate::pipeline::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let rs = RootSystem::build(CartanType::A, 1)?;
    let mut memo: HashMap<i64, Character> = HashMap::new();
    let mut out = TiltingDataset::new(rs.clone(), p);
    for l in 0..=max_highest_weight {
        let ch = sl2_tilting(&rs, p as i64, l, &mut memo)?;
        out.insert(Weight::new(vec![l]), ch)?;
    }
    Ok(out)
}

fn sl2_tilting(rs: &RootSystem, p: i64, l: i64, memo: &mut HashMap<i64, Character>) -> Result<Character> {
    if let Some(c) = memo.get(&l) {
        return Ok(c.clone());
    }
    let chi = |k: i64| weyl_character(rs, &Weight::new(vec![k]));
    let ch = if l <= p - 1 {
        chi(l)?
    } else if l <= 2 * p - 2 {
        &chi(l)? + &chi(2 * p - 2 - l)?
    } else {
        let a = (p - 1) + (l - (p - 1)).rem_euclid(p);
        let b = (l - a) / p;
        let low = sl2_tilting(rs, p, a, memo)?;
        let high = sl2_tilting(rs, p, b, memo)?;
        low.multiply(&high.frobenius_twist(p as u64, 1))
    };
    memo.insert(l, ch.clone());
    Ok(ch)
}

/// Outcome of running `extract_b` on one required tilting character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaStatus {
    Ok { b: BTreeMap<Weight, BigInt>, mass_rule: bool },
    Missing,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    pub lambda: Weight,
    pub tilting_weight: Weight,
    pub status: LambdaStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<LambdaReport>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.status, LambdaStatus::Ok { mass_rule: true, .. }))
    }

    pub fn missing(&self) -> Vec<&Weight> {
        self.entries
            .iter()
            .filter(|e| e.status == LambdaStatus::Missing)
            .map(|e| &e.tilting_weight)
            .collect()
    }

    pub fn failures(&self) -> Vec<&LambdaReport> {
        self.entries
            .iter()
            .filter(|e| !matches!(e.status, LambdaStatus::Ok { mass_rule: true, .. }))
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.status {
                LambdaStatus::Ok { b, mass_rule } => writeln!(
                    f,
                    "lambda={} T({}): ok, {} baby Vermas, mass rule {}",
                    e.lambda,
                    e.tilting_weight,
                    b.values().sum::<BigInt>(),
                    if *mass_rule { "holds" } else { "FAILS" }
                )?,
                LambdaStatus::Missing => {
                    writeln!(f, "lambda={} T({}): missing", e.lambda, e.tilting_weight)?
                }
                LambdaStatus::Failed(msg) => {
                    writeln!(f, "lambda={} T({}): FAILED: {msg}", e.lambda, e.tilting_weight)?
                }
            }
        }
        Ok(())
    }
}

/// Runs `extract_b` on every tilting character the pipeline will need.
pub fn validate_against_pipeline(dataset: &TiltingDataset, cfg: &PipelineConfig) -> ValidationReport {
    let entries = cfg
        .restricted_weights()
        .into_iter()
        .map(|lambda| {
            let tilting_weight =
                stable_tilting_weight(cfg, &lambda).expect("restricted weights are valid");
            let status = match dataset.get(&tilting_weight) {
                None => LambdaStatus::Missing,
                Some(ch) => match extract_b(cfg, ch) {
                    Ok(b) => {
                        let mass_rule = mass_rule_holds(cfg, &b, ch);
                        LambdaStatus::Ok { b, mass_rule }
                    }
                    Err(e) => LambdaStatus::Failed(e.to_string()),
                },
            };
            LambdaReport {
                lambda,
                tilting_weight,
                status,
            }
        })
        .collect();
    ValidationReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn ch(terms: &[(&[i64], i64)]) -> Character {
        Character::from_terms(terms.iter().map(|(v, c)| (w(v), *c)))
    }

    fn mass(c: &Character) -> i64 {
        c.total_mass().to_i64().unwrap()
    }

    #[test]
    fn load_valid_file() {
        let s = r#"{"type":"A","rank":1,"p":2,"tilting":[
            {"highest":[1],"character":[{"weight":[1],"coeff":1},{"weight":[-1],"coeff":1}]},
            {"highest":[2],"character":[{"weight":[2],"coeff":1},{"weight":[0],"coeff":"2"},{"weight":[-2],"coeff":1}]}
        ]}"#;
        let d = TiltingDataset::from_json_str(s, Some((CartanType::A, 1, 2))).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(&w(&[2])), Some(&ch(&[(&[2], 1), (&[0], 2), (&[-2], 1)])));
        assert!(matches!(
            TiltingDataset::from_json_str(s, Some((CartanType::A, 1, 3))),
            Err(Error::MetadataMismatch(_))
        ));
    }

    #[test]
    fn negative_coefficient_rejected() {
        let s = r#"{"type":"A","rank":1,"p":3,"tilting":[
            {"highest":[3],"character":[{"weight":[3],"coeff":1},{"weight":[1],"coeff":-2},{"weight":[-1],"coeff":-2},{"weight":[-3],"coeff":1}]}
        ]}"#;
        let err = TiltingDataset::from_json_str(s, None).unwrap_err();
        assert!(matches!(&err, Error::InvalidTilting { weight, .. } if *weight == w(&[3])), "{err}");
        assert!(err.to_string().contains("negative"));
    }

    #[test]
    fn top_coefficient_must_be_one() {
        let s = r#"{"type":"A","rank":1,"p":3,"tilting":[
            {"highest":[1],"character":[{"weight":[1],"coeff":2},{"weight":[-1],"coeff":2}]}
        ]}"#;
        let err = TiltingDataset::from_json_str(s, None).unwrap_err();
        assert!(err.to_string().contains("highest coefficient must be 1"), "{err}");
    }

    #[test]
    fn other_invariants_rejected() {
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        // not invariant
        assert!(validate_entry(&rs, &w(&[1]), &ch(&[(&[1], 1), (&[-3], 1)])).is_err());
        // weight above the key
        assert!(validate_entry(&rs, &w(&[1]), &ch(&[(&[3], 1), (&[1], 1), (&[-1], 1), (&[-3], 1)])).is_err());
        // negative Weyl multiplicity: chi(3) - chi(1)
        assert!(validate_entry(&rs, &w(&[3]), &ch(&[(&[3], 1), (&[-3], 1)])).is_err());
        // non-dominant key
        assert!(validate_entry(&rs, &w(&[-1]), &ch(&[(&[-1], 1), (&[1], 1)])).is_err());
        // wrong rank
        assert!(validate_entry(&rs, &w(&[1, 0]), &ch(&[(&[1, 0], 1)])).is_err());
    }

    #[test]
    fn bad_json_is_a_parse_error() {
        assert!(matches!(TiltingDataset::from_json_str("{", None), Err(Error::Json(_))));
        assert!(matches!(
            TiltingDataset::from_json_str(r#"{"type":"Q","rank":1,"p":2,"tilting":[]}"#, None),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            TiltingDataset::from_json_str(r#"{"type":"D","rank":3,"p":2,"tilting":[]}"#, None),
            Err(Error::InvalidType { .. })
        ));
    }

    #[test]
    fn sl2_generation_examples() {
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        let chi = |k: i64| weyl_character(&rs, &w(&[k])).unwrap();
        let d2 = generate_sl2(2, 8).unwrap();
        assert_eq!(d2.get(&w(&[2])), Some(&ch(&[(&[2], 1), (&[0], 2), (&[-2], 1)])));
        let d3 = generate_sl2(3, 12).unwrap();
        assert_eq!(d3.get(&w(&[3])), Some(&(&chi(3) + &chi(1))));
        assert_eq!(mass(d3.get(&w(&[3])).unwrap()), 6);
        let t5 = chi(2).multiply(&ch(&[(&[3], 1), (&[-3], 1)]));
        assert_eq!(d3.get(&w(&[5])), Some(&t5));
        assert_eq!(mass(&t5), 6);
        // T(p-1 + p b) = St (x) T(b)^(1)
        let t8 = chi(2).multiply(&d3.get(&w(&[2])).unwrap().frobenius_twist(3, 1));
        assert_eq!(d3.get(&w(&[8])), Some(&t8));
    }

    #[test]
    fn sl2_tilting_mass_at_2p_minus_2() {
        for p in [2u64, 3, 5, 7] {
            let d = generate_sl2(p, 2 * p as i64 - 2).unwrap();
            assert_eq!(mass(d.get(&w(&[2 * p as i64 - 2])).unwrap()), 2 * p as i64);
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let d = generate_sl2(5, 20).unwrap();
        let s = d.to_json();
        let back = TiltingDataset::from_json_str(&s, None).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn pipeline_validation_report() {
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        let cfg = PipelineConfig::new(rs.clone(), 3).unwrap();
        let d = generate_sl2(3, 10).unwrap();
        let report = validate_against_pipeline(&d, &cfg);
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.entries.len(), 3);

        // Replace T(3) by chi(3) alone.
        let mut bad = TiltingDataset::new(rs.clone(), 3);
        for (k, c) in d.entries() {
            let c = if *k == w(&[3]) {
                weyl_character(&rs, k).unwrap()
            } else {
                c.clone()
            };
            bad.insert(k.clone(), c).unwrap();
        }
        let report = validate_against_pipeline(&bad, &cfg);
        assert!(!report.all_passed());
        let failures = report.failures();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].lambda, w(&[1]));

        let empty = TiltingDataset::new(rs, 3);
        let report = validate_against_pipeline(&empty, &cfg);
        assert_eq!(report.missing(), vec![&w(&[2]), &w(&[3]), &w(&[4])]);
    }
}
