//! Acceptance criteria. Runs every criterion, prints one line per criterion,
//! and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use tiltchar::oracle::{sl2_baby_verma_decomposition, sl2_simple_character};
use tiltchar::pipeline::{
    build_table, check_tmc, compute_n, compute_n_for_coxeter, composition_factors,
    composition_multiplicity, extract_b, extract_baby_verma_multiplicities, is_prime,
    simple_characters, stable_tilting_weight, PipelineConfig,
};
use tiltchar::tiltingdata::generate_sl2;
use tiltchar::weylchar::{weyl_character, weyl_character_altsum, weyl_dimension};
use tiltchar::{
    CartanType, Character, Error, RootSystem, TiltingDataset, Weight, WeylCharacterCache,
};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn a1() -> RootSystem {
    RootSystem::build(CartanType::A, 1).unwrap()
}

struct Sl2Run {
    cfg: PipelineConfig,
    data: TiltingDataset,
    table: tiltchar::DecompositionTable,
}

fn sl2_run(p: u64) -> Result<Sl2Run, String> {
    let data = generate_sl2(p, 4 * p as i64).map_err(|e| e.to_string())?;
    let cfg = PipelineConfig::new(a1(), p).map_err(|e| e.to_string())?;
    let table = build_table(&cfg, &data).map_err(|e| e.to_string())?;
    Ok(Sl2Run { cfg, data, table })
}

/// 1. SL2 end-to-end equality with N = compute_N = 0.
fn sl2_end_to_end() -> Outcome {
    let mut checked = 0;
    for p in PRIMES {
        let start = Instant::now();
        let rs = a1();
        ensure(compute_n(&rs, p) == 0, || format!("p={p}: N != 0"))?;
        let run = sl2_run(p)?;
        ensure(run.cfg.big_n() == 0, || format!("p={p}: config N != 0"))?;
        let simples = simple_characters(&run.table, &run.cfg).map_err(|e| e.to_string())?;
        for lambda in run.cfg.restricted_weights() {
            let got = simples.character(&lambda).map_err(|e| e.to_string())?;
            let want = sl2_simple_character(p, &lambda).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("p={p} lambda={lambda}: {got} != {want}"))?;
            checked += 1;
        }
        within(start.elapsed(), Duration::from_secs(1))?;
    }
    Ok(format!("{checked} restricted simple characters equal the oracle"))
}

/// A random weight with coordinates in [-10, 10] and |height| <= 20.
fn random_weight(rs: &RootSystem, rng: &mut StdRng) -> Weight {
    loop {
        let w = Weight::new((0..rs.rank()).map(|_| rng.gen_range(-10..=10)).collect());
        let h = rs.height(&w);
        if h <= 20.into() && h >= (-20).into() {
            return w;
        }
    }
}

/// 2. Extraction round-trip on random nonnegative baby Verma combinations.
fn extraction_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let types = [(CartanType::A, 1), (CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2)];
    let mut cases = 0;
    for (letter, rank) in types {
        let cache = WeylCharacterCache::new(RootSystem::build(letter, rank).unwrap());
        let rs = cache.root_system().clone();
        for p in [2u64, 3, 5] {
            for r in [1u32, 2] {
                for _ in 0..9 {
                    let k = rng.gen_range(1..=4);
                    let mut coeffs: BTreeMap<Weight, BigInt> = BTreeMap::new();
                    for _ in 0..k {
                        let mu = random_weight(&rs, &mut rng);
                        *coeffs.entry(mu).or_default() += rng.gen_range(1..=5);
                    }
                    let mut ch = Character::zero();
                    for (mu, c) in &coeffs {
                        let z = cache.baby_verma(p, r, mu).map_err(|e| e.to_string())?;
                        ch.add_scaled_translate(&z, &Weight::zero(rank), c);
                    }
                    let got = extract_baby_verma_multiplicities(&cache, p, r, &ch)
                        .map_err(|e| format!("{rs} p={p} r={r}: {e}"))?;
                    ensure(got == coeffs, || format!("{rs} p={p} r={r}: {got:?} != {coeffs:?}"))?;
                    cases += 1;
                }
            }
        }
    }
    ensure(cases >= 200, || format!("only {cases} cases"))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{cases} random combinations recovered exactly in {:?}", start.elapsed()))
}

/// 3. Weyl characters: mass equals the dimension formula; Freudenthal equals the alternating sum.
fn weyl_correctness() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let rank_le_4 = [
        (CartanType::A, 1),
        (CartanType::A, 2),
        (CartanType::A, 3),
        (CartanType::A, 4),
        (CartanType::B, 2),
        (CartanType::B, 3),
        (CartanType::B, 4),
        (CartanType::C, 3),
        (CartanType::C, 4),
        (CartanType::D, 4),
        (CartanType::F, 4),
        (CartanType::G, 2),
    ];
    let mut random_cases = 0;
    for i in 0..108 {
        let (letter, rank) = rank_le_4[i % rank_le_4.len()];
        let rs = RootSystem::build(letter, rank).unwrap();
        let top = if rank == 4 { 2 } else { 4 };
        let lam = Weight::new((0..rank).map(|_| rng.gen_range(0..=top)).collect());
        let chi = weyl_character(&rs, &lam).map_err(|e| e.to_string())?;
        let dim = weyl_dimension(&rs, &lam).map_err(|e| e.to_string())?;
        ensure(chi.total_mass() == dim, || format!("{rs} {lam}: mass {} != {dim}", chi.total_mass()))?;
        random_cases += 1;
    }

    let mut exhaustive = 0;
    for (letter, rank) in [
        (CartanType::A, 1),
        (CartanType::A, 2),
        (CartanType::B, 2),
        (CartanType::C, 2),
        (CartanType::G, 2),
    ] {
        let rs = RootSystem::build(letter, rank).unwrap();
        let bound = 16;
        let second = if rank == 2 { bound } else { 0 };
        for a in 0..=bound {
            for b in 0..=second {
                let lam = Weight::new([a, b][..rank].to_vec());
                if rs.height(&lam) > 8.into() {
                    continue;
                }
                let f = weyl_character(&rs, &lam).map_err(|e| e.to_string())?;
                let g = weyl_character_altsum(&rs, &lam).map_err(|e| e.to_string())?;
                ensure(f == g, || format!("{rs} {lam}: Freudenthal != alternating sum"))?;
                exhaustive += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{random_cases} random dimension checks, {exhaustive} exhaustive Freudenthal/alternating-sum checks"
    ))
}

/// 4. Mass rule: sum_mu b(mu, lambda) p^{N+1} = dim T(stable weight).
fn mass_rule() -> Outcome {
    let mut checked = 0;
    for p in PRIMES {
        let run = sl2_run(p)?;
        let block = BigInt::from(p).pow(run.cfg.n() * run.cfg.rs().positive_roots().len() as u32);
        for lambda in run.cfg.restricted_weights() {
            let key = stable_tilting_weight(&run.cfg, &lambda).unwrap();
            let t = run.data.get(&key).ok_or(format!("missing T({key})"))?;
            let b = extract_b(&run.cfg, t).map_err(|e| e.to_string())?;
            let total: BigInt = b.values().sum();
            ensure(&total * &block == t.total_mass(), || {
                format!("p={p} lambda={lambda}: {total} * {block} != {}", t.total_mass())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (p, lambda) pairs"))
}

/// 5. Reciprocity: composition multiplicities agree with the brute-force oracle.
fn reciprocity() -> Outcome {
    let mut checked = 0;
    for p in PRIMES {
        let run = sl2_run(p)?;
        let pi = p as i64;
        for m in -3 * pi..=3 * pi {
            let mu = Weight::new(vec![m]);
            let oracle = sl2_baby_verma_decomposition(p, &mu).map_err(|e| e.to_string())?;
            let mine: BTreeMap<Weight, BigInt> =
                composition_factors(&run.table, &run.cfg, &mu).into_iter().collect();
            ensure(mine == oracle, || format!("p={p} mu={m}: {mine:?} != {oracle:?}"))?;
            for x in (m - 4 * pi)..=(m + pi) {
                let xi = Weight::new(vec![x]);
                let want = oracle.get(&xi).cloned().unwrap_or_default();
                let got = composition_multiplicity(&run.table, &run.cfg, &mu, &xi);
                ensure(got == want, || format!("p={p} [Z({m}) : L({x})] = {got}, oracle {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} multiplicities"))
}

/// 6. ch Z_1(lambda) = sum_xi [Z_1(lambda) : L_1(xi)] ch L_1(xi).
fn decomposition_identity() -> Outcome {
    let mut checked = 0;
    for p in PRIMES {
        let run = sl2_run(p)?;
        let simples = simple_characters(&run.table, &run.cfg).map_err(|e| e.to_string())?;
        for lambda in run.cfg.restricted_weights() {
            let mut sum = Character::zero();
            for (xi, c) in composition_factors(&run.table, &run.cfg, &lambda) {
                let l = simples.character(&xi).map_err(|e| e.to_string())?;
                sum.add_scaled_translate(&l, &Weight::zero(1), &c);
            }
            let z = run.cfg.cache().baby_verma(p, 1, &lambda).map_err(|e| e.to_string())?;
            ensure(sum == z, || format!("p={p} lambda={lambda}: {sum} != {z}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} baby Verma characters reassembled"))
}

/// 7. The tilting-module test holds for SL2.
fn tmc_check() -> Outcome {
    let mut checked = 0;
    for p in PRIMES {
        let run = sl2_run(p)?;
        for lambda in run.cfg.restricted_weights() {
            let ok = check_tmc(&run.table, &run.cfg, &run.data, &lambda).map_err(|e| e.to_string())?;
            ensure(ok, || format!("p={p} lambda={lambda}: check_tmc false"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} restricted weights"))
}

/// 8. compute_N is 0 for A1 and 1 whenever p >= h - 2 > 1.
fn bound_behavior() -> Outcome {
    let rs = a1();
    for p in 2..200u64 {
        ensure(compute_n(&rs, p) == 0, || format!("A1 p={p}"))?;
    }
    let mut types = vec![(CartanType::E, 6), (CartanType::E, 7), (CartanType::E, 8), (CartanType::F, 4), (CartanType::G, 2)];
    for n in 1..=8 {
        types.push((CartanType::A, n));
        if n >= 2 {
            types.push((CartanType::B, n));
            types.push((CartanType::C, n));
        }
        if n >= 4 {
            types.push((CartanType::D, n));
        }
    }
    let mut n_one = 0;
    for (letter, rank) in types {
        let rs = RootSystem::build(letter, rank).unwrap();
        let h = rs.coxeter_number();
        for p in (2..100u64).filter(|&p| is_prime(p)) {
            let n = compute_n(&rs, p);
            // minimality
            let geometric = |k: u32| (0..=k).map(|i| p.pow(i)).sum::<u64>();
            ensure(geometric(n) >= h - 1, || format!("{rs} p={p}: N={n} violates bound"))?;
            ensure(n == 0 || geometric(n - 1) < h - 1, || format!("{rs} p={p}: N={n} not minimal"))?;
            if h > 2 && h - 2 > 1 && p >= h - 2 {
                ensure(n == 1, || format!("{rs} p={p} h={h}: N={n}, expected 1"))?;
                n_one += 1;
            }
        }
    }
    ensure(compute_n_for_coxeter(4, 5) == 1, || "h=4 p=5".into())?;
    ensure(compute_n_for_coxeter(30, 2) == 4, || "h=30 p=2".into())?;
    Ok(format!("A1 always 0; {n_one} (type, p) pairs with p >= h-2 > 1 give N = 1"))
}

fn set_coeff(entry: &mut Value, weight: i64, coeff: Value) {
    let terms = entry["character"].as_array_mut().unwrap();
    if let Some(t) = terms.iter_mut().find(|t| t["weight"][0] == weight) {
        t["coeff"] = coeff;
    } else {
        terms.push(serde_json::json!({"weight": [weight], "coeff": coeff}));
    }
}

fn drop_term(entry: &mut Value, weight: &Value) {
    let terms = entry["character"].as_array_mut().unwrap();
    terms.retain(|t| &t["weight"] != weight);
}

fn replace_with(entry: &mut Value, rs: &RootSystem, ch: &Character) {
    entry["character"] = serde_json::to_value(ch.to_records(rs)).unwrap();
}

fn sl2_file(p: u64) -> Value {
    serde_json::from_str(&generate_sl2(p, 4 * p as i64).unwrap().to_json()).unwrap()
}

fn entry_mut<'a>(file: &'a mut Value, key: &[i64]) -> &'a mut Value {
    let key = serde_json::to_value(key).unwrap();
    file["tilting"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["highest"] == key)
        .unwrap()
}

enum Rejection {
    AtLoad,
    AtExtraction,
}

/// Loads the mutated file, then runs the pipeline on it.
fn attempt(file: &Value) -> Result<Rejection, String> {
    let text = file.to_string();
    let data = match TiltingDataset::from_json_str(&text, None) {
        Err(Error::InvalidTilting { .. }) => return Ok(Rejection::AtLoad),
        Err(e) => return Err(format!("unexpected load error: {e}")),
        Ok(d) => d,
    };
    let cfg = PipelineConfig::new(data.root_system().clone(), data.p()).map_err(|e| e.to_string())?;
    match build_table(&cfg, &data) {
        Err(Error::NotBabyVermaCombination(_)) => Ok(Rejection::AtExtraction),
        Err(e) => Err(format!("unexpected pipeline error: {e}")),
        Ok(_) => Err("accepted silently".into()),
    }
}

/// 9. Every deliberately broken entry is rejected.
fn corrupt_input_rejection() -> Outcome {
    let rs = a1();
    let chi = |k: i64| weyl_character(&rs, &Weight::new(vec![k])).unwrap();
    let a2 = RootSystem::build(CartanType::A, 2).unwrap();
    let a2_file = || {
        let mut d = TiltingDataset::new(a2.clone(), 2);
        d.insert(Weight::new(vec![1, 1]), weyl_character(&a2, &Weight::new(vec![1, 1])).unwrap())
            .unwrap();
        serde_json::from_str::<Value>(&d.to_json()).unwrap()
    };

    let mut mutations: Vec<(&str, Value)> = Vec::new();
    let mut push = |name, p: u64, key: &[i64], f: &dyn Fn(&mut Value)| {
        let mut file = sl2_file(p);
        f(entry_mut(&mut file, key));
        mutations.push((name, file));
    };
    push("p=3 T(4): negative coefficient at 0", 3, &[4], &|e| set_coeff(e, 0, (-2).into()));
    push("p=3 T(3): negative coefficient at -1", 3, &[3], &|e| set_coeff(e, -1, (-1).into()));
    push("p=5 T(6): negative lowest coefficient", 5, &[6], &|e| set_coeff(e, -6, (-1).into()));
    push("p=7 T(9): negative coefficient as string", 7, &[9], &|e| set_coeff(e, 1, "-1".into()));
    push("p=3 T(4): lowest term dropped", 3, &[4], &|e| drop_term(e, &serde_json::json!([-4])));
    push("p=3 T(3): asymmetric coefficient", 3, &[3], &|e| set_coeff(e, -1, 3.into()));
    push("p=5 T(8): stray weight", 5, &[8], &|e| set_coeff(e, 1, 1.into()));
    push("p=3 T(4): top coefficient 2", 3, &[4], &|e| set_coeff(e, 4, 2.into()));
    push("p=5 T(5): top term removed", 5, &[5], &|e| drop_term(e, &serde_json::json!([5])));
    push("p=3 T(3): doubled", 3, &[3], &|e| {
        for t in e["character"].as_array_mut().unwrap() {
            t["coeff"] = (t["coeff"].as_i64().unwrap() * 2).into();
        }
    });
    push("p=3 T(2): weight above the key", 3, &[2], &|e| {
        set_coeff(e, 4, 1.into());
        set_coeff(e, -4, 1.into());
    });
    push("p=3 T(3): chi(3) - chi(1)", 3, &[3], &|e| {
        replace_with(e, &a1(), &(&chi(3) - &chi(1)))
    });
    push("p=5 T(8): chi(8) - chi(6)", 5, &[8], &|e| {
        replace_with(e, &a1(), &(&chi(8) - &chi(6)))
    });
    push("p=2 T(2): chi(2) only", 2, &[2], &|e| replace_with(e, &a1(), &chi(2)));
    push("p=3 T(3): chi(3) only", 3, &[3], &|e| replace_with(e, &a1(), &chi(3)));
    push("p=3 T(4): chi(4) only", 3, &[4], &|e| replace_with(e, &a1(), &chi(4)));
    push("p=5 T(6): chi(6) only", 5, &[6], &|e| replace_with(e, &a1(), &chi(6)));
    push("p=7 T(12): chi(12) only", 7, &[12], &|e| replace_with(e, &a1(), &chi(12)));

    let mut m = a2_file();
    {
        let e = entry_mut(&mut m, &[1, 1]);
        drop_term(e, &serde_json::json!([-1, -1]));
    }
    mutations.push(("A2 T(1,1): asymmetric support", m));
    let mut m = a2_file();
    {
        let e = entry_mut(&mut m, &[1, 1]);
        for t in e["character"].as_array_mut().unwrap() {
            if t["weight"] == serde_json::json!([1, 1]) {
                t["coeff"] = 3.into();
            }
        }
    }
    mutations.push(("A2 T(1,1): top coefficient 3", m));

    let total = mutations.len();
    ensure(total == 20, || format!("suite has {total} cases"))?;
    let (mut at_load, mut at_extract) = (0, 0);
    for (name, file) in &mutations {
        match attempt(file) {
            Ok(Rejection::AtLoad) => at_load += 1,
            Ok(Rejection::AtExtraction) => at_extract += 1,
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    // The unmutated files must pass.
    for p in PRIMES {
        match attempt(&sl2_file(p)) {
            Err(e) if e == "accepted silently" => {}
            other => return Err(format!("clean p={p} dataset: {:?}", other.err())),
        }
    }
    Ok(format!("{total}/{total} rejected ({at_load} at load, {at_extract} at extraction)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 SL2 end-to-end simple characters", sl2_end_to_end),
        ("2 baby Verma extraction round-trip", extraction_round_trip),
        ("3 Weyl character correctness", weyl_correctness),
        ("4 mass rule", mass_rule),
        ("5 reciprocity consistency", reciprocity),
        ("6 decomposition identity", decomposition_identity),
        ("7 tilting module check", tmc_check),
        ("8 stability bound behavior", bound_behavior),
        ("9 corrupt input rejection", corrupt_input_rejection),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({t:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({t:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria FAILED", criteria.len());
        ExitCode::FAILURE
    }
}
