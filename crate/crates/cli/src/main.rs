use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tiltchar::pipeline::{
    build_table, check_tmc, compute_n, is_prime, pim_character, simple_characters,
    simple_g_character, Meta, PipelineConfig,
};
use tiltchar::tiltingdata::generate_sl2;
use tiltchar::verify::verify_sl2;
use tiltchar::weylchar::{baby_verma_character, steinberg_character, steinberg_weight, weyl_character};
use tiltchar::{CartanType, Character, Error, RootSystem, TiltingDataset, Weight};

/// Characters of tilting modules, baby Verma modules and simple modules.
#[derive(Parser, Debug)]
#[command(name = "tiltchar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl character chi(lambda).
    Weyl {
        #[command(flatten)]
        group: Group,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// Steinberg character chi((p^r - 1) rho).
    Steinberg {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Baby Verma character of G_r T with highest weight lambda.
    Babyverma {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// Least admissible stability bound N.
    Bound {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Tilting characters for SL2 with highest weights 0..=max.
    GenSl2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Simple G_1 T characters for every restricted weight, or the simple G
    /// character of one dominant weight.
    Simple {
        #[command(flatten)]
        data: Data,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<Weight>,
        #[command(flatten)]
        out: Output,
    },
    /// Character of the projective cover of the simple G_1 T module.
    Pim {
        #[command(flatten)]
        data: Data,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        #[command(flatten)]
        out: Output,
    },
    /// Compares ch T(2(p-1) rho + w0 lambda) with the projective cover.
    CheckTmc {
        #[command(flatten)]
        data: Data,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<Weight>,
        #[command(flatten)]
        out: Output,
    },
    /// SL2 comparison against the brute-force oracles.
    Verify {
        /// Defaults to 2, 3, 5 and 7.
        #[arg(long)]
        p: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Group {
    #[arg(long = "type", value_name = "TYPE")]
    type_letter: CartanType,
    #[arg(long)]
    rank: usize,
}

#[derive(Args, Debug)]
struct Data {
    #[command(flatten)]
    group: Group,
    #[arg(long)]
    p: u64,
    /// Tilting dataset JSON; `-` reads standard input.
    #[arg(long)]
    tilting: PathBuf,
    #[arg(long = "n-override")]
    n_override: Option<u32>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable characters instead of JSON records.
    #[arg(long)]
    pretty: bool,
}

impl Group {
    fn build(&self) -> Result<RootSystem, Error> {
        RootSystem::build(self.type_letter, self.rank)
    }
}

impl Data {
    fn load(&self) -> Result<(PipelineConfig, TiltingDataset), Error> {
        let rs = self.group.build()?;
        let cfg = match self.n_override {
            Some(n) => PipelineConfig::with_n(rs, self.p, n)?,
            None => PipelineConfig::new(rs, self.p)?,
        };
        let expected = Some((self.group.type_letter, self.group.rank, self.p));
        let data = if self.tilting.as_os_str() == "-" {
            TiltingDataset::load(io::stdin().lock(), expected)?
        } else {
            TiltingDataset::load(BufReader::new(File::open(&self.tilting)?), expected)?
        };
        Ok((cfg, data))
    }
}

impl Output {
    fn emit(&self, text: String) -> Result<(), Error> {
        match &self.out {
            Some(path) => {
                let mut f = File::create(path)?;
                writeln!(f, "{text}")?;
            }
            None => {
                let mut stdout = io::stdout().lock();
                writeln!(stdout, "{text}")?;
            }
        }
        Ok(())
    }

    fn json(&self, v: &Value) -> Result<(), Error> {
        let text = if self.pretty {
            serde_json::to_string_pretty(v)?
        } else {
            serde_json::to_string(v)?
        };
        self.emit(text)
    }

    fn character(&self, rs: &RootSystem, ch: &Character) -> Value {
        if self.pretty {
            Value::String(ch.pretty(rs))
        } else {
            serde_json::to_value(ch.to_records(rs)).expect("records serialize")
        }
    }
}

fn group_meta(rs: &RootSystem) -> Value {
    json!({"type": rs.type_letter(), "rank": rs.rank()})
}

fn with_meta(mut meta: Value, fields: Value) -> Value {
    if let (Value::Object(m), Value::Object(f)) = (&mut meta, fields) {
        m.extend(f);
    }
    meta
}

fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Weyl { group, weight, out } => {
            let rs = group.build()?;
            let ch = weyl_character(&rs, &weight)?;
            let v = with_meta(
                group_meta(&rs),
                json!({"highest": weight, "character": out.character(&rs, &ch)}),
            );
            out.json(&v)?;
        }
        Command::Steinberg { group, p, r, out } => {
            let rs = group.build()?;
            let ch = steinberg_character(&rs, p, r)?;
            let v = with_meta(
                group_meta(&rs),
                json!({"p": p, "r": r, "highest": steinberg_weight(&rs, p, r)?,
                       "character": out.character(&rs, &ch)}),
            );
            out.json(&v)?;
        }
        Command::Babyverma {
            group,
            p,
            r,
            weight,
            out,
        } => {
            let rs = group.build()?;
            let ch = baby_verma_character(&rs, p, r, &weight)?;
            let v = with_meta(
                group_meta(&rs),
                json!({"p": p, "r": r, "highest": weight, "character": out.character(&rs, &ch)}),
            );
            out.json(&v)?;
        }
        Command::Bound { group, p, out } => {
            let rs = group.build()?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            out.emit(compute_n(&rs, p).to_string())?;
        }
        Command::GenSl2 { p, max, out } => {
            let max = max.unwrap_or(2 * p as i64 - 2);
            if max < 0 {
                return Err(Error::InvalidParameter(format!("--max must be >= 0, got {max}")));
            }
            let data = generate_sl2(p, max)?;
            out.emit(if out.pretty {
                data.to_json_pretty()
            } else {
                data.to_json()
            })?;
        }
        Command::Simple { data, weight, out } => {
            let (cfg, dataset) = data.load()?;
            let table = build_table(&cfg, &dataset)?;
            let simples = simple_characters(&table, &cfg)?;
            let rs = cfg.rs();
            let meta = serde_json::to_value(Meta::of(&cfg))?;
            let v = match weight {
                Some(lambda) => {
                    let ch = simple_g_character(&simples, &cfg, &lambda)?;
                    with_meta(meta, json!({"highest": lambda, "character": out.character(rs, &ch)}))
                }
                None if out.pretty => {
                    let mut simple = Vec::new();
                    for entry in simples.to_json(&cfg).simple {
                        let ch = simples.character(&entry.highest)?;
                        simple.push(json!({"highest": entry.highest, "character": ch.pretty(rs)}));
                    }
                    with_meta(meta, json!({"simple": simple}))
                }
                None => serde_json::to_value(simples.to_json(&cfg))?,
            };
            out.json(&v)?;
        }
        Command::Pim { data, weight, out } => {
            let (cfg, dataset) = data.load()?;
            let table = build_table(&cfg, &dataset)?;
            let ch = pim_character(&table, &cfg, &weight)?;
            let meta = serde_json::to_value(Meta::of(&cfg))?;
            let v = with_meta(meta, json!({"highest": weight, "character": out.character(cfg.rs(), &ch)}));
            out.json(&v)?;
        }
        Command::CheckTmc { data, weight, out } => {
            let (cfg, dataset) = data.load()?;
            let table = build_table(&cfg, &dataset)?;
            let lambdas = match weight {
                Some(l) => vec![l],
                None => cfg.restricted_weights(),
            };
            let mut results = Vec::new();
            let mut all = true;
            for lambda in lambdas {
                let holds = check_tmc(&table, &cfg, &dataset, &lambda)?;
                eprintln!("check-tmc {lambda}: {holds}");
                all &= holds;
                results.push(json!({"lambda": lambda, "holds": holds}));
            }
            let meta = serde_json::to_value(Meta::of(&cfg))?;
            out.json(&with_meta(meta, json!({"all": all, "results": results})))?;
        }
        Command::Verify { p, out } => {
            let primes = if p.is_empty() { vec![2, 3, 5, 7] } else { p };
            let mut rows = Vec::new();
            let mut ok = true;
            for p in primes {
                for c in verify_sl2(p)? {
                    eprintln!("p={p} {c}");
                    ok &= c.passed;
                    rows.push(json!({"p": p, "name": c.name, "passed": c.passed, "detail": c.detail}));
                }
            }
            out.json(&json!({"passed": ok, "checks": rows}))?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
