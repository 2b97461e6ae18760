//! Command-line front end: configuration, dispatch, reports and exit codes.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or configuration error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qvir_exact::{RatFunc, P61};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::agt::{self, Bridge, Mode};
use crate::cache::GramCache;
use crate::partitions::{self, partitions_of, Partition, Sign};
use crate::report::{rational_json, Check, Report};
use crate::symfunc::{self, Form, InnerProduct};
use crate::{classical, fock, verma};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Largest level (or degree, or rs) each command accepts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub gram: usize,
    pub gram_compare: usize,
    pub kac: usize,
    pub singular: usize,
    pub macdonald: usize,
    pub jack: usize,
    pub agt_symbolic: usize,
    pub agt_modular: usize,
    pub residue: usize,
    pub normalization: usize,
    pub classical: usize,
    pub degeneration: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            gram: 6,
            gram_compare: 4,
            kac: 4,
            singular: 4,
            macdonald: 6,
            jack: 6,
            agt_symbolic: 4,
            agt_modular: 8,
            residue: 4,
            normalization: 6,
            classical: 6,
            degeneration: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub mode: Mode,
    pub prime: u64,
    pub points: usize,
    pub cache_dir: PathBuf,
    pub format: Format,
    pub bounds: Bounds,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            mode: Mode::Symbolic,
            prime: P61,
            points: 3,
            cache_dir: PathBuf::from(".qvir-cache"),
            format: Format::Json,
            bounds: Bounds::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    fn validate(&self) -> Result<(), String> {
        if self.prime != P61 {
            return Err(format!("only the prime {} is supported, got {}", P61, self.prime));
        }
        if self.points == 0 {
            return Err("points must be positive".into());
        }
        let b = &self.bounds;
        let all = [
            b.gram, b.gram_compare, b.kac, b.singular, b.macdonald, b.jack, b.agt_symbolic, b.agt_modular, b.residue,
            b.normalization, b.classical, b.degeneration,
        ];
        if all.contains(&0) {
            return Err("bounds must be positive".into());
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "qvir", version, about = "Exact checks for the deformed Virasoro algebra and 5d Nekrasov functions")]
pub struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Overrides the config file; the QVIR_CACHE_DIR variable overrides both.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Adds a rational DELTA to f_1 in the abstract engine (failing fixture).
    #[arg(long, global = true, value_name = "DELTA")]
    pub perturb_f1: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Gram matrix of the deformed Verma module at level N.
    Gram {
        #[arg(long)]
        n: usize,
        /// generic, bridge-a, bridge-b or hrs:R,S
        #[arg(long, default_value = "generic")]
        weight: String,
    },
    /// Kac determinant constant at level N (deformed and classical).
    Kac {
        #[arg(long)]
        n: usize,
    },
    /// Singular vector at h_{r,s}, its normalization and residue factor.
    Singular {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// Macdonald orthogonality and triangularity up to degree N.
    Macdonald {
        #[arg(long)]
        n: usize,
        /// Print P_λ for this partition, e.g. 2,1
        #[arg(long)]
        partition: Option<String>,
    },
    /// Jack orthogonality, triangularity and the Macdonald limit up to degree N.
    Jack {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Nekrasov coefficient F_N, Q <-> 1/Q invariance and pole containment.
    Nekrasov {
        #[arg(long)]
        n: usize,
    },
    /// F_N from the pole recursion, residue law and pole containment.
    Recursion {
        #[arg(long)]
        n: usize,
    },
    /// Nekrasov = recursion = Gram inversion for n = 1..N.
    VerifyAgt {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "b")]
        bridge: BridgeArg,
        /// Smallest n checked.
        #[arg(long, default_value_t = 1)]
        from: usize,
    },
    /// Singular-vector normalizations and the q = 1 checks.
    Normalization {
        #[arg(long, default_value_t = 4)]
        max_rs: i64,
        #[arg(long, default_value_t = 6)]
        max_rs_q1: i64,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Classical side: Kac', R', the Jack identification and intertwining.
    Rprime {
        #[arg(long, default_value_t = 4)]
        max_rs: i64,
    },
    /// ħ-degeneration suite.
    Degeneration {
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = 4)]
        max_rs: i64,
    },
    /// Labelled weight pairs of K^±_{P,Q}.
    Classify {
        #[arg(long = "P")]
        p: u32,
        #[arg(long = "Q")]
        q: u32,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Partition counts p(n), p_N(n), q_{N,r,s}(n).
    Counting {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BridgeArg {
    A,
    B,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("sign must be + or -, got {:?}", s)),
    }
}

/// A usage error (exit 2) or a finished report.
#[derive(Debug)]
pub enum Outcome {
    Usage(String),
    Done(Report),
}

struct Ctx {
    cfg: RunConfig,
    delta: Option<BigRational>,
    cache: GramCache,
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::Usage(msg.into())
}

fn within(n: usize, bound: usize, what: &str) -> Result<(), Outcome> {
    if n > bound {
        Err(usage(format!("{} = {} exceeds the configured bound {}", what, n, bound)))
    } else {
        Ok(())
    }
}

fn parse_partition(s: &str) -> Result<Partition, Outcome> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    match parts {
        Ok(p) if p.iter().all(|&x| x > 0) => Ok(Partition::new(p)),
        _ => Err(usage(format!("bad partition {:?}", s))),
    }
}

fn parse_weight(s: &str) -> Result<verma::WeightSpec, Outcome> {
    use verma::WeightSpec::*;
    match s {
        "generic" => Ok(Generic),
        "bridge-a" => Ok(BridgeA),
        "bridge-b" => Ok(BridgeB),
        _ => {
            let rs = s.strip_prefix("hrs:").ok_or_else(|| usage(format!("unknown weight {:?}", s)))?;
            let v: Vec<i64> = rs.split(',').filter_map(|x| x.trim().parse().ok()).collect();
            match v[..] {
                [r, s] if r >= 1 && s >= 1 => Ok(AtHrs(r, s)),
                _ => Err(usage(format!("bad weight {:?}", s))),
            }
        }
    }
}

fn parse_delta(s: &str) -> Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| format!("bad rational {:?}", s))?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| format!("bad rational {:?}", s))?;
    if d == 0.into() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

fn sym_json(f: &symfunc::SymFunc<RatFunc>) -> Value {
    Value::Object(f.terms().iter().map(|(l, c)| (format!("p{}", l), Value::String(c.to_string()))).collect())
}

fn lc_json(v: &std::collections::BTreeMap<Partition, RatFunc>) -> Value {
    Value::Object(v.iter().map(|(l, c)| (l.to_string(), Value::String(c.to_string()))).collect())
}

fn result_check<T, E: std::fmt::Display>(name: String, tag: &str, r: &Result<T, E>) -> Check {
    match r {
        Ok(_) => Check::pass(name, tag),
        Err(e) => Check::fail(name, tag, e.to_string()),
    }
}

/// Resolves configuration (file, then flags, then environment) and runs the
/// command.
pub fn execute(cli: &Cli) -> Outcome {
    let mut cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match RunConfig::from_toml(&text) {
                Ok(c) => c,
                Err(e) => return usage(format!("config {}: {}", path.display(), e)),
            },
            Err(e) => return usage(format!("config {}: {}", path.display(), e)),
        },
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = d.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(m) = cli.mode {
        cfg.mode = m;
    }
    if let Some(p) = cli.points {
        cfg.points = p;
    }
    if let Some(p) = cli.prime {
        cfg.prime = p;
    }
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let delta = match cli.perturb_f1.as_deref().map(parse_delta).transpose() {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    let cache = GramCache::from_env_or(cfg.cache_dir.clone());
    let ctx = Ctx { cfg, delta, cache };
    match dispatch(&ctx, &cli.command) {
        Ok((name, checks, data)) => {
            let mut snapshot = serde_json::to_value(&ctx.cfg).expect("serializable");
            snapshot["cache_dir"] = Value::String(ctx.cache.dir().display().to_string());
            if let Some(d) = &ctx.delta {
                snapshot["perturb_f1"] = rational_json(d);
            }
            Outcome::Done(Report::new(name, snapshot, checks, data))
        }
        Err(o) => o,
    }
}

type Dispatched = (&'static str, Vec<Check>, Value);

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Dispatched, Outcome> {
    let b = &ctx.cfg.bounds;
    match cmd {
        Command::Gram { n, weight } => {
            within(*n, b.gram, "n")?;
            let spec = parse_weight(weight)?;
            cmd_gram(ctx, *n, &spec)
        }
        Command::Kac { n } => {
            within(*n, b.kac, "n")?;
            if *n == 0 {
                return Err(usage("n must be positive"));
            }
            let c = verma::kac_check_perturbed(*n, ctx.delta.as_ref());
            let mut checks = vec![match &c {
                Ok(x) => Check::pass(format!("Kac determinant level {}", n), "verma.kac").with("C", x),
                Err(e) => Check::fail(format!("Kac determinant level {}", n), "verma.kac", e.to_string()),
            }];
            if *n <= b.classical {
                let k = classical::kac_prime_check(*n);
                checks.push(result_check(format!("Kac' determinant level {}", n), "classical.kac", &k));
            }
            let data = match c {
                Ok(x) => json!({ "level": n, "C": rational_json(&x) }),
                Err(_) => json!({ "level": n, "C": null }),
            };
            Ok(("kac", checks, data))
        }
        Command::Singular { r, s } => {
            if *r < 1 || *s < 1 {
                return Err(usage("r and s must be positive"));
            }
            within((r * s) as usize, b.singular, "rs")?;
            let v = verma::singular_vector(*r, *s);
            let mut checks = vec![result_check(format!("singular vector ({},{})", r, s), "verma.singular", &v)];
            let norm = fock::verify_singular_normalization(*r, *s);
            checks.push(match &norm {
                Ok(n) => Check::pass(format!("normalization ({},{})", r, s), "fock.normalization").with("B", &n.scalar),
                Err(e) => Check::fail(format!("normalization ({},{})", r, s), "fock.normalization", e.to_string()),
            });
            let res = verma::r_extract(*r, *s);
            checks.push(match &res {
                Ok(x) => Check::pass(format!("residue factor ({},{})", r, s), "verma.residue").with("dN/dQ", &x.dn_dq),
                Err(e) => Check::fail(format!("residue factor ({},{})", r, s), "verma.residue", e.to_string()),
            });
            let data = match v {
                Ok(v) => json!({ "r": r, "s": s, "level": r * s, "coefficients": lc_json(v.vector.terms()) }),
                Err(_) => json!({ "r": r, "s": s, "level": r * s }),
            };
            Ok(("singular", checks, data))
        }
        Command::Macdonald { n, partition } => {
            within(*n, b.macdonald, "n")?;
            let shown = partition.as_deref().map(parse_partition).transpose()?;
            let ip = InnerProduct::Qt(crate::params::Params::symbolic());
            let mut checks = basis_checks(*n, &ip, "macdonald", |l| symfunc::macdonald(l, Form::P).map_err(|e| e.to_string()));
            let mut data = json!({ "degree": n });
            if let Some(l) = shown {
                match symfunc::macdonald(&l, Form::P) {
                    Ok(f) => data["P"] = sym_json(&f),
                    Err(e) => checks.push(Check::fail(format!("P{}", l), "symfunc.macdonald", e.to_string())),
                }
            }
            Ok(("macdonald", checks, data))
        }
        Command::Jack { n, partition } => {
            within(*n, b.jack, "n")?;
            let shown = partition.as_deref().map(parse_partition).transpose()?;
            let ip = InnerProduct::Beta(RatFunc::var(qvir_exact::Var::B));
            let mut checks = basis_checks(*n, &ip, "jack", |l| symfunc::jack(l, Form::P).map_err(|e| e.to_string()));
            for d in 1..=(*n).min(b.macdonald) {
                for l in partitions_of(d) {
                    let lim = symfunc::macdonald_to_jack_limit(&l, 1);
                    let target = symfunc::jack(&l, Form::J).map(|j| symfunc::invert_beta(&j));
                    let ok = matches!((&lim, &target), (Ok(a), Ok(b)) if a == b);
                    checks.push(Check::new(format!("Macdonald -> Jack J{}", l), "symfunc.limit", ok).with("argument", "1/beta"));
                }
            }
            let mut data = json!({ "degree": n });
            if let Some(l) = shown {
                match symfunc::jack(&l, Form::P) {
                    Ok(f) => data["P"] = sym_json(&f),
                    Err(e) => checks.push(Check::fail(format!("P{}", l), "symfunc.jack", e.to_string())),
                }
            }
            Ok(("jack", checks, data))
        }
        Command::Nekrasov { n } => {
            let mut checks = Vec::new();
            let mut data = json!({ "n": n, "mode": ctx.cfg.mode });
            match ctx.cfg.mode {
                Mode::Symbolic => {
                    within(*n, b.agt_symbolic, "n")?;
                    data["F"] = Value::String(agt::nekrasov_f(*n).to_string());
                    checks.push(agt::q_inversion(*n));
                }
                Mode::Modular => within(*n, b.agt_modular, "n")?,
            }
            checks.push(agt::pole_containment(*n, ctx.cfg.seed));
            Ok(("nekrasov", checks, data))
        }
        Command::Recursion { n } => {
            let mut checks = Vec::new();
            let mut data = json!({ "n": n, "mode": ctx.cfg.mode });
            match ctx.cfg.mode {
                Mode::Symbolic => {
                    within(*n, b.agt_symbolic, "n")?;
                    data["F"] = Value::String(agt::recursion_f(*n).to_string());
                    if *n <= b.residue {
                        checks.extend(agt::residue_law(*n));
                    }
                }
                Mode::Modular => within(*n, b.agt_modular, "n")?,
            }
            checks.push(agt::pole_containment(*n, ctx.cfg.seed));
            Ok(("recursion", checks, data))
        }
        Command::VerifyAgt { n, bridge, from } => {
            let bound = match ctx.cfg.mode {
                Mode::Symbolic => b.agt_symbolic,
                Mode::Modular => b.agt_modular,
            };
            within(*n, bound, "n")?;
            if *from > *n {
                return Err(usage("--from exceeds --n"));
            }
            let bridge = match bridge {
                BridgeArg::A => Bridge::A,
                BridgeArg::B => Bridge::B,
            };
            let checks = agt::verify_triangle(*from..=*n, ctx.cfg.mode, bridge, ctx.cfg.points, ctx.cfg.seed);
            Ok(("verify-agt", checks, json!({ "from": from, "n": n, "bridge": bridge })))
        }
        Command::Normalization { max_rs, max_rs_q1, max_size } => {
            within(*max_rs as usize, b.singular, "max-rs")?;
            within(*max_rs_q1 as usize, b.normalization, "max-rs-q1")?;
            within(*max_size, b.normalization, "max-size")?;
            let mut checks = Vec::new();
            for (r, s) in classical::labels(*max_rs) {
                let x = fock::verify_singular_normalization(r, s);
                checks.push(result_check(format!("normalization ({},{})", r, s), "fock.normalization", &x));
            }
            for (r, s) in classical::labels(*max_rs_q1) {
                let c = fock::q1_met_corner(r, s);
                checks.push(result_check(format!("q=1 corner ({},{})", r, s), "fock.q1corner", &c));
                let x = fock::q1_normalization(r, s);
                checks.push(result_check(format!("q=1 normalization ({},{})", r, s), "fock.q1norm", &x));
            }
            for size in 1..=*max_size {
                for lam in partitions_of(size) {
                    for r in 1..=3 {
                        let x = fock::q1_transition(&lam, r);
                        checks.push(result_check(format!("q=1 two-path row {} r={}", lam, r), "fock.q1paths", &x));
                    }
                }
            }
            Ok(("normalization", checks, json!({ "max_rs": max_rs, "max_rs_q1": max_rs_q1, "max_size": max_size })))
        }
        Command::Rprime { max_rs } => {
            within(*max_rs as usize, b.classical, "max-rs")?;
            let mut checks = Vec::new();
            let mut values = serde_json::Map::new();
            for n in 1..=*max_rs as usize {
                checks.push(result_check(format!("Kac' determinant level {}", n), "classical.kac", &classical::kac_prime_check(n)));
            }
            for n in 1..=6 {
                checks.push(Check::new(format!("zero set symmetry rs={}", n), "classical.zeros", classical::zero_set_symmetry(n)));
            }
            for (r, s) in classical::labels(*max_rs) {
                let x = classical::r_prime(r, s);
                if let Ok(v) = &x {
                    values.insert(format!("R'({},{})", r, s), Value::String(v.to_string()));
                }
                checks.push(result_check(format!("R' ({},{})", r, s), "classical.rprime", &x));
                let y = classical::singular_jack(r, s);
                checks.push(result_check(format!("B' ({},{})", r, s), "classical.jack", &y));
            }
            checks.push(classical::intertwining_check(3));
            Ok(("rprime", checks, Value::Object(values)))
        }
        Command::Degeneration { level, max_rs } => {
            within(*level, b.degeneration, "level")?;
            within(*max_rs as usize, b.degeneration, "max-rs")?;
            let checks = classical::degeneration_suite(*level, *max_rs);
            Ok(("degeneration", checks, json!({ "level": level, "max_rs": max_rs, "beta": "e2/e1" })))
        }
        Command::Classify { p, q, sign } => {
            let c = partitions::classify_weights(*p, *q, *sign).map_err(|e| usage(e.to_string()))?;
            let check = Check::pass("classification", "partitions.classify").with("count", c.labels.len());
            Ok(("classify", vec![check], serde_json::to_value(&c).expect("serializable")))
        }
        Command::Counting { n, big_n, r, s } => cmd_counting(*n, *big_n, *r, *s),
    }
}

fn cmd_gram(ctx: &Ctx, n: usize, spec: &verma::WeightSpec) -> Result<Dispatched, Outcome> {
    let mut checks = Vec::new();
    let mut failure = None;
    let got = ctx.cache.get_or_compute(n, spec, || match verma::gram_uncached(n, spec) {
        Ok(g) => g,
        Err(e) => {
            failure = Some(e.to_string());
            verma::GramMatrix { level: n, parts: Vec::new(), entries: Vec::new() }
        }
    });
    let g = match (got, failure) {
        (_, Some(e)) => {
            checks.push(Check::fail(format!("Gram level {}", n), "verma.gram", e));
            return Ok(("gram", checks, json!({ "level": n, "weight": spec.key() })));
        }
        (Err(e), None) => {
            checks.push(Check::fail(format!("Gram cache level {}", n), "cli.cache", e.to_string()));
            verma::gram_uncached(n, spec).map_err(|e| usage(e.to_string()))?
        }
        (Ok((g, _)), None) => g,
    };
    checks.push(Check::new(format!("Gram symmetry level {}", n), "verma.symmetry", g.is_symmetric()));
    if n <= ctx.cfg.bounds.gram_compare {
        let a = verma::gram_abstract_perturbed(n, spec, ctx.delta.as_ref());
        let ok = a.entries == g.entries;
        checks.push(Check::new(format!("Fock = abstract level {}", n), "verma.engines", ok));
    }
    let entries: Vec<Vec<String>> = g.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let parts: Vec<String> = g.parts.iter().map(|p| p.to_string()).collect();
    Ok(("gram", checks, json!({ "level": n, "weight": spec.key(), "parts": parts, "entries": entries })))
}

fn basis_checks(
    n: usize,
    ip: &InnerProduct<RatFunc>,
    what: &str,
    build: impl Fn(&Partition) -> Result<symfunc::SymFunc<RatFunc>, String>,
) -> Vec<Check> {
    let mut checks = Vec::new();
    for d in 1..=n {
        let ps = partitions_of(d);
        let mut polys = Vec::new();
        for l in &ps {
            match build(l) {
                Ok(f) => polys.push(f),
                Err(e) => {
                    checks.push(Check::fail(format!("{} P{}", what, l), format!("symfunc.{}", what), e));
                    return checks;
                }
            }
        }
        let tri = ps.iter().zip(&polys).all(|(l, f)| symfunc::is_triangular(f, l));
        checks.push(Check::new(format!("{} triangularity degree {}", what, d), format!("symfunc.{}", what), tri));
        let mut orth = true;
        for i in 0..polys.len() {
            for j in 0..i {
                if !symfunc::pairing(ip, &polys[i], &polys[j]).is_zero() {
                    orth = false;
                }
            }
        }
        checks.push(Check::new(format!("{} orthogonality degree {}", what, d), format!("symfunc.{}", what), orth));
    }
    checks
}

fn cmd_counting(n: usize, big_n: Option<usize>, r: Option<usize>, s: Option<usize>) -> Result<Dispatched, Outcome> {
    let ps = partitions_of(n);
    let p = partitions::count_p(n);
    let mut checks = vec![Check::new(format!("p({})", n), "partitions.count", p == ps.len() as u64)];
    let mut data = json!({ "n": n, "p": p });
    if let Some(big_n) = big_n {
        let pn = partitions::count_p_n(big_n, n).map_err(|e| usage(e.to_string()))?;
        let brute = ps.iter().filter(|l| l.multiplicities().iter().all(|&(_, m)| m < big_n)).count() as u64;
        checks.push(Check::new(format!("p_{}({})", big_n, n), "partitions.count", pn == brute));
        data["N"] = json!(big_n);
        data["p_N"] = json!(pn);
        if let (Some(r), Some(s)) = (r, s) {
            let qn = partitions::count_q_n(big_n, r, s, n).map_err(|e| usage(e.to_string()))?;
            let brute = ps
                .iter()
                .filter(|l| {
                    l.multiplicities().iter().all(|&(k, m)| if k == r { m + s < big_n } else { m < big_n })
                })
                .count() as u64;
            checks.push(Check::new(format!("q_{},{},{}({})", big_n, r, s, n), "partitions.count", qn == brute));
            data["r"] = json!(r);
            data["s"] = json!(s);
            data["q"] = json!(qn);
        }
    } else if r.is_some() || s.is_some() {
        return Err(usage("--r and --s need --N"));
    }
    Ok(("counting", checks, data))
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Outcome::Usage(msg) => {
            eprintln!("error: {}", msg);
            EXIT_USAGE
        }
        Outcome::Done(report) => {
            let fmt = match format {
                Some(f) => f,
                None => serde_json::from_value(report.config["format"].clone()).unwrap_or(Format::Json),
            };
            let text = match fmt {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{}", text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {}", e);
                return EXIT_FAIL;
            }
            if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deltas() {
        assert_eq!(parse_delta("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_delta("-2").unwrap(), BigRational::from_integer((-2).into()));
        assert!(parse_delta("1/0").is_err());
        assert!(parse_delta("x").is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("hrs:2,1").unwrap(), verma::WeightSpec::AtHrs(2, 1));
        assert_eq!(parse_weight("bridge-b").unwrap(), verma::WeightSpec::BridgeB);
        assert!(parse_weight("hrs:0,1").is_err());
        assert!(parse_weight("other").is_err());
    }

    #[test]
    fn toml_partial_override() {
        let c = RunConfig::from_toml("seed = 7\n[bounds]\nkac = 2\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.bounds.kac, 2);
        assert_eq!(c.bounds.gram, Bounds::default().gram);
        assert!(RunConfig::from_toml("sed = 7").is_err());
    }

    #[test]
    fn bound_violation_is_usage() {
        let cli = Cli::try_parse_from(["qvir", "kac", "--n", "99"]).unwrap();
        assert!(matches!(execute(&cli), Outcome::Usage(_)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["qvir", "kac", "--n", "1", "--format", "text", "-o", "/dev/null"]), EXIT_OK);
        assert_eq!(run(["qvir", "kac", "--n", "1", "--perturb-f1", "1/3", "-o", "/dev/null"]), EXIT_FAIL);
        assert_eq!(run(["qvir", "frobnicate"]), EXIT_USAGE);
    }
}
