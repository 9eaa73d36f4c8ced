use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use thiserror::Error;

use qsym_core::diamond::{self, QuasiWittVector};
use qsym_core::lyndon::{self, Admissibility};
use qsym_core::ncps::{verify_coaction_w, DualSteenrodModel};
use qsym_core::ring::scalar_string;
use qsym_core::steenrod::SteenrodContext;
use qsym_core::witt::{symm, WittVector};
use qsym_core::{Composition, Ring, Scalar};

use crate::expr::{self, ExprError, Value};
use crate::harness::{self, HarnessError};

#[derive(Debug, Parser)]
#[command(name = "qsym", version, about = "Exact arithmetic in QSymm, NSymm, Symm and their relatives")]
pub struct Cli {
    /// Coefficient ring: Z, Q, Fp:<p> or Zp:<p>.
    #[arg(long, global = true, default_value = "Z", value_parser = parse_ring)]
    pub ring: Ring,
    /// Truncation (Witt length, degree bound or t-order, depending on the command).
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression such as "[3]*[1,2]" or "antipode(Z2)".
    Eval { expr: String },
    /// Lyndon compositions of n, or Lyndon words of length n over {1..k}.
    Lyndon {
        n: usize,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Basic products of length n over {1..k} with their flattened words.
    BasicProducts {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        /// Use rank(w1) < serial(w2) instead of ≤.
        #[arg(long)]
        strict: bool,
    },
    /// Check that flattening basic products is a bijection onto Lyndon words.
    Bijection {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Apply the reduced power P^k over F_p to a QSymm element.
    Steenrod {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        element: String,
    },
    #[command(subcommand)]
    Witt(WittCommand),
    #[command(subcommand)]
    Qwitt(QwittCommand),
    /// Diamond product of two NSymm elements.
    Diamond { left: String, right: String },
    #[command(subcommand)]
    Mxi(MxiCommand),
    /// Polynomiality checks on QSymm through degree --trunc (default 8).
    DittersVerify {
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
        /// Largest degree accepted without complaint.
        #[arg(long, default_value_t = harness::DEFAULT_DEGREE_BOUND)]
        bound: usize,
    },
    /// Hochschild ranks of NSymm in internal degrees 2..2n.
    ThhRanks { n: usize },
}

#[derive(Debug, Subcommand)]
pub enum WittCommand {
    Add { left: String, right: String },
    Mul { left: String, right: String },
    Ghost { vector: String },
    /// Compare the graded and ghost-multiplicative readings of ψ_⊗.
    ComparePsi,
}

#[derive(Debug, Args)]
pub struct QwittPair {
    /// JSON: {"point": [...]}, {"values": {"1,2": "3", ...}} or {"lyndon": {...}}.
    left: String,
    right: String,
}

#[derive(Debug, Subcommand)]
pub enum QwittCommand {
    /// Convolution product.
    Add(QwittPair),
    /// Diamond product.
    Mul(QwittPair),
}

#[derive(Debug, Subcommand)]
pub enum MxiCommand {
    /// Coaction of the dual Steenrod model on the coefficients of w(t).
    Coaction {
        #[arg(long)]
        p: u64,
        /// Include the abelianized closed-form checks in the output.
        #[arg(long)]
        abelianized: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse::<Ring>().map_err(|e| e.to_string())
}

/// What a command printed and whether its verification (if any) passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, passed: true }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.format == Format::Json;
    let ring = cli.ring;
    let emit = |text: String, j: Json| if json { serde_json::to_string_pretty(&j).expect("json") } else { text };
    match &cli.command {
        Command::Eval { expr } => {
            let v = expr::evaluate(expr, ring)?;
            Ok(Outcome::ok(emit(v.render(), v.to_json(ring))))
        }
        Command::Lyndon { n, k } => {
            let words = match k {
                Some(k) => lyndon::lyndon_by_length(*k, *n),
                None => lyndon::lyndon_by_degree(*n),
            };
            let text = words.iter().map(|w| lyndon::render_word(w)).collect::<Vec<_>>().join("\n");
            Ok(Outcome::ok(emit(text, json!({ "n": n, "k": k, "count": words.len(), "words": words }))))
        }
        Command::BasicProducts { k, n, strict } => {
            let rule = if *strict { Admissibility::Strict } else { Admissibility::NonStrict };
            let trees = lyndon::basic_products_with(*k, *n, rule);
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in &trees {
                let word = lyndon::basic_to_lyndon(t).map_err(invalid)?;
                let _ = writeln!(text, "{:>4}  {}  ->  {}", t.serial(), t, lyndon::render_word(&word));
                rows.push(json!({ "serial": t.serial(), "rank": t.rank(), "tree": t.to_string(), "word": word }));
            }
            let _ = write!(text, "{} basic products", trees.len());
            Ok(Outcome::ok(emit(text, json!({ "k": k, "n": n, "strict": strict, "trees": rows }))))
        }
        Command::Bijection { k, n } => {
            let r = lyndon::bijection_report(*k, *n);
            let collisions: Vec<Json> =
                r.collisions.iter().map(|(w, ts)| json!({ "word": lyndon::render_word(w), "trees": ts })).collect();
            let mut text = format!(
                "k={} n={}: {} trees, {} Lyndon words, necklace count {}; images Lyndon: {}; injective: {}",
                k,
                n,
                r.tree_count(),
                r.lyndon_count,
                r.necklace_count,
                r.images_are_lyndon,
                r.is_injective()
            );
            for c in &collisions {
                let _ = write!(text, "\n  collision {} <- {}", c["word"].as_str().unwrap_or(""), c["trees"]);
            }
            let verdict = if r.is_bijection() { "PASS" } else { "FAIL" };
            let _ = write!(text, "\n{verdict}");
            let j = json!({
                "k": k, "n": n, "trees": r.tree_count(), "lyndon": r.lyndon_count,
                "necklace": r.necklace_count.to_string(), "images_are_lyndon": r.images_are_lyndon,
                "injective": r.is_injective(), "collisions": collisions, "verdict": verdict,
            });
            Ok(Outcome { output: emit(text, j), passed: r.is_bijection() })
        }
        Command::Steenrod { p, k, element } => {
            let ctx = SteenrodContext::new(*p).map_err(invalid)?;
            let field = ctx.ring();
            let Value::QSymm(x) = expr::evaluate(element, field)? else {
                return Err(invalid("steenrod expects a QSymm element"));
            };
            let v = Value::QSymm(ctx.apply(*k, &x).map_err(invalid)?);
            Ok(Outcome::ok(emit(v.render(), v.to_json(field))))
        }
        Command::Witt(w) => witt(w, ring, cli.trunc, json),
        Command::Qwitt(q) => qwitt(q, ring, cli.trunc.unwrap_or(4), json),
        Command::Diamond { left, right } => {
            let (Value::NSymm(a), Value::NSymm(b)) = (expr::evaluate(left, ring)?, expr::evaluate(right, ring)?) else {
                return Err(invalid("diamond expects two NSymm elements"));
            };
            let v = Value::NSymm(diamond::diamond(&a, &b).map_err(invalid)?);
            Ok(Outcome::ok(emit(v.render(), v.to_json(ring))))
        }
        Command::Mxi(MxiCommand::Coaction { p, abelianized }) => {
            let trunc = cli.trunc.unwrap_or(8);
            let model = DualSteenrodModel::for_truncation(*p, trunc).map_err(invalid)?;
            let r = verify_coaction_w(trunc, &model).map_err(invalid)?;
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            let mut text = format!("p={} trunc={} generators={}\n", r.p, r.trunc, r.generators);
            for (i, (w, psi)) in r.w.iter().zip(&r.psi_w).enumerate() {
                let _ = writeln!(text, "w{n} = {w}\npsi(w{n}) = {psi}", n = i + 1);
            }
            let _ = writeln!(
                text,
                "conjugation: {}  recursion: {}  closed form: {}  graded: {}  comultiplicative: {}",
                r.conjugation_holds, r.recursion_matches_algebra_map, r.closed_form_matches, r.graded, r.comultiplicative
            );
            let checks: Vec<Json> =
                r.abelianized.iter().map(|c| json!({ "r": c.r, "degree": c.degree, "holds": c.holds })).collect();
            if *abelianized {
                for c in &r.abelianized {
                    let _ = writeln!(text, "abelianized m{}: {}", c.degree, c.holds);
                }
            }
            let _ = write!(text, "{verdict}");
            let mut j = json!({
                "schema_version": harness::SCHEMA_VERSION,
                "check": "coaction",
                "parameters": { "p": r.p, "trunc": r.trunc, "generators": r.generators },
                "w": r.w, "psi_w": r.psi_w,
                "conjugation": r.conjugation_holds, "recursion": r.recursion_matches_algebra_map,
                "closed_form": r.closed_form_matches, "graded": r.graded, "comultiplicative": r.comultiplicative,
                "verdict": verdict,
            });
            if *abelianized {
                j["abelianized"] = Json::Array(checks);
            }
            Ok(Outcome { output: emit(text, j), passed: r.passed() })
        }
        Command::DittersVerify { primes, bound } => {
            let n = cli.trunc.unwrap_or(harness::DEFAULT_DEGREE_BOUND);
            let r = harness::ditters_verify_bounded(n, primes, *bound)?;
            let mut text = String::from("  n  pi (char:dim)  lyndon  poincare  snf\n");
            for row in &r.degrees {
                let pis: Vec<String> = row.pi.iter().map(|(p, d)| format!("{p}:{d}")).collect();
                let _ = writeln!(
                    text,
                    "{:>3}  {}  {}  {}/{}  {}  {}",
                    row.n,
                    pis.join(","),
                    row.lyndon,
                    row.poincare_product,
                    row.poincare_expected,
                    row.snf_max_factor.as_deref().unwrap_or("-"),
                    row.verdict
                );
            }
            let _ = write!(text, "{}", r.verdict);
            Ok(Outcome { output: if json { r.to_json() } else { text }, passed: r.passed() })
        }
        Command::ThhRanks { n } => {
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut ok = true;
            for m in 1..=*n {
                let (hh0, hh1) = harness::hh_ranks(m)?;
                let oracle = if m <= 6 { Some(harness::hh_linear_algebra(m)?) } else { None };
                let agrees = oracle
                    .as_ref()
                    .is_none_or(|o| o.coinvariants == hh0 && o.invariants == hh1 && o.coinvariants_free);
                ok &= agrees;
                let _ = writeln!(
                    text,
                    "degree {}: HH_0 = {hh0}, HH_1 = {hh1}{}",
                    2 * m,
                    if oracle.is_some() { if agrees { "  (oracle agrees)" } else { "  (oracle DISAGREES)" } } else { "" }
                );
                rows.push(json!({ "n": m, "hh0": hh0, "hh1": hh1, "oracle": oracle }));
            }
            let verdict = if ok { "PASS" } else { "FAIL" };
            text.push_str(verdict);
            let j = json!({ "schema_version": harness::SCHEMA_VERSION, "check": "hh-ranks", "ranks": rows, "verdict": verdict });
            Ok(Outcome { output: emit(text, j), passed: ok })
        }
    }
}

fn parse_scalar(ring: Ring, s: &str) -> Result<Scalar, CliError> {
    let q: Scalar = s.trim().parse().map_err(|_| invalid(format!("not a number: '{s}'")))?;
    ring.element(q).map_err(invalid)
}

fn parse_vector(ring: Ring, s: &str, trunc: Option<usize>) -> Result<WittVector, CliError> {
    let mut coords: Vec<Scalar> =
        s.trim_matches(|c| c == '[' || c == ']').split(',').map(|c| parse_scalar(ring, c)).collect::<Result<_, _>>()?;
    if let Some(n) = trunc {
        if coords.len() > n {
            return Err(invalid(format!("vector has {} coordinates, more than --trunc {n}", coords.len())));
        }
        coords.resize(n, ring.zero());
    }
    WittVector::new(ring, coords).map_err(invalid)
}

fn render_scalars(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(scalar_string).collect()
}

fn witt(cmd: &WittCommand, ring: Ring, trunc: Option<usize>, json: bool) -> Result<Outcome, CliError> {
    let (text, j) = match cmd {
        WittCommand::Add { left, right } | WittCommand::Mul { left, right } => {
            let n = trunc.unwrap_or_else(|| left.split(',').count().max(right.split(',').count()));
            let (a, b) = (parse_vector(ring, left, Some(n))?, parse_vector(ring, right, Some(n))?);
            let r = if matches!(cmd, WittCommand::Add { .. }) { a.add(&b) } else { a.mul(&b) }.map_err(invalid)?;
            let coords = render_scalars(r.coords());
            (coords.join(", "), json!({ "ring": ring.tag(), "coords": coords }))
        }
        WittCommand::Ghost { vector } => {
            let g = render_scalars(&parse_vector(ring, vector, trunc)?.ghost().map_err(invalid)?);
            (g.join(", "), json!({ "ring": ring.tag(), "ghost": g }))
        }
        WittCommand::ComparePsi => {
            let rows = symm::compare_psi(trunc.unwrap_or(4));
            let text = rows
                .iter()
                .map(|r| format!("s{}: graded {} | ghost {} | equal: {}", r.n, r.graded, r.ghost_multiplicative, r.equal))
                .collect::<Vec<_>>()
                .join("\n");
            let j: Vec<Json> = rows
                .iter()
                .map(|r| json!({ "n": r.n, "graded": r.graded, "ghost": r.ghost_multiplicative, "equal": r.equal }))
                .collect();
            (text, Json::Array(j))
        }
    };
    Ok(Outcome::ok(if json { serde_json::to_string_pretty(&j).expect("json") } else { text }))
}

fn json_scalar(ring: Ring, v: &Json) -> Result<Scalar, CliError> {
    match v {
        Json::Number(n) => parse_scalar(ring, &n.to_string()),
        Json::String(s) => parse_scalar(ring, s),
        other => Err(invalid(format!("expected a number, got {other}"))),
    }
}

fn parse_key(s: &str) -> Result<Composition, CliError> {
    let inner = s.trim().trim_matches(|c| c == '[' || c == ']');
    if inner.trim().is_empty() {
        return Ok(Composition::empty());
    }
    let parts = inner.split(',').map(|p| p.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
    Composition::new(parts).map_err(invalid)
}

fn key_values(ring: Ring, obj: &Json) -> Result<BTreeMap<Composition, Scalar>, CliError> {
    let map = obj.as_object().ok_or_else(|| invalid("expected an object of composition values"))?;
    map.iter().map(|(k, v)| Ok((parse_key(k)?, json_scalar(ring, v)?))).collect()
}

fn parse_functional(ring: Ring, len: usize, spec: &str) -> Result<QuasiWittVector, CliError> {
    let j: Json = serde_json::from_str(spec).map_err(|e| invalid(format!("functional spec: {e}")))?;
    if let Some(point) = j.get("point") {
        let xs = point.as_array().ok_or_else(|| invalid("\"point\" must be an array"))?;
        let xs: Vec<Scalar> = xs.iter().map(|x| json_scalar(ring, x)).collect::<Result<_, _>>()?;
        return QuasiWittVector::evaluation(ring, len, &xs).map_err(invalid);
    }
    if let Some(values) = j.get("values") {
        let mut values = key_values(ring, values)?;
        values.entry(Composition::empty()).or_insert_with(|| ring.one());
        return QuasiWittVector::from_values(ring, len, values).map_err(invalid);
    }
    if let Some(values) = j.get("lyndon") {
        if ring != Ring::Rationals {
            return Err(invalid("Lyndon-generated functionals need --ring Q"));
        }
        return QuasiWittVector::from_lyndon_values(len, &key_values(ring, values)?).map_err(invalid);
    }
    Err(invalid("functional spec needs one of \"point\", \"values\" or \"lyndon\""))
}

fn qwitt(cmd: &QwittCommand, ring: Ring, len: usize, json: bool) -> Result<Outcome, CliError> {
    let (QwittCommand::Add(pair) | QwittCommand::Mul(pair)) = cmd;
    let f = parse_functional(ring, len, &pair.left)?;
    let g = parse_functional(ring, len, &pair.right)?;
    let r = match cmd {
        QwittCommand::Add(_) => f.star(&g),
        QwittCommand::Mul(_) => f.diamond(&g),
    }
    .map_err(invalid)?;
    let rows: Vec<(String, String)> = r.values().iter().map(|(k, v)| (k.to_string(), scalar_string(v))).collect();
    let text = rows.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join("\n");
    let j = json!({
        "ring": ring.tag(),
        "trunc": len,
        "values": rows.iter().map(|(k, v)| json!({ "key": k, "value": v })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(if json { serde_json::to_string_pretty(&j).expect("json") } else { text }))
}
