//! One function per batch command. Each returns a JSON report and an exit
//! status; errors become reports too.

use std::cmp::Ordering;
use std::io::Read;

use altlex::hyperspace::{check_witness, psi_compact, witness_between};
use altlex::kl::{self, FinitaryFunction, StageList, UscOrder};
use altlex::order::{compile, verify_chain_with, ChainReport, OrderExpr, PointExpr};
use altlex::ordinal::{from_text, to_text};
use altlex::rational::q;
use altlex::seq::{altlex_compare_with, delta_first_difference};
use altlex::{Error, Ordinal, Parity, Result, TransfiniteSeq};
use clap::Subcommand;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::selftest::Fault;

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Order two sequences.
    Cmp { a: String, b: String },
    /// First index where two sequences differ.
    Delta { a: String, b: String },
    /// Canonical presentation.
    Canon { x: String },
    /// Even-length image preserving the order.
    Evenize { x: String },
    /// Compile an order expression, map its points and audit the images.
    Embed {
        expr: String,
        /// Point list; defaults to every point of a finite expression.
        points: Option<String>,
        /// Real samples for `real_base` factors, as a JSON list of rationals.
        #[arg(long)]
        reals: Option<String>,
    },
    /// Transfinite alternating decomposition of a function.
    Decompose { f: String },
    /// Generalized alternating sum of a stage list.
    Starsum {
        stages: String,
        /// Ordinal bound in CNF text; defaults to the list length.
        upto: Option<String>,
    },
    /// Compare the decompositions of `f0 < f1`.
    Klcmp { f0: String, f1: String },
    /// Order the sequence images of two functions.
    ThetaCmp { f0: String, f1: String },
    /// Compact figure of a sequence.
    Psi { x: String },
    /// Separating witness for `x < y`.
    Witness { x: String, y: String },
    /// Re-check a witness.
    CheckWitness { x: String, y: String, w: String },
    /// Check that a list of sequences is strictly increasing.
    VerifyChain { list: String },
    /// Run the acceptance corpus.
    Selftest,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub seed: u64,
    pub budget: usize,
    pub precision: u32,
    pub fault: Option<Fault>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            seed: 0,
            budget: kl::decompose::DEFAULT_BUDGET,
            precision: 40,
            fault: None,
        }
    }
}

impl Flags {
    fn parity(&self) -> fn(&Ordinal) -> Parity {
        match self.fault {
            None => Ordinal::parity,
            Some(Fault::Parity) => |o| o.parity().flip(),
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

/// A report object starting with the version field.
pub fn report(fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(crate::VERSION));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

pub fn error_report(e: &Error) -> Value {
    let mut err = Map::new();
    err.insert("kind".into(), json!(e.kind()));
    err.insert("message".into(), json!(e.to_string()));
    match e {
        Error::BudgetExceeded { steps, trace } => {
            err.insert("steps".into(), json!(steps));
            err.insert("trace".into(), Value::Array(trace.iter().map(FinitaryFunction::to_json).collect()));
        }
        Error::ParityViolation { delta, detail } => {
            err.insert("delta".into(), json!(to_text(delta)));
            err.insert("detail".into(), json!(detail));
        }
        _ => {}
    }
    report(vec![("error", Value::Object(err))])
}

/// Inline JSON when the argument looks like JSON, `-` for standard input,
/// otherwise a file path.
pub fn load(arg: &str) -> Result<Value> {
    let text = match arg.trim_start().chars().next() {
        Some('{' | '[' | '"') => arg.to_string(),
        _ if arg == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Validation(format!("reading standard input: {e}")))?;
            s
        }
        _ => std::fs::read_to_string(arg).map_err(|e| Error::Validation(format!("reading {arg}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Error::Validation(format!("parsing {arg}: {e}")))
}

fn parse<T: DeserializeOwned>(arg: &str) -> Result<T> {
    serde_json::from_value(load(arg)?).map_err(|e| {
        let msg = e.to_string();
        Error::Validation(format!("{arg}: {}", msg.trim_start_matches("validation error: ")))
    })
}

fn member(arg: &str) -> Result<TransfiniteSeq> {
    let x: TransfiniteSeq = parse(arg)?;
    if !x.is_universal() {
        return Err(Error::Validation(format!("{arg}: last element must be 0")));
    }
    Ok(x)
}

fn order_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn ord(o: &Ordinal) -> Value {
    json!(to_text(o))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn usc_order_json(u: &UscOrder, k: u32) -> Value {
    match u {
        UscOrder::Equal => json!({"relation": "equal"}),
        UscOrder::Less(c) | UscOrder::Greater(c) => json!({
            "relation": order_str(u.ordering()),
            "box_index": c.n.to_string(),
            "box": to_value(&c.basic_box.describe(k)),
        }),
        UscOrder::Incomparable { n, order } => json!({
            "relation": "incomparable",
            "order": order_str(*order),
            "box_index": n.to_string(),
        }),
    }
}

fn decomposition_json(d: &kl::Decomposition) -> Value {
    json!({
        "rank": ord(&d.rank),
        "indices": d.indices.iter().map(ord).collect::<Vec<_>>(),
        "stages": d.stages.iter().map(FinitaryFunction::to_json).collect::<Vec<_>>(),
        "trace": d.trace.iter().map(FinitaryFunction::to_json).collect::<Vec<_>>(),
    })
}

fn ok(fields: Vec<(&str, Value)>) -> Result<Outcome> {
    Ok(Outcome {
        report: report(fields),
        code: 0,
    })
}

fn with_code(fields: Vec<(&str, Value)>, code: i32) -> Result<Outcome> {
    Ok(Outcome {
        report: report(fields),
        code,
    })
}

fn default_reals() -> Vec<altlex::Q> {
    (0..=4).map(|i| q(i, 4)).collect()
}

fn try_run(cmd: &Command, flags: &Flags) -> Result<Outcome> {
    let parity = flags.parity();
    match cmd {
        Command::Cmp { a, b } => {
            let (x, y) = (member(a)?, member(b)?);
            let r = altlex_compare_with(&x, &y, parity)?;
            ok(vec![
                ("order", json!(order_str(r.order))),
                ("delta", r.delta.as_ref().map_or(Value::Null, ord)),
                ("parity", r.delta.as_ref().map_or(Value::Null, |d| json!(parity(d).as_str()))),
            ])
        }
        Command::Delta { a, b } => {
            let (x, y): (TransfiniteSeq, TransfiniteSeq) = (parse(a)?, parse(b)?);
            let d = delta_first_difference(&x, &y)?;
            ok(vec![("delta", ord(&d)), ("parity", json!(parity(&d).as_str()))])
        }
        Command::Canon { x } => {
            let x: TransfiniteSeq = parse(x)?;
            ok(vec![("seq", to_value(&x.canonical()))])
        }
        Command::Evenize { x } => {
            let e = member(x)?.evenize();
            ok(vec![
                ("seq", to_value(&e)),
                ("length", ord(&e.length())),
                ("parity", json!(e.length().parity().as_str())),
            ])
        }
        Command::Embed { expr, points, reals } => {
            let e: OrderExpr = parse(expr)?;
            e.validate()?;
            let emb = compile(&e)?;
            let reals: Vec<altlex::Q> = match reals {
                Some(r) => {
                    let v: Vec<String> = parse(r)?;
                    v.iter()
                        .map(|s| altlex::rational::parse(s).map_err(Error::Validation))
                        .collect::<Result<_>>()?
                }
                None => default_reals(),
            };
            let mut pts: Vec<PointExpr> = match points {
                Some(p) => parse(p)?,
                None => e.points(&reals)?,
            };
            let mut sort_err = None;
            pts.sort_by(|a, b| {
                e.compare_points(a, b).unwrap_or_else(|err| {
                    sort_err.get_or_insert(err);
                    Ordering::Equal
                })
            });
            if let Some(err) = sort_err {
                return Err(err);
            }
            pts.dedup_by(|a, b| e.compare_points(a, b).ok() == Some(Ordering::Equal));
            let images = pts.iter().map(|p| emb.apply(p)).collect::<Result<Vec<_>>>()?;
            let chain = verify_chain_with(&images, parity)?;
            let code = if chain == ChainReport::Ok { 0 } else { 3 };
            let listed: Vec<Value> = pts
                .iter()
                .zip(&images)
                .map(|(p, s)| json!({"point": to_value(p), "image": to_value(s), "length": ord(&s.length())}))
                .collect();
            with_code(vec![("images", Value::Array(listed)), ("chain", to_value(&chain))], code)
        }
        Command::Decompose { f } => {
            let f: FinitaryFunction = parse(f)?;
            let d = kl::decompose_with_budget(&f, flags.budget)?;
            let v = kl::verify(&f, &d)?;
            let code = if v.all_passed() { 0 } else { 3 };
            let checks: Vec<Value> = v
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "result": if c.passed { "pass" } else { "fail" }, "detail": c.detail}))
                .collect();
            with_code(vec![("decomposition", decomposition_json(&d)), ("checks", Value::Array(checks))], code)
        }
        Command::Starsum { stages, upto } => {
            let fs: Vec<FinitaryFunction> = parse(stages)?;
            let upto = match upto {
                Some(u) => from_text(u)?,
                None => Ordinal::from(fs.len() as u64),
            };
            let r = kl::star_sum(&StageList::finite(&fs), &upto)?;
            ok(vec![("upto", ord(&upto)), ("result", r.to_json())])
        }
        Command::Klcmp { f0, f1 } => {
            let (f0, f1): (FinitaryFunction, FinitaryFunction) = (parse(f0)?, parse(f1)?);
            let c = kl::compare_decompositions_with(&f0, &f1, parity)?;
            ok(vec![
                ("delta", ord(&c.delta)),
                ("parity", json!(c.parity.as_str())),
                ("pair", json!([c.pair.0.to_json(), c.pair.1.to_json()])),
                ("rank0", ord(&c.d0.rank)),
                ("rank1", ord(&c.d1.rank)),
            ])
        }
        Command::ThetaCmp { f0, f1 } => {
            let (f0, f1): (FinitaryFunction, FinitaryFunction) = (parse(f0)?, parse(f1)?);
            let c = kl::theta_compare(&f0, &f1)?;
            let seq = |f: &FinitaryFunction| match kl::theta_sequence(f, flags.precision) {
                Ok(s) => to_value(&s),
                Err(e) => json!({"error": e.kind(), "message": e.to_string()}),
            };
            ok(vec![
                ("order", json!(order_str(c.order))),
                ("delta", c.delta.as_ref().map_or(Value::Null, ord)),
                ("parity", c.delta.as_ref().map_or(Value::Null, |d| json!(d.parity().as_str()))),
                ("stage_order", c.stage_order.as_ref().map_or(Value::Null, |u| usc_order_json(u, f0.k()))),
                ("rank0", ord(&c.d0.rank)),
                ("rank1", ord(&c.d1.rank)),
                ("precision", json!(flags.precision)),
                ("sequences", json!([seq(&f0), seq(&f1)])),
            ])
        }
        Command::Psi { x } => {
            let x = member(x)?;
            ok(vec![("figure", to_value(&psi_compact(&x)))])
        }
        Command::Witness { x, y } => {
            let (x, y) = (member(x)?, member(y)?);
            let w = witness_between(&x, &y)?;
            let rep = check_witness(&x, &y, &w)?;
            let code = if rep.all_passed() { 0 } else { 3 };
            with_code(vec![("witness", to_value(&w)), ("report", to_value(&rep))], code)
        }
        Command::CheckWitness { x, y, w } => {
            let (x, y, w) = (member(x)?, member(y)?, parse::<TransfiniteSeq>(w)?);
            let rep = check_witness(&x, &y, &w)?;
            let code = if rep.all_passed() { 0 } else { 1 };
            with_code(vec![("passed", json!(rep.all_passed())), ("report", to_value(&rep))], code)
        }
        Command::VerifyChain { list } => {
            let seqs: Vec<TransfiniteSeq> = parse(list)?;
            let chain = verify_chain_with(&seqs, parity)?;
            let code = if chain == ChainReport::Ok { 0 } else { 1 };
            with_code(vec![("chain", to_value(&chain))], code)
        }
        Command::Selftest => {
            let mut cfg = crate::selftest::Config::new(flags.seed);
            cfg.fault = flags.fault;
            let (rep, timings) = crate::selftest::run(&cfg);
            for (id, t) in timings {
                eprintln!("criterion {id:>2}: {:.2}s", t.as_secs_f64());
            }
            let code = rep.exit_code();
            Ok(Outcome {
                report: to_value(&rep),
                code,
            })
        }
    }
}

pub fn run(cmd: &Command, flags: &Flags) -> Outcome {
    try_run(cmd, flags).unwrap_or_else(|e| Outcome {
        report: error_report(&e),
        code: e.exit_code(),
    })
}
