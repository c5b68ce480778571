//! `nras`: command-line front end for network semigroups.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nras_core::ideal::source_element;
use nras_core::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nras",
    version,
    about = "Normal forms, products and structure checks for network semigroups"
)]
struct Cli {
    /// Network description file.
    #[arg(long, global = true)]
    network: Option<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        word: String,
        #[arg(long)]
        trace: bool,
        /// Use the two-sided presentation rules without the completion rule.
        #[arg(long)]
        literal: bool,
    },
    /// Product of two elements.
    Mul { a: String, b: String },
    /// The idempotent `a*`.
    Star { a: String },
    /// Idempotency, regularity, membership and inverse of an element.
    Props { a: String },
    /// Elements of total length at most the ball radius.
    Enum {
        #[arg(long, default_value_t = 4)]
        ball: usize,
        #[arg(long, default_value = "Q")]
        sub: Sub,
    },
    /// Maximal idempotents and covering pairs of the natural order.
    Order {
        #[arg(long, default_value_t = 4)]
        ball: usize,
    },
    /// Vertex-set and relation idempotents with their incidence.
    Skeleton {
        #[arg(long, default_value_t = 4)]
        ball: usize,
    },
    /// Local confluence over all overlapping rule pairs.
    Confluence {
        #[arg(long)]
        literal: bool,
    },
    /// Trace of an ideal on a ball: `nonlinear` or `principal:<relation>`.
    Ideal {
        kind: String,
        #[arg(long, default_value = "Q")]
        carrier: Sub,
        #[arg(long, default_value_t = 4)]
        ball: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Isomorphism between two networks and its action on products.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 3)]
        ball: usize,
    },
    /// The four-vertex worked example.
    Example6,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Report {
    command: &'static str,
    network: Value,
    result: Value,
    witnesses: Value,
    text: String,
    pass: bool,
}

impl Report {
    fn new(command: &'static str, network: Value) -> Self {
        Report {
            command,
            network,
            result: Value::Null,
            witnesses: json!([]),
            text: String::new(),
            pass: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "command": self.command,
            "network": self.network,
            "result": self.result,
            "witnesses": self.witnesses,
        }))
        .expect("serializable")
    }
}

fn load(path: &PathBuf) -> Result<Network, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Network::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn elements(q: &QSemigroup, es: &[QElement]) -> Value {
    Value::Array(es.iter().map(|e| json!(q.format_element(e))).collect())
}

fn parse_elem(q: &QSemigroup, s: &str) -> Result<QElement, Failure> {
    q.parse_element(s)
        .map_err(|e| usage(format!("bad element `{s}`: {e}")))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    if let Command::Iso {
        first,
        second,
        ball,
    } = &cli.command
    {
        return iso(first, second, *ball);
    }
    if let Command::Example6 = cli.command {
        return Ok(example6());
    }
    let path = cli
        .network
        .as_ref()
        .ok_or_else(|| usage("this command needs --network FILE"))?;
    let net = load(path)?;
    let q = QSemigroup::new(&net);
    let origin = json!(path.display().to_string());
    let mut r;
    match cli.command {
        Command::Nf {
            word,
            trace,
            literal,
        } => {
            r = Report::new("nf", origin);
            let w = net
                .parse_word(&word)
                .map_err(|e| usage(format!("bad word `{word}`: {e}")))?;
            let rules = if literal {
                RuleSet::Presentation
            } else {
                RuleSet::Completed
            };
            let (nf, steps) = Rewriter::new(&net, rules).normal_form(&w);
            let nf = net.format_word(&nf);
            r.line(&nf);
            r.result = json!(nf);
            if trace {
                let mut ws = Vec::new();
                r.line(format!("0. {}", net.format_word(&steps.start)));
                for (k, s) in steps.steps.iter().enumerate() {
                    let shown = net.format_word(&s.result);
                    r.line(format!(
                        "{}. pos={} rule={} : {shown}",
                        k + 1,
                        s.position,
                        s.rule
                    ));
                    ws.push(json!({"pos": s.position, "rule": s.rule.to_string(), "word": shown}));
                }
                r.witnesses = Value::Array(ws);
            }
        }
        Command::Mul { a, b } => {
            r = Report::new("mul", origin);
            let p = q.multiply(&parse_elem(&q, &a)?, &parse_elem(&q, &b)?);
            let p = q.format_element(&p);
            r.line(&p);
            r.result = json!(p);
        }
        Command::Star { a } => {
            r = Report::new("star", origin);
            let s = q.format_element(&q.star(&parse_elem(&q, &a)?));
            r.line(&s);
            r.result = json!(s);
        }
        Command::Props { a } => {
            r = Report::new("props", origin);
            let e = parse_elem(&q, &a)?;
            let inverse = q.inverse(&e).map(|i| q.format_element(&i));
            let props = json!({
                "idempotent": q.is_idempotent(&e),
                "regular": q.is_regular(&e),
                "in_S": q.in_s(&e),
                "in_R": q.in_r(&e),
                "inverse": inverse,
            });
            for key in ["idempotent", "regular", "in_S", "in_R"] {
                r.line(format!("{key}: {}", props[key]));
            }
            r.line(format!("inverse: {}", inverse.as_deref().unwrap_or("none")));
            r.result = props;
        }
        Command::Enum { ball, sub } => {
            r = Report::new("enum", origin);
            let es = q.enumerate_ball(ball, sub);
            for e in &es {
                r.line(q.format_element(e));
            }
            r.result = elements(&q, &es);
        }
        Command::Order { ball } => {
            r = Report::new("order", origin);
            let rep = classify_maximal(&q, &q.enumerate_ball(ball, Sub::Q));
            let fmt = |s: &BTreeSet<QElement>| {
                s.iter()
                    .map(|e| format!("[{}]", q.format_element(e)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.line(format!("maximal in E(Q): {}", fmt(&rep.maximal_in_eq)));
            r.line(format!(
                "maximal in E without vertex sets: {}",
                fmt(&rep.maximal_in_e)
            ));
            r.line("covering pairs:");
            let mut pairs = Vec::new();
            for (e, f) in &rep.hasse_pairs {
                let (e, f) = (q.format_element(e), q.format_element(f));
                r.line(format!("  [{e}] < [{f}]"));
                pairs.push(json!([e, f]));
            }
            let list =
                |s: &BTreeSet<QElement>| elements(&q, &s.iter().cloned().collect::<Vec<_>>());
            r.result = json!({
                "maximal_in_eq": list(&rep.maximal_in_eq),
                "maximal_in_e": list(&rep.maximal_in_e),
            });
            r.witnesses = Value::Array(pairs);
        }
        Command::Skeleton { ball } => {
            r = Report::new("skeleton", origin);
            let sk = extract_skeleton(&q, &q.enumerate_ball(ball, Sub::Q))
                .map_err(|e| usage(e.to_string()))?;
            for (i, e) in sk.sub_idempotents.iter().enumerate() {
                r.line(format!("A{i} = [{}]", q.format_element(e)));
            }
            let overlaps: Vec<(usize, usize)> = sk.overlaps.iter().copied().collect();
            r.line(format!(
                "overlaps: {}",
                overlaps
                    .iter()
                    .map(|(i, j)| format!("A{i}A{j}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            let mut rows = Vec::new();
            for (k, t) in sk.t_idempotents.iter().enumerate() {
                let t = q.format_element(t);
                r.line(format!(
                    "[{t}]  source A{}  range A{}",
                    sk.source_of[k], sk.range_of[k]
                ));
                rows.push(
                    json!({"idempotent": t, "source": sk.source_of[k], "range": sk.range_of[k]}),
                );
            }
            r.result = json!({
                "sub_idempotents": elements(&q, &sk.sub_idempotents),
                "overlaps": overlaps,
                "relations": rows,
            });
        }
        Command::Confluence { literal } => {
            r = Report::new("confluence", origin);
            let rules = if literal {
                RuleSet::Presentation
            } else {
                RuleSet::Completed
            };
            let rep = Rewriter::new(&net, rules).check_local_confluence();
            let mut bad = Vec::new();
            for t in &rep.triples {
                let word = net.format_word(&t.word);
                r.line(format!(
                    "{word}  {}/{}  {}  {} | {}  {}",
                    t.left_rule,
                    t.right_rule,
                    t.case,
                    net.format_word(&t.left_nf),
                    net.format_word(&t.right_nf),
                    if t.joinable {
                        "joinable"
                    } else {
                        "NOT joinable"
                    }
                ));
                if !t.joinable {
                    bad.push(json!({
                        "word": word,
                        "rules": [t.left_rule.to_string(), t.right_rule.to_string()],
                        "normal_forms": [net.format_word(&t.left_nf), net.format_word(&t.right_nf)],
                    }));
                }
            }
            r.pass = rep.passes();
            r.line(format!(
                "local confluence ({} overlaps): {}",
                rep.triples.len(),
                verdict(r.pass)
            ));
            r.result = json!(verdict(r.pass));
            r.witnesses = Value::Array(bad);
        }
        Command::Ideal {
            kind,
            carrier,
            ball,
            verify,
        } => {
            r = Report::new("ideal", origin);
            let spec = if kind == "nonlinear" {
                nonlinear_ideal(carrier)
            } else if let Some(t) = kind.strip_prefix("principal:") {
                principal_star_ideal(&net, t, carrier)
            } else {
                return Err(usage(format!(
                    "unknown ideal `{kind}` (expected nonlinear or principal:<relation>)"
                )));
            };
            let spec = match spec {
                Ok(s) => s,
                Err(e @ IdealError::UnknownRelation(_)) => return Err(usage(e.to_string())),
                Err(e) => {
                    r.pass = false;
                    r.line(format!("FAIL: {e}"));
                    r.result = json!("FAIL");
                    r.witnesses = json!([e.to_string()]);
                    return Ok(r);
                }
            };
            let b = q.enumerate_ball(ball, carrier);
            let trace = spec.trace(&q, &b);
            r.line(format!(
                "{kind} over {carrier}, ball {ball}: {} elements",
                trace.len()
            ));
            for e in &trace {
                r.line(format!("  [{}]", q.format_element(e)));
            }
            r.result = json!({ "trace": elements(&q, &trace) });
            if verify {
                let rep = verify_ideal(&q, &spec, &b);
                r.pass = rep.passes();
                r.line(format!("absorbs: {}", verdict(rep.absorbs())));
                r.line(format!("proper: {}", verdict(rep.proper())));
                if spec.is_principal() {
                    r.line(format!("star closed: {}", verdict(rep.star_closed())));
                    r.line(format!(
                        "generated by its idempotent: {}",
                        verdict(rep.generated_matches != Some(false))
                    ));
                }
                r.line(format!(
                    "idempotent separating: {}",
                    rep.idempotent_separating()
                ));
                if let Some(h) = &spec.hypotheses {
                    if h.consequence_mismatch() {
                        r.line("note: covering condition holds but |r(t)| != 1");
                    }
                }
                r.line(format!("ideal: {}", verdict(r.pass)));
                let mut w: Vec<Value> = rep
                    .absorption_violations
                    .iter()
                    .map(|(a, s, p)| {
                        json!({
                            "absorption": [q.format_element(a), q.format_element(s), q.format_element(p)]
                        })
                    })
                    .collect();
                w.extend(
                    rep.star_violations
                        .iter()
                        .map(|a| json!({ "star": q.format_element(a) })),
                );
                if let Some(p) = &rep.properness_witness {
                    w.push(json!({ "outside": q.format_element(p) }));
                }
                r.result["verdict"] = json!(verdict(r.pass));
                r.result["idempotent_separating"] = json!(rep.idempotent_separating());
                r.witnesses = Value::Array(w);
            }
        }
        Command::Iso { .. } | Command::Example6 => unreachable!("handled above"),
    }
    Ok(r)
}

fn iso(first: &PathBuf, second: &PathBuf, ball: usize) -> Result<Report, Failure> {
    let (g, d) = (load(first)?, load(second)?);
    let mut r = Report::new(
        "iso",
        json!([first.display().to_string(), second.display().to_string()]),
    );
    let Some(iso) = find_isomorphism(&g, &d) else {
        r.pass = false;
        r.line("not isomorphic");
        r.result = json!(null);
        return Ok(r);
    };
    for (k, v) in iso.vertex_map.iter().chain(&iso.relation_map) {
        r.line(format!("{k} -> {v}"));
    }
    let (qg, qd) = (QSemigroup::new(&g), QSemigroup::new(&d));
    let elems = qg.enumerate_ball(ball, Sub::Q);
    let mut broken = Vec::new();
    for a in &elems {
        for b in &elems {
            let lhs = iso.map_element(&g, &d, &qg.multiply(a, b));
            let rhs = qd.multiply(&iso.map_element(&g, &d, a), &iso.map_element(&g, &d, b));
            if lhs != rhs {
                broken.push(json!([qg.format_element(a), qg.format_element(b)]));
            }
        }
    }
    r.pass = broken.is_empty();
    r.line(format!(
        "products preserved on ball {ball}: {}",
        verdict(r.pass)
    ));
    r.result = json!({
        "vertex_map": iso.vertex_map,
        "relation_map": iso.relation_map,
        "products_preserved": r.pass,
    });
    r.witnesses = Value::Array(broken);
    Ok(r)
}

fn example6() -> Report {
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let mut r = Report::new("example6", json!(net.to_text()));
    r.text.push_str(&net.to_text());
    let t0: Vec<String> = net.t0().iter().map(|a| a.to_string()).collect();
    r.line(format!("T0: {}", t0.join(" ")));
    let rlp: Vec<String> = enumerate_paths(&net, 2, PathKind::RLP)
        .iter()
        .map(|w| net.format_word(w))
        .collect();
    r.line(format!("RLP up to length 2: {}", rlp.join(", ")));

    let ball = |s| q.enumerate_ball(4, s);
    let (bq, bs, br) = (ball(Sub::Q), ball(Sub::S), ball(Sub::R));
    r.line(format!("R ball 4 ({} elements):", br.len()));
    for e in &br {
        r.line(format!("  [{}]", q.format_element(e)));
    }

    let mut ideals = serde_json::Map::new();
    for (name, carrier, b) in [
        ("I1", Sub::Q, &bq),
        ("I2", Sub::S, &bs),
        ("I3", Sub::R, &br),
    ] {
        let spec = principal_star_ideal(&net, "t2", carrier).expect("t2 satisfies the hypotheses");
        let trace = spec.trace(&q, b);
        r.line(format!(
            "{name} = principal:t2 over {carrier}, trace on ball 4:"
        ));
        for e in &trace {
            r.line(format!("  [{}]", q.format_element(e)));
        }
        ideals.insert(name.into(), elements(&q, &trace));
    }

    let (sq, ss, sr): (BTreeSet<_>, BTreeSet<_>, BTreeSet<_>) = (
        bq.iter().collect(),
        bs.iter().collect(),
        br.iter().collect(),
    );
    let s_not_r = q.parse_element("{v1} t1 | t1").expect("element");
    let q_not_s = q.parse_element("{v3}").expect("element");
    r.pass = sr.is_subset(&ss)
        && ss.is_subset(&sq)
        && ss.contains(&s_not_r)
        && !sr.contains(&s_not_r)
        && sq.contains(&q_not_s)
        && !ss.contains(&q_not_s);
    r.line(format!(
        "R < S < Q on ball 4 ({} < {} < {}), witnesses [{}] in S\\R, [{}] in Q\\S: {}",
        br.len(),
        bs.len(),
        bq.len(),
        q.format_element(&s_not_r),
        q.format_element(&q_not_s),
        verdict(r.pass)
    ));
    let t1 = net.relation_index("t1").expect("t1");
    r.line(format!(
        "source idempotent of t1: [{}]",
        q.format_element(&source_element(&q, t1))
    ));
    r.result = json!({
        "t0": t0,
        "rlp2": rlp,
        "r_ball": elements(&q, &br),
        "ideals": ideals,
        "inclusions": verdict(r.pass),
    });
    r.witnesses = json!([q.format_element(&s_not_r), q.format_element(&q_not_s)]);
    r
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            if json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(if r.pass { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
