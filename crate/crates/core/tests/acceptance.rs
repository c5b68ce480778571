//! Acceptance criteria, one test per criterion.
//!
//! Each test prints a single `criterion N: PASS|FAIL ...` line before asserting.
//! Equalities are exact; the only tolerances are the wall-clock budgets below.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nras_core::fixtures;
use nras_core::order::{probes_with_identity, product_signature};
use nras_core::*;

const BUDGET_C1: Duration = Duration::from_secs(1);
const BUDGET_C2: Duration = Duration::from_secs(60);
const BUDGET_C8: Duration = Duration::from_secs(5);
const RANDOM_NETWORKS: u64 = 50;
const RANDOM_PRODUCT_NETWORKS: u64 = 20;
const RANDOM_GRAPHS: u64 = 10;

fn verdict(n: u32, pass: bool, detail: &str) {
    println!(
        "criterion {n}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

fn set(q: &QSemigroup, items: &[&str]) -> BTreeSet<QElement> {
    items.iter().map(|s| q.parse_element(s).unwrap()).collect()
}

fn names(q: &QSemigroup, s: &BTreeSet<QElement>) -> String {
    s.iter()
        .map(|e| format!("[{}]", q.format_element(e)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Words over `{v1}, {v2}, A` with none of `v1v1, v2v2, AA, v1v2, v2v1` as a
/// factor, up to length `max`.
fn x_v1v2(net: &Network, max: usize) -> Vec<Word> {
    let letters: Vec<Symbol> = ["{v1}", "{v2}", "{v1,v2}"]
        .iter()
        .map(|s| net.parse_symbol(s).unwrap())
        .collect();
    let a = letters[2];
    let forbidden = |x: Symbol, y: Symbol| x == y || (x != a && y != a);
    let mut out: Vec<Word> = letters.iter().map(|&s| Word::single(s)).collect();
    let mut layer = out.clone();
    for _ in 1..max {
        let mut next = Vec::new();
        for w in &layer {
            for &y in &letters {
                if !forbidden(w.last().unwrap(), y) {
                    let mut v = w.0.clone();
                    v.push(y);
                    next.push(Word(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Members of `x_v1v2` whose last letter is not `A`.
fn x_a(net: &Network, max: usize) -> Vec<Word> {
    let a = net.parse_symbol("{v1,v2}").unwrap();
    x_v1v2(net, max)
        .into_iter()
        .filter(|w| w.last() != Some(a))
        .collect()
}

fn pair(q: &QSemigroup, alpha: &Word, beta: &Word) -> QElement {
    q.element(alpha.clone(), beta.clone()).unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let w = |s: &str| net.parse_word(s).unwrap();
    let mut failures = Vec::new();

    let t0: BTreeSet<String> = net.t0().iter().map(|a| a.to_string()).collect();
    let t0_expected: BTreeSet<String> = ["{v1,v2}", "{v1}", "{v2}", "{v3}", "{v4}"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if t0 != t0_expected {
        failures.push(format!("T0 = {t0:?}"));
    }

    let rlp: BTreeSet<Word> = enumerate_paths(&net, 2, PathKind::RLP)
        .into_iter()
        .collect();
    let rlp_expected: BTreeSet<Word> = [
        "t1", "t2", "t1 t2", "{v1,v2}", "{v1}", "{v2}", "{v3}", "{v4}",
    ]
    .iter()
    .map(|s| w(s))
    .collect();
    if rlp != rlp_expected {
        failures.push("RLP up to length 2 differs".into());
    }

    let r_ball: BTreeSet<QElement> = q.enumerate_ball(4, Sub::R).into_iter().collect();
    let r_displayed = set(
        &q,
        &["t1 | t1", "t2 | t2", "t1 t2 | t2", "t1 t2 | t1 t2", "0"],
    );
    if r_ball != r_displayed {
        let extra: BTreeSet<QElement> = r_ball.difference(&r_displayed).cloned().collect();
        let missing: BTreeSet<QElement> = r_displayed.difference(&r_ball).cloned().collect();
        let mut msg = format!("R ball-4 has {} elements, displayed 5", r_ball.len());
        if !extra.is_empty() {
            msg += &format!("; not displayed {}", names(&q, &extra));
        }
        if !missing.is_empty() {
            msg += &format!("; displayed but absent {}", names(&q, &missing));
        }
        failures.push(msg);
    }

    // The three displayed ideals, rebuilt from their displays.
    let (r_t2, t2, t1t2) = (w("{v4}"), w("t2"), w("t1 t2"));
    let xa_t1t2: Vec<Word> = x_a(&net, 4)
        .iter()
        .map(|x| x.concat(&t1t2))
        .filter(|x| x.len() <= 4)
        .collect();
    let lin = [t2.clone(), t1t2.clone()];
    let mut i2_display: BTreeSet<QElement> = [QElement::Zero].into();
    for b in &lin {
        i2_display.insert(pair(&q, &r_t2, b));
    }
    for a in &lin {
        for b in &lin {
            i2_display.insert(pair(&q, a, b));
        }
    }
    for a in &xa_t1t2 {
        i2_display.insert(pair(&q, a, &t2));
        i2_display.insert(pair(&q, a, &t1t2));
    }
    let mut i1_display = i2_display.clone();
    for a in [t2.clone(), r_t2.clone(), t1t2.clone()]
        .iter()
        .chain(&xa_t1t2)
    {
        i1_display.insert(pair(&q, a, &r_t2));
    }
    let mut i3_display: BTreeSet<QElement> = [QElement::Zero].into();
    for a in &lin {
        for b in &lin {
            i3_display.insert(pair(&q, a, b));
        }
    }
    let within = |s: BTreeSet<QElement>| -> BTreeSet<QElement> {
        s.into_iter().filter(|e| e.size() <= 4).collect()
    };
    let checks = [
        ("I1", Sub::Q, within(i1_display)),
        ("I2", Sub::S, within(i2_display)),
        ("I3", Sub::R, within(i3_display)),
    ];
    for (name, carrier, display) in checks {
        let spec = principal_star_ideal(&net, "t2", carrier).unwrap();
        let trace: BTreeSet<QElement> = spec
            .trace(&q, &q.enumerate_ball(4, carrier))
            .into_iter()
            .collect();
        if trace != display {
            failures.push(format!(
                "{name} trace {} != display {}",
                names(&q, &trace),
                names(&q, &display)
            ));
        }
    }

    let elapsed = start.elapsed();
    if elapsed > BUDGET_C1 {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        format!("T0, RLP<=2, R ball-4 and I1/I2/I3 traces match ({elapsed:?})")
    } else {
        failures.join("; ")
    };
    verdict(1, failures.is_empty(), &detail);
}

/// Every word of length 1..=max over the alphabet including `0`, checked for a
/// unique normal form under all reduction orders. Returns (words, failures).
fn all_words_unique(rw: &Rewriter, net: &Network, max: usize) -> (u64, Vec<Word>) {
    let mut letters = nras_core::rewrite::alphabet(net);
    letters.push(Symbol::Zero);
    let k = letters.len();
    let results: Vec<(u64, Vec<Word>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..k)
            .map(|first| {
                let letters = &letters;
                scope.spawn(move || {
                    let mut count = 0u64;
                    let mut bad = Vec::new();
                    for len in 1..=max {
                        let rest = len - 1;
                        let total = k.pow(rest as u32);
                        for code in 0..total {
                            let mut v = Vec::with_capacity(len);
                            v.push(letters[first]);
                            let mut c = code;
                            for _ in 0..rest {
                                v.push(letters[c % k]);
                                c /= k;
                            }
                            let word = Word(v);
                            let nfs = rw.normal_forms_all_orders(&word, DEFAULT_BUDGET).unwrap();
                            count += 1;
                            if nfs.len() != 1 || !nfs.contains(&rw.normal_form(&word).0) {
                                bad.push(word);
                            }
                        }
                    }
                    (count, bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let count = results.iter().map(|r| r.0).sum();
    let bad = results.into_iter().flat_map(|r| r.1).collect();
    (count, bad)
}

#[test]
fn criterion_2_confluence() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let ex6 = fixtures::ex6();
    let g2 = fixtures::g2();
    for (name, net) in [("EX6", &ex6), ("G2", &g2)] {
        let report = Rewriter::new(net, RuleSet::Presentation).check_local_confluence();
        if !report.passes() {
            failures.push(format!("{name} not locally confluent"));
        }
    }

    let mut red = Vec::new();
    let mut completed_ok = 0;
    let mut characterised = true;
    for seed in 0..RANDOM_NETWORKS {
        let net = fixtures::random_network(seed, 4, 6);
        let lit = Rewriter::new(&net, RuleSet::Presentation).check_local_confluence();
        let done = Rewriter::new(&net, RuleSet::Completed).check_local_confluence();
        if done.passes() {
            completed_ok += 1;
        }
        characterised &= lit.passes() == inverse_junctions(&net).is_empty();
        if !lit.passes() {
            let witness = lit.failures().next().unwrap();
            red.push(format!("seed {seed} ({})", net.format_word(&witness.word)));
        }
    }
    println!(
        "criterion 2 info: completed rule set confluent on {completed_ok}/{RANDOM_NETWORKS} random networks; \
         presentation failures coincide with inverse junctions: {characterised}"
    );
    if !red.is_empty() {
        failures.push(format!(
            "presentation rules not locally confluent on {}/{RANDOM_NETWORKS} random networks: {}",
            red.len(),
            red.join(", ")
        ));
    }

    let rw = Rewriter::new(&ex6, RuleSet::Presentation);
    let (count, bad) = all_words_unique(&rw, &ex6, 6);
    if !bad.is_empty() {
        failures.push(format!("{} EX6 words with several normal forms", bad.len()));
    }

    let elapsed = start.elapsed();
    if elapsed > BUDGET_C2 {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        format!(
            "EX6, G2, {RANDOM_NETWORKS} random networks; {count} EX6 words unique ({elapsed:?})"
        )
    } else {
        format!("{} ({count} EX6 words checked)", failures.join("; "))
    };
    verdict(2, failures.is_empty(), &detail);
}

#[test]
fn criterion_3_products() {
    let mut failures = Vec::new();
    let ex6 = fixtures::ex6();
    let q = QSemigroup::new(&ex6);
    let ball = q.enumerate_ball(4, Sub::Q);
    let mut pairs = 0u64;
    for a in &ball {
        for b in &ball {
            pairs += 1;
            if q.multiply(a, b) != q.multiply_oracle(a, b) {
                failures.push(format!(
                    "EX6 [{}]·[{}]",
                    q.format_element(a),
                    q.format_element(b)
                ));
            }
        }
    }
    for seed in 0..RANDOM_PRODUCT_NETWORKS {
        let net = fixtures::random_network(seed, 4, 6);
        let q = QSemigroup::new(&net);
        let ball = q.enumerate_ball(3, Sub::Q);
        for a in &ball {
            for b in &ball {
                pairs += 1;
                if q.multiply(a, b) != q.multiply_oracle(a, b) {
                    failures.push(format!(
                        "seed {seed} [{}]·[{}]",
                        q.format_element(a),
                        q.format_element(b)
                    ));
                }
            }
        }
    }
    let small = q.enumerate_ball(3, Sub::Q);
    let mut triples = 0u64;
    for a in &small {
        for b in &small {
            let ab = q.multiply(a, b);
            for c in &small {
                triples += 1;
                if q.multiply(&ab, c) != q.multiply(a, &q.multiply(b, c)) {
                    failures.push("associativity".into());
                }
            }
        }
    }
    failures.truncate(5);
    verdict(
        3,
        failures.is_empty(),
        &format!(
            "{pairs} pairs fast = oracle, {triples} EX6 ball-3 triples associative {}",
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_4_right_star_abundance() {
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let ball = q.enumerate_ball(4, Sub::Q);
    let idempotents: Vec<&QElement> = ball
        .iter()
        .filter(|e| !e.is_zero() && q.is_idempotent(e))
        .collect();
    let mut failures = Vec::new();
    for a in ball.iter().filter(|e| !e.is_zero()) {
        let class: Vec<&&QElement> = idempotents
            .iter()
            .filter(|e| l_star_related(a, e).unwrap())
            .collect();
        if class.len() != 1 || **class[0] != q.star(a) {
            failures.push(format!("[{}]", q.format_element(a)));
        }
    }
    let probes = probes_with_identity(&ball);
    let sigs: Vec<Vec<usize>> = ball
        .iter()
        .map(|a| product_signature(&q, a, &probes))
        .collect();
    let mut accepted = 0u64;
    for i in 0..ball.len() {
        for j in 0..ball.len() {
            if ball[i].is_zero() || ball[j].is_zero() {
                continue;
            }
            if l_star_related(&ball[i], &ball[j]).unwrap() {
                accepted += 1;
                if sigs[i] != sigs[j] {
                    failures.push(format!(
                        "refuted [{}] L* [{}]",
                        q.format_element(&ball[i]),
                        q.format_element(&ball[j])
                    ));
                }
            }
        }
    }
    failures.truncate(5);
    verdict(
        4,
        failures.is_empty(),
        &format!(
            "{} non-zero elements, {accepted} L* pairs unrefuted over {} probes {}",
            ball.len() - 1,
            probes.len(),
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_5_structure() {
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let ball = q.enumerate_ball(4, Sub::Q);
    let mut failures = Vec::new();

    for a in &ball {
        if q.is_idempotent(a) != (q.multiply(a, a) == *a) {
            failures.push(format!("idempotent [{}]", q.format_element(a)));
        }
        let has_inverse_like = ball.iter().any(|b| q.multiply(&q.multiply(a, b), a) == *a);
        if q.is_regular(a) != has_inverse_like {
            failures.push(format!("regular [{}]", q.format_element(a)));
        }
    }

    for beta in enumerate_paths(&net, 4, PathKind::RLP) {
        let lhs = q.canonicalize(&beta.inverse().concat(&beta));
        let (_, r) = source_range(&net, &beta).unwrap();
        let rhs = q.sub_element(net.t0_index(&r).unwrap());
        if lhs != rhs {
            failures.push(format!("[b⁻¹b] for {}", net.format_word(&beta)));
        }
    }

    let s_ball = q.enumerate_ball(4, Sub::S);
    for e in s_ball.iter().filter(|e| q.is_idempotent(e)) {
        for a in &s_ball {
            let ea = q.multiply(e, a);
            if ea != q.multiply(a, &q.star(&ea)) {
                failures.push(format!(
                    "right ample e=[{}] a=[{}]",
                    q.format_element(e),
                    q.format_element(a)
                ));
            }
        }
    }

    let e_minus: Vec<&QElement> = ball
        .iter()
        .filter(|e| q.is_idempotent(e) && e.alpha().and_then(Word::as_sub).is_none())
        .collect();
    for e in &e_minus {
        for f in &e_minus {
            if q.multiply(e, f) != q.multiply(f, e) {
                failures.push("E minus vertex sets not commutative".into());
            }
        }
    }
    let (a, b) = (
        q.parse_element("{v1,v2}").unwrap(),
        q.parse_element("{v1}").unwrap(),
    );
    if q.multiply(&a, &b) == q.multiply(&b, &a) {
        failures.push("[A][B] = [B][A]".into());
    }

    let r_ball = q.enumerate_ball(4, Sub::R);
    for x in r_ball.iter().filter(|e| !e.is_zero()) {
        for y in r_ball.iter().filter(|e| !e.is_zero()) {
            if l_star_related(x, y).unwrap() && r_related_regular(&q, x, y).unwrap() && x != y {
                failures.push("H not trivial on R".into());
            }
        }
    }
    failures.truncate(5);
    verdict(
        5,
        failures.is_empty(),
        &format!(
            "idempotent/regular characterisations on {} elements, b⁻¹b, right ample, E commutation, H trivial {}",
            ball.len(),
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_6_ideals() {
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let mut failures = Vec::new();
    let ball = q.enumerate_ball(4, Sub::Q);
    let nl = verify_ideal(&q, &nonlinear_ideal(Sub::Q).unwrap(), &ball);
    if !(nl.absorbs() && nl.proper() && nl.idempotent_separating()) {
        failures.push("nonlinear ideal".to_string());
    }
    for carrier in [Sub::Q, Sub::S, Sub::R] {
        let spec = principal_star_ideal(&net, "t2", carrier).unwrap();
        let r = verify_ideal(&q, &spec, &q.enumerate_ball(4, carrier));
        if !(r.absorbs() && r.proper() && r.star_closed()) {
            failures.push(format!("principal t2 over {carrier}"));
        }
    }
    match principal_star_ideal(&net, "t1", Sub::Q) {
        Err(IdealError::HypothesisViolated { .. }) => {}
        other => failures.push(format!("t1 gave {other:?}")),
    }
    verdict(
        6,
        failures.is_empty(),
        &format!(
            "nonlinear (trace {}), principal t2 over Q/S/R, t1 rejected {}",
            nl.trace.len(),
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_7_order_and_skeleton() {
    let net = fixtures::ex6();
    let q = QSemigroup::new(&net);
    let ball = q.enumerate_ball(4, Sub::Q);
    let report = classify_maximal(&q, &ball);
    let mut failures = Vec::new();
    let subs = set(&q, &["{v1,v2}", "{v1}", "{v2}", "{v3}", "{v4}"]);
    if report.maximal_in_eq != subs {
        failures.push(format!("max E(Q) = {}", names(&q, &report.maximal_in_eq)));
    }
    let ts = set(&q, &["t1 | t1", "t2 | t2"]);
    if report.maximal_in_e != ts {
        failures.push(format!("max E = {}", names(&q, &report.maximal_in_e)));
    }
    let sk = extract_skeleton(&q, &ball).unwrap();
    let t1 = q.parse_element("t1 | t1").unwrap();
    let t2 = q.parse_element("t2 | t2").unwrap();
    if sk.source_of(&t1) != Some(&q.parse_element("{v1,v2}").unwrap()) {
        failures.push("source_of([t1t1⁻¹])".into());
    }
    if sk.range_of(&t2) != Some(&q.parse_element("{v4}").unwrap()) {
        failures.push("range_of([t2t2⁻¹])".into());
    }
    verdict(
        7,
        failures.is_empty(),
        &format!(
            "maximal idempotents and skeleton incidence {}",
            failures.join("; ")
        ),
    );
}

#[test]
fn criterion_8_isomorphism() {
    let start = Instant::now();
    let (g, d, h) = (fixtures::ex6(), fixtures::ex6_renamed(), fixtures::g2());
    let (qg, qd, qh) = (
        QSemigroup::new(&g),
        QSemigroup::new(&d),
        QSemigroup::new(&h),
    );
    let mut failures = Vec::new();
    let iso = find_isomorphism(&g, &d);
    let ball = qg.enumerate_ball(3, Sub::Q);
    let mut checked = 0u64;
    match &iso {
        None => failures.push("no iso EX6 -> renamed".to_string()),
        Some(iso) => {
            let image: BTreeSet<QElement> =
                ball.iter().map(|e| iso.map_element(&g, &d, e)).collect();
            let target: BTreeSet<QElement> = qd.enumerate_ball(3, Sub::Q).into_iter().collect();
            if image != target {
                failures.push("ball image differs".into());
            }
            for a in &ball {
                for b in &ball {
                    checked += 1;
                    let lhs = iso.map_element(&g, &d, &qg.multiply(a, b));
                    let rhs = qd.multiply(&iso.map_element(&g, &d, a), &iso.map_element(&g, &d, b));
                    if lhs != rhs {
                        failures.push("product not preserved".into());
                    }
                }
            }
        }
    }
    let iso_gh = find_isomorphism(&g, &h);
    if iso_gh.is_some() {
        failures.push("EX6 ~ G2".into());
    }
    let skel = |q: &QSemigroup| extract_skeleton(q, &q.enumerate_ball(3, Sub::Q)).unwrap();
    let (sg, sd, sh) = (skel(&qg), skel(&qd), skel(&qh));
    if compare_skeletons(&sg, &sd).is_some() != iso.is_some() {
        failures.push("skeleton verdict differs for renamed copy".into());
    }
    if compare_skeletons(&sg, &sh).is_some() != iso_gh.is_some() {
        failures.push("skeleton verdict differs for G2".into());
    }
    let elapsed = start.elapsed();
    if elapsed > BUDGET_C8 {
        failures.push(format!("took {elapsed:?}"));
    }
    failures.truncate(5);
    verdict(
        8,
        failures.is_empty(),
        &format!(
            "{checked} products preserved on ball-3, G2 rejected, skeletons agree ({elapsed:?}) {}",
            failures.join("; ")
        ),
    );
}

/// Graph inverse semigroup product on pairs of edge paths (empty path = vertex).
fn gis_product(q: &QSemigroup, a: &QElement, b: &QElement) -> QElement {
    let path = |w: &Word| -> Vec<Symbol> { w.0.iter().copied().filter(|s| s.is_rel()).collect() };
    let (QElement::NonZero { alpha: p, beta: qq }, QElement::NonZero { alpha: r, beta: s }) =
        (a, b)
    else {
        return QElement::Zero;
    };
    let net = q.network();
    let (p_, q_, r_, s_) = (path(p), path(qq), path(r), path(s));
    // endpoints: a vertex path meets only itself
    let end = |w: &Word| net.sym_range(w.last().unwrap()).unwrap();
    let start_of = |w: &Word| net.sym_source(w.first().unwrap()).unwrap();
    if start_of(qq) != start_of(r) {
        return QElement::Zero;
    }
    let build = |x: Vec<Symbol>, y: Vec<Symbol>, at: usize| -> QElement {
        let w = |v: Vec<Symbol>| {
            if v.is_empty() {
                Word::single(Symbol::Sub(at))
            } else {
                Word(v)
            }
        };
        QElement::NonZero {
            alpha: w(x),
            beta: w(y),
        }
    };
    if r_.starts_with(&q_) {
        let z = r_[q_.len()..].to_vec();
        let mut x = p_.clone();
        x.extend(z);
        build(x, s_, end(r))
    } else if q_.starts_with(&r_) {
        let z = q_[r_.len()..].to_vec();
        let mut y = s_.clone();
        y.extend(z);
        build(p_, y, end(qq))
    } else {
        QElement::Zero
    }
}

#[test]
fn criterion_9_graphs() {
    let mut failures = Vec::new();
    let mut elements = 0usize;
    for seed in 0..RANDOM_GRAPHS {
        let net = fixtures::random_graph(seed, 5, 5);
        let q = QSemigroup::new(&net);
        let ball = q.enumerate_ball(4, Sub::Q);
        elements += ball.len();
        for a in &ball {
            if !q.is_regular(a) {
                failures.push(format!(
                    "seed {seed}: [{}] not regular",
                    q.format_element(a)
                ));
            }
            let inverses: Vec<&QElement> = ball
                .iter()
                .filter(|b| {
                    q.multiply(&q.multiply(a, b), a) == *a
                        && q.multiply(&q.multiply(b, a), b) == **b
                })
                .collect();
            if inverses.len() != 1 || Some(inverses[0]) != q.inverse(a).as_ref() {
                failures.push(format!("seed {seed}: inverse of [{}]", q.format_element(a)));
            }
            for b in &ball {
                if q.multiply(a, b) != gis_product(&q, a, b) {
                    failures.push(format!(
                        "seed {seed}: [{}]·[{}]",
                        q.format_element(a),
                        q.format_element(b)
                    ));
                }
            }
        }
        let probes = probes_with_identity(&ball);
        let sigs: Vec<Vec<usize>> = ball
            .iter()
            .map(|a| product_signature(&q, a, &probes))
            .collect();
        for i in 0..ball.len() {
            for j in 0..ball.len() {
                let (a, b) = (&ball[i], &ball[j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let l_star = l_star_related(a, b).unwrap();
                // Green's L in an inverse semigroup: a⁻¹a = b⁻¹b
                let ia = q.inverse(a).unwrap();
                let ib = q.inverse(b).unwrap();
                let l = q.multiply(&ia, a) == q.multiply(&ib, b);
                if l_star != l || (l_star && sigs[i] != sigs[j]) {
                    failures.push(format!("seed {seed}: L* vs L at ({i},{j})"));
                }
            }
        }
    }
    failures.truncate(5);
    verdict(
        9,
        failures.is_empty(),
        &format!(
            "{RANDOM_GRAPHS} graphs, {elements} ball elements regular with unique inverses, graph product and L* = L {}",
            failures.join("; ")
        ),
    );
}
