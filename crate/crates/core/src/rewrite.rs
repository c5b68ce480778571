//! Length-decreasing string rewriting over the network alphabet.
//!
//! Every rule rewrites a pair of adjacent symbols to a single symbol, so a
//! word of length `n` reaches an irreducible word in fewer than `n` steps.
//!
//! Two rule sets are available. [`RuleSet::Presentation`] holds the rules
//! NR1 to NR6 exactly. [`RuleSet::Completed`] adds
//!
//! ```text
//! NR7   t⁻¹ u⁻¹ -> 0   when s(t) != r(u)
//! ```
//!
//! which is a consequence of the others (`t⁻¹ u⁻¹ = t⁻¹ r(u) u⁻¹`, and NR5
//! kills `t⁻¹ r(u)`). Without it, networks with an *inverse junction*, two
//! relations `t`, `u` with `s(t) != r(u)` but `s(t) ∩ r(u)` non-empty, are not
//! confluent: `t⁻¹ r(u) u⁻¹` rewrites both to `0` and to the irreducible
//! `t⁻¹ u⁻¹`. The semigroup is always computed with the completed set.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::network::Network;
use crate::path::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Nr6a,
    Nr6b,
    Nr1a,
    Nr1b,
    Nr4,
    Nr3,
    Nr5,
    Nr2,
    Nr7,
}

impl Rule {
    /// Tag precedence used when several rules match one pair.
    pub const ORDER: [Rule; 9] = [
        Rule::Nr6a,
        Rule::Nr6b,
        Rule::Nr1a,
        Rule::Nr1b,
        Rule::Nr4,
        Rule::Nr3,
        Rule::Nr5,
        Rule::Nr2,
        Rule::Nr7,
    ];

    pub fn family(self) -> u8 {
        match self {
            Rule::Nr1a | Rule::Nr1b => 1,
            Rule::Nr2 => 2,
            Rule::Nr3 => 3,
            Rule::Nr4 => 4,
            Rule::Nr5 => 5,
            Rule::Nr6a | Rule::Nr6b => 6,
            Rule::Nr7 => 7,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Nr1a => "NR1a",
            Rule::Nr1b => "NR1b",
            Rule::Nr2 => "NR2",
            Rule::Nr3 => "NR3",
            Rule::Nr4 => "NR4",
            Rule::Nr5 => "NR5",
            Rule::Nr6a => "NR6a",
            Rule::Nr6b => "NR6b",
            Rule::Nr7 => "NR7",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSet {
    Presentation,
    Completed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub position: usize,
    pub rule: Rule,
    pub result: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub fn result(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("state budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("empty word")]
    EmptyWord,
}

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy)]
pub struct Rewriter<'n> {
    net: &'n Network,
    rules: RuleSet,
}

impl<'n> Rewriter<'n> {
    pub fn new(net: &'n Network, rules: RuleSet) -> Self {
        Rewriter { net, rules }
    }

    pub fn network(&self) -> &'n Network {
        self.net
    }

    pub fn rule_set(&self) -> RuleSet {
        self.rules
    }

    fn matches(&self, rule: Rule, x: Symbol, y: Symbol) -> Option<Symbol> {
        use Symbol::*;
        let net = self.net;
        match rule {
            Rule::Nr6a => (x == Zero).then_some(Zero),
            Rule::Nr6b => (y == Zero).then_some(Zero),
            Rule::Nr1a => {
                let sy = net.sym_source(y)?;
                (x == Sub(sy)).then_some(y)
            }
            Rule::Nr1b => {
                let rx = net.sym_range(x)?;
                (y == Sub(rx)).then_some(x)
            }
            Rule::Nr4 => match (x, y) {
                (RelInv(a), Rel(b)) if a == b => Some(Sub(net.range_index(b))),
                _ => None,
            },
            Rule::Nr3 => match (x, y) {
                (RelInv(a), Rel(b)) if a != b => Some(Zero),
                _ => None,
            },
            Rule::Nr5 => match (x, y) {
                (RelInv(t), Sub(a)) if net.source_index(t) != a => Some(Zero),
                _ => None,
            },
            Rule::Nr2 => {
                let rx = net.sym_range(x)?;
                let sy = net.sym_source(y)?;
                (!net.meets(rx, sy)).then_some(Zero)
            }
            Rule::Nr7 => match (self.rules, x, y) {
                (RuleSet::Completed, RelInv(t), RelInv(u))
                    if net.source_index(t) != net.range_index(u) =>
                {
                    Some(Zero)
                }
                _ => None,
            },
        }
    }

    /// First rule (in tag order) whose left-hand side is `x y`, with its result.
    pub fn rule_at(&self, x: Symbol, y: Symbol) -> Option<(Rule, Symbol)> {
        Rule::ORDER
            .iter()
            .find_map(|&r| self.matches(r, x, y).map(|s| (r, s)))
    }

    /// Every rule whose left-hand side is `x y`.
    pub fn matching_rules(&self, x: Symbol, y: Symbol) -> Vec<(Rule, Symbol)> {
        Rule::ORDER
            .iter()
            .filter_map(|&r| self.matches(r, x, y).map(|s| (r, s)))
            .collect()
    }

    /// All redexes by position, each reported with its first matching rule.
    pub fn find_redexes(&self, w: &Word) -> Vec<(usize, Rule)> {
        w.0.windows(2)
            .enumerate()
            .filter_map(|(i, p)| self.rule_at(p[0], p[1]).map(|(r, _)| (i, r)))
            .collect()
    }

    /// Rewrites the pair at `pos` using `rule`; `None` if the rule does not match there.
    pub fn apply(&self, w: &Word, pos: usize, rule: Rule) -> Option<Word> {
        let (&x, &y) = (w.0.get(pos)?, w.0.get(pos + 1)?);
        let out = self.matches(rule, x, y)?;
        let mut v = Vec::with_capacity(w.len() - 1);
        v.extend_from_slice(&w.0[..pos]);
        v.push(out);
        v.extend_from_slice(&w.0[pos + 2..]);
        Some(Word(v))
    }

    /// Leftmost-first normalization with a full trace.
    ///
    /// The scan keeps an irreducible prefix on a stack, so the leftmost redex
    /// of the current word is always at the top of the stack.
    pub fn normal_form(&self, w: &Word) -> (Word, RewriteTrace) {
        let mut stack: Vec<Symbol> = Vec::with_capacity(w.len());
        let mut steps = Vec::new();
        for (i, &s) in w.0.iter().enumerate() {
            stack.push(s);
            while stack.len() >= 2 {
                let n = stack.len();
                let Some((rule, out)) = self.rule_at(stack[n - 2], stack[n - 1]) else {
                    break;
                };
                stack.truncate(n - 2);
                stack.push(out);
                let mut result = stack.clone();
                result.extend_from_slice(&w.0[i + 1..]);
                steps.push(RewriteStep {
                    position: n - 2,
                    rule,
                    result: Word(result),
                });
            }
        }
        let trace = RewriteTrace {
            start: w.clone(),
            steps,
        };
        (Word(stack), trace)
    }

    /// Normal form without the trace.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Symbol> = Vec::with_capacity(w.len());
        for &s in &w.0 {
            let mut cur = s;
            while let Some(&top) = stack.last() {
                match self.rule_at(top, cur) {
                    Some((_, out)) => {
                        stack.pop();
                        cur = out;
                    }
                    None => break,
                }
            }
            stack.push(cur);
        }
        Word(stack)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        w.0.windows(2).all(|p| self.rule_at(p[0], p[1]).is_none())
    }

    /// Every irreducible word reachable from `w` under any choice of redex and
    /// of rule at each step.
    pub fn normal_forms_all_orders(
        &self,
        w: &Word,
        budget: usize,
    ) -> Result<BTreeSet<Word>, RewriteError> {
        if w.is_empty() {
            return Err(RewriteError::EmptyWord);
        }
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut out = BTreeSet::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(cur) = queue.pop_front() {
            let mut irreducible = true;
            for (i, p) in cur.0.windows(2).enumerate() {
                for (_, res) in self.matching_rules(p[0], p[1]) {
                    irreducible = false;
                    let mut v = Vec::with_capacity(cur.len() - 1);
                    v.extend_from_slice(&cur.0[..i]);
                    v.push(res);
                    v.extend_from_slice(&cur.0[i + 2..]);
                    let next = Word(v);
                    if seen.insert(next.clone()) {
                        if seen.len() > budget {
                            return Err(RewriteError::BudgetExceeded(budget));
                        }
                        queue.push_back(next);
                    }
                }
            }
            if irreducible {
                out.insert(cur);
            }
        }
        Ok(out)
    }

    /// Scans every overlap `x y z` of two redexes over the non-zero alphabet.
    pub fn check_local_confluence(&self) -> ConfluenceReport {
        let alphabet = alphabet(self.net);
        let mut triples = Vec::new();
        for &y in &alphabet {
            let lefts: Vec<(Symbol, Rule, Symbol)> = alphabet
                .iter()
                .filter_map(|&x| self.rule_at(x, y).map(|(r, o)| (x, r, o)))
                .collect();
            if lefts.is_empty() {
                continue;
            }
            let rights: Vec<(Symbol, Rule, Symbol)> = alphabet
                .iter()
                .filter_map(|&z| self.rule_at(y, z).map(|(r, o)| (z, r, o)))
                .collect();
            for &(x, left_rule, left_out) in &lefts {
                for &(z, right_rule, right_out) in &rights {
                    let left = Word(vec![left_out, z]);
                    let right = Word(vec![x, right_out]);
                    let left_nf = self.reduce(&left);
                    let right_nf = self.reduce(&right);
                    let reach_l = self
                        .normal_forms_all_orders(&left, DEFAULT_BUDGET)
                        .expect("two-symbol words stay small");
                    let reach_r = self
                        .normal_forms_all_orders(&right, DEFAULT_BUDGET)
                        .expect("two-symbol words stay small");
                    let joinable = reach_l.intersection(&reach_r).next().is_some();
                    triples.push(CriticalTriple {
                        word: Word(vec![x, y, z]),
                        left_rule,
                        right_rule,
                        case: classify_case(left_rule, right_rule),
                        left,
                        right,
                        left_nf,
                        right_nf,
                        joinable,
                    });
                }
            }
        }
        triples.sort_by(|a, b| a.word.cmp(&b.word));
        ConfluenceReport { triples }
    }
}

/// `T ∪ T0 ∪ T⁻¹` in symbol order.
pub fn alphabet(net: &Network) -> Vec<Symbol> {
    let t = net.relations().len();
    (0..t)
        .map(Symbol::Rel)
        .chain((0..net.t0().len()).map(Symbol::Sub))
        .chain((0..t).map(Symbol::RelInv))
        .collect()
}

/// Which case of the classical critical-pair analysis an overlap falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    Numbered {
        case: u8,
        sub: Option<u8>,
        dual: bool,
    },
    /// The overlap involves the completion rule NR7.
    Completion,
    Unclassified,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Numbered { case, sub, dual } => {
                write!(f, "case {case}")?;
                if let Some(s) = sub {
                    write!(f, "(a{s})")?;
                }
                if *dual {
                    write!(f, " dual")?;
                }
                Ok(())
            }
            CaseLabel::Completion => f.write_str("completion"),
            CaseLabel::Unclassified => f.write_str("unclassified"),
        }
    }
}

fn classify_case(left: Rule, right: Rule) -> CaseLabel {
    use Rule::*;
    let n = |case, sub, dual| CaseLabel::Numbered { case, sub, dual };
    match (left, right) {
        (Nr7, _) | (_, Nr7) => CaseLabel::Completion,
        (Nr1a, Nr1a) => n(1, Some(1), false),
        (Nr1a, Nr1b) => n(1, Some(2), false),
        (Nr1b, Nr1a) => n(1, Some(3), false),
        (Nr1b, Nr1b) => n(1, Some(4), false),
        (Nr1a, Nr2) => n(2, Some(1), false),
        (Nr1b, Nr2) => n(2, Some(2), false),
        (Nr2, Nr1a | Nr1b) => n(2, None, true),
        (Nr1a | Nr1b, Nr3) => n(3, None, false),
        (Nr3, Nr1a | Nr1b) => n(3, None, true),
        (Nr1a | Nr1b, Nr4) => n(4, None, false),
        (Nr4, Nr1a | Nr1b) => n(4, None, true),
        (Nr1a | Nr1b, Nr5) => n(5, None, false),
        (Nr5, Nr1a) => n(5, Some(1), true),
        (Nr5, Nr1b) => n(5, Some(2), true),
        (Nr2, Nr2 | Nr3 | Nr5) => n(6, None, false),
        (Nr3 | Nr5, Nr2) => n(6, None, true),
        (Nr2, Nr4) => n(7, None, false),
        (Nr4, Nr2) => n(7, None, true),
        _ => CaseLabel::Unclassified,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalTriple {
    pub word: Word,
    pub left_rule: Rule,
    pub right_rule: Rule,
    pub case: CaseLabel,
    /// Descendant after rewriting the left pair.
    pub left: Word,
    /// Descendant after rewriting the right pair.
    pub right: Word,
    pub left_nf: Word,
    pub right_nf: Word,
    pub joinable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub triples: Vec<CriticalTriple>,
}

impl ConfluenceReport {
    pub fn passes(&self) -> bool {
        self.triples.iter().all(|t| t.joinable)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CriticalTriple> {
        self.triples.iter().filter(|t| !t.joinable)
    }
}

/// Pairs `(t, u)` of relations with `s(t) != r(u)` and `s(t) ∩ r(u)` non-empty.
pub fn inverse_junctions(net: &Network) -> Vec<(usize, usize)> {
    let n = net.relations().len();
    let mut out = Vec::new();
    for t in 0..n {
        for u in 0..n {
            let (s, r) = (net.source_index(t), net.range_index(u));
            if s != r && net.meets(s, r) {
                out.push((t, u));
            }
        }
    }
    out
}
