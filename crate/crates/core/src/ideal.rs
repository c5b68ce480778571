//! Ideals given by closed-form membership, their verification on a ball, and
//! the Rees congruence they induce.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::network::Network;
use crate::path::is_rlp;
use crate::semigroup::{QElement, QSemigroup, Sub};

/// Which subsemigroup an ideal lives in.
pub type Carrier = Sub;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealKind {
    /// Elements whose `alpha` is a reduced path that is not linear.
    NonLinear,
    /// Elements ending in `r(t)`; generated by `[t t⁻¹]`.
    Principal { relation: usize, range: usize },
    /// A finite set given outright.
    Explicit(BTreeSet<QElement>),
}

/// Side conditions for a principal ideal, as evaluated on the network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses {
    pub relation: String,
    /// `o(r(t)) = 0`.
    pub out_index_zero: bool,
    /// No non-singleton member of `T0` contains `r(t)`.
    pub no_covering_set: bool,
    /// `|T| > 1`.
    pub several_relations: bool,
    /// Some relation `q` has `r(q) != r(t)`.
    pub distinct_range: bool,
    /// `|r(t)| = 1`; implied by the covering condition.
    pub singleton_range: bool,
}

impl Hypotheses {
    pub fn evaluate(net: &Network, t: usize) -> Self {
        let rel = net.relation(t);
        let range = &rel.range;
        Hypotheses {
            relation: rel.name.clone(),
            out_index_zero: net.out_index(range) == 0,
            no_covering_set: !net.t0().iter().any(|a| a.len() > 1 && range.is_subset(a)),
            several_relations: net.relations().len() > 1,
            distinct_range: net.relations().iter().any(|q| &q.range != range),
            singleton_range: range.len() == 1,
        }
    }

    /// The first violated condition for `carrier`, if any.
    pub fn violation(&self, carrier: Carrier) -> Option<&'static str> {
        if !self.out_index_zero {
            return Some("o(r(t)) = 0");
        }
        if !self.no_covering_set {
            return Some("no non-singleton A in T0 contains r(t)");
        }
        if carrier != Sub::Q {
            if !self.several_relations {
                return Some("|T| > 1");
            }
            if !self.distinct_range {
                return Some("some q in T has r(q) != r(t)");
            }
        }
        None
    }

    /// True when the covering condition and `|r(t)| = 1` disagree.
    pub fn consequence_mismatch(&self) -> bool {
        self.no_covering_set && !self.singleton_range
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub carrier: Carrier,
    pub kind: IdealKind,
    pub hypotheses: Option<Hypotheses>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("hypothesis violated for `{relation}`: {condition}")]
    HypothesisViolated {
        relation: String,
        condition: &'static str,
    },
    #[error("the non-linear ideal is defined for carriers Q and S only")]
    UnsupportedCarrier,
    #[error("ideal check failed: {0}")]
    IdealCheckFailed(String),
}

impl IdealSpec {
    pub fn contains(&self, q: &QSemigroup, e: &QElement) -> bool {
        let QElement::NonZero { alpha, .. } = e else {
            return true;
        };
        if !q.in_sub(e, self.carrier) {
            return false;
        }
        match &self.kind {
            IdealKind::NonLinear => !is_rlp(q.network(), alpha),
            IdealKind::Principal { range, .. } => {
                q.network().sym_range(alpha.last().expect("non-empty")) == Some(*range)
            }
            IdealKind::Explicit(set) => set.contains(e),
        }
    }

    pub fn is_principal(&self) -> bool {
        matches!(self.kind, IdealKind::Principal { .. })
    }

    pub fn trace(&self, q: &QSemigroup, ball: &[QElement]) -> Vec<QElement> {
        ball.iter()
            .filter(|e| self.contains(q, e))
            .cloned()
            .collect()
    }
}

pub fn nonlinear_ideal(carrier: Carrier) -> Result<IdealSpec, IdealError> {
    if carrier == Sub::R {
        return Err(IdealError::UnsupportedCarrier);
    }
    Ok(IdealSpec {
        carrier,
        kind: IdealKind::NonLinear,
        hypotheses: None,
    })
}

pub fn principal_star_ideal(
    net: &Network,
    relation: &str,
    carrier: Carrier,
) -> Result<IdealSpec, IdealError> {
    let t = net
        .relation_index(relation)
        .ok_or_else(|| IdealError::UnknownRelation(relation.to_string()))?;
    let hyp = Hypotheses::evaluate(net, t);
    if let Some(condition) = hyp.violation(carrier) {
        return Err(IdealError::HypothesisViolated {
            relation: relation.to_string(),
            condition,
        });
    }
    Ok(IdealSpec {
        carrier,
        kind: IdealKind::Principal {
            relation: t,
            range: net.range_index(t),
        },
        hypotheses: Some(hyp),
    })
}

pub fn explicit_ideal(carrier: Carrier, members: impl IntoIterator<Item = QElement>) -> IdealSpec {
    let mut set: BTreeSet<QElement> = members.into_iter().collect();
    set.insert(QElement::Zero);
    IdealSpec {
        carrier,
        kind: IdealKind::Explicit(set),
        hypotheses: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealReport {
    pub trace: Vec<QElement>,
    /// `(a, s, product)` where `a` is in the ideal and the product is not.
    pub absorption_violations: Vec<(QElement, QElement, QElement)>,
    /// A ball element outside the ideal, when one exists.
    pub properness_witness: Option<QElement>,
    /// Members whose star leaves the ideal (principal ideals only).
    pub star_violations: Vec<QElement>,
    /// For principal ideals: whether `{x g y}` over the ball with identity,
    /// cut down to the ball, equals the trace.
    pub generated_matches: Option<bool>,
    pub idempotents_in_trace: Vec<QElement>,
}

impl IdealReport {
    pub fn absorbs(&self) -> bool {
        self.absorption_violations.is_empty()
    }

    pub fn proper(&self) -> bool {
        self.properness_witness.is_some()
    }

    pub fn star_closed(&self) -> bool {
        self.star_violations.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.absorbs()
            && self.proper()
            && self.star_closed()
            && self.generated_matches != Some(false)
    }

    /// Only the zero idempotent lies in the ideal.
    pub fn idempotent_separating(&self) -> bool {
        self.idempotents_in_trace.iter().all(QElement::is_zero)
    }
}

pub fn verify_ideal(q: &QSemigroup, spec: &IdealSpec, ball: &[QElement]) -> IdealReport {
    let ball: Vec<QElement> = ball
        .iter()
        .filter(|e| q.in_sub(e, spec.carrier))
        .cloned()
        .collect();
    let trace = spec.trace(q, &ball);
    let mut absorption_violations = Vec::new();
    for a in &trace {
        for s in &ball {
            for p in [q.multiply(a, s), q.multiply(s, a)] {
                if !spec.contains(q, &p) {
                    absorption_violations.push((a.clone(), s.clone(), p));
                }
            }
        }
    }
    let properness_witness = ball.iter().find(|e| !spec.contains(q, e)).cloned();
    let mut star_violations = Vec::new();
    let mut generated_matches = None;
    if let IdealKind::Principal { relation, .. } = spec.kind {
        star_violations = trace
            .iter()
            .filter(|a| !spec.contains(q, &q.star(a)))
            .cloned()
            .collect();
        let g = q.rel_idempotent(relation);
        let in_ball: BTreeSet<&QElement> = ball.iter().collect();
        let mut generated = BTreeSet::new();
        let probes: Vec<Option<&QElement>> =
            std::iter::once(None).chain(ball.iter().map(Some)).collect();
        for x in &probes {
            let xg = x.map_or_else(|| g.clone(), |x| q.multiply(x, &g));
            if xg.is_zero() {
                generated.insert(QElement::Zero);
                continue;
            }
            for y in &probes {
                let p = y.map_or_else(|| xg.clone(), |y| q.multiply(&xg, y));
                if in_ball.contains(&p) {
                    generated.insert(p);
                }
            }
        }
        let trace_set: BTreeSet<QElement> = trace.iter().cloned().collect();
        generated_matches = Some(generated == trace_set);
    }
    let idempotents_in_trace = trace
        .iter()
        .filter(|e| q.is_idempotent(e))
        .cloned()
        .collect();
    IdealReport {
        trace,
        absorption_violations,
        properness_witness,
        star_violations,
        generated_matches,
        idempotents_in_trace,
    }
}

/// The partition of a ball under `(I × I) ∪ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceClasses {
    /// The merged class: the ideal's trace on the ball.
    pub ideal_class: Vec<QElement>,
    pub singletons: Vec<QElement>,
    /// Products respect the classes on both sides.
    pub compatible: bool,
    /// `a ρ b` implies `a* ρ b*`.
    pub unary_compatible: bool,
    /// No two distinct idempotents share a class.
    pub idempotent_separating: bool,
    /// A pair `(a, b)` in the merged class with `a* , b*` in different classes.
    pub unary_witness: Option<(QElement, QElement)>,
}

impl CongruenceClasses {
    pub fn class_count(&self) -> usize {
        self.singletons.len() + usize::from(!self.ideal_class.is_empty())
    }
}

pub fn rees_quotient(
    q: &QSemigroup,
    spec: &IdealSpec,
    ball: &[QElement],
) -> Result<CongruenceClasses, IdealError> {
    let report = verify_ideal(q, spec, ball);
    if !report.absorbs() {
        return Err(IdealError::IdealCheckFailed(
            "not absorbing on the ball".into(),
        ));
    }
    let ball: Vec<QElement> = ball
        .iter()
        .filter(|e| q.in_sub(e, spec.carrier))
        .cloned()
        .collect();
    let class = |e: &QElement| -> Option<QElement> {
        if spec.contains(q, e) {
            None
        } else {
            Some(e.clone())
        }
    };
    let ideal_class = report.trace.clone();
    let singletons: Vec<QElement> = ball
        .iter()
        .filter(|e| !spec.contains(q, e))
        .cloned()
        .collect();

    // Each multiplier must send the whole merged class into a single class.
    let mut compatible = true;
    'outer: for c in &ball {
        let mut left = None;
        let mut right = None;
        for a in &ideal_class {
            let l = class(&q.multiply(c, a));
            let r = class(&q.multiply(a, c));
            if *left.get_or_insert_with(|| l.clone()) != l
                || *right.get_or_insert_with(|| r.clone()) != r
            {
                compatible = false;
                break 'outer;
            }
        }
    }

    let mut unary_witness = None;
    if let Some(first) = ideal_class.first() {
        let k = class(&q.star(first));
        unary_witness = ideal_class
            .iter()
            .find(|a| class(&q.star(a)) != k)
            .map(|a| (first.clone(), a.clone()));
    }
    let idempotent_separating = ideal_class.iter().filter(|e| q.is_idempotent(e)).count() <= 1;
    Ok(CongruenceClasses {
        ideal_class,
        singletons,
        compatible,
        unary_compatible: unary_witness.is_none(),
        idempotent_separating,
        unary_witness,
    })
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealKind::NonLinear => f.write_str("nonlinear"),
            IdealKind::Principal { relation, .. } => write!(f, "principal(#{relation})"),
            IdealKind::Explicit(set) => write!(f, "explicit({} elements)", set.len()),
        }
    }
}

/// `[A]` for `A = s(t)`: never a member of the principal ideal of `t`.
pub fn source_element(q: &QSemigroup, t: usize) -> QElement {
    q.sub_element(q.network().source_index(t))
}
