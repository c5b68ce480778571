//! Green's-type relations, the natural partial order on idempotents, and the
//! order-theoretic skeleton of a ball.
//!
//! The closed forms decide L* (equal `beta`) and, between regular elements, R
//! (equal `alpha`). [`l_star_falsifier`] checks the defining biconditional
//! over a finite probe set with an adjoined identity and can only refute.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::path::{is_rlp, Word};
use crate::semigroup::{QElement, QSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("zero operand")]
    ZeroOperand,
    #[error("operand is not regular")]
    NotRegularOperand,
    #[error("operand is not idempotent")]
    NotIdempotent,
    #[error("ball lacks required element {0}")]
    InsufficientBall(String),
}

/// A probe from the ball with an adjoined identity (`None`).
pub type Probe = Option<QElement>;

/// `a x`, where `x = None` stands for the identity.
pub fn act(q: &QSemigroup, a: &QElement, x: &Probe) -> QElement {
    match x {
        Some(x) => q.multiply(a, x),
        None => a.clone(),
    }
}

/// The ball as probes, identity first.
pub fn probes_with_identity(ball: &[QElement]) -> Vec<Probe> {
    std::iter::once(None)
        .chain(ball.iter().cloned().map(Some))
        .collect()
}

pub fn l_star_related(a: &QElement, b: &QElement) -> Result<bool, OrderError> {
    match (a.beta(), b.beta()) {
        (Some(x), Some(y)) => Ok(x == y),
        _ => Err(OrderError::ZeroOperand),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Falsifier {
    ConsistentSoFar,
    RefutedBy(Probe, Probe),
}

/// The partition of `probes` induced by `x ↦ a x`, as the index of the first
/// probe in each block.
pub fn product_signature(q: &QSemigroup, a: &QElement, probes: &[Probe]) -> Vec<usize> {
    let mut first: BTreeMap<QElement, usize> = BTreeMap::new();
    probes
        .iter()
        .enumerate()
        .map(|(i, x)| *first.entry(act(q, a, x)).or_insert(i))
        .collect()
}

/// Looks for `x, y` with `ax = ay` but `bx != by`, or the converse.
pub fn l_star_falsifier(q: &QSemigroup, a: &QElement, b: &QElement, probes: &[Probe]) -> Falsifier {
    let sa = product_signature(q, a, probes);
    let sb = product_signature(q, b, probes);
    match (0..probes.len()).find(|&i| sa[i] != sb[i]) {
        None => Falsifier::ConsistentSoFar,
        Some(i) => {
            let j = sa[i].min(sb[i]);
            Falsifier::RefutedBy(probes[j].clone(), probes[i].clone())
        }
    }
}

pub fn r_related_regular(q: &QSemigroup, a: &QElement, b: &QElement) -> Result<bool, OrderError> {
    let (Some(x), Some(y)) = (a.alpha(), b.alpha()) else {
        return Err(OrderError::ZeroOperand);
    };
    if !is_rlp(q.network(), x) || !is_rlp(q.network(), y) {
        return Err(OrderError::NotRegularOperand);
    }
    Ok(x == y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RStarVerdict {
    DefinitelyNot,
    Unknown,
}

/// Decides R* only in the mixed case where exactly one operand is regular.
pub fn r_star_mixed(
    q: &QSemigroup,
    a: &QElement,
    b: &QElement,
) -> Result<RStarVerdict, OrderError> {
    let (Some(x), Some(y)) = (a.alpha(), b.alpha()) else {
        return Err(OrderError::ZeroOperand);
    };
    let net = q.network();
    Ok(if is_rlp(net, x) != is_rlp(net, y) {
        RStarVerdict::DefinitelyNot
    } else {
        RStarVerdict::Unknown
    })
}

/// `e <= f` iff `e = ef = fe`.
pub fn leq_natural(q: &QSemigroup, e: &QElement, f: &QElement) -> Result<bool, OrderError> {
    if !q.is_idempotent(e) || !q.is_idempotent(f) {
        return Err(OrderError::NotIdempotent);
    }
    Ok(&q.multiply(e, f) == e && &q.multiply(f, e) == e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub maximal_in_eq: BTreeSet<QElement>,
    /// Maximal idempotents once the vertex-set idempotents are removed.
    pub maximal_in_e: BTreeSet<QElement>,
    /// Covering pairs `(e, f)` with `e < f`.
    pub hasse_pairs: Vec<(QElement, QElement)>,
}

fn is_sub_idempotent(e: &QElement) -> bool {
    e.alpha().and_then(Word::as_sub).is_some()
}

pub fn classify_maximal(q: &QSemigroup, ball: &[QElement]) -> OrderReport {
    let idem: Vec<&QElement> = ball.iter().filter(|e| q.is_idempotent(e)).collect();
    let n = idem.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = leq_natural(q, idem[i], idem[j]).expect("idempotents");
        }
    }
    let maximal_among = |keep: &dyn Fn(usize) -> bool| -> BTreeSet<QElement> {
        (0..n)
            .filter(|&i| keep(i))
            .filter(|&i| !(0..n).any(|j| j != i && keep(j) && le[i][j]))
            .map(|i| idem[i].clone())
            .collect()
    };
    let maximal_in_eq = maximal_among(&|_| true);
    let maximal_in_e = maximal_among(&|i| !is_sub_idempotent(idem[i]));
    let mut hasse_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !le[i][j] {
                continue;
            }
            let covered = (0..n).any(|k| k != i && k != j && le[i][k] && le[k][j]);
            if !covered {
                hasse_pairs.push((idem[i].clone(), idem[j].clone()));
            }
        }
    }
    hasse_pairs.sort();
    OrderReport {
        maximal_in_eq,
        maximal_in_e,
        hasse_pairs,
    }
}

/// Order-theoretic incidence data recovered from a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    /// Maximal idempotents `[A]`, sorted.
    pub sub_idempotents: Vec<QElement>,
    /// Index pairs `(i, j)`, `i != j`, with a non-zero product `[A_i][A_j]`.
    pub overlaps: BTreeSet<(usize, usize)>,
    /// The idempotents `[t t⁻¹]`, sorted.
    pub t_idempotents: Vec<QElement>,
    /// For each `t_idempotents[k]`, the index of its source idempotent.
    pub source_of: Vec<usize>,
    /// For each `t_idempotents[k]`, the index of `[t⁻¹ t]`.
    pub range_of: Vec<usize>,
}

impl Skeleton {
    pub fn source_of(&self, q: &QElement) -> Option<&QElement> {
        let k = self.t_idempotents.iter().position(|x| x == q)?;
        Some(&self.sub_idempotents[self.source_of[k]])
    }

    pub fn range_of(&self, q: &QElement) -> Option<&QElement> {
        let k = self.t_idempotents.iter().position(|x| x == q)?;
        Some(&self.sub_idempotents[self.range_of[k]])
    }
}

pub fn extract_skeleton(q: &QSemigroup, ball: &[QElement]) -> Result<Skeleton, OrderError> {
    let net = q.network();
    let present: BTreeSet<&QElement> = ball.iter().collect();
    let required = (0..net.t0().len())
        .map(|a| q.sub_element(a))
        .chain((0..net.relations().len()).map(|t| q.rel_idempotent(t)));
    for e in required {
        if !present.contains(&e) {
            return Err(OrderError::InsufficientBall(q.format_element(&e)));
        }
    }
    let report = classify_maximal(q, ball);
    let sub_idempotents: Vec<QElement> = report.maximal_in_eq.into_iter().collect();
    let t_idempotents: Vec<QElement> = report.maximal_in_e.into_iter().collect();
    let index_of = |e: &QElement| sub_idempotents.iter().position(|x| x == e);

    let mut overlaps = BTreeSet::new();
    for (i, a) in sub_idempotents.iter().enumerate() {
        for (j, b) in sub_idempotents.iter().enumerate() {
            if i != j && !q.multiply(a, b).is_zero() {
                overlaps.insert((i, j));
            }
        }
    }
    let mut source_of = Vec::new();
    let mut range_of = Vec::new();
    for t in &t_idempotents {
        let fixing: Vec<usize> = (0..sub_idempotents.len())
            .filter(|&i| &q.multiply(&sub_idempotents[i], t) == t)
            .collect();
        let [s] = fixing.as_slice() else {
            return Err(OrderError::InsufficientBall(format!(
                "a unique source for {}",
                q.format_element(t)
            )));
        };
        source_of.push(*s);
        let alpha = t.alpha().expect("non-zero");
        let r = q.canonicalize(&alpha.inverse().concat(alpha));
        let r = index_of(&r).ok_or_else(|| OrderError::InsufficientBall(q.format_element(&r)))?;
        range_of.push(r);
    }
    Ok(Skeleton {
        sub_idempotents,
        overlaps,
        t_idempotents,
        source_of,
        range_of,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonMatch {
    pub sub_map: Vec<(QElement, QElement)>,
    pub t_map: Vec<(QElement, QElement)>,
}

/// Searches for bijections of vertex-set and relation idempotents that
/// preserve overlaps and source/range incidence.
pub fn compare_skeletons(g: &Skeleton, d: &Skeleton) -> Option<SkeletonMatch> {
    let n = g.sub_idempotents.len();
    if n != d.sub_idempotents.len() || g.t_idempotents.len() != d.t_idempotents.len() {
        return None;
    }
    if g.overlaps.len() != d.overlaps.len() {
        return None;
    }
    let profile = |s: &Skeleton, i: usize| {
        (
            s.overlaps.iter().filter(|&&(a, _)| a == i).count(),
            s.source_of.iter().filter(|&&x| x == i).count(),
            s.range_of.iter().filter(|&&x| x == i).count(),
        )
    };
    let gp: Vec<_> = (0..n).map(|i| profile(g, i)).collect();
    let dp: Vec<_> = (0..n).map(|i| profile(d, i)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !assign(g, d, &gp, &dp, 0, &mut map, &mut used) {
        return None;
    }
    // pair relation idempotents with equal mapped (source, range)
    let mut pool: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for k in 0..d.t_idempotents.len() {
        pool.entry((d.source_of[k], d.range_of[k]))
            .or_default()
            .push(k);
    }
    let mut t_map = Vec::new();
    for k in 0..g.t_idempotents.len() {
        let key = (map[g.source_of[k]], map[g.range_of[k]]);
        let k2 = pool.get_mut(&key)?.pop()?;
        t_map.push((g.t_idempotents[k].clone(), d.t_idempotents[k2].clone()));
    }
    let sub_map = (0..n)
        .map(|i| {
            (
                g.sub_idempotents[i].clone(),
                d.sub_idempotents[map[i]].clone(),
            )
        })
        .collect();
    Some(SkeletonMatch { sub_map, t_map })
}

fn incidence(s: &Skeleton, map: &dyn Fn(usize) -> usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = s
        .source_of
        .iter()
        .zip(&s.range_of)
        .map(|(&a, &b)| (map(a), map(b)))
        .collect();
    v.sort();
    v
}

fn assign(
    g: &Skeleton,
    d: &Skeleton,
    gp: &[(usize, usize, usize)],
    dp: &[(usize, usize, usize)],
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = map.len();
    if i == n {
        return incidence(g, &|x| map[x]) == incidence(d, &|x| x);
    }
    for j in 0..n {
        if used[j] || gp[i] != dp[j] {
            continue;
        }
        let consistent = (0..i).all(|k| {
            g.overlaps.contains(&(i, k)) == d.overlaps.contains(&(j, map[k]))
                && g.overlaps.contains(&(k, i)) == d.overlaps.contains(&(map[k], j))
        });
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if assign(g, d, gp, dp, i + 1, map, used) {
            return true;
        }
        used[j] = false;
    }
    map[i] = usize::MAX;
    false
}
