//! Elements of the semigroup in right normal form.
//!
//! A non-zero element is a pair `(alpha, beta)` standing for the class of
//! `alpha beta⁻¹`, where `alpha` is a reduced path, `beta` a reduced linear
//! path and both end in the same vertex set. When `beta` is a vertex-set symbol
//! it is forced to be `r(alpha)` and the element is just `[alpha]`.
//!
//! Distinct pairs are distinct classes, so equality of elements is structural.

use std::fmt;

use thiserror::Error;

use crate::network::Network;
use crate::path::{is_rlp, is_rp, reduce_path, PathError, Symbol, Word};
use crate::rewrite::{Rewriter, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QElement {
    Zero,
    NonZero { alpha: Word, beta: Word },
}

impl QElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, QElement::Zero)
    }

    pub fn alpha(&self) -> Option<&Word> {
        match self {
            QElement::NonZero { alpha, .. } => Some(alpha),
            QElement::Zero => None,
        }
    }

    pub fn beta(&self) -> Option<&Word> {
        match self {
            QElement::NonZero { beta, .. } => Some(beta),
            QElement::Zero => None,
        }
    }

    /// `|alpha| + |beta|`, counting the vertex-set padding; zero has size 0.
    pub fn size(&self) -> usize {
        match self {
            QElement::NonZero { alpha, beta } => alpha.len() + beta.len(),
            QElement::Zero => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sub {
    Q,
    S,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsemigroupTag {
    pub in_q: bool,
    pub in_s: bool,
    pub in_r: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("alpha is not a reduced path")]
    AlphaNotReduced,
    #[error("beta is not a reduced linear path")]
    BetaNotReducedLinear,
    #[error("alpha and beta have different ranges")]
    RangeMismatch,
    #[error("operand is not in right normal form")]
    NonCanonicalOperand,
    #[error(transparent)]
    Word(#[from] PathError),
}

/// The semigroup of a network, computed with the completed rule set.
#[derive(Debug, Clone, Copy)]
pub struct QSemigroup<'n> {
    net: &'n Network,
    rw: Rewriter<'n>,
}

impl<'n> QSemigroup<'n> {
    pub fn new(net: &'n Network) -> Self {
        QSemigroup {
            net,
            rw: Rewriter::new(net, RuleSet::Completed),
        }
    }

    pub fn network(&self) -> &'n Network {
        self.net
    }

    pub fn rewriter(&self) -> &Rewriter<'n> {
        &self.rw
    }

    fn range(&self, w: &Word) -> usize {
        self.net
            .sym_range(w.last().expect("non-empty"))
            .expect("non-zero symbol")
    }

    fn source(&self, w: &Word) -> usize {
        self.net
            .sym_source(w.first().expect("non-empty"))
            .expect("non-zero symbol")
    }

    /// Validates a pair as a right normal form.
    pub fn element(&self, alpha: Word, beta: Word) -> Result<QElement, ElementError> {
        if !is_rp(self.net, &alpha) {
            return Err(ElementError::AlphaNotReduced);
        }
        if beta.is_empty() || !is_rlp(self.net, &beta) {
            return Err(ElementError::BetaNotReducedLinear);
        }
        if self.range(&alpha) != self.range(&beta) {
            return Err(ElementError::RangeMismatch);
        }
        Ok(QElement::NonZero { alpha, beta })
    }

    pub fn is_canonical(&self, e: &QElement) -> bool {
        match e {
            QElement::Zero => true,
            QElement::NonZero { alpha, beta } => self.element(alpha.clone(), beta.clone()).is_ok(),
        }
    }

    /// The element `[A]` for a `T0` index.
    pub fn sub_element(&self, a: usize) -> QElement {
        QElement::NonZero {
            alpha: Word::single(Symbol::Sub(a)),
            beta: Word::single(Symbol::Sub(a)),
        }
    }

    /// `[t t⁻¹]` for a relation index.
    pub fn rel_idempotent(&self, t: usize) -> QElement {
        QElement::NonZero {
            alpha: Word::single(Symbol::Rel(t)),
            beta: Word::single(Symbol::Rel(t)),
        }
    }

    /// Parses `alpha | beta`, `0`, or a bare word (which is canonicalized).
    pub fn parse_element(&self, text: &str) -> Result<QElement, ElementError> {
        match text.split_once('|') {
            Some((a, b)) => {
                let alpha = self.net.parse_word(a)?;
                let beta = self.net.parse_word(b)?;
                self.element(alpha, beta)
            }
            None => {
                let w = self.net.parse_word(text)?;
                Ok(self.canonicalize(&w))
            }
        }
    }

    pub fn format_element(&self, e: &QElement) -> String {
        match e {
            QElement::Zero => "0".to_string(),
            QElement::NonZero { alpha, beta } => format!(
                "{} | {}",
                self.net.format_word(alpha),
                self.net.format_word(beta)
            ),
        }
    }

    /// A representative word `alpha beta⁻¹`.
    pub fn word_of(&self, e: &QElement) -> Word {
        match e {
            QElement::Zero => Word::zero(),
            QElement::NonZero { alpha, beta } => alpha.concat(&beta.inverse()),
        }
    }

    /// Right normal form of the class of `w`.
    pub fn canonicalize(&self, w: &Word) -> QElement {
        let nf = self.rw.reduce(w);
        if nf.0.contains(&Symbol::Zero) {
            return QElement::Zero;
        }
        let split =
            nf.0.iter()
                .position(|s| matches!(s, Symbol::RelInv(_)))
                .unwrap_or(nf.len());
        let positive = Word(nf.0[..split].to_vec());
        let negative = Word(nf.0[split..].to_vec());
        debug_assert!(negative.0.iter().all(|s| matches!(s, Symbol::RelInv(_))));
        if negative.is_empty() {
            let r = self.range(&positive);
            return QElement::NonZero {
                alpha: positive,
                beta: Word::single(Symbol::Sub(r)),
            };
        }
        let beta = negative.inverse();
        let rb = self.range(&beta);
        let alpha = if positive.is_empty() {
            Word::single(Symbol::Sub(rb))
        } else if self.range(&positive) == rb {
            positive
        } else {
            let mut v = positive.0;
            v.push(Symbol::Sub(rb));
            Word(v)
        };
        QElement::NonZero { alpha, beta }
    }

    /// Brings a pair with matching ranges (or a vertex-set `beta`) into form.
    fn pair(&self, alpha: Word, beta: Word) -> QElement {
        let ra = self.range(&alpha);
        if beta.as_sub().is_some() {
            return QElement::NonZero {
                alpha,
                beta: Word::single(Symbol::Sub(ra)),
            };
        }
        let rb = self.range(&beta);
        let alpha = if ra == rb {
            alpha
        } else {
            let mut v = alpha.0;
            v.push(Symbol::Sub(rb));
            reduce_path(self.net, &Word(v))
        };
        QElement::NonZero { alpha, beta }
    }

    /// Closed-form product of two canonical elements.
    pub fn multiply(&self, a: &QElement, b: &QElement) -> QElement {
        let (
            QElement::NonZero { alpha, beta },
            QElement::NonZero {
                alpha: mu,
                beta: nu,
            },
        ) = (a, b)
        else {
            return QElement::Zero;
        };
        if beta.as_sub().is_some() {
            // a = [alpha]: the product is the path alpha mu, when it exists
            if !self.net.meets(self.range(alpha), self.source(mu)) {
                return QElement::Zero;
            }
            let p = reduce_path(self.net, &alpha.concat(mu));
            return self.pair(p, nu.clone());
        }
        if mu.starts_with(beta) {
            let xi = Word(mu.0[beta.len()..].to_vec());
            let p = if xi.is_empty() {
                alpha.clone()
            } else {
                reduce_path(self.net, &alpha.concat(&xi))
            };
            return self.pair(p, nu.clone());
        }
        let tail = if mu.all_rel() && beta.starts_with(mu) {
            Word(beta.0[mu.len()..].to_vec())
        } else if mu.as_sub() == Some(self.source(beta)) {
            beta.clone()
        } else {
            return QElement::Zero;
        };
        let new_beta = if nu.as_sub().is_some() {
            tail
        } else {
            nu.concat(&tail)
        };
        self.pair(alpha.clone(), new_beta)
    }

    /// Product with operand validation.
    pub fn try_multiply(&self, a: &QElement, b: &QElement) -> Result<QElement, ElementError> {
        if !self.is_canonical(a) || !self.is_canonical(b) {
            return Err(ElementError::NonCanonicalOperand);
        }
        Ok(self.multiply(a, b))
    }

    /// Product by rewriting the concatenated representative words.
    pub fn multiply_oracle(&self, a: &QElement, b: &QElement) -> QElement {
        self.canonicalize(&self.word_of(a).concat(&self.word_of(b)))
    }

    pub fn star(&self, a: &QElement) -> QElement {
        match a {
            QElement::Zero => QElement::Zero,
            QElement::NonZero { beta, .. } => QElement::NonZero {
                alpha: beta.clone(),
                beta: beta.clone(),
            },
        }
    }

    pub fn is_idempotent(&self, a: &QElement) -> bool {
        match a {
            QElement::Zero => true,
            QElement::NonZero { alpha, beta } => alpha == beta,
        }
    }

    pub fn is_regular(&self, a: &QElement) -> bool {
        match a {
            QElement::Zero => true,
            QElement::NonZero { alpha, .. } => is_rlp(self.net, alpha),
        }
    }

    pub fn inverse(&self, a: &QElement) -> Option<QElement> {
        match a {
            QElement::Zero => Some(QElement::Zero),
            QElement::NonZero { alpha, beta } => {
                is_rlp(self.net, alpha).then(|| QElement::NonZero {
                    alpha: beta.clone(),
                    beta: alpha.clone(),
                })
            }
        }
    }

    pub fn in_s(&self, a: &QElement) -> bool {
        match a {
            QElement::Zero => true,
            QElement::NonZero { beta, .. } => beta.as_sub().is_none(),
        }
    }

    pub fn in_r(&self, a: &QElement) -> bool {
        match a {
            QElement::Zero => true,
            QElement::NonZero { alpha, beta } => {
                beta.as_sub().is_none() && alpha.all_rel() && is_rlp(self.net, alpha)
            }
        }
    }

    pub fn tag(&self, a: &QElement) -> SubsemigroupTag {
        SubsemigroupTag {
            in_q: true,
            in_s: self.in_s(a),
            in_r: self.in_r(a),
        }
    }

    pub fn in_sub(&self, a: &QElement, which: Sub) -> bool {
        match which {
            Sub::Q => true,
            Sub::S => self.in_s(a),
            Sub::R => self.in_r(a),
        }
    }

    /// Every element with `|alpha| + |beta| <= max_len` in the chosen
    /// subsemigroup: zero first, then by size and structure.
    pub fn enumerate_ball(&self, max_len: usize, which: Sub) -> Vec<QElement> {
        use crate::path::{enumerate_paths, PathKind};
        let mut out = vec![QElement::Zero];
        if max_len < 2 {
            return out;
        }
        let rp = enumerate_paths(self.net, max_len - 1, PathKind::RP);
        let rlp = enumerate_paths(self.net, max_len - 1, PathKind::RLP);
        let n0 = self.net.t0().len();
        let mut by_range: Vec<Vec<&Word>> = vec![Vec::new(); n0];
        for b in &rlp {
            by_range[self.range(b)].push(b);
        }
        let mut elems = Vec::new();
        for a in &rp {
            let ra = self.range(a);
            for b in &by_range[ra] {
                if a.len() + b.len() > max_len {
                    continue;
                }
                let e = QElement::NonZero {
                    alpha: a.clone(),
                    beta: (*b).clone(),
                };
                if self.in_sub(&e, which) {
                    elems.push(e);
                }
            }
        }
        elems.sort_by(|x, y| (x.size(), x).cmp(&(y.size(), y)));
        out.extend(elems);
        out
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sub::Q => "Q",
            Sub::S => "S",
            Sub::R => "R",
        })
    }
}

impl std::str::FromStr for Sub {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(Sub::Q),
            "S" | "s" => Ok(Sub::S),
            "R" | "r" => Ok(Sub::R),
            other => Err(format!(
                "unknown subsemigroup `{other}` (expected Q, S or R)"
            )),
        }
    }
}
