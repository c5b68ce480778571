//! Words over the network alphabet and the path fragment of it.
//!
//! Symbols refer to the ambient [`Network`] by index: relations in declaration
//! order and `T0` members in sorted order. The derived `Ord` on [`Symbol`]
//! therefore lists relations first, then vertex sets, which is the order used
//! by [`enumerate_paths`].

use thiserror::Error;

use crate::network::{Network, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Rel(usize),
    Sub(usize),
    RelInv(usize),
    Zero,
}

impl Symbol {
    pub fn is_zero(self) -> bool {
        self == Symbol::Zero
    }

    pub fn is_rel(self) -> bool {
        matches!(self, Symbol::Rel(_))
    }

    pub fn is_sub(self) -> bool {
        matches!(self, Symbol::Sub(_))
    }

    /// Formal inverse; vertex sets are self-inverse.
    pub fn inverse(self) -> Symbol {
        match self {
            Symbol::Rel(t) => Symbol::RelInv(t),
            Symbol::RelInv(t) => Symbol::Rel(t),
            other => other,
        }
    }
}

/// A finite sequence of symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn zero() -> Self {
        Word(vec![Symbol::Zero])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [Symbol::Zero]
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The formal inverse: reversed, with every symbol inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn all_rel(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|s| s.is_rel())
    }

    /// `Some(a)` when the word is the single vertex-set symbol `a`.
    pub fn as_sub(&self) -> Option<usize> {
        match self.0.as_slice() {
            [Symbol::Sub(a)] => Some(*a),
            _ => None,
        }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty word")]
    EmptyWord,
    #[error("word is not a path")]
    NotAPath,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

impl Network {
    /// Source of a symbol as an index into `T0`; `None` for zero.
    pub fn sym_source(&self, s: Symbol) -> Option<usize> {
        match s {
            Symbol::Rel(t) => Some(self.source_index(t)),
            Symbol::RelInv(t) => Some(self.range_index(t)),
            Symbol::Sub(a) => Some(a),
            Symbol::Zero => None,
        }
    }

    /// Range of a symbol as an index into `T0`; `None` for zero.
    pub fn sym_range(&self, s: Symbol) -> Option<usize> {
        match s {
            Symbol::Rel(t) => Some(self.range_index(t)),
            Symbol::RelInv(t) => Some(self.source_index(t)),
            Symbol::Sub(a) => Some(a),
            Symbol::Zero => None,
        }
    }

    pub fn sub(&self, set: &VertexSet) -> Option<Symbol> {
        self.t0_index(set).map(Symbol::Sub)
    }

    pub fn rel(&self, name: &str) -> Option<Symbol> {
        self.relation_index(name).map(Symbol::Rel)
    }

    pub fn format_symbol(&self, s: Symbol) -> String {
        match s {
            Symbol::Rel(t) => self.relation(t).name.clone(),
            Symbol::RelInv(t) => format!("~{}", self.relation(t).name),
            Symbol::Sub(a) => self.t0()[a].to_string(),
            Symbol::Zero => "0".to_string(),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.0.iter()
            .map(|&s| self.format_symbol(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_symbol(&self, token: &str) -> Result<Symbol, PathError> {
        let unknown = || PathError::UnknownSymbol(token.to_string());
        if token == "0" {
            return Ok(Symbol::Zero);
        }
        if let Some(inner) = token.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(unknown)?;
            let set = VertexSet::new(
                inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty()),
            );
            return self.sub(&set).ok_or_else(unknown);
        }
        if let Some(name) = token.strip_prefix('~') {
            return self
                .relation_index(name)
                .map(Symbol::RelInv)
                .ok_or_else(unknown);
        }
        self.rel(token).ok_or_else(unknown)
    }

    /// Parses whitespace-separated tokens; braces may contain spaces.
    pub fn parse_word(&self, text: &str) -> Result<Word, PathError> {
        let mut symbols = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = text.len();
            if c == '{' {
                for (i, ch) in chars.by_ref() {
                    if ch == '}' {
                        end = i + 1;
                        break;
                    }
                }
            } else {
                while let Some(&(i, ch)) = chars.peek() {
                    if ch.is_whitespace() || ch == '{' {
                        end = i;
                        break;
                    }
                    chars.next();
                }
            }
            symbols.push(self.parse_symbol(&text[start..end])?);
        }
        if symbols.is_empty() {
            return Err(PathError::EmptyWord);
        }
        Ok(Word(symbols))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordClass {
    NotPath,
    Path { reduced: bool },
    LinearPath { reduced: bool },
}

impl WordClass {
    pub fn is_path(self) -> bool {
        !matches!(self, WordClass::NotPath)
    }

    pub fn is_reduced(self) -> bool {
        matches!(
            self,
            WordClass::Path { reduced: true } | WordClass::LinearPath { reduced: true }
        )
    }
}

/// Whether `x y` is a left-hand side of NR1 (`s(y) y` or `x r(x)`).
pub(crate) fn nr1_pair(net: &Network, x: Symbol, y: Symbol) -> bool {
    let (Some(sy), Some(rx)) = (net.sym_source(y), net.sym_range(x)) else {
        return false;
    };
    x == Symbol::Sub(sy) || y == Symbol::Sub(rx)
}

pub fn classify_word(net: &Network, w: &Word) -> Result<WordClass, PathError> {
    if w.is_empty() {
        return Err(PathError::EmptyWord);
    }
    if w.0
        .iter()
        .any(|s| matches!(s, Symbol::RelInv(_) | Symbol::Zero))
    {
        return Ok(WordClass::NotPath);
    }
    let mut linear = true;
    let mut reduced = true;
    for pair in w.0.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        let r = net.sym_range(x).expect("nonzero");
        let s = net.sym_source(y).expect("nonzero");
        if !net.meets(r, s) {
            return Ok(WordClass::NotPath);
        }
        linear &= r == s;
        reduced &= !nr1_pair(net, x, y);
    }
    Ok(if linear {
        WordClass::LinearPath { reduced }
    } else {
        WordClass::Path { reduced }
    })
}

/// `T0` indices of source and range of a path.
pub fn path_ends(net: &Network, w: &Word) -> Result<(usize, usize), PathError> {
    if !classify_word(net, w)?.is_path() {
        return Err(PathError::NotAPath);
    }
    let s = net.sym_source(w.0[0]).expect("path symbol");
    let r = net
        .sym_range(*w.0.last().expect("non-empty"))
        .expect("path symbol");
    Ok((s, r))
}

pub fn source_range(net: &Network, w: &Word) -> Result<(VertexSet, VertexSet), PathError> {
    let (s, r) = path_ends(net, w)?;
    Ok((net.t0()[s].clone(), net.t0()[r].clone()))
}

/// Path product: the concatenation when the junction meets, otherwise `0`.
pub fn compose_paths(net: &Network, a: &Word, b: &Word) -> Result<Word, PathError> {
    let (_, ra) = path_ends(net, a)?;
    let (sb, _) = path_ends(net, b)?;
    Ok(if net.meets(ra, sb) {
        a.concat(b)
    } else {
        Word::zero()
    })
}

/// Removes NR1 redexes from a path until none remain.
pub fn reduce_path(net: &Network, w: &Word) -> Word {
    let mut out: Vec<Symbol> = Vec::with_capacity(w.len());
    for &s in &w.0 {
        let mut cur = s;
        while let Some(&top) = out.last() {
            if let Symbol::Sub(a) = top {
                if net.sym_source(cur) == Some(a) {
                    // s(y) y -> y
                    out.pop();
                    continue;
                }
            }
            if net.sym_range(top).map(Symbol::Sub) == Some(cur) {
                // x r(x) -> x
                cur = top;
                out.pop();
                continue;
            }
            break;
        }
        out.push(cur);
    }
    Word(out)
}

/// Membership in the reduced linear paths: a single vertex-set symbol or a
/// non-empty relation word with exact chaining.
pub fn is_rlp(net: &Network, w: &Word) -> bool {
    if w.as_sub().is_some() {
        return true;
    }
    w.all_rel()
        && w.0.windows(2).all(|p| match (p[0], p[1]) {
            (Symbol::Rel(a), Symbol::Rel(b)) => net.range_index(a) == net.source_index(b),
            _ => false,
        })
}

pub fn is_rp(net: &Network, w: &Word) -> bool {
    classify_word(net, w).is_ok_and(WordClass::is_reduced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    RP,
    RLP,
}

/// All reduced (linear) paths of length at most `max_len`, ordered by length
/// then lexicographically by symbol.
pub fn enumerate_paths(net: &Network, max_len: usize, kind: PathKind) -> Vec<Word> {
    let rels: Vec<Symbol> = (0..net.relations().len()).map(Symbol::Rel).collect();
    let subs: Vec<Symbol> = (0..net.t0().len()).map(Symbol::Sub).collect();
    let letters: Vec<Symbol> = rels.iter().chain(&subs).copied().collect();
    if max_len == 0 {
        return Vec::new();
    }
    let mut out: Vec<Word> = letters.iter().map(|&s| Word::single(s)).collect();
    let mut layer: Vec<Word> = match kind {
        PathKind::RP => out.clone(),
        PathKind::RLP => rels.iter().map(|&s| Word::single(s)).collect(),
    };
    let extend_with = match kind {
        PathKind::RP => &letters,
        PathKind::RLP => &rels,
    };
    for _ in 1..max_len {
        let mut next = Vec::new();
        for w in &layer {
            let x = w.last().expect("non-empty");
            let rx = net.sym_range(x).expect("path symbol");
            for &y in extend_with {
                let sy = net.sym_source(y).expect("path symbol");
                let ok = match kind {
                    PathKind::RP => net.meets(rx, sy) && !nr1_pair(net, x, y),
                    PathKind::RLP => rx == sy,
                };
                if ok {
                    let mut v = w.0.clone();
                    v.push(y);
                    next.push(Word(v));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
