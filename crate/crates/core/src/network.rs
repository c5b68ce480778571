//! Finite networks.
//!
//! A network is a finite vertex set together with named relations, each an
//! ordered pair of disjoint non-empty vertex sets (source, range). The derived
//! alphabet `T0` collects every source and range plus all singleton vertex
//! sets; each member acts as an empty path whose source and range are itself.
//!
//! Every vertex set that can occur as an endpoint of a symbol is a member of
//! `T0`, so endpoints are stored as indices into [`Network::t0`] and
//! intersection tests are a table lookup.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A sorted, duplicate-free set of vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<String>);

impl VertexSet {
    pub fn new<I, S>(members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut members: Vec<String> = members.into_iter().map(Into::into).collect();
        members.sort();
        members.dedup();
        VertexSet(members)
    }

    pub fn singleton(v: impl Into<String>) -> Self {
        VertexSet(vec![v.into()])
    }

    pub fn members(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.binary_search_by(|m| m.as_str().cmp(v)).is_ok()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// Image under a vertex renaming.
    pub fn map(&self, f: impl Fn(&str) -> String) -> VertexSet {
        VertexSet::new(self.0.iter().map(|v| f(v)))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub source: VertexSet,
    pub range: VertexSet,
}

/// Unvalidated network description, as read from a file or built in code.
#[derive(Debug, Clone, Default)]
pub struct RawNetwork {
    pub vertices: Vec<String>,
    pub relations: Vec<RawRelation>,
}

#[derive(Debug, Clone)]
pub struct RawRelation {
    pub name: String,
    pub source: Vec<String>,
    pub range: Vec<String>,
    /// 1-based line in the source text, when parsed.
    pub line: Option<usize>,
}

impl RawNetwork {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        RawNetwork {
            vertices: vertices.into_iter().map(Into::into).collect(),
            relations: Vec::new(),
        }
    }

    pub fn relation<S: Into<String>>(
        mut self,
        name: impl Into<String>,
        source: impl IntoIterator<Item = S>,
        range: impl IntoIterator<Item = S>,
    ) -> Self {
        self.relations.push(RawRelation {
            name: name.into(),
            source: source.into_iter().map(Into::into).collect(),
            range: range.into_iter().map(Into::into).collect(),
            line: None,
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("relation `{relation}` has an empty source or range")]
    EmptySourceOrRange { relation: String },
    #[error("relation `{relation}` has overlapping source and range")]
    SourceRangeOverlap { relation: String },
    #[error("relation name `{0}` declared twice")]
    DuplicateRelationName(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("relation `{relation}` mentions undeclared vertex `{vertex}`")]
    UnknownVertex { relation: String, vertex: String },
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("network has no vertices")]
    NoVertices,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {cause}")]
    AtLine {
        line: usize,
        #[source]
        cause: Box<NetworkError>,
    },
}

/// A validated finite network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<String>,
    relations: Vec<Relation>,
    t0: Vec<VertexSet>,
    source_idx: Vec<usize>,
    range_idx: Vec<usize>,
    meets: Vec<Vec<bool>>,
}

fn valid_identifier(s: &str) -> bool {
    !s.is_empty()
        && s != "0"
        && !s.starts_with('~')
        && s.chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | ',' | '|' | ':' | '#'))
        && !s.contains("->")
}

/// Checks every network invariant and builds the derived alphabet.
pub fn validate_network(raw: &RawNetwork) -> Result<Network, NetworkError> {
    let mut vertices = BTreeSet::new();
    for v in &raw.vertices {
        if !valid_identifier(v) {
            return Err(NetworkError::InvalidIdentifier(v.clone()));
        }
        if !vertices.insert(v.clone()) {
            return Err(NetworkError::DuplicateVertex(v.clone()));
        }
    }
    if vertices.is_empty() {
        return Err(NetworkError::NoVertices);
    }

    let mut names = BTreeSet::new();
    let mut relations = Vec::with_capacity(raw.relations.len());
    for r in &raw.relations {
        let check = || -> Result<Relation, NetworkError> {
            if !valid_identifier(&r.name) {
                return Err(NetworkError::InvalidIdentifier(r.name.clone()));
            }
            if !names.contains(&r.name) {
                // inserted below once the relation is accepted
            } else {
                return Err(NetworkError::DuplicateRelationName(r.name.clone()));
            }
            for v in r.source.iter().chain(&r.range) {
                if !vertices.contains(v) {
                    return Err(NetworkError::UnknownVertex {
                        relation: r.name.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            let source = VertexSet::new(r.source.iter().cloned());
            let range = VertexSet::new(r.range.iter().cloned());
            if source.is_empty() || range.is_empty() {
                return Err(NetworkError::EmptySourceOrRange {
                    relation: r.name.clone(),
                });
            }
            if source.intersects(&range) {
                return Err(NetworkError::SourceRangeOverlap {
                    relation: r.name.clone(),
                });
            }
            Ok(Relation {
                name: r.name.clone(),
                source,
                range,
            })
        };
        let rel = check().map_err(|e| match r.line {
            Some(line) => NetworkError::AtLine {
                line,
                cause: Box::new(e),
            },
            None => e,
        })?;
        names.insert(rel.name.clone());
        relations.push(rel);
    }

    let vertices: Vec<String> = vertices.into_iter().collect();
    let mut t0: BTreeSet<VertexSet> = vertices.iter().map(VertexSet::singleton).collect();
    for r in &relations {
        t0.insert(r.source.clone());
        t0.insert(r.range.clone());
    }
    let t0: Vec<VertexSet> = t0.into_iter().collect();
    let index = |s: &VertexSet| t0.binary_search(s).expect("endpoint is in T0");
    let source_idx = relations.iter().map(|r| index(&r.source)).collect();
    let range_idx = relations.iter().map(|r| index(&r.range)).collect();
    let meets = t0
        .iter()
        .map(|a| t0.iter().map(|b| a.intersects(b)).collect())
        .collect();

    Ok(Network {
        vertices,
        relations,
        t0,
        source_idx,
        range_idx,
        meets,
    })
}

impl Network {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &Relation {
        &self.relations[i]
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    /// The derived alphabet `T0`, sorted.
    pub fn t0(&self) -> &[VertexSet] {
        &self.t0
    }

    pub fn t0_index(&self, set: &VertexSet) -> Option<usize> {
        self.t0.binary_search(set).ok()
    }

    /// Index into [`Network::t0`] of the source of relation `i`.
    pub fn source_index(&self, i: usize) -> usize {
        self.source_idx[i]
    }

    /// Index into [`Network::t0`] of the range of relation `i`.
    pub fn range_index(&self, i: usize) -> usize {
        self.range_idx[i]
    }

    /// Whether the `T0` members at indices `a` and `b` intersect.
    pub fn meets(&self, a: usize, b: usize) -> bool {
        self.meets[a][b]
    }

    /// True when the `T0` member at index `a` is a single vertex.
    pub fn is_vertex(&self, a: usize) -> bool {
        self.t0[a].len() == 1
    }

    /// Number of relations whose source equals `a`.
    pub fn out_index(&self, a: &VertexSet) -> usize {
        self.relations.iter().filter(|r| &r.source == a).count()
    }

    /// True when every source and range is a singleton.
    pub fn is_graph(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.source.len() == 1 && r.range.len() == 1)
    }

    /// Renders the network in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertices.join(" "));
        for r in &self.relations {
            out.push_str(&format!(
                "rel {} : {} -> {}\n",
                r.name,
                r.source.members().join(" "),
                r.range.members().join(" ")
            ));
        }
        out
    }

    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork {
            vertices: self.vertices.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RawRelation {
                    name: r.name.clone(),
                    source: r.source.members().to_vec(),
                    range: r.range.members().to_vec(),
                    line: None,
                })
                .collect(),
        }
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # comment
    /// vertices v1 v2 v3 v4
    /// rel t1 : v1 v2 -> v3
    /// ```
    pub fn parse(text: &str) -> Result<Network, NetworkError> {
        let mut raw = RawNetwork::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| NetworkError::Syntax {
                line: line_no,
                message: message.to_string(),
            };
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .unwrap_or((content, ""));
            match keyword {
                "vertices" => {
                    let before = raw.vertices.len();
                    raw.vertices
                        .extend(rest.split_whitespace().map(String::from));
                    if raw.vertices.len() == before {
                        return Err(syntax("`vertices` needs at least one name"));
                    }
                }
                "rel" => {
                    let (name, ends) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax("expected `rel NAME : SOURCE -> RANGE`"))?;
                    let (source, range) = ends
                        .split_once("->")
                        .ok_or_else(|| syntax("expected `->` between source and range"))?;
                    let name = name.trim();
                    if name.split_whitespace().count() != 1 {
                        return Err(syntax("relation name must be a single token"));
                    }
                    raw.relations.push(RawRelation {
                        name: name.to_string(),
                        source: source.split_whitespace().map(String::from).collect(),
                        range: range.split_whitespace().map(String::from).collect(),
                        line: Some(line_no),
                    });
                }
                other => return Err(syntax(&format!("unknown declaration `{other}`"))),
            }
        }
        validate_network(&raw)
    }
}

impl FromStr for Network {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Network::parse(s)
    }
}
