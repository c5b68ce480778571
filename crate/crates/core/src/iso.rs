//! Network isomorphisms and their action on words and elements.
//!
//! The search backtracks over relation assignments. Once every relation is
//! placed, a vertex bijection exists exactly when the two networks have the
//! same multiset of vertex membership patterns, read through the relation map.

use std::collections::BTreeMap;

use crate::network::Network;
use crate::path::{Symbol, Word};
use crate::semigroup::QElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkIso {
    pub vertex_map: BTreeMap<String, String>,
    pub relation_map: BTreeMap<String, String>,
}

fn invert(m: &BTreeMap<String, String>) -> BTreeMap<String, String> {
    m.iter().map(|(k, v)| (v.clone(), k.clone())).collect()
}

impl NetworkIso {
    pub fn inverse(&self) -> NetworkIso {
        NetworkIso {
            vertex_map: invert(&self.vertex_map),
            relation_map: invert(&self.relation_map),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NetworkIso) -> NetworkIso {
        let chain = |a: &BTreeMap<String, String>, b: &BTreeMap<String, String>| {
            a.iter()
                .filter_map(|(k, v)| b.get(v).map(|w| (k.clone(), w.clone())))
                .collect()
        };
        NetworkIso {
            vertex_map: chain(&self.vertex_map, &other.vertex_map),
            relation_map: chain(&self.relation_map, &other.relation_map),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().all(|(k, v)| k == v) && self.relation_map.iter().all(|(k, v)| k == v)
    }

    /// Checks bijectivity and that sources and ranges are carried over.
    pub fn verify(&self, g: &Network, d: &Network) -> bool {
        let bijective = |m: &BTreeMap<String, String>, dom: Vec<&String>, cod: Vec<&String>| {
            let mut img: Vec<&String> = m.values().collect();
            img.sort();
            let mut cod = cod;
            cod.sort();
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut dom = dom;
            dom.sort();
            keys == dom && img == cod
        };
        if !bijective(
            &self.vertex_map,
            g.vertices().iter().collect(),
            d.vertices().iter().collect(),
        ) || !bijective(
            &self.relation_map,
            g.relations().iter().map(|r| &r.name).collect(),
            d.relations().iter().map(|r| &r.name).collect(),
        ) {
            return false;
        }
        let vmap = |v: &str| self.vertex_map[v].clone();
        g.relations().iter().all(|r| {
            let Some(j) = d.relation_index(&self.relation_map[&r.name]) else {
                return false;
            };
            let target = d.relation(j);
            r.source.map(vmap) == target.source && r.range.map(vmap) == target.range
        })
    }

    pub fn map_symbol(&self, g: &Network, d: &Network, s: Symbol) -> Symbol {
        let rel = |t: usize| {
            d.relation_index(&self.relation_map[&g.relation(t).name])
                .expect("relation image exists")
        };
        match s {
            Symbol::Rel(t) => Symbol::Rel(rel(t)),
            Symbol::RelInv(t) => Symbol::RelInv(rel(t)),
            Symbol::Sub(a) => {
                let image = g.t0()[a].map(|v| self.vertex_map[v].clone());
                Symbol::Sub(d.t0_index(&image).expect("T0 is preserved"))
            }
            Symbol::Zero => Symbol::Zero,
        }
    }

    pub fn map_word(&self, g: &Network, d: &Network, w: &Word) -> Word {
        Word(w.0.iter().map(|&s| self.map_symbol(g, d, s)).collect())
    }

    pub fn map_element(&self, g: &Network, d: &Network, e: &QElement) -> QElement {
        match e {
            QElement::Zero => QElement::Zero,
            QElement::NonZero { alpha, beta } => QElement::NonZero {
                alpha: self.map_word(g, d, alpha),
                beta: self.map_word(g, d, beta),
            },
        }
    }
}

struct Search<'a> {
    g: &'a Network,
    d: &'a Network,
    /// Per relation: (|s|, |r|, o(s), o(r)).
    gp: Vec<(usize, usize, usize, usize)>,
    dp: Vec<(usize, usize, usize, usize)>,
    map: Vec<usize>,
    used: Vec<bool>,
}

fn profile(n: &Network) -> Vec<(usize, usize, usize, usize)> {
    n.relations()
        .iter()
        .map(|r| {
            (
                r.source.len(),
                r.range.len(),
                n.out_index(&r.source),
                n.out_index(&r.range),
            )
        })
        .collect()
}

fn overlap(a: &crate::network::VertexSet, b: &crate::network::VertexSet) -> usize {
    a.members().iter().filter(|v| b.contains(v)).count()
}

impl Search<'_> {
    fn consistent(&self, i: usize, j: usize) -> bool {
        let (gi, dj) = (self.g.relation(i), self.d.relation(j));
        (0..i).all(|k| {
            let (gk, dk) = (self.g.relation(k), self.d.relation(self.map[k]));
            overlap(&gi.source, &gk.source) == overlap(&dj.source, &dk.source)
                && overlap(&gi.source, &gk.range) == overlap(&dj.source, &dk.range)
                && overlap(&gi.range, &gk.source) == overlap(&dj.range, &dk.source)
                && overlap(&gi.range, &gk.range) == overlap(&dj.range, &dk.range)
        })
    }

    fn signatures(
        &self,
        n: &Network,
        rel_image: &dyn Fn(usize) -> usize,
    ) -> Vec<(Vec<(usize, u8)>, String)> {
        let mut out: Vec<(Vec<(usize, u8)>, String)> = n
            .vertices()
            .iter()
            .map(|v| {
                let mut sig = Vec::new();
                for (t, r) in n.relations().iter().enumerate() {
                    if r.source.contains(v) {
                        sig.push((rel_image(t), 0));
                    }
                    if r.range.contains(v) {
                        sig.push((rel_image(t), 1));
                    }
                }
                sig.sort();
                (sig, v.clone())
            })
            .collect();
        out.sort();
        out
    }

    fn vertex_map(&self) -> Option<BTreeMap<String, String>> {
        let gs = self.signatures(self.g, &|t| self.map[t]);
        let ds = self.signatures(self.d, &|t| t);
        if gs.iter().map(|x| &x.0).ne(ds.iter().map(|x| &x.0)) {
            return None;
        }
        Some(
            gs.into_iter()
                .zip(ds)
                .map(|((_, v), (_, w))| (v, w))
                .collect(),
        )
    }

    fn run(&mut self, i: usize) -> Option<BTreeMap<String, String>> {
        if i == self.map.len() {
            return self.vertex_map();
        }
        for j in 0..self.map.len() {
            if self.used[j] || self.gp[i] != self.dp[j] || !self.consistent(i, j) {
                continue;
            }
            self.map[i] = j;
            self.used[j] = true;
            if let Some(v) = self.run(i + 1) {
                return Some(v);
            }
            self.used[j] = false;
        }
        None
    }
}

/// An isomorphism `g -> d`, if one exists.
pub fn find_isomorphism(g: &Network, d: &Network) -> Option<NetworkIso> {
    if g.vertices().len() != d.vertices().len()
        || g.relations().len() != d.relations().len()
        || g.t0().len() != d.t0().len()
    {
        return None;
    }
    let (gp, dp) = (profile(g), profile(d));
    let (mut gs, mut ds) = (gp.clone(), dp.clone());
    gs.sort();
    ds.sort();
    if gs != ds {
        return None;
    }
    let n = gp.len();
    let mut search = Search {
        g,
        d,
        gp,
        dp,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    let vertex_map = search.run(0)?;
    let relation_map = (0..n)
        .map(|i| {
            (
                g.relation(i).name.clone(),
                d.relation(search.map[i]).name.clone(),
            )
        })
        .collect();
    let iso = NetworkIso {
        vertex_map,
        relation_map,
    };
    debug_assert!(iso.verify(g, d));
    Some(iso)
}
