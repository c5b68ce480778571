//! Network right *-abundant semigroups.
//!
//! A finite [`Network`] determines a semigroup presented by length-decreasing
//! rewriting rules over relations, their formal inverses and vertex sets. This
//! crate builds the rewriting system, computes right normal forms and products,
//! enumerates bounded balls of elements, and checks Green's-type relations,
//! ideals and isomorphism structure on them.
//!
//! ```
//! use nras_core::{fixtures, QSemigroup};
//!
//! let net = fixtures::ex6();
//! let q = QSemigroup::new(&net);
//! let a = q.parse_element("t1 t2 | t2").unwrap();
//! assert_eq!(q.format_element(&q.star(&a)), "t2 | t2");
//! ```

pub mod fixtures;
pub mod ideal;
pub mod iso;
pub mod network;
pub mod order;
pub mod path;
pub mod rewrite;
pub mod semigroup;

pub use ideal::{
    explicit_ideal, nonlinear_ideal, principal_star_ideal, rees_quotient, verify_ideal, Carrier,
    CongruenceClasses, Hypotheses, IdealError, IdealKind, IdealReport, IdealSpec,
};
pub use iso::{find_isomorphism, NetworkIso};
pub use network::{validate_network, Network, NetworkError, RawNetwork, Relation, VertexSet};
pub use order::{
    classify_maximal, compare_skeletons, extract_skeleton, l_star_falsifier, l_star_related,
    leq_natural, r_related_regular, r_star_mixed, Falsifier, OrderError, OrderReport, Probe,
    RStarVerdict, Skeleton, SkeletonMatch,
};
pub use path::{
    classify_word, compose_paths, enumerate_paths, is_rlp, is_rp, reduce_path, source_range,
    PathError, PathKind, Symbol, Word, WordClass,
};
pub use rewrite::{
    inverse_junctions, CaseLabel, ConfluenceReport, CriticalTriple, RewriteError, RewriteStep,
    RewriteTrace, Rewriter, Rule, RuleSet, DEFAULT_BUDGET,
};
pub use semigroup::{ElementError, QElement, QSemigroup, Sub, SubsemigroupTag};
