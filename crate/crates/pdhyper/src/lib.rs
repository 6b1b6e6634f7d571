//! Projective dimension of square-free monomial ideals whose separated
//! hypergraph is a string or a cycle: closed formula, peel-off recursion,
//! and an exact resolution-based oracle for cross-checking.

pub mod hypergraph;
pub mod ideal;
pub mod invariants;
pub mod oracle;
pub mod pd;

pub use hypergraph::{Face, Hypergraph, HypergraphError, Shape, Vertex};
pub use ideal::{canonical_ideal, random_ideal, IdealError, Monomial, MonomialIdeal};
pub use invariants::{
    recursion_checks, InvariantError, OpenRun, Profile, RecursionReport, ShapeKind,
    TwoSpecialConfig,
};
pub use oracle::{
    betti_mod_p, grade_oracle, pd_oracle, BettiTable, OracleError, TaylorComplex,
};
pub use pd::{
    grade, is_cohen_macaulay, pd, pd_cycle_algorithm, pd_formula, pd_string_algorithm,
    CmVerdict, Method, MethodUsed, PdError, PdResult, TraceStep,
};
