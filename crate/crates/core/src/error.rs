//! Error type shared by all modules of this crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The document text is not a well-formed representation document.
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate path id {0:?}")]
    DuplicateId(String),
    #[error("path {id:?}: segment from ({x0},{y0}) to ({x1},{y1}) is not axis-parallel")]
    NotAxisParallel {
        id: String,
        x0: i64,
        y0: i64,
        x1: i64,
        y1: i64,
    },
    /// Interior sequence points must be genuine 90-degree bends: consecutive
    /// collinear segments (straight continuations and reversals) are rejected.
    #[error("path {id:?}: interior point ({x},{y}) is not a bend")]
    NotABend { id: String, x: i64, y: i64 },
    #[error("path {0:?} has fewer than two points")]
    SinglePointPath(String),
    #[error("shared grid-edge under CPG flavor: [({x0},{y0}),({x1},{y1})] used by {a:?} and {b:?}")]
    SharedGridEdge {
        x0: i64,
        y0: i64,
        x1: i64,
        y1: i64,
        a: String,
        b: String,
    },
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    /// `endpoint_normalize` requires every path to meet at least one other.
    #[error("path {0:?} has no intersections (isolated vertex)")]
    IsolatedVertex(String),
    #[error("cut has {edges} crossing edges, exceeding the budget of {budget}")]
    CrossingBudgetExceeded { edges: usize, budget: usize },
    #[error("neighbor-class budget of {budget} exceeded at a cut")]
    ClassBudgetExceeded { budget: usize },
    #[error("solver budget exceeded: {0}")]
    SolverBudget(String),
    #[error("generation budget exhausted: {0}")]
    GenerationBudget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A certified bound or structural theorem failed at runtime; this
    /// indicates a bug, never a property of the input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
