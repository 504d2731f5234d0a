//! Vertex-transitive digraphs of out-degree 2 built from group data: their
//! 1-factorizations, the block/phase analysis of each factorization, and the search
//! for relocatable trees and sharply transitive word sets.
//!
//! ```
//! use spanfact::digraph::{classify_factorizations, enumerate_factorizations, CosetDigraph};
//! use spanfact::fixtures;
//!
//! let d = CosetDigraph::build(&fixtures::a5_ex3().unwrap()).unwrap();
//! let (alt, facs) = enumerate_factorizations(&d.digraph, 24).unwrap();
//! assert_eq!(facs.len(), 64);
//! let classes = classify_factorizations(&alt, &facs, &d.default_automorphisms(), true).unwrap();
//! assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), 64);
//! ```

pub mod blocks;
pub mod cli;
pub mod config;
pub mod digraph;
pub mod fixtures;
pub mod group;
pub mod perm;
pub mod report;
pub mod spanning;

use thiserror::Error;

pub use blocks::{BlockError, BlockSystem, PhaseProfile, PositionSystem};
pub use config::{ConfigError, ExperimentConfig};
pub use digraph::{AltCycleDecomposition, CosetDigraph, Digraph2, DigraphError, Factorization};
pub use group::{FiniteGroup, GroupError, Presentation};
pub use perm::{CycleType, PermError, Permutation, Symbol, Word};
pub use report::{Format, ReportRecord};
pub use spanning::{RelocTree, SpanError, WordSet};

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CONFIG: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(ConfigError::Group(GroupError::SizeCap { .. })) => exit::BUDGET,
            Error::Config(_) | Error::Io { .. } | Error::Usage(_) => exit::CONFIG,
            Error::Group(GroupError::SizeCap { .. })
            | Error::Digraph(DigraphError::Group(GroupError::SizeCap { .. }))
            | Error::Digraph(DigraphError::TooManyCycles { .. })
            | Error::Budget(_) => exit::BUDGET,
            Error::Group(GroupError::Perm(_)) => exit::CONFIG,
            Error::Group(_) | Error::Digraph(_) | Error::Block(_) | Error::Span(_) => exit::PRECONDITION,
        }
    }
}
