//! Open parity games as an algebra.
//!
//! Games are built from boundary-typed graphs ([`game`]), composed
//! sequentially and in parallel, translated to and from fixpoint terms
//! ([`expr`]), and normalised into canonical clause sets ([`nf`],
//! [`fixpoint`]). Two games are equivalent exactly when their normal forms
//! coincide. The [`oracle`] module holds independent classical solvers and
//! generators used to cross-check everything else.

pub mod config;
pub mod error;
pub mod expr;
pub mod fixpoint;
pub mod format;
pub mod game;
pub mod iso;
pub mod nf;
pub mod oracle;
pub mod priority;
pub mod var;

pub use config::{Guards, RunConfig};
pub use error::{Error, Result};
pub use expr::{Expr, ExprSystem};
pub use fixpoint::{normalize, normalize_game, solve_closed};
pub use game::{Boundary, ClosedParityGame, Endpoint, OpenParityGame, Player};
pub use nf::{Clause, NormalForm, Outcome, RewriteTrace, Rule, Step};
pub use priority::Priority;
pub use var::Var;
