//! Twisted/upper/lower group and quandle presentations read off a code,
//! and exact coloring counts into finite targets.
//!
//! Generators come in pairs x_a, y_a indexed by semi-arcs. At each crossing
//! the upper relations constrain the x generators and the lower relations
//! the y generators; a bar swaps x and y. The twisted flavor takes all of
//! them, the upper/lower flavors (virtual codes only) take one family.

mod presentation;
mod snf;
mod solve;
mod target;

pub use presentation::{
    lower_group, lower_quandle, semi_arcs, twisted_group, twisted_quandle, upper_group,
    upper_quandle, Flavor, GroupWord, Presentation, QuandleTerm, RelData, SemiArc,
};
pub use snf::{abelian_invariants, smith_normal_form, AbelianInvariants};
pub use solve::{count_colorings, count_colorings_budget, DEFAULT_BUDGET};
pub use target::{builtin_target, builtin_target_names, FiniteTarget, TargetKind, TargetTables};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("code has bars; upper/lower presentations need a bar-free (virtual) code")]
    BarsPresent,
    #[error("presentation flavor does not match target kind")]
    FlavorMismatch,
    #[error("abelian invariants are defined for group presentations only")]
    NotAGroup,
    #[error("search budget exceeded ({0} nodes)")]
    BudgetExceeded(u64),
    #[error("unknown builtin target '{0}'")]
    UnknownTarget(String),
    #[error("invalid target table: {0}")]
    InvalidTarget(String),
}
