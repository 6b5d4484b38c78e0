//! Independent checkers for constructed automata: lasso membership,
//! emptiness, ambiguity, bounded language comparison, run enumeration and
//! the distance/preorder correspondence of accepting runs.

mod ambiguity;
mod correspondence;
mod diff;
mod runs;

pub use ambiguity::{
    ambiguity_check, ambiguity_check_limited, AmbiguityWitness, ProductTooLarge,
    DEFAULT_PRODUCT_LIMIT,
};
pub use correspondence::{
    audit_u_transitions, check_breakpoint_countdown, check_three_item_correspondence,
    AuditViolation, CorrespondenceViolation,
};
pub use diff::{
    bounded_language_diff, DiffReport, DiffVerdict, Side, DEFAULT_MAX_PERIOD, DEFAULT_MAX_PREFIX,
};
pub use runs::{
    enumerate_lasso_macroruns, nba_is_empty, nba_lasso_accepts, EnumerationError, Macrorun,
    DEFAULT_RUN_LIMIT,
};
