//! Translation of alternating weak Büchi automata (AWA) into unambiguous
//! Büchi automata, together with lasso-word semantics used as oracles and
//! tooling to verify the results.

pub mod awa;
pub mod constructions;
pub mod error;
pub mod formula;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lasso;
pub mod nba;
pub mod preorder;
pub mod scc;
pub mod semantics;
pub mod set;
pub mod verification;

pub use awa::Awa;
pub use formula::Formula;
pub use lasso::LassoWord;
pub use nba::Nba;
pub use preorder::TotalPreorder;
pub use scc::{SccAnalysis, SccKind};
pub use set::StateSet;
