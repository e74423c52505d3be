//! Offline interview scheduling for stable marriage with partially ordered
//! preferences.
//!
//! Agents start out unable to compare some of their acceptable candidates.
//! Interviewing reveals true preferences: an agent who interviews two or more
//! candidates learns how they rank among themselves. Given the true
//! preferences and a target matching, [`solver::solve_icr_exact`] finds the
//! fewest interviews after which the target is super-stable, and
//! [`solver::solve_min_icr`] does the same when any matching will do.
//!
//! ```
//! use icr_core::fixtures;
//! use icr_core::solver::solve_icr_exact;
//!
//! let mt3 = fixtures::mt3();
//! let sol = solve_icr_exact(&mt3.instance, &mt3.truth, &mt3.matching).unwrap();
//! assert_eq!(sol.cost, 8);
//! ```
//!
//! Indices are zero-based in the API and one-based (`m1`, `w1`) in text.

pub mod error;
pub mod fixtures;
pub mod forge;
pub mod format;
pub mod model;
pub mod oracle;
pub mod pbp;
pub mod refine;
pub mod solver;
pub mod stability;
pub mod ties;
pub mod validate;
pub mod vc;

pub use error::{IcrError, Result};
pub use model::{AgentRef, Comparison, Instance, InterviewSet, Matching, PreferenceRelation, Side, StrictProfile};
pub use validate::validate_instance;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/knowledge.md")]
    mod knowledge {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/blocking.md")]
    mod blocking {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
