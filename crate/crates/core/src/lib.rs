//! Subshifts of finite type on Z^d.
pub mod error;
pub mod examples;
pub mod format;
pub mod lang;
pub mod one_dim;
pub mod pattern;
pub mod robinson;
pub mod space;
pub mod spec;
pub mod times23;

pub use error::{Error, Result};
pub use format::{parse_spec, serialize_spec};
pub use lang::{
    check_convergence, is_locally_admissible, resolution_distance, window_language, ConvergenceReport,
    ResolutionDistance, WindowLanguage, DEFAULT_BUDGET,
};
pub use one_dim::{isolated_verdict_1d, IsolationVerdict};
pub use pattern::{Coord, Pattern, Symbol, Window, WindowKind};
pub use robinson::{RobinsonPatch, RobinsonTile, SupertileId};
pub use space::{cb_ladder, distance_matrix, DerivationTrace, ShiftFamily};
pub use spec::ShiftSpec;
