//! Combinatorial calculus for Legendrian fronts: classical invariants,
//! normal rulings, decomposable cobordisms and satellites.

pub mod catalog;
pub mod cobordism;
pub mod format;
pub mod front;
pub mod isotopy;
pub mod render;
pub mod rulings;
pub mod satellites;

pub use cobordism::{
    check_trace, search_decomposable_filling, CobordismTrace, DecomposableMove, PinchMode, Site,
};
pub use format::{parse_diagram, print_diagram, ParseError};
pub use front::{classical_invariants, ClassicalInvariants, Event, EventKind, FrontDiagram, FrontError, Orientation};
pub use isotopy::{apply_rewrite, random_shuffle, Rewrite};
pub use rulings::{count_rulings, enumerate_rulings, NormalRuling};
pub use satellites::{builtin_pattern, k_copy, satellite, PatternFront, SatelliteResult};
