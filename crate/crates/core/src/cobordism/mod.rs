//! Decomposable cobordisms: moves, traces, filling search and surgery
//! presentations.

mod moves;
mod presentation;
mod search;
mod simplify;
mod trace;

pub use moves::{
    apply_move, birth, death, isolate, pinch, pinch_is_orientable, surgery, surgery_is_orientable, CobordismError,
    DecomposableMove, PinchMode, Site,
};
pub use presentation::{
    apply_presentation, leaf_pinch_order, pinch_back, presentation_graph, PresentationError, PresentationGraph,
    SurgeryPresentation,
};
pub use search::{pinch_sites, ruling_fillability, search_decomposable_filling, search_with, SearchConfig, SearchStats};
pub use simplify::{canonical_key, commute_normal_form};
pub use trace::{check_trace, diagram_hash, CobordismTrace, MoveCounts, TraceCheck, TraceEntry, TraceFailure, TraceStep};
