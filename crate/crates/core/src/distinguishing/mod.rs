//! Distinguishing labelings and the distinguishing number of `G(V)`.

pub mod constructive;
pub mod labeling;
pub mod search;
pub mod transpositions;

pub use constructive::{paper_labeling_q2, paper_labeling_q2_with, q3_constructive_labeling, NearTopRule};
pub use labeling::{is_distinguishing, is_distinguishing_by_search, Labeling};
pub use search::{
    dist_number, exact_search, twin_lower_bound, DistBudget, DistResult, Method, SearchOutcome,
    DEFAULT_EXACT_CAP, DEFAULT_NODE_LIMIT,
};
pub use transpositions::{
    check_lem_diff_labels, closed_form_tallies, destroyed_transpositions, ClassTally,
    TranspositionReport,
};
