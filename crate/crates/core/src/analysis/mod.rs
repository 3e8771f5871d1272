//! Structural analysis of colorings and the lemma predicate suite.

pub mod lemmas;
pub mod report;
pub mod structure;

pub use lemmas::{
    contributed_colors_unique, evaluate, interval_lemma_suite, lemma_ids, lemma_statement, lemma_suite, Analysis,
    Counterexample, LemmaVerdict,
};
pub use report::StructureReport;
pub use structure::{
    contributing_map, delta_sets, disjoint_corners_of, find_disjoint_corners, find_pairs, region_mask, ContributingMap,
    CornerRecord, DeltaDiagonalSets, DiagonalInfo, DiagonalStatus, PairKind, PairRecord, RegionMask, YMode,
};
