//! JSON-serializable summary of an analysis.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::lemmas::{lemma_suite_for, Analysis, LemmaVerdict};
use super::structure::{CornerRecord, DiagonalStatus, PairRecord, YMode};
use crate::coloring::{Color, Coloring};
use crate::grid::{DiagonalIndex, GridPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub index: DiagonalIndex,
    pub palette: BTreeSet<Color>,
    pub status: DiagonalStatus,
    pub contributed: BTreeSet<Color>,
    pub extra: BTreeSet<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub defined: bool,
    pub mode: YMode,
    pub s2: Option<usize>,
    pub w1: usize,
    pub w2: usize,
    pub y1: Vec<GridPoint>,
    pub y2: Vec<GridPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub m: usize,
    pub n: usize,
    pub r: Color,
    pub exact: bool,
    pub rainbow_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rainbow: Option<[GridPoint; 3]>,
    pub s_sequence: Vec<usize>,
    pub main_palette: BTreeSet<Color>,
    pub diagonals: Vec<DiagonalReport>,
    pub regions: RegionReport,
    pub pairs: Vec<PairRecord>,
    pub corners: Vec<CornerRecord>,
    pub lemmas: Vec<LemmaVerdict>,
}

impl StructureReport {
    pub fn new(c: &Coloring, mode: YMode) -> Self {
        Self::from_analysis(&Analysis::with_mode(c, mode))
    }

    pub fn from_analysis(a: &Analysis) -> Self {
        let dims = a.coloring.dims();
        let pick = |flags: &[bool]| -> Vec<GridPoint> {
            dims.points().zip(flags).filter(|(_, &f)| f).map(|(p, _)| p).collect()
        };
        StructureReport {
            m: dims.m(),
            n: dims.n(),
            r: a.coloring.r(),
            exact: a.exact,
            rainbow_free: a.rainbow.is_none(),
            rainbow: a.rainbow,
            s_sequence: a.s.values.clone(),
            main_palette: a.map.main_palette.clone(),
            diagonals: a
                .map
                .diagonals
                .iter()
                .map(|d| DiagonalReport {
                    index: d.index,
                    palette: d.palette.clone(),
                    status: d.status,
                    contributed: d.contributed.clone(),
                    extra: d.extra.clone(),
                })
                .collect(),
            regions: RegionReport {
                defined: a.regions.defined,
                mode: a.regions.mode,
                s2: a.regions.s2,
                w1: a.regions.w1.iter().filter(|&&f| f).count(),
                w2: a.regions.w2.iter().filter(|&&f| f).count(),
                y1: pick(&a.regions.y1),
                y2: pick(&a.regions.y2),
            },
            pairs: a.pairs.clone(),
            corners: a.corners.clone(),
            lemmas: lemma_suite_for(a),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn violations(&self) -> impl Iterator<Item = &LemmaVerdict> {
        self.lemmas.iter().filter(|v| v.is_violation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lower_bound_coloring;
    use crate::grid::GridDims;

    #[test]
    fn report_round_trips_and_is_stable() {
        let c = lower_bound_coloring(GridDims::new(3, 4).unwrap()).unwrap();
        let r = StructureReport::new(&c, YMode::NBound);
        assert!(r.rainbow_free && r.exact);
        assert_eq!(r.s_sequence, vec![1, 3]);
        assert_eq!(r.diagonals.len(), 6);
        let text = r.to_json();
        assert_eq!(text, StructureReport::new(&c, YMode::NBound).to_json());
        let back: StructureReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.violations().count(), 0);
    }
}
