//! Structural objects of a grid coloring: diagonal palettes and
//! contributions, the W/Y regions, consecutive pairs, disjoint corners, and
//! the translate-closed diagonal sets of a fixed shift.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::grid::{diagonal_cells, diagonal_index, DiagonalIndex, GridDims, GridPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalStatus {
    Main,
    Contributing,
    NonContributing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalInfo {
    pub index: DiagonalIndex,
    pub palette: BTreeSet<Color>,
    pub status: DiagonalStatus,
    /// Colors this diagonal contributes (empty for the main diagonal).
    pub contributed: BTreeSet<Color>,
    /// `c(D_k) \ c(D_m)`.
    pub extra: BTreeSet<Color>,
}

/// Per-diagonal palettes and contribution statuses, indexed `1..=m+n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributingMap {
    pub dims: GridDims,
    pub main_palette: BTreeSet<Color>,
    pub diagonals: Vec<DiagonalInfo>,
}

impl ContributingMap {
    pub fn get(&self, k: DiagonalIndex) -> &DiagonalInfo {
        &self.diagonals[k.0 - 1]
    }

    pub fn is_contributing(&self, k: usize) -> bool {
        k >= 1 && k <= self.diagonals.len() && self.diagonals[k - 1].status == DiagonalStatus::Contributing
    }

    pub fn off_diagonals(&self) -> impl Iterator<Item = &DiagonalInfo> {
        self.diagonals.iter().filter(|d| d.status != DiagonalStatus::Main)
    }

    pub fn contributing_count(&self) -> usize {
        self.off_diagonals()
            .filter(|d| d.status == DiagonalStatus::Contributing)
            .count()
    }

    pub fn non_contributing_count(&self) -> usize {
        self.off_diagonals()
            .filter(|d| d.status == DiagonalStatus::NonContributing)
            .count()
    }

    /// Number of `a` with both `D_a` and `D_{a+1}` contributing off-diagonals.
    pub fn consecutive_contributing_count(&self) -> usize {
        (1..self.diagonals.len())
            .filter(|&a| self.is_contributing(a) && self.is_contributing(a + 1))
            .count()
    }
}

/// Scans diagonals in increasing index; `D_j` contributes `x` when `x` is in
/// `c(D_j) \ c(D_m)` and in no `c(D_i)` with `i < j`.
pub fn contributing_map(c: &Coloring) -> ContributingMap {
    let dims = c.dims();
    let main = dims.main_diagonal();
    let palette = |k: DiagonalIndex| -> BTreeSet<Color> {
        diagonal_cells(k, dims)
            .expect("valid diagonal")
            .into_iter()
            .map(|p| c.color(p))
            .collect()
    };
    let main_palette = palette(main);
    let mut seen: BTreeSet<Color> = BTreeSet::new();
    let mut diagonals = Vec::with_capacity(dims.diagonal_count());
    for k in dims.diagonals() {
        let pal = palette(k);
        let extra: BTreeSet<Color> = pal.difference(&main_palette).copied().collect();
        let (status, contributed) = if k == main {
            (DiagonalStatus::Main, BTreeSet::new())
        } else {
            let contributed: BTreeSet<Color> = extra.difference(&seen).copied().collect();
            let status = if contributed.is_empty() {
                DiagonalStatus::NonContributing
            } else {
                DiagonalStatus::Contributing
            };
            (status, contributed)
        };
        seen.extend(pal.iter().copied());
        diagonals.push(DiagonalInfo {
            index: k,
            palette: pal,
            status,
            contributed,
            extra,
        });
    }
    ContributingMap {
        dims,
        main_palette,
        diagonals,
    }
}

/// How the two corner blocks excluded from `W` are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YMode {
    /// `s2 x s2` blocks at the lower-left and upper-right corners, columns
    /// bounded by `n`: `Y1 = {x > m - s2, y <= s2}`, `Y2 = {x <= s2, y > n - s2}`.
    #[default]
    NBound,
    /// Strict inequalities with columns bounded by `m`:
    /// `Y1 = {m < x + s2, y < s2}`, `Y2 = {x < s2, m < y + s2}`.
    MBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionMask {
    pub dims: GridDims,
    pub s2: Option<usize>,
    pub mode: YMode,
    pub defined: bool,
    pub w1: Vec<bool>,
    pub w2: Vec<bool>,
    pub y1: Vec<bool>,
    pub y2: Vec<bool>,
}

impl RegionMask {
    pub fn for_shift(dims: GridDims, s2: Option<usize>, mode: YMode) -> Self {
        let cells = dims.cell_count();
        let mut mask = RegionMask {
            dims,
            s2,
            mode,
            defined: s2.is_some(),
            w1: vec![false; cells],
            w2: vec![false; cells],
            y1: vec![false; cells],
            y2: vec![false; cells],
        };
        let Some(s) = s2 else { return mask };
        let (m, n) = (dims.m(), dims.n());
        for (idx, p) in dims.points().enumerate() {
            let (x, y) = (p.i, p.j);
            mask.w1[idx] = x + s <= m && y + s <= n;
            mask.w2[idx] = x > s && y > s;
            (mask.y1[idx], mask.y2[idx]) = match mode {
                YMode::NBound => (x + s > m && y <= s, x <= s && y + s > n),
                YMode::MBound => (m < x + s && y < s, x < s && m < y + s),
            };
        }
        mask
    }

    pub fn in_w1(&self, p: GridPoint) -> bool {
        self.w1[self.dims.index_of(p)]
    }

    pub fn in_w2(&self, p: GridPoint) -> bool {
        self.w2[self.dims.index_of(p)]
    }

    pub fn in_w(&self, p: GridPoint) -> bool {
        self.in_w1(p) || self.in_w2(p)
    }

    pub fn in_y1(&self, p: GridPoint) -> bool {
        self.y1[self.dims.index_of(p)]
    }

    pub fn in_y2(&self, p: GridPoint) -> bool {
        self.y2[self.dims.index_of(p)]
    }

    pub fn in_y(&self, p: GridPoint) -> bool {
        self.in_y1(p) || self.in_y2(p)
    }
}

/// Regions for the `s2` of `c`'s main diagonal; undefined when the diagonal
/// is monochromatic.
pub fn region_mask(c: &Coloring, mode: YMode) -> RegionMask {
    RegionMask::for_shift(c.dims(), c.s_sequence().s2(), mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    /// `beta = alpha + (0, 1)`.
    Horizontal,
    /// `beta = alpha - (1, 0)`.
    Vertical,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub kind: PairKind,
    /// In `D_a`.
    pub alpha: GridPoint,
    /// In `D_{a+1}`.
    pub beta: GridPoint,
    pub colors: (Color, Color),
}

impl PairRecord {
    pub fn cells(&self) -> [GridPoint; 2] {
        [self.alpha, self.beta]
    }

    fn meets(&self, regions: &RegionMask) -> bool {
        self.cells().iter().any(|&p| regions.in_w(p))
    }
}

/// Every consecutive contributing pair: `alpha in D_a`, `beta in D_{a+1}`,
/// both diagonals contributing, both colors outside the main palette.
pub fn find_pairs(c: &Coloring, map: &ContributingMap) -> Vec<PairRecord> {
    let dims = c.dims();
    let mut out = Vec::new();
    for a in 1..dims.diagonal_count() {
        if !(map.is_contributing(a) && map.is_contributing(a + 1)) {
            continue;
        }
        let outside = |p: &GridPoint| !map.main_palette.contains(&c.color(*p));
        let lower: Vec<GridPoint> = diagonal_cells(DiagonalIndex(a), dims)
            .expect("valid")
            .into_iter()
            .filter(outside)
            .collect();
        let upper: Vec<GridPoint> = diagonal_cells(DiagonalIndex(a + 1), dims)
            .expect("valid")
            .into_iter()
            .filter(outside)
            .collect();
        for &alpha in &lower {
            for &beta in &upper {
                let kind = if beta.i == alpha.i && beta.j == alpha.j + 1 {
                    PairKind::Horizontal
                } else if beta.j == alpha.j && beta.i + 1 == alpha.i {
                    PairKind::Vertical
                } else {
                    PairKind::Other
                };
                out.push(PairRecord {
                    kind,
                    alpha,
                    beta,
                    colors: (c.color(alpha), c.color(beta)),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerRecord {
    pub vertical: PairRecord,
    pub horizontal: PairRecord,
    /// The four cell colors are pairwise distinct.
    pub strict_colors: bool,
}

/// Vertical/horizontal pair combinations that are disjoint and both meet
/// `W`. Empty when `W` is undefined.
pub fn find_disjoint_corners(pairs: &[PairRecord], regions: &RegionMask) -> Vec<CornerRecord> {
    if !regions.defined {
        return Vec::new();
    }
    let verticals: Vec<&PairRecord> = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Vertical && p.meets(regions))
        .collect();
    let horizontals: Vec<&PairRecord> = pairs
        .iter()
        .filter(|p| p.kind == PairKind::Horizontal && p.meets(regions))
        .collect();
    let mut out = Vec::new();
    for v in &verticals {
        for h in &horizontals {
            if v.cells().iter().any(|p| h.cells().contains(p)) {
                continue;
            }
            let colors = [v.colors.0, v.colors.1, h.colors.0, h.colors.1];
            let distinct: BTreeSet<Color> = colors.iter().copied().collect();
            out.push(CornerRecord {
                vertical: **v,
                horizontal: **h,
                strict_colors: distinct.len() == 4,
            });
        }
    }
    out
}

/// Convenience: corners of `c` under the given region mode.
pub fn disjoint_corners_of(c: &Coloring, mode: YMode) -> Vec<CornerRecord> {
    let map = contributing_map(c);
    find_disjoint_corners(&find_pairs(c, &map), &region_mask(c, mode))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDiagonalSets {
    pub delta: GridPoint,
    /// Off-diagonals all of whose cells can move by `+delta` or `-delta`.
    pub dd: BTreeSet<DiagonalIndex>,
    /// Cells that can move in neither direction.
    pub sd_cells: BTreeSet<GridPoint>,
    /// `m + n - 2 d1 - 2 d2`.
    pub bound: i64,
}

impl DeltaDiagonalSets {
    pub fn size(&self) -> usize {
        self.dd.len()
    }

    pub fn meets_bound(&self) -> bool {
        self.dd.len() as i64 >= self.bound
    }
}

/// `None` when `delta` is not a grid point.
pub fn delta_sets(delta: GridPoint, dims: GridDims) -> Option<DeltaDiagonalSets> {
    if !dims.contains(delta) {
        return None;
    }
    let (d1, d2) = (delta.i as i64, delta.j as i64);
    let movable = |p: GridPoint| {
        let (x, y) = (p.i as i64, p.j as i64);
        dims.contains_signed(x + d1, y + d2) || dims.contains_signed(x - d1, y - d2)
    };
    let sd_cells: BTreeSet<GridPoint> = dims.points().filter(|&p| !movable(p)).collect();
    let blocked: BTreeSet<DiagonalIndex> = sd_cells
        .iter()
        .map(|&p| diagonal_index(p, dims).expect("in grid"))
        .collect();
    let dd = dims
        .diagonals()
        .filter(|k| *k != dims.main_diagonal() && !blocked.contains(k))
        .collect();
    Some(DeltaDiagonalSets {
        delta,
        dd,
        sd_cells,
        bound: (dims.m() + dims.n()) as i64 - 2 * d1 - 2 * d2,
    })
}
