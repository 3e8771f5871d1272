//! Pure arithmetic on the grid `[m] x [n]`: points, diagonals, solutions of
//! `x1 + x2 = x3` under component-wise addition, and jumps.
//!
//! Rows are numbered top to bottom and columns left to right, so `(1, 1)` is
//! the upper-left cell. Diagonal `D_k` holds the cells with `m - k = i - j`;
//! `D_1 = {(m, 1)}` is the bottom-left corner and `D_m` is the main diagonal.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimensions must be positive, got {m}x{n}")]
    EmptyGrid { m: usize, n: usize },
    #[error("point {point} lies outside the {m}x{n} grid")]
    OutOfRange { point: GridPoint, m: usize, n: usize },
    #[error("diagonal index {k} outside 1..={max}")]
    DiagonalOutOfRange { k: i64, max: usize },
    #[error("no jump from {from} to {to}")]
    NoJump { from: GridPoint, to: GridPoint },
}

/// The ambient grid `[m] x [n]`, always stored with `m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridDims {
    m: usize,
    n: usize,
}

impl GridDims {
    /// Builds the grid, transposing when `m > n`.
    pub fn new(m: usize, n: usize) -> Result<Self, GridError> {
        Self::normalized(m, n).map(|(dims, _)| dims)
    }

    /// Like [`GridDims::new`] but also reports whether the inputs were swapped.
    pub fn normalized(m: usize, n: usize) -> Result<(Self, bool), GridError> {
        if m == 0 || n == 0 {
            return Err(GridError::EmptyGrid { m, n });
        }
        if m > n {
            Ok((GridDims { m: n, n: m }, true))
        } else {
            Ok((GridDims { m, n }, false))
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.m * self.n
    }

    pub fn diagonal_count(&self) -> usize {
        self.m + self.n - 1
    }

    pub fn main_diagonal(&self) -> DiagonalIndex {
        DiagonalIndex(self.m)
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        (1..=self.m).contains(&p.i) && (1..=self.n).contains(&p.j)
    }

    pub fn contains_signed(&self, i: i64, j: i64) -> bool {
        i >= 1 && j >= 1 && i <= self.m as i64 && j <= self.n as i64
    }

    /// Row-major position of `p` (0-based).
    pub fn index_of(&self, p: GridPoint) -> usize {
        debug_assert!(self.contains(p));
        (p.i - 1) * self.n + (p.j - 1)
    }

    pub fn point_at(&self, index: usize) -> GridPoint {
        debug_assert!(index < self.cell_count());
        GridPoint::new(index / self.n + 1, index % self.n + 1)
    }

    /// All cells in row-major order.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (1..=self.m).flat_map(move |i| (1..=self.n).map(move |j| GridPoint::new(i, j)))
    }

    pub fn diagonals(&self) -> impl Iterator<Item = DiagonalIndex> {
        (1..=self.diagonal_count()).map(DiagonalIndex)
    }

    pub fn is_valid_diagonal(&self, k: i64) -> bool {
        k >= 1 && k <= self.diagonal_count() as i64
    }

    fn check(&self, p: GridPoint) -> Result<(), GridError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GridError::OutOfRange {
                point: p,
                m: self.m,
                n: self.n,
            })
        }
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A cell `(i, j)`; ordering is lexicographic by row then column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
}

impl GridPoint {
    pub const fn new(i: usize, j: usize) -> Self {
        GridPoint { i, j }
    }

    /// `self - other`, if both coordinates stay positive.
    pub fn checked_sub(self, other: GridPoint) -> Option<GridPoint> {
        let i = self.i.checked_sub(other.i)?;
        let j = self.j.checked_sub(other.j)?;
        (i >= 1 && j >= 1).then_some(GridPoint { i, j })
    }
}

impl Add for GridPoint {
    type Output = GridPoint;

    fn add(self, rhs: GridPoint) -> GridPoint {
        GridPoint {
            i: self.i + rhs.i,
            j: self.j + rhs.j,
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Index `k` of the diagonal `D_k`, in `1..=m+n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiagonalIndex(pub usize);

impl DiagonalIndex {
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for DiagonalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.0)
    }
}

/// Index of the diagonal through `p` (`k = m - i + j`).
pub fn diagonal_index(p: GridPoint, dims: GridDims) -> Result<DiagonalIndex, GridError> {
    dims.check(p)?;
    Ok(DiagonalIndex(dims.m - p.i + p.j))
}

/// Cells of `D_k` sorted by row.
pub fn diagonal_cells(k: DiagonalIndex, dims: GridDims) -> Result<Vec<GridPoint>, GridError> {
    if !dims.is_valid_diagonal(k.0 as i64) {
        return Err(GridError::DiagonalOutOfRange {
            k: k.0 as i64,
            max: dims.diagonal_count(),
        });
    }
    // j = i + k - m
    let offset = k.0 as i64 - dims.m as i64;
    Ok((1..=dims.m as i64)
        .filter_map(|i| {
            let j = i + offset;
            dims.contains_signed(i, j)
                .then(|| GridPoint::new(i as usize, j as usize))
        })
        .collect())
}

/// A solution `{alpha, beta, gamma}` of `alpha + beta = gamma`, stored with
/// `alpha <= beta` so every unordered solution appears once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub alpha: GridPoint,
    pub beta: GridPoint,
    pub gamma: GridPoint,
    pub degenerate: bool,
}

impl SolutionTriple {
    /// Canonicalizes the order of the summands.
    pub fn new(a: GridPoint, b: GridPoint) -> Self {
        let (alpha, beta) = if a <= b { (a, b) } else { (b, a) };
        SolutionTriple {
            alpha,
            beta,
            gamma: alpha + beta,
            degenerate: alpha == beta,
        }
    }

    pub fn cells(&self) -> [GridPoint; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Every solution of `x1 + x2 = x3` in the grid, degenerate ones included,
/// sorted by `(alpha, beta)`.
pub fn enumerate_solutions(dims: GridDims) -> Vec<SolutionTriple> {
    let mut out = Vec::new();
    for alpha in dims.points() {
        for beta in dims.points().filter(|b| *b >= alpha) {
            if dims.contains(alpha + beta) {
                out.push(SolutionTriple::new(alpha, beta));
            }
        }
    }
    out
}

/// Result of diagonal index arithmetic that may fall off the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Landing {
    Inside(DiagonalIndex),
    /// The index arithmetic is defined but names no diagonal of the grid.
    Outside(i64),
}

impl Landing {
    fn from_raw(k: i64, dims: GridDims) -> Self {
        if dims.is_valid_diagonal(k) {
            Landing::Inside(DiagonalIndex(k as usize))
        } else {
            Landing::Outside(k)
        }
    }

    pub fn raw(&self) -> i64 {
        match *self {
            Landing::Inside(k) => k.0 as i64,
            Landing::Outside(k) => k,
        }
    }

    pub fn inside(&self) -> Option<DiagonalIndex> {
        match *self {
            Landing::Inside(k) => Some(k),
            Landing::Outside(_) => None,
        }
    }
}

/// Diagonal of `alpha + beta` for `alpha in D_a`, `beta in D_b`: `a + b - m`.
pub fn landing_sum(a: DiagonalIndex, b: DiagonalIndex, dims: GridDims) -> Landing {
    Landing::from_raw(a.0 as i64 + b.0 as i64 - dims.m as i64, dims)
}

/// Diagonal of `alpha - beta`: `a - b + m`.
pub fn landing_diff(a: DiagonalIndex, b: DiagonalIndex, dims: GridDims) -> Landing {
    Landing::from_raw(a.0 as i64 - b.0 as i64 + dims.m as i64, dims)
}

/// A strict component-wise increase `from -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Jump {
    pub from: GridPoint,
    pub to: GridPoint,
    pub delta: GridPoint,
    pub distance: usize,
}

pub fn detect_jump(from: GridPoint, to: GridPoint) -> Option<Jump> {
    if from.i < to.i && from.j < to.j {
        let delta = GridPoint::new(to.i - from.i, to.j - from.j);
        Some(Jump {
            from,
            to,
            delta,
            distance: delta.i + delta.j,
        })
    } else {
        None
    }
}

/// Open bounds `(m + a2 - b1, m + b2 - a1)` of the diagonals crossing the
/// rectangle spanned by a jump.
fn window_bounds(from: GridPoint, to: GridPoint, dims: GridDims) -> (i64, i64) {
    let m = dims.m as i64;
    (m + from.j as i64 - to.i as i64, m + to.j as i64 - from.i as i64)
}

/// Diagonals strictly inside the rectangle of the jump `from -> to`, minus
/// the diagonals of the endpoints and the main diagonal.
pub fn jump_window(from: GridPoint, to: GridPoint, dims: GridDims) -> Result<BTreeSet<DiagonalIndex>, GridError> {
    let a = diagonal_index(from, dims)?;
    let b = diagonal_index(to, dims)?;
    detect_jump(from, to).ok_or(GridError::NoJump { from, to })?;
    let (lo, hi) = window_bounds(from, to, dims);
    let excluded = [a, b, dims.main_diagonal()];
    Ok(((lo + 1)..hi)
        .filter(|&x| dims.is_valid_diagonal(x))
        .map(|x| DiagonalIndex(x as usize))
        .filter(|x| !excluded.contains(x))
        .collect())
}

/// Which jumps a third point `gamma` makes with the endpoints of a jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverVerdict {
    /// `gamma` lies outside the diagonals the jump geometry speaks about.
    NotCovered,
    AlphaToGamma,
    GammaToBeta,
    Both,
    /// Covered but neither jump exists; the geometry lemmas say this never happens.
    Neither,
}

impl CoverVerdict {
    pub fn is_violation(self) -> bool {
        self == CoverVerdict::Neither
    }
}

/// Whether diagonal `g` lies in the region covered by the jump `alpha -> beta`:
/// the window, the diagonals strictly between `a` and `b`, and the flanking
/// ranges of width `min(b1 - a1, b2 - a2)` beyond each endpoint diagonal.
fn is_covered(alpha: GridPoint, beta: GridPoint, dims: GridDims, g: i64) -> bool {
    let m = dims.m as i64;
    let a = m - alpha.i as i64 + alpha.j as i64;
    let b = m - beta.i as i64 + beta.j as i64;
    let (lo, hi) = window_bounds(alpha, beta, dims);
    if lo < g && g < hi && g != a && g != b && g != m {
        return true;
    }
    let (low, high) = if a <= b { (a, b) } else { (b, a) };
    if low < g && g < high {
        return true;
    }
    let ell = (beta.i - alpha.i).min(beta.j - alpha.j) as i64;
    (low - ell < g && g < low) || (high < g && g < high + ell)
}

/// The covered diagonals of the jump `alpha -> beta`, clipped to the grid.
pub fn covered_diagonals(
    alpha: GridPoint,
    beta: GridPoint,
    dims: GridDims,
) -> Result<BTreeSet<DiagonalIndex>, GridError> {
    dims.check(alpha)?;
    dims.check(beta)?;
    detect_jump(alpha, beta).ok_or(GridError::NoJump { from: alpha, to: beta })?;
    Ok(dims
        .diagonals()
        .filter(|k| is_covered(alpha, beta, dims, k.0 as i64))
        .collect())
}

pub fn jump_cover(
    alpha: GridPoint,
    beta: GridPoint,
    gamma: GridPoint,
    dims: GridDims,
) -> Result<CoverVerdict, GridError> {
    dims.check(alpha)?;
    dims.check(beta)?;
    let g = diagonal_index(gamma, dims)?;
    detect_jump(alpha, beta).ok_or(GridError::NoJump { from: alpha, to: beta })?;
    if !is_covered(alpha, beta, dims, g.0 as i64) {
        return Ok(CoverVerdict::NotCovered);
    }
    Ok(
        match (detect_jump(alpha, gamma).is_some(), detect_jump(gamma, beta).is_some()) {
            (true, true) => CoverVerdict::Both,
            (true, false) => CoverVerdict::AlphaToGamma,
            (false, true) => CoverVerdict::GammaToBeta,
            (false, false) => CoverVerdict::Neither,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize, j: usize) -> GridPoint {
        GridPoint::new(i, j)
    }

    fn dims(m: usize, n: usize) -> GridDims {
        GridDims::new(m, n).unwrap()
    }

    #[test]
    fn dims_are_normalized() {
        let (d, swapped) = GridDims::normalized(5, 3).unwrap();
        assert_eq!((d.m(), d.n()), (3, 5));
        assert!(swapped);
        assert!(GridDims::new(0, 4).is_err());
    }

    #[test]
    fn diagonal_index_examples() {
        assert_eq!(diagonal_index(p(3, 1), dims(3, 3)).unwrap(), DiagonalIndex(1));
        assert_eq!(diagonal_index(p(1, 1), dims(3, 3)).unwrap(), DiagonalIndex(3));
        let d = dims(2, 3);
        assert_eq!(diagonal_index(p(1, 3), d).unwrap(), DiagonalIndex(4));
        // all four diagonals of the 2x3 grid are hit
        let hit: BTreeSet<_> = d.points().map(|q| diagonal_index(q, d).unwrap()).collect();
        assert_eq!(hit, (1..=4).map(DiagonalIndex).collect());
        assert!(diagonal_index(p(3, 1), d).is_err());
    }

    #[test]
    fn diagonal_cells_examples() {
        assert_eq!(
            diagonal_cells(DiagonalIndex(3), dims(3, 3)).unwrap(),
            vec![p(1, 1), p(2, 2), p(3, 3)]
        );
        assert_eq!(diagonal_cells(DiagonalIndex(1), dims(3, 4)).unwrap(), vec![p(3, 1)]);
        let d = dims(2, 3);
        let brute: Vec<_> = d.points().filter(|q| 2 - q.i as i64 == 4 - q.j as i64).collect();
        assert_eq!(diagonal_cells(DiagonalIndex(4), d).unwrap(), brute);
        assert!(diagonal_cells(DiagonalIndex(0), d).is_err());
        assert!(diagonal_cells(DiagonalIndex(5), d).is_err());
    }

    #[test]
    fn diagonals_partition_grid() {
        for m in 1..=32 {
            for n in m..=32 {
                let d = dims(m, n);
                let mut seen = vec![false; d.cell_count()];
                let mut total = 0;
                for k in d.diagonals() {
                    let cells = diagonal_cells(k, d).unwrap();
                    assert!(!cells.is_empty());
                    for c in cells {
                        assert!(!seen[d.index_of(c)]);
                        seen[d.index_of(c)] = true;
                        total += 1;
                    }
                }
                assert_eq!(total, m * n);
                assert_eq!(diagonal_cells(DiagonalIndex(1), d).unwrap().len(), 1);
                assert_eq!(diagonal_cells(DiagonalIndex(m + n - 1), d).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn solution_examples() {
        let s = enumerate_solutions(dims(2, 2));
        assert_eq!(s, vec![SolutionTriple::new(p(1, 1), p(1, 1))]);
        assert!(s[0].degenerate);
        let s = enumerate_solutions(dims(2, 3));
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].cells(), [p(1, 1), p(1, 1), p(2, 2)]);
        assert!(s[0].degenerate);
        assert_eq!(s[1].cells(), [p(1, 1), p(1, 2), p(2, 3)]);
        assert!(!s[1].degenerate);
        assert!(enumerate_solutions(dims(1, 5)).is_empty());
    }

    #[test]
    fn solutions_match_brute_force_over_ordered_pairs() {
        for m in 1..=5 {
            for n in m..=6 {
                let d = dims(m, n);
                let mut brute = BTreeSet::new();
                for a in d.points() {
                    for b in d.points() {
                        if d.contains(a + b) {
                            brute.insert(SolutionTriple::new(b, a));
                        }
                    }
                }
                let listed = enumerate_solutions(d);
                assert_eq!(listed.len(), brute.len());
                assert_eq!(listed.iter().copied().collect::<BTreeSet<_>>(), brute);
                for t in &listed {
                    let distinct: BTreeSet<_> = t.cells().into_iter().collect();
                    assert_eq!(distinct.len(), if t.degenerate { 2 } else { 3 });
                }
                if m == n {
                    let swapped: BTreeSet<_> = listed
                        .iter()
                        .map(|t| SolutionTriple::new(p(t.alpha.j, t.alpha.i), p(t.beta.j, t.beta.i)))
                        .collect();
                    assert_eq!(swapped.len(), listed.len());
                }
            }
        }
    }

    #[test]
    fn landing_examples() {
        let d3 = dims(3, 3);
        assert_eq!(
            landing_sum(DiagonalIndex(4), DiagonalIndex(2), d3),
            Landing::Inside(DiagonalIndex(3))
        );
        assert_eq!(diagonal_index(p(1, 2) + p(2, 1), d3).unwrap(), DiagonalIndex(3));
        assert_eq!(
            landing_sum(DiagonalIndex(5), DiagonalIndex(5), dims(5, 5)),
            Landing::Inside(DiagonalIndex(5))
        );
        assert_eq!(
            landing_diff(DiagonalIndex(3), DiagonalIndex(2), d3),
            Landing::Inside(DiagonalIndex(4))
        );
        // brute force over D3 x D2 pairs with a valid difference
        for x in diagonal_cells(DiagonalIndex(3), d3).unwrap() {
            for y in diagonal_cells(DiagonalIndex(2), d3).unwrap() {
                if let Some(z) = x.checked_sub(y) {
                    assert_eq!(diagonal_index(z, d3).unwrap(), DiagonalIndex(4));
                }
            }
        }
        assert_eq!(
            landing_sum(DiagonalIndex(1), DiagonalIndex(1), d3),
            Landing::Outside(-1)
        );
    }

    #[test]
    fn jump_examples() {
        let j = detect_jump(p(2, 7), p(4, 11)).unwrap();
        assert_eq!((j.delta, j.distance), (p(2, 4), 6));
        let j = detect_jump(p(5, 2), p(7, 3)).unwrap();
        assert_eq!((j.delta, j.distance), (p(2, 1), 3));
        assert!(detect_jump(p(2, 7), p(2, 9)).is_none());
        assert!(detect_jump(p(4, 11), p(2, 7)).is_none());
    }

    #[test]
    fn window_example() {
        let d = dims(8, 12);
        let w = jump_window(p(2, 7), p(4, 11), d).unwrap();
        assert_eq!(w, [12, 14, 16].into_iter().map(DiagonalIndex).collect());
        // rectangle description: diagonals through the rectangle except its
        // lower-left and upper-right corners
        let mut rect = BTreeSet::new();
        for i in 2..=4 {
            for j in 7..=11 {
                let q = p(i, j);
                if q != p(4, 7) && q != p(2, 11) {
                    rect.insert(diagonal_index(q, d).unwrap());
                }
            }
        }
        for k in [13, 15, 8] {
            rect.remove(&DiagonalIndex(k));
        }
        assert_eq!(w, rect);
    }

    #[test]
    fn minimal_jump_has_empty_window() {
        let d = dims(5, 6);
        assert!(jump_window(p(2, 2), p(3, 3), d).unwrap().is_empty());
        assert!(jump_window(p(1, 3), p(2, 4), d).unwrap().is_empty());
        assert!(jump_window(p(3, 3), p(2, 4), d).is_err());
    }

    #[test]
    fn window_never_holds_endpoints_or_main() {
        let d = dims(6, 7);
        for a in d.points() {
            for b in d.points() {
                if detect_jump(a, b).is_some() {
                    let w = jump_window(a, b, d).unwrap();
                    assert!(!w.contains(&diagonal_index(a, d).unwrap()));
                    assert!(!w.contains(&diagonal_index(b, d).unwrap()));
                    assert!(!w.contains(&d.main_diagonal()));
                }
            }
        }
    }

    #[test]
    fn cover_examples() {
        let d = dims(8, 12);
        let (a, b) = (p(2, 7), p(4, 11));
        assert_eq!(jump_cover(a, b, p(3, 9), d).unwrap(), CoverVerdict::Both);
        assert_eq!(jump_cover(a, b, p(4, 10), d).unwrap(), CoverVerdict::AlphaToGamma);
        assert_eq!(jump_cover(a, b, p(1, 9), d).unwrap(), CoverVerdict::GammaToBeta);
        assert_eq!(jump_cover(a, b, a, d).unwrap(), CoverVerdict::NotCovered);
        assert!(jump_cover(b, a, p(3, 9), d).is_err());
        let cov = covered_diagonals(a, b, d).unwrap();
        assert!(jump_window(a, b, d).unwrap().is_subset(&cov));
    }

    #[test]
    fn cover_is_total_on_small_grids() {
        for m in 1..=7 {
            for n in m..=7 {
                let d = dims(m, n);
                for a in d.points() {
                    for b in d.points() {
                        if detect_jump(a, b).is_none() {
                            continue;
                        }
                        for g in d.points() {
                            assert!(!jump_cover(a, b, g, d).unwrap().is_violation(), "{a} {b} {g}");
                        }
                    }
                }
            }
        }
    }
}
