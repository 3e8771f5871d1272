//! Closed-form colorings and closed-form rainbow numbers.

use thiserror::Error;

use crate::coloring::{is_rainbow_free, Color, Coloring};
use crate::grid::GridDims;
use crate::space::SolutionIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("the construction needs 2 <= m <= n, got {0}")]
    TooFewRows(GridDims),
    #[error("interval length must be positive")]
    EmptyInterval,
    #[error("constructed coloring failed its self-check: {0}")]
    SelfCheck(String),
}

/// `floor(log2 x)` for `x >= 1`.
pub fn floor_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    usize::BITS - 1 - x.leading_zeros()
}

/// Exact rainbow-free `(m + n)`-coloring of `[m] x [n]`:
/// color 1 on the block `i < m, j < n`, `i + 1` down the last column, and
/// `j + m` along the last row.
pub fn lower_bound_coloring(dims: GridDims) -> Result<Coloring, ConstructionError> {
    let (m, n) = (dims.m(), dims.n());
    if m < 2 {
        return Err(ConstructionError::TooFewRows(dims));
    }
    let cells = dims
        .points()
        .map(|p| {
            if p.i == m {
                (p.j + m) as Color
            } else if p.j == n {
                (p.i + 1) as Color
            } else {
                1
            }
        })
        .collect();
    let c = Coloring::new(dims, cells, (m + n) as Color).map_err(|e| ConstructionError::SelfCheck(e.to_string()))?;
    if !c.is_exact() {
        return Err(ConstructionError::SelfCheck("not exact".into()));
    }
    if !is_rainbow_free(&c, &SolutionIndex::grid(dims)) {
        return Err(ConstructionError::SelfCheck("has a rainbow solution".into()));
    }
    Ok(c)
}

/// Coloring of `[n]` (stored as one row) with `c(x) = v2(x) + 1`, where
/// `v2` is the 2-adic valuation. Uses `floor(log2 n) + 1` colors.
///
/// In any `a + b = c` either `v2(a) = v2(b)`, or `v2(c) = min(v2(a), v2(b))`,
/// so some color repeats.
pub fn valuation_coloring(n: usize) -> Result<Coloring, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::EmptyInterval);
    }
    let cells = (1..=n).map(|x| x.trailing_zeros() + 1).collect();
    let r = floor_log2(n) + 1;
    Coloring::new(GridDims::new(1, n).expect("n > 0"), cells, r)
        .map_err(|e| ConstructionError::SelfCheck(e.to_string()))
}

/// Rainbow number of `[n]`: `floor(log2 n) + 2` for `n >= 3`; `n + 1` for
/// `n <= 2`, where no solution can be rainbow.
pub fn closed_form_rb_interval(n: usize) -> usize {
    if n >= 3 {
        floor_log2(n) as usize + 2
    } else {
        n + 1
    }
}

/// Rainbow number of `[m] x [n]`: `m + n + 1` for `m >= 2`, `n + 1` for `m = 1`.
pub fn closed_form_rb_grid(dims: GridDims) -> usize {
    if dims.m() == 1 {
        dims.n() + 1
    } else {
        dims.m() + dims.n() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridPoint;

    fn dims(m: usize, n: usize) -> GridDims {
        GridDims::new(m, n).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        let c = lower_bound_coloring(dims(2, 3)).unwrap();
        assert_eq!(c.rows(), vec![vec![1, 1, 2], vec![3, 4, 5]]);
        assert_eq!(c.r(), 5);
        let c = lower_bound_coloring(dims(3, 3)).unwrap();
        assert_eq!(c.rows(), vec![vec![1, 1, 2], vec![1, 1, 3], vec![4, 5, 6]]);
        assert!(lower_bound_coloring(dims(1, 4)).is_err());
        assert!(lower_bound_coloring(dims(3, 4)).unwrap().is_exact());
        assert_eq!(lower_bound_coloring(dims(3, 4)).unwrap().r(), 7);
    }

    #[test]
    fn lower_bound_corners_touch_no_solution() {
        for m in 2..=8 {
            for n in m..=9 {
                let d = dims(m, n);
                let idx = SolutionIndex::grid(d);
                let lonely = [
                    d.index_of(GridPoint::new(1, n)) as u32,
                    d.index_of(GridPoint::new(m, 1)) as u32,
                ];
                assert!(idx.triples().iter().all(|t| !t.iter().any(|x| lonely.contains(x))));
                assert!(crate::grid::enumerate_solutions(d).iter().all(|t| !t
                    .cells()
                    .iter()
                    .any(|p| *p == GridPoint::new(1, n) || *p == GridPoint::new(m, 1))));
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let c = valuation_coloring(8).unwrap();
        assert_eq!(c.cells(), &[1, 2, 1, 3, 1, 2, 1, 4]);
        assert_eq!(c.r(), 4);
        assert_eq!(valuation_coloring(3).unwrap().cells(), &[1, 2, 1]);
        assert_eq!(valuation_coloring(1).unwrap().cells(), &[1]);
        assert!(valuation_coloring(0).is_err());
        // brute force every a + b = c in [8]
        let cells = c.cells();
        for a in 1..=8usize {
            for b in a + 1..=8 - a {
                let (x, y, z) = (cells[a - 1], cells[b - 1], cells[a + b - 1]);
                assert!(x == y || x == z || y == z);
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_rb_interval(3), 3);
        assert_eq!(closed_form_rb_interval(8), 5);
        assert_eq!(closed_form_rb_interval(2), 3);
        assert_eq!(closed_form_rb_interval(1), 2);
        assert_eq!(closed_form_rb_grid(dims(3, 4)), 8);
        assert_eq!(closed_form_rb_grid(dims(1, 7)), 8);
        assert_eq!(closed_form_rb_grid(dims(2, 2)), 5);
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(1023), 9);
        assert_eq!(floor_log2(1024), 10);
    }
}
