//! Solution indices: the flat list of non-degenerate solutions of
//! `x1 + x2 = x3` over a ground set, addressed by cell position.
//!
//! Two ground sets are supported. The grid `[m] x [n]` uses component-wise
//! addition. The interval `[n]` uses integer addition; its colorings are stored
//! as a single row, but it is *not* the `1 x n` grid (which has no solutions).

use serde::{Deserialize, Serialize};

use crate::grid::{enumerate_solutions, GridDims};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Grid(GridDims),
    Interval(usize),
}

impl Space {
    pub fn cell_count(&self) -> usize {
        match *self {
            Space::Grid(d) => d.cell_count(),
            Space::Interval(n) => n,
        }
    }

    /// Shape used to store colorings of this space.
    pub fn storage_dims(&self) -> GridDims {
        match *self {
            Space::Grid(d) => d,
            Space::Interval(n) => GridDims::new(1, n.max(1)).expect("positive interval"),
        }
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Space::Grid(d) => write!(f, "[{}]x[{}]", d.m(), d.n()),
            Space::Interval(n) => write!(f, "[{n}]"),
        }
    }
}

/// Non-degenerate solutions as cell positions `[x, y, x + y]` with `x < y`.
///
/// Degenerate solutions are counted but not stored: they can never be rainbow.
#[derive(Debug, Clone)]
pub struct SolutionIndex {
    space: Space,
    triples: Vec<[u32; 3]>,
    degenerate: usize,
}

impl SolutionIndex {
    pub fn new(space: Space) -> Self {
        match space {
            Space::Grid(d) => Self::grid(d),
            Space::Interval(n) => Self::interval(n),
        }
    }

    pub fn grid(dims: GridDims) -> Self {
        let mut triples = Vec::new();
        let mut degenerate = 0;
        for t in enumerate_solutions(dims) {
            if t.degenerate {
                degenerate += 1;
            } else {
                triples.push([
                    dims.index_of(t.alpha) as u32,
                    dims.index_of(t.beta) as u32,
                    dims.index_of(t.gamma) as u32,
                ]);
            }
        }
        SolutionIndex {
            space: Space::Grid(dims),
            triples,
            degenerate,
        }
    }

    pub fn interval(n: usize) -> Self {
        let mut triples = Vec::new();
        let mut degenerate = 0;
        for x in 1..=n {
            for y in x..=n.saturating_sub(x) {
                if x == y {
                    degenerate += 1;
                } else {
                    triples.push([(x - 1) as u32, (y - 1) as u32, (x + y - 1) as u32]);
                }
            }
        }
        SolutionIndex {
            space: Space::Interval(n),
            triples,
            degenerate,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn cell_count(&self) -> usize {
        self.space.cell_count()
    }

    pub fn triples(&self) -> &[[u32; 3]] {
        &self.triples
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate
    }

    /// Whether the ground set has any solution at all (degenerate included).
    pub fn has_solutions(&self) -> bool {
        !self.triples.is_empty() || self.degenerate > 0
    }

    /// For each cell, the other two cells of every triple it belongs to.
    pub fn incidence(&self) -> Vec<Vec<(u32, u32)>> {
        let mut inc = vec![Vec::new(); self.cell_count()];
        for &[x, y, z] in &self.triples {
            inc[x as usize].push((y, z));
            inc[y as usize].push((x, z));
            inc[z as usize].push((x, y));
        }
        inc
    }

    /// First triple whose three cells get pairwise distinct colors.
    pub fn find_rainbow<C: PartialEq + Copy>(&self, colors: &[C]) -> Option<[u32; 3]> {
        assert_eq!(
            colors.len(),
            self.cell_count(),
            "coloring does not match the solution index"
        );
        self.triples.iter().copied().find(|&[x, y, z]| {
            let (a, b, c) = (colors[x as usize], colors[y as usize], colors[z as usize]);
            a != b && a != c && b != c
        })
    }
}
