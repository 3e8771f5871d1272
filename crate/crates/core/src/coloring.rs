//! Colorings of the grid, canonical forms, rainbow detection and the
//! s-sequence of the main diagonal.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{GridDims, GridError, GridPoint, SolutionTriple};
use crate::space::SolutionIndex;

/// Color ids are 1-based.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("expected {expected} cells, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("color {color} outside 1..={r}")]
    ColorOutOfRange { color: Color, r: Color },
    #[error("a coloring needs at least one color")]
    NoColors,
    #[error("cannot merge color {0} into itself")]
    SameColor(Color),
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// An `r`-coloring of the grid, stored row-major.
///
/// Exactness (every color of `1..=r` used) is a checked property.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    dims: GridDims,
    cells: Vec<Color>,
    r: Color,
}

impl Coloring {
    pub fn new(dims: GridDims, cells: Vec<Color>, r: Color) -> Result<Self, ColoringError> {
        if r == 0 {
            return Err(ColoringError::NoColors);
        }
        if cells.len() != dims.cell_count() {
            return Err(ColoringError::WrongLength {
                expected: dims.cell_count(),
                got: cells.len(),
            });
        }
        if let Some(&color) = cells.iter().find(|&&c| c == 0 || c > r) {
            return Err(ColoringError::ColorOutOfRange { color, r });
        }
        Ok(Coloring { dims, cells, r })
    }

    /// Builds from rows top to bottom; a taller-than-wide array is transposed.
    pub fn from_rows(rows: &[Vec<Color>], r: Color) -> Result<Self, ColoringError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != width) {
            return Err(ColoringError::RaggedRows);
        }
        let (dims, transposed) = GridDims::normalized(height, width)?;
        let cells = if transposed {
            (0..width).flat_map(|j| rows.iter().map(move |row| row[j])).collect()
        } else {
            rows.concat()
        };
        Coloring::new(dims, cells, r)
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn r(&self) -> Color {
        self.r
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    pub fn color(&self, p: GridPoint) -> Color {
        self.cells[self.dims.index_of(p)]
    }

    pub fn rows(&self) -> Vec<Vec<Color>> {
        self.cells.chunks(self.dims.n()).map(<[Color]>::to_vec).collect()
    }

    pub fn distinct_colors(&self) -> BTreeSet<Color> {
        self.cells.iter().copied().collect()
    }

    pub fn is_exact(&self) -> bool {
        self.distinct_colors().len() == self.r as usize
    }

    /// Relabels colors in order of first appearance in row-major scan
    /// (a restricted growth string). `r` is kept.
    pub fn canonicalize(&self) -> Coloring {
        self.relabel_by_first_use(std::iter::empty())
    }

    /// Relabeling that names the main-diagonal palette `1..=l` in order of
    /// first appearance along the diagonal, then the remaining colors in
    /// row-major order of first appearance.
    pub fn diagonal_normal_form(&self) -> Coloring {
        let diag: Vec<usize> = (1..=self.dims.m())
            .map(|x| self.dims.index_of(GridPoint::new(x, x)))
            .collect();
        self.relabel_by_first_use(diag.into_iter())
    }

    fn relabel_by_first_use(&self, priority: impl Iterator<Item = usize>) -> Coloring {
        let mut map: HashMap<Color, Color> = HashMap::new();
        for idx in priority.chain(0..self.cells.len()) {
            let next = map.len() as Color + 1;
            map.entry(self.cells[idx]).or_insert(next);
        }
        Coloring {
            dims: self.dims,
            cells: self.cells.iter().map(|c| map[c]).collect(),
            r: self.r,
        }
    }

    /// Applies `f` to every color. The caller keeps colors within `1..=r`.
    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> Result<Coloring, ColoringError> {
        Coloring::new(self.dims, self.cells.iter().map(|&c| f(c)).collect(), self.r)
    }

    /// Recolors `from` as `to` and canonicalizes; an exact `r`-coloring
    /// becomes an exact `(r - 1)`-coloring.
    pub fn merge_colors(&self, from: Color, to: Color) -> Result<Coloring, ColoringError> {
        if from == to {
            return Err(ColoringError::SameColor(from));
        }
        for c in [from, to] {
            if c == 0 || c > self.r {
                return Err(ColoringError::ColorOutOfRange { color: c, r: self.r });
            }
        }
        let was_exact = self.is_exact();
        let cells = self.cells.iter().map(|&c| if c == from { to } else { c }).collect();
        let r = if was_exact { self.r - 1 } else { self.r };
        Ok(Coloring {
            dims: self.dims,
            cells,
            r,
        }
        .canonicalize())
    }

    pub fn main_diagonal_colors(&self) -> Vec<Color> {
        (1..=self.dims.m()).map(|x| self.color(GridPoint::new(x, x))).collect()
    }

    pub fn s_sequence(&self) -> SSequence {
        SSequence::from_colors(&self.main_diagonal_colors())
    }

    /// Text form: `r` on the first line, then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.r);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(Color::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Aligned rendering with `(1,1)` in the upper-left corner.
    pub fn render(&self) -> String {
        let width = self.r.to_string().len();
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Coloring {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let r: Color = lines
            .next()
            .ok_or_else(|| ColoringError::Parse("empty input".into()))?
            .parse()
            .map_err(|e| ColoringError::Parse(format!("color count: {e}")))?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<Color>()
                            .map_err(|e| ColoringError::Parse(format!("`{t}`: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Err(ColoringError::Parse("no rows".into()));
        }
        Coloring::from_rows(&rows, r)
    }
}

/// Positions `s_1 < s_2 < ...` (1-based) where a color not seen before first
/// appears; `ell` is the palette size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSequence {
    pub values: Vec<usize>,
    pub ell: usize,
}

impl SSequence {
    pub fn from_colors(colors: &[Color]) -> Self {
        let mut seen = BTreeSet::new();
        let values: Vec<usize> = colors
            .iter()
            .enumerate()
            .filter(|(_, c)| seen.insert(**c))
            .map(|(x, _)| x + 1)
            .collect();
        SSequence {
            ell: values.len(),
            values,
        }
    }

    /// `s_k` with 1-based `k`.
    pub fn get(&self, k: usize) -> Option<usize> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn s2(&self) -> Option<usize> {
        self.get(2)
    }
}

/// A solution is rainbow when its three (distinct) cells get three colors.
pub fn is_rainbow(t: &SolutionTriple, c: &Coloring) -> bool {
    if t.degenerate {
        return false;
    }
    let (a, b, g) = (c.color(t.alpha), c.color(t.beta), c.color(t.gamma));
    a != b && a != g && b != g
}

pub fn is_rainbow_free(c: &Coloring, index: &SolutionIndex) -> bool {
    index.find_rainbow(c.cells()).is_none()
}
