//! Exact search for rainbow-free colorings and rainbow numbers.

mod engine;
pub mod oracle;

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::certificate::{Certificate, CertificateError, CertificateKind};
use crate::coloring::{Color, Coloring};
use crate::constructions::{closed_form_rb_grid, closed_form_rb_interval};
use crate::grid::{diagonal_cells, DiagonalIndex, GridDims};
use crate::space::{SolutionIndex, Space};

use engine::{Flow, Found, Halt, Limits, Problem, Shared, MAX_COLORS};

/// Order in which the engine assigns cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellOrder {
    #[default]
    RowMajor,
    /// The main diagonal first, then off-diagonals alternating outward.
    DiagonalMajor,
}

impl CellOrder {
    /// Cell indices (row-major numbering) in assignment order.
    pub fn cells(self, space: Space) -> Vec<u32> {
        let count = space.cell_count() as u32;
        match (self, space) {
            (CellOrder::DiagonalMajor, Space::Grid(d)) => {
                let main = d.main_diagonal().get();
                let mut ks = vec![main];
                for off in 1..d.diagonal_count() {
                    if off < main {
                        ks.push(main - off);
                    }
                    if main + off <= d.diagonal_count() {
                        ks.push(main + off);
                    }
                }
                ks.into_iter()
                    .flat_map(|k| diagonal_cells(DiagonalIndex(k), d).expect("valid diagonal"))
                    .map(|p| d.index_of(p) as u32)
                    .collect()
            }
            _ => (0..count).collect(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Worker threads; 0 and 1 both mean sequential.
    pub threads: usize,
    pub order: CellOrder,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            threads: 1,
            ..Default::default()
        }
    }

    pub fn with_order(mut self, order: CellOrder) -> Self {
        self.order = order;
        self
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("color count {r} out of range 1..={max} for {space}")]
    ColorCount { space: Space, r: usize, max: usize },
    #[error("budget exhausted at r = {r} after {nodes} nodes")]
    Indeterminate { r: usize, nodes: u64 },
    #[error("inconsistent results: witness at r = {witness} but exhaustion at r = {exhaustion}")]
    Inconsistent { witness: usize, exhaustion: usize },
    #[error("emitted witness failed its self-check: {0}")]
    SelfCheck(#[from] CertificateError),
}

/// Tracks a global deadline and node allowance across several searches.
struct Meter {
    deadline: Option<Instant>,
    nodes_left: Option<u64>,
    nodes: u64,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Meter {
            deadline: budget.max_time.map(|t| Instant::now() + t),
            nodes_left: budget.max_nodes,
            nodes: 0,
        }
    }

    fn shared(&self) -> Shared {
        Shared::new(Limits {
            max_nodes: self.nodes_left,
            deadline: self.deadline,
        })
    }

    fn charge(&mut self, nodes: u64) {
        self.nodes += nodes;
        if let Some(left) = self.nodes_left.as_mut() {
            *left = left.saturating_sub(nodes);
        }
    }
}

/// `Ok(true)` when `r` is one more than the cell count: no exact
/// `r`-coloring exists, so there is nothing to search.
fn check_r(space: Space, r: usize) -> Result<bool, SearchError> {
    let cells = space.cell_count();
    if r == cells + 1 {
        return Ok(true);
    }
    let max = if cells < MAX_COLORS { cells + 1 } else { MAX_COLORS };
    if r == 0 || r > max {
        return Err(SearchError::ColorCount { space, r, max });
    }
    Ok(false)
}

fn to_coloring(space: Space, colors: &[u8], r: usize) -> Coloring {
    let cells = colors.iter().map(|&k| k as Color).collect();
    Coloring::new(space.storage_dims(), cells, r as Color)
        .expect("engine leaf is a valid coloring")
        .canonicalize()
}

fn decide(
    index: &SolutionIndex,
    r: usize,
    budget: &SearchBudget,
    meter: &mut Meter,
) -> Result<Certificate, SearchError> {
    let space = index.space();
    if check_r(space, r)? {
        return Ok(Certificate::exhaustion(space, r, 0));
    }
    let problem = Problem::new(index, r, budget.order.cells(space));
    let shared = meter.shared();
    let found = engine::find_one(&problem, &shared, budget.threads.max(1));
    meter.charge(shared.nodes());
    let nodes = shared.nodes();
    let mut cert = match found {
        Found::Witness(colors) => Certificate::witness(space, to_coloring(space, &colors, r), nodes),
        Found::Exhausted => Certificate::exhaustion(space, r, nodes),
        Found::Budget => return Err(SearchError::Indeterminate { r, nodes }),
    };
    if cert.is_witness() {
        cert.check_witness()?;
        cert.verified = true;
    }
    Ok(cert)
}

/// Witness or exhaustion certificate for exact `r`-colorings of `[m] x [n]`.
pub fn exists_rainbow_free(dims: GridDims, r: usize, budget: &SearchBudget) -> Result<Certificate, SearchError> {
    exists_rainbow_free_in(&SolutionIndex::grid(dims), r, budget)
}

pub fn exists_rainbow_free_in(
    index: &SolutionIndex,
    r: usize,
    budget: &SearchBudget,
) -> Result<Certificate, SearchError> {
    decide(index, r, budget, &mut Meter::new(budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RbStrategy {
    /// Start just below the closed form and walk toward the threshold.
    #[default]
    Scan,
    Binary,
}

#[derive(Debug, Clone)]
pub struct RbResult {
    pub space: Space,
    pub rb: usize,
    /// Certificate at `rb - 1` (absent only when `rb = 1`).
    pub witness: Option<Certificate>,
    /// Certificate at `rb` (absent when `rb = |S| + 1`).
    pub exhaustion: Option<Certificate>,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub enum RbOutcome {
    Exact(Box<RbResult>),
    /// Budget ran out; `lower <= rb <= upper`.
    Bracketed {
        space: Space,
        lower: usize,
        upper: usize,
        nodes: u64,
    },
}

impl RbOutcome {
    pub fn exact(&self) -> Option<&RbResult> {
        match self {
            RbOutcome::Exact(r) => Some(r),
            RbOutcome::Bracketed { .. } => None,
        }
    }
}

pub fn rb_search(dims: GridDims, budget: &SearchBudget, strategy: RbStrategy) -> Result<RbOutcome, SearchError> {
    rb_search_in(&SolutionIndex::grid(dims), budget, strategy)
}

pub fn rb_search_interval(n: usize, budget: &SearchBudget, strategy: RbStrategy) -> Result<RbOutcome, SearchError> {
    rb_search_in(&SolutionIndex::interval(n), budget, strategy)
}

/// Smallest `r` with no rainbow-free exact `r`-coloring, or `|S| + 1`.
///
/// Relies on the threshold structure (merging two color classes of a
/// rainbow-free coloring keeps it rainbow-free) and checks it on the
/// certificates it produces.
pub fn rb_search_in(
    index: &SolutionIndex,
    budget: &SearchBudget,
    strategy: RbStrategy,
) -> Result<RbOutcome, SearchError> {
    let space = index.space();
    let cells = space.cell_count();
    let mut meter = Meter::new(budget);
    // best known: witness at `lo` (r = 1 always works), exhaustion at `hi`
    let mut lo: (usize, Option<Certificate>) = (0, None);
    let mut hi: (usize, Option<Certificate>) = (cells + 1, None);

    let probe = |r: usize,
                 meter: &mut Meter,
                 lo: &mut (usize, Option<Certificate>),
                 hi: &mut (usize, Option<Certificate>)|
     -> Result<(), SearchError> {
        let cert = decide(index, r, budget, meter)?;
        if cert.is_witness() {
            if r >= hi.0 {
                return Err(SearchError::Inconsistent {
                    witness: r,
                    exhaustion: hi.0,
                });
            }
            if r > lo.0 {
                *lo = (r, Some(cert));
            }
        } else {
            if r <= lo.0 {
                return Err(SearchError::Inconsistent {
                    witness: lo.0,
                    exhaustion: r,
                });
            }
            if r < hi.0 {
                *hi = (r, Some(cert));
            }
        }
        Ok(())
    };

    let result = (|| -> Result<(), SearchError> {
        match strategy {
            RbStrategy::Scan => {
                let guess = match space {
                    Space::Grid(d) => closed_form_rb_grid(d),
                    Space::Interval(n) => closed_form_rb_interval(n),
                };
                let mut r = guess.saturating_sub(1).clamp(1, cells);
                probe(r, &mut meter, &mut lo, &mut hi)?;
                if lo.0 == r {
                    while lo.0 + 1 < hi.0 {
                        r = lo.0 + 1;
                        probe(r, &mut meter, &mut lo, &mut hi)?;
                    }
                } else {
                    while lo.0 + 1 < hi.0 {
                        r = hi.0 - 1;
                        probe(r, &mut meter, &mut lo, &mut hi)?;
                    }
                }
            }
            RbStrategy::Binary => {
                while lo.0 + 1 < hi.0 {
                    let r = (lo.0 + hi.0).div_ceil(2).max(1);
                    probe(r, &mut meter, &mut lo, &mut hi)?;
                }
            }
        }
        Ok(())
    })();

    match result {
        Ok(()) => Ok(RbOutcome::Exact(Box::new(RbResult {
            space,
            rb: hi.0,
            witness: lo.1,
            exhaustion: hi.1,
            nodes: meter.nodes,
        }))),
        Err(SearchError::Indeterminate { .. }) => Ok(RbOutcome::Bracketed {
            space,
            lower: lo.0 + 1,
            upper: hi.0,
            nodes: meter.nodes,
        }),
        Err(e) => Err(e),
    }
}

/// Outcome of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// False when the budget or the visitor cut the walk short.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Visits every canonical rainbow-free exact `r`-coloring exactly once,
/// sequentially and in a deterministic order.
pub fn enumerate_rainbow_free<F>(
    index: &SolutionIndex,
    r: usize,
    budget: &SearchBudget,
    mut visit: F,
) -> Result<Enumeration, SearchError>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    let space = index.space();
    if check_r(space, r)? {
        return Ok(Enumeration {
            count: 0,
            exhaustive: true,
            nodes: 0,
        });
    }
    let problem = Problem::new(index, r, budget.order.cells(space));
    let meter = Meter::new(budget);
    let shared = meter.shared();
    let mut count = 0u64;
    let result = engine::for_each(&problem, &shared, |colors| {
        count += 1;
        match visit(&to_coloring(space, colors, r)) {
            ControlFlow::Continue(()) => Flow::Continue,
            ControlFlow::Break(()) => Flow::Stop,
        }
    });
    let exhaustive = match result {
        Ok(()) => true,
        Err(Halt::Budget) | Err(Halt::Visitor) => false,
    };
    Ok(Enumeration {
        count,
        exhaustive,
        nodes: shared.nodes(),
    })
}

/// Every canonical rainbow-free exact `r`-coloring, collected.
pub fn collect_rainbow_free(
    index: &SolutionIndex,
    r: usize,
    budget: &SearchBudget,
) -> Result<(Vec<Coloring>, Enumeration), SearchError> {
    let mut out = Vec::new();
    let e = enumerate_rainbow_free(index, r, budget, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok((out, e))
}

/// Re-checks a certificate. Witnesses are checked directly; exhaustion
/// claims are re-derived by a fresh search in diagonal-major order, so the
/// second run explores a differently shaped tree.
pub fn verify_certificate(cert: &Certificate, budget: &SearchBudget) -> Result<Certificate, SearchError> {
    let mut checked = cert.clone();
    match cert.kind {
        CertificateKind::Witness => cert.check_witness()?,
        CertificateKind::Exhaustion => {
            let again = exists_rainbow_free_in(
                &SolutionIndex::new(cert.space),
                cert.r,
                &budget.clone().with_order(CellOrder::DiagonalMajor),
            )?;
            if again.is_witness() {
                return Err(SearchError::Inconsistent {
                    witness: cert.r,
                    exhaustion: cert.r,
                });
            }
        }
    }
    checked.verified = true;
    Ok(checked)
}
