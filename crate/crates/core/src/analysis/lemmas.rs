//! Predicate suite for the structural statements about rainbow-free
//! colorings.
//!
//! Each lemma is a hypothesis plus a conclusion. Both are evaluated on every
//! coloring: `applicable` reports the hypothesis, `holds` the conclusion. A
//! counterexample is a coloring with `applicable && !holds`. All logarithmic
//! bounds are checked in integer arithmetic.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::structure::{
    contributing_map, delta_sets, find_disjoint_corners, find_pairs, region_mask, ContributingMap, CornerRecord,
    DiagonalStatus, PairKind, PairRecord, RegionMask, YMode,
};
use crate::coloring::{Color, Coloring, SSequence};
use crate::constructions::floor_log2;
use crate::grid::{diagonal_index, GridPoint};
use crate::space::SolutionIndex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub detail: String,
    pub cells: Vec<GridPoint>,
}

impl Counterexample {
    fn new(detail: impl Into<String>, cells: Vec<GridPoint>) -> Self {
        Counterexample {
            detail: detail.into(),
            cells,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub id: String,
    pub applicable: bool,
    /// Why the hypothesis fails, when it does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl LemmaVerdict {
    /// Hypothesis satisfied and conclusion false.
    pub fn is_violation(&self) -> bool {
        self.applicable && !self.holds
    }
}

/// Everything the predicates need, computed once per coloring.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub coloring: Coloring,
    pub exact: bool,
    pub rainbow: Option<[GridPoint; 3]>,
    pub s: SSequence,
    pub map: ContributingMap,
    pub regions: RegionMask,
    pub pairs: Vec<PairRecord>,
    pub corners: Vec<CornerRecord>,
}

impl Analysis {
    pub fn new(c: &Coloring) -> Self {
        Self::with_mode(c, YMode::default())
    }

    pub fn with_mode(c: &Coloring, mode: YMode) -> Self {
        let dims = c.dims();
        let rainbow = SolutionIndex::grid(dims)
            .find_rainbow(c.cells())
            .map(|t| t.map(|x| dims.point_at(x as usize)));
        let map = contributing_map(c);
        let regions = region_mask(c, mode);
        let pairs = find_pairs(c, &map);
        let corners = find_disjoint_corners(&pairs, &regions);
        Analysis {
            coloring: c.clone(),
            exact: c.is_exact(),
            rainbow,
            s: c.s_sequence(),
            map,
            regions,
            pairs,
            corners,
        }
    }

    fn m(&self) -> usize {
        self.coloring.dims().m()
    }

    fn n(&self) -> usize {
        self.coloring.dims().n()
    }

    fn color(&self, p: GridPoint) -> Color {
        self.coloring.color(p)
    }

    fn on_main(&self, p: GridPoint) -> bool {
        self.map.main_palette.contains(&self.color(p))
    }

    fn count(&self, kind: PairKind) -> usize {
        self.pairs.iter().filter(|p| p.kind == kind).count()
    }

    fn meets_w(&self, kind: PairKind) -> bool {
        self.pairs
            .iter()
            .any(|p| p.kind == kind && p.cells().iter().any(|&q| self.regions.in_w(q)))
    }

    /// Jumps `alpha -> beta` whose endpoint colors are distinct and both
    /// outside the main palette.
    fn colored_jumps(&self) -> Vec<(GridPoint, GridPoint)> {
        let off: Vec<GridPoint> = self.coloring.dims().points().filter(|&p| !self.on_main(p)).collect();
        off.iter()
            .flat_map(|&a| off.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a.i < b.i && a.j < b.j && self.color(a) != self.color(b))
            .collect()
    }
}

type Check = Result<(), Counterexample>;

/// `2^k * x`, saturating.
fn shl(x: u128, k: usize) -> u128 {
    if k >= 100 {
        u128::MAX
    } else {
        x.saturating_mul(1u128 << k)
    }
}

/// `s_{i+1} >= 2 s_i` and `s_i >= 2^{i-1}` along a sequence.
pub fn doubling_gaps(s: &SSequence) -> Check {
    for (i, w) in s.values.windows(2).enumerate() {
        if w[1] < 2 * w[0] {
            return Err(Counterexample::new(
                format!("s_{} = {} < 2 s_{} = {}", i + 2, w[1], i + 1, 2 * w[0]),
                vec![],
            ));
        }
    }
    for (i, &v) in s.values.iter().enumerate() {
        if (v as u128) < shl(1, i) {
            return Err(Counterexample::new(format!("s_{} = {} < 2^{}", i + 1, v, i), vec![]));
        }
    }
    Ok(())
}

/// `2^{l-2} s_2 <= len` for a sequence over `[len]`.
pub fn power_bound(s: &SSequence, len: usize) -> Check {
    match s.s2() {
        Some(s2) if shl(s2 as u128, s.ell - 2) > len as u128 => Err(Counterexample::new(
            format!("2^{} * s_2 = 2^{} * {} > {}", s.ell - 2, s.ell - 2, s2, len),
            vec![],
        )),
        _ => Ok(()),
    }
}

fn one_extra_color(a: &Analysis) -> Check {
    match a.map.off_diagonals().find(|d| d.extra.len() > 1) {
        Some(d) => Err(Counterexample::new(
            format!(
                "{} carries {} colors outside the main palette: {:?}",
                d.index,
                d.extra.len(),
                d.extra
            ),
            vec![],
        )),
        None => Ok(()),
    }
}

fn no_disjoint_corner(a: &Analysis) -> Check {
    match a.corners.first() {
        Some(k) => Err(Counterexample::new(
            format!("disjoint corner (strict colors: {})", k.strict_colors),
            vec![k.vertical.alpha, k.vertical.beta, k.horizontal.alpha, k.horizontal.beta],
        )),
        None => Ok(()),
    }
}

fn no_strict_disjoint_corner(a: &Analysis) -> Check {
    match a.corners.iter().find(|k| k.strict_colors) {
        Some(k) => Err(Counterexample::new(
            "disjoint corner with four distinct colors",
            vec![k.vertical.alpha, k.vertical.beta, k.horizontal.alpha, k.horizontal.beta],
        )),
        None => Ok(()),
    }
}

fn main_palette_bound(a: &Analysis) -> Check {
    let limit = floor_log2(a.m()) as usize + 1;
    if a.s.ell > limit {
        return Err(Counterexample::new(
            format!("|c(D_m)| = {} > floor(log2 m) + 1 = {}", a.s.ell, limit),
            vec![],
        ));
    }
    power_bound(&a.s, a.m())
}

fn main_palette_at_least_three(a: &Analysis) -> Check {
    if a.s.ell < 3 {
        return Err(Counterexample::new(format!("|c(D_m)| = {}", a.s.ell), vec![]));
    }
    Ok(())
}

fn few_non_contributing(a: &Analysis) -> Check {
    let k = a.map.non_contributing_count();
    if k + 3 > a.s.ell {
        return Err(Counterexample::new(
            format!("{k} non-contributing off-diagonals, |c(D_m)| = {}", a.s.ell),
            vec![],
        ));
    }
    Ok(())
}

/// `#contributing >= m + n - 1 - log2(m / s2)`, i.e. `s2 * 2^k <= m` with
/// `k = m + n - 1 - #contributing`.
fn many_contributing(a: &Analysis) -> Check {
    let Some(s2) = a.s.s2() else { return Ok(()) };
    let contrib = a.map.contributing_count();
    let k = (a.m() + a.n() - 1).saturating_sub(contrib);
    if k > 0 && shl(s2 as u128, k) > a.m() as u128 {
        return Err(Counterexample::new(
            format!("{contrib} contributing off-diagonals with s_2 = {s2}"),
            vec![],
        ));
    }
    Ok(())
}

fn each_diagonal_contributes(a: &Analysis) -> Check {
    let dims = a.coloring.dims();
    for d in a.map.off_diagonals() {
        if d.contributed.len() != 1 {
            return Err(Counterexample::new(
                format!("{} contributes {:?}", d.index, d.contributed),
                vec![],
            ));
        }
        let x = *d.contributed.first().expect("one color");
        if let Some(p) = dims
            .points()
            .find(|&p| a.color(p) == x && diagonal_index(p, dims).expect("in grid") != d.index)
        {
            return Err(Counterexample::new(
                format!("color {x} of {} also appears at {p}", d.index),
                vec![p],
            ));
        }
    }
    Ok(())
}

fn no_colored_jumps(a: &Analysis) -> Check {
    match a.colored_jumps().first().copied() {
        Some((x, y)) => Err(Counterexample::new(
            format!("jump {x} -> {y} between distinct off-palette colors"),
            vec![x, y],
        )),
        None => Ok(()),
    }
}

fn s3_block(a: &Analysis) -> Check {
    let Some(s3) = a.s.get(3) else { return Ok(()) };
    for i in 1..s3 {
        for j in 1..s3 {
            let p = GridPoint::new(i, j);
            if a.coloring.dims().contains(p) && !a.on_main(p) {
                return Err(Counterexample::new(
                    format!("{p} with i, j < s_3 = {s3} is off the main palette"),
                    vec![p],
                ));
            }
        }
    }
    Ok(())
}

fn has_rainbow(a: &Analysis) -> Check {
    if a.rainbow.is_some() {
        Ok(())
    } else {
        Err(Counterexample::new("no rainbow solution", vec![]))
    }
}

fn off_palette_cells(a: &Analysis) -> Vec<GridPoint> {
    a.coloring.dims().points().filter(|&p| !a.on_main(p)).collect()
}

/// `6 X <= 6 (m + n) - 3 - 2 |DD_delta|` for every `delta` off the main palette.
fn extra_color_budget(a: &Analysis) -> Check {
    let all: BTreeSet<Color> = a.coloring.cells().iter().copied().collect();
    let x = all.difference(&a.map.main_palette).count() as i64;
    let mn = (a.m() + a.n()) as i64;
    for delta in off_palette_cells(a) {
        let dd = delta_sets(delta, a.coloring.dims()).expect("in grid").size() as i64;
        if 6 * x > 6 * mn - 3 - 2 * dd {
            return Err(Counterexample::new(
                format!("{x} extra colors exceed the budget for delta {delta}"),
                vec![delta],
            ));
        }
    }
    Ok(())
}

/// `4m + 9 - 6 (floor(log2 m) + 1) <= 4 (d1 + d2)` for every `delta` off the main palette.
fn jump_lower_bound(a: &Analysis) -> Check {
    let m = a.m() as i64;
    let lhs = 4 * m + 9 - 6 * (floor_log2(a.m()) as i64 + 1);
    for delta in off_palette_cells(a) {
        if lhs > 4 * (delta.i + delta.j) as i64 {
            return Err(Counterexample::new(format!("delta {delta} is too short"), vec![delta]));
        }
    }
    Ok(())
}

/// `d1 + d2 <= 2 log2 m + 1`, i.e. `2^{d1 + d2 - 1} <= m^2`.
fn jump_upper_bound(a: &Analysis) -> Check {
    let m2 = (a.m() * a.m()) as u128;
    for (x, y) in a.colored_jumps() {
        let dist = (y.i - x.i) + (y.j - x.j);
        if shl(1, dist - 1) > m2 {
            return Err(Counterexample::new(
                format!("jump {x} -> {y} has distance {dist}"),
                vec![x, y],
            ));
        }
    }
    Ok(())
}

/// `2m - t = b` for `alpha + delta = beta`, `delta in D_t`, `beta in D_b`.
fn jump_landing(a: &Analysis) -> Check {
    let dims = a.coloring.dims();
    for (x, y) in a.colored_jumps() {
        let delta = GridPoint::new(y.i - x.i, y.j - x.j);
        let t = diagonal_index(delta, dims).expect("in grid").0;
        let b = diagonal_index(y, dims).expect("in grid").0;
        if 2 * a.m() != t + b {
            let lhs = 2 * a.m() as i64 - t as i64;
            return Err(Counterexample::new(
                format!("jump {x} -> {y}: 2m - t = {lhs} but b = {b}"),
                vec![x, y],
            ));
        }
    }
    Ok(())
}

/// `#pairs >= m + n - 2 log2(m / s2) - 2`, i.e. `2^k s2^2 <= m^2` with
/// `k = m + n - 2 - #pairs`.
fn consecutive_pairs(a: &Analysis) -> Check {
    let Some(s2) = a.s.s2() else { return Ok(()) };
    let pairs = a.map.consecutive_contributing_count();
    let k = (a.m() + a.n() - 2).saturating_sub(pairs);
    if k > 0 && shl((s2 * s2) as u128, k) > (a.m() * a.m()) as u128 {
        return Err(Counterexample::new(
            format!("{pairs} consecutive contributing diagonal pairs, s_2 = {s2}"),
            vec![],
        ));
    }
    Ok(())
}

fn pair_tradeoff(a: &Analysis) -> Check {
    let Some(s2) = a.s.s2() else { return Ok(()) };
    let cap = 2 * s2 - 2;
    if a.meets_w(PairKind::Horizontal) && a.count(PairKind::Vertical) > cap {
        return Err(Counterexample::new(
            format!("{} vertical pairs > {cap}", a.count(PairKind::Vertical)),
            vec![],
        ));
    }
    if a.meets_w(PairKind::Vertical) && a.count(PairKind::Horizontal) > cap {
        return Err(Counterexample::new(
            format!("{} horizontal pairs > {cap}", a.count(PairKind::Horizontal)),
            vec![],
        ));
    }
    Ok(())
}

fn pair_capacity(a: &Analysis) -> Check {
    let (h, v) = (a.count(PairKind::Horizontal), a.count(PairKind::Vertical));
    if h + 1 > a.n() || v + 1 > a.m() {
        return Err(Counterexample::new(
            format!("{h} horizontal, {v} vertical pairs"),
            vec![],
        ));
    }
    Ok(())
}

type Hypothesis = fn(&Analysis) -> Result<(), String>;

fn rainbow_free(a: &Analysis) -> Result<(), String> {
    match a.rainbow {
        Some(t) => Err(format!("rainbow solution {} + {} = {}", t[0], t[1], t[2])),
        None => Ok(()),
    }
}

/// Exact `(m + n + 1)`-coloring with `lo <= m`.
fn extremal_exact(a: &Analysis, lo: usize) -> Result<(), String> {
    if !a.exact {
        return Err("coloring is not exact".into());
    }
    if a.coloring.r() as usize != a.m() + a.n() + 1 {
        return Err(format!("r = {} is not m + n + 1", a.coloring.r()));
    }
    if a.m() < lo {
        return Err(format!("needs m >= {lo}"));
    }
    Ok(())
}

fn extremal(a: &Analysis) -> Result<(), String> {
    extremal_exact(a, 3)?;
    rainbow_free(a)
}

fn extremal_three(a: &Analysis) -> Result<(), String> {
    extremal(a)?;
    if a.s.ell != 3 {
        return Err(format!("|c(D_m)| = {} is not 3", a.s.ell));
    }
    Ok(())
}

fn extremal_four_rows(a: &Analysis) -> Result<(), String> {
    if a.m() < 4 {
        return Err("needs m >= 4".into());
    }
    extremal(a)
}

struct Lemma {
    id: &'static str,
    statement: &'static str,
    hypothesis: Hypothesis,
    conclusion: fn(&Analysis) -> Check,
}

const LEMMAS: &[Lemma] = &[
    Lemma {
        id: "doubling-gaps",
        statement: "rainbow-free: s_{i+1} >= 2 s_i and s_i >= 2^{i-1} on the main diagonal",
        hypothesis: rainbow_free,
        conclusion: |a| doubling_gaps(&a.s),
    },
    Lemma {
        id: "power-bound",
        statement: "rainbow-free: 2^{l-2} s_2 <= m",
        hypothesis: rainbow_free,
        conclusion: |a| power_bound(&a.s, a.m()),
    },
    Lemma {
        id: "main-palette-bound",
        statement: "rainbow-free: |c(D_m)| <= floor(log2 m) + 1 and |c(D_m)| <= log2(m / s_2) + 2",
        hypothesis: rainbow_free,
        conclusion: main_palette_bound,
    },
    Lemma {
        id: "one-extra-color",
        statement: "rainbow-free: |c(D_x) \\ c(D_m)| <= 1 for every off-diagonal",
        hypothesis: rainbow_free,
        conclusion: one_extra_color,
    },
    Lemma {
        id: "no-disjoint-corner",
        statement: "rainbow-free: no contributing disjoint corner",
        hypothesis: rainbow_free,
        conclusion: no_disjoint_corner,
    },
    Lemma {
        id: "no-strict-disjoint-corner",
        statement: "rainbow-free: no contributing disjoint corner whose four colors are pairwise distinct",
        hypothesis: rainbow_free,
        conclusion: no_strict_disjoint_corner,
    },
    Lemma {
        id: "main-palette-at-least-three",
        statement: "exact rainbow-free (m+n+1), 3 <= m: |c(D_m)| >= 3",
        hypothesis: extremal,
        conclusion: main_palette_at_least_three,
    },
    Lemma {
        id: "few-non-contributing",
        statement: "exact rainbow-free (m+n+1), 3 <= m: at most |c(D_m)| - 3 non-contributing off-diagonals",
        hypothesis: extremal,
        conclusion: few_non_contributing,
    },
    Lemma {
        id: "many-contributing",
        statement: "exact rainbow-free (m+n+1), 3 <= m: at least m + n - 1 - log2(m / s_2) contributing off-diagonals",
        hypothesis: extremal,
        conclusion: many_contributing,
    },
    Lemma {
        id: "each-diagonal-contributes",
        statement: "exact rainbow-free (m+n+1), |c(D_m)| = 3: each off-diagonal contributes one color found nowhere else",
        hypothesis: extremal_three,
        conclusion: each_diagonal_contributes,
    },
    Lemma {
        id: "three-color-no-jumps",
        statement: "exact rainbow-free (m+n+1), |c(D_m)| = 3: no jump between distinct off-palette colors",
        hypothesis: extremal_three,
        conclusion: no_colored_jumps,
    },
    Lemma {
        id: "s3-block",
        statement: "exact rainbow-free (m+n+1), |c(D_m)| = 3: i, j < s_3 implies c((i,j)) in c(D_m)",
        hypothesis: extremal_three,
        conclusion: s3_block,
    },
    Lemma {
        id: "three-color-rainbow",
        statement: "exact (m+n+1), 3 <= m, |c(D_m)| <= 3: a rainbow solution exists",
        hypothesis: |a| {
            extremal_exact(a, 3)?;
            if a.s.ell > 3 {
                return Err(format!("|c(D_m)| = {} exceeds 3", a.s.ell));
            }
            Ok(())
        },
        conclusion: has_rainbow,
    },
    Lemma {
        id: "extra-color-budget",
        statement: "exact rainbow-free (m+n+1): |c \\ c(D_m)| <= m + n - 1/2 - |DD_delta| / 3 for delta off the main palette",
        hypothesis: extremal,
        conclusion: extra_color_budget,
    },
    Lemma {
        id: "jump-lower-bound",
        statement: "exact rainbow-free (m+n+1): (4m + 9 - 6 (floor(log2 m) + 1)) / 4 <= d1 + d2 for delta off the main palette",
        hypothesis: extremal,
        conclusion: jump_lower_bound,
    },
    Lemma {
        id: "jump-upper-bound",
        statement: "exact rainbow-free (m+n+1): jumps between distinct off-palette colors have d1 + d2 <= 2 log2 m + 1",
        hypothesis: extremal,
        conclusion: jump_upper_bound,
    },
    Lemma {
        id: "jump-landing",
        statement: "exact rainbow-free (m+n+1): a jump delta in D_t between distinct off-palette colors ends in D_{2m-t}",
        hypothesis: extremal,
        conclusion: jump_landing,
    },
    Lemma {
        id: "no-jumps",
        statement: "exact rainbow-free (m+n+1): every jump has an endpoint in c(D_m) or equal endpoint colors",
        hypothesis: extremal,
        conclusion: no_colored_jumps,
    },
    Lemma {
        id: "consecutive-pairs",
        statement: "exact rainbow-free (m+n+1): at least m + n - 2 log2(m / s_2) - 2 consecutive contributing diagonal pairs",
        hypothesis: extremal,
        conclusion: consecutive_pairs,
    },
    Lemma {
        id: "pair-tradeoff",
        statement: "exact rainbow-free (m+n+1), 4 <= m: a horizontal (vertical) pair meeting W allows at most 2 s_2 - 2 vertical (horizontal) pairs",
        hypothesis: extremal_four_rows,
        conclusion: pair_tradeoff,
    },
    Lemma {
        id: "pair-capacity",
        statement: "exact rainbow-free (m+n+1): at most n - 1 horizontal and m - 1 vertical pairs",
        hypothesis: extremal,
        conclusion: pair_capacity,
    },
    Lemma {
        id: "large-grid-rainbow",
        statement: "exact (m+n+1), 8 <= m: a rainbow solution exists",
        hypothesis: |a| extremal_exact(a, 8),
        conclusion: has_rainbow,
    },
    Lemma {
        id: "two-row-rainbow",
        statement: "exact (n+3)-coloring of [2] x [n]: a rainbow solution exists",
        hypothesis: |a| {
            if a.m() != 2 {
                return Err("needs m = 2".into());
            }
            extremal_exact(a, 2)
        },
        conclusion: has_rainbow,
    },
    Lemma {
        id: "extremal-rainbow",
        statement: "exact (m+n+1), 2 <= m: a rainbow solution exists",
        hypothesis: |a| extremal_exact(a, 2),
        conclusion: has_rainbow,
    },
];

pub fn lemma_ids() -> Vec<&'static str> {
    LEMMAS.iter().map(|l| l.id).collect()
}

pub fn lemma_statement(id: &str) -> Option<&'static str> {
    LEMMAS.iter().find(|l| l.id == id).map(|l| l.statement)
}

fn run(l: &Lemma, a: &Analysis) -> LemmaVerdict {
    let hyp = (l.hypothesis)(a);
    let conclusion = (l.conclusion)(a);
    LemmaVerdict {
        id: l.id.to_string(),
        applicable: hyp.is_ok(),
        reason: hyp.err(),
        holds: conclusion.is_ok(),
        counterexample: conclusion.err(),
    }
}

/// `None` for an unknown id.
pub fn evaluate(id: &str, a: &Analysis) -> Option<LemmaVerdict> {
    LEMMAS.iter().find(|l| l.id == id).map(|l| run(l, a))
}

pub fn lemma_suite_for(a: &Analysis) -> Vec<LemmaVerdict> {
    LEMMAS.iter().map(|l| run(l, a)).collect()
}

pub fn lemma_suite(c: &Coloring) -> Vec<LemmaVerdict> {
    lemma_suite_for(&Analysis::new(c))
}

/// The sequence lemmas for a coloring of the interval `[n]` stored as one row.
pub fn interval_lemma_suite(c: &Coloring) -> Vec<LemmaVerdict> {
    let n = c.cells().len();
    let s = SSequence::from_colors(c.cells());
    let hyp = match SolutionIndex::interval(n).find_rainbow(c.cells()) {
        Some([x, y, z]) => Err(format!("rainbow solution {} + {} = {}", x + 1, y + 1, z + 1)),
        None => Ok(()),
    };
    [
        ("doubling-gaps", doubling_gaps(&s)),
        ("power-bound", power_bound(&s, n)),
    ]
    .into_iter()
    .map(|(id, conclusion)| LemmaVerdict {
        id: id.to_string(),
        applicable: hyp.is_ok(),
        reason: hyp.clone().err(),
        holds: conclusion.is_ok(),
        counterexample: conclusion.err(),
    })
    .collect()
}

/// Each color is contributed by at most one diagonal.
pub fn contributed_colors_unique(map: &ContributingMap) -> bool {
    let mut seen = BTreeSet::new();
    map.diagonals
        .iter()
        .filter(|d| d.status != DiagonalStatus::Main)
        .all(|d| d.contributed.iter().all(|x| seen.insert(*x)))
}
