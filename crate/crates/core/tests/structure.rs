use std::collections::BTreeMap;
use std::ops::ControlFlow;

use schur_rainbow::analysis::{contributed_colors_unique, contributing_map, disjoint_corners_of, lemma_suite, YMode};
use schur_rainbow::search::enumerate_rainbow_free;
use schur_rainbow::{Coloring, GridDims, SearchBudget, SolutionIndex};

fn each_rainbow_free(m: usize, n: usize, mut f: impl FnMut(usize, &Coloring)) -> u64 {
    let d = GridDims::new(m, n).unwrap();
    let index = SolutionIndex::grid(d);
    let mut seen = 0;
    for r in 1..=d.cell_count() {
        enumerate_rainbow_free(&index, r, &SearchBudget::unlimited(), |c| {
            seen += 1;
            f(r, c);
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    seen
}

/// (lemma id, r) -> number of rainbow-free colorings violating it.
fn violations(m: usize, n: usize) -> (u64, BTreeMap<(String, usize), u64>) {
    let mut bad = BTreeMap::new();
    let seen = each_rainbow_free(m, n, |r, c| {
        for v in lemma_suite(c).into_iter().filter(|v| v.is_violation()) {
            *bad.entry((v.id, r)).or_insert(0) += 1;
        }
    });
    (seen, bad)
}

#[test]
fn lemma_suite_holds_up_to_twelve_cells() {
    for (m, n) in [(1, 8), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
        let (seen, bad) = violations(m, n);
        assert!(seen > 0);
        assert!(bad.is_empty(), "{m}x{n}: {bad:?}");
    }
}

#[test]
fn corners_and_contributions_up_to_twelve_cells() {
    for (m, n) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
        each_rainbow_free(m, n, |_, c| {
            assert!(contributed_colors_unique(&contributing_map(c)), "{c}");
            for mode in [YMode::NBound, YMode::MBound] {
                assert!(disjoint_corners_of(c, mode).is_empty(), "{c}");
            }
        });
    }
}

/// With the literal corner definition the 4x4 grid has rainbow-free
/// colorings containing a contributing disjoint corner. In all of them the
/// four colors repeat; no corner with four distinct colors occurs.
#[test]
fn four_by_four_literal_corners() {
    let (seen, bad) = violations(4, 4);
    let expected: BTreeMap<(String, usize), u64> = [(4, 448), (5, 572), (6, 164), (7, 12)]
        .into_iter()
        .map(|(r, k)| (("no-disjoint-corner".to_string(), r), k))
        .collect();
    assert_eq!(seen, 611_531);
    assert_eq!(bad, expected);

    let c: Coloring = "4\n1 2 1 1\n2 3 1 1\n4 1 1 2\n1 4 2 1\n".parse().unwrap();
    let corners = disjoint_corners_of(&c, YMode::NBound);
    assert_eq!(corners.len(), 1);
    assert!(!corners[0].strict_colors);
}

#[test]
fn verdicts_ignore_color_names() {
    let mut checked = 0;
    each_rainbow_free(3, 4, |r, c| {
        if r < 4 || checked > 3000 {
            return;
        }
        checked += 1;
        let r = r as u32;
        let rotated = c.map_colors(|x| x % r + 1).unwrap();
        let reversed = c.map_colors(|x| r + 1 - x).unwrap();
        let key = |c: &Coloring| {
            lemma_suite(c)
                .into_iter()
                .map(|v| (v.id, v.applicable, v.holds))
                .collect::<Vec<_>>()
        };
        let base = key(c);
        assert_eq!(key(&rotated), base);
        assert_eq!(key(&reversed), base);
    });
    assert!(checked > 1000);
}
