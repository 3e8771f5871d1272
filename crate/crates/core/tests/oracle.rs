//! Engine results against brute force.

use std::collections::HashSet;
use std::ops::ControlFlow;

use schur_rainbow::search::oracle::{naive_count, naive_oracle, naive_oracle_in, ORACLE_CELL_CAP};
use schur_rainbow::search::{collect_rainbow_free, enumerate_rainbow_free, exists_rainbow_free_in, rb_search_in};
use schur_rainbow::{
    CellOrder, CertificateKind, Coloring, GridDims, GridPoint, RbStrategy, SearchBudget, SolutionIndex, Space,
};

fn small_spaces() -> Vec<Space> {
    let mut out = Vec::new();
    for m in 1..=ORACLE_CELL_CAP {
        for n in m..=ORACLE_CELL_CAP {
            if m * n <= ORACLE_CELL_CAP {
                out.push(Space::Grid(GridDims::new(m, n).unwrap()));
            }
        }
    }
    out.extend((1..=ORACLE_CELL_CAP).map(Space::Interval));
    out
}

fn budgets() -> Vec<SearchBudget> {
    vec![
        SearchBudget::unlimited(),
        SearchBudget::unlimited().with_order(CellOrder::DiagonalMajor),
        SearchBudget {
            threads: 4,
            ..SearchBudget::unlimited()
        },
    ]
}

/// Triples `(x, y, x + y)` of cell positions, found from coordinates.
fn triples(space: Space) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    match space {
        Space::Grid(d) => {
            let pts: Vec<GridPoint> = d.points().collect();
            for (x, a) in pts.iter().enumerate() {
                for (y, b) in pts.iter().enumerate().skip(x + 1) {
                    let s = GridPoint::new(a.i + b.i, a.j + b.j);
                    if d.contains(s) {
                        out.push([x, y, pts.iter().position(|&q| q == s).unwrap()]);
                    }
                }
            }
        }
        Space::Interval(n) => {
            for a in 1..=n {
                for b in a + 1..=n - a {
                    out.push([a - 1, b - 1, a + b - 1]);
                }
            }
        }
    }
    out
}

fn free(colors: &[u32], triples: &[[usize; 3]]) -> bool {
    triples
        .iter()
        .all(|&[x, y, z]| colors[x] == colors[y] || colors[x] == colors[z] || colors[y] == colors[z])
}

/// Counts rainbow-free set partitions of `k` cells into exactly `r` blocks,
/// walking restricted growth strings.
fn brute_count(space: Space, r: usize) -> u64 {
    let k = space.cell_count();
    let t = triples(space);
    let mut labels = vec![0u32; k];
    let mut count = 0;
    // labels[..len] assigned; `max` = largest label so far
    fn go(labels: &mut [u32], len: usize, max: u32, r: u32, t: &[[usize; 3]], count: &mut u64) {
        let k = labels.len();
        if (r - max) as usize > k - len {
            return;
        }
        if len == k {
            if max == r && free(labels, t) {
                *count += 1;
            }
            return;
        }
        for c in 1..=(max + 1).min(r) {
            labels[len] = c;
            go(labels, len + 1, max.max(c), r, t, count);
        }
    }
    go(&mut labels, 0, 0, r as u32, &t, &mut count);
    count
}

/// Lexicographically least rainbow-free restricted growth string with
/// exactly `r` labels.
fn first_free(k: usize, r: u32, t: &[[usize; 3]]) -> Option<Vec<u32>> {
    fn go(labels: &mut Vec<u32>, k: usize, max: u32, r: u32, t: &[[usize; 3]]) -> bool {
        if (r - max) as usize > k - labels.len() {
            return false;
        }
        if labels.len() == k {
            return max == r && free(labels, t);
        }
        for c in 1..=(max + 1).min(r) {
            labels.push(c);
            if go(labels, k, max.max(c), r, t) {
                return true;
            }
            labels.pop();
        }
        false
    }
    let mut labels = Vec::with_capacity(k);
    go(&mut labels, k, 0, r, t).then_some(labels)
}

#[test]
fn decisions_match_oracle_in_every_order() {
    for space in small_spaces() {
        let index = SolutionIndex::new(space);
        for r in 1..=space.cell_count() + 1 {
            let want = naive_oracle_in(space, r).unwrap().kind;
            for b in budgets() {
                let got = exists_rainbow_free_in(&index, r, &b).unwrap();
                assert_eq!(got.kind, want, "{space} r={r} {b:?}");
                if got.is_witness() {
                    got.check_witness().unwrap();
                    assert!(free(got.coloring.as_ref().unwrap().cells(), &triples(space)));
                }
            }
        }
    }
}

#[test]
fn class_sizes_match_oracle() {
    for space in small_spaces() {
        let index = SolutionIndex::new(space);
        let t = triples(space);
        for r in 1..=space.cell_count() + 1 {
            let (all, e) = collect_rainbow_free(&index, r, &SearchBudget::unlimited()).unwrap();
            assert!(e.exhaustive);
            assert_eq!(e.count, naive_count(space, r).unwrap(), "{space} r={r}");
            let distinct: HashSet<Vec<u32>> = all.iter().map(|c| c.cells().to_vec()).collect();
            assert_eq!(distinct.len(), all.len(), "{space} r={r}: repeated coloring");
            for c in &all {
                assert!(c.is_exact() && free(c.cells(), &t));
                assert_eq!(c, &c.canonicalize());
            }
        }
    }
}

#[test]
fn twelve_cell_class_sizes() {
    for (m, n) in [(3, 4), (2, 6)] {
        let space = Space::Grid(GridDims::new(m, n).unwrap());
        let index = SolutionIndex::new(space);
        for r in 5..=m + n + 1 {
            let e =
                enumerate_rainbow_free(&index, r, &SearchBudget::unlimited(), |_| ControlFlow::Continue(())).unwrap();
            assert_eq!(e.count, brute_count(space, r), "{m}x{n} r={r}");
        }
    }
}

#[test]
fn rb_matches_oracle_threshold() {
    for space in small_spaces() {
        let cells = space.cell_count();
        let want = (1..=cells + 1)
            .find(|&r| naive_oracle_in(space, r).unwrap().kind == CertificateKind::Exhaustion)
            .unwrap();
        let index = SolutionIndex::new(space);
        for strategy in [RbStrategy::Scan, RbStrategy::Binary] {
            let got = rb_search_in(&index, &SearchBudget::unlimited(), strategy).unwrap();
            let got = got.exact().unwrap();
            assert_eq!(got.rb, want, "{space} {strategy:?}");
            let w = got.witness.as_ref().unwrap();
            assert_eq!((w.kind, w.r), (CertificateKind::Witness, want - 1));
            match &got.exhaustion {
                Some(x) => assert_eq!((x.kind, x.r), (CertificateKind::Exhaustion, want)),
                None => assert_eq!(want, cells + 1),
            }
        }
    }
}

#[test]
fn least_witness_is_first_partition() {
    for (m, n, r) in [(2, 3, 4), (3, 3, 5), (2, 4, 6), (2, 5, 3)] {
        let d = GridDims::new(m, n).unwrap();
        let space = Space::Grid(d);
        let t = triples(space);
        let first = first_free(d.cell_count(), r as u32, &t);
        let cert = naive_oracle(d, r).unwrap();
        let engine = exists_rainbow_free_in(&SolutionIndex::grid(d), r, &SearchBudget::unlimited()).unwrap();
        let want = Coloring::new(d, first.expect("witness exists"), r as u32).unwrap();
        assert_eq!(engine.coloring.as_ref(), Some(&want), "{m}x{n} r={r}");
        assert_eq!(cert.coloring.as_ref(), Some(&want));
    }
}
