//! Unpruned reference oracle for tiny grids.
//!
//! Enumerates every partition of the cells into exactly `r` blocks and checks
//! each one against every pair of cells directly, sharing no code with the
//! optimized engine or the solution index.

use thiserror::Error;

use crate::certificate::Certificate;
use crate::coloring::{Color, Coloring};
use crate::grid::{GridDims, GridPoint};
use crate::space::Space;

/// Largest number of cells the oracle accepts.
pub const ORACLE_CELL_CAP: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle is capped at {ORACLE_CELL_CAP} cells, got {0}")]
    TooLarge(usize),
    #[error("color count {0} out of range")]
    ColorCount(usize),
}

/// Triples of cell indices `(x, y, z)` with `x + y = z`, `x != y`, found by
/// trying every ordered pair of cells.
fn brute_triples(space: Space) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    match space {
        Space::Grid(d) => {
            let pts: Vec<GridPoint> = d.points().collect();
            for (x, &a) in pts.iter().enumerate() {
                for (y, &b) in pts.iter().enumerate() {
                    let s = GridPoint::new(a.i + b.i, a.j + b.j);
                    if x != y && d.contains(s) {
                        out.push((x, y, (s.i - 1) * d.n() + (s.j - 1)));
                    }
                }
            }
        }
        Space::Interval(n) => {
            for a in 1..=n {
                for b in 1..=n {
                    if a != b && a + b <= n {
                        out.push((a - 1, b - 1, a + b - 1));
                    }
                }
            }
        }
    }
    out
}

/// Calls `f` on every assignment of blocks to `k` elements using exactly `r`
/// blocks, each partition once (blocks numbered by first element).
fn partitions(k: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(labels: &mut Vec<usize>, k: usize, r: usize, blocks: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if labels.len() == k {
            return blocks != r || f(labels);
        }
        if r - blocks > k - labels.len() {
            return true;
        }
        for b in 0..=blocks.min(r - 1) {
            labels.push(b);
            let go_on = go(labels, k, r, blocks.max(b + 1), f);
            labels.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(&mut Vec::with_capacity(k), k, r, 0, f);
}

fn check(space: Space, r: usize) -> Result<(), OracleError> {
    let cells = space.cell_count();
    if cells > ORACLE_CELL_CAP {
        return Err(OracleError::TooLarge(cells));
    }
    // r = cells + 1 is allowed: vacuously no exact coloring
    if r == 0 || r > cells + 1 {
        return Err(OracleError::ColorCount(r));
    }
    Ok(())
}

/// Number of rainbow-free partitions of the cells into exactly `r` blocks.
pub fn naive_count(space: Space, r: usize) -> Result<u64, OracleError> {
    check(space, r)?;
    let triples = brute_triples(space);
    let mut count = 0;
    partitions(space.cell_count(), r, &mut |labels| {
        if triples
            .iter()
            .all(|&(x, y, z)| labels[x] == labels[y] || labels[x] == labels[z] || labels[y] == labels[z])
        {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// Same contract as the engine's decision procedure, by brute force.
pub fn naive_oracle_in(space: Space, r: usize) -> Result<Certificate, OracleError> {
    check(space, r)?;
    let triples = brute_triples(space);
    let mut found: Option<Vec<Color>> = None;
    let mut nodes = 0u64;
    partitions(space.cell_count(), r, &mut |labels| {
        nodes += 1;
        let free = triples
            .iter()
            .all(|&(x, y, z)| labels[x] == labels[y] || labels[x] == labels[z] || labels[y] == labels[z]);
        if free {
            found = Some(labels.iter().map(|&b| b as Color + 1).collect());
        }
        !free
    });
    Ok(match found {
        Some(cells) => {
            let c = Coloring::new(space.storage_dims(), cells, r as Color).expect("oracle coloring is well formed");
            Certificate {
                engine: "naive-oracle".into(),
                ..Certificate::witness(space, c, nodes)
            }
        }
        None => Certificate {
            engine: "naive-oracle".into(),
            ..Certificate::exhaustion(space, r, nodes)
        },
    })
}

pub fn naive_oracle(dims: GridDims, r: usize) -> Result<Certificate, OracleError> {
    naive_oracle_in(Space::Grid(dims), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::CertificateKind;

    fn stirling2(n: u64, k: u64) -> u64 {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) | (0, _) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    #[test]
    fn partition_counts_are_stirling() {
        for k in 1..=8 {
            for r in 1..=k {
                let mut c = 0;
                partitions(k, r, &mut |_| {
                    c += 1;
                    true
                });
                assert_eq!(c, stirling2(k as u64, r as u64), "S({k},{r})");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let d = |m, n| GridDims::new(m, n).unwrap();
        for r in 1..=4 {
            assert_eq!(naive_oracle(d(2, 2), r).unwrap().kind, CertificateKind::Witness);
        }
        assert_eq!(naive_count(Space::Grid(d(2, 2)), 4).unwrap(), 1);
        assert_eq!(naive_oracle(d(3, 3), 7).unwrap().kind, CertificateKind::Exhaustion);
        assert_eq!(naive_oracle(d(2, 4), 7).unwrap().kind, CertificateKind::Exhaustion);
        assert_eq!(naive_oracle(d(2, 4), 6).unwrap().kind, CertificateKind::Witness);
        assert_eq!(naive_oracle(d(3, 4), 2), Err(OracleError::TooLarge(12)));
        assert_eq!(naive_count(Space::Interval(3), 2).unwrap(), 3);
        assert_eq!(naive_count(Space::Interval(3), 4).unwrap(), 0);
        assert_eq!(naive_oracle(d(2, 2), 5).unwrap().kind, CertificateKind::Exhaustion);
        assert_eq!(naive_oracle(d(2, 2), 6), Err(OracleError::ColorCount(6)));
        let w = naive_oracle(d(2, 3), 5).unwrap();
        w.check_witness().unwrap();
    }
}
