#![allow(dead_code)]

use proptest::prelude::*;
use resgt::boolsemi::{BoolMatrix, BoolVec};

pub fn vec_strategy(len: usize) -> impl Strategy<Value = BoolVec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BoolVec::from_bools(&b))
}

pub fn matrix_strategy(
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = BoolMatrix> {
    (rows, cols).prop_flat_map(|(n, k)| {
        proptest::collection::vec(vec_strategy(k), n)
            .prop_map(|rows| BoolMatrix::from_rows(rows).unwrap())
    })
}

/// Matrices with i.i.d. entries that are 1 with probability `density`.
pub fn weighted_matrix_strategy(
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
    density: f64,
) -> impl Strategy<Value = BoolMatrix> {
    (rows, cols).prop_flat_map(move |(n, k)| {
        proptest::collection::vec(
            proptest::collection::vec(proptest::bool::weighted(density), k)
                .prop_map(|b| BoolVec::from_bools(&b)),
            n,
        )
        .prop_map(|rows| BoolMatrix::from_rows(rows).unwrap())
    })
}

/// Every vector of length `n` (n ≤ 20).
pub fn all(n: usize) -> Vec<BoolVec> {
    (0u64..1 << n).map(|b| BoolVec::from_word(n, b)).collect()
}

/// Column-space membership by trying every subset of columns.
pub fn colspace_exhaustive(h: &BoolMatrix, v: &BoolVec) -> bool {
    let k = h.ncols();
    let cols: Vec<Vec<bool>> = (0..k).map(|j| h.col(j).iter().collect()).collect();
    let target: Vec<bool> = v.iter().collect();
    (0u64..1 << k).any(|mask| {
        (0..h.nrows()).all(|i| {
            let s = (0..k).any(|j| mask >> j & 1 == 1 && cols[j][i]);
            s == target[i]
        })
    })
}

/// The d-Rev definition, pairwise over B(0,d) × B₂ⁿ, with plain bool loops.
pub fn rev_pairwise(h: &BoolMatrix, d: usize) -> bool {
    let n = h.nrows();
    let f = |x: &BoolVec| -> Vec<bool> {
        (0..h.ncols())
            .map(|j| (0..n).any(|i| x.get(i) && h.get(i, j)))
            .collect()
    };
    let space = all(n);
    let fy: Vec<Vec<bool>> = space.iter().map(f).collect();
    space.iter().zip(&fy).filter(|(x, _)| x.weight() <= d).all(|(x, fx)| {
        space.iter().zip(&fy).all(|(y, fy)| fx != fy || x == y)
    })
}

/// The d-Dis definition with sets of column indices and explicit unions.
pub fn dis_by_sets(h: &BoolMatrix, d: usize) -> bool {
    let n = h.nrows();
    let sets: Vec<Vec<usize>> = (0..n).map(|i| h.row(i).support().collect()).collect();
    fn rec(sets: &[Vec<usize>], start: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        let union: std::collections::BTreeSet<usize> =
            chosen.iter().flat_map(|&c| sets[c].iter().copied()).collect();
        let ok = (0..sets.len())
            .filter(|r| !chosen.contains(r))
            .all(|r| !sets[r].iter().all(|p| union.contains(p)));
        if !ok {
            return false;
        }
        if left == 0 {
            return true;
        }
        (start..sets.len()).all(|c| {
            chosen.push(c);
            let r = rec(sets, c + 1, left - 1, chosen);
            chosen.pop();
            r
        })
    }
    rec(&sets, 0, d, &mut Vec::new())
}
