//! Disjunctness and reversibility checkers.
//!
//! `d`-Dis: no row of `H` lies below the sum of `t ≤ d` other rows (row
//! subsets are index subsets, so a duplicated row already fails at `t = 1`).
//! `d`-Rev: `xH = yH` with `w(x) ≤ d` forces `x = y`.
//!
//! The two are equivalent, and so are three further characterizations of
//! `d`-Rev through the residual decoder `g`:
//!
//! * via ball: `g(f(x)) = x` for every `x ∈ B(𝟎, d)`;
//! * via image: `B(𝟎, d) ⊆ im(g)`;
//! * via column space: `B(𝟏, d) ⊆ colspace(H)`.
//!
//! Each checker returns a [`PropertyReport`]; a failing report carries a
//! [`Witness`] that [`Witness::replay`] re-validates against the matrix.
//!
//! Subset sweeps visit index subsets in colex order and split work by the
//! largest index, so the witness reported is the colex-first one no matter
//! how many workers run.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::boolsemi::{ball_enumerate, colspace_member_transposed, BoolMatrix, BoolVec};
use crate::combinatorics::ball_size;
use crate::error::{Error, Result};
use crate::residuation::{guard, TestingScheme, EXHAUSTIVE_LIMIT};
use crate::with_pool;

/// Largest Hamming ball the via-ball and via-colspace sweeps will walk.
pub const BALL_BUDGET: u128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Disjunct,
    ReversibleDirect,
    ReversibleViaBall,
    ReversibleViaImage,
    ReversibleViaColspace,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Disjunct,
        Property::ReversibleDirect,
        Property::ReversibleViaBall,
        Property::ReversibleViaImage,
        Property::ReversibleViaColspace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Disjunct => "d-Dis",
            Property::ReversibleDirect => "d-Rev-direct",
            Property::ReversibleViaBall => "d-Rev-via-ball",
            Property::ReversibleViaImage => "d-Rev-via-img",
            Property::ReversibleViaColspace => "d-Rev-via-colspace",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample to one of the properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Row `row` lies below the sum of the rows in `cover` (and `row ∉ cover`).
    Covered { row: usize, cover: Vec<usize> },
    /// `xH = yH` with `x ≠ y` and `w(x) ≤ d`.
    Collision { x: BoolVec, y: BoolVec },
    /// `g(f(x)) = decoded ≠ x`.
    NotFixed { x: BoolVec, decoded: BoolVec },
    /// `x ∈ B(𝟎, d)` is not in the image of the decoder.
    NotClosed { x: BoolVec },
    /// `v ∈ B(𝟏, d)` is not a sum of columns.
    NotInColspace { v: BoolVec },
}

impl Witness {
    /// Re-checks the violation against `h` at radius `d`.
    pub fn replay(&self, h: &BoolMatrix, d: usize) -> bool {
        let n = h.nrows();
        match self {
            Witness::Covered { row, cover } => {
                let mut sorted = cover.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != cover.len()
                    || cover.len() > d
                    || *row >= n
                    || cover.iter().any(|&c| c >= n || c == *row)
                {
                    return false;
                }
                let sum = h.row_combination(&BoolVec::from_support(n, cover.iter().copied()));
                h.row(*row).leq_unchecked(&sum)
            }
            Witness::Collision { x, y } => {
                x.len() == n
                    && y.len() == n
                    && x.weight() <= d
                    && x != y
                    && h.row_combination(x) == h.row_combination(y)
            }
            Witness::NotFixed { x, decoded } => {
                let Ok(s) = TestingScheme::new(h.clone()) else {
                    return false;
                };
                x.len() == n
                    && x.weight() <= d
                    && x != decoded
                    && s.closure(x).as_ref() == Ok(decoded)
            }
            Witness::NotClosed { x } => {
                // closed elements are exactly the fixed points of g∘f
                let Ok(s) = TestingScheme::new(h.clone()) else {
                    return false;
                };
                x.len() == n && x.weight() <= d && s.closure(x).as_ref() != Ok(x)
            }
            Witness::NotInColspace { v } => {
                v.len() == n
                    && v.negated().weight() <= d
                    && !colspace_member_transposed(&h.transpose(), v)
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Covered { row, cover } => {
                let cover: Vec<String> = cover.iter().map(usize::to_string).collect();
                write!(f, "covered row={row} cover={}", cover.join(","))
            }
            Witness::Collision { x, y } => write!(f, "collision x={x} y={y}"),
            Witness::NotFixed { x, decoded } => write!(f, "not-fixed x={x} decoded={decoded}"),
            Witness::NotClosed { x } => write!(f, "not-closed x={x}"),
            Witness::NotInColspace { v } => write!(f, "not-in-colspace v={v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub d: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn from_witness(property: Property, d: usize, witness: Option<Witness>) -> Self {
        PropertyReport {
            property,
            d,
            holds: witness.is_none(),
            witness,
        }
    }
}

impl fmt::Display for PropertyReport {
    /// Structured text: `property`, `d`, `holds` and, when failing, `witness`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property {}", self.property)?;
        writeln!(f, "d {}", self.d)?;
        writeln!(f, "holds {}", self.holds)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness {w}")?;
        }
        Ok(())
    }
}

/// Finds the colex-first `t`-subset `T` of row indices for which `visit`
/// returns a value. `visit` receives the sorted subset and the sum of its rows.
fn first_subset<W, V>(rows: &[BoolVec], width: usize, t: usize, workers: usize, visit: V) -> Option<W>
where
    W: Send,
    V: Fn(&[usize], &BoolVec) -> Option<W> + Sync,
{
    let n = rows.len();
    if t == 0 {
        return visit(&[], &BoolVec::zeros(width));
    }
    if t > n {
        return None;
    }
    let task = |top: usize| {
        let mut chosen = vec![0; t];
        chosen[t - 1] = top;
        descend(rows, &mut chosen, t - 1, &rows[top], &visit)
    };
    if workers == 1 {
        (t - 1..n).find_map(task)
    } else {
        with_pool(workers, || (t - 1..n).into_par_iter().find_map_first(task))
    }
}

/// Fills `chosen[..depth]` below `chosen[depth]` in colex order.
fn descend<W, V>(
    rows: &[BoolVec],
    chosen: &mut [usize],
    depth: usize,
    sum: &BoolVec,
    visit: &V,
) -> Option<W>
where
    V: Fn(&[usize], &BoolVec) -> Option<W>,
{
    if depth == 0 {
        return visit(chosen, sum);
    }
    let upper = chosen[depth];
    for e in depth - 1..upper {
        chosen[depth - 1] = e;
        let mut next = sum.clone();
        next.or_assign(&rows[e]);
        if let Some(w) = descend(rows, chosen, depth - 1, &next, visit) {
            return Some(w);
        }
    }
    None
}

/// Checks `d`-disjunctness over all index subsets of size `t ≤ d`.
///
/// `workers = 1` runs serially; `0` uses one worker per core.
pub fn check_d_dis(h: &BoolMatrix, d: usize, workers: usize) -> Result<PropertyReport> {
    let n = h.nrows();
    if d >= n {
        return Err(Error::InvalidParameter(format!(
            "d-Dis needs d <= n-1, got d={d} with n={n}"
        )));
    }
    let rows = h.rows();
    let witness = (0..=d).find_map(|t| {
        first_subset(rows, h.ncols(), t, workers, |cover, sum| {
            (0..n)
                .find(|r| !cover.contains(r) && rows[*r].leq_unchecked(sum))
                .map(|row| Witness::Covered {
                    row,
                    cover: cover.to_vec(),
                })
        })
    });
    Ok(PropertyReport::from_witness(Property::Disjunct, d, witness))
}

/// Walks B(𝟎, d) by weight, handing each pattern `x` and its syndrome `xH`
/// to `visit`; returns the first hit.
fn first_in_ball<W, V>(h: &BoolMatrix, d: usize, workers: usize, visit: V) -> Result<Option<W>>
where
    W: Send,
    V: Fn(&BoolVec, &BoolVec) -> Option<W> + Sync,
{
    let n = h.nrows();
    if d > n {
        return Err(Error::InvalidRadius { radius: d, len: n });
    }
    let size = ball_size(n, d);
    if size > BALL_BUDGET {
        return Err(Error::SizeGuard {
            what: "ball size",
            value: usize::try_from(size).unwrap_or(usize::MAX),
            limit: BALL_BUDGET as usize,
        });
    }
    Ok((0..=d).find_map(|t| {
        first_subset(h.rows(), h.ncols(), t, workers, |support, syndrome| {
            visit(&BoolVec::from_support(n, support.iter().copied()), syndrome)
        })
    }))
}

/// Production reversibility check: `g(f(x)) = x` on all of B(𝟎, d).
pub fn check_d_rev_via_ball(h: &BoolMatrix, d: usize, workers: usize) -> Result<PropertyReport> {
    let scheme = TestingScheme::new(h.clone())?;
    let witness = first_in_ball(h, d, workers, |x, syndrome| {
        let decoded = scheme.decode_unchecked(syndrome);
        (decoded != *x).then(|| Witness::NotFixed {
            x: x.clone(),
            decoded,
        })
    })?;
    Ok(PropertyReport::from_witness(
        Property::ReversibleViaBall,
        d,
        witness,
    ))
}

/// `B(𝟏, d) ⊆ colspace(H)`, via greedy column-space membership.
pub fn check_d_rev_via_colspace(
    h: &BoolMatrix,
    d: usize,
    workers: usize,
) -> Result<PropertyReport> {
    let ht = h.transpose();
    let witness = first_in_ball(h, d, workers, |x, _| {
        let v = x.negated();
        (!colspace_member_transposed(&ht, &v)).then_some(Witness::NotInColspace { v })
    })?;
    Ok(PropertyReport::from_witness(
        Property::ReversibleViaColspace,
        d,
        witness,
    ))
}

/// `B(𝟎, d) ⊆ im(g)`, with im(g) enumerated over all of B₂ᵏ (k ≤ 20).
pub fn check_d_rev_via_img(h: &BoolMatrix, d: usize) -> Result<PropertyReport> {
    let scheme = TestingScheme::new(h.clone())?;
    let closed = scheme.enumerate_closed()?;
    let center = BoolVec::zeros(h.nrows());
    let witness = ball_enumerate(&center, d)?
        .find(|x| !closed.contains(x))
        .map(|x| Witness::NotClosed { x });
    Ok(PropertyReport::from_witness(
        Property::ReversibleViaImage,
        d,
        witness,
    ))
}

/// The definition itself: for `x ∈ B(𝟎, d)` and any `y ∈ B₂ⁿ`, `xH = yH`
/// forces `x = y`. Tabulates the syndrome of every `y` (n ≤ 20).
pub fn check_d_rev_direct(h: &BoolMatrix, d: usize) -> Result<PropertyReport> {
    let n = h.nrows();
    guard("n", n, EXHAUSTIVE_LIMIT)?;
    if d > n {
        return Err(Error::InvalidRadius { radius: d, len: n });
    }
    let stride = h.ncols().div_ceil(64);
    let total = 1usize << n;
    // syndrome of y = syndrome of y minus its lowest bit, plus that row
    let mut table = vec![0u64; total * stride];
    for y in 1..total {
        let low = y.trailing_zeros() as usize;
        let prev = (y & (y - 1)) * stride;
        for w in 0..stride {
            table[y * stride + w] = table[prev + w] | h.row(low).words()[w];
        }
    }
    // per syndrome: how many inputs produce it, and the first two of them
    let mut classes: HashMap<&[u64], (usize, usize, usize)> = HashMap::new();
    for y in 0..total {
        let entry = classes
            .entry(&table[y * stride..(y + 1) * stride])
            .or_insert((0, y, y));
        if entry.0 == 1 {
            entry.2 = y;
        }
        entry.0 += 1;
    }
    let witness = ball_enumerate(&BoolVec::zeros(n), d)?.find_map(|x| {
        let xi = x.words().first().copied().unwrap_or(0) as usize;
        let (count, first, second) = classes[&table[xi * stride..(xi + 1) * stride]];
        (count > 1).then(|| {
            let other = if first == xi { second } else { first };
            Witness::Collision {
                x,
                y: BoolVec::from_word(n, other as u64),
            }
        })
    });
    Ok(PropertyReport::from_witness(
        Property::ReversibleDirect,
        d,
        witness,
    ))
}

/// Largest `d ≤ n-1` for which `H` is `d`-disjunct; 0 if even `d = 1` fails.
pub fn max_d(h: &BoolMatrix, workers: usize) -> Result<usize> {
    let mut best = 0;
    for d in 1..h.nrows() {
        if !check_d_dis(h, d, workers)?.holds {
            break;
        }
        best = d;
    }
    Ok(best)
}

/// Every applicable checker at one radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub d: usize,
    pub reports: Vec<PropertyReport>,
}

impl Equivalence {
    /// True iff all run checkers returned the same verdict.
    pub fn agree(&self) -> bool {
        self.reports.windows(2).all(|w| w[0].holds == w[1].holds)
    }

    pub fn holds(&self) -> Option<bool> {
        self.agree().then(|| self.reports.first().is_none_or(|r| r.holds))
    }
}

/// Runs every checker whose preconditions `h` and `d` satisfy: d-Dis needs
/// `d < n`, direct needs `n ≤ 20`, via-image needs `k ≤ 20`.
pub fn check_equivalence(h: &BoolMatrix, d: usize, workers: usize) -> Result<Equivalence> {
    let n = h.nrows();
    if d > n {
        return Err(Error::InvalidRadius { radius: d, len: n });
    }
    let mut reports = Vec::with_capacity(5);
    if d < n {
        reports.push(check_d_dis(h, d, workers)?);
    }
    if n <= EXHAUSTIVE_LIMIT {
        reports.push(check_d_rev_direct(h, d)?);
    }
    reports.push(check_d_rev_via_ball(h, d, workers)?);
    if h.ncols() <= EXHAUSTIVE_LIMIT {
        reports.push(check_d_rev_via_img(h, d)?);
    }
    reports.push(check_d_rev_via_colspace(h, d, workers)?);
    Ok(Equivalence { d, reports })
}
