//! Linear algebra over the Boolean semifield B₂ = ({0,1}, OR, AND).
//!
//! Vectors are bit-packed into `u64` words so that sums, products and order
//! comparisons run word-parallel. Unused high bits of the last word are kept
//! zero; every constructor and operation maintains this.
//!
//! Vectors are row vectors throughout. A matrix `H` with `n` rows and `k`
//! columns maps `x ∈ B₂ⁿ` to `xH ∈ B₂ᵏ`.

use std::fmt;
use std::str::FromStr;

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A fixed-length vector over B₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolVec {
    len: usize,
    words: Vec<u64>,
}

impl BoolVec {
    /// The all-zero vector 𝟎.
    pub fn zeros(len: usize) -> Self {
        BoolVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The all-one vector 𝟏.
    pub fn ones(len: usize) -> Self {
        let mut v = BoolVec {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// The unit vector e_i.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BoolVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BoolVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector with ones exactly at `support`. Panics on an index `>= len`.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = BoolVec::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    /// Vector of length `len <= 64` whose bit `i` is bit `i` of `bits`.
    pub fn from_word(len: usize, bits: u64) -> Self {
        assert!(len <= WORD, "from_word supports lengths up to 64");
        let mut v = BoolVec::zeros(len);
        if len > 0 {
            v.words[0] = bits;
            v.clear_tail();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_ones(&self) -> bool {
        *self == BoolVec::ones(self.len)
    }

    /// Hamming weight w(x) = |supp(x)|.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Componentwise negation x̄.
    pub fn negated(&self) -> Self {
        let mut v = BoolVec {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.clear_tail();
        v
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn or_assign(&mut self, other: &BoolVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn and_assign(&mut self, other: &BoolVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// `self ≤ other` without a length check.
    pub(crate) fn leq_unchecked(&self, other: &BoolVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }
}

impl fmt::Display for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolVec({self})")
    }
}

impl FromStr for BoolVec {
    type Err = Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = BoolVec::zeros(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => v.set(i, true),
                other => {
                    return Err(Error::format(
                        1,
                        format!("unexpected character {:?} at column {}", other as char, i + 1),
                    ))
                }
            }
        }
        Ok(v)
    }
}

/// x + y (componentwise OR).
pub fn vec_add(x: &BoolVec, y: &BoolVec) -> Result<BoolVec> {
    Error::check_len(x.len(), y.len())?;
    let mut out = x.clone();
    out.or_assign(y);
    Ok(out)
}

/// x · y (componentwise AND).
pub fn vec_mul(x: &BoolVec, y: &BoolVec) -> Result<BoolVec> {
    Error::check_len(x.len(), y.len())?;
    let mut out = x.clone();
    out.and_assign(y);
    Ok(out)
}

pub fn negate(x: &BoolVec) -> BoolVec {
    x.negated()
}

/// The partial order: `x ≤ y` iff `x + y = y`.
pub fn leq(x: &BoolVec, y: &BoolVec) -> Result<bool> {
    Error::check_len(x.len(), y.len())?;
    Ok(x.leq_unchecked(y))
}

pub fn hamming_weight(x: &BoolVec) -> usize {
    x.weight()
}

pub fn hamming_distance(x: &BoolVec, y: &BoolVec) -> Result<usize> {
    Error::check_len(x.len(), y.len())?;
    Ok(x
        .words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

/// True iff no vector in `rows` lies below the sum of the others.
pub fn linearly_independent(rows: &[BoolVec]) -> Result<bool> {
    let first = rows.first().ok_or(Error::Empty("row list"))?;
    for r in rows {
        Error::check_len(first.len(), r.len())?;
    }
    for (i, r) in rows.iter().enumerate() {
        let mut others = BoolVec::zeros(first.len());
        for (j, s) in rows.iter().enumerate() {
            if j != i {
                others.or_assign(s);
            }
        }
        if r.leq_unchecked(&others) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An `n × k` matrix over B₂, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    cols: usize,
    rows: Vec<BoolVec>,
}

impl BoolMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BoolMatrix {
            cols: ncols,
            rows: vec![BoolVec::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BoolMatrix {
            cols: n,
            rows: (0..n).map(|i| BoolVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from its rows; all rows must share a length.
    pub fn from_rows(rows: Vec<BoolVec>) -> Result<Self> {
        let cols = rows.first().ok_or(Error::Empty("matrix rows"))?.len();
        for r in &rows {
            Error::check_len(cols, r.len())?;
        }
        Ok(BoolMatrix { cols, rows })
    }

    /// Convenience constructor from `0`/`1` row strings, e.g. `["10", "11", "01"]`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse::<BoolVec>())
            .collect::<Result<Vec<_>>>()?;
        BoolMatrix::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Row h_i.
    pub fn row(&self, i: usize) -> &BoolVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BoolVec] {
        &self.rows
    }

    /// Column j as a vector of length `nrows`.
    pub fn col(&self, j: usize) -> BoolVec {
        assert!(j < self.cols, "column {j} out of range for {} columns", self.cols);
        let mut v = BoolVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.support() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Indices of all-zero rows.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.nrows()).filter(|&i| self.rows[i].is_zero()).collect()
    }

    /// Sum of the rows selected by `x`, without a length check.
    pub(crate) fn row_combination(&self, x: &BoolVec) -> BoolVec {
        let mut acc = BoolVec::zeros(self.cols);
        for i in x.support() {
            acc.or_assign(&self.rows[i]);
        }
        acc
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// xH: the sum of the rows of `h` selected by `x`.
pub fn mat_vec_mul(x: &BoolVec, h: &BoolMatrix) -> Result<BoolVec> {
    Error::check_len(h.nrows(), x.len())?;
    Ok(h.row_combination(x))
}

/// True iff `v` is a Boolean sum of a subset of the columns of `h`.
///
/// Greedy maximal subsum: `v` is representable iff the sum of every column
/// lying below `v` already equals `v`. Any representation uses only such
/// columns, and adding more of them never overshoots `v`.
pub fn colspace_member(h: &BoolMatrix, v: &BoolVec) -> Result<bool> {
    Error::check_len(h.nrows(), v.len())?;
    Ok(colspace_member_transposed(&h.transpose(), v))
}

/// Same as [`colspace_member`] with the columns supplied as rows of `ht`.
pub(crate) fn colspace_member_transposed(ht: &BoolMatrix, v: &BoolVec) -> bool {
    let mut acc = BoolVec::zeros(v.len());
    for c in ht.rows() {
        if c.leq_unchecked(v) {
            acc.or_assign(c);
        }
    }
    acc == *v
}

/// Every vector within Hamming distance `radius` of `center`, each exactly once.
///
/// Vectors come out by increasing distance; within one distance the flipped
/// positions follow colex order.
pub fn ball_enumerate(center: &BoolVec, radius: usize) -> Result<Ball> {
    if radius > center.len() {
        return Err(Error::InvalidRadius {
            radius,
            len: center.len(),
        });
    }
    Ok(Ball {
        center: center.clone(),
        radius,
        distance: 0,
        subsets: Combinations::new(center.len(), 0),
    })
}

/// Iterator returned by [`ball_enumerate`].
#[derive(Debug, Clone)]
pub struct Ball {
    center: BoolVec,
    radius: usize,
    distance: usize,
    subsets: Combinations,
}

impl Iterator for Ball {
    type Item = BoolVec;

    fn next(&mut self) -> Option<BoolVec> {
        loop {
            if let Some(flips) = self.subsets.next() {
                let mut z = self.center.clone();
                for i in flips {
                    z.flip(i);
                }
                return Some(z);
            }
            if self.distance == self.radius {
                return None;
            }
            self.distance += 1;
            self.subsets = Combinations::new(self.center.len(), self.distance);
        }
    }
}

/// All 2ⁿ vectors of length `n` (n ≤ 30), in binary counting order.
pub(crate) fn all_vectors(n: usize) -> impl Iterator<Item = BoolVec> {
    assert!(n <= 30);
    (0u64..1 << n).map(move |bits| BoolVec::from_word(n, bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ball_size;

    fn v(s: &str) -> BoolVec {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(vec_add(&v("10"), &v("01")).unwrap(), v("11"));
        assert_eq!(vec_add(&v("1011"), &BoolVec::zeros(4)).unwrap(), v("1011"));
        assert_eq!(vec_add(&v("110"), &v("100")).unwrap(), v("110"));
        assert_eq!(
            vec_add(&v("10"), &v("100")),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(vec_mul(&v("10"), &v("11")).unwrap(), v("10"));
        assert_eq!(vec_mul(&v("0110"), &BoolVec::ones(4)).unwrap(), v("0110"));
        assert_eq!(vec_mul(&v("0110"), &BoolVec::zeros(4)).unwrap(), v("0000"));
        assert!(vec_mul(&v("1"), &v("11")).is_err());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(negate(&v("101")), v("010"));
        assert_eq!(negate(&BoolVec::zeros(70)), BoolVec::ones(70));
        let lhs = negate(&vec_add(&v("10"), &v("00")).unwrap());
        let rhs = vec_mul(&negate(&v("10")), &negate(&v("00"))).unwrap();
        assert_eq!(lhs, v("01"));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation_keeps_tail_clear() {
        let x = BoolVec::zeros(65).negated();
        assert_eq!(x.weight(), 65);
        assert_eq!(x.negated(), BoolVec::zeros(65));
    }

    #[test]
    fn mat_vec_examples() {
        let h = BoolMatrix::parse_rows(&["10", "11", "01"]).unwrap();
        assert_eq!(mat_vec_mul(&v("100"), &h).unwrap(), v("10"));
        assert_eq!(mat_vec_mul(&v("101"), &h).unwrap(), v("11"));
        assert_eq!(mat_vec_mul(&v("000"), &h).unwrap(), v("00"));
        assert!(mat_vec_mul(&v("10"), &h).is_err());
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&v("10"), &v("11")).unwrap());
        assert!(!leq(&v("10"), &v("01")).unwrap());
        assert!(leq(&v("0110"), &v("0110")).unwrap());
        assert!(leq(&v("1"), &v("10")).is_err());
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_weight(&v("1011")), 3);
        let (x, y) = (v("101"), v("110"));
        assert_eq!(hamming_distance(&x, &y).unwrap(), 2);
        let sum = vec_add(&x, &y).unwrap();
        let prod = vec_mul(&x, &y).unwrap();
        assert_eq!(sum, v("111"));
        assert_eq!(prod, v("100"));
        assert_eq!(sum.weight() - prod.weight(), 2);
        assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
    }

    #[test]
    fn independence_examples() {
        assert!(linearly_independent(&[v("10"), v("01")]).unwrap());
        assert!(!linearly_independent(&[v("10"), v("11")]).unwrap());
        assert!(!linearly_independent(&[v("10"), v("00"), v("01")]).unwrap());
        assert!(!linearly_independent(&[v("000")]).unwrap());
        assert!(linearly_independent(&[v("010")]).unwrap());
        assert_eq!(linearly_independent(&[]), Err(Error::Empty("row list")));
    }

    #[test]
    fn ball_examples() {
        let b: Vec<_> = ball_enumerate(&BoolVec::zeros(3), 1).unwrap().collect();
        assert_eq!(b, vec![v("000"), v("100"), v("010"), v("001")]);

        let x = v("10110");
        assert_eq!(ball_enumerate(&x, 0).unwrap().collect::<Vec<_>>(), vec![x.clone()]);

        assert_eq!(ball_enumerate(&BoolVec::zeros(15), 2).unwrap().count(), 121);
        assert_eq!(ball_size(15, 2), 1 + 15 + 105);

        assert_eq!(
            ball_enumerate(&x, 6).unwrap_err(),
            Error::InvalidRadius { radius: 6, len: 5 }
        );
    }

    #[test]
    fn colspace_examples() {
        // columns (1,1,0) and (0,1,1)
        let h = BoolMatrix::parse_rows(&["10", "11", "01"]).unwrap();
        assert!(colspace_member(&h, &v("111")).unwrap());
        assert!(colspace_member(&h, &v("000")).unwrap());
        assert!(!colspace_member(&h, &v("100")).unwrap());
        assert!(colspace_member(&h, &v("110")).unwrap());
        assert!(colspace_member(&h, &v("11")).is_err());
    }

    #[test]
    fn matrix_accessors() {
        let h = BoolMatrix::parse_rows(&["101", "011"]).unwrap();
        assert_eq!((h.nrows(), h.ncols()), (2, 3));
        assert_eq!(h.row(1), &v("011"));
        assert_eq!(h.col(2), v("11"));
        assert_eq!(h.col(0), v("10"));
        assert_eq!(h.transpose().transpose(), h);
        assert_eq!(h.transpose().row(1), &h.col(1));
        assert!(BoolMatrix::parse_rows(&["10", "1"]).is_err());
        assert!(BoolMatrix::parse_rows(&["1x"]).is_err());
    }

    #[test]
    fn support_spans_words() {
        let x = BoolVec::from_support(130, [0, 63, 64, 129]);
        assert_eq!(x.support().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(x.weight(), 4);
    }
}
