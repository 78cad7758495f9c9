//! Index-subset enumeration in colexicographic order.
//!
//! Colex order sorts `t`-subsets of `{0, .., n-1}` by their largest element
//! first, then by the next largest, and so on. Subsets sharing a largest
//! element form a contiguous run, which is what the parallel sweeps in
//! [`crate::conditions`] split on.

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of vectors in a Hamming ball of radius `d` in dimension `n`.
pub fn ball_size(n: usize, d: usize) -> u128 {
    (0..=d.min(n)).fold(0u128, |acc, i| acc.saturating_add(binomial(n, i)))
}

/// Iterator over all `t`-subsets of `{0, .., n-1}` in colex order.
///
/// Each item is a sorted index vector. `t = 0` yields the empty set once.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, t: usize) -> Self {
        Combinations {
            n,
            current: (0..t).collect(),
            done: t > n,
        }
    }

    /// Advances `current` to its colex successor; returns false when exhausted.
    fn advance(&mut self) -> bool {
        let t = self.current.len();
        for i in 0..t {
            let limit = if i + 1 < t { self.current[i + 1] } else { self.n };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (j, slot) in self.current[..i].iter_mut().enumerate() {
                    *slot = j;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 2), 105);
        assert_eq!(binomial(40, 4), 91_390);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(ball_size(15, 2), 121);
        assert_eq!(ball_size(40, 3), 10_701);
    }

    #[test]
    fn colex_order_and_count() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for n in 0..9 {
            for t in 0..=n + 1 {
                assert_eq!(Combinations::new(n, t).count() as u128, binomial(n, t));
            }
        }
    }

    #[test]
    fn empty_subset_once() {
        let all: Vec<_> = Combinations::new(3, 0).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }
}
