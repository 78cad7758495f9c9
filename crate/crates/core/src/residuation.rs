//! Residuated pairs between B₂ⁿ and B₂ᵏ.
//!
//! A testing matrix `H` (n samples × k tests) defines the forward map
//! `f(x) = xH`. Its residual is `g(y) = ¬(¬y Hᵀ)`: sample `i` is declared
//! positive iff every test containing it came back positive. The pair
//! satisfies `f(x) ≤ y ⇔ x ≤ g(y)`, so `g∘f ≥ id` (no false negatives) and
//! `f∘g ≤ id`.

use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolsemi::{all_vectors, BoolMatrix, BoolVec};
use crate::conditions::check_d_dis;
use crate::error::{Error, Result};

/// Largest dimension enumerated by exhaustive routines (closed/kernel sets,
/// exhaustive pair verification, direct reversibility).
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Default dimension bound for [`VerifyMode::Exhaustive`].
pub const PAIR_EXHAUSTIVE_LIMIT: usize = 16;

/// A testing matrix with cached transpose and optional certified disjunctness.
#[derive(Clone, PartialEq, Eq)]
pub struct TestingScheme {
    h: BoolMatrix,
    ht: BoolMatrix,
    certified_d: Option<usize>,
    source: Option<String>,
}

impl std::fmt::Debug for TestingScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestingScheme")
            .field("n", &self.n())
            .field("k", &self.k())
            .field("certified_d", &self.certified_d)
            .field("source", &self.source)
            .finish()
    }
}

impl TestingScheme {
    /// Wraps `h` without certifying anything. Matrices with all-zero rows
    /// are accepted here; see [`TestingScheme::has_zero_rows`].
    pub fn new(h: BoolMatrix) -> Result<Self> {
        if h.nrows() == 0 || h.ncols() == 0 {
            return Err(Error::InvalidParameter(format!(
                "testing matrix must be at least 1x1, got {}x{}",
                h.nrows(),
                h.ncols()
            )));
        }
        let ht = h.transpose();
        Ok(TestingScheme {
            h,
            ht,
            certified_d: None,
            source: None,
        })
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    /// Verifies `d`-disjunctness and records it. Fails with
    /// [`Error::Certification`] when the check does not hold.
    pub fn certify(mut self, d: usize, workers: usize) -> Result<Self> {
        let report = check_d_dis(&self.h, d, workers)?;
        if !report.holds {
            return Err(Error::Certification { d });
        }
        self.certified_d = Some(d);
        Ok(self)
    }

    /// Number of samples (rows of H).
    pub fn n(&self) -> usize {
        self.h.nrows()
    }

    /// Number of tests (columns of H).
    pub fn k(&self) -> usize {
        self.h.ncols()
    }

    pub fn matrix(&self) -> &BoolMatrix {
        &self.h
    }

    pub fn certified_d(&self) -> Option<usize> {
        self.certified_d
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// A sample that joins no test can never be detected.
    pub fn has_zero_rows(&self) -> bool {
        self.h.rows().iter().any(BoolVec::is_zero)
    }

    /// The syndrome y = xH.
    pub fn encode(&self, x: &BoolVec) -> Result<BoolVec> {
        Error::check_len(self.n(), x.len())?;
        Ok(self.h.row_combination(x))
    }

    /// The residual decoder g(y) = ¬(¬y Hᵀ).
    pub fn decode(&self, y: &BoolVec) -> Result<BoolVec> {
        Error::check_len(self.k(), y.len())?;
        Ok(self.decode_unchecked(y))
    }

    pub(crate) fn decode_unchecked(&self, y: &BoolVec) -> BoolVec {
        // samples touched by at least one negative test
        let mut cleared = BoolVec::zeros(self.n());
        for j in y.negated().support() {
            cleared.or_assign(self.ht.row(j));
        }
        cleared.negated()
    }

    /// The closure operator g∘f on B₂ⁿ.
    pub fn closure(&self, x: &BoolVec) -> Result<BoolVec> {
        let y = self.encode(x)?;
        Ok(self.decode_unchecked(&y))
    }

    /// The kernel operator f∘g on B₂ᵏ.
    pub fn kernel(&self, y: &BoolVec) -> Result<BoolVec> {
        let x = self.decode(y)?;
        Ok(self.h.row_combination(&x))
    }

    /// im(g), the closed elements of B₂ⁿ. Enumerates all of B₂ᵏ.
    pub fn enumerate_closed(&self) -> Result<HashSet<BoolVec>> {
        guard("k", self.k(), EXHAUSTIVE_LIMIT)?;
        Ok(all_vectors(self.k())
            .map(|y| self.decode_unchecked(&y))
            .collect())
    }

    /// im(f), the kernel elements of B₂ᵏ. Enumerates all of B₂ⁿ.
    pub fn enumerate_kernel(&self) -> Result<HashSet<BoolVec>> {
        guard("n", self.n(), EXHAUSTIVE_LIMIT)?;
        Ok(all_vectors(self.n())
            .map(|x| self.h.row_combination(&x))
            .collect())
    }

    /// The scheme's maps packaged as a [`ResiduatedPair`].
    pub fn pair(
        &self,
    ) -> ResiduatedPair<impl Fn(&BoolVec) -> BoolVec + '_, impl Fn(&BoolVec) -> BoolVec + '_> {
        ResiduatedPair {
            forward: move |x: &BoolVec| self.h.row_combination(x),
            residual: move |y: &BoolVec| self.decode_unchecked(y),
            n: self.n(),
            k: self.k(),
        }
    }
}

pub(crate) fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::SizeGuard { what, value, limit })
    } else {
        Ok(())
    }
}

/// A candidate pair of maps `forward: B₂ⁿ → B₂ᵏ` and `residual: B₂ᵏ → B₂ⁿ`.
pub struct ResiduatedPair<F, G> {
    pub forward: F,
    pub residual: G,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Check every vector; refused when `n` or `k` exceeds `limit`.
    Exhaustive { limit: usize },
    /// Check `samples` random vectors (and random supersets) per side.
    Sampled { samples: usize, seed: u64 },
}

impl Default for VerifyMode {
    fn default() -> Self {
        VerifyMode::Exhaustive {
            limit: PAIR_EXHAUSTIVE_LIMIT,
        }
    }
}

/// Outcome of [`verify_residuated_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerification {
    pub holds: bool,
    /// Number of domain vectors x examined.
    pub checked_domain: usize,
    /// Number of codomain vectors y examined.
    pub checked_codomain: usize,
    pub exhaustive: bool,
}

/// Checks that both maps are monotone, `g∘f ≥ id` and `f∘g ≤ id`.
pub fn verify_residuated_pair<F, G>(
    pair: &ResiduatedPair<F, G>,
    mode: VerifyMode,
) -> Result<PairVerification>
where
    F: Fn(&BoolVec) -> BoolVec,
    G: Fn(&BoolVec) -> BoolVec,
{
    let (f, g) = (&pair.forward, &pair.residual);
    match mode {
        VerifyMode::Exhaustive { limit } => {
            guard("n", pair.n, limit)?;
            guard("k", pair.k, limit)?;
            let dom = all_vectors(pair.n).all(|x| {
                let fx = f(&x);
                x.leq_unchecked(&g(&fx)) && covers_monotone(f, &x, &fx)
            });
            let cod = dom
                && all_vectors(pair.k).all(|y| {
                    let gy = g(&y);
                    f(&gy).leq_unchecked(&y) && covers_monotone(g, &y, &gy)
                });
            Ok(PairVerification {
                holds: dom && cod,
                checked_domain: 1 << pair.n,
                checked_codomain: 1 << pair.k,
                exhaustive: true,
            })
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut holds = true;
            for _ in 0..samples {
                let x = random_vec(&mut rng, pair.n);
                let above = join(&x, &random_vec(&mut rng, pair.n));
                let fx = f(&x);
                holds &= x.leq_unchecked(&g(&fx)) && fx.leq_unchecked(&f(&above));

                let y = random_vec(&mut rng, pair.k);
                let above = join(&y, &random_vec(&mut rng, pair.k));
                let gy = g(&y);
                holds &= f(&gy).leq_unchecked(&y) && gy.leq_unchecked(&g(&above));
                if !holds {
                    break;
                }
            }
            Ok(PairVerification {
                holds,
                checked_domain: samples,
                checked_codomain: samples,
                exhaustive: false,
            })
        }
    }
}

/// Monotonicity along every covering step x ⋖ x + e_i.
fn covers_monotone(map: impl Fn(&BoolVec) -> BoolVec, x: &BoolVec, fx: &BoolVec) -> bool {
    (0..x.len()).filter(|&i| !x.get(i)).all(|i| {
        let mut up = x.clone();
        up.set(i, true);
        fx.leq_unchecked(&map(&up))
    })
}

fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> BoolVec {
    let bits: Vec<bool> = (0..len).map(|_| rng.random_bool(0.5)).collect();
    BoolVec::from_bools(&bits)
}

fn join(a: &BoolVec, b: &BoolVec) -> BoolVec {
    let mut out = a.clone();
    out.or_assign(b);
    out
}
