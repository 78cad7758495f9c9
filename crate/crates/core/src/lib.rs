//! Non-adaptive group testing over the Boolean semifield.
//!
//! A testing matrix `H` assigns each of `n` samples to some of `k` pooled
//! tests; the test outcomes are the syndrome `y = xH`, computed with OR as
//! addition and AND as multiplication. The map `x ↦ xH` has a residual
//! `g(y) = ¬(¬y Hᵀ)`, and `g` is an exact decoder for every pattern of at
//! most `d` positives precisely when `H` is `d`-disjunct.
//!
//! * [`boolsemi`]: vectors, matrices, order, Hamming metrics, balls.
//! * [`residuation`]: testing schemes, the residual decoder, closure/kernel.
//! * [`conditions`]: disjunctness and the equivalent reversibility checks.
//! * [`geometry`]: partial linear spaces, grids and symplectic quadrangles.
//! * [`simulation`]: seeded Monte-Carlo campaigns.
//! * [`io`]: text formats for matrices, vectors, geometries and schemes.
//!
//! ```
//! use resgt::geometry::construct_symplectic;
//! use resgt::boolsemi::BoolVec;
//!
//! let scheme = construct_symplectic(2)?.to_testing_scheme(1)?;
//! assert_eq!((scheme.n(), scheme.k(), scheme.certified_d()), (15, 15, Some(2)));
//!
//! let x = BoolVec::from_support(15, [4, 11]);
//! let y = scheme.encode(&x)?;
//! assert_eq!(scheme.decode(&y)?, x);
//! # Ok::<(), resgt::Error>(())
//! ```

pub mod boolsemi;
pub mod combinatorics;
pub mod conditions;
mod error;
pub mod geometry;
pub mod io;
pub mod residuation;
pub mod simulation;

pub use error::{Error, Result};

/// Runs `op` on a pool of `workers` threads (0 = one per core).
pub(crate) fn with_pool<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/boolean-semifield.md")]
    struct BooleanSemifield;
    #[doc = include_str!("../../../book/src/residuation.md")]
    struct Residuation;
    #[doc = include_str!("../../../book/src/disjunctness.md")]
    struct Disjunctness;
    #[doc = include_str!("../../../book/src/geometry.md")]
    struct Geometry;
    #[doc = include_str!("../../../book/src/simulation.md")]
    struct Simulation;
    #[doc = include_str!("../../../book/src/formats.md")]
    struct Formats;
}
