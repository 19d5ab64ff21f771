//! Exact computations on the enriched chain polytope of a finite poset.
//!
//! For a poset `P` on `1..=n` the enriched chain polytope is the convex hull
//! of every signed indicator vector `±e_{i_1} ± ... ± e_{i_k}` of an
//! antichain `{i_1, ..., i_k}`. This crate enumerates its lattice points,
//! Ehrhart and h*-polynomials, the left enriched partitions counting them,
//! peak statistics of linear extensions, a quadratic Gröbner basis of its
//! toric ideal with the induced unimodular triangulation, and a flag complex
//! of decorated permutations whose f-polynomial is the γ-polynomial of h*.
//! All arithmetic is exact.
//!
//! ```
//! use enriched_chain::{geometry, Guards, Poset};
//!
//! let v = Poset::from_covers(3, &[(1, 3), (2, 3)])?;
//! let data = geometry::hstar_and_gamma(&v, &Guards::default())?;
//! assert_eq!(data.hstar.to_string(), "1 + 7x + 7x^2 + x^3");
//! assert_eq!(data.gamma_i64(), vec![1, 4]);
//! # Ok::<(), enriched_chain::Error>(())
//! ```

pub mod error;
pub mod gamma_complex;
pub mod geometry;
pub mod lp;
pub mod partitions;
pub mod polynomials;
pub mod poset;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use polynomials::{IntPolynomial, RatPolynomial};
pub use poset::{Antichain, Poset};

/// Size limits applied before any exponential enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest poset handled by the Ehrhart machinery.
    pub max_n: usize,
    /// Largest point box `(m+1)^n` (or `(2m+1)^n`) a count may scan.
    pub max_points: u128,
    /// Largest number of S-pairs a Buchberger run may reduce.
    pub max_spairs: u128,
    /// Largest poset whose linear extensions are listed.
    pub max_extensions_n: usize,
    /// Largest poset whose decorated-permutation complex is built.
    pub max_complex_n: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_n: 8,
            max_points: 100_000_000,
            max_spairs: 20_000_000,
            max_extensions_n: 10,
            max_complex_n: 6,
        }
    }
}

impl Guards {
    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::SizeLimit {
                what: "poset size",
                requested: n as u128,
                limit: self.max_n as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_points(&self, base: u128, n: usize) -> Result<()> {
        let requested = base.checked_pow(n as u32).unwrap_or(u128::MAX);
        if requested > self.max_points {
            return Err(Error::SizeLimit {
                what: "lattice point box",
                requested,
                limit: self.max_points,
            });
        }
        Ok(())
    }
}
