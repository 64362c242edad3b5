//! A desk-scale laboratory for a proof of quantumness whose prover state stays encrypted.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`], [`bits`], [`params`], [`rng`]: modular arithmetic, bit strings,
//!   protocol parameters and reproducible labeled random streams.
//! * [`fourier`]: functions on `Z_m^n`, the discrete Fourier transform, and the
//!   uniformity / linearity coefficients with the uncertainty inequalities built on them;
//!   [`checks`] runs those inequalities over random and structured inputs.
//! * [`games`]: the GHZ games, parity-balanced sets and the two-player games `J_d` / `J'_d`,
//!   with exact brute-force values.
//! * [`lattice`]: discrete Gaussian sampling, gadget trapdoors, `Encrypt` / `Decrypt` /
//!   `FakeEncrypt` and LWE sample oracles.
//! * [`quantum`]: a dense statevector simulator and the honest quantum prover.
//! * [`protocol`]: referee orchestration of Games `R` / `R'`, classical prover models,
//!   the soundness experiments and the rewinding attack machinery.
//! * [`cli`]: the `hsproof` command-line front end.

pub mod algebra;
pub mod bits;
pub mod checks;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod games;
pub mod lattice;
pub mod params;
pub mod protocol;
pub mod quantum;
pub mod rng;

pub use bits::BitString;
pub use error::{Error, Result};
pub use params::{Params, Preset};

/// Exact rational numbers used for brute-force game values and linearity coefficients.
pub type Rational = num_rational::Ratio<i128>;
