//! Fourier transforms of bounded measurable functions, computed numerically.
//!
//! For `f` in L-infinity the transform is the tempered distribution
//! `f̂ = f̂₁ − Ψ_f''`, where `f̂₁` is the ordinary transform of `f` restricted to
//! `[-1, 1]` and `Ψ_f(s) = ∫_{|t|>1} e^{-ist} f(t) dt/t²` is a Hölder continuous
//! function. This crate evaluates `Ψ_f`, `f̂₁`, the double primitive `Ω_f`,
//! pairings `⟨f̂, g⟩` against multipliers with a bounded-variation derivative,
//! summability-kernel inversion, the weak convolution identities and a table of
//! closed-form transforms built on Bessel functions.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod convolution;
pub mod error;
pub mod fncat;
pub mod inversion;
pub mod math;
pub mod pairing;
pub mod profile;
pub mod quad;
pub mod sampling;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
pub use fncat::{catalog, split, BoundedFunction, Params, SplitPair, Wave};
pub use inversion::SummabilityKernel;
pub use math::C64;
pub use pairing::{multiplier_catalog, BVMultiplier};
pub use quad::{BVDecomposition, DecayBound, QuadConfig, QuadResult};
pub use transform::DistributionalTransform;
