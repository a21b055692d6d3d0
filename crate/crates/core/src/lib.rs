//! Exact dephasing dynamics of Hermitian, PT-symmetric and
//! anti-PT-symmetric qubits coupled to a bosonic bath.
//!
//! The crate computes, from closed-form expressions backed by adaptive
//! quadrature over the bath spectral density:
//!
//! * the decoherence function D(t) and evolved reduced density matrix
//!   ([`dynamics`]);
//! * von Neumann and Renyi entropies, KL divergence and Fisher-information
//!   curves with their maxima and areas ([`info`]);
//! * spin-vector kinematics on the Bloch sphere ([`bloch`]);
//! * brute-force verifiers on truncated Fock spaces ([`oracle`]).
//!
//! All public types are immutable values and all operations are pure
//! functions, safe to call from any number of threads; the only interior
//! state is the memoizing [`bath::BathIntegralCache`], which is internally
//! synchronized.
//!
//! ```
//! use dephase::bath::{BathIntegralCache, BathSpec};
//! use dephase::dynamics::{decoherence_function, reduced_density_matrix, InitialState};
//! use dephase::{QuadratureConfig, QubitSpec, SymmetryClass};
//!
//! let bath = BathSpec::new(1.0, -0.5, 1.0, 0.5)?;
//! let cache = BathIntegralCache::new(bath, QuadratureConfig::default())?;
//! let qubit = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.5, 0.8, 0.6)?;
//!
//! let d = decoherence_function(&qubit, &cache, 1.0)?;
//! let rho = reduced_density_matrix(&qubit, &cache, &InitialState::equal_population_pure(), 1.0)?;
//! assert!((rho.rho12().norm() - d / 2.0).abs() < 1e-12);
//! # Ok::<(), dephase::Error>(())
//! ```

pub mod bath;
pub mod bloch;
pub mod dynamics;
mod error;
pub mod info;
pub mod model;
pub mod oracle;
pub mod quad;

pub use error::{Error, Result};
pub use model::{QubitSpec, SpectralInfo, SymmetryClass};
pub use quad::QuadratureConfig;
