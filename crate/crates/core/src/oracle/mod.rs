//! Brute-force verifiers for the analytic dephasing formulas:
//!
//! * qubit-only non-Hermitian Liouville evolution, integrated two independent
//!   ways ([`evolve_qubit_nonhermitian`]);
//! * exact single-/few-mode dephasing against Fock-truncated evolution of the
//!   diagonal-frame Hamiltonian ([`discrete_dephasing_exact`],
//!   [`discrete_dephasing_fock`]);
//! * the time-dependent Dyson density-matrix map ([`verify_dyson_density_map`]).

mod dyson;
mod fock;
mod qubit;

pub use dyson::{verify_dyson_density_map, DysonMapSample};
pub use fock::{
    discrete_dephasing_exact, discrete_dephasing_fock, discrete_dephasing_fock_series,
    discrete_gamma, discrete_omega1, discrete_omega2, BathMode, DiscreteBathSpec,
};
pub use qubit::{evolve_qubit_nonhermitian, QubitEvolution};

use crate::bath::{spectral_density, BathSpec};
use crate::error::Result;

/// Midpoint-samples `n_modes` oscillators from J(w) on [0, w_max] with
/// couplings g_k^2 = J(w_k) dw, the discrete stand-in for the continuum bath.
pub fn sample_bath_modes(b: &BathSpec, n_modes: usize, w_max: f64) -> Result<Vec<BathMode>> {
    let dw = w_max / n_modes as f64;
    (0..n_modes)
        .map(|k| {
            let w = (k as f64 + 0.5) * dw;
            Ok(BathMode {
                omega: w,
                g: (spectral_density(b, w)? * dw).sqrt(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{gamma, BathSpec};
    use crate::model::{QubitSpec, SymmetryClass};
    use crate::quad::QuadratureConfig;

    /// Continuum consistency: 200 sampled modes reproduce the continuum
    /// decoherence magnitude e^{-omega0^2 gamma(t)} to 1e-3 relative.
    ///
    /// The mu = -0.5 family has an integrable w^{mu-1} singularity that
    /// uniform sampling cannot resolve at this mode count, so the check uses
    /// the ohmic member (mu = 0) of the same family at beta = 4.
    #[test]
    fn sampled_bath_matches_continuum_magnitude() {
        let b = BathSpec::new(1.0, 0.0, 1.0, 4.0).unwrap();
        let cfg = QuadratureConfig::default();
        let modes = sample_bath_modes(&b, 200, 20.0).unwrap();
        let db = DiscreteBathSpec::new(modes, 8, b.beta()).unwrap();
        let q = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.5, 0.8, 0.6).unwrap();
        let w02 = q.omega0().powi(2);
        for k in 0..=30 {
            let t = 3.0 * k as f64 / 30.0;
            let d_disc = (-w02 * discrete_gamma(&db, t)).exp();
            let d_cont = (-w02 * gamma(&b, &cfg, t).unwrap()).exp();
            assert!(
                (d_disc - d_cont).abs() <= 1e-3 * d_cont,
                "t={t}: sampled {d_disc} vs continuum {d_cont}"
            );
        }
    }
}
