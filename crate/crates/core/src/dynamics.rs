//! Evolved reduced density matrix and decoherence function for the three
//! symmetry classes.
//!
//! Populations are constant under pure dephasing; the coherence picks up the
//! Larmor factor e^{2i omega0 t}, the class-dependent bath phase
//! e^{-i omega0 Omega~(t)} and the decoherence envelope D(t) = e^{-omega0^2 gamma(t)}.

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::bath::BathIntegralCache;
use crate::error::{Error, Result};
use crate::model::{QubitSpec, SymmetryClass};

const HERMITICITY_TOL: f64 = 1e-14;
const TRACE_TOL: f64 = 1e-14;
const PSD_TOL: f64 = -1e-14;

/// A 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    m: Matrix2<C64>,
}

impl DensityMatrix2 {
    /// Validates Hermiticity, unit trace and positivity of the entries.
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        let herm = (m[(0, 1)] - m[(1, 0)].conj()).norm();
        if herm > HERMITICITY_TOL
            || m[(0, 0)].im.abs() > HERMITICITY_TOL
            || m[(1, 1)].im.abs() > HERMITICITY_TOL
        {
            return Err(Error::Domain(format!(
                "density matrix is not Hermitian (defect {herm:.3e})"
            )));
        }
        let trace = m[(0, 0)].re + m[(1, 1)].re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Domain(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        let s = Self { m };
        if s.det() < PSD_TOL {
            return Err(Error::Domain(format!(
                "density matrix is not positive semidefinite (det {:.3e})",
                s.det()
            )));
        }
        Ok(s)
    }

    /// Builds rho from populations' imbalance and the coherence rho12.
    pub fn from_bloch(sz: f64, rho12: C64) -> Result<Self> {
        Self::new(Matrix2::new(
            C64::new(0.5 * (1.0 + sz), 0.0),
            rho12,
            rho12.conj(),
            C64::new(0.5 * (1.0 - sz), 0.0),
        ))
    }

    pub fn rho11(&self) -> f64 {
        self.m[(0, 0)].re
    }
    pub fn rho12(&self) -> C64 {
        self.m[(0, 1)]
    }
    pub fn rho21(&self) -> C64 {
        self.m[(1, 0)]
    }
    pub fn rho22(&self) -> f64 {
        self.m[(1, 1)].re
    }
    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.rho11() + self.rho22()
    }

    pub fn det(&self) -> f64 {
        self.rho11() * self.rho22() - self.rho12().norm_sqr()
    }

    pub fn purity(&self) -> f64 {
        let d = self.det();
        1.0 - 2.0 * d
    }

    /// Bloch components in the spin-vector convention
    /// (sx, sy, sz) = (2 Re rho12, -2 Im rho12, rho11 - rho22).
    pub fn bloch_vector(&self) -> [f64; 3] {
        [
            2.0 * self.rho12().re,
            -2.0 * self.rho12().im,
            self.rho11() - self.rho22(),
        ]
    }

    /// |v(t)| of the Bloch vector.
    pub fn bloch_length(&self) -> f64 {
        let [x, y, z] = self.bloch_vector();
        (x * x + y * y + z * z).sqrt()
    }
}

/// Initial reduced state in the diagonal frame: <sigma_z> and the ladder
/// expectation <sigma_-> = rho12(0) (with <sigma_+> its conjugate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    sz: f64,
    s_minus: C64,
}

impl InitialState {
    pub fn new(sz: f64, s_minus: C64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&sz) {
            return Err(Error::InvalidParameter {
                name: "sz",
                reason: format!("must lie in [-1, 1], got {sz}"),
            });
        }
        let len2 = sz * sz + 4.0 * s_minus.norm_sqr();
        if len2 > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter {
                name: "s_minus",
                reason: format!("Bloch-vector length {} exceeds 1", len2.sqrt()),
            });
        }
        Ok(Self { sz, s_minus })
    }

    /// The pure state with equal populations and real coherence 1/2; the one
    /// initial state for which v(t) = D(t).
    pub fn equal_population_pure() -> Self {
        Self {
            sz: 0.0,
            s_minus: C64::new(0.5, 0.0),
        }
    }

    pub fn sz(&self) -> f64 {
        self.sz
    }
    pub fn s_minus(&self) -> C64 {
        self.s_minus
    }
    pub fn s_plus(&self) -> C64 {
        self.s_minus.conj()
    }

    pub fn is_pure(&self) -> bool {
        (self.sz * self.sz + 4.0 * self.s_minus.norm_sqr() - 1.0).abs() < 1e-12
    }

    pub fn density_matrix(&self) -> DensityMatrix2 {
        DensityMatrix2::from_bloch(self.sz, self.s_minus)
            .expect("validated initial state is a density matrix")
    }
}

/// Decoherence envelope and accumulated bath phase at one instant.
#[derive(Debug, Clone, Copy)]
pub struct DephasingFactors {
    /// D(t) = e^{-omega0^2 gamma(t)}, in (0, 1].
    pub decoherence: f64,
    /// omega0 * Omega~(t), the class-dependent bath contribution to the phase.
    pub phase: f64,
}

/// D(t) = e^{-omega0(q)^2 gamma(t)}; the class enters only through omega0.
pub fn decoherence_function(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    let w0 = q.omega0();
    Ok((-w0 * w0 * bath.gamma(t)?).exp())
}

/// omega0 * Omega~(t) with Omega~ = Omega (Hermitian), -Omega (PT),
/// Omega_2 - Omega_1 (anti-PT).
pub fn phase_function(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    let w0 = q.omega0();
    let th = q.theta();
    let omega_tilde = match q.class() {
        SymmetryClass::Hermitian => bath.omega_phase_hermitian(th, t)?,
        SymmetryClass::PtSymmetric => -bath.omega_phase_hermitian(th, t)?,
        SymmetryClass::AntiPtSymmetric => bath.omega2(th, t) - bath.omega1(th, t)?,
    };
    Ok(w0 * omega_tilde)
}

pub fn dephasing_factors(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    t: f64,
) -> Result<DephasingFactors> {
    Ok(DephasingFactors {
        decoherence: decoherence_function(q, bath, t)?,
        phase: phase_function(q, bath, t)?,
    })
}

/// The evolved reduced density matrix in the diagonal frame:
/// rho12(t) = rho12(0) e^{2i omega0 t} e^{-i omega0 Omega~(t)} D(t), with
/// populations frozen at their initial values.
pub fn reduced_density_matrix(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    init: &InitialState,
    t: f64,
) -> Result<DensityMatrix2> {
    let factors = dephasing_factors(q, bath, t)?;
    let total_phase = 2.0 * q.omega0() * t - factors.phase;
    let rho12 = init.s_minus() * C64::from_polar(factors.decoherence, total_phase);
    DensityMatrix2::from_bloch(init.sz(), rho12)
}

/// Uniform time grid 0..=t_max with `steps` panels (steps+1 samples).
pub fn time_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let n = steps.max(1);
    (0..=n).map(|k| t_max * k as f64 / n as f64).collect()
}
