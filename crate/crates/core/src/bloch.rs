//! Spin-vector trajectory and kinematics on the Bloch sphere: phase phi(t),
//! angular velocity dphi/dt, distance from the z-axis and linear velocity.
//!
//! Sign convention: the trajectory is viewed from +z; clockwise motion means
//! decreasing phi, so the clockwise-positive angular velocity is
//! -dphi/dt / (2 omega0), normalized to +1 at t = 0.

use crate::bath::BathIntegralCache;
use crate::dynamics::{decoherence_function, DensityMatrix2};
use crate::error::{Error, Result};
use crate::model::{QubitSpec, SymmetryClass};

/// Initial polar angle from the S_z axis and initial azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryParams {
    theta0: f64,
    phi0: f64,
}

impl TrajectoryParams {
    pub fn new(theta0: f64, phi0: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta0) {
            return Err(Error::InvalidParameter {
                name: "theta0",
                reason: format!("must lie in [0, pi], got {theta0}"),
            });
        }
        if !phi0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi0",
                reason: format!("must be finite, got {phi0}"),
            });
        }
        Ok(Self { theta0, phi0 })
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }
    pub fn phi0(&self) -> f64 {
        self.phi0
    }
}

/// One sample of the spin vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub t: f64,
}

impl BlochState {
    /// Reconstruction from a density matrix in the spin-vector convention.
    pub fn from_density_matrix(rho: &DensityMatrix2, t: f64) -> Self {
        let [sx, sy, sz] = rho.bloch_vector();
        Self { sx, sy, sz, t }
    }

    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }
}

/// phi(t) = phi0 - 2 omega0 t + omega0 Omega~(t).
pub fn phase(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    tp: &TrajectoryParams,
    t: f64,
) -> Result<f64> {
    let w0 = q.omega0();
    Ok(tp.phi0() - 2.0 * w0 * t + crate::dynamics::phase_function(q, bath, t)?)
}

/// S(t) = (sin(theta0) cos(phi) D, sin(theta0) sin(phi) D, cos(theta0)).
pub fn spin_vector(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    tp: &TrajectoryParams,
    t: f64,
) -> Result<BlochState> {
    let d = decoherence_function(q, bath, t)?;
    let phi = phase(q, bath, tp, t)?;
    let s0 = tp.theta0().sin();
    Ok(BlochState {
        sx: s0 * phi.cos() * d,
        sy: s0 * phi.sin() * d,
        sz: tp.theta0().cos(),
        t,
    })
}

/// dphi/dt = -2 omega0 + omega0 dOmega~/dt, with the analytic t-derivatives
/// of the bath integrals (the finite-difference route stays in the tests).
pub fn angular_velocity(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    let w0 = q.omega0();
    let th = q.theta();
    let d_omega_tilde = match q.class() {
        SymmetryClass::Hermitian => bath.domega_dt(th, t)?,
        SymmetryClass::PtSymmetric => -bath.domega_dt(th, t)?,
        SymmetryClass::AntiPtSymmetric => bath.domega2_dt(th, t) - bath.domega1_dt(th, t)?,
    };
    Ok(w0 * (-2.0 + d_omega_tilde))
}

/// -dphi/dt / (2 omega0): +1 at t = 0, negative once the trajectory evolves
/// anticlockwise.
pub fn angular_velocity_clockwise(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    Ok(-angular_velocity(q, bath, t)? / (2.0 * q.omega0()))
}

/// d(t) = sin(theta0) e^{-omega0^2 gamma(t)}.
pub fn axis_distance(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    tp: &TrajectoryParams,
    t: f64,
) -> Result<f64> {
    Ok(tp.theta0().sin() * decoherence_function(q, bath, t)?)
}

/// V_L(t) = d(t) dphi/dt.
pub fn linear_velocity(
    q: &QubitSpec,
    bath: &BathIntegralCache,
    tp: &TrajectoryParams,
    t: f64,
) -> Result<f64> {
    Ok(axis_distance(q, bath, tp, t)? * angular_velocity(q, bath, t)?)
}
