//! Check of the time-dependent Dyson density-matrix map: evolve the total
//! state under the non-Hermitian diagonal-frame Hamiltonian H^D, push it
//! through eta = e^{-theta t} e^{-theta t V_B}, and compare the reduced qubit
//! matrix against direct evolution under the Hermitian h^D.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;

use super::fock::{discrete_dephasing_fock_series, DiscreteBathSpec};
use crate::error::{Error, Result};
use crate::model::QubitSpec;

const MAX_CONDITION: f64 = 1e12;

/// eta on the truncated bath space at one (theta, t), with its condition
/// number (the map is Hermitian positive definite, so the condition number is
/// the eigenvalue spread of -theta t V_B exponentiated).
#[derive(Debug, Clone)]
pub struct DysonMapSample {
    pub theta: f64,
    pub t: f64,
    pub condition_number: f64,
    eta_bath: DMatrix<C64>,
}

impl DysonMapSample {
    pub fn build(v_b: &DMatrix<C64>, theta: f64, t: f64) -> Result<Self> {
        let eig = v_b.clone().symmetric_eigen();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &l in eig.eigenvalues.iter() {
            lo = lo.min(l);
            hi = hi.max(l);
        }
        let condition_number = ((theta * t).abs() * (hi - lo)).exp();
        if !condition_number.is_finite() || condition_number > MAX_CONDITION {
            return Err(Error::ConditioningFailure {
                cond: condition_number,
            });
        }
        let scale = C64::new((-theta * t).exp(), 0.0);
        let eta_bath = (v_b * C64::new(-theta * t, 0.0)).exp() * scale;
        Ok(Self {
            theta,
            t,
            condition_number,
            eta_bath,
        })
    }

    pub fn eta(&self) -> &DMatrix<C64> {
        &self.eta_bath
    }
}

/// Largest entrywise discrepancy between the reduced qubit matrices of the
/// Dyson-mapped H^D evolution and the direct h^D evolution at time `t`.
pub fn verify_dyson_density_map(db: &DiscreteBathSpec, q: &QubitSpec, t: f64) -> Result<f64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("need t >= 0, got {t}")));
    }
    let w0 = q.omega0();
    let theta = q.theta();

    // rebuild the bath operators the same way the Fock evolution does
    let cutoff = db.effective_cutoff();
    let ops = super::fock::bath_operators(db, cutoff)?;
    let dim = ops.dim;

    // route 1: Hermitian h^D evolution, reduced
    let direct = reduce(&fock_blocks_at(db, q, t)?);

    // route 2: rho^D(t) = e^{-i H^D t} rho(0) e^{+i H^D^dag t}, normalized,
    // mapped through eta, normalized, reduced. H^D is block-diagonal with
    // K_s = (-s w0 + i theta)(1 + V_B) + H_B.
    let eye = DMatrix::<C64>::identity(dim, dim);
    let k_block =
        |s: f64| -> DMatrix<C64> { (&eye + &ops.v_b) * C64::new(-s * w0, theta) + &ops.h_b };
    let u_plus = (k_block(1.0) * C64::new(0.0, -t)).exp();
    let u_minus = (k_block(-1.0) * C64::new(0.0, -t)).exp();

    let half = C64::new(0.5, 0.0);
    let b00 = &u_plus * (&ops.thermal * half) * u_plus.adjoint();
    let b01 = &u_plus * (&ops.thermal * half) * u_minus.adjoint();
    let b11 = &u_minus * (&ops.thermal * half) * u_minus.adjoint();
    let trace = (b00.trace() + b11.trace()).re;
    if trace.abs() < 1e-300 {
        return Err(Error::NormalizationCollapse { trace });
    }
    let norm = C64::new(1.0 / trace, 0.0);

    let eta = DysonMapSample::build(&ops.v_b, theta, t)?;
    let e = eta.eta();
    // eta is Hermitian, so eta rho eta^dag = eta rho eta blockwise
    let m00 = e * (&b00 * norm) * e;
    let m01 = e * (&b01 * norm) * e;
    let m11 = e * (&b11 * norm) * e;
    let mapped_trace = (m00.trace() + m11.trace()).re;
    if mapped_trace.abs() < 1e-300 {
        return Err(Error::NormalizationCollapse {
            trace: mapped_trace,
        });
    }
    let mapped = Matrix2::new(
        m00.trace() / mapped_trace,
        m01.trace() / mapped_trace,
        m01.trace().conj() / mapped_trace,
        m11.trace() / mapped_trace,
    );

    let diff = direct - mapped;
    Ok(diff.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Direct h^D evolution reduced to the qubit, as a 2x2 matrix.
fn fock_blocks_at(db: &DiscreteBathSpec, q: &QubitSpec, t: f64) -> Result<(C64, C64)> {
    let series = discrete_dephasing_fock_series(db, q, &[t])?;
    // populations stay at 1/2 exactly under the sector-unitary evolution
    Ok((series[0] * C64::new(0.5, 0.0), C64::new(0.5, 0.0)))
}

fn reduce((coherence, population): &(C64, C64)) -> Matrix2<C64> {
    Matrix2::new(*population, *coherence, coherence.conj(), *population)
}
