//! Discrete-bath dephasing: closed-form mode sums and Fock-truncated
//! evolution of the diagonal-frame Hamiltonian
//!
//!   h(t) = -omega0 sigma_z (1 + V_B) + H_B + theta t V_B' - theta^2 t^2 Omega_k,
//!
//! where V_B' = sum_k omega_k (g_k a_k^dag + g_k a_k) is the drift generated
//! by the Dyson map. h is block-diagonal in the qubit basis, so the state is
//! carried as qubit-sector blocks and each block evolves unitarily.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::bath::{coth, one_minus_cos};
use crate::error::{Error, Result};
use crate::model::QubitSpec;

/// One bath oscillator: frequency and (real) coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    pub g: f64,
}

/// A finite collection of bath modes with a Fock cutoff and temperature.
///
/// The stored cutoff is a floor: the effective cutoff is raised until the
/// thermal occupancy at the top level is below 1e-8 for every mode.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBathSpec {
    modes: Vec<BathMode>,
    fock_cutoff: usize,
    beta: f64,
}

impl DiscreteBathSpec {
    pub fn new(modes: Vec<BathMode>, fock_cutoff: usize, beta: f64) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter {
                name: "modes",
                reason: "need at least one bath mode".into(),
            });
        }
        for m in &modes {
            if !m.omega.is_finite() || m.omega <= 0.0 || !m.g.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "modes",
                    reason: format!("mode (omega={}, g={}) invalid", m.omega, m.g),
                });
            }
        }
        if fock_cutoff < 8 {
            return Err(Error::InvalidParameter {
                name: "fock_cutoff",
                reason: format!("must be at least 8, got {fock_cutoff}"),
            });
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: format!("must be > 0, got {beta}"),
            });
        }
        Ok(Self {
            modes,
            fock_cutoff,
            beta,
        })
    }

    pub fn modes(&self) -> &[BathMode] {
        &self.modes
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    /// Requested cutoff, auto-raised so e^{-beta omega_k n} < 1e-8 per mode.
    pub fn effective_cutoff(&self) -> usize {
        let ln_threshold = -(1e-8_f64).ln(); // 18.42...
        let mut cutoff = self.fock_cutoff;
        for m in &self.modes {
            let needed = (ln_threshold / (self.beta * m.omega)).floor() as usize + 1;
            cutoff = cutoff.max(needed);
        }
        cutoff
    }
}

/// Discrete decoherence sum: sum_k 4 g^2 (1 - cos w t)/w^2 coth(beta w/2).
pub fn discrete_gamma(db: &DiscreteBathSpec, t: f64) -> f64 {
    db.modes
        .iter()
        .map(|m| {
            4.0 * m.g * m.g * one_minus_cos(m.omega * t) / (m.omega * m.omega)
                * coth(0.5 * db.beta * m.omega)
        })
        .sum()
}

/// Discrete Omega_1 sum: 4 theta sum_k g^2 (1 - cos w t)/w^2.
pub fn discrete_omega1(db: &DiscreteBathSpec, theta: f64, t: f64) -> f64 {
    4.0 * theta
        * db.modes
            .iter()
            .map(|m| m.g * m.g * one_minus_cos(m.omega * t) / (m.omega * m.omega))
            .sum::<f64>()
}

/// Discrete Omega_2 sum for real couplings: theta t^2 sum_k (g^2 + |g|^2).
pub fn discrete_omega2(db: &DiscreteBathSpec, theta: f64, t: f64) -> f64 {
    2.0 * theta * t * t * db.modes.iter().map(|m| m.g * m.g).sum::<f64>()
}

/// Closed-form coherence factor rho12(t)/rho12(0) for the discrete bath:
/// e^{2i omega0 t} e^{-i omega0 [Omega_2 - Omega_1]} e^{-omega0^2 gamma}.
pub fn discrete_dephasing_exact(db: &DiscreteBathSpec, q: &QubitSpec, t: f64) -> Result<C64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("need t >= 0, got {t}")));
    }
    let w0 = q.omega0();
    let th = q.theta();
    let phase = 2.0 * w0 * t - w0 * (discrete_omega2(db, th, t) - discrete_omega1(db, th, t));
    let magnitude = (-w0 * w0 * discrete_gamma(db, t)).exp();
    Ok(C64::from_polar(magnitude, phase))
}

/// Bath-space operators on the truncated Fock space, plus the scalar
/// Omega_k = sum_k omega_k g_k^2.
pub(crate) struct BathOperators {
    pub(crate) dim: usize,
    pub(crate) h_b: DMatrix<C64>,
    pub(crate) v_b: DMatrix<C64>,
    /// omega-weighted coupling operator sum_k omega_k g_k (a^dag + a)
    v_drift: DMatrix<C64>,
    omega_k: f64,
    pub(crate) thermal: DMatrix<C64>,
}

pub(crate) fn bath_operators(db: &DiscreteBathSpec, cutoff: usize) -> Result<BathOperators> {
    BathOperators::build(db, cutoff)
}

fn ladder(n_levels: usize) -> DMatrix<C64> {
    let mut a = DMatrix::zeros(n_levels, n_levels);
    for k in 1..n_levels {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    a
}

fn kron_chain(mats: &[DMatrix<C64>]) -> DMatrix<C64> {
    let mut out = mats[0].clone();
    for m in &mats[1..] {
        out = out.kronecker(m);
    }
    out
}

impl BathOperators {
    fn build(db: &DiscreteBathSpec, cutoff: usize) -> Result<Self> {
        let n_levels = cutoff + 1;
        let n_modes = db.modes.len();
        let dim = n_levels.checked_pow(n_modes as u32).ok_or_else(too_big)?;
        if 2 * dim > 4096 {
            return Err(too_big());
        }

        let eye = DMatrix::<C64>::identity(n_levels, n_levels);
        let a1 = ladder(n_levels);

        let mut h_b = DMatrix::<C64>::zeros(dim, dim);
        let mut v_b = DMatrix::<C64>::zeros(dim, dim);
        let mut v_drift = DMatrix::<C64>::zeros(dim, dim);
        let mut omega_k = 0.0;
        for (k, m) in db.modes.iter().enumerate() {
            let mut factors: Vec<DMatrix<C64>> = vec![eye.clone(); n_modes];
            factors[k] = a1.clone();
            let a = kron_chain(&factors);
            let ad = a.adjoint();
            let x = &ad + &a;
            h_b += (&ad * &a) * C64::new(m.omega, 0.0);
            v_b += &x * C64::new(m.g, 0.0);
            v_drift += &x * C64::new(m.omega * m.g, 0.0);
            omega_k += m.omega * m.g * m.g;
        }

        // H_B is diagonal in the Fock basis, so the Gibbs state is too
        let mut thermal = DMatrix::<C64>::zeros(dim, dim);
        let mut z = 0.0;
        for i in 0..dim {
            let w = (-db.beta * h_b[(i, i)].re).exp();
            thermal[(i, i)] = C64::new(w, 0.0);
            z += w;
        }
        thermal /= C64::new(z, 0.0);

        Ok(Self {
            dim,
            h_b,
            v_b,
            v_drift,
            omega_k,
            thermal,
        })
    }

    /// Qubit-sector block Hamiltonians at time t: s = +1 picks the |0>
    /// (sigma_z = +1) sector.
    fn block_hamiltonian(&self, w0: f64, theta: f64, t: f64, s: f64) -> DMatrix<C64> {
        let eye = DMatrix::<C64>::identity(self.dim, self.dim);
        let scalar = -theta * theta * t * t * self.omega_k - s * w0;
        &self.h_b
            + &self.v_b * C64::new(-s * w0, 0.0)
            + &self.v_drift * C64::new(theta * t, 0.0)
            + eye * C64::new(scalar, 0.0)
    }
}

fn too_big() -> Error {
    Error::InvalidParameter {
        name: "fock_cutoff",
        reason: "total Hilbert dimension 2 (cutoff+1)^modes exceeds 4096".into(),
    }
}

/// Qubit-sector blocks of the total state; b10 is the adjoint of b01.
struct Blocks {
    b00: DMatrix<C64>,
    b01: DMatrix<C64>,
    b11: DMatrix<C64>,
}

impl Blocks {
    fn initial(thermal: &DMatrix<C64>) -> Self {
        // equal-population pure qubit state rho_S = [[1/2, 1/2], [1/2, 1/2]]
        let half = thermal * C64::new(0.5, 0.0);
        Self {
            b00: half.clone(),
            b01: half.clone(),
            b11: half,
        }
    }

    fn coherence_factor(&self) -> C64 {
        self.b01.trace() / C64::new(0.5, 0.0)
    }
}

/// Midpoint piecewise-constant propagation of the blocks from t to t + dt.
fn step(blocks: &mut Blocks, ops: &BathOperators, q: &QubitSpec, t_mid: f64, dt: f64) {
    let w0 = q.omega0();
    let th = q.theta();
    let h_plus = ops.block_hamiltonian(w0, th, t_mid, 1.0);
    let h_minus = ops.block_hamiltonian(w0, th, t_mid, -1.0);
    let u_plus = (h_plus * C64::new(0.0, -dt)).exp();
    let u_minus = (h_minus * C64::new(0.0, -dt)).exp();
    blocks.b00 = &u_plus * &blocks.b00 * u_plus.adjoint();
    blocks.b01 = &u_plus * &blocks.b01 * u_minus.adjoint();
    blocks.b11 = &u_minus * &blocks.b11 * u_minus.adjoint();
}

fn evolve_coherence(
    db: &DiscreteBathSpec,
    q: &QubitSpec,
    ts: &[f64],
    cutoff: usize,
    min_steps: usize,
) -> Result<Vec<C64>> {
    let ops = BathOperators::build(db, cutoff)?;
    let mut blocks = Blocks::initial(&ops.thermal);
    let t_final = *ts.last().expect("nonempty checkpoint list");
    let mut out = Vec::with_capacity(ts.len());
    let mut t_now = 0.0;
    for &t_target in ts {
        if t_target < t_now {
            return Err(Error::Domain(
                "checkpoint times must be nondecreasing".into(),
            ));
        }
        let span = t_target - t_now;
        if span > 0.0 {
            let n = if t_final > 0.0 {
                ((min_steps as f64) * span / t_final).ceil() as usize
            } else {
                1
            }
            .max(1);
            let dt = span / n as f64;
            for k in 0..n {
                step(&mut blocks, &ops, q, t_now + (k as f64 + 0.5) * dt, dt);
            }
            t_now = t_target;
        }
        out.push(blocks.coherence_factor());
    }
    Ok(out)
}

/// Fock-truncated coherence factor at the checkpoint times (nondecreasing,
/// each >= 0), evolved with piecewise-constant midpoint steps, at least
/// `2000 * t / t_max` per segment. The whole series is recomputed with the
/// cutoff raised by 4; a shift above 1e-6 anywhere is a truncation failure.
pub fn discrete_dephasing_fock_series(
    db: &DiscreteBathSpec,
    q: &QubitSpec,
    ts: &[f64],
) -> Result<Vec<C64>> {
    if ts.is_empty() {
        return Ok(Vec::new());
    }
    if ts.iter().any(|&t| t < 0.0 || !t.is_finite()) {
        return Err(Error::Domain("checkpoint times must be >= 0".into()));
    }
    let cutoff = db.effective_cutoff();
    let base = evolve_coherence(db, q, ts, cutoff, 2000)?;
    let refined = evolve_coherence(db, q, ts, cutoff + 4, 2000)?;
    let delta = base
        .iter()
        .zip(&refined)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if delta > 1e-6 {
        return Err(Error::TruncationError { delta });
    }
    Ok(base)
}

/// Single-time Fock-truncated coherence factor; see
/// [`discrete_dephasing_fock_series`].
pub fn discrete_dephasing_fock(db: &DiscreteBathSpec, q: &QubitSpec, t: f64) -> Result<C64> {
    Ok(discrete_dephasing_fock_series(db, q, &[t])?[0])
}
