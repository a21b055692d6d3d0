//! Continuum bath integrals: spectral density J(w), decoherence integral
//! gamma(t), its beta-derivative, the phase integrals Omega(t), Omega_1(t),
//! Omega_2(t) and their time derivatives.
//!
//! All integrands share the structure `J0 w^{1+mu} e^{-w/w_c} K(w)`. The
//! kernel K is finite everywhere but the product can behave like w^mu at the
//! origin, so every integral is split into an analytic small-w moment patch
//! on [0, w_s] and adaptive Gauss-Kronrod refinement on [w_s, w_max], with
//! panel seeds at the kernel oscillation zeros once w_max * t gets large.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use statrs::function::gamma::gamma as gamma_fn;

use crate::error::{ensure_finite, Error, Result};
use crate::quad::{integrate, QuadratureConfig};

/// Bath family J(w) = J0 w^{1+mu} e^{-w/w_c} at inverse temperature beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    j0: f64,
    mu: f64,
    wc: f64,
    beta: f64,
}

impl BathSpec {
    pub fn new(j0: f64, mu: f64, wc: f64, beta: f64) -> Result<Self> {
        ensure_finite("j0", j0)?;
        ensure_finite("mu", mu)?;
        ensure_finite("wc", wc)?;
        ensure_finite("beta", beta)?;
        if j0 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "j0",
                reason: format!("must be > 0, got {j0}"),
            });
        }
        // mu > -1 keeps every bath integral convergent at w -> 0
        if mu <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "mu",
                reason: format!("must be > -1, got {mu}"),
            });
        }
        if wc <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "wc",
                reason: format!("must be > 0, got {wc}"),
            });
        }
        if beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: format!("must be > 0, got {beta}"),
            });
        }
        Ok(Self { j0, mu, wc, beta })
    }

    pub fn j0(&self) -> f64 {
        self.j0
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn wc(&self) -> f64 {
        self.wc
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Same bath at a different inverse temperature (finite-difference probes).
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.j0, self.mu, self.wc, beta)
    }
}

/// J(w) = J0 w^{1+mu} e^{-w/w_c}; zero at w = 0 for mu > -1.
pub fn spectral_density(b: &BathSpec, w: f64) -> Result<f64> {
    if w < 0.0 || !w.is_finite() {
        return Err(Error::Domain(format!(
            "spectral density needs w >= 0, got {w}"
        )));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    Ok(b.j0 * w.powf(1.0 + b.mu) * (-w / b.wc).exp())
}

/// 1 - cos(x) without cancellation.
#[inline]
pub(crate) fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

/// coth(x) for x > 0, stable at both ends.
#[inline]
pub(crate) fn coth(x: f64) -> f64 {
    1.0 + 2.0 / (2.0 * x).exp_m1()
}

/// coth(x) - 1 = 2 / expm1(2x); underflows cleanly to 0 for large x.
#[inline]
pub(crate) fn coth_minus_one(x: f64) -> f64 {
    2.0 / (2.0 * x).exp_m1()
}

/// csch^2(x) for x > 0.
#[inline]
pub(crate) fn csch2(x: f64) -> f64 {
    if x > 0.5 {
        let e = (-2.0 * x).exp();
        4.0 * e / ((1.0 - e) * (1.0 - e))
    } else {
        // expm1(x) - expm1(-x) = 2 sinh(x), exact for small x
        let s = x.exp_m1() - (-x).exp_m1();
        4.0 / (s * s)
    }
}

/// x - sin(x) without cancellation.
#[inline]
fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < 0.5 {
        let x2 = x * x;
        // x^3/3! - x^5/5! + x^7/7! - x^9/9! + x^11/11!
        x * x2
            * (1.0 / 6.0
                + x2 * (-1.0 / 120.0
                    + x2 * (1.0 / 5040.0 + x2 * (-1.0 / 362_880.0 + x2 / 39_916_800.0))))
    } else {
        x - x.sin()
    }
}

/// The five quadrature-backed integral kinds (Omega_2 has a closed form).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    /// gamma(t) = 4 int J (1-cos wt)/w^2 coth(beta w/2) dw
    Gamma,
    /// d gamma / d beta = -2 int J (1-cos wt)/w csch^2(beta w/2) dw
    DGammaDBeta,
    /// Omega(t)/(4 theta) = int J (wt - sin wt)/w^2 dw
    OmegaPhase,
    /// Omega_1(t)/(4 theta) = int J (1-cos wt)/w^2 dw
    Omega1,
    /// dOmega/dt/(4 theta) = int J (1-cos wt)/w dw
    DOmegaDt,
    /// dOmega_1/dt/(4 theta) = int J sin(wt)/w dw
    DOmega1Dt,
    /// int J dw (cross-check of the closed Gamma-function form)
    SpectralMoment,
}

impl Kind {
    /// Kernel K(w) such that the integrand is J(w) * K(w), for w > 0.
    fn kernel(self, b: &BathSpec, t: f64, w: f64) -> f64 {
        match self {
            Kind::Gamma => 4.0 * one_minus_cos(w * t) / (w * w) * coth(0.5 * b.beta * w),
            Kind::DGammaDBeta => -2.0 * one_minus_cos(w * t) / w * csch2(0.5 * b.beta * w),
            Kind::OmegaPhase => 4.0 * x_minus_sin(w * t) / (w * w),
            Kind::Omega1 => 4.0 * one_minus_cos(w * t) / (w * w),
            Kind::DOmegaDt => 4.0 * one_minus_cos(w * t) / w,
            Kind::DOmega1Dt => 4.0 * (w * t).sin() / w,
            Kind::SpectralMoment => 1.0,
        }
    }

    /// Leading terms of K(w) around w = 0 as (power, coefficient) pairs.
    fn small_w_series(self, b: &BathSpec, t: f64) -> Vec<(i32, f64)> {
        let beta = b.beta;
        let t2 = t * t;
        let t4 = t2 * t2;
        let t6 = t4 * t2;
        match self {
            Kind::Gamma => vec![
                (-1, 4.0 * t2 / beta),
                (1, 4.0 * (t2 * beta / 12.0 - t4 / (12.0 * beta))),
                (
                    3,
                    4.0 * (-t2 * beta.powi(3) / 720.0 - t4 * beta / 144.0 + t6 / (360.0 * beta)),
                ),
            ],
            Kind::DGammaDBeta => vec![
                (-1, -4.0 * t2 / (beta * beta)),
                (1, t2 / 3.0 + t4 / (3.0 * beta * beta)),
                (
                    3,
                    -(t2 * beta * beta / 60.0 + t4 / 36.0 + t6 / (90.0 * beta * beta)),
                ),
            ],
            Kind::OmegaPhase => vec![
                (1, 4.0 * t * t2 / 6.0),
                (3, -4.0 * t4 * t / 120.0),
                (5, 4.0 * t6 * t / 5040.0),
            ],
            Kind::Omega1 => vec![(0, 2.0 * t2), (2, -4.0 * t4 / 24.0), (4, 4.0 * t6 / 720.0)],
            Kind::DOmegaDt => vec![(1, 2.0 * t2), (3, -4.0 * t4 / 24.0), (5, 4.0 * t6 / 720.0)],
            Kind::DOmega1Dt => vec![
                (0, 4.0 * t),
                (2, -4.0 * t * t2 / 6.0),
                (4, 4.0 * t * t4 / 120.0),
            ],
            Kind::SpectralMoment => vec![(0, 1.0)],
        }
    }
}

/// Analytic integral of J(w) K(w) over [0, w_s] from the kernel series and a
/// four-term expansion of e^{-w/w_c}, via moments of w^{1+mu+q+n}.
fn small_w_patch(b: &BathSpec, ws: f64, series: &[(i32, f64)]) -> f64 {
    let mut total = 0.0;
    for &(q, c) in series {
        let mut fact = 1.0;
        for n in 0..4 {
            let coeff = c * fact;
            let p = 1.0 + b.mu + q as f64 + n as f64;
            total += coeff * ws.powf(p + 1.0) / (p + 1.0);
            fact *= -1.0 / (b.wc * (n + 1) as f64);
        }
    }
    b.j0 * total
}

/// Small-w/adaptive split point; shrinks with t and beta so the series patch
/// stays inside its convergence region.
fn split_point(b: &BathSpec, t: f64) -> f64 {
    let ws = 1e-3_f64.min(0.01 / t.max(1.0)).min(0.01 / b.beta);
    ws.min(0.5 * b.wc)
}

fn eval_integral(b: &BathSpec, cfg: &QuadratureConfig, kind: Kind, t: f64) -> Result<f64> {
    let w_max = cfg.w_max_factor * b.wc;
    let ws = split_point(b, t);
    let patch = small_w_patch(b, ws, &kind.small_w_series(b, t));

    // adaptive panels stall on many-oscillation intervals; seed at cos zeros
    let mut breakpoints = Vec::new();
    if t * w_max > 50.0 {
        let spacing = PI / t;
        let mut k = (ws / spacing - 0.5).ceil().max(0.0);
        loop {
            let w = (k + 0.5) * spacing;
            if w >= w_max {
                break;
            }
            if w > ws {
                breakpoints.push(w);
            }
            k += 1.0;
            if breakpoints.len() > cfg.max_subdivisions {
                break;
            }
        }
    }

    let f = |w: f64| b.j0 * w.powf(1.0 + b.mu) * (-w / b.wc).exp() * kind.kernel(b, t, w);
    let tail = integrate(f, ws, w_max, &breakpoints, cfg)?;
    let result = patch + tail;

    // Richardson-style check of the upper truncation in debug builds
    #[cfg(debug_assertions)]
    {
        if cfg.w_max_factor == QuadratureConfig::default().w_max_factor {
            let further = integrate(f, w_max, 1.5 * w_max, &[], cfg).unwrap_or(0.0);
            debug_assert!(
                further.abs() <= 1e-9 * result.abs() + 1e-12,
                "w_max truncation too aggressive: tail {further:.3e} vs {result:.3e}"
            );
        }
    }

    Ok(result)
}

/// gamma(t): the decoherence integral. gamma(0) = 0.
pub fn gamma(b: &BathSpec, cfg: &QuadratureConfig, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    eval_integral(b, cfg, Kind::Gamma, t)
}

/// Analytic beta-derivative of gamma(t); always <= 0.
pub fn dgamma_dbeta(b: &BathSpec, cfg: &QuadratureConfig, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    eval_integral(b, cfg, Kind::DGammaDBeta, t)
}

/// Omega(t) = 4 theta int J (wt - sin wt)/w^2 dw, the Hermitian-class phase
/// integral. PT-symmetric callers negate it.
pub fn omega_phase_hermitian(
    b: &BathSpec,
    cfg: &QuadratureConfig,
    theta: f64,
    t: f64,
) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || theta == 0.0 {
        return Ok(0.0);
    }
    Ok(theta * eval_integral(b, cfg, Kind::OmegaPhase, t)?)
}

/// Omega_1(t) = 4 theta int J (1 - cos wt)/w^2 dw.
pub fn omega1(b: &BathSpec, cfg: &QuadratureConfig, theta: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || theta == 0.0 {
        return Ok(0.0);
    }
    Ok(theta * eval_integral(b, cfg, Kind::Omega1, t)?)
}

/// Omega_2(t) = 2 theta t^2 int J dw = 2 theta t^2 J0 Gamma(2+mu) w_c^{2+mu},
/// the J~ = J (real couplings) case.
pub fn omega2(b: &BathSpec, theta: f64, t: f64) -> f64 {
    2.0 * theta * t * t * spectral_moment_closed(b)
}

/// int_0^inf J(w) dw in closed form.
pub fn spectral_moment_closed(b: &BathSpec) -> f64 {
    b.j0 * gamma_fn(2.0 + b.mu) * b.wc.powf(2.0 + b.mu)
}

/// int_0^inf J(w) dw by quadrature; must agree with the closed form.
pub fn spectral_moment_quadrature(b: &BathSpec, cfg: &QuadratureConfig) -> Result<f64> {
    eval_integral(b, cfg, Kind::SpectralMoment, 1.0)
}

/// dOmega/dt = 4 theta int J (1 - cos wt)/w dw.
pub fn domega_dt(b: &BathSpec, cfg: &QuadratureConfig, theta: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || theta == 0.0 {
        return Ok(0.0);
    }
    Ok(theta * eval_integral(b, cfg, Kind::DOmegaDt, t)?)
}

/// dOmega_1/dt = 4 theta int J sin(wt)/w dw.
pub fn domega1_dt(b: &BathSpec, cfg: &QuadratureConfig, theta: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 || theta == 0.0 {
        return Ok(0.0);
    }
    Ok(theta * eval_integral(b, cfg, Kind::DOmega1Dt, t)?)
}

/// dOmega_2/dt = 4 theta t int J dw.
pub fn domega2_dt(b: &BathSpec, theta: f64, t: f64) -> f64 {
    4.0 * theta * t * spectral_moment_closed(b)
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "bath integrals need t >= 0, got {t}"
        )));
    }
    Ok(())
}

/// Memoizing front-end over the bath integrals.
///
/// Keys are exact bit patterns of t, so repeated evaluation on a shared time
/// grid hits the cache while arbitrary new t values recompute; cached values
/// are bit-identical to fresh evaluations. Internally synchronized: concurrent
/// readers observe the same values serial evaluation would produce.
#[derive(Debug)]
pub struct BathIntegralCache {
    bath: BathSpec,
    config: QuadratureConfig,
    memo: Mutex<HashMap<(Kind, u64), f64>>,
}

impl BathIntegralCache {
    pub fn new(bath: BathSpec, config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            bath,
            config,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn bath(&self) -> &BathSpec {
        &self.bath
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    fn memoized(&self, kind: Kind, t: f64, fresh: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let key = (kind, t.to_bits());
        if let Some(&v) = self.memo.lock().expect("cache poisoned").get(&key) {
            return Ok(v);
        }
        let v = fresh()?;
        self.memo.lock().expect("cache poisoned").insert(key, v);
        Ok(v)
    }

    pub fn gamma(&self, t: f64) -> Result<f64> {
        self.memoized(Kind::Gamma, t, || gamma(&self.bath, &self.config, t))
    }

    pub fn dgamma_dbeta(&self, t: f64) -> Result<f64> {
        self.memoized(Kind::DGammaDBeta, t, || {
            dgamma_dbeta(&self.bath, &self.config, t)
        })
    }

    /// Omega(t) with the given theta prefactor (the theta-independent integral
    /// is what gets cached).
    pub fn omega_phase_hermitian(&self, theta: f64, t: f64) -> Result<f64> {
        if t == 0.0 || theta == 0.0 {
            check_time(t)?;
            return Ok(0.0);
        }
        Ok(theta
            * self.memoized(Kind::OmegaPhase, t, || {
                eval_integral(&self.bath, &self.config, Kind::OmegaPhase, t)
            })?)
    }

    pub fn omega1(&self, theta: f64, t: f64) -> Result<f64> {
        if t == 0.0 || theta == 0.0 {
            check_time(t)?;
            return Ok(0.0);
        }
        Ok(theta
            * self.memoized(Kind::Omega1, t, || {
                eval_integral(&self.bath, &self.config, Kind::Omega1, t)
            })?)
    }

    pub fn omega2(&self, theta: f64, t: f64) -> f64 {
        omega2(&self.bath, theta, t)
    }

    pub fn domega_dt(&self, theta: f64, t: f64) -> Result<f64> {
        if t == 0.0 || theta == 0.0 {
            check_time(t)?;
            return Ok(0.0);
        }
        Ok(theta
            * self.memoized(Kind::DOmegaDt, t, || {
                eval_integral(&self.bath, &self.config, Kind::DOmegaDt, t)
            })?)
    }

    pub fn domega1_dt(&self, theta: f64, t: f64) -> Result<f64> {
        if t == 0.0 || theta == 0.0 {
            check_time(t)?;
            return Ok(0.0);
        }
        Ok(theta
            * self.memoized(Kind::DOmega1Dt, t, || {
                eval_integral(&self.bath, &self.config, Kind::DOmega1Dt, t)
            })?)
    }

    pub fn domega2_dt(&self, theta: f64, t: f64) -> f64 {
        domega2_dt(&self.bath, theta, t)
    }
}
