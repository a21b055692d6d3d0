//! Von Neumann and Renyi entropies, KL divergence, Fisher-information curves
//! and their summaries (maximum, argmax, area).

use crate::bath::{coth_minus_one, BathIntegralCache};
use crate::error::{Error, Result};
use crate::model::QubitSpec;

/// Bloch-vector length, the single argument of both entropies.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BlochLength(f64);

impl BlochLength {
    pub fn new(v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!(
                "Bloch length must lie in [0, 1], got {v}"
            )));
        }
        Ok(Self(v))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// S = ln 2 - (1+v)/2 ln(1+v) - (1-v)/2 ln(1-v); 0 for pure states, ln 2 for
/// the maximally mixed state.
pub fn von_neumann_entropy(v: BlochLength) -> f64 {
    let v = v.value();
    std::f64::consts::LN_2 - 0.5 * xlnx(1.0 + v) - 0.5 * xlnx(1.0 - v)
}

/// Renyi entropy of order r: ln[lambda_+^r + lambda_-^r] / (1 - r) with
/// lambda_{+-} = (1 +- v)/2. Callers asking for r = 1 get the von Neumann
/// entropy (explicit dispatch, not a numerical limit).
pub fn renyi_entropy(v: BlochLength, r: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::Domain(format!(
            "Renyi order must be positive, got {r}"
        )));
    }
    if r == 1.0 {
        return Ok(von_neumann_entropy(v));
    }
    let lp = 0.5 * (1.0 + v.value());
    let lm = 0.5 * (1.0 - v.value());
    Ok((lp.powf(r) + lm.powf(r)).ln() / (1.0 - r))
}

/// KL divergence between the dephased states with Bloch lengths v~ and v:
/// 1/2 { ln[(1-v~^2)/(1-v^2)] + v~ ln[((1+v~)(1-v)) / ((1-v~)(1+v))] }.
pub fn kl_divergence(v_tilde: BlochLength, v: BlochLength) -> Result<f64> {
    let (vt, v) = (v_tilde.value(), v.value());
    if vt >= 1.0 || v >= 1.0 {
        return Err(Error::Domain(
            "KL divergence diverges for pure states (v = 1)".into(),
        ));
    }
    Ok(0.5
        * (((1.0 - vt * vt) / (1.0 - v * v)).ln()
            + vt * (((1.0 + vt) * (1.0 - v)) / ((1.0 - vt) * (1.0 + v))).ln()))
}

/// Fisher information for the inverse temperature:
/// S_f(beta, t) = (omega0^4 / 2) [coth(omega0^2 gamma) - 1] (d gamma / d beta)^2.
pub fn fisher_beta(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("Fisher curves need t > 0, got {t}")));
    }
    let w02 = q.omega0().powi(2);
    let g = bath.gamma(t)?;
    let dg = bath.dgamma_dbeta(t)?;
    Ok(0.5 * w02 * w02 * coth_minus_one(w02 * g) * dg * dg)
}

/// Fisher information for the combined qubit parameter:
/// S_f(omega0, t) = 2 omega0^2 [coth(omega0^2 gamma) - 1] gamma^2.
pub fn fisher_omega0(q: &QubitSpec, bath: &BathIntegralCache, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("Fisher curves need t > 0, got {t}")));
    }
    let w02 = q.omega0().powi(2);
    let g = bath.gamma(t)?;
    Ok(2.0 * w02 * coth_minus_one(w02 * g) * g * g)
}

/// Maximum, argmax and area of a Fisher curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherSummary {
    pub s_max: f64,
    pub t_max: f64,
    pub area: f64,
}

/// Curves conceptually diverge at t -> 0+ through coth; the scan grid starts
/// here and [0, T_FLOOR] counts as zero area.
const T_FLOOR: f64 = 1e-3;
const GOLDEN_TOL: f64 = 1e-6;
const HORIZON_DECAY: f64 = 1e-9;
const MAX_HORIZON_GROWTH: f64 = 64.0;

/// Scans `curve` on [1e-3, horizon], golden-refines the maximum to 1e-6 in t,
/// extends the horizon while the curve has not decayed below 1e-9 of the
/// maximum, and integrates by composite Simpson with one refinement halving.
pub fn fisher_summary<F>(curve: F, horizon: f64, grid: usize) -> Result<FisherSummary>
where
    F: Fn(f64) -> Result<f64>,
{
    if !horizon.is_finite() || horizon <= T_FLOOR {
        return Err(Error::InvalidParameter {
            name: "horizon",
            reason: format!("must exceed {T_FLOOR}, got {horizon}"),
        });
    }
    if grid < 100 {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("must be at least 100, got {grid}"),
        });
    }

    let ts: Vec<f64> = (0..grid)
        .map(|k| T_FLOOR + (horizon - T_FLOOR) * k as f64 / (grid - 1) as f64)
        .collect();
    let mut best_idx = 0;
    let mut best_val = f64::NEG_INFINITY;
    let mut all_zero = true;
    for (i, &t) in ts.iter().enumerate() {
        let v = curve(t)?;
        if v != 0.0 {
            all_zero = false;
        }
        if v > best_val {
            best_val = v;
            best_idx = i;
        }
    }
    if all_zero {
        return Err(Error::EmptyCurve);
    }

    let lo = ts[best_idx.saturating_sub(1)];
    let hi = ts[(best_idx + 1).min(grid - 1)];
    let (t_max, s_max) = golden_max(&curve, lo, hi)?;

    let mut h = horizon;
    while curve(h)? > HORIZON_DECAY * s_max && h < MAX_HORIZON_GROWTH * horizon {
        h *= 1.5;
    }

    let n = grid + grid % 2;
    let _coarse = simpson(&curve, T_FLOOR, h, n)?;
    let area = simpson(&curve, T_FLOOR, h, 2 * n)?;
    Ok(FisherSummary { s_max, t_max, area })
}

fn golden_max<F>(curve: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = curve(c)?;
    let mut fd = curve(d)?;
    while (b - a).abs() > GOLDEN_TOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = curve(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = curve(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    Ok((mid, curve(mid)?))
}

fn simpson<F>(curve: &F, a: f64, b: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = curve(a)? + curve(b)?;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * curve(a + h * k as f64)?;
    }
    Ok(sum * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::BathSpec;
    use crate::model::SymmetryClass;
    use crate::quad::QuadratureConfig;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    fn table1_cache() -> BathIntegralCache {
        BathIntegralCache::new(
            BathSpec::new(1.0, -0.5, 1.0, 0.5).unwrap(),
            QuadratureConfig::default(),
        )
        .unwrap()
    }

    fn table1_qubit(class: SymmetryClass) -> QubitSpec {
        QubitSpec::new(class, 1.0, 0.5, 0.8, 0.6).unwrap()
    }

    fn bl(v: f64) -> BlochLength {
        BlochLength::new(v).unwrap()
    }

    #[test]
    fn von_neumann_limits_and_value() {
        assert_eq!(von_neumann_entropy(bl(1.0)), 0.0);
        assert_relative_eq!(von_neumann_entropy(bl(0.0)), LN_2, max_relative = 1e-15);
        // cross-check against -sum lambda ln lambda with lambda = (1 +- v)/2
        let v = 0.5;
        let (lp, lm) = (0.75, 0.25);
        let oracle: f64 = -(lp * f64::ln(lp) + lm * f64::ln(lm));
        assert_relative_eq!(von_neumann_entropy(bl(v)), oracle, max_relative = 1e-14);
        assert!(BlochLength::new(1.2).is_err());
        assert!(BlochLength::new(-0.1).is_err());
    }

    #[test]
    fn renyi_dispatch_and_values() {
        // maximally mixed: all orders agree
        for r in [0.5, 1.0, 2.0, 10.0] {
            assert_relative_eq!(
                renyi_entropy(bl(0.0), r).unwrap(),
                LN_2,
                max_relative = 1e-12
            );
        }
        // collision entropy from the eigenvalue oracle
        let oracle = -f64::ln(0.75 * 0.75 + 0.25 * 0.25);
        assert_relative_eq!(
            renyi_entropy(bl(0.5), 2.0).unwrap(),
            oracle,
            max_relative = 1e-14
        );
        assert_relative_eq!(oracle, 0.47000362924573563, max_relative = 1e-12);
        // r -> 1 limit reaches the von Neumann entropy
        let s = von_neumann_entropy(bl(0.5));
        for r in [1.0 - 1e-6, 1.0 + 1e-6] {
            assert!((renyi_entropy(bl(0.5), r).unwrap() - s).abs() < 1e-5);
        }
        assert_eq!(renyi_entropy(bl(0.5), 1.0).unwrap(), s);
        assert!(renyi_entropy(bl(0.5), 0.0).is_err());
        assert!(renyi_entropy(bl(0.5), -2.0).is_err());
    }

    #[test]
    fn renyi_nonincreasing_in_order() {
        for &v in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let mut prev = f64::INFINITY;
            for &r in &[0.5, 1.0, 2.0, 4.0, 10.0] {
                let s = renyi_entropy(bl(v), r).unwrap();
                assert!(s <= prev + 1e-14, "S_r must be nonincreasing in r");
                prev = s;
            }
        }
    }

    #[test]
    fn kl_divergence_against_binary_oracle() {
        let binary_kl = |vt: f64, v: f64| {
            let (pt1, pt2) = (0.5 * (1.0 + vt), 0.5 * (1.0 - vt));
            let (p1, p2) = (0.5 * (1.0 + v), 0.5 * (1.0 - v));
            pt1 * (pt1 / p1).ln() + pt2 * (pt2 / p2).ln()
        };
        assert_eq!(kl_divergence(bl(0.3), bl(0.3)).unwrap(), 0.0);
        for &(vt, v) in &[(0.5, 0.3), (0.0, 0.5), (0.9, 0.1), (0.2, 0.8)] {
            let got = kl_divergence(bl(vt), bl(v)).unwrap();
            assert_relative_eq!(got, binary_kl(vt, v), max_relative = 1e-12);
            assert!(got >= 0.0);
        }
        assert_relative_eq!(
            kl_divergence(bl(0.0), bl(0.5)).unwrap(),
            0.5 * (4.0f64 / 3.0).ln(),
            max_relative = 1e-13
        );
        assert!(kl_divergence(bl(1.0), bl(0.5)).is_err());
        assert!(kl_divergence(bl(0.5), bl(1.0)).is_err());
    }

    #[test]
    fn fisher_rejects_time_zero() {
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::Hermitian);
        assert!(fisher_beta(&q, &bath, 0.0).is_err());
        assert!(fisher_omega0(&q, &bath, 0.0).is_err());
    }

    #[test]
    fn fisher_vanishes_at_large_time() {
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::Hermitian);
        assert!(fisher_beta(&q, &bath, 15.0).unwrap() < 1e-30);
        assert!(fisher_omega0(&q, &bath, 15.0).unwrap() < 1e-30);
    }

    #[test]
    fn fisher_beta_matches_kl_second_difference() {
        // S_f(beta, t) is the second derivative of the KL divergence in the
        // perturbed inverse temperature
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::AntiPtSymmetric);
        let w02 = q.omega0().powi(2);
        let h = 1e-3;
        let t = 0.5;
        let v = (-w02 * bath.gamma(t).unwrap()).exp();
        let perturbed = |db: f64| {
            let b = bath.bath().with_beta(bath.bath().beta() + db).unwrap();
            let c = BathIntegralCache::new(b, *bath.config()).unwrap();
            let vt = (-w02 * c.gamma(t).unwrap()).exp();
            kl_divergence(bl(vt), bl(v)).unwrap()
        };
        let fd = (perturbed(h) + perturbed(-h)) / (h * h);
        let closed = fisher_beta(&q, &bath, t).unwrap();
        assert_relative_eq!(closed, fd, max_relative = 1e-4);
    }

    #[test]
    fn fisher_omega0_matches_kl_second_difference() {
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::AntiPtSymmetric);
        let w0 = q.omega0();
        let h = 1e-4;
        let t = 0.5;
        let g = bath.gamma(t).unwrap();
        let v = (-w0 * w0 * g).exp();
        let kl_at = |w: f64| kl_divergence(bl((-w * w * g).exp()), bl(v)).unwrap();
        let fd = (kl_at(w0 + h) + kl_at(w0 - h)) / (h * h);
        let closed = fisher_omega0(&q, &bath, t).unwrap();
        assert_relative_eq!(closed, fd, max_relative = 1e-4);
    }

    #[test]
    fn summary_on_synthetic_triangle() {
        let t_star = 1.3;
        let tri = |t: f64| -> Result<f64> {
            if t < t_star {
                Ok((t / t_star).max(0.0))
            } else {
                Ok((2.0 - t / t_star).max(0.0))
            }
        };
        let s = fisher_summary(tri, 5.0, 500).unwrap();
        assert!((s.t_max - t_star).abs() < 1e-6);
        assert_relative_eq!(s.s_max, 1.0, max_relative = 1e-6);
        // triangle area: base 2*t_star, height 1 -> 1.3 (minus the tiny floor sliver)
        assert_relative_eq!(s.area, t_star, max_relative = 1e-3);
    }

    #[test]
    fn entropy_nondecreasing_for_monotone_gamma() {
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::PtSymmetric);
        let w02 = q.omega0().powi(2);
        let mut prev = 0.0;
        for k in 0..=40 {
            let t = 5.0 * k as f64 / 40.0;
            let v = (-w02 * bath.gamma(t).unwrap()).exp();
            let s = von_neumann_entropy(bl(v));
            assert!(s >= prev - 1e-15, "entropy dipped at t={t}");
            prev = s;
        }
    }

    #[test]
    fn summary_horizon_insensitive() {
        // Table-1 curves have decayed so far by t = 20 that doubling the
        // horizon moves the area by less than 1e-6 absolute
        let bath = table1_cache();
        let q = table1_qubit(SymmetryClass::AntiPtSymmetric);
        let a20 = fisher_summary(|t| fisher_omega0(&q, &bath, t), 20.0, 400).unwrap();
        let a40 = fisher_summary(|t| fisher_omega0(&q, &bath, t), 40.0, 400).unwrap();
        assert!(
            (a20.area - a40.area).abs() < 1e-6,
            "horizon sensitivity {:.3e}",
            (a20.area - a40.area).abs()
        );
    }

    #[test]
    fn summary_rejects_zero_curve() {
        let r = fisher_summary(|_| Ok(0.0), 5.0, 200);
        assert!(matches!(r, Err(Error::EmptyCurve)));
        assert!(fisher_summary(|_| Ok(1.0), 5.0, 50).is_err());
        assert!(fisher_summary(|_| Ok(1.0), 0.0, 200).is_err());
    }

    #[test]
    fn entropy_ordering_in_time() {
        // S is strictly decreasing in v, so S_APT < S_PT < S_H is equivalent
        // to v_APT > v_PT > v_H; at large t the S values saturate at ln 2 in
        // f64 (v^2 below machine epsilon), so the strict comparison runs on v.
        let bath = table1_cache();
        let lengths_and_entropies = |t: f64| {
            let mut out = Vec::new();
            for class in SymmetryClass::ALL {
                let q = table1_qubit(class);
                let w02 = q.omega0().powi(2);
                let v = (-w02 * bath.gamma(t).unwrap()).exp();
                out.push((v, von_neumann_entropy(bl(v))));
            }
            out
        };
        for k in 1..=20 {
            let t = 5.0 * k as f64 / 20.0;
            let ve = lengths_and_entropies(t);
            assert!(
                ve[2].0 > ve[1].0 && ve[1].0 > ve[0].0,
                "v ordering (equivalently S_APT < S_PT < S_H) at t={t}"
            );
            assert!(ve[2].1 <= ve[1].1 && ve[1].1 <= ve[0].1);
            for &(_, s) in &ve {
                assert!((0.0..=LN_2 + 1e-12).contains(&s));
            }
        }
    }
}
