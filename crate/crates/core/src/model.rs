//! Qubit symmetry classes, parameter validation and derived spectral quantities.

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::error::{ensure_finite, Error, Result};

/// Symmetry class of the two-level system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Hermitian,
    PtSymmetric,
    AntiPtSymmetric,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 3] = [
        SymmetryClass::Hermitian,
        SymmetryClass::PtSymmetric,
        SymmetryClass::AntiPtSymmetric,
    ];

    /// Short label used in CSV headers and reports.
    pub fn label(self) -> &'static str {
        match self {
            SymmetryClass::Hermitian => "H",
            SymmetryClass::PtSymmetric => "PT",
            SymmetryClass::AntiPtSymmetric => "APT",
        }
    }
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A validated qubit: symmetry class plus the four real parameters of the
/// 2x2 Hamiltonian.
///
/// Construction rejects parameter sets on or beyond the degenerate locus
/// where the energy gap closes, so `omega0` is strictly positive for every
/// value of this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSpec {
    class: SymmetryClass,
    alpha: f64,
    delta: f64,
    xi: f64,
    theta: f64,
}

impl QubitSpec {
    pub fn new(class: SymmetryClass, alpha: f64, delta: f64, xi: f64, theta: f64) -> Result<Self> {
        ensure_finite("alpha", alpha)?;
        ensure_finite("delta", delta)?;
        ensure_finite("xi", xi)?;
        ensure_finite("theta", theta)?;
        let radicand = omega0_radicand(class, alpha, delta, xi, theta);
        if radicand <= 0.0 {
            return Err(Error::DegenerateGap { radicand });
        }
        Ok(Self {
            class,
            alpha,
            delta,
            xi,
            theta,
        })
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Half the energy gap: sqrt(alpha^2+delta^2+xi^2) (Hermitian),
    /// sqrt(xi^2+delta^2-theta^2) (PT), sqrt(alpha^2-delta^2-xi^2) (anti-PT).
    pub fn omega0(&self) -> f64 {
        omega0_radicand(self.class, self.alpha, self.delta, self.xi, self.theta).sqrt()
    }

    /// The explicit 2x2 system Hamiltonian for this class.
    pub fn hamiltonian(&self) -> Matrix2<C64> {
        let (a, d, x, th) = (self.alpha, self.delta, self.xi, self.theta);
        let off = C64::new(x, d);
        match self.class {
            SymmetryClass::Hermitian => Matrix2::new(
                C64::new(a + th, 0.0),
                off,
                off.conj(),
                C64::new(-a + th, 0.0),
            ),
            SymmetryClass::PtSymmetric => {
                Matrix2::new(C64::new(a, th), off, off.conj(), C64::new(a, -th))
            }
            SymmetryClass::AntiPtSymmetric => {
                Matrix2::new(C64::new(a, th), off, C64::new(-x, d), C64::new(-a, th))
            }
        }
    }

    /// Eigenvalues, gap and diagonalizing similarity transform.
    pub fn spectral_info(&self) -> SpectralInfo {
        let w0 = self.omega0();
        // real (Hermitian, PT) or imaginary (anti-PT) diagonal offset of the spectrum
        let offset = match self.class {
            SymmetryClass::Hermitian => C64::new(self.theta, 0.0),
            SymmetryClass::PtSymmetric => C64::new(self.alpha, 0.0),
            SymmetryClass::AntiPtSymmetric => C64::new(0.0, self.theta),
        };
        // the traceless part of the PT matrix carries i*theta where the other
        // two classes carry alpha
        let a_eff = match self.class {
            SymmetryClass::PtSymmetric => C64::new(0.0, self.theta),
            _ => C64::new(self.alpha, 0.0),
        };
        let off = C64::new(self.xi, self.delta);
        let transform = if self.xi == 0.0 && self.delta == 0.0 {
            // already diagonal; pick the row order that puts offset - omega0 first
            if a_eff.re >= 0.0 {
                Matrix2::new(
                    C64::new(0.0, 0.0),
                    C64::new(1.0, 0.0),
                    C64::new(1.0, 0.0),
                    C64::new(0.0, 0.0),
                )
            } else {
                Matrix2::identity()
            }
        } else {
            // rows are (unnormalized) left eigenvectors of the class Hamiltonian
            Matrix2::new(
                C64::new(w0, 0.0) - a_eff,
                -off,
                C64::new(w0, 0.0) + a_eff,
                off,
            )
        };
        SpectralInfo {
            omega0: w0,
            eigenvalues: (offset - w0, offset + w0),
            gap: 2.0 * w0,
            transform,
        }
    }
}

fn omega0_radicand(class: SymmetryClass, alpha: f64, delta: f64, xi: f64, theta: f64) -> f64 {
    match class {
        SymmetryClass::Hermitian => alpha * alpha + delta * delta + xi * xi,
        SymmetryClass::PtSymmetric => xi * xi + delta * delta - theta * theta,
        SymmetryClass::AntiPtSymmetric => alpha * alpha - delta * delta - xi * xi,
    }
}

/// Derived spectral data of a qubit.
#[derive(Debug, Clone, Copy)]
pub struct SpectralInfo {
    /// Half the energy gap, strictly positive.
    pub omega0: f64,
    /// Eigenvalue pair, ordered (offset - omega0, offset + omega0).
    pub eigenvalues: (C64, C64),
    /// Energy gap, exactly 2 * omega0.
    pub gap: f64,
    /// Similarity transform whose rows are left eigenvectors:
    /// `T H T^-1 = diag(offset - omega0, offset + omega0)`. Unnormalized.
    pub transform: Matrix2<C64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn diag_via_transform(q: &QubitSpec) -> Matrix2<C64> {
        let info = q.spectral_info();
        let t = info.transform;
        let t_inv = t.try_inverse().expect("transform is invertible");
        t * q.hamiltonian() * t_inv
    }

    /// Generic dense 2x2 eigenvalues, independent of the closed form.
    fn eigen2(m: &Matrix2<C64>) -> (C64, C64) {
        let tr = m[(0, 0)] + m[(1, 1)];
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let disc = (tr * tr - 4.0 * det).sqrt();
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    }

    fn assert_eigs_match(a: (C64, C64), b: (C64, C64), tol: f64) {
        let direct = (a.0 - b.0).norm() + (a.1 - b.1).norm();
        let crossed = (a.0 - b.1).norm() + (a.1 - b.0).norm();
        assert!(
            direct.min(crossed) < tol,
            "eigenvalue sets differ: {a:?} vs {b:?}"
        );
    }

    #[test]
    fn omega0_examples() {
        let q = QubitSpec::new(SymmetryClass::Hermitian, 1.0, 0.5, 0.8, 0.6).unwrap();
        assert_relative_eq!(q.omega0(), 1.89_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(q.omega0(), 1.374772708486752, max_relative = 1e-12);

        let q = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.0, 0.0, 0.6).unwrap();
        assert_relative_eq!(q.omega0(), 1.0, max_relative = 1e-15);

        let q = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.5, 0.8, 0.6).unwrap();
        assert_relative_eq!(q.omega0(), 0.11_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(q.omega0(), 0.3316624790355398, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_gap_rejected() {
        // delta^2 + xi^2 = alpha^2 exactly
        let r = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.6, 0.8, 0.0);
        assert!(matches!(r, Err(Error::DegenerateGap { .. })));
        // PT equality case
        let r = QubitSpec::new(SymmetryClass::PtSymmetric, 0.0, 0.3, 0.4, 0.5);
        assert!(matches!(r, Err(Error::DegenerateGap { .. })));
        // strict violation
        let r = QubitSpec::new(SymmetryClass::PtSymmetric, 0.0, 0.1, 0.1, 0.9);
        assert!(matches!(r, Err(Error::DegenerateGap { .. })));
        let r = QubitSpec::new(SymmetryClass::Hermitian, f64::NAN, 0.0, 0.0, 0.0);
        assert!(matches!(r, Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn spectral_info_examples() {
        let q = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.5, 0.8, 0.6).unwrap();
        let info = q.spectral_info();
        let w0 = 0.11_f64.sqrt();
        assert_eigs_match(
            info.eigenvalues,
            (C64::new(w0, 0.6), C64::new(-w0, 0.6)),
            1e-12,
        );
        assert_eigs_match(info.eigenvalues, eigen2(&q.hamiltonian()), 1e-12);
        assert_relative_eq!(info.gap, 2.0 * w0, max_relative = 1e-15);

        // already diagonal: sigma_z form
        let q = QubitSpec::new(SymmetryClass::Hermitian, 1.0, 0.0, 0.0, 0.0).unwrap();
        let info = q.spectral_info();
        assert_eigs_match(
            info.eigenvalues,
            (C64::new(1.0, 0.0), C64::new(-1.0, 0.0)),
            1e-14,
        );
        let d = diag_via_transform(&q);
        assert!(d[(0, 1)].norm() < 1e-14 && d[(1, 0)].norm() < 1e-14);

        let q = QubitSpec::new(SymmetryClass::PtSymmetric, 0.0, 0.5, 0.8, 0.6).unwrap();
        assert_relative_eq!(
            q.spectral_info().gap,
            2.0 * 0.53_f64.sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn transform_diagonalizes_all_classes() {
        let cases = [
            QubitSpec::new(SymmetryClass::Hermitian, 1.0, 0.56, 0.81, 0.86).unwrap(),
            QubitSpec::new(SymmetryClass::PtSymmetric, 1.0, 0.56, 0.81, 0.86).unwrap(),
            QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.56, 0.81, 0.86).unwrap(),
            QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.0, 0.0, 0.6).unwrap(),
        ];
        for q in &cases {
            let info = q.spectral_info();
            let d = diag_via_transform(q);
            assert!(
                d[(0, 1)].norm() < 1e-12 && d[(1, 0)].norm() < 1e-12,
                "{:?}: off-diagonal {:?}",
                q.class(),
                (d[(0, 1)], d[(1, 0)])
            );
            assert!((d[(0, 0)] - info.eigenvalues.0).norm() < 1e-12);
            assert!((d[(1, 1)] - info.eigenvalues.1).norm() < 1e-12);
        }
    }

    #[test]
    fn pt_algebra_identities() {
        // P = sigma_x, T = complex conjugation (antilinear):
        // PT . H . (PT)^-1 acts on matrices as sigma_x conj(H) sigma_x.
        let sx = Matrix2::new(
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        );
        let conj = |m: &Matrix2<C64>| m.map(|z| z.conj());

        let q = QubitSpec::new(SymmetryClass::AntiPtSymmetric, 1.0, 0.5, 0.8, 0.6).unwrap();
        let h = q.hamiltonian();
        let anti = sx * conj(&h) * sx + h;
        assert!(anti.iter().all(|z| z.norm() < 1e-14), "{{PT, H}} != 0");

        let q = QubitSpec::new(SymmetryClass::PtSymmetric, 1.0, 0.5, 0.8, 0.6).unwrap();
        let h = q.hamiltonian();
        let comm = sx * conj(&h) * sx - h;
        assert!(comm.iter().all(|z| z.norm() < 1e-14), "[PT, H] != 0");
    }

    proptest! {
        #[test]
        fn omega0_symmetric_in_delta_xi(
            class_idx in 0usize..3,
            alpha in -2.0f64..2.0,
            delta in -1.5f64..1.5,
            xi in -1.5f64..1.5,
            theta in -1.0f64..1.0,
        ) {
            let class = SymmetryClass::ALL[class_idx];
            let a = QubitSpec::new(class, alpha, delta, xi, theta);
            let b = QubitSpec::new(class, alpha, xi, delta, theta);
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert!((a.omega0() - b.omega0()).abs() < 1e-14),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "validity must be (delta, xi)-symmetric"),
            }
        }

        #[test]
        fn eigenvalues_match_dense_solver(
            class_idx in 0usize..3,
            alpha in -2.0f64..2.0,
            delta in -1.5f64..1.5,
            xi in -1.5f64..1.5,
            theta in -1.0f64..1.0,
        ) {
            let class = SymmetryClass::ALL[class_idx];
            if let Ok(q) = QubitSpec::new(class, alpha, delta, xi, theta) {
                let info = q.spectral_info();
                let dense = eigen2(&q.hamiltonian());
                let direct = (info.eigenvalues.0 - dense.0).norm() + (info.eigenvalues.1 - dense.1).norm();
                let crossed = (info.eigenvalues.0 - dense.1).norm() + (info.eigenvalues.1 - dense.0).norm();
                prop_assert!(direct.min(crossed) < 1e-10);
            }
        }
    }
}
