//! The ψ-parametrised closed forms.
//!
//! With the reference box normalised to `[-1,1]² × [-c,c]`, the face planes
//! of P(ψ) meet at angle ψ along the singular edges and at ψ/4 along the β
//! edges. Solving those two angle constraints for `c²` and the model radius
//! gives
//!
//! ```text
//! c²(ψ) = (1 + cos ψ) / (2 cos(ψ/4) − cos ψ + 1)
//! ρ(ψ)  = (1 + cos ψ) / (2 cos(ψ/4) + cos ψ − 1)
//! ```
//!
//! `ρ` is the signed square radius: `+R²` in the hyperbolic regime, `−R²` in
//! the spherical one. Curvature is `−1/ρ`, continuous through zero where ρ
//! blows up. With `u = cos(ψ/4)` the ρ denominator factors as
//! `2u(4u³ − 4u + 1)`, so the Euclidean cone angles ω and ζ are the two
//! roots of the cubic in `(0, 1)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom_kernel::{dihedral_cosine, pole_of_plane, BilinearForm};
use crate::polyhedron::FaceLabel;
use crate::roots::bracketed_root;

pub const TWO_THIRDS_PI: f64 = 2.0 * PI / 3.0;

/// Snapping window around the critical angles.
pub const CRITICAL_SNAP: f64 = 1e-9;

/// A cone angle in radians, `0 ≤ ψ ≤ 2π`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ConeAngle(f64);

impl ConeAngle {
    pub fn new(psi: f64) -> Result<Self> {
        if !(0.0..=TAU).contains(&psi) {
            return Err(Error::OutOfDomain {
                psi,
                expected: "[0, 2π]",
            });
        }
        Ok(Self(psi))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `u = cos(ψ/4)`.
    pub fn quarter_cos(self) -> f64 {
        (self.0 / 4.0).cos()
    }
}

impl TryFrom<f64> for ConeAngle {
    type Error = Error;

    fn try_from(psi: f64) -> Result<Self> {
        Self::new(psi)
    }
}

impl fmt::Display for ConeAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The cubic whose roots in `u = cos(ψ/4)` are the Euclidean cone angles.
pub fn euclidean_cubic(u: f64) -> f64 {
    4.0 * u * u * u - 4.0 * u + 1.0
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= CRITICAL_SNAP
}

/// Square of the box half-height.
pub fn c_squared(psi: ConeAngle) -> f64 {
    let p = psi.radians();
    if near(p, PI) {
        return 0.0;
    }
    (1.0 + p.cos()) / (2.0 * (p / 4.0).cos() - p.cos() + 1.0)
}

/// Signed square radius; `f64::INFINITY` marks the Euclidean angles ω, ζ.
pub fn rho_signed(psi: ConeAngle) -> f64 {
    let p = psi.radians();
    let crit = CriticalAngles::standard();
    if near(p, crit.omega) || near(p, crit.zeta) {
        return f64::INFINITY;
    }
    if near(p, PI) {
        return 0.0;
    }
    (1.0 + p.cos()) / (2.0 * (p / 4.0).cos() + p.cos() - 1.0)
}

/// Sectional curvature `−1/ρ`; zero at ω and ζ.
pub fn curvature(psi: ConeAngle) -> Result<f64> {
    let p = psi.radians();
    if near(p, PI) {
        return Err(Error::Collapsed { psi: p });
    }
    let rho = rho_signed(psi);
    Ok(if rho.is_infinite() { 0.0 } else { -1.0 / rho })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Hyperbolic,
    Euclidean,
    Spherical,
    Collapsed,
}

impl Geometry {
    pub fn as_str(self) -> &'static str {
        match self {
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Euclidean => "euclidean",
            Geometry::Spherical => "spherical",
            Geometry::Collapsed => "collapsed",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-ψ model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub psi: ConeAngle,
    pub c2: f64,
    /// Signed square radius.
    pub rho: f64,
    /// `None` for the collapsed model at ψ = π.
    pub curvature: Option<f64>,
    pub geometry: Geometry,
    /// ψ past ζ: values are the unextended formulas and not a model.
    pub degenerate: bool,
}

impl ModelParams {
    /// Bilinear form and model radius, when the model is a finite
    /// hyperbolic or spherical one.
    pub fn finite_model(&self) -> Result<(BilinearForm, f64)> {
        let psi = self.psi.radians();
        if self.degenerate {
            return Err(Error::BeyondZeta { psi });
        }
        match self.geometry {
            Geometry::Collapsed => Err(Error::Collapsed { psi }),
            Geometry::Euclidean => Err(Error::EuclideanModel { psi }),
            Geometry::Hyperbolic => Ok((BilinearForm::Hyperbolic, self.rho.sqrt())),
            Geometry::Spherical => Ok((BilinearForm::Spherical, (-self.rho).sqrt())),
        }
    }
}

pub fn model_params(psi: ConeAngle) -> ModelParams {
    let regime = regime_for(psi.radians(), CriticalAngles::standard(), CRITICAL_SNAP);
    ModelParams {
        psi,
        c2: c_squared(psi),
        rho: rho_signed(psi),
        curvature: curvature(psi).ok(),
        geometry: regime.geometry,
        degenerate: regime.singular_phase == SingularPhase::SuspensionFourConePoints,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalAngles {
    pub two_thirds_pi: f64,
    pub omega: f64,
    pub pi_angle: f64,
    pub zeta: f64,
}

impl CriticalAngles {
    /// Critical angles converged to near machine precision, computed once.
    pub fn standard() -> &'static CriticalAngles {
        static CELL: OnceLock<CriticalAngles> = OnceLock::new();
        CELL.get_or_init(|| critical_angles(1e-14).expect("fixed brackets straddle the roots"))
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.two_thirds_pi, self.omega, self.pi_angle, self.zeta]
    }
}

// Sign changes of the cubic established by evaluation: f(0.8) < 0 < f(0.9),
// f(0.2) > 0 > f(0.3).
const OMEGA_BRACKET: (f64, f64) = (0.8, 0.9);
const ZETA_BRACKET: (f64, f64) = (0.2, 0.3);

/// Root-find ω and ζ on the cubic in `u = cos(ψ/4)`, to `|Δψ| < tol`.
pub fn critical_angles(tol: f64) -> Result<CriticalAngles> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    // dψ/du = −4/√(1−u²) ≤ 9.2 in magnitude on both brackets.
    let utol = tol / 10.0;
    let root = |(lo, hi): (f64, f64)| -> Result<f64> {
        let u = bracketed_root(euclidean_cubic, lo, hi, utol)?;
        Ok(4.0 * u.acos())
    };
    Ok(CriticalAngles {
        two_thirds_pi: TWO_THIRDS_PI,
        omega: root(OMEGA_BRACKET)?,
        pi_angle: PI,
        zeta: root(ZETA_BRACKET)?,
    })
}

/// Trigonometric solution of the cubic for its largest root.
pub fn omega_closed_form() -> f64 {
    let base = (-3.0 * 3f64.sqrt() / 8.0).acos() / 3.0;
    4.0 * (2.0 / 3f64.sqrt() * base.cos()).acos()
}

/// Trigonometric solution for the smallest positive root. The `4π/3` shift
/// sits outside the inner arccos.
pub fn zeta_closed_form() -> f64 {
    let base = (-3.0 * 3f64.sqrt() / 8.0).acos() / 3.0;
    4.0 * (2.0 / 3f64.sqrt() * (base + 4.0 * PI / 3.0).cos()).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularPhase {
    TwoComponentsUnlinked,
    CuspedSelfIntersecting,
    SelfIntersecting,
    EuclideanTetrahedralPhase,
    LensCollapse,
    SphericalSelfIntersecting,
    SuspensionOnset,
    SuspensionFourConePoints,
}

impl SingularPhase {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularPhase::TwoComponentsUnlinked => "two_components_unlinked",
            SingularPhase::CuspedSelfIntersecting => "cusped_self_intersecting",
            SingularPhase::SelfIntersecting => "self_intersecting",
            SingularPhase::EuclideanTetrahedralPhase => "euclidean_tetrahedral",
            SingularPhase::LensCollapse => "lens_collapse",
            SingularPhase::SphericalSelfIntersecting => "spherical_self_intersecting",
            SingularPhase::SuspensionOnset => "suspension_onset",
            SingularPhase::SuspensionFourConePoints => "suspension_four_cone_points",
        }
    }
}

impl fmt::Display for SingularPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    S2xS1,
    S3,
    R3,
    SuspensionS2FourPoints,
    Degenerate,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::S2xS1 => "S2xS1",
            Topology::S3 => "S3",
            Topology::R3 => "R3",
            Topology::SuspensionS2FourPoints => "suspension_S2_four_points",
            Topology::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub psi: f64,
    pub geometry: Geometry,
    pub singular_phase: SingularPhase,
    pub topology: Topology,
}

pub fn classify_regime(psi: f64) -> Result<RegimeReport> {
    classify_regime_with(psi, CriticalAngles::standard(), CRITICAL_SNAP)
}

/// Interval lookup against explicit critical angles; ψ within `tol` of a
/// critical value is classified as that value.
pub fn classify_regime_with(psi: f64, crit: &CriticalAngles, tol: f64) -> Result<RegimeReport> {
    if !(psi >= -tol && psi <= TAU + tol) {
        return Err(Error::OutOfDomain {
            psi,
            expected: "[0, 2π]",
        });
    }
    Ok(regime_for(psi, crit, tol))
}

fn regime_for(psi: f64, crit: &CriticalAngles, tol: f64) -> RegimeReport {
    use Geometry::*;
    use SingularPhase::*;
    let at = |x: f64| (psi - x).abs() <= tol;
    let (geometry, singular_phase, topology) = if psi.abs() <= tol {
        (Hyperbolic, TwoComponentsUnlinked, Topology::Degenerate)
    } else if psi < crit.two_thirds_pi - tol {
        (Hyperbolic, TwoComponentsUnlinked, Topology::S2xS1)
    } else if at(crit.two_thirds_pi) {
        (Hyperbolic, CuspedSelfIntersecting, Topology::S3)
    } else if psi < crit.omega - tol {
        (Hyperbolic, SelfIntersecting, Topology::S3)
    } else if at(crit.omega) {
        (Euclidean, EuclideanTetrahedralPhase, Topology::R3)
    } else if psi < crit.pi_angle - tol {
        (Spherical, SelfIntersecting, Topology::S3)
    } else if at(crit.pi_angle) {
        (Collapsed, LensCollapse, Topology::S3)
    } else if psi < crit.zeta - tol {
        (Spherical, SphericalSelfIntersecting, Topology::S3)
    } else if at(crit.zeta) {
        (Euclidean, SuspensionOnset, Topology::SuspensionS2FourPoints)
    } else {
        (Spherical, SuspensionFourConePoints, Topology::Degenerate)
    };
    RegimeReport {
        psi,
        geometry,
        singular_phase,
        topology,
    }
}

/// Residuals of cos ψ and cos(ψ/4) reconstructed from `(c², ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub cos_psi: f64,
    pub cos_quarter: f64,
    pub passed: bool,
}

/// Rebuild cos ψ from the A–C pole pair and cos(ψ/4) from the A–B pair and
/// compare with the direct values.
pub fn verify_identities(psi: f64, tol: f64) -> Result<IdentityResiduals> {
    let params = model_params(ConeAngle::new(psi)?);
    let (form, radius) = params.finite_model()?;
    let c = params.c2.sqrt();
    let pole = |face: FaceLabel| pole_of_plane(&face.plane(c), radius, form);
    let a = pole(FaceLabel::A)?;
    let cos_full = dihedral_cosine(&a, &pole(FaceLabel::C)?, form)?;
    let cos_quarter = dihedral_cosine(&a, &pole(FaceLabel::B)?, form)?;
    let cos_psi = (cos_full - psi.cos()).abs();
    let cos_quarter = (cos_quarter - (psi / 4.0).cos()).abs();
    Ok(IdentityResiduals {
        cos_psi,
        cos_quarter,
        passed: cos_psi < tol && cos_quarter < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(p: f64) -> ConeAngle {
        ConeAngle::new(p).unwrap()
    }

    #[test]
    fn c_squared_values() {
        assert_eq!(c_squared(angle(0.0)), 1.0);
        assert_eq!(c_squared(angle(PI)), 0.0);
        let want = (2.0 * 3f64.sqrt() - 3.0) / 3.0;
        assert!((c_squared(angle(TWO_THIRDS_PI)) - want).abs() < 1e-15);
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho_signed(angle(0.0)), 1.0);
        let want = (2.0 * 3f64.sqrt() + 3.0) / 3.0;
        assert!((rho_signed(angle(TWO_THIRDS_PI)) - want).abs() < 1e-14);
        let omega = CriticalAngles::standard().omega;
        assert_eq!(rho_signed(angle(omega)), f64::INFINITY);
    }

    #[test]
    fn curvature_values() {
        assert_eq!(curvature(angle(0.0)), Ok(-1.0));
        assert_eq!(curvature(angle(CriticalAngles::standard().omega)), Ok(0.0));
        // ρ(4.0) = −0.6044202464747488 by direct evaluation.
        let k = curvature(angle(4.0)).unwrap();
        assert!((k - 1.0 / 0.6044202464747488).abs() < 1e-12);
        assert!(matches!(curvature(angle(PI)), Err(Error::Collapsed { .. })));
    }

    #[test]
    fn cone_angle_domain() {
        assert!(ConeAngle::new(-0.1).is_err());
        assert!(ConeAngle::new(TAU + 1e-6).is_err());
        assert!(ConeAngle::new(f64::NAN).is_err());
        assert!(ConeAngle::new(TAU).is_ok());
    }

    #[test]
    fn critical_constants() {
        let crit = critical_angles(1e-12).unwrap();
        assert_eq!(crit.two_thirds_pi, 2.0 * PI / 3.0);
        assert_eq!(crit.pi_angle, PI);
        assert!(crit.two_thirds_pi < crit.omega);
        assert!(crit.omega < crit.pi_angle && crit.pi_angle < crit.zeta);
        assert!((crit.omega - omega_closed_form()).abs() < 1e-9);
        assert!((crit.zeta - zeta_closed_form()).abs() < 1e-9);
        assert!((crit.zeta - 5.191298).abs() < 1e-6);
        assert!(critical_angles(0.0).is_err());
    }

    #[test]
    fn cubic_roots_in_u() {
        let crit = CriticalAngles::standard();
        for (psi, u) in [(crit.omega, 0.83756544), (crit.zeta, 0.26959444)] {
            assert!(((psi / 4.0).cos() - u).abs() < 1e-8);
        }
    }

    #[test]
    fn printed_zeta_form_is_undefined() {
        // arccos argument of the form with the shift inside the inner arccos.
        let arg = -3.0 * 3f64.sqrt() / 8.0 + 4.0 * PI / 3.0;
        assert!(arg > 1.0);
        assert!(arg.acos().is_nan());
    }

    #[test]
    fn regime_examples() {
        let r = classify_regime(1.0).unwrap();
        assert_eq!(
            (r.geometry, r.topology, r.singular_phase),
            (
                Geometry::Hyperbolic,
                Topology::S2xS1,
                SingularPhase::TwoComponentsUnlinked
            )
        );
        let r = classify_regime(CriticalAngles::standard().omega).unwrap();
        assert_eq!(
            (r.geometry, r.topology),
            (Geometry::Euclidean, Topology::R3)
        );
        let r = classify_regime(4.0).unwrap();
        assert_eq!(
            (r.geometry, r.topology, r.singular_phase),
            (
                Geometry::Spherical,
                Topology::S3,
                SingularPhase::SphericalSelfIntersecting
            )
        );
        assert!(classify_regime(-0.5).is_err());
        assert!(classify_regime(7.0).is_err());
    }

    #[test]
    fn model_params_geometry() {
        let m = model_params(angle(PI));
        assert_eq!(m.geometry, Geometry::Collapsed);
        assert_eq!((m.c2, m.rho, m.curvature), (0.0, 0.0, None));
        assert!(m.finite_model().is_err());
        let m = model_params(angle(5.5));
        assert!(m.degenerate);
        assert!(matches!(m.finite_model(), Err(Error::BeyondZeta { .. })));
    }

    #[test]
    fn identities_at_two_thirds_pi() {
        let r = verify_identities(TWO_THIRDS_PI, 1e-12).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_identities(0.5, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(matches!(
            verify_identities(PI, 1e-9),
            Err(Error::Collapsed { .. })
        ));
    }

    #[test]
    fn identities_in_spherical_regime() {
        for psi in [2.5, 3.0, 4.0, 5.0] {
            let r = verify_identities(psi, 1e-9).unwrap();
            assert!(r.passed, "psi={psi}: {r:?}");
        }
    }
}
