//! Per-ψ report rows and uniform sweeps.
//!
//! With the `parallel` feature rows are evaluated on the rayon pool; output
//! order always follows the grid.

use std::f64::consts::TAU;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{
    classify_regime, model_params, ConeAngle, CriticalAngles, Geometry, SingularPhase,
    CRITICAL_SNAP, TWO_THIRDS_PI,
};
use crate::polyhedron::{containment, pole_norm_trichotomy};

/// One evaluated cone angle. `None` marks a quantity that is undefined at
/// this ψ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub psi: f64,
    pub c2: Option<f64>,
    pub rho: Option<f64>,
    pub curvature: Option<f64>,
    pub geometry: Geometry,
    pub phase: SingularPhase,
    /// `2 + c² − R²` on `[0, ω)`.
    pub pole_norm: Option<f64>,
    /// Containment functions on `[0, 2π/3]`.
    pub f: Option<f64>,
    pub g: Option<f64>,
}

impl SweepRow {
    pub const HEADER: [&'static str; 9] = [
        "psi",
        "c2",
        "rho",
        "curvature",
        "geometry",
        "phase",
        "pole_norm",
        "f",
        "g",
    ];
}

pub fn evaluate(psi: f64) -> Result<SweepRow> {
    let angle = ConeAngle::new(psi)?;
    let params = model_params(angle);
    let regime = classify_regime(psi)?;
    let omega = CriticalAngles::standard().omega;
    let pole_norm = if psi < omega - CRITICAL_SNAP {
        Some(pole_norm_trichotomy(psi)?.value)
    } else {
        None
    };
    let (f, g) = if psi <= TWO_THIRDS_PI + CRITICAL_SNAP {
        let report = containment(psi)?;
        (Some(report.f), Some(report.g))
    } else {
        (None, None)
    };
    Ok(SweepRow {
        psi,
        c2: Some(params.c2),
        rho: Some(params.rho),
        curvature: params.curvature,
        geometry: params.geometry,
        phase: regime.singular_phase,
        pole_norm,
        f,
        g,
    })
}

/// `steps` uniformly spaced angles from `start` to `end` inclusive.
pub fn grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::BadRange(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if !(0.0 <= start && start < end && end <= TAU) {
        return Err(Error::BadRange(format!(
            "need 0 <= start < end <= 2π, got [{start}, {end}]"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                end
            } else {
                start + (end - start) * (i as f64 / last)
            }
        })
        .collect())
}

pub fn sweep_sequential(start: f64, end: f64, steps: usize) -> Result<Vec<SweepRow>> {
    grid(start, end, steps)?.into_iter().map(evaluate).collect()
}

#[cfg(feature = "parallel")]
pub fn sweep_parallel(start: f64, end: f64, steps: usize) -> Result<Vec<SweepRow>> {
    grid(start, end, steps)?
        .into_par_iter()
        .map(evaluate)
        .collect()
}

/// Sweep with the configured backend.
pub fn sweep(start: f64, end: f64, steps: usize) -> Result<Vec<SweepRow>> {
    #[cfg(feature = "parallel")]
    {
        sweep_parallel(start, end, steps)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(start, end, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn endpoints_only() {
        let g = grid(0.0, TWO_THIRDS_PI, 2).unwrap();
        assert_eq!(g, vec![0.0, TWO_THIRDS_PI]);
    }

    #[test]
    fn bad_ranges() {
        assert!(grid(1.0, 0.5, 10).is_err());
        assert!(grid(0.0, 1.0, 1).is_err());
        assert!(grid(0.0, 7.0, 10).is_err());
    }

    #[test]
    fn row_at_zero() {
        let r = evaluate(0.0).unwrap();
        assert_eq!(
            (r.c2, r.rho, r.curvature),
            (Some(1.0), Some(1.0), Some(-1.0))
        );
        assert_eq!(r.pole_norm, Some(2.0));
        assert!(r.f.unwrap().abs() < 1e-12);
    }

    #[test]
    fn row_at_pi_is_collapsed() {
        let r = evaluate(PI).unwrap();
        assert_eq!(r.geometry, Geometry::Collapsed);
        assert_eq!(r.curvature, None);
        assert_eq!((r.pole_norm, r.f, r.g), (None, None, None));
    }

    #[test]
    fn curvature_flips_across_omega() {
        let omega = CriticalAngles::standard().omega;
        let rows = sweep_sequential(omega - 0.01, omega + 0.01, 2).unwrap();
        assert!(rows[0].curvature.unwrap() < 0.0);
        assert!(rows[1].curvature.unwrap() > 0.0);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let a = sweep_parallel(0.0, TAU, 257).unwrap();
        let b = sweep_sequential(0.0, TAU, 257).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}
