use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cone angle {psi} outside {expected}")]
    OutOfDomain { psi: f64, expected: &'static str },

    #[error("collapsed model at psi={psi}: c^2 = R^2 = 0, the polyhedron is a lens")]
    Collapsed { psi: f64 },

    #[error("Euclidean model at psi={psi}: the model radius is infinite")]
    EuclideanModel { psi: f64 },

    #[error("model radius must be positive and finite, got {0}")]
    BadRadius(f64),

    #[error("formulas are not extended past zeta (psi={psi})")]
    BeyondZeta { psi: f64 },

    #[error("plane normal is zero")]
    ZeroNormal,

    #[error("ideal (cusped) configuration: pole has null norm {norm:e}")]
    IdealPole { norm: f64 },

    #[error("pole is timelike (norm {norm:e}): the plane misses the model")]
    TimelikePole { norm: f64 },

    #[error("degenerate plane triple: determinant {det:e}")]
    SingularSystem { det: f64 },

    #[error("containment is vacuous in the spherical model")]
    SphericalContainment,

    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),

    #[error("no sign change of the cubic on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("bad range: {0}")]
    BadRange(String),
}
