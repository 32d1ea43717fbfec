//! Projective-model linear algebra.
//!
//! Points and planes of the model live in the slice `t = R` of ℝ⁴. A plane
//! `αx + βy + γz = δ` is dual to a pole 4-vector; the angle between two planes
//! is read off the bilinear form evaluated on their poles.
//!
//! Poles are oriented: the pole returned for `αx+βy+γz=δ` is the outward
//! normal of the half-space `αx+βy+γz ≤ δ`. With that orientation the angle
//! formula measures the interior dihedral angle of the wedge cut out by the two
//! half-spaces, so a plane against itself gives π (a flat wedge) and against its
//! reversed orientation gives 0.

use crate::error::{Error, Result};

pub type Point3 = [f64; 3];

/// Default comparison tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Angle and containment comparisons.
    pub geometric: f64,
    /// Linear-solve residuals and determinant guards.
    pub linear: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geometric: 1e-9,
            linear: 1e-12,
        }
    }
}

/// Homogeneous coordinates `(x1, x2, x3, x4)`; `x4` is the `t` coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HVector4(pub [f64; 4]);

impl HVector4 {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self([x1, x2, x3, x4])
    }

    pub fn scale(self, lambda: f64) -> Self {
        Self(self.0.map(|x| x * lambda))
    }

    /// Euclidean norm squared of the raw coordinates.
    pub fn euclid_norm2(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }
}

/// Affine plane `alpha·x + beta·y + gamma·z = delta` in the model slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePlane {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl AffinePlane {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        if alpha == 0.0 && beta == 0.0 && gamma == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn normal(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// The same normal with the right-hand side negated (image under `x ↦ −x`).
    pub fn antipodal(&self) -> Self {
        Self {
            delta: -self.delta,
            ..*self
        }
    }

    /// `αx + βy + γz − δ`.
    pub fn residual(&self, p: &Point3) -> f64 {
        self.alpha * p[0] + self.beta * p[1] + self.gamma * p[2] - self.delta
    }
}

/// Metric signature of the ambient ℝ⁴.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BilinearForm {
    /// Signature (+,+,+,−).
    Hyperbolic,
    /// Signature (+,+,+,+).
    Spherical,
}

impl BilinearForm {
    pub fn apply(self, v: &HVector4, w: &HVector4) -> f64 {
        let [v1, v2, v3, v4] = v.0;
        let [w1, w2, w3, w4] = w.0;
        let spatial = v1 * w1 + v2 * w2 + v3 * w3;
        match self {
            BilinearForm::Hyperbolic => spatial - v4 * w4,
            BilinearForm::Spherical => spatial + v4 * w4,
        }
    }
}

pub fn bilinear(v: &HVector4, w: &HVector4, form: BilinearForm) -> f64 {
    form.apply(v, w)
}

/// Pole of `plane` in the model of radius `radius`.
///
/// Hyperbolic: `(α, β, γ, δ/R)`. Spherical: `(α, β, γ, −δ/R)`.
pub fn pole_of_plane(plane: &AffinePlane, radius: f64, form: BilinearForm) -> Result<HVector4> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::BadRadius(radius));
    }
    let t = match form {
        BilinearForm::Hyperbolic => plane.delta / radius,
        BilinearForm::Spherical => -plane.delta / radius,
    };
    Ok(HVector4::new(plane.alpha, plane.beta, plane.gamma, t))
}

// Relative threshold below which a pole is treated as null.
const NULL_POLE_REL: f64 = 1e-12;

fn spacelike_norm(v: &HVector4, form: BilinearForm) -> Result<f64> {
    let n = form.apply(v, v);
    if n.abs() <= NULL_POLE_REL * v.euclid_norm2() {
        return Err(Error::IdealPole { norm: n });
    }
    if n < 0.0 {
        return Err(Error::TimelikePole { norm: n });
    }
    Ok(n)
}

/// Unclamped cosine of the interior dihedral angle between the planes with
/// poles `v` and `w`: `−⟨v,w⟩ / (√⟨v,v⟩ √⟨w,w⟩)`.
///
/// A magnitude above one means the planes do not meet inside the model.
pub fn dihedral_cosine(v: &HVector4, w: &HVector4, form: BilinearForm) -> Result<f64> {
    let nv = spacelike_norm(v, form)?;
    let nw = spacelike_norm(w, form)?;
    Ok(-form.apply(v, w) / (nv.sqrt() * nw.sqrt()))
}

/// Interior dihedral angle in `[0, π]`.
pub fn dihedral_angle(v: &HVector4, w: &HVector4, form: BilinearForm) -> Result<f64> {
    Ok(dihedral_cosine(v, w, form)?.clamp(-1.0, 1.0).acos())
}

/// Both readings of the spherical `±cos θ` relation.
///
/// The first entry uses the interior sign (the same sign as the hyperbolic
/// formula, continuous across the Euclidean transition); the second is its
/// supplement.
pub fn spherical_angle_candidates(v: &HVector4, w: &HVector4) -> Result<(f64, f64)> {
    let interior = dihedral_angle(v, w, BilinearForm::Spherical)?;
    Ok((interior, std::f64::consts::PI - interior))
}

/// Unique common point of three planes.
pub fn intersect_three_planes(
    p1: &AffinePlane,
    p2: &AffinePlane,
    p3: &AffinePlane,
) -> Result<Point3> {
    intersect_three_planes_tol(p1, p2, p3, Tolerances::default().linear)
}

/// As [`intersect_three_planes`] with an explicit determinant guard; the guard
/// is relative to the product of the normal lengths.
pub fn intersect_three_planes_tol(
    p1: &AffinePlane,
    p2: &AffinePlane,
    p3: &AffinePlane,
    tol: f64,
) -> Result<Point3> {
    let [a, b, c] = [p1.normal(), p2.normal(), p3.normal()];
    let det = det3(a, b, c);
    let scale = [a, b, c]
        .iter()
        .map(|n| n.iter().map(|x| x * x).sum::<f64>().sqrt())
        .product::<f64>();
    if det.is_nan() || det.abs() <= tol * scale {
        return Err(Error::SingularSystem { det });
    }
    // Cramer's rule.
    let d = [p1.delta, p2.delta, p3.delta];
    let col = |k: usize| -> f64 {
        let mut rows = [a, b, c];
        for (row, rhs) in rows.iter_mut().zip(d) {
            row[k] = rhs;
        }
        det3(rows[0], rows[1], rows[2]) / det
    };
    Ok([col(0), col(1), col(2)])
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Position of a point relative to the hyperbolic model ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Inside,
    Boundary,
    Outside,
}

/// Compare `‖pt‖²` with the squared model radius `r2`.
pub fn classify_point(pt: &Point3, r2: f64, form: BilinearForm, tol: f64) -> Result<PointClass> {
    if form == BilinearForm::Spherical {
        return Err(Error::SphericalContainment);
    }
    if !r2.is_finite() || r2 <= 0.0 {
        return Err(Error::BadRadius(r2));
    }
    let d2: f64 = pt.iter().map(|x| x * x).sum();
    Ok(if (d2 - r2).abs() <= tol {
        PointClass::Boundary
    } else if d2 < r2 {
        PointClass::Inside
    } else {
        PointClass::Outside
    })
}
