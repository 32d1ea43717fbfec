//! Bounding planes of P(ψ), their poles, and the checks built on them.
//!
//! Face planes, with `c = √c²(ψ)`:
//!
//! ```text
//! A:  cx + cy + z = c        B:  cx − cy − z = c
//! C: −cx − cy + z = c        D: −cx + cy − z = c
//! ```
//!
//! and the primed planes A′..D′ with the right-hand side negated (the images
//! under `x ↦ −x`). The truncation plane `N: −x + y + cz = ρ` is orthogonal to
//! A, C and D; its images under the sign symmetries of the plane table form
//! the candidate truncation orbit.
//!
//! Which plane pair realises which edge class is decided numerically by the
//! nominal angle the pair matches (ψ, ψ/4 or π/2), not by face names.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::family::{
    model_params, ConeAngle, CriticalAngles, Geometry, ModelParams, CRITICAL_SNAP, TWO_THIRDS_PI,
};
use crate::geom_kernel::{
    classify_point, dihedral_cosine, intersect_three_planes, pole_of_plane, AffinePlane,
    BilinearForm, HVector4, Point3, PointClass, Tolerances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceLabel {
    A,
    B,
    C,
    D,
    APrime,
    BPrime,
    CPrime,
    DPrime,
}

impl FaceLabel {
    pub const ALL: [FaceLabel; 8] = [
        FaceLabel::A,
        FaceLabel::B,
        FaceLabel::C,
        FaceLabel::D,
        FaceLabel::APrime,
        FaceLabel::BPrime,
        FaceLabel::CPrime,
        FaceLabel::DPrime,
    ];

    pub fn is_primed(self) -> bool {
        matches!(
            self,
            FaceLabel::APrime | FaceLabel::BPrime | FaceLabel::CPrime | FaceLabel::DPrime
        )
    }

    fn unprimed(self) -> FaceLabel {
        match self {
            FaceLabel::APrime => FaceLabel::A,
            FaceLabel::BPrime => FaceLabel::B,
            FaceLabel::CPrime => FaceLabel::C,
            FaceLabel::DPrime => FaceLabel::D,
            other => other,
        }
    }

    // Signs of (x, y, z) coefficients before scaling x, y by c.
    fn signs(self) -> [f64; 3] {
        match self.unprimed() {
            FaceLabel::A => [1.0, 1.0, 1.0],
            FaceLabel::B => [1.0, -1.0, -1.0],
            FaceLabel::C => [-1.0, -1.0, 1.0],
            _ => [-1.0, 1.0, -1.0],
        }
    }

    /// The affine face plane for box half-height `c`.
    pub fn plane(self, c: f64) -> AffinePlane {
        let [sx, sy, sz] = self.signs();
        let plane = AffinePlane {
            alpha: sx * c,
            beta: sy * c,
            gamma: sz,
            delta: c,
        };
        if self.is_primed() {
            plane.antipodal()
        } else {
            plane
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FaceLabel::A => "A",
            FaceLabel::B => "B",
            FaceLabel::C => "C",
            FaceLabel::D => "D",
            FaceLabel::APrime => "A'",
            FaceLabel::BPrime => "B'",
            FaceLabel::CPrime => "C'",
            FaceLabel::DPrime => "D'",
        }
    }
}

/// Sign pattern of the truncation plane N itself.
pub const N_SIGNS: [i8; 3] = [-1, 1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneLabel {
    Face(FaceLabel),
    /// Truncation plane `σ₁x + σ₂y + σ₃cz = ρ`.
    Truncation([i8; 3]),
}

impl fmt::Display for PlaneLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneLabel::Face(face) => f.write_str(face.name()),
            PlaneLabel::Truncation(s) if *s == N_SIGNS => f.write_str("N"),
            PlaneLabel::Truncation(s) => {
                let sym = |x: i8| if x > 0 { '+' } else { '-' };
                write!(f, "N[{}{}{}]", sym(s[0]), sym(s[1]), sym(s[2]))
            }
        }
    }
}

/// Truncation plane `σ₁x + σ₂y + σ₃cz = ρ`.
pub fn truncation_plane(signs: [i8; 3], c: f64, rho: f64) -> AffinePlane {
    AffinePlane {
        alpha: signs[0] as f64,
        beta: signs[1] as f64,
        gamma: signs[2] as f64 * c,
        delta: rho,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPlane {
    pub label: PlaneLabel,
    pub plane: AffinePlane,
    /// Pole oriented so the half-space containing the origin is the interior.
    pub pole: HVector4,
}

fn oriented_pole(plane: &AffinePlane, radius: f64, form: BilinearForm) -> Result<HVector4> {
    let pole = pole_of_plane(plane, radius, form)?;
    Ok(if plane.delta < 0.0 {
        pole.scale(-1.0)
    } else {
        pole
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSet {
    pub params: ModelParams,
    pub form: BilinearForm,
    pub radius: f64,
    pub faces: Vec<LabeledPlane>,
    /// Truncation candidates orthogonal to exactly three face planes.
    pub truncations: Vec<LabeledPlane>,
}

impl PlaneSet {
    pub fn face(&self, label: FaceLabel) -> &LabeledPlane {
        &self.faces[FaceLabel::ALL.iter().position(|&l| l == label).unwrap()]
    }

    pub fn n(&self) -> Option<&LabeledPlane> {
        self.truncations
            .iter()
            .find(|p| p.label == PlaneLabel::Truncation(N_SIGNS))
    }

    pub fn c(&self) -> f64 {
        self.params.c2.sqrt()
    }

    /// `ρ`, which is `R²` in the hyperbolic regime.
    pub fn rho(&self) -> f64 {
        self.params.rho
    }
}

// Normalised pole product, independent of pole scaling.
fn normalized_product(v: &HVector4, w: &HVector4, form: BilinearForm) -> f64 {
    form.apply(v, w) / (v.euclid_norm2() * w.euclid_norm2()).sqrt()
}

pub fn build_planes(psi: f64) -> Result<PlaneSet> {
    let params = model_params(ConeAngle::new(psi)?);
    let (form, radius) = params.finite_model()?;
    let c = params.c2.sqrt();
    let faces = FaceLabel::ALL
        .iter()
        .map(|&label| {
            let plane = label.plane(c);
            Ok(LabeledPlane {
                label: PlaneLabel::Face(label),
                plane,
                pole: oriented_pole(&plane, radius, form)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let tol = Tolerances::default().geometric;
    let mut truncations = Vec::with_capacity(8);
    for sx in [-1i8, 1] {
        for sy in [-1i8, 1] {
            for sz in [-1i8, 1] {
                let signs = [sx, sy, sz];
                let plane = truncation_plane(signs, c, params.rho);
                let pole = oriented_pole(&plane, radius, form)?;
                let orthogonal = faces
                    .iter()
                    .filter(|f| normalized_product(&pole, &f.pole, form).abs() <= tol)
                    .count();
                if orthogonal == 3 {
                    truncations.push(LabeledPlane {
                        label: PlaneLabel::Truncation(signs),
                        plane,
                        pole,
                    });
                }
            }
        }
    }
    Ok(PlaneSet {
        params,
        form,
        radius,
        faces,
        truncations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleClass {
    /// Cone angle ψ along the self-paired singular edges.
    SingularFull,
    /// ψ/4 along the β edges.
    BetaQuarter,
    /// π/2 along regular edges.
    RightAngle,
    Other,
}

impl AngleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleClass::SingularFull => "singular_full",
            AngleClass::BetaQuarter => "beta_quarter",
            AngleClass::RightAngle => "right_angle",
            AngleClass::Other => "other",
        }
    }
}

/// What the truncation plane N is at this ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncationStatus {
    /// Spacelike pole: N is a genuine plane of the model.
    Planes,
    /// Null pole: N has shrunk to the ideal point where A, C, D meet (cusp).
    Ideal,
    /// Timelike pole: A, C, D meet at a finite vertex.
    FiniteVertex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditEntry {
    pub first: PlaneLabel,
    pub second: PlaneLabel,
    /// Unclamped interior cosine; NaN for ideal pairs.
    pub cosine: f64,
    /// `None` when the planes do not meet in the model.
    pub angle: Option<f64>,
    pub class: AngleClass,
    /// Matched the supplement `2π − ψ` of a cone angle larger than π.
    pub reflex: bool,
    /// Involves the ideal truncation point.
    pub ideal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DihedralAudit {
    pub psi: f64,
    pub geometry: Geometry,
    pub truncation: TruncationStatus,
    pub entries: Vec<AuditEntry>,
}

impl DihedralAudit {
    pub fn count(&self, class: AngleClass) -> usize {
        self.entries.iter().filter(|e| e.class == class).count()
    }

    pub fn angle(&self, a: PlaneLabel, b: PlaneLabel) -> Option<&AuditEntry> {
        self.entries
            .iter()
            .find(|e| (e.first, e.second) == (a, b) || (e.first, e.second) == (b, a))
    }

    /// N is orthogonal to the three faces it truncates.
    pub fn n_orthogonal_to_acd(&self) -> bool {
        let n = PlaneLabel::Truncation(N_SIGNS);
        [FaceLabel::A, FaceLabel::C, FaceLabel::D].iter().all(|&f| {
            self.angle(n, PlaneLabel::Face(f))
                .is_some_and(|e| e.class == AngleClass::RightAngle)
        })
    }

    /// Every nominal class the model should realise is present.
    pub fn is_complete(&self) -> bool {
        let faces_ok =
            self.count(AngleClass::SingularFull) > 0 && self.count(AngleClass::BetaQuarter) > 0;
        match self.truncation {
            TruncationStatus::FiniteVertex => faces_ok,
            _ => faces_ok && self.n_orthogonal_to_acd(),
        }
    }
}

struct Nominal {
    psi: f64,
    tol: f64,
}

impl Nominal {
    fn classify(&self, theta: f64) -> (AngleClass, bool) {
        let close = |x: f64| (theta - x).abs() <= self.tol;
        if close(self.psi) {
            (AngleClass::SingularFull, false)
        } else if self.psi > PI && close(TAU - self.psi) {
            (AngleClass::SingularFull, true)
        } else if close(self.psi / 4.0) {
            (AngleClass::BetaQuarter, false)
        } else if close(FRAC_PI_2) {
            (AngleClass::RightAngle, false)
        } else {
            (AngleClass::Other, false)
        }
    }
}

fn truncation_status(set: &PlaneSet, tol: f64) -> TruncationStatus {
    let Some(n) = set.n() else {
        return TruncationStatus::FiniteVertex;
    };
    let norm = normalized_product(&n.pole, &n.pole, set.form);
    if norm.abs() <= tol {
        TruncationStatus::Ideal
    } else if norm < 0.0 {
        TruncationStatus::FiniteVertex
    } else {
        TruncationStatus::Planes
    }
}

/// All pairwise dihedral angles among the planes of P(ψ), classified against
/// the nominal angles ψ, ψ/4 and π/2.
///
/// In the spherical regime the interior-sign reading of `±cos θ` is used: it
/// is the one continuous with the hyperbolic audit across ω.
pub fn dihedral_audit(psi: f64, tol: f64) -> Result<DihedralAudit> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    let set = build_planes(psi)?;
    let nominal = Nominal { psi, tol };
    let truncation = truncation_status(&set, tol);
    let mut entries = Vec::new();

    let mut push_pair = |p: &LabeledPlane, q: &LabeledPlane| -> Result<()> {
        let cosine = dihedral_cosine(&p.pole, &q.pole, set.form)?;
        let (angle, (class, reflex)) = if cosine.abs() > 1.0 + tol {
            (None, (AngleClass::Other, false))
        } else {
            let theta = cosine.clamp(-1.0, 1.0).acos();
            (Some(theta), nominal.classify(theta))
        };
        entries.push(AuditEntry {
            first: p.label,
            second: q.label,
            cosine,
            angle,
            class,
            reflex,
            ideal: false,
        });
        Ok(())
    };

    for (i, p) in set.faces.iter().enumerate() {
        for q in &set.faces[i + 1..] {
            push_pair(p, q)?;
        }
    }
    match truncation {
        TruncationStatus::Planes => {
            for n in &set.truncations {
                for f in &set.faces {
                    push_pair(n, f)?;
                }
            }
            for (i, p) in set.truncations.iter().enumerate() {
                for q in &set.truncations[i + 1..] {
                    push_pair(p, q)?;
                }
            }
        }
        TruncationStatus::Ideal => {
            // Only incidence survives: the ideal point lies on the faces
            // whose poles it annihilates.
            for n in &set.truncations {
                for f in &set.faces {
                    let on_face = normalized_product(&n.pole, &f.pole, set.form).abs() <= tol;
                    entries.push(AuditEntry {
                        first: n.label,
                        second: f.label,
                        cosine: f64::NAN,
                        angle: on_face.then_some(FRAC_PI_2),
                        class: if on_face {
                            AngleClass::RightAngle
                        } else {
                            AngleClass::Other
                        },
                        reflex: false,
                        ideal: true,
                    });
                }
            }
        }
        TruncationStatus::FiniteVertex => {}
    }

    Ok(DihedralAudit {
        psi,
        geometry: set.params.geometry,
        truncation,
        entries,
    })
}

/// Position of the named vertices relative to the model ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContainmentReport {
    pub psi: f64,
    pub vertex_anc: Point3,
    pub vertex_and: Point3,
    /// `R² − ‖A∩N∩C‖²` from the vertex.
    pub f: f64,
    /// `R² − ‖A∩N∩D‖²` from the vertex.
    pub g: f64,
    /// `½(R² − c²)(2 + c² − R²)`.
    pub f_closed: f64,
    /// `(R² − 1)(2 + c² − R²)/(c² + 1)`.
    pub g_closed: f64,
    pub class_anc: PointClass,
    pub class_and: PointClass,
}

impl ContainmentReport {
    /// The two named vertices and their images under `x ↦ −x`.
    pub fn symmetric_images(&self) -> [Point3; 4] {
        let neg = |p: Point3| p.map(|x| -x);
        [
            self.vertex_anc,
            self.vertex_and,
            neg(self.vertex_anc),
            neg(self.vertex_and),
        ]
    }
}

/// Containment functions on `[0, 2π/3]`.
pub fn containment(psi: f64) -> Result<ContainmentReport> {
    if !(0.0..=TWO_THIRDS_PI + CRITICAL_SNAP).contains(&psi) {
        return Err(Error::OutOfDomain {
            psi,
            expected: "[0, 2π/3]",
        });
    }
    let set = build_planes(psi.min(TWO_THIRDS_PI))?;
    let r2 = set.rho();
    let c2 = set.params.c2;
    let n = set
        .n()
        .ok_or(Error::OutOfDomain {
            psi,
            expected: "a model with the truncation plane N",
        })?
        .plane;
    let a = set.face(FaceLabel::A).plane;
    let anc = intersect_three_planes(&a, &n, &set.face(FaceLabel::C).plane)?;
    let and = intersect_three_planes(&a, &n, &set.face(FaceLabel::D).plane)?;
    let norm2 = |p: &Point3| p.iter().map(|x| x * x).sum::<f64>();
    let tol = Tolerances::default().geometric;
    let pole_norm = 2.0 + c2 - r2;
    Ok(ContainmentReport {
        psi,
        vertex_anc: anc,
        vertex_and: and,
        f: r2 - norm2(&anc),
        g: r2 - norm2(&and),
        f_closed: 0.5 * (r2 - c2) * pole_norm,
        g_closed: (r2 - 1.0) * pole_norm / (c2 + 1.0),
        class_anc: classify_point(&anc, r2, BilinearForm::Hyperbolic, tol)?,
        class_and: classify_point(&and, r2, BilinearForm::Hyperbolic, tol)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    /// N is a plane inside the model: lines meet outside.
    Positive,
    /// A, C, D meet on the sphere at infinity.
    Zero,
    /// A, C, D meet inside the model.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleNorm {
    pub psi: f64,
    /// `⟨p,p⟩ = 2 + c² − R²`.
    pub value: f64,
    /// `2(3 − 4u²) / ((4u³ − 4u − 1)(4u³ − 4u + 1))`, `u = cos(ψ/4)`.
    pub factored: f64,
    pub sign: Trichotomy,
    /// Relative agreement of the two expressions within 1e−9.
    pub consistent: bool,
}

/// `⟨p,p⟩` for the pole `p = (−1, 1, c, R)` of N, on `[0, ω)`.
pub fn pole_norm_trichotomy(psi: f64) -> Result<PoleNorm> {
    let omega = CriticalAngles::standard().omega;
    if !(psi >= 0.0 && psi < omega - CRITICAL_SNAP) {
        return Err(Error::OutOfDomain {
            psi,
            expected: "[0, ω)",
        });
    }
    let params = model_params(ConeAngle::new(psi)?);
    let value = 2.0 + params.c2 - params.rho;
    let u = (psi / 4.0).cos();
    let cubic = 4.0 * u * u * u - 4.0 * u;
    let factored = 2.0 * (3.0 - 4.0 * u * u) / ((cubic - 1.0) * (cubic + 1.0));
    let tol = Tolerances::default().geometric;
    let sign = if value.abs() <= tol {
        Trichotomy::Zero
    } else if value > 0.0 {
        Trichotomy::Positive
    } else {
        Trichotomy::Negative
    };
    Ok(PoleNorm {
        psi,
        value,
        factored,
        sign,
        consistent: (value - factored).abs() <= tol * value.abs().max(1.0),
    })
}
