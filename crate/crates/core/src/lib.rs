//! Cone-manifold deformation family P(ψ), M(ψ).
//!
//! The crate evaluates the closed-form model parameters of a one-parameter
//! family of polyhedra whose faces are glued into cone manifolds, audits the
//! dihedral angles in projective (Klein-style) models of hyperbolic and
//! spherical space, locates the critical cone angles where the curvature
//! changes sign, and checks the combinatorial gluing conditions.
//!
//! Modules, bottom-up:
//!
//! * [`geom_kernel`]: bilinear forms, plane/pole duality, dihedral angles.
//! * [`family`]: c²(ψ), signed square radius ρ(ψ), curvature, critical angles,
//!   regime classification.
//! * [`polyhedron`]: the bounding planes of P(ψ), the dihedral audit and the
//!   containment functions f, g.
//! * [`gluing`]: face-identification schemes, edge orbits and the four
//!   cone-manifold conditions.
//! * [`sweep`]: per-ψ report rows and grid sweeps (rayon-parallel with the
//!   `parallel` feature, sequential otherwise).

pub mod error;
pub mod family;
pub mod geom_kernel;
pub mod gluing;
pub mod polyhedron;
mod roots;
pub mod sweep;

pub use error::{Error, Result};
pub use family::{
    c_squared, classify_regime, critical_angles, curvature, model_params, rho_signed,
    verify_identities, ConeAngle, CriticalAngles, Geometry, ModelParams, RegimeReport,
    SingularPhase, Topology,
};
pub use geom_kernel::{
    bilinear, classify_point, dihedral_angle, intersect_three_planes, pole_of_plane, AffinePlane,
    BilinearForm, HVector4, Point3, PointClass, Tolerances,
};
pub use gluing::{
    check_conditions, derive_edge_orbits, octahedron_scheme, whitehead_scheme, GluingScheme,
};
pub use polyhedron::{build_planes, containment, dihedral_audit, pole_norm_trichotomy};
pub use sweep::{evaluate, sweep, SweepRow};
