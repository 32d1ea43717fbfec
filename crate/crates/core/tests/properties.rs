use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use cone_deform::family::{
    c_squared, classify_regime, critical_angles, curvature, rho_signed, ConeAngle, CriticalAngles,
    Geometry, TWO_THIRDS_PI,
};
use cone_deform::geom_kernel::{
    bilinear, dihedral_angle, intersect_three_planes, pole_of_plane, AffinePlane, BilinearForm,
    HVector4,
};
use cone_deform::gluing::{
    check_conditions, derive_edge_orbits, octahedron_scheme, role_assignment, whitehead_scheme,
    EdgeClass, EdgeRole, FacePairing, GluingScheme, Status,
};
use cone_deform::polyhedron::{
    containment, dihedral_audit, pole_norm_trichotomy, AngleClass, FaceLabel, PlaneLabel,
    Trichotomy,
};

const FORMS: [BilinearForm; 2] = [BilinearForm::Hyperbolic, BilinearForm::Spherical];

fn crit() -> &'static CriticalAngles {
    CriticalAngles::standard()
}

fn vec4() -> impl Strategy<Value = HVector4> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(HVector4)
}

fn face(label: FaceLabel) -> PlaneLabel {
    PlaneLabel::Face(label)
}

proptest! {
    #[test]
    fn bilinear_is_symmetric(v in vec4(), w in vec4()) {
        for form in FORMS {
            prop_assert_eq!(bilinear(&v, &w, form), bilinear(&w, &v, form));
        }
    }

    #[test]
    fn spherical_angle_is_scale_invariant(v in vec4(), w in vec4(), lambda in 0.01f64..100.0) {
        prop_assume!(v.euclid_norm2() > 1e-2 && w.euclid_norm2() > 1e-2);
        let form = BilinearForm::Spherical;
        let a = dihedral_angle(&v, &w, form).unwrap();
        let b = dihedral_angle(&v.scale(lambda), &w, form).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        // Negating a pole flips the side: the angle becomes its supplement.
        let c = dihedral_angle(&v.scale(-lambda), &w, form).unwrap();
        prop_assert!((a + c - PI).abs() < 1e-9);
        // A pole against its own antipode bounds a zero-angle wedge.
        prop_assert!(dihedral_angle(&v, &v.scale(-lambda), form).unwrap().abs() < 1e-6);
    }

    #[test]
    fn hyperbolic_angle_is_scale_invariant(v in vec4(), w in vec4(), lambda in 0.01f64..100.0) {
        let form = BilinearForm::Hyperbolic;
        prop_assume!(bilinear(&v, &v, form) > 1.0 && bilinear(&w, &w, form) > 1.0);
        let a = dihedral_angle(&v, &w, form);
        let b = dihedral_angle(&v.scale(lambda), &w.scale(lambda), form);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-9),
            (a, b) => prop_assert_eq!(a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn intersection_lies_on_all_planes(
        p in prop::array::uniform3(-5.0f64..5.0),
        normals in prop::array::uniform3(prop::array::uniform3(-1.0f64..1.0)),
    ) {
        let planes: Vec<AffinePlane> = normals
            .iter()
            .map(|n| {
                let d = n[0] * p[0] + n[1] * p[1] + n[2] * p[2];
                AffinePlane::new(n[0], n[1], n[2], d)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| TestCaseError::reject(e.to_string()))?;
        if let Ok(x) = intersect_three_planes(&planes[0], &planes[1], &planes[2]) {
            for pl in &planes {
                prop_assert!(pl.residual(&x).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn planes_through_origin_match_normal_angle(
        n in prop::array::uniform3(-1.0f64..1.0),
        m in prop::array::uniform3(-1.0f64..1.0),
        radius in 0.5f64..3.0,
    ) {
        let len = |a: [f64; 3]| (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        prop_assume!(len(n) > 0.1 && len(m) > 0.1);
        let dot = n[0] * m[0] + n[1] * m[1] + n[2] * m[2];
        let normal_angle = (dot / (len(n) * len(m))).clamp(-1.0, 1.0).acos();
        let p = AffinePlane::new(n[0], n[1], n[2], 0.0).unwrap();
        let q = AffinePlane::new(m[0], m[1], m[2], 0.0).unwrap();
        for form in FORMS {
            let a = pole_of_plane(&p, radius, form).unwrap();
            let b = pole_of_plane(&q, radius, form).unwrap();
            let theta = dihedral_angle(&a, &b, form).unwrap();
            prop_assert!((theta - (PI - normal_angle)).abs() < 1e-9);
        }
    }

    #[test]
    fn denominator_factorization(psi in 0.0f64..TAU) {
        let u = (psi / 4.0).cos();
        let lhs = 2.0 * u + psi.cos() - 1.0;
        let rhs = 2.0 * u * (4.0 * u * u * u - 4.0 * u + 1.0);
        prop_assert!((lhs - rhs).abs() < 1e-12);
        let cos_psi = 8.0 * u.powi(4) - 8.0 * u * u + 1.0;
        prop_assert!((cos_psi - psi.cos()).abs() < 1e-12);
    }

    #[test]
    fn c_squared_nonnegative(psi in 0.0f64..TAU) {
        let c2 = c_squared(ConeAngle::new(psi).unwrap());
        prop_assert!(c2 >= 0.0);
        if (psi - PI).abs() > 1e-6 {
            prop_assert!(c2 > 0.0);
        }
    }

    #[test]
    fn curvature_is_continuous(psi in 0.01f64..(TAU - 0.01)) {
        let k = crit();
        prop_assume!([k.omega, PI, k.zeta].iter().all(|c| (psi - c).abs() > 0.05));
        let at = |x: f64| curvature(ConeAngle::new(x).unwrap()).unwrap();
        let c2 = |x: f64| c_squared(ConeAngle::new(x).unwrap());
        // Differences shrink linearly with h; |κ'| grows like 1/ρ² near π.
        let step = |f: &dyn Fn(f64) -> f64, h: f64| (f(psi + h) - f(psi)).abs();
        for f in [&at as &dyn Fn(f64) -> f64, &c2] {
            let (d1, d2) = (step(f, 1e-5), step(f, 1e-7));
            prop_assert!(d2 <= 0.02 * d1 + 1e-12, "psi={} d1={} d2={}", psi, d1, d2);
            prop_assert!(d2 < 1e-4 * (1.0 + f(psi).powi(2)));
        }
    }

    #[test]
    fn a_b_and_a_d_agree(psi in 0.0f64..5.19) {
        let k = crit();
        prop_assume!((psi - k.omega).abs() > 1e-3 && (psi - PI).abs() > 1e-3);
        let audit = dihedral_audit(psi, 1e-9).unwrap();
        let a = face(FaceLabel::A);
        let ab = audit.angle(a, face(FaceLabel::B)).unwrap();
        let ad = audit.angle(a, face(FaceLabel::D)).unwrap();
        prop_assert!((ab.cosine - ad.cosine).abs() < 1e-12);
        prop_assert_eq!(ab.angle.is_some(), ad.angle.is_some());
        if let (Some(x), Some(y)) = (ab.angle, ad.angle) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn pairing_order_does_not_change_orbits(
        order in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        flips in prop::array::uniform4(any::<bool>()),
    ) {
        let base = octahedron_scheme();
        let mut scheme = base.clone();
        scheme.pairings = order
            .iter()
            .map(|&i| {
                let p = &base.pairings[i];
                if flips[i] {
                    FacePairing { source: p.target.clone(), target: p.source.clone() }
                } else {
                    p.clone()
                }
            })
            .collect();
        prop_assert_eq!(derive_edge_orbits(&scheme).unwrap(), derive_edge_orbits(&base).unwrap());
        let text = scheme.to_text();
        prop_assert_eq!(GluingScheme::parse(&text).unwrap(), scheme);
    }
}

#[test]
fn self_angle_conventions() {
    let v = HVector4::new(0.3, -0.2, 0.5, 0.1);
    for form in FORMS {
        assert!(dihedral_angle(&v, &v.scale(-1.0), form).unwrap().abs() < 1e-7);
        assert!((dihedral_angle(&v, &v, form).unwrap() - PI).abs() < 1e-7);
    }
}

#[test]
fn rho_sign_matches_geometry() {
    let zeta = crit().zeta;
    for i in 0..1000 {
        let psi = zeta * i as f64 / 1000.0;
        let rho = rho_signed(ConeAngle::new(psi).unwrap());
        let ok = match classify_regime(psi).unwrap().geometry {
            Geometry::Hyperbolic => rho > 0.0,
            Geometry::Spherical => rho < 0.0,
            Geometry::Euclidean => rho.is_infinite(),
            Geometry::Collapsed => rho == 0.0,
        };
        assert!(ok, "psi={psi} rho={rho}");
    }
}

#[test]
fn critical_angles_converge_for_loose_tolerances() {
    let tight = crit();
    for tol in [1e-6, 1e-9, 1e-12] {
        let k = critical_angles(tol).unwrap();
        assert!((k.omega - tight.omega).abs() < 10.0 * tol);
        assert!((k.zeta - tight.zeta).abs() < 10.0 * tol);
    }
    assert!(critical_angles(0.0).is_err());
    assert!(critical_angles(-1.0).is_err());
}

#[test]
fn pole_norm_trichotomy_sampled() {
    let omega = crit().omega;
    for i in 1..400 {
        let psi = omega * i as f64 / 400.0;
        if (psi - TWO_THIRDS_PI).abs() < 1e-6 {
            continue;
        }
        let p = pole_norm_trichotomy(psi).unwrap();
        let want = if psi < TWO_THIRDS_PI {
            Trichotomy::Positive
        } else {
            Trichotomy::Negative
        };
        assert_eq!(p.sign, want, "psi={psi}");
        assert!(p.consistent, "psi={psi}: {} vs {}", p.value, p.factored);
    }
    assert_eq!(
        pole_norm_trichotomy(TWO_THIRDS_PI).unwrap().sign,
        Trichotomy::Zero
    );
    assert!(pole_norm_trichotomy(omega).is_err());
}

#[test]
fn containment_closed_forms_sampled() {
    for i in 0..200 {
        let psi = TWO_THIRDS_PI * (i as f64 + 0.5) / 200.0;
        let r = containment(psi).unwrap();
        assert!((r.f - r.f_closed).abs() < 1e-9);
        assert!((r.g - r.g_closed).abs() < 1e-9);
        assert!(r.f > 0.0 && r.g > 0.0);
    }
    assert!(containment(TWO_THIRDS_PI + 0.01).is_err());
}

#[test]
fn cusp_vertices_meet_only_at_two_thirds_pi() {
    for i in 0..=200 {
        let psi = (TWO_THIRDS_PI - 0.01) * i as f64 / 200.0;
        let r = containment(psi).unwrap();
        let gap = (0..3)
            .map(|k| (r.vertex_anc[k] - r.vertex_and[k]).abs())
            .fold(0.0, f64::max);
        assert!(gap > 1e-3, "psi={psi}");
    }
    let r = containment(TWO_THIRDS_PI).unwrap();
    let gap = (0..3)
        .map(|k| (r.vertex_anc[k] - r.vertex_and[k]).abs())
        .fold(0.0, f64::max);
    assert!(gap < 1e-9);
}

#[test]
fn audit_complete_on_hyperbolic_range() {
    let omega = crit().omega;
    for i in 1..100 {
        let psi = (omega - 1e-3) * i as f64 / 100.0;
        let audit = dihedral_audit(psi, 1e-9).unwrap();
        assert!(audit.is_complete(), "psi={psi}");
        assert!(audit.count(AngleClass::SingularFull) > 0);
        assert!(audit.count(AngleClass::BetaQuarter) > 0);
    }
}

#[test]
fn spherical_audit_continues_hyperbolic_one() {
    let omega = crit().omega;
    let a = face(FaceLabel::A);
    let pairs = [face(FaceLabel::B), face(FaceLabel::C), face(FaceLabel::D)];
    for h in [1e-2, 1e-3, 1e-4] {
        let lo = dihedral_audit(omega - h, 1e-9).unwrap();
        let hi = dihedral_audit(omega + h, 1e-9).unwrap();
        assert_eq!(lo.geometry, Geometry::Hyperbolic);
        assert_eq!(hi.geometry, Geometry::Spherical);
        for b in pairs {
            let x = lo.angle(a, b).unwrap();
            let y = hi.angle(a, b).unwrap();
            assert_eq!(x.class, y.class, "h={h} {b}");
            let gap = (x.angle.unwrap() - y.angle.unwrap()).abs();
            assert!(gap < 3.0 * h, "h={h} {b}: {gap}");
        }
    }
}

#[test]
fn condition_two_holds_on_whole_range() {
    for scheme in [octahedron_scheme(), whitehead_scheme()] {
        for i in 1..=100 {
            let psi = TAU * i as f64 / 100.0;
            let r = check_conditions(&scheme, psi, &role_assignment(&scheme, psi)).unwrap();
            assert_eq!(
                r.conditions[1].status,
                Status::Pass,
                "{} psi={psi}",
                scheme.name
            );
        }
    }
}

#[test]
fn orbit_derivation_is_idempotent() {
    let base = octahedron_scheme();
    let orbits = derive_edge_orbits(&base).unwrap();
    let mut again = base.clone();
    again.classes = orbits
        .iter()
        .map(|edges| EdgeClass {
            role: EdgeRole::RightAngle,
            edges: edges.clone(),
        })
        .collect();
    assert_eq!(derive_edge_orbits(&again).unwrap(), orbits);
}

#[test]
fn scheme_text_round_trip() {
    for scheme in [octahedron_scheme(), whitehead_scheme()] {
        let text = scheme.to_text();
        assert_eq!(GluingScheme::parse(&text).unwrap(), scheme);
    }
}
