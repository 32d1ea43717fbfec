//! Face-identification schemes and the cone-manifold conditions.
//!
//! A scheme lists the faces of a polyhedron as cyclic vertex-label sequences
//! and pairs them up; a pairing matches the two vertex lists position by
//! position. Edge identifications follow from those correspondences, so the
//! edge classes can be derived rather than trusted.
//!
//! Conditions checked for a glued polyhedron with an assignment of dihedral
//! angles to edges:
//!
//! 1. no edge is identified with its inverse, and the wedges around each edge
//!    class close up in a single cycle;
//! 2. the cone angle of every edge class is at most 2π;
//! 3. every vertex link is a sphere (Euler characteristic 2);
//! 4. at most two link points per vertex class have cone angle ≠ 2π, and when
//!    there are two their cone angles agree.
//!
//! Plain-text format, whitespace-delimited, `#` starts a comment:
//!
//! ```text
//! NAME octahedron
//! FACE A o n p
//! PAIR A A'
//! CLASS full_psi ok
//! ```
//!
//! `PROVISIONAL` marks a scheme whose vertex data is incomplete; conditions
//! 3 and 4 are skipped for it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("duplicate face {0}")]
    DuplicateFace(String),
    #[error("face {0} has fewer than three vertices or repeats a vertex")]
    BadFace(String),
    #[error("pairing {from} <-> {to}: vertex counts differ")]
    LengthMismatch { from: String, to: String },
    #[error("face {0} is not paired exactly once")]
    Unpaired(String),
    #[error("edge {edge} lies on {count} faces, expected 2")]
    EdgeIncidence { edge: Edge, count: usize },
    #[error("class edge {0} is not an edge of the polyhedron")]
    UnknownEdge(Edge),
    #[error("no dihedral angle assigned to edge {0}")]
    MissingAssignment(Edge),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, GluingError>;

/// Unordered edge; endpoints stored in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(String, String);

impl Edge {
    pub fn new(u: &str, v: &str) -> Self {
        if u <= v {
            Edge(u.to_owned(), v.to_owned())
        } else {
            Edge(v.to_owned(), u.to_owned())
        }
    }

    pub fn endpoints(&self) -> (&str, &str) {
        (&self.0, &self.1)
    }

    fn token(&self) -> String {
        if self.0.chars().count() == 1 && self.1.chars().count() == 1 {
            format!("{}{}", self.0, self.1)
        } else {
            format!("{}-{}", self.0, self.1)
        }
    }

    fn parse_token(tok: &str) -> Option<Edge> {
        if let Some((u, v)) = tok.split_once('-') {
            return (!u.is_empty() && !v.is_empty()).then(|| Edge::new(u, v));
        }
        let mut chars = tok.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(u), Some(v), None) => Some(Edge::new(&u.to_string(), &v.to_string())),
            _ => None,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

type Directed = (String, String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub vertices: Vec<String>,
}

impl Face {
    pub fn new(name: &str, vertices: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            vertices: vertices.iter().map(|v| (*v).to_owned()).collect(),
        }
    }

    /// Boundary edges in cyclic order, oriented along the face.
    pub fn directed_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&*self.vertices[i], &*self.vertices[(i + 1) % n]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePairing {
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// Dihedral angle ψ.
    FullPsi,
    /// Dihedral angle ψ/4.
    QuarterPsi,
    /// Dihedral angle π/2.
    RightAngle,
}

impl EdgeRole {
    pub fn dihedral(self, psi: f64) -> f64 {
        match self {
            EdgeRole::FullPsi => psi,
            EdgeRole::QuarterPsi => psi / 4.0,
            EdgeRole::RightAngle => FRAC_PI_2,
        }
    }

    pub fn is_singular(self) -> bool {
        self != EdgeRole::RightAngle
    }

    pub fn token(self) -> &'static str {
        match self {
            EdgeRole::FullPsi => "full_psi",
            EdgeRole::QuarterPsi => "quarter_psi",
            EdgeRole::RightAngle => "right_angle",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "full_psi" => Some(EdgeRole::FullPsi),
            "quarter_psi" => Some(EdgeRole::QuarterPsi),
            "right_angle" => Some(EdgeRole::RightAngle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    pub role: EdgeRole,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingScheme {
    pub name: String,
    pub provisional: bool,
    pub faces: Vec<Face>,
    pub pairings: Vec<FacePairing>,
    /// Declared edge classes.
    pub classes: Vec<EdgeClass>,
}

fn class(role: EdgeRole, edges: &[&str]) -> EdgeClass {
    EdgeClass {
        role,
        edges: edges
            .iter()
            .map(|t| Edge::parse_token(t).expect("fixture edge token"))
            .collect(),
    }
}

fn truncated_tetrahedron_faces() -> Vec<Face> {
    vec![
        Face::new("A", &["o", "n", "p"]),
        Face::new("A'", &["j", "h", "i"]),
        Face::new("C", &["s", "q", "r"]),
        Face::new("C'", &["k", "l", "m"]),
        Face::new("D", &["i", "n", "p", "q", "s", "j"]),
        Face::new("D'", &["h", "m", "l", "r", "s", "j"]),
        Face::new("B", &["n", "o", "k", "m", "h", "i"]),
        Face::new("B'", &["p", "o", "k", "l", "r", "q"]),
    ]
}

fn primed_pairings() -> Vec<FacePairing> {
    ["A", "C", "D", "B"]
        .iter()
        .map(|f| FacePairing {
            source: (*f).to_owned(),
            target: format!("{f}'"),
        })
        .collect()
}

fn regular_classes() -> Vec<EdgeClass> {
    vec![
        class(EdgeRole::RightAngle, &["on", "op", "ji", "jh"]),
        class(EdgeRole::RightAngle, &["sr", "sq", "km", "kl"]),
        class(EdgeRole::RightAngle, &["np", "ml", "hi", "rq"]),
    ]
}

/// The two-cusped octahedron scheme whose cone-angle-zero member is the
/// Whitehead link complement.
pub fn octahedron_scheme() -> GluingScheme {
    let mut classes = vec![
        class(EdgeRole::FullPsi, &["ok"]),
        class(EdgeRole::FullPsi, &["sj"]),
    ];
    classes.extend(regular_classes());
    classes.push(class(EdgeRole::QuarterPsi, &["in", "hm", "lr", "pq"]));
    GluingScheme {
        name: "octahedron".into(),
        provisional: false,
        faces: truncated_tetrahedron_faces(),
        pairings: primed_pairings(),
        classes,
    }
}

/// The identification scheme after spontaneous surgery: same face pairs,
/// each β edge now carries the full cone angle. Provisional: the positional
/// vertex data after surgery is not known, so the octahedron's vertex lists
/// stand in and only conditions 1–2 are meaningful.
pub fn whitehead_scheme() -> GluingScheme {
    let mut classes = vec![
        class(EdgeRole::FullPsi, &["ok"]),
        class(EdgeRole::FullPsi, &["sj"]),
    ];
    classes.extend(regular_classes());
    for beta in ["in", "hm", "lr", "pq"] {
        classes.push(class(EdgeRole::FullPsi, &[beta]));
    }
    GluingScheme {
        name: "whitehead".into(),
        provisional: true,
        faces: truncated_tetrahedron_faces(),
        pairings: primed_pairings(),
        classes,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Interns keys to dense indices for union-find.
struct Interner<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Interner<K> {
    fn new() -> Self {
        Self {
            index: HashMap::new(),
            keys: Vec::new(),
        }
    }

    fn id(&mut self, k: &K) -> usize {
        if let Some(&i) = self.index.get(k) {
            return i;
        }
        self.keys.push(k.clone());
        self.index.insert(k.clone(), self.keys.len() - 1);
        self.keys.len() - 1
    }
}

/// Positional vertex correspondence of each pairing, both directions, keyed
/// by face index.
struct FaceMaps {
    partner: Vec<(usize, HashMap<String, String>)>,
}

fn face_index(scheme: &GluingScheme) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::new();
    for (i, f) in scheme.faces.iter().enumerate() {
        if index.insert(f.name.as_str(), i).is_some() {
            return Err(GluingError::DuplicateFace(f.name.clone()));
        }
    }
    Ok(index)
}

/// `(source index, target index, vertex map)`.
type PairingMap = (usize, usize, HashMap<String, String>);

fn pairing_maps(scheme: &GluingScheme) -> Result<Vec<PairingMap>> {
    let index = face_index(scheme)?;
    scheme
        .pairings
        .iter()
        .map(|p| {
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| GluingError::UnknownFace(name.to_owned()))
            };
            let (s, t) = (lookup(&p.source)?, lookup(&p.target)?);
            let (sv, tv) = (&scheme.faces[s].vertices, &scheme.faces[t].vertices);
            if sv.len() != tv.len() {
                return Err(GluingError::LengthMismatch {
                    from: p.source.clone(),
                    to: p.target.clone(),
                });
            }
            let map = sv.iter().cloned().zip(tv.iter().cloned()).collect();
            Ok((s, t, map))
        })
        .collect()
}

fn face_maps(scheme: &GluingScheme) -> Result<FaceMaps> {
    let maps = pairing_maps(scheme)?;
    let mut partner: Vec<Option<(usize, HashMap<String, String>)>> = vec![None; scheme.faces.len()];
    for (s, t, map) in maps {
        let inverse = map.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        for (from, to, m) in [(s, t, map), (t, s, inverse)] {
            if partner[from].is_some() || s == t {
                return Err(GluingError::Unpaired(scheme.faces[from].name.clone()));
            }
            partner[from] = Some((to, m));
        }
    }
    let partner = partner
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| GluingError::Unpaired(scheme.faces[i].name.clone())))
        .collect::<Result<_>>()?;
    Ok(FaceMaps { partner })
}

/// Faces incident to each edge, checking the polyhedron is closed.
fn edge_faces(scheme: &GluingScheme) -> Result<BTreeMap<Edge, Vec<usize>>> {
    let mut incidence: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, face) in scheme.faces.iter().enumerate() {
        let distinct: BTreeSet<_> = face.vertices.iter().collect();
        if face.vertices.len() < 3 || distinct.len() != face.vertices.len() {
            return Err(GluingError::BadFace(face.name.clone()));
        }
        for (u, v) in face.directed_edges() {
            incidence.entry(Edge::new(u, v)).or_default().push(i);
        }
    }
    for (edge, faces) in &incidence {
        if faces.len() != 2 {
            return Err(GluingError::EdgeIncidence {
                edge: edge.clone(),
                count: faces.len(),
            });
        }
    }
    Ok(incidence)
}

fn sorted_partition(groups: HashMap<usize, Vec<Edge>>) -> Vec<Vec<Edge>> {
    let mut out: Vec<Vec<Edge>> = groups
        .into_values()
        .map(|mut g| {
            g.sort();
            g.dedup();
            g
        })
        .collect();
    out.sort();
    out
}

/// Transitive closure of the edge identifications induced by the pairings.
pub fn derive_edge_orbits(scheme: &GluingScheme) -> Result<Vec<Vec<Edge>>> {
    let maps = pairing_maps(scheme)?;
    let mut edges = Interner::new();
    for face in &scheme.faces {
        for (u, v) in face.directed_edges() {
            edges.id(&Edge::new(u, v));
        }
    }
    let mut uf = UnionFind::new(edges.keys.len());
    for (s, _, map) in &maps {
        for (u, v) in scheme.faces[*s].directed_edges() {
            let a = edges.id(&Edge::new(u, v));
            let b = edges.id(&Edge::new(&map[u], &map[v]));
            uf.union(a, b);
        }
    }
    let mut groups: HashMap<usize, Vec<Edge>> = HashMap::new();
    for (i, e) in edges.keys.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(e.clone());
    }
    Ok(sorted_partition(groups))
}

/// The declared classes as a sorted partition, comparable with
/// [`derive_edge_orbits`].
pub fn declared_partition(scheme: &GluingScheme) -> Vec<Vec<Edge>> {
    let groups = scheme
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.edges.clone()))
        .collect();
    sorted_partition(groups)
}

pub type DihedralAssignment = BTreeMap<Edge, f64>;

/// Dihedral angle of every declared edge from its class role.
pub fn role_assignment(scheme: &GluingScheme, psi: f64) -> DihedralAssignment {
    scheme
        .classes
        .iter()
        .flat_map(|c| {
            c.edges
                .iter()
                .map(move |e| (e.clone(), c.role.dihedral(psi)))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub status: Status,
    pub detail: String,
}

impl Condition {
    fn from_failures(failures: Vec<String>, ok_detail: &str) -> Self {
        if failures.is_empty() {
            Condition {
                status: Status::Pass,
                detail: ok_detail.to_owned(),
            }
        } else {
            Condition {
                status: Status::Fail,
                detail: failures.join("; "),
            }
        }
    }

    fn skipped(detail: &str) -> Self {
        Condition {
            status: Status::Skipped,
            detail: detail.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSum {
    pub role: EdgeRole,
    pub edges: Vec<Edge>,
    pub sum: f64,
    /// 2π for regular classes, ψ for singular ones.
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexLink {
    pub vertices: Vec<String>,
    pub euler_characteristic: i64,
    /// Cone angles of the link points whose angle differs from 2π.
    pub singular_cone_angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub scheme: String,
    pub psi: f64,
    pub conditions: [Condition; 4],
    pub class_sums: Vec<ClassSum>,
    pub vertex_links: Vec<VertexLink>,
    pub orbits_match_declared: bool,
}

impl ConditionReport {
    /// Every checked condition passes and, unless the scheme is provisional,
    /// the derived orbits reproduce the declared classes.
    pub fn passed(&self, provisional: bool) -> bool {
        self.conditions.iter().all(|c| c.status != Status::Fail)
            && (provisional || self.orbits_match_declared)
    }
}

const ANGLE_TOL: f64 = 1e-12;

/// Check the four cone-manifold conditions for `scheme` at cone angle `psi`.
pub fn check_conditions(
    scheme: &GluingScheme,
    psi: f64,
    assignment: &DihedralAssignment,
) -> Result<ConditionReport> {
    let incidence = edge_faces(scheme)?;
    let maps = face_maps(scheme)?;
    for class in &scheme.classes {
        for e in &class.edges {
            if !incidence.contains_key(e) {
                return Err(GluingError::UnknownEdge(e.clone()));
            }
        }
    }
    for e in incidence.keys() {
        if !assignment.contains_key(e) {
            return Err(GluingError::MissingAssignment(e.clone()));
        }
    }

    let orbits = derive_edge_orbits(scheme)?;
    let orbits_match_declared = orbits == declared_partition(scheme);
    let orbit_of: HashMap<&Edge, usize> = orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |e| (e, i)))
        .collect();
    let orbit_angle: Vec<f64> = orbits
        .iter()
        .map(|o| o.iter().map(|e| assignment[e]).sum())
        .collect();

    let condition1 = edge_cycles(scheme, &maps, &incidence, &orbits);

    let mut class_sums = Vec::new();
    let mut over = Vec::new();
    for class in &scheme.classes {
        let sum: f64 = class.edges.iter().map(|e| assignment[e]).sum();
        if sum > TAU + ANGLE_TOL {
            over.push(format!("class {} sums to {sum}", join_edges(&class.edges)));
        }
        class_sums.push(ClassSum {
            role: class.role,
            edges: class.edges.clone(),
            sum,
            expected: if class.role.is_singular() { psi } else { TAU },
        });
    }
    let condition2 = Condition::from_failures(over, "every edge class has cone angle <= 2π");

    let (condition3, condition4, vertex_links) = if scheme.provisional {
        (
            Condition::skipped("provisional scheme: vertex data incomplete"),
            Condition::skipped("provisional scheme: vertex data incomplete"),
            Vec::new(),
        )
    } else {
        vertex_conditions(scheme, &maps, &orbit_of, &orbit_angle)
    };

    Ok(ConditionReport {
        scheme: scheme.name.clone(),
        psi,
        conditions: [condition1, condition2, condition3, condition4],
        class_sums,
        vertex_links,
        orbits_match_declared,
    })
}

fn join_edges(edges: &[Edge]) -> String {
    edges.iter().map(Edge::token).collect::<Vec<_>>().join(",")
}

/// Directed-edge identifications: `(u,v) ~ (φu, φv)` for every pairing.
fn directed_classes(scheme: &GluingScheme, maps: &FaceMaps) -> (Interner<Directed>, UnionFind) {
    let mut ids = Interner::new();
    for face in &scheme.faces {
        for (u, v) in face.directed_edges() {
            ids.id(&(u.to_owned(), v.to_owned()));
            ids.id(&(v.to_owned(), u.to_owned()));
        }
    }
    let mut uf = UnionFind::new(ids.keys.len());
    for (i, face) in scheme.faces.iter().enumerate() {
        let map = &maps.partner[i].1;
        for (u, v) in face.directed_edges() {
            let (fu, fv) = (map[u].clone(), map[v].clone());
            let a = ids.id(&(u.to_owned(), v.to_owned()));
            let b = ids.id(&(fu.clone(), fv.clone()));
            uf.union(a, b);
            let a = ids.id(&(v.to_owned(), u.to_owned()));
            let b = ids.id(&(fv, fu));
            uf.union(a, b);
        }
    }
    (ids, uf)
}

/// Condition 1: walk the wedge cycle of each orbit.
fn edge_cycles(
    scheme: &GluingScheme,
    maps: &FaceMaps,
    incidence: &BTreeMap<Edge, Vec<usize>>,
    orbits: &[Vec<Edge>],
) -> Condition {
    let mut failures = Vec::new();

    let (mut ids, mut uf) = directed_classes(scheme, maps);
    for e in incidence.keys() {
        let (u, v) = e.endpoints();
        let a = ids.id(&(u.to_owned(), v.to_owned()));
        let b = ids.id(&(v.to_owned(), u.to_owned()));
        if uf.find(a) == uf.find(b) {
            failures.push(format!("edge {e} is identified with its inverse"));
        }
    }

    for orbit in orbits {
        let start_edge = &orbit[0];
        let (u0, v0) = start_edge.endpoints();
        let start: Directed = (u0.to_owned(), v0.to_owned());
        let start_face = incidence[start_edge][0];
        let (mut dir, mut exit) = (start.clone(), start_face);
        let mut visited: Vec<Edge> = Vec::new();
        let mut closed = false;
        for _ in 0..=2 * orbit.len() {
            visited.push(Edge::new(&dir.0, &dir.1));
            let (target, map) = &maps.partner[exit];
            let image: Directed = (map[&dir.0].clone(), map[&dir.1].clone());
            let image_edge = Edge::new(&image.0, &image.1);
            let faces = &incidence[&image_edge];
            let next = if faces[0] == *target {
                faces[1]
            } else {
                faces[0]
            };
            dir = image;
            exit = next;
            if image_edge == *start_edge && exit == start_face {
                if dir != start {
                    failures.push(format!("edge cycle of {start_edge} returns reversed"));
                }
                closed = true;
                break;
            }
        }
        let mut seen = visited.clone();
        seen.sort();
        seen.dedup();
        if !closed {
            failures.push(format!("edge cycle of {start_edge} does not close"));
        } else if seen.len() != visited.len() || seen != *orbit {
            failures.push(format!(
                "wedges around {} do not form a single cycle",
                join_edges(orbit)
            ));
        }
    }
    Condition::from_failures(
        failures,
        "edge cycles are cyclic and orientation-preserving",
    )
}

/// Conditions 3 and 4 from the combinatorial vertex links.
fn vertex_conditions(
    scheme: &GluingScheme,
    maps: &FaceMaps,
    orbit_of: &HashMap<&Edge, usize>,
    orbit_angle: &[f64],
) -> (Condition, Condition, Vec<VertexLink>) {
    let mut vertex_ids: Interner<String> = Interner::new();
    for face in &scheme.faces {
        for v in &face.vertices {
            vertex_ids.id(v);
        }
    }
    let mut vuf = UnionFind::new(vertex_ids.keys.len());
    for (i, face) in scheme.faces.iter().enumerate() {
        for v in &face.vertices {
            let a = vertex_ids.id(v);
            let b = vertex_ids.id(&maps.partner[i].1[v]);
            vuf.union(a, b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, v) in vertex_ids.keys.iter().enumerate() {
        classes.entry(vuf.find(i)).or_default().push(v.clone());
    }

    let (ids, mut duf) = directed_classes(scheme, maps);
    let mut links = Vec::new();
    let (mut fail3, mut fail4) = (Vec::new(), Vec::new());
    for members in classes.values() {
        let mut members = members.clone();
        members.sort();
        let in_class = |v: &str| members.iter().any(|m| m == v);
        // Link vertices: classes of edge-ends at the vertex class.
        let mut ends: BTreeMap<usize, Edge> = BTreeMap::new();
        let mut corners = 0usize;
        for face in &scheme.faces {
            for (u, v) in face.directed_edges() {
                for (a, b) in [(u, v), (v, u)] {
                    if in_class(a) {
                        let id = ids.index[&(a.to_owned(), b.to_owned())];
                        ends.insert(duf.find(id), Edge::new(a, b));
                    }
                }
            }
            corners += face.vertices.iter().filter(|v| in_class(v)).count();
        }
        let euler = ends.len() as i64 - (corners / 2) as i64 + members.len() as i64;
        if !corners.is_multiple_of(2) || euler != 2 {
            fail3.push(format!(
                "link of {{{}}} has Euler characteristic {euler}",
                members.join(",")
            ));
        }
        let singular: Vec<f64> = ends
            .values()
            .map(|e| orbit_angle[orbit_of[e]])
            .filter(|a| (a - TAU).abs() > ANGLE_TOL)
            .collect();
        match singular.as_slice() {
            [] => {}
            [a, b] if (a - b).abs() <= ANGLE_TOL => {}
            other => fail4.push(format!(
                "vertex class {{{}}} has singular cone angles {:?}",
                members.join(","),
                other
            )),
        }
        links.push(VertexLink {
            vertices: members,
            euler_characteristic: euler,
            singular_cone_angles: singular,
        });
    }
    (
        Condition::from_failures(fail3, "every vertex link is a sphere"),
        Condition::from_failures(fail4, "singular edges meet vertices in equal-angle pairs"),
        links,
    )
}

impl GluingScheme {
    /// Parse the plain-text scheme format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scheme = GluingScheme {
            name: String::new(),
            provisional: false,
            faces: Vec::new(),
            pairings: Vec::new(),
            classes: Vec::new(),
        };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut tokens = line.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let rest: Vec<&str> = tokens.collect();
            let err = |message: String| GluingError::Parse {
                line: n + 1,
                message,
            };
            match keyword {
                "NAME" => match rest.as_slice() {
                    [name] => scheme.name = (*name).to_owned(),
                    _ => return Err(err("NAME takes one token".into())),
                },
                "PROVISIONAL" => scheme.provisional = true,
                "FACE" => match rest.split_first() {
                    Some((name, verts)) if !verts.is_empty() => {
                        scheme.faces.push(Face::new(name, verts))
                    }
                    _ => return Err(err("FACE needs a name and vertices".into())),
                },
                "PAIR" => match rest.as_slice() {
                    [s, t] => scheme.pairings.push(FacePairing {
                        source: (*s).to_owned(),
                        target: (*t).to_owned(),
                    }),
                    _ => return Err(err("PAIR takes two face names".into())),
                },
                "CLASS" => {
                    let Some((role, edges)) = rest.split_first() else {
                        return Err(err("CLASS needs a role".into()));
                    };
                    let role = EdgeRole::from_token(role)
                        .ok_or_else(|| err(format!("unknown role {role}")))?;
                    let edges = edges
                        .iter()
                        .map(|t| Edge::parse_token(t).ok_or_else(|| err(format!("bad edge {t}"))))
                        .collect::<Result<Vec<_>>>()?;
                    if edges.is_empty() {
                        return Err(err("CLASS needs at least one edge".into()));
                    }
                    scheme.classes.push(EdgeClass { role, edges });
                }
                other => return Err(err(format!("unknown keyword {other}"))),
            }
        }
        Ok(scheme)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(out, "NAME {}", self.name);
        }
        if self.provisional {
            out.push_str("PROVISIONAL\n");
        }
        for f in &self.faces {
            let _ = writeln!(out, "FACE {} {}", f.name, f.vertices.join(" "));
        }
        for p in &self.pairings {
            let _ = writeln!(out, "PAIR {} {}", p.source, p.target);
        }
        for c in &self.classes {
            let edges: Vec<String> = c.edges.iter().map(Edge::token).collect();
            let _ = writeln!(out, "CLASS {} {}", c.role.token(), edges.join(" "));
        }
        out
    }
}
