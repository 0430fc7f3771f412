//! The two monohedral base complexes: the barycentric subdivision of the
//! octahedron (`BO`) and its flip modification (`FBO`). Coordinates are
//! exact and each vertex carries its rotation of faces.
//! Also derives, per edge class, the template of removable units and the
//! parity system that keeps every vertex at even degree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Mat3, QSqrt2, Vec3};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    BO,
    FBO,
}

impl Base {
    pub const ALL: [Base; 2] = [Base::BO, Base::FBO];

    /// Prefix used in record labels (`B`, `FB`).
    pub fn label_prefix(self) -> &'static str {
        match self {
            Base::BO => "B",
            Base::FBO => "FB",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::BO => "BO",
            Base::FBO => "FBO",
        })
    }
}

impl FromStr for Base {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bo" => Ok(Base::BO),
            "fbo" => Ok(Base::FBO),
            _ => Err(Error::Parse(format!("unknown base {s:?}"))),
        }
    }
}

/// Edge class, named after the opposite corner of the Möbius triangle:
/// `a` is opposite α (T–M), `b` opposite β (S–M), `c` opposite γ (S–T).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    A,
    B,
    C,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 3] = [EdgeClass::A, EdgeClass::B, EdgeClass::C];

    pub fn letter(self) -> char {
        match self {
            EdgeClass::A => 'a',
            EdgeClass::B => 'b',
            EdgeClass::C => 'c',
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for EdgeClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(EdgeClass::A),
            "b" | "B" => Ok(EdgeClass::B),
            "c" | "C" => Ok(EdgeClass::C),
            _ => Err(Error::Parse(format!("unknown edge class {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    T,
    S,
    M,
}

/// Corner role of a vertex within one face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    Alpha,
    Beta,
    Gamma,
}

impl Corner {
    pub fn angle(self) -> Angle {
        match self {
            Corner::Alpha => Angle::new(1, 4),
            Corner::Beta => Angle::new(1, 3),
            Corner::Gamma => Angle::new(1, 2),
        }
    }
}

/// An angle as an exact rational multiple of π.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Angle(pub Rational64);

impl Angle {
    pub fn new(num: i64, den: i64) -> Self {
        Self(Rational64::new(num, den))
    }
    pub fn pi() -> Self {
        Self::new(1, 1)
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle(self.0 + o.0)
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::default(), |a, b| a + b)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

pub type VertexId = usize;
pub type FaceId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub label: String,
    pub kind: VertexKind,
    pub coord: Vec3,
}

/// A Möbius triangle; `corners` is `[α, β, γ]`.
#[derive(Clone, Debug)]
pub struct Face {
    pub corners: [VertexId; 3],
    pub chirality: Chirality,
}

impl Face {
    pub fn corner_of(&self, v: VertexId) -> Option<Corner> {
        match self.corners.iter().position(|&c| c == v)? {
            0 => Some(Corner::Alpha),
            1 => Some(Corner::Beta),
            _ => Some(Corner::Gamma),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub class: EdgeClass,
    pub faces: [FaceId; 2],
}

impl Edge {
    pub fn other_end(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug)]
pub struct BaseComplex {
    pub base: Base,
    pub vertices: Vec<Vertex>,
    pub faces: Vec<Face>,
    pub edges: Vec<Edge>,
    /// Faces around each vertex in cyclic order.
    pub rotation: Vec<Vec<FaceId>>,
    /// For each vertex, the edge between `rotation[v][i]` and
    /// `rotation[v][i + 1]` (cyclically).
    pub rotation_edges: Vec<Vec<EdgeId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    label_index: HashMap<String, VertexId>,
}

fn s_coord(j: usize) -> Vec3 {
    match j {
        1 => Vec3::from_ints(0, 0, 1),
        2 => Vec3::from_ints(1, 0, 0),
        3 => Vec3::from_ints(0, 1, 0),
        4 => Vec3::from_ints(-1, 0, 0),
        5 => Vec3::from_ints(0, -1, 0),
        6 => Vec3::from_ints(0, 0, -1),
        _ => unreachable!(),
    }
}

const T_SIGNS: [[i64; 3]; 8] = [
    [1, 1, 1],
    [-1, 1, 1],
    [-1, -1, 1],
    [1, -1, 1],
    [1, 1, -1],
    [-1, 1, -1],
    [-1, -1, -1],
    [1, -1, -1],
];

/// `τ = (2√2 + 1)/7`, the scale of the octant-centre vertices.
pub fn tau() -> QSqrt2 {
    QSqrt2::new(Rational64::new(1, 7), Rational64::new(2, 7))
}

fn t_coord(i: usize) -> Vec3 {
    let [x, y, z] = T_SIGNS[i - 1];
    Vec3::from_ints(x, y, z).scale(tau())
}

/// Octahedron edges `(i, j)`, `i < j`, in label order M₁ … M₁₂.
pub fn octahedron_edges() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            if s_coord(i).dot(&s_coord(j)).is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// The S-vertices of octant `T_i`, ascending.
fn octant_s(i: usize) -> Vec<usize> {
    let t = t_coord(i);
    (1..=6).filter(|&j| s_coord(j).dot(&t).signum() > 0).collect()
}

/// The quarter-turn taking `BO` to `FBO` on the upper hemisphere.
pub fn flip_rotation() -> Mat3 {
    let h = QSqrt2::inv_sqrt2();
    let z = QSqrt2::default();
    Mat3([[h, h, z], [-h, h, z], [z, z, QSqrt2::from_int(1)]])
}

/// Sort key placing vertices in reduced-graph order: T's, then S's, then M's.
fn order_key(label: &str) -> (u8, u8, u8) {
    let primed = label.ends_with('\'');
    let digits: String = label.chars().filter(|c| c.is_ascii_digit()).collect();
    let n: u8 = digits.parse().unwrap_or(0);
    match label.as_bytes()[0] {
        b'T' => (0, n, 0),
        // S₁, S₂′…S₅′, S₂…S₅, S₆.
        b'S' => {
            let group = match (n, primed) {
                (1, _) => 0,
                (6, _) => 3,
                (_, true) => 1,
                _ => 2,
            };
            (1, group, n)
        }
        _ => (2, n, 0),
    }
}

struct RawCorner {
    label: String,
    coord: Vec3,
    corner: Corner,
}

impl BaseComplex {
    /// Builds `BO` or `FBO` with exact coordinates and verifies manifold
    /// structure, edge typing and angle sums.
    pub fn build(base: Base) -> Result<Self> {
        let m_edges = octahedron_edges();
        let m_label: HashMap<(usize, usize), usize> =
            m_edges.iter().enumerate().map(|(k, &e)| (e, k + 1)).collect();
        let rot = flip_rotation();
        let h = QSqrt2::inv_sqrt2();

        // Faces as corner triples (α, β, γ) with their labels.
        let mut raw_faces: Vec<[RawCorner; 3]> = Vec::with_capacity(48);
        for i in 1..=8 {
            let upper = T_SIGNS[i - 1][2] > 0;
            let flip = base == Base::FBO && upper;
            let place = |v: Vec3| if flip { rot.apply(&v) } else { v };
            let s_name = |j: usize| {
                if flip && (2..=5).contains(&j) {
                    format!("S{j}'")
                } else {
                    format!("S{j}")
                }
            };
            let t_name = if flip { format!("T{i}'") } else { format!("T{i}") };
            let ss = octant_s(i);
            for (x, &p) in ss.iter().enumerate() {
                for &q in &ss[x + 1..] {
                    let k = m_label[&(p, q)];
                    let m = (s_coord(p) + s_coord(q)).scale(h);
                    for s in [p, q] {
                        raw_faces.push([
                            RawCorner { label: s_name(s), coord: place(s_coord(s)), corner: Corner::Alpha },
                            RawCorner { label: t_name.clone(), coord: place(t_coord(i)), corner: Corner::Beta },
                            RawCorner { label: format!("M{k}"), coord: place(m), corner: Corner::Gamma },
                        ]);
                    }
                }
            }
        }

        // Identify vertices by exact coordinates; α/β labels win over γ labels
        // where a point plays both roles (the flipped equator).
        let mut by_coord: HashMap<Vec3, (String, VertexKind)> = HashMap::new();
        for f in &raw_faces {
            for rc in f {
                let kind = match rc.corner {
                    Corner::Alpha => VertexKind::S,
                    Corner::Beta => VertexKind::T,
                    Corner::Gamma => VertexKind::M,
                };
                let entry = by_coord.entry(rc.coord).or_insert_with(|| (rc.label.clone(), kind));
                if entry.1 == VertexKind::M && kind != VertexKind::M {
                    *entry = (rc.label.clone(), kind);
                }
            }
        }
        let mut verts: Vec<Vertex> = by_coord
            .into_iter()
            .map(|(coord, (label, kind))| Vertex { label, kind, coord })
            .collect();
        verts.sort_by_key(|v| order_key(&v.label));
        let id_of: HashMap<Vec3, VertexId> = verts.iter().enumerate().map(|(i, v)| (v.coord, i)).collect();
        let label_index: HashMap<String, VertexId> =
            verts.iter().enumerate().map(|(i, v)| (v.label.clone(), i)).collect();
        if label_index.len() != verts.len() {
            return Err(Error::Construction("duplicate vertex labels".into()));
        }

        let faces: Vec<Face> = raw_faces
            .iter()
            .map(|f| {
                let corners = [id_of[&f[0].coord], id_of[&f[1].coord], id_of[&f[2].coord]];
                let det = Vec3::triple(&f[0].coord, &f[1].coord, &f[2].coord);
                let chirality = if det.signum() > 0 { Chirality::Positive } else { Chirality::Negative };
                Face { corners, chirality }
            })
            .collect();

        // Edges: the side opposite each corner.
        let mut edge_faces: BTreeMap<(VertexId, VertexId), (EdgeClass, Vec<FaceId>)> = BTreeMap::new();
        for (fid, f) in faces.iter().enumerate() {
            let [al, be, ga] = f.corners;
            for (u, v, class) in [(be, ga, EdgeClass::A), (al, ga, EdgeClass::B), (al, be, EdgeClass::C)] {
                let key = (u.min(v), u.max(v));
                let e = edge_faces.entry(key).or_insert((class, Vec::new()));
                if e.0 != class {
                    return Err(Error::Construction(format!(
                        "edge {}-{} typed both {} and {}",
                        verts[u].label, verts[v].label, e.0, class
                    )));
                }
                e.1.push(fid);
            }
        }
        let mut edges = Vec::with_capacity(edge_faces.len());
        let mut edge_index = HashMap::new();
        for ((u, v), (class, fs)) in edge_faces {
            if fs.len() != 2 {
                return Err(Error::Construction(format!(
                    "edge {}-{} has {} faces",
                    verts[u].label,
                    verts[v].label,
                    fs.len()
                )));
            }
            edge_index.insert((u, v), edges.len());
            edges.push(Edge { ends: [u, v], class, faces: [fs[0], fs[1]] });
        }

        let mut cx = BaseComplex {
            base,
            vertices: verts,
            faces,
            edges,
            rotation: Vec::new(),
            rotation_edges: Vec::new(),
            edge_index,
            label_index,
        };
        cx.build_rotation()?;
        cx.check_angle_sums()?;
        Ok(cx)
    }

    /// Chains the faces around each vertex through shared edges.
    fn build_rotation(&mut self) -> Result<()> {
        let n = self.vertices.len();
        let mut incident_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for (eid, e) in self.edges.iter().enumerate() {
            incident_edges[e.ends[0]].push(eid);
            incident_edges[e.ends[1]].push(eid);
        }
        let mut rotation = Vec::with_capacity(n);
        let mut rotation_edges = Vec::with_capacity(n);
        for v in 0..n {
            let inc = &incident_edges[v];
            let start_edge = *inc.iter().min().ok_or_else(|| Error::Construction("isolated vertex".into()))?;
            let mut faces = Vec::new();
            let mut seq = Vec::new();
            let mut cur_edge = start_edge;
            let mut cur_face = self.edges[start_edge].faces[0];
            loop {
                faces.push(cur_face);
                // The other edge of `cur_face` at `v`.
                let next_edge = inc
                    .iter()
                    .copied()
                    .find(|&e| e != cur_edge && self.edges[e].faces.contains(&cur_face))
                    .ok_or_else(|| Error::Construction(format!("broken fan at {}", self.vertices[v].label)))?;
                seq.push(next_edge);
                let ef = self.edges[next_edge].faces;
                let next_face = if ef[0] == cur_face { ef[1] } else { ef[0] };
                cur_edge = next_edge;
                cur_face = next_face;
                if cur_edge == start_edge {
                    break;
                }
                if faces.len() > inc.len() {
                    return Err(Error::Construction(format!("non-manifold at {}", self.vertices[v].label)));
                }
            }
            if faces.len() != inc.len() {
                return Err(Error::Construction(format!(
                    "fan at {} covers {} of {} faces",
                    self.vertices[v].label,
                    faces.len(),
                    inc.len()
                )));
            }
            rotation.push(faces);
            rotation_edges.push(seq);
        }
        self.rotation = rotation;
        self.rotation_edges = rotation_edges;
        Ok(())
    }

    fn check_angle_sums(&self) -> Result<()> {
        for v in 0..self.vertices.len() {
            let total: Angle = self.corner_angles(v).into_iter().sum();
            if total != Angle::new(2, 1) {
                return Err(Error::Construction(format!(
                    "angle sum {total} at {}",
                    self.vertices[v].label
                )));
            }
        }
        Ok(())
    }

    /// Corner angles at `v` in rotation order.
    pub fn corner_angles(&self, v: VertexId) -> Vec<Angle> {
        self.rotation[v]
            .iter()
            .map(|&f| self.faces[f].corner_of(v).expect("incident face").angle())
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    /// Vertices that survive into the reduced graph (T's and S's), in order.
    pub fn reduced_vertices(&self) -> Vec<VertexId> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].kind != VertexKind::M)
            .collect()
    }

    pub fn edges_at(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.rotation_edges[v].iter().copied()
    }

    pub fn class_count(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.class == class).count()
    }

    /// Whether the two faces flanking `e` have opposite chirality.
    pub fn flanks_are_mirror(&self, e: EdgeId) -> bool {
        let [f, g] = self.edges[e].faces;
        self.faces[f].chirality != self.faces[g].chirality
    }

    /// Debug dump as JSON: vertices with exact coordinates, faces, edges.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct V<'a> {
            label: &'a str,
            kind: VertexKind,
            coord: [String; 3],
        }
        #[derive(Serialize)]
        struct F<'a> {
            alpha: &'a str,
            beta: &'a str,
            gamma: &'a str,
            chirality: Chirality,
        }
        #[derive(Serialize)]
        struct E<'a> {
            ends: [&'a str; 2],
            class: EdgeClass,
            faces: [FaceId; 2],
        }
        let l = |v: VertexId| self.vertices[v].label.as_str();
        serde_json::json!({
            "base": self.base,
            "vertices": self.vertices.iter().map(|v| V {
                label: &v.label,
                kind: v.kind,
                coord: v.coord.0.map(|c| c.to_string()),
            }).collect::<Vec<_>>(),
            "faces": self.faces.iter().map(|f| F {
                alpha: l(f.corners[0]),
                beta: l(f.corners[1]),
                gamma: l(f.corners[2]),
                chirality: f.chirality,
            }).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| E {
                ends: [l(e.ends[0]), l(e.ends[1])],
                class: e.class,
                faces: e.faces,
            }).collect::<Vec<_>>(),
        })
    }
}

/// One removable unit: a single c-edge, or a pair of a-/b-edges through a
/// midpoint vertex. A unit is either wholly present or wholly removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeUnit {
    pub class: EdgeClass,
    pub edges: Vec<EdgeId>,
    /// Endpoints in the reduced graph (the midpoint collapsed away).
    pub key: (VertexId, VertexId),
    pub midpoint: Option<VertexId>,
}

/// `Σ_{i ∈ mask} x_i ≡ rhs (mod 2)` at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityRow {
    pub vertex: VertexId,
    pub mask: u32,
    pub rhs: bool,
}

#[derive(Clone, Debug)]
pub struct EdgeTemplate {
    pub base: Base,
    pub class: EdgeClass,
    pub units: Vec<EdgeUnit>,
    /// Edges of this class that can never be removed.
    pub fixed_edges: Vec<EdgeId>,
    /// One row per vertex touched by a unit or with odd fixed degree.
    pub parity_rows: Vec<ParityRow>,
}

impl EdgeTemplate {
    pub fn derive(cx: &BaseComplex, class: EdgeClass) -> Self {
        let mut units: Vec<EdgeUnit> = Vec::new();
        let mut fixed: Vec<EdgeId> = Vec::new();
        let class_edges: Vec<EdgeId> = (0..cx.edges.len()).filter(|&e| cx.edges[e].class == class).collect();
        match class {
            EdgeClass::C => {
                for &e in &class_edges {
                    let [u, v] = cx.edges[e].ends;
                    units.push(EdgeUnit { class, edges: vec![e], key: (u.min(v), u.max(v)), midpoint: None });
                }
            }
            EdgeClass::A | EdgeClass::B => {
                let mut paired = vec![false; cx.edges.len()];
                for (m, vert) in cx.vertices.iter().enumerate() {
                    if vert.kind != VertexKind::M {
                        continue;
                    }
                    let at_m: Vec<EdgeId> = cx.edges_at(m).filter(|&e| cx.edges[e].class == class).collect();
                    if at_m.len() != 2 {
                        continue;
                    }
                    let u = cx.edges[at_m[0]].other_end(m);
                    let v = cx.edges[at_m[1]].other_end(m);
                    for &e in &at_m {
                        paired[e] = true;
                    }
                    units.push(EdgeUnit { class, edges: at_m, key: (u.min(v), u.max(v)), midpoint: Some(m) });
                }
                // Edges not through a midpoint: removing one alone would leave
                // a vertex inside a merged tile's side.
                fixed.extend(class_edges.iter().copied().filter(|&e| !paired[e]));
            }
        }
        // Chirality gate: merging equal-chirality faces yields a glide image.
        units.retain(|u| {
            if u.edges.iter().all(|&e| cx.flanks_are_mirror(e)) {
                true
            } else {
                fixed.extend(u.edges.iter().copied());
                false
            }
        });
        units.sort_by_key(|u| u.key);
        fixed.sort_unstable();

        let mut parity_rows = Vec::new();
        for v in 0..cx.vertices.len() {
            let mut mask = 0u32;
            let mut unit_edges_at_v = 0usize;
            for (i, u) in units.iter().enumerate() {
                let mult = u.edges.iter().filter(|&&e| cx.edges[e].ends.contains(&v)).count();
                unit_edges_at_v += mult;
                if mult % 2 == 1 {
                    mask |= 1 << (units.len() - 1 - i);
                }
            }
            let fixed_degree = cx.degree(v) - unit_edges_at_v;
            let rhs = fixed_degree % 2 == 1;
            if mask != 0 || rhs {
                parity_rows.push(ParityRow { vertex: v, mask, rhs });
            }
        }
        EdgeTemplate { base: cx.base, class, units, fixed_edges: fixed, parity_rows }
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// Bit of unit `i` inside a packed assignment (unit 0 is most significant).
    pub fn bit(&self, i: usize) -> u32 {
        1 << (self.units.len() - 1 - i)
    }

    pub fn unit_label(&self, cx: &BaseComplex, i: usize) -> String {
        let (u, v) = self.units[i].key;
        format!("{}{}", cx.vertices[u].label, cx.vertices[v].label)
    }
}

/// The T/S graph with midpoint paths collapsed: blocks `[M_T, M_TS; M_TSᵀ, M_S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub labels: Vec<String>,
    pub n_t: usize,
    /// Row bitsets; bit `j` of row `i` set iff `i ~ j`.
    pub rows: Vec<u32>,
}

impl ReducedGraph {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.adjacent(i, j) as u8).collect())
            .collect()
    }

    pub fn t_block(&self) -> Vec<Vec<u8>> {
        let m = self.matrix();
        m[..self.n_t].iter().map(|r| r[..self.n_t].to_vec()).collect()
    }

    pub fn ts_block(&self) -> Vec<Vec<u8>> {
        let m = self.matrix();
        m[..self.n_t].iter().map(|r| r[self.n_t..].to_vec()).collect()
    }

    pub fn s_block(&self) -> Vec<Vec<u8>> {
        let m = self.matrix();
        m[self.n_t..].iter().map(|r| r[self.n_t..].to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| self.adjacent(i, j) == self.adjacent(j, i)))
    }
}

/// Builds the reduced graph for a packed assignment (`bits`) over `template`.
pub fn reduced_graph(cx: &BaseComplex, template: &EdgeTemplate, bits: u32) -> ReducedGraph {
    let verts = cx.reduced_vertices();
    let pos: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut rows = vec![0u32; n];
    let mut set = |u: VertexId, v: VertexId, on: bool| {
        let (i, j) = (pos[&u], pos[&v]);
        if on {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        } else {
            rows[i] &= !(1 << j);
            rows[j] &= !(1 << i);
        }
    };
    for e in &cx.edges {
        let [u, v] = e.ends;
        let ku = cx.vertices[u].kind;
        let kv = cx.vertices[v].kind;
        if ku != VertexKind::M && kv != VertexKind::M {
            set(u, v, true);
        }
    }
    for (m, vert) in cx.vertices.iter().enumerate() {
        if vert.kind != VertexKind::M {
            continue;
        }
        for class in [EdgeClass::A, EdgeClass::B] {
            let ends: Vec<VertexId> = cx
                .edges_at(m)
                .filter(|&e| cx.edges[e].class == class)
                .map(|e| cx.edges[e].other_end(m))
                .collect();
            if let [u, v] = ends[..] {
                set(u, v, true);
            }
        }
    }
    for (i, unit) in template.units.iter().enumerate() {
        if bits & template.bit(i) == 0 {
            set(unit.key.0, unit.key.1, false);
        }
    }
    ReducedGraph {
        labels: verts.iter().map(|&v| cx.vertices[v].label.clone()).collect(),
        n_t: verts.iter().filter(|&&v| cx.vertices[v].kind == VertexKind::T).count(),
        rows,
    }
}
