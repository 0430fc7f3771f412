//! Parity solving and the merge of removed units into prototiles.
//! Also hosts the folding-condition verifier.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Angle, BaseComplex, EdgeClass, EdgeId, EdgeTemplate, FaceId, VertexId, VertexKind};
use crate::error::{Error, Result};

/// Presence bits over a template's units; unit 0 is the most significant
/// bit, so numeric order is lexicographic order of the bit sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: u32,
    len: u8,
}

impl Assignment {
    pub fn new(bits: u32, len: usize) -> Self {
        debug_assert!(len <= 32 && (len == 32 || bits >> len == 0));
        Self { bits, len: len as u8 }
    }

    pub fn all_present(len: usize) -> Self {
        Self::new(full_mask(len), len)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_present(&self, unit: usize) -> bool {
        self.bits >> (self.len() - 1 - unit) & 1 == 1
    }

    pub fn present_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn removed_count(&self) -> usize {
        self.len() - self.present_count()
    }

    /// `"1011…"`, unit 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len()).map(|i| if self.is_present(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        if s.len() > 32 || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Parse(format!("bad assignment bits {s:?}")));
        }
        let bits = s.chars().fold(0u32, |acc, c| acc << 1 | (c == '1') as u32);
        Ok(Self::new(bits, s.len()))
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({})", self.to_bit_string())
    }
}

pub fn full_mask(len: usize) -> u32 {
    if len == 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

pub fn satisfies_parity(template: &EdgeTemplate, bits: u32) -> bool {
    template
        .parity_rows
        .iter()
        .all(|r| ((bits & r.mask).count_ones() % 2 == 1) == r.rhs)
}

/// All assignments satisfying every parity row, ascending.
///
/// Depth-first over units (most significant first) with a row checked as
/// soon as its last unit is decided.
pub fn solve_parity(template: &EdgeTemplate) -> Vec<Assignment> {
    let n = template.len();
    assert!(n <= 24, "template too large for exhaustive solving");
    // Rows closing at unit i: rows whose lowest-order (last) unit is i.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (r, row) in template.parity_rows.iter().enumerate() {
        if row.mask == 0 {
            closing[0].push(r);
        } else {
            let last = n - 1 - row.mask.trailing_zeros() as usize;
            closing[last + 1].push(r);
        }
    }
    // A row with an empty mask and odd right-hand side can never hold.
    if closing[0].iter().any(|&r| template.parity_rows[r].rhs) {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(t: &EdgeTemplate, closing: &[Vec<usize>], i: usize, bits: u32, out: &mut Vec<Assignment>) {
        let n = t.len();
        let ok = closing[i].iter().all(|&r| {
            let row = &t.parity_rows[r];
            ((bits & row.mask).count_ones() % 2 == 1) == row.rhs
        });
        if !ok {
            return;
        }
        if i == n {
            out.push(Assignment::new(bits, n));
            return;
        }
        let b = t.bit(i);
        rec(t, closing, i + 1, bits, out);
        rec(t, closing, i + 1, bits | b, out);
    }
    rec(template, &closing, 0, 0, &mut out);
    out
}

/// Brute-force oracle: scans all `2^n` vectors against every parity row.
pub fn brute_force_scan(template: &EdgeTemplate) -> Vec<Assignment> {
    let n = template.len();
    (0..=full_mask(n))
        .filter(|&bits| satisfies_parity(template, bits))
        .map(|bits| Assignment::new(bits, n))
        .collect()
}

/// Number of solutions by the brute-force scan, without materialising them.
pub fn brute_force_count(template: &EdgeTemplate) -> usize {
    (0..=full_mask(template.len())).filter(|&b| satisfies_parity(template, b)).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    /// The Möbius triangle.
    #[serde(rename = "triangle")]
    Triangle,
    /// Two triangles glued along a c-edge.
    #[serde(rename = "kite")]
    Kite,
    /// Two triangles glued along a b-edge: `△āc²`.
    #[serde(rename = "iso_ac")]
    IsoAc,
    /// Two triangles glued along an a-edge: `△b̄c²`.
    #[serde(rename = "iso_bc")]
    IsoBc,
}

impl TileKind {
    /// The second prototile produced by removing edges of `class`.
    pub fn second_for(class: EdgeClass) -> TileKind {
        match class {
            EdgeClass::C => TileKind::Kite,
            EdgeClass::B => TileKind::IsoAc,
            EdgeClass::A => TileKind::IsoBc,
        }
    }

    /// Sorted corner angles of the prototile.
    pub fn corner_angles(self) -> Vec<Angle> {
        let (al, be, ga) = (Angle::new(1, 4), Angle::new(1, 3), Angle::new(1, 2));
        let mut v = match self {
            TileKind::Triangle => vec![al, be, ga],
            TileKind::Kite => vec![al + al, be + be, ga, ga],
            TileKind::IsoAc => vec![al + al, be, be],
            TileKind::IsoBc => vec![be + be, al, al],
        };
        v.sort();
        v
    }

    pub fn tag(self) -> &'static str {
        match self {
            TileKind::Triangle => "triangle",
            TileKind::Kite => "kite",
            TileKind::IsoAc => "iso_ac",
            TileKind::IsoBc => "iso_bc",
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct Tile {
    pub kind: TileKind,
    pub faces: Vec<FaceId>,
    /// Corners (vertex, angle) with angle < π, ordered by vertex id.
    pub corners: Vec<(VertexId, Angle)>,
}

#[derive(Clone, Debug)]
pub struct TilingVertex {
    pub vertex: VertexId,
    /// Angles around the vertex in cyclic order, one per incident tile corner.
    pub angles: Vec<Angle>,
    pub tiles: Vec<usize>,
}

impl TilingVertex {
    pub fn degree(&self) -> usize {
        self.angles.len()
    }

    /// Sums of the even- and odd-position angles.
    pub fn alternate_sums(&self) -> (Angle, Angle) {
        let even = self.angles.iter().step_by(2).copied().sum();
        let odd = self.angles.iter().skip(1).step_by(2).copied().sum();
        (even, odd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Census {
    pub n_triangle: usize,
    pub n_second: usize,
}

#[derive(Clone, Debug)]
pub struct Tiling {
    pub class: EdgeClass,
    pub assignment: Assignment,
    pub tiles: Vec<Tile>,
    /// Surviving vertices (flat ones removed).
    pub vertices: Vec<TilingVertex>,
    /// Midpoints flattened to straight angles and deleted.
    pub flat: Vec<VertexId>,
    pub edge_count: usize,
    pub census: Census,
    labels: Vec<String>,
}

impl Tiling {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count as i64 + self.tiles.len() as i64
    }

    pub fn second_kind(&self) -> TileKind {
        TileKind::second_for(self.class)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }
}

fn removed_edges(template: &EdgeTemplate, asg: &Assignment) -> Vec<EdgeId> {
    (0..template.len())
        .filter(|&i| !asg.is_present(i))
        .flat_map(|i| template.units[i].edges.iter().copied())
        .collect()
}

/// Merges the faces flanking every removed unit into the class prototile,
/// deletes flattened midpoints and returns the resulting tiling.
pub fn apply_assignment(cx: &BaseComplex, template: &EdgeTemplate, asg: &Assignment) -> Result<Tiling> {
    if asg.len() != template.len() {
        return Err(Error::LengthMismatch { expected: template.len(), got: asg.len() });
    }
    let removed = removed_edges(template, asg);
    let mut is_removed = vec![false; cx.edges.len()];
    let mut parent: Vec<usize> = (0..cx.faces.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &e in &removed {
        let [f, g] = cx.edges[e].faces;
        if cx.faces[f].chirality == cx.faces[g].chirality {
            return Err(Error::PrototileCongruence(f, g));
        }
        is_removed[e] = true;
        let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
        parent[rf] = rg;
    }

    let mut tile_of_root: HashMap<usize, usize> = HashMap::new();
    let mut tile_faces: Vec<Vec<FaceId>> = Vec::new();
    let mut tile_of_face = vec![0usize; cx.faces.len()];
    for f in 0..cx.faces.len() {
        let r = find(&mut parent, f);
        let t = *tile_of_root.entry(r).or_insert_with(|| {
            tile_faces.push(Vec::new());
            tile_faces.len() - 1
        });
        tile_faces[t].push(f);
        tile_of_face[f] = t;
    }
    let second = TileKind::second_for(template.class);
    let kinds: Vec<TileKind> = tile_faces
        .iter()
        .map(|fs| match fs.len() {
            1 => Ok(TileKind::Triangle),
            2 => Ok(second),
            n => Err(Error::Construction(format!("{n} faces merged into one tile"))),
        })
        .collect::<Result<_>>()?;

    let mut corners: Vec<Vec<(VertexId, Angle)>> = vec![Vec::new(); tile_faces.len()];
    let mut vertices = Vec::new();
    let mut flat = Vec::new();
    for v in 0..cx.vertices.len() {
        let ring = local_ring(cx, v, &is_removed, |f| tile_of_face[f]);
        let angles: Vec<Angle> = ring.iter().map(|&(_, a)| a).collect();
        let tiles: Vec<usize> = ring.iter().map(|&(t, _)| t).collect();
        for &(t, a) in &ring {
            if a < Angle::pi() {
                corners[t].push((v, a));
            }
        }
        if angles.len() == 2 && angles.iter().all(|&a| a == Angle::pi()) {
            flat.push(v);
        } else {
            vertices.push(TilingVertex { vertex: v, angles, tiles });
        }
    }

    let tiles: Vec<Tile> = tile_faces
        .into_iter()
        .zip(kinds)
        .zip(corners)
        .map(|((faces, kind), corners)| Tile { kind, faces, corners })
        .collect();
    for t in &tiles {
        let mut got: Vec<Angle> = t.corners.iter().map(|&(_, a)| a).collect();
        got.sort();
        if got != t.kind.corner_angles() {
            return Err(Error::Construction(format!("tile {:?} has corner angles {got:?}", t.kind)));
        }
    }
    let n_second = tiles.iter().filter(|t| t.kind != TileKind::Triangle).count();
    let census = Census { n_triangle: tiles.len() - n_second, n_second };
    let edge_count = cx.edges.len() - removed.len() - flat.len();
    Ok(Tiling {
        class: template.class,
        assignment: *asg,
        tiles,
        vertices,
        flat,
        edge_count,
        census,
        labels: cx.vertices.iter().map(|v| v.label.clone()).collect(),
    })
}

/// Walks the rotation at `v`, fusing consecutive faces joined by a removed
/// edge into one corner. Returns `(tile, angle)` in cyclic order.
fn local_ring(
    cx: &BaseComplex,
    v: VertexId,
    is_removed: &[bool],
    tile_of_face: impl Fn(FaceId) -> usize,
) -> Vec<(usize, Angle)> {
    let faces = &cx.rotation[v];
    let seps = &cx.rotation_edges[v];
    let n = faces.len();
    // Rotate the ring to start just after a surviving edge.
    let Some(start) = (0..n).find(|&i| !is_removed[seps[(i + n - 1) % n]]) else {
        // No surviving edge: the vertex is interior to one tile.
        let total = faces.iter().map(|&f| cx.faces[f].corner_of(v).unwrap().angle()).sum();
        return vec![(tile_of_face(faces[0]), total)];
    };
    let mut ring: Vec<(usize, Angle)> = Vec::new();
    for k in 0..n {
        let i = (start + k) % n;
        let f = faces[i];
        let a = cx.faces[f].corner_of(v).unwrap().angle();
        let prev_sep = seps[(i + n - 1) % n];
        if k > 0 && is_removed[prev_sep] {
            ring.last_mut().unwrap().1 = ring.last().unwrap().1 + a;
        } else {
            ring.push((tile_of_face(f), a));
        }
    }
    ring
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub label: String,
    pub degree: usize,
    pub even: bool,
    pub alternate_sums: (String, String),
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub vertices: Vec<VertexReport>,
    pub edge_to_edge: bool,
    pub pass: bool,
}

/// Checks the folding conditions: every vertex has even degree ≥ 4 and both
/// alternate angle sums equal π, and no vertex lies inside a tile's side.
pub fn verify_ftiling(t: &Tiling) -> VerificationReport {
    let mut reports = Vec::with_capacity(t.vertices.len());
    let mut edge_to_edge = true;
    for tv in &t.vertices {
        if tv.angles.iter().any(|&a| a >= Angle::pi()) {
            edge_to_edge = false;
        }
        let (s0, s1) = tv.alternate_sums();
        let even = tv.degree() % 2 == 0;
        let pass = even && tv.degree() >= 4 && s0 == Angle::pi() && s1 == Angle::pi();
        reports.push(VertexReport {
            label: t.label(tv.vertex).to_string(),
            degree: tv.degree(),
            even,
            alternate_sums: (s0.to_string(), s1.to_string()),
            pass,
        });
    }
    let pass = edge_to_edge && reports.iter().all(|r| r.pass);
    VerificationReport { vertices: reports, edge_to_edge, pass }
}

pub fn is_dihedral(t: &Tiling) -> bool {
    t.census.n_triangle >= 1 && t.census.n_second >= 1
}

/// The folding check compiled into per-vertex lookup tables over the local
/// unit bits, for scanning every raw assignment of a template.
pub struct FoldingChecker {
    locals: Vec<LocalTable>,
}

struct LocalTable {
    /// Global bit masks of the units touching this vertex.
    unit_bits: Vec<u32>,
    /// `pass[pattern]` for each pattern of those units.
    pass: Vec<bool>,
}

impl FoldingChecker {
    pub fn new(cx: &BaseComplex, template: &EdgeTemplate) -> Self {
        let mut locals = Vec::new();
        for v in 0..cx.vertices.len() {
            let touching: Vec<usize> = (0..template.len())
                .filter(|&i| template.units[i].edges.iter().any(|&e| cx.edges[e].ends.contains(&v)))
                .collect();
            let mut pass = Vec::with_capacity(1 << touching.len());
            for pattern in 0..1u32 << touching.len() {
                let mut is_removed = vec![false; cx.edges.len()];
                for (k, &i) in touching.iter().enumerate() {
                    if pattern >> k & 1 == 0 {
                        for &e in &template.units[i].edges {
                            is_removed[e] = true;
                        }
                    }
                }
                // Tiles are irrelevant to the local angle condition.
                let ring = local_ring(cx, v, &is_removed, |f| f);
                let angles: Vec<Angle> = ring.iter().map(|&(_, a)| a).collect();
                let ok = if angles.len() == 2 && angles.iter().all(|&a| a == Angle::pi()) {
                    cx.vertices[v].kind == VertexKind::M
                } else {
                    let tv = TilingVertex { vertex: v, angles, tiles: Vec::new() };
                    let (s0, s1) = tv.alternate_sums();
                    tv.degree() % 2 == 0
                        && tv.degree() >= 4
                        && tv.angles.iter().all(|&a| a < Angle::pi())
                        && s0 == Angle::pi()
                        && s1 == Angle::pi()
                };
                pass.push(ok);
            }
            locals.push(LocalTable { unit_bits: touching.iter().map(|&i| template.bit(i)).collect(), pass });
        }
        Self { locals }
    }

    pub fn passes(&self, bits: u32) -> bool {
        self.locals.iter().all(|l| {
            let idx = l
                .unit_bits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &b)| acc | (((bits & b) != 0) as usize) << k);
            l.pass[idx]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Base;

    fn setup(base: Base, class: EdgeClass) -> (BaseComplex, EdgeTemplate) {
        let cx = BaseComplex::build(base).unwrap();
        let t = EdgeTemplate::derive(&cx, class);
        (cx, t)
    }

    #[test]
    fn all_ones_is_a_solution_everywhere() {
        for base in Base::ALL {
            for class in EdgeClass::ALL {
                let (_, t) = setup(base, class);
                let sols = solve_parity(&t);
                assert!(sols.contains(&Assignment::all_present(t.len())), "{base} {class}");
            }
        }
    }

    #[test]
    fn solver_matches_scan_on_small_templates() {
        for base in Base::ALL {
            for class in [EdgeClass::A, EdgeClass::B] {
                let (_, t) = setup(base, class);
                assert_eq!(solve_parity(&t), brute_force_scan(&t), "{base} {class}");
            }
        }
    }

    #[test]
    fn solver_output_ascending() {
        let (_, t) = setup(Base::BO, EdgeClass::C);
        let sols = solve_parity(&t);
        assert!(sols.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bo_b_all_zero_is_cube_subdivision() {
        let (cx, t) = setup(Base::BO, EdgeClass::B);
        let zero = Assignment::new(0, t.len());
        assert!(solve_parity(&t).contains(&zero));
        let tiling = apply_assignment(&cx, &t, &zero).unwrap();
        assert_eq!(tiling.census, Census { n_triangle: 0, n_second: 24 });
        assert!(verify_ftiling(&tiling).pass);
        assert!(!is_dihedral(&tiling));
        assert_eq!(tiling.flat.len(), 12);
        assert_eq!(tiling.euler_characteristic(), 2);
    }

    #[test]
    fn base_complex_itself_verifies() {
        for base in Base::ALL {
            let (cx, t) = setup(base, EdgeClass::C);
            let tiling = apply_assignment(&cx, &t, &Assignment::all_present(t.len())).unwrap();
            assert_eq!(tiling.census, Census { n_triangle: 48, n_second: 0 });
            let rep = verify_ftiling(&tiling);
            assert!(rep.pass);
            assert!(!is_dihedral(&tiling));
            assert_eq!(tiling.euler_characteristic(), 2);
        }
    }

    #[test]
    fn sixteen_removed_c_units_give_sixteen_kites() {
        let (cx, t) = setup(Base::BO, EdgeClass::C);
        let sol = solve_parity(&t).into_iter().find(|a| a.removed_count() == 16).unwrap();
        let tiling = apply_assignment(&cx, &t, &sol).unwrap();
        assert_eq!(tiling.census, Census { n_triangle: 16, n_second: 16 });
        assert!(verify_ftiling(&tiling).pass);
        assert!(is_dihedral(&tiling));
    }

    #[test]
    fn parity_violation_fails_verification() {
        let (cx, t) = setup(Base::BO, EdgeClass::C);
        // Remove only T1S1: T1 becomes odd.
        let bits = full_mask(24) & !t.bit(0);
        let tiling = apply_assignment(&cx, &t, &Assignment::new(bits, 24)).unwrap();
        let rep = verify_ftiling(&tiling);
        assert!(!rep.pass);
        assert!(rep.vertices.iter().any(|v| !v.even));
    }

    #[test]
    fn fbo_equatorial_vertex_after_two_c_removals() {
        // At S2' (α⁴γ²) remove the two c-edges: angles α², α², γ, γ.
        let (cx, t) = setup(Base::FBO, EdgeClass::C);
        let s2p = cx.vertex_by_label("S2'").unwrap();
        let mut bits = full_mask(24);
        for i in 0..t.len() {
            let (u, v) = t.units[i].key;
            if u == s2p || v == s2p {
                bits &= !t.bit(i);
            }
        }
        let asg = Assignment::new(bits, 24);
        let tiling = apply_assignment(&cx, &t, &asg).unwrap();
        let tv = tiling.vertices.iter().find(|tv| tv.vertex == s2p).unwrap();
        let mut a = tv.angles.clone();
        a.sort();
        assert_eq!(a, [Angle::new(1, 2), Angle::new(1, 2), Angle::new(1, 2), Angle::new(1, 2)]);
        assert_eq!(tv.alternate_sums(), (Angle::pi(), Angle::pi()));
    }

    #[test]
    fn equal_chirality_merge_rejected() {
        let (cx, _) = setup(Base::FBO, EdgeClass::B);
        // Hand-built template that treats an equatorial b-edge as removable.
        let e = (0..cx.edges.len())
            .find(|&e| cx.edges[e].class == EdgeClass::B && !cx.flanks_are_mirror(e))
            .unwrap();
        let [u, v] = cx.edges[e].ends;
        let bogus = EdgeTemplate {
            base: Base::FBO,
            class: EdgeClass::B,
            units: vec![crate::complex::EdgeUnit {
                class: EdgeClass::B,
                edges: vec![e],
                key: (u, v),
                midpoint: None,
            }],
            fixed_edges: vec![],
            parity_rows: vec![],
        };
        let err = apply_assignment(&cx, &bogus, &Assignment::new(0, 1)).unwrap_err();
        assert!(matches!(err, Error::PrototileCongruence(_, _)));
    }

    #[test]
    fn length_mismatch() {
        let (cx, t) = setup(Base::BO, EdgeClass::A);
        assert!(matches!(
            apply_assignment(&cx, &t, &Assignment::new(0, 3)),
            Err(Error::LengthMismatch { expected: 12, got: 3 })
        ));
    }

    #[test]
    fn checker_agrees_with_full_verification_on_small_cases() {
        for base in Base::ALL {
            for class in [EdgeClass::A, EdgeClass::B] {
                let (cx, t) = setup(base, class);
                let checker = FoldingChecker::new(&cx, &t);
                for bits in 0..=full_mask(t.len()) {
                    let asg = Assignment::new(bits, t.len());
                    let full = apply_assignment(&cx, &t, &asg).map(|tl| verify_ftiling(&tl).pass).unwrap();
                    assert_eq!(checker.passes(bits), full, "{base} {class} {asg:?}");
                }
            }
        }
    }

    #[test]
    fn bit_string_round_trip() {
        let a = Assignment::new(0b1011, 4);
        assert_eq!(a.to_bit_string(), "1011");
        assert_eq!(Assignment::from_bit_string("1011").unwrap(), a);
        assert!(a.is_present(0) && !a.is_present(1));
        assert!(Assignment::from_bit_string("10x").is_err());
    }
}
