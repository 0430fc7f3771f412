//! Symmetry groups acting on the base complexes and on assignments.
//! Orbits give one class per tiling up to symmetry; degree tuples get the
//! same treatment.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::{identify_group, minimal_generators, GroupId, Mat3, NamedGenerator, Naming, SymGroup, Vec3};
use crate::complex::{Base, BaseComplex, EdgeClass, EdgeTemplate, VertexId, VertexKind};
use crate::enumerate::Assignment;
use crate::error::{Error, Result};

/// The symmetry group of a base complex: `O_h` for BO, the order-16 flip
/// group for FBO.
pub fn base_group(base: Base) -> SymGroup {
    match base {
        Base::BO => SymGroup::octahedral(),
        Base::FBO => SymGroup::flip_group(),
    }
}

pub fn naming_for(base: Base) -> Naming {
    match base {
        Base::BO => Naming::Octahedral,
        Base::FBO => Naming::Flip,
    }
}

/// The vertex permutation `v ↦ g·v` induced by `g`.
///
/// Fails unless `g` maps vertices onto vertices of the same kind and edges
/// onto edges.
pub fn induce_permutation(cx: &BaseComplex, g: &Mat3) -> Result<Vec<VertexId>> {
    let by_coord: HashMap<Vec3, VertexId> = cx.vertices.iter().enumerate().map(|(i, v)| (v.coord, i)).collect();
    let fail = |detail: String| Error::NotAnAutomorphism { base: cx.base.to_string(), detail };
    let mut perm = Vec::with_capacity(cx.vertices.len());
    for v in &cx.vertices {
        let image = g.apply(&v.coord);
        let w = *by_coord
            .get(&image)
            .ok_or_else(|| fail(format!("{} maps to {image:?}, not a vertex", v.label)))?;
        if cx.vertices[w].kind != v.kind {
            return Err(fail(format!("{} maps to {} of another kind", v.label, cx.vertices[w].label)));
        }
        perm.push(w);
    }
    for e in &cx.edges {
        let [u, v] = e.ends;
        match cx.edge_between(perm[u], perm[v]) {
            Some(f) if cx.edges[f].class == e.class => {}
            _ => {
                return Err(fail(format!(
                    "edge {}{} has no image",
                    cx.vertices[u].label, cx.vertices[v].label
                )))
            }
        }
    }
    Ok(perm)
}

/// A group acting on the units of one template.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub base: Base,
    pub class: EdgeClass,
    pub group: SymGroup,
    pub vertex_perms: Vec<Vec<VertexId>>,
    /// `unit_perms[k][i]` is the image of unit `i` under element `k`.
    pub unit_perms: Vec<Vec<usize>>,
    /// Bit image of each unit bit, per element.
    bit_images: Vec<Vec<(u32, u32)>>,
    len: usize,
}

impl GroupAction {
    pub fn new(cx: &BaseComplex, template: &EdgeTemplate) -> Result<Self> {
        Self::with_group(cx, template, base_group(cx.base))
    }

    pub fn with_group(cx: &BaseComplex, template: &EdgeTemplate, group: SymGroup) -> Result<Self> {
        let key_index: HashMap<(VertexId, VertexId), usize> =
            template.units.iter().enumerate().map(|(i, u)| (u.key, i)).collect();
        let mut vertex_perms = Vec::with_capacity(group.order());
        let mut unit_perms = Vec::with_capacity(group.order());
        for g in group.elements() {
            let p = induce_permutation(cx, g)?;
            let up = template
                .units
                .iter()
                .map(|u| {
                    let (a, b) = (p[u.key.0], p[u.key.1]);
                    key_index.get(&(a.min(b), a.max(b))).copied().ok_or_else(|| Error::NotAnAutomorphism {
                        base: cx.base.to_string(),
                        detail: format!("unit {}{} leaves the template", cx.vertices[u.key.0].label, cx.vertices[u.key.1].label),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            vertex_perms.push(p);
            unit_perms.push(up);
        }
        let n = template.len();
        let bit = |i: usize| 1u32 << (n - 1 - i);
        let bit_images = unit_perms
            .iter()
            .map(|up| up.iter().enumerate().map(|(i, &j)| (bit(i), bit(j))).collect())
            .collect();
        Ok(Self { base: cx.base, class: template.class, group, vertex_perms, unit_perms, bit_images, len: n })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Image of `a` under element `k`: unit `i` present iff its preimage is.
    pub fn apply(&self, k: usize, a: &Assignment) -> Assignment {
        let bits = a.bits();
        let out = self.bit_images[k]
            .iter()
            .fold(0u32, |acc, &(from, to)| if bits & from != 0 { acc | to } else { acc });
        Assignment::new(out, self.len)
    }

    pub fn orbit(&self, a: &Assignment) -> Vec<Assignment> {
        let mut v: Vec<Assignment> = (0..self.order()).map(|k| self.apply(k, a)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The least element of the orbit.
    pub fn canonical_orbit_rep(&self, a: &Assignment) -> Assignment {
        (0..self.order()).map(|k| self.apply(k, a)).min().expect("nonempty group")
    }

    /// Indices of the elements fixing `a`.
    pub fn stabilizer(&self, a: &Assignment) -> Vec<usize> {
        (0..self.order()).filter(|&k| self.apply(k, a) == *a).collect()
    }

    pub fn stabilizer_matrices(&self, a: &Assignment) -> Vec<Mat3> {
        self.stabilizer(a).into_iter().map(|k| self.group.elements()[k]).collect()
    }
}

/// One symmetry class of tilings.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    /// Least assignment in the orbit.
    pub rep: Assignment,
    /// How many of the input assignments fall in this orbit.
    pub members: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub group: GroupId,
    pub generators: Vec<NamedGenerator>,
}

/// Groups `assignments` into orbits, ordered by representative.
pub fn dedupe_orbits(action: &GroupAction, assignments: &[Assignment]) -> Result<Vec<OrbitClass>> {
    let mut by_rep: BTreeMap<Assignment, usize> = BTreeMap::new();
    for a in assignments {
        *by_rep.entry(action.canonical_orbit_rep(a)).or_default() += 1;
    }
    by_rep
        .into_iter()
        .map(|(rep, members)| {
            let stab = action.stabilizer_matrices(&rep);
            Ok(OrbitClass {
                rep,
                members,
                orbit_size: action.orbit(&rep).len(),
                stabilizer_order: stab.len(),
                group: identify_group(&stab)?,
                generators: minimal_generators(&stab, naming_for(action.base)),
            })
        })
        .collect()
}

/// Per-T kept-unit counts `(d(T_1), …, d(T_8))` of a c-case assignment.
pub type DegreeTuple = [u8; 8];

fn t_vertices(cx: &BaseComplex) -> Vec<VertexId> {
    (0..cx.vertices.len()).filter(|&v| cx.vertices[v].kind == VertexKind::T).collect()
}

pub fn degree_tuple(cx: &BaseComplex, template: &EdgeTemplate, a: &Assignment) -> Result<DegreeTuple> {
    if template.class != EdgeClass::C {
        return Err(Error::NotDegreeCase);
    }
    let ts = t_vertices(cx);
    let mut d = [0u8; 8];
    for (i, u) in template.units.iter().enumerate() {
        if a.is_present(i) {
            let t = if cx.vertices[u.key.0].kind == VertexKind::T { u.key.0 } else { u.key.1 };
            d[ts.iter().position(|&x| x == t).ok_or(Error::NotDegreeCase)?] += 1;
        }
    }
    Ok(d)
}

/// The permutation of `T_1..T_8` (0-based) induced by element `k`.
pub fn t_permutation(cx: &BaseComplex, action: &GroupAction, k: usize) -> Vec<usize> {
    let ts = t_vertices(cx);
    ts.iter()
        .map(|&t| ts.iter().position(|&x| x == action.vertex_perms[k][t]).expect("T maps to T"))
        .collect()
}

/// `(σD)_i = D_{σ(i)}`.
pub fn act_on_tuple(sigma: &[usize], d: &DegreeTuple) -> DegreeTuple {
    std::array::from_fn(|i| d[sigma[i]])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    /// Least tuple in the class.
    pub rep: DegreeTuple,
    /// Assignments whose tuple lies in the class.
    pub assignments: usize,
    /// Distinct tuples in the class.
    pub tuples: usize,
}

/// Every tuple the T-vertex parity rows allow on their own: each entry 1 or 3.
pub fn all_degree_tuples() -> Vec<DegreeTuple> {
    (0..256u32)
        .map(|m| std::array::from_fn(|i| if m >> (7 - i) & 1 == 1 { 3 } else { 1 }))
        .collect()
}

/// Classes of degree tuples under the base group, with multiplicities.
pub fn classify_degree_tuples(
    cx: &BaseComplex,
    action: &GroupAction,
    tuples: impl IntoIterator<Item = DegreeTuple>,
) -> Vec<DegreeClass> {
    let perms: Vec<Vec<usize>> = (0..action.order()).map(|k| t_permutation(cx, action, k)).collect();
    let mut classes: BTreeMap<DegreeTuple, (usize, BTreeSet<DegreeTuple>)> = BTreeMap::new();
    for d in tuples {
        let rep = perms.iter().map(|p| act_on_tuple(p, &d)).min().expect("nonempty group");
        let e = classes.entry(rep).or_default();
        e.0 += 1;
        e.1.insert(d);
    }
    classes
        .into_iter()
        .map(|(rep, (assignments, tuples))| DegreeClass { rep, assignments, tuples: tuples.len() })
        .collect()
}

/// Classes of the degree tuples induced by `assignments`. Only defined for
/// the c-case.
pub fn degree_classes(
    cx: &BaseComplex,
    action: &GroupAction,
    template: &EdgeTemplate,
    assignments: &[Assignment],
) -> Result<Vec<DegreeClass>> {
    if template.class != EdgeClass::C {
        return Err(Error::NotDegreeCase);
    }
    let tuples = assignments.iter().map(|a| degree_tuple(cx, template, a)).collect::<Result<Vec<_>>>()?;
    Ok(classify_degree_tuples(cx, action, tuples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sigma;
    use crate::enumerate::solve_parity;

    fn setup(base: Base, class: EdgeClass) -> (BaseComplex, EdgeTemplate, GroupAction) {
        let cx = BaseComplex::build(base).unwrap();
        let t = EdgeTemplate::derive(&cx, class);
        let act = GroupAction::new(&cx, &t).unwrap();
        (cx, t, act)
    }

    #[test]
    fn every_group_element_is_an_automorphism() {
        for base in Base::ALL {
            for class in EdgeClass::ALL {
                let (_, _, act) = setup(base, class);
                assert_eq!(act.vertex_perms.len(), base_group(base).order());
            }
        }
    }

    #[test]
    fn minus_sigma7_permutes_t_vertices() {
        let (cx, _, act) = setup(Base::BO, EdgeClass::C);
        let k = act.group.position(&-sigma(7)).unwrap();
        let p: Vec<usize> = t_permutation(&cx, &act, k).iter().map(|i| i + 1).collect();
        assert_eq!(p, [6, 5, 1, 2, 7, 8, 4, 3]);
        let d1 = [1, 1, 3, 3, 3, 3, 1, 1];
        assert_eq!(act_on_tuple(&t_permutation(&cx, &act, k), &d1), [3, 3, 1, 1, 1, 1, 3, 3]);
    }

    #[test]
    fn octahedral_element_is_not_a_flip_symmetry() {
        let cx = BaseComplex::build(Base::FBO).unwrap();
        let err = induce_permutation(&cx, &sigma(3)).unwrap_err();
        assert!(matches!(err, Error::NotAnAutomorphism { .. }));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let (_, _, act) = setup(Base::BO, EdgeClass::C);
        let g = act.group.elements();
        let a = Assignment::new(0b1011_0110_0101_1100_1110_0011, 24);
        for i in (0..g.len()).step_by(5) {
            for j in (0..g.len()).step_by(7) {
                let k = act.group.position(&(g[i] * g[j])).unwrap();
                assert_eq!(act.apply(k, &a), act.apply(i, &act.apply(j, &a)));
            }
        }
    }

    #[test]
    fn orbit_stabilizer_on_small_cases() {
        for base in Base::ALL {
            for class in [EdgeClass::A, EdgeClass::B] {
                let (_, t, act) = setup(base, class);
                let sols = solve_parity(&t);
                let classes = dedupe_orbits(&act, &sols).unwrap();
                assert_eq!(classes.iter().map(|c| c.members).sum::<usize>(), sols.len());
                for c in &classes {
                    assert_eq!(c.orbit_size * c.stabilizer_order, act.order());
                    assert_eq!(c.members, c.orbit_size);
                    assert_eq!(c.group.order(), c.stabilizer_order);
                }
            }
        }
    }

    #[test]
    fn degree_tuple_space_has_twenty_two_classes() {
        let (cx, t, act) = setup(Base::BO, EdgeClass::C);
        let classes = classify_degree_tuples(&cx, &act, all_degree_tuples());
        assert_eq!(classes.len(), 22);
        let all3 = classes.iter().find(|c| c.rep == [3; 8]).unwrap();
        assert_eq!(all3.tuples, 1);
        // Realised tuples form a subset of the classes.
        let realised = degree_classes(&cx, &act, &t, &solve_parity(&t)).unwrap();
        assert!(realised.iter().all(|r| classes.iter().any(|c| c.rep == r.rep)));
        assert!(realised.len() < classes.len());
    }

    #[test]
    fn degree_classes_need_c_case() {
        let (cx, t, act) = setup(Base::BO, EdgeClass::A);
        assert!(matches!(degree_classes(&cx, &act, &t, &[]), Err(Error::NotDegreeCase)));
    }
}
