//! Finite matrix groups closed from generators. Elements of the octahedral
//! group and its order-16 companion have fixed names, and subgroups are
//! identified up to abstract isomorphism.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Mat3, QSqrt2};
use crate::error::Error;

/// Default bound on closure size; the largest legitimate group here has 48
/// elements.
pub const DEFAULT_CLOSURE_CAP: usize = 96;

/// A finite group of 3×3 orthogonal matrices.
#[derive(Clone, Debug)]
pub struct SymGroup {
    name: String,
    elements: Vec<Mat3>,
    index: HashMap<Mat3, usize>,
}

impl SymGroup {
    fn from_elements(name: impl Into<String>, elements: Vec<Mat3>) -> Self {
        let index = elements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self {
            name: name.into(),
            elements,
            index,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &Mat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The full octahedral group O_h, generated by σ₂, σ₃, σ₄ and −I.
    pub fn octahedral() -> Self {
        let mut g = close_group(&[sigma(2), sigma(3), sigma(4)], true).expect("O_h generators");
        g.name = "O_h".into();
        g
    }

    /// The order-16 automorphism group of the flipped complex, generated by
    /// σ′₂ and σ′.
    pub fn flip_group() -> Self {
        let mut g = close_group(&[flip_rotoreflection(), flip_mirror()], false).expect("G' generators");
        g.name = "G'".into();
        g
    }

    /// Subgroup of elements satisfying `keep`, as a new group.
    pub fn subgroup_where(&self, name: impl Into<String>, keep: impl Fn(&Mat3) -> bool) -> Self {
        Self::from_elements(name, self.elements.iter().copied().filter(|m| keep(m)).collect())
    }
}

/// Closes `generators` under matrix product (and under negation when
/// `include_negation` is set).
pub fn close_group(generators: &[Mat3], include_negation: bool) -> Result<SymGroup, Error> {
    close_group_capped(generators, include_negation, DEFAULT_CLOSURE_CAP)
}

pub fn close_group_capped(
    generators: &[Mat3],
    include_negation: bool,
    cap: usize,
) -> Result<SymGroup, Error> {
    let mut gens: Vec<Mat3> = Vec::with_capacity(generators.len() + 1);
    for g in generators {
        if !g.is_orthogonal() {
            return Err(Error::NotOrthogonal(format!("{g:?}")));
        }
        gens.push(*g);
    }
    if include_negation {
        gens.push(-Mat3::identity());
    }

    let id = Mat3::identity();
    let mut seen: HashSet<Mat3> = HashSet::from([id]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x * *g;
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::ClosureOverflow { cap });
                }
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(SymGroup::from_elements("closure", elements))
}

pub fn determinant(m: &Mat3) -> QSqrt2 {
    m.determinant()
}

/// Order of `m` as a group element, or `None` if no power up to `cap` is
/// the identity.
pub fn element_order(m: &Mat3, cap: usize) -> Option<usize> {
    let id = Mat3::identity();
    let mut p = *m;
    for k in 1..=cap {
        if p == id {
            return Some(k);
        }
        p = p * *m;
    }
    None
}

/// Abstract group type of a symmetry group.
///
/// `D_n` is the dihedral group of order `2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupId {
    C1,
    C2,
    C4,
    C6,
    C2xC2,
    C2xC4,
    C2xC2xC2,
    D3,
    D4,
    D6,
    D8,
    C2xD4,
    Oh,
    Other { order: usize, abelian: bool, orders: Vec<usize> },
}

/// `(order, abelian, sorted element orders)`.
pub type GroupInvariants = (usize, bool, Vec<usize>);

fn expand(counts: &[(usize, usize)]) -> Vec<usize> {
    counts.iter().flat_map(|&(o, n)| std::iter::repeat_n(o, n)).collect()
}

impl GroupId {
    /// All named tags, in a fixed order.
    pub const NAMED: [GroupId; 13] = [
        GroupId::C1,
        GroupId::C2,
        GroupId::C4,
        GroupId::C6,
        GroupId::C2xC2,
        GroupId::C2xC4,
        GroupId::C2xC2xC2,
        GroupId::D3,
        GroupId::D4,
        GroupId::D6,
        GroupId::D8,
        GroupId::C2xD4,
        GroupId::Oh,
    ];

    /// Canonical invariant triple of a named tag.
    pub fn invariants(&self) -> GroupInvariants {
        use GroupId::*;
        match self {
            C1 => (1, true, expand(&[(1, 1)])),
            C2 => (2, true, expand(&[(1, 1), (2, 1)])),
            C4 => (4, true, expand(&[(1, 1), (2, 1), (4, 2)])),
            C2xC2 => (4, true, expand(&[(1, 1), (2, 3)])),
            C6 => (6, true, expand(&[(1, 1), (2, 1), (3, 2), (6, 2)])),
            D3 => (6, false, expand(&[(1, 1), (2, 3), (3, 2)])),
            C2xC4 => (8, true, expand(&[(1, 1), (2, 3), (4, 4)])),
            C2xC2xC2 => (8, true, expand(&[(1, 1), (2, 7)])),
            D4 => (8, false, expand(&[(1, 1), (2, 5), (4, 2)])),
            D6 => (12, false, expand(&[(1, 1), (2, 7), (3, 2), (6, 2)])),
            D8 => (16, false, expand(&[(1, 1), (2, 9), (4, 2), (8, 4)])),
            C2xD4 => (16, false, expand(&[(1, 1), (2, 11), (4, 4)])),
            Oh => (48, false, expand(&[(1, 1), (2, 19), (3, 8), (4, 12), (6, 8)])),
            Other { order, abelian, orders } => (*order, *abelian, orders.clone()),
        }
    }

    pub fn from_invariants(inv: GroupInvariants) -> Self {
        Self::NAMED
            .iter()
            .find(|t| t.invariants() == inv)
            .cloned()
            .unwrap_or(GroupId::Other {
                order: inv.0,
                abelian: inv.1,
                orders: inv.2,
            })
    }

    pub fn order(&self) -> usize {
        self.invariants().0
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupId::*;
        let s = match self {
            C1 => "C1",
            C2 => "C2",
            C4 => "C4",
            C6 => "C6",
            C2xC2 => "C2xC2",
            C2xC4 => "C2xC4",
            C2xC2xC2 => "C2xC2xC2",
            D3 => "D3",
            D4 => "D4",
            D6 => "D6",
            D8 => "D8",
            C2xD4 => "C2xD4",
            Oh => "Oh",
            Other { order, abelian, orders } => {
                let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
                return write!(f, "Other({order},{},{})", if *abelian { "ab" } else { "nonab" }, list.join(" "));
            }
        };
        f.write_str(s)
    }
}

impl From<GroupId> for String {
    fn from(g: GroupId) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for GroupId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl std::str::FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some(t) = GroupId::NAMED.iter().find(|t| t.to_string() == s) {
            return Ok(t.clone());
        }
        let inner = s
            .strip_prefix("Other(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown group tag {s:?}")))?;
        let parts: Vec<&str> = inner.splitn(3, ',').collect();
        let bad = || Error::Parse(format!("malformed group tag {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let order = parts[0].parse().map_err(|_| bad())?;
        let abelian = match parts[1] {
            "ab" => true,
            "nonab" => false,
            _ => return Err(bad()),
        };
        let orders = parts[2]
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Ok(GroupId::Other { order, abelian, orders })
    }
}

/// Computes `(order, abelian, element-order multiset)` of a closed set.
pub fn group_invariants(elements: &[Mat3]) -> Result<GroupInvariants, Error> {
    let set: HashSet<Mat3> = elements.iter().copied().collect();
    if set.len() != elements.len() {
        return Err(Error::NotClosed("duplicate elements".into()));
    }
    if !set.contains(&Mat3::identity()) {
        return Err(Error::NotClosed("identity missing".into()));
    }
    let mut abelian = true;
    for a in elements {
        for b in elements {
            let ab = *a * *b;
            if !set.contains(&ab) {
                return Err(Error::NotClosed(format!("{a:?} * {b:?} escapes the set")));
            }
            if abelian && ab != *b * *a {
                abelian = false;
            }
        }
    }
    let mut orders: Vec<usize> = elements
        .iter()
        .map(|m| element_order(m, elements.len()).expect("finite closed set"))
        .collect();
    orders.sort_unstable();
    Ok((elements.len(), abelian, orders))
}

pub fn identify_group(elements: &[Mat3]) -> Result<GroupId, Error> {
    Ok(GroupId::from_invariants(group_invariants(elements)?))
}

/// σ₂, σ₃, σ₄ of the octahedral generator table; σ₁ = I.
fn oh_generator(k: usize) -> Mat3 {
    match k {
        1 => Mat3::identity(),
        2 => Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]]),
        3 => Mat3::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        4 => Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        _ => unreachable!(),
    }
}

/// Words in σ₂, σ₃, σ₄ defining σ₅ … σ₂₄.
const OH_WORDS: [&[usize]; 20] = [
    &[2, 3],
    &[2, 4],
    &[3, 2],
    &[3, 4],
    &[4, 3],
    &[2, 3, 2],
    &[3, 2, 3],
    &[3, 4, 3],
    &[2, 3, 4],
    &[2, 4, 3],
    &[3, 2, 4],
    &[4, 3, 2],
    &[2, 3, 2, 3],
    &[3, 4, 3, 2],
    &[4, 3, 2, 3],
    &[3, 2, 4, 3],
    &[3, 2, 3, 4],
    &[2, 3, 2, 4],
    &[2, 4, 3, 2],
    &[4, 2, 3, 4],
];

/// The named octahedral element σ_k, `1 ≤ k ≤ 24`.
pub fn sigma(k: usize) -> Mat3 {
    assert!((1..=24).contains(&k), "sigma index out of range: {k}");
    if k <= 4 {
        return oh_generator(k);
    }
    OH_WORDS[k - 5]
        .iter()
        .fold(Mat3::identity(), |acc, &g| acc * oh_generator(g))
}

/// σ′₂: rotation by π/4 about the z-axis composed with z ↦ −z.
pub fn flip_rotoreflection() -> Mat3 {
    let h = super::QSqrt2::inv_sqrt2();
    let z = QSqrt2::default();
    let one = QSqrt2::from_int(1);
    Mat3([[h, h, z], [-h, h, z], [z, z, -one]])
}

/// σ′: the mirror y ↦ −y.
pub fn flip_mirror() -> Mat3 {
    Mat3::from_ints([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
}

/// σ′_k, `1 ≤ k ≤ 16`: powers of σ′₂, then σ′ times those powers.
pub fn sigma_prime(k: usize) -> Mat3 {
    assert!((1..=16).contains(&k), "sigma' index out of range: {k}");
    let r = flip_rotoreflection();
    let pow = |n: usize| (0..n).fold(Mat3::identity(), |acc, _| acc * r);
    if k <= 8 {
        pow(k - 1)
    } else {
        flip_mirror() * pow(k - 9)
    }
}

/// The sixteen matrices of G′ as listed explicitly (independent of the
/// generator construction).
pub fn flip_group_listed() -> Vec<Mat3> {
    let mut out: Vec<Mat3> = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
        [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
        [[0, -1, 0], [-1, 0, 0], [0, 0, 1]],
        [[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
    ]
    .into_iter()
    .map(Mat3::from_ints)
    .collect();
    // Upper-left 2×2 blocks in units of 1/√2, with z ↦ −z.
    let blocks: [[i64; 4]; 8] = [
        [-1, -1, -1, 1],
        [-1, -1, 1, -1],
        [-1, 1, -1, -1],
        [-1, 1, 1, 1],
        [1, -1, -1, -1],
        [1, -1, 1, 1],
        [1, 1, -1, 1],
        [1, 1, 1, -1],
    ];
    let h = QSqrt2::inv_sqrt2();
    let z = QSqrt2::default();
    for b in blocks {
        let e = |s: i64| h * QSqrt2::from_int(s);
        out.push(Mat3([
            [e(b[0]), e(b[1]), z],
            [e(b[2]), e(b[3]), z],
            [z, z, QSqrt2::from_int(-1)],
        ]));
    }
    out
}

/// Which named family an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Naming {
    /// `±σ_k`, k = 1..24.
    Octahedral,
    /// `σ′_k`, k = 1..16.
    Flip,
}

/// Named elements in naming order: σ₁…σ₂₄, −σ₁…−σ₂₄ (or σ′₁…σ′₁₆).
pub fn named_elements(naming: Naming) -> Vec<(String, Mat3)> {
    match naming {
        Naming::Octahedral => {
            let mut v: Vec<(String, Mat3)> = (1..=24).map(|k| (format!("σ{k}"), sigma(k))).collect();
            v.extend((1..=24).map(|k| (format!("-σ{k}"), -sigma(k))));
            v
        }
        Naming::Flip => (1..=16).map(|k| (format!("σ'{k}"), sigma_prime(k))).collect(),
    }
}

/// A named element together with its determinant sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGenerator {
    pub name: String,
    pub matrix: Mat3,
    pub determinant: i32,
}

/// A smallest generating set of `subgroup`, preferring names earliest in
/// naming order.
pub fn minimal_generators(subgroup: &[Mat3], naming: Naming) -> Vec<NamedGenerator> {
    let target: HashSet<Mat3> = subgroup.iter().copied().collect();
    let candidates: Vec<(String, Mat3)> = named_elements(naming)
        .into_iter()
        .filter(|(_, m)| target.contains(m) && *m != Mat3::identity())
        .collect();
    let wrap = |picked: &[&(String, Mat3)]| {
        picked
            .iter()
            .map(|(n, m)| NamedGenerator {
                name: n.clone(),
                matrix: *m,
                determinant: m.determinant().signum(),
            })
            .collect()
    };
    if target.len() == 1 {
        let id = Mat3::identity();
        let name = if naming == Naming::Octahedral { "σ1" } else { "σ'1" };
        return vec![NamedGenerator {
            name: name.into(),
            matrix: id,
            determinant: 1,
        }];
    }
    let generates = |ms: &[Mat3]| {
        close_group(ms, false)
            .map(|g| g.order() == target.len())
            .unwrap_or(false)
    };
    let n = candidates.len();
    for i in 0..n {
        if generates(&[candidates[i].1]) {
            return wrap(&[&candidates[i]]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if generates(&[candidates[i].1, candidates[j].1]) {
                return wrap(&[&candidates[i], &candidates[j]]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if generates(&[candidates[i].1, candidates[j].1, candidates[k].1]) {
                    return wrap(&[&candidates[i], &candidates[j], &candidates[k]]);
                }
            }
        }
    }
    // Not reached for subgroups of O_h, which all need at most three.
    wrap(&candidates.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedral_order() {
        let g = close_group(&[sigma(2), sigma(3), sigma(4)], true).unwrap();
        assert_eq!(g.order(), 48);
        assert_eq!(identify_group(g.elements()).unwrap(), GroupId::Oh);
    }

    #[test]
    fn trivial_group() {
        let g = close_group(&[Mat3::identity()], false).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(identify_group(g.elements()).unwrap(), GroupId::C1);
    }

    #[test]
    fn flip_group_order_and_listing() {
        let g = SymGroup::flip_group();
        assert_eq!(g.order(), 16);
        let listed: HashSet<Mat3> = flip_group_listed().into_iter().collect();
        let built: HashSet<Mat3> = g.elements().iter().copied().collect();
        assert_eq!(listed.len(), 16);
        assert_eq!(listed, built);
        assert_eq!(identify_group(g.elements()).unwrap(), GroupId::D8);
        let named: HashSet<Mat3> = (1..=16).map(sigma_prime).collect();
        assert_eq!(named, built);
    }

    #[test]
    fn named_octahedral_elements_are_the_whole_group() {
        let all: HashSet<Mat3> = named_elements(Naming::Octahedral).into_iter().map(|(_, m)| m).collect();
        assert_eq!(all.len(), 48);
        let g = SymGroup::octahedral();
        assert!(all.iter().all(|m| g.contains(m)));
    }

    #[test]
    fn minus_sigma7_matrix() {
        let m = -sigma(7);
        assert_eq!(m, Mat3::from_ints([[-1, 0, 0], [0, 0, 1], [0, -1, 0]]));
        // Cofactor oracle: -1 * (0*0 - 1*(-1)) = -1.
        assert_eq!(m.determinant(), QSqrt2::from_int(-1));
    }

    #[test]
    fn determinants() {
        assert!(determinant(&Mat3::identity()).is_one());
        assert_eq!(determinant(&flip_rotoreflection()), QSqrt2::from_int(-1));
        for m in SymGroup::octahedral().elements() {
            assert!(m.is_orthogonal());
            assert_eq!(m.determinant().signum().abs(), 1);
            assert!((m.determinant() * m.determinant()).is_one());
        }
    }

    #[test]
    fn c2_from_minus_sigma6() {
        let m = -sigma(6);
        assert_eq!(m * m, Mat3::identity());
        assert_eq!(identify_group(&[Mat3::identity(), m]).unwrap(), GroupId::C2);
    }

    #[test]
    fn c2_times_d4_from_three_generators() {
        let g = close_group(&[sigma(2), sigma(11), sigma(18)], false).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(identify_group(g.elements()).unwrap(), GroupId::C2xD4);
    }

    #[test]
    fn c6_from_sigma16() {
        let g = close_group(&[sigma(16)], false).unwrap();
        assert_eq!(identify_group(g.elements()).unwrap(), GroupId::C6);
    }

    #[test]
    fn rejects_non_orthogonal_and_runaway() {
        let bad = Mat3::from_ints([[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(close_group(&[bad], false), Err(Error::NotOrthogonal(_))));
        let oh = [sigma(2), sigma(3), sigma(4)];
        assert!(matches!(
            close_group_capped(&oh, true, 20),
            Err(Error::ClosureOverflow { cap: 20 })
        ));
    }

    #[test]
    fn non_closed_set_rejected() {
        assert!(identify_group(&[Mat3::identity(), sigma(16)]).is_err());
    }

    #[test]
    fn tags_pairwise_distinguished() {
        for (i, a) in GroupId::NAMED.iter().enumerate() {
            for b in &GroupId::NAMED[i + 1..] {
                assert_ne!(a.invariants(), b.invariants(), "{a} vs {b}");
            }
            let inv = a.invariants();
            assert_eq!(inv.2.len(), inv.0);
        }
    }

    #[test]
    fn closure_is_idempotent() {
        let g = SymGroup::octahedral();
        let again = close_group(g.elements(), false).unwrap();
        let a: HashSet<Mat3> = g.elements().iter().copied().collect();
        let b: HashSet<Mat3> = again.elements().iter().copied().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn identification_is_conjugation_invariant() {
        let oh = SymGroup::octahedral();
        let sub = close_group(&[sigma(2), sigma(11), sigma(18)], false).unwrap();
        let id = identify_group(sub.elements()).unwrap();
        for g in oh.elements() {
            let gi = g.transpose();
            let conj: Vec<Mat3> = sub.elements().iter().map(|m| *g * *m * gi).collect();
            assert_eq!(identify_group(&conj).unwrap(), id);
        }
    }

    #[test]
    fn group_id_string_round_trip() {
        for t in GroupId::NAMED {
            assert_eq!(t.to_string().parse::<GroupId>().unwrap(), t);
        }
        let other = GroupId::Other { order: 3, abelian: true, orders: vec![1, 3, 3] };
        assert_eq!(other.to_string().parse::<GroupId>().unwrap(), other);
    }

    #[test]
    fn generators_are_minimal() {
        let sub = close_group(&[sigma(2), sigma(11), sigma(18)], false).unwrap();
        let gens = minimal_generators(sub.elements(), Naming::Octahedral);
        assert_eq!(gens.len(), 3);
        let mats: Vec<Mat3> = gens.iter().map(|g| g.matrix).collect();
        assert_eq!(close_group(&mats, false).unwrap().order(), 16);
    }
}
