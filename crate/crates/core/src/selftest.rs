//! The acceptance criteria as runnable checks, shared by the `acceptance`
//! test target and `foldtile selftest`.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{flip_group_listed, GroupId, SymGroup};
use crate::complex::{reduced_graph, Angle, Base, EdgeClass};
use crate::enumerate::{
    apply_assignment, brute_force_scan, satisfies_parity, verify_ftiling, FoldingChecker, TileKind,
};
use crate::error::Result;
use crate::graphiso::{canonical_form, cross_check, TypedGraph};
use crate::report::{CaseRun, Classification, Method, CASES};
use crate::symmetry::{all_degree_tuples, classify_degree_tuples, degree_classes};

/// Expected `(raw, unfiltered classes, classes)` per case, in [`CASES`] order.
pub const EXPECTED_COUNTS: [(usize, usize, usize); 6] =
    [(2048, 76, 75), (128, 14, 12), (32, 6, 5), (256, 30, 29), (1, 1, 0), (4, 3, 2)];

const FIXTURES: [&str; 6] = [
    include_str!("../fixtures/bo_c.csv"),
    include_str!("../fixtures/bo_b.csv"),
    include_str!("../fixtures/bo_a.csv"),
    include_str!("../fixtures/fbo_c.csv"),
    include_str!("../fixtures/fbo_b.csv"),
    include_str!("../fixtures/fbo_a.csv"),
];

pub type Multiset = BTreeMap<(GroupId, usize, usize), usize>;

/// Reference `(group, n_triangle, n_second) → count` multiset for a case.
pub fn fixture(base: Base, class: EdgeClass) -> Result<Multiset> {
    let i = CASES.iter().position(|&c| c == (base, class)).expect("known case");
    let mut rdr = csv::Reader::from_reader(FIXTURES[i].as_bytes());
    let mut out = Multiset::new();
    for row in rdr.deserialize() {
        let (group, n_tri, n_sec, count): (String, usize, usize, usize) = row?;
        *out.entry((group.parse()?, n_tri, n_sec)).or_default() += count;
    }
    Ok(out)
}

pub fn multiset(c: &Classification) -> Multiset {
    let mut out = Multiset::new();
    for r in &c.records {
        *out.entry((r.group.clone(), r.n_triangle, r.n_second)).or_default() += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

/// All six cases run with both deduplication methods.
pub struct Context {
    pub runs: Vec<CaseRun>,
    pub classifications: Vec<Classification>,
}

impl Context {
    pub fn compute() -> Result<Self> {
        let mut runs = Vec::new();
        let mut classifications = Vec::new();
        for (base, class) in CASES {
            let run = CaseRun::execute(base, class, Method::Both)?;
            classifications.push(run.classification(Method::Both)?);
            runs.push(run);
        }
        Ok(Self { runs, classifications })
    }
}

fn outcome(id: u8, name: &'static str, checks: Vec<(bool, String)>) -> Outcome {
    let passed = checks.iter().all(|(ok, _)| *ok);
    let detail = checks
        .into_iter()
        .filter(|(ok, _)| !passed || *ok)
        .filter(|(ok, _)| passed || !*ok)
        .map(|(_, d)| d)
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { id, name, passed, detail }
}

pub fn totals(ctx: &Context) -> Outcome {
    let mut by_kind: BTreeMap<TileKind, usize> = BTreeMap::new();
    for c in &ctx.classifications {
        for r in &c.records {
            *by_kind.entry(r.second_prototile).or_default() += 1;
        }
    }
    let kite = by_kind.get(&TileKind::Kite).copied().unwrap_or(0);
    let ac = by_kind.get(&TileKind::IsoAc).copied().unwrap_or(0);
    let bc = by_kind.get(&TileKind::IsoBc).copied().unwrap_or(0);
    let total = kite + ac + bc;
    outcome(
        1,
        "total dihedral f-tilings",
        vec![(
            (total, kite, ac, bc) == (123, 104, 12, 7),
            format!("{total} = {kite} kite + {ac} iso_ac + {bc} iso_bc"),
        )],
    )
}

pub fn per_case_counts(ctx: &Context) -> Outcome {
    let checks = ctx
        .classifications
        .iter()
        .zip(EXPECTED_COUNTS)
        .map(|(c, (_, pre, post))| {
            let s = &c.summary;
            (
                s.classes == post && s.classes_unfiltered == pre,
                format!("{}-{} {}/{}", s.base, s.edge_class, s.classes, s.classes_unfiltered),
            )
        })
        .collect();
    outcome(2, "per-case class counts (filtered/unfiltered)", checks)
}

pub fn methods_agree(ctx: &Context) -> Outcome {
    let checks = ctx
        .runs
        .iter()
        .map(|run| {
            let rep = |a: &crate::enumerate::Assignment| run.action.canonical_orbit_rep(a);
            let pre = cross_check(&run.orbits_unfiltered, rep, &run.graphs_unfiltered);
            let post = cross_check(&run.orbits, rep, &run.graphs);
            let name = format!("{}-{}", run.complex.base, run.template.class);
            match (pre, post) {
                (Ok(a), Ok(b)) => (true, format!("{name} {} + {} unfiltered matched", b.len(), a.len())),
                (Err(e), _) | (_, Err(e)) => (false, format!("{name}: {e}")),
            }
        })
        .collect();
    outcome(3, "symmetry and graph-isomorphism classes coincide", checks)
}

pub fn degree_tuple_classes(ctx: &Context) -> Outcome {
    let run = &ctx.runs[0];
    let all = classify_degree_tuples(&run.complex, &run.action, all_degree_tuples());
    let realised = degree_classes(&run.complex, &run.action, &run.template, &run.valid).map(|v| v.len());
    let ok = all.len() == 22 && realised.is_ok();
    outcome(
        4,
        "BO c degree-tuple classes",
        vec![(ok, format!("{} classes ({} realised by parity solutions)", all.len(), realised.unwrap_or(0)))],
    )
}

pub fn table_multisets(ctx: &Context) -> Outcome {
    let checks = ctx
        .classifications
        .iter()
        .map(|c| {
            let name = format!("{}-{}", c.summary.base, c.summary.edge_class);
            match fixture(c.summary.base, c.summary.edge_class) {
                Ok(want) => {
                    let got = multiset(c);
                    if got == want {
                        (true, format!("{name} ok"))
                    } else {
                        (false, format!("{name}: got {got:?}, want {want:?}"))
                    }
                }
                Err(e) => (false, format!("{name}: fixture {e}")),
            }
        })
        .collect();
    outcome(5, "(group, census) multisets match reference tables", checks)
}

pub fn group_facts(ctx: &Context) -> Outcome {
    let oh = SymGroup::octahedral();
    let flip = SymGroup::flip_group();
    let listed = flip_group_listed();
    let mut checks = vec![
        (oh.order() == 48, format!("|O_h| = {}", oh.order())),
        (flip.order() == 16, format!("|G'| = {}", flip.order())),
        (
            listed.iter().collect::<std::collections::HashSet<_>>().len() == 16 && listed.iter().all(|m| flip.contains(m)),
            "G' equals the listed 16 matrices".to_string(),
        ),
    ];
    let mut n = 0;
    let mut bad = Vec::new();
    for run in &ctx.runs {
        for o in run.orbits_unfiltered.iter().chain(&run.orbits) {
            n += 1;
            if o.orbit_size * o.stabilizer_order != run.action.order() || o.members != o.orbit_size {
                bad.push(format!("{:?}", o.rep));
            }
        }
    }
    checks.push((bad.is_empty(), format!("orbit-stabilizer on {n} classes{}", if bad.is_empty() { String::new() } else { format!(", broken: {}", bad.join(",")) })));
    outcome(6, "group facts", checks)
}

/// Folding check ⇔ parity, exhaustively over every raw vector.
pub fn fold_parity_equivalence(ctx: &Context) -> (bool, String) {
    let mut scanned: u64 = 0;
    for run in &ctx.runs {
        let checker = FoldingChecker::new(&run.complex, &run.template);
        let n = run.template.len();
        for bits in 0..=crate::enumerate::full_mask(n) {
            scanned += 1;
            if checker.passes(bits) != satisfies_parity(&run.template, bits) {
                return (false, format!("{}-{} disagrees at {bits:#b}", run.complex.base, run.template.class));
            }
        }
        if run.valid.len() != run.raw.len() {
            return (false, format!("{}-{}: a parity solution fails verification", run.complex.base, run.template.class));
        }
    }
    (true, format!("fold ⇔ parity on {scanned} vectors"))
}

pub fn properties(ctx: &Context) -> Outcome {
    let mut checks = vec![fold_parity_equivalence(ctx)];
    let (mut tilings, mut euler, mut census, mut sums) = (0usize, true, true, true);
    for run in &ctx.runs {
        for a in &run.valid {
            let Ok(t) = apply_assignment(&run.complex, &run.template, a) else {
                euler = false;
                continue;
            };
            tilings += 1;
            euler &= t.euler_characteristic() == 2;
            census &= t.census.n_triangle + 2 * t.census.n_second == 48;
            sums &= t.vertices.iter().all(|v| v.alternate_sums() == (Angle::pi(), Angle::pi()));
            sums &= verify_ftiling(&t).pass;
        }
    }
    checks.push((euler, format!("V − E + F = 2 on {tilings} tilings")));
    checks.push((census, "n_triangle + 2·n_second = 48".to_string()));
    checks.push((sums, "alternate angle sums = π at every vertex".to_string()));

    // Canonical form under random relabelings of class representatives.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let reps: Vec<(usize, crate::enumerate::Assignment)> = ctx
        .runs
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.orbits.iter().map(move |o| (i, o.rep)))
        .collect();
    let mut stable = true;
    for _ in 0..1000 {
        let (i, a) = reps[rng.gen_range(0..reps.len())];
        let run = &ctx.runs[i];
        let g = TypedGraph::from_reduced(&reduced_graph(&run.complex, &run.template, a.bits()));
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut rng);
        stable &= canonical_form(&g).code == canonical_form(&g.permuted(&order)).code;
    }
    checks.push((stable, "canonical form stable under 1000 relabelings".to_string()));
    outcome(7, "property suites", checks)
}

pub fn solver_oracle(ctx: &Context) -> Outcome {
    let checks = ctx
        .runs
        .iter()
        .zip(EXPECTED_COUNTS)
        .map(|(run, (raw, _, _))| {
            let oracle = brute_force_scan(&run.template);
            (
                oracle == run.raw && oracle.len() == raw,
                format!("N_{}({}) = {}", run.template.class, run.complex.base, oracle.len()),
            )
        })
        .collect();
    outcome(8, "parity solver equals brute-force oracle", checks)
}

pub type Criterion = fn(&Context) -> Outcome;

pub const CRITERIA: [Criterion; 8] = [
    totals,
    per_case_counts,
    methods_agree,
    degree_tuple_classes,
    table_multisets,
    group_facts,
    properties,
    solver_oracle,
];

pub fn run_all(ctx: &Context) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| c(ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_sum() {
        for ((base, class), (_, _, post)) in CASES.iter().zip(EXPECTED_COUNTS) {
            let f = fixture(*base, *class).unwrap();
            assert_eq!(f.values().sum::<usize>(), post, "{base} {class}");
            assert!(f.keys().all(|(_, t, s)| t + 2 * s == 48));
        }
    }

    #[test]
    fn outcome_display() {
        let o = outcome(3, "x", vec![(true, "a".into()), (false, "b".into())]);
        assert!(!o.passed);
        assert_eq!(o.to_string(), "[FAIL] 3. x: b");
    }
}
