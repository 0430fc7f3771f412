use std::sync::OnceLock;

use foldtile_core::enumerate::{apply_assignment, satisfies_parity, solve_parity, verify_ftiling, FoldingChecker};
use foldtile_core::graphiso::{canonical_form, TypedGraph};
use foldtile_core::report::{run_all, Method, TablesDocument, TABLES_SCHEMA};
use foldtile_core::symmetry::GroupAction;
use foldtile_core::{complex::reduced_graph, Assignment, Base, BaseComplex, EdgeClass, EdgeTemplate};
use proptest::prelude::*;
use serde_json::Value;

struct Case {
    cx: BaseComplex,
    t: EdgeTemplate,
    action: GroupAction,
}

fn case(base: Base) -> &'static Case {
    static BO: OnceLock<Case> = OnceLock::new();
    static FBO: OnceLock<Case> = OnceLock::new();
    let cell = if base == Base::BO { &BO } else { &FBO };
    cell.get_or_init(|| {
        let cx = BaseComplex::build(base).unwrap();
        let t = EdgeTemplate::derive(&cx, EdgeClass::C);
        let action = GroupAction::new(&cx, &t).unwrap();
        Case { cx, t, action }
    })
}

fn code(c: &Case, a: &Assignment) -> String {
    canonical_form(&TypedGraph::from_reduced(&reduced_graph(&c.cx, &c.t, a.bits()))).code
}

fn base_strategy() -> impl Strategy<Value = Base> {
    prop_oneof![Just(Base::BO), Just(Base::FBO)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fold_check_matches_parity(base in base_strategy(), bits in 0u32..1 << 24) {
        let c = case(base);
        let tiling = apply_assignment(&c.cx, &c.t, &Assignment::new(bits, 24)).unwrap();
        prop_assert_eq!(verify_ftiling(&tiling).pass, satisfies_parity(&c.t, bits));
        prop_assert_eq!(FoldingChecker::new(&c.cx, &c.t).passes(bits), satisfies_parity(&c.t, bits));
        prop_assert_eq!(tiling.euler_characteristic(), 2);
        prop_assert_eq!(tiling.census.n_triangle + 2 * tiling.census.n_second, 48);
    }

    #[test]
    fn orbit_rep_and_graph_code_are_invariant(base in base_strategy(), pick in any::<prop::sample::Index>(), g in any::<prop::sample::Index>()) {
        let c = case(base);
        let sols = solve_parity(&c.t);
        let a = sols[pick.index(sols.len())];
        let k = g.index(c.action.order());
        let b = c.action.apply(k, &a);
        prop_assert!(sols.contains(&b));
        prop_assert_eq!(c.action.canonical_orbit_rep(&a), c.action.canonical_orbit_rep(&b));
        prop_assert_eq!(code(c, &a), code(c, &b));
    }
}

#[test]
fn distinct_orbits_have_distinct_codes() {
    for base in Base::ALL {
        let c = case(base);
        let mut reps: Vec<Assignment> = solve_parity(&c.t).iter().map(|a| c.action.canonical_orbit_rep(a)).collect();
        reps.sort();
        reps.dedup();
        let mut codes: Vec<String> = reps.iter().map(|a| code(c, a)).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), reps.len(), "{base}");
    }
}

fn check_required(schema: &Value, defs: &Value, node: &Value, path: &str) {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return check_required(&defs[name], defs, node, path);
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req {
            assert!(node.get(k.as_str().unwrap()).is_some(), "{path} lacks {k}");
        }
    }
    if let (Some(props), Some(obj)) = (schema.get("properties"), node.as_object()) {
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in obj.keys() {
                assert!(props.get(k).is_some(), "{path}.{k} not in schema");
            }
        }
        for (k, v) in obj {
            if let Some(s) = props.get(k) {
                check_required(s, defs, v, &format!("{path}.{k}"));
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), node.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check_required(items, defs, v, &format!("{path}[{i}]"));
        }
    }
}

#[test]
fn tables_document_follows_schema() {
    let doc = run_all(Method::Both).unwrap();
    let json = doc.to_json().unwrap();
    let value: Value = serde_json::from_str(&json).unwrap();
    let schema: Value = serde_json::from_str(TABLES_SCHEMA).unwrap();
    check_required(&schema, &schema["$defs"], &value, "$");
    assert_eq!(TablesDocument::from_json(&json).unwrap(), doc);
    assert_eq!(doc.records().count(), 123);
}
