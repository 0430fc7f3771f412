//! End-to-end classification runs and their labelled output records.
//! The SVG drawing is re-exported as [`render_svg`].

mod svg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{GroupId, NamedGenerator};
use crate::complex::{Base, BaseComplex, EdgeClass, EdgeTemplate};
use crate::enumerate::{apply_assignment, is_dihedral, solve_parity, verify_ftiling, Assignment, TileKind};
use crate::error::{Error, Result};
use crate::graphiso::{cross_check, dedupe_graphs, GraphClass};
use crate::symmetry::{dedupe_orbits, GroupAction, OrbitClass};

pub use svg::render_svg;

/// Version of the JSON table document; bump on any field change.
pub const SCHEMA_VERSION: u32 = 1;

/// The JSON Schema describing [`TablesDocument`].
pub const TABLES_SCHEMA: &str = include_str!("../../schema/tables.v1.schema.json");

/// The six (base, edge class) cases in output order.
pub const CASES: [(Base, EdgeClass); 6] = [
    (Base::BO, EdgeClass::C),
    (Base::BO, EdgeClass::B),
    (Base::BO, EdgeClass::A),
    (Base::FBO, EdgeClass::C),
    (Base::FBO, EdgeClass::B),
    (Base::FBO, EdgeClass::A),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Symmetry,
    Graphiso,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Symmetry => "symmetry",
            Method::Graphiso => "graphiso",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetry" => Ok(Method::Symmetry),
            "graphiso" => Ok(Method::Graphiso),
            "both" => Ok(Method::Both),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// One class of dihedral f-tilings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    /// `BO-c-12` style: base, edge class, 1-based index within the case.
    pub id: String,
    pub base: Base,
    pub edge_class: EdgeClass,
    /// Representative assignment, unit 0 first.
    pub assignment: String,
    pub removed_units: Vec<String>,
    pub group: GroupId,
    pub group_order: usize,
    pub orbit_size: usize,
    pub generators: Vec<NamedGenerator>,
    pub n_triangle: usize,
    pub n_second: usize,
    pub second_prototile: TileKind,
    /// Canonical code of the reduced graph, when graph isomorphism ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_code: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub base: Base,
    pub edge_class: EdgeClass,
    pub method: Method,
    pub units: usize,
    /// Parity solutions.
    pub raw: usize,
    /// Solutions passing the folding check.
    pub valid: usize,
    /// Classes before dropping monohedral tilings.
    pub classes_unfiltered: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub summary: CaseSummary,
    pub records: Vec<ClassificationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesDocument {
    pub schema_version: u32,
    pub cases: Vec<Classification>,
}

impl TablesDocument {
    pub fn new(cases: Vec<Classification>) -> Self {
        Self { schema_version: SCHEMA_VERSION, cases }
    }

    pub fn records(&self) -> impl Iterator<Item = &ClassificationRecord> {
        self.cases.iter().flat_map(|c| c.records.iter())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Everything computed for one case, kept for checks beyond the records.
pub struct CaseRun {
    pub complex: BaseComplex,
    pub template: EdgeTemplate,
    pub action: GroupAction,
    pub raw: Vec<Assignment>,
    pub valid: Vec<Assignment>,
    pub dihedral: Vec<Assignment>,
    pub orbits_unfiltered: Vec<OrbitClass>,
    pub orbits: Vec<OrbitClass>,
    pub graphs_unfiltered: Vec<GraphClass>,
    pub graphs: Vec<GraphClass>,
}

impl CaseRun {
    /// Runs the pipeline for one case. `method` chooses which deduplications
    /// run; `Both` also cross-checks them.
    pub fn execute(base: Base, class: EdgeClass, method: Method) -> Result<Self> {
        let complex = BaseComplex::build(base)?;
        let template = EdgeTemplate::derive(&complex, class);
        let action = GroupAction::new(&complex, &template)?;
        let raw = solve_parity(&template);
        let mut valid = Vec::with_capacity(raw.len());
        let mut dihedral = Vec::new();
        for a in &raw {
            let tiling = match apply_assignment(&complex, &template, a) {
                Ok(t) => t,
                Err(Error::PrototileCongruence(..)) => continue,
                Err(e) => return Err(e),
            };
            if !verify_ftiling(&tiling).pass {
                continue;
            }
            valid.push(*a);
            if is_dihedral(&tiling) {
                dihedral.push(*a);
            }
        }
        let sym = method != Method::Graphiso;
        let graph = method != Method::Symmetry;
        let (orbits_unfiltered, orbits) = if sym {
            (dedupe_orbits(&action, &valid)?, dedupe_orbits(&action, &dihedral)?)
        } else {
            Default::default()
        };
        let (graphs_unfiltered, graphs) = if graph {
            (
                dedupe_graphs(&complex, &template, &valid),
                dedupe_graphs(&complex, &template, &dihedral),
            )
        } else {
            Default::default()
        };
        if sym && graph {
            let rep = |a: &Assignment| action.canonical_orbit_rep(a);
            cross_check(&orbits_unfiltered, rep, &graphs_unfiltered)?;
            cross_check(&orbits, rep, &graphs)?;
        }
        Ok(Self { complex, template, action, raw, valid, dihedral, orbits_unfiltered, orbits, graphs_unfiltered, graphs })
    }

    /// Class representatives of the dihedral tilings, whichever method ran.
    fn reps(&self) -> Vec<(Assignment, Option<String>)> {
        if !self.orbits.is_empty() || self.graphs.is_empty() {
            let codes: std::collections::HashMap<Assignment, &str> =
                self.graphs.iter().map(|g| (g.rep(), g.code.as_str())).collect();
            self.orbits.iter().map(|o| (o.rep, codes.get(&o.rep).map(|c| c.to_string()))).collect()
        } else {
            self.graphs.iter().map(|g| (g.rep(), Some(g.code.clone()))).collect()
        }
    }

    pub fn classification(&self, method: Method) -> Result<Classification> {
        let cx = &self.complex;
        let t = &self.template;
        let mut records = Vec::new();
        for (rep, graph_code) in self.reps() {
            let tiling = apply_assignment(cx, t, &rep)?;
            let stab = self.action.stabilizer_matrices(&rep);
            records.push(ClassificationRecord {
                id: String::new(),
                base: cx.base,
                edge_class: t.class,
                assignment: rep.to_bit_string(),
                removed_units: (0..t.len()).filter(|&i| !rep.is_present(i)).map(|i| t.unit_label(cx, i)).collect(),
                group: crate::algebra::identify_group(&stab)?,
                group_order: stab.len(),
                orbit_size: self.action.order() / stab.len(),
                generators: crate::algebra::minimal_generators(&stab, crate::symmetry::naming_for(cx.base)),
                n_triangle: tiling.census.n_triangle,
                n_second: tiling.census.n_second,
                second_prototile: tiling.second_kind(),
                graph_code,
            });
        }
        records.sort_by(|a, b| (a.n_triangle, &a.assignment).cmp(&(b.n_triangle, &b.assignment)));
        for (k, r) in records.iter_mut().enumerate() {
            r.id = record_id(cx.base, t.class, k + 1);
        }
        let classes_unfiltered = if self.orbits_unfiltered.is_empty() && !self.graphs_unfiltered.is_empty() {
            self.graphs_unfiltered.len()
        } else {
            self.orbits_unfiltered.len()
        };
        Ok(Classification {
            summary: CaseSummary {
                base: cx.base,
                edge_class: t.class,
                method,
                units: t.len(),
                raw: self.raw.len(),
                valid: self.valid.len(),
                classes_unfiltered,
                classes: records.len(),
            },
            records,
        })
    }
}

pub fn record_id(base: Base, class: EdgeClass, k: usize) -> String {
    format!("{base}-{class}-{k}")
}

fn parse_record_id(id: &str) -> Result<(Base, EdgeClass, usize)> {
    let bad = || Error::UnknownRecord(id.to_string());
    let mut parts = id.split('-');
    let base: Base = parts.next().ok_or_else(bad)?.to_ascii_lowercase().parse().map_err(|_| bad())?;
    let class: EdgeClass = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let k: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if parts.next().is_some() || k == 0 {
        return Err(bad());
    }
    Ok((base, class, k))
}

pub fn run_classification(base: Base, class: EdgeClass, method: Method) -> Result<Classification> {
    CaseRun::execute(base, class, method)?.classification(method)
}

pub fn run_all(method: Method) -> Result<TablesDocument> {
    let cases = CASES
        .iter()
        .map(|&(b, c)| run_classification(b, c, method))
        .collect::<Result<Vec<_>>>()?;
    Ok(TablesDocument::new(cases))
}

/// Looks a record up by id, recomputing only its case.
pub fn find_record(id: &str) -> Result<ClassificationRecord> {
    let (base, class, _) = parse_record_id(id)?;
    run_classification(base, class, Method::Symmetry)?
        .records
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownRecord(id.to_string()))
}

/// Renders a record's representative tiling as SVG.
pub fn render_record(record: &ClassificationRecord) -> Result<String> {
    let cx = BaseComplex::build(record.base)?;
    let t = EdgeTemplate::derive(&cx, record.edge_class);
    let a = Assignment::from_bit_string(&record.assignment)?;
    render_svg(&cx, &t, &a, &record.id)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    base: Base,
    edge_class: EdgeClass,
    group: String,
    group_order: usize,
    orbit_size: usize,
    generators: String,
    determinants: String,
    generator_matrices: String,
    n_triangle: usize,
    n_second: usize,
    second_prototile: TileKind,
    assignment: &'a str,
}

/// One row per record. Matrices are written as `[[a,b,c],[…],[…]]` with
/// exact `p/q+r/s√2` entries, several separated by `;`.
pub fn tables_csv(doc: &TablesDocument) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in doc.records() {
        let matrices: Vec<String> = r
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<String> =
                    g.matrix.entries_as_strings().iter().map(|row| format!("[{}]", row.join(","))).collect();
                format!("[{}]", rows.join(","))
            })
            .collect();
        w.serialize(CsvRow {
            id: &r.id,
            base: r.base,
            edge_class: r.edge_class,
            group: r.group.to_string(),
            group_order: r.group_order,
            orbit_size: r.orbit_size,
            generators: r.generators.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(" "),
            determinants: r.generators.iter().map(|g| if g.determinant > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(" "),
            generator_matrices: matrices.join(";"),
            n_triangle: r.n_triangle,
            n_second: r.n_second,
            second_prototile: r.second_prototile,
            assignment: &r.assignment,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_ids_round_trip() {
        assert_eq!(record_id(Base::FBO, EdgeClass::A, 2), "FBO-a-2");
        assert_eq!(parse_record_id("FBO-a-2").unwrap(), (Base::FBO, EdgeClass::A, 2));
        for bad in ["", "BO", "BO-c", "BO-x-1", "BO-c-0", "BO-c-1-2", "XO-c-1"] {
            assert!(parse_record_id(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn method_parse() {
        for m in [Method::Symmetry, Method::Graphiso, Method::Both] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn fbo_a_records() {
        let c = run_classification(Base::FBO, EdgeClass::A, Method::Both).unwrap();
        assert_eq!(c.summary.raw, 4);
        assert_eq!(c.summary.classes_unfiltered, 3);
        let got: Vec<(String, GroupId, usize, usize)> =
            c.records.iter().map(|r| (r.id.clone(), r.group.clone(), r.n_triangle, r.n_second)).collect();
        assert_eq!(
            got,
            [("FBO-a-1".to_string(), GroupId::D8, 16, 16), ("FBO-a-2".to_string(), GroupId::D4, 32, 8)]
        );
        assert!(c.records.iter().all(|r| r.graph_code.is_some() && r.second_prototile == TileKind::IsoBc));
    }

    #[test]
    fn methods_give_the_same_records_apart_from_codes() {
        let strip = |mut c: Classification| {
            c.summary.method = Method::Both;
            for r in &mut c.records {
                r.graph_code = None;
            }
            c
        };
        let s = strip(run_classification(Base::BO, EdgeClass::B, Method::Symmetry).unwrap());
        let g = strip(run_classification(Base::BO, EdgeClass::B, Method::Graphiso).unwrap());
        assert_eq!(s, g);
    }

    #[test]
    fn json_round_trip_and_version_gate() {
        let doc = TablesDocument::new(vec![run_classification(Base::BO, EdgeClass::A, Method::Both).unwrap()]);
        let s = doc.to_json().unwrap();
        assert_eq!(TablesDocument::from_json(&s).unwrap(), doc);
        let bumped = s.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(TablesDocument::from_json(&bumped).is_err());
    }

    #[test]
    fn csv_has_one_row_per_record() {
        let doc = TablesDocument::new(vec![run_classification(Base::BO, EdgeClass::A, Method::Symmetry).unwrap()]);
        let csv = tables_csv(&doc).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 5);
        assert!(lines[0].starts_with("id,base,edge_class,group"));
        assert!(lines[1].contains("1+0√2"));
    }

    #[test]
    fn unknown_record() {
        assert!(matches!(find_record("BO-a-99"), Err(Error::UnknownRecord(_))));
    }
}
