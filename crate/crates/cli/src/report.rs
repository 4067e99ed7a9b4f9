//! JSON reports. Every document carries `"schema": 1`; rationals are
//! objects `{"num", "den", "display"}` with decimal strings so that no
//! precision is lost in transit.

use std::collections::BTreeMap;

use dualgraph_core::ade::{dynkin_check, white_components, AdeType, DynkinCheck};
use dualgraph_core::k2a::{FeasibilityReport, K2AConfig};
use dualgraph_core::quotient::{end_codiscrepancies, hj_expand, is_class_t, CyclicQuotient, TParams};
use dualgraph_core::{contractibility, Definiteness, Graph, Rational, Resolution, ResolutionError};
use serde::Serialize;

use crate::dsl::GraphDocument;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
    pub display: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        JsonRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            display: r.to_string(),
        }
    }
}

impl From<Rational> for JsonRational {
    fn from(r: Rational) -> Self {
        (&r).into()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonVertex {
    pub id: String,
    pub color: &'static str,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionMatrix {
    pub ids: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Contractibility {
    pub class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
}

impl From<Definiteness> for Contractibility {
    fn from(d: Definiteness) -> Self {
        match d {
            Definiteness::NegativeDefinite => Contractibility {
                class: "negative_definite",
                kernel_dim: None,
            },
            Definiteness::NegativeSemidefinite { kernel_dim } => Contractibility {
                class: "negative_semidefinite",
                kernel_dim: Some(kernel_dim),
            },
            Definiteness::Other => Contractibility {
                class: "other",
                kernel_dim: None,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CodiscrepancyTable {
    pub coefficients: BTreeMap<String, JsonRational>,
    pub du_val: bool,
    pub log_terminal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub ids: Vec<String>,
    pub ade: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dynkin {
    pub is_dynkin: bool,
    pub ade: Option<String>,
    pub valency3_count: usize,
    pub has_valency_ge4: bool,
}

impl From<DynkinCheck> for Dynkin {
    fn from(c: DynkinCheck) -> Self {
        Dynkin {
            is_dynkin: c.is_dynkin,
            ade: c.ade.map(|t| t.to_string()),
            valency3_count: c.valency3_count,
            has_valency_ge4: c.has_valency_ge4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlackProducts {
    pub ids: Vec<String>,
    pub rows: Vec<Vec<JsonRational>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub surface: &'static str,
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<[String; 2]>,
    pub intersection_matrix: IntersectionMatrix,
    pub contractibility: Contractibility,
    pub codiscrepancy: CodiscrepancyTable,
    pub degrees: BTreeMap<String, JsonRational>,
    pub black_products: BlackProducts,
    pub ample: bool,
    pub white_components: Vec<Component>,
    pub dynkin: Dynkin,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorObject {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema: u32,
    pub error: ErrorObject,
    pub intersection_matrix: IntersectionMatrix,
    pub contractibility: Contractibility,
}

fn intersection_matrix(g: &Graph) -> IntersectionMatrix {
    let n = g.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, g.has_edge(i, j)) {
                    (true, _) => g.vertex(i).self_intersection,
                    (false, true) => 1,
                    (false, false) => 0,
                })
                .collect()
        })
        .collect();
    IntersectionMatrix {
        ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
        rows,
    }
}

/// Analyzes a document. When the exceptional (white) part is not negative
/// definite the result is an [`ErrorReport`].
pub fn analyze(doc: &GraphDocument) -> Result<AnalysisReport, Box<ErrorReport>> {
    let g = &doc.graph;
    let res = match Resolution::new(g) {
        Ok(res) => res,
        Err(e) => {
            let kind = match e {
                ResolutionError::NotContractible => "not_contractible",
                _ => "resolution",
            };
            return Err(Box::new(ErrorReport {
                schema: SCHEMA,
                error: ErrorObject {
                    kind,
                    message: "the white curves do not span a negative definite lattice".into(),
                },
                intersection_matrix: intersection_matrix(g),
                contractibility: contractibility(g).into(),
            }));
        }
    };
    let codisc = res.codiscrepancy();
    let blacks: Vec<String> = g
        .black_indices()
        .into_iter()
        .map(|i| g.vertex(i).id.clone())
        .collect();
    let degrees: BTreeMap<String, Rational> = blacks
        .iter()
        .map(|id| (id.clone(), res.anticanonical_degree(id).expect("black id")))
        .collect();
    let products = res.pushforward_matrix(&blacks).expect("black ids");
    let ample = !degrees.is_empty() && degrees.values().all(Rational::is_positive);
    Ok(AnalysisReport {
        schema: SCHEMA,
        surface: doc.context.as_str(),
        vertices: g
            .vertices()
            .iter()
            .map(|v| JsonVertex {
                id: v.id.clone(),
                color: v.color.as_str(),
                self_intersection: v.self_intersection,
            })
            .collect(),
        edges: g.edge_ids().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        intersection_matrix: intersection_matrix(g),
        contractibility: contractibility(g).into(),
        codiscrepancy: CodiscrepancyTable {
            coefficients: codisc
                .coefficients()
                .iter()
                .map(|(id, t)| (id.clone(), t.into()))
                .collect(),
            du_val: codisc.is_du_val(),
            log_terminal: codisc.is_log_terminal(),
        },
        degrees: degrees.iter().map(|(id, d)| (id.clone(), d.into())).collect(),
        black_products: BlackProducts {
            rows: (0..blacks.len())
                .map(|i| (0..blacks.len()).map(|j| products.get(i, j).into()).collect())
                .collect(),
            ids: blacks,
        },
        ample,
        white_components: white_components(g)
            .into_iter()
            .map(|c| Component {
                ids: c.graph.vertices().iter().map(|v| v.id.clone()).collect(),
                ade: c.ade.map(|t| t.to_string()),
            })
            .collect(),
        dynkin: dynkin_check(g).into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TParamsJson {
    pub m: u64,
    pub p: u64,
    pub a: u64,
}

impl From<TParams> for TParamsJson {
    fn from(t: TParams) -> Self {
        TParamsJson {
            m: t.m(),
            p: t.p(),
            a: t.a(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HjReport {
    pub schema: u32,
    pub n: u64,
    pub q: u64,
    pub chain: Vec<u64>,
    pub partner_q: u64,
    pub du_val: bool,
    pub end_codiscrepancies: [JsonRational; 2],
    pub class_t: Option<TParamsJson>,
}

pub fn hj_report(s: CyclicQuotient) -> HjReport {
    let (first, last) = end_codiscrepancies(s);
    HjReport {
        schema: SCHEMA,
        n: s.n(),
        q: s.q(),
        chain: hj_expand(s).entries().to_vec(),
        partner_q: s.partner().q(),
        du_val: s.is_du_val(),
        end_codiscrepancies: [first.into(), last.into()],
        class_t: is_class_t(s).map(Into::into),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct K2AReport {
    pub schema: u32,
    pub p0: TParamsJson,
    pub p1: TParamsJson,
    pub p2: TParamsJson,
    pub delta1: String,
    pub delta2: String,
    #[serde(rename = "Delta1")]
    pub big_delta1: String,
    #[serde(rename = "Delta2")]
    pub big_delta2: String,
    pub determinant: String,
    pub deg1: JsonRational,
    pub deg2: JsonRational,
    pub c11: JsonRational,
    pub c22: JsonRational,
    pub c12: JsonRational,
    pub contractible: bool,
    pub ample: bool,
    pub feasible: bool,
}

pub fn k2a_report(cfg: &K2AConfig, r: &FeasibilityReport) -> K2AReport {
    K2AReport {
        schema: SCHEMA,
        p0: cfg.p0.into(),
        p1: cfg.p1.into(),
        p2: cfg.p2.into(),
        delta1: r.delta1.to_string(),
        delta2: r.delta2.to_string(),
        big_delta1: r.big_delta1.to_string(),
        big_delta2: r.big_delta2.to_string(),
        determinant: r.determinant.to_string(),
        deg1: (&r.deg1).into(),
        deg2: (&r.deg2).into(),
        c11: (&r.c11).into(),
        c22: (&r.c22).into(),
        c12: (&r.c12).into(),
        contractible: r.contractible,
        ample: r.ample,
        feasible: r.feasible,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigJson {
    pub p0: TParamsJson,
    pub p1: TParamsJson,
    pub p2: TParamsJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub max_m: u64,
    pub max_p: u64,
    pub mode: &'static str,
    pub examined: usize,
    pub feasible: Vec<ConfigJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlueReport {
    pub schema: u32,
    pub ade: Option<String>,
    /// Compatibility conditions that depend on more than the dual graph
    /// and are therefore not checked.
    pub unchecked: &'static [&'static str],
    pub dynkin: Dynkin,
    pub marked_black: Vec<String>,
    pub dsl: String,
}

pub const GLUE_UNCHECKED: &[&str] = &["primitivity", "local germ type"];

pub fn ade_name(t: Option<AdeType>) -> Option<String> {
    t.map(|t| t.to_string())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
