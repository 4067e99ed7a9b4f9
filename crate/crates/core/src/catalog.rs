//! Dual graphs of the general elephant along an irreducible central curve,
//! and gluing them along shared white components.
//!
//! Only the diagram variants with fully specified shapes are generated:
//! `IC` (k = 1), `IIB` (k = 3, m = 4), `kAD` and `k3A` (k = 1, n = 2), and
//! `k2A` for arbitrary `(k, m, l, n)`. In every template all curves are
//! (-2)-curves.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::ade::{dynkin_check, white_components, AdeType, DynkinCheck, WhiteComponent};
use crate::graph::{isomorphisms, numbered_ids, Graph, GraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid template parameters: {0}")]
    InvalidParams(String),
    #[error("unknown germ kind {0:?}")]
    UnknownKind(String),
    #[error("not an elephant graph: {0}")]
    NotElephant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlueError {
    #[error("white component {0} does not exist")]
    UnknownComponent(usize),
    #[error("components are not isomorphic under the given matching")]
    NotIsomorphic,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GermKind {
    IC,
    IIB,
    KAD,
    K3A,
    K2A,
}

impl GermKind {
    pub const ALL: [GermKind; 5] = [
        GermKind::IC,
        GermKind::IIB,
        GermKind::KAD,
        GermKind::K3A,
        GermKind::K2A,
    ];

    /// Kinds whose whole graph has a branch vertex (types D and E).
    pub fn is_branched(self) -> bool {
        !matches!(self, GermKind::K2A)
    }
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GermKind::IC => "IC",
            GermKind::IIB => "IIB",
            GermKind::KAD => "kAD",
            GermKind::K3A => "k3A",
            GermKind::K2A => "k2A",
        })
    }
}

impl FromStr for GermKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Ok(GermKind::IC),
            "iib" => Ok(GermKind::IIB),
            "kad" => Ok(GermKind::KAD),
            "k3a" => Ok(GermKind::K3A),
            "k2a" => Ok(GermKind::K2A),
            _ => Err(CatalogError::UnknownKind(s.to_string())),
        }
    }
}

/// A template kind together with its parameters.
///
/// `m`, `k` are the index and axial multiplicity of a singular point; `n`,
/// `l` those of the other non-Gorenstein point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GermTemplateSpec {
    IC { m: u32 },
    IIB,
    KAD { m: u32, l: u32 },
    K3A { m: u32 },
    K2A { k: u32, m: u32, l: u32, n: u32 },
}

/// Loosely typed parameters as they come from a command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TemplateParams {
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub l: Option<u32>,
}

impl GermTemplateSpec {
    pub fn kind(&self) -> GermKind {
        match self {
            GermTemplateSpec::IC { .. } => GermKind::IC,
            GermTemplateSpec::IIB => GermKind::IIB,
            GermTemplateSpec::KAD { .. } => GermKind::KAD,
            GermTemplateSpec::K3A { .. } => GermKind::K3A,
            GermTemplateSpec::K2A { .. } => GermKind::K2A,
        }
    }

    /// Builds a spec from a kind and optional parameters, checking that
    /// fixed parameters (e.g. `k = 1` for IC) are either omitted or equal
    /// to their fixed value.
    pub fn from_params(kind: GermKind, p: TemplateParams) -> Result<Self, CatalogError> {
        let fixed = |name: &str, given: Option<u32>, value: u32| match given {
            Some(v) if v != value => Err(CatalogError::InvalidParams(format!(
                "{kind} requires {name}={value}, got {v}"
            ))),
            _ => Ok(()),
        };
        let required = |name: &str, given: Option<u32>| {
            given.ok_or_else(|| CatalogError::InvalidParams(format!("{kind} requires --{name}")))
        };
        let unused = |name: &str, given: Option<u32>| match given {
            Some(_) => Err(CatalogError::InvalidParams(format!(
                "{kind} takes no parameter {name}"
            ))),
            None => Ok(()),
        };
        let spec = match kind {
            GermKind::IC => {
                fixed("k", p.k, 1)?;
                unused("n", p.n)?;
                unused("l", p.l)?;
                GermTemplateSpec::IC {
                    m: required("m", p.m)?,
                }
            }
            GermKind::IIB => {
                fixed("k", p.k, 3)?;
                fixed("m", p.m, 4)?;
                unused("n", p.n)?;
                unused("l", p.l)?;
                GermTemplateSpec::IIB
            }
            GermKind::KAD => {
                fixed("k", p.k, 1)?;
                fixed("n", p.n, 2)?;
                GermTemplateSpec::KAD {
                    m: required("m", p.m)?,
                    l: required("l", p.l)?,
                }
            }
            GermKind::K3A => {
                fixed("k", p.k, 1)?;
                fixed("n", p.n, 2)?;
                unused("l", p.l)?;
                GermTemplateSpec::K3A {
                    m: required("m", p.m)?,
                }
            }
            GermKind::K2A => GermTemplateSpec::K2A {
                k: required("k", p.k)?,
                m: required("m", p.m)?,
                l: required("l", p.l)?,
                n: required("n", p.n)?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::InvalidParams(msg));
        match *self {
            GermTemplateSpec::IC { m } if m < 5 || m % 2 == 0 => {
                bad(format!("IC needs odd m >= 5, got m={m}"))
            }
            GermTemplateSpec::KAD { m, l } if m < 3 || m % 2 == 0 || l < 1 => {
                bad(format!("kAD needs odd m >= 3 and l >= 1, got m={m}, l={l}"))
            }
            GermTemplateSpec::K3A { m } if m < 3 || m % 2 == 0 => {
                bad(format!("k3A needs odd m >= 3, got m={m}"))
            }
            GermTemplateSpec::K2A { k, m, l, n } if m < 2 || n < 2 || k < 1 || l < 1 => bad(
                format!("k2A needs m, n >= 2 and k, l >= 1, got k={k}, m={m}, l={l}, n={n}"),
            ),
            _ => Ok(()),
        }
    }

    /// Number of vertices of the template graph.
    pub fn rank(&self) -> usize {
        match *self {
            GermTemplateSpec::IC { m } => m as usize,
            GermTemplateSpec::IIB => 6,
            GermTemplateSpec::KAD { m, l } => (m + 2 * l + 1) as usize,
            GermTemplateSpec::K3A { m } => (m + 2) as usize,
            GermTemplateSpec::K2A { k, m, l, n } => (k * m + l * n - 1) as usize,
        }
    }

    /// Dynkin type of the whole template graph.
    pub fn expected_type(&self) -> AdeType {
        match *self {
            GermTemplateSpec::IC { m } => AdeType::d(m as usize),
            GermTemplateSpec::IIB => AdeType::e(6),
            GermTemplateSpec::KAD { .. } | GermTemplateSpec::K3A { .. } => AdeType::d(self.rank()),
            GermTemplateSpec::K2A { .. } => AdeType::a(self.rank()),
        }
    }

    /// All valid specs of `kind` within `bounds`, in a fixed order.
    pub fn enumerate(kind: GermKind, bounds: &ParamBounds) -> Vec<GermTemplateSpec> {
        let mut out = Vec::new();
        match kind {
            GermKind::IC => {
                for m in 5..=bounds.max_m {
                    out.push(GermTemplateSpec::IC { m });
                }
            }
            GermKind::IIB => out.push(GermTemplateSpec::IIB),
            GermKind::KAD => {
                for m in 3..=bounds.max_m {
                    for l in 1..=bounds.max_l {
                        out.push(GermTemplateSpec::KAD { m, l });
                    }
                }
            }
            GermKind::K3A => {
                for m in 3..=bounds.max_m {
                    out.push(GermTemplateSpec::K3A { m });
                }
            }
            GermKind::K2A => {
                for k in 1..=bounds.max_k {
                    for m in 2..=bounds.max_m {
                        for l in 1..=bounds.max_l {
                            for n in 2..=bounds.max_n {
                                out.push(GermTemplateSpec::K2A { k, m, l, n });
                            }
                        }
                    }
                }
            }
        }
        out.retain(|s| s.validate().is_ok() && s.rank() <= bounds.max_rank);
        out
    }
}

impl fmt::Display for GermTemplateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GermTemplateSpec::IC { m } => write!(f, "IC(m={m})"),
            GermTemplateSpec::IIB => write!(f, "IIB"),
            GermTemplateSpec::KAD { m, l } => write!(f, "kAD(m={m}, l={l})"),
            GermTemplateSpec::K3A { m } => write!(f, "k3A(m={m})"),
            GermTemplateSpec::K2A { k, m, l, n } => write!(f, "k2A(k={k}, m={m}, l={l}, n={n})"),
        }
    }
}

/// Inclusive upper bounds for template enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamBounds {
    pub max_m: u32,
    pub max_k: u32,
    pub max_n: u32,
    pub max_l: u32,
    pub max_rank: usize,
}

impl ParamBounds {
    /// Every parameter bounded only through the total rank.
    pub fn by_rank(max_rank: usize) -> Self {
        let r = max_rank as u32 + 1;
        ParamBounds {
            max_m: r,
            max_k: r,
            max_n: r,
            max_l: r,
            max_rank,
        }
    }
}

/// A dual graph in the crepant (elephant) context: a tree of (-2)-curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElephantGraph {
    graph: Graph,
    marked_black: Vec<String>,
}

impl ElephantGraph {
    /// Wraps a graph, marking all of its black vertices.
    pub fn new(graph: Graph) -> Result<Self, CatalogError> {
        if let Some(v) = graph.vertices().iter().find(|v| v.self_intersection != -2) {
            return Err(CatalogError::NotElephant(format!(
                "vertex {:?} has self-intersection {}",
                v.id, v.self_intersection
            )));
        }
        if !graph.is_empty() && !graph.is_tree() {
            return Err(CatalogError::NotElephant("graph is not a tree".into()));
        }
        let marked_black = graph
            .vertices()
            .iter()
            .filter(|v| v.is_black())
            .map(|v| v.id.clone())
            .collect();
        Ok(ElephantGraph {
            graph,
            marked_black,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn marked_black(&self) -> &[String] {
        &self.marked_black
    }

    pub fn white_components(&self) -> Vec<WhiteComponent> {
        white_components(&self.graph)
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

fn whites(b: &mut GraphBuilder, ids: &[String]) {
    for id in ids {
        b.white(id.clone(), -2).expect("fresh template id");
    }
}

/// Builds the template graph. Ids: white chains are `a…` and `b…`, the
/// black curve is `C1`, fork vertices and tips are `f`, `t1`, `t2`.
pub fn template(spec: &GermTemplateSpec) -> Result<ElephantGraph, CatalogError> {
    spec.validate()?;
    let mut b = Graph::builder();
    b.black("C1", -2).expect("fresh id");
    match *spec {
        GermTemplateSpec::IC { m } => {
            let chain = numbered_ids("a", (m - 1) as usize);
            whites(&mut b, &chain);
            b.path(&chain).expect("fresh path");
            b.edge("C1", &chain[(m - 3) as usize]).expect("fresh edge");
        }
        GermTemplateSpec::IIB => {
            let chain = numbered_ids("a", 5);
            whites(&mut b, &chain);
            b.path(&chain[..4]).expect("fresh path");
            b.edge(&chain[4], &chain[2]).expect("fresh edge");
            b.edge("C1", &chain[3]).expect("fresh edge");
        }
        GermTemplateSpec::KAD { m, l } => {
            let left = numbered_ids("a", (m - 1) as usize);
            let right = numbered_ids("b", (2 * l - 2) as usize);
            whites(&mut b, &left);
            whites(&mut b, &right);
            whites(&mut b, &["f".into(), "t1".into(), "t2".into()]);
            b.path(&left).expect("fresh path");
            b.edge(left.last().expect("m >= 3"), "C1").expect("fresh edge");
            let mut spine = vec!["C1".to_string()];
            spine.extend(right);
            spine.push("f".into());
            b.path(&spine).expect("fresh path");
            b.edge("f", "t1").expect("fresh edge");
            b.edge("f", "t2").expect("fresh edge");
        }
        GermTemplateSpec::K3A { m } => {
            let chain = numbered_ids("a", (m - 1) as usize);
            whites(&mut b, &chain);
            whites(&mut b, &["t1".into(), "t2".into()]);
            b.path(&chain).expect("fresh path");
            b.edge(chain.last().expect("m >= 3"), "C1").expect("fresh edge");
            b.edge("C1", "t1").expect("fresh edge");
            b.edge("C1", "t2").expect("fresh edge");
        }
        GermTemplateSpec::K2A { k, m, l, n } => {
            let left = numbered_ids("a", (k * m - 1) as usize);
            let right = numbered_ids("b", (l * n - 1) as usize);
            whites(&mut b, &left);
            whites(&mut b, &right);
            let mut spine = left;
            spine.push("C1".into());
            spine.extend(right);
            b.path(&spine).expect("fresh path");
        }
    }
    ElephantGraph::new(b.build())
}

/// How the vertices of two white components are identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matching {
    /// Path components, identified in order from their first ends.
    Forward,
    /// Path components, the second one traversed backwards.
    Reversed,
    /// Explicit pairs `(id in first graph, id in second graph)`.
    Explicit(Vec<(String, String)>),
}

fn component_ids(c: &WhiteComponent) -> Vec<String> {
    c.graph.vertices().iter().map(|v| v.id.clone()).collect()
}

// Resolves a matching into pairs (first-graph id, second-graph id).
fn resolve_matching(
    c1: &WhiteComponent,
    c2: &WhiteComponent,
    matching: &Matching,
) -> Result<Vec<(String, String)>, GlueError> {
    if c1.graph.len() != c2.graph.len() {
        return Err(GlueError::NotIsomorphic);
    }
    let pairs = match matching {
        Matching::Forward | Matching::Reversed => {
            let (Some(p1), Some(mut p2)) = (c1.graph.path_order(), c2.graph.path_order()) else {
                return Err(GlueError::InvalidMatching(
                    "ordered matchings need path components; use an explicit matching".into(),
                ));
            };
            if *matching == Matching::Reversed {
                p2.reverse();
            }
            p1.iter()
                .zip(&p2)
                .map(|(&i, &j)| (c1.graph.vertex(i).id.clone(), c2.graph.vertex(j).id.clone()))
                .collect()
        }
        Matching::Explicit(pairs) => pairs.clone(),
    };
    let ids1: BTreeSet<String> = component_ids(c1).into_iter().collect();
    let ids2: BTreeSet<String> = component_ids(c2).into_iter().collect();
    let firsts: BTreeSet<&String> = pairs.iter().map(|(a, _)| a).collect();
    let seconds: BTreeSet<&String> = pairs.iter().map(|(_, b)| b).collect();
    if pairs.len() != ids1.len()
        || firsts.len() != pairs.len()
        || seconds.len() != pairs.len()
        || firsts.iter().any(|a| !ids1.contains(*a))
        || seconds.iter().any(|b| !ids2.contains(*b))
    {
        return Err(GlueError::InvalidMatching(
            "matching must be a bijection between the two components".into(),
        ));
    }
    // labels and adjacency must be preserved
    for (a, b) in &pairs {
        let va = &c1.graph.vertices()[c1.graph.index_of(a).expect("checked")];
        let vb = &c2.graph.vertices()[c2.graph.index_of(b).expect("checked")];
        if va.self_intersection != vb.self_intersection {
            return Err(GlueError::NotIsomorphic);
        }
    }
    for (a1, b1) in &pairs {
        for (a2, b2) in &pairs {
            let e1 = c1.graph.has_edge(
                c1.graph.index_of(a1).expect("checked"),
                c1.graph.index_of(a2).expect("checked"),
            );
            let e2 = c2.graph.has_edge(
                c2.graph.index_of(b1).expect("checked"),
                c2.graph.index_of(b2).expect("checked"),
            );
            if e1 != e2 {
                return Err(GlueError::NotIsomorphic);
            }
        }
    }
    Ok(pairs)
}

/// Identifies white component `comp1` of `g1` with white component `comp2`
/// of `g2`. Vertices of `g2` outside the component keep their ids, with a
/// `'` appended while they collide with ids already present.
pub fn glue(
    g1: &ElephantGraph,
    g2: &ElephantGraph,
    comp1: usize,
    comp2: usize,
    matching: &Matching,
) -> Result<ElephantGraph, GlueError> {
    let comps1 = g1.white_components();
    let comps2 = g2.white_components();
    let c1 = comps1.get(comp1).ok_or(GlueError::UnknownComponent(comp1))?;
    let c2 = comps2.get(comp2).ok_or(GlueError::UnknownComponent(comp2))?;
    let pairs = resolve_matching(c1, c2, matching)?;
    Ok(glue_pairs(g1, g2, &pairs))
}

fn glue_pairs(g1: &ElephantGraph, g2: &ElephantGraph, pairs: &[(String, String)]) -> ElephantGraph {
    let mut b = Graph::builder();
    for v in g1.graph.vertices() {
        b.vertex(v.id.clone(), v.color, v.self_intersection)
            .expect("ids of a valid graph");
    }
    let identified: std::collections::HashMap<&str, &str> =
        pairs.iter().map(|(a, b)| (b.as_str(), a.as_str())).collect();
    let mut rename: std::collections::HashMap<&str, String> = std::collections::HashMap::new();
    for v in g2.graph.vertices() {
        if let Some(&target) = identified.get(v.id.as_str()) {
            rename.insert(&v.id, target.to_string());
            continue;
        }
        let mut id = v.id.clone();
        while b.contains(&id) {
            id.push('\'');
        }
        b.vertex(id.clone(), v.color, v.self_intersection)
            .expect("fresh id");
        rename.insert(&v.id, id);
    }
    for (x, y) in g1.graph.edge_ids() {
        b.edge(x, y).expect("edges of a valid graph");
    }
    for (x, y) in g2.graph.edge_ids() {
        let (rx, ry) = (&rename[x], &rename[y]);
        if identified.contains_key(x) && identified.contains_key(y) {
            continue; // already present through the isomorphism
        }
        b.edge(rx, ry).expect("edges touching new vertices are new");
    }
    let graph = b.build();
    let mut marked_black: Vec<String> = g1.marked_black.clone();
    marked_black.extend(g2.marked_black.iter().map(|id| rename[id.as_str()].clone()));
    ElephantGraph {
        graph,
        marked_black,
    }
}

/// Dynkin criterion on an elephant graph.
pub fn check_elephant(g: &ElephantGraph) -> DynkinCheck {
    dynkin_check(&g.graph)
}

/// One successful gluing found by [`enumerate_compatible`].
#[derive(Debug, Clone)]
pub struct GluedConfiguration {
    pub first: GermTemplateSpec,
    pub second: GermTemplateSpec,
    pub comp1: usize,
    pub comp2: usize,
    pub matching: Vec<(String, String)>,
    pub glued: ElephantGraph,
    pub ade: AdeType,
}

/// Which identifications [`enumerate_compatible_with`] tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GluingRule {
    /// Two distinct central curves through the shared point meet different
    /// curves of its resolution: on a component with more than one vertex no
    /// vertex may touch black curves from both sides.
    #[default]
    DistinctAttachments,
    /// Every label-preserving isomorphism of the two components.
    AnyIsomorphism,
}

fn attachment_vertices(g: &Graph, comp: &Graph) -> Vec<bool> {
    comp.vertices()
        .iter()
        .map(|v| {
            let i = g.index_of(&v.id).expect("component of g");
            g.neighbors(i).iter().any(|&j| g.vertex(j).is_black())
        })
        .collect()
}

/// [`enumerate_compatible_with`] under [`GluingRule::DistinctAttachments`].
pub fn enumerate_compatible(a: GermKind, b: GermKind, bounds: &ParamBounds) -> Vec<GluedConfiguration> {
    enumerate_compatible_with(a, b, bounds, GluingRule::default())
}

/// Glues every pair of templates within `bounds` along every pair of white
/// components and every identification allowed by `rule`, keeping those
/// whose glued graph is still a Dynkin diagram. The result order is
/// deterministic.
pub fn enumerate_compatible_with(
    a: GermKind,
    b: GermKind,
    bounds: &ParamBounds,
    rule: GluingRule,
) -> Vec<GluedConfiguration> {
    let specs_a = GermTemplateSpec::enumerate(a, bounds);
    let specs_b = GermTemplateSpec::enumerate(b, bounds);
    let prepare = |s: &GermTemplateSpec| {
        let t = template(s).expect("enumerated specs are valid");
        let comps: Vec<(WhiteComponent, Vec<bool>)> = t
            .white_components()
            .into_iter()
            .map(|c| {
                let touch = attachment_vertices(t.graph(), &c.graph);
                (c, touch)
            })
            .collect();
        (*s, t, comps)
    };
    let templates_b: Vec<_> = specs_b.iter().map(prepare).collect();
    specs_a
        .par_iter()
        .flat_map_iter(|spec_a| {
            let (_, ta, comps_a) = prepare(spec_a);
            let mut found = Vec::new();
            for (spec_b, tb, comps_b) in &templates_b {
                for (i, (ca, touch_a)) in comps_a.iter().enumerate() {
                    for (j, (cb, touch_b)) in comps_b.iter().enumerate() {
                        if ca.graph.len() != cb.graph.len() {
                            continue;
                        }
                        for iso in isomorphisms(&ca.graph, &cb.graph) {
                            let clash = ca.graph.len() > 1
                                && iso.iter().enumerate().any(|(x, &y)| touch_a[x] && touch_b[y]);
                            if rule == GluingRule::DistinctAttachments && clash {
                                continue;
                            }
                            let pairs: Vec<(String, String)> = iso
                                .iter()
                                .enumerate()
                                .map(|(x, &y)| {
                                    (ca.graph.vertex(x).id.clone(), cb.graph.vertex(y).id.clone())
                                })
                                .collect();
                            let glued = glue_pairs(&ta, tb, &pairs);
                            if let Some(ade) = check_elephant(&glued).ade {
                                found.push(GluedConfiguration {
                                    first: *spec_a,
                                    second: *spec_b,
                                    comp1: i,
                                    comp2: j,
                                    matching: pairs,
                                    glued,
                                    ade,
                                });
                            }
                        }
                    }
                }
            }
            found
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::ade_classify;
    use crate::graph::is_isomorphic;

    fn k2a(k: u32, m: u32, l: u32, n: u32) -> ElephantGraph {
        template(&GermTemplateSpec::K2A { k, m, l, n }).unwrap()
    }

    #[test]
    fn template_examples() {
        let ic = template(&GermTemplateSpec::IC { m: 5 }).unwrap();
        assert_eq!(ic.graph().white_indices().len(), 4);
        assert_eq!(ic.graph().black_indices().len(), 1);
        assert_eq!(ade_classify(ic.graph()), Some(AdeType::d(5)));

        let iib = template(&GermTemplateSpec::IIB).unwrap();
        assert_eq!(ade_classify(iib.graph()), Some(AdeType::e(6)));

        let g = k2a(1, 3, 1, 2);
        assert_eq!(g.graph().len(), 4);
        assert_eq!(ade_classify(g.graph()), Some(AdeType::a(4)));
    }

    #[test]
    fn template_white_components() {
        let k3a = template(&GermTemplateSpec::K3A { m: 5 }).unwrap();
        let types: Vec<_> = k3a.white_components().iter().map(|c| c.ade).collect();
        assert_eq!(types, [Some(AdeType::a(4)), Some(AdeType::a(1)), Some(AdeType::a(1))]);

        // D_3 and A_3 are the same diagram; the recognizer reports A_3.
        let kad = template(&GermTemplateSpec::KAD { m: 3, l: 1 }).unwrap();
        let types: Vec<_> = kad.white_components().iter().map(|c| c.ade).collect();
        assert_eq!(types, [Some(AdeType::a(2)), Some(AdeType::a(3))]);

        let kad = template(&GermTemplateSpec::KAD { m: 5, l: 3 }).unwrap();
        let types: Vec<_> = kad.white_components().iter().map(|c| c.ade).collect();
        assert_eq!(types, [Some(AdeType::a(4)), Some(AdeType::d(7))]);

        let iib = template(&GermTemplateSpec::IIB).unwrap();
        let types: Vec<_> = iib.white_components().iter().map(|c| c.ade).collect();
        assert_eq!(types, [Some(AdeType::d(5))]);
    }

    #[test]
    fn invalid_params_rejected() {
        for bad in [
            GermTemplateSpec::IC { m: 3 },
            GermTemplateSpec::IC { m: 6 },
            GermTemplateSpec::KAD { m: 3, l: 0 },
            GermTemplateSpec::K3A { m: 4 },
            GermTemplateSpec::K2A { k: 0, m: 2, l: 1, n: 2 },
            GermTemplateSpec::K2A { k: 1, m: 1, l: 1, n: 2 },
        ] {
            assert!(matches!(template(&bad), Err(CatalogError::InvalidParams(_))), "{bad}");
        }
        let p = TemplateParams {
            m: Some(5),
            k: Some(2),
            ..Default::default()
        };
        assert!(GermTemplateSpec::from_params(GermKind::IC, p).is_err());
        let p = TemplateParams {
            m: Some(4),
            ..Default::default()
        };
        assert_eq!(
            GermTemplateSpec::from_params(GermKind::IIB, p).unwrap(),
            GermTemplateSpec::IIB
        );
    }

    #[test]
    fn glue_k2a_along_a1() {
        let g = k2a(1, 3, 1, 2);
        // components: [a1 a2] (A_2), [b1] (A_1)
        let glued = glue(&g, &g, 1, 1, &Matching::Forward).unwrap();
        assert_eq!(glued.marked_black().len(), 2);
        let check = check_elephant(&glued);
        assert!(check.is_dynkin);
        assert_eq!(check.ade, Some(AdeType::a(7)));
    }

    #[test]
    fn glue_kad_pair_has_two_branch_points() {
        let kad = template(&GermTemplateSpec::KAD { m: 3, l: 1 }).unwrap();
        let glued = glue(&kad, &kad, 0, 0, &Matching::Reversed).unwrap();
        let check = check_elephant(&glued);
        assert!(!check.is_dynkin);
        assert_eq!(check.valency3_count, 2);
        assert_eq!(check.ade, None);
    }

    #[test]
    fn glue_errors() {
        let g = k2a(1, 3, 1, 2);
        assert_eq!(glue(&g, &g, 0, 1, &Matching::Forward), Err(GlueError::NotIsomorphic));
        assert_eq!(glue(&g, &g, 0, 7, &Matching::Forward), Err(GlueError::UnknownComponent(7)));
        let iib = template(&GermTemplateSpec::IIB).unwrap();
        let kad = template(&GermTemplateSpec::KAD { m: 3, l: 2 }).unwrap();
        assert!(matches!(
            glue(&iib, &kad, 0, 1, &Matching::Forward),
            Err(GlueError::InvalidMatching(_))
        ));
        let bogus = Matching::Explicit(vec![("a1".into(), "a1".into())]);
        assert!(matches!(glue(&g, &g, 0, 0, &bogus), Err(GlueError::InvalidMatching(_))));
    }

    #[test]
    fn glue_is_symmetric_up_to_isomorphism() {
        let g1 = k2a(1, 3, 1, 3);
        let g2 = k2a(2, 2, 1, 2);
        // g1: [a1 a2] A_2, [b1 b2] A_2; g2: [a1 a2 a3] A_3, [b1] A_1
        let forward = glue(&g1, &g2, 1, 1, &Matching::Forward);
        assert_eq!(forward, Err(GlueError::NotIsomorphic));
        let g2 = k2a(1, 3, 1, 2);
        for m in [Matching::Forward, Matching::Reversed] {
            let x = glue(&g1, &g2, 0, 0, &m).unwrap();
            let y = glue(&g2, &g1, 0, 0, &m).unwrap();
            assert!(is_isomorphic(x.graph(), y.graph()));
        }
    }

    #[test]
    fn explicit_matching_on_trees() {
        let iib = template(&GermTemplateSpec::IIB).unwrap();
        let kad = template(&GermTemplateSpec::KAD { m: 3, l: 2 }).unwrap();
        let comps_iib = iib.white_components();
        let comps_kad = kad.white_components();
        let isos = isomorphisms(&comps_iib[0].graph, &comps_kad[1].graph);
        assert_eq!(isos.len(), 2);
        for iso in isos {
            let pairs = iso
                .iter()
                .enumerate()
                .map(|(x, &y)| {
                    (
                        comps_iib[0].graph.vertex(x).id.clone(),
                        comps_kad[1].graph.vertex(y).id.clone(),
                    )
                })
                .collect();
            let glued = glue(&iib, &kad, 0, 1, &Matching::Explicit(pairs)).unwrap();
            assert!(!check_elephant(&glued).is_dynkin);
        }
    }

    #[test]
    fn compatible_examples() {
        let bounds = ParamBounds {
            max_m: 9,
            ..ParamBounds::by_rank(20)
        };
        assert!(enumerate_compatible(GermKind::KAD, GermKind::K3A, &bounds).is_empty());
        assert!(enumerate_compatible(GermKind::IIB, GermKind::IIB, &bounds).is_empty());
        let small = ParamBounds::by_rank(7);
        let found = enumerate_compatible(GermKind::K2A, GermKind::K2A, &small);
        assert!(!found.is_empty());
        assert!(found.iter().all(|c| c.ade.family == crate::ade::AdeFamily::A));
    }

    #[test]
    fn same_end_gluing_of_chains_branches() {
        // a1 - C1 - b1 - b2, glued to itself along [b1 b2] with both curves on b1
        let g = k2a(1, 2, 1, 3);
        let glued = glue(&g, &g, 1, 1, &Matching::Forward).unwrap();
        assert_eq!(check_elephant(&glued).ade, Some(AdeType::e(6)));
        let glued = glue(&g, &g, 1, 1, &Matching::Reversed).unwrap();
        assert_eq!(check_elephant(&glued).ade, Some(AdeType::a(6)));

        let small = ParamBounds::by_rank(7);
        let all = enumerate_compatible_with(GermKind::K2A, GermKind::K2A, &small, GluingRule::AnyIsomorphism);
        assert!(all.iter().any(|c| c.ade.family == crate::ade::AdeFamily::E));
    }
}
