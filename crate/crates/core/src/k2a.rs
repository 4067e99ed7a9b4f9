//! Two central curves `C_1 ∪ C_2` on a surface with T-singularities: the
//! common point `P_0` and outer points `P_1 ∈ C_1`, `P_2 ∈ C_2`.
//!
//! The closed forms here are checked against graph-side computations on the
//! explicit plumbing `chain(P_1) – C̃_1 – chain(P_0) – C̃_2 – chain(P_2)`
//! with both `C̃_i` being (-1)-curves.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::graph::{numbered_ids, Color, Graph, Vertex};
use crate::quotient::{hj_expand, QuotientError, TParams};
use crate::linalg::Definiteness;
use crate::rational::Rational;
use crate::resolution::{contractibility, Resolution, ResolutionError};

pub const C1: &str = "C1";
pub const C2: &str = "C2";

/// T-parameters of the three non-Gorenstein points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K2AConfig {
    pub p0: TParams,
    pub p1: TParams,
    pub p2: TParams,
}

impl K2AConfig {
    pub fn new(p0: TParams, p1: TParams, p2: TParams) -> Self {
        K2AConfig { p0, p1, p2 }
    }

    /// Parses `(m,p,a)` triples.
    pub fn from_triples(t0: (u64, u64, u64), t1: (u64, u64, u64), t2: (u64, u64, u64)) -> Result<Self, QuotientError> {
        Ok(K2AConfig {
            p0: TParams::new(t0.0, t0.1, t0.2)?,
            p1: TParams::new(t1.0, t1.1, t1.2)?,
            p2: TParams::new(t2.0, t2.1, t2.2)?,
        })
    }

    /// Each curve carries a point of index 2.
    pub fn has_index_two_on_each_curve(&self) -> bool {
        let (m0, m1, m2) = (self.p0.m(), self.p1.m(), self.p2.m());
        (m0 == 2 || m1 == 2) && (m0 == 2 || m2 == 2)
    }
}

impl fmt::Display for K2AConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P0={} P1={} P2={}", self.p0, self.p1, self.p2)
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn order(t: TParams) -> BigInt {
    big(t.m()) * big(t.m()) * big(t.p())
}

// The closed forms in machine integers, when nothing overflows.
#[derive(Debug, Clone, Copy)]
struct Small {
    d1: i128,
    d2: i128,
    b1: i128,
    b2: i128,
    n0: i128,
    n1: i128,
    n2: i128,
    det: i128,
}

fn small(cfg: &K2AConfig) -> Option<Small> {
    let (t0, t1, t2) = (cfg.p0, cfg.p1, cfg.p2);
    let w = |x: u64| x as i128;
    let mul = |a: i128, b: i128| a.checked_mul(b);
    let n = |t: TParams| mul(mul(w(t.m()), w(t.m()))?, w(t.p()));
    let (n0, n1, n2) = (n(t0)?, n(t1)?, n(t2)?);
    let d1 = mul(w(t0.a()), w(t1.m()))? - mul(w(t1.a()), w(t0.m()))?;
    let d2 = mul(w(t2.a()), w(t0.m()))? - mul(w(t0.a()), w(t2.m()))?;
    let mp0 = mul(w(t0.m()), w(t0.p()))?;
    let b = |ni: i128, ti: TParams, di: i128| -> Option<i128> {
        let cross = mul(mul(mp0, mul(w(ti.m()), w(ti.p()))?)?, di)?;
        n0.checked_add(ni)?.checked_sub(cross)
    };
    let (b1, b2) = (b(n1, t1, d1)?, b(n2, t2, d2)?);
    let det = mul(b1, b2)?.checked_sub(mul(n1, n2)?)?;
    Some(Small {
        d1,
        d2,
        b1,
        b2,
        n0,
        n1,
        n2,
        det,
    })
}

/// `δ_1 = a_0 m_1 - a_1 m_0`, `δ_2 = a_2 m_0 - a_0 m_2`.
pub fn deltas(cfg: &K2AConfig) -> (BigInt, BigInt) {
    if let Some(s) = small(cfg) {
        return (s.d1.into(), s.d2.into());
    }
    let (t0, t1, t2) = (cfg.p0, cfg.p1, cfg.p2);
    (
        big(t0.a()) * big(t1.m()) - big(t1.a()) * big(t0.m()),
        big(t2.a()) * big(t0.m()) - big(t0.a()) * big(t2.m()),
    )
}

/// `Δ_i = m_0² p_0 + m_i² p_i - m_0 p_0 m_i p_i δ_i`.
pub fn big_deltas(cfg: &K2AConfig) -> (BigInt, BigInt) {
    if let Some(s) = small(cfg) {
        return (s.b1.into(), s.b2.into());
    }
    let (d1, d2) = deltas(cfg);
    let t0 = cfg.p0;
    let f = |ti: TParams, di: BigInt| {
        order(t0) + order(ti) - big(t0.m()) * big(t0.p()) * big(ti.m()) * big(ti.p()) * di
    };
    (f(cfg.p1, d1), f(cfg.p2, d2))
}

/// `-K_H·C_i = δ_i / (m_0 m_i)`.
pub fn degrees(cfg: &K2AConfig) -> (Rational, Rational) {
    if let Some(s) = small(cfg) {
        let m = |t: TParams| t.m() as i128;
        return (
            Rational::from_i128(s.d1, m(cfg.p0) * m(cfg.p1)),
            Rational::from_i128(s.d2, m(cfg.p0) * m(cfg.p2)),
        );
    }
    let (d1, d2) = deltas(cfg);
    let m0 = big(cfg.p0.m());
    (
        Rational::from_bigints(d1, &m0 * big(cfg.p1.m())),
        Rational::from_bigints(d2, &m0 * big(cfg.p2.m())),
    )
}

/// `(C_1², C_2², C_1·C_2)` with `C_i² = -Δ_i / (m_0² p_0 m_i² p_i)` and
/// `C_1·C_2 = 1 / (m_0² p_0)`.
pub fn self_intersections(cfg: &K2AConfig) -> (Rational, Rational, Rational) {
    if let Some(s) = small(cfg) {
        if let (Some(q1), Some(q2)) = (s.n0.checked_mul(s.n1), s.n0.checked_mul(s.n2)) {
            return (
                Rational::from_i128(-s.b1, q1),
                Rational::from_i128(-s.b2, q2),
                Rational::from_i128(1, s.n0),
            );
        }
    }
    let (b1, b2) = big_deltas(cfg);
    let n0 = order(cfg.p0);
    (
        Rational::from_bigints(-b1, &n0 * order(cfg.p1)),
        Rational::from_bigints(-b2, &n0 * order(cfg.p2)),
        Rational::from_bigints(BigInt::from(1), n0),
    )
}

/// `Δ_1 Δ_2 - m_1² p_1 m_2² p_2`, the contractibility determinant.
pub fn contraction_determinant(cfg: &K2AConfig) -> BigInt {
    if let Some(s) = small(cfg) {
        return s.det.into();
    }
    let (b1, b2) = big_deltas(cfg);
    b1 * b2 - order(cfg.p1) * order(cfg.p2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub delta1: BigInt,
    pub delta2: BigInt,
    pub big_delta1: BigInt,
    pub big_delta2: BigInt,
    pub determinant: BigInt,
    pub deg1: Rational,
    pub deg2: Rational,
    pub c11: Rational,
    pub c22: Rational,
    pub c12: Rational,
    /// `Δ_i > 0` and `Δ_1 Δ_2 - m_1² p_1 m_2² p_2 >= 0`.
    pub contractible: bool,
    /// `δ_i > 0`.
    pub ample: bool,
    pub feasible: bool,
}

pub fn is_feasible(cfg: &K2AConfig) -> FeasibilityReport {
    let (delta1, delta2) = deltas(cfg);
    let (big_delta1, big_delta2) = big_deltas(cfg);
    let determinant = contraction_determinant(cfg);
    let (deg1, deg2) = degrees(cfg);
    let (c11, c22, c12) = self_intersections(cfg);
    let contractible =
        big_delta1.is_positive() && big_delta2.is_positive() && !determinant.is_negative();
    let ample = delta1.is_positive() && delta2.is_positive();
    FeasibilityReport {
        delta1,
        delta2,
        big_delta1,
        big_delta2,
        determinant,
        deg1,
        deg2,
        c11,
        c22,
        c12,
        contractible,
        ample,
        feasible: contractible && ample,
    }
}

/// Cheap feasibility test for sweeps; agrees with `is_feasible(cfg).feasible`.
fn feasible_fast(cfg: &K2AConfig) -> bool {
    if let Some(s) = small(cfg) {
        return s.d1 > 0 && s.d2 > 0 && s.b1 > 0 && s.b2 > 0 && s.det >= 0;
    }
    let (d1, d2) = deltas(cfg);
    if !d1.is_positive() || !d2.is_positive() {
        return false;
    }
    let (b1, b2) = big_deltas(cfg);
    b1.is_positive() && b2.is_positive() && !(b1 * b2 - order(cfg.p1) * order(cfg.p2)).is_negative()
}

/// Coefficients `(c_a0, c_m0)` of `δ_1 + δ_2 = c_a0·a_0 + c_m0·m_0` for
/// fixed outer points `(m_1, a_1)`, `(m_2, a_2)`.
pub fn delta_sum_coefficients(m1: u64, a1: u64, m2: u64, a2: u64) -> (BigInt, BigInt) {
    (big(m1) - big(m2), big(a2) - big(a1))
}

/// Which chain end each `C̃_i` meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlumbingOrientation {
    /// `C̃_1` meets the `a_1/m_1` end of `P_1` and the `(m_0-a_0)/m_0` end of
    /// `P_0`; `C̃_2` meets the `a_0/m_0` end of `P_0` and the
    /// `(m_2-a_2)/m_2` end of `P_2`.
    #[default]
    Quoted,
    /// Every chain attached by its other end.
    Mirrored,
}

pub fn build_plumbing(cfg: &K2AConfig) -> Result<Graph, QuotientError> {
    build_plumbing_oriented(cfg, PlumbingOrientation::Quoted)
}

/// Assembles the resolution graph of `H` near `C_1 ∪ C_2`.
///
/// In a chain from [`hj_expand`] the first (`b_1`) end has codiscrepancy
/// `(m-a)/m` and the last end `a/m`, which fixes the attachment points.
pub fn build_plumbing_oriented(cfg: &K2AConfig, orientation: PlumbingOrientation) -> Result<Graph, QuotientError> {
    let chain = |t: TParams, prefix: &str| -> Result<(Vec<String>, Vec<u64>), QuotientError> {
        let entries = hj_expand(t.quotient()?).entries().to_vec();
        Ok((numbered_ids(prefix, entries.len()), entries))
    };
    let (ids1, b1) = chain(cfg.p1, "p1_")?;
    let (ids0, b0) = chain(cfg.p0, "p0_")?;
    let (ids2, b2) = chain(cfg.p2, "p2_")?;

    let mut vertices = Vec::with_capacity(ids1.len() + ids0.len() + ids2.len() + 2);
    let mut edges = Vec::with_capacity(vertices.capacity());
    let mut ends = Vec::new();
    for (ids, entries) in [(ids1, b1), (ids0, b0), (ids2, b2)] {
        let start = vertices.len();
        for (id, e) in ids.into_iter().zip(entries) {
            vertices.push(Vertex::new(id, Color::White, -(e as i64)));
        }
        edges.extend((start + 1..vertices.len()).map(|k| (k - 1, k)));
        ends.push((start, vertices.len() - 1));
    }
    let (c1, c2) = (vertices.len(), vertices.len() + 1);
    vertices.push(Vertex::new(C1, Color::Black, -1));
    vertices.push(Vertex::new(C2, Color::Black, -1));

    let [(f1, l1), (f0, l0), (f2, l2)] = [ends[0], ends[1], ends[2]];
    let (e1, e01, e02, e2) = match orientation {
        PlumbingOrientation::Quoted => (l1, f0, l0, f2),
        PlumbingOrientation::Mirrored => (f1, l0, f0, l2),
    };
    edges.extend([(e1, c1), (c1, e01), (e02, c2), (c2, e2)]);
    debug_assert!(Graph::from_parts(vertices.clone(), &edges).is_ok());
    Ok(crate::graph::assemble(vertices, &edges))
}

#[derive(Debug, thiserror::Error)]
pub enum PlumbingError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// Intersection numbers of `C_1`, `C_2` computed on [`build_plumbing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingValues {
    pub deg1: Rational,
    pub deg2: Rational,
    pub c11: Rational,
    pub c22: Rational,
    pub c12: Rational,
    pub contractibility: Definiteness,
}

pub fn plumbing_values(cfg: &K2AConfig) -> Result<PlumbingValues, PlumbingError> {
    let g = build_plumbing(cfg)?;
    let res = Resolution::new(&g)?;
    let products = res.pushforward_matrix(&[C1, C2])?;
    Ok(PlumbingValues {
        deg1: res.anticanonical_degree(C1)?,
        deg2: res.anticanonical_degree(C2)?,
        c11: products.get(0, 0).clone(),
        c22: products.get(1, 1).clone(),
        c12: products.get(0, 1).clone(),
        contractibility: contractibility(&g),
    })
}

/// Names of the quantities where the plumbing disagrees with the closed
/// forms; empty when everything matches.
pub fn plumbing_mismatches(cfg: &K2AConfig) -> Result<Vec<&'static str>, PlumbingError> {
    let v = plumbing_values(cfg)?;
    let (deg1, deg2) = degrees(cfg);
    let (c11, c22, c12) = self_intersections(cfg);
    let (b1, b2) = big_deltas(cfg);
    let det = contraction_determinant(cfg);
    let positive = b1.is_positive() && b2.is_positive();
    let mut out = Vec::new();
    for (name, ok) in [
        ("deg1", v.deg1 == deg1),
        ("deg2", v.deg2 == deg2),
        ("c11", v.c11 == c11),
        ("c22", v.c22 == c22),
        ("c12", v.c12 == c12),
        (
            "negative_definite",
            v.contractibility.is_negative_definite() == (positive && det.is_positive()),
        ),
        (
            "negative_semidefinite",
            matches!(v.contractibility, Definiteness::NegativeSemidefinite { .. })
                == (positive && det.is_zero()),
        ),
    ] {
        if !ok {
            out.push(name);
        }
    }
    Ok(out)
}

/// Which configurations a sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Each curve carries a point of index 2 (both components k2A_2).
    #[default]
    IndexTwo,
    /// No restriction on the indices.
    Exploratory,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub examined: usize,
    pub feasible: Vec<K2AConfig>,
}

/// Sweeps `2 <= m_i <= max_m`, `1 <= p_i <= max_p` and returns every
/// configuration that is both ample and contractible.
pub fn search(max_m: u64, max_p: u64, mode: SearchMode) -> SearchOutcome {
    let params = TParams::enumerate(2..=max_m.max(1), 1..=max_p);
    let partial: Vec<(usize, Vec<K2AConfig>)> = params
        .par_iter()
        .map(|&p0| {
            let mut examined = 0;
            let mut feasible = Vec::new();
            for &p1 in &params {
                for &p2 in &params {
                    let cfg = K2AConfig::new(p0, p1, p2);
                    if mode == SearchMode::IndexTwo && !cfg.has_index_two_on_each_curve() {
                        continue;
                    }
                    examined += 1;
                    if feasible_fast(&cfg) {
                        feasible.push(cfg);
                    }
                }
            }
            (examined, feasible)
        })
        .collect();
    let mut out = SearchOutcome {
        examined: 0,
        feasible: Vec::new(),
    };
    for (examined, feasible) in partial {
        out.examined += examined;
        out.feasible.extend(feasible);
    }
    out
}

/// Feasible two-curve configurations with a point of index 2 on each curve.
pub fn search_infeasible(max_m: u64, max_p: u64) -> Vec<K2AConfig> {
    search(max_m, max_p, SearchMode::IndexTwo).feasible
}
