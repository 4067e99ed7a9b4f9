//! Cyclic quotient singularities `1/n(1, q)`, their Hirzebruch–Jung
//! resolution chains, and the T-family `1/(m²p)(1, mpa - 1)`.

use std::fmt;

use num_integer::Integer;

use crate::graph::{numbered_ids, Graph};
use crate::rational::Rational;
use crate::resolution::codiscrepancy;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("invalid cyclic quotient 1/{n}(1,{q}): need 1 <= q < n and gcd(n, q) = 1")]
    InvalidQuotient { n: u64, q: u64 },
    #[error("invalid T-parameters (m={m}, p={p}, a={a}): need p >= 1, 1 <= a < m, gcd(m, a) = 1")]
    InvalidTParams { m: u64, p: u64, a: u64 },
    #[error("invalid chain: entry {0} is below 2")]
    InvalidChain(i64),
    #[error("empty chain")]
    EmptyChain,
    #[error("value out of range")]
    Overflow,
}

/// The cyclic quotient `1/n(1, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicQuotient {
    n: u64,
    q: u64,
}

impl CyclicQuotient {
    pub fn new(n: u64, q: u64) -> Result<Self, QuotientError> {
        if q == 0 || q >= n || n.gcd(&q) != 1 {
            return Err(QuotientError::InvalidQuotient { n, q });
        }
        Ok(CyclicQuotient { n, q })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn q(self) -> u64 {
        self.q
    }

    /// The same singularity with the generators swapped: `1/n(1, q')`,
    /// `q q' ≡ 1 (mod n)`.
    pub fn partner(self) -> CyclicQuotient {
        let inv = mod_inverse(self.q, self.n).expect("q is a unit mod n");
        CyclicQuotient {
            n: self.n,
            q: inv,
        }
    }

    /// `1/n(1, n-1)`, the A_{n-1} rational double point.
    pub fn is_du_val(self) -> bool {
        self.q == self.n - 1
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.n, self.q)
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i128) as u64)
}

/// Parameters `(m, p, a)` of `1/(m²p)(1, mpa - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TParams {
    m: u64,
    p: u64,
    a: u64,
}

impl TParams {
    pub fn new(m: u64, p: u64, a: u64) -> Result<Self, QuotientError> {
        if p == 0 || a == 0 || a >= m || m.gcd(&a) != 1 {
            return Err(QuotientError::InvalidTParams { m, p, a });
        }
        Ok(TParams { m, p, a })
    }

    pub fn m(self) -> u64 {
        self.m
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn a(self) -> u64 {
        self.a
    }

    /// `m² p`, the order of the group.
    pub fn order(self) -> u64 {
        self.m * self.m * self.p
    }

    pub fn quotient(self) -> Result<CyclicQuotient, QuotientError> {
        let n = self
            .m
            .checked_mul(self.m)
            .and_then(|x| x.checked_mul(self.p))
            .ok_or(QuotientError::Overflow)?;
        let q = self
            .m
            .checked_mul(self.p)
            .and_then(|x| x.checked_mul(self.a))
            .ok_or(QuotientError::Overflow)?
            - 1;
        CyclicQuotient::new(n, q)
    }

    /// Every valid parameter triple with `m` in `ms` and `p` in `ps`,
    /// ordered by `(m, p, a)`.
    pub fn enumerate(
        ms: std::ops::RangeInclusive<u64>,
        ps: std::ops::RangeInclusive<u64>,
    ) -> Vec<TParams> {
        let mut out = Vec::new();
        for m in ms {
            for p in ps.clone() {
                for a in 1..m {
                    if let Ok(t) = TParams::new(m, p, a) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.p, self.a)
    }
}

/// Hirzebruch–Jung continued fraction `[b_1, …, b_k]`, all `b_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HjChain(Vec<u64>);

impl HjChain {
    pub fn new(entries: Vec<u64>) -> Result<Self, QuotientError> {
        if entries.is_empty() {
            return Err(QuotientError::EmptyChain);
        }
        if let Some(&b) = entries.iter().find(|&&b| b < 2) {
            return Err(QuotientError::InvalidChain(b as i64));
        }
        Ok(HjChain(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HjChain {
        HjChain(self.0.iter().rev().copied().collect())
    }
}

/// `n/q = b_1 - 1/(b_2 - 1/(…))`.
pub fn hj_expand(s: CyclicQuotient) -> HjChain {
    let (mut n, mut q) = (s.n, s.q);
    let mut entries = Vec::new();
    while q > 0 {
        let b = n.div_ceil(q);
        entries.push(b);
        (n, q) = (q, b * q - n);
    }
    HjChain(entries)
}

/// Inverse of [`hj_expand`].
pub fn hj_contract(entries: &[i64]) -> Result<CyclicQuotient, QuotientError> {
    if entries.is_empty() {
        return Err(QuotientError::EmptyChain);
    }
    if let Some(&b) = entries.iter().find(|&&b| b < 2) {
        return Err(QuotientError::InvalidChain(b));
    }
    // Fold from the tail: x_k = b_k, x_i = b_i - 1/x_{i+1}, tracked as n/q.
    let (mut n, mut q): (u128, u128) = (1, 0);
    for &b in entries.iter().rev() {
        let next_n = (b as u128)
            .checked_mul(n)
            .and_then(|x| x.checked_sub(q))
            .ok_or(QuotientError::Overflow)?;
        (n, q) = (next_n, n);
    }
    let n = u64::try_from(n).map_err(|_| QuotientError::Overflow)?;
    let q = u64::try_from(q).map_err(|_| QuotientError::Overflow)?;
    CyclicQuotient::new(n, q)
}

impl HjChain {
    pub fn contract(&self) -> CyclicQuotient {
        let signed: Vec<i64> = self.0.iter().map(|&b| b as i64).collect();
        hj_contract(&signed).expect("valid chain")
    }
}

/// The resolution chain of a cyclic quotient as a path of white vertices.
#[derive(Debug, Clone)]
pub struct ChainGraph {
    pub graph: Graph,
    /// Vertex ids from the `b_1` end to the `b_k` end.
    pub ids: Vec<String>,
}

impl ChainGraph {
    pub fn first(&self) -> &str {
        &self.ids[0]
    }

    pub fn last(&self) -> &str {
        &self.ids[self.ids.len() - 1]
    }
}

pub fn chain_graph(s: CyclicQuotient) -> ChainGraph {
    chain_graph_with_prefix(s, "e")
}

pub fn chain_graph_with_prefix(s: CyclicQuotient, prefix: &str) -> ChainGraph {
    let chain = hj_expand(s);
    let ids = numbered_ids(prefix, chain.len());
    let mut b = Graph::builder();
    for (id, &e) in ids.iter().zip(chain.entries()) {
        b.white(id.clone(), -(e as i64)).expect("fresh ids");
    }
    b.path(&ids).expect("fresh path");
    ChainGraph {
        graph: b.build(),
        ids,
    }
}

/// Codiscrepancy coefficients at the first (`b_1`) and last chain vertices.
pub fn end_codiscrepancies(s: CyclicQuotient) -> (Rational, Rational) {
    let chain = chain_graph(s);
    let theta = codiscrepancy(&chain.graph).expect("cyclic quotient chains are negative definite");
    (
        theta.get(chain.first()).expect("first end").clone(),
        theta.get(chain.last()).expect("last end").clone(),
    )
}

/// T-parameters realizing `s` or its partner, smallest `m` first.
///
/// The returned parameters induce either `s` itself or `s.partner()`.
pub fn is_class_t(s: CyclicQuotient) -> Option<TParams> {
    t_params_exact(s).or_else(|| t_params_exact(s.partner()))
}

/// T-parameters inducing exactly `1/n(1, q)`.
pub fn t_params_exact(s: CyclicQuotient) -> Option<TParams> {
    let (n, q) = (s.n, s.q);
    let mut m = 2u64;
    while m.checked_mul(m).is_some_and(|mm| mm <= n) {
        let mm = m * m;
        if n % mm == 0 {
            let p = n / mm;
            let mp = m * p;
            if (q + 1) % mp == 0 {
                let a = (q + 1) / mp;
                if let Ok(t) = TParams::new(m, p, a) {
                    return Some(t);
                }
            }
        }
        m += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cq(n: u64, q: u64) -> CyclicQuotient {
        CyclicQuotient::new(n, q).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn validation() {
        assert!(CyclicQuotient::new(4, 2).is_err());
        assert!(CyclicQuotient::new(4, 4).is_err());
        assert!(CyclicQuotient::new(4, 0).is_err());
        assert!(TParams::new(3, 1, 3).is_err());
        assert!(TParams::new(4, 1, 2).is_err());
        assert!(TParams::new(3, 0, 1).is_err());
        assert!(TParams::new(1, 1, 0).is_err());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(cq(4, 1)).entries(), &[4]);
        assert_eq!(hj_expand(cq(9, 2)).entries(), &[5, 2]);
        assert_eq!(hj_expand(cq(6, 5)).entries(), &[2; 5]);
        assert_eq!(hj_expand(cq(9, 5)).entries(), &[2, 5]);
    }

    #[test]
    fn contract_examples() {
        assert_eq!(hj_contract(&[4]).unwrap(), cq(4, 1));
        assert_eq!(hj_contract(&[5, 2]).unwrap(), cq(9, 2));
        assert_eq!(hj_contract(&[2]).unwrap(), cq(2, 1));
        assert_eq!(hj_contract(&[3, 1]), Err(QuotientError::InvalidChain(1)));
        assert_eq!(hj_contract(&[]), Err(QuotientError::EmptyChain));
    }

    #[test]
    fn chain_graph_examples() {
        let g = chain_graph(cq(4, 1));
        assert_eq!(g.graph.len(), 1);
        assert_eq!(g.graph.vertex(0).self_intersection, -4);
        let g = chain_graph(cq(9, 2));
        let selfs: Vec<i64> = g.ids.iter().map(|id| {
            g.graph.vertex(g.graph.index_of(id).unwrap()).self_intersection
        }).collect();
        assert_eq!(selfs, [-5, -2]);
        assert_eq!(g.first(), "e1");
        let g = chain_graph(cq(3, 2));
        assert!(g.graph.vertices().iter().all(|v| v.self_intersection == -2));
    }

    #[test]
    fn end_codiscrepancy_examples() {
        let t = TParams::new(2, 1, 1).unwrap();
        assert_eq!(end_codiscrepancies(t.quotient().unwrap()), (r(1, 2), r(1, 2)));
        let t = TParams::new(3, 1, 1).unwrap();
        assert_eq!(end_codiscrepancies(t.quotient().unwrap()), (r(2, 3), r(1, 3)));
        assert_eq!(end_codiscrepancies(cq(2, 1)), (r(0, 1), r(0, 1)));
    }

    #[test]
    fn class_t_examples() {
        assert_eq!(is_class_t(cq(4, 1)), Some(TParams::new(2, 1, 1).unwrap()));
        assert_eq!(is_class_t(cq(9, 2)), Some(TParams::new(3, 1, 1).unwrap()));
        assert_eq!(is_class_t(cq(5, 1)), None);
        // 1/9(1,5) is 1/9(1,2) with swapped generators
        assert_eq!(t_params_exact(cq(9, 5)), Some(TParams::new(3, 1, 2).unwrap()));
        assert_eq!(is_class_t(cq(9, 5)), Some(TParams::new(3, 1, 2).unwrap()));
    }

    #[test]
    fn du_val_is_flagged_not_class_t() {
        for n in 2..30 {
            let s = cq(n, n - 1);
            assert!(s.is_du_val());
            assert_eq!(is_class_t(s), None, "{s}");
        }
    }

    #[test]
    fn partner_is_involution() {
        let s = cq(35, 11);
        assert_eq!(s.partner().partner(), s);
        assert_eq!((s.q() * s.partner().q()) % s.n(), 1);
    }
}
