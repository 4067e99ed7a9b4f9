//! Intersection theory on a dual graph.
//!
//! The white vertices are the exceptional curves `E_i` of the minimal
//! resolution `μ: H̃ → H`; black vertices are proper transforms `C̃` of the
//! central curve components. All curves are rational, so adjunction reads
//! `K·E = -2 - E²`.

use std::collections::BTreeMap;

use crate::graph::{Graph, GraphError};
use crate::linalg::{Definiteness, LdlFactor, SparseSym, SymMatrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("white subgraph is not negative definite, so it does not contract")]
    NotContractible,
    #[error("vertex {0:?} is not black")]
    NotBlack(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Intersection matrix of the curves in `subset`, rows in sorted id order.
pub fn intersection_matrix<S: AsRef<str>>(g: &Graph, subset: &[S]) -> Result<SymMatrix, ResolutionError> {
    let mut indices = subset
        .iter()
        .map(|id| g.require(id.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    indices.sort_unstable();
    indices.dedup();
    Ok(sparse_intersection(g, &indices).to_dense())
}

/// Intersection matrix of the whole graph.
pub fn full_intersection_matrix(g: &Graph) -> SymMatrix {
    let all: Vec<usize> = (0..g.len()).collect();
    sparse_intersection(g, &all).to_dense()
}

pub(crate) fn sparse_intersection(g: &Graph, indices: &[usize]) -> SparseSym {
    let mut position = vec![usize::MAX; g.len()];
    for (k, &i) in indices.iter().enumerate() {
        position[i] = k;
    }
    let diag = indices
        .iter()
        .map(|&i| Rational::from_integer(g.vertex(i).self_intersection))
        .collect();
    let off = indices
        .iter()
        .map(|&i| {
            g.neighbors(i)
                .iter()
                .filter(|&&j| position[j] != usize::MAX)
                .map(|&j| (position[j], Rational::one()))
                .collect()
        })
        .collect();
    SparseSym::from_parts(diag, off)
}

/// Definiteness of the full intersection matrix, blacks included.
pub fn contractibility(g: &Graph) -> Definiteness {
    let all: Vec<usize> = (0..g.len()).collect();
    sparse_intersection(g, &all).into_definiteness()
}

/// Coefficients of the codiscrepancy divisor `Θ` in `K_H̃ = μ*K_H - Θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codiscrepancy {
    coefficients: BTreeMap<String, Rational>,
}

impl Codiscrepancy {
    pub fn coefficients(&self) -> &BTreeMap<String, Rational> {
        &self.coefficients
    }

    pub fn get(&self, id: &str) -> Option<&Rational> {
        self.coefficients.get(id)
    }

    /// Every coefficient vanishes: the singularities are Du Val.
    pub fn is_du_val(&self) -> bool {
        self.coefficients.values().all(Rational::is_zero)
    }

    /// Every coefficient lies in `[0, 1)`.
    pub fn is_log_terminal(&self) -> bool {
        let one = Rational::one();
        self.coefficients
            .values()
            .all(|t| !t.is_negative() && *t < one)
    }
}

/// The minimal resolution data of a graph: the factored white intersection
/// matrix and the codiscrepancy coefficients. Computing it once and querying
/// many products avoids refactoring the matrix for each black curve.
#[derive(Debug, Clone)]
pub struct Resolution<'g> {
    graph: &'g Graph,
    whites: Vec<usize>,
    white_pos: Vec<Option<usize>>,
    factor: LdlFactor,
    theta: Vec<Rational>,
}

impl<'g> Resolution<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self, ResolutionError> {
        let whites = graph.white_indices();
        let mut white_pos = vec![None; graph.len()];
        for (k, &i) in whites.iter().enumerate() {
            white_pos[i] = Some(k);
        }
        let factor = sparse_intersection(graph, &whites)
            .into_negative_definite_factor()
            .ok_or(ResolutionError::NotContractible)?;
        // Θ·E_i = 2 + E_i² for every exceptional curve.
        let rhs: Vec<Rational> = whites
            .iter()
            .map(|&i| Rational::from_integer(2 + graph.vertex(i).self_intersection))
            .collect();
        let theta = factor.solve(&rhs).expect("dimension matches");
        Ok(Resolution {
            graph,
            whites,
            white_pos,
            factor,
            theta,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn codiscrepancy(&self) -> Codiscrepancy {
        Codiscrepancy {
            coefficients: self
                .whites
                .iter()
                .zip(&self.theta)
                .map(|(&i, t)| (self.graph.vertex(i).id.clone(), t.clone()))
                .collect(),
        }
    }

    fn black(&self, id: &str) -> Result<usize, ResolutionError> {
        let i = self.graph.require(id)?;
        if !self.graph.vertex(i).is_black() {
            return Err(ResolutionError::NotBlack(id.to_string()));
        }
        Ok(i)
    }

    /// `Θ·C̃`, summed over the white neighbors of `c`.
    fn theta_dot(&self, c: usize) -> Rational {
        self.graph
            .neighbors(c)
            .iter()
            .filter_map(|&j| self.white_pos[j])
            .map(|k| &self.theta[k])
            .sum()
    }

    /// `-K_H·C = (2 + C̃²) - Θ·C̃`.
    pub fn anticanonical_degree(&self, id: &str) -> Result<Rational, ResolutionError> {
        let c = self.black(id)?;
        let adjunction = Rational::from_integer(2 + self.graph.vertex(c).self_intersection);
        Ok(adjunction - self.theta_dot(c))
    }

    /// Coefficients `γ_j` with `μ*C = C̃ + Σ γ_j E_j`, in white index order.
    fn pullback(&self, c: usize) -> Vec<Rational> {
        let mut rhs = vec![Rational::zero(); self.whites.len()];
        for &j in self.graph.neighbors(c) {
            if let Some(k) = self.white_pos[j] {
                rhs[k] = -Rational::one();
            }
        }
        self.factor.solve(&rhs).expect("dimension matches")
    }

    /// The pullback `μ*C` as a map from white id to coefficient.
    pub fn pullback_coefficients(&self, id: &str) -> Result<BTreeMap<String, Rational>, ResolutionError> {
        let c = self.black(id)?;
        Ok(self
            .whites
            .iter()
            .zip(self.pullback(c))
            .map(|(&i, g)| (self.graph.vertex(i).id.clone(), g))
            .collect())
    }

    fn direct_product(&self, i: usize, j: usize) -> Rational {
        if i == j {
            Rational::from_integer(self.graph.vertex(i).self_intersection)
        } else if self.graph.has_edge(i, j) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn product_with(&self, gamma: &[Rational], i: usize, j: usize) -> Rational {
        let correction: Rational = self
            .graph
            .neighbors(j)
            .iter()
            .filter_map(|&w| self.white_pos[w])
            .map(|k| &gamma[k])
            .sum();
        self.direct_product(i, j) + correction
    }

    /// `C_1·C_2` on the singular surface, computed as `μ*C_1 · C̃_2`.
    pub fn pushforward_product(&self, c1: &str, c2: &str) -> Result<Rational, ResolutionError> {
        let i = self.black(c1)?;
        let j = self.black(c2)?;
        Ok(self.product_with(&self.pullback(i), i, j))
    }

    /// All products `C_i·C_j` among `ids`, one solve per curve.
    pub fn pushforward_matrix<S: AsRef<str>>(&self, ids: &[S]) -> Result<SymMatrix, ResolutionError> {
        let idx = ids
            .iter()
            .map(|id| self.black(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = SymMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            let gamma = self.pullback(i);
            for (b, &j) in idx.iter().enumerate().skip(a) {
                m.set(a, b, self.product_with(&gamma, i, j));
            }
        }
        Ok(m)
    }

    /// Determinant of the white intersection matrix.
    pub fn white_determinant(&self) -> Rational {
        self.factor.determinant()
    }
}

pub fn codiscrepancy(g: &Graph) -> Result<Codiscrepancy, ResolutionError> {
    Ok(Resolution::new(g)?.codiscrepancy())
}

pub fn anticanonical_degree(g: &Graph, c: &str) -> Result<Rational, ResolutionError> {
    Resolution::new(g)?.anticanonical_degree(c)
}

pub fn pushforward_product(g: &Graph, c1: &str, c2: &str) -> Result<Rational, ResolutionError> {
    Resolution::new(g)?.pushforward_product(c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::numbered_ids;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn white_chain(selfs: &[i64]) -> Graph {
        let ids = numbered_ids("e", selfs.len());
        let mut b = Graph::builder();
        for (id, s) in ids.iter().zip(selfs) {
            b.white(id.clone(), *s).unwrap();
        }
        b.path(&ids).unwrap();
        b.build()
    }

    #[test]
    fn intersection_matrix_examples() {
        let single = white_chain(&[-2]);
        assert_eq!(
            intersection_matrix(&single, &["e1"]).unwrap(),
            SymMatrix::from_int_rows(&[[-2]]).unwrap()
        );
        let a2 = white_chain(&[-2, -2]);
        assert_eq!(
            intersection_matrix(&a2, &["e2", "e1"]).unwrap(),
            SymMatrix::from_int_rows(&[[-2, 1], [1, -2]]).unwrap()
        );
        assert!(matches!(
            intersection_matrix(&a2, &["zz"]),
            Err(ResolutionError::Graph(GraphError::UnknownVertex(_)))
        ));
    }

    #[test]
    fn contractibility_examples() {
        assert_eq!(
            contractibility(&white_chain(&[-2, -2, -2])),
            Definiteness::NegativeDefinite
        );
        assert_eq!(
            contractibility(&white_chain(&[-2, -1, -2])),
            Definiteness::NegativeSemidefinite { kernel_dim: 1 }
        );
    }

    #[test]
    fn codiscrepancy_examples() {
        let a3 = white_chain(&[-2, -2, -2]);
        let c = codiscrepancy(&a3).unwrap();
        assert!(c.is_du_val() && c.is_log_terminal());

        let four = white_chain(&[-4]);
        assert_eq!(codiscrepancy(&four).unwrap().get("e1"), Some(&r(1, 2)));

        let nine = codiscrepancy(&white_chain(&[-5, -2])).unwrap();
        assert_eq!(nine.get("e1"), Some(&r(2, 3)));
        assert_eq!(nine.get("e2"), Some(&r(1, 3)));
        assert!(nine.is_log_terminal() && !nine.is_du_val());
    }

    #[test]
    fn codiscrepancy_requires_negative_definite_whites() {
        assert_eq!(
            codiscrepancy(&white_chain(&[-2, -1, -2])),
            Err(ResolutionError::NotContractible)
        );
    }

    #[test]
    fn degree_and_products() {
        // black -1 on a single white -3
        let mut b = Graph::builder();
        b.white("e", -3).unwrap().black("c", -1).unwrap();
        b.edge("e", "c").unwrap();
        let g = b.build();
        assert_eq!(anticanonical_degree(&g, "c").unwrap(), r(2, 3));
        assert_eq!(
            anticanonical_degree(&g, "e"),
            Err(ResolutionError::NotBlack("e".into()))
        );

        // black -1 on a white -4: C² = -1 + 1/4
        let mut b = Graph::builder();
        b.white("e", -4).unwrap().black("c", -1).unwrap();
        b.edge("e", "c").unwrap();
        let g = b.build();
        assert_eq!(pushforward_product(&g, "c", "c").unwrap(), r(-3, 4));

        // two blacks on the same -4
        let mut b = Graph::builder();
        b.white("e", -4).unwrap().black("c1", -1).unwrap().black("c2", -1).unwrap();
        b.edge("e", "c1").unwrap().edge("e", "c2").unwrap();
        let g = b.build();
        let res = Resolution::new(&g).unwrap();
        assert_eq!(res.pushforward_product("c1", "c2").unwrap(), r(1, 4));
        assert_eq!(res.pushforward_product("c2", "c1").unwrap(), r(1, 4));
    }

    #[test]
    fn no_whites_means_identity_pullback() {
        let mut b = Graph::builder();
        b.black("c", -3).unwrap();
        let g = b.build();
        assert_eq!(pushforward_product(&g, "c", "c").unwrap(), r(-3, 1));
        assert_eq!(anticanonical_degree(&g, "c").unwrap(), r(-1, 1));
    }

    #[test]
    fn crepant_black_in_du_val_graph() {
        let mut b = Graph::builder();
        b.white("a", -2).unwrap().black("c", -2).unwrap().white("d", -2).unwrap();
        b.edge("a", "c").unwrap().edge("c", "d").unwrap();
        let g = b.build();
        assert_eq!(anticanonical_degree(&g, "c").unwrap(), Rational::zero());
    }
}
