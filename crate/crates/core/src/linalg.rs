//! Symmetric matrices over the rationals, exact solving and definiteness.
//!
//! Definiteness uses congruence diagonalization: repeatedly eliminate a
//! negative diagonal pivot and replace the matrix by its Schur complement.
//! Inertia is preserved at every step, so the pivots plus the leftover
//! zero rows give the exact classification and kernel dimension.

use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("right-hand side has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular system with no solution")]
    SingularMatrix,
    #[error("underdetermined system: solution set has dimension {solution_dim}")]
    Underdetermined { solution_dim: usize },
}

/// Outcome of classifying a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    NegativeDefinite,
    NegativeSemidefinite { kernel_dim: usize },
    Other,
}

impl Definiteness {
    pub fn is_negative_definite(self) -> bool {
        matches!(self, Definiteness::NegativeDefinite)
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Definiteness::NegativeDefinite => f.write_str("negative definite"),
            Definiteness::NegativeSemidefinite { kernel_dim } => {
                write!(f, "negative semidefinite (kernel dimension {kernel_dim})")
            }
            Definiteness::Other => f.write_str("not negative semidefinite"),
        }
    }
}

/// Dense symmetric matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(LinalgError::NotSquare {
                    row,
                    len: r.len(),
                    dim,
                });
            }
            entries.extend(r);
        }
        let m = SymMatrix { dim, entries };
        for i in 0..dim {
            for j in (i + 1)..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(LinalgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[j * self.dim + i] = value.clone();
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[Rational]) -> Rational {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn determinant(&self) -> Rational {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &pivot;
                for k in col..n {
                    let delta = &factor * &a[col * n + k];
                    a[r * n + k] -= &delta;
                }
            }
        }
        det
    }

    pub fn definiteness(&self) -> Definiteness {
        SparseSym::from_dense(self).definiteness()
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim).map(|i| self.row(i)))
            .finish()
    }
}

/// Solves `m · x = b` exactly.
pub fn solve_linear(m: &SymMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = m.dim();
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    // Augmented [m | b], reduced to row echelon form.
    let w = n + 1;
    let mut a: Vec<Rational> = Vec::with_capacity(n * w);
    for (i, bi) in b.iter().enumerate() {
        a.extend_from_slice(m.row(i));
        a.push(bi.clone());
    }
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r * w + col].is_zero()) else {
            continue;
        };
        if p != row {
            for k in 0..w {
                a.swap(p * w + k, row * w + k);
            }
        }
        let inv = a[row * w + col].recip();
        for k in col..w {
            a[row * w + k] *= &inv;
        }
        for r in 0..n {
            if r == row || a[r * w + col].is_zero() {
                continue;
            }
            let factor = a[r * w + col].clone();
            for k in col..w {
                let delta = &factor * &a[row * w + k];
                a[r * w + k] -= &delta;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let rank = row;
    if (rank..n).any(|r| !a[r * w + n].is_zero()) {
        return Err(LinalgError::SingularMatrix);
    }
    if rank < n {
        return Err(LinalgError::Underdetermined {
            solution_dim: n - rank,
        });
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[r * w + n].clone();
    }
    Ok(x)
}

/// Classifies a dense symmetric matrix.
pub fn definiteness(m: &SymMatrix) -> Definiteness {
    m.definiteness()
}

/// Sparse symmetric matrix: a diagonal plus sorted off-diagonal rows.
///
/// Intersection matrices of dual graphs are adjacency-sparse, and on trees a
/// minimum-degree elimination order produces no fill-in at all.
#[derive(Debug, Clone)]
pub struct SparseSym {
    diag: Vec<Rational>,
    off: Vec<Vec<(usize, Rational)>>,
}

/// One step of a symmetric elimination: the pivot index, its value, and the
/// off-diagonal entries of its row among not-yet-eliminated indices.
#[derive(Debug, Clone)]
struct Step {
    pivot: usize,
    value: Rational,
    inv: Rational,
    row: Vec<(usize, Rational)>,
}

/// `L D Lᵀ` factorization of a negative definite [`SparseSym`].
#[derive(Debug, Clone)]
pub struct LdlFactor {
    dim: usize,
    steps: Vec<Step>,
}

impl SparseSym {
    pub fn new(dim: usize) -> Self {
        SparseSym {
            diag: vec![Rational::zero(); dim],
            off: vec![Vec::new(); dim],
        }
    }

    pub fn from_dense(m: &SymMatrix) -> Self {
        let n = m.dim();
        let mut s = SparseSym::new(n);
        for i in 0..n {
            s.diag[i] = m.get(i, i).clone();
            for j in 0..n {
                if i != j && !m.get(i, j).is_zero() {
                    s.off[i].push((j, m.get(i, j).clone()));
                }
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn set_diag(&mut self, i: usize, value: Rational) {
        self.diag[i] = value;
    }

    /// Sets the symmetric pair `(i, j)`, `(j, i)`; `i != j`.
    pub fn set_off(&mut self, i: usize, j: usize, value: Rational) {
        assert_ne!(i, j, "use set_diag for diagonal entries");
        set_entry(&mut self.off[i], j, value.clone());
        set_entry(&mut self.off[j], i, value);
    }

    pub fn to_dense(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.dim());
        for (i, d) in self.diag.iter().enumerate() {
            m.set(i, i, d.clone());
            for (j, v) in &self.off[i] {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    /// Eliminates `p` and returns its step record. `p` must have a nonzero
    /// diagonal and is detached from the remaining rows.
    fn eliminate(&mut self, p: usize) -> Step {
        let row = std::mem::take(&mut self.off[p]);
        let value = self.diag[p].clone();
        let inv = value.recip();
        for (idx, (j, a_jp)) in row.iter().enumerate() {
            remove_entry(&mut self.off[*j], p);
            let scaled = times(&inv, a_jp);
            self.diag[*j] -= &times(&scaled, a_jp);
            for (k, a_kp) in &row[idx + 1..] {
                add_off(&mut self.off, *j, *k, -times(&scaled, a_kp));
            }
        }
        Step {
            pivot: p,
            value,
            inv,
            row,
        }
    }

    /// Builds from a diagonal and per-row off-diagonal entries. Rows are
    /// sorted here; the caller supplies both `(i, j)` and `(j, i)`.
    pub(crate) fn from_parts(diag: Vec<Rational>, mut off: Vec<Vec<(usize, Rational)>>) -> Self {
        debug_assert_eq!(diag.len(), off.len());
        for row in &mut off {
            row.sort_unstable_by_key(|(j, _)| *j);
        }
        SparseSym { diag, off }
    }

    /// Exact classification by congruence diagonalization.
    pub fn definiteness(&self) -> Definiteness {
        self.clone().into_definiteness()
    }

    /// [`Self::definiteness`], reusing `self` as workspace.
    pub fn into_definiteness(self) -> Definiteness {
        let mut work = self;
        let mut order = PivotOrder::new(&work.off);
        let mut kernel = 0;
        while let Some(p) = order.next(&work.off) {
            match work.diag[p].signum() {
                1 => return Definiteness::Other,
                0 if !work.off[p].is_empty() => return Definiteness::Other,
                0 => kernel += 1,
                _ => {
                    let step = work.eliminate(p);
                    order.update(&work.off, &step.row);
                }
            }
        }
        if kernel == 0 {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::NegativeSemidefinite { kernel_dim: kernel }
        }
    }

    /// Factors the matrix if it is negative definite; `None` otherwise.
    pub fn factor_negative_definite(&self) -> Option<LdlFactor> {
        self.clone().into_negative_definite_factor()
    }

    /// [`Self::factor_negative_definite`], reusing `self` as workspace.
    pub fn into_negative_definite_factor(self) -> Option<LdlFactor> {
        let mut work = self;
        let n = work.dim();
        let mut order = PivotOrder::new(&work.off);
        let mut steps = Vec::with_capacity(n);
        while let Some(p) = order.next(&work.off) {
            if !work.diag[p].is_negative() {
                return None;
            }
            let step = work.eliminate(p);
            order.update(&work.off, &step.row);
            steps.push(step);
        }
        Some(LdlFactor { dim: n, steps })
    }
}

/// Minimum-degree pivot order. Rows with at most one off-diagonal entry
/// are queued as they appear, so a forest is eliminated leaf by leaf in
/// linear time; otherwise the remaining rows are scanned.
struct PivotOrder {
    queue: Vec<usize>,
    done: Vec<bool>,
    left: usize,
}

impl PivotOrder {
    fn new(off: &[Vec<(usize, Rational)>]) -> Self {
        PivotOrder {
            queue: (0..off.len()).rev().filter(|&i| off[i].len() <= 1).collect(),
            done: vec![false; off.len()],
            left: off.len(),
        }
    }

    fn next(&mut self, off: &[Vec<(usize, Rational)>]) -> Option<usize> {
        if self.left == 0 {
            return None;
        }
        let p = loop {
            match self.queue.pop() {
                Some(i) if !self.done[i] => break i,
                Some(_) => continue,
                None => {
                    break (0..off.len())
                        .filter(|&i| !self.done[i])
                        .min_by_key(|&i| off[i].len())
                        .expect("rows remain")
                }
            }
        };
        self.done[p] = true;
        self.left -= 1;
        Some(p)
    }

    fn update(&mut self, off: &[Vec<(usize, Rational)>], touched: &[(usize, Rational)]) {
        for &(j, _) in touched {
            if off[j].len() <= 1 {
                self.queue.push(j);
            }
        }
    }
}

impl LdlFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Product of the pivots, i.e. the determinant.
    pub fn determinant(&self) -> Rational {
        self.steps
            .iter()
            .fold(Rational::one(), |acc, s| acc * &s.value)
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if b.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: b.len(),
            });
        }
        let mut rhs = b.to_vec();
        for step in &self.steps {
            if rhs[step.pivot].is_zero() {
                continue;
            }
            let scale = &rhs[step.pivot] * &step.inv;
            for (j, a) in &step.row {
                rhs[*j] -= &times(&scale, a);
            }
        }
        let mut x = vec![Rational::zero(); self.dim];
        for step in self.steps.iter().rev() {
            let mut acc = std::mem::take(&mut rhs[step.pivot]);
            for (j, a) in &step.row {
                if !x[*j].is_zero() {
                    acc -= &times(&x[*j], a);
                }
            }
            if !acc.is_zero() {
                x[step.pivot] = acc * &step.inv;
            }
        }
        Ok(x)
    }
}

// Off-diagonal entries of intersection matrices are nearly always 1.
#[inline]
fn times(x: &Rational, a: &Rational) -> Rational {
    if a.is_one() {
        x.clone()
    } else {
        x * a
    }
}

fn set_entry(row: &mut Vec<(usize, Rational)>, j: usize, value: Rational) {
    match row.binary_search_by_key(&j, |(k, _)| *k) {
        Ok(pos) if value.is_zero() => {
            row.remove(pos);
        }
        Ok(pos) => row[pos].1 = value,
        Err(_) if value.is_zero() => {}
        Err(pos) => row.insert(pos, (j, value)),
    }
}

fn remove_entry(row: &mut Vec<(usize, Rational)>, j: usize) {
    if let Ok(pos) = row.binary_search_by_key(&j, |(k, _)| *k) {
        row.remove(pos);
    }
}

fn add_off(off: &mut [Vec<(usize, Rational)>], i: usize, j: usize, delta: Rational) {
    if delta.is_zero() {
        return;
    }
    let current = match off[i].binary_search_by_key(&j, |(k, _)| *k) {
        Ok(pos) => off[i][pos].1.clone(),
        Err(_) => Rational::zero(),
    };
    let updated = current + delta;
    set_entry(&mut off[i], j, updated.clone());
    set_entry(&mut off[j], i, updated);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn solve_examples() {
        let m = SymMatrix::from_int_rows(&[[-2]]).unwrap();
        assert_eq!(solve_linear(&m, &ints(&[0])).unwrap(), ints(&[0]));

        let m = SymMatrix::from_int_rows(&[[-4]]).unwrap();
        assert_eq!(solve_linear(&m, &ints(&[-2])).unwrap(), vec![r(1, 2)]);

        let m = SymMatrix::from_int_rows(&[[-5, 1], [1, -2]]).unwrap();
        assert_eq!(
            solve_linear(&m, &ints(&[-3, 0])).unwrap(),
            vec![r(2, 3), r(1, 3)]
        );
    }

    #[test]
    fn solve_singular_cases() {
        let m = SymMatrix::from_int_rows(&[[1, 1], [1, 1]]).unwrap();
        assert_eq!(
            solve_linear(&m, &ints(&[1, 2])),
            Err(LinalgError::SingularMatrix)
        );
        assert_eq!(
            solve_linear(&m, &ints(&[1, 1])),
            Err(LinalgError::Underdetermined { solution_dim: 1 })
        );
        let z = SymMatrix::zeros(3);
        assert_eq!(
            solve_linear(&z, &ints(&[0, 0, 0])),
            Err(LinalgError::Underdetermined { solution_dim: 3 })
        );
        assert!(matches!(
            solve_linear(&z, &ints(&[0])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            SymMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]),
            Err(LinalgError::NotSymmetric { i: 0, j: 1 })
        ));
        assert!(matches!(
            SymMatrix::from_int_rows(&[vec![1, 2], vec![3]]),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn definiteness_examples() {
        let a2 = SymMatrix::from_int_rows(&[[-2, 1], [1, -2]]).unwrap();
        assert_eq!(definiteness(&a2), Definiteness::NegativeDefinite);
        let chain = SymMatrix::from_int_rows(&[[-2, 1, 0], [1, -1, 1], [0, 1, -2]]).unwrap();
        assert_eq!(
            definiteness(&chain),
            Definiteness::NegativeSemidefinite { kernel_dim: 1 }
        );
        assert_eq!(chain.determinant(), Rational::zero());
        let pos = SymMatrix::from_int_rows(&[[1]]).unwrap();
        assert_eq!(definiteness(&pos), Definiteness::Other);
    }

    #[test]
    fn definiteness_edge_cases() {
        assert_eq!(
            definiteness(&SymMatrix::zeros(0)),
            Definiteness::NegativeDefinite
        );
        assert_eq!(
            definiteness(&SymMatrix::zeros(2)),
            Definiteness::NegativeSemidefinite { kernel_dim: 2 }
        );
        // zero diagonal with a coupling is indefinite
        let hyp = SymMatrix::from_int_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(definiteness(&hyp), Definiteness::Other);
        // -(1,1)ᵀ(1,1) has a one-dimensional kernel
        let rank_one = SymMatrix::from_int_rows(&[[-1, -1], [-1, -1]]).unwrap();
        assert_eq!(
            definiteness(&rank_one),
            Definiteness::NegativeSemidefinite { kernel_dim: 1 }
        );
    }

    #[test]
    fn ldl_matches_dense_solver() {
        let m = SymMatrix::from_int_rows(&[
            [-3, 1, 0, 0],
            [1, -2, 1, 1],
            [0, 1, -2, 0],
            [0, 1, 0, -4],
        ])
        .unwrap();
        let b = ints(&[1, -2, 3, 0]);
        let f = SparseSym::from_dense(&m).factor_negative_definite().unwrap();
        assert_eq!(f.solve(&b).unwrap(), solve_linear(&m, &b).unwrap());
        assert_eq!(f.determinant(), m.determinant());
    }

    #[test]
    fn ldl_refuses_indefinite() {
        let m = SymMatrix::from_int_rows(&[[-1, 2], [2, -1]]).unwrap();
        assert!(SparseSym::from_dense(&m).factor_negative_definite().is_none());
    }

    #[test]
    fn sparse_roundtrip() {
        let mut s = SparseSym::new(3);
        s.set_diag(0, Rational::from_integer(-2));
        s.set_off(0, 2, Rational::one());
        let d = s.to_dense();
        assert_eq!(d.get(2, 0), &Rational::one());
        assert_eq!(SparseSym::from_dense(&d).to_dense(), d);
    }
}
