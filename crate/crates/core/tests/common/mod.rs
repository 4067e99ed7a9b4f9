//! Brute-force oracles and small generators shared by the test suites.

#![allow(dead_code)]

use dualgraph_core::ade::{AdeFamily, AdeType};
use dualgraph_core::{Definiteness, Graph};

/// Symmetric matrix with diagonal `diag` and upper triangle `upper` in
/// row-major order.
#[allow(clippy::needless_range_loop)]
pub fn sym_from(diag: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
    let n = diag.len();
    let mut m = vec![vec![0; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        m[i][i] = diag[i];
        for j in i + 1..n {
            let x = *it.next().expect("upper triangle is complete");
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    m
}

/// Fraction-free (Bareiss) determinant; exact for the small entries used here.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn principal_minor(m: &[Vec<i64>], subset: &[usize]) -> i128 {
    let sub: Vec<Vec<i64>> = subset.iter().map(|&i| subset.iter().map(|&j| m[i][j]).collect()).collect();
    det(&sub)
}

/// Classification straight from the definitions: Sylvester's leading
/// minors for definiteness, all principal minors for semidefiniteness, and
/// the largest non-vanishing principal minor for the rank.
pub fn brute_definiteness(m: &[Vec<i64>]) -> Definiteness {
    let n = m.len();
    let neg: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    if (1..=n).all(|k| principal_minor(&neg, &(0..k).collect::<Vec<_>>()) > 0) {
        return Definiteness::NegativeDefinite;
    }
    let mut rank = 0;
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = principal_minor(&neg, &subset);
        if minor < 0 {
            return Definiteness::Other;
        }
        if minor != 0 {
            rank = rank.max(subset.len());
        }
    }
    Definiteness::NegativeSemidefinite { kernel_dim: n - rank }
}

/// Largest value of `xᵀ M x` over the integer grid `[-r, r]^n` minus zero.
pub fn grid_max(m: &[Vec<i64>], r: i64) -> i64 {
    let n = m.len();
    let mut x = vec![-r; n];
    let mut best = i64::MIN;
    loop {
        if x.iter().any(|&v| v != 0) {
            let q: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * m[i][j] * x[j]).sum::<i64>()).sum();
            best = best.max(q);
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            if x[k] < r {
                x[k] += 1;
                break;
            }
            x[k] = -r;
            k += 1;
        }
    }
}

/// Integer intersection matrix of a whole graph, rows in vertex order.
pub fn int_matrix(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        g.vertex(i).self_intersection
                    } else if g.has_edge(i, j) {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// The Dynkin diagram of `t` built from (-2)-curves.
pub fn dynkin_graph(t: AdeType) -> Graph {
    let n = t.rank;
    let mut b = Graph::builder();
    let ids: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    for id in &ids {
        b.white(id.clone(), -2).unwrap();
    }
    let (path_len, branch) = match t.family {
        AdeFamily::A => (n, None),
        // D_n: path v0..v(n-2), extra leaf on v(n-3)
        AdeFamily::D => (n - 1, Some(n - 3)),
        // E_n: path v0..v(n-2), extra leaf on v2
        AdeFamily::E => (n - 1, Some(2)),
    };
    b.path(&ids[..path_len]).unwrap();
    if let Some(at) = branch {
        b.edge(&ids[at], &ids[n - 1]).unwrap();
    }
    b.build()
}

/// Every ADE type of rank at most `max_rank`.
pub fn ade_types(max_rank: usize) -> Vec<AdeType> {
    let mut out: Vec<AdeType> = (1..=max_rank).map(AdeType::a).collect();
    out.extend((4..=max_rank).map(AdeType::d));
    out.extend((6..=max_rank.min(8)).map(AdeType::e));
    out
}
