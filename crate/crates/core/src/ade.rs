//! Recognition of simply laced Dynkin diagrams among dual graphs.

use std::fmt;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeFamily {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeType {
    pub family: AdeFamily,
    pub rank: usize,
}

impl AdeType {
    pub const fn a(rank: usize) -> Self {
        AdeType {
            family: AdeFamily::A,
            rank,
        }
    }

    pub const fn d(rank: usize) -> Self {
        AdeType {
            family: AdeFamily::D,
            rank,
        }
    }

    pub const fn e(rank: usize) -> Self {
        AdeType {
            family: AdeFamily::E,
            rank,
        }
    }

    /// `|det|` of the intersection matrix (order of the discriminant group).
    pub fn lattice_determinant(self) -> u64 {
        match (self.family, self.rank) {
            (AdeFamily::A, n) => n as u64 + 1,
            (AdeFamily::D, _) => 4,
            (AdeFamily::E, 6) => 3,
            (AdeFamily::E, 7) => 2,
            (AdeFamily::E, _) => 1,
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            AdeFamily::A => 'A',
            AdeFamily::D => 'D',
            AdeFamily::E => 'E',
        };
        write!(f, "{letter}{}", self.rank)
    }
}

/// Classifies `g` as a Dynkin diagram of (-2)-curves. Colors are ignored.
pub fn ade_classify(g: &Graph) -> Option<AdeType> {
    if !g.is_tree() || g.vertices().iter().any(|v| v.self_intersection != -2) {
        return None;
    }
    let n = g.len();
    let mut branch = None;
    for i in 0..n {
        match g.degree(i) {
            0..=2 => {}
            3 if branch.is_none() => branch = Some(i),
            _ => return None,
        }
    }
    let Some(center) = branch else {
        return Some(AdeType::a(n));
    };
    let mut arms: Vec<usize> = g
        .neighbors(center)
        .iter()
        .map(|&start| arm_length(g, center, start))
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(AdeType::d(n)),
        [1, 2, 2] => Some(AdeType::e(6)),
        [1, 2, 3] => Some(AdeType::e(7)),
        [1, 2, 4] => Some(AdeType::e(8)),
        _ => None,
    }
}

// Number of vertices on the arm leaving `center` through `start`; the
// caller ensures every other vertex has degree at most 2.
fn arm_length(g: &Graph, center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

/// A connected component of the white subgraph.
#[derive(Debug, Clone)]
pub struct WhiteComponent {
    pub graph: Graph,
    pub ade: Option<AdeType>,
}

/// Connected components of the white-induced subgraph, ordered by smallest
/// vertex id, each with its Dynkin type.
pub fn white_components(g: &Graph) -> Vec<WhiteComponent> {
    g.components_within(&g.white_indices())
        .into_iter()
        .map(|comp| {
            let graph = g.induced(&comp);
            let ade = ade_classify(&graph);
            WhiteComponent { graph, ade }
        })
        .collect()
}

/// Valency statistics and Dynkin type of a whole graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinCheck {
    pub is_dynkin: bool,
    pub ade: Option<AdeType>,
    pub valency3_count: usize,
    pub has_valency_ge4: bool,
}

pub fn dynkin_check(g: &Graph) -> DynkinCheck {
    let ade = ade_classify(g);
    DynkinCheck {
        is_dynkin: ade.is_some(),
        ade,
        valency3_count: (0..g.len()).filter(|&i| g.degree(i) == 3).count(),
        has_valency_ge4: (0..g.len()).any(|i| g.degree(i) >= 4),
    }
}
