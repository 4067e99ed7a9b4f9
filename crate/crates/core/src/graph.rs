//! Weighted dual graphs.
//!
//! A vertex is a smooth rational curve on the resolved surface. White
//! vertices are exceptional curves of the minimal resolution, black ones are
//! components of the central curve. Vertices are stored sorted by id, and
//! that order is the row order of every matrix built from the graph.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Black => "black",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
    pub self_intersection: i64,
}

impl Vertex {
    pub fn new(id: impl Into<String>, color: Color, self_intersection: i64) -> Self {
        Vertex {
            id: id.into(),
            color,
            self_intersection,
        }
    }

    pub fn is_white(&self) -> bool {
        self.color == Color::White
    }

    pub fn is_black(&self) -> bool {
        self.color == Color::Black
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("loop at vertex {0:?}")]
    Loop(String),
    #[error("repeated edge {0:?} -- {1:?}")]
    MultiEdge(String, String),
    #[error("vertex {id:?} has self-intersection {value}; must be at most -1")]
    InvalidSelfIntersection { id: String, value: i64 },
    #[error("empty vertex id")]
    EmptyId,
}

/// Simple undirected graph of curves. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field(
                "vertices",
                &self
                    .vertices
                    .iter()
                    .map(|v| format!("{}:{}:{}", v.id, v.color, v.self_intersection))
                    .collect::<Vec<_>>(),
            )
            .field("edges", &self.edge_ids().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn empty() -> Self {
        Graph {
            vertices: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
    }

    pub fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    /// Sorted neighbor indices.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges()
            .map(|(i, j)| (self.vertices[i].id.as_str(), self.vertices[j].id.as_str()))
    }

    pub fn white_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vertices[i].is_white()).collect()
    }

    pub fn black_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vertices[i].is_black()).collect()
    }

    /// Connected components of the subgraph induced by `members`, each sorted,
    /// ordered by their smallest index.
    pub fn components_within(&self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &i in members {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count() + 1 == self.len() && self.is_connected()
    }

    /// Induced subgraph on the given indices.
    pub fn induced(&self, members: &[usize]) -> Graph {
        let mut b = GraphBuilder::default();
        for &i in members {
            let v = &self.vertices[i];
            b.vertex(v.id.clone(), v.color, v.self_intersection)
                .expect("vertices of a valid graph");
        }
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        for &i in members {
            for &j in &self.adjacency[i] {
                if j > i && inside.contains(&j) {
                    b.edge(&self.vertices[i].id, &self.vertices[j].id)
                        .expect("edges of a valid graph");
                }
            }
        }
        b.build()
    }

    /// If the graph is a path, its vertices in order starting from the end
    /// with the smaller index.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        if !self.is_tree() || self.adjacency.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..self.len()).find(|&i| self.degree(i) <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adjacency[cur].iter().find(|&&n| n != prev) {
            prev = cur;
            cur = next;
            order.push(cur);
        }
        Some(order)
    }
}

/// Incremental constructor enforcing the simple-graph invariants.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn vertex(
        &mut self,
        id: impl Into<String>,
        color: Color,
        self_intersection: i64,
    ) -> Result<&mut Self, GraphError> {
        let id = id.into();
        if id.is_empty() {
            return Err(GraphError::EmptyId);
        }
        if self_intersection > -1 {
            return Err(GraphError::InvalidSelfIntersection {
                id,
                value: self_intersection,
            });
        }
        if self.index.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.index.insert(id.clone(), self.vertices.len());
        self.vertices.push(Vertex {
            id,
            color,
            self_intersection,
        });
        Ok(self)
    }

    pub fn white(&mut self, id: impl Into<String>, self_intersection: i64) -> Result<&mut Self, GraphError> {
        self.vertex(id, Color::White, self_intersection)
    }

    pub fn black(&mut self, id: impl Into<String>, self_intersection: i64) -> Result<&mut Self, GraphError> {
        self.vertex(id, Color::Black, self_intersection)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn edge(&mut self, a: &str, b: &str) -> Result<&mut Self, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a.to_string()));
        }
        let ia = *self
            .index
            .get(a)
            .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let ib = *self
            .index
            .get(b)
            .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        let key = (ia.min(ib), ia.max(ib));
        if !self.edges.insert(key) {
            return Err(GraphError::MultiEdge(a.to_string(), b.to_string()));
        }
        Ok(self)
    }

    /// Connects consecutive ids.
    pub fn path(&mut self, ids: &[String]) -> Result<&mut Self, GraphError> {
        for w in ids.windows(2) {
            self.edge(&w[0], &w[1])?;
        }
        Ok(self)
    }

    pub fn build(self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        assemble(self.vertices, &edges)
    }
}

impl Graph {
    /// Builds a graph from vertices and edges given by position in
    /// `vertices`, with the same checks as [`GraphBuilder`].
    pub fn from_parts(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        for v in &vertices {
            if v.id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if v.self_intersection > -1 {
                return Err(GraphError::InvalidSelfIntersection {
                    id: v.id.clone(),
                    value: v.self_intersection,
                });
            }
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in edges {
            let name = |i: usize| vertices.get(i).map_or_else(|| i.to_string(), |v| v.id.clone());
            if a >= vertices.len() || b >= vertices.len() {
                return Err(GraphError::UnknownVertex(name(a.max(b))));
            }
            if a == b {
                return Err(GraphError::Loop(name(a)));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::MultiEdge(name(a), name(b)));
            }
        }
        let g = assemble(vertices, edges);
        if let Some(w) = g.vertices.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateVertex(w[0].id.clone()));
        }
        Ok(g)
    }
}

// Sorts vertices by id and relabels the edges; inputs are already validated
// except for duplicate ids.
pub(crate) fn assemble(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Graph {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].id.cmp(&vertices[b].id));
    let mut new_index = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut adjacency = vec![Vec::new(); order.len()];
    for &(a, b) in edges {
        let (a, b) = (new_index[a], new_index[b]);
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    let mut slots: Vec<Option<Vertex>> = vertices.into_iter().map(Some).collect();
    let vertices = order
        .iter()
        .map(|&old| slots[old].take().expect("each vertex moved once"))
        .collect();
    Graph {
        vertices,
        adjacency,
    }
}

/// Zero-padded ids `prefix1, prefix2, …` that sort in numeric order.
pub fn numbered_ids(prefix: &str, count: usize) -> Vec<String> {
    let digits = |mut k: usize| {
        let mut d = 1;
        while k >= 10 {
            k /= 10;
            d += 1;
        }
        d
    };
    let width = digits(count.max(1));
    (1..=count)
        .map(|k| {
            let mut id = String::with_capacity(prefix.len() + width);
            id.push_str(prefix);
            for _ in digits(k)..width {
                id.push('0');
            }
            let mut buf = [0u8; 20];
            let mut pos = buf.len();
            let mut rest = k;
            loop {
                pos -= 1;
                buf[pos] = b'0' + (rest % 10) as u8;
                rest /= 10;
                if rest == 0 {
                    break;
                }
            }
            id.push_str(std::str::from_utf8(&buf[pos..]).expect("ascii digits"));
            id
        })
        .collect()
}

/// All label-preserving isomorphisms from `a` onto `b`, as index maps
/// `map[i_a] = i_b`. Labels are color and self-intersection.
pub fn isomorphisms(a: &Graph, b: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search_isomorphisms(a, b, usize::MAX, &mut out);
    out
}

/// Whether `a` and `b` are isomorphic as labeled graphs.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let mut out = Vec::new();
    search_isomorphisms(a, b, 1, &mut out);
    !out.is_empty()
}

fn search_isomorphisms(a: &Graph, b: &Graph, limit: usize, out: &mut Vec<Vec<usize>>) {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return;
    }
    let signature = |g: &Graph, i: usize| {
        let v = g.vertex(i);
        (v.color, v.self_intersection, g.degree(i))
    };
    let mut sa: Vec<_> = (0..a.len()).map(|i| signature(a, i)).collect();
    let mut sb: Vec<_> = (0..b.len()).map(|i| signature(b, i)).collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return;
    }
    // Visit `a` in BFS order so each new vertex usually has a mapped neighbor.
    let mut order = Vec::with_capacity(a.len());
    let mut seen = vec![false; a.len()];
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in a.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    extend(a, b, &order, 0, &mut map, &mut used, limit, out, &signature);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
    signature: &dyn Fn(&Graph, usize) -> (Color, i64, usize),
) {
    if out.len() >= limit {
        return;
    }
    if depth == order.len() {
        out.push(map.clone());
        return;
    }
    let v = order[depth];
    let want = signature(a, v);
    for cand in 0..b.len() {
        if used[cand] || signature(b, cand) != want {
            continue;
        }
        let consistent = a.neighbors(v).iter().all(|&w| {
            map[w] == usize::MAX || b.has_edge(cand, map[w])
        }) && {
            let mapped_neighbors = a.neighbors(v).iter().filter(|&&w| map[w] != usize::MAX).count();
            let b_mapped = b.neighbors(cand).iter().filter(|&&w| used[w]).count();
            mapped_neighbors == b_mapped
        };
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        extend(a, b, order, depth + 1, map, used, limit, out, signature);
        map[v] = usize::MAX;
        used[cand] = false;
        if out.len() >= limit {
            return;
        }
    }
}
