//! The triangulated hexagon `H(a,b,c)`, its bipartite dual graph `Z(a,b,c)`,
//! and the graphs whose matchings count the symmetry classes.
//!
//! Triangles live on the lattice spanned by `e1 = (1, 0)` and
//! `e2 = (1/2, √3/2)`. The hexagon has a corner at the origin and its sides,
//! walked counterclockwise, are `a·e1`, `b·e2`, `c·(e2 − e1)`, `a·(−e1)`,
//! `b·(−e2)`, `c·(e1 − e2)`. Up-triangles are black.
//!
//! Every triangle also has three *line coordinates* `(r1, r2, r3)`: up(i, j)
//! has `(a + b − 1 − i − j, i + c, j)` and down(i, j) has
//! `(a + b − 2 − i − j, i + c, j)`. An edge of kind `p` joins a black triangle
//! to the white one obtained by lowering `r_p` by one. These coordinates are
//! exactly the ranks of the tensor factors' weights in the representation
//! picture.

mod matching;
mod render;
mod symmetry;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::products::BoxDims;

pub use matching::{enumerate_matchings, Matching, Matchings, DEFAULT_MATCHING_BUDGET};
pub use render::{render_svg, GraphDump, SVG_UNIT};
pub use symmetry::{
    apply_symmetry, build_cspp_graph, build_cstcpp_graph, build_tcpp_graph, orbit_representative, restrict_matching,
    GraphSymmetry, VertexPermutation,
};

/// A unit triangle. `up(i, j)` has corners `P(i,j), P(i+1,j), P(i,j+1)`;
/// `down(i, j)` has corners `P(i+1,j), P(i,j+1), P(i+1,j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriCoord {
    pub i: i64,
    pub j: i64,
    pub up: bool,
}

impl TriCoord {
    pub fn up(i: i64, j: i64) -> Self {
        TriCoord { i, j, up: true }
    }

    pub fn down(i: i64, j: i64) -> Self {
        TriCoord { i, j, up: false }
    }

    pub fn is_black(&self) -> bool {
        self.up
    }

    pub fn corners(&self) -> [(i64, i64); 3] {
        let (i, j) = (self.i, self.j);
        if self.up {
            [(i, j), (i + 1, j), (i, j + 1)]
        } else {
            [(i + 1, j), (i, j + 1), (i + 1, j + 1)]
        }
    }

    /// Three times the centroid, in lattice coordinates.
    pub fn centroid3(&self) -> (i64, i64) {
        if self.up {
            (3 * self.i + 1, 3 * self.j + 1)
        } else {
            (3 * self.i + 2, 3 * self.j + 2)
        }
    }

    /// The neighbour across the side of kind `p`: for a black triangle the
    /// one with `r_p` lowered, for a white one the one with `r_p` raised.
    pub fn neighbor(&self, p: usize) -> TriCoord {
        let (i, j) = (self.i, self.j);
        match (self.up, p) {
            (true, 0) => TriCoord::down(i, j),
            (true, 1) => TriCoord::down(i - 1, j),
            (true, 2) => TriCoord::down(i, j - 1),
            (false, 0) => TriCoord::up(i, j),
            (false, 1) => TriCoord::up(i + 1, j),
            (false, 2) => TriCoord::up(i, j + 1),
            _ => panic!("edge kind {p} out of range"),
        }
    }

    pub fn line_coords(&self, dims: BoxDims) -> [i64; 3] {
        let (a, b, c) = (dims.a as i64, dims.b as i64, dims.c as i64);
        let shift = if self.up { 1 } else { 2 };
        [a + b - shift - self.i - self.j, self.i + c, self.j]
    }

    /// Inverse of [`line_coords`](Self::line_coords). The coordinates sum to
    /// `d − 1` for up-triangles and `d − 2` for down-triangles; any other sum
    /// names no triangle. Membership in the hexagon is not checked.
    pub fn from_line_coords(dims: BoxDims, r: [i64; 3]) -> Option<TriCoord> {
        let d = dims.d() as i64;
        let (i, j) = (r[1] - dims.c as i64, r[2]);
        match r.iter().sum::<i64>() {
            s if s == d - 1 => Some(TriCoord::up(i, j)),
            s if s == d - 2 => Some(TriCoord::down(i, j)),
            _ => None,
        }
    }
}

/// Hexagon corners in lattice coordinates, counterclockwise from the origin.
pub fn hexagon_corners(dims: BoxDims) -> [(i64, i64); 6] {
    let (a, b, c) = (dims.a as i64, dims.b as i64, dims.c as i64);
    [(0, 0), (a, 0), (a, b), (a - c, b + c), (-c, b + c), (-c, c)]
}

/// Strict interior test for a point given as three times its lattice
/// coordinates. The lattice basis is positively oriented, so the sign of the
/// lattice-coordinate cross product matches the Euclidean one.
fn strictly_inside(corners: &[(i64, i64); 6], p3: (i64, i64)) -> bool {
    (0..6).all(|k| {
        let (x0, y0) = (3 * corners[k].0, 3 * corners[k].1);
        let (x1, y1) = (3 * corners[(k + 1) % 6].0, 3 * corners[(k + 1) % 6].1);
        (x1 - x0) * (p3.1 - y0) - (y1 - y0) * (p3.0 - x0) > 0
    })
}

pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge<W> {
    /// Index into [`WeightedGraph::black`].
    pub black: usize,
    /// Index into [`WeightedGraph::white`].
    pub white: usize,
    /// Which line coordinate of the black endpoint the edge lowers.
    pub kind: usize,
    pub weight: W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    Hexagon,
    Digon,
}

/// A bounded face. Edges are listed counterclockwise; for a hexagon the list
/// starts with the edge leaving `up(i, j)` towards `down(i − 1, j)`, where
/// `(i, j)` is the lattice point at the centre.
///
/// The edges at odd positions are the ones traversed from black to white when
/// the face is walked clockwise; they form the numerator of the curvature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub kind: FaceKind,
    pub center: (i64, i64),
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// `Z(a,b,c)`.
    Hexagon,
    /// One half of `Z(a,a,2b)` cut along the κτ-fixed row.
    Tcpp,
    /// The quotient multigraph `Z(a,a,a)/ρ`.
    Cspp,
    /// One sixth of `Z(2a,2a,2a)` cut along all three fixed rows.
    Cstcpp,
}

/// A bipartite (multi)graph of triangles with weighted edges and faces.
///
/// For the quotient graph each vertex stands for a ρ-orbit of triangles; the
/// stored coordinate is the orbit's least member, and lookups accept any
/// member.
#[derive(Clone, Debug)]
pub struct WeightedGraph<W> {
    kind: GraphKind,
    dims: BoxDims,
    black: Vec<TriCoord>,
    white: Vec<TriCoord>,
    index: BTreeMap<TriCoord, usize>,
    edges: Vec<Edge<W>>,
    faces: Vec<Face>,
    black_adj: Vec<Vec<EdgeId>>,
    white_adj: Vec<Vec<EdgeId>>,
}

impl<W: Clone> WeightedGraph<W> {
    fn assemble(
        kind: GraphKind,
        dims: BoxDims,
        black: Vec<TriCoord>,
        white: Vec<TriCoord>,
        aliases: impl IntoIterator<Item = (TriCoord, TriCoord)>,
        edges: Vec<Edge<W>>,
        faces: Vec<Face>,
    ) -> Self {
        let mut index = BTreeMap::new();
        for (k, t) in black.iter().enumerate().chain(white.iter().enumerate()) {
            index.insert(*t, k);
        }
        for (member, rep) in aliases {
            let k = index[&rep];
            index.insert(member, k);
        }
        let mut black_adj = vec![Vec::new(); black.len()];
        let mut white_adj = vec![Vec::new(); white.len()];
        for (id, e) in edges.iter().enumerate() {
            black_adj[e.black].push(id);
            white_adj[e.white].push(id);
        }
        WeightedGraph {
            kind,
            dims,
            black,
            white,
            index,
            edges,
            faces,
            black_adj,
            white_adj,
        }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// The box whose hexagon the graph lives in.
    pub fn dims(&self) -> BoxDims {
        self.dims
    }

    pub fn black(&self) -> &[TriCoord] {
        &self.black
    }

    pub fn white(&self) -> &[TriCoord] {
        &self.white
    }

    pub fn num_vertices(&self) -> usize {
        self.black.len() + self.white.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge<W> {
        &self.edges[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn black_edges(&self, v: usize) -> &[EdgeId] {
        &self.black_adj[v]
    }

    pub fn white_edges(&self, v: usize) -> &[EdgeId] {
        &self.white_adj[v]
    }

    /// Vertex index of a triangle (or of any member of its orbit).
    pub fn vertex_index(&self, t: &TriCoord) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &TriCoord) -> bool {
        self.index.contains_key(t)
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (TriCoord, TriCoord) {
        let edge = &self.edges[e];
        (self.black[edge.black], self.white[edge.white])
    }

    /// All edges joining the two vertices (more than one only at the 2-gon).
    pub fn edges_between(&self, black: &TriCoord, white: &TriCoord) -> Vec<EdgeId> {
        match (black.up, white.up, self.vertex_index(black), self.vertex_index(white)) {
            (true, false, Some(b), Some(w)) => self.black_adj[b]
                .iter()
                .copied()
                .filter(|&e| self.edges[e].white == w)
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn edge_between(&self, black: &TriCoord, white: &TriCoord) -> Option<EdgeId> {
        self.edges_between(black, white).first().copied()
    }

    pub fn is_perfect_matching(&self, m: &Matching) -> bool {
        if self.black.len() != self.white.len() || m.len() != self.black.len() {
            return false;
        }
        let mut seen_b = vec![false; self.black.len()];
        let mut seen_w = vec![false; self.white.len()];
        for &e in m.edges() {
            let Some(edge) = self.edges.get(e) else {
                return false;
            };
            if std::mem::replace(&mut seen_b[edge.black], true) || std::mem::replace(&mut seen_w[edge.white], true) {
                return false;
            }
        }
        true
    }

    /// Same graph, new weights computed per edge from its endpoints.
    pub fn reweight<V: Clone>(
        &self,
        mut f: impl FnMut(&Edge<W>, &TriCoord, &TriCoord) -> Result<V>,
    ) -> Result<WeightedGraph<V>> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    black: e.black,
                    white: e.white,
                    kind: e.kind,
                    weight: f(e, &self.black[e.black], &self.white[e.white])?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedGraph {
            kind: self.kind,
            dims: self.dims,
            black: self.black.clone(),
            white: self.white.clone(),
            index: self.index.clone(),
            edges,
            faces: self.faces.clone(),
            black_adj: self.black_adj.clone(),
            white_adj: self.white_adj.clone(),
        })
    }

    /// The subgraph induced on the kept triangles. Faces survive only if all
    /// their edges do.
    fn induced(&self, kind: GraphKind, keep: impl Fn(&TriCoord) -> bool) -> Self {
        let black: Vec<TriCoord> = self.black.iter().copied().filter(|t| keep(t)).collect();
        let white: Vec<TriCoord> = self.white.iter().copied().filter(|t| keep(t)).collect();
        let bpos: BTreeMap<TriCoord, usize> = black.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let wpos: BTreeMap<TriCoord, usize> = white.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let mut renumber = BTreeMap::new();
        let mut edges = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if let (Some(&b), Some(&w)) = (bpos.get(&self.black[e.black]), wpos.get(&self.white[e.white])) {
                renumber.insert(id, edges.len());
                edges.push(Edge {
                    black: b,
                    white: w,
                    kind: e.kind,
                    weight: e.weight.clone(),
                });
            }
        }
        let faces = self
            .faces
            .iter()
            .filter_map(|f| {
                let edges: Option<Vec<EdgeId>> = f.edges.iter().map(|e| renumber.get(e).copied()).collect();
                edges.map(|edges| Face {
                    kind: f.kind,
                    center: f.center,
                    edges,
                })
            })
            .collect();
        Self::assemble(kind, self.dims, black, white, [], edges, faces)
    }

    /// Connected components, as sets of triangles, ordered by least member.
    pub fn components(&self) -> Vec<BTreeSet<TriCoord>> {
        let nb = self.black.len();
        let mut comp = vec![usize::MAX; nb + self.white.len()];
        let mut out = Vec::new();
        for start in 0..comp.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = BTreeSet::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                let (t, adj, other_offset): (_, &[EdgeId], _) = if v < nb {
                    (self.black[v], &self.black_adj[v], true)
                } else {
                    (self.white[v - nb], &self.white_adj[v - nb], false)
                };
                members.insert(t);
                for &e in adj {
                    let u = if other_offset {
                        nb + self.edges[e].white
                    } else {
                        self.edges[e].black
                    };
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            out.push(members);
        }
        out.sort_by_key(|c| *c.iter().next().expect("components are nonempty"));
        out
    }
}

impl<W: Scalar> WeightedGraph<W> {
    /// The curvature of a face as `(numerator, denominator)`: the product of
    /// the weights of the edges crossed black-to-white when walking clockwise,
    /// over the product of the others. For the 2-gon this is `x1 / x2`.
    pub fn kasteleyn_curvature(&self, face: &Face) -> Result<(W, W)> {
        let mut num = W::one();
        let mut den = W::one();
        for (pos, &e) in face.edges.iter().enumerate() {
            let w = &self.edges[e].weight;
            if w.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "zero weight on edge {e} of the face at {:?}",
                    face.center
                )));
            }
            if pos % 2 == 1 {
                num = num * w.clone();
            } else {
                den = den * w.clone();
            }
        }
        Ok((num, den))
    }

    /// Product of the weights of the matched edges.
    pub fn matching_weight(&self, m: &Matching) -> W {
        m.edges()
            .iter()
            .fold(W::one(), |acc, &e| acc * self.edges[e].weight.clone())
    }
}

/// The unit-weighted graph `Z(a,b,c)`, built from the geometry: a triangle
/// belongs to the hexagon iff its centroid lies strictly inside.
pub fn build_hexagon<W: Scalar>(dims: BoxDims) -> WeightedGraph<W> {
    let corners = hexagon_corners(dims);
    let (a, b, c) = (dims.a as i64, dims.b as i64, dims.c as i64);
    let mut black = Vec::new();
    let mut white = Vec::new();
    for i in -c..=a {
        for j in 0..=b + c {
            for t in [TriCoord::up(i, j), TriCoord::down(i, j)] {
                if strictly_inside(&corners, t.centroid3()) {
                    if t.up {
                        black.push(t);
                    } else {
                        white.push(t);
                    }
                }
            }
        }
    }
    let wpos: BTreeMap<TriCoord, usize> = white.iter().enumerate().map(|(k, t)| (*t, k)).collect();
    let mut edges = Vec::new();
    let mut by_pair = BTreeMap::new();
    for (bk, t) in black.iter().enumerate() {
        for p in 0..3 {
            if let Some(&wk) = wpos.get(&t.neighbor(p)) {
                by_pair.insert((*t, t.neighbor(p)), edges.len());
                edges.push(Edge {
                    black: bk,
                    white: wk,
                    kind: p,
                    weight: W::one(),
                });
            }
        }
    }
    // Interior lattice points carry hexagonal faces.
    let mut faces = Vec::new();
    for i in -c..=a {
        for j in 0..=b + c {
            let ring = [
                TriCoord::up(i, j),
                TriCoord::down(i - 1, j),
                TriCoord::up(i - 1, j),
                TriCoord::down(i - 1, j - 1),
                TriCoord::up(i, j - 1),
                TriCoord::down(i, j - 1),
            ];
            let face_edges: Option<Vec<EdgeId>> = (0..6)
                .map(|k| {
                    let (s, t) = (ring[k], ring[(k + 1) % 6]);
                    let pair = if s.up { (s, t) } else { (t, s) };
                    by_pair.get(&pair).copied()
                })
                .collect();
            if let Some(edges) = face_edges {
                faces.push(Face {
                    kind: FaceKind::Hexagon,
                    center: (i, j),
                    edges,
                });
            }
        }
    }
    WeightedGraph::assemble(GraphKind::Hexagon, dims, black, white, [], edges, faces)
}
