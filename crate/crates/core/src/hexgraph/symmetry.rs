use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{build_hexagon, Edge, EdgeId, Face, FaceKind, GraphKind, Matching, TriCoord, WeightedGraph};
use crate::error::{invariant, Error, Result};
use crate::exactnum::Scalar;
use crate::products::BoxDims;

/// Symmetries of the hexagon that lift to symmetries of plane partitions.
///
/// On line coordinates, ρ is the cyclic shift `(r1, r2, r3) ↦ (r2, r3, r1)`
/// and κτ swaps `r2` and `r3`. Both fix the colour of every triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphSymmetry {
    Rho,
    KappaTau,
}

impl GraphSymmetry {
    pub fn check_dims(self, dims: BoxDims) -> Result<()> {
        let ok = match self {
            GraphSymmetry::Rho => dims.a == dims.b && dims.b == dims.c,
            GraphSymmetry::KappaTau => dims.a == dims.b,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDims(format!("{self:?} is not a symmetry of H({dims})")))
        }
    }

    pub fn on_line_coords(self, r: [i64; 3]) -> [i64; 3] {
        match self {
            GraphSymmetry::Rho => [r[1], r[2], r[0]],
            GraphSymmetry::KappaTau => [r[0], r[2], r[1]],
        }
    }

    /// Where an edge of the given kind goes.
    pub fn on_edge_kind(self, p: usize) -> usize {
        match self {
            GraphSymmetry::Rho => (p + 2) % 3,
            GraphSymmetry::KappaTau => [0, 2, 1][p],
        }
    }

    pub fn on_triangle(self, dims: BoxDims, t: &TriCoord) -> TriCoord {
        TriCoord::from_line_coords(dims, self.on_line_coords(t.line_coords(dims)))
            .expect("line-coordinate permutations preserve the sum")
    }
}

/// A graph automorphism, as images of vertex and edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPermutation {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl VertexPermutation {
    pub fn compose(&self, then: &VertexPermutation) -> VertexPermutation {
        VertexPermutation {
            black: self.black.iter().map(|&v| then.black[v]).collect(),
            white: self.white.iter().map(|&v| then.white[v]).collect(),
            edges: self.edges.iter().map(|&e| then.edges[e]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let id = |v: &[usize]| v.iter().enumerate().all(|(k, &x)| k == x);
        id(&self.black) && id(&self.white) && id(&self.edges)
    }
}

/// The permutation a symmetry induces on `Z(a,b,c)`; fails if the symmetry
/// does not preserve the hexagon.
pub fn apply_symmetry<W: Clone>(g: &WeightedGraph<W>, s: GraphSymmetry) -> Result<VertexPermutation> {
    if g.kind() != GraphKind::Hexagon {
        return Err(Error::Unsupported("symmetries act on full hexagon graphs only".into()));
    }
    let dims = g.dims();
    s.check_dims(dims)?;
    let image = |ts: &[TriCoord]| -> Result<Vec<usize>> {
        ts.iter()
            .map(|t| {
                g.vertex_index(&s.on_triangle(dims, t))
                    .ok_or_else(|| Error::Invariant(format!("{s:?} moves {t:?} off the hexagon")))
            })
            .collect()
    };
    let black = image(g.black())?;
    let white = image(g.white())?;
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let target = g
                .black_edges(black[e.black])
                .iter()
                .copied()
                .find(|&f| g.edge(f).white == white[e.white] && g.edge(f).kind == s.on_edge_kind(e.kind));
            target.ok_or_else(|| Error::Invariant(format!("{s:?} does not preserve adjacency")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexPermutation { black, white, edges })
}

fn symmetries_of(kind: GraphKind) -> &'static [GraphSymmetry] {
    match kind {
        GraphKind::Hexagon => &[],
        GraphKind::Tcpp => &[GraphSymmetry::KappaTau],
        GraphKind::Cspp => &[GraphSymmetry::Rho],
        GraphKind::Cstcpp => &[GraphSymmetry::Rho, GraphSymmetry::KappaTau],
    }
}

fn orbit(dims: BoxDims, t: TriCoord, gens: &[GraphSymmetry]) -> BTreeSet<TriCoord> {
    let mut seen = BTreeSet::from([t]);
    let mut todo = vec![t];
    while let Some(u) = todo.pop() {
        for s in gens {
            let v = s.on_triangle(dims, &u);
            if seen.insert(v) {
                todo.push(v);
            }
        }
    }
    seen
}

/// The vertex of a symmetric graph standing for the orbit of `t`, if any.
pub fn orbit_representative<W: Clone>(g: &WeightedGraph<W>, t: &TriCoord) -> Option<TriCoord> {
    let members = orbit(g.dims(), *t, symmetries_of(g.kind()));
    let mut found = members.into_iter().filter_map(|u| g.vertex_index(&u).map(|k| (u, k)));
    let (u, k) = found.next()?;
    // Quotient vertices answer for every member; report the stored one.
    Some(if u.up { g.black()[k] } else { g.white()[k] })
}

/// Carries a matching of the full hexagon graph of a symmetric tiling over to
/// a symmetric graph: on the pieces, the matched edges inside the piece; on
/// the quotient, the orbits of matched edges. Fails if the result is not a
/// perfect matching (the tiling was not symmetric).
pub fn restrict_matching<V: Clone, W: Clone>(
    full: &WeightedGraph<V>,
    m: &Matching,
    g: &WeightedGraph<W>,
) -> Result<Matching> {
    invariant!(
        full.kind() == GraphKind::Hexagon && full.dims() == g.dims(),
        "restriction needs the full graph of the same box"
    );
    let dims = g.dims();
    let mut edges = BTreeSet::new();
    for &e in m.edges() {
        let (black, white) = full.edge_endpoints(e);
        let kind = full.edge(e).kind;
        if g.kind() != GraphKind::Cspp {
            if g.contains(&black) && g.contains(&white) {
                edges.insert(g.edge_between(&black, &white).expect("induced subgraph keeps edges"));
            }
            continue;
        }
        let (mut t, mut p) = (black, kind);
        let mut found = None;
        for _ in 0..3 {
            let v = g.vertex_index(&t).expect("quotient covers every triangle");
            if g.black()[v] == t {
                found = g.black_edges(v).iter().copied().find(|&f| g.edge(f).kind == p);
                break;
            }
            t = GraphSymmetry::Rho.on_triangle(dims, &t);
            p = GraphSymmetry::Rho.on_edge_kind(p);
        }
        edges.insert(found.ok_or_else(|| Error::Invariant(format!("no quotient edge for {black:?}")))?);
    }
    let out = Matching::new(edges);
    invariant!(
        g.is_perfect_matching(&out),
        "restricted matching is not perfect: tiling is not symmetric"
    );
    Ok(out)
}

/// Keeps the component holding the least triangle after deleting every
/// triangle fixed by some non-identity element of the group.
fn fundamental_domain<W: Clone>(
    full: &WeightedGraph<W>,
    kind: GraphKind,
    fixed: impl Fn([i64; 3]) -> bool,
    expected_components: usize,
) -> Result<WeightedGraph<W>> {
    let dims = full.dims();
    let cut = full.induced(kind, |t| !fixed(t.line_coords(dims)));
    let comps = cut.components();
    invariant!(
        comps.len() == expected_components,
        "cutting H({dims}) along its fixed rows left {} components, expected {expected_components}",
        comps.len()
    );
    let chosen = &comps[0];
    Ok(cut.induced(kind, |t| chosen.contains(t)))
}

/// `Z_κτ(a,a,2b)`: one of the two halves left after deleting the row of
/// κτ-fixed edges and their endpoints.
pub fn build_tcpp_graph<W: Scalar>(a: u32, b: u32) -> Result<WeightedGraph<W>> {
    let dims = BoxDims::new(a, a, 2 * b)?;
    let full = build_hexagon::<W>(dims);
    let g = fundamental_domain(&full, GraphKind::Tcpp, |r| r[1] == r[2], 2)?;
    invariant!(
        2 * g.num_vertices() + 2 * a as usize == full.num_vertices(),
        "the κτ-fixed row of H({dims}) does not have 2a triangles"
    );
    Ok(g)
}

/// `Z_ρκτ(2a,2a,2a)`: one of the six pieces left after deleting all three
/// fixed rows.
pub fn build_cstcpp_graph<W: Scalar>(a: u32) -> Result<WeightedGraph<W>> {
    let dims = BoxDims::cube(2 * a)?;
    let full = build_hexagon::<W>(dims);
    fundamental_domain(
        &full,
        GraphKind::Cstcpp,
        |r| r[0] == r[1] || r[1] == r[2] || r[0] == r[2],
        6,
    )
}

/// `Z_ρ(a,a,a) = Z(a,a,a)/ρ`. ρ acts freely on triangles and edges, so the
/// quotient has a third of each; the central hexagon is mapped to itself and
/// collapses to a 2-gon whose two edges are parallel.
pub fn build_cspp_graph<W: Scalar>(a: u32) -> Result<WeightedGraph<W>> {
    let dims = BoxDims::cube(a)?;
    let full = build_hexagon::<W>(dims);
    let rho = apply_symmetry(&full, GraphSymmetry::Rho)?;
    invariant!(
        rho.compose(&rho).compose(&rho).is_identity(),
        "ρ does not have order 3 on Z({dims})"
    );

    let rep_of = |ts: &[TriCoord], perm: &[usize], v: usize| -> usize {
        let orbit = [v, perm[v], perm[perm[v]]];
        *orbit.iter().min_by_key(|&&k| ts[k]).expect("orbit is nonempty")
    };
    let mut black_rep = BTreeMap::new();
    let mut white_rep = BTreeMap::new();
    for v in 0..full.black().len() {
        invariant!(rho.black[v] != v, "ρ fixes a black triangle");
        black_rep.insert(v, rep_of(full.black(), &rho.black, v));
    }
    for v in 0..full.white().len() {
        invariant!(rho.white[v] != v, "ρ fixes a white triangle");
        white_rep.insert(v, rep_of(full.white(), &rho.white, v));
    }
    let reps = |m: &BTreeMap<usize, usize>, ts: &[TriCoord]| -> Vec<TriCoord> {
        let set: BTreeSet<TriCoord> = m.values().map(|&k| ts[k]).collect();
        set.into_iter().collect()
    };
    let black = reps(&black_rep, full.black());
    let white = reps(&white_rep, full.white());
    let bpos: BTreeMap<TriCoord, usize> = black.iter().enumerate().map(|(k, t)| (*t, k)).collect();
    let wpos: BTreeMap<TriCoord, usize> = white.iter().enumerate().map(|(k, t)| (*t, k)).collect();

    let mut quotient_edge = vec![usize::MAX; full.edges().len()];
    let mut edges = Vec::new();
    for e in 0..full.edges().len() {
        if quotient_edge[e] != usize::MAX {
            continue;
        }
        let orbit = [e, rho.edges[e], rho.edges[rho.edges[e]]];
        invariant!(orbit[1] != e, "ρ fixes an edge");
        // The member leaving the stored black representative, so that the
        // edge kind names a real side of that triangle.
        let member = orbit
            .into_iter()
            .find(|&k| black_rep[&full.edge(k).black] == full.edge(k).black)
            .expect("ρ acts freely on black triangles");
        let fe: &Edge<W> = full.edge(member);
        let id = edges.len();
        edges.push(Edge {
            black: bpos[&full.black()[black_rep[&fe.black]]],
            white: wpos[&full.white()[white_rep[&fe.white]]],
            kind: fe.kind,
            weight: W::one(),
        });
        for k in orbit {
            quotient_edge[k] = id;
        }
    }

    let face_key = |edges: &[EdgeId]| -> Vec<EdgeId> {
        let mut k = edges.to_vec();
        k.sort_unstable();
        k
    };
    let face_at: BTreeMap<Vec<EdgeId>, usize> = full
        .faces()
        .iter()
        .enumerate()
        .map(|(k, f)| (face_key(&f.edges), k))
        .collect();
    let rotate = |f: usize| -> usize {
        let image: Vec<EdgeId> = full.faces()[f].edges.iter().map(|&e| rho.edges[e]).collect();
        face_at[&face_key(&image)]
    };
    let mut faces = Vec::new();
    let mut done = vec![false; full.faces().len()];
    let mut digons = 0;
    for f in 0..full.faces().len() {
        if done[f] {
            continue;
        }
        let orbit = [f, rotate(f), rotate(rotate(f))];
        for k in orbit {
            done[k] = true;
        }
        let face: &Face = &full.faces()[f];
        if orbit[1] == f {
            digons += 1;
            faces.push(Face {
                kind: FaceKind::Digon,
                center: face.center,
                edges: vec![quotient_edge[face.edges[0]], quotient_edge[face.edges[1]]],
            });
        } else {
            faces.push(Face {
                kind: FaceKind::Hexagon,
                center: face.center,
                edges: face.edges.iter().map(|&e| quotient_edge[e]).collect(),
            });
        }
    }
    invariant!(digons == 1, "Z({dims})/ρ has {digons} 2-gons");

    let aliases: Vec<(TriCoord, TriCoord)> = black_rep
        .iter()
        .map(|(&v, &r)| (full.black()[v], full.black()[r]))
        .chain(white_rep.iter().map(|(&v, &r)| (full.white()[v], full.white()[r])))
        .collect();
    Ok(WeightedGraph::assemble(
        GraphKind::Cspp,
        dims,
        black,
        white,
        aliases,
        edges,
        faces,
    ))
}
