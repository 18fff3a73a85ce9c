//! Brute-force ground truth: direct enumeration of plane partitions, the
//! symmetry operations on them, and their bijection with perfect matchings of
//! the hexagon graph.
//!
//! Nothing here may reuse the determinant or product-formula machinery.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};
use crate::exactnum::{QPoly, Var};
use crate::hexgraph::{GraphKind, Matching, TriCoord, WeightedGraph};
use crate::products::BoxDims;

/// Largest box volume enumerated unless the caller raises the budget.
pub const DEFAULT_VOLUME_BUDGET: u64 = 64;

/// An `a × b` matrix with entries in `[0, c]`, weakly decreasing along rows
/// and columns. Entry `(x, y)` is the height of the stack over cell `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePartition {
    dims: BoxDims,
    entries: Vec<u32>,
}

impl PlanePartition {
    pub fn new(dims: BoxDims, entries: Vec<u32>) -> Result<Self> {
        let p = PlanePartition { dims, entries };
        p.validate()?;
        Ok(p)
    }

    pub fn empty(dims: BoxDims) -> Self {
        PlanePartition {
            dims,
            entries: vec![0; (dims.a * dims.b) as usize],
        }
    }

    pub fn full(dims: BoxDims) -> Self {
        PlanePartition {
            dims,
            entries: vec![dims.c; (dims.a * dims.b) as usize],
        }
    }

    pub fn from_rows(dims: BoxDims, rows: &[&[u32]]) -> Result<Self> {
        Self::new(dims, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    fn validate(&self) -> Result<()> {
        let BoxDims { a, b, c } = self.dims;
        if self.entries.len() != (a * b) as usize {
            return Err(Error::InvalidArgument(format!(
                "{} entries for an {a}x{b} matrix",
                self.entries.len()
            )));
        }
        for x in 0..a {
            for y in 0..b {
                let v = self.get(x, y);
                let ok = v <= c && (x == 0 || v <= self.get(x - 1, y)) && (y == 0 || v <= self.get(x, y - 1));
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "not a plane partition in {}: entry ({x},{y}) = {v}",
                        self.dims
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> BoxDims {
        self.dims
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.entries[(x * self.dims.b + y) as usize]
    }

    pub fn cube_count(&self) -> u64 {
        self.entries.iter().map(|&v| v as u64).sum()
    }

    /// The Ferrers solid: unit cubes `(x, y, z)` with `z < π(x, y)`.
    pub fn cubes(&self) -> BTreeSet<(u32, u32, u32)> {
        let mut out = BTreeSet::new();
        for x in 0..self.dims.a {
            for y in 0..self.dims.b {
                for z in 0..self.get(x, y) {
                    out.insert((x, y, z));
                }
            }
        }
        out
    }

    /// Inverse of [`cubes`](Self::cubes); rejects sets that are not stable
    /// under gravity towards the origin.
    pub fn from_cubes(dims: BoxDims, cubes: &BTreeSet<(u32, u32, u32)>) -> Result<Self> {
        let mut entries = vec![0u32; (dims.a * dims.b) as usize];
        for &(x, y, z) in cubes {
            if x >= dims.a || y >= dims.b || z >= dims.c {
                return Err(Error::InvalidArgument(format!("cube ({x},{y},{z}) outside {dims}")));
            }
            entries[(x * dims.b + y) as usize] += 1;
        }
        let p = PlanePartition::new(dims, entries)?;
        if p.cubes() != *cubes {
            return Err(Error::InvalidArgument("cube set is not a Ferrers solid".into()));
        }
        Ok(p)
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dims.a)
            .map(|x| {
                (0..self.dims.b)
                    .map(|y| self.get(x, y).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// The generating symmetries of plane partitions in a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PpSymmetry {
    /// Transposition: swaps the first two axes (needs `a = b`).
    Tau,
    /// Rotation by 120° about the long diagonal (needs `a = b = c`).
    Rho,
    /// Complementation inside the box.
    Kappa,
}

/// Subgroup of `⟨ρ, κτ⟩` a plane partition must be invariant under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryFilter {
    Trivial,
    Rho,
    KappaTau,
    RhoKappaTau,
}

impl SymmetryFilter {
    pub fn check_dims(self, dims: BoxDims) -> Result<()> {
        let ok = match self {
            SymmetryFilter::Trivial => true,
            SymmetryFilter::KappaTau => dims.a == dims.b,
            SymmetryFilter::Rho | SymmetryFilter::RhoKappaTau => dims.a == dims.b && dims.b == dims.c,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDims(format!(
                "{self:?} is not a symmetry of the {dims} box"
            )))
        }
    }

    pub fn admits(self, p: &PlanePartition) -> bool {
        let cubes = p.cubes();
        let dims = p.dims();
        let kt = || map_cubes_kappa_tau(dims, &cubes) == cubes;
        let rho = || map_cubes(&cubes, rho_cube) == cubes;
        match self {
            SymmetryFilter::Trivial => true,
            SymmetryFilter::KappaTau => kt(),
            SymmetryFilter::Rho => rho(),
            SymmetryFilter::RhoKappaTau => rho() && kt(),
        }
    }
}

fn rho_cube((x, y, z): (u32, u32, u32)) -> (u32, u32, u32) {
    (z, x, y)
}

fn tau_cube((x, y, z): (u32, u32, u32)) -> (u32, u32, u32) {
    (y, x, z)
}

fn map_cubes(
    cubes: &BTreeSet<(u32, u32, u32)>,
    f: impl Fn((u32, u32, u32)) -> (u32, u32, u32),
) -> BTreeSet<(u32, u32, u32)> {
    cubes.iter().map(|&c| f(c)).collect()
}

// κ(P) = { C : κ(C) ∉ P }
fn complement_cubes(dims: BoxDims, cubes: &BTreeSet<(u32, u32, u32)>) -> BTreeSet<(u32, u32, u32)> {
    let mut out = BTreeSet::new();
    for x in 0..dims.a {
        for y in 0..dims.b {
            for z in 0..dims.c {
                let k = (dims.a - 1 - x, dims.b - 1 - y, dims.c - 1 - z);
                if !cubes.contains(&k) {
                    out.insert((x, y, z));
                }
            }
        }
    }
    out
}

fn map_cubes_kappa_tau(dims: BoxDims, cubes: &BTreeSet<(u32, u32, u32)>) -> BTreeSet<(u32, u32, u32)> {
    complement_cubes(dims, &map_cubes(cubes, tau_cube))
}

pub fn apply_pp_symmetry(p: &PlanePartition, op: PpSymmetry) -> Result<PlanePartition> {
    let dims = p.dims();
    let cubes = p.cubes();
    let image = match op {
        PpSymmetry::Tau => {
            SymmetryFilter::KappaTau.check_dims(dims)?;
            map_cubes(&cubes, tau_cube)
        }
        PpSymmetry::Rho => {
            SymmetryFilter::Rho.check_dims(dims)?;
            map_cubes(&cubes, rho_cube)
        }
        PpSymmetry::Kappa => complement_cubes(dims, &cubes),
    };
    PlanePartition::from_cubes(dims, &image)
}

/// A fixed member of the class, built directly (no enumeration): empty for
/// the trivial and ρ filters; for κτ the partition `c` below the
/// antidiagonal, `c/2` on it and `0` above; for both, the cubes with
/// `x + y + z ≤ 3n/2 − 2` in the `n`-cube.
pub fn base_partition(dims: BoxDims, filter: SymmetryFilter) -> Result<PlanePartition> {
    filter.check_dims(dims)?;
    let BoxDims { a, b, c } = dims;
    let p = match filter {
        SymmetryFilter::Trivial | SymmetryFilter::Rho => PlanePartition::empty(dims),
        SymmetryFilter::KappaTau | SymmetryFilter::RhoKappaTau if c % 2 == 1 => {
            return Err(Error::InvalidDims(format!(
                "no κτ-invariant plane partition fits in {dims}"
            )));
        }
        SymmetryFilter::KappaTau => {
            let entries = (0..a)
                .flat_map(|x| (0..b).map(move |y| (x, y)))
                .map(|(x, y)| match (x + y).cmp(&(a - 1)) {
                    std::cmp::Ordering::Less => c,
                    std::cmp::Ordering::Equal => c / 2,
                    std::cmp::Ordering::Greater => 0,
                })
                .collect();
            PlanePartition::new(dims, entries)?
        }
        SymmetryFilter::RhoKappaTau => {
            let limit = 3 * a as i64 / 2 - 2;
            let mut cubes = BTreeSet::new();
            for x in 0..a {
                for y in 0..a {
                    for z in 0..a {
                        if (x + y + z) as i64 <= limit {
                            cubes.insert((x, y, z));
                        }
                    }
                }
            }
            PlanePartition::from_cubes(dims, &cubes)?
        }
    };
    invariant!(filter.admits(&p), "base partition {p} is not {filter:?}-invariant");
    Ok(p)
}

/// Streams every plane partition in the box, in lexicographic order of the
/// row-major entry vector, keeping those that pass the filter.
pub struct PlanePartitions {
    dims: BoxDims,
    filter: SymmetryFilter,
    current: Option<Vec<u32>>,
}

impl PlanePartitions {
    fn upper_bound(&self, entries: &[u32], pos: usize) -> u32 {
        let b = self.dims.b as usize;
        let (x, y) = (pos / b, pos % b);
        let mut ub = self.dims.c;
        if x > 0 {
            ub = ub.min(entries[pos - b]);
        }
        if y > 0 {
            ub = ub.min(entries[pos - 1]);
        }
        ub
    }

    fn advance(&self, entries: &mut [u32]) -> bool {
        for pos in (0..entries.len()).rev() {
            if entries[pos] < self.upper_bound(entries, pos) {
                entries[pos] += 1;
                for later in &mut entries[pos + 1..] {
                    *later = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PlanePartitions {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        loop {
            let entries = self.current.clone()?;
            let mut succ = entries.clone();
            self.current = self.advance(&mut succ).then_some(succ);
            let p = PlanePartition {
                dims: self.dims,
                entries,
            };
            if self.filter.admits(&p) {
                return Some(p);
            }
        }
    }
}

pub fn enumerate_pp(dims: BoxDims, filter: SymmetryFilter, volume_budget: u64) -> Result<PlanePartitions> {
    filter.check_dims(dims)?;
    if dims.volume() > volume_budget {
        return Err(Error::BudgetExceeded(format!(
            "enumerating the {dims} box (volume {}) exceeds the volume budget {volume_budget}",
            dims.volume()
        )));
    }
    Ok(PlanePartitions {
        dims,
        filter,
        current: Some(vec![0; (dims.a * dims.b) as usize]),
    })
}

pub fn count_pp(dims: BoxDims, filter: SymmetryFilter, volume_budget: u64) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_pp(dims, filter, volume_budget)?.count()))
}

/// `q^{|p|}`.
pub fn q_weight(p: &PlanePartition) -> QPoly {
    QPoly::monomial(Var::Q, BigInt::one(), p.cube_count() as i64)
}

/// Σ q^{|p|} over all plane partitions in the box.
pub fn q_count(dims: BoxDims, volume_budget: u64) -> Result<QPoly> {
    let mut by_size = vec![0u64; dims.volume() as usize + 1];
    for p in enumerate_pp(dims, SymmetryFilter::Trivial, volume_budget)? {
        by_size[p.cube_count() as usize] += 1;
    }
    Ok(QPoly::from_terms(
        Var::Q,
        by_size
            .into_iter()
            .enumerate()
            .map(|(n, k)| (n as i64 * crate::exactnum::QUARTERS, BigInt::from(k))),
    ))
}

/// Lozenge-type of a matched edge, indexed by which line coordinate of the
/// black triangle is lowered (0, 1 or 2).
fn lozenge_of_face(dims: BoxDims, face: VisibleFace) -> (TriCoord, usize) {
    let (a, b, c) = (dims.a as i64, dims.b as i64, dims.c as i64);
    // Projection of a 3-d point along (1,1,1) onto line coordinates:
    // (x − y + b, z − x + a, y − z + c), which sum to a + b + c.
    let (ranks, kind) = match face {
        // top face of the stack over (x, y) at height h
        VisibleFace::Top { x, y, h } => ([x - y + b, h - x + a - 1, y - h + c], 0),
        // face normal to the x axis at depth x, over the (y, z) cell
        VisibleFace::Side { x, y, z } => ([x - y + b - 1, z - x + a, y - z + c], 2),
        // face normal to the y axis at depth y, over the (x, z) cell
        VisibleFace::Front { x, y, z } => ([x - y + b, z - x + a, y - z + c - 1], 1),
    };
    (
        TriCoord::from_line_coords(dims, ranks).expect("visible face inside the hexagon"),
        kind,
    )
}

#[derive(Clone, Copy, Debug)]
enum VisibleFace {
    Top { x: i64, y: i64, h: i64 },
    Side { x: i64, y: i64, z: i64 },
    Front { x: i64, y: i64, z: i64 },
}

fn visible_faces(p: &PlanePartition) -> Vec<VisibleFace> {
    let BoxDims { a, b, c } = p.dims();
    let mut faces = Vec::new();
    for x in 0..a {
        for y in 0..b {
            faces.push(VisibleFace::Top {
                x: x as i64,
                y: y as i64,
                h: p.get(x, y) as i64,
            });
        }
    }
    for y in 0..b {
        for z in 0..c {
            let depth = (0..a).filter(|&x| p.get(x, y) > z).count();
            faces.push(VisibleFace::Side {
                x: depth as i64,
                y: y as i64,
                z: z as i64,
            });
        }
    }
    for x in 0..a {
        for z in 0..c {
            let depth = (0..b).filter(|&y| p.get(x, y) > z).count();
            faces.push(VisibleFace::Front {
                x: x as i64,
                y: depth as i64,
                z: z as i64,
            });
        }
    }
    faces
}

/// The tiling drawn by the visible faces of a stack seen from the corner
/// `(a, b, c)` of the box.
fn stack_to_matching<W: Clone>(p: &PlanePartition, g: &WeightedGraph<W>) -> Result<Matching> {
    let dims = p.dims();
    invariant!(
        g.kind() == GraphKind::Hexagon && g.dims() == dims,
        "graph is not Z({dims})"
    );
    let mut edges = BTreeSet::new();
    for face in visible_faces(p) {
        let (black, kind) = lozenge_of_face(dims, face);
        let white = black.neighbor(kind);
        let e = g
            .edge_between(&black, &white)
            .ok_or_else(|| Error::Invariant(format!("lozenge {black:?}->{white:?} is not an edge")))?;
        edges.insert(e);
    }
    let m = Matching::new(edges);
    invariant!(g.is_perfect_matching(&m), "image of {p} is not a perfect matching");
    Ok(m)
}

/// The lozenge tiling of `H(a,b,c)` of a plane partition, as a perfect
/// matching of `Z(a,b,c)`. The stack is viewed along the long diagonal from
/// the origin's side, i.e. the visible surface is that of the complementary
/// stack seen from the far corner. With this reading the empty partition's
/// matching carries the least quantum term and each added cube multiplies
/// the term by `q`.
pub fn pp_to_matching<W: Clone>(p: &PlanePartition, g: &WeightedGraph<W>) -> Result<Matching> {
    stack_to_matching(&apply_pp_symmetry(p, PpSymmetry::Kappa)?, g)
}

/// Inverse of [`pp_to_matching`]: reads the complementary heights off the
/// top-face lozenges, column by column.
pub fn matching_to_pp<W: Clone>(m: &Matching, g: &WeightedGraph<W>) -> Result<PlanePartition> {
    if g.kind() != GraphKind::Hexagon {
        return Err(Error::InvalidArgument("graph is not a full hexagon graph".into()));
    }
    let dims = g.dims();
    let (a, b) = (dims.a as i64, dims.b as i64);
    // Top faces lower the first line coordinate. In column k = x − y + b they
    // appear with strictly decreasing second coordinate as x increases.
    let mut columns: std::collections::BTreeMap<i64, Vec<i64>> = Default::default();
    for &e in m.edges() {
        let (black, white) = g.edge_endpoints(e);
        let (rb, rw) = (black.line_coords(dims), white.line_coords(dims));
        if rb[0] - rw[0] == 1 {
            columns.entry(rb[0]).or_default().push(rb[1]);
        }
    }
    let mut entries = vec![0u32; (a * b) as usize];
    for (k, mut seconds) in columns {
        seconds.sort_unstable_by(|u, v| v.cmp(u));
        let cells: Vec<(i64, i64)> = (0..a)
            .map(|x| (x, x - (k - b)))
            .filter(|&(_, y)| (0..b).contains(&y))
            .collect();
        invariant!(cells.len() == seconds.len(), "column {k}: lozenge count mismatch");
        for ((x, y), r2) in cells.into_iter().zip(seconds) {
            let h = r2 + x - a + 1;
            invariant!((0..=dims.c as i64).contains(&h), "height {h} out of range");
            entries[(x * b + y) as usize] = h as u32;
        }
    }
    let p = apply_pp_symmetry(&PlanePartition::new(dims, entries)?, PpSymmetry::Kappa)?;
    invariant!(pp_to_matching(&p, g)? == *m, "matching does not round-trip through {p}");
    Ok(p)
}
