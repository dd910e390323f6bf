//! Geometry of the size-`n` triangular region.
//!
//! Vertices are integer points `(i, j)` with `-n <= j <= 0`, `|i| <= n + j`
//! and `i ≡ n + j (mod 2)`. Row `t` of downward unit triangles (cells) sits
//! between vertex rows `j = -(t - 1)` and `j = -t`; every ambient edge is a
//! side of exactly one cell.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: i32,
    pub j: i32,
}

impl Vertex {
    pub const fn new(i: i32, j: i32) -> Self {
        Vertex { i, j }
    }

    pub fn in_region(self, n: i32) -> bool {
        n >= 1
            && self.j <= 0
            && self.j >= -n
            && self.i.abs() <= n + self.j
            && (self.i - n - self.j).rem_euclid(2) == 0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A downward unit triangle, `t` counted from the top and `p` from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub t: i32,
    pub p: i32,
}

impl Cell {
    pub const fn new(t: i32, p: i32) -> Self {
        Cell { t, p }
    }

    pub fn in_range(self, n: i32) -> bool {
        self.t >= 1 && self.t <= n && self.p >= 1 && self.p <= n + 1 - self.t
    }

    /// Bottom vertex of the cell.
    pub fn apex(self, n: i32) -> Vertex {
        Vertex::new(2 * self.p - 2 - (n - self.t), -self.t)
    }

    /// `[apex, upper-left, upper-right]`.
    pub fn vertices(self, n: i32) -> [Vertex; 3] {
        let a = self.apex(n);
        [a, Vertex::new(a.i - 1, a.j + 1), Vertex::new(a.i + 1, a.j + 1)]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    Top,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::Top];

    fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
            Side::Top => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub cell: Cell,
    pub side: Side,
}

impl EdgeRef {
    pub fn endpoints(self, n: i32) -> (Vertex, Vertex) {
        let [a, ul, ur] = self.cell.vertices(n);
        match self.side {
            Side::Left => (a, ul),
            Side::Right => (a, ur),
            Side::Top => (ul, ur),
        }
    }
}

/// An upward unit triangle; apex on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UpTriangle {
    pub t: i32,
    pub p: i32,
}

impl UpTriangle {
    pub fn apex(self, n: i32) -> Vertex {
        Vertex::new(2 * self.p - 1 - (n - self.t), -(self.t - 1))
    }

    /// `[apex, lower-left, lower-right]`.
    pub fn vertices(self, n: i32) -> [Vertex; 3] {
        let a = self.apex(n);
        [a, Vertex::new(a.i - 1, a.j - 1), Vertex::new(a.i + 1, a.j - 1)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    CornerWest,
    CornerEast,
    CornerSouth,
    WestPair(i32),
    EastPair(i32),
    SouthPair(i32),
    MiddleTriplet,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::CornerWest => write!(f, "west corner"),
            ClassKind::CornerEast => write!(f, "east corner"),
            ClassKind::CornerSouth => write!(f, "south corner"),
            ClassKind::WestPair(i) => write!(f, "west pair {i}"),
            ClassKind::EastPair(i) => write!(f, "east pair {i}"),
            ClassKind::SouthPair(i) => write!(f, "south pair {i}"),
            ClassKind::MiddleTriplet => write!(f, "middle triplet"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryClass {
    pub kind: ClassKind,
    pub members: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegionSpec {
    Row(i32),
    LeftCols(i32),
    RightCols(i32),
    TopRows(i32),
    /// `(l, r, h)`: rows `1..=h`, row `t` spans positions `l..=r-t+1`.
    Trapezoid(i32, i32, i32),
    TopTriangle(i32, i32),
    /// `(t0, q, s)`: bottom row `t0` spans `q..=q+s-1`, each row above one shorter.
    UpEntryTriangle(i32, i32, i32),
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RegionSpec::Row(t) => write!(f, "row {t}"),
            RegionSpec::LeftCols(i) => write!(f, "left {i} columns"),
            RegionSpec::RightCols(i) => write!(f, "right {i} columns"),
            RegionSpec::TopRows(i) => write!(f, "top {i} rows"),
            RegionSpec::Trapezoid(l, r, h) => write!(f, "trapezoid l={l} r={r} h={h}"),
            RegionSpec::TopTriangle(l, r) => write!(f, "top triangle l={l} r={r}"),
            RegionSpec::UpEntryTriangle(t0, q, s) => {
                write!(f, "upward triangle t0={t0} q={q} s={s}")
            }
        }
    }
}

fn check_size(n: i32) -> Result<()> {
    if n < 1 {
        Err(Error::InvalidSize(n))
    } else {
        Ok(())
    }
}

/// Region vertices sorted by `(-j, i)`.
pub fn vertices(n: i32) -> Result<Vec<Vertex>> {
    check_size(n)?;
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for r in 0..=n {
        let w = n - r;
        for q in 0..=w {
            out.push(Vertex::new(-w + 2 * q, -r));
        }
    }
    Ok(out)
}

pub fn cells(n: i32) -> Result<Vec<Cell>> {
    check_size(n)?;
    Ok((1..=n)
        .flat_map(|t| (1..=n + 1 - t).map(move |p| Cell::new(t, p)))
        .collect())
}

pub fn apex_of(n: i32, t: i32, p: i32) -> Result<Vertex> {
    check_size(n)?;
    let c = Cell::new(t, p);
    if !c.in_range(n) {
        return Err(Error::InvalidCell { n, t, p });
    }
    Ok(c.apex(n))
}

pub fn ambient_edges(n: i32) -> Result<Vec<EdgeRef>> {
    Ok(cells(n)?
        .into_iter()
        .flat_map(|cell| Side::ALL.into_iter().map(move |side| EdgeRef { cell, side }))
        .collect())
}

pub fn cell_of_edge(n: i32, u: Vertex, v: Vertex) -> Result<EdgeRef> {
    check_size(n)?;
    for w in [u, v] {
        if !w.in_region(n) {
            return Err(Error::NotAnEdge { n, u, v });
        }
    }
    let (lo, hi) = if u.j < v.j || (u.j == v.j && u.i < v.i) { (u, v) } else { (v, u) };
    let edge = if lo.j == hi.j {
        // horizontal: top side of the cell hanging below
        (hi.i - lo.i == 2).then(|| EdgeRef {
            cell: cell_from_apex(n, Vertex::new(lo.i + 1, lo.j - 1)),
            side: Side::Top,
        })
    } else if hi.j - lo.j == 1 && (hi.i - lo.i).abs() == 1 {
        let side = if hi.i < lo.i { Side::Left } else { Side::Right };
        Some(EdgeRef { cell: cell_from_apex(n, lo), side })
    } else {
        None
    };
    match edge {
        Some(e) if e.cell.in_range(n) => Ok(e),
        _ => Err(Error::NotAnEdge { n, u, v }),
    }
}

fn cell_from_apex(n: i32, a: Vertex) -> Cell {
    let t = -a.j;
    Cell::new(t, (a.i + 2 + n - t).div_euclid(2))
}

pub fn boundary_classes(n: i32) -> Result<Vec<BoundaryClass>> {
    check_size(n)?;
    let mut out = vec![
        BoundaryClass { kind: ClassKind::CornerWest, members: vec![Vertex::new(-n, 0)] },
        BoundaryClass { kind: ClassKind::CornerEast, members: vec![Vertex::new(n, 0)] },
        BoundaryClass { kind: ClassKind::CornerSouth, members: vec![Vertex::new(0, -n)] },
    ];
    let pair_range = || (1..n).filter(move |i| (n - i) % 2 == 0);
    for i in pair_range() {
        out.push(BoundaryClass {
            kind: ClassKind::WestPair(i),
            members: vec![Vertex::new(-i, 0), Vertex::new(-(n + i) / 2, (i - n) / 2)],
        });
    }
    for i in pair_range() {
        out.push(BoundaryClass {
            kind: ClassKind::EastPair(i),
            members: vec![Vertex::new(i, 0), Vertex::new((n + i) / 2, (i - n) / 2)],
        });
    }
    for i in (1..n).filter(|i| 2 * i > n) {
        out.push(BoundaryClass {
            kind: ClassKind::SouthPair(i),
            members: vec![Vertex::new(-n + i, -i), Vertex::new(n - i, -i)],
        });
    }
    if n % 2 == 0 {
        out.push(BoundaryClass {
            kind: ClassKind::MiddleTriplet,
            members: vec![
                Vertex::new(0, 0),
                Vertex::new(-n / 2, -n / 2),
                Vertex::new(n / 2, -n / 2),
            ],
        });
    }
    Ok(out)
}

/// `3 + ⌊(3n − 3)/2⌋`, the number of boundary classes (and grove components).
pub fn class_count(n: i32) -> usize {
    (3 + (3 * n - 3) / 2) as usize
}

/// Edges in any grove of size `n`.
pub fn grove_edge_count(n: i32) -> usize {
    ((n + 1) * (n + 2) / 2) as usize - class_count(n)
}

/// Rotation by 120° about the centre of the region, cycling the corners
/// west → east → south → west.
pub fn rotate120(n: i32, v: Vertex) -> Result<Vertex> {
    if !v.in_region(n) {
        return Err(Error::InvalidVertex { n, vertex: v });
    }
    Ok(rotate_unchecked(n, v))
}

fn rotate_unchecked(n: i32, v: Vertex) -> Vertex {
    Vertex::new((-v.i + 3 * v.j + n) / 2, (-v.i - v.j - n) / 2)
}

/// Image of a cell under [`rotate120`].
pub fn rotate_cell(n: i32, c: Cell) -> Cell {
    let img = c.vertices(n).map(|v| rotate_unchecked(n, v));
    let apex = *img.iter().min_by_key(|v| v.j).expect("three vertices");
    cell_from_apex(n, apex)
}

impl RegionSpec {
    fn validate(self, n: i32) -> Result<()> {
        let ok = match self {
            RegionSpec::Row(t) => (1..=n).contains(&t),
            RegionSpec::LeftCols(i) | RegionSpec::RightCols(i) | RegionSpec::TopRows(i) => {
                (1..=n).contains(&i)
            }
            RegionSpec::Trapezoid(l, r, h) => l >= 1 && r <= n && h >= 1 && h <= r - l + 1,
            RegionSpec::TopTriangle(l, r) => l >= 1 && l <= r && r <= n,
            RegionSpec::UpEntryTriangle(t0, q, s) => {
                s >= 1 && t0 <= n && s <= t0 && q >= 1 && q + s - 1 <= n + 1 - t0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRegion(format!("{self} at size {n}")))
        }
    }

    fn contains(self, n: i32, c: Cell) -> bool {
        let Cell { t, p } = c;
        match self {
            RegionSpec::Row(r) => t == r,
            RegionSpec::LeftCols(i) => p <= i,
            RegionSpec::RightCols(i) => p >= n + 2 - t - i,
            RegionSpec::TopRows(i) => t <= i,
            RegionSpec::Trapezoid(l, r, h) => t <= h && l <= p && p <= r - t + 1,
            RegionSpec::TopTriangle(l, r) => RegionSpec::Trapezoid(l, r, r - l + 1).contains(n, c),
            RegionSpec::UpEntryTriangle(t0, q, s) => {
                let d = t0 - t;
                (0..s).contains(&d) && q + d <= p && p <= q + s - 1
            }
        }
    }
}

/// Cells of a region, sorted by `(t, p)`.
pub fn region_cells(n: i32, region: RegionSpec) -> Result<Vec<Cell>> {
    check_size(n)?;
    region.validate(n)?;
    Ok(cells(n)?.into_iter().filter(|&c| region.contains(n, c)).collect())
}

/// Cells of a trapezoid lying in its first row, last row, or either slanted side.
pub fn trapezoid_boundary(n: i32, l: i32, r: i32, h: i32) -> Result<Vec<Cell>> {
    Ok(region_cells(n, RegionSpec::Trapezoid(l, r, h))?
        .into_iter()
        .filter(|c| c.t == 1 || c.t == h || c.p == l || c.p == r - c.t + 1)
        .collect())
}

/// Every valid `Trapezoid(l, r, h)` at size `n`.
pub fn all_trapezoids(n: i32) -> Vec<(i32, i32, i32)> {
    let mut out = Vec::new();
    for l in 1..=n {
        for r in l..=n {
            for h in 1..=r - l + 1 {
                out.push((l, r, h));
            }
        }
    }
    out
}

/// Every valid `UpEntryTriangle(t0, q, s)` at size `n`.
pub fn all_up_entry_triangles(n: i32) -> Vec<(i32, i32, i32)> {
    let mut out = Vec::new();
    for t0 in 1..=n {
        for s in 1..=t0 {
            for q in 1..=n + 2 - t0 - s {
                out.push((t0, q, s));
            }
        }
    }
    out
}

/// Lattice distance (number of unit steps) between two vertices.
pub fn distance(a: Vertex, b: Vertex) -> i32 {
    let dy = (a.j - b.j).abs();
    let dx = (a.i - b.i).abs();
    dy + (dx - dy).max(0) / 2
}

#[derive(Debug, Clone)]
pub struct EdgeInfo {
    pub owner: EdgeRef,
    pub u: usize,
    pub v: usize,
    /// The upward triangle on the other side of this edge, if any.
    pub up: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct UpInfo {
    pub tri: UpTriangle,
    /// `[apex, lower-left, lower-right]` as vertex indices.
    pub corners: [usize; 3],
    /// Sides `[left, right, bottom]` as edge indices; side `k` is opposite corner `(k + 2) % 3`.
    pub sides: [usize; 3],
    /// Cells across `sides`, same order.
    pub neighbors: [usize; 3],
}

/// Precomputed index tables for one size.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub n: i32,
    pub vertices: Vec<Vertex>,
    pub cells: Vec<Cell>,
    pub edges: Vec<EdgeInfo>,
    pub ups: Vec<UpInfo>,
    pub classes: Vec<BoundaryClass>,
    /// Class index of every vertex, if it belongs to a boundary class.
    pub class_of: Vec<Option<usize>>,
    /// `(neighbor, edge)` pairs per vertex, in edge order.
    pub adjacency: Vec<Vec<(usize, usize)>>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

impl Lattice {
    pub fn new(n: i32) -> Result<Self> {
        let vertices = vertices(n)?;
        let cells = cells(n)?;
        let index = |v: Vertex| vertex_index(n, v).expect("region vertex");
        let mut edges = Vec::with_capacity(cells.len() * 3);
        let mut edge_lookup = HashMap::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for er in ambient_edges(n)? {
            let (a, b) = er.endpoints(n);
            let (u, v) = (index(a), index(b));
            let e = edges.len();
            edges.push(EdgeInfo { owner: er, u, v, up: None });
            edge_lookup.insert((u.min(v), u.max(v)), e);
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        let lookup = |a: usize, b: usize| edge_lookup[&(a.min(b), a.max(b))];
        let mut ups = Vec::new();
        for t in 1..n {
            for p in 1..=n - t {
                let tri = UpTriangle { t, p };
                let [a, l, r] = tri.vertices(n).map(index);
                let sides = [lookup(a, l), lookup(a, r), lookup(l, r)];
                let neighbors = sides.map(|e| cell_index(n, edges[e].owner.cell));
                for &e in &sides {
                    edges[e].up = Some(ups.len());
                }
                ups.push(UpInfo { tri, corners: [a, l, r], sides, neighbors });
            }
        }
        let classes = boundary_classes(n)?;
        let mut class_of = vec![None; vertices.len()];
        for (c, class) in classes.iter().enumerate() {
            for &m in &class.members {
                class_of[index(m)] = Some(c);
            }
        }
        Ok(Lattice { n, vertices, cells, edges, ups, classes, class_of, adjacency, edge_lookup })
    }

    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        vertex_index(self.n, v)
    }

    pub fn cell_index(&self, c: Cell) -> Option<usize> {
        c.in_range(self.n).then(|| cell_index(self.n, c))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_lookup.get(&(u.min(v), u.max(v))).copied()
    }

    /// Index of the cell side, `3 * cell + side`.
    pub fn edge_index(&self, e: EdgeRef) -> Option<usize> {
        self.cell_index(e.cell).map(|c| 3 * c + e.side.index())
    }

    pub fn edge_of_vertices(&self, u: Vertex, v: Vertex) -> Result<usize> {
        let er = cell_of_edge(self.n, u, v)?;
        Ok(self.edge_index(er).expect("owning cell is in range"))
    }

    pub fn edge_endpoints(&self, e: usize) -> (Vertex, Vertex) {
        let info = &self.edges[e];
        (self.vertices[info.u], self.vertices[info.v])
    }

    pub fn rotate_vertex_index(&self, v: usize) -> usize {
        vertex_index(self.n, rotate_unchecked(self.n, self.vertices[v])).expect("rotation stays in region")
    }

    pub fn rotate_edge_index(&self, e: usize) -> usize {
        let info = &self.edges[e];
        self.edge_between(self.rotate_vertex_index(info.u), self.rotate_vertex_index(info.v))
            .expect("rotation maps edges to edges")
    }
}

pub fn vertex_index(n: i32, v: Vertex) -> Option<usize> {
    if !v.in_region(n) {
        return None;
    }
    let r = -v.j;
    let offset = r * (n + 1) - r * (r - 1) / 2;
    Some((offset + (v.i + n - r) / 2) as usize)
}

pub fn cell_index(n: i32, c: Cell) -> usize {
    let offset = (c.t - 1) * (n + 1) - (c.t - 1) * c.t / 2;
    (offset + c.p - 1) as usize
}
