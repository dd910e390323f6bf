//! Builds a grove of size `m` from a 0/1 configuration of size `m` by drawing
//! black paths on the size-`m + 1` lattice and reading off the red dual.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::ControlFlow;

use crate::ast::{glick_check, Ast};
use crate::error::{Error, Result};
use crate::forest::{ClassForest, Join};
use crate::grove::{validate_with, EdgeSet, Grove};
use crate::lattice::{self, Lattice, Vertex};

/// Alternatives tried per routed class before giving up on that branch.
const ROUTE_ALTERNATIVES: usize = 6;
const ROUTING_BUDGET: u64 = 10_000;
const RED_BUDGET: u64 = 1_000_000;

/// Black edges drawn on the size-`m + 1` lattice, with the configuration
/// placed on its upward triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    pub n: i32,
    pub black: EdgeSet,
    /// Entry per upward triangle, in `Lattice::ups` order.
    pub entries: Vec<i8>,
}

impl AuxGraph {
    /// Face regions: cells and upward triangles joined across non-black
    /// interior edges. Returns a region id per cell and per upward triangle.
    pub fn regions(&self, lat: &Lattice) -> (Vec<usize>, Vec<usize>) {
        let nc = lat.cells.len();
        let mut parent: Vec<usize> = (0..nc + lat.ups.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (e, info) in lat.edges.iter().enumerate() {
            if let Some(u) = info.up {
                if !self.black.contains(e) {
                    let a = find(&mut parent, e / 3);
                    let b = find(&mut parent, nc + u);
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut ids = vec![usize::MAX; parent.len()];
        let mut next = 0;
        for x in 0..parent.len() {
            let r = find(&mut parent, x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[x] = ids[r];
        }
        let ups = ids.split_off(nc);
        (ids, ups)
    }

    pub fn black_sides(&self, lat: &Lattice, up: usize) -> usize {
        lat.ups[up].sides.iter().filter(|&&e| self.black.contains(e)).count()
    }
}

/// Red vertices are the cells of the size-`m + 1` lattice; each red edge
/// crosses one upward triangle and joins two of its neighbouring cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedDual {
    pub m: i32,
    /// `(upward triangle, cell, cell)` triples.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Cell `(t, p)` of the size-`m + 1` lattice as a vertex of the size-`m` one.
pub fn red_vertex(m: i32, cell: lattice::Cell) -> Vertex {
    Vertex::new(2 * cell.p - 2 - (m + 1 - cell.t), 1 - cell.t)
}

impl RedDual {
    pub fn to_grove(&self, big: &Lattice, small: &Lattice) -> Grove {
        let mut g = Grove::empty(small);
        for &(_, a, b) in &self.edges {
            g.edges.insert(red_edge(big, small, a, b));
        }
        g
    }
}

fn red_edge(big: &Lattice, small: &Lattice, a: usize, b: usize) -> usize {
    let m = small.n;
    let va = small.vertex_index(red_vertex(m, big.cells[a])).expect("red vertex in region");
    let vb = small.vertex_index(red_vertex(m, big.cells[b])).expect("red vertex in region");
    small.edge_between(va, vb).expect("neighbouring cells map to an edge")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Routing alternatives abandoned after a later stage failed.
    pub routing_backtracks: u64,
    /// Dead ends in the red spanning-tree search.
    pub red_backtracks: u64,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub label: String,
    pub aux: AuxGraph,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub grove: Grove,
    pub aux: AuxGraph,
    pub red: RedDual,
    pub stats: BuildStats,
    /// Black graph after seeding and after each class family.
    pub snapshots: Vec<Snapshot>,
}

#[derive(Clone)]
struct Black<'a> {
    lat: &'a Lattice,
    black: EdgeSet,
    forest: ClassForest,
    entries: &'a [i8],
}

impl<'a> Black<'a> {
    fn new(lat: &'a Lattice, entries: &'a [i8]) -> Self {
        Black {
            lat,
            black: EdgeSet::new(lat.edges.len()),
            forest: ClassForest::new(lat, vec![0; lat.vertices.len()]),
            entries,
        }
    }

    fn seed(&mut self) {
        for (u, info) in self.lat.ups.iter().enumerate() {
            if self.entries[u] == 1 {
                for &e in &info.sides {
                    self.black.insert(e);
                    let ei = &self.lat.edges[e];
                    self.forest.join(ei.u, ei.v);
                }
            }
        }
    }

    fn up_is_clear(&self, up: usize) -> bool {
        self.entries[up] == 0 && self.lat.ups[up].sides.iter().all(|&e| !self.black.contains(e))
    }

    fn permissible(&self, e: usize) -> bool {
        if self.black.contains(e) {
            return false;
        }
        let info = &self.lat.edges[e];
        if self.forest.probe(info.u, info.v) != Join::Merged {
            return false;
        }
        info.up.is_none_or(|u| self.up_is_clear(u))
    }

    fn add(&mut self, e: usize) -> bool {
        if !self.permissible(e) {
            return false;
        }
        let info = &self.lat.edges[e];
        self.forest.join(info.u, info.v);
        self.black.insert(e);
        true
    }

    fn same(&self, a: usize, b: usize) -> bool {
        self.forest.find(a) == self.forest.find(b)
    }

    fn snapshot(&self, label: &str) -> Snapshot {
        Snapshot {
            label: label.to_string(),
            aux: AuxGraph { n: self.lat.n, black: self.black.clone(), entries: self.entries.to_vec() },
        }
    }

    /// Cheapest set of new edges joining the components of `from` and `to`,
    /// ordered by edge count, then by closeness to `corner`, avoiding other
    /// classes and every edge in `banned`.
    fn route(&self, class: usize, from: usize, to: usize, corner: Vertex, banned: &[usize]) -> Option<Vec<usize>> {
        let lat = self.lat;
        let nv = lat.vertices.len();
        let target = self.forest.find(to);
        let mut best = vec![(u64::MAX, u64::MAX); nv];
        let mut back: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut heap = BinaryHeap::new();
        let source = self.forest.find(from);
        for v in 0..nv {
            if self.forest.find(v) == source {
                best[v] = (0, 0);
                heap.push(Reverse(((0u64, 0u64), v)));
            }
        }
        let blocked = |v: usize| matches!(self.forest.label_of(v), Some(c) if c != class);
        while let Some(Reverse((cost, x))) = heap.pop() {
            if cost > best[x] {
                continue;
            }
            if self.forest.find(x) == target {
                let mut path = Vec::new();
                let mut y = x;
                while let Some((prev, e)) = back[y] {
                    if !self.black.contains(e) {
                        path.push(e);
                    }
                    y = prev;
                }
                path.reverse();
                return Some(path);
            }
            for &(y, e) in &lat.adjacency[x] {
                if blocked(y) {
                    continue;
                }
                let step = if self.black.contains(e) {
                    (0, 0)
                } else {
                    if banned.contains(&e) || !self.permissible_ignoring_merge(e) {
                        continue;
                    }
                    let d = lattice::distance(lat.vertices[x], corner) + lattice::distance(lat.vertices[y], corner);
                    (1, d as u64)
                };
                let c = (cost.0 + step.0, cost.1 + step.1);
                if c < best[y] {
                    best[y] = c;
                    back[y] = Some((x, e));
                    heap.push(Reverse((c, y)));
                }
            }
        }
        None
    }

    /// Permissible as a path step: merging with a labelled component is
    /// checked on arrival, cycles within one component are excluded.
    fn permissible_ignoring_merge(&self, e: usize) -> bool {
        let info = &self.lat.edges[e];
        !self.same(info.u, info.v) && info.up.is_none_or(|u| self.up_is_clear(u))
    }

    fn apply(&mut self, path: &[usize]) -> bool {
        path.iter().all(|&e| self.add(e))
    }

    /// The two local rules applied in the frame where the family's corner is
    /// the west corner, until neither fires.
    fn saturate(&mut self, class: usize, frame: Frame) {
        let lat = self.lat;
        let n = lat.n;
        let root_vertex = lat.classes[class].members[0];
        let anchor = lat.vertex_index(root_vertex).expect("class member");
        let index = |v: Vertex| v.in_region(n).then(|| lat.vertex_index(frame.to_real(n, v)).expect("in region"));
        loop {
            let mut changed = false;
            let in_k = |s: &Self, x: usize| s.same(x, anchor);
            for fv in lattice::vertices(n).expect("n >= 1") {
                let Some(a) = index(fv) else { continue };
                let (Some(l), Some(r)) = (
                    index(Vertex::new(fv.i - 1, fv.j - 1)),
                    index(Vertex::new(fv.i + 1, fv.j - 1)),
                ) else {
                    continue;
                };
                if in_k(self, a) && in_k(self, l) && !in_k(self, r) {
                    let al = lat.edge_between(a, l).expect("neighbours");
                    if !self.black.contains(al) {
                        let lr = lat.edge_between(l, r).expect("neighbours");
                        let ar = lat.edge_between(a, r).expect("neighbours");
                        changed |= self.add(ar) || self.add(lr);
                    }
                }
            }
            for fv in lattice::vertices(n).expect("n >= 1") {
                let x = index(fv).expect("in region");
                if in_k(self, x) {
                    continue;
                }
                let between = |di: i32, dj: i32| {
                    let side = |sign: i32| {
                        (1..=2 * n).any(|k| {
                            index(Vertex::new(fv.i + sign * di * k, fv.j + sign * dj * k))
                                .is_some_and(|y| in_k(self, y))
                        })
                    };
                    side(1) && side(-1)
                };
                let step = if between(2, 0) {
                    Some(Vertex::new(fv.i + 1, fv.j + 1))
                } else if between(1, -1) {
                    Some(Vertex::new(fv.i - 1, fv.j - 1))
                } else {
                    None
                };
                if let Some(y) = step.and_then(index) {
                    let e = lat.edge_between(x, y).expect("neighbours");
                    changed |= self.add(e);
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Number of 120° turns taking the west family onto the routed family.
#[derive(Debug, Clone, Copy)]
struct Frame(u8);

impl Frame {
    fn to_real(self, n: i32, mut v: Vertex) -> Vertex {
        for _ in 0..self.0 {
            v = lattice::rotate120(n, v).expect("in region");
        }
        v
    }
}

#[derive(Debug, Clone)]
struct Task {
    class: usize,
    frame: Option<Frame>,
}

/// Classes in routing order: west pairs outermost first, then east, then
/// south, then the middle triplet.
fn tasks(lat: &Lattice) -> Vec<Task> {
    let n = lat.n;
    let find = |v: Vertex| lat.class_of[lat.vertex_index(v).expect("in region")].expect("class member");
    let mut out = Vec::new();
    for r in 0..3u8 {
        let mut i = n - 2;
        while i > 0 {
            let top = Frame(r).to_real(n, Vertex::new(-i, 0));
            out.push(Task { class: find(top), frame: Some(Frame(r)) });
            i -= 2;
        }
    }
    if n % 2 == 0 {
        out.push(Task { class: find(Vertex::new(0, 0)), frame: None });
    }
    out
}

struct Builder<'a> {
    lat: &'a Lattice,
    small: &'a Lattice,
    tasks: Vec<Task>,
    config: &'a Ast,
    stats: BuildStats,
    snapshots: Vec<Snapshot>,
}

impl<'a> Builder<'a> {
    fn connect(&self, st: &mut Black<'a>, task: &Task, banned: &[usize]) -> Option<Vec<usize>> {
        let members: Vec<usize> = self.lat.classes[task.class]
            .members
            .iter()
            .map(|&v| self.lat.vertex_index(v).expect("in region"))
            .collect();
        let corner = match task.frame {
            Some(f) => f.to_real(self.lat.n, Vertex::new(-self.lat.n, 0)),
            None => Vertex::new(0, 0),
        };
        let mut used = Vec::new();
        for &b in &members[1..] {
            if st.same(members[0], b) {
                continue;
            }
            let path = st.route(task.class, members[0], b, corner, banned)?;
            if !st.apply(&path) {
                return None;
            }
            used.extend(path);
        }
        if let Some(f) = task.frame {
            st.saturate(task.class, f);
        }
        Some(used)
    }

    /// Tries the cheapest routing first, then routings with one more edge of
    /// an earlier candidate banned, breadth first.
    fn run(&mut self, k: usize, st: Black<'a>) -> Option<(Black<'a>, RedDual, Grove)> {
        if k == self.tasks.len() {
            return self.red_phase(&st);
        }
        let task = self.tasks[k].clone();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::from([Vec::new()]);
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut attempts = 0;
        while let Some(banned) = queue.pop_front() {
            if attempts == ROUTE_ALTERNATIVES {
                break;
            }
            let mut next = st.clone();
            let Some(path) = self.connect(&mut next, &task, &banned) else { continue };
            if seen.contains(&path) {
                continue;
            }
            if attempts > 0 {
                if self.stats.routing_backtracks >= ROUTING_BUDGET {
                    return None;
                }
                self.stats.routing_backtracks += 1;
            }
            attempts += 1;
            if self.is_family_end(k) {
                self.snapshots.push(next.snapshot(&self.family_label(k)));
            }
            if let Some(done) = self.run(k + 1, next) {
                return Some(done);
            }
            for &e in &path {
                let mut more = banned.clone();
                more.push(e);
                queue.push_back(more);
            }
            seen.push(path);
        }
        None
    }

    fn is_family_end(&self, k: usize) -> bool {
        let kind = |t: &Task| t.frame.map(|f| f.0);
        k + 1 == self.tasks.len() || kind(&self.tasks[k]) != kind(&self.tasks[k + 1])
    }

    fn family_label(&self, k: usize) -> String {
        match self.tasks[k].frame {
            Some(Frame(0)) => "west",
            Some(Frame(1)) => "east",
            Some(_) => "south",
            None => "middle",
        }
        .to_string()
    }

    fn red_phase(&mut self, st: &Black<'a>) -> Option<(Black<'a>, RedDual, Grove)> {
        let lat = self.lat;
        let mut forced = Vec::new();
        let mut free = Vec::new();
        for (u, info) in lat.ups.iter().enumerate() {
            if st.entries[u] == 1 {
                continue;
            }
            let black: Vec<usize> = (0..3).filter(|&k| st.black.contains(info.sides[k])).collect();
            match black.as_slice() {
                [] => free.push(u),
                [k] => forced.push((u, info.neighbors[(k + 1) % 3], info.neighbors[(k + 2) % 3])),
                _ => return None,
            }
        }
        let small = self.small;
        let mut forest = ClassForest::new(small, vec![0; small.vertices.len()]);
        for &(_, a, b) in &forced {
            let e = red_edge(lat, small, a, b);
            let ei = &small.edges[e];
            if forest.join(ei.u, ei.v) != Join::Merged {
                return None;
            }
        }
        let mut chosen = forced.clone();
        let mut budget = RED_BUDGET;
        let found = self.free_choices(&free, 0, &mut forest, &mut chosen, &mut budget);
        let red = RedDual { m: small.n, edges: found? };
        let grove = red.to_grove(lat, small);
        Some((st.clone(), red, grove))
    }

    fn free_choices(
        &mut self,
        free: &[usize],
        k: usize,
        forest: &mut ClassForest,
        chosen: &mut Vec<(usize, usize, usize)>,
        budget: &mut u64,
    ) -> Option<Vec<(usize, usize, usize)>> {
        if k == free.len() {
            let red = RedDual { m: self.small.n, edges: chosen.clone() };
            let g = red.to_grove(self.lat, self.small);
            let ok = validate_with(self.small, &g).is_valid()
                && crate::grove::to_ast_with(self.small, &g).is_ok_and(|a| &a == self.config);
            if ok {
                let mut edges = chosen.clone();
                edges.sort();
                return Some(edges);
            }
            self.stats.red_backtracks += 1;
            return None;
        }
        let info = &self.lat.ups[free[k]];
        for skip in [2, 1, 0] {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let (a, b) = (info.neighbors[(skip + 1) % 3], info.neighbors[(skip + 2) % 3]);
            let e = red_edge(self.lat, self.small, a, b);
            let ei = &self.small.edges[e];
            let mark = forest.checkpoint();
            if forest.join(ei.u, ei.v) == Join::Merged {
                chosen.push((free[k], a, b));
                if let Some(done) = self.free_choices(free, k + 1, forest, chosen, budget) {
                    return Some(done);
                }
                chosen.pop();
            } else {
                self.stats.red_backtracks += 1;
            }
            forest.rollback(mark);
        }
        None
    }
}

/// Constructs a grove whose triangle is `config`. The configuration must be
/// a 0/1 array passing the six-property check.
pub fn build_grove(config: &Ast) -> Result<Construction> {
    let report = glick_check(config);
    if !report.passes() {
        let failed: Vec<&str> = report.checks().iter().filter(|(_, c)| !c.pass).map(|(k, _)| *k).collect();
        return Err(Error::PreconditionViolated(format!("fails {}", failed.join(", "))));
    }
    let m = config.n();
    let lat = Lattice::new(m + 1)?;
    let small = Lattice::new(m)?;
    let entries = config.values().to_vec();
    let mut seeded = Black::new(&lat, &entries);
    seeded.seed();
    let mut builder = Builder {
        lat: &lat,
        small: &small,
        tasks: tasks(&lat),
        config,
        stats: BuildStats::default(),
        snapshots: vec![seeded.snapshot("seeded")],
    };
    let Some((st, red, grove)) = builder.run(0, seeded) else {
        return Err(Error::ConstructionFailed(format!(
            "no routing found after {} backtracks",
            builder.stats.routing_backtracks
        )));
    };
    let aux = AuxGraph { n: lat.n, black: st.black.clone(), entries: entries.clone() };
    // keep only the snapshots of the accepted branch, in family order
    let mut snapshots: Vec<Snapshot> = Vec::new();
    for s in builder.snapshots.into_iter().rev() {
        if !snapshots.iter().any(|x| x.label == s.label) {
            snapshots.push(s);
        }
    }
    snapshots.reverse();
    Ok(Construction { grove, aux, red, stats: builder.stats, snapshots })
}

const NO_EDGE: &[&[usize]] = &[&[]];
const ONE_EDGE: &[&[usize]] = &[&[2], &[1], &[0]];
const TWO_EDGES: &[&[usize]] = &[&[1, 2], &[0, 2], &[0, 1]];

/// The smallest grove (in canonical order) whose triangle is `config`.
pub fn search_grove(config: &Ast) -> Option<Grove> {
    let m = config.n();
    let lat = Lattice::new(m).ok()?;
    let nc = lat.cells.len();
    let mut closing = vec![Vec::new(); nc];
    for (v, adj) in lat.adjacency.iter().enumerate() {
        let last = adj.iter().map(|&(_, e)| e / 3).max().expect("every vertex has an edge");
        closing[last].push(v);
    }
    let options: Vec<&[&[usize]]> = config
        .values()
        .iter()
        .map(|&x| match x {
            1 => NO_EDGE,
            0 => ONE_EDGE,
            _ => TWO_EDGES,
        })
        .collect();
    let mut forest = ClassForest::new(&lat, vec![1; lat.vertices.len()]);
    let mut chosen = EdgeSet::new(lat.edges.len());

    fn go(
        c: usize,
        lat: &Lattice,
        options: &[&[&[usize]]],
        closing: &[Vec<usize>],
        forest: &mut ClassForest,
        chosen: &mut EdgeSet,
    ) -> ControlFlow<()> {
        if c == options.len() {
            return ControlFlow::Break(());
        }
        for sides in options[c] {
            let mark = forest.checkpoint();
            let mut ok = true;
            for &s in *sides {
                let e = 3 * c + s;
                let info = &lat.edges[e];
                if forest.join(info.u, info.v) != Join::Merged {
                    ok = false;
                    break;
                }
                chosen.insert(e);
            }
            let mut closed = 0;
            if ok {
                for &v in &closing[c] {
                    closed += 1;
                    if !forest.close_vertex(v) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && go(c + 1, lat, options, closing, forest, chosen).is_break() {
                return ControlFlow::Break(());
            }
            for &v in &closing[c][..closed] {
                forest.reopen_vertex(v);
            }
            for &s in *sides {
                chosen.remove(3 * c + s);
            }
            forest.rollback(mark);
        }
        ControlFlow::Continue(())
    }

    go(0, &lat, &options, &closing, &mut forest, &mut chosen)
        .is_break()
        .then(|| Grove { n: m, edges: chosen })
}
