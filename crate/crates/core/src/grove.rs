//! Simplified groves: validation, exhaustive enumeration, and the `1 − e`
//! map to triangular arrays.

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::ast::Ast;
use crate::error::{Error, Result};
use crate::forest::{ClassForest, Join};
use crate::json;
use crate::lattice::{ClassKind, Lattice, Vertex};

/// Bit set over ambient edge indices. Bit 0 is the most significant, so the
/// derived ordering is lexicographic in edge-index order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn new(len: usize) -> Self {
        EdgeSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn mask(k: usize) -> u64 {
        1 << (63 - k % 64)
    }

    pub fn contains(&self, k: usize) -> bool {
        self.words[k / 64] & Self::mask(k) != 0
    }

    pub fn insert(&mut self, k: usize) {
        assert!(k < self.len, "edge index {k} out of range");
        self.words[k / 64] |= Self::mask(k);
    }

    pub fn remove(&mut self, k: usize) {
        self.words[k / 64] &= !Self::mask(k);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&k| self.contains(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grove {
    pub n: i32,
    pub edges: EdgeSet,
}

impl Grove {
    pub fn empty(lat: &Lattice) -> Self {
        Grove { n: lat.n, edges: EdgeSet::new(lat.edges.len()) }
    }

    pub fn from_edges(lat: &Lattice, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Grove::empty(lat);
        for &(u, v) in pairs {
            g.edges.insert(lat.edge_of_vertices(u, v)?);
        }
        Ok(g)
    }

    /// Edges with the smaller endpoint first, sorted.
    pub fn edge_pairs(&self, lat: &Lattice) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = lat.edge_endpoints(e);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self, lat: &Lattice) -> String {
        let edges: Vec<String> = self
            .edge_pairs(lat)
            .into_iter()
            .map(|(a, b)| format!("[{},{},{},{}]", a.i, a.j, b.i, b.j))
            .collect();
        format!("{{\"n\": {}, \"edges\": [{}]}}", self.n, edges.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map = json::object(text, &["n", "edges"])?;
        let raw = GroveJson { n: json::field(&map, "n")?, edges: json::field(&map, "edges")? };
        let lat = Lattice::new(raw.n).map_err(|e| Error::Malformed(format!("field `n`: {e}")))?;
        let pairs: Vec<_> = raw
            .edges
            .iter()
            .map(|e| (Vertex::new(e[0], e[1]), Vertex::new(e[2], e[3])))
            .collect();
        Grove::from_edges(&lat, &pairs).map_err(|e| Error::Malformed(format!("field `edges`: {e}")))
    }

    /// Edge-wise image under the 120° rotation.
    pub fn rotated(&self, lat: &Lattice) -> Grove {
        let mut out = Grove::empty(lat);
        for e in self.edges.iter() {
            out.edges.insert(lat.rotate_edge_index(e));
        }
        out
    }

    /// Entries `1 − e` without checking validity.
    pub(crate) fn entries(&self, lat: &Lattice) -> Ast {
        let values = (0..lat.cells.len())
            .map(|c| 1 - (0..3).filter(|s| self.edges.contains(3 * c + s)).count() as i8)
            .collect();
        Ast::from_flat(self.n, values).expect("shape matches the lattice")
    }
}

struct GroveJson {
    n: i32,
    edges: Vec<[i32; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    Cycle { edges: Vec<(Vertex, Vertex)> },
    /// A class whose members lie in more than one component.
    SplitClass { class: ClassKind },
    /// A component touching members of several classes.
    MixedComponent { classes: Vec<ClassKind>, vertices: Vec<Vertex> },
    ClassFreeComponent { vertices: Vec<Vertex> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[Vertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Violation::Cycle { edges } => {
                let parts: Vec<_> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "cycle through {}", parts.join(" "))
            }
            Violation::SplitClass { class } => write!(f, "{class} not connected"),
            Violation::MixedComponent { classes, vertices } => {
                let names: Vec<_> = classes.iter().map(|c| c.to_string()).collect();
                write!(f, "component {{{}}} joins {}", list(vertices), names.join(", "))
            }
            Violation::ClassFreeComponent { vertices } => {
                write!(f, "component {{{}}} contains no boundary class", list(vertices))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Vec<Violation>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

pub fn validate(g: &Grove) -> Result<Validity> {
    Ok(validate_with(&Lattice::new(g.n)?, g))
}

pub fn validate_with(lat: &Lattice, g: &Grove) -> Validity {
    let nv = lat.vertices.len();
    let mut violations = Vec::new();
    let mut comp: Vec<usize> = (0..nv).collect();
    let find = |comp: &mut Vec<usize>, mut x: usize| {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in g.edges.iter() {
        let info = &lat.edges[e];
        let (a, b) = (find(&mut comp, info.u), find(&mut comp, info.v));
        if a == b {
            let mut path = forest_path(&adj, info.u, info.v);
            path.push(e);
            let mut edges: Vec<_> = path.iter().map(|&k| lat.edge_endpoints(k)).collect();
            edges.sort();
            violations.push(Violation::Cycle { edges });
        } else {
            comp[a] = b;
            adj[info.u].push((info.v, e));
            adj[info.v].push((info.u, e));
        }
    }
    let roots: Vec<usize> = (0..nv).map(|v| find(&mut comp, v)).collect();
    for class in &lat.classes {
        let mut rs: Vec<usize> =
            class.members.iter().map(|&m| roots[lat.vertex_index(m).expect("member")]).collect();
        rs.sort();
        rs.dedup();
        if rs.len() > 1 {
            violations.push(Violation::SplitClass { class: class.kind });
        }
    }
    let mut seen = vec![false; nv];
    for v in 0..nv {
        let r = roots[v];
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let members: Vec<usize> = (0..nv).filter(|&x| roots[x] == r).collect();
        let mut classes: Vec<usize> = members.iter().filter_map(|&x| lat.class_of[x]).collect();
        classes.sort();
        classes.dedup();
        let vertices = || members.iter().map(|&x| lat.vertices[x]).collect();
        match classes.len() {
            0 => violations.push(Violation::ClassFreeComponent { vertices: vertices() }),
            1 => {}
            _ => violations.push(Violation::MixedComponent {
                classes: classes.iter().map(|&c| lat.classes[c].kind).collect(),
                vertices: vertices(),
            }),
        }
    }
    if violations.is_empty() {
        Validity::Valid
    } else {
        Validity::Invalid(violations)
    }
}

fn forest_path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<usize> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        path.push(e);
        cur = p;
    }
    path
}

pub fn to_ast(g: &Grove) -> Result<Ast> {
    let lat = Lattice::new(g.n)?;
    to_ast_with(&lat, g)
}

pub fn to_ast_with(lat: &Lattice, g: &Grove) -> Result<Ast> {
    match validate_with(lat, g) {
        Validity::Valid => Ok(g.entries(lat)),
        Validity::Invalid(v) => Err(Error::InvalidGrove(
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "),
        )),
    }
}

/// Depth-first search over ambient edges in index order, excluding an edge
/// before including it, so groves come out in ascending bit-vector order.
struct Search<'a> {
    lat: &'a Lattice,
    target: usize,
    /// Vertices whose last incident edge is `k`.
    closing: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    forest: ClassForest,
    chosen: EdgeSet,
    count: usize,
}

impl<'a> Search<'a> {
    fn new(lat: &'a Lattice) -> Self {
        let mut closing = vec![Vec::new(); lat.edges.len()];
        for (v, adj) in lat.adjacency.iter().enumerate() {
            let last = adj.iter().map(|&(_, e)| e).max().expect("every vertex has an edge");
            closing[last].push(v);
        }
        Search { lat, target: crate::lattice::grove_edge_count(lat.n), closing }
    }

    fn initial(&self) -> State {
        State {
            forest: ClassForest::new(self.lat, vec![1; self.lat.vertices.len()]),
            chosen: EdgeSet::new(self.lat.edges.len()),
            count: 0,
        }
    }

    fn run<F>(&self, k: usize, st: &mut State, stop_at: usize, leaf: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&State) -> ControlFlow<()>,
    {
        if k == stop_at {
            return leaf(st);
        }
        let remaining = self.lat.edges.len() - k - 1;
        for include in [false, true] {
            let mark = st.forest.checkpoint();
            if include {
                if st.count == self.target {
                    continue;
                }
                let info = &self.lat.edges[k];
                if st.forest.join(info.u, info.v) != Join::Merged {
                    continue;
                }
                st.chosen.insert(k);
                st.count += 1;
            } else if st.count + remaining < self.target {
                continue;
            }
            let mut ok = true;
            for &v in &self.closing[k] {
                ok &= st.forest.close_vertex(v);
            }
            let flow = if ok { self.run(k + 1, st, stop_at, leaf) } else { ControlFlow::Continue(()) };
            for &v in &self.closing[k] {
                st.forest.reopen_vertex(v);
            }
            if include {
                st.chosen.remove(k);
                st.count -= 1;
            }
            st.forest.rollback(mark);
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn frontier(&self, depth: usize) -> Vec<State> {
        let mut out = Vec::new();
        let mut st = self.initial();
        let _ = self.run(0, &mut st, depth, &mut |s| {
            out.push(s.clone());
            ControlFlow::Continue(())
        });
        out
    }

    fn split_depth(&self) -> usize {
        self.lat.edges.len().min(14)
    }
}

/// Streams every grove of size `n` in ascending canonical order, depth-first.
pub fn for_each_grove<F>(n: i32, mut visit: F) -> Result<()>
where
    F: FnMut(&Grove) -> ControlFlow<()>,
{
    let lat = Lattice::new(n)?;
    let search = Search::new(&lat);
    let mut st = search.initial();
    let _ = search.run(0, &mut st, lat.edges.len(), &mut |s| {
        visit(&Grove { n, edges: s.chosen.clone() })
    });
    Ok(())
}

/// All groves of size `n` in ascending canonical order. Subtrees are searched
/// on the current rayon pool and merged in order.
pub fn enumerate_groves(n: i32) -> Result<Vec<Grove>> {
    let lat = Lattice::new(n)?;
    let search = Search::new(&lat);
    let end = lat.edges.len();
    let parts: Vec<Vec<Grove>> = search
        .frontier(search.split_depth())
        .into_par_iter()
        .map(|mut st| {
            let mut found = Vec::new();
            let depth = search.split_depth();
            let _ = search.run(depth, &mut st, end, &mut |s| {
                found.push(Grove { n, edges: s.chosen.clone() });
                ControlFlow::Continue(())
            });
            found
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn count_groves(n: i32) -> Result<u64> {
    let lat = Lattice::new(n)?;
    let search = Search::new(&lat);
    let end = lat.edges.len();
    let depth = search.split_depth();
    Ok(search
        .frontier(depth)
        .into_par_iter()
        .map(|mut st| {
            let mut count = 0u64;
            let _ = search.run(depth, &mut st, end, &mut |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            count
        })
        .sum())
}

/// Connected components of the grove's graph, as vertex-index lists.
pub fn components(lat: &Lattice, g: &Grove) -> Vec<Vec<usize>> {
    let nv = lat.vertices.len();
    let mut label = vec![usize::MAX; nv];
    let mut out = Vec::new();
    for s in 0..nv {
        if label[s] != usize::MAX {
            continue;
        }
        let mut comp = vec![s];
        label[s] = out.len();
        let mut k = 0;
        while k < comp.len() {
            let x = comp[k];
            k += 1;
            for &(y, e) in &lat.adjacency[x] {
                if g.edges.contains(e) && label[y] == usize::MAX {
                    label[y] = out.len();
                    comp.push(y);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn v(i: i32, j: i32) -> Vertex {
        Vertex::new(i, j)
    }

    pub(crate) fn sample_grove_n4(lat: &Lattice) -> Grove {
        Grove::from_edges(
            lat,
            &[
                (v(-2, 0), v(-3, -1)),
                (v(0, 0), v(1, -1)),
                (v(1, -1), v(-1, -1)),
                (v(-1, -1), v(-2, -2)),
                (v(-1, -1), v(0, -2)),
                (v(0, -2), v(2, -2)),
                (v(2, 0), v(3, -1)),
                (v(-1, -3), v(1, -3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sample_grove_is_valid_and_maps_to_its_array() {
        let lat = Lattice::new(4).unwrap();
        let g = sample_grove_n4(&lat);
        assert_eq!(validate_with(&lat, &g), Validity::Valid);
        let a = to_ast_with(&lat, &g).unwrap();
        assert_eq!(a.rows(), vec![vec![0, 1, 0, 0], vec![0, -1, 1], vec![1, 0], vec![0]]);
    }

    #[test]
    fn small_validation_cases() {
        let l1 = Lattice::new(1).unwrap();
        assert!(validate_with(&l1, &Grove::empty(&l1)).is_valid());
        assert_eq!(to_ast_with(&l1, &Grove::empty(&l1)).unwrap().rows(), vec![vec![1]]);

        let l2 = Lattice::new(2).unwrap();
        match validate_with(&l2, &Grove::empty(&l2)) {
            Validity::Invalid(v) => {
                assert_eq!(v, vec![Violation::SplitClass { class: ClassKind::MiddleTriplet }])
            }
            Validity::Valid => panic!("empty size-2 graph must fail"),
        }
        assert!(matches!(to_ast_with(&l2, &Grove::empty(&l2)), Err(Error::InvalidGrove(_))));

        let g = Grove::from_edges(&l2, &[(v(0, 0), v(-1, -1)), (v(0, 0), v(1, -1))]).unwrap();
        assert_eq!(to_ast_with(&l2, &g).unwrap().rows(), vec![vec![0, 0], vec![1]]);
    }

    #[test]
    fn violations_carry_witnesses() {
        let l2 = Lattice::new(2).unwrap();
        let tri = [(v(0, 0), v(-1, -1)), (v(0, 0), v(1, -1)), (v(-1, -1), v(1, -1))];
        let g = Grove::from_edges(&l2, &tri).unwrap();
        let Validity::Invalid(found) = validate_with(&l2, &g) else { panic!() };
        assert!(matches!(&found[0], Violation::Cycle { edges } if edges.len() == 3));

        let g = Grove::from_edges(&l2, &[(v(-2, 0), v(0, 0)), (v(0, 0), v(-1, -1)), (v(0, 0), v(1, -1))])
            .unwrap();
        let Validity::Invalid(found) = validate_with(&l2, &g) else { panic!() };
        assert!(found.iter().any(|x| matches!(x, Violation::MixedComponent { .. })));

        let l3 = Lattice::new(3).unwrap();
        // an inner vertex left alone
        let Validity::Invalid(found) = validate_with(&l3, &Grove::empty(&l3)) else { panic!() };
        assert!(found.iter().any(|x| matches!(x, Violation::ClassFreeComponent { vertices } if vertices == &[Vertex::new(0,-1)])));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_groves(1).unwrap().len(), 1);
        assert!(enumerate_groves(1).unwrap()[0].edges.count() == 0);
        assert_eq!(enumerate_groves(2).unwrap().len(), 3);
        assert_eq!(count_groves(2).unwrap(), 3);
    }

    #[test]
    fn search_matches_naive_filter() {
        for n in 1..=3 {
            let lat = Lattice::new(n).unwrap();
            let e = lat.edges.len();
            let mut naive = Vec::new();
            for mask in 0u64..(1 << e) {
                let mut g = Grove::empty(&lat);
                for k in 0..e {
                    if mask >> k & 1 == 1 {
                        g.edges.insert(k);
                    }
                }
                if validate_with(&lat, &g).is_valid() {
                    naive.push(g);
                }
            }
            naive.sort();
            assert_eq!(enumerate_groves(n).unwrap(), naive, "n={n}");
        }
    }

    #[test]
    fn stream_and_parallel_agree() {
        for n in 1..=4 {
            let mut streamed = Vec::new();
            for_each_grove(n, |g| {
                streamed.push(g.clone());
                ControlFlow::Continue(())
            })
            .unwrap();
            let all = enumerate_groves(n).unwrap();
            assert_eq!(streamed, all);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn enumerated_groves_satisfy_counting_identities() {
        for n in 1..=4 {
            let lat = Lattice::new(n).unwrap();
            for g in enumerate_groves(n).unwrap() {
                assert!(validate_with(&lat, &g).is_valid());
                assert_eq!(components(&lat, &g).len(), crate::lattice::class_count(n));
                assert_eq!(g.edges.count(), crate::lattice::grove_edge_count(n));
                assert!(validate_with(&lat, &g.rotated(&lat)).is_valid());
                assert!(g.entries(&lat).values().iter().all(|x| (-1..=1).contains(x)));
            }
        }
    }

    #[test]
    fn json_format_is_canonical() {
        let lat = Lattice::new(2).unwrap();
        let g = Grove::from_edges(&lat, &[(v(1, -1), v(0, 0)), (v(0, 0), v(-1, -1))]).unwrap();
        assert_eq!(g.to_json(&lat), r#"{"n": 2, "edges": [[-1,-1,0,0],[0,0,1,-1]]}"#);
        assert_eq!(Grove::from_json(&g.to_json(&lat)).unwrap(), g);
        assert!(matches!(
            Grove::from_json(r#"{"n": 4, "edges": [[0,-4,2,-4]]}"#),
            Err(Error::Malformed(m)) if m.contains("edges")
        ));
        assert!(matches!(Grove::from_json(r#"{"edges": []}"#), Err(Error::Malformed(m)) if m.contains("`n`")));
    }
}
