//! Triangular arrays over `{−1, 0, 1}` and the property checks run on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{self, cell_index, rotate_cell, Cell, RegionSpec};

/// Entries stored row-major in `(t, p)` order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ast {
    n: i32,
    values: Vec<i8>,
}

impl Ast {
    pub fn from_flat(n: i32, values: Vec<i8>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSize(n));
        }
        if values.len() as i32 != n * (n + 1) / 2 {
            return Err(Error::Malformed(format!(
                "size {n} needs {} entries, got {}",
                n * (n + 1) / 2,
                values.len()
            )));
        }
        if let Some(x) = values.iter().find(|x| !(-1..=1).contains(*x)) {
            return Err(Error::Malformed(format!("entry {x} is not in {{-1,0,1}}")));
        }
        Ok(Ast { n, values })
    }

    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len() as i32;
        if n < 1 {
            return Err(Error::InvalidSize(0));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() as i32 != n - k as i32 {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {}",
                    k + 1,
                    row.len(),
                    n - k as i32
                )));
            }
        }
        Ast::from_flat(n, rows.into_iter().flatten().collect())
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        let mut out = Vec::new();
        let mut k = 0;
        for t in 1..=self.n {
            let w = (self.n + 1 - t) as usize;
            out.push(self.values[k..k + w].to_vec());
            k += w;
        }
        out
    }

    pub fn entry(&self, c: Cell) -> i8 {
        self.values[cell_index(self.n, c)]
    }

    pub fn has_minus_one(&self) -> bool {
        self.values.contains(&-1)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("{{\"n\": {}, \"rows\": [{}]}}", self.n, rows.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map = json::object(text, &["n", "rows"])?;
        let raw = AstJson { n: json::field(&map, "n")?, rows: json::field(&map, "rows")? };
        let a = Ast::from_rows(raw.rows).map_err(|e| Error::Malformed(format!("field `rows`: {e}")))?;
        if a.n != raw.n {
            return Err(Error::Malformed(format!(
                "field `n`: {} disagrees with {} rows",
                raw.n, a.n
            )));
        }
        Ok(a)
    }

    /// Row `t` indented by `t − 1` spaces, entries separated by single spaces.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for (k, row) in self.rows().iter().enumerate() {
            out.push_str(&" ".repeat(k));
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    fn sum_over(&self, cells: &[usize]) -> i32 {
        cells.iter().map(|&c| i32::from(self.values[c])).sum()
    }

    fn count_over(&self, cells: &[usize], value: i8) -> i32 {
        cells.iter().filter(|&&c| self.values[c] == value).count() as i32
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

struct AstJson {
    n: i32,
    rows: Vec<Vec<i8>>,
}

pub fn entry_sum(a: &Ast) -> i32 {
    a.values.iter().map(|&x| i32::from(x)).sum()
}

/// `⌊(n + 1)/2⌋`.
pub fn expected_sum(n: i32) -> i32 {
    (n + 1) / 2
}

/// Entry at the rotated cell equals the source entry.
pub fn rotate_ast(a: &Ast) -> Ast {
    let n = a.n;
    let mut values = vec![0; a.values.len()];
    for c in lattice::cells(n).expect("n >= 1") {
        values[cell_index(n, rotate_cell(n, c))] = a.entry(c);
    }
    Ast { n, values }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Entry { cell: Cell, value: i8 },
    Sum { sum: i32, expected: i32 },
    /// A region whose count (or sum) exceeds its bound.
    Region { region: RegionSpec, value: i32, bound: i32 },
    Trapezoid { l: i32, r: i32, h: i32, sum: i32, v: i32 },
    Row { t: i32, ones: i32, minus_ones: i32 },
    Union { intervals: Vec<(i32, i32)>, sum: i32 },
    /// A −1 with no 1 in the triangle above it, seen after `rotation` turns.
    Corollary { rotation: u8, cell: Cell },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Entry { cell, value } => write!(f, "entry {value} at {cell}"),
            Witness::Sum { sum, expected } => write!(f, "sum {sum}, expected {expected}"),
            Witness::Region { region, value, bound } => write!(f, "{region}: {value} > {bound}"),
            Witness::Trapezoid { l, r, h, sum, v } => {
                write!(f, "trapezoid l={l} r={r} h={h}: sum {sum} > {h} - {v}")
            }
            Witness::Row { t, ones, minus_ones } => {
                write!(f, "row {t}: {ones} ones, {minus_ones} minus ones")
            }
            Witness::Union { intervals, sum } => write!(f, "union of {intervals:?}: sum {sum} < 0"),
            Witness::Corollary { rotation, cell } => {
                write!(f, "-1 at {cell} (rotation {rotation}) has no 1 above it")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn from(witness: Option<Witness>) -> Self {
        Check { pass: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlickOptions {
    /// Accept any entry in `{−1, 0, 1}` for the range property instead of `{0, 1}`.
    pub literal_p1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlickReport {
    pub p1_range: Check,
    pub p2_sum: Check,
    pub p3_toprows: Check,
    pub p4_leftcols: Check,
    pub p5_rightcols: Check,
    pub p6_uptriangles: Check,
}

impl GlickReport {
    pub fn passes(&self) -> bool {
        self.p1_range.pass && self.passes_2_to_6()
    }

    pub fn passes_2_to_6(&self) -> bool {
        self.p2_sum.pass
            && self.p3_toprows.pass
            && self.p4_leftcols.pass
            && self.p5_rightcols.pass
            && self.p6_uptriangles.pass
    }

    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("p1_range", &self.p1_range),
            ("p2_sum", &self.p2_sum),
            ("p3_toprows", &self.p3_toprows),
            ("p4_leftcols", &self.p4_leftcols),
            ("p5_rightcols", &self.p5_rightcols),
            ("p6_uptriangles", &self.p6_uptriangles),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section5Report {
    pub prop1_trapezoids: Check,
    pub prop2_uptriangle_sums: Check,
    pub prop3_row_counts: Check,
    pub prop4_unions: Check,
    pub corollary1: Check,
}

impl Section5Report {
    pub fn passes(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.pass)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 5] {
        [
            ("prop1_trapezoids", &self.prop1_trapezoids),
            ("prop2_uptriangle_sums", &self.prop2_uptriangle_sums),
            ("prop3_row_counts", &self.prop3_row_counts),
            ("prop4_unions", &self.prop4_unions),
            ("corollary1", &self.corollary1),
        ]
    }
}

fn indices(n: i32, region: RegionSpec) -> Vec<usize> {
    lattice::region_cells(n, region)
        .expect("region in range")
        .into_iter()
        .map(|c| cell_index(n, c))
        .collect()
}

/// Region tables for one size, reused across many arrays.
#[derive(Debug, Clone)]
pub struct Checker {
    n: i32,
    top_rows: Vec<Vec<usize>>,
    left_cols: Vec<Vec<usize>>,
    right_cols: Vec<Vec<usize>>,
    rows: Vec<Vec<usize>>,
    up_triangles: Vec<(RegionSpec, i32, Vec<usize>)>,
    trapezoids: Vec<((i32, i32, i32), Vec<usize>, Vec<usize>)>,
    unions: Vec<(Vec<(i32, i32)>, Vec<usize>)>,
}

impl Checker {
    pub fn new(n: i32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSize(n));
        }
        let per_i = |f: fn(i32) -> RegionSpec| (1..=n).map(|i| indices(n, f(i))).collect();
        let up_triangles = lattice::all_up_entry_triangles(n)
            .into_iter()
            .map(|(t0, q, s)| {
                let region = RegionSpec::UpEntryTriangle(t0, q, s);
                (region, s, indices(n, region))
            })
            .collect();
        let trapezoids = lattice::all_trapezoids(n)
            .into_iter()
            .map(|(l, r, h)| {
                let cells = indices(n, RegionSpec::Trapezoid(l, r, h));
                // bottom-row cells touch the rim in one vertex only
                let boundary = lattice::trapezoid_boundary(n, l, r, h)
                    .expect("trapezoid in range")
                    .into_iter()
                    .filter(|c| c.t == 1 || c.p == l || c.p == r - c.t + 1)
                    .map(|c| cell_index(n, c))
                    .collect();
                ((l, r, h), cells, boundary)
            })
            .collect();
        let unions = interval_antichains(n)
            .into_iter()
            .map(|chain| {
                let cells: BTreeSet<usize> = chain
                    .iter()
                    .flat_map(|&(l, r)| indices(n, RegionSpec::TopTriangle(l, r)))
                    .collect();
                (chain, cells.into_iter().collect())
            })
            .collect();
        Ok(Checker {
            n,
            top_rows: per_i(RegionSpec::TopRows),
            left_cols: per_i(RegionSpec::LeftCols),
            right_cols: per_i(RegionSpec::RightCols),
            rows: per_i(RegionSpec::Row),
            up_triangles,
            trapezoids,
            unions,
        })
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    /// Number of Property 4 unions checked at this size.
    pub fn union_count(&self) -> usize {
        self.unions.len()
    }

    fn prefix_bound(a: &Ast, regions: &[Vec<usize>], make: fn(i32) -> RegionSpec) -> Check {
        Check::from(regions.iter().enumerate().find_map(|(k, cells)| {
            let i = k as i32 + 1;
            let ones = a.count_over(cells, 1);
            (ones > i).then(|| Witness::Region { region: make(i), value: ones, bound: i })
        }))
    }

    pub fn glick(&self, a: &Ast, opts: GlickOptions) -> GlickReport {
        assert_eq!(a.n, self.n, "checker size mismatch");
        let p1 = a.values.iter().enumerate().find_map(|(k, &x)| {
            let bad = if opts.literal_p1 { !(-1..=1).contains(&x) } else { x != 0 && x != 1 };
            bad.then(|| Witness::Entry { cell: lattice::cells(self.n).expect("n >= 1")[k], value: x })
        });
        let sum = entry_sum(a);
        let expected = expected_sum(self.n);
        let p6 = self.up_triangles.iter().find_map(|(region, s, cells)| {
            let ones = a.count_over(cells, 1);
            (ones > *s).then(|| Witness::Region { region: *region, value: ones, bound: *s })
        });
        GlickReport {
            p1_range: Check::from(p1),
            p2_sum: Check::from((sum != expected).then_some(Witness::Sum { sum, expected })),
            p3_toprows: Self::prefix_bound(a, &self.top_rows, RegionSpec::TopRows),
            p4_leftcols: Self::prefix_bound(a, &self.left_cols, RegionSpec::LeftCols),
            p5_rightcols: Self::prefix_bound(a, &self.right_cols, RegionSpec::RightCols),
            p6_uptriangles: Check::from(p6),
        }
    }

    pub fn section5(&self, a: &Ast) -> Section5Report {
        assert_eq!(a.n, self.n, "checker size mismatch");
        let prop1 = self.trapezoids.iter().find_map(|&((l, r, h), ref cells, ref boundary)| {
            let sum = a.sum_over(cells);
            let v = a.count_over(boundary, -1);
            (sum > h - v).then_some(Witness::Trapezoid { l, r, h, sum, v })
        });
        let prop2 = self.up_triangles.iter().find_map(|(region, s, cells)| {
            let sum = a.sum_over(cells);
            (sum > *s).then(|| Witness::Region { region: *region, value: sum, bound: *s })
        });
        let prop3 = self.rows.iter().enumerate().find_map(|(k, cells)| {
            let t = k as i32 + 1;
            let ones = a.count_over(cells, 1);
            let minus_ones = a.count_over(cells, -1);
            (ones > t || minus_ones > t - 1).then_some(Witness::Row { t, ones, minus_ones })
        });
        let prop4 = self.unions.iter().find_map(|(chain, cells)| {
            let sum = a.sum_over(cells);
            (sum < 0).then(|| Witness::Union { intervals: chain.clone(), sum })
        });
        let corollary = top_anchored_corollary(a, 0)
            .or_else(|| {
                let r = rotate_ast(a);
                top_anchored_corollary(&r, 1).or_else(|| top_anchored_corollary(&rotate_ast(&r), 2))
            });
        Section5Report {
            prop1_trapezoids: Check::from(prop1),
            prop2_uptriangle_sums: Check::from(prop2),
            prop3_row_counts: Check::from(prop3),
            prop4_unions: Check::from(prop4),
            corollary1: Check::from(corollary),
        }
    }
}

/// Every −1 at `(t0, p0)` needs a 1 in the downward triangle whose bottom cell it is.
fn top_anchored_corollary(a: &Ast, rotation: u8) -> Option<Witness> {
    let n = a.n;
    lattice::cells(n).expect("n >= 1").into_iter().find_map(|c| {
        if a.entry(c) != -1 {
            return None;
        }
        let above = indices(n, RegionSpec::TopTriangle(c.p, c.p + c.t - 1));
        (a.count_over(&above, 1) == 0).then_some(Witness::Corollary { rotation, cell: c })
    })
}

/// Sets of top-row intervals none containing another, sorted by left end.
pub fn interval_antichains(n: i32) -> Vec<Vec<(i32, i32)>> {
    fn extend(n: i32, chain: &mut Vec<(i32, i32)>, out: &mut Vec<Vec<(i32, i32)>>) {
        let (l0, r0) = chain.last().copied().unwrap_or((0, 0));
        for l in l0 + 1..=n {
            for r in (r0 + 1).max(l)..=n {
                chain.push((l, r));
                out.push(chain.clone());
                extend(n, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut out);
    out
}

pub fn glick_check(a: &Ast) -> GlickReport {
    glick_check_with(a, GlickOptions::default())
}

pub fn glick_check_with(a: &Ast, opts: GlickOptions) -> GlickReport {
    Checker::new(a.n).expect("valid size").glick(a, opts)
}

pub fn section5_check(a: &Ast) -> Section5Report {
    Checker::new(a.n).expect("valid size").section5(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Binary,
    Ternary,
}

impl Alphabet {
    pub fn symbols(self) -> &'static [i8] {
        match self {
            Alphabet::Binary => &[0, 1],
            Alphabet::Ternary => &[-1, 0, 1],
        }
    }
}

/// Predicate over configurations, with an optional prefix test used to prune
/// the row-major search.
pub trait ConfigFilter: Sync {
    /// `prefix` holds the first `prefix.len()` entries in row-major order.
    fn prefix_ok(&self, _prefix: &[i8]) -> bool {
        true
    }

    fn accept(&self, a: &Ast) -> bool;
}

/// Accepts every configuration.
pub struct AcceptAll;

impl ConfigFilter for AcceptAll {
    fn accept(&self, _a: &Ast) -> bool {
        true
    }
}

/// Configurations satisfying the size-array characterization; with
/// `skip_range`, properties 2–6 only.
pub struct GlickFilter {
    checker: Checker,
    opts: GlickOptions,
    skip_range: bool,
    row_ends: Vec<usize>,
}

impl GlickFilter {
    pub fn new(n: i32, opts: GlickOptions) -> Result<Self> {
        let row_ends = (1..=n).map(|t| ((t * (2 * n + 1 - t)) / 2) as usize).collect();
        Ok(GlickFilter { checker: Checker::new(n)?, opts, skip_range: false, row_ends })
    }

    pub fn properties_2_to_6(n: i32) -> Result<Self> {
        let mut f = GlickFilter::new(n, GlickOptions::default())?;
        f.skip_range = true;
        Ok(f)
    }
}

impl ConfigFilter for GlickFilter {
    fn prefix_ok(&self, prefix: &[i8]) -> bool {
        let cells = self.row_ends[self.row_ends.len() - 1];
        let remaining = (cells - prefix.len()) as i32;
        let sum: i32 = prefix.iter().map(|&x| i32::from(x)).sum();
        let target = expected_sum(self.checker.n);
        let min_symbol = if prefix.contains(&-1) || self.skip_range || self.opts.literal_p1 { -1 } else { 0 };
        if sum + remaining < target || sum + min_symbol * remaining > target {
            return false;
        }
        // top-rows bound is checkable as soon as a row is complete
        if let Some(t) = self.row_ends.iter().position(|&e| e == prefix.len()) {
            let ones = prefix.iter().filter(|&&x| x == 1).count();
            if ones > t + 1 {
                return false;
            }
        }
        true
    }

    fn accept(&self, a: &Ast) -> bool {
        let r = self.checker.glick(a, self.opts);
        if self.skip_range {
            r.passes_2_to_6()
        } else {
            r.passes()
        }
    }
}

pub const DEFAULT_SPACE_LIMIT: u64 = 1 << 24;

pub fn enumerate_configs(n: i32, alphabet: Alphabet, filter: &dyn ConfigFilter) -> Result<Vec<Ast>> {
    enumerate_configs_limited(n, alphabet, filter, DEFAULT_SPACE_LIMIT)
}

/// All arrays of size `n` over `alphabet` accepted by `filter`, in ascending
/// row-major order.
pub fn enumerate_configs_limited(
    n: i32,
    alphabet: Alphabet,
    filter: &dyn ConfigFilter,
    space_limit: u64,
) -> Result<Vec<Ast>> {
    if n < 1 {
        return Err(Error::InvalidSize(n));
    }
    let cells = (n * (n + 1) / 2) as u32;
    let base = alphabet.symbols().len() as u64;
    match base.checked_pow(cells) {
        Some(space) if space <= space_limit => {}
        _ => {
            return Err(Error::LimitExceeded(format!(
                "{base}^{cells} configurations at size {n} exceeds {space_limit}"
            )))
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(cells as usize);
    fill(n, cells as usize, alphabet.symbols(), filter, &mut prefix, &mut out);
    Ok(out)
}

fn fill(
    n: i32,
    cells: usize,
    symbols: &[i8],
    filter: &dyn ConfigFilter,
    prefix: &mut Vec<i8>,
    out: &mut Vec<Ast>,
) {
    if prefix.len() == cells {
        let a = Ast { n, values: prefix.clone() };
        if filter.accept(&a) {
            out.push(a);
        }
        return;
    }
    for &s in symbols {
        prefix.push(s);
        if filter.prefix_ok(prefix) {
            fill(n, cells, symbols, filter, prefix, out);
        }
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_ast_n4() -> Ast {
        Ast::from_rows(vec![vec![0, 1, 0, 0], vec![0, -1, 1], vec![1, 0], vec![0]]).unwrap()
    }

    fn ast(rows: &[&[i8]]) -> Ast {
        Ast::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(entry_sum(&sample_ast_n4()), 2);
        assert_eq!(entry_sum(&ast(&[&[1]])), 1);
    }

    #[test]
    fn sample_passes_two_through_six_only() {
        let r = glick_check(&sample_ast_n4());
        assert!(!r.p1_range.pass);
        assert_eq!(r.p1_range.witness, Some(Witness::Entry { cell: Cell::new(2, 2), value: -1 }));
        assert!(r.passes_2_to_6());
        assert!(glick_check_with(&sample_ast_n4(), GlickOptions { literal_p1: true }).passes());
    }

    #[test]
    fn small_glick_cases() {
        assert!(glick_check(&ast(&[&[1]])).passes());
        let r = glick_check(&ast(&[&[0, 0], &[0]]));
        assert!(!r.p2_sum.pass);
        assert_eq!(r.p2_sum.witness, Some(Witness::Sum { sum: 0, expected: 1 }));
        let r = glick_check(&ast(&[&[1, 1], &[0]]));
        assert!(!r.p2_sum.pass);
    }

    #[test]
    fn section5_on_small_inputs() {
        assert!(section5_check(&ast(&[&[1]])).passes());
        let s = section5_check(&sample_ast_n4());
        assert!(s.passes(), "{s:?}");
        // the triangle above the -1 at (2,2)
        let above = lattice::region_cells(4, RegionSpec::TopTriangle(2, 3)).unwrap();
        assert_eq!(above, vec![Cell::new(1, 2), Cell::new(1, 3), Cell::new(2, 2)]);
        let a = sample_ast_n4();
        let vals: Vec<i8> = above.iter().map(|&c| a.entry(c)).collect();
        assert_eq!(vals, vec![1, 0, -1]);
    }

    #[test]
    fn trapezoid_with_boundary_minus_one() {
        // size-6 array holding the trapezoid l=1 r=6 h=3 with row sums 1, 0, 1
        let a = ast(&[
            &[0, 1, 0, 0, 0, 0],
            &[-1, 0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0],
            &[0, 0],
            &[0],
        ]);
        let cells = lattice::region_cells(6, RegionSpec::Trapezoid(1, 6, 3)).unwrap();
        let sum: i32 = cells.iter().map(|&c| i32::from(a.entry(c))).sum();
        let boundary = lattice::trapezoid_boundary(6, 1, 6, 3).unwrap();
        let v = boundary.iter().filter(|&&c| a.entry(c) == -1).count() as i32;
        assert_eq!((sum, v), (2, 1));
        assert!(sum <= 3 - v);
    }

    #[test]
    fn bottom_row_minus_one_is_not_counted() {
        let a = ast(&[&[0, 0, 1, 0], &[1, -1, 1], &[0, 0], &[0]]);
        let groves = crate::grove::enumerate_groves(4).unwrap();
        assert!(groves.iter().any(|g| crate::grove::to_ast(g).unwrap() == a));
        let s = section5_check(&a);
        assert!(s.prop1_trapezoids.pass, "{:?}", s.prop1_trapezoids);
    }

    #[test]
    fn corollary_detects_unsupported_minus_one() {
        let a = ast(&[&[0, 0], &[-1]]);
        let s = section5_check(&a);
        assert!(!s.corollary1.pass);
    }

    #[test]
    fn rotation() {
        assert_eq!(rotate_ast(&ast(&[&[1]])), ast(&[&[1]]));
        assert_eq!(rotate_ast(&ast(&[&[0, 0], &[1]])), ast(&[&[1, 0], &[0]]));
        let a = sample_ast_n4();
        assert_eq!(rotate_ast(&rotate_ast(&rotate_ast(&a))), a);
    }

    #[test]
    fn column_counts_are_rotated_row_counts() {
        let a = sample_ast_n4();
        let once = rotate_ast(&a);
        let twice = rotate_ast(&once);
        let ones = |x: &Ast, region| {
            lattice::region_cells(4, region).unwrap().iter().filter(|&&c| x.entry(c) == 1).count()
        };
        for i in 1..=4 {
            assert_eq!(ones(&a, RegionSpec::LeftCols(i)), ones(&once, RegionSpec::TopRows(i)));
            assert_eq!(ones(&a, RegionSpec::RightCols(i)), ones(&twice, RegionSpec::TopRows(i)));
        }
    }

    #[test]
    fn config_enumeration() {
        let f2 = GlickFilter::new(2, GlickOptions::default()).unwrap();
        let got = enumerate_configs(2, Alphabet::Binary, &f2).unwrap();
        assert_eq!(got, vec![ast(&[&[0, 0], &[1]]), ast(&[&[0, 1], &[0]]), ast(&[&[1, 0], &[0]])]);
        let f1 = GlickFilter::new(1, GlickOptions::default()).unwrap();
        assert_eq!(enumerate_configs(1, Alphabet::Binary, &f1).unwrap(), vec![ast(&[&[1]])]);
        assert_eq!(enumerate_configs(2, Alphabet::Ternary, &AcceptAll).unwrap().len(), 27);
        assert!(matches!(
            enumerate_configs(7, Alphabet::Binary, &AcceptAll),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn pruned_search_matches_plain_filter() {
        struct Plain(GlickFilter);
        impl ConfigFilter for Plain {
            fn accept(&self, a: &Ast) -> bool {
                self.0.accept(a)
            }
        }
        for n in 1..=4 {
            for alphabet in [Alphabet::Binary, Alphabet::Ternary] {
                let pruned = GlickFilter::properties_2_to_6(n).unwrap();
                let plain = Plain(GlickFilter::properties_2_to_6(n).unwrap());
                assert_eq!(
                    enumerate_configs(n, alphabet, &pruned).unwrap(),
                    enumerate_configs(n, alphabet, &plain).unwrap()
                );
            }
            let pruned = GlickFilter::new(n, GlickOptions::default()).unwrap();
            let plain = Plain(GlickFilter::new(n, GlickOptions::default()).unwrap());
            assert_eq!(
                enumerate_configs(n, Alphabet::Binary, &pruned).unwrap(),
                enumerate_configs(n, Alphabet::Binary, &plain).unwrap()
            );
        }
    }

    #[test]
    fn antichain_counts() {
        // n = 2: [1,1], [1,2], [2,2], {[1,1],[2,2]}
        assert_eq!(interval_antichains(2).len(), 4);
        assert_eq!(interval_antichains(1), vec![vec![(1, 1)]]);
    }

    #[test]
    fn formats() {
        let a = sample_ast_n4();
        assert_eq!(a.to_ascii(), "0 1 0 0\n 0 -1 1\n  1 0\n   0\n");
        assert_eq!(a.to_json(), r#"{"n": 4, "rows": [[0,1,0,0],[0,-1,1],[1,0],[0]]}"#);
        assert_eq!(Ast::from_json(&a.to_json()).unwrap(), a);
        assert!(matches!(Ast::from_json(r#"{"n": 2, "rows": [[0,2],[0]]}"#), Err(Error::Malformed(m)) if m.contains("rows")));
        assert!(matches!(Ast::from_json(r#"{"n": 3, "rows": [[0,1],[0]]}"#), Err(Error::Malformed(m)) if m.contains("`n`")));
    }
}
