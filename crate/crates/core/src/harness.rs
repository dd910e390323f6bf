//! One-shot verification of every claim at small sizes, with a
//! deterministic machine-readable report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ast::{
    entry_sum, enumerate_configs, expected_sum, rotate_ast, Alphabet, Ast, Checker, GlickFilter, GlickOptions,
};
use crate::cube::{balanced_point, polynomial_json, Analysis, CubeEngine, LaurentPolynomial, Monomial, Point3};
use crate::error::{Error, Result};
use crate::grove::{components, enumerate_groves, to_ast_with, validate_with, Grove};
use crate::lattice::{self, Lattice};
use crate::reconstruct::{build_grove, search_grove};

/// Largest size for grove enumeration.
pub const GROVE_GUARD: i32 = 4;
/// Largest size for 0/1 configuration scans.
pub const BINARY_GUARD: i32 = 5;
/// Largest size for {−1, 0, 1} configuration scans.
pub const TERNARY_GUARD: i32 = 4;
/// Largest cube-recurrence level.
pub const CUBE_GUARD: i32 = 5;

pub const CLAIM_IDS: [&str; 17] = [
    "LEMMA1",
    "COMPONENT_COUNT",
    "EDGE_COUNT",
    "GLICK_FORWARD",
    "GLICK_CONVERSE_01",
    "GLICK_MINUS1_SCAN",
    "PROP1",
    "PROP2",
    "PROP3",
    "PROP4",
    "COROLLARY1",
    "ROTATION_CLOSURE",
    "RECONSTRUCT_ROUNDTRIP",
    "CUBE_LAURENT",
    "CUBE_EXPONENTS",
    "CUBE_COEFFS",
    "CUBE_COUNT_MATCH",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Findings fail the run.
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Evidence recorded for a claim whose truth is left open.
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    /// Inclusive size (or level) range checked.
    pub sizes: [i32; 2],
    pub status: Status,
    /// Number of objects checked.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counts {
    pub groves: Vec<u64>,
    pub asts: Vec<u64>,
    pub permutation_triangles: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n_max: i32,
    pub strict: bool,
    pub passed: bool,
    pub counts: Counts,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn hard_failures(&self) -> usize {
        self.claims.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn findings(&self) -> usize {
        self.claims.iter().filter(|c| c.status == Status::Finding).count()
    }

    /// Pretty JSON without wall times, so reruns are byte-identical.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Finding => "FINDING",
            };
            let _ = writeln!(
                out,
                "{status:<8} {:<22} sizes {}..{}  checked {:<6} {:>8.1} ms",
                c.id,
                c.sizes[0],
                c.sizes[1],
                c.checked,
                c.wall_time.as_secs_f64() * 1000.0
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "         witness: {w}");
            }
        }
        let _ = writeln!(
            out,
            "groves {:?}  asts {:?}  permutation triangles {:?}",
            self.counts.groves, self.counts.asts, self.counts.permutation_triangles
        );
        let _ = writeln!(
            out,
            "{} failed, {} findings{}: {}",
            self.hard_failures(),
            self.findings(),
            if self.strict { " (strict)" } else { "" },
            if self.passed { "ok" } else { "FAILED" }
        );
        out
    }
}

/// Everything enumerated once per size and shared by the claims.
struct SizeData {
    n: i32,
    lat: Lattice,
    groves: Vec<Grove>,
    /// Triangle of each grove, same order.
    triangles: Vec<Ast>,
    asts: BTreeSet<Ast>,
}

impl SizeData {
    fn new(n: i32) -> Result<Self> {
        let lat = Lattice::new(n)?;
        let groves = enumerate_groves(n)?;
        let triangles = groves.par_iter().map(|g| to_ast_with(&lat, g)).collect::<Result<Vec<Ast>>>()?;
        let asts = triangles.iter().cloned().collect();
        Ok(SizeData { n, lat, groves, triangles, asts })
    }

    fn permutation_triangles(&self) -> BTreeSet<Ast> {
        self.asts.iter().filter(|a| !a.has_minus_one()).cloned().collect()
    }
}

fn ast_witness(a: &Ast) -> Value {
    serde_json::from_str(&a.to_json()).expect("canonical json")
}

fn grove_witness(lat: &Lattice, g: &Grove) -> Value {
    serde_json::from_str(&g.to_json(lat)).expect("canonical json")
}

struct Claim {
    id: &'static str,
    sizes: [i32; 2],
    checked: u64,
    failure: Option<Value>,
    finding: Option<Value>,
    details: BTreeMap<String, Value>,
}

impl Claim {
    fn new(id: &'static str, hi: i32) -> Self {
        Claim { id, sizes: [1, hi], checked: 0, failure: None, finding: None, details: BTreeMap::new() }
    }

    fn fail(&mut self, w: Value) {
        self.failure.get_or_insert(w);
    }

    fn found(&mut self, w: Value) {
        self.finding.get_or_insert(w);
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }

    fn finish(self, started: Instant) -> ClaimRecord {
        let (status, witness) = match (self.failure, self.finding) {
            (Some(w), _) => (Status::Fail, Some(w)),
            (None, Some(w)) => (Status::Finding, Some(w)),
            (None, None) => (Status::Pass, None),
        };
        ClaimRecord {
            id: self.id.to_string(),
            sizes: self.sizes,
            status,
            checked: self.checked,
            witness,
            details: self.details,
            wall_time: started.elapsed(),
        }
    }
}

fn first_failure<T: Sync, F>(items: &[T], f: F) -> Option<Value>
where
    F: Fn(&T) -> Option<Value> + Sync + Send,
{
    items.par_iter().filter_map(f).find_first(|_| true)
}

pub fn run_verification(n_max: i32, options: VerifyOptions) -> Result<VerificationReport> {
    if n_max < 1 {
        return Err(Error::InvalidSize(n_max));
    }
    let guard = GROVE_GUARD.max(BINARY_GUARD).max(TERNARY_GUARD).max(CUBE_GUARD);
    if n_max > guard {
        return Err(Error::LimitExceeded(format!("max size {n_max} exceeds the largest guard {guard}")));
    }
    let grove_hi = n_max.min(GROVE_GUARD);
    let binary_hi = n_max.min(BINARY_GUARD);
    let ternary_hi = n_max.min(TERNARY_GUARD);
    let cube_hi = n_max.min(CUBE_GUARD);

    let data: Vec<SizeData> = (1..=grove_hi).map(SizeData::new).collect::<Result<_>>()?;
    let mut claims = Vec::new();

    claims.push(lemma1(&data, grove_hi));
    claims.push(component_count(&data, grove_hi));
    claims.push(edge_count(&data, grove_hi));
    claims.push(glick_forward(&data, grove_hi));
    claims.push(glick_converse(&data, binary_hi)?);
    claims.push(minus_one_scan(&data, ternary_hi)?);
    claims.extend(section5(&data, grove_hi));
    claims.push(rotation_closure(&data, grove_hi));
    claims.push(reconstruct_round_trip(binary_hi)?);
    claims.extend(cube_claims(&data, cube_hi));

    let counts = Counts {
        groves: data.iter().map(|d| d.groves.len() as u64).collect(),
        asts: data.iter().map(|d| d.asts.len() as u64).collect(),
        permutation_triangles: data.iter().map(|d| d.permutation_triangles().len() as u64).collect(),
    };
    let mut report = VerificationReport { n_max, strict: options.strict, passed: true, counts, claims };
    report.passed = report.hard_failures() == 0 && (!options.strict || report.findings() == 0);
    Ok(report)
}

fn lemma1(data: &[SizeData], hi: i32) -> ClaimRecord {
    let t = Instant::now();
    let mut c = Claim::new("LEMMA1", hi);
    for d in data {
        c.checked += d.groves.len() as u64;
        let target = expected_sum(d.n);
        if let Some(k) = d.triangles.iter().position(|a| entry_sum(a) != target) {
            c.fail(json!({"grove": grove_witness(&d.lat, &d.groves[k]), "sum": entry_sum(&d.triangles[k]), "expected": target}));
        }
    }
    c.finish(t)
}

fn component_count(data: &[SizeData], hi: i32) -> ClaimRecord {
    let t = Instant::now();
    let mut c = Claim::new("COMPONENT_COUNT", hi);
    for d in data {
        c.checked += d.groves.len() as u64;
        let expected = lattice::class_count(d.n);
        let vertices_ok = d.lat.vertices.len() as i32 == (d.n + 1) * (d.n + 2) / 2;
        let w = first_failure(&d.groves, |g| {
            let found = components(&d.lat, g).len();
            (!vertices_ok || found != expected || !validate_with(&d.lat, g).is_valid())
                .then(|| json!({"grove": grove_witness(&d.lat, g), "components": found, "expected": expected}))
        });
        if let Some(w) = w {
            c.fail(w);
        }
    }
    c.finish(t)
}

fn edge_count(data: &[SizeData], hi: i32) -> ClaimRecord {
    let t = Instant::now();
    let mut c = Claim::new("EDGE_COUNT", hi);
    for d in data {
        c.checked += d.groves.len() as u64;
        let expected = lattice::grove_edge_count(d.n);
        if let Some(g) = d.groves.iter().find(|g| g.edges.count() != expected) {
            c.fail(json!({"grove": grove_witness(&d.lat, g), "edges": g.edges.count(), "expected": expected}));
        }
    }
    c.finish(t)
}

fn glick_forward(data: &[SizeData], hi: i32) -> ClaimRecord {
    let t = Instant::now();
    let mut c = Claim::new("GLICK_FORWARD", hi);
    for d in data {
        let checker = Checker::new(d.n).expect("valid size");
        let perms: Vec<Ast> = d.permutation_triangles().into_iter().collect();
        c.checked += perms.len() as u64;
        let w = first_failure(&perms, |a| {
            let r = checker.glick(a, GlickOptions::default());
            (!r.passes()).then(|| json!({"ast": ast_witness(a), "report": r}))
        });
        if let Some(w) = w {
            c.fail(w);
        }
    }
    c.finish(t)
}

/// Above the grove guard, membership is decided by the search oracle.
fn glick_converse(data: &[SizeData], hi: i32) -> Result<ClaimRecord> {
    let t = Instant::now();
    let mut c = Claim::new("GLICK_CONVERSE_01", hi);
    let mut passing = Vec::new();
    for n in 1..=hi {
        let f = GlickFilter::new(n, GlickOptions::default())?;
        let configs = enumerate_configs(n, Alphabet::Binary, &f)?;
        c.checked += configs.len() as u64;
        passing.push(configs.len() as u64);
        match data.get((n - 1) as usize) {
            Some(d) => {
                let configs: BTreeSet<Ast> = configs.into_iter().collect();
                let perms = d.permutation_triangles();
                if let Some(a) = configs.symmetric_difference(&perms).next() {
                    c.fail(json!({"ast": ast_witness(a), "passes_glick": configs.contains(a), "is_ast": perms.contains(a)}));
                }
            }
            None => {
                if let Some(w) = first_failure(&configs, |a| search_grove(a).is_none().then(|| ast_witness(a))) {
                    c.fail(json!({"ast": w, "passes_glick": true, "is_ast": false}));
                }
            }
        }
    }
    c.detail("passing_configs", json!(passing));
    Ok(c.finish(t))
}

fn minus_one_scan(data: &[SizeData], hi: i32) -> Result<ClaimRecord> {
    let t = Instant::now();
    let mut c = Claim::new("GLICK_MINUS1_SCAN", hi);
    let (mut with_minus, mut not_ast, mut listed) = (Vec::new(), Vec::new(), Vec::new());
    for n in 1..=hi {
        let f = GlickFilter::properties_2_to_6(n)?;
        let configs: Vec<Ast> = enumerate_configs(n, Alphabet::Ternary, &f)?.into_iter().filter(Ast::has_minus_one).collect();
        c.checked += configs.len() as u64;
        let outside: Vec<&Ast> = match data.get((n - 1) as usize) {
            Some(d) => configs.iter().filter(|a| !d.asts.contains(*a)).collect(),
            None => configs.iter().filter(|a| search_grove(a).is_none()).collect(),
        };
        with_minus.push(configs.len() as u64);
        not_ast.push(outside.len() as u64);
        if let Some(a) = outside.first() {
            c.found(json!({"ast": ast_witness(a), "is_ast": false}));
        }
        if let Some(a) = configs.first() {
            c.found(json!({"ast": ast_witness(a), "is_ast": !outside.contains(&a)}));
        }
        listed.extend(configs.iter().map(|a| json!({"ast": ast_witness(a), "is_ast": !outside.contains(&a)})));
    }
    c.detail("configs", Value::Array(listed));
    c.detail("with_minus_one", json!(with_minus));
    c.detail("not_ast", json!(not_ast));
    Ok(c.finish(t))
}

fn section5(data: &[SizeData], hi: i32) -> Vec<ClaimRecord> {
    let t = Instant::now();
    let ids = ["PROP1", "PROP2", "PROP3", "PROP4", "COROLLARY1"];
    let mut claims: Vec<Claim> = ids.iter().map(|id| Claim::new(id, hi)).collect();
    let mut union_counts = Vec::new();
    for d in data {
        let checker = Checker::new(d.n).expect("valid size");
        union_counts.push(checker.union_count() as u64);
        let asts: Vec<Ast> = d.asts.iter().cloned().collect();
        let reports: Vec<_> = asts.par_iter().map(|a| checker.section5(a)).collect();
        for (a, r) in asts.iter().zip(&reports) {
            for (k, (_, check)) in r.checks().iter().enumerate() {
                claims[k].checked += 1;
                if !check.pass {
                    claims[k].fail(json!({"ast": ast_witness(a), "witness": check.witness}));
                }
            }
        }
    }
    claims[3].detail("antichains", json!(union_counts));
    let elapsed = t.elapsed() / ids.len() as u32;
    claims
        .into_iter()
        .map(|c| {
            let mut r = c.finish(Instant::now());
            r.wall_time = elapsed;
            r
        })
        .collect()
}

fn rotation_closure(data: &[SizeData], hi: i32) -> ClaimRecord {
    let t = Instant::now();
    let mut c = Claim::new("ROTATION_CLOSURE", hi);
    for d in data {
        c.checked += d.asts.len() as u64 + d.groves.len() as u64;
        let rotated: BTreeSet<Ast> = d.asts.iter().map(rotate_ast).collect();
        if let Some(a) = rotated.symmetric_difference(&d.asts).next() {
            c.fail(json!({"ast": ast_witness(a)}));
        }
        let w = first_failure(&d.groves, |g| {
            let r = g.rotated(&d.lat);
            (!validate_with(&d.lat, &r).is_valid()).then(|| json!({"grove": grove_witness(&d.lat, g)}))
        });
        if let Some(w) = w {
            c.fail(w);
        }
    }
    c.finish(t)
}

fn reconstruct_round_trip(hi: i32) -> Result<ClaimRecord> {
    let t = Instant::now();
    let mut c = Claim::new("RECONSTRUCT_ROUNDTRIP", hi);
    let (mut routing, mut red) = (Vec::new(), Vec::new());
    for m in 1..=hi {
        let f = GlickFilter::new(m, GlickOptions::default())?;
        let configs = enumerate_configs(m, Alphabet::Binary, &f)?;
        let lat = Lattice::new(m)?;
        c.checked += configs.len() as u64;
        let outcomes: Vec<(Option<Value>, Option<Value>, u64, u64)> = configs
            .par_iter()
            .map(|a| {
                let searched = search_grove(a).is_some();
                match build_grove(a) {
                    Ok(built) => {
                        let ok = validate_with(&lat, &built.grove).is_valid()
                            && to_ast_with(&lat, &built.grove).is_ok_and(|b| &b == a);
                        let fail = (!ok || !searched).then(|| {
                            json!({"ast": ast_witness(a), "grove": grove_witness(&lat, &built.grove), "search_found": searched})
                        });
                        let backtracked = (m <= 4 && built.stats.routing_backtracks > 0)
                            .then(|| json!({"ast": ast_witness(a), "routing_backtracks": built.stats.routing_backtracks}));
                        (fail, backtracked, built.stats.routing_backtracks, built.stats.red_backtracks)
                    }
                    Err(e) => (Some(json!({"ast": ast_witness(a), "error": e.to_string(), "search_found": searched})), None, 0, 0),
                }
            })
            .collect();
        for (fail, backtracked, _, _) in &outcomes {
            if let Some(w) = fail {
                c.fail(w.clone());
            }
            if let Some(w) = backtracked {
                c.found(w.clone());
            }
        }
        routing.push(outcomes.iter().map(|o| o.2).sum::<u64>());
        red.push(outcomes.iter().map(|o| o.3).sum::<u64>());
    }
    c.detail("routing_backtracks", json!(routing));
    c.detail("red_backtracks", json!(red));
    Ok(c.finish(t))
}

fn monomial_witness(p: Point3, m: &Monomial) -> Value {
    let single = LaurentPolynomial::monomial(m.clone(), num_bigint::BigInt::from(1));
    serde_json::from_str(&polynomial_json(p, &single)).expect("canonical json")
}

fn cube_claims(data: &[SizeData], hi: i32) -> Vec<ClaimRecord> {
    let t = Instant::now();
    let mut laurent = Claim::new("CUBE_LAURENT", hi);
    let mut exponents = Claim::new("CUBE_EXPONENTS", hi);
    let mut coeffs = Claim::new("CUBE_COEFFS", hi);
    let mut counts = Claim::new("CUBE_COUNT_MATCH", hi.min(GROVE_GUARD));
    let mut engine = CubeEngine::new();
    let mut monomials = Vec::new();
    let mut max_exponent = Vec::new();
    for s in 1..=hi {
        let p = balanced_point(i64::from(s));
        laurent.checked += 1;
        let f = match engine.evaluate_f(p) {
            Ok(f) => f,
            Err(e) => {
                laurent.fail(json!({"point": [p.i, p.j, p.k], "error": e.to_string()}));
                break;
            }
        };
        let a = Analysis::of(&f);
        monomials.push(a.monomial_count as u64);
        max_exponent.push(a.max_abs_exponent);
        exponents.checked += a.monomial_count as u64;
        coeffs.checked += a.monomial_count as u64;
        if let Some((m, _)) = f.terms().find(|(m, _)| m.exponents().iter().any(|&(_, e)| e.abs() > 1)) {
            exponents.fail(monomial_witness(p, m));
        }
        if let Some((m, c)) = f.terms().find(|(_, c)| *c != &num_bigint::BigInt::from(1)) {
            coeffs.found(json!({"point": [p.i, p.j, p.k], "monomial": monomial_witness(p, m), "coeff": c.to_string()}));
        }
        if let Some(d) = data.get((s - 1) as usize) {
            counts.checked += 1;
            let groves = d.groves.len();
            if groves != a.monomial_count {
                let w = json!({"size": s, "groves": groves, "monomials": a.monomial_count});
                if s <= 2 {
                    counts.fail(w);
                } else {
                    counts.found(w);
                }
            }
        }
    }
    laurent.detail("monomials", json!(monomials));
    exponents.detail("max_abs_exponent", json!(max_exponent));
    let elapsed = t.elapsed() / 4;
    [laurent, exponents, coeffs, counts]
        .into_iter()
        .map(|c| {
            let mut r = c.finish(Instant::now());
            r.wall_time = elapsed;
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_claim_once() {
        let r = run_verification(2, VerifyOptions::default()).unwrap();
        let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), CLAIM_IDS.len());
        for id in CLAIM_IDS {
            assert_eq!(ids.iter().filter(|&&x| x == id).count(), 1, "{id}");
        }
    }

    #[test]
    fn size_two_passes() {
        let r = run_verification(2, VerifyOptions { strict: true }).unwrap();
        assert!(r.passed, "{}", r.summary());
        assert_eq!(r.counts.groves, vec![1, 3]);
        assert_eq!(r.counts.permutation_triangles, vec![1, 3]);
    }

    #[test]
    fn size_one_is_trivial() {
        let r = run_verification(1, VerifyOptions::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.counts.groves, vec![1]);
    }

    #[test]
    fn guards() {
        assert!(matches!(run_verification(0, VerifyOptions::default()), Err(Error::InvalidSize(0))));
        assert!(matches!(run_verification(6, VerifyOptions::default()), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn report_is_deterministic() {
        let a = run_verification(3, VerifyOptions::default()).unwrap().to_json();
        let b = run_verification(3, VerifyOptions::default()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
