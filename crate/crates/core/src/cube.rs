//! Exact symbolic evaluation of the cube recurrence over sparse Laurent
//! polynomials with arbitrary-precision coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Point3 {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl Point3 {
    pub const fn new(i: i64, j: i64, k: i64) -> Self {
        Point3 { i, j, k }
    }

    pub fn level(self) -> i64 {
        self.i + self.j + self.k
    }

    pub fn is_initial(self) -> bool {
        (-1..=1).contains(&self.level())
    }

    fn key(self) -> (i64, i64, i64, i64) {
        (self.level(), self.i, self.j, self.k)
    }
}

impl Ord for Point3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Point3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Product of variables `x_p^e`, stored sorted by point with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Point3, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(p: Point3) -> Self {
        Monomial(vec![(p, 1)])
    }

    pub fn from_exponents(mut exps: Vec<(Point3, i32)>) -> Self {
        exps.sort_by_key(|&(p, _)| p);
        let mut out: Vec<(Point3, i32)> = Vec::with_capacity(exps.len());
        for (p, e) in exps {
            match out.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => out.push((p, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    pub fn exponents(&self) -> &[(Point3, i32)] {
        &self.0
    }

    pub fn exponent(&self, p: Point3) -> i32 {
        self.0.binary_search_by(|&(q, _)| q.cmp(&p)).map_or(0, |k| self.0[k].1)
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let pick = match (a.get(x), b.get(y)) {
                (Some(l), Some(r)) => l.0.cmp(&r.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push((b[y].0, sign * b[y].1));
                    y += 1;
                }
                Ordering::Equal => {
                    let e = a[x].1 + sign * b[y].1;
                    if e != 0 {
                        out.push((a[x].0, e));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }
}

/// Lexicographic over variables in point order: at the first variable whose
/// exponents differ, the larger exponent is the larger monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut x, mut y) = (0, 0);
        loop {
            match (a.get(x), b.get(y)) {
                (None, None) => return Ordering::Equal,
                (Some(l), None) => return l.1.cmp(&0),
                (None, Some(r)) => return 0.cmp(&r.1),
                (Some(l), Some(r)) => match l.0.cmp(&r.0) {
                    Ordering::Less => return l.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&r.1),
                    Ordering::Equal => {
                        if l.1 != r.1 {
                            return l.1.cmp(&r.1);
                        }
                        x += 1;
                        y += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of monomials with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), BigInt::one())
    }

    pub fn var(p: Point3) -> Self {
        Self::monomial(Monomial::var(p), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in items {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c · m · other`.
    fn sub_scaled(&mut self, other: &Self, m: &Monomial, c: &BigInt) {
        for (n, d) in &other.terms {
            self.add_term(n.mul(m), -(c * d));
        }
    }

    pub fn variables(&self) -> BTreeSet<Point3> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(p, _)| p)).collect()
    }

    /// Per-variable minimum and maximum exponent, counting absences as zero.
    fn exponent_ranges(&self, vars: &BTreeSet<Point3>) -> HashMap<Point3, (i32, i32)> {
        vars.iter()
            .map(|&p| {
                let mut lo = i32::MAX;
                let mut hi = i32::MIN;
                for m in self.terms.keys() {
                    let e = m.exponent(p);
                    lo = lo.min(e);
                    hi = hi.max(e);
                }
                (p, (lo, hi))
            })
            .collect()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out.sub_scaled(rhs, &Monomial::one(), &BigInt::one());
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .map(|&(p, e)| if e == 1 { format!("x{p}") } else { format!("x{p}^{e}") })
                .collect();
            match (a.is_one(), vars.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `q` with `q · b = a`. Quotient terms are confined to the exponent box the
/// Newton polytopes allow, which bounds the number of reduction steps.
pub fn poly_div_exact(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    let (lead_m, lead_c) = b.leading().ok_or(Error::NotDivisible)?;
    if a.is_zero() {
        return Ok(LaurentPolynomial::zero());
    }
    let vars: BTreeSet<Point3> = a.variables().union(&b.variables()).copied().collect();
    let ra = a.exponent_ranges(&vars);
    let rb = b.exponent_ranges(&vars);
    let bounds: HashMap<Point3, (i32, i32)> = vars
        .iter()
        .map(|p| (*p, (ra[p].0 - rb[p].0, ra[p].1 - rb[p].1)))
        .collect();
    if bounds.values().any(|&(lo, hi)| lo > hi) {
        return Err(Error::NotDivisible);
    }
    let in_box = |m: &Monomial| {
        vars.iter().all(|p| {
            let (lo, hi) = bounds[p];
            (lo..=hi).contains(&m.exponent(*p))
        }) && m.0.iter().all(|(p, _)| vars.contains(p))
    };
    let mut rem = a.clone();
    let mut q = LaurentPolynomial::zero();
    while let Some((m, c)) = rem.leading() {
        let step = m.div(lead_m);
        if !in_box(&step) || !(c % lead_c).is_zero() {
            return Err(Error::NotDivisible);
        }
        let k = c / lead_c;
        rem.sub_scaled(b, &step, &k);
        q.add_term(step, k);
    }
    Ok(q)
}

/// The exchange relation's third term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RecurrenceForm {
    /// `f_{i,j,k−1} · f_{i−1,j−1,k}`.
    #[default]
    Symmetric,
    /// `f_{i,j,k−1} · f_{i−1,j,k−1}`, repeating a factor of the second term.
    AsPrinted,
}

/// Memoized evaluator; one instance per worker.
#[derive(Debug, Default)]
pub struct CubeEngine {
    form: RecurrenceForm,
    memo: HashMap<Point3, Rc<LaurentPolynomial>>,
}

impl CubeEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_form(form: RecurrenceForm) -> Self {
        CubeEngine { form, memo: HashMap::new() }
    }

    pub fn evaluate_f(&mut self, p: Point3) -> Result<Rc<LaurentPolynomial>> {
        if p.level() < -1 {
            return Err(Error::OutOfRange(p.i, p.j, p.k));
        }
        if let Some(f) = self.memo.get(&p) {
            return Ok(f.clone());
        }
        let value = if p.is_initial() {
            LaurentPolynomial::var(p)
        } else {
            let Point3 { i, j, k } = p;
            let mut g = |a, b, c| self.evaluate_f(Point3::new(a, b, c));
            let t1 = &*g(i - 1, j, k)? * &*g(i, j - 1, k - 1)?;
            let t2 = &*g(i, j - 1, k)? * &*g(i - 1, j, k - 1)?;
            let t3 = match self.form {
                RecurrenceForm::Symmetric => &*self.evaluate_f(Point3::new(i, j, k - 1))? * &*self.evaluate_f(Point3::new(i - 1, j - 1, k))?,
                RecurrenceForm::AsPrinted => &*self.evaluate_f(Point3::new(i, j, k - 1))? * &*self.evaluate_f(Point3::new(i - 1, j, k - 1))?,
            };
            let numerator = &(&t1 + &t2) + &t3;
            let denominator = self.evaluate_f(Point3::new(i - 1, j - 1, k - 1))?;
            poly_div_exact(&numerator, &denominator).map_err(|_| Error::NotLaurent(i, j, k))?
        };
        let value = Rc::new(value);
        self.memo.insert(p, value.clone());
        Ok(value)
    }

    pub fn analyze(&mut self, p: Point3) -> Result<Analysis> {
        Ok(Analysis::of(&*self.evaluate_f(p)?))
    }
}

/// The most even composition `(a, b, c)` of `s` with `a ≥ b ≥ c`.
pub fn balanced_point(s: i64) -> Point3 {
    let q = s.div_euclid(3);
    let r = s.rem_euclid(3);
    Point3::new(q + i64::from(r >= 1), q + i64::from(r >= 2), q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub monomial_count: usize,
    pub max_abs_exponent: i32,
    pub all_coefficients_one: bool,
    pub variables_touched: usize,
}

impl Analysis {
    pub fn of(f: &LaurentPolynomial) -> Self {
        Analysis {
            monomial_count: f.len(),
            max_abs_exponent: f.terms().flat_map(|(m, _)| m.0.iter().map(|&(_, e)| e.abs())).max().unwrap_or(0),
            all_coefficients_one: f.terms().all(|(_, c)| c.is_one()),
            variables_touched: f.variables().len(),
        }
    }
}

pub fn analyze(p: Point3) -> Result<Analysis> {
    CubeEngine::new().analyze(p)
}

/// Canonical JSON: monomials in ascending monomial order, each exponent list
/// by descending `(level, i, j, k)`.
pub fn polynomial_json(p: Point3, f: &LaurentPolynomial) -> String {
    let monomials: Vec<String> = f
        .terms()
        .map(|(m, c)| {
            let exps: Vec<String> = m.0.iter().rev().map(|&(q, e)| format!("[{},{},{},{e}]", q.i, q.j, q.k)).collect();
            format!("{{\"coeff\": {c}, \"exps\": [{}]}}", exps.join(","))
        })
        .collect();
    format!("{{\"point\": [{},{},{}], \"monomials\": [{}]}}", p.i, p.j, p.k, monomials.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: i64, j: i64, k: i64) -> LaurentPolynomial {
        LaurentPolynomial::var(Point3::new(i, j, k))
    }

    #[test]
    fn initial_values() {
        let mut e = CubeEngine::new();
        assert_eq!(*e.evaluate_f(Point3::new(0, 1, 0)).unwrap(), x(0, 1, 0));
        assert_eq!(*e.evaluate_f(Point3::new(0, 0, -1)).unwrap(), x(0, 0, -1));
        assert_eq!(e.evaluate_f(Point3::new(-1, -1, 0)), Err(Error::OutOfRange(-1, -1, 0)));
    }

    #[test]
    fn first_step_by_hand() {
        let mut e = CubeEngine::new();
        let f = e.evaluate_f(Point3::new(1, 1, 0)).unwrap();
        let num = &(&(&x(0, 1, 0) * &x(1, 0, -1)) + &(&x(1, 0, 0) * &x(0, 1, -1))) + &(&x(1, 1, -1) * &x(0, 0, 0));
        let expect = poly_div_exact(&num, &x(0, 0, -1)).unwrap();
        assert_eq!(*f, expect);
        assert_eq!(f.len(), 3);
        assert_eq!(
            e.analyze(Point3::new(1, 1, 0)).unwrap(),
            Analysis { monomial_count: 3, max_abs_exponent: 1, all_coefficients_one: true, variables_touched: 7 }
        );
        assert_eq!(
            analyze(Point3::new(0, 0, 1)).unwrap(),
            Analysis { monomial_count: 1, max_abs_exponent: 1, all_coefficients_one: true, variables_touched: 1 }
        );
    }

    #[test]
    fn division_examples() {
        let (a, b) = (x(0, 0, 0), x(1, 0, 0));
        assert_eq!(poly_div_exact(&(&a * &b), &a).unwrap(), b);
        let num = &(&a * &a) - &(&b * &b);
        assert_eq!(poly_div_exact(&num, &(&a + &b)).unwrap(), &a - &b);
        assert_eq!(poly_div_exact(&(&a + &b), &a).unwrap(), &LaurentPolynomial::one() + &(&b * &LaurentPolynomial::monomial(Monomial::from_exponents(vec![(Point3::new(0, 0, 0), -1)]), BigInt::one())));
        assert_eq!(poly_div_exact(&a, &(&a + &b)), Err(Error::NotDivisible));
        assert_eq!(poly_div_exact(&(&(&a * &a) + &b), &(&a + &b)), Err(Error::NotDivisible));
        assert_eq!(poly_div_exact(&a, &LaurentPolynomial::zero()), Err(Error::NotDivisible));
        let two = LaurentPolynomial::monomial(Monomial::one(), BigInt::from(2));
        assert_eq!(poly_div_exact(&a, &two), Err(Error::NotDivisible));
    }

    #[test]
    fn balanced_points() {
        assert_eq!(balanced_point(1), Point3::new(1, 0, 0));
        assert_eq!(balanced_point(2), Point3::new(1, 1, 0));
        assert_eq!(balanced_point(3), Point3::new(1, 1, 1));
        assert_eq!(balanced_point(7), Point3::new(3, 2, 2));
        for s in 1..20 {
            let p = balanced_point(s);
            assert_eq!(p.level(), s);
            assert!(p.i >= p.j && p.j >= p.k && p.i - p.k <= 1);
        }
    }

    #[test]
    fn balanced_levels_one_to_five() {
        let mut e = CubeEngine::new();
        let counts: Vec<usize> = (1..=5).map(|s| e.analyze(balanced_point(s)).unwrap().monomial_count).collect();
        assert_eq!(counts, vec![1, 3, 9, 81, 729]);
        for s in 1..=5 {
            let f = e.evaluate_f(balanced_point(s)).unwrap();
            assert!(f.terms().all(|(_, c)| c.is_one()));
            // level ±1 variables stay within {-1, 0, 1}; level 0 ones reach 2 from level 4 on
            for (m, _) in f.terms() {
                for &(p, x) in m.exponents() {
                    if p.level() != 0 {
                        assert!(x.abs() <= 1, "{p}^{x} at level {s}");
                    }
                }
            }
            let max = Analysis::of(&f).max_abs_exponent;
            assert_eq!(max, if s <= 3 { 1 } else { 2 }, "level {s}");
        }
    }

    #[test]
    fn printed_form_loses_laurentness() {
        let mut e = CubeEngine::with_form(RecurrenceForm::AsPrinted);
        assert_eq!(e.analyze(balanced_point(2)).unwrap().monomial_count, 3);
        assert_eq!(e.evaluate_f(balanced_point(5)), Err(Error::NotLaurent(2, 2, 1)));
    }

    const P: u64 = 1_000_000_007;

    fn pow_mod(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    }

    fn initial_value(p: Point3) -> u64 {
        let h = (p.i * 1_000_003 + p.j * 10_007 + p.k * 101 + 7).rem_euclid(P as i64 - 1) as u64;
        h + 1
    }

    /// The recurrence evaluated numerically modulo a prime.
    fn numeric(p: Point3, memo: &mut HashMap<Point3, u64>) -> u64 {
        if p.is_initial() {
            return initial_value(p);
        }
        if let Some(&v) = memo.get(&p) {
            return v;
        }
        let Point3 { i, j, k } = p;
        let mut g = |a, b, c| numeric(Point3::new(a, b, c), memo);
        let num = (g(i - 1, j, k) * g(i, j - 1, k - 1) % P
            + g(i, j - 1, k) * g(i - 1, j, k - 1) % P
            + g(i, j, k - 1) * g(i - 1, j - 1, k) % P)
            % P;
        let den = g(i - 1, j - 1, k - 1);
        let v = num * pow_mod(den, P - 2) % P;
        memo.insert(p, v);
        v
    }

    fn evaluate_mod(f: &LaurentPolynomial) -> u64 {
        let mut total = 0u64;
        for (m, c) in f.terms() {
            let mut t = (c % BigInt::from(P)).to_string().parse::<i64>().unwrap().rem_euclid(P as i64) as u64;
            for &(p, e) in m.exponents() {
                let v = initial_value(p);
                let v = if e < 0 { pow_mod(v, P - 2) } else { v };
                t = t * pow_mod(v, u64::from(e.unsigned_abs())) % P;
            }
            total = (total + t) % P;
        }
        total
    }

    #[test]
    fn symbolic_values_match_modular_evaluation() {
        let mut e = CubeEngine::new();
        let mut memo = HashMap::new();
        let mut points: Vec<Point3> = (1..=5).map(balanced_point).collect();
        points.extend([Point3::new(3, 0, 0), Point3::new(2, 1, 0), Point3::new(3, 1, 0), Point3::new(0, 4, 0)]);
        for p in points {
            let f = e.evaluate_f(p).unwrap();
            assert_eq!(evaluate_mod(&f), numeric(p, &mut memo), "at {p}");
        }
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let m1 = Monomial::from_exponents(vec![(Point3::new(0, 0, 0), 1)]);
        let m2 = Monomial::from_exponents(vec![(Point3::new(1, 0, 0), 2)]);
        let m3 = Monomial::from_exponents(vec![(Point3::new(0, 0, 0), -1), (Point3::new(0, 1, 0), 1)]);
        assert!(m1 > m2 && m2 > Monomial::one() && m3 < Monomial::one());
        assert!(m1.mul(&m3) > m2.mul(&m3));
    }

    #[test]
    fn json_format() {
        let mut e = CubeEngine::new();
        let p = Point3::new(0, 1, 0);
        assert_eq!(
            polynomial_json(p, &e.evaluate_f(p).unwrap()),
            r#"{"point": [0,1,0], "monomials": [{"coeff": 1, "exps": [[0,1,0,1]]}]}"#
        );
        let p = Point3::new(1, 1, 0);
        let s = polynomial_json(p, &e.evaluate_f(p).unwrap());
        assert!(s.contains(r#"{"coeff": 1, "exps": [[0,1,0,1],[1,0,-1,1],[0,0,-1,-1]]}"#), "{s}");
    }

    fn small_poly() -> impl Strategy<Value = LaurentPolynomial> {
        let point = (0i64..3, 0i64..2).prop_map(|(i, j)| Point3::new(i, j, -i - j));
        let mono = prop::collection::vec((point, -2i32..=2), 0..3).prop_map(Monomial::from_exponents);
        prop::collection::vec((mono, -3i64..=3), 0..4)
            .prop_map(|ts| LaurentPolynomial::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn distributive(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn commutative_and_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(poly_div_exact(&(&a * &b), &b).unwrap(), a);
        }
    }
}
