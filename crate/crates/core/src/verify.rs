//! Self-checks: brute-force oracle agreement, the transcribed tables, and
//! structural invariants of the computed rows.
//!
//! Every check that depends on Coxeter length goes through a pluggable length
//! function, so a deliberately broken formula can be injected to confirm the
//! checks actually fail.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::affine_group::{AffineElement, AffineWeylGroup, Word};
use crate::bruhat::{cayley_ball, lower_interval, BruhatCache, IdealEnumeration};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::ko_analysis::{build_ideal, compute_rows, TableRow};
use crate::weights::RankConfig;

pub type LengthFn = fn(&AffineWeylGroup, &AffineElement) -> u32;

/// A deliberate defect for exercising the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Drops the `+1` inside the hyperplane count.
    Length,
}

impl Fault {
    pub fn length_fn(self) -> LengthFn {
        match self {
            Fault::Length => mutated_length,
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Fault::Length),
            _ => Err(Error::UnknownFault(s.to_string())),
        }
    }
}

fn true_length(group: &AffineWeylGroup, w: &AffineElement) -> u32 {
    group.length(w)
}

fn mutated_length(group: &AffineWeylGroup, w: &AffineElement) -> u32 {
    let z = group.base_image(w);
    let p = group.p() as i64;
    let mut total = 0;
    for a in 0..z.len() {
        for b in a + 1..z.len() {
            total += (z[a] - z[b]).div_euclid(p).unsigned_abs() as u32;
        }
    }
    total
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub oracle_ranks: Vec<usize>,
    pub oracle_maxlen: u32,
    pub fixture_ranks: Vec<usize>,
    pub invariant_ranks: Vec<usize>,
    pub length: LengthFn,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_ranks: vec![2, 3],
            oracle_maxlen: 8,
            fixture_ranks: vec![3, 4],
            invariant_ranks: vec![2, 3, 4],
            length: true_length,
        }
    }
}

impl VerifyOptions {
    /// Restricts every suite to a single rank.
    pub fn only_rank(mut self, n: usize) -> Self {
        self.oracle_ranks = vec![n];
        self.fixture_ranks = if fixtures::table(n).is_some() { vec![n] } else { vec![] };
        self.invariant_ranks = vec![n];
        self
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.length = fault.length_fn();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: String, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult { name, passed, detail });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type Outcome = std::result::Result<String, String>;

pub fn run(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    for &n in &opts.oracle_ranks {
        report.record(format!("oracle-length A{n}"), check_ball_lengths(n, opts));
        report.record(format!("oracle-bruhat A{n}"), check_oracle(n, opts.oracle_maxlen));
    }
    for &n in &opts.fixture_ranks {
        report.record(format!("fixtures A{n}"), check_fixtures(n, opts));
    }
    for &n in &opts.invariant_ranks {
        report.record(format!("invariants A{n}"), check_invariants(n, opts));
    }
    report
}

fn group(n: usize) -> std::result::Result<AffineWeylGroup, String> {
    RankConfig::with_coxeter_p(n).map(AffineWeylGroup::new).map_err(|e| e.to_string())
}

/// The length formula against breadth-first distance in the Cayley graph.
fn check_ball_lengths(n: usize, opts: &VerifyOptions) -> Outcome {
    let g = group(n)?;
    let ball = cayley_ball(&g, opts.oracle_maxlen);
    for (w, d) in &ball {
        let l = (opts.length)(&g, w);
        if l != *d {
            return Err(format!("{w:?} has word length {d} but length formula {l}"));
        }
    }
    Ok(format!("{} elements up to length {}", ball.len(), opts.oracle_maxlen))
}

/// Lifting recursion against the subword property on every pair in the ball.
fn check_oracle(n: usize, maxlen: u32) -> Outcome {
    let g = group(n)?;
    let ball = cayley_ball(&g, maxlen);
    let mut pairs = 0u64;
    for (w, _) in &ball {
        let below = lower_interval(&g, w);
        let mut cache = BruhatCache::chain_only(&g, w);
        for (v, lv) in &ball {
            pairs += 1;
            let fast = cache.leq_with_length(&g, v, *lv);
            if fast != below.contains(v) {
                return Err(format!("disagree on {v:?} <= {w:?}"));
            }
        }
    }
    Ok(format!("{pairs} pairs up to length {maxlen}"))
}

fn check_fixtures(n: usize, opts: &VerifyOptions) -> Outcome {
    let table = fixtures::table(n).ok_or_else(|| format!("no transcribed table for A{n}"))?;
    let cfg = RankConfig::with_coxeter_p(n).map_err(|e| e.to_string())?;
    let g = AffineWeylGroup::new(cfg);
    let rows = crate::ko_analysis::build_rows(cfg).map_err(|e| e.to_string())?;
    if rows.len() != table.len() {
        return Err(format!("{} rows, expected {}", rows.len(), table.len()));
    }
    let w0 = g.longest_finite_element();
    for f in table {
        let r = rows
            .iter()
            .find(|r| r.omega == f.omega)
            .ok_or_else(|| format!("no row with omega {:?}", f.omega))?;
        if r.epsilon != f.epsilon || r.length != f.length || r.counts().as_tuple() != f.counts {
            return Err(format!("row {:?} differs from {f:?}", r));
        }
        let y: Word = f.y_word.parse().map_err(|e: Error| e.to_string())?;
        let y = g.from_word(&y.0).map_err(|e| e.to_string())?;
        let w = w0.compose(&y).map_err(|e| e.to_string())?;
        if g.weight_epsilon(&w) != f.epsilon {
            return Err(format!("w_0 {} does not reach {:?}", f.y_word, f.epsilon));
        }
        let l = (opts.length)(&g, &w);
        if l != f.length {
            return Err(format!("w_0 {} has length {l}, table says {}", f.y_word, f.length));
        }
    }
    Ok(format!("{} rows match", table.len()))
}

fn check_invariants(n: usize, opts: &VerifyOptions) -> Outcome {
    let cfg = RankConfig::with_coxeter_p(n).map_err(|e| e.to_string())?;
    let (g, ideal) = build_ideal(cfg).map_err(|e| e.to_string())?;
    let len = opts.length;
    let w0 = g.longest_finite_element();
    let expected_w0 = (n * (n + 1) / 2) as u32;
    if len(&g, &w0) != expected_w0 {
        return Err(format!("l(w_0) = {}, expected {expected_w0}", len(&g, &w0)));
    }
    let expected_top = g.two_rho_rho();
    if len(&g, ideal.root()) != expected_top {
        return Err(format!("l(w_max) = {}, expected {expected_top}", len(&g, ideal.root())));
    }
    for m in ideal.members() {
        let w = &m.element;
        let l = len(&g, w);
        if l != m.length || len(&g, &w.inverse()) != l {
            return Err(format!("{w:?}: length {l} vs recorded {}", m.length));
        }
        for i in 0..=n {
            let mut ws = w.clone();
            ws.mul_generator_right(i);
            let ls = len(&g, &ws);
            let descent = ls < l;
            if ls.abs_diff(l) != 1 || descent != m.right_set.contains(i) {
                return Err(format!("{w:?}·s{i}: length {ls} next to {l}"));
            }
        }
        let dominant = g.has_dominant_weight(w) && g.shifted_pairings(w).iter().all(|&x| x > 0);
        let left = (1..=n).all(|i| g.left_descends(w, i));
        if !(g.is_in_wplus(w) && dominant && left) {
            return Err(format!("{w:?} fails W+ / dominance / left-descent agreement"));
        }
    }
    let rows = compute_rows(&g, &ideal, &Default::default(), 256, |_| Ok(())).map_err(|e| e.to_string())?;
    for r in &rows {
        r.check_invariants(n)?;
    }
    check_count_monotonicity(&g, &ideal, &rows)?;
    if rows[0].c7 != rows.len() as u64 {
        return Err(format!("top c7 = {}, ideal has {}", rows[0].c7, rows.len()));
    }
    Ok(format!("{} rows", rows.len()))
}

/// `v < w` in the ideal implies `c7(v) < c7(w)`.
fn check_count_monotonicity(g: &AffineWeylGroup, ideal: &IdealEnumeration, rows: &[TableRow]) -> std::result::Result<(), String> {
    let members = ideal.members();
    let elements: HashSet<&AffineElement> = ideal.elements().collect();
    if elements.len() != members.len() {
        return Err("duplicate ideal members".into());
    }
    for (i, w) in members.iter().enumerate() {
        let mut cache = BruhatCache::chain_only(g, &w.element);
        for (j, v) in members.iter().enumerate().skip(i + 1) {
            if cache.leq_with_length(g, &v.element, v.length) && rows[j].c7 >= rows[i].c7 {
                return Err(format!("c7 not strictly increasing from row {j} to row {i}"));
            }
        }
    }
    Ok(())
}
