//! Exhaustive search for balanced figures.
//!
//! Generating sequences are enumerated depth first. Appending `a_k` fixes
//! the whole anti-diagonal `k` of the Steinhaus triangle, so the residue
//! counts of the figure are updated one anti-diagonal at a time and a
//! branch is cut as soon as some residue occurs more than `|F|/n` times.
//!
//! The space is split into independent tasks by fixing a short prefix.
//! Tasks run in fixed-size batches and the budget is only consulted
//! between batches, which keeps reports identical for any thread count.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};

/// Which figure of the generating sequence must be balanced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum SearchKind {
    Triangle,
    Trapezoid { height: usize },
    PascalTriangle,
    PascalTrapezoid { height: usize },
    Lozenge,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Strategy {
    /// Sequential enumeration of every sequence, without pruning.
    Full,
    /// Pruned enumeration split into parallel prefix tasks.
    #[default]
    PrefixParallel,
    /// As `PrefixParallel`, with the first nonzero term restricted to one
    /// representative per class under multiplication by units.
    FirstRowFixedPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchSpec {
    pub modulus: u64,
    pub kind: SearchKind,
    /// Length of the generating sequence.
    pub order: usize,
    pub strategy: Strategy,
    /// Maximum number of enumeration nodes; `None` for no limit.
    pub budget: Option<u64>,
    /// Identify `S` with `-S` by keeping the first nonzero term in `1..=n/2`.
    pub negation_halving: bool,
    /// Maximum number of generating sequences kept in the report.
    pub max_found: usize,
}

impl SearchSpec {
    pub fn new(modulus: u64, kind: SearchKind, order: usize) -> Self {
        Self {
            modulus,
            kind,
            order,
            strategy: Strategy::default(),
            budget: None,
            negation_halving: false,
            max_found: 100,
        }
    }

    pub fn triangle(modulus: u64, order: usize) -> Self {
        Self::new(modulus, SearchKind::Triangle, order)
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_negation_halving(mut self, on: bool) -> Self {
        self.negation_halving = on;
        self
    }

    pub fn with_max_found(mut self, max: usize) -> Self {
        self.max_found = max;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub claim: String,
    pub parameters: serde_json::Value,
    /// Enumeration nodes visited: every assignment of one term.
    pub examined: u64,
    /// Generating sequences of balanced figures, in lexicographic order,
    /// truncated to the requested maximum.
    pub found: Vec<Vec<u64>>,
    pub found_count: u64,
    pub exhaustive: bool,
    /// `false` when `n` does not divide the cardinality; nothing is searched.
    pub admissible: bool,
    /// Symmetry reductions applied to the space.
    pub reductions: Vec<String>,
    pub elapsed_ms: u64,
}

impl SearchReport {
    /// The report as JSON without the timing field.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsedMs");
        v
    }
}

/// Membership of the cells of the Steinhaus triangle of the generating
/// sequence, indexed by anti-diagonal and row.
struct Layout {
    len: usize,
    /// `mask[k * len + i]`: cell `(i, k - i)` is in the figure.
    mask: Vec<bool>,
    size: usize,
}

impl Layout {
    fn new(kind: SearchKind, len: usize) -> Result<Self> {
        let pascal_half = || -> Result<usize> {
            if len % 2 == 0 {
                return Err(Error::EvenLength(len));
            }
            Ok((len + 1) / 2)
        };
        let member: Box<dyn Fn(usize, usize) -> bool> = match kind {
            SearchKind::Triangle => Box::new(|_, _| true),
            SearchKind::Trapezoid { height } => {
                if height == 0 || height > len {
                    return Err(Error::HeightOutOfRange { h: height, max: len });
                }
                Box::new(move |i, _| i < height)
            }
            SearchKind::PascalTriangle => {
                let m = pascal_half()?;
                Box::new(move |i, j| i < m && j + i + 1 >= m && j < m)
            }
            SearchKind::PascalTrapezoid { height } => {
                let m = pascal_half()?;
                if height == 0 || height > m {
                    return Err(Error::HeightOutOfRange { h: height, max: m });
                }
                Box::new(move |i, j| i < m && i + height >= m && j + i + 1 >= m && j < m)
            }
            SearchKind::Lozenge => {
                let m = pascal_half()?;
                Box::new(move |i, j| i >= m || (j + i + 1 >= m && j < m))
            }
        };
        let mut mask = vec![false; len * len];
        let mut size = 0;
        for k in 0..len {
            for i in 0..=k {
                if member(i, k - i) {
                    mask[k * len + i] = true;
                    size += 1;
                }
            }
        }
        Ok(Self { len, mask, size })
    }
}

/// Choices for the first nonzero term under the active reductions.
fn leading_choices(n: u64, strategy: Strategy, halving: bool) -> Vec<u64> {
    match strategy {
        Strategy::FirstRowFixedPoint => (1..n).filter(|g| n % g == 0).collect(),
        _ if halving => (1..=n / 2).collect(),
        _ => (1..n).collect(),
    }
}

struct Walker<'a> {
    n: u64,
    layout: &'a Layout,
    prune: bool,
    cap: u32,
    leading: &'a [u64],
    diag: Vec<u32>,
    counts: Vec<u32>,
    seq: Vec<u64>,
    examined: u64,
    limit: u64,
    aborted: bool,
    found: Vec<Vec<u64>>,
    found_count: u64,
    max_found: usize,
}

impl<'a> Walker<'a> {
    fn new(n: u64, layout: &'a Layout, prune: bool, leading: &'a [u64], limit: u64, max_found: usize) -> Self {
        let len = layout.len;
        Self {
            n,
            layout,
            prune,
            cap: (layout.size as u64 / n) as u32,
            leading,
            diag: vec![0; len * len],
            counts: vec![0; n as usize],
            seq: Vec::with_capacity(len),
            examined: 0,
            limit,
            aborted: false,
            found: Vec::new(),
            found_count: 0,
            max_found,
        }
    }

    /// Writes anti-diagonal `k` for `a_k = v` and adds its figure cells to
    /// the counts. Returns the number of rows whose cells were counted and
    /// whether every count stayed within the cap.
    fn push(&mut self, k: usize, v: u64) -> (usize, bool) {
        let len = self.layout.len;
        let n = self.n as u32;
        let base = k * len;
        self.seq.push(v);
        let mut x = v as u32;
        for i in 0..=k {
            if i > 0 {
                x += self.diag[base - len + i - 1];
                if x >= n {
                    x -= n;
                }
            }
            self.diag[base + i] = x;
            if self.layout.mask[base + i] {
                let c = &mut self.counts[x as usize];
                *c += 1;
                if self.prune && *c > self.cap {
                    return (i + 1, false);
                }
            }
        }
        (k + 1, true)
    }

    fn pop(&mut self, k: usize, rows: usize) {
        let len = self.layout.len;
        let base = k * len;
        for i in 0..rows {
            if self.layout.mask[base + i] {
                self.counts[self.diag[base + i] as usize] -= 1;
            }
        }
        self.seq.pop();
    }

    fn choices(&self) -> Vec<u64> {
        if self.seq.iter().all(|&x| x == 0) {
            std::iter::once(0).chain(self.leading.iter().copied()).collect()
        } else {
            (0..self.n).collect()
        }
    }

    fn leaf(&mut self) {
        let balanced = self.counts.windows(2).all(|w| w[0] == w[1]);
        if balanced {
            self.found_count += 1;
            if self.found.len() < self.max_found {
                self.found.push(self.seq.clone());
            }
        }
    }

    fn dfs(&mut self, k: usize) {
        if k == self.layout.len {
            self.leaf();
            return;
        }
        for v in self.choices() {
            if self.examined >= self.limit {
                self.aborted = true;
                return;
            }
            self.examined += 1;
            let (rows, ok) = self.push(k, v);
            if ok {
                self.dfs(k + 1);
            }
            self.pop(k, rows);
            if self.aborted {
                return;
            }
        }
    }

    /// Replays a prefix produced by the task splitter.
    fn replay(&mut self, prefix: &[u64]) -> bool {
        for (k, &v) in prefix.iter().enumerate() {
            let (_, ok) = self.push(k, v);
            if !ok {
                return false;
            }
        }
        true
    }

    /// Collects surviving prefixes of length `depth`.
    fn prefixes(&mut self, k: usize, depth: usize, out: &mut Vec<Vec<u64>>) {
        if k == depth {
            out.push(self.seq.clone());
            return;
        }
        for v in self.choices() {
            self.examined += 1;
            let (rows, ok) = self.push(k, v);
            if ok {
                self.prefixes(k + 1, depth, out);
            }
            self.pop(k, rows);
        }
    }
}

const BATCH: usize = 64;

fn claim_for(kind: SearchKind, n: u64, len: usize) -> String {
    let what = match kind {
        SearchKind::Triangle => format!("Steinhaus triangle of order {len}"),
        SearchKind::Trapezoid { height } => format!("Steinhaus trapezoid of order {len} and height {height}"),
        SearchKind::PascalTriangle => format!("Pascal triangle of order {len}"),
        SearchKind::PascalTrapezoid { height } => format!("Pascal trapezoid of order {len} and height {height}"),
        SearchKind::Lozenge => format!("lozenge of order {len}"),
    };
    format!("balanced {what} in Z/{n}Z")
}

/// Searches the generating sequences of length `spec.order` whose figure
/// is balanced.
pub fn search_balanced(spec: &SearchSpec) -> Result<SearchReport> {
    let start = Instant::now();
    let n = spec.modulus;
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if spec.order == 0 {
        return Err(Error::EmptySequence);
    }
    if n > u32::MAX as u64 / 2 {
        return Err(Error::InvalidArgument("modulus too large for search".into()));
    }
    let layout = Layout::new(spec.kind, spec.order)?;
    let mut reductions = Vec::new();
    match spec.strategy {
        Strategy::FirstRowFixedPoint => {
            reductions.push("first nonzero term restricted to divisors of n (scaling by units)".to_string())
        }
        _ if spec.negation_halving => reductions.push("first nonzero term restricted to 1..=n/2 (negation)".into()),
        _ => {}
    }
    let parameters = json!({
        "modulus": n,
        "order": spec.order,
        "figure": spec.kind,
        "cardinality": layout.size,
        "strategy": spec.strategy,
        "budget": spec.budget,
    });
    let mut report = SearchReport {
        claim: claim_for(spec.kind, n, spec.order),
        parameters,
        examined: 0,
        found: Vec::new(),
        found_count: 0,
        exhaustive: true,
        admissible: layout.size as u64 % n == 0,
        reductions,
        elapsed_ms: 0,
    };
    if !report.admissible {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }
    let leading = leading_choices(n, spec.strategy, spec.negation_halving);
    let limit = spec.budget.unwrap_or(u64::MAX);

    if spec.strategy == Strategy::Full {
        let mut w = Walker::new(n, &layout, false, &leading, limit, spec.max_found);
        w.dfs(0);
        report.examined = w.examined;
        report.found = w.found;
        report.found_count = w.found_count;
        report.exhaustive = !w.aborted;
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let mut depth = 0;
    let mut tasks_estimate = 1u64;
    while depth < spec.order && tasks_estimate < BATCH as u64 {
        depth += 1;
        tasks_estimate = tasks_estimate.saturating_mul(n);
    }
    let mut splitter = Walker::new(n, &layout, true, &leading, u64::MAX, 0);
    let mut prefixes = Vec::new();
    splitter.prefixes(0, depth, &mut prefixes);
    report.examined = splitter.examined;

    for batch in prefixes.chunks(BATCH) {
        if report.examined >= limit {
            report.exhaustive = false;
            break;
        }
        let remaining = limit - report.examined;
        let results: Vec<Walker> = batch
            .par_iter()
            .map(|prefix| {
                let mut w = Walker::new(n, &layout, true, &leading, remaining, spec.max_found);
                if w.replay(prefix) {
                    w.dfs(prefix.len());
                }
                w
            })
            .collect();
        for w in results {
            report.examined += w.examined;
            report.exhaustive &= !w.aborted;
            report.found_count += w.found_count;
            for s in w.found {
                if report.found.len() < spec.max_found {
                    report.found.push(s);
                }
            }
        }
        if !report.exhaustive {
            break;
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
