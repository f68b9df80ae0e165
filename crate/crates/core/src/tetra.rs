//! The two-dimensional automaton `a_{i,j} + a_{i,j+1} + a_{i+1,j}` and its
//! Steinhaus and Pascal tetrahedra.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::residue::{add_mod, MultiplicityTable};
use crate::search::SearchReport;

/// A triangular slice `{a_{i,j} | 0 <= i < m, 0 <= j < m - i}`; row `i`
/// holds `m - i` cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleSlice {
    modulus: u64,
    rows: Vec<Vec<u64>>,
}

impl TriangleSlice {
    pub fn new(modulus: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let m = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m - i {
                return Err(Error::InvalidArgument(format!("row {i} has {} cells, expected {}", r.len(), m - i)));
            }
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(|v| v % modulus).collect()).collect();
        Ok(Self { modulus, rows })
    }

    /// Parses rows given as digit strings, e.g. `["0443100", "213013", ...]`.
    pub fn from_digit_rows(modulus: u64, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| c.to_digit(10).map(u64::from).ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?}"))))
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, parsed)
    }

    /// Builds a slice from a flat list of cells in row order.
    pub fn from_cells(modulus: u64, size: usize, cells: &[u64]) -> Result<Self> {
        if cells.len() != size * (size + 1) / 2 {
            return Err(Error::InvalidArgument(format!("{} cells for a slice of size {size}", cells.len())));
        }
        let mut rows = Vec::with_capacity(size);
        let mut it = cells.iter().copied();
        for i in 0..size {
            rows.push(it.by_ref().take(size - i).collect());
        }
        Self::new(modulus, rows)
    }

    pub fn zeros(modulus: u64, size: usize) -> Result<Self> {
        Self::new(modulus, (0..size).map(|i| vec![0; size - i]).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.rows[i][j] = v % self.modulus;
    }

    pub fn cardinality(&self) -> usize {
        let m = self.size();
        m * (m + 1) / 2
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// Rows as digit strings, for single-digit moduli.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(if self.modulus <= 10 { "" } else { " " })).collect()
    }

    /// The derived slice `(a_{i,j} + a_{i,j+1} + a_{i+1,j})`, one smaller.
    pub fn derive(&self) -> Self {
        let n = self.modulus;
        let m = self.size();
        let rows = (0..m.saturating_sub(1))
            .map(|i| {
                (0..m - 1 - i)
                    .map(|j| add_mod(add_mod(self.rows[i][j], self.rows[i][j + 1], n), self.rows[i + 1][j], n))
                    .collect()
            })
            .collect();
        Self { modulus: n, rows }
    }
}

/// `derive_2d` as a free function.
pub fn derive_2d(t: &TriangleSlice) -> TriangleSlice {
    t.derive()
}

/// Floors of a tetrahedron, each a triangular slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tetrahedron {
    modulus: u64,
    floors: Vec<TriangleSlice>,
}

impl Tetrahedron {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn floors(&self) -> &[TriangleSlice] {
        &self.floors
    }

    pub fn cardinality(&self) -> usize {
        self.floors.iter().map(TriangleSlice::cardinality).sum()
    }

    pub fn multiplicity(&self) -> MultiplicityTable {
        MultiplicityTable::from_values(self.modulus, self.floors.iter().flat_map(|f| f.values())).expect("nonzero modulus")
    }

    pub fn is_balanced(&self) -> bool {
        self.multiplicity().is_balanced()
    }

    /// `{modulus, floors: [rows...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "modulus": self.modulus,
            "floors": self.floors.iter().map(|f| f.rows().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// The finite orbit of `base`: floor `f` is the `f`-th derived slice.
pub fn steinhaus_tetrahedron(base: &TriangleSlice) -> Result<Tetrahedron> {
    if base.size() == 0 {
        return Err(Error::EmptySequence);
    }
    let mut floors = vec![base.clone()];
    while floors.last().expect("nonempty").size() > 1 {
        let next = floors.last().expect("nonempty").derive();
        floors.push(next);
    }
    Ok(Tetrahedron { modulus: base.modulus(), floors })
}

/// The height of the Pascal tetrahedron over a base of size `3m - 2`.
fn pascal_height(size: usize) -> Result<usize> {
    if size == 0 || (size + 2) % 3 != 0 {
        return Err(Error::InvalidArgument(format!("base size {size} is not of the form 3m - 2")));
    }
    Ok((size + 2) / 3)
}

/// The central tetrahedron of height `m` over a base of size `3m - 2`.
///
/// Its apex is base cell `(m-1, m-1)`; floor `f` holds the cells
/// `(m-1-x, m-1-y)` of the `f`-th derived slice with `x + y <= f`, stored
/// at position `(x, y)`.
pub fn pascal_tetrahedron(base: &TriangleSlice) -> Result<Tetrahedron> {
    let m = pascal_height(base.size())?;
    let mut floors = Vec::with_capacity(m);
    let mut cur = base.clone();
    for f in 0..m {
        let rows = (0..=f).map(|x| (0..=f - x).map(|y| cur.get(m - 1 - x, m - 1 - y)).collect()).collect();
        floors.push(TriangleSlice { modulus: base.modulus(), rows });
        cur = cur.derive();
    }
    Ok(Tetrahedron { modulus: base.modulus(), floors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TetraKind {
    Steinhaus,
    Pascal,
}

/// Cells of the Steinhaus tetrahedron over a base of size `size`, indexed
/// by base position and floor.
struct TetraLayout {
    size: usize,
    /// Base cells in assignment order: `(i, j)` by descending `i`, then `j`.
    order: Vec<(usize, usize)>,
    /// Whether each base cell in `order` is enumerated or fixed to zero.
    free: Vec<bool>,
    /// `member[idx(i,j) * size + f]`.
    member: Vec<bool>,
    figure_size: usize,
}

impl TetraLayout {
    fn idx(&self, i: usize, j: usize) -> usize {
        // Row-major over the triangle.
        i * self.size - i * i.saturating_sub(1) / 2 + j
    }

    fn new(kind: TetraKind, m: usize) -> Result<Self> {
        let size = match kind {
            TetraKind::Steinhaus => m,
            TetraKind::Pascal => 3 * m - 2,
        };
        let mut order = Vec::new();
        for i in (0..size).rev() {
            for j in (0..size - i).rev() {
                order.push((i, j));
            }
        }
        let cells = size * (size + 1) / 2;
        let mut layout = Self { size, order, free: Vec::new(), member: vec![false; cells * size.max(1)], figure_size: 0 };
        let mut relevant = vec![false; cells];
        for i in 0..size {
            for j in 0..size - i {
                for f in 0..size - i - j {
                    let inside = match kind {
                        TetraKind::Steinhaus => true,
                        TetraKind::Pascal => f < m && i < m && j < m && i + j + 1 + f >= 2 * m - 1,
                    };
                    if inside {
                        let id = layout.idx(i, j);
                        layout.member[id * size + f] = true;
                        layout.figure_size += 1;
                        // Mark the base cells this one depends on.
                        for di in 0..=f {
                            for dj in 0..=f - di {
                                relevant[layout.idx(i + di, j + dj)] = true;
                            }
                        }
                    }
                }
            }
        }
        layout.free = layout.order.iter().map(|&(i, j)| relevant[layout.idx(i, j)]).collect();
        Ok(layout)
    }
}

struct TetraWalker<'a> {
    n: u64,
    layout: &'a TetraLayout,
    cap: u32,
    /// `vals[idx * size + f]`.
    vals: Vec<u32>,
    counts: Vec<u32>,
    assigned: Vec<u64>,
    examined: u64,
    limit: u64,
    aborted: bool,
    found: Vec<Vec<u64>>,
    found_count: u64,
    max_found: usize,
}

impl<'a> TetraWalker<'a> {
    fn new(n: u64, layout: &'a TetraLayout, limit: u64, max_found: usize) -> Self {
        let cells = layout.size * (layout.size + 1) / 2;
        Self {
            n,
            layout,
            cap: (layout.figure_size as u64 / n) as u32,
            vals: vec![0; cells * layout.size.max(1)],
            counts: vec![0; n as usize],
            assigned: Vec::with_capacity(cells),
            examined: 0,
            limit,
            aborted: false,
            found: Vec::new(),
            found_count: 0,
            max_found,
        }
    }

    /// Assigns base cell number `step`, filling every floor above it.
    /// Returns the number of floors counted and whether the caps held.
    fn push(&mut self, step: usize, v: u64) -> (usize, bool) {
        let l = self.layout;
        let s = l.size;
        let n = self.n as u32;
        let (i, j) = l.order[step];
        let id = l.idx(i, j);
        self.assigned.push(v);
        let floors = s - i - j;
        for f in 0..floors {
            let x = if f == 0 {
                v as u32
            } else {
                let a = self.vals[id * s + f - 1];
                let b = self.vals[l.idx(i, j + 1) * s + f - 1];
                let c = self.vals[l.idx(i + 1, j) * s + f - 1];
                (a + b + c) % n
            };
            self.vals[id * s + f] = x;
            if l.member[id * s + f] {
                let c = &mut self.counts[x as usize];
                *c += 1;
                if *c > self.cap {
                    return (f + 1, false);
                }
            }
        }
        (floors, true)
    }

    fn pop(&mut self, step: usize, floors: usize) {
        let l = self.layout;
        let s = l.size;
        let (i, j) = l.order[step];
        let id = l.idx(i, j);
        for f in 0..floors {
            if l.member[id * s + f] {
                self.counts[self.vals[id * s + f] as usize] -= 1;
            }
        }
        self.assigned.pop();
    }

    fn base_cells(&self) -> Vec<u64> {
        // Report the base in row order.
        let l = self.layout;
        let mut cells = vec![0; l.size * (l.size + 1) / 2];
        for (step, &(i, j)) in l.order.iter().enumerate() {
            cells[l.idx(i, j)] = self.assigned[step];
        }
        cells
    }

    fn dfs(&mut self, step: usize) {
        if step == self.layout.order.len() {
            if self.counts.windows(2).all(|w| w[0] == w[1]) {
                self.found_count += 1;
                if self.found.len() < self.max_found {
                    let cells = self.base_cells();
                    self.found.push(cells);
                }
            }
            return;
        }
        let top = if self.layout.free[step] { self.n } else { 1 };
        for v in 0..top {
            if self.examined >= self.limit {
                self.aborted = true;
                return;
            }
            self.examined += 1;
            let (floors, ok) = self.push(step, v);
            if ok {
                self.dfs(step + 1);
            }
            self.pop(step, floors);
            if self.aborted {
                return;
            }
        }
    }
}

/// Searches bases whose Steinhaus (base size `m`) or Pascal (height `m`)
/// tetrahedron is balanced.
pub fn search_balanced_tetra(n: u64, m: usize, kind: TetraKind, budget: Option<u64>) -> Result<SearchReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    let layout = TetraLayout::new(kind, m)?;
    let size = layout.figure_size;
    let what = match kind {
        TetraKind::Steinhaus => "Steinhaus",
        TetraKind::Pascal => "Pascal",
    };
    let mut report = SearchReport {
        claim: format!("balanced {what} tetrahedron of height {m} in Z/{n}Z"),
        parameters: json!({ "modulus": n, "m": m, "kind": kind, "cardinality": size, "budget": budget }),
        examined: 0,
        found: Vec::new(),
        found_count: 0,
        exhaustive: true,
        admissible: size as u64 % n == 0,
        reductions: if kind == TetraKind::Pascal {
            vec!["base cells outside the dependency cone fixed to 0".into()]
        } else {
            Vec::new()
        },
        elapsed_ms: 0,
    };
    if !report.admissible {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }
    let limit = budget.unwrap_or(u64::MAX);
    let max_found = 100;
    // Split on the first free base cell, as one batch of at most n tasks.
    let first_free = layout.free.iter().position(|&f| f);
    let tasks: Vec<Option<u64>> = match first_free {
        Some(_) => (0..n).map(Some).collect(),
        None => vec![None],
    };
    for chunk in tasks.chunks(64) {
        if report.examined >= limit {
            report.exhaustive = false;
            break;
        }
        let remaining = limit - report.examined;
        let results: Vec<TetraWalker> = chunk
            .par_iter()
            .map(|&task| {
                let mut w = TetraWalker::new(n, &layout, remaining, max_found);
                match (task, first_free) {
                    (Some(v), Some(pos)) => {
                        // Fixed cells before the first free one are zero.
                        let mut ok = true;
                        let mut pushed = Vec::new();
                        for step in 0..=pos {
                            let val = if step == pos { v } else { 0 };
                            w.examined += 1;
                            let (floors, good) = w.push(step, val);
                            pushed.push(floors);
                            if !good {
                                ok = false;
                                break;
                            }
                        }
                        if ok {
                            w.dfs(pos + 1);
                        }
                        // The fixed zeros before the first free cell are shared
                        // by all tasks; only the first one counts them.
                        if v != 0 {
                            w.examined -= pos as u64;
                        }
                    }
                    _ => w.dfs(0),
                }
                w
            })
            .collect();
        for w in results {
            report.examined += w.examined;
            report.exhaustive &= !w.aborted;
            report.found_count += w.found_count;
            for s in w.found {
                if report.found.len() < max_found {
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

/// Cardinality `C(m+2, 3)` of a tetrahedron of height `m`.
pub fn tetra_cardinality(m: usize) -> usize {
    (m + 2) * (m + 1) * m / 6
}
