//! Steinhaus triangles and trapezoids, Pascal triangles and trapezoids,
//! lozenges and doubly arithmetic triangles, built as rows of residues.
//!
//! Every figure sits in an orbit: row `r` of the figure is a run of
//! consecutive cells of some orbit row. [`Figure::row_origin`] gives that
//! position, which fixes the hexagonal layout used by the text renderer.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};
use crate::residue::{add_mod, mul_mod, reduce_i64, MultiplicityTable};
use crate::sequence::{FiniteSeq, Weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FigureKind {
    SteinhausTriangle,
    SteinhausTrapezoid,
    PascalTriangle,
    PascalTrapezoid,
    Lozenge,
    Dat,
}

impl FigureKind {
    pub fn name(self) -> &'static str {
        match self {
            FigureKind::SteinhausTriangle => "steinhausTriangle",
            FigureKind::SteinhausTrapezoid => "steinhausTrapezoid",
            FigureKind::PascalTriangle => "pascalTriangle",
            FigureKind::PascalTrapezoid => "pascalTrapezoid",
            FigureKind::Lozenge => "lozenge",
            FigureKind::Dat => "dat",
        }
    }
}

/// Kind-specific parameters. `order` is the length of the generating
/// sequence (the DAT side length for a DAT).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FigureParams {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
}

/// A positioned multiset of residues, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Figure {
    kind: FigureKind,
    modulus: u64,
    params: FigureParams,
    rows: Vec<Vec<u64>>,
}

/// `(a_j + a_{j+1})` on raw residues.
pub(crate) fn derive_values(row: &[u64], n: u64) -> Vec<u64> {
    row.windows(2).map(|w| add_mod(w[0], w[1], n)).collect()
}

/// The first `h` rows of the Steinhaus triangle of `row`.
pub(crate) fn triangle_rows(row: &[u64], n: u64, h: usize) -> Vec<Vec<u64>> {
    let mut rows = Vec::with_capacity(h);
    let mut cur = row.to_vec();
    for _ in 0..h {
        let next = derive_values(&cur, n);
        rows.push(cur);
        cur = next;
    }
    rows
}

/// Rows `0..m` of the Pascal triangle of `row` (length `2m - 1`).
pub(crate) fn pascal_rows(row: &[u64], n: u64) -> Vec<Vec<u64>> {
    let m = (row.len() + 1) / 2;
    triangle_rows(row, n, m).into_iter().enumerate().map(|(i, r)| r[m - 1 - i..m].to_vec()).collect()
}

fn modular_values(s: &FiniteSeq) -> Result<(u64, Vec<u64>)> {
    let n = s.ring().modulus().ok_or(Error::NotModular)?;
    Ok((n, s.residue_values()?))
}

fn odd_half(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::EmptySequence);
    }
    if len % 2 == 0 {
        return Err(Error::EvenLength(len));
    }
    Ok((len + 1) / 2)
}

impl Figure {
    /// Assembles a figure from explicit rows, checking the row widths
    /// against the kind and parameters.
    pub fn from_parts(kind: FigureKind, modulus: u64, params: FigureParams, rows: Vec<Vec<u64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let f = Self { kind, modulus, params, rows };
        let widths = f.expected_widths()?;
        let actual: Vec<usize> = f.rows.iter().map(Vec::len).collect();
        if widths != actual {
            return Err(Error::InvalidArgument(format!("row widths {actual:?} do not match {widths:?}")));
        }
        if f.rows.iter().flatten().any(|&v| v >= modulus) {
            return Err(Error::InvalidArgument("cell value out of range".into()));
        }
        Ok(f)
    }

    fn expected_widths(&self) -> Result<Vec<usize>> {
        let m = self.params.order;
        let h = || self.params.height.ok_or_else(|| Error::InvalidArgument("missing height".into()));
        Ok(match self.kind {
            FigureKind::SteinhausTriangle | FigureKind::Dat => (0..m).map(|i| m - i).collect(),
            FigureKind::SteinhausTrapezoid => {
                let h = h()?;
                if h > m {
                    return Err(Error::HeightOutOfRange { h, max: m });
                }
                (0..h).map(|i| m - i).collect()
            }
            FigureKind::PascalTriangle => {
                let p = odd_half(m)?;
                (1..=p).collect()
            }
            FigureKind::PascalTrapezoid => {
                let p = odd_half(m)?;
                let h = h()?;
                if h > p {
                    return Err(Error::HeightOutOfRange { h, max: p });
                }
                (p - h + 1..=p).collect()
            }
            FigureKind::Lozenge => {
                let p = odd_half(m)?;
                (1..=p).chain((1..p).rev()).collect()
            }
        })
    }

    /// `∇S`: rows `∂^i S` for `0 <= i < m`.
    pub fn steinhaus_triangle(s: &FiniteSeq) -> Result<Self> {
        let (n, v) = modular_values(s)?;
        if v.is_empty() {
            return Err(Error::EmptySequence);
        }
        let m = v.len();
        let params = FigureParams { order: m, ..Default::default() };
        Ok(Self { kind: FigureKind::SteinhausTriangle, modulus: n, params, rows: triangle_rows(&v, n, m) })
    }

    /// `ST(S, h)`: the first `h` rows of `∇S`.
    pub fn steinhaus_trapezoid(s: &FiniteSeq, h: usize) -> Result<Self> {
        let (n, v) = modular_values(s)?;
        let m = v.len();
        if m == 0 {
            return Err(Error::EmptySequence);
        }
        if h == 0 || h > m {
            return Err(Error::HeightOutOfRange { h, max: m });
        }
        let params = FigureParams { order: m, height: Some(h), ..Default::default() };
        Ok(Self { kind: FigureKind::SteinhausTrapezoid, modulus: n, params, rows: triangle_rows(&v, n, h) })
    }

    /// `ΔS` for `S` of length `2m - 1`: row `i` is the window of `∂^i S`
    /// over columns `m-1-i ..= m-1`.
    pub fn pascal_triangle(s: &FiniteSeq) -> Result<Self> {
        let (n, v) = modular_values(s)?;
        odd_half(v.len())?;
        let params = FigureParams { order: v.len(), ..Default::default() };
        Ok(Self { kind: FigureKind::PascalTriangle, modulus: n, params, rows: pascal_rows(&v, n) })
    }

    /// `PT(S, h)`: the `h` bottom rows of `ΔS`.
    pub fn pascal_trapezoid(s: &FiniteSeq, h: usize) -> Result<Self> {
        let (n, v) = modular_values(s)?;
        let m = odd_half(v.len())?;
        if h == 0 || h > m {
            return Err(Error::HeightOutOfRange { h, max: m });
        }
        let mut rows = pascal_rows(&v, n);
        rows.drain(..m - h);
        let params = FigureParams { order: v.len(), height: Some(h), ..Default::default() };
        Ok(Self { kind: FigureKind::PascalTrapezoid, modulus: n, params, rows })
    }

    /// `◊S = ΔS ⊎ ∇∂^m S` for `S` of length `2m - 1`.
    pub fn lozenge(s: &FiniteSeq) -> Result<Self> {
        let (n, v) = modular_values(s)?;
        let m = odd_half(v.len())?;
        let mut rows = pascal_rows(&v, n);
        let mut tail = v.clone();
        for _ in 0..m {
            tail = derive_values(&tail, n);
        }
        let below = tail.len();
        rows.extend(triangle_rows(&tail, n, below));
        let params = FigureParams { order: v.len(), ..Default::default() };
        Ok(Self { kind: FigureKind::Lozenge, modulus: n, params, rows })
    }

    /// `DAT(a, d1, d2, m) = {a + i·d1 + j·d2 | 0 <= i < m, 0 <= j < m - i}`.
    pub fn dat(a: i64, d1: i64, d2: i64, m: usize, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let (a, d1, d2) = (reduce_i64(a, n), reduce_i64(d1, n), reduce_i64(d2, n));
        let rows = (0..m)
            .map(|i| {
                let start = add_mod(a, mul_mod(i as u64, d1, n), n);
                (0..(m - i) as u64).map(|j| add_mod(start, mul_mod(j, d2, n), n)).collect()
            })
            .collect();
        let params = FigureParams { order: m, a: Some(a), d1: Some(d1), d2: Some(d2), ..Default::default() };
        Ok(Self { kind: FigureKind::Dat, modulus: n, params, rows })
    }

    /// `∇_α S` for a two-term weight, rows `∂_α^i S`.
    pub fn alpha_steinhaus_triangle(s: &FiniteSeq, w: &Weights) -> Result<Self> {
        if w.len() != 2 {
            return Err(Error::InvalidArgument(format!("expected two weights, got {}", w.len())));
        }
        let (n, v) = modular_values(s)?;
        if v.is_empty() {
            return Err(Error::EmptySequence);
        }
        let (x, y) = (reduce_i64(w.alpha()[0], n), reduce_i64(w.alpha()[1], n));
        let m = v.len();
        let mut rows = Vec::with_capacity(m);
        let mut cur = v;
        for _ in 0..m {
            let next = cur.windows(2).map(|p| add_mod(mul_mod(x, p[0], n), mul_mod(y, p[1], n), n)).collect();
            rows.push(cur);
            cur = next;
        }
        let params = FigureParams { order: m, weights: Some(w.alpha().to_vec()), ..Default::default() };
        Ok(Self { kind: FigureKind::SteinhausTriangle, modulus: n, params, rows })
    }

    pub fn kind(&self) -> FigureKind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn params(&self) -> &FigureParams {
        &self.params
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn cardinality(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Cells as `((row, column), value)` in figure coordinates.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| ((i, j), v)))
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn multiplicity(&self) -> MultiplicityTable {
        MultiplicityTable::from_values(self.modulus, self.values()).expect("nonzero modulus")
    }

    pub fn is_balanced(&self) -> bool {
        self.multiplicity().is_balanced()
    }

    /// Orbit row and starting column of figure row `r`, relative to the
    /// generating sequence.
    pub fn row_origin(&self, r: usize) -> (usize, i64) {
        let m = self.params.order;
        let p = (m + 1) / 2;
        match self.kind {
            FigureKind::SteinhausTriangle | FigureKind::SteinhausTrapezoid | FigureKind::Dat => (r, 0),
            FigureKind::PascalTriangle => (r, (p - 1 - r) as i64),
            FigureKind::PascalTrapezoid => {
                let h = self.params.height.unwrap_or(p);
                (p - h + r, h as i64 - 1 - r as i64)
            }
            FigureKind::Lozenge if r < p => (r, (p - 1 - r) as i64),
            FigureKind::Lozenge => (r, 0),
        }
    }

    /// Hexagonal-offset text: each row is shifted by half a cell per
    /// orbit row plus a full cell per orbit column.
    pub fn render_text(&self) -> String {
        let digits = (self.modulus.saturating_sub(1)).to_string().len();
        // A cell is `digits` wide plus one separator; keep that even so a
        // half-cell is a whole number of characters.
        let width = if digits % 2 == 1 { digits } else { digits + 1 };
        let half = (width + 1) / 2;
        let pos: Vec<i64> = (0..self.rows.len())
            .map(|r| {
                let (i, c) = self.row_origin(r);
                i as i64 + 2 * c
            })
            .collect();
        let min = pos.iter().copied().min().unwrap_or(0);
        let mut out = String::new();
        for (row, p) in self.rows.iter().zip(&pos) {
            let indent = ((p - min) as usize) * half;
            out.push_str(&" ".repeat(indent));
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("figure serializes")
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("figure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Figure = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Self::from_parts(raw.kind, raw.modulus, raw.params, raw.rows)
    }

    /// Compact multi-line listing of the rows with no indentation, one
    /// digit string per row when every value is a single digit.
    pub fn row_strings(&self) -> Vec<String> {
        let sep = if self.modulus <= 10 { "" } else { " " };
        self.rows
            .iter()
            .map(|r| {
                let mut s = String::new();
                for (j, v) in r.iter().enumerate() {
                    if j > 0 {
                        s.push_str(sep);
                    }
                    let _ = write!(s, "{v}");
                }
                s
            })
            .collect()
    }
}

/// Multiset union of several figures' tables.
pub fn union_table<'a, I>(figures: I, modulus: u64) -> Result<MultiplicityTable>
where
    I: IntoIterator<Item = &'a Figure>,
{
    let mut t = MultiplicityTable::new(modulus)?;
    for f in figures {
        t.merge(&f.multiplicity())?;
    }
    Ok(t)
}

/// `rot120(S)_j = Σ_{k<=j} C(j,k)·a_{m-1-k}`: the right side of `∇S`
/// read from top to bottom.
pub fn rot120(s: &FiniteSeq) -> Result<FiniteSeq> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let a = s.terms();
    let m = a.len();
    let terms = (0..m)
        .map(|j| {
            let row = binomial::big_row(j);
            (0..=j).map(|k| &row[k] * &a[m - 1 - k]).sum::<BigInt>()
        })
        .collect();
    FiniteSeq::new(s.ring(), terms)
}

/// `rot240(S)_j = Σ_{k<=m-1-j} C(m-1-j,k)·a_k`: the left side of `∇S`
/// read from bottom to top.
pub fn rot240(s: &FiniteSeq) -> Result<FiniteSeq> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let a = s.terms();
    let m = a.len();
    let terms = (0..m)
        .map(|j| {
            let row = binomial::big_row(m - 1 - j);
            row.iter().zip(a).map(|(c, x)| c * x).sum::<BigInt>()
        })
        .collect();
    FiniteSeq::new(s.ring(), terms)
}
