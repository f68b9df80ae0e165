//! Balance sweeps over the families of figures known to be balanced,
//! admissible orders and coverage proportions.
//!
//! Every sweep recounts each figure from its cells; nothing relies on
//! incremental tables.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::figure::{triangle_rows, Figure, FigureKind};
use crate::residue::{is_unit, units, MultiplicityTable};
use crate::sequence::{antisymmetric_family, idao_family, universal_orbit_entry, universal_sequence, IapSpec, Ring};

/// Tally of one family of figures inside a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub label: String,
    pub figures: u64,
    pub failures: u64,
}

/// A figure that was expected balanced but is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub label: String,
    pub figure: String,
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub claim: String,
    pub parameters: serde_json::Value,
    pub examined: u64,
    pub violations: Vec<Violation>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(claim: &str, parameters: serde_json::Value) -> Self {
        Self { claim: claim.into(), parameters, examined: 0, violations: Vec::new(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records that `table` (labelled `label`, describing `figure`) should
    /// be balanced.
    fn expect_balanced(&mut self, label: &str, figure: impl FnOnce() -> String, table: &MultiplicityTable) {
        self.examined += 1;
        let ok = table.is_balanced();
        match self.checks.iter_mut().find(|c| c.label == label) {
            Some(c) => {
                c.figures += 1;
                c.failures += u64::from(!ok);
            }
            None => self.checks.push(Check { label: label.into(), figures: 1, failures: u64::from(!ok) }),
        }
        if !ok {
            self.violations.push(Violation { label: label.into(), figure: figure(), counts: table.counts().to_vec() });
        }
    }

    fn expect_figure(&mut self, label: &str, figure: &Figure, describe: impl FnOnce() -> String) {
        self.expect_balanced(label, describe, &figure.multiplicity());
    }

    /// Merges a sub-report produced by a parallel worker.
    fn absorb(&mut self, other: VerifyReport) {
        self.examined += other.examined;
        self.violations.extend(other.violations);
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.label == c.label) {
                Some(x) => {
                    x.figures += c.figures;
                    x.failures += c.failures;
                }
                None => self.checks.push(c),
            }
        }
    }
}

fn require_odd(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("modulus {n} must be odd")));
    }
    Ok(())
}

fn require_unit(x: u64, n: u64, what: &str) -> Result<()> {
    if !is_unit(x, n) {
        return Err(Error::Precondition(format!("{what} = {x} is not invertible modulo {n}")));
    }
    Ok(())
}

/// Congruence on a possibly negative class representative.
fn congruent(x: i64, r: i64, modulus: u64) -> bool {
    (x - r).rem_euclid(modulus as i64) == 0
}

// ---------------------------------------------------------------------------
// Doubly arithmetic triangles

/// Every `DAT(a, d1, d2, m)` with `d1`, `d2`, `d1 - d2` invertible is
/// balanced for `m ≡ 0, -1 (mod n)`. `orders` defaults to
/// `n-1, n, 2n-1, 2n, 3n-1, 3n`.
pub fn verify_dat_balance(n: u64, orders: Option<&[usize]>) -> Result<VerifyReport> {
    require_odd(n)?;
    let nn = n as usize;
    let default = [nn - 1, nn, 2 * nn - 1, 2 * nn, 3 * nn - 1, 3 * nn];
    let orders: Vec<usize> = orders.unwrap_or(&default).iter().copied().filter(|&m| m > 0).collect();
    for &m in &orders {
        if !(m % nn == 0 || (m + 1) % nn == 0) {
            return Err(Error::Precondition(format!("order {m} is not congruent to 0 or -1 modulo {n}")));
        }
    }
    let pairs: Vec<(u64, u64)> = units(n)
        .into_iter()
        .flat_map(|d1| units(n).into_iter().map(move |d2| (d1, d2)))
        .filter(|&(d1, d2)| is_unit((d1 + n - d2) % n, n))
        .collect();
    let parts: Vec<VerifyReport> = pairs
        .par_iter()
        .map(|&(d1, d2)| {
            let mut r = VerifyReport::new("", json!({}));
            for a in 0..n {
                for &m in &orders {
                    let f = Figure::dat(a as i64, d1 as i64, d2 as i64, m, n).expect("nonzero modulus");
                    r.expect_figure(&format!("DAT of order {m}"), &f, || format!("DAT({a},{d1},{d2},{m})"));
                }
            }
            r
        })
        .collect();
    let mut report = VerifyReport::new(
        "doubly arithmetic triangles with invertible d1, d2, d1-d2 are balanced for orders m = 0, -1 (mod n)",
        json!({ "modulus": n, "orders": orders, "differencePairs": pairs.len() }),
    );
    for p in parts {
        report.absorb(p);
    }
    Ok(report)
}

/// All `(a, d1, d2)` with `DAT(a, d1, d2, m)` balanced in `Z/nZ`.
pub fn balanced_dats(n: u64, m: usize) -> Result<Vec<(u64, u64, u64)>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut out = Vec::new();
    for a in 0..n {
        for d1 in 0..n {
            for d2 in 0..n {
                if Figure::dat(a as i64, d1 as i64, d2 as i64, m, n)?.is_balanced() {
                    out.push((a, d1, d2));
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Interlaced doubly arithmetic orbits

/// Placement of figures inside an orbit: every figure is tried with its
/// generating window starting at each `(row, column)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Offsets {
    pub rows: Vec<usize>,
    pub cols: Vec<i64>,
}

impl Default for Offsets {
    fn default() -> Self {
        Self { rows: vec![0], cols: vec![0, 1, 2] }
    }
}

/// Parameters of the three-term family `IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ))`
/// modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub d: i64,
}

fn heights(max: usize, classes: &[i64], modulus: u64) -> Vec<usize> {
    (1..=max).filter(|&h| classes.iter().any(|&c| congruent(h as i64, c, modulus))).collect()
}

fn window(spec: &IapSpec, row: usize, j0: i64, j1: i64) -> Vec<u64> {
    spec.orbit_window(row, j0, j1).and_then(|w| w.residue_values()).expect("modular window")
}

/// Multiplicity of the first `h` rows of the triangle over `row`.
fn trapezoid_table(rows: &[Vec<u64>], h: usize, n: u64) -> MultiplicityTable {
    MultiplicityTable::from_values(n, rows[..h].iter().flatten().copied()).expect("nonzero modulus")
}

fn pascal_figures(
    report: &mut VerifyReport,
    base: &[u64],
    n: u64,
    m: usize,
    h_classes: &[i64],
    h_modulus: u64,
    context: &str,
) {
    let rows = triangle_rows(base, n, m);
    let pascal: Vec<Vec<u64>> = rows.iter().enumerate().map(|(i, r)| r[m - 1 - i..m].to_vec()).collect();
    let t = MultiplicityTable::from_values(n, pascal.iter().flatten().copied()).expect("nonzero modulus");
    report.expect_balanced("pascal triangle", || format!("{context} pascal triangle of order {}", 2 * m - 1), &t);
    for h in heights(m, h_classes, h_modulus) {
        let t = MultiplicityTable::from_values(n, pascal[m - h..].iter().flatten().copied()).expect("nonzero modulus");
        report.expect_balanced(
            "pascal trapezoid",
            || format!("{context} pascal trapezoid of order {} and height {h}", 2 * m - 1),
            &t,
        );
    }
}

/// Balanced figures in the orbit of the three-term family modulo odd `n`:
/// triangles, trapezoids and Pascal figures for `m ≡ 0, -1 (mod 6n)` and
/// lozenges for `m ≡ 0 (mod 6n)`, with heights `h ≡ m, m+1 (mod 6n)`.
pub fn verify_idao_figures(n: u64, p: FamilyParams, lambda_max: usize, offsets: &Offsets) -> Result<VerifyReport> {
    require_odd(n)?;
    let sigma = p.a0 + p.a1 + p.a2;
    let red = |x: i64| x.rem_euclid(n as i64) as u64;
    require_unit(red(p.d), n, "d")?;
    require_unit(red(p.d + 3 * sigma), n, "d + 3Σ")?;
    require_unit(red(2 * p.d + 3 * sigma), n, "2d + 3Σ")?;
    let spec = idao_family(Ring::modular(n)?, &p.a0.into(), &p.a1.into(), &p.a2.into(), &p.d.into())?;
    let period = 6 * n;
    let mut report = VerifyReport::new(
        "figures of orders m = 0, -1 (mod 6n) in an interlaced doubly arithmetic orbit are balanced",
        json!({ "modulus": n, "a0": p.a0, "a1": p.a1, "a2": p.a2, "d": p.d, "lambda": lambda_max,
                "rows": offsets.rows, "cols": offsets.cols }),
    );
    let jobs: Vec<(usize, usize, i64)> = (1..=lambda_max)
        .flat_map(|l| offsets.rows.iter().flat_map(move |&r| offsets.cols.iter().map(move |&c| (l, r, c))))
        .collect();
    let parts: Vec<VerifyReport> = jobs
        .par_iter()
        .map(|&(l, r, c)| {
            let mut rep = VerifyReport::new("", json!({}));
            let big_m = l * period as usize;
            for m in [big_m, big_m - 1] {
                let ctx = format!("row {r} column {c}:");
                let mc = m as i64;
                let rows = triangle_rows(&window(&spec, r, c, c + mc - 1), n, m);
                let tri = trapezoid_table(&rows, m, n);
                rep.expect_balanced("steinhaus triangle", || format!("{ctx} triangle of order {m}"), &tri);
                for h in heights(m, &[mc, mc + 1], period) {
                    rep.expect_balanced(
                        "steinhaus trapezoid",
                        || format!("{ctx} trapezoid of order {m} and height {h}"),
                        &trapezoid_table(&rows, h, n),
                    );
                }
                let base = window(&spec, r, c, c + 2 * mc - 2);
                pascal_figures(&mut rep, &base, n, m, &[mc, mc + 1], period, &ctx);
                if m == big_m {
                    let s = crate::sequence::FiniteSeq::from_residues(n, &base).expect("modulus");
                    let f = Figure::lozenge(&s).expect("odd length");
                    rep.expect_figure("lozenge", &f, || format!("{ctx} lozenge of order {}", 2 * m - 1));
                }
            }
            rep
        })
        .collect();
    for p in parts {
        report.absorb(p);
    }
    Ok(report)
}

/// The three balanced figures of the worked example in `Z/3Z`: the orbit of
/// `IAP((0,1,2),(1,1,1))`, with the triangle over row 4, columns `0..=17`,
/// the lozenge over row 8, columns `5..=39` and the Pascal triangle over
/// row 27, columns `-20..=14`.
pub fn worked_example_figures() -> Result<Vec<Figure>> {
    let spec = IapSpec::from_i64(Ring::modular(3)?, &[0, 1, 2], &[1, 1, 1])?;
    Ok(vec![
        Figure::steinhaus_triangle(&spec.orbit_window(4, 0, 17)?)?,
        Figure::pascal_triangle(&spec.orbit_window(27, -20, 14)?)?,
        Figure::lozenge(&spec.orbit_window(8, 5, 39)?)?,
    ])
}

// ---------------------------------------------------------------------------
// Antisymmetric and universal sequences

/// Balanced figures in the orbit of `IAP((a,-d,d-a),(d,-2d,d))` modulo odd
/// `n`, for `λ = 1..=lambda_max`.
pub fn verify_antisymmetric_figures(n: u64, a: u64, d: u64, lambda_max: usize) -> Result<VerifyReport> {
    require_odd(n)?;
    require_unit(d % n, n, "d")?;
    let spec = antisymmetric_family(n, a, d)?;
    let p = 3 * n;
    let mut report = VerifyReport::new(
        "figures of orders 3λn and 3λn - 1 generated by an antisymmetric window are balanced",
        json!({ "modulus": n, "a": a, "d": d, "lambda": lambda_max }),
    );
    for l in 1..=lambda_max {
        let big = l * p as usize;
        let bl = big as i64;
        let rows = triangle_rows(&window(&spec, 0, 0, bl - 1), n, big);
        report.expect_balanced("triangle S[0,3λn-1]", || format!("∇S[0,{}]", bl - 1), &trapezoid_table(&rows, big, n));
        for h in heights(big, &[0, 1], p) {
            report.expect_balanced(
                "trapezoid ST(S[0,3λn-1],h)",
                || format!("ST(S[0,{}],{h})", bl - 1),
                &trapezoid_table(&rows, h, n),
            );
        }
        let rows = triangle_rows(&window(&spec, 1, 0, bl - 2), n, big - 1);
        report.expect_balanced(
            "triangle ∂S[0,3λn-2]",
            || format!("∇∂S[0,{}]", bl - 2),
            &trapezoid_table(&rows, big - 1, n),
        );
        for h in heights(big - 1, &[-1, 0], p) {
            report.expect_balanced(
                "trapezoid ST(∂S[0,3λn-2],h)",
                || format!("ST(∂S[0,{}],{h})", bl - 2),
                &trapezoid_table(&rows, h, n),
            );
        }
    }
    for m in 1..=lambda_max * p as usize {
        let mc = m as i64;
        let zero = congruent(mc, 0, p);
        if !(zero || congruent(mc, -1, p)) {
            continue;
        }
        let base = window(&spec, 1, -mc, mc - 2);
        pascal_figures(&mut report, &base, n, m, &[mc, mc + 1], p, &format!("∂S[{},{}]:", -mc, mc - 2));
        if zero {
            let s = crate::sequence::FiniteSeq::from_residues(n, &base)?;
            let f = Figure::lozenge(&s)?;
            report.expect_figure("lozenge", &f, || format!("◊∂S[{},{}]", -mc, mc - 2));
        }
    }
    Ok(report)
}

/// Which height classes to use for Pascal trapezoids in the universal orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PascalHeights {
    /// `h ≡ m+1 (mod n)` or `h ≡ m (mod 3n)`: the complement of a balanced
    /// Pascal triangle.
    Complement,
    /// `h ≡ m (mod n)` or `h ≡ m+1 (mod 3n)`.
    Swapped,
}

/// Balanced figures in the orbit of the universal sequence `d·US` modulo
/// odd `n`, for all orders up to `3·lambda_max·n`.
pub fn verify_universal_figures(n: u64, d: u64, lambda_max: usize, pascal: PascalHeights) -> Result<VerifyReport> {
    require_odd(n)?;
    require_unit(d % n, n, "d")?;
    let spec = universal_sequence(n, d)?;
    let p3 = 3 * n;
    let top = lambda_max * p3 as usize;
    let mut report = VerifyReport::new(
        "figures in the orbit of the universal sequence are balanced",
        json!({ "modulus": n, "d": d, "lambda": lambda_max, "pascalHeights": pascal }),
    );
    for m in 1..=top {
        let mc = m as i64;
        if congruent(mc, 0, n) {
            let rows = triangle_rows(&window(&spec, 0, mc, 2 * mc - 1), n, m);
            report.expect_balanced("triangle S[m,2m-1]", || format!("∇S[{m},{}]", 2 * m - 1), &trapezoid_table(&rows, m, n));
            for h in (1..=m).filter(|&h| congruent(h as i64, 0, n) || congruent(h as i64, mc + 1, p3)) {
                report.expect_balanced(
                    "trapezoid ST(S[m,2m-1],h)",
                    || format!("ST(S[{m},{}],{h})", 2 * m - 1),
                    &trapezoid_table(&rows, h, n),
                );
            }
        }
        if congruent(mc, -1, p3) {
            let rows = triangle_rows(&window(&spec, 1, 0, mc - 1), n, m);
            report.expect_balanced("triangle ∂S[0,m-1]", || format!("∇∂S[0,{}]", m - 1), &trapezoid_table(&rows, m, n));
            for h in (1..=m).filter(|&h| congruent(h as i64, -1, n) || congruent(h as i64, 0, p3)) {
                report.expect_balanced(
                    "trapezoid ST(∂S[0,m-1],h)",
                    || format!("ST(∂S[0,{}],{h})", m - 1),
                    &trapezoid_table(&rows, h, n),
                );
            }
        }
        let pascal_order = congruent(mc, -1, n) || congruent(mc, 0, p3);
        let lozenge_order = congruent(mc, 0, n);
        if pascal_order || lozenge_order {
            let base = window(&spec, 1, -mc, mc - 2);
            if pascal_order {
                let (classes, moduli) = match pascal {
                    PascalHeights::Complement => ([mc + 1, mc], [n, p3]),
                    PascalHeights::Swapped => ([mc, mc + 1], [n, p3]),
                };
                let rows = triangle_rows(&base, n, m);
                let tri: Vec<Vec<u64>> = rows.iter().enumerate().map(|(i, r)| r[m - 1 - i..m].to_vec()).collect();
                let t = MultiplicityTable::from_values(n, tri.iter().flatten().copied())?;
                report.expect_balanced("pascal triangle ∂S[-m,m-2]", || format!("Δ∂S[{},{}]", -mc, mc - 2), &t);
                for h in (1..=m).filter(|&h| {
                    congruent(h as i64, classes[0], moduli[0]) || congruent(h as i64, classes[1], moduli[1])
                }) {
                    let t = MultiplicityTable::from_values(n, tri[m - h..].iter().flatten().copied())?;
                    report.expect_balanced(
                        "pascal trapezoid PT(∂S[-m,m-2],h)",
                        || format!("PT(∂S[{},{}],{h})", -mc, mc - 2),
                        &t,
                    );
                }
            }
            if lozenge_order {
                let f = Figure::lozenge(&crate::sequence::FiniteSeq::from_residues(n, &base)?)?;
                report.expect_figure("lozenge ∂S[-m,m-2]", &f, || format!("◊∂S[{},{}]", -mc, mc - 2));
            }
        }
    }
    Ok(report)
}

/// `∇S[0,3n-1]` and `Δ∂S[1,6n-3]` are balanced for
/// `S = IAP((a,-d,d-a),(d,-2d,d))`.
pub fn verify_base_triangles(n: u64, a: u64, d: u64) -> Result<VerifyReport> {
    require_odd(n)?;
    require_unit(d % n, n, "d")?;
    let spec = antisymmetric_family(n, a, d)?;
    let l = 3 * n as i64;
    let mut report = VerifyReport::new(
        "the base triangles ∇S[0,3n-1] and Δ∂S[1,6n-3] are balanced",
        json!({ "modulus": n, "a": a, "d": d }),
    );
    let t = Figure::steinhaus_triangle(&spec.window(0, l - 1)?)?;
    report.expect_figure("∇S[0,3n-1]", &t, || format!("∇S[0,{}]", l - 1));
    let p = Figure::pascal_triangle(&spec.orbit_window(1, 1, 2 * l - 3)?)?;
    report.expect_figure("Δ∂S[1,6n-3]", &p, || format!("Δ∂S[1,{}]", 2 * l - 3));
    Ok(report)
}

/// The six elementary triangles of the universal orbit, in the order
/// `∇1, ∇2, ∇3, Δ1, Δ2, Δ3`.
pub fn elementary_triangles(n: u64, d: u64) -> Result<Vec<Figure>> {
    if n < 3 {
        return Err(Error::Precondition("elementary triangles need n >= 3".into()));
    }
    let spec = universal_sequence(n, d)?;
    let n = n as i64;
    let mut out = Vec::with_capacity(6);
    for k in 0..3 {
        out.push(Figure::steinhaus_triangle(&spec.window(k * n, (k + 1) * n - 1)?)?);
    }
    for k in 0..3 {
        out.push(Figure::pascal_triangle(&spec.orbit_window(1, k * n + 1, (k + 2) * n - 3)?)?);
    }
    Ok(out)
}

/// `∇2`, `∇1 ⊎ ∇3`, `Δ3` and `Δ1 ⊎ Δ2` are balanced.
pub fn verify_elementary_triangles(n: u64, d: u64) -> Result<VerifyReport> {
    require_odd(n)?;
    require_unit(d % n, n, "d")?;
    let e = elementary_triangles(n, d)?;
    let mut report = VerifyReport::new(
        "the elementary triangles ∇2, ∇1+∇3, Δ3 and Δ1+Δ2 of the universal orbit are balanced",
        json!({ "modulus": n, "d": d }),
    );
    let union = |i: usize, j: usize| {
        let mut t = e[i].multiplicity();
        t.merge(&e[j].multiplicity()).expect("same modulus");
        t
    };
    report.expect_balanced("∇2", || "∇S[n,2n-1]".into(), &e[1].multiplicity());
    report.expect_balanced("∇1+∇3", || "∇S[0,n-1] + ∇S[2n,3n-1]".into(), &union(0, 2));
    report.expect_balanced("Δ3", || "Δ∂S[2n+1,4n-3]".into(), &e[5].multiplicity());
    report.expect_balanced("Δ1+Δ2", || "Δ∂S[1,2n-3] + Δ∂S[n+1,3n-3]".into(), &union(3, 4));
    Ok(report)
}

/// Compares the closed form of the universal orbit with direct iteration
/// on the box `0 <= i <= rows`, `0 <= j <= cols`. Returns the first
/// mismatching cell.
pub fn check_universal_closed_form(n: u64, d: u64, rows: usize, cols: usize) -> Result<Option<(usize, usize)>> {
    let spec = universal_sequence(n, d)?;
    let mut row = spec.window_residues(0, (cols + rows) as i64)?;
    for i in 0..=rows {
        for (j, &v) in row.iter().enumerate().take(cols + 1) {
            if universal_orbit_entry(n, d, i as u64, j as u64)?.value() != v {
                return Ok(Some((i, j)));
            }
        }
        row = crate::figure::derive_values(&row, n);
    }
    Ok(None)
}

/// Diagonal zeros and anti-diagonal symmetry of `∇S[0,3n-1]` for the
/// universal sequence: `a_{i,i} = 0`, `AD_{2j}` antisymmetric and
/// `AD_{2j+1}` symmetric.
pub fn check_antidiagonals(n: u64, d: u64) -> Result<bool> {
    let spec = universal_sequence(n, d)?;
    let m = 3 * n as usize;
    let t = Figure::steinhaus_triangle(&spec.window(0, m as i64 - 1)?)?;
    let rows = t.rows();
    let zeros = (0..=(m - 1) / 2).all(|i| rows[i][i] == 0);
    let sym = (0..m).all(|k| {
        let ad: Vec<u64> = (0..=k).map(|i| rows[i][k - i]).collect();
        let s = crate::sequence::FiniteSeq::from_residues(n, &ad).expect("modulus");
        if k % 2 == 0 {
            s.is_antisymmetric()
        } else {
            s.is_symmetric()
        }
    });
    Ok(zeros && sym)
}

// ---------------------------------------------------------------------------
// Admissible orders and proportions

/// Figure kinds whose cardinality depends on one order parameter or on an
/// order and a height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OrderKind {
    /// `m(m+1)/2` cells: Steinhaus triangles, DATs and Pascal triangles of
    /// order `2m-1`.
    Triangle,
    /// `m²` cells: lozenges of order `2m-1`.
    Lozenge,
    /// `h(2m-h+1)/2` cells: Steinhaus and Pascal trapezoids.
    Trapezoid,
}

/// Residue classes of admissible orders modulo `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdmissibleOrders {
    pub kind: OrderKind,
    pub modulus: u64,
    pub period: u64,
    /// Classes of `m` (empty for trapezoids).
    pub classes: Vec<u64>,
    /// Classes of `(m, h)` for trapezoids.
    pub pairs: Vec<(u64, u64)>,
}

/// Orders whose figure cardinality is divisible by `n`. The period is `n`
/// for odd `n` and for lozenges, `2n` otherwise.
pub fn admissible_orders(n: u64, kind: OrderKind) -> Result<AdmissibleOrders> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let period = if n % 2 == 1 || kind == OrderKind::Lozenge { n } else { 2 * n };
    let nn = n as u128;
    let (classes, pairs) = match kind {
        OrderKind::Triangle => {
            ((0..period).filter(|&m| (m as u128 * (m as u128 + 1) / 2) % nn == 0).collect(), Vec::new())
        }
        OrderKind::Lozenge => ((0..period).filter(|&m| (m as u128 * m as u128) % nn == 0).collect(), Vec::new()),
        OrderKind::Trapezoid => {
            // Use representatives large enough that 2m - h + 1 stays positive.
            let pairs = (0..period)
                .flat_map(|m| (0..period).map(move |h| (m, h)))
                .filter(|&(m, h)| {
                    let (mm, hh) = ((m + period) as u128, h as u128);
                    (hh * (2 * mm - hh + 1) / 2) % nn == 0
                })
                .collect();
            (Vec::new(), pairs)
        }
    };
    Ok(AdmissibleOrders { kind, modulus: n, period, classes, pairs })
}

/// Number of distinct prime factors.
pub fn omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

/// Share of admissible orders covered by the universal-sequence families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProportionReport {
    pub modulus: u64,
    pub omega: u32,
    pub period: u64,
    pub triangle_admissible: u64,
    pub triangle_covered: u64,
    pub pascal_admissible: u64,
    pub pascal_covered: u64,
    pub lozenge_admissible: u64,
    pub lozenge_covered: u64,
    /// `2 / (3·2^(ω-1))` as `(numerator, denominator)`; absent for `n = 1`.
    pub bound: Option<(u64, u64)>,
}

impl ProportionReport {
    fn ratio(a: u64, b: u64) -> (u64, u64) {
        let g = a.gcd(&b).max(1);
        (a / g, b / g)
    }

    pub fn triangle_fraction(&self) -> (u64, u64) {
        Self::ratio(self.triangle_covered, self.triangle_admissible)
    }

    pub fn pascal_fraction(&self) -> (u64, u64) {
        Self::ratio(self.pascal_covered, self.pascal_admissible)
    }

    pub fn lozenge_fraction(&self) -> (u64, u64) {
        Self::ratio(self.lozenge_covered, self.lozenge_admissible)
    }

    /// `true` when the triangle and Pascal fractions reach the bound.
    pub fn meets_bound(&self) -> bool {
        let Some((bn, bd)) = self.bound else {
            return self.triangle_covered == self.triangle_admissible;
        };
        let ge = |(a, b): (u64, u64)| a as u128 * bd as u128 >= bn as u128 * b as u128;
        ge(self.triangle_fraction()) && ge(self.pascal_fraction())
    }
}

/// Counts classes modulo `3n` of admissible orders and of orders covered
/// by the universal-sequence families: `m ≡ 0 (mod n)` or `m ≡ -1 (mod 3n)`
/// for triangles, `m ≡ -1 (mod n)` or `m ≡ 0 (mod 3n)` for Pascal
/// triangles, `m ≡ 0 (mod n)` for lozenges.
pub fn proportion_report(n: u64) -> Result<ProportionReport> {
    require_odd(n)?;
    let period = 3 * n;
    let tri = |m: u64| (m * (m + 1) / 2) % n == 0;
    let cov_t = |m: u64| m % n == 0 || (m + 1) % period == 0;
    let cov_p = |m: u64| (m + 1) % n == 0 || m % period == 0;
    let count = |f: &dyn Fn(u64) -> bool| (0..period).filter(|&m| f(m)).count() as u64;
    let w = omega(n);
    Ok(ProportionReport {
        modulus: n,
        omega: w,
        period,
        triangle_admissible: count(&tri),
        triangle_covered: count(&|m| tri(m) && cov_t(m)),
        pascal_admissible: count(&tri),
        pascal_covered: count(&|m| tri(m) && cov_p(m)),
        lozenge_admissible: count(&|m| (m * m) % n == 0),
        lozenge_covered: count(&|m| m % n == 0),
        bound: (w > 0).then(|| ProportionReport::ratio(2, 3 * (1 << (w - 1)))),
    })
}

/// Antisymmetry of `IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ))[0, len-1]` modulo `n`.
pub fn family_window_antisymmetric(n: u64, p: FamilyParams, len: usize) -> Result<bool> {
    let spec = idao_family(
        Ring::modular(n)?,
        &BigInt::from(p.a0),
        &BigInt::from(p.a1),
        &BigInt::from(p.a2),
        &BigInt::from(p.d),
    )?;
    if len == 0 {
        return Ok(true);
    }
    Ok(spec.window(0, len as i64 - 1)?.is_antisymmetric())
}

/// Helper for callers that want every figure kind's cardinality.
pub fn cardinality(kind: FigureKind, order: usize, height: Option<usize>) -> usize {
    let m = order;
    match kind {
        FigureKind::SteinhausTriangle | FigureKind::Dat => m * (m + 1) / 2,
        FigureKind::SteinhausTrapezoid => {
            let h = height.unwrap_or(m);
            h * (2 * m + 1 - h) / 2
        }
        FigureKind::PascalTriangle => {
            let p = (m + 1) / 2;
            p * (p + 1) / 2
        }
        FigureKind::PascalTrapezoid => {
            let p = (m + 1) / 2;
            let h = height.unwrap_or(p);
            h * (2 * p + 1 - h) / 2
        }
        FigureKind::Lozenge => {
            let p = (m + 1) / 2;
            p * p
        }
    }
}
