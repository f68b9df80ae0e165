//! Exact integer matrices, the circulant and Toeplitz matrices of iterated
//! derivation, the Wendt matrix and interlaced doubly arithmetic orbits.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};
use crate::sequence::{idao_family, IapSpec, Ring};

/// A dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// The circulant whose first row is `first`; entry `(r, s)` is
    /// `first[(s - r) mod k]`.
    pub fn circulant(first: &[BigInt]) -> Self {
        let k = first.len();
        let mut m = Self::zeros(k, k);
        for r in 0..k {
            for s in 0..k {
                m.set(r, s, first[(s + k - r) % k].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(t, c);
                    if !b.is_zero() {
                        m.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "row vector length");
        (0..self.cols)
            .map(|c| (0..self.rows).filter(|&r| !v[r].is_zero()).map(|r| &v[r] * self.get(r, c)).sum())
            .collect()
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "column vector length");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::InvalidArgument("incompatible blocks".into()));
        }
        let (rows, cols) = (a.rows + c.rows, a.cols + b.cols);
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for col in 0..cols {
                let v = match (r < a.rows, col < a.cols) {
                    (true, true) => a.get(r, col),
                    (true, false) => b.get(r, col - a.cols),
                    (false, true) => c.get(r - a.rows, col),
                    (false, false) => d.get(r - a.rows, col - a.cols),
                };
                m.set(r, col, v.clone());
            }
        }
        Ok(m)
    }

    /// Fraction-free Gaussian elimination. Returns the rank and, for a
    /// square matrix, the determinant.
    fn bareiss(&self) -> (usize, BigInt) {
        let mut a = self.entries.clone();
        let (n, m) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| !a[r * m + col].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m {
                    a.swap(p * m + c, row * m + c);
                }
                sign = -sign;
            }
            let pivot = a[row * m + col].clone();
            for r in row + 1..n {
                let factor = a[r * m + col].clone();
                for c in col..m {
                    let v = (&pivot * &a[r * m + c] - &factor * &a[row * m + c]) / &prev;
                    a[r * m + c] = v;
                }
            }
            prev = pivot;
            row += 1;
            rank += 1;
        }
        let det = if n == m && rank == n {
            let d = if n == 0 { BigInt::one() } else { a[(n - 1) * m + (n - 1)].clone() };
            if sign < 0 {
                -d
            } else {
                d
            }
        } else {
            BigInt::zero()
        };
        (rank, det)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        Ok(self.bareiss().1)
    }

    /// Basis of the right kernel `{x : Mx = 0}` as primitive integer
    /// vectors, each with its first nonzero entry positive.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<BigRational> = self.entries.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| !a[r * m + col].is_zero()) else {
                continue;
            };
            for c in 0..m {
                a.swap(p * m + c, row * m + c);
            }
            let inv = a[row * m + col].recip();
            for c in 0..m {
                a[row * m + c] = &a[row * m + c] * &inv;
            }
            for r in 0..n {
                if r == row || a[r * m + col].is_zero() {
                    continue;
                }
                let factor = a[r * m + col].clone();
                for c in 0..m {
                    let v = &a[r * m + c] - &factor * &a[row * m + c];
                    a[r * m + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); m];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r * m + f].clone();
                }
                primitive(&v)
            })
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Clears denominators, divides out the content and fixes the sign.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    ints
}

pub fn exact_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn exact_kernel(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    m.kernel()
}

/// `C_i`: the `k x k` circulant with `(r, s)` entry `Σ_{q ≡ r-s (mod k)} C(i, q)`.
pub fn circulant_c(i: usize, k: usize) -> ExactMatrix {
    assert!(k > 0, "interlacing width must be positive");
    let row = binomial::big_row(i);
    let mut first = vec![BigInt::zero(); k];
    for (q, c) in row.iter().enumerate() {
        // Entry (0, t) collects q ≡ -t.
        first[(k - q % k) % k] += c;
    }
    ExactMatrix::circulant(&first)
}

/// `T_i`: the `k x k` Toeplitz matrix with `(r, s)` entry
/// `Σ_{l >= 0} l·C(i, r - s + lk)`.
pub fn toeplitz_t(i: usize, k: usize) -> ExactMatrix {
    assert!(k > 0, "interlacing width must be positive");
    let row = binomial::big_row(i);
    let mut m = ExactMatrix::zeros(k, k);
    for r in 0..k {
        for s in 0..k {
            let mut acc = BigInt::zero();
            let mut l = 1i64;
            loop {
                let q = r as i64 - s as i64 + l * k as i64;
                if q > i as i64 {
                    break;
                }
                if q >= 0 {
                    acc += &row[q as usize] * l;
                }
                l += 1;
            }
            m.set(r, s, acc);
        }
    }
    m
}

/// The Wendt matrix `Circ(C(k,0), ..., C(k,k-1)) = C_k - I`.
pub fn wendt(k: usize) -> ExactMatrix {
    let row = binomial::big_row(k);
    ExactMatrix::circulant(&row[..k])
}

/// The block matrix `[[W², W·Tᵀ], [0, W]]` acting on `(Aᵀ; Dᵀ)`.
pub fn idao_block_system(k: usize) -> ExactMatrix {
    let w = wendt(k);
    let w2 = w.mul(&w).expect("square");
    let wt = w.mul(&toeplitz_t(k, k).transpose()).expect("square");
    ExactMatrix::block(&w2, &wt, &ExactMatrix::zeros(k, k), &w).expect("square blocks")
}

/// The row conditions `A·W² + D·T_k·W = 0` and `D·W = 0`, written as a
/// matrix acting on the column vector `(Aᵀ; Dᵀ)`.
pub fn idao_row_conditions(k: usize) -> ExactMatrix {
    let w = wendt(k);
    let w2 = w.mul(&w).expect("square");
    let tw = toeplitz_t(k, k).mul(&w).expect("square");
    ExactMatrix::block(&w2.transpose(), &tw.transpose(), &ExactMatrix::zeros(k, k), &w.transpose())
        .expect("square blocks")
}

/// An `(A, D)` pair in the kernel of the block system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IapVector {
    pub firsts: Vec<BigInt>,
    pub diffs: Vec<BigInt>,
}

impl IapVector {
    pub fn to_spec(&self) -> IapSpec {
        IapSpec::new(Ring::Integers, self.firsts.clone(), self.diffs.clone()).expect("matching lengths")
    }
}

/// Kernel basis of the block system for width `k`.
pub fn idao_system_solve(k: usize) -> Vec<IapVector> {
    idao_block_system(k)
        .kernel()
        .into_iter()
        .map(|v| {
            let diffs = v[k..].to_vec();
            let mut firsts = v;
            firsts.truncate(k);
            IapVector { firsts, diffs }
        })
        .collect()
}

/// One doubly arithmetic residue class of an orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassEntry {
    pub row: usize,
    pub col: usize,
    pub base_value: BigInt,
    pub row_step: BigInt,
    pub col_step: BigInt,
}

/// The class table of an orbit found doubly arithmetic on a finite box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdaoWitness {
    pub k1: usize,
    pub k2: usize,
    pub depth: usize,
    pub width: usize,
    pub class_table: Vec<ClassEntry>,
}

/// A cell that breaks the doubly arithmetic relation of its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub row: usize,
    pub col: i64,
    pub expected: BigInt,
    pub actual: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum IdaoVerdict {
    Witness(IdaoWitness),
    Refuted(Refutation),
}

impl IdaoVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, IdaoVerdict::Witness(_))
    }
}

/// Checks that the orbit of `spec` is `(k1, k2)`-interlaced doubly
/// arithmetic on rows `0 <= i < depth·k1` and columns `|j| < width·k2`.
///
/// Orbit rows are produced by pointwise derivation of one wide window.
pub fn idao_verify(spec: &IapSpec, k1: usize, k2: usize, depth: usize, width: usize) -> Result<IdaoVerdict> {
    if depth < 2 || width < 2 {
        return Err(Error::InvalidArgument("depth and width must be at least 2".into()));
    }
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidArgument("periods must be positive".into()));
    }
    let ring = spec.ring();
    let rows = depth * k1;
    let span = (width * k2) as i64 - 1;
    let lo = -span;
    let mut row = spec.window(lo, span + rows as i64)?;
    let mut orbit = Vec::with_capacity(rows);
    for _ in 0..rows {
        let next = row.derive()?;
        orbit.push(row);
        row = next;
    }
    let cell = |i: usize, j: i64| orbit[i].terms()[(j - lo) as usize].clone();

    let mut class_table = Vec::with_capacity(k1 * k2);
    for i0 in 0..k1 {
        for j0 in 0..k2 {
            let base = cell(i0, j0 as i64);
            let row_step = ring.reduce(cell(i0 + k1, j0 as i64) - &base);
            let col_step = ring.reduce(cell(i0, (j0 + k2) as i64) - &base);
            for i in 0..depth {
                let r = i0 + i * k1;
                let jmin = -((j0 as i64 - lo).div_euclid(k2 as i64));
                let jmax = (span - j0 as i64).div_euclid(k2 as i64);
                for j in jmin..=jmax {
                    let c = j0 as i64 + j * k2 as i64;
                    let expected = ring.reduce(&base + &row_step * i + &col_step * j);
                    let actual = cell(r, c);
                    if expected != actual {
                        return Ok(IdaoVerdict::Refuted(Refutation { row: r, col: c, expected, actual }));
                    }
                }
            }
            class_table.push(ClassEntry { row: i0, col: j0, base_value: base, row_step, col_step });
        }
    }
    Ok(IdaoVerdict::Witness(IdaoWitness { k1, k2, depth, width, class_table }))
}

/// Parameters `(a0, a1, a2, d)` of the three-term family
/// `IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ))`, when `spec` belongs to it.
pub fn family_parameters(spec: &IapSpec) -> Option<[BigInt; 4]> {
    let ring = spec.ring();
    let k = spec.k();
    if k % 3 != 0 {
        return None;
    }
    let a: Vec<BigInt> = (0..3).map(|j| spec.term(j)).collect();
    let d = ring.reduce(spec.term(3) - &a[0]);
    let candidate = idao_family(ring, &a[0], &a[1], &a[2], &d).ok()?;
    let same = (-(2 * k as i64)..(2 * k as i64)).all(|j| candidate.term(j) == spec.term(j))
        && candidate.widened(k / 3).ok()? == *spec;
    same.then(|| {
        let [a0, a1, a2]: [BigInt; 3] = a.try_into().ok()?;
        Some([a0, a1, a2, d])
    })?
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn circulant_and_toeplitz_small_cases() {
        let c1 = circulant_c(1, 4);
        assert_eq!(c1.row(0), ints(&[1, 0, 0, 1]).as_slice());
        assert_eq!(circulant_c(0, 5), ExactMatrix::identity(5));
        assert!(toeplitz_t(0, 4).is_zero());
        let t1 = toeplitz_t(1, 4);
        for r in 0..4 {
            for s in 0..4 {
                let want = if (r, s) == (0, 3) { 1 } else { 0 };
                assert_eq!(*t1.get(r, s), BigInt::from(want));
            }
        }
        assert_eq!(circulant_c(1, 1).row(0), ints(&[2]).as_slice());
        assert_eq!(toeplitz_t(1, 1).row(0), ints(&[1]).as_slice());
    }

    #[test]
    fn wendt_small_cases() {
        assert_eq!(wendt(1), ExactMatrix::from_rows(&[vec![1]]).unwrap());
        assert_eq!(wendt(2), ExactMatrix::from_rows(&[vec![1, 2], vec![2, 1]]).unwrap());
        assert_eq!(wendt(6), circulant_c(6, 6).sub(&ExactMatrix::identity(6)).unwrap());
        assert_eq!(wendt(6).determinant().unwrap(), BigInt::zero());
        assert_eq!(wendt(2).determinant().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(wendt(6).rank(), 4);
        assert_eq!(wendt(5).rank(), 5);
        let z = ExactMatrix::zeros(3, 3);
        assert_eq!(z.kernel().len(), 3);
        assert_eq!(z.rank(), 0);
        let m = ExactMatrix::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.right_mul(v).iter().all(Zero::is_zero));
        }
        let m = ExactMatrix::from_rows(&[vec![2, 3]]).unwrap();
        assert_eq!(m.kernel(), vec![ints(&[3, -2])]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = ExactMatrix::from_rows(&[vec![2, -1, 0], vec![1, 3, 2], vec![0, 5, -4]]).unwrap();
        // 2(3·-4 - 2·5) + 1(1·-4 - 0) = -44 - 4
        assert_eq!(m.determinant().unwrap(), BigInt::from(-48));
        let m = ExactMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn solve_small_widths() {
        assert!(idao_system_solve(3).is_empty());
        assert_eq!(idao_system_solve(6).len(), 4);
    }

    #[test]
    fn verify_examples() {
        let us = crate::sequence::universal_integers();
        assert!(idao_verify(&us, 6, 3, 4, 4).unwrap().is_witness());
        let zero = IapSpec::arithmetic(Ring::Integers, 0, 0).unwrap();
        match idao_verify(&zero, 1, 1, 4, 4).unwrap() {
            IdaoVerdict::Witness(w) => assert!(w.class_table.iter().all(|c| c.base_value.is_zero())),
            other => panic!("{other:?}"),
        }
        let ap = IapSpec::arithmetic(Ring::Integers, 1, 1).unwrap();
        assert!(!idao_verify(&ap, 1, 1, 4, 4).unwrap().is_witness());
        assert!(idao_verify(&ap, 1, 1, 1, 4).is_err());
    }

    #[test]
    fn family_recognition() {
        let us = crate::sequence::universal_integers();
        let p = family_parameters(&us.widened(2).unwrap()).unwrap();
        assert_eq!(p, [BigInt::from(0), BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
        let ap = IapSpec::arithmetic(Ring::Integers, 1, 1).unwrap().widened(3).unwrap();
        assert!(family_parameters(&ap).is_none());
    }
}
