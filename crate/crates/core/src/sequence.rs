//! Finite sequences, interlaced arithmetic progressions and the universal
//! sequence.
//!
//! Doubly infinite sequences only ever appear as [`IapSpec`] closed forms;
//! finite pieces of an orbit are read through [`IapSpec::window`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};
use crate::idao::{circulant_c, toeplitz_t};
use crate::residue::Residue;

/// The ring the terms of a sequence live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Ring {
    Integers,
    Modular(u64),
}

impl Ring {
    pub fn modular(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Ring::Modular(n))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::Modular(n) => Some(n),
        }
    }

    pub fn reduce(self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::Modular(n) => x.mod_floor(&BigInt::from(n)),
        }
    }

    fn reduce_i64(self, x: i64) -> BigInt {
        self.reduce(BigInt::from(x))
    }
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("reduced residue fits in u64")
}

/// A finite sequence `(a_0, ..., a_{m-1})` over a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSeq {
    ring: Ring,
    terms: Vec<BigInt>,
}

impl FiniteSeq {
    /// Terms are reduced into the ring on construction.
    pub fn new(ring: Ring, terms: Vec<BigInt>) -> Result<Self> {
        if ring == Ring::Modular(0) {
            return Err(Error::ZeroModulus);
        }
        let terms = terms.into_iter().map(|t| ring.reduce(t)).collect();
        Ok(Self { ring, terms })
    }

    pub fn modular(n: u64, terms: &[i64]) -> Result<Self> {
        let ring = Ring::modular(n)?;
        Ok(Self { ring, terms: terms.iter().map(|&t| ring.reduce_i64(t)).collect() })
    }

    pub fn integers(terms: &[i64]) -> Self {
        Self { ring: Ring::Integers, terms: terms.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn from_residues(n: u64, values: &[u64]) -> Result<Self> {
        let ring = Ring::modular(n)?;
        Ok(Self { ring, terms: values.iter().map(|&v| BigInt::from(v % n)).collect() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonical representatives, for a modular sequence.
    pub fn residue_values(&self) -> Result<Vec<u64>> {
        match self.ring {
            Ring::Integers => Err(Error::NotModular),
            Ring::Modular(_) => Ok(self.terms.iter().map(to_u64).collect()),
        }
    }

    pub fn residues(&self) -> Result<Vec<Residue>> {
        let n = self.ring.modulus().ok_or(Error::NotModular)?;
        self.residue_values()?.into_iter().map(|v| Residue::new(v, n)).collect()
    }

    /// Reduces an integer sequence modulo `n`.
    pub fn project(&self, n: u64) -> Result<Self> {
        Self::new(Ring::modular(n)?, self.terms.clone())
    }

    pub fn negated(&self) -> Self {
        let terms = self.terms.iter().map(|t| self.ring.reduce(-t)).collect();
        Self { ring: self.ring, terms }
    }

    pub fn reversed(&self) -> Self {
        Self { ring: self.ring, terms: self.terms.iter().rev().cloned().collect() }
    }

    /// The derived sequence `(a_j + a_{j+1})`, one term shorter.
    pub fn derive(&self) -> Result<Self> {
        if self.terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        let terms = self.terms.windows(2).map(|w| self.ring.reduce(&w[0] + &w[1])).collect();
        Ok(Self { ring: self.ring, terms })
    }

    /// `i`-fold derivation; requires `i <= len`.
    pub fn derive_n(&self, i: usize) -> Result<Self> {
        let mut s = self.clone();
        for _ in 0..i {
            s = s.derive()?;
        }
        Ok(s)
    }

    /// `(sum_l alpha_l a_{j+l})`, of length `m - |alpha| + 1`.
    pub fn derive_alpha(&self, weights: &Weights) -> Result<Self> {
        let k = weights.len();
        if self.terms.len() < k {
            return Err(Error::TooShort { len: self.terms.len(), weights: k });
        }
        let terms = self
            .terms
            .windows(k)
            .map(|w| {
                let s: BigInt = w.iter().zip(weights.alpha()).map(|(a, &c)| a * c).sum();
                self.ring.reduce(s)
            })
            .collect();
        Ok(Self { ring: self.ring, terms })
    }

    /// `a_{m-1-j} = -a_j` for every `j`.
    pub fn is_antisymmetric(&self) -> bool {
        let m = self.terms.len();
        (0..m).all(|j| self.ring.reduce(&self.terms[m - 1 - j] + &self.terms[j]).is_zero())
    }

    /// `a_{m-1-j} = a_j` for every `j`.
    pub fn is_symmetric(&self) -> bool {
        let m = self.terms.len();
        (0..m).all(|j| self.terms[m - 1 - j] == self.terms[j])
    }

    /// Criterion for antisymmetry through the derived sequence: `∂S` is
    /// antisymmetric and the central pair `a_c + a_{m-1-c}` vanishes, with
    /// `c = ⌊(m-1)/2⌋`. For odd `m` the central pair is the middle term twice.
    pub fn antisymmetric_by_derivation(&self) -> bool {
        let m = self.terms.len();
        if m == 0 {
            return true;
        }
        let c = (m - 1) / 2;
        let central = self.ring.reduce(&self.terms[c] + &self.terms[m - 1 - c]);
        central.is_zero() && self.derive().map(|d| d.is_antisymmetric()).unwrap_or(true)
    }
}

/// Weights `(alpha_0, ..., alpha_{k-1})` of a generalized derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    alpha: Vec<i64>,
}

impl Weights {
    pub fn new(alpha: Vec<i64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidArgument("weights must be nonempty".into()));
        }
        Ok(Self { alpha })
    }

    /// The standard rule `(1, 1)`.
    pub fn standard() -> Self {
        Self { alpha: vec![1, 1] }
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A `k`-interlaced arithmetic progression `IAP(A, D)`:
/// `a_{j0 + jk} = a_{j0} + j d_{j0}` for `0 <= j0 < k` and every integer `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IapSpec {
    ring: Ring,
    firsts: Vec<BigInt>,
    diffs: Vec<BigInt>,
}

impl IapSpec {
    pub fn new(ring: Ring, firsts: Vec<BigInt>, diffs: Vec<BigInt>) -> Result<Self> {
        if firsts.len() != diffs.len() || firsts.is_empty() {
            return Err(Error::IapShape { firsts: firsts.len(), diffs: diffs.len() });
        }
        if ring == Ring::Modular(0) {
            return Err(Error::ZeroModulus);
        }
        let firsts = firsts.into_iter().map(|x| ring.reduce(x)).collect();
        let diffs = diffs.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(Self { ring, firsts, diffs })
    }

    pub fn from_i64(ring: Ring, firsts: &[i64], diffs: &[i64]) -> Result<Self> {
        Self::new(
            ring,
            firsts.iter().map(|&x| BigInt::from(x)).collect(),
            diffs.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// The arithmetic progression `AP(a, d)`.
    pub fn arithmetic(ring: Ring, a: i64, d: i64) -> Result<Self> {
        Self::from_i64(ring, &[a], &[d])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn k(&self) -> usize {
        self.firsts.len()
    }

    pub fn firsts(&self) -> &[BigInt] {
        &self.firsts
    }

    pub fn diffs(&self) -> &[BigInt] {
        &self.diffs
    }

    pub fn term(&self, j: i64) -> BigInt {
        let k = self.k() as i64;
        let (q, r) = (j.div_euclid(k), j.rem_euclid(k) as usize);
        self.ring.reduce(&self.firsts[r] + &self.diffs[r] * q)
    }

    /// `S[j0, j1] = (a_{j0}, ..., a_{j1})`; negative indices are allowed.
    pub fn window(&self, j0: i64, j1: i64) -> Result<FiniteSeq> {
        if j0 > j1 {
            return Err(Error::InvalidWindow(j0, j1));
        }
        Ok(FiniteSeq { ring: self.ring, terms: (j0..=j1).map(|j| self.term(j)).collect() })
    }

    /// Residues of `S[j0, j1]` for a modular progression.
    pub fn window_residues(&self, j0: i64, j1: i64) -> Result<Vec<u64>> {
        self.window(j0, j1)?.residue_values()
    }

    pub fn project(&self, n: u64) -> Result<Self> {
        Self::new(Ring::modular(n)?, self.firsts.clone(), self.diffs.clone())
    }

    pub fn negated(&self) -> Self {
        let f = |v: &Vec<BigInt>| v.iter().map(|x| self.ring.reduce(-x)).collect();
        Self { ring: self.ring, firsts: f(&self.firsts), diffs: f(&self.diffs) }
    }

    /// Multiplies every term by `c`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        let f = |v: &Vec<BigInt>| v.iter().map(|x| self.ring.reduce(x * c)).collect();
        Self { ring: self.ring, firsts: f(&self.firsts), diffs: f(&self.diffs) }
    }

    /// The same sequence viewed as a `(k * factor)`-interlaced progression.
    pub fn widened(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidArgument("widening factor must be positive".into()));
        }
        let k = self.k();
        let kk = (k * factor) as i64;
        let firsts = (0..kk).map(|j| self.term(j)).collect();
        let diffs = (0..kk).map(|j| self.ring.reduce(self.term(j + kk) - self.term(j))).collect();
        Ok(Self { ring: self.ring, firsts, diffs })
    }

    /// The derived progression, computed termwise on `(A, D)`.
    pub fn derive(&self) -> Self {
        let k = self.k();
        let mut firsts = Vec::with_capacity(k);
        let mut diffs = Vec::with_capacity(k);
        for j in 0..k {
            if j + 1 < k {
                firsts.push(self.ring.reduce(&self.firsts[j] + &self.firsts[j + 1]));
                diffs.push(self.ring.reduce(&self.diffs[j] + &self.diffs[j + 1]));
            } else {
                firsts.push(self.ring.reduce(&self.firsts[j] + &self.firsts[0] + &self.diffs[0]));
                diffs.push(self.ring.reduce(&self.diffs[j] + &self.diffs[0]));
            }
        }
        Self { ring: self.ring, firsts, diffs }
    }

    /// `∂^i IAP(A, D) = IAP(A·C_i + D·T_i, D·C_i)`.
    pub fn derive_iterated(&self, i: usize) -> Self {
        let k = self.k();
        let c = circulant_c(i, k);
        let t = toeplitz_t(i, k);
        let firsts = c.left_mul(&self.firsts);
        let shift = t.left_mul(&self.diffs);
        let firsts = firsts.into_iter().zip(shift).map(|(a, b)| self.ring.reduce(a + b)).collect();
        let diffs = c.left_mul(&self.diffs).into_iter().map(|x| self.ring.reduce(x)).collect();
        Self { ring: self.ring, firsts, diffs }
    }

    /// Row `row` of the orbit restricted to columns `[j0, j1]`.
    pub fn orbit_window(&self, row: usize, j0: i64, j1: i64) -> Result<FiniteSeq> {
        self.derive_iterated(row).window(j0, j1)
    }
}

/// The universal sequence `IAP((0,-1,1),(1,-2,1))` over the integers.
pub fn universal_integers() -> IapSpec {
    IapSpec::from_i64(Ring::Integers, &[0, -1, 1], &[1, -2, 1]).expect("well-formed")
}

/// `d·π_n(US) = IAP((0,-d,d),(d,-2d,d))` in `Z/nZ`.
///
/// Defined for any `d`; the balance results need `d` invertible, which
/// callers check separately.
pub fn universal_sequence(n: u64, d: u64) -> Result<IapSpec> {
    let d = d as i64;
    IapSpec::from_i64(Ring::modular(n)?, &[0, -d, d], &[d, -2 * d, d])
}

/// `IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ))` with `Σ = a0+a1+a2`.
pub fn idao_family(ring: Ring, a0: &BigInt, a1: &BigInt, a2: &BigInt, d: &BigInt) -> Result<IapSpec> {
    let sigma = a0 + a1 + a2;
    let three_sigma = &sigma * 3;
    IapSpec::new(
        ring,
        vec![a0.clone(), a1.clone(), a2.clone()],
        vec![d.clone(), -(d * BigInt::from(2)) - &three_sigma, d + &three_sigma],
    )
}

/// `IAP((a,-d,d-a),(d,-2d,d))` in `Z/nZ`, the antisymmetric members of the
/// family above.
pub fn antisymmetric_family(n: u64, a: u64, d: u64) -> Result<IapSpec> {
    let (a, d) = (a as i64, d as i64);
    IapSpec::from_i64(Ring::modular(n)?, &[a, -d, d - a], &[d, -2 * d, d])
}

/// Closed form of the universal orbit over the integers, valid for `i, j >= 0`:
/// `a_{i,j} = (-1)^i Σ_{k>0} C(k, j+2i-k) (-1)^k (k-i)`.
pub fn universal_orbit_entry_int(i: u64, j: u64) -> BigInt {
    let top = (j + 2 * i) as i64;
    let lo = ((top + 1) / 2).max(1);
    let mut acc = BigInt::zero();
    for k in lo..=top {
        let term = binomial::big(k, top - k) * (k - i as i64);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if i % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// The universal orbit entry `a_{i,j}` of `d·π_n(US)`, for `i, j >= 0`.
pub fn universal_orbit_entry(n: u64, d: u64, i: u64, j: u64) -> Result<Residue> {
    let v = universal_orbit_entry_int(i, j) * BigInt::from(d);
    let r = Ring::modular(n)?.reduce(v);
    Residue::new(to_u64(&r), n)
}

/// Entry `a_{i,j}` of the `(6,3)`-interlaced doubly arithmetic orbit of
/// `IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ))`, from its eighteen class formulas.
pub fn idao_orbit_entry(ring: Ring, a0: &BigInt, a1: &BigInt, a2: &BigInt, d: &BigInt, i: u64, j: i64) -> BigInt {
    let s = a0 + a1 + a2;
    let p = BigInt::from(i / 6);
    let q = BigInt::from(j.div_euclid(3));
    // Common differences shared by the classes.
    let e1 = d + &s * 3; // d + 3Σ
    let e2 = d * 2 + &s * 3; // 2d + 3Σ
    let two_p = &p * 2;
    let v = match (i % 6, j.rem_euclid(3)) {
        (0, 0) => a0 - &two_p * &e1 + &q * d,
        (0, 1) => a1 - &two_p * d - &q * &e2,
        (0, 2) => a2 + &two_p * &e2 + &q * &e1,
        (1, 0) => (a0 + a1) - &two_p * &e2 - &q * &e1,
        (1, 1) => (a1 + a2) + &two_p * &e1 - &q * d,
        (1, 2) => (a0 + a2 + d) + &two_p * d + &q * &e2,
        (2, 0) => (a1 + &s) - &two_p * d - &q * &e2,
        (2, 1) => (a2 + &s + d) + &two_p * &e2 + &q * &e1,
        (2, 2) => (a0 - &s * 2) - &two_p * &e1 + &q * d,
        (3, 0) => (a1 + a2 + &s * 2 + d) + &two_p * &e1 - &q * d,
        (3, 1) => (a0 + a2 - &s + d) + &two_p * d + &q * &e2,
        (3, 2) => (a0 + a1 - &s * 4 - d * 2) - &two_p * &e2 - &q * &e1,
        (4, 0) => (a2 + &s * 2 + d * 2) + &two_p * &e2 + &q * &e1,
        (4, 1) => (a0 - &s * 4 - d) - &two_p * &e1 + &q * d,
        (4, 2) => (a1 - &s - d * 2) - &two_p * d - &q * &e2,
        (5, 0) => (a0 + a2 - &s * 2 + d) + &two_p * d + &q * &e2,
        (5, 1) => (a0 + a1 - &s * 5 - d * 3) - &two_p * &e2 - &q * &e1,
        (5, 2) => (a1 + a2 + &s * 4 + d) + &two_p * &e1 - &q * d,
        _ => unreachable!(),
    };
    ring.reduce(v)
}
