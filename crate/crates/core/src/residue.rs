//! Residues of `Z/nZ`, multiplicity tables and the balance predicate.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z/nZ`, stored as its canonical representative in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { value: value % modulus, modulus })
    }

    /// Reduces a signed integer, so `-1` becomes `n - 1`.
    pub fn from_i64(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { value: reduce_i64(value, modulus), modulus })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, other: Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { value: add_mod(self.value, other.value, self.modulus), modulus: self.modulus })
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { value: add_mod(self.value, neg_mod(other.value, self.modulus), self.modulus), modulus: self.modulus })
    }

    pub fn neg(self) -> Self {
        Self { value: neg_mod(self.value, self.modulus), modulus: self.modulus }
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { value: mul_mod(self.value, other.value, self.modulus), modulus: self.modulus })
    }

    /// `gcd(value, n) = 1`. In the zero ring (`n = 1`) every element is a unit.
    pub fn is_invertible(self) -> bool {
        self.modulus == 1 || self.value.gcd(&self.modulus) == 1
    }

    pub fn inverse(self) -> Option<Self> {
        if !self.is_invertible() {
            return None;
        }
        if self.modulus == 1 {
            return Some(self);
        }
        let e = (self.value as i128).extended_gcd(&(self.modulus as i128));
        let inv = e.x.rem_euclid(self.modulus as i128) as u64;
        Some(Self { value: inv, modulus: self.modulus })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub(crate) fn reduce_i64(value: i64, modulus: u64) -> u64 {
    (value as i128).rem_euclid(modulus as i128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    let s = a + b;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
pub(crate) fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `gcd(x, n) = 1`, with every element of the zero ring a unit.
pub fn is_unit(x: u64, n: u64) -> bool {
    n == 1 || (x % n).gcd(&n) == 1
}

/// Units of `Z/nZ` in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&x| is_unit(x, n)).collect()
}

/// The multiplicity function of a multiset in `Z/nZ`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityTable {
    modulus: u64,
    counts: Vec<u64>,
}

impl MultiplicityTable {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { modulus, counts: vec![0; modulus as usize] })
    }

    /// Tallies raw values, reducing each one modulo `n`.
    pub fn from_values<I>(modulus: u64, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut table = Self::new(modulus)?;
        for v in values {
            table.counts[(v % modulus) as usize] += 1;
        }
        Ok(table)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, x: u64) -> u64 {
        self.counts[(x % self.modulus) as usize]
    }

    /// Cardinality of the underlying multiset.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    #[inline]
    pub fn insert(&mut self, x: u64) {
        self.counts[x as usize] += 1;
    }

    #[inline]
    pub fn remove(&mut self, x: u64) {
        self.counts[x as usize] -= 1;
    }

    /// Multiset union.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }

    /// Multiset difference; `None` when `other` is not contained in `self`.
    pub fn difference(&self, other: &Self) -> Option<Self> {
        if self.modulus != other.modulus {
            return None;
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { modulus: self.modulus, counts })
    }

    /// The table of the negated multiset `{-x}`.
    pub fn negated(&self) -> Self {
        let n = self.modulus;
        let counts = (0..n).map(|x| self.counts[neg_mod(x, n) as usize]).collect();
        Self { modulus: n, counts }
    }

    /// Every residue occurs with the same multiplicity.
    pub fn is_balanced(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    /// `m(x) = m(-x)` for every `x`.
    pub fn is_mirror_symmetric(&self) -> bool {
        let n = self.modulus;
        (0..n).all(|x| self.counts[x as usize] == self.counts[neg_mod(x, n) as usize])
    }
}

/// Builds the multiplicity table of a stream of residues.
///
/// `modulus` is required when the stream may be empty; when given it must
/// agree with every item.
pub fn multiplicity_of<I>(items: I, modulus: Option<u64>) -> Result<MultiplicityTable>
where
    I: IntoIterator<Item = Residue>,
{
    let mut iter = items.into_iter().peekable();
    let n = match (modulus, iter.peek()) {
        (Some(n), _) => n,
        (None, Some(first)) => first.modulus(),
        (None, None) => {
            return Err(Error::InvalidArgument("empty stream needs an explicit modulus".into()))
        }
    };
    let mut table = MultiplicityTable::new(n)?;
    for r in iter {
        if r.modulus() != n {
            return Err(Error::ModulusMismatch(n, r.modulus()));
        }
        table.insert(r.value());
    }
    Ok(table)
}

pub fn is_balanced(table: &MultiplicityTable) -> bool {
    table.is_balanced()
}
