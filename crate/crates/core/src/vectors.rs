//! Vectors over `N₀` and over `N₀ ∪ {∞}` under the product order.
//!
//! Both vector types derive `Ord` lexicographically so they can key sorted
//! collections; the product order is exposed separately through
//! `less_equal`.

use std::fmt;

use crate::error::{Error, Result};

/// A natural number or `∞`. The derived order puts `Inf` above every finite
/// value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Inf => None,
        }
    }

    /// `∞ - a = ∞` for finite `a`; otherwise defined only when `rhs <= self`.
    pub fn checked_sub(self, rhs: ExtNat) -> Option<ExtNat> {
        match (self, rhs) {
            (ExtNat::Inf, ExtNat::Fin(_)) => Some(ExtNat::Inf),
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_sub(b).map(ExtNat::Fin),
            _ => None,
        }
    }
}

/// `∞ + a = ∞`.
impl std::ops::Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => {
                ExtNat::Fin(a.checked_add(b).expect("coordinate overflow"))
            }
            _ => ExtNat::Inf,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Fin(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A vector in `N₀^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatVec(Vec<u64>);

impl NatVec {
    pub fn new(coords: Vec<u64>) -> Self {
        NatVec(coords)
    }

    pub fn zeros(d: usize) -> Self {
        NatVec(vec![0; d])
    }

    /// The unit vector `e_i`.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zeros(d);
        v.0[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Product order. Panics on dimension mismatch.
    pub fn less_equal(&self, other: &NatVec) -> bool {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Product order against an extended vector.
    pub fn below(&self, x: &ExtVec) -> bool {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        self.0.iter().zip(&x.0).all(|(&a, &b)| ExtNat::Fin(a) <= b)
    }

    /// Componentwise maximum `self ⊔ other`.
    pub fn sup(&self, other: &NatVec) -> NatVec {
        self.zip_with(other, u64::max)
    }

    /// Componentwise minimum `self ⊓ other`.
    pub fn inf(&self, other: &NatVec) -> NatVec {
        self.zip_with(other, u64::min)
    }

    pub fn add(&self, other: &NatVec) -> NatVec {
        self.zip_with(other, |a, b| a.checked_add(b).expect("coordinate overflow"))
    }

    /// `self - other`, defined when `other <= self`.
    pub fn checked_sub(&self, other: &NatVec) -> Result<NatVec> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(NatVec)
            .ok_or_else(|| Error::InvalidSubtraction {
                lhs: self.to_string(),
                rhs: other.to_string(),
            })
    }

    /// `self - (self ⊓ other)`, which is always defined.
    pub fn residual(&self, other: &NatVec) -> NatVec {
        self.zip_with(other, u64::saturating_sub)
    }

    pub fn try_sup(&self, other: &NatVec) -> Result<NatVec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.sup(other))
    }

    pub fn try_inf(&self, other: &NatVec) -> Result<NatVec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.inf(other))
    }

    pub fn try_less_equal(&self, other: &NatVec) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.less_equal(other))
    }

    pub fn to_ext(&self) -> ExtVec {
        ExtVec(self.0.iter().map(|&c| ExtNat::Fin(c)).collect())
    }

    fn zip_with(&self, other: &NatVec, f: impl Fn(u64, u64) -> u64) -> NatVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        NatVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl From<Vec<u64>> for NatVec {
    fn from(v: Vec<u64>) -> Self {
        NatVec(v)
    }
}

impl<const N: usize> From<[u64; N]> for NatVec {
    fn from(v: [u64; N]) -> Self {
        NatVec(v.to_vec())
    }
}

impl fmt::Display for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A vector in `(N₀ ∪ {∞})^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtVec(Vec<ExtNat>);

impl ExtVec {
    pub fn new(coords: Vec<ExtNat>) -> Self {
        ExtVec(coords)
    }

    /// The all-`∞` vector, the top of `(N₀ ∪ {∞})^d`.
    pub fn infinite(d: usize) -> Self {
        ExtVec(vec![ExtNat::Inf; d])
    }

    /// `∞·e_i`: `∞` at coordinate `i`, zero elsewhere.
    pub fn infinite_axis(d: usize, i: usize) -> Self {
        let mut v = vec![ExtNat::Fin(0); d];
        v[i] = ExtNat::Inf;
        ExtVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[ExtNat] {
        &self.0
    }

    pub fn get(&self, i: usize) -> ExtNat {
        self.0[i]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// The vector as a `NatVec` if no coordinate is `∞`.
    pub fn to_finite(&self) -> Option<NatVec> {
        self.0
            .iter()
            .map(|c| c.finite())
            .collect::<Option<Vec<_>>>()
            .map(NatVec)
    }

    /// Product order. Panics on dimension mismatch.
    pub fn less_equal(&self, other: &ExtVec) -> bool {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn try_less_equal(&self, other: &ExtVec) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.less_equal(other))
    }

    pub fn sup(&self, other: &ExtVec) -> ExtVec {
        self.zip_with(other, ExtNat::max)
    }

    pub fn inf(&self, other: &ExtVec) -> ExtVec {
        self.zip_with(other, ExtNat::min)
    }

    pub fn add(&self, other: &ExtVec) -> ExtVec {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sup(&self, other: &ExtVec) -> Result<ExtVec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.sup(other))
    }

    pub fn try_inf(&self, other: &ExtVec) -> Result<ExtVec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.inf(other))
    }

    pub fn try_add(&self, other: &ExtVec) -> Result<ExtVec> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.add(other))
    }

    /// `self - other`; `∞ - a = ∞` for finite `a`, and every finite
    /// coordinate of `other` must lie below the matching one of `self`.
    pub fn checked_sub(&self, other: &ExtVec) -> Result<ExtVec> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExtVec)
            .ok_or_else(|| Error::InvalidSubtraction {
                lhs: self.to_string(),
                rhs: other.to_string(),
            })
    }

    /// `self - (self ⊓ other)`. Always defined, including `∞ - ∞ = 0`
    /// where both coordinates are infinite.
    pub fn residual(&self, other: &ExtVec) -> ExtVec {
        self.zip_with(other, |a, b| {
            let m = a.min(b);
            match (a, m) {
                (ExtNat::Inf, ExtNat::Inf) => ExtNat::Fin(0),
                _ => a.checked_sub(m).expect("min is below"),
            }
        })
    }

    fn zip_with(&self, other: &ExtVec, f: impl Fn(ExtNat, ExtNat) -> ExtNat) -> ExtVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        ExtVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl From<&NatVec> for ExtVec {
    fn from(v: &NatVec) -> Self {
        v.to_ext()
    }
}

impl From<NatVec> for ExtVec {
    fn from(v: NatVec) -> Self {
        v.to_ext()
    }
}

impl From<Vec<ExtNat>> for ExtVec {
    fn from(v: Vec<ExtNat>) -> Self {
        ExtVec(v)
    }
}

impl fmt::Display for ExtVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Shorthand for building extended vectors in tests and examples:
/// `None` stands for `∞`.
pub fn ext(coords: &[Option<u64>]) -> ExtVec {
    ExtVec(
        coords
            .iter()
            .map(|c| c.map_or(ExtNat::Inf, ExtNat::Fin))
            .collect(),
    )
}
