use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense vector of exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(Vec<BigRational>);

impl QVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![BigRational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigRational::one();
        v
    }

    pub fn from_ints<I: Into<BigInt> + Copy>(xs: &[I]) -> Self {
        Self(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        Self(xs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigRational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn set(&mut self, i: usize, value: BigRational) {
        self.0[i] = value;
    }

    pub fn dot(&self, other: &QVector) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &BigRational) -> QVector {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        Self(self.0.iter().map(|a| -a).collect())
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &BigRational, other: &QVector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &QVector) -> QVector {
        Self(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for QVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl FromIterator<BigRational> for QVector {
    fn from_iter<T: IntoIterator<Item = BigRational>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl From<Vec<BigRational>> for QVector {
    fn from(v: Vec<BigRational>) -> Self {
        Self(v)
    }
}

/// Comma separated coordinates, rationals as `a/b`.
impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A linear functional `v ↦ Σ coeffs_i · v_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: QVector,
}

impl LinearForm {
    pub fn new(coeffs: QVector) -> Self {
        Self { coeffs }
    }

    pub fn from_ints<I: Into<BigInt> + Copy>(xs: &[I]) -> Self {
        Self::new(QVector::from_ints(xs))
    }

    pub fn coeffs(&self) -> &QVector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> QVector {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn eval(&self, v: &QVector) -> BigRational {
        self.coeffs.dot(v)
    }

    pub fn neg(&self) -> LinearForm {
        Self::new(self.coeffs.neg())
    }

    /// Renders the form in the variable `var`, e.g. `-k0 + 2k1`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(var);
            out.push_str(&i.to_string());
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl From<QVector> for LinearForm {
    fn from(coeffs: QVector) -> Self {
        Self::new(coeffs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// A rational matrix acting on column vectors, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: Vec<QVector>,
    cols: usize,
}

impl LinearMap {
    pub fn new(cols: usize, rows: Vec<QVector>) -> Result<Self> {
        for r in &rows {
            r.check_dim(cols)?;
        }
        Ok(Self { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn source_dim(&self) -> usize {
        self.cols
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        v.check_dim(self.cols)?;
        Ok(self.rows.iter().map(|r| r.dot(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_forms() {
        assert_eq!(LinearForm::from_ints(&[-1, 2, 0]).render("k"), "-k0 + 2k1");
        assert_eq!(LinearForm::from_ints(&[0, -3, 1]).render("l"), "-3l1 + l2");
        assert_eq!(LinearForm::from_ints(&[0, 0]).render("x"), "0");
    }

    #[test]
    fn arithmetic_and_maps() {
        let a = QVector::from_ints(&[1, -2, 3]);
        let b = QVector::from_ints(&[4, 0, -1]);
        assert_eq!(a.dot(&b), BigRational::from_integer(1.into()));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.concat(&b).dim(), 6);
        assert_eq!(LinearMap::identity(3).apply(&a).unwrap(), a);
        assert!(LinearMap::identity(2).apply(&a).is_err());
        assert_eq!(a.to_string(), "1,-2,3");
        let half = QVector::new(vec![BigRational::new(1.into(), 2.into())]);
        assert!(!half.is_integral());
        assert!(half.to_integers().is_none());
    }
}
