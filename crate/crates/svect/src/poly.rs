//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree order, trailing zeros
/// trimmed (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64(&[c])
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// `x^n - 1`.
    pub fn u(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPoly::new(c)
    }

    /// `(x^n - 1)/(x - 1) = 1 + x + ... + x^(n-1)`.
    pub fn v(n: usize) -> Self {
        IntPoly::new(vec![BigInt::one(); n])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0) && self.coeffs[0].abs().is_one()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division by a polynomial with leading coefficient `±1`.
    pub fn div_rem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Precondition("division by zero polynomial".into()))?;
        let lead = d.leading().unwrap().clone();
        if !lead.abs().is_one() {
            return Err(Error::Precondition(format!("divisor is not ±monic: {d}")));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        let support: Vec<(usize, &BigInt)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for k in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let q = &top * &lead;
            for &(j, cj) in &support {
                rem[k + j] -= &q * cj;
            }
            quot[k] = q;
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient; error if the remainder is nonzero.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!("{d} does not divide {self}")))
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coef = !a.is_one() || k == 0;
            if show_coef {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coef { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coef { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Serialized as the ascending coefficient list.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ints: Option<Vec<i64>> = self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect();
        match ints {
            Some(ints) => ints.serialize(s),
            None => self
                .coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(&a * &b, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(&a + &b, IntPoly::from_i64(&[0, 2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(IntPoly::u(6).div_exact(&IntPoly::u(3)).unwrap(), IntPoly::from_i64(&[1, 0, 0, 1]));
        assert_eq!(&IntPoly::v(5) * &IntPoly::u(1), IntPoly::u(5));
    }

    #[test]
    fn division_with_remainder() {
        let p = IntPoly::from_i64(&[3, 0, 2, 1]);
        let d = IntPoly::from_i64(&[1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert_eq!(r.degree(), Some(0));
        assert!(p.div_exact(&d).is_err());
        assert!(p.div_rem(&IntPoly::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, 1, 1]).to_string(), "x^2 + x + 1");
        assert_eq!(IntPoly::from_i64(&[-1, 0, -2]).to_string(), "-2*x^2 - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
