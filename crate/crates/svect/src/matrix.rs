//! Dense integer matrices: exact products, determinants, unimodular inverses,
//! multiplicative order and characteristic polynomials.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn overflow() -> Error {
    Error::Internal("integer overflow in matrix arithmetic".into())
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Precondition(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    if b != 0 {
                        *o = a
                            .checked_mul(b)
                            .and_then(|p| o.checked_add(p))
                            .ok_or_else(overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Precondition("vector length mismatch".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
                })
            })
            .collect()
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> Result<i64> {
        let mv = self.mul_vec(v)?;
        u.iter().zip(&mv).try_fold(0i64, |acc, (&a, &b)| {
            a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        if self.is_upper_unitriangular() {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Integer inverse of a matrix with determinant `±1`.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        if self.is_upper_unitriangular() {
            return self.inverse_unitriangular();
        }
        let inv = self.inverse_rational()?;
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let q = &inv[i][j];
                if !q.is_integer() {
                    return Err(Error::Internal("matrix is not unimodular".into()));
                }
                out.set(i, j, q.to_integer().to_i64().ok_or_else(overflow)?);
            }
        }
        Ok(out)
    }

    fn inverse_unitriangular(&self) -> Result<IntMatrix> {
        let n = self.rows;
        let mut inv = IntMatrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = 0i64;
                for k in i + 1..=j {
                    let a = self.get(i, k);
                    if a != 0 {
                        s = a
                            .checked_mul(inv.get(k, j))
                            .and_then(|p| s.checked_sub(p))
                            .ok_or_else(overflow)?;
                    }
                }
                inv.set(i, j, s);
            }
        }
        Ok(inv)
    }

    /// Gauss-Jordan inverse over the rationals.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self.get(i, j).into())
                        } else {
                            BigRational::from_integer(BigInt::from(i64::from(j - n == i)))
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or_else(|| Error::Precondition("singular matrix".into()))?;
            a.swap(p, k);
            let piv = a[k][k].clone();
            for v in a[k].iter_mut() {
                *v /= &piv;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in 0..2 * n {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Least `k >= 1` with `M^k = I`, searching up to `cap`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.mul(self)?;
        }
        Err(Error::Internal(format!("matrix power did not reach the identity within {cap} steps")))
    }

    /// `det(x I - M)`, computed modulo enough primes to pin every coefficient.
    pub fn charpoly(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::Precondition("charpoly of a non-square matrix".into()));
        }
        let n = self.rows;
        // |coefficient of x^(n-k)| <= C(n,k) rho^k <= (1+rho)^n, with rho
        // bounding the spectral radius.
        let row_sum = (0..n)
            .map(|i| self.row(i).iter().map(|v| v.unsigned_abs()).sum::<u64>())
            .max()
            .unwrap_or(0);
        let col_sum = (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).unsigned_abs()).sum::<u64>())
            .max()
            .unwrap_or(0);
        let rho = row_sum.min(col_sum);
        let bound = num_traits::pow(BigUint::from(rho + 1), n) * 2u32;

        let mut modulus = BigUint::one();
        let mut acc: Vec<BigUint> = vec![BigUint::zero(); n + 1];
        let mut primes = PrimeIter::new();
        while modulus <= bound {
            let p = primes.next_prime();
            let residues = charpoly_mod(self, p);
            let m_mod_p = (&modulus % p).to_u64().unwrap();
            let inv = mod_inv(m_mod_p, p);
            for (a, &r) in acc.iter_mut().zip(&residues) {
                let a_mod_p = (&*a % p).to_u64().unwrap();
                let t = (r + p - a_mod_p) % p * inv % p;
                *a += &modulus * t;
            }
            modulus *= p;
        }
        let half = &modulus >> 1;
        let coeffs = acc
            .into_iter()
            .map(|a| {
                if a > half {
                    BigInt::from(a) - BigInt::from(modulus.clone())
                } else {
                    BigInt::from(a)
                }
            })
            .collect();
        Ok(IntPoly::new(coeffs))
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Descending primes below `2^31`.
struct PrimeIter {
    next: u64,
}

impl PrimeIter {
    fn new() -> Self {
        PrimeIter { next: (1 << 31) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return c;
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Characteristic polynomial modulo `p`: similarity reduction to upper
/// Hessenberg form followed by the standard Hessenberg recurrence.
fn charpoly_mod(m: &IntMatrix, p: u64) -> Vec<u64> {
    let n = m.rows;
    let pi = p as i64;
    let mut h: Vec<u64> = m.data.iter().map(|&v| v.rem_euclid(pi) as u64).collect();
    let at = |i: usize, j: usize| i * n + j;

    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for k in 0..n {
                h.swap(at(piv, k), at(j + 1, k));
            }
            for k in 0..n {
                h.swap(at(k, piv), at(k, j + 1));
            }
        }
        let inv = mod_inv(h[at(j + 1, j)], p);
        for i in j + 2..n {
            let u = h[at(i, j)] * inv % p;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                let t = u * h[at(j + 1, k)] % p;
                h[at(i, k)] = (h[at(i, k)] + p - t) % p;
            }
            for k in 0..n {
                let t = u * h[at(k, i)] % p;
                h[at(k, j + 1)] = (h[at(k, j + 1)] + t) % p;
            }
        }
    }

    // polys[m] = charpoly of the leading m x m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        let c = mm - 1;
        let prev = &polys[mm - 1];
        let mut next = vec![0u64; mm + 1];
        let d = h[at(c, c)];
        for (k, &a) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + a) % p;
            next[k] = (next[k] + p - a * d % p) % p;
        }
        let mut t = 1u64;
        for i in (1..mm).rev() {
            t = t * h[at(i, i - 1)] % p;
            if t == 0 {
                break;
            }
            let coef = h[at(i - 1, c)] * t % p;
            if coef == 0 {
                continue;
            }
            for (k, &a) in polys[i - 1].iter().enumerate() {
                next[k] = (next[k] + p - coef * a % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// `|det| = 1`.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    Ok(m.det()?.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Faddeev-LeVerrier over the integers: an independent charpoly route.
    fn charpoly_leverrier(a: &IntMatrix) -> IntPoly {
        let n = a.rows();
        let big = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
            m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
        };
        let ab = big(a);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            for i in 0..n {
                mk[i][i] += &coeffs[n - k + 1];
            }
            let prod: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|l| &ab[i][l] * &mk[l][j]).sum())
                        .collect()
                })
                .collect();
            let tr: BigInt = (0..n).map(|i| prod[i][i].clone()).sum();
            coeffs[n - k] = -tr / BigInt::from(k);
            mk = prod;
        }
        IntPoly::new(coeffs)
    }

    #[test]
    fn small_charpolys() {
        let m = IntMatrix::from_rows(&[vec![-1, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.charpoly().unwrap(), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(IntMatrix::identity(3).charpoly().unwrap(), IntPoly::u(1).pow(3));
        let z = IntMatrix::zeros(0, 0);
        assert_eq!(z.charpoly().unwrap(), IntPoly::one());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::one());
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(s.inverse_unimodular().is_err());
        assert_eq!(s.det().unwrap(), BigInt::from(2));
    }

    #[test]
    fn order_of_rotation() {
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.order(10).unwrap(), 4);
        assert!(m.order(3).is_err());
    }

    fn square(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, n * n)
            .prop_map(move |d| IntMatrix { rows: n, cols: n, data: d })
    }

    proptest! {
        #[test]
        fn charpoly_matches_leverrier(m in (1usize..8).prop_flat_map(square)) {
            prop_assert_eq!(m.charpoly().unwrap(), charpoly_leverrier(&m));
        }

        #[test]
        fn unitriangular_inverse(d in proptest::collection::vec(-2i64..=2, 36)) {
            let m = IntMatrix::from_fn(6, 6, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Less => d[i * 6 + j],
                std::cmp::Ordering::Greater => 0,
            });
            let inv = m.inverse_unimodular().unwrap();
            prop_assert!(m.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&m).unwrap().is_identity());
        }

        #[test]
        fn bareiss_matches_rational_elimination(m in (1usize..6).prop_flat_map(square)) {
            let det = m.det().unwrap();
            match m.inverse_rational() {
                Ok(_) => prop_assert!(!det.is_zero()),
                Err(_) => prop_assert!(det.is_zero()),
            }
        }
    }
}
