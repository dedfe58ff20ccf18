//! Ordered-ring abstraction shared by integer, Ẑ, and Chebyshev matrices.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::chebring::{AlgReal, ChebElem};
use crate::error::{Error, Result};

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    /// Ring tag used in JSON output.
    const TAG: &'static str;

    fn zero_like(&self) -> Self;
    fn from_int_like(&self, v: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// −1, 0, or 1.
    fn sign(&self) -> i8;
    fn to_json(&self) -> Value;
    fn display(&self) -> String;
    fn parse_json(v: &Value) -> Result<Self>;

    fn one_like(&self) -> Self {
        self.from_int_like(1)
    }

    fn abs_val(&self) -> Self {
        if self.sign() < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// max(x, 0).
    fn pos_part(&self) -> Self {
        if self.sign() > 0 {
            self.clone()
        } else {
            self.zero_like()
        }
    }

    /// Inverse of a matrix whose determinant is ±1.
    fn unit_inverse(a: &Matrix<Self>) -> Result<Matrix<Self>> {
        unimodular_inverse(a)
    }
}

impl Scalar for BigInt {
    const TAG: &'static str = "Z";

    fn unit_inverse(a: &Matrix<Self>) -> Result<Matrix<Self>> {
        integer_inverse(a)
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn from_int_like(&self, v: i64) -> Self {
        BigInt::from(v)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn to_json(&self) -> Value {
        self.to_i64().map(Value::from).unwrap_or_else(|| Value::from(self.to_string()))
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn parse_json(v: &Value) -> Result<Self> {
        let r = crate::chebring::algreal::parse_rational(v)?;
        if !r.is_integer() {
            return Err(Error::Parse(format!("expected an integer, got {v}")));
        }
        Ok(r.to_integer())
    }
}

impl Scalar for AlgReal {
    const TAG: &'static str = "AlgReal";

    fn zero_like(&self) -> Self {
        AlgReal::zero_like(self)
    }
    fn from_int_like(&self, v: i64) -> Self {
        self.int_like(v)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> i8 {
        AlgReal::sign(self)
    }
    fn to_json(&self) -> Value {
        AlgReal::to_json(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn parse_json(v: &Value) -> Result<Self> {
        AlgReal::from_json(v)
    }
}

/// Chebyshev entries are signed through σ; equality stays coefficient-wise.
impl Scalar for ChebElem {
    const TAG: &'static str = "ChebElem";

    fn zero_like(&self) -> Self {
        ChebElem::zero(self.rank())
    }
    fn from_int_like(&self, v: i64) -> Self {
        ChebElem::from_int(self.rank(), v)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o).expect("rank mismatch")
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o).expect("rank mismatch")
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o).expect("rank mismatch")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> i8 {
        self.sigma().sign()
    }
    fn to_json(&self) -> Value {
        ChebElem::to_json(self)
    }
    fn display(&self) -> String {
        self.to_string()
    }
    fn parse_json(v: &Value) -> Result<Self> {
        ChebElem::from_json(v)
    }
}

pub type Matrix<R> = Vec<Vec<R>>;

pub fn identity_like<R: Scalar>(template: &R, n: usize) -> Matrix<R> {
    (0..n)
        .map(|i| (0..n).map(|j| template.from_int_like((i == j) as i64)).collect())
        .collect()
}

pub fn zeros_like<R: Scalar>(template: &R, rows: usize, cols: usize) -> Matrix<R> {
    vec![vec![template.zero_like(); cols]; rows]
}

pub fn transpose<R: Clone>(a: &Matrix<R>) -> Matrix<R> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<R: Scalar>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for k in 0..inner {
                        if !row[k].is_zero_elem() && !b[k][j].is_zero_elem() {
                            acc = acc.plus(&row[k].times(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_neg<R: Scalar>(a: &Matrix<R>) -> Matrix<R> {
    a.iter().map(|r| r.iter().map(Scalar::negated).collect()).collect()
}

pub fn mat_scale<R: Scalar>(a: &Matrix<R>, s: &R) -> Matrix<R> {
    a.iter().map(|r| r.iter().map(|x| x.times(s)).collect()).collect()
}

fn minor<R: Clone>(a: &Matrix<R>, row: usize, col: usize) -> Matrix<R> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion; intended for the small folded matrices.
pub fn det_laplace<R: Scalar>(a: &Matrix<R>) -> R {
    let n = a.len();
    match n {
        0 => panic!("determinant of an empty matrix needs a template"),
        1 => a[0][0].clone(),
        2 => a[0][0].times(&a[1][1]).minus(&a[0][1].times(&a[1][0])),
        _ => {
            let mut acc = a[0][0].zero_like();
            for j in 0..n {
                if a[0][j].is_zero_elem() {
                    continue;
                }
                let t = a[0][j].times(&det_laplace(&minor(a, 0, j)));
                acc = if j % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
            }
            acc
        }
    }
}

/// Adjugate: adj(A)·A = det(A)·I.
pub fn adjugate<R: Scalar>(a: &Matrix<R>) -> Matrix<R> {
    let n = a.len();
    if n == 1 {
        return vec![vec![a[0][0].one_like()]];
    }
    let mut out = zeros_like(&a[0][0], n, n);
    for i in 0..n {
        for j in 0..n {
            let c = det_laplace(&minor(a, j, i));
            out[i][j] = if (i + j) % 2 == 0 { c } else { c.negated() };
        }
    }
    out
}

/// Whether x is +1 or −1.
pub fn is_unit_sign<R: Scalar>(x: &R) -> Option<i8> {
    if *x == x.one_like() {
        Some(1)
    } else if *x == x.from_int_like(-1) {
        Some(-1)
    } else {
        None
    }
}

/// Inverse of a matrix with determinant ±1, through the adjugate.
pub fn unimodular_inverse<R: Scalar>(a: &Matrix<R>) -> Result<Matrix<R>> {
    let d = det_laplace(a);
    let s = is_unit_sign(&d).ok_or_else(|| Error::NotUnit(d.display()))?;
    let adj = adjugate(a);
    Ok(if s > 0 { adj } else { mat_neg(&adj) })
}

/// Exact inverse of an integer matrix via Gauss–Jordan over Q; errors unless the inverse is integral.
pub fn integer_inverse(a: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    use num_rational::BigRational;
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::NotUnit("singular matrix".into()))?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for row in m {
        let mut r = Vec::with_capacity(n);
        for x in &row[n..] {
            if !x.is_integer() {
                return Err(Error::NotUnit("inverse is not integral".into()));
            }
            r.push(x.to_integer());
        }
        out.push(r);
    }
    Ok(out)
}

pub fn matrix_to_json<R: Scalar>(a: &Matrix<R>) -> Value {
    Value::from(a.iter().map(|r| Value::from(r.iter().map(Scalar::to_json).collect::<Vec<_>>())).collect::<Vec<_>>())
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn is_one<R: Scalar>(x: &R) -> bool {
    *x == x.one_like()
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn bigint_one() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_inverse() {
        let a = int_matrix(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity_like(&big(0), 3));
        assert_eq!(integer_inverse(&a).unwrap(), inv);
    }

    #[test]
    fn non_unit_det() {
        let a = int_matrix(&[&[2, 0], &[0, 1]]);
        assert!(unimodular_inverse(&a).is_err());
        assert!(integer_inverse(&a).is_err());
    }
}
