//! Exact real numbers in Q(2cos(π/m)), kept reduced modulo the minimal polynomial.
//!
//! Values are stored as an integer numerator polynomial over a positive common
//! denominator. Elements with denominator 1 form the ring Z[2cos(π/m)].

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::poly::{self, IntPoly};
use crate::error::{Error, Result};

/// Number field data for one value of m, shared by all its elements.
#[derive(Debug)]
pub struct Field {
    m: u32,
    minpoly: IntPoly,
    approx: f64,
    lo: BigRational,
    hi: BigRational,
}

fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn rsign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Field {
    fn build(m: u32) -> Result<Field> {
        let minpoly = poly::minimal_poly(m)?;
        let approx = 2.0 * (std::f64::consts::PI / m as f64).cos();
        let (lo, hi) = if minpoly.len() == 2 {
            let r = BigRational::from_integer(-minpoly[0].clone());
            (r.clone(), r)
        } else {
            let delta = 1e-10;
            let mut lo = BigRational::from_float(approx - delta).unwrap();
            let mut hi = BigRational::from_float(approx + delta).unwrap();
            let slo = rsign(&eval_rational(&minpoly, &lo));
            let shi = rsign(&eval_rational(&minpoly, &hi));
            assert!(slo * shi < 0, "root of minpoly({m}) not bracketed");
            let two = BigRational::from_integer(2.into());
            for _ in 0..96 {
                let mid = (&lo + &hi) / &two;
                match rsign(&eval_rational(&minpoly, &mid)) {
                    0 => {
                        lo = mid.clone();
                        hi = mid;
                        break;
                    }
                    s if s == slo => lo = mid,
                    _ => hi = mid,
                }
            }
            (lo, hi)
        };
        Ok(Field { m, minpoly, approx, lo, hi })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Floating approximation of the generator 2cos(π/m).
    pub fn approx(&self) -> f64 {
        self.approx
    }
}

/// Shared field handle; fields are built once per m and cached.
pub fn field(m: u32) -> Result<Arc<Field>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&m) {
        return Ok(f.clone());
    }
    let f = Arc::new(Field::build(m)?);
    Ok(cache.lock().unwrap().entry(m).or_insert(f).clone())
}

#[derive(Clone)]
pub struct AlgReal {
    field: Arc<Field>,
    num: IntPoly,
    den: BigInt,
}

impl PartialEq for AlgReal {
    fn eq(&self, o: &Self) -> bool {
        self.field.m == o.field.m && self.num == o.num && self.den == o.den
    }
}

impl Eq for AlgReal {}

impl Hash for AlgReal {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.field.m.hash(h);
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl fmt::Debug for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgReal[m={}]({})", self.field.m, self)
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{mag}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{mag}x^{i}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (k, (sign, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if *sign == "-" { " - " } else { " + " });
            }
            s.push_str(body);
        }
        if self.den.is_one() {
            write!(f, "{s}")
        } else if terms.len() == 1 {
            write!(f, "{s}/{}", self.den)
        } else {
            write!(f, "({s})/{}", self.den)
        }
    }
}

impl AlgReal {
    fn make(field: Arc<Field>, num: IntPoly, den: BigInt) -> AlgReal {
        let mut num = poly::reduce_monic(&num, &field.minpoly);
        let mut den = den;
        if den.is_negative() {
            num = poly::scale(&num, &BigInt::from(-1));
            den = -den;
        }
        if num.is_empty() {
            den = BigInt::one();
        } else if !den.is_one() {
            let g = poly::content(&num).gcd(&den);
            if !g.is_one() {
                num = num.iter().map(|c| c / &g).collect();
                den /= g;
            }
        }
        AlgReal { field, num, den }
    }

    pub fn from_poly(m: u32, p: &[BigInt]) -> Result<AlgReal> {
        Ok(AlgReal::make(field(m)?, p.to_vec(), BigInt::one()))
    }

    pub fn from_i64_poly(m: u32, p: &[i64]) -> Result<AlgReal> {
        AlgReal::from_poly(m, &poly::from_i64(p))
    }

    pub fn from_rationals(m: u32, cs: &[BigRational]) -> Result<AlgReal> {
        let den = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: IntPoly = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(AlgReal::make(field(m)?, num, den))
    }

    pub fn zero(m: u32) -> Result<AlgReal> {
        Ok(AlgReal { field: field(m)?, num: Vec::new(), den: BigInt::one() })
    }

    pub fn one(m: u32) -> Result<AlgReal> {
        AlgReal::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Result<AlgReal> {
        AlgReal::from_poly(m, &poly::from_i64(&[v]))
    }

    /// The generator x = 2cos(π/m).
    pub fn generator(m: u32) -> Result<AlgReal> {
        AlgReal::from_poly(m, &poly::from_i64(&[0, 1]))
    }

    pub fn m(&self) -> u32 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients in the power basis 1, x, …, x^{d−1} (length = field degree).
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.field.degree())
            .map(|i| {
                let c = self.num.get(i).cloned().unwrap_or_default();
                BigRational::new(c, self.den.clone())
            })
            .collect()
    }

    /// True when the value lies in Z[2cos(π/m)].
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn zero_like(&self) -> AlgReal {
        AlgReal { field: self.field.clone(), num: Vec::new(), den: BigInt::one() }
    }

    pub fn int_like(&self, v: i64) -> AlgReal {
        AlgReal::make(self.field.clone(), poly::from_i64(&[v]), BigInt::one())
    }

    fn check(&self, o: &AlgReal) {
        assert_eq!(self.field.m, o.field.m, "AlgReal field mismatch");
    }

    pub fn add(&self, o: &AlgReal) -> AlgReal {
        self.check(o);
        if self.den == o.den {
            let num = poly::add(&self.num, &o.num);
            if self.den.is_one() {
                return AlgReal { field: self.field.clone(), num, den: BigInt::one() };
            }
            return AlgReal::make(self.field.clone(), num, self.den.clone());
        }
        let num = poly::add(&poly::scale(&self.num, &o.den), &poly::scale(&o.num, &self.den));
        AlgReal::make(self.field.clone(), num, &self.den * &o.den)
    }

    pub fn neg(&self) -> AlgReal {
        AlgReal {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &AlgReal) -> AlgReal {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &AlgReal) -> AlgReal {
        self.check(o);
        let num = poly::mul(&self.num, &o.num);
        if self.den.is_one() && o.den.is_one() {
            let num = poly::reduce_monic(&num, &self.field.minpoly);
            return AlgReal { field: self.field.clone(), num, den: BigInt::one() };
        }
        AlgReal::make(self.field.clone(), num, &self.den * &o.den)
    }

    pub fn scale_int(&self, k: &BigInt) -> AlgReal {
        AlgReal::make(self.field.clone(), poly::scale(&self.num, k), self.den.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<AlgReal> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        let to_q = |p: &[BigInt]| -> Vec<BigRational> {
            p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let s = qpoly::inverse_mod(&to_q(&self.num), &to_q(&self.field.minpoly));
        let s: Vec<BigRational> = s.into_iter().map(|c| c * BigRational::from_integer(self.den.clone())).collect();
        AlgReal::from_rationals(self.field.m, &s)
    }

    pub fn div(&self, o: &AlgReal) -> Result<AlgReal> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> AlgReal {
        let mut acc = self.int_like(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        // The root is positive, so each monomial is monotone on [lo, hi].
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        for c in &self.num {
            let c = BigRational::from_integer(c.clone());
            if c.is_positive() {
                a += &c * &plo;
                b += &c * &phi;
            } else {
                a += &c * &phi;
                b += &c * &plo;
            }
            plo *= lo;
            phi *= hi;
        }
        let d = BigRational::from_integer(self.den.clone());
        (a / &d, b / d)
    }

    fn refine(&self, lo: &mut BigRational, hi: &mut BigRational) {
        let f = &self.field.minpoly;
        let slo = rsign(&eval_rational(f, lo));
        let mid = (&*lo + &*hi) / BigRational::from_integer(2.into());
        match rsign(&eval_rational(f, &mid)) {
            0 => {
                *lo = mid.clone();
                *hi = mid;
            }
            s if s == slo => *lo = mid,
            _ => *hi = mid,
        }
    }

    /// Sign of the real value at x = 2cos(π/m).
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let x = self.field.approx;
        let mut val = 0.0f64;
        let mut mag = 0.0f64;
        let mut ok = true;
        for c in self.num.iter().rev() {
            match c.to_f64() {
                Some(cf) if cf.is_finite() => {
                    val = val * x + cf;
                    mag = mag * x + cf.abs();
                }
                _ => ok = false,
            }
        }
        if ok && val.is_finite() && mag.is_finite() && val.abs() > 1e-9 * mag + 1e-300 {
            return if val > 0.0 { 1 } else { -1 };
        }
        let mut lo = self.field.lo.clone();
        let mut hi = self.field.hi.clone();
        loop {
            let (a, b) = self.eval_interval(&lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            assert!(lo != hi, "sign evaluation stalled on a nonzero element");
            self.refine(&mut lo, &mut hi);
        }
    }

    pub fn abs(&self) -> AlgReal {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Rational enclosure of the value with width at most 2^-bits.
    pub fn enclose(&self, bits: u32) -> (BigRational, BigRational) {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut lo = self.field.lo.clone();
        let mut hi = self.field.hi.clone();
        loop {
            let (a, b) = self.eval_interval(&lo, &hi);
            if &b - &a <= eps || lo == hi {
                return (a, b);
            }
            self.refine(&mut lo, &mut hi);
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.enclose(60);
        ((a + b) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs()
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    match c.numer().to_i64() {
                        Some(v) => Value::from(v),
                        None => Value::from(c.numer().to_string()),
                    }
                } else {
                    Value::from(c.to_string())
                }
            })
            .collect();
        serde_json::json!({ "m": self.field.m, "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<AlgReal> {
        let m = v
            .get("m")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("AlgReal needs integer field m".into()))?;
        let cs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("AlgReal needs coeffs array".into()))?;
        let mut out = Vec::with_capacity(cs.len());
        for c in cs {
            out.push(parse_rational(c)?);
        }
        AlgReal::from_rationals(m as u32, &out)
    }
}

pub(crate) fn parse_rational(c: &Value) -> Result<BigRational> {
    if let Some(i) = c.as_i64() {
        return Ok(BigRational::from_integer(i.into()));
    }
    let s = c.as_str().ok_or_else(|| Error::Parse(format!("bad rational {c}")))?;
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let d = parse_int(b)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(a)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl serde::Serialize for AlgReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for AlgReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        AlgReal::from_json(&v).map_err(serde::de::Error::custom)
    }
}

mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let lead = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = &r[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                let t = &c * &b[j];
                r[i - db + j] -= t;
            }
            q[i - db] = c;
        }
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(&mut out);
        out
    }

    /// s with s·a ≡ 1 (mod f), for f irreducible and a ≠ 0 mod f.
    pub fn inverse_mod(a: &[BigRational], f: &[BigRational]) -> Vec<BigRational> {
        let (mut r0, mut r1) = (f.to_vec(), divrem(a, f).1);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::from_integer(1.into())]);
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].clone();
        let out: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        divrem(&out, f).1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_relation() {
        let phi = AlgReal::generator(5).unwrap();
        assert_eq!(phi.mul(&phi), phi.add(&phi.int_like(1)));
    }

    #[test]
    fn signs() {
        assert_eq!(AlgReal::zero(5).unwrap().sign(), 0);
        assert_eq!(AlgReal::from_i64_poly(5, &[-1, 1]).unwrap().sign(), 1);
        assert_eq!(AlgReal::from_i64_poly(7, &[-1, -1, 1]).unwrap().sign(), 1);
        assert_eq!(AlgReal::from_i64_poly(4, &[0, -1]).unwrap().sign(), -1);
    }

    #[test]
    fn exact_fallback_on_near_cancellation() {
        // 987φ − 1597 ≈ −5.7e-4 while the magnitude is ~3e3; 1597 − 987φ > 0 is false.
        let v = AlgReal::from_i64_poly(5, &[-1597, 987]).unwrap();
        assert_eq!(v.sign(), -1);
        // Fibonacci quotients: F(n+1) − F(n)φ alternates sign.
        let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
        for k in 0..120 {
            let v = AlgReal::from_poly(5, &[b.clone(), -a.clone()]).unwrap();
            let expect = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(v.sign(), expect, "k={k}");
            let c = &a + &b;
            a = b;
            b = c;
        }
    }

    #[test]
    fn inverse_and_rationals() {
        let s2 = AlgReal::generator(4).unwrap();
        let inv = s2.inv().unwrap();
        assert_eq!(inv.mul(&s2), s2.int_like(1));
        assert!(!inv.is_integral());
        assert_eq!(inv.to_json(), serde_json::json!({"m": 4, "coeffs": [0, "1/2"]}));
        let back = AlgReal::from_json(&inv.to_json()).unwrap();
        assert_eq!(back, inv);
        let t = AlgReal::from_i64_poly(9, &[2, -1, 3]).unwrap();
        assert_eq!(t.inv().unwrap().mul(&t), t.int_like(1));
    }

    #[test]
    fn display() {
        let v = AlgReal::from_i64_poly(7, &[1, -2, 1]).unwrap();
        assert_eq!(v.to_string(), "x^2 - 2x + 1");
        assert!((v.to_f64() - (1.8019377358048383f64 - 1.0).powi(2)).abs() < 1e-12);
    }
}
