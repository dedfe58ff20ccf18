//! Root systems of H₃, H₄ and I₂(m) with exact coordinates over Ẑ, and the planar embedding e_F.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::chebring::AlgReal;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    I2(u32),
    H3,
    H4,
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match self {
            CoxeterType::I2(_) => 2,
            CoxeterType::H3 => 3,
            CoxeterType::H4 => 4,
        }
    }

    /// The m for which the coordinates live in Q(2cos(π/m)).
    pub fn field_m(&self) -> u32 {
        match self {
            CoxeterType::I2(m) => *m,
            _ => 5,
        }
    }

    /// Coxeter labels m_ij. H-type diagrams are linear with the label 5 on the last edge.
    pub fn coxeter_label(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        let r = self.rank();
        match self {
            CoxeterType::I2(m) => *m,
            _ if i.abs_diff(j) != 1 => 2,
            _ if i.max(j) == r - 1 => 5,
            _ => 3,
        }
    }

    pub fn expected_root_count(&self) -> usize {
        match self {
            CoxeterType::I2(m) => 2 * *m as usize,
            CoxeterType::H3 => 30,
            CoxeterType::H4 => 120,
        }
    }

    pub fn parse(s: &str) -> Result<CoxeterType> {
        let t = s.trim().to_ascii_uppercase().replace(['_', ' '], "");
        match t.as_str() {
            "H3" => Ok(CoxeterType::H3),
            "H4" => Ok(CoxeterType::H4),
            _ => {
                let inner = t
                    .strip_prefix("I2(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown Coxeter type {s}")))?;
                let m: u32 = inner.parse().map_err(|_| Error::Parse(format!("bad m in {s}")))?;
                if m < 3 {
                    return Err(Error::InvalidParameter(format!("I2(m) needs m >= 3, got {m}")));
                }
                Ok(CoxeterType::I2(m))
            }
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::I2(m) => write!(f, "I2({m})"),
            CoxeterType::H3 => write!(f, "H3"),
            CoxeterType::H4 => write!(f, "H4"),
        }
    }
}

/// 2cos(π/k) inside the field of m, for the labels that occur (k ∈ {2, 3, 5, m}).
fn two_cos(m: u32, k: u32) -> Result<AlgReal> {
    match k {
        2 => AlgReal::zero(m),
        3 => AlgReal::one(m),
        _ if k == m => AlgReal::generator(m),
        5 if m == 5 => AlgReal::generator(5),
        _ => Err(Error::InvalidParameter(format!("2cos(pi/{k}) not available over m = {m}"))),
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub ty: CoxeterType,
    /// Symmetric Cartan matrix with A_ii = 2, A_ij = −2cos(π/m_ij).
    pub cartan: Vec<Vec<AlgReal>>,
    pub roots: Vec<Vec<AlgReal>>,
    pub positive: Vec<Vec<AlgReal>>,
    lookup: HashSet<Vec<AlgReal>>,
}

impl RootSet {
    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    fn check_dim(&self, v: &[AlgReal]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for rank {}", v.len(), self.rank())));
        }
        Ok(())
    }

    pub fn is_root(&self, v: &[AlgReal]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.lookup.contains(v))
    }

    pub fn is_positive_root(&self, v: &[AlgReal]) -> Result<bool> {
        Ok(self.is_root(v)? && v.iter().all(|c| c.sign() >= 0))
    }

    pub fn reflect(&self, i: usize, v: &[AlgReal]) -> Vec<AlgReal> {
        let mut pair = v[0].zero_like();
        for (a, x) in self.cartan[i].iter().zip(v) {
            pair = pair.add(&a.mul(x));
        }
        let mut out = v.to_vec();
        out[i] = out[i].sub(&pair);
        out
    }

    /// Symmetric bilinear form (v, w) = ½ vᵀAw.
    pub fn form(&self, v: &[AlgReal], w: &[AlgReal]) -> AlgReal {
        let mut s = v[0].zero_like();
        for i in 0..v.len() {
            for j in 0..w.len() {
                s = s.add(&self.cartan[i][j].mul(&v[i]).mul(&w[j]));
            }
        }
        s.mul(&s.int_like(2).inv().expect("2 is invertible"))
    }

    pub fn to_json(&self) -> Value {
        let enc = |vs: &[Vec<AlgReal>]| -> Vec<Vec<Value>> {
            vs.iter().map(|v| v.iter().map(AlgReal::to_json).collect()).collect()
        };
        json!({
            "type": self.ty.to_string(),
            "rank": self.rank(),
            "roots": enc(&self.roots),
            "positive": enc(&self.positive),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("positive");
        for i in 0..self.rank() {
            out.push_str(&format!(",c{i}"));
        }
        out.push('\n');
        for r in &self.roots {
            let pos = r.iter().all(|c| c.sign() >= 0);
            out.push_str(&pos.to_string());
            for c in r {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Reflection closure of the simple roots.
pub fn generate_roots(ty: CoxeterType) -> Result<RootSet> {
    let r = ty.rank();
    let m = ty.field_m();
    let mut cartan = vec![vec![AlgReal::zero(m)?; r]; r];
    for (i, row) in cartan.iter_mut().enumerate() {
        for (j, a) in row.iter_mut().enumerate() {
            *a = if i == j { AlgReal::from_int(m, 2)? } else { two_cos(m, ty.coxeter_label(i, j))?.neg() };
        }
    }
    let mut set = RootSet { ty, cartan, roots: Vec::new(), positive: Vec::new(), lookup: HashSet::new() };
    let zero = AlgReal::zero(m)?;
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![zero.clone(); r];
        e[i] = zero.int_like(1);
        if set.lookup.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        set.roots.push(v.clone());
        if set.roots.len() > 4 * ty.expected_root_count() {
            return Err(Error::InvalidParameter("reflection closure did not terminate".into()));
        }
        for i in 0..r {
            let w = set.reflect(i, &v);
            if !set.lookup.contains(&w) {
                set.lookup.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    set.positive = set.roots.iter().filter(|v| v.iter().all(|c| c.sign() >= 0)).cloned().collect();
    Ok(set)
}

/// H₃ sits inside H₄ on the last three simple roots.
pub fn embed_h3_in_h4(v: &[AlgReal]) -> Result<Vec<AlgReal>> {
    if v.len() != 3 {
        return Err(Error::DimensionMismatch(format!("H3 vector of length {}", v.len())));
    }
    let mut out = vec![v[0].zero_like()];
    out.extend_from_slice(v);
    Ok(out)
}

/// A real number known to lie in a closed rational interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn rat_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl Interval {
    pub fn mid(&self) -> f64 {
        (rat_to_f64(&self.lo) + rat_to_f64(&self.hi)) / 2.0
    }

    pub fn width(&self) -> f64 {
        rat_to_f64(&(&self.hi - &self.lo))
    }

    /// True when every point of the interval is within `tol` of `x`.
    pub fn within(&self, x: f64, tol: f64) -> bool {
        (rat_to_f64(&self.lo) - x).abs() <= tol && (rat_to_f64(&self.hi) - x).abs() <= tol
    }

    fn mul(&self, o: &Interval) -> Interval {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15} ± {:.1e}", self.mid(), self.width() / 2.0)
    }
}

fn enclose(x: &AlgReal, bits: u32) -> Interval {
    let (lo, hi) = x.enclose(bits);
    Interval { lo, hi }
}

/// Square root of a non-negative rational interval, outward rounded to 2^-bits.
fn sqrt_interval(x: &Interval, bits: u32) -> Interval {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let floor_sqrt = |q: &BigRational| -> BigInt {
        let t = (q * &scale * &scale).floor().to_integer();
        if t.is_negative() { BigInt::zero() } else { t.sqrt() }
    };
    let lo = floor_sqrt(&x.lo);
    let mut hi = floor_sqrt(&x.hi);
    let hi_sq = BigRational::new(&hi * &hi, BigInt::one() << (2 * bits));
    if hi_sq < x.hi {
        hi += 1;
    }
    Interval { lo: BigRational::new(lo, BigInt::one() << bits), hi: BigRational::new(hi, BigInt::one() << bits) }
}

/// Image of a ℤ̂-pair for I₂(2n+1) in the plane, with e_F(1,0) = (1,0) and e_F(0,1) = (cos 2nθ, sin 2nθ).
pub fn e_f(v: &[AlgReal], n: usize, bits: u32) -> Result<(Interval, Interval)> {
    if v.len() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a pair, got length {}", v.len())));
    }
    let m = (2 * n + 1) as u32;
    if v.iter().any(|c| c.m() != m) {
        return Err(Error::InvalidParameter(format!("coordinates must lie in the field of m = {m}")));
    }
    let x = AlgReal::generator(m)?;
    let half = x.int_like(2).inv()?;
    // cos 2nθ = −cos θ = −x/2 and sin 2nθ = sin θ = √(1 − x²/4).
    let first = v[0].sub(&v[1].mul(&x).mul(&half));
    let sin_sq = x.int_like(1).sub(&x.mul(&x).mul(&half).mul(&half));
    let sin = sqrt_interval(&enclose(&sin_sq, bits + 8), bits + 4);
    let second = enclose(&v[1], bits + 8).mul(&sin);
    Ok((enclose(&first, bits), second.add(&Interval { lo: BigRational::zero(), hi: BigRational::zero() })))
}

/// Exact test that e_F(v) has unit length: a² − abx + b² = 1.
pub fn has_unit_length(v: &[AlgReal]) -> bool {
    if v.len() != 2 {
        return false;
    }
    let x = AlgReal::generator(v[0].m()).expect("field exists");
    let q = v[0].mul(&v[0]).sub(&v[0].mul(&v[1]).mul(&x)).add(&v[1].mul(&v[1]));
    q == x.int_like(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: u32, cs: &[&[i64]]) -> Vec<AlgReal> {
        cs.iter().map(|c| AlgReal::from_i64_poly(m, c).unwrap()).collect()
    }

    #[test]
    fn counts() {
        for ty in [CoxeterType::I2(5), CoxeterType::I2(7), CoxeterType::I2(6), CoxeterType::H3, CoxeterType::H4] {
            let rs = generate_roots(ty).unwrap();
            assert_eq!(rs.roots.len(), ty.expected_root_count(), "{ty}");
            assert_eq!(rs.positive.len() * 2, rs.roots.len(), "{ty}");
        }
    }

    #[test]
    fn membership() {
        let i5 = generate_roots(CoxeterType::I2(5)).unwrap();
        // The positive roots are (1,0), (0,1), (1,φ), (φ,1), (φ,φ); (1,1) has norm 2 − φ.
        assert!(i5.is_root(&v(5, &[&[0, 1], &[0, 1]])).unwrap());
        assert!(!i5.is_root(&v(5, &[&[1], &[1]])).unwrap());
        let expected = [v(5, &[&[1], &[0]]), v(5, &[&[0], &[1]]), v(5, &[&[1], &[0, 1]]), v(5, &[&[0, 1], &[1]]), v(5, &[&[0, 1], &[0, 1]])];
        assert_eq!(i5.positive.len(), 5);
        assert!(expected.iter().all(|r| i5.is_positive_root(r).unwrap()));
        assert!(!i5.is_root(&v(5, &[&[2], &[0]])).unwrap());
        assert!(i5.is_positive_root(&v(5, &[&[0, 1], &[1]])).unwrap());
        assert!(i5.is_root(&v(5, &[&[1]])).is_err());
        let h3 = generate_roots(CoxeterType::H3).unwrap();
        assert!(h3.is_positive_root(&v(5, &[&[0, 1], &[0, 1], &[1]])).unwrap());
    }

    #[test]
    fn h3_inside_h4() {
        let h3 = generate_roots(CoxeterType::H3).unwrap();
        let h4 = generate_roots(CoxeterType::H4).unwrap();
        for r in &h3.positive {
            assert!(h4.is_positive_root(&embed_h3_in_h4(r).unwrap()).unwrap());
        }
    }

    #[test]
    fn roots_have_unit_norm() {
        for ty in [CoxeterType::H3, CoxeterType::H4, CoxeterType::I2(7)] {
            let rs = generate_roots(ty).unwrap();
            let one = AlgReal::one(ty.field_m()).unwrap();
            for r in &rs.roots {
                assert_eq!(rs.form(r, r), one);
            }
        }
        let i9 = generate_roots(CoxeterType::I2(9)).unwrap();
        assert!(i9.roots.iter().all(|r| has_unit_length(r)));
    }

    #[test]
    fn planar_images() {
        let n = 2;
        let th = std::f64::consts::PI / 5.0;
        let (a, b) = e_f(&v(5, &[&[1], &[0]]), n, 60).unwrap();
        assert!(a.within(1.0, 1e-15) && b.within(0.0, 1e-15));
        let (a, b) = e_f(&v(5, &[&[0], &[1]]), n, 60).unwrap();
        assert!(a.within((4.0 * th).cos(), 1e-12) && b.within((4.0 * th).sin(), 1e-12));
        assert!(e_f(&v(7, &[&[1], &[0]]), n, 60).is_err());
    }

    #[test]
    fn parse_types() {
        assert_eq!(CoxeterType::parse("i2(7)").unwrap(), CoxeterType::I2(7));
        assert_eq!(CoxeterType::parse("H4").unwrap(), CoxeterType::H4);
        assert!(CoxeterType::parse("E8").is_err());
        assert!(CoxeterType::parse("I2(2)").is_err());
    }
}
