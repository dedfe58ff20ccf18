//! The Chebyshev ring with basis θ₀, …, θ_{n−1} and its regular representation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::algreal::AlgReal;
use super::poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChebElem {
    n: usize,
    coeffs: Vec<BigInt>,
}

/// Rewrites a raw product index into the basis: θ_k = θ_{2n−1−k} for n ≤ k < 2n.
fn fold_index(idx: usize, n: usize) -> Option<usize> {
    if idx < n {
        Some(idx)
    } else if idx < 2 * n {
        Some(2 * n - 1 - idx)
    } else {
        None
    }
}

/// Basis indices (with multiplicity) of θ_k·θ_l.
pub fn basis_product(k: usize, l: usize, n: usize) -> Vec<usize> {
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    (0..=l).filter_map(|j| fold_index(k - l + 2 * j, n)).collect()
}

impl ChebElem {
    pub fn new(n: usize, coeffs: Vec<BigInt>) -> Result<ChebElem> {
        if n == 0 {
            return Err(Error::InvalidParameter("Chebyshev rank must be >= 1".into()));
        }
        if coeffs.len() != n {
            return Err(Error::RankMismatch(n, coeffs.len()));
        }
        Ok(ChebElem { n, coeffs })
    }

    pub fn from_i64(n: usize, cs: &[i64]) -> Result<ChebElem> {
        ChebElem::new(n, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(n: usize) -> ChebElem {
        ChebElem { n, coeffs: vec![BigInt::zero(); n] }
    }

    pub fn from_int(n: usize, v: i64) -> ChebElem {
        let mut e = ChebElem::zero(n);
        e.coeffs[0] = BigInt::from(v);
        e
    }

    pub fn one(n: usize) -> ChebElem {
        ChebElem::from_int(n, 1)
    }

    pub fn theta(n: usize, k: usize) -> Result<ChebElem> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let mut e = ChebElem::zero(n);
        e.coeffs[k] = BigInt::from(1);
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Membership in the semiring: all coefficients nonnegative.
    pub fn is_semiring(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn same_rank(&self, o: &ChebElem) -> Result<()> {
        if self.n != o.n {
            return Err(Error::RankMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &ChebElem) -> Result<ChebElem> {
        self.same_rank(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(ChebElem { n: self.n, coeffs })
    }

    pub fn sub(&self, o: &ChebElem) -> Result<ChebElem> {
        self.same_rank(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Ok(ChebElem { n: self.n, coeffs })
    }

    pub fn neg(&self) -> ChebElem {
        ChebElem { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &ChebElem) -> Result<ChebElem> {
        cheb_mul(self, o)
    }

    /// Image in Z[2cos(π/(2n+1))].
    pub fn sigma(&self) -> AlgReal {
        sigma(self)
    }

    /// The partial order r ≤ s ⇔ r = s or σ(r) < σ(s).
    pub fn le(&self, o: &ChebElem) -> Result<bool> {
        self.same_rank(o)?;
        Ok(self == o || o.sigma().sub(&self.sigma()).sign() > 0)
    }

    pub fn to_json(&self) -> Value {
        let cs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| c.to_i64().map(Value::from).unwrap_or_else(|| Value::from(c.to_string())))
            .collect();
        serde_json::json!({ "rank": self.n, "coeffs": cs })
    }

    pub fn from_json(v: &Value) -> Result<ChebElem> {
        let n = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("ChebElem needs rank".into()))? as usize;
        let cs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("ChebElem needs coeffs".into()))?;
        let mut out = Vec::new();
        for c in cs {
            let r = super::algreal::parse_rational(c)?;
            if !r.is_integer() {
                return Err(Error::Parse("ChebElem coefficients are integers".into()));
            }
            out.push(r.to_integer());
        }
        ChebElem::new(n, out)
    }
}

impl fmt::Display for ChebElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match (k, c.to_i64()) {
                (0, _) => c.to_string(),
                (_, Some(1)) => format!("θ{k}"),
                (_, Some(-1)) => format!("-θ{k}"),
                _ => format!("{c}θ{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

pub fn cheb_mul(a: &ChebElem, b: &ChebElem) -> Result<ChebElem> {
    a.same_rank(b)?;
    let n = a.n;
    let mut out = vec![BigInt::zero(); n];
    for (k, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (l, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for idx in basis_product(k, l, n) {
                out[idx] += &xy;
            }
        }
    }
    Ok(ChebElem { n, coeffs: out })
}

/// Matrix of multiplication by θ_k; column j is the coefficient vector of θ_k θ_j.
pub fn reg_rep(k: usize, n: usize) -> Result<Vec<Vec<i64>>> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    let mut m = vec![vec![0i64; n]; n];
    for j in 0..n {
        for idx in basis_product(k, j, n) {
            m[idx][j] += 1;
        }
    }
    Ok(m)
}

/// ρ(r) = Σ r_k ρ(θ_k), over the integers.
pub fn reg_rep_elem(r: &ChebElem) -> Vec<Vec<BigInt>> {
    let n = r.n;
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for (k, c) in r.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = reg_rep(k, n).expect("k < n");
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != 0 {
                    out[i][j] += c * m[i][j];
                }
            }
        }
    }
    out
}

/// σ(θ_k) for the rank-n ring, i.e. U_k(cos π/(2n+1)) in Z[2cos(π/(2n+1))].
pub fn sigma_theta(n: usize, k: usize) -> AlgReal {
    AlgReal::from_poly(2 * n as u32 + 1, &poly::chebyshev_v(k)).expect("2n+1 >= 3")
}

pub fn sigma(a: &ChebElem) -> AlgReal {
    let m = 2 * a.n as u32 + 1;
    let mut acc = AlgReal::zero(m).expect("m >= 3");
    for (k, c) in a.coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&sigma_theta(a.n, k).scale_int(c));
        }
    }
    acc
}
