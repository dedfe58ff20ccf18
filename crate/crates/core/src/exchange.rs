//! Exchange matrices over ordered rings, R-quivers, and mutation.

use serde_json::Value;

use crate::chebring::AlgReal;
use crate::error::{Error, Result};
use crate::scalar::{Matrix, Scalar};

/// (|a|b + a|b|)/2, written without division: ab when a and b share a strict sign, else 0.
pub fn mutation_term<R: Scalar>(a: &R, b: &R) -> R {
    let (sa, sb) = (a.sign(), b.sign());
    if sa != 0 && sa == sb {
        let p = a.times(b);
        if sa > 0 {
            p
        } else {
            p.negated()
        }
    } else {
        a.zero_like()
    }
}

/// Matrix mutation with pivot (k, k) on a possibly rectangular (extended) matrix.
pub fn mutate_entries<R: Scalar>(m: &Matrix<R>, k: usize) -> Matrix<R> {
    let rows = m.len();
    let cols = m[0].len();
    let mut out = m.clone();
    for i in 0..rows {
        for j in 0..cols {
            if i == k || j == k {
                out[i][j] = m[i][j].negated();
            } else {
                let t = mutation_term(&m[i][k], &m[k][j]);
                if !t.is_zero_elem() {
                    out[i][j] = m[i][j].plus(&t);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeMatrix<R> {
    labels: Vec<String>,
    entries: Matrix<R>,
}

impl<R: Scalar> ExchangeMatrix<R> {
    /// Checks squareness, zero diagonal, and sign-skew-symmetry (which covers the skew-symmetrizable case).
    pub fn new(labels: Vec<String>, entries: Matrix<R>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty exchange matrix".into()));
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!("{} labels for {n} rows", labels.len())));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if !row[i].is_zero_elem() {
                return Err(Error::NotSkewSymmetric(i, i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j].sign() != -entries[j][i].sign() {
                    return Err(Error::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(ExchangeMatrix { labels, entries })
    }

    pub fn unlabeled(entries: Matrix<R>) -> Result<Self> {
        let labels = (0..entries.len()).map(|i| i.to_string()).collect();
        ExchangeMatrix::new(labels, entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &Matrix<R> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i][j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i].negated()))
    }

    /// B·D skew-symmetric for D = diag(d).
    pub fn is_skew_symmetrizable_by(&self, d: &[R]) -> bool {
        let n = self.n();
        d.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| self.entries[i][j].times(&d[j]) == self.entries[j][i].times(&d[i]).negated())
            })
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.n() {
            return Err(Error::IndexOutOfRange { index: k, size: self.n() });
        }
        Ok(())
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_index(k)?;
        Ok(ExchangeMatrix { labels: self.labels.clone(), entries: mutate_entries(&self.entries, k) })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Self> {
        let mut b = self.clone();
        for &k in word {
            b = b.mutate(k)?;
        }
        Ok(b)
    }

    /// Mutation at every vertex of a block whose diagonal block vanishes.
    pub fn composite_mutate(&self, block: &[usize]) -> Result<Self> {
        for &a in block {
            self.check_index(a)?;
            for &b in block {
                if !self.entries[a][b].is_zero_elem() {
                    return Err(Error::NonCommutingBlock(a, b));
                }
            }
        }
        let mut out = self.clone();
        for &a in block {
            out = out.mutate(a)?;
        }
        Ok(out)
    }

    /// Entry (i, j) of the result is entry (perm[i], perm[j]) of self.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ExchangeMatrix {
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
            entries: perm.iter().map(|&p| perm.iter().map(|&q| self.entries[p][q].clone()).collect()).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        ExchangeMatrix { labels: self.labels.clone(), entries: crate::scalar::mat_neg(&self.entries) }
    }

    pub fn to_quiver(&self) -> Result<RQuiver<R>> {
        if !self.is_skew_symmetric() {
            return Err(Error::InvalidParameter("quiver of a matrix that is not skew-symmetric".into()));
        }
        let n = self.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j].sign() > 0 {
                    arrows.push((i, j, self.entries[i][j].clone()));
                }
            }
        }
        RQuiver::new(self.labels.clone(), arrows, self.entries[0][0].zero_like())
    }

    pub fn from_quiver(q: &RQuiver<R>) -> Result<Self> {
        let n = q.labels.len();
        let mut entries = vec![vec![q.zero.clone(); n]; n];
        for (i, j, w) in &q.arrows {
            entries[*i][*j] = w.clone();
            entries[*j][*i] = w.negated();
        }
        ExchangeMatrix::new(q.labels.clone(), entries)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "ring": R::TAG,
            "n": self.n(),
            "labels": self.labels,
            "entries": crate::scalar::matrix_to_json(&self.entries),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v.get("ring").and_then(Value::as_str).unwrap_or(R::TAG);
        if ring != R::TAG {
            return Err(Error::Parse(format!("ring tag {ring} does not match {}", R::TAG)));
        }
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing entries".into()))?;
        let mut entries = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Parse("entries must be rows".into()))?;
            entries.push(r.iter().map(R::parse_json).collect::<Result<Vec<R>>>()?);
        }
        if let Some(n) = v.get("n").and_then(Value::as_u64) {
            if n as usize != entries.len() {
                return Err(Error::DimensionMismatch(format!("n = {n} but {} rows", entries.len())));
            }
        }
        let labels = match v.get("labels").and_then(Value::as_array) {
            Some(ls) => ls
                .iter()
                .map(|l| l.as_str().map(String::from).ok_or_else(|| Error::Parse("labels are strings".into())))
                .collect::<Result<Vec<_>>>()?,
            None => (0..entries.len()).map(|i| i.to_string()).collect(),
        };
        ExchangeMatrix::new(labels, entries)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for l in &self.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let w = &self.entries[i][j];
                if w.sign() > 0 {
                    if *w == w.one_like() {
                        s.push_str(&format!("  \"{}\" -> \"{}\";\n", self.labels[i], self.labels[j]));
                    } else {
                        s.push_str(&format!(
                            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                            self.labels[i],
                            self.labels[j],
                            w.display()
                        ));
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

impl ExchangeMatrix<AlgReal> {
    /// P⁻¹BP for P = diag(p); entry (i, j) is scaled by p_j/p_i.
    pub fn rescale(&self, p: &[AlgReal]) -> Result<Self> {
        let n = self.n();
        if p.len() != n {
            return Err(Error::DimensionMismatch(format!("{} scaling entries for rank {n}", p.len())));
        }
        let mut inv = Vec::with_capacity(n);
        for x in p {
            if x.sign() <= 0 {
                return Err(Error::NonPositive(x.to_string()));
            }
            inv.push(x.inv()?);
        }
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j].mul(&p[j]).mul(&inv[i])).collect())
            .collect();
        ExchangeMatrix::new(self.labels.clone(), entries)
    }
}

/// Quiver with positively weighted arrows, equivalent to a skew-symmetric exchange matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RQuiver<R> {
    pub labels: Vec<String>,
    pub arrows: Vec<(usize, usize, R)>,
    pub vertex_weights: Option<Vec<R>>,
    zero: R,
}

impl<R: Scalar> RQuiver<R> {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize, R)>, zero: R) -> Result<Self> {
        let n = labels.len();
        let mut seen = std::collections::HashSet::new();
        for (i, j, w) in &arrows {
            if *i >= n || *j >= n {
                return Err(Error::IndexOutOfRange { index: (*i).max(*j), size: n });
            }
            if i == j {
                return Err(Error::InvalidParameter(format!("loop at {i}")));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::InvalidParameter(format!("repeated arrow {i}->{j}")));
            }
            if seen.contains(&(*j, *i)) {
                return Err(Error::InvalidParameter(format!("2-cycle between {i} and {j}")));
            }
            if w.sign() <= 0 {
                return Err(Error::NonPositive(w.display()));
            }
        }
        Ok(RQuiver { labels, arrows, vertex_weights: None, zero })
    }

    pub fn with_vertex_weights(mut self, w: Vec<R>) -> Result<Self> {
        if w.len() != self.labels.len() {
            return Err(Error::DimensionMismatch("vertex weight count".into()));
        }
        if let Some(bad) = w.iter().find(|x| x.sign() <= 0) {
            return Err(Error::NonPositive(bad.display()));
        }
        self.vertex_weights = Some(w);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int_matrix;

    fn z(rows: &[&[i64]]) -> ExchangeMatrix<num_bigint::BigInt> {
        ExchangeMatrix::unlabeled(int_matrix(rows)).unwrap()
    }

    #[test]
    fn rank_two_golden_flip() {
        let phi = AlgReal::generator(5).unwrap();
        let zero = phi.zero_like();
        let b = ExchangeMatrix::unlabeled(vec![vec![zero.clone(), phi.neg()], vec![phi.clone(), zero.clone()]]).unwrap();
        let m = b.mutate(0).unwrap();
        assert_eq!(m.entries(), &vec![vec![zero.clone(), phi.clone()], vec![phi.neg(), zero]]);
    }

    #[test]
    fn f4_mutation_by_hand() {
        // Mutation at the third vertex (index 2) of the F4 matrix.
        let b = z(&[&[0, -1, 0, 0], &[1, 0, -1, 0], &[0, 2, 0, -1], &[0, 0, 1, 0]]);
        let m = b.mutate(2).unwrap();
        // b'_{1,3}: b_12 = -1 < 0, b_23 = -1 < 0 ⇒ b_13 - (-1)(-1) = -1; b'_{3,1} = b_31 + b_32 b_21 = 2.
        assert_eq!(m, z(&[&[0, -1, 0, 0], &[1, 0, 1, -1], &[0, -2, 0, 1], &[0, 2, -1, 0]]));
        assert_eq!(m.mutate(2).unwrap(), b);
        let d = [2, 2, 4, 4].map(num_bigint::BigInt::from);
        assert!(b.is_skew_symmetrizable_by(&[1, 1, 2, 2].map(num_bigint::BigInt::from)));
        assert!(m.is_skew_symmetrizable_by(&[1, 1, 2, 2].map(num_bigint::BigInt::from)));
        assert!(m.is_skew_symmetrizable_by(&d));
    }

    #[test]
    fn composite_refuses_noncommuting() {
        let s = z(&[&[0, -1, 0, 0], &[1, 0, 1, 0], &[0, -1, 0, -1], &[0, 0, 1, 0]]);
        assert_eq!(s.composite_mutate(&[0, 1]), Err(Error::NonCommutingBlock(0, 1)));
        let a = s.composite_mutate(&[0, 2]).unwrap();
        let b = s.composite_mutate(&[2, 0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rescaling_example() {
        let m = 4;
        let r2 = AlgReal::generator(m).unwrap();
        let zero = r2.zero_like();
        let one = r2.int_like(1);
        let b = ExchangeMatrix::unlabeled(vec![
            vec![zero.clone(), one.neg(), zero.clone(), zero.clone()],
            vec![one.clone(), zero.clone(), r2.neg(), zero.clone()],
            vec![zero.clone(), r2.clone(), zero.clone(), one.neg()],
            vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
        ])
        .unwrap();
        let h = r2.inv().unwrap();
        let p = vec![one.clone(), one.clone(), h.clone(), h];
        let bt = b.rescale(&p).unwrap();
        assert_eq!(bt.get(1, 2), &one.neg());
        assert_eq!(bt.get(2, 1), &one.int_like(2));
        for k in 0..4 {
            assert_eq!(b.mutate(k).unwrap().rescale(&p).unwrap(), bt.mutate(k).unwrap());
        }
        assert!(b.rescale(&[one.clone(), one.neg(), one.clone(), one]).is_err());
    }

    #[test]
    fn quiver_round_trip_and_json() {
        let s = z(&[&[0, -1, 0, 0], &[1, 0, 1, 0], &[0, -1, 0, -1], &[0, 0, 1, 0]]);
        let q = s.to_quiver().unwrap();
        assert_eq!(q.arrows.len(), 3);
        assert_eq!(ExchangeMatrix::from_quiver(&q).unwrap(), s);
        let back = ExchangeMatrix::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_dot().contains("\"1\" -> \"0\";"));
    }

    #[test]
    fn invalid_inputs() {
        assert!(ExchangeMatrix::unlabeled(int_matrix(&[&[0, 1], &[1, 0]])).is_err());
        assert!(ExchangeMatrix::unlabeled(int_matrix(&[&[1, 0], &[0, 0]])).is_err());
        let s = z(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(s.mutate(2), Err(Error::IndexOutOfRange { .. })));
    }
}
