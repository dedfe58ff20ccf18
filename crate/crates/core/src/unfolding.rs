//! Weighted unfoldings and foldings of quivers, with the standard foldings onto H₃, H₄, I₂(m).

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chebring::{self, AlgReal, ChebElem};
use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::scalar::{Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FoldingKind {
    /// A_{m−1} folded onto I₂(m); full Chebyshev structure when m is odd.
    I2(u32),
    H3,
    H4,
    /// E₆ unfolding the rescaled F₄ matrix.
    F4E6,
}

impl FoldingKind {
    pub fn name(&self) -> String {
        match self {
            FoldingKind::I2(m) => format!("I2({m})"),
            FoldingKind::H3 => "H3".into(),
            FoldingKind::H4 => "H4".into(),
            FoldingKind::F4E6 => "F4E6".into(),
        }
    }
}

impl fmt::Display for FoldingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Clone, Debug)]
pub struct FoldingSpec {
    pub kind: FoldingKind,
    /// Integer exchange matrix S of the unfolded quiver; indices are block-major.
    pub unfolded: ExchangeMatrix<BigInt>,
    /// Folded exchange matrix B over Ẑ, before rescaling.
    pub folded: ExchangeMatrix<AlgReal>,
    pub blocks: Vec<Vec<usize>>,
    pub vertex_map: Vec<usize>,
    pub weights: Vec<AlgReal>,
    pub rescaling: Vec<AlgReal>,
    /// Rank n when block member k carries weight σ(θ_k).
    pub cheb_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionFailure {
    pub block: (usize, usize),
    pub column: usize,
    pub check: &'static str,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConditionReport {
    pub columns_checked: usize,
    pub failures: Vec<ConditionFailure>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn weight_template(weights: &[AlgReal]) -> Result<&AlgReal> {
    weights.first().ok_or_else(|| Error::DimensionMismatch("no vertex weights".into()))
}

/// Column sums of the blocks of WSW⁻¹ against b̃, in the division-free form
/// Σ_{a∈[i]} w_a s_ab = b̃_{[i][j]} w_b, plus the block sign condition.
pub fn check_conditions(
    s: &ExchangeMatrix<BigInt>,
    bt: &ExchangeMatrix<AlgReal>,
    blocks: &[Vec<usize>],
    weights: &[AlgReal],
) -> Result<ConditionReport> {
    let n = s.n();
    if weights.len() != n {
        return Err(Error::DimensionMismatch(format!("{} weights for {n} vertices", weights.len())));
    }
    if blocks.len() != bt.n() {
        return Err(Error::DimensionMismatch(format!("{} blocks for folded rank {}", blocks.len(), bt.n())));
    }
    let mut seen = vec![false; n];
    for &v in blocks.iter().flatten() {
        if v >= n || seen[v] {
            return Err(Error::DimensionMismatch("blocks do not partition the vertices".into()));
        }
        seen[v] = true;
    }
    if seen.iter().any(|x| !x) {
        return Err(Error::DimensionMismatch("blocks do not cover the vertices".into()));
    }
    let template = weight_template(weights)?;
    let mut report = ConditionReport::default();
    for (bi, rows) in blocks.iter().enumerate() {
        for (bj, cols) in blocks.iter().enumerate() {
            let target = bt.get(bi, bj);
            let tsign = target.sign();
            let mut block_signs = (false, false);
            for &b in cols {
                report.columns_checked += 1;
                let mut sum = template.zero_like();
                for &a in rows {
                    let e = s.get(a, b);
                    match Scalar::sign(e) {
                        1 => block_signs.0 = true,
                        -1 => block_signs.1 = true,
                        _ => continue,
                    }
                    sum = sum.add(&weights[a].scale_int(e));
                }
                let expected = target.mul(&weights[b]);
                if sum != expected {
                    report.failures.push(ConditionFailure {
                        block: (bi, bj),
                        column: b,
                        check: "column-sum",
                        expected: expected.to_string(),
                        actual: sum.to_string(),
                    });
                }
            }
            let violates = (tsign >= 0 && block_signs.1) || (tsign <= 0 && block_signs.0);
            if violates || (block_signs.0 && block_signs.1) {
                report.failures.push(ConditionFailure {
                    block: (bi, bj),
                    column: cols[0],
                    check: "sign",
                    expected: format!("entries of sign {tsign}"),
                    actual: "mixed or opposite signs".into(),
                });
            }
        }
    }
    Ok(report)
}

impl FoldingSpec {
    /// Validates the partition, the weights, the Chebyshev block weights and conditions (1), (2).
    pub fn new(
        kind: FoldingKind,
        unfolded: ExchangeMatrix<BigInt>,
        folded: ExchangeMatrix<AlgReal>,
        blocks: Vec<Vec<usize>>,
        weights: Vec<AlgReal>,
        rescaling: Vec<AlgReal>,
        cheb_rank: Option<usize>,
    ) -> Result<FoldingSpec> {
        let n = unfolded.n();
        let mut vertex_map = vec![usize::MAX; n];
        for (j, blk) in blocks.iter().enumerate() {
            if blk.is_empty() {
                return Err(Error::InvalidParameter(format!("block {j} is empty")));
            }
            for &v in blk {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                vertex_map[v] = j;
            }
        }
        if let Some(w) = weights.iter().find(|w| w.sign() <= 0) {
            return Err(Error::NonPositive(w.to_string()));
        }
        if let Some(r) = cheb_rank {
            for blk in &blocks {
                if blk.len() != r {
                    return Err(Error::InvalidParameter(format!("block size {} differs from rank {r}", blk.len())));
                }
                for (k, &v) in blk.iter().enumerate() {
                    if weights[v] != chebring::sigma_theta(r, k) {
                        return Err(Error::InvalidParameter(format!("weight of vertex {v} is not σ(θ_{k})")));
                    }
                }
            }
        }
        let spec = FoldingSpec { kind, unfolded, folded, blocks, vertex_map, weights, rescaling, cheb_rank };
        let report = check_conditions(&spec.unfolded, &spec.rescaled(&spec.folded)?, &spec.blocks, &spec.weights)?;
        if !report.passed() {
            return Err(Error::InvalidParameter(format!("folding conditions fail: {:?}", report.failures[0])));
        }
        Ok(spec)
    }

    pub fn field_m(&self) -> u32 {
        self.weights[0].m()
    }

    pub fn unfolded_rank(&self) -> usize {
        self.unfolded.n()
    }

    pub fn folded_rank(&self) -> usize {
        self.folded.n()
    }

    /// P⁻¹BP for the spec's rescaling.
    pub fn rescaled(&self, b: &ExchangeMatrix<AlgReal>) -> Result<ExchangeMatrix<AlgReal>> {
        b.rescale(&self.rescaling)
    }

    pub fn is_weight_one(&self, v: usize) -> bool {
        self.weights[v] == self.weights[v].int_like(1)
    }

    /// The representative vertex of each block (weight one, first in block order).
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    /// Position of a vertex inside its block.
    pub fn block_position(&self, v: usize) -> usize {
        self.blocks[self.vertex_map[v]].iter().position(|&x| x == v).expect("vertex in its block")
    }

    pub fn lift_word(&self, word: &[usize]) -> Result<Vec<Vec<usize>>> {
        word.iter()
            .map(|&k| {
                self.blocks.get(k).cloned().ok_or(Error::IndexOutOfRange { index: k, size: self.blocks.len() })
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.name(),
            "unfolded": self.unfolded.to_json(),
            "folded": self.folded.to_json(),
            "blocks": self.blocks,
            "vertex_map": self.vertex_map,
            "weights": self.weights.iter().map(AlgReal::to_json).collect::<Vec<_>>(),
            "rescaling": self.rescaling.iter().map(AlgReal::to_json).collect::<Vec<_>>(),
            "cheb_rank": self.cheb_rank,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WordFailure {
    pub word: Vec<usize>,
    #[serde(flatten)]
    pub failure: ConditionFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnfoldingReport {
    pub kind: String,
    pub words_checked: usize,
    pub exhaustive_depth: usize,
    pub random_words: usize,
    pub random_length: usize,
    pub seed: u64,
    pub failures: Vec<WordFailure>,
}

impl UnfoldingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Walker<'a> {
    spec: &'a FoldingSpec,
    words_checked: usize,
    failures: Vec<WordFailure>,
}

impl Walker<'_> {
    fn check(&mut self, word: &[usize], s: &ExchangeMatrix<BigInt>, b: &ExchangeMatrix<AlgReal>) -> Result<()> {
        self.words_checked += 1;
        let report = check_conditions(s, &self.spec.rescaled(b)?, &self.spec.blocks, &self.spec.weights)?;
        for f in report.failures {
            if self.failures.len() < 64 {
                self.failures.push(WordFailure { word: word.to_vec(), failure: f });
            }
        }
        Ok(())
    }

    fn dfs(
        &mut self,
        word: &mut Vec<usize>,
        s: &ExchangeMatrix<BigInt>,
        b: &ExchangeMatrix<AlgReal>,
        depth: usize,
    ) -> Result<()> {
        self.check(word, s, b)?;
        if word.len() == depth {
            return Ok(());
        }
        for k in 0..self.spec.blocks.len() {
            let s2 = s.composite_mutate(&self.spec.blocks[k])?;
            let b2 = b.mutate(k)?;
            word.push(k);
            self.dfs(word, &s2, &b2, depth)?;
            word.pop();
        }
        Ok(())
    }
}

/// Re-checks the folding conditions after each given word (applied to B and, blockwise, to S).
pub fn check_weighted_unfolding(spec: &FoldingSpec, words: &[Vec<usize>]) -> Result<UnfoldingReport> {
    let mut w = Walker { spec, words_checked: 0, failures: Vec::new() };
    for word in words {
        let mut s = spec.unfolded.clone();
        let mut b = spec.folded.clone();
        for &k in word {
            if k >= spec.blocks.len() {
                return Err(Error::IndexOutOfRange { index: k, size: spec.blocks.len() });
            }
            s = s.composite_mutate(&spec.blocks[k])?;
            b = b.mutate(k)?;
        }
        w.check(word, &s, &b)?;
    }
    Ok(UnfoldingReport {
        kind: spec.kind.name(),
        words_checked: w.words_checked,
        exhaustive_depth: 0,
        random_words: words.len(),
        random_length: words.iter().map(Vec::len).max().unwrap_or(0),
        seed: 0,
        failures: w.failures,
    })
}

pub fn random_words(letters: usize, count: usize, length: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..length).map(|_| rng.random_range(0..letters)).collect()).collect()
}

/// Every word up to `depth` (all prefixes, checked incrementally) plus seeded random words.
pub fn verify_unfolding(
    spec: &FoldingSpec,
    depth: usize,
    random: usize,
    length: usize,
    seed: u64,
) -> Result<UnfoldingReport> {
    let mut w = Walker { spec, words_checked: 0, failures: Vec::new() };
    w.dfs(&mut Vec::new(), &spec.unfolded, &spec.folded, depth)?;
    let words = random_words(spec.blocks.len(), random, length, seed);
    let tail = check_weighted_unfolding(spec, &words)?;
    w.words_checked += tail.words_checked;
    w.failures.extend(tail.failures);
    Ok(UnfoldingReport {
        kind: spec.kind.name(),
        words_checked: w.words_checked,
        exhaustive_depth: depth,
        random_words: random,
        random_length: length,
        seed,
        failures: w.failures,
    })
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn int_exchange(names: &[&str], n: usize, arrows: &[(usize, usize)]) -> Result<ExchangeMatrix<BigInt>> {
    let mut e: Matrix<BigInt> = vec![vec![BigInt::from(0); n]; n];
    for &(i, j) in arrows {
        e[i][j] = BigInt::from(1);
        e[j][i] = BigInt::from(-1);
    }
    ExchangeMatrix::new(labels(names), e)
}

/// Linear folded matrix with b_{i,i+1} = w_i.
fn linear_folded(names: &[&str], ws: &[AlgReal]) -> Result<ExchangeMatrix<AlgReal>> {
    let n = ws.len() + 1;
    let zero = ws[0].zero_like();
    let mut e = vec![vec![zero; n]; n];
    for (i, w) in ws.iter().enumerate() {
        e[i][i + 1] = w.clone();
        e[i + 1][i] = w.neg();
    }
    ExchangeMatrix::new(labels(names), e)
}

fn bracket_labels(r: usize) -> Vec<String> {
    (0..r).map(|i| format!("[{i}]")).collect()
}

pub fn standard_folding(kind: FoldingKind) -> Result<FoldingSpec> {
    match kind {
        FoldingKind::I2(m) => dihedral(m),
        FoldingKind::H3 => h_type(3),
        FoldingKind::H4 => h_type(4),
        FoldingKind::F4E6 => f4_e6(),
    }
}

/// Bipartite A_{m−1} with even sources, weights U_i(cos π/m), folded by parity.
fn dihedral(m: u32) -> Result<FoldingSpec> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("I2(m) needs m >= 3, got {m}")));
    }
    let k = (m - 1) as usize;
    let weight = |i: usize| AlgReal::from_poly(m, &chebring::chebyshev_v(i));
    let odd = m % 2 == 1;
    let rank = (m as usize - 1) / 2;
    // Position inside the block: for odd m the Chebyshev index h(i) = min(i, 2n−1−i).
    let key = |i: usize| if odd { i.min(2 * rank - 1 - i) } else { i };
    let mut blocks: Vec<Vec<usize>> = vec![(0..k).step_by(2).collect(), (1..k).step_by(2).collect()];
    for b in blocks.iter_mut() {
        b.sort_by_key(|&i| key(i));
    }
    let order: Vec<usize> = blocks.iter().flatten().copied().collect();
    let mut pos = vec![0; k];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let names: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut arrows = Vec::new();
    for i in (0..k).step_by(2) {
        if i > 0 {
            arrows.push((pos[i], pos[i - 1]));
        }
        if i + 1 < k {
            arrows.push((pos[i], pos[i + 1]));
        }
    }
    let s = int_exchange(&name_refs, k, &arrows)?;
    let x = AlgReal::generator(m)?;
    let folded = ExchangeMatrix::new(bracket_labels(2), linear_folded(&["a", "b"], &[x.clone()])?.entries().clone())?;
    let new_blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&v| pos[v]).collect()).collect();
    let weights: Vec<AlgReal> = order.iter().map(|&v| weight(v)).collect::<Result<_>>()?;
    let one = x.int_like(1);
    FoldingSpec::new(
        FoldingKind::I2(m),
        s,
        folded,
        new_blocks,
        weights,
        vec![one; 2],
        if odd { Some(rank) } else { None },
    )
}

/// D₆ → H₃ and E₈ → H₄: vertices i and φ_i form block [i]; the last folded edge has weight φ.
fn h_type(r: usize) -> Result<FoldingSpec> {
    let (names, arrows): (Vec<&str>, Vec<(usize, usize)>) = if r == 3 {
        // 1→2→φ3, φ1→φ2→3, φ2→φ3.
        (vec!["1", "phi1", "2", "phi2", "3", "phi3"], vec![(0, 2), (2, 5), (1, 3), (3, 4), (3, 5)])
    } else {
        // 1→2→3→φ4, φ1→φ2→φ3→4, φ3→φ4.
        (
            vec!["1", "phi1", "2", "phi2", "3", "phi3", "4", "phi4"],
            vec![(0, 2), (2, 4), (4, 7), (1, 3), (3, 5), (5, 6), (5, 7)],
        )
    };
    let s = int_exchange(&names, 2 * r, &arrows)?;
    let phi = AlgReal::generator(5)?;
    let one = phi.int_like(1);
    let mut ws = vec![one.clone(); r - 1];
    ws[r - 2] = phi.clone();
    let folded = ExchangeMatrix::new(bracket_labels(r), linear_folded(&names[..r], &ws)?.entries().clone())?;
    let blocks: Vec<Vec<usize>> = (0..r).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let weights: Vec<AlgReal> = (0..2 * r).map(|v| if v % 2 == 0 { one.clone() } else { phi.clone() }).collect();
    let kind = if r == 3 { FoldingKind::H3 } else { FoldingKind::H4 };
    FoldingSpec::new(kind, s, folded, blocks, weights, vec![one; r], Some(2))
}

/// E₆ unfolding of F₄, with F₄ presented over Z[√2] and rescaled by diag(1, 1, 1/√2, 1/√2).
fn f4_e6() -> Result<FoldingSpec> {
    let ex = examples::f4_over_sqrt2()?;
    let s = examples::e6()?;
    let one = ex.int_like(1);
    FoldingSpec::new(
        FoldingKind::F4E6,
        s,
        ex.folded,
        vec![vec![0], vec![1], vec![2, 3], vec![4, 5]],
        vec![one; 6],
        ex.rescaling,
        None,
    )
}

/// Lifts each entry of B′ to 0, ±1, ±θ₁ and assembles S from the blocks ρ(lift).
pub fn build_unfolded_matrix(b: &ExchangeMatrix<AlgReal>, n: usize) -> Result<ExchangeMatrix<BigInt>> {
    let r = b.n();
    let t1 = if n >= 2 { Some(chebring::sigma_theta(n, 1)) } else { None };
    let mut e: Matrix<BigInt> = vec![vec![BigInt::from(0); r * n]; r * n];
    for i in 0..r {
        for j in 0..r {
            let x = b.get(i, j);
            let lift = if x.is_zero() {
                continue;
            } else if *x == x.int_like(1) {
                ChebElem::one(n)
            } else if *x == x.int_like(-1) {
                ChebElem::from_int(n, -1)
            } else if t1.as_ref() == Some(x) {
                ChebElem::theta(n, 1)?
            } else if t1.as_ref().map(AlgReal::neg).as_ref() == Some(x) {
                ChebElem::theta(n, 1)?.neg()
            } else {
                return Err(Error::NotLiftable(x.to_string()));
            };
            let block = chebring::reg_rep_elem(&lift);
            for a in 0..n {
                for c in 0..n {
                    e[i * n + a][j * n + c] = block[a][c].clone();
                }
            }
        }
    }
    let names = (0..r).flat_map(|i| (0..n).map(move |k| format!("{}.{k}", i))).collect();
    ExchangeMatrix::new(names, e)
}

/// Small worked unfoldings used in tests and by the CLI.
pub mod examples {
    use super::*;

    pub struct Folded {
        pub folded: ExchangeMatrix<AlgReal>,
        pub rescaling: Vec<AlgReal>,
    }

    impl Folded {
        pub fn int_like(&self, v: i64) -> AlgReal {
            self.folded.get(0, 0).int_like(v)
        }
    }

    fn alg(m: u32, rows: &[&[i64]], gen: &[(usize, usize, i64)]) -> Result<ExchangeMatrix<AlgReal>> {
        let x = AlgReal::generator(m)?;
        let mut e: Matrix<AlgReal> = rows.iter().map(|r| r.iter().map(|&v| x.int_like(v)).collect()).collect();
        for &(i, j, c) in gen {
            e[i][j] = x.scale_int(&BigInt::from(c));
        }
        ExchangeMatrix::unlabeled(e)
    }

    /// The integer F₄ matrix, as an element of the field with m = 3 (the rationals).
    pub fn f4_integer() -> Result<ExchangeMatrix<AlgReal>> {
        alg(3, &[&[0, -1, 0, 0], &[1, 0, -1, 0], &[0, 2, 0, -1], &[0, 0, 1, 0]], &[])
    }

    /// F₄ with the √2 entries, together with the rescaling that makes it integral.
    pub fn f4_over_sqrt2() -> Result<Folded> {
        let folded = alg(4, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]], &[(1, 2, -1), (2, 1, 1)])?;
        let r2 = AlgReal::generator(4)?;
        let h = r2.inv()?;
        let one = r2.int_like(1);
        Ok(Folded { folded, rescaling: vec![one.clone(), one, h.clone(), h] })
    }

    pub fn e6() -> Result<ExchangeMatrix<BigInt>> {
        Ok(ExchangeMatrix::unlabeled(crate::scalar::int_matrix(&[
            &[0, -1, 0, 0, 0, 0],
            &[1, 0, -1, -1, 0, 0],
            &[0, 1, 0, 0, -1, 0],
            &[0, 1, 0, 0, 0, -1],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
        ]))?)
    }

    /// A₄ over I₂(5) with weights (1, φ, φ, 1): (S, B, blocks, weights).
    pub fn a4_h2() -> Result<(ExchangeMatrix<BigInt>, ExchangeMatrix<AlgReal>, Vec<Vec<usize>>, Vec<AlgReal>)> {
        let s = ExchangeMatrix::unlabeled(crate::scalar::int_matrix(&[
            &[0, -1, 0, 0],
            &[1, 0, 1, 0],
            &[0, -1, 0, -1],
            &[0, 0, 1, 0],
        ]))?;
        let b = alg(5, &[&[0, 0], &[0, 0]], &[(0, 1, -1), (1, 0, 1)])?;
        let phi = AlgReal::generator(5)?;
        let one = phi.int_like(1);
        Ok((s, b, vec![vec![0, 2], vec![1, 3]], vec![one.clone(), phi.clone(), phi, one]))
    }

    /// A₅ over I₂(6) with weights (1, √3, 2, √3, 1). The block of weight-(1, 2, 1) vertices comes
    /// first so that column sums reproduce b₀₁ = −√3.
    pub fn a5_g2() -> Result<(ExchangeMatrix<BigInt>, ExchangeMatrix<AlgReal>, Vec<Vec<usize>>, Vec<AlgReal>)> {
        let s = ExchangeMatrix::unlabeled(crate::scalar::int_matrix(&[
            &[0, -1, 0, 0, 0],
            &[1, 0, 1, 0, 0],
            &[0, -1, 0, -1, 0],
            &[0, 0, 1, 0, 1],
            &[0, 0, 0, -1, 0],
        ]))?;
        let b = alg(6, &[&[0, 0], &[0, 0]], &[(0, 1, -1), (1, 0, 1)])?;
        let r3 = AlgReal::generator(6)?;
        let one = r3.int_like(1);
        let ws = vec![one.clone(), r3.clone(), one.int_like(2), r3, one];
        Ok((s, b, vec![vec![0, 2, 4], vec![1, 3]], ws))
    }

    fn example_spec(
        kind: FoldingKind,
        (s, b, blocks, w): (ExchangeMatrix<BigInt>, ExchangeMatrix<AlgReal>, Vec<Vec<usize>>, Vec<AlgReal>),
    ) -> Result<FoldingSpec> {
        let ones = vec![w[0].int_like(1); b.n()];
        FoldingSpec::new(kind, s, b, blocks, w, ones, None)
    }

    pub fn a4_h2_spec() -> Result<FoldingSpec> {
        example_spec(FoldingKind::I2(5), a4_h2()?)
    }

    pub fn a5_g2_spec() -> Result<FoldingSpec> {
        example_spec(FoldingKind::I2(6), a5_g2()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples_pass_conditions() {
        let s = examples::e6().unwrap();
        let b = examples::f4_integer().unwrap();
        let one = b.get(0, 0).int_like(1);
        let blocks = vec![vec![0], vec![1], vec![2, 3], vec![4, 5]];
        assert!(check_conditions(&s, &b, &blocks, &vec![one; 6]).unwrap().passed());

        let (s, b, blocks, w) = examples::a4_h2().unwrap();
        assert!(check_conditions(&s, &b, &blocks, &w).unwrap().passed());

        let (s, b, blocks, w) = examples::a5_g2().unwrap();
        assert!(check_conditions(&s, &b, &blocks, &w).unwrap().passed());
        // With the two blocks in the other order the column sums have the wrong sign.
        let swapped = vec![blocks[1].clone(), blocks[0].clone()];
        assert!(!check_conditions(&s, &b, &swapped, &w).unwrap().passed());
    }

    #[test]
    fn standard_foldings_build() {
        for kind in [FoldingKind::I2(5), FoldingKind::I2(7), FoldingKind::I2(9), FoldingKind::I2(6), FoldingKind::H3, FoldingKind::H4, FoldingKind::F4E6] {
            let spec = standard_folding(kind).unwrap();
            assert_eq!(spec.vertex_map.len(), spec.unfolded.n());
        }
        assert!(standard_folding(FoldingKind::I2(2)).is_err());
    }

    #[test]
    fn dihedral_seven_weights_and_blocks() {
        let spec = standard_folding(FoldingKind::I2(7)).unwrap();
        // Original vertices 0..5; blocks ordered by Chebyshev index.
        assert_eq!(spec.unfolded.labels(), &["0", "4", "2", "5", "1", "3"]);
        let x = AlgReal::generator(7).unwrap();
        let w2 = x.mul(&x).sub(&x.int_like(1));
        let expected = [x.int_like(1), x.clone(), w2.clone(), x.int_like(1), x.clone(), w2];
        assert_eq!(spec.weights, expected);
        let rho = chebring::reg_rep(1, 3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(spec.unfolded.get(a, 3 + b), &BigInt::from(rho[a][b]));
            }
        }
    }

    #[test]
    fn build_matches_standard() {
        for kind in [FoldingKind::H3, FoldingKind::H4, FoldingKind::I2(5), FoldingKind::I2(7), FoldingKind::I2(9)] {
            let spec = standard_folding(kind).unwrap();
            let built = build_unfolded_matrix(&spec.folded, spec.cheb_rank.unwrap()).unwrap();
            assert_eq!(built.entries(), spec.unfolded.entries(), "{kind}");
        }
        let (s, b, _, _) = examples::a4_h2().unwrap();
        let built = build_unfolded_matrix(&b, 2).unwrap();
        // Block-major order by Chebyshev index: (1, 3 | 4, 2) of the A4 example.
        assert_eq!(built.entries(), s.permuted(&[0, 2, 3, 1]).entries());
    }

    #[test]
    fn unliftable_entry() {
        let b = examples::f4_over_sqrt2().unwrap().folded;
        assert!(matches!(build_unfolded_matrix(&b, 2), Err(Error::NotLiftable(_))));
    }

    #[test]
    fn short_exhaustive_runs() {
        for kind in [FoldingKind::H3, FoldingKind::I2(7), FoldingKind::F4E6] {
            let spec = standard_folding(kind).unwrap();
            let r = verify_unfolding(&spec, 4, 20, 12, 7).unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn empty_word_matches_conditions() {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        let r = check_weighted_unfolding(&spec, &[vec![]]).unwrap();
        assert!(r.passed());
        assert_eq!(r.words_checked, 1);
    }
}
