//! Tropical seeds (B, C), G-matrices, and the comparison between unfolded and folded patterns.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::chebring::{reg_rep_elem, AlgReal, ChebElem};
use crate::error::{Error, Result};
use crate::exchange::mutate_entries;
use crate::rootsys::{generate_roots, RootSet};
use crate::scalar::{det_laplace, identity_like, is_unit_sign, matrix_to_json, transpose, Matrix, Scalar};
use crate::unfolding::{random_words, FoldingKind, FoldingSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Seed<R> {
    pub b: Matrix<R>,
    pub c: Matrix<R>,
    pub word: Vec<usize>,
}

impl<R: Scalar> Seed<R> {
    /// C = identity.
    pub fn initial(b: Matrix<R>) -> Result<Seed<R>> {
        let n = b.len();
        if n == 0 || b.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("exchange matrix must be square and non-empty".into()));
        }
        let c = identity_like(&b[0][0], n);
        Ok(Seed { b, c, word: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Mutation of the stacked matrix (B over C) at k.
    pub fn mutate(&self, k: usize) -> Result<Seed<R>> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let mut stacked = self.b.clone();
        stacked.extend(self.c.iter().cloned());
        let m = mutate_entries(&stacked, k);
        let mut word = self.word.clone();
        word.push(k);
        Ok(Seed { b: m[..n].to_vec(), c: m[n..].to_vec(), word })
    }

    /// Simultaneous mutation at a block with vanishing diagonal block of B.
    pub fn composite_mutate(&self, block: &[usize]) -> Result<Seed<R>> {
        for &a in block {
            for &b in block {
                if !self.b[a][b].is_zero_elem() {
                    return Err(Error::NonCommutingBlock(a, b));
                }
            }
        }
        let mut s = self.clone();
        for &k in block {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    pub fn c_vector(&self, k: usize) -> Vec<R> {
        self.c.iter().map(|r| r[k].clone()).collect()
    }

    /// Common sign of the k-th c-vector, or None if it is not sign-coherent.
    pub fn c_sign(&self, k: usize) -> Option<i8> {
        column_sign(&self.c, k)
    }

    pub fn g_matrix(&self) -> Result<Matrix<R>> {
        inverse_transpose(&self.c)
    }

    pub fn to_json(&self) -> Value {
        json!({"b": matrix_to_json(&self.b), "c": matrix_to_json(&self.c), "word": self.word})
    }
}

pub fn column_sign<R: Scalar>(m: &Matrix<R>, k: usize) -> Option<i8> {
    let mut s = 0;
    for r in m {
        let t = r[k].sign();
        if t != 0 {
            if s != 0 && s != t {
                return None;
            }
            s = t;
        }
    }
    (s != 0).then_some(s)
}

/// (Cᵀ)⁻¹.
pub fn inverse_transpose<R: Scalar>(c: &Matrix<R>) -> Result<Matrix<R>> {
    Ok(transpose(&R::unit_inverse(c)?))
}

/// g′_k = −g_k + Σ_i [−ε b_ik]₊ g_i, with ε the sign of the k-th c-vector before mutation.
pub fn mutate_g<R: Scalar>(g: &Matrix<R>, b: &Matrix<R>, eps: i8, k: usize) -> Matrix<R> {
    let mut out = g.clone();
    for row in 0..g.len() {
        let mut v = g[row][k].negated();
        for i in 0..g.len() {
            let coef = if eps > 0 { b[i][k].negated() } else { b[i][k].clone() };
            if coef.sign() > 0 {
                v = v.plus(&coef.times(&g[row][i]));
            }
        }
        out[row][k] = v;
    }
    out
}

/// A seed carried together with its G-matrix mutated by the sign rule.
#[derive(Clone, Debug)]
pub struct GSeed<R> {
    pub seed: Seed<R>,
    pub g: Matrix<R>,
}

impl<R: Scalar> GSeed<R> {
    pub fn initial(b: Matrix<R>) -> Result<GSeed<R>> {
        let seed = Seed::initial(b)?;
        let g = seed.c.clone();
        Ok(GSeed { seed, g })
    }

    pub fn mutate(&self, k: usize) -> Result<GSeed<R>> {
        let eps = self.seed.c_sign(k).ok_or_else(|| Error::InvalidParameter(format!("c-vector {k} is not sign-coherent")))?;
        let g = mutate_g(&self.g, &self.seed.b, eps, k);
        Ok(GSeed { seed: self.seed.mutate(k)?, g })
    }

    pub fn mutate_block(&self, block: &[usize]) -> Result<GSeed<R>> {
        let mut s = self.clone();
        for &a in block {
            for &b in block {
                if !self.seed.b[a][b].is_zero_elem() {
                    return Err(Error::NonCommutingBlock(a, b));
                }
            }
        }
        for &k in block {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// Replaces each folded letter by its block of unfolded vertices.
pub fn lift_word(spec: &FoldingSpec, word: &[usize]) -> Result<Vec<Vec<usize>>> {
    spec.lift_word(word)
}

/// 𝐝_F: d_F applied to the columns of weight-one block representatives.
pub fn matrix_d_f(spec: &FoldingSpec, x: &Matrix<BigInt>) -> Result<Matrix<AlgReal>> {
    let n = spec.unfolded_rank();
    if x.len() != n || x.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
    }
    let zero = spec.weights[0].zero_like();
    let reps = spec.representatives();
    let r = spec.folded_rank();
    let mut out = vec![vec![zero; r]; r];
    for (jj, &col) in reps.iter().enumerate() {
        for (i, row) in x.iter().enumerate() {
            if !row[col].is_zero_elem() {
                let bi = spec.vertex_map[i];
                out[bi][jj] = out[bi][jj].add(&spec.weights[i].scale_int(&row[col]));
            }
        }
    }
    Ok(out)
}

pub const FACES: [&str; 6] = ["top", "bottom", "front", "back", "left", "right"];

#[derive(Clone, Debug, Default)]
pub struct WalkReport {
    pub kind: String,
    pub nodes: usize,
    pub edges: usize,
    pub face_checks: [usize; 6],
    pub face_failures: [usize; 6],
    pub c_vectors: usize,
    pub non_roots: usize,
    pub not_sign_coherent: usize,
    pub block_checks: usize,
    pub block_failures: usize,
    pub det_failures: usize,
    pub exhaustive_depth: usize,
    pub random_words: usize,
    pub random_length: usize,
    pub seed: u64,
    pub messages: Vec<String>,
}

impl WalkReport {
    pub fn cube_passed(&self) -> bool {
        self.face_failures.iter().all(|&f| f == 0)
    }

    pub fn roots_passed(&self) -> bool {
        self.non_roots == 0 && self.not_sign_coherent == 0
    }

    pub fn blocks_passed(&self) -> bool {
        self.block_failures == 0 && self.det_failures == 0
    }

    pub fn passed(&self) -> bool {
        self.cube_passed() && self.roots_passed() && self.blocks_passed()
    }

    fn note(&mut self, msg: String) {
        if self.messages.len() < 32 {
            self.messages.push(msg);
        }
    }

    pub fn to_json(&self) -> Value {
        let faces: serde_json::Map<String, Value> = FACES
            .iter()
            .enumerate()
            .map(|(i, f)| (f.to_string(), json!({"checked": self.face_checks[i], "failed": self.face_failures[i]})))
            .collect();
        json!({
            "kind": self.kind,
            "nodes": self.nodes,
            "edges": self.edges,
            "faces": faces,
            "c_vectors": self.c_vectors,
            "non_roots": self.non_roots,
            "not_sign_coherent": self.not_sign_coherent,
            "block_checks": self.block_checks,
            "block_failures": self.block_failures,
            "det_failures": self.det_failures,
            "exhaustive_depth": self.exhaustive_depth,
            "random_words": self.random_words,
            "random_length": self.random_length,
            "seed": self.seed,
            "messages": self.messages,
            "passed": self.passed(),
        })
    }
}

/// Matching vertices t̂ and t of the unfolded and folded patterns.
#[derive(Clone, Debug)]
pub struct CubeNode {
    pub unfolded: Seed<BigInt>,
    pub folded: Seed<AlgReal>,
    pub det: AlgReal,
}

pub struct CubeWalker<'a> {
    pub spec: &'a FoldingSpec,
    pub roots: RootSet,
    pub report: WalkReport,
}

impl<'a> CubeWalker<'a> {
    pub fn new(spec: &'a FoldingSpec) -> Result<CubeWalker<'a>> {
        let ty = crate::repcat::coxeter_type(spec.kind)?;
        let roots = generate_roots(ty)?;
        let report = WalkReport { kind: spec.kind.name(), ..Default::default() };
        Ok(CubeWalker { spec, roots, report })
    }

    pub fn root_node(&mut self) -> Result<CubeNode> {
        let unfolded = Seed::initial(self.spec.unfolded.entries().clone())?;
        let folded = Seed::initial(self.spec.folded.entries().clone())?;
        let det = det_laplace(&folded.c);
        let node = CubeNode { unfolded, folded, det };
        self.check_node(&node)?;
        Ok(node)
    }

    fn face(&mut self, i: usize, ok: bool, word: &[usize]) {
        self.report.face_checks[i] += 1;
        if !ok {
            self.report.face_failures[i] += 1;
            self.report.note(format!("{} face fails after {word:?}", FACES[i]));
        }
    }

    fn check_node(&mut self, node: &CubeNode) -> Result<()> {
        self.report.nodes += 1;
        let word = node.folded.word.clone();
        // c-vectors: roots and sign-coherence.
        for k in 0..node.folded.n() {
            self.report.c_vectors += 1;
            let v = node.folded.c_vector(k);
            if node.folded.c_sign(k).is_none() {
                self.report.not_sign_coherent += 1;
                self.report.note(format!("c-vector {k} after {word:?} is not sign-coherent"));
            }
            if !self.roots.is_root(&v)? {
                self.report.non_roots += 1;
                self.report.note(format!("c-vector {k} after {word:?} is not a root"));
            }
        }
        if let Some(rank) = self.spec.cheb_rank {
            self.check_blocks(node, rank)?;
        }
        Ok(())
    }

    /// Blocks of C_ŵ are ρ(r) with r one-signed, commute, and det X maps to det C′ under σ.
    fn check_blocks(&mut self, node: &CubeNode, rank: usize) -> Result<()> {
        self.report.block_checks += 1;
        let c = &node.unfolded.c;
        let blocks = &self.spec.blocks;
        let r = blocks.len();
        let mut x: Matrix<ChebElem> = Vec::with_capacity(r);
        let mut failed = false;
        for bi in &blocks[..] {
            let mut row = Vec::with_capacity(r);
            for bj in &blocks[..] {
                let coeffs: Vec<BigInt> = bi.iter().map(|&a| c[a][bj[0]].clone()).collect();
                let elem = ChebElem::new(rank, coeffs)?;
                let one_signed = elem.coeffs().iter().all(|v| v.sign() != num_bigint::Sign::Minus)
                    || elem.coeffs().iter().all(|v| v.sign() != num_bigint::Sign::Plus);
                let rho = reg_rep_elem(&elem);
                let block: Vec<Vec<BigInt>> = bi.iter().map(|&a| bj.iter().map(|&b| c[a][b].clone()).collect()).collect();
                if block != rho || !one_signed {
                    failed = true;
                }
                row.push(elem);
            }
            x.push(row);
        }
        // Blocks commute, which for ρ-images reduces to commutativity of the ring; checked on matrices.
        if !failed {
            let flat: Vec<&ChebElem> = x.iter().flatten().collect();
            'outer: for (i, a) in flat.iter().enumerate() {
                for b in &flat[i + 1..] {
                    let (ra, rb) = (reg_rep_elem(a), reg_rep_elem(b));
                    if crate::scalar::mat_mul(&ra, &rb) != crate::scalar::mat_mul(&rb, &ra) {
                        failed = true;
                        break 'outer;
                    }
                }
            }
        }
        if failed {
            self.report.block_failures += 1;
            self.report.note(format!("C blocks not in ρ(Λ) after {:?}", node.folded.word));
            return Ok(());
        }
        let det_x = det_laplace(&x);
        let det_c = det_laplace(&node.folded.c);
        let unit = is_unit_sign(&det_c).is_some() && is_unit_sign(&det_x).is_some();
        if !unit || det_x.sigma() != det_c {
            self.report.det_failures += 1;
            self.report.note(format!("determinants det X = {det_x}, det C' = {det_c} after {:?}", node.folded.word));
        }
        Ok(())
    }

    /// Mutates at folded letter k and checks the faces of the cube spanned by the edge.
    pub fn step(&mut self, node: &CubeNode, k: usize) -> Result<CubeNode> {
        let spec = self.spec;
        let block = &spec.blocks[k];
        let word = {
            let mut w = node.folded.word.clone();
            w.push(k);
            w
        };
        self.report.edges += 1;
        let g_hat = node.unfolded.g_matrix()?;
        let g_fold = node.folded.g_matrix()?;
        // Sign rule on G, driven by the same seeds.
        let mut g_hat_next = g_hat.clone();
        let mut walk = node.unfolded.clone();
        for &a in block {
            let eps = walk.c_sign(a).ok_or_else(|| Error::InvalidParameter(format!("unfolded c-vector {a} not sign-coherent")))?;
            g_hat_next = mutate_g(&g_hat_next, &walk.b, eps, a);
            walk = walk.mutate(a)?;
        }
        let unfolded = node.unfolded.composite_mutate(block)?;
        let eps = node.folded.c_sign(k).unwrap_or(0);
        let g_fold_next = mutate_g(&g_fold, &node.folded.b, eps, k);
        let folded = node.folded.mutate(k)?;
        let det = det_laplace(&folded.c);

        let top = matrix_d_f(spec, &g_hat)? == inverse_transpose(&matrix_d_f(spec, &node.unfolded.c)?)?;
        self.face(0, top, &node.folded.word);
        let g_hat_after = unfolded.g_matrix()?;
        let bottom = matrix_d_f(spec, &g_hat_after)? == inverse_transpose(&matrix_d_f(spec, &unfolded.c)?)?;
        self.face(1, bottom, &word);
        self.face(2, g_hat_after == g_hat_next, &word);
        self.face(3, folded.g_matrix()? == g_fold_next, &word);
        self.face(4, matrix_d_f(spec, &unfolded.c)? == folded.c, &word);
        self.face(5, matrix_d_f(spec, &g_hat_next)? == g_fold_next, &word);
        if det != node.det.neg() {
            self.report.det_failures += 1;
            self.report.note(format!("det C' does not alternate at {word:?}"));
        }
        let next = CubeNode { unfolded, folded, det };
        self.check_node(&next)?;
        Ok(next)
    }

    fn dfs(&mut self, node: &CubeNode, depth: usize) -> Result<()> {
        if node.folded.word.len() == depth {
            return Ok(());
        }
        for k in 0..self.spec.folded_rank() {
            let next = self.step(node, k)?;
            self.dfs(&next, depth)?;
        }
        Ok(())
    }
}

/// All words up to `depth` and `random` seeded words of length `length`, checking every cube edge.
pub fn verify_walks(spec: &FoldingSpec, depth: usize, random: usize, length: usize, seed: u64) -> Result<WalkReport> {
    if spec.kind == FoldingKind::F4E6 {
        return Err(Error::InvalidParameter("walks are defined for the non-crystallographic foldings".into()));
    }
    let mut w = CubeWalker::new(spec)?;
    let root = w.root_node()?;
    w.dfs(&root, depth)?;
    for word in random_words(spec.folded_rank(), random, length, seed) {
        let mut node = root.clone();
        for k in word {
            node = w.step(&node, k)?;
        }
    }
    w.report.exhaustive_depth = depth;
    w.report.random_words = random;
    w.report.random_length = length;
    w.report.seed = seed;
    Ok(w.report)
}

/// Columns of a matrix as display strings, sorted: a key up to column permutation.
pub fn column_set_key<R: Scalar>(m: &Matrix<R>) -> Vec<String> {
    let cols = transpose(m);
    let mut keys: Vec<String> = cols.iter().map(|c| c.iter().map(Scalar::display).collect::<Vec<_>>().join(",")).collect();
    keys.sort();
    keys
}

fn seed_key<R: Scalar>(s: &Seed<R>) -> String {
    let enc = |m: &Matrix<R>| m.iter().map(|r| r.iter().map(Scalar::display).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";");
    format!("{}|{}", enc(&s.b), enc(&s.c))
}

#[derive(Clone, Debug)]
pub struct SeedEnumeration<R> {
    pub labeled: usize,
    pub seeds: Vec<Seed<R>>,
    /// Seeds up to simultaneous permutation, keyed by the set of c-vectors.
    pub unlabeled: BTreeSet<Vec<String>>,
    pub g_sets: BTreeSet<Vec<String>>,
    pub cap_reached: bool,
}

/// Breadth-first search over labeled seeds, stopping after `cap` distinct seeds.
pub fn enumerate_seeds<R: Scalar>(b: &Matrix<R>, cap: usize) -> Result<SeedEnumeration<R>> {
    let start = Seed::initial(b.clone())?;
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut seeds = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(seed_key(&start), 0);
    seeds.push(start.clone());
    queue.push_back(start);
    let mut cap_reached = false;
    while let Some(s) = queue.pop_front() {
        for k in 0..s.n() {
            let t = s.mutate(k)?;
            let key = seed_key(&t);
            if seen.contains_key(&key) {
                continue;
            }
            if seeds.len() >= cap {
                cap_reached = true;
                break;
            }
            seen.insert(key, seeds.len());
            seeds.push(t.clone());
            queue.push_back(t);
        }
        if cap_reached {
            break;
        }
    }
    let unlabeled = seeds.iter().map(|s| column_set_key(&s.c)).collect();
    let g_sets = seeds.iter().map(|s| s.g_matrix().map(|g| column_set_key(&g))).collect::<Result<_>>()?;
    Ok(SeedEnumeration { labeled: seeds.len(), seeds, unlabeled, g_sets, cap_reached })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int_matrix;
    use crate::unfolding::standard_folding;

    #[test]
    fn a2_pentagon() {
        let e = enumerate_seeds(&int_matrix(&[&[0, 1], &[-1, 0]]), 100).unwrap();
        assert_eq!(e.labeled, 10);
        assert_eq!(e.unlabeled.len(), 5);
        assert!(!e.cap_reached);
        let capped = enumerate_seeds(&int_matrix(&[&[0, 1], &[-1, 0]]), 4).unwrap();
        assert!(capped.cap_reached);
    }

    #[test]
    fn involution_and_g() {
        let s = Seed::initial(int_matrix(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])).unwrap();
        let t = s.mutate(1).unwrap().mutate(1).unwrap();
        assert_eq!((t.b, t.c), (s.b.clone(), s.c.clone()));
        let mut gs = GSeed::initial(s.b.clone()).unwrap();
        for k in [0, 2, 1, 0, 1] {
            gs = gs.mutate(k).unwrap();
            assert_eq!(gs.g, gs.seed.g_matrix().unwrap());
        }
        assert!(s.mutate(3).is_err());
    }

    #[test]
    fn folded_two_by_two_closed_form() {
        let spec = standard_folding(FoldingKind::I2(5)).unwrap();
        let mut s = Seed::initial(spec.folded.entries().clone()).unwrap();
        for k in [0, 1, 0] {
            s = s.mutate(k).unwrap();
            let c = &s.c;
            let d = det_laplace(c);
            let expected = vec![
                vec![c[1][1].mul(&d), c[1][0].neg().mul(&d)],
                vec![c[0][1].neg().mul(&d), c[0][0].mul(&d)],
            ];
            assert_eq!(s.g_matrix().unwrap(), expected);
        }
    }

    #[test]
    fn d_f_of_identity() {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        let id = identity_like(&BigInt::from(0), 6);
        let one = AlgReal::one(5).unwrap();
        assert_eq!(matrix_d_f(&spec, &id).unwrap(), identity_like(&one, 3));
    }

    #[test]
    fn short_cube_walks() {
        for kind in [FoldingKind::I2(5), FoldingKind::H3, FoldingKind::I2(9)] {
            let spec = standard_folding(kind).unwrap();
            let r = verify_walks(&spec, 4, 10, 12, 3).unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.messages);
        }
    }

    #[test]
    fn i5_c_vectors_stay_in_roots() {
        let spec = standard_folding(FoldingKind::I2(5)).unwrap();
        let e = enumerate_seeds(spec.folded.entries(), 1000).unwrap();
        let roots = generate_roots(crate::rootsys::CoxeterType::I2(5)).unwrap();
        assert!(!e.cap_reached);
        for s in &e.seeds {
            for k in 0..2 {
                assert!(roots.is_root(&s.c_vector(k)).unwrap());
            }
        }
    }
}
