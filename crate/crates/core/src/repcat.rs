//! Representations of Dynkin quivers at the level of iso-classes: AR quiver by knitting,
//! Hom/Ext tables, projected dimension vectors and the Chebyshev action on columns.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::chebring::{AlgReal, ChebElem};
use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::rootsys::{generate_roots, CoxeterType, RootSet};
use crate::scalar::integer_inverse;
use crate::unfolding::{FoldingKind, FoldingSpec};

/// A quiver without loops, 2-cycles or multiple arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub labels: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        let n = labels.len();
        for &(a, b) in &arrows {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), size: n });
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at {a}")));
            }
        }
        Ok(Quiver { labels, arrows })
    }

    /// Arrows i → j wherever b_ij = 1.
    pub fn from_exchange(b: &ExchangeMatrix<BigInt>) -> Result<Quiver> {
        let n = b.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = b.get(i, j);
                if *e == BigInt::from(1) {
                    arrows.push((i, j));
                } else if *e != BigInt::from(0) && *e != BigInt::from(-1) {
                    return Err(Error::NotDynkin(format!("multiple arrows {i}->{j}")));
                }
            }
        }
        Quiver::new(b.labels().to_vec(), arrows)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver { labels: self.labels.clone(), arrows: self.arrows.iter().map(|&(a, b)| (b, a)).collect() }
    }

    /// Number of paths i ⇝ j, for every pair; errors on oriented cycles.
    pub fn path_counts(&self) -> Result<Vec<Vec<i64>>> {
        let order = self.topological_order()?;
        let n = self.n();
        let mut p = vec![vec![0i64; n]; n];
        for i in 0..n {
            p[i][i] = 1;
        }
        for &v in order.iter().rev() {
            for &(a, b) in &self.arrows {
                if a == v {
                    for t in 0..n {
                        p[v][t] += p[b][t];
                    }
                }
            }
        }
        Ok(p)
    }

    /// Sources first.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &(a, b) in self.arrows.iter().rev() {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        if out.len() != n {
            return Err(Error::NotDynkin("quiver has an oriented cycle".into()));
        }
        Ok(out)
    }

    /// ⟨d, e⟩ = Σ d_i e_i − Σ_{i→j} d_i e_j.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        diag - self.arrows.iter().map(|&(i, j)| d[i] * e[j]).sum::<i64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indec {
    pub dim: Vec<i64>,
    /// τ^{-level} P(vertex).
    pub level: usize,
    pub vertex: usize,
    pub projective: Option<usize>,
    pub injective: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ARQuiver {
    pub quiver: Quiver,
    /// In creation order, which is a topological order of the AR quiver.
    pub indecs: Vec<Indec>,
    pub arrows: Vec<(usize, usize)>,
    pub preds: Vec<Vec<usize>>,
    pub succs: Vec<Vec<usize>>,
    pub tau: Vec<Option<usize>>,
    pub tau_inv: Vec<Option<usize>>,
    pub proj: Vec<usize>,
    pub inj: Vec<usize>,
    pub simple: Vec<usize>,
    hom: Vec<Vec<i64>>,
    by_dim: HashMap<Vec<i64>, usize>,
    proj_inverse: Vec<Vec<BigInt>>,
}

const MAX_LEVELS: usize = 64;

pub fn knit_ar_quiver(q: &Quiver) -> Result<ARQuiver> {
    let n = q.n();
    let paths = q.path_counts()?;
    let topo = q.topological_order()?;
    let proj_dims: Vec<Vec<i64>> = (0..n).map(|i| paths[i].clone()).collect();
    let inj_dims: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| paths[j][i]).collect()).collect();
    let inj_lookup: HashMap<Vec<i64>, usize> = inj_dims.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();

    let mut indecs: Vec<Indec> = Vec::new();
    let mut at: HashMap<(usize, usize), usize> = HashMap::new();
    let mut arrows = Vec::new();
    let within_level: Vec<usize> = topo.iter().rev().copied().collect();
    let mut alive = vec![true; n];
    for level in 0..MAX_LEVELS {
        if !alive.iter().any(|&a| a) {
            break;
        }
        for &i in &within_level {
            if !alive[i] {
                continue;
            }
            let dim = if level == 0 {
                proj_dims[i].clone()
            } else {
                let prev = at[&(level - 1, i)];
                let mut d: Vec<i64> = indecs[prev].dim.iter().map(|x| -x).collect();
                for &(a, b) in &q.arrows {
                    let other = if b == i { at.get(&(level - 1, a)) } else if a == i { at.get(&(level, b)) } else { None };
                    if let Some(&o) = other {
                        for t in 0..n {
                            d[t] += indecs[o].dim[t];
                        }
                    }
                }
                d
            };
            if dim.iter().any(|&x| x < 0) || dim.iter().all(|&x| x == 0) {
                return Err(Error::NotDynkin(format!("knitting produced {dim:?}")));
            }
            let idx = indecs.len();
            let injective = inj_lookup.get(&dim).copied();
            indecs.push(Indec {
                dim,
                level,
                vertex: i,
                projective: if level == 0 { Some(i) } else { None },
                injective,
            });
            at.insert((level, i), idx);
            for &(a, b) in &q.arrows {
                // (m,b) → (m,a) and (m−1,a) → (m,b) for every arrow a → b.
                if a == i {
                    if let Some(&o) = at.get(&(level, b)) {
                        arrows.push((o, idx));
                    }
                }
                if b == i && level > 0 {
                    if let Some(&o) = at.get(&(level - 1, a)) {
                        arrows.push((o, idx));
                    }
                }
            }
            if injective.is_some() {
                alive[i] = false;
            }
        }
        if level + 1 == MAX_LEVELS && alive.iter().any(|&a| a) {
            return Err(Error::NotDynkin("knitting did not terminate".into()));
        }
    }
    let count = indecs.len();
    let mut preds = vec![Vec::new(); count];
    let mut succs = vec![Vec::new(); count];
    for &(a, b) in &arrows {
        succs[a].push(b);
        preds[b].push(a);
    }
    let mut tau = vec![None; count];
    let mut tau_inv = vec![None; count];
    for (idx, x) in indecs.iter().enumerate() {
        if x.level > 0 {
            let t = at[&(x.level - 1, x.vertex)];
            tau[idx] = Some(t);
            tau_inv[t] = Some(idx);
        }
    }
    let mut by_dim = HashMap::new();
    for (idx, x) in indecs.iter().enumerate() {
        if by_dim.insert(x.dim.clone(), idx).is_some() {
            return Err(Error::NotDynkin(format!("dimension vector {:?} repeated", x.dim)));
        }
    }
    let find = |d: &Vec<i64>| by_dim.get(d).copied().ok_or_else(|| Error::NotDynkin(format!("missing {d:?}")));
    let proj = proj_dims.iter().map(find).collect::<Result<Vec<_>>>()?;
    let inj = inj_dims.iter().map(find).collect::<Result<Vec<_>>>()?;
    let simple = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            find(&e)
        })
        .collect::<Result<Vec<_>>>()?;
    let pmat: Vec<Vec<BigInt>> = proj_dims.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let proj_inverse = integer_inverse(&pmat)?;
    let mut ar = ARQuiver {
        quiver: q.clone(),
        indecs,
        arrows,
        preds,
        succs,
        tau,
        tau_inv,
        proj,
        inj,
        simple,
        hom: Vec::new(),
        by_dim,
        proj_inverse,
    };
    ar.hom = (0..count).map(|m| ar.hammock(m)).collect();
    Ok(ar)
}

impl ARQuiver {
    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn find(&self, dim: &[i64]) -> Option<usize> {
        self.by_dim.get(dim).copied()
    }

    fn hammock(&self, m: usize) -> Vec<i64> {
        let mut h = vec![0i64; self.len()];
        for z in m..self.len() {
            let mut v: i64 = self.preds[z].iter().map(|&y| h[y]).sum();
            if let Some(t) = self.tau[z] {
                v -= h[t];
            }
            if z == m {
                v += 1;
            }
            h[z] = v.max(0);
        }
        h
    }

    pub fn hom(&self, m: usize, n: usize) -> i64 {
        self.hom[m][n]
    }

    /// dim Ext¹(M, N) = dim Hom(N, τM).
    pub fn ext(&self, m: usize, n: usize) -> i64 {
        self.tau[m].map_or(0, |t| self.hom[n][t])
    }

    pub fn euler(&self, m: usize, n: usize) -> i64 {
        self.quiver.euler_form(&self.indecs[m].dim, &self.indecs[n].dim)
    }

    pub fn tau_power(&self, idx: usize, k: usize) -> Option<usize> {
        (0..k).try_fold(idx, |x, _| self.tau[x])
    }

    /// Multiplicities of the simple tops.
    pub fn top(&self, m: usize) -> Vec<i64> {
        self.simple.iter().map(|&s| self.hom(m, s)).collect()
    }

    /// [P₀] − [P₁] for a minimal projective presentation, i.e. dim M in the basis of dim P(i).
    pub fn g_vector(&self, m: usize) -> Vec<i64> {
        let d = &self.indecs[m].dim;
        let n = d.len();
        (0..n)
            .map(|i| {
                let s: BigInt = (0..n).map(|t| BigInt::from(d[t]) * &self.proj_inverse[t][i]).sum();
                i64::try_from(s).expect("small g-vector")
            })
            .collect()
    }

    /// Projective cover multiplicities and the kernel's projective decomposition.
    pub fn presentation(&self, m: usize) -> (Vec<i64>, Vec<i64>) {
        let p0 = self.top(m);
        let g = self.g_vector(m);
        let p1 = p0.iter().zip(&g).map(|(a, b)| a - b).collect();
        (p0, p1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.quiver.labels,
            "indecomposables": self.indecs.iter().map(|x| json!({
                "dim": x.dim, "level": x.level, "orbit": self.quiver.labels[x.vertex],
                "projective": x.projective.map(|v| &self.quiver.labels[v]),
                "injective": x.injective.map(|v| &self.quiver.labels[v]),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows,
            "hom": self.hom,
        })
    }

    /// DOT with one rank per level; `label` names each vertex.
    pub fn to_dot(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
        let max_level = self.indecs.iter().map(|x| x.level).max().unwrap_or(0);
        for level in 0..=max_level {
            out.push_str("  { rank=same;");
            for (i, x) in self.indecs.iter().enumerate() {
                if x.level == level {
                    out.push_str(&format!(" v{i}"));
                }
            }
            out.push_str(" }\n");
        }
        for i in 0..self.len() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", label(i)));
        }
        for &(a, b) in &self.arrows {
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
        for (i, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!("  v{i} -> v{t} [style=dashed, constraint=false];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Σ_i w(i) d_i e_{F(i)}.
pub fn dimproj(spec: &FoldingSpec, d: &[i64]) -> Result<Vec<AlgReal>> {
    if d.len() != spec.unfolded_rank() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {} vertices", d.len(), spec.unfolded_rank())));
    }
    let zero = spec.weights[0].zero_like();
    let mut out = vec![zero; spec.folded_rank()];
    for (i, &x) in d.iter().enumerate() {
        if x != 0 {
            let b = spec.vertex_map[i];
            out[b] = out[b].add(&spec.weights[i].scale_int(&BigInt::from(x)));
        }
    }
    Ok(out)
}

pub fn coxeter_type(kind: FoldingKind) -> Result<CoxeterType> {
    match kind {
        FoldingKind::I2(m) => Ok(CoxeterType::I2(m)),
        FoldingKind::H3 => Ok(CoxeterType::H3),
        FoldingKind::H4 => Ok(CoxeterType::H4),
        FoldingKind::F4E6 => Err(Error::InvalidParameter("F4 is not a non-crystallographic folding".into())),
    }
}

/// A column {θ_k·M : k < n}: the modules τ^m I(v) for v running through one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub block: usize,
    pub shift: usize,
    pub members: Vec<usize>,
}

pub type IsoMultiset = BTreeMap<usize, u64>;

/// The module category of a standard folding with the Chebyshev columns resolved.
#[derive(Clone, Debug)]
pub struct FoldedModules {
    pub spec: FoldingSpec,
    pub ar: ARQuiver,
    pub roots: RootSet,
    pub rank: usize,
    pub projected: Vec<Vec<AlgReal>>,
    pub columns: Vec<Column>,
    /// (column, position k) of every indecomposable.
    pub column_of: Vec<(usize, usize)>,
}

impl FoldedModules {
    pub fn new(spec: &FoldingSpec) -> Result<FoldedModules> {
        let rank = spec
            .cheb_rank
            .ok_or_else(|| Error::InvalidParameter(format!("{} has no Chebyshev columns", spec.kind)))?;
        let roots = generate_roots(coxeter_type(spec.kind)?)?;
        let q = Quiver::from_exchange(&spec.unfolded)?;
        let ar = knit_ar_quiver(&q)?;
        let projected = ar.indecs.iter().map(|x| dimproj(spec, &x.dim)).collect::<Result<Vec<_>>>()?;
        let mut slots: BTreeMap<(usize, usize), Vec<Option<usize>>> = BTreeMap::new();
        let mut seen = vec![false; ar.len()];
        for v in 0..q.n() {
            let mut cur = Some(ar.inj[v]);
            let mut shift = 0;
            while let Some(x) = cur {
                let e = slots.entry((spec.vertex_map[v], shift)).or_insert_with(|| vec![None; rank]);
                e[spec.block_position(v)] = Some(x);
                seen[x] = true;
                cur = ar.tau[x];
                shift += 1;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotDynkin("an indecomposable lies in no injective τ-orbit".into()));
        }
        let mut columns = Vec::new();
        let mut column_of = vec![(0, 0); ar.len()];
        for ((block, shift), members) in slots {
            let members: Vec<usize> = members
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidParameter(format!("column ({block}, {shift}) is incomplete")))?;
            for (k, &x) in members.iter().enumerate() {
                column_of[x] = (columns.len(), k);
            }
            columns.push(Column { block, shift, members });
        }
        // Order columns by the position of their generators in the AR quiver.
        let mut order: Vec<usize> = (0..columns.len()).collect();
        order.sort_by_key(|&c| columns[c].members[0]);
        let mut renum = vec![0; columns.len()];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new;
        }
        let columns: Vec<Column> = order.iter().map(|&c| columns[c].clone()).collect();
        for c in column_of.iter_mut() {
            c.0 = renum[c.0];
        }
        Ok(FoldedModules { spec: spec.clone(), ar, roots, rank, projected, columns, column_of })
    }

    pub fn generator(&self, column: usize) -> usize {
        self.columns[column].members[0]
    }

    /// Column generators, in AR order.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.columns.len()).map(|c| self.generator(c)).collect()
    }

    pub fn is_generator(&self, idx: usize) -> bool {
        self.column_of[idx].1 == 0
    }

    /// r · M on iso-classes, for r with non-negative coefficients.
    pub fn semiring_act(&self, r: &ChebElem, idx: usize) -> Result<IsoMultiset> {
        if r.rank() != self.rank {
            return Err(Error::RankMismatch(r.rank(), self.rank));
        }
        if !r.is_semiring() {
            return Err(Error::NotInSemiring);
        }
        let (col, l) = self.column_of[idx];
        let prod = r.mul(&ChebElem::theta(self.rank, l)?)?;
        let mut out = IsoMultiset::new();
        for (k, c) in prod.coeffs().iter().enumerate() {
            let c = u64::try_from(c).map_err(|_| Error::NotInSemiring)?;
            if c > 0 {
                *out.entry(self.columns[col].members[k]).or_insert(0) += c;
            }
        }
        Ok(out)
    }

    pub fn act_multiset(&self, r: &ChebElem, m: &IsoMultiset) -> Result<IsoMultiset> {
        let mut out = IsoMultiset::new();
        for (&x, &c) in m {
            for (y, d) in self.semiring_act(r, x)? {
                *out.entry(y).or_insert(0) += c * d;
            }
        }
        Ok(out)
    }

    pub fn multiset_dimproj(&self, m: &IsoMultiset) -> Vec<AlgReal> {
        let zero = self.spec.weights[0].zero_like();
        let mut out = vec![zero; self.spec.folded_rank()];
        for (&x, &c) in m {
            for (o, p) in out.iter_mut().zip(&self.projected[x]) {
                *o = o.add(&p.scale_int(&BigInt::from(c)));
            }
        }
        out
    }

    /// All (j, α) with dimproj(M) = σ(θ_j)·α and α a positive root.
    pub fn decompositions(&self, idx: usize) -> Result<Vec<(usize, Vec<AlgReal>)>> {
        let mut out = Vec::new();
        for j in 0..self.rank {
            let s = ChebElem::theta(self.rank, j)?.sigma().inv()?;
            let alpha: Vec<AlgReal> = self.projected[idx].iter().map(|c| c.mul(&s)).collect();
            if alpha.iter().all(AlgReal::is_integral) && self.roots.is_positive_root(&alpha)? {
                out.push((j, alpha));
            }
        }
        Ok(out)
    }

    /// Reduced AR quiver: generators with valued arrows (r₁, r₂) between columns.
    pub fn reduced_ar_quiver(&self) -> Result<Vec<ValuedArrow>> {
        let mut map: BTreeMap<(usize, usize), (Vec<i64>, Vec<i64>)> = BTreeMap::new();
        for &(a, b) in &self.ar.arrows {
            let (ca, ka) = self.column_of[a];
            let (cb, kb) = self.column_of[b];
            let e = map.entry((ca, cb)).or_insert_with(|| (vec![0; self.rank], vec![0; self.rank]));
            if ka == 0 {
                e.0[kb] += 1;
            }
            if kb == 0 {
                e.1[ka] += 1;
            }
        }
        map.into_iter()
            .map(|((ca, cb), (r1, r2))| {
                Ok(ValuedArrow {
                    from: self.generator(ca),
                    to: self.generator(cb),
                    left: ChebElem::from_i64(self.rank, &r1)?,
                    right: ChebElem::from_i64(self.rank, &r2)?,
                })
            })
            .collect()
    }

    pub fn label(&self, idx: usize) -> String {
        let v: Vec<String> = self.projected[idx].iter().map(|c| c.to_string()).collect();
        format!("({})", v.join(", "))
    }

    pub fn folding_report(&self) -> Result<FoldingTheoremReport> {
        let mut rep = FoldingTheoremReport::default();
        // (a): weight-one injective rows.
        let mut row_roots = Vec::new();
        for v in 0..self.ar.quiver.n() {
            if !self.spec.is_weight_one(v) {
                continue;
            }
            let mut cur = Some(self.ar.inj[v]);
            while let Some(x) = cur {
                rep.weight_one_row_modules += 1;
                if !self.roots.is_positive_root(&self.projected[x])? {
                    rep.failures.push(format!("row module {} projects to a non-root", self.label(x)));
                }
                row_roots.push(self.projected[x].clone());
                cur = self.ar.tau[x];
            }
        }
        let mut distinct = row_roots.clone();
        distinct.sort_by_key(|v| format!("{v:?}"));
        distinct.dedup();
        rep.distinct_row_roots = distinct.len();
        rep.positive_roots = self.roots.positive.len();
        if distinct.len() != row_roots.len() || distinct.len() != rep.positive_roots {
            rep.failures.push(format!(
                "{} row modules give {} distinct roots of {}",
                row_roots.len(),
                distinct.len(),
                rep.positive_roots
            ));
        }
        // (b): w(j) dimproj(τ^m I(i)) = w(i) dimproj(τ^m I(j)) within each block.
        for block in &self.spec.blocks {
            for &i in block {
                for &j in block {
                    let mut m = 0;
                    loop {
                        let a = self.ar.tau_power(self.ar.inj[i], m);
                        let b = self.ar.tau_power(self.ar.inj[j], m);
                        match (a, b) {
                            (None, None) => break,
                            (Some(a), Some(b)) => {
                                rep.swap_checks += 1;
                                let lhs: Vec<AlgReal> = self.projected[a].iter().map(|c| c.mul(&self.spec.weights[j])).collect();
                                let rhs: Vec<AlgReal> = self.projected[b].iter().map(|c| c.mul(&self.spec.weights[i])).collect();
                                if lhs != rhs {
                                    rep.failures.push(format!("weight swap fails for vertices {i}, {j} at τ^{m}"));
                                }
                            }
                            _ => rep.failures.push(format!("τ-orbits of I({i}) and I({j}) differ in length")),
                        }
                        m += 1;
                    }
                }
            }
        }
        // (c): unique decomposition σ(θ_j)·α.
        for x in 0..self.ar.len() {
            let ds = self.decompositions(x)?;
            if ds.len() != 1 {
                rep.failures.push(format!("{} has {} decompositions", self.label(x), ds.len()));
                continue;
            }
            rep.decomposed += 1;
            let j = ds[0].0;
            rep.per_multiplier.resize(self.rank, 0);
            rep.per_multiplier[j] += 1;
            if j != self.column_of[x].1 {
                rep.failures.push(format!("{} decomposes with θ_{j} but sits at column position {}", self.label(x), self.column_of[x].1));
            }
        }
        Ok(rep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedArrow {
    pub from: usize,
    pub to: usize,
    pub left: ChebElem,
    pub right: ChebElem,
}

#[derive(Clone, Debug, Default)]
pub struct FoldingTheoremReport {
    pub weight_one_row_modules: usize,
    pub distinct_row_roots: usize,
    pub positive_roots: usize,
    pub swap_checks: usize,
    pub decomposed: usize,
    pub per_multiplier: Vec<usize>,
    pub failures: Vec<String>,
}

impl FoldingTheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weight_one_row_modules": self.weight_one_row_modules,
            "distinct_row_roots": self.distinct_row_roots,
            "positive_roots": self.positive_roots,
            "swap_checks": self.swap_checks,
            "decomposed": self.decomposed,
            "per_multiplier": self.per_multiplier,
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

/// Reference data for the A₄ → I₂(5) figure: each τ⁻-orbit of P(v), listed from the projective,
/// keyed by the vertex label. Entries are (a, b) meaning a + bφ as integer pairs per coordinate.
pub fn a4_reference_rows() -> Vec<(&'static str, Vec<[(i64, i64); 2]>)> {
    vec![
        ("3", vec![[(0, 0), (1, 0)], [(0, 1), (0, 1)], [(1, 0), (0, 0)]]),
        ("1", vec![[(0, 0), (0, 1)], [(1, 1), (1, 1)], [(0, 1), (0, 0)]]),
        ("0", vec![[(1, 0), (0, 1)], [(0, 1), (1, 0)]]),
        ("2", vec![[(0, 1), (1, 1)], [(1, 1), (0, 1)]]),
    ]
}

/// Compares the knitted A₄ quiver with the reference rows; returns the mismatches.
pub fn check_a4_figure() -> Result<(usize, Vec<String>)> {
    let spec = crate::unfolding::standard_folding(FoldingKind::I2(5))?;
    let fm = FoldedModules::new(&spec)?;
    let mut matched = 0;
    let mut bad = Vec::new();
    for (label, row) in a4_reference_rows() {
        let v = spec.unfolded.index_of(label).ok_or_else(|| Error::Parse(format!("no vertex {label}")))?;
        let mut cur = Some(fm.ar.proj[v]);
        for (pos, expected) in row.iter().enumerate() {
            let Some(x) = cur else {
                bad.push(format!("orbit of P({label}) ends before position {pos}"));
                break;
            };
            let want: Vec<AlgReal> = expected
                .iter()
                .map(|&(a, b)| AlgReal::from_i64_poly(5, &[a, b]))
                .collect::<Result<_>>()?;
            if fm.projected[x] == want {
                matched += 1;
            } else {
                bad.push(format!("P({label}) position {pos}: got {}", fm.label(x)));
            }
            cur = fm.ar.tau_inv[x];
        }
        if let Some(x) = cur {
            bad.push(format!("orbit of P({label}) continues to {}", fm.label(x)));
        }
    }
    Ok((matched, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unfolding::standard_folding;

    fn linear(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::new((0..n).map(|i| i.to_string()).collect(), arrows.to_vec()).unwrap()
    }

    #[test]
    fn a2_by_hand() {
        let ar = knit_ar_quiver(&linear(2, &[(0, 1)])).unwrap();
        let dims: Vec<_> = ar.indecs.iter().map(|x| x.dim.clone()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        let s1 = ar.find(&[0, 1]).unwrap();
        let p0 = ar.find(&[1, 1]).unwrap();
        let s0 = ar.find(&[1, 0]).unwrap();
        assert_eq!(ar.hom(s1, p0), 1);
        assert_eq!(ar.hom(p0, s0), 1);
        assert_eq!(ar.hom(s1, s0), 0);
        assert_eq!(ar.ext(s0, s1), 1);
        assert_eq!(ar.g_vector(s0), vec![1, -1]);
        assert_eq!(ar.presentation(s0), (vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn counts_and_euler() {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        let ar = knit_ar_quiver(&Quiver::from_exchange(&spec.unfolded).unwrap()).unwrap();
        assert_eq!(ar.len(), 30);
        for m in 0..ar.len() {
            assert_eq!(ar.hom(m, m), 1);
            for n in 0..ar.len() {
                assert_eq!(ar.hom(m, n) - ar.ext(m, n), ar.euler(m, n));
            }
        }
    }

    #[test]
    fn mesh_additivity() {
        let spec = standard_folding(FoldingKind::I2(7)).unwrap();
        let ar = knit_ar_quiver(&Quiver::from_exchange(&spec.unfolded).unwrap()).unwrap();
        assert_eq!(ar.len(), 21);
        for z in 0..ar.len() {
            if let Some(t) = ar.tau[z] {
                let (mut a, mut b) = (ar.succs[t].clone(), ar.preds[z].clone());
                a.sort();
                b.sort();
                assert_eq!(a, b);
                for v in 0..7.min(ar.indecs[z].dim.len()) {
                    let mid: i64 = ar.preds[z].iter().map(|&y| ar.indecs[y].dim[v]).sum();
                    assert_eq!(ar.indecs[z].dim[v] + ar.indecs[t].dim[v], mid);
                }
            }
        }
    }

    #[test]
    fn cyclic_quiver_is_rejected() {
        assert!(knit_ar_quiver(&linear(3, &[(0, 1), (1, 2), (2, 0)])).is_err());
    }

    #[test]
    fn a4_figure() {
        let (matched, bad) = check_a4_figure().unwrap();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(matched, 10);
    }

    #[test]
    fn folding_theorem_h3_and_i7() {
        for (kind, per) in [(FoldingKind::H3, vec![15, 15]), (FoldingKind::I2(7), vec![7, 7, 7])] {
            let spec = standard_folding(kind).unwrap();
            let fm = FoldedModules::new(&spec).unwrap();
            let rep = fm.folding_report().unwrap();
            assert!(rep.passed(), "{kind}: {:?}", rep.failures);
            assert_eq!(rep.per_multiplier, per);
            assert_eq!(fm.generators().len(), per[0]);
        }
    }

    #[test]
    fn folding_theorem_remaining_sizes() {
        for kind in [FoldingKind::I2(5), FoldingKind::I2(9), FoldingKind::H4] {
            let spec = standard_folding(kind).unwrap();
            let rep = FoldedModules::new(&spec).unwrap().folding_report().unwrap();
            assert!(rep.passed(), "{kind}: {:?}", &rep.failures[..rep.failures.len().min(3)]);
        }
    }

    #[test]
    fn action_examples() {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        let fm = FoldedModules::new(&spec).unwrap();
        let i1 = fm.ar.inj[spec.unfolded.index_of("1").unwrap()];
        let phi_i1 = fm.ar.inj[spec.unfolded.index_of("phi1").unwrap()];
        let phi = ChebElem::theta(2, 1).unwrap();
        let got = fm.semiring_act(&phi, phi_i1).unwrap();
        assert_eq!(got, IsoMultiset::from([(i1, 1), (phi_i1, 1)]));
        assert!(fm.semiring_act(&ChebElem::from_int(2, -1), i1).is_err());

        let spec = standard_folding(FoldingKind::I2(7)).unwrap();
        let fm = FoldedModules::new(&spec).unwrap();
        let g = fm.generator(0);
        let t1 = ChebElem::theta(3, 1).unwrap();
        let once = fm.semiring_act(&t1, g).unwrap();
        let twice = fm.act_multiset(&t1, &once).unwrap();
        let col = &fm.columns[0].members;
        assert_eq!(twice, IsoMultiset::from([(col[0], 1), (col[2], 1)]));
    }

    #[test]
    fn reduced_quiver_h3_has_phi_valuations() {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        let fm = FoldedModules::new(&spec).unwrap();
        let arrows = fm.reduced_ar_quiver().unwrap();
        let phi = ChebElem::theta(2, 1).unwrap();
        assert!(arrows.iter().any(|a| a.left == phi && a.right == phi));
        for a in &arrows {
            assert!(fm.is_generator(a.from) && fm.is_generator(a.to));
        }
    }
}
