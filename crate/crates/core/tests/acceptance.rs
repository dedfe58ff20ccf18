//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use coxfold::chebring::{basis_product, reg_rep, reg_rep_elem, sigma_theta, AlgReal, ChebElem};
use coxfold::clustercat::{tilting_report, ClusterCategory, TiltingReport};
use coxfold::repcat::{check_a4_figure, knit_ar_quiver, FoldedModules, Quiver};
use coxfold::rootsys::e_f;
use coxfold::scalar::mat_mul;
use coxfold::tropical::{enumerate_seeds, verify_walks, WalkReport};
use num_bigint::BigInt;
use coxfold::unfolding::{examples, standard_folding, verify_unfolding, FoldingKind, FoldingSpec};

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failed += 1;
        }
        println!("criterion {id:>2} {} {name} ({took:.2?}): {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn spec(kind: FoldingKind) -> FoldingSpec {
    standard_folding(kind).expect("standard folding")
}

/// The product rule written out directly: Σ_{j=0}^{l} θ_{k−l+2j}, indices ≥ n reflected to 2n−1−i.
fn rule_oracle(k: usize, l: usize, n: usize) -> Vec<i64> {
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    let mut out = vec![0; n];
    for j in 0..=l {
        let i = k - l + 2 * j;
        out[if i >= n { 2 * n - 1 - i } else { i }] += 1;
    }
    out
}

fn chebyshev_suite() -> Outcome {
    let mut products = 0;
    for n in 2..=6 {
        for k in 0..n {
            for l in 0..n {
                let p = ChebElem::theta(n, k).unwrap().mul(&ChebElem::theta(n, l).unwrap()).unwrap();
                let want = ChebElem::from_i64(n, &rule_oracle(k, l, n)).unwrap();
                check(p == want, format!("θ{k}θ{l} at n={n}: {p}"))?;
                let mut from_basis = vec![0; n];
                for i in basis_product(k, l, n) {
                    from_basis[i] += 1;
                }
                check(from_basis == rule_oracle(k, l, n), format!("basis rule θ{k}θ{l} at n={n}"))?;
                let big = |m: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> { m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect() };
                let lhs = mat_mul(&big(reg_rep(k, n).unwrap()), &big(reg_rep(l, n).unwrap()));
                let rhs = reg_rep_elem(&p);
                check(lhs == rhs, format!("ρ(θ{k})ρ(θ{l}) at n={n}"))?;
                products += 1;
            }
        }
    }
    let holds = |n| sigma_theta(n, 3) == sigma_theta(n, 0).add(&sigma_theta(n, 1));
    check(holds(4), "σ(θ3) = σ(θ0) + σ(θ1) fails at n=4")?;
    check(!holds(3), "relation unexpectedly holds at n=3")?;
    Ok(format!("{products} products and ρ-images match; σ relation holds at n=4 only"))
}

fn unfolding_suite() -> Outcome {
    let specs = vec![
        ("F4/E6", spec(FoldingKind::F4E6)),
        ("I2(5)/A4", examples::a4_h2_spec().map_err(|e| e.to_string())?),
        ("G2/A5", examples::a5_g2_spec().map_err(|e| e.to_string())?),
        ("H3/D6", spec(FoldingKind::H3)),
        ("H4/E8", spec(FoldingKind::H4)),
    ];
    let mut parts = Vec::new();
    for (name, s) in specs {
        let r = verify_unfolding(&s, 6, 200, 20, 2024).map_err(|e| e.to_string())?;
        check(r.passed(), format!("{name}: {:?}", r.failures.first()))?;
        parts.push(format!("{name} {} words", r.words_checked));
    }
    Ok(parts.join(", "))
}

fn folding_theorem() -> Outcome {
    let mut parts = Vec::new();
    for (kind, roots) in [(FoldingKind::I2(5), 5), (FoldingKind::I2(7), 7), (FoldingKind::I2(9), 9), (FoldingKind::H3, 15), (FoldingKind::H4, 60)] {
        let fm = FoldedModules::new(&spec(kind)).map_err(|e| e.to_string())?;
        let rep = fm.folding_report().map_err(|e| e.to_string())?;
        check(rep.passed(), format!("{kind}: {:?}", rep.failures.first()))?;
        check(rep.distinct_row_roots == roots, format!("{kind}: {} row roots", rep.distinct_row_roots))?;
        parts.push(format!("{kind} {}/{}", rep.distinct_row_roots, fm.ar.len()));
    }
    Ok(parts.join(", "))
}

fn roots_of_unity() -> Outcome {
    let mut checked = 0;
    for n in 2..=4usize {
        let s = spec(FoldingKind::I2((2 * n + 1) as u32));
        let fm = FoldedModules::new(&s).map_err(|e| e.to_string())?;
        let th = std::f64::consts::PI / (2 * n + 1) as f64;
        let v0 = s.unfolded.index_of("0").unwrap();
        let vl = s.unfolded.index_of(&(2 * n - 1).to_string()).unwrap();
        let cases = (0..=n).map(|m| (v0, m, 2 * m)).chain((0..n).map(|m| (vl, m, 2 * m + 1)));
        for (v, m, mult) in cases {
            let x = fm.ar.tau_power(fm.ar.inj[v], m).ok_or(format!("τ^{m} I({v}) missing at n={n}"))?;
            let (a, b) = e_f(&fm.projected[x], n, 80).map_err(|e| e.to_string())?;
            let angle = mult as f64 * th;
            check(a.within(angle.cos(), 1e-9) && b.within(angle.sin(), 1e-9), format!("n={n} m={m}: ({a}, {b})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} planar images within 1e-9"))
}

fn a4_figure() -> Outcome {
    let (matched, bad) = check_a4_figure().map_err(|e| e.to_string())?;
    check(bad.is_empty(), format!("{bad:?}"))?;
    let fm = FoldedModules::new(&spec(FoldingKind::I2(5))).map_err(|e| e.to_string())?;
    let v = |a: i64, b: i64| AlgReal::from_i64_poly(5, &[a, b]).unwrap();
    let listed: BTreeSet<String> = [
        [v(1, 0), v(0, 0)], [v(0, 1), v(0, 1)], [v(0, 0), v(1, 0)], [v(1, 1), v(0, 1)], [v(0, 1), v(1, 1)],
        [v(0, 1), v(0, 0)], [v(1, 1), v(1, 1)], [v(0, 0), v(0, 1)], [v(0, 1), v(1, 0)], [v(1, 0), v(0, 1)],
    ]
    .iter()
    .map(|p| format!("{p:?}"))
    .collect();
    let ours: BTreeSet<String> = fm.projected.iter().map(|p| format!("{p:?}")).collect();
    check(ours == listed, "projected set differs from the figure")?;
    Ok(format!("{matched}/10 positions match"))
}

fn hom_ext() -> Outcome {
    let mut parts = Vec::new();
    for (name, kind) in [("A4", FoldingKind::I2(5)), ("A6", FoldingKind::I2(7)), ("D6", FoldingKind::H3), ("E8", FoldingKind::H4)] {
        let q = Quiver::from_exchange(&spec(kind).unfolded).map_err(|e| e.to_string())?;
        let ar = knit_ar_quiver(&q).map_err(|e| e.to_string())?;
        let mut pairs = 0;
        for m in 0..ar.len() {
            check(ar.hom(m, m) == 1, format!("{name}: End of {m} is not a field"))?;
            for n in 0..ar.len() {
                check(ar.hom(m, n) - ar.ext(m, n) == ar.euler(m, n), format!("{name}: pair ({m},{n})"))?;
                pairs += 1;
            }
        }
        parts.push(format!("{name} {} modules/{pairs} pairs", ar.len()));
    }
    Ok(parts.join(", "))
}

fn tilting(reports: &mut Vec<TiltingReport>) -> Outcome {
    let mut parts = Vec::new();
    for (kind, expected) in [(FoldingKind::I2(7), 9), (FoldingKind::H3, 32), (FoldingKind::H4, 280)] {
        let s = spec(kind);
        let cat = ClusterCategory::new(&s).map_err(|e| e.to_string())?;
        let (rep, _) = tilting_report(&cat, kind == FoldingKind::I2(7)).map_err(|e| e.to_string())?;
        check(rep.structure_passed(), format!("{kind}: {:?}", rep.messages))?;
        check(rep.tilting_objects == expected, format!("{kind}: {} objects", rep.tilting_objects))?;
        check(cat.maximal_rigid_sets().len() == rep.tilting_objects, format!("{kind}: enumeration not stable"))?;
        // Independent count: clusters of the folded tropical pattern.
        let seeds = enumerate_seeds(s.folded.entries(), 100_000).map_err(|e| e.to_string())?;
        check(!seeds.cap_reached && seeds.unlabeled.len() == expected, format!("{kind}: {} tropical clusters", seeds.unlabeled.len()))?;
        parts.push(format!("{kind} {} objects, {} almost complete", rep.tilting_objects, rep.almost_complete));
        reports.push(rep);
    }
    Ok(parts.join(", "))
}

fn walks(reports: &mut Vec<WalkReport>) -> Outcome {
    let mut parts = Vec::new();
    for (kind, depth) in [(FoldingKind::H3, 8), (FoldingKind::I2(7), 8), (FoldingKind::H4, 6)] {
        let rep = verify_walks(&spec(kind), depth, 500, 30, 7).map_err(|e| e.to_string())?;
        parts.push(format!("{kind} {} edges", rep.edges));
        reports.push(rep);
    }
    let bad: Vec<_> = reports.iter().filter(|r| !r.cube_passed()).map(|r| format!("{}: {:?}", r.kind, r.messages)).collect();
    check(bad.is_empty(), bad.join("; "))?;
    let faces: usize = reports.iter().map(|r| r.face_checks.iter().sum::<usize>()).sum();
    Ok(format!("{}, {faces} face checks", parts.join(", ")))
}

fn main() {
    let mut suite = Suite { failed: 0 };
    let sec = Duration::from_secs;
    suite.run(1, "chebyshev ring", sec(1), chebyshev_suite);
    suite.run(2, "weighted unfoldings", sec(60), unfolding_suite);
    suite.run(3, "folding theorem", sec(10), folding_theorem);
    suite.run(4, "planar images of injective rows", sec(10), roots_of_unity);
    suite.run(5, "A4 figure", sec(10), a4_figure);
    suite.run(6, "hom/ext tables", sec(30), hom_ext);
    let mut tilt = Vec::new();
    suite.run(7, "tilting objects", sec(300), || tilting(&mut tilt));
    let mut walk = Vec::new();
    suite.run(8, "compatibility cube", sec(120), || walks(&mut walk));
    suite.run(9, "c-vectors are sign-coherent roots", sec(1), || {
        check(!walk.is_empty(), "no walks ran")?;
        let bad: Vec<_> = walk.iter().filter(|r| !r.roots_passed()).map(|r| format!("{}: {:?}", r.kind, r.messages)).collect();
        check(bad.is_empty(), bad.join("; "))?;
        Ok(format!("{} c-vectors", walk.iter().map(|r| r.c_vectors).sum::<usize>()))
    });
    suite.run(10, "C-matrix blocks and determinants", sec(1), || {
        check(!walk.is_empty(), "no walks ran")?;
        let bad: Vec<_> = walk.iter().filter(|r| !r.blocks_passed()).map(|r| format!("{}: {:?}", r.kind, r.messages)).collect();
        check(bad.is_empty(), bad.join("; "))?;
        Ok(format!("{} seeds", walk.iter().map(|r| r.block_checks).sum::<usize>()))
    });
    suite.run(11, "tilting G-matrices", sec(1), || {
        check(tilt.len() == 3, "tilting reports missing")?;
        let bad: Vec<_> = tilt.iter().filter(|r| !r.g_passed()).map(|r| r.to_json().to_string()).collect();
        check(bad.is_empty(), bad.join("; "))?;
        let i7 = &tilt[0];
        Ok(format!(
            "d_F(G_hat) = G' for {} objects; I2(7) set equal to tropical: {}",
            tilt.iter().map(|r| r.d_f_matches).sum::<usize>(),
            i7.tropical_set_equal == Some(true)
        ))
    });
    if suite.failed > 0 {
        println!("acceptance: {} criteria failed", suite.failed);
        std::process::exit(1);
    }
    println!("acceptance: all 11 criteria passed");
}
