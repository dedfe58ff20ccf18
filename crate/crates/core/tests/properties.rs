use coxfold::chebring::{reg_rep_elem, AlgReal, ChebElem};
use coxfold::exchange::ExchangeMatrix;
use coxfold::repcat::FoldedModules;
use coxfold::rootsys::{generate_roots, CoxeterType};
use coxfold::scalar::{mat_mul, Matrix};
use coxfold::tropical::{GSeed, Seed};
use coxfold::unfolding::{check_weighted_unfolding, standard_folding, FoldingKind};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cheb(n: usize) -> impl Strategy<Value = ChebElem> {
    prop::collection::vec(-4i64..=4, n).prop_map(move |c| ChebElem::from_i64(n, &c).unwrap())
}

fn cheb_pair() -> impl Strategy<Value = (ChebElem, ChebElem, ChebElem)> {
    (2usize..=6).prop_flat_map(|n| (cheb(n), cheb(n), cheb(n)))
}

/// U_k(cos θ) = sin((k+1)θ)/sin θ.
fn u_numeric(k: usize, n: usize) -> f64 {
    let th = std::f64::consts::PI / (2 * n + 1) as f64;
    ((k + 1) as f64 * th).sin() / th.sin()
}

fn sigma_numeric(a: &ChebElem) -> f64 {
    a.coeffs().iter().enumerate().map(|(k, c)| c.to_string().parse::<f64>().unwrap() * u_numeric(k, a.rank())).sum()
}

proptest! {
    #[test]
    fn chebyshev_ring_axioms((a, b, c) in cheb_pair()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn regular_representation_is_multiplicative((a, b, _) in cheb_pair()) {
        let lhs = reg_rep_elem(&a.mul(&b).unwrap());
        prop_assert_eq!(lhs, mat_mul(&reg_rep_elem(&a), &reg_rep_elem(&b)));
    }

    #[test]
    fn sigma_matches_trigonometry((a, b, _) in cheb_pair()) {
        let p = a.mul(&b).unwrap();
        prop_assert!((p.sigma().to_f64() - sigma_numeric(&a) * sigma_numeric(&b)).abs() < 1e-8);
        prop_assert_eq!(p.sigma(), a.sigma().mul(&b.sigma()));
    }

    #[test]
    fn algreal_sign_and_inverse(m in 3u32..14, cs in prop::collection::vec(-6i64..=6, 1..5)) {
        let x = AlgReal::from_i64_poly(m, &cs).unwrap();
        let v = x.to_f64();
        if v.abs() > 1e-6 {
            prop_assert_eq!(x.sign() as f64, v.signum());
            prop_assert_eq!(x.mul(&x.inv().unwrap()), x.int_like(1));
        }
        let (lo, hi) = x.enclose(40);
        prop_assert!(lo <= hi);
    }

    #[test]
    fn mutation_is_an_involution(entries in prop::collection::vec(-3i64..=3, 10), k in 0usize..5) {
        let mut m: Matrix<BigInt> = vec![vec![BigInt::from(0); 5]; 5];
        let mut it = entries.into_iter();
        for i in 0..5 {
            for j in i + 1..5 {
                let v = it.next().unwrap();
                m[i][j] = BigInt::from(v);
                m[j][i] = BigInt::from(-v);
            }
        }
        let b = ExchangeMatrix::unlabeled(m).unwrap();
        let once = b.mutate(k).unwrap();
        prop_assert!(once.is_skew_symmetric());
        prop_assert_eq!(once.mutate(k).unwrap(), b);
    }

    #[test]
    fn unfolding_survives_random_words(word in prop::collection::vec(0usize..3, 0..25)) {
        let spec = standard_folding(FoldingKind::H3).unwrap();
        prop_assert!(check_weighted_unfolding(&spec, &[word]).unwrap().passed());
    }

    #[test]
    fn folded_seeds_keep_invariants(word in prop::collection::vec(0usize..4, 0..30)) {
        let spec = standard_folding(FoldingKind::H4).unwrap();
        let roots = generate_roots(CoxeterType::H4).unwrap();
        let mut s = GSeed::initial(spec.folded.entries().clone()).unwrap();
        for k in word {
            s = s.mutate(k).unwrap();
        }
        prop_assert_eq!(&s.g, &s.seed.g_matrix().unwrap());
        for k in 0..4 {
            prop_assert!(s.seed.c_sign(k).is_some());
            prop_assert!(roots.is_root(&s.seed.c_vector(k)).unwrap());
        }
        let back = s.seed.mutate(0).unwrap().mutate(0).unwrap();
        prop_assert_eq!(back.c, s.seed.c.clone());
    }
}

#[test]
fn action_is_associative_on_iso_classes() {
    for kind in [FoldingKind::H3, FoldingKind::I2(7), FoldingKind::I2(9)] {
        let spec = standard_folding(kind).unwrap();
        let fm = FoldedModules::new(&spec).unwrap();
        let n = fm.rank;
        for r in 0..n {
            for s in 0..n {
                let tr = ChebElem::theta(n, r).unwrap();
                let ts = ChebElem::theta(n, s).unwrap();
                let rs = tr.mul(&ts).unwrap();
                for m in 0..fm.ar.len() {
                    let inner = fm.semiring_act(&ts, m).unwrap();
                    let lhs = fm.act_multiset(&tr, &inner).unwrap();
                    let rhs = fm.semiring_act(&rs, m).unwrap();
                    assert_eq!(lhs, rhs);
                    let scaled: Vec<AlgReal> = fm.projected[m].iter().map(|c| c.mul(&rs.sigma())).collect();
                    assert_eq!(fm.multiset_dimproj(&rhs), scaled);
                }
            }
        }
    }
}

/// Independent count: numeric reflection closure in the Euclidean realization.
fn numeric_root_count(ty: CoxeterType) -> usize {
    let r = ty.rank();
    let mut gram = vec![vec![0.0f64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let m = ty.coxeter_label(i, j) as f64;
            gram[i][j] = -(std::f64::consts::PI / m).cos();
        }
    }
    let mut roots: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u8 as f64).collect()).collect();
    let mut frontier = roots.clone();
    while let Some(v) = frontier.pop() {
        for i in 0..r {
            let pair: f64 = (0..r).map(|j| 2.0 * gram[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pair;
            if !roots.iter().any(|u| u.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-9)) {
                roots.push(w.clone());
                frontier.push(w);
            }
        }
    }
    roots.len()
}

#[test]
fn root_counts_match_numeric_closure() {
    for ty in [CoxeterType::I2(5), CoxeterType::I2(7), CoxeterType::I2(9), CoxeterType::H3, CoxeterType::H4] {
        let exact = generate_roots(ty).unwrap();
        assert_eq!(exact.roots.len(), numeric_root_count(ty), "{ty}");
        for r in &exact.roots {
            for i in 0..ty.rank() {
                assert!(exact.is_root(&exact.reflect(i, r)).unwrap());
            }
        }
    }
}

#[test]
fn seed_walk_round_trip() {
    let spec = standard_folding(FoldingKind::I2(7)).unwrap();
    let s = Seed::initial(spec.folded.entries().clone()).unwrap();
    let word = [0, 1, 0, 1, 0, 1, 0];
    let mut t = s.clone();
    for &k in &word {
        t = t.mutate(k).unwrap();
    }
    for &k in word.iter().rev() {
        t = t.mutate(k).unwrap();
    }
    assert_eq!(t.g_matrix().unwrap(), s.c);
}
