use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qspheres::error::Error;
use qspheres::opalg::{
    adjoint_residual, apply, evaluate_word, materialize, merge_terms, relation_residual,
    sup_decay_ratio, weighted_trace, word_radius, AlgebraTag, AlgebraWord, GeneratorSet, Label,
    SparseKernel, SparseMatrix, TruncatedBasis,
};
use qspheres::qcore::HalfInt;

const TAG: AlgebraTag = AlgebraTag::Generic;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn lab(k: i32) -> Label {
    Label::new(TAG, &[k])
}

fn line_basis(n: i32) -> TruncatedBasis {
    TruncatedBasis::new(TAG, HalfInt::from_int(n), (0..=n).map(lab))
}

/// Weighted shift `|k⟩ -> w(k) |k+1⟩` on `ℓ²(ℕ)`.
fn shift(w: fn(i32) -> f64) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        let k = v.comps[0];
        out.push((lab(k + 1), c(w(k))));
    })
}

/// Adjoint of [`shift`]: `|k⟩ -> w(k-1) |k-1⟩`, zero on `|0⟩`.
fn shift_star(w: fn(i32) -> f64) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        let k = v.comps[0];
        if k > 0 {
            out.push((lab(k - 1), c(w(k - 1))));
        }
    })
}

/// Dense matrix of a kernel on `|0⟩..|n⟩`, built by applying it column by column.
fn dense(k: &SparseKernel, n: i32) -> Vec<Vec<C64>> {
    let dim = (n + 1) as usize;
    let mut m = vec![vec![c(0.0); dim]; dim];
    for j in 0..=n {
        for (t, v) in k.apply(&lab(j)).unwrap() {
            let i = t.comps[0];
            if (0..=n).contains(&i) {
                m[i as usize][j as usize] += v;
            }
        }
    }
    m
}

fn dense_mul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Kernel with a random banded matrix: `|k⟩ -> Σ_d coef[d][k mod 5] |k+d-1⟩`.
fn banded(coef: Vec<[f64; 5]>) -> SparseKernel {
    SparseKernel::new(TAG, 2, move |v, out| {
        let k = v.comps[0];
        for (d, row) in coef.iter().enumerate() {
            let t = k + d as i32 - 1;
            if t >= 0 {
                out.push((lab(t), c(row[(k % 5) as usize])));
            }
        }
    })
}

fn banded_strategy() -> impl Strategy<Value = SparseKernel> {
    prop::collection::vec(prop::array::uniform5(-2.0f64..2.0), 3).prop_map(banded)
}

#[test]
fn zero_and_identity_kernels() {
    let v = lab(3);
    assert!(apply(&SparseKernel::zero(TAG), &v).unwrap().is_empty());
    assert_eq!(
        apply(&SparseKernel::identity(TAG), &v).unwrap(),
        vec![(v.clone(), c(1.0))]
    );
}

#[test]
fn apply_rejects_foreign_labels() {
    let v = Label::new(AlgebraTag::Podles, &[1, 1, 0]);
    match apply(&SparseKernel::identity(TAG), &v) {
        Err(Error::WrongAlgebra { expected, found }) => {
            assert_eq!(expected, TAG);
            assert_eq!(found, AlgebraTag::Podles);
        }
        other => panic!("expected WrongAlgebra, got {other:?}"),
    }
}

#[test]
fn compose_applies_right_factor_first() {
    let a = shift(|k| (k + 1) as f64);
    let b = shift_star(|_| 1.0);
    let ab = a.compose(&b);
    let n = 6;
    let expect = dense_mul(&dense(&a, n + 1), &dense(&b, n + 1));
    let got = dense(&ab, n);
    for i in 0..=n as usize {
        for j in 0..=n as usize {
            assert!((got[i][j] - expect[i][j]).norm() < 1e-14, "({i},{j})");
        }
    }
}

#[test]
fn materialized_adjoint_matches_dense_conjugate_transpose() {
    let k = SparseKernel::new(TAG, 2, |v, out| {
        let j = v.comps[0];
        out.push((lab(j + 1), C64::new(j as f64, 1.0)));
        out.push((lab(j), C64::new(0.0, -(j as f64))));
    });
    let n = 5;
    let basis = line_basis(n);
    let m = materialize(&k, &basis);
    let d = dense(&k, n);
    let adj = m.adjoint();
    for i in 0..=n as usize {
        for j in 0..=n as usize {
            assert_eq!(m.get(i, j), d[i][j]);
            assert_eq!(adj.get(i, j), d[j][i].conj());
        }
    }
}

#[test]
fn unilateral_shift_relation_holds_on_interior() {
    let one = |_| 1.0;
    let mut gens = GeneratorSet::new();
    gens.insert("s".into(), shift(one));
    gens.insert("s*".into(), shift_star(one));
    let rel = AlgebraWord::parse("s* s - 1").unwrap();
    let margin = word_radius(&rel, &gens).unwrap();
    assert_eq!(margin, 4);
    let basis = line_basis(20);
    assert!(relation_residual(&[rel.clone()], &gens, &basis, margin).unwrap() < 1e-15);
    assert!(matches!(
        relation_residual(&[rel.clone()], &gens, &basis, 1),
        Err(Error::MarginTooSmall {
            margin: 1,
            radius: 4
        })
    ));
    // s s* = 1 - |0⟩⟨0| fails at the vacuum.
    let rel2 = AlgebraWord::parse("s s* - 1").unwrap();
    assert!((relation_residual(&[rel2], &gens, &basis, 4).unwrap() - 1.0).abs() < 1e-15);
    assert!(adjoint_residual(&gens["s"], &gens["s*"], &basis, 2) < 1e-15);
}

#[test]
fn perturbed_coefficient_is_detected() {
    let delta = 1e-3;
    let mut gens = GeneratorSet::new();
    gens.insert("s".into(), shift(|_| 1.0));
    gens.insert(
        "s*".into(),
        shift_star(|k| if k == 7 { 1.0 + 1e-3 } else { 1.0 }),
    );
    let rel = AlgebraWord::parse("s* s - 1").unwrap();
    let r = relation_residual(&[rel], &gens, &line_basis(20), 4).unwrap();
    assert!(r >= delta * 0.99, "{r}");
}

#[test]
fn word_evaluation_of_unit_and_parse_errors() {
    let gens = GeneratorSet::new();
    let v = lab(2);
    assert_eq!(
        evaluate_word(&AlgebraWord::unit(), &gens, &v).unwrap(),
        vec![(v.clone(), c(1.0))]
    );
    assert!(matches!(
        evaluate_word(&AlgebraWord::gen("x"), &gens, &v),
        Err(Error::UnboundGenerator(_))
    ));
    for bad in ["", "x^a", "x (", "*"] {
        assert!(AlgebraWord::parse(bad).is_err(), "{bad:?}");
    }
    let w = AlgebraWord::parse("x0^2 x1 x1* - 0.5 x2").unwrap();
    assert_eq!(w.terms.len(), 2);
    assert_eq!(w.degree(), 4);
    assert_eq!(w.terms[1].0, c(-0.5));
    let u = AlgebraWord::parse("1").unwrap();
    assert_eq!(u, AlgebraWord::unit());
}

#[test]
fn geometric_weighted_trace() {
    // Labels (K, k1) with 0 ≤ k1 ≤ K: Σ q^{2K} = Σ (K+1) q^{2K} -> (1-q²)^{-2}.
    let q: f64 = 0.5;
    let big_k = 40;
    let labels = (0..=big_k).flat_map(|k| (0..=k).map(move |k1| Label::new(TAG, &[k, k1])));
    let basis = TruncatedBasis::new(TAG, HalfInt::from_int(big_k), labels);
    let w = move |v: &Label| q.powi(2 * v.comps[0]);
    let t = weighted_trace(&w, &SparseKernel::identity(TAG), &basis);
    let full = (1.0 - q * q).powi(-2);
    let tail: f64 = (big_k + 1..400)
        .map(|k| (k + 1) as f64 * q.powi(2 * k))
        .sum();
    assert!((t.re + tail - full).abs() < 1e-12);
    assert!(t.re < full);
}

#[test]
fn sup_decay_ratio_reference_cases() {
    let q: f64 = 0.5;
    let basis = line_basis(30);
    let rate = move |v: &Label| q.powi(v.comps[0]);
    assert_eq!(
        sup_decay_ratio(&SparseKernel::zero(TAG), &basis, &rate),
        0.0
    );
    let k = SparseKernel::diagonal(TAG, move |v| c(q.powi(v.comps[0])));
    assert!((sup_decay_ratio(&k, &basis, &rate) - 1.0).abs() < 1e-15);
}

#[test]
fn basis_interior_and_lookup() {
    let basis = line_basis(10);
    assert_eq!(basis.len(), 11);
    assert_eq!(basis.index_of(&lab(4)), Some(4));
    assert_eq!(basis.index_of(&lab(11)), None);
    // margin is in doubled units: 4 keeps k ≤ 8.
    assert_eq!(basis.interior(4).len(), 9);
}

proptest! {
    #[test]
    fn composition_is_associative(a in banded_strategy(), b in banded_strategy(), d in banded_strategy(), k in 0i32..20) {
        let left = a.compose(&b).compose(&d).apply(&lab(k)).unwrap();
        let right = a.compose(&b.compose(&d)).apply(&lab(k)).unwrap();
        let diff = merge_terms(left.into_iter().chain(right.into_iter().map(|(l, v)| (l, -v))).collect());
        prop_assert!(diff.iter().all(|(_, v)| v.norm() < 1e-12));
    }

    #[test]
    fn commutator_is_antisymmetric(a in banded_strategy(), b in banded_strategy(), k in 0i32..20) {
        let ab = a.commutator(&b).apply(&lab(k)).unwrap();
        let ba = b.commutator(&a).apply(&lab(k)).unwrap();
        let sum = merge_terms(ab.into_iter().chain(ba).collect());
        prop_assert!(sum.iter().all(|(_, v)| v.norm() < 1e-12));
    }

    #[test]
    fn sparse_product_matches_dense(a in banded_strategy(), b in banded_strategy()) {
        let n = 12;
        let basis = line_basis(n);
        let p = materialize(&a, &basis).compose(&materialize(&b, &basis)).unwrap();
        // Truncated product: both factors are cut to the basis first.
        let expect = dense_mul(&dense(&a, n), &dense(&b, n));
        for i in 0..=n as usize {
            for j in 0..=n as usize {
                prop_assert!((p.get(i, j) - expect[i][j]).norm() < 1e-12);
            }
        }
        prop_assert!((p.trace() - (0..=n as usize).map(|i| expect[i][i]).sum::<C64>()).norm() < 1e-11);
    }

    #[test]
    fn adjoint_is_an_involution(trip in prop::collection::vec((0u32..8, 0u32..8, -3.0f64..3.0, -3.0f64..3.0), 0..30)) {
        let m = SparseMatrix::from_triplets(8, trip.into_iter().map(|(i, j, re, im)| (i, j, C64::new(re, im))).collect()).unwrap();
        prop_assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn merge_terms_preserves_sums(raw in prop::collection::vec((0i32..5, -1.0f64..1.0), 0..40)) {
        let terms: Vec<(Label, C64)> = raw.iter().map(|&(k, v)| (lab(k), c(v))).collect();
        let merged = merge_terms(terms.clone());
        for k in 0..5 {
            let before: f64 = terms.iter().filter(|(l, _)| l.comps[0] == k).map(|(_, v)| v.re).sum();
            let after: f64 = merged.iter().filter(|(l, _)| l.comps[0] == k).map(|(_, v)| v.re).sum();
            prop_assert!((before - after).abs() < 1e-12);
        }
        let mut labels: Vec<_> = merged.iter().map(|(l, _)| l.clone()).collect();
        labels.dedup();
        prop_assert_eq!(labels.len(), merged.len());
    }
}
