use num_complex::Complex64 as C64;
use num_rational::Ratio;
use proptest::prelude::*;
use qspheres::oddspheres::{
    apply_move, c_const, c_const_corrected, cg_coeff, cg_radicand, cg_tilde, cp_residual,
    decay_ideal_check, enumerate_labels, generators, k_bound, labels_at, lambda_from_tableau,
    lambda_label, left_regular_kernel, moves, multiplicity, multiplicity_differences,
    multiplicity_weyl, nc_integral, optimal_dirac, privileged_move, relations, residual_bound,
    rho_generators, tableau_from_lambda, tableaux_with_top, top_row, w_kernel, w_star_kernel,
    weyl_dimension, z_name, GTTableau, LambdaLabel, OddLabel,
};
use qspheres::opalg::{
    evaluate_word, merge_terms, relation_residual, word_radius, Label, SparseKernel, Terms,
};
use qspheres::qcore::DeformationParam;

fn dq(q: f64) -> DeformationParam {
    DeformationParam::new(q).unwrap()
}

fn max_norm(t: Terms) -> f64 {
    merge_terms(t)
        .iter()
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max)
}

fn elem(k: &SparseKernel, src: &Label, tgt: &Label) -> C64 {
    k.apply(src)
        .unwrap()
        .into_iter()
        .filter(|(t, _)| t == tgt)
        .map(|(_, c)| c)
        .sum()
}

/// Hook-content formula for the `SU(N)` irrep of a partition.
fn hook_content_dim(partition: &[i64], big_n: i64) -> u128 {
    let rows: Vec<i64> = partition.iter().copied().filter(|&x| x > 0).collect();
    let col_len = |j: i64| rows.iter().filter(|&&r| r > j).count() as i64;
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let hook = (len - j - 1) + (col_len(j) - i as i64 - 1) + 1;
            num *= (big_n + j - i as i64) as u128;
            den *= hook as u128;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

fn c_as_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[test]
fn label_counts_at_small_cutoffs() {
    assert_eq!(enumerate_labels(2, 0).unwrap().len(), 1);
    assert_eq!(enumerate_labels(2, 1).unwrap().len(), 7);
    let zero = enumerate_labels(3, 0).unwrap().label(0).clone();
    assert!(zero.comps.iter().all(|&c| c == 0));
    assert!(enumerate_labels(1, 3).is_err());
}

#[test]
fn tableau_validation() {
    assert!(GTTableau::new(2, vec![vec![2, 1, 0], vec![1, 1], vec![1]]).is_ok());
    assert!(GTTableau::new(2, vec![vec![2, 1, 0], vec![2, 2], vec![2]]).is_err());
    assert!(GTTableau::new(2, vec![vec![2, 1, 1], vec![1, 1], vec![1]]).is_err());
    assert!(GTTableau::new(2, vec![vec![2, 1], vec![1]]).is_err());
    for v in enumerate_labels(3, 3).unwrap().labels() {
        let o = OddLabel::from_label(v).unwrap();
        assert_eq!(&o.to_label(), v);
    }
}

#[test]
fn counts_match_the_hook_content_formula() {
    for ell in [2usize, 3] {
        for n in 0..=5i64 {
            for h in 0..=(5 - n) {
                let top = top_row(ell, n, h);
                let count = labels_at(ell, n, h).len() as u128;
                assert_eq!(
                    count,
                    hook_content_dim(&top, ell as i64 + 1),
                    "ℓ={ell} n={n} h={h}"
                );
                let mut lambda = vec![0u64; ell];
                lambda[0] += n as u64;
                lambda[ell - 1] += h as u64;
                assert_eq!(count, weyl_dimension(&lambda));
            }
        }
    }
}

#[test]
fn multiplicities_against_weyl() {
    for ell in [2usize, 3] {
        assert_eq!(multiplicity(ell, 1).unwrap(), 1);
        for k in 1..=8 {
            assert_eq!(
                multiplicity(ell, k).unwrap(),
                multiplicity_weyl(ell, k).unwrap(),
                "ℓ={ell} k={k}"
            );
        }
    }
    assert_eq!(multiplicity(2, 2).unwrap(), 6);
    assert!(multiplicity(2, 0).is_err());
}

#[test]
fn printed_constant_values() {
    assert_eq!(c_const(1), Ratio::from_integer(1));
    assert_eq!(c_const(2), Ratio::new(1, 6));
}

#[test]
fn leading_coefficient_from_exact_differences() {
    for ell in [2usize, 3] {
        let order = 2 * ell;
        let scale: i128 = (1..=order as i128).product();
        let d = multiplicity_differences(ell, 12, order).unwrap();
        assert!(d.windows(2).all(|w| w[0] == w[1]), "ℓ={ell}: {d:?}");
        // 1/(ℓ (2ℓ-1)!) from the SU(ℓ+1) dimension polynomial.
        let want = Ratio::new(1, ell as i128 * (1..=(order as i128 - 1)).product::<i128>());
        assert_eq!(Ratio::new(d[0], scale), want, "ℓ={ell}");
        assert_eq!(c_const_corrected(ell), want);
        let higher = multiplicity_differences(ell, 12, order + 1).unwrap();
        assert!(higher.iter().all(|&x| x == 0));
    }
}

#[test]
fn defining_relations_hold() {
    for ell in [2usize, 3] {
        for qv in [0.3, 0.5] {
            let q = dq(qv);
            let gens = generators(ell, q).unwrap();
            let rels = relations(ell, q);
            let margin = rels
                .iter()
                .map(|r| word_radius(r, &gens).unwrap())
                .max()
                .unwrap();
            let basis = enumerate_labels(ell, 5).unwrap();
            let r = relation_residual(&rels, &gens, &basis, margin).unwrap();
            assert!(r <= 1e-8, "ℓ={ell} q={qv}: {r:e}");
        }
    }
}

#[test]
fn generators_form_adjoint_pairs() {
    let q = dq(0.5);
    let basis = enumerate_labels(2, 4).unwrap();
    for j in 1..=3 {
        let z = left_regular_kernel(j, false, 2, q).unwrap();
        let zs = left_regular_kernel(j, true, 2, q).unwrap();
        for v in basis.labels() {
            for (t, c) in merge_terms(zs.apply(v).unwrap()) {
                assert!(
                    (elem(&z, &t, v) - c.conj()).norm() <= 1e-8,
                    "z{j} {v} -> {t}"
                );
            }
        }
    }
}

#[test]
fn emitted_targets_are_valid_tableaux() {
    let q = dq(0.5);
    for ell in [2usize, 3] {
        let gens = generators(ell, q).unwrap();
        for v in enumerate_labels(ell, 4).unwrap().labels() {
            for j in 1..=ell + 1 {
                for key in [z_name(j), format!("{}*", z_name(j))] {
                    for (t, _) in gens[&key].apply(v).unwrap() {
                        assert!(OddLabel::from_label(&t).is_ok(), "{key} {v} -> {t}");
                    }
                }
            }
        }
    }
}

#[test]
fn move_combinatorics() {
    let r = GTTableau::new(2, vec![vec![1, 0, 0], vec![0, 0], vec![0]]).unwrap();
    let q = dq(0.5);
    for i in 1..=3 {
        for first in [1, 3] {
            for m in moves(2, i, first) {
                let t = apply_move(&r, &m);
                if !t.is_valid() {
                    assert_eq!(cg_coeff(i, &r, &m, q), 0.0, "{m:?}");
                }
            }
        }
    }
    assert_eq!(privileged_move(2, 3), vec![3, 2, 1]);
    assert_eq!(moves(3, 3, 1).len(), 6);
    assert_eq!(moves(3, 4, 4).len(), 6);
}

#[test]
fn exponent_bound_and_radicands() {
    let q = dq(0.5);
    for ell in [2usize, 3] {
        for n in 0..=4i64 {
            for h in 0..=(4 - n) {
                for t in tableaux_with_top(ell, &top_row(ell, n, h)) {
                    for i in 1..=ell + 1 {
                        let privileged = privileged_move(ell, i);
                        for first in [1, ell + 1] {
                            for m in moves(ell, i, first) {
                                if !apply_move(&t, &m).is_valid() {
                                    continue;
                                }
                                let rad = cg_radicand(i, &t, &m, q);
                                assert!(rad >= -1e-12, "{:?} {m:?}: {rad}", t.rows);
                                if first == ell + 1 && m != privileged {
                                    assert!(k_bound(i, &t, &m) >= h, "{:?} {m:?}", t.rows);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn coefficients_are_dominated_by_the_exponent_bound() {
    let q = dq(0.5);
    let ell = 2;
    let mut worst: f64 = 0.0;
    let mut worst_tilde: f64 = 0.0;
    for n in 0..=5i64 {
        for h in 0..=(5 - n) {
            for t in tableaux_with_top(ell, &top_row(ell, n, h)) {
                for i in 1..=ell + 1 {
                    for first in [1, ell + 1] {
                        for m in moves(ell, i, first) {
                            let c = cg_coeff(i, &t, &m, q);
                            if c != 0.0 {
                                worst = worst.max(c.abs() / 0.5f64.powi(k_bound(i, &t, &m) as i32));
                            }
                        }
                    }
                    let pm = privileged_move(ell, i);
                    if apply_move(&t, &pm).is_valid() {
                        let gap = (q.pow(1.0 - i as f64) * cg_coeff(i, &t, &pm, q)
                            - cg_tilde(i, &t, q))
                        .abs();
                        worst_tilde = worst_tilde.max(gap / 0.5f64.powi(h as i32));
                    }
                }
            }
        }
    }
    assert!(worst.is_finite() && worst < 20.0, "{worst}");
    assert!(
        worst_tilde.is_finite() && worst_tilde < 20.0,
        "{worst_tilde}"
    );
}

#[test]
fn partial_isometry_round_trip() {
    for ell in [2usize, 3] {
        let w = w_kernel();
        let ws = w_star_kernel();
        for v in enumerate_labels(ell, 6).unwrap().labels() {
            let back = ws.compose(&w).apply(v).unwrap();
            assert_eq!(back, vec![(v.clone(), C64::new(1.0, 0.0))], "{v}");
        }
    }
    let zero = enumerate_labels(2, 0).unwrap().label(0).clone();
    assert_eq!(
        w_kernel().apply(&zero).unwrap()[0].0,
        lambda_label(0, 0, &[0], &[0, 0])
    );
    let bad = LambdaLabel {
        n: 1,
        h: 1,
        a: vec![0],
        b: vec![-2, -1],
    };
    assert!(bad.in_lambda() && !bad.satisfies_add());
    assert!(tableau_from_lambda(&bad).is_none());
    assert!(w_star_kernel().apply(&bad.to_label()).unwrap().is_empty());
}

#[test]
fn lambda_coordinates_of_a_tableau() {
    // a_j = r_{ℓ+1-j,1} - h, b_k = h - r_{ℓ+1-k,k+1}.
    let t = GTTableau::new(2, vec![vec![3, 1, 0], vec![2, 1], vec![1]]).unwrap();
    let x = lambda_from_tableau(2, 1, &t);
    assert_eq!(x.a, vec![1]);
    assert_eq!(x.b, vec![0, 0]);
    assert_eq!(tableau_from_lambda(&x).unwrap(), t);
}

fn lambda_sample(ell: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for n in 0..=3i64 {
        for h in -2..=3i64 {
            let a_choices: Vec<Vec<i64>> = if ell == 2 {
                (0..=n).map(|a| vec![a]).collect()
            } else {
                (0..=n)
                    .flat_map(|a1| (a1..=n).map(move |a2| vec![a1, a2]))
                    .collect()
            };
            for a in &a_choices {
                for b0 in (h - 2)..=h {
                    for b1 in b0..=h {
                        let b = if ell == 2 {
                            vec![b0, b1]
                        } else {
                            vec![b0, b1, h]
                        };
                        out.push(lambda_label(n, h, a, &b));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn symbol_map_is_an_exact_representation() {
    for ell in [2usize, 3] {
        let q = dq(0.5);
        let gens = rho_generators(ell, q).unwrap();
        for rel in relations(ell, q) {
            for v in lambda_sample(ell) {
                let r = max_norm(evaluate_word(&rel, &gens, &v).unwrap());
                assert!(r <= 1e-10, "ℓ={ell} {v}: {r:e}");
            }
        }
    }
}

#[test]
fn residual_bound_is_stable() {
    for qv in [0.3, 0.5] {
        let q = dq(qv);
        for j in 1..=3 {
            for star in [false, true] {
                let r: Vec<f64> = (6..=8)
                    .map(|c| residual_bound(j, star, 2, q, c).unwrap())
                    .collect();
                assert!(
                    r.iter().all(|&x| x <= 1.0 + 1e-12),
                    "q={qv} z{j} star={star}: {r:?}"
                );
                assert!(
                    r[2] - r[1] <= r[1] - r[0] + 1e-15,
                    "q={qv} z{j} star={star}: {r:?}"
                );
            }
        }
    }
}

#[test]
fn projections_decay_on_fixed_charge() {
    let q = dq(0.5);
    for (i, j) in [(1, 1), (1, 3), (3, 3), (2, 3)] {
        let r: Vec<f64> = (6..=9)
            .map(|c| cp_residual(i, j, 2, q, 1, c).unwrap())
            .collect();
        // Against q^h on n = h + 1 this is a bound by q^{n-1}.
        assert!(r.iter().all(|&x| x <= 1.0 + 1e-12), "({i},{j}): {r:?}");
    }
}

#[test]
fn optimal_dirac_spectrum_and_commutators() {
    let d = optimal_dirac();
    let mut min_abs = f64::INFINITY;
    for v in enumerate_labels(2, 8).unwrap().labels() {
        let ev = d.apply(v).unwrap()[0].1.re;
        assert_eq!(ev.abs(), (v.comps[0] + v.comps[1] + 1) as f64);
        min_abs = min_abs.min(ev.abs());
    }
    assert_eq!(min_abs, 1.0);
    let q = dq(0.5);
    let sup = |cutoff: u32| {
        let basis = enumerate_labels(2, cutoff).unwrap();
        let mut worst: f64 = 0.0;
        for j in 1..=3 {
            let c = d.commutator(&left_regular_kernel(j, true, 2, q).unwrap());
            for v in basis.labels() {
                worst = worst.max(max_norm(c.apply(v).unwrap()));
            }
        }
        worst
    };
    let (s6, s8) = (sup(6), sup(8));
    assert!(s8.is_finite() && s8 <= s6 * 1.05 + 1e-9, "{s6} {s8}");
}

#[test]
fn trace_class_check() {
    let c = decay_ideal_check(2, dq(0.5), 5.0, 40).unwrap();
    assert!(c.monotone() && c.dominated());
    assert_eq!(c.partial_sums.len(), 40);
    let tail = c.partial_sums[39] - c.partial_sums[29];
    assert!(tail < 1e-2 * c.value(), "{tail}");
    let slow = decay_ideal_check(2, dq(0.5), 4.1, 40).unwrap();
    assert!(slow.monotone() && slow.dominated());
    assert!(decay_ideal_check(2, dq(0.5), 4.0, 10).is_err());
    // q^h ≤ q^{r_{2,ℓ}} on every label.
    for v in enumerate_labels(2, 6).unwrap().labels() {
        let o = OddLabel::from_label(v).unwrap();
        assert!(o.tableau.r(2, 2) <= o.h);
    }
}

#[test]
fn noncommutative_integral_values() {
    let q = dq(0.5);
    for ell in [2usize, 3] {
        let c = c_as_f64(c_const(ell));
        let top = z_name(ell + 1);
        let one = nc_integral(&qspheres::opalg::AlgebraWord::unit(), ell, q).unwrap();
        assert!((one.re - c).abs() < 1e-15 && one.im == 0.0);
        let z1 = qspheres::opalg::AlgebraWord::gen("z1");
        assert_eq!(nc_integral(&z1, ell, q).unwrap(), C64::new(0.0, 0.0));
        let p = qspheres::opalg::AlgebraWord::parse(&format!("{top} {top}*")).unwrap();
        assert!((nc_integral(&p, ell, q).unwrap().re - c).abs() < 1e-15);
        let w = qspheres::opalg::AlgebraWord::parse(&format!("{top} {top}")).unwrap();
        assert_eq!(nc_integral(&w, ell, q).unwrap().norm(), 0.0);
    }
    assert!(nc_integral(&qspheres::opalg::AlgebraWord::gen("z9"), 2, q).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sphere_relation_on_random_labels(idx in 0usize..10_000, qv in 0.15f64..0.9) {
        let q = dq(qv);
        let basis = enumerate_labels(2, 4).unwrap();
        let v = basis.label(idx % basis.len()).clone();
        prop_assume!(v.comps[0] + v.comps[1] <= 3);
        let gens = generators(2, q).unwrap();
        let sphere = relations(2, q).pop().unwrap();
        prop_assert!(max_norm(evaluate_word(&sphere, &gens, &v).unwrap()) < 1e-9);
    }

    #[test]
    fn weyl_dimension_matches_hook_content(l1 in 0u64..6, l2 in 0u64..6, l3 in 0u64..6) {
        let lambda = [l1, l2, l3];
        // Partition rows are the partial sums from the right.
        let partition = [l1 + l2 + l3, l2 + l3, l3].map(|x| x as i64);
        prop_assert_eq!(weyl_dimension(&lambda), hook_content_dim(&partition, 4));
    }

    #[test]
    fn lambda_round_trip(idx in 0usize..10_000) {
        let basis = enumerate_labels(3, 5).unwrap();
        let o = OddLabel::from_label(basis.label(idx % basis.len())).unwrap();
        let x = lambda_from_tableau(o.n, o.h, &o.tableau);
        prop_assert!(x.in_lambda() && x.satisfies_add());
        prop_assert_eq!(tableau_from_lambda(&x).unwrap(), o.tableau);
    }
}
