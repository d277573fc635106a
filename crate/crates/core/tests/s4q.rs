use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qspheres::opalg::{
    evaluate_word, merge_terms, relation_residual, word_radius, AlgebraTag, AlgebraWord,
    GeneratorSet, Label, Terms, TruncatedBasis,
};
use qspheres::qcore::{DeformationParam, HalfInt};
use qspheres::s4q::{
    self, chiral_basis, chiral_index, chiral_index_series, f_from_coefficients, f_lj,
    f_matrix_element, fock_basis, fock_index, gamma_trace, gamma_trace_plain, haar_classical,
    haar_formula, haar_formula_corrected, haar_gns, haar_monomial, monomial_word, scalar_basis,
    shell_labels, so5_kernel, top_residue4, twisted_certificate, twisted_pairing4,
    weak_real_decay4, x2x2_remainders, zeta4, zeta4_closed, zeta4_tail_bound, ChiralCoefficients,
    S4Gen, S4Label, S4Space, ScalarCoefficients, So5,
};

fn dq(q: f64) -> DeformationParam {
    DeformationParam::new(q).unwrap()
}

fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

fn qn(x: f64, q: f64) -> f64 {
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

/// `[n]!!` by direct multiplication in the test.
fn qdf(n: i64, q: f64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 0 {
        acc *= qn(k as f64, q);
        k -= 2;
    }
    acc
}

fn residual(rels: &[AlgebraWord], gens: &GeneratorSet, basis: &TruncatedBasis) -> f64 {
    let margin = rels
        .iter()
        .map(|r| word_radius(r, gens).unwrap())
        .max()
        .unwrap();
    relation_residual(rels, gens, basis, margin).unwrap()
}

fn chiral_gens(q: DeformationParam, c: i32) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    for x in S4Gen::ALL {
        g.insert(x.name().into(), s4q::chiral_kernel(x, q, Some(c)));
    }
    g.insert("x0*".into(), s4q::chiral_kernel(S4Gen::X0, q, Some(c)));
    g
}

fn max_norm(t: Terms) -> f64 {
    merge_terms(t)
        .iter()
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max)
}

#[test]
fn coefficient_edges_vanish() {
    let q = dq(0.5);
    let s = ScalarCoefficients { q };
    for (l, j) in [(2.0, 1.0), (4.0, 2.0), (5.0, 3.0)] {
        assert_eq!(s.d_minus(l, j, l - j), 0.0);
    }
    let c = ChiralCoefficients { q };
    for j in [0.5, 1.5, 2.5] {
        assert_eq!(c.b_minus(j, j), 0.0);
    }
    let e1 = so5_kernel(So5::E1, S4Space::Scalar, q).unwrap();
    for v in shell_labels(4, None) {
        if v.comps[1] == v.comps[3] {
            assert!(max_norm(e1.apply(&v).unwrap()) == 0.0, "{v}");
        }
    }
}

#[test]
fn label_round_trip_and_admissibility() {
    let v = S4Label::chiral(h("5/2"), h("1/2"), h("-1/2"), h("3/2"), 1);
    assert!(v.is_admissible());
    assert_eq!(S4Label::from_label(&v.to_label()).unwrap(), v);
    assert!(!S4Label::scalar(h("2"), h("0"), h("1"), h("0")).is_admissible());
    // dim V_{(0,l)} and dim V_l from the shell enumeration.
    for l in 0..5u32 {
        assert_eq!(
            shell_labels(2 * l as i32, None).len() as f64,
            s4q::dim_vl_scalar(l)
        );
    }
    for l2 in [1, 3, 5, 7] {
        let n = shell_labels(l2, Some(1)).len() as f64;
        assert_eq!(n, s4q::dim_vl(HalfInt::from_twice(l2)));
    }
}

#[test]
fn sample_relations_vanish_on_labels() {
    let q = dq(0.5);
    let gens = s4q::generators(S4Space::Chiral, q);
    let sphere = AlgebraWord::parse("x0^2 + x1 x1* + x2 x2* - 1").unwrap();
    let comm = AlgebraWord::parse("x1 x2")
        .unwrap()
        .sub(&AlgebraWord::parse("x2 x1").unwrap().scale_re(0.25));
    for v in chiral_basis(h("7/2"), None)
        .labels()
        .iter()
        .filter(|v| v.comps[0] <= 3)
    {
        assert!(
            max_norm(evaluate_word(&sphere, &gens, v).unwrap()) < 1e-10,
            "{v}"
        );
        assert!(
            max_norm(evaluate_word(&comm, &gens, v).unwrap()) < 1e-10,
            "{v}"
        );
    }
}

#[test]
fn scalar_relations_and_crossed_products() {
    for qv in [0.3, 0.5, 0.9] {
        let q = dq(qv);
        let basis = scalar_basis(HalfInt::from_int(6));
        let gens = s4q::equivariant_generators(S4Space::Scalar, q).unwrap();
        let r = residual(&s4q::seven_polynomials(q), &gens, &basis);
        assert!(r <= 1e-10, "q={qv}: {r:e}");
        let r = residual(&s4q::crossed_relations(q), &gens, &basis);
        assert!(r <= 1e-10, "q={qv}: {r:e}");
        let r = residual(&s4q::defining_relations(q), &gens, &basis);
        assert!(r <= 1e-10, "q={qv}: {r:e}");
    }
}

#[test]
fn chiral_relations_for_each_chirality() {
    for qv in [0.3, 0.5, 0.9] {
        let q = dq(qv);
        for c in [1, -1] {
            let basis = chiral_basis(h("13/2"), Some(c));
            let r = residual(&s4q::seven_polynomials(q), &chiral_gens(q, c), &basis);
            assert!(r <= 1e-10, "q={qv} chirality {c}: {r:e}");
        }
    }
}

#[test]
fn fock_relations_and_index() {
    let q = dq(0.5);
    let mut rels = s4q::defining_relations(q);
    rels.extend(s4q::seven_polynomials(q));
    let r = residual(&rels, &s4q::fock_generators(q), &fock_basis(24));
    assert!(r <= 1e-10, "{r:e}");
    assert!((fock_index(q, 30).unwrap() - 1.0).abs() <= 1e-10);
    assert!((fock_index(dq(0.9), 120).unwrap() - 1.0).abs() <= 1e-6);
}

#[test]
fn chiral_idempotent_squares_to_itself() {
    let q = dq(0.5);
    let e = s4q::idempotent_e(S4Space::Chiral, q).unwrap();
    let basis = chiral_basis(h("11/2"), None);
    let mut worst: f64 = 0.0;
    for &i in &basis.interior(4) {
        let v = basis.label(i as usize);
        for a in 0..4 {
            for b in 0..4 {
                let mut t: Terms = Vec::new();
                for m in 0..4 {
                    if let (Some(x), Some(y)) = (&e[a][m], &e[m][b]) {
                        t.extend(x.compose(y).apply(v).unwrap());
                    }
                }
                if let Some(x) = &e[a][b] {
                    t.extend(x.apply(v).unwrap().into_iter().map(|(l, c)| (l, -c)));
                }
                worst = worst.max(max_norm(t));
            }
        }
    }
    assert!(worst <= 1e-10, "{worst:e}");
}

#[test]
fn gamma_identity_on_all_triples() {
    let idx = [0, 1, -1, 2, -2];
    for qv in [0.3, 0.5, 0.9] {
        let q = dq(qv);
        let mut plain_nonzero = false;
        for i in idx {
            for j in idx {
                for k in idx {
                    assert!(
                        gamma_trace(i, j, k, q).unwrap().norm() <= 1e-12,
                        "({i},{j},{k}) q={qv}"
                    );
                    plain_nonzero |= gamma_trace_plain(i, j, k, q).unwrap().norm() > 1e-6;
                }
            }
        }
        assert!(plain_nonzero);
    }
    assert!(gamma_trace(3, 0, 0, dq(0.5)).is_err());
}

#[test]
fn chiral_index_and_series_oracle() {
    let q = dq(0.5);
    let cutoff = HalfInt::from_int(25);
    let trace = chiral_index(q, cutoff).unwrap();
    assert!((trace - 1.0).abs() <= 1e-6, "{trace}");
    let series = chiral_index_series(q, cutoff);
    assert!((series - trace).abs() <= 1e-8, "{series} vs {trace}");
    assert!(chiral_index(q, h("7/2")).is_err());
}

#[test]
fn series_term_at_q_zero() {
    for l2 in [1, 3, 5] {
        for j2 in (1..=l2).step_by(2) {
            let f = f_lj(l2 as f64 / 2.0, j2 as f64 / 2.0, 0.0);
            let want = if l2 == 1 && j2 == 1 { 1.0 } else { 0.0 };
            assert_eq!(f, want, "l={l2}/2 j={j2}/2");
        }
    }
}

#[test]
fn twisted_pairing_values() {
    let v = twisted_pairing4(dq(0.3), h("29/2")).unwrap();
    assert!((v - 2.0).abs() <= 1e-6, "{v}");
    let c = twisted_certificate(dq(0.5), h("15/2"));
    assert!(c.is_finite());
}

#[test]
fn haar_state_reference_values() {
    let q = dq(0.5);
    assert!((haar_formula(0, 0, q).unwrap() - 1.0).abs() < 1e-15);
    let want = qn(2.0, 0.5) / (0.5 * qn(5.0, 0.5));
    assert!((want - 0.234_604).abs() < 1e-6);
    assert!((haar_formula(0, 1, q).unwrap() - want).abs() < 1e-12);
    assert!((haar_gns(&monomial_word(0, 1, 1, 0), q).unwrap() - want).abs() < 1e-10);
    assert!((haar_gns(&AlgebraWord::unit(), q).unwrap() - 1.0).abs() < 1e-15);
    for (n0, n1, n2, n3) in [
        (1, 0, 0, 0),
        (3, 1, 1, 0),
        (0, 1, 0, 0),
        (2, 0, 1, 0),
        (0, 0, 0, 1),
        (2, 1, 1, 1),
    ] {
        assert_eq!(haar_monomial(n0, n1, n2, n3, q).unwrap(), 0.0);
        let g = haar_gns(&monomial_word(n0, n1, n2, n3), q).unwrap();
        assert!(g.abs() <= 1e-10, "({n0},{n1},{n2},{n3}): {g}");
    }
}

#[test]
fn haar_gns_matches_the_recursion() {
    for qv in [0.3, 0.5, 0.9] {
        let q = dq(qv);
        for j in 0..=3u32 {
            for k in 0..=(3 - j) {
                let gns = haar_gns(&monomial_word(2 * j, k, k, 0), q).unwrap();
                // Independent evaluation of q^{2jk-4j-k}[3][2j-1]!![2k]!!/[2(j+k)+3]!!.
                let (ji, ki) = (j as i64, k as i64);
                let want = qv.powi((2 * ji * ki - 4 * ji - ki) as i32)
                    * qn(3.0, qv)
                    * qdf(2 * ji - 1, qv)
                    * qdf(2 * ki, qv)
                    / qdf(2 * (ji + ki) + 3, qv);
                assert!(
                    (gns - want).abs() <= 1e-10 * want.max(1.0),
                    "q={qv} j={j} k={k}"
                );
                let corrected = haar_formula_corrected(j, k, q).unwrap();
                assert!((corrected - want).abs() <= 1e-10 * want.max(1.0));
                if j == 0 {
                    assert!((haar_formula(j, k, q).unwrap() - gns).abs() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn haar_formula_classical_limit() {
    let q = dq(1.0 - 1e-4);
    for j in 0..=3u32 {
        for k in 0..=(3 - j) {
            let c = haar_classical(j, k);
            let v = haar_formula(j, k, q).unwrap();
            assert!((v - c).abs() <= 1e-3 * c, "j={j} k={k}");
        }
    }
    assert_eq!(haar_classical(0, 0), 1.0);
    assert!((haar_classical(1, 0) - 0.2).abs() < 1e-15);
}

#[test]
fn zeta4_partial_sum_and_residue() {
    let cutoff = HalfInt::from_int(10_000);
    let partial = zeta4(6.0, cutoff).unwrap();
    let closed = zeta4_closed(6.0).unwrap();
    let z3 = 1.202_056_903_159_594;
    let z5 = 1.036_927_755_143_37;
    assert!((closed - 4.0 / 3.0 * (z3 - z5)).abs() < 1e-12);
    let gap = closed - partial;
    assert!(
        gap >= 0.0 && gap <= zeta4_tail_bound(6.0, cutoff) + 1e-12,
        "{gap:e}"
    );
    let mut prev = f64::INFINITY;
    for k in 1..=3 {
        let eps = 10f64.powi(-k);
        let err = (eps * zeta4_closed(4.0 + eps).unwrap() - 4.0 / 3.0).abs();
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 1e-2);
    assert!(zeta4(4.0, cutoff).is_err());
}

#[test]
fn x2x2_probe_remainders_are_bounded() {
    let rem = x2x2_remainders(dq(0.5), h("41/2"));
    let tail = &rem[rem.len() / 2..];
    let worst = tail.iter().map(|(_, r)| r.abs()).fold(0.0, f64::max);
    assert!(worst.is_finite() && worst < 10.0, "{rem:?}");
}

#[test]
fn top_residue_on_the_sphere() {
    let one = top_residue4(&AlgebraWord::unit()).unwrap();
    assert!((one - 4.0 / 3.0).abs() < 1e-14);
    assert_eq!(top_residue4(&AlgebraWord::gen("x0")).unwrap(), 0.0);
    let x2 = top_residue4(&AlgebraWord::parse("x2 x2*").unwrap()).unwrap();
    assert!((x2 - 4.0 / 3.0).abs() < 1e-14);
    assert!(top_residue4(&AlgebraWord::gen("y")).is_err());
}

#[test]
fn real_structure_squares_to_minus_one() {
    let j = s4q::real_structure_j4();
    let jj = j.compose_anti(&j);
    for v in chiral_basis(h("7/2"), None).labels() {
        assert_eq!(
            jj.apply(v).unwrap(),
            vec![(v.clone(), C64::new(-1.0, 0.0))],
            "{v}"
        );
    }
}

#[test]
fn weak_real_decay_is_stable() {
    let q = dq(0.5);
    for a in S4Gen::ALL {
        for b in S4Gen::ALL {
            let r: Vec<f64> = ["9/2", "13/2", "17/2"]
                .iter()
                .map(|c| weak_real_decay4(a, b, q, h(c)))
                .collect();
            assert!(r.iter().all(|x| x.is_finite()), "{a:?} {b:?}: {r:?}");
            let (d1, d2) = ((r[1] - r[0]).abs(), (r[2] - r[1]).abs());
            assert!(d2 <= d1 + 1e-12, "{a:?} {b:?}: {r:?}");
            assert!(d2 <= 1e-2 * r[2].max(1.0), "{a:?} {b:?}: {r:?}");
        }
    }
}

#[test]
fn real_structure_matrix_element_matches_coefficients() {
    let q = dq(0.5);
    for l2 in [1, 3, 5, 7, 9, 11] {
        let l = HalfInt::from_twice(l2);
        let kern = f_matrix_element(q, l, h("1/2"), l, 1).unwrap();
        let coef = f_from_coefficients(q, l.to_f64(), 0.5, l.to_f64());
        assert!(
            (kern - coef).abs() <= 1e-12 * coef.abs().max(1.0),
            "l={l}: {kern} {coef}"
        );
    }
}

fn arb_chiral_label() -> impl Strategy<Value = Label> {
    (0usize..1000).prop_map(|i| {
        let b = chiral_basis(h("9/2"), None);
        b.label(i % b.len()).clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chiral_generators_are_adjoint_pairs(v in arb_chiral_label(), w in arb_chiral_label(), qv in 0.1f64..0.95) {
        let q = dq(qv);
        for (a, b) in [(S4Gen::X1, S4Gen::X1Star), (S4Gen::X2, S4Gen::X2Star), (S4Gen::X0, S4Gen::X0)] {
            let ka = s4q::chiral_kernel(a, q, None);
            let kb = s4q::chiral_kernel(b, q, None);
            let elem = |k: &qspheres::opalg::SparseKernel, src: &Label, tgt: &Label| -> C64 {
                k.apply(src).unwrap().into_iter().filter(|(t, _)| t == tgt).map(|(_, c)| c).sum()
            };
            prop_assert!((elem(&ka, &v, &w) - elem(&kb, &w, &v).conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn sphere_relation_holds_for_random_q(v in arb_chiral_label(), qv in 0.1f64..0.95) {
        let gens = s4q::generators(S4Space::Chiral, dq(qv));
        for rel in s4q::seven_polynomials(dq(qv)) {
            prop_assert!(max_norm(evaluate_word(&rel, &gens, &v).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn gamma_identity_for_random_q(qv in 0.05f64..0.99, i in -2i32..=2, j in -2i32..=2, k in -2i32..=2) {
        prop_assert!(gamma_trace(i, j, k, dq(qv)).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn fock_index_converges_for_random_q(qv in 0.1f64..0.6) {
        let v = fock_index(dq(qv), 40).unwrap();
        prop_assert!((v - 1.0).abs() <= 1e-8, "{}", v);
    }
}

#[test]
fn tags_are_consistent() {
    assert_eq!(S4Space::Fock.tag(), AlgebraTag::Fock);
    assert_eq!(fock_basis(2).len(), 12);
}
