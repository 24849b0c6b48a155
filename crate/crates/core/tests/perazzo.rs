mod common;

use common::{bf, perazzo_cubic, perazzo_strategy};
use lefschetz_core::artinian::hilbert_vector;
use lefschetz_core::binaryforms::BinaryForm;
use lefschetz_core::exactmath::{ratio, Matrix};
use lefschetz_core::hessians::{hessian_matrix, vanishing_verdict, VanishingConfig};
use lefschetz_core::perazzo::{
    block_matrices, block_ranks, classify_extremal, cone_relation, is_cone, maximal_example, maximal_hvector, minimal_family,
    minimal_hvector, perazzo_hilbert, perazzo_vars, rank_sum_hilbert, Extremal, MinimalFamily, MinimalParams, PerazzoError, PerazzoForm,
};
use lefschetz_core::polyring::Form;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEGREE_SIX: &str = "5*u^3*v^2*x0 + u^5*x1 + v^5*x1 + 2*u*v^4*x2 - 3*u^3*v^2*x2 + u^6 - 3*u^2*v^4";

fn degree_six(c2: &str) -> PerazzoForm {
    PerazzoForm::new(bf("5*u^3*v^2"), bf("u^5 + v^5"), bf(&format!("2*u*v^4 - {c2}*u^3*v^2")), bf("u^6 - 3*u^2*v^4")).unwrap()
}

fn grid(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn printed_m2() -> Vec<Vec<String>> {
    grid(&[
        &["0", "0", "1", "0", "0", "0"],
        &["0", "1/2", "0", "0", "0", "-1/10"],
        &["1/2", "0", "0", "0", "-1/10", "0"],
        &["0", "0", "0", "0", "0", "2/5"],
        &["0", "0", "0", "1", "2/5", "0"],
    ])
}

fn printed_m3() -> Vec<Vec<String>> {
    grid(&[
        &["0", "0", "1/2", "1", "0", "0", "0", "0", "-1/10"],
        &["0", "1/2", "0", "0", "0", "0", "0", "-1/10", "0"],
        &["1/2", "0", "0", "0", "0", "0", "-1/10", "0", "2/5"],
        &["0", "0", "0", "0", "0", "1", "0", "2/5", "0"],
    ])
}

fn printed_n2() -> Vec<Vec<String>> {
    grid(&[
        &["0", "0", "1/2"],
        &["0", "1/2", "0"],
        &["1/2", "0", "0"],
        &["0", "0", "0"],
        &["1", "0", "0"],
        &["0", "0", "0"],
        &["0", "0", "0"],
        &["0", "0", "1"],
        &["0", "0", "-1/10"],
        &["0", "-1/10", "0"],
        &["-1/10", "0", "2/5"],
        &["0", "2/5", "0"],
        &["1", "0", "0"],
        &["0", "0", "0"],
        &["0", "0", "-1/5"],
        &["0", "-1/5", "0"],
        &["-1/5", "0", "0"],
    ])
}

fn printed_n3() -> Vec<Vec<String>> {
    grid(&[
        &["0", "0", "1/2", "0"],
        &["0", "1/2", "0", "0"],
        &["1/2", "0", "0", "0"],
        &["1", "0", "0", "0"],
        &["0", "0", "0", "0"],
        &["0", "0", "0", "1"],
        &["0", "0", "-1/10", "0"],
        &["0", "-1/10", "0", "2/5"],
        &["-1/10", "0", "2/5", "0"],
        &["1", "0", "0", "0"],
        &["0", "0", "0", "-1/5"],
        &["0", "0", "-1/5", "0"],
        &["0", "-1/5", "0", "0"],
    ])
}

/// Cells where two string grids differ.
fn diff(a: &[Vec<String>], b: &[Vec<String>]) -> Vec<(usize, usize, String)> {
    a.iter()
        .zip(b)
        .enumerate()
        .flat_map(|(i, (x, y))| x.iter().zip(y).enumerate().filter(|(_, (p, q))| p != q).map(move |(j, (p, _))| (i, j, p.clone())))
        .collect()
}

#[test]
fn degree_six_blocks_match_printed_matrices() {
    let f = degree_six("1");
    let b2 = block_matrices(&f, 2).unwrap();
    let b3 = block_matrices(&f, 3).unwrap();
    assert_eq!(b2.m.to_strings(), printed_m2());
    assert_eq!(b3.m.to_strings(), printed_m3());
    assert_eq!(b2.n_prime.to_strings(), printed_n2());
    assert_eq!(b3.n_prime.to_strings(), printed_n3());
    assert_eq!((b2.m.rank(), b2.n_prime.rank()), (5, 3));
    assert_eq!((b3.m.rank(), b3.n_prime.rank()), (4, 4));
}

#[test]
fn printed_degree_six_form_differs_only_in_c2() {
    let f = PerazzoForm::from_form(&Form::parse(DEGREE_SIX, perazzo_vars()).unwrap()).unwrap();
    assert_eq!(f, degree_six("3"));
    assert_eq!(f.p(2).normalized()[2], ratio(-3, 10));
    let b2 = block_matrices(&f, 2).unwrap();
    let b3 = block_matrices(&f, 3).unwrap();
    let changed = |d: Vec<(usize, usize, String)>| d.into_iter().all(|(_, _, v)| v == "-3/10");
    assert!(changed(diff(&b2.m.to_strings(), &printed_m2())));
    assert!(changed(diff(&b3.m.to_strings(), &printed_m3())));
    // c_2 sits on one anti-diagonal of C_2 and C_3
    for d in [diff(&b2.n_prime.to_strings(), &printed_n2()), diff(&b3.n_prime.to_strings(), &printed_n3())] {
        assert_eq!(d.len(), 3);
        assert!(changed(d));
    }
}

#[test]
fn degree_six_hilbert_vector_both_variants() {
    for c2 in ["1", "3"] {
        let f = degree_six(c2);
        let h = perazzo_hilbert(&f).unwrap();
        assert_eq!(h.values(), &[1, 5, 8, 8, 8, 5, 1]);
        assert_eq!(h, hilbert_vector(f.form()).unwrap());
    }
}

#[test]
fn bounds() {
    assert_eq!(maximal_hvector(6).values(), &[1, 5, 8, 8, 8, 5, 1]);
    assert_eq!(minimal_hvector(6).values(), &[1, 5, 6, 6, 6, 5, 1]);
    assert_eq!(maximal_hvector(4), minimal_hvector(4));
    assert_eq!(maximal_hvector(3).values(), &[1, 5, 5, 1]);
}

#[test]
fn maximal_examples_reach_the_bound() {
    for d in 4..=9 {
        let f = maximal_example(d).unwrap();
        let h = perazzo_hilbert(&f).unwrap();
        assert_eq!(h, maximal_hvector(d), "d = {d}");
        assert_eq!(classify_extremal(&f).unwrap(), Extremal::Maximal);
    }
    assert_eq!(maximal_example(3), Err(PerazzoError::DegreeTooSmall(3)));
}

#[test]
fn minimal_families_reach_the_lower_bound() {
    let params = MinimalParams { lambda: ratio(3, 2), mu: ratio(-1, 1), a: ratio(2, 1), b: ratio(1, 3), c: ratio(-4, 1) };
    for family in [MinimalFamily::I, MinimalFamily::II, MinimalFamily::III] {
        for d in 5..=8 {
            let f = minimal_family(family, d, &params).unwrap();
            assert_eq!(perazzo_hilbert(&f).unwrap(), minimal_hvector(d));
            assert_eq!(classify_extremal(&f).unwrap(), Extremal::Minimal);
        }
    }
    let zero = MinimalParams { lambda: ratio(0, 1), ..MinimalParams::default() };
    assert!(minimal_family(MinimalFamily::III, 5, &zero).is_err());
    assert_eq!("ii".parse::<MinimalFamily>().unwrap(), MinimalFamily::II);
}

#[test]
fn intermediate_quintic() {
    // the plane meets the curve in the tangent line at u only
    let f = PerazzoForm::new(bf("u^4"), bf("u^3*v"), bf("u*v^3 + v^4"), BinaryForm::zero(5)).unwrap();
    let h = perazzo_hilbert(&f).unwrap();
    assert_eq!(h, hilbert_vector(f.form()).unwrap());
    assert!(h == minimal_hvector(5) || h == maximal_hvector(5) || matches!(classify_extremal(&f).unwrap(), Extremal::Intermediate(_)));
}

#[test]
fn cones() {
    assert!(!is_cone(&perazzo_cubic()));
    let cone = Form::parse("x0*u^2 + x1*u^2 + x2*v^2", perazzo_vars()).unwrap();
    assert!(is_cone(&cone));
    let rel = cone_relation(&cone).unwrap();
    let combo = rel.iter().enumerate().fold(Form::zero(cone.vars().clone(), 1), |acc, (i, c)| {
        acc.checked_add(&cone.partial(i).scale(c)).unwrap()
    });
    assert!(combo.is_zero());
    assert!(is_cone(&Form::parse("x0*u^2", perazzo_vars()).unwrap()));
    assert!(is_cone(&Form::parse("u^2*x0 + u*v*x1 + u^2*x2 + u*v*x2", perazzo_vars()).unwrap()));
    // the osculating family is not a cone even though every p_i shares u
    assert!(!is_cone(&Form::parse("x0*u^3 + x1*u^2*v + x2*u*v^2", perazzo_vars()).unwrap()));
}

#[test]
fn mixed_annihilator_breaks_the_rank_sum() {
    // U^3 + 2 y0 V^2 kills f but neither summand does
    let f = PerazzoForm::new(bf("u*v^4"), bf("v^5"), bf("u^2*v^3"), bf("-u^4*v^2")).unwrap();
    let h = perazzo_hilbert(&f).unwrap();
    assert_eq!(h.values(), &[1, 5, 6, 6, 6, 5, 1]);
    assert_eq!(h, hilbert_vector(f.form()).unwrap());
    assert_eq!(rank_sum_hilbert(&f).unwrap().values(), &[1, 5, 6, 7, 8, 5, 1]);
    let r3 = block_ranks(&f).unwrap()[1];
    assert_eq!((r3.k, r3.m, r3.n_prime, r3.combined), (3, 3, 4, 6));
}

#[test]
fn rank_sum_is_exact_without_g() {
    for d in 4..=8 {
        let f = maximal_example(d).unwrap();
        assert_eq!(rank_sum_hilbert(&f).unwrap(), perazzo_hilbert(&f).unwrap());
    }
    let f = degree_six("1");
    assert_eq!(rank_sum_hilbert(&f).unwrap(), perazzo_hilbert(&f).unwrap());
}

#[test]
fn rejects_non_perazzo_shapes() {
    let quad = Form::parse("x0^2*u + x1*v^2 + x2*u*v", perazzo_vars()).unwrap();
    assert!(matches!(PerazzoForm::from_form(&quad), Err(PerazzoError::NotPerazzoShape(_))));
    assert_eq!(
        PerazzoForm::new(bf("u^2"), bf("u*v"), bf("v^3"), BinaryForm::zero(3)).unwrap_err(),
        PerazzoError::DegreeMismatch { expected: 2, got: 3 }
    );
}

fn transpose_blocks(f: &PerazzoForm, k: usize) -> (Matrix, Matrix) {
    let d = f.degree();
    (block_matrices(f, k).unwrap().m, block_matrices(f, d - k).unwrap().n.transpose())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn block_formula_matches_annihilator(f in (4usize..=7).prop_flat_map(perazzo_strategy)) {
        let h = perazzo_hilbert(&f).unwrap();
        prop_assert_eq!(&h, &hilbert_vector(f.form()).unwrap());
        prop_assert!(h.is_symmetric());
        let (lo, hi) = (minimal_hvector(f.degree()), maximal_hvector(f.degree()));
        for k in 0..=f.degree() {
            prop_assert!(lo.get(k) <= h.get(k) && h.get(k) <= hi.get(k));
        }
        for r in block_ranks(&f).unwrap() {
            prop_assert!(r.m >= 3 && r.n_prime >= 3);
            prop_assert!(r.combined <= r.rank_sum());
        }
    }

    #[test]
    fn m_is_transposed_n(f in (4usize..=8).prop_flat_map(perazzo_strategy), k in 1usize..=7) {
        prop_assume!(k < f.degree());
        let (m, nt) = transpose_blocks(&f, k);
        prop_assert_eq!(m, nt);
    }

    #[test]
    fn degree_four_is_forced(f in perazzo_strategy(4)) {
        prop_assert_eq!(perazzo_hilbert(&f).unwrap().values().to_vec(), vec![1, 5, 6, 5, 1]);
    }

    #[test]
    fn hessian_vanishes(f in (3usize..=6).prop_flat_map(perazzo_strategy)) {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = vanishing_verdict(&hessian_matrix(f.form()).unwrap(), &mut rng, &VanishingConfig::default()).unwrap();
        prop_assert!(v.status.is_zero());
        let back = PerazzoForm::from_form(f.form()).unwrap();
        prop_assert_eq!(back, f);
    }
}
