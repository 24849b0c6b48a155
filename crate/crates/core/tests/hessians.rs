mod common;

use common::{ikeda, perazzo_cubic, perazzo_strategy, small_nonzero_form};
use lefschetz_core::artinian::{basis_of_ak, contraction_matrix, GradedAlgebraView};
use lefschetz_core::exactmath::{rat, Rational};
use lefschetz_core::hessians::{
    evaluate_matrix, hessian_generic_rank, hessian_matrix, higher_hessian, higher_hessian_with_basis, symbolic_determinant,
    vanishing_verdict, VanishingConfig, VanishingStatus,
};
use lefschetz_core::lefschetz::map_ranks;
use lefschetz_core::polyring::{Form, Monomial};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid(entries: &[Vec<Form>]) -> Vec<Vec<String>> {
    entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

#[test]
fn perazzo_cubic_hessian() {
    let f = perazzo_cubic();
    let h = hessian_matrix(&f).unwrap();
    let expected = [
        ["0", "0", "0", "2*u", "0"],
        ["0", "0", "0", "v", "u"],
        ["0", "0", "0", "0", "2*v"],
        ["2*u", "v", "0", "2*x0", "x1"],
        ["0", "u", "2*v", "x1", "2*x2"],
    ];
    assert_eq!(grid(&h), expected.map(|r| r.map(String::from).to_vec()).to_vec());
    assert!(symbolic_determinant(&h).unwrap().is_zero());
}

#[test]
fn ikeda_first_hessian_determinant() {
    let f = ikeda();
    let det = symbolic_determinant(&hessian_matrix(&f).unwrap()).unwrap();
    let printed = Form::parse(
        "9*t^7*x*y^3*z + 8*t^6*z^6 - 45*t^5*x^2*y^2*z^3 + 27*t^4*x^4*y^4 - 27*t^3*x^3*y*z^5 \
         - 54*t^2*x^5*y^3*z^2 + 3*t*x^4*z^7 + 27*x^6*y^2*z^4",
        f.vars().clone(),
    )
    .unwrap()
    .scale(&rat(8));
    assert_eq!(&det, printed.poly());
}

#[test]
fn ikeda_second_hessian_matrix() {
    let f = ikeda();
    // X^2, Y^2, Z^2, T^2, XY, XZ, XT, YZ, YT, ZT
    let basis: Vec<Monomial> = [
        [2, 0, 0, 0],
        [0, 2, 0, 0],
        [0, 0, 2, 0],
        [0, 0, 0, 2],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
    ]
    .into_iter()
    .map(|e| Monomial::new(e.to_vec()))
    .collect();
    let spec = higher_hessian_with_basis(&f, 2, basis).unwrap();
    // printed matrix, with (X^2,XY), (XY,X^2) and (XY,XY) doubled
    let printed = [
        ["0", "12*x", "0", "0", "12*y", "0", "0", "0", "0", "0"],
        ["12*x", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "6*t", "6*z", "0", "0", "6*x"],
        ["0", "0", "0", "0", "0", "0", "0", "6*t", "6*z", "6*y"],
        ["12*y", "0", "0", "0", "12*x", "0", "0", "0", "0", "0"],
        ["0", "0", "6*t", "0", "0", "0", "0", "0", "0", "6*z"],
        ["0", "0", "6*z", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "6*t", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "6*z", "0", "0", "0", "0", "0", "6*t"],
        ["0", "0", "6*x", "6*y", "0", "6*z", "0", "0", "6*t", "0"],
    ];
    assert_eq!(grid(&spec.entries), printed.map(|r| r.map(String::from).to_vec()).to_vec());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = vanishing_verdict(&spec.entries, &mut rng, &VanishingConfig::default()).unwrap();
    assert_eq!(v.status, VanishingStatus::ZeroProbabilistic);
}

#[test]
fn perazzo_hessian_has_generic_rank_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert_eq!(hessian_generic_rank(&perazzo_cubic(), &mut rng).unwrap(), 4);
}

#[test]
fn ikeda_nonzero_witness_gives_full_rank_map() {
    // a point where hess^1 is nonzero makes L^3: A_1 -> A_4 bijective
    let f = ikeda();
    let spec = higher_hessian(&f, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let v = vanishing_verdict(&spec.entries, &mut rng, &VanishingConfig::default()).unwrap();
    assert_eq!(v.status, VanishingStatus::NonzeroCertified);
    let view = GradedAlgebraView::new(&f).unwrap();
    let l = view.linear_operator(v.witness.as_ref().unwrap());
    let m = view.multiplication_matrix(&l, 1, 3).unwrap();
    assert_eq!(m.rank(), 4);
}

fn det_at(f: &Form, k: u32, basis: Vec<Monomial>, p: &[Rational]) -> Rational {
    let spec = higher_hessian_with_basis(f, k, basis).unwrap();
    evaluate_matrix(&spec.entries, p).determinant().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn higher_hessians_are_symmetric(f in small_nonzero_form(5), k in 1u32..=2) {
        prop_assume!(2 * k <= f.degree());
        let spec = higher_hessian(&f, k).unwrap();
        prop_assert!(spec.is_symmetric());
        prop_assert_eq!(spec.size(), contraction_matrix(&f, k).unwrap().rank());
    }

    #[test]
    fn vanishing_is_basis_independent(f in small_nonzero_form(4), p in prop::collection::vec(-5i64..=5, 4)) {
        // the greedy basis and its reversal span A_1; the determinants
        // agree up to sign
        prop_assume!(f.degree() >= 2);
        let point: Vec<Rational> = p[..f.nvars()].iter().map(|&x| rat(x)).collect();
        let basis = basis_of_ak(&f, 1).unwrap();
        let mut reversed = basis.clone();
        reversed.reverse();
        let a = det_at(&f, 1, basis, &point);
        let b = det_at(&f, 1, reversed, &point);
        prop_assert_eq!(a.clone() * &a, b.clone() * &b);
    }

    #[test]
    fn hessian_value_matches_lefschetz_map(f in small_nonzero_form(5), p in prop::collection::vec(-5i64..=5, 4)) {
        // hess^k(p) != 0 iff L_p^{d-2k}: A_k -> A_{d-k} is bijective
        prop_assume!(f.degree() >= 2);
        let k = 1;
        let point: Vec<Rational> = p[..f.nvars()].iter().map(|&x| rat(x)).collect();
        let view = GradedAlgebraView::new(&f).unwrap();
        let spec = higher_hessian(&f, k).unwrap();
        let det = evaluate_matrix(&spec.entries, &point).determinant().unwrap();
        let l = view.linear_operator(&point);
        let d = f.degree();
        let m = view.multiplication_matrix(&l, k, d - 2 * k).unwrap();
        prop_assert_eq!(det.is_zero(), m.rank() < view.h(k));
    }

    #[test]
    fn perazzo_forms_have_vanishing_hessian(f in perazzo_strategy(5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = hessian_matrix(f.form()).unwrap();
        let v = vanishing_verdict(&h, &mut rng, &VanishingConfig::default()).unwrap();
        prop_assert_eq!(v.status, VanishingStatus::ZeroSymbolic);
        prop_assert_eq!(hessian_generic_rank(f.form(), &mut rng).unwrap(), 4);
        let view = GradedAlgebraView::new(f.form()).unwrap();
        let l = view.linear_operator(&[rat(1), rat(2), rat(-1), rat(3), rat(1)]);
        prop_assert_eq!(map_ranks(&view, &l).unwrap().len(), 5);
    }
}
