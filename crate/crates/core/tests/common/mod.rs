#![allow(dead_code)]

use lefschetz_core::binaryforms::BinaryForm;
use lefschetz_core::exactmath::{rat, Rational};
use lefschetz_core::perazzo::{perazzo_vars, PerazzoForm};
use lefschetz_core::polyring::{monomials_of_degree, vars, Form, Vars};
use proptest::prelude::*;

pub fn ikeda() -> Form {
    Form::parse("x*z^3*t + y*z*t^3 + x^3*y^2", vars(&["x", "y", "z", "t"])).unwrap()
}

pub fn f1() -> Form {
    Form::parse("u^5*x0 + u^4*v*x0 + u^3*v^2*x1 + v^5*x2", perazzo_vars()).unwrap()
}

pub fn f2() -> Form {
    Form::parse("u^6*x0 + u^3*v^3*x1 + v^6*x2", perazzo_vars()).unwrap()
}

pub fn perazzo_cubic() -> Form {
    Form::parse("x0*u^2 + x1*u*v + x2*v^2", perazzo_vars()).unwrap()
}

pub fn uv() -> Vars {
    vars(&["u", "v"])
}

pub fn bf(text: &str) -> BinaryForm {
    BinaryForm::parse(text, uv()).unwrap()
}

pub fn var_names(n: usize) -> Vars {
    vars(&["a", "b", "c", "d", "e", "f"][..n])
}

/// Forms in `n` variables of degree `d` with up to `terms` small integer
/// coefficients.
pub fn form_strategy(n: usize, d: u32, terms: usize) -> impl Strategy<Value = Form> {
    let monos = monomials_of_degree(n, d);
    let len = monos.len();
    prop::collection::vec((0..len, -5i64..=5), 1..=terms).prop_map(move |picks| {
        let (ms, cs): (Vec<_>, Vec<Rational>) =
            picks.into_iter().map(|(i, c)| (monos[i].clone(), rat(c))).unzip();
        Form::from_coefficients(var_names(n), d, &ms, &cs)
    })
}

/// Nonzero forms with `n ≤ 4`, `d ≤ max_d`.
pub fn small_nonzero_form(max_d: u32) -> impl Strategy<Value = Form> {
    (1usize..=4, 1u32..=max_d)
        .prop_flat_map(|(n, d)| form_strategy(n, d, 6))
        .prop_filter("nonzero", |f| !f.is_zero())
}

pub fn binary_strategy(t: usize, bound: i64) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-bound..=bound, t + 1).prop_map(|c| BinaryForm::from_plain(&c.into_iter().map(rat).collect::<Vec<_>>()))
}

/// Perazzo forms of degree `d` with sparse random `p_i` and `g`, not cones.
pub fn perazzo_strategy(d: usize) -> impl Strategy<Value = PerazzoForm> {
    let sparse = |t: usize| prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], t + 1);
    (sparse(d - 1), sparse(d - 1), sparse(d - 1), sparse(d)).prop_filter_map("independent, not a cone", |(a, b, c, g)| {
        let mk = |v: Vec<i64>| BinaryForm::from_plain(&v.into_iter().map(rat).collect::<Vec<_>>());
        let f = PerazzoForm::new(mk(a), mk(b), mk(c), mk(g)).ok()?;
        (!lefschetz_core::perazzo::is_cone(f.form())).then_some(f)
    })
}
