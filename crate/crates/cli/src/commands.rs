use std::collections::HashSet;

use anyhow::{anyhow, bail, Context, Result};
use lefschetz_core::artinian::{
    ann_graded_basis, hilbert_vector, is_o_sequence, is_si_sequence, m_bracket, sth_expansion, verify_annihilator_set,
    GradedAlgebraView, HilbertVector,
};
use lefschetz_core::binaryforms::{
    border_rank, cat_matrix, classify_secant_position, sylvester_decompose, BinaryForm, WaringTerms,
};
use lefschetz_core::exactmath::{format_rational, GaussianRational, Matrix, Rational};
use lefschetz_core::gordannoether::{build_svs, cremona_reduce, find_min_relation, verify_gn_identity};
use lefschetz_core::hessians::{higher_hessian_from_view, vanishing_verdict, VanishingConfig};
use lefschetz_core::lefschetz::{slp_verdict, wlp_verdict, LefschetzOptions, LefschetzVerdict};
use lefschetz_core::perazzo::{
    block_matrices, block_ranks, classify_extremal, is_cone, maximal_example, maximal_hvector, minimal_family,
    minimal_hvector, perazzo_hilbert, MinimalFamily, MinimalParams, PerazzoForm,
};
use lefschetz_core::polyring::{operator_vars, Action, Form, OperatorPoly, RationalImage, Vars};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Report, Section};
use crate::{Cli, Command, Global, GnCmd, PerazzoCmd, SequenceCmd};

fn var_list(names: &[String], flag: &str) -> Result<Vars> {
    let mut seen = HashSet::new();
    for n in names {
        if n.is_empty() || !seen.insert(n) {
            bail!("--{flag}: empty or repeated variable name {n:?}");
        }
    }
    Ok(names.to_vec().into())
}

/// Raw input texts from `--form` and `--form-file`, in that order.
fn input_texts(g: &Global) -> Result<Vec<String>> {
    let mut texts = g.form.clone();
    if let Some(path) = &g.form_file {
        let body = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        texts.extend(
            body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
        );
    }
    if texts.is_empty() {
        bail!("no input form: pass --form or --form-file");
    }
    Ok(texts)
}

fn forms(g: &Global) -> Result<Vec<Form>> {
    let v = var_list(&g.vars, "vars")?;
    input_texts(g)?
        .iter()
        .map(|t| Form::parse(t, v.clone()).with_context(|| format!("parsing {t:?}")))
        .collect()
}

fn binary_forms(g: &Global) -> Result<Vec<BinaryForm>> {
    let v = var_list(&g.bvars, "bvars")?;
    if v.len() != 2 {
        bail!("--bvars needs exactly two names");
    }
    input_texts(g)?
        .iter()
        .map(|t| BinaryForm::parse(t, v.clone()).with_context(|| format!("parsing {t:?}")))
        .collect()
}

fn parse_rational(text: &str, name: &str) -> Result<Rational> {
    text.trim().parse::<Rational>().map_err(|e| anyhow!("--{name}: {text:?} is not a rational number ({e})"))
}

fn grid(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn form_grid(entries: &[Vec<Form>]) -> Value {
    json!(entries.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn hv(h: &HilbertVector) -> Value {
    json!(h.values())
}

fn rationals(xs: &[Rational]) -> Value {
    json!(xs.iter().map(format_rational).collect::<Vec<_>>())
}

fn gaussian(z: &GaussianRational) -> Value {
    json!([format_rational(&z.re), format_rational(&z.im)])
}

fn image(r: &RationalImage) -> String {
    if r.den.degree() == 0 && r.den.to_string() == "1" {
        r.num.to_string()
    } else {
        format!("({})/({})", r.num, r.den)
    }
}

fn verdict(v: &LefschetzVerdict) -> Value {
    match v {
        LefschetzVerdict::Holds { witness } => json!({"status": v.status(), "certificate": null, "witness": rationals(witness)}),
        LefschetzVerdict::Fails(c) => json!({"status": v.status(), "certificate": c.to_string()}),
        LefschetzVerdict::Inconclusive(why) => json!({"status": v.status(), "certificate": null, "reason": why}),
    }
}

fn options(g: &Global) -> LefschetzOptions {
    let mut o = LefschetzOptions { seed: g.seed, trials: g.trials, ..LefschetzOptions::default() };
    o.vanishing = VanishingConfig { lines: g.lines, ..o.vanishing };
    o
}

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let (name, results) = match &cli.command {
        Command::Hilbert => ("hilbert", hilbert(g)?),
        Command::Ann { degree, generators, contraction } => ("ann", ann(g, *degree, generators.as_deref(), *contraction)?),
        Command::Hessian { k } => ("hessian", hessian(g, *k)?),
        Command::Wlp => ("wlp", lefschetz(g, false)?),
        Command::Slp => ("slp", lefschetz(g, true)?),
        Command::Waring => ("waring", waring(g)?),
        Command::Catalecticant { k } => ("catalecticant", catalecticant(g, *k)?),
        Command::Perazzo(p) => perazzo(g, p)?,
        Command::Gn(c) => gn(g, c)?,
        Command::Sequence(s) => sequence(s)?,
    };
    Ok(Report { command: name.to_string(), seed: g.seed, trials: g.trials, results, timing_ms: None })
}

fn echo(f: &Form) -> Section {
    let mut s = Section::new();
    s.put("form", f.to_string());
    s
}

fn hilbert(g: &Global) -> Result<Vec<Section>> {
    forms(g)?
        .iter()
        .map(|f| {
            let h = hilbert_vector(f)?;
            let mut s = echo(f);
            s.put("hvector", hv(&h))
                .put("symmetric", h.is_symmetric())
                .put("unimodal", h.is_unimodal())
                .put("si_sequence", is_si_sequence(&h));
            Ok(s)
        })
        .collect()
}

fn ann(g: &Global, degree: Option<u32>, generators: Option<&str>, contraction: bool) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    for f in forms(g)? {
        let h = hilbert_vector(&f)?;
        let mut s = echo(&f);
        s.put("hvector", hv(&h));
        let degrees: Vec<u32> = match degree {
            Some(k) => vec![k],
            None => (1..=f.degree()).collect(),
        };
        let bases: Vec<Value> = degrees
            .iter()
            .map(|&k| {
                let b = ann_graded_basis(&f, k);
                json!({"degree": k, "dimension": b.len(), "basis": b.iter().map(ToString::to_string).collect::<Vec<_>>()})
            })
            .collect();
        s.put("annihilator", bases);
        if let Some(list) = generators {
            let ops = operator_vars(f.vars());
            let gens = list
                .split(';')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| OperatorPoly::parse(t, ops.clone()).with_context(|| format!("parsing generator {t:?}")))
                .collect::<Result<Vec<_>>>()?;
            let action = if contraction { Action::Contraction } else { Action::Differentiation };
            let r = verify_annihilator_set(&f, &gens, action)?;
            s.put(
                "generators",
                json!({
                    "action": if contraction { "contraction" } else { "differentiation" },
                    "valid": r.is_valid(),
                    "not_annihilating": r.not_annihilating,
                    "mismatched_degrees": r.mismatched_degrees(),
                }),
            );
        }
        out.push(s);
    }
    Ok(out)
}

fn hessian(g: &Global, k: u32) -> Result<Vec<Section>> {
    let opts = options(g);
    let mut out = Vec::new();
    for f in forms(g)? {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let view = GradedAlgebraView::new(&f)?;
        let spec = higher_hessian_from_view(&view, k)?;
        let v = vanishing_verdict(&spec.entries, &mut rng, &opts.vanishing)?;
        let ops = operator_vars(f.vars());
        let basis: Vec<String> =
            spec.basis.iter().map(|m| OperatorPoly::monomial(ops.clone(), m.clone()).to_string()).collect();
        let mut s = echo(&f);
        s.put("k", k)
            .put("basis", basis)
            .put_in("matrices", "hessian", form_grid(&spec.entries))
            .put("status", v.status.to_string())
            .put("trials", v.trials)
            .put("witness", v.witness.as_deref().map(rationals).unwrap_or(Value::Null))
            .put("value", v.value.as_ref().map(format_rational))
            .put("determinant", v.determinant.as_ref().map(|p| Form::new(f.vars().clone(), p.clone()).map(|d| d.to_string())).transpose()?);
        out.push(s);
    }
    Ok(out)
}

fn lefschetz(g: &Global, strong: bool) -> Result<Vec<Section>> {
    let opts = options(g);
    let mut out = Vec::new();
    for f in forms(g)? {
        // a fresh generator per form keeps batch results independent of order
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let view = GradedAlgebraView::new(&f)?;
        let mut s = echo(&f);
        s.put("hvector", hv(&view.hilbert_vector()));
        if strong {
            let (v, statuses) = slp_verdict(&view, &opts, &mut rng)?;
            s.put_in("verdicts", "slp", verdict(&v)).put(
                "hessians",
                statuses.iter().map(|(k, st)| json!({"k": k, "status": st.to_string()})).collect::<Vec<_>>(),
            );
        } else {
            let (v, ranks) = wlp_verdict(&view, &opts, &mut rng)?;
            s.put_in("verdicts", "wlp", verdict(&v)).put("map_ranks", json!(ranks));
        }
        out.push(s);
    }
    Ok(out)
}

fn waring(g: &Global) -> Result<Vec<Section>> {
    let bv = var_list(&g.bvars, "bvars")?;
    let mut out = Vec::new();
    for h in binary_forms(g)? {
        let d = sylvester_decompose(&h)?;
        let mut s = Section::new();
        s.put("form", h.to_form(bv.clone()).to_string())
            .put("degree", h.degree())
            .put("border_rank", border_rank(&h)?)
            .put("secant_position", classify_secant_position(&h).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string()));
        let (terms, residual) = match &d.terms {
            WaringTerms::Exact(ts) => (
                ts.iter()
                    .map(|w| json!({"coefficient": gaussian(&w.coefficient), "linear": [gaussian(&w.linear[0]), gaussian(&w.linear[1])]}))
                    .collect::<Vec<_>>(),
                None,
            ),
            WaringTerms::Numeric { terms, residual } => (
                terms
                    .iter()
                    .map(|w| {
                        let c = |z: num_complex::Complex64| json!([z.re, z.im]);
                        json!({"coefficient": c(w.coefficient), "linear": [c(w.linear[0]), c(w.linear[1])]})
                    })
                    .collect(),
                Some(*residual),
            ),
        };
        s.put(
            "decomposition",
            json!({
                "rank": d.len(),
                "exactness": d.exactness().to_string(),
                "apolar_degree": d.apolar_degree,
                "terms": terms,
                "residual": residual,
                "expression": d.to_string(),
            }),
        );
        out.push(s);
    }
    Ok(out)
}

fn catalecticant(g: &Global, k: Option<usize>) -> Result<Vec<Section>> {
    let bv = var_list(&g.bvars, "bvars")?;
    let mut out = Vec::new();
    for h in binary_forms(g)? {
        let mut s = Section::new();
        s.put("form", h.to_form(bv.clone()).to_string()).put("border_rank", border_rank(&h)?);
        let ks: Vec<usize> = match k {
            Some(k) => vec![k],
            None => (0..=h.degree()).collect(),
        };
        let mut ranks = Vec::new();
        for k in ks {
            let m = cat_matrix(&h, k)?;
            ranks.push(json!({"k": k, "rank": m.rank(), "kernel": m.kernel_basis().iter().map(|v| rationals(v)).collect::<Vec<_>>()}));
            s.put_in("matrices", &format!("cat_{k}"), grid(&m));
        }
        s.put("ranks", ranks);
        out.push(s);
    }
    Ok(out)
}

fn perazzo_forms(g: &Global) -> Result<Vec<PerazzoForm>> {
    forms(g)?.iter().map(|f| PerazzoForm::from_form(f).with_context(|| format!("{f} is not a Perazzo form"))).collect()
}

fn perazzo(g: &Global, cmd: &PerazzoCmd) -> Result<(&'static str, Vec<Section>)> {
    let section_for = |f: &PerazzoForm| -> Result<Section> {
        let mut s = echo(f.form());
        s.put("degree", f.degree()).put("hvector", hv(&perazzo_hilbert(f)?));
        Ok(s)
    };
    Ok(match cmd {
        PerazzoCmd::Build { p0, p1, p2, g: gtext } => {
            let bv = var_list(&g.bvars, "bvars")?;
            let parse = |t: &str| BinaryForm::parse(t, bv.clone()).with_context(|| format!("parsing {t:?}"));
            let (p0, p1, p2) = (parse(p0)?, parse(p1)?, parse(p2)?);
            let gform = match gtext {
                Some(t) => parse(t)?,
                None => BinaryForm::zero(p0.degree() + 1),
            };
            let f = PerazzoForm::new(p0, p1, p2, gform)?;
            let mut s = section_for(&f)?;
            s.put("cone", is_cone(f.form()));
            ("perazzo build", vec![s])
        }
        PerazzoCmd::Blocks { k } => {
            let mut out = Vec::new();
            for f in perazzo_forms(g)? {
                let mut s = section_for(&f)?;
                let ranks = block_ranks(&f)?;
                let ks: Vec<usize> = match k {
                    Some(k) => vec![*k],
                    None => ranks.iter().map(|r| r.k).collect(),
                };
                for &k in &ks {
                    let b = block_matrices(&f, k)?;
                    s.put_in("matrices", &format!("M_{k}"), grid(&b.m));
                    s.put_in("matrices", &format!("N'_{k}"), grid(&b.n_prime));
                }
                let rows: Vec<Value> = ranks
                    .iter()
                    .filter(|r| ks.contains(&r.k))
                    .map(|r| json!({"k": r.k, "m": r.m, "n_prime": r.n_prime, "rank_sum": r.rank_sum(), "h_k": r.combined}))
                    .collect();
                s.put("ranks", rows);
                out.push(s);
            }
            ("perazzo blocks", out)
        }
        PerazzoCmd::Classify => {
            let mut out = Vec::new();
            for f in perazzo_forms(g)? {
                let mut s = section_for(&f)?;
                let d = f.degree();
                s.put("oracle_hvector", hv(&hilbert_vector(f.form())?))
                    .put("class", classify_extremal(&f)?.to_string())
                    .put("minimal_hvector", hv(&minimal_hvector(d)))
                    .put("maximal_hvector", hv(&maximal_hvector(d)))
                    .put("cone", is_cone(f.form()));
                out.push(s);
            }
            ("perazzo classify", out)
        }
        PerazzoCmd::Maximal { degree } => ("perazzo maximal", vec![section_for(&maximal_example(*degree)?)?]),
        PerazzoCmd::Minimal { degree, family, lambda, mu, a, b, c } => {
            let fam: MinimalFamily = family.parse()?;
            let params = MinimalParams {
                lambda: parse_rational(lambda, "lambda")?,
                mu: parse_rational(mu, "mu")?,
                a: parse_rational(a, "a")?,
                b: parse_rational(b, "b")?,
                c: parse_rational(c, "c")?,
            };
            let f = minimal_family(fam, *degree, &params)?;
            let mut s = section_for(&f)?;
            s.put("family", format!("{fam:?}"));
            ("perazzo minimal", vec![s])
        }
    })
}

fn gn(g: &Global, cmd: &GnCmd) -> Result<(&'static str, Vec<Section>)> {
    let (name, max_degree) = match cmd {
        GnCmd::Relation { max_degree } => ("gn relation", *max_degree),
        GnCmd::Svs { max_degree } => ("gn svs", *max_degree),
        GnCmd::Identity { max_degree } => ("gn identity", *max_degree),
        GnCmd::Cremona { max_degree, .. } => ("gn cremona", *max_degree),
    };
    let mut out = Vec::new();
    for f in forms(g)? {
        let rel = find_min_relation(&f, max_degree)?;
        let mut s = echo(&f);
        s.put("relation", rel.g.to_string()).put("relation_degree", rel.degree).put("search_bound", rel.bound);
        if !matches!(cmd, GnCmd::Relation { .. }) {
            let svs = build_svs(&f, &rel)?;
            s.put("system", svs.h.iter().map(ToString::to_string).collect::<Vec<_>>());
            match cmd {
                GnCmd::Identity { .. } => {
                    let check = verify_gn_identity(&f, &svs)?;
                    s.put("flow_invariant", check.flow_invariant)
                        .put("polar_terms_vanish", check.polar_terms_vanish)
                        .put("holds", check.holds());
                }
                GnCmd::Cremona { pivot, .. } => {
                    let r = cremona_reduce(&f, &svs, *pivot)?;
                    s.put("pivot", r.pivot)
                        .put("reduced", r.reduced.to_string())
                        .put("forward", r.forward.iter().map(image).collect::<Vec<_>>())
                        .put("backward", r.backward.iter().map(image).collect::<Vec<_>>());
                }
                _ => {}
            }
        }
        out.push(s);
    }
    Ok((name, out))
}

fn sequence(cmd: &SequenceCmd) -> Result<(&'static str, Vec<Section>)> {
    let mut s = Section::new();
    let name = match cmd {
        SequenceCmd::OCheck { h } => {
            let hv_ = HilbertVector::new(h.clone());
            s.put("hvector", json!(h)).put("o_sequence", is_o_sequence(&hv_));
            "sequence o-check"
        }
        SequenceCmd::SiCheck { h } => {
            let hv_ = HilbertVector::new(h.clone());
            s.put("hvector", json!(h))
                .put("symmetric", hv_.is_symmetric())
                .put("unimodal", hv_.is_unimodal())
                .put("si_sequence", is_si_sequence(&hv_));
            "sequence si-check"
        }
        SequenceCmd::Expand { m, s: deg } => {
            let terms = sth_expansion(*m, *deg)?;
            s.put("m", *m)
                .put("s", *deg)
                .put("expansion", terms.iter().map(|(a, j)| json!([a, j])).collect::<Vec<_>>())
                .put("bracket", m_bracket(*m, *deg)?);
            "sequence expand"
        }
    };
    Ok((name, vec![s]))
}
