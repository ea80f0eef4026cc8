//! Subcommand bodies. Each builds one JSON value and a text view of it.

use std::fs;

use cluster_core::bipartite::{
    belt_verify, belt_walk, coxeter_data_with_sign, y_system_solve, BeltCoefficients, YConvention,
    DEFAULT_COXETER_CAP,
};
use cluster_core::exchange_graph::build_exchange_graph;
use cluster_core::finite_type::{
    fibonacci_polynomials, fibonacci_sizes, root_label, specialization_construct, universal_build, SpecializationScope,
};
use cluster_core::mutation::{ExchangeMatrix, ExtendedMatrix};
use cluster_core::parametrization::d_vector;
use cluster_core::principal::{conjecture_suite, f_at_y_hat, Exploration, PrincipalPattern};
use cluster_core::rational::constant;
use cluster_core::semifield::{Semifield, Tropical, TropicalMonomial, Universal};
use cluster_core::{Error, IntMatrix, Laurent, Result, Vars};
use serde_json::{json, Value};

use crate::input::read_matrix;
use crate::{Coeffs, Failure, Output, SemifieldChoice, Source, View};

fn write(out: &Output, body: &str) -> std::result::Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Usage(format!("--out {path}: {e}"))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Write JSON (sorted keys) or the text lines.
fn emit(out: &Output, lines: &[String], value: &Value) -> std::result::Result<(), Failure> {
    if out.json {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        write(out, &format!("{text}\n"))
    } else {
        write(out, &lines.iter().map(|l| format!("{l}\n")).collect::<String>())
    }
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn vec_text(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
}

fn monomial(e: &[i64]) -> Laurent {
    Laurent::monomial(e.iter().map(|&v| v as i32).collect(), 1)
}

fn path_text(p: &[usize]) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn h_of(a: &IntMatrix, eps: &[i64]) -> Result<usize> {
    coxeter_data_with_sign(a, eps, DEFAULT_COXETER_CAP)?
        .h
        .ok_or_else(|| Error::NotFiniteType("the Coxeter element has infinite order".into()))
}

pub fn mutate(src: &Source, path: &[usize], out: &Output) -> std::result::Result<(), Failure> {
    let mut bt = src.extended()?;
    let n = bt.n();
    let mut lines = vec![format!("t=0 Btilde = {}", matrix_text(bt.matrix()))];
    let mut mats = vec![json!(bt.matrix().to_rows())];
    for (t, &k) in path.iter().enumerate() {
        if !(1..=n).contains(&k) {
            return Err(Failure::Usage(format!("--path: direction {k} out of range 1..={n}")));
        }
        bt = bt.mutate(k);
        lines.push(format!("t={} mu_{k} Btilde = {}", t + 1, matrix_text(bt.matrix())));
        mats.push(json!(bt.matrix().to_rows()));
    }
    emit(out, &lines, &json!({"path": path, "n": n, "matrices": mats}))
}

fn check_path(path: &[usize], n: usize) -> std::result::Result<(), Failure> {
    match path.iter().find(|&&k| !(1..=n).contains(&k)) {
        Some(k) => Err(Failure::Usage(format!("--path: direction {k} out of range 1..={n}"))),
        None => Ok(()),
    }
}

pub fn walk(src: &Source, path: &[usize], view: View, out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let n = b.n();
    check_path(path, n)?;
    let mut pattern = PrincipalPattern::new(b.clone());
    let amb = Vars::principal(n);
    let xv = Vars::indexed("x", n);
    let yv = Vars::indexed("y", n);
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for t in 0..=path.len() {
        let prefix = &path[..t];
        let v = pattern.vertex(prefix)?;
        let y: Vec<String> = (0..n).map(|j| TropicalMonomial::new(yv.clone(), v.y_trop(j)).to_fraction_text()).collect();
        let x: Vec<String> = (0..n).map(|l| v.x(l).to_fraction_text(&amb)).collect();
        let f: Vec<String> = v.f.iter().map(|p| p.to_text(&yv)).collect();
        let xg: Vec<String> = v.g.iter().map(|g| monomial(g).to_fraction_text(&xv)).collect();
        let fhat: Vec<String> = v.f.iter().map(|p| f_at_y_hat(&b, p).to_fraction_text(&amb)).collect();
        let d: Vec<Vec<i64>> = (0..n).map(|l| d_vector(&mut pattern, prefix, l)).collect::<Result<_>>()?;
        let bt = v.btilde().matrix();
        lines.push(format!("t = {t}  path = [{}]", path_text(prefix)));
        if matches!(view, View::Seeds | View::Vectors | View::All) {
            lines.push(format!("  Btilde = {}", matrix_text(bt)));
        }
        let mut field = |show: bool, name: &str, vals: &[String]| {
            if show {
                lines.extend(vals.iter().enumerate().map(|(l, v)| format!("  {name}[{}] = {v}", l + 1)));
            }
        };
        let seeds = matches!(view, View::Seeds | View::All);
        let degrees = matches!(view, View::Degrees | View::All);
        let vectors = matches!(view, View::Vectors | View::All);
        field(seeds, "y", &y);
        field(seeds, "X", &x);
        field(seeds, "F", &f);
        field(degrees, "x^g", &xg);
        field(degrees, "F(yhat)", &fhat);
        field(vectors, "g", &v.g.iter().map(|g| vec_text(g)).collect::<Vec<_>>());
        field(vectors, "d", &d.iter().map(|g| vec_text(g)).collect::<Vec<_>>());
        rows.push(json!({
            "t": t, "path": prefix, "Btilde": bt.to_rows(), "y": y, "X": x, "F": f,
            "F_terms": v.f.iter().map(Laurent::to_json).collect::<Vec<_>>(),
            "x^g": xg, "F(yhat)": fhat, "g": v.g, "d": d,
        }));
    }
    emit(out, &lines, &json!({"n": n, "B0": b.matrix().to_rows(), "seeds": rows}))
}

pub fn f_poly(src: &Source, path: &[usize], out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let n = b.n();
    check_path(path, n)?;
    let mut pattern = PrincipalPattern::new(b);
    let v = pattern.vertex(path)?;
    let yv = Vars::indexed("y", n);
    let lines: Vec<String> = v.f.iter().enumerate().map(|(l, f)| format!("F[{}] = {}", l + 1, f.to_text(&yv))).collect();
    let value = json!({
        "path": path,
        "F": v.f.iter().map(|f| f.to_text(&yv)).collect::<Vec<_>>(),
        "F_terms": v.f.iter().map(Laurent::to_json).collect::<Vec<_>>(),
    });
    emit(out, &lines, &value)
}

pub fn g_vector(src: &Source, path: &[usize], out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    check_path(path, b.n())?;
    let v = PrincipalPattern::new(b).vertex(path)?;
    let lines: Vec<String> = v.g.iter().enumerate().map(|(l, g)| format!("g[{}] = {}", l + 1, vec_text(g))).collect();
    emit(out, &lines, &json!({"path": path, "g": v.g}))
}

pub fn d_vector_cmd(src: &Source, path: &[usize], out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let n = b.n();
    check_path(path, n)?;
    let mut pattern = PrincipalPattern::new(b);
    let d: Vec<Vec<i64>> = (0..n).map(|l| d_vector(&mut pattern, path, l)).collect::<Result<_>>()?;
    let lines: Vec<String> = d.iter().enumerate().map(|(l, v)| format!("d[{}] = {}", l + 1, vec_text(v))).collect();
    emit(out, &lines, &json!({"path": path, "d": d}))
}


pub fn graph(src: &Source, coeffs: Coeffs, cap: usize, out: &Output) -> std::result::Result<(), Failure> {
    let bt = if src.btilde.is_some() {
        src.extended()?
    } else {
        let b = src.exchange()?;
        match coeffs {
            Coeffs::Principal => b.principal_extension(),
            Coeffs::Trivial => ExtendedMatrix::new(b.matrix().clone())?,
            Coeffs::Universal => universal_build(&b)?.btilde,
            Coeffs::Custom => return Err(Failure::Usage("--coeffs custom needs --btilde".into())),
        }
    };
    let g = build_exchange_graph(&bt, cap)?;
    let line = format!("vertices={} edges={} finite={}", g.vertex_count(), g.edge_count(), g.finite);
    emit(out, &[line], &g.to_json())
}

pub fn belt(src: &Source, (lo, hi): (i64, i64), coeffs: Coeffs, out: &Output) -> std::result::Result<(), Failure> {
    if lo > 0 || hi < 0 {
        return Err(Failure::Usage("--range must contain 0".into()));
    }
    let b = src.exchange()?;
    let n = b.n();
    let c = match coeffs {
        Coeffs::Principal => BeltCoefficients::Principal,
        Coeffs::Trivial => BeltCoefficients::Trivial,
        _ => return Err(Failure::Usage("belt supports --coeffs principal|trivial".into())),
    };
    let bs = belt_walk(&b, c, lo, hi)?;
    let vars = bs.vars();
    let mut lines = vec![format!("eps = {}", vec_text(bs.eps()))];
    let mut rows = Vec::new();
    for (m, i) in bs.family() {
        let x = bs.x(i, m)?;
        let d = x.denominator_vector(n)?;
        lines.push(format!("x[{};{m}] = {}", i + 1, x.to_fraction_text(&vars)));
        lines.push(format!("d[{};{m}] = {}", i + 1, vec_text(&d)));
        rows.push(json!({"m": m, "i": i + 1, "x": x.to_fraction_text(&vars), "d": d}));
    }
    let mut value = json!({"eps": bs.eps(), "range": [lo, hi], "family": rows});
    let mut failed = None;
    if c == BeltCoefficients::Principal {
        let rep = belt_verify(&b, lo, hi)?;
        lines.push(format!("checked={} violations={}", rep.checked, rep.violations.len()));
        lines.extend(rep.violations.iter().map(|v| format!("violation: {v}")));
        if !rep.violations.is_empty() {
            failed = Some(format!("{} belt violations", rep.violations.len()));
        }
        value["report"] = serde_json::to_value(&rep).expect("serializable");
    }
    emit(out, &lines, &value)?;
    failed.map_or(Ok(()), |m| Err(Failure::Verify(m)))
}

/// `u`, `y`, `u=1,2,...`, `y=...`.
fn parse_initial(s: &str, n: usize) -> std::result::Result<(YConvention, Option<Vec<u64>>), Failure> {
    let (name, rest) = match s.split_once('=') {
        Some((a, b)) => (a.trim(), Some(b)),
        None => (s.trim(), None),
    };
    let conv = match name {
        "u" => YConvention::U,
        "y" => YConvention::Y,
        _ => return Err(Failure::Usage(format!("--initial: expected u or y, got {name:?}"))),
    };
    let nums = match rest {
        None => None,
        Some(r) => {
            let v: Vec<u64> = r
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("--initial: bad values {r:?}")))?;
            if v.len() != n || v.contains(&0) {
                return Err(Failure::Usage(format!("--initial: expected {n} positive integers")));
            }
            Some(v)
        }
    };
    Ok((conv, nums))
}

fn solve_lines<S: Semifield>(
    a: &IntMatrix,
    eps: &[i64],
    sf: &S,
    init: &[S::Value],
    conv: YConvention,
    steps: usize,
) -> Result<(Vec<String>, Vec<Value>)> {
    let sol = y_system_solve(a, eps, sf, init, conv, steps)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for e in &sol {
        let text = sf.render(&e.value);
        lines.push(format!("y[{};{}] = {text}", e.j, e.m));
        rows.push(json!({"m": e.m, "j": e.j, "value": text}));
    }
    Ok((lines, rows))
}

pub fn ysystem(
    src: &Source,
    semifield: SemifieldChoice,
    steps: usize,
    initial: &str,
    out: &Output,
) -> std::result::Result<(), Failure> {
    let (a, eps) = src.cartan()?;
    let n = a.rows();
    let (conv, nums) = parse_initial(initial, n)?;
    let gen_name = if conv == YConvention::U { "u" } else { "y" };
    let gens = Vars::indexed(gen_name, n);
    let (lines, rows) = match (semifield, nums) {
        (SemifieldChoice::Trop, Some(_)) => {
            return Err(Failure::Usage("--semifield trop takes generator initial values".into()))
        }
        (SemifieldChoice::Trop, None) => {
            let sf = Tropical::new(gens);
            let init: Vec<_> = (0..n).map(|i| sf.generator(i)).collect();
            solve_lines(&a, &eps, &sf, &init, conv, steps)?
        }
        (SemifieldChoice::Universal, None) => {
            let sf = Universal::new(gens);
            let init: Vec<_> = (0..n).map(|i| sf.generator(i)).collect();
            solve_lines(&a, &eps, &sf, &init, conv, steps)?
        }
        (SemifieldChoice::Universal, Some(v)) => {
            let sf = Universal::new(gens);
            let init: Vec<_> = v.iter().map(|&k| sf.value(constant(n, k))).collect();
            solve_lines(&a, &eps, &sf, &init, conv, steps)?
        }
    };
    emit(out, &lines, &json!({"eps": eps, "cartan": a.to_rows(), "values": rows}))
}

pub fn universal(src: &Source, out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let u = universal_build(&b)?;
    let n = u.n();
    let gens = u.gens();
    let mut lines = vec![format!("generators = {}", u.labels.join(", "))];
    let initial: Vec<String> = u.initial_y.iter().map(|e| u.render_exps(e)).collect();
    for (j, t) in initial.iter().enumerate() {
        lines.push(format!("y[{}] = {t}", j + 1));
    }
    let table: Vec<Vec<String>> = u.table.iter().map(|row| row.iter().map(|e| u.render_exps(e)).collect()).collect();
    for (t, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            lines.push(format!("t = {t}  y[{}] = {v}", j + 1));
        }
    }
    let relations: Vec<String> = u.relations.iter().map(|r| r.render(&gens)).collect();
    lines.extend(relations.iter().cloned());
    let solution: Vec<Value> = u
        .solution
        .iter()
        .map(|s| json!({"m": s.m, "j": s.j, "value": u.render_exps(&s.exps)}))
        .collect();
    let value = json!({
        "n": n,
        "generators": u.labels,
        "Btilde": u.btilde.matrix().to_rows(),
        "initial_y": initial,
        "table": table,
        "solution": solution,
        "relations": relations,
    });
    emit(out, &lines, &value)
}

fn target_of(b: &ExchangeMatrix, target: &str) -> std::result::Result<(ExtendedMatrix, Vars), Failure> {
    let n = b.n();
    let bt = match target {
        "principal" => b.principal_extension(),
        "trivial" => ExtendedMatrix::new(b.matrix().clone())?,
        path => {
            let (_, m) = read_matrix(path)?;
            let bt = ExtendedMatrix::new(m)?;
            if bt.principal() != *b {
                return Err(Failure::Usage("--target: exchange matrix differs from the source".into()));
            }
            bt
        }
    };
    let frozen = bt.m() - n;
    let gens = if target == "principal" { Vars::indexed("y", n) } else { Vars::indexed("z", frozen) };
    Ok((bt, gens))
}

pub fn specialize(src: &Source, target: &str, belt: bool, cap: usize, out: &Output) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let u = universal_build(&b)?;
    let (bt, gens) = target_of(&b, target)?;
    let scope = if belt { SpecializationScope::Belt } else { SpecializationScope::Graph { cap } };
    let phi = specialization_construct(&u, &bt, &gens, scope)?;
    let images: Vec<String> =
        phi.images.iter().map(|e| TropicalMonomial::new(gens.clone(), e.clone()).to_fraction_text()).collect();
    let mut lines: Vec<String> = u.labels.iter().zip(&images).map(|(l, i)| format!("{l} -> {i}")).collect();
    lines.push(format!("relations_checked={}", phi.relations_checked));
    let value = json!({
        "source": phi.source, "target": phi.target, "images": images,
        "image_exponents": phi.images, "relations_checked": phi.relations_checked,
    });
    emit(out, &lines, &value)
}

pub fn fibonacci(src: &Source, sizes: bool, out: &Output) -> std::result::Result<(), Failure> {
    let (a, eps) = src.cartan()?;
    let h = h_of(&a, &eps)? as i64;
    if sizes {
        let cx = coxeter_data_with_sign(&a, &eps, DEFAULT_COXETER_CAP)?;
        let rows = fibonacci_sizes(&cx, h + 2)?;
        let max = rows.iter().map(|r| r.terms).max().unwrap_or(0);
        let mut lines: Vec<String> =
            rows.iter().map(|r| format!("F[{}] terms={} value={}", root_label(&r.root), r.terms, r.at_one)).collect();
        lines.push(format!("max_terms={max}"));
        return emit(out, &lines, &json!({"rows": rows, "max_terms": max}));
    }
    let b = src.exchange()?;
    let t = fibonacci_polynomials(&b, 0, h + 2)?;
    let yv = Vars::indexed("y", b.n());
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for r in &t.rows {
        let (f, big) = (r.f.to_text(&yv), r.big_f.to_text(&yv));
        lines.push(format!("m = {}  l = {}  d = {}  F = {big}  f = {f}", r.m, r.l, vec_text(&r.d)));
        rows.push(json!({"m": r.m, "l": r.l, "d": r.d, "F": big, "f": f}));
    }
    lines.push(format!("recurrence_checked={} table_matched={}", t.recurrence_checked, t.table_matched));
    let value = json!({"eps": t.eps, "rows": rows, "recurrence_checked": t.recurrence_checked, "table_matched": t.table_matched});
    emit(out, &lines, &value)
}

pub fn check(
    src: &Source,
    max_seeds: usize,
    belt: Option<usize>,
    report: Option<&str>,
    out: &Output,
) -> std::result::Result<(), Failure> {
    let b = src.exchange()?;
    let how = match belt {
        Some(steps) => Exploration::Belt { steps },
        None => Exploration::FullGraph { cap: max_seeds },
    };
    let rep = conjecture_suite(&b, &how)?;
    let value = serde_json::to_value(&rep).expect("serializable");
    if let Some(path) = report {
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("--report {path}: {e}")))?;
    }
    let mut lines = vec![format!("vertices={} truncated={}", rep.vertices, rep.truncated)];
    for c in &rep.checks {
        lines.push(format!("{} instances={} violations={}", c.name, c.instances, c.violations.len()));
        lines.extend(c.violations.iter().map(|v| format!("  {v}")));
    }
    emit(out, &lines, &value)?;
    match rep.total_violations() {
        0 => Ok(()),
        k => Err(Failure::Verify(format!("{k} audit violations"))),
    }
}
